//! The four curvature pinching bounds, hypothesis/saturation verdicts for
//! catalog models, and the Sobolev/epsilon threshold constants of the
//! integral rigidity theorems.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_rational, serde_rational, sqrt_exact, Rational, Scalar};
use crate::tensors::{CurvatureSummary, ModelSubmanifold};

const FLOAT_SATURATION_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PinchingError {
    #[error("n must satisfy n >= {min} for this quantity (got {n})")]
    DimensionTooSmall { n: u32, min: u32 },
    #[error("Sobolev parameter t must be positive (got {0})")]
    NonPositiveT(f64),
    #[error("delta0 must be positive (got {0})")]
    NonPositiveDelta(f64),
    #[error("H0^2 must be non-negative (got {0})")]
    NegativeH0Sq(f64),
    #[error("exponent k must satisfy k >= 1 (got {0})")]
    KBelowOne(String),
    #[error("variant scal-lowk requires k < n/2 (got k={k}, n={n})")]
    KNotLow { k: String, n: u32 },
    #[error("solved t is not positive ({0}); invariant failure")]
    SolvedTNotPositive(f64),
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn check_k(k: &Rational) -> Result<(), PinchingError> {
    if k < &Rational::one() {
        Err(PinchingError::KBelowOne(format_rational(k)))
    } else {
        Ok(())
    }
}

fn sgn_gap(p: u32) -> Rational {
    // sgn(p - 1) for p >= 1.
    if p > 1 {
        Rational::one()
    } else {
        Rational::from_integer(BigInt::from(0))
    }
}

/// (n-2)/sqrt(n(n-1)) as an exact surd.
fn cross_coefficient(n: u32) -> Scalar {
    let root = sqrt_exact(&rat((n as i64) * (n as i64 - 1))).expect("small radicand");
    Scalar::from_int(n as i64 - 2)
        .try_div(&root)
        .expect("n >= 2")
}

/// Sectional-curvature bound
/// C1 = p sgn(p-1)/(2(p+1)) + (n-2)/sqrt(n(n-1)) H rho
///      + (1 - (n/2k - 1)(1 - p sgn(p-1)/(2(p+1)))) H^2.
pub fn c1(n: u32, p: u32, h: &Scalar, rho: &Scalar, k: &Rational) -> Result<Scalar, PinchingError> {
    if n < 2 {
        return Err(PinchingError::DimensionTooSmall { n, min: 2 });
    }
    check_k(k)?;
    let head = Scalar::from_rational(&sgn_gap(p) * rat(p as i64) / rat(2 * (p as i64 + 1)));
    let slope = rat_n_over_2k(n, k) - Rational::one();
    let h2_coeff =
        Scalar::one() - Scalar::from_rational(slope) * (Scalar::one() - &head);
    Ok(head + cross_coefficient(n) * h * rho + h2_coeff * h * h)
}

/// Codimension-free sectional bound
/// C1' = n/(2(n+1)) + (n-2)/sqrt(n(n-1)) H rho + (1 - (n/2k - 1)(n+2)/(2(n+1))) H^2.
pub fn c1_prime(n: u32, h: &Scalar, rho: &Scalar, k: &Rational) -> Result<Scalar, PinchingError> {
    if n < 2 {
        return Err(PinchingError::DimensionTooSmall { n, min: 2 });
    }
    check_k(k)?;
    let n_i = n as i64;
    let head = Scalar::from_rational(rat(n_i) / rat(2 * (n_i + 1)));
    let slope = rat_n_over_2k(n, k) - Rational::one();
    let h2_coeff = Scalar::one()
        - Scalar::from_rational(slope * rat(n_i + 2) / rat(2 * (n_i + 1)));
    Ok(head + cross_coefficient(n) * h * rho + h2_coeff * h * h)
}

/// Ricci bound C2 = (n-2) + (n-2)^2/sqrt(n(n-1)) H rho + n(1 - 1/2k) H^2.
pub fn c2(n: u32, h: &Scalar, rho: &Scalar, k: &Rational) -> Result<Scalar, PinchingError> {
    if n < 4 {
        return Err(PinchingError::DimensionTooSmall { n, min: 4 });
    }
    check_k(k)?;
    let n_i = n as i64;
    let cross = Scalar::from_int(n_i - 2) * cross_coefficient(n);
    let h2_coeff =
        Scalar::from_rational(rat(n_i) * (Rational::one() - Rational::one() / (k * rat(2))));
    Ok(Scalar::from_int(n_i - 2) + cross * h * rho + h2_coeff * h * h)
}

/// Scalar-curvature bound C3 = (n + n(n/2k - 1) H^2)(1 - sgn(p-1)/3).
pub fn c3(n: u32, p: u32, h: &Scalar, k: &Rational) -> Result<Scalar, PinchingError> {
    if n < 2 {
        return Err(PinchingError::DimensionTooSmall { n, min: 2 });
    }
    check_k(k)?;
    let n_s = Scalar::from_int(n as i64);
    let slope = Scalar::from_rational(rat_n_over_2k(n, k) - Rational::one());
    let shrink = Scalar::from_rational(Rational::one() - sgn_gap(p) / rat(3));
    Ok((&n_s + &n_s * slope * h * h) * shrink)
}

fn rat_n_over_2k(n: u32, k: &Rational) -> Rational {
    Rational::from_integer(BigInt::from(n)) / (k * rat(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HypothesisHoldsStrictly,
    Saturated,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinchingReport {
    pub model: String,
    #[serde(with = "serde_rational")]
    pub k: Rational,
    pub c1: Scalar,
    pub c1_prime: Scalar,
    /// Absent when n < 4, outside the Ricci theorem's domain.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<Scalar>,
    pub c3: Scalar,
    pub k_min: Scalar,
    pub ricci_min: Scalar,
    pub rho_sq: Scalar,
    pub sec_verdict: Verdict,
    pub sec_n_verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ricci_verdict: Option<Verdict>,
    pub scal_verdict: Verdict,
    pub flags: Vec<String>,
}

/// Saturated when the gap vanishes (exactly for exact scalars, within
/// 1e-10 for float-mode scalars); otherwise strict or failing by sign.
fn classify_lower(extreme: &Scalar, bound: &Scalar) -> Verdict {
    classify_gap(&(extreme - bound))
}

fn classify_gap(gap: &Scalar) -> Verdict {
    let saturated = if gap.is_exact() {
        gap.is_zero()
    } else {
        gap.to_f64().abs() <= FLOAT_SATURATION_TOL
    };
    if saturated {
        Verdict::Saturated
    } else if gap.sgn() > 0 {
        Verdict::HypothesisHoldsStrictly
    } else {
        Verdict::Fails
    }
}

/// Evaluates every pinching hypothesis with the model's own invariants.
pub fn verdict(model: &ModelSubmanifold, k: &Rational) -> Result<PinchingReport, PinchingError> {
    check_k(k)?;
    let n = model.n();
    let p = model.p();
    let summary: CurvatureSummary = model.curvature_summary();
    let mut flags = Vec::new();
    if summary.k_min_sampled {
        flags.push("k-min-sampled".to_string());
    }

    let h = summary.mean_norm_sq.sqrt().expect("H^2 >= 0");
    let rho = summary.rho_sq.sqrt().expect("rho^2 >= 0");
    if !(h.is_exact() && rho.is_exact()) {
        flags.push("float-mode-extremes".to_string());
    }

    let b1 = c1(n, p, &h, &rho, k)?;
    let b1p = c1_prime(n, &h, &rho, k)?;
    let b2 = if n >= 4 {
        Some(c2(n, &h, &rho, k)?)
    } else {
        flags.push("ricci-bound-undefined-below-n-4".to_string());
        None
    };
    let b3 = c3(n, p, &h, k)?;

    let k_min = summary
        .k_min_exact
        .clone()
        .unwrap_or(Scalar::float(summary.k_min));
    let ricci_min = summary
        .ricci_min_exact
        .clone()
        .unwrap_or(Scalar::float(summary.ricci_min));

    let sec_verdict = classify_lower(&k_min, &b1);
    let sec_n_verdict = classify_lower(&k_min, &b1p);
    let ricci_verdict = b2.as_ref().map(|b| classify_lower(&ricci_min, b));
    // Scalar hypothesis is an upper bound: rho^2 <= C3.
    let scal_verdict = classify_gap(&(&b3 - &summary.rho_sq));

    Ok(PinchingReport {
        model: model.name.clone(),
        k: k.clone(),
        c1: b1,
        c1_prime: b1p,
        c2: b2,
        c3: b3,
        k_min,
        ricci_min,
        rho_sq: summary.rho_sq,
        sec_verdict,
        sec_n_verdict,
        ricci_verdict,
        scal_verdict,
        flags,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SobolevConstants {
    pub a: f64,
    pub b: f64,
    pub c_n: f64,
    pub omega_n: f64,
}

/// Gamma at a positive integer or half-integer argument (2x integral).
fn gamma_half(twice_x: u32) -> f64 {
    assert!(twice_x >= 1);
    let mut value = if twice_x % 2 == 0 {
        1.0 // Gamma(1)
    } else {
        std::f64::consts::PI.sqrt() // Gamma(1/2)
    };
    let mut arg = if twice_x % 2 == 0 { 2 } else { 1 };
    while arg < twice_x {
        value *= arg as f64 / 2.0;
        arg += 2;
    }
    value
}

/// Volume of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1).
pub fn unit_ball_volume(n: u32) -> f64 {
    std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half(n + 2)
}

/// The constants of the Sobolev-type inequality:
/// A(n,t) = (n-2)^2 / (4(n-1)^2 (1+t) C(n)^2),
/// B(n,t) = (n-2)^2 / (4(n-1)^2 t),
/// C(n)   = 2^n (n+1)^{1+1/n} / ((n-1) omega_n^{1/n}).
pub fn sobolev_constants(n: u32, t: f64) -> Result<SobolevConstants, PinchingError> {
    if n < 3 {
        return Err(PinchingError::DimensionTooSmall { n, min: 3 });
    }
    if !(t > 0.0) {
        return Err(PinchingError::NonPositiveT(t));
    }
    let nf = n as f64;
    let omega_n = unit_ball_volume(n);
    let c_n = 2f64.powi(n as i32) * (nf + 1.0).powf(1.0 + 1.0 / nf)
        / ((nf - 1.0) * omega_n.powf(1.0 / nf));
    let shared = (nf - 2.0).powi(2) / (4.0 * (nf - 1.0).powi(2));
    Ok(SobolevConstants {
        a: shared / ((1.0 + t) * c_n * c_n),
        b: shared / t,
        c_n,
        omega_n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsilonVariant {
    Sec,
    SecN,
    Ricci,
    Scal,
    ScalLowk,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonInputs {
    pub variant: EpsilonVariant,
    pub n: u32,
    pub p: u32,
    #[serde(with = "serde_rational")]
    pub k: Rational,
    pub h0_sq: f64,
    pub delta0: f64,
}

/// The threshold together with the intermediate quantities of its derivation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonReport {
    pub inputs: EpsilonInputs,
    /// Shared prefactor (2kn - n + 2)/(n k^2).
    pub load: f64,
    /// Front coefficient the threshold divides by: (a+1)n, n, or tau(p).
    pub front: f64,
    /// Parameter t solved from the variant's balance equation.
    pub t: f64,
    pub sobolev: SobolevConstants,
    pub value: f64,
    pub notes: Vec<String>,
}

fn rational_to_f64(v: &Rational) -> f64 {
    Scalar::from_rational(v.clone()).to_f64()
}

/// Solves the variant's balance equation for t and returns the threshold
/// epsilon = load * A(n, t) / front, load = (2kn - n + 2)/(n k^2).
pub fn epsilon(inputs: &EpsilonInputs) -> Result<EpsilonReport, PinchingError> {
    let EpsilonInputs { variant, n, p, ref k, h0_sq, delta0 } = *inputs;
    let min_n = if variant == EpsilonVariant::Ricci { 4 } else { 3 };
    if n < min_n {
        return Err(PinchingError::DimensionTooSmall { n, min: min_n });
    }
    check_k(k)?;
    if !(delta0 > 0.0) {
        return Err(PinchingError::NonPositiveDelta(delta0));
    }
    if h0_sq < 0.0 {
        return Err(PinchingError::NegativeH0Sq(h0_sq));
    }
    let nf = n as f64;
    let kf = rational_to_f64(k);
    let load = (2.0 * kf * nf - nf + 2.0) / (nf * kf * kf);
    let tau = 1.0 + 0.5 * if p > 1 { 1.0 } else { 0.0 };

    let mut notes = vec![
        "threshold follows the derivation chain; it does not depend on rho".to_string(),
    ];
    // Each balance equation reads load * B(n,t) * factor = rhs with
    // B(n,t) = (n-2)^2 / (4(n-1)^2 t), hence
    // t = load * (n-2)^2 * factor / (4(n-1)^2 * rhs).
    let (front, factor, rhs) = match variant {
        EpsilonVariant::Sec => {
            let a = if p > 1 { p as f64 / (p as f64 + 2.0) } else { 0.0 };
            ((a + 1.0) * nf, 1.0 + h0_sq, (a + 1.0) * nf * delta0)
        }
        EpsilonVariant::SecN => {
            let a = nf / (nf + 2.0);
            ((a + 1.0) * nf, 1.0 + h0_sq, (a + 1.0) * nf * delta0)
        }
        EpsilonVariant::Ricci => (nf, 1.0 + h0_sq, nf * delta0),
        EpsilonVariant::Scal => (tau, 1.0 + h0_sq, tau * delta0),
        EpsilonVariant::ScalLowk => {
            if !(k * Rational::from_integer(BigInt::from(2))
                < Rational::from_integer(BigInt::from(n)))
            {
                return Err(PinchingError::KNotLow {
                    k: format_rational(k),
                    n,
                });
            }
            notes.push("threshold is independent of H0".to_string());
            let slack = nf * nf / (2.0 * kf) - nf;
            (tau, 1.0, tau * slack.min(delta0))
        }
    };
    let t = load * (nf - 2.0).powi(2) * factor / (4.0 * (nf - 1.0).powi(2) * rhs);
    if !(t > 0.0) {
        return Err(PinchingError::SolvedTNotPositive(t));
    }
    let sobolev = sobolev_constants(n, t)?;
    let value = load * sobolev.a / front;
    Ok(EpsilonReport {
        inputs: inputs.clone(),
        load,
        front,
        t,
        sobolev,
        value,
        notes,
    })
}
