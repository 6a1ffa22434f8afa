//! Isoparametric hypersurface spectra from the cotangent ladder, the
//! extremality residual, and the closed-form classifiers for g = 2, 3, 4, 6
//! together with the product-torus enumerator.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    format_rational, serde_rational, sqrt_exact, AlgebraError, Rational, Scalar,
};
use crate::tensors::PrincipalSpectrum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IsoError {
    #[error("g must be one of 1, 2, 3, 4, 6 (got {0})")]
    BadG(u32),
    #[error("expected {expected} multiplicities for g={g}, got {got}")]
    MultiplicityCount { g: u32, expected: usize, got: usize },
    #[error("multiplicities {0:?} violate the g={1} constraint")]
    MultiplicityConstraint(Vec<u32>, u32),
    #[error("g=3 requires equal multiplicities in {{1, 2, 4, 8}} (got {0})")]
    BadG3Multiplicity(u32),
    #[error("g=6 requires equal multiplicities in {{1, 2}} (got {0})")]
    BadG6Multiplicity(u32),
    #[error("lambda1 = {lambda1} is outside the g={g} domain (requires lambda1 > {bound})")]
    LambdaOutOfDomain { g: u32, lambda1: String, bound: String },
    #[error("exponent k must satisfy k >= 1 (got {0})")]
    KBelowOne(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Named reason a torus does not exist for given (n, m, k).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum TorusRejection {
    #[error("exponent k must satisfy k >= 1 (got {0})")]
    KBelowOne(String),
    #[error("m must satisfy 1 <= m <= n-1 (got m={m}, n={n})")]
    MOutOfRange { m: u32, n: u32 },
    #[error("k = n/4 requires m = n/2 (got m={m}, n={n})")]
    HalfDimensionRequired { m: u32, n: u32 },
    #[error("k > n/4 requires n-2k < m < 2k (violated by m={m}, n-2k={lower}, 2k={upper})")]
    UpperWindow { m: u32, lower: String, upper: String },
    #[error("k < n/4 requires 2k < m < n-2k (violated by m={m}, 2k={lower}, n-2k={upper})")]
    LowerWindow { m: u32, lower: String, upper: String },
}

/// Isoparametric family datum: the number of distinct principal curvatures,
/// their multiplicities, and the spectrum generated from lambda1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoSpectrum {
    pub g: u32,
    pub multiplicities: Vec<u32>,
    pub lambda1: Scalar,
    pub spectrum: PrincipalSpectrum,
}

/// A product-of-spheres hypersurface with vanishing extremality residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusSolution {
    pub n: u32,
    pub m: u32,
    #[serde(with = "serde_rational")]
    pub k: Rational,
    pub radius_sq_first: Scalar,
    pub spectrum: PrincipalSpectrum,
    pub h_sq: Scalar,
    pub rho_sq: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Classification {
    /// Every admissible spectrum is extremal (the degenerate k = n/(2g) cases).
    AllExtremal { n: u32 },
    Unique(IsoSpectrum),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct G4Root {
    /// Positive root x = A^2 of the classifying quadratic.
    pub x: Scalar,
    /// A = lambda - 1/lambda.
    pub a: Scalar,
    pub spectrum: IsoSpectrum,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum G4Kind {
    AllExtremal { n: u32 },
    Roots(Vec<G4Root>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct G4Outcome {
    pub kind: G4Kind,
    /// Advisory only: whether (m1, m2) passes the known multiplicity
    /// restrictions for four distinct principal curvatures.
    pub multiplicity_admissible: bool,
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn rat_u(v: u32) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn check_k(k: &Rational) -> Result<(), IsoError> {
    if k < &Rational::one() {
        Err(IsoError::KBelowOne(format_rational(k)))
    } else {
        Ok(())
    }
}

fn sqrt3() -> Scalar {
    Scalar::surd(Rational::zero(), Rational::one(), 3).expect("3 is square-free")
}

/// Lower bound of the lambda1 domain for each g: cot(pi/g).
fn lambda1_lower_bound(g: u32) -> Scalar {
    match g {
        2 => Scalar::zero(),
        3 => Scalar::one().try_div(&sqrt3()).expect("sqrt3 != 0"),
        4 => Scalar::one(),
        6 => sqrt3(),
        _ => unreachable!("ladder only defined for g in {{2,3,4,6}}"),
    }
}

/// Generates the full spectrum from the largest principal curvature via the
/// cotangent addition ladder lambda_a = cot(theta + (a-1) pi / g).
pub fn spectrum_from_lambda1(
    g: u32,
    multiplicities: &[u32],
    lambda1: &Scalar,
) -> Result<IsoSpectrum, IsoError> {
    if !matches!(g, 1 | 2 | 3 | 4 | 6) {
        return Err(IsoError::BadG(g));
    }
    if multiplicities.len() != g as usize || multiplicities.iter().any(|&m| m == 0) {
        return Err(IsoError::MultiplicityCount {
            g,
            expected: g as usize,
            got: multiplicities.len(),
        });
    }
    match g {
        3 | 6 => {
            if multiplicities.iter().any(|&m| m != multiplicities[0]) {
                return Err(IsoError::MultiplicityConstraint(
                    multiplicities.to_vec(),
                    g,
                ));
            }
        }
        4 => {
            if multiplicities[0] != multiplicities[2] || multiplicities[1] != multiplicities[3] {
                return Err(IsoError::MultiplicityConstraint(
                    multiplicities.to_vec(),
                    g,
                ));
            }
        }
        _ => {}
    }
    if g == 1 {
        return Ok(IsoSpectrum {
            g,
            multiplicities: multiplicities.to_vec(),
            lambda1: lambda1.clone(),
            spectrum: PrincipalSpectrum::new(vec![(lambda1.clone(), multiplicities[0])]),
        });
    }
    let bound = lambda1_lower_bound(g);
    if lambda1.compare(&bound) != std::cmp::Ordering::Greater {
        return Err(IsoError::LambdaOutOfDomain {
            g,
            lambda1: lambda1.to_string(),
            bound: bound.to_string(),
        });
    }
    let lambdas = ladder(g, lambda1)?;
    let entries = lambdas
        .into_iter()
        .zip(multiplicities.iter().copied())
        .collect();
    Ok(IsoSpectrum {
        g,
        multiplicities: multiplicities.to_vec(),
        lambda1: lambda1.clone(),
        spectrum: PrincipalSpectrum::new(entries),
    })
}

fn ladder(g: u32, l1: &Scalar) -> Result<Vec<Scalar>, AlgebraError> {
    let one = Scalar::one();
    let s3 = sqrt3();
    let neg_inv = |v: &Scalar| Scalar::from_int(-1).try_div(v);
    Ok(match g {
        2 => vec![l1.clone(), neg_inv(l1)?],
        3 => vec![
            l1.clone(),
            (l1 - &s3).try_div(&(&one + &(&s3 * l1)))?,
            (l1 + &s3).try_div(&(&one - &(&s3 * l1)))?,
        ],
        4 => {
            let l2 = (l1 - &one).try_div(&(l1 + &one))?;
            let l4 = neg_inv(&l2)?;
            vec![l1.clone(), l2, neg_inv(l1)?, l4]
        }
        6 => vec![
            l1.clone(),
            (&(&s3 * l1) - &one).try_div(&(&s3 + l1))?,
            (l1 - &s3).try_div(&(&one + &(&s3 * l1)))?,
            neg_inv(l1)?,
            (l1 + &s3).try_div(&(&one - &(&s3 * l1)))?,
            (&(&s3 * l1) + &one).try_div(&(&s3 - l1))?,
        ],
        _ => unreachable!(),
    })
}

/// Left-hand side of the isoparametric extremality equation:
/// sum_i lambda_i^3 + (n^2 / 2k) H^3 - (n/2k + 1) H S.
pub fn extremality_residual(
    spectrum: &PrincipalSpectrum,
    k: &Rational,
) -> Result<Scalar, IsoError> {
    check_k(k)?;
    let n = spectrum.n();
    let n_scalar = Scalar::from_int(n as i64);
    let two_k = Scalar::from_rational(k * rat(2));
    let h = spectrum.mean_curvature();
    let s = spectrum.sum_sq();
    let cubes = spectrum.weighted_power_sum(3);
    let n_over_2k = n_scalar.clone().try_div(&two_k)?;
    Ok(cubes + &(&n_scalar * &n_over_2k) * &h.powi(3)
        - (&n_over_2k + &Scalar::one()) * &h * s)
}

/// Existence and data of the product torus for (n, m, k); the rejection names
/// the violated inequality.
pub fn solve_g2(n: u32, m: u32, k: &Rational) -> Result<TorusSolution, TorusRejection> {
    if k < &Rational::one() {
        return Err(TorusRejection::KBelowOne(format_rational(k)));
    }
    if m < 1 || m >= n {
        return Err(TorusRejection::MOutOfRange { m, n });
    }
    let two_k = k * rat(2);
    let quarter_n = rat_u(n) / rat(4);
    let a_sq = if *k == quarter_n {
        if rat_u(2 * m) != rat_u(n) {
            return Err(TorusRejection::HalfDimensionRequired { m, n });
        }
        Rational::new(BigInt::one(), BigInt::from(2))
    } else if *k > quarter_n {
        let lower = rat_u(n) - &two_k;
        if !(lower < rat_u(m) && rat_u(m) < two_k) {
            return Err(TorusRejection::UpperWindow {
                m,
                lower: format_rational(&lower),
                upper: format_rational(&two_k),
            });
        }
        (rat_u(m) - &two_k) / (rat_u(n) - rat(4) * k)
    } else {
        let upper = rat_u(n) - &two_k;
        if !(two_k < rat_u(m) && rat_u(m) < upper) {
            return Err(TorusRejection::LowerWindow {
                m,
                lower: format_rational(&two_k),
                upper: format_rational(&upper),
            });
        }
        (rat_u(m) - &two_k) / (rat_u(n) - rat(4) * k)
    };
    Ok(torus_from_radius(n, m, k.clone(), a_sq))
}

fn torus_from_radius(n: u32, m: u32, k: Rational, a_sq: Rational) -> TorusSolution {
    // lambda = -sqrt(1 - a^2)/a on the first factor, mu = -1/lambda on the
    // second; both exact since (1 - a^2)/a^2 is rational.
    let one = Rational::one();
    let lambda = -sqrt_exact(&((&one - &a_sq) / &a_sq)).expect("0 < a^2 < 1");
    let mu = Scalar::from_int(-1).try_div(&lambda).expect("lambda != 0");
    let spectrum = PrincipalSpectrum::new(vec![(lambda, m), (mu, n - m)]);
    let h = spectrum.mean_curvature();
    let h_sq = &h * &h;
    let rho_sq = spectrum.rho_sq();
    TorusSolution {
        n,
        m,
        k,
        radius_sq_first: Scalar::from_rational(a_sq),
        spectrum,
        h_sq,
        rho_sq,
    }
}

/// All admissible product tori for (n, k), ascending in m.
pub fn enumerate_tori(n: u32, k: &Rational) -> Vec<TorusSolution> {
    (1..n).filter_map(|m| solve_g2(n, m, k).ok()).collect()
}

pub fn solve_g3(m: u32, k: &Rational) -> Result<Classification, IsoError> {
    check_k(k)?;
    if !matches!(m, 1 | 2 | 4 | 8) {
        return Err(IsoError::BadG3Multiplicity(m));
    }
    let n = 3 * m;
    if k * rat(2) == rat_u(m) {
        return Ok(Classification::AllExtremal { n });
    }
    let unique = spectrum_from_lambda1(3, &[m, m, m], &sqrt3())?;
    Ok(Classification::Unique(unique))
}

pub fn solve_g6(m: u32, k: &Rational) -> Result<Classification, IsoError> {
    check_k(k)?;
    if !matches!(m, 1 | 2) {
        return Err(IsoError::BadG6Multiplicity(m));
    }
    let n = 6 * m;
    if k * rat(2) == rat_u(m) {
        return Ok(Classification::AllExtremal { n });
    }
    let lambda1 = Scalar::from_int(2) + sqrt3();
    let unique = spectrum_from_lambda1(6, &[m; 6], &lambda1)?;
    Ok(Classification::Unique(unique))
}

/// Positive-root analysis of the classifying quadratic
/// (2k - m1) m1 (m1 + 2 m2) x^2 + 4 m1 m2 (m2 - m1) x - 16 (2k - m2) m2 (2 m1 + m2)
/// in x = A^2, with the spectrum rebuilt from each root.
pub fn solve_g4(m1: u32, m2: u32, k: &Rational) -> Result<G4Outcome, IsoError> {
    check_k(k)?;
    if m1 == 0 || m2 == 0 {
        return Err(IsoError::MultiplicityConstraint(vec![m1, m2], 4));
    }
    let two_k = k * rat(2);
    let c2 = (&two_k - rat_u(m1)) * rat_u(m1) * rat_u(m1 + 2 * m2);
    let c1 = rat(4) * rat_u(m1) * rat_u(m2) * (rat_u(m2) - rat_u(m1));
    let c0 = -rat(16) * (&two_k - rat_u(m2)) * rat_u(m2) * rat_u(2 * m1 + m2);
    let multiplicity_admissible = g4_multiplicity_admissible(m1, m2);

    if c2.is_zero() && c1.is_zero() && c0.is_zero() {
        return Ok(G4Outcome {
            kind: G4Kind::AllExtremal { n: 2 * (m1 + m2) },
            multiplicity_admissible,
        });
    }

    let mut xs: Vec<Scalar> = Vec::new();
    if c2.is_zero() {
        if !c1.is_zero() {
            let x = -(&c0 / &c1);
            if x > Rational::zero() {
                xs.push(Scalar::from_rational(x));
            }
        }
    } else {
        let disc = &c1 * &c1 - rat(4) * &c2 * &c0;
        if disc >= Rational::zero() {
            let sqrt_disc = sqrt_exact(&disc)?;
            let denom = Scalar::from_rational(rat(2) * &c2);
            let neg_c1 = Scalar::from_rational(-&c1);
            for root in [
                (&neg_c1 + &sqrt_disc).try_div(&denom)?,
                (&neg_c1 - &sqrt_disc).try_div(&denom)?,
            ] {
                if root.sgn() > 0 && !xs.contains(&root) {
                    xs.push(root);
                }
            }
        }
    }

    let mults = [m1, m2, m1, m2];
    let mut roots = Vec::with_capacity(xs.len());
    for x in xs {
        // A = sqrt(x) > 0 and lambda = (A + sqrt(A^2 + 4))/2 > 1.
        let a = x.sqrt()?;
        let lambda = (&a + &(&a * &a + Scalar::from_int(4)).sqrt()?)
            .try_div(&Scalar::from_int(2))?;
        let spectrum = spectrum_from_lambda1(4, &mults, &lambda)?;
        roots.push(G4Root { x, a, spectrum });
    }
    Ok(G4Outcome {
        kind: G4Kind::Roots(roots),
        multiplicity_admissible,
    })
}

/// Number of integers s with 1 <= s <= l and s = 0, 1, 2, 4 (mod 8).
fn xi(l: u32) -> u32 {
    (1..=l).filter(|s| matches!(s % 8, 0 | 1 | 2 | 4)).count() as u32
}

fn g4_multiplicity_admissible(m1: u32, m2: u32) -> bool {
    (m1, m2) == (2, 2)
        || (m1, m2) == (4, 5)
        || (m1 + m2 + 1) % 2u32.pow(xi(m1.saturating_sub(1))) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rational;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn k(text: &str) -> Rational {
        parse_rational(text).unwrap()
    }

    #[test]
    fn g3_ladder_at_sqrt3() {
        let iso = spectrum_from_lambda1(3, &[1, 1, 1], &s("1*sqrt(3)")).unwrap();
        assert_eq!(
            iso.spectrum.entries,
            vec![
                (s("1*sqrt(3)"), 1),
                (Scalar::zero(), 1),
                (s("-1*sqrt(3)"), 1)
            ]
        );
    }

    #[test]
    fn g4_ladder_at_one_plus_sqrt2() {
        let iso = spectrum_from_lambda1(4, &[1, 1, 1, 1], &s("1+1*sqrt(2)")).unwrap();
        let lambdas: Vec<Scalar> = iso.spectrum.entries.iter().map(|(l, _)| l.clone()).collect();
        assert_eq!(
            lambdas,
            vec![
                s("1+1*sqrt(2)"),
                s("-1+1*sqrt(2)"),
                s("1-1*sqrt(2)"),
                s("-1-1*sqrt(2)")
            ]
        );
    }

    #[test]
    fn g6_ladder_at_two_plus_sqrt3() {
        let iso = spectrum_from_lambda1(6, &[1; 6], &s("2+1*sqrt(3)")).unwrap();
        let lambdas: Vec<Scalar> = iso.spectrum.entries.iter().map(|(l, _)| l.clone()).collect();
        assert_eq!(
            lambdas,
            vec![
                s("2+1*sqrt(3)"),
                Scalar::one(),
                s("2-1*sqrt(3)"),
                s("-2+1*sqrt(3)"),
                Scalar::from_int(-1),
                s("-2-1*sqrt(3)")
            ]
        );
    }

    #[test]
    fn ladder_rejects_out_of_domain_lambda1() {
        assert!(matches!(
            spectrum_from_lambda1(6, &[1; 6], &Scalar::one()),
            Err(IsoError::LambdaOutOfDomain { .. })
        ));
        assert!(matches!(
            spectrum_from_lambda1(3, &[1, 1, 1], &s("1/2")),
            Err(IsoError::LambdaOutOfDomain { .. })
        ));
    }

    #[test]
    fn residual_vanishes_for_balanced_clifford() {
        for m in 1..=4 {
            let spectrum =
                PrincipalSpectrum::new(vec![(Scalar::one(), m), (Scalar::from_int(-1), m)]);
            for kk in ["1", "3/2", "5"] {
                assert!(extremality_residual(&spectrum, &k(kk)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn residual_vanishes_for_g3_minimal() {
        let iso = spectrum_from_lambda1(3, &[2, 2, 2], &s("1*sqrt(3)")).unwrap();
        assert!(extremality_residual(&iso.spectrum, &k("2")).unwrap().is_zero());
    }

    #[test]
    fn residual_vanishes_for_t31_in_dimension_ten() {
        let sol = solve_g2(10, 3, &k("1")).unwrap();
        assert_eq!(sol.radius_sq_first, s("1/6"));
        assert_eq!(
            sol.spectrum.entries,
            vec![(s("1/5*sqrt(5)"), 7), (s("-1*sqrt(5)"), 3)]
        );
        assert_eq!(sol.h_sq, s("16/125"));
        assert_eq!(sol.rho_sq, s("378/25"));
        assert!(extremality_residual(&sol.spectrum, &k("1")).unwrap().is_zero());
    }

    #[test]
    fn residual_rejects_k_below_one() {
        let spectrum = PrincipalSpectrum::new(vec![(Scalar::one(), 2)]);
        assert!(matches!(
            extremality_residual(&spectrum, &k("1/2")),
            Err(IsoError::KBelowOne(_))
        ));
    }

    #[test]
    fn solve_g2_quarter_case() {
        let sol = solve_g2(4, 2, &k("1")).unwrap();
        assert_eq!(sol.radius_sq_first, s("1/2"));
        assert!(sol.h_sq.is_zero());
    }

    #[test]
    fn solve_g2_rejects_narrow_window() {
        // (8, 1, 3): k > n/4 requires 2 < m < 6.
        match solve_g2(8, 1, &k("3")) {
            Err(TorusRejection::UpperWindow { m, lower, upper }) => {
                assert_eq!((m, lower.as_str(), upper.as_str()), (1, "2", "6"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn enumerate_tori_n10_k1() {
        let ms: Vec<u32> = enumerate_tori(10, &k("1")).iter().map(|t| t.m).collect();
        assert_eq!(ms, vec![3, 4, 5, 6, 7]);
    }

    #[test]
    fn enumerate_tori_reproduces_willmore_radii() {
        // (6, 3): all m admissible, a^2 = (6-m)/6 = (n-m)/n.
        let tori = enumerate_tori(6, &k("3"));
        assert_eq!(tori.len(), 5);
        for t in &tori {
            let expected = Rational::new(BigInt::from(6 - t.m), BigInt::from(6u32));
            assert_eq!(t.radius_sq_first, Scalar::from_rational(expected));
        }
    }

    #[test]
    fn torus_identity_from_remark() {
        // rho^2 = n + n(n/2k - 1) H^2 exactly.
        for (n, kk) in [(10u32, "1"), (7, "3/2"), (12, "6"), (9, "9/2")] {
            for t in enumerate_tori(n, &k(kk)) {
                let n_s = Scalar::from_int(n as i64);
                let factor = Scalar::from_rational(
                    rat_u(n) / (k(kk) * rat(2)) - Rational::one(),
                );
                let expected = &n_s + &(&n_s * &factor * &t.h_sq);
                assert_eq!(t.rho_sq, expected, "n={n} m={} k={kk}", t.m);
            }
        }
    }

    #[test]
    fn solve_g3_branches() {
        match solve_g3(1, &k("1")).unwrap() {
            Classification::Unique(iso) => assert_eq!(iso.lambda1, s("1*sqrt(3)")),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            solve_g3(2, &k("1")).unwrap(),
            Classification::AllExtremal { n: 6 }
        );
        assert_eq!(
            solve_g3(8, &k("4")).unwrap(),
            Classification::AllExtremal { n: 24 }
        );
        assert!(matches!(solve_g3(3, &k("1")), Err(IsoError::BadG3Multiplicity(3))));
    }

    #[test]
    fn solve_g6_branches() {
        match solve_g6(1, &k("1")).unwrap() {
            Classification::Unique(iso) => assert_eq!(iso.lambda1, s("2+1*sqrt(3)")),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            solve_g6(2, &k("1")).unwrap(),
            Classification::AllExtremal { n: 12 }
        );
        match solve_g6(2, &k("3")).unwrap() {
            Classification::Unique(iso) => assert_eq!(iso.lambda1, s("2+1*sqrt(3)")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(solve_g6(3, &k("1")), Err(IsoError::BadG6Multiplicity(3))));
    }

    #[test]
    fn solve_g4_equal_multiplicities() {
        match solve_g4(3, 3, &k("1")).unwrap().kind {
            G4Kind::Roots(roots) => {
                assert_eq!(roots.len(), 1);
                assert_eq!(roots[0].x, Scalar::from_int(4));
                assert_eq!(roots[0].spectrum.lambda1, s("1+1*sqrt(2)"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            solve_g4(2, 2, &k("1")).unwrap().kind,
            G4Kind::AllExtremal { n: 8 }
        );
    }

    #[test]
    fn solve_g4_generic_root() {
        match solve_g4(4, 5, &k("1")).unwrap().kind {
            G4Kind::Roots(roots) => {
                assert_eq!(roots.len(), 1);
                // 7x^2 - 5x - 195 = 0, x = (5 + sqrt(5485))/14
                assert_eq!(roots[0].x, s("5/14+1/14*sqrt(5485)"));
                let res =
                    extremality_residual(&roots[0].spectrum.spectrum, &k("1")).unwrap();
                assert!(res.to_f64().abs() < 1e-10);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn solve_g4_degenerate_no_root() {
        match solve_g4(4, 5, &k("2")).unwrap().kind {
            G4Kind::Roots(roots) => assert!(roots.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn g4_multiplicity_flag() {
        assert!(g4_multiplicity_admissible(2, 2));
        assert!(g4_multiplicity_admissible(4, 5));
        // m1 = 1: xi(0) = 0, any m2 passes the 2^0 divisibility.
        assert!(g4_multiplicity_admissible(1, 6));
        // m1 = 3: xi(2) = 2, needs m1 + m2 + 1 divisible by 4.
        assert!(!g4_multiplicity_admissible(3, 5));
        assert!(g4_multiplicity_admissible(3, 4));
    }

    #[test]
    fn spectrum_flip_negates_residual() {
        let iso = spectrum_from_lambda1(4, &[2, 3, 2, 3], &s("3/2")).unwrap();
        let r = extremality_residual(&iso.spectrum, &k("2")).unwrap();
        let r_neg = extremality_residual(&iso.spectrum.negated(), &k("2")).unwrap();
        assert_eq!(r_neg, -r);
    }
}
