//! Second-fundamental-form containers, curvature via the Gauss and Ricci
//! equations, the traceless decomposition, and the catalog of model
//! submanifolds (round spheres, Clifford and Willmore tori, the Veronese
//! surface).

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{sqrt_exact, AlgebraError, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("matrix {index} is not symmetric")]
    NotSymmetric { index: usize },
    #[error("dimension must satisfy n >= 2 and p >= 1 (got n={n}, p={p})")]
    BadDimensions { n: usize, p: usize },
    #[error("matrix {index} is not {n}x{n}")]
    BadShape { index: usize, n: usize },
    #[error("exponent k must satisfy k >= 1 (got {0})")]
    KBelowOne(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type ScalarMatrix = Vec<Vec<Scalar>>;

pub fn zero_matrix(n: usize) -> ScalarMatrix {
    vec![vec![Scalar::zero(); n]; n]
}

pub fn identity_matrix(n: usize) -> ScalarMatrix {
    let mut m = zero_matrix(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    m
}

pub fn mat_mul(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Scalar::zero();
            for (k, bk) in b.iter().enumerate() {
                acc = acc + &a[i][k] * &bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_trace(a: &ScalarMatrix) -> Scalar {
    a.iter()
        .enumerate()
        .fold(Scalar::zero(), |acc, (i, row)| acc + row[i].clone())
}

/// tr(A B) without forming the product.
pub fn trace_product(a: &ScalarMatrix, b: &ScalarMatrix) -> Scalar {
    let n = a.len();
    let mut acc = Scalar::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + &a[i][j] * &b[j][i];
        }
    }
    acc
}

pub fn commutator(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = &ab[i][j] - &ba[i][j];
        }
    }
    out
}

/// Squared Frobenius norm, the `N(B)` of the matrix lemmas.
pub fn frobenius_sq(a: &ScalarMatrix) -> Scalar {
    a.iter().flatten().fold(Scalar::zero(), |acc, v| acc + v * v)
}

/// Constant principal curvatures with multiplicities; the hypersurface model
/// representation. Entries are kept in strictly descending curvature order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrincipalSpectrum {
    pub entries: Vec<(Scalar, u32)>,
}

impl PrincipalSpectrum {
    pub fn new(mut entries: Vec<(Scalar, u32)>) -> Self {
        entries.sort_by(|a, b| b.0.compare(&a.0));
        PrincipalSpectrum { entries }
    }

    pub fn n(&self) -> u32 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// nH = sum of curvatures with multiplicity.
    pub fn curvature_sum(&self) -> Scalar {
        self.weighted_power_sum(1)
    }

    pub fn weighted_power_sum(&self, exp: u32) -> Scalar {
        self.entries.iter().fold(Scalar::zero(), |acc, (l, m)| {
            acc + l.powi(exp) * Scalar::from_int(*m as i64)
        })
    }

    pub fn mean_curvature(&self) -> Scalar {
        self.curvature_sum() / Scalar::from_int(self.n() as i64)
    }

    pub fn sum_sq(&self) -> Scalar {
        self.weighted_power_sum(2)
    }

    pub fn rho_sq(&self) -> Scalar {
        let n = Scalar::from_int(self.n() as i64);
        let h = self.mean_curvature();
        self.sum_sq() - n * &h * &h
    }

    pub fn negated(&self) -> Self {
        PrincipalSpectrum::new(self.entries.iter().map(|(l, m)| (-l, *m)).collect())
    }

    /// Diagonal codimension-one form carrying the same data.
    pub fn to_form(&self) -> SecondFundamentalForm {
        let n = self.n() as usize;
        let mut mat = zero_matrix(n);
        let mut idx = 0;
        for (l, m) in &self.entries {
            for _ in 0..*m {
                mat[idx][idx] = l.clone();
                idx += 1;
            }
        }
        SecondFundamentalForm::new(vec![mat]).expect("diagonal form is valid")
    }
}

/// The `p` symmetric shape-operator matrices `h^a_{ij}` of an `n`-dimensional
/// submanifold of codimension `p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondFundamentalForm {
    n: usize,
    p: usize,
    matrices: Vec<ScalarMatrix>,
}

impl SecondFundamentalForm {
    pub fn new(matrices: Vec<ScalarMatrix>) -> Result<Self, TensorError> {
        let p = matrices.len();
        let n = matrices.first().map(|m| m.len()).unwrap_or(0);
        if n < 2 || p < 1 {
            return Err(TensorError::BadDimensions { n, p });
        }
        for (index, mat) in matrices.iter().enumerate() {
            if mat.len() != n || mat.iter().any(|row| row.len() != n) {
                return Err(TensorError::BadShape { index, n });
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    if mat[i][j] != mat[j][i] {
                        return Err(TensorError::NotSymmetric { index });
                    }
                }
            }
        }
        Ok(SecondFundamentalForm { n, p, matrices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn matrices(&self) -> &[ScalarMatrix] {
        &self.matrices
    }

    /// Mean curvature components H^a = tr(A_a)/n.
    pub fn mean_vector(&self) -> Vec<Scalar> {
        let n = Scalar::from_int(self.n as i64);
        self.matrices
            .iter()
            .map(|m| mat_trace(m) / n.clone())
            .collect()
    }

    /// H^2 = sum of (H^a)^2.
    pub fn mean_norm_sq(&self) -> Scalar {
        self.mean_vector()
            .iter()
            .fold(Scalar::zero(), |acc, h| acc + h * h)
    }

    /// Subtracts the umbilical part: each output matrix has exact trace zero.
    pub fn traceless(&self) -> SecondFundamentalForm {
        let means = self.mean_vector();
        let matrices = self
            .matrices
            .iter()
            .zip(&means)
            .map(|(mat, h)| {
                let mut out = mat.clone();
                for (i, row) in out.iter_mut().enumerate() {
                    row[i] = &row[i] - h;
                }
                out
            })
            .collect();
        SecondFundamentalForm {
            n: self.n,
            p: self.p,
            matrices,
        }
    }

    pub fn invariants(&self) -> FormInvariants {
        let mean_vector = self.mean_vector();
        let tilde = self.traceless();
        let sigma: Vec<Vec<Scalar>> = self
            .matrices
            .iter()
            .map(|a| {
                self.matrices
                    .iter()
                    .map(|b| trace_product(a, b))
                    .collect()
            })
            .collect();
        let sigma_tilde: Vec<Vec<Scalar>> = tilde
            .matrices
            .iter()
            .map(|a| {
                tilde
                    .matrices
                    .iter()
                    .map(|b| trace_product(a, b))
                    .collect()
            })
            .collect();
        let s = (0..self.p).fold(Scalar::zero(), |acc, a| acc + sigma[a][a].clone());
        let mean_norm_sq = mean_vector
            .iter()
            .fold(Scalar::zero(), |acc, h| acc + h * h);
        let rho_sq = &s - &(Scalar::from_int(self.n as i64) * mean_norm_sq.clone());
        FormInvariants {
            sigma,
            sigma_tilde,
            s,
            mean_vector,
            mean_norm_sq,
            rho_sq,
        }
    }

    /// Full curvature tensor R_{ijkl} from the Gauss equation.
    pub fn riemann(&self) -> RiemannTensor {
        let n = self.n;
        let mut data = vec![Scalar::zero(); n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut v = Scalar::from_int(
                            (i == k && j == l) as i64 - (i == l && j == k) as i64,
                        );
                        for mat in &self.matrices {
                            v = v + &mat[i][k] * &mat[j][l] - &mat[i][l] * &mat[j][k];
                        }
                        data[((i * n + j) * n + k) * n + l] = v;
                    }
                }
            }
        }
        RiemannTensor { n, data }
    }

    /// Ricci matrix R_{ij} = (n-1) d_{ij} + n sum_a H^a h^a_{ij} - sum_a (A_a^2)_{ij}.
    pub fn ricci_matrix(&self) -> ScalarMatrix {
        let n = self.n;
        let means = self.mean_vector();
        let mut out = zero_matrix(n);
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = Scalar::from_int(n as i64 - 1);
        }
        let n_scalar = Scalar::from_int(n as i64);
        for (mat, h) in self.matrices.iter().zip(&means) {
            let sq = mat_mul(mat, mat);
            for i in 0..n {
                for j in 0..n {
                    out[i][j] = &out[i][j] + &(&(&n_scalar * h) * &mat[i][j]) - &sq[i][j];
                }
            }
        }
        out
    }

    /// Normal curvature R^perp_{ab ij} = [A_a, A_b]_{ij}, antisymmetric in both
    /// index pairs.
    pub fn normal_curvature(&self) -> Vec<Vec<ScalarMatrix>> {
        self.matrices
            .iter()
            .map(|a| {
                self.matrices
                    .iter()
                    .map(|b| commutator(a, b))
                    .collect()
            })
            .collect()
    }

    /// Parallel-model Euler-Lagrange bracket, per normal direction:
    /// sum_b tr(A_a A_b^2) - sum_b H^b s_{ab} - (n/2k) rho^2 H^a.
    ///
    /// The caller asserts the model has parallel second fundamental form and
    /// constant rho, so the derivative terms of the full equation vanish.
    pub fn reduced_el_residual(&self, k: &Rational) -> Result<Vec<Scalar>, TensorError> {
        if k < &Rational::one() {
            return Err(TensorError::KBelowOne(k.to_string()));
        }
        let inv = self.invariants();
        let squares: Vec<ScalarMatrix> =
            self.matrices.iter().map(|m| mat_mul(m, m)).collect();
        let n_over_2k = Scalar::from_rational(
            Rational::from_integer(BigInt::from(self.n)) / (Rational::from_integer(BigInt::from(2)) * k),
        );
        let mut out = Vec::with_capacity(self.p);
        for a in 0..self.p {
            let mut v = Scalar::zero();
            for b in 0..self.p {
                v = v + trace_product(&self.matrices[a], &squares[b]);
                v = v - &inv.mean_vector[b] * &inv.sigma[a][b];
            }
            v = v - &(&n_over_2k * &inv.rho_sq) * &inv.mean_vector[a];
            out.push(v);
        }
        Ok(out)
    }

    /// Curvature summary with `samples` random orthonormal 2-planes for the
    /// sampled K_min fallback on non-diagonal multi-codimension forms.
    pub fn gauss_curvatures_with(&self, samples: usize, seed: u64) -> CurvatureSummary {
        let inv = self.invariants();
        let n = self.n;
        let n_scalar = Scalar::from_int(n as i64);
        let scalar_curv = &n_scalar * &Scalar::from_int(n as i64 - 1)
            + &n_scalar * &n_scalar * &inv.mean_norm_sq
            - inv.s.clone();

        let ricci = self.ricci_matrix();
        let ricci_diagonal = (0..n)
            .all(|i| (0..n).all(|j| i == j || ricci[i][j].is_zero()));
        let ricci_min_exact = if ricci_diagonal {
            let mut min = ricci[0][0].clone();
            for (i, row) in ricci.iter().enumerate().skip(1) {
                if row[i].compare(&min) == std::cmp::Ordering::Less {
                    min = row[i].clone();
                }
            }
            Some(min)
        } else {
            None
        };
        let ricci_min = match &ricci_min_exact {
            Some(v) => v.to_f64(),
            None => {
                let m = DMatrix::from_fn(n, n, |i, j| ricci[i][j].to_f64());
                m.symmetric_eigenvalues()
                    .iter()
                    .cloned()
                    .fold(f64::INFINITY, f64::min)
            }
        };

        let riemann = self.riemann();
        // Exact minimum over coordinate planes; for n = 2 that is the only
        // 2-plane, so no sampling is needed.
        let mut k_min_exact: Option<Scalar> = None;
        for i in 0..n {
            for j in (i + 1)..n {
                let k = riemann.sectional_coordinate(i, j);
                k_min_exact = Some(match k_min_exact {
                    None => k,
                    Some(cur) => {
                        if k.compare(&cur) == std::cmp::Ordering::Less {
                            k
                        } else {
                            cur
                        }
                    }
                });
            }
        }
        let coordinate_min = k_min_exact.clone().expect("n >= 2");
        let diagonal = self.matrices.iter().all(|mat| {
            (0..n).all(|i| (0..n).all(|j| i == j || mat[i][j].is_zero()))
        });
        let mut k_min = coordinate_min.to_f64();
        let mut k_min_sampled = false;
        if !diagonal && n > 2 {
            k_min_sampled = true;
            k_min_exact = None;
            let rf = riemann.to_f64();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                if let Some(k) = sampled_plane_curvature(&rf, n, &mut rng) {
                    k_min = k_min.min(k);
                }
            }
        }

        CurvatureSummary {
            mean_vector: inv.mean_vector,
            mean_norm_sq: inv.mean_norm_sq,
            s: inv.s,
            rho_sq: inv.rho_sq,
            scalar_curv,
            ricci_min,
            ricci_min_exact,
            k_min,
            k_min_exact,
            k_min_sampled,
        }
    }

    pub fn gauss_curvatures(&self) -> CurvatureSummary {
        self.gauss_curvatures_with(10_000, 0)
    }
}

fn sampled_plane_curvature(
    riemann: &[f64],
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Option<f64> {
    // Random orthonormal 2-plane by Gram-Schmidt on two random vectors.
    let mut u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let norm_u = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm_u < 1e-8 {
        return None;
    }
    u.iter_mut().for_each(|x| *x /= norm_u);
    let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    v.iter_mut().zip(&u).for_each(|(x, a)| *x -= dot * a);
    let norm_v = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm_v < 1e-8 {
        return None;
    }
    v.iter_mut().for_each(|x| *x /= norm_v);
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    acc += riemann[((i * n + j) * n + k) * n + l] * u[i] * v[j] * u[k] * v[l];
                }
            }
        }
    }
    Some(acc)
}

/// Flattened R_{ijkl} with exact entries.
pub struct RiemannTensor {
    n: usize,
    data: Vec<Scalar>,
}

impl RiemannTensor {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        let n = self.n;
        &self.data[((i * n + j) * n + k) * n + l]
    }

    /// Sectional curvature of the coordinate plane (e_i, e_j): R_{ijij}.
    pub fn sectional_coordinate(&self, i: usize, j: usize) -> Scalar {
        self.get(i, j, i, j).clone()
    }

    fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|v| v.to_f64()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct FormInvariants {
    pub sigma: Vec<Vec<Scalar>>,
    pub sigma_tilde: Vec<Vec<Scalar>>,
    pub s: Scalar,
    pub mean_vector: Vec<Scalar>,
    pub mean_norm_sq: Scalar,
    pub rho_sq: Scalar,
}

/// Evaluated curvature data for one model.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurvatureSummary {
    pub mean_vector: Vec<Scalar>,
    pub mean_norm_sq: Scalar,
    pub s: Scalar,
    pub rho_sq: Scalar,
    pub scalar_curv: Scalar,
    pub ricci_min: f64,
    pub ricci_min_exact: Option<Scalar>,
    pub k_min: f64,
    pub k_min_exact: Option<Scalar>,
    pub k_min_sampled: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Geometry {
    Spectrum(PrincipalSpectrum),
    Form(SecondFundamentalForm),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSubmanifold {
    pub name: String,
    pub geometry: Geometry,
    pub ambient_dim: u32,
}

impl ModelSubmanifold {
    pub fn n(&self) -> u32 {
        match &self.geometry {
            Geometry::Spectrum(s) => s.n(),
            Geometry::Form(f) => f.n() as u32,
        }
    }

    pub fn p(&self) -> u32 {
        match &self.geometry {
            Geometry::Spectrum(_) => 1,
            Geometry::Form(f) => f.p() as u32,
        }
    }

    pub fn form(&self) -> SecondFundamentalForm {
        match &self.geometry {
            Geometry::Spectrum(s) => s.to_form(),
            Geometry::Form(f) => f.clone(),
        }
    }

    pub fn curvature_summary(&self) -> CurvatureSummary {
        self.form().gauss_curvatures()
    }
}

/// Catalog constructors for the model submanifolds.
pub mod catalog {
    use super::*;
    use crate::isoparametric::{solve_g2, TorusRejection, TorusSolution};

    #[derive(Debug, Error, Clone, PartialEq)]
    pub enum CatalogError {
        #[error("invalid sphere factors: need m >= 1 and l >= 1")]
        BadFactors,
        #[error("unknown model tag `{0}`")]
        UnknownTag(String),
        #[error("model `{model}` expects {expected} parameters, got {got}")]
        BadParamCount { model: String, expected: usize, got: usize },
        #[error("bad model parameter `{0}`")]
        BadParam(String),
        #[error(transparent)]
        Torus(#[from] TorusRejection),
        #[error(transparent)]
        Algebra(#[from] AlgebraError),
    }

    /// Umbilical sphere of mean curvature `h` in the unit sphere.
    pub fn round_sphere(n: u32, h: Scalar) -> ModelSubmanifold {
        ModelSubmanifold {
            name: format!("round_sphere({n},{h})"),
            geometry: Geometry::Spectrum(PrincipalSpectrum::new(vec![(h, n)])),
            ambient_dim: n + 1,
        }
    }

    /// Product of spheres with radii (sqrt(m/n), sqrt(l/n)); minimal.
    pub fn clifford(m: u32, l: u32) -> Result<ModelSubmanifold, CatalogError> {
        product_torus(m, l, Rational::new(BigInt::from(m), BigInt::from(m + l)))
            .map(|g| ModelSubmanifold {
                name: format!("clifford({m},{l})"),
                geometry: g,
                ambient_dim: m + l + 1,
            })
    }

    /// Product of spheres with radii (sqrt(l/n), sqrt(m/n)).
    pub fn willmore(m: u32, l: u32) -> Result<ModelSubmanifold, CatalogError> {
        product_torus(m, l, Rational::new(BigInt::from(l), BigInt::from(m + l)))
            .map(|g| ModelSubmanifold {
                name: format!("willmore({m},{l})"),
                geometry: g,
                ambient_dim: m + l + 1,
            })
    }

    /// S^m(a) x S^{n-m}(sqrt(1-a^2)) with a^2 given; principal curvatures
    /// -sqrt(1-a^2)/a (mult m) and a/sqrt(1-a^2) (mult n-m).
    fn product_torus(m: u32, l: u32, a_sq: Rational) -> Result<Geometry, CatalogError> {
        if m < 1 || l < 1 {
            return Err(CatalogError::BadFactors);
        }
        let one = Rational::one();
        let lambda = -sqrt_exact(&((&one - &a_sq) / &a_sq))?;
        let mu = Scalar::from_int(-1).try_div(&lambda)?;
        Ok(Geometry::Spectrum(PrincipalSpectrum::new(vec![
            (lambda, m),
            (mu, l),
        ])))
    }

    pub fn torus(n: u32, m: u32, k: &Rational) -> Result<TorusSolution, TorusRejection> {
        solve_g2(n, m, k)
    }

    /// Parses `tag[:params]` into a catalog model. Tags: `veronese`,
    /// `round-sphere:n,H`, `clifford:m,l`, `willmore:m,l`, `torus:n,m`
    /// (the torus uses the exponent `k`).
    pub fn from_tag(tag: &str, k: &Rational) -> Result<ModelSubmanifold, CatalogError> {
        let (name, params) = match tag.split_once(':') {
            Some((name, params)) => (name, params),
            None => (tag, ""),
        };
        let parts: Vec<&str> = params
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let expect = |n: usize| -> Result<(), CatalogError> {
            if parts.len() != n {
                Err(CatalogError::BadParamCount {
                    model: name.to_string(),
                    expected: n,
                    got: parts.len(),
                })
            } else {
                Ok(())
            }
        };
        let uint = |s: &str| -> Result<u32, CatalogError> {
            s.parse().map_err(|_| CatalogError::BadParam(s.to_string()))
        };
        match name {
            "veronese" => {
                expect(0)?;
                Ok(veronese_surface())
            }
            "round-sphere" => {
                expect(2)?;
                let h: Scalar = parts[1]
                    .parse()
                    .map_err(|_| CatalogError::BadParam(parts[1].to_string()))?;
                Ok(round_sphere(uint(parts[0])?, h))
            }
            "clifford" => {
                expect(2)?;
                clifford(uint(parts[0])?, uint(parts[1])?)
            }
            "willmore" => {
                expect(2)?;
                willmore(uint(parts[0])?, uint(parts[1])?)
            }
            "torus" => {
                expect(2)?;
                let n = uint(parts[0])?;
                let solution = torus(n, uint(parts[1])?, k)?;
                Ok(ModelSubmanifold {
                    name: format!("torus({n},{})", solution.m),
                    geometry: Geometry::Spectrum(solution.spectrum),
                    ambient_dim: n + 1,
                })
            }
            other => Err(CatalogError::UnknownTag(other.to_string())),
        }
    }

    /// Minimal embedding of the real projective plane in the 4-sphere,
    /// normalized so that S = 4/3 (the Simons equality level at n = p = 2).
    pub fn veronese_surface() -> ModelSubmanifold {
        let mu = sqrt_exact(&Rational::new(BigInt::from(1), BigInt::from(3)))
            .expect("1/3 has exact square root form");
        let z = Scalar::zero;
        let a1 = vec![vec![z(), mu.clone()], vec![mu.clone(), z()]];
        let a2 = vec![vec![mu.clone(), z()], vec![z(), -mu]];
        let form = SecondFundamentalForm::new(vec![a1, a2]).expect("symmetric 2x2");
        ModelSubmanifold {
            name: "veronese".to_string(),
            geometry: Geometry::Form(form),
            ambient_dim: 4,
        }
    }
}
