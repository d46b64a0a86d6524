//! The Kravchuk finite oscillator: polynomials, binomial weight, normalized
//! functions on the grid `x_j = j - pN`, and the tridiagonal Hamiltonian.
//!
//! `p` is kept as an exact rational. On grid points the polynomials are
//! evaluated exactly and converted once, since the floating-point sums lose
//! every digit to cancellation well before `N = 64`.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Signed, Zero};

use crate::error::{check_index, Error, Result};
use crate::specfun::{
    hermite, hyp2f1_terminating, ln_abs_rational, ln_binomial, ln_factorial, log_gamma,
    parse_rational, powi, Rational, Scalar,
};

/// Tolerance for recognizing a float argument as a grid point.
const GRID_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct KravchukModel {
    n: u32,
    p: Rational,
    q: Rational,
    pf: f64,
    qf: f64,
}

impl KravchukModel {
    pub fn new(n: u32, p: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("N must be at least 1".into()));
        }
        if !(p > Rational::zero() && p < Rational::one()) {
            return Err(Error::Parameter(format!("p must lie in (0, 1), got {p}")));
        }
        let q = Rational::one() - &p;
        let pf = p.to_f64();
        let qf = q.to_f64();
        Ok(Self { n, p, q, pf, qf })
    }

    /// `p` given as `"num/den"`.
    pub fn parse(n: u32, p: &str) -> Result<Self> {
        Self::new(n, parse_rational(p)?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn p_f64(&self) -> f64 {
        self.pf
    }

    pub fn q_f64(&self) -> f64 {
        self.qf
    }

    pub fn dim(&self) -> usize {
        self.n as usize + 1
    }

    /// Scale between `x` and the oscillator variable `ξ = h x`: `h = (2Npq)^{-1/2}`.
    pub fn h(&self) -> f64 {
        1.0 / (2.0 * self.n as f64 * self.pf * self.qf).sqrt()
    }

    /// `x_j = j - pN`
    pub fn grid_point(&self, j: u32) -> f64 {
        self.grid_point_exact(j).to_f64()
    }

    pub fn grid_point_exact(&self, j: u32) -> Rational {
        Rational::from_int(j as i64) - &self.p * Rational::from_int(self.n as i64)
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..=self.n).map(|j| self.grid_point(j)).collect()
    }

    /// `-Np`
    pub fn x_min(&self) -> f64 {
        -(self.n as f64) * self.pf
    }

    /// `Nq`
    pub fn x_max(&self) -> f64 {
        self.n as f64 * self.qf
    }

    /// The index `j` when `y` (a polynomial argument in `[0, N]`) is an integer.
    fn integer_arg(&self, y: f64) -> Option<u32> {
        let r = y.round();
        if (y - r).abs() <= GRID_SNAP && r >= 0.0 && r <= self.n as f64 {
            Some(r as u32)
        } else {
            None
        }
    }

    /// Index of the grid point `x`, if `x` is one.
    pub fn grid_index(&self, x: f64) -> Option<u32> {
        self.integer_arg(x + self.n as f64 * self.pf)
    }

    fn check_k(&self, k: u32) -> Result<()> {
        check_index(k as i64, 0, self.n as i64)
    }
}

impl fmt::Display for KravchukModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, p={})", self.n, self.p)
    }
}

/// `K_k(y) = (-p)^k C(N, k) 2F1(-k, -y; -N; 1/p)` in any scalar type.
pub fn kravchuk_poly_generic<T: Scalar>(model: &KravchukModel, k: u32, y: &T) -> Result<T> {
    model.check_k(k)?;
    let p = T::from_rational(&model.p);
    let c = T::from_int(-(model.n as i64));
    let f = hyp2f1_terminating(k, &(-y.clone()), &c, &(T::one() / p.clone()))?;
    let binom = T::binom(&T::from_int(model.n as i64), k);
    Ok(powi(&(-p), k as i64) * binom * f)
}

/// Exact `K_k(y)`.
pub fn kravchuk_poly_exact(model: &KravchukModel, k: u32, y: &Rational) -> Result<Rational> {
    kravchuk_poly_generic(model, k, y)
}

/// `K_k(y)` in floating point; integer `y ∈ [0, N]` goes through the exact path.
pub fn kravchuk_poly(model: &KravchukModel, k: u32, y: f64) -> Result<f64> {
    model.check_k(k)?;
    match model.integer_arg(y) {
        Some(j) => {
            Ok(poly_values_exact(model, &Rational::from_int(j as i64), k)[k as usize].to_f64())
        }
        None => kravchuk_poly_generic(model, k, &y),
    }
}

/// `K_0(y) ..= K_kmax(y)` exactly, by
/// `(k+1) K_{k+1} = (y - k - p(N-2k)) K_k - pq(N-k+1) K_{k-1}`.
pub fn poly_values_exact(model: &KravchukModel, y: &Rational, kmax: u32) -> Vec<Rational> {
    let n = model.n as i64;
    let pq = &model.p * &model.q;
    let mut out = Vec::with_capacity(kmax as usize + 1);
    out.push(Rational::one());
    if kmax == 0 {
        return out;
    }
    out.push(y - &model.p * Rational::from_int(n));
    for k in 1..kmax as i64 {
        let a = y - Rational::from_int(k) - &model.p * Rational::from_int(n - 2 * k);
        let next = (a * &out[k as usize]
            - &pq * Rational::from_int(n - k + 1) * &out[k as usize - 1])
            / Rational::from_int(k + 1);
        out.push(next);
    }
    out
}

/// All `K_k(j)`, `k = 0..=N`, at the integer argument `j`.
pub fn poly_column_exact(model: &KravchukModel, j: u32) -> Vec<Rational> {
    poly_values_exact(model, &Rational::from_int(j as i64), model.n)
}

fn recurrence_terms<T: Scalar>(model: &KravchukModel, k: u32, y: &T) -> Result<[T; 3]> {
    check_index(k as i64, 1, model.n as i64 - 1)?;
    let p = T::from_rational(&model.p);
    let n = model.n as i64;
    let ki = k as i64;
    let km = kravchuk_poly_generic(model, k - 1, y)?;
    let k0 = kravchuk_poly_generic(model, k, y)?;
    let kp = kravchuk_poly_generic(model, k + 1, y)?;
    let a = (y.clone() - T::from_int(ki) - p.clone() * T::from_int(n - 2 * ki)) * k0;
    let b = T::from_int(ki + 1) * kp;
    let c = p.clone() * (T::one() - p) * T::from_int(n - ki + 1) * km;
    Ok([a, b, c])
}

/// Exact `(y - k - p(N-2k)) K_k - (k+1) K_{k+1} - pq(N-k+1) K_{k-1}`, `1 <= k <= N-1`.
pub fn recurrence_residual_exact(model: &KravchukModel, k: u32, y: &Rational) -> Result<Rational> {
    let [a, b, c] = recurrence_terms(model, k, y)?;
    Ok(a - b - c)
}

/// Absolute value of the three-term recurrence residual in floating point.
pub fn recurrence_residual(model: &KravchukModel, k: u32, y: f64) -> Result<f64> {
    Ok(recurrence_residual_parts(model, k, y)?.0)
}

/// `(|residual|, max |term|)` of the recurrence in floating point.
pub fn recurrence_residual_parts(model: &KravchukModel, k: u32, y: f64) -> Result<(f64, f64)> {
    let [a, b, c] = match model.integer_arg(y) {
        Some(j) => {
            check_index(k as i64, 1, model.n as i64 - 1)?;
            let vals = poly_values_exact(model, &Rational::from_int(j as i64), k + 1);
            exact_recurrence_terms(model, k, j, &vals)
        }
        None => recurrence_terms(model, k, &y)?,
    };
    let scale = a.abs().max(b.abs()).max(c.abs());
    Ok(((a - b - c).abs(), scale))
}

fn exact_recurrence_terms(model: &KravchukModel, k: u32, j: u32, vals: &[Rational]) -> [f64; 3] {
    let n = model.n as i64;
    let ki = k as i64;
    let k = k as usize;
    let a = (Rational::from_int(j as i64)
        - Rational::from_int(ki)
        - &model.p * Rational::from_int(n - 2 * ki))
        * &vals[k];
    let b = Rational::from_int(ki + 1) * &vals[k + 1];
    let c = &model.p * &model.q * Rational::from_int(n - ki + 1) * &vals[k - 1];
    [a.to_f64(), b.to_f64(), c.to_f64()]
}

/// `K_k(j)` for every grid argument, indexed `[j][k]`.
pub fn poly_table_exact(model: &KravchukModel) -> Vec<Vec<Rational>> {
    (0..=model.n).map(|j| poly_column_exact(model, j)).collect()
}

/// `(|residual|, max |term|)` of the recurrence for every `1 <= k <= N-1` and grid
/// argument `j`, indexed `[j][k - 1]`. `table` comes from [`poly_table_exact`].
pub fn recurrence_residual_grid(
    model: &KravchukModel,
    table: &[Vec<Rational>],
) -> Vec<Vec<(f64, f64)>> {
    (0..=model.n)
        .map(|j| {
            let col = &table[j as usize];
            (1..model.n)
                .map(|k| {
                    let [a, b, c] = exact_recurrence_terms(model, k, j, col);
                    ((a - b - c).abs(), a.abs().max(b.abs()).max(c.abs()))
                })
                .collect()
        })
        .collect()
}

/// `ϱ(y) = N! p^y q^{N-y} / (Γ(y+1) Γ(N-y+1))`, `0 <= y <= N`.
pub fn binomial_weight(model: &KravchukModel, y: f64) -> Result<f64> {
    Ok(ln_binomial_weight(model, y)?.exp())
}

fn ln_binomial_weight(model: &KravchukModel, y: f64) -> Result<f64> {
    let n = model.n as f64;
    if !(y >= -GRID_SNAP && y <= n + GRID_SNAP) {
        return Err(Error::Domain(format!(
            "binomial weight needs 0 <= y <= {n}, got {y}"
        )));
    }
    if let Some(j) = model.integer_arg(y) {
        let jf = j as f64;
        return Ok(ln_binomial(model.n as u64, j as u64)
            + jf * model.pf.ln()
            + (n - jf) * model.qf.ln());
    }
    Ok(
        ln_factorial(model.n as u64) + y * model.pf.ln() + (n - y) * model.qf.ln()
            - log_gamma(y + 1.0)?
            - log_gamma(n - y + 1.0)?,
    )
}

/// Exact `ϱ(j) = C(N, j) p^j q^{N-j}`.
pub fn binomial_weight_exact(model: &KravchukModel, j: u32) -> Result<Rational> {
    check_index(j as i64, 0, model.n as i64)?;
    let n = model.n as i64;
    Ok(Rational::binom(&Rational::from_int(n), j)
        * powi(&model.p, j as i64)
        * powi(&model.q, n - j as i64))
}

/// `d_k² = C(N, k) (pq)^k`
pub fn norm_sq_exact(model: &KravchukModel, k: u32) -> Result<Rational> {
    model.check_k(k)?;
    Ok(Rational::binom(&Rational::from_int(model.n as i64), k)
        * powi(&(&model.p * &model.q), k as i64))
}

fn ln_norm_sq(model: &KravchukModel, k: u32) -> f64 {
    ln_binomial(model.n as u64, k as u64) + k as f64 * (model.pf * model.qf).ln()
}

/// Exact `Σ_j ϱ(j) K_k(j) K_n(j)`.
pub fn poly_orthogonality_sum_exact(model: &KravchukModel, k: u32, n: u32) -> Result<Rational> {
    model.check_k(k)?;
    model.check_k(n)?;
    let kmax = k.max(n);
    let mut sum = Rational::zero();
    for j in 0..=model.n {
        let vals = poly_values_exact(model, &Rational::from_int(j as i64), kmax);
        sum += binomial_weight_exact(model, j)? * &vals[k as usize] * &vals[n as usize];
    }
    Ok(sum)
}

/// `Σ_j ϱ(j) K_k(j) K_n(j)` accumulated in floating point.
pub fn poly_orthogonality_sum(model: &KravchukModel, k: u32, n: u32) -> Result<f64> {
    model.check_k(k)?;
    model.check_k(n)?;
    let kmax = k.max(n);
    let mut sum = 0.0;
    for j in 0..=model.n {
        let vals = poly_values_exact(model, &Rational::from_int(j as i64), kmax);
        sum += binomial_weight(model, j as f64)?
            * vals[k as usize].to_f64()
            * vals[n as usize].to_f64();
    }
    Ok(sum)
}

/// `exp(½ ln ϱ(j) - ½ ln d_k²) · K` with the sign and size of `K` kept apart.
fn grid_function_value(model: &KravchukModel, k: u32, j: u32, poly: &Rational) -> f64 {
    if poly.is_zero() {
        return 0.0;
    }
    let ln_w = ln_binomial_weight(model, j as f64).expect("grid point is in range");
    let sign = if poly.is_negative() { -1.0 } else { 1.0 };
    sign * (0.5 * (ln_w - ln_norm_sq(model, k)) + ln_abs_rational(poly)).exp()
}

/// Normalized Kravchuk function `φ_k(x) = d_k^{-1} sqrt(ϱ(x+Np)) K_k(x+Np)`, `-Np <= x <= Nq`.
///
/// Grid points use the exact polynomial; other `x` use the Gamma-function
/// weight and the floating-point sum.
pub fn kravchuk_function(model: &KravchukModel, k: u32, x: f64) -> Result<f64> {
    model.check_k(k)?;
    if !(x >= model.x_min() - GRID_SNAP && x <= model.x_max() + GRID_SNAP) {
        return Err(Error::Domain(format!(
            "x = {x} outside [{}, {}]",
            model.x_min(),
            model.x_max()
        )));
    }
    let y = x + model.n as f64 * model.pf;
    if let Some(j) = model.integer_arg(y) {
        let vals = poly_values_exact(model, &Rational::from_int(j as i64), k);
        return Ok(grid_function_value(model, k, j, &vals[k as usize]));
    }
    let poly = kravchuk_poly_generic(model, k, &y)?;
    Ok((0.5 * (ln_binomial_weight(model, y)? - ln_norm_sq(model, k))).exp() * poly)
}

/// `φ_0(x) ..= φ_N(x)` at one point.
pub fn function_column(model: &KravchukModel, x: f64) -> Result<Vec<f64>> {
    if let Some(j) = model.grid_index(x) {
        let col = poly_column_exact(model, j);
        return Ok((0..=model.n)
            .map(|k| grid_function_value(model, k, j, &col[k as usize]))
            .collect());
    }
    (0..=model.n)
        .map(|k| kravchuk_function(model, k, x))
        .collect()
}

/// `φ_k(x_j)` for all `k` (rows) and `j` (columns).
pub fn function_table(model: &KravchukModel) -> DMatrix<f64> {
    function_table_from(model, &poly_table_exact(model))
}

/// [`function_table`] from a precomputed [`poly_table_exact`].
pub fn function_table_from(model: &KravchukModel, table: &[Vec<Rational>]) -> DMatrix<f64> {
    let dim = model.dim();
    let mut t = DMatrix::zeros(dim, dim);
    for j in 0..=model.n {
        let col = &table[j as usize];
        for k in 0..=model.n {
            t[(k as usize, j as usize)] = grid_function_value(model, k, j, &col[k as usize]);
        }
    }
    t
}

/// `Σ_j φ_k(x_j) φ_n(x_j)`
pub fn function_gram(model: &KravchukModel) -> DMatrix<f64> {
    let t = function_table(model);
    &t * t.transpose()
}

/// Symmetric tridiagonal matrix of `H^N` on grid samples.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorMatrix {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl OscillatorMatrix {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Entries `(j, j+1)` = `(j+1, j)`.
    pub fn off(&self) -> &[f64] {
        &self.off
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let mut s = self.diag[j] * v[j];
                if j > 0 {
                    s += self.off[j - 1] * v[j - 1];
                }
                if j + 1 < n {
                    s += self.off[j] * v[j + 1];
                }
                s
            })
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            m[(j, j)] = self.diag[j];
            if j + 1 < n {
                m[(j, j + 1)] = self.off[j];
                m[(j + 1, j)] = self.off[j];
            }
        }
        m
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.to_dense())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// `H^N` on samples `f(x_j)`: diagonal `2pqN + 1/2 + (1-2p) x_j`, couplings
/// `-sqrt(pq) α(x_j) = -sqrt(pq (N-j)(j+1))` between `j` and `j+1`.
pub fn oscillator_matrix(model: &KravchukModel) -> OscillatorMatrix {
    let (p, q, n) = (model.pf, model.qf, model.n as f64);
    let diag = (0..=model.n)
        .map(|j| 2.0 * p * q * n + 0.5 + (1.0 - 2.0 * p) * model.grid_point(j))
        .collect();
    let off = (0..model.n)
        .map(|j| -(p * q * (n - j as f64) * (j as f64 + 1.0)).sqrt())
        .collect();
    OscillatorMatrix { diag, off }
}

/// `W^{-1/2} H^N W^{1/2}` with `W = diag ϱ(j)`: the same diagonal, `-p(N-j)`
/// above and `-q(j+1)` below. Its eigenvectors are the `K_k(j)` themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactTridiagonal {
    pub diag: Vec<Rational>,
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
}

impl ExactTridiagonal {
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.diag.len();
        (0..n)
            .map(|j| {
                let mut s = &self.diag[j] * &v[j];
                if j > 0 {
                    s += &self.lower[j - 1] * &v[j - 1];
                }
                if j + 1 < n {
                    s += &self.upper[j] * &v[j + 1];
                }
                s
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let n = self.diag.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for j in 0..n {
            m[j][j] = self.diag[j].clone();
            if j + 1 < n {
                m[j][j + 1] = self.upper[j].clone();
                m[j + 1][j] = self.lower[j].clone();
            }
        }
        m
    }
}

pub fn similar_matrix_exact(model: &KravchukModel) -> ExactTridiagonal {
    let n = model.n as i64;
    let two_pq_n = Rational::from_int(2) * &model.p * &model.q * Rational::from_int(n);
    let half = Rational::from_ratio(1, 2);
    let slope = Rational::one() - Rational::from_int(2) * &model.p;
    let diag = (0..=model.n)
        .map(|j| &two_pq_n + &half + &slope * model.grid_point_exact(j))
        .collect();
    let upper = (0..n)
        .map(|j| -(&model.p * Rational::from_int(n - j)))
        .collect();
    let lower = (0..n)
        .map(|j| -(&model.q * Rational::from_int(j + 1)))
        .collect();
    ExactTridiagonal { diag, upper, lower }
}

/// `max_j |(H^N v_k)_j - (k+1/2) v_{k,j}|` for the sampled Kravchuk function `v_k`.
pub fn eigen_residual(model: &KravchukModel, k: u32) -> Result<f64> {
    model.check_k(k)?;
    let table = function_table(model);
    Ok(row_eigen_residual(&oscillator_matrix(model), &table, k))
}

/// [`eigen_residual`] for every `k = 0..=N`.
pub fn eigen_residuals(model: &KravchukModel) -> Vec<f64> {
    let table = function_table(model);
    let h = oscillator_matrix(model);
    (0..=model.n)
        .map(|k| row_eigen_residual(&h, &table, k))
        .collect()
}

fn row_eigen_residual(h: &OscillatorMatrix, table: &DMatrix<f64>, k: u32) -> f64 {
    let v: Vec<f64> = table.row(k as usize).iter().copied().collect();
    let mv = h.apply(&v);
    let lam = k as f64 + 0.5;
    mv.iter()
        .zip(&v)
        .map(|(a, b)| (a - lam * b).abs())
        .fold(0.0, f64::max)
}

/// Exact `max_j |(T K_k)_j - (k+1/2) K_k(j)|` for the rational similar matrix `T`.
pub fn eigen_residual_exact(model: &KravchukModel, k: u32) -> Result<Rational> {
    model.check_k(k)?;
    let v: Vec<Rational> = (0..=model.n)
        .map(|j| poly_column_exact(model, j)[k as usize].clone())
        .collect();
    let tv = similar_matrix_exact(model).apply(&v);
    let lam = Rational::from_int(k as i64) + Rational::from_ratio(1, 2);
    Ok(tv
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - &lam * b).abs())
        .fold(Rational::zero(), |m, d| if d > m { d } else { m }))
}

/// `(√π 2^k k!)^{-1/2} H_k(ξ) e^{-ξ²/2}`
pub fn hermite_function(k: u32, xi: f64) -> f64 {
    let ln_norm = 0.5
        * (0.5 * std::f64::consts::PI.ln()
            + k as f64 * std::f64::consts::LN_2
            + ln_factorial(k as u64));
    hermite(k, &xi) * (-0.5 * xi * xi - ln_norm).exp()
}

/// `|h^{-1/2} φ_k(ξ/h) - (√π 2^k k!)^{-1/2} H_k(ξ) e^{-ξ²/2}|`
pub fn hermite_limit_error(k: u32, xi: f64, n: u32, p: &Rational) -> Result<f64> {
    let model = KravchukModel::new(n, p.clone())?;
    let h = model.h();
    let x = xi / h;
    if !(x > model.x_min() && x < model.x_max()) {
        return Err(Error::Domain(format!(
            "ξ/h = {x} outside ({}, {})",
            model.x_min(),
            model.x_max()
        )));
    }
    let phi = kravchuk_function(&model, k, x)?;
    Ok((phi / h.sqrt() - hermite_function(k, xi)).abs())
}

/// Which diagonal operator plays the role of the position in `[H, [H, X]] = X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommutatorVariable {
    /// `X = diag(x_j)`, `x_j = j - N/2`
    Grid,
    /// `X = diag(j)`
    Index,
}

impl CommutatorVariable {
    fn value(self, model: &KravchukModel, j: u32) -> Rational {
        match self {
            Self::Grid => model.grid_point_exact(j),
            Self::Index => Rational::from_int(j as i64),
        }
    }
}

fn half_model(n: u32) -> Result<KravchukModel> {
    KravchukModel::new(n, Rational::from_ratio(1, 2))
}

/// `‖[H, [H, X]] - X‖_∞` at `p = 1/2` for the given diagonal of `X`.
pub fn double_commutator_residual_for(n: u32, x: &[f64]) -> Result<f64> {
    let model = half_model(n)?;
    if x.len() != model.dim() {
        return Err(Error::Parameter(format!(
            "X needs {} entries, got {}",
            model.dim(),
            x.len()
        )));
    }
    let m = oscillator_matrix(&model).to_dense();
    let xd = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(x));
    let c = &m * &xd - &xd * &m;
    let d = &m * &c - &c * &m - &xd;
    Ok(d.amax())
}

/// `‖[H, [H, X]] - X‖_∞` at `p = 1/2` with `X = diag(x_j)`.
pub fn double_commutator_residual(n: u32) -> Result<f64> {
    let model = half_model(n)?;
    double_commutator_residual_for(n, &model.grid())
}

/// Exact `max |[T, [T, X]] - X|` at `p = 1/2`, with `T` the rational matrix
/// similar to `H^N` under a diagonal change of basis. Such a similarity
/// commutes with diagonal `X`, so this vanishes exactly when the identity
/// holds for `H^N`.
pub fn double_commutator_residual_exact(n: u32, var: CommutatorVariable) -> Result<Rational> {
    let model = half_model(n)?;
    let t = similar_matrix_exact(&model).to_dense();
    let dim = model.dim();
    let x: Vec<Rational> = (0..=model.n).map(|j| var.value(&model, j)).collect();
    // [T, X]_{ab} = T_ab (x_b - x_a)
    let c: Vec<Vec<Rational>> = (0..dim)
        .map(|a| (0..dim).map(|b| &t[a][b] * (&x[b] - &x[a])).collect())
        .collect();
    let mut worst = Rational::zero();
    for a in 0..dim {
        for b in 0..dim {
            let mut s = Rational::zero();
            for k in 0..dim {
                s += &t[a][k] * &c[k][b] - &c[a][k] * &t[k][b];
            }
            if a == b {
                s -= &x[a];
            }
            let d = s.abs();
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn model(n: u32, p: &str) -> KravchukModel {
        KravchukModel::parse(n, p).unwrap()
    }

    #[test]
    fn model_validation() {
        assert!(KravchukModel::parse(0, "1/2").is_err());
        assert!(KravchukModel::parse(3, "0").is_err());
        assert!(KravchukModel::parse(3, "1").is_err());
        assert!(KravchukModel::parse(3, "3/2").is_err());
        let m = model(4, "1/4");
        assert_eq!(m.grid(), vec![-1.0, 0.0, 1.0, 2.0, 3.0]);
        assert_eq!(m.grid_index(2.0), Some(3));
        assert_eq!(m.grid_index(0.5), None);
    }

    #[test]
    fn poly_examples() {
        let m = model(5, "1/3");
        let y = r(7, 4);
        assert_eq!(kravchuk_poly_exact(&m, 0, &y).unwrap(), Rational::one());
        assert_eq!(kravchuk_poly_exact(&m, 1, &y).unwrap(), &y - r(5, 3));
        assert!(matches!(
            kravchuk_poly_exact(&m, 6, &y),
            Err(Error::Index { .. })
        ));
        let m4 = model(4, "1/3");
        assert!(recurrence_residual_exact(&m4, 2, &Rational::one())
            .unwrap()
            .is_zero());
        assert!(recurrence_residual(&m4, 0, 1.0).is_err());
    }

    #[test]
    fn recurrence_values_match_hypergeometric_form() {
        for p in ["1/4", "1/3", "1/2", "2/3"] {
            let m = model(6, p);
            for j in 0..=6 {
                let col = poly_column_exact(&m, j);
                for k in 0..=6 {
                    assert_eq!(
                        col[k as usize],
                        kravchuk_poly_exact(&m, k, &Rational::from_int(j as i64)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn float_recurrence_and_boundary() {
        let m = model(20, "1/3");
        for k in 1..20 {
            for y in [0.0, 3.0, 7.5, 20.0] {
                let (res, scale) = recurrence_residual_parts(&m, k, y).unwrap();
                assert!(
                    res <= 1e-10 * scale.max(1e-300),
                    "k={k} y={y}: {res} vs {scale}"
                );
            }
        }
    }

    #[test]
    fn weight_examples() {
        let m = model(3, "1/3");
        assert!((binomial_weight(&m, 0.0).unwrap() - (2.0f64 / 3.0).powi(3)).abs() < 1e-15);
        let total = (0..=3)
            .map(|j| binomial_weight_exact(&m, j).unwrap())
            .fold(Rational::zero(), |a, b| a + b);
        assert_eq!(total, Rational::one());
        assert!((binomial_weight(&model(2, "1/2"), 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(binomial_weight(&m, -0.5).is_err());
        assert!(binomial_weight(&m, 3.5).is_err());
        // the Gamma form agrees with the integer form as y approaches a grid point
        let near = binomial_weight(&m, 1.0 + 1e-7).unwrap();
        assert!((near - binomial_weight(&m, 1.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn orthogonality_examples() {
        let m = model(2, "1/2");
        assert_eq!(poly_orthogonality_sum_exact(&m, 1, 1).unwrap(), r(1, 2));
        let m = model(4, "1/3");
        assert_eq!(poly_orthogonality_sum_exact(&m, 2, 2).unwrap(), r(24, 81));
        assert!(poly_orthogonality_sum_exact(&m, 1, 3).unwrap().is_zero());
        assert!((poly_orthogonality_sum(&m, 2, 2).unwrap() - 24.0 / 81.0).abs() < 1e-15);
    }

    #[test]
    fn function_examples() {
        let m = model(5, "2/3");
        for j in 0..=5 {
            let x = m.grid_point(j);
            let w = binomial_weight_exact(&m, j).unwrap().to_f64();
            assert!((kravchuk_function(&m, 0, x).unwrap() - w.sqrt()).abs() < 1e-15);
        }
        assert_eq!(kravchuk_function(&model(2, "1/2"), 1, 0.0).unwrap(), 0.0);
        assert!(kravchuk_function(&m, 0, m.x_max() + 0.1).is_err());
        let g = function_gram(&model(12, "1/3"));
        for a in 0..13 {
            for b in 0..13 {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g[(a, b)] - want).abs() < 1e-13);
            }
        }
        // off-grid values interpolate the grid values
        let near = kravchuk_function(&m, 2, m.grid_point(3) + 1e-8).unwrap();
        assert!((near - kravchuk_function(&m, 2, m.grid_point(3)).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn matrix_examples() {
        let m1 = oscillator_matrix(&model(1, "1/2"));
        let ev = m1.eigenvalues();
        assert!((ev[0] - 0.5).abs() < 1e-14 && (ev[1] - 1.5).abs() < 1e-14);
        let m = model(7, "1/3");
        let h = oscillator_matrix(&m);
        let d = h.to_dense();
        assert_eq!(d, d.transpose());
        assert!(h.off().iter().all(|&o| o <= 0.0));
        for k in 0..=7 {
            assert!(eigen_residual(&m, k).unwrap() < 1e-12);
            assert!(eigen_residual_exact(&m, k).unwrap().is_zero());
        }
        assert!(eigen_residual(&model(1, "1/2"), 0).unwrap() < 1e-12);
    }

    #[test]
    fn hermite_limit_examples() {
        let half = r(1, 2);
        let e: Vec<f64> = [16, 64, 256]
            .iter()
            .map(|&n| hermite_limit_error(0, 0.0, n, &half).unwrap())
            .collect();
        assert!(e[0] > e[1] && e[1] > e[2], "{e:?}");
        for k in 0..=3 {
            for i in -4..=4 {
                let xi = 0.5 * i as f64;
                assert!(hermite_limit_error(k, xi, 256, &half).unwrap() < 0.02);
            }
        }
        let sup = |k: u32| {
            (-8..=8)
                .map(|i| hermite_limit_error(k, 0.25 * i as f64, 64, &half).unwrap())
                .fold(0.0, f64::max)
        };
        assert!(sup(3) > sup(0));
        assert!(hermite_limit_error(0, 100.0, 16, &half).is_err());
    }

    #[test]
    fn double_commutator_convention() {
        assert!(
            double_commutator_residual_exact(2, CommutatorVariable::Grid)
                .unwrap()
                .is_zero()
        );
        assert!(
            !double_commutator_residual_exact(2, CommutatorVariable::Index)
                .unwrap()
                .is_zero()
        );
        for n in [2, 4] {
            assert!(double_commutator_residual(n).unwrap() < 1e-10);
        }
        let model = half_model(4).unwrap();
        let doubled: Vec<f64> = model.grid().iter().map(|x| 2.0 * x).collect();
        assert!(double_commutator_residual_for(4, &doubled).unwrap() < 1e-10);
    }
}
