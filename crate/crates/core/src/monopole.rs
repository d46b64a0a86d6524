//! Monopole harmonics: an orthonormal basis of the `m`-th spherical Landau
//! level for a Dirac monopole of charge `2ν`, in the stereographic chart.

use std::fmt;
use std::ops::RangeInclusive;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{check_index, Error, Result};
use crate::quadrature::QuadratureRule;
use crate::specfun::{
    hyp2f1_terminating, jacobi, jacobi_reduction_coefficient, ln_factorial, powi, Scalar,
};

/// Inputs with `|z|` above this are rejected instead of moved to the `1/z` chart.
pub const CHART_RADIUS: f64 = 1e8;

/// Default finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Field strength `2ν >= 1` and Landau level index `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinLevel {
    two_nu: u32,
    m: u32,
}

impl SpinLevel {
    pub fn new(two_nu: u32, m: u32) -> Result<Self> {
        if two_nu == 0 {
            return Err(Error::Parameter("2ν must be at least 1".into()));
        }
        Ok(Self { two_nu, m })
    }

    pub fn two_nu(&self) -> u32 {
        self.two_nu
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn nu(&self) -> f64 {
        self.two_nu as f64 / 2.0
    }

    /// `N = 2ν + 2m`
    pub fn oscillator_n(&self) -> u32 {
        self.two_nu + 2 * self.m
    }

    /// `2ν + 2m + 1`
    pub fn dim(&self) -> usize {
        self.oscillator_n() as usize + 1
    }

    pub fn j_min(&self) -> i64 {
        -(self.m as i64)
    }

    pub fn j_max(&self) -> i64 {
        (self.two_nu + self.m) as i64
    }

    pub fn indices(&self) -> RangeInclusive<i64> {
        self.j_min()..=self.j_max()
    }

    pub fn check_j(&self, j: i64) -> Result<()> {
        check_index(j, self.j_min(), self.j_max())
    }

    /// Position of `j` in a length-`dim` vector, i.e. `k = m + j`.
    pub fn offset(&self, j: i64) -> usize {
        (j + self.m as i64) as usize
    }
}

impl fmt::Display for SpinLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(2nu={}, m={})", self.two_nu, self.m)
    }
}

/// A point `z = x + iy` of the finite chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint(Complex64);

impl PlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!("non-finite chart coordinate {z}")));
        }
        if z.norm() > CHART_RADIUS {
            return Err(Error::Domain(format!(
                "|z| = {:e} is beyond the chart radius {CHART_RADIUS:e}",
                z.norm()
            )));
        }
        Ok(Self(z))
    }

    pub(crate) fn from_complex_unchecked(z: Complex64) -> Self {
        Self(z)
    }

    pub fn origin() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    /// `z z̄`
    pub fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }
}

impl TryFrom<Complex64> for PlanePoint {
    type Error = Error;

    fn try_from(z: Complex64) -> Result<Self> {
        Self::from_complex(z)
    }
}

/// `λ = (2m+1)ν + m(m+1)`
pub fn landau_level(level: SpinLevel) -> f64 {
    let m = level.m as f64;
    (2.0 * m + 1.0) * level.nu() + m * (m + 1.0)
}

fn ln_norm_const(level: SpinLevel, j: i64) -> f64 {
    let (tn, m) = (level.two_nu as i64, level.m as i64);
    0.5 * ((level.dim() as f64).ln() + ln_factorial((tn + m) as u64) + ln_factorial(m as u64)
        - ln_factorial((m + j) as u64)
        - ln_factorial((tn + m - j) as u64))
}

/// `γ_j = sqrt((2ν+2m+1) (2ν+m)! m! / ((m+j)! (2ν+m-j)!))`
pub fn basis_norm_const(level: SpinLevel, j: i64) -> Result<f64> {
    level.check_j(j)?;
    Ok(ln_norm_const(level, j).exp())
}

/// `γ_j²` as an exact rational.
pub fn basis_norm_const_sq_exact<T: Scalar>(level: SpinLevel, j: i64) -> Result<T> {
    level.check_j(j)?;
    let (tn, m) = (level.two_nu as i64, level.m as i64);
    let fact = |n: i64| (1..=n).fold(T::one(), |acc, i| acc * T::from_int(i));
    Ok(T::from_int(level.dim() as i64) * fact(tn + m) * fact(m) / (fact(m + j) * fact(tn + m - j)))
}

/// The polynomial part of a harmonic on the real axis:
/// `Φ̃_j(x) = γ_j (1+x²)^{-ν} part_j(x)` for real `x`.
///
/// For `j >= 0` this is `x^j P_m^{(j, 2ν-j)}(t)` with `t = (1-x²)/(1+x²)`;
/// for `j = -ℓ < 0` the `x^{-ℓ}` pole is cancelled against the `((t-1)/2)^ℓ`
/// factor of the Jacobi reduction, leaving
/// `R (-1)^ℓ x^ℓ (1+x²)^{-ℓ} P_{m-ℓ}^{(ℓ, 2ν+ℓ)}(t)`.
pub fn harmonic_real_part<T: Scalar>(level: SpinLevel, j: i64, x: &T) -> Result<T> {
    level.check_j(j)?;
    let one_plus = T::one() + x.clone() * x.clone();
    let t = (T::one() - x.clone() * x.clone()) / one_plus.clone();
    let two_nu = level.two_nu as i64;
    if j >= 0 {
        let p = jacobi(level.m, &T::from_int(j), &T::from_int(two_nu - j), &t);
        return Ok(powi(x, j) * p);
    }
    let ell = (-j) as u32;
    let beta = T::from_int(two_nu + ell as i64);
    let coeff = jacobi_reduction_coefficient::<T>(level.m, ell, &beta);
    let p = jacobi(level.m - ell, &T::from_int(ell as i64), &beta, &t);
    let sign = if ell.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    Ok(coeff * sign * powi(x, ell as i64) * powi(&one_plus, -(ell as i64)) * p)
}

struct Prepared {
    /// `ln |z|`, `-inf` at the origin
    ln_r: f64,
    /// `arg z`
    theta: f64,
    ln_rho: f64,
    t: f64,
}

impl Prepared {
    fn new(z: Complex64) -> Self {
        let u = z.norm_sqr();
        Self {
            ln_r: z.norm().ln(),
            theta: z.arg(),
            ln_rho: u.ln_1p(),
            t: (1.0 - u) / (1.0 + u),
        }
    }

    /// `|z|^a ρ^{-b}` with the convention `0^0 = 1`.
    fn magnitude(&self, a: u32, b: f64) -> f64 {
        let ln_ra = if a == 0 { 0.0 } else { a as f64 * self.ln_r };
        (ln_ra - b * self.ln_rho).exp()
    }
}

fn harmonic_at(level: SpinLevel, j: i64, pz: &Prepared) -> Complex64 {
    let nu = level.nu();
    let two_nu = level.two_nu as f64;
    let ln_gamma = ln_norm_const(level, j);
    if j >= 0 {
        let p = jacobi(level.m, &(j as f64), &(two_nu - j as f64), &pz.t);
        let mag = pz.magnitude(j as u32, nu) * ln_gamma.exp();
        return Complex64::from_polar(mag, j as f64 * pz.theta) * p;
    }
    let ell = (-j) as u32;
    let beta = two_nu + ell as f64;
    let coeff = jacobi_reduction_coefficient::<f64>(level.m, ell, &beta);
    let p = jacobi(level.m - ell, &(ell as f64), &beta, &pz.t);
    let sign = if ell.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mag = pz.magnitude(ell, nu + ell as f64) * ln_gamma.exp();
    // z̄^ℓ
    Complex64::from_polar(mag, -(ell as f64) * pz.theta) * (sign * coeff * p)
}

/// `Φ̃_j(z) = γ_j (1+zz̄)^{-ν} z^j P_m^{(j, 2ν-j)}((1-zz̄)/(1+zz̄))`.
///
/// Finite at `z = 0` for every `j`, including `j < 0`.
pub fn monopole_harmonic(level: SpinLevel, j: i64, z: PlanePoint) -> Result<Complex64> {
    level.check_j(j)?;
    Ok(harmonic_at(level, j, &Prepared::new(z.z())))
}

/// All `Φ̃_j(z)`, `j = -m ..= 2ν+m`, in index order.
pub fn harmonic_values(level: SpinLevel, z: PlanePoint) -> Vec<Complex64> {
    let pz = Prepared::new(z.z());
    level
        .indices()
        .map(|j| harmonic_at(level, j, &pz))
        .collect()
}

/// `Q_j(u) = (m+j)!/j! · 2F1(-m, 2ν+m+1; j+1; u)`, `j >= 0`.
pub fn q_polynomial<T: Scalar>(level: SpinLevel, j: u32, u: &T) -> T {
    let m = level.m;
    let ratio = (1..=m).fold(T::one(), |acc, i| acc * T::from_int((j + i) as i64));
    let b = T::from_int((level.two_nu + m + 1) as i64);
    let c = T::from_int(j as i64 + 1);
    // c = j + 1 >= 1 never meets a vanishing denominator
    ratio * hyp2f1_terminating(m, &b, &c, u).expect("positive lower parameter")
}

/// `Φ_j(z) = (1+zz̄)^{-ν} z^j Q_j(zz̄/(1+zz̄))`, the unnormalized form for `j >= 0`.
pub fn harmonic_unnormalized(level: SpinLevel, j: u32, z: PlanePoint) -> Result<Complex64> {
    level.check_j(j as i64)?;
    let pz = Prepared::new(z.z());
    let u = z.norm_sqr() / (1.0 + z.norm_sqr());
    let q = q_polynomial(level, j, &u);
    Ok(Complex64::from_polar(pz.magnitude(j, level.nu()), j as f64 * pz.theta) * q)
}

fn check_step(h: f64) -> Result<()> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Step(h));
    }
    Ok(())
}

/// `H_{2ν} f` at `z` by central differences of step `h` on the real chart:
///
/// `H = -(1+zz̄)² ∂_z∂_z̄ - ν z (1+zz̄) ∂_z + ν z̄ (1+zz̄) ∂_z̄ + ν²(1+zz̄) - ν²`,
///
/// with the five-point Laplacian for `4 ∂_z∂_z̄` and centred first differences.
pub fn apply_monopole_hamiltonian_fd<F>(
    two_nu: u32,
    f: F,
    z: PlanePoint,
    h: f64,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    check_step(h)?;
    let z0 = z.z();
    if z0.norm() + 2.0 * h > CHART_RADIUS {
        return Err(Error::Domain(format!(
            "z = {z0} is within 2h of the chart radius"
        )));
    }
    let nu = two_nu as f64 / 2.0;
    let i = Complex64::i();
    let f0 = f(z0);
    let fe = f(z0 + h);
    let fw = f(z0 - h);
    let fn_ = f(z0 + i * h);
    let fs = f(z0 - i * h);
    let fx = (fe - fw) / (2.0 * h);
    let fy = (fn_ - fs) / (2.0 * h);
    let lap = (fe + fw + fn_ + fs - 4.0 * f0) / (h * h);
    let dz = (fx - i * fy) / 2.0;
    let dzbar = (fx + i * fy) / 2.0;
    let rho = 1.0 + z0.norm_sqr();
    Ok(-rho * rho * lap / 4.0 - nu * z0 * rho * dz
        + nu * z0.conj() * rho * dzbar
        + nu * nu * rho * f0
        - nu * nu * f0)
}

/// Finite-difference `H_{2ν} Φ̃_j` at `z`.
pub fn apply_hamiltonian_fd(level: SpinLevel, j: i64, z: PlanePoint, h: f64) -> Result<Complex64> {
    level.check_j(j)?;
    apply_monopole_hamiltonian_fd(
        level.two_nu,
        |w| harmonic_at(level, j, &Prepared::new(w)),
        z,
        h,
    )
}

/// `max_{j,z} |H Φ̃_j(z) - λ Φ̃_j(z)|` over the given points.
pub fn eigen_fd_residual(level: SpinLevel, points: &[PlanePoint], h: f64) -> Result<f64> {
    let lambda = landau_level(level);
    let mut worst = 0.0f64;
    for &z in points {
        for j in level.indices() {
            let hf = apply_hamiltonian_fd(level, j, z, h)?;
            let f = monopole_harmonic(level, j, z)?;
            worst = worst.max((hf - lambda * f).norm());
        }
    }
    Ok(worst)
}

/// Smallest observed order `log2(e(h_i) / e(h_{i+1}))` over consecutive halvings.
pub fn fd_observed_order(level: SpinLevel, points: &[PlanePoint], steps: &[f64]) -> Result<f64> {
    let errs = steps
        .iter()
        .map(|&h| eigen_fd_residual(level, points, h))
        .collect::<Result<Vec<_>>>()?;
    let mut order = f64::INFINITY;
    for (w, hs) in errs.windows(2).zip(steps.windows(2)) {
        order = order.min((w[0] / w[1]).ln() / (hs[0] / hs[1]).ln());
    }
    Ok(order)
}

/// `G_jk = ∫ conj(Φ̃_j) Φ̃_k (1+zz̄)^{-2} dη` by the product rule, indexed by `m + j`.
pub fn basis_gram(level: SpinLevel, quad: &QuadratureRule) -> Result<DMatrix<Complex64>> {
    quad.require_level(level)?;
    let dim = level.dim();
    let rows = quad.map_nodes(|node| {
        let v = harmonic_values(level, PlanePoint::from_complex_unchecked(node.z));
        (node.weight, v)
    });
    let mut g = DMatrix::<Complex64>::zeros(dim, dim);
    for (w, v) in &rows {
        for a in 0..dim {
            let ca = v[a].conj() * *w;
            for b in 0..dim {
                g[(a, b)] += ca * v[b];
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::Rational;
    use approx::assert_relative_eq;

    fn lvl(two_nu: u32, m: u32) -> SpinLevel {
        SpinLevel::new(two_nu, m).unwrap()
    }

    #[test]
    fn landau_levels() {
        assert_eq!(landau_level(lvl(1, 0)), 0.5);
        assert_eq!(landau_level(lvl(2, 2)), 11.0);
        assert_eq!(landau_level(lvl(3, 1)), 6.5);
    }

    #[test]
    fn level_validation() {
        assert!(SpinLevel::new(0, 1).is_err());
        let l = lvl(2, 1);
        assert_eq!(l.dim(), 5);
        assert_eq!(l.oscillator_n(), 4);
        assert_eq!(l.indices().collect::<Vec<_>>(), vec![-1, 0, 1, 2, 3]);
        assert!(PlanePoint::new(f64::NAN, 0.0).is_err());
        assert!(PlanePoint::new(2e8, 0.0).is_err());
    }

    #[test]
    fn norm_constants() {
        assert_relative_eq!(
            basis_norm_const(lvl(1, 0), 0).unwrap(),
            2f64.sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            basis_norm_const(lvl(2, 1), -1).unwrap(),
            1.25f64.sqrt(),
            max_relative = 1e-14
        );
        for two_nu in 1..6u32 {
            for j in 0..=two_nu as i64 {
                let binom = crate::specfun::binomial(two_nu as u64, j as u64);
                assert_relative_eq!(
                    basis_norm_const(lvl(two_nu, 0), j).unwrap(),
                    ((two_nu as f64 + 1.0) * binom).sqrt(),
                    max_relative = 1e-13
                );
            }
        }
        assert!(matches!(
            basis_norm_const(lvl(2, 1), -2),
            Err(Error::Index { .. })
        ));
        assert!(basis_norm_const(lvl(2, 1), 4).is_err());
    }

    #[test]
    fn harmonic_values_at_origin_and_m0() {
        let o = PlanePoint::origin();
        assert_relative_eq!(
            monopole_harmonic(lvl(2, 0), 0, o).unwrap().re,
            3f64.sqrt(),
            max_relative = 1e-14
        );
        assert_eq!(
            monopole_harmonic(lvl(3, 1), 2, o).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        for j in -2..0 {
            let v = monopole_harmonic(lvl(2, 2), j, o).unwrap();
            assert!(v.re.is_finite() && v.im.is_finite());
        }
        let z = PlanePoint::new(0.4, -0.7).unwrap();
        for j in 0..=3i64 {
            let g = basis_norm_const(lvl(3, 0), j).unwrap();
            let expect = g * z.z().powi(j as i32) * (1.0 + z.norm_sqr()).powf(-1.5);
            let got = monopole_harmonic(lvl(3, 0), j, z).unwrap();
            assert!((got - expect).norm() < 1e-14, "{got} vs {expect}");
        }
        assert!(monopole_harmonic(lvl(1, 0), 2, z).is_err());
    }

    #[test]
    fn real_axis_part_matches_complex_evaluation() {
        let level = lvl(3, 2);
        for &x in &[-1.7, -0.3, 0.0, 0.25, 2.5] {
            let p = PlanePoint::new(x, 0.0).unwrap();
            for j in level.indices() {
                let part: f64 = harmonic_real_part(level, j, &x).unwrap();
                let expect =
                    basis_norm_const(level, j).unwrap() * (1.0 + x * x).powf(-level.nu()) * part;
                let got = monopole_harmonic(level, j, p).unwrap();
                assert!(
                    (got - expect).norm() < 1e-12 * (1.0 + expect.abs()),
                    "j={j} x={x}"
                );
            }
        }
    }

    #[test]
    fn q_polynomial_examples() {
        let half = Rational::from_ratio(1, 2);
        assert_eq!(q_polynomial(lvl(2, 1), 1, &half), Rational::from_int(0));
        assert_eq!(q_polynomial(lvl(4, 0), 3, &0.3f64), 1.0);
        let zero = Rational::from_int(0);
        assert_eq!(q_polynomial(lvl(2, 3), 2, &zero), Rational::from_int(60));
    }

    #[test]
    fn hamiltonian_fd_examples() {
        for &(two_nu, m, j, re, im) in &[(1u32, 0u32, 0i64, 0.3, 0.2), (2, 1, 0, 0.5, 0.0)] {
            let level = lvl(two_nu, m);
            let z = PlanePoint::new(re, im).unwrap();
            let hf = apply_hamiltonian_fd(level, j, z, DEFAULT_FD_STEP).unwrap();
            let expect = landau_level(level) * monopole_harmonic(level, j, z).unwrap();
            assert!((hf - expect).norm() < 1e-5, "{hf} vs {expect}");
        }
        let zero = apply_monopole_hamiltonian_fd(
            3,
            |_| Complex64::new(0.0, 0.0),
            PlanePoint::origin(),
            1e-3,
        )
        .unwrap();
        assert_eq!(zero, Complex64::new(0.0, 0.0));
        assert!(matches!(
            apply_hamiltonian_fd(lvl(1, 0), 0, PlanePoint::origin(), 0.0),
            Err(Error::Step(_))
        ));
        assert!(apply_hamiltonian_fd(lvl(1, 0), 0, PlanePoint::origin(), -1e-3).is_err());
    }

    #[test]
    fn gram_small_level() {
        let level = lvl(1, 0);
        let g = basis_gram(level, &QuadratureRule::for_level(level)).unwrap();
        assert_eq!(g.nrows(), 2);
        for a in 0..2 {
            for b in 0..2 {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g[(a, b)] - want).norm() < 1e-12);
            }
        }
        let tiny = QuadratureRule::new(2, 2).unwrap();
        assert!(matches!(
            basis_gram(lvl(2, 1), &tiny),
            Err(Error::QuadratureUndersized(_))
        ));
    }
}
