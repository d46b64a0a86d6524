//! Generalized spin coherent states `|z, ν, m⟩ = 𝒩^{-1/2} Σ_j conj(Φ̃_j(z)) |j, ν⟩`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_index, Error, Result};
use crate::monopole::{
    basis_norm_const_sq_exact, harmonic_real_part, harmonic_values, PlanePoint, SpinLevel,
};
use crate::quadrature::QuadratureRule;
use crate::specfun::{hyp2f1_terminating, ln_binomial, ln_factorial, meijer_g1111, powi, Scalar};

/// Largest tolerated negative radicand in [`cs_distance`].
pub const DISTANCE_CLAMP: f64 = 1e-12;

/// Amplitudes over `|j, ν⟩`, `j = -m ..= 2ν+m`, stored at offset `m + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    level: SpinLevel,
    coeffs: Vec<Complex64>,
}

impl StateVector {
    pub fn new(level: SpinLevel, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != level.dim() {
            return Err(Error::Parameter(format!(
                "state for {level} needs {} amplitudes, got {}",
                level.dim(),
                coeffs.len()
            )));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::Numeric("non-finite amplitude".into()));
        }
        Ok(Self { level, coeffs })
    }

    /// The number state `|j, ν⟩`.
    pub fn basis(level: SpinLevel, j: i64) -> Result<Self> {
        level.check_j(j)?;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); level.dim()];
        coeffs[level.offset(j)] = Complex64::new(1.0, 0.0);
        Ok(Self { level, coeffs })
    }

    pub fn level(&self) -> SpinLevel {
        self.level
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn amplitude(&self, j: i64) -> Result<Complex64> {
        self.level.check_j(j)?;
        Ok(self.coeffs[self.level.offset(j)])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::SingularInput(
                "cannot normalize the zero vector".into(),
            ));
        }
        Ok(Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c / n).collect(),
        })
    }

    /// `⟨self | other⟩`
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.level != other.level {
            return Err(Error::Parameter(format!(
                "levels differ: {} vs {}",
                self.level, other.level
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// Normalized state with amplitudes drawn uniformly from the square
/// `[-1, 1] + i[-1, 1]` by ChaCha8 seeded with `seed`.
pub fn seeded_random_state(level: SpinLevel, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..level.dim())
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector { level, coeffs }
        .normalized()
        .expect("a random vector is nonzero")
}

/// Standard spin coherent state (`m = 0`): amplitude
/// `(1+zz̄)^{-ν} sqrt(C(2ν, k)) z^k` on `|k, ν⟩`.
pub fn scs_coefficients(level: SpinLevel, z: PlanePoint) -> Result<StateVector> {
    if level.m() != 0 {
        return Err(Error::Parameter(format!("SCS needs m = 0, got {level}")));
    }
    let n = level.two_nu() as u64;
    let (r, theta) = (z.z().norm(), z.z().arg());
    let ln_rho = z.norm_sqr().ln_1p();
    let coeffs = (0..=n)
        .map(|k| {
            let ln_rk = if k == 0 { 0.0 } else { k as f64 * r.ln() };
            let mag = (0.5 * ln_binomial(n, k) + ln_rk - level.nu() * ln_rho).exp();
            Complex64::from_polar(mag, k as f64 * theta)
        })
        .collect();
    StateVector::new(level, coeffs)
}

/// Exact `|⟨k, ν | x, ν, 0⟩|² = C(2ν, k) x^{2k} / (1+x²)^{2ν}` for real `x`.
pub fn scs_probabilities_exact<T: Scalar>(two_nu: u32, x: &T) -> Vec<T> {
    let x2 = x.clone() * x.clone();
    let denom = powi(&(T::one() + x2.clone()), two_nu as i64);
    (0..=two_nu)
        .map(|k| T::binom(&T::from_int(two_nu as i64), k) * powi(&x2, k as i64) / denom.clone())
        .collect()
}

/// `𝒩 = 2ν + 2m + 1`
pub fn normalization_factor(level: SpinLevel) -> f64 {
    level.dim() as f64
}

/// `|z, ν, m⟩`: amplitude `𝒩^{-1/2} conj(Φ̃_j(z))` on `|j, ν⟩`.
pub fn gscs_coefficients(level: SpinLevel, z: PlanePoint) -> StateVector {
    let s = normalization_factor(level).sqrt();
    let coeffs = harmonic_values(level, z)
        .into_iter()
        .map(|v| v.conj() / s)
        .collect();
    StateVector { level, coeffs }
}

/// `⟨z | w⟩ = 𝒩^{-1} Σ_j Φ̃_j(z) conj(Φ̃_j(w))`
pub fn overlap_direct(level: SpinLevel, z: PlanePoint, w: PlanePoint) -> Complex64 {
    let a = harmonic_values(level, z);
    let b = harmonic_values(level, w);
    let s: Complex64 = a.iter().zip(&b).map(|(x, y)| x * y.conj()).sum();
    s / normalization_factor(level)
}

/// Closed form of [`overlap_direct`]:
/// `𝒩^{-1} (2ν+2m+1) (1+zw̄)^{2ν} ((1+zz̄)(1+ww̄))^{-ν} 2F1(-m, m+2ν+1; 1; |z-w|² / ((1+zz̄)(1+ww̄)))`.
pub fn overlap_closed(level: SpinLevel, z: PlanePoint, w: PlanePoint) -> Complex64 {
    overlap_closed_scaled(level, z, w, 1.0)
}

/// [`overlap_closed`] with the `(2ν+2m+1)` prefactor multiplied by `scale`.
pub fn overlap_closed_scaled(
    level: SpinLevel,
    z: PlanePoint,
    w: PlanePoint,
    scale: f64,
) -> Complex64 {
    let (z, w) = (z.z(), w.z());
    let rz = 1.0 + z.norm_sqr();
    let rw = 1.0 + w.norm_sqr();
    let arg = (z - w).norm_sqr() / (rz * rw);
    let b = (level.m() + level.two_nu() + 1) as f64;
    let f = hyp2f1_terminating(level.m(), &b, &1.0, &arg).expect("positive lower parameter");
    // (1+zw̄)/sqrt(ρ_z ρ_w) has modulus <= 1, so the power cannot overflow
    let base = (1.0 + z * w.conj()) / (rz * rw).sqrt();
    let pref = scale * level.dim() as f64 / normalization_factor(level);
    base.powi(level.two_nu() as i32) * f * pref
}

/// Both sides of the addition formula on the real axis, with the common
/// factor `((1+x²)(1+y²))^{-ν}` removed so the result is rational:
/// `(Σ_j γ_j² part_j(x) part_j(y), (2ν+2m+1)(1+xy)^{2ν} 2F1(…))`.
pub fn overlap_kernel_exact<T: Scalar>(level: SpinLevel, x: &T, y: &T) -> Result<(T, T)> {
    let mut direct = T::zero();
    for j in level.indices() {
        let g2: T = basis_norm_const_sq_exact(level, j)?;
        direct = direct + g2 * harmonic_real_part(level, j, x)? * harmonic_real_part(level, j, y)?;
    }
    let rx = T::one() + x.clone() * x.clone();
    let ry = T::one() + y.clone() * y.clone();
    let d = x.clone() - y.clone();
    let arg = d.clone() * d / (rx * ry);
    let b = T::from_int((level.m() + level.two_nu() + 1) as i64);
    let f = hyp2f1_terminating(level.m(), &b, &T::one(), &arg)?;
    let closed = T::from_int(level.dim() as i64)
        * powi(&(T::one() + x.clone() * y.clone()), level.two_nu() as i64)
        * f;
    Ok((direct, closed))
}

/// `ρ(z, w) = sqrt(2 (1 - Re⟨z|w⟩))` from the closed-form overlap.
pub fn cs_distance(level: SpinLevel, z: PlanePoint, w: PlanePoint) -> Result<f64> {
    let rad = 2.0 * (1.0 - overlap_closed(level, z, w).re);
    if rad < -DISTANCE_CLAMP {
        return Err(Error::Numeric(format!(
            "negative distance radicand {rad:e}"
        )));
    }
    Ok(rad.max(0.0).sqrt())
}

/// `M_jk = ∫ ⟨j|z⟩⟨z|k⟩ dμ(z)` with
/// `dμ = scale · (2ν+2m+1) G^{11}_{11}(zz̄ | -1; 0) dη`, indexed by `m + j`.
pub fn identity_resolution_matrix(
    level: SpinLevel,
    quad: &QuadratureRule,
    measure_scale: f64,
) -> Result<DMatrix<Complex64>> {
    quad.require_level(level)?;
    let dim = level.dim();
    let pref = measure_scale * level.dim() as f64;
    let rows = quad.map_nodes(|node| -> Result<(f64, StateVector)> {
        let g = meijer_g1111(node.u, -1.0, 0.0)?;
        let state = gscs_coefficients(level, PlanePoint::from_complex_unchecked(node.z));
        Ok((pref * g * node.lebesgue_weight(), state))
    });
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for row in rows {
        let (w, state) = row?;
        let a = state.coeffs();
        for j in 0..dim {
            let aj = a[j] * w;
            for k in 0..dim {
                m[(j, k)] += aj * a[k].conj();
            }
        }
    }
    Ok(m)
}

/// `max_jk |M_jk - δ_jk|` for [`identity_resolution_matrix`].
pub fn identity_resolution_residual(level: SpinLevel, quad: &QuadratureRule) -> Result<f64> {
    identity_resolution_residual_scaled(level, quad, 1.0)
}

pub fn identity_resolution_residual_scaled(
    level: SpinLevel,
    quad: &QuadratureRule,
    measure_scale: f64,
) -> Result<f64> {
    let m = identity_resolution_matrix(level, quad, measure_scale)?;
    Ok(max_identity_deviation(&m))
}

pub(crate) fn max_identity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..m.nrows() {
        for k in 0..m.ncols() {
            let id = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((m[(j, k)] - id).norm());
        }
    }
    worst
}

/// Deviation of the `m = 0` state at `z = ζ/√N`, `N = 2ν`, from the Glauber
/// state `e^{-|ζ|²/2} ζ^n / √n!`, maximized over `n <= min(N, 20)`.
///
/// The number label is `n = k`, so `ζ = 0` maps vacuum to vacuum.
pub fn glauber_contraction_error(zeta: Complex64, two_nu: u32) -> Result<f64> {
    let n_big = two_nu as f64;
    if two_nu == 0 {
        return Err(Error::Parameter("2ν must be at least 1".into()));
    }
    if !(zeta.norm_sqr() < n_big) {
        return Err(Error::Domain(format!(
            "|ζ|² = {} must be below N = {two_nu}",
            zeta.norm_sqr()
        )));
    }
    let level = SpinLevel::new(two_nu, 0)?;
    let z = PlanePoint::from_complex(zeta / n_big.sqrt())?;
    let scs = scs_coefficients(level, z)?;
    let (r, theta) = (zeta.norm(), zeta.arg());
    let mut worst = 0.0f64;
    for n in 0..=two_nu.min(20) {
        let ln_rn = if n == 0 { 0.0 } else { n as f64 * r.ln() };
        let mag = (-0.5 * zeta.norm_sqr() + ln_rn - 0.5 * ln_factorial(n as u64)).exp();
        let glauber = Complex64::from_polar(mag, n as f64 * theta);
        worst = worst.max((scs.coeffs()[n as usize] - glauber).norm());
    }
    Ok(worst)
}

/// `⟨z, ν, m | ψ⟩ = 𝒩^{-1/2} Σ_j Φ̃_j(z) ψ_j`
pub fn coherent_projection(state: &StateVector, z: PlanePoint) -> Complex64 {
    let level = state.level();
    let cs = gscs_coefficients(level, z);
    cs.coeffs()
        .iter()
        .zip(state.coeffs())
        .map(|(a, b)| a.conj() * b)
        .sum()
}

/// Husimi density `|⟨z, ν, m | ψ⟩|²`.
pub fn husimi_density(state: &StateVector, z: PlanePoint) -> f64 {
    coherent_projection(state, z).norm_sqr()
}

/// The `j` index matching offset `k` in a state of `level`.
pub fn index_of_offset(level: SpinLevel, k: usize) -> Result<i64> {
    check_index(k as i64, 0, level.dim() as i64 - 1)?;
    Ok(k as i64 + level.j_min())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monopole::monopole_harmonic;
    use crate::specfun::{jacobi_at_one, Rational};
    use approx::assert_relative_eq;

    fn lvl(two_nu: u32, m: u32) -> SpinLevel {
        SpinLevel::new(two_nu, m).unwrap()
    }

    fn pt(re: f64, im: f64) -> PlanePoint {
        PlanePoint::new(re, im).unwrap()
    }

    #[test]
    fn scs_examples() {
        let s = scs_coefficients(lvl(3, 0), PlanePoint::origin()).unwrap();
        assert_eq!(s.coeffs()[0], Complex64::new(1.0, 0.0));
        assert!(s.coeffs()[1..].iter().all(|c| c.norm() == 0.0));
        assert!(scs_coefficients(lvl(3, 1), PlanePoint::origin()).is_err());

        let z = pt(0.6, -0.3);
        let s = scs_coefficients(lvl(4, 0), z).unwrap();
        let u = z.norm_sqr() / (1.0 + z.norm_sqr());
        for (k, p) in s.probabilities().iter().enumerate() {
            let binom = crate::specfun::binomial(4, k as u64)
                * u.powi(k as i32)
                * (1.0 - u).powi(4 - k as i32);
            assert_relative_eq!(*p, binom, max_relative = 1e-13);
        }
        let x = Rational::from_ratio(2, 3);
        let total = scs_probabilities_exact(5, &x)
            .into_iter()
            .fold(Rational::from_int(0), |a, b| a + b);
        assert_eq!(total, Rational::from_int(1));
    }

    #[test]
    fn gscs_examples() {
        let z = pt(0.7, -0.4);
        let s = gscs_coefficients(lvl(3, 2), z);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);

        let m0 = gscs_coefficients(lvl(3, 0), z);
        let scs = scs_coefficients(lvl(3, 0), z).unwrap();
        for (a, b) in m0.coeffs().iter().zip(scs.coeffs()) {
            assert_relative_eq!(a.norm(), b.norm(), max_relative = 1e-13);
        }
        let at0 = gscs_coefficients(lvl(2, 0), PlanePoint::origin());
        assert_relative_eq!(at0.coeffs()[0].norm(), 1.0, max_relative = 1e-14);
        assert!(at0.coeffs()[1..].iter().all(|c| c.norm() == 0.0));
        let at0 = gscs_coefficients(lvl(2, 2), PlanePoint::origin());
        for j in 1..=4i64 {
            assert_eq!(at0.amplitude(j).unwrap().norm(), 0.0);
        }
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalization_factor(lvl(1, 0)), 2.0);
        assert_eq!(normalization_factor(lvl(2, 3)), 9.0);
        let l = lvl(4, 2);
        assert_eq!(
            normalization_factor(l),
            l.dim() as f64 * jacobi_at_one::<f64>(2, &0.0)
        );
    }

    #[test]
    fn overlap_examples() {
        let l = lvl(2, 1);
        let (z, w) = (pt(0.3, 0.8), pt(-0.5, 0.1));
        assert!((overlap_direct(l, z, z) - 1.0).norm() < 1e-12);
        assert!((overlap_closed(l, z, z) - 1.0).norm() < 1e-12);
        assert!((overlap_direct(l, w, z) - overlap_direct(l, z, w).conj()).norm() < 1e-14);
        assert!((overlap_direct(l, z, w) - overlap_closed(l, z, w)).norm() < 1e-13);

        let m0 = lvl(3, 0);
        let expect = (1.0 + z.z() * w.z().conj()).powi(3)
            / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).powf(1.5);
        assert!((overlap_closed(m0, z, w) - expect).norm() < 1e-14);

        let (x, y) = (Rational::from_ratio(1, 2), Rational::from_ratio(1, 3));
        let (d, c) = overlap_kernel_exact(l, &x, &y).unwrap();
        assert_eq!(d, c);
        let stripped = (1.0 + 0.25f64) * (1.0 + 1.0 / 9.0);
        let direct = overlap_direct(l, pt(0.5, 0.0), pt(1.0 / 3.0, 0.0));
        assert_relative_eq!(
            direct.re,
            crate::specfun::rational_to_f64(&d) / stripped / 5.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn overlap_is_the_kernel_of_the_states() {
        let l = lvl(3, 1);
        let (z, w) = (pt(0.2, -0.9), pt(1.1, 0.4));
        let ip = gscs_coefficients(l, z)
            .inner(&gscs_coefficients(l, w))
            .unwrap();
        assert!((ip - overlap_direct(l, z, w)).norm() < 1e-14);
        let direct = monopole_harmonic(l, 0, z).unwrap();
        assert!(direct.norm() > 0.0);
    }

    #[test]
    fn distance_examples() {
        let l = lvl(2, 1);
        let z = pt(0.4, 0.2);
        assert!(cs_distance(l, z, z).unwrap() < 1e-6);
        let w = pt(-0.3, 0.5);
        let rho = cs_distance(l, z, w).unwrap();
        assert!((rho * rho + 2.0 * overlap_closed(l, z, w).re - 2.0).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for k in 1..12 {
            let d = cs_distance(l, z, pt(0.4 + 0.5f64.powi(k), 0.2)).unwrap();
            assert!(d < prev);
            prev = d;
        }
        assert!(prev < 1e-2);
    }

    #[test]
    fn identity_resolution_examples() {
        for (l, tol) in [(lvl(1, 0), 1e-10), (lvl(3, 2), 1e-9)] {
            let q = QuadratureRule::for_level(l);
            assert!(identity_resolution_residual(l, &q).unwrap() < tol);
        }
        let l = lvl(2, 1);
        let r = identity_resolution_residual_scaled(l, &QuadratureRule::for_level(l), 0.5).unwrap();
        assert!((r - 0.5).abs() < 1e-9);
        assert!(identity_resolution_residual(l, &QuadratureRule::new(3, 2).unwrap()).is_err());
    }

    #[test]
    fn glauber_examples() {
        assert_eq!(
            glauber_contraction_error(Complex64::new(0.0, 0.0), 16).unwrap(),
            0.0
        );
        let one = Complex64::new(1.0, 0.0);
        let e16 = glauber_contraction_error(one, 16).unwrap();
        let e64 = glauber_contraction_error(one, 64).unwrap();
        let e256 = glauber_contraction_error(one, 256).unwrap();
        assert!(e16 > e64 && e64 > e256, "{e16} {e64} {e256}");
        assert!(glauber_contraction_error(Complex64::new(4.0, 0.0), 16).is_err());
    }

    #[test]
    fn husimi_of_coherent_state_peaks_at_label() {
        let l = lvl(2, 1);
        let z0 = pt(0.3, -0.2);
        let psi = gscs_coefficients(l, z0);
        assert!((husimi_density(&psi, z0) - 1.0).abs() < 1e-12);
        assert!(husimi_density(&psi, pt(1.0, 1.0)) < 1.0);
        let b = StateVector::basis(l, 0).unwrap();
        assert!(husimi_density(&b, z0) <= 1.0);
        assert_eq!(index_of_offset(l, 0).unwrap(), -1);
    }
}
