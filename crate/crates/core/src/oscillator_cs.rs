//! Coherent states of the Kravchuk oscillator labelled by the sphere:
//! `|z, ν, m⟩_{(p,q)} = 𝒩^{-1/2} Σ_k conj(Φ̃_k(z)) |φ_k⟩`, `N = 2ν + 2m`,
//! where `Φ̃_k` is the monopole harmonic with `j = k - m`.

use num_complex::Complex64;
use num_traits::One;

use crate::error::{check_index, Error, Result};
use crate::gscs::{gscs_coefficients, normalization_factor, StateVector};
use crate::kravchuk::{function_column, poly_values_exact, KravchukModel};
use crate::monopole::{harmonic_values, PlanePoint, SpinLevel};
use crate::quadrature::QuadratureRule;
use crate::specfun::{
    jacobi, ln_factorial, log_gamma, meijer_g1111, pochhammer, powi, Rational, Scalar,
};

/// A spin level coupled to the Kravchuk model with `N = 2ν + 2m`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorGscsConfig {
    level: SpinLevel,
    model: KravchukModel,
}

impl OscillatorGscsConfig {
    pub fn new(level: SpinLevel, p: Rational) -> Result<Self> {
        let model = KravchukModel::new(level.oscillator_n(), p)?;
        Ok(Self { level, model })
    }

    pub fn from_parts(level: SpinLevel, model: KravchukModel) -> Result<Self> {
        if model.n() != level.oscillator_n() {
            return Err(Error::Parameter(format!(
                "model N = {} does not match 2nu + 2m = {}",
                model.n(),
                level.oscillator_n()
            )));
        }
        Ok(Self { level, model })
    }

    pub fn level(&self) -> SpinLevel {
        self.level
    }

    pub fn model(&self) -> &KravchukModel {
        &self.model
    }
}

/// Amplitudes of `|z, ν, m⟩_{(p,q)}` over `φ_0 ..= φ_N`.
pub fn kravchuk_gscs(cfg: &OscillatorGscsConfig, z: PlanePoint) -> StateVector {
    gscs_coefficients(cfg.level, z)
}

/// `⟨x | z, ν, m⟩ = (N+1)^{-1/2} Σ_k conj(Φ̃_k(z)) φ_k(x)`.
pub fn wavefunction_direct(cfg: &OscillatorGscsConfig, z: PlanePoint, x: f64) -> Result<Complex64> {
    let phi = function_column(&cfg.model, x)?;
    let s = normalization_factor(cfg.level).sqrt();
    Ok(harmonic_values(cfg.level, z)
        .iter()
        .zip(&phi)
        .map(|(h, f)| h.conj() * *f)
        .sum::<Complex64>()
        / s)
}

/// `⟨x_j | z, ν, m⟩` for every grid point.
pub fn wavefunction_on_grid(cfg: &OscillatorGscsConfig, z: PlanePoint) -> Vec<Complex64> {
    cfg.model
        .grid()
        .into_iter()
        .map(|x| wavefunction_direct(cfg, z, x).expect("grid points are in range"))
        .collect()
}

fn check_x(model: &KravchukModel, x: f64) -> Result<()> {
    if !(x >= model.x_min() - 1e-9 && x <= model.x_max() + 1e-9) {
        return Err(Error::Domain(format!(
            "x = {x} outside [{}, {}]",
            model.x_min(),
            model.x_max()
        )));
    }
    Ok(())
}

/// `ln sqrt(p^{Np+x} q^{Nq-x} / (Γ(Np+x+1) Γ(Nq-x+1)))`
fn ln_sqrt_weight_part(model: &KravchukModel, x: f64) -> Result<f64> {
    let n = model.n() as f64;
    let (p, q) = (model.p_f64(), model.q_f64());
    let a = (n * p + x).max(0.0);
    let b = (n * q - x).max(0.0);
    Ok(0.5 * (a * p.ln() + b * q.ln() - log_gamma(a + 1.0)? - log_gamma(b + 1.0)?))
}

/// The closed form built from the Jacobi pair
/// `P_k^{(-N-1, Nq-x-k)}(1 - 2/p)` and `P_m^{(k-m, 2ν+m-k)}((1-zz̄)/(1+zz̄))`.
///
/// The prefactor carries `z̄^{-m}`, so `z = 0` is excluded when `m > 0`.
pub fn wavefunction_closed(cfg: &OscillatorGscsConfig, z: PlanePoint, x: f64) -> Result<Complex64> {
    let (level, model) = (cfg.level, &cfg.model);
    check_x(model, x)?;
    let m = level.m();
    let zb = z.z().conj();
    if m > 0 && zb.norm() == 0.0 {
        return Err(Error::SingularInput(
            "the closed form has a zbar^-m pole at z = 0 for m > 0".into(),
        ));
    }
    let n = model.n();
    let nf = n as f64;
    let (p, q) = (model.p_f64(), model.q_f64());
    let two_nu = level.two_nu() as f64;
    let u = z.norm_sqr();
    let t = (1.0 - u) / (1.0 + u);
    let arg = 1.0 - 2.0 / p;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..=n {
        let kf = k as f64;
        let pk = jacobi(k, &(-nf - 1.0), &(nf * q - x - kf), &arg);
        let pm = jacobi(m, &(kf - m as f64), &(two_nu + m as f64 - kf), &t);
        let denom = pochhammer(&(-nf), k) * ln_factorial((n - k) as u64).exp();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += zb.powu(k) * (sign * pk * (p / q).powf(0.5 * kf) * pm / denom);
    }
    let ln_pref = ln_factorial(n as u64) - level.nu() * u.ln_1p()
        + 0.5 * (ln_factorial((level.two_nu() + m) as u64) + ln_factorial(m as u64))
        + ln_sqrt_weight_part(model, x)?;
    Ok(sum * ln_pref.exp() / zb.powu(m))
}

/// The `m = 0` closed form
/// `sqrt(N!) (1+zz̄)^{-ν} sqrt(p^{Np+x} q^{Nq-x} / (Γ(Np+x+1) Γ(Nq-x+1)))
///  (1 + sqrt(q/p) z̄)^{x+Np} (1 - sqrt(p/q) z̄)^{Nq-x}`.
pub fn wavefunction_m0_closed(
    cfg: &OscillatorGscsConfig,
    z: PlanePoint,
    x: f64,
) -> Result<Complex64> {
    if cfg.level.m() != 0 {
        return Err(Error::Parameter(format!(
            "m = 0 form requested for {}",
            cfg.level
        )));
    }
    let model = &cfg.model;
    check_x(model, x)?;
    let nf = model.n() as f64;
    let (p, q) = (model.p_f64(), model.q_f64());
    let zb = z.z().conj();
    let a = 1.0 + (q / p).sqrt() * zb;
    let b = 1.0 - (p / q).sqrt() * zb;
    let (ea, eb) = (x + nf * p, nf * q - x);
    let pow = |base: Complex64, e: f64| match model.grid_index(x) {
        Some(_) => base.powi(e.round() as i32),
        None => base.powf(e),
    };
    let ln_pref = 0.5 * ln_factorial(model.n() as u64) - cfg.level.nu() * z.norm_sqr().ln_1p()
        + ln_sqrt_weight_part(model, x)?;
    Ok(pow(a, ea) * pow(b, eb) * ln_pref.exp())
}

/// `⟨z | φ⟩`-type transform `B[φ](z) = sqrt(𝒩) ⟨φ | z, ν, m⟩ = Σ_k conj(φ_k) conj(Φ̃_k(z))`.
#[derive(Debug, Clone, PartialEq)]
pub struct BargmannFunction {
    cfg: OscillatorGscsConfig,
    state: StateVector,
}

impl BargmannFunction {
    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn config(&self) -> &OscillatorGscsConfig {
        &self.cfg
    }

    pub fn eval(&self, z: PlanePoint) -> Complex64 {
        harmonic_values(self.cfg.level, z)
            .iter()
            .zip(self.state.coeffs())
            .map(|(h, c)| (h * c).conj())
            .sum()
    }

    /// The transform equal to `a B₁ + b B₂` pointwise. Because `B` is
    /// antilinear in the state, its state is `conj(a) φ₁ + conj(b) φ₂`.
    pub fn combine(a: Complex64, b1: &Self, b: Complex64, b2: &Self) -> Result<Self> {
        if b1.cfg != b2.cfg {
            return Err(Error::Parameter(
                "cannot combine transforms of different configurations".into(),
            ));
        }
        let coeffs = b1
            .state
            .coeffs()
            .iter()
            .zip(b2.state.coeffs())
            .map(|(x, y)| a.conj() * x + b.conj() * y)
            .collect();
        Ok(Self {
            cfg: b1.cfg.clone(),
            state: StateVector::new(b1.cfg.level, coeffs)?,
        })
    }
}

pub fn bargmann_transform(
    cfg: &OscillatorGscsConfig,
    phi: &StateVector,
) -> Result<BargmannFunction> {
    if phi.level() != cfg.level {
        return Err(Error::Parameter(format!(
            "state level {} differs from {}",
            phi.level(),
            cfg.level
        )));
    }
    Ok(BargmannFunction {
        cfg: cfg.clone(),
        state: phi.clone(),
    })
}

/// `∫ ⟨z|φ⟩ |z, ν, m⟩ dμ(z)` with `⟨z|φ⟩ = conj(B[φ](z)) / sqrt(𝒩)` and
/// `dμ = 𝒩 G^{11}_{11}(zz̄ | -1; 0) dη`.
pub fn reconstruct_state(
    cfg: &OscillatorGscsConfig,
    b: &BargmannFunction,
    quad: &QuadratureRule,
) -> Result<StateVector> {
    if b.cfg != *cfg {
        return Err(Error::Parameter(
            "transform belongs to another configuration".into(),
        ));
    }
    quad.require_level(cfg.level)?;
    let nn = normalization_factor(cfg.level);
    let dim = cfg.level.dim();
    let rows = quad.map_nodes(|node| -> Result<Vec<Complex64>> {
        let z = PlanePoint::from_complex_unchecked(node.z);
        let w = nn * meijer_g1111(node.u, -1.0, 0.0)? * node.lebesgue_weight();
        let proj = b.eval(z).conj() / nn.sqrt();
        Ok(kravchuk_gscs(cfg, z)
            .coeffs()
            .iter()
            .map(|a| a * proj * w)
            .collect())
    });
    let mut acc = vec![Complex64::new(0.0, 0.0); dim];
    for row in rows {
        for (a, v) in acc.iter_mut().zip(row?) {
            *a += v;
        }
    }
    StateVector::new(cfg.level, acc)
}

/// `|∫ |B[φ](z)|² G^{11}_{11}(zz̄ | -1; 0) dη(z) - ⟨φ|φ⟩|`
pub fn parseval_residual(
    cfg: &OscillatorGscsConfig,
    phi: &StateVector,
    quad: &QuadratureRule,
) -> Result<f64> {
    quad.require_level(cfg.level)?;
    let b = bargmann_transform(cfg, phi)?;
    let terms = quad.map_nodes(|node| -> Result<f64> {
        let z = PlanePoint::from_complex_unchecked(node.z);
        Ok(b.eval(z).norm_sqr() * meijer_g1111(node.u, -1.0, 0.0)? * node.lebesgue_weight())
    });
    let mut total = 0.0;
    for t in terms {
        total += t?;
    }
    Ok((total - phi.norm_sqr()).abs())
}

/// Klauder–Perelomov wave function
/// `(1 + (p/q) zz̄)^{-N/2} (1+z)^y (1 - pz/q)^{N-y} sqrt(C(N, y) p^y q^{N-y})`.
pub fn kp_wavefunction(n: u32, p: &Rational, z: PlanePoint, y: u32) -> Result<Complex64> {
    let model = KravchukModel::new(n, p.clone())?;
    check_index(y as i64, 0, n as i64)?;
    let (pf, qf) = (model.p_f64(), model.q_f64());
    let z = z.z();
    let nf = n as f64;
    let yf = y as f64;
    let ln_w = 0.5
        * (ln_factorial(n as u64) - ln_factorial(y as u64) - ln_factorial((n - y) as u64)
            + yf * pf.ln()
            + (nf - yf) * qf.ln())
        - 0.5 * nf * (pf / qf * z.norm_sqr()).ln_1p();
    Ok((1.0 + z).powu(y) * (1.0 - pf * z / qf).powu(n - y) * ln_w.exp())
}

/// `max_y |⟨y - Np | sqrt(p/q) z̄, N/2, 0⟩ - ⟨y | z, N⟩^{KP}|`
pub fn kp_equivalence_residual(n: u32, p: &Rational, z: PlanePoint) -> Result<f64> {
    let level = SpinLevel::new(n, 0)?;
    let cfg = OscillatorGscsConfig::new(level, p.clone())?;
    let ratio = (cfg.model.p_f64() / cfg.model.q_f64()).sqrt();
    let zp = PlanePoint::from_complex(ratio * z.z().conj())?;
    let mut worst = 0.0f64;
    for y in 0..=n {
        let ours = wavefunction_direct(&cfg, zp, cfg.model.grid_point(y))?;
        let kp = kp_wavefunction(n, p, z, y)?;
        worst = worst.max((ours - kp).norm());
    }
    Ok(worst)
}

/// Exact form of the KP equivalence for real rational `z`.
///
/// Both wave functions carry `(1 + (p/q) z²)^{-N/2} sqrt(ϱ(y))`. With that
/// factor removed, the `k`-th term of the direct sum becomes
/// `(z/q)^k K_k(y)` and the KP side becomes `(1+z)^y (1 - pz/q)^{N-y}`.
/// Returns those two rationals for each `y = 0..=N`.
pub fn kp_equivalence_exact(
    n: u32,
    p: &Rational,
    z: &Rational,
) -> Result<Vec<(Rational, Rational)>> {
    let model = KravchukModel::new(n, p.clone())?;
    let q = model.q().clone();
    let t = z / &q;
    (0..=n)
        .map(|y| {
            let k = poly_values_exact(&model, &Rational::from_int(y as i64), n);
            let direct = k
                .iter()
                .enumerate()
                .fold(Rational::from_int(0), |acc, (i, kv)| {
                    acc + powi(&t, i as i64) * kv
                });
            let kp = powi(&(Rational::one() + z), y as i64)
                * powi(&(Rational::one() - p * z / &q), (n - y) as i64);
            Ok((direct, kp))
        })
        .collect()
}
