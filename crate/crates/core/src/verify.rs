//! Batch certification of the closed-form identities over fixed parameter
//! ranges. Each check yields one [`IdentityRecord`].

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::Result;
use crate::grid::PlaneGrid;
use crate::gscs::{
    glauber_contraction_error, gscs_coefficients, identity_resolution_residual_scaled,
    overlap_closed_scaled, overlap_direct, overlap_kernel_exact, seeded_random_state, StateVector,
};
use crate::kravchuk::{
    binomial_weight, binomial_weight_exact, double_commutator_residual,
    double_commutator_residual_exact, eigen_residual_exact, eigen_residuals, function_table_from,
    hermite_limit_error, norm_sq_exact, oscillator_matrix, poly_orthogonality_sum_exact,
    poly_table_exact, recurrence_residual_exact, recurrence_residual_grid, CommutatorVariable,
    KravchukModel,
};
use crate::monopole::{basis_gram, fd_observed_order, PlanePoint, SpinLevel};
use crate::oscillator_cs::{
    bargmann_transform, kp_equivalence_exact, kp_equivalence_residual, parseval_residual,
    reconstruct_state, wavefunction_closed, wavefunction_direct, wavefunction_m0_closed,
    OscillatorGscsConfig,
};
use crate::quadrature::QuadratureRule;
use crate::specfun::{rational_to_f64, Rational, Scalar};

/// Outcome of one identity check. `pass` is `residual <= tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRecord {
    pub id: String,
    pub equation: String,
    pub params: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityRecord {
    fn new(id: &str, equation: &str, params: String, residual: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            equation: equation.into(),
            params,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    /// Relative fault injected into the overlap prefactor and the
    /// resolution-of-identity measure.
    pub perturb: f64,
}

/// Tolerance for checks whose residual is the ratio of successive errors.
pub const STRICT_DECREASE: f64 = 1.0 - 1e-9;

/// Seed of the `i`-th random state in the Bargmann checks.
pub fn random_state_seed(i: u64) -> u64 {
    0x5eed_0000 + i
}

pub fn levels() -> Vec<SpinLevel> {
    (1..=6u32)
        .flat_map(|two_nu| (0..=2u32).map(move |m| SpinLevel::new(two_nu, m).expect("2nu >= 1")))
        .collect()
}

/// Five points of the chart, reused as both `z` and `w` axes of the overlap grid.
pub fn sample_points() -> Vec<PlanePoint> {
    [
        (0.0, 0.0),
        (0.3, 0.4),
        (-0.8, 0.2),
        (1.5, -0.7),
        (-0.4, -1.9),
    ]
    .iter()
    .map(|&(re, im)| PlanePoint::new(re, im).expect("finite"))
    .collect()
}

/// 25 points on `[-2, 2]²`.
pub fn normalization_points() -> Vec<PlanePoint> {
    PlaneGrid::parse("0,0,2,5")
        .expect("valid grid")
        .points()
        .collect()
}

/// Five points with `|z| <= 2` for the finite-difference check.
pub fn fd_points() -> Vec<PlanePoint> {
    [
        (0.3, 0.2),
        (-0.5, 0.7),
        (1.1, -0.4),
        (-1.3, -1.2),
        (0.05, 1.6),
    ]
    .iter()
    .map(|&(re, im)| PlanePoint::new(re, im).expect("finite"))
    .collect()
}

pub const FD_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

pub const KRAVCHUK_P: [&str; 4] = ["1/4", "1/3", "1/2", "2/3"];

fn model(n: u32, p: &str) -> KravchukModel {
    KravchukModel::parse(n, p).expect("valid model")
}

fn rat(s: &str) -> Rational {
    crate::specfun::parse_rational(s).expect("valid rational")
}

fn abs_f64(q: &Rational) -> f64 {
    rational_to_f64(q).abs()
}

fn check_basis_orthonormality(_: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    for level in levels() {
        let g = basis_gram(level, &QuadratureRule::for_level(level))?;
        worst = worst.max(crate::gscs::max_identity_deviation(&g));
    }
    Ok(IdentityRecord::new(
        "basis_orthonormality",
        "3.24",
        "2nu=1..6, m=0..2".into(),
        worst,
        1e-9,
    ))
}

fn check_landau_fd(_: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    for (tn, m) in [(1, 0), (2, 1), (3, 2)] {
        let order = fd_observed_order(SpinLevel::new(tn, m)?, &fd_points(), &FD_STEPS)?;
        worst = worst.max((order - 2.0).abs());
    }
    Ok(IdentityRecord::new(
        "landau_eigen_fd_order",
        "2.1, 2.5",
        "(2nu,m) in {(1,0),(2,1),(3,2)}, h=1e-2/5e-3/2.5e-3, residual=|order-2|".into(),
        worst,
        0.2,
    ))
}

fn check_overlap_addition(opts: &VerifyOptions) -> Result<IdentityRecord> {
    let pts = sample_points();
    let mut worst = 0.0f64;
    for level in levels() {
        for &z in &pts {
            for &w in &pts {
                let d = overlap_direct(level, z, w);
                let c = overlap_closed_scaled(level, z, w, 1.0 + opts.perturb);
                worst = worst.max((d - c).norm());
            }
        }
    }
    Ok(IdentityRecord::new(
        "overlap_addition_formula",
        "3.11",
        "2nu=1..6, m=0..2, 5x5 (z,w)".into(),
        worst,
        1e-11,
    ))
}

fn check_overlap_exact(_: &VerifyOptions) -> Result<IdentityRecord> {
    let pts = ["0", "1/2", "-1/3", "5/4", "-7/3"].map(rat);
    let mut worst = 0.0f64;
    for level in levels() {
        for x in &pts {
            for y in &pts {
                let (d, c) = overlap_kernel_exact(level, x, y)?;
                worst = worst.max(abs_f64(&(d - c)));
            }
        }
    }
    Ok(IdentityRecord::new(
        "overlap_addition_exact",
        "3.11",
        "2nu=1..6, m=0..2, rational real z,w".into(),
        worst,
        0.0,
    ))
}

fn check_normalization(_: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    for level in levels() {
        for z in normalization_points() {
            worst = worst.max((gscs_coefficients(level, z).norm_sqr() - 1.0).abs());
        }
    }
    Ok(IdentityRecord::new(
        "gscs_normalization",
        "3.12",
        "2nu=1..6, m=0..2, 25 z".into(),
        worst,
        1e-12,
    ))
}

fn check_identity_resolution(opts: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    for level in levels() {
        let q = QuadratureRule::for_level(level);
        worst = worst.max(identity_resolution_residual_scaled(
            level,
            &q,
            1.0 + opts.perturb,
        )?);
    }
    Ok(IdentityRecord::new(
        "resolution_of_identity",
        "3.16, 3.17, 3.25",
        "2nu=1..6, m=0..2".into(),
        worst,
        1e-9,
    ))
}

fn check_glauber(_: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    for zeta in [
        Complex64::new(0.5, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.5),
    ] {
        let e = [16u32, 64, 256]
            .iter()
            .map(|&n| glauber_contraction_error(zeta, n))
            .collect::<Result<Vec<_>>>()?;
        worst = worst.max(e[1] / e[0]).max(e[2] / e[1]);
    }
    Ok(IdentityRecord::new(
        "glauber_contraction",
        "3.5",
        "zeta in {0.5, 1, 1+0.5i}, N=16/64/256, residual=max error ratio".into(),
        worst,
        STRICT_DECREASE,
    ))
}

fn check_kravchuk_exact(_: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    for p in KRAVCHUK_P {
        for n in 1..=6u32 {
            let m = model(n, p);
            let total = (0..=n).try_fold(Rational::zero(), |acc, j| {
                binomial_weight_exact(&m, j).map(|w| acc + w)
            })?;
            worst = worst.max(abs_f64(&(total - Rational::from_int(1))));
            for k in 1..n {
                for j in 0..=n {
                    let y = Rational::from_int(j as i64);
                    worst = worst.max(abs_f64(&recurrence_residual_exact(&m, k, &y)?));
                    let off = y + Rational::from_ratio(1, 3);
                    worst = worst.max(abs_f64(&recurrence_residual_exact(&m, k, &off)?));
                }
            }
            for k in 0..=n {
                let dk = norm_sq_exact(&m, k)?;
                for l in 0..=n {
                    let s = poly_orthogonality_sum_exact(&m, k, l)?;
                    let want = if k == l { dk.clone() } else { Rational::zero() };
                    worst = worst.max(abs_f64(&(s.clone() - want)));
                    if k == l {
                        // function orthonormality: Σ ϱ K_k² / d_k² = 1
                        worst = worst.max(abs_f64(&(s / &dk - Rational::from_int(1))));
                    }
                }
            }
        }
    }
    Ok(IdentityRecord::new(
        "kravchuk_stack_exact",
        "4.1, 4.3, 4.4, 4.6",
        "N=1..6, p in {1/4,1/3,1/2,2/3}, rational".into(),
        worst,
        0.0,
    ))
}

/// N values for the floating-point Kravchuk checks.
pub const FLOAT_N: [u32; 11] = [1, 2, 3, 5, 8, 13, 16, 21, 32, 48, 64];

fn check_kravchuk_float(_: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    for p in KRAVCHUK_P {
        for n in FLOAT_N {
            let m = model(n, p);
            let total: f64 = (0..=n)
                .map(|j| binomial_weight(&m, j as f64))
                .sum::<Result<f64>>()?;
            worst = worst.max((total - 1.0).abs());
            let table = poly_table_exact(&m);
            for (res, scale) in recurrence_residual_grid(&m, &table).into_iter().flatten() {
                if scale > 0.0 {
                    worst = worst.max(res / scale);
                }
            }
            let f = function_table_from(&m, &table);
            let g = &f * f.transpose();
            for k in 0..=n as usize {
                for l in 0..=n as usize {
                    let want = if k == l { 1.0 } else { 0.0 };
                    worst = worst.max((g[(k, l)] - want).abs());
                }
            }
            for k in [0, n / 2, n] {
                let dk = rational_to_f64(&norm_sq_exact(&m, k)?);
                let mut s = 0.0;
                for (j, col) in table.iter().enumerate() {
                    s += binomial_weight(&m, j as f64)? * rational_to_f64(&col[k as usize]).powi(2);
                }
                worst = worst.max((s / dk - 1.0).abs());
            }
        }
    }
    Ok(IdentityRecord::new(
        "kravchuk_stack_float",
        "4.1, 4.3, 4.4, 4.6",
        "N<=64, p in {1/4,1/3,1/2,2/3}, f64".into(),
        worst,
        1e-10,
    ))
}

fn check_spectrum(_: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    for p in KRAVCHUK_P {
        for n in 1..=32u32 {
            let m = model(n, p);
            for (k, ev) in oscillator_matrix(&m).eigenvalues().iter().enumerate() {
                worst = worst.max((ev - (k as f64 + 0.5)).abs());
            }
            worst = eigen_residuals(&m).into_iter().fold(worst, f64::max);
        }
    }
    Ok(IdentityRecord::new(
        "oscillator_spectrum",
        "4.10",
        "N=1..32, p in {1/4,1/3,1/2,2/3}".into(),
        worst,
        1e-9,
    ))
}

fn check_spectrum_exact(_: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    for p in KRAVCHUK_P {
        for n in 1..=6u32 {
            let m = model(n, p);
            for k in 0..=n {
                worst = worst.max(abs_f64(&eigen_residual_exact(&m, k)?));
            }
        }
    }
    Ok(IdentityRecord::new(
        "oscillator_eigenvectors_exact",
        "4.10",
        "N=1..6, similar rational matrix".into(),
        worst,
        0.0,
    ))
}

/// Largest error over `|ξ| <= 2` (step 1/4) for each `k <= 3`, at each `N`.
pub fn hermite_sup_errors(n: u32) -> Result<Vec<f64>> {
    let half = Rational::from_ratio(1, 2);
    (0..=3u32)
        .map(|k| {
            (-8..=8).try_fold(0.0f64, |acc, i| {
                hermite_limit_error(k, 0.25 * i as f64, n, &half).map(|e| acc.max(e))
            })
        })
        .collect()
}

fn check_hermite_limit(_: &VerifyOptions) -> Result<(IdentityRecord, IdentityRecord)> {
    let sups = [16u32, 64, 256]
        .iter()
        .map(|&n| hermite_sup_errors(n))
        .collect::<Result<Vec<_>>>()?;
    let mut ratio = 0.0f64;
    for ((a, b), c) in sups[0].iter().zip(&sups[1]).zip(&sups[2]) {
        ratio = ratio.max(b / a).max(c / b);
    }
    let last = sups[2].iter().copied().fold(0.0, f64::max);
    Ok((
        IdentityRecord::new(
            "hermite_limit_monotone",
            "4.11",
            "k<=3, |xi|<=2, p=1/2, N=16/64/256, residual=max ratio of sup errors".into(),
            ratio,
            STRICT_DECREASE,
        ),
        IdentityRecord::new(
            "hermite_limit_n256",
            "4.11",
            "k<=3, |xi|<=2, p=1/2, N=256".into(),
            last,
            0.02,
        ),
    ))
}

fn check_double_commutator(_: &VerifyOptions) -> Result<IdentityRecord> {
    let mut worst = abs_f64(&double_commutator_residual_exact(
        2,
        CommutatorVariable::Grid,
    )?);
    for n in [2, 4, 8] {
        worst = worst.max(double_commutator_residual(n)?);
    }
    Ok(IdentityRecord::new(
        "double_commutator",
        "Remark 4.2",
        "p=1/2, X=diag(x_j), N=2 exact, N=2/4/8 f64".into(),
        worst,
        1e-10,
    ))
}

/// Points on a 3×3 grid avoiding the origin.
pub fn wavefunction_points() -> Vec<PlanePoint> {
    let mut out = Vec::new();
    for im in [-0.5, 0.25, 1.1] {
        for re in [-0.9, 0.35, 1.2] {
            out.push(PlanePoint::new(re, im).expect("finite"));
        }
    }
    out
}

fn check_wavefunctions(
    _: &VerifyOptions,
) -> Result<(IdentityRecord, IdentityRecord, IdentityRecord)> {
    let (mut closed, mut m0, mut unit) = (0.0f64, 0.0f64, 0.0f64);
    for two_nu in 1..=4u32 {
        for m in 0..=2u32 {
            for p in ["1/3", "1/2"] {
                let cfg = OscillatorGscsConfig::new(SpinLevel::new(two_nu, m)?, rat(p))?;
                for z in wavefunction_points() {
                    let (mut diff, mut size, mut total) = (0.0f64, 0.0f64, 0.0f64);
                    for x in cfg.model().grid() {
                        let a = wavefunction_direct(&cfg, z, x)?;
                        let b = wavefunction_closed(&cfg, z, x)?;
                        diff = diff.max((a - b).norm());
                        size = size.max(a.norm());
                        total += a.norm_sqr();
                    }
                    closed = closed.max(diff / size);
                    unit = unit.max((total - 1.0).abs());
                }
            }
        }
    }
    for two_nu in 1..=6u32 {
        for p in ["1/4", "1/2", "2/3"] {
            let cfg = OscillatorGscsConfig::new(SpinLevel::new(two_nu, 0)?, rat(p))?;
            for z in wavefunction_points()
                .into_iter()
                .chain([PlanePoint::origin()])
            {
                let (mut diff, mut size) = (0.0f64, 0.0f64);
                for x in cfg.model().grid() {
                    let a = wavefunction_direct(&cfg, z, x)?;
                    diff = diff.max((a - wavefunction_m0_closed(&cfg, z, x)?).norm());
                    size = size.max(a.norm());
                }
                m0 = m0.max(diff / size);
            }
        }
    }
    Ok((
        IdentityRecord::new(
            "wavefunction_closed_form",
            "5.2, 5.3",
            "2nu<=4, m<=2, p in {1/3,1/2}, 3x3 z, relative".into(),
            closed,
            1e-9,
        ),
        IdentityRecord::new(
            "wavefunction_m0_closed_form",
            "6.1",
            "2nu<=6, p in {1/4,1/2,2/3}, relative".into(),
            m0,
            1e-11,
        ),
        IdentityRecord::new(
            "wavefunction_unitarity",
            "5.3",
            "sum_j |<x_j|z>|^2 = 1".into(),
            unit,
            1e-12,
        ),
    ))
}

fn check_bargmann(_: &VerifyOptions) -> Result<(IdentityRecord, IdentityRecord)> {
    let (mut rec, mut pars) = (0.0f64, 0.0f64);
    for two_nu in 1..=4u32 {
        for m in 0..=2u32 {
            let level = SpinLevel::new(two_nu, m)?;
            let cfg = OscillatorGscsConfig::new(level, rat("1/3"))?;
            let q = QuadratureRule::for_level(level);
            let mut states: Vec<StateVector> = level
                .indices()
                .map(|j| StateVector::basis(level, j))
                .collect::<Result<_>>()?;
            states.extend((0..10).map(|i| seeded_random_state(level, random_state_seed(i))));
            for phi in &states {
                let back = reconstruct_state(&cfg, &bargmann_transform(&cfg, phi)?, &q)?;
                for (a, b) in back.coeffs().iter().zip(phi.coeffs()) {
                    rec = rec.max((a - b).norm());
                }
                pars = pars.max(parseval_residual(&cfg, phi, &q)?);
            }
        }
    }
    Ok((
        IdentityRecord::new(
            "bargmann_reconstruction",
            "5.11",
            "2nu<=4, m<=2, basis + 10 seeded random states".into(),
            rec,
            1e-9,
        ),
        IdentityRecord::new(
            "parseval",
            "5.12",
            "2nu<=4, m<=2, basis + 10 seeded random states".into(),
            pars,
            1e-9,
        ),
    ))
}

fn check_kp(_: &VerifyOptions) -> Result<(IdentityRecord, IdentityRecord)> {
    let mut float = 0.0f64;
    let mut exact = 0.0f64;
    for p in ["1/4", "1/3", "1/2"] {
        let pr = rat(p);
        for n in 1..=8u32 {
            for im in [-0.3, 0.0, 0.4] {
                for re in [-0.5, 0.0, 0.6] {
                    float = float.max(kp_equivalence_residual(n, &pr, PlanePoint::new(re, im)?)?);
                }
            }
            for z in ["1/3", "-2/5", "3/2"] {
                for (a, b) in kp_equivalence_exact(n, &pr, &rat(z))? {
                    exact = exact.max(abs_f64(&(a - b)));
                }
            }
        }
    }
    Ok((
        IdentityRecord::new(
            "kp_equivalence",
            "6.11",
            "N<=8, p in {1/4,1/3,1/2}, 3x3 z".into(),
            float,
            1e-11,
        ),
        IdentityRecord::new(
            "kp_equivalence_exact",
            "6.11",
            "N<=8, p in {1/4,1/3,1/2}, rational real z".into(),
            exact,
            0.0,
        ),
    ))
}

type Check = fn(&VerifyOptions) -> Result<Vec<IdentityRecord>>;

fn one(r: Result<IdentityRecord>) -> Result<Vec<IdentityRecord>> {
    r.map(|x| vec![x])
}

const CHECKS: &[Check] = &[
    |o| one(check_basis_orthonormality(o)),
    |o| one(check_landau_fd(o)),
    |o| one(check_overlap_addition(o)),
    |o| one(check_overlap_exact(o)),
    |o| one(check_normalization(o)),
    |o| one(check_identity_resolution(o)),
    |o| one(check_glauber(o)),
    |o| one(check_kravchuk_exact(o)),
    |o| one(check_kravchuk_float(o)),
    |o| one(check_spectrum(o)),
    |o| one(check_spectrum_exact(o)),
    |o| check_hermite_limit(o).map(|(a, b)| vec![a, b]),
    |o| one(check_double_commutator(o)),
    |o| check_wavefunctions(o).map(|(a, b, c)| vec![a, b, c]),
    |o| check_bargmann(o).map(|(a, b)| vec![a, b]),
    |o| check_kp(o).map(|(a, b)| vec![a, b]),
];

/// Run every check; records come back in a fixed order.
pub fn run_verification(opts: &VerifyOptions) -> Result<Vec<IdentityRecord>> {
    #[cfg(feature = "parallel")]
    let results: Vec<Result<Vec<IdentityRecord>>> = {
        use rayon::prelude::*;
        CHECKS.par_iter().map(|c| c(opts)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<Vec<IdentityRecord>>> = CHECKS.iter().map(|c| c(opts)).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

pub fn all_pass(records: &[IdentityRecord]) -> bool {
    records.iter().all(|r| r.pass)
}

pub fn failing(records: &[IdentityRecord]) -> Vec<&IdentityRecord> {
    records.iter().filter(|r| !r.pass).collect()
}
