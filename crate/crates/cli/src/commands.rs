use monopole_cs::grid::PlaneGrid;
use monopole_cs::gscs::{
    cs_distance, gscs_coefficients, husimi_density, identity_resolution_matrix, overlap_closed,
    overlap_direct, overlap_kernel_exact,
};
use monopole_cs::kravchuk::{
    eigen_residual_exact, function_table, kravchuk_poly, oscillator_matrix, poly_column_exact,
    similar_matrix_exact,
};
use monopole_cs::monopole::{basis_gram, harmonic_values};
use monopole_cs::oscillator_cs::{
    wavefunction_closed, wavefunction_direct, wavefunction_m0_closed,
};
use monopole_cs::quadrature::make_quadrature;
use monopole_cs::specfun::parse_rational;
use monopole_cs::verify::{run_verification, IdentityRecord, VerifyOptions};
use monopole_cs::{
    Complex64, Error, KravchukModel, OscillatorGscsConfig, PlanePoint, Rational, SpinLevel,
    StateVector,
};

use crate::args::{Backend, LevelArgs, WaveForm};
use crate::table::{Cell, Table};

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum CommandError {
    Usage(String),
    Numeric(String),
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::Numeric(_) => CommandError::Numeric(e.to_string()),
            _ => CommandError::Usage(e.to_string()),
        }
    }
}

pub type CmdResult<T> = std::result::Result<T, CommandError>;

fn usage(msg: impl Into<String>) -> CommandError {
    CommandError::Usage(msg.into())
}

fn level(args: &LevelArgs) -> CmdResult<SpinLevel> {
    Ok(SpinLevel::new(args.two_nu, args.m)?)
}

fn grid(spec: &str) -> CmdResult<PlaneGrid> {
    Ok(PlaneGrid::parse(spec)?)
}

/// `"re,im"` or a bare real number.
pub fn parse_point(s: &str) -> CmdResult<PlanePoint> {
    let bad = || usage(format!("expected a point as re,im; got {s:?}"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let (re, im) = match parts.as_slice() {
        [re] => (re.parse().map_err(|_| bad())?, 0.0),
        [re, im] => (
            re.parse().map_err(|_| bad())?,
            im.parse().map_err(|_| bad())?,
        ),
        _ => return Err(bad()),
    };
    Ok(PlanePoint::new(re, im)?)
}

/// A real rational label `"a/b"` or `"a/b,0"`.
fn parse_real_rational(s: &str) -> CmdResult<Rational> {
    let mut parts = s.split(',').map(str::trim);
    let re = parts.next().unwrap_or("");
    match parts.next() {
        None => {}
        Some(im)
            if parse_rational(im)
                .map(|v| v == Rational::from_integer(0.into()))
                .unwrap_or(false) => {}
        Some(_) => {
            return Err(usage(format!(
                "rational backend needs a real label, got {s:?}"
            )))
        }
    }
    if parts.next().is_some() {
        return Err(usage(format!("expected a label as a/b, got {s:?}")));
    }
    Ok(parse_rational(re)?)
}

fn complex_cells(v: Complex64) -> [Cell; 2] {
    [v.re.into(), v.im.into()]
}

fn non_finite(what: &str) -> CommandError {
    CommandError::Numeric(format!("{what} is not finite"))
}

fn check_finite(v: Complex64, what: &str) -> CmdResult<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(non_finite(what))
    }
}

pub fn basis(args: &LevelArgs, grid_spec: &str) -> CmdResult<Table> {
    let lv = level(args)?;
    let g = grid(grid_spec)?;
    let mut t = Table::new(vec!["j", "z_re", "z_im", "value_re", "value_im"]);
    for z in g.points() {
        for (j, v) in lv.indices().zip(harmonic_values(lv, z)) {
            let [vr, vi] = complex_cells(check_finite(v, "harmonic")?);
            t.push(vec![j.into(), z.re().into(), z.im().into(), vr, vi]);
        }
    }
    Ok(t)
}

/// `basis:J` or `gscs:re,im`.
pub fn parse_state(lv: SpinLevel, spec: &str) -> CmdResult<StateVector> {
    let bad = || usage(format!("state must be basis:J or gscs:re,im; got {spec:?}"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    match kind.trim() {
        "basis" => {
            let j: i64 = rest.trim().parse().map_err(|_| bad())?;
            Ok(StateVector::basis(lv, j)?)
        }
        "gscs" => Ok(gscs_coefficients(lv, parse_point(rest)?)),
        _ => Err(bad()),
    }
}

pub fn husimi(args: &LevelArgs, grid_spec: &str, state: &str) -> CmdResult<Table> {
    let lv = level(args)?;
    let phi = parse_state(lv, state)?;
    let g = grid(grid_spec)?;
    let mut t = Table::new(vec!["z_re", "z_im", "density"]);
    for z in g.points() {
        let d = husimi_density(&phi, z);
        if !d.is_finite() {
            return Err(non_finite("density"));
        }
        t.push(vec![z.re().into(), z.im().into(), d.into()]);
    }
    Ok(t)
}

pub fn overlap(
    args: &LevelArgs,
    z: &str,
    w: Option<&str>,
    grid_spec: Option<&str>,
    backend: Backend,
) -> CmdResult<Table> {
    let lv = level(args)?;
    if backend == Backend::Rational {
        let w = w.ok_or_else(|| usage("rational backend needs a single --w"))?;
        let (x, y) = (parse_real_rational(z)?, parse_real_rational(w)?);
        let (direct, closed) = overlap_kernel_exact::<Rational>(lv, &x, &y)?;
        let mut t = Table::new(vec!["z", "w", "kernel_direct", "kernel_closed", "equal"]);
        t.push(vec![
            x.to_string().into(),
            y.to_string().into(),
            direct.to_string().into(),
            closed.to_string().into(),
            (direct == closed).into(),
        ]);
        return Ok(t);
    }
    let z = parse_point(z)?;
    let ws: Vec<PlanePoint> = match (w, grid_spec) {
        (Some(w), _) => vec![parse_point(w)?],
        (None, Some(g)) => grid(g)?.points().collect(),
        (None, None) => return Err(usage("overlap needs --w or --grid")),
    };
    let mut t = Table::new(vec![
        "z_re",
        "z_im",
        "w_re",
        "w_im",
        "direct_re",
        "direct_im",
        "closed_re",
        "closed_im",
        "distance",
    ]);
    for w in ws {
        let [dr, di] = complex_cells(check_finite(overlap_direct(lv, z, w), "overlap")?);
        let [cr, ci] = complex_cells(check_finite(overlap_closed(lv, z, w), "overlap")?);
        let d = cs_distance(lv, z, w)?;
        t.push(vec![
            z.re().into(),
            z.im().into(),
            w.re().into(),
            w.im().into(),
            dr,
            di,
            cr,
            ci,
            d.into(),
        ]);
    }
    Ok(t)
}

pub fn gram(args: &LevelArgs, identity: bool) -> CmdResult<Table> {
    let lv = level(args)?;
    let quad = make_quadrature(lv);
    let g = if identity {
        identity_resolution_matrix(lv, &quad, 1.0)?
    } else {
        basis_gram(lv, &quad)?
    };
    let mut t = Table::new(vec!["j", "k", "re", "im"]);
    for (r, j) in lv.indices().enumerate() {
        for (c, k) in lv.indices().enumerate() {
            let [re, im] = complex_cells(check_finite(g[(r, c)], "Gram entry")?);
            t.push(vec![j.into(), k.into(), re, im]);
        }
    }
    Ok(t)
}

pub fn wavefunction(args: &LevelArgs, p: &str, z: &str, form: WaveForm) -> CmdResult<Table> {
    let lv = level(args)?;
    let cfg = OscillatorGscsConfig::new(lv, parse_rational(p)?)?;
    let z = parse_point(z)?;
    let mut t = Table::new(vec!["j", "x", "re", "im"]);
    for (j, x) in cfg.model().grid().into_iter().enumerate() {
        let v = match form {
            WaveForm::Direct => wavefunction_direct(&cfg, z, x)?,
            WaveForm::Closed => wavefunction_closed(&cfg, z, x)?,
            WaveForm::M0 => wavefunction_m0_closed(&cfg, z, x)?,
        };
        let [re, im] = complex_cells(check_finite(v, "wave function")?);
        t.push(vec![j.into(), x.into(), re, im]);
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KravchukOutput {
    Functions,
    Matrix,
    Spectrum,
    Polynomials,
}

pub fn kravchuk(n: u32, p: &str, what: KravchukOutput, backend: Backend) -> CmdResult<Table> {
    let model = KravchukModel::new(n, parse_rational(p)?)?;
    match (what, backend) {
        (KravchukOutput::Functions, Backend::Float) => {
            let f = function_table(&model);
            let mut t = Table::new(vec!["k", "j", "x", "value"]);
            for k in 0..=n {
                for (j, x) in model.grid().into_iter().enumerate() {
                    t.push(vec![
                        k.into(),
                        j.into(),
                        x.into(),
                        f[(k as usize, j)].into(),
                    ]);
                }
            }
            Ok(t)
        }
        (KravchukOutput::Functions, Backend::Rational) => Err(usage(
            "Kravchuk functions carry square roots; use --polynomials with the rational backend",
        )),
        (KravchukOutput::Matrix, Backend::Float) => {
            let h = oscillator_matrix(&model).to_dense();
            let mut t = Table::new(vec!["row", "col", "value"]);
            for r in 0..h.nrows() {
                for c in 0..h.ncols() {
                    t.push(vec![r.into(), c.into(), h[(r, c)].into()]);
                }
            }
            Ok(t)
        }
        (KravchukOutput::Matrix, Backend::Rational) => {
            // the diagonal similarity W^{-1/2} H W^{1/2}, whose entries are rational
            let h = similar_matrix_exact(&model).to_dense();
            let mut t = Table::new(vec!["row", "col", "value"]);
            for (r, row) in h.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    t.push(vec![r.into(), c.into(), v.to_string().into()]);
                }
            }
            Ok(t)
        }
        (KravchukOutput::Spectrum, Backend::Float) => {
            let mut t = Table::new(vec!["k", "eigenvalue", "expected", "deviation"]);
            for (k, ev) in oscillator_matrix(&model)
                .eigenvalues()
                .into_iter()
                .enumerate()
            {
                let want = k as f64 + 0.5;
                t.push(vec![
                    k.into(),
                    ev.into(),
                    want.into(),
                    (ev - want).abs().into(),
                ]);
            }
            Ok(t)
        }
        (KravchukOutput::Spectrum, Backend::Rational) => {
            let mut t = Table::new(vec!["k", "eigenvalue", "residual"]);
            for k in 0..=n {
                let ev = Rational::new((2 * k as i64 + 1).into(), 2.into());
                let res = eigen_residual_exact(&model, k)?;
                t.push(vec![
                    k.into(),
                    ev.to_string().into(),
                    res.to_string().into(),
                ]);
            }
            Ok(t)
        }
        (KravchukOutput::Polynomials, backend) => {
            let mut t = Table::new(vec!["k", "y", "value"]);
            let columns: Vec<Vec<Rational>> =
                (0..=n).map(|j| poly_column_exact(&model, j)).collect();
            for k in 0..=n {
                for (y, col) in columns.iter().enumerate() {
                    let v: Cell = match backend {
                        Backend::Float => kravchuk_poly(&model, k, y as f64)?.into(),
                        Backend::Rational => col[k as usize].to_string().into(),
                    };
                    t.push(vec![k.into(), y.into(), v]);
                }
            }
            Ok(t)
        }
    }
}

pub fn verify(perturb: f64) -> CmdResult<(Table, Vec<IdentityRecord>)> {
    if !perturb.is_finite() {
        return Err(usage(format!("--perturb must be finite, got {perturb}")));
    }
    let records = run_verification(&VerifyOptions { perturb })?;
    let mut t = Table::new(vec![
        "id",
        "equation",
        "params",
        "residual",
        "tolerance",
        "pass",
    ]);
    for r in &records {
        t.push(vec![
            r.id.clone().into(),
            r.equation.clone().into(),
            r.params.clone().into(),
            r.residual.into(),
            r.tolerance.into(),
            r.pass.into(),
        ]);
    }
    Ok((t, records))
}
