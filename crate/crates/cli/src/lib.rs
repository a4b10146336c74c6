//! Command implementations behind the `penta` binary. Every command returns a
//! [`RunReport`]; the binary only handles argument parsing and output.

pub mod wire;

use std::f64::consts::TAU;
use std::fs;
use std::path::Path;

use pentablock::construct::{self, ConstructError};
use pentablock::domains::{in_bpenta, in_gamma, in_k1, in_penta, on_royal_gamma, on_royal_penta, Criterion, Mode};
use pentablock::schwarz::{self, FeasibilityCertificate, SchwarzError};
use pentablock::specfact::SpecFactError;
use pentablock::{cpoly, fejer_riesz, tol, MembershipVerdict, PentaPoint, Report, TrigPoly};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use wire::{
    to_c, to_cs, ConstructionDataWire, FunctionWire, PentaWire, Point, PointWire, SchwarzProblemWire,
    TrigPolyWire,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NOT_NONNEGATIVE: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;
pub const EXIT_NUMERIC: i32 = 5;
pub const EXIT_OUT_OF_REACH: i32 = 6;

/// Default boundary sample count for `verify` and `trace`.
pub const DEFAULT_SAMPLES: usize = 512;
/// Default interior grid side for `verify`.
pub const DEFAULT_GRID: usize = 32;
/// Fejér–Riesz residual tolerance, relative to the largest coefficient.
pub const FR_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    NotNonnegative(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    OutOfReach(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Data(_) => EXIT_DATA,
            CliError::NotNonnegative(_) => EXIT_NOT_NONNEGATIVE,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Numeric(_) => EXIT_NUMERIC,
            CliError::OutOfReach(_) => EXIT_OUT_OF_REACH,
        }
    }
}

impl From<SpecFactError> for CliError {
    fn from(e: SpecFactError) -> Self {
        match e {
            SpecFactError::NotNonnegative { .. } => CliError::NotNonnegative(e.to_string()),
            SpecFactError::NotHermitian(_) => CliError::Data(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Data(_) => CliError::Data(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<SchwarzError> for CliError {
    fn from(e: SchwarzError) -> Self {
        match e {
            SchwarzError::InvalidProblem(_) | SchwarzError::Inconsistent(_) => CliError::Data(e.to_string()),
            SchwarzError::Infeasible(_) => CliError::Infeasible(e.to_string()),
            SchwarzError::OutOfReach { .. } => CliError::OutOfReach(e.to_string()),
            SchwarzError::Numeric(_) | SchwarzError::Verification(_) => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckWire {
    pub name: String,
    pub pass: bool,
    /// `None` serializes as `null`; non-finite margins map to `None`.
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Map<String, Value>,
    pub checks: Vec<CheckWire>,
    pub exit_code: i32,
}

impl RunReport {
    fn new(command: &str, inputs: Value) -> Self {
        Self { command: command.into(), inputs, outputs: Map::new(), checks: Vec::new(), exit_code: EXIT_OK }
    }

    fn output(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("wire types serialize");
        self.outputs.insert(key.into(), v);
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, margin: f64) {
        let margin = margin.is_finite().then_some(margin);
        self.checks.push(CheckWire { name: name.into(), pass, margin });
    }

    fn report(&mut self, prefix: &str, rep: Report) {
        for c in rep.checks {
            self.check(format!("{prefix}{}", c.name), c.pass, c.margin);
        }
    }

    /// Sets the exit code from the checks unless an error already set it.
    fn finish(mut self) -> Self {
        if self.exit_code == EXIT_OK && self.checks.iter().any(|c| !c.pass) {
            self.exit_code = EXIT_CHECK;
        }
        self
    }

    fn fail(mut self, e: CliError) -> Self {
        self.output("error", e.to_string());
        self.exit_code = e.exit_code();
        self
    }

    pub fn passed(&self) -> bool {
        self.exit_code == EXIT_OK
    }

    /// Pretty JSON with stable field order and shortest round-trip floats.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Flags shared by the subcommands.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub tol: Option<f64>,
    pub samples: Option<usize>,
    pub check_only: bool,
}

impl Options {
    fn samples(&self) -> usize {
        self.samples.unwrap_or(DEFAULT_SAMPLES)
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn parse<T: DeserializeOwned>(v: &Value) -> Result<T, CliError> {
    T::deserialize(v).map_err(|e| CliError::Data(format!("schema error: {e}")))
}

/// Reads the input file, echoes it, and runs `body`. Any error becomes an
/// `error` output with its exit code.
fn run<F>(command: &str, path: &Path, body: F) -> RunReport
where
    F: FnOnce(&Value, &mut RunReport) -> Result<(), CliError>,
{
    let input = match read_json(path) {
        Ok(v) => v,
        Err(e) => return RunReport::new(command, Value::Null).fail(e),
    };
    let mut rep = RunReport::new(command, input.clone());
    match body(&input, &mut rep) {
        Ok(()) => rep.finish(),
        Err(e) => rep.fail(e),
    }
}

fn verdict(v: &MembershipVerdict) -> Value {
    json!({ "inside": v.inside, "margin": v.margin.is_finite().then_some(v.margin), "binding": v.binding })
}

fn classify_point(w: &PointWire, tol: f64) -> Value {
    match Point::from(w) {
        Point::Gamma(g) => {
            let royal = on_royal_gamma(g, tol);
            json!({
                "domain": "gamma",
                "open": verdict(&in_gamma(g, Mode::Open, tol)),
                "closed": verdict(&in_gamma(g, Mode::Closed, tol)),
                "distinguished_boundary": verdict(&in_gamma(g, Mode::Boundary, tol)),
                "royal": verdict(&royal),
            })
        }
        Point::Penta(x) => {
            let closed = in_penta(x, Mode::Closed, Criterion::Beta, tol);
            let bp = in_bpenta(x, tol);
            let royal = on_royal_penta(x, tol);
            let mut out = json!({
                "domain": "pentablock",
                "open": verdict(&in_penta(x, Mode::Open, Criterion::Beta, tol)),
                "closed": verdict(&closed),
                "closed_sup_psi": verdict(&in_penta(x, Mode::Closed, Criterion::SupPsi, tol)),
                "distinguished_boundary": verdict(&bp),
                "k1": verdict(&in_k1(x, tol)),
                "royal": verdict(&royal),
            });
            if bp.inside && royal.inside {
                out["note"] = json!("royal boundary point: |s| = 2, a = 0");
            }
            out
        }
    }
}

/// `classify`: membership verdicts for one point or an array of points. The
/// β and sup-Ψ criteria for P̄ must agree.
pub fn cmd_classify(path: &Path, opts: &Options) -> RunReport {
    let tol = opts.tol.unwrap_or(tol::MEMBERSHIP);
    run("classify", path, |input, rep| {
        let points: Vec<PointWire> = match input {
            Value::Array(_) => parse(input)?,
            _ => vec![parse(input)?],
        };
        let mut verdicts = Vec::with_capacity(points.len());
        for (i, w) in points.iter().enumerate() {
            let v = classify_point(w, tol);
            if v["domain"] == "pentablock" {
                let agree = v["closed"]["inside"] == v["closed_sup_psi"]["inside"];
                rep.check(format!("point {i}: beta and sup-psi criteria agree"), agree, 0.0);
            }
            verdicts.push(v);
        }
        if verdicts.len() == 1 && !input.is_array() {
            rep.output("verdict", verdicts.pop());
        } else {
            rep.output("verdicts", verdicts);
        }
        Ok(())
    })
}

/// `fejer-riesz`: outer factor `D` of a nonnegative trigonometric polynomial.
pub fn cmd_fejer_riesz(path: &Path, opts: &Options) -> RunReport {
    run("fejer-riesz", path, |input, rep| {
        let w: TrigPolyWire = parse(input)?;
        if w.coeffs.iter().any(|&(_, re, im)| !re.is_finite() || !im.is_finite()) {
            return Err(CliError::Data("non-finite coefficient".into()));
        }
        let f = TrigPoly::from(&w);
        let res = fejer_riesz(&f)?;
        rep.output("D", to_cs(res.d.coeffs()));
        rep.output("residual", res.residual);
        let bound = opts.tol.unwrap_or(FR_RESIDUAL) * f.max_abs_coeff().max(1.0);
        rep.check("max ||D|^2 - f| on T", res.residual <= bound, bound - res.residual);
        if !res.is_degenerate() {
            let outer = res.d.min_root_modulus().map_err(|e| CliError::Numeric(e.to_string()))?;
            let margin = if outer.is_finite() { outer - 1.0 } else { f64::MAX };
            rep.check("D has no roots in the open disc", margin >= -tol::FR_PAIRING, margin);
        }
        Ok(())
    })
}

/// `construct`: P̄-inner function from zeros and royal nodes, with the
/// verification and round-trip reports.
pub fn cmd_construct(path: &Path, _opts: &Options) -> RunReport {
    run("construct", path, |input, rep| {
        let w: ConstructionDataWire = parse(input)?;
        let data = (&w).into();
        let res = construct::build(&data)?;
        rep.output("x", PentaWire::from_rep(&res.x));
        rep.output("R", to_cs(res.r.coeffs()));
        rep.report("", res.report.clone());
        rep.report("roundtrip: ", construct::roundtrip_check(&res));
        Ok(())
    })
}

fn certificate(c: &FeasibilityCertificate) -> Value {
    json!({
        "feasible": c.feasible,
        "binding": c.binding,
        "margin": c.margin,
        "fraction": c.fraction,
        "s_bound_ok": c.s_bound_ok,
        "f_ok": c.f_ok,
        "a_bound_ok": c.a_bound_ok,
        "a_bound": c.a_bound,
        "a_bound_beta": c.a_bound_beta,
        "beta_bound_ok": c.beta_bound_ok,
    })
}

/// `schwarz`: feasibility certificate and, unless `check_only`, a verified
/// interpolant `x` with `x(0) = (0, 0, 0)` and `x(λ0) = target`.
pub fn cmd_schwarz(path: &Path, opts: &Options) -> RunReport {
    run("schwarz", path, |input, rep| {
        let w: SchwarzProblemWire = parse(input)?;
        let p = w.to_problem().map_err(CliError::Data)?;
        let cert = schwarz::feasibility(&p);
        rep.output("certificate", certificate(&cert));
        if !cert.feasible {
            return Err(CliError::Infeasible(format!(
                "infeasible: {} violated (margin {:e})",
                cert.binding, cert.margin
            )));
        }
        if opts.check_only {
            return Ok(());
        }
        let sol = match schwarz::solve(&p) {
            Ok(sol) => sol,
            Err(SchwarzError::Verification(r)) => {
                rep.report("", r);
                return Ok(());
            }
            Err(e) => return Err(e.into()),
        };
        rep.output(
            "solution",
            json!({
                "path": sol.path.to_string(),
                "x": PentaWire::from_rep(&sol.x),
                "reach": sol.aux.reach,
                "q": to_c(sol.aux.q),
                "lambda_star": sol.aux.lambda_star.map(to_c),
            }),
        );
        rep.report("", sol.report);
        Ok(())
    })
}

fn load_function(input: &Value) -> Result<FunctionWire, CliError> {
    parse(input)
}

/// `verify`: boundary and interior checks for a Γ-inner or P̄-inner function.
pub fn cmd_verify(path: &Path, opts: &Options) -> RunReport {
    run("verify", path, |input, rep| {
        let n = opts.samples();
        if n == 0 {
            return Err(CliError::Data("--samples must be positive".into()));
        }
        let (kind, report) = match load_function(input)? {
            FunctionWire::Penta(w) => ("pentablock", w.to_rep().map_err(CliError::Data)?.verify_with(n, DEFAULT_GRID)),
            FunctionWire::Gamma(w) => ("gamma", w.to_rep().map_err(CliError::Data)?.verify_with(n, DEFAULT_GRID)),
        };
        rep.output("kind", kind);
        rep.output("samples", n);
        rep.report("", report);
        Ok(())
    })
}

/// One sampled boundary value of a traced function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub theta: f64,
    pub a_re: f64,
    pub a_im: f64,
    pub s_re: f64,
    pub s_im: f64,
    pub p_re: f64,
    pub p_im: f64,
    pub margin: f64,
}

/// Samples `x(e^{iθ})` at `θ_k = 2πk/N`. Γ-valued functions are traced with
/// `a = 0` and the bΓ margin in place of the bP̄ margin.
pub fn trace_rows(f: &FunctionWire, n: usize, tol: f64) -> Result<Vec<TraceRow>, CliError> {
    let eval: Box<dyn Fn(pentablock::Complex) -> (PentaPoint, f64)> = match f {
        FunctionWire::Penta(w) => {
            let x = w.to_rep().map_err(CliError::Data)?;
            Box::new(move |z| {
                let v = x.eval(z);
                (v, in_bpenta(v, tol).margin)
            })
        }
        FunctionWire::Gamma(w) => {
            let h = w.to_rep().map_err(CliError::Data)?;
            Box::new(move |z| {
                let g = h.eval(z);
                (PentaPoint::new(pentablock::Complex::new(0.0, 0.0), g.s, g.p), in_gamma(g, Mode::Boundary, tol).margin)
            })
        }
    };
    Ok((0..n)
        .map(|k| {
            let theta = TAU * k as f64 / n as f64;
            let (x, margin) = eval(cpoly::cis(theta));
            TraceRow { theta, a_re: x.a.re, a_im: x.a.im, s_re: x.s.re, s_im: x.s.im, p_re: x.p.re, p_im: x.p.im, margin }
        })
        .collect())
}

pub fn write_csv<W: std::io::Write>(rows: &[TraceRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Data(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Data(e.to_string()))
}

/// `trace`: boundary samples for plotting. Rows go to `csv_out` when given,
/// otherwise into the report.
pub fn cmd_trace(path: &Path, opts: &Options, csv_out: Option<&Path>) -> RunReport {
    let tol = opts.tol.unwrap_or(tol::INNER_BOUNDARY);
    run("trace", path, |input, rep| {
        let n = opts.samples();
        if n == 0 {
            return Err(CliError::Data("--samples must be positive".into()));
        }
        let rows = trace_rows(&load_function(input)?, n, tol)?;
        let worst = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        rep.check("boundary samples on the distinguished boundary", worst >= -tol, worst);
        rep.output("samples", n);
        match csv_out {
            Some(p) => {
                let file = fs::File::create(p).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
                write_csv(&rows, file)?;
                rep.output("csv", p.display().to_string());
            }
            None => rep.output("rows", &rows),
        }
        Ok(())
    })
}
