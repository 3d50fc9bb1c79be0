use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use pbosc::phase::number_state;
use pbosc::susy::{default_block_dim, verify_susy_algebra};
use pbosc::*;
use serde_json::{json, Value};

use crate::envelope::ReportEnvelope;
use crate::error::{CliError, CliResult};
use crate::serial::FamilyJson;

/// Tolerances from the global flags. Without flags every residual keeps the
/// tolerance its check declares; with either flag the declared tolerance
/// becomes `abs + rel * scale`.
#[derive(Debug, Clone, Copy)]
pub struct Tols {
    pub lib: Tolerance64,
    pub overridden: bool,
}

impl Tols {
    pub fn from_flags(abs_tol: Option<f64>, rel_tol: Option<f64>) -> CliResult<Self> {
        let d = Tolerance64::default();
        let lib = Tolerance64::new(abs_tol.unwrap_or(d.abs_tol), rel_tol.unwrap_or(d.rel_tol))?;
        Ok(Self {
            lib,
            overridden: abs_tol.is_some() || rel_tol.is_some(),
        })
    }

    pub fn declare(&self, default: f64, scale: f64) -> f64 {
        if self.overridden {
            self.lib.bound(scale)
        } else {
            default
        }
    }
}

/// What a command produced. `artifact` is the family JSON or CSV for the
/// commands that have one, otherwise the envelope itself.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub artifact: Option<String>,
    pub envelope: ReportEnvelope,
}

impl Outcome {
    fn report(envelope: ReportEnvelope) -> Self {
        Self {
            artifact: None,
            envelope,
        }
    }
}

pub fn build(s: usize, tols: &Tols) -> CliResult<Outcome> {
    let family = build_family::<f64>(s)?;
    let doc = FamilyJson::from_family(&family);
    let text = serde_json::to_string_pretty(&doc)?;

    let mut env = ReportEnvelope::new("build");
    env.param("s", s);
    let reloaded: FamilyJson = serde_json::from_str(&text)?;
    env.residual("reload vs rebuild", reloaded.reload_residual()?, tols.declare(0.0, 1.0));
    let a = reloaded.matrix("a")?;
    let a_dag = reloaded.matrix("a_dag")?;
    let deformed = reloaded.matrix("A")?;
    let bracket = commutator(&a, &a_dag)?.max_abs_diff(&deformed)?;
    env.residual("[a,a_dag] = A", bracket, tols.declare(1e-12, deformed.max_abs()));
    env.results = json!({
        "dim": doc.dim,
        "s": doc.s,
        "generators": doc.generators.keys().collect::<Vec<_>>(),
    });
    Ok(Outcome {
        artifact: Some(text + "\n"),
        envelope: env,
    })
}

/// Closure of the seed triple, or the envelope already marked failed.
fn family_closure(s: usize, max_rounds: usize, tols: &Tols, env: &mut ReportEnvelope) -> CliResult<Option<LieBasis64>> {
    let family = build_family::<f64>(s)?;
    match close_algebra(&family.seeds(), &tols.lib, max_rounds) {
        Ok(b) => Ok(Some(b)),
        Err(Error::ClosureNotReached { dimension, rounds }) => {
            env.results = json!({ "reached": false, "dimension": dimension, "rounds": rounds });
            env.fail("closure reached");
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn closure(s: usize, max_rounds: usize, tols: &Tols) -> CliResult<Outcome> {
    let mut env = ReportEnvelope::new("closure");
    env.param("s", s);
    env.param("max_rounds", max_rounds);
    let Some(basis) = family_closure(s, max_rounds, tols, &mut env)? else {
        return Ok(Outcome::report(env));
    };
    let cert = inspect_su(&basis)?;
    env.residual(
        "dimension gap",
        cert.dimension.abs_diff(cert.expected_dimension) as f64,
        0.0,
    );
    let mut clauses = Vec::new();
    for c in &cert.clauses {
        clauses.push(json!({
            "clause": c.clause.label(),
            "passed": c.passed,
            "residual": c.residual,
            "tolerance": c.tolerance,
        }));
        if c.clause != SuClause::Dimension {
            env.residual(c.clause.label(), c.residual, tols.declare(c.tolerance, 1.0));
        }
    }
    env.residual("closure defect", basis.closure_defect()?, tols.declare(1e-8, 1.0));
    env.results = json!({
        "reached": true,
        "dimension": cert.dimension,
        "expected_dimension": cert.expected_dimension,
        "closure_rounds": basis.closure_rounds(),
        "certified": cert.passed(),
        "clauses": clauses,
    });
    Ok(Outcome::report(env))
}

pub fn structure(s: usize, tols: &Tols) -> CliResult<Outcome> {
    let mut env = ReportEnvelope::new("structure-constants");
    env.param("s", s);
    let mut csv = String::from("a,b,c,f\n");
    let Some(basis) = family_closure(s, DEFAULT_MAX_ROUNDS, tols, &mut env)? else {
        return Ok(Outcome {
            artifact: Some(csv),
            envelope: env,
        });
    };
    let sc = structure_constants(&basis)?;
    let rows = sc.nonzero(tols.lib.abs_tol);
    for (a, b, c, f) in &rows {
        writeln!(csv, "{},{},{},{:.14e}", a + 1, b + 1, c + 1, f).expect("writing to a String");
    }
    env.residual("antisymmetry", sc.antisymmetry_defect(), tols.declare(1e-12, 1.0));
    env.residual("jacobi", sc.jacobi_residual(), tols.declare(1e-8, 1.0));
    env.residual("reconstruction", sc.reconstruction_residual, tols.declare(1e-8, 1.0));
    env.results = json!({
        "basis_dimension": sc.dim(),
        "nonzero": rows.len(),
        "index_base": 1,
    });
    Ok(Outcome {
        artifact: Some(csv),
        envelope: env,
    })
}

fn parse_amplitude(line: &str, lineno: usize) -> CliResult<C64> {
    let fields: Vec<&str> = line
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|f| !f.is_empty())
        .collect();
    let num = |f: &str| {
        f.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("line {lineno}: cannot parse {f:?} as a number")))
    };
    match fields.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(CliError::Usage(format!(
            "line {lineno}: expected `re` or `re im`, got {line:?}"
        ))),
    }
}

/// `n:<int>` or `file:<path>` with one amplitude per line.
pub fn parse_state(spec: &str, s: usize) -> CliResult<Vec<C64>> {
    if let Some(n) = spec.strip_prefix("n:") {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad number state {spec:?}")))?;
        return Ok(number_state(s, n)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        return text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .map(|(i, l)| parse_amplitude(l, i))
            .collect();
    }
    Err(CliError::Usage(format!(
        "state must be `n:<int>` or `file:<path>`, got {spec:?}"
    )))
}

pub fn phase(s: usize, theta0: f64, state_spec: &str, tols: &Tols) -> CliResult<Outcome> {
    let state = parse_state(state_spec, s)?;
    let basis = build_phase_basis::<f64>(s, theta0)?;
    let p = phase_distribution(&state, &basis)?;

    let mut csv = String::from("m,theta_m,p_m\n");
    for (m, (theta, pm)) in basis.thetas().iter().zip(&p).enumerate() {
        writeln!(csv, "{m},{theta},{pm}").expect("writing to a String");
    }
    let mut env = ReportEnvelope::new("phase");
    env.param("s", s);
    env.param("theta0", theta0);
    env.param("state", state_spec);
    let total: f64 = p.iter().sum();
    env.residual("probability sum", (total - 1.0).abs(), tols.declare(1e-12, 1.0));
    let completeness = basis
        .resolution_of_identity()
        .max_abs_diff(&CMatrix::identity(s + 1))?;
    env.residual("completeness", completeness, tols.declare(1e-10, 1.0));
    env.results = json!({ "dim": s + 1, "theta": basis.thetas(), "p": p });
    Ok(Outcome {
        artifact: Some(csv),
        envelope: env,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct SusyArgs {
    pub k: usize,
    pub d: Option<usize>,
    pub omega: f64,
    pub omega0: f64,
    pub g_re: f64,
    pub g_im: f64,
    pub big_omega: f64,
}

fn integer_value(c: u128) -> Value {
    u64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::from(c.to_string()))
}

pub fn susy(args: &SusyArgs, tols: &Tols) -> CliResult<Outcome> {
    let k = args.k;
    let d = args.d.unwrap_or_else(|| default_block_dim(k));
    let rep = build_susy_rep::<f64>(k, d)?;
    let p = JcParams64::new(args.omega, args.omega0, C64::new(args.g_re, args.g_im), k)?;
    if !(args.big_omega.is_finite() && args.big_omega > 0.0) {
        return Err(CliError::Usage("--big-omega must be positive".into()));
    }

    let mut env = ReportEnvelope::new("susy");
    env.param("k", k);
    env.param("D", d);
    for (key, v) in [
        ("omega", args.omega),
        ("omega0", args.omega0),
        ("g_re", args.g_re),
        ("g_im", args.g_im),
        ("Omega", args.big_omega),
    ] {
        env.param(key, v);
    }

    let algebra = verify_susy_algebra(&rep)?;
    for c in &algebra.checks {
        let tol = if c.tolerance == 0.0 { 0.0 } else { tols.declare(c.tolerance, 1.0) };
        env.residual(format!("{} [{}]", c.name, c.scope.tag()), c.residual, tol);
    }

    let direct = jc_hamiltonian_direct(&p, d)?;
    let susy_form = jc_hamiltonian_susy_form(&p, &rep)?;
    env.residual(
        "H direct = H susy form [full]",
        direct.max_abs_diff(&susy_form)?,
        tols.declare(1e-11, direct.max_abs()),
    );

    let mut table = Vec::new();
    let (mut energy_res, mut energy_scale) = (0.0f64, 1.0f64);
    let (mut eigen_res, mut eigen_scale) = (0.0f64, 1.0f64);
    for m in 0..rep.window() {
        let cell = QuasiAlgebraCell::new(m, k)?;
        let c = cell.occupation();
        let pb = susy_pb_hamiltonian::<f64>(&cell, args.big_omega)?;
        energy_res = energy_res.max(pb.residual);
        energy_scale = energy_scale.max(pb.energy.abs());
        if m + 2 * k < d {
            let chk = nprime_eigen_check::<f64>(k, m, d)?;
            eigen_res = eigen_res.max(chk.residual);
            eigen_scale = eigen_scale.max(c as f64);
        }
        table.push(json!({ "m": m, "C": integer_value(c), "energy": pb.energy }));
    }
    env.residual(
        "restricted H = C Omega/2",
        energy_res,
        tols.declare(1e-12 * energy_scale, energy_scale),
    );
    env.residual("N' eigenvalue = C", eigen_res, tols.declare(1e-12 * eigen_scale, eigen_scale));

    env.results = json!({
        "k": k,
        "D": d,
        "window": rep.window(),
        "delta": p.delta(),
        "quasialgebra": table,
    });
    Ok(Outcome::report(env))
}

/// Writes the outcome and returns the exit code.
///
/// With `out`, the artifact goes to the file and the envelope to stdout.
/// Without it, the artifact goes to stdout and a one-line summary to stderr.
pub fn emit(outcome: &Outcome, out: Option<&Path>) -> CliResult<u8> {
    let envelope = serde_json::to_string_pretty(&outcome.envelope)? + "\n";
    let (file_text, stdout_text) = match (&outcome.artifact, out) {
        (Some(a), Some(_)) => (Some(a.as_str()), Some(envelope.as_str())),
        (Some(a), None) => (None, Some(a.as_str())),
        (None, Some(_)) => (Some(envelope.as_str()), Some(envelope.as_str())),
        (None, None) => (None, Some(envelope.as_str())),
    };
    if let (Some(text), Some(path)) = (file_text, out) {
        fs::write(path, text).map_err(|e| CliError::io(path, e))?;
    }
    if let Some(text) = stdout_text {
        print!("{text}");
    }
    if outcome.artifact.is_some() && out.is_none() {
        eprintln!("{}", outcome.envelope.summary());
    }
    Ok(if outcome.envelope.pass {
        crate::error::EXIT_PASS
    } else {
        crate::error::EXIT_VERIFY
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tols() -> Tols {
        Tols::from_flags(None, None).unwrap()
    }

    #[test]
    fn tolerance_flags() {
        assert!(!tols().overridden);
        assert_eq!(tols().declare(3.0, 10.0), 3.0);
        let t = Tols::from_flags(Some(1e-6), None).unwrap();
        assert!((t.declare(3.0, 10.0) - (1e-6 + 1e-9 * 10.0)).abs() < 1e-20);
        assert!(Tols::from_flags(Some(-1.0), None).is_err());
    }

    #[test]
    fn amplitude_lines() {
        assert_eq!(parse_amplitude("0.5", 1).unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_amplitude("0.5 -0.25", 1).unwrap(), C64::new(0.5, -0.25));
        assert_eq!(parse_amplitude("0.5,-0.25", 1).unwrap(), C64::new(0.5, -0.25));
        assert!(parse_amplitude("1 2 3", 1).is_err());
        assert!(parse_amplitude("x", 1).is_err());
    }

    #[test]
    fn state_specs() {
        assert_eq!(parse_state("n:1", 2).unwrap()[1], C64::new(1.0, 0.0));
        assert!(matches!(parse_state("n:3", 2), Err(CliError::Core(_))));
        assert!(matches!(parse_state("q:1", 2), Err(CliError::Usage(_))));
        assert!(matches!(parse_state("file:/nonexistent/x", 2), Err(CliError::Io { .. })));
    }

    #[test]
    fn structure_csv_for_su2() {
        let o = structure(1, &tols()).unwrap();
        let csv = o.artifact.unwrap();
        assert_eq!(csv.lines().count(), 7);
        assert!(o.envelope.pass);
    }

    #[test]
    fn susy_table_row() {
        let args = SusyArgs {
            k: 2,
            d: Some(12),
            omega: 1.0,
            omega0: 1.0,
            g_re: 0.2,
            g_im: 0.0,
            big_omega: 1.0,
        };
        let o = susy(&args, &tols()).unwrap();
        assert!(o.envelope.pass);
        let row = &o.envelope.results["quasialgebra"][1];
        assert_eq!(row["C"], 3);
        assert_eq!(row["energy"], 1.5);
    }

    #[test]
    fn closure_not_reached_is_a_failed_report() {
        let o = closure(4, 1, &tols()).unwrap();
        assert!(!o.envelope.pass);
        assert_eq!(o.envelope.results["reached"], false);
    }
}
