//! Job dispatch: one function per command, each filling a [`Report`] with
//! the descriptor echo, certification block, results, provenance and, on
//! request, a self-audit that re-checks the reported numbers.

use clspace::cl::{self, CLSpace, NormResult};
use clspace::indices::{self, Condition, GridSpec, IndexEstimate, Regime};
use clspace::witness::{self, WitnessKind};
use clspace::{ConditionVerdict, ExtReal, OrliczFunction, SimpleVector, SpaceDescriptor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::descriptor::{self, FunctionDesc, SpaceDesc, VectorDesc};
use crate::error::CliError;
use crate::report::{cell, ext, num, nums, Report};
use crate::suite;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Norm,
    Modular,
    Fnorm,
    Index,
    /// `None` checks all three conditions.
    Check(Option<Condition>),
    Witness(WitnessKind),
    Blowup,
    Suite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Norm => "norm",
            Command::Modular => "modular",
            Command::Fnorm => "fnorm",
            Command::Index => "index",
            Command::Check(_) => "check",
            Command::Witness(_) => "witness",
            Command::Blowup => "blowup",
            Command::Suite => "suite",
        }
    }
}

pub fn parse_condition(s: &str) -> Result<Option<Condition>, CliError> {
    Ok(match s {
        "all" => None,
        "delta2" => Some(Condition::Delta2),
        "delta_eps" => Some(Condition::DeltaEps),
        "delta_2str" => Some(Condition::Delta2Str),
        _ => return Err(CliError::malformed("condition", format!("{s:?}; expected delta2, delta_eps, delta_2str or all"))),
    })
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Command,
    pub function: Option<String>,
    pub space: Option<String>,
    pub vector: Option<String>,
    pub tol: f64,
    /// `None` runs every regime.
    pub regime: Option<Regime>,
    pub n: usize,
    pub eps: Vec<f64>,
    pub horizon: u64,
    pub seed: u64,
    pub jobs: usize,
    pub audit: bool,
    pub target: f64,
}

impl JobSpec {
    pub fn new(command: Command) -> JobSpec {
        JobSpec {
            command,
            function: None,
            space: None,
            vector: None,
            tol: cl::DEFAULT_TOL,
            regime: None,
            n: 10,
            eps: vec![0.5, 0.25],
            horizon: witness::GREEDY_HORIZON,
            seed: 42,
            jobs: 1,
            audit: false,
            target: 10.0,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::malformed("parameters", m));
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return bad(format!("--tol {} must lie in (0, 1)", self.tol));
        }
        if self.n == 0 {
            return bad("--N must be at least 1".into());
        }
        if self.eps.is_empty() || self.eps.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
            return bad(format!("--eps {:?} needs values in (0, 1)", self.eps));
        }
        if self.horizon < 2 {
            return bad("--horizon must exceed 1".into());
        }
        if !(self.target > 0.0 && self.target.is_finite()) {
            return bad(format!("--target {} must be positive", self.target));
        }
        Ok(())
    }

    fn regimes(&self) -> Vec<Regime> {
        match self.regime {
            Some(r) => vec![r],
            None => vec![Regime::All, Regime::Zero, Regime::Infinity],
        }
    }
}

/// Parsed inputs with their JSON echo.
struct Inputs {
    echo: Map<String, Value>,
    phi: OrliczFunction,
    space: Option<SpaceDescriptor>,
    vector: Option<SimpleVector>,
}

fn required<'a>(arg: &'a Option<String>, flag: &str, cmd: Command) -> Result<&'a str, CliError> {
    arg.as_deref().ok_or_else(|| CliError::malformed("job", format!("{} needs --{flag}", cmd.name())))
}

fn inputs(job: &JobSpec, need_space: bool, need_vector: bool) -> Result<Inputs, CliError> {
    let mut echo = Map::new();
    let f = descriptor::load("function", required(&job.function, "function", job.command)?)?;
    let phi = descriptor::decode::<FunctionDesc>("function", &f)?.build()?;
    echo.insert("function".into(), f);
    let mut space = None;
    if need_space {
        let s = descriptor::load("space", required(&job.space, "space", job.command)?)?;
        space = Some(descriptor::decode::<SpaceDesc>("space", &s)?.build()?);
        echo.insert("space".into(), s);
    }
    let mut vector = None;
    if need_vector {
        let v = descriptor::load("vector", required(&job.vector, "vector", job.command)?)?;
        let carrier = space.as_ref().expect("vectors come with a space").carrier();
        vector = Some(descriptor::decode::<VectorDesc>("vector", &v)?.build(carrier)?);
        echo.insert("vector".into(), v);
    }
    Ok(Inputs { echo, phi, space, vector })
}

fn grid_json(g: &GridSpec) -> Value {
    json!({"u_min": num(g.u_min), "u_max": num(g.u_max), "a_min": num(g.a_min), "points": g.points})
}

fn provenance(job: &JobSpec) -> Value {
    json!({
        "library": format!("clspace {}", clspace::VERSION),
        "grid": grid_json(&GridSpec::default()),
        "tol": num(job.tol),
        "seed": job.seed,
        "N": job.n,
        "horizon": job.horizon,
        "eps": nums(&job.eps),
        "target": num(job.target),
        "regime": job.regime.map(|r| r.name()),
    })
}

fn estimate_json(e: &IndexEstimate) -> Value {
    json!({
        "regime": e.regime.name(),
        "lo": num(e.lo),
        "hi": num(e.hi),
        "width": num(e.width()),
        "k": num(e.k),
        "u0": num(e.u0),
        "raw_hi": num(e.raw_hi),
        "infinite": e.infinite,
        "witness": e.witness.map(|w| json!({"u": num(w.u), "a": num(w.a), "ratio": num(w.ratio)})),
    })
}

fn verdict_json(v: &ConditionVerdict) -> Value {
    let points = |ws: &[indices::WitnessPoint]| -> Value {
        ws.iter().map(|w| json!({"u": num(w.u), "ratio": num(w.ratio)})).collect()
    };
    json!({
        "condition": v.condition.name(),
        "regime": v.regime.name(),
        "holds": v.holds,
        "k": v.k.map(num),
        "u0": v.u0.map(num),
        "reason": v.reason,
        "witness": points(&v.witness),
        "table": v.table.iter().map(|r| json!({
            "eps": num(r.eps),
            "holds": r.holds,
            "delta": num(r.delta),
            "u0": num(r.u0),
            "witness": points(&r.witness),
        })).collect::<Vec<_>>(),
    })
}

fn phi_json(phi: &OrliczFunction) -> Value {
    json!({"a_phi": num(phi.a_phi()), "b_phi": ext(phi.b_phi()), "phi_at_b": ext(phi.phi_at_b())})
}

/// Index bracket, flags and Δ verdicts in the class regime of `cl`.
fn certification(cl: &CLSpace, eps: &[f64]) -> Result<Value, CliError> {
    let r = cl.regime();
    Ok(json!({
        "class": cl.space.class.number(),
        "regime": r.name(),
        "c_e": num(cl.space.c_e),
        "a_e": ext(cl.space.a_e),
        "order_continuous": cl.space.oc,
        "function": phi_json(&cl.phi),
        "index": cl.index_cert.as_ref().map(estimate_json),
        "certified": cl.is_certified(),
        "flags": cl.flags.iter().map(|f| f.label()).collect::<Vec<_>>(),
        "delta": {
            "delta2": indices::check_delta2(&cl.phi, r).holds,
            "delta_eps": indices::check_delta_epsilon(&cl.phi, r, eps)?.holds,
            "delta_2str": indices::check_delta_2str(&cl.phi, r, eps)?.holds,
        },
    }))
}

fn start(job: &JobSpec, inp: &Inputs) -> Report {
    let mut rep = Report::new(job.command.name());
    rep.set("descriptors", Value::Object(inp.echo.clone()));
    rep.set("provenance", provenance(job));
    rep
}

/// Records a failed computation as the report's result and status.
fn failed(rep: &mut Report, e: clspace::Error) {
    let e = CliError::from(e);
    rep.set("results", json!({"error": e.to_string()}));
    rep.line("error", e.to_string());
    rep.fail_with(e);
}

/// Runs a job. Descriptor and parameter errors are returned as `Err`;
/// failures of the computation itself are recorded in the report status.
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    job.validate()?;
    match job.command {
        Command::Norm | Command::Fnorm => norm_job(job),
        Command::Modular => modular_job(job),
        Command::Index => index_job(job),
        Command::Check(c) => check_job(job, c),
        Command::Witness(k) => witness_job(job, k),
        Command::Blowup => blowup_job(job),
        Command::Suite => Ok(suite_job(job)),
    }
}

struct Audit {
    rows: Vec<Value>,
    ok: bool,
}

impl Audit {
    fn new() -> Audit {
        Audit { rows: Vec::new(), ok: true }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.ok &= ok;
        self.rows.push(json!({"check": what.into(), "ok": ok}));
    }

    fn finish(self, rep: &mut Report) {
        let n = self.rows.len();
        rep.line("audit", format!("{} ({n} checks)", if self.ok { "ok" } else { "FAILED" }));
        for r in self.rows.iter().filter(|r| r["ok"] == Value::Bool(false)) {
            rep.line("audit failure", r["check"].as_str().unwrap_or_default().to_string());
        }
        rep.set("audit", json!({"ok": self.ok, "checks": self.rows}));
        if !self.ok {
            rep.fail_with(CliError::Failed("self-audit found a mismatch".into()));
        }
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn ext_close(a: ExtReal, b: ExtReal, tol: f64) -> bool {
    match (a, b) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => rel_close(x, y, tol),
        _ => a == b,
    }
}

fn norm_job(job: &JobSpec) -> Result<Report, CliError> {
    let inp = inputs(job, true, true)?;
    let mut rep = start(job, &inp);
    let cl = CLSpace::new(inp.space.clone().expect("space"), inp.phi.clone());
    let x = inp.vector.as_ref().expect("vector");
    rep.set("certification", certification(&cl, &job.eps)?);
    let fnorm = job.command == Command::Fnorm;
    let res = if fnorm { cl::mazur_orlicz_f_norm(&cl, x, job.tol) } else { cl::luxemburg_norm(&cl, x, job.tol) };
    let r: NormResult = match res {
        Ok(r) => r,
        Err(e) => {
            failed(&mut rep, e);
            return Ok(rep);
        }
    };
    let label = if fnorm { "f_norm" } else { "norm" };
    rep.set(
        "results",
        json!({label: num(r.norm), "modular_at_norm": ext(r.modular_at_norm), "feasible": r.feasible, "flags": r.flags}),
    );
    rep.csv_header = vec!["quantity".into(), "value".into()];
    rep.csv_rows = vec![
        vec![label.into(), cell(r.norm)],
        vec!["modular_at_norm".into(), cell(r.modular_at_norm.to_f64())],
        vec!["feasible".into(), r.feasible.to_string()],
    ];
    rep.line(label, cell(r.norm));
    rep.line("modular at norm", cell(r.modular_at_norm.to_f64()));
    rep.line("certified", cl.is_certified().to_string());
    for f in &r.flags {
        rep.line("flag", f.clone());
    }
    if job.audit {
        let mut a = Audit::new();
        // λ feasible: ρ(x/λ) ≤ 1 (Luxemburg) or ≤ λ (F-norm)
        let level = |lam: f64| if fnorm { ExtReal::Finite(lam) } else { ExtReal::Finite(1.0) };
        let lam = r.norm;
        let slack = 4.0 * job.tol * lam.max(1.0);
        let above = lam + slack;
        a.check(format!("feasible at {above}"), cl::modular(&cl, &x.scale(1.0 / above))? <= level(above));
        let below = lam - slack;
        if below > 0.0 {
            a.check(format!("infeasible at {below}"), cl::modular(&cl, &x.scale(1.0 / below))? > level(below));
        }
        if lam > 0.0 {
            a.check("modular at norm recomputes", ext_close(cl::modular(&cl, &x.scale(1.0 / lam))?, r.modular_at_norm, 1e-12));
        }
        a.finish(&mut rep);
    }
    Ok(rep)
}

fn modular_job(job: &JobSpec) -> Result<Report, CliError> {
    let inp = inputs(job, true, true)?;
    let mut rep = start(job, &inp);
    let cl = CLSpace::new(inp.space.clone().expect("space"), inp.phi.clone());
    let x = inp.vector.as_ref().expect("vector");
    rep.set("certification", certification(&cl, &job.eps)?);
    let m = match cl::modular(&cl, x) {
        Ok(m) => m,
        Err(e) => {
            failed(&mut rep, e);
            return Ok(rep);
        }
    };
    rep.set("results", json!({"modular": ext(m)}));
    rep.csv_header = vec!["quantity".into(), "value".into()];
    rep.csv_rows = vec![vec!["modular".into(), cell(m.to_f64())]];
    rep.line("modular", cell(m.to_f64()));
    if job.audit {
        let mut a = Audit::new();
        a.check("even", cl::modular(&cl, &x.scale(-1.0))? == m);
        let finite_everywhere = ExtReal::Finite(x.sup_abs()) < cl.phi.b_phi();
        if finite_everywhere {
            let phix = x.map_abs(|v| cl.phi.value_f64(v))?;
            a.check("equals the E-norm of phi(|x|)", ext_close(cl.space.norm(&phix)?, m, 1e-12));
        }
        a.finish(&mut rep);
    }
    Ok(rep)
}

fn index_job(job: &JobSpec) -> Result<Report, CliError> {
    let inp = inputs(job, false, false)?;
    let mut rep = start(job, &inp);
    let phi = &inp.phi;
    let grid = GridSpec::default();
    rep.set("certification", json!({"function": phi_json(phi)}));
    rep.csv_header = IndexEstimate::csv_header().iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut errors = Vec::new();
    let mut audit = Audit::new();
    for r in job.regimes() {
        match indices::estimate_lower_index(phi, r, &grid) {
            Ok(e) => {
                rep.line(format!("index {}", r.name()), format!("[{}, {}] K = {} u0 = {}", cell(e.lo), cell(e.hi), cell(e.k), cell(e.u0)));
                rep.csv_rows.push(e.csv_fields());
                if job.audit {
                    if !e.infinite {
                        audit.check(format!("{}: lo certified on the grid", r.name()), indices::certified_on_grid(phi, r, e.lo, e.k, e.u0, &grid));
                    }
                    if let Some(w) = e.witness {
                        let ratio = phi.value_f64(w.a * w.u) / phi.value_f64(w.u);
                        audit.check(format!("{}: witness ratio recomputes", r.name()), rel_close(ratio, w.ratio, 1e-12));
                    }
                }
                out.push(estimate_json(&e));
            }
            Err(e) => {
                rep.line(format!("index {}", r.name()), e.to_string());
                out.push(json!({"regime": r.name(), "error": e.to_string()}));
                errors.push(e);
            }
        }
    }
    rep.set("results", json!({"estimates": out}));
    // a single requested regime, or every regime, failing is an error
    if !errors.is_empty() && (job.regime.is_some() || errors.len() == 3) {
        rep.fail_with(errors.remove(0).into());
    }
    if job.audit {
        audit.finish(&mut rep);
    }
    Ok(rep)
}

/// Recomputes the ratio a verdict reports at `u`.
fn verdict_ratio(phi: &OrliczFunction, cond: Condition, eps: f64, delta: f64, u: f64) -> f64 {
    let arg = match cond {
        Condition::Delta2 => 2.0 * u,
        Condition::DeltaEps => eps * u,
        Condition::Delta2Str => (1.0 + delta.max(1e-12)) * u,
    };
    phi.value_f64(arg) / phi.value_f64(u)
}

fn audit_verdict(a: &mut Audit, phi: &OrliczFunction, v: &ConditionVerdict) {
    let tag = format!("{} {}", v.condition.name(), v.regime.name());
    for w in &v.witness {
        if w.ratio.is_infinite() {
            let structural = phi.value(2.0 * w.u).is_inf() || phi.value_f64(w.u) == 0.0;
            a.check(format!("{tag}: structural witness at {}", w.u), structural);
        }
    }
    if v.condition == Condition::Delta2 {
        for w in v.witness.iter().filter(|w| w.ratio.is_finite()) {
            let r = verdict_ratio(phi, v.condition, 0.0, 0.0, w.u);
            a.check(format!("{tag}: ratio at {}", w.u), rel_close(r, w.ratio, 1e-12));
        }
    }
    for row in &v.table {
        for w in row.witness.iter().filter(|w| w.ratio.is_finite()) {
            let r = verdict_ratio(phi, v.condition, row.eps, row.delta, w.u);
            a.check(format!("{tag} eps {}: ratio at {}", row.eps, w.u), rel_close(r, w.ratio, 1e-12));
        }
    }
}

fn check_job(job: &JobSpec, cond: Option<Condition>) -> Result<Report, CliError> {
    let inp = inputs(job, false, false)?;
    let mut rep = start(job, &inp);
    let phi = &inp.phi;
    rep.set("certification", json!({"function": phi_json(phi)}));
    let conds = match cond {
        Some(c) => vec![c],
        None => vec![Condition::Delta2, Condition::DeltaEps, Condition::Delta2Str],
    };
    rep.csv_header = ["condition", "regime", "eps", "holds", "constant", "u0", "witness_points"].map(String::from).to_vec();
    let mut out = Vec::new();
    let mut audit = Audit::new();
    for &c in &conds {
        for r in job.regimes() {
            let v = match c {
                Condition::Delta2 => indices::check_delta2(phi, r),
                Condition::DeltaEps => indices::check_delta_epsilon(phi, r, &job.eps)?,
                Condition::Delta2Str => indices::check_delta_2str(phi, r, &job.eps)?,
            };
            let mut summary = format!("holds = {}", v.holds);
            if let Some(k) = v.k {
                summary.push_str(&format!(" K = {}", cell(k)));
            }
            if let Some(why) = &v.reason {
                summary.push_str(&format!(" ({why})"));
            }
            rep.line(format!("{} {}", c.name(), r.name()), summary);
            let base = |eps: String, holds: bool, constant: f64, u0: f64, w: usize| {
                vec![c.name().to_string(), r.name().to_string(), eps, holds.to_string(), cell(constant), cell(u0), w.to_string()]
            };
            if v.table.is_empty() {
                rep.csv_rows.push(base(String::new(), v.holds, v.k.unwrap_or(f64::NAN), v.u0.unwrap_or(f64::NAN), v.witness.len()));
            }
            for row in &v.table {
                rep.csv_rows.push(base(cell(row.eps), row.holds, row.delta, row.u0, row.witness.len()));
            }
            if job.audit {
                audit_verdict(&mut audit, phi, &v);
            }
            out.push(verdict_json(&v));
        }
    }
    rep.set("results", json!({"verdicts": out}));
    if job.audit {
        audit.finish(&mut rep);
    }
    Ok(rep)
}

fn witness_job(job: &JobSpec, kind: WitnessKind) -> Result<Report, CliError> {
    let inp = inputs(job, true, false)?;
    let mut rep = start(job, &inp);
    let cl = CLSpace::new(inp.space.clone().expect("space"), inp.phi.clone());
    rep.set("certification", certification(&cl, &job.eps)?);
    let b = match suite::build_bundle(&cl, kind, job.n, job.horizon) {
        Ok(b) => b,
        Err(e) => {
            failed(&mut rep, e);
            return Ok(rep);
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let zs = suite::sample_z(&mut rng, b.ys.len());
    let linf = match witness::verify_linf_copy(&cl, &b, &zs, 1e-6) {
        Ok(l) => l,
        Err(e) => {
            failed(&mut rep, e);
            return Ok(rep);
        }
    };
    let rows: Vec<Value> = b
        .log
        .iter()
        .map(|r| json!({"n": r.n, "label": r.label, "rel": r.rel.symbol(), "lhs": ext(r.lhs), "rhs": ext(r.rhs), "ok": r.ok}))
        .collect();
    rep.set(
        "results",
        json!({
            "kind": kind.name(),
            "N": job.n,
            "u": nums(&b.u),
            "measures": b.xs.iter().map(|x| num(x.support_measure())).collect::<Vec<_>>(),
            "sets": b.sets,
            "d": b.d.map(num),
            "modular_total": ext(b.modular_total),
            "blowups": b.blowups.iter().map(|&v| ext(v)).collect::<Vec<_>>(),
            "log_ok": b.log_ok(),
            "modular_ok": b.modular_ok,
            "blowup_ok": b.blowup_ok,
            "log": rows,
            "linf": {
                "tol": num(linf.tol),
                "disjoint": linf.disjoint,
                "y_norms": nums(&linf.y_norms),
                "y_modulars": linf.y_modulars.iter().map(|&v| ext(v)).collect::<Vec<_>>(),
                "y_truncation_bounds": nums(&linf.y_truncation_bounds),
                "total_norm": num(linf.total_norm),
                "window_ok": linf.window_ok,
                "truncation_ok": linf.truncation_ok,
                "z": linf.z_rows.iter().map(|z| json!({
                    "z": nums(&z.z),
                    "sup": num(z.sup),
                    "norm": num(z.norm),
                    "truncation_lower": num(z.truncation_lower),
                    "window_ok": z.window_ok,
                    "truncation_ok": z.truncation_ok,
                })).collect::<Vec<_>>(),
            },
        }),
    );
    rep.csv_header = ["n", "label", "rel", "lhs", "rhs", "ok"].map(String::from).to_vec();
    for r in &b.log {
        rep.csv_rows.push(vec![r.n.to_string(), r.label.into(), r.rel.symbol().into(), cell(r.lhs.to_f64()), cell(r.rhs.to_f64()), r.ok.to_string()]);
    }
    rep.line("kind", kind.name());
    rep.line("blocks", b.xs.len().to_string());
    rep.line("log rows", format!("{} ({})", b.log.len(), if b.log_ok() { "all hold" } else { "FAILED" }));
    rep.line("modular of x_total", cell(b.modular_total.to_f64()));
    rep.line("blow-ups > 1", b.blowup_ok.to_string());
    rep.line("y_m norms", linf.y_norms.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>().join(" "));
    rep.line("window [1-tol, 1]", linf.window_ok.to_string());
    rep.line("truncation bounds", linf.truncation_ok.to_string());
    if !(b.log_ok() && b.modular_ok && b.blowup_ok && linf.truncation_ok) {
        rep.fail_with(CliError::Failed("witness bundle does not verify".into()));
    }
    if job.audit {
        let mut a = Audit::new();
        for r in &b.log {
            a.check(format!("row {} {}", r.n, r.label), witness::recheck(&cl, r)?);
        }
        a.check("supports disjoint", b.disjoint());
        a.check("modular of x_total recomputes", ext_close(cl::modular(&cl, &b.x_total)?, b.modular_total, 1e-12));
        a.finish(&mut rep);
    }
    Ok(rep)
}

fn blowup_job(job: &JobSpec) -> Result<Report, CliError> {
    let inp = inputs(job, true, false)?;
    let mut rep = start(job, &inp);
    let space = inp.space.clone().expect("space");
    let phi = inp.phi.clone();
    let r = match witness::blowup_search(&space, &phi, job.target, job.horizon as f64) {
        Ok(r) => r,
        Err(e) => {
            failed(&mut rep, e);
            return Ok(rep);
        }
    };
    rep.set(
        "results",
        json!({
            "target": num(job.target),
            "ratio": num(r.ratio),
            "exceeded": r.exceeded,
            "a_measure": num(r.a_measure),
            "b_measure": num(r.b_measure),
            "samples": r.samples.iter().map(|s| json!([num(s.0), num(s.1)])).collect::<Vec<_>>(),
        }),
    );
    rep.csv_header = vec!["a_measure".into(), "ratio".into()];
    rep.csv_rows = r.samples.iter().map(|s| vec![cell(s.0), cell(s.1)]).collect();
    rep.line("best ratio", cell(r.ratio));
    rep.line("at measures", format!("{} and {}", cell(r.a_measure), cell(r.b_measure)));
    rep.line("exceeds target", r.exceeded.to_string());
    if !r.exceeded {
        rep.fail_with(CliError::NotFound(format!("ratio {} never exceeds {}", r.ratio, job.target)));
    }
    if job.audit && r.a_measure.is_finite() {
        let mut a = Audit::new();
        let cl = CLSpace::uncertified(space.clone(), phi.clone());
        let (s, t) = (r.a_measure, r.b_measure);
        let c = space.carrier();
        let mut norms = Vec::new();
        // each ‖χ‖ from 1/φ⁻¹(1/‖χ‖_E), checked against the Minkowski definition
        for (lo, hi) in [(0.0, s), (s, s + t), (0.0, s + t)] {
            let chi = SimpleVector::chi(c, lo, hi)?;
            let n = 1.0 / phi.inverse_f64(1.0 / space.norm_f64(&chi)?);
            let above = cl::modular(&cl, &chi.scale(1.0 / (n * (1.0 + 1e-9))))? <= ExtReal::Finite(1.0);
            let below = cl::modular(&cl, &chi.scale(1.0 / (n * (1.0 - 1e-9))))? > ExtReal::Finite(1.0);
            a.check(format!("norm of chi[{lo}, {hi}) is {n}"), above && below);
            norms.push(n);
        }
        let ratio = norms[2] / (norms[0] + norms[1]);
        a.check(format!("ratio {ratio} recomputes"), rel_close(ratio, r.ratio, 1e-9));
        let (na, nb) = (space.norm_f64(&SimpleVector::chi(c, 0.0, s)?)?, space.norm_f64(&SimpleVector::chi(c, s, s + t)?)?);
        a.check("B has half the E-norm of A", rel_close(nb, 0.5 * na, 1e-9));
        a.finish(&mut rep);
    }
    Ok(rep)
}

fn suite_job(job: &JobSpec) -> Report {
    let mut rep = Report::new("suite");
    rep.set("provenance", provenance(job));
    let outcomes = suite::run_all(job.seed, job.jobs);
    let results: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "id": o.id,
                "title": o.title,
                "pass": o.pass(),
                "notes": o.notes,
                "checks": o.checks.iter().map(|c| json!({"name": c.name, "ok": c.ok, "window": c.window})).collect::<Vec<_>>(),
            })
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.pass()).count();
    rep.set("results", json!({"criteria": results, "passed": passed, "total": outcomes.len()}));
    rep.csv_header = ["id", "title", "pass", "failed_checks"].map(String::from).to_vec();
    for o in &outcomes {
        rep.csv_rows.push(vec![o.id.to_string(), o.title.into(), o.pass().to_string(), o.failures().join("; ")]);
        rep.line(format!("{} [{:>2}]", if o.pass() { "PASS" } else { "FAIL" }, o.id), format!("{} ({:.2} s) {}", o.title, o.seconds, o.detail()));
    }
    rep.line("passed", format!("{passed} of {}", outcomes.len()));
    if passed < outcomes.len() {
        rep.fail_with(CliError::Failed(format!("{} criteria failed", outcomes.len() - passed)));
    }
    rep
}
