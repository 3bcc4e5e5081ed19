//! Reproducibility suite: fourteen criteria, each checked against
//! closed-form or brute-force oracles computed here, independently of the
//! library code under test.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clspace::cl::{self, CLSpace};
use clspace::indices::{self, GridSpec, Regime};
use clspace::spaces::{Carrier, InclusionClass, NormFlavor, SpaceDescriptor, SpaceKind, WeightRule};
use clspace::witness::{self, SequenceVariant, WitnessBundle, WitnessKind};
use clspace::{zoo, ExtReal, OrliczFunction, SimpleVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lemma;

const INF: f64 = f64::INFINITY;

/// Criterion ids and titles, in run order.
pub const CRITERIA: [(usize, &str); 14] = [
    (1, "power-function norms and F-norms on L1"),
    (2, "modular triangle inequality fails on L_1/4"),
    (3, "norm 1/2 with modular 1 for the plateau function"),
    (4, "characteristic-function norm formula"),
    (5, "lower-index brackets"),
    (6, "Delta-condition verdicts and witnesses"),
    (7, "capped Orlicz norms of characteristic functions"),
    (8, "quasi-modular axioms on certified spaces"),
    (9, "quasi-triangle ratios against the constant"),
    (10, "l-infinity witness bundles at N = 10"),
    (11, "quasi-triangle blow-up search"),
    (12, "sup bound in spaces inside L-infinity"),
    (13, "generalized-inverse composition clauses"),
    (14, "interleave partitions"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    /// Literal `[1−tol, 1]` norm window of the witness bundles.
    pub window: bool,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// Passes once the window checks are set aside.
    pub fn pass_outside_window(&self) -> bool {
        self.checks.iter().all(|c| c.ok || c.window)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect()
    }

    pub fn detail(&self) -> String {
        let mut s = self.notes.join("; ");
        let failed = self.failures();
        if !failed.is_empty() {
            if !s.is_empty() {
                s.push_str("; ");
            }
            s.push_str(&format!("failed: {}", failed.join(", ")));
        }
        s
    }

    /// One stdout line: verdict, id, title, runtime and detail.
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2} s): {}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.detail()
        )
    }
}

struct Log {
    checks: Vec<Check>,
    notes: Vec<String>,
}

impl Log {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check { name: name.into(), ok, window: false });
    }

    fn window(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check { name: name.into(), ok, window: true });
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn runtime(&mut self, start: Instant, limit: f64) {
        self.check(format!("runtime < {limit} s"), start.elapsed().as_secs_f64() < limit);
    }
}

type Res = Result<(), clspace::Error>;

/// Runs criterion `id` with its own generator seeded by `seed + id`.
pub fn run_criterion(id: usize, seed: u64) -> Outcome {
    let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown criterion", |c| c.1);
    let mut log = Log { checks: Vec::new(), notes: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let start = Instant::now();
    let res = match id {
        1 => c1(&mut rng, &mut log),
        2 => c2(&mut log),
        3 => c3(&mut log),
        4 => c4(&mut rng, &mut log),
        5 => c5(&mut log),
        6 => c6(&mut log),
        7 => c7(&mut log),
        8 => c8(&mut rng, &mut log),
        9 => c9(&mut rng, &mut log),
        10 => c10(&mut rng, &mut log),
        11 => c11(&mut log),
        12 => c12(&mut rng, &mut log),
        13 => c13(&mut rng, &mut log),
        14 => c14(&mut log),
        _ => Err(clspace::Error::Invalid(format!("no criterion {id}"))),
    };
    if let Err(e) = res {
        log.check(format!("error: {e}"), false);
    }
    Outcome { id, title, checks: log.checks, notes: log.notes, seconds: start.elapsed().as_secs_f64() }
}

/// Runs every criterion on up to `jobs` threads; results keep criterion order.
pub fn run_all(seed: u64, jobs: usize) -> Vec<Outcome> {
    let ids: Vec<usize> = CRITERIA.iter().map(|c| c.0).collect();
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Outcome>>> = Mutex::new(vec![None; ids.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, ids.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= ids.len() {
                    break;
                }
                let out = run_criterion(ids[i], seed);
                slots.lock().expect("suite slots")[i] = Some(out);
            });
        }
    });
    slots.into_inner().expect("suite slots").into_iter().map(|o| o.expect("every criterion ran")).collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn space(kind: SpaceKind) -> Result<SpaceDescriptor, clspace::Error> {
    SpaceDescriptor::new(kind)
}

fn lux(cl: &CLSpace, x: &SimpleVector) -> Result<f64, clspace::Error> {
    Ok(cl::luxemburg_norm(cl, x, cl::DEFAULT_TOL)?.norm)
}

fn rho(cl: &CLSpace, x: &SimpleVector) -> Result<f64, clspace::Error> {
    Ok(cl::modular(cl, x)?.to_f64())
}

fn signed<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let v = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Random steps `(lo, hi, v)` with gaps between them: whole indices from 1
/// on `ℕ`, squeezed into `[0, γ)` on a finite interval.
fn random_steps<R: Rng>(rng: &mut R, carrier: Carrier, max_v: f64) -> Vec<(f64, f64, f64)> {
    let k = rng.gen_range(1..=5);
    let mut steps = Vec::with_capacity(k);
    match carrier {
        Carrier::Counting => {
            let mut at = 1u64;
            for _ in 0..k {
                at += rng.gen_range(0..3);
                let len = rng.gen_range(1..6);
                steps.push((at as f64, (at + len) as f64, signed(rng, 0.1, max_v)));
                at += len;
            }
        }
        Carrier::Interval { gamma } => {
            let mut at = 0.0;
            for _ in 0..k {
                at += rng.gen_range(0.0..1.0);
                let len = rng.gen_range(0.1..2.0);
                steps.push((at, at + len, signed(rng, 0.1, max_v)));
                at += len;
            }
            if gamma.is_finite() {
                let s = gamma / (at + 0.5);
                for st in &mut steps {
                    *st = (st.0 * s, (st.1 * s).min(gamma), st.2);
                }
            }
        }
    }
    steps
}

fn random_vector<R: Rng>(rng: &mut R, carrier: Carrier, max_v: f64) -> Result<SimpleVector, clspace::Error> {
    SimpleVector::from_steps(carrier, &random_steps(rng, carrier, max_v))
}

fn c1(rng: &mut ChaCha8Rng, log: &mut Log) -> Res {
    let start = Instant::now();
    let carrier = Carrier::Interval { gamma: INF };
    let ps = [0.5, 1.0, 2.0, 3.0];
    let cls: Vec<CLSpace> =
        ps.iter().map(|&p| Ok(CLSpace::new(space(SpaceKind::Lp { p: 1.0, gamma: INF })?, zoo::power(p)))).collect::<Result<_, clspace::Error>>()?;
    let (mut bad, mut worst_l, mut worst_f) = (0usize, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let steps = random_steps(rng, carrier, 5.0);
        let x = SimpleVector::from_steps(carrier, &steps)?;
        for (cl, &p) in cls.iter().zip(&ps) {
            let integral: f64 = steps.iter().map(|s| (s.1 - s.0) * s.2.abs().powf(p)).sum();
            let l = lux(cl, &x)?;
            let f = cl::mazur_orlicz_f_norm(cl, &x, cl::DEFAULT_TOL)?.norm;
            let (wl, wf) = (integral.powf(1.0 / p), integral.powf(1.0 / (1.0 + p)));
            worst_l = worst_l.max((l - wl).abs());
            worst_f = worst_f.max((f - wf).abs());
            if !(close(l, wl, 1e-8) && close(f, wf, 1e-8)) {
                bad += 1;
            }
        }
    }
    log.note(format!("400 norms, max error {worst_l:.1e} (Luxemburg) and {worst_f:.1e} (F-norm)"));
    log.check("norms match closed forms within 1e-8", bad == 0);
    log.runtime(start, 5.0);
    Ok(())
}

fn c2(log: &mut Log) -> Res {
    let cl = CLSpace::uncertified(space(SpaceKind::Lp { p: 0.25, gamma: INF })?, zoo::square());
    let c = Carrier::Interval { gamma: INF };
    let x = SimpleVector::chi(c, 0.0, 1.0)?;
    let y = SimpleVector::chi(c, 1.0, 2.0)?;
    let mid = rho(&cl, &x.lin_comb(0.5, &y, 0.5)?)?;
    let sum = rho(&cl, &x)? + rho(&cl, &y)?;
    // (∫_0^2 (1/4)^{1/4})^4
    let oracle = (2.0 * 0.25f64.powf(0.25)).powi(4);
    log.note(format!("ρ(x/2 + y/2) = {mid}, ρ(x) + ρ(y) = {sum}"));
    log.check("ρ(x/2 + y/2) = 4", close(mid, 4.0, 1e-12) && close(mid, oracle, 1e-12));
    log.check("ρ(x) + ρ(y) = 2", sum == 2.0);
    log.check("triangle inequality fails", mid > sum);
    Ok(())
}

fn c3(log: &mut Log) -> Res {
    let cl = CLSpace::new(space(SpaceKind::Lp { p: 1.0, gamma: INF })?, zoo::plateau_linear());
    let chi = SimpleVector::chi(Carrier::Interval { gamma: INF }, 0.0, 1.0)?;
    let n = lux(&cl, &chi)?;
    let m = rho(&cl, &chi)?;
    log.note(format!("‖χ‖ = {n}, ρ(χ) = {m}"));
    log.check("norm 1/2", close(n, 0.5, 1e-8));
    log.check("modular 1", m == 1.0);
    Ok(())
}

/// `Σ_{n>N} 1/n²` by Euler–Maclaurin.
fn inv_square_tail(n: f64) -> f64 {
    1.0 / n - 0.5 / (n * n) + 1.0 / (6.0 * n * n * n) - 1.0 / (30.0 * n.powi(5))
}

/// `‖χ_A‖` in ces₂ by direct summation of the averages up to 2·10⁶ plus the
/// closed-form tail.
fn cesaro2_chi(set: &[u64]) -> f64 {
    const N: u64 = 2_000_000;
    let mut count = 0.0;
    let mut sum = 0.0;
    let mut it = set.iter().peekable();
    for n in 1..=N {
        while it.peek().is_some_and(|&&k| k == n) {
            count += 1.0;
            it.next();
        }
        let avg = count / n as f64;
        sum += avg * avg;
    }
    (sum + count * count * inv_square_tail(N as f64)).sqrt()
}

fn c4(rng: &mut ChaCha8Rng, log: &mut Log) -> Res {
    let phi = zoo::exp_minus_one();
    // 1/φ⁻¹(1/e)
    let formula = |e: f64| 1.0 / (1.0 / e).ln_1p();
    let mut bad = 0usize;
    let mut worst = 0.0f64;
    let mut total = 0usize;
    let mut compare = |got: f64, e: f64| {
        let want = formula(e);
        worst = worst.max((got - want).abs() / want.max(1.0));
        total += 1;
        if !close(got, want, 1e-8) {
            bad += 1;
        }
    };
    let line = Carrier::Interval { gamma: INF };
    for p in [1.0, 2.0] {
        let cl = CLSpace::uncertified(space(SpaceKind::Lp { p, gamma: INF })?, phi.clone());
        for _ in 0..20 {
            let mut at = 0.0;
            let mut steps = Vec::new();
            let mut mu = 0.0;
            for _ in 0..rng.gen_range(1..=3) {
                at += rng.gen_range(0.0..2.0);
                let len = rng.gen_range(0.01..5.0);
                steps.push((at, at + len, 1.0));
                mu += len;
                at += len;
            }
            compare(lux(&cl, &SimpleVector::from_steps(line, &steps)?)?, mu.powf(1.0 / p));
        }
    }
    let ces = CLSpace::uncertified(space(SpaceKind::Cesaro { p: 2.0 })?, phi.clone());
    let wl1 = CLSpace::uncertified(space(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Geometric { a: 2.0 } })?, phi);
    for _ in 0..20 {
        let mut set: Vec<u64> = (0..rng.gen_range(1..=8)).map(|_| rng.gen_range(1..=50)).collect();
        set.sort_unstable();
        set.dedup();
        let steps: Vec<(f64, f64, f64)> = set.iter().map(|&k| (k as f64, k as f64 + 1.0, 1.0)).collect();
        let chi = SimpleVector::from_steps(Carrier::Counting, &steps)?;
        compare(lux(&ces, &chi)?, cesaro2_chi(&set));
        compare(lux(&wl1, &chi)?, set.iter().map(|&k| 0.5f64.powi(k as i32)).sum());
    }
    log.note(format!("{total} sets over L1, L2, ces2 and geometric l1(w), max relative error {worst:.1e}"));
    log.check("‖χ_A‖ = 1/φ⁻¹(1/‖χ_A‖_E) within 1e-8", bad == 0);
    Ok(())
}

fn c5(log: &mut Log) -> Res {
    let start = Instant::now();
    let grid = GridSpec::default();
    let e = indices::estimate_lower_index(&zoo::log1p(), Regime::Infinity, &grid)?;
    log.note(format!("ln(1+u) at infinity: hi = {:.4}", e.hi));
    log.check("ln(1+u) at infinity: hi <= 0.05", e.hi <= 0.05);
    let e = indices::estimate_lower_index(&zoo::inv_log_recip(), Regime::Zero, &grid)?;
    log.note(format!("1/ln(1+1/u) at zero: hi = {:.4}", e.hi));
    log.check("1/ln(1+1/u) at zero: hi <= 0.05", e.hi <= 0.05);
    let mut worst = 0.0f64;
    for p in [0.5, 1.0, 2.0, 3.0] {
        for r in [Regime::All, Regime::Zero, Regime::Infinity] {
            let e = indices::estimate_lower_index(&zoo::power(p), r, &grid)?;
            worst = worst.max(p - e.lo).max(e.hi - p);
            log.check(
                format!("u^{p} {}: [{}, {}] holds p within 0.01", r.name(), e.lo, e.hi),
                e.lo <= p && p <= e.hi && p - e.lo <= 0.01 && e.hi - p <= 0.01,
            );
        }
    }
    log.note(format!("power brackets within {worst:.1e} of p"));
    log.runtime(start, 30.0);
    Ok(())
}

/// Re-evaluates `φ(εu)/φ(u)` at the witness points of the first failing row.
fn eps_witness_ok(phi: &OrliczFunction, v: &clspace::ConditionVerdict) -> (bool, f64) {
    let Some(row) = v.table.iter().find(|r| !r.holds) else { return (false, 0.0) };
    let mut ok = !row.witness.is_empty();
    let mut top = 0.0f64;
    for w in &row.witness {
        let r = phi.value_f64(row.eps * w.u) / phi.value_f64(w.u);
        ok &= close(r, w.ratio, 1e-12);
        top = top.max(r);
    }
    (ok, top)
}

fn c6(log: &mut Log) -> Res {
    let eps = [0.5, 0.25, 0.125];
    let staircase = zoo::dyadic_staircase();
    let v3 = indices::check_delta_epsilon(&staircase, Regime::Infinity, &eps)?;
    let (ok3, top3) = eps_witness_ok(&staircase, &v3);
    log.check("staircase fails Delta_eps at infinity", !v3.holds);
    log.check("staircase witness re-verifies", ok3);
    log.check("staircase witness ratio reaches 0.99", top3 >= 0.99);
    // φ(2^{n−1}) = n, so φ(2^{n−1−m})/φ(2^{n−1}) = (n−m)/n
    let mut nodes3 = true;
    for m in 1..=3 {
        for n in (m + 1)..=60 {
            let u = 2f64.powi(n - 1);
            let r = staircase.value_f64(u / 2f64.powi(m)) / staircase.value_f64(u);
            nodes3 &= close(r, (n - m) as f64 / n as f64, 1e-12);
        }
    }
    log.check("staircase node ratios (n-m)/n", nodes3);

    let harmonic = zoo::harmonic_dyadic();
    let v4 = indices::check_delta_epsilon(&harmonic, Regime::Zero, &eps)?;
    let (ok4, top4) = eps_witness_ok(&harmonic, &v4);
    log.check("harmonic fails Delta_eps at zero", !v4.holds);
    log.check("harmonic witness re-verifies", ok4);
    log.check("harmonic witness ratio reaches 0.99", top4 >= 0.99);
    // φ(2^{1−n}) = 1/n, so φ(2^{1−n−m})/φ(2^{1−n}) = n/(n+m)
    let mut nodes4 = true;
    for m in 1..=3 {
        for n in 1..=60 {
            let u = 2f64.powi(1 - n);
            let r = harmonic.value_f64(u / 2f64.powi(m)) / harmonic.value_f64(u);
            nodes4 &= close(r, n as f64 / (n + m) as f64, 1e-12);
        }
    }
    log.check("harmonic node ratios n/(n+m)", nodes4);

    let d2 = indices::check_delta2(&zoo::square(), Regime::All);
    let k = d2.k.unwrap_or(f64::NAN);
    log.note(format!("witness ratios up to {top3:.4} and {top4:.4}; u^2 has K = {k}"));
    log.check("u^2 satisfies Delta_2 with K = 4", d2.holds && close(k, 4.0, 1e-12));
    Ok(())
}

fn c7(log: &mut Log) -> Res {
    let luxemburg = space(SpaceKind::OrliczCapped { flavor: NormFlavor::Luxemburg })?;
    let amemiya = space(SpaceKind::OrliczCapped { flavor: NormFlavor::Amemiya })?;
    for mu in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let chi = SimpleVector::chi(luxemburg.carrier(), 0.0, mu)?;
        let l = luxemburg.norm_f64(&chi)?;
        let a = amemiya.norm_f64(&chi)?;
        let want_a = if mu <= 1.0 { 1.0 + mu } else { 2.0 * mu.sqrt() };
        log.check(format!("mu = {mu}: Luxemburg {l} = max(1, sqrt mu)"), l == 1f64.max(mu.sqrt()));
        log.check(format!("mu = {mu}: Amemiya {a} = {want_a}"), a == want_a);
    }
    Ok(())
}

/// Certified pairs spanning the three inclusion classes.
fn certified_pairs() -> Result<Vec<(&'static str, CLSpace)>, clspace::Error> {
    let pairs = vec![
        ("L1 u^2", SpaceKind::Lp { p: 1.0, gamma: INF }, zoo::square()),
        ("L1/2 e^u-1", SpaceKind::Lp { p: 0.5, gamma: INF }, zoo::exp_minus_one()),
        ("L1[0,1) u^2", SpaceKind::Lp { p: 1.0, gamma: 1.0 }, zoo::square()),
        ("L2[0,1) u^1/2", SpaceKind::Lp { p: 2.0, gamma: 1.0 }, zoo::power(0.5)),
        ("l2 u^2", SpaceKind::SeqLp { p: 2.0 }, zoo::square()),
        ("l1 u^1/2", SpaceKind::SeqLp { p: 1.0 }, zoo::power(0.5)),
    ];
    pairs.into_iter().map(|(name, kind, phi)| Ok((name, CLSpace::new(space(kind)?, phi)))).collect()
}

fn le(a: f64, b: f64) -> bool {
    a <= b + 1e-12 * b.abs().max(1.0)
}

fn c8(rng: &mut ChaCha8Rng, log: &mut Log) -> Res {
    let start = Instant::now();
    let trials = 1000;
    let pairs = certified_pairs()?;
    let classes: Vec<u8> = pairs.iter().map(|p| p.1.space.class.number()).collect();
    log.check("pairs span classes 1, 2 and 3", (1..=3).all(|c| classes.contains(&c)));
    for (name, cl) in &pairs {
        log.check(format!("{name} certified"), cl.is_certified());
        let carrier = cl.space.carrier();
        let m = cl.space.c_e;
        let mut table = Vec::new();
        for eps in [0.5, 0.1, 0.01] {
            for a in [0.5, 1.0, 5.0] {
                table.push((eps, a, cl::condition_v_constant(cl, eps, a)?));
            }
        }
        let mut fails = [0usize; 4];
        for _ in 0..trials {
            let x = random_vector(rng, carrier, 3.0)?;
            let y = random_vector(rng, carrier, 3.0)?;
            if cl::modular(cl, &x.scale(-1.0))? != cl::modular(cl, &x)? {
                fails[0] += 1;
            }
            let (l1, l2) = (rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0));
            let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
            if !le(rho(cl, &x.scale(lo))?, rho(cl, &x.scale(hi))?) {
                fails[1] += 1;
            }
            let alpha = rng.gen_range(0.0..=1.0);
            let z = x.lin_comb(alpha, &y, 1.0 - alpha)?;
            if !le(rho(cl, &z)?, m * (rho(cl, &x)? + rho(cl, &y)?)) {
                fails[2] += 1;
            }
            let (eps, big_a, v) = &table[rng.gen_range(0..table.len())];
            let mut w = x.clone();
            while !(rho(cl, &w)? <= *big_a) {
                w = w.scale(0.5);
            }
            let a: f64 = rng.gen_range(1e-4..=1.0);
            if !le(rho(cl, &w.scale(a))?, v.k * a.powf(v.p) * rho(cl, &w)? + eps) {
                fails[3] += 1;
            }
        }
        for (ax, f) in ["ii", "iii", "iv", "v"].iter().zip(fails) {
            log.check(format!("{name} axiom ({ax}): {f} of {trials} trials fail"), f == 0);
        }
    }
    log.note(format!("{} pairs x 4 axioms x {trials} trials", pairs.len()));
    log.runtime(start, 60.0);
    Ok(())
}

fn c9(rng: &mut ChaCha8Rng, log: &mut Log) -> Res {
    let trials = 1000;
    let mut notes = Vec::new();
    for (name, cl) in certified_pairs()? {
        let c = cl::space_quasi_triangle_constant(&cl)?;
        let carrier = cl.space.carrier();
        let mut top = 0.0f64;
        for _ in 0..trials {
            let x = random_vector(rng, carrier, 3.0)?;
            let y = random_vector(rng, carrier, 3.0)?;
            let r = lux(&cl, &x.add(&y)?)? / (lux(&cl, &x)? + lux(&cl, &y)?);
            top = top.max(r);
        }
        notes.push(format!("{name} {top:.3}/{c:.3}"));
        log.check(format!("{name}: max ratio {top} <= C = {c}"), top <= c * (1.0 + 1e-9));
    }
    log.note(format!("max ratio/C: {}", notes.join(", ")));
    Ok(())
}

/// Test vectors for the copy map: ones, the first unit vector, a geometric
/// sequence and seven random sign patterns.
pub fn sample_z<R: Rng>(rng: &mut R, m: usize) -> Vec<Vec<f64>> {
    let mut zs = vec![vec![1.0; m], (0..m).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect()];
    zs.push((0..m).map(|i| 0.5f64.powi(i as i32)).collect());
    for _ in 0..7 {
        zs.push((0..m).map(|_| rng.gen_range(-1.0..=1.0)).collect());
    }
    zs
}

fn witness_instances() -> Result<Vec<(WitnessKind, CLSpace)>, clspace::Error> {
    let l1 = || space(SpaceKind::Lp { p: 1.0, gamma: INF });
    let geo = || space(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Geometric { a: 2.0 } });
    Ok(vec![
        (WitnessKind::NonatomicInfinity, CLSpace::new(l1()?, zoo::exp_minus_one())),
        (WitnessKind::NonatomicZero, CLSpace::new(l1()?, zoo::exp_recip_steep(100.0))),
        (WitnessKind::Plateau, CLSpace::new(space(SpaceKind::Cesaro { p: 2.0 })?, zoo::shifted_identity())),
        (
            WitnessKind::BoundedUnits,
            CLSpace::new(
                space(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Alternating })?,
                zoo::exp_recip_steep(100.0),
            ),
        ),
        (WitnessKind::Capped, CLSpace::new(geo()?, zoo::square_capped())),
        (WitnessKind::VanishingUnits, CLSpace::new(geo()?, zoo::exp_minus_one())),
    ])
}

/// Builds the bundle of `kind` at depth `n`.
pub fn build_bundle(cl: &CLSpace, kind: WitnessKind, n: usize, horizon: u64) -> Result<WitnessBundle, clspace::Error> {
    match kind {
        WitnessKind::NonatomicInfinity => witness::build_nonatomic_witness(cl, n),
        WitnessKind::NonatomicZero => witness::build_nonatomic_zero_witness(cl, n),
        k => {
            let v = SequenceVariant::parse(k.name()).expect("sequence kinds parse");
            witness::build_sequence_witness(cl, v, n, horizon)
        }
    }
}

fn c10(rng: &mut ChaCha8Rng, log: &mut Log) -> Res {
    let start = Instant::now();
    let n = 10;
    let mut worst_y = 1.0f64;
    for (kind, cl) in witness_instances()? {
        let name = kind.name();
        let b = build_bundle(&cl, kind, n, witness::GREEDY_HORIZON)?;
        let mut rows_ok = !b.log.is_empty();
        for r in &b.log {
            rows_ok &= r.ok && witness::recheck(&cl, r)?;
        }
        log.check(format!("{name}: {} log rows re-verify", b.log.len()), rows_ok);
        let total = rho(&cl, &b.x_total)?;
        log.check(format!("{name}: modular of x_total {total:.3e} <= 1/2"), total <= 0.5 + 1e-8);
        let mut blow = true;
        for k in 1..=n {
            blow &= cl::modular(&cl, &b.x_total.scale(1.0 + 1.0 / k as f64))? > ExtReal::Finite(1.0);
        }
        log.check(format!("{name}: modular((1+1/n) x_total) > 1 for n <= {n}"), blow);
        let zs = sample_z(rng, b.ys.len());
        let rep = witness::verify_linf_copy(&cl, &b, &zs, 1e-6)?;
        log.check(format!("{name}: supports disjoint"), rep.disjoint);
        log.check(format!("{name}: copy map within truncation bounds on {} z", zs.len()), rep.truncation_ok);
        let ymin = rep.y_norms.iter().fold(INF, |m, &v| m.min(v));
        worst_y = worst_y.min(ymin);
        log.window(format!("{name}: all |y_m| in [1-1e-6, 1] (min {ymin:.4})"), rep.window_ok);
    }
    log.note(format!("smallest |y_m| = {worst_y:.4}, bounded below by max S_m/(max S_m + 1) at this depth"));
    log.runtime(start, 120.0);
    Ok(())
}

fn c11(log: &mut Log) -> Res {
    let l1 = space(SpaceKind::Lp { p: 1.0, gamma: INF })?;
    let horizon = witness::GREEDY_HORIZON as f64;
    let r = witness::blowup_search(&l1, &zoo::log1p(), 10.0, horizon)?;
    // ‖χ_A‖ = 1/φ⁻¹(1/μ(A)) with φ⁻¹(v) = e^v − 1
    let n = |m: f64| 1.0 / (1.0 / m).exp_m1();
    let (s, t) = (r.a_measure, r.b_measure);
    let oracle = n(s + t) / (n(s) + n(t));
    log.note(format!("ln(1+u): ratio {:.3e} at mu(A) = {s:.3e}", r.ratio));
    log.check("ln(1+u): ratio exceeds 10", r.exceeded && r.ratio > 10.0);
    log.check("ln(1+u): mu(B) = mu(A)/2", close(t, 0.5 * s, 1e-12));
    log.check("ln(1+u): ratio matches closed form", close(r.ratio, oracle, 1e-6));
    let r = witness::blowup_search(&l1, &zoo::square(), 2.0, horizon)?;
    // sqrt(3s/2)/(sqrt s + sqrt(s/2)) for every s
    let flat = 1.5f64.sqrt() / (1.0 + 0.5f64.sqrt());
    log.note(format!("u^2: ratio {:.4}", r.ratio));
    log.check("u^2: ratio stays below 2", !r.exceeded && r.ratio <= 2.0);
    log.check("u^2: every sample matches closed form", !r.samples.is_empty() && r.samples.iter().all(|s| close(s.1, flat, 1e-8)));
    Ok(())
}

fn c12(rng: &mut ChaCha8Rng, log: &mut Log) -> Res {
    // (name, space, φ, a_E, φ⁻¹(1/a_E)), all closed forms
    let cases = [
        ("l2 u^2", SpaceKind::SeqLp { p: 2.0 }, zoo::square(), 1.0, 1.0),
        ("l1 u^1/2", SpaceKind::SeqLp { p: 1.0 }, zoo::power(0.5), 1.0, 1.0),
        (
            "l2(2^n) e^u-1",
            SpaceKind::WeightedLp { p: 2.0, weight: WeightRule::Geometric { a: 0.5 } },
            zoo::exp_minus_one(),
            2f64.sqrt(),
            (1.0 / 2f64.sqrt()).ln_1p(),
        ),
        ("l1 capped u^2", SpaceKind::SeqLp { p: 1.0 }, zoo::square_capped(), 1.0, 1.0),
    ];
    let per = 250;
    let mut top = 0.0f64;
    for (name, kind, phi, a_e, bound) in cases {
        let cl = CLSpace::new(space(kind)?, phi);
        log.check(format!("{name}: class 3"), cl.space.class == InclusionClass::InsideLinf);
        log.check(format!("{name}: a_E = {a_e}"), close(cl.space.a_e.to_f64(), a_e, 1e-12));
        let (mut bad, mut skipped) = (0usize, 0usize);
        for i in 0..per {
            let x = random_vector(rng, Carrier::Counting, 5.0)?;
            let norm = lux(&cl, &x)?;
            let f = if i % 10 == 0 { 1.0 } else { rng.gen_range(0.5..1.0) };
            let x = x.scale(f / norm);
            if rho(&cl, &x)? > 1.0 {
                skipped += 1;
                continue;
            }
            top = top.max(x.sup_abs() / bound);
            if x.sup_abs() > bound + 1e-10 {
                bad += 1;
            }
        }
        log.check(format!("{name}: {bad} violations, {skipped} skipped of {per}"), bad == 0 && skipped == 0);
    }
    log.note(format!("{} vectors, max sup/bound = {top:.6}", 4 * per));
    Ok(())
}

fn c13(rng: &mut ChaCha8Rng, log: &mut Log) -> Res {
    let mut violations = Vec::new();
    let pow2: Vec<f64> = (-20..=20).map(|k| 2f64.powi(k)).collect();
    for (name, phi) in zoo::lemma_zoo() {
        let strict = name != "plateau_linear";
        let extra: Vec<f64> = match name {
            "dyadic_staircase" | "harmonic_dyadic" => pow2.clone(),
            "plateau_linear" => vec![1.0, 1.5, 2.0],
            _ => vec![1.0],
        };
        let node_values: Vec<(f64, f64)> = match name {
            "dyadic_staircase" => (1..=40).map(|n| (0.0, n as f64)).collect(),
            "harmonic_dyadic" => (1..=40).map(|n| (0.0, 1.0 / n as f64)).collect(),
            _ => vec![(0.0, 1.0)],
        };
        let us = lemma::sample_points(&phi, &extra);
        let vs = lemma::value_points(&phi, &node_values);
        violations.extend(lemma::check_clauses(&phi, strict, &us, &vs).into_iter().map(|v| (name.to_string(), v)));
    }
    let mut non_strict = 0;
    for i in 0..100 {
        let f = lemma::PlShape::random(rng).build();
        non_strict += usize::from(!f.strict);
        let us = lemma::sample_points(&f.phi, &f.nodes.iter().map(|n| n.0).collect::<Vec<_>>());
        let vs = lemma::value_points(&f.phi, &f.nodes);
        violations.extend(lemma::check_clauses(&f.phi, f.strict, &us, &vs).into_iter().map(|v| (format!("random #{i}"), v)));
    }
    log.note(format!("8 zoo functions and 100 random piecewise-linear ({non_strict} with flats)"));
    if let Some((who, v)) = violations.first() {
        log.note(format!("first violation: {who} clause ({}) at {}: {}", v.clause, v.at, v.detail));
    }
    log.check(format!("{} clause violations", violations.len()), violations.is_empty());
    Ok(())
}

fn c14(log: &mut Log) -> Res {
    let v2 = |k: usize| k.trailing_zeros() as usize;
    let mut bad = 0usize;
    let mut cases = 0usize;
    for n in 1..=64 {
        for m in 1..=n {
            cases += 1;
            let sets = witness::interleave(n, m)?;
            let mut seen = vec![0u32; n + 1];
            let mut ok = sets.len() == m;
            for (i, s) in sets.iter().enumerate() {
                let want: Vec<usize> = (1..=n).filter(|&k| v2(k) == i).collect();
                ok &= *s == want;
                for &k in s {
                    seen[k] += 1;
                }
            }
            // the unassigned remainder is {k : v₂(k) ≥ M}
            ok &= (1..=n).all(|k| seen[k] == u32::from(v2(k) < m));
            if !ok {
                bad += 1;
            }
        }
    }
    log.note(format!("{cases} (N, M) pairs"));
    log.check("S_m = {k : v2(k) = m-1}, disjoint, remainder {v2(k) >= M}", bad == 0);
    Ok(())
}
