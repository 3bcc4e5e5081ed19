//! Lower Matuszewska–Orlicz indices and the Δ₂, Δ_ε, Δ_{2-str} growth
//! conditions, all certified on explicit grids.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extreal::Finite;
use crate::num;
use crate::orlicz::OrliczFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Zero,
    Infinity,
    All,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Zero => "zero",
            Regime::Infinity => "inf",
            Regime::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Regime> {
        match s {
            "zero" | "0" => Some(Regime::Zero),
            "inf" | "infinity" => Some(Regime::Infinity),
            "all" => Some(Regime::All),
            _ => None,
        }
    }
}

/// `u` log-spaced over `[u_min, u_max]` clipped to the regime, `a` log-spaced
/// over `[a_min, 1]`, `points` per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub u_min: f64,
    pub u_max: f64,
    pub a_min: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> GridSpec {
        GridSpec { u_min: 1e-8, u_max: 1e8, a_min: 1e-6, points: 512 }
    }
}

/// Step of the descending candidate list for `lo`.
pub const CANDIDATE_STEP: f64 = 0.01;
/// Largest admissible `K` when certifying `lo`.
pub const K_CAP: f64 = 1e9;
const REL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexWitness {
    pub u: f64,
    pub a: f64,
    /// `φ(au)/φ(u)`
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexEstimate {
    pub regime: Regime,
    /// Largest candidate `p` with `φ(au) ≤ K a^p φ(u)` on every grid point.
    pub lo: f64,
    /// Upper estimate from the tail ratios extrapolated to the regime's end.
    pub hi: f64,
    /// Constant certifying `lo`.
    pub k: f64,
    /// Threshold: upper end of the `u` range for `Zero`, lower end for
    /// `Infinity`, unused (0) for `All`.
    pub u0: f64,
    /// Literal infimum of `ln(φ(au)/φ(u))/ln a` over the grid.
    pub raw_hi: f64,
    pub grid: GridSpec,
    pub witness: Option<IndexWitness>,
    /// The index is infinite (`lo` certified arbitrarily large).
    pub infinite: bool,
}

impl IndexEstimate {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn csv_header() -> [&'static str; 8] {
        ["regime", "lo", "hi", "K", "u0", "witness_u", "witness_a", "ratio"]
    }

    pub fn csv_fields(&self) -> Vec<String> {
        let (wu, wa, wr) = match self.witness {
            Some(w) => (format!("{}", w.u), format!("{}", w.a), format!("{}", w.ratio)),
            None => (String::new(), String::new(), String::new()),
        };
        vec![
            self.regime.name().to_string(),
            format!("{}", self.lo),
            format!("{}", self.hi),
            format!("{}", self.k),
            format!("{}", self.u0),
            wu,
            wa,
            wr,
        ]
    }
}

/// `Some(φ(u))` when `φ(u)` is a positive normal float.
fn positive_value(phi: &OrliczFunction, u: f64) -> Option<f64> {
    match phi.value(u) {
        Finite(v) if v >= f64::MIN_POSITIVE && v.is_finite() => Some(v),
        _ => None,
    }
}

/// `Some(φ(u))` when `φ(u)` is 0 or a positive normal float; subnormal
/// values are too coarse for ratios.
fn finite_value(phi: &OrliczFunction, u: f64) -> Option<f64> {
    match phi.value(u) {
        Finite(v) if (v == 0.0 || v >= f64::MIN_POSITIVE) && v.is_finite() => Some(v),
        _ => None,
    }
}

struct RatioTable {
    u: Vec<f64>,
    a: Vec<f64>,
    /// `r[i][j] = φ(a_j u_i)/φ(u_i)`, `NaN` where `u_i` is not a valid base point
    r: Vec<Vec<f64>>,
}

fn ratio_table(phi: &OrliczFunction, us: Vec<f64>, grid: &GridSpec) -> RatioTable {
    let a = num::log_grid(grid.a_min, 1.0, grid.points);
    let r = us
        .iter()
        .map(|&u| match positive_value(phi, u) {
            Some(fu) => a.iter().map(|&aj| finite_value(phi, aj * u).map_or(f64::NAN, |v| v / fu)).collect(),
            None => vec![f64::NAN; a.len()],
        })
        .collect();
    RatioTable { u: us, a, r }
}

impl RatioTable {
    fn valid_rows(&self) -> usize {
        self.r.iter().filter(|row| !row[0].is_nan()).count()
    }

    /// `(inf ln r / ln a, argmin)` over `a < 1`.
    fn raw_hi(&self) -> (f64, Option<IndexWitness>) {
        let mut best = f64::INFINITY;
        let mut witness = None;
        for (i, row) in self.r.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                let a = self.a[j];
                if r.is_nan() || a >= 1.0 || r <= 0.0 {
                    continue;
                }
                let v = num::ln(r) / num::ln(a);
                if v < best {
                    best = v;
                    witness = Some(IndexWitness { u: self.u[i], a, ratio: r });
                }
            }
        }
        (best, witness)
    }

    /// `max(1, sup r a^{−p})`
    fn k_for(&self, p: f64) -> f64 {
        let mut m: f64 = 0.0;
        for row in &self.r {
            for (j, &r) in row.iter().enumerate() {
                if r > 0.0 {
                    m = num::max(m, num::ln(r) - p * num::ln(self.a[j]));
                }
            }
        }
        num::exp(m)
    }

    /// Extrapolates each column `a ≤ √a_min` to the asymptote via a
    /// least-squares line in `s = 1/|ln u|` over the half of the rows
    /// nearest to it; `rows` lists those row indices.
    fn extrapolated_hi(&self, rows: &[usize]) -> f64 {
        let a_cut = num::sqrt(self.a[0]);
        let mut hi = f64::INFINITY;
        for (j, &a) in self.a.iter().enumerate() {
            if a > a_cut {
                break;
            }
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|&&i| !self.r[i][j].is_nan())
                .map(|&i| (1.0 / num::abs(num::ln(self.u[i])), self.r[i][j]))
                .collect();
            let Some(c) = intercept(&pts) else { continue };
            let c = c.clamp(0.0, 1.0);
            let h = if c <= 0.0 { f64::INFINITY } else { num::max(0.0, num::ln(c) / num::ln(a)) };
            hi = num::min(hi, h);
        }
        hi
    }
}

/// Intercept of the least-squares line through `pts`.
fn intercept(pts: &[(f64, f64)]) -> Option<f64> {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return pts.first().map(|p| p.1);
    }
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in pts {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx <= 0.0 {
        return Some(my);
    }
    Some(my - sxy / sxx * mx)
}

fn degenerate(regime: Regime) -> Error {
    Error::DegenerateRegime(format!("φ is identically 0 or ∞ on the {} regime grid", regime.name()))
}

/// Largest `p` from the descending candidate list `hi, hi − 0.01, ..., 0`
/// with `K(p) ≤ K_CAP`. `K(p)` is non-decreasing in `p`, so the scan is a
/// bisection over the list.
fn certify_lo(table: &RatioTable, hi: f64) -> (f64, f64) {
    let steps = num::floor(hi / CANDIDATE_STEP) as usize;
    let candidate = |j: usize| if j > steps { 0.0 } else { hi - j as f64 * CANDIDATE_STEP };
    if table.k_for(hi) <= K_CAP {
        return (hi, table.k_for(hi));
    }
    // invariant: candidate(bad) fails, candidate(good) passes
    let (mut bad, mut good) = (0usize, steps + 1);
    while good - bad > 1 {
        let mid = (bad + good) / 2;
        if table.k_for(candidate(mid)) <= K_CAP {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let p = candidate(good);
    (p, table.k_for(p))
}

fn infinite_estimate(regime: Regime, u0: f64, grid: GridSpec) -> IndexEstimate {
    IndexEstimate {
        regime,
        lo: f64::INFINITY,
        hi: f64::INFINITY,
        k: 1.0,
        u0,
        raw_hi: f64::INFINITY,
        grid,
        witness: None,
        infinite: true,
    }
}

/// Brackets the lower Matuszewska–Orlicz index of `phi` in `regime`.
pub fn estimate_lower_index(phi: &OrliczFunction, regime: Regime, grid: &GridSpec) -> Result<IndexEstimate> {
    let (a_phi, b_phi) = (phi.a_phi(), phi.b_phi().to_f64());
    if grid.points < 4 || !(grid.u_min > 0.0 && grid.u_min < grid.u_max && grid.a_min > 0.0 && grid.a_min < 1.0) {
        return Err(Error::Invalid("grid needs 0 < u_min < u_max, 0 < a_min < 1, points ≥ 4".into()));
    }
    if phi.is_degenerate() {
        return Err(degenerate(regime));
    }
    let n = grid.points;
    match regime {
        Regime::Zero => {
            let u0 = num::min(1.0, b_phi);
            if a_phi > 0.0 {
                return Ok(infinite_estimate(regime, u0, *grid));
            }
            if u0 <= grid.u_min {
                return Err(degenerate(regime));
            }
            let table = ratio_table(phi, num::log_grid(grid.u_min, u0, n), grid);
            if table.valid_rows() == 0 {
                return Err(degenerate(regime));
            }
            let (raw_hi, witness) = table.raw_hi();
            let near: Vec<usize> = (0..n / 2).collect();
            let hi = table.extrapolated_hi(&near);
            Ok(finish(regime, table, hi, raw_hi, witness, u0, grid))
        }
        Regime::Infinity => {
            if b_phi.is_finite() {
                // only u = b matters once u0 may be taken arbitrarily close to b
                let us = if phi.phi_at_b().is_finite() {
                    vec![b_phi]
                } else {
                    (1..=52).map(|k| b_phi * (1.0 - num::powf(2.0, -(k as f64)))).collect()
                };
                let table = ratio_table(phi, us, grid);
                if table.valid_rows() == 0 {
                    return Err(degenerate(regime));
                }
                let (raw_hi, witness) = table.raw_hi();
                return Ok(finish(regime, table, num::max(raw_hi, 0.0), raw_hi, witness, b_phi, grid));
            }
            let u0 = num::max(1.0, 2.0 * a_phi);
            if u0 >= grid.u_max {
                return Err(degenerate(regime));
            }
            let table = ratio_table(phi, num::log_grid(u0, grid.u_max, n), grid);
            if table.valid_rows() == 0 {
                return Err(degenerate(regime));
            }
            let (raw_hi, witness) = table.raw_hi();
            let near: Vec<usize> = (n - n / 2..n).collect();
            let hi = table.extrapolated_hi(&near);
            Ok(finish(regime, table, hi, raw_hi, witness, u0, grid))
        }
        Regime::All => {
            let lo_u = if a_phi > 0.0 { num::max(grid.u_min, a_phi * (1.0 + 1e-9)) } else { grid.u_min };
            let hi_u = num::min(grid.u_max, b_phi);
            if !(lo_u < hi_u) {
                return Err(degenerate(regime));
            }
            let table = ratio_table(phi, num::log_grid(lo_u, hi_u, n), grid);
            if table.valid_rows() == 0 {
                return Err(degenerate(regime));
            }
            let (raw_hi, witness) = table.raw_hi();
            let mut hi = raw_hi;
            for sub in [Regime::Zero, Regime::Infinity] {
                if let Ok(e) = estimate_lower_index(phi, sub, grid) {
                    hi = num::min(hi, e.hi);
                }
            }
            Ok(finish(regime, table, hi, raw_hi, witness, 0.0, grid))
        }
    }
}

fn finish(
    regime: Regime,
    table: RatioTable,
    hi: f64,
    raw_hi: f64,
    witness: Option<IndexWitness>,
    u0: f64,
    grid: &GridSpec,
) -> IndexEstimate {
    let hi = num::max(hi, 0.0);
    if hi.is_infinite() {
        // certify the largest power of two up to 2^10
        let mut lo = 0.0;
        let mut k = table.k_for(0.0);
        for e in 0..=10 {
            let p = num::powf(2.0, e as f64);
            let kp = table.k_for(p);
            if kp > K_CAP {
                break;
            }
            lo = p;
            k = kp;
        }
        return IndexEstimate { regime, lo, hi, k, u0, raw_hi, grid: *grid, witness, infinite: true };
    }
    let (lo, k) = certify_lo(&table, hi);
    // outward rounding
    let hi = hi + REL_SLACK * num::max(1.0, hi);
    IndexEstimate { regime, lo, hi, k, u0, raw_hi, grid: *grid, witness, infinite: false }
}

/// Checks `φ(au) ≤ K a^p φ(u)` on the regime's grid below (`Zero`) or above
/// (`Infinity`) the threshold `u0`.
pub fn certified_on_grid(phi: &OrliczFunction, regime: Regime, p: f64, k: f64, u0: f64, grid: &GridSpec) -> bool {
    let us = match regime {
        Regime::Zero => num::log_grid(num::min(grid.u_min, u0), u0, grid.points),
        Regime::Infinity => num::log_grid(u0, num::max(grid.u_max, u0), grid.points),
        Regime::All => num::log_grid(grid.u_min, grid.u_max, grid.points),
    };
    let table = ratio_table(phi, us, grid);
    table.k_for(p) <= k * (1.0 + REL_SLACK)
}

/// Widens the domain of a certified index inequality.
///
/// `Zero`, `a_φ > 0`: `(u/a_φ)^p` with `u = max(u0, u1)`.
/// `Zero`, `a_φ = 0`: `max(K, (u1/u0)^p, K₂)`, `K₂` the grid sup over
/// `u ∈ (u0, u1]`, `a < u0/u1`.
/// `Infinity`: `max(K, K φ(u0)/φ(u1))` for `u1 < u0`.
pub fn extend_constant(phi: &OrliczFunction, regime: Regime, p: f64, k: f64, u0: f64, u1: f64) -> Result<f64> {
    let grid = GridSpec { points: 128, ..GridSpec::default() };
    extend_constant_on(phi, regime, p, k, u0, u1, &grid)
}

/// [`extend_constant`] re-certifying `(p, K)` on a given grid.
pub fn extend_constant_on(
    phi: &OrliczFunction,
    regime: Regime,
    p: f64,
    k: f64,
    u0: f64,
    u1: f64,
    grid: &GridSpec,
) -> Result<f64> {
    if !(p > 0.0 && k >= 1.0 && u0 > 0.0 && u1 > 0.0) {
        return Err(Error::Invalid("extend_constant needs p > 0, K ≥ 1, u0 > 0, u1 > 0".into()));
    }
    let grid = *grid;
    match regime {
        Regime::Zero => {
            let a_phi = phi.a_phi();
            if a_phi > 0.0 {
                let target = num::max(u0, u1);
                if !(a_phi < phi.b_phi().to_f64()) || finite_value(phi, target).is_none() {
                    return Err(Error::Precondition("need a_φ < b_φ and φ(u) < ∞ at the extension point".into()));
                }
                return Ok(num::powf(target / a_phi, p));
            }
            if !(u1 > u0) || finite_value(phi, u1).is_none() {
                return Err(Error::Precondition("need u1 > u0 with φ(u1) < ∞".into()));
            }
            if !certified_on_grid(phi, regime, p, k, u0, &grid) {
                return Err(Error::Precondition(format!("(p={p}, K={k}) is not certified on (0, {u0}]")));
            }
            let k1 = num::powf(u1 / u0, p);
            let a_top = u0 / u1;
            let mut k2: f64 = 0.0;
            for u in num::log_grid(u0, u1, grid.points).into_iter().skip(1) {
                let Some(fu) = positive_value(phi, u) else { continue };
                for a in num::log_grid(grid.a_min * a_top, a_top, grid.points) {
                    if a >= a_top {
                        continue;
                    }
                    if let Some(fa) = finite_value(phi, a * u) {
                        k2 = num::max(k2, fa / (num::powf(a, p) * fu));
                    }
                }
            }
            Ok(num::max(k, num::max(k1, k2)))
        }
        Regime::Infinity => {
            if !(u1 < u0) {
                return Err(Error::Precondition("need u1 < u0".into()));
            }
            let (Some(f0), Some(f1)) = (finite_value(phi, u0), positive_value(phi, u1)) else {
                return Err(Error::Precondition("need φ(u0) < ∞ and φ(u1) > 0".into()));
            };
            if !certified_on_grid(phi, regime, p, k, u0, &grid) {
                return Err(Error::Precondition(format!("(p={p}, K={k}) is not certified on [{u0}, ∞)")));
            }
            Ok(num::max(k, k * f0 / f1))
        }
        Regime::All => Err(Error::Precondition("the all-arguments inequality needs no extension".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Delta2,
    DeltaEps,
    Delta2Str,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Delta2 => "delta2",
            Condition::DeltaEps => "delta_eps",
            Condition::Delta2Str => "delta_2str",
        }
    }
}

/// One point of a violating sequence with the ratio the condition bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessPoint {
    pub u: f64,
    pub ratio: f64,
}

/// Per-`ε` constants of Δ_ε or Δ_{2-str}.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsRow {
    pub eps: f64,
    pub holds: bool,
    /// `δ(ε)`
    pub delta: f64,
    pub u0: f64,
    pub witness: Vec<WitnessPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionVerdict {
    pub condition: Condition,
    pub regime: Regime,
    /// Certified on the regime's geometric sequence, not proved.
    pub holds: bool,
    /// Δ₂ constant.
    pub k: Option<f64>,
    pub u0: Option<f64>,
    pub table: Vec<EpsRow>,
    pub witness: Vec<WitnessPoint>,
    pub reason: Option<String>,
}

/// Points per octave of the geometric sequences used by the Δ-checks.
pub const PER_OCTAVE: usize = 8;
/// Extent of the geometric sequences, in octaves.
pub const OCTAVES: usize = 990;
/// A Δ₂ ratio beyond this on a growing tail refutes the condition.
pub const DELTA2_REFUTE: f64 = 1e6;
/// An extrapolated Δ_ε ratio within this of 1 refutes the condition.
pub const DELTA_EPS_GAP: f64 = 1e-3;

/// `u0 · 2^{±j/8}` running from `u0` toward the regime's asymptote.
fn tail_sequence(u0: f64, toward_zero: bool) -> Vec<f64> {
    let sign = if toward_zero { -1.0 } else { 1.0 };
    (0..=OCTAVES * PER_OCTAVE).map(|j| u0 * num::powf(2.0, sign * j as f64 / PER_OCTAVE as f64)).collect()
}

/// Structural thresholds of the Δ-conditions: `u0 = min(1, b_φ/2)` at zero,
/// `max(1, 2a_φ)` at infinity.
fn zero_threshold(phi: &OrliczFunction) -> f64 {
    num::min(1.0, phi.b_phi().to_f64() / 2.0)
}

fn inf_threshold(phi: &OrliczFunction) -> f64 {
    num::max(1.0, 2.0 * phi.a_phi())
}

/// `(regime piece, sequence toward its asymptote)`
fn sequences(phi: &OrliczFunction, regime: Regime) -> Vec<(Regime, Vec<f64>)> {
    let zero = || (Regime::Zero, tail_sequence(zero_threshold(phi), true));
    let inf = || (Regime::Infinity, tail_sequence(inf_threshold(phi), false));
    match regime {
        Regime::Zero => vec![zero()],
        Regime::Infinity => vec![inf()],
        Regime::All => {
            // the middle stretch joins the two thresholds
            let (z, i) = (zero_threshold(phi), inf_threshold(phi));
            let mid: Vec<f64> = if i > z { num::log_grid(z, i, 64) } else { Vec::new() };
            vec![zero(), (Regime::All, mid), inf()]
        }
    }
}

fn structural_failure(phi: &OrliczFunction, regime: Regime, cond: Condition) -> Option<(String, Vec<WitnessPoint>)> {
    let (a, b) = (phi.a_phi(), phi.b_phi().to_f64());
    if matches!(regime, Regime::Infinity | Regime::All) && b.is_finite() && cond != Condition::DeltaEps {
        let u = 0.75 * b;
        return Some((format!("b_φ = {b} < ∞: φ(2u) = ∞ for u > b_φ/2"), vec![WitnessPoint { u, ratio: f64::INFINITY }]));
    }
    if matches!(regime, Regime::Zero | Regime::All) && a > 0.0 && cond != Condition::DeltaEps {
        let u = 0.75 * a;
        return Some((format!("a_φ = {a} > 0: φ(u) = 0 < φ(2u) for u just below a_φ"), vec![WitnessPoint { u, ratio: f64::INFINITY }]));
    }
    None
}

/// `(u, g(u))` over the valid points of `us`, where `g` returns `None` to skip.
fn ratios(us: &[f64], g: impl Fn(f64) -> Option<f64>) -> Vec<(f64, f64)> {
    us.iter().filter_map(|&u| g(u).map(|r| (u, r))).collect()
}

fn grows_in_tail(vals: &[(f64, f64)]) -> bool {
    if vals.len() < 8 {
        return false;
    }
    let cut = vals.len() * 3 / 4;
    let head = vals[..cut].iter().map(|v| v.1).fold(0.0, num::max);
    let tail = vals[cut..].iter().map(|v| v.1).fold(0.0, num::max);
    tail > head * (1.0 + REL_SLACK)
}

/// Record-setting points along the sequence, thinned to one per doubling
/// of the ratio.
fn doubling_records(vals: &[(f64, f64)]) -> Vec<WitnessPoint> {
    let mut out: Vec<WitnessPoint> = Vec::new();
    let mut next = 2.0;
    for &(u, r) in vals {
        if r >= next {
            out.push(WitnessPoint { u, ratio: r });
            while next <= r {
                next *= 2.0;
            }
        }
    }
    out
}

/// Δ₂ in `regime`: `φ(2u) ≤ Kφ(u)`.
pub fn check_delta2(phi: &OrliczFunction, regime: Regime) -> ConditionVerdict {
    let mut verdict = ConditionVerdict {
        condition: Condition::Delta2,
        regime,
        holds: true,
        k: None,
        u0: None,
        table: Vec::new(),
        witness: Vec::new(),
        reason: None,
    };
    if let Some((reason, witness)) = structural_failure(phi, regime, Condition::Delta2) {
        verdict.holds = false;
        verdict.reason = Some(reason);
        verdict.witness = witness;
        return verdict;
    }
    let mut k: f64 = 0.0;
    for (part, us) in sequences(phi, regime) {
        let vals = ratios(&us, |u| Some(finite_value(phi, 2.0 * u)? / positive_value(phi, u)?));
        let sup = vals.iter().map(|v| v.1).fold(0.0, num::max);
        if part != Regime::All && sup > DELTA2_REFUTE && grows_in_tail(&vals) {
            verdict.holds = false;
            verdict.reason = Some(format!("φ(2u)/φ(u) grows without bound toward the {} end", part.name()));
            verdict.witness = doubling_records(&vals);
            return verdict;
        }
        k = num::max(k, sup);
    }
    verdict.k = Some(num::max(k, 1.0));
    verdict.u0 = match regime {
        Regime::Zero => Some(zero_threshold(phi)),
        Regime::Infinity => Some(inf_threshold(phi)),
        Regime::All => None,
    };
    verdict
}

/// Δ_ε in `regime`: for each `ε`, `φ(εu) ≤ δφ(u)` with `δ < 1`.
///
/// The ratio `f_ε(u) = φ(εu)/φ(u)` is extrapolated to the regime's end in
/// `s = 1/|ln u|`; a limit within `DELTA_EPS_GAP` of 1 refutes the condition.
pub fn check_delta_epsilon(phi: &OrliczFunction, regime: Regime, eps_list: &[f64]) -> Result<ConditionVerdict> {
    check_eps_family(phi, regime, eps_list, Condition::DeltaEps)
}

/// Δ_{2-str} in `regime`: for each `ε`, the largest `δ` (by bisection) with
/// `φ((1+δ)u) ≤ (1+ε)φ(u)` on the sequence.
pub fn check_delta_2str(phi: &OrliczFunction, regime: Regime, eps_list: &[f64]) -> Result<ConditionVerdict> {
    check_eps_family(phi, regime, eps_list, Condition::Delta2Str)
}

fn check_eps_family(phi: &OrliczFunction, regime: Regime, eps_list: &[f64], cond: Condition) -> Result<ConditionVerdict> {
    for &e in eps_list {
        let ok = match cond {
            Condition::DeltaEps => e > 0.0 && e < 1.0,
            _ => e > 0.0 && e.is_finite(),
        };
        if !ok {
            return Err(Error::Invalid(format!("ε = {e} out of range for {}", cond.name())));
        }
    }
    let mut verdict = ConditionVerdict {
        condition: cond,
        regime,
        holds: true,
        k: None,
        u0: None,
        table: Vec::new(),
        witness: Vec::new(),
        reason: None,
    };
    if let Some((reason, witness)) = structural_failure(phi, regime, cond) {
        verdict.holds = false;
        verdict.reason = Some(reason);
        verdict.witness = witness;
        return Ok(verdict);
    }
    let parts = sequences(phi, regime);
    for &eps in eps_list {
        let row = match cond {
            Condition::DeltaEps => delta_eps_row(phi, &parts, eps),
            _ => delta_2str_row(phi, &parts, eps),
        };
        if !row.holds && verdict.holds {
            verdict.holds = false;
            verdict.witness = row.witness.clone();
            verdict.reason = Some(format!("fails for ε = {eps}"));
        }
        verdict.table.push(row);
    }
    Ok(verdict)
}

fn delta_eps_row(phi: &OrliczFunction, parts: &[(Regime, Vec<f64>)], eps: f64) -> EpsRow {
    let mut delta: f64 = 0.0;
    let mut u0 = 0.0;
    for (part, us) in parts {
        let vals = ratios(us, |u| Some(finite_value(phi, eps * u)? / positive_value(phi, u)?));
        if let Some(&(u, r)) = vals.iter().find(|v| v.1 >= 1.0) {
            // φ is flat across [εu, u]
            return EpsRow { eps, holds: false, delta: 1.0, u0: f64::NAN, witness: vec![WitnessPoint { u, ratio: r }] };
        }
        if *part != Regime::All {
            let near = &vals[vals.len() / 2..];
            let pts: Vec<(f64, f64)> = near.iter().map(|&(u, r)| (1.0 / num::abs(num::ln(u)), r)).collect();
            if let Some(c) = intercept(&pts) {
                if c > 1.0 - DELTA_EPS_GAP {
                    return EpsRow { eps, holds: false, delta: 1.0, u0: f64::NAN, witness: approach_records(&vals) };
                }
            }
            if u0 == 0.0 {
                u0 = us[0];
            }
        }
        delta = num::max(delta, vals.iter().map(|v| v.1).fold(0.0, num::max));
    }
    EpsRow { eps, holds: true, delta, u0, witness: Vec::new() }
}

/// Points along the sequence whose ratio closes half of the remaining gap
/// to 1 since the previous record.
fn approach_records(vals: &[(f64, f64)]) -> Vec<WitnessPoint> {
    let mut out: Vec<WitnessPoint> = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for &(u, r) in vals {
        if r > best {
            if out.is_empty() || 1.0 - r <= 0.5 * (1.0 - out[out.len() - 1].ratio) {
                out.push(WitnessPoint { u, ratio: r });
            }
            best = r;
        }
    }
    if let Some(&(u, r)) = vals.iter().max_by(|a, b| a.1.partial_cmp(&b.1).unwrap()) {
        if out.last().is_none_or(|w| w.u != u) {
            out.push(WitnessPoint { u, ratio: r });
        }
    }
    out
}

/// Ratio samples per sequence part.
type RatioRuns = Vec<(Regime, Vec<(f64, f64)>)>;

fn delta_2str_row(phi: &OrliczFunction, parts: &[(Regime, Vec<f64>)], eps: f64) -> EpsRow {
    let sup_for = |d: f64| -> (f64, RatioRuns) {
        let mut sup: f64 = 0.0;
        let mut all = Vec::new();
        for (part, us) in parts {
            let vals = ratios(us, |u| {
                let base = positive_value(phi, u)?;
                let w = (1.0 + d) * u;
                match phi.value(w) {
                    Finite(v) if v.is_finite() => Some(v / base),
                    _ if w >= phi.b_phi().to_f64() => Some(f64::INFINITY),
                    // float overflow below b_φ
                    _ => None,
                }
            });
            sup = num::max(sup, vals.iter().map(|v| v.1).fold(0.0, num::max));
            all.push((*part, vals));
        }
        (sup, all)
    };
    let target = 1.0 + eps;
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi <= 1e6 && sup_for(hi).0 <= target {
        lo = hi;
        hi *= 2.0;
    }
    if hi <= 1e6 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if sup_for(mid).0 <= target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
    }
    let (_, at_lo) = sup_for(lo);
    let u0 = parts.iter().find(|p| p.0 != Regime::All).map_or(0.0, |p| p.1[0]);
    // a positive δ that only works because the grid ends is not a certificate
    for (part, vals) in &at_lo {
        if *part != Regime::All && grows_in_tail(vals) {
            let (_, probe) = sup_for(num::max(lo, 1e-12));
            let witness = probe
                .iter()
                .filter(|(p, _)| p == part)
                .flat_map(|(_, v)| v.iter().rev().take(4).rev().map(|&(u, r)| WitnessPoint { u, ratio: r }))
                .collect();
            return EpsRow { eps, holds: false, delta: lo, u0, witness };
        }
    }
    if lo <= 0.0 {
        return EpsRow { eps, holds: false, delta: 0.0, u0, witness: Vec::new() };
    }
    EpsRow { eps, holds: true, delta: lo, u0, witness: Vec::new() }
}

/// Widens a Δ_ε certificate from `[0, u0]` to `[0, u1]` (`Zero`) or from
/// `[u0, ∞)` to `[u1, ∞)` (`Infinity`) for `φ` strictly increasing on the
/// gap: `δ₁ = max(δ, sup f_ε)` over the gap.
pub fn extend_delta_eps(phi: &OrliczFunction, regime: Regime, eps: f64, delta: f64, u0: f64, u1: f64) -> Result<f64> {
    let (lo, hi) = match regime {
        Regime::Zero if u1 > u0 => (u0, u1),
        Regime::Infinity if u1 < u0 => (u1, u0),
        _ => return Err(Error::Precondition("u1 must widen the certified range".into())),
    };
    let us = num::log_grid(lo, hi, 512);
    let mut prev = -1.0;
    let mut sup: f64 = 0.0;
    for &u in &us {
        let Some(fu) = positive_value(phi, u) else {
            return Err(Error::Precondition(format!("φ({u}) must be positive and finite")));
        };
        if fu <= prev {
            return Err(Error::Precondition(format!("φ is not strictly increasing near {u}")));
        }
        prev = fu;
        sup = num::max(sup, phi.value_f64(eps * u) / fu);
    }
    if sup >= 1.0 {
        return Err(Error::NotCertified(format!("f_ε reaches {sup} on [{lo}, {hi}]")));
    }
    Ok(num::max(delta, sup))
}

/// `δ(ε) = ε^p` from an index certified with `K = 1`.
pub fn delta_from_unit_constant(est: &IndexEstimate, eps: f64) -> Option<f64> {
    if est.k <= 1.0 + REL_SLACK && est.lo > 0.0 && est.lo.is_finite() {
        Some(num::powf(eps, est.lo))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn power_index_in_all_regimes() {
        let g = GridSpec { points: 96, ..GridSpec::default() };
        for p in [0.5, 1.0, 2.0, 3.0] {
            for regime in [Regime::Zero, Regime::Infinity, Regime::All] {
                let e = estimate_lower_index(&zoo::power(p), regime, &g).unwrap();
                assert!(e.lo <= p + 1e-9 && p <= e.hi + 1e-9, "{p} {regime:?} {e:?}");
                assert!(e.width() <= 0.01);
            }
        }
    }

    #[test]
    fn log_indices_vanish() {
        let g = GridSpec::default();
        let e = estimate_lower_index(&zoo::log1p(), Regime::Infinity, &g).unwrap();
        assert!(e.hi <= 0.05, "{e:?}");
        let e = estimate_lower_index(&zoo::inv_log_recip(), Regime::Zero, &g).unwrap();
        assert!(e.hi <= 0.05, "{e:?}");
        assert!(e.lo <= e.hi);
    }

    #[test]
    fn positive_a_phi_gives_infinite_zero_index() {
        let e = estimate_lower_index(&zoo::shifted_identity(), Regime::Zero, &GridSpec::default()).unwrap();
        assert!(e.infinite && e.lo.is_infinite());
    }

    #[test]
    fn degenerate_regime_is_rejected() {
        let f = crate::orlicz::OrliczFunction::new(vec![
            crate::orlicz::Piece::new(0.0, 1e9, crate::orlicz::PieceKind::Constant(0.0)),
            crate::orlicz::Piece::new(1e9, f64::INFINITY, crate::orlicz::PieceKind::Affine { slope: 1.0, intercept: -1e9 }),
        ])
        .unwrap();
        assert!(matches!(
            estimate_lower_index(&f, Regime::Infinity, &GridSpec::default()),
            Err(Error::DegenerateRegime(_))
        ));
    }

    #[test]
    fn extend_constant_examples() {
        let sq = zoo::square();
        assert!((extend_constant(&sq, Regime::Zero, 2.0, 1.0, 1.0, 10.0).unwrap() - 100.0).abs() < 1e-9);
        assert!((extend_constant(&sq, Regime::Infinity, 2.0, 1.0, 2.0, 1.0).unwrap() - 4.0).abs() < 1e-12);
        let shifted = crate::orlicz::OrliczFunction::new(vec![
            crate::orlicz::Piece::new(0.0, 0.5, crate::orlicz::PieceKind::Constant(0.0)),
            crate::orlicz::Piece::new(0.5, f64::INFINITY, crate::orlicz::PieceKind::Affine { slope: 1.0, intercept: -0.5 }),
        ])
        .unwrap();
        for p in [0.5, 1.0, 3.0] {
            let k = extend_constant(&shifted, Regime::Zero, p, 1.0, 1.0, 1.0).unwrap();
            assert!((k - 2f64.powf(p)).abs() < 1e-12);
        }
        assert!(matches!(extend_constant(&sq, Regime::Zero, 3.0, 1.0, 1.0, 10.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn extend_constant_zero_holds_on_the_wider_range() {
        let sq = zoo::square();
        let k = extend_constant(&sq, Regime::Zero, 2.0, 1.0, 1.0, 10.0).unwrap();
        for u in num::log_grid(1e-3, 10.0, 200) {
            for a in num::log_grid(1e-4, 1.0, 200) {
                assert!(sq.value_f64(a * u) <= k * a * a * sq.value_f64(u) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn delta2_examples() {
        let v = check_delta2(&zoo::square(), Regime::All);
        assert!(v.holds);
        assert!((v.k.unwrap() - 4.0).abs() < 1e-12);
        let v = check_delta2(&zoo::square_capped(), Regime::Zero);
        assert!(v.holds);
        assert_eq!(v.u0, Some(0.5));
        assert!((v.k.unwrap() - 4.0).abs() < 1e-12);
        let v = check_delta2(&zoo::dyadic_staircase(), Regime::Infinity);
        assert!(v.holds && v.k.unwrap() <= 2.0 + 1e-12);
        assert!(check_delta2(&zoo::harmonic_dyadic(), Regime::Zero).holds);
        assert!(!check_delta2(&zoo::square_capped(), Regime::Infinity).holds);
        assert!(!check_delta2(&zoo::shifted_identity(), Regime::Zero).holds);
    }

    #[test]
    fn delta2_failures_carry_witnesses() {
        for (phi, regime) in [(zoo::exp_minus_one(), Regime::Infinity), (zoo::exp_recip_steep(100.0), Regime::Zero)] {
            let v = check_delta2(&phi, regime);
            assert!(!v.holds);
            let last = v.witness.last().unwrap();
            let r = phi.value_f64(2.0 * last.u) / phi.value_f64(last.u);
            assert!(r > DELTA2_REFUTE, "{r}");
        }
    }

    #[test]
    fn delta_eps_examples() {
        let eps = [0.5, 0.25, 0.125];
        let v = check_delta_epsilon(&zoo::power(2.0), Regime::All, &eps).unwrap();
        assert!(v.holds);
        for row in &v.table {
            assert!((row.delta - row.eps * row.eps).abs() < 1e-12);
        }
        let v = check_delta_epsilon(&zoo::dyadic_staircase(), Regime::Infinity, &eps).unwrap();
        assert!(!v.holds);
        assert!(v.witness.iter().any(|w| w.ratio > 0.99));
        let v = check_delta_epsilon(&zoo::harmonic_dyadic(), Regime::Zero, &eps).unwrap();
        assert!(!v.holds);
        assert!(!check_delta_epsilon(&zoo::log1p(), Regime::Infinity, &eps).unwrap().holds);
        assert!(!check_delta_epsilon(&zoo::plateau_linear(), Regime::All, &eps).unwrap().holds);
        assert!(check_delta_epsilon(&zoo::power(0.05), Regime::Infinity, &eps).unwrap().holds);
    }

    #[test]
    fn delta_2str_examples() {
        let eps = [0.5, 0.1];
        for p in [0.5, 2.0, 3.0] {
            let v = check_delta_2str(&zoo::power(p), Regime::All, &eps).unwrap();
            assert!(v.holds);
            for row in &v.table {
                let exact = (1.0 + row.eps).powf(1.0 / p) - 1.0;
                assert!((row.delta - exact).abs() < 1e-9 * exact, "{p} {row:?}");
            }
        }
        assert!(check_delta_2str(&zoo::dyadic_staircase(), Regime::Infinity, &eps).unwrap().holds);
        assert!(!check_delta_2str(&zoo::exp_minus_one(), Regime::Infinity, &eps).unwrap().holds);
    }

    #[test]
    fn unit_constant_gives_power_delta() {
        let g = GridSpec { points: 64, ..GridSpec::default() };
        let e = estimate_lower_index(&zoo::power(1.5), Regime::All, &g).unwrap();
        let v = check_delta_epsilon(&zoo::power(1.5), Regime::All, &[0.5, 0.3]).unwrap();
        for row in &v.table {
            let d = delta_from_unit_constant(&e, row.eps).unwrap();
            assert!(row.delta <= d * (1.0 + 1e-9));
        }
    }

    #[test]
    fn extend_delta_eps_widens() {
        let phi = zoo::log1p();
        let d = extend_delta_eps(&phi, Regime::Infinity, 0.5, 0.6, 10.0, 0.1).unwrap();
        assert!((0.6..1.0).contains(&d));
        assert!(extend_delta_eps(&zoo::plateau_linear(), Regime::Infinity, 0.5, 0.6, 3.0, 0.5).is_err());
    }
}
