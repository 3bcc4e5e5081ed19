//! Finite-depth `l_∞`-copy witnesses in `E_φ`.
//!
//! Each builder produces blocks `x_1, …, x_N` with pairwise disjoint
//! supports such that `ρ(x) ≤ 1/2` for `x = Σ x_n` while
//! `ρ((1+1/n)x) > 1` for every `n`. Interleaving the blocks gives the
//! vectors `y_m` spanning the copy. Everything here is finite-truncation
//! evidence; the isometry itself only exists in the limit `N → ∞`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cl::{self, CLSpace};
use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, Inf};
use crate::indices::{self, Regime};
use crate::num;
use crate::spaces::{self, Carrier, InclusionClass, SimpleVector, SpaceDescriptor, SpaceKind, UnitSequenceMode};

/// Unit-index horizon for the greedy block searches.
pub const GREEDY_HORIZON: u64 = 1_000_000;
/// Multiplicative step of the threshold scans.
const SCAN_STEP: f64 = 1.002_711_275_050_202_5; // 2^{1/256}
const SCAN_STEPS: usize = 990 * 256;
/// Relative lift keeping solved masses strictly above their lower bound.
const MASS_LIFT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Nonatomic carrier, `φ ∉ Δ₂(∞)` or `b_φ < ∞`.
    NonatomicInfinity,
    /// Nonatomic carrier, `φ ∉ Δ₂(0)` or `a_φ > 0`.
    NonatomicZero,
    /// Counting carrier, `a_φ > 0`: blocks of `a_φ`.
    Plateau,
    /// Counting carrier, `a_φ = 0`, unit vectors of bounded norm.
    BoundedUnits,
    /// Counting carrier, `b_φ < ∞`.
    Capped,
    /// Counting carrier, unit norms vanishing with ratio at least `d`.
    VanishingUnits,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::NonatomicInfinity => "nonatomic_infinity",
            WitnessKind::NonatomicZero => "nonatomic_zero",
            WitnessKind::Plateau => "plateau",
            WitnessKind::BoundedUnits => "bounded_units",
            WitnessKind::Capped => "capped",
            WitnessKind::VanishingUnits => "vanishing_units",
        }
    }

    pub fn parse(s: &str) -> Option<WitnessKind> {
        Some(match s {
            "nonatomic_infinity" => WitnessKind::NonatomicInfinity,
            "nonatomic_zero" => WitnessKind::NonatomicZero,
            "plateau" => WitnessKind::Plateau,
            "bounded_units" => WitnessKind::BoundedUnits,
            "capped" => WitnessKind::Capped,
            "vanishing_units" => WitnessKind::VanishingUnits,
            _ => return None,
        })
    }

    pub fn is_sequence(self) -> bool {
        !matches!(self, WitnessKind::NonatomicInfinity | WitnessKind::NonatomicZero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Gt,
    Ge,
    Le,
    Lt,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Gt => ">",
            Rel::Ge => ">=",
            Rel::Le => "<=",
            Rel::Lt => "<",
        }
    }

    fn holds(self, l: ExtReal, r: ExtReal) -> bool {
        match self {
            Rel::Gt => l > r,
            Rel::Ge => l >= r,
            Rel::Le => l <= r,
            Rel::Lt => l < r,
        }
    }
}

/// Left side of a logged inequality, kept as raw inputs so it can be
/// recomputed.
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    /// `φ(u)`
    Phi { u: f64 },
    /// `φ(u)·‖support‖_E`
    PhiNorm { u: f64, support: SimpleVector },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Const(f64),
    /// `factor·φ(u)`
    PhiMultiple { u: f64, factor: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityRow {
    pub n: usize,
    pub label: &'static str,
    pub term: Term,
    pub rel: Rel,
    pub bound: Bound,
    pub lhs: ExtReal,
    pub rhs: ExtReal,
    pub ok: bool,
}

fn times(a: ExtReal, b: ExtReal) -> ExtReal {
    match (a, b) {
        (Finite(x), Finite(y)) => ExtReal::from_f64(x * y),
        (Finite(x), Inf) | (Inf, Finite(x)) if x == 0.0 => Finite(0.0),
        _ => Inf,
    }
}

fn eval_term(cl: &CLSpace, t: &Term) -> Result<ExtReal> {
    match t {
        Term::Phi { u } => Ok(cl.phi.value(*u)),
        Term::PhiNorm { u, support } => Ok(times(cl.phi.value(*u), cl.space.norm(support)?)),
    }
}

fn eval_bound(cl: &CLSpace, b: &Bound) -> ExtReal {
    match *b {
        Bound::Const(c) => ExtReal::from_f64(c),
        Bound::PhiMultiple { u, factor } => cl.phi.value(u).scale(factor),
    }
}

fn row(cl: &CLSpace, n: usize, label: &'static str, term: Term, rel: Rel, bound: Bound) -> Result<InequalityRow> {
    let lhs = eval_term(cl, &term)?;
    let rhs = eval_bound(cl, &bound);
    let ok = rel.holds(lhs, rhs);
    Ok(InequalityRow { n, label, term, rel, bound, lhs, rhs, ok })
}

/// Recomputes a logged row from the primitives.
pub fn recheck(cl: &CLSpace, r: &InequalityRow) -> Result<bool> {
    Ok(r.rel.holds(eval_term(cl, &r.term)?, eval_bound(cl, &r.bound)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessBundle {
    pub kind: WitnessKind,
    /// Threshold values `u_n` (or `a_φ` for the plateau kinds).
    pub u: Vec<f64>,
    pub xs: Vec<SimpleVector>,
    pub x_total: SimpleVector,
    /// 1-based block indices of each `y_m`.
    pub sets: Vec<Vec<usize>>,
    pub ys: Vec<SimpleVector>,
    pub log: Vec<InequalityRow>,
    /// Ratio bound of the unit sequence, when one is used.
    pub d: Option<f64>,
    pub modular_total: ExtReal,
    /// `ρ((1+1/n)x)` for `n = 1..N`.
    pub blowups: Vec<ExtReal>,
    pub modular_ok: bool,
    pub blowup_ok: bool,
}

impl WitnessBundle {
    pub fn log_ok(&self) -> bool {
        self.log.iter().all(|r| r.ok)
    }

    pub fn disjoint(&self) -> bool {
        pairwise_disjoint(&self.xs)
    }
}

fn pairwise_disjoint(xs: &[SimpleVector]) -> bool {
    xs.iter().enumerate().all(|(i, a)| xs[i + 1..].iter().all(|b| a.disjoint(b)))
}

/// Block index sets of the `y_m`: `S₁` takes every second index of
/// `1..=n` from the first, each later `S_m` every second index of what
/// remains, again from its first element.
pub fn interleave(n: usize, m: usize) -> Result<Vec<Vec<usize>>> {
    if m > n {
        return Err(Error::Invalid(format!("M = {m} exceeds N = {n}")));
    }
    let mut rest: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let (take, keep): (Vec<_>, Vec<_>) = rest.iter().enumerate().partition(|(i, _)| i % 2 == 0);
        out.push(take.into_iter().map(|(_, &v)| v).collect());
        rest = keep.into_iter().map(|(_, &v)| v).collect();
    }
    Ok(out)
}

/// Number of non-empty interleaved sets for `n` blocks.
pub fn interleave_depth(n: usize) -> usize {
    let mut left = n;
    let mut m = 0;
    while left > 0 {
        left /= 2;
        m += 1;
    }
    m
}

fn finish(
    cl: &CLSpace,
    kind: WitnessKind,
    u: Vec<f64>,
    xs: Vec<SimpleVector>,
    log: Vec<InequalityRow>,
    d: Option<f64>,
    expect_zero: bool,
) -> Result<WitnessBundle> {
    let carrier = cl.space.carrier();
    let mut x_total = SimpleVector::zero(carrier);
    for x in &xs {
        x_total = x_total.add(x)?;
    }
    let n = xs.len();
    let sets = interleave(n, interleave_depth(n))?;
    let mut ys = Vec::with_capacity(sets.len());
    for s in &sets {
        let mut y = SimpleVector::zero(carrier);
        for &k in s {
            y = y.add(&xs[k - 1])?;
        }
        ys.push(y);
    }
    let modular_total = cl::modular(cl, &x_total)?;
    let modular_ok = if expect_zero {
        modular_total == Finite(0.0)
    } else {
        modular_total <= Finite(0.5 + 1e-8)
    };
    let mut blowups = Vec::with_capacity(n);
    for k in 1..=n {
        blowups.push(cl::modular(cl, &x_total.scale(1.0 + 1.0 / k as f64))?);
    }
    let blowup_ok = blowups.iter().all(|&b| b > Finite(1.0));
    Ok(WitnessBundle { kind, u, xs, x_total, sets, ys, log, d, modular_total, blowups, modular_ok, blowup_ok })
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg.into()))
    }
}

/// First `u` on the geometric scan from `start` (exclusive) satisfying `pred`.
fn scan(start: f64, upward: bool, mut pred: impl FnMut(f64) -> bool) -> Option<f64> {
    let step = if upward { SCAN_STEP } else { 1.0 / SCAN_STEP };
    let mut u = start;
    for _ in 0..SCAN_STEPS {
        u *= step;
        if !(u > 1e-300 && u < 1e300) {
            return None;
        }
        if pred(u) {
            return Some(u);
        }
    }
    None
}

fn phi_f(cl: &CLSpace, u: f64) -> f64 {
    cl.phi.value(u).to_f64()
}

fn normal(v: f64) -> bool {
    v >= f64::MIN_POSITIVE && v.is_finite()
}

fn interval_gamma(space: &SpaceDescriptor) -> Result<f64> {
    match space.carrier() {
        Carrier::Interval { gamma } => Ok(gamma),
        Carrier::Counting => Err(Error::UnsupportedSpace("needs an interval carrier".into())),
    }
}

fn solve_measure(space: &SpaceDescriptor, norm: f64) -> Result<f64> {
    space
        .solve_chi_measure(norm)
        .ok_or_else(|| Error::UnsupportedSpace(format!("no set with ‖χ_B‖_E = {norm:e} for this space")))
}

/// Dyadic `t ≥ m` with `2t ≤ room`: the slot `[t, 2t)` holding a block of
/// measure `m`, placed at a scale where `t + m` stays representable.
fn shrinking_slot(m: f64, room: f64) -> Option<f64> {
    if !(m > 0.0) {
        return None;
    }
    let t = num::powf(2.0, num::ceil(num::log2(m)));
    let t = if t < m { 2.0 * t } else { t };
    (2.0 * t <= room).then_some(t)
}

/// Builds blocks `u_n χ_{B_n}` in pairwise disjoint dyadic slots of
/// `[0, min(1, γ))`, each slot shrinking with its block.
pub fn build_nonatomic_witness(cl: &CLSpace, n: usize) -> Result<WitnessBundle> {
    let gamma = interval_gamma(&cl.space)?;
    require(n >= 1, "N must be at least 1")?;
    require(cl.space.oc && cl.space.class != InclusionClass::InsideLinf, "needs E_a ≠ {0}")?;
    let phi = &cl.phi;
    let c = cl.space.c_e;
    let b = phi.b_phi();
    let capped = b.is_finite();
    if !capped {
        require(!indices::check_delta2(phi, Regime::Infinity).holds, "φ satisfies Δ₂ at infinity")?;
    }
    let mut room = num::min(1.0, gamma);
    let mut us = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(n);
    let mut log = Vec::new();
    let mut prev = num::max(1.0, 2.0 * phi.a_phi()) / SCAN_STEP;
    for k in 1..=n {
        let kf = k as f64;
        let lam = 1.0 + 1.0 / kf;
        let big = num::powf(2.0 * c, kf + 2.0);
        let (lower, upper) = (1.0 / big, 2.0 * c / big);
        let want = |u: f64| {
            let fu = phi_f(cl, u);
            if normal(fu) {
                cl.space.solve_chi_measure(lower * (1.0 + MASS_LIFT) / fu)
            } else {
                None
            }
        };
        let u = if capped {
            (2.0 * kf + 1.0) / (2.0 * kf + 2.0) * b.to_f64()
        } else {
            scan(prev, true, |u| {
                phi.value(lam * u) > Finite(big * phi_f(cl, u)) && want(u).and_then(|m| shrinking_slot(m, room)).is_some()
            })
            .ok_or_else(|| Error::Horizon(format!("no gap point for n = {k}")))?
        };
        let m = want(u).ok_or_else(|| Error::UnsupportedSpace(format!("no set of the required norm for n = {k}")))?;
        let t = shrinking_slot(m, room).ok_or_else(|| Error::Precondition(format!("block {k} does not fit")))?;
        let block = SimpleVector::chi(cl.space.carrier(), t, t + m)?;
        if capped {
            log.push(row(cl, k, "beyond_b", Term::Phi { u: lam * u }, Rel::Ge, Bound::Const(f64::INFINITY))?);
        } else {
            log.push(row(cl, k, "gap", Term::Phi { u: lam * u }, Rel::Gt, Bound::PhiMultiple { u, factor: big })?);
            log.push(row(cl, k, "mass_lower", Term::PhiNorm { u, support: block.clone() }, Rel::Ge, Bound::Const(lower))?);
        }
        log.push(row(cl, k, "mass_upper", Term::PhiNorm { u, support: block.clone() }, Rel::Le, Bound::Const(upper))?);
        xs.push(block.scale(u));
        us.push(u);
        prev = u;
        room = t;
    }
    finish(cl, WitnessKind::NonatomicInfinity, us, xs, log, None, false)
}

/// Places blocks of measure `m` on the dyadic exhaustion `[0, 2^k)`:
/// returns the block start and the new exhaustion exponent.
fn dyadic_slot(start: f64, m: f64, gamma: f64) -> Result<(f64, f64)> {
    let mut end = if start == 0.0 { 1.0 } else { 2.0 * start };
    while end - start < m {
        end *= 2.0;
        if !end.is_finite() || end > gamma {
            return Err(Error::Horizon("dyadic exhaustion ran out of room".into()));
        }
    }
    Ok((start, end))
}

fn plateau_factor(a: f64, b: ExtReal, k: usize) -> Result<f64> {
    let mut n0 = 1usize;
    while Finite((1.0 + 1.0 / n0 as f64) * a) >= b {
        n0 += 1;
        if n0 > 1 << 30 {
            return Err(Error::Precondition("need a_φ < b_φ".into()));
        }
    }
    Ok(1.0 + 1.0 / k.max(n0) as f64)
}

/// Builds blocks on the dyadic exhaustion `[0, 2^k)` of the carrier.
pub fn build_nonatomic_zero_witness(cl: &CLSpace, n: usize) -> Result<WitnessBundle> {
    let gamma = interval_gamma(&cl.space)?;
    require(n >= 1, "N must be at least 1")?;
    require(cl.space.class == InclusionClass::Neither && cl.space.oc, "needs L_∞ ⊄ E and supp E_a = T")?;
    let phi = &cl.phi;
    let c = cl.space.c_e;
    let a = phi.a_phi();
    if a == 0.0 {
        require(!indices::check_delta2(phi, Regime::Zero).holds, "φ satisfies Δ₂ at zero")?;
    }
    let b = phi.b_phi();
    let mut us = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(n);
    let mut log = Vec::new();
    let mut start = 0.0;
    let mut prev = num::min(1.0, b.to_f64() / 2.0);
    for k in 1..=n {
        let kf = k as f64;
        let (u, lam, want) = if a > 0.0 {
            let lam = plateau_factor(a, b, k)?;
            (a, lam, 2.0 / phi_f(cl, lam * a))
        } else {
            let lam = 1.0 + 1.0 / kf;
            let big = num::powf(2.0 * c, kf + 2.0);
            let u = scan(prev, false, |u| {
                let fu = phi_f(cl, u);
                normal(fu) && phi.value(lam * u) > Finite(big * fu)
            })
            .ok_or_else(|| Error::Horizon(format!("no gap point for n = {k}")))?;
            (u, lam, (1.0 + MASS_LIFT) / (big * phi_f(cl, u)))
        };
        let m = solve_measure(&cl.space, want)?;
        let (lo, end) = dyadic_slot(start, m, gamma)?;
        let block = SimpleVector::chi(cl.space.carrier(), lo, lo + m)?;
        if a > 0.0 {
            log.push(row(cl, k, "vanishes", Term::Phi { u: a }, Rel::Le, Bound::Const(0.0))?);
            log.push(row(cl, k, "exceeds", Term::PhiNorm { u: lam * a, support: block.clone() }, Rel::Gt, Bound::Const(1.0))?);
        } else {
            let big = num::powf(2.0 * c, kf + 2.0);
            log.push(row(cl, k, "gap", Term::Phi { u: lam * u }, Rel::Gt, Bound::PhiMultiple { u, factor: big })?);
            log.push(row(cl, k, "mass_lower", Term::PhiNorm { u, support: block.clone() }, Rel::Ge, Bound::Const(1.0 / big))?);
            log.push(row(cl, k, "mass_upper", Term::PhiNorm { u, support: block.clone() }, Rel::Le, Bound::Const(2.0 * c / big))?);
        }
        xs.push(block.scale(u));
        us.push(u);
        start = end;
        prev = u;
    }
    finish(cl, WitnessKind::NonatomicZero, us, xs, log, None, a > 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceVariant {
    /// `a_φ > 0`, `l_∞ ⊄ E`
    Plateau,
    /// `φ ∉ Δ₂(0)`, unit vectors of bounded norm with divergent sum
    BoundedUnits,
    /// `b_φ < ∞`, `E ⊄ l_∞`
    Capped,
    /// `φ ∉ Δ₂(∞)`, unit norms vanishing with ratio at least `d`
    VanishingUnits,
}

impl SequenceVariant {
    pub fn parse(s: &str) -> Option<SequenceVariant> {
        Some(match s {
            "plateau" => SequenceVariant::Plateau,
            "bounded_units" => SequenceVariant::BoundedUnits,
            "capped" => SequenceVariant::Capped,
            "vanishing_units" => SequenceVariant::VanishingUnits,
            _ => return None,
        })
    }

    pub fn kind(self) -> WitnessKind {
        match self {
            SequenceVariant::Plateau => WitnessKind::Plateau,
            SequenceVariant::BoundedUnits => WitnessKind::BoundedUnits,
            SequenceVariant::Capped => WitnessKind::Capped,
            SequenceVariant::VanishingUnits => WitnessKind::VanishingUnits,
        }
    }
}

/// `Σ_{i∈idx} e(i)` with consecutive indices merged into runs.
pub fn indicator(idx: &[u64]) -> Result<SimpleVector> {
    let mut steps: Vec<(f64, f64, f64)> = Vec::new();
    for &i in idx {
        match steps.last_mut() {
            Some(s) if s.1 == i as f64 => s.1 += 1.0,
            _ => steps.push((i as f64, i as f64 + 1.0, 1.0)),
        }
    }
    SimpleVector::from_steps(Carrier::Counting, &steps)
}

/// Smallest `end ∈ (start, len]` with `scale·‖block(start, end)‖_E > 1`.
fn smallest_block(
    space: &SpaceDescriptor,
    block: &impl Fn(usize, usize) -> Result<SimpleVector>,
    start: usize,
    len: usize,
    scale: f64,
) -> Result<usize> {
    let exceeds = |end: usize| -> Result<bool> { Ok(scale * space.norm(&block(start, end)?)?.to_f64() > 1.0) };
    let mut lo = start;
    let mut width = 1;
    let hi = loop {
        let end = start + width;
        if end > len {
            if len > lo && exceeds(len)? {
                break len;
            }
            return Err(Error::Horizon(format!("block from {start} does not exceed 1 within {len} indices")));
        }
        if exceeds(end)? {
            break end;
        }
        lo = end;
        width *= 2;
    };
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if exceeds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Builds blocks of unit vectors by the greedy smallest-index rules.
pub fn build_sequence_witness(cl: &CLSpace, variant: SequenceVariant, n: usize, horizon: u64) -> Result<WitnessBundle> {
    require(cl.space.is_sequence_space(), "needs the counting carrier")?;
    require(n >= 1, "N must be at least 1")?;
    match variant {
        SequenceVariant::Plateau => plateau(cl, n, horizon),
        SequenceVariant::BoundedUnits => bounded_units(cl, n, horizon),
        SequenceVariant::Capped => capped(cl, n, horizon),
        SequenceVariant::VanishingUnits => vanishing_units(cl, n, horizon),
    }
}

fn plateau(cl: &CLSpace, n: usize, horizon: u64) -> Result<WitnessBundle> {
    require(cl.space.class != InclusionClass::ContainsLinf, "needs l_∞ ⊄ E")?;
    let a = cl.phi.a_phi();
    require(a > 0.0, "needs a_φ > 0")?;
    let b = cl.phi.b_phi();
    let block = |s: usize, e: usize| SimpleVector::chi(Carrier::Counting, s as f64 + 1.0, e as f64 + 1.0);
    let mut xs = Vec::with_capacity(n);
    let mut log = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        let lam = plateau_factor(a, b, k)?;
        let end = smallest_block(&cl.space, &block, start, horizon as usize, phi_f(cl, lam * a))?;
        let v = block(start, end)?;
        log.push(row(cl, k, "vanishes", Term::Phi { u: a }, Rel::Le, Bound::Const(0.0))?);
        log.push(row(cl, k, "exceeds", Term::PhiNorm { u: lam * a, support: v.clone() }, Rel::Gt, Bound::Const(1.0))?);
        xs.push(v.scale(a));
        start = end;
    }
    finish(cl, WitnessKind::Plateau, vec![a; n], xs, log, None, true)
}

fn bounded_units(cl: &CLSpace, n: usize, horizon: u64) -> Result<WitnessBundle> {
    require(cl.space.class != InclusionClass::ContainsLinf, "needs l_∞ ⊄ E")?;
    let phi = &cl.phi;
    require(phi.a_phi() == 0.0, "needs a_φ = 0")?;
    require(!indices::check_delta2(phi, Regime::Zero).holds, "φ satisfies Δ₂ at zero")?;
    let seq = spaces::find_unit_vector_sequence(&cl.space, UnitSequenceMode::BoundedD, horizon)?;
    let d = seq.d;
    let c = cl.space.c_e;
    let idx = &seq.indices;
    let block = |s: usize, e: usize| indicator(&idx[s..e]);
    let mut us = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(n);
    let mut log = Vec::new();
    let mut start = 0;
    let mut prev = num::min(1.0, phi.b_phi().to_f64() / 2.0);
    for k in 1..=n {
        let kf = k as f64;
        let lam = 1.0 + 1.0 / kf;
        let big = num::powf(2.0 * c, kf + 2.0);
        let u = scan(prev, false, |u| {
            let fu = phi_f(cl, u);
            normal(fu) && fu <= 1.0 / (d * big) && phi.value(lam * u) >= Finite(big * fu)
        })
        .ok_or_else(|| Error::Horizon(format!("no threshold for n = {k}")))?;
        let end = smallest_block(&cl.space, &block, start, idx.len(), phi_f(cl, lam * u))?;
        let v = block(start, end)?;
        let short = block(start, end - 1)?;
        log.push(row(cl, k, "small_value", Term::Phi { u }, Rel::Le, Bound::Const(1.0 / (d * big)))?);
        log.push(row(cl, k, "gap", Term::Phi { u: lam * u }, Rel::Ge, Bound::PhiMultiple { u, factor: big })?);
        log.push(row(cl, k, "block_exceeds", Term::PhiNorm { u: lam * u, support: v.clone() }, Rel::Gt, Bound::Const(1.0))?);
        log.push(row(cl, k, "block_minimal", Term::PhiNorm { u: lam * u, support: short }, Rel::Le, Bound::Const(1.0))?);
        xs.push(v.scale(u));
        us.push(u);
        start = end;
        prev = u;
    }
    finish(cl, WitnessKind::BoundedUnits, us, xs, log, Some(d), false)
}

fn unit_norm(space: &SpaceDescriptor, i: u64) -> Result<f64> {
    space.norm_f64(&SimpleVector::unit(i))
}

fn capped(cl: &CLSpace, n: usize, horizon: u64) -> Result<WitnessBundle> {
    require(cl.space.class != InclusionClass::InsideLinf, "needs E ⊄ l_∞")?;
    let b = cl.phi.b_phi();
    require(b.is_finite(), "needs b_φ < ∞")?;
    let c = cl.space.c_e;
    let mut us = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(n);
    let mut log = Vec::new();
    let mut i = 0u64;
    for k in 1..=n {
        let kf = k as f64;
        let u = (2.0 * kf + 1.0) / (2.0 * kf + 2.0) * b.to_f64();
        let bound = 1.0 / num::powf(2.0 * c, kf + 1.0);
        let fu = phi_f(cl, u);
        loop {
            i += 1;
            if i > horizon {
                return Err(Error::Horizon(format!("no unit vector small enough for n = {k}")));
            }
            if fu * unit_norm(&cl.space, i)? <= bound {
                break;
            }
        }
        let e = SimpleVector::unit(i);
        log.push(row(cl, k, "beyond_b", Term::Phi { u: (1.0 + 1.0 / kf) * u }, Rel::Ge, Bound::Const(f64::INFINITY))?);
        log.push(row(cl, k, "mass_upper", Term::PhiNorm { u, support: e.clone() }, Rel::Le, Bound::Const(bound))?);
        xs.push(e.scale(u));
        us.push(u);
    }
    finish(cl, WitnessKind::Capped, us, xs, log, None, false)
}

fn vanishing_units(cl: &CLSpace, n: usize, horizon: u64) -> Result<WitnessBundle> {
    require(cl.space.class != InclusionClass::InsideLinf, "needs E ⊄ l_∞")?;
    let phi = &cl.phi;
    require(!phi.b_phi().is_finite(), "needs b_φ = ∞")?;
    require(!indices::check_delta2(phi, Regime::Infinity).holds, "φ satisfies Δ₂ at infinity")?;
    let seq = spaces::find_unit_vector_sequence(&cl.space, UnitSequenceMode::VanishingRatioD, horizon)?;
    let d = seq.d;
    require(d > 0.0 && d < 1.0, "ratio bound d must lie in (0, 1)")?;
    let c = cl.space.c_e;
    let norms = &seq.norms;
    let mut us = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(n);
    let mut log = Vec::new();
    let mut j = 0usize;
    let mut prev = num::max(1.0, 2.0 * phi.a_phi()) / SCAN_STEP;
    for k in 1..=n {
        let kf = k as f64;
        let lam = 1.0 + 1.0 / kf;
        let big = num::powf(2.0 * c, kf + 1.0);
        let reach = norms[j];
        let u = scan(prev, true, |u| {
            let fu = phi_f(cl, u);
            normal(fu) && fu * reach >= 1.0 && phi.value(lam * u) > Finite(big / d * fu)
        })
        .ok_or_else(|| Error::Horizon(format!("no gap point for n = {k}")))?;
        let fu = phi_f(cl, u);
        let jn = (j + 1..norms.len())
            .find(|&t| fu * norms[t] <= 1.0 / big)
            .ok_or_else(|| Error::Horizon(format!("unit sequence too short for n = {k}")))?;
        let prev_e = SimpleVector::unit(seq.indices[j]);
        let e = SimpleVector::unit(seq.indices[jn]);
        log.push(row(cl, k, "gap", Term::Phi { u: lam * u }, Rel::Gt, Bound::PhiMultiple { u, factor: big / d })?);
        log.push(row(cl, k, "reach", Term::PhiNorm { u, support: prev_e }, Rel::Ge, Bound::Const(1.0))?);
        log.push(row(cl, k, "mass_lower", Term::PhiNorm { u, support: e.clone() }, Rel::Gt, Bound::Const(d / big))?);
        log.push(row(cl, k, "mass_upper", Term::PhiNorm { u, support: e.clone() }, Rel::Le, Bound::Const(1.0 / big))?);
        xs.push(e.scale(u));
        us.push(u);
        j = jn;
        prev = u;
    }
    finish(cl, WitnessKind::VanishingUnits, us, xs, log, Some(d), false)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZRow {
    pub z: Vec<f64>,
    pub sup: f64,
    pub norm: f64,
    /// `‖P(z)‖ ∈ [(1−tol)‖z‖_∞, ‖z‖_∞]`
    pub window_ok: bool,
    /// `max_m |z_m|·‖y_m‖`, the lower bound available at this depth
    pub truncation_lower: f64,
    pub truncation_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinfReport {
    pub tol: f64,
    pub disjoint: bool,
    pub y_norms: Vec<f64>,
    pub y_modulars: Vec<ExtReal>,
    /// `1/(1 + 1/max S_m)`: `ρ(λy_m) > 1` once `λ ≥ 1 + 1/n` for some `n ∈ S_m`.
    pub y_truncation_bounds: Vec<f64>,
    pub total_norm: f64,
    pub z_rows: Vec<ZRow>,
    /// All norms inside the literal `[1−tol, 1]` windows.
    pub window_ok: bool,
    /// All norms between their truncation lower bound and the upper bound.
    pub truncation_ok: bool,
}

/// `P(z) = Σ z_m y_m` for the first `min(|z|, M)` coordinates.
pub fn embed(bundle: &WitnessBundle, z: &[f64]) -> Result<SimpleVector> {
    let mut out = SimpleVector::zero(bundle.x_total.carrier());
    for (y, &zm) in bundle.ys.iter().zip(z) {
        if zm != 0.0 {
            out = out.add(&y.scale(zm))?;
        }
    }
    Ok(out)
}

fn norm_of(cl: &CLSpace, x: &SimpleVector) -> Result<f64> {
    match cl::luxemburg_norm(cl, x, cl::DEFAULT_TOL) {
        Ok(r) => Ok(r.norm),
        Err(Error::NotInSpace) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// Checks the isometric-copy conditions at truncation depth `N`.
pub fn verify_linf_copy(cl: &CLSpace, bundle: &WitnessBundle, zs: &[Vec<f64>], tol: f64) -> Result<LinfReport> {
    let up = 1.0 + cl::DEFAULT_TOL * 10.0;
    let disjoint = bundle.disjoint() && pairwise_disjoint(&bundle.ys);
    let mut y_norms = Vec::new();
    let mut y_modulars = Vec::new();
    let mut y_truncation_bounds = Vec::new();
    for (y, s) in bundle.ys.iter().zip(&bundle.sets) {
        y_norms.push(norm_of(cl, y)?);
        y_modulars.push(cl::modular(cl, y)?);
        let top = s.iter().copied().max().unwrap_or(0) as f64;
        y_truncation_bounds.push(if top > 0.0 { top / (top + 1.0) } else { 0.0 });
    }
    let total_norm = norm_of(cl, &bundle.x_total)?;
    let n = bundle.xs.len() as f64;
    let in_window = |v: f64, target: f64| v >= (1.0 - tol) * target && v <= target * up;
    let mut window_ok = y_norms.iter().all(|&v| in_window(v, 1.0)) && in_window(total_norm, 1.0);
    let mut truncation_ok = y_norms.iter().zip(&y_truncation_bounds).all(|(&v, &lb)| v >= lb * (1.0 - tol) && v <= up)
        && total_norm >= n / (n + 1.0) * (1.0 - tol)
        && total_norm <= up;
    let mut z_rows = Vec::with_capacity(zs.len());
    for z in zs {
        let zt: Vec<f64> = z.iter().take(bundle.ys.len()).copied().collect();
        let sup = zt.iter().fold(0.0, |m, &v| num::max(m, num::abs(v)));
        let norm = norm_of(cl, &embed(bundle, &zt)?)?;
        let truncation_lower =
            zt.iter().zip(&y_norms).fold(0.0, |m, (&v, &yn)| num::max(m, num::abs(v) * yn));
        let w = in_window(norm, sup);
        let t = norm >= truncation_lower * (1.0 - tol) - 1e-12 && norm <= sup * up;
        window_ok &= w;
        truncation_ok &= t;
        z_rows.push(ZRow { z: zt, sup, norm, window_ok: w, truncation_lower, truncation_ok: t });
    }
    Ok(LinfReport {
        tol,
        disjoint,
        y_norms,
        y_modulars,
        y_truncation_bounds,
        total_norm,
        z_rows,
        window_ok: window_ok && disjoint,
        truncation_ok: truncation_ok && disjoint,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupResult {
    pub a_measure: f64,
    pub b_measure: f64,
    pub ratio: f64,
    pub exceeded: bool,
    /// `(μ(A), ratio)` over the search grid.
    pub samples: Vec<(f64, f64)>,
}

/// Grid points of the `μ(A)` search.
pub const BLOWUP_POINTS: usize = 400;

/// Searches `‖χ_A + χ_B‖_φ / (‖χ_A‖_φ + ‖χ_B‖_φ)` over disjoint `A, B` with
/// `‖χ_B‖_E = ½‖χ_A‖_E`, `μ(A)` log-spaced over `[1/horizon, horizon]`.
pub fn blowup_search(space: &SpaceDescriptor, phi: &crate::orlicz::OrliczFunction, target: f64, horizon: f64) -> Result<BlowupResult> {
    let SpaceKind::Lp { p, gamma } = space.kind else {
        return Err(Error::Precondition("needs L_p with p ≥ 1 on an interval".into()));
    };
    require(p >= 1.0 && space.c_e == 1.0, "needs a uniformly monotone normed L_p")?;
    require(!phi.b_phi().is_finite() && phi.a_phi() == 0.0, "needs φ finite-valued and strictly increasing")?;
    require(cl::strictly_increasing_on(phi, 0.0, 1e12), "needs φ strictly increasing")?;
    require(horizon > 1.0, "horizon must exceed 1")?;
    let chi_phi = |m: f64| -> Option<f64> {
        let e = space.chi_norm(m)?;
        let inv = phi.inverse_f64(1.0 / e);
        if inv > 0.0 && inv.is_finite() {
            Some(1.0 / inv)
        } else {
            None
        }
    };
    let mut best = BlowupResult { a_measure: f64::NAN, b_measure: f64::NAN, ratio: 0.0, exceeded: false, samples: Vec::new() };
    for s in num::log_grid(1.0 / horizon, horizon, BLOWUP_POINTS) {
        let Some(na) = space.chi_norm(s) else { continue };
        let Some(t) = space.solve_chi_measure(0.5 * na) else { continue };
        if s + t > gamma {
            continue;
        }
        let (Some(a), Some(b), Some(ab)) = (chi_phi(s), chi_phi(t), chi_phi(s + t)) else { continue };
        let ratio = ab / (a + b);
        if !ratio.is_finite() {
            continue;
        }
        best.samples.push((s, ratio));
        if ratio > best.ratio {
            best.ratio = ratio;
            best.a_measure = s;
            best.b_measure = t;
        }
    }
    best.exceeded = best.ratio > target;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::WeightRule;
    use crate::zoo;

    fn l1() -> SpaceDescriptor {
        SpaceDescriptor::new(SpaceKind::Lp { p: 1.0, gamma: f64::INFINITY }).unwrap()
    }

    fn check_bundle(cl: &CLSpace, b: &WitnessBundle) {
        assert!(b.disjoint());
        for r in &b.log {
            assert!(r.ok, "{} row {} failed: {} {} {}", r.label, r.n, r.lhs, r.rel.symbol(), r.rhs);
            assert!(recheck(cl, r).unwrap());
        }
        assert!(b.modular_ok, "ρ(x) = {}", b.modular_total);
        assert!(b.blowup_ok, "{:?}", b.blowups);
    }

    #[test]
    fn interleave_examples() {
        assert_eq!(interleave(8, 2).unwrap(), vec![vec![1, 3, 5, 7], vec![2, 6]]);
        assert_eq!(interleave(8, 3).unwrap()[2], vec![4]);
        assert_eq!(interleave(1, 1).unwrap(), vec![vec![1]]);
        assert!(interleave(2, 3).is_err());
        assert_eq!(interleave_depth(10), 4);
        assert_eq!(interleave(10, 4).unwrap(), vec![vec![1, 3, 5, 7, 9], vec![2, 6, 10], vec![4], vec![8]]);
    }

    #[test]
    fn nonatomic_infinity_exp() {
        let cl = CLSpace::uncertified(l1(), zoo::exp_minus_one());
        let b = build_nonatomic_witness(&cl, 10).unwrap();
        check_bundle(&cl, &b);
        assert!(b.u.windows(2).all(|w| w[1] > w[0]));
        // closed-form L₁ measures
        for (x, &u) in b.xs.iter().zip(&b.u) {
            let k = b.xs.iter().position(|y| y == x).unwrap() as f64 + 1.0;
            let want = (1.0 + MASS_LIFT) / (2f64.powf(k + 2.0) * u.exp_m1());
            assert!((x.support_measure() - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn nonatomic_infinity_capped() {
        let cl = CLSpace::uncertified(l1(), zoo::square_capped());
        let b = build_nonatomic_witness(&cl, 5).unwrap();
        check_bundle(&cl, &b);
        for (k, &u) in b.u.iter().enumerate() {
            let k = k as f64 + 1.0;
            assert!((u - (2.0 * k + 1.0) / (2.0 * k + 2.0)).abs() < 1e-15);
        }
        assert_eq!(cl::modular(&cl, &b.x_total.scale(1.1)).unwrap(), Inf);
    }

    #[test]
    fn single_block() {
        let cl = CLSpace::uncertified(l1(), zoo::exp_minus_one());
        let b = build_nonatomic_witness(&cl, 1).unwrap();
        check_bundle(&cl, &b);
        assert_eq!(b.ys.len(), 1);
        let r = verify_linf_copy(&cl, &b, &[vec![1.0]], 1e-6).unwrap();
        assert!(r.truncation_ok);
        assert!(r.y_norms[0] <= 1.0 + 1e-9 && r.y_norms[0] >= 0.5);
    }

    #[test]
    fn nonatomic_zero_branches() {
        let cl = CLSpace::uncertified(l1(), zoo::exp_recip_steep(100.0));
        let b = build_nonatomic_zero_witness(&cl, 8).unwrap();
        check_bundle(&cl, &b);
        assert!(b.u.windows(2).all(|w| w[1] < w[0]));

        let cl = CLSpace::uncertified(l1(), zoo::shifted_identity());
        let b = build_nonatomic_zero_witness(&cl, 5).unwrap();
        check_bundle(&cl, &b);
        assert_eq!(b.modular_total, Finite(0.0));
        let norm = cl::luxemburg_norm(&cl, &b.x_total, cl::DEFAULT_TOL).unwrap().norm;
        assert!((5.0 / 6.0..=1.0 + 1e-9).contains(&norm));

        let square = CLSpace::uncertified(l1(), zoo::square());
        assert!(matches!(build_nonatomic_zero_witness(&square, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn sequence_variants() {
        let ces = SpaceDescriptor::new(SpaceKind::Cesaro { p: 2.0 }).unwrap();
        let cl = CLSpace::uncertified(ces, zoo::shifted_identity());
        let b = build_sequence_witness(&cl, SequenceVariant::Plateau, 6, GREEDY_HORIZON).unwrap();
        check_bundle(&cl, &b);
        assert_eq!(b.modular_total, Finite(0.0));

        let geo = SpaceDescriptor::new(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Geometric { a: 2.0 } }).unwrap();
        let cl = CLSpace::uncertified(geo.clone(), zoo::square_capped());
        let b = build_sequence_witness(&cl, SequenceVariant::Capped, 10, GREEDY_HORIZON).unwrap();
        check_bundle(&cl, &b);

        let cl = CLSpace::uncertified(geo, zoo::exp_minus_one());
        let b = build_sequence_witness(&cl, SequenceVariant::VanishingUnits, 10, 2000).unwrap();
        check_bundle(&cl, &b);
        assert!((b.d.unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bounded_units_alternating() {
        let alt = SpaceDescriptor::new(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Alternating }).unwrap();
        let cl = CLSpace::uncertified(alt, zoo::exp_recip_steep(100.0));
        let b = build_sequence_witness(&cl, SequenceVariant::BoundedUnits, 10, GREEDY_HORIZON).unwrap();
        check_bundle(&cl, &b);
        assert_eq!(b.d, Some(1.0));
    }

    #[test]
    fn linf_copy_truncation() {
        let cl = CLSpace::uncertified(l1(), zoo::square_capped());
        let b = build_nonatomic_witness(&cl, 10).unwrap();
        let zs = vec![vec![1.0; 4], vec![0.0, 1.0], vec![1.0, 0.5, 0.25, 0.125], vec![-2.0, 1.0, 0.0, 0.5]];
        let r = verify_linf_copy(&cl, &b, &zs, 1e-6).unwrap();
        assert!(r.disjoint);
        assert!(r.truncation_ok, "{r:?}");
        for row in &r.z_rows {
            assert!(row.norm <= row.sup * (1.0 + 1e-8));
        }
    }

    #[test]
    fn blowup_examples() {
        let r = blowup_search(&l1(), &zoo::log1p(), 10.0, 1e6).unwrap();
        assert!(r.exceeded);
        // oracle: ‖χ_A‖_φ = 1/φ⁻¹(1/μ(A)) with φ⁻¹(v) = e^v − 1
        let s = r.a_measure;
        let chi = |m: f64| 1.0 / (1.0 / m).exp_m1();
        let want = chi(1.5 * s) / (chi(s) + chi(0.5 * s));
        assert!((r.ratio - want).abs() <= 1e-9 * want);

        let r = blowup_search(&l1(), &zoo::square(), 10.0, 1e6).unwrap();
        assert!(!r.exceeded);
        assert!(r.ratio <= 2f64.sqrt());
        let want = 1.5f64.sqrt() / (1.0 + 0.5f64.sqrt());
        assert!((r.ratio - want).abs() < 1e-12);
    }
}
