//! Concrete quasi-Banach ideal spaces over `[0, γ)` with Lebesgue measure
//! and over `ℕ` with counting measure, evaluated on step functions.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, Inf};
use crate::num;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Carrier {
    /// `[0, γ)` with Lebesgue measure; `γ` may be `f64::INFINITY`.
    Interval { gamma: f64 },
    /// `ℕ = {1, 2, ...}` with counting measure.
    Counting,
}

/// `[lo, hi)`. On the counting carrier the endpoints are integers and the
/// region is the index set `{lo, ..., hi − 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub lo: f64,
    pub hi: f64,
}

impl Region {
    pub fn new(lo: f64, hi: f64) -> Region {
        Region { lo, hi }
    }

    pub fn measure(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Part {
    pub region: Region,
    /// `|x|` on the region.
    pub value: f64,
    pub negative: bool,
}

impl Part {
    pub fn signed(&self) -> f64 {
        if self.negative {
            -self.value
        } else {
            self.value
        }
    }
}

/// A step function with finitely many pairwise-disjoint parts, kept in
/// canonical form: sorted, zero parts dropped, equal neighbours merged.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleVector {
    carrier: Carrier,
    parts: Vec<Part>,
}

impl SimpleVector {
    pub fn zero(carrier: Carrier) -> SimpleVector {
        SimpleVector { carrier, parts: Vec::new() }
    }

    /// Builds from `(lo, hi, signed value)` triples.
    pub fn from_steps(carrier: Carrier, steps: &[(f64, f64, f64)]) -> Result<SimpleVector> {
        let parts = steps
            .iter()
            .map(|&(lo, hi, v)| Part { region: Region::new(lo, hi), value: num::abs(v), negative: v < 0.0 })
            .collect();
        SimpleVector::from_parts(carrier, parts)
    }

    pub fn from_parts(carrier: Carrier, mut parts: Vec<Part>) -> Result<SimpleVector> {
        for p in &parts {
            let Region { lo, hi } = p.region;
            if !(lo < hi) || !(lo >= 0.0) || !p.value.is_finite() || !(p.value >= 0.0) {
                return Err(Error::Invalid(format!("bad part [{lo}, {hi}) value {}", p.value)));
            }
            match carrier {
                Carrier::Interval { gamma } => {
                    if hi > gamma {
                        return Err(Error::Invalid(format!("part [{lo}, {hi}) leaves [0, {gamma})")));
                    }
                }
                Carrier::Counting => {
                    if lo < 1.0 || num::floor(lo) != lo || num::floor(hi) != hi || hi > 9.0e15 {
                        return Err(Error::Invalid(format!("index range [{lo}, {hi}) is not a finite set of naturals")));
                    }
                }
            }
        }
        parts.sort_by(|a, b| a.region.lo.partial_cmp(&b.region.lo).unwrap());
        if parts.windows(2).any(|w| w[0].region.hi > w[1].region.lo) {
            return Err(Error::Invalid("overlapping parts".into()));
        }
        let mut out: Vec<Part> = Vec::with_capacity(parts.len());
        for p in parts {
            if p.value == 0.0 {
                continue;
            }
            if let Some(last) = out.last_mut() {
                if last.region.hi == p.region.lo && last.value == p.value && last.negative == p.negative {
                    last.region.hi = p.region.hi;
                    continue;
                }
            }
            out.push(p);
        }
        Ok(SimpleVector { carrier, parts: out })
    }

    /// `χ_[lo, hi)`.
    pub fn chi(carrier: Carrier, lo: f64, hi: f64) -> Result<SimpleVector> {
        SimpleVector::from_steps(carrier, &[(lo, hi, 1.0)])
    }

    /// Unit vector `e(i)` on the counting carrier.
    pub fn unit(i: u64) -> SimpleVector {
        let x = i as f64;
        SimpleVector::from_steps(Carrier::Counting, &[(x, x + 1.0, 1.0)]).expect("unit vector")
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// `‖x‖_∞` over the support.
    pub fn sup_abs(&self) -> f64 {
        self.parts.iter().fold(0.0, |m, p| num::max(m, p.value))
    }

    pub fn support_measure(&self) -> f64 {
        self.parts.iter().map(|p| p.region.measure()).sum()
    }

    pub fn scale(&self, c: f64) -> SimpleVector {
        let parts = self
            .parts
            .iter()
            .map(|p| Part { region: p.region, value: p.value * num::abs(c), negative: p.negative != (c < 0.0) })
            .collect();
        SimpleVector::from_parts(self.carrier, parts).expect("scaling keeps parts valid")
    }

    pub fn abs(&self) -> SimpleVector {
        let parts = self.parts.iter().map(|p| Part { negative: false, ..*p }).collect();
        SimpleVector { carrier: self.carrier, parts }
    }

    /// Applies `f` to `|x|` part by part; `f(0)` is assumed to be 0.
    pub fn map_abs(&self, f: impl Fn(f64) -> f64) -> Result<SimpleVector> {
        let parts = self.parts.iter().map(|p| Part { region: p.region, value: f(p.value), negative: false }).collect();
        SimpleVector::from_parts(self.carrier, parts)
    }

    fn value_at_segment(&self, lo: f64) -> f64 {
        let i = self.parts.partition_point(|p| p.region.lo <= lo);
        if i == 0 {
            return 0.0;
        }
        let p = &self.parts[i - 1];
        if lo < p.region.hi {
            p.signed()
        } else {
            0.0
        }
    }

    /// Pointwise `f(x, y)` on the common refinement.
    pub fn combine(&self, other: &SimpleVector, f: impl Fn(f64, f64) -> f64) -> Result<SimpleVector> {
        if self.carrier != other.carrier {
            return Err(Error::Precondition("carriers differ".into()));
        }
        let mut cuts: Vec<f64> = Vec::with_capacity(2 * (self.parts.len() + other.parts.len()));
        for p in self.parts.iter().chain(other.parts.iter()) {
            cuts.push(p.region.lo);
            cuts.push(p.region.hi);
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        let mut steps = Vec::with_capacity(cuts.len());
        for w in cuts.windows(2) {
            let v = f(self.value_at_segment(w[0]), other.value_at_segment(w[0]));
            if v != 0.0 {
                steps.push((w[0], w[1], v));
            }
        }
        SimpleVector::from_steps(self.carrier, &steps)
    }

    pub fn add(&self, other: &SimpleVector) -> Result<SimpleVector> {
        self.combine(other, |a, b| a + b)
    }

    /// `α·x + β·y`
    pub fn lin_comb(&self, alpha: f64, other: &SimpleVector, beta: f64) -> Result<SimpleVector> {
        self.combine(other, |a, b| alpha * a + beta * b)
    }

    /// `|x| ≤ |y|` everywhere.
    pub fn dominated_by(&self, other: &SimpleVector) -> bool {
        match self.combine(other, |a, b| if num::abs(a) > num::abs(b) { 1.0 } else { 0.0 }) {
            Ok(v) => v.is_zero(),
            Err(_) => false,
        }
    }

    /// Supports do not meet (exact region bookkeeping).
    pub fn disjoint(&self, other: &SimpleVector) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (self.parts[i].region, other.parts[j].region);
            if a.hi <= b.lo {
                i += 1;
            } else if b.hi <= a.lo {
                j += 1;
            } else {
                return false;
            }
        }
        true
    }
}

/// Weight `w(n)` of a weighted `l_p` space.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRule {
    /// `w(n) = a^{−n}`
    Geometric { a: f64 },
    /// `w(n) = 1/n`
    Harmonic,
    /// `w(n) = n^{−q}`
    Power { q: f64 },
    /// `w(2i−1) = i`, `w(2i) = 1/i`
    Alternating,
}

impl WeightRule {
    pub fn weight(&self, n: u64) -> f64 {
        let x = n as f64;
        match *self {
            WeightRule::Geometric { a } => num::powf(a, -x),
            WeightRule::Harmonic => 1.0 / x,
            WeightRule::Power { q } => num::powf(x, -q),
            WeightRule::Alternating => {
                let i = n.div_ceil(2) as f64;
                if n % 2 == 1 {
                    i
                } else {
                    1.0 / i
                }
            }
        }
    }

    /// `Σ_{n=lo}^{hi−1} w(n)`
    pub fn range_sum(&self, lo: u64, hi: u64) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        match *self {
            WeightRule::Geometric { a } => {
                if a == 1.0 {
                    (hi - lo) as f64
                } else {
                    let r = 1.0 / a;
                    num::powf(r, lo as f64) * (1.0 - num::powf(r, (hi - lo) as f64)) / (1.0 - r)
                }
            }
            WeightRule::Harmonic => num::power_sum(1.0, lo, hi - 1),
            WeightRule::Power { q } => num::power_sum(q, lo, hi - 1),
            WeightRule::Alternating => {
                // odd n = 2i−1 contribute i, even n = 2i contribute 1/i
                let (odd_lo, odd_hi) = (lo / 2 + 1, hi / 2);
                let odd = if odd_hi >= odd_lo {
                    (odd_hi - odd_lo + 1) as f64 * (odd_lo + odd_hi) as f64 / 2.0
                } else {
                    0.0
                };
                let (even_lo, even_hi) = (lo.div_ceil(2), (hi - 1) / 2);
                let even = if even_hi >= even_lo { num::power_sum(1.0, even_lo, even_hi) } else { 0.0 };
                odd + even
            }
        }
    }

    fn summable(&self) -> bool {
        match *self {
            WeightRule::Geometric { a } => a > 1.0,
            WeightRule::Power { q } => q > 1.0,
            WeightRule::Harmonic | WeightRule::Alternating => false,
        }
    }

    fn bounded_below(&self) -> bool {
        match *self {
            WeightRule::Geometric { a } => a <= 1.0,
            WeightRule::Power { q } => q <= 0.0,
            WeightRule::Harmonic | WeightRule::Alternating => false,
        }
    }
}

/// Decreasing weight `w(t)` of a Lorentz space `Λ_{1,w}`.
#[derive(Debug, Clone, PartialEq)]
pub enum LorentzWeight {
    /// `w(t) = t^{α−1}`, `0 < α ≤ 1`
    Power { alpha: f64 },
    /// Piecewise linear through `(t, w)` nodes starting at `t = 0`,
    /// constant after the last node.
    Nodes(Vec<(f64, f64)>),
}

impl LorentzWeight {
    /// `W(s) = ∫_0^s w`
    pub fn primitive(&self, s: f64) -> f64 {
        match self {
            LorentzWeight::Power { alpha } => num::powf(s, *alpha) / alpha,
            LorentzWeight::Nodes(nodes) => {
                let mut acc = 0.0;
                for w in nodes.windows(2) {
                    let ((t1, w1), (t2, w2)) = (w[0], w[1]);
                    if s <= t1 {
                        return acc;
                    }
                    let e = num::min(s, t2);
                    let we = w1 + (w2 - w1) * (e - t1) / (t2 - t1);
                    acc += (e - t1) * (w1 + we) / 2.0;
                    if s <= t2 {
                        return acc;
                    }
                }
                let (tl, wl) = nodes[nodes.len() - 1];
                acc + (s - tl) * wl
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            LorentzWeight::Power { alpha } => {
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(Error::Invalid("Lorentz power weight needs 0 < alpha <= 1".into()));
                }
            }
            LorentzWeight::Nodes(nodes) => {
                if nodes.len() < 2 || nodes[0].0 != 0.0 {
                    return Err(Error::Invalid("Lorentz nodes must start at t = 0".into()));
                }
                for w in nodes.windows(2) {
                    if !(w[1].0 > w[0].0) || w[1].1 > w[0].1 {
                        return Err(Error::Invalid("Lorentz weight must be decreasing in t".into()));
                    }
                }
                if !(nodes[nodes.len() - 1].1 > 0.0) {
                    return Err(Error::Invalid("Lorentz weight must stay positive".into()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormFlavor {
    Luxemburg,
    Amemiya,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpaceKind {
    /// `L_p[0, γ)`
    Lp { p: f64, gamma: f64 },
    /// `l_p`
    SeqLp { p: f64 },
    /// `l_p(w)` with `‖x‖ = (Σ w(n)|x_n|^p)^{1/p}`
    WeightedLp { p: f64, weight: WeightRule },
    /// Cesàro sequence space `ces_p`, `p > 1`
    Cesaro { p: f64 },
    /// `L_1 ∩ L_∞` on `[0, ∞)` with `max(‖x‖_1, ‖x‖_∞)`
    L1CapLinf,
    /// `Λ_{1,w}[0, γ)`
    Lorentz { weight: LorentzWeight, gamma: f64 },
    /// Orlicz space of `u²` on `[0,1]`, `∞` beyond, on `[0, ∞)`
    OrliczCapped { flavor: NormFlavor },
}

/// Where `E` sits relative to `L_∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InclusionClass {
    /// neither `L_∞ ⊂ E` nor `E ⊂ L_∞`
    Neither = 1,
    /// `L_∞ ⊂ E`
    ContainsLinf = 2,
    /// `E ⊂ L_∞`
    InsideLinf = 3,
}

impl InclusionClass {
    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    /// quasi-triangle constant `C_E`
    pub c_e: f64,
    pub class: InclusionClass,
    /// order continuity
    pub oc: bool,
    /// `a_E = inf ‖χ_A‖_E`; meaningful for class 3
    pub a_e: ExtReal,
}

fn quasi_constant(p: f64) -> f64 {
    if p < 1.0 {
        num::powf(2.0, 1.0 / p - 1.0)
    } else {
        1.0
    }
}

impl SpaceDescriptor {
    pub fn new(kind: SpaceKind) -> Result<SpaceDescriptor> {
        let positive = |p: f64| {
            if p > 0.0 && p.is_finite() {
                Ok(())
            } else {
                Err(Error::Invalid(format!("exponent {p} must be positive")))
            }
        };
        let (c_e, class, oc, a_e) = match &kind {
            SpaceKind::Lp { p, gamma } => {
                positive(*p)?;
                if !(*gamma > 0.0) {
                    return Err(Error::Invalid("gamma must be positive".into()));
                }
                let class = if gamma.is_finite() { InclusionClass::ContainsLinf } else { InclusionClass::Neither };
                (quasi_constant(*p), class, true, Finite(0.0))
            }
            SpaceKind::SeqLp { p } => {
                positive(*p)?;
                (quasi_constant(*p), InclusionClass::InsideLinf, true, Finite(1.0))
            }
            SpaceKind::WeightedLp { p, weight } => {
                positive(*p)?;
                if let WeightRule::Geometric { a } = weight {
                    if !(*a > 0.0) {
                        return Err(Error::Invalid("geometric weight needs a > 0".into()));
                    }
                }
                let class = if weight.summable() {
                    InclusionClass::ContainsLinf
                } else if weight.bounded_below() {
                    InclusionClass::InsideLinf
                } else {
                    InclusionClass::Neither
                };
                let a_e = if class == InclusionClass::InsideLinf {
                    // w is non-decreasing for these rules, so e(1) is the smallest
                    Finite(num::powf(weight.weight(1), 1.0 / p))
                } else {
                    Finite(0.0)
                };
                (quasi_constant(*p), class, true, a_e)
            }
            SpaceKind::Cesaro { p } => {
                if !(*p > 1.0) {
                    return Err(Error::Invalid("ces_p needs p > 1".into()));
                }
                (1.0, InclusionClass::Neither, true, Finite(0.0))
            }
            SpaceKind::L1CapLinf => (1.0, InclusionClass::InsideLinf, false, Finite(1.0)),
            SpaceKind::Lorentz { weight, gamma } => {
                weight.validate()?;
                if !(*gamma > 0.0) {
                    return Err(Error::Invalid("gamma must be positive".into()));
                }
                let class = if gamma.is_finite() { InclusionClass::ContainsLinf } else { InclusionClass::Neither };
                (1.0, class, true, Finite(0.0))
            }
            SpaceKind::OrliczCapped { .. } => (1.0, InclusionClass::InsideLinf, false, Finite(1.0)),
        };
        Ok(SpaceDescriptor { kind, c_e, class, oc, a_e })
    }

    pub fn carrier(&self) -> Carrier {
        match &self.kind {
            SpaceKind::Lp { gamma, .. } | SpaceKind::Lorentz { gamma, .. } => Carrier::Interval { gamma: *gamma },
            SpaceKind::L1CapLinf | SpaceKind::OrliczCapped { .. } => Carrier::Interval { gamma: f64::INFINITY },
            SpaceKind::SeqLp { .. } | SpaceKind::WeightedLp { .. } | SpaceKind::Cesaro { .. } => Carrier::Counting,
        }
    }

    pub fn is_sequence_space(&self) -> bool {
        self.carrier() == Carrier::Counting
    }

    /// Exponent `r` with `‖x+y‖^r ≤ ‖x‖^r + ‖y‖^r`.
    pub fn p_norm_exponent(&self) -> f64 {
        match &self.kind {
            SpaceKind::Lp { p, .. } | SpaceKind::SeqLp { p } | SpaceKind::WeightedLp { p, .. } => num::min(*p, 1.0),
            _ => 1.0,
        }
    }

    fn check_carrier(&self, x: &SimpleVector) -> Result<()> {
        match (self.carrier(), x.carrier()) {
            (Carrier::Counting, Carrier::Counting) => Ok(()),
            (Carrier::Interval { gamma }, Carrier::Interval { .. }) => {
                if x.parts().iter().all(|p| p.region.hi <= gamma) {
                    Ok(())
                } else {
                    Err(Error::Precondition(format!("vector leaves [0, {gamma})")))
                }
            }
            _ => Err(Error::Precondition("carrier does not match the space".into())),
        }
    }

    /// `‖x‖_E`; `Inf` when `x ∉ E`.
    pub fn norm(&self, x: &SimpleVector) -> Result<ExtReal> {
        self.check_carrier(x)?;
        if x.is_zero() {
            return Ok(Finite(0.0));
        }
        let parts = x.parts();
        let r = match &self.kind {
            SpaceKind::Lp { p, .. } => {
                let s: f64 = parts.iter().map(|q| num::powf(q.value, *p) * q.region.measure()).sum();
                num::powf(s, 1.0 / p)
            }
            SpaceKind::SeqLp { p } => {
                let s: f64 = parts.iter().map(|q| num::powf(q.value, *p) * q.region.measure()).sum();
                num::powf(s, 1.0 / p)
            }
            SpaceKind::WeightedLp { p, weight } => {
                let s: f64 = parts
                    .iter()
                    .map(|q| num::powf(q.value, *p) * weight.range_sum(q.region.lo as u64, q.region.hi as u64))
                    .sum();
                num::powf(s, 1.0 / p)
            }
            SpaceKind::Cesaro { p } => num::powf(cesaro_power_sum(parts, *p), 1.0 / p),
            SpaceKind::L1CapLinf => {
                let l1: f64 = parts.iter().map(|q| q.value * q.region.measure()).sum();
                num::max(l1, x.sup_abs())
            }
            SpaceKind::Lorentz { weight, .. } => {
                let mut sorted: Vec<(f64, f64)> = parts.iter().map(|q| (q.value, q.region.measure())).collect();
                sorted.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
                let mut t = 0.0;
                let mut acc = 0.0;
                for (v, m) in sorted {
                    let w0 = weight.primitive(t);
                    t += m;
                    acc += v * (weight.primitive(t) - w0);
                }
                acc
            }
            SpaceKind::OrliczCapped { flavor } => {
                let q: f64 = parts.iter().map(|q| q.value * q.value * q.region.measure()).sum();
                let sup = x.sup_abs();
                match flavor {
                    NormFlavor::Luxemburg => num::max(sup, num::sqrt(q)),
                    NormFlavor::Amemiya => {
                        // (1/k)(1 + k²Q) is minimal at k = 1/√Q, subject to k·sup ≤ 1
                        if num::sqrt(q) >= sup {
                            2.0 * num::sqrt(q)
                        } else {
                            sup + q / sup
                        }
                    }
                }
            }
        };
        Ok(ExtReal::from_f64(if r.is_nan() { f64::INFINITY } else { r }))
    }

    /// `‖x‖_E` as `f64`.
    pub fn norm_f64(&self, x: &SimpleVector) -> Result<f64> {
        self.norm(x).map(ExtReal::to_f64)
    }

    /// `‖χ_A‖_E` as a function of `μ(A)` for rearrangement-invariant
    /// interval kinds.
    pub fn chi_norm(&self, measure: f64) -> Option<f64> {
        if measure <= 0.0 {
            return Some(0.0);
        }
        Some(match &self.kind {
            SpaceKind::Lp { p, .. } => num::powf(measure, 1.0 / p),
            SpaceKind::L1CapLinf => num::max(measure, 1.0),
            SpaceKind::Lorentz { weight, .. } => weight.primitive(measure),
            SpaceKind::OrliczCapped { flavor: NormFlavor::Luxemburg } => num::max(1.0, num::sqrt(measure)),
            SpaceKind::OrliczCapped { flavor: NormFlavor::Amemiya } => {
                if measure <= 1.0 {
                    1.0 + measure
                } else {
                    2.0 * num::sqrt(measure)
                }
            }
            _ => return None,
        })
    }

    /// `μ(A)` with `‖χ_A‖_E = target`; `None` when the value is not attained
    /// or the kind has no measure solver.
    pub fn solve_chi_measure(&self, target: f64) -> Option<f64> {
        if !(target > 0.0) || !target.is_finite() {
            return None;
        }
        let m = match &self.kind {
            SpaceKind::Lp { p, .. } => num::powf(target, *p),
            SpaceKind::L1CapLinf => {
                if target < 1.0 {
                    return None;
                }
                target
            }
            SpaceKind::Lorentz { weight: LorentzWeight::Power { alpha }, .. } => num::powf(alpha * target, 1.0 / alpha),
            SpaceKind::Lorentz { weight, .. } => {
                let mut hi = 1.0;
                let mut guard = 0;
                while weight.primitive(hi) < target {
                    hi *= 2.0;
                    guard += 1;
                    if guard > 2000 {
                        return None;
                    }
                }
                let mut lo = 0.0;
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if weight.primitive(mid) < target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo <= 1e-15 * hi {
                        break;
                    }
                }
                hi
            }
            SpaceKind::OrliczCapped { flavor: NormFlavor::Luxemburg } => {
                if target < 1.0 {
                    return None;
                }
                target * target
            }
            SpaceKind::OrliczCapped { flavor: NormFlavor::Amemiya } => {
                if target <= 1.0 {
                    return None;
                }
                if target <= 2.0 {
                    target - 1.0
                } else {
                    target * target / 4.0
                }
            }
            _ => return None,
        };
        if let Carrier::Interval { gamma } = self.carrier() {
            if m > gamma {
                return None;
            }
        }
        Some(m)
    }

    /// `a_E` with provenance.
    pub fn a_e_report(&self, horizon: u64) -> AeReport {
        if self.class != InclusionClass::InsideLinf {
            if self.is_sequence_space() {
                let (value, decreasing) = horizon_inf_unit_norm(self, horizon);
                let flag = if decreasing { AeFlag::NotBoundedBelow } else { AeFlag::NotClassThree };
                return AeReport { value, flag };
            }
            return AeReport { value: 0.0, flag: AeFlag::NotClassThree };
        }
        AeReport { value: self.a_e.to_f64(), flag: AeFlag::Exact }
    }
}

/// Provenance of an `a_E` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AeFlag {
    Exact,
    /// Infimum over the horizon still decreasing at its end.
    NotBoundedBelow,
    /// Class 1 or 2 space: `a_E = 0`.
    NotClassThree,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AeReport {
    pub value: f64,
    pub flag: AeFlag,
}

fn unit_norm(space: &SpaceDescriptor, i: u64) -> f64 {
    match &space.kind {
        SpaceKind::SeqLp { .. } => 1.0,
        SpaceKind::WeightedLp { p, weight } => num::powf(weight.weight(i), 1.0 / p),
        SpaceKind::Cesaro { p } => num::powf(num::power_sum(*p, i, u64::MAX), 1.0 / p),
        _ => f64::NAN,
    }
}

fn horizon_inf_unit_norm(space: &SpaceDescriptor, horizon: u64) -> (f64, bool) {
    let mut best = f64::INFINITY;
    let mut last_improvement = 0;
    for i in 1..=horizon {
        let v = unit_norm(space, i);
        if v < best {
            best = v;
            last_improvement = i;
        }
    }
    (best, last_improvement * 2 > horizon)
}

/// `Σ_n (S(n)/n)^p` with `S(n) = Σ_{k ≤ n} |x_k|`, including the tail past
/// the support in closed form.
fn cesaro_power_sum(parts: &[Part], p: f64) -> f64 {
    let mut total = 0.0;
    let mut prefix = 0.0;
    let mut next = 1u64;
    for q in parts {
        let (lo, hi) = (q.region.lo as u64, q.region.hi as u64);
        if prefix > 0.0 && lo > next {
            total += num::powf(prefix, p) * num::power_sum(p, next, lo - 1);
        }
        for n in lo..hi {
            prefix += q.value;
            total += num::powf(prefix / n as f64, p);
        }
        next = hi;
    }
    if prefix > 0.0 {
        total += num::powf(prefix, p) * num::power_sum(p, next, u64::MAX);
    }
    total
}

/// Selection mode for unit-vector sequences in sequence spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSequenceMode {
    /// `‖e(i_j)‖ ≤ d` and `Σ_j e(i_j) ∉ E`
    BoundedD,
    /// `‖e(i_j)‖ → 0` and `‖e(i_{j+1})‖/‖e(i_j)‖ ≥ d`
    VanishingRatioD,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitSequence {
    pub indices: Vec<u64>,
    pub norms: Vec<f64>,
    pub d: f64,
    /// Partial-sum norm (bounded mode) or last/first norm ratio (vanishing mode).
    pub evidence: f64,
}

/// Partial-sum norm that certifies `Σ e(i_j) ∉ E` up to the horizon.
pub const DIVERGENCE_THRESHOLD: f64 = 10.0;
/// Decay of `‖e(i_j)‖` relative to the first term that certifies `→ 0`.
pub const VANISHING_THRESHOLD: f64 = 1e-3;

/// Searches `1..=horizon` for a unit-vector sequence with the given mode.
pub fn find_unit_vector_sequence(space: &SpaceDescriptor, mode: UnitSequenceMode, horizon: u64) -> Result<UnitSequence> {
    if !space.is_sequence_space() {
        return Err(Error::Precondition("unit vectors need the counting carrier".into()));
    }
    let norms: Vec<f64> = (1..=horizon).map(|i| unit_norm(space, i)).collect();
    match mode {
        UnitSequenceMode::BoundedD => {
            let half_sup = norms[..norms.len() / 2].iter().cloned().fold(0.0, num::max);
            let sup = norms.iter().cloned().fold(0.0, num::max);
            let mut sorted = norms.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut candidates = Vec::new();
            if sup <= half_sup * (1.0 + 1e-12) {
                candidates.push(sup);
            }
            for q in [0.5, 0.75, 0.9] {
                candidates.push(sorted[((sorted.len() - 1) as f64 * q) as usize]);
            }
            for d in candidates {
                let indices: Vec<u64> = (1..=horizon).filter(|&i| norms[(i - 1) as usize] <= d).collect();
                if indices.is_empty() {
                    continue;
                }
                let steps: Vec<(f64, f64, f64)> = indices.iter().map(|&i| (i as f64, i as f64 + 1.0, 1.0)).collect();
                let sum = SimpleVector::from_steps(Carrier::Counting, &steps)?;
                let evidence = space.norm_f64(&sum)?;
                if evidence > DIVERGENCE_THRESHOLD {
                    let ns = indices.iter().map(|&i| norms[(i - 1) as usize]).collect();
                    return Ok(UnitSequence { indices, norms: ns, d, evidence });
                }
            }
            Err(Error::NotFound(format!("no bounded unit sequence with divergent sum up to index {horizon}")))
        }
        UnitSequenceMode::VanishingRatioD => {
            let mut indices = Vec::new();
            let mut ns = Vec::new();
            let mut best = f64::INFINITY;
            for (k, &v) in norms.iter().enumerate() {
                if v < best && v > 1e-250 {
                    best = v;
                    indices.push(k as u64 + 1);
                    ns.push(v);
                }
            }
            if ns.len() < 2 || ns[ns.len() - 1] > VANISHING_THRESHOLD * ns[0] {
                return Err(Error::NotFound(format!("unit norms do not vanish up to index {horizon}")));
            }
            let d = ns.windows(2).map(|w| w[1] / w[0]).fold(1.0, num::min);
            let evidence = ns[ns.len() - 1] / ns[0];
            Ok(UnitSequence { indices, norms: ns, d, evidence })
        }
    }
}

/// Empirical uniform monotonicity: for each `ε`, the minimum over sampled
/// disjoint pairs of `‖x + y‖ − 1` after scaling to `‖x‖ = 1`, `‖y‖ = ε`.
pub fn monotonicity_probe(
    space: &SpaceDescriptor,
    pairs: &[(SimpleVector, SimpleVector)],
    eps_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if space.c_e != 1.0 {
        return Err(Error::Precondition("monotonicity probe needs C_E = 1".into()));
    }
    let mut rows = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let mut delta = f64::INFINITY;
        for (x, y) in pairs {
            if !x.disjoint(y) {
                return Err(Error::Precondition("probe pairs must be disjoint".into()));
            }
            let (nx, ny) = (space.norm_f64(x)?, space.norm_f64(y)?);
            if !(nx > 0.0 && ny > 0.0 && nx.is_finite() && ny.is_finite()) {
                continue;
            }
            let s = x.scale(1.0 / nx).add(&y.scale(eps / ny))?;
            delta = num::min(delta, space.norm_f64(&s)? - 1.0);
        }
        rows.push((eps, delta));
    }
    Ok(rows)
}

/// `δ₁(ε₁, A) = δ(ε₁/A)` on the same samples.
pub fn rescaled_monotonicity(
    space: &SpaceDescriptor,
    pairs: &[(SimpleVector, SimpleVector)],
    eps1: f64,
    a: f64,
) -> Result<f64> {
    Ok(monotonicity_probe(space, pairs, &[eps1 / a])?[0].1)
}

/// Norm of `x` against `Inf` for convenience in tests and reports.
pub fn norm_or_inf(space: &SpaceDescriptor, x: &SimpleVector) -> ExtReal {
    space.norm(x).unwrap_or(Inf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn half_line() -> Carrier {
        Carrier::Interval { gamma: f64::INFINITY }
    }

    #[test]
    fn canonical_form_merges_and_drops() {
        let x = SimpleVector::from_steps(half_line(), &[(2.0, 3.0, 1.0), (0.0, 1.0, 1.0), (1.0, 2.0, 1.0), (5.0, 6.0, 0.0)])
            .unwrap();
        assert_eq!(x.parts().len(), 1);
        assert_eq!(x.parts()[0].region, Region::new(0.0, 3.0));
        assert!(SimpleVector::from_steps(half_line(), &[(0.0, 2.0, 1.0), (1.0, 3.0, 1.0)]).is_err());
        assert!(SimpleVector::from_steps(Carrier::Counting, &[(0.0, 2.0, 1.0)]).is_err());
    }

    #[test]
    fn combine_on_common_refinement() {
        let x = SimpleVector::from_steps(half_line(), &[(0.0, 2.0, 1.0)]).unwrap();
        let y = SimpleVector::from_steps(half_line(), &[(1.0, 3.0, -2.0)]).unwrap();
        let s = x.add(&y).unwrap();
        let vals: Vec<(f64, f64, f64)> = s.parts().iter().map(|p| (p.region.lo, p.region.hi, p.signed())).collect();
        assert_eq!(vals, vec![(0.0, 1.0, 1.0), (1.0, 2.0, -1.0), (2.0, 3.0, -2.0)]);
        assert!(!x.disjoint(&y));
        assert!(x.dominated_by(&y.scale(-1.0).add(&SimpleVector::chi(half_line(), 0.0, 1.0).unwrap()).unwrap()));
    }

    #[test]
    fn norm_examples() {
        let l1 = SpaceDescriptor::new(SpaceKind::Lp { p: 1.0, gamma: f64::INFINITY }).unwrap();
        assert_eq!(l1.norm_f64(&SimpleVector::chi(half_line(), 0.0, 3.0).unwrap()).unwrap(), 3.0);
        let lux = SpaceDescriptor::new(SpaceKind::OrliczCapped { flavor: NormFlavor::Luxemburg }).unwrap();
        let ame = SpaceDescriptor::new(SpaceKind::OrliczCapped { flavor: NormFlavor::Amemiya }).unwrap();
        assert_eq!(lux.norm_f64(&SimpleVector::chi(half_line(), 0.0, 4.0).unwrap()).unwrap(), 2.0);
        assert_eq!(ame.norm_f64(&SimpleVector::chi(half_line(), 0.0, 0.5).unwrap()).unwrap(), 1.5);
        assert_eq!(ame.norm_f64(&SimpleVector::chi(half_line(), 0.0, 4.0).unwrap()).unwrap(), 4.0);
        let lw = SpaceDescriptor::new(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Geometric { a: 2.0 } }).unwrap();
        assert_eq!(lw.norm_f64(&SimpleVector::unit(3)).unwrap(), 0.125);
    }

    #[test]
    fn amemiya_matches_direct_minimisation() {
        let ame = SpaceDescriptor::new(SpaceKind::OrliczCapped { flavor: NormFlavor::Amemiya }).unwrap();
        let x = SimpleVector::from_steps(half_line(), &[(0.0, 0.3, 0.5), (1.0, 2.5, 1.2), (4.0, 4.2, 0.1)]).unwrap();
        // inf_k (1/k)(1 + ∫ψ(k|x|)) by brute force over k
        let mut best = f64::INFINITY;
        for i in 1..200_000 {
            let k = i as f64 * 1e-5;
            if k * 1.2 > 1.0 {
                break;
            }
            let integral: f64 = x.parts().iter().map(|p| (k * p.value).powi(2) * p.region.measure()).sum();
            best = best.min((1.0 + integral) / k);
        }
        let got = ame.norm_f64(&x).unwrap();
        assert!((got - best).abs() < 1e-6, "{got} vs {best}");
    }

    #[test]
    fn weighted_range_sums_match_direct() {
        for rule in [WeightRule::Alternating, WeightRule::Harmonic, WeightRule::Power { q: 1.5 }, WeightRule::Geometric { a: 1.5 }] {
            for &(lo, hi) in &[(1u64, 2u64), (1, 10), (2, 9), (3, 4), (5, 300), (7, 2000)] {
                let direct: f64 = (lo..hi).map(|n| rule.weight(n)).sum();
                let fast = rule.range_sum(lo, hi);
                assert!((direct - fast).abs() < 1e-10 * direct.max(1.0), "{rule:?} {lo} {hi}: {direct} vs {fast}");
            }
        }
    }

    #[test]
    fn cesaro_matches_truncated_direct_sum() {
        let ces = SpaceDescriptor::new(SpaceKind::Cesaro { p: 2.0 }).unwrap();
        let x = SimpleVector::from_steps(Carrier::Counting, &[(1.0, 3.0, 1.0), (5.0, 6.0, 2.0)]).unwrap();
        let vals = [1.0, 1.0, 0.0, 0.0, 2.0];
        let mut s = 0.0;
        let mut total = 0.0;
        for n in 1..=2_000_000usize {
            s += if n <= 5 { vals[n - 1] } else { 0.0 };
            total += (s / n as f64).powi(2);
        }
        // remaining tail beyond 2e6 is 16·Σ_{n>2e6} n^{-2} ≈ 8e-6
        total += 16.0 / 2_000_000.0;
        let got = ces.norm_f64(&x).unwrap();
        assert!((got - total.sqrt()).abs() < 1e-9, "{got} vs {}", total.sqrt());
    }

    #[test]
    fn lorentz_uses_decreasing_rearrangement() {
        let lor = SpaceDescriptor::new(SpaceKind::Lorentz { weight: LorentzWeight::Power { alpha: 0.5 }, gamma: f64::INFINITY })
            .unwrap();
        let x = SimpleVector::from_steps(half_line(), &[(0.0, 1.0, 1.0), (3.0, 4.0, 2.0)]).unwrap();
        // x* = 2 on [0,1), 1 on [1,2); W(s) = 2√s
        let expected = 2.0 * 2.0 + 1.0 * (2.0 * 2f64.sqrt() - 2.0);
        assert!((lor.norm_f64(&x).unwrap() - expected).abs() < 1e-12);
        let y = SimpleVector::from_steps(half_line(), &[(0.0, 1.0, 2.0), (7.0, 8.0, 1.0)]).unwrap();
        assert!((lor.norm_f64(&y).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn classes_and_constants() {
        let c = |k| SpaceDescriptor::new(k).unwrap();
        assert_eq!(c(SpaceKind::Lp { p: 1.0, gamma: f64::INFINITY }).class, InclusionClass::Neither);
        assert_eq!(c(SpaceKind::Lp { p: 1.0, gamma: 1.0 }).class, InclusionClass::ContainsLinf);
        assert_eq!(c(SpaceKind::SeqLp { p: 2.0 }).class, InclusionClass::InsideLinf);
        assert_eq!(c(SpaceKind::L1CapLinf).class, InclusionClass::InsideLinf);
        assert_eq!(
            c(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Geometric { a: 2.0 } }).class,
            InclusionClass::ContainsLinf
        );
        assert_eq!(c(SpaceKind::Cesaro { p: 2.0 }).class, InclusionClass::Neither);
        assert_eq!(c(SpaceKind::Lp { p: 0.5, gamma: 1.0 }).c_e, 2.0);
        assert_eq!(c(SpaceKind::Lp { p: 0.25, gamma: 1.0 }).c_e, 8.0);
        assert_eq!(c(SpaceKind::SeqLp { p: 3.0 }).c_e, 1.0);
    }

    #[test]
    fn a_e_examples() {
        let l2 = SpaceDescriptor::new(SpaceKind::SeqLp { p: 2.0 }).unwrap();
        assert_eq!(l2.a_e_report(100), AeReport { value: 1.0, flag: AeFlag::Exact });
        let harm = SpaceDescriptor::new(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Harmonic }).unwrap();
        let r = harm.a_e_report(1000);
        assert_eq!(r.flag, AeFlag::NotBoundedBelow);
        assert!((r.value - 1e-3).abs() < 1e-15);
        let lux = SpaceDescriptor::new(SpaceKind::OrliczCapped { flavor: NormFlavor::Luxemburg }).unwrap();
        assert_eq!(lux.a_e_report(10).value, 1.0);
        // brute-force: inf over μ of max(1, √μ) on a grid
        let grid_inf = (1..1000).map(|i| lux.chi_norm(i as f64 * 0.01).unwrap()).fold(f64::INFINITY, f64::min);
        assert_eq!(grid_inf, 1.0);
    }

    #[test]
    fn unit_sequences() {
        let ces = SpaceDescriptor::new(SpaceKind::Cesaro { p: 2.0 }).unwrap();
        let s = find_unit_vector_sequence(&ces, UnitSequenceMode::BoundedD, 2000).unwrap();
        assert_eq!(s.indices.len(), 2000);
        let zeta2 = core::f64::consts::PI * core::f64::consts::PI / 6.0;
        assert!((s.d - zeta2.sqrt()).abs() < 1e-12);

        let alt = SpaceDescriptor::new(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Alternating }).unwrap();
        let s = find_unit_vector_sequence(&alt, UnitSequenceMode::BoundedD, 200_000).unwrap();
        assert_eq!(s.d, 1.0);
        assert!(s.indices.iter().skip(1).all(|i| i % 2 == 0));

        let geo = SpaceDescriptor::new(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Geometric { a: 2.0 } }).unwrap();
        let s = find_unit_vector_sequence(&geo, UnitSequenceMode::VanishingRatioD, 200).unwrap();
        assert!((s.d - 0.5).abs() < 1e-12);
        let geo2 = SpaceDescriptor::new(SpaceKind::WeightedLp { p: 2.0, weight: WeightRule::Geometric { a: 4.0 } }).unwrap();
        let s = find_unit_vector_sequence(&geo2, UnitSequenceMode::VanishingRatioD, 200).unwrap();
        assert!((s.d - 0.5).abs() < 1e-12);

        let l2 = SpaceDescriptor::new(SpaceKind::SeqLp { p: 2.0 }).unwrap();
        assert!(matches!(
            find_unit_vector_sequence(&l2, UnitSequenceMode::VanishingRatioD, 100),
            Err(Error::NotFound(_))
        ));
    }

    #[test]
    fn monotonicity_probe_examples() {
        let l1 = SpaceDescriptor::new(SpaceKind::Lp { p: 1.0, gamma: f64::INFINITY }).unwrap();
        let l2 = SpaceDescriptor::new(SpaceKind::Lp { p: 2.0, gamma: f64::INFINITY }).unwrap();
        let pairs = vec![
            (SimpleVector::chi(half_line(), 0.0, 1.0).unwrap(), SimpleVector::chi(half_line(), 1.0, 3.0).unwrap()),
            (
                SimpleVector::from_steps(half_line(), &[(0.0, 0.5, 3.0)]).unwrap(),
                SimpleVector::from_steps(half_line(), &[(2.0, 2.7, 0.4), (5.0, 6.0, 1.0)]).unwrap(),
            ),
        ];
        let t1 = monotonicity_probe(&l1, &pairs, &[0.5]).unwrap();
        assert!((t1[0].1 - 0.5).abs() < 1e-12);
        for eps in [0.1, 0.5, 1.0] {
            let t2 = monotonicity_probe(&l2, &pairs, &[eps]).unwrap();
            assert!((t2[0].1 - ((1.0 + eps * eps).sqrt() - 1.0)).abs() < 1e-12);
        }
        let r = rescaled_monotonicity(&l2, &pairs, 1.0, 2.0).unwrap();
        assert_eq!(r, monotonicity_probe(&l2, &pairs, &[0.5]).unwrap()[0].1);
        let lhalf = SpaceDescriptor::new(SpaceKind::Lp { p: 0.5, gamma: 1.0 }).unwrap();
        assert!(monotonicity_probe(&lhalf, &pairs, &[0.5]).is_err());
    }

    #[test]
    fn chi_measure_solver_inverts_chi_norm() {
        let spaces = [
            SpaceKind::Lp { p: 0.25, gamma: f64::INFINITY },
            SpaceKind::Lp { p: 3.0, gamma: f64::INFINITY },
            SpaceKind::Lorentz { weight: LorentzWeight::Power { alpha: 0.5 }, gamma: f64::INFINITY },
            SpaceKind::Lorentz { weight: LorentzWeight::Nodes(vec![(0.0, 3.0), (1.0, 1.0), (4.0, 0.5)]), gamma: f64::INFINITY },
        ];
        for k in spaces {
            let e = SpaceDescriptor::new(k).unwrap();
            for target in [0.01, 0.3, 1.0, 7.0] {
                let m = e.solve_chi_measure(target).unwrap();
                assert!((e.chi_norm(m).unwrap() - target).abs() < 1e-12 * target.max(1.0));
                let v = SimpleVector::chi(half_line(), 0.0, m).unwrap();
                assert!((e.norm_f64(&v).unwrap() - target).abs() < 1e-11 * target.max(1.0));
            }
        }
    }
}
