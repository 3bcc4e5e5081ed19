//! Piecewise Orlicz functions `φ: [0,∞) → [0,∞]`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, Inf};
use crate::num;

/// Samples per piece for the construction-time monotonicity check.
pub const MONOTONE_SAMPLES: usize = 10_000;
/// Relative slack of the monotonicity and continuity checks.
pub const CONSTRUCTION_TOL: f64 = 1e-12;
const CONTINUITY_TOL: f64 = 1e-9;

/// Value rule for infinitely many geometric nodes `u_k = u0·ratio^k`.
#[derive(Debug, Clone, PartialEq)]
pub enum NodeRule {
    /// `v_k = start + step·k`
    Arithmetic { start: f64, step: f64 },
    /// `v_k = 1/(start + step·k)`
    Reciprocal { start: f64, step: f64 },
}

impl NodeRule {
    fn value(&self, k: i64) -> f64 {
        match *self {
            NodeRule::Arithmetic { start, step } => start + step * k as f64,
            NodeRule::Reciprocal { start, step } => 1.0 / (start + step * k as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PieceKind {
    /// `coef·u^exp`
    Power { coef: f64, exp: f64 },
    /// `slope·u + intercept`
    Affine { slope: f64, intercept: f64 },
    /// `coef·ln(1+u)`
    Log1p { coef: f64 },
    /// `coef / ln(1+1/u)`, zero at `u = 0`
    InvLogRecip { coef: f64 },
    /// `coef·(e^{rate·u} − 1)`
    Exp { coef: f64, rate: f64 },
    /// `coef·e^{−rate/u}`, zero at `u = 0`
    ExpRecip { coef: f64, rate: f64 },
    /// Linear interpolation through `(u, v)` nodes covering the piece.
    Nodes(Vec<(f64, f64)>),
    /// Linear interpolation through geometric nodes. With `ratio > 1` the
    /// piece starts at `u0`; with `ratio < 1` it starts at 0 and ends at or
    /// before `u0`.
    GeometricNodes { u0: f64, ratio: f64, rule: NodeRule },
    Constant(f64),
    Infinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub from: f64,
    /// `f64::INFINITY` for the last piece.
    pub to: f64,
    pub kind: PieceKind,
}

impl Piece {
    pub fn new(from: f64, to: f64, kind: PieceKind) -> Piece {
        Piece { from, to, kind }
    }

    /// Value of the closed-form description at `u` (no `Infinite` handling).
    fn value(&self, u: f64) -> f64 {
        match &self.kind {
            PieceKind::Power { coef, exp } => {
                if u == 0.0 {
                    0.0
                } else {
                    coef * num::powf(u, *exp)
                }
            }
            PieceKind::Affine { slope, intercept } => slope * u + intercept,
            PieceKind::Log1p { coef } => coef * num::ln1p(u),
            PieceKind::InvLogRecip { coef } => {
                if u == 0.0 {
                    0.0
                } else {
                    coef / num::ln1p(1.0 / u)
                }
            }
            PieceKind::Exp { coef, rate } => coef * num::expm1(rate * u),
            PieceKind::ExpRecip { coef, rate } => {
                if u == 0.0 {
                    0.0
                } else {
                    num::exp(num::ln(*coef) - rate / u)
                }
            }
            PieceKind::Nodes(nodes) => interpolate(nodes, u),
            PieceKind::GeometricNodes { u0, ratio, rule } => geometric_value(*u0, *ratio, rule, u),
            PieceKind::Constant(c) => *c,
            PieceKind::Infinite => f64::INFINITY,
        }
    }

    /// `sup` of the piece, i.e. its value at `to` or its limit at ∞.
    fn sup(&self) -> ExtReal {
        if self.to.is_finite() {
            return ExtReal::from_f64(self.value(self.to));
        }
        match &self.kind {
            PieceKind::Constant(c) => Finite(*c),
            PieceKind::Affine { slope, intercept } if *slope == 0.0 => Finite(*intercept),
            PieceKind::ExpRecip { coef, .. } => Finite(*coef),
            _ => Inf,
        }
    }

    /// `inf{u ∈ [from, to] : value(u) > v}` given `value(from) ≤ v < sup`.
    fn inverse(&self, v: f64) -> f64 {
        let u = match &self.kind {
            PieceKind::Power { coef, exp } => num::powf(v / coef, 1.0 / exp),
            PieceKind::Affine { slope, intercept } => {
                if *slope > 0.0 {
                    (v - intercept) / slope
                } else {
                    self.from
                }
            }
            PieceKind::Log1p { coef } => num::expm1(v / coef),
            PieceKind::InvLogRecip { coef } => {
                if v == 0.0 {
                    self.from
                } else {
                    1.0 / num::expm1(coef / v)
                }
            }
            PieceKind::Exp { coef, rate } => num::ln1p(v / coef) / rate,
            PieceKind::ExpRecip { coef, rate } => {
                if v == 0.0 {
                    self.from
                } else {
                    rate / (num::ln(*coef) - num::ln(v))
                }
            }
            PieceKind::Nodes(nodes) => {
                let j = nodes.iter().position(|&(_, y)| y > v).unwrap_or(nodes.len() - 1);
                if j == 0 {
                    nodes[0].0
                } else {
                    let (u1, v1) = nodes[j - 1];
                    let (u2, v2) = nodes[j];
                    u1 + (v - v1) / (v2 - v1) * (u2 - u1)
                }
            }
            PieceKind::GeometricNodes { u0, ratio, rule } => geometric_inverse(*u0, *ratio, rule, v),
            PieceKind::Constant(_) | PieceKind::Infinite => self.from,
        };
        let u = if u.is_nan() { self.from } else { u };
        num::min(num::max(u, self.from), self.to)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Invalid(format!("piece [{}, {}): {msg}", self.from, self.to)));
        if !(self.from >= 0.0) || !(self.to > self.from) {
            return bad("needs 0 <= from < to");
        }
        match &self.kind {
            PieceKind::Power { coef, exp } => {
                if !(*coef > 0.0 && *exp > 0.0) {
                    return bad("power needs coef > 0 and exp > 0");
                }
            }
            PieceKind::Affine { slope, .. } => {
                if !(*slope >= 0.0) {
                    return bad("affine needs slope >= 0");
                }
            }
            PieceKind::Log1p { coef } | PieceKind::InvLogRecip { coef } => {
                if !(*coef > 0.0) {
                    return bad("coef must be positive");
                }
            }
            PieceKind::Exp { coef, rate } | PieceKind::ExpRecip { coef, rate } => {
                if !(*coef > 0.0 && *rate > 0.0) {
                    return bad("coef and rate must be positive");
                }
            }
            PieceKind::Nodes(nodes) => {
                if nodes.len() < 2 {
                    return bad("need at least two nodes");
                }
                if nodes.windows(2).any(|w| !(w[1].0 > w[0].0)) {
                    return bad("node abscissae must increase strictly");
                }
                if nodes[0].0 > self.from || nodes[nodes.len() - 1].0 < self.to {
                    return bad("nodes must cover the piece");
                }
            }
            PieceKind::GeometricNodes { u0, ratio, rule } => {
                if !(*u0 > 0.0 && *ratio > 0.0 && *ratio != 1.0) {
                    return bad("geometric nodes need u0 > 0 and ratio != 1");
                }
                match rule {
                    NodeRule::Arithmetic { start, step } => {
                        if !(*ratio > 1.0 && *start >= 0.0 && *step > 0.0) {
                            return bad("arithmetic values need ratio > 1, start >= 0, step > 0");
                        }
                    }
                    NodeRule::Reciprocal { start, step } => {
                        if !(*ratio < 1.0 && *start > 0.0 && *step > 0.0) {
                            return bad("reciprocal values need ratio < 1, start > 0, step > 0");
                        }
                    }
                }
                if *ratio > 1.0 && self.from != *u0 {
                    return bad("increasing geometric nodes must start at u0");
                }
                if *ratio < 1.0 && (self.from != 0.0 || self.to > *u0) {
                    return bad("decreasing geometric nodes must live on [0, u0]");
                }
            }
            PieceKind::Constant(c) => {
                if !(*c >= 0.0 && c.is_finite()) {
                    return bad("constant must be finite and nonnegative");
                }
            }
            PieceKind::Infinite => {}
        }
        Ok(())
    }
}

fn interpolate(nodes: &[(f64, f64)], u: f64) -> f64 {
    let j = nodes.partition_point(|&(x, _)| x <= u);
    if j == 0 {
        return nodes[0].1;
    }
    if j == nodes.len() {
        return nodes[j - 1].1;
    }
    let (u1, v1) = nodes[j - 1];
    let (u2, v2) = nodes[j];
    v1 + (u - u1) / (u2 - u1) * (v2 - v1)
}

fn node_u(u0: f64, ratio: f64, k: i64) -> f64 {
    u0 * num::powf(ratio, k as f64)
}

/// Index `k` of the node interval containing `u`: for `ratio > 1`,
/// `u_k ≤ u < u_{k+1}`; for `ratio < 1`, `u_{k+1} < u ≤ u_k`.
fn geometric_bracket(u0: f64, ratio: f64, u: f64) -> i64 {
    let mut k = num::floor(num::ln(u / u0) / num::ln(ratio)) as i64;
    if k < 0 {
        k = 0;
    }
    if ratio > 1.0 {
        while k > 0 && node_u(u0, ratio, k) > u {
            k -= 1;
        }
        while node_u(u0, ratio, k + 1) <= u {
            k += 1;
        }
    } else {
        while k > 0 && node_u(u0, ratio, k) < u {
            k -= 1;
        }
        while node_u(u0, ratio, k + 1) >= u {
            k += 1;
        }
    }
    k
}

fn geometric_value(u0: f64, ratio: f64, rule: &NodeRule, u: f64) -> f64 {
    if ratio < 1.0 && u == 0.0 {
        return 0.0;
    }
    let k = geometric_bracket(u0, ratio, u);
    let (ua, ub) = (node_u(u0, ratio, k), node_u(u0, ratio, k + 1));
    let (va, vb) = (rule.value(k), rule.value(k + 1));
    va + (u - ua) / (ub - ua) * (vb - va)
}

fn geometric_inverse(u0: f64, ratio: f64, rule: &NodeRule, v: f64) -> f64 {
    match *rule {
        NodeRule::Arithmetic { start, step } => {
            if start > v {
                return u0;
            }
            // smallest k with v_k > v
            let mut k = num::floor((v - start) / step) as i64 + 1;
            while k > 0 && rule.value(k - 1) > v {
                k -= 1;
            }
            while rule.value(k) <= v {
                k += 1;
            }
            let (ua, ub) = (node_u(u0, ratio, k - 1), node_u(u0, ratio, k));
            let (va, vb) = (rule.value(k - 1), rule.value(k));
            if !ub.is_finite() {
                return if v == va && ua.is_finite() { ua } else { f64::INFINITY };
            }
            ua + (v - va) / (vb - va) * (ub - ua)
        }
        NodeRule::Reciprocal { start, step } => {
            if v == 0.0 {
                return 0.0;
            }
            // largest k with v_k > v; nodes shrink towards 0 as k grows
            let mut k = num::ceil((1.0 / v - start) / step) as i64 - 1;
            if k < 0 {
                k = 0;
            }
            while rule.value(k + 1) > v {
                k += 1;
            }
            while k > 0 && rule.value(k) <= v {
                k -= 1;
            }
            let (ua, ub) = (node_u(u0, ratio, k + 1), node_u(u0, ratio, k));
            let (va, vb) = (rule.value(k + 1), rule.value(k));
            ua + (v - va) / (vb - va) * (ub - ua)
        }
    }
}

/// A validated Orlicz function with cached `a_φ`, `b_φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrliczFunction {
    pieces: Vec<Piece>,
    a_phi: f64,
    b_phi: ExtReal,
    phi_at_b: ExtReal,
    tends_to_infinity: bool,
    degenerate: bool,
}

impl OrliczFunction {
    /// Validates contiguity, `φ(0) = 0`, continuity on `(0, b_φ)` and
    /// monotonicity, then caches `a_φ` and `b_φ`.
    pub fn new(pieces: Vec<Piece>) -> Result<OrliczFunction> {
        if pieces.is_empty() {
            return Err(Error::Invalid("no pieces".into()));
        }
        if pieces[0].from != 0.0 {
            return Err(Error::Invalid("first piece must start at 0".into()));
        }
        if pieces[pieces.len() - 1].to != f64::INFINITY {
            return Err(Error::Invalid("last piece must extend to infinity".into()));
        }
        for p in &pieces {
            p.validate()?;
        }
        for w in pieces.windows(2) {
            if w[0].to != w[1].from {
                return Err(Error::Invalid(format!("gap or overlap at {} / {}", w[0].to, w[1].from)));
            }
            if w[0].kind == PieceKind::Infinite && w[1].kind != PieceKind::Infinite {
                return Err(Error::Invalid("finite piece after an infinite one".into()));
            }
            if w[1].kind != PieceKind::Infinite {
                let left = w[0].value(w[0].to);
                let right = w[1].value(w[1].from);
                if !num::close(left, right, CONTINUITY_TOL) {
                    return Err(Error::Invalid(format!(
                        "discontinuity at u = {}: left {left}, right {right}",
                        w[0].to
                    )));
                }
            }
        }
        let first = &pieces[0];
        if first.kind != PieceKind::Infinite && first.value(0.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::Invalid("phi(0) must be 0".into()));
        }
        check_monotone(&pieces)?;

        let b_index = pieces.iter().position(|p| p.kind == PieceKind::Infinite);
        let (b_phi, phi_at_b) = match b_index {
            Some(0) => (Finite(0.0), Finite(0.0)),
            Some(i) => {
                let b = pieces[i].from;
                (Finite(b), ExtReal::from_f64(pieces[i - 1].value(b)))
            }
            None => (Inf, Inf),
        };
        let a_phi = zero_end(&pieces)?;
        let tends_to_infinity = b_phi.is_finite() || pieces[pieces.len() - 1].sup().is_inf();
        let degenerate = Finite(a_phi) >= b_phi;
        Ok(OrliczFunction { pieces, a_phi, b_phi, phi_at_b, tends_to_infinity, degenerate })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// `sup{u ≥ 0 : φ(u) = 0}`
    pub fn a_phi(&self) -> f64 {
        self.a_phi
    }

    /// `sup{u ≥ 0 : φ(u) < ∞}`
    pub fn b_phi(&self) -> ExtReal {
        self.b_phi
    }

    /// `φ(b_φ)`, the left limit at `b_φ`; `Inf` when `b_φ = ∞`.
    pub fn phi_at_b(&self) -> ExtReal {
        self.phi_at_b
    }

    pub fn tends_to_infinity(&self) -> bool {
        self.tends_to_infinity
    }

    /// `a_φ = b_φ`.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    fn piece_index(&self, u: f64) -> usize {
        self.pieces.partition_point(|p| p.from <= u).saturating_sub(1)
    }

    pub fn eval(&self, u: f64) -> Result<ExtReal> {
        if !(u >= 0.0) {
            return Err(Error::Domain(format!("phi evaluated at {u}")));
        }
        Ok(self.value(u))
    }

    /// `eval` for arguments already known to be valid.
    pub fn value(&self, u: f64) -> ExtReal {
        if u == f64::INFINITY {
            return if self.tends_to_infinity { Inf } else { self.pieces[self.pieces.len() - 1].sup() };
        }
        let i = self.piece_index(u);
        let p = &self.pieces[i];
        if p.kind == PieceKind::Infinite {
            if u == 0.0 {
                return Finite(0.0);
            }
            if u == p.from {
                return self.phi_at_b;
            }
            return Inf;
        }
        ExtReal::from_f64(p.value(u))
    }

    /// `φ(u)` as `f64`, with `Inf` mapped to `f64::INFINITY`.
    pub fn value_f64(&self, u: f64) -> f64 {
        self.value(u).to_f64()
    }

    /// `φ⁻¹(v) = inf{u ≥ 0 : φ(u) > v}`; for `v = Inf` the limit of `φ⁻¹(w)` as `w → ∞`.
    pub fn generalized_inverse(&self, v: ExtReal) -> Result<ExtReal> {
        let v = match v {
            Inf => return Ok(self.b_phi),
            Finite(v) if v >= 0.0 => v,
            Finite(v) => return Err(Error::Domain(format!("generalized inverse at {v}"))),
        };
        for p in &self.pieces {
            if p.kind == PieceKind::Infinite {
                return Ok(Finite(p.from));
            }
            if p.sup() > Finite(v) {
                return Ok(Finite(p.inverse(v)));
            }
        }
        Ok(Inf)
    }

    /// `φ⁻¹(v)` for finite `v ≥ 0`, as `f64`.
    pub fn inverse_f64(&self, v: f64) -> f64 {
        self.generalized_inverse(ExtReal::from_f64(v)).map(ExtReal::to_f64).unwrap_or(f64::NAN)
    }

    /// `ψ = φ` on `[0, t]` and `ψ(u) = u − (t − φ(t))` beyond.
    pub fn renormalize(&self, threshold: f64) -> Result<OrliczFunction> {
        if !(threshold > 0.0) {
            return Err(Error::Precondition(format!("threshold {threshold} must be positive")));
        }
        let phi_t = match self.value(threshold) {
            Finite(x) => x,
            Inf => return Err(Error::Precondition(format!("phi({threshold}) is infinite"))),
        };
        let mut pieces: Vec<Piece> = Vec::new();
        for p in &self.pieces {
            if p.from >= threshold {
                break;
            }
            let mut q = p.clone();
            if q.to > threshold {
                q.to = threshold;
            }
            pieces.push(q);
        }
        pieces.push(Piece::new(
            threshold,
            f64::INFINITY,
            PieceKind::Affine { slope: 1.0, intercept: phi_t - threshold },
        ));
        OrliczFunction::new(pieces)
    }
}

fn sample_points(p: &Piece) -> Vec<f64> {
    let lo = if p.from > 0.0 { p.from } else { num::min(1e-12, p.to / 2.0) };
    let hi = if p.to.is_finite() { p.to } else { num::max(1e8, lo * 1e12) };
    let mut pts = num::log_grid(lo, hi, MONOTONE_SAMPLES);
    if p.from == 0.0 {
        pts.insert(0, 0.0);
    }
    pts
}

fn check_monotone(pieces: &[Piece]) -> Result<()> {
    let mut prev = 0.0f64;
    for p in pieces {
        if p.kind == PieceKind::Infinite {
            break;
        }
        for u in sample_points(p) {
            let v = p.value(u);
            if v.is_nan() || v < 0.0 {
                return Err(Error::Invalid(format!("phi({u}) = {v} is not a nonnegative value")));
            }
            if v < prev - CONSTRUCTION_TOL * num::max(1.0, prev) {
                return Err(Error::Invalid(format!("phi decreases near u = {u}")));
            }
            prev = num::max(prev, v);
        }
    }
    Ok(())
}

fn zero_end(pieces: &[Piece]) -> Result<f64> {
    for p in pieces {
        if p.kind == PieceKind::Infinite {
            return Ok(p.from);
        }
        if p.sup() == Finite(0.0) {
            continue;
        }
        let a = match &p.kind {
            PieceKind::Affine { slope, intercept } if *slope > 0.0 => num::max(p.from, -intercept / slope),
            PieceKind::Nodes(nodes) => {
                let mut a = p.from;
                for &(x, y) in nodes {
                    if x > p.from && x <= p.to && y == 0.0 {
                        a = x;
                    }
                }
                a
            }
            _ => p.from,
        };
        return Ok(a);
    }
    Err(Error::Invalid("phi vanishes identically".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    /// Brute-force `inf{u : φ(u) > v}` on a fine grid over `[0, hi]`.
    fn grid_inverse(phi: &OrliczFunction, v: f64, hi: f64) -> f64 {
        let n = 200_000;
        for i in 0..=n {
            let u = hi * i as f64 / n as f64;
            if phi.value(u) > Finite(v) {
                return u;
            }
        }
        f64::INFINITY
    }

    #[test]
    fn eval_examples() {
        assert_eq!(zoo::square().eval(2.0).unwrap(), Finite(4.0));
        assert_eq!(zoo::plateau_linear().eval(1.5).unwrap(), Finite(1.0));
        assert_eq!(zoo::square_capped().eval(2.0).unwrap(), Inf);
        assert!(matches!(zoo::square().eval(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn left_continuity_at_b() {
        let psi = zoo::square_capped();
        assert_eq!(psi.b_phi(), Finite(1.0));
        assert_eq!(psi.eval(1.0).unwrap(), Finite(1.0));
        assert_eq!(psi.phi_at_b(), Finite(1.0));
        assert_eq!(psi.eval(1.0 + 1e-12).unwrap(), Inf);
    }

    #[test]
    fn inverse_examples() {
        let id = zoo::power(1.0);
        assert_eq!(id.generalized_inverse(Finite(3.0)).unwrap(), Finite(3.0));
        let plateau = zoo::plateau_linear();
        let got = plateau.inverse_f64(1.0);
        assert!((got - grid_inverse(&plateau, 1.0, 4.0)).abs() < 1e-4);
        assert_eq!(got, 2.0);
        let psi = zoo::square_capped();
        assert_eq!(psi.inverse_f64(4.0), 1.0);
        assert!((grid_inverse(&psi, 4.0, 3.0) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn inverse_at_infinity() {
        assert_eq!(zoo::square_capped().generalized_inverse(Inf).unwrap(), Finite(1.0));
        assert_eq!(zoo::square().generalized_inverse(Inf).unwrap(), Inf);
        assert_eq!(zoo::square_saturated().inverse_f64(1.0), f64::INFINITY);
    }

    #[test]
    fn a_and_b_match_grid() {
        for (name, phi) in zoo::lemma_zoo() {
            let n = 100_000;
            let mut a = 0.0;
            let mut b = f64::INFINITY;
            for i in 1..=n {
                let u = 10.0 * i as f64 / n as f64;
                match phi.value(u) {
                    Finite(0.0) => a = u,
                    Inf if b.is_infinite() => b = u,
                    _ => {}
                }
            }
            assert!((phi.a_phi() - a).abs() < 1e-3, "{name}: a {} vs grid {a}", phi.a_phi());
            match phi.b_phi() {
                Finite(x) => assert!((x - b).abs() < 1e-3, "{name}"),
                Inf => assert!(b.is_infinite(), "{name}"),
            }
        }
    }

    #[test]
    fn geometric_nodes_hit_their_values() {
        let stair = zoo::dyadic_staircase();
        for n in 1..40 {
            let u = num::powf(2.0, (n - 1) as f64);
            assert!((stair.value_f64(u) - n as f64).abs() < 1e-9);
            assert!((stair.inverse_f64(n as f64) - u).abs() < 1e-9 * u);
        }
        let harm = zoo::harmonic_dyadic();
        for n in 3..60 {
            let u = num::powf(2.0, -((n - 1) as f64));
            assert!((harm.value_f64(u) - 1.0 / n as f64).abs() < 1e-12);
            assert!((harm.inverse_f64(1.0 / n as f64) - u).abs() < 1e-9 * u);
        }
        // nodes past the f64 range
        assert_eq!(stair.inverse_f64(1024.0), num::powf(2.0, 1023.0));
        assert_eq!(stair.inverse_f64(1024.5), f64::INFINITY);
        assert_eq!(stair.inverse_f64(5000.0), f64::INFINITY);
    }

    #[test]
    fn rejects_bad_input() {
        let jump = OrliczFunction::new(alloc::vec![
            Piece::new(0.0, 1.0, PieceKind::Power { coef: 1.0, exp: 1.0 }),
            Piece::new(1.0, f64::INFINITY, PieceKind::Affine { slope: 1.0, intercept: 1.0 }),
        ]);
        assert!(matches!(jump, Err(Error::Invalid(_))));
        let decreasing = OrliczFunction::new(alloc::vec![Piece::new(
            0.0,
            f64::INFINITY,
            PieceKind::Nodes(alloc::vec![(0.0, 0.0), (1.0, 2.0), (2.0, 1.0), (3.0, 5.0)]),
        )]);
        assert!(decreasing.is_err());
        let not_zero = OrliczFunction::new(alloc::vec![Piece::new(
            0.0,
            f64::INFINITY,
            PieceKind::Affine { slope: 1.0, intercept: 1.0 },
        )]);
        assert!(not_zero.is_err());
    }

    #[test]
    fn renormalize_examples() {
        let sq = zoo::square();
        let psi = sq.renormalize(1.0).unwrap();
        assert_eq!(psi.value_f64(0.5), 0.25);
        assert_eq!(psi.value_f64(3.0), 3.0);
        let psi2 = sq.renormalize(2.0).unwrap();
        assert_eq!(psi2.value_f64(3.0), 5.0);
        assert_eq!(psi2.value_f64(2.0), 4.0);
        assert_eq!(psi2.pieces()[0].kind, sq.pieces()[0].kind);
        assert!(matches!(zoo::square_capped().renormalize(2.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn renormalize_repairs_bounded_function() {
        let phi = zoo::square_saturated();
        // a_E = 1 for l_p gives the threshold φ⁻¹(1/a_E) = φ⁻¹(1)
        let t = phi.inverse_f64(0.99);
        let psi = phi.renormalize(t).unwrap();
        assert!(psi.tends_to_infinity());
        assert!(!phi.tends_to_infinity());
        for i in 0..100 {
            let u = t * i as f64 / 100.0;
            assert_eq!(psi.value_f64(u), phi.value_f64(u));
        }
        assert!(psi.value_f64(10.0) > psi.value_f64(5.0));
    }
}
