//! Clause checker for the composition identities of `φ` and its generalized
//! inverse, and a generator of random piecewise-linear Orlicz functions.

use clspace::orlicz::{OrliczFunction, Piece, PieceKind};
use clspace::ExtReal;
use rand::Rng;

const REL: f64 = 1e-9;

/// A clause that failed at a sample point.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub clause: &'static str,
    pub at: f64,
    pub detail: String,
}

/// A random piecewise-linear function together with the facts the clauses
/// branch on.
#[derive(Debug, Clone)]
pub struct RandomPl {
    pub phi: OrliczFunction,
    pub nodes: Vec<(f64, f64)>,
    /// strictly increasing on `[a_φ, b_φ]`
    pub strict: bool,
}

/// Shape parameters of a random piecewise-linear function: segments as
/// `(Δu, Δv)` with `Δv = 0` for flats, an optional zero stretch, and either
/// an affine tail of the given slope or a jump to `∞` after the last node.
#[derive(Debug, Clone, PartialEq)]
pub struct PlShape {
    pub zero_stretch: Option<f64>,
    pub segments: Vec<(f64, f64)>,
    pub tail_slope: Option<f64>,
}

impl PlShape {
    pub fn random<R: Rng>(rng: &mut R) -> PlShape {
        let zero_stretch = rng.gen_bool(0.3).then(|| rng.gen_range(0.1..2.0));
        let n = rng.gen_range(1..=6);
        let mut segments: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let du = rng.gen_range(0.05..3.0);
                let dv = if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.05..5.0) };
                (du, dv)
            })
            .collect();
        if segments.iter().all(|s| s.1 == 0.0) {
            segments[0].1 = 1.0;
        }
        let tail_slope = (!rng.gen_bool(0.3)).then(|| rng.gen_range(0.1..4.0));
        PlShape { zero_stretch, segments, tail_slope }
    }

    pub fn build(&self) -> RandomPl {
        let mut nodes = vec![(0.0, 0.0)];
        if let Some(z) = self.zero_stretch {
            nodes.push((z, 0.0));
        }
        let mut strict = true;
        for &(du, dv) in &self.segments {
            let (u, v) = nodes[nodes.len() - 1];
            if dv == 0.0 && v > 0.0 {
                strict = false;
            }
            nodes.push((u + du, v + dv));
        }
        let (ul, vl) = nodes[nodes.len() - 1];
        let tail = match self.tail_slope {
            Some(s) => {
                // no rounding dip below the last node value at the knot
                let mut intercept = vl - s * ul;
                while s * ul + intercept < vl {
                    intercept += f64::EPSILON * (s * ul).abs().max(vl.abs()).max(1.0);
                }
                PieceKind::Affine { slope: s, intercept }
            }
            None => PieceKind::Infinite,
        };
        let phi = OrliczFunction::new(vec![
            Piece::new(0.0, ul, PieceKind::Nodes(nodes.clone())),
            Piece::new(ul, f64::INFINITY, tail),
        ])
        .expect("random piecewise-linear function is valid");
        RandomPl { phi, nodes, strict }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL * a.abs().max(b.abs()).max(1.0)
}

fn inv(phi: &OrliczFunction, v: ExtReal) -> f64 {
    phi.generalized_inverse(v).expect("generalized inverse of a non-negative value").to_f64()
}

/// `φ` is constant on `[u, u + δ)` for some small `δ`.
fn flat_right(phi: &OrliczFunction, u: f64) -> bool {
    let h = 1e-7 * u.max(1.0);
    phi.value(u) == phi.value(u + h)
}

/// Sample points: a log grid, `a_φ`, `b_φ`, the `extra` points and their
/// neighbours.
pub fn sample_points(phi: &OrliczFunction, extra: &[f64]) -> Vec<f64> {
    let mut us: Vec<f64> = (0..=240).map(|k| 10f64.powf(-6.0 + k as f64 * 0.05)).collect();
    us.push(0.0);
    let mut special = extra.to_vec();
    special.push(phi.a_phi());
    if let Some(b) = phi.b_phi().finite() {
        special.push(b);
    }
    for s in special {
        us.extend([s, s * (1.0 - 1e-6), s * (1.0 + 1e-6), s + 0.5]);
    }
    us.retain(|u| u.is_finite() && *u >= 0.0);
    us.sort_by(|a, b| a.partial_cmp(b).unwrap());
    us.dedup();
    us
}

/// Checks clauses (i)–(vii) on the sample points `us` (arguments of `φ`)
/// and `vs` (arguments of `φ⁻¹`). `strict` states whether `φ` is strictly
/// increasing on `[a_φ, b_φ]`.
pub fn check_clauses(phi: &OrliczFunction, strict: bool, us: &[f64], vs: &[f64]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut fail = |clause: &'static str, at: f64, detail: String| out.push(Violation { clause, at, detail });
    let a = phi.a_phi();
    let b = phi.b_phi();
    let phi_b = phi.phi_at_b();
    let b_f = b.to_f64();
    let unbounded_at_b = b.is_inf() || phi_b.is_inf();

    for &u in us {
        let fu = phi.value(u);
        let back = inv(phi, fu);
        if ExtReal::Finite(u) < b {
            // (i)
            if flat_right(phi, u) {
                if !(back > u) {
                    fail("i", u, format!("flat to the right but φ⁻¹(φ(u)) = {back}"));
                }
            } else if !close(back, u) {
                fail("i", u, format!("not flat but φ⁻¹(φ(u)) = {back}"));
            }
        } else if b.is_finite() {
            // (ii)
            if u == b_f && !close(back, b_f) {
                fail("ii", u, format!("φ⁻¹(φ(b_φ)) = {back}"));
            }
            if u > b_f && !(close(back, b_f) && back < u) {
                fail("ii", u, format!("φ⁻¹(φ(u)) = {back} beyond b_φ"));
            }
        }
        if strict && u >= a {
            // (v), (vi)
            let in_range = if unbounded_at_b { ExtReal::Finite(u) < b } else { u <= b_f };
            if in_range && !close(back, u) {
                fail(if unbounded_at_b { "v" } else { "vi" }, u, format!("φ⁻¹(φ(u)) = {back}"));
            }
        }
        // (vii), second half
        if fu.is_finite() && !(u <= back + REL * back.abs().max(1.0)) {
            fail("vii", u, format!("u > φ⁻¹(φ(u)) = {back}"));
        }
    }

    for &v in vs {
        let w = inv(phi, ExtReal::Finite(v));
        if (w.is_infinite() && b.is_inf()) || (w == 0.0 && v > 0.0 && a == 0.0) {
            // φ⁻¹(v) outside the f64 range
            continue;
        }
        let fw = phi.value(w);
        let fwf = fw.to_f64();
        if unbounded_at_b {
            // (iii)
            if !close(fwf, v) {
                fail("iii", v, format!("φ(φ⁻¹(v)) = {fwf}"));
            }
        } else {
            // (iv)
            let pb = phi_b.to_f64();
            if v <= pb && !close(fwf, v) {
                fail("iv", v, format!("φ(φ⁻¹(v)) = {fwf} below φ(b_φ)"));
            }
            if v > pb && !(fwf == pb && pb < v) {
                fail("iv", v, format!("φ(φ⁻¹(v)) = {fwf} above φ(b_φ) = {pb}"));
            }
        }
        // (vii), first half
        if !(fwf <= v + REL * v.abs().max(1.0)) {
            fail("vii", v, format!("φ(φ⁻¹(v)) = {fwf} > v"));
        }
    }
    out
}

/// Node values, `φ(b_φ)` and a log grid as arguments of `φ⁻¹`.
pub fn value_points(phi: &OrliczFunction, nodes: &[(f64, f64)]) -> Vec<f64> {
    let mut vs: Vec<f64> = (0..=240).map(|k| 10f64.powf(-6.0 + k as f64 * 0.05)).collect();
    vs.push(0.0);
    vs.extend(nodes.iter().map(|n| n.1));
    if let Some(pb) = phi.phi_at_b().finite() {
        vs.extend([pb, pb * (1.0 + 1e-6), pb + 1.0]);
    }
    vs.retain(|v| v.is_finite() && *v >= 0.0);
    vs
}

#[cfg(test)]
mod tests {
    use super::*;
    use clspace::zoo;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flat_piece_is_detected() {
        let phi = zoo::plateau_linear();
        assert!(flat_right(&phi, 1.0));
        assert!(flat_right(&phi, 1.5));
        assert!(!flat_right(&phi, 2.0));
        assert!(!flat_right(&phi, 0.5));
    }

    #[test]
    fn random_shapes_build() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let f = PlShape::random(&mut rng).build();
            assert!(f.phi.tends_to_infinity());
            assert_eq!(f.phi.value_f64(0.0), 0.0);
        }
    }

    #[test]
    fn wrong_strictness_is_caught() {
        let phi = zoo::plateau_linear();
        let us = sample_points(&phi, &[1.0, 2.0]);
        let vs = value_points(&phi, &[]);
        assert!(check_clauses(&phi, false, &us, &vs).is_empty());
        let bad = check_clauses(&phi, true, &us, &vs);
        assert!(bad.iter().any(|v| v.clause == "v" && v.at == 1.5));
    }
}
