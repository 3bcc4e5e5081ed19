//! Named Orlicz functions used throughout the tests, the witnesses and the CLI.

use alloc::vec;
use alloc::vec::Vec;

use crate::orlicz::{NodeRule, OrliczFunction, Piece, PieceKind};

const INF: f64 = f64::INFINITY;

fn build(pieces: Vec<Piece>) -> OrliczFunction {
    OrliczFunction::new(pieces).expect("built-in Orlicz function is valid")
}

/// `u^p`
pub fn power(p: f64) -> OrliczFunction {
    build(vec![Piece::new(0.0, INF, PieceKind::Power { coef: 1.0, exp: p })])
}

/// `u²`
pub fn square() -> OrliczFunction {
    power(2.0)
}

/// `ln(1+u)`; lower index 0 at infinity.
pub fn log1p() -> OrliczFunction {
    build(vec![Piece::new(0.0, INF, PieceKind::Log1p { coef: 1.0 })])
}

/// `1/ln(1+1/u)`; lower index 0 at zero.
pub fn inv_log_recip() -> OrliczFunction {
    build(vec![Piece::new(0.0, INF, PieceKind::InvLogRecip { coef: 1.0 })])
}

/// Linear through `(0,0)` and `(2^{n−1}, n)`, `n ≥ 1`.
pub fn dyadic_staircase() -> OrliczFunction {
    build(vec![
        Piece::new(0.0, 1.0, PieceKind::Power { coef: 1.0, exp: 1.0 }),
        Piece::new(
            1.0,
            INF,
            PieceKind::GeometricNodes { u0: 1.0, ratio: 2.0, rule: NodeRule::Arithmetic { start: 1.0, step: 1.0 } },
        ),
    ])
}

/// `u` for `u ≥ 1/2`, linear through `(2^{−(n−1)}, 1/n)` for `n ≥ 3` and
/// between `1/4` and `1/2`.
pub fn harmonic_dyadic() -> OrliczFunction {
    build(vec![
        Piece::new(
            0.0,
            0.25,
            PieceKind::GeometricNodes { u0: 0.25, ratio: 0.5, rule: NodeRule::Reciprocal { start: 3.0, step: 1.0 } },
        ),
        Piece::new(0.25, 0.5, PieceKind::Nodes(vec![(0.25, 1.0 / 3.0), (0.5, 0.5)])),
        Piece::new(0.5, INF, PieceKind::Power { coef: 1.0, exp: 1.0 }),
    ])
}

/// `u` on `[0,1]`, `max(1, u−1)` beyond.
pub fn plateau_linear() -> OrliczFunction {
    build(vec![
        Piece::new(0.0, 1.0, PieceKind::Power { coef: 1.0, exp: 1.0 }),
        Piece::new(1.0, 2.0, PieceKind::Constant(1.0)),
        Piece::new(2.0, INF, PieceKind::Affine { slope: 1.0, intercept: -1.0 }),
    ])
}

/// `u²` on `[0,1]`, `∞` beyond.
pub fn square_capped() -> OrliczFunction {
    build(vec![
        Piece::new(0.0, 1.0, PieceKind::Power { coef: 1.0, exp: 2.0 }),
        Piece::new(1.0, INF, PieceKind::Infinite),
    ])
}

/// `min(u², 1)`
pub fn square_saturated() -> OrliczFunction {
    build(vec![
        Piece::new(0.0, 1.0, PieceKind::Power { coef: 1.0, exp: 2.0 }),
        Piece::new(1.0, INF, PieceKind::Constant(1.0)),
    ])
}

/// `0` on `[0,1]`, `u − 1` beyond; `a_φ = 1`.
pub fn shifted_identity() -> OrliczFunction {
    build(vec![
        Piece::new(0.0, 1.0, PieceKind::Constant(0.0)),
        Piece::new(1.0, INF, PieceKind::Affine { slope: 1.0, intercept: -1.0 }),
    ])
}

/// `e^u − 1`; fails Δ₂ at infinity.
pub fn exp_minus_one() -> OrliczFunction {
    build(vec![Piece::new(0.0, INF, PieceKind::Exp { coef: 1.0, rate: 1.0 })])
}

/// `e^{c(1 − 1/u)}` on `[0,1]`, `u` beyond; fails Δ₂ at zero.
pub fn exp_recip_steep(c: f64) -> OrliczFunction {
    build(vec![
        Piece::new(0.0, 1.0, PieceKind::ExpRecip { coef: crate::num::exp(c), rate: c }),
        Piece::new(1.0, INF, PieceKind::Power { coef: 1.0, exp: 1.0 }),
    ])
}

/// The eight-function suite for the generalized-inverse clauses.
pub fn lemma_zoo() -> Vec<(&'static str, OrliczFunction)> {
    vec![
        ("square", square()),
        ("log1p", log1p()),
        ("inv_log_recip", inv_log_recip()),
        ("dyadic_staircase", dyadic_staircase()),
        ("harmonic_dyadic", harmonic_dyadic()),
        ("plateau_linear", plateau_linear()),
        ("square_capped", square_capped()),
        ("shifted_identity", shifted_identity()),
    ]
}

/// Look up a built-in function by name, including `power:<p>` and `exp_recip_steep:<c>`.
pub fn by_name(name: &str) -> Option<OrliczFunction> {
    if let Some(p) = name.strip_prefix("power:") {
        return p.parse::<f64>().ok().filter(|p| *p > 0.0).map(power);
    }
    if let Some(c) = name.strip_prefix("exp_recip_steep:") {
        return c.parse::<f64>().ok().filter(|c| *c > 0.0).map(exp_recip_steep);
    }
    Some(match name {
        "square" => square(),
        "log1p" => log1p(),
        "inv_log_recip" => inv_log_recip(),
        "dyadic_staircase" => dyadic_staircase(),
        "harmonic_dyadic" => harmonic_dyadic(),
        "plateau_linear" => plateau_linear(),
        "square_capped" => square_capped(),
        "square_saturated" => square_saturated(),
        "shifted_identity" => shifted_identity(),
        "exp_minus_one" => exp_minus_one(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_named_functions_build() {
        for name in [
            "square",
            "log1p",
            "inv_log_recip",
            "dyadic_staircase",
            "harmonic_dyadic",
            "plateau_linear",
            "square_capped",
            "square_saturated",
            "shifted_identity",
            "exp_minus_one",
            "power:0.5",
            "exp_recip_steep:100",
        ] {
            assert!(by_name(name).is_some(), "{name}");
        }
        assert!(by_name("power:-1").is_none());
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn structural_constants() {
        assert_eq!(shifted_identity().a_phi(), 1.0);
        assert_eq!(square_capped().a_phi(), 0.0);
        assert!(!square_saturated().tends_to_infinity());
        assert!(exp_recip_steep(100.0).tends_to_infinity());
        let s = exp_recip_steep(100.0);
        assert!((s.value_f64(1.0) - 1.0).abs() < 1e-12);
    }
}
