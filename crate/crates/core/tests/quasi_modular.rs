use std::sync::OnceLock;

use clspace::cl::{self, CLSpace};
use clspace::spaces::{Carrier, SpaceDescriptor, SpaceKind};
use clspace::{zoo, ExtReal, SimpleVector};
use proptest::prelude::*;

const INF: f64 = f64::INFINITY;

fn certified(kind: SpaceKind, phi: clspace::OrliczFunction) -> CLSpace {
    let cl = CLSpace::new(SpaceDescriptor::new(kind).unwrap(), phi);
    assert!(cl.is_certified(), "{:?}", cl.flags);
    cl
}

/// One certified space per inclusion class, plus a `p < 1` base space.
fn spaces() -> &'static [CLSpace] {
    static CELL: OnceLock<Vec<CLSpace>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            certified(SpaceKind::Lp { p: 1.0, gamma: INF }, zoo::square()),
            certified(SpaceKind::Lp { p: 0.5, gamma: INF }, zoo::exp_minus_one()),
            certified(SpaceKind::Lp { p: 1.0, gamma: 1.0 }, zoo::square()),
            certified(SpaceKind::SeqLp { p: 2.0 }, zoo::square()),
        ]
    })
}

/// Lays `(length, value)` steps side by side from 0, squeezed into `[0, 1)`
/// on finite intervals and rounded up to whole indices on `ℕ`.
fn vector(carrier: Carrier, raw: &[(f64, f64)]) -> SimpleVector {
    let total: f64 = raw.iter().map(|r| r.0).sum();
    let mut steps = Vec::new();
    let mut at = match carrier {
        Carrier::Counting => 1.0,
        _ => 0.0,
    };
    for &(len, v) in raw {
        let next = match carrier {
            Carrier::Interval { gamma } if gamma.is_finite() => (at + len / total * gamma).min(gamma),
            Carrier::Interval { .. } => at + len,
            Carrier::Counting => at + len.ceil(),
        };
        steps.push((at, next, v));
        at = next;
    }
    SimpleVector::from_steps(carrier, &steps).unwrap()
}

fn rho(cl: &CLSpace, x: &SimpleVector) -> f64 {
    cl::modular(cl, x).unwrap().to_f64()
}

fn le(a: f64, b: f64) -> bool {
    a <= b + 1e-12 * b.abs().max(1.0)
}

fn steps() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.05f64..3.0, -3.0f64..3.0), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_is_even(i in 0usize..4, raw in steps()) {
        let cl = &spaces()[i];
        let x = vector(cl.space.carrier(), &raw);
        prop_assert_eq!(cl::modular(cl, &x).unwrap(), cl::modular(cl, &x.scale(-1.0)).unwrap());
    }

    #[test]
    fn modular_grows_with_lambda(i in 0usize..4, raw in steps(), l1 in 0.0f64..4.0, l2 in 0.0f64..4.0) {
        let cl = &spaces()[i];
        let x = vector(cl.space.carrier(), &raw);
        let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        prop_assert!(le(rho(cl, &x.scale(lo)), rho(cl, &x.scale(hi))));
    }

    #[test]
    fn convex_pairs_obey_c_e(i in 0usize..4, rx in steps(), ry in steps(), alpha in 0.0f64..=1.0) {
        let cl = &spaces()[i];
        let x = vector(cl.space.carrier(), &rx);
        let y = vector(cl.space.carrier(), &ry);
        let z = x.lin_comb(alpha, &y, 1.0 - alpha).unwrap();
        let bound = cl.space.c_e * (rho(cl, &x) + rho(cl, &y));
        prop_assert!(le(rho(cl, &z), bound));
    }

    #[test]
    fn condition_v_holds(
        i in 0usize..4,
        raw in steps(),
        eps in 0.01f64..1.0,
        big_a in 0.1f64..10.0,
        a in 1e-4f64..=1.0,
    ) {
        let cl = &spaces()[i];
        let mut x = vector(cl.space.carrier(), &raw);
        while rho(cl, &x) > big_a {
            x = x.scale(0.5);
        }
        let v = cl::condition_v_constant(cl, eps, big_a).unwrap();
        let lhs = rho(cl, &x.scale(a));
        let rhs = v.k * a.powf(v.p) * rho(cl, &x) + eps;
        prop_assert!(le(lhs, rhs), "{lhs} > {rhs} (p = {}, K = {})", v.p, v.k);
    }

    #[test]
    fn norm_is_homogeneous(i in 0usize..4, raw in steps(), a in -50.0f64..50.0) {
        let cl = &spaces()[i];
        let tol = cl::DEFAULT_TOL;
        let x = vector(cl.space.carrier(), &raw);
        let n = cl::luxemburg_norm(cl, &x, tol).unwrap().norm;
        let na = cl::luxemburg_norm(cl, &x.scale(a), tol).unwrap().norm;
        let want = a.abs() * n;
        prop_assert!((na - want).abs() <= 2.0 * tol * want.max(1.0), "{na} vs {want}");
    }

    #[test]
    fn modular_is_left_continuous(raw in steps(), lift in prop::bool::ANY) {
        let cl = CLSpace::uncertified(
            SpaceDescriptor::new(SpaceKind::Lp { p: 1.0, gamma: INF }).unwrap(),
            zoo::square_capped(),
        );
        // values in [0, 1], reaching the jump at b_φ = 1 exactly, or past it
        let top = raw.iter().fold(0.0f64, |m, r| m.max(r.1.abs())).max(1e-3);
        let scale = if lift { 1.5 } else { 1.0 };
        let x = vector(cl.space.carrier(), &raw).scale(scale / top);
        let target = cl::modular(&cl, &x).unwrap();
        let mut prev = 0.0;
        for k in 1..=40 {
            let r = rho(&cl, &x.scale(1.0 - 0.5f64.powi(k)));
            prop_assert!(le(prev, r));
            prev = r;
        }
        match target {
            ExtReal::Finite(t) => prop_assert!((prev - t).abs() <= 1e-9 * t.max(1.0)),
            ExtReal::Inf => prop_assert!(prev == INF),
        }
    }

    #[test]
    fn aoki_rolewicz_sandwich(i in 0usize..4, pieces in prop::collection::vec(steps(), 1..5)) {
        let cl = &spaces()[i];
        let c = cl::space_quasi_triangle_constant(cl).unwrap();
        let p = cl::aoki_rolewicz_exponent(c).unwrap();
        let carrier = cl.space.carrier();
        let xs: Vec<SimpleVector> = pieces.iter().map(|r| vector(carrier, r)).collect();
        let mut sum = SimpleVector::zero(carrier);
        let mut acc = 0.0;
        for x in &xs {
            sum = sum.add(x).unwrap();
            acc += cl::luxemburg_norm(cl, x, cl::DEFAULT_TOL).unwrap().norm.powf(p);
        }
        let lhs = cl::luxemburg_norm(cl, &sum, cl::DEFAULT_TOL).unwrap().norm;
        prop_assert!(le(lhs, 2.0 * c * acc.powf(1.0 / p)));
    }
}

/// `lim_{λ→0} ρ(λx) = 0` exactly when some `ρ(λx)` is finite.
#[test]
fn membership_two_ways() {
    let kinds = [
        SpaceKind::Lp { p: 1.0, gamma: INF },
        SpaceKind::Lp { p: 2.0, gamma: 1.0 },
        SpaceKind::L1CapLinf,
    ];
    let lambdas: Vec<f64> = (0..=200).map(|k| 2f64.powi(-5 * k)).collect();
    for kind in kinds {
        let space = SpaceDescriptor::new(kind.clone()).unwrap();
        let gamma = match space.carrier() {
            Carrier::Interval { gamma } => gamma,
            Carrier::Counting => unreachable!(),
        };
        let xs = [
            SimpleVector::chi(space.carrier(), 0.0, gamma).unwrap(),
            SimpleVector::from_steps(space.carrier(), &[(0.0, 0.25, 5.0), (0.5, 0.75, -40.0)]).unwrap(),
        ];
        for (name, phi) in zoo::lemma_zoo() {
            let cl = CLSpace::uncertified(space.clone(), phi);
            for x in &xs {
                let vals: Vec<f64> = lambdas.iter().map(|&l| rho(&cl, &x.scale(l))).collect();
                let some_finite = vals.iter().any(|v| v.is_finite());
                let vanishes = cl::trends_to_zero(&vals);
                assert_eq!(some_finite, vanishes, "{name} on {kind:?}");
            }
        }
    }
}

/// Non-order-continuous `E`: `y = φ⁻¹(x)` with `‖x‖_E > 1` has norm at least 1;
/// and `‖χ_A‖_φ ≥ 1/b_φ` when `b_φ < ∞`.
#[test]
fn order_continuity_probe() {
    let tol = cl::DEFAULT_TOL;
    let phi = zoo::square();
    let cl = CLSpace::uncertified(SpaceDescriptor::new(SpaceKind::L1CapLinf).unwrap(), phi.clone());
    for n in 1..=20 {
        let x = SimpleVector::chi(cl.space.carrier(), 0.0, 1.0).unwrap().scale(1.0 + 1.0 / n as f64);
        assert!(cl.space.norm_f64(&x).unwrap() > 1.0);
        let y = x.map_abs(|v| phi.inverse_f64(v)).unwrap();
        assert!(cl::luxemburg_norm(&cl, &y, tol).unwrap().norm > 1.0 - tol);
    }
    let capped = zoo::square_capped();
    let b = capped.b_phi().to_f64();
    let cl = CLSpace::uncertified(SpaceDescriptor::new(SpaceKind::Lp { p: 1.0, gamma: INF }).unwrap(), capped);
    for k in -20..=20 {
        let m = 2f64.powf(k as f64 / 2.0);
        let chi = SimpleVector::chi(cl.space.carrier(), 0.0, m).unwrap();
        assert!(cl::luxemburg_norm(&cl, &chi, tol).unwrap().norm >= 1.0 / b - tol);
    }
}
