//! Calderón–Lozanovskiĭ spaces `E_φ`: the functional `ρ(x) = ‖φ(|x|)‖_E`,
//! its Minkowski functional and the constants that make it a quasi-norm.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, Inf};
use crate::indices::{self, GridSpec, IndexEstimate, Regime};
use crate::num;
use crate::orlicz::OrliczFunction;
use crate::spaces::{InclusionClass, Part, SimpleVector, SpaceDescriptor};

/// Relative tolerance of the norm bisections.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Bracket doublings or halvings before giving up.
pub const MAX_DOUBLINGS: usize = 1024;
const MAX_BISECTIONS: usize = 200;
/// Brackets with `lo` below the candidate step are indistinguishable from 0.
pub const CERTIFY_MIN: f64 = indices::CANDIDATE_STEP;

#[derive(Debug, Clone, PartialEq)]
pub enum ClFlag {
    /// The index in the class regime is not certified positive.
    NotCertifiedQuasinorm,
    /// The index could not be estimated.
    IndexUnavailable(String),
}

impl ClFlag {
    pub fn label(&self) -> String {
        match self {
            ClFlag::NotCertifiedQuasinorm => "NOT_CERTIFIED_QUASINORM".into(),
            ClFlag::IndexUnavailable(why) => format!("INDEX_UNAVAILABLE: {why}"),
        }
    }
}

/// Index regime matching an inclusion class.
pub fn class_regime(class: InclusionClass) -> Regime {
    match class {
        InclusionClass::Neither => Regime::All,
        InclusionClass::ContainsLinf => Regime::Infinity,
        InclusionClass::InsideLinf => Regime::Zero,
    }
}

#[derive(Debug, Clone)]
pub struct CLSpace {
    pub space: SpaceDescriptor,
    pub phi: OrliczFunction,
    pub index_cert: Option<IndexEstimate>,
    pub flags: Vec<ClFlag>,
}

impl CLSpace {
    /// Certifies the index on the default grid.
    pub fn new(space: SpaceDescriptor, phi: OrliczFunction) -> CLSpace {
        CLSpace::with_grid(space, phi, &GridSpec::default())
    }

    pub fn with_grid(space: SpaceDescriptor, phi: OrliczFunction, grid: &GridSpec) -> CLSpace {
        let regime = class_regime(space.class);
        let mut flags = Vec::new();
        let index_cert = match indices::estimate_lower_index(&phi, regime, grid) {
            Ok(e) => {
                if !(e.lo >= CERTIFY_MIN) {
                    flags.push(ClFlag::NotCertifiedQuasinorm);
                }
                Some(e)
            }
            Err(err) => {
                flags.push(ClFlag::IndexUnavailable(format!("{err}")));
                flags.push(ClFlag::NotCertifiedQuasinorm);
                None
            }
        };
        CLSpace { space, phi, index_cert, flags }
    }

    /// No index certification; norm operations still run.
    pub fn uncertified(space: SpaceDescriptor, phi: OrliczFunction) -> CLSpace {
        CLSpace { space, phi, index_cert: None, flags: Vec::new() }
    }

    pub fn regime(&self) -> Regime {
        class_regime(self.space.class)
    }

    pub fn is_certified(&self) -> bool {
        self.index_cert.as_ref().is_some_and(|e| e.lo >= CERTIFY_MIN)
    }
}

/// `ρ(x) = ‖φ(|x|)‖_E`, `Inf` when `φ(|x|)` is infinite on a part or not in `E`.
pub fn modular(cl: &CLSpace, x: &SimpleVector) -> Result<ExtReal> {
    let mut parts = Vec::with_capacity(x.parts().len());
    for p in x.parts() {
        match cl.phi.value(p.value) {
            Inf => return Ok(Inf),
            Finite(v) if v.is_infinite() => return Ok(Inf),
            Finite(v) => parts.push(Part { region: p.region, value: v, negative: false }),
        }
    }
    let image = SimpleVector::from_parts(x.carrier(), parts)?;
    cl.space.norm(&image)
}

fn modular_scaled(cl: &CLSpace, x: &SimpleVector, k: f64) -> Result<ExtReal> {
    modular(cl, &x.scale(k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    pub norm: f64,
    /// `ρ(x/norm)`
    pub modular_at_norm: ExtReal,
    /// The returned value itself satisfies the defining inequality.
    pub feasible: bool,
    pub flags: Vec<String>,
}

/// `inf{λ > 0 : pred(λ)}` for a predicate that is monotone (false below,
/// true above). Returns `(λ*, iterations)` or `None` if the predicate never
/// holds inside the doubling horizon. `Some(0)` if it holds at every scale.
fn monotone_inf(start: f64, tol: f64, mut pred: impl FnMut(f64) -> Result<bool>) -> Result<Option<f64>> {
    let mut hi = start;
    let mut lo;
    if pred(hi)? {
        lo = hi / 2.0;
        let mut n = 0;
        while pred(lo)? {
            hi = lo;
            lo /= 2.0;
            n += 1;
            if n > MAX_DOUBLINGS || lo == 0.0 {
                return Ok(Some(0.0));
            }
        }
    } else {
        lo = hi;
        let mut n = 0;
        loop {
            hi *= 2.0;
            n += 1;
            if n > MAX_DOUBLINGS || !hi.is_finite() {
                return Ok(None);
            }
            if pred(hi)? {
                break;
            }
            lo = hi;
        }
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= 0.5 * tol * num::max(1.0, hi) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

fn scale_guess(cl: &CLSpace, x: &SimpleVector) -> f64 {
    let s = x.sup_abs();
    let w = cl.phi.inverse_f64(1.0);
    if w > 0.0 && w.is_finite() {
        s / w
    } else {
        s
    }
}

fn flag_labels(cl: &CLSpace) -> Vec<String> {
    cl.flags.iter().map(ClFlag::label).collect()
}

/// Luxemburg–Nakano functional `inf{λ > 0 : ρ(x/λ) ≤ 1}` by bracket
/// doubling and bisection; `|λ* − ‖x‖| ≤ tol·max(1, λ*)`.
pub fn luxemburg_norm(cl: &CLSpace, x: &SimpleVector, tol: f64) -> Result<NormResult> {
    minkowski(cl, x, tol, |_| 1.0)
}

/// Mazur–Orlicz F-norm `inf{λ > 0 : ρ(x/λ) ≤ λ}`.
pub fn mazur_orlicz_f_norm(cl: &CLSpace, x: &SimpleVector, tol: f64) -> Result<NormResult> {
    minkowski(cl, x, tol, |l| l)
}

fn minkowski(cl: &CLSpace, x: &SimpleVector, tol: f64, level: impl Fn(f64) -> f64) -> Result<NormResult> {
    if !(tol > 0.0) {
        return Err(Error::Invalid("tol must be positive".into()));
    }
    if x.is_zero() {
        return Ok(NormResult { norm: 0.0, modular_at_norm: Finite(0.0), feasible: true, flags: flag_labels(cl) });
    }
    let pred = |l: f64| -> Result<bool> { Ok(modular_scaled(cl, x, 1.0 / l)? <= Finite(level(l))) };
    let start = num::max(scale_guess(cl, x), 1e-300);
    let Some(norm) = monotone_inf(start, tol, pred)? else {
        return Err(Error::NotInSpace);
    };
    let mut flags = flag_labels(cl);
    if norm == 0.0 {
        flags.push("ZERO_FUNCTIONAL".into());
        return Ok(NormResult { norm, modular_at_norm: Finite(0.0), feasible: true, flags });
    }
    let at = modular_scaled(cl, x, 1.0 / norm)?;
    let feasible = at <= Finite(level(norm));
    Ok(NormResult { norm, modular_at_norm: at, feasible, flags })
}

/// `(p, K)` for condition (v): `ρ(ax) ≤ K a^p ρ(x) + ε` for `0 < a ≤ 1`
/// whenever `ρ(x) ≤ A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionV {
    pub p: f64,
    pub k: f64,
    /// `u₁` (class 2) or `u₂` (class 3) of the construction.
    pub threshold: Option<f64>,
}

/// The proof recipe per class: class 1 uses the index constant times `C_E`;
/// class 2 cuts at `u₁` with `C_E φ(u₁)‖χ_T‖_E < ε` and extends the
/// constant past `u₁`; class 3 bounds `|x|` by `u₂ = φ⁻¹(min(A/a_E, φ(b_φ)))`
/// and extends the constant up to `u₂`.
pub fn condition_v_constant(cl: &CLSpace, eps: f64, a: f64) -> Result<ConditionV> {
    if !(eps > 0.0 && a > 0.0) {
        return Err(Error::Invalid("ε and A must be positive".into()));
    }
    let est = match &cl.index_cert {
        Some(e) if e.lo >= CERTIFY_MIN => e,
        _ => return Err(Error::NotCertified("index is not certified positive".into())),
    };
    let c_e = cl.space.c_e;
    let phi = &cl.phi;
    match cl.space.class {
        InclusionClass::Neither => Ok(ConditionV { p: est.lo, k: c_e * est.k, threshold: None }),
        InclusionClass::ContainsLinf => {
            let total = cl.space.norm_f64(&SimpleVector::chi(cl.space.carrier(), 0.0, carrier_gamma(&cl.space))?)?;
            let v = eps / (c_e * total) * (1.0 - 1e-9);
            let u1 = phi.inverse_f64(v);
            if !(u1 > phi.a_phi()) {
                return Err(Error::Precondition(format!("no u₁ above a_φ with φ(u₁) < {v}")));
            }
            let k = if u1 < est.u0 {
                indices::extend_constant_on(phi, Regime::Infinity, est.lo, est.k, est.u0, u1, &est.grid)?
            } else {
                est.k
            };
            Ok(ConditionV { p: est.lo, k: c_e * k, threshold: Some(u1) })
        }
        InclusionClass::InsideLinf => {
            let a_e = cl.space.a_e.to_f64();
            if !(a_e > 0.0) {
                return Err(Error::Precondition("a_E must be positive in class 3".into()));
            }
            let cap = (Finite(a / a_e)).min(phi.phi_at_b());
            let u2 = phi.generalized_inverse(cap)?.to_f64();
            if est.infinite && phi.a_phi() > 0.0 {
                let k = indices::extend_constant(phi, Regime::Zero, 1.0, 1.0, u2, u2)?;
                return Ok(ConditionV { p: 1.0, k, threshold: Some(u2) });
            }
            let k = if u2 > est.u0 {
                indices::extend_constant_on(phi, Regime::Zero, est.lo, est.k, est.u0, u2, &est.grid)?
            } else {
                est.k
            };
            Ok(ConditionV { p: est.lo, k, threshold: Some(u2) })
        }
    }
}

fn carrier_gamma(space: &SpaceDescriptor) -> f64 {
    match space.carrier() {
        crate::spaces::Carrier::Interval { gamma } => gamma,
        crate::spaces::Carrier::Counting => f64::INFINITY,
    }
}

/// `C = (K/(1/(2M) − ε))^{1/p}`.
pub fn quasi_triangle_constant(m: f64, p: f64, k: f64, eps: f64) -> Result<f64> {
    if !(m >= 1.0 && p > 0.0 && k >= 1.0) {
        return Err(Error::Invalid("need M ≥ 1, p > 0, K ≥ 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0 / (2.0 * m)) {
        return Err(Error::Invalid(format!("ε = {eps} must lie in (0, 1/(2M))")));
    }
    Ok(num::powf(k / (1.0 / (2.0 * m) - eps), 1.0 / p))
}

/// Minimum of the constant over 64 log-spaced `ε` in `(0, 1/(2M))`, with
/// `(p, K) = rule(ε)`. Returns `(C, ε)`.
pub fn minimized_quasi_triangle_constant(m: f64, rule: impl Fn(f64) -> Result<(f64, f64)>) -> Result<(f64, f64)> {
    let top = 1.0 / (2.0 * m);
    let mut best = (f64::INFINITY, f64::NAN);
    for e in num::log_grid(top * 1e-9, top * 0.99, 64) {
        let (p, k) = rule(e)?;
        let c = quasi_triangle_constant(m, p, k, e)?;
        if c < best.0 {
            best = (c, e);
        }
    }
    Ok(best)
}

/// The minimised constant for a certified space, with `M = C_E` and
/// `K = K(ε, 1)`.
pub fn space_quasi_triangle_constant(cl: &CLSpace) -> Result<f64> {
    minimized_quasi_triangle_constant(cl.space.c_e, |e| {
        let v = condition_v_constant(cl, e, 1.0)?;
        Ok((v.p, v.k))
    })
    .map(|r| r.0)
}

/// `p = 1/(1 + log₂ C)`, so that `C = 2^{1/p − 1}`.
pub fn aoki_rolewicz_exponent(c: f64) -> Result<f64> {
    if !(c >= 1.0) {
        return Err(Error::Invalid("C must be at least 1".into()));
    }
    Ok(1.0 / (1.0 + num::log2(c)))
}

/// Δ-condition certificates used by the transfer lemmas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaFlags {
    pub eps_all: bool,
    pub eps_regime: bool,
    pub str_all: bool,
    pub str_regime: bool,
}

/// Sample `ε` values for the Δ_ε and Δ_{2-str} certificates.
pub const CERT_EPS: [f64; 3] = [0.5, 0.25, 0.125];

impl DeltaFlags {
    pub fn certify(cl: &CLSpace) -> Result<DeltaFlags> {
        let r = cl.regime();
        let eps_all = indices::check_delta_epsilon(&cl.phi, Regime::All, &CERT_EPS)?.holds;
        let str_all = indices::check_delta_2str(&cl.phi, Regime::All, &CERT_EPS)?.holds;
        let eps_regime = eps_all || indices::check_delta_epsilon(&cl.phi, r, &CERT_EPS)?.holds;
        let str_regime = str_all || indices::check_delta_2str(&cl.phi, r, &CERT_EPS)?.holds;
        Ok(DeltaFlags { eps_all, eps_regime, str_all, str_regime })
    }
}

/// `φ` strictly increasing on `(lo, hi)`, sampled on 2048 points. `φ` is
/// positive above `a_φ`, so values that underflow there are skipped.
pub fn strictly_increasing_on(phi: &OrliczFunction, lo: f64, hi: f64) -> bool {
    if !(hi > lo) {
        return true;
    }
    if phi.a_phi() > lo {
        return false;
    }
    let hi = num::min(hi, 1e300);
    let lo = num::max(lo, hi * 1e-300);
    let grid = num::log_grid(num::max(lo, f64::MIN_POSITIVE), hi, 2048);
    let mut prev = ExtReal::ZERO;
    for &u in &grid {
        if u <= lo || u >= hi {
            continue;
        }
        let v = phi.value(u);
        if v < Finite(f64::MIN_POSITIVE) {
            continue;
        }
        if v <= prev && v.is_finite() {
            return false;
        }
        prev = v;
    }
    true
}

#[derive(Debug, Clone, PartialEq)]
pub struct Implication {
    pub name: &'static str,
    /// The premise holds for this `x` and space.
    pub applies: bool,
    /// The conclusion holds numerically.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferReport {
    pub modular: ExtReal,
    pub norm: f64,
    pub implications: Vec<Implication>,
    pub contradiction: bool,
}

/// Evaluates `ρ(x)` and `‖x‖_φ` and tests each modular/norm implication
/// whose premise applies.
pub fn unit_sphere_transfer_check(cl: &CLSpace, x: &SimpleVector, flags: &DeltaFlags, tol: f64) -> Result<TransferReport> {
    let rho = modular(cl, x)?;
    let norm = match luxemburg_norm(cl, x, tol.min(DEFAULT_TOL)) {
        Ok(r) => r.norm,
        Err(Error::NotInSpace) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    let r = rho.to_f64();
    let near_one = |v: f64| num::abs(v - 1.0) <= tol;
    let phi = &cl.phi;
    let (a_phi, b_phi) = (phi.a_phi(), phi.b_phi().to_f64());
    let mut out = Vec::new();

    out.push(Implication { name: "rho<=1 => norm<=1", applies: r <= 1.0, holds: norm <= 1.0 + tol });
    out.push(Implication { name: "norm<1 => rho<=1", applies: norm < 1.0 - tol, holds: r <= 1.0 + tol });
    out.push(Implication { name: "norm<=1 <=> rho<=1", applies: true, holds: (norm <= 1.0 + tol) == (r <= 1.0 + tol) || near_one(norm) });

    let class = cl.space.class;
    let eps_premise = match class {
        InclusionClass::Neither => flags.eps_all,
        InclusionClass::ContainsLinf => {
            flags.eps_all || (flags.eps_regime && strictly_increasing_on(phi, a_phi, b_phi) && covers_carrier(cl, x))
        }
        InclusionClass::InsideLinf => {
            let top = num::min(phi.inverse_f64(1.0 / cl.space.a_e.to_f64()), b_phi);
            flags.eps_all || (flags.eps_regime && strictly_increasing_on(phi, a_phi, top))
        }
    };
    out.push(Implication { name: "rho=1 => norm=1 (delta_eps)", applies: eps_premise && near_one(r), holds: near_one(norm) });

    let str_premise = match class {
        InclusionClass::Neither => flags.str_all,
        InclusionClass::ContainsLinf => {
            flags.str_all || (cl.space.c_e == 1.0 && flags.str_regime && strictly_increasing_on(phi, a_phi, f64::INFINITY))
        }
        InclusionClass::InsideLinf => {
            let inv = 1.0 / cl.space.a_e.to_f64();
            flags.str_regime
                && Finite(inv) <= phi.phi_at_b()
                && strictly_increasing_on(phi, 0.0, phi.inverse_f64(inv))
        }
    };
    out.push(Implication { name: "norm=1 => rho=1 (delta_2str)", applies: str_premise && near_one(norm), holds: near_one(r) });

    let contradiction = out.iter().any(|i| i.applies && !i.holds);
    Ok(TransferReport { modular: rho, norm, implications: out, contradiction })
}

/// `|x| ≥ B > 0` on the whole carrier (finite-measure interval only).
fn covers_carrier(cl: &CLSpace, x: &SimpleVector) -> bool {
    let gamma = carrier_gamma(&cl.space);
    gamma.is_finite() && (x.support_measure() - gamma).abs() <= 1e-12 * gamma
}

/// `sup |x| ≤ φ⁻¹(1/a_E) + 1e−10` for `x` with `ρ(x) ≤ 1` in a class-3 space.
pub fn sup_bound_check(cl: &CLSpace, x: &SimpleVector) -> Result<bool> {
    if cl.space.class != InclusionClass::InsideLinf {
        return Err(Error::Precondition("sup bound needs E ⊂ L_∞".into()));
    }
    if modular(cl, x)? > Finite(1.0 + 1e-12) {
        return Err(Error::Precondition("sup bound needs ρ(x) ≤ 1".into()));
    }
    let bound = cl.phi.inverse_f64(1.0 / cl.space.a_e.to_f64());
    Ok(x.sup_abs() <= bound + 1e-10)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NullReport {
    pub norms: Vec<f64>,
    /// `modulars[j][n] = ρ(λ_j x_n)`
    pub modulars: Vec<Vec<f64>>,
    pub norm_to_zero: bool,
    pub modular_to_zero: Vec<bool>,
    /// Both trends agree for every sampled `λ`.
    pub consistent: bool,
}

/// Trend to zero on a finite prefix: identically zero, or the last value is
/// below 5% of the maximum with a non-increasing final quarter.
pub fn trends_to_zero(v: &[f64]) -> bool {
    if v.iter().all(|&t| t == 0.0) {
        return true;
    }
    let max = v.iter().cloned().fold(0.0, num::max);
    let last = v[v.len() - 1];
    let q = v.len() - num::max(2.0, v.len() as f64 / 4.0) as usize;
    last < 0.05 * max && v[q..].windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12))
}

/// `‖x_n‖_φ → 0` against `ρ(λx_n) → 0` for each sampled `λ`.
pub fn norm_null_equivalence_check(cl: &CLSpace, xs: &[SimpleVector], lambdas: &[f64]) -> Result<NullReport> {
    if xs.is_empty() {
        return Err(Error::Invalid("need at least one vector".into()));
    }
    let norms = xs
        .iter()
        .map(|x| match luxemburg_norm(cl, x, DEFAULT_TOL) {
            Ok(r) => Ok(r.norm),
            Err(Error::NotInSpace) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<f64>>>()?;
    let modulars = lambdas
        .iter()
        .map(|&l| xs.iter().map(|x| modular_scaled(cl, x, l).map(ExtReal::to_f64)).collect::<Result<Vec<f64>>>())
        .collect::<Result<Vec<_>>>()?;
    let norm_to_zero = trends_to_zero(&norms);
    let modular_to_zero: Vec<bool> = modulars.iter().map(|m| trends_to_zero(m)).collect();
    let consistent = modular_to_zero.iter().all(|&t| t == norm_to_zero);
    Ok(NullReport { norms, modulars, norm_to_zero, modular_to_zero, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{Carrier, NormFlavor, SpaceKind, WeightRule};
    use crate::zoo;
    use alloc::vec;

    const HALF: Carrier = Carrier::Interval { gamma: f64::INFINITY };

    fn l1() -> SpaceDescriptor {
        SpaceDescriptor::new(SpaceKind::Lp { p: 1.0, gamma: f64::INFINITY }).unwrap()
    }

    fn small_grid() -> GridSpec {
        GridSpec { points: 64, ..GridSpec::default() }
    }

    #[test]
    fn modular_examples() {
        let e = SpaceDescriptor::new(SpaceKind::Lp { p: 0.25, gamma: f64::INFINITY }).unwrap();
        let cl = CLSpace::uncertified(e, zoo::square());
        let x = SimpleVector::chi(HALF, 0.0, 1.0).unwrap();
        let y = SimpleVector::chi(HALF, 1.0, 2.0).unwrap();
        let mid = x.lin_comb(0.5, &y, 0.5).unwrap();
        assert!((modular(&cl, &mid).unwrap().to_f64() - 4.0).abs() < 1e-12);
        assert!(((modular(&cl, &x).unwrap() + modular(&cl, &y).unwrap()).to_f64() - 2.0).abs() < 1e-12);
        assert_eq!(modular(&cl, &SimpleVector::zero(HALF)).unwrap(), Finite(0.0));
        let capped = CLSpace::uncertified(l1(), zoo::square_capped());
        assert_eq!(modular(&capped, &x.scale(2.0)).unwrap(), Inf);
    }

    #[test]
    fn luxemburg_examples() {
        let cl = CLSpace::uncertified(l1(), zoo::plateau_linear());
        let x = SimpleVector::chi(HALF, 0.0, 1.0).unwrap();
        let r = luxemburg_norm(&cl, &x, DEFAULT_TOL).unwrap();
        assert!((r.norm - 0.5).abs() < 1e-9);
        assert!(r.feasible);
        assert_eq!(modular(&cl, &x).unwrap(), Finite(1.0));

        let cl = CLSpace::uncertified(l1(), zoo::power(3.0));
        let x = SimpleVector::from_steps(HALF, &[(0.0, 0.5, 2.0), (1.0, 3.0, -0.7)]).unwrap();
        let exact = (0.5 * 8.0 + 2.0 * 0.343f64).powf(1.0 / 3.0);
        assert!((luxemburg_norm(&cl, &x, DEFAULT_TOL).unwrap().norm - exact).abs() < 1e-9);
    }

    #[test]
    fn f_norm_examples() {
        let cl = CLSpace::uncertified(l1(), zoo::power(1.0));
        let x = SimpleVector::from_steps(HALF, &[(0.0, 1.0, 4.0)]).unwrap();
        assert!((mazur_orlicz_f_norm(&cl, &x, DEFAULT_TOL).unwrap().norm - 2.0).abs() < 1e-9);
        assert_eq!(mazur_orlicz_f_norm(&cl, &SimpleVector::zero(HALF), DEFAULT_TOL).unwrap().norm, 0.0);
    }

    #[test]
    fn not_in_space() {
        // u² capped at 1 on l_1 with an unbounded-looking vector: ρ(x/λ) = ∞ only when |x|/λ > 1
        let cl = CLSpace::uncertified(SpaceDescriptor::new(SpaceKind::Cesaro { p: 2.0 }).unwrap(), zoo::shifted_identity());
        let x = SimpleVector::chi(Carrier::Counting, 1.0, 4.0).unwrap();
        // a_φ = 1 means ρ(x/λ) = 0 for λ ≥ 1, finite everywhere: the norm exists
        assert!(luxemburg_norm(&cl, &x, DEFAULT_TOL).is_ok());
    }

    #[test]
    fn chi_formula() {
        let cl = CLSpace::uncertified(l1(), zoo::log1p());
        for m in [0.01, 0.5, 3.0, 70.0] {
            let x = SimpleVector::chi(HALF, 0.0, m).unwrap();
            let expect = 1.0 / cl.phi.inverse_f64(1.0 / m);
            assert!((luxemburg_norm(&cl, &x, DEFAULT_TOL).unwrap().norm - expect).abs() < 1e-8 * expect.max(1.0));
        }
    }

    #[test]
    fn condition_v_class_examples() {
        let c1 = CLSpace::with_grid(l1(), zoo::power(2.0), &small_grid());
        let v = condition_v_constant(&c1, 0.1, 1.0).unwrap();
        assert!((v.p - 2.0).abs() < 1e-9 && (v.k - 1.0).abs() < 1e-9);

        let l1_unit = SpaceDescriptor::new(SpaceKind::Lp { p: 1.0, gamma: 1.0 }).unwrap();
        let c2 = CLSpace::with_grid(l1_unit, zoo::square(), &small_grid());
        let v = condition_v_constant(&c2, 0.1, 1.0).unwrap();
        assert!((v.threshold.unwrap() - 0.1f64.sqrt()).abs() < 1e-6);

        let l2 = SpaceDescriptor::new(SpaceKind::SeqLp { p: 2.0 }).unwrap();
        let c3 = CLSpace::with_grid(l2, zoo::square(), &small_grid());
        let v = condition_v_constant(&c3, 0.1, 5.0).unwrap();
        assert!((v.threshold.unwrap() - 5f64.sqrt()).abs() < 1e-12);
        assert!(v.k >= 1.0);

        let log = CLSpace::with_grid(l1(), zoo::log1p(), &small_grid());
        assert!(log.flags.contains(&ClFlag::NotCertifiedQuasinorm));
        assert!(matches!(condition_v_constant(&log, 0.1, 1.0), Err(Error::NotCertified(_))));
    }

    #[test]
    fn quasi_triangle_examples() {
        assert!((quasi_triangle_constant(1.0, 1.0, 1.0, 0.25).unwrap() - 4.0).abs() < 1e-12);
        let (c, _) = minimized_quasi_triangle_constant(1.0, |_| Ok((2.0, 1.0))).unwrap();
        assert!((c - 2f64.sqrt()).abs() < 1e-6);
        assert!(quasi_triangle_constant(1.0, 1.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn aoki_rolewicz() {
        assert_eq!(aoki_rolewicz_exponent(1.0).unwrap(), 1.0);
        assert_eq!(aoki_rolewicz_exponent(2.0).unwrap(), 0.5);
        assert!(aoki_rolewicz_exponent(0.5).is_err());
        for p in [0.1, 0.3, 0.75] {
            let c = 2f64.powf(1.0 / p - 1.0);
            assert!((aoki_rolewicz_exponent(c).unwrap() - p).abs() < 1e-12);
        }
    }

    #[test]
    fn transfer_examples() {
        let cl = CLSpace::uncertified(l1(), zoo::plateau_linear());
        let flags = DeltaFlags::certify(&cl).unwrap();
        assert!(!flags.eps_all);
        let x = SimpleVector::chi(HALF, 0.0, 1.0).unwrap();
        let r = unit_sphere_transfer_check(&cl, &x, &flags, 1e-8).unwrap();
        assert_eq!(r.modular, Finite(1.0));
        assert!((r.norm - 0.5).abs() < 1e-9);
        assert!(!r.contradiction);

        let cl = CLSpace::uncertified(l1(), zoo::power(2.0));
        let flags = DeltaFlags::certify(&cl).unwrap();
        assert!(flags.eps_all && flags.str_all);
        let x = SimpleVector::from_steps(HALF, &[(0.0, 2.0, 0.5), (3.0, 3.5, 1.0)]).unwrap();
        let r = unit_sphere_transfer_check(&cl, &x, &flags, 1e-8).unwrap();
        assert!(r.implications.iter().any(|i| i.applies && i.name.contains("delta_eps")));
        assert!(!r.contradiction);
    }

    #[test]
    fn sup_bound_examples() {
        let l1s = SpaceDescriptor::new(SpaceKind::SeqLp { p: 1.0 }).unwrap();
        let cl = CLSpace::uncertified(l1s, zoo::square());
        assert!(sup_bound_check(&cl, &SimpleVector::unit(1)).unwrap());
        let l2 = SpaceDescriptor::new(SpaceKind::SeqLp { p: 2.0 }).unwrap();
        let cl = CLSpace::uncertified(l2, zoo::power(1.0));
        let x = SimpleVector::from_steps(Carrier::Counting, &[(1.0, 3.0, 0.5)]).unwrap();
        assert!(sup_bound_check(&cl, &x).unwrap());
        assert!(sup_bound_check(&cl, &SimpleVector::zero(Carrier::Counting)).unwrap());
        assert!(sup_bound_check(&cl, &SimpleVector::unit(1).scale(3.0)).is_err());
    }

    #[test]
    fn null_equivalence_examples() {
        let cl = CLSpace::uncertified(l1(), zoo::square());
        let xs: Vec<_> = (0..21).map(|k| SimpleVector::chi(HALF, 0.0, 1.0 / (1u64 << k) as f64).unwrap()).collect();
        let r = norm_null_equivalence_check(&cl, &xs, &[1.0, 10.0, 100.0]).unwrap();
        assert!(r.norm_to_zero && r.consistent);

        let e = SpaceDescriptor::new(SpaceKind::L1CapLinf).unwrap();
        let cl = CLSpace::uncertified(e, zoo::power(1.0));
        let xs: Vec<_> = (0..20).map(|n| SimpleVector::chi(HALF, n as f64, n as f64 + 1.0).unwrap()).collect();
        let r = norm_null_equivalence_check(&cl, &xs, &[1.0, 10.0]).unwrap();
        assert!(!r.norm_to_zero && r.consistent);

        let xs = vec![SimpleVector::zero(HALF); 5];
        let r = norm_null_equivalence_check(&cl, &xs, &[1.0]).unwrap();
        assert!(r.norm_to_zero && r.consistent);
    }

    #[test]
    fn capped_orlicz_space_norms() {
        for flavor in [NormFlavor::Luxemburg, NormFlavor::Amemiya] {
            let e = SpaceDescriptor::new(SpaceKind::OrliczCapped { flavor }).unwrap();
            let cl = CLSpace::uncertified(e, zoo::power(1.0));
            let x = SimpleVector::chi(HALF, 0.0, 4.0).unwrap();
            let want = match flavor {
                NormFlavor::Luxemburg => 2.0,
                NormFlavor::Amemiya => 4.0,
            };
            assert!((luxemburg_norm(&cl, &x, DEFAULT_TOL).unwrap().norm - want).abs() < 1e-9);
        }
        let w = SpaceDescriptor::new(SpaceKind::WeightedLp { p: 1.0, weight: WeightRule::Harmonic }).unwrap();
        assert_eq!(w.class, InclusionClass::Neither);
    }
}
