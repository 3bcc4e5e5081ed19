//! JSON descriptors for Orlicz functions, spaces and step vectors.
//!
//! ```json
//! {"pieces": [{"from": 0, "to": 1, "kind": "power", "coef": 1, "exp": 2},
//!             {"from": 1, "to": "inf", "kind": "constant", "value": "inf"}]}
//! {"kind": "lp", "p": 1, "gamma": "inf"}
//! {"steps": [[0, 4, 1.0]]}
//! ```
//!
//! A function may also be given by a built-in name such as `"square"` or
//! `"power:0.5"`.

use std::path::Path;

use clspace::orlicz::{NodeRule, OrliczFunction, Piece, PieceKind};
use clspace::spaces::{Carrier, LorentzWeight, NormFlavor, SpaceDescriptor, SpaceKind, WeightRule};
use clspace::{zoo, SimpleVector};
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

/// A number that may also be written `"inf"`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Num {
    F(f64),
    S(InfWord),
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub enum InfWord {
    #[serde(rename = "inf", alias = "infinity", alias = "Infinity", alias = "INF")]
    Inf,
}

impl Num {
    pub fn get(self) -> f64 {
        match self {
            Num::F(x) => x,
            Num::S(InfWord::Inf) => f64::INFINITY,
        }
    }
}

fn one() -> f64 {
    1.0
}

fn inf() -> Num {
    Num::S(InfWord::Inf)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RuleDesc {
    Arithmetic { start: f64, step: f64 },
    Reciprocal { start: f64, step: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KindDesc {
    Power {
        #[serde(default = "one")]
        coef: f64,
        exp: f64,
    },
    Affine {
        slope: f64,
        #[serde(default)]
        intercept: f64,
    },
    Log1p {
        #[serde(default = "one")]
        coef: f64,
    },
    InvLogRecip {
        #[serde(default = "one")]
        coef: f64,
    },
    Exp {
        #[serde(default = "one")]
        coef: f64,
        #[serde(default = "one")]
        rate: f64,
    },
    ExpRecip {
        #[serde(default = "one")]
        coef: f64,
        #[serde(default = "one")]
        rate: f64,
    },
    Nodes {
        nodes: Vec<(f64, f64)>,
    },
    GeometricNodes {
        u0: f64,
        ratio: f64,
        rule: RuleDesc,
    },
    Constant {
        value: Num,
    },
    Infinite,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PieceDesc {
    pub from: Num,
    pub to: Num,
    #[serde(flatten)]
    pub kind: KindDesc,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FunctionDesc {
    Name(String),
    Named { name: String },
    Pieces { pieces: Vec<PieceDesc> },
}

impl KindDesc {
    fn to_kind(&self) -> PieceKind {
        match self {
            KindDesc::Power { coef, exp } => PieceKind::Power { coef: *coef, exp: *exp },
            KindDesc::Affine { slope, intercept } => PieceKind::Affine { slope: *slope, intercept: *intercept },
            KindDesc::Log1p { coef } => PieceKind::Log1p { coef: *coef },
            KindDesc::InvLogRecip { coef } => PieceKind::InvLogRecip { coef: *coef },
            KindDesc::Exp { coef, rate } => PieceKind::Exp { coef: *coef, rate: *rate },
            KindDesc::ExpRecip { coef, rate } => PieceKind::ExpRecip { coef: *coef, rate: *rate },
            KindDesc::Nodes { nodes } => PieceKind::Nodes(nodes.clone()),
            KindDesc::GeometricNodes { u0, ratio, rule } => PieceKind::GeometricNodes {
                u0: *u0,
                ratio: *ratio,
                rule: match *rule {
                    RuleDesc::Arithmetic { start, step } => NodeRule::Arithmetic { start, step },
                    RuleDesc::Reciprocal { start, step } => NodeRule::Reciprocal { start, step },
                },
            },
            KindDesc::Constant { value } => {
                let v = value.get();
                if v.is_infinite() {
                    PieceKind::Infinite
                } else {
                    PieceKind::Constant(v)
                }
            }
            KindDesc::Infinite => PieceKind::Infinite,
        }
    }
}

impl FunctionDesc {
    pub fn build(&self) -> Result<OrliczFunction, CliError> {
        match self {
            FunctionDesc::Name(name) | FunctionDesc::Named { name } => {
                zoo::by_name(name).ok_or_else(|| CliError::malformed("function", format!("unknown function name {name:?}")))
            }
            FunctionDesc::Pieces { pieces } => {
                let pieces = pieces.iter().map(|p| Piece::new(p.from.get(), p.to.get(), p.kind.to_kind())).collect();
                OrliczFunction::new(pieces).map_err(|e| CliError::malformed("function", e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum WeightDesc {
    Geometric { a: f64 },
    Harmonic,
    Power { q: f64 },
    Alternating,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LorentzDesc {
    Power { alpha: f64 },
    Nodes { nodes: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlavorDesc {
    Luxemburg,
    Amemiya,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceDesc {
    Lp {
        p: f64,
        #[serde(default = "inf")]
        gamma: Num,
    },
    SeqLp {
        p: f64,
    },
    WeightedLp {
        p: f64,
        weight: WeightDesc,
    },
    Cesaro {
        p: f64,
    },
    L1CapLinf,
    Lorentz {
        weight: LorentzDesc,
        #[serde(default = "inf")]
        gamma: Num,
    },
    OrliczCapped {
        flavor: FlavorDesc,
    },
}

impl SpaceDesc {
    pub fn build(&self) -> Result<SpaceDescriptor, CliError> {
        let kind = match self {
            SpaceDesc::Lp { p, gamma } => SpaceKind::Lp { p: *p, gamma: gamma.get() },
            SpaceDesc::SeqLp { p } => SpaceKind::SeqLp { p: *p },
            SpaceDesc::WeightedLp { p, weight } => SpaceKind::WeightedLp {
                p: *p,
                weight: match *weight {
                    WeightDesc::Geometric { a } => WeightRule::Geometric { a },
                    WeightDesc::Harmonic => WeightRule::Harmonic,
                    WeightDesc::Power { q } => WeightRule::Power { q },
                    WeightDesc::Alternating => WeightRule::Alternating,
                },
            },
            SpaceDesc::Cesaro { p } => SpaceKind::Cesaro { p: *p },
            SpaceDesc::L1CapLinf => SpaceKind::L1CapLinf,
            SpaceDesc::Lorentz { weight, gamma } => SpaceKind::Lorentz {
                weight: match weight {
                    LorentzDesc::Power { alpha } => LorentzWeight::Power { alpha: *alpha },
                    LorentzDesc::Nodes { nodes } => LorentzWeight::Nodes(nodes.clone()),
                },
                gamma: gamma.get(),
            },
            SpaceDesc::OrliczCapped { flavor } => SpaceKind::OrliczCapped {
                flavor: match flavor {
                    FlavorDesc::Luxemburg => NormFlavor::Luxemburg,
                    FlavorDesc::Amemiya => NormFlavor::Amemiya,
                },
            },
        };
        SpaceDescriptor::new(kind).map_err(|e| CliError::malformed("space", e.to_string()))
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct VectorDesc {
    /// `[lo, hi, signed value]`
    pub steps: Vec<(Num, Num, f64)>,
}

impl VectorDesc {
    pub fn build(&self, carrier: Carrier) -> Result<SimpleVector, CliError> {
        let steps: Vec<(f64, f64, f64)> = self.steps.iter().map(|&(lo, hi, v)| (lo.get(), hi.get(), v)).collect();
        SimpleVector::from_steps(carrier, &steps).map_err(|e| CliError::malformed("vector", e.to_string()))
    }
}

/// Reads `arg` as a file when one exists at that path, as inline JSON
/// otherwise. A bare word that is not JSON is taken as a JSON string.
pub fn load(what: &str, arg: &str) -> Result<Value, CliError> {
    let path = Path::new(arg);
    let (text, origin) = if path.is_file() {
        (std::fs::read_to_string(path)?, format!("{what} file {arg}"))
    } else {
        (arg.to_string(), format!("inline {what}"))
    };
    match serde_json::from_str::<Value>(&text) {
        Ok(v) => Ok(v),
        Err(_) if !path.is_file() && is_bare_word(arg) => Ok(Value::String(arg.to_string())),
        Err(e) => Err(CliError::malformed(
            &format!("{what} descriptor"),
            format!("{origin} at line {} column {}: {e}", e.line(), e.column()),
        )),
    }
}

fn is_bare_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "_:.-".contains(c))
}

/// Decodes a loaded descriptor into its typed form.
pub fn decode<T: for<'de> Deserialize<'de>>(what: &str, v: &Value) -> Result<T, CliError> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::malformed(&format!("{what} descriptor"), e.to_string()))
}
