//! The assembly interchange file (JSON, version "1").
//!
//! ```json
//! {
//!   "version": "1",
//!   "blocks": [
//!     {"id": "b0", "kind": "core", "parameters": {}, "orientation": "+"},
//!     {"id": "b1", "kind": "connector", "parameters": {"psi": [1, 1, 0, 1]}, "orientation": "-"}
//!   ],
//!   "gluings": [{"from": ["b0", 0], "to": ["b1", 0]}]
//! }
//! ```
//!
//! Unknown fields are rejected everywhere. Matrix entries are arbitrary
//! precision integers. Gluings are loaded as written; legality is left to
//! [`verify`](crate::blocks::verify).

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::blocks::{
    cap, connector, core, custom, disk_bundle, genus_three_bundle, six_cap, splitter,
    twist_cobordism, AssemblyGraph, Block, BlockError, BlockKind, BoundaryLabel, Monodromy,
    SlotRef, SymbolicWord,
};
use crate::sl2z::{Sl2Error, Sl2Matrix};
use crate::Sign;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed assembly file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0:?}, expected \"1\"")]
    Version(String),
    #[error("unknown block kind {0:?}")]
    UnknownKind(String),
    #[error("block {id}: bad parameters: {message}")]
    Parameters { id: String, message: String },
    #[error("duplicate block id {0:?}")]
    DuplicateId(String),
    #[error("gluing refers to unknown block {0:?}")]
    UnknownBlock(String),
    #[error("{0:?} is not an integer")]
    BadInteger(String),
    #[error(transparent)]
    Matrix(#[from] Sl2Error),
    #[error(transparent)]
    Block(#[from] BlockError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    version: String,
    blocks: Vec<BlockRepr>,
    gluings: Vec<GluingRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockRepr {
    id: String,
    kind: String,
    #[serde(default)]
    parameters: Map<String, Value>,
    orientation: Sign,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GluingRepr {
    from: (String, usize),
    to: (String, usize),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NoParams {}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectorParams {
    psi: [Number; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistParams {
    genus: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiskParams {
    punctures: Vec<[Number; 4]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomParams {
    name: String,
    chi: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<i64>,
    boundaries: Vec<LabelRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelRepr {
    genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<[Number; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    word: Option<Vec<(String, i64)>>,
    orientation: Sign,
}

fn big(n: &Number) -> Result<BigInt, FormatError> {
    let s = n.to_string();
    s.parse().map_err(|_| FormatError::BadInteger(s))
}

fn number(b: &BigInt) -> Number {
    b.to_string()
        .parse()
        .expect("integer literal is valid JSON")
}

fn matrix(entries: &[Number; 4]) -> Result<Sl2Matrix, FormatError> {
    let [a, b, c, d] = entries;
    Ok(Sl2Matrix::new(big(a)?, big(b)?, big(c)?, big(d)?)?)
}

fn entries(m: &Sl2Matrix) -> [Number; 4] {
    m.entries().map(number)
}

fn params<T: DeserializeOwned>(id: &str, map: &Map<String, Value>) -> Result<T, FormatError> {
    serde_json::from_value(Value::Object(map.clone())).map_err(|e| FormatError::Parameters {
        id: id.to_string(),
        message: e.to_string(),
    })
}

fn to_map<T: Serialize>(value: &T) -> Map<String, Value> {
    match serde_json::to_value(value).expect("parameters serialize") {
        Value::Object(m) => m,
        _ => unreachable!("parameter structs serialize to objects"),
    }
}

fn label_repr(l: &BoundaryLabel) -> LabelRepr {
    let (matrix, word) = match l.monodromy() {
        Monodromy::Torus(c) => (Some(entries(&c.representative())), None),
        Monodromy::Symbolic(w) => (None, Some(w.letters().to_vec())),
    };
    LabelRepr {
        genus: l.fiber_genus(),
        matrix,
        word,
        orientation: l.orientation(),
    }
}

fn parse_label(id: &str, r: &LabelRepr) -> Result<BoundaryLabel, FormatError> {
    let bad = |message: &str| FormatError::Parameters {
        id: id.to_string(),
        message: message.to_string(),
    };
    match (r.genus, &r.matrix, &r.word) {
        (1, Some(m), None) => Ok(BoundaryLabel::torus_bundle(&matrix(m)?).oriented(r.orientation)),
        (g, None, Some(w)) if g >= 2 => Ok(BoundaryLabel::surface(
            g,
            SymbolicWord::new(w.iter().cloned()),
            r.orientation,
        )?),
        (1, _, _) => Err(bad("a genus-1 boundary needs exactly a \"matrix\"")),
        (0, _, _) => Err(bad("boundary genus must be at least 1")),
        _ => Err(bad("a genus ≥ 2 boundary needs exactly a \"word\"")),
    }
}

fn block_repr(index: usize, block: &Block, orientation: Sign) -> BlockRepr {
    let empty = Map::new();
    let (kind, parameters) = match &block.kind {
        BlockKind::Core => ("core", empty),
        BlockKind::Splitter => ("splitter", empty),
        BlockKind::Cap => ("cap", empty),
        BlockKind::SixCap => ("six_cap", empty),
        BlockKind::GenusThreeBundle => ("genus_three_bundle", empty),
        BlockKind::Connector(psi) => ("connector", to_map(&ConnectorParams { psi: entries(psi) })),
        BlockKind::TwistCobordism(h) => ("twist_cobordism", to_map(&TwistParams { genus: *h })),
        BlockKind::DiskBundle(p) => (
            "disk_bundle",
            to_map(&DiskParams {
                punctures: p.iter().map(entries).collect(),
            }),
        ),
        BlockKind::Custom(name) => (
            "custom",
            to_map(&CustomParams {
                name: name.clone(),
                chi: block.chi,
                sigma: block.sigma.map(|s| s.value),
                boundaries: block.boundaries.iter().map(label_repr).collect(),
            }),
        ),
    };
    BlockRepr {
        id: format!("b{index}"),
        kind: kind.to_string(),
        parameters,
        orientation,
    }
}

fn parse_block(r: &BlockRepr) -> Result<Block, FormatError> {
    let id = r.id.as_str();
    let p = &r.parameters;
    let block = match r.kind.as_str() {
        "core" | "splitter" | "cap" | "six_cap" | "genus_three_bundle" => {
            params::<NoParams>(id, p)?;
            match r.kind.as_str() {
                "core" => core(),
                "splitter" => splitter(),
                "cap" => cap(),
                "six_cap" => six_cap(),
                _ => genus_three_bundle(),
            }
        }
        "connector" => connector(&matrix(&params::<ConnectorParams>(id, p)?.psi)?),
        "twist_cobordism" => twist_cobordism(params::<TwistParams>(id, p)?.genus)?,
        "disk_bundle" => {
            let d: DiskParams = params(id, p)?;
            disk_bundle(d.punctures.iter().map(matrix).collect::<Result<_, _>>()?)
        }
        "custom" => {
            let c: CustomParams = params(id, p)?;
            let labels = c
                .boundaries
                .iter()
                .map(|l| parse_label(id, l))
                .collect::<Result<_, _>>()?;
            custom(&c.name, c.chi, c.sigma, labels)
        }
        other => return Err(FormatError::UnknownKind(other.to_string())),
    };
    Ok(block)
}

/// Pretty-printed JSON; block ids are `b0, b1, …` in instance order.
pub fn serialize(g: &AssemblyGraph) -> String {
    let file = FileRepr {
        version: FORMAT_VERSION.to_string(),
        blocks: g
            .instances()
            .iter()
            .enumerate()
            .map(|(i, inst)| block_repr(i, &inst.block, inst.orientation))
            .collect(),
        gluings: g
            .gluings()
            .iter()
            .map(|gl| GluingRepr {
                from: (format!("b{}", gl.a.instance), gl.a.slot),
                to: (format!("b{}", gl.b.instance), gl.b.slot),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("assembly serializes");
    out.push('\n');
    out
}

pub fn parse(text: &str) -> Result<AssemblyGraph, FormatError> {
    let file: FileRepr = serde_json::from_str(text)?;
    if file.version != FORMAT_VERSION {
        return Err(FormatError::Version(file.version));
    }
    let mut g = AssemblyGraph::new();
    let mut ids = HashMap::new();
    for r in &file.blocks {
        let block = parse_block(r)?;
        let index = g.add_instance(block, r.orientation);
        if ids.insert(r.id.clone(), index).is_some() {
            return Err(FormatError::DuplicateId(r.id.clone()));
        }
    }
    let slot = |(id, s): &(String, usize)| {
        ids.get(id)
            .map(|&i| SlotRef::new(i, *s))
            .ok_or_else(|| FormatError::UnknownBlock(id.clone()))
    };
    for gl in &file.gluings {
        g.add_gluing_unchecked(slot(&gl.from)?, slot(&gl.to)?);
    }
    Ok(g)
}
