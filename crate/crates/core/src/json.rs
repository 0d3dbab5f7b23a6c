//! PGA JSON format. Weights are `"num/den"` strings; `symbol` is omitted on ε-edges.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::FormatError;
use crate::pga::{Edge, Pga};
use crate::rational::{format_fraction, parse_fraction, Rational};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPga {
    alphabet: Vec<String>,
    states: usize,
    #[serde(default)]
    edges: Vec<RawEdge>,
    #[serde(default)]
    initial: BTreeMap<String, String>,
    #[serde(default, rename = "final")]
    final_weights: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    src: usize,
    dst: usize,
    weight: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symbol: Option<String>,
}

fn to_raw(a: &Pga) -> RawPga {
    let weights = |ws: &[Rational]| -> BTreeMap<String, String> {
        ws.iter()
            .enumerate()
            .filter(|(_, w)| !num_traits::Zero::is_zero(*w))
            .map(|(q, w)| (q.to_string(), format_fraction(w)))
            .collect()
    };
    RawPga {
        alphabet: a.alphabet().names().to_vec(),
        states: a.num_states(),
        edges: a
            .edges()
            .iter()
            .map(|e| RawEdge {
                src: e.src,
                dst: e.dst,
                weight: format_fraction(&e.weight),
                symbol: e.symbol.map(|s| a.alphabet().name(s).to_string()),
            })
            .collect(),
        initial: weights(a.initial_weights()),
        final_weights: weights(a.final_weights()),
    }
}

/// Pretty-printed JSON text.
pub fn serialize(a: &Pga) -> String {
    serde_json::to_string_pretty(&to_raw(a)).expect("plain data serializes")
}

pub fn serialize_value(a: &Pga) -> serde_json::Value {
    serde_json::to_value(to_raw(a)).expect("plain data serializes")
}

fn weight(field: String, value: &str) -> Result<Rational, FormatError> {
    parse_fraction(value).map_err(|_| FormatError::InvalidWeight { field, value: value.to_string() })
}

fn weight_map(name: &str, map: &BTreeMap<String, String>) -> Result<Vec<(usize, Rational)>, FormatError> {
    map.iter()
        .map(|(k, v)| {
            let q: usize = k.parse().map_err(|_| FormatError::Field {
                field: format!("{name}.{k}"),
                message: "state keys must be nonnegative integers".into(),
            })?;
            Ok((q, weight(format!("{name}.{k}"), v)?))
        })
        .collect()
}

pub fn deserialize(text: &str) -> Result<Pga, FormatError> {
    let raw: RawPga = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let alphabet = Alphabet::new(raw.alphabet.iter().cloned());
    if alphabet.len() != raw.alphabet.len() {
        return Err(FormatError::Field {
            field: "alphabet".into(),
            message: "duplicate variable names".into(),
        });
    }
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (i, e) in raw.edges.iter().enumerate() {
        let w = weight(format!("edges[{i}].weight"), &e.weight)?;
        let symbol = match &e.symbol {
            None => None,
            Some(name) => Some(alphabet.var(name).ok_or_else(|| FormatError::Field {
                field: format!("edges[{i}].symbol"),
                message: format!("`{name}` is not in the alphabet"),
            })?),
        };
        for (field, q) in [("src", e.src), ("dst", e.dst)] {
            if q >= raw.states {
                return Err(FormatError::Field {
                    field: format!("edges[{i}].{field}"),
                    message: format!("state {q} out of range for {} states", raw.states),
                });
            }
        }
        edges.push(Edge { src: e.src, dst: e.dst, weight: w, symbol });
    }
    let initial = weight_map("initial", &raw.initial)?;
    let final_weights = weight_map("final", &raw.final_weights)?;
    Pga::from_parts(alphabet, raw.states, edges, initial, final_weights)
        .map_err(|message| FormatError::Field { field: "states".into(), message })
}
