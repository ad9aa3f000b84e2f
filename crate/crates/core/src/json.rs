//! Witness JSON:
//!
//! ```json
//! {"n": 3, "edges": [[0,1],[1,2]], "weights": {"0": "1", "1": "2", "2": "4"},
//!  "intervals": [["3","3"],["6","6"]]}
//! ```
//!
//! Rationals are reduced `"p/q"` strings, or `"p"` for integers. Output is
//! deterministic: edges in lexicographic order, weights by vertex.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::solver::{Certificate, Outcome};
use crate::witness::{Interval, IntervalSet, Witness};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
    weights: WeightMap,
    intervals: Vec<[String; 2]>,
}

/// Weights keyed by decimal vertex id, serialized in vertex order.
struct WeightMap(Vec<String>);

impl Serialize for WeightMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (v, w) in self.0.iter().enumerate() {
            map.serialize_entry(&v.to_string(), w)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for WeightMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        let mut keyed: Vec<(usize, String)> = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let idx: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("weight key {k:?} is not a vertex id")))?;
            keyed.push((idx, v));
        }
        keyed.sort_by_key(|(k, _)| *k);
        for (i, (k, _)) in keyed.iter().enumerate() {
            if *k != i {
                return Err(D::Error::custom(format!("missing weight for vertex {i}")));
            }
        }
        Ok(WeightMap(keyed.into_iter().map(|(_, v)| v).collect()))
    }
}

pub fn witness_to_json(w: &Witness) -> String {
    let doc = WitnessDoc {
        n: w.graph().n(),
        edges: w.graph().edges().map(|(u, v)| [u, v]).collect(),
        weights: WeightMap(w.weights().iter().map(format_rational).collect()),
        intervals: w
            .intervals()
            .iter()
            .map(|iv| [format_rational(iv.lo()), format_rational(iv.hi())])
            .collect(),
    };
    serde_json::to_string(&doc).expect("witness documents always serialize")
}

pub fn witness_to_json_pretty(w: &Witness) -> String {
    let compact: Value = serde_json::from_str(&witness_to_json(w)).expect("valid json");
    // Re-rendering through Value would sort keys; format by hand instead.
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"n\": {},\n", compact["n"]));
    out.push_str(&format!("  \"edges\": {},\n", compact["edges"]));
    let weights: Vec<String> = w
        .weights()
        .iter()
        .enumerate()
        .map(|(v, x)| format!("\"{v}\": \"{}\"", format_rational(x)))
        .collect();
    out.push_str(&format!("  \"weights\": {{{}}},\n", weights.join(", ")));
    out.push_str(&format!("  \"intervals\": {}\n}}", compact["intervals"]));
    out
}

/// Parses a witness document. Structure is checked; validity is not.
pub fn witness_from_json(text: &str) -> Result<Witness> {
    let doc: WitnessDoc = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    doc_to_witness(doc)
}

/// Parses the first JSON object in `text`, ignoring any surrounding report
/// lines. Lets tools read back their own annotated output.
pub fn witness_from_annotated(text: &str) -> Result<Witness> {
    let start = text
        .find('{')
        .ok_or_else(|| Error::parse("byte 0", "no JSON object found"))?;
    let mut stream = serde_json::Deserializer::from_str(&text[start..]).into_iter::<WitnessDoc>();
    match stream.next() {
        Some(Ok(doc)) => doc_to_witness(doc),
        Some(Err(e)) => Err(Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )),
        None => Err(Error::parse("byte 0", "no JSON object found")),
    }
}

fn doc_to_witness(doc: WitnessDoc) -> Result<Witness> {
    if doc.weights.0.len() != doc.n {
        return Err(Error::Structure(format!(
            "{} weights for n = {}",
            doc.weights.0.len(),
            doc.n
        )));
    }
    let graph = Graph::from_edges(doc.n, doc.edges.iter().map(|&[u, v]| (u, v)))?;
    let weights = doc
        .weights
        .0
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<Rational>>>()?;
    let intervals = doc
        .intervals
        .iter()
        .map(|[lo, hi]| Interval::new(parse_rational(lo)?, parse_rational(hi)?))
        .collect::<Result<Vec<_>>>()?;
    Witness::new(graph, weights, IntervalSet::new(intervals)?)
}

/// Solver certificate document: the witness for a feasible answer, or the
/// exhaustion record.
pub fn certificate_to_json(cert: &Certificate) -> Value {
    match &cert.outcome {
        Outcome::Witness(w) => json!({
            "outcome": "witness",
            "k": cert.k,
            "mode": cert.mode.as_str(),
            "nodes_explored": cert.nodes_explored,
            "witness": serde_json::from_str::<Value>(&witness_to_json(w)).expect("valid json"),
        }),
        Outcome::Infeasible => json!({
            "outcome": "infeasible",
            "k": cert.k,
            "mode": cert.mode.as_str(),
            "nodes_explored": cert.nodes_explored,
        }),
    }
}
