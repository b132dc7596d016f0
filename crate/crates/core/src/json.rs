//! Wire formats. Monoids travel as JSON in one of two shapes:
//!
//! ```json
//! {"order": 2, "identity": 0, "table": [[0,1],[1,1]], "generators": {"x": 1}}
//! {"points": 2, "generators": {"a": [0,0], "b": [1,1]}}
//! ```
//!
//! The `generators` object's key order is the declared generator order (the
//! parser preserves document order), which fixes canonical element numbering
//! for the transformation form. Emission always uses the table shape.
//!
//! Labelled graphs:
//!
//! ```json
//! {"vertices": ["p", "q"], "edges": [{"src": 0, "dst": 1}],
//!  "labels": {"v0": [0], "v1": [0, 1], "e0": [1]}}
//! ```
//!
//! Labels are keyed `v{i}` / `e{i}` by position and list element ids of the
//! carrier monoid, which is supplied separately.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::inevitability::LabelledGraph;
use crate::monoid::Monoid;
use crate::pointset::PointSet;

fn bad(detail: impl Into<String>) -> Error {
    Error::Malformed { detail: detail.into() }
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn id_array(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))?
        .iter()
        .map(|x| as_usize(x, what))
        .collect()
}

pub fn parse_monoid(text: &str) -> Result<Monoid> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    monoid_from_value(&v)
}

pub fn monoid_from_value(v: &Value) -> Result<Monoid> {
    let obj = v.as_object().ok_or_else(|| bad("monoid must be a JSON object"))?;
    let gens_obj = obj
        .get("generators")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("missing \"generators\" object"))?;
    if obj.contains_key("table") {
        let order = as_usize(
            obj.get("order").ok_or_else(|| bad("missing \"order\""))?,
            "order",
        )?;
        let identity = as_usize(
            obj.get("identity").ok_or_else(|| bad("missing \"identity\""))?,
            "identity",
        )?;
        let table_rows = obj
            .get("table")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("\"table\" must be an array of rows"))?;
        if table_rows.len() != order {
            return Err(bad(format!(
                "table has {} rows, declared order is {order}",
                table_rows.len()
            )));
        }
        let table: Vec<Vec<usize>> = table_rows
            .iter()
            .map(|row| id_array(row, "table row"))
            .collect::<Result<_>>()?;
        let generators = gens_obj
            .iter()
            .map(|(l, v)| Ok((l.clone(), as_usize(v, "generator id")?)))
            .collect::<Result<Vec<_>>>()?;
        Monoid::from_table(table, identity, generators)
    } else if obj.contains_key("points") {
        let points = as_usize(obj.get("points").unwrap(), "points")?;
        let generators = gens_obj
            .iter()
            .map(|(l, v)| Ok((l.clone(), id_array(v, "generator map")?)))
            .collect::<Result<Vec<_>>>()?;
        Monoid::from_transformations(points, generators)
    } else {
        Err(bad("monoid object needs either \"table\" or \"points\""))
    }
}

pub fn monoid_to_value(m: &Monoid) -> Value {
    let mut gens = Map::new();
    for (letter, id) in m.generators() {
        gens.insert(letter.clone(), Value::from(*id));
    }
    let mut obj = Map::new();
    obj.insert("order".into(), Value::from(m.order()));
    obj.insert("identity".into(), Value::from(m.identity()));
    obj.insert(
        "table".into(),
        Value::from(
            m.table_rows()
                .into_iter()
                .map(Value::from)
                .collect::<Vec<_>>(),
        ),
    );
    obj.insert("generators".into(), Value::Object(gens));
    Value::Object(obj)
}

pub fn parse_graph(text: &str, order: usize) -> Result<LabelledGraph> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| bad("graph must be a JSON object"))?;
    let vertices: Vec<String> = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"vertices\" array"))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad("vertex names must be strings"))
        })
        .collect::<Result<_>>()?;
    let edges: Vec<(usize, usize)> = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"edges\" array"))?
        .iter()
        .map(|e| {
            let eo = e.as_object().ok_or_else(|| bad("edges must be objects"))?;
            Ok((
                as_usize(eo.get("src").ok_or_else(|| bad("edge missing \"src\""))?, "src")?,
                as_usize(eo.get("dst").ok_or_else(|| bad("edge missing \"dst\""))?, "dst")?,
            ))
        })
        .collect::<Result<_>>()?;
    let labels = obj
        .get("labels")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("missing \"labels\" object"))?;
    let fetch = |key: String| -> Result<PointSet> {
        let raw = labels
            .get(&key)
            .ok_or_else(|| bad(format!("missing label \"{key}\"")))?;
        let ids = id_array(raw, "label")?;
        if let Some(&element) = ids.iter().find(|&&x| x >= order) {
            return Err(Error::LabelOverWrongMonoid { item: key, element, order });
        }
        Ok(PointSet::from_ids(order, ids))
    };
    let vertex_labels: Vec<PointSet> = (0..vertices.len())
        .map(|i| fetch(format!("v{i}")))
        .collect::<Result<_>>()?;
    let edge_labels: Vec<PointSet> = (0..edges.len())
        .map(|i| fetch(format!("e{i}")))
        .collect::<Result<_>>()?;
    let expected = vertices.len() + edges.len();
    if labels.len() != expected {
        return Err(bad(format!(
            "labels object has {} entries, expected {expected}",
            labels.len()
        )));
    }
    LabelledGraph::new(vertices, edges, vertex_labels, edge_labels)
}

pub fn graph_to_value(g: &LabelledGraph) -> Value {
    let mut labels = Map::new();
    for (i, l) in g.vertex_labels().iter().enumerate() {
        labels.insert(format!("v{i}"), Value::from(l.ids()));
    }
    for (i, l) in g.edge_labels().iter().enumerate() {
        labels.insert(format!("e{i}"), Value::from(l.ids()));
    }
    let mut obj = Map::new();
    obj.insert(
        "vertices".into(),
        Value::from(g.vertex_names().to_vec()),
    );
    obj.insert(
        "edges".into(),
        Value::from(
            g.edges()
                .iter()
                .map(|&(src, dst)| {
                    let mut e = Map::new();
                    e.insert("src".into(), Value::from(src));
                    e.insert("dst".into(), Value::from(dst));
                    Value::Object(e)
                })
                .collect::<Vec<_>>(),
        ),
    );
    obj.insert("labels".into(), Value::Object(labels));
    Value::Object(obj)
}
