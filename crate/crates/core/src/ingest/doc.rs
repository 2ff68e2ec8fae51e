//! The versioned JSON drawing document.
//!
//! ```json
//! {"format": "pseudolinear-drawing", "version": 1, "mode": "geometric",
//!  "polylines": [{"id": "a", "points": [[0, 0], ["7/2", 4]]}]}
//! ```
//!
//! Combinatorial documents list `points` (`{"id", "coords"?}`), `strings`
//! (`{"id", "nodes"}`), `rotations` (point id to the counterclockwise list of
//! `[string id, segment index]` pairs, required at points with three or more
//! segment ends), `outer` (one `[string id, segment index, "forward" | "backward"]`
//! per component, naming a segment side that faces the unbounded face) and
//! optionally `enclosures` (`{"inner": side, "face": side}`). Both modes accept
//! `graph_vertices`: coordinates in geometric mode, point ids otherwise.

use super::polyline::{polylines_to_stringset, Polyline};
use crate::error::{Error, Result};
use crate::geom::{fmt_q, parse_q, Pt, Q};
use crate::ids::{End, HalfSeg, PointId, StringId};
use crate::stringset::{Enclosure, StringSet, Violation};
use serde_json::{json, Map, Value};
use std::collections::{BTreeMap, BTreeSet};

pub const FORMAT: &str = "pseudolinear-drawing";
pub const VERSION: u64 = 1;

/// A segment side: string id, segment index, and direction of travel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideRef {
    pub string: String,
    pub seg: usize,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombPoint {
    pub id: String,
    pub coords: Option<Pt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombString {
    pub id: String,
    pub nodes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combinatorial {
    pub points: Vec<CombPoint>,
    pub strings: Vec<CombString>,
    pub rotations: BTreeMap<String, Vec<(String, usize)>>,
    pub outer: Vec<SideRef>,
    pub enclosures: Vec<(SideRef, SideRef)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Geometric(Vec<Polyline>),
    Combinatorial(Combinatorial),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphVertices {
    Coords(Vec<Pt>),
    Ids(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingDoc {
    pub payload: Payload,
    pub graph_vertices: Option<GraphVertices>,
}

// ----- parsing ------------------------------------------------------------

fn err(ptr: &str, msg: impl Into<String>) -> Error {
    Error::schema(if ptr.is_empty() { "/" } else { ptr }, msg)
}

fn obj<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(ptr, "expected an object"))
}

fn arr<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(ptr, "expected an array"))
}

fn string(v: &Value, ptr: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| err(ptr, "expected a string"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, ptr: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| err(ptr, format!("missing field `{key}`")))
}

fn check_keys(m: &Map<String, Value>, allowed: &[&str], ptr: &str) -> Result<()> {
    for k in m.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(err(&format!("{ptr}/{k}"), "unknown field"));
        }
    }
    Ok(())
}

fn number(v: &Value, ptr: &str) -> Result<Q> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(crate::geom::q_int)
            .ok_or_else(|| err(ptr, "coordinates must be integers or \"p/q\" strings")),
        Value::String(s) => parse_q(s).ok_or_else(|| err(ptr, format!("bad rational `{s}`"))),
        _ => Err(err(ptr, "expected a coordinate")),
    }
}

fn point(v: &Value, ptr: &str) -> Result<Pt> {
    let a = arr(v, ptr)?;
    if a.len() != 2 {
        return Err(err(ptr, "a point has two coordinates"));
    }
    Ok(Pt::new(
        number(&a[0], &format!("{ptr}/0"))?,
        number(&a[1], &format!("{ptr}/1"))?,
    ))
}

fn index(v: &Value, ptr: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(ptr, "expected a non-negative integer"))
}

fn side(v: &Value, ptr: &str) -> Result<SideRef> {
    let a = arr(v, ptr)?;
    if a.len() != 3 {
        return Err(err(ptr, "expected [string, segment, direction]"));
    }
    let dir = string(&a[2], &format!("{ptr}/2"))?;
    let forward = match dir.as_str() {
        "forward" => true,
        "backward" => false,
        _ => {
            return Err(err(
                &format!("{ptr}/2"),
                "direction must be \"forward\" or \"backward\"",
            ))
        }
    };
    Ok(SideRef {
        string: string(&a[0], &format!("{ptr}/0"))?,
        seg: index(&a[1], &format!("{ptr}/1"))?,
        forward,
    })
}

/// Parses and validates the document schema (not the drawing itself).
pub fn parse_drawing(bytes: &[u8]) -> Result<DrawingDoc> {
    let v: Value = serde_json::from_slice(bytes).map_err(|e| err("", format!("invalid JSON: {e}")))?;
    let m = obj(&v, "")?;
    check_keys(
        m,
        &[
            "format",
            "version",
            "mode",
            "polylines",
            "points",
            "strings",
            "rotations",
            "outer",
            "enclosures",
            "graph_vertices",
        ],
        "",
    )?;
    let fmt = string(field(m, "format", "")?, "/format")?;
    if fmt != FORMAT {
        return Err(err("/format", format!("expected \"{FORMAT}\"")));
    }
    let ver = field(m, "version", "")?
        .as_u64()
        .ok_or_else(|| err("/version", "expected an integer"))?;
    if ver != VERSION {
        return Err(err("/version", format!("unsupported version {ver}")));
    }
    let mode = string(field(m, "mode", "")?, "/mode")?;
    let payload = match mode.as_str() {
        "geometric" => {
            for k in ["points", "strings", "rotations", "outer", "enclosures"] {
                if m.contains_key(k) {
                    return Err(err(&format!("/{k}"), "not allowed in geometric mode"));
                }
            }
            let mut lines = Vec::new();
            for (i, l) in arr(field(m, "polylines", "")?, "/polylines")?.iter().enumerate() {
                let p = format!("/polylines/{i}");
                let lm = obj(l, &p)?;
                check_keys(lm, &["id", "points"], &p)?;
                let id = string(field(lm, "id", &p)?, &format!("{p}/id"))?;
                let pts = arr(field(lm, "points", &p)?, &format!("{p}/points"))?
                    .iter()
                    .enumerate()
                    .map(|(k, x)| point(x, &format!("{p}/points/{k}")))
                    .collect::<Result<Vec<_>>>()?;
                lines.push(Polyline::new(id, pts));
            }
            Payload::Geometric(lines)
        }
        "combinatorial" => {
            if m.contains_key("polylines") {
                return Err(err("/polylines", "not allowed in combinatorial mode"));
            }
            let mut points = Vec::new();
            for (i, p) in arr(field(m, "points", "")?, "/points")?.iter().enumerate() {
                let ptr = format!("/points/{i}");
                let pm = obj(p, &ptr)?;
                check_keys(pm, &["id", "coords"], &ptr)?;
                points.push(CombPoint {
                    id: string(field(pm, "id", &ptr)?, &format!("{ptr}/id"))?,
                    coords: match pm.get("coords") {
                        Some(c) => Some(point(c, &format!("{ptr}/coords"))?),
                        None => None,
                    },
                });
            }
            let mut strings = Vec::new();
            for (i, s) in arr(field(m, "strings", "")?, "/strings")?.iter().enumerate() {
                let ptr = format!("/strings/{i}");
                let sm = obj(s, &ptr)?;
                check_keys(sm, &["id", "nodes"], &ptr)?;
                strings.push(CombString {
                    id: string(field(sm, "id", &ptr)?, &format!("{ptr}/id"))?,
                    nodes: arr(field(sm, "nodes", &ptr)?, &format!("{ptr}/nodes"))?
                        .iter()
                        .enumerate()
                        .map(|(k, n)| string(n, &format!("{ptr}/nodes/{k}")))
                        .collect::<Result<Vec<_>>>()?,
                });
            }
            let mut rotations = BTreeMap::new();
            if let Some(r) = m.get("rotations") {
                for (k, list) in obj(r, "/rotations")? {
                    let ptr = format!("/rotations/{k}");
                    let mut out = Vec::new();
                    for (i, e) in arr(list, &ptr)?.iter().enumerate() {
                        let ep = format!("{ptr}/{i}");
                        let a = arr(e, &ep)?;
                        if a.len() != 2 {
                            return Err(err(&ep, "expected [string, segment]"));
                        }
                        out.push((string(&a[0], &format!("{ep}/0"))?, index(&a[1], &format!("{ep}/1"))?));
                    }
                    rotations.insert(k.clone(), out);
                }
            }
            let outer = arr(field(m, "outer", "")?, "/outer")?
                .iter()
                .enumerate()
                .map(|(i, s)| side(s, &format!("/outer/{i}")))
                .collect::<Result<Vec<_>>>()?;
            if outer.is_empty() && !strings.is_empty() {
                return Err(err("/outer", "at least one outer side is required"));
            }
            let mut enclosures = Vec::new();
            if let Some(e) = m.get("enclosures") {
                for (i, x) in arr(e, "/enclosures")?.iter().enumerate() {
                    let ptr = format!("/enclosures/{i}");
                    let xm = obj(x, &ptr)?;
                    check_keys(xm, &["inner", "face"], &ptr)?;
                    enclosures.push((
                        side(field(xm, "inner", &ptr)?, &format!("{ptr}/inner"))?,
                        side(field(xm, "face", &ptr)?, &format!("{ptr}/face"))?,
                    ));
                }
            }
            Payload::Combinatorial(Combinatorial {
                points,
                strings,
                rotations,
                outer,
                enclosures,
            })
        }
        other => return Err(err("/mode", format!("unknown mode `{other}`"))),
    };
    let graph_vertices = match m.get("graph_vertices") {
        None => None,
        Some(g) => {
            let a = arr(g, "/graph_vertices")?;
            Some(match payload {
                Payload::Geometric(_) => GraphVertices::Coords(
                    a.iter()
                        .enumerate()
                        .map(|(i, x)| point(x, &format!("/graph_vertices/{i}")))
                        .collect::<Result<_>>()?,
                ),
                Payload::Combinatorial(_) => GraphVertices::Ids(
                    a.iter()
                        .enumerate()
                        .map(|(i, x)| string(x, &format!("/graph_vertices/{i}")))
                        .collect::<Result<_>>()?,
                ),
            })
        }
    };
    Ok(DrawingDoc {
        payload,
        graph_vertices,
    })
}

// ----- serialisation ------------------------------------------------------

fn q_json(q: &Q) -> Value {
    let s = fmt_q(q);
    match s.parse::<i64>() {
        Ok(i) => json!(i),
        Err(_) => json!(s),
    }
}

fn pt_json(p: &Pt) -> Value {
    json!([q_json(&p.x), q_json(&p.y)])
}

fn side_json(s: &SideRef) -> Value {
    json!([s.string, s.seg, if s.forward { "forward" } else { "backward" }])
}

pub fn doc_to_value(doc: &DrawingDoc) -> Value {
    let mut m = Map::new();
    m.insert("format".into(), json!(FORMAT));
    m.insert("version".into(), json!(VERSION));
    match &doc.payload {
        Payload::Geometric(lines) => {
            m.insert("mode".into(), json!("geometric"));
            m.insert(
                "polylines".into(),
                Value::Array(
                    lines
                        .iter()
                        .map(|l| json!({"id": l.id, "points": l.points.iter().map(pt_json).collect::<Vec<_>>()}))
                        .collect(),
                ),
            );
        }
        Payload::Combinatorial(c) => {
            m.insert("mode".into(), json!("combinatorial"));
            m.insert(
                "points".into(),
                Value::Array(
                    c.points
                        .iter()
                        .map(|p| {
                            let mut o = Map::new();
                            o.insert("id".into(), json!(p.id));
                            if let Some(x) = &p.coords {
                                o.insert("coords".into(), pt_json(x));
                            }
                            Value::Object(o)
                        })
                        .collect(),
                ),
            );
            m.insert(
                "strings".into(),
                Value::Array(
                    c.strings
                        .iter()
                        .map(|s| json!({"id": s.id, "nodes": s.nodes}))
                        .collect(),
                ),
            );
            let mut rot = Map::new();
            for (k, v) in &c.rotations {
                rot.insert(k.clone(), Value::Array(v.iter().map(|(s, i)| json!([s, i])).collect()));
            }
            m.insert("rotations".into(), Value::Object(rot));
            m.insert("outer".into(), Value::Array(c.outer.iter().map(side_json).collect()));
            if !c.enclosures.is_empty() {
                m.insert(
                    "enclosures".into(),
                    Value::Array(
                        c.enclosures
                            .iter()
                            .map(|(a, b)| json!({"inner": side_json(a), "face": side_json(b)}))
                            .collect(),
                    ),
                );
            }
        }
    }
    match &doc.graph_vertices {
        None => {}
        Some(GraphVertices::Coords(v)) => {
            m.insert("graph_vertices".into(), Value::Array(v.iter().map(pt_json).collect()));
        }
        Some(GraphVertices::Ids(v)) => {
            m.insert("graph_vertices".into(), json!(v));
        }
    }
    Value::Object(m)
}

/// Pretty-printed JSON with a trailing newline. Key order is fixed.
pub fn to_json_bytes(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("serialisable value");
    out.push(b'\n');
    out
}

pub fn serialize_drawing(doc: &DrawingDoc) -> Vec<u8> {
    to_json_bytes(&doc_to_value(doc))
}

// ----- conversion ---------------------------------------------------------

/// A loaded drawing: the string set and, when given, its graph vertices.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub sigma: StringSet,
    pub graph_vertices: Option<Vec<PointId>>,
}

fn violation_error(v: Violation) -> Error {
    match v {
        Violation::Tangency { .. } => Error::TangencyViolation(v.to_string()),
        Violation::SelfCross { .. } => Error::SelfCrossViolation(v.to_string()),
        Violation::Overlap { .. } => Error::OverlapViolation(v.to_string()),
        Violation::Structure(m) => Error::schema("/", m),
    }
}

fn resolve_side(sigma: &StringSet, s: &SideRef, ptr: &str) -> Result<HalfSeg> {
    let sid = sigma
        .find_string(&s.string)
        .ok_or_else(|| err(ptr, format!("unknown string `{}`", s.string)))?;
    let st = sigma.string(sid);
    let g = *st
        .segs
        .get(s.seg)
        .ok_or_else(|| err(ptr, format!("string `{}` has no segment {}", s.string, s.seg)))?;
    Ok(HalfSeg::new(g, if s.forward { End::From } else { End::To }))
}

fn combinatorial_to_stringset(c: &Combinatorial) -> Result<StringSet> {
    let mut sigma = StringSet::new();
    let mut ids = BTreeMap::new();
    for (i, p) in c.points.iter().enumerate() {
        if ids
            .insert(
                p.id.clone(),
                sigma.add_point(p.id.clone(), p.coords.clone(), vec![p.id.clone()]),
            )
            .is_some()
        {
            return Err(err(&format!("/points/{i}/id"), "duplicate id"));
        }
    }
    let mut seen = BTreeSet::new();
    for (i, s) in c.strings.iter().enumerate() {
        if !seen.insert(s.id.clone()) {
            return Err(err(&format!("/strings/{i}/id"), "duplicate id"));
        }
        if s.nodes.len() < 2 {
            return Err(err(&format!("/strings/{i}/nodes"), "a string needs two nodes"));
        }
        let nodes = s
            .nodes
            .iter()
            .enumerate()
            .map(|(k, n)| {
                ids.get(n)
                    .copied()
                    .ok_or_else(|| err(&format!("/strings/{i}/nodes/{k}"), format!("unknown point `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        sigma.add_string(s.id.clone(), nodes);
    }
    for (pid, list) in &c.rotations {
        let ptr = format!("/rotations/{pid}");
        let p = *ids.get(pid).ok_or_else(|| err(&ptr, "unknown point"))?;
        let mut order = Vec::new();
        for (i, (sname, k)) in list.iter().enumerate() {
            let ep = format!("{ptr}/{i}");
            let sid: StringId = sigma
                .find_string(sname)
                .ok_or_else(|| err(&ep, format!("unknown string `{sname}`")))?;
            let g = *sigma
                .string(sid)
                .segs
                .get(*k)
                .ok_or_else(|| err(&ep, "segment index out of range"))?;
            let seg = sigma.segment(g);
            let end = if seg.from == p {
                End::From
            } else if seg.to == p {
                End::To
            } else {
                return Err(err(&ep, "segment does not end at this point"));
            };
            order.push(HalfSeg::new(g, end));
        }
        let have: BTreeSet<HalfSeg> = sigma.raw_rotation(p).iter().copied().collect();
        let want: BTreeSet<HalfSeg> = order.iter().copied().collect();
        if have != want || want.len() != order.len() {
            return Err(err(
                &ptr,
                "rotation must list every segment end at the point exactly once",
            ));
        }
        sigma.set_rotation(p, order);
    }
    for p in sigma.live_points() {
        if sigma.raw_rotation(p).len() >= 3 && !c.rotations.contains_key(sigma.point_label(p)) {
            return Err(err(
                &format!("/rotations/{}", sigma.point_label(p)),
                "rotation required at this point",
            ));
        }
    }
    let marks = c
        .outer
        .iter()
        .enumerate()
        .map(|(i, s)| resolve_side(&sigma, s, &format!("/outer/{i}")))
        .collect::<Result<Vec<_>>>()?;
    let enclosures = c
        .enclosures
        .iter()
        .enumerate()
        .map(|(i, (a, b))| {
            Ok(Enclosure {
                inner: resolve_side(&sigma, a, &format!("/enclosures/{i}/inner"))?,
                face: resolve_side(&sigma, b, &format!("/enclosures/{i}/face"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sigma.set_outer_marks(marks);
    sigma.set_enclosures(enclosures);
    if let Some(v) = sigma.validate_general_position().into_iter().next() {
        return Err(violation_error(v));
    }
    sigma.derived().map_err(|e| match e {
        Error::MissingOuterFace(p) => err("/outer", format!("no outer side given for the component of `{p}`")),
        other => other,
    })?;
    Ok(sigma)
}

/// Builds and validates the string set of a document.
pub fn load_drawing(doc: &DrawingDoc) -> Result<Loaded> {
    let sigma = match &doc.payload {
        Payload::Geometric(lines) => polylines_to_stringset(lines)?,
        Payload::Combinatorial(c) => combinatorial_to_stringset(c)?,
    };
    let graph_vertices = match &doc.graph_vertices {
        None => None,
        Some(GraphVertices::Ids(v)) => Some(
            v.iter()
                .enumerate()
                .map(|(i, l)| {
                    sigma
                        .find_point(l)
                        .ok_or_else(|| err(&format!("/graph_vertices/{i}"), "unknown point"))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(GraphVertices::Coords(v)) => Some(
            v.iter()
                .enumerate()
                .map(|(i, c)| {
                    (0..sigma.point_count())
                        .map(|k| PointId(k as u32))
                        .find(|&p| sigma.point(p).coords.as_ref() == Some(c))
                        .ok_or_else(|| err(&format!("/graph_vertices/{i}"), "no drawn point at these coordinates"))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(Loaded { sigma, graph_vertices })
}

/// Parses and loads in one go.
pub fn load_bytes(bytes: &[u8]) -> Result<Loaded> {
    load_drawing(&parse_drawing(bytes)?)
}

fn side_ref(sigma: &StringSet, h: HalfSeg) -> Option<SideRef> {
    let (sid, i) = *sigma.seg_owners().get(&h.seg)?;
    Some(SideRef {
        string: sigma.string(sid).label.clone(),
        seg: i,
        forward: h.end == End::From,
    })
}

/// Combinatorial document describing `Σ` (live points only, coordinates kept).
pub fn stringset_to_doc(sigma: &StringSet) -> DrawingDoc {
    let live = sigma.live_points();
    let points = live
        .iter()
        .map(|&p| CombPoint {
            id: sigma.point_label(p).to_string(),
            coords: sigma.point(p).coords.clone(),
        })
        .collect();
    let strings = sigma
        .strings()
        .map(|s| CombString {
            id: s.label.clone(),
            nodes: s.nodes.iter().map(|&p| sigma.point_label(p).to_string()).collect(),
        })
        .collect();
    let owners = sigma.seg_owners();
    let mut rotations = BTreeMap::new();
    for &p in &live {
        let rot: Vec<(String, usize)> = sigma
            .raw_rotation(p)
            .iter()
            .filter_map(|h| owners.get(&h.seg).map(|&(s, i)| (sigma.string(s).label.clone(), i)))
            .collect();
        if rot.len() >= 3 {
            rotations.insert(sigma.point_label(p).to_string(), rot);
        }
    }
    let mut outer = Vec::new();
    if let Ok(der) = sigma.derived() {
        let mut have = BTreeSet::new();
        for &h in sigma.outer_marks() {
            if let Some(d) = der.halfseg_dart(h) {
                if have.insert(der.map.component_of(der.map.origin(d))) {
                    outer.extend(side_ref(sigma, h));
                }
            }
        }
    }
    let enclosures = sigma
        .enclosures()
        .iter()
        .filter_map(|e| Some((side_ref(sigma, e.inner)?, side_ref(sigma, e.face)?)))
        .collect();
    DrawingDoc {
        payload: Payload::Combinatorial(Combinatorial {
            points,
            strings,
            rotations,
            outer,
            enclosures,
        }),
        graph_vertices: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: &str = r#"{"format":"pseudolinear-drawing","version":1,"mode":"geometric",
        "polylines":[{"id":"a","points":[[0,0],[4,4]]},{"id":"b","points":[[0,4],["4/1",0]]}]}"#;

    #[test]
    fn geometric_round_trip() {
        let d = parse_drawing(X.as_bytes()).unwrap();
        let bytes = serialize_drawing(&d);
        assert_eq!(parse_drawing(&bytes).unwrap(), d);
        assert_eq!(serialize_drawing(&parse_drawing(&bytes).unwrap()), bytes);
    }

    #[test]
    fn combinatorial_round_trip_preserves_map() {
        let l = load_bytes(X.as_bytes()).unwrap();
        let doc = stringset_to_doc(&l.sigma);
        let bytes = serialize_drawing(&doc);
        let back = load_bytes(&bytes).unwrap();
        assert_eq!(back.sigma.fingerprint(), l.sigma.fingerprint());
        assert_eq!(serialize_drawing(&stringset_to_doc(&back.sigma)), bytes);
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let bad = X.replace("\"version\":1", "\"version\":7");
        match parse_drawing(bad.as_bytes()).unwrap_err() {
            Error::SchemaError { pointer, .. } => assert_eq!(pointer, "/version"),
            e => panic!("{e:?}"),
        }
        let l = load_bytes(X.as_bytes()).unwrap();
        let mut v = doc_to_value(&stringset_to_doc(&l.sigma));
        v.as_object_mut().unwrap().remove("outer");
        match parse_drawing(&to_json_bytes(&v)).unwrap_err() {
            Error::SchemaError { message, .. } => assert!(message.contains("outer")),
            e => panic!("{e:?}"),
        }
    }
}
