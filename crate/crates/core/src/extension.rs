//! Extending an obstruction-free string set to a pseudoline arrangement.
//!
//! The state is grown by four kinds of steps, each tried on a copy and kept
//! only when the copy has no obstruction:
//!
//! * connect: a new string joins two components inside a common face;
//! * disentangle: an end lying on other edges is pushed a little into one of
//!   the faces at it, crossing every string that passes through it;
//! * face escape: a free end inside a bounded face is carried to a point of the
//!   face boundary (a vertex corner or the middle of an edge);
//! * exterior meeting: two disjoint strings with all ends on the unbounded face
//!   are continued to a common new point, hugging the boundary between them.
//!
//! When no step applies every string has two free ends on the unbounded face
//! and every two strings cross once.

use crate::error::{Error, Result};
use crate::ids::{Dart, End, HalfSeg, PointId, StringId, VertexId};
use crate::ingest::doc::doc_to_value;
use crate::ingest::stringset_to_doc;
use crate::obstruction::{find_obstruction_with, SearchOptions};
use crate::stringset::{StringSet, Violation};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Connect,
    Disentangle,
    FaceEscape,
    ExteriorMeeting,
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub kind: StepKind,
    /// Label of the string extended (the new string for connect steps).
    pub string: String,
    /// The point the step starts from.
    pub at: String,
    /// Candidate descriptions in the order tried.
    pub candidates: Vec<String>,
    /// Index of the accepted candidate.
    pub chosen: usize,
    pub pairs_before: usize,
    pub pairs_after: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExtensionTrace {
    pub steps: Vec<Step>,
    /// Safety cap on disentangle, face-escape and exterior-meeting steps.
    pub budget: usize,
    /// Indices of steps that did not increase the intersecting-pair count.
    pub non_increasing: Vec<usize>,
    /// Every accepted state, starting with the input (kept on request).
    #[serde(skip)]
    pub states: Vec<StringSet>,
}

impl ExtensionTrace {
    pub fn counted_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.kind != StepKind::Connect).count()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExtendOptions {
    pub search: SearchOptions,
    /// Keep a copy of every accepted state in the trace.
    pub keep_states: bool,
}

/// A set of pseudolines given by their crossing sequences.
#[derive(Clone, Debug)]
pub struct PseudolineArrangement {
    pub strings: StringSet,
    /// Per string (by label), the other strings crossed and where, in order.
    pub wiring: Vec<(String, Vec<(String, String)>)>,
    /// Per string, its two free ends.
    pub ray_ends: Vec<(String, [String; 2])>,
}

impl PseudolineArrangement {
    /// Reads the wiring off a string set (no checks; see [`verify_arrangement`]).
    pub fn from_stringset(sigma: &StringSet) -> PseudolineArrangement {
        let mut through: BTreeMap<PointId, Vec<StringId>> = BTreeMap::new();
        for s in sigma.strings() {
            for &p in &s.nodes {
                through.entry(p).or_default().push(s.id);
            }
        }
        let mut wiring = Vec::new();
        let mut ray_ends = Vec::new();
        for s in sigma.strings() {
            let mut seq = Vec::new();
            for &p in &s.nodes {
                for &t in &through[&p] {
                    if t != s.id {
                        seq.push((sigma.string(t).label.clone(), sigma.point_label(p).to_string()));
                    }
                }
            }
            wiring.push((s.label.clone(), seq));
            ray_ends.push((
                s.label.clone(),
                [
                    sigma.point_label(s.start()).to_string(),
                    sigma.point_label(s.end()).to_string(),
                ],
            ));
        }
        PseudolineArrangement {
            strings: sigma.clone(),
            wiring,
            ray_ends,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "format": "pseudolinear-arrangement",
            "version": 1,
            "strings": self.strings.strings().map(|s| json!({
                "id": s.label,
                "nodes": s.nodes.iter().map(|&p| self.strings.point_label(p)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "wiring": self.wiring.iter().map(|(s, seq)| json!({
                "string": s,
                "crossings": seq.iter().map(|(t, p)| json!({"with": t, "at": p})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "ray_ends": self.ray_ends.iter().map(|(s, e)| json!({"string": s, "ends": e})).collect::<Vec<_>>(),
            "drawing": doc_to_value(&stringset_to_doc(&self.strings)),
        })
    }
}

/// A sweep of an arrangement from left to right. Lines are numbered by their
/// position in `strings`; `start` lists them top to bottom at the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    pub strings: Vec<String>,
    pub start: Vec<usize>,
    /// Each event reverses a block of adjacent lines: (point label, first
    /// position, block length).
    pub events: Vec<(String, usize, usize)>,
}

impl PseudolineArrangement {
    /// Sweeps the arrangement. Fails when the crossing sequences cannot be swept,
    /// which never happens for a pseudoline arrangement.
    pub fn wiring_diagram(&self) -> Result<WiringDiagram> {
        let sigma = &self.strings;
        let ids: Vec<StringId> = sigma.strings().map(|s| s.id).collect();
        let n = ids.len();
        let index: BTreeMap<StringId, usize> = ids.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut through: BTreeMap<PointId, usize> = BTreeMap::new();
        for s in sigma.strings() {
            for &p in &s.nodes {
                *through.entry(p).or_default() += 1;
            }
        }
        let ends = outer_end_order(sigma)?;
        if ends.len() != 2 * n {
            return Err(Error::InternalInconsistency(
                "not every string has two free ends".into(),
            ));
        }
        let r = ends.iter().position(|e| index[&e.0] == 0 && e.1).unwrap_or(0);
        let left: Vec<(StringId, bool)> = (0..n).map(|i| ends[(r + i) % (2 * n)]).collect();
        // Crossing points of each line, read from its left end.
        let seqs: Vec<Vec<PointId>> = (0..n)
            .map(|i| {
                let s = sigma.string(ids[i]);
                let from_start = left.iter().any(|e| e.0 == ids[i] && e.1);
                let mut v: Vec<PointId> = s.nodes.iter().copied().filter(|p| through[p] > 1).collect();
                if !from_start {
                    v.reverse();
                }
                v
            })
            .collect();
        let mut order: Vec<usize> = left.iter().map(|e| index[&e.0]).collect();
        let start = order.clone();
        let mut next = vec![0usize; n];
        let mut events = Vec::new();
        let total: usize = seqs.iter().map(|v| v.len()).sum();
        let mut done = 0;
        while done < total {
            let mut found = None;
            let mut i = 0;
            while i < n && found.is_none() {
                let line = order[i];
                if let Some(&p) = seqs[line].get(next[line]) {
                    let k = through[&p];
                    if i + k <= n && order[i..i + k].iter().all(|&l| seqs[l].get(next[l]) == Some(&p)) {
                        found = Some((p, i, k));
                    }
                }
                i += 1;
            }
            let (p, i, k) =
                found.ok_or_else(|| Error::InternalInconsistency("crossing sequences cannot be swept".into()))?;
            for &l in &order[i..i + k] {
                next[l] += 1;
            }
            order[i..i + k].reverse();
            done += k;
            events.push((sigma.point_label(p).to_string(), i, k));
        }
        Ok(WiringDiagram {
            strings: ids.iter().map(|&s| sigma.string(s).label.clone()).collect(),
            start,
            events,
        })
    }
}

// ----- helpers ------------------------------------------------------------

/// The segment end of `s` at its start or end point.
fn end_halfseg(sigma: &StringSet, s: StringId, at_start: bool) -> HalfSeg {
    let st = sigma.string(s);
    if at_start {
        HalfSeg::new(st.segs[0], End::From)
    } else {
        HalfSeg::new(*st.segs.last().unwrap(), End::To)
    }
}

fn end_point(sigma: &StringSet, s: StringId, at_start: bool) -> PointId {
    let st = sigma.string(s);
    if at_start {
        st.start()
    } else {
        st.end()
    }
}

/// Map dart carrying the segment end `h`, leaving its point.
fn dart_at(sigma: &StringSet, h: HalfSeg) -> Result<Dart> {
    let der = sigma.derived()?;
    der.halfseg_dart(h)
        .ok_or_else(|| Error::InternalInconsistency(format!("segment {} is not live", h.seg)))
}

struct Trial {
    state: StringSet,
    desc: String,
}

/// Accepts the first obstruction-free candidate. Candidates are built lazily.
fn first_free(
    n: usize,
    mut build: impl FnMut(usize) -> Result<Trial>,
    opts: SearchOptions,
) -> Result<(usize, StringSet, Vec<String>)> {
    let mut tried = Vec::new();
    for i in 0..n {
        let t = build(i)?;
        tried.push(t.desc);
        if let Some(v) = t.state.validate_general_position().into_iter().next() {
            return Err(Error::InternalInconsistency(format!(
                "candidate breaks general position: {v}"
            )));
        }
        if find_obstruction_with(&t.state, opts)?.is_none() {
            return Ok((i, t.state, tried));
        }
    }
    Err(Error::InternalInconsistency(format!(
        "every candidate creates an obstruction ({} tried)",
        tried.len()
    )))
}

// ----- steps --------------------------------------------------------------

/// Joins two components by a new string. Returns `None` for a connected map.
pub fn connect_step(sigma: &StringSet) -> Result<Option<(StringSet, String, String)>> {
    let der = sigma.derived()?;
    let map = &der.map;
    if map.component_count() <= 1 {
        return Ok(None);
    }
    let outer_dart = |c: usize| map.face_walk(map.outer_face(c))[0];
    // A nested component is joined to the face around it; otherwise two
    // components sharing the unbounded region are joined.
    let (du, dv, drop_enclosure) = if let Some((i, en)) = sigma.enclosures().iter().enumerate().next() {
        let inner = dart_at(sigma, en.inner)?;
        (
            outer_dart(map.component_of(map.origin(inner))),
            dart_at(sigma, en.face)?,
            Some(i),
        )
    } else {
        (outer_dart(0), outer_dart(1), None)
    };
    let (u, v) = (der.point(map.origin(du)), der.point(map.origin(dv)));
    let mut next = sigma.clone();
    let sid = next.add_connector(u, der.dart_halfseg(du), v, der.dart_halfseg(dv))?;
    if let Some(i) = drop_enclosure {
        let en = sigma.enclosures()[i];
        let mut encl = sigma.enclosures().to_vec();
        encl.remove(i);
        next.set_enclosures(encl);
        // The nested component's unbounded face is now the enclosing face.
        let inner_comp = map.component_of(map.origin(dart_at(sigma, en.inner)?));
        let marks: Vec<HalfSeg> = sigma
            .outer_marks()
            .iter()
            .copied()
            .filter(|&h| der.halfseg_dart(h).map(|d| map.component_of(map.origin(d))) != Some(inner_comp))
            .collect();
        next.set_outer_marks(marks);
    }
    let label = next.string(sid).label.clone();
    Ok(Some((
        next,
        label,
        format!("{}-{}", sigma.point_label(u), sigma.point_label(v)),
    )))
}

/// Pushes the end of `s` past the edges at it. Requires the end to have degree ≥ 2.
pub fn disentangle_step(
    sigma: &StringSet,
    s: StringId,
    at_start: bool,
    opts: SearchOptions,
) -> Result<(StringSet, Step)> {
    let der = sigma.derived()?;
    let map = &der.map;
    let a = end_point(sigma, s, at_start);
    let va = der.vertex(a).expect("string ends are vertices");
    let e0 = dart_at(sigma, end_halfseg(sigma, s, at_start))?;
    let rot = map.rotation(va);
    if rot.len() < 2 {
        return Err(Error::InternalInconsistency("disentangling a free end".into()));
    }
    let k0 = map.rot_pos(e0);
    let ordered: Vec<Dart> = (0..rot.len()).map(|i| rot[(k0 + i) % rot.len()]).collect();
    // Twin pairs: the two segments of a string passing through `a`.
    let mut twin: BTreeSet<Dart> = BTreeSet::new();
    for t in sigma.strings() {
        if let Some(i) = t.nodes[1..t.nodes.len() - 1].iter().position(|&p| p == a) {
            for g in [t.segs[i], t.segs[i + 1]] {
                for &d in &ordered[1..] {
                    if der.dart_halfseg(d).seg == g {
                        twin.insert(d);
                    }
                }
            }
        }
    }
    let twins: Vec<usize> = (1..ordered.len()).filter(|&i| twin.contains(&ordered[i])).collect();
    // Sector starts: from f_t up to (not including) f'_1, or every dart.
    let starts: Vec<Dart> = if twins.is_empty() {
        ordered.clone()
    } else {
        let t = twins.len() / 2;
        (twins[t - 1]..twins[t]).map(|i| ordered[i]).collect()
    };
    let label = |d: Dart| {
        let h = der.dart_halfseg(d);
        let owners = sigma.seg_owners();
        owners
            .get(&h.seg)
            .map(|&(t, _)| sigma.string(t).label.clone())
            .unwrap_or_default()
    };
    let before = sigma.intersecting_pairs();
    let (chosen, state, candidates) = first_free(
        starts.len(),
        |i| {
            let mut next = sigma.clone();
            let q = next.add_fresh_point(None, vec![format!("{}~ext", sigma.string(s).label)]);
            next.extend_end(s, at_start, der.dart_halfseg(starts[i]), q, None)?;
            Ok(Trial {
                state: next,
                desc: format!("after {}", label(starts[i])),
            })
        },
        opts,
    )?;
    let after = state.intersecting_pairs();
    Ok((
        state,
        Step {
            kind: StepKind::Disentangle,
            string: sigma.string(s).label.clone(),
            at: sigma.point_label(a).to_string(),
            candidates,
            chosen,
            pairs_before: before,
            pairs_after: after,
        },
    ))
}

/// Carries the free end of `s`, inside a bounded face, to the face boundary.
pub fn face_escape_step(
    sigma: &StringSet,
    s: StringId,
    at_start: bool,
    opts: SearchOptions,
) -> Result<(StringSet, Step)> {
    let der = sigma.derived()?;
    let map = &der.map;
    let a = end_point(sigma, s, at_start);
    let d0 = dart_at(sigma, end_halfseg(sigma, s, at_start))?;
    if map.degree(map.origin(d0)) != 1 {
        return Err(Error::InternalInconsistency(
            "face escape from an end of degree above 1".into(),
        ));
    }
    let f = map.face_of(d0);
    if map.is_outer_face(f) {
        return Err(Error::InternalInconsistency(
            "face escape from the unbounded face".into(),
        ));
    }
    let walk = map.face_walk(f);
    let k = walk.iter().position(|&d| d == d0).expect("dart on its face");
    let w: Vec<Dart> = (0..walk.len()).map(|i| walk[(k + i) % walk.len()]).collect();
    let n = w.len();
    // Candidates m_1, x_1, m_2, ..., x_{n-1}, m_n: even slots are edge middles.
    let total = 2 * n - 1;
    let vlabel = |v: VertexId| sigma.point_label(der.point(v)).to_string();
    let before = sigma.intersecting_pairs();
    let (chosen, state, candidates) = first_free(
        total,
        |c| {
            let mut next = sigma.clone();
            let i = c / 2;
            let (target, anchor, desc) = if c % 2 == 0 {
                let e = w[i];
                let (m, ga, gb) = next.subdivide_edge(e.edge())?;
                let anchor = if e.is_forward() {
                    HalfSeg::new(gb, End::From)
                } else {
                    HalfSeg::new(ga, End::To)
                };
                (
                    m,
                    anchor,
                    format!("middle of {}-{}", vlabel(map.origin(e)), vlabel(map.head(e))),
                )
            } else {
                let x = map.origin(w[i + 1]);
                (
                    der.point(x),
                    der.dart_halfseg(w[i + 1]),
                    format!("corner at {}", vlabel(x)),
                )
            };
            let h = end_halfseg(&next, s, at_start);
            next.extend_end(s, at_start, h, target, Some(anchor))?;
            Ok(Trial { state: next, desc })
        },
        opts,
    )?;
    let after = state.intersecting_pairs();
    Ok((
        state,
        Step {
            kind: StepKind::FaceEscape,
            string: sigma.string(s).label.clone(),
            at: sigma.point_label(a).to_string(),
            candidates,
            chosen,
            pairs_before: before,
            pairs_after: after,
        },
    ))
}

/// Free ends in counterclockwise order around the drawing.
pub(crate) fn outer_end_order(sigma: &StringSet) -> Result<Vec<(StringId, bool)>> {
    let der = sigma.derived()?;
    let map = &der.map;
    let mut at: BTreeMap<PointId, (StringId, bool)> = BTreeMap::new();
    for s in sigma.strings() {
        at.insert(s.start(), (s.id, true));
        at.insert(s.end(), (s.id, false));
    }
    let walk = map.face_walk(map.outer_face(0));
    // The walk keeps the unbounded face on its left, so it runs clockwise around the drawing.
    let mut out: Vec<(StringId, bool)> = walk
        .iter()
        .filter(|&&d| map.degree(map.origin(d)) == 1)
        .filter_map(|&d| at.get(&der.point(map.origin(d))).copied())
        .collect();
    out.reverse();
    Ok(out)
}

/// Continues two disjoint strings to a common new point in the unbounded face.
pub fn exterior_meeting_step(
    sigma: &StringSet,
    s1: StringId,
    s2: StringId,
    opts: SearchOptions,
) -> Result<(StringSet, Step)> {
    let order: Vec<(StringId, bool)> = outer_end_order(sigma)?
        .into_iter()
        .filter(|(s, _)| *s == s1 || *s == s2)
        .collect();
    if order.len() != 4 {
        return Err(Error::InternalInconsistency(
            "strings without two free outer ends".into(),
        ));
    }
    let r = (0..4)
        .find(|&r| order[r].0 == s1 && order[(r + 1) % 4].0 == s1)
        .ok_or(Error::EndsAlternate)?;
    let [a1, b1, b2, a2] = [0, 1, 2, 3].map(|i| order[(r + i) % 4]);
    if b2.0 != s2 || a2.0 != s2 {
        return Err(Error::EndsAlternate);
    }
    let mut next = sigma.clone();
    let p = next.add_fresh_point(
        None,
        vec![format!("{}~{}", sigma.string(s1).label, sigma.string(s2).label)],
    );
    let h1 = end_halfseg(&next, s1, a1.1);
    let g1 = next.extend_end(s1, a1.1, h1, p, None)?;
    let at_p = HalfSeg::new(g1, if a1.1 { End::From } else { End::To });
    let h2 = end_halfseg(&next, s2, a2.1);
    next.extend_end(s2, a2.1, h2, p, Some(at_p))?;
    // The new face between the arc and the boundary from a1 to a2 is bounded; b1 stays outside.
    next.set_outer_marks(vec![end_halfseg(&next, s1, b1.1)]);
    let _ = b2;
    if let Some(v) = next.validate_general_position().into_iter().next() {
        return Err(Error::InternalInconsistency(format!(
            "meeting breaks general position: {v}"
        )));
    }
    if find_obstruction_with(&next, opts)?.is_some() {
        return Err(Error::InternalInconsistency(
            "exterior meeting created an obstruction".into(),
        ));
    }
    Ok((
        next.clone(),
        Step {
            kind: StepKind::ExteriorMeeting,
            string: sigma.string(s1).label.clone(),
            at: sigma.point_label(end_point(sigma, s1, a1.1)).to_string(),
            candidates: vec![format!(
                "{} and {} meet at {}",
                sigma.string(s1).label,
                sigma.string(s2).label,
                next.point_label(p)
            )],
            chosen: 0,
            pairs_before: sigma.intersecting_pairs(),
            pairs_after: next.intersecting_pairs(),
        },
    ))
}

// ----- driver -------------------------------------------------------------

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// First disjoint pair of strings, by id.
fn disjoint_pair(sigma: &StringSet) -> Option<(StringId, StringId)> {
    let ss: Vec<(StringId, BTreeSet<PointId>)> = sigma
        .strings()
        .map(|s| (s.id, s.nodes.iter().copied().collect()))
        .collect();
    for i in 0..ss.len() {
        for j in i + 1..ss.len() {
            if ss[i].1.is_disjoint(&ss[j].1) {
                return Some((ss[i].0, ss[j].0));
            }
        }
    }
    None
}

enum Next {
    Disentangle(StringId, bool),
    FaceEscape(StringId, bool),
    Meet(StringId, StringId),
    Done,
}

fn next_action(sigma: &StringSet) -> Result<Next> {
    let der = sigma.derived()?;
    let map = &der.map;
    let ends: Vec<(StringId, bool, VertexId)> = sigma
        .strings()
        .flat_map(|s| [(s.id, true, s.start()), (s.id, false, s.end())])
        .map(|(s, b, p)| (s, b, der.vertex(p).expect("ends are vertices")))
        .collect();
    if let Some(&(s, b, _)) = ends.iter().find(|e| map.degree(e.2) >= 2) {
        return Ok(Next::Disentangle(s, b));
    }
    if let Some(&(s, b, _)) = ends.iter().find(|e| !map.is_outer_vertex(e.2)) {
        return Ok(Next::FaceEscape(s, b));
    }
    Ok(match disjoint_pair(sigma) {
        Some((a, b)) => Next::Meet(a, b),
        None => Next::Done,
    })
}

/// Extends `Σ` to a pseudoline arrangement. Fails with `ObstructionPresent` when
/// `Σ` has an obstruction.
pub fn extend_to_arrangement(
    sigma: &StringSet,
    opts: ExtendOptions,
) -> Result<(PseudolineArrangement, ExtensionTrace)> {
    if let Some(v) = sigma.validate_general_position().into_iter().next() {
        return Err(violation_error(v));
    }
    if find_obstruction_with(sigma, opts.search)?.is_some() {
        return Err(Error::ObstructionPresent);
    }
    let mut trace = ExtensionTrace::default();
    let mut cur = sigma.clone();
    if opts.keep_states {
        trace.states.push(cur.clone());
    }
    let record = |trace: &mut ExtensionTrace, cur: &StringSet, step: Step| {
        if step.pairs_after <= step.pairs_before {
            trace.non_increasing.push(trace.steps.len());
        }
        trace.steps.push(step);
        if opts.keep_states {
            trace.states.push(cur.clone());
        }
    };
    while let Some((next, label, at)) = connect_step(&cur)? {
        let step = Step {
            kind: StepKind::Connect,
            string: label,
            at: at.clone(),
            candidates: vec![at],
            chosen: 0,
            pairs_before: cur.intersecting_pairs(),
            pairs_after: next.intersecting_pairs(),
        };
        cur = next;
        record(&mut trace, &cur, step);
    }
    let nodes: usize = cur.strings().map(|s| s.nodes.len()).sum();
    trace.budget = binom2(cur.string_count()) + cur.string_count() + nodes;
    loop {
        let (next, step) = match next_action(&cur)? {
            Next::Done => break,
            Next::Disentangle(s, b) => disentangle_step(&cur, s, b, opts.search)?,
            Next::FaceEscape(s, b) => face_escape_step(&cur, s, b, opts.search)?,
            Next::Meet(s1, s2) => exterior_meeting_step(&cur, s1, s2, opts.search)?,
        };
        cur = next;
        record(&mut trace, &cur, step);
        if trace.counted_steps() > trace.budget {
            return Err(Error::StepBudgetExceeded(trace.budget));
        }
    }
    // Connector strings were only needed to join components; any subset of a
    // pseudoline arrangement is one.
    let keep: BTreeSet<StringId> = sigma.strings().map(|s| s.id).collect();
    if keep.len() != cur.string_count() {
        let first = cur.strings().find(|s| keep.contains(&s.id)).expect("a kept string");
        let mark = HalfSeg::new(first.segs[0], End::From);
        cur = cur.retain_strings(&keep, vec![mark]);
    }
    Ok((PseudolineArrangement::from_stringset(&cur), trace))
}

fn violation_error(v: Violation) -> Error {
    match v {
        Violation::Tangency { .. } => Error::TangencyViolation(v.to_string()),
        Violation::SelfCross { .. } => Error::SelfCrossViolation(v.to_string()),
        Violation::Overlap { .. } => Error::OverlapViolation(v.to_string()),
        Violation::Structure(m) => Error::InternalInconsistency(m),
    }
}

/// Problems that keep `arr` from being a pseudoline arrangement extending
/// `original` (when given). An empty list means it passes.
pub fn verify_arrangement(arr: &PseudolineArrangement, original: Option<&StringSet>) -> Vec<String> {
    let sigma = &arr.strings;
    let mut out = Vec::new();
    for v in sigma.validate_general_position() {
        match v {
            Violation::Tangency { point, strings } => out.push(format!(
                "non-transversal intersection of {} and {} at {point}",
                strings.0, strings.1
            )),
            other => out.push(other.to_string()),
        }
    }
    let strings: Vec<_> = sigma.strings().collect();
    let sets: Vec<BTreeSet<PointId>> = strings.iter().map(|s| s.nodes.iter().copied().collect()).collect();
    for i in 0..strings.len() {
        if sets[i].len() != strings[i].nodes.len() {
            out.push(format!("string {} meets itself", strings[i].label));
        }
        for j in i + 1..strings.len() {
            let shared: Vec<PointId> = sets[i].intersection(&sets[j]).copied().collect();
            let (a, b) = (&strings[i].label, &strings[j].label);
            match shared.len() {
                0 => out.push(format!("pair {a}, {b} does not cross")),
                1 => {
                    let p = shared[0];
                    if strings[i].is_end(p) || strings[j].is_end(p) {
                        out.push(format!("pair {a}, {b} meets at an end {}", sigma.point_label(p)));
                    }
                }
                _ => out.push(format!("pair {a}, {b} crosses twice")),
            }
        }
    }
    match sigma.derived() {
        Err(e) => out.push(format!("no plane map: {e}")),
        Ok(der) => {
            for s in &strings {
                for p in [s.start(), s.end()] {
                    let v = der.vertex(p).expect("ends are vertices");
                    if der.map.degree(v) != 1 {
                        out.push(format!("end {} of {} is not free", sigma.point_label(p), s.label));
                    } else if !der.map.is_outer_vertex(v) {
                        out.push(format!(
                            "end {} of {} is not on the unbounded face",
                            sigma.point_label(p),
                            s.label
                        ));
                    }
                }
            }
        }
    }
    if let Some(orig) = original {
        let known = orig.point_count();
        for s in orig.strings() {
            let ext = match sigma.try_string(s.id) {
                Some(t) => t,
                None => {
                    out.push(format!("string {} is missing", s.label));
                    continue;
                }
            };
            let kept: Vec<PointId> = ext.nodes.iter().copied().filter(|p| p.index() < known).collect();
            if !kept.windows(s.nodes.len()).any(|w| w == s.nodes.as_slice()) {
                out.push(format!("string {} is not part of its extension", s.label));
            }
        }
    }
    out
}
