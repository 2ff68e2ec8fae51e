//! Sets of strings over a shared point universe, and the plane map derived from them.
//!
//! A string is a node sequence; consecutive nodes are joined by a segment. Every
//! point keeps a counterclockwise list of the segment ends incident with it
//! (including segments that no longer belong to any string, which are ignored).
//! Map vertices are string ends and points shared by two or more strings; map
//! edges are maximal runs of segments between vertices.

use crate::error::{Error, Result};
use crate::geom::Pt;
use crate::ids::{Dart, EdgeId, End, HalfSeg, PointId, SegId, StringId, VertexId};
use crate::planegraph::{CycleRef, PlaneMap};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRec {
    pub label: String,
    pub coords: Option<Pt>,
    /// Input identifiers this point stems from, e.g. `s0[1]` or `s0×s1`.
    pub provenance: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub from: PointId,
    pub to: PointId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringRec {
    pub id: StringId,
    pub label: String,
    pub nodes: Vec<PointId>,
    /// `segs[i]` joins `nodes[i]` to `nodes[i + 1]`.
    pub segs: Vec<SegId>,
    /// Input string this one was cut from.
    pub source: StringId,
}

impl StringRec {
    pub fn start(&self) -> PointId {
        self.nodes[0]
    }

    pub fn end(&self) -> PointId {
        *self.nodes.last().unwrap()
    }

    pub fn is_end(&self, p: PointId) -> bool {
        self.start() == p || self.end() == p
    }

    /// Whether each end coincides with another node of the same string.
    pub fn closed_end_touch(&self) -> [bool; 2] {
        let n = self.nodes.len();
        let s = self.nodes[0];
        let e = self.nodes[n - 1];
        [self.nodes[1..].contains(&s), self.nodes[..n - 1].contains(&e)]
    }
}

/// A component nested inside a bounded face of another component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enclosure {
    /// Any segment end of the nested component.
    pub inner: HalfSeg,
    /// A segment end whose left side is the enclosing face.
    pub face: HalfSeg,
}

/// One map edge: a run of segments of one string between two vertices.
#[derive(Clone, Debug)]
pub struct MapEdge {
    pub string: StringId,
    /// Index in the string of the first segment.
    pub first: usize,
    pub segs: Vec<SegId>,
    /// Points along the edge in forward direction (`segs.len() + 1` entries).
    pub points: Vec<PointId>,
}

/// The plane map of a string set with the bookkeeping linking both.
#[derive(Clone, Debug)]
pub struct Derived {
    pub map: PlaneMap,
    pub vertex_point: Vec<PointId>,
    pub point_vertex: BTreeMap<PointId, VertexId>,
    pub edges: Vec<MapEdge>,
    /// Map edge and position of every live segment.
    pub seg_edge: BTreeMap<SegId, (EdgeId, usize)>,
}

impl Derived {
    pub fn point(&self, v: VertexId) -> PointId {
        self.vertex_point[v.index()]
    }

    pub fn vertex(&self, p: PointId) -> Option<VertexId> {
        self.point_vertex.get(&p).copied()
    }

    pub fn dart_string(&self, d: Dart) -> StringId {
        self.edges[d.edge().index()].string
    }

    /// Dart whose left side is the left side of `h`.
    pub fn halfseg_dart(&self, h: HalfSeg) -> Option<Dart> {
        let &(e, _) = self.seg_edge.get(&h.seg)?;
        Some(match h.end {
            End::From => Dart::forward(e),
            End::To => Dart::backward(e),
        })
    }

    /// The segment end at the origin of `d`.
    pub fn dart_halfseg(&self, d: Dart) -> HalfSeg {
        let me = &self.edges[d.edge().index()];
        if d.is_forward() {
            HalfSeg::new(me.segs[0], End::From)
        } else {
            HalfSeg::new(*me.segs.last().unwrap(), End::To)
        }
    }

    /// Points visited by `d`, from its origin to its head.
    pub fn dart_points(&self, d: Dart) -> Vec<PointId> {
        let me = &self.edges[d.edge().index()];
        if d.is_forward() {
            me.points.clone()
        } else {
            me.points.iter().rev().copied().collect()
        }
    }

    /// The closed curve of a cycle as a point sequence (first point not repeated).
    pub fn cycle_curve(&self, c: &CycleRef) -> Vec<PointId> {
        let mut out = Vec::new();
        for &d in &c.darts {
            let pts = self.dart_points(d);
            out.extend_from_slice(&pts[..pts.len() - 1]);
        }
        out
    }

    pub fn cycle_segs(&self, c: &CycleRef) -> BTreeSet<SegId> {
        c.edges
            .iter()
            .flat_map(|e| self.edges[e.index()].segs.iter().copied())
            .collect()
    }

    /// The cycle made of the map edges covering `segs`.
    pub fn cycle_from_segs(&self, segs: &BTreeSet<SegId>) -> Result<CycleRef> {
        let mut edges = BTreeSet::new();
        for s in segs {
            let &(e, _) = self
                .seg_edge
                .get(s)
                .ok_or_else(|| Error::NotACycle(format!("segment {s} is not live")))?;
            edges.insert(e);
        }
        for e in &edges {
            if !self.edges[e.index()].segs.iter().all(|s| segs.contains(s)) {
                return Err(Error::NotACycle(format!("edge {e} only partly covered")));
            }
        }
        let edges: Vec<EdgeId> = edges.into_iter().collect();
        self.map.cycle_from_edges(&edges)
    }
}

/// A problem found by validation. Violations are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Structure(String),
    SelfCross { string: String, point: String },
    Tangency { point: String, strings: (String, String) },
    Overlap { strings: (String, String) },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Structure(m) => write!(f, "structure: {m}"),
            Violation::SelfCross { string, point } => write!(f, "string {string} self-crosses at {point}"),
            Violation::Tangency { point, strings } => {
                write!(
                    f,
                    "strings {} and {} touch without crossing at {point}",
                    strings.0, strings.1
                )
            }
            Violation::Overlap { strings } => write!(f, "strings {} and {} overlap", strings.0, strings.1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StringSet {
    points: Arc<Vec<PointRec>>,
    segs: Vec<Segment>,
    rot: Vec<Vec<HalfSeg>>,
    strings: Vec<Option<StringRec>>,
    outer_marks: Vec<HalfSeg>,
    enclosures: Vec<Enclosure>,
    cache: OnceLock<Arc<Derived>>,
}

impl Default for StringSet {
    fn default() -> Self {
        Self::new()
    }
}

impl StringSet {
    pub fn new() -> Self {
        StringSet {
            points: Arc::new(Vec::new()),
            segs: Vec::new(),
            rot: Vec::new(),
            strings: Vec::new(),
            outer_marks: Vec::new(),
            enclosures: Vec::new(),
            cache: OnceLock::new(),
        }
    }

    fn touch(&mut self) {
        self.cache = OnceLock::new();
    }

    // ----- construction -------------------------------------------------

    pub fn add_point(&mut self, label: impl Into<String>, coords: Option<Pt>, provenance: Vec<String>) -> PointId {
        let id = PointId(self.points.len() as u32);
        Arc::make_mut(&mut self.points).push(PointRec {
            label: label.into(),
            coords,
            provenance,
        });
        self.rot.push(Vec::new());
        self.touch();
        id
    }

    /// Adds a string over existing points. Segment ends are appended to the
    /// rotations; callers fix rotation order with [`StringSet::set_rotation`].
    pub fn add_string(&mut self, label: impl Into<String>, nodes: Vec<PointId>) -> StringId {
        let id = StringId(self.strings.len() as u32);
        let mut segs = Vec::with_capacity(nodes.len().saturating_sub(1));
        for w in nodes.windows(2) {
            let s = self.new_seg(w[0], w[1]);
            self.rot[w[0].index()].push(HalfSeg::new(s, End::From));
            self.rot[w[1].index()].push(HalfSeg::new(s, End::To));
            segs.push(s);
        }
        self.strings.push(Some(StringRec {
            id,
            label: label.into(),
            nodes,
            segs,
            source: id,
        }));
        self.touch();
        id
    }

    fn new_seg(&mut self, from: PointId, to: PointId) -> SegId {
        let s = SegId(self.segs.len() as u32);
        self.segs.push(Segment { from, to });
        s
    }

    /// Replaces the counterclockwise rotation at `p`.
    pub fn set_rotation(&mut self, p: PointId, order: Vec<HalfSeg>) {
        self.rot[p.index()] = order;
        self.touch();
    }

    pub fn set_outer_marks(&mut self, marks: Vec<HalfSeg>) {
        self.outer_marks = marks;
        self.touch();
    }

    pub fn set_enclosures(&mut self, enc: Vec<Enclosure>) {
        self.enclosures = enc;
        self.touch();
    }

    // ----- accessors ----------------------------------------------------

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, p: PointId) -> &PointRec {
        &self.points[p.index()]
    }

    pub fn points(&self) -> &[PointRec] {
        &self.points
    }

    pub fn point_label(&self, p: PointId) -> &str {
        &self.points[p.index()].label
    }

    pub fn find_point(&self, label: &str) -> Option<PointId> {
        self.points
            .iter()
            .position(|p| p.label == label)
            .map(|i| PointId(i as u32))
    }

    pub fn segment(&self, s: SegId) -> Segment {
        self.segs[s.index()]
    }

    pub fn segment_count(&self) -> usize {
        self.segs.len()
    }

    pub fn halfseg_point(&self, h: HalfSeg) -> PointId {
        let s = self.segs[h.seg.index()];
        match h.end {
            End::From => s.from,
            End::To => s.to,
        }
    }

    /// Full rotation at `p`, including dead segment ends.
    pub fn raw_rotation(&self, p: PointId) -> &[HalfSeg] {
        &self.rot[p.index()]
    }

    pub fn strings(&self) -> impl Iterator<Item = &StringRec> {
        self.strings.iter().flatten()
    }

    pub fn string_count(&self) -> usize {
        self.strings().count()
    }

    pub fn string(&self, id: StringId) -> &StringRec {
        self.strings[id.index()].as_ref().expect("live string")
    }

    pub fn try_string(&self, id: StringId) -> Option<&StringRec> {
        self.strings.get(id.index()).and_then(|s| s.as_ref())
    }

    pub fn string_label(&self, id: StringId) -> &str {
        self.strings[id.index()]
            .as_ref()
            .map(|s| s.label.as_str())
            .unwrap_or("?")
    }

    pub fn find_string(&self, label: &str) -> Option<StringId> {
        self.strings().find(|s| s.label == label).map(|s| s.id)
    }

    pub fn outer_marks(&self) -> &[HalfSeg] {
        &self.outer_marks
    }

    pub fn enclosures(&self) -> &[Enclosure] {
        &self.enclosures
    }

    /// Owner string and index of every live segment.
    pub fn seg_owners(&self) -> BTreeMap<SegId, (StringId, usize)> {
        let mut m = BTreeMap::new();
        for s in self.strings() {
            for (i, &g) in s.segs.iter().enumerate() {
                m.insert(g, (s.id, i));
            }
        }
        m
    }

    pub fn is_live_seg(&self, s: SegId) -> bool {
        self.derived_opt()
            .map(|d| d.seg_edge.contains_key(&s))
            .unwrap_or_else(|| self.strings().any(|st| st.segs.contains(&s)))
    }

    /// Points lying on at least one string.
    pub fn live_points(&self) -> BTreeSet<PointId> {
        self.strings().flat_map(|s| s.nodes.iter().copied()).collect()
    }

    /// Rotation at `p` restricted to live segments.
    pub fn live_rotation(&self, p: PointId) -> Vec<HalfSeg> {
        let owners = self.seg_owners();
        self.rot[p.index()]
            .iter()
            .copied()
            .filter(|h| owners.contains_key(&h.seg))
            .collect()
    }

    /// Strings sharing at least one point, as unordered pairs.
    pub fn intersecting_pairs(&self) -> usize {
        let sets: Vec<BTreeSet<PointId>> = self.strings().map(|s| s.nodes.iter().copied().collect()).collect();
        let mut n = 0;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if !sets[i].is_disjoint(&sets[j]) {
                    n += 1;
                }
            }
        }
        n
    }

    // ----- derived map --------------------------------------------------

    fn derived_opt(&self) -> Option<&Arc<Derived>> {
        self.cache.get()
    }

    /// The plane map `G(Σ)`, built on first use and cached until the next mutation.
    pub fn derived(&self) -> Result<Arc<Derived>> {
        if let Some(d) = self.cache.get() {
            return Ok(d.clone());
        }
        let d = Arc::new(self.build_derived(true)?);
        let _ = self.cache.set(d.clone());
        Ok(d)
    }

    /// Builds the map without resolving the unbounded faces (every component gets
    /// an arbitrary one). Used by ingestion before outer faces are known.
    pub fn derive_topology(&self) -> Result<Derived> {
        self.build_derived(false)
    }

    pub fn map(&self) -> Result<Arc<Derived>> {
        self.derived()
    }

    fn vertex_points(&self) -> BTreeSet<PointId> {
        let mut count: BTreeMap<PointId, BTreeSet<StringId>> = BTreeMap::new();
        let mut vs = BTreeSet::new();
        for s in self.strings() {
            vs.insert(s.start());
            vs.insert(s.end());
            for &p in &s.nodes {
                count.entry(p).or_default().insert(s.id);
            }
        }
        for (p, ss) in count {
            if ss.len() >= 2 {
                vs.insert(p);
            }
        }
        vs
    }

    fn build_derived(&self, use_marks: bool) -> Result<Derived> {
        let vset = self.vertex_points();
        let vertex_point: Vec<PointId> = vset.iter().copied().collect();
        let point_vertex: BTreeMap<PointId, VertexId> = vertex_point
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, VertexId(i as u32)))
            .collect();
        let mut edges = Vec::new();
        let mut seg_edge = BTreeMap::new();
        let mut ends = Vec::new();
        for s in self.strings() {
            let mut i = 0;
            while i + 1 < s.nodes.len() {
                let mut j = i + 1;
                while !vset.contains(&s.nodes[j]) {
                    j += 1;
                }
                let e = EdgeId(edges.len() as u32);
                for (k, &g) in s.segs[i..j].iter().enumerate() {
                    seg_edge.insert(g, (e, k));
                }
                ends.push((point_vertex[&s.nodes[i]], point_vertex[&s.nodes[j]]));
                edges.push(MapEdge {
                    string: s.id,
                    first: i,
                    segs: s.segs[i..j].to_vec(),
                    points: s.nodes[i..=j].to_vec(),
                });
                i = j;
            }
        }
        let mut rotation = Vec::with_capacity(vertex_point.len());
        for &p in &vertex_point {
            let mut list = Vec::new();
            for h in &self.rot[p.index()] {
                if let Some(&(e, k)) = seg_edge.get(&h.seg) {
                    let me: &MapEdge = &edges[e.index()];
                    let d = match h.end {
                        End::From if k == 0 => Dart::forward(e),
                        End::To if k + 1 == me.segs.len() => Dart::backward(e),
                        _ => {
                            return Err(Error::DanglingDart(format!(
                                "rotation at {} lists an interior segment end",
                                self.point_label(p)
                            )))
                        }
                    };
                    if self.halfseg_point(*h) != p {
                        return Err(Error::DanglingDart(format!(
                            "rotation at {} lists a foreign segment",
                            self.point_label(p)
                        )));
                    }
                    list.push(d);
                }
            }
            rotation.push(list);
        }
        let hints: Vec<Dart> = if use_marks {
            let tmp = Derived {
                map: PlaneMap::build(0, &[], vec![], &[])?,
                vertex_point: vec![],
                point_vertex: BTreeMap::new(),
                edges: vec![],
                seg_edge: seg_edge.clone(),
            };
            self.outer_marks.iter().filter_map(|&h| tmp.halfseg_dart(h)).collect()
        } else {
            (0..ends.len() as u32 * 2).map(Dart).collect()
        };
        let map = PlaneMap::build(vertex_point.len(), &ends, rotation, &hints).map_err(|e| match e {
            Error::MissingOuterFace(v) => {
                let vi: usize = v.trim_start_matches('v').parse().unwrap_or(0);
                Error::MissingOuterFace(
                    vertex_point
                        .get(vi)
                        .map(|p| self.point_label(*p).to_string())
                        .unwrap_or(v),
                )
            }
            other => other,
        })?;
        Ok(Derived {
            map,
            vertex_point,
            point_vertex,
            edges,
            seg_edge,
        })
    }

    // ----- validation ---------------------------------------------------

    /// Checks structure and general position using the rotation system.
    pub fn validate_general_position(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for s in self.strings() {
            if s.nodes.len() < 2 {
                out.push(Violation::Structure(format!(
                    "string {} has fewer than two nodes",
                    s.label
                )));
                continue;
            }
            for w in s.nodes.windows(2) {
                if w[0] == w[1] {
                    out.push(Violation::Structure(format!(
                        "string {} repeats a node consecutively",
                        s.label
                    )));
                }
            }
            let n = s.nodes.len();
            let mut seen = BTreeSet::new();
            for &p in &s.nodes[1..n - 1] {
                if !seen.insert(p) {
                    out.push(Violation::SelfCross {
                        string: s.label.clone(),
                        point: self.point_label(p).to_string(),
                    });
                }
            }
        }
        // Rotation lists must hold exactly the live segment ends at each point.
        let owners = self.seg_owners();
        let mut expected: BTreeMap<PointId, BTreeSet<HalfSeg>> = BTreeMap::new();
        for s in self.strings() {
            for &g in &s.segs {
                let sg = self.segs[g.index()];
                expected.entry(sg.from).or_default().insert(HalfSeg::new(g, End::From));
                expected.entry(sg.to).or_default().insert(HalfSeg::new(g, End::To));
            }
        }
        for (p, exp) in &expected {
            let have: BTreeSet<HalfSeg> = self.rot[p.index()]
                .iter()
                .copied()
                .filter(|h| owners.contains_key(&h.seg))
                .collect();
            let live_len = self.rot[p.index()]
                .iter()
                .filter(|h| owners.contains_key(&h.seg))
                .count();
            if &have != exp || live_len != exp.len() {
                out.push(Violation::Structure(format!(
                    "rotation at {} is inconsistent",
                    self.point_label(*p)
                )));
            }
        }
        // Tangency: two strings through a common point in both interiors must alternate.
        for (p, _) in expected {
            let rot: Vec<StringId> = self.rot[p.index()]
                .iter()
                .filter_map(|h| owners.get(&h.seg).map(|o| o.0))
                .collect();
            let through: Vec<StringId> = {
                let mut v: Vec<StringId> = rot.iter().copied().filter(|&s| !self.string(s).is_end(p)).collect();
                v.sort();
                v.dedup();
                v
            };
            for i in 0..through.len() {
                for j in i + 1..through.len() {
                    let (a, b) = (through[i], through[j]);
                    let seq: Vec<StringId> = rot.iter().copied().filter(|&s| s == a || s == b).collect();
                    if seq.len() == 4 && !(seq[0] != seq[1] && seq[1] != seq[2] && seq[2] != seq[3]) {
                        out.push(Violation::Tangency {
                            point: self.point_label(p).to_string(),
                            strings: (self.string(a).label.clone(), self.string(b).label.clone()),
                        });
                    }
                }
            }
        }
        out
    }

    // ----- mutation -----------------------------------------------------

    /// `Σ − x`: deletes `x` together with the map edges at `x`, splitting the
    /// strings through it and dropping single-point pieces. Point identities are
    /// kept, so curves of cycles avoiding `x` are unchanged.
    pub fn remove_vertex(&self, x: PointId) -> Result<StringSet> {
        let der = self.derived()?;
        let map = &der.map;
        let vx = der
            .vertex(x)
            .ok_or_else(|| Error::UnknownPoint(self.point_label_or(x)))?;
        if !map.is_outer_vertex(vx) {
            return Err(Error::VertexNotOnOuterFace(self.point_label(x).to_string()));
        }
        let comp = map.component_of(vx);
        let mut merged = BTreeSet::from([map.outer_face(comp)]);
        for &d in map.rotation(vx) {
            merged.insert(map.face_of(d));
        }
        let incident = |e: EdgeId| {
            let (a, b) = map.edge_endpoints(e);
            a == vx || b == vx
        };
        let mut marks: Vec<HalfSeg> = self.outer_marks.clone();
        for &f in &merged {
            for &d in map.face_walk(f) {
                if !incident(d.edge()) {
                    marks.push(der.dart_halfseg(d));
                }
            }
        }
        let mut next = self.clone();
        next.touch();
        // Enclosing faces merged into the unbounded region move one level up.
        let comp_enclosure = self
            .enclosures
            .iter()
            .find(|en| der.halfseg_dart(en.inner).map(|d| map.component_of(map.origin(d))) == Some(comp))
            .map(|en| en.face);
        let mut enclosures = Vec::new();
        for en in &self.enclosures {
            let fd = match der.halfseg_dart(en.face) {
                Some(d) => d,
                None => continue,
            };
            if merged.contains(&map.face_of(fd)) || incident(fd.edge()) {
                if let Some(up) = comp_enclosure {
                    enclosures.push(Enclosure {
                        inner: en.inner,
                        face: up,
                    });
                }
            } else {
                enclosures.push(*en);
            }
        }
        // Split strings. Untouched strings keep their ids; pieces get fresh ones.
        let mut strings: Vec<Option<StringRec>> = vec![None; self.strings.len()];
        let mut fresh = Vec::new();
        for s in self.strings() {
            let mut edges_of: Vec<(EdgeId, &MapEdge)> = der
                .edges
                .iter()
                .enumerate()
                .filter(|(_, m)| m.string == s.id)
                .map(|(i, m)| (EdgeId(i as u32), m))
                .collect();
            edges_of.sort_by_key(|(_, m)| m.first);
            if !edges_of.iter().any(|(e, _)| incident(*e)) {
                strings[s.id.index()] = Some(s.clone());
                continue;
            }
            let mut pieces: Vec<(usize, usize)> = Vec::new();
            let mut cur: Option<(usize, usize)> = None;
            for (e, m) in edges_of {
                if incident(e) {
                    if let Some(c) = cur.take() {
                        pieces.push(c);
                    }
                } else {
                    let end = m.first + m.segs.len();
                    cur = Some((cur.map(|c| c.0).unwrap_or(m.first), end));
                }
            }
            if let Some(c) = cur {
                pieces.push(c);
            }
            for (k, (a, b)) in pieces.into_iter().enumerate() {
                fresh.push(StringRec {
                    id: StringId(0),
                    label: format!("{}.{}", s.label, k),
                    nodes: s.nodes[a..=b].to_vec(),
                    segs: s.segs[a..b].to_vec(),
                    source: s.source,
                });
            }
        }
        for mut s in fresh {
            s.id = StringId(strings.len() as u32);
            strings.push(Some(s));
        }
        next.strings = strings;
        next.enclosures = enclosures;
        let live: BTreeSet<SegId> = next.strings().flat_map(|s| s.segs.iter().copied()).collect();
        marks.retain(|h| live.contains(&h.seg));
        let mut seen = BTreeSet::new();
        marks.retain(|h| seen.insert(*h));
        next.outer_marks = marks;
        next.compact_marks()?;
        Ok(next)
    }

    /// Keeps one outer mark per component.
    fn compact_marks(&mut self) -> Result<()> {
        let der = self.derived()?;
        let mut have = BTreeSet::new();
        let mut kept = Vec::new();
        for &h in &self.outer_marks {
            if let Some(d) = der.halfseg_dart(h) {
                let c = der.map.component_of(der.map.origin(d));
                if have.insert(c) {
                    kept.push(h);
                }
            }
        }
        // The derived map does not depend on redundant marks, so the cache stays valid.
        self.outer_marks = kept;
        Ok(())
    }

    fn point_label_or(&self, p: PointId) -> String {
        self.points
            .get(p.index())
            .map(|r| r.label.clone())
            .unwrap_or_else(|| p.to_string())
    }

    /// The string set made of the strings of one map component.
    pub fn restrict_to_component(&self, comp: usize) -> Result<StringSet> {
        let der = self.derived()?;
        let keep: BTreeSet<StringId> = der
            .edges
            .iter()
            .enumerate()
            .filter(|(e, _)| der.map.component_of(der.map.origin(Dart::forward(EdgeId(*e as u32)))) == comp)
            .map(|(_, m)| m.string)
            .collect();
        let mut next = self.clone();
        for slot in next.strings.iter_mut() {
            if let Some(s) = slot {
                if !keep.contains(&s.id) {
                    *slot = None;
                }
            }
        }
        let live: BTreeSet<SegId> = next.strings().flat_map(|s| s.segs.iter().copied()).collect();
        next.outer_marks.retain(|h| live.contains(&h.seg));
        next.enclosures.clear();
        next.touch();
        Ok(next)
    }

    /// Splits into one string set per connected component.
    pub fn components(&self) -> Result<Vec<StringSet>> {
        let der = self.derived()?;
        (0..der.map.component_count())
            .map(|c| self.restrict_to_component(c))
            .collect()
    }

    /// Keeps only the given strings (others are dropped); outer marks are replaced.
    pub fn retain_strings(&self, keep: &BTreeSet<StringId>, marks: Vec<HalfSeg>) -> StringSet {
        let mut next = self.clone();
        for slot in next.strings.iter_mut() {
            if let Some(s) = slot {
                if !keep.contains(&s.id) {
                    *slot = None;
                }
            }
        }
        next.outer_marks = marks;
        next.enclosures.clear();
        next.touch();
        next
    }

    /// Replaces a string by the sub-walk `nodes[a..=b]`.
    pub fn truncate_string(&mut self, id: StringId, a: usize, b: usize) {
        let s = self.strings[id.index()].as_mut().expect("live string");
        s.nodes = s.nodes[a..=b].to_vec();
        s.segs = s.segs[a..b].to_vec();
        self.touch();
    }

    /// Inserts `new` right after `anchor` (counterclockwise) in the rotation at `p`.
    pub fn insert_after(&mut self, p: PointId, anchor: HalfSeg, new: HalfSeg) -> Result<()> {
        let rot = &mut self.rot[p.index()];
        let i = rot
            .iter()
            .position(|&h| h == anchor)
            .ok_or_else(|| Error::DanglingDart(format!("{anchor:?} not at {}", p)))?;
        rot.insert(i + 1, new);
        self.touch();
        Ok(())
    }

    fn fresh_label(&self, prefix: &str) -> String {
        let taken: BTreeSet<&str> = self.points.iter().map(|p| p.label.as_str()).collect();
        let mut i = self.points.len();
        loop {
            let l = format!("{prefix}{i}");
            if !taken.contains(l.as_str()) {
                return l;
            }
            i += 1;
        }
    }

    /// Adds a fresh point labelled `q<n>`.
    pub fn add_fresh_point(&mut self, coords: Option<Pt>, provenance: Vec<String>) -> PointId {
        let l = self.fresh_label("q");
        self.add_point(l, coords, provenance)
    }

    /// Splits segment `g` of a live string at a fresh point. Returns the point and
    /// the two new segments (first from the old `from` end).
    pub fn subdivide_segment(&mut self, g: SegId) -> Result<(PointId, SegId, SegId)> {
        let owners = self.seg_owners();
        let &(sid, i) = owners
            .get(&g)
            .ok_or_else(|| Error::UnknownEdge(format!("segment {g}")))?;
        let Segment { from, to } = self.segs[g.index()];
        let coords = match (&self.points[from.index()].coords, &self.points[to.index()].coords) {
            (Some(a), Some(b)) => Some(a.midpoint(b)),
            _ => None,
        };
        let label = self.string(sid).label.clone();
        let m = self.add_fresh_point(coords, vec![format!("{label}~mid")]);
        let a = self.new_seg(from, m);
        let b = self.new_seg(m, to);
        for h in self.rot[from.index()].iter_mut() {
            if *h == HalfSeg::new(g, End::From) {
                *h = HalfSeg::new(a, End::From);
            }
        }
        for h in self.rot[to.index()].iter_mut() {
            if *h == HalfSeg::new(g, End::To) {
                *h = HalfSeg::new(b, End::To);
            }
        }
        self.rot[m.index()] = vec![HalfSeg::new(a, End::To), HalfSeg::new(b, End::From)];
        let remap = |h: HalfSeg| -> HalfSeg {
            if h.seg != g {
                h
            } else if h.end == End::From {
                HalfSeg::new(a, End::From)
            } else {
                HalfSeg::new(b, End::To)
            }
        };
        self.outer_marks = self.outer_marks.iter().map(|&h| remap(h)).collect();
        self.enclosures = self
            .enclosures
            .iter()
            .map(|e| Enclosure {
                inner: remap(e.inner),
                face: remap(e.face),
            })
            .collect();
        let s = self.strings[sid.index()].as_mut().unwrap();
        s.nodes.insert(i + 1, m);
        s.segs.splice(i..=i, [a, b]);
        self.touch();
        Ok((m, a, b))
    }

    /// Subdivides map edge `e` at the middle segment of its run.
    pub fn subdivide_edge(&mut self, e: EdgeId) -> Result<(PointId, SegId, SegId)> {
        let der = self.derived()?;
        let me = der
            .edges
            .get(e.index())
            .ok_or_else(|| Error::UnknownEdge(e.to_string()))?;
        let g = me.segs[me.segs.len() / 2];
        self.subdivide_segment(g)
    }

    /// Extends one end of a string by a new segment to `target` (an existing or
    /// fresh point). At the old end the new segment end is placed right after
    /// `anchor`; at `target` right after `target_anchor` (or alone for a fresh point).
    pub fn extend_end(
        &mut self,
        sid: StringId,
        at_start: bool,
        anchor: HalfSeg,
        target: PointId,
        target_anchor: Option<HalfSeg>,
    ) -> Result<SegId> {
        let s = self.string(sid).clone();
        let a = if at_start { s.start() } else { s.end() };
        let (g, at_a, at_t) = if at_start {
            let g = self.new_seg(target, a);
            (g, HalfSeg::new(g, End::To), HalfSeg::new(g, End::From))
        } else {
            let g = self.new_seg(a, target);
            (g, HalfSeg::new(g, End::From), HalfSeg::new(g, End::To))
        };
        self.insert_after(a, anchor, at_a)?;
        match target_anchor {
            Some(t) => self.insert_after(target, t, at_t)?,
            None => self.rot[target.index()].push(at_t),
        }
        let st = self.strings[sid.index()].as_mut().unwrap();
        if at_start {
            st.nodes.insert(0, target);
            st.segs.insert(0, g);
        } else {
            st.nodes.push(target);
            st.segs.push(g);
        }
        self.touch();
        Ok(g)
    }

    /// Adds a two-node string from `u` to `v`, placed after the given anchors.
    pub fn add_connector(&mut self, u: PointId, u_anchor: HalfSeg, v: PointId, v_anchor: HalfSeg) -> Result<StringId> {
        let label = {
            let taken: BTreeSet<String> = self.strings().map(|s| s.label.clone()).collect();
            let mut i = 0;
            loop {
                let l = format!("c{i}");
                if !taken.contains(&l) {
                    break l;
                }
                i += 1;
            }
        };
        let id = StringId(self.strings.len() as u32);
        let g = self.new_seg(u, v);
        self.insert_after(u, u_anchor, HalfSeg::new(g, End::From))?;
        self.insert_after(v, v_anchor, HalfSeg::new(g, End::To))?;
        self.strings.push(Some(StringRec {
            id,
            label,
            nodes: vec![u, v],
            segs: vec![g],
            source: id,
        }));
        self.touch();
        Ok(id)
    }

    /// Combinatorial fingerprint: strings as point-label sequences plus live
    /// rotations up to cyclic shift.
    pub fn fingerprint(&self) -> String {
        let mut out = String::new();
        let owners = self.seg_owners();
        for s in self.strings() {
            out.push_str(&s.label);
            out.push(':');
            for p in &s.nodes {
                out.push_str(self.point_label(*p));
                out.push(',');
            }
            out.push('\n');
        }
        for p in self.live_points() {
            out.push_str(self.point_label(p));
            out.push('[');
            let mut rot: Vec<String> = self.rot[p.index()]
                .iter()
                .filter_map(|h| {
                    owners
                        .get(&h.seg)
                        .map(|(sid, i)| format!("{}#{}{:?} ", self.string(*sid).label, i, h.end))
                })
                .collect();
            // Rotations are cyclic; start at the smallest entry.
            if let Some(k) = (0..rot.len()).min_by_key(|&k| &rot[k]) {
                rot.rotate_left(k);
            }
            out.push_str(&rot.concat());
            out.push_str("]\n");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two strings crossing at a shared point `c`: a-c-b and d-c-e, alternating.
    fn cross() -> StringSet {
        let mut s = StringSet::new();
        let a = s.add_point("a", None, vec![]);
        let b = s.add_point("b", None, vec![]);
        let c = s.add_point("c", None, vec![]);
        let d = s.add_point("d", None, vec![]);
        let e = s.add_point("e", None, vec![]);
        let s0 = s.add_string("s0", vec![a, c, b]);
        let s1 = s.add_string("s1", vec![d, c, e]);
        let g0 = s.string(s0).segs.clone();
        let g1 = s.string(s1).segs.clone();
        s.set_rotation(
            c,
            vec![
                HalfSeg::new(g0[1], End::From),
                HalfSeg::new(g1[1], End::From),
                HalfSeg::new(g0[0], End::To),
                HalfSeg::new(g1[0], End::To),
            ],
        );
        s.set_outer_marks(vec![HalfSeg::new(g0[0], End::From)]);
        s
    }

    #[test]
    fn cross_shape_counts() {
        let s = cross();
        assert!(s.validate_general_position().is_empty());
        let d = s.derived().unwrap();
        assert_eq!(d.map.vertex_count(), 5);
        assert_eq!(d.map.edge_count(), 4);
        assert_eq!(d.map.face_count(), 1);
    }

    #[test]
    fn tangency_is_reported() {
        let mut s = cross();
        let c = s.find_point("c").unwrap();
        let mut rot = s.raw_rotation(c).to_vec();
        rot.swap(1, 2);
        s.set_rotation(c, rot);
        assert!(s
            .validate_general_position()
            .iter()
            .any(|v| matches!(v, Violation::Tangency { .. })));
    }

    #[test]
    fn interior_repeat_is_self_cross() {
        let mut s = StringSet::new();
        let p: Vec<PointId> = (0..4).map(|i| s.add_point(format!("p{i}"), None, vec![])).collect();
        s.add_string("s", vec![p[0], p[1], p[2], p[3], p[1], p[0]]);
        assert!(s
            .validate_general_position()
            .iter()
            .any(|v| matches!(v, Violation::SelfCross { .. })));
    }

    #[test]
    fn removing_a_crossing_splits_both_strings() {
        let s = cross();
        let c = s.find_point("c").unwrap();
        let t = s.remove_vertex(c).unwrap();
        assert_eq!(t.string_count(), 0);
        let a = s.find_point("a").unwrap();
        let t = s.remove_vertex(a).unwrap();
        assert_eq!(t.string_count(), 2);
        assert!(t.derived().unwrap().map.vertex_count() < s.derived().unwrap().map.vertex_count());
    }

    #[test]
    fn subdivision_keeps_structure() {
        let mut s = cross();
        let g = s.string(StringId(0)).segs[0];
        s.subdivide_segment(g).unwrap();
        assert!(s.validate_general_position().is_empty());
        let d = s.derived().unwrap();
        assert_eq!(d.map.vertex_count(), 5);
        assert_eq!(s.string(StringId(0)).nodes.len(), 4);
    }
}
