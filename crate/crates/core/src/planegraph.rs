//! Combinatorial plane maps: darts, rotations, faces, blocks and cycle sides.
//!
//! Convention used throughout: `rotation(v)` lists the darts leaving `v` in
//! counterclockwise order, and the face walk successor of a dart `d` is the
//! clockwise neighbour of `twin(d)` at the head of `d`. With this rule every face
//! lies to the left of its darts: bounded faces are walked counterclockwise,
//! the unbounded face of a component clockwise.

use crate::error::{Error, Result};
use crate::ids::{Dart, EdgeId, FaceId, VertexId};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Debug)]
pub struct PlaneMap {
    vertex_count: usize,
    /// Origins of the forward and backward dart of each edge.
    edge_ends: Vec<[VertexId; 2]>,
    rotation: Vec<Vec<Dart>>,
    rot_pos: Vec<u32>,
    face_of: Vec<FaceId>,
    faces: Vec<Vec<Dart>>,
    vertex_comp: Vec<u32>,
    face_comp: Vec<u32>,
    comp_outer: Vec<FaceId>,
}

impl PlaneMap {
    /// Builds and validates a map.
    ///
    /// `edges[e] = (u, v)` makes dart `2e` run from `u` to `v`. `rotation[v]` must be
    /// a permutation of the darts leaving `v`. `outer_hints` holds, for each
    /// connected component, at least one dart whose left face is that component's
    /// unbounded face; the first hint of each component wins.
    pub fn build(
        vertex_count: usize,
        edges: &[(VertexId, VertexId)],
        rotation: Vec<Vec<Dart>>,
        outer_hints: &[Dart],
    ) -> Result<PlaneMap> {
        if rotation.len() != vertex_count {
            return Err(Error::DanglingDart(format!(
                "{} rotation lists for {} vertices",
                rotation.len(),
                vertex_count
            )));
        }
        let edge_ends: Vec<[VertexId; 2]> = edges.iter().map(|&(u, v)| [u, v]).collect();
        let ndarts = edges.len() * 2;
        let mut rot_pos = vec![u32::MAX; ndarts];
        for (v, list) in rotation.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::DanglingDart(format!("vertex v{v} has no incident edge")));
            }
            for (i, d) in list.iter().enumerate() {
                if d.index() >= ndarts {
                    return Err(Error::DanglingDart(format!("{d:?} out of range at v{v}")));
                }
                let origin = edge_ends[d.edge().index()][(d.0 & 1) as usize];
                if origin.index() != v {
                    return Err(Error::DanglingDart(format!("{d:?} listed at v{v} but leaves {origin}")));
                }
                if rot_pos[d.index()] != u32::MAX {
                    return Err(Error::DanglingDart(format!("{d:?} listed twice")));
                }
                rot_pos[d.index()] = i as u32;
            }
        }
        if let Some(d) = rot_pos.iter().position(|&p| p == u32::MAX) {
            return Err(Error::DanglingDart(format!(
                "{:?} missing from rotation",
                Dart(d as u32)
            )));
        }

        // Components by union-find over edges.
        let mut parent: Vec<usize> = (0..vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &[u, v] in &edge_ends {
            let a = find(&mut parent, u.index());
            let b = find(&mut parent, v.index());
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comp_index = BTreeMap::new();
        let mut vertex_comp = vec![0u32; vertex_count];
        for v in 0..vertex_count {
            let r = find(&mut parent, v);
            let n = comp_index.len() as u32;
            vertex_comp[v] = *comp_index.entry(r).or_insert(n);
        }
        let ncomp = comp_index.len();

        let mut map = PlaneMap {
            vertex_count,
            edge_ends,
            rotation,
            rot_pos,
            face_of: vec![FaceId(u32::MAX); ndarts],
            faces: Vec::new(),
            vertex_comp,
            face_comp: Vec::new(),
            comp_outer: Vec::new(),
        };
        for start in 0..ndarts {
            if map.face_of[start].0 != u32::MAX {
                continue;
            }
            let f = FaceId(map.faces.len() as u32);
            let mut walk = Vec::new();
            let mut d = Dart(start as u32);
            loop {
                map.face_of[d.index()] = f;
                walk.push(d);
                d = map.next_in_face(d);
                if d.index() == start {
                    break;
                }
                if map.face_of[d.index()].0 != u32::MAX {
                    return Err(Error::DanglingDart("face walk does not close".into()));
                }
            }
            let c = map.vertex_comp[map.origin(walk[0]).index()];
            map.face_comp.push(c);
            map.faces.push(walk);
        }

        let mut vcount = vec![0i64; ncomp];
        let mut ecount = vec![0i64; ncomp];
        let mut fcount = vec![0i64; ncomp];
        for v in 0..vertex_count {
            vcount[map.vertex_comp[v] as usize] += 1;
        }
        for e in &map.edge_ends {
            ecount[map.vertex_comp[e[0].index()] as usize] += 1;
        }
        for &c in &map.face_comp {
            fcount[c as usize] += 1;
        }
        for c in 0..ncomp {
            if vcount[c] - ecount[c] + fcount[c] != 2 {
                return Err(Error::NonPlanarEmbedding(format!(
                    "component {c}: V - E + F = {} - {} + {} != 2",
                    vcount[c], ecount[c], fcount[c]
                )));
            }
        }

        let mut outer = vec![None; ncomp];
        for &h in outer_hints {
            if h.index() >= ndarts {
                return Err(Error::DanglingDart(format!("outer hint {h:?} out of range")));
            }
            let f = map.face_of[h.index()];
            let c = map.face_comp[f.index()] as usize;
            if outer[c].is_none() {
                outer[c] = Some(f);
            }
        }
        for (c, o) in outer.iter().enumerate() {
            match o {
                Some(f) => map.comp_outer.push(*f),
                None => {
                    let v = map.vertex_comp.iter().position(|&x| x as usize == c).unwrap_or(0);
                    return Err(Error::MissingOuterFace(format!("v{v}")));
                }
            }
        }
        Ok(map)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn dart_count(&self) -> usize {
        self.edge_ends.len() * 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_ends.len() as u32).map(EdgeId)
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.dart_count() as u32).map(Dart)
    }

    #[inline]
    pub fn origin(&self, d: Dart) -> VertexId {
        self.edge_ends[d.edge().index()][(d.0 & 1) as usize]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> VertexId {
        self.origin(d.twin())
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [u, v] = self.edge_ends[e.index()];
        (u, v)
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let [u, v] = self.edge_ends[e.index()];
        u == v
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v.index()].len()
    }

    #[inline]
    pub fn rot_pos(&self, d: Dart) -> usize {
        self.rot_pos[d.index()] as usize
    }

    /// Counterclockwise neighbour of `d` around its origin.
    #[inline]
    pub fn ccw_next(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.origin(d).index()];
        rot[(self.rot_pos(d) + 1) % rot.len()]
    }

    /// Clockwise neighbour of `d` around its origin.
    #[inline]
    pub fn cw_next(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.origin(d).index()];
        rot[(self.rot_pos(d) + rot.len() - 1) % rot.len()]
    }

    /// Successor of `d` in the walk of its left face.
    #[inline]
    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.cw_next(d.twin())
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d.index()]
    }

    pub fn face_walk(&self, f: FaceId) -> &[Dart] {
        &self.faces[f.index()]
    }

    /// All face walks; every dart appears in exactly one.
    pub fn trace_faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn component_count(&self) -> usize {
        self.comp_outer.len()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.vertex_comp[v.index()] as usize
    }

    pub fn face_component(&self, f: FaceId) -> usize {
        self.face_comp[f.index()] as usize
    }

    /// The unbounded face of component `c`.
    pub fn outer_face(&self, c: usize) -> FaceId {
        self.comp_outer[c]
    }

    pub fn outer_face_of_vertex(&self, v: VertexId) -> FaceId {
        self.comp_outer[self.component_of(v)]
    }

    pub fn is_outer_face(&self, f: FaceId) -> bool {
        self.comp_outer[self.face_component(f)] == f
    }

    /// Whether `v` is incident with the unbounded face of its component.
    pub fn is_outer_vertex(&self, v: VertexId) -> bool {
        let f = self.outer_face_of_vertex(v);
        self.rotation(v).iter().any(|&d| self.face_of(d) == f)
    }

    pub fn outer_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_outer_vertex(v)).collect()
    }

    pub fn vertices_of_component(&self, c: usize) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.component_of(v) == c).collect()
    }

    /// Cycle rank (number of independent cycles) of the whole map.
    pub fn cycle_rank(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count
    }

    /// Faces reachable from `start` in the dual graph without crossing edges for
    /// which `wall` returns true.
    pub fn dual_reach(&self, start: FaceId, wall: impl Fn(EdgeId) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.faces.len()];
        seen[start.index()] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &d in &self.faces[f.index()] {
                if wall(d.edge()) {
                    continue;
                }
                let g = self.face_of(d.twin());
                if !seen[g.index()] {
                    seen[g.index()] = true;
                    queue.push_back(g);
                }
            }
        }
        seen
    }

    /// Classifies a simple cycle given as a closed dart walk (either orientation).
    pub fn cycle_interior(&self, darts: &[Dart]) -> Result<CycleRef> {
        if darts.is_empty() {
            return Err(Error::NotACycle("empty walk".into()));
        }
        let k = darts.len();
        let mut seen_v = BTreeSet::new();
        let mut seen_e = BTreeSet::new();
        for i in 0..k {
            let d = darts[i];
            if d.index() >= self.dart_count() {
                return Err(Error::NotACycle(format!("{d:?} out of range")));
            }
            if self.head(d) != self.origin(darts[(i + 1) % k]) {
                return Err(Error::NotACycle(format!("{d:?} does not meet its successor")));
            }
            if !seen_v.insert(self.origin(d)) {
                return Err(Error::NotACycle(format!("vertex {} repeated", self.origin(d))));
            }
            if !seen_e.insert(d.edge()) {
                return Err(Error::NotACycle(format!("edge {} repeated", d.edge())));
            }
        }
        let comp = self.component_of(self.origin(darts[0]));
        let mut on_cycle = vec![false; self.edge_count()];
        for d in darts {
            on_cycle[d.edge().index()] = true;
        }
        let outside = self.dual_reach(self.comp_outer[comp], |e| on_cycle[e.index()]);
        let mut oriented: Vec<Dart> = darts.to_vec();
        if outside[self.face_of(darts[0]).index()] {
            oriented = darts.iter().rev().map(|d| d.twin()).collect();
        }
        if outside[self.face_of(oriented[0]).index()] {
            return Err(Error::InternalInconsistency("cycle has no bounded side".into()));
        }
        let face_inside: Vec<bool> = (0..self.faces.len())
            .map(|f| !outside[f] && self.face_comp[f] as usize == comp)
            .collect();
        Ok(CycleRef::new(self, oriented, face_inside))
    }

    /// Orders an edge set forming a simple cycle into a closed dart walk.
    pub fn cycle_from_edges(&self, edges: &[EdgeId]) -> Result<CycleRef> {
        let walk = self.walk_from_edges(edges)?;
        self.cycle_interior(&walk)
    }

    pub fn walk_from_edges(&self, edges: &[EdgeId]) -> Result<Vec<Dart>> {
        if edges.is_empty() {
            return Err(Error::NotACycle("no edges".into()));
        }
        let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
        if set.len() != edges.len() {
            return Err(Error::NotACycle("repeated edge".into()));
        }
        let mut at: BTreeMap<VertexId, Vec<Dart>> = BTreeMap::new();
        for &e in &set {
            if e.index() >= self.edge_count() {
                return Err(Error::UnknownEdge(format!("{e}")));
            }
            for d in [Dart::forward(e), Dart::backward(e)] {
                at.entry(self.origin(d)).or_default().push(d);
            }
        }
        if at.values().any(|v| v.len() != 2) {
            return Err(Error::NotACycle("vertex of degree other than 2".into()));
        }
        let first = Dart::forward(*set.iter().next().unwrap());
        let mut walk = vec![first];
        let mut used = BTreeSet::from([first.edge()]);
        let mut cur = first;
        loop {
            let v = self.head(cur);
            let next = at[&v].iter().copied().find(|d| !used.contains(&d.edge()));
            match next {
                Some(d) => {
                    used.insert(d.edge());
                    walk.push(d);
                    cur = d;
                }
                None => break,
            }
        }
        if walk.len() != set.len() || self.head(cur) != self.origin(first) {
            return Err(Error::NotACycle("edges do not form one cycle".into()));
        }
        Ok(walk)
    }

    /// Block decomposition (maximal subgraphs without cut vertices).
    pub fn biconnected_blocks(&self) -> Blocks {
        let n = self.vertex_count;
        let mut disc = vec![u32::MAX; n];
        let mut low = vec![0u32; n];
        let mut timer = 0u32;
        let mut edge_stack: Vec<EdgeId> = Vec::new();
        let mut blocks: Vec<Vec<EdgeId>> = Vec::new();
        let mut is_cut = vec![false; n];

        for root in 0..n {
            if disc[root] != u32::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, dart used to enter, next rotation index)
            let mut stack: Vec<(usize, Option<Dart>, usize)> = vec![(root, None, 0)];
            while let Some(top) = stack.last_mut() {
                let (v, via, idx) = *top;
                if idx < self.rotation[v].len() {
                    top.2 += 1;
                    let d = self.rotation[v][idx];
                    if Some(d.twin()) == via {
                        continue;
                    }
                    if self.is_loop(d.edge()) {
                        if d.is_forward() {
                            blocks.push(vec![d.edge()]);
                        }
                        continue;
                    }
                    let w = self.head(d).index();
                    if disc[w] == u32::MAX {
                        edge_stack.push(d.edge());
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(d), 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(d.edge());
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(d), Some(parent)) = (via, stack.last()) {
                        let p = parent.0;
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            if p != root {
                                is_cut[p] = true;
                            }
                            let mut block = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                block.push(e);
                                if e == d.edge() {
                                    break;
                                }
                            }
                            blocks.push(block);
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        let mut out: Vec<Block> = blocks
            .into_iter()
            .map(|mut edges| {
                edges.sort();
                edges.dedup();
                let mut vs = BTreeSet::new();
                for &e in &edges {
                    let (a, b) = self.edge_endpoints(e);
                    vs.insert(a);
                    vs.insert(b);
                }
                let cyclic = edges.len() >= 2 || self.is_loop(edges[0]);
                Block {
                    edges,
                    vertices: vs.into_iter().collect(),
                    cyclic,
                }
            })
            .collect();
        out.sort_by(|a, b| a.edges[0].cmp(&b.edges[0]));
        Blocks {
            blocks: out,
            cut_vertices: (0..n).filter(|&v| is_cut[v]).map(|v| VertexId(v as u32)).collect(),
        }
    }

    /// The cycle bounding the unbounded face of a block with a cycle, oriented
    /// with the block on its left. `None` for bridge blocks.
    pub fn block_outer_cycle(&self, block: &Block) -> Option<CycleRef> {
        if !block.cyclic {
            return None;
        }
        if block.edges.len() == 1 {
            return self.cycle_interior(&[Dart::forward(block.edges[0])]).ok();
        }
        let in_block: BTreeSet<EdgeId> = block.edges.iter().copied().collect();
        let sub_rot: BTreeMap<VertexId, Vec<Dart>> = block
            .vertices
            .iter()
            .map(|&v| {
                (
                    v,
                    self.rotation(v)
                        .iter()
                        .copied()
                        .filter(|d| in_block.contains(&d.edge()))
                        .collect(),
                )
            })
            .collect();
        let sub_next = |d: Dart| -> Dart {
            let t = d.twin();
            let rot = &sub_rot[&self.origin(t)];
            let p = rot.iter().position(|&x| x == t).unwrap();
            rot[(p + rot.len() - 1) % rot.len()]
        };
        // Find a block dart whose left region contains the unbounded face.
        let comp = self.component_of(block.vertices[0]);
        let start = self.comp_outer[comp];
        let reach = self.dual_reach(start, |e| in_block.contains(&e));
        let mut seed = None;
        'outer: for (f, &r) in reach.iter().enumerate() {
            if !r {
                continue;
            }
            for &d in &self.faces[f] {
                if in_block.contains(&d.edge()) {
                    seed = Some(d);
                    break 'outer;
                }
            }
        }
        let seed = seed?;
        let mut walk = vec![seed];
        let mut d = sub_next(seed);
        while d != seed {
            walk.push(d);
            d = sub_next(d);
        }
        let rev: Vec<Dart> = walk.iter().rev().map(|d| d.twin()).collect();
        self.cycle_interior(&rev).ok()
    }

    /// Whether the cycle is exactly the boundary of its component's unbounded face.
    pub fn is_outer_boundary(&self, cycle: &CycleRef) -> bool {
        let comp = self.component_of(cycle.vertices[0]);
        let walk = self.face_walk(self.comp_outer[comp]);
        walk.len() == cycle.edges.len() && walk.iter().all(|d| cycle.contains_edge(d.edge()))
    }
}

/// A block of the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
    /// True when the block contains a cycle (a loop, parallel edges, or a 2-connected piece).
    pub cyclic: bool,
}

#[derive(Clone, Debug)]
pub struct Blocks {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<VertexId>,
}

/// A simple cycle with its sides classified. Darts are oriented so that the
/// bounded side is on their left.
#[derive(Clone, Debug)]
pub struct CycleRef {
    pub darts: Vec<Dart>,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub interior_faces: Vec<FaceId>,
    pub interior_edges: Vec<EdgeId>,
    pub interior_vertices: Vec<VertexId>,
    face_inside: Vec<bool>,
    edge_on: BTreeSet<EdgeId>,
    vertex_pos: BTreeMap<VertexId, usize>,
}

/// Side of a map element relative to a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Interior,
    OnCycle,
    Exterior,
}

impl CycleRef {
    fn new(map: &PlaneMap, darts: Vec<Dart>, face_inside: Vec<bool>) -> Self {
        let vertices: Vec<VertexId> = darts.iter().map(|&d| map.origin(d)).collect();
        let edges: Vec<EdgeId> = darts.iter().map(|d| d.edge()).collect();
        let edge_on: BTreeSet<EdgeId> = edges.iter().copied().collect();
        let vertex_pos = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect::<BTreeMap<_, _>>();
        let interior_faces = (0..face_inside.len())
            .filter(|&f| face_inside[f])
            .map(|f| FaceId(f as u32))
            .collect();
        let interior_edges = map
            .edges()
            .filter(|e| !edge_on.contains(e) && face_inside[map.face_of(Dart::forward(*e)).index()])
            .collect();
        let interior_vertices = map
            .vertices()
            .filter(|v| !vertex_pos.contains_key(v) && face_inside[map.face_of(map.rotation(*v)[0]).index()])
            .collect();
        CycleRef {
            darts,
            vertices,
            edges,
            interior_faces,
            interior_edges,
            interior_vertices,
            face_inside,
            edge_on,
            vertex_pos,
        }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertex_pos.contains_key(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edge_on.contains(&e)
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertex_pos.get(&v).copied()
    }

    pub fn face_is_interior(&self, f: FaceId) -> bool {
        self.face_inside[f.index()]
    }

    pub fn edge_side(&self, map: &PlaneMap, e: EdgeId) -> Side {
        if self.contains_edge(e) {
            Side::OnCycle
        } else if self.face_inside[map.face_of(Dart::forward(e)).index()] {
            Side::Interior
        } else {
            Side::Exterior
        }
    }

    pub fn vertex_side(&self, map: &PlaneMap, v: VertexId) -> Side {
        if self.contains_vertex(v) {
            Side::OnCycle
        } else if self.face_inside[map.face_of(map.rotation(v)[0]).index()] {
            Side::Interior
        } else {
            Side::Exterior
        }
    }

    /// The cycle darts leaving and entering `v`.
    fn darts_at(&self, v: VertexId) -> Result<(Dart, Dart)> {
        let i = self.position(v).ok_or_else(|| Error::VertexNotOnCycle(v.to_string()))?;
        let k = self.darts.len();
        Ok((self.darts[i], self.darts[(i + k - 1) % k]))
    }

    /// Counterclockwise darts at `v` inside the closed disk, from the outgoing
    /// cycle dart to the reverse of the incoming one.
    pub fn rotation_inside(&self, map: &PlaneMap, v: VertexId) -> Result<Vec<Dart>> {
        let (out, inc) = self.darts_at(v)?;
        Ok(ccw_range(map, out, inc.twin()))
    }

    /// Counterclockwise darts at `v` outside the open disk, from the reverse of
    /// the incoming cycle dart to the outgoing one.
    pub fn rotation_outside(&self, map: &PlaneMap, v: VertexId) -> Result<Vec<Dart>> {
        let (out, inc) = self.darts_at(v)?;
        Ok(ccw_range(map, inc.twin(), out))
    }
}

/// Darts from `from` to `to` inclusive, counterclockwise around their common origin.
pub fn ccw_range(map: &PlaneMap, from: Dart, to: Dart) -> Vec<Dart> {
    let mut out = vec![from];
    let mut d = from;
    while d != to {
        d = map.ccw_next(d);
        out.push(d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn triangle() -> PlaneMap {
        // vertices at (0,0), (1,0), (0,1); edges 01, 12, 20.
        let edges = [(v(0), v(1)), (v(1), v(2)), (v(2), v(0))];
        let rot = vec![vec![Dart(0), Dart(5)], vec![Dart(2), Dart(1)], vec![Dart(4), Dart(3)]];
        // dart 1 (1->0) has the unbounded face on its left
        PlaneMap::build(3, &edges, rot, &[Dart(1)]).unwrap()
    }

    #[test]
    fn single_edge_has_one_face() {
        let m = PlaneMap::build(2, &[(v(0), v(1))], vec![vec![Dart(0)], vec![Dart(1)]], &[Dart(0)]).unwrap();
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.face_walk(FaceId(0)).len(), 2);
    }

    #[test]
    fn triangle_faces_and_interior() {
        let m = triangle();
        assert_eq!(m.face_count(), 2);
        assert!(m.trace_faces().iter().all(|w| w.len() == 3));
        let c = m.cycle_from_edges(&[EdgeId(0), EdgeId(1), EdgeId(2)]).unwrap();
        assert_eq!(c.interior_faces.len(), 1);
        assert!(!c.face_is_interior(m.outer_face(0)));
        assert!(m.is_outer_boundary(&c));
        assert_eq!(c.rotation_inside(&m, v(0)).unwrap().len(), 2);
    }

    #[test]
    fn euler_violation_is_rejected() {
        // Triangle with rotation at vertex 0 reversed is still fine (degree 2),
        // so build K4 with a non-planar rotation instead.
        let edges = [
            (v(0), v(1)),
            (v(0), v(2)),
            (v(0), v(3)),
            (v(1), v(2)),
            (v(2), v(3)),
            (v(3), v(1)),
        ];
        let rot = vec![
            vec![Dart(0), Dart(2), Dart(4)],
            vec![Dart(1), Dart(6), Dart(11)],
            vec![Dart(3), Dart(8), Dart(7)],
            vec![Dart(5), Dart(10), Dart(9)],
        ];
        let err = PlaneMap::build(4, &edges, rot, &[Dart(0)]).unwrap_err();
        assert!(matches!(err, Error::NonPlanarEmbedding(_)));
    }

    #[test]
    fn two_triangles_sharing_a_vertex() {
        // Bowtie: vertex 0 at origin, triangles on the right and left.
        let edges = [
            (v(0), v(1)),
            (v(1), v(2)),
            (v(2), v(0)),
            (v(0), v(3)),
            (v(3), v(4)),
            (v(4), v(0)),
        ];
        // v1=(1,-1), v2=(1,1), v3=(-1,1), v4=(-1,-1)
        let rot = vec![
            vec![Dart(5), Dart(6), Dart(11), Dart(0)],
            vec![Dart(2), Dart(1)],
            vec![Dart(4), Dart(3)],
            vec![Dart(8), Dart(7)],
            vec![Dart(10), Dart(9)],
        ];
        let m = PlaneMap::build(5, &edges, rot, &[Dart(1)]).unwrap();
        let b = m.biconnected_blocks();
        assert_eq!(b.blocks.len(), 2);
        assert_eq!(b.cut_vertices, vec![v(0)]);
        for blk in &b.blocks {
            let c = m.block_outer_cycle(blk).unwrap();
            assert_eq!(c.len(), 3);
        }
    }
}
