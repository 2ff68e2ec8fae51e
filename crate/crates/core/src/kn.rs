//! Good drawings of graphs as string sets, and the B configuration in drawings
//! of complete graphs.
//!
//! Each edge of the graph is one string joining two graph vertices. A drawing is
//! good when no string passes through a graph vertex, crossings are simple, and
//! any two strings share at most one point (so adjacent edges never cross).

use crate::error::{Error, Result};
use crate::ids::{PointId, SegId, StringId};
use crate::obstruction::{find_obstruction_with, ObstructionReport, SearchOptions};
use crate::stringset::StringSet;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct GoodDrawing {
    pub sigma: StringSet,
    /// Graph vertices in input order.
    pub vertices: Vec<PointId>,
    /// Edge `(i, j)` with `i < j` (indices into `vertices`) to its string.
    pub edges: BTreeMap<(usize, usize), StringId>,
}

impl GoodDrawing {
    pub fn is_complete(&self) -> bool {
        let n = self.vertices.len();
        self.edges.len() == n * (n - 1) / 2
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<StringId> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    /// Endpoint indices of the edge drawn as `s`.
    pub fn ends(&self, s: StringId) -> Option<(usize, usize)> {
        self.edges.iter().find(|(_, &t)| t == s).map(|(&k, _)| k)
    }

    /// Points where two edges cross.
    pub fn crossings(&self) -> Vec<PointId> {
        let on = strings_through(&self.sigma);
        let vs: BTreeSet<PointId> = self.vertices.iter().copied().collect();
        on.iter()
            .filter(|(p, ss)| ss.len() >= 2 && !vs.contains(p))
            .map(|(&p, _)| p)
            .collect()
    }
}

/// Strings through each point (as nodes).
fn strings_through(sigma: &StringSet) -> BTreeMap<PointId, BTreeSet<StringId>> {
    let mut on: BTreeMap<PointId, BTreeSet<StringId>> = BTreeMap::new();
    for s in sigma.strings() {
        for &p in &s.nodes {
            on.entry(p).or_default().insert(s.id);
        }
    }
    on
}

/// Graph vertices when none are given: every string end.
pub fn default_graph_vertices(sigma: &StringSet) -> Vec<PointId> {
    let ends: BTreeSet<PointId> = sigma.strings().flat_map(|s| [s.start(), s.end()]).collect();
    ends.into_iter().collect()
}

/// Every way `Σ` fails to be a good drawing with the given vertices.
pub fn good_drawing_violations(sigma: &StringSet, vertices: &[PointId]) -> Vec<String> {
    let mut out = Vec::new();
    let lbl = |p: PointId| sigma.point_label(p).to_string();
    let vset: BTreeSet<PointId> = vertices.iter().copied().collect();
    if vset.len() != vertices.len() {
        out.push("graph vertices repeat".to_string());
    }
    for v in sigma.validate_general_position() {
        out.push(v.to_string());
    }
    let mut pairs: BTreeMap<(PointId, PointId), StringId> = BTreeMap::new();
    for s in sigma.strings() {
        let (a, b) = (s.start(), s.end());
        if !vset.contains(&a) || !vset.contains(&b) {
            out.push(format!("string {} does not join two graph vertices", s.label));
            continue;
        }
        if a == b {
            out.push(format!("string {} is a loop", s.label));
            continue;
        }
        if let Some(other) = pairs.insert((a.min(b), a.max(b)), s.id) {
            out.push(format!(
                "strings {} and {} join the same vertices",
                sigma.string(other).label,
                s.label
            ));
        }
        let mut seen = BTreeSet::new();
        for (i, &p) in s.nodes.iter().enumerate() {
            if !seen.insert(p) {
                out.push(format!("string {} meets itself at {}", s.label, lbl(p)));
            }
            if i > 0 && i + 1 < s.nodes.len() && vset.contains(&p) {
                out.push(format!("string {} passes through vertex {}", s.label, lbl(p)));
            }
        }
    }
    let on = strings_through(sigma);
    let mut shared: BTreeMap<(StringId, StringId), Vec<PointId>> = BTreeMap::new();
    for (&p, ss) in &on {
        if ss.len() > 2 && !vset.contains(&p) {
            out.push(format!("more than two edges cross at {}", lbl(p)));
        }
        let ss: Vec<StringId> = ss.iter().copied().collect();
        for i in 0..ss.len() {
            for j in i + 1..ss.len() {
                shared.entry((ss[i], ss[j])).or_default().push(p);
            }
        }
    }
    for ((a, b), pts) in shared {
        if pts.len() > 1 {
            out.push(format!(
                "edges {} and {} share {} points",
                sigma.string(a).label,
                sigma.string(b).label,
                pts.len()
            ));
        }
    }
    out
}

pub fn validate_good_drawing(sigma: &StringSet, vertices: &[PointId]) -> Result<GoodDrawing> {
    let v = good_drawing_violations(sigma, vertices);
    if !v.is_empty() {
        return Err(Error::NotGood(v.join("; ")));
    }
    let idx: BTreeMap<PointId, usize> = vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let edges = sigma
        .strings()
        .map(|s| {
            let (a, b) = (idx[&s.start()], idx[&s.end()]);
            ((a.min(b), a.max(b)), s.id)
        })
        .collect();
    Ok(GoodDrawing {
        sigma: sigma.clone(),
        vertices: vertices.to_vec(),
        edges,
    })
}

/// A B configuration: the path `x y z w` of graph vertices where `xy` and `zw`
/// cross at `crossing`, and the cycle `crossing, y, z` holds both tails
/// (towards `x` and `w`) on its bounded side.
#[derive(Clone, Debug, Serialize)]
pub struct BWitness {
    pub x: String,
    pub y: String,
    pub z: String,
    pub w: String,
    pub crossing: String,
    pub cycle: ObstructionReport,
}

/// Segments of string `s` between nodes `p` and `q`.
fn sub_segs(sigma: &StringSet, s: StringId, p: PointId, q: PointId) -> Vec<SegId> {
    let st = sigma.string(s);
    let i = st.nodes.iter().position(|&n| n == p).expect("node on string");
    let j = st.nodes.iter().position(|&n| n == q).expect("node on string");
    st.segs[i.min(j)..i.max(j)].to_vec()
}

fn b_at(gd: &GoodDrawing, cross: PointId, e1: StringId, e2: StringId, y: usize, z: usize) -> Result<Option<BWitness>> {
    let sigma = &gd.sigma;
    let der = sigma.derived()?;
    let (a1, b1) = gd.ends(e1).expect("edge string");
    let (a2, b2) = gd.ends(e2).expect("edge string");
    let x = if a1 == y { b1 } else { a1 };
    let w = if a2 == z { b2 } else { a2 };
    let yz = match gd.edge(y, z) {
        Some(s) => s,
        None => return Ok(None),
    };
    let (py, pz) = (gd.vertices[y], gd.vertices[z]);
    let mut segs: BTreeSet<SegId> = sub_segs(sigma, e1, cross, py).into_iter().collect();
    segs.extend(sigma.string(yz).segs.iter().copied());
    segs.extend(sub_segs(sigma, e2, pz, cross));
    let c = der.cycle_from_segs(&segs)?;
    let vx = der.vertex(cross).expect("crossing is a vertex");
    if c.rotation_inside(&der.map, vx)?.len() != 4 {
        return Ok(None);
    }
    let lbl = |i: usize| sigma.point_label(gd.vertices[i]).to_string();
    Ok(Some(BWitness {
        x: lbl(x),
        y: lbl(y),
        z: lbl(z),
        w: lbl(w),
        crossing: sigma.point_label(cross).to_string(),
        cycle: ObstructionReport::from_cycle(
            sigma,
            &der,
            &c,
            vec![format!("B configuration at {}", sigma.point_label(cross))],
        ),
    }))
}

/// All B configurations, in crossing order.
pub fn find_all_b_configurations(gd: &GoodDrawing) -> Result<Vec<BWitness>> {
    if !gd.is_complete() {
        return Err(Error::NotComplete(format!(
            "{} vertices but {} edges",
            gd.vertices.len(),
            gd.edges.len()
        )));
    }
    let on = strings_through(&gd.sigma);
    let mut out = Vec::new();
    for cross in gd.crossings() {
        let ss: Vec<StringId> = on[&cross].iter().copied().collect();
        let (e1, e2) = (ss[0], ss[1]);
        let (a1, b1) = gd.ends(e1).expect("edge string");
        let (a2, b2) = gd.ends(e2).expect("edge string");
        for y in [a1, b1] {
            for z in [a2, b2] {
                if let Some(b) = b_at(gd, cross, e1, e2, y, z)? {
                    out.push(b);
                }
            }
        }
    }
    Ok(out)
}

pub fn find_b_configuration(gd: &GoodDrawing) -> Result<Option<BWitness>> {
    Ok(find_all_b_configurations(gd)?.into_iter().next())
}

#[derive(Clone, Debug, Serialize)]
pub struct Crosscheck {
    pub b: Option<BWitness>,
    pub obstruction: Option<ObstructionReport>,
}

/// Runs B detection and the general obstruction search and checks that they agree.
pub fn crosscheck_b_configuration(gd: &GoodDrawing, opts: SearchOptions) -> Result<Crosscheck> {
    let b = find_b_configuration(gd)?;
    let obstruction = find_obstruction_with(&gd.sigma, opts)?;
    if b.is_some() != obstruction.is_some() {
        return Err(Error::EquivalenceViolated(format!(
            "B configuration {} but obstruction {}",
            if b.is_some() { "present" } else { "absent" },
            if obstruction.is_some() { "present" } else { "absent" },
        )));
    }
    Ok(Crosscheck { b, obstruction })
}
