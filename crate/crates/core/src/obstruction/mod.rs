//! Rainbow / reflecting classification, obstruction predicates and reports.
//!
//! A vertex of a cycle is a rainbow when the darts of its rotation inside the
//! cycle belong to pairwise distinct strings, and reflecting otherwise. A cycle
//! with at most two rainbows is an obstruction.

mod algorithms;
mod oracle;

pub use algorithms::{find_obstruction, find_obstruction_with, find_obstruction_x, find_obstruction_xy, SearchOptions};
pub use oracle::{brute_force_avoiding, brute_force_min_delta, brute_force_obstruction, for_each_obstruction};

use crate::error::Result;
use crate::ids::{Dart, PointId, SegId, StringId, VertexId};
use crate::planegraph::CycleRef;
use crate::stringset::{Derived, StringSet};
use serde::Serialize;
use std::collections::BTreeSet;

/// Default vertex cap for exhaustive cycle enumeration.
pub const DEFAULT_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    Rainbow,
    Reflecting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub kind: VertexKind,
    /// For reflecting vertices, a string owning two darts of the inside rotation.
    pub witness: Option<StringId>,
}

/// First string owning two of `darts`, if any.
pub(crate) fn repeated_string(der: &Derived, darts: &[Dart]) -> Option<StringId> {
    let mut seen = BTreeSet::new();
    for &d in darts {
        let s = der.dart_string(d);
        if !seen.insert(s) {
            return Some(s);
        }
    }
    None
}

pub fn classify_vertex(der: &Derived, c: &CycleRef, v: VertexId) -> Result<VertexClass> {
    let inside = c.rotation_inside(&der.map, v)?;
    Ok(match repeated_string(der, &inside) {
        Some(s) => VertexClass {
            kind: VertexKind::Reflecting,
            witness: Some(s),
        },
        None => VertexClass {
            kind: VertexKind::Rainbow,
            witness: None,
        },
    })
}

/// Cycle vertices whose two cycle edges belong to distinct strings.
pub fn delta_set(der: &Derived, c: &CycleRef) -> Vec<VertexId> {
    let k = c.darts.len();
    (0..k)
        .filter(|&i| der.dart_string(c.darts[i]) != der.dart_string(c.darts[(i + k - 1) % k]))
        .map(|i| c.vertices[i])
        .collect()
}

/// Rainbow vertices of the cycle, in cycle order.
pub fn rainbows(der: &Derived, c: &CycleRef) -> Vec<VertexId> {
    delta_set(der, c)
        .into_iter()
        .filter(|&v| {
            matches!(
                classify_vertex(der, c, v),
                Ok(VertexClass {
                    kind: VertexKind::Rainbow,
                    ..
                })
            )
        })
        .collect()
}

/// Whether the cycle has at most two rainbows, with the rainbow set.
pub fn is_obstruction(der: &Derived, c: &CycleRef) -> (bool, Vec<VertexId>) {
    let r = rainbows(der, c);
    (r.len() <= 2, r)
}

/// Vertices on the unbounded face whose whole rotation uses pairwise distinct strings.
pub fn outer_rainbows(der: &Derived) -> Vec<VertexId> {
    der.map
        .vertices()
        .filter(|&v| der.map.is_outer_vertex(v) && repeated_string(der, der.map.rotation(v)).is_none())
        .collect()
}

/// A witness cycle expressed with the point labels of the string set it was
/// reported against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    /// Map vertices of the cycle, bounded side on the left, starting at the lowest point.
    pub cycle: Vec<String>,
    pub rainbows: Vec<String>,
    pub delta: Vec<String>,
    /// Every point along the closed curve, in cycle order.
    pub curve: Vec<String>,
    pub trace: Vec<String>,
    #[serde(skip)]
    pub segs: BTreeSet<SegId>,
    #[serde(skip)]
    pub points: Vec<PointId>,
}

impl ObstructionReport {
    pub fn from_cycle(sigma: &StringSet, der: &Derived, c: &CycleRef, trace: Vec<String>) -> ObstructionReport {
        let k = c.vertices.len();
        let start = (0..k).min_by_key(|&i| der.point(c.vertices[i])).unwrap_or(0);
        let order: Vec<VertexId> = (0..k).map(|i| c.vertices[(start + i) % k]).collect();
        let label = |v: &VertexId| sigma.point_label(der.point(*v)).to_string();
        let delta: BTreeSet<VertexId> = delta_set(der, c).into_iter().collect();
        let rain: BTreeSet<VertexId> = rainbows(der, c).into_iter().collect();
        let curve_pts = der.cycle_curve(c);
        let first = curve_pts.iter().position(|&p| p == der.point(order[0])).unwrap_or(0);
        let curve: Vec<String> = (0..curve_pts.len())
            .map(|i| sigma.point_label(curve_pts[(first + i) % curve_pts.len()]).to_string())
            .collect();
        ObstructionReport {
            cycle: order.iter().map(label).collect(),
            rainbows: order.iter().filter(|v| rain.contains(v)).map(label).collect(),
            delta: order.iter().filter(|v| delta.contains(v)).map(label).collect(),
            curve,
            trace,
            segs: der.cycle_segs(c),
            points: order.iter().map(|v| der.point(*v)).collect(),
        }
    }

    pub fn rainbow_count(&self) -> usize {
        self.rainbows.len()
    }
}

/// Canonical form of a closed point curve: rotation and direction normalised.
pub fn canonical_curve(curve: &[PointId]) -> Vec<PointId> {
    if curve.is_empty() {
        return Vec::new();
    }
    let n = curve.len();
    let mut best: Option<Vec<PointId>> = None;
    for rev in [false, true] {
        let seq: Vec<PointId> = if rev {
            curve.iter().rev().copied().collect()
        } else {
            curve.to_vec()
        };
        for s in 0..n {
            let cand: Vec<PointId> = (0..n).map(|i| seq[(s + i) % n]).collect();
            if best.as_ref().map(|b| cand < *b).unwrap_or(true) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_curve_ignores_start_and_direction() {
        let c = |v: &[u32]| v.iter().map(|&i| PointId(i)).collect::<Vec<_>>();
        assert_eq!(canonical_curve(&c(&[3, 1, 2])), canonical_curve(&c(&[2, 1, 3])));
        assert_eq!(canonical_curve(&c(&[3, 1, 2])), c(&[1, 2, 3]));
    }
}
