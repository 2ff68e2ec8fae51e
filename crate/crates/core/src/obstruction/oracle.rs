//! Exhaustive search over simple cycles, used as a reference for the
//! polynomial search and to find obstructions minimising `|δ(C)|`.

use super::{repeated_string, ObstructionReport};
use crate::error::{Error, Result};
use crate::ids::{Dart, PointId, VertexId};
use crate::planegraph::ccw_range;
use crate::stringset::{Derived, StringSet};

/// Counts of rainbow (or δ) vertices seen so far on the open path, for the two
/// possible sides the bounded region may end up on.
#[derive(Clone, Copy, Default)]
struct Tally {
    left: u32,
    right: u32,
    delta: u32,
}

struct Search<'a> {
    der: &'a Derived,
    start: VertexId,
    avoid: Option<VertexId>,
    on_path: Vec<bool>,
    path: Vec<Dart>,
    /// Upper bound on |δ| of interest (prune at or above it).
    delta_bound: u32,
    stop: bool,
}

fn vertex_tally(der: &Derived, d_in: Dart, d_out: Dart) -> Tally {
    let mut t = Tally::default();
    if der.dart_string(d_in) == der.dart_string(d_out) {
        return t;
    }
    t.delta = 1;
    let map = &der.map;
    if repeated_string(der, &ccw_range(map, d_out, d_in.twin())).is_none() {
        t.left = 1;
    }
    if repeated_string(der, &ccw_range(map, d_in.twin(), d_out)).is_none() {
        t.right = 1;
    }
    t
}

impl<'a> Search<'a> {
    fn run<F: FnMut(&[Dart], u32) -> Option<u32>>(&mut self, tally: Tally, visit: &mut F) {
        if self.stop {
            return;
        }
        let map = &self.der.map;
        let last = *self.path.last().unwrap();
        let v = map.head(last);
        for &d in map.rotation(v) {
            if self.stop {
                return;
            }
            if d.edge() == last.edge() {
                continue;
            }
            let w = map.head(d);
            let t = vertex_tally(self.der, last, d);
            let nt = Tally {
                left: tally.left + t.left,
                right: tally.right + t.right,
                delta: tally.delta + t.delta,
            };
            if (nt.left > 2 && nt.right > 2) || nt.delta >= self.delta_bound {
                continue;
            }
            if w == self.start {
                let first = self.path[0];
                if d.edge() <= first.edge() {
                    continue;
                }
                let s = vertex_tally(self.der, d, first);
                let ft = Tally {
                    left: nt.left + s.left,
                    right: nt.right + s.right,
                    delta: nt.delta + s.delta,
                };
                if (ft.left > 2 && ft.right > 2) || ft.delta >= self.delta_bound {
                    continue;
                }
                self.path.push(d);
                let ok = self.closes_left(ft);
                if let Some(ok) = ok {
                    let oriented: Vec<Dart> = if ok {
                        self.path.clone()
                    } else {
                        self.path.iter().rev().map(|d| d.twin()).collect()
                    };
                    match visit(&oriented, ft.delta) {
                        Some(b) => self.delta_bound = self.delta_bound.min(b),
                        None => self.stop = true,
                    }
                }
                self.path.pop();
                continue;
            }
            if w < self.start || self.on_path[w.index()] || Some(w) == self.avoid {
                continue;
            }
            self.on_path[w.index()] = true;
            self.path.push(d);
            self.run(nt, visit);
            self.path.pop();
            self.on_path[w.index()] = false;
        }
    }

    /// For a closed path: `Some(true)` if it is an obstruction with the bounded
    /// side on the left, `Some(false)` if on the right, `None` if not an obstruction.
    fn closes_left(&self, t: Tally) -> Option<bool> {
        let map = &self.der.map;
        let mut on = vec![false; map.edge_count()];
        for d in &self.path {
            on[d.edge().index()] = true;
        }
        let comp = map.component_of(self.start);
        let outside = map.dual_reach(map.outer_face(comp), |e| on[e.index()]);
        let left_bounded = !outside[map.face_of(self.path[0]).index()];
        let r = if left_bounded { t.left } else { t.right };
        if r <= 2 {
            Some(left_bounded)
        } else {
            None
        }
    }
}

/// Calls `visit` with every obstruction (darts oriented with the bounded side on
/// the left) and its `|δ|`. The callback returns `None` to stop, or a bound:
/// later cycles with `|δ|` at or above the smallest bound returned are skipped.
pub fn for_each_obstruction<F>(der: &Derived, avoid: Option<VertexId>, mut visit: F)
where
    F: FnMut(&[Dart], u32) -> Option<u32>,
{
    let map = &der.map;
    let mut bound = u32::MAX;
    for s in map.vertices() {
        if Some(s) == avoid {
            continue;
        }
        // Loops at s.
        for &d in map.rotation(s) {
            if map.is_loop(d.edge()) && d.is_forward() {
                let darts = [d];
                if let Ok(c) = map.cycle_interior(&darts) {
                    match visit(&c.darts, 0) {
                        Some(b) => bound = bound.min(b),
                        None => return,
                    }
                }
            }
        }
        let mut search = Search {
            der,
            start: s,
            avoid,
            on_path: vec![false; map.vertex_count()],
            path: Vec::new(),
            delta_bound: bound,
            stop: false,
        };
        search.on_path[s.index()] = true;
        for &d in map.rotation(s) {
            let w = map.head(d);
            if w <= s || Some(w) == avoid {
                continue;
            }
            search.path.push(d);
            search.on_path[w.index()] = true;
            search.run(Tally::default(), &mut visit);
            search.on_path[w.index()] = false;
            search.path.pop();
            if search.stop {
                return;
            }
        }
        // Two-edge cycles between s and a larger vertex are found above through
        // parallel edges; nothing else starts at s.
        bound = search.delta_bound;
    }
}

fn check_cap(der: &Derived, cap: usize) -> Result<()> {
    let n = der.map.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    Ok(())
}

fn search_one(
    sigma: &StringSet,
    cap: usize,
    avoid: Option<PointId>,
    minimise: bool,
) -> Result<Option<ObstructionReport>> {
    let der = sigma.derived()?;
    check_cap(&der, cap)?;
    let avoid_v = match avoid {
        Some(p) => match der.vertex(p) {
            Some(v) => Some(v),
            None => return Err(Error::UnknownPoint(sigma.point_label(p).to_string())),
        },
        None => None,
    };
    let mut best: Option<(u32, Vec<Dart>)> = None;
    for_each_obstruction(&der, avoid_v, |darts, delta| {
        if best.as_ref().map(|(b, _)| delta < *b).unwrap_or(true) {
            best = Some((delta, darts.to_vec()));
        }
        if minimise {
            Some(delta)
        } else {
            None
        }
    });
    match best {
        None => Ok(None),
        Some((_, darts)) => {
            let c = der.map.cycle_interior(&darts)?;
            Ok(Some(ObstructionReport::from_cycle(
                sigma,
                &der,
                &c,
                vec!["exhaustive cycle enumeration".to_string()],
            )))
        }
    }
}

/// First obstruction in enumeration order, or `None`.
pub fn brute_force_obstruction(sigma: &StringSet, cap: usize) -> Result<Option<ObstructionReport>> {
    search_one(sigma, cap, None, false)
}

/// An obstruction with the fewest string switches.
pub fn brute_force_min_delta(sigma: &StringSet, cap: usize) -> Result<Option<ObstructionReport>> {
    search_one(sigma, cap, None, true)
}

/// First obstruction not passing through the point `x`.
pub fn brute_force_avoiding(sigma: &StringSet, x: PointId, cap: usize) -> Result<Option<ObstructionReport>> {
    search_one(sigma, cap, Some(x), false)
}
