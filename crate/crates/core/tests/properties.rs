use proptest::prelude::*;
use pseudolinear::corpus::{generate, CorpusParams};
use pseudolinear::ids::{Dart, VertexId};
use pseudolinear::ingest::{load_drawing, polylines_to_stringset, serialize_drawing, stringset_to_doc, Polyline};
use pseudolinear::obstruction::{brute_force_obstruction, find_obstruction, rainbows};
use pseudolinear::planegraph::{CycleRef, PlaneMap};
use pseudolinear::stringset::StringSet;

fn instance(seed: u64) -> (Vec<Polyline>, StringSet) {
    let params = CorpusParams {
        max_vertices: 14,
        ..CorpusParams::default()
    };
    let inst = generate(seed, 1, params).pop().unwrap();
    (inst.lines, inst.sigma)
}

/// Simple cycles of the map by plain path search, at most `limit` of them.
fn cycles(map: &PlaneMap, limit: usize) -> Vec<CycleRef> {
    fn grow(
        map: &PlaneMap,
        start: VertexId,
        path: &mut Vec<Dart>,
        on: &mut Vec<bool>,
        out: &mut Vec<CycleRef>,
        limit: usize,
    ) {
        let last = map.head(*path.last().unwrap());
        for &d in map.rotation(last) {
            if out.len() >= limit || d.edge() == path.last().unwrap().edge() {
                continue;
            }
            let w = map.head(d);
            if w == start {
                // Each cycle once: its second vertex is below its last one.
                if path.len() >= 2 || d.edge() != path[0].edge() {
                    let second = map.head(path[0]);
                    if second < last || path.len() == 1 {
                        let mut darts = path.clone();
                        darts.push(d);
                        if let Ok(c) = map.cycle_interior(&darts) {
                            out.push(c);
                        }
                    }
                }
            } else if w > start && !on[w.index()] {
                on[w.index()] = true;
                path.push(d);
                grow(map, start, path, on, out, limit);
                path.pop();
                on[w.index()] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in map.vertices() {
        let mut on = vec![false; map.vertex_count()];
        on[s.index()] = true;
        for &d in map.rotation(s) {
            let w = map.head(d);
            if w > s {
                on[w.index()] = true;
                let mut path = vec![d];
                grow(map, s, &mut path, &mut on, &mut out, limit);
                on[w.index()] = false;
            }
        }
    }
    out
}

fn is_cyclic_rotation(a: &[Dart], b: &[Dart]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|s| (0..a.len()).all(|i| a[i] == b[(s + i) % b.len()])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Faces per component: V - E + F = 2 for each connected component.
    #[test]
    fn euler_formula(seed in any::<u64>()) {
        let (_, sigma) = instance(seed);
        let der = sigma.derived().unwrap();
        let m = &der.map;
        prop_assert_eq!(m.vertex_count() + m.face_count(), m.edge_count() + 2 * m.component_count());
    }

    /// Inside and outside rotations at a cycle vertex share the two cycle darts
    /// and together make up the whole rotation.
    #[test]
    fn inside_and_outside_rotations_partition(seed in any::<u64>()) {
        let (_, sigma) = instance(seed);
        let der = sigma.derived().unwrap();
        let m = &der.map;
        for c in cycles(m, 60) {
            for &v in &c.vertices {
                let inside = c.rotation_inside(m, v).unwrap();
                let outside = c.rotation_outside(m, v).unwrap();
                let mut all = inside.clone();
                all.extend_from_slice(&outside[1..outside.len() - 1]);
                prop_assert!(is_cyclic_rotation(&all, m.rotation(v)));
            }
        }
    }

    /// A rainbow of C is a rainbow of every cycle C' whose inside rotation at
    /// that vertex is part of C's.
    #[test]
    fn rainbows_survive_narrower_cycles(seed in any::<u64>()) {
        let (_, sigma) = instance(seed);
        let der = sigma.derived().unwrap();
        let m = &der.map;
        let cs = cycles(m, 40);
        for c in &cs {
            for v in rainbows(&der, c) {
                let inside = c.rotation_inside(m, v).unwrap();
                for c2 in cs.iter().filter(|c2| c2.contains_vertex(v)) {
                    let inside2 = c2.rotation_inside(m, v).unwrap();
                    if inside2.iter().all(|d| inside.contains(d)) {
                        prop_assert!(rainbows(&der, c2).contains(&v));
                    }
                }
            }
        }
    }

    /// Reordering strings, reversing them and translating the picture do not
    /// change whether there is an obstruction.
    #[test]
    fn relabel_invariance(seed in any::<u64>(), shift in 0i64..7, rot in 0usize..6) {
        let (lines, sigma) = instance(seed);
        let base = find_obstruction(&sigma).unwrap().is_some();
        let mut moved: Vec<Polyline> = lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let mut pts: Vec<(i64, i64)> = l.points.iter().map(|p| {
                    let (x, y) = p.to_f64();
                    (x as i64 + shift, y as i64 - shift)
                }).collect();
                if i % 2 == 0 {
                    pts.reverse();
                }
                Polyline::ints(format!("t{i}"), &pts)
            })
            .collect();
        let k = moved.len();
        moved.rotate_left(rot % k);
        let other = polylines_to_stringset(&moved).unwrap();
        prop_assert_eq!(find_obstruction(&other).unwrap().is_some(), base);
    }

    /// Writing a string set out and reading it back gives the same set, and a
    /// second round trip gives the same bytes.
    #[test]
    fn rebuild_is_idempotent(seed in any::<u64>()) {
        let (_, sigma) = instance(seed);
        let doc = stringset_to_doc(&sigma);
        let back = load_drawing(&doc).unwrap().sigma;
        prop_assert_eq!(back.fingerprint(), sigma.fingerprint());
        let again = stringset_to_doc(&back);
        prop_assert_eq!(serialize_drawing(&again), serialize_drawing(&doc));
    }

    /// Subdividing a segment keeps obstruction existence.
    #[test]
    fn subdivision_keeps_verdict(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let (_, sigma) = instance(seed);
        let segs: Vec<_> = sigma.strings().flat_map(|s| s.segs.clone()).collect();
        let g = segs[pick.index(segs.len())];
        let mut sub = sigma.clone();
        sub.subdivide_segment(g).unwrap();
        prop_assert_eq!(
            brute_force_obstruction(&sub, 64).unwrap().is_some(),
            brute_force_obstruction(&sigma, 64).unwrap().is_some()
        );
    }
}
