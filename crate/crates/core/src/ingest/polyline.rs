//! Exact construction of a string set from polylines.

use crate::error::{Error, Result};
use crate::geom::{cmp_direction, param_along, segment_intersection, signed_area2, winding_number, Pt, SegHit, Q};
use crate::ids::{Dart, End, HalfSeg, PointId};
use crate::stringset::{Derived, Enclosure, StringSet, Violation};
use num_traits::Signed;
use std::collections::{BTreeMap, BTreeSet};

/// A polyline with exact rational vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyline {
    pub id: String,
    pub points: Vec<Pt>,
}

impl Polyline {
    pub fn new(id: impl Into<String>, points: Vec<Pt>) -> Self {
        Polyline { id: id.into(), points }
    }

    /// Convenience constructor from integer coordinates.
    pub fn ints(id: impl Into<String>, pts: &[(i64, i64)]) -> Self {
        Polyline::new(id, pts.iter().map(|&(x, y)| Pt::int(x, y)).collect())
    }
}

struct Piece {
    line: usize,
    a: Pt,
    b: Pt,
}

/// Builds `Σ` from polylines: every pairwise segment intersection becomes a
/// shared point, rotations come from exact angles and the unbounded face of each
/// component is the one with non-positive signed area.
pub fn polylines_to_stringset(lines: &[Polyline]) -> Result<StringSet> {
    let mut ids = BTreeSet::new();
    for (i, l) in lines.iter().enumerate() {
        if !ids.insert(l.id.as_str()) {
            return Err(Error::schema(
                format!("/polylines/{i}/id"),
                format!("duplicate id {}", l.id),
            ));
        }
        if l.points.len() < 2 {
            return Err(Error::schema(format!("/polylines/{i}/points"), "fewer than two points"));
        }
        for (k, w) in l.points.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::schema(
                    format!("/polylines/{i}/points/{}", k + 1),
                    "repeated point",
                ));
            }
        }
    }
    let mut pieces = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        for w in l.points.windows(2) {
            pieces.push(Piece {
                line: i,
                a: w[0].clone(),
                b: w[1].clone(),
            });
        }
    }
    let mut on_piece: Vec<Vec<Pt>> = pieces.iter().map(|p| vec![p.a.clone(), p.b.clone()]).collect();
    let mut provenance: BTreeMap<Pt, BTreeSet<String>> = BTreeMap::new();
    for (i, l) in lines.iter().enumerate() {
        for (k, p) in l.points.iter().enumerate() {
            provenance
                .entry(p.clone())
                .or_default()
                .insert(format!("{}[{k}]", lines[i].id));
        }
    }
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let (p, q) = (&pieces[i], &pieces[j]);
            match segment_intersection(&p.a, &p.b, &q.a, &q.b) {
                SegHit::None => {}
                SegHit::Overlap => {
                    return Err(Error::OverlapViolation(format!(
                        "{} and {} share a segment",
                        lines[p.line].id, lines[q.line].id
                    )))
                }
                SegHit::Point(x) => {
                    on_piece[i].push(x.clone());
                    on_piece[j].push(x.clone());
                    if p.line != q.line {
                        let (a, b) = (&lines[p.line].id, &lines[q.line].id);
                        let (a, b) = if a <= b { (a, b) } else { (b, a) };
                        provenance.entry(x).or_default().insert(format!("{a}×{b}"));
                    }
                }
            }
        }
    }
    // Point universe, labelled in coordinate order.
    let mut all: BTreeSet<Pt> = BTreeSet::new();
    for v in &on_piece {
        all.extend(v.iter().cloned());
    }
    let mut sigma = StringSet::new();
    let mut pid: BTreeMap<Pt, PointId> = BTreeMap::new();
    for (i, p) in all.iter().enumerate() {
        let prov = provenance
            .get(p)
            .map(|s| s.iter().cloned().collect())
            .unwrap_or_default();
        pid.insert(p.clone(), sigma.add_point(format!("p{i}"), Some(p.clone()), prov));
    }
    let mut piece_idx = 0;
    for l in lines {
        let mut nodes: Vec<PointId> = Vec::new();
        for _ in 0..l.points.len() - 1 {
            let pc = &pieces[piece_idx];
            let mut pts = on_piece[piece_idx].clone();
            pts.sort_by_key(|x| param_along(&pc.a, &pc.b, x));
            pts.dedup();
            for x in pts {
                let id = pid[&x];
                if nodes.last() != Some(&id) {
                    nodes.push(id);
                }
            }
            piece_idx += 1;
        }
        sigma.add_string(l.id.clone(), nodes);
    }
    // Self-crossings: interior nodes must be distinct.
    for s in sigma.strings() {
        let n = s.nodes.len();
        let mut seen = BTreeSet::new();
        for &p in &s.nodes[1..n - 1] {
            if !seen.insert(p) {
                return Err(Error::SelfCrossViolation(format!(
                    "{} at {:?}",
                    s.label,
                    sigma.point(p).coords.as_ref().unwrap()
                )));
            }
        }
    }
    // Rotations by exact angle.
    for p in sigma.live_points() {
        let here = sigma.point(p).coords.clone().unwrap();
        let mut hs: Vec<(Pt, HalfSeg)> = sigma
            .raw_rotation(p)
            .iter()
            .map(|&h| {
                let seg = sigma.segment(h.seg);
                let other = if h.end == End::From { seg.to } else { seg.from };
                (sigma.point(other).coords.clone().unwrap().sub(&here), h)
            })
            .collect();
        hs.sort_by(|a, b| cmp_direction(&a.0, &b.0));
        sigma.set_rotation(p, hs.into_iter().map(|x| x.1).collect());
    }
    if let Some(v) = sigma.validate_general_position().into_iter().next() {
        return Err(match v {
            Violation::Tangency { .. } => Error::TangencyViolation(v.to_string()),
            Violation::SelfCross { .. } => Error::SelfCrossViolation(v.to_string()),
            Violation::Overlap { .. } => Error::OverlapViolation(v.to_string()),
            Violation::Structure(m) => Error::InternalInconsistency(m),
        });
    }
    assign_outer_faces(&mut sigma)?;
    Ok(sigma)
}

fn face_polygon(sigma: &StringSet, der: &Derived, walk: &[Dart]) -> Vec<Pt> {
    let mut poly = Vec::new();
    for &d in walk {
        let pts = der.dart_points(d);
        for p in &pts[..pts.len() - 1] {
            poly.push(sigma.point(*p).coords.clone().unwrap());
        }
    }
    poly
}

/// Sets outer marks and enclosures from coordinates.
pub(crate) fn assign_outer_faces(sigma: &mut StringSet) -> Result<()> {
    let der = sigma.derive_topology()?;
    let map = &der.map;
    let ncomp = map.component_count();
    let areas: Vec<Q> = map
        .trace_faces()
        .iter()
        .map(|w| signed_area2(&face_polygon(sigma, &der, w)))
        .collect();
    let mut outer: Vec<Option<usize>> = vec![None; ncomp];
    for f in 0..map.face_count() {
        let c = map.face_component(crate::ids::FaceId(f as u32));
        if outer[c].map(|o| areas[f] < areas[o]).unwrap_or(true) {
            outer[c] = Some(f);
        }
    }
    let marks: Vec<HalfSeg> = outer
        .iter()
        .map(|f| der.dart_halfseg(map.trace_faces()[f.unwrap()][0]))
        .collect();
    let mut enclosures = Vec::new();
    for k in 0..ncomp {
        let probe_v = map.vertices_of_component(k)[0];
        let probe = sigma.point(der.point(probe_v)).coords.clone().unwrap();
        let mut best: Option<(Q, usize)> = None;
        for f in 0..map.face_count() {
            let c = map.face_component(crate::ids::FaceId(f as u32));
            if c == k || Some(f) == outer[c] {
                continue;
            }
            let poly = face_polygon(sigma, &der, &map.trace_faces()[f]);
            if winding_number(&poly, &probe) != 0 {
                let a = areas[f].abs();
                if best.as_ref().map(|(b, _)| a < *b).unwrap_or(true) {
                    best = Some((a, f));
                }
            }
        }
        if let Some((_, f)) = best {
            enclosures.push(Enclosure {
                inner: marks[k],
                face: der.dart_halfseg(map.trace_faces()[f][0]),
            });
        }
    }
    sigma.set_outer_marks(marks);
    sigma.set_enclosures(enclosures);
    sigma.derived()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_crossing_segments() {
        let s = polylines_to_stringset(&[
            Polyline::ints("a", &[(0, 0), (4, 4)]),
            Polyline::ints("b", &[(0, 4), (4, 0)]),
        ])
        .unwrap();
        let d = s.derived().unwrap();
        assert_eq!(
            (d.map.vertex_count(), d.map.edge_count(), d.map.face_count()),
            (5, 4, 1)
        );
        let c = d.vertex(s.find_point("p2").unwrap()).unwrap();
        let strings: Vec<_> = d.map.rotation(c).iter().map(|x| d.dart_string(*x)).collect();
        assert_ne!(strings[0], strings[1]);
        assert_eq!(strings[0], strings[2]);
    }

    #[test]
    fn overlap_and_tangency_are_rejected() {
        let e = polylines_to_stringset(&[
            Polyline::ints("a", &[(0, 0), (2, 0)]),
            Polyline::ints("b", &[(1, 0), (3, 0)]),
        ])
        .unwrap_err();
        assert!(matches!(e, Error::OverlapViolation(_)));
        let e = polylines_to_stringset(&[
            Polyline::ints("a", &[(0, 0), (2, 2), (4, 0)]),
            Polyline::ints("b", &[(0, 4), (2, 2), (4, 4)]),
        ])
        .unwrap_err();
        assert!(matches!(e, Error::TangencyViolation(_)));
    }

    #[test]
    fn nested_component_gets_enclosure() {
        let s = polylines_to_stringset(&[
            Polyline::ints("box", &[(0, 0), (10, 0), (10, 10), (0, 10), (0, 0)]),
            Polyline::ints("in", &[(3, 3), (5, 5)]),
        ])
        .unwrap();
        assert_eq!(s.enclosures().len(), 1);
        assert_eq!(s.derived().unwrap().map.component_count(), 2);
    }
}
