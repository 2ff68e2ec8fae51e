//! Built-in drawings used by tests, examples and the shipped `fixtures/` files.

use super::doc::{DrawingDoc, GraphVertices, Payload};
use super::polyline::{polylines_to_stringset, Polyline};
use crate::geom::{orient, Pt};
use crate::kn::good_drawing_violations;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

fn geometric(lines: Vec<Polyline>, vertices: Option<&[(i64, i64)]>) -> DrawingDoc {
    DrawingDoc {
        payload: Payload::Geometric(lines),
        graph_vertices: vertices.map(|v| GraphVertices::Coords(v.iter().map(|&(x, y)| Pt::int(x, y)).collect())),
    }
}

fn pl(id: &str, pts: &[(i64, i64)]) -> Polyline {
    Polyline::ints(id, pts)
}

/// Two segments crossing once.
pub fn fix_x() -> DrawingDoc {
    geometric(vec![pl("s0", &[(0, 0), (4, 4)]), pl("s1", &[(0, 4), (4, 0)])], None)
}

/// Two disjoint parallel segments.
pub fn fix_par() -> DrawingDoc {
    geometric(vec![pl("s0", &[(0, 0), (4, 0)]), pl("s1", &[(0, 2), (4, 2)])], None)
}

fn b_lines() -> Vec<Polyline> {
    vec![
        pl("xy", &[(0, 0), (8, 6)]),
        pl("zw", &[(10, 0), (2, 6)]),
        pl("yz", &[(0, 0), (-2, 12), (12, 12), (10, 0)]),
    ]
}

/// The B configuration: `xy` and `zw` cross, `yz` closes the cycle above them.
pub fn fix_b() -> DrawingDoc {
    geometric(b_lines(), None)
}

/// A good K4 whose only crossing lies on the unbounded face.
pub fn fix_k4x_out() -> DrawingDoc {
    let mut lines = b_lines();
    lines.push(pl("xz", &[(8, 6), (10, 0)]));
    lines.push(pl("yw", &[(0, 0), (2, 6)]));
    lines.push(pl("xw", &[(8, 6), (2, 6)]));
    geometric(lines, Some(&[(0, 0), (10, 0), (8, 6), (2, 6)]))
}

/// A convex K4 whose crossing is interior.
pub fn fix_k4x_in() -> DrawingDoc {
    let v = [(0, 0), (4, 0), (4, 4), (0, 4)];
    geometric(complete_straight(&v), Some(&v))
}

/// A planar straight-line K4 (one vertex inside the triangle of the others).
pub fn fix_k4_planar() -> DrawingDoc {
    let v = [(0, 0), (6, 0), (3, 5), (3, 2)];
    geometric(complete_straight(&v), Some(&v))
}

/// The W configuration: two dots joined by two crossings whose tails point inwards.
pub fn fix_w() -> DrawingDoc {
    geometric(
        vec![
            pl("s0", &[(0, 0), (10, 10), (11, 5)]),
            pl("s1", &[(9, 5), (10, 10), (20, 0)]),
            pl("s2", &[(20, 0), (10, -10), (9, -5)]),
            pl("s3", &[(11, -5), (10, -10), (0, 0)]),
        ],
        None,
    )
}

/// Three strings crossing cyclically, every tail inside the triangle.
pub fn fix_tri() -> DrawingDoc {
    geometric(
        vec![
            pl("s0", &[(3, 3), (0, 0), (20, 0), (15, 4)]),
            pl("s1", &[(14, 2), (20, 0), (10, 16), (9, 12)]),
            pl("s2", &[(11, 12), (10, 16), (0, 0), (6, 2)]),
        ],
        None,
    )
}

/// Three strings around a triangle: two crossings with inward tails and one dot.
pub fn fix_dot_chain() -> DrawingDoc {
    geometric(
        vec![
            pl("s1", &[(3, 3), (0, 0), (20, 0), (15, 4)]),
            pl("s0", &[(10, 16), (0, 0), (6, 2)]),
            pl("s2", &[(10, 16), (20, 0), (14, 2)]),
        ],
        None,
    )
}

fn vlabel(i: usize) -> char {
    (b'a' + i as u8) as char
}

fn complete_straight(v: &[(i64, i64)]) -> Vec<Polyline> {
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out.push(pl(&format!("{}{}", vlabel(i), vlabel(j)), &[v[i], v[j]]));
        }
    }
    out
}

fn in_general_position(pts: &[Pt]) -> bool {
    let n = pts.len();
    (0..n).all(|i| (i + 1..n).all(|j| (j + 1..n).all(|k| orient(&pts[i], &pts[j], &pts[k]) != Ordering::Equal)))
}

fn is_good(lines: &[Polyline], v: &[(i64, i64)]) -> bool {
    let sigma = match polylines_to_stringset(lines) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let verts: Option<Vec<_>> = v
        .iter()
        .map(|&(x, y)| {
            let p = Pt::int(x, y);
            (0..sigma.point_count())
                .map(|k| crate::ids::PointId(k as u32))
                .find(|&q| sigma.point(q).coords.as_ref() == Some(&p))
        })
        .collect();
    verts.is_some_and(|vs| good_drawing_violations(&sigma, &vs).is_empty())
}

/// A good drawing of K5 from a seed, retried until the drawing is good.
///
/// Even seeds add a fifth vertex to [`fix_k4x_out`], so the drawing keeps its B
/// configuration. Odd seeds place five random vertices and bend some edges
/// through one random point each.
pub fn good_k5(seed: u64) -> DrawingDoc {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let (v, mut lines, fresh): (Vec<(i64, i64)>, Vec<Polyline>, Vec<(usize, usize)>) = if seed.is_multiple_of(2) {
            let mut v = vec![(0, 0), (10, 0), (8, 6), (2, 6)];
            v.push((rng.gen_range(-6..=16), rng.gen_range(-6..=16)));
            let lines = match fix_k4x_out().payload {
                Payload::Geometric(l) => l,
                Payload::Combinatorial(_) => unreachable!(),
            };
            (v, lines, (0..4).map(|i| (i, 4)).collect())
        } else {
            let v: Vec<(i64, i64)> = (0..5).map(|_| (rng.gen_range(0..=20), rng.gen_range(0..=20))).collect();
            (
                v,
                Vec::new(),
                (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect(),
            )
        };
        let pts: Vec<Pt> = v.iter().map(|&(x, y)| Pt::int(x, y)).collect();
        if !in_general_position(&pts) {
            continue;
        }
        for (i, j) in fresh {
            let id = format!("{}{}", vlabel(i), vlabel(j));
            if rng.gen_bool(0.3) {
                let bend = (rng.gen_range(-8..=28), rng.gen_range(-8..=28));
                lines.push(pl(&id, &[v[i], bend, v[j]]));
            } else {
                lines.push(pl(&id, &[v[i], v[j]]));
            }
        }
        if is_good(&lines, &v) {
            return geometric(lines, Some(&v));
        }
    }
}

/// Seeds of the shipped K5 drawings.
pub const K5_SEEDS: [u64; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

/// Every named fixture, in a fixed order.
pub fn all_fixtures() -> Vec<(String, DrawingDoc)> {
    let mut out: Vec<(String, DrawingDoc)> = vec![
        ("FIX_X".into(), fix_x()),
        ("FIX_PAR".into(), fix_par()),
        ("FIX_B".into(), fix_b()),
        ("FIX_W".into(), fix_w()),
        ("FIX_TRI".into(), fix_tri()),
        ("FIX_DOT_CHAIN".into(), fix_dot_chain()),
        ("FIX_K4X_OUT".into(), fix_k4x_out()),
        ("FIX_K4X_IN".into(), fix_k4x_in()),
        ("FIX_K4_PLANAR".into(), fix_k4_planar()),
    ];
    for s in K5_SEEDS {
        out.push((format!("FIX_K5_{s:02}"), good_k5(s)));
    }
    out
}

pub fn fixture(name: &str) -> Option<DrawingDoc> {
    all_fixtures().into_iter().find(|(n, _)| n == name).map(|(_, d)| d)
}
