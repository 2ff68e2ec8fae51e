//! Minimal forbidden configurations: an obstruction with the fewest string
//! switches, cut into single-string paths, with the tails that reach into its
//! bounded side kept as short stubs.

use crate::error::{Error, Result};
use crate::ids::{Dart, End, HalfSeg, PointId, SegId, StringId};
use crate::ingest::doc::{DrawingDoc, Payload};
use crate::ingest::{polylines_to_stringset, stringset_to_doc, Polyline};
use crate::obstruction::{brute_force_min_delta, is_obstruction, ObstructionReport};
use crate::stringset::StringSet;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JunctionKind {
    /// An end of at least one of the two strings.
    Dot,
    /// A crossing of the two strings.
    InteriorCrossing,
}

#[derive(Clone, Debug, Serialize)]
pub struct Junction {
    pub point: String,
    pub kind: JunctionKind,
    pub rainbow: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubString {
    /// Label of the input string this piece is cut from.
    pub source: String,
    /// Points along the piece, stubs included.
    pub nodes: Vec<String>,
    /// Whether the piece was extended past its first and last junction.
    pub extended: [bool; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct ForbiddenConfig {
    /// `strings[i]` runs from `junctions[i]` to `junctions[i + 1]` (cyclically).
    pub strings: Vec<SubString>,
    pub junctions: Vec<Junction>,
    pub rainbows: usize,
    pub cycle: ObstructionReport,
    /// The configuration on its own.
    #[serde(skip)]
    pub sigma: StringSet,
}

impl ForbiddenConfig {
    /// The configuration as a document: geometric when every point has
    /// coordinates, combinatorial otherwise.
    pub fn standalone_doc(&self) -> DrawingDoc {
        let sigma = &self.sigma;
        let lines: Option<Vec<Polyline>> = sigma
            .strings()
            .map(|s| {
                let pts: Option<Vec<_>> = s.nodes.iter().map(|&p| sigma.point(p).coords.clone()).collect();
                pts.map(|p| Polyline::new(s.label.clone(), p))
            })
            .collect();
        match lines {
            Some(lines) => DrawingDoc {
                payload: Payload::Geometric(lines),
                graph_vertices: None,
            },
            None => stringset_to_doc(sigma),
        }
    }
}

/// Rainbow count and string count.
pub fn classify_config(cfg: &ForbiddenConfig) -> (usize, usize) {
    (cfg.rainbows, cfg.strings.len())
}

/// Whether `Σ` has exactly one cycle and that cycle is an obstruction.
pub fn defining_cycle_is_obstruction(sigma: &StringSet) -> Result<bool> {
    let der = sigma.derived()?;
    let blocks = der.map.biconnected_blocks();
    let cyclic: Vec<_> = blocks.blocks.iter().filter(|b| b.cyclic).collect();
    if cyclic.len() != 1 || der.map.cycle_rank() != 1 {
        return Ok(false);
    }
    let c = der
        .map
        .block_outer_cycle(cyclic[0])
        .ok_or_else(|| Error::InternalInconsistency("block without boundary".into()))?;
    Ok(is_obstruction(&der, &c).0)
}

/// Builds the forbidden configuration of the obstruction with the fewest string
/// switches. Needs the map to be within `cap` vertices.
pub fn extract_forbidden(sigma: &StringSet, cap: usize) -> Result<ForbiddenConfig> {
    let rep = brute_force_min_delta(sigma, cap)?.ok_or(Error::NoObstruction)?;
    let der = sigma.derived()?;
    let map = &der.map;
    let c = der.cycle_from_segs(&rep.segs)?;
    let k = c.darts.len();
    let cuts: Vec<usize> = (0..k)
        .filter(|&i| der.dart_string(c.darts[i]) != der.dart_string(c.darts[(i + k - 1) % k]))
        .collect();
    if cuts.len() < 2 {
        return Err(Error::NotGood(
            "the obstruction runs along a single closed string".into(),
        ));
    }
    let rainbow_pts: BTreeSet<String> = rep.rainbows.iter().cloned().collect();
    let m = cuts.len();

    struct Piece {
        string: StringId,
        from: PointId,
        to: PointId,
        /// Tail segments to stub at the start and at the end.
        tails: [Option<SegId>; 2],
    }
    let mut pieces = Vec::new();
    for i in 0..m {
        let (a, b) = (cuts[i], cuts[(i + 1) % m]);
        let s = der.dart_string(c.darts[a]);
        let from = der.point(c.vertices[a]);
        let to = der.point(c.vertices[b]);
        let st = sigma.string(s);
        let pos = |p: PointId| st.nodes.iter().position(|&n| n == p);
        let (pa, pb) = match (pos(from), pos(to)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(Error::InternalInconsistency("cycle path leaves its string".into())),
        };
        // The path runs forwards along the string when its first dart is forward.
        let first = der.dart_halfseg(c.darts[a]);
        let forward = first.end == End::From;
        let (lo, hi) = if forward { (pa, pb) } else { (pb, pa) };
        if lo > hi || (lo == hi && m > 1) {
            return Err(Error::InternalInconsistency(
                "cycle path wraps around its string".into(),
            ));
        }
        let inside_at = |p: PointId, h: HalfSeg| -> Result<bool> {
            let v = der.vertex(p).expect("junction is a vertex");
            let d: Dart = der.halfseg_dart(h).expect("live segment");
            Ok(c.rotation_inside(map, v)?.contains(&d))
        };
        let mut tails = [None, None];
        // Tail before `from` and after `to`, in path direction.
        let before = if forward {
            (pa > 0).then(|| HalfSeg::new(st.segs[pa - 1], End::To))
        } else {
            (pa < st.segs.len()).then(|| HalfSeg::new(st.segs[pa], End::From))
        };
        let after = if forward {
            (pb < st.segs.len()).then(|| HalfSeg::new(st.segs[pb], End::From))
        } else {
            (pb > 0).then(|| HalfSeg::new(st.segs[pb - 1], End::To))
        };
        if let Some(h) = before {
            if inside_at(from, h)? {
                tails[0] = Some(h.seg);
            }
        }
        if let Some(h) = after {
            if inside_at(to, h)? {
                tails[1] = Some(h.seg);
            }
        }
        pieces.push(Piece {
            string: s,
            from,
            to,
            tails,
        });
    }
    let distinct: BTreeSet<StringId> = pieces.iter().map(|p| p.string).collect();
    if distinct.len() != pieces.len() {
        return Err(Error::NotGood("two paths of the obstruction lie on one string".into()));
    }

    // Stub every inside tail at the middle of its first segment.
    let mut next = sigma.clone();
    let mut stub: BTreeMap<SegId, PointId> = BTreeMap::new();
    for p in &pieces {
        for g in p.tails.iter().flatten() {
            let (mid, _, _) = next.subdivide_segment(*g)?;
            stub.insert(*g, mid);
        }
    }
    let mut strings = Vec::new();
    for p in &pieces {
        let st = next.string(p.string).clone();
        let pos = |q: PointId| st.nodes.iter().position(|&n| n == q).expect("node on string");
        let ends = [
            p.tails[0].map(|g| stub[&g]).unwrap_or(p.from),
            p.tails[1].map(|g| stub[&g]).unwrap_or(p.to),
        ];
        let (i, j) = (pos(ends[0]), pos(ends[1]));
        next.truncate_string(p.string, i.min(j), i.max(j));
        let mut nodes: Vec<String> = next
            .string(p.string)
            .nodes
            .iter()
            .map(|&q| next.point_label(q).to_string())
            .collect();
        if i > j {
            nodes.reverse();
        }
        strings.push(SubString {
            source: st.label.clone(),
            nodes,
            extended: [p.tails[0].is_some(), p.tails[1].is_some()],
        });
    }
    let mark = der.dart_halfseg(c.darts[0].twin());
    let standalone = next.retain_strings(&distinct, vec![mark]);
    let junctions = pieces
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let prev = &pieces[(i + m - 1) % m];
            let is_end = sigma.string(p.string).is_end(p.from) || sigma.string(prev.string).is_end(p.from);
            let label = sigma.point_label(p.from).to_string();
            Junction {
                kind: if is_end {
                    JunctionKind::Dot
                } else {
                    JunctionKind::InteriorCrossing
                },
                rainbow: rainbow_pts.contains(&label),
                point: label,
            }
        })
        .collect();
    Ok(ForbiddenConfig {
        strings,
        junctions,
        rainbows: rep.rainbows.len(),
        cycle: rep,
        sigma: standalone,
    })
}

/// Re-ingests the standalone configuration and checks its cycle.
pub fn recheck_standalone(cfg: &ForbiddenConfig) -> Result<bool> {
    let doc = cfg.standalone_doc();
    let sigma = match &doc.payload {
        Payload::Geometric(lines) => polylines_to_stringset(lines)?,
        Payload::Combinatorial(_) => crate::ingest::load_drawing(&doc)?.sigma,
    };
    defining_cycle_is_obstruction(&sigma)
}
