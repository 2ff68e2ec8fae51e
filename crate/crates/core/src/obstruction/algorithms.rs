//! Polynomial obstruction search by peeling the outer boundary.
//!
//! Every step removes an outer vertex that no obstruction of interest passes
//! through, using `Σ − x`; cycles are tracked by their segment sets, which
//! survive removals unchanged. Candidate choices always take the lowest point id.
//!
//! The main loop differs from a literal "pick any rainbow of an outer cycle"
//! rule: a rainbow of an outer cycle need not be an outer-rainbow (it can have two
//! darts of one string outside the cycle), so the loop first discards outer
//! vertices lying on no cycle, then looks for an outer block boundary that either
//! has at most two rainbows or has an outer-rainbow among its rainbows.
//! The fixed-vertex search handles every block through `x` separately, peeling
//! the block boundary to the outside first, so that every rainbow it meets is an
//! outer-rainbow.

use super::oracle::brute_force_obstruction;
use super::{is_obstruction, outer_rainbows, rainbows, ObstructionReport, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::ids::{PointId, SegId};
use crate::planegraph::CycleRef;
use crate::stringset::{Derived, StringSet};
use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Vertex cap for the exhaustive fallback.
    pub cap: usize,
    /// Fall back to exhaustive search when the peeling loop cannot proceed or a
    /// result fails verification (only under the cap).
    pub fallback: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: DEFAULT_CAP,
            fallback: true,
        }
    }
}

type Segs = BTreeSet<SegId>;

/// Raised internally when no outer cycle qualifies.
struct Stuck(String);

struct Ctx {
    trace: Vec<String>,
}

impl Ctx {
    fn log(&mut self, s: &StringSet, msg: impl AsRef<str>, p: Option<PointId>) {
        let m = match p {
            Some(p) => format!("{} {}", msg.as_ref(), s.point_label(p)),
            None => msg.as_ref().to_string(),
        };
        self.trace.push(m);
    }
}

fn comp_of_point(s: &StringSet, p: PointId) -> Result<Option<StringSet>> {
    let der = s.derived()?;
    let v = match der.vertex(p) {
        Some(v) => v,
        None => return Ok(None),
    };
    if der.map.component_count() == 1 {
        return Ok(Some(s.clone()));
    }
    Ok(Some(s.restrict_to_component(der.map.component_of(v))?))
}

fn cycle_in(der: &Derived, segs: &Segs) -> Result<CycleRef> {
    der.cycle_from_segs(segs)
        .map_err(|e| Error::InternalInconsistency(format!("tracked cycle lost: {e}")))
}

/// Removes outer vertices off the cycle until it bounds the unbounded face.
fn peel(mut s: StringSet, segs: &Segs, ctx: &mut Ctx) -> Result<StringSet> {
    loop {
        let der = s.derived()?;
        let c = cycle_in(&der, segs)?;
        let comp = der.map.component_of(c.vertices[0]);
        if der.map.component_count() > 1 {
            s = s.restrict_to_component(comp)?;
            continue;
        }
        if der.map.is_outer_boundary(&c) {
            return Ok(s);
        }
        let w = der
            .map
            .outer_vertices()
            .into_iter()
            .filter(|v| !c.contains_vertex(*v))
            .map(|v| der.point(v))
            .min()
            .ok_or_else(|| Error::InternalInconsistency("cycle is not peelable to the outer boundary".into()))?;
        ctx.log(&s, "peel", Some(w));
        s = s.remove_vertex(w)?;
    }
}

/// Obstruction through the two outer-rainbows `x` and `y`.
fn alg_xy(s: &StringSet, x: PointId, y: PointId, ctx: &mut Ctx) -> Result<Option<Segs>> {
    let mut s = match comp_of_point(s, x)? {
        Some(s) => s,
        None => return Ok(None),
    };
    loop {
        let der = s.derived()?;
        let (vx, vy) = match (der.vertex(x), der.vertex(y)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(None),
        };
        let blocks = der.map.biconnected_blocks();
        let block = blocks
            .blocks
            .iter()
            .find(|b| b.cyclic && b.vertices.contains(&vx) && b.vertices.contains(&vy));
        let block = match block {
            Some(b) => b,
            None => {
                ctx.log(&s, "no common cycle", None);
                return Ok(None);
            }
        };
        let c = der
            .map
            .block_outer_cycle(block)
            .ok_or_else(|| Error::InternalInconsistency("block without boundary".into()))?;
        let segs = der.cycle_segs(&c);
        s = peel(s, &segs, ctx)?;
        let der = s.derived()?;
        let c = cycle_in(&der, &segs)?;
        let z = rainbows(&der, &c)
            .into_iter()
            .map(|v| der.point(v))
            .filter(|&p| p != x && p != y)
            .min();
        match z {
            Some(z) => {
                ctx.log(&s, "drop rainbow", Some(z));
                s = s.remove_vertex(z)?;
                s = match comp_of_point(&s, x)? {
                    Some(s) => s,
                    None => return Ok(None),
                };
            }
            None => return Ok(Some(segs)),
        }
    }
}

/// Obstruction through `x`, a vertex that is a rainbow of every cycle through it.
fn alg_x(s: &StringSet, x: PointId, ctx: &mut Ctx, depth: usize) -> Result<Option<Segs>> {
    let s = match comp_of_point(s, x)? {
        Some(s) => s,
        None => return Ok(None),
    };
    let der = s.derived()?;
    let vx = der.vertex(x).unwrap();
    let blocks = der.map.biconnected_blocks();
    for block in blocks.blocks.iter().filter(|b| b.cyclic && b.vertices.contains(&vx)) {
        let c = der
            .map
            .block_outer_cycle(block)
            .ok_or_else(|| Error::InternalInconsistency("block without boundary".into()))?;
        let segs = der.cycle_segs(&c);
        ctx.log(&s, format!("[{depth}] block through"), Some(x));
        let s1 = peel(s.clone(), &segs, ctx)?;
        let d1 = s1.derived()?;
        let c1 = cycle_in(&d1, &segs)?;
        let others: Vec<PointId> = {
            let mut v: Vec<PointId> = rainbows(&d1, &c1)
                .into_iter()
                .map(|v| d1.point(v))
                .filter(|&p| p != x)
                .collect();
            v.sort();
            v
        };
        if others.len() <= 1 {
            return Ok(Some(segs));
        }
        let y = others[0];
        ctx.log(&s1, "pair with", Some(y));
        if let Some(r) = alg_xy(&s1, x, y, ctx)? {
            return Ok(Some(r));
        }
        ctx.log(&s1, "drop", Some(y));
        let s2 = s1.remove_vertex(y)?;
        if let Some(r) = alg_x(&s2, x, ctx, depth + 1)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

fn split(s: StringSet) -> Result<Vec<StringSet>> {
    let der = s.derived()?;
    match der.map.component_count() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![s]),
        _ => s.components(),
    }
}

fn alg_main(sigma: &StringSet, ctx: &mut Ctx) -> Result<std::result::Result<Option<Segs>, Stuck>> {
    let mut queue: VecDeque<StringSet> = split(sigma.clone())?.into();
    while let Some(mut s) = queue.pop_front() {
        loop {
            let der: Arc<Derived> = s.derived()?;
            if der.map.cycle_rank() == 0 {
                break;
            }
            let blocks = der.map.biconnected_blocks();
            let mut on_cycle = vec![false; der.map.vertex_count()];
            for b in blocks.blocks.iter().filter(|b| b.cyclic) {
                for v in &b.vertices {
                    on_cycle[v.index()] = true;
                }
            }
            let idle = der
                .map
                .outer_vertices()
                .into_iter()
                .filter(|v| !on_cycle[v.index()])
                .map(|v| der.point(v))
                .min();
            if let Some(w) = idle {
                ctx.log(&s, "discard acyclic", Some(w));
                let mut parts = split(s.remove_vertex(w)?)?;
                if parts.is_empty() {
                    break;
                }
                s = parts.remove(0);
                queue.extend(parts);
                continue;
            }
            let outer = der.map.outer_face(0);
            let outer_rb: BTreeSet<PointId> = outer_rainbows(&der).into_iter().map(|v| der.point(v)).collect();
            let mut pick: Option<PointId> = None;
            for b in blocks.blocks.iter().filter(|b| b.cyclic) {
                let touches = b.edges.iter().any(|e| {
                    der.map.face_of(crate::ids::Dart::forward(*e)) == outer
                        || der.map.face_of(crate::ids::Dart::backward(*e)) == outer
                });
                if !touches {
                    continue;
                }
                let c = match der.map.block_outer_cycle(b) {
                    Some(c) => c,
                    None => continue,
                };
                let r = rainbows(&der, &c);
                if r.len() <= 2 {
                    ctx.log(&s, format!("outer cycle with {} rainbows", r.len()), None);
                    return Ok(Ok(Some(der.cycle_segs(&c))));
                }
                if let Some(x) = r.iter().map(|v| der.point(*v)).filter(|p| outer_rb.contains(p)).min() {
                    pick = Some(x);
                    break;
                }
            }
            let x = match pick {
                Some(x) => x,
                None => return Ok(Err(Stuck("no outer cycle offers an outer-rainbow".into()))),
            };
            ctx.log(&s, "search through", Some(x));
            if let Some(r) = alg_x(&s, x, ctx, 0)? {
                return Ok(Ok(Some(r)));
            }
            ctx.log(&s, "drop", Some(x));
            let mut parts = split(s.remove_vertex(x)?)?;
            if parts.is_empty() {
                break;
            }
            s = parts.remove(0);
            queue.extend(parts);
        }
    }
    Ok(Ok(None))
}

/// Checks a candidate against the original set and builds the report.
fn finish(
    sigma: &StringSet,
    segs: Option<Segs>,
    ctx: Ctx,
    opts: SearchOptions,
    fallback: impl Fn() -> Result<Option<ObstructionReport>>,
) -> Result<Option<ObstructionReport>> {
    let segs = match segs {
        None => return Ok(None),
        Some(s) => s,
    };
    let der = sigma.derived()?;
    let verified = der.cycle_from_segs(&segs).ok().filter(|c| is_obstruction(&der, c).0);
    match verified {
        Some(c) => Ok(Some(ObstructionReport::from_cycle(sigma, &der, &c, ctx.trace))),
        None => {
            if opts.fallback && der.map.vertex_count() <= opts.cap {
                fallback()
            } else {
                Err(Error::InternalInconsistency(
                    "returned cycle is not an obstruction".into(),
                ))
            }
        }
    }
}

/// A loop edge runs along one string, so it switches strings nowhere and has no rainbow.
fn loop_obstruction(sigma: &StringSet) -> Result<Option<ObstructionReport>> {
    let der = sigma.derived()?;
    match der.map.edges().find(|&e| der.map.is_loop(e)) {
        Some(e) => {
            let c = der.map.cycle_from_edges(&[e])?;
            let trace = vec![format!("loop at {}", sigma.point_label(der.point(c.vertices[0])))];
            Ok(Some(ObstructionReport::from_cycle(sigma, &der, &c, trace)))
        }
        None => Ok(None),
    }
}

/// Finds an obstruction of `Σ` or proves there is none.
pub fn find_obstruction(sigma: &StringSet) -> Result<Option<ObstructionReport>> {
    find_obstruction_with(sigma, SearchOptions::default())
}

pub fn find_obstruction_with(sigma: &StringSet, opts: SearchOptions) -> Result<Option<ObstructionReport>> {
    let mut ctx = Ctx { trace: Vec::new() };
    let oracle = || brute_force_obstruction(sigma, opts.cap);
    if let Some(r) = loop_obstruction(sigma)? {
        return Ok(Some(r));
    }
    match alg_main(sigma, &mut ctx)? {
        Ok(segs) => finish(sigma, segs, ctx, opts, oracle),
        Err(Stuck(msg)) => {
            let n = sigma.derived()?.map.vertex_count();
            if opts.fallback && n <= opts.cap {
                oracle()
            } else {
                Err(Error::InternalInconsistency(msg))
            }
        }
    }
}

fn check_outer_rainbow(sigma: &StringSet, p: PointId) -> Result<()> {
    let der = sigma.derived()?;
    let ok = der
        .vertex(p)
        .map(|v| outer_rainbows(&der).contains(&v))
        .unwrap_or(false);
    if ok {
        Ok(())
    } else {
        Err(Error::VertexNotOnOuterFace(format!(
            "{} (not an outer-rainbow)",
            sigma.point_label(p)
        )))
    }
}

/// Obstruction through the outer-rainbow `x`, if any.
pub fn find_obstruction_x(sigma: &StringSet, x: PointId) -> Result<Option<ObstructionReport>> {
    check_outer_rainbow(sigma, x)?;
    let mut ctx = Ctx { trace: Vec::new() };
    let segs = alg_x(sigma, x, &mut ctx, 0)?;
    finish(
        sigma,
        segs,
        ctx,
        SearchOptions {
            fallback: false,
            ..Default::default()
        },
        || Ok(None),
    )
}

/// Obstruction through the outer-rainbows `x` and `y`, if any.
pub fn find_obstruction_xy(sigma: &StringSet, x: PointId, y: PointId) -> Result<Option<ObstructionReport>> {
    check_outer_rainbow(sigma, x)?;
    check_outer_rainbow(sigma, y)?;
    let mut ctx = Ctx { trace: Vec::new() };
    let segs = alg_xy(sigma, x, y, &mut ctx)?;
    finish(
        sigma,
        segs,
        ctx,
        SearchOptions {
            fallback: false,
            ..Default::default()
        },
        || Ok(None),
    )
}
