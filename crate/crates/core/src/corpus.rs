//! Seeded random geometric instances.

use crate::ingest::doc::{DrawingDoc, Payload};
use crate::ingest::{polylines_to_stringset, Polyline};
use crate::stringset::StringSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_617;

#[derive(Clone, Copy, Debug)]
pub struct CorpusParams {
    pub max_strings: usize,
    pub max_segments: usize,
    /// Coordinates are drawn from `0..=coord_max`.
    pub coord_max: i64,
    pub max_vertices: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_strings: 6,
            max_segments: 3,
            coord_max: 20,
            max_vertices: 16,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub index: usize,
    pub lines: Vec<Polyline>,
    pub sigma: StringSet,
}

impl Instance {
    pub fn doc(&self) -> DrawingDoc {
        DrawingDoc {
            payload: Payload::Geometric(self.lines.clone()),
            graph_vertices: None,
        }
    }
}

fn draw(rng: &mut ChaCha8Rng, p: &CorpusParams) -> Vec<Polyline> {
    let n = rng.gen_range(1..=p.max_strings);
    (0..n)
        .map(|i| {
            let segs = rng.gen_range(1..=p.max_segments);
            let pts: Vec<(i64, i64)> = (0..=segs)
                .map(|_| (rng.gen_range(0..=p.coord_max), rng.gen_range(0..=p.coord_max)))
                .collect();
            Polyline::ints(format!("s{i}"), &pts)
        })
        .collect()
}

/// `count` instances in general position whose maps have at most
/// `max_vertices` vertices. Draws that fail are skipped, so the output only
/// depends on the seed and the parameters.
pub fn generate(seed: u64, count: usize, params: CorpusParams) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let lines = draw(&mut rng, &params);
        let sigma = match polylines_to_stringset(&lines) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let small = sigma
            .derived()
            .map(|d| d.map.vertex_count() <= params.max_vertices)
            .unwrap_or(false);
        if small {
            out.push(Instance {
                index: out.len(),
                lines,
                sigma,
            });
        }
    }
    out
}
