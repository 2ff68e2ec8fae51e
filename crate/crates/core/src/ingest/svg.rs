//! SVG output for string sets and arrangements.
//!
//! Drawings with coordinates are drawn as given. Points without coordinates are
//! placed by repeated neighbour averaging, with the unbounded face of every
//! component spread on a circle when nothing is known. Arrangements are drawn as
//! wiring diagrams whose wires run out to the frame.

use crate::error::Result;
use crate::extension::PseudolineArrangement;
use crate::ids::{PointId, SegId};
use crate::stringset::StringSet;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];
const HIGHLIGHT: &str = "#d62728";

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Segments drawn in the highlight colour, e.g. an obstruction's cycle.
    pub highlight: BTreeSet<SegId>,
    pub labels: bool,
    /// Width of the picture in pixels.
    pub width: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            highlight: BTreeSet::new(),
            labels: true,
            width: 480.0,
        }
    }
}

fn f(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Positions for every live point.
fn layout(sigma: &StringSet) -> BTreeMap<PointId, (f64, f64)> {
    let live = sigma.live_points();
    let mut pos: BTreeMap<PointId, (f64, f64)> = BTreeMap::new();
    for &p in &live {
        if let Some(c) = &sigma.point(p).coords {
            pos.insert(p, c.to_f64());
        }
    }
    if pos.len() == live.len() {
        return pos;
    }
    let mut nbrs: BTreeMap<PointId, Vec<PointId>> = BTreeMap::new();
    for s in sigma.strings() {
        for w in s.nodes.windows(2) {
            nbrs.entry(w[0]).or_default().push(w[1]);
            nbrs.entry(w[1]).or_default().push(w[0]);
        }
    }
    let fixed: BTreeSet<PointId> = pos.keys().copied().collect();
    if fixed.is_empty() {
        if let Ok(der) = sigma.derived() {
            let map = &der.map;
            for c in 0..map.component_count() {
                let mut ring: Vec<PointId> = Vec::new();
                for &d in map.face_walk(map.outer_face(c)) {
                    for p in der.dart_points(d) {
                        if ring.last() != Some(&p) && !ring.contains(&p) {
                            ring.push(p);
                        }
                    }
                }
                let k = ring.len().max(1) as f64;
                let cx = 30.0 * c as f64;
                for (i, p) in ring.into_iter().enumerate() {
                    let t = std::f64::consts::TAU * i as f64 / k;
                    pos.insert(p, (cx + 10.0 * t.cos(), 10.0 * t.sin()));
                }
            }
        }
    }
    let known: BTreeSet<PointId> = pos.keys().copied().collect();
    let (mut cx, mut cy) = (0.0, 0.0);
    for v in pos.values() {
        cx += v.0 / pos.len().max(1) as f64;
        cy += v.1 / pos.len().max(1) as f64;
    }
    for &p in &live {
        pos.entry(p).or_insert((cx, cy));
    }
    for _ in 0..200 {
        for &p in &live {
            if known.contains(&p) {
                continue;
            }
            let ns = &nbrs[&p];
            let (mut x, mut y) = (0.0, 0.0);
            for q in ns {
                x += pos[q].0;
                y += pos[q].1;
            }
            let k = ns.len() as f64;
            let (mut x, mut y) = (x / k, y / k);
            if ns.len() == 1 {
                // Push free ends away from the middle of the picture.
                let (dx, dy) = (x - cx, y - cy);
                let len = (dx * dx + dy * dy).sqrt().max(1e-9);
                x += 2.0 * dx / len;
                y += 2.0 * dy / len;
            }
            pos.insert(p, (x, y));
        }
    }
    pos
}

struct Frame {
    min: (f64, f64),
    scale: f64,
    pad: f64,
    height: f64,
    width: f64,
}

impl Frame {
    fn new(pts: impl Iterator<Item = (f64, f64)>, width: f64) -> Frame {
        let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
        for (x, y) in pts {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if lo.0 > hi.0 {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let pad = 24.0;
        let scale = (width - 2.0 * pad) / span;
        let height = (hi.1 - lo.1) * scale + 2.0 * pad;
        Frame {
            min: (lo.0, hi.1),
            scale,
            pad,
            height,
            width,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            self.pad + (x - self.min.0) * self.scale,
            self.pad + (self.min.1 - y) * self.scale,
        )
    }
}

fn header(out: &mut String, fr: &Frame) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">
<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#,
        w = f(fr.width),
        h = f(fr.height)
    );
}

fn polyline(out: &mut String, pts: &[(f64, f64)], color: &str, width: f64, dash: bool) {
    let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{},{}", f(x), f(y))).collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{}"{}/>"#,
        coords.join(" "),
        f(width),
        if dash { r#" stroke-dasharray="4 3""# } else { "" }
    );
}

fn label(out: &mut String, (x, y): (f64, f64), text: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10" fill="black">{}</text>"#,
        f(x + 4.0),
        f(y - 4.0),
        text
    );
}

/// Draws a string set; highlighted segments are drawn on top in red.
pub fn render_svg(sigma: &StringSet, opts: &SvgOptions) -> Vec<u8> {
    let pos = layout(sigma);
    let fr = Frame::new(pos.values().copied(), opts.width);
    let mut out = String::new();
    header(&mut out, &fr);
    for (i, s) in sigma.strings().enumerate() {
        let pts: Vec<(f64, f64)> = s.nodes.iter().map(|p| fr.map(pos[p])).collect();
        polyline(&mut out, &pts, PALETTE[i % PALETTE.len()], 2.0, false);
    }
    for s in sigma.strings() {
        for (i, g) in s.segs.iter().enumerate() {
            if opts.highlight.contains(g) {
                let pts = [fr.map(pos[&s.nodes[i]]), fr.map(pos[&s.nodes[i + 1]])];
                polyline(&mut out, &pts, HIGHLIGHT, 4.0, false);
            }
        }
    }
    if let Ok(der) = sigma.derived() {
        for &p in &der.vertex_point {
            let (x, y) = fr.map(pos[&p]);
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3" fill="black"/>"#, f(x), f(y));
            if opts.labels {
                label(&mut out, (x, y), sigma.point_label(p));
            }
        }
    }
    out.push_str("</svg>\n");
    out.into_bytes()
}

/// Draws an arrangement as a wiring diagram. The wires continue as dashed rays
/// to the left and right edges of the picture.
pub fn render_arrangement_svg(arr: &PseudolineArrangement, opts: &SvgOptions) -> Result<Vec<u8>> {
    let wd = arr.wiring_diagram()?;
    let n = wd.strings.len();
    let cols = wd.events.len();
    let mut level: Vec<f64> = vec![0.0; n];
    for (y, &l) in wd.start.iter().enumerate() {
        level[l] = y as f64;
    }
    let right = 2.0 * cols as f64 + 2.0;
    let mut paths: Vec<Vec<(f64, f64)>> = (0..n).map(|l| vec![(1.0, -level[l])]).collect();
    let mut order = wd.start.clone();
    let mut crossings = Vec::new();
    for (c, (p, i, k)) in wd.events.iter().enumerate() {
        let x = 2.0 * c as f64 + 2.0;
        let mid = *i as f64 + (*k as f64 - 1.0) / 2.0;
        for (j, &l) in order[*i..*i + *k].iter().enumerate() {
            let before = (*i + j) as f64;
            let after = (*i + *k - 1 - j) as f64;
            paths[l].push((x - 0.8, -before));
            paths[l].push((x, -mid));
            paths[l].push((x + 0.8, -after));
        }
        crossings.push((p.clone(), (x, -mid)));
        order[*i..*i + *k].reverse();
    }
    for (y, &l) in order.iter().enumerate() {
        paths[l].push((right - 1.0, -(y as f64)));
    }
    let corners = [(0.0, 0.5), (right, -(n as f64) + 0.5)];
    let fr = Frame::new(corners.into_iter(), opts.width);
    let mut out = String::new();
    header(&mut out, &fr);
    for (l, path) in paths.iter().enumerate() {
        let color = PALETTE[l % PALETTE.len()];
        let first = path[0];
        let last = *path.last().unwrap();
        polyline(&mut out, &[fr.map((0.0, first.1)), fr.map(first)], color, 2.0, true);
        let pts: Vec<(f64, f64)> = path.iter().map(|&q| fr.map(q)).collect();
        polyline(&mut out, &pts, color, 2.0, false);
        polyline(&mut out, &[fr.map(last), fr.map((right, last.1))], color, 2.0, true);
        if opts.labels {
            label(&mut out, fr.map((0.0, first.1)), &wd.strings[l]);
        }
    }
    for (p, q) in crossings {
        let (x, y) = fr.map(q);
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3" fill="black"/>"#, f(x), f(y));
        if opts.labels {
            label(&mut out, (x, y), &p);
        }
    }
    out.push_str("</svg>\n");
    Ok(out.into_bytes())
}
