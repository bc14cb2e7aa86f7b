//! SVG figures.
//!
//! Straight-line drawings are drawn at their own coordinates. Combinatorial
//! drawings are laid out by a Tutte embedding of the planarization: the
//! outer face on a regular polygon, every other node at the average of its
//! neighbours.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::combinatorial::{planarize, CombinatorialDrawing, FaceAnchor, Planarization};
use crate::error::RenderError;
use crate::geometric::GeometricDrawing;
use crate::map::NodeKind;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    /// Face drawn as the unbounded one; defaults to the drawing's own
    /// choice, else the face with the longest boundary.
    pub outer_face: Option<FaceAnchor>,
    pub labels: bool,
    pub stroke_width: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { width: 800, height: 800, outer_face: None, labels: true, stroke_width: 1.5 }
    }
}

impl RenderOptions {
    fn check(&self) -> Result<(), RenderError> {
        if self.width == 0 || self.height == 0 {
            return Err(RenderError::BadOptions("dimensions must be positive".into()));
        }
        Ok(())
    }
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

struct Canvas {
    out: String,
    min: (f64, f64),
    scale: f64,
    height: f64,
    pad: f64,
}

impl Canvas {
    fn new(opts: &RenderOptions, pts: &[(f64, f64)]) -> Self {
        let (w, h) = (opts.width as f64, opts.height as f64);
        let pad = 0.05 * w.min(h);
        let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
        for &(x, y) in pts {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if pts.is_empty() {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-12);
        let scale = (w.min(h) - 2.0 * pad) / span;
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            opts.width, opts.height, opts.width, opts.height
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        Canvas { out, min: lo, scale, height: h, pad }
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        let x = self.pad + (p.0 - self.min.0) * self.scale;
        let y = self.height - self.pad - (p.1 - self.min.1) * self.scale;
        (x, y)
    }

    fn vertex(&mut self, p: (f64, f64), label: Option<&str>) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="black"/>"#);
        if let Some(l) = label {
            let _ = writeln!(
                self.out,
                r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11">{}</text>"#,
                x + 5.0,
                y - 5.0,
                escape(l)
            );
        }
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Straight-line drawing as SVG: one `line` per edge.
pub fn render_geometric(d: &GeometricDrawing, opts: &RenderOptions) -> Result<String, RenderError> {
    opts.check()?;
    let pts: Vec<(f64, f64)> = d
        .points
        .iter()
        .map(|p| (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0)))
        .collect();
    let mut c = Canvas::new(opts, &pts);
    for (i, &(u, v)) in d.edges.iter().enumerate() {
        let (a, b) = (c.map(pts[u]), c.map(pts[v]));
        let _ = writeln!(
            c.out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{}" stroke-width="{}"/>"#,
            a.0,
            a.1,
            b.0,
            b.1,
            PALETTE[i % PALETTE.len()],
            opts.stroke_width
        );
    }
    for (v, &p) in pts.iter().enumerate() {
        let label = d.label(v);
        c.vertex(p, opts.labels.then_some(label.as_str()));
    }
    Ok(c.finish())
}

fn outer_face(p: &Planarization, d: &CombinatorialDrawing, opts: &RenderOptions) -> Result<usize, RenderError> {
    if let Some(a) = opts.outer_face.as_ref().or(d.outer_face.as_ref()) {
        return Ok(p.anchor_face(a)?);
    }
    Ok((0..p.faces.len()).max_by_key(|&f| (p.faces.boundary[f].len(), std::cmp::Reverse(f))).unwrap_or(0))
}

fn neighbours(p: &Planarization) -> Vec<Vec<usize>> {
    let m = &p.map;
    (0..m.num_nodes()).map(|n| m.darts_around(n).into_iter().map(|d| m.head(d)).collect()).collect()
}

/// Tutte embedding of the planarization with the given outer face.
pub fn tutte_layout(p: &Planarization, outer: usize) -> Result<Vec<(f64, f64)>, RenderError> {
    let m = &p.map;
    let n = m.num_nodes();
    let mut ring: Vec<usize> = Vec::new();
    for &d in &p.faces.boundary[outer] {
        let o = m.origin(d);
        if !ring.contains(&o) {
            ring.push(o);
        }
    }
    if ring.len() < 3 {
        return Err(RenderError::SingularSystem);
    }
    let nb = neighbours(p);
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    for (i, &v) in ring.iter().enumerate() {
        // Faces walk clockwise around the outer face, so go clockwise here too.
        let t = -2.0 * std::f64::consts::PI * i as f64 / ring.len() as f64;
        pos[v] = (t.cos(), t.sin());
        fixed[v] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !fixed[v] && !nb[v].is_empty()).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        index[v] = i;
    }
    for axis in 0..2 {
        let get = |p: (f64, f64)| if axis == 0 { p.0 } else { p.1 };
        let b: Vec<f64> = free
            .iter()
            .map(|&v| nb[v].iter().filter(|&&w| fixed[w]).map(|&w| get(pos[w])).sum())
            .collect();
        let apply = |x: &[f64]| -> Vec<f64> {
            free.iter()
                .map(|&v| {
                    let mut s = nb[v].len() as f64 * x[index[v]];
                    for &w in &nb[v] {
                        if !fixed[w] {
                            s -= x[index[w]];
                        }
                    }
                    s
                })
                .collect()
        };
        let x = conjugate_gradient(apply, &b).ok_or(RenderError::SingularSystem)?;
        for (i, &v) in free.iter().enumerate() {
            if axis == 0 {
                pos[v].0 = x[i];
            } else {
                pos[v].1 = x[i];
            }
        }
    }
    Ok(pos)
}

fn conjugate_gradient(apply: impl Fn(&[f64]) -> Vec<f64>, b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut x = vec![0.0; n];
    if n == 0 {
        return Some(x);
    }
    let dot = |a: &[f64], c: &[f64]| a.iter().zip(c).map(|(p, q)| p * q).sum::<f64>();
    let mut r = b.to_vec();
    let mut d = r.clone();
    let mut rr = dot(&r, &r);
    let tol = 1e-20 * dot(b, b).max(1e-300);
    for _ in 0..10 * n + 100 {
        if rr <= tol {
            return Some(x);
        }
        let ad = apply(&d);
        let dad = dot(&d, &ad);
        if dad.is_nan() || dad <= 0.0 {
            return None;
        }
        let alpha = rr / dad;
        for i in 0..n {
            x[i] += alpha * d[i];
            r[i] -= alpha * ad[i];
        }
        let next = dot(&r, &r);
        for i in 0..n {
            d[i] = r[i] + next / rr * d[i];
        }
        rr = next;
    }
    (rr <= 1e-12 * dot(b, b).max(1e-300)).then_some(x)
}

/// Concentric layout by distance from the outer face.
pub fn layered_layout(p: &Planarization, outer: usize) -> Vec<(f64, f64)> {
    let m = &p.map;
    let n = m.num_nodes();
    let nb = neighbours(p);
    let mut depth = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &d in &p.faces.boundary[outer] {
        let o = m.origin(d);
        if depth[o] == usize::MAX {
            depth[o] = 0;
            queue.push_back(o);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &nb[v] {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let max = depth.iter().filter(|&&d| d != usize::MAX).max().copied().unwrap_or(0);
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
    for v in 0..n {
        if depth[v] != usize::MAX {
            layers[depth[v]].push(v);
        }
    }
    let mut pos = vec![(0.0, 0.0); n];
    for (k, layer) in layers.iter().enumerate() {
        let radius = 1.0 - k as f64 / (max + 1) as f64;
        for (i, &v) in layer.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * (i as f64 + 0.5 * k as f64) / layer.len() as f64;
            pos[v] = (radius * t.cos(), radius * t.sin());
        }
    }
    pos
}

/// Combinatorial drawing as SVG: one `polyline` per edge through its
/// crossing nodes, so an edge with `k` crossings has `k + 1` pieces.
pub fn render_topological(d: &CombinatorialDrawing, opts: &RenderOptions) -> Result<String, RenderError> {
    opts.check()?;
    let p = planarize(d)?;
    let outer = outer_face(&p, d, opts)?;
    let pos = tutte_layout(&p, outer).unwrap_or_else(|_| layered_layout(&p, outer));
    let m = &p.map;
    // Isolated vertices sit near the centroid of their face.
    let mut iso_pos = Vec::new();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for i in 0..d.isolated.len() {
        let f = p.isolated_face(i);
        let nodes: Vec<usize> = p.faces.boundary[f].iter().map(|&x| m.origin(x)).collect();
        let k = nodes.len().max(1) as f64;
        let c = nodes.iter().fold((0.0, 0.0), |a, &v| (a.0 + pos[v].0 / k, a.1 + pos[v].1 / k));
        let slot = (0..).find(|s| used.insert(f * 1_000_000 + s)).unwrap();
        let r = 0.01 * slot as f64;
        let t = slot as f64 * 2.4;
        iso_pos.push((c.0 + r * t.cos(), c.1 + r * t.sin()));
    }
    let all: Vec<(f64, f64)> = pos.iter().chain(iso_pos.iter()).copied().collect();
    let mut c = Canvas::new(opts, &all);
    for (e, segs) in p.segments.iter().enumerate() {
        let mut pts = vec![pos[m.origin(segs[0])]];
        pts.extend(segs.iter().map(|&s| pos[m.head(s)]));
        let txt: Vec<String> = pts
            .iter()
            .map(|&q| {
                let (x, y) = c.map(q);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            c.out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="{}"><title>{}</title></polyline>"#,
            txt.join(" "),
            PALETTE[e % PALETTE.len()],
            opts.stroke_width,
            escape(&d.edges[e].name)
        );
    }
    for node in 0..m.num_nodes() {
        if let NodeKind::Vertex(v) = m.node_kind(node) {
            if v < p.vertex_count {
                c.vertex(pos[node], opts.labels.then_some(d.vertex_name(v)));
            }
        }
    }
    for (i, &q) in iso_pos.iter().enumerate() {
        c.vertex(q, opts.labels.then_some(d.isolated[i].name.as_str()));
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families_geometric::build_star_cycle;
    use crate::families_topological::{add_isolated, build_c6, single_edge, C6_CENTRAL_FACE};

    #[test]
    fn pentagram_has_five_lines() {
        let svg = render_geometric(&build_star_cycle(2), &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<line ").count(), 5);
    }

    #[test]
    fn c6_pieces_match_segments() {
        let d = add_isolated(&build_c6(), C6_CENTRAL_FACE, 2).unwrap();
        let svg = render_topological(&d, &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<polyline ").count(), 6);
        let pieces: usize = svg
            .lines()
            .filter(|l| l.starts_with("<polyline"))
            .map(|l| l.split("points=\"").nth(1).unwrap().split('"').next().unwrap().split(' ').count() - 1)
            .sum();
        assert_eq!(pieces, planarize(&d).unwrap().num_segments());
        assert_eq!(svg.matches("<circle ").count(), 8);
    }

    #[test]
    fn single_edge_falls_back_to_layers() {
        let d = single_edge("a", "b");
        let p = planarize(&d).unwrap();
        assert!(matches!(tutte_layout(&p, 0), Err(RenderError::SingularSystem)));
        assert!(render_topological(&d, &RenderOptions::default()).is_ok());
    }

    #[test]
    fn zero_size_is_rejected() {
        let opts = RenderOptions { width: 0, ..RenderOptions::default() };
        assert!(render_geometric(&build_star_cycle(2), &opts).is_err());
    }
}
