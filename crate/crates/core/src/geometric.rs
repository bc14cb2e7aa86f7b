//! Straight-line drawings and the geometric thrackle checkers.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::DrawingError;
use crate::geometry::{in_segment_interior, relate_segments, ExactScalar, Point, Scalar, SegmentRelation};

/// Vertices at points, edges as straight segments between them.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricDrawing<S = ExactScalar> {
    pub points: Vec<Point<S>>,
    pub edges: Vec<(usize, usize)>,
    pub labels: Option<Vec<String>>,
}

/// Why a drawing failed the thrackle test.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation<S = ExactScalar> {
    /// Two edges meet in the wrong way.
    Pair {
        edges: (usize, usize),
        relation: SegmentRelation<S>,
    },
    /// A vertex lies in the interior of an edge not incident to it.
    VertexOnEdge { vertex: usize, edge: usize },
    /// Combinatorial count of common points between two edges is not one.
    Count {
        edges: (usize, usize),
        shared_endpoints: usize,
        crossings: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThrackleVerdict<S = ExactScalar> {
    pub ok: bool,
    pub violation: Option<Violation<S>>,
}

impl<S> ThrackleVerdict<S> {
    pub fn pass() -> Self {
        ThrackleVerdict { ok: true, violation: None }
    }

    pub fn fail(v: Violation<S>) -> Self {
        ThrackleVerdict { ok: false, violation: Some(v) }
    }
}

fn shares_vertex(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

impl<S: Scalar> GeometricDrawing<S> {
    pub fn new(points: Vec<Point<S>>, edges: Vec<(usize, usize)>) -> Self {
        GeometricDrawing { points, edges, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => format!("v{v}"),
        }
    }

    fn segment(&self, e: (usize, usize)) -> (&Point<S>, &Point<S>) {
        (&self.points[e.0], &self.points[e.1])
    }

    pub fn relation(&self, e: usize, f: usize) -> Result<SegmentRelation<S>, DrawingError> {
        let (a1, a2) = self.segment(self.edges[e]);
        let (b1, b2) = self.segment(self.edges[f]);
        Ok(relate_segments(a1, a2, b1, b2)?)
    }

    /// Check the structural invariants: distinct points, valid distinct
    /// edges, no overlapping edges.
    pub fn validate(&self) -> Result<(), DrawingError> {
        let n = self.points.len();
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(DrawingError::InvalidDrawing("one label per point".into()));
            }
        }
        let mut sorted: Vec<&Point<S>> = self.points.iter().collect();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("scalars are totally ordered"));
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(DrawingError::InvalidDrawing("points pairwise distinct".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &self.edges {
            if u >= n || v >= n {
                return Err(DrawingError::InvalidDrawing(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(DrawingError::InvalidDrawing(format!("edge ({u},{v}) is a loop")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(DrawingError::InvalidDrawing("edge pairs distinct".into()));
            }
        }
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                if self.relation(i, j)? == SegmentRelation::Overlap {
                    return Err(DrawingError::InvalidDrawing(format!(
                        "edges {i} and {j} overlap"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Self {
        let mut d = self.clone();
        d.edges.push((u, v));
        d
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }
}

/// A single pair of edges meets exactly once, at a common vertex or at a
/// proper crossing.
fn pair_violation<S: Scalar>(
    d: &GeometricDrawing<S>,
    i: usize,
    j: usize,
) -> Result<Option<Violation<S>>, DrawingError> {
    let rel = d.relation(i, j)?;
    let adjacent = shares_vertex(d.edges[i], d.edges[j]);
    let good = match rel {
        SegmentRelation::SharedEndpoint(..) => adjacent,
        SegmentRelation::ProperCrossing(_) => !adjacent,
        _ => false,
    };
    Ok(if good {
        None
    } else {
        Some(Violation::Pair { edges: (i, j), relation: rel })
    })
}

fn vertex_on_edge<S: Scalar>(d: &GeometricDrawing<S>, e: usize) -> Option<usize> {
    let (u, v) = d.edges[e];
    (0..d.points.len())
        .filter(|&w| w != u && w != v)
        .find(|&w| in_segment_interior(&d.points[u], &d.points[v], &d.points[w]))
}

/// Thrackle test for a straight-line drawing. Reports the first failing
/// edge pair in lexicographic order, then vertices lying on edges.
pub fn verify_geometric<S: Scalar>(d: &GeometricDrawing<S>) -> Result<ThrackleVerdict<S>, DrawingError> {
    d.validate()?;
    for i in 0..d.edges.len() {
        for j in i + 1..d.edges.len() {
            if let Some(v) = pair_violation(d, i, j)? {
                return Ok(ThrackleVerdict::fail(v));
            }
        }
    }
    for e in 0..d.edges.len() {
        if let Some(w) = vertex_on_edge(d, e) {
            return Ok(ThrackleVerdict::fail(Violation::VertexOnEdge { vertex: w, edge: e }));
        }
    }
    Ok(ThrackleVerdict::pass())
}

/// Would the segment `u v` keep the thrackle property? Assumes `d` already is one.
fn candidate_fits<S: Scalar>(d: &GeometricDrawing<S>, u: usize, v: usize) -> Result<bool, DrawingError> {
    let (p, q) = (&d.points[u], &d.points[v]);
    for &(a, b) in &d.edges {
        let rel = relate_segments(p, q, &d.points[a], &d.points[b])?;
        let adjacent = shares_vertex((u, v), (a, b));
        let good = match rel {
            SegmentRelation::SharedEndpoint(..) => adjacent,
            SegmentRelation::ProperCrossing(_) => !adjacent,
            _ => false,
        };
        if !good {
            return Ok(false);
        }
    }
    Ok(!(0..d.points.len())
        .filter(|&w| w != u && w != v)
        .any(|w| in_segment_interior(p, q, &d.points[w])))
}

/// All non-edge vertex pairs whose segment can be added, in lexicographic order.
pub fn insertable_segments<S: Scalar>(d: &GeometricDrawing<S>) -> Result<Vec<(usize, usize)>, DrawingError> {
    if !verify_geometric(d)?.ok {
        return Err(DrawingError::NotAThrackle);
    }
    let n = d.points.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !d.has_edge(u, v))
        .collect();
    let fits: Vec<Result<bool, DrawingError>> =
        pairs.par_iter().map(|&(u, v)| candidate_fits(d, u, v)).collect();
    let mut out = Vec::new();
    for (pair, fit) in pairs.into_iter().zip(fits) {
        if fit? {
            out.push(pair);
        }
    }
    Ok(out)
}

pub fn is_maximal_geometric<S: Scalar>(d: &GeometricDrawing<S>) -> Result<bool, DrawingError> {
    Ok(insertable_segments(d)?.is_empty())
}

/// `|E| / |V|`.
pub fn edge_vertex_ratio<S: Scalar>(d: &GeometricDrawing<S>) -> Result<ExactScalar, DrawingError> {
    if d.points.is_empty() {
        return Err(DrawingError::EmptyDrawing);
    }
    Ok(ExactScalar::from_ratio(d.edges.len() as i64, d.points.len() as i64))
}

/// Crossing points shared by three or more edges (an edge passing through
/// the crossing of two others counts). Allowed, but reported as a diagnostic.
pub fn concurrent_crossings(d: &GeometricDrawing) -> Result<Vec<(Point<ExactScalar>, Vec<usize>)>, DrawingError> {
    let mut at: BTreeMap<Point<ExactScalar>, Vec<usize>> = BTreeMap::new();
    for i in 0..d.edges.len() {
        for j in i + 1..d.edges.len() {
            if let SegmentRelation::ProperCrossing(p) = d.relation(i, j)? {
                let entry = at.entry(p).or_default();
                for e in [i, j] {
                    if !entry.contains(&e) {
                        entry.push(e);
                    }
                }
            }
        }
    }
    Ok(at
        .into_iter()
        .filter(|(_, es)| es.len() >= 3)
        .map(|(p, mut es)| {
            es.sort_unstable();
            (p, es)
        })
        .collect())
}

/// Upper bound on the point count accepted by [`brute_force_maximal_subsets`].
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// One maximal thrackle found by exhaustive enumeration.
#[derive(Clone, Debug, PartialEq)]
pub struct MaximalSubset {
    pub edges: Vec<(usize, usize)>,
    pub ratio: ExactScalar,
}

/// Every inclusion-maximal edge set over `points` that forms a thrackle and
/// has at most `max_edges` edges, sorted by edge list.
///
/// Thrackles are closed under taking edge subsets and the condition is
/// pairwise, so these are exactly the maximal cliques of the pairwise
/// compatibility graph on usable segments.
pub fn brute_force_maximal_subsets(
    points: &[Point<ExactScalar>],
    max_edges: usize,
) -> Result<Vec<MaximalSubset>, DrawingError> {
    let n = points.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(DrawingError::TooLarge(n, BRUTE_FORCE_LIMIT));
    }
    if n == 0 {
        return Err(DrawingError::EmptyDrawing);
    }
    let base = GeometricDrawing::new(points.to_vec(), Vec::new());
    base.validate()?;
    // A segment through another point can never be used.
    let segs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !(0..n).any(|w| w != u && w != v && in_segment_interior(&points[u], &points[v], &points[w])))
        .collect();
    let m = segs.len();
    let mut compat = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = segs[i];
            let (c, e) = segs[j];
            let rel = relate_segments(&points[a], &points[b], &points[c], &points[e])?;
            let adjacent = shares_vertex(segs[i], segs[j]);
            let ok = match rel {
                SegmentRelation::SharedEndpoint(..) => adjacent,
                SegmentRelation::ProperCrossing(_) => !adjacent,
                _ => false,
            };
            compat[i][j] = ok;
            compat[j][i] = ok;
        }
    }
    let mut cliques = Vec::new();
    bron_kerbosch(&compat, Vec::new(), (0..m).collect(), Vec::new(), &mut cliques);
    let mut out: Vec<MaximalSubset> = cliques
        .into_iter()
        .filter(|c| c.len() <= max_edges)
        .map(|mut c| {
            c.sort_unstable();
            let edges: Vec<(usize, usize)> = c.into_iter().map(|i| segs[i]).collect();
            let ratio = ExactScalar::from_ratio(edges.len() as i64, n as i64);
            MaximalSubset { edges, ratio }
        })
        .collect();
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(out)
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    while let Some(v) = p.pop() {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        x.push(v);
    }
}
