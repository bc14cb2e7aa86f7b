//! Conversion of concrete drawings (straight or polygonal edges at exact
//! coordinates) into combinatorial drawings.

use std::collections::BTreeMap;

use crate::combinatorial::{CombinatorialDrawing, Crossing, Edge, EdgeEnd, End, FaceAnchor, IsolatedVertex, Side, Sign};
use crate::error::TopologyError;
use crate::geometric::GeometricDrawing;
use crate::geometry::{
    angle_cmp, cross, in_segment_interior, line_parameter, orientation, relate_segments, ExactPoint, ExactScalar,
    Orientation, Point, Scalar, SegmentRelation,
};

#[derive(Clone, Debug, PartialEq)]
pub struct PolylineEdge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    /// Interior bend points from tail to head.
    pub bends: Vec<ExactPoint>,
}

/// Vertices at exact points and edges as polygonal paths. Vertices without
/// edges end up isolated.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolylineDrawing {
    pub names: Vec<String>,
    pub points: Vec<ExactPoint>,
    pub edges: Vec<PolylineEdge>,
}

impl PolylineDrawing {
    pub fn add_vertex(&mut self, name: impl Into<String>, p: ExactPoint) -> usize {
        self.names.push(name.into());
        self.points.push(p);
        self.points.len() - 1
    }

    pub fn add_edge(&mut self, name: impl Into<String>, tail: usize, head: usize, bends: Vec<ExactPoint>) -> usize {
        self.edges.push(PolylineEdge { name: name.into(), tail, head, bends });
        self.edges.len() - 1
    }

    pub fn path(&self, e: usize) -> Vec<ExactPoint> {
        let ed = &self.edges[e];
        let mut out = vec![self.points[ed.tail].clone()];
        out.extend(ed.bends.iter().cloned());
        out.push(self.points[ed.head].clone());
        out
    }
}

struct Piece {
    edge: usize,
    index: usize,
    a: ExactPoint,
    b: ExactPoint,
}

fn touch(msg: impl Into<String>) -> TopologyError {
    TopologyError::DegenerateTouch(msg.into())
}

/// Position along an edge: piece index, then parameter on the piece.
type Position = (usize, ExactScalar);

pub fn from_geometric(g: &GeometricDrawing) -> Result<CombinatorialDrawing, TopologyError> {
    g.validate()?;
    let mut p = PolylineDrawing::default();
    for (i, pt) in g.points.iter().enumerate() {
        p.add_vertex(g.label(i), pt.clone());
    }
    for &(u, v) in &g.edges {
        p.add_edge(format!("{}-{}", g.label(u), g.label(v)), u, v, Vec::new());
    }
    from_polylines(&p)
}

pub fn from_polylines(p: &PolylineDrawing) -> Result<CombinatorialDrawing, TopologyError> {
    let n = p.points.len();
    if n == 0 {
        return Err(TopologyError::EmptyDrawing);
    }
    for i in 0..n {
        for j in i + 1..n {
            if p.points[i] == p.points[j] {
                return Err(TopologyError::Inconsistent(format!(
                    "vertices {} and {} coincide",
                    p.names[i], p.names[j]
                )));
            }
        }
    }
    let mut pieces = Vec::new();
    for e in 0..p.edges.len() {
        let ed = &p.edges[e];
        if ed.tail >= n || ed.head >= n || ed.tail == ed.head {
            return Err(TopologyError::Inconsistent(format!("edge {} has bad ends", ed.name)));
        }
        let path = p.path(e);
        for (index, w) in path.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(touch(format!("edge {} has a zero-length piece", ed.name)));
            }
            pieces.push(Piece { edge: e, index, a: w[0].clone(), b: w[1].clone() });
        }
        for b in &ed.bends {
            if p.points.contains(b) {
                return Err(touch(format!("edge {} bends at a vertex", ed.name)));
            }
        }
    }
    for pc in &pieces {
        for (w, pt) in p.points.iter().enumerate() {
            if in_segment_interior(&pc.a, &pc.b, pt) {
                return Err(touch(format!("vertex {} lies on edge {}", p.names[w], p.edges[pc.edge].name)));
            }
        }
    }
    // crossings[e]: (position on e, other edge, sign, point)
    let mut crossings: Vec<Vec<(Position, usize, Sign)>> = vec![Vec::new(); p.edges.len()];
    let mut at_point: BTreeMap<ExactPoint, Vec<usize>> = BTreeMap::new();
    // Sweep over x so that only pieces with overlapping boxes are compared.
    let boxes: Vec<[ExactScalar; 4]> = pieces
        .iter()
        .map(|pc| {
            let (x0, x1) = if pc.a.x <= pc.b.x { (&pc.a.x, &pc.b.x) } else { (&pc.b.x, &pc.a.x) };
            let (y0, y1) = if pc.a.y <= pc.b.y { (&pc.a.y, &pc.b.y) } else { (&pc.b.y, &pc.a.y) };
            [x0.clone(), x1.clone(), y0.clone(), y1.clone()]
        })
        .collect();
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by(|&i, &j| boxes[i][0].cmp(&boxes[j][0]));
    for (oi, &i0) in order.iter().enumerate() {
        for &j0 in &order[oi + 1..] {
            if boxes[j0][0] > boxes[i0][1] {
                break;
            }
            if boxes[j0][2] > boxes[i0][3] || boxes[i0][2] > boxes[j0][3] {
                continue;
            }
            let (i, j) = (i0.min(j0), i0.max(j0));
            let (x, y) = (&pieces[i], &pieces[j]);
            let rel = relate_segments(&x.a, &x.b, &y.a, &y.b).map_err(crate::error::DrawingError::from)?;
            let name = |e: usize| p.edges[e].name.as_str();
            if x.edge == y.edge {
                let consecutive = y.index == x.index + 1;
                let ok = match rel {
                    SegmentRelation::Disjoint => !consecutive,
                    SegmentRelation::SharedEndpoint(1, 0) => consecutive,
                    _ => false,
                };
                if !ok {
                    return Err(touch(format!("edge {} intersects itself", name(x.edge))));
                }
                continue;
            }
            match rel {
                SegmentRelation::Disjoint => {}
                SegmentRelation::ProperCrossing(pt) => {
                    let tx = line_parameter(&x.a, &x.b, &y.a, &y.b);
                    let ty = line_parameter(&y.a, &y.b, &x.a, &x.b);
                    let sx = side_sign(&x.a, &x.b, &y.a);
                    crossings[x.edge].push(((x.index, tx), y.edge, sx));
                    crossings[y.edge].push(((y.index, ty), x.edge, sx.flip()));
                    let entry = at_point.entry(pt).or_default();
                    for e in [x.edge, y.edge] {
                        if !entry.contains(&e) {
                            entry.push(e);
                        }
                    }
                }
                SegmentRelation::SharedEndpoint(..) => {
                    let (ex, ey) = (&p.edges[x.edge], &p.edges[y.edge]);
                    let common = [ex.tail, ex.head]
                        .into_iter()
                        .any(|v| (v == ey.tail || v == ey.head) && (p.points[v] == x.a || p.points[v] == x.b));
                    if !common {
                        return Err(touch(format!("edges {} and {} touch", name(x.edge), name(y.edge))));
                    }
                }
                _ => {
                    return Err(touch(format!(
                        "edges {} and {} meet in a {}",
                        name(x.edge),
                        name(y.edge),
                        rel.tag()
                    )))
                }
            }
        }
    }
    if at_point.values().any(|es| es.len() >= 3) {
        return Err(TopologyError::ConcurrentCrossing);
    }
    for c in &mut crossings {
        c.sort_by(|a, b| a.0.cmp(&b.0));
    }

    // Connected vertices first, isolated ones after, both in input order.
    let degree = |v: usize| p.edges.iter().filter(|e| e.tail == v || e.head == v).count();
    let connected: Vec<usize> = (0..n).filter(|&v| degree(v) > 0).collect();
    let lonely: Vec<usize> = (0..n).filter(|&v| degree(v) == 0).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in connected.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<Edge> = p
        .edges
        .iter()
        .enumerate()
        .map(|(e, ed)| Edge {
            name: ed.name.clone(),
            tail: index[ed.tail],
            head: index[ed.head],
            crossings: crossings[e].iter().map(|&(_, edge, sign)| Crossing { edge, sign }).collect(),
        })
        .collect();
    let mut rotations = Vec::with_capacity(connected.len());
    for &v in &connected {
        let mut ends: Vec<(ExactPoint, EdgeEnd)> = Vec::new();
        for (e, _) in p.edges.iter().enumerate() {
            let path = p.path(e);
            if p.edges[e].tail == v {
                ends.push((path[1].sub(&path[0]), EdgeEnd { edge: e, end: End::Tail }));
            }
            if p.edges[e].head == v {
                let k = path.len();
                ends.push((path[k - 2].sub(&path[k - 1]), EdgeEnd { edge: e, end: End::Head }));
            }
        }
        ends.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        rotations.push(ends.into_iter().map(|(_, ee)| ee).collect());
    }
    let locate_in = |w: &ExactPoint| locate(w, &pieces, &crossings);
    let mut isolated = Vec::new();
    for &v in &lonely {
        if pieces.is_empty() {
            break;
        }
        let anchor = locate_in(&p.points[v])
            .ok_or_else(|| touch(format!("cannot place isolated vertex {}", p.names[v])))?;
        isolated.push(IsolatedVertex { name: p.names[v].clone(), anchor });
    }
    let outer_face = if pieces.is_empty() {
        None
    } else {
        let one = ExactScalar::from_i64(1);
        let min_x = pieces.iter().flat_map(|pc| [&pc.a.x, &pc.b.x]).min().expect("pieces").clone() - &one;
        let min_y = pieces.iter().flat_map(|pc| [&pc.a.y, &pc.b.y]).min().expect("pieces").clone() - &one;
        locate_in(&Point::new(min_x, min_y))
    };
    let d = CombinatorialDrawing {
        vertices: connected.iter().map(|&v| p.names[v].clone()).collect(),
        edges,
        rotations,
        isolated,
        outer_face,
    };
    if !lonely.is_empty() && pieces.is_empty() {
        // No edges: every vertex floats and no anchor can exist.
        return Ok(CombinatorialDrawing {
            isolated: Vec::new(),
            vertices: p.names.clone(),
            rotations: vec![Vec::new(); n],
            ..d
        });
    }
    Ok(d.normalized())
}

fn side_sign(a: &ExactPoint, b: &ExactPoint, other_start: &ExactPoint) -> Sign {
    if orientation(a, b, other_start) == Orientation::CounterClockwise {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Face anchor of a point off the drawing: shoot rays towards points on the
/// pieces and take the first piece hit, skipping rays that graze a bend, a
/// crossing or run along a piece.
fn locate(w: &ExactPoint, pieces: &[Piece], crossings: &[Vec<(Position, usize, Sign)>]) -> Option<FaceAnchor> {
    let fractions = [(1, 2), (1, 3), (2, 3), (1, 5), (3, 7)];
    for &(num, den) in &fractions {
        let t = ExactScalar::from_ratio(num, den);
        for target_piece in pieces {
            let target = target_piece.a.lerp(&target_piece.b, &t);
            let dir = target.sub(w);
            if let Some(hit) = cast(w, &dir, pieces) {
                let (pi, lambda) = hit;
                let pc = &pieces[pi];
                let pos: Position = (pc.index, lambda);
                let segment = crossings[pc.edge].iter().filter(|c| c.0 < pos).count();
                let side = if orientation(&pc.a, &pc.b, w) == Orientation::CounterClockwise {
                    Side::Left
                } else {
                    Side::Right
                };
                return Some(FaceAnchor { edge: pc.edge, segment, side });
            }
        }
    }
    None
}

/// Nearest piece hit by the ray `w + s dir`, `s > 0`, with its parameter;
/// `None` when the ray is degenerate.
fn cast(w: &ExactPoint, dir: &ExactPoint, pieces: &[Piece]) -> Option<(usize, ExactScalar)> {
    let zero = ExactScalar::from_i64(0);
    let one = ExactScalar::from_i64(1);
    let mut best: Option<(ExactScalar, usize, ExactScalar)> = None;
    let mut tie = false;
    for (i, pc) in pieces.iter().enumerate() {
        let ba = pc.b.sub(&pc.a);
        let denom = cross(dir, &ba);
        let aw = pc.a.sub(w);
        if denom == zero {
            if cross(&aw, dir) == zero {
                return None;
            }
            continue;
        }
        let s = cross(&aw, &ba) / &denom;
        let lambda = cross(&aw, dir) / &denom;
        if s <= zero || lambda < zero || lambda > one {
            continue;
        }
        match &best {
            Some((bs, _, _)) if *bs < s => {}
            Some((bs, _, _)) if *bs == s => tie = true,
            _ => {
                tie = false;
                best = Some((s, i, lambda));
            }
        }
    }
    let (_, i, lambda) = best?;
    if tie || lambda == zero || lambda == one {
        return None;
    }
    Some((i, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorial::{planarize, verify_topological};

    fn pt(x: i64, y: i64) -> ExactPoint {
        Point::from_ratios((x, 1), (y, 1))
    }

    #[test]
    fn single_edge_has_no_crossings() {
        let g = GeometricDrawing::new(vec![pt(0, 0), pt(1, 0)], vec![(0, 1)]);
        let d = from_geometric(&g).unwrap();
        assert_eq!(d.total_crossings(), 0);
        assert!(verify_topological(&d).unwrap().ok);
    }

    #[test]
    fn x_gets_opposite_signs() {
        let g = GeometricDrawing::new(vec![pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0)], vec![(0, 1), (2, 3)]);
        let d = from_geometric(&g).unwrap();
        // cd starts at (0,2), left of ab.
        assert_eq!(d.edges[0].crossings, vec![Crossing { edge: 1, sign: Sign::Plus }]);
        assert_eq!(d.edges[1].crossings, vec![Crossing { edge: 0, sign: Sign::Minus }]);
        assert!(d.outer_face.is_some());
    }

    #[test]
    fn concurrent_lines_are_rejected() {
        let g = GeometricDrawing::new(
            vec![pt(-1, 0), pt(1, 0), pt(0, -1), pt(0, 1), pt(-1, -1), pt(1, 1)],
            vec![(0, 1), (2, 3), (4, 5)],
        );
        assert_eq!(from_geometric(&g).unwrap_err(), TopologyError::ConcurrentCrossing);
    }

    #[test]
    fn endpoint_on_edge_is_a_touch() {
        let g = GeometricDrawing::new(vec![pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1)], vec![(0, 1), (2, 3)]);
        assert!(matches!(from_geometric(&g), Err(TopologyError::DegenerateTouch(_))));
    }

    #[test]
    fn isolated_vertex_inside_a_triangle() {
        // Triangle with an extra vertex inside and one outside.
        let g = GeometricDrawing::new(
            vec![pt(0, 0), pt(4, 0), pt(0, 4), pt(1, 1), pt(9, 9)],
            vec![(0, 1), (1, 2), (2, 0)],
        );
        let d = from_geometric(&g).unwrap();
        assert_eq!(d.isolated.len(), 2);
        let p = planarize(&d).unwrap();
        let inner = p.isolated_face(0);
        let outer = p.isolated_face(1);
        assert_ne!(inner, outer);
        assert_eq!(p.outer_face, Some(outer));
    }

    #[test]
    fn polyline_rotation_uses_first_piece() {
        let mut p = PolylineDrawing::default();
        let a = p.add_vertex("a", pt(0, 0));
        let b = p.add_vertex("b", pt(4, 0));
        let c = p.add_vertex("c", pt(2, 3));
        p.add_edge("ab", a, b, vec![pt(2, -1)]);
        p.add_edge("ac", a, c, vec![]);
        p.add_edge("bc", b, c, vec![]);
        let d = from_polylines(&p).unwrap();
        let pl = planarize(&d).unwrap();
        assert_eq!(pl.faces.len(), 2);
    }
}
