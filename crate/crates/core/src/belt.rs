//! Polygonal realizations of the doubled star cycle and its Kynčl belts.
//!
//! Every vertex of the star cycle gets a small affine frame in which the
//! local routing is fixed; edges run between frames along straight tunnel
//! pieces. The combinatorial drawings are read off with exact arithmetic.

use crate::families_geometric::{build_star_cycle, star_cycle_order};
use crate::geometry::{ExactPoint, ExactScalar, Scalar};
use crate::polyline::PolylineDrawing;

fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::from_ratio(n, d)
}

/// Affine frame `origin + x a + y b` around one star vertex: the incoming
/// cycle edge arrives along `-x`, the outgoing one leaves along `(-1, 1)`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub origin: ExactPoint,
    pub a: ExactPoint,
    pub b: ExactPoint,
}

impl Frame {
    pub fn at(&self, x: &ExactScalar, y: &ExactScalar) -> ExactPoint {
        self.origin.add(&self.a.scale(x)).add(&self.b.scale(y))
    }

    pub fn atq(&self, x: (i64, i64), y: (i64, i64)) -> ExactPoint {
        self.at(&q(x.0, x.1), &q(y.0, y.1))
    }
}

/// Star cycle frames in cycle order.
pub fn star_frames(n: usize) -> Vec<Frame> {
    let star = build_star_cycle(n);
    let order = star_cycle_order(n);
    let count = order.len();
    let eps = q(1, 20 * (count * count) as i64);
    (0..count)
        .map(|j| {
            let u = &star.points[order[(j + count - 1) % count]];
            let v = &star.points[order[j]];
            let w = &star.points[order[(j + 1) % count]];
            Frame { origin: v.clone(), a: v.sub(u).scale(&eps), b: w.sub(u).scale(&eps) }
        })
        .collect()
}

type Local = [(i64, i64); 2];

fn p(x: (i64, i64), y: (i64, i64)) -> Local {
    [x, y]
}

/// Local routes, in a vertex frame, of the four doubled edges at a vertex:
/// first copy at `(1/10, 0)`, second copy at `(-1/10, 1/20)`.
pub struct T1Routes;

impl T1Routes {
    pub fn first() -> Local {
        p((1, 10), (0, 1))
    }

    pub fn second() -> Local {
        p((-1, 10), (1, 20))
    }

    /// Outgoing edge leaving the first copy, up to its tunnel exit.
    pub fn out_first() -> Vec<Local> {
        vec![p((3, 20), (0, 1)), p((3, 20), (9, 20)), p((-7, 10), (13, 10))]
    }

    /// Outgoing edge leaving the second copy.
    pub fn out_second() -> Vec<Local> {
        vec![p((-2, 25), (3, 100)), p((-1, 10), (0, 1)), p((-21, 20), (19, 20))]
    }

    /// Incoming edge ending at the second copy, from its tunnel entry.
    pub fn in_second() -> Vec<Local> {
        vec![p((-1, 1), (-1, 5)), p((3, 10), (-1, 5)), p((3, 10), (3, 10)), p((-7, 20), (3, 10))]
    }

    /// Incoming edge ending at the first copy.
    pub fn in_first() -> Vec<Local> {
        vec![p((-1, 1), (1, 5)), p((-1, 10), (1, 5)), p((1, 20), (0, 1))]
    }
}

fn place(f: &Frame, pts: &[Local]) -> Vec<ExactPoint> {
    pts.iter().map(|l| f.atq(l[0], l[1])).collect()
}

/// Names of the two copies of the star vertex at cycle position `j`.
pub fn copy_name(j: usize, copy: u8) -> String {
    format!("v{j}_{copy}")
}

/// The doubled star cycle as polylines. Vertices are listed as
/// `v0_1, v0_2, v1_1, ...`; edges follow the new cycle starting at `v0_1`.
pub fn t1_polylines(n: usize) -> PolylineDrawing {
    let frames = star_frames(n);
    let count = frames.len();
    let mut d = PolylineDrawing::default();
    for (j, f) in frames.iter().enumerate() {
        let [x, y] = T1Routes::first();
        d.add_vertex(copy_name(j, 1), f.atq(x, y));
        let [x, y] = T1Routes::second();
        d.add_vertex(copy_name(j, 2), f.atq(x, y));
    }
    // Walk the doubled cycle: from copy c at position j to copy 3 - c at j + 1.
    let mut copy = 1u8;
    for step in 0..2 * count {
        let j = step % count;
        let k = (j + 1) % count;
        let (fu, fv) = (&frames[j], &frames[k]);
        let mut bends = Vec::new();
        if copy == 1 {
            bends.extend(place(fu, &T1Routes::out_first()));
            bends.extend(place(fv, &T1Routes::in_second()));
        } else {
            bends.extend(place(fu, &T1Routes::out_second()));
            bends.extend(place(fv, &T1Routes::in_first()));
        }
        let (tail, head) = (2 * j + (copy as usize - 1), 2 * k + (2 - copy as usize));
        let name = format!("{}-{}", d.names[tail], d.names[head]);
        d.add_edge(name, tail, head, bends);
        copy = 3 - copy;
    }
    d
}

/// Whether an edge of [`t1_polylines`] leaves a first copy.
pub fn is_external(d: &PolylineDrawing, e: usize) -> bool {
    d.names[d.edges[e].tail].ends_with("_1")
}

fn qs(n: i64, d: i64) -> ExactScalar {
    q(n, d)
}

fn l1(v: &ExactPoint) -> ExactScalar {
    use num_traits::Signed;
    v.x.abs() + v.y.abs()
}

fn rot90(v: &ExactPoint) -> ExactPoint {
    ExactPoint::new(-v.y.clone(), v.x.clone())
}

/// One edge of a gadget copy of Kynčl's example, in gadget coordinates.
///
/// `head_path` runs from the new vertex in the head disk to the point where
/// the edge joins its lane below the host edge; `tail_path` runs from the
/// vertex in the tail disk (the origin for `ab`) to its lane above the host
/// edge. Lanes are horizontal lines at height `lane`.
#[derive(Clone, Debug)]
pub struct GadgetEdge {
    pub name: &'static str,
    /// The edge is directed from its head-disk vertex to its tail-disk vertex.
    pub starts_at_head: bool,
    pub head_vertex: &'static str,
    pub tail_vertex: &'static str,
    pub lane: ExactScalar,
    pub head_path: Vec<(ExactScalar, ExactScalar)>,
    pub tail_path: Vec<(ExactScalar, ExactScalar)>,
}

/// Gadget placing a copy `K_e` of Kynčl's example along a host edge `e = u v`.
///
/// Coordinates are in the frame of a host vertex: the incoming host edge
/// along `-x`, the outgoing one along `+x`, `+y` on the side where the new
/// vertices go (mirrored at second copies). The disk around `v` holds `a`,
/// `y`, `z` and all four crossings of `K_e`; the disk around `u` holds `c`
/// and `x`, and `b` is `u` itself. Edges of earlier levels reach the host
/// vertex as rays of direction `(ray_x(i), 4)`.
#[derive(Clone, Debug)]
pub struct BeltTemplate {
    pub level: usize,
    pub head_vertices: Vec<(&'static str, (ExactScalar, ExactScalar))>,
    pub tail_vertices: Vec<(&'static str, (ExactScalar, ExactScalar))>,
    pub edges: Vec<GadgetEdge>,
}

/// Largest supported number of belt levels.
pub const MAX_LEVELS: usize = 8;

fn ray_x(level: usize) -> ExactScalar {
    if level == 0 {
        qs(0, 1)
    } else {
        qs(1, 1) + qs(level as i64 - 1, 4)
    }
}

impl BeltTemplate {
    pub fn new(level: usize) -> Self {
        assert!((1..=MAX_LEVELS).contains(&level), "belt level out of range");
        let h = |x: i64, y: i64| (qs(x, 100), qs(y, 100));
        let (prev, cur) = (ray_x(level - 1), ray_x(level));
        // c and x sit between the previous rays and this level's `ab`.
        let lo = &prev * qs(13, 100);
        let hi = &cur * qs(1, 8);
        let cx = &lo + (&hi - &lo) * qs(1, 3);
        let xv = &lo + (&hi - &lo) * qs(2, 3);
        let c = (cx, qs(51, 100));
        let x = (xv.clone(), qs(50, 100));
        let a = h(-600, 300);
        let y = h(-530, 450);
        let z = h(-600, 380);
        let edges = vec![
            GadgetEdge {
                name: "ab",
                starts_at_head: true,
                head_vertex: "a",
                tail_vertex: "b",
                lane: qs(4, 1),
                head_path: vec![a.clone(), h(-660, 700), h(-660, 1000), h(720, 1000), h(720, -400)],
                tail_path: vec![(qs(0, 1), qs(0, 1)), (cur.clone(), qs(4, 1))],
            },
            GadgetEdge {
                name: "xz",
                starts_at_head: false,
                head_vertex: "z",
                tail_vertex: "x",
                lane: qs(3, 1),
                head_path: vec![
                    z.clone(),
                    h(-750, 380),
                    h(-750, 200),
                    h(-500, 200),
                    h(-500, 600),
                    h(-600, 600),
                    h(-600, 950),
                    h(660, 950),
                    h(660, -300),
                ],
                tail_path: vec![x.clone(), h(-100, 50), h(-100, -20), h(300, -20), h(300, 300)],
            },
            GadgetEdge {
                name: "ac",
                starts_at_head: true,
                head_vertex: "a",
                tail_vertex: "c",
                lane: qs(2, 1),
                head_path: vec![a.clone(), h(-540, 700), h(-540, 900), h(600, 900), h(600, -200)],
                tail_path: vec![c.clone(), h(-200, 51), h(-200, -40), h(400, -40), h(400, 200)],
            },
            GadgetEdge {
                name: "xy",
                starts_at_head: false,
                head_vertex: "y",
                tail_vertex: "x",
                lane: qs(1, 1),
                head_path: vec![
                    y.clone(),
                    h(-600, 500),
                    h(-800, 500),
                    h(-800, 150),
                    h(-400, 150),
                    h(-400, 850),
                    h(560, 850),
                    h(560, -100),
                ],
                tail_path: vec![x.clone(), (xv, qs(52, 100)), h(-300, 52), h(-300, -60), h(500, -60), h(500, 100)],
            },
        ];
        BeltTemplate {
            level,
            head_vertices: vec![("a", a), ("y", y), ("z", z)],
            tail_vertices: vec![("c", c), ("x", x)],
            edges,
        }
    }
}

/// Gadget frame at a host vertex: `origin + x t + y n`, with `n` already
/// pointing to the side that holds the new vertices.
struct Gadget {
    origin: ExactPoint,
    t: ExactPoint,
    n: ExactPoint,
}

impl Gadget {
    fn at(&self, p: &(ExactScalar, ExactScalar)) -> ExactPoint {
        self.origin.add(&self.t.scale(&p.0)).add(&self.n.scale(&p.1))
    }
}

/// Lane along a host polyline at signed offset `s` (positive to the left),
/// one point per interior bend, from the last bend back to the first.
fn lane_bends(path: &[ExactPoint], s: &ExactScalar) -> Vec<ExactPoint> {
    let offs: Vec<(ExactPoint, ExactPoint)> = path
        .windows(2)
        .map(|w| {
            let d = w[1].sub(&w[0]);
            let o = rot90(&d).scale(&(s / l1(&d)));
            (w[0].add(&o), d)
        })
        .collect();
    let mut out = Vec::new();
    for j in (1..offs.len()).rev() {
        let (a, da) = &offs[j - 1];
        let (b, db) = &offs[j];
        let den = crate::geometry::cross(da, db);
        if den == qs(0, 1) {
            out.push(b.clone());
        } else {
            let t = crate::geometry::cross(&b.sub(a), db) / den;
            out.push(a.add(&da.scale(&t)));
        }
    }
    out
}

/// Scale of the level-1 gadgets relative to the star frame size.
fn kappa(count: usize, level: usize) -> ExactScalar {
    let eps = q(1, 20 * (count * count) as i64);
    let mut k = eps * q(1, 4000);
    for _ in 1..level {
        k *= q(1, 100);
    }
    k
}

/// The doubled star cycle with `levels` Kynčl belts, as polylines.
///
/// New vertices are named `{role}{level}:{host edge}` and new edges
/// `{pair}{level}:{host edge}`.
pub fn belt_polylines(n: usize, levels: usize) -> PolylineDrawing {
    assert!(levels <= MAX_LEVELS, "at most {MAX_LEVELS} belt levels");
    let mut d = t1_polylines(n);
    let host_edges = d.edges.len();
    let count = host_edges / 2;
    let paths: Vec<Vec<ExactPoint>> = (0..host_edges).map(|e| d.path(e)).collect();
    // out_of[v] / into[v]: host edges leaving and entering vertex v.
    let mut out_of = vec![0; d.points.len()];
    let mut into = vec![0; d.points.len()];
    for (e, ed) in d.edges.iter().enumerate() {
        out_of[ed.tail] = e;
        into[ed.head] = e;
    }
    for level in 1..=levels {
        let tpl = BeltTemplate::new(level);
        let kap = kappa(count, level);
        let gadgets: Vec<Gadget> = (0..d.points.len().min(2 * count))
            .map(|v| {
                let path = &paths[out_of[v]];
                let dir = path[1].sub(&path[0]);
                let t = dir.scale(&(&kap / l1(&dir)));
                let inc = &paths[into[v]];
                debug_assert_eq!(crate::geometry::cross(&dir, &inc[inc.len() - 1].sub(&inc[inc.len() - 2])), qs(0, 1));
                let n_left = rot90(&t);
                let second = d.names[v].ends_with("_2");
                let n = if second { n_left.scale(&qs(-1, 1)) } else { n_left };
                Gadget { origin: d.points[v].clone(), t, n }
            })
            .collect();
        for e in 0..host_edges {
            let (u, v) = (d.edges[e].tail, d.edges[e].head);
            let ename = d.edges[e].name.clone();
            let (gu, gv) = (&gadgets[u], &gadgets[v]);
            // Internal edges carry their lanes on the right, external ones on the left.
            let side = if is_external(&d, e) { qs(1, 1) } else { qs(-1, 1) };
            let mut ids = std::collections::BTreeMap::new();
            for (role, at) in &tpl.head_vertices {
                ids.insert(*role, d.add_vertex(format!("{role}{level}:{ename}"), gv.at(at)));
            }
            for (role, at) in &tpl.tail_vertices {
                ids.insert(*role, d.add_vertex(format!("{role}{level}:{ename}"), gu.at(at)));
            }
            ids.insert("b", u);
            for ge in &tpl.edges {
                let s = &side * &ge.lane * &kap;
                let mut pts: Vec<ExactPoint> = ge.head_path.iter().map(|p| gv.at(p)).collect();
                pts.extend(lane_bends(&paths[e], &s));
                pts.extend(ge.tail_path.iter().rev().map(|p| gu.at(p)));
                let (mut from, mut to) = (ids[ge.head_vertex], ids[ge.tail_vertex]);
                if !ge.starts_at_head {
                    pts.reverse();
                    std::mem::swap(&mut from, &mut to);
                }
                let bends = pts[1..pts.len() - 1].to_vec();
                d.add_edge(format!("{}{level}:{ename}", ge.name), from, to, bends);
            }
        }
    }
    d
}
