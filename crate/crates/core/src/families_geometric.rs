//! Straight-line constructions: the butterfly and its two extensions, and
//! star-shaped odd cycles.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geometric::GeometricDrawing;
use crate::geometry::{cross, orientation, relate_segments, ExactPoint, ExactScalar, Orientation, Point, Scalar, SegmentRelation};

fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::from_ratio(n, d)
}

fn pt(x: ExactScalar, y: ExactScalar) -> ExactPoint {
    Point::new(x, y)
}

pub const BUTTERFLY_LABELS: [&str; 10] = ["b1", "b2", "b3", "t1", "t2", "t3", "t4", "t5", "t6", "t7"];

/// Butterfly vertex coordinates, in the order of [`BUTTERFLY_LABELS`].
pub fn butterfly_points() -> Vec<ExactPoint> {
    let y7 = q(159, 20);
    vec![
        pt(q(-10, 1), q(0, 1)),
        pt(q(10, 1), q(0, 1)),
        pt(q(0, 1), q(4, 1)),
        pt(q(-10, 1), q(10, 1)),
        pt(q(10, 1), q(10, 1)),
        pt(q(-2, 1), y7.clone()),
        pt(q(2, 1), y7.clone()),
        pt(q(-6, 1), y7.clone()),
        pt(q(0, 1), q(6, 1)),
        pt(q(6, 1), y7),
    ]
}

/// Edges by label: `b1t2, b2t1, b3t6, b1t7, b2t5, b3t3, b3t4`.
pub const BUTTERFLY_EDGES: [(&str, &str); 7] = [
    ("b1", "t2"),
    ("b2", "t1"),
    ("b3", "t6"),
    ("b1", "t7"),
    ("b2", "t5"),
    ("b3", "t3"),
    ("b3", "t4"),
];

fn idx(label: &str) -> usize {
    BUTTERFLY_LABELS.iter().position(|l| *l == label).expect("butterfly label")
}

pub fn build_butterfly() -> GeometricDrawing {
    let edges = BUTTERFLY_EDGES.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
    GeometricDrawing::new(butterfly_points(), edges).with_labels(BUTTERFLY_LABELS.iter().map(|s| s.to_string()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButterflyConstraintReport {
    pub constraints: Vec<(String, bool)>,
}

impl ButterflyConstraintReport {
    pub fn all_satisfied(&self) -> bool {
        self.constraints.iter().all(|(_, ok)| *ok)
    }
}

fn above_line(a: &ExactPoint, b: &ExactPoint, p: &ExactPoint) -> bool {
    // `a b` runs left to right, so above means counterclockwise.
    let (l, r) = if a.x <= b.x { (a, b) } else { (b, a) };
    orientation(l, r, p) == Orientation::CounterClockwise
}

/// Check the placement conditions of a butterfly point set (ordered as
/// [`BUTTERFLY_LABELS`]).
pub fn butterfly_constraints(p: &[ExactPoint]) -> ButterflyConstraintReport {
    let at = |l: &str| &p[idx(l)];
    let disjoint = |a: &str, b: &str, c: &str, d: &str| {
        matches!(relate_segments(at(a), at(b), at(c), at(d)), Ok(SegmentRelation::Disjoint))
    };
    let xs: Vec<&ExactScalar> = p.iter().map(|v| &v.x).collect();
    let ys: Vec<&ExactScalar> = p.iter().map(|v| &v.y).collect();
    let (min_x, max_x) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (min_y, max_y) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let corner = |l: &str, x: &ExactScalar, y: &ExactScalar| &at(l).x == x && &at(l).y == y;
    let central_point = match relate_segments(at("b1"), at("t2"), at("b2"), at("t1")) {
        Ok(SegmentRelation::ProperCrossing(c)) => {
            crate::geometry::in_segment_interior(at("b3"), at("t6"), &c)
        }
        _ => false,
    };
    let y7 = &at("t7").y;
    let constraints = vec![
        ("y(t6) < y(t7)", at("t6").y < *y7),
        ("t3 and t4 lie on the line y = y(t7)", &at("t3").y == y7 && &at("t4").y == y7),
        (
            "t3 left and t4 right of the central edge",
            at("t3").x < at("b3").x && at("t4").x > at("b3").x && at("b3").x == at("t6").x,
        ),
        (
            "t4, t3, t5, t1 above line b1t6",
            ["t4", "t3", "t5", "t1"].iter().all(|t| above_line(at("b1"), at("t6"), at(t))),
        ),
        (
            "t3, t4, t7, t2 above line b2t6",
            ["t3", "t4", "t7", "t2"].iter().all(|t| above_line(at("b2"), at("t6"), at(t))),
        ),
        ("b1t7 disjoint from segment b3t2", disjoint("b1", "t7", "b3", "t2")),
        ("b2t5 disjoint from segment b3t1", disjoint("b2", "t5", "b3", "t1")),
        (
            "b1t7 right of b1t2 and b2t5 left of b2t1",
            orientation(at("b1"), at("t2"), at("t7")) == Orientation::Clockwise
                && orientation(at("b2"), at("t1"), at("t5")) == Orientation::CounterClockwise,
        ),
        (
            "b1t2 and b2t1 span the bounding rectangle",
            corner("b1", min_x, min_y) && corner("t2", max_x, max_y) && corner("b2", max_x, min_y) && corner("t1", min_x, max_y),
        ),
        ("b1t2 and b2t1 cross on the central edge", central_point),
    ];
    ButterflyConstraintReport { constraints: constraints.into_iter().map(|(n, ok)| (n.to_string(), ok)).collect() }
}

/// Butterfly plus `n` isolated vertices on a horizontal line left of `t6`.
pub fn build_ta(n: usize) -> GeometricDrawing {
    let mut d = build_butterfly();
    let mut labels = d.labels.take().expect("labels");
    let nn = n.max(1) as i64;
    for j in 0..n as i64 {
        d.points.push(pt(q(-5, 1) + q(j, nn), q(5, 1)));
        labels.push(format!("r{}", j + 1));
    }
    d.with_labels(labels)
}

/// Whether every point lies strictly below (or above) the line through `a b`.
fn all_on_side(a: &ExactPoint, b: &ExactPoint, pts: &[&ExactPoint], above: bool) -> bool {
    pts.iter().all(|p| above_line(a, b, p) == above && orientation(a, b, p) != Orientation::Collinear)
}

/// Butterfly plus `m` segments `u_i v_i` through the central crossing, with
/// `u_i` on the top line, `v_i` on the bottom line and slope `-1 / k_i` for
/// the smallest admissible integers `k_1 < k_2 < ...`.
pub fn build_tb(m: usize) -> GeometricDrawing {
    let mut d = build_butterfly();
    let mut labels = d.labels.take().expect("labels");
    let b = |l: &str| d.points[idx(l)].clone();
    let (b1, b2, b3, t6) = (b("b1"), b("b2"), b("b3"), b("t6"));
    let tops: Vec<ExactPoint> = ["t1", "t2", "t3", "t4", "t5", "t7"].iter().map(|l| b(l)).collect();
    let mut us: Vec<ExactPoint> = Vec::new();
    let mut vs: Vec<ExactPoint> = Vec::new();
    let mut k = BigInt::from(3);
    for i in 1..=m {
        let seg = |k: &BigInt| {
            let x = ExactScalar::from_integer(k * 5);
            (pt(-x.clone(), q(10, 1)), pt(x, q(0, 1)))
        };
        let ok = |k: &BigInt, us: &[ExactPoint], vs: &[ExactPoint]| {
            let (u, v) = seg(k);
            let below: Vec<&ExactPoint> = vs.iter().chain([&b1, &b2]).collect();
            let above: Vec<&ExactPoint> = us.iter().chain(tops.iter()).collect();
            all_on_side(&u, &b3, &below, false) && all_on_side(&v, &t6, &above, true)
        };
        // Each side test is a determinant affine in k; every point gives a
        // strict lower bound, and the answer is the next integer above all.
        let prev = k.clone();
        let mut bound = ExactScalar::from_integer(k.clone());
        let mut raise = |sign: i8, f: &dyn Fn(&BigInt) -> ExactScalar| {
            let (a, b) = (f(&BigInt::zero()), f(&BigInt::one()) - f(&BigInt::zero()));
            // Need sign * (a + b k) > 0 with sign * b > 0.
            let slope = if sign > 0 { b.clone() } else { -b.clone() };
            assert!(slope.is_positive(), "side test must improve with k");
            let t = -a / b;
            if t > bound {
                bound = t;
            }
        };
        for p in vs.iter().chain([&b1, &b2]) {
            raise(-1, &|k| cross(&b3.sub(&seg(k).0), &p.sub(&seg(k).0)));
        }
        for p in us.iter().chain(tops.iter()) {
            raise(1, &|k| cross(&seg(k).1.sub(&t6), &p.sub(&t6)));
        }
        k = bound.floor().to_integer() + BigInt::one();
        debug_assert!(ok(&k, &us, &vs));
        debug_assert!(&k - BigInt::one() == prev || !ok(&(&k - BigInt::one()), &us, &vs));
        let (u, v) = seg(&k);
        us.push(u);
        vs.push(v);
        labels.push(format!("u{i}"));
        labels.push(format!("v{i}"));
    }
    let base = d.points.len();
    for i in 0..m {
        d.points.push(us[i].clone());
        d.points.push(vs[i].clone());
        d.edges.push((base + 2 * i, base + 2 * i + 1));
    }
    d.with_labels(labels)
}

/// Slopes of the added segments of [`build_tb`], in order.
pub fn tb_slopes(d: &GeometricDrawing) -> Vec<ExactScalar> {
    d.edges[BUTTERFLY_EDGES.len()..]
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (&d.points[u], &d.points[v]);
            (&b.y - &a.y) / (&b.x - &a.x)
        })
        .collect()
}

/// Rational point on the unit circle at roughly angle `2 pi i / count`.
pub fn circle_point(i: usize, count: usize) -> ExactPoint {
    let t_f = (std::f64::consts::PI * i as f64 / count as f64).tan();
    let t = q((t_f * 1000.0).round() as i64, 1000);
    let t2 = &t * &t;
    let one = ExactScalar::one();
    let den = &one + &t2;
    pt((&one - &t2) / &den, (&t + &t) / &den)
}

/// Star-shaped thrackle of the cycle on `2n + 1` vertices: vertex `i` is
/// joined to `i + n`.
pub fn build_star_cycle(n: usize) -> GeometricDrawing {
    assert!(n >= 1, "star cycle needs n >= 1");
    let count = 2 * n + 1;
    let points: Vec<ExactPoint> = (0..count).map(|i| circle_point(i, count)).collect();
    debug_assert!(points.iter().all(|p| !(p.x.is_zero() && p.y.is_zero())));
    let edges = (0..count).map(|i| (i, (i + n) % count)).collect();
    GeometricDrawing::new(points, edges).with_labels((0..count).map(|i| format!("s{i}")).collect())
}

/// Vertices of the star cycle in cycle order, starting at 0.
pub fn star_cycle_order(n: usize) -> Vec<usize> {
    let count = 2 * n + 1;
    (0..count).map(|j| (j * n) % count).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometric::{edge_vertex_ratio, is_maximal_geometric, verify_geometric};
    use num_traits::Signed;

    #[test]
    fn butterfly_counts_and_constraints() {
        let d = build_butterfly();
        assert_eq!((d.points.len(), d.edges.len()), (10, 7));
        let r = butterfly_constraints(&d.points);
        assert_eq!(r.constraints.len(), 10);
        assert!(r.all_satisfied(), "{:?}", r);
        assert!(verify_geometric(&d).unwrap().ok);
        assert!(is_maximal_geometric(&d).unwrap());
        assert_eq!(edge_vertex_ratio(&d).unwrap(), q(7, 10));
    }

    #[test]
    fn moved_t4_breaks_a_constraint() {
        let mut p = butterfly_points();
        p[idx("t4")].y = q(7, 1);
        assert!(!butterfly_constraints(&p).all_satisfied());
    }

    #[test]
    fn small_families() {
        let a = build_ta(1);
        assert!(verify_geometric(&a).unwrap().ok && is_maximal_geometric(&a).unwrap());
        assert_eq!(edge_vertex_ratio(&a).unwrap(), q(7, 11));
        let b = build_tb(1);
        assert!(verify_geometric(&b).unwrap().ok && is_maximal_geometric(&b).unwrap());
        assert_eq!(edge_vertex_ratio(&b).unwrap(), q(2, 3));
    }

    #[test]
    fn tb_slopes_increase_and_are_negative() {
        let s = tb_slopes(&build_tb(6));
        assert!(s.iter().all(|x| x.is_negative()));
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn pentagram() {
        let d = build_star_cycle(2);
        assert!(verify_geometric(&d).unwrap().ok);
        assert_eq!(star_cycle_order(2), vec![0, 2, 4, 1, 3]);
        for n in 2..6 {
            assert!(verify_geometric(&build_star_cycle(n)).unwrap().ok, "n = {n}");
        }
    }
}
