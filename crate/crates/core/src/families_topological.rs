//! Combinatorial constructions: the six-cycle thrackle, isolated-vertex
//! augmentation, Kynčl's example, the doubled star cycle and its belts.

use crate::combinatorial::{
    planarize, CombinatorialDrawing, Crossing, Edge, EdgeEnd, End, FaceAnchor, IsolatedVertex, Side, Sign,
};
use crate::error::{SearchError, TopologyError};
use crate::belt::{belt_polylines, t1_polylines};
use crate::polyline::from_polylines;
use crate::search::{all_insertions, apply_witness, SearchBudget};

/// A single edge `tail -> head`.
pub fn single_edge(tail: &str, head: &str) -> CombinatorialDrawing {
    CombinatorialDrawing {
        vertices: vec![tail.to_string(), head.to_string()],
        edges: vec![Edge { name: format!("{tail}{head}"), tail: 0, head: 1, crossings: Vec::new() }],
        rotations: vec![vec![EdgeEnd { edge: 0, end: End::Tail }], vec![EdgeEnd { edge: 0, end: End::Head }]],
        isolated: Vec::new(),
        outer_face: None,
    }
}

/// One anchor per face, naming each face by its smallest dart.
pub fn face_anchors(d: &CombinatorialDrawing) -> Result<Vec<FaceAnchor>, TopologyError> {
    let p = planarize(d)?;
    Ok(p.faces.boundary.iter().map(|b| p.dart_anchor(b[0])).collect())
}

/// Add `k` isolated vertices named `{prefix}{i}` in the face of `anchor`.
pub fn add_isolated_named(
    d: &CombinatorialDrawing,
    anchor: FaceAnchor,
    k: usize,
    prefix: &str,
) -> Result<CombinatorialDrawing, TopologyError> {
    let mut out = d.clone();
    let start = d.isolated.len();
    for i in 0..k {
        out.isolated.push(IsolatedVertex { name: format!("{prefix}{}", start + i), anchor });
    }
    planarize(&out)?;
    Ok(out)
}

pub fn add_isolated(d: &CombinatorialDrawing, anchor: FaceAnchor, k: usize) -> Result<CombinatorialDrawing, TopologyError> {
    add_isolated_named(d, anchor, k, "w")
}

/// Every thrackle obtained by adding the edge `u v` to `d`.
pub fn all_extensions(
    d: &CombinatorialDrawing,
    u: &str,
    v: &str,
    edge_name: &str,
    budget: SearchBudget,
) -> Result<Vec<CombinatorialDrawing>, SearchError> {
    let ui = d.vertex_index(u)?;
    let vi = d.vertex_index(v)?;
    let mut out: Vec<CombinatorialDrawing> = Vec::new();
    for w in all_insertions(d, ui, vi, budget)? {
        let next = apply_witness(d, &w, edge_name)?;
        if !out.contains(&next) {
            out.push(next);
        }
    }
    Ok(out)
}

/// Every thrackle obtained by adding a new vertex `v` in any face and the
/// edge `u v`.
pub fn all_pendant_extensions(
    d: &CombinatorialDrawing,
    u: &str,
    v: &str,
    edge_name: &str,
    budget: SearchBudget,
) -> Result<Vec<CombinatorialDrawing>, SearchError> {
    let mut out: Vec<CombinatorialDrawing> = Vec::new();
    for anchor in face_anchors(d)? {
        let mut with = d.clone();
        with.isolated.push(IsolatedVertex { name: v.to_string(), anchor });
        for next in all_extensions(&with, u, v, edge_name, budget)? {
            if !out.contains(&next) {
                out.push(next);
            }
        }
    }
    Ok(out)
}

/// Drawing from a crossing table in which every vertex has degree at most
/// two, so rotations are forced. Crossings name the other edge and the side
/// it comes from.
pub fn from_crossing_table(
    vertices: &[&str],
    edges: &[(&str, &str, &str, &[(&str, Sign)])],
) -> CombinatorialDrawing {
    let vid = |n: &str| vertices.iter().position(|v| *v == n).expect("known vertex");
    let eid = |n: &str| edges.iter().position(|e| e.0 == n).expect("known edge");
    let edges_out: Vec<Edge> = edges
        .iter()
        .map(|(name, t, h, cs)| Edge {
            name: name.to_string(),
            tail: vid(t),
            head: vid(h),
            crossings: cs.iter().map(|&(o, sign)| Crossing { edge: eid(o), sign }).collect(),
        })
        .collect();
    let rotations = (0..vertices.len())
        .map(|v| {
            let mut rot = Vec::new();
            for (i, e) in edges_out.iter().enumerate() {
                if e.tail == v {
                    rot.push(EdgeEnd { edge: i, end: End::Tail });
                }
                if e.head == v {
                    rot.push(EdgeEnd { edge: i, end: End::Head });
                }
            }
            assert!(rot.len() <= 2, "rotation of a vertex of degree > 2 is not forced");
            rot
        })
        .collect();
    CombinatorialDrawing {
        vertices: vertices.iter().map(|v| v.to_string()).collect(),
        edges: edges_out,
        rotations,
        isolated: Vec::new(),
        outer_face: None,
    }
    .normalized()
}

/// The central triangle of [`build_c6`], bounded by `ab`, `cd` and `ef`.
pub const C6_CENTRAL_FACE: FaceAnchor = FaceAnchor { edge: 0, segment: 1, side: Side::Right };

/// Thrackle of the six-cycle `a b c d e f`.
pub fn build_c6() -> CombinatorialDrawing {
    use Sign::{Minus as M, Plus as P};
    from_crossing_table(
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("ab", "a", "b", &[("ef", M), ("cd", P), ("de", P)]),
            ("bc", "b", "c", &[("de", M), ("fa", P), ("ef", M)]),
            ("cd", "c", "d", &[("ab", M), ("ef", P), ("fa", P)]),
            ("de", "d", "e", &[("fa", M), ("bc", P), ("ab", M)]),
            ("ef", "e", "f", &[("cd", M), ("ab", P), ("bc", P)]),
            ("fa", "f", "a", &[("bc", M), ("de", P), ("cd", M)]),
        ],
    )
}

/// Kynčl's example: two paths `b a c` and `y x z` whose edges cross
/// pairwise.
pub fn build_kyncl() -> CombinatorialDrawing {
    use Sign::{Minus as M, Plus as P};
    from_crossing_table(
        &["a", "b", "c", "x", "y", "z"],
        &[
            ("ab", "a", "b", &[("xz", P), ("xy", P)]),
            ("ac", "a", "c", &[("xy", P), ("xz", P)]),
            ("xy", "x", "y", &[("ab", M), ("ac", M)]),
            ("xz", "x", "z", &[("ac", M), ("ab", M)]),
        ],
    )
}

/// Doubled star cycle on `4n + 2` vertices.
pub fn build_t1(n: usize) -> Result<CombinatorialDrawing, TopologyError> {
    assert!(n >= 2, "T1 needs n >= 2");
    from_polylines(&t1_polylines(n))
}

/// The doubled star cycle with one Kynčl belt.
pub fn build_t2(n: usize) -> Result<CombinatorialDrawing, TopologyError> {
    build_tk(n, 1)
}

/// The doubled star cycle with `k` nested Kynčl belts.
pub fn build_tk(n: usize, k: usize) -> Result<CombinatorialDrawing, TopologyError> {
    assert!(n >= 2, "belts need n >= 2");
    assert!(k >= 1, "at least one belt");
    from_polylines(&belt_polylines(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorial::{edge_vertex_ratio_topological, verify_topological};
    use crate::search::{insertable_pair, is_maximal_topological, Exact, Maximality};
    use num_rational::BigRational;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn budget() -> SearchBudget {
        SearchBudget::states(10_000_000)
    }

    #[test]
    fn c6_counts_and_central_face() {
        let d = build_c6();
        assert_eq!((d.vertices.len(), d.edges.len(), d.total_crossings()), (6, 6, 9));
        assert!(verify_topological(&d).unwrap().ok);
        let p = planarize(&d).unwrap();
        let f0 = p.anchor_face(&C6_CENTRAL_FACE).unwrap();
        let mut hosts: Vec<&str> = p.faces.boundary[f0].iter().map(|&x| d.edges[p.map.edge_of(x)].name.as_str()).collect();
        hosts.sort();
        assert_eq!(hosts, ["ab", "cd", "ef"]);
        assert!(matches!(is_maximal_topological(&d, budget()).unwrap(), Maximality::Maximal));
    }

    #[test]
    fn c6_with_isolated_vertices() {
        let one = add_isolated(&build_c6(), C6_CENTRAL_FACE, 1).unwrap();
        assert!(matches!(is_maximal_topological(&one, budget()).unwrap(), Maximality::Maximal));
        let many = add_isolated(&build_c6(), C6_CENTRAL_FACE, 114).unwrap();
        assert_eq!(edge_vertex_ratio_topological(&many).unwrap(), ratio(1, 20));
    }

    #[test]
    fn kyncl_is_maximal_and_a_y_fails() {
        let d = build_kyncl();
        assert!(verify_topological(&d).unwrap().ok);
        assert_eq!(edge_vertex_ratio_topological(&d).unwrap(), ratio(2, 3));
        assert!(matches!(is_maximal_topological(&d, budget()).unwrap(), Maximality::Maximal));
        let (a, y) = (d.vertex_index("a").unwrap(), d.vertex_index("y").unwrap());
        assert!(matches!(insertable_pair(&d, a, y, budget()).unwrap(), Exact::No));
    }

    #[test]
    fn kyncl_is_one_of_its_extensions() {
        // Regrow the drawing edge by edge and check it is among the results.
        let b = budget();
        let mut ac = all_pendant_extensions(&single_edge("a", "b"), "a", "c", "ac", b).unwrap();
        ac.dedup();
        let mut xy = Vec::new();
        for d in &ac {
            for anchor in face_anchors(d).unwrap() {
                let mut with = add_isolated_named(d, anchor, 1, "x").unwrap();
                with.isolated.last_mut().unwrap().name = "x".into();
                for e in all_pendant_extensions(&with, "x", "y", "xy", b).unwrap() {
                    if !xy.contains(&e) {
                        xy.push(e);
                    }
                }
            }
        }
        let mut last = Vec::new();
        for d in &xy {
            last.extend(all_pendant_extensions(d, "x", "z", "xz", b).unwrap());
        }
        let target = build_kyncl();
        let same = |d: &CombinatorialDrawing| {
            let mut e = d.clone();
            let perm: Vec<usize> = target.vertices.iter().map(|n| e.vertex_index(n).unwrap()).collect();
            e = relabel(&e, &perm);
            e == target || e == target.mirrored()
        };
        assert!(last.iter().any(same));
    }

    fn relabel(d: &CombinatorialDrawing, order: &[usize]) -> CombinatorialDrawing {
        let mut inv = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            inv[v] = i;
        }
        let mut out = d.clone();
        out.vertices = order.iter().map(|&v| d.vertices[v].clone()).collect();
        out.rotations = order.iter().map(|&v| d.rotations[v].clone()).collect();
        for e in &mut out.edges {
            e.tail = inv[e.tail];
            e.head = inv[e.head];
        }
        out.normalized()
    }

    #[test]
    fn t1_small() {
        let d = build_t1(2).unwrap();
        assert_eq!((d.vertices.len(), d.edges.len()), (10, 10));
        assert!(verify_topological(&d).unwrap().ok);
        let d = build_t1(4).unwrap();
        assert_eq!((d.vertices.len(), d.edges.len()), (18, 18));
        assert!(verify_topological(&d).unwrap().ok);
    }

    #[test]
    fn t2_counts() {
        let d = build_t2(2).unwrap();
        assert_eq!((d.num_vertices_total(), d.edges.len()), (60, 50));
        assert!(verify_topological(&d).unwrap().ok);
        assert_eq!(edge_vertex_ratio_topological(&d).unwrap(), ratio(5, 6));
    }
}
