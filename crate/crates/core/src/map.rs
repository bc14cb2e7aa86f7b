//! Mutable combinatorial map of a planarized drawing.
//!
//! Nodes are drawing vertices and crossing points; each segment between two
//! consecutive nodes of an edge is a pair of darts `(2k, 2k + 1)`, so
//! `twin(d) = d ^ 1`. Rotations are counterclockwise. The face to the left of
//! a dart `d` continues with `face_next(d) = prev_ccw(twin(d))`.

use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Vertex(usize),
    Crossing,
}

/// Insertion position for a new dart at a node: right after `Dart(d)`
/// counterclockwise around `origin(d)`, or the only position at a node with
/// no darts yet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    Dart(usize),
    Bare(usize),
}

#[derive(Clone, Debug, Default)]
pub struct PlaneMap {
    nodes: Vec<NodeKind>,
    node_dart: Vec<Option<usize>>,
    vertex_node: Vec<usize>,
    origin: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    edge: Vec<usize>,
    forward: Vec<bool>,
    edge_ends: Vec<(usize, usize)>,
}

/// Faces of a map, enumerated by their smallest dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    /// Face index of the face to the left of each dart.
    pub face_of: Vec<usize>,
    /// Boundary darts of each face in traversal order, starting at the
    /// smallest dart.
    pub boundary: Vec<Vec<usize>>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }
}

#[inline]
pub fn twin(d: usize) -> usize {
    d ^ 1
}

impl PlaneMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self) -> usize {
        let id = self.vertex_node.len();
        let node = self.push_node(NodeKind::Vertex(id));
        self.vertex_node.push(node);
        id
    }

    /// Register an edge between two vertices; its darts are added separately.
    pub fn add_edge(&mut self, tail: usize, head: usize) -> usize {
        self.edge_ends.push((tail, head));
        self.edge_ends.len() - 1
    }

    pub fn push_node(&mut self, kind: NodeKind) -> usize {
        self.nodes.push(kind);
        self.node_dart.push(None);
        self.nodes.len() - 1
    }

    /// New segment from node `a` to node `b` along `edge`; rotations are left
    /// unset (self-loops) and must be fixed with [`PlaneMap::set_rotation`].
    pub fn push_segment(&mut self, a: usize, b: usize, edge: usize, forward: bool) -> usize {
        let d = self.origin.len();
        self.origin.extend([a, b]);
        self.next.extend([d, d + 1]);
        self.prev.extend([d, d + 1]);
        self.edge.extend([edge, edge]);
        self.forward.extend([forward, !forward]);
        d
    }

    /// Set the counterclockwise rotation of a node.
    pub fn set_rotation(&mut self, node: usize, darts: &[usize]) {
        let k = darts.len();
        for (i, &d) in darts.iter().enumerate() {
            debug_assert_eq!(self.origin[d], node);
            self.next[d] = darts[(i + 1) % k];
            self.prev[d] = darts[(i + k - 1) % k];
        }
        self.node_dart[node] = darts.first().copied();
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_darts(&self) -> usize {
        self.origin.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_node.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn node_kind(&self, n: usize) -> NodeKind {
        self.nodes[n]
    }

    pub fn vertex_node(&self, v: usize) -> usize {
        self.vertex_node[v]
    }

    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        self.edge_ends[e]
    }

    pub fn origin(&self, d: usize) -> usize {
        self.origin[d]
    }

    pub fn head(&self, d: usize) -> usize {
        self.origin[twin(d)]
    }

    pub fn next_ccw(&self, d: usize) -> usize {
        self.next[d]
    }

    pub fn prev_ccw(&self, d: usize) -> usize {
        self.prev[d]
    }

    pub fn face_next(&self, d: usize) -> usize {
        self.prev[twin(d)]
    }

    pub fn edge_of(&self, d: usize) -> usize {
        self.edge[d]
    }

    /// Dart points from the edge's tail towards its head.
    pub fn is_forward(&self, d: usize) -> bool {
        self.forward[d]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.darts_around(node).len()
    }

    /// Darts leaving `node` in counterclockwise order.
    pub fn darts_around(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if let Some(start) = self.node_dart[node] {
            let mut d = start;
            loop {
                out.push(d);
                d = self.next[d];
                if d == start {
                    break;
                }
            }
        }
        out
    }

    pub fn is_bare(&self, node: usize) -> bool {
        self.node_dart[node].is_none()
    }

    /// Every corner at a node: one per outgoing dart, or the single bare
    /// corner of a dartless node.
    pub fn corners(&self, node: usize) -> Vec<Corner> {
        if self.is_bare(node) {
            vec![Corner::Bare(node)]
        } else {
            self.darts_around(node).into_iter().map(Corner::Dart).collect()
        }
    }

    pub fn corner_node(&self, c: Corner) -> usize {
        match c {
            Corner::Dart(d) => self.origin[d],
            Corner::Bare(n) => n,
        }
    }

    pub fn faces(&self) -> Faces {
        let m = self.num_darts();
        let mut face_of = vec![usize::MAX; m];
        let mut boundary = Vec::new();
        for start in 0..m {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = boundary.len();
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = f;
                cycle.push(d);
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            boundary.push(cycle);
        }
        Faces { face_of, boundary }
    }

    /// Darts of the face to the left of `d`, starting at `d`.
    pub fn face_walk(&self, d: usize) -> Vec<usize> {
        let mut out = vec![d];
        let mut x = self.face_next(d);
        while x != d {
            out.push(x);
            x = self.face_next(x);
        }
        out
    }

    /// Nodes with at least one dart form a single connected component.
    pub fn is_connected(&self) -> bool {
        let Some(start) = (0..self.num_nodes()).find(|&n| !self.is_bare(n)) else {
            return true;
        };
        let mut seen = vec![false; self.num_nodes()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(n) = stack.pop() {
            for d in self.darts_around(n) {
                let h = self.head(d);
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        (0..self.num_nodes()).all(|n| self.is_bare(n) || seen[n])
    }

    /// Euler characteristic of the dart-carrying part equals two.
    pub fn euler_ok(&self) -> bool {
        let nodes = (0..self.num_nodes()).filter(|&n| !self.is_bare(n)).count();
        if nodes == 0 {
            return true;
        }
        nodes + self.faces().len() == self.num_darts() / 2 + 2
    }

    fn link_after(&mut self, after: usize, d: usize) {
        let n = self.next[after];
        self.next[after] = d;
        self.prev[d] = after;
        self.next[d] = n;
        self.prev[n] = d;
    }

    fn attach(&mut self, corner: Corner, d: usize) {
        match corner {
            Corner::Dart(a) => self.link_after(a, d),
            Corner::Bare(n) => {
                self.next[d] = d;
                self.prev[d] = d;
                self.node_dart[n] = Some(d);
            }
        }
    }

    /// Split the segment of dart `d` (p -> q) at a new crossing node `x`.
    /// Afterwards `d` runs p -> x, `twin(d)` runs x -> p and the returned dart
    /// runs x -> q, with the rotation at `x` being `[returned, twin(d)]`.
    pub fn subdivide(&mut self, d: usize) -> (usize, usize) {
        let t = twin(d);
        let q = self.origin[t];
        let x = self.push_node(NodeKind::Crossing);
        let fwd = self.forward[d];
        let n = self.push_segment(x, q, self.edge[d], fwd);
        let nt = twin(n);
        // nt takes the place of t in q's rotation.
        if self.next[t] == t {
            self.next[nt] = nt;
            self.prev[nt] = nt;
        } else {
            let (a, b) = (self.prev[t], self.next[t]);
            self.next[a] = nt;
            self.prev[nt] = a;
            self.next[nt] = b;
            self.prev[b] = nt;
        }
        if self.node_dart[q] == Some(t) {
            self.node_dart[q] = Some(nt);
        }
        self.origin[t] = x;
        self.set_rotation(x, &[n, t]);
        (x, n)
    }

    /// Connect two corners with a new segment of `edge`; returns the dart
    /// leaving corner `a`.
    pub fn connect(&mut self, a: Corner, b: Corner, edge: usize, forward: bool) -> usize {
        let na = self.corner_node(a);
        let nb = self.corner_node(b);
        let d = self.push_segment(na, nb, edge, forward);
        self.attach(a, d);
        self.attach(b, twin(d));
        d
    }

    /// Extend an arc of `edge` from corner `tip` across the segment of dart
    /// `c`, entering from the left of `c`. `c` must lie on the face of `tip`.
    /// Returns the corner for the next step, on the right side of `c`.
    pub fn cross_from(&mut self, tip: Corner, c: usize, edge: usize) -> Corner {
        debug_assert_ne!(self.corner_node(tip), self.head(c));
        let (x, n) = self.subdivide(c);
        let back = self.push_segment(x, self.corner_node(tip), edge, false);
        let arc = twin(back);
        self.link_after(n, back);
        self.attach(tip, arc);
        Corner::Dart(twin(c))
    }

    /// Dart on the face of a corner whose left face is that face.
    pub fn corner_face_dart(&self, c: Corner) -> Option<usize> {
        match c {
            Corner::Dart(d) => Some(d),
            Corner::Bare(_) => None,
        }
    }

    /// Outgoing dart of `edge` at its tail vertex.
    pub fn first_dart(&self, edge: usize) -> Option<usize> {
        let tail = self.vertex_node[self.edge_ends[edge].0];
        self.darts_around(tail)
            .into_iter()
            .find(|&d| self.edge[d] == edge && self.forward[d])
    }

    /// Forward darts of `edge` from tail to head.
    pub fn edge_darts(&self, edge: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let Some(mut d) = self.first_dart(edge) else {
            return out;
        };
        let head = self.vertex_node[self.edge_ends[edge].1];
        loop {
            out.push(d);
            let x = self.head(d);
            if x == head || self.nodes[x] != NodeKind::Crossing {
                break;
            }
            d = self
                .darts_around(x)
                .into_iter()
                .find(|&o| self.edge[o] == edge && self.forward[o])
                .expect("edge continues through a crossing");
        }
        out
    }

    /// Remove every dart of `edges`, smoothing the crossing nodes they leave
    /// behind. Isolated drawing vertices that lose all darts become bare.
    pub fn remove_edges(&self, edges: &BTreeSet<usize>) -> PlaneMap {
        // Rebuild from scratch keeping only the remaining edges' crossing
        // structure: walk each kept edge and re-create its segments.
        let mut out = PlaneMap::new();
        for _ in 0..self.num_vertices() {
            out.add_vertex();
        }
        let keep: Vec<usize> = (0..self.num_edges()).filter(|e| !edges.contains(e)).collect();
        let mut new_id = vec![usize::MAX; self.num_edges()];
        for &e in &keep {
            let (t, h) = self.edge_ends[e];
            new_id[e] = out.add_edge(t, h);
        }
        // New crossing node per old crossing node whose two edges are kept.
        let mut cross_node = vec![usize::MAX; self.num_nodes()];
        let mut chains: Vec<(usize, Vec<usize>)> = Vec::new();
        for &e in &keep {
            let mut nodes = vec![self.vertex_node[self.edge_ends[e].0]];
            for d in self.edge_darts(e) {
                let x = self.head(d);
                if self.nodes[x] == NodeKind::Crossing {
                    let other_kept = self
                        .darts_around(x)
                        .iter()
                        .any(|&o| self.edge[o] != e && !edges.contains(&self.edge[o]));
                    if other_kept {
                        nodes.push(x);
                    }
                } else {
                    nodes.push(x);
                }
            }
            chains.push((e, nodes));
        }
        for (_, nodes) in &chains {
            for &x in nodes {
                if self.nodes[x] == NodeKind::Crossing && cross_node[x] == usize::MAX {
                    cross_node[x] = out.push_node(NodeKind::Crossing);
                }
            }
        }
        let map_node = |x: usize| -> usize {
            match self.nodes[x] {
                NodeKind::Vertex(v) => v,
                NodeKind::Crossing => cross_node[x],
            }
        };
        // (old node, old edge, towards head?) -> new dart leaving that node
        let mut slot = std::collections::HashMap::new();
        for (e, nodes) in &chains {
            for w in nodes.windows(2) {
                let d = out.push_segment(map_node(w[0]), map_node(w[1]), new_id[*e], true);
                slot.insert((w[0], *e, true), d);
                slot.insert((w[1], *e, false), twin(d));
            }
        }
        // Rotations inherit the cyclic order of the surviving darts.
        for x in 0..self.num_nodes() {
            let new_node = match self.nodes[x] {
                NodeKind::Vertex(v) => v,
                NodeKind::Crossing if cross_node[x] != usize::MAX => cross_node[x],
                NodeKind::Crossing => continue,
            };
            let rot: Vec<usize> = self
                .darts_around(x)
                .into_iter()
                .filter_map(|d| slot.get(&(x, self.edge[d], self.forward[d])).copied())
                .collect();
            if !rot.is_empty() {
                out.set_rotation(new_node, &rot);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two vertices joined by one edge.
    fn single_edge() -> PlaneMap {
        let mut m = PlaneMap::new();
        let a = m.add_vertex();
        let b = m.add_vertex();
        let e = m.add_edge(a, b);
        m.connect(Corner::Bare(a), Corner::Bare(b), e, true);
        m
    }

    #[test]
    fn single_edge_has_one_face() {
        let m = single_edge();
        let f = m.faces();
        assert_eq!(f.len(), 1);
        assert!(m.euler_ok());
    }

    #[test]
    fn subdivide_keeps_faces() {
        let mut m = single_edge();
        let (x, n) = m.subdivide(0);
        assert_eq!(m.origin(n), x);
        assert_eq!(m.head(0), x);
        assert_eq!(m.edge_darts(0), vec![0, n]);
        assert_eq!(m.faces().len(), 1);
        assert!(m.euler_ok());
    }

    #[test]
    fn crossing_a_triangle_splits_a_face() {
        // Triangle a b c, then an arc from a new vertex crossing bc and ending
        // at another new vertex outside.
        let mut m = PlaneMap::new();
        let v: Vec<usize> = (0..3).map(|_| m.add_vertex()).collect();
        let e0 = m.add_edge(v[0], v[1]);
        let e1 = m.add_edge(v[1], v[2]);
        let e2 = m.add_edge(v[2], v[0]);
        let d0 = m.push_segment(0, 1, e0, true);
        let d1 = m.push_segment(1, 2, e1, true);
        let d2 = m.push_segment(2, 0, e2, true);
        m.set_rotation(0, &[d0, twin(d2)]);
        m.set_rotation(1, &[d1, twin(d0)]);
        m.set_rotation(2, &[d2, twin(d1)]);
        assert_eq!(m.faces().len(), 2);
        let p = m.add_vertex();
        let q = m.add_vertex();
        let arc = m.add_edge(p, q);
        let pn = m.vertex_node(p);
        let qn = m.vertex_node(q);
        // p sits in the face left of d1
        let tip = m.cross_from(Corner::Bare(pn), d1, arc);
        m.connect(tip, Corner::Bare(qn), arc, true);
        assert!(m.is_connected());
        assert!(m.euler_ok());
        assert_eq!(m.faces().len(), 2);
        assert_eq!(m.edge_darts(arc).len(), 2);
        let removed: BTreeSet<usize> = [arc].into_iter().collect();
        let r = m.remove_edges(&removed);
        assert_eq!(r.faces().len(), 2);
        assert!(r.euler_ok());
        assert!(r.is_bare(r.vertex_node(p)));
    }
}
