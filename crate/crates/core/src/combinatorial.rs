//! Drawings given by their crossing structure, and their planarization.
//!
//! Vertex indices cover `vertices` first and then `isolated`; edges may only
//! end at the former.

use std::collections::HashMap;
use std::fmt;

use crate::error::TopologyError;
use crate::geometric::{ThrackleVerdict, Violation};
use crate::geometry::{ExactScalar, Scalar};
use crate::map::{twin, Faces, NodeKind, PlaneMap};

/// Side from which the other edge arrives: `Plus` when it passes from the
/// left of this edge to its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// A face named by one side of one segment of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceAnchor {
    pub edge: usize,
    pub segment: usize,
    pub side: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edge: usize,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    /// Crossings in order from tail to head.
    pub crossings: Vec<Crossing>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedVertex {
    pub name: String,
    pub anchor: FaceAnchor,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CombinatorialDrawing {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    /// Counterclockwise edge-ends around each entry of `vertices`.
    pub rotations: Vec<Vec<EdgeEnd>>,
    pub isolated: Vec<IsolatedVertex>,
    /// Face to draw as the unbounded one; verification ignores it.
    pub outer_face: Option<FaceAnchor>,
}

/// Planarized drawing with faces resolved.
#[derive(Clone, Debug)]
pub struct Planarization {
    pub map: PlaneMap,
    pub faces: Faces,
    /// Forward dart of every segment, per edge.
    pub segments: Vec<Vec<usize>>,
    /// Dart whose left face holds each isolated vertex.
    pub isolated_dart: Vec<usize>,
    pub outer_face: Option<usize>,
    pub vertex_count: usize,
}

impl Planarization {
    pub fn num_crossings(&self) -> usize {
        (0..self.map.num_nodes())
            .filter(|&n| self.map.node_kind(n) == NodeKind::Crossing)
            .count()
    }

    pub fn num_segments(&self) -> usize {
        self.map.num_darts() / 2
    }

    pub fn anchor_dart(&self, a: &FaceAnchor) -> Result<usize, TopologyError> {
        let segs = self
            .segments
            .get(a.edge)
            .ok_or_else(|| TopologyError::BadAnchor(format!("edge {} out of range", a.edge)))?;
        let d = *segs.get(a.segment).ok_or_else(|| {
            TopologyError::BadAnchor(format!(
                "segment {} of edge {} out of range ({} segments)",
                a.segment,
                a.edge,
                segs.len()
            ))
        })?;
        Ok(match a.side {
            Side::Left => d,
            Side::Right => twin(d),
        })
    }

    pub fn anchor_face(&self, a: &FaceAnchor) -> Result<usize, TopologyError> {
        Ok(self.faces.face_of[self.anchor_dart(a)?])
    }

    /// Face holding isolated vertex `i` (index into `isolated`).
    pub fn isolated_face(&self, i: usize) -> usize {
        self.faces.face_of[self.isolated_dart[i]]
    }

    /// Faces incident to a vertex of the full index space.
    pub fn vertex_faces(&self, v: usize) -> Vec<usize> {
        if v >= self.vertex_count {
            return vec![self.isolated_face(v - self.vertex_count)];
        }
        let node = self.map.vertex_node(v);
        let mut out: Vec<usize> = self
            .map
            .darts_around(node)
            .into_iter()
            .map(|d| self.faces.face_of[d])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Canonical anchor for the face to the left of any dart.
    pub fn dart_anchor(&self, d: usize) -> FaceAnchor {
        dart_anchors(&self.map)[d]
    }
}

/// `(edge, segment, side)` of every dart, numbering segments along edges.
pub fn dart_anchors(map: &PlaneMap) -> Vec<FaceAnchor> {
    let mut out = vec![
        FaceAnchor {
            edge: usize::MAX,
            segment: 0,
            side: Side::Left
        };
        map.num_darts()
    ];
    for e in 0..map.num_edges() {
        for (s, d) in map.edge_darts(e).into_iter().enumerate() {
            out[d] = FaceAnchor { edge: e, segment: s, side: Side::Left };
            out[twin(d)] = FaceAnchor { edge: e, segment: s, side: Side::Right };
        }
    }
    out
}

fn inconsistent(msg: impl Into<String>) -> TopologyError {
    TopologyError::Inconsistent(msg.into())
}

impl CombinatorialDrawing {
    pub fn num_vertices_total(&self) -> usize {
        self.vertices.len() + self.isolated.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        if v < self.vertices.len() {
            &self.vertices[v]
        } else {
            &self.isolated[v - self.vertices.len()].name
        }
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, TopologyError> {
        (0..self.num_vertices_total())
            .find(|&v| self.vertex_name(v) == name)
            .ok_or_else(|| TopologyError::UnknownVertex(name.to_string()))
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges
            .iter()
            .any(|e| (e.tail, e.head) == (u, v) || (e.tail, e.head) == (v, u))
    }

    pub fn total_crossings(&self) -> usize {
        self.edges.iter().map(|e| e.crossings.len()).sum::<usize>() / 2
    }

    /// Rotations rotated to start at their smallest edge-end.
    pub fn normalized(mut self) -> Self {
        for rot in &mut self.rotations {
            if let Some(i) = (0..rot.len()).min_by_key(|&i| rot[i]) {
                rot.rotate_left(i);
            }
        }
        self
    }

    /// Mirror image: every crossing sign and every rotation reversed.
    pub fn mirrored(&self) -> Self {
        let mut out = self.clone();
        for e in &mut out.edges {
            for c in &mut e.crossings {
                c.sign = c.sign.flip();
            }
        }
        for rot in &mut out.rotations {
            rot.reverse();
        }
        let flip = |a: &mut FaceAnchor| {
            a.side = match a.side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            }
        };
        for iso in &mut out.isolated {
            flip(&mut iso.anchor);
        }
        if let Some(a) = &mut out.outer_face {
            flip(a);
        }
        out.normalized()
    }

    /// Sub-drawing on the edges in `keep` and their endpoints. Isolated
    /// vertices and the outer face are dropped, since their anchors name
    /// segments that may disappear.
    pub fn restricted(&self, keep: &std::collections::BTreeSet<usize>) -> Self {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (v, name) in self.vertices.iter().enumerate() {
            if keep.iter().any(|&e| self.edges[e].tail == v || self.edges[e].head == v) {
                vmap[v] = vertices.len();
                vertices.push(name.clone());
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        for (i, &e) in keep.iter().enumerate() {
            emap[e] = i;
        }
        let edges = keep
            .iter()
            .map(|&e| {
                let ed = &self.edges[e];
                Edge {
                    name: ed.name.clone(),
                    tail: vmap[ed.tail],
                    head: vmap[ed.head],
                    crossings: ed
                        .crossings
                        .iter()
                        .filter(|c| emap[c.edge] != usize::MAX)
                        .map(|c| Crossing { edge: emap[c.edge], sign: c.sign })
                        .collect(),
                }
            })
            .collect();
        let rotations = (0..self.vertices.len())
            .filter(|&v| vmap[v] != usize::MAX)
            .map(|v| {
                self.rotations[v]
                    .iter()
                    .filter(|ee| emap[ee.edge] != usize::MAX)
                    .map(|ee| EdgeEnd { edge: emap[ee.edge], end: ee.end })
                    .collect()
            })
            .collect();
        CombinatorialDrawing { vertices, edges, rotations, isolated: Vec::new(), outer_face: None }.normalized()
    }

    /// Number of crossings between two edges.
    pub fn crossings_between(&self, e: usize, f: usize) -> usize {
        self.edges[e].crossings.iter().filter(|c| c.edge == f).count()
    }

    pub fn shared_endpoints(&self, e: usize, f: usize) -> usize {
        let (a, b) = (&self.edges[e], &self.edges[f]);
        [a.tail, a.head]
            .iter()
            .filter(|x| **x == b.tail || **x == b.head)
            .count()
    }

    /// Edge-level checks that need no map: indices, loops, rotation contents
    /// and the pairing of crossing occurrences.
    pub fn check_structure(&self) -> Result<(), TopologyError> {
        let nv = self.vertices.len();
        let ne = self.edges.len();
        if self.rotations.len() != nv {
            return Err(inconsistent(format!(
                "{} rotations for {} vertices",
                self.rotations.len(),
                nv
            )));
        }
        let mut names = std::collections::HashSet::new();
        for v in 0..self.num_vertices_total() {
            if !names.insert(self.vertex_name(v)) {
                return Err(inconsistent(format!("duplicate vertex name {:?}", self.vertex_name(v))));
            }
        }
        let mut enames = std::collections::HashSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !enames.insert(e.name.as_str()) {
                return Err(inconsistent(format!("duplicate edge name {:?}", e.name)));
            }
            if e.tail >= nv || e.head >= nv {
                return Err(inconsistent(format!("edge {} ends outside the vertex list", e.name)));
            }
            if e.tail == e.head {
                return Err(inconsistent(format!("edge {} is a loop", e.name)));
            }
            for c in &e.crossings {
                if c.edge >= ne {
                    return Err(inconsistent(format!("edge {} crosses unknown edge {}", e.name, c.edge)));
                }
                if c.edge == i {
                    return Err(inconsistent(format!("edge {} crosses itself", e.name)));
                }
            }
        }
        for e in 0..ne {
            for f in e + 1..ne {
                let fe: Vec<Sign> = self.edges[e]
                    .crossings
                    .iter()
                    .filter(|c| c.edge == f)
                    .map(|c| c.sign)
                    .collect();
                let ef: Vec<Sign> = self.edges[f]
                    .crossings
                    .iter()
                    .filter(|c| c.edge == e)
                    .map(|c| c.sign)
                    .collect();
                if fe.len() != ef.len() {
                    return Err(inconsistent(format!(
                        "edge {} lists {} {} times but {} lists {} {} times",
                        self.edges[e].name,
                        self.edges[f].name,
                        fe.len(),
                        self.edges[f].name,
                        self.edges[e].name,
                        ef.len()
                    )));
                }
                if fe.iter().zip(&ef).any(|(a, b)| *a != b.flip()) {
                    return Err(inconsistent(format!(
                        "signs of crossings between {} and {} do not match",
                        self.edges[e].name, self.edges[f].name
                    )));
                }
            }
        }
        for (v, rot) in self.rotations.iter().enumerate() {
            let mut expected: Vec<EdgeEnd> = Vec::new();
            for (i, e) in self.edges.iter().enumerate() {
                if e.tail == v {
                    expected.push(EdgeEnd { edge: i, end: End::Tail });
                }
                if e.head == v {
                    expected.push(EdgeEnd { edge: i, end: End::Head });
                }
            }
            let mut got = rot.clone();
            got.sort_unstable();
            expected.sort_unstable();
            if got != expected {
                return Err(inconsistent(format!(
                    "rotation at {} does not list its incident edges exactly once",
                    self.vertices[v]
                )));
            }
        }
        Ok(())
    }
}

/// Build the combinatorial map of a drawing and resolve its face anchors.
pub fn planarize(d: &CombinatorialDrawing) -> Result<Planarization, TopologyError> {
    d.check_structure()?;
    let nv = d.vertices.len();
    let mut map = PlaneMap::new();
    for _ in 0..d.num_vertices_total() {
        map.add_vertex();
    }
    for e in &d.edges {
        map.add_edge(e.tail, e.head);
    }
    // Crossing nodes: the k-th crossing of e with f pairs with the k-th of f with e.
    let mut node_at: Vec<Vec<usize>> = d.edges.iter().map(|e| vec![0; e.crossings.len()]).collect();
    let mut pending: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (i, e) in d.edges.iter().enumerate() {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for (pos, c) in e.crossings.iter().enumerate() {
            let k = seen.entry(c.edge).or_insert(0);
            let key = (i.min(c.edge), i.max(c.edge), *k);
            *k += 1;
            let node = if c.edge > i {
                let n = map.push_node(NodeKind::Crossing);
                pending.insert(key, n);
                n
            } else {
                pending[&key]
            };
            node_at[i][pos] = node;
        }
    }
    let mut segments: Vec<Vec<usize>> = Vec::with_capacity(d.edges.len());
    for (i, e) in d.edges.iter().enumerate() {
        let mut chain = vec![map.vertex_node(e.tail)];
        chain.extend(node_at[i].iter().copied());
        chain.push(map.vertex_node(e.head));
        let segs = chain
            .windows(2)
            .map(|w| map.push_segment(w[0], w[1], i, true))
            .collect();
        segments.push(segs);
    }
    // Rotation at each crossing node, from the first edge's perspective.
    let mut done = vec![false; map.num_nodes()];
    for (i, e) in d.edges.iter().enumerate() {
        for (pos, c) in e.crossings.iter().enumerate() {
            let x = node_at[i][pos];
            if done[x] {
                continue;
            }
            done[x] = true;
            let f = c.edge;
            let fpos = (0..d.edges[f].crossings.len())
                .find(|&p| node_at[f][p] == x)
                .expect("paired crossing");
            let e_out = segments[i][pos + 1];
            let e_back = twin(segments[i][pos]);
            let f_out = segments[f][fpos + 1];
            let f_back = twin(segments[f][fpos]);
            let rot = match c.sign {
                Sign::Plus => [e_out, f_back, e_back, f_out],
                Sign::Minus => [e_out, f_out, e_back, f_back],
            };
            map.set_rotation(x, &rot);
        }
    }
    for (v, rot) in d.rotations.iter().enumerate() {
        let darts: Vec<usize> = rot
            .iter()
            .map(|ee| match ee.end {
                End::Tail => segments[ee.edge][0],
                End::Head => twin(*segments[ee.edge].last().expect("edge has a segment")),
            })
            .collect();
        if !darts.is_empty() {
            map.set_rotation(map.vertex_node(v), &darts);
        }
    }
    if !d.edges.is_empty() && (0..nv).any(|v| d.rotations[v].is_empty()) {
        return Err(TopologyError::Disconnected);
    }
    if !map.is_connected() {
        return Err(TopologyError::Disconnected);
    }
    let faces = map.faces();
    let nodes = (0..map.num_nodes()).filter(|&n| !map.is_bare(n)).count();
    let segs = map.num_darts() / 2;
    if nodes > 0 && nodes + faces.len() != segs + 2 {
        return Err(TopologyError::NonPlanar { nodes, segments: segs, faces: faces.len() });
    }
    let mut p = Planarization {
        map,
        faces,
        segments,
        isolated_dart: Vec::new(),
        outer_face: None,
        vertex_count: nv,
    };
    if !d.isolated.is_empty() && d.edges.is_empty() {
        return Err(TopologyError::BadAnchor("no edges to anchor isolated vertices".into()));
    }
    for iso in &d.isolated {
        let dart = p.anchor_dart(&iso.anchor)?;
        p.isolated_dart.push(dart);
    }
    if let Some(a) = &d.outer_face {
        p.outer_face = Some(p.anchor_face(a)?);
    }
    Ok(p)
}

/// Thrackle test: every edge pair meets exactly once, counting shared
/// endpoints and crossings. The first failing pair in lexicographic order is
/// reported; a passing drawing must also planarize.
pub fn verify_topological(d: &CombinatorialDrawing) -> Result<ThrackleVerdict, TopologyError> {
    d.check_structure()?;
    for e in 0..d.edges.len() {
        for f in e + 1..d.edges.len() {
            let shared = d.shared_endpoints(e, f);
            let crossings = d.crossings_between(e, f);
            if shared + crossings != 1 {
                return Ok(ThrackleVerdict::fail(Violation::Count {
                    edges: (e, f),
                    shared_endpoints: shared,
                    crossings,
                }));
            }
        }
    }
    planarize(d)?;
    Ok(ThrackleVerdict::pass())
}

/// `|E| / (|V| + |isolated|)`.
pub fn edge_vertex_ratio_topological(d: &CombinatorialDrawing) -> Result<ExactScalar, TopologyError> {
    let n = d.num_vertices_total();
    if n == 0 {
        return Err(TopologyError::EmptyDrawing);
    }
    Ok(ExactScalar::from_ratio(d.edges.len() as i64, n as i64))
}

/// Read a drawing back out of a map. `names` covers every map vertex and
/// `edge_names` every map edge; dartless vertices become isolated, anchored
/// at the given dart.
pub fn from_map(
    map: &PlaneMap,
    names: &[String],
    edge_names: &[String],
    isolated_dart: &[Option<usize>],
    outer_dart: Option<usize>,
) -> CombinatorialDrawing {
    let anchors = dart_anchors(map);
    let nv_map = map.num_vertices();
    let connected: Vec<usize> = (0..nv_map).filter(|&v| !map.is_bare(map.vertex_node(v))).collect();
    let mut index = vec![usize::MAX; nv_map];
    for (i, &v) in connected.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = Vec::with_capacity(map.num_edges());
    for e in 0..map.num_edges() {
        let (t, h) = map.edge_ends(e);
        let darts = map.edge_darts(e);
        let mut crossings = Vec::new();
        for &d in &darts[..darts.len().saturating_sub(1)] {
            let x = map.head(d);
            let out = map
                .darts_around(x)
                .into_iter()
                .find(|&o| map.edge_of(o) == e && map.is_forward(o))
                .expect("edge continues");
            let after = map.next_ccw(out);
            let sign = if map.is_forward(after) { Sign::Minus } else { Sign::Plus };
            crossings.push(Crossing { edge: map.edge_of(after), sign });
        }
        edges.push(Edge { name: edge_names[e].clone(), tail: index[t], head: index[h], crossings });
    }
    let mut rotations = Vec::with_capacity(connected.len());
    for &v in &connected {
        let rot = map
            .darts_around(map.vertex_node(v))
            .into_iter()
            .map(|d| EdgeEnd {
                edge: map.edge_of(d),
                end: if map.is_forward(d) { End::Tail } else { End::Head },
            })
            .collect();
        rotations.push(rot);
    }
    let isolated = (0..nv_map)
        .filter(|&v| map.is_bare(map.vertex_node(v)))
        .map(|v| IsolatedVertex {
            name: names[v].clone(),
            anchor: anchors[isolated_dart[v].expect("isolated vertex has an anchor dart")],
        })
        .collect();
    CombinatorialDrawing {
        vertices: connected.iter().map(|&v| names[v].clone()).collect(),
        edges,
        rotations,
        isolated,
        outer_face: outer_dart.map(|d| anchors[d]),
    }
    .normalized()
}
