//! Can a new edge still be inserted between two vertices of a thrackle?
//!
//! The new arc must cross every edge not incident to its ends exactly once
//! and no other edge. A relaxed search over (face, crossed set) states ignores
//! arc simplicity; it is used as a filter and as pruning for the exact search,
//! which grows the arc inside a private copy of the map so that the arc can
//! never cross itself.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::combinatorial::{
    from_map, planarize, verify_topological, CombinatorialDrawing, EdgeEnd, End, Planarization, Sign,
};
use crate::error::SearchError;
use crate::map::{twin, Corner, PlaneMap};

/// Environment variable overriding the default state budget.
pub const BUDGET_ENV: &str = "THRACKLE_BUDGET_STATES";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_states: u64,
    pub max_time: Duration,
}

impl SearchBudget {
    pub const DEFAULT_STATES: u64 = 10_000_000;

    pub fn new(max_states: u64, max_time: Duration) -> Self {
        assert!(max_states > 0 && !max_time.is_zero(), "budget must be positive");
        SearchBudget { max_states, max_time }
    }

    pub fn states(max_states: u64) -> Self {
        Self::new(max_states, Duration::from_secs(3600))
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        let states = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.parse().ok())
            .filter(|&n: &u64| n > 0)
            .unwrap_or(Self::DEFAULT_STATES);
        SearchBudget::new(states, Duration::from_secs(3600))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionQuery {
    pub drawing: CombinatorialDrawing,
    pub u: String,
    pub v: String,
}

/// One crossing of the new arc: the crossed segment and the side the arc
/// arrives from, as a sign on the crossed edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WitnessStep {
    pub edge: usize,
    pub segment: usize,
    pub sign: Sign,
}

/// Replayable description of a new arc from `u` to `v`. Corners name the
/// edge-end after which the arc leaves (arrives), counterclockwise; they are
/// `None` at isolated vertices. Faces are ids of the original drawing's faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InsertionWitness {
    pub u: usize,
    pub v: usize,
    pub start_corner: Option<EdgeEnd>,
    pub end_corner: Option<EdgeEnd>,
    pub start_face: usize,
    pub end_face: usize,
    pub steps: Vec<WitnessStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relaxed {
    No,
    /// Edges crossed, in order, by some walk through faces.
    Maybe(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exact {
    No,
    Yes(InsertionWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    NotMaximal((usize, usize), InsertionWitness),
    /// Pairs whose queries ran out of budget.
    Unknown(Vec<(usize, usize)>),
}

struct Meter {
    states: u64,
    budget: SearchBudget,
    started: Instant,
}

impl Meter {
    fn new(budget: SearchBudget) -> Self {
        Meter { states: 0, budget, started: Instant::now() }
    }

    fn tick(&mut self) -> Result<(), SearchError> {
        self.states += 1;
        if self.states > self.budget.max_states {
            return Err(SearchError::BudgetExceeded);
        }
        if self.states.is_multiple_of(4096) && self.started.elapsed() > self.budget.max_time {
            return Err(SearchError::BudgetExceeded);
        }
        Ok(())
    }
}

/// Relaxed state space of one query over a fixed planarization.
struct Relaxation<'a> {
    p: &'a Planarization,
    required: FixedBitSet,
    goal: Vec<bool>,
    memo: HashMap<(usize, FixedBitSet), bool>,
}

impl<'a> Relaxation<'a> {
    fn new(p: &'a Planarization, u: usize, v: usize) -> Self {
        let ne = p.map.num_edges();
        let mut required = FixedBitSet::with_capacity(ne);
        for e in 0..ne {
            let (a, b) = p.map.edge_ends(e);
            if a != u && a != v && b != u && b != v {
                required.insert(e);
            }
        }
        let mut goal = vec![false; p.faces.len()];
        for f in p.vertex_faces(v) {
            goal[f] = true;
        }
        Relaxation { p, required, goal, memo: HashMap::new() }
    }

    fn is_goal(&self, f: usize, s: &FixedBitSet) -> bool {
        self.goal[f] && s == &self.required
    }

    /// Crossable boundary darts of static face `f` given crossed set `s`.
    fn moves(&self, f: usize, s: &FixedBitSet) -> impl Iterator<Item = usize> + '_ {
        let s = s.clone();
        self.p.faces.boundary[f].iter().copied().filter(move |&d| {
            let e = self.p.map.edge_of(d);
            self.required.contains(e) && !s.contains(e)
        })
    }

    /// Cheap necessary condition: every edge still to cross borders a face
    /// reachable by crossing uncrossed required edges, and so does `v`.
    fn plausible(&self, f: usize, s: &FixedBitSet) -> bool {
        let faces = &self.p.faces;
        let mut seen = vec![false; faces.len()];
        let mut stack = vec![f];
        seen[f] = true;
        let mut touched = FixedBitSet::with_capacity(self.required.len());
        let mut goal = false;
        while let Some(g) = stack.pop() {
            goal |= self.goal[g];
            for &d in &faces.boundary[g] {
                let e = self.p.map.edge_of(d);
                if self.required.contains(e) && !s.contains(e) {
                    touched.insert(e);
                    let h = faces.face_of[twin(d)];
                    if !seen[h] {
                        seen[h] = true;
                        stack.push(h);
                    }
                }
            }
        }
        if !goal {
            return false;
        }
        let mut missing = self.required.clone();
        missing.difference_with(s);
        missing.is_subset(&touched)
    }

    fn alive(&mut self, f: usize, s: &FixedBitSet, meter: &mut Meter) -> Result<bool, SearchError> {
        if self.is_goal(f, s) {
            return Ok(true);
        }
        let key = (f, s.clone());
        if let Some(&a) = self.memo.get(&key) {
            return Ok(a);
        }
        meter.tick()?;
        let mut result = false;
        if self.plausible(f, s) {
            let moves: Vec<usize> = self.moves(f, s).collect();
            for d in moves {
                let mut t = s.clone();
                t.insert(self.p.map.edge_of(d));
                if self.alive(self.p.faces.face_of[twin(d)], &t, meter)? {
                    result = true;
                    break;
                }
            }
        }
        self.memo.insert(key, result);
        Ok(result)
    }

    /// Edge sequence of some live walk from `f`. Requires `alive(f, s)`.
    fn candidate(&mut self, mut f: usize, meter: &mut Meter) -> Result<Vec<usize>, SearchError> {
        let mut s = FixedBitSet::with_capacity(self.required.len());
        let mut out = Vec::new();
        while !self.is_goal(f, &s) {
            let moves: Vec<usize> = self.moves(f, &s).collect();
            let mut advanced = false;
            for d in moves {
                let e = self.p.map.edge_of(d);
                let mut t = s.clone();
                t.insert(e);
                let g = self.p.faces.face_of[twin(d)];
                if self.alive(g, &t, meter)? {
                    out.push(e);
                    s = t;
                    f = g;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "live state has a live successor");
        }
        Ok(out)
    }
}

/// Resolved query on a planarized drawing.
struct Prepared {
    p: Planarization,
    u: usize,
    v: usize,
}

fn prepare(d: &CombinatorialDrawing, u: &str, v: &str) -> Result<Prepared, SearchError> {
    let ui = d.vertex_index(u)?;
    let vi = d.vertex_index(v)?;
    prepare_indices(d, ui, vi)
}

fn prepare_indices(d: &CombinatorialDrawing, u: usize, v: usize) -> Result<Prepared, SearchError> {
    if u == v {
        return Err(SearchError::InvalidQuery("endpoints coincide".into()));
    }
    if d.has_edge(u, v) {
        return Err(SearchError::InvalidQuery(format!(
            "{} and {} are already adjacent",
            d.vertex_name(u),
            d.vertex_name(v)
        )));
    }
    if !verify_topological(d)?.ok {
        return Err(SearchError::NotAThrackle);
    }
    if d.edges.is_empty() {
        return Err(SearchError::InvalidQuery("drawing has no edges".into()));
    }
    Ok(Prepared { p: planarize(d)?, u, v })
}

/// Start positions of the arc at `u`: each corner with its static face.
fn start_corners(p: &Planarization, u: usize) -> Vec<(Corner, usize)> {
    let node = p.map.vertex_node(u);
    if u >= p.vertex_count {
        let d = p.isolated_dart[u - p.vertex_count];
        return vec![(Corner::Bare(node), p.faces.face_of[d])];
    }
    let mut darts = p.map.darts_around(node);
    darts.sort_unstable();
    darts.into_iter().map(|d| (Corner::Dart(d), p.faces.face_of[d])).collect()
}

fn relaxed_on(q: &Prepared, meter: &mut Meter) -> Result<Relaxed, SearchError> {
    let mut r = Relaxation::new(&q.p, q.u, q.v);
    let empty = FixedBitSet::with_capacity(q.p.map.num_edges());
    let mut faces: Vec<usize> = start_corners(&q.p, q.u).into_iter().map(|(_, f)| f).collect();
    faces.dedup();
    for f in faces {
        if r.alive(f, &empty, meter)? {
            return Ok(Relaxed::Maybe(r.candidate(f, meter)?));
        }
    }
    Ok(Relaxed::No)
}

pub fn relaxed_insertable(q: &InsertionQuery, budget: SearchBudget) -> Result<Relaxed, SearchError> {
    let prep = prepare(&q.drawing, &q.u, &q.v)?;
    relaxed_on(&prep, &mut Meter::new(budget))
}

fn edge_end(map: &PlaneMap, d: usize) -> EdgeEnd {
    EdgeEnd { edge: map.edge_of(d), end: if map.is_forward(d) { End::Tail } else { End::Head } }
}

/// Depth-first growth of the arc inside a private map.
struct Grower<'a> {
    r: Relaxation<'a>,
    u: usize,
    v: usize,
    arc: usize,
    static_darts: usize,
    enumerate: bool,
    found: Vec<InsertionWitness>,
}

struct Tip {
    map: PlaneMap,
    corner: Corner,
    face: usize,
    crossed: FixedBitSet,
    steps: Vec<WitnessStep>,
}

impl Grower<'_> {
    fn tip_walk(&self, tip: &Tip) -> Vec<usize> {
        match tip.corner {
            Corner::Dart(d) => tip.map.face_walk(d),
            Corner::Bare(_) => {
                let p = self.r.p;
                tip.map.face_walk(p.isolated_dart[self.u - p.vertex_count])
            }
        }
    }

    fn finish(&mut self, tip: &Tip, start: (Option<EdgeEnd>, usize)) {
        let p = self.r.p;
        let mut ends = Vec::new();
        if self.v >= p.vertex_count {
            if tip.face == p.isolated_face(self.v - p.vertex_count) {
                ends.push(None);
            }
        } else {
            let vnode = p.map.vertex_node(self.v);
            let mut darts: Vec<usize> = self
                .tip_walk(tip)
                .into_iter()
                .filter(|&d| tip.map.origin(d) == vnode)
                .collect();
            darts.sort_unstable();
            ends.extend(darts.into_iter().map(|d| Some(edge_end(&tip.map, d))));
        }
        for end in ends {
            self.found.push(InsertionWitness {
                u: self.u,
                v: self.v,
                start_corner: start.0,
                end_corner: end,
                start_face: start.1,
                end_face: tip.face,
                steps: tip.steps.clone(),
            });
            if !self.enumerate {
                return;
            }
        }
    }

    fn grow(&mut self, tip: Tip, start: (Option<EdgeEnd>, usize), meter: &mut Meter) -> Result<(), SearchError> {
        meter.tick()?;
        if tip.crossed == self.r.required {
            self.finish(&tip, start);
            return Ok(());
        }
        let mut moves: Vec<usize> = self
            .tip_walk(&tip)
            .into_iter()
            .filter(|&c| {
                let e = tip.map.edge_of(c);
                c < self.static_darts && self.r.required.contains(e) && !tip.crossed.contains(e)
            })
            .collect();
        moves.sort_unstable();
        let p = self.r.p;
        for c in moves {
            let e = tip.map.edge_of(c);
            let mut crossed = tip.crossed.clone();
            crossed.insert(e);
            let face = p.faces.face_of[twin(c)];
            if !self.r.alive(face, &crossed, meter)? {
                continue;
            }
            let anchor = p.dart_anchor(c);
            let mut map = tip.map.clone();
            let corner = map.cross_from(tip.corner, c, self.arc);
            let mut steps = tip.steps.clone();
            steps.push(WitnessStep {
                edge: e,
                segment: anchor.segment,
                sign: if p.map.is_forward(c) { Sign::Plus } else { Sign::Minus },
            });
            self.grow(Tip { map, corner, face, crossed, steps }, start, meter)?;
            if !self.enumerate && !self.found.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn exact_on(q: &Prepared, meter: &mut Meter, enumerate: bool) -> Result<Vec<InsertionWitness>, SearchError> {
    let p = &q.p;
    let mut base = p.map.clone();
    let arc = base.add_edge(q.u, q.v);
    let mut g = Grower {
        r: Relaxation::new(p, q.u, q.v),
        u: q.u,
        v: q.v,
        arc,
        static_darts: p.map.num_darts(),
        enumerate,
        found: Vec::new(),
    };
    let empty = FixedBitSet::with_capacity(p.map.num_edges());
    for (corner, face) in start_corners(p, q.u) {
        if !g.r.alive(face, &empty, meter)? {
            continue;
        }
        let start = (g.r.p.map.corner_face_dart(corner).map(|d| edge_end(&p.map, d)), face);
        let tip = Tip { map: base.clone(), corner, face, crossed: empty.clone(), steps: Vec::new() };
        g.grow(tip, start, meter)?;
        if !enumerate && !g.found.is_empty() {
            break;
        }
    }
    Ok(g.found)
}

pub fn exact_insertable(q: &InsertionQuery, budget: SearchBudget) -> Result<Exact, SearchError> {
    let prep = prepare(&q.drawing, &q.u, &q.v)?;
    exact_indices(&prep, budget)
}

fn exact_indices(prep: &Prepared, budget: SearchBudget) -> Result<Exact, SearchError> {
    let mut meter = Meter::new(budget);
    Ok(match exact_on(prep, &mut meter, false)?.into_iter().next() {
        Some(w) => Exact::Yes(w),
        None => Exact::No,
    })
}

/// Every distinct arc from `u` to `v`, by vertex index.
pub fn all_insertions(
    d: &CombinatorialDrawing,
    u: usize,
    v: usize,
    budget: SearchBudget,
) -> Result<Vec<InsertionWitness>, SearchError> {
    let prep = prepare_indices(d, u, v)?;
    exact_on(&prep, &mut Meter::new(budget), true)
}

/// Relaxed filter, then exact search, for one vertex pair.
pub fn insertable_pair(
    d: &CombinatorialDrawing,
    u: usize,
    v: usize,
    budget: SearchBudget,
) -> Result<Exact, SearchError> {
    let prep = prepare_indices(d, u, v)?;
    let mut meter = Meter::new(budget);
    if relaxed_on(&prep, &mut meter)? == Relaxed::No {
        return Ok(Exact::No);
    }
    exact_indices(&prep, budget)
}

/// Relaxed verdict by vertex index.
pub fn relaxed_pair(
    d: &CombinatorialDrawing,
    u: usize,
    v: usize,
    budget: SearchBudget,
) -> Result<Relaxed, SearchError> {
    let prep = prepare_indices(d, u, v)?;
    relaxed_on(&prep, &mut Meter::new(budget))
}

/// Non-adjacent vertex pairs `(u, v)`, `u < v`, over the full index space.
pub fn candidate_pairs(d: &CombinatorialDrawing) -> Vec<(usize, usize)> {
    let n = d.num_vertices_total();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !d.has_edge(u, v))
        .collect()
}

/// Maximality over all non-adjacent pairs, one budget per pair.
pub fn is_maximal_topological(d: &CombinatorialDrawing, budget: SearchBudget) -> Result<Maximality, SearchError> {
    if !verify_topological(d)?.ok {
        return Err(SearchError::NotAThrackle);
    }
    let pairs = candidate_pairs(d);
    if d.edges.is_empty() {
        return Ok(if pairs.is_empty() {
            Maximality::Maximal
        } else {
            let (u, v) = pairs[0];
            Maximality::NotMaximal(
                (u, v),
                InsertionWitness {
                    u,
                    v,
                    start_corner: None,
                    end_corner: None,
                    start_face: 0,
                    end_face: 0,
                    steps: Vec::new(),
                },
            )
        });
    }
    let stop = AtomicBool::new(false);
    let results: Vec<Result<Exact, SearchError>> = pairs
        .par_iter()
        .map(|&(u, v)| {
            if stop.load(Ordering::Relaxed) {
                return Err(SearchError::BudgetExceeded);
            }
            let r = insertable_pair(d, u, v, budget);
            if matches!(r, Ok(Exact::Yes(_))) {
                stop.store(true, Ordering::Relaxed);
            }
            r
        })
        .collect();
    let mut unknown = Vec::new();
    for (pair, r) in pairs.iter().zip(results) {
        match r {
            Ok(Exact::No) => {}
            Ok(Exact::Yes(w)) => return Ok(Maximality::NotMaximal(*pair, w)),
            Err(SearchError::BudgetExceeded) => unknown.push(*pair),
            Err(e) => return Err(e),
        }
    }
    if unknown.is_empty() {
        Ok(Maximality::Maximal)
    } else {
        // Pairs skipped after an early Yes never reach this point.
        Ok(Maximality::Unknown(unknown))
    }
}

/// Insert the arc described by `w` as a new edge named `name`.
pub fn apply_witness(
    d: &CombinatorialDrawing,
    w: &InsertionWitness,
    name: &str,
) -> Result<CombinatorialDrawing, SearchError> {
    let p = planarize(d)?;
    let bad = |m: &str| SearchError::InvalidQuery(format!("witness does not replay: {m}"));
    let n = d.num_vertices_total();
    if w.u >= n || w.v >= n || w.u == w.v {
        return Err(bad("endpoints"));
    }
    let mut map = p.map.clone();
    let arc = map.add_edge(w.u, w.v);
    let corner_at = |map: &PlaneMap, v: usize, c: Option<EdgeEnd>| -> Result<Corner, SearchError> {
        let node = map.vertex_node(v);
        match c {
            None if map.is_bare(node) => Ok(Corner::Bare(node)),
            None => Err(bad("missing corner")),
            Some(ee) => map
                .darts_around(node)
                .into_iter()
                .find(|&x| edge_end(map, x) == ee)
                .map(Corner::Dart)
                .ok_or_else(|| bad("corner not at vertex")),
        }
    };
    let mut tip = corner_at(&map, w.u, w.start_corner)?;
    let walk_of = |map: &PlaneMap, c: Corner| -> Result<Vec<usize>, SearchError> {
        match c {
            Corner::Dart(x) => Ok(map.face_walk(x)),
            Corner::Bare(_) if w.u >= p.vertex_count => {
                Ok(map.face_walk(p.isolated_dart[w.u - p.vertex_count]))
            }
            Corner::Bare(_) => Err(bad("bare corner")),
        }
    };
    let static_face = |c: Option<EdgeEnd>, v: usize, map: &PlaneMap| -> Result<usize, SearchError> {
        match corner_at(map, v, c)? {
            Corner::Dart(x) => Ok(p.faces.face_of[x]),
            Corner::Bare(_) if v >= p.vertex_count => Ok(p.isolated_face(v - p.vertex_count)),
            Corner::Bare(_) => Err(bad("bare corner")),
        }
    };
    let mut face = static_face(w.start_corner, w.u, &p.map)?;
    if face != w.start_face {
        return Err(bad("start face"));
    }
    let mut seen = FixedBitSet::with_capacity(map.num_edges());
    for step in &w.steps {
        let seg = *p
            .segments
            .get(step.edge)
            .and_then(|s| s.get(step.segment))
            .ok_or_else(|| bad("segment out of range"))?;
        if seen.put(step.edge) {
            return Err(bad("edge crossed twice"));
        }
        let c = match step.sign {
            Sign::Plus => seg,
            Sign::Minus => twin(seg),
        };
        if p.faces.face_of[c] != face || !walk_of(&map, tip)?.contains(&c) {
            return Err(bad("segment not on the current face"));
        }
        face = p.faces.face_of[twin(c)];
        tip = map.cross_from(tip, c, arc);
    }
    if face != w.end_face || static_face(w.end_corner, w.v, &p.map)? != face {
        return Err(bad("end face"));
    }
    let end = corner_at(&map, w.v, w.end_corner)?;
    if let Corner::Dart(x) = end {
        if !walk_of(&map, tip)?.contains(&x) {
            return Err(bad("end corner not on the final face"));
        }
    }
    map.connect(tip, end, arc, true);
    let names: Vec<String> = (0..n).map(|v| d.vertex_name(v).to_string()).collect();
    let mut edge_names: Vec<String> = d.edges.iter().map(|e| e.name.clone()).collect();
    edge_names.push(name.to_string());
    let mut iso = vec![None; n];
    for (i, &dart) in p.isolated_dart.iter().enumerate() {
        iso[p.vertex_count + i] = Some(dart);
    }
    let outer = p.outer_face.map(|_| p.anchor_dart(d.outer_face.as_ref().expect("outer anchor"))).transpose()?;
    Ok(from_map(&map, &names, &edge_names, &iso, outer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorial::{FaceAnchor, Side};
    use crate::families_topological::{add_isolated, build_c6, build_kyncl, single_edge, C6_CENTRAL_FACE};

    fn budget() -> SearchBudget {
        SearchBudget::states(1_000_000)
    }

    fn without(d: &CombinatorialDrawing, name: &str) -> CombinatorialDrawing {
        let e = d.edge_index(name).unwrap();
        d.restricted(&(0..d.edges.len()).filter(|&f| f != e).collect())
    }

    #[test]
    fn removed_edge_can_be_put_back() {
        let c6 = build_c6();
        let d = without(&c6, "cd");
        let (c, dd) = (d.vertex_index("c").unwrap(), d.vertex_index("d").unwrap());
        assert!(matches!(relaxed_pair(&d, c, dd, budget()).unwrap(), Relaxed::Maybe(_)));
        let Exact::Yes(w) = insertable_pair(&d, c, dd, budget()).unwrap() else { panic!("cd must fit back") };
        let back = apply_witness(&d, &w, "cd").unwrap();
        assert!(verify_topological(&back).unwrap().ok);
        assert_eq!(back.edges.len(), 6);
    }

    #[test]
    fn relaxed_no_implies_exact_no() {
        let drawings = [build_kyncl(), build_c6(), add_isolated(&build_c6(), C6_CENTRAL_FACE, 2).unwrap(), without(&build_c6(), "ab")];
        for d in &drawings {
            for (u, v) in candidate_pairs(d) {
                let r = relaxed_pair(d, u, v, budget()).unwrap();
                let e = insertable_pair(d, u, v, budget()).unwrap();
                if r == Relaxed::No {
                    assert_eq!(e, Exact::No);
                }
                if let Exact::Yes(w) = e {
                    assert!(matches!(r, Relaxed::Maybe(_)));
                    let next = apply_witness(d, &w, "new").unwrap();
                    assert!(verify_topological(&next).unwrap().ok);
                }
            }
        }
    }

    #[test]
    fn every_witness_replays() {
        let anchor = FaceAnchor { edge: 0, segment: 0, side: Side::Left };
        let lone = add_isolated(&single_edge("a", "b"), anchor, 1).unwrap();
        for base in [lone, without(&build_c6(), "de")] {
            for (u, v) in candidate_pairs(&base) {
                for w in all_insertions(&base, u, v, budget()).unwrap() {
                    let next = apply_witness(&base, &w, "new").unwrap();
                    assert!(verify_topological(&next).unwrap().ok);
                    let mut want: Vec<usize> = (0..base.edges.len())
                        .filter(|&f| ![base.edges[f].tail, base.edges[f].head].iter().any(|&z| z == u || z == v))
                        .collect();
                    let mut got: Vec<usize> = w.steps.iter().map(|s| s.edge).collect();
                    got.sort();
                    want.sort();
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let d = without(&build_c6(), "cd");
        let (c, dd) = (d.vertex_index("c").unwrap(), d.vertex_index("d").unwrap());
        let Exact::Yes(mut w) = insertable_pair(&d, c, dd, budget()).unwrap() else { panic!() };
        let last = w.steps.len() - 1;
        w.steps[last].sign = w.steps[last].sign.flip();
        assert!(apply_witness(&d, &w, "cd").is_err());
    }

    #[test]
    fn bad_queries() {
        let d = build_kyncl();
        let (a, b) = (d.vertex_index("a").unwrap(), d.vertex_index("b").unwrap());
        assert!(matches!(insertable_pair(&d, a, b, budget()), Err(SearchError::InvalidQuery(_))));
        assert!(matches!(insertable_pair(&d, a, a, budget()), Err(SearchError::InvalidQuery(_))));
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let d = build_c6();
        match is_maximal_topological(&d, SearchBudget::states(1)).unwrap() {
            Maximality::Unknown(p) => assert!(!p.is_empty()),
            other => panic!("expected unknown, got {other:?}"),
        }
    }
}
