//! Certificate search for weak line cover upper bounds.
//!
//! A [`Certificate`] is a crossing-free drawing together with lines that
//! contain every vertex; it can only be built through verification. The
//! searches here are finite and exact, so a missing certificate means "not
//! found in this space" except for [`two_parallel_lines`], whose model is
//! purely combinatorial and therefore complete.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    classify_segments, cover_by_lines, on_open_segment, orient, rat, validate_drawing2, AffineMap,
    Drawing2, Line2, Point2, Rat, SegmentRelation, P2,
};
use crate::graph::{make_stacked, FaceTree, Graph};

/// Integer line generator `(anchor, direction)`.
type Generator = ((i64, i64), (i64, i64));

/// A drawing plus covering lines, verified on construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    graph: Graph,
    drawing: Drawing2,
    lines: Vec<Line2>,
}

impl Certificate {
    pub fn new(graph: Graph, drawing: Drawing2, lines: Vec<Line2>) -> Result<Self> {
        let cert = Certificate {
            graph,
            drawing,
            lines,
        };
        cert.verify()?;
        Ok(cert)
    }

    /// Re-runs both checks: the drawing is crossing-free and the lines cover
    /// every vertex.
    pub fn verify(&self) -> Result<()> {
        let report = validate_drawing2(&self.graph, &self.drawing)?;
        if !report.passed() {
            return Err(Error::InvalidDrawing(report.to_string()));
        }
        let n = self.graph.vertex_count();
        if !cover_by_lines(&self.drawing.positions[..n], &self.lines) {
            return Err(Error::InvalidDrawing(
                "some vertex lies on none of the lines".into(),
            ));
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn drawing(&self) -> &Drawing2 {
        &self.drawing
    }

    pub fn lines(&self) -> &[Line2] {
        &self.lines
    }

    /// Number of distinct lines in the certificate.
    pub fn line_count(&self) -> usize {
        self.lines.iter().collect::<BTreeSet<_>>().len()
    }

    /// The same certificate with one more line, re-verified.
    pub fn with_line(&self, extra: Line2) -> Result<Self> {
        let mut lines = self.lines.clone();
        lines.push(extra);
        Certificate::new(self.graph.clone(), self.drawing.clone(), lines)
    }

    /// Image under an affine map, re-verified.
    pub fn map(&self, f: &AffineMap) -> Result<Self> {
        Certificate::new(
            self.graph.clone(),
            self.drawing.map(f),
            self.lines.iter().map(|l| f.apply_line(l)).collect(),
        )
    }
}

/// How candidate line tuples are formed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineFamily {
    /// `k` lines through the origin, directions drawn from the menu as
    /// `k`-subsets in lexicographic order.
    Concurrent { directions: Vec<(i64, i64)> },
    /// The horizontal lines `y = 0, 1, .., k - 1`.
    Parallel,
}

/// Finite search space for [`pi12_upper_search`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub family: LineFamily,
    /// Positions on a line are `t * direction` for `t` in `±{1..=radius}`,
    /// plus the origin; in parallel mode `t` runs over `-radius..=radius`.
    pub radius: i64,
    /// Restrict the first vertex to one half of the point reflection.
    pub symmetry_reduction: bool,
    /// Vertex limits for `k = 1`, `k = 2` and `k >= 3`.
    pub limits: [usize; 3],
}

/// Menu of line directions: the axes first, then small slopes.
pub const DEFAULT_DIRECTIONS: [(i64, i64); 8] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (1, -1),
    (1, 2),
    (2, 1),
    (1, -2),
    (2, -1),
];

impl Default for SearchSpace {
    fn default() -> Self {
        SearchSpace {
            family: LineFamily::Concurrent {
                directions: DEFAULT_DIRECTIONS.to_vec(),
            },
            radius: 4,
            symmetry_reduction: true,
            limits: [16, 10, 8],
        }
    }
}

impl SearchSpace {
    pub fn parallel(radius: i64) -> Self {
        SearchSpace {
            family: LineFamily::Parallel,
            radius,
            ..SearchSpace::default()
        }
    }

    pub fn with_radius(mut self, radius: i64) -> Self {
        self.radius = radius;
        self
    }

    pub fn vertex_limit(&self, k: usize) -> usize {
        self.limits[k.clamp(1, 3) - 1]
    }

    fn validate(&self) -> Result<()> {
        if self.radius < 1 {
            return Err(Error::InvalidInput(
                "search radius must be at least 1".into(),
            ));
        }
        if let LineFamily::Concurrent { directions } = &self.family {
            if directions.is_empty() || directions.contains(&(0, 0)) {
                return Err(Error::InvalidInput(
                    "direction menu must be non-empty and nonzero".into(),
                ));
            }
        }
        Ok(())
    }

    /// Candidate line tuples for `k` lines: each is a list of integer
    /// generators `(anchor, direction)`.
    fn tuples(&self, k: usize) -> Vec<Vec<Generator>> {
        match &self.family {
            LineFamily::Parallel => vec![(0..k as i64).map(|j| ((0, j), (1, 0))).collect()],
            LineFamily::Concurrent { directions } => {
                let mut dirs: Vec<(i64, i64)> = Vec::new();
                for &d in directions {
                    if !dirs.iter().any(|&e| e.0 * d.1 == e.1 * d.0) {
                        dirs.push(d);
                    }
                }
                combinations(dirs.len(), k)
                    .into_iter()
                    .map(|c| c.into_iter().map(|i| ((0, 0), dirs[i])).collect())
                    .collect()
            }
        }
    }

    fn positions(&self, tuple: &[Generator], first: bool) -> Vec<P2<i64>> {
        let r = self.radius;
        let mut out: Vec<P2<i64>> = Vec::new();
        let mut push = |p: P2<i64>| {
            if !out.contains(&p) {
                out.push(p);
            }
        };
        match self.family {
            LineFamily::Concurrent { .. } => {
                push(P2::new(0, 0));
                for &(_, (dx, dy)) in tuple {
                    for t in 1..=r {
                        push(P2::new(t * dx, t * dy));
                        if !(first && self.symmetry_reduction) {
                            push(P2::new(-t * dx, -t * dy));
                        }
                    }
                }
            }
            LineFamily::Parallel => {
                for &((_, y), _) in tuple {
                    let lo = if first && self.symmetry_reduction {
                        0
                    } else {
                        -r
                    };
                    for t in lo..=r {
                        push(P2::new(t, y));
                    }
                }
            }
        }
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn to_rat(p: &P2<i64>) -> Point2 {
    Point2::int(p.x, p.y)
}

fn line_of(((ax, ay), (dx, dy)): Generator) -> Line2 {
    let a = P2::new(ax, ay);
    Line2::through(&to_rat(&a), &to_rat(&P2::new(ax + dx, ay + dy))).expect("nonzero direction")
}

/// Vertex order for placement: most constrained first.
fn placement_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], adj[v].len(), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            links[w] += 1;
        }
    }
    order
}

/// Depth-first placement of vertices onto a finite point menu with
/// incremental crossing checks in integer arithmetic.
struct Placer<'a> {
    adj: &'a [Vec<usize>],
    order: &'a [usize],
    first_menu: &'a [P2<i64>],
    menu: &'a [P2<i64>],
    pos: Vec<Option<P2<i64>>>,
    edges: Vec<(usize, usize)>,
}

impl Placer<'_> {
    fn run(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        let menu = if i == 0 { self.first_menu } else { self.menu };
        for p in menu {
            if self.pos.iter().any(|q| q.as_ref() == Some(p)) || !self.fits(v, p) {
                continue;
            }
            let before = self.edges.len();
            self.pos[v] = Some(p.clone());
            for &u in &self.adj[v] {
                if self.pos[u].is_some() && u != v {
                    self.edges.push((v, u));
                }
            }
            if self.run(i + 1) {
                return true;
            }
            self.edges.truncate(before);
            self.pos[v] = None;
        }
        false
    }

    fn fits(&self, v: usize, p: &P2<i64>) -> bool {
        let at = |w: usize| self.pos[w].as_ref().expect("placed");
        for &(a, b) in &self.edges {
            if on_open_segment(at(a), at(b), p) {
                return false;
            }
        }
        let fresh: Vec<usize> = self.adj[v]
            .iter()
            .copied()
            .filter(|&u| self.pos[u].is_some())
            .collect();
        for (i, &u) in fresh.iter().enumerate() {
            let q = at(u);
            for &(a, b) in &self.edges {
                let rel = classify_segments(p, q, at(a), at(b)).expect("distinct positions");
                let shares = u == a || u == b;
                let bad = match rel {
                    SegmentRelation::Disjoint | SegmentRelation::SharedEndpointOnly => false,
                    SegmentRelation::CollinearOverlap => true,
                    _ => !shares,
                };
                if bad {
                    return false;
                }
            }
            for (w, r) in self.pos.iter().enumerate() {
                if let Some(r) = r {
                    if w != u && on_open_segment(p, q, r) {
                        return false;
                    }
                }
            }
            for &u2 in &fresh[..i] {
                let rel = classify_segments(p, q, p, at(u2)).expect("distinct positions");
                if rel == SegmentRelation::CollinearOverlap {
                    return false;
                }
            }
        }
        true
    }
}

/// Searches for a drawing of `g` on at most `k` lines of the given space.
///
/// Line tuples are tried in lexicographic order (in parallel, keeping the
/// first success in that order), and within a tuple vertices are placed
/// depth-first over the position menu. A returned certificate is verified
/// in exact rational arithmetic.
pub fn pi12_upper_search(g: &Graph, k: usize, space: &SearchSpace) -> Result<Option<Certificate>> {
    space.validate()?;
    let n = g.vertex_count();
    let limit = space.vertex_limit(k);
    if n > limit {
        return Err(Error::Capacity {
            what: "vertices for certificate search (limits: k=1 16, k=2 10, k>=3 8 by default)",
            limit,
            got: n,
        });
    }
    if k == 0 {
        return Ok(None);
    }
    let adj = g.adjacency();
    let order = placement_order(&adj);
    let tuples = space.tuples(k);
    let found = tuples.par_iter().find_map_first(|tuple| {
        let first_menu = space.positions(tuple, true);
        let menu = space.positions(tuple, false);
        let mut placer = Placer {
            adj: &adj,
            order: &order,
            first_menu: &first_menu,
            menu: &menu,
            pos: vec![None; n],
            edges: Vec::new(),
        };
        placer.run(0).then(|| {
            let positions: Vec<Point2> = placer
                .pos
                .iter()
                .map(|p| to_rat(p.as_ref().expect("all placed")))
                .collect();
            let lines: Vec<Line2> = tuple.iter().map(|&t| line_of(t)).collect();
            (positions, lines)
        })
    });
    match found {
        None => Ok(None),
        Some((positions, lines)) => {
            Certificate::new(g.clone(), Drawing2::new(positions), lines).map(Some)
        }
    }
}

/// Bounds on the weak line cover number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverInterval {
    /// 1 for linear forests, otherwise 2.
    pub lower: usize,
    /// Smallest `k` with a certificate found, if any.
    pub upper: Option<usize>,
}

/// [`pi12_interval`] together with the certificate behind the upper bound.
pub fn pi12_interval_with_witness(
    g: &Graph,
    k_max: usize,
    space: &SearchSpace,
) -> Result<(CoverInterval, Option<Certificate>)> {
    let lower = if g.is_linear_forest() { 1 } else { 2 };
    for k in lower..=k_max {
        if let Some(cert) = pi12_upper_search(g, k, space)? {
            return Ok((
                CoverInterval {
                    lower,
                    upper: Some(k),
                },
                Some(cert),
            ));
        }
    }
    Ok((CoverInterval { lower, upper: None }, None))
}

pub fn pi12_interval(g: &Graph, k_max: usize, space: &SearchSpace) -> Result<CoverInterval> {
    pi12_interval_with_witness(g, k_max, space).map(|(i, _)| i)
}

/// Largest graph [`two_parallel_lines`] accepts.
pub const MAX_TWO_LINE_VERTICES: usize = 10;

/// Decides whether `g` has a crossing-free drawing on `y = 0` and `y = 1`.
///
/// On two parallel lines crossings depend only on the vertex orders: an edge
/// inside a line must join consecutive vertices, and edges between the lines
/// must not invert. Every split of the vertices (vertex 0 on `y = 0`) and
/// every pair of orders is examined, so `None` is a proof.
pub fn two_parallel_lines(g: &Graph) -> Result<Option<Certificate>> {
    let n = g.vertex_count();
    if n > MAX_TWO_LINE_VERTICES {
        return Err(Error::Capacity {
            what: "vertices for the two-parallel-lines decision",
            limit: MAX_TWO_LINE_VERTICES,
            got: n,
        });
    }
    let lines = vec![Line2::horizontal(rat(0)), Line2::horizontal(rat(1))];
    if n == 0 {
        return Certificate::new(g.clone(), Drawing2::new(Vec::new()), lines).map(Some);
    }
    let adj = g.adjacency();
    let splits = 1usize << (n - 1);
    let found = (0..splits).into_par_iter().find_map_first(|mask| {
        let side: Vec<usize> = (0..n)
            .map(|v| if v == 0 { 0 } else { (mask >> (v - 1)) & 1 })
            .collect();
        two_line_orders(&adj, &side)
    });
    match found {
        None => Ok(None),
        Some((side, rank)) => {
            let positions = (0..n)
                .map(|v| Point2::int(rank[v] as i64, side[v] as i64))
                .collect();
            Certificate::new(g.clone(), Drawing2::new(positions), lines).map(Some)
        }
    }
}

fn two_line_orders(adj: &[Vec<usize>], side: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    // Each line must carry a linear forest.
    for (v, nbrs) in adj.iter().enumerate() {
        if nbrs.iter().filter(|&&w| side[w] == side[v]).count() > 2 {
            return None;
        }
    }
    let members: [Vec<usize>; 2] = [
        (0..adj.len()).filter(|&v| side[v] == 0).collect(),
        (0..adj.len()).filter(|&v| side[v] == 1).collect(),
    ];
    let mut s = TwoLineSearch {
        adj,
        side,
        members: &members,
        rank: vec![usize::MAX; adj.len()],
        count: [0, 0],
    };
    s.place(0).then(|| (side.to_vec(), s.rank))
}

struct TwoLineSearch<'a> {
    adj: &'a [Vec<usize>],
    side: &'a [usize],
    members: &'a [Vec<usize>; 2],
    rank: Vec<usize>,
    count: [usize; 2],
}

impl TwoLineSearch<'_> {
    fn place(&mut self, line: usize) -> bool {
        if line == 2 {
            return true;
        }
        if self.count[line] == self.members[line].len() {
            return self.place(line + 1);
        }
        for idx in 0..self.members[line].len() {
            let w = self.members[line][idx];
            if self.rank[w] != usize::MAX || !self.fits(w, line) {
                continue;
            }
            self.rank[w] = self.count[line];
            self.count[line] += 1;
            if self.place(line) {
                return true;
            }
            self.count[line] -= 1;
            self.rank[w] = usize::MAX;
        }
        false
    }

    fn fits(&self, w: usize, line: usize) -> bool {
        let r = self.count[line];
        let same = |x: usize| self.side[x] == line;
        // In-line neighbors already placed must sit directly below.
        if self.adj[w]
            .iter()
            .any(|&x| same(x) && self.rank[x] != usize::MAX && self.rank[x] + 1 != r)
        {
            return false;
        }
        if line == 0 {
            return true;
        }
        let across = |x: usize| self.adj[x].iter().copied().filter(|&y| self.side[y] == 0);
        across(w).all(|a| {
            self.members[1]
                .iter()
                .filter(|&&x| self.rank[x] != usize::MAX)
                .all(|&x| across(x).all(|a2| self.rank[a2] <= self.rank[a]))
        })
    }
}

/// How [`stacked_drawing`] realized the triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StackedConstruction {
    /// Lines through the origin.
    Pencil,
    /// Horizontal lines.
    Parallel,
}

#[derive(Debug, Clone, Serialize)]
pub struct StackedDrawing {
    pub depth: usize,
    pub certificate: Certificate,
    pub construction: StackedConstruction,
    /// Lines carrying at least one vertex.
    pub lines_used: usize,
    /// `d + 1`, and 2 for the triangle.
    pub target: usize,
    pub meets_target: bool,
}

/// Deepest stacked triangulation [`stacked_drawing`] builds.
pub const MAX_STACKED_DRAWING_DEPTH: usize = 5;

/// Pencil directions tried by [`stacked_drawing`], in order.
const PENCIL: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)];

/// Attempts with more subdivision steps than this give up on a family.
const STACKED_BUDGET: usize = 2_000_000;

/// Drawing of `G_d` with every vertex on few lines.
///
/// The outer triangle is placed on sample points of the lines; each stacked
/// vertex is then chosen on a line crossing the interior of its triangle, at
/// the midpoint of a piece of that chord between crossings with other lines
/// (or at a crossing), so that all three child triangles can be completed
/// recursively. A pencil of `d + 1` lines through the origin is tried first,
/// then `d + 2` horizontal lines.
pub fn stacked_drawing(d: usize) -> Result<StackedDrawing> {
    if d > MAX_STACKED_DRAWING_DEPTH {
        return Err(Error::Capacity {
            what: "depth for stacked drawings",
            limit: MAX_STACKED_DRAWING_DEPTH,
            got: d,
        });
    }
    let (g, tree) = make_stacked(d)?;
    let target = (d + 1).max(2);
    let pencil: Vec<Line2> = PENCIL[..target]
        .iter()
        .map(|&dir| line_of(((0, 0), dir)))
        .collect();
    let parallel: Vec<Line2> = (0..(d + 2).max(2) as i64)
        .map(|y| Line2::horizontal(rat(y)))
        .collect();
    for (construction, lines) in [
        (StackedConstruction::Pencil, pencil),
        (StackedConstruction::Parallel, parallel),
    ] {
        if let Some(positions) = realize_stacked(&g, &tree, &lines) {
            let lines_used = lines
                .iter()
                .filter(|l| positions.iter().any(|p| l.contains(p)))
                .count();
            let certificate = Certificate::new(g.clone(), Drawing2::new(positions), lines)?;
            return Ok(StackedDrawing {
                depth: d,
                certificate,
                construction,
                lines_used,
                target,
                meets_target: lines_used <= target,
            });
        }
    }
    Err(Error::InvalidDrawing(format!(
        "no stacked drawing of depth {d} found with either line family"
    )))
}

fn realize_stacked(g: &Graph, tree: &FaceTree, lines: &[Line2]) -> Option<Vec<Point2>> {
    let mut samples: Vec<Point2> = Vec::new();
    for l in lines {
        let (o, dir) = (l.anchor(), l.direction());
        for t in -3..=3 {
            let p = &o + &dir.scale(&rat(t));
            if !samples.contains(&p) {
                samples.push(p);
            }
        }
    }
    let mut filler = StackedFiller {
        tree,
        lines,
        pos: vec![None; g.vertex_count()],
        budget: STACKED_BUDGET,
    };
    let [a, b, c] = tree.root().corners;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            for k in j + 1..samples.len() {
                let (p, q, r) = (&samples[i], &samples[j], &samples[k]);
                if orient(p, q, r).is_eq() {
                    continue;
                }
                filler.pos[a] = Some(p.clone());
                filler.pos[b] = Some(q.clone());
                filler.pos[c] = Some(r.clone());
                if filler.fill(0) {
                    return filler.pos.into_iter().collect();
                }
                if filler.budget == 0 {
                    return None;
                }
            }
        }
    }
    None
}

struct StackedFiller<'a> {
    tree: &'a FaceTree,
    lines: &'a [Line2],
    pos: Vec<Option<Point2>>,
    budget: usize,
}

impl StackedFiller<'_> {
    fn fill(&mut self, node: usize) -> bool {
        let n = &self.tree.nodes[node];
        let (Some(x), Some(children)) = (n.stacked, n.children) else {
            return true;
        };
        let corners: Vec<Point2> = n
            .corners
            .iter()
            .map(|&v| self.pos[v].clone().expect("corners placed first"))
            .collect();
        for cand in interior_candidates(&corners, self.lines) {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            self.pos[x] = Some(cand);
            if children.iter().all(|&c| self.fill(c)) {
                return true;
            }
        }
        false
    }
}

/// Points on the lines strictly inside the triangle, in trial order.
fn interior_candidates(tri: &[Point2], lines: &[Line2]) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::new();
    for l in lines {
        let signs: Vec<Rat> = tri.iter().map(|p| l.eval(p)).collect();
        if !(signs.iter().any(|s| s.is_positive()) && signs.iter().any(|s| s.is_negative())) {
            continue;
        }
        let mut ends: Vec<Point2> = Vec::new();
        for i in 0..3 {
            let (p, q) = (&tri[i], &tri[(i + 1) % 3]);
            let (sp, sq) = (&signs[i], &signs[(i + 1) % 3]);
            if sp.is_zero() {
                ends.push(p.clone());
            } else if (sp.is_positive() && sq.is_negative())
                || (sp.is_negative() && sq.is_positive())
            {
                let t = sp / (sp - sq);
                ends.push(p + &(q - p).scale(&t));
            }
        }
        let dir = l.direction();
        ends.sort_by_key(|p| dir.dot(p));
        ends.dedup();
        let (lo, hi) = (ends[0].clone(), ends[ends.len() - 1].clone());
        let (tlo, thi) = (dir.dot(&lo), dir.dot(&hi));
        let mut cuts: Vec<Point2> = lines
            .iter()
            .filter(|m| *m != l)
            .filter_map(|m| l.intersection(m))
            .filter(|p| {
                let t = dir.dot(p);
                tlo < t && t < thi
            })
            .collect();
        cuts.sort_by_key(|p| dir.dot(p));
        cuts.dedup();
        let mut stops = vec![lo];
        stops.extend(cuts.iter().cloned());
        stops.push(hi);
        let half = Rat::new(1.into(), 2.into());
        for w in stops.windows(2) {
            let mid = (&w[0] + &w[1]).scale(&half);
            if !out.contains(&mid) {
                out.push(mid);
            }
        }
        for c in cuts {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}
