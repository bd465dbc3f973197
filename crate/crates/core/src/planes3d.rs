//! Drawings on two planes in 3-space: the extremal `5n - 19` construction,
//! spine statistics, straight-line saturation and the edge bound check.

use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::io::{read_drawing3, write_drawing3, Drawing3Text};
use crate::geom::{
    ratio, validate_drawing3, Drawing3Report, EdgePlane, Plane3, Point3, Rat, Segment3Index, P3,
};
use crate::graph::Graph;

/// Plane assignment per edge, keyed by `(min, max)` endpoints.
pub type EdgePlanes = BTreeMap<(usize, usize), EdgePlane>;

/// A verified straight-line drawing on two non-parallel planes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoPlaneDrawing {
    graph: Graph,
    planes: [Plane3; 2],
    positions: Vec<Point3>,
    edge_plane: EdgePlanes,
}

impl TwoPlaneDrawing {
    pub fn new(
        graph: Graph,
        planes: [Plane3; 2],
        positions: Vec<Point3>,
        edge_plane: EdgePlanes,
    ) -> Result<Self> {
        let report = validate_drawing3(&graph, &positions, &planes, &edge_plane)?;
        if !report.passed() {
            return Err(Error::InvalidDrawing(report.to_string()));
        }
        Ok(TwoPlaneDrawing {
            graph,
            planes,
            positions,
            edge_plane,
        })
    }

    /// Runs the verifier on raw data without requiring it to pass.
    pub fn check(text: &Drawing3Text) -> Result<(Graph, Drawing3Report)> {
        let (graph, edge_plane) = graph_of(text)?;
        let report = validate_drawing3(&graph, &text.positions, &text.planes, &edge_plane)?;
        Ok((graph, report))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn planes(&self) -> &[Plane3; 2] {
        &self.planes
    }

    pub fn positions(&self) -> &[Point3] {
        &self.positions
    }

    pub fn edge_plane(&self) -> &EdgePlanes {
        &self.edge_plane
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Edges per assigned plane, as `(A, B, spine)`.
    pub fn plane_census(&self) -> (usize, usize, usize) {
        let count = |p| self.edge_plane.values().filter(|&&q| q == p).count();
        (
            count(EdgePlane::A),
            count(EdgePlane::B),
            count(EdgePlane::Spine),
        )
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        let text = Drawing3Text {
            planes: self.planes.clone(),
            positions: self.positions.clone(),
            edges: self.edge_plane.iter().map(|(&e, &p)| (e, p)).collect(),
        };
        write_drawing3(&text, &mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ASCII")
    }

    pub fn read_text<R: BufRead>(input: R) -> Result<Self> {
        let text = read_drawing3(input)?;
        let (graph, edge_plane) = graph_of(&text)?;
        TwoPlaneDrawing::new(graph, text.planes, text.positions, edge_plane)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::read_text(text.as_bytes())
    }
}

fn graph_of(text: &Drawing3Text) -> Result<(Graph, EdgePlanes)> {
    let n = text.positions.len();
    let mut g = Graph::new(n);
    let mut edge_plane = BTreeMap::new();
    for &((u, v), p) in &text.edges {
        g.add_edge(u, v)?;
        edge_plane.insert((u.min(v), u.max(v)), p);
    }
    Ok((g, edge_plane))
}

/// Planes `z = 0` (A) and `y = 0` (B); the spine is the x-axis.
pub fn canonical_planes() -> [Plane3; 2] {
    [Plane3::xy(), Plane3::xz()]
}

/// Edge counts reachable for `n <= 6`.
pub fn small_case_bound(n: usize) -> usize {
    match n {
        0..=2 => n * n.saturating_sub(1) / 2,
        3..=6 => 3 * (n - 2),
        _ => 5 * n - 19,
    }
}

/// Conjectured edge bound `(2k+1)(n-2k)+k-1` for `k` planes.
pub fn conjectured_bound(k: usize, n: usize) -> i64 {
    let (k, n) = (k as i64, n as i64);
    (2 * k + 1) * (n - 2 * k) + k - 1
}

/// Path on the spine with two apexes per plane, one on each side of the
/// spine, each joined to every spine vertex and to the other apex of its
/// plane. The apex pairs cross the spine beyond opposite ends of the path.
pub fn tight_construction(n: usize) -> Result<TwoPlaneDrawing> {
    if n < 7 {
        return Err(Error::InvalidInput(format!(
            "the construction needs n >= 7; for n = 3, 4, 5, 6 the maxima are 3, 6, 9, 12 edges (n = {n})"
        )));
    }
    let spine = n - 4;
    let mut positions: Vec<Point3> = (0..spine)
        .map(|i| Point3::int(i as i64 + 1, 0, 0))
        .collect();
    let far = (n - 3) as i64;
    positions.extend([
        Point3::int(0, 1, 0),
        Point3::int(0, -1, 0),
        Point3::int(far, 0, 1),
        Point3::int(far, 0, -1),
    ]);
    let (a1, a2, b1, b2) = (spine, spine + 1, spine + 2, spine + 3);
    let mut g = Graph::new(n);
    let mut edge_plane = BTreeMap::new();
    let mut add = |u: usize, v: usize, p: EdgePlane| {
        g.add_edge(u, v).expect("distinct edges");
        edge_plane.insert((u.min(v), u.max(v)), p);
    };
    for i in 1..spine {
        add(i - 1, i, EdgePlane::Spine);
    }
    for (apex, plane) in [
        (a1, EdgePlane::A),
        (a2, EdgePlane::A),
        (b1, EdgePlane::B),
        (b2, EdgePlane::B),
    ] {
        for i in 0..spine {
            add(i, apex, plane);
        }
    }
    add(a1, a2, EdgePlane::A);
    add(b1, b2, EdgePlane::B);
    TwoPlaneDrawing::new(g, canonical_planes(), positions, edge_plane)
}

/// Spine statistics. `a` and `b` count off-spine vertices of the two planes,
/// swapped if needed so that `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineStats {
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub a: usize,
    pub b: usize,
    pub t: usize,
    pub internal_gaps: usize,
}

pub fn spine_stats(d: &TwoPlaneDrawing) -> SpineStats {
    let index = Segment3Index::new(&d.planes, &d.positions).expect("verified planes");
    let n = d.vertex_count();
    let on_spine: Vec<usize> = (0..n).filter(|&v| index.on_spine(v)).collect();
    let only = |k: usize| {
        (0..n)
            .filter(|&v| index.on_plane(v, k) && !index.on_spine(v))
            .count()
    };
    let (ca, cb) = (only(0), only(1));
    let t = d
        .graph
        .edges()
        .filter(|&(u, v)| index.on_spine(u) && index.on_spine(v))
        .count();
    let dir = d.planes[0].normal().cross(&d.planes[1].normal());
    let mut along: Vec<(Rat, usize)> = on_spine
        .iter()
        .map(|&v| (dir.dot(&d.positions[v]), v))
        .collect();
    along.sort();
    let internal_gaps = along
        .windows(2)
        .filter(|w| !d.graph.has_edge(w[0].1, w[1].1))
        .count();
    SpineStats {
        n,
        m: d.edge_count(),
        s: on_spine.len(),
        a: ca.min(cb),
        b: ca.max(cb),
        t,
        internal_gaps,
    }
}

/// Plane for a new edge between `u` and `v`, if they share one.
fn plane_for(index: &Segment3Index, u: usize, v: usize) -> Option<EdgePlane> {
    match index.edge_planes(u, v) {
        [true, true] => Some(EdgePlane::Spine),
        [true, false] => Some(EdgePlane::A),
        [false, true] => Some(EdgePlane::B),
        [false, false] => None,
    }
}

/// Adds every straight in-plane edge that keeps the drawing valid, scanning
/// vertex pairs in lexicographic order.
///
/// One pass suffices: a pair rejected because of some edge stays rejected
/// once more edges are present, so the result is edge-maximal.
pub fn saturate(d: &TwoPlaneDrawing) -> TwoPlaneDrawing {
    let index = Segment3Index::new(&d.planes, &d.positions).expect("verified planes");
    let n = d.vertex_count();
    let mut g = d.graph.clone();
    let mut edge_plane = d.edge_plane.clone();
    let mut edges = g.edge_list();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let Some(plane) = plane_for(&index, u, v) else {
                continue;
            };
            if index.vertex_inside((u, v)).is_some() {
                continue;
            }
            if edges
                .iter()
                .any(|&f| index.pair_relation((u, v), f).is_some())
            {
                continue;
            }
            g.add_edge(u, v).expect("new edge");
            edge_plane.insert((u, v), plane);
            edges.push((u, v));
        }
    }
    TwoPlaneDrawing {
        graph: g,
        planes: d.planes.clone(),
        positions: d.positions.clone(),
        edge_plane,
    }
}

/// One inequality of the counting argument, evaluated on numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl Diagnostic {
    fn new(name: &str, lhs: i64, rhs: i64) -> Self {
        Diagnostic {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    /// `5n - 19` for `n >= 7`, the small-case maximum otherwise.
    pub bound: usize,
    pub small_case: bool,
    pub passed: bool,
    pub equality: bool,
    pub stats: SpineStats,
    /// Statistics of the saturated drawing the diagnostics refer to.
    pub saturated: SpineStats,
    pub diagnostics: Vec<Diagnostic>,
    pub conjecture_k2: i64,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "fail" };
        writeln!(f, "{:<28} {}", "n", self.n)?;
        writeln!(f, "{:<28} {}", "m", self.m)?;
        let label = if self.small_case {
            "bound (small-case table)"
        } else {
            "bound 5n-19"
        };
        writeln!(f, "{:<28} {}", label, self.bound)?;
        writeln!(f, "{:<28} {}", "result", verdict)?;
        let st = &self.saturated;
        writeln!(
            f,
            "{:<28} m={} s={} a={} b={} t={} gaps={}",
            "saturated", st.m, st.s, st.a, st.b, st.t, st.internal_gaps
        )?;
        for d in &self.diagnostics {
            writeln!(
                f,
                "{:<28} {} <= {} {}",
                d.name,
                d.lhs,
                d.rhs,
                if d.holds { "holds" } else { "fails" }
            )?;
        }
        writeln!(f, "{:<28} {}", "conjecture (k=2)", self.conjecture_k2)
    }
}

/// Compares the edge count with `5n - 19` (or the small-case table) and
/// evaluates the counting inequalities on the saturated drawing.
pub fn bound_check(d: &TwoPlaneDrawing) -> BoundReport {
    let stats = spine_stats(d);
    let sat = spine_stats(&saturate(d));
    let n = stats.n;
    let small_case = n < 7;
    let bound = small_case_bound(n);
    let (ni, si, ti, ai, mi) = (
        n as i64,
        sat.s as i64,
        sat.t as i64,
        sat.a as i64,
        sat.m as i64,
    );
    let diagnostics = vec![
        Diagnostic::new("m+ <= 3n-12+3s-t", mi, 3 * ni - 12 + 3 * si - ti),
        Diagnostic::new("m+ <= 4n-16+2s-t", mi, 4 * ni - 16 + 2 * si - ti),
        Diagnostic::new("s-t <= 2a-3", si - ti, 2 * ai - 3),
        Diagnostic::new("2s-t <= n-3", 2 * si - ti, ni - 3),
    ];
    BoundReport {
        n,
        m: stats.m,
        bound,
        small_case,
        passed: stats.m <= bound,
        equality: stats.m == bound,
        stats,
        saturated: sat,
        diagnostics,
        conjecture_k2: conjectured_bound(2, n),
    }
}

/// How [`random_two_plane_with`] distributes vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Split {
    /// Each vertex goes to the spine or one of the four half-planes.
    Random,
    AllOnSpine,
}

pub fn random_two_plane(n: usize, seed: u64) -> Result<TwoPlaneDrawing> {
    random_two_plane_with(n, seed, Split::Random)
}

/// Random vertex positions on the canonical planes with small-denominator
/// rational coordinates, saturated from the empty edge set.
pub fn random_two_plane_with(n: usize, seed: u64, split: Split) -> Result<TwoPlaneDrawing> {
    if n < 7 {
        return Err(Error::InvalidInput(format!(
            "random two-plane drawings need n >= 7 (got {n})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coord = |rng: &mut ChaCha8Rng, positive: bool| -> Rat {
        let den = rng.gen_range(1..=4i64);
        let num = if positive {
            rng.gen_range(1..=12i64)
        } else {
            rng.gen_range(-12..=12i64)
        };
        ratio(num, den)
    };
    let mut positions: Vec<Point3> = Vec::with_capacity(n);
    while positions.len() < n {
        let part = match split {
            Split::AllOnSpine => 0,
            Split::Random => rng.gen_range(0..5u8),
        };
        let x = coord(&mut rng, false);
        let h = coord(&mut rng, true);
        let zero = ratio(0, 1);
        let p = match part {
            0 => P3::new(x, zero.clone(), zero),
            1 => P3::new(x, h, zero),
            2 => P3::new(x, -h, zero),
            3 => P3::new(x, zero, h),
            _ => P3::new(x, zero, -h),
        };
        if !positions.contains(&p) {
            positions.push(p);
        }
    }
    let empty = TwoPlaneDrawing::new(
        Graph::new(n),
        canonical_planes(),
        positions,
        BTreeMap::new(),
    )?;
    Ok(saturate(&empty))
}
