//! Transformation from leveled planarity to drawings on two lines, with both
//! constructive directions.
//!
//! `G''` consists of `G'` (every edge of `G` replaced by a `K_{2,4}`), the
//! double-`K_4` anchor `G_0` around the origin, a path of length `L` from
//! `G_0` to an outer vertex of `G'`, and a triangulated spiral whose inner
//! face cuts the four half-axes into levels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{rat, ratio, validate_drawing2, Drawing2, Point2, Rat};
use crate::graph::{
    make_g0, make_spiral, ray_point, substitute_k24_gadgets, validate_leveling, Gadget, Graph,
    LevelAssignment, Role, SpiralLayout, G0_LAYOUT,
};

/// Piece of `G''` a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Component {
    GPrime,
    G0,
    Path,
    Spiral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutput {
    /// The input graph `G`; its vertices keep their ids inside `G''`.
    pub original: Graph,
    pub graph: Graph,
    /// Path length.
    pub l: usize,
    pub attachment: usize,
    /// Boundary of the large inner face of `S + G_0`.
    pub inner_face: Vec<usize>,
    pub component: Vec<Component>,
    pub gadgets: Vec<Gadget>,
    /// `G_0` vertices in the order of [`G0_LAYOUT`] ids.
    pub g0: Vec<usize>,
    /// Full path from `G_0` to the attachment vertex, `L + 1` vertices.
    pub path: Vec<usize>,
    pub spiral_inner: Vec<usize>,
    pub spiral_outer: Vec<usize>,
}

/// Path length used for a graph on `n` vertices.
pub fn path_length(n: usize) -> usize {
    2 * n + 2
}

/// Assembles `G''` for `g`, with the path ending at `attachment`.
pub fn build(g: &Graph, attachment: usize) -> Result<ReductionOutput> {
    let n = g.vertex_count();
    if attachment >= n {
        return Err(Error::InvalidInput(format!(
            "attachment {attachment} is not a vertex of a graph with {n} vertices"
        )));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !g.is_planar() {
        return Err(Error::NotPlanar);
    }
    let l = path_length(n);
    let mut base = g.clone();
    for v in 0..n {
        base.set_role(v, Role::Original);
    }
    let (mut gpp, gadgets) = substitute_k24_gadgets(&base);
    let mut component = vec![Component::GPrime; gpp.vertex_count()];

    let g0_off = gpp.append(&make_g0());
    let g0: Vec<usize> = (g0_off..g0_off + 6).collect();
    component.extend([Component::G0; 6]);

    let mut path = vec![g0[G0_LAYOUT.lower[1]]];
    for _ in 0..l - 1 {
        path.push(gpp.add_vertex(Role::PathConnector));
        component.push(Component::Path);
    }
    path.push(attachment);
    for w in path.windows(2) {
        gpp.add_edge(w[0], w[1])?;
    }

    let spiral = make_spiral(l)?;
    let s_off = gpp.append(&spiral.graph);
    component.extend(vec![Component::Spiral; spiral.graph.vertex_count()]);
    let p: Vec<usize> = spiral.inner.iter().map(|v| v + s_off).collect();
    let q: Vec<usize> = spiral.outer.iter().map(|v| v + s_off).collect();

    let [s1, s2] = G0_LAYOUT.shared.map(|v| g0[v]);
    let b = g0[G0_LAYOUT.upper[1]];
    let e = g0[G0_LAYOUT.lower[1]];
    for (u, v) in [
        (s2, p[0]),
        (b, p[1]),
        (s1, p[2]),
        (e, p[3]),
        (p[0], b),
        (b, p[2]),
        (p[2], e),
    ] {
        gpp.add_edge(u, v)?;
    }

    // The fourth quadrant stays open, so F runs P_3 .. P_N, the outer chain
    // back to Q_0, then P_0, s2 and e.
    let big_n = l + 3;
    let mut inner_face: Vec<usize> = p[3..].to_vec();
    inner_face.extend(q[..=big_n - 4].iter().rev());
    inner_face.extend([p[0], s2, e]);

    gpp.mark("attachment", attachment);
    gpp.mark("g0_shared0", s1);
    gpp.mark("g0_shared1", s2);
    Ok(ReductionOutput {
        original: base,
        graph: gpp,
        l,
        attachment,
        inner_face,
        component,
        gadgets,
        g0,
        path,
        spiral_inner: p,
        spiral_outer: q,
    })
}

/// A verified crossing-free drawing with every vertex on a coordinate axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoLineDrawing {
    drawing: Drawing2,
}

impl TwoLineDrawing {
    pub fn new(g: &Graph, drawing: Drawing2) -> Result<Self> {
        let n = g.vertex_count();
        if drawing.len() < n {
            return Err(Error::MissingPosition(drawing.len()));
        }
        if let Some(v) = drawing.positions[..n]
            .iter()
            .position(|p| p.x != rat(0) && p.y != rat(0))
        {
            return Err(Error::InvalidDrawing(format!(
                "vertex {v} is on neither coordinate axis"
            )));
        }
        let report = validate_drawing2(g, &drawing)?;
        if !report.passed() {
            return Err(Error::InvalidDrawing(report.to_string()));
        }
        Ok(TwoLineDrawing { drawing })
    }

    pub fn drawing(&self) -> &Drawing2 {
        &self.drawing
    }

    pub fn into_drawing(self) -> Drawing2 {
        self.drawing
    }
}

/// Levels of `G'` induced by a leveling of `G`: originals on odd levels,
/// gadget mids on the even level between their ends. Orders per level are
/// bottom to top.
fn doubled_levels(red: &ReductionOutput, lev: &LevelAssignment) -> Vec<Vec<usize>> {
    let m = lev.level_count();
    let rank = lev.ranks();
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); 2 * m - 1];
    for (i, vs) in lev.order.iter().enumerate() {
        levels[2 * i] = vs.clone();
    }
    type Spanned<'a> = Vec<((usize, usize), &'a Gadget)>;
    let mut between: BTreeMap<usize, Spanned> = BTreeMap::new();
    for gadget in &red.gadgets {
        let (u, v) = gadget.ends;
        let (lo, hi) = if lev.level(u) < lev.level(v) {
            (u, v)
        } else {
            (v, u)
        };
        between
            .entry(lev.level(lo))
            .or_default()
            .push(((rank[lo], rank[hi]), gadget));
    }
    for (level, mut list) in between {
        list.sort_by_key(|(key, g)| (*key, g.mids));
        levels[2 * level - 1] = list.iter().flat_map(|(_, g)| g.mids).collect();
    }
    levels
}

/// Radius offsets used inside a corridor, relative to `4 + 3w`.
const PATH_INNER: (i64, i64) = (1, 2);
const PATH_OUTER: (i64, i64) = (7, 4);

fn corridor_base(level: usize) -> Rat {
    rat(4 + SpiralLayout::PITCH * (level / 4) as i64)
}

/// Builds a two-line drawing of `G''` from a leveled-planar drawing of `G`.
///
/// Level `j` of `G'` lies on ray `j mod 4` strictly between `Q_j` and
/// `P_{j+4}`. The path leaves `G_0` into the first corridor, runs radially
/// there for `L - lambda` vertices, then hops one corridor per vertex, either
/// below or above the `G'` vertices, until it reaches the attachment on level
/// `lambda`. Both routes are tried on the leveling and on its mirror image;
/// the first that validates is returned.
pub fn forward_draw(
    g: &Graph,
    lev: &LevelAssignment,
    red: &ReductionOutput,
) -> Result<TwoLineDrawing> {
    if g.vertex_count() != red.original.vertex_count() || g.edge_list() != red.original.edge_list()
    {
        return Err(Error::InvalidInput(
            "graph differs from the one the reduction was built for".into(),
        ));
    }
    validate_leveling(g, lev)?;
    let m = lev.level_count();
    if 2 * m - 1 > red.l - 2 {
        return Err(Error::InvalidInput(format!(
            "{m} levels need {} corridors, the spiral offers {}",
            2 * m - 1,
            red.l - 2
        )));
    }
    let mut last = None;
    for mirrored in [false, true] {
        let mut levels = doubled_levels(red, lev);
        if mirrored {
            levels.iter_mut().for_each(|l| l.reverse());
        }
        for inner_route in [true, false] {
            let positions = place_all(red, &levels, inner_route);
            match TwoLineDrawing::new(&red.graph, Drawing2::new(positions)) {
                Ok(d) => return Ok(d),
                Err(e) => last = Some(e),
            }
        }
    }
    Err(Error::InvalidDrawing(format!(
        "attachment {} is not reachable by the path ({})",
        red.attachment,
        last.map(|e| e.to_string()).unwrap_or_default()
    )))
}

fn place_all(red: &ReductionOutput, levels: &[Vec<usize>], inner_route: bool) -> Vec<Point2> {
    let mut pos = vec![Point2::int(0, 0); red.graph.vertex_count()];
    for (k, (&pk, &qk)) in red.spiral_inner.iter().zip(&red.spiral_outer).enumerate() {
        pos[pk] = ray_point(k, SpiralLayout::inner_radius(k));
        pos[qk] = ray_point(k, SpiralLayout::outer_radius(k));
    }
    let g0_points = [(-1, 0), (1, 0), (0, 1), (0, 2), (0, -1), (0, -2)];
    for (i, &(x, y)) in g0_points.iter().enumerate() {
        pos[red.g0[i]] = Point2::int(x, y);
    }

    let mut g_level = BTreeMap::new();
    for (i, vs) in levels.iter().enumerate() {
        let j = i + 1;
        let c = vs.len() as i64;
        for (r, &v) in vs.iter().enumerate() {
            let radius = corridor_base(j) + rat(1) + ratio(r as i64, 2 * c);
            pos[v] = ray_point(j, radius);
            g_level.insert(v, j);
        }
    }

    let lambda = g_level[&red.attachment];
    let l = red.l;
    let chain = l - lambda;
    let interior = &red.path[1..l];
    for (t, &v) in interior[..chain].iter().enumerate() {
        let radius = rat(4) + ratio(2 * (t as i64 + 1), chain as i64 + 1);
        pos[v] = ray_point(0, radius);
    }
    let (num, den) = if inner_route { PATH_INNER } else { PATH_OUTER };
    for (i, &v) in interior[chain..].iter().enumerate() {
        let j = i + 1;
        pos[v] = ray_point(j, corridor_base(j) + ratio(num, den));
    }
    pos
}

/// Corridor index `k` of every `G'` vertex: the vertex lies strictly between
/// `Q_k` and `P_{k+4}` on a common ray.
fn corridor_of(red: &ReductionOutput, d: &Drawing2, v: usize) -> Option<usize> {
    let p = &d.positions[v];
    let corridors = red.spiral_outer.len() - 4;
    (0..corridors).find(|&k| {
        let a = &d.positions[red.spiral_outer[k]];
        let b = &d.positions[red.spiral_inner[k + 4]];
        crate::geom::on_open_segment(a, b, p)
    })
}

/// Levels of all `G'` vertices, numbered from the innermost occupied
/// corridor. Indexed by vertex; `None` outside `G'`.
pub fn gprime_levels(red: &ReductionOutput, d: &TwoLineDrawing) -> Result<Vec<Option<usize>>> {
    let d = d.drawing();
    let mut raw = vec![None; red.graph.vertex_count()];
    for (v, slot) in raw.iter_mut().enumerate() {
        if red.component[v] != Component::GPrime {
            continue;
        }
        *slot = Some(corridor_of(red, d, v).ok_or_else(|| {
            Error::InvalidDrawing(format!("vertex {v} of G' lies in no level of the spiral"))
        })?);
    }
    let kmin = raw.iter().flatten().copied().min().unwrap_or(0);
    Ok(raw.into_iter().map(|k| k.map(|k| k - kmin + 1)).collect())
}

/// Level spans `(lowest, highest)` of every gadget in a drawing.
pub fn gadget_spans(red: &ReductionOutput, d: &TwoLineDrawing) -> Result<Vec<(usize, usize)>> {
    let levels = gprime_levels(red, d)?;
    Ok(red
        .gadgets
        .iter()
        .map(|gadget| {
            let ls: Vec<usize> = [gadget.ends.0, gadget.ends.1]
                .into_iter()
                .chain(gadget.mids)
                .map(|v| levels[v].expect("gadget vertices are in G'"))
                .collect();
            (*ls.iter().min().unwrap(), *ls.iter().max().unwrap())
        })
        .collect())
}

/// Recovers a leveling of `G` from a two-line drawing of `G''`.
pub fn extract_levels(red: &ReductionOutput, d: &TwoLineDrawing) -> Result<LevelAssignment> {
    // Re-check: the drawing type is verified, but it may belong to another graph.
    let d = TwoLineDrawing::new(&red.graph, d.drawing().clone())?;
    let levels = gprime_levels(red, &d)?;
    let n = red.original.vertex_count();
    for (v, l) in levels.iter().enumerate() {
        let Some(l) = l else { continue };
        let odd = l % 2 == 1;
        match red.graph.role(v) {
            Role::Original if !odd => {
                return Err(Error::InvalidLeveling(format!(
                    "original vertex {v} sits on even level {l}"
                )))
            }
            Role::GadgetMid if odd => {
                return Err(Error::InvalidLeveling(format!(
                    "gadget vertex {v} sits on odd level {l}"
                )))
            }
            _ => {}
        }
    }
    let level_of: Vec<usize> = (0..n)
        .map(|v| levels[v].expect("original vertices are in G'") / 2 + 1)
        .collect();
    let m = level_of.iter().copied().max().unwrap_or(1);
    let radius = |v: usize| {
        let p = &d.drawing().positions[v];
        num_traits::Signed::abs(&p.x) + num_traits::Signed::abs(&p.y)
    };
    let mut order: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 0..n {
        order[level_of[v] - 1].push(v);
    }
    for vs in &mut order {
        vs.sort_by_key(|&v| radius(v));
    }
    let lev = LevelAssignment::from_orders(n, order)?;
    validate_leveling(&red.original, &lev)?;
    Ok(lev)
}
