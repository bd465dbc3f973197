use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Graph, Role};
use crate::error::{Error, Result};
use crate::geom::{rat, validate_drawing2, Drawing2, Point2, Rat, P2};

/// Counterclockwise neighbor order around every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub around: Vec<Vec<usize>>,
}

/// A face as its boundary walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub boundary: Vec<usize>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }
}

impl RotationSystem {
    /// Angular order of neighbors in a straight-line drawing.
    pub fn from_drawing(g: &Graph, d: &Drawing2) -> Self {
        let around = g
            .adjacency()
            .into_iter()
            .enumerate()
            .map(|(v, mut nbrs)| {
                let o = &d.positions[v];
                nbrs.sort_by(|&a, &b| angle_cmp(&(&d.positions[a] - o), &(&d.positions[b] - o)));
                nbrs
            })
            .collect();
        RotationSystem { around }
    }

    /// Traces all faces. Bounded faces of a planar drawing come out
    /// counterclockwise.
    pub fn faces(&self) -> Vec<Face> {
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (v, nbrs) in self.around.iter().enumerate() {
            for (i, &w) in nbrs.iter().enumerate() {
                index.insert((v, w), i);
            }
        }
        let mut used = BTreeMap::new();
        let mut faces = Vec::new();
        for &(u, v) in index.keys() {
            if used.contains_key(&(u, v)) {
                continue;
            }
            let mut boundary = Vec::new();
            let (mut a, mut b) = (u, v);
            while used.insert((a, b), faces.len()).is_none() {
                boundary.push(a);
                // Next dart leaves b clockwise after the reversed dart b -> a.
                let nbrs = &self.around[b];
                let i = index[&(b, a)];
                let w = nbrs[(i + nbrs.len() - 1) % nbrs.len()];
                (a, b) = (b, w);
            }
            faces.push(Face { boundary });
        }
        faces
    }
}

fn angle_cmp(p: &Point2, q: &Point2) -> Ordering {
    let half = |d: &Point2| {
        if d.y.is_positive() || (d.y.is_zero() && d.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(p).cmp(&half(q)).then_with(|| rat(0).cmp(&p.cross(q)))
}

fn signed_area2(d: &Drawing2, cycle: &[usize]) -> Rat {
    let mut s = rat(0);
    for i in 0..cycle.len() {
        let p = &d.positions[cycle[i]];
        let q = &d.positions[cycle[(i + 1) % cycle.len()]];
        s += p.cross(q);
    }
    s
}

/// Canonical geometry of the spiral: vertex `k` of either chain sits on ray
/// `k mod 4` (directions `+x, +y, -x, -y`) in winding `k / 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralLayout {
    pub drawing: Drawing2,
}

impl SpiralLayout {
    /// Distance between consecutive windings along a ray.
    pub const PITCH: i64 = 3;

    pub fn inner_radius(k: usize) -> Rat {
        rat(3 + Self::PITCH * (k / 4) as i64)
    }

    pub fn outer_radius(k: usize) -> Rat {
        rat(4 + Self::PITCH * (k / 4) as i64)
    }
}

/// Point at distance `r` from the origin on ray `ray mod 4`.
pub fn ray_point(ray: usize, r: Rat) -> Point2 {
    let z = rat(0);
    match ray % 4 {
        0 => P2::new(r, z),
        1 => P2::new(z, r),
        2 => P2::new(-r, z),
        _ => P2::new(z, -r),
    }
}

/// Triangulated spiral with a large inner face and a quadrilateral outer
/// face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spiral {
    pub graph: Graph,
    pub turns: usize,
    /// Inner chain `P_0..P_N`.
    pub inner: Vec<usize>,
    /// Outer chain `Q_0..Q_N`.
    pub outer: Vec<usize>,
    /// Boundary of the large inner face.
    pub inner_face: Vec<usize>,
    pub outer_face: Vec<usize>,
    pub rotation: RotationSystem,
    pub faces: Vec<Face>,
    pub layout: SpiralLayout,
}

impl Spiral {
    /// Faces other than the inner and outer face that are not triangles.
    pub fn non_triangular_faces(&self) -> usize {
        let special = |f: &Face| {
            same_cycle(&f.boundary, &self.inner_face) || same_cycle(&f.boundary, &self.outer_face)
        };
        self.faces
            .iter()
            .filter(|f| !special(f) && f.degree() != 3)
            .count()
    }
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

/// Builds the spiral used by the reduction for paths of length `l`.
///
/// Two chains `P_0..P_N` and `Q_0..Q_N` with `N = l + 3` wind around the
/// origin, `Q_k` just outside `P_k`, joined by rungs `P_k Q_k` and diagonals
/// `P_k Q_{k+1}`. The last outer vertex closes onto `Q_{N-3}`, the cap
/// `Q_{N-4} P_N` seals the last corridor, and the chord `P_N Q_{N-3}`
/// triangulates the remaining pocket. The inner face then has degree
/// `2(l + 2)` and the outer face is `Q_{N-3} Q_{N-2} Q_{N-1} Q_N`.
pub fn make_spiral(l: usize) -> Result<Spiral> {
    if l == 0 {
        return Err(Error::InvalidInput("spiral needs L >= 1".into()));
    }
    let big_n = l + 3;
    let p: Vec<usize> = (0..=big_n).collect();
    let q: Vec<usize> = (0..=big_n).map(|k| big_n + 1 + k).collect();
    let mut g = Graph::with_role(2 * big_n + 2, Role::Spiral);
    let mut add = |u: usize, v: usize| g.add_edge(u, v).expect("spiral edges are distinct");
    for k in 0..big_n {
        add(p[k], p[k + 1]);
        add(q[k], q[k + 1]);
        add(p[k], q[k + 1]);
    }
    for k in 0..=big_n {
        add(p[k], q[k]);
    }
    add(q[big_n], q[big_n - 3]);
    add(q[big_n - 4], p[big_n]);
    add(p[big_n], q[big_n - 3]);

    let mut positions = vec![Point2::int(0, 0); g.vertex_count()];
    for k in 0..=big_n {
        positions[p[k]] = ray_point(k, SpiralLayout::inner_radius(k));
        positions[q[k]] = ray_point(k, SpiralLayout::outer_radius(k));
    }
    let drawing = Drawing2::new(positions);
    let report = validate_drawing2(&g, &drawing)?;
    if !report.passed() {
        return Err(Error::InvalidDrawing(format!("spiral layout: {report}")));
    }

    let rotation = RotationSystem::from_drawing(&g, &drawing);
    let faces = rotation.faces();
    let euler = g.vertex_count() as i64 - g.edge_count() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(Error::InvalidDrawing(format!(
            "spiral embedding violates Euler's formula ({euler})"
        )));
    }

    let mut inner_face: Vec<usize> = p.clone();
    inner_face.extend(q[..=big_n - 4].iter().rev());
    let outer_face: Vec<usize> = q[big_n - 3..].to_vec();
    let outer_traced = faces
        .iter()
        .find(|f| signed_area2(&drawing, &f.boundary).is_negative())
        .ok_or_else(|| Error::InvalidDrawing("no outer face found".into()))?;
    if !same_cycle(&outer_traced.boundary, &outer_face) {
        return Err(Error::InvalidDrawing("unexpected outer face".into()));
    }
    if !faces.iter().any(|f| same_cycle(&f.boundary, &inner_face)) {
        return Err(Error::InvalidDrawing("inner face not found".into()));
    }

    g.mark("spiral_p0", p[0]);
    g.mark("spiral_q0", q[0]);
    Ok(Spiral {
        graph: g,
        turns: l,
        inner: p,
        outer: q,
        inner_face,
        outer_face,
        rotation,
        faces,
        layout: SpiralLayout { drawing },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_census() {
        for l in 1..=8 {
            let s = make_spiral(l).unwrap();
            assert_eq!(s.inner_face.len(), 2 * (l + 2));
            assert_eq!(s.outer_face.len(), 4);
            assert_eq!(s.non_triangular_faces(), 0, "L = {l}");
            assert_eq!(s.faces.len(), 2 * l + 10);
            assert!(s.graph.is_planar());
            assert!(s.graph.is_biconnected());
        }
    }

    #[test]
    fn rejects_zero_turns() {
        assert!(make_spiral(0).is_err());
    }

    #[test]
    fn faces_of_a_triangle() {
        let g = Graph::complete(3);
        let d = Drawing2::new(vec![
            Point2::int(0, 0),
            Point2::int(1, 0),
            Point2::int(0, 1),
        ]);
        let faces = RotationSystem::from_drawing(&g, &d).faces();
        assert_eq!(faces.len(), 2);
        let areas: Vec<Rat> = faces
            .iter()
            .map(|f| signed_area2(&d, &f.boundary))
            .collect();
        assert!(areas.iter().any(|a| a.is_positive()) && areas.iter().any(|a| a.is_negative()));
    }
}
