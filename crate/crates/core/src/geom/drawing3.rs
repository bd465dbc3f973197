use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::segment::{classify_segments, on_open_segment, SegmentRelation};
use super::{Plane3, Point2, Point3, Rat, P2};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Plane an edge is drawn in. Edges along the spine lie in both planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgePlane {
    A,
    B,
    Spine,
}

impl EdgePlane {
    pub fn tag(self) -> &'static str {
        match self {
            EdgePlane::A => "A",
            EdgePlane::B => "B",
            EdgePlane::Spine => "S",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "A" => Some(EdgePlane::A),
            "B" => Some(EdgePlane::B),
            "S" => Some(EdgePlane::Spine),
            _ => None,
        }
    }

    fn planes(self) -> [bool; 2] {
        match self {
            EdgePlane::A => [true, false],
            EdgePlane::B => [false, true],
            EdgePlane::Spine => [true, true],
        }
    }
}

/// Exact 2D coordinates on a plane, obtained by dropping one coordinate whose
/// normal component is nonzero. The projection is an affine bijection from
/// the plane onto the coordinate plane, so it preserves incidences, order
/// along lines and crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneFrame {
    dropped: usize,
}

impl PlaneFrame {
    pub fn of(plane: &Plane3) -> Self {
        let dropped = if !plane.a.is_zero() {
            0
        } else if !plane.b.is_zero() {
            1
        } else {
            2
        };
        PlaneFrame { dropped }
    }

    pub fn project(&self, p: &Point3) -> Point2 {
        match self.dropped {
            0 => P2::new(p.y.clone(), p.z.clone()),
            1 => P2::new(p.x.clone(), p.z.clone()),
            _ => P2::new(p.x.clone(), p.y.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation3 {
    DuplicatePosition {
        u: usize,
        v: usize,
    },
    VertexOffPlanes {
        vertex: usize,
    },
    Unassigned {
        edge: (usize, usize),
    },
    EdgeOffPlane {
        edge: (usize, usize),
        assigned: EdgePlane,
    },
    EdgePair {
        first: (usize, usize),
        second: (usize, usize),
        relation: SegmentRelation,
    },
    /// Edges from different planes meet at a spine point that is not a
    /// common endpoint.
    SpineMeeting {
        first: (usize, usize),
        second: (usize, usize),
    },
    VertexOnEdge {
        vertex: usize,
        edge: (usize, usize),
    },
}

impl fmt::Display for Violation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation3::DuplicatePosition { u, v } => {
                write!(f, "vertices {u} and {v} share a position")
            }
            Violation3::VertexOffPlanes { vertex } => {
                write!(f, "vertex {vertex} lies on neither plane")
            }
            Violation3::Unassigned { edge } => {
                write!(f, "edge {}-{} has no plane assignment", edge.0, edge.1)
            }
            Violation3::EdgeOffPlane { edge, assigned } => write!(
                f,
                "edge {}-{} is not contained in its plane {}",
                edge.0,
                edge.1,
                assigned.tag()
            ),
            Violation3::EdgePair {
                first,
                second,
                relation,
            } => write!(
                f,
                "edges {}-{} and {}-{}: {relation:?}",
                first.0, first.1, second.0, second.1
            ),
            Violation3::SpineMeeting { first, second } => write!(
                f,
                "edges {}-{} and {}-{} meet on the spine",
                first.0, first.1, second.0, second.1
            ),
            Violation3::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies inside edge {}-{}", edge.0, edge.1)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drawing3Report {
    pub violations: Vec<Violation3>,
}

impl Drawing3Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Drawing3Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "two-plane drawing valid");
        }
        writeln!(
            f,
            "two-plane drawing invalid: {} violation(s)",
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Precomputed plane membership and in-plane coordinates of every vertex,
/// answering segment queries for a fixed pair of planes.
#[derive(Debug, Clone)]
pub struct Segment3Index {
    planes: [Plane3; 2],
    positions: Vec<Point3>,
    /// `projected[k][v]` is set iff vertex `v` lies on plane `k`.
    projected: [Vec<Option<Point2>>; 2],
    /// The same coordinates scaled to small integers, when possible.
    scaled: [Option<Vec<Option<P2<i64>>>>; 2],
}

/// Largest scaled coordinate; keeps i64 cross products exact.
const SCALED_LIMIT: i64 = 1 << 29;

/// Multiplies every point by the common denominator if the results fit.
/// Positive scaling preserves every segment relation.
fn scale_to_integers(points: &[Option<Point2>]) -> Option<Vec<Option<P2<i64>>>> {
    let mut den = BigInt::one();
    for p in points.iter().flatten() {
        den = den.lcm(p.x.denom()).lcm(p.y.denom());
    }
    let den = Rat::from_integer(den);
    let limit = BigInt::from(SCALED_LIMIT);
    let small = |r: &Rat| {
        let v = (r * &den).to_integer();
        (v.abs() <= limit).then(|| v.to_i64()).flatten()
    };
    points
        .iter()
        .map(|p| match p {
            None => Some(None),
            Some(p) => Some(Some(P2::new(small(&p.x)?, small(&p.y)?))),
        })
        .collect()
}

impl Segment3Index {
    pub fn new(planes: &[Plane3; 2], positions: &[Point3]) -> Result<Self> {
        if planes[0].is_parallel(&planes[1]) {
            return Err(Error::ParallelPlanes);
        }
        let frames = [PlaneFrame::of(&planes[0]), PlaneFrame::of(&planes[1])];
        let projected: [Vec<Option<Point2>>; 2] = [0, 1].map(|k| {
            positions
                .iter()
                .map(|p| planes[k].contains(p).then(|| frames[k].project(p)))
                .collect()
        });
        let scaled = [0, 1].map(|k| scale_to_integers(&projected[k]));
        Ok(Segment3Index {
            planes: planes.clone(),
            positions: positions.to_vec(),
            projected,
            scaled,
        })
    }

    pub fn on_plane(&self, v: usize, k: usize) -> bool {
        self.projected[k][v].is_some()
    }

    pub fn on_spine(&self, v: usize) -> bool {
        self.on_plane(v, 0) && self.on_plane(v, 1)
    }

    /// Planes containing both endpoints of `uv`.
    pub fn edge_planes(&self, u: usize, v: usize) -> [bool; 2] {
        [0, 1].map(|k| self.on_plane(u, k) && self.on_plane(v, k))
    }

    /// Point where a segment lying in plane `k` (and not in the other plane)
    /// meets the other plane, if it does.
    fn spine_point(&self, (u, v): (usize, usize), k: usize) -> Option<Point3> {
        let other = &self.planes[1 - k];
        let p = &self.positions[u];
        let q = &self.positions[v];
        let fp = other.eval(p);
        let fq = other.eval(q);
        if fp.is_zero() {
            return Some(p.clone());
        }
        if fq.is_zero() {
            return Some(q.clone());
        }
        if (fp > Rat::zero()) == (fq > Rat::zero()) {
            return None;
        }
        let t = &fp / (&fp - &fq);
        Some(p + &(&(q - p) * &t))
    }

    /// Whether segments `e` and `f` (each in the planes containing both of
    /// its endpoints) meet anywhere other than a common endpoint.
    pub fn pair_relation(&self, e: (usize, usize), f: (usize, usize)) -> Option<Violation3> {
        let pe = self.edge_planes(e.0, e.1);
        let pf = self.edge_planes(f.0, f.1);
        let shares = e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1;
        if let Some(k) = (0..2).find(|&k| pe[k] && pf[k]) {
            let rel = match &self.scaled[k] {
                Some(pr) => classify_segments(
                    pr[e.0].as_ref()?,
                    pr[e.1].as_ref()?,
                    pr[f.0].as_ref()?,
                    pr[f.1].as_ref()?,
                ),
                None => {
                    let pr = &self.projected[k];
                    classify_segments(
                        pr[e.0].as_ref()?,
                        pr[e.1].as_ref()?,
                        pr[f.0].as_ref()?,
                        pr[f.1].as_ref()?,
                    )
                }
            }
            .ok()?;
            let bad = match rel {
                SegmentRelation::Disjoint | SegmentRelation::SharedEndpointOnly => false,
                SegmentRelation::CollinearOverlap => true,
                _ => !shares,
            };
            return bad.then_some(Violation3::EdgePair {
                first: e,
                second: f,
                relation: rel,
            });
        }
        let ke = (0..2).find(|&k| pe[k])?;
        let kf = (0..2).find(|&k| pf[k])?;
        let xe = self.spine_point(e, ke)?;
        let xf = self.spine_point(f, kf)?;
        if xe != xf {
            return None;
        }
        let common = [e.0, e.1]
            .into_iter()
            .find(|&v| (v == f.0 || v == f.1) && self.positions[v] == xe);
        match common {
            Some(_) => None,
            None => Some(Violation3::SpineMeeting {
                first: e,
                second: f,
            }),
        }
    }

    /// Data for quick rejection of pairs in [`validate_drawing3`].
    fn sketch(&self, e: (usize, usize)) -> EdgeSketch {
        let planes = self.edge_planes(e.0, e.1);
        let boxes = [0, 1].map(|k| {
            let (p, q) = (
                self.projected[k][e.0].as_ref()?,
                self.projected[k][e.1].as_ref()?,
            );
            let lo = P2::new(p.x.clone().min(q.x.clone()), p.y.clone().min(q.y.clone()));
            let hi = P2::new(p.x.clone().max(q.x.clone()), p.y.clone().max(q.y.clone()));
            Some((lo, hi))
        });
        let spine = match planes {
            [true, false] => self.spine_point(e, 0),
            [false, true] => self.spine_point(e, 1),
            _ => None,
        };
        EdgeSketch {
            planes,
            boxes,
            spine,
        }
    }

    /// First vertex other than the endpoints lying inside segment `uv`.
    pub fn vertex_inside(&self, (u, v): (usize, usize)) -> Option<usize> {
        let planes = self.edge_planes(u, v);
        let k = (0..2).find(|&k| planes[k])?;
        let n = self.positions.len();
        if let Some(pr) = &self.scaled[k] {
            let (p, q) = (pr[u].as_ref()?, pr[v].as_ref()?);
            return (0..n).find(|&w| {
                w != u && w != v && pr[w].as_ref().is_some_and(|r| on_open_segment(p, q, r))
            });
        }
        let pr = &self.projected[k];
        let (p, q) = (pr[u].as_ref()?, pr[v].as_ref()?);
        (0..n)
            .find(|&w| w != u && w != v && pr[w].as_ref().is_some_and(|r| on_open_segment(p, q, r)))
    }
}

struct EdgeSketch {
    planes: [bool; 2],
    boxes: [Option<(Point2, Point2)>; 2],
    spine: Option<Point3>,
}

impl EdgeSketch {
    /// True only if the two edges certainly do not meet.
    fn apart(&self, other: &EdgeSketch) -> bool {
        match (0..2).find(|&k| self.planes[k] && other.planes[k]) {
            Some(k) => match (&self.boxes[k], &other.boxes[k]) {
                (Some((a0, a1)), Some((b0, b1))) => {
                    a1.x < b0.x || b1.x < a0.x || a1.y < b0.y || b1.y < a0.y
                }
                _ => false,
            },
            None => match (&self.spine, &other.spine) {
                (Some(p), Some(q)) => p != q,
                _ => true,
            },
        }
    }
}

/// Verifies a drawing on two planes: every vertex on a plane, each edge inside
/// its assigned plane (spine edges inside both), and no two edges meeting
/// except at a common endpoint. Same-plane pairs are checked in exact plane
/// coordinates; pairs from different planes can only meet on the spine.
pub fn validate_drawing3(
    g: &Graph,
    positions: &[Point3],
    planes: &[Plane3; 2],
    edge_plane: &BTreeMap<(usize, usize), EdgePlane>,
) -> Result<Drawing3Report> {
    let n = g.vertex_count();
    if positions.len() < n {
        return Err(Error::MissingPosition(positions.len()));
    }
    let positions = &positions[..n];
    let index = Segment3Index::new(planes, positions)?;
    let mut violations = Vec::new();

    let mut seen: BTreeMap<&Point3, usize> = BTreeMap::new();
    for (v, p) in positions.iter().enumerate() {
        if let Some(&u) = seen.get(p) {
            violations.push(Violation3::DuplicatePosition { u, v });
        } else {
            seen.insert(p, v);
        }
        if !index.on_plane(v, 0) && !index.on_plane(v, 1) {
            violations.push(Violation3::VertexOffPlanes { vertex: v });
        }
    }
    if !violations.is_empty() {
        return Ok(Drawing3Report { violations });
    }

    let edges = g.edge_list();
    for &e in &edges {
        match edge_plane.get(&e) {
            None => violations.push(Violation3::Unassigned { edge: e }),
            Some(&assigned) => {
                let actual = index.edge_planes(e.0, e.1);
                let wanted = assigned.planes();
                if (0..2).any(|k| wanted[k] && !actual[k]) {
                    violations.push(Violation3::EdgeOffPlane { edge: e, assigned });
                }
            }
        }
    }
    let sketches: Vec<EdgeSketch> = edges.iter().map(|&e| index.sketch(e)).collect();
    let per_edge: Vec<Vec<Violation3>> = (0..edges.len())
        .into_par_iter()
        .map(|i| {
            let e = edges[i];
            let mut found: Vec<Violation3> = edges[i + 1..]
                .iter()
                .zip(&sketches[i + 1..])
                .filter(|(_, sf)| !sketches[i].apart(sf))
                .filter_map(|(&f, _)| index.pair_relation(e, f))
                .collect();
            if let Some(w) = index.vertex_inside(e) {
                found.push(Violation3::VertexOnEdge { vertex: w, edge: e });
            }
            found
        })
        .collect();
    violations.extend(per_edge.into_iter().flatten());
    Ok(Drawing3Report { violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, ratio, P3};

    fn planes() -> [Plane3; 2] {
        [Plane3::xy(), Plane3::xz()]
    }

    fn assign(list: &[((usize, usize), EdgePlane)]) -> BTreeMap<(usize, usize), EdgePlane> {
        list.iter().copied().collect()
    }

    #[test]
    fn single_edge_on_a_passes() {
        let g = Graph::path(2);
        let pos = [Point3::int(0, 0, 0), Point3::int(1, 1, 0)];
        let r = validate_drawing3(&g, &pos, &planes(), &assign(&[((0, 1), EdgePlane::A)])).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn edge_off_its_plane_is_reported() {
        let g = Graph::path(2);
        let pos = [Point3::int(0, 0, 0), Point3::int(1, 1, 0)];
        let r = validate_drawing3(&g, &pos, &planes(), &assign(&[((0, 1), EdgePlane::B)])).unwrap();
        assert!(matches!(r.violations[0], Violation3::EdgeOffPlane { .. }));
    }

    #[test]
    fn cross_plane_edges_meeting_on_spine() {
        // A-edge from (0,1,0) to (0,-1,0) and B-edge from (0,0,1) to (0,0,-1)
        // both pass through the origin.
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let pos = [
            Point3::int(0, 1, 0),
            Point3::int(0, -1, 0),
            Point3::int(0, 0, 1),
            Point3::int(0, 0, -1),
        ];
        let r = validate_drawing3(
            &g,
            &pos,
            &planes(),
            &assign(&[((0, 1), EdgePlane::A), ((2, 3), EdgePlane::B)]),
        )
        .unwrap();
        assert_eq!(r.violations.len(), 1);
        assert!(matches!(r.violations[0], Violation3::SpineMeeting { .. }));
    }

    #[test]
    fn cross_plane_edges_through_shared_spine_vertex_pass() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let pos = [
            Point3::int(2, 0, 0),
            Point3::int(0, 1, 0),
            Point3::int(0, 0, 1),
        ];
        let r = validate_drawing3(
            &g,
            &pos,
            &planes(),
            &assign(&[((0, 1), EdgePlane::A), ((0, 2), EdgePlane::B)]),
        )
        .unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn parallel_planes_are_rejected() {
        let g = Graph::new(1);
        let p = [
            Plane3::xy(),
            Plane3::new(
                crate::geom::rat(0),
                crate::geom::rat(0),
                crate::geom::rat(1),
                crate::geom::rat(1),
            )
            .unwrap(),
        ];
        assert!(matches!(
            validate_drawing3(&g, &[Point3::int(0, 0, 0)], &p, &BTreeMap::new()),
            Err(Error::ParallelPlanes)
        ));
    }

    #[test]
    fn skew_planes_work_through_frames() {
        // Plane x + y + z = 1 and plane x = y; spine through (1/2,1/2,0).
        use crate::geom::{rat, ratio};
        let pa = Plane3::new(rat(1), rat(1), rat(1), rat(1)).unwrap();
        let pb = Plane3::new(rat(1), rat(-1), rat(0), rat(0)).unwrap();
        let s = Point3::new(ratio(1, 2), ratio(1, 2), rat(0));
        let a = Point3::int(1, 0, 0);
        let b = Point3::int(0, 0, 0);
        assert!(pa.contains(&s) && pb.contains(&s) && pa.contains(&a) && pb.contains(&b));
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let r = validate_drawing3(
            &g,
            &[s, a, b],
            &[pa, pb],
            &assign(&[((0, 1), EdgePlane::A), ((0, 2), EdgePlane::B)]),
        )
        .unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn large_and_fractional_coordinates_agree() {
        let big = 1i64 << 40;
        for scale in [ratio(1, 3), rat(big)] {
            let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
            let pts: Vec<Point3> = [(0, 0), (2, 2), (0, 2), (2, 0)]
                .iter()
                .map(|&(x, y)| {
                    P3::new(
                        &scale * Rat::from_integer(x.into()),
                        &scale * Rat::from_integer(y.into()),
                        Rat::zero(),
                    )
                })
                .collect();
            let index = Segment3Index::new(&planes(), &pts).unwrap();
            assert_eq!(index.scaled[0].is_some(), scale != rat(big));
            let r = validate_drawing3(
                &g,
                &pts,
                &planes(),
                &assign(&[((0, 1), EdgePlane::A), ((2, 3), EdgePlane::A)]),
            )
            .unwrap();
            assert!(!r.passed());
        }
    }
}
