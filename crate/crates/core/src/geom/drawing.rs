use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::segment::{classify_segments, on_open_segment, SegmentRelation};
use super::{Line2, Point2, Rat, P2};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Straight-line drawing in the plane: a rational position per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drawing2 {
    pub positions: Vec<Point2>,
}

impl Drawing2 {
    pub fn new(positions: Vec<Point2>) -> Self {
        Drawing2 { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, v: usize) -> Result<&Point2> {
        self.positions.get(v).ok_or(Error::MissingPosition(v))
    }

    pub fn map(&self, f: &AffineMap) -> Drawing2 {
        Drawing2::new(self.positions.iter().map(|p| f.apply(p)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    DuplicatePosition {
        u: usize,
        v: usize,
    },
    EdgePair {
        first: (usize, usize),
        second: (usize, usize),
        relation: SegmentRelation,
    },
    VertexOnEdge {
        vertex: usize,
        edge: (usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicatePosition { u, v } => {
                write!(f, "vertices {u} and {v} share a position")
            }
            Violation::EdgePair {
                first,
                second,
                relation,
            } => write!(
                f,
                "edges {}-{} and {}-{}: {relation:?}",
                first.0, first.1, second.0, second.1
            ),
            Violation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies inside edge {}-{}", edge.0, edge.1)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingReport {
    pub violations: Vec<Violation>,
}

impl DrawingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DrawingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "drawing valid");
        }
        writeln!(f, "drawing invalid: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Checks that a drawing is a crossing-free straight-line drawing of `g`.
///
/// Two edges may only meet in a common endpoint, and no vertex may sit in the
/// interior of an edge it is not incident to. Collinear overlaps always count
/// as violations, even between edges that share an endpoint. Violations are
/// reported in edge-index order.
pub fn validate_drawing2(g: &Graph, d: &Drawing2) -> Result<DrawingReport> {
    let n = g.vertex_count();
    if d.len() < n {
        return Err(Error::MissingPosition(d.len()));
    }
    let pos = &d.positions[..n];
    let mut violations = Vec::new();

    let mut seen: BTreeMap<&Point2, usize> = BTreeMap::new();
    for (v, p) in pos.iter().enumerate() {
        if let Some(&u) = seen.get(p) {
            violations.push(Violation::DuplicatePosition { u, v });
        } else {
            seen.insert(p, v);
        }
    }
    if !violations.is_empty() {
        // Segments are meaningless once two endpoints coincide.
        return Ok(DrawingReport { violations });
    }

    let edges = g.edge_list();
    let boxes: Vec<_> = edges
        .iter()
        .map(|&(u, v)| BBox::of(&pos[u], &pos[v]))
        .collect();

    let pair_violations: Vec<Vec<Violation>> = (0..edges.len())
        .into_par_iter()
        .map(|i| {
            let (a, b) = edges[i];
            let mut out = Vec::new();
            for j in i + 1..edges.len() {
                if !boxes[i].overlaps(&boxes[j]) {
                    continue;
                }
                let (c, e) = edges[j];
                let relation = classify_segments(&pos[a], &pos[b], &pos[c], &pos[e])
                    .expect("positions are distinct");
                let shares = a == c || a == e || b == c || b == e;
                let bad = match relation {
                    SegmentRelation::Disjoint | SegmentRelation::SharedEndpointOnly => false,
                    SegmentRelation::CollinearOverlap => true,
                    _ => !shares,
                };
                if bad {
                    out.push(Violation::EdgePair {
                        first: edges[i],
                        second: edges[j],
                        relation,
                    });
                }
            }
            for (v, p) in pos.iter().enumerate() {
                if v != a && v != b && boxes[i].contains(p) && on_open_segment(&pos[a], &pos[b], p)
                {
                    out.push(Violation::VertexOnEdge {
                        vertex: v,
                        edge: edges[i],
                    });
                }
            }
            out
        })
        .collect();
    violations.extend(pair_violations.into_iter().flatten());
    Ok(DrawingReport { violations })
}

struct BBox {
    lo: Point2,
    hi: Point2,
}

impl BBox {
    fn of(p: &Point2, q: &Point2) -> Self {
        let (x0, x1) = if p.x <= q.x {
            (&p.x, &q.x)
        } else {
            (&q.x, &p.x)
        };
        let (y0, y1) = if p.y <= q.y {
            (&p.y, &q.y)
        } else {
            (&q.y, &p.y)
        };
        BBox {
            lo: P2::new(x0.clone(), y0.clone()),
            hi: P2::new(x1.clone(), y1.clone()),
        }
    }

    fn overlaps(&self, o: &BBox) -> bool {
        self.lo.x <= o.hi.x && o.lo.x <= self.hi.x && self.lo.y <= o.hi.y && o.lo.y <= self.hi.y
    }

    fn contains(&self, p: &Point2) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }
}

/// Invertible rational affine map `p -> M p + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub m: [[Rat; 2]; 2],
    pub t: [Rat; 2],
}

impl AffineMap {
    pub fn new(m: [[Rat; 2]; 2], t: [Rat; 2]) -> Result<Self> {
        let map = AffineMap { m, t };
        if map.det().is_zero() {
            return Err(Error::InvalidInput("singular affine map".into()));
        }
        Ok(map)
    }

    pub fn det(&self) -> Rat {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        P2::new(
            &self.m[0][0] * &p.x + &self.m[0][1] * &p.y + &self.t[0],
            &self.m[1][0] * &p.x + &self.m[1][1] * &p.y + &self.t[1],
        )
    }

    /// Image of a line under the map.
    pub fn apply_line(&self, l: &Line2) -> Line2 {
        // n . p = c with p = M^-1 (p' - t) gives (M^-T n) . p' = c + (M^-T n) . t
        let det = self.det();
        let inv = [
            [&self.m[1][1] / &det, -(&self.m[0][1] / &det)],
            [-(&self.m[1][0] / &det), &self.m[0][0] / &det],
        ];
        let a = &inv[0][0] * &l.a + &inv[1][0] * &l.b;
        let b = &inv[0][1] * &l.a + &inv[1][1] * &l.b;
        let c = &l.c + &a * &self.t[0] + &b * &self.t[1];
        Line2::new(a, b, c).expect("invertible map keeps lines nondegenerate")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    fn drawing(points: &[(i64, i64)]) -> Drawing2 {
        Drawing2::new(points.iter().map(|&(x, y)| Point2::int(x, y)).collect())
    }

    #[test]
    fn k4_with_inner_vertex_passes() {
        let k4 = Graph::complete(4);
        let d = drawing(&[(0, 0), (4, 0), (0, 4), (1, 1)]);
        assert!(validate_drawing2(&k4, &d).unwrap().passed());
    }

    #[test]
    fn k4_on_square_has_one_crossing() {
        let k4 = Graph::complete(4);
        let d = drawing(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let report = validate_drawing2(&k4, &d).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.violations[0],
            Violation::EdgePair {
                first: (0, 2),
                second: (1, 3),
                relation: SegmentRelation::ProperCrossing
            }
        ));
    }

    #[test]
    fn collinear_path_passes() {
        let p3 = Graph::path(3);
        assert!(validate_drawing2(&p3, &drawing(&[(0, 0), (1, 1), (2, 2)]))
            .unwrap()
            .passed());
        // Out of path order the long edge runs over the middle vertex.
        let report = validate_drawing2(&p3, &drawing(&[(0, 0), (2, 2), (1, 1)])).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn shared_endpoint_overlap_is_a_violation() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let report = validate_drawing2(&g, &drawing(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::EdgePair {
                relation: SegmentRelation::CollinearOverlap,
                ..
            }
        )));
    }

    #[test]
    fn duplicates_and_missing_positions() {
        let g = Graph::path(2);
        let report = validate_drawing2(&g, &drawing(&[(1, 1), (1, 1)])).unwrap();
        assert_eq!(
            report.violations,
            vec![Violation::DuplicatePosition { u: 0, v: 1 }]
        );
        assert!(matches!(
            validate_drawing2(&g, &drawing(&[(0, 0)])),
            Err(Error::MissingPosition(1))
        ));
    }

    #[test]
    fn affine_line_image_contains_image_points() {
        let f = AffineMap::new([[rat(2), rat(1)], [rat(-1), rat(3)]], [rat(5), rat(-7)]).unwrap();
        let p = Point2::int(1, 2);
        let q = Point2::int(-3, 4);
        let l = Line2::through(&p, &q).unwrap();
        let img = f.apply_line(&l);
        assert!(img.contains(&f.apply(&p)));
        assert!(img.contains(&f.apply(&q)));
        assert!(AffineMap::new([[rat(1), rat(2)], [rat(2), rat(4)]], [rat(0), rat(0)]).is_err());
    }
}
