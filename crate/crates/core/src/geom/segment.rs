use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{orient, Point2, Scalar, P2};
use crate::error::{Error, Result};

/// How two closed segments meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SegmentRelation {
    Disjoint,
    /// The only common point is an endpoint of both segments.
    SharedEndpointOnly,
    ProperCrossing,
    /// An endpoint of one segment lies in the relative interior of the other.
    EndpointInInterior,
    /// The segments are collinear and share more than one point.
    CollinearOverlap,
}

impl SegmentRelation {
    pub fn is_violation(self) -> bool {
        !matches!(
            self,
            SegmentRelation::Disjoint | SegmentRelation::SharedEndpointOnly
        )
    }
}

/// `r` lies on the closed segment `pq`, assuming `p`, `q`, `r` are collinear.
fn within_box<T: Scalar>(p: &P2<T>, q: &P2<T>, r: &P2<T>) -> bool {
    let between = |a: &T, b: &T, c: &T| (a <= c && c <= b) || (b <= c && c <= a);
    between(&p.x, &q.x, &r.x) && between(&p.y, &q.y, &r.y)
}

/// `r` lies strictly between `p` and `q` on the segment `pq`.
pub fn on_open_segment<T: Scalar>(p: &P2<T>, q: &P2<T>, r: &P2<T>) -> bool {
    r != p && r != q && orient(p, q, r) == Ordering::Equal && within_box(p, q, r)
}

/// Classifies segments `pq` and `rs` with exact predicates.
pub fn classify_segments<T: Scalar>(
    p: &P2<T>,
    q: &P2<T>,
    r: &P2<T>,
    s: &P2<T>,
) -> Result<SegmentRelation> {
    use SegmentRelation::*;
    if p == q || r == s {
        return Err(Error::DegenerateSegment);
    }
    let o1 = orient(p, q, r);
    let o2 = orient(p, q, s);
    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        // Same supporting line: compare parameter intervals on an axis the
        // line is not perpendicular to.
        let key = |a: &P2<T>| {
            if p.x != q.x {
                a.x.clone()
            } else {
                a.y.clone()
            }
        };
        let sorted = |a: T, b: T| if a <= b { (a, b) } else { (b, a) };
        let (a0, a1) = sorted(key(p), key(q));
        let (b0, b1) = sorted(key(r), key(s));
        let lo = if a0 >= b0 { a0 } else { b0 };
        let hi = if a1 <= b1 { a1 } else { b1 };
        return Ok(match lo.cmp(&hi) {
            Ordering::Less => CollinearOverlap,
            Ordering::Equal => SharedEndpointOnly,
            Ordering::Greater => Disjoint,
        });
    }
    if p == r || p == s || q == r || q == s {
        return Ok(SharedEndpointOnly);
    }
    let o3 = orient(r, s, p);
    let o4 = orient(r, s, q);
    let opposite = |a: Ordering, b: Ordering| a != Ordering::Equal && b == a.reverse();
    if opposite(o1, o2) && opposite(o3, o4) {
        return Ok(ProperCrossing);
    }
    let touches = (o1 == Ordering::Equal && within_box(p, q, r))
        || (o2 == Ordering::Equal && within_box(p, q, s))
        || (o3 == Ordering::Equal && within_box(r, s, p))
        || (o4 == Ordering::Equal && within_box(r, s, q));
    Ok(if touches {
        EndpointInInterior
    } else {
        Disjoint
    })
}

/// [`classify_segments`] on rational points.
pub fn seg_classify(p: &Point2, q: &Point2, r: &Point2, s: &Point2) -> Result<SegmentRelation> {
    classify_segments(p, q, r, s)
}

#[cfg(test)]
mod tests {
    use super::SegmentRelation::*;
    use super::*;

    fn c(p: (i64, i64), q: (i64, i64), r: (i64, i64), s: (i64, i64)) -> SegmentRelation {
        let pt = |(x, y)| P2::new(x, y);
        classify_segments(&pt(p), &pt(q), &pt(r), &pt(s)).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(c((0, 0), (2, 2), (0, 2), (2, 0)), ProperCrossing);
        assert_eq!(c((0, 0), (1, 0), (1, 0), (2, 1)), SharedEndpointOnly);
        assert_eq!(c((0, 0), (2, 0), (1, 0), (3, 0)), CollinearOverlap);
    }

    #[test]
    fn touching_and_collinear_cases() {
        assert_eq!(c((0, 0), (2, 0), (1, 0), (1, 5)), EndpointInInterior);
        assert_eq!(c((0, 0), (2, 0), (3, 0), (5, 0)), Disjoint);
        assert_eq!(c((0, 0), (2, 0), (2, 0), (5, 0)), SharedEndpointOnly);
        assert_eq!(c((0, 0), (4, 0), (0, 0), (2, 0)), CollinearOverlap);
        assert_eq!(c((0, 0), (0, 4), (0, 1), (0, 3)), CollinearOverlap);
        assert_eq!(c((0, 0), (1, 1), (2, 2), (3, 3)), Disjoint);
        assert_eq!(c((0, 0), (1, 0), (0, 1), (1, 1)), Disjoint);
        assert_eq!(c((0, 0), (2, 2), (1, 1), (1, 1 + 3)), EndpointInInterior);
    }

    #[test]
    fn degenerate_input_is_an_error() {
        let p = P2::new(0i64, 0);
        let q = P2::new(1i64, 0);
        assert!(classify_segments(&p, &p, &p, &q).is_err());
    }

    #[test]
    fn open_segment_membership() {
        let p = P2::new(0i64, 0);
        let q = P2::new(4i64, 2);
        assert!(on_open_segment(&p, &q, &P2::new(2, 1)));
        assert!(!on_open_segment(&p, &q, &q));
        assert!(!on_open_segment(&p, &q, &P2::new(6, 3)));
        assert!(!on_open_segment(&p, &q, &P2::new(2, 2)));
    }
}
