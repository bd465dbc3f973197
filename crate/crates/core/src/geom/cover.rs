use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{rat, Line2, Point2};
use crate::error::{Error, Result};

/// Largest point set [`min_line_cover`] accepts.
pub const MAX_COVER_POINTS: usize = 14;

/// True iff every point satisfies some line's equation exactly.
pub fn cover_by_lines(points: &[Point2], lines: &[Line2]) -> bool {
    points.iter().all(|p| lines.iter().any(|l| l.contains(p)))
}

/// Canonical line used for a point no other point shares a line with: the
/// vertical line through it.
pub fn singleton_line(p: &Point2) -> Line2 {
    Line2::new(rat(1), rat(0), p.x.clone()).expect("nonzero normal")
}

/// All distinct lines through at least two of the points, sorted.
pub fn pair_spanned_lines(points: &[Point2]) -> Vec<Line2> {
    let mut lines = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if p != q {
                lines.insert(Line2::through(p, q).expect("distinct points"));
            }
        }
    }
    lines.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCover {
    pub k: usize,
    /// Sorted; the lexicographically smallest optimal set.
    pub lines: Vec<Line2>,
}

/// Exact minimum number of lines covering `points`.
///
/// Candidates are the pair-spanned lines plus one [`singleton_line`] per
/// point. The optimum is found by branch and bound, then the
/// lexicographically smallest optimal line set is located by a second,
/// index-ordered search.
pub fn min_line_cover(points: &[Point2]) -> Result<LineCover> {
    let pts: Vec<Point2> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if pts.len() > MAX_COVER_POINTS {
        return Err(Error::Capacity {
            what: "points for an exact line cover",
            limit: MAX_COVER_POINTS,
            got: pts.len(),
        });
    }
    if pts.is_empty() {
        return Ok(LineCover {
            k: 0,
            lines: Vec::new(),
        });
    }

    let mut family: BTreeSet<Line2> = pair_spanned_lines(&pts).into_iter().collect();
    family.extend(pts.iter().map(singleton_line));
    let family: Vec<Line2> = family.into_iter().collect();
    let masks: Vec<u32> = family
        .iter()
        .map(|l| {
            pts.iter()
                .enumerate()
                .filter(|(_, p)| l.contains(p))
                .fold(0u32, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let full: u32 = (1u32 << pts.len()) - 1;

    let mut by_point: Vec<Vec<usize>> = vec![Vec::new(); pts.len()];
    for (li, &m) in masks.iter().enumerate() {
        for (p, lines) in by_point.iter_mut().enumerate() {
            if m & (1 << p) != 0 {
                lines.push(li);
            }
        }
    }
    for lines in &mut by_point {
        lines.sort_by_key(|&li| std::cmp::Reverse(masks[li].count_ones()));
    }
    let widest = masks.iter().map(|m| m.count_ones()).max().unwrap_or(1);

    let mut best = pts.len();
    branch(full, 0, &masks, &by_point, widest, &mut best);

    let last_line_of: Vec<usize> = (0..pts.len())
        .map(|p| {
            masks
                .iter()
                .rposition(|m| m & (1 << p) != 0)
                .expect("singleton line covers every point")
        })
        .collect();
    let mut chosen = Vec::with_capacity(best);
    let found = lexicographic_first(full, 0, best, &masks, &last_line_of, widest, &mut chosen);
    debug_assert!(found);
    Ok(LineCover {
        k: best,
        lines: chosen.into_iter().map(|i| family[i].clone()).collect(),
    })
}

fn branch(
    uncovered: u32,
    used: usize,
    masks: &[u32],
    by_point: &[Vec<usize>],
    widest: u32,
    best: &mut usize,
) {
    if uncovered == 0 {
        *best = (*best).min(used);
        return;
    }
    let need = uncovered.count_ones().div_ceil(widest) as usize;
    if used + need >= *best {
        return;
    }
    let p = uncovered.trailing_zeros() as usize;
    for &li in &by_point[p] {
        branch(
            uncovered & !masks[li],
            used + 1,
            masks,
            by_point,
            widest,
            best,
        );
    }
}

fn lexicographic_first(
    uncovered: u32,
    start: usize,
    slots: usize,
    masks: &[u32],
    last_line_of: &[usize],
    widest: u32,
    chosen: &mut Vec<usize>,
) -> bool {
    if uncovered == 0 {
        return slots == 0;
    }
    if slots == 0 || uncovered.count_ones() > slots as u32 * widest {
        return false;
    }
    let lowest = uncovered.trailing_zeros() as usize;
    for j in start..masks.len() {
        // The lowest uncovered point still needs a line at index >= j.
        if j > last_line_of[lowest] {
            break;
        }
        if masks[j] & uncovered == 0 {
            continue;
        }
        chosen.push(j);
        if lexicographic_first(
            uncovered & !masks[j],
            j + 1,
            slots - 1,
            masks,
            last_line_of,
            widest,
            chosen,
        ) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(list: &[(i64, i64)]) -> Vec<Point2> {
        list.iter().map(|&(x, y)| Point2::int(x, y)).collect()
    }

    #[test]
    fn collinear_points_need_one_line() {
        let c = min_line_cover(&pts(&[(0, 0), (1, 2), (2, 4)])).unwrap();
        assert_eq!(c.k, 1);
        assert!(cover_by_lines(&pts(&[(0, 0), (1, 2), (2, 4)]), &c.lines));
    }

    #[test]
    fn general_position_pairs_up() {
        let p = pts(&[(0, 0), (1, 0), (0, 1), (3, 5)]);
        let c = min_line_cover(&p).unwrap();
        assert_eq!(c.k, 2);
        assert!(cover_by_lines(&p, &c.lines));
    }

    #[test]
    fn grid_needs_three() {
        let grid: Vec<(i64, i64)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        let c = min_line_cover(&pts(&grid)).unwrap();
        assert_eq!(c.k, 3);
        // Lexicographic tie-break prefers the horizontal family 0x + y = c.
        assert_eq!(c.lines[0], Line2::horizontal(rat(0)));
    }

    #[test]
    fn empty_and_singleton() {
        assert_eq!(min_line_cover(&[]).unwrap().k, 0);
        let c = min_line_cover(&pts(&[(3, 4)])).unwrap();
        assert_eq!(c.lines, vec![singleton_line(&Point2::int(3, 4))]);
    }

    #[test]
    fn cover_by_lines_examples() {
        let diag = Line2::through(&Point2::int(0, 0), &Point2::int(1, 1)).unwrap();
        assert!(cover_by_lines(&pts(&[(0, 0), (1, 1)]), &[diag]));
        assert!(!cover_by_lines(&pts(&[(0, 0)]), &[]));
    }

    #[test]
    fn capacity_limit() {
        let many: Vec<(i64, i64)> = (0..15).map(|i| (i, i * i)).collect();
        assert!(min_line_cover(&pts(&many)).unwrap_err().is_capacity());
    }

    #[test]
    fn fourteen_points_in_general_position() {
        let p: Vec<(i64, i64)> = (0..14).map(|i| (i, i * i)).collect();
        let c = min_line_cover(&pts(&p)).unwrap();
        assert_eq!(c.k, 7);
    }
}
