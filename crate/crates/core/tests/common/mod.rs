//! Oracles shared by the integration tests: plain i64 geometry and
//! brute-force enumeration, independent of the library's predicates.
#![allow(dead_code)]

pub type Pt = (i64, i64);

pub fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

pub fn in_box(p: Pt, q: Pt, r: Pt) -> bool {
    p.0.min(q.0) <= r.0 && r.0 <= p.0.max(q.0) && p.1.min(q.1) <= r.1 && r.1 <= p.1.max(q.1)
}

pub fn on_closed(p: Pt, q: Pt, r: Pt) -> bool {
    cross(p, q, r) == 0 && in_box(p, q, r)
}

/// Two edges touch somewhere other than a common endpoint.
pub fn edges_clash(p: Pt, q: Pt, r: Pt, s: Pt) -> bool {
    let shared = [p, q].iter().find(|&&x| x == r || x == s).copied();
    let collinear = cross(p, q, r) == 0 && cross(p, q, s) == 0;
    match (collinear, shared) {
        (true, Some(c)) => {
            let a = if p == c { q } else { p };
            let b = if r == c { s } else { r };
            (a.0 - c.0) * (b.0 - c.0) + (a.1 - c.1) * (b.1 - c.1) > 0
        }
        (true, None) => {
            on_closed(p, q, r) || on_closed(p, q, s) || on_closed(r, s, p) || on_closed(r, s, q)
        }
        (false, Some(_)) => false,
        (false, None) => {
            let d1 = cross(p, q, r).signum();
            let d2 = cross(p, q, s).signum();
            let d3 = cross(r, s, p).signum();
            let d4 = cross(r, s, q).signum();
            (d1 * d2 < 0 && d3 * d4 < 0)
                || (d1 == 0 && in_box(p, q, r))
                || (d2 == 0 && in_box(p, q, s))
                || (d3 == 0 && in_box(r, s, p))
                || (d4 == 0 && in_box(r, s, q))
        }
    }
}

pub fn drawing_ok(edges: &[(usize, usize)], pos: &[Pt]) -> bool {
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] == pos[j] {
                return false;
            }
        }
    }
    for &(u, v) in edges {
        for w in 0..pos.len() {
            if w != u && w != v && on_closed(pos[u], pos[v], pos[w]) {
                return false;
            }
        }
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        for &(x, y) in &edges[i + 1..] {
            if edges_clash(pos[u], pos[v], pos[x], pos[y]) {
                return false;
            }
        }
    }
    true
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Minimum number of lines via set cover over every collinear subset.
pub fn brute_line_cover(pts: &[Pt]) -> usize {
    let n = pts.len();
    let full = (1usize << n) - 1;
    let collinear = |mask: usize| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        idx.len() <= 2
            || idx[2..]
                .iter()
                .all(|&k| cross(pts[idx[0]], pts[idx[1]], pts[k]) == 0)
    };
    let lines: Vec<usize> = (1..=full).filter(|&m| collinear(m)).collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        for &l in &lines {
            if l & low != 0 && best[mask & !l] != usize::MAX {
                best[mask] = best[mask].min(best[mask & !l] + 1);
            }
        }
    }
    best[full]
}

pub fn brute_two_parallel(n: usize, edges: &[(usize, usize)]) -> bool {
    for mask in 0..1usize << n {
        let bottom: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        let top: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        for pb in permutations(&bottom) {
            for pt in permutations(&top) {
                let mut pos = vec![(0, 0); n];
                for (i, &v) in pb.iter().enumerate() {
                    pos[v] = (i as i64, 0);
                }
                for (i, &v) in pt.iter().enumerate() {
                    pos[v] = (i as i64, 1);
                }
                if drawing_ok(edges, &pos) {
                    return true;
                }
            }
        }
    }
    false
}
