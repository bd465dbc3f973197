//! Independent oracles: plain i64 geometry and brute-force enumeration,
//! compared against the library's exact predicates and searches.

use std::collections::BTreeMap;

use proptest::prelude::*;

use linecover::cover::{pi12_upper_search, two_parallel_lines, SearchSpace};
use linecover::geom::{
    min_line_cover, ratio, seg_classify, validate_drawing2, validate_drawing3, AffineMap, Drawing2,
    EdgePlane, Point2, Segment3Index,
};
use linecover::graph::{leveled_planar_search, make_stacked, validate_leveling, Graph};
use linecover::planes3d::{random_two_plane, saturate, spine_stats, tight_construction};
use linecover::reduction::{build, path_length};

mod common;

use common::*;

fn drawing_of(pos: &[Pt]) -> Drawing2 {
    Drawing2::new(pos.iter().map(|&(x, y)| Point2::int(x, y)).collect())
}

fn brute_leveled(n: usize, edges: &[(usize, usize)], max_levels: usize) -> bool {
    let k = max_levels as u32;
    for code in 0..k.pow(n as u32) {
        let level: Vec<usize> = (0..n)
            .map(|v| (code / k.pow(v as u32) % k) as usize)
            .collect();
        if edges.iter().any(|&(u, v)| level[u].abs_diff(level[v]) != 1) {
            continue;
        }
        let groups: Vec<Vec<usize>> = (0..max_levels)
            .map(|l| (0..n).filter(|&v| level[v] == l).collect())
            .collect();
        let mut orders: Vec<Vec<Vec<usize>>> = groups.iter().map(|g| permutations(g)).collect();
        let mut idx = vec![0usize; orders.len()];
        loop {
            let mut pos = vec![(0, 0); n];
            for (l, o) in orders.iter_mut().enumerate() {
                for (r, &v) in o[idx[l]].iter().enumerate() {
                    pos[v] = (l as i64, r as i64);
                }
            }
            if drawing_ok(edges, &pos) {
                return true;
            }
            let mut l = 0;
            while l < idx.len() {
                idx[l] += 1;
                if idx[l] < orders[l].len() {
                    break;
                }
                idx[l] = 0;
                l += 1;
            }
            if l == idx.len() {
                break;
            }
        }
    }
    false
}

fn graph_from_mask(n: usize, mask: u32) -> (Graph, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    (Graph::from_edges(n, &edges).unwrap(), edges)
}

fn small_points(max: usize) -> impl Strategy<Value = Vec<Pt>> {
    prop::collection::btree_set((0i64..5, 0i64..5), 1..=max).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn drawing_validator_matches_oracle(pts in small_points(6), mask in any::<u32>()) {
        let n = pts.len();
        let (g, edges) = graph_from_mask(n, mask);
        let report = validate_drawing2(&g, &drawing_of(&pts)).unwrap();
        prop_assert_eq!(report.passed(), drawing_ok(&edges, &pts));
    }

    #[test]
    fn seg_classify_symmetry(a in (0i64..4, 0i64..4), b in (0i64..4, 0i64..4),
                             c in (0i64..4, 0i64..4), d in (0i64..4, 0i64..4)) {
        prop_assume!(a != b && c != d);
        let p = |q: Pt| Point2::int(q.0, q.1);
        let base = seg_classify(&p(a), &p(b), &p(c), &p(d)).unwrap();
        prop_assert_eq!(base, seg_classify(&p(c), &p(d), &p(a), &p(b)).unwrap());
        prop_assert_eq!(base, seg_classify(&p(b), &p(a), &p(c), &p(d)).unwrap());
        prop_assert_eq!(base, seg_classify(&p(a), &p(b), &p(d), &p(c)).unwrap());
        prop_assert_eq!(base.is_violation(), edges_clash(a, b, c, d));
    }

    #[test]
    fn min_line_cover_matches_subset_enumeration(pts in small_points(7)) {
        let cover = min_line_cover(&drawing_of(&pts).positions).unwrap();
        prop_assert_eq!(cover.k, brute_line_cover(&pts));
        for q in &drawing_of(&pts).positions {
            prop_assert!(cover.lines.iter().any(|l| l.contains(q)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_parallel_lines_is_exhaustive(n in 1usize..=6, mask in any::<u32>()) {
        let (g, edges) = graph_from_mask(n, mask);
        let found = two_parallel_lines(&g).unwrap();
        prop_assert_eq!(found.is_some(), brute_two_parallel(n, &edges));
        if let Some(c) = found {
            prop_assert!(c.verify().is_ok());
        }
    }

    #[test]
    fn leveled_search_matches_brute_force(n in 1usize..=5, mask in any::<u32>(), k in 1usize..=3) {
        let (g, edges) = graph_from_mask(n, mask);
        let found = leveled_planar_search(&g, k).unwrap();
        prop_assert_eq!(found.is_some(), brute_leveled(n, &edges, k));
        if let Some(lev) = &found {
            prop_assert!(validate_leveling(&g, lev).is_ok());
            prop_assert!(lev.level_count() <= k);
            prop_assert!(leveled_planar_search(&g, k + 1).unwrap().is_some());
        }
    }

    #[test]
    fn certificates_survive_affine_maps(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3,
                                        d in -3i64..=3, den in 1i64..=3, tx in -5i64..=5) {
        prop_assume!(a * d - b * c != 0);
        let cert = pi12_upper_search(&Graph::complete(4), 2, &SearchSpace::default())
            .unwrap()
            .unwrap();
        let map = AffineMap::new(
            [[ratio(a, den), ratio(b, den)], [ratio(c, 1), ratio(d, 1)]],
            [ratio(tx, 1), ratio(1, 2)],
        )
        .unwrap();
        let moved = cert.map(&map).unwrap();
        prop_assert!(moved.verify().is_ok());
        prop_assert_eq!(moved.line_count(), 2);
    }

    #[test]
    fn random_two_plane_invariants(n in 7usize..=16, seed in any::<u64>()) {
        let d = random_two_plane(n, seed).unwrap();
        let st = spine_stats(&d);
        prop_assert_eq!(st.a + st.b + st.s, n);
        if st.s >= 1 {
            prop_assert_eq!(st.internal_gaps + st.t + 1, st.s);
        }
        prop_assert!(st.m <= 5 * n - 19);
        prop_assert_eq!(saturate(&d), d);
    }
}

#[test]
fn monotone_certificates() {
    let g = Graph::complete(4);
    let cert = pi12_upper_search(&g, 2, &SearchSpace::default())
        .unwrap()
        .unwrap();
    let wider = cert
        .with_line(linecover::Line2::horizontal(ratio(7, 1)))
        .unwrap();
    assert_eq!(wider.line_count(), 3);
    assert!(wider.verify().is_ok());
}

/// Adding any missing in-plane pair to a saturated drawing must break it.
#[test]
fn saturation_is_maximal() {
    for seed in 0..6 {
        let d = random_two_plane(9, seed).unwrap();
        let index = Segment3Index::new(d.planes(), d.positions()).unwrap();
        let n = d.vertex_count();
        for u in 0..n {
            for v in u + 1..n {
                if d.graph().has_edge(u, v) {
                    continue;
                }
                let plane = match index.edge_planes(u, v) {
                    [true, true] => EdgePlane::Spine,
                    [true, false] => EdgePlane::A,
                    [false, true] => EdgePlane::B,
                    _ => continue,
                };
                let mut g = d.graph().clone();
                g.add_edge(u, v).unwrap();
                let mut ep = d.edge_plane().clone();
                ep.insert((u, v), plane);
                let r = validate_drawing3(&g, d.positions(), d.planes(), &ep).unwrap();
                assert!(!r.passed(), "seed {seed}: {u}-{v} could be added");
            }
        }
    }
}

/// The apex-apex edges meet the spine line at `x = 0` and `x = n - 3`.
#[test]
fn tight_apex_edges_cross_in_external_gaps() {
    for n in [7usize, 11, 20] {
        let d = tight_construction(n).unwrap();
        let pos = d.positions();
        let mut crossings = Vec::new();
        for (&(u, v), &plane) in d.edge_plane() {
            if u < n - 4 || v < n - 4 {
                continue;
            }
            // Height above the spine inside the edge's own plane.
            let h = |w: usize| match plane {
                EdgePlane::A => pos[w].y.clone(),
                _ => pos[w].z.clone(),
            };
            let t = h(u) / (h(u) - h(v));
            crossings.push(&pos[u].x + &(&(&pos[v].x - &pos[u].x) * &t));
        }
        crossings.sort();
        assert_eq!(crossings, vec![ratio(0, 1), ratio(n as i64 - 3, 1)]);
        let (pa, pb, ps) = d.plane_census();
        assert_eq!((pa, pb, ps), (2 * (n - 4) + 1, 2 * (n - 4) + 1, n - 5));
    }
}

#[test]
fn stacked_counts_follow_the_recurrence() {
    for d in 0..=6 {
        let (g, tree) = make_stacked(d).unwrap();
        let faces = 3usize.pow(d as u32);
        assert_eq!(g.vertex_count(), (faces + 5) / 2);
        assert_eq!(tree.frontier().count(), faces);
        assert_eq!(g.edge_count(), 3 * g.vertex_count() - 6);
        assert!(g.is_planar());
    }
}

#[test]
fn reduction_sizes() {
    let cases: Vec<Graph> = vec![
        Graph::path(2),
        Graph::path(4),
        Graph::cycle(4),
        Graph::star(3),
    ];
    for g in cases {
        let (n, m) = (g.vertex_count(), g.edge_count());
        let l = path_length(n);
        let red = build(&g, 0).unwrap();
        assert_eq!(red.l, l);
        let expected = n + 4 * m + 6 + (l - 1) + 2 * (l + 4);
        assert_eq!(red.graph.vertex_count(), expected);
        assert!(red.graph.is_planar());
        assert_eq!(red.inner_face.len(), 2 * (l + 2));
        let mut seen = BTreeMap::new();
        for &v in &red.inner_face {
            *seen.entry(v).or_insert(0) += 1;
        }
        assert!(seen.values().all(|&c| c == 1));
    }
}
