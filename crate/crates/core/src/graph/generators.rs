use serde::{Deserialize, Serialize};

use super::{Graph, Role};
use crate::error::{Error, Result};

/// Deepest universal stacked triangulation we agree to build.
pub const MAX_STACKED_DEPTH: usize = 12;

/// One triangle of the stacking hierarchy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceNode {
    pub corners: [usize; 3],
    pub depth: usize,
    /// Vertex stacked into this triangle, if it was subdivided.
    pub stacked: Option<usize>,
    /// Node ids of the three children. Child `i` replaces corner `i` with the
    /// stacked vertex.
    pub children: Option<[usize; 3]>,
}

/// Hierarchy of triangles of a stacked triangulation, rooted at the outer
/// triangle. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceTree {
    pub nodes: Vec<FaceNode>,
}

impl FaceTree {
    pub fn root(&self) -> &FaceNode {
        &self.nodes[0]
    }

    /// Leaves of the hierarchy, i.e. the bounded faces of the triangulation.
    pub fn frontier(&self) -> impl Iterator<Item = &FaceNode> {
        self.nodes.iter().filter(|n| n.children.is_none())
    }

    pub fn stacked_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.stacked.is_some()).count()
    }

    /// Stacked vertices of generation `depth + 1`, i.e. those inserted into
    /// triangles at the given depth, in node order.
    pub fn stacked_at_depth(&self, depth: usize) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| n.depth == depth)
            .filter_map(|n| n.stacked)
            .collect()
    }
}

/// Universal stacked triangulation `G_d`: start from a triangle and, `d`
/// times, insert a vertex into every bounded face.
///
/// Vertices 0, 1, 2 are the outer corners (marked `a`, `b`, `c`); later
/// vertices are numbered generation by generation in face-tree order.
pub fn make_stacked(d: usize) -> Result<(Graph, FaceTree)> {
    if d > MAX_STACKED_DEPTH {
        return Err(Error::Capacity {
            what: "stacking depth",
            limit: MAX_STACKED_DEPTH,
            got: d,
        });
    }
    let mut g = Graph::new(3);
    for (u, v) in [(0, 1), (0, 2), (1, 2)] {
        g.add_edge(u, v)?;
    }
    g.mark("a", 0);
    g.mark("b", 1);
    g.mark("c", 2);

    let mut tree = FaceTree {
        nodes: vec![FaceNode {
            corners: [0, 1, 2],
            depth: 0,
            stacked: None,
            children: None,
        }],
    };
    let mut frontier = vec![0usize];
    for depth in 0..d {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for &node in &frontier {
            let corners = tree.nodes[node].corners;
            let x = g.add_vertex(Role::Original);
            for &c in &corners {
                g.add_edge(x, c)?;
            }
            let mut ids = [0; 3];
            for (i, id) in ids.iter_mut().enumerate() {
                let mut child = corners;
                child[i] = x;
                *id = tree.nodes.len();
                tree.nodes.push(FaceNode {
                    corners: child,
                    depth: depth + 1,
                    stacked: None,
                    children: None,
                });
                next.push(*id);
            }
            tree.nodes[node].stacked = Some(x);
            tree.nodes[node].children = Some(ids);
        }
        frontier = next;
    }
    Ok((g, tree))
}

/// One `K_{2,4}` gadget replacing the original edge `ends`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub ends: (usize, usize),
    pub mids: [usize; 4],
}

/// Replaces every edge `uv` by a `K_{2,4}` whose 2-side is `{u, v}`.
pub fn substitute_k24(g: &Graph) -> Graph {
    substitute_k24_gadgets(g).0
}

/// As [`substitute_k24`], also returning the gadget of each original edge in
/// edge order. The mids of edge `i` are `n + 4i .. n + 4i + 4`.
pub fn substitute_k24_gadgets(g: &Graph) -> (Graph, Vec<Gadget>) {
    let mut out = Graph::new(g.vertex_count());
    for v in 0..g.vertex_count() {
        out.set_role(v, g.role(v));
    }
    for (name, &v) in g.distinguished() {
        out.mark(name.clone(), v);
    }
    let mut gadgets = Vec::with_capacity(g.edge_count());
    for (u, v) in g.edges() {
        let mut mids = [0; 4];
        for m in &mut mids {
            *m = out.add_vertex(Role::GadgetMid);
            out.add_edge(u, *m).expect("fresh vertex");
            out.add_edge(v, *m).expect("fresh vertex");
        }
        gadgets.push(Gadget { ends: (u, v), mids });
    }
    (out, gadgets)
}

/// Vertex roles inside the double-`K_4` anchor graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct G0Layout {
    /// The common edge of the two `K_4`s.
    pub shared: [usize; 2],
    /// The remaining two vertices of the first `K_4`.
    pub upper: [usize; 2],
    /// The remaining two vertices of the second `K_4`.
    pub lower: [usize; 2],
}

pub const G0_LAYOUT: G0Layout = G0Layout {
    shared: [0, 1],
    upper: [2, 3],
    lower: [4, 5],
};

/// Two copies of `K_4` glued along one edge.
pub fn make_g0() -> Graph {
    let mut g = Graph::with_role(6, Role::G0);
    let [s0, s1] = G0_LAYOUT.shared;
    for side in [G0_LAYOUT.upper, G0_LAYOUT.lower] {
        let quad = [s0, s1, side[0], side[1]];
        for i in 0..4 {
            for j in i + 1..4 {
                // The shared edge is inserted by the first copy only.
                let _ = g.add_edge(quad[i], quad[j]);
            }
        }
    }
    g.mark("shared0", s0);
    g.mark("shared1", s1);
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stacked_small_cases() {
        let (g0, t0) = make_stacked(0).unwrap();
        assert_eq!((g0.vertex_count(), g0.edge_count()), (3, 3));
        assert_eq!(t0.frontier().count(), 1);

        let (g1, _) = make_stacked(1).unwrap();
        assert_eq!(g1, {
            let mut k4 = Graph::complete(4);
            k4.mark("a", 0);
            k4.mark("b", 1);
            k4.mark("c", 2);
            k4
        });

        // n_2 = (9 + 5) / 2, m = 3n - 6, and nine bounded faces.
        let (g2, t2) = make_stacked(2).unwrap();
        assert_eq!(g2.vertex_count(), 7);
        assert_eq!(g2.edge_count(), 15);
        assert_eq!(t2.frontier().count(), 9);
        assert_eq!(t2.stacked_count(), 4);
    }

    #[test]
    fn face_tree_corners_are_triangles() {
        let (g, tree) = make_stacked(4).unwrap();
        assert_eq!(tree.stacked_count(), (3usize.pow(4) - 1) / 2);
        for node in &tree.nodes {
            let [a, b, c] = node.corners;
            assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c));
        }
    }

    #[test]
    fn stacked_rejects_large_depth() {
        assert!(make_stacked(13).unwrap_err().is_capacity());
    }

    #[test]
    fn k24_substitution_counts() {
        let k2 = Graph::path(2);
        let out = substitute_k24(&k2);
        assert_eq!((out.vertex_count(), out.edge_count()), (6, 8));

        let p3 = Graph::path(3);
        let out = substitute_k24(&p3);
        assert_eq!((out.vertex_count(), out.edge_count()), (11, 16));

        let empty = Graph::new(5);
        assert_eq!(substitute_k24(&empty), empty);
    }

    #[test]
    fn k24_substitution_roles() {
        let (out, gadgets) = substitute_k24_gadgets(&Graph::cycle(3));
        for v in 0..3 {
            assert_eq!(out.role(v), Role::Original);
        }
        for gadget in &gadgets {
            for &m in &gadget.mids {
                assert_eq!(out.role(m), Role::GadgetMid);
                assert_eq!(out.degree(m), 2);
            }
        }
        assert!(!out.has_edge(0, 1));
    }

    #[test]
    fn g0_census() {
        let g = make_g0();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 11);
        let deg = g.degrees();
        for &s in &G0_LAYOUT.shared {
            assert_eq!(deg[s], 5);
        }
        for &v in G0_LAYOUT.upper.iter().chain(&G0_LAYOUT.lower) {
            assert_eq!(deg[v], 3);
        }
        assert!(g.has_edge(0, 1));
    }
}
