//! Undirected simple graphs with role tags, plus the generators and
//! combinatorial checks used throughout the crate.

mod generators;
mod leveling;
mod spiral;

pub use generators::{
    make_g0, make_stacked, substitute_k24, substitute_k24_gadgets, FaceNode, FaceTree, Gadget,
    G0_LAYOUT, MAX_STACKED_DEPTH,
};
pub use leveling::{
    leveled_planar_search, validate_leveling, LevelAssignment, MAX_LEVELED_SEARCH_VERTICES,
};
pub use spiral::{make_spiral, ray_point, Face, RotationSystem, Spiral, SpiralLayout};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which piece of a composite construction a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    Original,
    GadgetMid,
    G0,
    PathConnector,
    Spiral,
}

impl Role {
    pub fn tag(self) -> &'static str {
        match self {
            Role::Original => "original",
            Role::GadgetMid => "gadgetMid",
            Role::G0 => "g0",
            Role::PathConnector => "pathConnector",
            Role::Spiral => "spiral",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "original" => Role::Original,
            "gadgetMid" => Role::GadgetMid,
            "g0" => Role::G0,
            "pathConnector" => Role::PathConnector,
            "spiral" => Role::Spiral,
            other => return Err(format!("unknown role tag `{other}`")),
        })
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are stored normalized as `(u, v)` with `u < v` in a sorted set, so
/// iteration order (and therefore every derived edge index) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    roles: Vec<Role>,
    distinguished: BTreeMap<String, usize>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self::with_role(n, Role::Original)
    }

    pub fn with_role(n: usize, role: Role) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            roles: vec![role; n],
            distinguished: BTreeMap::new(),
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&ordered(u, v))
    }

    /// Appends a vertex with the given role and returns its index.
    pub fn add_vertex(&mut self, role: Role) -> usize {
        self.n += 1;
        self.roles.push(role);
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if !self.edges.insert(ordered(u, v)) {
            return Err(Error::InvalidInput(format!("parallel edge ({u}, {v})")));
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        self.edges.remove(&ordered(u, v))
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn set_role(&mut self, v: usize, role: Role) {
        self.roles[v] = role;
    }

    pub fn distinguished(&self) -> &BTreeMap<String, usize> {
        &self.distinguished
    }

    pub fn mark(&mut self, name: impl Into<String>, v: usize) {
        self.distinguished.insert(name.into(), v);
    }

    pub fn marked(&self, name: &str) -> Option<usize> {
        self.distinguished.get(name).copied()
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Component id per vertex, numbered in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().iter().all(|&c| c == 0)
    }

    /// Breadth-first distances from `source`; unreachable vertices are `None`.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency();
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest shortest-path distance over all vertex pairs.
    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs_distances(s) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Err(Error::Disconnected),
                }
            }
        }
        Ok(best)
    }

    /// Acyclic with maximum degree at most two, i.e. a disjoint union of paths.
    pub fn is_linear_forest(&self) -> bool {
        if self.degrees().iter().any(|&d| d > 2) {
            return false;
        }
        let components = self.components().iter().copied().max().map_or(0, |c| c + 1);
        // A forest has exactly n - c edges.
        self.edge_count() + components == self.n
    }

    /// Proper 2-colouring if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u]?;
                for &w in &adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Whether the graph is 2-connected (connected, at least three vertices,
    /// and no cut vertex).
    pub fn is_biconnected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        (0..self.n).all(|cut| {
            let keep: Vec<usize> = (0..self.n).filter(|&v| v != cut).collect();
            self.induced(&keep).is_connected()
        })
    }

    pub fn is_planar(&self) -> bool {
        use rustworkx_core::petgraph::graph::UnGraph;
        let edges: Vec<(u32, u32)> = self.edges().map(|(u, v)| (u as u32, v as u32)).collect();
        let mut pg = UnGraph::<(), ()>::from_edges(&edges);
        while pg.node_count() < self.n {
            pg.add_node(());
        }
        rustworkx_core::planar::is_planar(&pg)
    }

    /// Subgraph induced by `keep`, renumbered in the given order. Roles are
    /// carried over; distinguished marks are kept when their vertex survives.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph {
            n: keep.len(),
            edges: BTreeSet::new(),
            roles: keep.iter().map(|&v| self.roles[v]).collect(),
            distinguished: BTreeMap::new(),
        };
        for &(u, v) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                g.edges.insert(ordered(index[u], index[v]));
            }
        }
        for (name, &v) in &self.distinguished {
            if index[v] != usize::MAX {
                g.distinguished.insert(name.clone(), index[v]);
            }
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by
    /// `self.vertex_count()`, and that offset is returned. Marks of `other`
    /// are not copied.
    pub fn append(&mut self, other: &Graph) -> usize {
        let offset = self.n;
        self.n += other.n;
        self.roles.extend_from_slice(&other.roles);
        for &(u, v) in &other.edges {
            self.edges.insert((u + offset, v + offset));
        }
        offset
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.edges.insert((i - 1, i));
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.edges.insert((0, n - 1));
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.edges.insert((u, v));
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.edges.insert((u, v));
            }
        }
        g
    }

    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.edges.insert((0, v));
        }
        g
    }

    /// Writes the text format: a header `n m`, optional `# role v tag` and
    /// `# mark name v` comment lines, then one `u v` line per edge.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {}", self.n, self.edges.len())?;
        for (v, role) in self.roles.iter().enumerate() {
            if *role != Role::Original {
                writeln!(out, "# role {v} {role}")?;
            }
        }
        for (name, v) in &self.distinguished {
            writeln!(out, "# mark {name} {v}")?;
        }
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("graph text is ASCII")
    }

    pub fn read_text<R: BufRead>(input: R) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        let mut declared_edges = 0;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                let words: Vec<&str> = comment.split_whitespace().collect();
                let g = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(lineno, "comment before header"))?;
                match words.as_slice() {
                    ["role", v, tag] => {
                        let v = parse_index(v, lineno)?;
                        if v >= g.n {
                            return Err(Error::parse(lineno, "role for unknown vertex"));
                        }
                        g.roles[v] = tag.parse().map_err(|e| Error::parse(lineno, e))?;
                    }
                    ["mark", name, v] => {
                        let v = parse_index(v, lineno)?;
                        if v >= g.n {
                            return Err(Error::parse(lineno, "mark for unknown vertex"));
                        }
                        g.distinguished.insert((*name).to_string(), v);
                    }
                    _ => {}
                }
                continue;
            }
            let mut words = trimmed.split_whitespace();
            let (a, b) = match (words.next(), words.next(), words.next()) {
                (Some(a), Some(b), None) => (parse_index(a, lineno)?, parse_index(b, lineno)?),
                _ => return Err(Error::parse(lineno, "expected two integers")),
            };
            match graph.as_mut() {
                None => {
                    graph = Some(Graph::new(a));
                    declared_edges = b;
                }
                Some(g) => g
                    .add_edge(a, b)
                    .map_err(|e| Error::parse(lineno, e.to_string()))?,
            }
        }
        let g = graph.ok_or_else(|| Error::parse(0, "missing header"))?;
        if g.edge_count() != declared_edges {
            return Err(Error::parse(
                0,
                format!(
                    "header declares {declared_edges} edges, found {}",
                    g.edge_count()
                ),
            ));
        }
        Ok(g)
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        Graph::read_text(text.as_bytes())
    }
}

pub(crate) fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn parse_index(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("`{s}` is not a vertex index")))
}
