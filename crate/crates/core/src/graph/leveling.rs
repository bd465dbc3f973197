use std::fmt::Write as _;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::geom::{validate_drawing2, Drawing2, Point2};

/// Largest graph [`leveled_planar_search`] accepts.
pub const MAX_LEVELED_SEARCH_VERTICES: usize = 12;

/// Partition into levels `1..=m` with a bottom-to-top order per level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAssignment {
    /// `level_of[v]` is in `1..=m`.
    pub level_of: Vec<usize>,
    /// `order[i]` lists the vertices of level `i + 1`.
    pub order: Vec<Vec<usize>>,
}

impl LevelAssignment {
    /// Builds an assignment from per-level orders; `level_of` is derived.
    pub fn from_orders(n: usize, order: Vec<Vec<usize>>) -> Result<Self> {
        let mut level_of = vec![0; n];
        for (i, vs) in order.iter().enumerate() {
            for &v in vs {
                if v >= n {
                    return Err(Error::InvalidLeveling(format!("vertex {v} out of range")));
                }
                if level_of[v] != 0 {
                    return Err(Error::InvalidLeveling(format!("vertex {v} listed twice")));
                }
                level_of[v] = i + 1;
            }
        }
        if let Some(v) = level_of.iter().position(|&l| l == 0) {
            return Err(Error::InvalidLeveling(format!("vertex {v} has no level")));
        }
        Ok(LevelAssignment { level_of, order })
    }

    /// Levels given per vertex, each level ordered by vertex index.
    pub fn from_levels(level_of: Vec<usize>) -> Result<Self> {
        let m = level_of.iter().copied().max().unwrap_or(0);
        if level_of.contains(&0) {
            return Err(Error::InvalidLeveling("levels start at 1".into()));
        }
        let mut order = vec![Vec::new(); m];
        for (v, &l) in level_of.iter().enumerate() {
            order[l - 1].push(v);
        }
        Ok(LevelAssignment { level_of, order })
    }

    pub fn level_count(&self) -> usize {
        self.order.len()
    }

    pub fn level(&self, v: usize) -> usize {
        self.level_of[v]
    }

    /// Position of every vertex within its level.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.level_of.len()];
        for vs in &self.order {
            for (r, &v) in vs.iter().enumerate() {
                rank[v] = r;
            }
        }
        rank
    }

    /// Drawing on the vertical lines `x = level`, with `y` the rank.
    pub fn drawing(&self) -> Drawing2 {
        let rank = self.ranks();
        Drawing2::new(
            (0..self.level_of.len())
                .map(|v| Point2::int(self.level_of[v] as i64, rank[v] as i64))
                .collect(),
        )
    }

    /// One `level: v v v` line per level.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, vs) in self.order.iter().enumerate() {
            let _ = write!(out, "{}:", i + 1);
            for v in vs {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn read_text<R: BufRead>(input: R) -> Result<Self> {
        let mut levels: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (head, rest) = t
                .split_once(':')
                .ok_or_else(|| Error::parse(i + 1, "expected `level: v v ...`"))?;
            let level: usize = head
                .trim()
                .parse()
                .map_err(|_| Error::parse(i + 1, "bad level number"))?;
            let vs = rest
                .split_whitespace()
                .map(|w| w.parse().map_err(|_| Error::parse(i + 1, "bad vertex")))
                .collect::<Result<Vec<usize>>>()?;
            levels.push((level, vs));
        }
        levels.sort_by_key(|(l, _)| *l);
        for (expected, (l, _)) in levels.iter().enumerate() {
            if *l != expected + 1 {
                return Err(Error::InvalidLeveling(format!(
                    "levels must be numbered 1..m, level {} is missing",
                    expected + 1
                )));
            }
        }
        let n = levels.iter().map(|(_, vs)| vs.len()).sum();
        LevelAssignment::from_orders(n, levels.into_iter().map(|(_, vs)| vs).collect())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::read_text(text.as_bytes())
    }
}

/// Checks the leveling invariants and that the vertical-line drawing is
/// crossing-free.
pub fn validate_leveling(g: &Graph, lev: &LevelAssignment) -> Result<()> {
    let n = g.vertex_count();
    if lev.level_of.len() != n {
        return Err(Error::InvalidLeveling(format!(
            "leveling covers {} vertices, graph has {n}",
            lev.level_of.len()
        )));
    }
    let mut seen = vec![false; n];
    for (i, vs) in lev.order.iter().enumerate() {
        for &v in vs {
            if v >= n || seen[v] || lev.level_of[v] != i + 1 {
                return Err(Error::InvalidLeveling(format!(
                    "order of level {} is inconsistent at vertex {v}",
                    i + 1
                )));
            }
            seen[v] = true;
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidLeveling(format!("vertex {v} is in no order")));
    }
    for (u, v) in g.edges() {
        if lev.level_of[u].abs_diff(lev.level_of[v]) != 1 {
            return Err(Error::InvalidLeveling(format!(
                "edge {u}-{v} joins levels {} and {}",
                lev.level_of[u], lev.level_of[v]
            )));
        }
    }
    let report = validate_drawing2(g, &lev.drawing())?;
    if !report.passed() {
        return Err(Error::InvalidLeveling(format!(
            "vertical-line drawing has crossings: {}",
            report.violations[0]
        )));
    }
    Ok(())
}

/// Exhaustive search for a leveled-planar drawing with at most `max_levels`
/// levels.
///
/// Level assignments are enumerated component by component along a BFS
/// order (each vertex sits one level above or below its BFS parent), with the
/// lowest used level normalized to 1. For each assignment the per-level
/// orders are searched with crossing pruning against the previous level.
pub fn leveled_planar_search(g: &Graph, max_levels: usize) -> Result<Option<LevelAssignment>> {
    let n = g.vertex_count();
    if n > MAX_LEVELED_SEARCH_VERTICES {
        return Err(Error::Capacity {
            what: "vertices for leveled-planar search",
            limit: MAX_LEVELED_SEARCH_VERTICES,
            got: n,
        });
    }
    if n == 0 {
        return Ok(Some(LevelAssignment {
            level_of: Vec::new(),
            order: vec![Vec::new()],
        }));
    }
    if max_levels == 0 || !g.is_bipartite() {
        return Ok(None);
    }
    let adj = g.adjacency();
    let (order, parent) = bfs_forest(&adj);
    let mut search = LevelSearch {
        adj: &adj,
        order: &order,
        parent: &parent,
        max_levels,
        level_of: vec![0; n],
    };
    Ok(search.assign(0))
}

fn bfs_forest(adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    order.push(w);
                }
            }
        }
    }
    (order, parent)
}

struct LevelSearch<'a> {
    adj: &'a [Vec<usize>],
    order: &'a [usize],
    parent: &'a [Option<usize>],
    max_levels: usize,
    level_of: Vec<usize>,
}

impl LevelSearch<'_> {
    fn assign(&mut self, i: usize) -> Option<LevelAssignment> {
        if i == self.order.len() {
            if self.level_of.iter().min() != Some(&1) {
                return None;
            }
            return order_levels(self.adj, &self.level_of);
        }
        let v = self.order[i];
        let candidates: Vec<usize> = match self.parent[v] {
            None => (1..=self.max_levels).collect(),
            Some(p) => {
                let l = self.level_of[p];
                [l.wrapping_sub(1), l + 1]
                    .into_iter()
                    .filter(|&c| (1..=self.max_levels).contains(&c))
                    .collect()
            }
        };
        for c in candidates {
            let fits = self.adj[v]
                .iter()
                .all(|&w| self.level_of[w] == 0 || self.level_of[w].abs_diff(c) == 1);
            if !fits {
                continue;
            }
            self.level_of[v] = c;
            if let Some(found) = self.assign(i + 1) {
                return Some(found);
            }
            self.level_of[v] = 0;
        }
        None
    }
}

/// Finds per-level orders with no crossing between consecutive levels.
fn order_levels(adj: &[Vec<usize>], level_of: &[usize]) -> Option<LevelAssignment> {
    let m = *level_of.iter().max()?;
    let mut members = vec![Vec::new(); m];
    for (v, &l) in level_of.iter().enumerate() {
        members[l - 1].push(v);
    }
    let mut state = OrderSearch {
        adj,
        level_of,
        members: &members,
        rank: vec![usize::MAX; level_of.len()],
        placed: vec![Vec::new(); m],
    };
    if state.place(0) {
        LevelAssignment::from_orders(level_of.len(), state.placed).ok()
    } else {
        None
    }
}

struct OrderSearch<'a> {
    adj: &'a [Vec<usize>],
    level_of: &'a [usize],
    members: &'a [Vec<usize>],
    rank: Vec<usize>,
    placed: Vec<Vec<usize>>,
}

impl OrderSearch<'_> {
    fn place(&mut self, level: usize) -> bool {
        if level == self.members.len() {
            return true;
        }
        if self.placed[level].len() == self.members[level].len() {
            return self.place(level + 1);
        }
        for idx in 0..self.members[level].len() {
            let w = self.members[level][idx];
            if self.rank[w] != usize::MAX || !self.compatible(w, level) {
                continue;
            }
            self.rank[w] = self.placed[level].len();
            self.placed[level].push(w);
            if self.place(level) {
                return true;
            }
            self.placed[level].pop();
            self.rank[w] = usize::MAX;
        }
        false
    }

    /// Appending `w` on top of `level` creates no crossing with edges to the
    /// level below.
    fn compatible(&self, w: usize, level: usize) -> bool {
        let below = |v: usize| {
            self.adj[v]
                .iter()
                .copied()
                .filter(move |&x| self.level_of[x] == level)
        };
        below(w).all(|x| {
            self.placed[level]
                .iter()
                .all(|&w2| below(w2).all(|x2| self.rank[x2] <= self.rank[x]))
        })
    }
}
