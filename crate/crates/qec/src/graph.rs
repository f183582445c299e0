//! Simple undirected graphs: named families, join and Cartesian product,
//! connectivity, and BFS shortest-path distance matrices.
//!
//! Vertex orderings of composite graphs are fixed so every derived matrix
//! is reproducible bit for bit: a join lists the first operand's vertices
//! and then the second's, and a Cartesian product orders vertex pairs in
//! blocks M_k = {(u_k, v_1), ..., (u_k, v_n)} for k = 1..m.

use crate::spectral::SymMatrix;
use crate::{Error, Result};
use std::collections::VecDeque;
use std::fmt;

/// Finite simple undirected graph on at least one vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    label: Option<String>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}", self.n, self.edge_count())?;
        if let Some(l) = &self.label {
            write!(f, ", {l}")?;
        }
        write!(f, ")")
    }
}

impl Graph {
    fn blank(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Graph {
            n,
            adj: vec![false; n * n],
            label: None,
        })
    }

    /// Edgeless graph on n vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        let mut g = Self::blank(n)?;
        g.label = Some(format!("E{n}"));
        Ok(g)
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Self::blank(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v);
            }
        }
        g.label = Some(format!("K{n}"));
        Ok(g)
    }

    /// Path P_n with edges i -- i+1.
    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Self::blank(n)?;
        for i in 1..n {
            g.set_edge(i - 1, i);
        }
        g.label = Some(format!("P{n}"));
        Ok(g)
    }

    /// Cycle C_n, n >= 3.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::CycleTooSmall(n));
        }
        let mut g = Self::blank(n)?;
        for i in 0..n {
            g.set_edge(i, (i + 1) % n);
        }
        g.label = Some(format!("C{n}"));
        Ok(g)
    }

    /// Complete bipartite graph K_{m,n}; the first part comes first.
    pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyPart);
        }
        let mut g = Self::blank(m + n)?;
        for u in 0..m {
            for v in 0..n {
                g.set_edge(u, m + v);
            }
        }
        g.label = Some(format!("Kb({m},{n})"));
        Ok(g)
    }

    /// Complete multipartite graph: vertices in consecutive blocks per
    /// part, adjacent exactly when they lie in different parts.
    pub fn complete_multipartite(spec: &MultipartiteSpec) -> Graph {
        let n = spec.total();
        let mut g = Self::blank(n).expect("spec parts are positive");
        let mut offsets = Vec::with_capacity(spec.k());
        let mut acc = 0;
        for &p in spec.parts() {
            offsets.push(acc);
            acc += p;
        }
        for (a, &oa) in offsets.iter().enumerate() {
            for (b, &ob) in offsets.iter().enumerate().skip(a + 1) {
                for u in oa..oa + spec.parts()[a] {
                    for v in ob..ob + spec.parts()[b] {
                        g.set_edge(u, v);
                    }
                }
            }
        }
        let parts: Vec<String> = spec.parts().iter().map(|p| p.to_string()).collect();
        g.label = Some(format!("Km({})", parts.join(",")));
        g
    }

    /// Builds a graph from an explicit edge list. Edges are symmetrized;
    /// self-loops, out-of-range endpoints, and duplicates (in either
    /// orientation) are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Self::blank(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u,
                    order: n,
                });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: n,
                });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Parses the edge-list file format: first non-comment line `n m`,
    /// then m lines `u v` with 0-based indices; `#` starts a comment.
    pub fn from_edge_list_text(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(|l| {
            match l.find('#') {
                Some(pos) => &l[..pos],
                None => l,
            }
            .trim()
        });
        let header = lines
            .by_ref()
            .find(|l| !l.is_empty())
            .ok_or_else(|| Error::BadEdgeList("missing header line".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::BadEdgeList(format!("bad header `{header}`")))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::BadEdgeList(format!("bad header `{header}`")))?;
        if it.next().is_some() {
            return Err(Error::BadEdgeList(format!("trailing tokens in `{header}`")));
        }
        let mut edges = Vec::with_capacity(m);
        for line in lines.filter(|l| !l.is_empty()) {
            let mut it = line.split_whitespace();
            let parse = |t: Option<&str>| {
                t.and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::BadEdgeList(format!("bad edge line `{line}`")))
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::BadEdgeList(format!("trailing tokens in `{line}`")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::BadEdgeList(format!(
                "header announced {m} edges, found {}",
                edges.len()
            )));
        }
        Self::from_edge_list(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(v, u)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Graph {
        self.label = Some(label.into());
        self
    }

    /// Display name: the label when set, otherwise a generic `G{n}`.
    pub fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("G{}", self.n))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    /// The common degree when the graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_from(0).iter().all(|d| d.is_some())
    }

    fn bfs_from(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in 0..self.n {
                if self.has_edge(u, v) && dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Join: both vertex sets, both edge sets, and every cross pair.
    pub fn join(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Self::blank(n).expect("operands are nonempty");
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        for u in 0..other.n {
            for v in (u + 1)..other.n {
                if other.has_edge(u, v) {
                    g.set_edge(self.n + u, self.n + v);
                }
            }
        }
        for u in 0..self.n {
            for v in 0..other.n {
                g.set_edge(u, self.n + v);
            }
        }
        g.label = Some(format!("join({},{})", self.name(), other.name()));
        g
    }

    /// Cartesian product: (u,v) ~ (u',v') iff u ~ u' and v = v', or
    /// u = u' and v ~ v'. Vertex (u_k, v_j) gets index k * n2 + j.
    pub fn cartesian(&self, other: &Graph) -> Graph {
        let (m, n) = (self.n, other.n);
        let mut g = Self::blank(m * n).expect("operands are nonempty");
        for k in 0..m {
            for l in 0..m {
                for i in 0..n {
                    for j in 0..n {
                        let adjacent =
                            (self.has_edge(k, l) && i == j) || (k == l && other.has_edge(i, j));
                        if adjacent && (k, i) < (l, j) {
                            g.set_edge(k * n + i, l * n + j);
                        }
                    }
                }
            }
        }
        g.label = Some(format!("cart({},{})", self.name(), other.name()));
        g
    }

    /// BFS shortest-path distances; fails on disconnected input.
    pub fn distance_matrix(&self) -> Result<DistanceMatrix> {
        let mut d = vec![0u32; self.n * self.n];
        for s in 0..self.n {
            for (v, dist) in self.bfs_from(s).into_iter().enumerate() {
                d[s * self.n + v] = dist.ok_or(Error::Disconnected)?;
            }
        }
        Ok(DistanceMatrix { n: self.n, d })
    }

    /// 0/1 adjacency matrix as dense symmetric storage.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    /// Part sizes when the graph is complete multipartite with at least
    /// two parts: the complement's connected components must all be
    /// independent sets of the graph. Sizes come back in discovery order.
    pub fn multipartite_parts(&self) -> Option<Vec<usize>> {
        let mut part_of = vec![usize::MAX; self.n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.n {
            if part_of[s] != usize::MAX {
                continue;
            }
            let mut members = vec![s];
            part_of[s] = parts.len();
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in 0..self.n {
                    if u != v && !self.has_edge(u, v) && part_of[v] == usize::MAX {
                        part_of[v] = parts.len();
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            parts.push(members);
        }
        if parts.len() < 2 {
            return None;
        }
        for members in &parts {
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if self.has_edge(u, v) {
                        return None;
                    }
                }
            }
        }
        Some(parts.into_iter().map(|p| p.len()).collect())
    }
}

/// Integer shortest-path distance matrix of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn max(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    pub fn to_sym_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| self.get(i, j) as f64)
    }
}

/// Part sizes of a complete multipartite graph, together with the distinct
/// sizes and their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteSpec {
    parts: Vec<usize>,
    /// Distinct sizes strictly decreasing, with multiplicities summing to k.
    distinct: Vec<(usize, usize)>,
}

impl MultipartiteSpec {
    pub fn new(parts: Vec<usize>) -> Result<MultipartiteSpec> {
        if parts.len() < 2 {
            return Err(Error::TooFewParts);
        }
        if parts.contains(&0) {
            return Err(Error::EmptyPart);
        }
        let mut sorted = parts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut distinct: Vec<(usize, usize)> = Vec::new();
        for p in sorted {
            match distinct.last_mut() {
                Some((size, mult)) if *size == p => *mult += 1,
                _ => distinct.push((p, 1)),
            }
        }
        Ok(MultipartiteSpec { parts, distinct })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts k.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Total vertex count.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Distinct sizes strictly decreasing with multiplicities.
    pub fn distinct_sizes(&self) -> &[(usize, usize)] {
        &self.distinct
    }

    /// Number of distinct sizes q.
    pub fn q(&self) -> usize {
        self.distinct.len()
    }

    pub fn all_singletons(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    pub fn to_graph(&self) -> Graph {
        Graph::complete_multipartite(self)
    }
}
