//! Simple undirected graphs with contiguous vertex ids.
//!
//! A [`Graph`] is immutable once built. Every constructor drops self-loops and
//! collapses repeated edges, so the result is always a simple graph whose
//! adjacency lists are sorted and symmetric.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::io::{BufRead, Write};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops are dropped and duplicate
    /// edges (in either orientation) collapse to one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut twice_m = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        Ok(Graph {
            adjacency,
            m: twice_m / 2,
        })
    }

    /// Parses a whitespace-delimited edge list.
    ///
    /// Lines starting with `%` or `#` are comments and blank lines are skipped.
    /// Each remaining line must start with two non-negative integer labels;
    /// trailing columns (weights, timestamps) are ignored. Labels are mapped to
    /// ids `0..N` in order of first appearance.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        Self::read_edge_list(text.as_bytes())
    }

    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
        let mut ids: HashMap<u64, usize> = HashMap::new();
        let mut edges = Vec::new();
        for (index, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = index + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let mut label = || -> Result<u64> {
                let token = tokens.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: "expected two vertex labels".into(),
                })?;
                token.parse::<u64>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("malformed vertex label {token:?}"),
                })
            };
            let (a, b) = (label()?, label()?);
            if a == b {
                continue;
            }
            let mut intern = |label: u64| {
                let next = ids.len();
                *ids.entry(label).or_insert(next)
            };
            let u = intern(a);
            let v = intern(b);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Graph::from_edges(ids.len(), edges)
    }

    /// Serializes as `u v` lines with `u < v`, 0-based, in sorted order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.m * 8);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Writes the edge list preceded by `# ` comment lines.
    pub fn write_edge_list<W: Write>(
        &self,
        mut writer: W,
        header: &[String],
    ) -> std::io::Result<()> {
        for line in header {
            writeln!(writer, "# {line}")?;
        }
        for (u, v) in self.edges() {
            writeln!(writer, "{u} {v}")?;
        }
        writer.flush()
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            let mut members = Vec::new();
            while let Some(u) = queue.pop_front() {
                members.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Fails with [`Error::Disconnected`] unless the graph has one component.
    pub fn require_connected(&self) -> Result<()> {
        let components = self.components().len();
        if components == 1 {
            Ok(())
        } else {
            Err(Error::Disconnected { components })
        }
    }

    /// Subgraph induced on `vertices`, relabeled in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.n()];
        for (new, &old) in vertices.iter().enumerate() {
            position[old] = new;
        }
        let edges = vertices.iter().enumerate().flat_map(|(new_u, &old_u)| {
            let position = &position;
            self.adjacency[old_u].iter().filter_map(move |&old_v| {
                let new_v = position[old_v];
                (new_v != usize::MAX && new_u < new_v).then_some((new_u, new_v))
            })
        });
        Graph::from_edges(vertices.len(), edges.collect::<Vec<_>>())
            .expect("induced subgraph ids are in range")
    }

    /// Largest component, relabeled preserving relative order. Ties go to the
    /// component holding the smallest vertex id.
    pub fn largest_connected_component(&self) -> Graph {
        let components = self.components();
        let mut best: Option<&Vec<usize>> = None;
        for c in &components {
            if best.is_none_or(|b| c.len() > b.len()) {
                best = Some(c);
            }
        }
        match best {
            Some(c) if c.len() == self.n() => self.clone(),
            Some(c) => self.induced_subgraph(c),
            None => self.clone(),
        }
    }

    /// Dense Laplacian `L = D - A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut l = DMatrix::zeros(n, n);
        for (u, list) in self.adjacency.iter().enumerate() {
            l[(u, u)] = list.len() as f64;
            for &v in list {
                l[(u, v)] = -1.0;
            }
        }
        l
    }

    /// `2M / N`.
    pub fn average_degree(&self) -> f64 {
        2.0 * self.m as f64 / self.n() as f64
    }

    /// Hop distances from `source`; unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::with_capacity(self.n());
        self.bfs_into(source, &mut dist, &mut queue);
        dist
    }

    fn bfs_into(&self, source: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) {
        dist.fill(usize::MAX);
        dist[source] = 0;
        queue.clear();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
    }

    /// Mean shortest-path length over unordered pairs, by BFS from every vertex.
    pub fn average_path_length(&self) -> Result<f64> {
        let n = self.n();
        if n < 2 {
            return Err(Error::Degenerate { n });
        }
        self.require_connected()?;
        let mut dist = vec![0; n];
        let mut queue = VecDeque::with_capacity(n);
        let mut total: u128 = 0;
        for source in 0..n {
            self.bfs_into(source, &mut dist, &mut queue);
            total += dist.iter().map(|&d| d as u128).sum::<u128>();
        }
        // every unordered pair was counted twice
        Ok(total as f64 / (n as f64 * (n - 1) as f64))
    }

    /// Degree histogram, `degree -> vertex count`.
    pub fn degree_distribution(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for list in &self.adjacency {
            *hist.entry(list.len()).or_insert(0) += 1;
        }
        hist
    }
}
