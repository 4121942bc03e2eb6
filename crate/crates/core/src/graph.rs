//! Labeled multigraphs.
//!
//! Edge `i` of a [`Graph`] is element `i` of its cycle matroid, so the edge
//! order is part of the value and every operation documents what it does to it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorOp {
    Delete,
    Contract,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u >= vertex_count || v >= vertex_count)
        {
            return Err(Error::arg(format!(
                "edge ({u},{v}) leaves the {vertex_count} vertices"
            )));
        }
        Ok(Graph {
            vertex_count,
            edges,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.edges.len() {
            return Err(Error::arg(format!(
                "{} labels for {} edges",
                labels.len(),
                self.edges.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, e: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[e].as_str())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Index of some edge joining `u` and `v`.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loop() {
            return false;
        }
        let mut seen: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Adds an edge at the end of the edge order and returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize, label: Option<&str>) -> usize {
        assert!(u < self.vertex_count && v < self.vertex_count);
        self.edges.push((u, v));
        if let Some(l) = self.labels.as_mut() {
            l.push(label.unwrap_or("").to_string());
        }
        self.edges.len() - 1
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn set_label(&mut self, e: usize, label: &str) {
        let m = self.edges.len();
        let l = self.labels.get_or_insert_with(|| vec![String::new(); m]);
        l[e] = label.to_string();
    }

    /// Deletes or contracts edge `e`.
    ///
    /// Remaining edges keep their relative order. Deletion drops vertices it
    /// leaves isolated; contraction merges the endpoints into the smaller one
    /// and keeps any parallels and loops that result. Contracting a loop is
    /// the same as deleting it.
    pub fn minor(&self, op: MinorOp, e: usize) -> Result<Graph> {
        if e >= self.edges.len() {
            return Err(Error::arg(format!("edge {e} out of range")));
        }
        let (u, v) = self.edges[e];
        let op = if u == v { MinorOp::Delete } else { op };
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(self.edges.len() - 1);
        let mut labels = self
            .labels
            .as_ref()
            .map(|_| Vec::with_capacity(self.edges.len() - 1));
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i == e {
                continue;
            }
            let (a, b) = match op {
                MinorOp::Delete => (a, b),
                MinorOp::Contract => {
                    let (keep, gone) = (u.min(v), u.max(v));
                    let m = |x: usize| if x == gone { keep } else { x };
                    (m(a), m(b))
                }
            };
            edges.push((a, b));
            if let (Some(out), Some(src)) = (labels.as_mut(), self.labels.as_ref()) {
                out.push(src[i].clone());
            }
        }
        let mut g = Graph {
            vertex_count: self.vertex_count,
            edges,
            labels,
        };
        match op {
            MinorOp::Contract => g.remove_vertex(u.max(v)),
            MinorOp::Delete => {
                for w in [u.max(v), u.min(v)] {
                    if g.degree(w) == 0 {
                        g.remove_vertex(w);
                    }
                }
            }
        }
        Ok(g)
    }

    /// Drops a vertex with no incident edges, shifting higher indices down.
    fn remove_vertex(&mut self, w: usize) {
        debug_assert!(self.edges.iter().all(|&(a, b)| a != w && b != w));
        for (a, b) in self.edges.iter_mut() {
            if *a > w {
                *a -= 1;
            }
            if *b > w {
                *b -= 1;
            }
        }
        self.vertex_count -= 1;
    }

    /// Replaces edge `e` by a path through `k` new vertices.
    ///
    /// Edge `e` keeps its index and becomes the first edge of the path; the
    /// other `k` path edges are appended. `k = 0` returns the graph unchanged.
    pub fn subdivide(&self, e: usize, k: usize) -> Result<(Graph, Vec<usize>)> {
        if e >= self.edges.len() {
            return Err(Error::arg(format!("edge {e} out of range")));
        }
        let mut g = self.clone();
        let (u, v) = g.edges[e];
        let mut fresh = Vec::with_capacity(k);
        let mut prev = u;
        for i in 0..k {
            let w = g.add_vertex();
            fresh.push(w);
            if i == 0 {
                g.edges[e] = (u, w);
            } else {
                let lab = g.label(e).map(|s| s.to_string());
                g.add_edge(prev, w, lab.as_deref());
            }
            prev = w;
        }
        if k > 0 {
            let lab = g.label(e).map(|s| s.to_string());
            g.add_edge(prev, v, lab.as_deref());
        }
        Ok((g, fresh))
    }

    /// Whether the vertices other than `removed` that touch an edge form one component.
    fn connected_without(&self, removed: &[usize]) -> bool {
        let n = self.vertex_count;
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            if removed.contains(&a) || removed.contains(&b) {
                continue;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let alive: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
        let Some(&start) = alive.first() else {
            return true;
        };
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        alive.iter().all(|&v| seen[v])
    }

    /// Simple, at least four vertices, connected, and no vertex cut of size
    /// at most two.
    pub fn is_simple_3connected(&self) -> bool {
        let n = self.vertex_count;
        if n < 4 || !self.is_simple() || !self.connected_without(&[]) {
            return false;
        }
        for a in 0..n {
            if !self.connected_without(&[a]) {
                return false;
            }
            for b in a + 1..n {
                if !self.connected_without(&[a, b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Removes loops and every edge parallel to an earlier one.
    pub fn simplify(&self) -> Graph {
        let mut keep = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u != v && seen.insert((u.min(v), u.max(v))) {
                keep.push(i);
            }
        }
        self.restrict_edges(&keep)
    }

    /// The subgraph on the listed edges (in the listed order), same vertices.
    pub fn restrict_edges(&self, keep: &[usize]) -> Graph {
        Graph {
            vertex_count: self.vertex_count,
            edges: keep.iter().map(|&i| self.edges[i]).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| keep.iter().map(|&i| l[i].clone()).collect()),
        }
    }

    /// Adjacency matrix of the underlying simple graph.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count;
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
        adj
    }
}
