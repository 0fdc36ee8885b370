//! Simple undirected graphs on nodes `0..k`.
//!
//! In the number-in-hand model player `v` holds the neighborhood vector
//! `ν_v`, the row of the adjacency matrix, so every graph doubles as a
//! protocol input with `n = k`.
//!
//! Two text formats are accepted:
//!
//! * edge list: `k` on the first line, then one `u v` pair (0-based) per line;
//! * adjacency rows: `k` lines of `k` characters in `{0,1}`.

use std::fmt::Write as _;

use crate::bits::BitString;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<BitString>,
}

impl Graph {
    pub fn empty(k: usize) -> Self {
        Self { rows: vec![BitString::zeros(k); k] }
    }

    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(k);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry and the diagonal.
    pub fn from_rows(rows: Vec<BitString>) -> Result<Self> {
        let k = rows.len();
        for (u, r) in rows.iter().enumerate() {
            if r.len() != k {
                return Err(Error::InvalidGraph(format!("row {u} has {} entries, expected {k}", r.len())));
            }
            if r.get(u) {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            for v in r.ones() {
                if !rows[v].get(u) {
                    return Err(Error::InvalidGraph(format!("asymmetric entry ({u}, {v})")));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn complete(k: usize) -> Self {
        let mut g = Self::empty(k);
        for u in 0..k {
            for v in u + 1..k {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    pub fn path(k: usize) -> Self {
        let mut g = Self::empty(k);
        for u in 1..k {
            g.set_edge(u - 1, u, true);
        }
        g
    }

    pub fn cycle(k: usize) -> Self {
        let mut g = Self::path(k);
        if k >= 3 {
            g.set_edge(k - 1, 0, true);
        }
        g
    }

    /// Star with center `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::empty(leaves + 1);
        for v in 1..=leaves {
            g.set_edge(0, v, true);
        }
        g
    }

    /// Index of the pair `(u, v)`, `u < v`, in the enumeration used by
    /// [`Graph::from_pair_mask`].
    fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..k).flat_map(move |u| (u + 1..k).map(move |v| (u, v)))
    }

    /// The graph whose edges are the pairs `(u, v)`, `u < v` in lexicographic
    /// order, selected by the bits of `mask`.
    pub fn from_pair_mask(k: usize, mask: u64) -> Self {
        let mut g = Self::empty(k);
        for (i, (u, v)) in Self::pairs(k).enumerate() {
            if mask >> i & 1 == 1 {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    /// Every labeled graph on `k` nodes.
    pub fn all(k: usize) -> impl Iterator<Item = Graph> {
        let pairs = k * k.saturating_sub(1) / 2;
        assert!(pairs < 64);
        (0..1u64 << pairs).map(move |mask| Graph::from_pair_mask(k, mask))
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].get(v)
    }

    fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        self.rows[u].set(v, on);
        self.rows[v].set(u, on);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let k = self.k();
        if u >= k || v >= k {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for {k} nodes")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
        }
        self.set_edge(u, v, true);
        Ok(())
    }

    /// `ν_v`.
    pub fn neighborhood(&self, v: usize) -> BitString {
        self.rows[v]
    }

    /// `ν_v ⊕ e_v`, the closed neighborhood.
    pub fn closed_neighborhood(&self, v: usize) -> BitString {
        self.rows[v] ^ BitString::unit(self.k(), v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].weight()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.k()).map(|v| self.degree(v)).collect()
    }

    /// Player inputs of the number-in-hand model.
    pub fn nih_inputs(&self) -> Vec<BitString> {
        self.rows.clone()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        Self::pairs(self.k()).filter(|&(u, v)| self.has_edge(u, v)).collect()
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.k());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_adjacency(&self) -> String {
        self.rows.iter().map(|r| format!("{r}\n")).collect()
    }

    /// Parses either text format. A first line holding a single integer
    /// selects the edge-list format.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        let first = lines.first().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let edge_list = first.parse::<usize>().is_ok()
            && match lines.get(1) {
                None => *first != "0",
                Some(second) => second.split_whitespace().count() == 2,
            };
        if edge_list {
            Self::parse_edge_list(&lines)
        } else {
            Self::parse_adjacency(&lines)
        }
    }

    fn parse_edge_list(lines: &[&str]) -> Result<Self> {
        let k: usize = lines[0].parse().map_err(|_| Error::Parse(format!("bad node count {:?}", lines[0])))?;
        let mut g = Self::empty(k);
        for l in &lines[1..] {
            let mut it = l.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => g.add_edge(u, v)?,
                _ => return Err(Error::Parse(format!("bad edge line {l:?}"))),
            }
        }
        Ok(g)
    }

    fn parse_adjacency(lines: &[&str]) -> Result<Self> {
        let rows = lines.iter().map(|l| l.parse()).collect::<Result<Vec<BitString>>>()?;
        Self::from_rows(rows)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(k={}, edges={:?})", self.k(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::complete(4).edges().len(), 6);
        assert_eq!(Graph::path(4).edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(Graph::cycle(5).edges().len(), 5);
        assert_eq!(Graph::star(3).degrees(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn enumerates_all_graphs() {
        assert_eq!(Graph::all(5).count(), 1024);
        assert_eq!(Graph::all(1).count(), 1);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(5);
        let text = g.to_edge_list();
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }

    #[test]
    fn adjacency_round_trip() {
        let g = Graph::path(3);
        let text = g.to_adjacency();
        assert_eq!(text, "010\n101\n010\n");
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_without_edges() {
        assert_eq!(Graph::parse("4\n").unwrap(), Graph::empty(4));
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Graph::parse("3\n0 0\n").is_err());
        assert!(Graph::parse("3\n0 5\n").is_err());
        assert!(Graph::parse("01\n00\n").is_err());
        assert!(Graph::parse("10\n00\n").is_err());
    }
}
