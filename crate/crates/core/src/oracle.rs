//! Brute-force reference implementations.
//!
//! Everything here works from the raw inputs or the adjacency structure and
//! shares no logic with [`crate::strategies`], so the two can be compared.

use std::collections::HashMap;

use rand::Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::meq::{Answerer, MeqQuery};
use crate::strategies::{DecompStep, StepKind};

/// Answers every query exactly from the player inputs.
#[derive(Debug, Clone)]
pub struct ClassicalAnswerer {
    inputs: Vec<BitString>,
}

impl ClassicalAnswerer {
    pub fn new(inputs: Vec<BitString>) -> Self {
        Self { inputs }
    }

    pub fn inputs(&self) -> &[BitString] {
        &self.inputs
    }

    fn input(&self, i: usize) -> Result<BitString> {
        self.inputs.get(i).copied().ok_or_else(|| Error::InvalidQuery(format!("player {i} does not exist")))
    }

    pub fn truth(&self, query: &MeqQuery) -> Result<bool> {
        match *query {
            MeqQuery::Pair { i, j, y, z } => Ok(self.input(i)?.try_xor(&y)? == self.input(j)?.try_xor(&z)?),
            MeqQuery::Single { i, y, z } => Ok(self.input(i)?.try_xor(&y)? == z),
        }
    }
}

impl Answerer for ClassicalAnswerer {
    fn answer(&mut self, query: &MeqQuery) -> Result<(bool, f64)> {
        Ok((self.truth(query)?, 1.0))
    }
}

pub fn hamming(x: &BitString, y: &BitString) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), found: y.len() });
    }
    Ok((0..x.len()).filter(|&i| x.get(i) != y.get(i)).count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwinKind {
    FalseTwin,
    TrueTwin,
    None,
}

fn open_row(g: &Graph, v: usize) -> Vec<bool> {
    (0..g.k()).map(|u| g.has_edge(v, u)).collect()
}

fn closed_row(g: &Graph, v: usize) -> Vec<bool> {
    (0..g.k()).map(|u| u == v || g.has_edge(v, u)).collect()
}

pub fn twins_test(g: &Graph, u: usize, v: usize) -> TwinKind {
    if open_row(g, u) == open_row(g, v) {
        TwinKind::FalseTwin
    } else if closed_row(g, u) == closed_row(g, v) {
        TwinKind::TrueTwin
    } else {
        TwinKind::None
    }
}

/// Rank of a set of vectors over F2.
pub fn f2_rank(vectors: &[BitString]) -> usize {
    let mut rows: Vec<u128> = vectors.iter().map(BitString::as_u128).collect();
    let mut rank = 0;
    for bit in 0..128 {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row >> bit & 1 == 1 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Checks that `(a_v, b_v)` for `v ∈ nodes` is a valid representation of the
/// subgraph of `g` induced by `nodes`: the `a_v` are independent and each
/// `b_v` is the XOR of `a_u` over neighbors `u` inside `nodes`. `a` and `b`
/// are indexed by node id.
pub fn check_valid_representation(g: &Graph, nodes: &[usize], a: &[BitString], b: &[BitString]) -> bool {
    let chosen: Vec<BitString> = nodes.iter().map(|&v| a[v]).collect();
    if f2_rank(&chosen) != chosen.len() {
        return false;
    }
    nodes.iter().all(|&v| {
        let mut acc = BitString::zeros(b[v].len());
        for &u in nodes {
            if g.has_edge(v, u) {
                acc ^= a[u];
            }
        }
        acc == b[v]
    })
}

/// Greedy twin-pendant elimination on the adjacency structure, always taking
/// the lowest-index removable node. `None` if the graph is not
/// distance-hereditary; otherwise the steps and the last node.
pub fn dh_test_and_decompose(g: &Graph) -> Option<(Vec<DecompStep>, usize)> {
    let k = g.k();
    if k == 0 {
        return Some((Vec::new(), 0));
    }
    let mut alive = vec![true; k];
    let mut steps = Vec::new();
    for _ in 1..k {
        let live: Vec<usize> = (0..k).filter(|&v| alive[v]).collect();
        let nbrs = |v: usize| -> Vec<usize> { live.iter().copied().filter(|&u| g.has_edge(v, u)).collect() };
        let mut found = None;
        'search: for &w in &live {
            let nw = nbrs(w);
            if nw.len() == 1 {
                found = Some(DecompStep { kind: StepKind::Pendant, w, u: nw[0] });
                break;
            }
            for &u in &live {
                if u == w {
                    continue;
                }
                let nu = nbrs(u);
                let strip = |list: &[usize], x: usize| -> Vec<usize> { list.iter().copied().filter(|&y| y != x).collect() };
                if !g.has_edge(w, u) && nw == nu {
                    found = Some(DecompStep { kind: StepKind::FalseTwin, w, u });
                    break 'search;
                }
                if g.has_edge(w, u) && strip(&nw, u) == strip(&nu, w) {
                    found = Some(DecompStep { kind: StepKind::TrueTwin, w, u });
                    break 'search;
                }
            }
        }
        let step = found?;
        alive[step.w] = false;
        steps.push(step);
    }
    let last = (0..k).find(|&v| alive[v]).expect("one node survives");
    Some((steps, last))
}

/// `Δ(ν_u, ν_v) = Δ(ν_u ⊕ e_u, ν_v ⊕ e_v) + 2` if `u, v` are adjacent and
/// `− 2` otherwise.
pub fn edge_test_check(g: &Graph, u: usize, v: usize) -> bool {
    let count = |a: Vec<bool>, b: Vec<bool>| a.iter().zip(&b).filter(|(x, y)| x != y).count() as i64;
    let open = count(open_row(g, u), open_row(g, v));
    let closed = count(closed_row(g, u), closed_row(g, v));
    let shift = if g.has_edge(u, v) { 2 } else { -2 };
    open == closed + shift
}

/// Random distance-hereditary graph: each new node is attached to a
/// uniformly chosen existing node as a pendant, false twin or true twin.
pub fn gen_dh_graph<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Graph {
    let mut adj = vec![vec![false; k]; k];
    for w in 1..k {
        let u = rng.random_range(0..w);
        match rng.random_range(0..3) {
            0 => adj[w][u] = true,
            kind => {
                for v in 0..w {
                    if adj[u][v] {
                        adj[w][v] = true;
                    }
                }
                if kind == 2 {
                    adj[w][u] = true;
                }
            }
        }
        for v in 0..w {
            adj[v][w] = adj[w][v];
        }
    }
    let mut edges = Vec::new();
    for (u, row) in adj.iter().enumerate() {
        for v in u + 1..k {
            if row[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(k, &edges).expect("edges are in range and loop-free")
}

/// Groups of player indices with equal inputs, ordered by first occurrence.
pub fn partition(inputs: &[BitString]) -> Vec<Vec<usize>> {
    let mut slot: HashMap<BitString, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (p, x) in inputs.iter().enumerate() {
        let g = *slot.entry(*x).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(p);
    }
    groups
}

pub fn all_eq(inputs: &[BitString]) -> bool {
    inputs.windows(2).all(|w| w[0] == w[1])
}

pub fn exists_eq(inputs: &[BitString]) -> bool {
    (0..inputs.len()).any(|i| (i + 1..inputs.len()).any(|j| inputs[i] == inputs[j]))
}

pub fn frequency_moment(inputs: &[BitString], p: u32) -> u128 {
    let mut freq: HashMap<BitString, u128> = HashMap::new();
    for x in inputs {
        *freq.entry(*x).or_default() += 1;
    }
    freq.values().map(|f| f.pow(p)).sum()
}

/// No induced path on three nodes.
pub fn p3_free(g: &Graph) -> bool {
    let k = g.k();
    for v in 0..k {
        for u in 0..k {
            for w in u + 1..k {
                if u != v && w != v && g.has_edge(u, v) && g.has_edge(v, w) && !g.has_edge(u, w) {
                    return false;
                }
            }
        }
    }
    true
}

/// Number of classes of the twin relation.
pub fn neighborhood_diversity(g: &Graph) -> usize {
    let k = g.k();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for u in 0..k {
        for v in u + 1..k {
            if twins_test(g, u, v) != TwinKind::None {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
    }
    (0..k).filter(|&v| find(&mut parent, v) == v).count()
}

/// Every vertex set that induces a clique and whose members each have at most
/// `d` neighbors outside it, as ascending lists ordered by bitmask.
pub fn isolated_cliques(g: &Graph, d: usize, include_singletons: bool) -> Vec<Vec<usize>> {
    let k = g.k();
    assert!(k <= 20, "subset scan limited to 20 nodes");
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << k) {
        let inside = |v: usize| mask >> v & 1 == 1;
        let set: Vec<usize> = (0..k).filter(|&v| inside(v)).collect();
        if set.len() == 1 && !include_singletons {
            continue;
        }
        let clique = set.iter().all(|&u| set.iter().all(|&v| u == v || g.has_edge(u, v)));
        let isolated = set.iter().all(|&u| (0..k).filter(|&v| !inside(v) && g.has_edge(u, v)).count() <= d);
        if clique && isolated {
            out.push(set);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(&bs("0011"), &bs("0000")).unwrap(), 2);
        assert_eq!(hamming(&bs("0110"), &bs("0110")).unwrap(), 0);
        assert_eq!(hamming(&bs("0000"), &bs("1111")).unwrap(), 4);
        assert!(hamming(&bs("00"), &bs("000")).is_err());
    }

    #[test]
    fn answerer_forms() {
        let mut a = ClassicalAnswerer::new(vec![bs("01"), bs("10")]);
        assert_eq!(a.answer(&MeqQuery::pair(0, 1, bs("11"), bs("00"))).unwrap(), (true, 1.0));
        assert!(!a.answer(&MeqQuery::pair(0, 1, bs("00"), bs("00"))).unwrap().0);
        assert!(a.answer(&MeqQuery::single(0, bs("01"), bs("00"))).unwrap().0);
    }

    #[test]
    fn twins_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(twins_test(&k3, 0, 2), TwinKind::TrueTwin);
        assert_eq!(twins_test(&Graph::star(3), 1, 3), TwinKind::FalseTwin);
        assert_eq!(twins_test(&Graph::path(4), 1, 2), TwinKind::None);
    }

    #[test]
    fn representation_examples() {
        let g = Graph::path(3);
        let nodes = [0, 1, 2];
        let a: Vec<BitString> = (0..3).map(|v| BitString::unit(3, v)).collect();
        let b = g.nih_inputs();
        assert!(check_valid_representation(&g, &nodes, &a, &b));
        let dup = vec![a[0], a[0], a[2]];
        assert!(!check_valid_representation(&g, &nodes, &dup, &b));
        let mut off = b.clone();
        off[1].flip(0);
        assert!(!check_valid_representation(&g, &nodes, &a, &off));
    }

    #[test]
    fn dh_examples() {
        assert!(dh_test_and_decompose(&Graph::cycle(5)).is_none());
        let (steps, last) = dh_test_and_decompose(&Graph::complete(2)).unwrap();
        assert_eq!(steps, vec![DecompStep { kind: StepKind::Pendant, w: 0, u: 1 }]);
        assert_eq!(last, 1);
        assert!(dh_test_and_decompose(&Graph::empty(1)).is_some());
    }

    #[test]
    fn edge_test_examples() {
        assert!(edge_test_check(&Graph::complete(3), 0, 1));
        assert!(edge_test_check(&Graph::path(3), 0, 2));
    }

    #[test]
    fn generated_graphs_are_dh() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(gen_dh_graph(1, &mut rng).k(), 1);
        for k in 2..9 {
            for _ in 0..20 {
                assert!(dh_test_and_decompose(&gen_dh_graph(k, &mut rng)).is_some());
            }
        }
    }

    #[test]
    fn solve_examples() {
        let (a, b) = (bs("01"), bs("10"));
        assert_eq!(frequency_moment(&[a, a, b], 2), 5);
        assert_eq!(partition(&[a, a, b]), vec![vec![0, 1], vec![2]]);
        assert_eq!(neighborhood_diversity(&Graph::complete(4)), 1);
        assert!(!p3_free(&Graph::path(3)));
        let paw = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let c = isolated_cliques(&paw, 1, true);
        assert!(c.contains(&vec![0, 1, 2]));
        assert!(!c.contains(&vec![2, 3]));
        assert!(isolated_cliques(&paw, 2, true).contains(&vec![2, 3]));
    }
}
