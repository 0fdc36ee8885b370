use itertools::Itertools;

use super::{degree_bits, pairs, Strategy};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::meq::{MeqQuery, Session};

/// Largest graph for which all vertex subsets are enumerated.
pub const MAX_CLIQUE_NODES: usize = 20;

fn binomial(n: usize, c: usize) -> usize {
    (0..c).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Query count of [`mham`]: `Σ_{c ≤ d} C(n, c)`, with `d` capped at `n`.
pub fn mham_depth(n: usize, d: usize) -> usize {
    (0..=d.min(n)).map(|c| binomial(n, c)).sum()
}

/// Bounded modified Hamming distance: `Δ(x_i ⊕ y, x_j ⊕ z)` if it is at most
/// `d`, `None` otherwise. Tries every error pattern `e` by increasing weight
/// (lexicographic in the positions within a weight) and asks
/// `x_i ⊕ y ⊕ e = x_j ⊕ z`.
pub fn mham(session: &mut Session<'_>, d: usize, i: usize, j: usize, y: BitString, z: BitString) -> Result<Option<usize>> {
    let n = y.len();
    for c in 0..=d.min(n) {
        for positions in (0..n).combinations(c) {
            let mut e = BitString::zeros(n);
            for p in positions {
                e.set(p, true);
            }
            if session.ask(MeqQuery::pair(i, j, y ^ e, z))? {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// A single [`mham`] query as a standalone strategy.
#[derive(Debug, Clone)]
pub struct Mham {
    pub d: usize,
    pub i: usize,
    pub j: usize,
    pub y: BitString,
    pub z: BitString,
}

impl Strategy for Mham {
    type Output = Option<usize>;

    fn name(&self) -> &'static str {
        "mham"
    }

    fn declared_depth(&self) -> usize {
        mham_depth(self.y.len(), self.d)
    }

    fn run(&self, session: &mut Session<'_>) -> Result<Option<usize>> {
        mham(session, self.d, self.i, self.j, self.y, self.z)
    }
}

/// Lists every max-`d`-isolated clique: vertex sets inducing a clique whose
/// members each have at most `d` neighbors outside the set.
///
/// For every pair the referee learns `Δ(ν_u ⊕ e_u, ν_v ⊕ e_v)` up to `2d`
/// and `Δ(ν_u, ν_v)` up to `2d + 2`; the pair is adjacent exactly when the
/// second equals the first plus two. Degrees are sent classically.
#[derive(Debug, Clone)]
pub struct IsolatedCliques {
    pub d: usize,
    pub degrees: Vec<usize>,
    pub include_singletons: bool,
}

impl IsolatedCliques {
    pub fn new(d: usize, degrees: Vec<usize>) -> Self {
        Self { d, degrees, include_singletons: true }
    }

    fn k(&self) -> usize {
        self.degrees.len()
    }
}

impl Strategy for IsolatedCliques {
    /// Cliques as ascending node lists, ordered by their bitmask.
    type Output = Vec<Vec<usize>>;

    fn name(&self) -> &'static str {
        "isolated_cliques"
    }

    fn declared_depth(&self) -> usize {
        let k = self.k();
        pairs(k) * (mham_depth(k, 2 * self.d) + mham_depth(k, 2 * self.d + 2))
    }

    fn classical_bits(&self) -> usize {
        self.k() * degree_bits(self.k())
    }

    fn run(&self, session: &mut Session<'_>) -> Result<Vec<Vec<usize>>> {
        let k = self.k();
        let d = self.d;
        if d == 0 {
            return Err(Error::InvalidParams("isolation bound d must be at least 1".into()));
        }
        if k > MAX_CLIQUE_NODES {
            return Err(Error::InvalidParams(format!("subset enumeration limited to {MAX_CLIQUE_NODES} nodes")));
        }
        if session.n() != k {
            return Err(Error::InvalidParams(format!("graph inputs need n = k = {k}, got n = {}", session.n())));
        }
        let zero = BitString::zeros(k);
        let mut closed = vec![vec![None; k]; k];
        let mut open = vec![vec![None; k]; k];
        for u in 0..k {
            for v in u + 1..k {
                open[u][v] = mham(session, 2 * d + 2, u, v, zero, zero)?;
                closed[u][v] = mham(session, 2 * d, u, v, BitString::unit(k, u), BitString::unit(k, v))?;
            }
        }

        let pair_ok = |u: usize, v: usize| match (closed[u][v], open[u][v]) {
            (Some(c), Some(o)) => o == c + 2,
            _ => false,
        };
        let mut out = Vec::new();
        for mask in 1u32..(1u32 << k) {
            let members: Vec<usize> = (0..k).filter(|&v| mask >> v & 1 == 1).collect();
            let size = members.len();
            if size == 1 && !self.include_singletons {
                continue;
            }
            let cliquish = members.iter().tuple_combinations().all(|(&u, &v)| pair_ok(u, v));
            if cliquish && members.iter().all(|&u| self.degrees[u] < size + d) {
                out.push(members);
            }
        }
        Ok(out)
    }
}
