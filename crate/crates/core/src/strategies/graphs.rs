use super::{degree_bits, pairs, Strategy};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::meq::{MeqQuery, Session};

/// Is the graph a disjoint union of cliques? Nodes are grouped by closed
/// neighborhood `ν_v ⊕ e_v`; the graph passes iff every node's group has
/// exactly `deg(v) + 1` members. Degrees are sent classically.
#[derive(Debug, Clone)]
pub struct P3Freeness {
    degrees: Vec<usize>,
}

impl P3Freeness {
    pub fn new(degrees: Vec<usize>) -> Self {
        Self { degrees }
    }

    fn k(&self) -> usize {
        self.degrees.len()
    }
}

impl Strategy for P3Freeness {
    type Output = bool;

    fn name(&self) -> &'static str {
        "p3_freeness"
    }

    fn declared_depth(&self) -> usize {
        pairs(self.k())
    }

    fn classical_bits(&self) -> usize {
        self.k() * degree_bits(self.k())
    }

    fn run(&self, session: &mut Session<'_>) -> Result<bool> {
        let k = self.k();
        if session.n() != k {
            return Err(Error::InvalidParams(format!("graph inputs need n = k = {k}, got n = {}", session.n())));
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        'nodes: for v in 0..k {
            for g in groups.iter_mut() {
                let r = g[0];
                if session.ask(MeqQuery::pair(r, v, BitString::unit(k, r), BitString::unit(k, v)))? {
                    g.push(v);
                    continue 'nodes;
                }
            }
            groups.push(vec![v]);
        }
        Ok(groups.iter().all(|g| g.iter().all(|&v| g.len() - 1 == self.degrees[v])))
    }
}

/// Number of twin classes. Each node is tested against one representative per
/// class: false twins share `ν`, true twins share `ν ⊕ e`.
#[derive(Debug, Clone)]
pub struct NeighborhoodDiversity {
    pub k: usize,
}

impl Strategy for NeighborhoodDiversity {
    type Output = usize;

    fn name(&self) -> &'static str {
        "neighborhood_diversity"
    }

    fn declared_depth(&self) -> usize {
        2 * pairs(self.k)
    }

    fn run(&self, session: &mut Session<'_>) -> Result<usize> {
        let k = self.k;
        let zero = BitString::zeros(k);
        let mut reps: Vec<usize> = Vec::new();
        for v in 0..k {
            let mut joined = false;
            for &r in &reps {
                if session.ask(MeqQuery::pair(r, v, zero, zero))?
                    || session.ask(MeqQuery::pair(r, v, BitString::unit(k, r), BitString::unit(k, v)))?
                {
                    joined = true;
                    break;
                }
            }
            if !joined {
                reps.push(v);
            }
        }
        Ok(reps.len())
    }
}
