//! Reconstruction of distance-hereditary graphs.
//!
//! The referee keeps a representation `(a_v, b_v)` of the surviving graph in
//! which the `a_v` are linearly independent and `b_v` is the XOR of `a_u`
//! over the neighbors `u` of `v`. In that representation
//!
//! * `w` is pendant on `u` iff `b_w = a_u`,
//! * `w, u` are false twins iff `b_w = b_u`,
//! * `w, u` are true twins iff `b_w ⊕ a_w = b_u ⊕ a_u`.
//!
//! The referee never holds `b_v` itself, only a modifier `c_v` with
//! `b_v = ν_v ⊕ c_v`, so each test is one modified equality query. Starting
//! from `a_v = e_v, c_v = 0`, removing a node only ever XORs `a_w` into the
//! vectors of its partner `u`.

use serde::Serialize;

use super::{pairs, Strategy};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::meq::{MeqQuery, Session};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Pendant,
    FalseTwin,
    TrueTwin,
}

/// Node `w` was removed as a pendant of, or a twin of, node `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DecompStep {
    pub kind: StepKind,
    pub w: usize,
    pub u: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DhOutcome {
    /// Twin-pendant decomposition, with the one node left at the end.
    Decomposition { steps: Vec<DecompStep>, last: usize },
    NotDistanceHereditary,
}

impl DhOutcome {
    /// The graph described by an accepting outcome.
    pub fn reconstruct(&self, k: usize) -> Result<Option<Graph>> {
        match self {
            DhOutcome::Decomposition { steps, last } => reconstruct_from_decomp(k, steps, *last).map(Some),
            DhOutcome::NotDistanceHereditary => Ok(None),
        }
    }
}

/// Referee-side state of the reconstruction.
#[derive(Debug, Clone)]
pub struct Representation {
    k: usize,
    alive: Vec<usize>,
    a: Vec<BitString>,
    c: Vec<BitString>,
    decomp: Vec<DecompStep>,
}

impl Representation {
    /// `a_v = e_v`, `c_v = 0` for every node.
    pub fn initial(k: usize) -> Self {
        Self {
            k,
            alive: (0..k).collect(),
            a: (0..k).map(|v| BitString::unit(k, v)).collect(),
            c: vec![BitString::zeros(k); k],
            decomp: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alive(&self) -> &[usize] {
        &self.alive
    }

    pub fn a(&self, v: usize) -> BitString {
        self.a[v]
    }

    pub fn c(&self, v: usize) -> BitString {
        self.c[v]
    }

    pub fn decomp(&self) -> &[DecompStep] {
        &self.decomp
    }

    /// `b_v = ν_v ⊕ c_v` for an explicitly known graph; used for checking.
    pub fn b(&self, graph: &Graph, v: usize) -> BitString {
        graph.neighborhood(v) ^ self.c[v]
    }

    fn remove(&mut self, step: DecompStep) {
        let DecompStep { kind, w, u } = step;
        let aw = self.a[w];
        match kind {
            StepKind::Pendant => self.c[u] ^= aw,
            StepKind::FalseTwin => self.a[u] ^= aw,
            StepKind::TrueTwin => {
                self.a[u] ^= aw;
                self.c[u] ^= aw;
            }
        }
        self.alive.retain(|&v| v != w);
        self.decomp.push(step);
    }

    /// Scans for a removable node: pendants over ordered pairs first, then
    /// false twins, then true twins over unordered pairs.
    fn find_step(&self, session: &mut Session<'_>) -> Result<Option<DecompStep>> {
        for &w in &self.alive {
            for &u in &self.alive {
                if w != u && session.ask(MeqQuery::single(w, self.c[w], self.a[u]))? {
                    return Ok(Some(DecompStep { kind: StepKind::Pendant, w, u }));
                }
            }
        }
        for (x, &w) in self.alive.iter().enumerate() {
            for &u in &self.alive[x + 1..] {
                if session.ask(MeqQuery::pair(w, u, self.c[w], self.c[u]))? {
                    return Ok(Some(DecompStep { kind: StepKind::FalseTwin, w, u }));
                }
            }
        }
        for (x, &w) in self.alive.iter().enumerate() {
            for &u in &self.alive[x + 1..] {
                if session.ask(MeqQuery::pair(w, u, self.c[w] ^ self.a[w], self.c[u] ^ self.a[u]))? {
                    return Ok(Some(DecompStep { kind: StepKind::TrueTwin, w, u }));
                }
            }
        }
        Ok(None)
    }
}

/// Reconstructs a distance-hereditary graph, or rejects.
#[derive(Debug, Clone)]
pub struct DhReconstruct {
    pub k: usize,
}

impl DhReconstruct {
    /// Runs the strategy, handing the representation to `observer` after
    /// every removal.
    pub fn run_observed(&self, session: &mut Session<'_>, observer: &mut dyn FnMut(&Representation)) -> Result<DhOutcome> {
        let k = self.k;
        if session.n() != k {
            return Err(Error::InvalidParams(format!("graph inputs need n = k = {k}, got n = {}", session.n())));
        }
        let mut rep = Representation::initial(k);
        while rep.alive.len() >= 2 {
            match rep.find_step(session)? {
                Some(step) => {
                    rep.remove(step);
                    observer(&rep);
                }
                None => return Ok(DhOutcome::NotDistanceHereditary),
            }
        }
        let last = rep.alive.first().copied().unwrap_or(0);
        Ok(DhOutcome::Decomposition { steps: rep.decomp, last })
    }
}

impl Strategy for DhReconstruct {
    type Output = DhOutcome;

    fn name(&self) -> &'static str {
        "dh_reconstruct"
    }

    /// `3(k−1)·k(k−1)/2`.
    fn declared_depth(&self) -> usize {
        3 * self.k.saturating_sub(1) * pairs(self.k)
    }

    fn run(&self, session: &mut Session<'_>) -> Result<DhOutcome> {
        self.run_observed(session, &mut |_| {})
    }
}

/// Replays a decomposition backwards from `last`: a pendant `w` gets the
/// single edge to `u`, a false twin copies `N(u)`, a true twin copies `N(u)`
/// and is joined to `u`.
pub fn reconstruct_from_decomp(k: usize, steps: &[DecompStep], last: usize) -> Result<Graph> {
    if last >= k {
        return Err(Error::MalformedDecomposition(format!("final node {last} out of range")));
    }
    let mut present = vec![false; k];
    present[last] = true;
    let mut g = Graph::empty(k);
    for step in steps.iter().rev() {
        let DecompStep { kind, w, u } = *step;
        if w >= k || u >= k {
            return Err(Error::MalformedDecomposition(format!("step {step:?} names a node out of range")));
        }
        if !present[u] {
            return Err(Error::MalformedDecomposition(format!("node {u} used before it is present")));
        }
        if present[w] {
            return Err(Error::MalformedDecomposition(format!("node {w} added twice")));
        }
        match kind {
            StepKind::Pendant => g.add_edge(w, u)?,
            StepKind::FalseTwin | StepKind::TrueTwin => {
                for v in g.neighborhood(u).ones().collect::<Vec<_>>() {
                    g.add_edge(w, v)?;
                }
                if kind == StepKind::TrueTwin {
                    g.add_edge(w, u)?;
                }
            }
        }
        present[w] = true;
    }
    if let Some(v) = present.iter().position(|&p| !p) {
        return Err(Error::MalformedDecomposition(format!("node {v} never added")));
    }
    Ok(g)
}
