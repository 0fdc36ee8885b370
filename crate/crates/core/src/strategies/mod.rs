//! Application protocols written as adaptive query strategies.
//!
//! A strategy is the control flow of a decision tree: it asks modified
//! equality queries through a [`Session`], branches on the answers and
//! returns the label of the leaf it reaches. Strategies never see the player
//! inputs, only the answers and whatever classical side data (such as
//! degrees) the players ship alongside their fingerprints.

mod cliques;
mod dh;
mod graphs;
mod grouping;

pub use cliques::{mham, mham_depth, IsolatedCliques, Mham};
pub use dh::{reconstruct_from_decomp, DecompStep, DhOutcome, DhReconstruct, Representation, StepKind};
pub use graphs::{NeighborhoodDiversity, P3Freeness};
pub use grouping::{frequency_moment, AllEq, ExistsEq, FrequencyMoment, GroupByEq, Partition};

use crate::error::Result;
use crate::meq::Session;

pub trait Strategy {
    type Output;

    fn name(&self) -> &'static str;

    /// Maximum number of queries on any answer sequence.
    fn declared_depth(&self) -> usize;

    /// Classical bits the players send next to their fingerprints.
    fn classical_bits(&self) -> usize {
        0
    }

    fn run(&self, session: &mut Session<'_>) -> Result<Self::Output>;
}

pub(crate) fn pairs(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Bits needed to send one degree in `[0, k)`.
pub(crate) fn degree_bits(k: usize) -> usize {
    (usize::BITS - k.saturating_sub(1).leading_zeros()).max(1) as usize
}
