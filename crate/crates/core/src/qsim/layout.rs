use std::collections::HashMap;
use std::ops::Range;

use serde::Serialize;

use super::state::{StateVector, TOLERANCE};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub name: String,
    pub offset: usize,
    pub width: usize,
}

impl Block {
    pub fn qubits(&self) -> Range<usize> {
        self.offset..self.offset + self.width
    }
}

/// Named, contiguous, disjoint qubit blocks covering `[0, num_qubits)` in
/// declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegisterLayout {
    blocks: Vec<Block>,
    index: HashMap<String, usize>,
}

impl RegisterLayout {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a block after the existing ones.
    pub fn push(&mut self, name: impl Into<String>, width: usize) -> Result<&Block> {
        let name = name.into();
        if width == 0 {
            return Err(Error::EmptyBlock(name));
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateBlock(name));
        }
        let offset = self.num_qubits();
        self.index.insert(name.clone(), self.blocks.len());
        self.blocks.push(Block { name, offset, width });
        Ok(self.blocks.last().unwrap())
    }

    pub fn num_qubits(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.offset + b.width)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Result<&Block> {
        self.index.get(name).map(|&i| &self.blocks[i]).ok_or_else(|| Error::UnknownBlock(name.to_string()))
    }

    /// Qubit indices of a block, low to high.
    pub fn qubits(&self, name: &str) -> Result<Vec<usize>> {
        Ok(self.block(name)?.qubits().collect())
    }

    pub fn qubit(&self, name: &str) -> Result<usize> {
        let b = self.block(name)?;
        if b.width != 1 {
            return Err(Error::InvalidParams(format!("block {name:?} has width {}, not 1", b.width)));
        }
        Ok(b.offset)
    }
}

/// Tensor product of named local states. The first block occupies the lowest
/// qubits.
pub fn tensor_init(blocks: &[(&str, StateVector)]) -> Result<(StateVector, RegisterLayout)> {
    let mut layout = RegisterLayout::new();
    let mut state: Option<StateVector> = None;
    for (name, local) in blocks {
        let norm = local.norm();
        if (norm - 1.0).abs() > TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        layout.push(*name, local.num_qubits())?;
        state = Some(match state {
            None => local.clone(),
            Some(s) => s.tensor(local),
        });
    }
    let state = state.ok_or_else(|| Error::InvalidParams("no blocks given".into()))?;
    Ok((state, layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn two_blocks() {
        let (s, layout) = tensor_init(&[("a", StateVector::zero(1)), ("b", StateVector::basis(1, 1))]).unwrap();
        // |a b⟩ = |0 1⟩: b is qubit 1, so amplitude index 2.
        assert_eq!(s, StateVector::basis(2, 2));
        assert_eq!(layout.block("a").unwrap().qubits(), 0..1);
        assert_eq!(layout.block("b").unwrap().qubits(), 1..2);
    }

    #[test]
    fn single_block_is_identity() {
        let plus = StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let (s, layout) = tensor_init(&[("p", plus.clone())]).unwrap();
        assert_eq!(s, plus);
        assert_eq!(layout.blocks().len(), 1);
    }

    #[test]
    fn product_is_normalized() {
        let plus = StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let w = StateVector::from_real(&[0.6, 0.0, 0.0, 0.8]).unwrap();
        let (s, _) = tensor_init(&[("a", plus), ("b", w)]).unwrap();
        assert!((s.norm() - 1.0).abs() < TOLERANCE);
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = tensor_init(&[("a", StateVector::zero(1)), ("a", StateVector::zero(1))]);
        assert_eq!(r.unwrap_err(), Error::DuplicateBlock("a".into()));
    }

    #[test]
    fn zero_width_rejected() {
        let mut layout = RegisterLayout::new();
        assert_eq!(layout.push("z", 0).unwrap_err(), Error::EmptyBlock("z".into()));
    }
}
