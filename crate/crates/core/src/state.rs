//! Points of the Boolean cube `{0,1}^n`.
//!
//! Components are addressed 1-based, like graph vertices. When a state is
//! packed into an integer, component 1 is the most significant bit, so that
//! increasing integers enumerate states in increasing binary order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BitState(Vec<bool>);

impl BitState {
    pub fn zeros(n: usize) -> Self {
        BitState(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        BitState(vec![true; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitState(bits)
    }

    /// Unpacks `index` (component 1 most significant) into a state of length `n`.
    pub fn from_index(n: usize, index: u64) -> Self {
        debug_assert!(n <= 64);
        BitState((1..=n).map(|v| (index >> (n - v)) & 1 == 1).collect())
    }

    pub fn index(&self) -> u64 {
        debug_assert!(self.0.len() <= 64);
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Value of component `v` (1-based).
    pub fn get(&self, v: usize) -> bool {
        self.0[v - 1]
    }

    pub fn set(&mut self, v: usize, value: bool) {
        self.0[v - 1] = value;
    }

    pub fn with(&self, v: usize, value: bool) -> Self {
        let mut s = self.clone();
        s.set(v, value);
        s
    }

    /// The state differing from `self` exactly in component `v`.
    pub fn flipped(&self, v: usize) -> Self {
        self.with(v, !self.get(v))
    }

    /// The antipodal state, at Hamming distance `n`.
    pub fn complement(&self) -> Self {
        BitState(self.0.iter().map(|b| !b).collect())
    }

    pub fn hamming(&self, other: &BitState) -> usize {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn ensure_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                actual: self.len(),
            })
        }
    }

    /// Components set to 1, as vertex ids.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&v| self.get(v)).collect()
    }
}

impl fmt::Display for BitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::BadParams(format!("`{s}` is not a binary string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitState)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn index_puts_first_component_first() {
        let x: BitState = "100".parse().unwrap();
        assert_eq!(x.index(), 4);
        assert_eq!(BitState::from_index(3, 4), x);
        assert_eq!(x.to_string(), "100");
    }

    #[test]
    fn complement_is_at_distance_n() {
        let x: BitState = "0110".parse().unwrap();
        assert_eq!(x.hamming(&x.complement()), 4);
        assert_eq!(x.hamming(&x.flipped(2)), 1);
    }

    #[test]
    fn rejects_non_binary_text() {
        assert!("012".parse::<BitState>().is_err());
    }

    proptest! {
        #[test]
        fn flips_are_involutions(bits in proptest::collection::vec(any::<bool>(), 1..12), v in 0usize..12) {
            let x = BitState::from_bits(bits);
            let v = v % x.len() + 1;
            prop_assert_eq!(x.flipped(v).flipped(v), x.clone());
            prop_assert_eq!(x.complement().complement(), x.clone());
            prop_assert_eq!(BitState::from_index(x.len(), x.index()), x);
        }
    }
}
