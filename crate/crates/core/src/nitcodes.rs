//! Per-node qubit ("nit") allocation, decimal/binary state names and
//! nit-level Markov blankets.
//!
//! A node with `N >= 2` states owns `ceil(log2 N)` contiguous nits; a
//! one-state node owns none. Nits are numbered in focus-node order and,
//! inside a node, the lowest global index carries the least significant bit
//! of the state's decimal name.
//!
//! The nit blanket of a nit is the union of its sibling nits (same owner)
//! and every nit owned by a node in the owner's Markov blanket. This rule is
//! reverse-engineered from the 3-node example (nit 0 of `A` has blanket
//! `{1,2,3}`); no finer nit-level graph is built.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::bayesnet::{NetError, Skeleton};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NitError {
    #[error("nit {nit} out of range (net has {nb} nits)")]
    OutOfRange { nit: usize, nb: usize },
    #[error(transparent)]
    Net(#[from] NetError),
}

/// Number of nits needed to encode `n_states` states.
pub fn nit_count(n_states: usize) -> usize {
    if n_states <= 1 {
        0
    } else {
        (usize::BITS - (n_states - 1).leading_zeros()) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NitLayout {
    ranges: Vec<Range<usize>>,
    owners: Vec<usize>,
}

impl NitLayout {
    pub fn build(skeleton: &Skeleton) -> Self {
        let mut ranges = Vec::with_capacity(skeleton.len());
        let mut owners = Vec::new();
        for (i, node) in skeleton.nodes().iter().enumerate() {
            let start = owners.len();
            owners.extend(std::iter::repeat_n(i, nit_count(node.states().len())));
            ranges.push(start..owners.len());
        }
        NitLayout { ranges, owners }
    }

    /// Total nit count (`nb`).
    pub fn nb(&self) -> usize {
        self.owners.len()
    }

    /// Global nit indices owned by `node`.
    pub fn nits_of(&self, node: usize) -> Range<usize> {
        self.ranges[node].clone()
    }

    pub fn owner(&self, nit: usize) -> Result<usize, NitError> {
        self.owners.get(nit).copied().ok_or(NitError::OutOfRange { nit, nb: self.nb() })
    }

    /// Blanket nits of `nit`, ascending. Never contains `nit` itself.
    pub fn nit_blanket(&self, skeleton: &Skeleton, nit: usize) -> Result<BTreeSet<usize>, NitError> {
        let owner = self.owner(nit)?;
        let mut out: BTreeSet<usize> = self.nits_of(owner).filter(|&j| j != nit).collect();
        for node in skeleton.blanket(owner) {
            out.extend(self.nits_of(node));
        }
        Ok(out)
    }

    /// Writes the bits of every node's decimal state into a nit vector.
    pub fn encode(&self, states: &[usize]) -> Vec<bool> {
        let mut bits = vec![false; self.nb()];
        for (node, range) in self.ranges.iter().enumerate() {
            for (k, nit) in range.clone().enumerate() {
                bits[nit] = (states[node] >> k) & 1 == 1;
            }
        }
        bits
    }

    /// Decimal value of `node` read from a nit assignment. May exceed the
    /// node's state count for unused codes.
    pub fn decode_node(&self, node: usize, bits: impl Fn(usize) -> bool) -> usize {
        self.ranges[node].clone().enumerate().fold(0, |acc, (k, nit)| acc | (usize::from(bits(nit)) << k))
    }
}

/// The three names of one state of a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateName {
    pub english: String,
    pub decimal: usize,
    /// Most significant bit first, width equal to the node's nit count.
    pub binary: String,
}

impl fmt::Display for StateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}){}", self.english, self.binary, self.decimal)
    }
}

pub fn binary_name(decimal: usize, width: usize) -> String {
    (0..width).rev().map(|k| if (decimal >> k) & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn state_names(skeleton: &Skeleton, layout: &NitLayout, node: &str) -> Result<Vec<StateName>, NitError> {
    let i = skeleton.node_index(node)?;
    let width = layout.nits_of(i).len();
    Ok(skeleton.nodes()[i]
        .states()
        .iter()
        .enumerate()
        .map(|(d, s)| StateName { english: s.clone(), decimal: d, binary: binary_name(d, width) })
        .collect())
}
