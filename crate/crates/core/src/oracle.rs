//! Brute-force reference computations. Nothing here shares code paths with
//! the generator's fast routes: the joint is enumerated exhaustively, blanket
//! claims are checked against conditional probabilities taken from that
//! table, and op counts come from literally unrolling loops.

use thiserror::Error;

use crate::bayesnet::{BayesNet, Instantiation, NetError};
use crate::circuit::{Circuit, Gate, Op};
use crate::exec::Exec;

/// Largest state space (or unrolled circuit) the oracle will enumerate.
pub const ENUMERATION_CAP: usize = 1_000_000;

/// Absolute tolerance for comparing conditionals.
pub const CI_TOL: f64 = 1e-9;

const EXPANSION_CAP: usize = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("state space of {size} instantiations exceeds the cap of {cap}")]
    TooLarge { size: String, cap: usize },
    #[error("candidate blanket contains the focus node itself")]
    CandidateContainsNode,
    #[error("unbalanced loops: {0}")]
    Unbalanced(String),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// Exhaustive joint distribution; instantiations in mixed-radix order with
/// the first node most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    radices: Vec<usize>,
    probs: Vec<f64>,
}

impl JointTable {
    pub fn len(&self) -> usize {
        self.probs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn index_of(&self, x: &Instantiation) -> usize {
        self.radices.iter().zip(x.states()).fold(0, |acc, (&r, &s)| acc * r + s)
    }

    pub fn prob(&self, x: &Instantiation) -> f64 {
        self.probs[self.index_of(x)]
    }

    pub fn entries(&self) -> impl Iterator<Item = (Instantiation, f64)> + '_ {
        self.probs.iter().enumerate().map(|(i, &p)| (Instantiation::from_index(&self.radices, i), p))
    }
}

pub fn enumerate_joint(net: &BayesNet) -> Result<JointTable, OracleError> {
    enumerate_joint_with(net, Exec::default())
}

pub fn enumerate_joint_with(net: &BayesNet, exec: Exec) -> Result<JointTable, OracleError> {
    let skel = net.skeleton();
    let radices = skel.state_counts();
    let size = match skel.state_space_size() {
        Some(n) if n <= ENUMERATION_CAP => n,
        Some(n) => return Err(OracleError::TooLarge { size: n.to_string(), cap: ENUMERATION_CAP }),
        None => return Err(OracleError::TooLarge { size: "> 2^64".into(), cap: ENUMERATION_CAP }),
    };
    let probs = exec.map_range(size, |index| {
        let x = Instantiation::from_index(&radices, index);
        let s = x.states();
        let mut p = 1.0;
        for (i, node) in skel.nodes().iter().enumerate() {
            let parent_states: Vec<usize> = node.parents().iter().map(|&q| s[q]).collect();
            p *= net.cpts()[i].prob(s[i], &parent_states);
        }
        p
    });
    Ok(JointTable { radices, probs })
}

/// Checks `P(x_i | x_rest) == P(x_i | x_candidate)` for every instantiation
/// where both conditioning events have positive probability.
pub fn verify_blanket(net: &BayesNet, node: &str, candidate: &[&str]) -> Result<bool, OracleError> {
    let skel = net.skeleton();
    let focus = skel.node_index(node)?;
    let cand: Vec<usize> = candidate.iter().map(|c| skel.node_index(c)).collect::<Result<_, _>>()?;
    if cand.contains(&focus) {
        return Err(OracleError::CandidateContainsNode);
    }
    let table = enumerate_joint(net)?;
    let radices = &table.radices;
    let n_focus = radices[focus];
    let stride: usize = radices[focus + 1..].iter().product();

    let cand_key = |x: &Instantiation| cand.iter().fold(0usize, |acc, &c| acc * radices[c] + x.states()[c]);
    let cand_space: usize = cand.iter().map(|&c| radices[c]).product();

    let mut rest = vec![0.0; table.len()];
    let mut with_focus = vec![0.0; cand_space * n_focus];
    let mut cand_only = vec![0.0; cand_space];
    for (x, p) in table.entries() {
        let xi = x.states()[focus];
        rest[table.index_of(&x) - xi * stride] += p;
        let k = cand_key(&x);
        with_focus[k * n_focus + xi] += p;
        cand_only[k] += p;
    }
    for (x, p) in table.entries() {
        let xi = x.states()[focus];
        let p_rest = rest[table.index_of(&x) - xi * stride];
        let k = cand_key(&x);
        if p_rest <= 0.0 || cand_only[k] <= 0.0 {
            continue;
        }
        let full = p / p_rest;
        let reduced = with_focus[k * n_focus + xi] / cand_only[k];
        if (full - reduced).abs() > CI_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

enum Block<'a> {
    Gate(&'a Gate),
    Loop(u64, Vec<Block<'a>>),
}

fn build_blocks(ops: &[Op]) -> Result<Vec<Block<'_>>, OracleError> {
    let mut stack: Vec<(usize, u64, Vec<Block<'_>>)> = Vec::new();
    let mut top: Vec<Block<'_>> = Vec::new();
    for op in ops {
        match op {
            Op::Gate(g) => match stack.last_mut() {
                Some((_, _, body)) => body.push(Block::Gate(g)),
                None => top.push(Block::Gate(g)),
            },
            Op::Loop { label, reps } => stack.push((*label, *reps, Vec::new())),
            Op::Next { label } => {
                let (open, reps, body) =
                    stack.pop().ok_or_else(|| OracleError::Unbalanced(format!("NEXT {label} without LOOP")))?;
                if open != *label {
                    return Err(OracleError::Unbalanced(format!("NEXT {label} closes LOOP {open}")));
                }
                let block = Block::Loop(reps, body);
                match stack.last_mut() {
                    Some((_, _, outer)) => outer.push(block),
                    None => top.push(block),
                }
            }
        }
    }
    match stack.pop() {
        Some((label, _, _)) => Err(OracleError::Unbalanced(format!("LOOP {label} never closed"))),
        None => Ok(top),
    }
}

fn unroll<'a>(blocks: &[Block<'a>], out: &mut Vec<&'a Gate>) -> Result<(), OracleError> {
    for b in blocks {
        match b {
            Block::Gate(g) => out.push(g),
            Block::Loop(reps, body) => {
                for _ in 0..*reps {
                    unroll(body, out)?;
                    if out.len() > EXPANSION_CAP {
                        return Err(OracleError::TooLarge {
                            size: format!("> {EXPANSION_CAP} ops"),
                            cap: EXPANSION_CAP,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Unrolls every loop and counts the resulting gate lines.
pub fn count_ops_by_expansion(circuit: &Circuit) -> Result<u64, OracleError> {
    let blocks = build_blocks(circuit.ops())?;
    let mut flat = Vec::new();
    unroll(&blocks, &mut flat)?;
    Ok(flat.len() as u64)
}
