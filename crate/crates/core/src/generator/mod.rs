//! Pre-run analysis files and synthesis of the Gibbs-sampling circuit.
//!
//! Register layout over `2*nb + a*c` qubits: `0..nb` is register 1,
//! `nb..2nb` register 2, and probe qubit `m` of PE step `s` is
//! `2nb + s*a + m`.

mod build;
mod prerun;
mod schedule;
mod vgate;

use thiserror::Error;

use crate::bayesnet::{Instantiation, NetError};
use crate::circuit::CircuitError;

pub use build::{build_circuit, generate_circuit, write_outputs, Built};
pub use prerun::{
    blankets_text, nits_text, uniform_probs, write_prerun, Variant, BLANKETS_FILE, NITS_FILE, PROBS_F_FILE,
    PROBS_T_FILE,
};
pub use schedule::{afga_schedule, afga_schedule_with, CosSquaredDecay, SchedulePolicy};
pub use vgate::{nit_zero_probability, v_standin, v_standin_with};

/// Upper bound on probe bits; `2^(a-1)` repetitions must fit a LOOP count.
pub const MAX_PROBE_BITS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("starting state has zero probability")]
    ZeroProbability,
    #[error("parameter out of range: {0}")]
    Param(String),
    #[error("nit {nit} has a blanket of {size} nits, above the multiplexor limit")]
    BlanketTooLarge { nit: usize, size: usize },
    #[error("cannot write {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{path} exists and clobbering is disabled")]
    Exists { path: String },
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub probe_bits_a: usize,
    pub pe_steps_c: usize,
    pub max_grover_steps: usize,
    pub gamma_tol_degs: f64,
    pub delta_lambda_degs: f64,
    pub omit_v: bool,
    pub start: Instantiation,
    pub seed: Option<u64>,
}

impl GenParams {
    pub fn check(&self) -> Result<(), GenError> {
        let bad = |m: &str| Err(GenError::Param(m.to_string()));
        if !(1..=MAX_PROBE_BITS).contains(&self.probe_bits_a) {
            return bad(&format!("probe bits must be in 1..={MAX_PROBE_BITS}"));
        }
        if self.pe_steps_c == 0 {
            return bad("PE steps must be at least 1");
        }
        if self.max_grover_steps == 0 {
            return bad("max Grover steps must be at least 1");
        }
        if !(self.gamma_tol_degs.is_finite() && self.gamma_tol_degs > 0.0) {
            return bad("gamma tolerance must be a positive number of degrees");
        }
        if !self.delta_lambda_degs.is_finite() {
            return bad("delta lambda must be finite");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedOutputs {
    pub gamma0_degs: f64,
    pub p_start: f64,
    pub qubit_count: usize,
    pub elementary_op_count: u64,
    pub grover_steps_used: usize,
}

/// Starting AFGA angle `2 acos(sqrt(p))` in degrees.
pub fn gamma0(p_start: f64) -> Result<f64, GenError> {
    if p_start.is_nan() || p_start <= 0.0 || p_start > 1.0 {
        return if p_start == 0.0 {
            Err(GenError::ZeroProbability)
        } else {
            Err(GenError::Param(format!("probability {p_start} outside (0, 1]")))
        };
    }
    Ok(2.0 * p_start.sqrt().acos().to_degrees())
}

pub fn qubit_count(nb: usize, a: usize, c: usize) -> usize {
    2 * nb + a * c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma0_values() {
        assert!((gamma0(0.25).unwrap() - 120.0).abs() < 1e-9);
        assert!((gamma0(0.5).unwrap() - 90.0).abs() < 1e-9);
        assert_eq!(gamma0(1.0).unwrap(), 0.0);
        assert_eq!(gamma0(0.0), Err(GenError::ZeroProbability));
        assert!(matches!(gamma0(1.5), Err(GenError::Param(_))));
        assert!(gamma0(1e-300).unwrap() <= 180.0);
    }

    #[test]
    fn qubits() {
        assert_eq!(qubit_count(4, 2, 3), 14);
    }
}
