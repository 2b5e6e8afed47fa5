//! Log File: one `key: value` line per input and output of a generation run.

use std::fmt::Write as _;

use crate::generator::{DerivedOutputs, GenParams};
use crate::nitcodes::StateName;
use crate::num::{decimal, rounded};

#[derive(Debug, Clone, PartialEq)]
pub struct LogInfo {
    pub folder: String,
    /// Node name and its starting state, in focus order.
    pub start: Vec<(String, StateName)>,
    pub params: GenParams,
    pub derived: DerivedOutputs,
}

fn on_off(b: bool) -> &'static str {
    if b {
        "ON"
    } else {
        "OFF"
    }
}

pub fn emit_log(info: &LogInfo) -> String {
    let p = &info.params;
    let d = &info.derived;
    let mut out = String::new();
    let mut kv = |k: &str, v: &dyn std::fmt::Display| {
        let _ = writeln!(out, "{k}: {v}");
    };
    kv("I/O folder", &info.folder);
    for (node, s) in &info.start {
        kv(
            &format!("starting state {node}"),
            &format_args!("{} (binary {}, decimal {})", s.english, s.binary, s.decimal),
        );
    }
    kv("number of probe bits", &p.probe_bits_a);
    kv("number of PE steps", &p.pe_steps_c);
    kv("maximum number of Grover steps", &p.max_grover_steps);
    kv("gamma tolerance (degs)", &decimal(p.gamma_tol_degs));
    kv("delta lambda (degs)", &decimal(p.delta_lambda_degs));
    kv("omit V gates", &on_off(p.omit_v));
    match p.seed {
        Some(seed) => kv("random start seed", &seed),
        None => kv("random start seed", &"none"),
    }
    kv("starting gamma (degs)", &rounded(d.gamma0_degs));
    kv("probability of starting state", &decimal(d.p_start));
    kv("number of qubits", &d.qubit_count);
    kv("number of elementary operations", &d.elementary_op_count);
    kv("number of Grover steps used", &d.grover_steps_used);
    out
}
