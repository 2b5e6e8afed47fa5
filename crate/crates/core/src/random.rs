//! Seeded random circuits and nets for property tests and benches.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bayesnet::{BayesNet, Cpt, Skeleton};
use crate::circuit::{Circuit, Control, Gate, GateKind, Op, MAX_MUX_CONTROLS};

#[derive(Debug, Clone, Copy)]
pub struct CircuitShape {
    pub max_qubits: usize,
    pub max_lines: usize,
    pub max_depth: usize,
    pub max_reps: u64,
}

impl Default for CircuitShape {
    fn default() -> Self {
        CircuitShape { max_qubits: 6, max_lines: 30, max_depth: 2, max_reps: 5 }
    }
}

fn angle(rng: &mut ChaCha8Rng) -> f64 {
    // quarter-degree grid plus the occasional long fraction
    if rng.random_bool(0.2) {
        rng.random_range(-720.0..720.0)
    } else {
        f64::from(rng.random_range(-1440i32..1440)) / 4.0
    }
}

fn random_gate(rng: &mut ChaCha8Rng, qubits: usize) -> Gate {
    let mut bits: Vec<usize> = (0..qubits).collect();
    bits.shuffle(rng);
    let kind = loop {
        let k = GateKind::ALL[rng.random_range(0..GateKind::ALL.len())];
        if k.target_count() <= qubits {
            break k;
        }
    };
    let t = kind.target_count();
    let targets: Vec<usize> = bits[..t].to_vec();
    let rest = &bits[t..];
    let (mux_bits, ctl_bits) = if kind == GateKind::MpY {
        let k = rng.random_range(0..=rest.len().min(MAX_MUX_CONTROLS).min(4));
        let mut m = rest[..k].to_vec();
        m.sort_by(|a, b| b.cmp(a));
        (m, &rest[k..])
    } else {
        (Vec::new(), rest)
    };
    let max_ctl = if kind == GateKind::Phas { ctl_bits.len().saturating_sub(1) } else { ctl_bits.len() };
    let n_ctl = rng.random_range(0..=max_ctl);
    let controls: Vec<Control> =
        ctl_bits[..n_ctl].iter().map(|&bit| Control { bit, on: rng.random_bool(0.5) }).collect();
    let n_angles = kind.angle_count(mux_bits.len());
    let angles: Vec<f64> = (0..n_angles).map(|_| angle(rng)).collect();
    let mut g = match kind {
        GateKind::MpY => Gate::mp_y(targets[0], &mux_bits, angles),
        _ => Gate { kind, targets, angles, controls: Vec::new(), mux: Vec::new() },
    };
    g.controls = controls;
    g
}

/// A valid circuit with canonical loop labels.
pub fn random_circuit(seed: u64, shape: CircuitShape) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qubits = rng.random_range(1..=shape.max_qubits.max(1));
    let lines = rng.random_range(0..=shape.max_lines);
    let mut ops = Vec::with_capacity(lines + 2 * shape.max_depth);
    let mut depth = 0;
    for _ in 0..lines {
        let r: f64 = rng.random();
        if r < 0.12 && depth < shape.max_depth {
            ops.push(Op::Loop { label: 0, reps: rng.random_range(1..=shape.max_reps.max(1)) });
            depth += 1;
        } else if r < 0.22 && depth > 0 {
            ops.push(Op::Next { label: 0 });
            depth -= 1;
        } else {
            ops.push(Op::Gate(random_gate(&mut rng, qubits)));
        }
    }
    ops.extend((0..depth).map(|_| Op::Next { label: 0 }));
    let mut c = Circuit::from_ops(qubits, ops);
    c.relabel_loops().expect("balanced by construction");
    c
}

/// A DAG over at most `max_nodes` nodes with at most `max_states` states per
/// node and strictly positive CPT entries. Each node takes parents only
/// among earlier nodes.
pub fn random_net(seed: u64, max_nodes: usize, max_states: usize) -> BayesNet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_nodes.max(1));
    let mut parents_txt = String::new();
    let mut states_txt = String::new();
    for i in 0..n {
        parents_txt.push_str(&format!("# N{i}"));
        for p in 0..i {
            if rng.random_bool(0.45) {
                parents_txt.push_str(&format!(" N{p}"));
            }
        }
        parents_txt.push('\n');
        let k = rng.random_range(1..=max_states.max(1));
        states_txt.push_str(&format!("# N{i}"));
        for s in 0..k {
            states_txt.push_str(&format!(" s{s}"));
        }
        states_txt.push('\n');
    }
    let skel = Skeleton::from_texts(&parents_txt, &states_txt).expect("generated skeleton");
    let cpts: Vec<Cpt> = (0..n)
        .map(|i| {
            let k = skel.nodes()[i].states().len();
            let mut cpt = Cpt::zeros(&skel, i);
            for config in 0..cpt.parent_configs() {
                let parents = cpt.decode_config(config);
                let w: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
                let total: f64 = w.iter().sum();
                for (s, wi) in w.iter().enumerate() {
                    cpt.set(s, &parents, wi / total);
                }
            }
            cpt
        })
        .collect();
    BayesNet::new(skel, cpts)
}
