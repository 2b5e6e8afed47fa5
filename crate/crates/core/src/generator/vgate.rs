//! Stand-in for the walk operator V: one y-multiplexor per nit, controlled
//! by exactly the nit's blanket.
//!
//! Blanket nits are listed high bit first, so blanket nit `j` (ascending
//! order) has multiplexor name `j` and contributes bit `j` of the angle
//! index. The angle for a configuration is `2 acos(sqrt(q))` in degrees,
//! `q` being the probability that the target nit is 0 given it.

use super::GenError;
use crate::bayesnet::BayesNet;
use crate::circuit::{Gate, MAX_MUX_CONTROLS};
use crate::exec::Exec;
use crate::nitcodes::NitLayout;

/// `P(nit = 0 | blanket nits = config)`, where `config` holds the blanket
/// nit values as bits of an index (ascending nit order, lowest bit first).
/// `None` when the configuration encodes an unused state or has zero
/// probability.
pub fn nit_zero_probability(net: &BayesNet, layout: &NitLayout, nit: usize, config: usize) -> Option<f64> {
    let skel = net.skeleton();
    let owner = layout.owner(nit).ok()?;
    let blanket: Vec<usize> = layout.nit_blanket(skel, nit).ok()?.into_iter().collect();
    let mut bits = vec![false; layout.nb()];
    for (j, &b) in blanket.iter().enumerate() {
        bits[b] = (config >> j) & 1 == 1;
    }
    let mut states = vec![0; skel.len()];
    let node_blanket = skel.blanket(owner);
    for &node in &node_blanket {
        let s = layout.decode_node(node, |n| bits[n]);
        if s >= skel.nodes()[node].states().len() {
            return None;
        }
        states[node] = s;
    }
    let children = skel.children(owner);
    let mut weight = [0.0; 2];
    for (value, w) in weight.iter_mut().enumerate() {
        bits[nit] = value == 1;
        let s = layout.decode_node(owner, |n| bits[n]);
        if s >= skel.nodes()[owner].states().len() {
            continue;
        }
        states[owner] = s;
        *w = net.local_prob(owner, &states) * children.iter().map(|&c| net.local_prob(c, &states)).product::<f64>();
    }
    let total = weight[0] + weight[1];
    (total > 0.0).then(|| weight[0] / total)
}

pub fn v_standin(net: &BayesNet, layout: &NitLayout, offset: usize) -> Result<Vec<Gate>, GenError> {
    v_standin_with(net, layout, offset, Exec::default())
}

/// One MP_Y per nit in nit order, targeting `offset + nit`.
pub fn v_standin_with(net: &BayesNet, layout: &NitLayout, offset: usize, exec: Exec) -> Result<Vec<Gate>, GenError> {
    let skel = net.skeleton();
    let mut gates = Vec::with_capacity(layout.nb());
    for nit in 0..layout.nb() {
        let blanket: Vec<usize> = layout.nit_blanket(skel, nit).expect("nit in range").into_iter().collect();
        if blanket.len() > MAX_MUX_CONTROLS {
            return Err(GenError::BlanketTooLarge { nit, size: blanket.len() });
        }
        let angles = exec.map_range(1 << blanket.len(), |config| {
            nit_zero_probability(net, layout, nit, config).map_or(0.0, |q| 2.0 * q.sqrt().min(1.0).acos().to_degrees())
        });
        let mux_bits: Vec<usize> = blanket.iter().rev().map(|&b| offset + b).collect();
        gates.push(Gate::mp_y(offset + nit, &mux_bits, angles));
    }
    Ok(gates)
}
