//! Circuit assembly: state preparation, then one unrolled AFGA iteration
//! per scheduled angle. Each iteration is phase estimation of V over the
//! probes, a target phase on the all-zero probe register, the inverse
//! estimation, and a source phase on register 1 matching the start state.

use std::fs;
use std::path::{Path, PathBuf};

use super::prerun::write_file;
use super::{afga_schedule, gamma0, qubit_count, v_standin, DerivedOutputs, GenError, GenParams};
use crate::bayesnet::BayesNet;
use crate::circuit::{count_elementary, Circuit, Control, Gate, GateKind, Op};
use crate::nitcodes::{state_names, NitLayout};
use crate::text::{emit_english, emit_log, emit_picture, LogInfo, ENGLISH_FILE, LOG_FILE, PICTURE_FILE};

/// A generated circuit plus which of its lines belong to V.
#[derive(Debug, Clone, PartialEq)]
pub struct Built {
    pub circuit: Circuit,
    pub v_lines: Vec<bool>,
    pub schedule: Vec<f64>,
    pub derived: DerivedOutputs,
}

enum Item {
    Gate(Gate),
    /// `reps` applications of controlled V.
    V(u64, Vec<Gate>),
}

fn inverted(g: &Gate) -> Gate {
    let mut g = g.clone();
    g.angles.iter_mut().for_each(|a| *a = -*a);
    g
}

struct Layout {
    nb: usize,
    a: usize,
}

impl Layout {
    fn probe(&self, s: usize, m: usize) -> usize {
        2 * self.nb + s * self.a + m
    }
}

fn phase_estimation(q: &Layout, c: usize, v: &[Gate]) -> Vec<Item> {
    let mut items = Vec::new();
    for s in 0..c {
        for m in 0..q.a {
            items.push(Item::Gate(Gate::fixed(GateKind::Had2, q.probe(s, m))));
        }
        for m in 0..q.a {
            if v.is_empty() {
                continue;
            }
            let body = v.iter().map(|g| g.clone().with_controls([Control::t(q.probe(s, m))])).collect();
            items.push(Item::V(1 << m, body));
        }
        for j in (0..q.a).rev() {
            for m in j + 1..q.a {
                let angle = -180.0 / f64::from(1u32 << (m - j));
                let g = Gate::angled(GateKind::P1Ph, angle, q.probe(s, j)).with_controls([Control::t(q.probe(s, m))]);
                items.push(Item::Gate(g));
            }
            items.push(Item::Gate(Gate::fixed(GateKind::Had2, q.probe(s, j))));
        }
    }
    items
}

fn inverse(items: &[Item]) -> Vec<Item> {
    items
        .iter()
        .rev()
        .map(|it| match it {
            Item::Gate(g) => Item::Gate(inverted(g)),
            Item::V(reps, body) => Item::V(*reps, body.iter().rev().map(inverted).collect()),
        })
        .collect()
}

struct Emitter {
    circuit: Circuit,
    v_lines: Vec<bool>,
    omit_v: bool,
}

impl Emitter {
    fn push(&mut self, op: Op, is_v: bool) -> Result<(), GenError> {
        if is_v && self.omit_v {
            return Ok(());
        }
        self.circuit.push(op)?;
        self.v_lines.push(is_v);
        Ok(())
    }

    fn items(&mut self, items: &[Item]) -> Result<(), GenError> {
        for it in items {
            match it {
                Item::Gate(g) => self.push(g.clone().into(), false)?,
                Item::V(reps, body) => {
                    self.push(Op::Loop { label: 0, reps: *reps }, true)?;
                    for g in body {
                        self.push(g.clone().into(), true)?;
                    }
                    self.push(Op::Next { label: 0 }, true)?;
                }
            }
        }
        Ok(())
    }
}

/// Builds the circuit. With `omit_v` set, V lines are never emitted; the
/// remaining lines are the same as in the full circuit.
pub fn build_circuit(net: &BayesNet, layout: &NitLayout, params: &GenParams) -> Result<Built, GenError> {
    params.check()?;
    if params.start.states().len() != net.skeleton().len() {
        return Err(GenError::Param("start state does not cover every node".into()));
    }
    let p_start = net.joint_prob(&params.start);
    let g0 = gamma0(p_start)?;
    let nb = layout.nb();
    let (a, c) = (params.probe_bits_a, params.pe_steps_c);
    let qubits = qubit_count(nb, a, c);
    let q = Layout { nb, a };

    let mut v = v_standin(net, layout, 0)?;
    v.extend(v_standin(net, layout, nb)?);
    let pe = phase_estimation(&q, c, &v);
    let pe_inv = inverse(&pe);
    let x0 = layout.encode(params.start.states());

    let mut e = Emitter { circuit: Circuit::new(qubits)?, v_lines: Vec::new(), omit_v: params.omit_v };
    for (nit, &bit) in x0.iter().enumerate() {
        if bit {
            e.push(Gate::fixed(GateKind::SigX, nit).into(), false)?;
        }
    }
    let schedule = afga_schedule(g0, params.delta_lambda_degs, params.gamma_tol_degs, params.max_grover_steps);
    for &gamma in &schedule {
        e.items(&pe)?;
        let others = (1..a * c).map(|k| Control::f(q.probe(0, 0) + k));
        let target = Gate::angled(GateKind::P0Ph, params.delta_lambda_degs, q.probe(0, 0)).with_controls(others);
        e.push(target.into(), false)?;
        e.items(&pe_inv)?;
        let source = match x0.split_first() {
            None => Gate::phase(gamma),
            Some((&b0, rest)) => {
                let kind = if b0 { GateKind::P1Ph } else { GateKind::P0Ph };
                let ctl = rest.iter().enumerate().map(|(k, &b)| Control { bit: k + 1, on: b });
                Gate::angled(kind, gamma, 0).with_controls(ctl)
            }
        };
        e.push(source.into(), false)?;
    }

    let mut circuit = e.circuit;
    circuit.relabel_loops()?;
    let derived = DerivedOutputs {
        gamma0_degs: g0,
        p_start,
        qubit_count: qubits,
        elementary_op_count: count_elementary(&circuit)?,
        grover_steps_used: schedule.len(),
    };
    Ok(Built { circuit, v_lines: e.v_lines, schedule, derived })
}

pub fn generate_circuit(
    net: &BayesNet,
    layout: &NitLayout,
    params: &GenParams,
) -> Result<(Circuit, DerivedOutputs), GenError> {
    let b = build_circuit(net, layout, params)?;
    Ok((b.circuit, b.derived))
}

/// Loads the three inputs from `folder`, generates, and writes the English,
/// Picture and Log files there. `start` is resolved against the loaded net.
pub fn write_outputs(
    folder: &Path,
    params: &GenParams,
    net: &BayesNet,
    clobber: bool,
) -> Result<(DerivedOutputs, Vec<PathBuf>), GenError> {
    let layout = NitLayout::build(net.skeleton());
    let (circuit, derived) = generate_circuit(net, &layout, params)?;
    let skel = net.skeleton();
    let start = skel
        .nodes()
        .iter()
        .zip(params.start.states())
        .map(|(node, &s)| {
            let names = state_names(skel, &layout, node.name()).expect("node exists");
            (node.name().to_string(), names[s].clone())
        })
        .collect();
    let folder_name = fs::canonicalize(folder).unwrap_or_else(|_| folder.to_path_buf()).display().to_string();
    let log = emit_log(&LogInfo { folder: folder_name, start, params: params.clone(), derived: derived.clone() });
    let files = [(ENGLISH_FILE, emit_english(&circuit)), (PICTURE_FILE, emit_picture(&circuit)), (LOG_FILE, log)];
    if !clobber {
        if let Some((name, _)) = files.iter().find(|(name, _)| folder.join(name).exists()) {
            return Err(GenError::Exists { path: folder.join(name).display().to_string() });
        }
    }
    let paths = files.iter().map(|(name, text)| write_file(folder.join(name), text, true)).collect::<Result<_, _>>()?;
    Ok((derived, paths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bayesnet::Instantiation;
    use crate::circuit::validate_circuit;
    use crate::oracle::count_ops_by_expansion;

    fn three() -> BayesNet {
        BayesNet::from_texts(
            "# A\n# B A C\n# C",
            "# A a1 a2 a3\n# B b1 b2\n# C c1 c2",
            "# A a1 .2 a2 .5 a3 .3\n# B b1 a1 c1 .7 b2 a1 c1 .3 b1 a1 c2 .4 b2 a1 c2 .6 b1 a2 c1 .5 b2 a2 c1 .5 \
             b1 a2 c2 .1 b2 a2 c2 .9 b1 a3 c1 .8 b2 a3 c1 .2 b1 a3 c2 .3 b2 a3 c2 .7\n# C c1 .6 c2 .4",
        )
        .unwrap()
    }

    fn params(net: &BayesNet, spec: &str) -> GenParams {
        GenParams {
            probe_bits_a: 2,
            pe_steps_c: 3,
            max_grover_steps: 4,
            gamma_tol_degs: 1.0,
            delta_lambda_degs: 60.0,
            omit_v: false,
            start: Instantiation::parse(net.skeleton(), spec).unwrap(),
            seed: None,
        }
    }

    #[test]
    fn structure_and_counts() {
        let n = three();
        let l = NitLayout::build(n.skeleton());
        let p = params(&n, "A=a2,B=b1,C=c2");
        let b = build_circuit(&n, &l, &p).unwrap();
        assert_eq!(b.derived.qubit_count, 14);
        assert_eq!(b.circuit.qubits(), 14);
        assert!(validate_circuit(&b.circuit).is_empty());
        assert_eq!(b.derived.elementary_op_count, count_ops_by_expansion(&b.circuit).unwrap());
        assert_eq!(b.derived.grover_steps_used, b.schedule.len());
        assert_eq!(b.v_lines.len(), b.circuit.len());
        // a2 is decimal 1 -> nit 0 set; c2 -> nit 3 set
        let prep: Vec<_> = b.circuit.ops().iter().take(2).cloned().collect();
        assert_eq!(prep, vec![Gate::fixed(GateKind::SigX, 0).into(), Gate::fixed(GateKind::SigX, 3).into()]);
    }

    #[test]
    fn omit_v_drops_exactly_v_lines() {
        let n = three();
        let l = NitLayout::build(n.skeleton());
        let mut p = params(&n, "A=a1,B=b1,C=c1");
        let full = build_circuit(&n, &l, &p).unwrap();
        p.omit_v = true;
        let lean = build_circuit(&n, &l, &p).unwrap();
        let kept: Vec<Op> =
            full.circuit.ops().iter().zip(&full.v_lines).filter(|(_, v)| !**v).map(|(o, _)| o.clone()).collect();
        assert_eq!(lean.circuit.ops(), kept.as_slice());
        assert!(full.derived.elementary_op_count > lean.derived.elementary_op_count);
    }

    #[test]
    fn tolerance_above_gamma0_gives_prep_only() {
        let n = three();
        let l = NitLayout::build(n.skeleton());
        let mut p = params(&n, "A=a1,B=b1,C=c1");
        p.gamma_tol_degs = 179.0;
        let b = build_circuit(&n, &l, &p).unwrap();
        assert!(b.schedule.is_empty());
        assert!(b.circuit.ops().iter().all(|o| matches!(o, Op::Gate(g) if g.kind == GateKind::SigX)));
    }

    #[test]
    fn zero_probability_start() {
        let n = BayesNet::from_texts("# X", "# X x0 x1", "# X x0 1").unwrap();
        let l = NitLayout::build(n.skeleton());
        let p = params(&n, "X=x1");
        assert_eq!(build_circuit(&n, &l, &p), Err(GenError::ZeroProbability));
    }

    #[test]
    fn bad_params() {
        let n = three();
        let l = NitLayout::build(n.skeleton());
        let mut p = params(&n, "A=a1,B=b1,C=c1");
        p.probe_bits_a = 0;
        assert!(matches!(build_circuit(&n, &l, &p), Err(GenError::Param(_))));
    }
}
