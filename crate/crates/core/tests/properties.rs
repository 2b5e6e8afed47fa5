use proptest::prelude::*;

use gibbsqc::bayesnet::{parse_probs, write_probs, BayesNet};
use gibbsqc::circuit::{count_elementary, validate_circuit, Circuit, GateKind, Op};
use gibbsqc::generator::{afga_schedule, build_circuit, gamma0, uniform_probs, GenParams, Variant};
use gibbsqc::nitcodes::NitLayout;
use gibbsqc::oracle::count_ops_by_expansion;
use gibbsqc::random::{random_circuit, random_net, CircuitShape};
use gibbsqc::text::{check_correspondence, emit_english, emit_picture, parse_english, parse_picture, project};

fn wide() -> CircuitShape {
    CircuitShape { max_qubits: 14, max_lines: 25, max_depth: 3, max_reps: 9 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn english_round_trip(seed in any::<u64>()) {
        let c = random_circuit(seed, wide());
        prop_assert_eq!(parse_english(&emit_english(&c), c.qubits()).unwrap(), c);
    }

    #[test]
    fn picture_projection(seed in any::<u64>()) {
        let c = random_circuit(seed, wide());
        let pic = emit_picture(&c);
        let parsed = parse_picture(&pic).unwrap();
        let want: Vec<_> = c.ops().iter().map(|o| project(o, None)).collect();
        prop_assert_eq!(parsed.ops, want);
        let has_gate = c.ops().iter().any(|o| matches!(o, Op::Gate(_)));
        if has_gate {
            prop_assert_eq!(parsed.qubits, c.qubits());
        }
        for line in pic.lines().filter(|l| !l.starts_with("LOOP") && !l.starts_with("NEXT")) {
            prop_assert!(line.len() <= 4 * (c.qubits() - 1) + 4);
            prop_assert!(!line.ends_with(' '));
        }
        prop_assert!(check_correspondence(&emit_english(&c), &pic).is_empty());
    }

    #[test]
    fn streaming_count_matches_unrolling(seed in any::<u64>()) {
        let c = random_circuit(seed, wide());
        prop_assert_eq!(count_elementary(&c).unwrap(), count_ops_by_expansion(&c).unwrap());
    }

    #[test]
    fn single_line_mutations_are_caught(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let c = random_circuit(seed, wide());
        prop_assume!(!c.is_empty());
        let i = pick.index(c.len());
        let mut ops = c.ops().to_vec();
        match &mut ops[i] {
            Op::Gate(g) => g.targets.push(c.qubits()),
            Op::Loop { reps, .. } => *reps = 0,
            Op::Next { label } => *label += 1,
        }
        prop_assert!(!validate_circuit(&Circuit::from_ops(c.qubits(), ops)).is_empty());
    }

    #[test]
    fn gamma0_is_decreasing(p in 1e-12f64..1.0, q in 1e-12f64..1.0) {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        let (g_lo, g_hi) = (gamma0(lo).unwrap(), gamma0(hi).unwrap());
        prop_assert!(g_lo >= g_hi);
        prop_assert!(g_lo <= 180.0 && g_hi >= 0.0);
    }

    #[test]
    fn schedule_contract(g0 in 0.0f64..180.0, dl in -180.0f64..180.0, tol in 0.01f64..40.0, cap in 1usize..64) {
        let s = afga_schedule(g0, dl, tol, cap);
        prop_assert!(s.len() <= cap);
        prop_assert!(s.iter().all(|&g| g >= tol));
        prop_assert!(s.windows(2).all(|w| w[1] < w[0]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn probs_file_round_trip(seed in any::<u64>()) {
        let net = random_net(seed, 5, 3);
        let back = BayesNet::from_texts(
            &gibbsqc::bayesnet::write_parents(net.skeleton()),
            &gibbsqc::bayesnet::write_states(net.skeleton()),
            &write_probs(&net),
        ).unwrap();
        prop_assert_eq!(back.cpts(), net.cpts());
    }

    #[test]
    fn uniform_variants_share_cpts(seed in any::<u64>()) {
        let net = random_net(seed, 5, 3);
        let s = net.skeleton();
        let f = parse_probs(&uniform_probs(s, Variant::F), s).unwrap();
        let t = parse_probs(&uniform_probs(s, Variant::T), s).unwrap();
        prop_assert_eq!(f, t);
    }

    #[test]
    fn generated_circuits_hold_their_contracts(seed in any::<u64>(), a in 1usize..4, c in 1usize..3, omit in any::<bool>()) {
        let net = random_net(seed, 4, 3);
        let layout = NitLayout::build(net.skeleton());
        let params = GenParams {
            probe_bits_a: a,
            pe_steps_c: c,
            max_grover_steps: 2,
            gamma_tol_degs: 0.1,
            delta_lambda_degs: 45.0,
            omit_v: omit,
            start: net.skeleton().random_instantiation(seed),
            seed: Some(seed),
        };
        let b = build_circuit(&net, &layout, &params).unwrap();
        prop_assert!(validate_circuit(&b.circuit).is_empty());
        prop_assert_eq!(b.derived.qubit_count, 2 * layout.nb() + a * c);
        prop_assert_eq!(b.derived.elementary_op_count, count_ops_by_expansion(&b.circuit).unwrap());
        let mut depth = 0usize;
        for (op, &v) in b.circuit.ops().iter().zip(&b.v_lines) {
            match op {
                Op::Loop { .. } => { depth += 1; prop_assert!(depth == 1); }
                Op::Next { .. } => depth -= 1,
                Op::Gate(g) => {
                    prop_assert_eq!(v, g.kind == GateKind::MpY);
                    if g.kind == GateKind::MpY {
                        let nb = layout.nb();
                        let t = g.targets[0];
                        let offset = if t >= nb { nb } else { 0 };
                        let blanket = layout.nit_blanket(net.skeleton(), t - offset).unwrap();
                        let mux: std::collections::BTreeSet<usize> = g.mux.iter().map(|m| m.bit - offset).collect();
                        prop_assert_eq!(mux, blanket);
                    }
                }
            }
        }
        if omit {
            prop_assert!(b.v_lines.iter().all(|v| !v));
        }
    }
}
