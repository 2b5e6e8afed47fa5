//! In-memory circuit: an ordered list of elementary operations over an
//! indexed qubit array, plus `LOOP`/`NEXT` repetition markers.
//!
//! Angles are kept in degrees everywhere.

use std::fmt;

use thiserror::Error;

/// Upper bound on multiplexor controls (2^20 angles per line).
pub const MAX_MUX_CONTROLS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Swap,
    Phas,
    P0Ph,
    P1Ph,
    SigX,
    SigY,
    SigZ,
    Had2,
    RotX,
    RotY,
    RotZ,
    RotN,
    MpY,
}

impl GateKind {
    pub const ALL: [GateKind; 13] = [
        GateKind::Swap,
        GateKind::Phas,
        GateKind::P0Ph,
        GateKind::P1Ph,
        GateKind::SigX,
        GateKind::SigY,
        GateKind::SigZ,
        GateKind::Had2,
        GateKind::RotX,
        GateKind::RotY,
        GateKind::RotZ,
        GateKind::RotN,
        GateKind::MpY,
    ];

    /// The four-letter opcode used in English files.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::Swap => "SWAP",
            GateKind::Phas => "PHAS",
            GateKind::P0Ph => "P0PH",
            GateKind::P1Ph => "P1PH",
            GateKind::SigX => "SIGX",
            GateKind::SigY => "SIGY",
            GateKind::SigZ => "SIGZ",
            GateKind::Had2 => "HAD2",
            GateKind::RotX => "ROTX",
            GateKind::RotY => "ROTY",
            GateKind::RotZ => "ROTZ",
            GateKind::RotN => "ROTN",
            GateKind::MpY => "MP_Y",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        GateKind::ALL.into_iter().find(|k| k.mnemonic() == s)
    }

    pub fn target_count(self) -> usize {
        match self {
            GateKind::Swap => 2,
            GateKind::Phas => 0,
            _ => 1,
        }
    }

    /// Required angle count; for `MP_Y` this depends on the mux controls.
    pub fn angle_count(self, mux_controls: usize) -> usize {
        match self {
            GateKind::Phas | GateKind::P0Ph | GateKind::P1Ph | GateKind::RotX | GateKind::RotY | GateKind::RotZ => 1,
            GateKind::RotN => 3,
            GateKind::MpY => 1 << mux_controls,
            GateKind::Swap | GateKind::SigX | GateKind::SigY | GateKind::SigZ | GateKind::Had2 => 0,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// `bT` (fires when the bit is 1) or `bF` (fires when it is 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub bit: usize,
    pub on: bool,
}

impl Control {
    pub fn t(bit: usize) -> Self {
        Control { bit, on: true }
    }
    pub fn f(bit: usize) -> Self {
        Control { bit, on: false }
    }
}

/// Multiplexor control `bit(name`. The angle index of a configuration has
/// bit `name` equal to the value of qubit `bit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MuxControl {
    pub bit: usize,
    pub name: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub angles: Vec<f64>,
    pub controls: Vec<Control>,
    pub mux: Vec<MuxControl>,
}

impl Gate {
    fn bare(kind: GateKind, targets: Vec<usize>, angles: Vec<f64>) -> Self {
        Gate { kind, targets, angles, controls: Vec::new(), mux: Vec::new() }
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::bare(GateKind::Swap, vec![a, b], vec![])
    }
    pub fn phase(degs: f64) -> Self {
        Self::bare(GateKind::Phas, vec![], vec![degs])
    }
    /// Angle-free one-qubit gates: SIGX, SIGY, SIGZ, HAD2.
    pub fn fixed(kind: GateKind, target: usize) -> Self {
        Self::bare(kind, vec![target], vec![])
    }
    /// One-angle one-qubit gates: P0PH, P1PH, ROTX, ROTY, ROTZ.
    pub fn angled(kind: GateKind, degs: f64, target: usize) -> Self {
        Self::bare(kind, vec![target], vec![degs])
    }
    pub fn rotn(degs: [f64; 3], target: usize) -> Self {
        Self::bare(GateKind::RotN, vec![target], degs.to_vec())
    }
    /// `mux_bits` are listed left to right, i.e. named `k, k-1, ..., 0`.
    pub fn mp_y(target: usize, mux_bits: &[usize], angles: Vec<f64>) -> Self {
        let k = mux_bits.len();
        let mux = mux_bits.iter().enumerate().map(|(i, &bit)| MuxControl { bit, name: k - 1 - i }).collect();
        Gate { kind: GateKind::MpY, targets: vec![target], angles, controls: Vec::new(), mux }
    }

    pub fn with_controls(mut self, controls: impl IntoIterator<Item = Control>) -> Self {
        self.controls.extend(controls);
        self
    }

    /// Every qubit the gate touches.
    pub fn bits(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets.iter().copied().chain(self.controls.iter().map(|c| c.bit)).chain(self.mux.iter().map(|m| m.bit))
    }

    pub fn check(&self, qubits: usize) -> Result<(), CircuitError> {
        let kind = self.kind;
        if self.targets.len() != kind.target_count() {
            return Err(CircuitError::TargetCount { kind, expected: kind.target_count(), found: self.targets.len() });
        }
        if kind != GateKind::MpY && !self.mux.is_empty() {
            return Err(CircuitError::MuxOnNonMultiplexor(kind));
        }
        if self.mux.len() > MAX_MUX_CONTROLS {
            return Err(CircuitError::TooManyMuxControls(self.mux.len()));
        }
        let k = self.mux.len();
        if self.mux.iter().enumerate().any(|(i, m)| m.name != k - 1 - i) {
            return Err(CircuitError::MuxNames);
        }
        let expected = kind.angle_count(k);
        if self.angles.len() != expected {
            return Err(CircuitError::AngleCount { kind, expected, found: self.angles.len() });
        }
        if self.angles.iter().any(|a| !a.is_finite()) {
            return Err(CircuitError::NonFiniteAngle);
        }
        let mut seen = vec![false; qubits];
        for bit in self.bits() {
            if bit >= qubits {
                return Err(CircuitError::BitOutOfRange { bit, qubits });
            }
            if std::mem::replace(&mut seen[bit], true) {
                return Err(CircuitError::DuplicateBit(bit));
            }
        }
        if kind == GateKind::Phas && self.controls.len() >= qubits {
            return Err(CircuitError::PhaseNeedsFreeQubit);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    Gate(Gate),
    Loop { label: usize, reps: u64 },
    Next { label: usize },
}

impl From<Gate> for Op {
    fn from(g: Gate) -> Self {
        Op::Gate(g)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("a circuit needs at least one qubit")]
    NoQubits,
    #[error("bit {bit} out of range for {qubits} qubits")]
    BitOutOfRange { bit: usize, qubits: usize },
    #[error("bit {0} used twice in one gate")]
    DuplicateBit(usize),
    #[error("{kind} takes {expected} target bit(s), got {found}")]
    TargetCount { kind: GateKind, expected: usize, found: usize },
    #[error("{kind} takes {expected} angle(s), got {found}")]
    AngleCount { kind: GateKind, expected: usize, found: usize },
    #[error("angles must be finite")]
    NonFiniteAngle,
    #[error("{0} cannot have multiplexor controls")]
    MuxOnNonMultiplexor(GateKind),
    #[error("multiplexor control names must run k, k-1, ..., 0 from left to right")]
    MuxNames,
    #[error("{0} multiplexor controls exceed the limit of {MAX_MUX_CONTROLS}")]
    TooManyMuxControls(usize),
    #[error("PHAS needs at least one qubit without a control")]
    PhaseNeedsFreeQubit,
    #[error("LOOP needs at least one repetition")]
    ZeroReps,
    #[error("NEXT {label} without an open LOOP")]
    NextWithoutLoop { label: usize },
    #[error("NEXT {next} closes LOOP {open}")]
    LabelMismatch { open: usize, next: usize },
    #[error("LOOP {label} is never closed")]
    UnclosedLoop { label: usize },
    #[error("elementary operation count overflows 64 bits")]
    Overflow,
}

/// One finding of [`validate_circuit`], with its 0-based line.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitViolation {
    pub line: usize,
    pub error: CircuitError,
}

impl fmt::Display for CircuitViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubits: usize,
    ops: Vec<Op>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Result<Self, CircuitError> {
        if qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(Circuit { qubits, ops: Vec::new() })
    }

    /// Assembles a circuit without any checks; see [`validate_circuit`].
    pub fn from_ops(qubits: usize, ops: Vec<Op>) -> Self {
        Circuit { qubits, ops }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }
    pub fn ops(&self) -> &[Op] {
        &self.ops
    }
    pub fn len(&self) -> usize {
        self.ops.len()
    }
    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Appends an op, rejecting gates that break a per-gate invariant.
    /// Loop balance is only checked by [`validate_circuit`].
    pub fn push(&mut self, op: impl Into<Op>) -> Result<(), CircuitError> {
        let op = op.into();
        match &op {
            Op::Gate(g) => g.check(self.qubits)?,
            Op::Loop { reps: 0, .. } => return Err(CircuitError::ZeroReps),
            _ => {}
        }
        self.ops.push(op);
        Ok(())
    }

    /// Canonical loop labels: each LOOP is labelled with its own line index
    /// and each NEXT with the label of the LOOP it closes.
    pub fn canonical_labels(&self) -> Result<Vec<Option<usize>>, CircuitError> {
        let mut open = Vec::new();
        let mut out = vec![None; self.ops.len()];
        for (i, op) in self.ops.iter().enumerate() {
            match op {
                Op::Loop { .. } => {
                    open.push(i);
                    out[i] = Some(i);
                }
                Op::Next { label } => {
                    let start = open.pop().ok_or(CircuitError::NextWithoutLoop { label: *label })?;
                    out[i] = Some(start);
                }
                Op::Gate(_) => {}
            }
        }
        match open.pop() {
            Some(start) => Err(CircuitError::UnclosedLoop { label: start }),
            None => Ok(out),
        }
    }

    /// Rewrites loop labels to their canonical values.
    pub fn relabel_loops(&mut self) -> Result<(), CircuitError> {
        let labels = self.canonical_labels()?;
        for (op, l) in self.ops.iter_mut().zip(labels) {
            match op {
                Op::Loop { label, .. } | Op::Next { label } => *label = l.expect("loop line"),
                Op::Gate(_) => {}
            }
        }
        Ok(())
    }
}

/// Elementary-operation count: LOOP/NEXT lines count 0, any other line
/// counts the product of the repetitions of all loops enclosing it.
pub fn count_elementary(circuit: &Circuit) -> Result<u64, CircuitError> {
    let mut factors: Vec<(usize, u64)> = Vec::new();
    let mut multiplier: u64 = 1;
    let mut total: u64 = 0;
    for op in circuit.ops() {
        match op {
            Op::Gate(_) => total = total.checked_add(multiplier).ok_or(CircuitError::Overflow)?,
            Op::Loop { label, reps } => {
                factors.push((*label, multiplier));
                multiplier = multiplier.checked_mul(*reps).ok_or(CircuitError::Overflow)?;
            }
            Op::Next { label } => {
                let (open, outer) = factors.pop().ok_or(CircuitError::NextWithoutLoop { label: *label })?;
                if open != *label {
                    return Err(CircuitError::LabelMismatch { open, next: *label });
                }
                multiplier = outer;
            }
        }
    }
    match factors.pop() {
        Some((label, _)) => Err(CircuitError::UnclosedLoop { label }),
        None => Ok(total),
    }
}

/// Every invariant violation in `circuit`; empty means valid.
pub fn validate_circuit(circuit: &Circuit) -> Vec<CircuitViolation> {
    let mut report = Vec::new();
    if circuit.qubits == 0 {
        report.push(CircuitViolation { line: 0, error: CircuitError::NoQubits });
    }
    let mut open: Vec<(usize, usize)> = Vec::new();
    for (line, op) in circuit.ops.iter().enumerate() {
        let mut flag = |error| report.push(CircuitViolation { line, error });
        match op {
            Op::Gate(g) => {
                if let Err(e) = g.check(circuit.qubits) {
                    flag(e);
                }
            }
            Op::Loop { label, reps } => {
                if *reps == 0 {
                    flag(CircuitError::ZeroReps);
                }
                open.push((line, *label));
            }
            Op::Next { label } => match open.pop() {
                None => flag(CircuitError::NextWithoutLoop { label: *label }),
                Some((_, l)) if l != *label => flag(CircuitError::LabelMismatch { open: l, next: *label }),
                Some(_) => {}
            },
        }
    }
    for (line, label) in open {
        report.push(CircuitViolation { line, error: CircuitError::UnclosedLoop { label } });
    }
    report
}
