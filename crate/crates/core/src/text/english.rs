use super::{TextError, TextErrorKind};
use crate::circuit::{validate_circuit, Circuit, Control, Gate, GateKind, MuxControl, Op};
use crate::num::decimal;

fn controls_clause(g: &Gate) -> String {
    let mut parts: Vec<String> = g.mux.iter().map(|m| format!("{}({}", m.bit, m.name)).collect();
    parts.extend(g.controls.iter().map(|c| format!("{}{}", c.bit, if c.on { 'T' } else { 'F' })));
    if parts.is_empty() {
        String::new()
    } else {
        format!(" IF {}", parts.join(" "))
    }
}

fn angles(a: &[f64]) -> String {
    a.iter().map(|x| decimal(*x)).collect::<Vec<_>>().join(" ")
}

/// One English line. `label` overrides the stored loop label.
pub fn english_line(op: &Op, label: Option<usize>) -> String {
    match op {
        Op::Loop { label: l, reps } => format!("LOOP {} REPS:{reps}", label.unwrap_or(*l)),
        Op::Next { label: l } => format!("NEXT {}", label.unwrap_or(*l)),
        Op::Gate(g) => {
            let kind = g.kind;
            let ifs = controls_clause(g);
            match kind {
                GateKind::Swap => format!("SWAP {} {}{ifs}", g.targets[0], g.targets[1]),
                GateKind::Phas => format!("PHAS {}{ifs}", angles(&g.angles)),
                GateKind::MpY => format!("MP_Y AT {}{ifs} BY {}", g.targets[0], angles(&g.angles)),
                _ if g.angles.is_empty() => format!("{kind} AT {}{ifs}", g.targets[0]),
                _ => format!("{kind} {} AT {}{ifs}", angles(&g.angles), g.targets[0]),
            }
        }
    }
}

/// Renders a circuit, one line per op, with loop labels recomputed from
/// line positions.
pub fn emit_english(circuit: &Circuit) -> String {
    let labels = circuit.canonical_labels().unwrap_or_else(|_| vec![None; circuit.len()]);
    let mut out = String::new();
    for (op, label) in circuit.ops().iter().zip(labels) {
        out.push_str(&english_line(op, label));
        out.push('\n');
    }
    out
}

struct Cursor<'a> {
    toks: Vec<&'a str>,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> TextError {
        TextError::new(self.line, TextErrorKind::Syntax(msg.into()))
    }
    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).copied()
    }
    fn next(&mut self, what: &str) -> Result<&'a str, TextError> {
        let t = self.peek().ok_or_else(|| self.err(format!("missing {what}")))?;
        self.pos += 1;
        Ok(t)
    }
    fn expect(&mut self, word: &str) -> Result<(), TextError> {
        match self.next(word)? {
            t if t == word => Ok(()),
            t => Err(self.err(format!("expected {word}, found {t:?}"))),
        }
    }
    fn uint(&mut self, what: &str) -> Result<usize, TextError> {
        let t = self.next(what)?;
        parse_uint(t).ok_or_else(|| TextError::new(self.line, TextErrorKind::BadNumber(t.to_string())))
    }
    fn angle(&mut self) -> Result<f64, TextError> {
        let t = self.next("angle")?;
        parse_angle(t).ok_or_else(|| TextError::new(self.line, TextErrorKind::BadNumber(t.to_string())))
    }
    fn done(&self) -> Result<(), TextError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
        }
    }
}

fn parse_uint(t: &str) -> Option<usize> {
    if t.bytes().all(|b| b.is_ascii_digit()) {
        t.parse().ok()
    } else {
        None
    }
}

fn parse_angle(t: &str) -> Option<f64> {
    t.parse::<f64>().ok().filter(|a| a.is_finite())
}

fn parse_control_token(t: &str) -> Option<Result<Control, MuxControl>> {
    if let Some((bit, name)) = t.split_once('(') {
        return Some(Err(MuxControl { bit: parse_uint(bit)?, name: parse_uint(name)? }));
    }
    let (bit, pol) = t.split_at(t.len().checked_sub(1)?);
    let on = match pol {
        "T" => true,
        "F" => false,
        _ => return None,
    };
    Some(Ok(Control { bit: parse_uint(bit)?, on }))
}

/// Parses one English line at 0-based position `line`. LOOP labels must
/// equal `line`.
pub fn parse_english_line(text: &str, line: usize, qubits: usize) -> Result<Op, TextError> {
    let op = parse_unchecked(text, line)?;
    if let Op::Gate(g) = &op {
        g.check(qubits).map_err(|e| TextError::new(line, e.into()))?;
    }
    Ok(op)
}

/// Smallest qubit count that every line of an English file fits in.
pub fn english_qubits(text: &str) -> Result<usize, TextError> {
    let mut max = 0;
    for (i, l) in text.lines().enumerate() {
        if let Op::Gate(g) = parse_unchecked(l, i)? {
            max = g.bits().map(|b| b + 1).fold(max, usize::max);
        }
    }
    Ok(max.max(1))
}

fn parse_unchecked(text: &str, line: usize) -> Result<Op, TextError> {
    if !text.is_ascii() {
        return Err(TextError::new(line, TextErrorKind::NonAscii));
    }
    let toks: Vec<&str> = text.split_ascii_whitespace().collect();
    let Some(&opcode) = toks.first() else {
        return Err(TextError::new(line, TextErrorKind::EmptyLine));
    };
    let mut cur = Cursor { toks, pos: 1, line };
    match opcode {
        "LOOP" => {
            let label = cur.uint("loop label")?;
            let reps_tok = cur.next("REPS")?;
            let reps_text = match reps_tok.strip_prefix("REPS:") {
                Some("") => cur.next("repetition count")?,
                Some(n) => n,
                None => return Err(cur.err(format!("expected REPS:N, found {reps_tok:?}"))),
            };
            let reps = parse_uint(reps_text)
                .ok_or_else(|| TextError::new(line, TextErrorKind::BadNumber(reps_text.to_string())))?;
            cur.done()?;
            if label != line {
                return Err(TextError::new(line, TextErrorKind::LoopLabel { expected: line, found: label }));
            }
            if reps == 0 {
                return Err(TextError::new(line, crate::circuit::CircuitError::ZeroReps.into()));
            }
            return Ok(Op::Loop { label, reps: reps as u64 });
        }
        "NEXT" => {
            let label = cur.uint("loop label")?;
            cur.done()?;
            return Ok(Op::Next { label });
        }
        _ => {}
    }
    let kind = GateKind::from_mnemonic(opcode)
        .ok_or_else(|| TextError::new(line, TextErrorKind::UnknownOpcode(opcode.to_string())))?;

    let mut gate = Gate { kind, targets: Vec::new(), angles: Vec::new(), controls: Vec::new(), mux: Vec::new() };
    match kind {
        GateKind::Swap => {
            gate.targets.push(cur.uint("bit")?);
            gate.targets.push(cur.uint("bit")?);
        }
        GateKind::Phas => gate.angles.push(cur.angle()?),
        GateKind::MpY => {}
        _ => {
            for _ in 0..kind.angle_count(0) {
                gate.angles.push(cur.angle()?);
            }
        }
    }
    if kind.target_count() == 1 {
        cur.expect("AT")?;
        gate.targets.push(cur.uint("target bit")?);
    }
    if cur.peek() == Some("IF") {
        cur.pos += 1;
        while let Some(t) = cur.peek() {
            if t == "BY" {
                break;
            }
            match parse_control_token(t) {
                Some(Ok(c)) => gate.controls.push(c),
                Some(Err(m)) if kind == GateKind::MpY => gate.mux.push(m),
                Some(Err(_)) => return Err(cur.err(format!("{kind} cannot take multiplexor control {t:?}"))),
                None => return Err(cur.err(format!("bad control {t:?}"))),
            }
            cur.pos += 1;
        }
        if gate.controls.is_empty() && gate.mux.is_empty() {
            return Err(cur.err("IF without controls"));
        }
    }
    if kind == GateKind::MpY {
        cur.expect("BY")?;
        while cur.peek().is_some() {
            gate.angles.push(cur.angle()?);
        }
    }
    cur.done()?;
    Ok(Op::Gate(gate))
}

/// Parses an English file for a circuit on `qubits` qubits.
pub fn parse_english(text: &str, qubits: usize) -> Result<Circuit, TextError> {
    let mut circuit = Circuit::new(qubits).map_err(|e| TextError::new(0, e.into()))?;
    for (i, l) in text.lines().enumerate() {
        let op = parse_english_line(l, i, qubits)?;
        circuit.push(op).map_err(|e| TextError::new(i, e.into()))?;
    }
    if let Some(v) = validate_circuit(&circuit).into_iter().next() {
        return Err(TextError::new(v.line, v.error.into()));
    }
    Ok(circuit)
}
