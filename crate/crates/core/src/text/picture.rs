//! ASCII picture language. Qubit `q` of an `n`-qubit circuit sits at
//! 0-based column `4 * (n - 1 - q)`, so qubit 0 is rightmost.
//!
//! Inside the span between the leftmost and rightmost active qubit, gaps are
//! `-` and untouched qubits show `+`; outside it, qubits show `|`. Two- and
//! three-character tokens (`Rx`, `0P`, `(12`, ...) start on their qubit
//! column and overhang to the right, except `Ph`, which ends on its column
//! (it starts on the column itself only for the leftmost qubit). Trailing
//! spaces are trimmed.

use super::{TextError, TextErrorKind};
use crate::circuit::{Circuit, Control, GateKind, MuxControl, Op};

/// The symbol drawn at a gate's target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Glyph {
    Swap,
    Ph,
    P0,
    P1,
    X,
    Y,
    Z,
    H,
    Rx,
    /// Plain y-rotation or y-multiplexor; the two differ only by `(k` marks.
    Ry,
    Rz,
    R,
}

impl Glyph {
    pub fn of(kind: GateKind) -> Self {
        match kind {
            GateKind::Swap => Glyph::Swap,
            GateKind::Phas => Glyph::Ph,
            GateKind::P0Ph => Glyph::P0,
            GateKind::P1Ph => Glyph::P1,
            GateKind::SigX => Glyph::X,
            GateKind::SigY => Glyph::Y,
            GateKind::SigZ => Glyph::Z,
            GateKind::Had2 => Glyph::H,
            GateKind::RotX => Glyph::Rx,
            GateKind::RotY | GateKind::MpY => Glyph::Ry,
            GateKind::RotZ => Glyph::Rz,
            GateKind::RotN => Glyph::R,
        }
    }

    fn token(self) -> &'static str {
        match self {
            Glyph::Swap => "<",
            Glyph::Ph => "Ph",
            Glyph::P0 => "0P",
            Glyph::P1 => "@P",
            Glyph::X => "X",
            Glyph::Y => "Y",
            Glyph::Z => "Z",
            Glyph::H => "H",
            Glyph::Rx => "Rx",
            Glyph::Ry => "Ry",
            Glyph::Rz => "Rz",
            Glyph::R => "R",
        }
    }
}

/// What a picture line tells about an op: everything except angles.
/// Controls and mux controls are ordered left to right (descending bit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PictureOp {
    Gate { glyph: Glyph, targets: Vec<usize>, controls: Vec<Control>, mux: Vec<MuxControl> },
    Loop { label: usize, reps: u64 },
    Next { label: usize },
}

/// A parsed Picture File.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Picture {
    /// Qubit count implied by the line widths; 0 when no gate lines exist.
    pub qubits: usize,
    pub ops: Vec<PictureOp>,
}

/// Angle-erased view of `op`. `label` overrides a stored loop label.
pub fn project(op: &Op, label: Option<usize>) -> PictureOp {
    match op {
        Op::Loop { label: l, reps } => PictureOp::Loop { label: label.unwrap_or(*l), reps: *reps },
        Op::Next { label: l } => PictureOp::Next { label: label.unwrap_or(*l) },
        Op::Gate(g) => {
            let mut controls = g.controls.clone();
            controls.sort_by_key(|c| std::cmp::Reverse(c.bit));
            let mut mux = g.mux.clone();
            mux.sort_by_key(|m| std::cmp::Reverse(m.bit));
            PictureOp::Gate { glyph: Glyph::of(g.kind), targets: g.targets.clone(), controls, mux }
        }
    }
}

fn column(qubits: usize, q: usize) -> usize {
    4 * (qubits - 1 - q)
}

fn put(buf: &mut Vec<u8>, at: usize, token: &str) {
    if buf.len() < at + token.len() {
        buf.resize(at + token.len(), b' ');
    }
    buf[at..at + token.len()].copy_from_slice(token.as_bytes());
}

/// Lowest qubit without a control, where `Ph` is drawn.
fn phase_bit(controls: &[Control], qubits: usize) -> Option<usize> {
    (0..qubits).find(|q| controls.iter().all(|c| c.bit != *q))
}

/// Draws one picture line for a circuit of `qubits` qubits.
pub fn render_picture_op(op: &PictureOp, qubits: usize) -> String {
    let (glyph, targets, controls, mux) = match op {
        PictureOp::Loop { label, reps } => return format!("LOOP {label} REPS:{reps}"),
        PictureOp::Next { label } => return format!("NEXT {label}"),
        PictureOp::Gate { glyph, targets, controls, mux } => (*glyph, targets, controls, mux),
    };
    let mut marks: Vec<(usize, String)> = Vec::new();
    match glyph {
        Glyph::Swap => {
            marks.push((targets[0], "<".into()));
            marks.push((targets[1], ">".into()));
        }
        Glyph::Ph => {
            if let Some(q) = phase_bit(controls, qubits) {
                marks.push((q, "Ph".into()));
            }
        }
        _ => marks.push((targets[0], glyph.token().into())),
    }
    marks.extend(controls.iter().map(|c| (c.bit, if c.on { "@" } else { "0" }.to_string())));
    marks.extend(mux.iter().map(|m| (m.bit, format!("({}", m.name))));

    let width = column(qubits, 0) + 1;
    let mut buf = vec![b' '; width];
    for q in 0..qubits {
        buf[column(qubits, q)] = b'|';
    }
    let cols: Vec<usize> = marks.iter().map(|(q, _)| column(qubits, *q)).collect();
    if let (Some(&lo), Some(&hi)) = (cols.iter().min(), cols.iter().max()) {
        for (i, b) in buf.iter_mut().enumerate().take(hi + 1).skip(lo) {
            *b = if i % 4 == 0 { b'+' } else { b'-' };
        }
    }
    for ((_, token), &col) in marks.iter().zip(&cols) {
        let start = if token == "Ph" && col > 0 { col - 1 } else { col };
        put(&mut buf, start, token);
    }
    let s = String::from_utf8(buf).expect("ASCII picture");
    s.trim_end().to_string()
}

/// Renders the whole Picture File, line-parallel to [`super::emit_english`].
pub fn emit_picture(circuit: &Circuit) -> String {
    let labels = circuit.canonical_labels().unwrap_or_else(|_| vec![None; circuit.len()]);
    let mut out = String::new();
    for (op, label) in circuit.ops().iter().zip(labels) {
        out.push_str(&render_picture_op(&project(op, label), circuit.qubits()));
        out.push('\n');
    }
    out
}

fn loop_line(text: &str, line: usize) -> Option<Result<PictureOp, TextError>> {
    let toks: Vec<&str> = text.split_ascii_whitespace().collect();
    let bad = |t: &str| TextError::new(line, TextErrorKind::BadNumber(t.to_string()));
    let num = |t: &str| t.parse::<u64>().ok().filter(|_| t.bytes().all(|b| b.is_ascii_digit()));
    match toks.first().copied() {
        Some("LOOP") => Some((|| {
            let label = toks.get(1).ok_or_else(|| bad(""))?;
            let label = num(label).ok_or_else(|| bad(label))? as usize;
            let reps = match &toks[2..] {
                [r] if r.starts_with("REPS:") => &r[5..],
                ["REPS:", r] => r,
                _ => return Err(TextError::new(line, TextErrorKind::Syntax("expected REPS:N".into()))),
            };
            let reps = num(reps).filter(|&r| r > 0).ok_or_else(|| bad(reps))?;
            if label != line {
                return Err(TextError::new(line, TextErrorKind::LoopLabel { expected: line, found: label }));
            }
            Ok(PictureOp::Loop { label, reps })
        })()),
        Some("NEXT") => Some(match &toks[1..] {
            [l] => num(l).map(|l| PictureOp::Next { label: l as usize }).ok_or_else(|| bad(l)),
            _ => Err(TextError::new(line, TextErrorKind::Syntax("expected NEXT k".into()))),
        }),
        _ => None,
    }
}

/// Parses one picture line; returns the op and the qubit count its width
/// implies (`None` for LOOP/NEXT lines).
pub fn parse_picture_line(text: &str, line: usize) -> Result<(PictureOp, Option<usize>), TextError> {
    if !text.is_ascii() {
        return Err(TextError::new(line, TextErrorKind::NonAscii));
    }
    if let Some(r) = loop_line(text, line) {
        return r.map(|op| (op, None));
    }
    let err = |kind| TextError::new(line, kind);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(err(TextErrorKind::EmptyLine));
    }
    let qubits = (bytes.len() - 1) / 4 + 1;
    let at = |i: usize| bytes.get(i).copied().unwrap_or(b' ');

    let mut glyphs: Vec<(Glyph, usize)> = Vec::new();
    let mut swap_lt = Vec::new();
    let mut swap_gt = Vec::new();
    let mut controls = Vec::new();
    let mut mux = Vec::new();
    for q in (0..qubits).rev() {
        let col = column(qubits, q);
        let (c, next) = (at(col), at(col + 1));
        match c {
            b'|' | b'+' => {}
            b'@' if next == b'P' => glyphs.push((Glyph::P1, q)),
            b'0' if next == b'P' => glyphs.push((Glyph::P0, q)),
            b'@' => controls.push(Control::t(q)),
            b'0' => controls.push(Control::f(q)),
            b'<' => swap_lt.push(q),
            b'>' => swap_gt.push(q),
            b'X' => glyphs.push((Glyph::X, q)),
            b'Y' => glyphs.push((Glyph::Y, q)),
            b'Z' => glyphs.push((Glyph::Z, q)),
            b'H' => glyphs.push((Glyph::H, q)),
            b'R' => glyphs.push((
                match next {
                    b'x' => Glyph::Rx,
                    b'y' => Glyph::Ry,
                    b'z' => Glyph::Rz,
                    _ => Glyph::R,
                },
                q,
            )),
            b'P' if col == 0 && next == b'h' => glyphs.push((Glyph::Ph, q)),
            b'h' if col > 0 && at(col - 1) == b'P' => glyphs.push((Glyph::Ph, q)),
            b'(' => {
                let digits: String =
                    bytes[col + 1..].iter().take_while(|b| b.is_ascii_digit()).map(|&b| b as char).collect();
                let name = digits
                    .parse()
                    .map_err(|_| err(TextErrorKind::Syntax(format!("multiplexor mark at column {col} has no name"))))?;
                mux.push(MuxControl { bit: q, name });
            }
            other => return Err(err(TextErrorKind::UnknownSymbol { column: col, symbol: other as char })),
        }
    }

    let op = match (glyphs.as_slice(), swap_lt.as_slice(), swap_gt.as_slice()) {
        ([], [], []) => return Err(err(TextErrorKind::NoOperation)),
        ([], [a], [b]) => PictureOp::Gate { glyph: Glyph::Swap, targets: vec![*a, *b], controls, mux },
        ([(Glyph::Ph, _)], [], []) => PictureOp::Gate { glyph: Glyph::Ph, targets: vec![], controls, mux },
        ([(g, q)], [], []) => PictureOp::Gate { glyph: *g, targets: vec![*q], controls, mux },
        _ => return Err(err(TextErrorKind::Syntax("line must hold exactly one operation".into()))),
    };

    let canonical = render_picture_op(&op, qubits);
    if canonical != text {
        let col =
            canonical.bytes().zip(text.bytes()).position(|(a, b)| a != b).unwrap_or(canonical.len().min(text.len()));
        let kind = match text.as_bytes().get(col) {
            Some(&b) if col % 4 != 0 && b != b' ' && b != b'-' => {
                TextErrorKind::StrayMark { column: col, symbol: b as char }
            }
            _ => TextErrorKind::Malformed(col),
        };
        return Err(err(kind));
    }
    Ok((op, Some(qubits)))
}

/// Parses a Picture File. All gate lines must imply the same qubit count.
pub fn parse_picture(text: &str) -> Result<Picture, TextError> {
    let mut ops = Vec::new();
    let mut qubits = 0;
    let mut open: Vec<usize> = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let (op, width) = parse_picture_line(l, i)?;
        if let Some(w) = width {
            if qubits != 0 && w != qubits {
                return Err(TextError::new(i, TextErrorKind::Width(qubits, w)));
            }
            qubits = w;
        }
        match &op {
            PictureOp::Loop { label, .. } => open.push(*label),
            PictureOp::Next { label } => match open.pop() {
                Some(l) if l == *label => {}
                Some(l) => {
                    return Err(TextError::new(
                        i,
                        crate::circuit::CircuitError::LabelMismatch { open: l, next: *label }.into(),
                    ))
                }
                None => {
                    return Err(TextError::new(
                        i,
                        crate::circuit::CircuitError::NextWithoutLoop { label: *label }.into(),
                    ))
                }
            },
            PictureOp::Gate { .. } => {}
        }
        ops.push(op);
    }
    if let Some(label) = open.pop() {
        return Err(TextError::new(label, crate::circuit::CircuitError::UnclosedLoop { label }.into()));
    }
    Ok(Picture { qubits, ops })
}
