//! Line-by-line agreement between an English File and a Picture File.

use std::fmt;

use super::english::{english_qubits, parse_english_line};
use super::picture::{parse_picture_line, project, PictureOp};
use super::TextError;
use crate::circuit::Op;

/// One disagreement. `line` is 0-based; `None` for file-level problems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub line: Option<usize>,
    pub what: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.what),
            None => write!(f, "{}", self.what),
        }
    }
}

fn at(line: usize, what: impl Into<String>) -> Mismatch {
    Mismatch { line: Some(line), what: what.into() }
}

fn describe(op: &PictureOp) -> String {
    match op {
        PictureOp::Loop { label, reps } => format!("LOOP {label} REPS:{reps}"),
        PictureOp::Next { label } => format!("NEXT {label}"),
        PictureOp::Gate { glyph, .. } => format!("{glyph:?} gate"),
    }
}

fn compare(line: usize, eng: &PictureOp, pic: &PictureOp, out: &mut Vec<Mismatch>) {
    match (eng, pic) {
        (
            PictureOp::Gate { glyph: g1, targets: t1, controls: c1, mux: m1 },
            PictureOp::Gate { glyph: g2, targets: t2, controls: c2, mux: m2 },
        ) => {
            if g1 != g2 {
                out.push(at(line, format!("gate kind differs: english {g1:?}, picture {g2:?}")));
                return;
            }
            if t1 != t2 {
                out.push(at(line, format!("targets differ: english {t1:?}, picture {t2:?}")));
            }
            if c1 != c2 {
                out.push(at(line, "controls differ"));
            }
            if m1 != m2 {
                out.push(at(line, "multiplexor controls differ"));
            }
        }
        _ if eng != pic => out.push(at(line, format!("english has {}, picture has {}", describe(eng), describe(pic)))),
        _ => {}
    }
}

fn parse_err(file: &str, e: TextError) -> Mismatch {
    at(e.line, format!("{file}: {}", e.kind))
}

/// Compares the two files. An empty result means they describe the same
/// operations line for line (angles are not visible in pictures and are
/// not compared).
pub fn check_correspondence(english: &str, picture: &str) -> Vec<Mismatch> {
    let eng_lines: Vec<&str> = english.lines().collect();
    let pic_lines: Vec<&str> = picture.lines().collect();
    let mut out = Vec::new();
    if eng_lines.len() != pic_lines.len() {
        out.push(Mismatch {
            line: None,
            what: format!("english has {} lines, picture has {}", eng_lines.len(), pic_lines.len()),
        });
    }

    let mut pic_ops = Vec::with_capacity(pic_lines.len());
    let mut qubits = None;
    for (i, l) in pic_lines.iter().enumerate() {
        match parse_picture_line(l, i) {
            Ok((op, w)) => {
                if let Some(w) = w {
                    match qubits {
                        Some(q) if q != w => {
                            out.push(at(i, format!("picture width implies {w} qubits, earlier lines {q}")))
                        }
                        Some(_) => {}
                        None => qubits = Some(w),
                    }
                }
                pic_ops.push(Some(op));
            }
            Err(e) => {
                out.push(parse_err("picture", e));
                pic_ops.push(None);
            }
        }
    }
    let qubits = qubits.unwrap_or_else(|| english_qubits(english).unwrap_or(1));

    let mut depth: Vec<usize> = Vec::new();
    for (i, l) in eng_lines.iter().enumerate() {
        let op = match parse_english_line(l, i, qubits) {
            Ok(op) => op,
            Err(e) => {
                out.push(parse_err("english", e));
                continue;
            }
        };
        match &op {
            Op::Loop { label, .. } => depth.push(*label),
            Op::Next { label } => match depth.pop() {
                Some(open) if open == *label => {}
                Some(open) => out.push(at(i, format!("NEXT {label} closes LOOP {open}"))),
                None => out.push(at(i, format!("NEXT {label} without LOOP"))),
            },
            Op::Gate(_) => {}
        }
        if let Some(Some(p)) = pic_ops.get(i) {
            compare(i, &project(&op, None), p, &mut out);
        }
    }
    for label in depth {
        out.push(at(label, format!("LOOP {label} is never closed")));
    }
    out
}
