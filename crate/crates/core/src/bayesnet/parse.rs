//! Readers and writers for the three hash-delimited input files.
//!
//! All three share one token grammar: whitespace-separated tokens, where a
//! lone `#` opens a section and the token after it names the focus node.

use std::collections::HashSet;

use super::{BayesNet, Cpt, InputFile, NetError, Skeleton};
use crate::num::decimal;

/// Focus nodes in file order, each with the token list that follows it.
pub type Listing = Vec<(String, Vec<String>)>;

#[derive(Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
}

#[derive(Debug)]
struct Section<'a> {
    focus: &'a str,
    line: usize,
    body: Vec<Token<'a>>,
}

pub(crate) fn check_ascii(file: InputFile, bytes: &[u8]) -> Result<(), NetError> {
    match bytes.iter().position(|b| *b > 0x7F) {
        Some(offset) => Err(NetError::NonAscii { file, offset }),
        None => Ok(()),
    }
}

fn sections(file: InputFile, text: &str) -> Result<Vec<Section<'_>>, NetError> {
    check_ascii(file, text.as_bytes())?;
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split_ascii_whitespace().map(move |t| Token { text: t, line: i + 1 }))
        .peekable();
    if tokens.peek().is_none() {
        return Err(NetError::Empty { file });
    }

    let mut out: Vec<Section<'_>> = Vec::new();
    let mut seen = HashSet::new();
    while let Some(tok) = tokens.next() {
        if tok.text != "#" {
            if tok.text.contains('#') {
                return Err(NetError::GluedHash { file, line: tok.line, token: tok.text.to_string() });
            }
            match out.last_mut() {
                Some(section) => section.body.push(tok),
                None => return Err(NetError::ExpectedHash { file, line: tok.line, token: tok.text.to_string() }),
            }
            continue;
        }
        let focus = match tokens.next() {
            Some(t) if t.text == "#" => return Err(NetError::MissingFocus { file, line: tok.line }),
            Some(t) if t.text.contains('#') => {
                return Err(NetError::GluedHash { file, line: t.line, token: t.text.to_string() })
            }
            Some(t) => t.text,
            None => return Err(NetError::MissingFocus { file, line: tok.line }),
        };
        if !seen.insert(focus) {
            return Err(NetError::DuplicateFocus { file, node: focus.to_string() });
        }
        out.push(Section { focus, line: tok.line, body: Vec::new() });
    }
    Ok(out)
}

/// Parses `parents.txt`.
pub fn parse_parents(text: &str) -> Result<Listing, NetError> {
    let mut out = Vec::new();
    for s in sections(InputFile::Parents, text)? {
        let mut parents: Vec<String> = Vec::with_capacity(s.body.len());
        for t in &s.body {
            if t.text == s.focus {
                return Err(NetError::SelfParent(s.focus.to_string()));
            }
            if parents.iter().any(|p| p == t.text) {
                return Err(NetError::DuplicateParent { node: s.focus.to_string(), parent: t.text.to_string() });
            }
            parents.push(t.text.to_string());
        }
        out.push((s.focus.to_string(), parents));
    }
    Ok(out)
}

/// Parses `states.txt`.
pub fn parse_states(text: &str) -> Result<Listing, NetError> {
    let mut out = Vec::new();
    for s in sections(InputFile::States, text)? {
        if s.body.is_empty() {
            return Err(NetError::NoStates(s.focus.to_string()));
        }
        let mut states: Vec<String> = Vec::with_capacity(s.body.len());
        for t in &s.body {
            if states.iter().any(|x| x == t.text) {
                return Err(NetError::DuplicateState { node: s.focus.to_string(), state: t.text.to_string() });
            }
            states.push(t.text.to_string());
        }
        out.push((s.focus.to_string(), states));
    }
    Ok(out)
}

/// Parses `probs.txt` against an already-built skeleton. Rows that are not
/// listed get probability zero.
pub fn parse_probs(text: &str, skeleton: &Skeleton) -> Result<Vec<Cpt>, NetError> {
    let secs = sections(InputFile::Probs, text)?;
    let mut cpts = Vec::with_capacity(skeleton.len());
    for (i, node) in skeleton.nodes().iter().enumerate() {
        let Some(s) = secs.get(i) else {
            return Err(NetError::OrderMismatch {
                file: InputFile::Probs,
                expected: node.name().to_string(),
                found: "<end of file>".to_string(),
            });
        };
        if s.focus != node.name() {
            return Err(NetError::OrderMismatch {
                file: InputFile::Probs,
                expected: node.name().to_string(),
                found: s.focus.to_string(),
            });
        }
        let width = node.parents().len() + 2;
        if s.body.len() % width != 0 {
            let line = s.body.last().map_or(s.line, |t| t.line);
            return Err(NetError::ColumnCount {
                line,
                node: node.name().to_string(),
                expected: width,
                found: s.body.len() % width,
            });
        }

        let mut cpt = Cpt::zeros(skeleton, i);
        let mut filled = vec![false; cpt.table.len()];
        for row in s.body.chunks(width) {
            let line = row[0].line;
            let lookup = |owner: usize, tok: &Token<'_>| {
                skeleton.nodes()[owner].state_index(tok.text).ok_or_else(|| NetError::UnknownState {
                    line: tok.line,
                    node: skeleton.nodes()[owner].name().to_string(),
                    state: tok.text.to_string(),
                })
            };
            let focus_state = lookup(i, &row[0])?;
            let mut parent_states = Vec::with_capacity(node.parents().len());
            for (&p, tok) in node.parents().iter().zip(&row[1..width - 1]) {
                parent_states.push(lookup(p, tok)?);
            }
            let raw = row[width - 1].text;
            let value: f64 = raw
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| NetError::BadProbability { line, token: raw.to_string() })?;
            if !(0.0..=1.0).contains(&value) {
                return Err(NetError::ProbabilityRange { line, value });
            }
            let idx = cpt.index(focus_state, &parent_states);
            if std::mem::replace(&mut filled[idx], true) {
                let row_text = row[..width - 1].iter().map(|t| t.text).collect::<Vec<_>>().join(" ");
                return Err(NetError::DuplicateRow { line, node: node.name().to_string(), row: row_text });
            }
            cpt.table[idx] = value;
        }
        cpts.push(cpt);
    }
    if let Some(extra) = secs.get(skeleton.len()) {
        return Err(NetError::OrderMismatch {
            file: InputFile::Probs,
            expected: "<end of file>".to_string(),
            found: extra.focus.to_string(),
        });
    }
    Ok(cpts)
}

/// Writes a skeleton back out as `parents.txt`.
pub fn write_parents(skeleton: &Skeleton) -> String {
    let mut out = String::new();
    for node in skeleton.nodes() {
        out.push_str("# ");
        out.push_str(node.name());
        for p in node.parents() {
            out.push(' ');
            out.push_str(skeleton.nodes()[*p].name());
        }
        out.push('\n');
    }
    out
}

/// Writes a skeleton back out as `states.txt`.
pub fn write_states(skeleton: &Skeleton) -> String {
    let mut out = String::new();
    for node in skeleton.nodes() {
        out.push_str("# ");
        out.push_str(node.name());
        for s in node.states() {
            out.push(' ');
            out.push_str(s);
        }
        out.push('\n');
    }
    out
}

/// Writes the nonzero CPT rows as `probs.txt`; zero rows are left implicit.
pub fn write_probs(net: &BayesNet) -> String {
    let skel = net.skeleton();
    let mut out = String::new();
    for (i, node) in skel.nodes().iter().enumerate() {
        out.push_str("# ");
        out.push_str(node.name());
        out.push('\n');
        let cpt = &net.cpts()[i];
        for config in 0..cpt.parent_configs() {
            let parent_states = cpt.decode_config(config);
            for s in 0..node.states().len() {
                let p = cpt.table[config * node.states().len() + s];
                if p == 0.0 {
                    continue;
                }
                let mut row = vec![node.states()[s].as_str()];
                for (&par, &ps) in node.parents().iter().zip(&parent_states) {
                    row.push(skel.nodes()[par].states()[ps].as_str());
                }
                out.push_str(&row.join(" "));
                out.push(' ');
                out.push_str(&decimal(p));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn listing(items: &[(&str, &[&str])]) -> Listing {
        items.iter().map(|(n, l)| (n.to_string(), l.iter().map(|s| s.to_string()).collect())).collect()
    }

    #[test]
    fn parents_three_nodes() {
        let got = parse_parents("# A\n# B A C\n# C").unwrap();
        assert_eq!(got, listing(&[("A", &[]), ("B", &["A", "C"]), ("C", &[])]));
    }

    #[test]
    fn parents_single_and_multiline() {
        assert_eq!(parse_parents("# X").unwrap(), listing(&[("X", &[])]));
        let got = parse_parents("#\n  B\n A\n\n\t C # A # C").unwrap();
        assert_eq!(got, listing(&[("B", &["A", "C"]), ("A", &[]), ("C", &[])]));
    }

    #[test]
    fn parents_errors() {
        assert!(matches!(parse_parents("# A\n# A"), Err(NetError::DuplicateFocus { .. })));
        assert!(matches!(parse_parents(""), Err(NetError::Empty { .. })));
        assert!(matches!(parse_parents("  \n\n"), Err(NetError::Empty { .. })));
        assert!(matches!(parse_parents("A # B"), Err(NetError::ExpectedHash { .. })));
        assert!(matches!(parse_parents("#A"), Err(NetError::GluedHash { .. })));
        assert!(matches!(parse_parents("# A # # B"), Err(NetError::MissingFocus { .. })));
        assert!(matches!(parse_parents("# A A"), Err(NetError::SelfParent(_))));
        assert!(matches!(parse_parents("# A B B\n# B"), Err(NetError::DuplicateParent { .. })));
        assert!(matches!(parse_parents("# A é"), Err(NetError::NonAscii { .. })));
    }

    #[test]
    fn states_examples() {
        let got = parse_states("# A a1 a2 a3\n# B b1 b2\n# C c1 c2").unwrap();
        assert_eq!(got, listing(&[("A", &["a1", "a2", "a3"]), ("B", &["b1", "b2"]), ("C", &["c1", "c2"])]));
        assert_eq!(parse_states("# X s0").unwrap(), listing(&[("X", &["s0"])]));
        assert!(matches!(parse_states("# A a1 a1"), Err(NetError::DuplicateState { .. })));
        assert!(matches!(parse_states("# A\n# B b"), Err(NetError::NoStates(_))));
        assert!(matches!(parse_states("# A a\n# A b"), Err(NetError::DuplicateFocus { .. })));
    }

    fn three_nodes() -> Skeleton {
        Skeleton::from_listings(
            parse_parents("# A\n# B A C\n# C").unwrap(),
            parse_states("# A a1 a2 a3\n# B b1 b2\n# C c1 c2").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn probs_rows_and_omissions() {
        let skel = three_nodes();
        let text = "# A\n a1 0.2 a2 0.5 a3 0.3\n# B\n b1 a1 c1 0.7\n b2 a1 c1 0.3\n# C c1 1.0";
        let cpts = parse_probs(text, &skel).unwrap();
        assert_eq!(cpts[0].prob(0, &[]), 0.2);
        assert_eq!(cpts[1].prob(0, &[0, 0]), 0.7);
        assert_eq!(cpts[1].prob(0, &[1, 1]), 0.0);
        assert_eq!(cpts[2].prob(1, &[]), 0.0);
    }

    #[test]
    fn probs_errors() {
        let skel = three_nodes();
        let ok_tail = "# B b1 a1 c1 1\n# C c1 1";
        let check = |text: &str| parse_probs(text, &skel).unwrap_err();
        assert!(matches!(check(&format!("# A a9 1\n{ok_tail}")), NetError::UnknownState { .. }));
        assert!(matches!(check(&format!("# A a1 1 a2\n{ok_tail}")), NetError::ColumnCount { .. }));
        assert!(matches!(check(&format!("# A a1 1.5\n{ok_tail}")), NetError::ProbabilityRange { .. }));
        assert!(matches!(check(&format!("# A a1 -0.1\n{ok_tail}")), NetError::ProbabilityRange { .. }));
        assert!(matches!(check(&format!("# A a1 abc\n{ok_tail}")), NetError::BadProbability { .. }));
        assert!(matches!(check(&format!("# A a1 NaN\n{ok_tail}")), NetError::BadProbability { .. }));
        assert!(matches!(check(&format!("# A a1 0.5 a1 0.5\n{ok_tail}")), NetError::DuplicateRow { .. }));
        assert!(matches!(check("# B b1 a1 c1 1\n# A a1 1\n# C c1 1"), NetError::OrderMismatch { .. }));
        assert!(matches!(check("# A a1 1\n# B b1 a1 c1 1"), NetError::OrderMismatch { .. }));
        assert!(matches!(check("# A a1 1\n# B b1 a1 c1 1\n# C c1 1\n# D"), NetError::OrderMismatch { .. }));
    }
}
