//! Pre-run files: uniform probability templates, node and nit blankets.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::GenError;
use crate::bayesnet::Skeleton;
use crate::nitcodes::NitLayout;
use crate::num::decimal;

pub const PROBS_F_FILE: &str = "probsF.txt";
pub const PROBS_T_FILE: &str = "probsT.txt";
pub const BLANKETS_FILE: &str = "blankets.txt";
pub const NITS_FILE: &str = "nits.txt";

/// Row order of a uniform template: `F` cycles the focus states fastest,
/// `T` cycles the parent configurations fastest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    F,
    T,
}

pub fn uniform_probs(skeleton: &Skeleton, variant: Variant) -> String {
    let nodes = skeleton.nodes();
    let mut out = String::new();
    for node in nodes {
        let _ = writeln!(out, "# {}", node.name());
        let n = node.states().len();
        let p = decimal(1.0 / n as f64);
        let radices: Vec<usize> = node.parents().iter().map(|&q| nodes[q].states().len()).collect();
        let configs: usize = radices.iter().product();
        let row = |out: &mut String, s: usize, mut config: usize| {
            let mut parent_states = vec![0; radices.len()];
            for (slot, &r) in parent_states.iter_mut().zip(&radices).rev() {
                *slot = config % r;
                config /= r;
            }
            out.push_str(&node.states()[s]);
            for (&q, &ps) in node.parents().iter().zip(&parent_states) {
                out.push(' ');
                out.push_str(&nodes[q].states()[ps]);
            }
            let _ = writeln!(out, " {p}");
        };
        match variant {
            Variant::F => (0..configs).for_each(|c| (0..n).for_each(|s| row(&mut out, s, c))),
            Variant::T => (0..n).for_each(|s| (0..configs).for_each(|c| row(&mut out, s, c))),
        }
    }
    out
}

pub fn blankets_text(skeleton: &Skeleton) -> String {
    let mut out = String::new();
    for (i, node) in skeleton.nodes().iter().enumerate() {
        out.push_str("# ");
        out.push_str(node.name());
        for b in skeleton.blanket(i) {
            out.push(' ');
            out.push_str(skeleton.nodes()[b].name());
        }
        out.push('\n');
    }
    out
}

fn joined(label: &str, items: impl IntoIterator<Item = usize>) -> String {
    items.into_iter().fold(label.to_string(), |acc, i| format!("{acc} {i}"))
}

pub fn nits_text(skeleton: &Skeleton, layout: &NitLayout) -> String {
    let mut out = String::new();
    for nit in 0..layout.nb() {
        let owner = layout.owner(nit).expect("nit in range");
        let blanket = layout.nit_blanket(skeleton, nit).expect("nit in range");
        let _ = writeln!(out, "# {nit}");
        let _ = writeln!(out, "owner node {}", skeleton.nodes()[owner].name());
        let _ = writeln!(out, "{}", joined("blanket nit", blanket));
    }
    out
}

pub(crate) fn write_file(path: PathBuf, text: &str, clobber: bool) -> Result<PathBuf, GenError> {
    let shown = path.display().to_string();
    if !clobber && path.exists() {
        return Err(GenError::Exists { path: shown });
    }
    fs::write(&path, text).map_err(|e| GenError::Io { path: shown, msg: e.to_string() })?;
    Ok(path)
}

/// Reads `parents.txt` and `states.txt` only and writes the four pre-run
/// files. Returns their paths.
pub fn write_prerun(folder: &Path, clobber: bool) -> Result<Vec<PathBuf>, GenError> {
    let skel = Skeleton::load(folder)?;
    skel.check_acyclic()?;
    let layout = NitLayout::build(&skel);
    let files = [
        (PROBS_F_FILE, uniform_probs(&skel, Variant::F)),
        (PROBS_T_FILE, uniform_probs(&skel, Variant::T)),
        (BLANKETS_FILE, blankets_text(&skel)),
        (NITS_FILE, nits_text(&skel, &layout)),
    ];
    if !clobber {
        if let Some((name, _)) = files.iter().find(|(name, _)| folder.join(name).exists()) {
            return Err(GenError::Exists { path: folder.join(name).display().to_string() });
        }
    }
    files.iter().map(|(name, text)| write_file(folder.join(name), text, true)).collect()
}
