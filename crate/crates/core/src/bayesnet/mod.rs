//! Classical Bayesian network model: the skeleton read from `parents.txt`
//! and `states.txt`, the CPTs read from `probs.txt`, node-level Markov
//! blankets and exact joint probabilities.

mod parse;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use parse::{parse_parents, parse_probs, parse_states, write_parents, write_probs, write_states, Listing};

/// Absolute tolerance for CPT column sums.
pub const NORMALIZATION_TOL: f64 = 1e-9;

pub const PARENTS_FILE: &str = "parents.txt";
pub const STATES_FILE: &str = "states.txt";
pub const PROBS_FILE: &str = "probs.txt";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFile {
    Parents,
    States,
    Probs,
}

impl InputFile {
    pub fn file_name(self) -> &'static str {
        match self {
            InputFile::Parents => PARENTS_FILE,
            InputFile::States => STATES_FILE,
            InputFile::Probs => PROBS_FILE,
        }
    }
}

impl fmt::Display for InputFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.file_name())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error("{file}: non-ASCII byte at offset {offset}")]
    NonAscii { file: InputFile, offset: usize },
    #[error("{file}: file is empty")]
    Empty { file: InputFile },
    #[error("{file}:{line}: expected '#' before {token:?}")]
    ExpectedHash { file: InputFile, line: usize, token: String },
    #[error("{file}:{line}: '#' is not followed by a node name")]
    MissingFocus { file: InputFile, line: usize },
    #[error("{file}:{line}: '#' must be its own token, found {token:?}")]
    GluedHash { file: InputFile, line: usize, token: String },
    #[error("{file}: focus node {node:?} appears more than once")]
    DuplicateFocus { file: InputFile, node: String },
    #[error("states.txt: node {0:?} has no states")]
    NoStates(String),
    #[error("states.txt: node {node:?} lists state {state:?} twice")]
    DuplicateState { node: String, state: String },
    #[error("parents.txt: node {node:?} lists parent {parent:?} twice")]
    DuplicateParent { node: String, parent: String },
    #[error("parents.txt: node {0:?} lists itself as a parent")]
    SelfParent(String),
    #[error("parents.txt: node {node:?} has parent {parent:?}, which is not a node of the net")]
    UnknownParent { node: String, parent: String },
    #[error("{file}: focus nodes out of order: expected {expected:?}, found {found:?}")]
    OrderMismatch { file: InputFile, expected: String, found: String },
    #[error("probs.txt:{line}: node {node:?} has no state {state:?}")]
    UnknownState { line: usize, node: String, state: String },
    #[error("probs.txt:{line}: rows of node {node:?} need {expected} columns; {found} tokens left over")]
    ColumnCount { line: usize, node: String, expected: usize, found: usize },
    #[error("probs.txt:{line}: {token:?} is not a probability")]
    BadProbability { line: usize, token: String },
    #[error("probs.txt:{line}: probability {value} outside [0,1]")]
    ProbabilityRange { line: usize, value: f64 },
    #[error("probs.txt:{line}: duplicate row \"{row}\" for node {node:?}")]
    DuplicateRow { line: usize, node: String, row: String },
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("bad instantiation: {0}")]
    BadInstantiation(String),
    #[error("invalid network: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("cannot read {}: {msg}", .path)]
    Io { path: String, msg: String },
}

impl NetError {
    /// Errors about the meaning of well-formed files rather than their syntax.
    pub fn is_semantic(&self) -> bool {
        matches!(self, NetError::Invalid(_))
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// One finding of [`validate_net`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Cycle { nodes: Vec<String> },
    CptMissing { node: String },
    CptOrder { position: usize, expected: String, found: String },
    CptShape { node: String },
    ProbabilityRange { node: String, value: f64 },
    Unnormalized { node: String, parent_states: Vec<String>, sum: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cycle { nodes } => write!(f, "directed cycle through {}", nodes.join(", ")),
            Violation::CptMissing { node } => write!(f, "node {node} has no probability table"),
            Violation::CptOrder { position, expected, found } => {
                write!(f, "table {position} belongs to {found}, expected {expected}")
            }
            Violation::CptShape { node } => write!(f, "table of {node} does not match its parents/states"),
            Violation::ProbabilityRange { node, value } => write!(f, "node {node}: probability {value} outside [0,1]"),
            Violation::Unnormalized { node, parent_states, sum } => {
                write!(f, "node {node} given ({}) sums to {sum}", parent_states.join(","))
            }
        }
    }
}

/// A node with its parents (as node indices) and its ordered state names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    name: String,
    parents: Vec<usize>,
    states: Vec<String>,
}

impl Node {
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn parents(&self) -> &[usize] {
        &self.parents
    }
    pub fn states(&self) -> &[String] {
        &self.states
    }
    pub fn state_index(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }
}

/// Graph and state spaces of the net; everything a pre-run needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    nodes: Vec<Node>,
    children: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl Skeleton {
    /// Joins a parsed Parents File with a parsed States File. Both must list
    /// the same focus nodes in the same order. Cycles are not rejected here;
    /// see [`Skeleton::check_acyclic`].
    pub fn from_listings(parents: Listing, states: Listing) -> Result<Self, NetError> {
        for i in 0..parents.len().max(states.len()) {
            let expected = parents.get(i).map_or("<end of file>", |p| p.0.as_str());
            let found = states.get(i).map_or("<end of file>", |s| s.0.as_str());
            if expected != found {
                return Err(NetError::OrderMismatch {
                    file: InputFile::States,
                    expected: expected.to_string(),
                    found: found.to_string(),
                });
            }
        }
        let index: HashMap<String, usize> =
            parents.iter().enumerate().map(|(i, (name, _))| (name.clone(), i)).collect();
        let mut nodes = Vec::with_capacity(parents.len());
        for ((name, parent_names), (_, state_names)) in parents.into_iter().zip(states) {
            let parents = parent_names
                .iter()
                .map(|p| {
                    index
                        .get(p)
                        .copied()
                        .ok_or_else(|| NetError::UnknownParent { node: name.clone(), parent: p.clone() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            nodes.push(Node { name, parents, states: state_names });
        }
        let mut children = vec![Vec::new(); nodes.len()];
        for (i, n) in nodes.iter().enumerate() {
            for &p in &n.parents {
                children[p].push(i);
            }
        }
        Ok(Skeleton { nodes, children, index })
    }

    pub fn from_texts(parents: &str, states: &str) -> Result<Self, NetError> {
        Self::from_listings(parse_parents(parents)?, parse_states(states)?)
    }

    /// Reads `parents.txt` and `states.txt` from an I/O folder.
    pub fn load(folder: &Path) -> Result<Self, NetError> {
        let parents = read_input(folder, InputFile::Parents)?;
        let states = read_input(folder, InputFile::States)?;
        Self::from_texts(&parents, &states)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }
    pub fn len(&self) -> usize {
        self.nodes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
    pub fn node_index(&self, name: &str) -> Result<usize, NetError> {
        self.index.get(name).copied().ok_or_else(|| NetError::UnknownNode(name.to_string()))
    }
    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }
    pub fn state_counts(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.states.len()).collect()
    }

    /// Nodes that cannot be topologically ordered, in focus order. Empty iff
    /// the graph is a DAG.
    pub fn cyclic_nodes(&self) -> Vec<usize> {
        let mut indegree: Vec<usize> = self.nodes.iter().map(|n| n.parents.len()).collect();
        let mut ready: Vec<usize> = (0..self.len()).filter(|&i| indegree[i] == 0).collect();
        let mut done = vec![false; self.len()];
        while let Some(i) = ready.pop() {
            done[i] = true;
            for &c in &self.children[i] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.push(c);
                }
            }
        }
        (0..self.len()).filter(|&i| !done[i]).collect()
    }

    pub fn check_acyclic(&self) -> Result<(), NetError> {
        let cyclic = self.cyclic_nodes();
        if cyclic.is_empty() {
            Ok(())
        } else {
            Err(NetError::Invalid(vec![self.cycle_violation(&cyclic)]))
        }
    }

    fn cycle_violation(&self, cyclic: &[usize]) -> Violation {
        Violation::Cycle { nodes: cyclic.iter().map(|&i| self.nodes[i].name.clone()).collect() }
    }

    /// Parents, children and the children's other parents of `node`.
    pub fn blanket(&self, node: usize) -> BTreeSet<usize> {
        let mut mb: BTreeSet<usize> = self.nodes[node].parents.iter().copied().collect();
        for &c in &self.children[node] {
            mb.insert(c);
            mb.extend(self.nodes[c].parents.iter().copied());
        }
        mb.remove(&node);
        mb
    }

    /// Markov blanket of a node by name, in focus order.
    pub fn node_blanket(&self, name: &str) -> Result<Vec<&str>, NetError> {
        let i = self.node_index(name)?;
        Ok(self.blanket(i).into_iter().map(|j| self.nodes[j].name()).collect())
    }

    /// Draws every node's state uniformly and independently from a seeded
    /// ChaCha8 stream.
    pub fn random_instantiation(&self, seed: u64) -> Instantiation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Instantiation(self.nodes.iter().map(|n| rng.random_range(0..n.states.len())).collect())
    }

    /// Number of complete instantiations, or `None` on overflow.
    pub fn state_space_size(&self) -> Option<usize> {
        self.nodes.iter().try_fold(1usize, |acc, n| acc.checked_mul(n.states.len()))
    }
}

pub(crate) fn read_input(folder: &Path, file: InputFile) -> Result<String, NetError> {
    let path = folder.join(file.file_name());
    let bytes =
        std::fs::read(&path).map_err(|e| NetError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse::check_ascii(file, &bytes)?;
    Ok(String::from_utf8(bytes).expect("ASCII is valid UTF-8"))
}

/// Conditional probability table of one node, dense over
/// (parent configuration, focus state). Parent configurations are mixed-radix
/// numbers with the first listed parent most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Cpt {
    owner: usize,
    n_states: usize,
    radices: Vec<usize>,
    table: Vec<f64>,
}

impl Cpt {
    pub fn zeros(skeleton: &Skeleton, owner: usize) -> Self {
        let node = &skeleton.nodes[owner];
        let radices: Vec<usize> = node.parents.iter().map(|&p| skeleton.nodes[p].states.len()).collect();
        let configs: usize = radices.iter().product();
        Cpt { owner, n_states: node.states.len(), radices, table: vec![0.0; configs * node.states.len()] }
    }

    /// Builds a table from a closure over (focus state, parent states).
    pub fn from_fn(skeleton: &Skeleton, owner: usize, mut f: impl FnMut(usize, &[usize]) -> f64) -> Self {
        let mut cpt = Self::zeros(skeleton, owner);
        for config in 0..cpt.parent_configs() {
            let ps = cpt.decode_config(config);
            for s in 0..cpt.n_states {
                cpt.table[config * cpt.n_states + s] = f(s, &ps);
            }
        }
        cpt
    }

    pub fn owner(&self) -> usize {
        self.owner
    }
    pub fn parent_configs(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn config_index(&self, parent_states: &[usize]) -> usize {
        self.radices.iter().zip(parent_states).fold(0, |acc, (&r, &s)| acc * r + s)
    }

    pub fn decode_config(&self, mut config: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = config % r;
            config /= r;
        }
        out
    }

    fn index(&self, state: usize, parent_states: &[usize]) -> usize {
        self.config_index(parent_states) * self.n_states + state
    }

    /// P(focus = state | parents = parent_states).
    pub fn prob(&self, state: usize, parent_states: &[usize]) -> f64 {
        self.table[self.index(state, parent_states)]
    }

    pub fn set(&mut self, state: usize, parent_states: &[usize], p: f64) {
        let i = self.index(state, parent_states);
        self.table[i] = p;
    }
}

/// One state index per node, in focus-node order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instantiation(Vec<usize>);

impl Instantiation {
    pub fn new(skeleton: &Skeleton, states: Vec<usize>) -> Result<Self, NetError> {
        if states.len() != skeleton.len() {
            return Err(NetError::BadInstantiation(format!(
                "{} states given for {} nodes",
                states.len(),
                skeleton.len()
            )));
        }
        for (n, &s) in skeleton.nodes.iter().zip(&states) {
            if s >= n.states.len() {
                return Err(NetError::BadInstantiation(format!("node {} has no state index {s}", n.name)));
            }
        }
        Ok(Instantiation(states))
    }

    /// Parses `Node=state,Node=state,...`; every node must be named once.
    pub fn parse(skeleton: &Skeleton, spec: &str) -> Result<Self, NetError> {
        let mut states: Vec<Option<usize>> = vec![None; skeleton.len()];
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (node, state) = item
                .split_once('=')
                .ok_or_else(|| NetError::BadInstantiation(format!("expected Node=state, got {item:?}")))?;
            let i = skeleton.node_index(node.trim())?;
            let s = skeleton.nodes[i].state_index(state.trim()).ok_or_else(|| {
                NetError::BadInstantiation(format!("node {} has no state {:?}", node.trim(), state.trim()))
            })?;
            if states[i].replace(s).is_some() {
                return Err(NetError::BadInstantiation(format!("node {} given twice", node.trim())));
            }
        }
        let missing: Vec<&str> =
            states.iter().zip(&skeleton.nodes).filter(|(s, _)| s.is_none()).map(|(_, n)| n.name()).collect();
        if !missing.is_empty() {
            return Err(NetError::BadInstantiation(format!("no state given for {}", missing.join(", "))));
        }
        Ok(Instantiation(states.into_iter().map(Option::unwrap).collect()))
    }

    /// Decodes a mixed-radix index (first node most significant).
    pub fn from_index(radices: &[usize], mut index: usize) -> Self {
        let mut out = vec![0; radices.len()];
        for (slot, &r) in out.iter_mut().zip(radices).rev() {
            *slot = index % r;
            index /= r;
        }
        Instantiation(out)
    }

    pub fn states(&self) -> &[usize] {
        &self.0
    }

    pub fn describe(&self, skeleton: &Skeleton) -> String {
        skeleton
            .nodes
            .iter()
            .zip(&self.0)
            .map(|(n, &s)| format!("{}={}", n.name, n.states[s]))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A skeleton together with one CPT per node.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesNet {
    skeleton: Skeleton,
    cpts: Vec<Cpt>,
}

impl BayesNet {
    /// Unchecked assembly; run [`validate_net`] before trusting the result.
    pub fn new(skeleton: Skeleton, cpts: Vec<Cpt>) -> Self {
        BayesNet { skeleton, cpts }
    }

    /// Parses the three files and rejects nets with any validation finding.
    pub fn from_texts(parents: &str, states: &str, probs: &str) -> Result<Self, NetError> {
        let skeleton = Skeleton::from_texts(parents, states)?;
        let cpts = parse_probs(probs, &skeleton)?;
        let net = BayesNet { skeleton, cpts };
        let report = validate_net(&net);
        if report.is_empty() {
            Ok(net)
        } else {
            Err(NetError::Invalid(report))
        }
    }

    pub fn load(folder: &Path) -> Result<Self, NetError> {
        let parents = read_input(folder, InputFile::Parents)?;
        let states = read_input(folder, InputFile::States)?;
        let probs = read_input(folder, InputFile::Probs)?;
        Self::from_texts(&parents, &states, &probs)
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }
    pub fn cpts(&self) -> &[Cpt] {
        &self.cpts
    }

    /// P(node = state | parents as in `x`).
    pub fn local_prob(&self, node: usize, states: &[usize]) -> f64 {
        let parents: Vec<usize> = self.skeleton.nodes[node].parents.iter().map(|&p| states[p]).collect();
        self.cpts[node].prob(states[node], &parents)
    }

    /// Product over nodes, in focus order, of each node's CPT entry.
    pub fn joint_prob(&self, x: &Instantiation) -> f64 {
        (0..self.skeleton.len()).map(|i| self.local_prob(i, &x.0)).product()
    }
}

/// Collects every structural and numerical problem of `net`.
pub fn validate_net(net: &BayesNet) -> Vec<Violation> {
    let skel = &net.skeleton;
    let mut report = Vec::new();
    let cyclic = skel.cyclic_nodes();
    if !cyclic.is_empty() {
        report.push(skel.cycle_violation(&cyclic));
    }
    for (i, node) in skel.nodes.iter().enumerate() {
        let Some(cpt) = net.cpts.get(i) else {
            report.push(Violation::CptMissing { node: node.name.clone() });
            continue;
        };
        if cpt.owner != i {
            let found = skel.nodes.get(cpt.owner).map_or("?".to_string(), |n| n.name.clone());
            report.push(Violation::CptOrder { position: i, expected: node.name.clone(), found });
            continue;
        }
        let expect = Cpt::zeros(skel, i);
        if cpt.radices != expect.radices || cpt.n_states != expect.n_states || cpt.table.len() != expect.table.len() {
            report.push(Violation::CptShape { node: node.name.clone() });
            continue;
        }
        for &p in &cpt.table {
            if !(0.0..=1.0).contains(&p) {
                report.push(Violation::ProbabilityRange { node: node.name.clone(), value: p });
            }
        }
        for config in 0..cpt.parent_configs() {
            let row = &cpt.table[config * cpt.n_states..(config + 1) * cpt.n_states];
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > NORMALIZATION_TOL || sum.is_nan() {
                let parent_states = cpt
                    .decode_config(config)
                    .iter()
                    .zip(&node.parents)
                    .map(|(&s, &p)| skel.nodes[p].states[s].clone())
                    .collect();
                report.push(Violation::Unnormalized { node: node.name.clone(), parent_states, sum });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    const PARENTS: &str = "# A\n# B A C\n# C\n";
    const STATES: &str = "# A a1 a2 a3\n# B b1 b2\n# C c1 c2\n";
    const PROBS: &str = "\
# A
a1 0.2
a2 0.5
a3 0.3
# B
b1 a1 c1 0.7
b2 a1 c1 0.3
b1 a1 c2 0.4
b2 a1 c2 0.6
b1 a2 c1 0.1
b2 a2 c1 0.9
b1 a2 c2 0.5
b2 a2 c2 0.5
b1 a3 c1 0.8
b2 a3 c1 0.2
b1 a3 c2 0.25
b2 a3 c2 0.75
# C
c1 0.6
c2 0.4
";

    fn net() -> BayesNet {
        BayesNet::from_texts(PARENTS, STATES, PROBS).unwrap()
    }

    #[test]
    fn three_nodes_is_valid() {
        let n = net();
        assert!(validate_net(&n).is_empty());
        // by-hand column sums: every B column above adds to 1 exactly
        let b = &n.cpts()[1];
        for config in 0..6 {
            let s = b.prob(0, &b.decode_config(config)) + b.prob(1, &b.decode_config(config));
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cycle_is_reported() {
        let skel = Skeleton::from_texts("# A B\n# B A", "# A a0 a1\n# B b0 b1").unwrap();
        let cpts = (0..2).map(|i| Cpt::from_fn(&skel, i, |_, _| 0.5)).collect();
        let report = validate_net(&BayesNet::new(skel.clone(), cpts));
        assert!(matches!(&report[..], [Violation::Cycle { nodes }] if nodes.len() == 2));
        assert!(skel.check_acyclic().is_err());
    }

    #[test]
    fn unnormalized_column_is_reported() {
        let probs = PROBS.replace("\nc2 0.4", "\nc2 0.3");
        let err = BayesNet::from_texts(PARENTS, STATES, &probs).unwrap_err();
        match err {
            NetError::Invalid(v) => {
                assert!(matches!(&v[..], [Violation::Unnormalized { sum, .. }] if (sum - 0.9).abs() < 1e-12))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn skeleton_mismatches() {
        assert!(matches!(Skeleton::from_texts("# A\n# B", "# A a"), Err(NetError::OrderMismatch { .. })));
        assert!(matches!(Skeleton::from_texts("# A\n# B", "# B b\n# A a"), Err(NetError::OrderMismatch { .. })));
        assert!(matches!(Skeleton::from_texts("# A Z", "# A a"), Err(NetError::UnknownParent { .. })));
    }

    #[test]
    fn blankets() {
        let n = net();
        assert_eq!(n.skeleton().node_blanket("A").unwrap(), vec!["B", "C"]);
        assert_eq!(n.skeleton().node_blanket("B").unwrap(), vec!["A", "C"]);
        assert_eq!(n.skeleton().node_blanket("C").unwrap(), vec!["A", "B"]);
        assert!(n.skeleton().node_blanket("Q").is_err());
        let lone = Skeleton::from_texts("# X", "# X x0 x1").unwrap();
        assert!(lone.node_blanket("X").unwrap().is_empty());
    }

    #[test]
    fn joint_prob_values() {
        let n = net();
        let x = Instantiation::parse(n.skeleton(), "A=a1,B=b1,C=c1").unwrap();
        assert_eq!(n.joint_prob(&x), 0.2 * 0.7 * 0.6);

        let partial = PROBS.replace("b1 a3 c2 0.25\n", "").replace("b2 a3 c2 0.75", "b2 a3 c2 1.0");
        let n2 = BayesNet::from_texts(PARENTS, STATES, &partial).unwrap();
        let hit = Instantiation::parse(n2.skeleton(), "A=a3,B=b1,C=c2").unwrap();
        assert_eq!(n2.joint_prob(&hit), 0.0);

        let one = BayesNet::from_texts("# X", "# X s0", "# X s0 1").unwrap();
        assert_eq!(one.joint_prob(&Instantiation::parse(one.skeleton(), "X=s0").unwrap()), 1.0);
    }

    #[test]
    fn instantiation_specs() {
        let s = net().skeleton().clone();
        assert!(Instantiation::parse(&s, "A=a1,B=b1").is_err());
        assert!(Instantiation::parse(&s, "A=a1,B=b1,C=c9").is_err());
        assert!(Instantiation::parse(&s, "A=a1,B=b1,C=c1,A=a2").is_err());
        assert!(Instantiation::parse(&s, "A=a1,B=b1,Q=c1").is_err());
        let x = Instantiation::parse(&s, " C=c2 , A=a3,B=b1").unwrap();
        assert_eq!(x.states(), &[2, 0, 1]);
        assert_eq!(x.describe(&s), "A=a3,B=b1,C=c2");
        assert!(Instantiation::new(&s, vec![3, 0, 0]).is_err());
    }

    #[test]
    fn random_instantiation_is_seeded_and_uniform() {
        let s = net().skeleton().clone();
        assert_eq!(s.random_instantiation(7), s.random_instantiation(7));
        let mut counts = [0usize; 3];
        for seed in 0..10_000u64 {
            counts[s.random_instantiation(seed).states()[0]] += 1;
        }
        for c in counts {
            assert!((c as f64 / 10_000.0 - 1.0 / 3.0).abs() < 0.02, "{counts:?}");
        }
        let single = Skeleton::from_texts("# X\n# Y", "# X x\n# Y y").unwrap();
        assert_eq!(single.random_instantiation(3).states(), &[0, 0]);
    }

    #[test]
    fn serialize_round_trip() {
        let n = net();
        let again =
            BayesNet::from_texts(&write_parents(n.skeleton()), &write_states(n.skeleton()), &write_probs(&n)).unwrap();
        assert_eq!(again, n);
    }
}
