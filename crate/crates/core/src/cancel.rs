//! Doublets, the longest-doublet length and the small cancellation certificate.
//!
//! Two immersions of a reduced word into a folded graph are determined by
//! their start vertices, so doublets are exactly the words readable along
//! walks in the off-diagonal square of the graph. Walks must not backtrack;
//! this is enforced by working on transitions (pairs of darts) rather than
//! on states.

use std::collections::{BTreeSet, HashMap};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lgraph::{DartId, FoldViolation, LabelledGraph, VertexId};
use crate::words::{Letter, Word};

pub type State = (VertexId, VertexId);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductTransition {
    pub from: State,
    pub to: State,
    pub letter: Letter,
    pub darts: (DartId, DartId),
}

/// The off-diagonal product graph: states are ordered pairs of distinct
/// vertices, and `(p, q) -s-> (p', q')` whenever both coordinates have an
/// `s`-dart.
#[derive(Debug, Clone)]
pub struct ProductGraph {
    vertex_count: usize,
    transitions: Vec<ProductTransition>,
    /// `offsets[p * n + q]..offsets[p * n + q + 1]` indexes transitions out of `(p, q)`.
    offsets: Vec<usize>,
}

impl ProductGraph {
    pub fn state_count(&self) -> usize {
        self.vertex_count * self.vertex_count.saturating_sub(1)
    }

    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        let n = self.vertex_count;
        (0..n).flat_map(move |p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
    }

    pub fn transitions(&self) -> &[ProductTransition] {
        &self.transitions
    }

    pub fn out_of(&self, state: State) -> &[ProductTransition] {
        let i = state.0 * self.vertex_count + state.1;
        &self.transitions[self.offsets[i]..self.offsets[i + 1]]
    }

    fn out_range(&self, state: State) -> std::ops::Range<usize> {
        let i = state.0 * self.vertex_count + state.1;
        self.offsets[i]..self.offsets[i + 1]
    }
}

pub fn product_graph(g: &LabelledGraph) -> Result<ProductGraph> {
    if !g.is_folded() {
        return Err(Error::NotFolded);
    }
    let n = g.vertex_count();
    let mut transitions = Vec::new();
    let mut offsets = Vec::with_capacity(n * n + 1);
    for p in 0..n {
        for q in 0..n {
            offsets.push(transitions.len());
            if p == q {
                continue;
            }
            for letter in g.alphabet().letters() {
                if let (Some(dp), Some(dq)) = (g.follow(p, letter), g.follow(q, letter)) {
                    let to = (g.dart(dp).target, g.dart(dq).target);
                    debug_assert_ne!(to.0, to.1, "folded graphs never reach the diagonal");
                    transitions.push(ProductTransition { from: (p, q), to, letter, darts: (dp, dq) });
                }
            }
        }
    }
    offsets.push(transitions.len());
    Ok(ProductGraph { vertex_count: n, transitions, offsets })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Lambda {
    Finite(usize),
    Unbounded,
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Lambda::Finite(n) => s.serialize_u64(*n as u64),
            Lambda::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DoubletWitness {
    /// No letter occurs on two darts with distinct sources.
    None,
    /// A longest doublet and the two start vertices of its immersions.
    Word { word: Word, starts: State },
    /// A non-backtracking cycle of product states; its word pumps forever.
    Cycle { states: Vec<State>, word: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubletReport {
    pub lambda: Lambda,
    pub witness: DoubletWitness,
}

/// Longest doublet via longest path on the transition-level lift of the
/// product graph; any cycle there makes the length unbounded.
pub fn longest_doublet(g: &LabelledGraph) -> Result<DoubletReport> {
    let pg = product_graph(g)?;
    let ts = pg.transitions();
    let successors = |t: usize| {
        let tr = ts[t];
        pg.out_range(tr.to).filter(move |&s| ts[s].letter != tr.letter.inverse())
    };

    let mut indegree = vec![0usize; ts.len()];
    for t in 0..ts.len() {
        for s in successors(t) {
            indegree[s] += 1;
        }
    }
    let mut order = Vec::with_capacity(ts.len());
    let mut stack: Vec<usize> = (0..ts.len()).rev().filter(|&t| indegree[t] == 0).collect();
    let mut remaining = indegree.clone();
    while let Some(t) = stack.pop() {
        order.push(t);
        for s in successors(t) {
            remaining[s] -= 1;
            if remaining[s] == 0 {
                stack.push(s);
            }
        }
    }

    if order.len() < ts.len() {
        let alive: Vec<bool> = remaining.iter().map(|&r| r > 0).collect();
        let mut pred = vec![usize::MAX; ts.len()];
        for t in (0..ts.len()).filter(|&t| alive[t]) {
            for s in successors(t).filter(|&s| alive[s]) {
                if pred[s] == usize::MAX {
                    pred[s] = t;
                }
            }
        }
        // Every live node has a live predecessor; walking back must repeat.
        let mut seen = vec![false; ts.len()];
        let mut t = alive.iter().position(|&a| a).expect("some live node");
        while !seen[t] {
            seen[t] = true;
            t = pred[t];
        }
        let mut cycle = vec![t];
        let mut x = pred[t];
        while x != t {
            cycle.push(x);
            x = pred[x];
        }
        cycle.reverse();
        let states = cycle.iter().map(|&c| ts[c].from).collect();
        let word = cycle.iter().map(|&c| ts[c].letter).collect();
        return Ok(DoubletReport { lambda: Lambda::Unbounded, witness: DoubletWitness::Cycle { states, word } });
    }

    if ts.is_empty() {
        return Ok(DoubletReport { lambda: Lambda::Finite(0), witness: DoubletWitness::None });
    }
    let mut len = vec![1usize; ts.len()];
    let mut back = vec![usize::MAX; ts.len()];
    for &t in &order {
        for s in successors(t) {
            if len[t] + 1 > len[s] {
                len[s] = len[t] + 1;
                back[s] = t;
            }
        }
    }
    let (mut t, &best) = len
        .iter()
        .enumerate()
        .max_by_key(|&(i, &l)| (l, std::cmp::Reverse(i)))
        .expect("nonempty");
    let mut chain = vec![t];
    while back[t] != usize::MAX {
        t = back[t];
        chain.push(t);
    }
    chain.reverse();
    let word = chain.iter().map(|&c| ts[c].letter).collect();
    Ok(DoubletReport {
        lambda: Lambda::Finite(best),
        witness: DoubletWitness::Word { word, starts: ts[chain[0]].from },
    })
}

/// Longest word accepted by [`brute_force_doublets`].
pub const BRUTE_FORCE_MAX_LEN: usize = 40;
/// Cap on enumerated walks for [`brute_force_doublets`].
pub const BRUTE_FORCE_MAX_WALKS: usize = 8_000_000;

/// All reduced words of length `1..=max_len` that lift from at least two
/// vertices, found by enumerating every non-backtracking walk.
pub fn brute_force_doublets(g: &LabelledGraph, max_len: usize) -> Result<BTreeSet<Word>> {
    brute_force(g, max_len, 1)
}

/// Doublets of length exactly `len`.
pub fn brute_force_doublets_of_length(g: &LabelledGraph, len: usize) -> Result<BTreeSet<Word>> {
    brute_force(g, len, len)
}

fn brute_force(g: &LabelledGraph, max_len: usize, min_len: usize) -> Result<BTreeSet<Word>> {
    if !g.is_folded() {
        return Err(Error::NotFolded);
    }
    if max_len > BRUTE_FORCE_MAX_LEN {
        return Err(Error::CapExceeded { what: "doublet length", requested: max_len, cap: BRUTE_FORCE_MAX_LEN });
    }
    let mut first_start: HashMap<Vec<Letter>, VertexId> = HashMap::new();
    let mut doublets = BTreeSet::new();
    let mut walks = 0usize;
    for start in 0..g.vertex_count() {
        // (dart path, letters) depth-first
        let mut stack: Vec<(VertexId, Option<DartId>, Vec<Letter>)> = vec![(start, None, Vec::new())];
        while let Some((v, last, word)) = stack.pop() {
            if word.len() >= min_len.max(1) {
                walks += 1;
                if walks > BRUTE_FORCE_MAX_WALKS {
                    return Err(Error::CapExceeded { what: "enumerated walks", requested: walks, cap: BRUTE_FORCE_MAX_WALKS });
                }
                match first_start.get(&word) {
                    Some(&s) if s != start => {
                        doublets.insert(Word(word.clone()));
                    }
                    Some(_) => {}
                    None => {
                        first_start.insert(word.clone(), start);
                    }
                }
            }
            if word.len() == max_len {
                continue;
            }
            for &d in g.out_darts(v) {
                if last.is_some_and(|l| d == crate::lgraph::twin(l)) {
                    continue;
                }
                let mut next = word.clone();
                next.push(g.dart(d).label);
                stack.push((g.dart(d).target, Some(d), next));
            }
        }
    }
    Ok(doublets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateVerdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertificateWitness {
    Doublet { word: String, starts: [String; 2] },
    Cycle { word: String, states: Vec<[String; 2]> },
    Fold { violations: Vec<FoldViolation> },
}

/// Outcome of checking `6 * Lambda < girth` on a labelled graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub folded: bool,
    pub girth: Option<usize>,
    pub diameter: usize,
    /// `None` when the graph is not folded.
    pub lambda: Option<Lambda>,
    /// `Lambda/girth`, unreduced.
    pub ratio: Option<String>,
    pub verdict: CertificateVerdict,
    pub witness: Option<CertificateWitness>,
    /// Conclusions that hold for the presented group when the verdict passes.
    pub granted: Vec<String>,
}

pub const GRANTED_ON_PASS: [&str; 4] = [
    "hyperbolic",
    "torsion-free",
    "standard presentations aspherical",
    "cohomological dimension at most 2",
];

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == CertificateVerdict::Pass
    }

    /// Finite `Lambda`, if known.
    pub fn lambda_len(&self) -> Option<usize> {
        match self.lambda {
            Some(Lambda::Finite(n)) => Some(n),
            _ => None,
        }
    }
}

/// Integer form of `lambda < girth / 6`; a forest has no cycles to violate it.
pub fn condition_holds(lambda: usize, girth: Option<usize>) -> bool {
    girth.is_none_or(|g| 6 * lambda < g)
}

pub fn certify(g: &LabelledGraph) -> Certificate {
    let girth = g.girth();
    let diameter = g.diameter();
    let fold = g.check_folded();
    if !fold.folded {
        return Certificate {
            folded: false,
            girth,
            diameter,
            lambda: None,
            ratio: None,
            verdict: CertificateVerdict::Fail,
            witness: Some(CertificateWitness::Fold { violations: fold.violations }),
            granted: Vec::new(),
        };
    }
    let report = longest_doublet(g).expect("graph is folded");
    let name = |v: VertexId| g.vertex_name(v).to_string();
    let witness = match &report.witness {
        DoubletWitness::None => None,
        DoubletWitness::Word { word, starts } => Some(CertificateWitness::Doublet {
            word: g.alphabet().format_word(word),
            starts: [name(starts.0), name(starts.1)],
        }),
        DoubletWitness::Cycle { states, word } => Some(CertificateWitness::Cycle {
            word: g.alphabet().format_word(word),
            states: states.iter().map(|&(p, q)| [name(p), name(q)]).collect(),
        }),
    };
    let pass = match report.lambda {
        Lambda::Finite(l) => condition_holds(l, girth),
        Lambda::Unbounded => false,
    };
    let ratio = match (report.lambda, girth) {
        (Lambda::Finite(l), Some(gi)) => Some(format!("{l}/{gi}")),
        (Lambda::Unbounded, _) => Some("unbounded".to_string()),
        (Lambda::Finite(_), None) => None,
    };
    Certificate {
        folded: true,
        girth,
        diameter,
        lambda: Some(report.lambda),
        ratio,
        verdict: if pass { CertificateVerdict::Pass } else { CertificateVerdict::Fail },
        witness,
        granted: if pass { GRANTED_ON_PASS.iter().map(|s| s.to_string()).collect() } else { Vec::new() },
    }
}
