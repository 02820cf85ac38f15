//! Finite labelled multigraphs.
//!
//! Every unoriented edge `e` is stored as the dart pair `2e` (the orientation
//! written in the input) and `2e + 1` (its twin). Vertex ids follow
//! lexicographic name order, so "name order" and "id order" coincide.

mod random;

pub use random::{anneal_labelling, doublet_collisions, random_labelling, Shape, DEFAULT_LABELLING_ATTEMPTS};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub type VertexId = usize;
pub type DartId = usize;

const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dart {
    pub source: VertexId,
    pub target: VertexId,
    pub label: Letter,
}

#[inline]
pub fn twin(d: DartId) -> DartId {
    d ^ 1
}

/// A vertex path given by its start and its darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub start: VertexId,
    pub darts: Vec<DartId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldViolation {
    pub vertex: String,
    pub letter: String,
    pub darts: (DartId, DartId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldReport {
    pub folded: bool,
    pub violations: Vec<FoldViolation>,
}

#[derive(Debug)]
pub struct LabelledGraph {
    alphabet: Alphabet,
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    darts: Vec<Dart>,
    /// Outgoing darts per vertex, sorted by (target, label).
    out: Vec<Vec<DartId>>,
    /// `step[v * 2m + letter]`: the first outgoing dart with that label.
    step: Vec<Option<DartId>>,
    folded: bool,
    warnings: Vec<String>,
    distances: OnceLock<Vec<u32>>,
}

impl Clone for LabelledGraph {
    fn clone(&self) -> Self {
        LabelledGraph {
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            index: self.index.clone(),
            darts: self.darts.clone(),
            out: self.out.clone(),
            step: self.step.clone(),
            folded: self.folded,
            warnings: self.warnings.clone(),
            distances: OnceLock::new(),
        }
    }
}

impl LabelledGraph {
    /// Builds a connected graph from named edges; each edge `(u, v, s)` adds
    /// a dart `u -> v` labelled `s` and its twin labelled `s^-1`.
    pub fn new(alphabet: Alphabet, edges: &[(String, String, Letter)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let vertex_set: BTreeSet<&str> = edges
            .iter()
            .flat_map(|(u, v, _)| [u.as_str(), v.as_str()])
            .collect();
        let names: Vec<String> = vertex_set.into_iter().map(str::to_string).collect();
        let index: HashMap<String, VertexId> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();

        let mut darts = Vec::with_capacity(edges.len() * 2);
        for (u, v, label) in edges {
            let (source, target) = (index[u], index[v]);
            darts.push(Dart { source, target, label: *label });
            darts.push(Dart { source: target, target: source, label: label.inverse() });
        }

        let n = names.len();
        let mut out = vec![Vec::new(); n];
        for (d, dart) in darts.iter().enumerate() {
            out[dart.source].push(d);
        }
        for list in &mut out {
            list.sort_by_key(|&d| (darts[d].target, darts[d].label, d));
        }

        let letters = alphabet.letter_count();
        let mut step = vec![None; n * letters];
        let mut folded = true;
        for (v, list) in out.iter().enumerate() {
            for &d in list {
                let slot = &mut step[v * letters + darts[d].label.index()];
                if slot.is_none() {
                    *slot = Some(d);
                } else {
                    folded = false;
                }
            }
        }

        let mut warnings = Vec::new();
        for (v, list) in out.iter().enumerate() {
            if list.len() < 2 {
                warnings.push(format!("vertex `{}` has degree {}", names[v], list.len()));
            }
        }

        let graph = LabelledGraph {
            alphabet,
            names,
            index,
            darts,
            out,
            step,
            folded,
            warnings,
            distances: OnceLock::new(),
        };
        graph.check_connected()?;
        Ok(graph)
    }

    /// Parses the line-oriented graph format (`alphabet ...` then `edge u v s` lines).
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let syntax = |message: &str| Error::Syntax { line: line_no, message: message.into() };
            match fields[0] {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(syntax("`alphabet` given more than once"));
                    }
                    if !edges.is_empty() {
                        return Err(syntax("`alphabet` must precede all edges"));
                    }
                    alphabet = Some(Alphabet::new(fields[1..].iter().copied()).map_err(|e| {
                        Error::Syntax { line: line_no, message: e.to_string() }
                    })?);
                }
                "edge" => {
                    let alphabet = alphabet
                        .as_ref()
                        .ok_or_else(|| syntax("`alphabet` must be the first directive"))?;
                    if fields.len() != 4 {
                        return Err(syntax("expected `edge <u> <v> <label>`"));
                    }
                    let label = alphabet.letter(fields[3]).ok_or_else(|| Error::UnknownLabel {
                        line: line_no,
                        label: fields[3].to_string(),
                    })?;
                    edges.push((fields[1].to_string(), fields[2].to_string(), label));
                }
                other => return Err(syntax(&format!("unknown directive `{other}`"))),
            }
        }
        let alphabet = alphabet.ok_or(Error::Syntax { line: 0, message: "missing `alphabet`".into() })?;
        LabelledGraph::new(alphabet, &edges)
    }

    /// Serializes back to the text format; `parse(to_text(g))` rebuilds `g`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("alphabet");
        for name in self.alphabet.names() {
            s.push(' ');
            s.push_str(name);
        }
        s.push('\n');
        for e in 0..self.edge_count() {
            let d = self.darts[2 * e];
            let _ = writeln!(
                s,
                "edge {} {} {}",
                self.names[d.source],
                self.names[d.target],
                self.alphabet.token(d.label)
            );
        }
        s
    }

    fn check_connected(&self) -> Result<()> {
        let dist = self.bfs(0, None);
        if let Some(v) = dist.iter().position(|&d| d == UNREACHED) {
            return Err(Error::Disconnected(self.names[v].clone(), self.names[0].clone()));
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, d: DartId) -> Dart {
        self.darts[d]
    }

    pub fn out_darts(&self, v: VertexId) -> &[DartId] {
        &self.out[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn is_folded(&self) -> bool {
        self.folded
    }

    /// Lists every (vertex, letter) with two outgoing darts carrying that letter.
    pub fn check_folded(&self) -> FoldReport {
        let mut violations = Vec::new();
        for (v, list) in self.out.iter().enumerate() {
            let mut by_label: Vec<DartId> = list.clone();
            by_label.sort_by_key(|&d| (self.darts[d].label, d));
            for pair in by_label.windows(2) {
                if self.darts[pair[0]].label == self.darts[pair[1]].label {
                    violations.push(FoldViolation {
                        vertex: self.names[v].clone(),
                        letter: self.alphabet.token(self.darts[pair[0]].label),
                        darts: (pair[0], pair[1]),
                    });
                }
            }
        }
        FoldReport { folded: violations.is_empty(), violations }
    }

    /// The dart out of `v` labelled `letter`, if any (first one when unfolded).
    #[inline]
    pub fn follow(&self, v: VertexId, letter: Letter) -> Option<DartId> {
        self.step[v * self.alphabet.letter_count() + letter.index()]
    }

    /// Target of the `letter`-dart out of `v`.
    #[inline]
    pub fn next_vertex(&self, v: VertexId, letter: Letter) -> Option<VertexId> {
        self.follow(v, letter).map(|d| self.darts[d].target)
    }

    /// The unique path from `start` reading `word`, if it exists.
    pub fn walk(&self, start: VertexId, word: &Word) -> Result<Option<Path>> {
        if !self.folded {
            return Err(Error::NotFolded);
        }
        Ok(self.lift(start, word))
    }

    /// Like [`walk`](Self::walk) without the foldedness check; on unfolded
    /// graphs it follows the first matching dart.
    pub fn lift(&self, start: VertexId, word: &Word) -> Option<Path> {
        let mut darts = Vec::with_capacity(word.len());
        let mut v = start;
        for &l in word {
            let d = self.follow(v, l)?;
            darts.push(d);
            v = self.darts[d].target;
        }
        Some(Path { start, darts })
    }

    /// End vertex of the lift of `word` from `start`.
    pub fn endpoint(&self, start: VertexId, word: &Word) -> Option<VertexId> {
        word.iter().try_fold(start, |v, &l| self.next_vertex(v, l))
    }

    pub fn path_end(&self, path: &Path) -> VertexId {
        path.darts.last().map_or(path.start, |&d| self.darts[d].target)
    }

    pub fn path_word(&self, darts: &[DartId]) -> Word {
        darts.iter().map(|&d| self.darts[d].label).collect()
    }

    /// BFS distances from `source`, optionally ignoring one unoriented edge.
    fn bfs(&self, source: VertexId, skip_edge: Option<usize>) -> Vec<u32> {
        self.bfs_tree(source, skip_edge).0
    }

    fn bfs_tree(&self, source: VertexId, skip_edge: Option<usize>) -> (Vec<u32>, Vec<Option<DartId>>) {
        let n = self.vertex_count();
        let mut dist = vec![UNREACHED; n];
        let mut parent = vec![None; n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &d in &self.out[v] {
                if skip_edge == Some(d / 2) {
                    continue;
                }
                let t = self.darts[d].target;
                if dist[t] == UNREACHED {
                    dist[t] = dist[v] + 1;
                    parent[t] = Some(d);
                    queue.push_back(t);
                }
            }
        }
        (dist, parent)
    }

    fn distance_table(&self) -> &[u32] {
        self.distances.get_or_init(|| {
            let n = self.vertex_count();
            let mut table = Vec::with_capacity(n * n);
            for v in 0..n {
                table.extend(self.bfs(v, None));
            }
            table
        })
    }

    #[inline]
    pub fn distance(&self, u: VertexId, v: VertexId) -> usize {
        self.distance_table()[u * self.vertex_count() + v] as usize
    }

    pub fn diameter(&self) -> usize {
        self.distance_table().iter().copied().max().unwrap_or(0) as usize
    }

    pub fn girth(&self) -> Option<usize> {
        self.girth_cycle().map(|c| c.len())
    }

    /// A shortest cycle as a closed dart path, found by removing each edge in
    /// turn and measuring the distance between its endpoints.
    pub fn girth_cycle(&self) -> Option<Vec<DartId>> {
        let mut best: Option<Vec<DartId>> = None;
        for e in 0..self.edge_count() {
            let d = 2 * e;
            let Dart { source: x, target: y, .. } = self.darts[d];
            if x == y {
                return Some(vec![d]);
            }
            if best.as_ref().is_some_and(|b| b.len() <= 2) {
                continue;
            }
            let (dist, parent) = self.bfs_tree(x, Some(e));
            if dist[y] == UNREACHED {
                continue;
            }
            if best.as_ref().is_none_or(|b| dist[y] as usize + 1 < b.len()) {
                let mut path = Vec::new();
                let mut v = y;
                while let Some(p) = parent[v] {
                    path.push(p);
                    v = self.darts[p].source;
                }
                path.reverse();
                path.push(twin(d));
                best = Some(path);
            }
        }
        best
    }

    /// Darts of a shortest path, breaking ties by (target name, label).
    pub fn shortest_path(&self, u: VertexId, v: VertexId) -> Vec<DartId> {
        let (_, parent) = self.bfs_tree(u, None);
        let mut path = Vec::new();
        let mut x = v;
        while x != u {
            let d = parent[x].expect("graph is connected");
            path.push(d);
            x = self.darts[d].source;
        }
        path.reverse();
        path
    }

    pub fn shortest_path_word(&self, u: VertexId, v: VertexId) -> Word {
        self.path_word(&self.shortest_path(u, v))
    }

    /// First Betti number `E - V + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// BFS spanning tree rooted at the least vertex and the cycle it induces
    /// for each remaining edge.
    pub fn spanning_tree(&self) -> CycleFamily {
        let root = 0;
        let (dist, parent) = self.bfs_tree(root, None);
        let mut order: Vec<VertexId> = (0..self.vertex_count()).collect();
        order.sort_by_key(|&v| (dist[v], v));
        let tree: Vec<DartId> = order.iter().filter_map(|&v| parent[v]).collect();

        let mut base_paths: Vec<Vec<DartId>> = vec![Vec::new(); self.vertex_count()];
        for &v in &order {
            if let Some(p) = parent[v] {
                let mut path = base_paths[self.darts[p].source].clone();
                path.push(p);
                base_paths[v] = path;
            }
        }

        let mut in_tree = vec![false; self.edge_count()];
        for &d in &tree {
            in_tree[d / 2] = true;
        }
        let cycles = (0..self.edge_count())
            .filter(|&e| !in_tree[e])
            .map(|e| {
                let d = 2 * e;
                let Dart { source: x, target: y, .. } = self.darts[d];
                let mut darts = base_paths[x].clone();
                darts.push(d);
                darts.extend(base_paths[y].iter().rev().map(|&t| twin(t)));
                FamilyCycle { edge: e, darts }
            })
            .collect();
        let base_words = base_paths.iter().map(|p| self.path_word(p)).collect();
        CycleFamily { root, tree, cycles, base_words }
    }
}

/// A closed path through one non-tree edge, based at the tree root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCycle {
    pub edge: usize,
    pub darts: Vec<DartId>,
}

/// Standard family of cycles attached to a maximal subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleFamily {
    pub root: VertexId,
    pub tree: Vec<DartId>,
    pub cycles: Vec<FamilyCycle>,
    /// Word read along the tree from the root to each vertex.
    pub base_words: Vec<Word>,
}

impl CycleFamily {
    pub fn cycle_words(&self, graph: &LabelledGraph) -> Vec<Word> {
        self.cycles.iter().map(|c| graph.path_word(&c.darts)).collect()
    }
}
