use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LabelledGraph;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter};

pub const DEFAULT_LABELLING_ATTEMPTS: usize = 1000;

/// An unlabelled multigraph: named vertices and edges between their indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

fn padded(prefix: &str, i: usize, count: usize) -> String {
    let width = count.saturating_sub(1).to_string().len();
    format!("{prefix}{i:0width$}")
}

impl Shape {
    /// Cycle on `n >= 1` vertices (`n = 1` is a loop, `n = 2` a digon).
    pub fn cycle(n: usize) -> Self {
        let names = (0..n).map(|i| padded("v", i, n)).collect();
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Shape { names, edges }
    }

    /// Path with `n >= 2` vertices.
    pub fn path(n: usize) -> Self {
        let names = (0..n).map(|i| padded("v", i, n)).collect();
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Shape { names, edges }
    }

    /// Two poles joined by `arms` internally disjoint paths of `arm_len` edges.
    pub fn theta(arms: usize, arm_len: usize) -> Self {
        Self::theta_with(&vec![arm_len; arms])
    }

    /// Theta graph with arms of individual lengths.
    pub fn theta_with(arm_lengths: &[usize]) -> Self {
        let mut names = vec!["p0".to_string(), "p1".to_string()];
        let mut edges = Vec::new();
        let arms = arm_lengths.len();
        for (arm, &len) in arm_lengths.iter().enumerate() {
            let mut prev = 0;
            for j in 1..len {
                names.push(format!("{}_{}", padded("x", arm, arms), padded("", j, len)));
                let cur = names.len() - 1;
                edges.push((prev, cur));
                prev = cur;
            }
            edges.push((prev, 1));
        }
        Shape { names, edges }
    }

    /// Complete graph on `k` vertices with every edge subdivided into
    /// `len` edges.
    pub fn subdivided_complete(k: usize, len: usize) -> Self {
        let mut names: Vec<String> = (0..k).map(|i| padded("c", i, k)).collect();
        let mut edges = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let mut prev = a;
                for j in 1..len {
                    names.push(format!("{}{}_{}", padded("s", a, k), b, padded("", j, len)));
                    let cur = names.len() - 1;
                    edges.push((prev, cur));
                    prev = cur;
                }
                edges.push((prev, b));
            }
        }
        Shape { names, edges }
    }

    /// Degrees with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.names.len()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn from_graph(graph: &LabelledGraph) -> Self {
        let edges = (0..graph.edge_count())
            .map(|e| {
                let d = graph.dart(2 * e);
                (d.source, d.target)
            })
            .collect();
        Shape { names: graph.vertex_names().to_vec(), edges }
    }

    /// Labels the shape; `labels[e]` is the letter on edge `e` read from its
    /// first endpoint.
    pub fn label(&self, alphabet: Alphabet, labels: &[Letter]) -> Result<LabelledGraph> {
        let edges: Vec<(String, String, Letter)> = self
            .edges
            .iter()
            .zip(labels)
            .map(|(&(u, v), &l)| (self.names[u].clone(), self.names[v].clone(), l))
            .collect();
        LabelledGraph::new(alphabet, &edges)
    }
}

/// Seeded greedy folded labelling.
///
/// Edges are labelled in order; each picks uniformly among the letters that
/// keep both endpoints folded. A dead end restarts the whole pass with the same
/// generator, up to `max_attempts` passes.
pub fn random_labelling(
    shape: &Shape,
    alphabet: Alphabet,
    seed: u64,
    max_attempts: usize,
) -> Result<LabelledGraph> {
    let letters = alphabet.letter_count();
    for (v, &d) in shape.degrees().iter().enumerate() {
        if d > letters {
            return Err(Error::ImpossibleLabelling {
                vertex: shape.names[v].clone(),
                degree: d,
                max: letters,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..max_attempts {
        let mut used: Vec<HashSet<Letter>> = vec![HashSet::new(); shape.names.len()];
        let mut labels = Vec::with_capacity(shape.edges.len());
        for &(u, v) in &shape.edges {
            let allowed: Vec<Letter> = alphabet
                .letters()
                .filter(|&s| {
                    !used[u].contains(&s)
                        && !used[v].contains(&s.inverse())
                        && (u != v || (!used[u].contains(&s.inverse())))
                })
                .collect();
            if allowed.is_empty() {
                continue 'attempt;
            }
            let s = allowed[rng.gen_range(0..allowed.len())];
            used[u].insert(s);
            used[v].insert(s.inverse());
            labels.push(s);
        }
        return shape.label(alphabet, &labels);
    }
    Err(Error::RetriesExhausted(max_attempts))
}

/// Number of pairs of distinct-start non-backtracking walks of length `k`
/// that read the same word, for a folded labelling of `shape`.
pub fn doublet_collisions(shape: &Shape, labels: &[Letter], k: usize) -> usize {
    let n = shape.names.len();
    let mut out: Vec<Vec<(usize, usize, Letter)>> = vec![Vec::new(); n];
    for (e, (&(u, v), &l)) in shape.edges.iter().zip(labels).enumerate() {
        out[u].push((2 * e, v, l));
        out[v].push((2 * e + 1, u, l.inverse()));
    }
    let mut seen: HashMap<Vec<Letter>, usize> = HashMap::new();
    let mut word = Vec::with_capacity(k);
    fn walk(
        out: &[Vec<(usize, usize, Letter)>],
        v: usize,
        last: Option<usize>,
        k: usize,
        word: &mut Vec<Letter>,
        seen: &mut HashMap<Vec<Letter>, usize>,
    ) {
        if word.len() == k {
            *seen.entry(word.clone()).or_insert(0) += 1;
            return;
        }
        for &(d, t, l) in &out[v] {
            if last == Some(d ^ 1) {
                continue;
            }
            word.push(l);
            walk(out, t, Some(d), k, word, seen);
            word.pop();
        }
    }
    for v in 0..n {
        walk(&out, v, None, k, &mut word, &mut seen);
    }
    seen.values().map(|&c| c * (c - 1) / 2).sum()
}

/// Seeded local search for a folded labelling with no doublet of length
/// `max_lambda + 1` (hence longest doublet at most `max_lambda`).
///
/// Starts from [`random_labelling`] and repeatedly relabels one edge with a
/// letter that keeps the labelling folded, accepting moves by simulated
/// annealing on the number of colliding walks.
pub fn anneal_labelling(
    shape: &Shape,
    alphabet: Alphabet,
    max_lambda: usize,
    seed: u64,
    max_steps: usize,
) -> Result<LabelledGraph> {
    let start = random_labelling(shape, alphabet.clone(), seed, DEFAULT_LABELLING_ATTEMPTS)?;
    let mut labels: Vec<Letter> = (0..start.edge_count()).map(|e| start.dart(2 * e).label).collect();
    let k = max_lambda + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut used: Vec<HashSet<Letter>> = vec![HashSet::new(); shape.names.len()];
    for (&(u, v), &l) in shape.edges.iter().zip(&labels) {
        used[u].insert(l);
        used[v].insert(l.inverse());
    }
    let mut cost = doublet_collisions(shape, &labels, k);
    for step in 0..max_steps {
        if cost == 0 {
            return shape.label(alphabet, &labels);
        }
        let e = rng.gen_range(0..shape.edges.len());
        let (u, v) = shape.edges[e];
        let old = labels[e];
        used[u].remove(&old);
        used[v].remove(&old.inverse());
        let allowed: Vec<Letter> = alphabet
            .letters()
            .filter(|&s| {
                s != old
                    && !used[u].contains(&s)
                    && !used[v].contains(&s.inverse())
                    && (u != v || !used[u].contains(&s.inverse()))
            })
            .collect();
        let candidate = if allowed.is_empty() { old } else { allowed[rng.gen_range(0..allowed.len())] };
        labels[e] = candidate;
        let new_cost = doublet_collisions(shape, &labels, k);
        let temperature = 2.0 * (1.0 - step as f64 / max_steps as f64) + 0.05;
        let accept = new_cost <= cost
            || rng.gen::<f64>() < (-((new_cost - cost) as f64) / temperature).exp();
        if accept {
            cost = new_cost;
        } else {
            labels[e] = old;
        }
        used[u].insert(labels[e]);
        used[v].insert(labels[e].inverse());
    }
    if cost == 0 {
        return shape.label(alphabet, &labels);
    }
    Err(Error::RetriesExhausted(max_steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alphabet(m: usize) -> Alphabet {
        Alphabet::new((0..m).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    #[test]
    fn shapes_have_expected_sizes() {
        let t = Shape::theta(3, 9);
        assert_eq!(t.names.len(), 2 + 3 * 8);
        assert_eq!(t.edges.len(), 27);
        let k = Shape::subdivided_complete(4, 3);
        assert_eq!(k.names.len(), 4 + 6 * 2);
        assert_eq!(k.edges.len(), 18);
        assert_eq!(Shape::cycle(7).edges.len(), 7);
        assert_eq!(Shape::theta_with(&[3, 4, 4]).names.len(), 10);
    }

    #[test]
    fn parallel_edges_get_distinct_labels() {
        let shape = Shape::theta(3, 1);
        for seed in 0..20 {
            let g = random_labelling(&shape, alphabet(3), seed, 100).unwrap();
            assert!(g.check_folded().folded);
            assert_eq!(g.edge_count(), 3);
        }
    }

    #[test]
    fn triangle_with_one_letter() {
        let g = random_labelling(&Shape::cycle(3), alphabet(1), 5, DEFAULT_LABELLING_ATTEMPTS).unwrap();
        assert!(g.is_folded());
    }

    #[test]
    fn impossible_and_exhausted_are_distinct() {
        let star = Shape {
            names: vec!["c".into(), "x".into(), "y".into(), "z".into()],
            edges: vec![(0, 1), (0, 2), (0, 3)],
        };
        assert!(matches!(
            random_labelling(&star, alphabet(1), 0, 10),
            Err(Error::ImpossibleLabelling { degree: 3, max: 2, .. })
        ));
        // K5 with two letters is 4-regular: every vertex must use all four
        // letters, so single-pass greedy often dead-ends.
        let mut k5 = Shape { names: (0..5).map(|i| format!("k{i}")).collect(), edges: vec![] };
        for a in 0..5 {
            for b in a + 1..5 {
                k5.edges.push((a, b));
            }
        }
        let failed = (0..50).find(|&seed| {
            matches!(random_labelling(&k5, alphabet(2), seed, 1), Err(Error::RetriesExhausted(1)))
        });
        let seed = failed.expect("some single pass should dead-end");
        let g = random_labelling(&k5, alphabet(2), seed, DEFAULT_LABELLING_ATTEMPTS).unwrap();
        assert!(g.check_folded().folded);
    }

    #[test]
    fn labelling_is_deterministic() {
        let shape = Shape::theta(3, 4);
        let a = random_labelling(&shape, alphabet(3), 42, 100).unwrap();
        let b = random_labelling(&shape, alphabet(3), 42, 100).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    proptest! {
        #[test]
        fn random_labellings_are_folded(seed in any::<u64>(), arms in 2usize..5, len in 1usize..6, m in 2usize..4) {
            let shape = Shape::theta(arms, len);
            if arms <= 2 * m {
                let g = random_labelling(&shape, alphabet(m), seed, DEFAULT_LABELLING_ATTEMPTS).unwrap();
                prop_assert!(g.check_folded().folded);
            }
        }
    }
}
