//! Word problem by Dehn reduction against the graph itself.
//!
//! A reduction step finds a cyclic subword `u` that lifts to a path from
//! `x` to `y` with `d(y, x) < |u|` and replaces it by the inverse of a
//! geodesic return word `q`: `u q` reads a closed path, so `u = q^-1` in the
//! group. Every step is sound on any folded graph. When the certificate
//! passes, a trivial cyclically reduced word always admits a step, so getting
//! stuck proves nontriviality.

use serde::Serialize;
use serde_json::{json, Value};

use crate::cancel::{certify, Certificate};
use crate::error::{Error, Result};
use crate::lgraph::{LabelledGraph, VertexId};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnStep {
    /// Rotation applied to the current cyclic word before the step.
    pub rotation: usize,
    /// Offset of `u` in the rotated word.
    pub start: usize,
    /// `|u|`.
    pub len: usize,
    pub start_vertex: VertexId,
    pub end_vertex: VertexId,
    /// Geodesic word from `end_vertex` back to `start_vertex`; `u` is
    /// replaced by its inverse.
    pub return_word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnTrace {
    pub input: Word,
    pub steps: Vec<DehnStep>,
    pub final_word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Trivial(DehnTrace),
    /// Dehn-irreducible on a certified graph, hence nontrivial.
    Nontrivial(DehnTrace),
    /// Dehn-irreducible on an uncertified graph; nothing is claimed.
    Irreducible(DehnTrace),
}

impl Verdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Verdict::Trivial(_))
    }

    pub fn trace(&self) -> &DehnTrace {
        match self {
            Verdict::Trivial(t) | Verdict::Nontrivial(t) | Verdict::Irreducible(t) => t,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Trivial(_) => "trivial",
            Verdict::Nontrivial(_) => "nontrivial",
            Verdict::Irreducible(_) => "irreducible",
        }
    }
}

/// Cyclically reduced core used as the starting point of every trace.
fn normalize(w: &Word) -> Word {
    w.cyclic_reduce().0
}

/// Rewrites `word` (already rotated) by replacing `u = word[start..start+len]`
/// with `replacement`, then reduces cyclically.
fn rewrite(word: &Word, step: &DehnStep) -> Word {
    let rotated = word.rotate(step.rotation);
    let letters = rotated.letters();
    let mut out = letters[..step.start].to_vec();
    out.extend(step.return_word.invert().letters());
    out.extend_from_slice(&letters[step.start + step.len..]);
    normalize(&Word(out))
}

/// Dehn solver bound to one folded graph.
#[derive(Debug, Clone)]
pub struct Dehn<'g> {
    graph: &'g LabelledGraph,
    certified: bool,
}

impl<'g> Dehn<'g> {
    pub fn new(graph: &'g LabelledGraph) -> Result<Self> {
        let cert = certify(graph);
        Self::with_certificate(graph, &cert)
    }

    pub fn with_certificate(graph: &'g LabelledGraph, cert: &Certificate) -> Result<Self> {
        if !graph.is_folded() {
            return Err(Error::NotFolded);
        }
        Ok(Dehn { graph, certified: cert.passed() })
    }

    pub fn graph(&self) -> &'g LabelledGraph {
        self.graph
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// First reduction step in scan order (rotation, position, start
    /// vertex, longest `u`), or `None` if `w` is Dehn-irreducible.
    pub fn greendlinger_step(&self, w: &Word) -> Option<DehnStep> {
        let n = w.len();
        if n == 0 {
            return None;
        }
        let g = self.graph;
        let vcount = g.vertex_count();
        let letters = w.letters();
        // best[s * V + v][k - 1]: longest admissible |u| <= k for the lift of
        // the cyclic word from position s at vertex v; ends[..] its endpoints.
        let mut cache: Vec<Option<(Vec<u32>, Vec<VertexId>)>> = vec![None; n * vcount];
        let mut lookup = |s: usize, v: VertexId, cap: usize| -> Option<(usize, VertexId)> {
            let slot = &mut cache[s * vcount + v];
            if slot.is_none() {
                let mut ends = Vec::new();
                let mut x = v;
                for k in 0..n {
                    match g.next_vertex(x, letters[(s + k) % n]) {
                        Some(y) => {
                            ends.push(y);
                            x = y;
                        }
                        None => break,
                    }
                }
                let mut best = Vec::with_capacity(ends.len());
                let mut current = 0u32;
                for (i, &end) in ends.iter().enumerate() {
                    let len = i + 1;
                    if g.distance(end, v) < len {
                        current = len as u32;
                    }
                    best.push(current);
                }
                *slot = Some((best, ends));
            }
            let (best, ends) = slot.as_ref().expect("filled");
            let k = cap.min(best.len());
            if k == 0 || best[k - 1] == 0 {
                return None;
            }
            let len = best[k - 1] as usize;
            Some((len, ends[len - 1]))
        };

        for rotation in 0..n {
            for start in 0..n {
                let s = (rotation + start) % n;
                let cap = n - start;
                for v in 0..vcount {
                    if let Some((len, end)) = lookup(s, v, cap) {
                        return Some(DehnStep {
                            rotation,
                            start,
                            len,
                            start_vertex: v,
                            end_vertex: end,
                            return_word: g.shortest_path_word(end, v),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_trivial(&self, w: &Word) -> Verdict {
        let mut current = normalize(w);
        let mut steps = Vec::new();
        while !current.is_empty() {
            match self.greendlinger_step(&current) {
                Some(step) => {
                    current = rewrite(&current, &step);
                    steps.push(step);
                }
                None => break,
            }
        }
        let trace = DehnTrace { input: w.clone(), steps, final_word: current };
        if trace.final_word.is_empty() {
            Verdict::Trivial(trace)
        } else if self.certified {
            Verdict::Nontrivial(trace)
        } else {
            Verdict::Irreducible(trace)
        }
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Verdict {
        self.is_trivial(&u.concat(&v.invert()).free_reduce())
    }
}

pub fn greendlinger_step(g: &LabelledGraph, w: &Word) -> Result<Option<DehnStep>> {
    Ok(Dehn::new(g)?.greendlinger_step(w))
}

pub fn is_trivial(g: &LabelledGraph, w: &Word) -> Result<Verdict> {
    Ok(Dehn::new(g)?.is_trivial(w))
}

pub fn equal(g: &LabelledGraph, u: &Word, v: &Word) -> Result<Verdict> {
    Ok(Dehn::new(g)?.equal(u, v))
}

/// First failed check when replaying a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceError {
    pub step: Option<usize>,
    pub reason: String,
}

/// Replays `trace` against `g` using only lifts, distances and word
/// reductions, independently of the step search.
pub fn check_trace(g: &LabelledGraph, w: &Word, trace: &DehnTrace) -> std::result::Result<(), TraceError> {
    let fail = |step: Option<usize>, reason: String| Err(TraceError { step, reason });
    if &trace.input != w {
        return fail(None, "trace input differs from the word".into());
    }
    if !g.is_folded() {
        return fail(None, "graph is not folded".into());
    }
    let n = g.vertex_count();
    let mut current = normalize(w);
    for (i, step) in trace.steps.iter().enumerate() {
        let at = Some(i);
        if current.is_empty() {
            return fail(at, "step applied to the empty word".into());
        }
        if step.start_vertex >= n || step.end_vertex >= n {
            return fail(at, "vertex out of range".into());
        }
        if step.rotation >= current.len() || step.len == 0 || step.start + step.len > current.len() {
            return fail(at, "span out of range".into());
        }
        let u = current.rotate(step.rotation).slice(step.start, step.len);
        match g.endpoint(step.start_vertex, &u) {
            Some(end) if end == step.end_vertex => {}
            _ => return fail(at, "subword does not lift to the recorded path".into()),
        }
        if g.endpoint(step.end_vertex, &step.return_word) != Some(step.start_vertex) {
            return fail(at, "return word does not close the path".into());
        }
        if step.return_word.len() >= step.len {
            return fail(at, "return word is not shorter than the subword".into());
        }
        if step.return_word.len() != g.distance(step.end_vertex, step.start_vertex) {
            return fail(at, "return word is not geodesic".into());
        }
        current = rewrite(&current, step);
    }
    if current != trace.final_word {
        return fail(None, "replayed word differs from the recorded final word".into());
    }
    Ok(())
}

pub fn verify_trace(g: &LabelledGraph, w: &Word, trace: &DehnTrace) -> bool {
    check_trace(g, w, trace).is_ok()
}

#[derive(Serialize)]
struct StepJson {
    rotation: usize,
    start: usize,
    length: usize,
    start_vertex: String,
    end_vertex: String,
    return_word: String,
    replacement: String,
}

pub fn trace_steps_json(g: &LabelledGraph, trace: &DehnTrace) -> Value {
    let s = g.alphabet();
    let steps: Vec<StepJson> = trace
        .steps
        .iter()
        .map(|st| StepJson {
            rotation: st.rotation,
            start: st.start,
            length: st.len,
            start_vertex: g.vertex_name(st.start_vertex).to_string(),
            end_vertex: g.vertex_name(st.end_vertex).to_string(),
            return_word: s.format_word(&st.return_word),
            replacement: s.format_word(&st.return_word.invert()),
        })
        .collect();
    serde_json::to_value(steps).expect("steps serialize")
}

/// `{word, verdict, steps, final}` report for one query.
pub fn verdict_json(g: &LabelledGraph, word: &Word, verdict: &Verdict) -> Value {
    let s = g.alphabet();
    json!({
        "word": s.format_word(word),
        "verdict": verdict.label(),
        "steps": trace_steps_json(g, verdict.trace()),
        "final": s.format_word(&verdict.trace().final_word),
    })
}
