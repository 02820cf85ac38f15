//! Group presentations read off a standard family of cycles.

use serde::{Serialize, Serializer};

use crate::cancel::{certify, Certificate};
use crate::lgraph::{CycleFamily, LabelledGraph};
use crate::words::{Alphabet, Word};

/// Status of the "rank of pi_1 exceeds the number of generators" criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infiniteness {
    /// Certified and `rank > m`: infinite and not quasi-isometric to Z.
    Guaranteed,
    CriterionNotMet,
    /// No passing certificate.
    NotApplicable,
}

impl Infiniteness {
    pub fn as_str(self) -> &'static str {
        match self {
            Infiniteness::Guaranteed => "guaranteed",
            Infiniteness::CriterionNotMet => "unknown",
            Infiniteness::NotApplicable => "n/a",
        }
    }
}

impl Serialize for Infiniteness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    /// Cyclically reduced relators, one per cycle of the family.
    pub relators: Vec<Word>,
    /// Index into `origin.cycles` for each relator.
    pub relator_cycles: Vec<usize>,
    pub origin: CycleFamily,
    pub rank_pi1: usize,
    pub infinite: Infiniteness,
    pub warnings: Vec<String>,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.alphabet.rank()
    }
}

pub fn infiniteness_criterion(cert: &Certificate, rank_pi1: usize, generators: usize) -> Infiniteness {
    if !cert.passed() {
        Infiniteness::NotApplicable
    } else if rank_pi1 > generators {
        Infiniteness::Guaranteed
    } else {
        Infiniteness::CriterionNotMet
    }
}

/// Presentation from `family`, certifying `g` to fill in the infiniteness status.
pub fn presentation(g: &LabelledGraph, family: &CycleFamily) -> Presentation {
    presentation_with(g, family, &certify(g))
}

pub fn presentation_with(g: &LabelledGraph, family: &CycleFamily, cert: &Certificate) -> Presentation {
    let mut relators = Vec::with_capacity(family.cycles.len());
    let mut relator_cycles = Vec::with_capacity(family.cycles.len());
    let mut warnings = Vec::new();
    for (i, cycle) in family.cycles.iter().enumerate() {
        let (core, _) = g.path_word(&cycle.darts).cyclic_reduce();
        if core.is_empty() {
            warnings.push(format!("cycle through edge {} reads a freely trivial word; dropped", cycle.edge));
        } else {
            relators.push(core);
            relator_cycles.push(i);
        }
    }
    if !cert.passed() {
        warnings.push("small cancellation certificate failed; conclusions do not apply".into());
    }
    let rank_pi1 = g.rank();
    Presentation {
        alphabet: g.alphabet().clone(),
        relators,
        relator_cycles,
        origin: family.clone(),
        rank_pi1,
        infinite: infiniteness_criterion(cert, rank_pi1, g.alphabet().rank()),
        warnings,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<String>>,
    pub rank: usize,
    pub m: usize,
    pub infinite: Infiniteness,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        PresentationJson {
            generators: p.alphabet.names().to_vec(),
            relators: p.relators.iter().map(|r| p.alphabet.tokens(r)).collect(),
            rank: p.rank_pi1,
            m: p.generator_count(),
            infinite: p.infinite,
        }
    }
}

/// `<a,b,c | bA, cA>`.
pub fn render_text(p: &Presentation) -> String {
    let relators: Vec<String> = p.relators.iter().map(|r| p.alphabet.format_word(r)).collect();
    format!("<{} | {}>", p.alphabet.names().join(","), relators.join(", "))
}

pub fn render_json(p: &Presentation) -> serde_json::Value {
    serde_json::to_value(PresentationJson::from(p)).expect("presentation serializes")
}
