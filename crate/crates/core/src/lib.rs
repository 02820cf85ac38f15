//! Graphical small cancellation over finite labelled graphs.
//!
//! The pipeline: parse a [`LabelledGraph`], [`certify`] the condition
//! `6 * Lambda < girth`, emit the [`Presentation`] read on a standard family
//! of cycles, then decide equality in the presented group with the
//! [`Dehn`] solver and check the geometric conclusions in [`geometry`].

pub mod cancel;
pub mod dehn;
pub mod error;
pub mod geometry;
pub mod lgraph;
pub mod present;
pub mod sample;
pub mod words;

pub use cancel::{certify, Certificate, CertificateVerdict, Lambda};
pub use dehn::{Dehn, DehnStep, DehnTrace, Verdict};
pub use error::{Error, Result};
pub use geometry::{cayley_ball, fill, CayleyBall, FillingCertificate};
pub use lgraph::{CycleFamily, LabelledGraph, Shape};
pub use present::{presentation, Infiniteness, Presentation};
pub use words::{Alphabet, Letter, Word};
