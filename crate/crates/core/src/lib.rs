//! Exact computations in the golden-ratio Thompson group F_tau.
//!
//! Elements are tree-pair diagrams whose breakpoints live in Z[tau]. The
//! crate multiplies and inverts them, evaluates them as piecewise-linear
//! maps, converts between diagrams and words in the generators `x_i`, `y_i`,
//! computes the unique normal form, the abelianisation, and word-metric
//! estimates.

pub mod cli;
pub mod element;
pub mod error;
pub mod homs;
pub mod metrics;
pub mod normal_form;
mod parse;
pub mod tree;
pub mod word;
pub mod ztau;

pub use element::Element;
pub use error::{Error, ParseError, Result};
pub use normal_form::NormalFormWord;
pub use tree::{CaretKind, NodePath, Partition, Tree};
pub use word::{Generator, Word};
pub use ztau::ZTau;
