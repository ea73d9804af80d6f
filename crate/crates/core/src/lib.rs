//! Word sense disambiguation by conceptual density over a noun hierarchy.
//!
//! The crate is organised bottom-up:
//!
//! * [`lexicon`] loads and indexes the semantic network and precomputes the
//!   hierarchy statistics the density formulas need.
//! * [`density`] evaluates the SAR, AR, SDF and LF formulas.
//! * [`disambiguator`] builds context windows, deposits marks and scores the
//!   senses of a target word.
//! * [`baselines`] holds the first-sense, random and Lesk reference systems.
//! * [`eval`] loads corpora, computes recall and runs parameter sweeps.

pub mod baselines;
pub mod density;
pub mod disambiguator;
pub mod distribution;
pub mod eval;
pub mod lexicon;

pub use density::{conceptual_density, DensityFormula, FormulaKind};
pub use disambiguator::{Token, Weighting, WsdConfig, WsdError};
pub use distribution::{Fallback, SenseDistribution};
pub use lexicon::{ConceptId, ConceptStats, NodeId, RelationSet, RelationType, SemanticNetwork};
