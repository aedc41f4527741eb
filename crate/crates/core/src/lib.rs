//! Symbolic and numeric analysis of weighted composition operators
//! `f -> psi * (f o phi)` on the space of rapidly decreasing smooth
//! functions.
//!
//! The crate decides — exactly for univariate polynomial data and a couple
//! of whitelisted transcendental pairs, numerically as evidence otherwise —
//! whether such an operator acts on the space, is power bounded, is
//! (m-)topologizable, has iterates converging to zero, is uniformly mean
//! ergodic, and whether weak supercyclicity is excluded.

pub mod classifier;
pub mod error;
pub mod expr;
pub mod faadibruno;
pub mod growth;
pub mod iterates;
pub mod logreal;
pub mod multiindex;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod rootcheck;

pub use classifier::{
    ClassificationReport, ClassifierConfig, PropertyVerdict, SymbolPair, Verdict,
};
pub use error::{Error, Result};
pub use expr::{as_polynomial, compose, differentiate, eval_logreal, Expr};
pub use growth::{GridConfig, GrowthTag, GrowthVerdict};
pub use logreal::LogReal;
pub use multiindex::{mi_prec, MultiIndex};
pub use parse::parse_expr;
pub use poly::Polynomial;
pub use rational::Rat;
