//! Deterministic analysis toolkit for DNF formulas.
//!
//! The crate is organized around [`formula::DnfFormula`], a canonical
//! (minimal-representation) DNF over `n` Boolean variables, together with
//! exact, exhaustively-verifiable oracles: rational bias, decision-tree
//! depth, restriction, and pointwise sandwich checking. On top of that sit
//!
//! * [`sunflower`] — sunflower and quasi-sunflower search in unate formulas,
//! * [`sparsify`] — certified sandwiching sparsification with exact
//!   per-step error accounting, plus a greedy set-cover baseline,
//! * [`prg`] — small-bias bit generators over `GF(2^l)`, k-wise independent
//!   hash families, and exact fooling-error measurement,
//! * [`count`] — deterministic additive approximate counting by bucketed
//!   seed enumeration with a brute-force feasibility gate,
//! * [`switching`] — random-restriction samplers (i.i.d. and limited
//!   independence), restriction composition, and switching experiments.
//!
//! Everything is deterministic: identical inputs, seeds and configuration
//! produce bit-identical results.

pub mod bias;
pub mod bitset;
pub mod count;
pub mod error;
pub mod formula;
pub mod gf2;
pub mod instances;
pub mod io;
pub mod prg;
pub mod sparsify;
pub mod sunflower;
pub mod switching;

pub use bias::BiasValue;
pub use bitset::VarSet;
pub use error::Error;
pub use formula::{DnfFormula, Literal, Restriction, Term};
