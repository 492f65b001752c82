//! Decision procedures for orientable quadratic equations in wreath products
//! `Z wr B` over finitely generated abelian `B`, and in Baumslag's
//! metabelian group. Every positive verdict carries a checked witness.

pub mod abelian;
pub mod baumslag;
pub mod budget;
pub mod error;
pub mod group;
pub mod groupring;
pub mod input;
pub mod oracle;
pub mod quadratic;
pub mod solve;
pub mod spherical;
mod text;
pub mod words;
pub mod wreath;

pub use abelian::{AbelianGroup, GroupElement, QuotientMap, Subgroup};
pub use baumslag::{BaumslagElement, LaurentPoly, LocalizedPoly};
pub use budget::Budget;
pub use error::{Error, ParseError, Result};
pub use group::{Cyclic, GroupElem, Perm};
pub use groupring::{decompose_in_varpi, RingElement};
pub use input::{parse_group_spec, parse_problem, GroupSpec, Instance, Problem};
pub use oracle::OracleVerdict;
pub use quadratic::{commutator_width, is_n_commutator_product};
pub use solve::{solve_baumslag, solve_finite, solve_wreath, SolveOptions, Verdict};
pub use spherical::{solve_spherical, solve_translate_sum, TranslateSumInstance};
pub use words::{normalize, parse_word, EquationWord, Letter, NormalForm, Witness};
pub use wreath::WreathElement;
