//! Noncommutative operator expressions, their normal ordering, and their action
//! on the basis.

pub mod action;
pub mod expr;
pub mod label_shift;
pub mod operators;
pub mod report;
pub mod rewrite;

pub use action::{apply_product, apply_to_basis, ladder_residual, su2_residuals, Jet, Su2Residuals};
pub use expr::{Coeff, FreeExpr, Monomial, OperatorExpr, Symbol, Word};
pub use label_shift::ShiftedOperator;
pub use operators::{build_operator, OperatorName};
pub use report::{verify_e_correction, CorrectionReport};
pub use rewrite::{commutator, critical_pairs, normal_form, CriticalPair, RewriteRuleSet, Rule};
