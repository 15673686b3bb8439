//! Exact computation of border bases for vanishing ideals of finite point
//! sets, including enumeration of every order ideal and quasi order ideal
//! that supports one.

pub mod bm_engine;
pub mod enumeration;
pub mod error;
pub mod evalmat;
pub mod fg_engine;
pub mod field;
pub mod monomials;
pub mod oracle;
pub mod polys;

pub use error::{Error, Result};
pub use evalmat::{PointSet, ReductionState};
pub use field::{FieldElement, FieldKind, FieldSpec};
pub use monomials::{OrderIdealSet, OrderingKind, Term, TermOrdering};
pub use polys::{border_term_division, verify_border_pair, BorderPair, MarkedPolynomial, Polynomial, VerificationReport};
pub use bm_engine::{bm_all_order_ideals, bm_all_order_ideals_with, bm_all_quasi_order_ideals, bm_all_quasi_order_ideals_with, bm_border, bm_border_with, buchberger_moller, GroebnerBasis, TieBreak};
pub use enumeration::{EnumerationOptions, EnumerationResult};
pub use fg_engine::{fg_all_quasi_order_ideals, fg_all_quasi_order_ideals_with, fg_border, quasi_oi_step, FgState};
