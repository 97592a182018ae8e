//! Invariants of spin presentations and of knots.

mod casson;
mod laurent;
mod rohlin;
mod scheme;
mod seifert;
mod value;

pub use casson::{casson, half_second_derivative_at_1, CassonError};
pub use laurent::LaurentPolynomial;
pub use rohlin::{
    check_sigma_rank_consistency, rohlin_mod2, rohlin_mod2_checked, ConsistencyError, RohlinMod2, SigmaRankReport,
};
pub use scheme::{
    characteristic_extensions, combinations, least_passing_order, order_at_most, order_profile, vassiliev_sum,
    ExtensionPolicy, OrderReport, OrderTerm, SchemeError, SurgeryScheme, MAX_EXTRAS,
};
pub use seifert::{alexander_from_seifert, SeifertError, SeifertMatrix};
pub use value::{Constant, InvariantValue, SpinInvariant, ValueGroup};
