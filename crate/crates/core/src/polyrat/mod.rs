//! Multivariate polynomials and reduced rational functions over `Q(zeta_N)`.
//!
//! The rational functions produced by the class computations all have
//! denominators depending on `T` alone (products of `det(1 - Tg)` factors),
//! so reduction stays univariate: the gcd of the denominator with the content
//! of the numerator taken across the other variables.

mod factor;
mod json;
mod latex;
mod parse;
mod poly;
mod ratfunc;

pub use factor::{
    factor_denominator_cyclotomic, nonneg_after_shift, shifted_numerator_nonneg, DenominatorForm,
    ShiftVerdict,
};
pub use json::{poly_to_json, ratfunc_from_json, ratfunc_to_json};
pub use latex::{poly_to_latex, ratfunc_to_latex};
pub use parse::parse_ratfunc;
pub use poly::{poly_divides, Poly};
pub use ratfunc::{RatFunc, SeriesExpansion};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("substitution produced a zero denominator")]
    SubstitutionZeroDenominator,
    #[error("pole at 0: denominator vanishes at {var} = 0")]
    PoleAtZero { var: String },
    #[error("denominator must be univariate in {0} for this operation")]
    DenominatorNotUnivariate(String),
    #[error("denominator is not a product of (1 - T^k) factors; residual {residual}")]
    NotCyclotomicProduct { residual: String },
    #[error("coefficient is not rational: {0}")]
    NonRationalCoefficient(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("series denominator has non-constant term of degree 0 in {var}")]
    SeriesLeadingCoefficient { var: String },
}
