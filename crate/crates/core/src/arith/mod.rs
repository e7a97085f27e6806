//! Exact numeric substrate: reduced big rationals and Laurent polynomials
//! over them.

mod fraction;
mod laurent;

pub use fraction::Fraction;
pub use laurent::LaurentPolynomial;
