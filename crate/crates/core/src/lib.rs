//! Exact invariants of essential spanning surfaces of 2-bridge knots.
//!
//! A 2-bridge knot `K(α, β)` has finitely many essential spanning surfaces,
//! each indexed by a continued-fraction expansion `[n₁, …, n_k]` with every
//! `|nᵢ| ≥ 2`. For each surface this crate builds the generalized Seifert
//! ("state") matrix and derives
//!
//! * the state polynomial `det(V − tVᵀ)` up to units `±tʲ`,
//! * the state signature `sign(V + Vᵀ)`,
//! * the boundary slope `2(σ_S − σ(K))`,
//!
//! together with the classical invariants that fall out of the Seifert
//! surface: determinant, signature, Alexander polynomial, genus and
//! nonorientable genus. Everything is exact; no floating point is used.
//!
//! ```
//! use bridgestate::{full_report, TwoBridgeKnot};
//!
//! let figure_eight = TwoBridgeKnot::new(5, 2).unwrap();
//! let report = full_report(&figure_eight).unwrap();
//! let slopes: Vec<i64> = report.sorted_slopes();
//! assert_eq!(slopes, vec![-4, 0, 4]);
//! ```

pub mod arith;
pub mod cf;
mod error;
pub mod invariants;
pub mod matrix;
pub mod surface;
pub mod verify;

pub use arith::{Fraction, LaurentPolynomial};
pub use cf::{cf_value, enumerate_expansions, surfaces_expansions, Expansion};
pub use error::{Error, Result};
pub use invariants::{
    alexander_polynomial, boundary_slope, boundary_slope_ht, full_report, knot_genus_twice,
    knot_signature, nonorientable_genus_twice, poly_equivalent, state_polynomial,
    state_polynomial_oracle, state_signature, state_signature_minors, InvariantReport,
    StatePolynomial, SurfaceRecord,
};
pub use matrix::{gl_matrix, CharacteristicMatrix, GLMatrix, StateMatrix};
pub use surface::{find_seifert, sign_counts, EssentialSurface, TwoBridgeKnot};
