//! Serialized forms of reports and census rows.
//!
//! Polynomials are written as `{k, min_degree, scaled_coefficients}` where
//! `scaled_coefficients` are `2^k` times the canonical coefficients, lowest
//! degree first. They are always integers, so JSON stays exact; divide by
//! `2^k` to recover the half-integral coefficients. Genera are written
//! doubled (`genus2`, `crosscap_genus2`) for the same reason.

use std::str::FromStr;

use num_bigint::BigInt;
use bridgestate::{EssentialSurface, InvariantReport, StatePolynomial};
use serde::{Deserialize, Serialize};
use serde_json::Number;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub k: usize,
    pub min_degree: i64,
    pub scaled_coefficients: Vec<Number>,
}

impl From<&StatePolynomial> for PolyJson {
    fn from(p: &StatePolynomial) -> Self {
        PolyJson {
            k: p.k(),
            min_degree: 0,
            scaled_coefficients: p
                .scaled_coefficients()
                .iter()
                .map(|c| Number::from_str(&c.to_string()).expect("integers are JSON numbers"))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceJson {
    pub expansion: Vec<i64>,
    pub r: u8,
    pub orientable: bool,
    pub genus2: usize,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl From<&EssentialSurface> for SurfaceJson {
    fn from(s: &EssentialSurface) -> Self {
        SurfaceJson {
            expansion: s.expansion.terms().to_vec(),
            r: s.expansion.r(),
            orientable: s.orientable,
            genus2: s.genus_twice,
            n_plus: s.n_plus,
            n_minus: s.n_minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariantsJson {
    pub expansion: Vec<i64>,
    pub r: u8,
    pub orientable: bool,
    pub genus2: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub state_polynomial: PolyJson,
    pub state_signature: i64,
    pub boundary_slope: i64,
}

/// One knot's worth of invariants; both the `invariants --json` document
/// and one element of a JSON census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub alpha: u64,
    pub beta: u64,
    pub determinant: u64,
    pub surface_count: usize,
    pub signature: i64,
    pub genus2: usize,
    pub crosscap_genus2: usize,
    /// Ascending; the Seifert surface contributes a zero.
    pub slopes: Vec<i64>,
    pub alexander: PolyJson,
    pub surfaces: Vec<SurfaceInvariantsJson>,
}

impl From<&InvariantReport> for KnotRecord {
    fn from(r: &InvariantReport) -> Self {
        KnotRecord {
            alpha: r.knot.alpha(),
            beta: r.knot.beta(),
            determinant: r.determinant,
            surface_count: r.surfaces.len(),
            signature: r.knot_signature,
            genus2: r.genus_twice,
            crosscap_genus2: r.nonorientable_genus_twice,
            slopes: r.sorted_slopes(),
            alexander: PolyJson::from(&r.alexander),
            surfaces: r
                .surfaces
                .iter()
                .map(|s| SurfaceInvariantsJson {
                    expansion: s.surface.expansion.terms().to_vec(),
                    r: s.surface.expansion.r(),
                    orientable: s.surface.orientable,
                    genus2: s.surface.genus_twice,
                    n_plus: s.surface.n_plus,
                    n_minus: s.surface.n_minus,
                    state_polynomial: PolyJson::from(&s.state_polynomial),
                    state_signature: s.state_signature,
                    boundary_slope: s.boundary_slope,
                })
                .collect(),
        }
    }
}

pub const CENSUS_HEADER: &str = "alpha,beta,surface_count,signature,genus2,crosscap_genus2,slopes,alexander";

pub const SURFACES_HEADER: &str =
    "alpha,beta,expansion,r,orientable,genus2,n_plus,n_minus,state_signature,boundary_slope,k,state_polynomial_scaled";

pub(crate) fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

impl KnotRecord {
    /// The Alexander polynomial's own coefficients. They are integers, so
    /// the `2^k` scaling is undone exactly.
    pub fn alexander_coefficients(&self) -> Vec<BigInt> {
        self.alexander
            .scaled_coefficients
            .iter()
            .map(|c| BigInt::from_str(&c.to_string()).expect("stored coefficients are integers") >> self.alexander.k)
            .collect()
    }

    /// A row under `CENSUS_HEADER`. The Alexander column holds its integer
    /// coefficients directly (not scaled).
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.alpha,
            self.beta,
            self.surface_count,
            self.signature,
            self.genus2,
            self.crosscap_genus2,
            join(&self.slopes),
            join(self.alexander_coefficients()),
        )
    }

    /// Rows under `SURFACES_HEADER`, one per surface.
    pub fn surface_rows(&self) -> Vec<String> {
        self.surfaces
            .iter()
            .map(|s| {
                format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    self.alpha,
                    self.beta,
                    join(&s.expansion),
                    s.r,
                    s.orientable,
                    s.genus2,
                    s.n_plus,
                    s.n_minus,
                    s.state_signature,
                    s.boundary_slope,
                    s.state_polynomial.k,
                    join(&s.state_polynomial.scaled_coefficients),
                )
            })
            .collect()
    }
}
