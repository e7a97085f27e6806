//! Runtime verification of every identity the invariants are supposed to
//! satisfy, knot by knot.
//!
//! `verify_knot` recomputes each quantity along its independent route and
//! stops at the first disagreement, returning the property name and a
//! witness.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cf::{cf_value, Expansion};
use crate::invariants::{
    boundary_slope_ht, full_report, poly_equivalent, state_polynomial, state_polynomial_oracle,
    state_signature_minors, InvariantReport, DEFAULT_ORACLE_MAX_K,
};
use crate::matrix::StateMatrix;
use crate::surface::{find_seifert, TwoBridgeKnot};
use crate::{Fraction, LaurentPolynomial, Result};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Largest `k` sent through the cofactor oracle.
    pub oracle_max_k: usize,
    /// Random transformation sequences tried per eligible surface.
    pub invariance_trials: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { oracle_max_k: DEFAULT_ORACLE_MAX_K, invariance_trials: 4, seed: 0x5eed }
    }
}

/// The first property that failed, with enough context to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{knot}: {property} failed: {witness}")]
pub struct PropertyFailure {
    pub knot: TwoBridgeKnot,
    pub property: &'static str,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub knots: usize,
    pub surfaces: usize,
    pub oracle_checks: usize,
    pub invariance_trials: usize,
}

impl VerifySummary {
    pub fn merge(self, other: VerifySummary) -> VerifySummary {
        VerifySummary {
            knots: self.knots + other.knots,
            surfaces: self.surfaces + other.surfaces,
            oracle_checks: self.oracle_checks + other.oracle_checks,
            invariance_trials: self.invariance_trials + other.invariance_trials,
        }
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} knots, {} surfaces, {} oracle determinants, {} invariance trials",
            self.knots, self.surfaces, self.oracle_checks, self.invariance_trials
        )
    }
}

/// A change of curve system on a surface, as it acts on a state matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Swap entries `(i, i+1)` and `(i+1, i)`.
    FlipNormal(usize),
    /// Negate row and column `i`.
    FlipOrientation(usize),
    /// Renumber the curves: new index `i` is old index `perm[i]`.
    Relabel(Vec<usize>),
}

pub fn apply_move(v: &StateMatrix, m: &Move) -> Result<StateMatrix> {
    match m {
        Move::FlipNormal(i) => v.flip_normal(*i),
        Move::FlipOrientation(i) => v.flip_orientation(*i),
        Move::Relabel(perm) => {
            let k = v.size();
            let mut seen = vec![false; k];
            if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
                return Err(crate::Error::invalid(format!("{perm:?} is not a permutation of 0..{k}")));
            }
            let mut inverse = vec![0; k];
            for (i, &p) in perm.iter().enumerate() {
                inverse[p] = i;
            }
            StateMatrix::from_entries(k, v.nonzero_entries().map(|((i, j), x)| ((inverse[i], inverse[j]), x.clone())))
        }
    }
}

/// A random sequence of up to `max_len` valid moves for a `k`×`k` matrix.
pub fn random_moves<R: Rng>(rng: &mut R, k: usize, max_len: usize) -> Vec<Move> {
    let len = rng.gen_range(1..=max_len.max(1));
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 if k >= 2 => Move::FlipNormal(rng.gen_range(0..k - 1)),
            2 => {
                let mut perm: Vec<usize> = (0..k).collect();
                perm.shuffle(rng);
                Move::Relabel(perm)
            }
            _ => Move::FlipOrientation(rng.gen_range(0..k)),
        })
        .collect()
}

/// A random expansion with `1..=max_k` terms, each `2 ≤ |n| ≤ max_term`.
pub fn random_expansion<R: Rng>(rng: &mut R, max_k: usize, max_term: i64) -> Expansion {
    let k = rng.gen_range(1..=max_k);
    let terms = (0..k)
        .map(|_| {
            let n = rng.gen_range(2..=max_term);
            if rng.gen_bool(0.5) {
                n
            } else {
                -n
            }
        })
        .collect();
    Expansion::new(terms).expect("terms are at least 2 in absolute value")
}

/// Applies `moves` to the standard matrix of `e` and checks that the
/// cofactor determinant is still a unit multiple of the state polynomial and
/// the minor signature is still `N⁺ − N⁻`. Returns a witness on failure.
pub fn check_invariance(e: &Expansion, moves: &[Move], oracle_max_k: usize) -> std::result::Result<(), String> {
    let mut v = StateMatrix::standard(e);
    for m in moves {
        v = apply_move(&v, m).map_err(|err| format!("{e} {m:?}: {err}"))?;
    }
    let expected = state_polynomial(e);
    let got = state_polynomial_oracle(&v, oracle_max_k).map_err(|err| format!("{e}: {err}"))?;
    if !poly_equivalent(&got, &expected.canonical()) {
        return Err(format!("{e} after {moves:?}: det = {got}, expected ~ {}", expected.canonical()));
    }
    let sigma = crate::invariants::state_signature(e);
    let by_minors = state_signature_minors(&v).map_err(|err| format!("{e} after {moves:?}: {err}"))?;
    if by_minors != sigma {
        return Err(format!("{e} after {moves:?}: minor signature {by_minors}, expected {sigma}"));
    }
    Ok(())
}

/// `(canonical Δ_S, σ_S, slope)` for every surface, sorted.
pub fn invariant_multiset(report: &InvariantReport) -> Vec<(LaurentPolynomial, i64, i64)> {
    let mut out: Vec<_> = report
        .surfaces
        .iter()
        .map(|r| (r.state_polynomial.canonical(), r.state_signature, r.boundary_slope))
        .collect();
    out.sort_by_cached_key(|x| (x.1, x.2, x.0.to_string()));
    out
}

fn fail(knot: &TwoBridgeKnot, property: &'static str, witness: impl Into<String>) -> PropertyFailure {
    PropertyFailure { knot: *knot, property, witness: witness.into() }
}

/// Runs every per-surface and per-knot identity on `knot`.
pub fn verify_knot(knot: &TwoBridgeKnot, cfg: &VerifyConfig) -> std::result::Result<VerifySummary, PropertyFailure> {
    let report = full_report(knot).map_err(|e| fail(knot, "report assembly", e.to_string()))?;
    let mut summary = VerifySummary { knots: 1, surfaces: report.surfaces.len(), ..Default::default() };
    let alpha = knot.alpha() as i64;
    let beta = knot.beta() as i64;
    let targets = [Fraction::new(alpha, beta).unwrap(), Fraction::new(alpha, beta - alpha).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (knot.alpha() << 32) ^ knot.beta());

    let surfaces: Vec<_> = report.surfaces.iter().map(|r| r.surface.clone()).collect();
    let seifert = find_seifert(&surfaces).map_err(|e| fail(knot, "unique all-even expansion", e.to_string()))?;

    for rec in &report.surfaces {
        let e = &rec.surface.expansion;
        let k = e.len();
        let poly = &rec.state_polynomial;
        let canonical = poly.canonical();

        let value = cf_value(e);
        if value != targets[e.r() as usize] {
            return Err(fail(knot, "expansion value", format!("{e} evaluates to {value}")));
        }
        if canonical.reciprocal_substitute().canonical() != canonical {
            return Err(fail(knot, "symmetry Δ(t⁻¹) ~ Δ(t)", format!("{e}: {canonical}")));
        }
        let at_one = poly.raw().eval(&Fraction::one()).expect("no negative powers");
        let want = if k % 2 == 0 { Fraction::one() } else { Fraction::zero() };
        if at_one != want {
            return Err(fail(knot, "value at t = 1", format!("{e}: Δ(1) = {at_one}, expected {want}")));
        }
        let at_minus_one = poly.raw().eval(&Fraction::from(-1)).expect("no negative powers").abs();
        if at_minus_one != Fraction::from(alpha) {
            return Err(fail(knot, "determinant |Δ(-1)| = α", format!("{e}: {at_minus_one}")));
        }
        if canonical.min_degree() != 0 || canonical.degree_span() != Some(k) {
            return Err(fail(knot, "degree = k", format!("{e}: {canonical}")));
        }
        let product: Fraction = e.terms().iter().fold(Fraction::one(), |acc, &n| acc * Fraction::from(n));
        let extreme = product.abs() * Fraction::from(2).pow(-(k as i32)).expect("2 is nonzero");
        let lead = canonical.leading_coefficient().unwrap().abs();
        let low = canonical.lowest_coefficient().unwrap().abs();
        if lead != extreme || low != extreme {
            return Err(fail(knot, "extreme coefficients |∏n|/2^k", format!("{e}: lead {lead}, low {low}, expected {extreme}")));
        }
        let scaled = canonical.scale(&Fraction::from(2).pow(k as i32).unwrap());
        if !scaled.is_integral() {
            return Err(fail(knot, "2^k Δ integral", format!("{e}: {canonical}")));
        }
        if rec.surface.orientable && !canonical.is_integral() {
            return Err(fail(knot, "all-even ⇒ integral Δ", format!("{e}: {canonical}")));
        }
        let v = StateMatrix::standard(e);
        let by_minors = state_signature_minors(&v).map_err(|err| fail(knot, "minor signature", err.to_string()))?;
        if by_minors != rec.state_signature {
            return Err(fail(knot, "σ_S = N⁺ − N⁻", format!("{e}: minors {by_minors}, counts {}", rec.state_signature)));
        }
        if rec.state_signature.unsigned_abs() as usize > k {
            return Err(fail(knot, "|σ_S| ≤ 2g(S)", format!("{e}: σ = {}", rec.state_signature)));
        }
        let ht = boundary_slope_ht(e, &seifert.expansion).map_err(|err| fail(knot, "slope formula", err.to_string()))?;
        if ht != rec.boundary_slope {
            return Err(fail(knot, "slope 2(σ_S − σ(K)) = Hatcher–Thurston", format!("{e}: {} vs {ht}", rec.boundary_slope)));
        }

        if k <= cfg.oracle_max_k {
            let by_cofactors = state_polynomial_oracle(&v, cfg.oracle_max_k).expect("within bound");
            if by_cofactors != poly.raw() {
                return Err(fail(knot, "recurrence = cofactor determinant", format!("{e}: {} vs {by_cofactors}", poly.raw())));
            }
            summary.oracle_checks += 1;
            for _ in 0..cfg.invariance_trials {
                let moves = random_moves(&mut rng, k, 6);
                check_invariance(e, &moves, cfg.oracle_max_k).map_err(|w| fail(knot, "invariance under curve-system changes", w))?;
                summary.invariance_trials += 1;
            }
        }
    }

    if report.surfaces.iter().filter(|r| r.boundary_slope == 0 && r.surface.orientable).count() != 1 {
        return Err(fail(knot, "Seifert slope 0", format!("slopes {:?}", report.sorted_slopes())));
    }
    let alex_degree = report.alexander.canonical().degree_span();
    if alex_degree != Some(report.genus_twice) {
        return Err(fail(knot, "deg Alexander = 2g(K)", format!("{alex_degree:?} vs {}", report.genus_twice)));
    }

    let mine = invariant_multiset(&report);
    let other = knot.inverse_presentation();
    let theirs = full_report(&other).map_err(|e| fail(knot, "report assembly", e.to_string()))?;
    if invariant_multiset(&theirs) != mine {
        return Err(fail(knot, "presentation independence", format!("differs from {other}")));
    }
    let mirror = full_report(&knot.mirror()).map_err(|e| fail(knot, "report assembly", e.to_string()))?;
    let mut negated: Vec<_> = invariant_multiset(&mirror).into_iter().map(|(p, s, l)| (p, -s, -l)).collect();
    negated.sort_by_cached_key(|x| (x.1, x.2, x.0.to_string()));
    if negated != mine {
        return Err(fail(knot, "mirror negates signatures and slopes", format!("against {}", knot.mirror())));
    }

    Ok(summary)
}
