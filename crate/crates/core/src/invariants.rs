//! State polynomials, state signatures, boundary slopes and the classical
//! knot invariants they specialize to.
//!
//! Every quantity has two routes: a fast one used for reports (three-term
//! recurrences, sign counts) and an independent one used for checking
//! (cofactor expansion, principal minors, the Hatcher–Thurston count).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cf::Expansion;
use crate::matrix::{gl_matrix, StateMatrix};
use crate::surface::{find_seifert, EssentialSurface, TwoBridgeKnot};
use crate::{Error, Fraction, LaurentPolynomial, Result};

/// Size bound for the cofactor oracle unless the caller overrides it.
pub const DEFAULT_ORACLE_MAX_K: usize = 8;

// Column sets are tracked in a u64 bitmask.
const ORACLE_HARD_LIMIT: usize = 64;

/// `det(V − tVᵀ)` for the standard state matrix of an expansion.
///
/// Held as the integer coefficients of `2^k·Δ` in canonical form; the
/// rational polynomials are built on request.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StatePolynomial {
    k: usize,
    scaled: Vec<BigInt>,
    // Whether the raw determinant is the negative of the canonical form.
    raw_negated: bool,
}

impl StatePolynomial {
    /// Number of bands; also the degree.
    pub fn k(&self) -> usize {
        self.k
    }

    fn rational(&self, negate: bool) -> LaurentPolynomial {
        let coeffs = self
            .scaled
            .iter()
            .map(|c| Fraction::dyadic(if negate { -c } else { c.clone() }, self.k as u64))
            .collect();
        LaurentPolynomial::new(0, coeffs)
    }

    /// The determinant exactly as computed from the standard matrix.
    pub fn raw(&self) -> LaurentPolynomial {
        self.rational(self.raw_negated)
    }

    /// Lowest degree 0, lowest coefficient positive.
    pub fn canonical(&self) -> LaurentPolynomial {
        self.rational(false)
    }

    /// `2^k` times the canonical coefficients, lowest degree first. These
    /// are always integers.
    pub fn scaled_coefficients(&self) -> &[BigInt] {
        &self.scaled
    }

    /// `|Δ(−1)|`, from the scaled integer coefficients.
    pub fn abs_value_at_minus_one(&self) -> Fraction {
        let mut sum = BigInt::zero();
        for (i, c) in self.scaled.iter().enumerate() {
            if i % 2 == 0 {
                sum += c;
            } else {
                sum -= c;
            }
        }
        Fraction::dyadic(sum.abs(), self.k as u64)
    }
}

fn signed_term(j: usize, n: i64) -> i64 {
    if j % 2 == 0 {
        n
    } else {
        -n
    }
}

/// The scaled recurrence in machine integers; `None` on overflow.
fn scaled_recurrence_i128(terms: &[i64]) -> Option<Vec<i128>> {
    let k = terms.len();
    let mut older = vec![0i128; k + 1];
    let mut prev = vec![0i128; k + 1];
    let mut next = vec![0i128; k + 1];
    older[0] = 1;
    prev[0] = terms[0] as i128;
    prev[1] = -(terms[0] as i128);
    for (j, &n) in terms.iter().enumerate().skip(1) {
        let c = signed_term(j, n) as i128;
        // prev has degree j, older degree j − 1.
        let mut below = 0i128;
        for i in 0..=j + 1 {
            let cur = if i <= j { prev[i] } else { 0 };
            let mut v = cur.checked_sub(below)?.checked_mul(c)?;
            if i >= 1 && i <= j {
                v = v.checked_add(older[i - 1].checked_mul(4)?)?;
            }
            next[i] = v;
            below = cur;
        }
        std::mem::swap(&mut older, &mut prev);
        std::mem::swap(&mut prev, &mut next);
    }
    Some(prev)
}

fn scaled_recurrence_big(terms: &[i64]) -> Vec<BigInt> {
    // Three rotating buffers updated in place, so the limb storage is
    // reused instead of reallocated on every step.
    let k = terms.len();
    let mut older = vec![BigInt::zero(); k + 1];
    let mut prev = vec![BigInt::zero(); k + 1];
    let mut next = vec![BigInt::zero(); k + 1];
    let mut tmp = BigInt::zero();
    older[0] = BigInt::one();
    prev[0] = BigInt::from(terms[0]);
    prev[1] = BigInt::from(-terms[0]);
    for (j, &n) in terms.iter().enumerate().skip(1) {
        let c = signed_term(j, n);
        for i in 0..=j + 1 {
            let slot = &mut next[i];
            if i <= j {
                slot.clone_from(&prev[i]);
            } else {
                slot.set_zero();
            }
            if i >= 1 {
                *slot -= &prev[i - 1];
            }
            *slot *= c;
            if i >= 1 && i <= j {
                tmp.clone_from(&older[i - 1]);
                tmp <<= 2;
                *slot += &tmp;
            }
        }
        std::mem::swap(&mut older, &mut prev);
        std::mem::swap(&mut prev, &mut next);
    }
    prev
}

/// The state polynomial of the surface of `e`.
///
/// With `V` standard, `V − tVᵀ` is tridiagonal with every sub/super pair
/// multiplying to `−t`, so its leading minors satisfy
/// `d_j = (−1)^(j+1)(n_j/2)(1 − t)·d_(j−1) + t·d_(j−2)`. The recurrence runs
/// on `D_j = 2^j d_j`, which stays integral.
pub fn state_polynomial(e: &Expansion) -> StatePolynomial {
    let k = e.len();
    let mut scaled = match scaled_recurrence_i128(e.terms()) {
        Some(v) => v.into_iter().map(BigInt::from).collect(),
        None => scaled_recurrence_big(e.terms()),
    };
    // The constant term is 2^k det(V) = ±∏nᵢ, never zero, and the top
    // coefficient is its mirror image; no trimming or shifting is needed.
    debug_assert!(!scaled[0].is_zero() && !scaled[k].is_zero());
    let raw_negated = scaled[0].is_negative();
    if raw_negated {
        for c in &mut scaled {
            *c = -&*c;
        }
    }
    StatePolynomial { k, scaled, raw_negated }
}

/// `det(V − tVᵀ)` by Laplace expansion along rows, memoized on the set of
/// columns already used. Independent of the recurrence in
/// `state_polynomial`; refuses matrices larger than `max_k`.
pub fn state_polynomial_oracle(v: &StateMatrix, max_k: usize) -> Result<LaurentPolynomial> {
    let k = v.size();
    if k > max_k.min(ORACLE_HARD_LIMIT) {
        return Err(Error::OracleBound { size: k, bound: max_k.min(ORACLE_HARD_LIMIT) });
    }
    let c = v.characteristic();
    let entries: Vec<Vec<LaurentPolynomial>> =
        (0..k).map(|i| (0..k).map(|j| c.entry(i, j).clone()).collect()).collect();
    let mut memo = HashMap::new();
    Ok(laplace(&entries, 0, 0, &mut memo))
}

fn laplace(
    m: &[Vec<LaurentPolynomial>],
    row: usize,
    used: u64,
    memo: &mut HashMap<u64, LaurentPolynomial>,
) -> LaurentPolynomial {
    let k = m.len();
    if row == k {
        return LaurentPolynomial::constant(Fraction::one());
    }
    if let Some(hit) = memo.get(&used) {
        return hit.clone();
    }
    let mut acc = LaurentPolynomial::zero();
    let mut position = 0;
    for col in 0..k {
        if used & (1 << col) != 0 {
            continue;
        }
        let a = &m[row][col];
        if !a.is_zero() {
            let minor = laplace(m, row + 1, used | (1 << col), memo);
            let term = a * &minor;
            acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        position += 1;
    }
    memo.insert(used, acc.clone());
    acc
}

/// Whether `p = ±tʲ·q` for some `j`.
pub fn poly_equivalent(p: &LaurentPolynomial, q: &LaurentPolynomial) -> bool {
    p.canonical() == q.canonical()
}

/// `N⁺ − N⁻`.
pub fn state_signature(e: &Expansion) -> i64 {
    EssentialSurface::new(e.clone()).sign_balance()
}

/// Signature of `V + Vᵀ` from its leading principal minors: each sign
/// agreement between consecutive minors is a positive eigenvalue, each
/// change a negative one.
///
/// Tridiagonal input uses `D_j = g_jj·D_(j−1) − g_(j,j−1)²·D_(j−2)`; other
/// input (relabeled copies) is eliminated without pivoting. A vanishing
/// minor is reported as a consistency failure: every principal minor of a
/// Gordon–Litherland matrix of these surfaces is nonzero.
pub fn state_signature_minors(v: &StateMatrix) -> Result<i64> {
    let g = gl_matrix(v);
    let k = g.size();
    let zero_minor =
        |j: usize| Error::consistency("nonvanishing Goeritz minors", format!("leading minor of order {j} vanishes"));

    // Sign of each pivot D_j / D_(j−1).
    let mut pivot_signs = Vec::with_capacity(k);
    let integral = (0..k).all(|j| g.entry(j, j).is_integer() && (j == 0 || g.entry(j, j - 1).is_integer()));
    if g.is_tridiagonal() && integral {
        // The usual case: an integral Goeritz matrix, run without fractions.
        let (mut older, mut prev) = (BigInt::zero(), BigInt::one());
        for j in 0..k {
            let mut d = g.entry(j, j).numer() * &prev;
            if j > 0 {
                let off = g.entry(j, j - 1).numer();
                d -= off * off * &older;
            }
            if d.is_zero() {
                return Err(zero_minor(j + 1));
            }
            pivot_signs.push(if d.sign() == prev.sign() { 1 } else { -1 });
            older = std::mem::replace(&mut prev, d);
        }
    } else if g.is_tridiagonal() {
        let (mut older, mut prev) = (Fraction::zero(), Fraction::one());
        for j in 0..k {
            let mut d = g.entry(j, j) * &prev;
            if j > 0 {
                let off = g.entry(j, j - 1);
                d = d - &(off * off) * &older;
            }
            if d.is_zero() {
                return Err(zero_minor(j + 1));
            }
            pivot_signs.push(d.signum() * prev.signum());
            older = std::mem::replace(&mut prev, d);
        }
    } else {
        let mut a: Vec<Vec<Fraction>> = g.to_rows();
        for j in 0..k {
            let pivot = a[j][j].clone();
            if pivot.is_zero() {
                return Err(zero_minor(j + 1));
            }
            pivot_signs.push(pivot.signum());
            for r in j + 1..k {
                if a[r][j].is_zero() {
                    continue;
                }
                let factor = &a[r][j] / &pivot;
                for c in j..k {
                    let delta = &factor * &a[j][c];
                    a[r][c] = &a[r][c] - &delta;
                }
            }
        }
    }
    Ok(pivot_signs.iter().map(|&s| s as i64).sum())
}

/// Signature of the tridiagonal Goeritz matrix of a standard state matrix,
/// diagonal `(−1)^i nᵢ` and unit off-diagonals, by the same minor
/// recurrence in integers.
fn standard_minor_signature(e: &Expansion) -> Result<i64> {
    let (mut older, mut prev) = (BigInt::zero(), BigInt::one());
    let mut sig = 0;
    for (j, &n) in e.terms().iter().enumerate() {
        let diag = if j % 2 == 0 { n } else { -n };
        let d = &prev * diag - &older;
        if d.is_zero() {
            return Err(Error::consistency("nonvanishing Goeritz minors", format!("{e}: minor of order {} vanishes", j + 1)));
        }
        sig += if d.sign() == prev.sign() { 1 } else { -1 };
        older = std::mem::replace(&mut prev, d);
    }
    Ok(sig)
}

fn seifert_of(surfaces: &[EssentialSurface]) -> Result<&EssentialSurface> {
    find_seifert(surfaces)
}

/// `σ(K)`: the state signature of the Seifert surface.
pub fn knot_signature(knot: &TwoBridgeKnot) -> Result<i64> {
    let surfaces = knot.surfaces();
    Ok(seifert_of(&surfaces)?.sign_balance())
}

/// `2(σ_S − σ(K))`. Fails when `e` is not a surface of `knot`.
pub fn boundary_slope(e: &Expansion, knot: &TwoBridgeKnot) -> Result<i64> {
    let surfaces = knot.surfaces();
    if !surfaces.iter().any(|s| s.expansion.terms() == e.terms()) {
        return Err(Error::invalid(format!("{e} is not an essential surface of {knot}")));
    }
    let sigma_k = seifert_of(&surfaces)?.sign_balance();
    Ok(2 * (state_signature(e) - sigma_k))
}

/// The slope as a difference of sign counts against the Seifert expansion:
/// `2(N⁺ − N⁻) − 2(N⁺₀ − N⁻₀)`.
pub fn boundary_slope_ht(e: &Expansion, seifert: &Expansion) -> Result<i64> {
    if !seifert.all_even() {
        return Err(Error::invalid(format!("{seifert} is not an all-even expansion")));
    }
    let here = EssentialSurface::new(e.clone());
    let base = EssentialSurface::new(seifert.clone());
    Ok(2 * (here.n_plus as i64 - here.n_minus as i64) - 2 * (base.n_plus as i64 - base.n_minus as i64))
}

/// The state polynomial of the Seifert surface, which is the Alexander
/// polynomial. Its coefficients are integers.
pub fn alexander_polynomial(knot: &TwoBridgeKnot) -> Result<StatePolynomial> {
    let surfaces = knot.surfaces();
    Ok(state_polynomial(&seifert_of(&surfaces)?.expansion))
}

/// `2g(K)`: the length of the all-even expansion.
pub fn knot_genus_twice(knot: &TwoBridgeKnot) -> Result<usize> {
    let surfaces = knot.surfaces();
    Ok(seifert_of(&surfaces)?.genus_twice)
}

fn crosscap_twice(surfaces: &[EssentialSurface], genus_twice: usize) -> usize {
    surfaces
        .iter()
        .filter(|s| !s.orientable)
        .map(|s| s.genus_twice)
        .chain(std::iter::once(genus_twice + 1))
        .min()
        .expect("chain is nonempty")
}

/// Twice the nonorientable genus: the least genus of a nonorientable
/// essential surface, or `g(K) + 1/2` if that is smaller.
pub fn nonorientable_genus_twice(knot: &TwoBridgeKnot) -> Result<usize> {
    let surfaces = knot.surfaces();
    let g2 = seifert_of(&surfaces)?.genus_twice;
    Ok(crosscap_twice(&surfaces, g2))
}

/// Everything computed for one surface.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceRecord {
    pub surface: EssentialSurface,
    pub state_polynomial: StatePolynomial,
    pub state_signature: i64,
    pub boundary_slope: i64,
}

/// Surface-level and knot-level invariants of one knot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantReport {
    pub knot: TwoBridgeKnot,
    pub surfaces: Vec<SurfaceRecord>,
    pub determinant: u64,
    pub knot_signature: i64,
    pub alexander: StatePolynomial,
    pub genus_twice: usize,
    pub nonorientable_genus_twice: usize,
}

impl InvariantReport {
    pub fn sorted_slopes(&self) -> Vec<i64> {
        let mut s: Vec<i64> = self.surfaces.iter().map(|r| r.boundary_slope).collect();
        s.sort_unstable();
        s
    }

    pub fn sorted_signatures(&self) -> Vec<i64> {
        let mut s: Vec<i64> = self.surfaces.iter().map(|r| r.state_signature).collect();
        s.sort_unstable();
        s
    }
}

/// All invariants of `knot`, with the report-level identities checked before
/// returning: `|Δ_S(−1)| = α` for every surface, minor signature equal to
/// `N⁺ − N⁻`, and both slope formulas agreeing.
pub fn full_report(knot: &TwoBridgeKnot) -> Result<InvariantReport> {
    let surfaces = knot.surfaces();
    let seifert = seifert_of(&surfaces)?.clone();
    let sigma_k = seifert.sign_balance();
    let alpha = Fraction::from(knot.alpha() as i64);

    let mut records = Vec::with_capacity(surfaces.len());
    for s in &surfaces {
        let poly = state_polynomial(&s.expansion);
        let det = poly.abs_value_at_minus_one();
        if det != alpha {
            return Err(Error::consistency(
                "determinant identity |Δ_S(-1)| = α",
                format!("{knot} surface {}: |Δ(-1)| = {det}", s.expansion),
            ));
        }
        let sigma = s.sign_balance();
        let by_minors = standard_minor_signature(&s.expansion)?;
        if by_minors != sigma {
            return Err(Error::consistency(
                "signature identity σ_S = N⁺ − N⁻",
                format!("{knot} surface {}: minors give {by_minors}, sign counts {sigma}", s.expansion),
            ));
        }
        let slope = 2 * (sigma - sigma_k);
        let ht = boundary_slope_ht(&s.expansion, &seifert.expansion)?;
        if slope != ht {
            return Err(Error::consistency(
                "slope identity 2(σ_S − σ(K)) = Hatcher–Thurston slope",
                format!("{knot} surface {}: {slope} vs Hatcher–Thurston {ht}", s.expansion),
            ));
        }
        records.push(SurfaceRecord {
            surface: s.clone(),
            state_polynomial: poly,
            state_signature: sigma,
            boundary_slope: slope,
        });
    }

    let alexander = records
        .iter()
        .find(|r| r.surface.orientable)
        .map(|r| r.state_polynomial.clone())
        .expect("seifert surface is among the records");
    Ok(InvariantReport {
        knot: *knot,
        determinant: knot.alpha(),
        knot_signature: sigma_k,
        alexander,
        genus_twice: seifert.genus_twice,
        nonorientable_genus_twice: crosscap_twice(&surfaces, seifert.genus_twice),
        surfaces: records,
    })
}
