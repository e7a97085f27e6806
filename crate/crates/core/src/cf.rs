//! Continued-fraction expansions `[n₁, …, n_k]` with every `|nᵢ| ≥ 2`.
//!
//! Each such expansion of `α/β` or `α/(β − α)` indexes one essential
//! spanning surface of `K(α, β)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::surface::TwoBridgeKnot;
use crate::{Error, Fraction, Result};

/// A continued-fraction expansion `n₁ + 1/(n₂ + … + 1/n_k)`.
///
/// `r` records which target the expansion came from: 0 for `α/β`,
/// 1 for `α/(β − α)`. The ordering is by `r`, then lexicographic on terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Expansion {
    r: u8,
    terms: Vec<i64>,
}

impl Expansion {
    pub fn new(terms: Vec<i64>) -> Result<Self> {
        Self::with_r(terms, 0)
    }

    pub fn with_r(terms: Vec<i64>, r: u8) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("expansion must have at least one term"));
        }
        if let Some(bad) = terms.iter().find(|n| n.unsigned_abs() < 2) {
            return Err(Error::invalid(format!("expansion term {bad} has |n| < 2")));
        }
        if r > 1 {
            return Err(Error::invalid(format!("integer part r = {r} is not 0 or 1")));
        }
        Ok(Expansion { r, terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    /// Number of terms, which is also the number of bands of the surface.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn all_even(&self) -> bool {
        self.terms.iter().all(|n| n % 2 == 0)
    }

    /// The same terms, all negated. Expands the negated value.
    pub fn negated(&self) -> Expansion {
        Expansion { r: 1 - self.r, terms: self.terms.iter().map(|n| -n).collect() }
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, n) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/r{}", self.r)
    }
}

/// `n₁ + 1/(n₂ + … + 1/n_k)`, evaluated exactly from the tail.
pub fn cf_value(e: &Expansion) -> Fraction {
    let mut terms = e.terms.iter().rev();
    let mut value = Fraction::from(*terms.next().expect("expansions are nonempty"));
    for &n in terms {
        // |value| > 1 at every step, so the reciprocal exists.
        let tail = value.recip().expect("tail of a valid expansion is nonzero");
        value = Fraction::from(n) + tail;
    }
    assert!(value.cmp_abs(&Fraction::one()).is_gt(), "|cf value| must exceed 1");
    value
}

/// Every expansion whose value is exactly `x`, sorted lexicographically.
///
/// Requires `|x| > 1`. At a non-integer target the first term must be
/// `⌊x⌋` or `⌈x⌉`; any other choice leaves a remainder whose reciprocal has
/// absolute value at most 1. Integer targets only admit `[x]`. Denominators
/// strictly decrease along each branch, so the search is finite.
pub fn enumerate_expansions(x: &Fraction) -> Result<Vec<Expansion>> {
    if x.cmp_abs(&Fraction::one()).is_le() {
        return Err(Error::invalid(format!("cannot expand {x}: |x| must exceed 1")));
    }
    let to_term = |n: BigInt| {
        n.to_i64().ok_or_else(|| Error::invalid(format!("term {n} does not fit in 64 bits")))
    };

    let mut out = Vec::new();
    let mut stack: Vec<(Fraction, Vec<i64>)> = vec![(x.clone(), Vec::new())];
    while let Some((target, prefix)) = stack.pop() {
        if target.is_integer() {
            let mut terms = prefix;
            terms.push(to_term(target.floor())?);
            out.push(Expansion { r: 0, terms });
            continue;
        }
        for n in [target.floor(), target.ceil()] {
            let n = to_term(n)?;
            if n.unsigned_abs() < 2 {
                continue;
            }
            let rest = (&target - &Fraction::from(n)).recip()?;
            let mut terms = prefix.clone();
            terms.push(n);
            stack.push((rest, terms));
        }
    }
    out.sort();
    Ok(out)
}

/// All expansions indexing essential spanning surfaces of `knot`: those of
/// `α/β` tagged `r = 0`, followed by those of `α/(β − α)` tagged `r = 1`.
pub fn surfaces_expansions(knot: &TwoBridgeKnot) -> Vec<Expansion> {
    let alpha = knot.alpha() as i64;
    let beta = knot.beta() as i64;
    let targets = [
        Fraction::new(alpha, beta).expect("beta > 0"),
        Fraction::new(alpha, beta - alpha).expect("beta < alpha"),
    ];
    let mut out = Vec::new();
    for (r, target) in targets.iter().enumerate() {
        let found = enumerate_expansions(target).expect("valid knots give targets beyond ±1");
        out.extend(found.into_iter().map(|mut e| {
            e.r = r as u8;
            e
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn exp(terms: &[i64]) -> Expansion {
        Expansion::new(terms.to_vec()).unwrap()
    }

    fn frac(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    /// Literal exhaustive search: every sequence of length ≤ `max_len` with
    /// `2 ≤ |nᵢ| ≤ max_term`, kept when its value equals `x`.
    fn brute_force(x: &Fraction, max_len: usize, max_term: i64) -> BTreeSet<Vec<i64>> {
        let alphabet: Vec<i64> =
            (2..=max_term).flat_map(|n| [n, -n]).collect();
        let mut found = BTreeSet::new();
        let mut layer: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for seq in &layer {
                for &n in &alphabet {
                    let mut s = seq.clone();
                    s.push(n);
                    if cf_value(&exp(&s)) == *x {
                        found.insert(s.clone());
                    }
                    next.push(s);
                }
            }
            layer = next;
        }
        found
    }

    fn enumerated(x: &Fraction) -> BTreeSet<Vec<i64>> {
        enumerate_expansions(x).unwrap().into_iter().map(|e| e.terms).collect()
    }

    #[test]
    fn values() {
        assert_eq!(cf_value(&exp(&[3])), Fraction::from(3));
        assert_eq!(cf_value(&exp(&[2, 3])), frac(7, 3));
        assert_eq!(cf_value(&exp(&[-2, 4])), frac(-7, 4));
    }

    #[test]
    fn rejects_short_terms() {
        assert!(Expansion::new(vec![]).is_err());
        assert!(Expansion::new(vec![2, 1]).is_err());
        assert!(Expansion::new(vec![0]).is_err());
        assert!(Expansion::with_r(vec![2], 2).is_err());
    }

    #[test]
    fn enumeration_examples_match_exhaustive_search() {
        for (x, expected) in [
            (Fraction::from(3), vec![vec![3]]),
            (frac(5, 2), vec![vec![2, 2], vec![3, -2]]),
            (frac(-5, 3), vec![vec![-2, 3]]),
        ] {
            let oracle = brute_force(&x, 4, 6);
            let expected: BTreeSet<_> = expected.into_iter().collect();
            assert_eq!(oracle, expected, "oracle for {x}");
            assert_eq!(enumerated(&x), expected, "enumeration for {x}");
        }
    }

    #[test]
    fn output_is_sorted() {
        let e = enumerate_expansions(&frac(5, 2)).unwrap();
        assert_eq!(e, vec![exp(&[2, 2]), exp(&[3, -2])]);
    }

    #[test]
    fn rejects_small_targets() {
        assert!(enumerate_expansions(&Fraction::one()).is_err());
        assert!(enumerate_expansions(&frac(-1, 2)).is_err());
        assert!(enumerate_expansions(&Fraction::zero()).is_err());
    }

    #[test]
    fn knot_expansions() {
        let cases: [(u64, u64, Vec<Vec<i64>>); 3] = [
            (5, 2, vec![vec![2, 2], vec![3, -2], vec![-2, 3]]),
            (7, 3, vec![vec![2, 3], vec![3, -2, 2], vec![-2, 4]]),
            (3, 1, vec![vec![3], vec![-2, 2]]),
        ];
        for (a, b, expected) in cases {
            let knot = TwoBridgeKnot::new(a as i64, b as i64).unwrap();
            let got: Vec<Vec<i64>> =
                surfaces_expansions(&knot).into_iter().map(|e| e.terms).collect();
            assert_eq!(got, expected, "K({a},{b})");

            // Independent check of each half against the exhaustive search.
            let mut oracle = brute_force(&frac(a as i64, b as i64), 4, a as i64);
            oracle.extend(brute_force(&frac(a as i64, b as i64 - a as i64), 4, a as i64));
            assert_eq!(oracle, expected.into_iter().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn tags_record_target() {
        let knot = TwoBridgeKnot::new(5, 2).unwrap();
        let tags: Vec<u8> = surfaces_expansions(&knot).iter().map(Expansion::r).collect();
        assert_eq!(tags, vec![0, 0, 1]);
    }

    #[test]
    fn display() {
        assert_eq!(exp(&[3, -2, 2]).to_string(), "[3,-2,2]");
    }
}
