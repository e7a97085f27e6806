//! 2-bridge knots and their essential spanning surfaces.

use std::fmt;

use num_integer::Integer;

use crate::cf::{surfaces_expansions, Expansion};
use crate::{Error, Result};

/// The 2-bridge knot `K(α, β)`: `α` odd and at least 3, `0 < β < α`,
/// `gcd(α, β) = 1`. `α` is the determinant of the knot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TwoBridgeKnot {
    alpha: u64,
    beta: u64,
}

impl TwoBridgeKnot {
    /// Validates `(α, β)`, reducing `β` into `(0, α)`.
    pub fn new(alpha: i64, beta: i64) -> Result<Self> {
        if alpha < 3 {
            return Err(Error::invalid(format!("alpha must be at least 3 (got {alpha})")));
        }
        if alpha % 2 == 0 {
            return Err(Error::invalid(format!("alpha must be odd (got {alpha}); even alpha gives a link")));
        }
        let beta = beta.rem_euclid(alpha);
        if beta == 0 {
            return Err(Error::invalid("beta must not be divisible by alpha"));
        }
        if alpha.gcd(&beta) != 1 {
            return Err(Error::invalid(format!("alpha and beta must be coprime (gcd({alpha}, {beta}) > 1)")));
        }
        Ok(TwoBridgeKnot { alpha: alpha as u64, beta: beta as u64 })
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    /// `K(α, α − β)`.
    pub fn mirror(&self) -> TwoBridgeKnot {
        TwoBridgeKnot { alpha: self.alpha, beta: self.alpha - self.beta }
    }

    /// `K(α, β')` with `ββ' ≡ 1 mod α`, another presentation of the same knot.
    pub fn inverse_presentation(&self) -> TwoBridgeKnot {
        let a = self.alpha as i64;
        let ext = (self.beta as i64).extended_gcd(&a);
        TwoBridgeKnot::new(a, ext.x).expect("beta is a unit mod alpha")
    }

    /// Every essential spanning surface, in expansion order.
    pub fn surfaces(&self) -> Vec<EssentialSurface> {
        surfaces_expansions(self).into_iter().map(EssentialSurface::new).collect()
    }

    /// Every valid knot with `α ≤ max_alpha`, ordered by `(α, β)`.
    pub fn census(max_alpha: u64) -> Vec<TwoBridgeKnot> {
        (3..=max_alpha)
            .step_by(2)
            .flat_map(|a| {
                (1..a).filter(move |b| a.gcd(b) == 1).map(move |b| TwoBridgeKnot { alpha: a, beta: b })
            })
            .collect()
    }
}

impl fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{})", self.alpha, self.beta)
    }
}

/// `(N⁺, N⁻)`: how many terms do and do not follow the sign pattern
/// `+, −, +, −, …`.
pub fn sign_counts(e: &Expansion) -> (usize, usize) {
    let n_plus = e
        .terms()
        .iter()
        .enumerate()
        .filter(|&(i, &n)| (n > 0) == (i % 2 == 0))
        .count();
    (n_plus, e.len() - n_plus)
}

/// An essential spanning surface, identified by its expansion.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EssentialSurface {
    pub expansion: Expansion,
    pub orientable: bool,
    /// Twice the genus. The genus `k/2` is half-integral for odd `k`.
    pub genus_twice: usize,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl EssentialSurface {
    pub fn new(expansion: Expansion) -> Self {
        let (n_plus, n_minus) = sign_counts(&expansion);
        EssentialSurface {
            orientable: expansion.all_even(),
            genus_twice: expansion.len(),
            n_plus,
            n_minus,
            expansion,
        }
    }

    /// `N⁺ − N⁻`.
    pub fn sign_balance(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }
}

/// The Seifert surface: the unique surface with an all-even expansion.
pub fn find_seifert(surfaces: &[EssentialSurface]) -> Result<&EssentialSurface> {
    let mut even = surfaces.iter().filter(|s| s.orientable);
    match (even.next(), even.next()) {
        (Some(s), None) => Ok(s),
        (None, _) => Err(Error::consistency("unique all-even expansion", "no all-even expansion found")),
        (Some(a), Some(b)) => Err(Error::consistency(
            "unique all-even expansion",
            format!("several all-even expansions, e.g. {} and {}", a.expansion, b.expansion),
        )),
    }
}
