use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Fraction;
use crate::{Error, Result};

/// A Laurent polynomial in `t` with exact rational coefficients.
///
/// Stored densely, lowest degree first. After every operation leading and
/// trailing zero coefficients are trimmed, so the first and last stored
/// coefficients are nonzero unless the polynomial is zero (empty storage,
/// `min_degree` 0).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    min_degree: i64,
    coeffs: Vec<Fraction>,
}

impl LaurentPolynomial {
    /// `Σ coeffs[i] · t^(min_degree + i)`.
    pub fn new(min_degree: i64, coeffs: Vec<Fraction>) -> Self {
        let mut p = LaurentPolynomial { min_degree, coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(min_degree: i64, coeffs: &[i64]) -> Self {
        Self::new(min_degree, coeffs.iter().map(|&c| Fraction::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Fraction) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(c: Fraction, degree: i64) -> Self {
        Self::new(degree, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(Fraction::one(), 1)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().rposition(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.min_degree = 0;
            }
            Some(last) => {
                self.coeffs.truncate(last + 1);
                let first = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
                if first > 0 {
                    self.coeffs.drain(..first);
                    self.min_degree += first as i64;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Highest exponent present; `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_degree + self.coeffs.len() as i64 - 1)
        }
    }

    /// `max_degree − min_degree`; `None` for zero.
    pub fn degree_span(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients, lowest degree first.
    pub fn coefficients(&self) -> &[Fraction] {
        &self.coeffs
    }

    pub fn coefficient(&self, degree: i64) -> Fraction {
        let idx = degree - self.min_degree;
        if idx < 0 {
            return Fraction::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_else(Fraction::zero)
    }

    pub fn lowest_coefficient(&self) -> Option<&Fraction> {
        self.coeffs.first()
    }

    pub fn leading_coefficient(&self) -> Option<&Fraction> {
        self.coeffs.last()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial { min_degree: self.min_degree + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Fraction) -> Self {
        Self::new(self.min_degree, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact value at `x`. Evaluating at zero is an error whenever a negative
    /// exponent is present.
    pub fn eval(&self, x: &Fraction) -> Result<Fraction> {
        if self.is_zero() {
            return Ok(Fraction::zero());
        }
        if x.is_zero() && self.min_degree < 0 {
            return Err(Error::invalid("evaluating a Laurent polynomial with negative exponents at 0"));
        }
        // Horner over integers: with x = a/b, common coefficient denominator
        // L and degree span d, accumulate L·b^d·Σ cᵢxⁱ and reduce once.
        let lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let (a, b) = (x.numer(), x.denom());
        let mut b_pow = BigInt::one();
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c.numer() * (&lcm / c.denom()) * &b_pow;
            b_pow *= b;
        }
        // The loop ran d + 1 times, one factor of b too many.
        let denom = lcm * (b_pow / b);
        Ok(Fraction::new(acc, denom)? * x.pow(self.min_degree as i32)?)
    }

    /// `p(t⁻¹)`: the coefficient sequence reversed around degree zero.
    pub fn reciprocal_substitute(&self) -> Self {
        match self.max_degree() {
            None => Self::zero(),
            Some(max) => {
                let coeffs = self.coeffs.iter().rev().cloned().collect();
                LaurentPolynomial { min_degree: -max, coeffs }
            }
        }
    }

    /// The representative of `{±tʲ·p}` with lowest degree 0 and a positive
    /// lowest coefficient. Two polynomials are unit multiples of each other
    /// exactly when their canonical forms agree.
    pub fn canonical(&self) -> Self {
        let mut p = self.shift(-self.min_degree);
        if p.lowest_coefficient().is_some_and(|c| c.signum() < 0) {
            p = -p;
        }
        p
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Fraction::is_integer)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(rhs.min_degree);
        let hi = self.max_degree().unwrap().max(rhs.max_degree().unwrap());
        let mut coeffs = vec![Fraction::zero(); (hi - lo + 1) as usize];
        for p in [self, rhs] {
            let off = (p.min_degree - lo) as usize;
            for (i, c) in p.coeffs.iter().enumerate() {
                coeffs[off + i] = &coeffs[off + i] + c;
            }
        }
        LaurentPolynomial::new(lo, coeffs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { min_degree: self.min_degree, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![Fraction::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LaurentPolynomial::new(self.min_degree + rhs.min_degree, coeffs)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = self.min_degree + i as i64;
            let mag = c.abs();
            if first {
                if c.signum() < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.signum() < 0 { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == Fraction::one();
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if deg == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}
