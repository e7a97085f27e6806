//! State matrices, their Gordon–Litherland symmetrizations, and the
//! transformations that relate different choices of curve system.
//!
//! Indices are zero-based throughout: band `i` of an expansion is row `i`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::cf::Expansion;
use crate::{Error, Fraction, LaurentPolynomial, Result};

fn zero() -> &'static Fraction {
    static ZERO: OnceLock<Fraction> = OnceLock::new();
    ZERO.get_or_init(Fraction::zero)
}

/// Nonzero entries of a square matrix keyed by `(row, column)`.
type Entries = BTreeMap<(usize, usize), Fraction>;

fn dense(size: usize, entries: &Entries) -> Vec<Vec<Fraction>> {
    let mut rows = vec![vec![Fraction::zero(); size]; size];
    for (&(i, j), x) in entries {
        rows[i][j] = x.clone();
    }
    rows
}

fn in_band(entries: &Entries) -> bool {
    entries.keys().all(|&(i, j)| i.abs_diff(j) < 2)
}

/// A square rational matrix `V` with `V + Vᵀ` the Gordon–Litherland form of
/// a surface, relative to a curve system on it.
///
/// `standard` produces the canonical lower-bidiagonal form. `from_rows`
/// accepts any square matrix so that relabeled copies and counterexamples
/// can be fed to the same determinant and signature routines; use
/// `has_state_shape` to test the structural invariants. Only nonzero
/// entries are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateMatrix {
    size: usize,
    entries: Entries,
}

impl StateMatrix {
    /// Diagonal `(−1)^i nᵢ/2`, ones directly below it, zeros elsewhere.
    pub fn standard(e: &Expansion) -> Self {
        let k = e.len();
        let mut entries = Entries::new();
        for (i, &n) in e.terms().iter().enumerate() {
            entries.insert((i, i), Fraction::half(if i % 2 == 0 { n } else { -n }));
            if i + 1 < k {
                entries.insert((i + 1, i), Fraction::one());
            }
        }
        StateMatrix { size: k, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Fraction>>) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::invalid("state matrix must be square"));
        }
        let entries = rows
            .into_iter()
            .enumerate()
            .flat_map(|(i, r)| r.into_iter().enumerate().map(move |(j, x)| ((i, j), x)));
        Self::from_entries(k, entries)
    }

    /// A `size`×`size` matrix from `((row, column), value)` triples; absent
    /// entries are zero and later duplicates win.
    pub fn from_entries(
        size: usize,
        entries: impl IntoIterator<Item = ((usize, usize), Fraction)>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("state matrix must be at least 1x1"));
        }
        let mut map = Entries::new();
        for ((i, j), x) in entries {
            if i >= size || j >= size {
                return Err(Error::invalid(format!("entry ({i}, {j}) outside a {size}x{size} matrix")));
            }
            if x.is_zero() {
                map.remove(&(i, j));
            } else {
                map.insert((i, j), x);
            }
        }
        Ok(StateMatrix { size, entries: map })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &Fraction {
        self.entries.get(&(i, j)).unwrap_or_else(|| zero())
    }

    /// The nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = ((usize, usize), &Fraction)> {
        self.entries.iter().map(|(&ij, x)| (ij, x))
    }

    pub fn to_rows(&self) -> Vec<Vec<Fraction>> {
        dense(self.size, &self.entries)
    }

    /// Reverses the normal vector at the intersection of curves `i` and
    /// `i + 1`: swaps entries `(i, i+1)` and `(i+1, i)`.
    pub fn flip_normal(&self, i: usize) -> Result<Self> {
        if i + 1 >= self.size {
            return Err(Error::invalid(format!(
                "flip_normal index {i} out of range for a {k}x{k} matrix",
                k = self.size
            )));
        }
        let mut out = self.clone();
        let upper = out.entries.remove(&(i, i + 1));
        let lower = out.entries.remove(&(i + 1, i));
        if let Some(x) = upper {
            out.entries.insert((i + 1, i), x);
        }
        if let Some(x) = lower {
            out.entries.insert((i, i + 1), x);
        }
        Ok(out)
    }

    /// Reverses the orientation of curve `i`: negates row `i` and column `i`.
    pub fn flip_orientation(&self, i: usize) -> Result<Self> {
        let k = self.size;
        if i >= k {
            return Err(Error::invalid(format!("flip_orientation index {i} out of range for a {k}x{k} matrix")));
        }
        let mut out = self.clone();
        for (&(r, c), x) in out.entries.iter_mut() {
            // The diagonal entry lies in both and is negated twice.
            if (r == i) != (c == i) {
                *x = -&*x;
            }
        }
        Ok(out)
    }

    /// Whether the support is that of a state matrix along a plumbing: zero
    /// outside the tridiagonal band and, for each adjacent pair, exactly one
    /// of `(i, i+1)`, `(i+1, i)` equal to `±1` with the other zero.
    pub fn has_state_shape(&self) -> bool {
        let unit = |f: &Fraction| f.abs() == Fraction::one();
        let pairs_ok = (0..self.size.saturating_sub(1)).all(|i| {
            let (a, b) = (self.entry(i, i + 1), self.entry(i + 1, i));
            (unit(a) && b.is_zero()) || (a.is_zero() && unit(b))
        });
        in_band(&self.entries) && pairs_ok
    }

    /// `V − tVᵀ` over Laurent polynomials, stored densely.
    pub fn characteristic(&self) -> CharacteristicMatrix {
        let k = self.size;
        let t = LaurentPolynomial::t();
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let v = LaurentPolynomial::constant(self.entry(i, j).clone());
                        let vt = LaurentPolynomial::constant(self.entry(j, i).clone());
                        &v - &(&t * &vt)
                    })
                    .collect()
            })
            .collect();
        CharacteristicMatrix { rows }
    }
}

impl fmt::Debug for StateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// The symmetric matrix `V + Vᵀ` of the Gordon–Litherland pairing. For a
/// standard state matrix it is a tridiagonal Goeritz matrix with diagonal
/// `(−1)^i nᵢ`. Only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GLMatrix {
    size: usize,
    entries: Entries,
}

impl GLMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &Fraction {
        self.entries.get(&(i, j)).unwrap_or_else(|| zero())
    }

    pub fn to_rows(&self) -> Vec<Vec<Fraction>> {
        dense(self.size, &self.entries)
    }

    pub fn diagonal(&self) -> Vec<Fraction> {
        (0..self.size).map(|i| self.entry(i, i).clone()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(&(i, j), x)| self.entry(j, i) == x)
    }

    pub fn is_tridiagonal(&self) -> bool {
        in_band(&self.entries)
    }
}

/// `V + Vᵀ`.
pub fn gl_matrix(v: &StateMatrix) -> GLMatrix {
    let mut entries = Entries::new();
    for (&(i, j), x) in &v.entries {
        for key in [(i, j), (j, i)] {
            let slot = entries.entry(key).or_insert_with(Fraction::zero);
            *slot = &*slot + x;
        }
    }
    entries.retain(|_, x| !x.is_zero());
    GLMatrix { size: v.size, entries }
}

/// `V − tVᵀ`, the matrix whose determinant is the state polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacteristicMatrix {
    rows: Vec<Vec<LaurentPolynomial>>,
}

impl CharacteristicMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.rows[i][j]
    }

    /// Every entry evaluated at `t = x`.
    pub fn specialize(&self, x: &Fraction) -> Result<Vec<Vec<Fraction>>> {
        self.rows.iter().map(|r| r.iter().map(|p| p.eval(x)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    fn mat(rows: &[&[Fraction]]) -> StateMatrix {
        StateMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn exp(terms: &[i64]) -> Expansion {
        Expansion::new(terms.to_vec()).unwrap()
    }

    #[test]
    fn standard_examples() {
        assert_eq!(
            StateMatrix::standard(&exp(&[2, 3])),
            mat(&[&[f(1, 1), f(0, 1)], &[f(1, 1), f(-3, 2)]])
        );
        assert_eq!(StateMatrix::standard(&exp(&[5])), mat(&[&[f(5, 2)]]));
        assert_eq!(
            StateMatrix::standard(&exp(&[-2, 4])),
            mat(&[&[f(-1, 1), f(0, 1)], &[f(1, 1), f(-2, 1)]])
        );
    }

    #[test]
    fn flip_normal_swaps_pair() {
        let v = StateMatrix::standard(&exp(&[2, 3]));
        let w = v.flip_normal(0).unwrap();
        assert_eq!(w, mat(&[&[f(1, 1), f(1, 1)], &[f(0, 1), f(-3, 2)]]));
        assert_eq!(w.flip_normal(0).unwrap(), v);
        assert_eq!(gl_matrix(&w), gl_matrix(&v));
        assert!(v.flip_normal(1).is_err());
    }

    #[test]
    fn flip_orientation_negates_cross() {
        let v = StateMatrix::standard(&exp(&[2, 3]));
        let w = v.flip_orientation(1).unwrap();
        assert_eq!(w, mat(&[&[f(1, 1), f(0, 1)], &[f(-1, 1), f(-3, 2)]]));
        assert_eq!(w.flip_orientation(1).unwrap(), v);
        assert!(v.flip_orientation(2).is_err());
    }

    #[test]
    fn gl_examples() {
        let v = StateMatrix::standard(&exp(&[2, 3]));
        let g = gl_matrix(&v);
        assert_eq!(g.to_rows(), vec![vec![f(2, 1), f(1, 1)], vec![f(1, 1), f(-3, 1)]]);
        assert_eq!(gl_matrix(&StateMatrix::standard(&exp(&[-7]))).to_rows(), vec![vec![f(-7, 1)]]);
    }

    #[test]
    fn from_rows_validates() {
        assert!(StateMatrix::from_rows(vec![]).is_err());
        assert!(StateMatrix::from_rows(vec![vec![f(1, 1)], vec![f(1, 1)]]).is_err());
        assert!(StateMatrix::from_entries(2, [((2, 0), f(1, 1))]).is_err());
        let sparse = StateMatrix::from_entries(2, [((0, 0), f(1, 1)), ((1, 1), f(0, 1))]).unwrap();
        assert_eq!(sparse, mat(&[&[f(1, 1), f(0, 1)], &[f(0, 1), f(0, 1)]]));
        assert_eq!(sparse.nonzero_entries().count(), 1);
    }

    #[test]
    fn symmetric_counterexample_lacks_state_shape() {
        let v_prime = mat(&[&[f(1, 2), f(1, 1)], &[f(1, 1), f(-3, 2)]]);
        assert!(!v_prime.has_state_shape());
    }

    #[test]
    fn characteristic_specializes_to_gl_at_minus_one() {
        let v = StateMatrix::standard(&exp(&[3, -2, 2]));
        let at = v.characteristic().specialize(&Fraction::from(-1)).unwrap();
        assert_eq!(at, gl_matrix(&v).to_rows());
        let c = v.characteristic();
        // Sub/super pairs multiply to −t.
        for i in 0..2 {
            let prod = c.entry(i, i + 1) * c.entry(i + 1, i);
            assert_eq!(prod, -LaurentPolynomial::t());
        }
    }

    fn arb_expansion() -> impl Strategy<Value = Expansion> {
        prop::collection::vec((2i64..9, any::<bool>()), 1..9).prop_map(|v| {
            Expansion::new(v.into_iter().map(|(n, s)| if s { n } else { -n }).collect()).unwrap()
        })
    }

    #[derive(Debug, Clone)]
    enum Move {
        Normal(usize),
        Orientation(usize),
    }

    fn arb_moves() -> impl Strategy<Value = Vec<Move>> {
        prop::collection::vec(
            prop_oneof![(0usize..8).prop_map(Move::Normal), (0usize..8).prop_map(Move::Orientation)],
            0..12,
        )
    }

    proptest! {
        #[test]
        fn standard_matrix_shape(e in arb_expansion()) {
            let v = StateMatrix::standard(&e);
            prop_assert!(v.has_state_shape());
            let g = gl_matrix(&v);
            prop_assert!(g.is_symmetric() && g.is_tridiagonal());
            for (i, &n) in e.terms().iter().enumerate() {
                let expected = if i % 2 == 0 { n } else { -n };
                prop_assert_eq!(g.entry(i, i), &Fraction::from(expected));
            }
        }

        #[test]
        fn flips_preserve_shape_and_diagonal(e in arb_expansion(), moves in arb_moves()) {
            let start = StateMatrix::standard(&e);
            let mut v = start.clone();
            let k = v.size();
            for m in moves {
                v = match m {
                    Move::Normal(i) if i + 1 < k => v.flip_normal(i).unwrap(),
                    Move::Orientation(i) if i < k => v.flip_orientation(i).unwrap(),
                    _ => v,
                };
                prop_assert!(v.has_state_shape());
                let both_one = (0..k.saturating_sub(1)).any(|i| {
                    v.entry(i, i + 1) == &Fraction::one() && v.entry(i + 1, i) == &Fraction::one()
                });
                prop_assert!(!both_one);
                for i in 0..k {
                    prop_assert_eq!(v.entry(i, i), start.entry(i, i));
                }
            }
        }
    }
}
