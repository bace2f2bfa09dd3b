//! Sparse Laurent polynomials in `q` with integer coefficients.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// `sum c_e q^e` with no stored zero coefficients.
///
/// Arithmetic is exact; coefficient or exponent overflow panics.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (exp, coeff) in terms {
            p.add_term(coeff, exp);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(exp) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                let c = o.get().checked_add(coeff).expect("coefficient overflow");
                if c == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs by increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.terms().collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms
            .values()
            .fold(0i64, |acc, c| acc.checked_add(*c).expect("overflow"))
    }

    /// `Some((coeff, exp))` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(i64, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, &c)| (c, e))
        } else {
            None
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e.checked_add(k).expect("exponent overflow"), c))
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(&e, &c)| (e, c.checked_mul(k).expect("coefficient overflow"))),
        )
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Equality after multiplying one side by a power of `q`.
    pub fn equal_up_to_shift(&self, other: &Self) -> bool {
        match (self.min_exp(), other.min_exp()) {
            (None, None) => true,
            (Some(a), Some(b)) => self.shift(b - a) == *other,
            _ => false,
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(-c, e);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(
                    c1.checked_mul(c2).expect("coefficient overflow"),
                    e1.checked_add(e2).expect("exponent overflow"),
                );
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "q^{e}")?,
                _ => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}
