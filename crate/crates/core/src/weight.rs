//! Finite weights in `Z^n` and level weights `l*Lambda_0 + finite + d*delta`.
//!
//! Finite weights of `sl_n` are represented by integer vectors in `Z^n`
//! (basis `eps_1..eps_n`). Vectors that differ by a multiple of
//! `(1, ..., 1)` describe the same `sl_n` weight; [`LevelWeight`] keeps its
//! finite part normalized to a zero last coordinate so that structural
//! equality is equality of weights.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteWeight(Vec<i64>);

impl FiniteWeight {
    pub fn new(coords: Vec<i64>) -> Self {
        FiniteWeight(coords)
    }

    pub fn zero(n: usize) -> Self {
        FiniteWeight(vec![0; n])
    }

    /// `rho = (n-1, n-2, ..., 1, 0)`.
    pub fn rho(n: usize) -> Self {
        FiniteWeight((0..n).map(|i| (n - 1 - i) as i64).collect())
    }

    /// Highest root `theta = eps_1 - eps_n`.
    pub fn theta(n: usize) -> Self {
        let mut v = vec![0; n];
        v[0] = 1;
        v[n - 1] -= 1;
        FiniteWeight(v)
    }

    /// Simple root `alpha_i = eps_i - eps_{i+1}` for `1 <= i < n`.
    pub fn simple_root(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        v[i] = -1;
        FiniteWeight(v)
    }

    /// Fundamental weight `eps_1 + ... + eps_i`.
    pub fn fundamental(n: usize, i: usize) -> Self {
        FiniteWeight((0..n).map(|j| i64::from(j < i)).collect())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Membership in the root lattice `M`: zero coordinate sum.
    pub fn in_root_lattice(&self) -> bool {
        self.sum() == 0
    }

    /// Weakly decreasing coordinates.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// `<alpha_i^vee, self>` for a classical index `1 <= i < n`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i - 1] - self.0[i]
    }

    /// Shift by a multiple of `(1, ..., 1)` so the last coordinate is zero.
    pub fn normalized(&self) -> Self {
        let last = self.0.last().copied().unwrap_or(0);
        FiniteWeight(self.0.iter().map(|x| x - last).collect())
    }

    /// Whether `self - other` is a multiple of `(1, ..., 1)`.
    pub fn same_class(&self, other: &Self) -> bool {
        self.len() == other.len()
            && (self.is_empty() || {
                let d = self.0[0] - other.0[0];
                self.0.iter().zip(&other.0).all(|(a, b)| a - b == d)
            })
    }

    pub fn scale(&self, k: i64) -> Self {
        FiniteWeight(self.0.iter().map(|x| x * k).collect())
    }

    /// Uniform shift by `c * (1, ..., 1)`.
    pub fn shift(&self, c: i64) -> Self {
        FiniteWeight(self.0.iter().map(|x| x + c).collect())
    }

    pub fn norm2(&self) -> i64 {
        self.0.iter().map(|x| x * x).sum()
    }
}

/// Standard dot product on `Z^n`.
pub fn dot(a: &FiniteWeight, b: &FiniteWeight) -> Result<i64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum())
}

impl Add for &FiniteWeight {
    type Output = FiniteWeight;
    fn add(self, rhs: &FiniteWeight) -> FiniteWeight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        FiniteWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &FiniteWeight {
    type Output = FiniteWeight;
    fn sub(self, rhs: &FiniteWeight) -> FiniteWeight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        FiniteWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &FiniteWeight {
    type Output = FiniteWeight;
    fn neg(self) -> FiniteWeight {
        FiniteWeight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for FiniteWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An affine weight `level * Lambda_0 + finite + delta_coeff * delta`.
///
/// The finite part is lifted through `Lambda_i - Lambda_0` for the classical
/// fundamental weights and kept normalized (last coordinate zero).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelWeight {
    level: i64,
    finite: FiniteWeight,
    delta_coeff: i64,
}

impl LevelWeight {
    pub fn new(level: i64, finite: FiniteWeight, delta_coeff: i64) -> Self {
        LevelWeight {
            level,
            finite: finite.normalized(),
            delta_coeff,
        }
    }

    /// `sum_i c_i Lambda_i` for `coeffs = (c_0, ..., c_{n-1})`.
    pub fn from_fundamental(coeffs: &[i64]) -> Result<Self> {
        let n = coeffs.len();
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let level = coeffs.iter().sum();
        let mut finite = vec![0; n];
        for (i, &c) in coeffs.iter().enumerate().skip(1) {
            for x in finite.iter_mut().take(i) {
                *x += c;
            }
        }
        Ok(LevelWeight::new(level, FiniteWeight(finite), 0))
    }

    /// `level * Lambda_0` in rank `n`.
    pub fn multiple_of_lambda0(n: usize, level: i64) -> Self {
        LevelWeight::new(level, FiniteWeight::zero(n), 0)
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn finite(&self) -> &FiniteWeight {
        &self.finite
    }

    pub fn delta_coeff(&self) -> i64 {
        self.delta_coeff
    }

    pub fn rank(&self) -> usize {
        self.finite.len()
    }

    pub fn with_delta(&self, delta_coeff: i64) -> Self {
        LevelWeight {
            delta_coeff,
            ..self.clone()
        }
    }

    /// `<alpha_i^vee, self>` for `i` in `0..n`.
    pub fn pairing(&self, i: usize) -> i64 {
        let c = self.finite.coords();
        if i == 0 {
            self.level - (c[0] - c[c.len() - 1])
        } else {
            c[i - 1] - c[i]
        }
    }

    /// Coefficients `(c_0, ..., c_{n-1})` on the fundamental weights.
    pub fn fundamental_coeffs(&self) -> Vec<i64> {
        (0..self.rank()).map(|i| self.pairing(i)).collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.level >= 0 && (0..self.rank()).all(|i| self.pairing(i) >= 0)
    }

    pub fn ensure_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(self.to_string()))
        }
    }

    /// Same weight modulo `delta`.
    pub fn same_classical(&self, other: &Self) -> bool {
        self.level == other.level && self.finite == other.finite
    }

    /// Simple reflection `r_i(L) = L - <alpha_i^vee, L> alpha_i`, with
    /// `alpha_0 = delta - theta`.
    pub fn reflect(&self, i: usize) -> Self {
        let n = self.rank();
        let p = self.pairing(i);
        if i == 0 {
            let finite = &self.finite + &FiniteWeight::theta(n).scale(p);
            LevelWeight::new(self.level, finite, self.delta_coeff - p)
        } else {
            let finite = &self.finite - &FiniteWeight::simple_root(n, i).scale(p);
            LevelWeight::new(self.level, finite, self.delta_coeff)
        }
    }

    /// Parse a selector such as `L0`, `2L0`, `L0+L2` in rank `n`.
    pub fn parse_selector(text: &str, n: usize) -> Result<Self> {
        let mut coeffs = vec![0i64; n];
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty weight selector".into()));
        }
        for term in text.split('+') {
            let term = term.trim();
            let pos = term
                .find(['L', 'l'])
                .ok_or_else(|| Error::Parse(alloc::format!("bad selector term {term:?}")))?;
            let (mult, idx) = term.split_at(pos);
            let mult: i64 = if mult.is_empty() {
                1
            } else {
                mult.trim_end_matches('*')
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("bad multiplicity in {term:?}")))?
            };
            let idx: usize = idx[1..]
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad index in {term:?}")))?;
            if idx >= n {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    rank: n,
                });
            }
            if mult < 0 {
                return Err(Error::Parse(alloc::format!(
                    "negative multiplicity in {term:?}"
                )));
            }
            coeffs[idx] += mult;
        }
        LevelWeight::from_fundamental(&coeffs)
    }

    /// Selector form (`L0+2L1`) of a dominant weight, `0` for the zero weight.
    pub fn selector(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.fundamental_coeffs().into_iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(alloc::format!("L{i}")),
                _ => parts.push(alloc::format!("{c}L{i}")),
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for LevelWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.selector())?;
        if self.delta_coeff != 0 {
            write!(f, "{:+}d", self.delta_coeff)?;
        }
        Ok(())
    }
}

/// All dominant weights of the given level in rank `n`.
pub fn dominant_of_level(n: usize, level: i64) -> Vec<LevelWeight> {
    fn rec(slot: usize, n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<LevelWeight>) {
        if slot + 1 == n {
            cur.push(left);
            out.push(LevelWeight::from_fundamental(cur).expect("rank >= 2"));
            cur.pop();
            return;
        }
        for c in (0..=left).rev() {
            cur.push(c);
            rec(slot + 1, n, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 && level >= 0 {
        rec(0, n, level, &mut Vec::with_capacity(n), &mut out);
    }
    out
}
