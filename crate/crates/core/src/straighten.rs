//! Straightening of signed, `q`-weighted Schur symbols `± q^d s_alpha` at a
//! fixed level under the level-shifted action of the affine Weyl group.
//!
//! With `mu = alpha + rho` and `m = level + n`, the classical steps swap two
//! adjacent entries of `mu`, and the affine step sends
//! `(mu_1, mu_n) -> (mu_n + m, mu_1 - m)`. A symbol vanishes iff two entries
//! of `mu` agree modulo `m`; otherwise it has a unique representative with
//! `mu_1 > ... > mu_n > mu_1 - m`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::weight::{FiniteWeight, LevelWeight};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchurSymbol {
    pub alpha: Vec<i64>,
    pub sign: i64,
    pub qpow: i64,
    pub level: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalForm {
    Zero,
    Term {
        sign: i64,
        qpow: i64,
        beta: Vec<i64>,
    },
}

impl SchurSymbol {
    pub fn new(alpha: Vec<i64>, level: i64) -> Self {
        SchurSymbol {
            alpha,
            sign: 1,
            qpow: 0,
            level,
        }
    }

    pub fn rank(&self) -> usize {
        self.alpha.len()
    }

    fn modulus(&self) -> i64 {
        self.level + self.rank() as i64
    }

    /// `alpha + rho` with `rho = (n-1, ..., 0)`.
    pub fn shifted(&self) -> Vec<i64> {
        let n = self.rank() as i64;
        self.alpha
            .iter()
            .enumerate()
            .map(|(k, a)| a + n - 1 - k as i64)
            .collect()
    }

    /// Whether `alpha` is dominant of this level: `alpha_1 >= ... >= alpha_n`
    /// and `alpha_1 - alpha_n <= level`.
    pub fn is_normal(&self) -> bool {
        let a = &self.alpha;
        a.windows(2).all(|w| w[0] >= w[1]) && a[0] - a[a.len() - 1] <= self.level
    }
}

/// One rewrite: negate the sign and apply the shifted reflection `r_i`.
pub fn straighten_step(sym: &SchurSymbol, i: usize) -> Result<SchurSymbol> {
    let n = sym.rank();
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let mut out = sym.clone();
    out.sign = -sym.sign;
    let a = &mut out.alpha;
    if i == 0 {
        let (first, last) = (sym.alpha[0], sym.alpha[n - 1]);
        a[0] = sym.level + 1 + last;
        a[n - 1] = first - 1 - sym.level;
        out.qpow = sym
            .qpow
            .checked_add(sym.level + 1 - first + last)
            .ok_or(Error::Overflow)?;
    } else {
        let (x, y) = (sym.alpha[i - 1], sym.alpha[i]);
        a[i - 1] = y - 1;
        a[i] = x + 1;
    }
    Ok(out)
}

/// Normal form by the closed-form reduction of `mu = alpha + rho` into the
/// fundamental alcove.
pub fn normalize(sym: &SchurSymbol) -> Result<NormalForm> {
    let n = sym.rank();
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    if sym.level < 0 {
        return Err(Error::NotDominant(alloc::format!(
            "negative level {}",
            sym.level
        )));
    }
    let m = sym.modulus();
    let mu = sym.shifted();
    let mut by_residue: Vec<(i64, i64, usize)> = mu
        .iter()
        .enumerate()
        .map(|(k, &x)| (x.rem_euclid(m), x.div_euclid(m), k))
        .collect();
    by_residue.sort_unstable();
    if by_residue.windows(2).any(|w| w[0].0 == w[1].0) {
        return Ok(NormalForm::Zero);
    }
    let total: i64 = by_residue.iter().map(|r| r.1).sum();
    let (s, t) = (
        total.div_euclid(n as i64),
        total.rem_euclid(n as i64) as usize,
    );
    // smallest t residues sit one period higher; all values then fit in a window of width < m
    let mut placed: Vec<(i64, usize)> = by_residue
        .iter()
        .enumerate()
        .map(|(rank, &(r, _, k))| (r + m * (s + i64::from(rank < t)), k))
        .collect();
    placed.sort_unstable_by_key(|p| core::cmp::Reverse(p.0));
    // position j of nu holds the entry from position source[j] of mu
    let source: Vec<usize> = placed.iter().map(|p| p.1).collect();
    let nu: Vec<i64> = placed.iter().map(|p| p.0).collect();
    let gamma: Vec<i64> = (0..n).map(|j| (nu[j] - mu[source[j]]) / m).collect();
    let sigma = Permutation::from_images(source)?;
    let dot: i64 = nu.iter().zip(&gamma).map(|(a, b)| a * b).sum();
    let g2: i64 = gamma.iter().map(|g| g * g).sum();
    let shift = dot - m * g2 / 2;
    let rho = FiniteWeight::rho(n);
    let beta: Vec<i64> = nu.iter().zip(rho.coords()).map(|(a, r)| a - r).collect();
    Ok(NormalForm::Term {
        sign: sym.sign * sigma.sign(),
        qpow: sym.qpow.checked_add(shift).ok_or(Error::Overflow)?,
        beta,
    })
}

/// Normal form by literally applying rewrite steps: a classical step where
/// `mu` increases, otherwise the affine step where `mu_1 - mu_n > m`. A
/// symbol fixed up to sign by a step is zero.
pub fn reduce(sym: &SchurSymbol, max_steps: usize) -> Result<NormalForm> {
    let n = sym.rank();
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    let m = sym.modulus();
    let mut cur = sym.clone();
    for _ in 0..max_steps {
        let mu = cur.shifted();
        if mu.windows(2).any(|w| w[0] == w[1]) || mu[0] - mu[n - 1] == m {
            return Ok(NormalForm::Zero);
        }
        if let Some(i) = (1..n).find(|&i| mu[i - 1] < mu[i]) {
            cur = straighten_step(&cur, i)?;
        } else if mu[0] - mu[n - 1] > m {
            cur = straighten_step(&cur, 0)?;
        } else {
            return Ok(NormalForm::Term {
                sign: cur.sign,
                qpow: cur.qpow,
                beta: cur.alpha,
            });
        }
    }
    Err(Error::NonTermination)
}

/// `Pi e^{level Lambda_0 + alpha}` as `± q^d ch V(Lambda')`, or `None` when it
/// vanishes. `Lambda'` carries no `delta` part; `d` is returned separately.
pub fn pi_on_character(level: i64, alpha: &[i64]) -> Result<Option<(i64, i64, LevelWeight)>> {
    if level < 1 {
        return Err(Error::NotDominant(alloc::format!("level {level} < 1")));
    }
    match normalize(&SchurSymbol::new(alpha.to_vec(), level))? {
        NormalForm::Zero => Ok(None),
        NormalForm::Term { sign, qpow, beta } => Ok(Some((
            sign,
            qpow,
            LevelWeight::new(level, FiniteWeight::new(beta), 0),
        ))),
    }
}
