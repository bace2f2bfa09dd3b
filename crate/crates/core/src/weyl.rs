//! The affine Weyl group of type `A_{n-1}^{(1)}` as `t_beta ∘ tau` with
//! `beta` in the root lattice and `tau` in `S_n`.

use core::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::weight::{dot, FiniteWeight, LevelWeight};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineWeylElement {
    beta: FiniteWeight,
    tau: Permutation,
}

impl AffineWeylElement {
    pub fn identity(n: usize) -> Self {
        AffineWeylElement {
            beta: FiniteWeight::zero(n),
            tau: Permutation::identity(n),
        }
    }

    pub fn new(beta: FiniteWeight, tau: Permutation) -> Result<Self> {
        if beta.len() != tau.len() {
            return Err(Error::LengthMismatch {
                left: beta.len(),
                right: tau.len(),
            });
        }
        if !beta.in_root_lattice() {
            return Err(Error::NotInRootLattice);
        }
        Ok(AffineWeylElement { beta, tau })
    }

    pub fn rank(&self) -> usize {
        self.tau.len()
    }

    pub fn beta(&self) -> &FiniteWeight {
        &self.beta
    }

    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    /// Translations are even, so the sign is that of `tau`.
    pub fn sign(&self) -> i64 {
        self.tau.sign()
    }

    /// Action on a level weight: permute the finite part, then translate
    /// `t_beta(L) = L + l*beta - ((L|beta) + |beta|^2 l / 2) delta`.
    pub fn act(&self, weight: &LevelWeight) -> Result<LevelWeight> {
        if weight.rank() != self.rank() {
            return Err(Error::LengthMismatch {
                left: self.rank(),
                right: weight.rank(),
            });
        }
        let level = weight.level();
        let moved = self.tau.act(weight.finite());
        let pair = dot(&moved, &self.beta)?;
        let half_norm = self.beta.norm2() / 2;
        let finite = &moved + &self.beta.scale(level);
        Ok(LevelWeight::new(
            level,
            finite,
            weight.delta_coeff() - pair - half_norm * level,
        ))
    }

    /// `w ∘ r_i`. For `i = 0` uses `r_0 = t_theta r_theta`, so
    /// `w r_0 = t_{beta + tau(theta)} (tau r_theta)`.
    pub fn compose_reflection(&self, i: usize) -> Result<Self> {
        let n = self.rank();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        if i == 0 {
            let r_theta = Permutation::transposition(n, 0, n - 1);
            let beta = &self.beta + &self.tau.act(&FiniteWeight::theta(n));
            Ok(AffineWeylElement {
                beta,
                tau: self.tau.compose(&r_theta),
            })
        } else {
            let s = Permutation::transposition(n, i - 1, i);
            Ok(AffineWeylElement {
                beta: self.beta.clone(),
                tau: self.tau.compose(&s),
            })
        }
    }
}

impl fmt::Display for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{} {}", self.beta, self.tau)
    }
}
