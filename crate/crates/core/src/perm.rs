//! Permutations of `{1..n}` acting on coordinates of `Z^n`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::weight::FiniteWeight;

/// Stored 0-based: `images[i]` is the image of `i`.
///
/// The action on vectors moves coordinates: `(tau x)[tau(i)] = x[i]`, so
/// `(sigma * tau) x = sigma (tau x)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Parse(alloc::format!(
                    "not a permutation: {images:?}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Swap of the 0-based positions `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `(-1)^{inversions}`.
    pub fn sign(&self) -> i64 {
        let mut inv = 0usize;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.images[i] > self.images[j] {
                    inv += 1;
                }
            }
        }
        if inv.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn act(&self, x: &FiniteWeight) -> FiniteWeight {
        let c = x.coords();
        let mut out = alloc::vec![0; c.len()];
        for (i, &v) in c.iter().enumerate() {
            out[self.images[i]] = v;
        }
        FiniteWeight::new(out)
    }

    /// `self^{-1} x`, i.e. `out[i] = x[self(i)]`.
    pub fn act_inverse(&self, x: &FiniteWeight) -> FiniteWeight {
        let c = x.coords();
        FiniteWeight::new(self.images.iter().map(|&j| c[j]).collect())
    }

    /// All of `S_n` in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// One-line notation, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}
