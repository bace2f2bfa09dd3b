//! Affine crystals of rectangular tableaux in type `A_{n-1}^{(1)}`.
//!
//! The crate builds the crystals `B^{k,l}` of column-strict rectangular
//! tableaux with their classical and affine Kashiwara operators, forms
//! tensor products (paths), computes combinatorial R-matrices and energy
//! functions, and evaluates energy-graded path counts (generalized and
//! level-restricted Kostka polynomials) together with the alternating
//! sums over the affine Weyl group that express them.
//!
//! Everything is exact integer arithmetic. The crate is `no_std` and only
//! needs `alloc`; file formats, caching and the command line live in the
//! companion `affine-paths-cli` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bosonic;
pub mod crystal;
pub mod energy;
mod error;
pub mod kostka;
pub mod laurent;
pub mod path;
pub mod perm;
pub mod spec;
pub mod straighten;
pub mod tableau;
pub mod weight;
pub mod weyl;

pub use crate::crystal::Crystal;
pub use crate::energy::{LocalIsoTable, TableKey, TableStore};

pub use crate::error::{Error, Result};
pub use crate::laurent::LaurentPoly;
pub use crate::path::{Path, PathSpace};
pub use crate::perm::Permutation;
pub use crate::spec::CrystalSpec;

pub use crate::tableau::{RectShape, Tableau};
pub use crate::weight::{FiniteWeight, LevelWeight};
pub use crate::weyl::AffineWeylElement;
