//! Paths `b_L ⊗ ... ⊗ b_1` and the tensor product rule.
//!
//! Factors are stored left to right, so index `0` holds `b_L` and the last
//! index holds `b_1`. For `B_2 ⊗ B_1`,
//!
//! ```text
//! phi_i(b2 ⊗ b1) = phi_i(b2) + max(0, phi_i(b1) - eps_i(b2))
//! eps_i(b2 ⊗ b1) = eps_i(b1) + max(0, eps_i(b2) - phi_i(b1))
//! ```
//!
//! and `f_i` acts on `b1` iff `phi_i(b1) > eps_i(b2)`, `e_i` acts on `b1`
//! iff `phi_i(b1) >= eps_i(b2)`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::crystal::Crystal;
use crate::error::{Error, Result};
use crate::tableau::{join_tableaux, RectShape, Tableau};
use crate::weight::{FiniteWeight, LevelWeight};

/// Statistics of one colour on a tensor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorStats {
    pub epsilon: usize,
    pub phi: usize,
    /// Factor that `e_i` acts on, if `epsilon > 0`.
    pub e_at: Option<usize>,
    /// Factor that `f_i` acts on, if `phi > 0`.
    pub f_at: Option<usize>,
}

/// Fold `(epsilon_i, phi_i)` of factors listed left to right.
///
/// Each factor behaves like the word `i^phi (i+1)^eps`; an `i + 1` cancels
/// against a later `i`.
pub fn tensor_stats(factors: impl IntoIterator<Item = (usize, usize)>) -> TensorStats {
    let mut open: Vec<(usize, usize)> = Vec::new();
    let mut phi = 0;
    let mut f_at = None;
    for (k, (eps_k, phi_k)) in factors.into_iter().enumerate() {
        let mut lower = phi_k;
        while lower > 0 {
            let Some(top) = open.last_mut() else { break };
            let m = lower.min(top.1);
            top.1 -= m;
            lower -= m;
            if top.1 == 0 {
                open.pop();
            }
        }
        if lower > 0 {
            phi += lower;
            f_at = Some(k);
        }
        if eps_k > 0 {
            open.push((k, eps_k));
        }
    }
    TensorStats {
        epsilon: open.iter().map(|x| x.1).sum(),
        phi,
        e_at: open.first().map(|x| x.0),
        f_at,
    }
}

/// The two-factor rule, literally: `(eps, phi)` of `b2 ⊗ b1` from
/// `(eps(b2), phi(b2))` and `(eps(b1), phi(b1))`.
pub fn pair_stats(left: (usize, usize), right: (usize, usize)) -> (usize, usize) {
    let (eps2, phi2) = left;
    let (eps1, phi1) = right;
    let phi = phi2 + phi1.saturating_sub(eps2);
    let eps = eps1 + eps2.saturating_sub(phi1);
    (eps, phi)
}

/// Formal highest weight vector `u_Lambda`: `eps_i = 0`,
/// `phi_i = <alpha_i^vee, Lambda>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighestVector {
    weight: LevelWeight,
}

impl HighestVector {
    pub fn new(weight: LevelWeight) -> Result<Self> {
        weight.ensure_dominant()?;
        Ok(HighestVector { weight })
    }

    pub fn weight(&self) -> &LevelWeight {
        &self.weight
    }

    pub fn epsilon(&self, _i: usize) -> usize {
        0
    }

    pub fn phi(&self, i: usize) -> usize {
        self.weight.pairing(i) as usize
    }
}

/// A path as tableaux, left factor first. Text form joins factors with `|`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Path(pub Vec<Tableau>);

impl Path {
    pub fn factors(&self) -> &[Tableau] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_tableaux(&self.0))
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Path::default());
        }
        s.split('|')
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(Path)
    }
}

/// Shared crystals for each rectangle, built once per rank.
#[derive(Debug, Clone, Default)]
pub struct CrystalCache {
    rank: usize,
    built: Vec<Arc<Crystal>>,
}

impl CrystalCache {
    pub fn new(rank: usize) -> Self {
        CrystalCache {
            rank,
            built: Vec::new(),
        }
    }

    pub fn get(&mut self, shape: RectShape) -> Result<Arc<Crystal>> {
        if let Some(c) = self.built.iter().find(|c| c.shape() == shape) {
            return Ok(c.clone());
        }
        let c = Arc::new(Crystal::new(self.rank, shape)?);
        self.built.push(c.clone());
        Ok(c)
    }
}

/// The tensor product `B_L ⊗ ... ⊗ B_1` of rectangle crystals.
#[derive(Debug, Clone)]
pub struct PathSpace {
    rank: usize,
    factors: Vec<Arc<Crystal>>,
}

impl PathSpace {
    pub fn new(rank: usize, shapes: &[RectShape]) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidRank(rank));
        }
        let mut cache = CrystalCache::new(rank);
        let factors = shapes
            .iter()
            .map(|&s| cache.get(s))
            .collect::<Result<_>>()?;
        Ok(PathSpace { rank, factors })
    }

    pub fn from_crystals(rank: usize, factors: Vec<Arc<Crystal>>) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidRank(rank));
        }
        if factors.iter().any(|c| c.rank() != rank) {
            return Err(Error::InvalidRank(rank));
        }
        Ok(PathSpace { rank, factors })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of tensor factors `L`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, k: usize) -> &Arc<Crystal> {
        &self.factors[k]
    }

    pub fn factors(&self) -> &[Arc<Crystal>] {
        &self.factors
    }

    pub fn shapes(&self) -> Vec<RectShape> {
        self.factors.iter().map(|c| c.shape()).collect()
    }

    /// Number of paths, `prod |B_j|`.
    pub fn cardinality(&self) -> usize {
        self.factors.iter().map(|c| c.len()).product()
    }

    /// Total number of boxes `sum k_j l_j`.
    pub fn boxes(&self) -> usize {
        self.factors.iter().map(|c| c.shape().size()).sum()
    }

    /// Largest number of columns among the factors.
    pub fn max_cols(&self) -> usize {
        self.factors
            .iter()
            .map(|c| c.shape().cols)
            .max()
            .unwrap_or(0)
    }

    pub fn stats(&self, i: usize, path: &[usize]) -> TensorStats {
        tensor_stats(
            self.factors
                .iter()
                .zip(path)
                .map(|(c, &b)| (c.epsilon(i, b), c.phi(i, b))),
        )
    }

    pub fn epsilon(&self, i: usize, path: &[usize]) -> usize {
        self.stats(i, path).epsilon
    }

    pub fn phi(&self, i: usize, path: &[usize]) -> usize {
        self.stats(i, path).phi
    }

    pub fn e(&self, i: usize, path: &[usize]) -> Option<Vec<usize>> {
        let k = self.stats(i, path).e_at?;
        let mut out = path.to_vec();
        out[k] = self.factors[k]
            .e(i, path[k])
            .expect("acting factor admits e_i");
        Some(out)
    }

    pub fn f(&self, i: usize, path: &[usize]) -> Option<Vec<usize>> {
        let k = self.stats(i, path).f_at?;
        let mut out = path.to_vec();
        out[k] = self.factors[k]
            .f(i, path[k])
            .expect("acting factor admits f_i");
        Some(out)
    }

    /// Factor position `e_i` acts on.
    pub fn e_position(&self, i: usize, path: &[usize]) -> Option<usize> {
        self.stats(i, path).e_at
    }

    /// Crystal reflection `s_i` on paths.
    pub fn s(&self, i: usize, path: &[usize]) -> Vec<usize> {
        let st = self.stats(i, path);
        let mut x = path.to_vec();
        if st.phi > st.epsilon {
            for _ in 0..st.phi - st.epsilon {
                x = self.f(i, &x).expect("string length");
            }
        } else {
            for _ in 0..st.epsilon - st.phi {
                x = self.e(i, &x).expect("string length");
            }
        }
        x
    }

    /// Content vector of the whole path.
    pub fn weight(&self, path: &[usize]) -> Vec<i64> {
        let mut w = vec![0; self.rank];
        for (c, &b) in self.factors.iter().zip(path) {
            for (x, y) in w.iter_mut().zip(c.weight(b)) {
                *x += y;
            }
        }
        w
    }

    /// `<alpha_i^vee, wt(path)>`, including `i = 0`.
    pub fn pairing(&self, i: usize, path: &[usize]) -> i64 {
        self.factors
            .iter()
            .zip(path)
            .map(|(c, &b)| c.pairing(i, b))
            .sum()
    }

    /// `e_i` undefined for every classical `i`.
    pub fn is_classically_highest(&self, path: &[usize]) -> bool {
        (1..self.rank).all(|i| self.epsilon(i, path) == 0)
    }

    /// `eps_i(b ⊗ u)` with `u` the formal highest weight vector on the right.
    pub fn epsilon_with(&self, i: usize, path: &[usize], u: &HighestVector) -> usize {
        let factors = self
            .factors
            .iter()
            .zip(path)
            .map(|(c, &b)| (c.epsilon(i, b), c.phi(i, b)));
        tensor_stats(factors.chain(core::iter::once((u.epsilon(i), u.phi(i))))).epsilon
    }

    pub fn check_level(&self, lambda: &LevelWeight) -> Result<()> {
        lambda.ensure_dominant()?;
        if let Some(c) = self
            .factors
            .iter()
            .find(|c| c.shape().cols as i64 > lambda.level())
        {
            return Err(Error::LevelViolation {
                cols: c.shape().cols,
                level: lambda.level(),
            });
        }
        Ok(())
    }

    /// Whether `b ⊗ u_Lambda` is an affine highest weight vector.
    pub fn is_level_restricted(&self, path: &[usize], lambda: &LevelWeight) -> Result<bool> {
        self.check_level(lambda)?;
        let u = HighestVector::new(lambda.clone())?;
        Ok((0..self.rank).all(|i| self.epsilon_with(i, path, &u) == 0))
    }

    /// `Lambda' = Lambda + cl(wt(b))` with zero `delta` coefficient.
    pub fn weight_out(&self, path: &[usize], lambda: &LevelWeight) -> LevelWeight {
        let w = FiniteWeight::new(self.weight(path));
        LevelWeight::new(lambda.level(), lambda.finite() + &w, 0)
    }

    /// Lazily enumerate all paths, last factor varying fastest.
    pub fn paths(&self) -> PathIter {
        PathIter {
            sizes: self.factors.iter().map(|c| c.len()).collect(),
            current: if self.factors.iter().any(|c| c.is_empty()) {
                None
            } else {
                Some(vec![0; self.factors.len()])
            },
        }
    }

    /// Classically restricted paths of content `lambda` (padded with zeros).
    pub fn classically_restricted(&self, lambda: &[i64]) -> Result<Vec<Vec<usize>>> {
        let target = self.pad(lambda)?;
        Ok(self
            .paths()
            .filter(|p| self.weight(p) == target && self.is_classically_highest(p))
            .collect())
    }

    pub(crate) fn pad(&self, lambda: &[i64]) -> Result<Vec<i64>> {
        if lambda.len() > self.rank {
            return Err(Error::LengthMismatch {
                left: self.rank,
                right: lambda.len(),
            });
        }
        let mut v = lambda.to_vec();
        v.resize(self.rank, 0);
        Ok(v)
    }

    pub fn encode(&self, path: &Path) -> Result<Vec<usize>> {
        if path.len() != self.len() {
            return Err(Error::Parse(alloc::format!(
                "path has {} factors, expected {}",
                path.len(),
                self.len()
            )));
        }
        self.factors
            .iter()
            .zip(path.factors())
            .map(|(c, t)| {
                c.index_of(t).ok_or_else(|| {
                    Error::InvalidTableau(alloc::format!(
                        "{t} is not an element of B^{}",
                        c.shape()
                    ))
                })
            })
            .collect()
    }

    pub fn decode(&self, path: &[usize]) -> Path {
        Path(
            self.factors
                .iter()
                .zip(path)
                .map(|(c, &b)| c.tableau(b).clone())
                .collect(),
        )
    }

    pub fn render(&self, path: &[usize]) -> String {
        alloc::format!("{}", self.decode(path))
    }
}

/// Odometer over all paths of a [`PathSpace`].
#[derive(Debug, Clone)]
pub struct PathIter {
    sizes: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Iterator for PathIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.as_mut()?;
        let out = cur.clone();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < self.sizes[k] {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn boxes(n: usize, l: usize) -> PathSpace {
        PathSpace::new(n, &vec![RectShape::new(1, 1); l]).unwrap()
    }

    fn p(space: &PathSpace, s: &str) -> Vec<usize> {
        space.encode(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn two_boxes_rank2() {
        let sp = boxes(2, 2);
        let b = p(&sp, "1|1");
        assert_eq!((sp.phi(1, &b), sp.epsilon(1, &b)), (2, 0));
        assert_eq!(sp.render(&sp.f(1, &b).unwrap()), "1|2");
        assert!(sp.is_classically_highest(&p(&sp, "2|1")));
        assert!(!sp.is_classically_highest(&p(&sp, "1|2")));
        assert!(sp.is_classically_highest(&b));
    }

    #[test]
    fn empty_path() {
        let sp = boxes(3, 0);
        assert_eq!(sp.paths().count(), 1);
        let l0 = LevelWeight::multiple_of_lambda0(3, 1);
        assert!(sp.is_level_restricted(&[], &l0).unwrap());
        assert_eq!(sp.weight_out(&[], &l0), l0);
        assert_eq!("".parse::<Path>().unwrap(), Path::default());
    }

    #[test]
    fn level_one_restricted_rank2() {
        let sp = boxes(2, 2);
        let l0 = LevelWeight::multiple_of_lambda0(2, 1);
        let restricted: Vec<_> = sp
            .paths()
            .filter(|b| sp.is_level_restricted(b, &l0).unwrap() && sp.weight_out(b, &l0) == l0)
            .collect();
        assert_eq!(restricted.len(), 1);
        assert_eq!(sp.render(&restricted[0]), "2|1");
    }

    #[test]
    fn level_checks() {
        let sp = PathSpace::new(3, &[RectShape::new(1, 2)]).unwrap();
        let l0 = LevelWeight::multiple_of_lambda0(3, 1);
        assert_eq!(
            sp.is_level_restricted(&[0], &l0),
            Err(Error::LevelViolation { cols: 2, level: 1 })
        );
        let bad = LevelWeight::new(1, FiniteWeight::new(vec![0, 2, 0]), 0);
        assert!(matches!(
            sp.is_level_restricted(&[0], &bad),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn classically_restricted_examples() {
        let sp = boxes(2, 2);
        assert_eq!(sp.classically_restricted(&[2]).unwrap().len(), 1);
        assert_eq!(sp.classically_restricted(&[1, 1]).unwrap().len(), 1);
        assert!(sp.classically_restricted(&[0, 2]).unwrap().is_empty());
    }

    #[test]
    fn path_text_round_trip() {
        let sp = PathSpace::new(3, &[RectShape::new(2, 1), RectShape::new(1, 2)]).unwrap();
        for b in sp.paths() {
            let s = sp.render(&b);
            let parsed: Path = s.parse().unwrap();
            assert_eq!(parsed.to_string(), s);
            assert_eq!(sp.encode(&parsed).unwrap(), b);
        }
        assert_eq!(sp.paths().count(), sp.cardinality());
    }
}
