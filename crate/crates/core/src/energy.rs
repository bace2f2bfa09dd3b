//! Combinatorial R-matrices `B_2 ⊗ B_1 -> B_1 ⊗ B_2`, local energies and the
//! energy function on paths.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::crystal::Crystal;
use crate::error::{Error, Result};
use crate::path::PathSpace;
use crate::tableau::RectShape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableKey {
    pub rank: usize,
    pub left: RectShape,
    pub right: RectShape,
}

impl fmt::Display for TableKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R_n{}_{}x{}_{}x{}",
            self.rank, self.left.rows, self.left.cols, self.right.rows, self.right.cols
        )
    }
}

/// The local isomorphism and local energy on `B_2 ⊗ B_1`.
///
/// Entries are indexed by `x2 * |B_1| + x1`. The energy is normalized to
/// vanish on `u_2 ⊗ u_1` (classical highest weight elements).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalIsoTable {
    key: TableKey,
    right_len: usize,
    image: Vec<(u32, u32)>,
    energy: Vec<i64>,
}

fn pair_space(left: &Arc<Crystal>, right: &Arc<Crystal>) -> Result<PathSpace> {
    PathSpace::from_crystals(left.rank(), vec![left.clone(), right.clone()])
}

/// Classical highest weight elements and their weights.
fn highest_elements(space: &PathSpace) -> Vec<(Vec<usize>, Vec<i64>)> {
    space
        .paths()
        .filter(|p| space.is_classically_highest(p))
        .map(|p| {
            let w = space.weight(&p);
            (p, w)
        })
        .collect()
}

impl LocalIsoTable {
    pub fn build(left: &Arc<Crystal>, right: &Arc<Crystal>) -> Result<Self> {
        let n = left.rank();
        let key = TableKey {
            rank: n,
            left: left.shape(),
            right: right.shape(),
        };
        let domain = pair_space(left, right)?;
        let codomain = pair_space(right, left)?;

        let mut targets: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (p, w) in highest_elements(&codomain) {
            if targets.insert(w, p).is_some() {
                return Err(Error::AmbiguousComponents);
            }
        }
        let mut seen = BTreeMap::new();
        for (_, w) in highest_elements(&domain) {
            if seen.insert(w, ()).is_some() {
                return Err(Error::AmbiguousComponents);
            }
        }
        if seen.len() != targets.len() {
            return Err(Error::AmbiguousComponents);
        }

        let size = left.len() * right.len();
        let mut image = vec![(0u32, 0u32); size];
        for x in domain.paths() {
            let mut z = x.clone();
            let mut word = Vec::new();
            'up: loop {
                for i in 1..n {
                    if let Some(y) = domain.e(i, &z) {
                        z = y;
                        word.push(i);
                        continue 'up;
                    }
                }
                break;
            }
            let mut y = targets
                .get(&domain.weight(&z))
                .ok_or(Error::AmbiguousComponents)?
                .clone();
            for &i in word.iter().rev() {
                y = codomain.f(i, &y).ok_or(Error::AmbiguousComponents)?;
            }
            image[x[0] * right.len() + x[1]] = (y[0] as u32, y[1] as u32);
        }

        let energy = local_energy_bfs(&domain, &codomain, &image, right.len())?;
        Ok(LocalIsoTable {
            key,
            right_len: right.len(),
            image,
            energy,
        })
    }

    /// Rebuild from stored parts; checks that the map is a bijection.
    pub fn from_parts(
        key: TableKey,
        left_len: usize,
        right_len: usize,
        image: Vec<(u32, u32)>,
        energy: Vec<i64>,
    ) -> Result<Self> {
        let size = left_len * right_len;
        if image.len() != size || energy.len() != size {
            return Err(Error::InconsistentEnergy(
                "table size does not match crystals".into(),
            ));
        }
        let mut hit = vec![false; size];
        for &(y1, y2) in &image {
            let (y1, y2) = (y1 as usize, y2 as usize);
            if y1 >= right_len || y2 >= left_len || hit[y1 * left_len + y2] {
                return Err(Error::InconsistentEnergy(
                    "stored map is not a bijection".into(),
                ));
            }
            hit[y1 * left_len + y2] = true;
        }
        Ok(LocalIsoTable {
            key,
            right_len,
            image,
            energy,
        })
    }

    pub fn key(&self) -> TableKey {
        self.key
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `R(x2 ⊗ x1) = (y1, y2)`.
    pub fn image(&self, x2: usize, x1: usize) -> (usize, usize) {
        let (a, b) = self.image[x2 * self.right_len + x1];
        (a as usize, b as usize)
    }

    /// `H(x2 ⊗ x1)`.
    pub fn energy(&self, x2: usize, x1: usize) -> i64 {
        self.energy[x2 * self.right_len + x1]
    }

    /// `(x2, x1, y1, y2, H)` for every element of the domain.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, usize, i64)> + '_ {
        self.image
            .iter()
            .zip(&self.energy)
            .enumerate()
            .map(move |(k, (&(y1, y2), &h))| {
                (
                    k / self.right_len,
                    k % self.right_len,
                    y1 as usize,
                    y2 as usize,
                    h,
                )
            })
    }

    /// Check that the map commutes with every `e_i` and `f_i`, `i` in `I`.
    pub fn check_morphism(&self, left: &Arc<Crystal>, right: &Arc<Crystal>) -> Result<()> {
        let domain = pair_space(left, right)?;
        let codomain = pair_space(right, left)?;
        let map = |p: &[usize]| -> Vec<usize> {
            let (a, b) = self.image(p[0], p[1]);
            vec![a, b]
        };
        for x in domain.paths() {
            let rx = map(&x);
            for i in 0..left.rank() {
                if domain.e(i, &x).map(|y| map(&y)) != codomain.e(i, &rx)
                    || domain.f(i, &x).map(|y| map(&y)) != codomain.f(i, &rx)
                {
                    return Err(Error::InconsistentEnergy(alloc::format!(
                        "{} does not commute with colour {i}",
                        self.key
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The change of `H` along `x -> e_0 x`: `-1` if `e_0` acts on the left factor
/// of both `x` and `R(x)`, `+1` if on the right factor of both, else `0`.
fn zero_edge_step(domain: &PathSpace, codomain: &PathSpace, x: &[usize], rx: &[usize]) -> i64 {
    match (domain.e_position(0, x), codomain.e_position(0, rx)) {
        (Some(0), Some(0)) => -1,
        (Some(1), Some(1)) => 1,
        _ => 0,
    }
}

fn local_energy_bfs(
    domain: &PathSpace,
    codomain: &PathSpace,
    image: &[(u32, u32)],
    right_len: usize,
) -> Result<Vec<i64>> {
    let n = domain.rank();
    let idx = |p: &[usize]| p[0] * right_len + p[1];
    let rimg = |p: &[usize]| {
        let (a, b) = image[idx(p)];
        [a as usize, b as usize]
    };
    let mut h: Vec<Option<i64>> = vec![None; image.len()];
    let start = vec![domain.factor(0).highest(), domain.factor(1).highest()];
    h[idx(&start)] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let hx = h[idx(&x)].expect("visited");
        for i in 0..n {
            let mut moves: Vec<(Vec<usize>, i64)> = Vec::new();
            if let Some(y) = domain.e(i, &x) {
                let d = if i == 0 {
                    zero_edge_step(domain, codomain, &x, &rimg(&x))
                } else {
                    0
                };
                moves.push((y, hx + d));
            }
            if let Some(y) = domain.f(i, &x) {
                let d = if i == 0 {
                    zero_edge_step(domain, codomain, &y, &rimg(&y))
                } else {
                    0
                };
                moves.push((y, hx - d));
            }
            for (y, hy) in moves {
                match h[idx(&y)] {
                    None => {
                        h[idx(&y)] = Some(hy);
                        queue.push_back(y);
                    }
                    Some(old) if old != hy => {
                        return Err(Error::InconsistentEnergy(alloc::format!(
                            "two values {old} and {hy} on one element"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    h.into_iter()
        .map(|v| v.ok_or_else(|| Error::InconsistentEnergy("tensor product not connected".into())))
        .collect()
}

/// Local isomorphism tables keyed by `(n, left shape, right shape)`.
#[derive(Debug, Clone, Default)]
pub struct TableStore {
    tables: BTreeMap<TableKey, Arc<LocalIsoTable>>,
}

impl TableStore {
    pub fn new() -> Self {
        TableStore::default()
    }

    pub fn get(&self, key: &TableKey) -> Option<Arc<LocalIsoTable>> {
        self.tables.get(key).cloned()
    }

    /// First insertion wins; a second insertion must be identical.
    pub fn insert(&mut self, table: LocalIsoTable) -> Result<Arc<LocalIsoTable>> {
        if let Some(old) = self.tables.get(&table.key) {
            if **old != table {
                return Err(Error::InconsistentEnergy(alloc::format!(
                    "conflicting tables for {}",
                    table.key
                )));
            }
            return Ok(old.clone());
        }
        let t = Arc::new(table);
        self.tables.insert(t.key, t.clone());
        Ok(t)
    }

    pub fn ensure(
        &mut self,
        left: &Arc<Crystal>,
        right: &Arc<Crystal>,
    ) -> Result<Arc<LocalIsoTable>> {
        let key = TableKey {
            rank: left.rank(),
            left: left.shape(),
            right: right.shape(),
        };
        if let Some(t) = self.get(&key) {
            return Ok(t);
        }
        self.insert(LocalIsoTable::build(left, right)?)
    }

    pub fn keys(&self) -> impl Iterator<Item = &TableKey> {
        self.tables.keys()
    }

    pub fn tables(&self) -> impl Iterator<Item = &Arc<LocalIsoTable>> {
        self.tables.values()
    }
}

/// The energy `E_B` of a path space: for each pair `j > i` the factor `b_j`
/// is carried next to `b_i` by local isomorphisms and `H_{j,i}` is summed.
#[derive(Debug, Clone)]
pub struct EnergyFunction {
    space: PathSpace,
    // pair[a][b - a - 1] for left position a < right position b
    pair: Vec<Vec<Arc<LocalIsoTable>>>,
}

impl EnergyFunction {
    pub fn new(space: PathSpace) -> Result<Self> {
        EnergyFunction::with_store(space, &mut TableStore::new())
    }

    pub fn with_store(space: PathSpace, store: &mut TableStore) -> Result<Self> {
        let l = space.len();
        let mut pair = Vec::with_capacity(l);
        for a in 0..l {
            let mut row = Vec::new();
            for b in a + 1..l {
                row.push(store.ensure(space.factor(a), space.factor(b))?);
            }
            pair.push(row);
        }
        Ok(EnergyFunction { space, pair })
    }

    pub fn space(&self) -> &PathSpace {
        &self.space
    }

    pub fn table(&self, a: usize, b: usize) -> &LocalIsoTable {
        &self.pair[a][b - a - 1]
    }

    pub fn energy(&self, path: &[usize]) -> i64 {
        let l = path.len();
        let mut total = 0;
        for a in 0..l {
            let mut cur = path[a];
            for (b, &x) in path.iter().enumerate().skip(a + 1) {
                let t = self.table(a, b);
                total += t.energy(cur, x);
                if b + 1 < l {
                    cur = t.image(cur, x).1;
                }
            }
        }
        total
    }

    /// Swap the factors at positions `k, k+1` by the local isomorphism.
    pub fn swap_adjacent(&self, path: &[usize], k: usize) -> Vec<usize> {
        let t = self.table(k, k + 1);
        let (y1, y2) = t.image(path[k], path[k + 1]);
        let mut out = path.to_vec();
        out[k] = y1;
        out[k + 1] = y2;
        out
    }
}

/// Energy with a ground-state factor `b_0 ∈ B_0` appended on the right:
/// `E(b) = E_{B ⊗ B_0}(b ⊗ b_0)`.
#[derive(Debug, Clone)]
pub struct AugmentedEnergy {
    inner: EnergyFunction,
    ground: usize,
}

impl AugmentedEnergy {
    /// `b_0` is the unique element of `B^{b0_shape}` with `phi(b_0) = Lambda`.
    pub fn new(
        space: &PathSpace,
        lambda_coeffs: &[i64],
        b0_shape: RectShape,
        store: &mut TableStore,
    ) -> Result<Self> {
        let level: i64 = lambda_coeffs.iter().sum();
        if b0_shape.cols as i64 != level {
            return Err(Error::GroundState(alloc::format!(
                "B_0 = B^{b0_shape} is not of level {level}"
            )));
        }
        let b0 = Arc::new(Crystal::new(space.rank(), b0_shape)?);
        let found = b0.with_phi(lambda_coeffs);
        if found.len() != 1 {
            return Err(Error::GroundState(alloc::format!(
                "{} elements of B^{b0_shape} with phi = Lambda",
                found.len()
            )));
        }
        let mut factors = space.factors().to_vec();
        factors.push(b0);
        let inner =
            EnergyFunction::with_store(PathSpace::from_crystals(space.rank(), factors)?, store)?;
        Ok(AugmentedEnergy {
            inner,
            ground: found[0],
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn ground_crystal(&self) -> &Arc<Crystal> {
        let s = self.inner.space();
        s.factor(s.len() - 1)
    }

    pub fn extended(&self) -> &EnergyFunction {
        &self.inner
    }

    pub fn energy(&self, path: &[usize]) -> i64 {
        let mut full = Vec::with_capacity(path.len() + 1);
        full.extend_from_slice(path);
        full.push(self.ground);
        self.inner.energy(&full)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn crystal(n: usize, r: usize, c: usize) -> Arc<Crystal> {
        Arc::new(Crystal::new(n, RectShape::new(r, c)).unwrap())
    }

    #[test]
    fn equal_shapes_give_identity() {
        for (n, r, c) in [(2, 1, 1), (3, 1, 2), (3, 2, 1), (4, 2, 2)] {
            let b = crystal(n, r, c);
            let t = LocalIsoTable::build(&b, &b).unwrap();
            for (x2, x1, y1, y2, _) in t.entries() {
                assert_eq!((y1, y2), (x2, x1));
            }
        }
    }

    #[test]
    fn two_boxes_rank2_energy() {
        let b = crystal(2, 1, 1);
        let t = LocalIsoTable::build(&b, &b).unwrap();
        let ix = |s: &str| b.index_of(&s.parse().unwrap()).unwrap();
        let (one, two) = (ix("1"), ix("2"));
        assert_eq!(t.energy(one, one), 0);
        assert_eq!(t.energy(one, two), 0);
        assert_eq!(t.energy(two, two), 0);
        // e_0 on [2]⊗[1] acts on the right factor in both images and lands
        // on [2]⊗[2], which raises H by one
        assert_eq!(t.energy(two, one), -1);
    }

    #[test]
    fn row_two_times_box_rank2() {
        let b2 = crystal(2, 1, 2);
        let b1 = crystal(2, 1, 1);
        let t = LocalIsoTable::build(&b2, &b1).unwrap();
        assert_eq!(t.len(), 6);
        t.check_morphism(&b2, &b1).unwrap();
        let mut seen: Vec<_> = t.entries().map(|(_, _, y1, y2, _)| (y1, y2)).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6);
        let rendered: Vec<_> = t
            .entries()
            .map(|(x2, x1, y1, y2, h)| {
                alloc::format!(
                    "{}|{} -> {}|{} H={h}",
                    b2.tableau(x2),
                    b1.tableau(x1),
                    b1.tableau(y1),
                    b2.tableau(y2)
                )
            })
            .collect();
        assert_eq!(
            rendered,
            [
                "1,1|1 -> 1|1,1 H=0",
                "1,1|2 -> 1|1,2 H=0",
                "1,2|1 -> 2|1,1 H=-1",
                "1,2|2 -> 1|2,2 H=0",
                "2,2|1 -> 2|1,2 H=-1",
                "2,2|2 -> 2|2,2 H=0",
            ]
            .map(|s| s.to_string())
        );
    }

    #[test]
    fn store_is_first_write_wins() {
        let b = crystal(2, 1, 1);
        let mut store = TableStore::new();
        let a = store.ensure(&b, &b).unwrap();
        let again = store.insert(LocalIsoTable::build(&b, &b).unwrap()).unwrap();
        assert!(Arc::ptr_eq(&a, &again));
        let mut other = LocalIsoTable::build(&b, &b).unwrap();
        other.energy[0] = 7;
        assert!(store.insert(other).is_err());
    }

    #[test]
    fn single_factor_energy_is_zero() {
        let sp = PathSpace::new(3, &[RectShape::new(2, 1)]).unwrap();
        let e = EnergyFunction::new(sp.clone()).unwrap();
        assert!(sp.paths().all(|p| e.energy(&p) == 0));
    }

    #[test]
    fn ground_state_errors() {
        let sp = PathSpace::new(2, &[RectShape::new(1, 1)]).unwrap();
        let mut store = TableStore::new();
        assert!(matches!(
            AugmentedEnergy::new(&sp, &[2, 0], RectShape::new(1, 1), &mut store),
            Err(Error::GroundState(_))
        ));
        let a = AugmentedEnergy::new(&sp, &[1, 0], RectShape::new(1, 1), &mut store).unwrap();
        assert_eq!(a.ground_crystal().tableau(a.ground()).to_string(), "2");
        // empty path: no pairs at all
        let empty = PathSpace::new(2, &[]).unwrap();
        let a = AugmentedEnergy::new(&empty, &[1, 0], RectShape::new(1, 1), &mut store).unwrap();
        assert_eq!(a.energy(&[]), 0);
    }
}
