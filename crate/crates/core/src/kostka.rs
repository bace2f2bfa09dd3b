//! Energy-graded generating functions of classically restricted and
//! level-restricted paths, and the classical tensor-product multiplicities
//! they specialize to at `q = 1`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::crystal::Crystal;
use crate::energy::{AugmentedEnergy, EnergyFunction, TableStore};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::path::PathSpace;
use crate::spec::CrystalSpec;

/// The energy used to grade paths of a spec.
#[derive(Debug, Clone)]
pub enum Grading {
    Plain(EnergyFunction),
    Augmented(AugmentedEnergy),
}

impl Grading {
    pub fn for_spec(spec: &CrystalSpec, store: &mut TableStore) -> Result<Self> {
        spec.validate()?;
        let space = spec.space()?;
        if spec.uses_plain_energy() {
            Ok(Grading::Plain(EnergyFunction::with_store(space, store)?))
        } else {
            let coeffs = spec.resolved_lambda().fundamental_coeffs();
            Ok(Grading::Augmented(AugmentedEnergy::new(
                &space,
                &coeffs,
                spec.resolved_b0(),
                store,
            )?))
        }
    }

    pub fn energy(&self, path: &[usize]) -> i64 {
        match self {
            Grading::Plain(e) => e.energy(path),
            Grading::Augmented(e) => e.energy(path),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KostkaResult {
    pub polynomial: LaurentPoly,
    pub path_count: usize,
}

fn graded_sum<'a>(
    paths: impl Iterator<Item = &'a Vec<usize>>,
    energy: impl Fn(&[usize]) -> i64,
) -> KostkaResult {
    let mut polynomial = LaurentPoly::zero();
    let mut path_count = 0;
    for p in paths {
        polynomial.add_term(1, energy(p));
        path_count += 1;
    }
    KostkaResult {
        polynomial,
        path_count,
    }
}

fn check_partition(lambda: &[i64]) -> Result<()> {
    if lambda.windows(2).any(|w| w[0] < w[1]) || lambda.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(alloc::format!(
            "{lambda:?} is not a partition"
        )));
    }
    Ok(())
}

/// `sum q^{E_B(b)}` over classically restricted paths of weight `lambda`.
pub fn kostka_classical(
    spec: &CrystalSpec,
    lambda: &[i64],
    store: &mut TableStore,
) -> Result<KostkaResult> {
    spec.validate()?;
    check_partition(lambda)?;
    let space = spec.space()?;
    let paths = space.classically_restricted(lambda)?;
    let energy = EnergyFunction::with_store(space, store)?;
    Ok(graded_sum(paths.iter(), |p| energy.energy(p)))
}

/// Paths `b` with `b ⊗ u_Lambda` affine highest of classical weight `Lambda'`.
pub fn level_restricted_paths(spec: &CrystalSpec) -> Result<Vec<Vec<usize>>> {
    spec.validate()?;
    let space = spec.space()?;
    let lambda = spec.resolved_lambda();
    let target = spec.resolved_lambda_prime();
    space.check_level(&lambda)?;
    let mut out = Vec::new();
    for p in space.paths() {
        if space.is_level_restricted(&p, &lambda)?
            && space.weight_out(&p, &lambda).same_classical(&target)
        {
            out.push(p);
        }
    }
    Ok(out)
}

/// `sum q^{E(b)}` over level-restricted paths from `Lambda` to `Lambda'`.
pub fn kostka_level(spec: &CrystalSpec, store: &mut TableStore) -> Result<KostkaResult> {
    let paths = level_restricted_paths(spec)?;
    let grading = Grading::for_spec(spec, store)?;
    Ok(graded_sum(paths.iter(), |p| grading.energy(p)))
}

/// Whether `e_0` acting on the left of `b ⊗ b_0` implies `e_0` acting on the
/// left of its image `b_0' ⊗ b'`, for every factor `B_j` and `b ∈ B_j`.
/// `None` when the plain energy is used and no ground state is involved.
pub fn e0_hypothesis(spec: &CrystalSpec, store: &mut TableStore) -> Result<Option<bool>> {
    let Grading::Augmented(aug) = Grading::for_spec(spec, store)? else {
        return Ok(None);
    };
    let b0c = aug.ground_crystal().clone();
    let b0 = aug.ground();
    let space = spec.space()?;
    let mut seen = BTreeMap::new();
    for c in space.factors() {
        if seen.insert(c.shape(), ()).is_some() {
            continue;
        }
        let table = store.ensure(c, &b0c)?;
        let pair = PathSpace::from_crystals(spec.rank, vec![c.clone(), b0c.clone()])?;
        let swapped = PathSpace::from_crystals(spec.rank, vec![b0c.clone(), c.clone()])?;
        for b in 0..c.len() {
            if pair.e_position(0, &[b, b0]) == Some(0) {
                let (y0, y) = table.image(b, b0);
                if swapped.e_position(0, &[y0, y]) != Some(0) {
                    return Ok(Some(false));
                }
            }
        }
    }
    Ok(Some(true))
}

type Monomials = BTreeMap<Vec<u32>, BigInt>;

/// `s_lambda(x_1, ..., x_n)` expanded over Gelfand–Tsetlin patterns.
fn schur_monomials(lambda: &[u32], n: usize) -> Monomials {
    fn descend(row: &[u32], exps: &mut Vec<u32>, out: &mut Monomials) {
        let k = row.len();
        let total: u32 = row.iter().sum();
        if k == 1 {
            exps[0] = total;
            *out.entry(exps.clone()).or_insert_with(BigInt::zero) += 1;
            return;
        }
        let mut next = vec![0u32; k - 1];
        fn fill(
            j: usize,
            row: &[u32],
            next: &mut Vec<u32>,
            total: u32,
            exps: &mut Vec<u32>,
            out: &mut Monomials,
        ) {
            if j == next.len() {
                exps[row.len() - 1] = total - next.iter().sum::<u32>();
                descend(next, exps, out);
                return;
            }
            for v in row[j + 1]..=row[j] {
                next[j] = v;
                fill(j + 1, row, next, total, exps, out);
            }
        }
        fill(0, row, &mut next, total, exps, out);
    }
    let mut top = lambda.to_vec();
    top.resize(n, 0);
    let mut out = Monomials::new();
    descend(&top, &mut vec![0; n], &mut out);
    out
}

fn multiply(a: &Monomials, b: &Monomials) -> Monomials {
    let mut out = Monomials::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Multiplicity of the irreducible `V(lambda)` in `⊗_j V(l_j omega_{k_j})`,
/// by expanding the product of Schur polynomials into monomials and
/// repeatedly removing the lexicographically leading Schur term.
pub fn multiplicity_oracle(spec: &CrystalSpec, lambda: &[i64]) -> Result<BigInt> {
    if spec.rank < 2 {
        return Err(Error::InvalidRank(spec.rank));
    }
    for s in &spec.shapes {
        s.validate(spec.rank)?;
    }
    check_partition(lambda)?;
    if lambda.len() > spec.rank {
        return Err(Error::LengthMismatch {
            left: spec.rank,
            right: lambda.len(),
        });
    }
    let n = spec.rank;
    let mut target: Vec<u32> = lambda.iter().map(|&x| x as u32).collect();
    target.resize(n, 0);
    if target.iter().map(|&x| x as usize).sum::<usize>() != spec.boxes() {
        return Ok(BigInt::zero());
    }
    let mut product: Monomials = BTreeMap::from([(vec![0; n], BigInt::one())]);
    for s in &spec.shapes {
        let rect: Vec<u32> = vec![s.cols as u32; s.rows];
        product = multiply(&product, &schur_monomials(&rect, n));
    }
    while let Some((lead, c)) = product
        .last_key_value()
        .map(|(k, v)| (k.clone(), v.clone()))
    {
        if lead == target {
            return Ok(c);
        }
        if lead < target {
            break;
        }
        for (e, d) in schur_monomials(&lead, n) {
            let entry = product.entry(e).or_insert_with(BigInt::zero);
            *entry -= &c * d;
        }
        product.retain(|_, v| !v.is_zero());
    }
    Ok(BigInt::zero())
}

/// Dimension of the irreducible `gl_n` module of highest weight `lambda`.
pub fn weyl_dimension(lambda: &[i64], n: usize) -> Result<u128> {
    let mut l = lambda.to_vec();
    if l.len() > n {
        return Err(Error::LengthMismatch {
            left: n,
            right: l.len(),
        });
    }
    l.resize(n, 0);
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..n {
        for j in i + 1..n {
            let a = l[i] - l[j] + (j - i) as i64;
            if a <= 0 {
                return Err(Error::NotDominant(alloc::format!("{lambda:?}")));
            }
            num = num.checked_mul(a as u128).ok_or(Error::Overflow)?;
            den = den.checked_mul((j - i) as u128).ok_or(Error::Overflow)?;
        }
    }
    Ok(num / den)
}

/// All partitions of `size` with at most `n` parts.
pub fn partitions(size: usize, n: usize) -> Vec<Vec<i64>> {
    fn rec(left: usize, max: usize, parts: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p as i64);
            rec(left - p, p, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, size, n, &mut Vec::new(), &mut out);
    out
}

/// Distinct crystals among the factors of a spec.
pub fn factor_crystals(spec: &CrystalSpec) -> Result<Vec<Arc<Crystal>>> {
    let space = spec.space()?;
    let mut out: Vec<Arc<Crystal>> = Vec::new();
    for c in space.factors() {
        if !out.iter().any(|d| d.shape() == c.shape()) {
            out.push(c.clone());
        }
    }
    Ok(out)
}
