//! Alternating sums over the affine Weyl group `W = M ⋊ S_n`:
//!
//! `sum_{tau, beta} sign(tau) q^{(L'+rho|beta) - |beta|^2 m/2} sum_b q^{E(b)}`,
//!
//! with `m = level + n` and `b` running over paths of content
//! `-L - rho + tau^{-1}(L' + rho - m beta)` up to a multiple of `(1, ..., 1)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::energy::{EnergyFunction, TableStore};
use crate::error::{Error, Result};
use crate::kostka::{level_restricted_paths, Grading};
use crate::laurent::LaurentPoly;
use crate::path::PathSpace;
use crate::perm::Permutation;
use crate::spec::CrystalSpec;
use crate::tableau::RectShape;
use crate::weight::FiniteWeight;
use crate::weyl::AffineWeylElement;

/// All `beta` in `[-bound, bound]^n` with zero coordinate sum.
pub fn translations(n: usize, bound: i64) -> Vec<Vec<i64>> {
    fn rec(k: usize, n: usize, bound: i64, sum: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k + 1 == n {
            if sum.abs() <= bound {
                cur.push(-sum);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for x in -bound..=bound {
            cur.push(x);
            rec(k + 1, n, bound, sum + x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, bound, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Evaluation data for one alternating sum.
#[derive(Debug, Clone)]
pub struct BosonicSum {
    rank: usize,
    modulus: i64,
    lambda: Vec<i64>,
    lambda_prime: Vec<i64>,
    rho: Vec<i64>,
    // None when the content sum cannot match
    offset: Option<i64>,
    fibers: BTreeMap<Vec<i64>, LaurentPoly>,
    bound: i64,
    perms: Vec<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BosonicResult {
    pub polynomial: LaurentPoly,
    pub summand_count: usize,
    pub bound: i64,
}

impl BosonicSum {
    /// The sum for `spec`, graded by the same energy as the level-restricted
    /// generating function.
    pub fn new(spec: &CrystalSpec, store: &mut TableStore) -> Result<Self> {
        let grading = Grading::for_spec(spec, store)?;
        let space = spec.space()?;
        BosonicSum::build(
            &space,
            spec.resolved_level(),
            spec.resolved_lambda().finite().coords(),
            spec.resolved_lambda_prime().finite().coords(),
            |p| grading.energy(p),
        )
    }

    /// The level-zero sum with `Lambda = Lambda' = 0`, graded by `E_B`.
    pub fn level_zero(rank: usize, shapes: &[RectShape], store: &mut TableStore) -> Result<Self> {
        let space = PathSpace::new(rank, shapes)?;
        let energy = EnergyFunction::with_store(space.clone(), store)?;
        let zero = vec![0; rank];
        BosonicSum::build(&space, 0, &zero, &zero, |p| energy.energy(p))
    }

    fn build(
        space: &PathSpace,
        level: i64,
        lambda: &[i64],
        lambda_prime: &[i64],
        energy: impl Fn(&[usize]) -> i64,
    ) -> Result<Self> {
        let n = space.rank();
        let boxes = space.boxes() as i64;
        let rho = FiniteWeight::rho(n).into_coords();
        let modulus = level + n as i64;
        let diff = boxes + lambda.iter().sum::<i64>() - lambda_prime.iter().sum::<i64>();
        let offset = (diff % n as i64 == 0).then(|| diff / n as i64);
        let mut fibers: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
        for p in space.paths() {
            fibers
                .entry(space.weight(&p))
                .or_default()
                .add_term(1, energy(&p));
        }
        let max_abs = |v: &[i64]| v.iter().map(|x| x.abs()).max().unwrap_or(0);
        // every coordinate of tau^{-1} beta is pinned by a content in [0, boxes]
        let spread = max_abs(lambda)
            + max_abs(lambda_prime)
            + 2 * (n as i64 - 1)
            + offset.unwrap_or(0).abs()
            + boxes;
        let bound = (spread + modulus - 1) / modulus;
        Ok(BosonicSum {
            rank: n,
            modulus,
            lambda: lambda.to_vec(),
            lambda_prime: lambda_prime.to_vec(),
            rho,
            offset,
            fibers,
            bound,
            perms: Permutation::all(n),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Translation bound outside of which every fiber is empty.
    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    /// Content a path must have to contribute at `(tau, beta)`.
    pub fn target(&self, tau: &Permutation, beta: &[i64]) -> Option<Vec<i64>> {
        let c = self.offset?;
        let inner: Vec<i64> = (0..self.rank)
            .map(|k| self.lambda_prime[k] + self.rho[k] - self.modulus * beta[k])
            .collect();
        let moved = tau.act_inverse(&FiniteWeight::new(inner));
        Some(
            (0..self.rank)
                .map(|k| moved.coords()[k] - self.lambda[k] - self.rho[k] + c)
                .collect(),
        )
    }

    /// `(L' + rho | beta) - |beta|^2 m / 2`.
    pub fn exponent_shift(&self, beta: &[i64]) -> i64 {
        let lin: i64 = beta
            .iter()
            .enumerate()
            .map(|(k, b)| b * (self.lambda_prime[k] + self.rho[k]))
            .sum();
        let sq: i64 = beta.iter().map(|b| b * b).sum();
        lin - sq * self.modulus / 2
    }

    /// Contribution of one permutation, and the number of summands.
    pub fn term(&self, tau: &Permutation, bound: i64) -> (LaurentPoly, usize) {
        let mut poly = LaurentPoly::zero();
        let mut count = 0;
        for beta in translations(self.rank, bound) {
            let Some(target) = self.target(tau, &beta) else {
                continue;
            };
            if let Some(fiber) = self.fibers.get(&target) {
                count += fiber.eval_one() as usize;
                poly += &fiber.shift(self.exponent_shift(&beta)).scale(tau.sign());
            }
        }
        (poly, count)
    }

    pub fn evaluate_with_bound(&self, bound: i64) -> BosonicResult {
        let mut polynomial = LaurentPoly::zero();
        let mut summand_count = 0;
        for tau in &self.perms {
            let (p, c) = self.term(tau, bound);
            polynomial += &p;
            summand_count += c;
        }
        BosonicResult {
            polynomial,
            summand_count,
            bound,
        }
    }

    pub fn evaluate(&self) -> BosonicResult {
        self.evaluate_with_bound(self.bound)
    }
}

/// Alternating-sum side of the level-restricted generating function.
pub fn bosonic_k(spec: &CrystalSpec, store: &mut TableStore) -> Result<BosonicResult> {
    Ok(BosonicSum::new(spec, store)?.evaluate())
}

/// Both sides of an identity between an alternating sum and a path count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub equal: bool,
    pub summand_count: usize,
    pub truncation_bound: i64,
    pub restricted_paths: usize,
    /// `false` when the identity's hypothesis fails (no restricted path).
    pub applicable: bool,
}

fn require_single_columns(shapes: &[RectShape]) -> Result<()> {
    if let Some(s) = shapes.iter().find(|s| s.cols != 1) {
        return Err(Error::Unsupported(alloc::format!(
            "factor {s} is not a single column"
        )));
    }
    Ok(())
}

/// Level one: the alternating sum equals `q^{E(p)}` for the unique
/// restricted path `p`.
pub fn identity_level1(spec: &CrystalSpec, store: &mut TableStore) -> Result<IdentityReport> {
    spec.validate()?;
    if spec.resolved_level() != 1 {
        return Err(Error::Unsupported(alloc::format!(
            "level {} is not 1",
            spec.resolved_level()
        )));
    }
    require_single_columns(&spec.shapes)?;
    let lhs = bosonic_k(spec, store)?;
    let paths = level_restricted_paths(spec)?;
    let grading = Grading::for_spec(spec, store)?;
    let mut rhs = LaurentPoly::zero();
    for p in &paths {
        rhs.add_term(1, grading.energy(p));
    }
    Ok(IdentityReport {
        equal: lhs.polynomial == rhs && paths.len() <= 1,
        lhs: lhs.polynomial,
        rhs,
        summand_count: lhs.summand_count,
        truncation_bound: lhs.bound,
        restricted_paths: paths.len(),
        applicable: !paths.is_empty(),
    })
}

/// Level zero: the alternating sum is `1` for the empty tensor product and
/// `0` otherwise.
pub fn identity_level0(
    rank: usize,
    shapes: &[RectShape],
    store: &mut TableStore,
) -> Result<IdentityReport> {
    require_single_columns(shapes)?;
    let sum = BosonicSum::level_zero(rank, shapes, store)?;
    let lhs = sum.evaluate();
    let rhs = if shapes.is_empty() {
        LaurentPoly::one()
    } else {
        LaurentPoly::zero()
    };
    Ok(IdentityReport {
        equal: lhs.polynomial == rhs,
        lhs: lhs.polynomial,
        rhs,
        summand_count: lhs.summand_count,
        truncation_bound: lhs.bound,
        restricted_paths: usize::from(shapes.is_empty()),
        applicable: true,
    })
}

/// One summand `(t_beta tau, b)` of the level-zero sum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Summand {
    pub tau: Vec<usize>,
    pub beta: Vec<i64>,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionCertificate {
    pub summand_count: usize,
    pub pairing_size: usize,
    pub total: LaurentPoly,
    pub truncation_bound: i64,
}

/// Certify that `(w, b) -> (w r_i, s_i e_i(b))` with
/// `i = min { i | e_i(b_1) defined }` is a sign-reversing, exponent-preserving
/// involution without fixed points on the level-zero summands.
pub fn involution_level0(
    rank: usize,
    shapes: &[RectShape],
    store: &mut TableStore,
) -> Result<InvolutionCertificate> {
    require_single_columns(shapes)?;
    if shapes.is_empty() {
        return Err(Error::Involution(
            "the empty tensor product has one unpaired summand".into(),
        ));
    }
    let space = PathSpace::new(rank, shapes)?;
    let energy = EnergyFunction::with_store(space.clone(), store)?;
    let sum = BosonicSum::level_zero(rank, shapes, store)?;
    let last = space.len() - 1;

    let mut by_content: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::new();
    for p in space.paths() {
        by_content.entry(space.weight(&p)).or_default().push(p);
    }
    let exponent = |beta: &[i64], path: &[usize]| energy.energy(path) + sum.exponent_shift(beta);
    let mut summands: BTreeMap<Summand, (i64, i64)> = BTreeMap::new();
    for tau in sum.permutations() {
        for beta in translations(rank, sum.bound()) {
            let Some(target) = sum.target(tau, &beta) else {
                continue;
            };
            for p in by_content.get(&target).into_iter().flatten() {
                let s = Summand {
                    tau: tau.images().to_vec(),
                    beta: beta.clone(),
                    path: p.clone(),
                };
                summands.insert(s, (tau.sign(), exponent(&beta, p)));
            }
        }
    }

    let violation = |path: &[usize]| -> Result<usize> {
        let c = space.factor(last);
        (0..rank)
            .find(|&i| c.e(i, path[last]).is_some())
            .ok_or_else(|| {
                Error::Involution(alloc::format!("no e_i acts on {}", space.render(path)))
            })
    };
    let image = |s: &Summand| -> Result<Summand> {
        let i = violation(&s.path)?;
        let w = AffineWeylElement::new(
            FiniteWeight::new(s.beta.clone()),
            Permutation::from_images(s.tau.clone())?,
        )?;
        let w2 = w.compose_reflection(i)?;
        let raised = space.e(i, &s.path).expect("eps_i(b) >= eps_i(b_1) > 0");
        Ok(Summand {
            tau: w2.tau().images().to_vec(),
            beta: w2.beta().coords().to_vec(),
            path: space.s(i, &raised),
        })
    };

    let mut total = LaurentPoly::zero();
    let mut pairs = 0;
    for (s, &(sign, exp)) in &summands {
        total.add_term(sign, exp);
        let t = image(s)?;
        let tau = Permutation::from_images(t.tau.clone())?;
        if sum.target(&tau, &t.beta).as_deref() != Some(&space.weight(&t.path)[..]) {
            return Err(Error::Involution(alloc::format!(
                "image of {s:?} violates the weight condition"
            )));
        }
        let Some(&(sign2, exp2)) = summands.get(&t) else {
            return Err(Error::Involution(alloc::format!(
                "image of {s:?} lies outside the truncation"
            )));
        };
        if t == *s || sign2 != -sign || exp2 != exp {
            return Err(Error::Involution(alloc::format!(
                "{s:?} and its image are not a cancelling pair"
            )));
        }
        if image(&t)? != *s {
            return Err(Error::Involution(alloc::format!(
                "map is not involutive at {s:?}"
            )));
        }
        if violation(&t.path)? != violation(&s.path)? {
            return Err(Error::Involution(alloc::format!(
                "violation index changes at {s:?}"
            )));
        }
        if s < &t {
            pairs += 1;
        }
    }
    Ok(InvolutionCertificate {
        summand_count: summands.len(),
        pairing_size: pairs,
        total,
        truncation_bound: sum.bound(),
    })
}
