use affine_paths::bosonic::{bosonic_k, BosonicSum};
use affine_paths::kostka::{e0_hypothesis, kostka_classical, kostka_level, level_restricted_paths};
use affine_paths::weight::dominant_of_level;
use affine_paths::{CrystalSpec, LevelWeight, RectShape, TableStore};

fn shape(k: usize, l: usize) -> RectShape {
    RectShape::new(k, l)
}

#[test]
fn alternating_sum_for_all_dominant_pairs() {
    let mut st = TableStore::new();
    for n in [2usize, 3] {
        for level in [2i64, 3] {
            let weights = dominant_of_level(n, level);
            for shapes in [
                vec![shape(1, 1); 3],
                vec![shape(1, 2), shape(1, 1)],
                vec![shape(1, 1), shape(1, 2)],
            ] {
                for a in &weights {
                    for b in &weights {
                        let spec =
                            CrystalSpec::new(n, shapes.clone()).with_weights(a.clone(), b.clone());
                        assert_eq!(
                            e0_hypothesis(&spec, &mut st).unwrap(),
                            if spec.uses_plain_energy() {
                                None
                            } else {
                                Some(true)
                            }
                        );
                        let f = kostka_level(&spec, &mut st).unwrap().polynomial;
                        let g = bosonic_k(&spec, &mut st).unwrap().polynomial;
                        assert_eq!(f, g, "n={n} level={level} {shapes:?} {a} -> {b}");
                    }
                }
            }
        }
    }
}

#[test]
fn explicit_ground_state_crystal() {
    let mut st = TableStore::new();
    let l = LevelWeight::parse_selector("L0+L1", 3).unwrap();
    let lp = LevelWeight::parse_selector("L0+L2", 3).unwrap();
    for b0 in [shape(1, 2), shape(2, 2)] {
        let spec = CrystalSpec::new(3, vec![shape(1, 1), shape(2, 1), shape(1, 1)])
            .with_weights(l.clone(), lp.clone())
            .with_b0(b0);
        let f = kostka_level(&spec, &mut st).unwrap().polynomial;
        let g = bosonic_k(&spec, &mut st).unwrap().polynomial;
        assert_eq!(f, g, "B_0 = {b0}");
    }
}

#[test]
fn large_level_matches_classical_up_to_shift() {
    let mut st = TableStore::new();
    for len in 1..=3 {
        let shapes = vec![shape(1, 1); len];
        let space = CrystalSpec::new(2, shapes.clone()).space().unwrap();
        for lam in affine_paths::kostka::partitions(space.boxes(), 2) {
            let level = len as i64;
            let mut lp = lam.clone();
            lp.resize(2, 0);
            let target = LevelWeight::new(level, affine_paths::FiniteWeight::new(lp), 0);
            let spec = CrystalSpec::new(2, shapes.clone())
                .with_weights(LevelWeight::multiple_of_lambda0(2, level), target);
            let k_level = kostka_level(&spec, &mut st).unwrap().polynomial;
            let k_classical = kostka_classical(&spec, &lam, &mut st).unwrap().polynomial;
            assert!(
                k_level.equal_up_to_shift(&k_classical),
                "{lam:?}: {k_level} vs {k_classical}"
            );
        }
    }
}

#[test]
fn restriction_sets_nest_with_level() {
    let mut st = TableStore::new();
    for n in [2usize, 3] {
        for shapes in [
            vec![shape(1, 1); 4],
            vec![shape(1, 2), shape(1, 1), shape(1, 1)],
        ] {
            let max = shapes.iter().map(|s| s.cols as i64).max().unwrap();
            for level in max..max + 2 {
                for lp in dominant_of_level(n, level) {
                    let lo = CrystalSpec::new(n, shapes.clone())
                        .with_weights(LevelWeight::multiple_of_lambda0(n, level), lp.clone());
                    let lifted = LevelWeight::new(level + 1, lp.finite().clone(), 0);
                    let hi = CrystalSpec::new(n, shapes.clone())
                        .with_weights(LevelWeight::multiple_of_lambda0(n, level + 1), lifted);
                    let a = level_restricted_paths(&lo).unwrap();
                    let b = level_restricted_paths(&hi).unwrap();
                    assert!(a.iter().all(|p| b.contains(p)));
                    let ka = kostka_level(&lo, &mut st).unwrap().polynomial;
                    let kb = kostka_level(&hi, &mut st).unwrap().polynomial;
                    assert!(ka.terms().all(|(e, c)| c <= kb.coeff(e)), "{ka} vs {kb}");
                }
            }
        }
    }
}

#[test]
fn summand_counts_are_stable_under_widening() {
    let mut st = TableStore::new();
    let spec = CrystalSpec::new(3, vec![shape(2, 1), shape(1, 2), shape(1, 1)]).with_weights(
        LevelWeight::parse_selector("L1+L2", 3).unwrap(),
        LevelWeight::parse_selector("2L0", 3).unwrap(),
    );
    let s = BosonicSum::new(&spec, &mut st).unwrap();
    let base = s.evaluate();
    for extra in 1..=3 {
        assert_eq!(base, {
            let mut w = s.evaluate_with_bound(s.bound() + extra);
            w.bound = base.bound;
            w
        });
    }
}
