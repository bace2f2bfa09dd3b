use affine_paths::straighten::{normalize, straighten_step, SchurSymbol};
use affine_paths::weight::dot;
use affine_paths::{FiniteWeight, LevelWeight, Path, PathSpace, RectShape, Tableau};
use proptest::prelude::*;

/// Rank, factor shapes and raw indices reduced modulo each crystal size.
fn path_input() -> impl Strategy<Value = (usize, Vec<RectShape>, Vec<usize>)> {
    (2usize..=4).prop_flat_map(|n| {
        let shape = (1..n, 1usize..=2).prop_map(|(k, l)| RectShape::new(k, l));
        (
            Just(n),
            prop::collection::vec(shape, 1..=4),
            prop::collection::vec(any::<usize>(), 4),
        )
    })
}

fn build(n: usize, shapes: &[RectShape], raw: &[usize]) -> (PathSpace, Vec<usize>) {
    let space = PathSpace::new(n, shapes).unwrap();
    let path = space
        .factors()
        .iter()
        .zip(raw)
        .map(|(c, r)| r % c.len())
        .collect();
    (space, path)
}

fn reflect_content(w: &[i64], i: usize) -> Vec<i64> {
    let mut v = w.to_vec();
    let n = v.len();
    if i == 0 {
        v.swap(0, n - 1);
    } else {
        v.swap(i - 1, i);
    }
    v
}

proptest! {
    #[test]
    fn dot_is_symmetric_and_bilinear(a in prop::collection::vec(-50i64..50, 3), b in prop::collection::vec(-50i64..50, 3),
                                     c in prop::collection::vec(-50i64..50, 3), k in -5i64..5) {
        let (a, b, c) = (FiniteWeight::new(a), FiniteWeight::new(b), FiniteWeight::new(c));
        prop_assert_eq!(dot(&a, &b).unwrap(), dot(&b, &a).unwrap());
        prop_assert_eq!(dot(&(&a + &c), &b).unwrap(), dot(&a, &b).unwrap() + dot(&c, &b).unwrap());
        prop_assert_eq!(dot(&a.scale(k), &b).unwrap(), k * dot(&a, &b).unwrap());
    }

    #[test]
    fn tensor_statistics_match_weight((n, shapes, raw) in path_input()) {
        let (space, p) = build(n, &shapes, &raw);
        for i in 0..n {
            prop_assert_eq!(space.phi(i, &p) as i64 - space.epsilon(i, &p) as i64, space.pairing(i, &p));
        }
    }

    #[test]
    fn tensor_operators_are_partial_inverses((n, shapes, raw) in path_input()) {
        let (space, p) = build(n, &shapes, &raw);
        for i in 0..n {
            if let Some(q) = space.f(i, &p) {
                prop_assert_eq!(space.e(i, &q), Some(p.clone()));
            }
            if let Some(q) = space.e(i, &p) {
                prop_assert_eq!(space.f(i, &q), Some(p.clone()));
            }
        }
    }

    #[test]
    fn string_lengths((n, shapes, raw) in path_input()) {
        let (space, p) = build(n, &shapes, &raw);
        for i in 0..n {
            let mut q = p.clone();
            for _ in 0..space.phi(i, &p) {
                q = space.f(i, &q).expect("inside the string");
            }
            prop_assert!(space.f(i, &q).is_none());
            let mut q = p.clone();
            for _ in 0..space.epsilon(i, &p) {
                q = space.e(i, &q).expect("inside the string");
            }
            prop_assert!(space.e(i, &q).is_none());
        }
    }

    #[test]
    fn reflection_is_an_involution((n, shapes, raw) in path_input()) {
        let (space, p) = build(n, &shapes, &raw);
        for i in 0..n {
            let s = space.s(i, &p);
            prop_assert_eq!(space.s(i, &s), p.clone());
            prop_assert_eq!(space.weight(&s), reflect_content(&space.weight(&p), i));
        }
    }

    #[test]
    fn restricted_paths_are_classically_highest((n, shapes, raw) in path_input(), extra in 0i64..2, pick in any::<usize>()) {
        let (space, p) = build(n, &shapes, &raw);
        let level = space.max_cols() as i64 + extra;
        let weights = affine_paths::weight::dominant_of_level(n, level);
        let lambda = &weights[pick % weights.len()];
        if space.is_level_restricted(&p, lambda).unwrap() {
            for i in 0..n {
                prop_assert!(space.epsilon(i, &p) as i64 <= lambda.pairing(i));
            }
            if (1..n).all(|i| lambda.pairing(i) == 0) {
                prop_assert!(space.is_classically_highest(&p));
            }
            let bigger = LevelWeight::new(level + 1, lambda.finite().clone(), 0);
            prop_assert!(space.is_level_restricted(&p, &bigger).unwrap());
        }
    }

    #[test]
    fn text_round_trip((n, shapes, raw) in path_input()) {
        let (space, p) = build(n, &shapes, &raw);
        let text = space.render(&p);
        let parsed: Path = text.parse().unwrap();
        prop_assert_eq!(space.encode(&parsed).unwrap(), p);
        for t in parsed.factors() {
            prop_assert_eq!(&t.to_string().parse::<Tableau>().unwrap(), t);
        }
    }

    #[test]
    fn normal_form_ignores_rewrite_schedule(n in 2usize..=3, level in 1i64..=2,
                                            alpha in prop::collection::vec(-6i64..6, 3),
                                            steps in prop::collection::vec(0usize..3, 0..12)) {
        let start = SchurSymbol::new(alpha[..n].to_vec(), level);
        let expected = normalize(&start).unwrap();
        let mut cur = start;
        for i in steps {
            cur = straighten_step(&cur, i % n).unwrap();
            prop_assert_eq!(normalize(&cur).unwrap(), expected.clone());
        }
    }
}
