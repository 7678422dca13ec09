#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use clusterdt::poly::{exact_div, Monomial, Point, Polynomial, VarId};
use clusterdt::poset::{count_ideals, ideal_function, ideal_function_eval, truncate_zeros, Label, LabeledPoset};
use clusterdt::seedtrack::{dt_transform, search_reddening, PrincipalSeed, SearchMode};
use clusterdt::Quiver;

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), -4i64..5), 0..5).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(e, c)| {
            (Monomial::from_exponents(e.into_iter().enumerate().map(|(i, k)| (VarId(i as u32 + 1), k))), BigInt::from(c))
        }))
    })
}

fn skew(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-2i64..=2, n * (n - 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0; n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let e = it.next().unwrap();
                m[i][j] = e;
                m[j][i] = -e;
            }
        }
        m
    })
}

fn tree_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=5)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), n - 1)))
        .prop_map(|(n, edges)| {
            let arrows: Vec<(usize, usize, i64)> = edges
                .into_iter()
                .enumerate()
                .map(|(k, (p, up))| {
                    let (i, j) = (k + 1, p.index(k + 1));
                    if up { (i, j, 1) } else { (j, i, 1) }
                })
                .collect();
            Quiver::from_arrows(n, &arrows).unwrap()
        })
}

fn labeled_poset() -> impl Strategy<Value = LabeledPoset> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(prop::option::weighted(0.8, 1u32..=3), n),
                prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
            )
        })
        .prop_map(|(labels, rel)| {
            let n = labels.len();
            let mut covers = Vec::new();
            let mut it = rel.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if it.next().unwrap() {
                        covers.push((j, i));
                    }
                }
            }
            let labels = labels.into_iter().map(|l| l.map_or(Label::Zero, |v| Label::Var(VarId(v)))).collect();
            LabeledPoset::new(labels, &covers).unwrap()
        })
}

fn point() -> impl Strategy<Value = Point> {
    prop::collection::vec((1i64..9, 1i64..6), 3).prop_map(|v| {
        v.into_iter().enumerate().map(|(i, (a, b))| (VarId(i as u32 + 1), BigRational::new(a.into(), b.into()))).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let back: Polynomial = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_division_undoes_products(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(exact_div(&(&a * &b), &b).unwrap(), a);
    }

    #[test]
    fn quiver_mutation_is_an_involution(m in (2usize..=5).prop_flat_map(skew), k in 0usize..5) {
        let n = m.len();
        let q = Quiver::from_matrix(m, n).unwrap();
        let k = k % n;
        prop_assert_eq!(q.mutate(k).unwrap().mutate(k).unwrap(), q);
    }

    #[test]
    fn seed_mutation_keeps_invariants(q in tree_quiver(), walk in prop::collection::vec(0usize..5, 0..10)) {
        let mut s = PrincipalSeed::initial(&q);
        for k in walk {
            let k = k % q.n();
            let next = s.mutate(k).unwrap();
            next.check_invariants(None).unwrap();
            let back = next.mutate(k).unwrap();
            prop_assert_eq!(back.f(), s.f());
            prop_assert_eq!(back.framed(), s.framed());
            for f in next.f() {
                prop_assert_eq!(f.constant_term(), BigInt::from(1));
                prop_assert!(f.all_coefficients_positive());
            }
            s = next;
        }
    }

    #[test]
    fn ideal_function_evaluates_consistently(p in labeled_poset(), x in point()) {
        let f = ideal_function(&p).unwrap();
        prop_assert_eq!(f.eval(&x).unwrap(), ideal_function_eval(&p, &x).unwrap());
        if p.labels().iter().all(|l| *l != Label::Zero) {
            prop_assert_eq!(f.coefficient_sum(), BigInt::from(count_ideals(&p)));
        }
    }

    #[test]
    fn truncation_and_opposite(p in labeled_poset()) {
        let t = truncate_zeros(&p).unwrap();
        prop_assert_eq!(ideal_function(&t).unwrap(), ideal_function(&p).unwrap());
        prop_assert!(t.labels().iter().all(|l| *l != Label::Zero));
        prop_assert_eq!(count_ideals(&p.opposite()), count_ideals(&p));
    }
}

// a DT transformation does not depend on the reddening sequence
#[test]
fn dt_is_independent_of_the_witness() {
    let quivers = [
        clusterdt::fixtures::example_acyclic(),
        clusterdt::fixtures::twice_punctured_disk(),
        Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap(),
        Quiver::from_arrows(4, &[(0, 1, 1), (1, 2, 2), (3, 1, 1)]).unwrap(),
    ];
    for q in &quivers {
        let a = search_reddening(q, 12, SearchMode::MaximalGreen).unwrap();
        let b = search_reddening(q, 14, SearchMode::Reddening).unwrap();
        // a longer sequence: prepend a vertex mutated twice
        let mut c = vec![0, 1, 1, 0];
        c.extend(&a);
        let fa = dt_transform(q, &a).unwrap().f;
        assert_eq!(fa, dt_transform(q, &b).unwrap().f);
        assert_eq!(fa, dt_transform(q, &c).unwrap().f);
    }
}
