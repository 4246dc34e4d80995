mod common;

use std::sync::OnceLock;

use common::suites;
use common::{brute_congruences, oracle_is_dba, Raw};
use dba_lab::boolean::FiniteBooleanAlgebra;
use dba_lab::congruence::{all_congruences, congruence_closure};
use dba_lab::construct::{decompose_glued, glued_sum};
use dba_lab::iso::{canonical_form, canonical_labelling, is_isomorphism};
use dba_lab::skeleton::{classify_type, is_pure, is_regular, is_trivial, Skeleton, TypeTag};
use dba_lab::{AxiomId, FiniteDba, VerifiedDba};
use proptest::prelude::*;
use proptest::sample::Index;

fn algebras() -> &'static [(String, VerifiedDba)] {
    static U: OnceLock<Vec<(String, VerifiedDba)>> = OnceLock::new();
    U.get_or_init(common::wide_universe)
}

fn pick(i: &Index) -> &'static (String, VerifiedDba) {
    let all = algebras();
    &all[i.index(all.len())]
}

fn raw_tables(max: usize) -> impl Strategy<Value = Raw> {
    (1..=max).prop_flat_map(|n| {
        (
            0..n,
            0..n,
            prop::collection::vec(0..n, n * n),
            prop::collection::vec(0..n, n * n),
            prop::collection::vec(0..n, n),
            prop::collection::vec(0..n, n),
        )
            .prop_map(move |(bot, top, meet, join, neg, opp)| Raw {
                n,
                bot,
                top,
                meet,
                join,
                neg,
                opp,
            })
    })
}

/// A dBa from the universe with one table cell overwritten.
fn mutated() -> impl Strategy<Value = Raw> {
    (any::<Index>(), any::<Index>(), any::<Index>(), 0usize..4).prop_map(
        |(a, cell, value, table)| {
            let mut r = Raw::of(&pick(&a).1);
            let v = value.index(r.n);
            match table {
                0 => r.meet[cell.index(r.n * r.n)] = v,
                1 => r.join[cell.index(r.n * r.n)] = v,
                2 => r.neg[cell.index(r.n)] = v,
                _ => r.opp[cell.index(r.n)] = v,
            }
            r
        },
    )
}

fn permutation_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn assert_sound_witnesses(a: &FiniteDba) -> Result<(), TestCaseError> {
    for ax in AxiomId::ALL {
        for v in a.check_axiom(ax, usize::MAX) {
            prop_assert_eq!(v.witness.len(), ax.arity());
            prop_assert_eq!(ax.evaluate(a, &v.witness), (v.lhs, v.rhs));
            prop_assert_ne!(v.lhs, v.rhs);
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn checker_agrees_with_oracle_on_random_tables(r in raw_tables(4)) {
        let a = r.to_dba();
        prop_assert_eq!(a.is_dba(), oracle_is_dba(&r));
        assert_sound_witnesses(&a)?;
    }

    #[test]
    fn checker_agrees_with_oracle_on_mutations(r in mutated()) {
        let a = r.to_dba();
        prop_assert_eq!(a.is_dba(), oracle_is_dba(&r));
        assert_sound_witnesses(&a)?;
    }

    #[test]
    fn relabelling_preserves_structure(
        (i, perm) in any::<Index>().prop_flat_map(|i| (Just(i), permutation_of(pick(&i).1.size())))
    ) {
        let (_, a) = pick(&i);
        let b = a.relabel(&perm);
        prop_assert!(b.is_dba());
        prop_assert!(oracle_is_dba(&Raw::of(&b)));
        prop_assert_eq!(canonical_form(a), canonical_form(&b));
        prop_assert!(is_isomorphism(a, &b, &perm));
        let (form, map) = canonical_labelling(&b);
        prop_assert_eq!(form.to_dba(), b.relabel(&map));
        let vb = b.verify().unwrap();
        prop_assert_eq!(all_congruences(a).len(), all_congruences(&vb).len());
        prop_assert_eq!(
            (is_pure(a), is_trivial(a), is_regular(a)),
            (is_pure(&vb), is_trivial(&vb), is_regular(&vb))
        );
        prop_assert_eq!(classify_type(&Skeleton::new(a)), classify_type(&Skeleton::new(&vb)));
    }

    #[test]
    fn closure_is_a_congruence_containing_the_seed(
        (i, x, y) in any::<Index>().prop_flat_map(|i| {
            let n = pick(&i).1.size();
            (Just(i), 0..n, 0..n)
        })
    ) {
        let (_, a) = pick(&i);
        let theta = congruence_closure(a, &[(x, y)]);
        prop_assert!(theta.related(x, y));
        prop_assert!(theta.is_compatible(a));
        if a.size() <= 6 {
            // Least: every brute-force congruence containing the pair
            // contains the closure.
            for p in brute_congruences(a) {
                if p[x] == p[y] {
                    let all_pairs = (0..a.size()).flat_map(|u| (0..a.size()).map(move |v| (u, v)));
                    for (u, v) in all_pairs {
                        prop_assert!(!theta.related(u, v) || p[u] == p[v]);
                    }
                }
            }
        }
    }

    #[test]
    fn quasi_order_laws(i in any::<Index>()) {
        let (_, a) = pick(&i);
        let n = a.size();
        for x in 0..n {
            prop_assert!(a.quasi_leq(x, x));
            for y in 0..n {
                prop_assert_eq!(a.quasi_leq(x, y), suites::leq(a, x, y));
                // Comparison through both squares.
                prop_assert_eq!(
                    a.quasi_leq(x, y),
                    a.quasi_leq(a.meet(x, x), a.meet(y, y)) && a.quasi_leq(a.join(x, x), a.join(y, y))
                );
                for z in 0..n {
                    prop_assert!(!(a.quasi_leq(x, y) && a.quasi_leq(y, z)) || a.quasi_leq(x, z));
                }
            }
        }
    }

    #[test]
    fn skeleton_orders_are_the_quasi_order(i in any::<Index>()) {
        let (_, a) = pick(&i);
        let s = Skeleton::new(a);
        for (li, &x) in s.meet_part().iter().enumerate() {
            for (lj, &y) in s.meet_part().iter().enumerate() {
                prop_assert_eq!(s.meet_ba().leq(li, lj), a.quasi_leq(x, y));
            }
        }
        for (li, &x) in s.join_part().iter().enumerate() {
            for (lj, &y) in s.join_part().iter().enumerate() {
                prop_assert_eq!(s.join_ba().leq(li, lj), a.quasi_leq(x, y));
            }
        }
        let p = s.pure_subalgebra();
        prop_assert!(is_pure(&p));
        prop_assert_eq!(p.size(), s.pure_part().len());
    }

    #[test]
    fn type_three_or_four(i in any::<Index>()) {
        let a = &pick(&i).1;
        let t = classify_type(&Skeleton::new(a));
        prop_assert!(t.contains(TypeTag::III) || t.contains(TypeTag::IV));
        prop_assert_eq!(t.contains(TypeTag::III) && t.contains(TypeTag::IV), a.bot() == a.top());
    }

    #[test]
    fn identity_suites(i in any::<Index>()) {
        let (name, a) = pick(&i);
        prop_assert_eq!(suites::calculation_rules(a), Vec::<String>::new(), "{}", name);
        prop_assert_eq!(suites::sum_product_rules(a, is_regular(a)), Vec::<String>::new(), "{}", name);
        prop_assert_eq!(suites::squares_in_both_parts(a), Vec::<String>::new(), "{}", name);
        prop_assert_eq!(suites::pure_is_regular(a), Vec::<String>::new(), "{}", name);
        prop_assert_eq!(suites::equal_squares_swap(a), Vec::<String>::new(), "{}", name);
        if is_trivial(a) {
            prop_assert_eq!(suites::trivial_constancy(a), Vec::<String>::new(), "{}", name);
        }
    }

    #[test]
    fn glued_sums(kp in 0u32..=3, kq in 0u32..=3) {
        let (p, q) = (FiniteBooleanAlgebra::powerset(kp), FiniteBooleanAlgebra::powerset(kq));
        let g = glued_sum(&p, &q).unwrap();
        prop_assert_eq!(g.size(), p.size() + q.size() - 1);
        prop_assert!(is_pure(&g) && is_trivial(&g));
        prop_assert!(oracle_is_dba(&Raw::of(&g)));
        let (dp, dq) = decompose_glued(&g).unwrap();
        prop_assert_eq!((dp.size(), dq.size()), (p.size(), q.size()));
        let again = glued_sum(&dp, &dq).unwrap();
        prop_assert_eq!(canonical_form(&again), canonical_form(&g));
        prop_assert_eq!(all_congruences(&g).len(), p.size() * q.size());
    }
}
