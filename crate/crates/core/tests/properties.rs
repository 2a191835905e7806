//! Randomized property tests for the structural invariants that hold on
//! every input, not just the tabulated ones.

use proptest::prelude::*;

use lefcount::ffpoly::{self, make_field, Fq, FqPoly};
use lefcount::symcomb::{CharacterPolynomial, CycleType, Partition};
use lefcount::{q_ratio, Q};
use num_traits::Zero;

fn arb_partition(max_n: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=4, 0..=4).prop_map(move |mut parts| {
        let mut total: u32 = parts.iter().sum();
        while total > max_n {
            let last = parts.pop().unwrap();
            total -= last;
        }
        Partition::new(parts)
    })
}

fn arb_charpoly() -> impl Strategy<Value = CharacterPolynomial> {
    let term = (
        prop::collection::vec(0u32..=2, 1..=3),
        -3i64..=3,
        1i64..=3,
    );
    prop::collection::vec(term, 0..=4).prop_map(|terms| {
        let mut acc = CharacterPolynomial::zero();
        for (exps, num, den) in terms {
            let mut t = CharacterPolynomial::constant(q_ratio(num, den));
            for (idx, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &CharacterPolynomial::variable(idx as u32 + 1);
                }
            }
            acc = &acc + &t;
        }
        acc
    })
}

proptest! {
    #[test]
    fn partition_cycle_type_round_trip(p in arb_partition(12)) {
        let mu = p.cycle_type();
        prop_assert_eq!(mu.partition(), p.clone());
        prop_assert_eq!(mu.n(), p.size());
        prop_assert_eq!(mu.num_cycles() as usize, p.len());
    }

    #[test]
    fn charpoly_binomial_round_trip(p in arb_charpoly()) {
        let round = CharacterPolynomial::from_binomial_terms(&p.binomial_terms());
        prop_assert_eq!(round, p);
    }

    #[test]
    fn charpoly_eval_is_a_ring_map(
        a in arb_charpoly(),
        b in arb_charpoly(),
        mu in arb_partition(10),
    ) {
        let mu = mu.cycle_type();
        let sum = &a + &b;
        prop_assert_eq!(sum.eval(&mu), a.eval(&mu) + b.eval(&mu));
        let prod = &a * &b;
        prop_assert_eq!(prod.eval(&mu), a.eval(&mu) * b.eval(&mu));
    }

    #[test]
    fn products_with_common_factor_are_never_squarefree(
        q_choice in 0usize..3,
        fa in 0u128..125,
        fb in 0u128..125,
        gc in 0u128..25,
    ) {
        let (p, e) = [(2u64, 1u32), (3, 1), (5, 1)][q_choice];
        let ctx = make_field(p, e).unwrap();
        let q = ctx.q() as u128;
        let f = ffpoly::monic_by_index(&ctx, 3, fa % q.pow(3));
        let g = ffpoly::monic_by_index(&ctx, 3, fb % q.pow(3));
        let common = ffpoly::monic_by_index(&ctx, 2, gc % q.pow(2));
        let prod = f.mul(&ctx, &common).mul(&ctx, &g.mul(&ctx, &common));
        prop_assert_eq!(ffpoly::is_squarefree(&ctx, &prod), Ok(false));
        // and directly: any pair with nonconstant gcd gives a non-squarefree product
        let fc = f.mul(&ctx, &common);
        let gc_ = g.mul(&ctx, &common);
        let h = fc.gcd(&ctx, &gc_);
        prop_assert!(h.degree().is_some_and(|d| d > 0));
        prop_assert_eq!(ffpoly::is_squarefree(&ctx, &fc.mul(&ctx, &gc_)), Ok(false));
    }

    #[test]
    fn fold_is_independent_of_chunking(split in 0u128..=81) {
        let ctx = make_field(3, 1).unwrap();
        let n = 4u32;
        let total = ffpoly::monic_count(&ctx, n);
        let split = split.min(total);
        let whole = ffpoly::fold_monic_range(&ctx, n, 0, total, 0u64, |acc, f| {
            acc + u64::from(ffpoly::is_squarefree(&ctx, f).unwrap())
        });
        let left = ffpoly::fold_monic_range(&ctx, n, 0, split, 0u64, |acc, f| {
            acc + u64::from(ffpoly::is_squarefree(&ctx, f).unwrap())
        });
        let right = ffpoly::fold_monic_range(&ctx, n, split, total, 0u64, |acc, f| {
            acc + u64::from(ffpoly::is_squarefree(&ctx, f).unwrap())
        });
        prop_assert_eq!(whole, left + right);
        prop_assert_eq!(whole, 81 - 27);
    }

    #[test]
    fn enumeration_indexing_is_injective(a in 0u128..64, b in 0u128..64) {
        let ctx = make_field(2, 1).unwrap();
        let fa = ffpoly::monic_by_index(&ctx, 6, a);
        let fb = ffpoly::monic_by_index(&ctx, 6, b);
        prop_assert_eq!(fa == fb, a == b);
    }

    #[test]
    fn degree_profile_total_is_the_degree(idx in 0u128..625) {
        let ctx = make_field(5, 1).unwrap();
        let f = ffpoly::monic_by_index(&ctx, 4, idx);
        if ffpoly::is_squarefree(&ctx, &f).unwrap() {
            let prof = ffpoly::degree_profile(&ctx, &f).unwrap();
            let total: u32 = (1..=4).map(|i| i * prof.count(i)).sum();
            prop_assert_eq!(total, 4);
            prop_assert_eq!(ffpoly::sigma_cycle_type(&prof).n(), 4);
        }
    }

    #[test]
    fn class_function_values_weighted_by_class_sizes_sum_to_group_total(
        p in arb_charpoly(),
        n in 1u32..=7,
    ) {
        // sum over S_n of P(sigma) = n! <P, 1>: both routes must agree
        use lefcount::symcomb::{enumerate_partitions, inner_product, z_mu, ClassFunction};
        let chi = p.to_class_function(n);
        let fact: u128 = (1..=u128::from(n)).product();
        let mut by_classes = Q::zero();
        for lambda in enumerate_partitions(n) {
            let mu = lambda.cycle_type();
            let class_size = fact / z_mu(&mu);
            by_classes += chi.value(&mu) * lefcount::q_int(class_size as i64);
        }
        let by_inner = inner_product(&chi, &ClassFunction::trivial(n)).unwrap()
            * lefcount::q_int(fact as i64);
        prop_assert_eq!(by_classes, by_inner);
    }
}

#[test]
fn cycle_type_union_is_additive() {
    let a = CycleType::from_parts(&[3, 1]);
    let b = CycleType::from_parts(&[2, 1, 1]);
    let u = a.union(&b);
    assert_eq!(u, CycleType::from_parts(&[3, 2, 1, 1, 1]));
    assert_eq!(u.n(), a.n() + b.n());
}

#[test]
fn zero_poly_constructors() {
    let ctx = make_field(3, 1).unwrap();
    let z = FqPoly::new(vec![Fq::ZERO, Fq::ZERO]);
    assert!(z.is_zero());
    assert_eq!(z.degree(), None);
    assert!(ffpoly::is_squarefree(&ctx, &z).is_err());
}
