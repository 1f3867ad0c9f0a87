//! Randomized invariants: partition arithmetic, strip duality, basis round
//! trips, and the differential oracles for multiplication and division.

use kkschur::partition::Cell;
use kkschur::ring::{self, oracle, Basis, SymFunc};
use kkschur::{LevelContext, Partition};
use num_bigint::BigInt;
use proptest::prelude::*;

fn partition_strategy(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(Partition::sorted)
}

fn bounded_sym_func(k: u32) -> impl Strategy<Value = SymFunc> {
    let indices = kkschur::partition::bounded_partitions_up_to(k, 4);
    prop::collection::vec((0..indices.len(), -3i64..=3), 1..=3).prop_map(move |picks| {
        let mut f = SymFunc::zero(k, Basis::KKSchur);
        for (i, c) in picks {
            let term = SymFunc::basis_element(k, Basis::KKSchur, indices[i].clone())
                .unwrap()
                .scaled(&BigInt::from(c));
            f = f.plus(&term);
        }
        f
    })
}

proptest! {
    #[test]
    fn conjugate_is_an_involution(lam in partition_strategy(10, 8)) {
        prop_assert_eq!(lam.conjugate().conjugate(), lam);
    }

    #[test]
    fn union_commutes_and_associates(
        a in partition_strategy(8, 6),
        b in partition_strategy(8, 6),
        c in partition_strategy(8, 6),
    ) {
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
    }

    #[test]
    fn oplus_size(a in partition_strategy(8, 6), b in partition_strategy(8, 6)) {
        let expected = a.size() + b.size() + a.len() as u32 * b.first();
        prop_assert_eq!(a.oplus(&b).size(), expected);
    }

    #[test]
    fn strip_duality(a in partition_strategy(8, 6), b in partition_strategy(8, 6)) {
        prop_assert_eq!(
            a.is_horizontal_strip_over(&b),
            a.conjugate().is_vertical_strip_over(&b.conjugate())
        );
    }

    #[test]
    fn corner_duality(lam in partition_strategy(8, 6)) {
        // a removable corner becomes addable once removed, and conversely
        for c in lam.removable_corners() {
            let mut parts: Vec<u32> = lam.parts().to_vec();
            parts[c.row as usize - 1] -= 1;
            let smaller = Partition::sorted(parts);
            prop_assert!(smaller.addable_corners().contains(&c));
        }
        for c in lam.addable_corners() {
            let mut parts: Vec<u32> = lam.parts().to_vec();
            if c.row as usize > parts.len() {
                parts.push(1);
            } else {
                parts[c.row as usize - 1] += 1;
            }
            let bigger = Partition::sorted(parts);
            prop_assert!(bigger.removable_corners().contains(&c));
        }
    }

    #[test]
    fn hooks_decrease_along_rows(lam in partition_strategy(8, 6)) {
        for i in 1..=lam.len() {
            for j in 2..=lam.part(i) {
                let left = lam.hook(Cell::new(i as u32, j - 1)).unwrap();
                let here = lam.hook(Cell::new(i as u32, j)).unwrap();
                prop_assert!(left > here);
            }
        }
    }

    #[test]
    fn union_preserves_dominance(
        a in partition_strategy(6, 5),
        b in partition_strategy(6, 5),
        t in partition_strategy(6, 5),
    ) {
        // the division algorithm peels leading terms through this fact
        if a.dominance_leq(&b) {
            prop_assert!(a.union(&t).dominance_leq(&b.union(&t)));
        }
    }

    #[test]
    fn core_round_trip_random(lam in partition_strategy(3, 10)) {
        let ctx = LevelContext::new(3).unwrap();
        let core = kkschur::cores::to_core(&ctx, &lam).unwrap();
        prop_assert_eq!(kkschur::cores::to_bounded(&ctx, &core).unwrap(), lam);
    }

    #[test]
    fn multiply_agrees_with_h_monomial_oracle(
        f in bounded_sym_func(3),
        g in bounded_sym_func(3),
    ) {
        let ctx = LevelContext::new(3).unwrap();
        let primary = ring::multiply(&ctx, &f, &g).unwrap();
        let brute = oracle::multiply_h(&ctx, &f, &g).unwrap();
        prop_assert_eq!(primary, brute);
    }

    #[test]
    fn divide_undoes_multiply(
        f in bounded_sym_func(3),
        d in bounded_sym_func(3),
    ) {
        let ctx = LevelContext::new(3).unwrap();
        prop_assume!(!d.is_zero());
        let product = ring::multiply(&ctx, &f, &d).unwrap();
        let quotient = ring::divide_exact(&ctx, &product, &d).unwrap();
        prop_assert_eq!(quotient, f);
    }

    #[test]
    fn divide_agrees_with_h_monomial_oracle(
        f in bounded_sym_func(3),
        d in bounded_sym_func(3),
    ) {
        let ctx = LevelContext::new(3).unwrap();
        prop_assume!(!d.is_zero());
        let product = ring::multiply(&ctx, &f, &d).unwrap();
        let primary = ring::divide_exact(&ctx, &product, &d).unwrap();
        let brute = oracle::divide_h(&ctx, &product, &d).unwrap();
        prop_assert_eq!(primary, brute);
    }

    #[test]
    fn symfunc_json_round_trips(f in bounded_sym_func(3)) {
        let json = serde_json::to_string(&f).unwrap();
        let back: SymFunc = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, f);
    }
}
