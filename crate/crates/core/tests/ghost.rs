mod common;

use common::{el, element_at, lift, tower};
use num_bigint::BigInt;
use proptest::prelude::*;
use tambara_core::subgroups::divisors;
use tambara_core::tambara::{ghost_res, ghost_tr, norm, norm_ghost, restrict, transfer};
use tambara_core::{BurnsideElement, Error, GhostVector};

proptest! {
    #[test]
    fn ghost_is_a_ring_homomorphism(
        (x, y) in (1u64..=30).prop_flat_map(|h| (element_at(h, 6), element_at(h, 6)))
    ) {
        prop_assert_eq!(x.add(&y).unwrap().ghost(), x.ghost().add(&y.ghost()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().ghost(), x.ghost().mul(&y.ghost()).unwrap());
    }

    #[test]
    fn unghost_inverts_ghost(x in (1u64..=60).prop_flat_map(|h| element_at(h, 9))) {
        prop_assert_eq!(x.ghost().unghost().unwrap(), x);
    }

    #[test]
    fn restriction_commutes_with_ghost((j, x) in tower(30, 5)) {
        prop_assert_eq!(restrict(&x, j).unwrap().ghost(), ghost_res(&x.ghost(), j).unwrap());
    }

    #[test]
    fn transfer_and_norm_commute_with_ghost((h, x) in lift(30, 4)) {
        prop_assert_eq!(transfer(&x, h).unwrap().ghost(), ghost_tr(&x.ghost(), h).unwrap());
        prop_assert_eq!(norm(&x, h).unwrap().ghost(), norm_ghost(&x.ghost(), h).unwrap());
    }

    #[test]
    fn norm_is_multiplicative(
        (h, x, y) in (1u64..=24).prop_flat_map(|h| (Just(h), prop::sample::select(divisors(h).unwrap())))
            .prop_flat_map(|(h, k)| (Just(h), element_at(k, 3), element_at(k, 3)))
    ) {
        let lhs = norm(&x.mul(&y).unwrap(), h).unwrap();
        let rhs = norm(&x, h).unwrap().mul(&norm(&y, h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
#[test]
fn t_rule_matches_ghost() {
    for h in [1u64, 6, 12, 30, 36] {
        let ds = divisors(h).unwrap();
        for &x in &ds {
            for &y in &ds {
                let tx = BurnsideElement::from_t(h, x).unwrap();
                let ty = BurnsideElement::from_t(h, y).unwrap();
                let product = tx.mul(&ty).unwrap();
                assert_eq!(product.ghost(), tx.ghost().mul(&ty.ghost()).unwrap());
                let g = num_integer::gcd(x, y);
                let expected = BurnsideElement::from_t(h, num_integer::lcm(x, y))
                    .unwrap()
                    .scale(&BigInt::from(g));
                assert_eq!(product, expected);
            }
        }
    }
}

#[test]
fn non_integral_ghost_vectors_are_rejected() {
    // (1, 0) at level 2: the free orbit would need coefficient 1/2
    let v = GhostVector::new(
        2,
        [(1, BigInt::from(1)), (2, BigInt::from(0))].into_iter().collect(),
    )
    .unwrap();
    assert_eq!(v.unghost(), Err(Error::NotInGhostImage { divisor: 1 }));
    assert_eq!(el(2, &[(1, 1), (2, 1)]).ghost().unghost().unwrap(), el(2, &[(1, 1), (2, 1)]));
}
