#![allow(dead_code)]

use proptest::prelude::*;
use tambara_core::subgroups::divisors;
use tambara_core::BurnsideElement;

pub fn el(level: u64, terms: &[(u64, i64)]) -> BurnsideElement {
    BurnsideElement::from_coeffs(level, terms.iter().copied()).unwrap()
}

/// A random element at level `h` with coefficients in `[-bound, bound]`.
pub fn element_at(h: u64, bound: i64) -> impl Strategy<Value = BurnsideElement> {
    let ds = divisors(h).unwrap();
    prop::collection::vec(-bound..=bound, ds.len()).prop_map(move |cs| {
        BurnsideElement::from_coeffs(h, ds.iter().copied().zip(cs)).unwrap()
    })
}

/// A divisor `h` of some `n <= max_n`, paired with an element at that level.
pub fn level_and_element(max_n: u64, bound: i64) -> impl Strategy<Value = (u64, BurnsideElement)> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::sample::select(divisors(n).unwrap())))
        .prop_flat_map(move |(n, h)| (Just(n), element_at(h, bound)))
}

/// A target level `h` together with an element at some `k | h`.
pub fn lift(max_n: u64, bound: i64) -> impl Strategy<Value = (u64, BurnsideElement)> {
    (1..=max_n)
        .prop_flat_map(|h| (Just(h), prop::sample::select(divisors(h).unwrap())))
        .prop_flat_map(move |(h, k)| (Just(h), element_at(k, bound)))
}

/// A pair `j | h` together with an element at `h`.
pub fn tower(max_n: u64, bound: i64) -> impl Strategy<Value = (u64, BurnsideElement)> {
    (1..=max_n)
        .prop_flat_map(move |h| (prop::sample::select(divisors(h).unwrap()), element_at(h, bound)))
}

/// An element at a random level dividing `n`.
pub fn level_of(n: u64, bound: i64) -> impl Strategy<Value = BurnsideElement> {
    prop::sample::select(divisors(n).unwrap()).prop_flat_map(move |h| element_at(h, bound))
}
