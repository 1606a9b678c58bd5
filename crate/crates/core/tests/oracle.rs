mod common;

use num_bigint::BigInt;
use tambara_core::oracle::{decompose, induce, map_set, product, realize, ConcreteGSet, DEFAULT_MAP_BUDGET};
use tambara_core::subgroups::divisors;
use tambara_core::tambara::{norm, restrict, transfer};
use tambara_core::{BurnsideElement, Error, Parallelism};

/// Every non-negative element at level `h` with total cardinality at most `max_size`.
fn small_gsets(h: u64, max_size: u64) -> Vec<BurnsideElement> {
    let ds = divisors(h).unwrap();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64, Vec::<(u64, i64)>::new())];
    while let Some((idx, size, terms)) = stack.pop() {
        if idx == ds.len() {
            out.push(BurnsideElement::from_coeffs(h, terms).unwrap());
            continue;
        }
        let orbit = h / ds[idx];
        let mut m = 0;
        while size + m * orbit <= max_size {
            let mut t = terms.clone();
            t.push((ds[idx], m as i64));
            stack.push((idx + 1, size + m * orbit, t));
            m += 1;
        }
    }
    out
}

/// The restriction of a `C_h`-set to `C_j`: the generator of `C_j` is `g^{h/j}`.
fn restrict_set(s: &ConcreteGSet, j: u64) -> ConcreteGSet {
    let e = s.level() / j;
    let action = (0..s.size())
        .map(|mut x| {
            for _ in 0..e {
                x = s.action()[x];
            }
            x
        })
        .collect();
    ConcreteGSet::new(j, action).unwrap()
}

#[test]
fn marks_count_fixed_points() {
    for h in [1u64, 2, 6, 8, 12] {
        for x in small_gsets(h, 12) {
            let s = realize(&x).unwrap();
            assert_eq!(BigInt::from(s.size()), x.cardinality());
            for i in divisors(h).unwrap() {
                assert_eq!(BigInt::from(s.fixed_points(i).unwrap()), x.mark(i).unwrap(), "{x} at C_{i}");
            }
        }
    }
}

#[test]
fn products_match_multiplication() {
    for h in [2u64, 4, 6, 12] {
        let xs = small_gsets(h, 6);
        for x in &xs {
            for y in &xs {
                let s = product(&realize(x).unwrap(), &realize(y).unwrap()).unwrap();
                assert_eq!(decompose(&s), x.mul(y).unwrap());
            }
        }
    }
}

#[test]
fn transfer_and_restriction_match_the_oracle() {
    for n in [4u64, 6, 12, 18] {
        for h in divisors(n).unwrap() {
            for k in divisors(h).unwrap() {
                for x in small_gsets(k, 6) {
                    let s = realize(&x).unwrap();
                    assert_eq!(decompose(&induce(&s, h).unwrap()), transfer(&x, h).unwrap());
                }
                for x in small_gsets(h, 8) {
                    let s = realize(&x).unwrap();
                    assert_eq!(decompose(&restrict_set(&s, k)), restrict(&x, k).unwrap(), "{x} to C_{k}");
                }
            }
        }
    }
}

#[test]
fn norm_matches_mapping_sets() {
    for n in [2u64, 3, 4, 6, 8, 12] {
        for h in divisors(n).unwrap() {
            for k in divisors(h).unwrap() {
                for x in small_gsets(k, 4) {
                    let s = realize(&x).unwrap();
                    match map_set(&s, h, DEFAULT_MAP_BUDGET, Parallelism::default()) {
                        Ok(m) => assert_eq!(decompose(&m), norm(&x, h).unwrap(), "N_{k}^{h} {x}"),
                        Err(Error::BudgetExceeded { .. }) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn sequential_and_parallel_mapping_sets_agree() {
    let x = realize(&common::el(2, &[(1, 1), (2, 1)])).unwrap();
    let a = map_set(&x, 12, DEFAULT_MAP_BUDGET, Parallelism::Sequential).unwrap();
    let b = map_set(&x, 12, DEFAULT_MAP_BUDGET, Parallelism::Parallel).unwrap();
    assert_eq!(a, b);
}
