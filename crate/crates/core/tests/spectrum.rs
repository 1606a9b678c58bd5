use tambara_core::primality::{simple_generator_identity, tambara_generator_check};
use tambara_core::spectrum::{
    contains, contains_semantic, default_primes, dress_spectrum, enumerate, export_dot, export_json,
    from_json, krull_dimension, parse_primes,
};
use tambara_core::subgroups::{big_omega, divisors, is_prime};
use tambara_core::IdealSpec;

const SIZES: [u64; 6] = [4, 6, 8, 12, 18, 30];

#[test]
fn symbolic_and_semantic_containment_agree() {
    let primes = parse_primes("0,2,3,5,7").unwrap();
    for n in SIZES {
        let poset = enumerate(n, &primes).unwrap();
        let specs: Vec<IdealSpec> = poset
            .points
            .iter()
            .map(|pt| IdealSpec::new(n, pt.c, pt.p.get()).unwrap())
            .collect();
        for a in &specs {
            for b in &specs {
                assert_eq!(contains(a, b).unwrap(), contains_semantic(a, b).unwrap(), "C_{n}: {a} in {b}");
            }
        }
        assert!(poset.mutual_pairs().is_empty());
        assert!(poset.is_preorder());
    }
}

#[test]
fn merged_members_are_semantically_equal() {
    let primes = parse_primes("2,3,5").unwrap();
    for n in SIZES {
        for pt in enumerate(n, &primes).unwrap().points {
            let canon = IdealSpec::new(n, pt.c, pt.p.get()).unwrap();
            for &d in &pt.merged {
                let other = IdealSpec::new(n, d, pt.p.get()).unwrap();
                assert!(contains_semantic(&canon, &other).unwrap() && contains_semantic(&other, &canon).unwrap());
            }
        }
    }
}

#[test]
fn hasse_closure_recovers_the_relation() {
    for n in SIZES {
        let poset = enumerate(n, &default_primes(n).unwrap()).unwrap();
        let rebuilt = from_json(&export_json(&poset)).unwrap();
        assert_eq!(rebuilt.relation, poset.relation, "C_{n}");
        assert_eq!(export_dot(&rebuilt), export_dot(&poset));
    }
}

#[test]
fn krull_dimension_is_omega_plus_one() {
    for n in 1..=40u64 {
        let poset = enumerate(n, &default_primes(n).unwrap()).unwrap();
        assert_eq!(krull_dimension(&poset) as u32, big_omega(n) + 1, "C_{n}");
        let dress = dress_spectrum(n, &default_primes(n).unwrap()).unwrap();
        assert_eq!(dress.len(), poset.len());
        assert_eq!(krull_dimension(&dress), 1);
    }
}

#[test]
fn generator_checks_pass_for_canonical_specs() {
    for n in [4u64, 6, 8, 12] {
        let poset = enumerate(n, &parse_primes("0,2,3,5,7").unwrap()).unwrap();
        for pt in &poset.points {
            let spec = IdealSpec::new(n, pt.c, pt.p.get()).unwrap();
            let report = tambara_generator_check(&spec).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }
}

#[test]
fn simple_generator_identities_hold_on_prime_index_pairs() {
    for n in [4u64, 6, 8, 12, 30] {
        for h in divisors(n).unwrap() {
            for k in divisors(h).unwrap() {
                if !is_prime(h / k) {
                    continue;
                }
                for p in [2u64, 3, 5, 7] {
                    assert!(simple_generator_identity(k, h, p).unwrap(), "{k} -> {h}, p={p}");
                }
            }
        }
    }
}
