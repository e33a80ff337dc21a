mod common;

use std::collections::BTreeSet;

use common::*;
use modulilog::{
    build_a, check_avoidance, classify_intersection, random_convergent_avector, AVector, AlphaType, Intersection,
    MarkedSet, StablePartition, ViolationSource,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn named(n: usize, marks: &[&str]) -> StablePartition {
    let marks: Vec<_> = marks.iter().map(|m| m.parse().unwrap()).collect();
    StablePartition::new(MarkedSet::new(n).unwrap(), &marks).unwrap()
}

/// Boundary components by filtering all partitions: the side holding the
/// anchor may only add marks s_i from the allowed set.
fn boundary_oracle(a: &AVector) -> BTreeSet<(Side, AlphaType)> {
    let n = a.n();
    let total = n + 3;
    let mut out = BTreeSet::new();
    for side in all_stable(n) {
        let other: Side = (0..total).filter(|i| !side.contains(i)).collect();
        for (alpha, anchor) in [(AlphaType::Zero, 0), (AlphaType::One, n + 1), (AlphaType::Infinity, n + 2)] {
            let holder = if side.contains(&anchor) { &side } else { &other };
            let ok = holder.iter().filter(|&&p| p != anchor).all(|&p| {
                (1..=n).contains(&p)
                    && match alpha {
                        AlphaType::Zero => a.is_zero_at(p),
                        AlphaType::One => a.is_one_at(p),
                        AlphaType::Infinity => true,
                    }
            });
            if ok {
                out.insert((side.clone(), alpha));
            }
        }
    }
    out
}

#[test]
fn build_a_matches_filter_oracle_and_count_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=4 {
        for _ in 0..40 {
            let values: Vec<Complex64> = (0..n)
                .map(|_| match rng.random_range(0..3) {
                    0 => c(0.0, 0.0),
                    1 => c(1.0, 0.0),
                    _ => c(rng.random_range(-1.0..2.0), 0.5),
                })
                .collect();
            let a = AVector::new(values).unwrap();
            let locus = build_a(&a).unwrap();
            let got: BTreeSet<(Side, AlphaType)> =
                locus.boundary.iter().map(|b| (side_of(&b.partition), b.alpha)).collect();
            assert_eq!(got.len(), locus.boundary.len(), "duplicates for {a:?}");
            assert_eq!(got, boundary_oracle(&a));
            let zeros = (1..=n).filter(|&i| a.is_zero_at(i)).count() as u32;
            let ones = (1..=n).filter(|&i| a.is_one_at(i)).count() as u32;
            let expect = (1usize << zeros) - 1 + (1usize << ones) - 1 + (1usize << n) - 1;
            assert_eq!(locus.boundary.len(), expect);
            // the full type-inf part leaves {0, 1}, which is still stable
            let all_s: Vec<String> = (1..=n).map(|i| format!("s{i}")).chain(["inf".to_string()]).collect();
            let all_s: Vec<&str> = all_s.iter().map(String::as_str).collect();
            assert_eq!(locus.contains_partition(&named(n, &all_s)), Some(AlphaType::Infinity));
            let fibers = (1..=n).filter(|&i| !a.is_zero_at(i) && !a.is_one_at(i)).count();
            assert_eq!(locus.nonboundary.len(), fibers);
            if a.is_convergent() {
                assert!(locus.boundary.iter().all(|b| !b.partition.is_strictly_ordered()));
            }
        }
    }
}

#[test]
fn dilogarithm_divisor_lemma() {
    let d_inf_1 = named(2, &["inf", "s1"]);
    let d_inf_2 = named(2, &["inf", "s2"]);
    let d_inf = named(2, &["inf", "s1", "s2"]);
    let d_0_2 = named(2, &["0", "s2"]);
    let d_1_1 = named(2, &["1", "s1"]);

    let z = c(0.3, 0.2);
    let locus = build_a(&AVector::new(vec![z.inv(), c(0.0, 0.0)]).unwrap()).unwrap();
    let got: BTreeSet<_> = locus.boundary.iter().map(|b| b.partition).collect();
    assert_eq!(got, BTreeSet::from([d_inf_1, d_inf_2, d_inf, d_0_2]));
    assert_eq!(locus.nonboundary.len(), 1);
    assert_eq!((locus.nonboundary[0].index, locus.nonboundary[0].value), (1, z.inv()));

    let locus = build_a(&AVector::from_real(&[1.0, 0.0]).unwrap()).unwrap();
    let got: BTreeSet<_> = locus.boundary.iter().map(|b| b.partition).collect();
    assert_eq!(got, BTreeSet::from([d_inf_1, d_inf_2, d_inf, d_0_2, d_1_1]));
    assert!(locus.nonboundary.is_empty());
}

#[test]
fn base_case_is_point_and_infinity() {
    let locus = build_a(&AVector::new(vec![c(0.4, -1.0)]).unwrap()).unwrap();
    assert_eq!(locus.boundary.len(), 1);
    assert_eq!(locus.boundary[0].partition, named(1, &["inf", "s1"]));
    assert_eq!(locus.nonboundary[0].value, c(0.4, -1.0));
}

#[test]
fn classify_agrees_with_restriction_oracle() {
    for n in 1..=4 {
        let total = n + 3;
        for side in all_stable(n) {
            let sigma = partition_of(n, &side);
            for i in 1..=n {
                let four = [0, i, n + 1, n + 2];
                let inside = four.iter().filter(|p| side.contains(p)).count();
                let got = classify_intersection(i, c(0.5, 0.5), &sigma).unwrap();
                match got {
                    Intersection::Empty => assert_eq!(inside, 2),
                    Intersection::Product { big_side, t_mark } => {
                        assert_ne!(inside, 2);
                        let names = names(n);
                        let big: Side =
                            big_side.iter().map(|m| names.iter().position(|s| *s == m.to_string()).unwrap()).collect();
                        // the big side holds at least three of the four points
                        assert!(four.iter().filter(|p| big.contains(p)).count() >= 3);
                        let t = names.iter().position(|s| *s == t_mark.to_string()).unwrap();
                        assert!(!big.contains(&t) && t < total);
                    }
                }
            }
        }
    }
    let sigma = named(2, &["0", "s1"]);
    assert!(classify_intersection(1, c(1.0, 0.0), &sigma).is_err());
}

#[test]
fn avoidance_sweep_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 1..=4 {
        for _ in 0..25 {
            let a = random_convergent_avector(n, &mut rng).unwrap();
            let report = check_avoidance(&a).unwrap();
            assert!(report.convergent);
            assert!(report.violations.is_empty(), "{a:?}: {:?}", report.violations);
        }
    }
}

#[test]
fn flags_are_sharp() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in 1..=4 {
        for _ in 0..10 {
            let mut v = random_convergent_avector(n, &mut rng).unwrap().values().to_vec();
            v[0] = c(0.0, 0.0);
            let r = check_avoidance(&AVector::new(v).unwrap()).unwrap();
            assert!(!r.convergent && !r.violations.is_empty());
            let zero_first = named(n, &["0", "s1"]);
            assert!(r.violations.iter().any(|x| matches!(
                &x.source,
                ViolationSource::Boundary { partition, alpha: AlphaType::Zero } if *partition == zero_first
            )));

            let mut v = random_convergent_avector(n, &mut rng).unwrap().values().to_vec();
            v[n - 1] = c(1.0, 0.0);
            let r = check_avoidance(&AVector::new(v).unwrap()).unwrap();
            assert!(!r.violations.is_empty());
        }
    }
}

#[test]
fn report_json_shape() {
    let a = AVector::from_real(&[0.5, 0.3, 2.0]).unwrap();
    let r = check_avoidance(&a).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    for key in ["n", "a", "boundary_components", "nonboundary", "faces_checked", "violations"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["violations"], serde_json::json!([]));
}
