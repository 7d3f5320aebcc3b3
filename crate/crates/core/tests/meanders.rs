use meander_core::meanders::*;
use meander_core::oracle::loop_count_geometric;
use meander_core::partitions::*;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn nth_nc(n: usize, k: u64) -> NcPartition {
    let count: u64 = catalan(n).try_into().unwrap();
    enumerate_nc(n).unwrap().nth((k % count) as usize).unwrap()
}

fn arb_pair() -> impl Strategy<Value = (NcPartition, NcPartition)> {
    (1usize..=10, any::<u64>(), any::<u64>()).prop_map(|(n, a, b)| (nth_nc(n, a), nth_nc(n, b)))
}

#[test]
fn loop_count_matches_curves_exhaustively() {
    for n in 1..=6 {
        let all: Vec<NcPartition> = enumerate_nc(n).unwrap().collect();
        for a in &all {
            for b in &all {
                assert_eq!(
                    loop_count(a, b).unwrap(),
                    loop_count_geometric(a, b).unwrap()
                );
            }
        }
    }
}

#[test]
fn comb_formula_matches_cycle_count() {
    for n in 1..=8 {
        let betas: Vec<NcPartition> = enumerate_nc(n).unwrap().collect();
        let mut admissible = 0;
        for q in enumerate_kr_interval(n).unwrap() {
            for b in &betas {
                match loop_count_comb(&q, b) {
                    Ok(k) => {
                        admissible += 1;
                        assert_eq!(
                            k,
                            loop_count(&q.to_partition(), b).unwrap(),
                            "Q = {q}, beta = {b}"
                        );
                    }
                    Err(meander_core::Error::MeetNotTrivial(hits)) => {
                        assert!(hits.iter().all(|&x| q.contains(x - 1)));
                        assert!(b.block_containing(n - 1).contains(&(hits[0] - 1)));
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert!(admissible >= betas.len());
    }
}

#[test]
fn polynomial_totals_are_class_sizes() {
    for class in MeanderClass::ALL {
        for n in 1..=7 {
            let p = meander_polynomial(class, n).unwrap();
            assert_eq!(p.total(), class.pair_count(n), "{class} n = {n}");
        }
    }
}

#[test]
fn full_polynomial_is_kreweras_invariant() {
    // Applying the complement to both sides permutes NC(n)², so the
    // histogram over pairs of complements is the same.
    for n in 1..=7 {
        let all: Vec<NcPartition> = enumerate_nc(n).unwrap().collect();
        let mut hist = vec![0u64; n + 1];
        for a in &all {
            let ka = a.kreweras();
            for b in &all {
                hist[loop_count(&ka, &b.kreweras()).unwrap()] += 1;
            }
        }
        let p = meander_polynomial(MeanderClass::Full, n).unwrap();
        for (k, &count) in hist.iter().enumerate().skip(1) {
            assert_eq!(BigUint::from(count), p.coeff(k));
        }
    }
}

#[test]
fn known_meander_numbers() {
    // One-loop systems of NC(n)²: the meandric numbers 1, 2, 8, 42, 262, 1828.
    let expect = [1u32, 2, 8, 42, 262, 1828];
    for (i, &m) in expect.iter().enumerate() {
        let p = meander_polynomial(MeanderClass::Full, i + 1).unwrap();
        assert_eq!(p.coeff(1), BigUint::from(m));
    }
}

#[test]
fn gnp_counts_sum_to_shallow_top_meanders() {
    for n in 1..=9 {
        let p = meander_polynomial(MeanderClass::ShallowTop, n).unwrap();
        let sum: BigUint = (1..=n).map(|m| gnp_count(n, m).unwrap()).sum();
        assert_eq!(sum, p.coeff(1), "n = {n}");
    }
}

#[test]
fn thin_polynomial_closed_form() {
    for n in 1..=12 {
        let p = meander_polynomial(MeanderClass::Thin, n).unwrap();
        for k in 1..=n {
            assert_eq!(p.coeff(k), thin_count(n, k).unwrap());
        }
        let two = BigInt::from(2);
        assert_eq!(
            p.evaluate(&two),
            BigInt::from(2) * BigInt::from(6).pow(n as u32 - 1)
        );
    }
}

#[test]
fn semi_distribution_closed_form() {
    for n in 1..=14 {
        assert_eq!(
            meander_polynomial(MeanderClass::SemiShallowTop, n).unwrap(),
            semi_loop_distribution(n).unwrap(),
            "n = {n}"
        );
    }
}

proptest! {
    #[test]
    fn kreweras_preserves_loops((a, b) in arb_pair()) {
        let before = loop_count(&a, &b).unwrap();
        prop_assert_eq!(before, loop_count(&a.kreweras(), &b.kreweras()).unwrap());
        prop_assert_eq!(before, loop_count(&b, &a).unwrap());
    }

    #[test]
    fn loops_have_the_parity_of_the_norms((a, b) in arb_pair()) {
        let n = a.n();
        let loops = loop_count(&a, &b).unwrap();
        prop_assert!(loops >= 1 && loops <= n);
        // ‖α⁻¹β‖ ≡ ‖α‖ + ‖β‖ (mod 2), and ‖α⁻¹β‖ ≤ ‖α‖ + ‖β‖.
        let r = n - loops;
        prop_assert_eq!(r % 2, (a.norm() + b.norm()) % 2);
        prop_assert!(r <= a.norm() + b.norm());
    }

    #[test]
    fn self_pairs_have_n_loops(a in (1usize..=10, any::<u64>()).prop_map(|(n, k)| nth_nc(n, k))) {
        prop_assert_eq!(loop_count(&a, &a).unwrap(), a.n());
        prop_assert_eq!(loop_count(&a, &NcPartition::full(a.n())).unwrap(), a.norm() + 1);
    }
}
