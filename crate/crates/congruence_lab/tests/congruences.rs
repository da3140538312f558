use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use congruence_lab::*;
use overpartition_ranks::{pbar_values, rank_table_bruteforce, residue_table, residue_table_direct};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Quadratic residues mod p by squaring every class.
fn is_square_mod(a: i64, p: i64) -> bool {
    (1..p).any(|x| (x * x - a).rem_euclid(p) == 0)
}

#[test]
fn twist_support_matches_squares() {
    for ell in [5u64, 7, 11, 13] {
        let seq: Vec<i64> = (1..=200).collect();
        let tw = twist_restrict(&seq, ell);
        for (n, (&a, &b)) in seq.iter().zip(&tw).enumerate() {
            let m = n as i64;
            let keep = m % ell as i64 != 0 && !is_square_mod(-m, ell as i64);
            assert_eq!(b, if keep { a } else { 0 }, "ℓ={ell} n={n}");
        }
        assert_eq!(twist_restrict(&tw, ell), tw);
    }
    // ℓ = 5: exactly n ≡ 2, 3
    let seq = vec![1i64; 30];
    let tw = twist_restrict(&seq, 5);
    for (n, &c) in tw.iter().enumerate() {
        assert_eq!(c == 1, n % 5 == 2 || n % 5 == 3);
    }
}

#[test]
fn deficiency_examples() {
    let one = residue_table_direct(1, 40).unwrap();
    assert!(deficiency_series(0, 40, &one).unwrap().is_zero());

    let five = residue_table_direct(5, 40).unwrap();
    let d0 = deficiency_series(0, 40, &five).unwrap();
    assert_eq!(d0.coeff_int(0), rat(4, 5));
    for r in 1..5 {
        assert_eq!(deficiency_series(r, 40, &five).unwrap().coeff_int(0), rat(-1, 5));
    }
    let mut sum = deficiency_series(0, 40, &five).unwrap();
    for r in 1..5 {
        sum = &sum + &deficiency_series(r, 40, &five).unwrap();
    }
    assert!(sum.is_zero());
    assert!(matches!(deficiency_series(0, 41, &five), Err(CongruenceError::InsufficientTable { .. })));
}

#[test]
fn seeded_false_claim_is_rejected() {
    let table = residue_table_direct(3, 100).unwrap();
    let claim = CongruenceClaim::all_residues(5, 0, 3, 5, 1).unwrap();
    let rep = verify_claim(&claim, &table, 20).unwrap();
    assert_eq!(rep.status, Status::Fail(0));
    let c = rep.counterexample.clone().unwrap();
    assert_eq!((c.n, c.r, c.value.as_str()), (0, 0, "1"));
    let json = serde_json::to_value(&rep).unwrap();
    assert_eq!(json["status"], "FAIL(0)");
    assert_eq!(json["claim"]["A"], 5);
}

#[test]
fn shifted_false_claim_fails_early() {
    // 5n+1: N̄(0,3;1) = 2 is not divisible by 5
    let table = residue_table_direct(3, 100).unwrap();
    let claim = CongruenceClaim::all_residues(5, 1, 3, 5, 1).unwrap();
    assert_eq!(verify_claim(&claim, &table, 10).unwrap().status, Status::Fail(0));
}

#[test]
fn t_one_reduces_to_pbar() {
    let table = residue_table_direct(1, 400).unwrap();
    let p = pbar_values(400);
    for (ell, j) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (5, 1)] {
        let m = BigInt::from(ell).pow(j);
        for a in 1..=8u64 {
            for b in 0..a {
                let claim = CongruenceClaim::all_residues(a, b, 1, ell, j).unwrap();
                let rep = verify_claim(&claim, &table, 40).unwrap();
                let first_bad = (0..=40usize).find(|&n| !p[a as usize * n + b as usize].is_multiple_of(&m));
                let want = first_bad.map_or(Status::PassToBound, Status::Fail);
                assert_eq!(rep.status, want, "{a}n+{b} mod {ell}^{j}");
                assert_eq!(rep.aggregate, want);
            }
        }
    }
}

#[test]
fn t_one_scan_matches_direct_pbar_scan() {
    let table = residue_table_direct(1, 400).unwrap();
    let p = pbar_values(400);
    let m = BigInt::from(8);
    let mut want = Vec::new();
    for a in 1..=9u64 {
        for b in 0..a {
            if (0..=30usize).all(|n| p[a as usize * n + b as usize].is_multiple_of(&m)) {
                want.push((a, b));
            }
        }
    }
    let hits = scan_progressions(1, 2, 3, 9, 30, &table).unwrap();
    let got: Vec<_> = hits.iter().map(|h| (h.claim.a, h.claim.b)).collect();
    assert_eq!(got, want);
    assert!(!got.is_empty());
    assert!(hits.iter().all(|h| h.status == Status::Empirical));
}

#[test]
fn scans_are_self_consistent() {
    let table = residue_table_direct(3, 400).unwrap();
    let pbar = pbar_values(400);
    let wide = scan_progressions(3, 2, 2, 12, 20, &table).unwrap();
    let narrow = scan_progressions(3, 2, 2, 12, 30, &table).unwrap();
    for h in &wide {
        let rep = verify_claim(&h.claim, &table, 20).unwrap();
        assert_eq!(rep.status, Status::PassToBound);
        assert_eq!(rep.aggregate, Status::PassToBound);
        assert!(decomposition_holds(&table, h.claim.a, h.claim.b, 20, &pbar));
    }
    for h in &narrow {
        assert!(wide.iter().any(|w| w.claim == h.claim));
    }
    assert_eq!(serde_json::to_value(&wide).unwrap().as_array().unwrap().len(), wide.len());
}

#[test]
fn decomposition_on_every_progression() {
    let table = residue_table_direct(5, 300).unwrap();
    let pbar = pbar_values(300);
    for a in 1..=10 {
        for b in 0..a {
            assert!(decomposition_holds(&table, a, b, 29, &pbar));
        }
    }
    let broken: Vec<BigInt> = pbar.iter().map(|x| x + BigInt::one()).collect();
    assert!(!decomposition_holds(&table, 2, 1, 10, &broken));
}

#[test]
fn rank_difference_examples() {
    let table = residue_table_direct(5, 200).unwrap();
    assert!(rank_difference(5, 3, 3, 1, 200, &table).unwrap().series.is_zero());
    assert!(rank_difference(5, 0, 2, 2, 200, &table).unwrap().series.is_zero());
    let r = rank_difference(5, 1, 2, 2, 200, &table).unwrap();
    assert_eq!(r.series.coeff_int(2), BigInt::from(2));
    assert!(r.series.terms().all(|(e, _)| e % 5 == 2));
    assert!(rank_difference(5, 1, 5, 2, 200, &table).is_err());
    assert!(rank_difference(3, 1, 2, 2, 200, &table).is_err());
}

#[test]
fn rank_difference_against_enumeration() {
    let bf = rank_table_bruteforce(30).unwrap();
    let table = residue_table(5, 30, &bf).unwrap();
    let direct = residue_table_direct(5, 30).unwrap();
    for (s1, s2, d) in [(1, 2, 2), (0, 2, 3), (1, 2, 4), (0, 1, 0)] {
        assert_eq!(
            rank_difference(5, s1, s2, d, 30, &table).unwrap(),
            rank_difference(5, s1, s2, d, 30, &direct).unwrap()
        );
    }
}

#[test]
fn prime_template_hypotheses() {
    let table = residue_table_direct(5, 2000).unwrap();
    // (−2/5) = −1 and 19 ≡ −1 mod 5; 19³ > 2000 so nothing is in reach
    let rep = verify_prime_template(5, 1, 1, 2, 19, &table).unwrap();
    assert_eq!((rep.checked, rep.status), (0, Status::PassToBound));
    assert!(verify_prime_template(5, 1, 1, 1, 19, &table).is_err());
    assert!(verify_prime_template(5, 1, 1, 2, 11, &table).is_err());
    assert!(verify_prime_template(3, 1, 1, 2, 5, &table).is_err());
}

#[test]
fn claim_validation() {
    assert!(CongruenceClaim::all_residues(5, 5, 3, 5, 1).is_err());
    assert!(CongruenceClaim::all_residues(5, 1, 3, 4, 1).is_err());
    assert!(CongruenceClaim::all_residues(5, 1, 3, 5, 0).is_err());
    assert!(CongruenceClaim::new(5, 1, 3, 5, 1, vec![3]).is_err());
    let table = residue_table_direct(3, 50).unwrap();
    let c = CongruenceClaim::all_residues(5, 1, 3, 5, 1).unwrap();
    assert!(matches!(verify_claim(&c, &table, 10), Err(CongruenceError::InsufficientTable { wanted: 51, have: 50 })));
    for s in ["PASS_TO_BOUND", "EMPIRICAL", "FAIL(12)"] {
        assert_eq!(s.parse::<Status>().unwrap().to_string(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn twist_is_linear(a in prop::collection::vec(-50i64..50, 60), b in prop::collection::vec(-50i64..50, 60),
                       x in -5i64..5, y in -5i64..5, ell in prop_oneof![Just(5u64), Just(7)]) {
        let combo: Vec<i64> = a.iter().zip(&b).map(|(p, q)| x * p + y * q).collect();
        let lhs = twist_restrict(&combo, ell);
        let ta = twist_restrict(&a, ell);
        let tb = twist_restrict(&b, ell);
        let rhs: Vec<i64> = ta.iter().zip(&tb).map(|(p, q)| x * p + y * q).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counts_bounded_and_deficiencies_cancel(t in 1u32..9, n in 0usize..120) {
        let table = residue_table_direct(t, 120).unwrap();
        let p = pbar_values(120);
        let mut total = BigRational::zero();
        for r in 0..t {
            let c = table.count(r as i64, n);
            prop_assert!(c >= &BigInt::zero() && c <= &p[n]);
            total += deficiency_series(r, 120, &table).unwrap().coeff_int(n as i64);
        }
        prop_assert!(total.is_zero());
    }

    #[test]
    fn verify_is_monotone(a in 1u64..8, b_off in 0u64..8, j in 1u32..3, n_max in 0usize..30) {
        let b = b_off % a;
        let table = residue_table_direct(3, 300).unwrap();
        let claim = CongruenceClaim::all_residues(a, b, 3, 2, j).unwrap();
        let rep = verify_claim(&claim, &table, n_max).unwrap();
        if rep.status == Status::PassToBound {
            for m in 0..=n_max {
                prop_assert_eq!(verify_claim(&claim, &table, m).unwrap().status, Status::PassToBound);
            }
            prop_assert_eq!(rep.aggregate, Status::PassToBound);
        }
    }

    #[test]
    fn rank_differences_add(s1 in 0u32..5, s2 in 0u32..5, s3 in 0u32..5, d in 0u32..5) {
        let table = residue_table_direct(5, 150).unwrap();
        let r12 = rank_difference(5, s1, s2, d, 150, &table).unwrap().series;
        let r23 = rank_difference(5, s2, s3, d, 150, &table).unwrap().series;
        let r13 = rank_difference(5, s1, s3, d, 150, &table).unwrap().series;
        prop_assert_eq!(&r12 + &r23, r13);
    }
}
