use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use overpartition_ranks::*;

fn table200() -> &'static RankTable {
    static T: OnceLock<RankTable> = OnceLock::new();
    T.get_or_init(|| rank_table_lambert(200))
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn op(parts: &[u32], over: &[u32]) -> Overpartition {
    Overpartition::new(parts.to_vec(), over.iter().copied().collect()).unwrap()
}

#[test]
fn the_fourteen_overpartitions_of_four() {
    let want: BTreeSet<Overpartition> = [
        op(&[4], &[]),
        op(&[4], &[4]),
        op(&[3, 1], &[]),
        op(&[3, 1], &[3]),
        op(&[3, 1], &[1]),
        op(&[3, 1], &[3, 1]),
        op(&[2, 2], &[]),
        op(&[2, 2], &[2]),
        op(&[2, 1, 1], &[]),
        op(&[2, 1, 1], &[2]),
        op(&[2, 1, 1], &[1]),
        op(&[2, 1, 1], &[2, 1]),
        op(&[1, 1, 1, 1], &[]),
        op(&[1, 1, 1, 1], &[1]),
    ]
    .into_iter()
    .collect();
    let got = enumerate_overpartitions(4).unwrap();
    assert_eq!(got.len(), 14);
    assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want);
}

#[test]
fn small_enumerations() {
    let zero = enumerate_overpartitions(0).unwrap();
    assert_eq!(zero.len(), 1);
    assert!(zero[0].parts().is_empty());
    assert_eq!(zero[0].rank(), 0);

    let two: BTreeSet<_> = enumerate_overpartitions(2).unwrap().into_iter().collect();
    let want: BTreeSet<_> = [op(&[2], &[]), op(&[2], &[2]), op(&[1, 1], &[]), op(&[1, 1], &[1])].into_iter().collect();
    assert_eq!(two, want);
    assert!(matches!(enumerate_overpartitions(41), Err(RankError::TooLarge { n: 41, .. })));
    assert!(matches!(rank_table_bruteforce(41), Err(RankError::TooLarge { .. })));
}

#[test]
fn enumeration_has_no_duplicates() {
    for n in 0..=14 {
        let all = enumerate_overpartitions(n).unwrap();
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|o| o.size() == n));
    }
}

#[test]
fn pbar_first_terms() {
    let p = pbar_values(4);
    assert_eq!(p, [1, 2, 4, 8, 14].map(big));
    assert_eq!(pbar_series(5).denom(), 1);
}

#[test]
fn pbar_matches_enumeration_and_is_even() {
    let p = pbar_values(30);
    for n in 0..=30u32 {
        let count = enumerate_overpartitions(n).unwrap().len();
        assert_eq!(p[n as usize], big(count as i64), "n={n}");
    }
    for n in 1..=200 {
        assert!((table200().pbar(n) % 2u32).is_zero());
    }
}

#[test]
fn three_routes_agree_to_30() {
    let l = rank_table_lambert(30);
    let e = rank_table_eulerian(30);
    let b = rank_table_bruteforce(30).unwrap();
    assert!(l.diff(&b).is_empty());
    assert!(e.diff(&b).is_empty());
    assert_eq!(l, b);
    assert_eq!(e, b);
}

#[test]
fn lambert_and_eulerian_agree_to_200() {
    let e = rank_table_eulerian(200);
    assert_eq!(table200().diff(&e), vec![]);
}

#[test]
fn symmetry_support_and_row_sums() {
    let t = table200();
    for n in 0..=200 {
        let w = n as i64;
        let mut total = BigInt::zero();
        for (m, c) in t.row(n) {
            total += c;
            assert_eq!(c, &t.count(-m, n));
            if n >= 1 && m.abs() > w - 1 {
                assert!(c.is_zero(), "N̄({m},{n}) should vanish");
            }
        }
        assert_eq!(&total, t.pbar(n));
    }
}

#[test]
fn lambert_series_u_support() {
    let s = rank_series_lambert(60);
    for (n, p) in s.terms() {
        if n >= 1 {
            let (lo, hi) = p.support().unwrap();
            assert!(lo >= -(n - 1) && hi <= n - 1);
        }
    }
    assert_eq!(s.at_u_one(), pbar_series(61));
}

#[test]
fn spot_values() {
    let t = rank_table_bruteforce(6).unwrap();
    assert_eq!(t.count(3, 4), big(2));
    assert_eq!(t.count(0, 4), big(2));
    assert_eq!(t.count(1, 2), big(2));
    assert_eq!(t.count(-1, 2), big(2));
    assert_eq!(t.count(0, 1), big(2));
    assert_eq!(t.count(0, 2), big(0));
    assert_eq!(t.count(0, 0), big(1));
    let total: BigInt = t.row(4).map(|(_, c)| c.clone()).sum();
    assert_eq!(total, big(14));
    let e = rank_table_eulerian(6);
    assert_eq!(e.count(0, 2), big(0));
    assert_eq!(e.count(1, 2), big(2));
}

#[test]
fn residue_examples() {
    let t = table200();
    let one = residue_table(1, 200, t).unwrap();
    for n in 0..=200 {
        assert_eq!(one.count(0, n), t.pbar(n));
    }
    let five = residue_table(5, 200, t).unwrap();
    assert_eq!(five.count(1, 2), &big(2));
    assert_eq!(five.count(4, 2), &big(2));
    assert_eq!(five.count(0, 2), &big(0));
    for n in 0..=200 {
        assert_eq!(&five.total(n), t.pbar(n));
        if n >= 1 {
            for r in 1..5 {
                assert_eq!(five.count(r, n), five.count(5 - r, n));
            }
        }
    }
    assert!(matches!(residue_table(5, 201, t), Err(RankError::Insufficient { .. })));
}

#[test]
fn direct_residue_table_matches_aggregation() {
    for tmod in [1, 2, 3, 5, 7] {
        let a = residue_table(tmod, 200, table200()).unwrap();
        let d = residue_table_direct(tmod, 200).unwrap();
        assert_eq!(a, d, "t={tmod}");
    }
}

#[test]
fn json_round_trips() {
    let t = rank_table_lambert(25);
    let back = RankTable::from_json(&t.to_json()).unwrap();
    assert_eq!(back, t);
    let r = residue_table(3, 25, &t).unwrap();
    let back = ResidueTable::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), serde_json::to_string(&r.to_json()).unwrap());
    assert!(RankTable::from_json(&serde_json::json!({"max_n": 1, "pbar": ["1"], "counts": [["1"]]})).is_err());
}

#[test]
fn csv_shape() {
    let r = residue_table_direct(3, 4).unwrap();
    let rec = r.csv_records();
    assert_eq!(rec[0], ["n", "r0", "r1", "r2"]);
    assert_eq!(rec.len(), 6);
    assert_eq!(rec[5][0], "4");
}

#[test]
fn method_names() {
    for m in Method::ALL {
        assert_eq!(m.name().parse::<Method>().unwrap(), m);
    }
    assert!("lamb".parse::<Method>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residue_symmetry_and_totals(tmod in 1u32..12, max_n in 0usize..80) {
        let r = residue_table_direct(tmod, max_n).unwrap();
        let p = pbar_values(max_n);
        for n in 0..=max_n {
            prop_assert_eq!(r.total(n), p[n].clone());
            for c in 0..tmod as i64 {
                prop_assert!(r.count(c, n) >= &BigInt::zero());
                if n >= 1 {
                    prop_assert_eq!(r.count(c, n), r.count(tmod as i64 - c, n));
                }
            }
        }
    }
}
