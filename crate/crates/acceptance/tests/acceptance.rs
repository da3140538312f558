//! One verdict line per acceptance criterion.
//!
//! Tolerances and time limits are pinned below. A clause listed in
//! [`UNATTAINABLE`] is computed like every other clause, is printed as a
//! failure, and is asserted to keep failing.

use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_integer::Integer;

use congruence_lab::{decomposition_holds, scan_progressions, twist_restrict, verify_claim, CongruenceClaim, Status};
use identity_verifier::{verify_all, IdentitySpec};
use maass_numerics::completion::{m_raw, theta_integral_lemma};
use maass_numerics::lambert::o_ac;
use maass_numerics::suite::{laplacian_config, richardson_gap};
use maass_numerics::theta::shimura_sides;
use maass_numerics::u_minus1::{minus1_inversion, m_minus1, o_minus1};
use maass_numerics::*;
use overpartition_ranks::{pbar_values, rank_table, residue_table_direct, Method};
use series_core::{eta_expansion, Exp};

/// Δ annihilates every holomorphic function, so ΔO is as small as ΔM and the
/// 100× separation cannot be observed.
const UNATTAINABLE: &[(u8, &str)] = &[(9, "O_separation_a/c"), (9, "O_separation_minus1")];

struct Clause {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn clause(name: &'static str, pass: bool, detail: impl Into<String>) -> Clause {
    Clause { name, pass, detail: detail.into() }
}

fn below(name: &'static str, value: f64, tol: f64) -> Clause {
    clause(name, value < tol, format!("{value:.2e} < {tol:e}"))
}

struct Criterion {
    id: u8,
    limit_secs: f64,
    run: fn() -> Vec<Clause>,
}

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn pts() -> [C; 3] {
    [C::new(0.0, 1.0), C::new(0.2, 1.0), C::new(0.0, 2.0)]
}

fn gap(s: (C, C)) -> f64 {
    (s.0 - s.1).norm()
}

fn c1() -> Vec<Clause> {
    let got = pbar_values(4);
    let want: Vec<BigInt> = [1, 2, 4, 8, 14].into_iter().map(BigInt::from).collect();
    vec![clause("pbar_0..4", got == want, format!("{got:?}"))]
}

fn c2() -> Vec<Clause> {
    let l30 = rank_table(Method::Lambert, 30).unwrap();
    let e30 = rank_table(Method::Eulerian, 30).unwrap();
    let b30 = rank_table(Method::Bruteforce, 30).unwrap();
    let l200 = rank_table(Method::Lambert, 200).unwrap();
    let e200 = rank_table(Method::Eulerian, 200).unwrap();
    let d = |x: &overpartition_ranks::RankTable, y: &overpartition_ranks::RankTable| x.diff(y).len();
    vec![
        clause("lambert=bruteforce≤30", d(&l30, &b30) == 0, format!("{} diffs", d(&l30, &b30))),
        clause("eulerian=bruteforce≤30", d(&e30, &b30) == 0, format!("{} diffs", d(&e30, &b30))),
        clause("lambert=eulerian≤200", d(&l200, &e200) == 0, format!("{} diffs", d(&l200, &e200))),
    ]
}

fn c3() -> Vec<Clause> {
    let t = rank_table(Method::Lambert, 200).unwrap();
    let p = pbar_values(200);
    let symmetric = (0..=200usize).all(|n| (0..=n as i64 + 1).all(|m| t.count(m, n) == t.count(-m, n)));
    let normalized = (0..=200usize).all(|n| t.row(n).map(|(_, c)| c.clone()).sum::<BigInt>() == p[n]);
    vec![clause("N(m,n)=N(-m,n)", symmetric, "n ≤ 200"), clause("Σ_m N(m,n)=pbar(n)", normalized, "n ≤ 200")]
}

fn c4() -> Vec<Clause> {
    let reports = verify_all(200).unwrap();
    let mut out: Vec<Clause> = reports.iter().map(|r| clause("identity", r.passed(), format!("({}) {}", r.id, r.status))).collect();
    let zero = IdentitySpec::builtin(4).unwrap();
    out.push(clause("identity_4_is_zero", zero.recipe.coeff == 0 && zero.recipe.factors.is_empty(), "rhs = 0"));
    out
}

fn c5() -> Vec<Clause> {
    let worst = |pairs: &[(i64, i64)]| {
        pairs.iter().flat_map(|&(a, c)| pts().map(|z| gap(inversion(a, c, z, &cfg()).unwrap()))).fold(0.0, f64::max)
    };
    vec![below("part1_odd_c", worst(&[(1, 3), (1, 5), (2, 5)]), 1e-6), below("part2_c=4", worst(&[(1, 4)]), 1e-6)]
}

fn c6() -> Vec<Clause> {
    [(1, 3, 1, 6, 1u8), (1, 3, 1, 3, 2), (1, 3, 0, 1, 5)]
        .into_iter()
        .map(|(a, c, h, k, case)| {
            let tc = TransformCase::new(a, c, h, k, C::new(1.0, 0.0)).unwrap();
            assert_eq!(tc.case_id(), case);
            let r = check_transform(case, &tc, &cfg()).unwrap();
            clause("transform_case", r < 1e-5, format!("case {case} (h,k)=({h},{k}) {r:.2e} < 1e-5"))
        })
        .collect()
}

fn c7() -> Vec<Clause> {
    let i = C::new(0.0, 1.0);
    vec![
        below("theta_integral", gap(theta_integral_lemma(1, 3, i, &cfg()).unwrap()), 1e-6),
        below("j_transformation", gap(j_lemma(1, 3, i, &cfg()).unwrap()), 1e-6),
        below("shimura", gap(shimura_sides(1, 3, i, &cfg()).unwrap()), 1e-8),
    ]
}

fn c8() -> Vec<Clause> {
    vec![below("fourier", fourier_check(1, 3, UpperHalfPoint::i(), &cfg()).unwrap(), 1e-6)]
}

fn c9() -> Vec<Clause> {
    let i = C::new(0.0, 1.0);
    let lc = laplacian_config(&cfg());
    let h = cfg().fd_step;
    let m = laplacian_residual(|p| m_raw(1, 3, p, &lc), 0.5, i, h).unwrap();
    let o = laplacian_residual(|p| o_ac(1, 3, p, &lc), 0.5, i, h).unwrap();
    let m1 = laplacian_residual(|p| m_minus1(p, &lc), 1.5, i, h).unwrap();
    let o1 = laplacian_residual(|p| o_minus1(p, &lc), 1.5, i, h).unwrap();
    let sep = |o: f64, m: f64| clause_ratio(o / m);
    vec![
        below("ΔM(1/3)/scale", m.relative(), 1e-3),
        below("ΔM(-1)/scale", m1.relative(), 1e-3),
        Clause { name: "O_separation_a/c", ..sep(o.residual, m.residual) },
        Clause { name: "O_separation_minus1", ..sep(o1.residual, m1.residual) },
    ]
}

fn clause_ratio(ratio: f64) -> Clause {
    clause("", ratio >= 100.0, format!("|ΔO|/|ΔM| = {ratio:.2e} ≥ 100"))
}

fn c10() -> Vec<Clause> {
    let i = C::new(0.0, 1.0);
    let t = Exp::from_integer(51);
    let quotient = eta_expansion(1, t).unwrap().pow(2).unwrap().mul_series(&eta_expansion(2, t).unwrap().invert().unwrap());
    let sump = (0..=50i64).all(|n| {
        let s = (n as f64).sqrt() as i64;
        let want = if s * s == n { BigInt::from(if n == 0 { 1 } else if s % 2 == 0 { 2 } else { -2 }) } else { BigInt::from(0) };
        quotient.coeff_int(n) == want
    });
    vec![
        below("richardson |ratio-4|", richardson_gap(i, &cfg()).unwrap(), 0.25),
        below("minus1_inversion", gap(minus1_inversion(i, &cfg()).unwrap()), 1e-5),
        clause("sump_50_terms", sump, "exact"),
    ]
}

fn c11() -> Vec<Clause> {
    let mut out = Vec::new();
    for ell in [5u64, 7] {
        let seq: Vec<i64> = (1..=300).collect();
        let tw = twist_restrict(&seq, ell);
        let l = ell as i64;
        let support_ok = tw.iter().enumerate().all(|(n, &c)| {
            let n = n as i64;
            let square = (0..l).any(|x| (x * x + n).rem_euclid(l) == 0);
            c == if square { 0 } else { n + 1 }
        });
        out.push(clause("twist_idempotent", twist_restrict(&tw, ell) == tw, format!("ℓ={ell}")));
        out.push(clause("twist_support", support_ok, format!("ℓ={ell}")));
    }

    let t3 = residue_table_direct(3, 200).unwrap();
    let seeded = CongruenceClaim::all_residues(5, 0, 3, 5, 1).unwrap();
    let rep = verify_claim(&seeded, &t3, 30).unwrap();
    out.push(clause("seeded_false_claim_rejected", rep.status == Status::Fail(0), rep.status.to_string()));

    let t1 = residue_table_direct(1, 400).unwrap();
    let p = pbar_values(400);
    let mut t1_ok = true;
    for (ell, j) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let m = BigInt::from(ell).pow(j);
        for a in 1..=6u64 {
            for b in 0..a {
                let rep = verify_claim(&CongruenceClaim::all_residues(a, b, 1, ell, j).unwrap(), &t1, 40).unwrap();
                let truth = (0..=40usize).all(|n| p[a as usize * n + b as usize].is_multiple_of(&m));
                t1_ok &= rep.status.passed() == truth;
            }
        }
    }
    out.push(clause("t=1_reductions", t1_ok, "agree with pbar"));

    let mut decomposition = true;
    let mut scanned = 0;
    for (t, ell) in [(3u32, 3u64), (5, 5), (7, 7)] {
        let tab = residue_table_direct(t, 6 * 26).unwrap();
        let pb = pbar_values(6 * 26);
        scan_progressions(t, ell, 1, 6, 25, &tab).unwrap();
        for a in 1..=6u64 {
            for b in 0..a {
                decomposition &= decomposition_holds(&tab, a, b, 25, &pb);
                scanned += 1;
            }
        }
    }
    out.push(clause("decomposition", decomposition, format!("{scanned} progressions")));
    out
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, limit_secs: 1.0, run: c1 },
    Criterion { id: 2, limit_secs: 120.0, run: c2 },
    Criterion { id: 3, limit_secs: 60.0, run: c3 },
    Criterion { id: 4, limit_secs: 120.0, run: c4 },
    Criterion { id: 5, limit_secs: 60.0, run: c5 },
    Criterion { id: 6, limit_secs: 120.0, run: c6 },
    Criterion { id: 7, limit_secs: 60.0, run: c7 },
    Criterion { id: 8, limit_secs: 30.0, run: c8 },
    Criterion { id: 9, limit_secs: 60.0, run: c9 },
    Criterion { id: 10, limit_secs: 60.0, run: c10 },
    Criterion { id: 11, limit_secs: 60.0, run: c11 },
];

#[test]
fn acceptance() {
    let mut surprises = Vec::new();
    std::io::stdout().write_all(b"\n").unwrap();
    for c in CRITERIA {
        let start = Instant::now();
        let mut clauses = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        clauses.push(clause("time", secs < c.limit_secs, format!("{secs:.2}s < {:.0}s", c.limit_secs)));
        let pass = clauses.iter().all(|k| k.pass);
        let detail: Vec<String> = clauses
            .iter()
            .map(|k| format!("{}{} {}: {}", if k.pass { "" } else { "!" }, k.name, if k.pass { "ok" } else { "FAILED" }, k.detail))
            .collect();
        // straight to stdout so the lines show without --nocapture
        let line = format!("criterion {:>2}: {}  {}\n", c.id, if pass { "PASS" } else { "FAIL" }, detail.join("; "));
        std::io::stdout().write_all(line.as_bytes()).unwrap();
        for k in &clauses {
            let known = UNATTAINABLE.contains(&(c.id, k.name));
            if k.pass == known {
                surprises.push(format!("criterion {} clause {}: {}", c.id, k.name, k.detail));
            }
        }
    }
    assert!(surprises.is_empty(), "unexpected outcomes: {surprises:#?}");
}
