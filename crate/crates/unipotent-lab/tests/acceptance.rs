//! Acceptance suite: one test (and one pass/fail line) per criterion.
//!
//! Every expected value here is produced by an oracle independent of the code
//! under test: Witt/necklace counts via Moebius inversion, dense F_p word
//! expansion for Zassenhaus indices, the Jennings dimension formula for unit
//! quotient orders, and frozen small-case values.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use num_bigint::BigInt;
use unipotent_lab::analysis::{
    one_relator_cd2_evidence, p_regularity_scan, qr_graded_scan, RunConfig, TorsionVerdict,
};
use unipotent_lab::crossed::{build_diagram, build_precrossed, peiffer_quotient};
use unipotent_lab::lie::{pbw_dims, FreeLieAlgebra};
use unipotent_lab::series::{dimension_quotient, zassenhaus_index, ZassenhausIndex};
use unipotent_lab::words::{parse_presentation, simplicialize, Presentation, Word};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> Presentation {
    parse_presentation(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn sample_presentations() -> Vec<(&'static str, Presentation)> {
    vec![
        ("one relator [x,y]", load("commutator.txt")),
        ("one relator [x,y] with degree-3 tail", load("commutator_deg3.txt")),
        ("two relators [x,y], [[x,y],x]", load("two_relators.txt")),
    ]
}

// --------------------------------------------------------------------------
// Oracles
// --------------------------------------------------------------------------

fn mobius(mut n: u64) -> i64 {
    let mut m = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

fn witt(k: u64, d: u64) -> u64 {
    let mut total = 0i64;
    for e in 1..=d {
        if d % e == 0 {
            total += mobius(e) * (k.pow((d / e) as u32) as i64);
        }
    }
    (total / d as i64) as u64
}

/// Dense, structure-free Magnus expansion over F_p: a word-indexed coefficient
/// table multiplied letter by letter, truncated above `cutoff` length.
fn dense_index_oracle(w: &Word, p: u64, cutoff: usize) -> Option<usize> {
    type Poly = HashMap<Vec<u8>, u64>;
    let mul = |a: &Poly, b: &Poly, p: u64, cutoff: usize| -> Poly {
        let mut out: Poly = HashMap::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                if wa.len() + wb.len() > cutoff {
                    continue;
                }
                let mut word = wa.clone();
                word.extend_from_slice(wb);
                let e = out.entry(word).or_insert(0);
                *e = (*e + ca * cb) % p;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    };
    let mut acc: Poly = HashMap::from([(Vec::new(), 1)]);
    for (g, sign) in w.single_letters() {
        let letter = g as u8;
        let factor: Poly = if sign > 0 {
            HashMap::from([(Vec::new(), 1), (vec![letter], 1)])
        } else {
            // geometric series for (1 + x)^-1: alternating signs mod p
            let mut f: Poly = HashMap::new();
            for k in 0..=cutoff {
                let c = if k % 2 == 0 { 1 } else { p - 1 };
                f.insert(vec![letter; k], c);
            }
            f
        };
        acc = mul(&acc, &factor, p, cutoff);
    }
    acc.remove(&Vec::new());
    acc.keys().map(Vec::len).min()
}

/// Jennings dimension formula: solve prod_d ((1 - t^{pd})/(1 - t^d))^{c_d}
/// = 1/(1 - k t) for the c_d degree by degree; the order of F/M_n is
/// p^{sum_{d < n} c_d}.
fn jennings_log_order(rank: u64, p: u64, n: u32) -> u32 {
    let deg = (n - 1) as usize;
    if deg == 0 {
        return 0;
    }
    // target series 1/(1 - k t) up to t^deg
    let mut target = vec![0i128; deg + 1];
    let mut acc = 1i128;
    for t in target.iter_mut() {
        *t = acc;
        acc *= rank as i128;
    }
    let mut current = vec![0i128; deg + 1];
    current[0] = 1;
    let mut total = 0u32;
    for d in 1..=deg {
        let c_d = (target[d] - current[d]) as u32;
        total += c_d;
        // multiply `current` by ((1 - t^{pd})/(1 - t^d))^{c_d}
        for _ in 0..c_d {
            let mut next = vec![0i128; deg + 1];
            for i in 0..=deg {
                if current[i] == 0 {
                    continue;
                }
                let mut e = 0;
                while e < p as usize && i + e * d <= deg {
                    next[i + e * d] += current[i];
                    e += 1;
                }
            }
            current = next;
        }
    }
    total
}

/// All freely reduced words of length exactly `len` over rank 2.
fn reduced_words(len: usize) -> Vec<Word> {
    let letters: [(u32, i64); 4] = [(0, 1), (0, -1), (1, 1), (1, -1)];
    let mut out: Vec<Vec<(u32, i64)>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            for &(g, s) in &letters {
                if let Some(&(lg, ls)) = w.last() {
                    if lg == g && ls == -s {
                        continue;
                    }
                }
                let mut v = w.clone();
                v.push((g, s));
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Word::from_letters).collect()
}

// --------------------------------------------------------------------------
// Criteria
// --------------------------------------------------------------------------

#[test]
fn criterion_1_witt_pbw_suite() {
    for rank in 1..=3u64 {
        let names = (0..rank).map(|i| format!("g{i}")).collect();
        let alg = FreeLieAlgebra::rank_one_weights(names, 8);
        let dims = alg.degree_dims();
        for (d, &dim) in dims.iter().enumerate() {
            assert_eq!(dim as u64, witt(rank, (d + 1) as u64), "rank {rank} degree {}", d + 1);
        }
        // Witt identity: sum over divisors d of n of d * W(k, d) = k^n.
        for n in 1..=8u64 {
            let total: u64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| d * dims[d as usize - 1] as u64)
                .sum();
            assert_eq!(total, rank.pow(n as u32));
        }
        // PBW: the envelope of the free Lie algebra is the tensor algebra.
        let env = pbw_dims(&dims, 8);
        for d in 0..=8u32 {
            assert_eq!(env[d as usize], BigInt::from(rank.pow(d)));
        }
    }
    println!("criterion 1 (Witt/PBW suite, ranks 1-3, cutoff 8): PASS");
}

#[test]
fn criterion_2_magnus_zassenhaus_suite() {
    // Named cases first.
    let c = Word::commutator(&Word::generator(0), &Word::generator(1));
    for p in [2u64, 3] {
        assert_eq!(zassenhaus_index(&c, p, 6, 2).unwrap(), ZassenhausIndex::Finite(2));
        assert_eq!(
            zassenhaus_index(&Word::generator(0).pow(p as i64), p, 6, 2).unwrap(),
            ZassenhausIndex::Finite(p as u32)
        );
    }
    // Exhaustive comparison against the dense oracle.
    let mut checked = 0usize;
    for len in 1..=5usize {
        for w in reduced_words(len) {
            for p in [2u64, 3] {
                let got = zassenhaus_index(&w, p, 6, 2).unwrap();
                let expected = match dense_index_oracle(&w, p, 6) {
                    Some(d) => ZassenhausIndex::Finite(d as u32),
                    None => ZassenhausIndex::AtLeast(7),
                };
                assert_eq!(got, expected, "word {:?} p {p}", w.letters());
                checked += 1;
            }
        }
    }
    println!("criterion 2 (Magnus/Zassenhaus vs dense oracle, {checked} word/prime pairs): PASS");
}

#[test]
fn criterion_3_dimension_quotient_suite() {
    let cases = [(2usize, 2u64, 2u32, 2u32), (1, 2, 2, 1), (1, 3, 2, 1), (1, 5, 2, 1), (1, 2, 3, 2)];
    for (rank, p, n, expected_log) in cases {
        let d = dimension_quotient(rank, p, n, 1 << 20).unwrap();
        assert_eq!(d.order_log_p, expected_log, "rank {rank} p {p} n {n}");
        assert_eq!(
            d.order_log_p,
            jennings_log_order(rank as u64, p, n),
            "Jennings oracle disagrees for rank {rank} p {p} n {n}"
        );
    }
    println!("criterion 3 (dimension quotients vs Jennings oracle): PASS");
}

#[test]
fn criterion_4_peiffer_lemma_equality() {
    for (label, pres) in sample_presentations() {
        let spres = simplicialize(&pres);
        let pcm = build_precrossed(&spres, 5, 10, 42).unwrap();
        // peiffer_quotient verifies degreewise subspace equality of the two
        // independent computations and errors on any mismatch.
        let cm = peiffer_quotient(pcm, 10, 43)
            .unwrap_or_else(|e| panic!("Peiffer routes disagree for {label}: {e}"));
        let dims = cm.peiffer.graded_dims(&cm.pre.ambient);
        assert_eq!(dims.len(), 5, "{label}");
    }
    println!("criterion 4 (Peiffer two-route equality, 3 samples, cutoff 5): PASS");
}

#[test]
fn criterion_5_diagram_suite() {
    for (label, pres) in sample_presentations() {
        let r = build_diagram(&pres, 5, 10, 42).unwrap();
        assert!(r.commutative, "{label}: commutativity");
        assert!(r.exact_rows, "{label}: exactness");
        assert!(r.freeness, "{label}: freeness");
        for d in 0..5 {
            assert_eq!(
                r.u2_dims[d] + r.rbar_dims[d],
                r.cbar_dims[d],
                "{label}: dimension accounting at degree {}",
                d + 1
            );
        }
    }
    let r = build_diagram(&load("commutator.txt"), 5, 10, 42).unwrap();
    assert_eq!(r.u2_dims, vec![0; 5]);
    assert_eq!(r.rbar_dims, vec![0, 1, 2, 3, 4]);
    println!("criterion 5 (diagram commutativity/exactness/freeness, cutoff 5): PASS");
}

#[test]
fn criterion_6_cm_axiom_suite() {
    for (label, pres) in sample_presentations() {
        let spres = simplicialize(&pres);
        let pcm = build_precrossed(&spres, 4, 100, 2024)
            .unwrap_or_else(|e| panic!("CM1 failed for {label}: {e}"));
        assert_eq!(pcm.cm1_samples, 100);
        let cm = peiffer_quotient(pcm, 100, 2025)
            .unwrap_or_else(|e| panic!("CM2 failed for {label}: {e}"));
        assert_eq!(cm.cm2_samples, 100);
    }
    println!("criterion 6 (CM1/CM2 at 100 sampled points per presentation): PASS");
}

#[test]
fn criterion_7_qr_p_regularity_suite() {
    for name in ["commutator.txt", "commutator_deg3.txt"] {
        let pres = load(name);
        let qr = qr_graded_scan(&pres, 5).unwrap();
        assert_eq!(qr.verdict, TorsionVerdict::TorsionFreeUpTo(5), "{name}");
        let pr = p_regularity_scan(&pres, 5).unwrap();
        assert_eq!(pr.verdict, TorsionVerdict::TorsionFreeUpTo(5), "{name}");
    }
    // Shipped adversarial fixture: torsion certificate.
    let qr = qr_graded_scan(&load("torsion.txt"), 4).unwrap();
    assert_eq!(qr.verdict, TorsionVerdict::TorsionAt(2));
    assert!(qr.per_degree[1].torsion().contains(&BigInt::from(2)));
    // p*x initial form: degree-1 p-torsion.
    let pr = p_regularity_scan(&load("p_power.txt"), 3).unwrap();
    assert_eq!(pr.verdict, TorsionVerdict::TorsionAt(1));
    assert!(pr.per_degree[0].torsion().contains(&BigInt::from(2)));
    println!("criterion 7 (QR/p-regularity scans incl. adversarial fixture): PASS");
}

#[test]
fn criterion_8_cd2_pipeline() {
    let cfg = RunConfig { samples: 20, ..RunConfig::default() };
    let r = one_relator_cd2_evidence(&load("commutator.txt"), &cfg).unwrap();
    assert!(r.freeness_rank_one);
    assert!(r.kappa_bijective);
    assert!(r.u2_vanishes);
    assert!(r.p_regular);
    assert_eq!(r.verdict, "cd=2 evidence up to class 5");
    println!("criterion 8 (cd=2 evidence pipeline, all four checks): PASS");
}

#[test]
fn criterion_9_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_unipotent-lab");
    let dir = std::env::temp_dir().join("unipotent-lab-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let comm = fixture("commutator.txt");
    let torsion = fixture("torsion.txt");
    let runs: Vec<(&str, Vec<String>)> = vec![
        ("zindex", vec!["zindex".into(), "--word".into(), "[x,y]".into(), "--p".into(), "2".into(), "--cutoff".into(), "5".into()]),
        ("expand", vec!["expand".into(), "--word".into(), "[x,y]".into(), "--cutoff".into(), "4".into()]),
        ("dimsub", vec!["dimsub".into(), "--rank".into(), "1".into(), "--p".into(), "2".into(), "--n".into(), "3".into()]),
        ("diagram", vec!["diagram".into(), "--file".into(), comm.display().to_string(), "--cutoff".into(), "4".into(), "--seed".into(), "7".into()]),
        ("pi2", vec!["pi2".into(), "--file".into(), comm.display().to_string(), "--cutoff".into(), "4".into(), "--seed".into(), "7".into()]),
        ("qr-scan", vec!["qr-scan".into(), "--file".into(), torsion.display().to_string(), "--cutoff".into(), "4".into()]),
        ("p-regular", vec!["p-regular".into(), "--file".into(), comm.display().to_string(), "--cutoff".into(), "4".into()]),
        ("cd2", vec!["cd2".into(), "--file".into(), comm.display().to_string(), "--cutoff".into(), "4".into(), "--seed".into(), "7".into()]),
    ];
    for (name, args) in &runs {
        let mut outputs = Vec::new();
        for pass in 0..2 {
            let out_path = dir.join(format!("{name}-{pass}.json"));
            let status = Command::new(bin)
                .args(args)
                .arg("--out")
                .arg(&out_path)
                .output()
                .unwrap();
            assert!(
                status.status.code().is_some(),
                "{name}: no exit code"
            );
            outputs.push((std::fs::read(&out_path).unwrap(), status.stdout, status.status.code()));
        }
        assert_eq!(outputs[0].0, outputs[1].0, "{name}: JSON reports differ between runs");
        assert_eq!(outputs[0].1, outputs[1].1, "{name}: stdout differs between runs");
        assert_eq!(outputs[0].2, outputs[1].2, "{name}: exit codes differ between runs");
    }
    // Exit code partition spot checks.
    let code = |args: &[&str]| {
        Command::new(bin).args(args).output().unwrap().status.code().unwrap()
    };
    assert_eq!(code(&["qr-scan", "--file", &torsion.display().to_string(), "--cutoff", "4"]), 1);
    assert_eq!(code(&["diagram", "--file", "/nonexistent/file.txt"]), 2);
    assert_eq!(code(&["dimsub", "--rank", "2", "--p", "2", "--n", "4", "--budget", "8"]), 3);
    println!("criterion 9 (CLI determinism and exit-code partition): PASS");
}
