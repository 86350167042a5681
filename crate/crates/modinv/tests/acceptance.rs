//! One line per acceptance criterion. Two criteria are known to be red; the
//! assertions pin down exactly how, so any other change in outcome fails the run.

mod common;

use modinv::minors::{sample_in_stratum, StratumLabel};
use modinv::oracle::{invariant_dims, OracleMethod};
use modinv::recipes::{completion_bound, lemma_suite, stratum_recipe, RecipeOptions, Route};
use modinv::report::{run, VerifyOptions};
use modinv::sagbi::{sagbi_check, SubalgebraBasis};
use modinv::{FieldContext, Monomial, Polynomial};
use rayon::prelude::*;

fn field(p: u32) -> FieldContext {
    FieldContext::new(p, 4).unwrap()
}

fn line(n: u32, pass: bool, detail: &str) {
    println!("criterion {n}: {} {}", if pass { "PASS" } else { "FAIL" }, detail.trim_end());
}

fn criterion_1() {
    let f = field(3);
    let jobs: Vec<(StratumLabel, u64)> =
        StratumLabel::COMPUTED.iter().flat_map(|&l| (0..20).map(move |s| (l, s))).collect();
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(label, seed)| {
            let m = sample_in_stratum(label, &f, seed).unwrap();
            let r = run(&m, Some(seed), VerifyOptions::default()).unwrap();
            let c = r.claimed.unwrap();
            (!(r.sagbi && c.generators_match && c.relations_match))
                .then(|| format!("{label}/{seed}: gens {:?} rels {:?} sagbi {}", r.generator_degrees, r.relation_degrees, r.sagbi))
        })
        .collect();
    let pass = bad.is_empty();
    let only_s8 = bad.len() == 20 && bad.iter().all(|b| b.starts_with("S8/") && b.contains("rels [54, 84] sagbi true"));
    let detail = if only_s8 {
        "(S8 relations are {54,84} in all 20 samples against the claimed {18,84}; the other 200 samples match)".to_string()
    } else {
        format!("{bad:?}")
    };
    line(1, pass, &detail);
    assert!(only_s8, "unexpected degree table outcome: {bad:?}");
}

fn criterion_2() {
    let f = field(3);
    let jobs: Vec<(StratumLabel, u64)> =
        StratumLabel::COMPUTED.iter().flat_map(|&l| (100..103).map(move |s| (l, s))).collect();
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(label, seed)| {
            let m = sample_in_stratum(label, &f, seed).unwrap();
            let r = run(&m, Some(seed), VerifyOptions { oracle_degree: Some(90), ..Default::default() }).unwrap();
            let o = r.oracle.unwrap();
            // the per-degree kernel must agree with the quotient it is compared through
            let k = invariant_dims(&m, 16, OracleMethod::Kernel);
            let kernel_ok = k.dims.iter().all(|&(d, n)| o.rows[d as usize].invariants == n);
            (!(o.agree && kernel_ok))
                .then(|| format!("{label}/{seed}: first failure {:?}, kernel {kernel_ok}", o.first_failure))
        })
        .collect();
    line(2, bad.is_empty(), &format!("(33 samples, every degree up to 90) {}", bad.join("; ")));
    assert!(bad.is_empty());
}

const ERRATA: [&str; 3] = ["S4:h4", "S5b:h3", "S9a:h4"];

fn criterion_3() {
    let f = field(7);
    let mut failed = Vec::new();
    let mut off_published = Vec::new();
    let mut total = 0;
    for label in StratumLabel::COMPUTED {
        let m = sample_in_stratum(label, &f, 1).unwrap();
        for c in lemma_suite(&m).unwrap() {
            total += 1;
            if !c.pass {
                failed.push(c.lemma.clone());
            }
            if !c.matches_published {
                off_published.push(c.lemma.clone());
            }
        }
    }
    let pass = failed.is_empty() && off_published.is_empty();
    line(
        3,
        pass,
        &format!(
            "({total} lemmas; {} reproduce the printed lead term; {:?} differ from it by a constant factor)",
            total - off_published.len(),
            off_published
        ),
    );
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(off_published, ERRATA);
}

fn criterion_4() {
    let jobs: Vec<(u32, StratumLabel)> =
        [3, 5].iter().flat_map(|&p| StratumLabel::COMPUTED.iter().map(move |&l| (p, l))).collect();
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(p, label)| {
            let m = sample_in_stratum(label, &field(p), 1).unwrap();
            let a = stratum_recipe(&m, label, RecipeOptions::default()).unwrap();
            let b = stratum_recipe(&m, label, RecipeOptions { route: Route::Discovery, ..Default::default() }).unwrap();
            (a.lead_monomials() != b.lead_monomials()).then(|| format!("p={p} {label}"))
        })
        .collect();
    line(4, bad.is_empty(), &format!("(11 strata at p=3 and p=5) {}", bad.join("; ")));
    assert!(bad.is_empty());
}

fn criterion_5() {
    let bad: Vec<String> = common::IDENTITIES
        .par_iter()
        .flat_map(|&(name, check)| {
            (0..1000u64).into_par_iter().filter_map(move |s| check(s).err().map(|e| format!("{name} seed {s}: {e}")))
        })
        .collect();
    line(5, bad.is_empty(), &format!("(10 identities x 1000 cases) {}", bad.join("; ")));
    assert!(bad.is_empty());
}

fn criterion_6() {
    let mut problems = Vec::new();
    for p in [3, 5] {
        let f = field(p);
        let m = sample_in_stratum(StratumLabel::EssGeneric, &f, 3).unwrap();
        let gs = stratum_recipe(&m, StratumLabel::EssGeneric, RecipeOptions::default()).unwrap();
        let kept: Vec<_> =
            gs.generators.iter().filter(|g| g.degree() != p.pow(3) + 2).map(|g| (g.name.clone(), g.poly.clone())).collect();
        let b = SubalgebraBasis::from_named(&f, kept).unwrap();
        let v = sagbi_check(&b, completion_bound(p)).unwrap();
        let at = |n: &str| b.names().iter().position(|s| s == n).unwrap();
        match &v.failure {
            Some((t, rem)) if !v.is_sagbi => {
                let (i, j) = if t.i[at("f2")] > 0 { (&t.i, &t.j) } else { (&t.j, &t.i) };
                let pair_ok = i[at("f2")] == p && i.iter().sum::<u32>() == p && j[at("f1")] == p + 2 && j.iter().sum::<u32>() == p + 2;
                let lm_ok = rem.lead_monomial().ok() == Some(Monomial::new(2 * p * p - 2, p.pow(3) + 2, 0));
                if !(pair_ok && lm_ok) {
                    problems.push(format!("p={p}: failing pair {}", t.describe(b.names())));
                }
            }
            _ => problems.push(format!("p={p}: basis without f3 passed")),
        }
        // one coefficient of f1 nudged
        let f1 = gs.get("f1").unwrap();
        let (mono, c) = f1.terms()[0];
        let nudged = &(f1 - &Polynomial::term(&f, mono, c)) + &Polynomial::term(&f, mono, f.add(c, f.one()));
        if m.is_invariant(&nudged) || !m.is_invariant(f1) {
            problems.push(format!("p={p}: perturbation not detected"));
        }
    }
    line(6, problems.is_empty(), &format!("(p=3 and p=5) {}", problems.join("; ")));
    assert!(problems.is_empty());
}

fn main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
}
