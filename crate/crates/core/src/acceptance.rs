//! The acceptance suite: nine criteria, each with a fixed sample size and a
//! wall-clock limit. Shared by the `acceptance` test target and the CLI
//! `selftest` command.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::artin::{
    abelianization_matrix, from_framed, invert, multiply, multiply_with, random_torelli, to_framed,
    ArtinPresentation, ProductOrder, ValidationError,
};
use crate::corpus::{parse_bundled, random_framed, triality_corpus_entry, FIGURE8_FP, TREFOIL_FP};
use crate::form::{donaldson_obstructed, realize_form, theorem_witness, trivial_group_with_exponents, Obstruction, Witness};
use crate::grammar::parse_group_file;
use crate::group::{
    group_order, hom_count, is_perfect, named_group, pi, tietze_simplify, todd_coxeter, triality_check,
    FiniteGroup, FpGroup, Triality, DEFAULT_NODE_CAP,
};
use crate::knot::{alexander_polynomial, knot_group, LaurentPoly};
use crate::matrix::{IntMatrix, IntSymMatrix};
use crate::oracle::exhaustive_hom_count;
use crate::word::Word;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

impl CriterionResult {
    /// One line: `PASS AC1 correspondence soundness: ... [0.41 s / 30 s]`.
    pub fn line(&self) -> String {
        let limit = self.limit_ms.map(|l| format!(" / {} s", l / 1000)).unwrap_or_default();
        format!(
            "{} AC{} {}: {} [{:.2} s{}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed_ms as f64 / 1000.0,
            limit
        )
    }
}

fn finish(
    id: u8,
    name: &'static str,
    start: Instant,
    limit: Option<Duration>,
    ok: bool,
    detail: String,
) -> CriterionResult {
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let detail = if in_time { detail } else { format!("{detail}; over time limit") };
    CriterionResult {
        id,
        name,
        passed: ok && in_time,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
    }
}

pub const CORPUS_SIZE: usize = 1000;
pub const TORELLI_PAIRS: usize = 300;
pub const ASSOCIATIVITY_TRIPLES: usize = 100;
pub const TRIALITY_SAMPLES: usize = 200;
pub const TRIALITY_CAP: usize = 100_000;
/// Braid length of each factor of a random Torelli commutator.
pub const TORELLI_SIZE: usize = 4;

fn framed_corpus(seed: u64) -> Vec<ArtinPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..CORPUS_SIZE)
        .map(|_| {
            let n = rng.gen_range(2..=6);
            from_framed(&random_framed(&mut rng, n, 40, 3))
        })
        .collect()
}

/// Criteria 1 and 2 share one corpus.
pub fn correspondence_and_symmetry(seed: u64) -> [CriterionResult; 2] {
    let start = Instant::now();
    let corpus = framed_corpus(seed);
    let valid = corpus
        .iter()
        .filter(|r| ArtinPresentation::validate(r.n(), r.relators().to_vec()).is_ok())
        .count();
    let c1 = finish(
        1,
        "correspondence soundness",
        start,
        Some(Duration::from_secs(30)),
        valid == CORPUS_SIZE,
        format!("{valid}/{CORPUS_SIZE} pass the Artin equation"),
    );
    let start = Instant::now();
    let symmetric = corpus.iter().filter(|r| abelianization_matrix(r).is_ok()).count();
    let c2 = finish(
        2,
        "symmetry of A(r)",
        start,
        None,
        symmetric == CORPUS_SIZE,
        format!("{symmetric}/{CORPUS_SIZE} symmetric"),
    );
    [c1, c2]
}

pub fn torelli_invariance(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7043);
    let mut kept = 0;
    let mut failures = Vec::new();
    for k in 0..TORELLI_PAIRS {
        let n = rng.gen_range(2..=5);
        let t = random_torelli(n, rng.gen(), TORELLI_SIZE).expect("pure braids");
        let r = from_framed(&random_framed(&mut rng, n, 20, 3));
        let same = multiply(&t, &r)
            .and_then(|tr| Ok(abelianization_matrix(&tr)? == abelianization_matrix(&r)?))
            .unwrap_or(false);
        if same {
            kept += 1;
        } else if failures.len() < 3 {
            failures.push(k);
        }
    }
    let mut detail = format!("{kept}/{TORELLI_PAIRS} keep A(r)");
    if !failures.is_empty() {
        detail += &format!("; first failing pairs {failures:?}");
    }
    finish(3, "Torelli invariance", start, None, kept == TORELLI_PAIRS, detail)
}

pub fn round_trips_and_laws(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4c61);
    let (mut trips, mut inverses) = (0, 0);
    let samples = 200;
    for _ in 0..samples {
        let n = rng.gen_range(2..=5);
        let a = random_framed(&mut rng, n, 30, 3);
        let r = from_framed(&a);
        if to_framed(&r) == a && from_framed(&to_framed(&r)) == r {
            trips += 1;
        }
        if invert(&r).and_then(|ri| multiply(&r, &ri)).is_ok_and(|p| p == ArtinPresentation::identity(n)) {
            inverses += 1;
        }
    }
    let mut assoc = 0;
    for _ in 0..ASSOCIATIVITY_TRIPLES {
        let n = rng.gen_range(2..=4);
        let [a, b, c] = [(); 3].map(|_| from_framed(&random_framed(&mut rng, n, 12, 3)));
        let left = multiply(&a, &b).and_then(|ab| multiply(&ab, &c));
        let right = multiply(&b, &c).and_then(|bc| multiply(&a, &bc));
        if matches!((left, right), (Ok(l), Ok(r)) if l == r) {
            assoc += 1;
        }
    }
    let ok = trips == samples && inverses == samples && assoc == ASSOCIATIVITY_TRIPLES;
    finish(
        4,
        "round trips and group laws",
        start,
        None,
        ok,
        format!(
            "round trips {trips}/{samples}, r·r^-1 = 1 {inverses}/{samples}, associativity {assoc}/{ASSOCIATIVITY_TRIPLES}"
        ),
    )
}

fn laurent(coeffs: &[i64]) -> LaurentPoly<num_bigint::BigInt> {
    LaurentPoly::from_i64(coeffs)
}

/// One checked step of the worked example.
#[derive(Debug, Clone, Serialize)]
pub struct ExampleStep {
    pub step: char,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleReport {
    /// Validation failures of the verbatim files.
    pub errata: Vec<String>,
    /// Steps (c)-(f) on the verbatim files; empty when an erratum applies.
    pub verbatim: Vec<ExampleStep>,
    /// Steps (c)-(f) with the corrected `s`, run whenever an erratum applies.
    pub corrected: Vec<ExampleStep>,
}

fn example_steps(s: &ArtinPresentation, t: &ArtinPresentation, r: &ArtinPresentation) -> Vec<ExampleStep> {
    let mut steps = Vec::new();
    let cosets = todd_coxeter(&pi(s), &[], 1_000_000).map(|t| t.index());
    steps.push(ExampleStep {
        step: 'c',
        passed: cosets == Ok(1),
        detail: format!("enumeration of π(s): {cosets:?}"),
    });
    let trefoil = laurent(&[1, -1, 1]);
    let mut polys = Vec::new();
    let mut ok = true;
    for i in 1..=s.n() {
        let p = knot_group(s, i).ok().and_then(|g| alexander_polynomial(&g).ok());
        let want = if i == 3 { trefoil.clone() } else { LaurentPoly::one() };
        ok &= p.as_ref() == Some(&want);
        polys.push(format!("k{i}: {}", p.map_or("n/a".into(), |p| p.to_string())));
    }
    steps.push(ExampleStep { step: 'd', passed: ok, detail: polys.join(", ") });
    let orders: Vec<String> = [ProductOrder::Forward, ProductOrder::Reversed]
        .into_iter()
        .filter(|&o| multiply_with(t, s, o).is_ok_and(|p| &p == r))
        .map(|o| format!("{o:?}"))
        .collect();
    steps.push(ExampleStep {
        step: 'e',
        passed: !orders.is_empty(),
        detail: format!("t·s = r under {orders:?}"),
    });
    let order = group_order(&tietze_simplify(&pi(r), 64), 1_000_000);
    let k3 = knot_group(r, 3).ok().and_then(|g| alexander_polynomial(&g).ok());
    steps.push(ExampleStep {
        step: 'f',
        passed: order == Ok(1) && k3 == Some(laurent(&[1, -3, 1])),
        detail: format!("|π(r)| = {order:?}, k3(r): {}", k3.map_or("n/a".into(), |p| p.to_string())),
    });
    steps
}

pub fn worked_example_report() -> ExampleReport {
    let load = |name: &str| {
        let p = parse_bundled(name).expect("bundled files parse");
        ArtinPresentation::validate(p.n, p.relators)
    };
    let verbatim: Vec<(&str, Result<ArtinPresentation, ValidationError>)> =
        ["s.ap", "t.ap", "r.ap"].into_iter().map(|n| (n, load(n))).collect();
    let errata: Vec<String> = verbatim
        .iter()
        .filter_map(|(n, v)| v.as_ref().err().map(|e| format!("{n}: {e}")))
        .collect();
    let get = |name: &str| load(name).expect("corrected files validate");
    if errata.is_empty() {
        let [s, t, r] = ["s.ap", "t.ap", "r.ap"].map(get);
        return ExampleReport { errata, verbatim: example_steps(&s, &t, &r), corrected: Vec::new() };
    }
    let [s, t, r] = ["s_corrected.ap", "t.ap", "r.ap"].map(get);
    ExampleReport { errata, verbatim: Vec::new(), corrected: example_steps(&s, &t, &r) }
}

pub fn worked_example() -> CriterionResult {
    let start = Instant::now();
    let rep = worked_example_report();
    let mut parts = Vec::new();
    let ok = if rep.errata.is_empty() {
        parts.extend(rep.verbatim.iter().map(|s| format!("({}) {}", s.step, if s.passed { "ok" } else { "FAILED" })));
        rep.verbatim.iter().all(|s| s.passed)
    } else {
        parts.push(format!("erratum: {}", rep.errata.join("; ")));
        parts.push("(c)-(f) skipped with erratum".into());
        let corrected: Vec<String> =
            rep.corrected.iter().map(|s| format!("({}) {}", s.step, if s.passed { "ok" } else { "FAILED" })).collect();
        parts.push(format!("corrected s: {}", corrected.join(" ")));
        // The errata branch passes when the erratum is reported; the
        // corrected run is informational but must not fail silently.
        rep.corrected.iter().all(|s| s.passed)
    };
    finish(5, "worked example", start, Some(Duration::from_secs(60)), ok, parts.join("; "))
}

/// Small presentations checked against the exhaustive oracle.
fn oracle_cases() -> Vec<(FpGroup, FiniteGroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f72);
    let targets = ["cyclic:6", "s3", "bd:2", "2t", "s4", "sl25"];
    let mut cases = Vec::new();
    for spec in targets {
        let target = named_group(spec).expect("known target");
        let max_rank = (1..=4).rev().find(|&k| (target.order() as f64).powi(k) <= 1e6).unwrap_or(1);
        for _ in 0..4 {
            let k = rng.gen_range(1..=max_rank as usize);
            let relators = (0..rng.gen_range(0..=k + 1))
                .map(|_| {
                    let letters: Vec<i32> = (0..rng.gen_range(1..=8))
                        .map(|_| rng.gen_range(1..=k as i32) * if rng.gen_bool(0.5) { 1 } else { -1 })
                        .collect();
                    Word::from_letters(k, &letters).expect("in range")
                })
                .collect();
            cases.push((FpGroup::new(k, relators), target.clone()));
        }
    }
    cases.push((FpGroup::free(2), FiniteGroup::symmetric(3)));
    cases
}

pub fn invariant_oracles() -> CriterionResult {
    let start = Instant::now();
    let mut fails = Vec::new();
    let alex = |text: &str| {
        let (g, rels) = parse_group_file(text).expect("bundled group parses");
        alexander_polynomial(&FpGroup::new(g, rels)).ok()
    };
    if alex(TREFOIL_FP) != Some(laurent(&[1, -1, 1])) {
        fails.push("trefoil".to_string());
    }
    if alex(FIGURE8_FP) != Some(laurent(&[1, -3, 1])) {
        fails.push("figure-8".to_string());
    }
    if alexander_polynomial(&FpGroup::free(1)).ok() != Some(LaurentPoly::one()) {
        fails.push("unknot".to_string());
    }
    for k in 1..=50 {
        let g = FpGroup::new(1, vec![Word::power(1, 1, k).unwrap()]);
        if group_order(&g, 1000) != Ok(k as usize) {
            fails.push(format!("<x|x^{k}>"));
        }
    }
    let free_s3 = hom_count(&FpGroup::free(2), &FiniteGroup::symmetric(3), DEFAULT_NODE_CAP).map(|c| c.total);
    if free_s3 != Ok(36) {
        fails.push(format!("F2 -> S3 gave {free_s3:?}"));
    }
    let cases = oracle_cases();
    let agree = cases
        .iter()
        .filter(|(g, t)| hom_count(g, t, DEFAULT_NODE_CAP).ok() == Some(exhaustive_hom_count(g, t)))
        .count();
    if agree != cases.len() {
        fails.push(format!("hom_count agrees with exhaustive scan {agree}/{}", cases.len()));
    }
    let detail = if fails.is_empty() {
        format!("Alexander oracles, <x|x^k> for k <= 50, F2 -> S3 = 36, {agree}/{} exhaustive scans agree", cases.len())
    } else {
        format!("failed: {}", fails.join(", "))
    };
    finish(6, "invariant oracles", start, None, fails.is_empty(), detail)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TrialityTally {
    pub trivial: usize,
    pub i120: usize,
    pub not_perfect: usize,
    pub unknown: usize,
    pub violations: Vec<Triality>,
}

pub fn triality_run(seed: u64) -> TrialityTally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7472);
    let mut tally = TrialityTally::default();
    for _ in 0..TRIALITY_SAMPLES {
        let n = rng.gen_range(2..=4);
        let signs: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let r = triality_corpus_entry(n, rng.gen(), &signs, TORELLI_SIZE).expect("pure braids");
        match triality_check(&r, TRIALITY_CAP) {
            Triality::Trivial => tally.trivial += 1,
            Triality::I120 { .. } => tally.i120 += 1,
            Triality::NotPerfect => tally.not_perfect += 1,
            Triality::Unknown { .. } => tally.unknown += 1,
            v @ Triality::Violation { .. } => tally.violations.push(v),
        }
    }
    tally
}

pub fn triality(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let t = triality_run(seed);
    let detail = format!(
        "{TRIALITY_SAMPLES} samples: {} trivial, {} of order 120, {} not perfect, {} not closed within {TRIALITY_CAP} cosets, {} violations",
        t.trivial,
        t.i120,
        t.not_perfect,
        t.unknown,
        t.violations.len()
    );
    finish(7, "triality", start, None, t.violations.is_empty(), detail)
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix<i64> {
    let mut u = IntMatrix::<i64>::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            u.add_col_multiple(i, j, &rng.gen_range(-1..=1));
        }
    }
    if rng.gen_bool(0.5) {
        u.negate_col(rng.gen_range(0..n));
    }
    u
}

pub fn donaldson(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let e8 = IntSymMatrix::<i64>::e8();
    let i8 = IntSymMatrix::<i64>::identity(8);
    let mut fails = Vec::new();
    if donaldson_obstructed(&e8) != Obstruction::Obstructed {
        fails.push("E8".to_string());
    }
    if donaldson_obstructed(&i8) != Obstruction::NotObstructed {
        fails.push("I8".to_string());
    }
    if donaldson_obstructed(&IntSymMatrix::<i64>::diagonal(&[1, -1])) != Obstruction::NotObstructed {
        fails.push("diag(1,-1)".to_string());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x646f);
    let mut invariant = 0;
    for k in 0..50 {
        let base = if k % 2 == 0 { &e8 } else { &i8 };
        let u = random_unimodular(&mut rng, 8);
        if donaldson_obstructed(&base.congruent(&u)) == donaldson_obstructed(base) {
            invariant += 1;
        }
    }
    if invariant != 50 {
        fails.push(format!("congruence invariance {invariant}/50"));
    }
    let detail = if fails.is_empty() {
        "E8 obstructed, I8 and diag(1,-1) not, 50/50 congruences invariant".to_string()
    } else {
        format!("failed: {}", fails.join(", "))
    };
    finish(8, "Donaldson predicate", start, Some(Duration::from_secs(10)), fails.is_empty(), detail)
}

/// Node budget per target for the witness search.
pub const WITNESS_BUDGET: u64 = 50_000_000;

pub fn e8_realization() -> CriterionResult {
    let start = Instant::now();
    let e8 = IntSymMatrix::<i64>::e8();
    let mut fails = Vec::new();
    let r = realize_form(&e8).expect("E8 realizes");
    if ArtinPresentation::validate(8, r.relators().to_vec()).is_err() {
        fails.push("r_E8 fails validation".to_string());
    }
    if abelianization_matrix(&r).ok().as_ref() != Some(&e8) {
        fails.push("A(r_E8) != E8".to_string());
    }
    if !is_perfect(&pi(&r)) {
        fails.push("π(r_E8) not perfect".to_string());
    }
    let witness = match theorem_witness(&r, WITNESS_BUDGET) {
        Ok(Witness::NontrivialityCertified { target, .. }) => format!("non-trivial map to {target}"),
        Ok(Witness::Inconclusive { reason, .. }) => format!("inconclusive ({reason})"),
        Ok(Witness::NotObstructed) => {
            fails.push("witness reported NotObstructed".to_string());
            String::new()
        }
        Err(e) => {
            fails.push(e.to_string());
            String::new()
        }
    };
    let w = trivial_group_with_exponents(&e8);
    let sharp = ArtinPresentation::validate(8, w.clone()).is_err()
        && group_order(&tietze_simplify(&FpGroup::new(8, w), 64), 100_000) == Ok(1);
    if !sharp {
        fails.push("non-Artin E8 presentation of the trivial group not confirmed".to_string());
    }
    let detail = if fails.is_empty() {
        format!("A(r_E8) = E8, valid, perfect; {witness}; trivial non-Artin E8 presentation rejected")
    } else {
        format!("failed: {}", fails.join(", "))
    };
    finish(9, "E8 realization", start, Some(Duration::from_secs(60)), fails.is_empty(), detail)
}

pub const DEFAULT_SEED: u64 = 20;

/// Every criterion in order.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    let [c1, c2] = correspondence_and_symmetry(seed);
    vec![
        c1,
        c2,
        torelli_invariance(seed),
        round_trips_and_laws(seed),
        worked_example(),
        invariant_oracles(),
        triality(seed),
        donaldson(seed),
        e8_realization(),
    ]
}
