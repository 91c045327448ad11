// Copyright 2026 The maximin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Expected values come from independent computations in this file or from
//! the exhaustive oracles, never from the solvers under test. Runs as a
//! plain binary so the verdict lines are always printed.

use maximin::balancing::{balance, balanced_solution, is_balanced, maximin_over_subsets};
use maximin::flowcore::{is_forest, trim_to_forest};
use maximin::instance::{gen_cubic_gap, gen_phragmen_worstcase, gen_random, graphs, RandomParams, StakeDist};
use maximin::oracle::{check_pjr_exact, committee_value, opt_maximin, score_by_rootfind};
use maximin::phragmms::{insert, linscore, max_score, prescore, score};
use maximin::protocol::{log_to_jsonl, run_window, Mode, ProverSpec, Scenario, Strategy};
use maximin::scalar::{min_of, Scalar};
use maximin::solvers::{balanced_phragmms, lazy_mms_search, ls_pjr, mms, seq_phragmen};
use maximin::verify::{pjr_condition, verify_full};
use maximin::{CandidateId, ElectionInstance, Rational, Solution};
use num::traits::{One, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::{Duration, Instant};

/// Float agreement with closed forms and between score routines.
const FLOAT_TOL: f64 = 1e-9;
const CORPUS_SIZE: usize = 520;
const CORPUS_BUDGET: Duration = Duration::from_secs(120);
const GOLDEN_SCENARIO: &str = include_str!("golden/worstcase_two_provers.scenario.json");
const GOLDEN_LOG: &str = include_str!("golden/worstcase_two_provers.jsonl");

type Q = Rational;

fn q(a: i64, b: i64) -> Q {
    Q::from_ratio(a, b)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= FLOAT_TOL * (1.0 + a.abs().max(b.abs()))
}

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn from_violations(violations: Vec<String>, checked: &str) -> Self {
        match violations.first() {
            None => Verdict { pass: true, detail: checked.to_string() },
            Some(first) => Verdict { pass: false, detail: format!("{} violations; first: {first}", violations.len()) },
        }
    }
}

struct Case {
    label: String,
    instance: ElectionInstance<Q>,
    opt: Q,
}

/// Seeded random instances with |N| <= 8, |C| <= 8, k <= 4.
fn corpus() -> Vec<Case> {
    let params: Vec<RandomParams> = (0..CORPUS_SIZE as u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0_FFEE ^ seed);
            let k = rng.random_range(1..=4usize);
            let candidates = rng.random_range(k + 1..=8usize);
            let voters = rng.random_range(2..=8usize);
            let prob = rng.random_range(0.25..0.7);
            let stake = match seed % 3 {
                0 => StakeDist::Unit,
                1 => StakeDist::Uniform { low: 1.0, high: 10.0 },
                _ => StakeDist::Pareto { shape: 1.5 },
            };
            RandomParams::new(voters, candidates, k, prob, stake, seed)
        })
        .collect();
    params
        .par_iter()
        .map(|p| {
            let instance: ElectionInstance<Q> = gen_random(p).expect("corpus instance");
            let opt = opt_maximin(&instance).expect("oracle").0;
            Case { label: format!("seed {} ({}x{}, k={})", p.seed, p.voters, p.candidates, p.k), instance, opt }
        })
        .collect()
}

fn harmonic(k: usize) -> Q {
    (1..=k as i64).map(|j| q(1, j)).fold(Q::zero(), |a, b| a + b)
}

fn criterion_1() -> Verdict {
    let mut violations = Vec::new();
    for k in [2usize, 4, 8, 16] {
        let start = Instant::now();
        let eps = q(1, 10);
        let expected = harmonic(k) - eps.clone();
        let inst: ElectionInstance<Q> = gen_phragmen_worstcase(k, eps).unwrap();
        let seq = seq_phragmen(&inst);
        let obj = seq.objective().unwrap();
        let float_obj = seq_phragmen(&inst.convert::<f64>()).objective().unwrap();
        let (opt, _) = opt_maximin(&inst).unwrap();
        if !close(float_obj, 1.0 / expected.to_f64()) {
            violations.push(format!("k={k}: float objective {float_obj}"));
        }
        if obj != Q::one() / expected.clone() {
            violations.push(format!("k={k}: exact objective {obj}"));
        }
        if !seq.contains(CandidateId(0)) {
            violations.push(format!("k={k}: c0 not elected"));
        }
        if opt != Q::one() {
            violations.push(format!("k={k}: optimum {opt}"));
        }
        if opt / obj != expected {
            violations.push(format!("k={k}: ratio differs from H_k - eps"));
        }
        if start.elapsed() >= Duration::from_secs(1) {
            violations.push(format!("k={k}: took {:?}", start.elapsed()));
        }
    }
    Verdict::from_violations(violations, "k in {2,4,8,16}: objective 1/(H_k-0.1), c0 elected, OPT 1, ratio exact")
}

fn independent_set(adjacency: &[Vec<usize>], k: usize) -> Option<Vec<usize>> {
    let n = adjacency.len();
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).find_map(|m| {
        let set: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
        let independent = set.iter().all(|&u| adjacency[u].iter().all(|&v| m >> v & 1 == 0));
        independent.then_some(set)
    })
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut violations = Vec::new();
    let k4: ElectionInstance<Q> = gen_cubic_gap(&graphs::k4(), 2).unwrap();
    let (opt, _) = opt_maximin(&k4).unwrap();
    if opt != q(5, 2) {
        violations.push(format!("K4 k=2 optimum {opt}"));
    }
    for (name, adj, k) in [("K33", graphs::k33(), 2usize), ("Petersen", graphs::petersen(), 4)] {
        let inst: ElectionInstance<Q> = gen_cubic_gap(&adj, k).unwrap();
        let Some(set) = independent_set(&adj, k) else {
            violations.push(format!("{name}: no independent set of size {k}"));
            continue;
        };
        let committee: Vec<CandidateId> = set.into_iter().map(CandidateId).collect();
        let sol = balanced_solution(&inst, &committee);
        if committee.iter().any(|&c| *sol.support_of(c).unwrap() != q(3, 1)) {
            violations.push(format!("{name}: supports {:?}", sol.supports()));
        }
        if committee_value(&inst, &committee) != q(3, 1) {
            violations.push(format!("{name}: flow value differs from 3"));
        }
    }
    if start.elapsed() >= Duration::from_secs(1) {
        violations.push(format!("took {:?}", start.elapsed()));
    }
    Verdict::from_violations(violations, "K4 k=2 OPT = 5/2; independent committees on K33 and Petersen get support 3")
}

fn criterion_3(corpus: &[Case], corpus_time: Duration) -> Verdict {
    let start = Instant::now();
    let bound_315 = q(315, 100);
    let violations: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|case| {
            let inst = &case.instance;
            let mut v = Vec::new();
            let m = mms(inst).objective().unwrap();
            if m.clone() * q(2, 1) < case.opt {
                v.push(format!("{}: mms {m} < OPT/2 with OPT {}", case.label, case.opt));
            }
            let b = balanced_phragmms(inst).objective().unwrap();
            if b.clone() * bound_315.clone() < case.opt {
                v.push(format!("{}: balanced phragmms {b} < OPT/3.15", case.label));
            }
            let l = lazy_mms_search(inst, &q(1, 10)).solution.objective().unwrap();
            if l.clone() * q(21, 10) < case.opt {
                v.push(format!("{}: lazy search {l} < OPT/2.1", case.label));
            }
            v
        })
        .collect();
    let elapsed = corpus_time + start.elapsed();
    let mut violations = violations;
    if elapsed >= CORPUS_BUDGET {
        violations.push(format!("corpus and checks took {elapsed:?}"));
    }
    Verdict::from_violations(
        violations,
        &format!("{} instances: MMS >= OPT/2, Balanced >= OPT/3.15, Lazy >= OPT/2.1 ({elapsed:.1?})", corpus.len()),
    )
}

fn criterion_4(corpus: &[Case]) -> Verdict {
    let bound_315 = q(315, 100);
    let checked: Vec<(usize, Vec<String>)> = corpus
        .par_iter()
        .map(|case| {
            let inst = &case.instance;
            let t_hat = inst.pjr_threshold();
            let mut v = Vec::new();
            let bp = balanced_phragmms(inst);
            if !verify_full(inst, &bp, None).passed() {
                v.push(format!("{}: balanced phragmms output rejected", case.label));
            }
            let seq = seq_phragmen(inst);
            let candidates = [bp.clone(), mms(inst), seq.clone(), ls_pjr(inst, &seq, None).solution];
            let mut passing = 0;
            for sol in candidates.iter().filter(|s| verify_full(inst, s, None).passed()) {
                passing += 1;
                if let Some(bad) = check_pjr_exact(inst, sol.committee(), &t_hat).unwrap() {
                    v.push(format!("{}: passing solution violates PJR: {bad:?}", case.label));
                }
                if sol.objective().unwrap() * bound_315.clone() < case.opt {
                    v.push(format!("{}: passing solution below OPT/3.15", case.label));
                }
            }
            (passing, v)
        })
        .collect();
    let passing: usize = checked.iter().map(|c| c.0).sum();
    let violations = checked.into_iter().flat_map(|c| c.1).collect();
    Verdict::from_violations(
        violations,
        &format!("all Balanced outputs pass; {passing} passing solutions satisfy exact PJR and OPT/3.15"),
    )
}

fn criterion_5(corpus: &[Case]) -> Verdict {
    let eps = q(1, 10);
    let log_bound = 3.15f64.ln() / 1.1f64.ln();
    let violations: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|case| {
            let inst = &case.instance;
            let k = inst.k();
            let t_hat = inst.pjr_threshold();
            let mut v = Vec::new();
            let seq = seq_phragmen(inst);
            let out = ls_pjr(inst, &seq, Some(&eps));
            let before = seq.objective().unwrap();
            let after = out.solution.objective().unwrap();
            if after < before {
                v.push(format!("{}: objective fell from {before} to {after}", case.label));
            }
            let threshold = min_of((Q::one() + eps.clone()) * after, t_hat.clone());
            if !pjr_condition(inst, &out.solution, &threshold) {
                v.push(format!("{}: output fails the PJR condition at {threshold}", case.label));
            }
            let from_bp = ls_pjr(inst, &balanced_phragmms(inst), Some(&eps));
            if from_bp.iterations as f64 > k as f64 * (1.0 + log_bound) + 1.0 {
                v.push(format!("{}: {} iterations from a Balanced seed", case.label, from_bp.iterations));
            }
            for seed in [&seq, &balanced_phragmms(inst)] {
                let unbounded = ls_pjr(inst, seed, None);
                if unbounded.iterations > k + 1 {
                    v.push(format!("{}: eps=inf took {} iterations", case.label, unbounded.iterations));
                }
            }
            v
        })
        .collect();
    Verdict::from_violations(violations, "eps=0.1: monotone, PJR condition at exit, iteration bounds hold")
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> Vec<CandidateId> {
    let mut ids: Vec<CandidateId> = sample(rng, n, size).into_iter().map(CandidateId).collect();
    ids.sort_unstable();
    ids
}

fn criterion_6(corpus: &[Case]) -> Verdict {
    let mut violations = Vec::new();
    let mut lemma2 = 0;
    for case in corpus {
        let inst = &case.instance;
        let mut rng = ChaCha8Rng::seed_from_u64(lemma2 as u64);
        let size = rng.random_range(1..=inst.k());
        let committee = random_subset(&mut rng, inst.num_candidates(), size);
        let sol = balanced_solution(inst, &committee);
        if let Err(w) = is_balanced(inst, &sol) {
            violations.push(format!("{}: not balanced: {w:?}", case.label));
        }
        if sol.objective().unwrap() != maximin_over_subsets(inst, &committee).unwrap() {
            violations.push(format!("{}: least support differs from the subset minimum", case.label));
        }
        lemma2 += 1;
    }
    // Larger committees in floating point.
    for seed in 0..80u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + seed);
        let k = rng.random_range(5..=10usize);
        let params = RandomParams::new(14, 12, k, 0.35, StakeDist::Uniform { low: 1.0, high: 10.0 }, seed);
        let inst: ElectionInstance<f64> = gen_random(&params).unwrap();
        let committee = random_subset(&mut rng, 12, k);
        let sol = Solution::new(&inst, committee.clone(), balance(&inst, &committee));
        if let Err(w) = is_balanced(&inst, &sol) {
            violations.push(format!("float seed {seed}: not balanced: {w:?}"));
        }
        let (a, b) = (sol.objective().unwrap(), maximin_over_subsets(&inst, &committee).unwrap());
        if !close(a, b) {
            violations.push(format!("float seed {seed}: {a} vs subset minimum {b}"));
        }
        lemma2 += 1;
    }
    let mut pairs = 0;
    for (i, case) in corpus.iter().enumerate() {
        if pairs == 200 {
            break;
        }
        let inst = &case.instance;
        if inst.num_candidates() < 3 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(20_000 + i as u64);
        let big = rng.random_range(2..inst.num_candidates());
        let outer = random_subset(&mut rng, inst.num_candidates(), big);
        let keep = rng.random_range(1..big);
        let inner: Vec<CandidateId> = sample(&mut rng, big, keep).into_iter().map(|j| outer[j]).collect();
        let small_sol = balanced_solution(inst, &inner);
        let big_sol = balanced_solution(inst, &outer);
        for &c in &inner {
            if small_sol.support_of(c) < big_sol.support_of(c) {
                violations.push(format!("{}: support of {} grows with the committee", case.label, c.0));
            }
        }
        pairs += 1;
    }
    if pairs < 200 {
        violations.push(format!("only {pairs} nested pairs"));
    }
    Verdict::from_violations(
        violations,
        &format!("{lemma2} balanced vectors match the subset minimum (|A| <= 10); {pairs} nested pairs monotone"),
    )
}

fn criterion_7(corpus: &[Case]) -> Verdict {
    let mut violations = Vec::new();
    let mut states = 0;
    let mut lin_checks = 0;
    let mut inserts = 0;
    for (i, case) in corpus.iter().enumerate().take(500) {
        let inst = &case.instance;
        let mut rng = ChaCha8Rng::seed_from_u64(30_000 + i as u64);
        let size = rng.random_range(0..inst.k());
        let committee = random_subset(&mut rng, inst.num_candidates(), size);
        let unelected: Vec<CandidateId> = inst.candidates().filter(|c| !committee.contains(c)).collect();

        // Float state against the exact bisection oracle.
        let finst = inst.convert::<f64>();
        let fsol = if committee.is_empty() { Solution::empty(&finst) } else { balanced_solution(&finst, &committee) };
        let fast = max_score(&finst, &fsol).unwrap().value;
        let slow = unelected.iter().map(|&c| score_by_rootfind(&finst, &fsol, c).to_f64()).fold(f64::MIN, f64::max);
        if !close(fast, slow) {
            violations.push(format!("{}: max score {fast} vs bisection {slow}", case.label));
        }
        states += 1;

        // Exact state: tangent underestimates and insertion.
        let sol = if committee.is_empty() { Solution::empty(inst) } else { balanced_solution(inst, &committee) };
        let top = sol.supports().iter().cloned().fold(Q::one(), |a, b| if b > a { b } else { a });
        for &c in &unelected {
            let s = score(inst, &sol, c);
            for j in 0..10i64 {
                let x = top.clone() * q(3 * j, 20);
                lin_checks += 1;
                if linscore(inst, &sol, c, &x) > s {
                    violations.push(format!("{}: linscore above score for {} at {x}", case.label, c.0));
                }
            }
        }
        let c = unelected[rng.random_range(0..unelected.len())];
        let t = match rng.random_range(0..3) {
            0 => Q::zero(),
            1 => sol.supports().first().cloned().unwrap_or_else(Q::one),
            _ => top.clone() * q(rng.random_range(0..40), 20),
        };
        let expected_new = prescore(inst, &sol, c, &t);
        let after = insert(inst, &sol, c, &t).unwrap();
        inserts += 1;
        if *after.support_of(c).unwrap() != expected_new {
            violations.push(format!("{}: inserted support differs from the pre-score", case.label));
        }
        for &m in sol.committee() {
            let floor = min_of(sol.support_of(m).unwrap().clone(), t.clone());
            if *after.support_of(m).unwrap() < floor {
                violations.push(format!("{}: member {} fell below min(supp, t)", case.label, m.0));
            }
        }
        let overspent = inst.voters().any(|v| after.voter_spent(inst, v) > *inst.stake(v));
        if overspent || after.weights().iter().any(|w| *w < Q::zero()) {
            violations.push(format!("{}: insertion is infeasible", case.label));
        }
    }
    Verdict::from_violations(
        violations,
        &format!("{states} states agree with bisection; {lin_checks} tangent checks; {inserts} exact insertions"),
    )
}

fn criterion_8(corpus: &[Case]) -> Verdict {
    let violations: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|case| {
            let inst = &case.instance;
            let mut v = Vec::new();
            for sol in [balanced_phragmms(inst), seq_phragmen(inst)] {
                let trimmed = trim_to_forest(inst, &sol);
                if trimmed.supports() != sol.supports() {
                    v.push(format!("{}: supports changed", case.label));
                }
                if !is_forest(inst, trimmed.weights()) {
                    v.push(format!("{}: positive edges contain a cycle", case.label));
                }
                if trimmed.positive_edges() >= inst.num_voters() + inst.k() {
                    v.push(format!("{}: {} positive edges", case.label, trimmed.positive_edges()));
                }
                if inst.voters().any(|n| trimmed.voter_spent(inst, n) > *inst.stake(n)) {
                    v.push(format!("{}: trimmed solution infeasible", case.label));
                }
            }
            v
        })
        .collect();
    Verdict::from_violations(violations, "supports preserved exactly, acyclic, |E_w| < |N| + k")
}

fn criterion_9(corpus: &[Case]) -> Verdict {
    let mut violations = Vec::new();
    let inst: ElectionInstance<f64> = gen_phragmen_worstcase(4, 0.1).unwrap();
    let scenario: Scenario = serde_json::from_str(GOLDEN_SCENARIO).unwrap();
    let logs: Vec<String> = (0..3)
        .map(|_| log_to_jsonl(&run_window(&inst, &scenario.provers, Mode::FullCheck, scenario.window).unwrap().log))
        .collect();
    if logs.iter().any(|l| l != GOLDEN_LOG) {
        violations.push("worst-case two-prover log differs from the golden file".to_string());
    }

    let provers = [
        ProverSpec::new("junk", Strategy::Malformed, 1),
        ProverSpec::new("heavy", Strategy::AdversarialOverweight, 1),
        ProverSpec::new("weak", Strategy::SeqPhragmen, 1),
        ProverSpec::new("lazy", Strategy::LazyMms, 1),
        ProverSpec::new("honest", Strategy::BalancedPhragmms, 2),
        ProverSpec::new("mms", Strategy::Mms, 2),
        ProverSpec::new("heavy-late", Strategy::AdversarialOverweight, 3),
        ProverSpec::new("junk-late", Strategy::Malformed, 3),
    ];
    let mut replaced = 0;
    for case in corpus.iter().take(150) {
        let finst = case.instance.convert::<f64>();
        for mode in [Mode::FullCheck, Mode::Optimized] {
            let out = run_window(&finst, &provers, mode, 3).unwrap();
            let winner = out.submitter.unwrap_or_default();
            if winner.starts_with("junk") || winner.starts_with("heavy") {
                violations.push(format!("{}: adversary {winner} won in {mode:?}", case.label));
            }
            replaced += out.log.iter().filter(|e| e.reason.as_deref().is_some_and(|r| r.starts_with("replaces"))).count();
        }
        let sol = balanced_phragmms(&finst);
        let visits = verify_full(&finst, &sol, None).edge_visits;
        if visits > 4 * finst.num_edges() {
            violations.push(format!("{}: {visits} edge visits for {} edges", case.label, finst.num_edges()));
        }
    }
    Verdict::from_violations(
        violations,
        &format!("golden log stable over 3 reruns; adversaries never win (150 instances x 2 modes, {replaced} replacements); edge visits <= 4|E|"),
    )
}

fn main() {
    let start = Instant::now();
    let corpus = corpus();
    let corpus_time = start.elapsed();
    let verdicts = [
        ("Phragmen worst-case ratio", criterion_1()),
        ("Hardness-gap instances", criterion_2()),
        ("Approximation bounds vs oracle", criterion_3(&corpus, corpus_time)),
        ("Verifier soundness and completeness", criterion_4(&corpus)),
        ("LS-PJR contract", criterion_5(&corpus)),
        ("Balancing characterization", criterion_6(&corpus)),
        ("Score machinery", criterion_7(&corpus)),
        ("Forest trimming", criterion_8(&corpus)),
        ("Protocol simulation", criterion_9(&corpus)),
    ];
    let mut failed = 0;
    for (i, (name, verdict)) in verdicts.iter().enumerate() {
        let tag = if verdict.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {name}: {}", i + 1, verdict.detail);
        failed += usize::from(!verdict.pass);
    }
    println!("acceptance: {} of {} criteria passed in {:.1?}", verdicts.len() - failed, verdicts.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
