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


//! Simulation of the on-chain election window.
//!
//! Provers compute solutions off-chain and submit them at fixed block
//! heights. The chain keeps one tentative winner and replaces it only with a
//! feasible solution of strictly higher least support that also passes the
//! admission checks of the chosen [`Mode`]. The tentative winner at the end
//! of the window is declared the winner.
//!
//! The simulation is a pure function of its inputs: reruns produce
//! byte-identical logs.

use crate::error::{Error, Result};
use crate::flowcore::trim_to_forest;
use crate::instance::{solution_from_file, solution_to_file, CandidateId, ElectionInstance, Solution, SolutionFile};
use crate::scalar::{from_json_value, to_json_value, Scalar};
use crate::solvers::{balanced_phragmms, lazy_mms, lazy_mms_search, ls_pjr, mms, seq_phragmen};
use crate::verify::{check_feasible, compare_solutions, pjr_condition, verify_full, VerifyReport};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::cmp::Ordering;

/// How a prover produces its submission.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    BalancedPhragmms,
    SeqPhragmen,
    Mms,
    /// Lazy MMS at the prover's `threshold`, or the geometric search over
    /// thresholds when none is given.
    LazyMms,
    /// Balanced Phragmms output with every weight doubled.
    AdversarialOverweight,
    /// Balanced Phragmms output naming a candidate that does not exist.
    Malformed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProverSpec {
    pub name: String,
    pub strategy: Strategy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Value>,
    pub submit_block: u64,
}

impl ProverSpec {
    pub fn new(name: &str, strategy: Strategy, submit_block: u64) -> Self {
        ProverSpec { name: name.to_string(), strategy, threshold: None, submit_block }
    }
}

/// Admission rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Every admitted solution must pass [`verify_full`].
    #[serde(alias = "full")]
    FullCheck,
    /// Only the first admitted solution runs [`verify_full`]; later ones
    /// are checked for feasibility and improvement. At the end of the
    /// window the tentative winner must satisfy the PJR condition at
    /// `Σ s_n / k`, otherwise the window is extended and the tentative
    /// winner is post-processed with LS-PJR.
    Optimized,
}

/// Scenario file accepted by the `simulate` subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub window: u64,
    /// Extension length in blocks; defaults to `k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<u64>,
    pub provers: Vec<ProverSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Submitted,
    Admitted,
    Rejected,
    WindowExtended,
    DeclaredWinner,
    Rewarded,
    Fined,
}

/// One log line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub block: u64,
    pub actor: String,
    pub action: Action,
    pub objective: Option<Value>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tentative<T: Scalar> {
    pub solution: Solution<T>,
    pub submitter: String,
    pub block: u64,
    /// Present when the solution went through [`verify_full`].
    pub report: Option<VerifyReport<T>>,
}

/// On-chain state during a window.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainState<T: Scalar> {
    pub tentative: Option<Tentative<T>>,
    pub block_height: u64,
    /// First and last block of the window, inclusive.
    pub window: (u64, u64),
    pub mode: Mode,
    pub log: Vec<Event>,
    /// Submitters of every admitted solution, in order.
    admitted: Vec<String>,
}

/// Actor name used for chain-side events.
pub const CHAIN: &str = "chain";
/// Actor name of the LS-PJR post-processing run during an extension.
pub const REPAIR: &str = "ls-pjr";

impl<T: Scalar> ChainState<T> {
    pub fn new(mode: Mode, window: (u64, u64)) -> Self {
        ChainState { tentative: None, block_height: window.0, window, mode, log: Vec::new(), admitted: Vec::new() }
    }

    fn emit(&mut self, actor: &str, action: Action, objective: Option<&T>, reason: Option<String>) {
        self.log.push(Event {
            block: self.block_height,
            actor: actor.to_string(),
            action,
            objective: objective.map(to_json_value),
            reason,
        });
    }

    fn admit(&mut self, actor: &str, solution: Solution<T>, report: Option<VerifyReport<T>>) {
        let objective = solution.objective();
        let reason = self.tentative.as_ref().map(|t| format!("replaces {}", t.submitter));
        self.emit(actor, Action::Admitted, objective.as_ref(), reason);
        self.admitted.push(actor.to_string());
        self.tentative = Some(Tentative { solution, submitter: actor.to_string(), block: self.block_height, report });
    }

    /// Applies the admission rule to a submitted file at the current block.
    /// Returns whether it became the tentative winner.
    pub fn submit(&mut self, instance: &ElectionInstance<T>, actor: &str, file: &SolutionFile) -> bool {
        let claimed = file.objective.as_ref().and_then(from_json_value::<T>);
        self.emit(actor, Action::Submitted, claimed.as_ref(), None);
        let solution = match solution_from_file(instance, file) {
            Ok(s) => s,
            Err(e) => {
                self.emit(actor, Action::Rejected, None, Some(format!("malformed: {e}")));
                return false;
            }
        };
        let needs_full = self.mode == Mode::FullCheck || self.tentative.is_none();
        let report = if needs_full {
            let report = verify_full(instance, &solution, None);
            if !report.passed() {
                let reason = report.witness.as_ref().map(|w| w.describe(instance));
                self.emit(actor, Action::Rejected, report.objective.as_ref(), reason);
                return false;
            }
            Some(report)
        } else {
            if let Err(w) = check_feasible(instance, &solution) {
                self.emit(actor, Action::Rejected, solution.objective().as_ref(), Some(w.describe(instance)));
                return false;
            }
            None
        };
        if let Some(current) = &self.tentative {
            if compare_solutions(instance, &current.solution, &solution) != Ordering::Greater {
                let reason = format!("does not improve on {}", current.submitter);
                self.emit(actor, Action::Rejected, solution.objective().as_ref(), Some(reason));
                return false;
            }
        }
        self.admit(actor, solution, report);
        true
    }

    /// Extension-time admission: the repaired solution must be feasible,
    /// satisfy the PJR condition and not lower the least support.
    fn submit_repair(&mut self, instance: &ElectionInstance<T>, file: &SolutionFile) -> bool {
        let claimed = file.objective.as_ref().and_then(from_json_value::<T>);
        self.emit(REPAIR, Action::Submitted, claimed.as_ref(), None);
        let solution = match solution_from_file(instance, file) {
            Ok(s) => s,
            Err(e) => {
                self.emit(REPAIR, Action::Rejected, None, Some(format!("malformed: {e}")));
                return false;
            }
        };
        if let Err(w) = check_feasible(instance, &solution) {
            self.emit(REPAIR, Action::Rejected, solution.objective().as_ref(), Some(w.describe(instance)));
            return false;
        }
        let t_hat = instance.pjr_threshold();
        if !pjr_condition(instance, &solution, &t_hat) {
            self.emit(REPAIR, Action::Rejected, solution.objective().as_ref(), Some("fails the PJR condition".into()));
            return false;
        }
        if let Some(current) = &self.tentative {
            if compare_solutions(instance, &current.solution, &solution) == Ordering::Less {
                self.emit(REPAIR, Action::Rejected, solution.objective().as_ref(), Some("lowers the least support".into()));
                return false;
            }
        }
        self.admit(REPAIR, solution, None);
        true
    }
}

/// Result of [`run_window`].
#[derive(Clone, Debug, PartialEq)]
pub struct WindowOutcome<T: Scalar> {
    pub winner: Option<Solution<T>>,
    pub submitter: Option<String>,
    pub log: Vec<Event>,
}

/// Trims an honest solution to a forest before submission.
pub fn trim_and_submit<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> Solution<T> {
    let trimmed = trim_to_forest(instance, solution);
    assert!(
        trimmed.positive_edges() < instance.num_voters() + instance.k(),
        "trimmed solution is not a forest"
    );
    trimmed
}

/// The off-chain computation of one prover.
pub fn prover_submission<T: Scalar>(instance: &ElectionInstance<T>, prover: &ProverSpec) -> Result<SolutionFile> {
    let honest = |s: Solution<T>| solution_to_file(instance, &trim_and_submit(instance, &s));
    Ok(match prover.strategy {
        Strategy::BalancedPhragmms => honest(balanced_phragmms(instance)),
        Strategy::SeqPhragmen => honest(seq_phragmen(instance)),
        Strategy::Mms => honest(mms(instance)),
        Strategy::LazyMms => match &prover.threshold {
            Some(v) => {
                let t: T = from_json_value(v)
                    .ok_or_else(|| Error::InvalidParameters(format!("bad threshold for {}", prover.name)))?;
                match lazy_mms(instance, &t) {
                    Ok(s) => honest(s),
                    Err(failure) => solution_to_file(instance, &failure.partial),
                }
            }
            None => honest(lazy_mms_search(instance, &T::from_ratio(1, 10)).solution),
        },
        Strategy::AdversarialOverweight => {
            let sol = balanced_phragmms(instance);
            let doubled: Vec<T> = sol.weights().iter().map(|w| w.clone() + w.clone()).collect();
            solution_to_file(instance, &Solution::new(instance, sol.committee().to_vec(), doubled))
        }
        Strategy::Malformed => {
            let mut file = solution_to_file(instance, &balanced_phragmms(instance));
            let mut ghost = String::from("ghost");
            while instance.candidate_by_name(&ghost).is_some() {
                ghost.push('_');
            }
            if let Some(last) = file.committee.last_mut() {
                *last = ghost;
            }
            file
        }
    })
}

/// Runs a window of `window_len` blocks with an extension of `k` blocks.
pub fn run_window<T: Scalar>(
    instance: &ElectionInstance<T>,
    provers: &[ProverSpec],
    mode: Mode,
    window_len: u64,
) -> Result<WindowOutcome<T>> {
    run_window_with_extension(instance, provers, mode, window_len, instance.k() as u64)
}

/// [`run_window`] with an explicit extension length.
pub fn run_window_with_extension<T: Scalar>(
    instance: &ElectionInstance<T>,
    provers: &[ProverSpec],
    mode: Mode,
    window_len: u64,
    extension_len: u64,
) -> Result<WindowOutcome<T>> {
    if provers.is_empty() {
        return Err(Error::InvalidParameters("at least one prover is required".into()));
    }
    if window_len == 0 || extension_len == 0 {
        return Err(Error::InvalidParameters("window and extension need at least one block".into()));
    }
    if let Some(p) = provers.iter().find(|p| p.submit_block < 1 || p.submit_block > window_len) {
        return Err(Error::InvalidParameters(format!(
            "prover {} submits at block {} outside the window 1..={window_len}",
            p.name, p.submit_block
        )));
    }
    let submissions: Vec<SolutionFile> = provers.iter().map(|p| prover_submission(instance, p)).collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..provers.len()).collect();
    order.sort_by_key(|&i| (provers[i].submit_block, i));

    let mut chain = ChainState::new(mode, (1, window_len));
    for i in order {
        chain.block_height = provers[i].submit_block;
        chain.submit(instance, &provers[i].name, &submissions[i]);
    }
    Ok(close_window(instance, chain, extension_len))
}

/// Ends the window at its last block: runs the end-of-window PJR check in
/// optimized mode (extending the window by `extension_len` blocks for an
/// LS-PJR repair if it fails), declares the winner and logs rewards.
pub fn close_window<T: Scalar>(
    instance: &ElectionInstance<T>,
    mut chain: ChainState<T>,
    extension_len: u64,
) -> WindowOutcome<T> {
    let window_end = chain.window.1;
    chain.block_height = window_end;
    if chain.mode == Mode::Optimized {
        let t_hat = instance.pjr_threshold();
        let failing = chain
            .tentative
            .as_ref()
            .filter(|t| !pjr_condition(instance, &t.solution, &t_hat))
            .map(|t| (t.submitter.clone(), t.solution.clone()));
        if let Some((submitter, solution)) = failing {
            let objective = solution.objective();
            chain.emit(&submitter, Action::Fined, objective.as_ref(), Some("tentative winner fails the PJR condition".into()));
            chain.window.1 = window_end + extension_len;
            chain.emit(CHAIN, Action::WindowExtended, None, Some(format!("extended to block {}", chain.window.1)));
            chain.block_height = window_end + 1;
            let repaired = ls_pjr(instance, &solution, None).solution;
            let file = solution_to_file(instance, &trim_and_submit(instance, &repaired));
            chain.submit_repair(instance, &file);
            chain.block_height = chain.window.1;
        }
    }

    let winner = chain.tentative.clone();
    match &winner {
        Some(t) => {
            let objective = t.solution.objective();
            chain.emit(&t.submitter.clone(), Action::DeclaredWinner, objective.as_ref(), None);
            let admitted = chain.admitted.clone();
            let last = admitted.len() - 1;
            for (i, who) in admitted.iter().enumerate() {
                let reason = match (i == 0, i == last) {
                    (true, true) => "first and last tentative winner",
                    (true, false) => "first tentative winner",
                    (false, true) => "last tentative winner",
                    (false, false) => "intermediate tentative winner",
                };
                chain.emit(who, Action::Rewarded, None, Some(reason.into()));
            }
        }
        None => chain.emit(CHAIN, Action::DeclaredWinner, None, Some("no admissible submission".into())),
    }
    WindowOutcome {
        submitter: winner.as_ref().map(|t| t.submitter.clone()),
        winner: winner.map(|t| t.solution),
        log: chain.log,
    }
}

/// The log as JSON lines, one event per line.
pub fn log_to_jsonl(log: &[Event]) -> String {
    let mut out = String::new();
    for event in log {
        out.push_str(&serde_json::to_string(event).expect("event serializes"));
        out.push('\n');
    }
    out
}

/// Committee members named in a log-independent, sorted form.
pub fn committee_names<T: Scalar>(instance: &ElectionInstance<T>, committee: &[CandidateId]) -> Vec<String> {
    let mut ids = committee.to_vec();
    ids.sort_unstable();
    ids.iter().map(|&c| instance.candidate_name(c).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::gen_phragmen_worstcase;

    fn worstcase() -> ElectionInstance<f64> {
        gen_phragmen_worstcase(4, 0.1).unwrap()
    }

    fn actions(log: &[Event]) -> Vec<(String, Action)> {
        log.iter().map(|e| (e.actor.clone(), e.action)).collect()
    }

    #[test]
    fn single_honest_prover() {
        let inst = worstcase();
        let out = run_window(&inst, &[ProverSpec::new("p", Strategy::BalancedPhragmms, 1)], Mode::FullCheck, 3).unwrap();
        assert_eq!(out.submitter.as_deref(), Some("p"));
        assert_eq!(out.log.iter().filter(|e| e.action == Action::Admitted).count(), 1);
        assert_eq!(out.log.last().unwrap().action, Action::Rewarded);
    }

    #[test]
    fn adversaries_never_win() {
        let inst = worstcase();
        let provers = [
            ProverSpec::new("heavy", Strategy::AdversarialOverweight, 1),
            ProverSpec::new("junk", Strategy::Malformed, 1),
            ProverSpec::new("honest", Strategy::BalancedPhragmms, 2),
        ];
        for mode in [Mode::FullCheck, Mode::Optimized] {
            let out = run_window(&inst, &provers, mode, 2).unwrap();
            assert_eq!(out.submitter.as_deref(), Some("honest"));
            let rejected: Vec<_> = out.log.iter().filter(|e| e.action == Action::Rejected).collect();
            assert_eq!(rejected.len(), 2);
            assert!(rejected[0].reason.as_ref().unwrap().contains("spends"));
            assert!(rejected[1].reason.as_ref().unwrap().starts_with("malformed"));
        }
    }

    #[test]
    fn window_bounds_are_checked() {
        let inst = worstcase();
        assert!(run_window(&inst, &[], Mode::FullCheck, 3).is_err());
        assert!(run_window(&inst, &[ProverSpec::new("p", Strategy::Mms, 4)], Mode::FullCheck, 3).is_err());
    }

    #[test]
    fn seq_phragmen_is_rejected_then_balanced_wins() {
        let inst = worstcase();
        let provers = [ProverSpec::new("alice", Strategy::SeqPhragmen, 1), ProverSpec::new("bob", Strategy::BalancedPhragmms, 2)];
        let out = run_window(&inst, &provers, Mode::FullCheck, 3).unwrap();
        assert_eq!(out.submitter.as_deref(), Some("bob"));
        assert_eq!(
            actions(&out.log),
            vec![
                ("alice".into(), Action::Submitted),
                ("alice".into(), Action::Rejected),
                ("bob".into(), Action::Submitted),
                ("bob".into(), Action::Admitted),
                ("bob".into(), Action::DeclaredWinner),
                ("bob".into(), Action::Rewarded),
            ]
        );
    }

    #[test]
    fn optimized_mode_repairs_a_weak_winner() {
        // {a, b} is balanced and locally optimal at support 3. {c, d} with
        // supports (3.5, 4) beats it but leaves voter q's stake of 8 unspent,
        // above the threshold 15.5 / 2.
        let inst = ElectionInstance::<f64>::from_approvals(
            2,
            4,
            vec![(3.0, vec![0, 2]), (3.0, vec![1, 3]), (0.5, vec![2]), (1.0, vec![3]), (8.0, vec![0])],
        )
        .unwrap();
        let (a, b, c, d) = (CandidateId(0), CandidateId(1), CandidateId(2), CandidateId(3));
        let first = crate::balancing::balanced_solution(&inst, &[a, b]);
        let mut w = vec![0.0; inst.num_edges()];
        for (v, cand, x) in [(0, c, 3.0), (1, d, 3.0), (2, c, 0.5), (3, d, 1.0)] {
            w[inst.edge_between(crate::VoterId(v), cand).unwrap()] = x;
        }
        let second = Solution::new(&inst, vec![c, d], w);

        let mut full = ChainState::new(Mode::FullCheck, (1, 2));
        assert!(full.submit(&inst, "a", &solution_to_file(&inst, &first)));
        full.block_height = 2;
        assert!(!full.submit(&inst, "b", &solution_to_file(&inst, &second)));

        let mut chain = ChainState::new(Mode::Optimized, (1, 2));
        assert!(chain.submit(&inst, "a", &solution_to_file(&inst, &first)));
        chain.block_height = 2;
        assert!(chain.submit(&inst, "b", &solution_to_file(&inst, &second)));
        assert!(chain.tentative.as_ref().unwrap().report.is_none());

        let out = close_window(&inst, chain, 2);
        assert_eq!(out.submitter.as_deref(), Some(REPAIR));
        let winner = out.winner.unwrap();
        assert!(pjr_condition(&inst, &winner, &inst.pjr_threshold()));
        assert!(winner.objective().unwrap() >= 3.5);
        assert_eq!(
            actions(&out.log)[4..],
            [
                ("b".into(), Action::Fined),
                (CHAIN.into(), Action::WindowExtended),
                (REPAIR.into(), Action::Submitted),
                (REPAIR.into(), Action::Admitted),
                (REPAIR.into(), Action::DeclaredWinner),
                ("a".into(), Action::Rewarded),
                ("b".into(), Action::Rewarded),
                (REPAIR.into(), Action::Rewarded),
            ]
        );
        assert_eq!(out.log.last().unwrap().block, 4);
    }
}
