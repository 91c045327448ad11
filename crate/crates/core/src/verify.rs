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


//! Verification of submitted solutions in a fixed number of passes over
//! the approval edges.
//!
//! [`verify_full`] checks feasibility, balancedness and local optimality
//! (least member support at least every unelected pre-score evaluated at
//! that support). Solutions passing all three are proportional and within a
//! factor 3.15 of the best least support. [`pjr_condition`] is the
//! sufficient test for t-PJR: every unelected pre-score at `t` is below `t`.
//!
//! Nothing in a submission is trusted: supports are recomputed from the
//! weights.

use crate::instance::{solution_from_file, CandidateId, ElectionInstance, Solution, SolutionFile, VoterId};
use crate::phragmms::max_prescore;
use crate::scalar::{approx_eq, approx_le, definitely_lt, to_json_value, Scalar};
use serde_json::{json, Value};
use std::cmp::Ordering;

/// Counterexample attached to a failed check.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness<T: Scalar> {
    Malformed(String),
    NotFull { size: usize, k: usize },
    NegativeWeight { voter: VoterId, candidate: CandidateId, weight: T },
    Overspent { voter: VoterId, spent: T, stake: T },
    Underspent { voter: VoterId, spent: T, stake: T },
    UnbalancedEdge { voter: VoterId, candidate: CandidateId, support: T, min_support: T },
    /// An unelected candidate whose pre-score at `threshold` is not below
    /// it (for local optimality: exceeds it).
    Prescore { candidate: CandidateId, prescore: T, threshold: T },
}

impl<T: Scalar> Witness<T> {
    /// One-line description using instance names.
    pub fn describe(&self, instance: &ElectionInstance<T>) -> String {
        let v = |x: &VoterId| instance.voter_name(*x).to_string();
        let c = |x: &CandidateId| instance.candidate_name(*x).to_string();
        match self {
            Witness::Malformed(msg) => format!("malformed: {msg}"),
            Witness::NotFull { size, k } => format!("committee has {size} members, expected {k}"),
            Witness::NegativeWeight { voter, candidate, weight } => {
                format!("negative weight {weight} on {}-{}", v(voter), c(candidate))
            }
            Witness::Overspent { voter, spent, stake } => format!("voter {} spends {spent} of stake {stake}", v(voter)),
            Witness::Underspent { voter, spent, stake } => {
                format!("voter {} spends only {spent} of stake {stake} on members", v(voter))
            }
            Witness::UnbalancedEdge { voter, candidate, support, min_support } => format!(
                "voter {} backs {} with support {support} above its least supported member at {min_support}",
                v(voter),
                c(candidate)
            ),
            Witness::Prescore { candidate, prescore, threshold } => {
                format!("candidate {} has pre-score {prescore} at {threshold}", c(candidate))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PjrCheck<T: Scalar> {
    pub t: T,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport<T: Scalar> {
    pub feasible: bool,
    pub full: bool,
    pub balanced: bool,
    pub local_optimal: bool,
    pub pjr_condition: Option<PjrCheck<T>>,
    /// Least member support recomputed from the weights.
    pub objective: Option<T>,
    /// First failed check, in the order feasibility, size, balancedness,
    /// local optimality, PJR condition.
    pub witness: Option<Witness<T>>,
    /// Edge inspections performed, for complexity accounting.
    pub edge_visits: usize,
}

impl<T: Scalar> VerifyReport<T> {
    fn rejected(witness: Witness<T>) -> Self {
        VerifyReport {
            feasible: false,
            full: false,
            balanced: false,
            local_optimal: false,
            pjr_condition: None,
            objective: None,
            witness: Some(witness),
            edge_visits: 0,
        }
    }

    /// Feasible, full, balanced, locally optimal, and the PJR condition
    /// holds if it was requested.
    pub fn passed(&self) -> bool {
        self.feasible
            && self.full
            && self.balanced
            && self.local_optimal
            && self.pjr_condition.as_ref().is_none_or(|p| p.holds)
    }

    pub fn to_json(&self, instance: &ElectionInstance<T>) -> Value {
        json!({
            "passed": self.passed(),
            "feasible": self.feasible,
            "full": self.full,
            "balanced": self.balanced,
            "local_optimal": self.local_optimal,
            "pjr_condition": self.pjr_condition.as_ref().map(|p| json!({"t": to_json_value(&p.t), "holds": p.holds})),
            "objective": self.objective.as_ref().map(to_json_value),
            "witness": self.witness.as_ref().map(|w| witness_json(instance, w)),
            "edge_visits": self.edge_visits,
        })
    }
}

/// JSON form of a witness using instance names.
pub fn witness_json<T: Scalar>(instance: &ElectionInstance<T>, witness: &Witness<T>) -> Value {
    let v = |x: &VoterId| instance.voter_name(*x).to_string();
    let c = |x: &CandidateId| instance.candidate_name(*x).to_string();
    match witness {
        Witness::Malformed(msg) => json!({"kind": "malformed", "message": msg}),
        Witness::NotFull { size, k } => json!({"kind": "not_full", "size": size, "k": k}),
        Witness::NegativeWeight { voter, candidate, weight } => {
            json!({"kind": "negative_weight", "voter": v(voter), "candidate": c(candidate), "weight": to_json_value(weight)})
        }
        Witness::Overspent { voter, spent, stake } => {
            json!({"kind": "overspent", "voter": v(voter), "spent": to_json_value(spent), "stake": to_json_value(stake)})
        }
        Witness::Underspent { voter, spent, stake } => {
            json!({"kind": "underspent", "voter": v(voter), "spent": to_json_value(spent), "stake": to_json_value(stake)})
        }
        Witness::UnbalancedEdge { voter, candidate, support, min_support } => json!({
            "kind": "unbalanced_edge", "voter": v(voter), "candidate": c(candidate),
            "support": to_json_value(support), "min_support": to_json_value(min_support)
        }),
        Witness::Prescore { candidate, prescore, threshold } => json!({
            "kind": "prescore", "candidate": c(candidate),
            "prescore": to_json_value(prescore), "threshold": to_json_value(threshold)
        }),
    }
}

/// Per-voter slack at `t`: one pass over the edges, calling `on_edge` on
/// each so callers can fold other per-edge checks into the same pass.
fn slack_at<T: Scalar>(
    instance: &ElectionInstance<T>,
    w: &[T],
    supp: &[Option<T>],
    t: &T,
    visits: &mut usize,
    mut on_edge: impl FnMut(usize),
) -> Vec<T> {
    let mut slack: Vec<T> = instance.stakes().to_vec();
    for e in 0..instance.num_edges() {
        *visits += 1;
        on_edge(e);
        if let Some(s) = &supp[instance.edge_candidate(e).0] {
            if w[e] != T::zero() {
                let x = if s <= t { w[e].clone() } else { w[e].clone() * t.clone() / s.clone() };
                slack[instance.edge_voter(e).0] -= x;
            }
        }
    }
    slack
}

/// Best unelected pre-score given the voter slacks; one pass over the edges.
fn best_prescore<T: Scalar>(
    instance: &ElectionInstance<T>,
    slack: &[T],
    supp: &[Option<T>],
    visits: &mut usize,
) -> Option<(CandidateId, T)> {
    let mut prescore = vec![T::zero(); instance.num_candidates()];
    for e in 0..instance.num_edges() {
        *visits += 1;
        let c = instance.edge_candidate(e);
        if supp[c.0].is_none() {
            prescore[c.0] += slack[instance.edge_voter(e).0].clone();
        }
    }
    let mut best: Option<(CandidateId, T)> = None;
    for c in instance.candidates().filter(|c| supp[c.0].is_none()) {
        if best.as_ref().is_none_or(|(_, b)| prescore[c.0] > *b) {
            best = Some((c, prescore[c.0].clone()));
        }
    }
    best
}

/// Runs every check on `solution`. With `pjr_t`, also evaluates the
/// sufficient t-PJR condition at that threshold.
pub fn verify_full<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>, pjr_t: Option<&T>) -> VerifyReport<T> {
    let w = solution.weights();
    let k = instance.k();
    let mut visits = 0;
    let mut witness = None;
    let note = |slot: &mut Option<Witness<T>>, x: Witness<T>| {
        if slot.is_none() {
            *slot = Some(x);
        }
    };

    // Pass 1: signs, spending, supports.
    let slot = instance.membership(solution.committee());
    let mut spent = vec![T::zero(); instance.num_voters()];
    let mut support = vec![T::zero(); solution.committee().len()];
    let mut negative = None;
    for e in 0..instance.num_edges() {
        visits += 1;
        let v = instance.edge_voter(e);
        if definitely_lt(&w[e], &T::zero()) && negative.is_none() {
            negative = Some(Witness::NegativeWeight { voter: v, candidate: instance.edge_candidate(e), weight: w[e].clone() });
        }
        spent[v.0] += w[e].clone();
        if let Some(i) = slot[instance.edge_candidate(e).0] {
            support[i] += w[e].clone();
        }
    }
    let overspent = instance.voters().find(|v| definitely_lt(instance.stake(*v), &spent[v.0]));
    let feasible = negative.is_none() && overspent.is_none();
    if let Some(x) = negative {
        note(&mut witness, x);
    }
    if let Some(v) = overspent {
        note(&mut witness, Witness::Overspent { voter: v, spent: spent[v.0].clone(), stake: instance.stake(v).clone() });
    }
    let full = solution.committee().len() == k;
    if !full {
        note(&mut witness, Witness::NotFull { size: solution.committee().len(), k });
    }
    let objective = support.iter().cloned().reduce(crate::scalar::min_of);

    // Pass 2: balancedness.
    let mut member_spent = vec![T::zero(); instance.num_voters()];
    let mut least: Vec<Option<T>> = vec![None; instance.num_voters()];
    for e in 0..instance.num_edges() {
        visits += 1;
        if let Some(i) = slot[instance.edge_candidate(e).0] {
            let v = instance.edge_voter(e).0;
            member_spent[v] += w[e].clone();
            if least[v].as_ref().is_none_or(|m| support[i] < *m) {
                least[v] = Some(support[i].clone());
            }
        }
    }
    let mut balance_witness = None;
    for v in instance.voters() {
        if least[v.0].is_some() && definitely_lt(&member_spent[v.0], instance.stake(v)) {
            balance_witness = Some(Witness::Underspent {
                voter: v,
                spent: member_spent[v.0].clone(),
                stake: instance.stake(v).clone(),
            });
            break;
        }
    }
    let mut supp: Vec<Option<T>> = vec![None; instance.num_candidates()];
    for (i, c) in solution.committee().iter().enumerate() {
        supp[c.0] = Some(support[i].clone());
    }

    // Pass 3: unbalanced edges, together with the slack at t = objective.
    let check_edges = balance_witness.is_none();
    let mut edge_check = |e: usize| {
        if !check_edges || balance_witness.is_some() {
            return;
        }
        let c = instance.edge_candidate(e);
        let v = instance.edge_voter(e);
        if let (Some(i), Some(m)) = (slot[c.0], &least[v.0]) {
            if w[e] > T::tolerance(instance.stake(v)) && !approx_eq(&support[i], m) {
                balance_witness = Some(Witness::UnbalancedEdge {
                    voter: v,
                    candidate: c,
                    support: support[i].clone(),
                    min_support: m.clone(),
                });
            }
        }
    };
    let t0 = objective.clone().unwrap_or_else(T::zero);
    let slack = slack_at(instance, w, &supp, &t0, &mut visits, &mut edge_check);
    let balanced = balance_witness.is_none();
    if let Some(x) = balance_witness {
        note(&mut witness, x);
    }

    // Pass 4: pre-scores at t = objective.
    let local_optimal = match &objective {
        Some(t) => match best_prescore(instance, &slack, &supp, &mut visits) {
            Some((c, p)) if !approx_le(&p, t) => {
                note(&mut witness, Witness::Prescore { candidate: c, prescore: p, threshold: t.clone() });
                false
            }
            _ => true,
        },
        None => false,
    };

    let pjr_condition = pjr_t.map(|t| {
        let slack = slack_at(instance, w, &supp, t, &mut visits, |_| {});
        let holds = match best_prescore(instance, &slack, &supp, &mut visits) {
            Some((c, p)) if !definitely_lt(&p, t) => {
                note(&mut witness, Witness::Prescore { candidate: c, prescore: p, threshold: t.clone() });
                false
            }
            _ => true,
        };
        PjrCheck { t: t.clone(), holds }
    });

    VerifyReport { feasible, full, balanced, local_optimal, pjr_condition, objective, witness, edge_visits: visits }
}

/// Feasibility and committee size only, in one pass over the edges.
/// Returns the least member support on success.
pub fn check_feasible<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> Result<T, Witness<T>> {
    let w = solution.weights();
    let slot = instance.membership(solution.committee());
    let mut spent = vec![T::zero(); instance.num_voters()];
    let mut support = vec![T::zero(); solution.committee().len()];
    for e in 0..instance.num_edges() {
        let v = instance.edge_voter(e);
        if definitely_lt(&w[e], &T::zero()) {
            return Err(Witness::NegativeWeight { voter: v, candidate: instance.edge_candidate(e), weight: w[e].clone() });
        }
        spent[v.0] += w[e].clone();
        if let Some(i) = slot[instance.edge_candidate(e).0] {
            support[i] += w[e].clone();
        }
    }
    if let Some(v) = instance.voters().find(|v| definitely_lt(instance.stake(*v), &spent[v.0])) {
        return Err(Witness::Overspent { voter: v, spent: spent[v.0].clone(), stake: instance.stake(v).clone() });
    }
    if support.len() != instance.k() {
        return Err(Witness::NotFull { size: support.len(), k: instance.k() });
    }
    Ok(support.into_iter().reduce(crate::scalar::min_of).unwrap_or_else(T::zero))
}

/// Verifies an untrusted solution file; malformed files fail every check.
pub fn verify_submission<T: Scalar>(
    instance: &ElectionInstance<T>,
    file: &SolutionFile,
    pjr_t: Option<&T>,
) -> (Option<Solution<T>>, VerifyReport<T>) {
    match solution_from_file(instance, file) {
        Ok(sol) => {
            let report = verify_full(instance, &sol, pjr_t);
            (Some(sol), report)
        }
        Err(e) => (None, VerifyReport::rejected(Witness::Malformed(e.to_string()))),
    }
}

/// Sufficient condition for t-PJR: every unelected candidate has pre-score
/// below `t`. Always false for `t <= 0`.
pub fn pjr_condition<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>, t: &T) -> bool {
    match max_prescore(instance, solution, t) {
        Ok(best) => definitely_lt(&best.value, t),
        Err(_) => T::zero() < *t,
    }
}

/// Orders `challenger` against `incumbent` by least member support with the
/// numeric tolerance: `Greater` only on a strict improvement.
pub fn compare_solutions<T: Scalar>(
    _instance: &ElectionInstance<T>,
    incumbent: &Solution<T>,
    challenger: &Solution<T>,
) -> Ordering {
    match (incumbent.objective(), challenger.objective()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(a), Some(b)) => {
            if definitely_lt(&a, &b) {
                Ordering::Greater
            } else if definitely_lt(&b, &a) {
                Ordering::Less
            } else {
                Ordering::Equal
            }
        }
    }
}
