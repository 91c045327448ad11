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


//! Slack, pre-score and score of unelected candidates, the insertion rule,
//! and the search for the candidate of highest score.
//!
//! For a threshold `t`, a voter's slack is the stake it could move to a new
//! candidate without pushing any member's support below `t`:
//! `slack(n, t) = s_n - Σ_{c ∈ A ∩ C_n} w_nc · min(1, t / supp(c))`.
//! The pre-score of an unelected candidate sums the slacks of its
//! approvers, and its score is the largest `t` with `prescore(t) >= t`.
//!
//! Edges with zero weight are skipped, so a member with zero support never
//! causes a division.

use crate::error::{Error, Result};
use crate::instance::{CandidateId, ElectionInstance, Solution, VoterId};
use crate::scalar::Scalar;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScoreKind {
    Prescore,
    Score,
    LinScore,
}

/// A candidate with its pre-score at `threshold`, its score (then
/// `threshold == value`), or its linearized score around `threshold`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreReport<T: Scalar> {
    pub candidate: CandidateId,
    pub value: T,
    pub threshold: T,
    pub kind: ScoreKind,
}

/// Support of every candidate, `None` for non-members.
pub(crate) fn member_supports<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> Vec<Option<T>> {
    let mut out = vec![None; instance.num_candidates()];
    for (c, s) in solution.committee().iter().zip(solution.supports()) {
        out[c.0] = Some(s.clone());
    }
    out
}

fn scaled<T: Scalar>(weight: &T, support: &T, t: &T) -> T {
    if support <= t {
        weight.clone()
    } else {
        weight.clone() * t.clone() / support.clone()
    }
}

fn voter_slack<T: Scalar>(instance: &ElectionInstance<T>, w: &[T], supp: &[Option<T>], v: VoterId, t: &T) -> T {
    let mut slack = instance.stake(v).clone();
    for e in instance.voter_edges(v) {
        if let Some(s) = &supp[instance.edge_candidate(e).0] {
            if w[e] != T::zero() {
                slack -= scaled(&w[e], s, t);
            }
        }
    }
    slack
}

/// `slack(n, t)`.
pub fn slack<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>, voter: VoterId, t: &T) -> T {
    voter_slack(instance, solution.weights(), &member_supports(instance, solution), voter, t)
}

/// `prescore(c', t)` for every candidate; `None` for members.
pub fn prescores<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>, t: &T) -> Vec<Option<T>> {
    let supp = member_supports(instance, solution);
    prescores_with(instance, solution.weights(), &supp, t)
}

fn prescores_with<T: Scalar>(instance: &ElectionInstance<T>, w: &[T], supp: &[Option<T>], t: &T) -> Vec<Option<T>> {
    let slacks: Vec<T> = instance.voters().map(|v| voter_slack(instance, w, supp, v, t)).collect();
    instance
        .candidates()
        .map(|c| {
            supp[c.0].is_none().then(|| {
                instance
                    .candidate_edges(c)
                    .iter()
                    .map(|&e| slacks[instance.edge_voter(e).0].clone())
                    .sum()
            })
        })
        .collect()
}

/// `prescore(c', t)` for one unelected candidate.
pub fn prescore<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>, candidate: CandidateId, t: &T) -> T {
    let supp = member_supports(instance, solution);
    instance
        .candidate_edges(candidate)
        .iter()
        .map(|&e| voter_slack(instance, solution.weights(), &supp, instance.edge_voter(e), t))
        .sum()
}

/// First index of the largest value; ties go to the lowest candidate.
fn argmax<T: Scalar>(values: &[Option<T>], eligible: &[bool]) -> Option<(CandidateId, T)> {
    let mut best: Option<(usize, &T)> = None;
    for (i, v) in values.iter().enumerate() {
        if let (Some(v), true) = (v, eligible[i]) {
            if best.is_none_or(|(_, b)| v.partial_cmp(b) == Some(Ordering::Greater)) {
                best = Some((i, v));
            }
        }
    }
    best.map(|(i, v)| (CandidateId(i), v.clone()))
}

/// Everyone outside the committee.
pub(crate) fn unelected<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> Vec<bool> {
    let mut out = vec![true; instance.num_candidates()];
    for c in solution.committee() {
        out[c.0] = false;
    }
    out
}

fn max_prescore_among<T: Scalar>(
    instance: &ElectionInstance<T>,
    w: &[T],
    supp: &[Option<T>],
    eligible: &[bool],
    t: &T,
) -> Result<ScoreReport<T>> {
    let values = prescores_with(instance, w, supp, t);
    let (candidate, value) = argmax(&values, eligible).ok_or(Error::NoUnelectedCandidate)?;
    Ok(ScoreReport { candidate, value, threshold: t.clone(), kind: ScoreKind::Prescore })
}

/// Unelected candidate of highest pre-score at `t`, in one pass over the
/// edges.
pub fn max_prescore<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>, t: &T) -> Result<ScoreReport<T>> {
    let supp = member_supports(instance, solution);
    max_prescore_among(instance, solution.weights(), &supp, &unelected(instance, solution), t)
}

/// Exact score of an unelected candidate: the root of the piecewise-linear
/// decreasing function `prescore(c', t) - t`, solved on the piece between
/// consecutive member supports that contains it.
pub fn score<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>, candidate: CandidateId) -> T {
    let supp = member_supports(instance, solution);
    let w = solution.weights();
    let mut total = T::zero();
    // (support, weight) of every positive edge from an approver into A.
    let mut pieces: Vec<(T, T)> = Vec::new();
    for &e in instance.candidate_edges(candidate) {
        let v = instance.edge_voter(e);
        total += instance.stake(v).clone();
        for f in instance.voter_edges(v) {
            if let Some(s) = &supp[instance.edge_candidate(f).0] {
                if w[f] != T::zero() && *s > T::zero() {
                    pieces.push((s.clone(), w[f].clone()));
                }
            }
        }
    }
    pieces.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable supports"));
    // On [u_j, u_{j+1}] the function is total - full - t * (1 + ratio).
    let mut full = T::zero();
    let mut ratio: T = pieces.iter().map(|(s, w)| w.clone() / s.clone()).sum();
    let mut i = 0;
    while i < pieces.len() {
        let u = pieces[i].0.clone();
        let mut full_at = full.clone();
        let mut ratio_at = ratio.clone();
        let mut j = i;
        while j < pieces.len() && pieces[j].0 == u {
            full_at += pieces[j].1.clone();
            ratio_at -= pieces[j].1.clone() / pieces[j].0.clone();
            j += 1;
        }
        // Value at the breakpoint u, where members of support u count fully.
        let at_u = total.clone() - full_at.clone() - u.clone() * (ratio_at.clone() + T::one());
        if at_u <= T::zero() {
            break;
        }
        full = full_at;
        ratio = if j == pieces.len() { T::zero() } else { ratio_at };
        i = j;
    }
    let root = (total - full) / (T::one() + ratio);
    if root < T::zero() {
        T::zero()
    } else {
        root
    }
}

/// Largest support level `t'` below the highest score such that every
/// pre-score is linear between `t'` and that score, by binary search over
/// the sorted distinct member supports (with `0` prepended).
pub fn find_interval<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> Result<T> {
    let supp = member_supports(instance, solution);
    find_interval_among(instance, solution.weights(), &supp, &unelected(instance, solution))
}

fn find_interval_among<T: Scalar>(
    instance: &ElectionInstance<T>,
    w: &[T],
    supp: &[Option<T>],
    eligible: &[bool],
) -> Result<T> {
    let mut levels: Vec<T> = supp.iter().flatten().filter(|s| **s > T::zero()).cloned().collect();
    levels.sort_by(|a, b| a.partial_cmp(b).expect("comparable supports"));
    levels.dedup();
    levels.insert(0, T::zero());
    let r = levels.len() - 1;
    if r == 0 {
        if !eligible.iter().any(|&b| b) {
            return Err(Error::NoUnelectedCandidate);
        }
        return Ok(T::zero());
    }
    let reaches = |t: &T| -> Result<bool> { Ok(max_prescore_among(instance, w, supp, eligible, t)?.value >= *t) };
    if reaches(&levels[r])? {
        return Ok(levels[r].clone());
    }
    let (mut lo, mut hi) = (0usize, r - 1);
    while lo < hi {
        let j = (lo + hi).div_ceil(2);
        if reaches(&levels[j])? {
            lo = j;
        } else {
            hi = j - 1;
        }
    }
    Ok(levels[lo].clone())
}

fn linscores_with<T: Scalar>(instance: &ElectionInstance<T>, w: &[T], supp: &[Option<T>], x: &T) -> Vec<Option<T>> {
    let mut p = Vec::with_capacity(instance.num_voters());
    let mut q = Vec::with_capacity(instance.num_voters());
    for v in instance.voters() {
        let mut pn = instance.stake(v).clone();
        let mut qn = T::zero();
        for e in instance.voter_edges(v) {
            if let Some(s) = &supp[instance.edge_candidate(e).0] {
                if w[e] == T::zero() {
                    continue;
                }
                if s <= x {
                    pn -= w[e].clone();
                } else {
                    qn += w[e].clone() / s.clone();
                }
            }
        }
        p.push(pn);
        q.push(qn);
    }
    instance
        .candidates()
        .map(|c| {
            supp[c.0].is_none().then(|| {
                let (num, den) = instance.candidate_edges(c).iter().fold((T::zero(), T::one()), |(a, b), &e| {
                    let v = instance.edge_voter(e).0;
                    (a + p[v].clone(), b + q[v].clone())
                });
                num / den
            })
        })
        .collect()
}

/// Linearized score of `candidate` around `x`: the root of the tangent to
/// `prescore(c', t) - t` taken just right of `x`. Never exceeds the score.
pub fn linscore<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>, candidate: CandidateId, x: &T) -> T {
    let supp = member_supports(instance, solution);
    linscores_with(instance, solution.weights(), &supp, x)[candidate.0]
        .clone()
        .expect("candidate is not elected")
}

/// Candidate of highest score among `eligible` and that score.
pub(crate) fn max_score_among<T: Scalar>(
    instance: &ElectionInstance<T>,
    solution: &Solution<T>,
    eligible: &[bool],
) -> Result<ScoreReport<T>> {
    let supp = member_supports(instance, solution);
    let w = solution.weights();
    let x = find_interval_among(instance, w, &supp, eligible)?;
    let values = linscores_with(instance, w, &supp, &x);
    let (candidate, value) = argmax(&values, eligible).ok_or(Error::NoUnelectedCandidate)?;
    Ok(ScoreReport { candidate, value, threshold: x, kind: ScoreKind::LinScore })
}

/// Unelected candidate of highest score, with `O(log |A|)` pre-score passes
/// and one linearized-score pass.
pub fn max_score<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> Result<ScoreReport<T>> {
    max_score_among(instance, solution, &unelected(instance, solution))
}

/// Adds `candidate` to the committee, moving to it the slack of its
/// approvers at threshold `t`: every edge from an approver to a member with
/// support above `t` is scaled by `t / supp`, and the new edge receives the
/// approver's stake left over.
pub fn insert<T: Scalar>(
    instance: &ElectionInstance<T>,
    solution: &Solution<T>,
    candidate: CandidateId,
    t: &T,
) -> Result<Solution<T>> {
    if solution.contains(candidate) {
        return Err(Error::InvalidParameters(format!(
            "{} is already elected",
            instance.candidate_name(candidate)
        )));
    }
    let supp = member_supports(instance, solution);
    let mut w = solution.weights().to_vec();
    for &e_new in instance.candidate_edges(candidate) {
        let v = instance.edge_voter(e_new);
        let mut rest = instance.stake(v).clone();
        for e in instance.voter_edges(v) {
            if let Some(s) = &supp[instance.edge_candidate(e).0] {
                if *s > *t && w[e] != T::zero() {
                    w[e] = w[e].clone() * t.clone() / s.clone();
                }
                rest -= w[e].clone();
            }
        }
        w[e_new] = if rest < T::zero() { T::zero() } else { rest };
    }
    let mut committee = solution.committee().to_vec();
    committee.push(candidate);
    Ok(Solution::new(instance, committee, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    /// u(4) approves {a, b}, v(2) approves {b}; A = {a} with w_ua = 4.
    fn toy() -> (ElectionInstance<Rational>, Solution<Rational>) {
        let inst = ElectionInstance::from_approvals(1, 3, vec![(q(4, 1), vec![0, 1]), (q(2, 1), vec![1]), (q(1, 1), vec![2])]).unwrap();
        let sol = Solution::new(&inst, vec![CandidateId(0)], vec![q(4, 1), q(0, 1), q(0, 1), q(0, 1)]);
        (inst, sol)
    }

    #[test]
    fn slack_values() {
        let (inst, sol) = toy();
        assert_eq!(slack(&inst, &sol, VoterId(0), &q(2, 1)), q(2, 1));
        assert_eq!(slack(&inst, &sol, VoterId(0), &q(4, 1)), q(0, 1));
        assert_eq!(slack(&inst, &sol, VoterId(0), &q(9, 1)), q(0, 1));
        assert_eq!(slack(&inst, &sol, VoterId(2), &q(9, 1)), q(1, 1));
    }

    #[test]
    fn prescore_values() {
        let (inst, sol) = toy();
        let r = max_prescore(&inst, &sol, &q(2, 1)).unwrap();
        assert_eq!((r.candidate, r.value), (CandidateId(1), q(4, 1)));
        let r = max_prescore(&inst, &sol, &q(0, 1)).unwrap();
        assert_eq!((r.candidate, r.value), (CandidateId(1), q(6, 1)));
        let empty = Solution::empty(&inst);
        assert_eq!(max_prescore(&inst, &empty, &q(1, 1)).unwrap().candidate, CandidateId(1));
    }

    #[test]
    fn scores() {
        let (inst, sol) = toy();
        assert_eq!(score(&inst, &sol, CandidateId(1)), q(3, 1));
        assert_eq!(score(&inst, &sol, CandidateId(2)), q(1, 1));
        let empty = Solution::empty(&inst);
        assert_eq!(score(&inst, &empty, CandidateId(1)), q(6, 1));
        assert_eq!(find_interval(&inst, &sol).unwrap(), q(0, 1));
        assert_eq!(find_interval(&inst, &empty).unwrap(), q(0, 1));
        let best = max_score(&inst, &sol).unwrap();
        assert_eq!((best.candidate, best.value), (CandidateId(1), q(3, 1)));
        assert_eq!(linscore(&inst, &sol, CandidateId(1), &q(0, 1)), q(3, 1));
        assert_eq!(max_score(&inst, &empty).unwrap().value, q(6, 1));
    }

    #[test]
    fn zero_slack_scores_zero() {
        let inst = ElectionInstance::<Rational>::from_approvals(1, 2, vec![(q(1, 1), vec![0, 1])]).unwrap();
        let sol = Solution::new(&inst, vec![CandidateId(0)], vec![q(0, 1), q(0, 1)]);
        // Member with zero support: nothing to scale, full slack.
        assert_eq!(score(&inst, &sol, CandidateId(1)), q(1, 1));
        let sol = Solution::new(&inst, vec![CandidateId(0)], vec![q(1, 1), q(0, 1)]);
        assert_eq!(score(&inst, &sol, CandidateId(1)), q(1, 2));
    }

    #[test]
    fn interval_top_branch() {
        // One huge unrepresented voter pushes the top pre-score past t_r.
        let inst = ElectionInstance::<Rational>::from_approvals(
            1,
            3,
            vec![(q(1, 1), vec![0]), (q(2, 1), vec![1]), (q(100, 1), vec![2])],
        )
        .unwrap();
        let sol = Solution::new(&inst, vec![CandidateId(0), CandidateId(1)], vec![q(1, 1), q(2, 1), q(0, 1)]);
        assert_eq!(find_interval(&inst, &sol).unwrap(), q(2, 1));
        let best = max_score(&inst, &sol).unwrap();
        assert_eq!((best.candidate, best.value), (CandidateId(2), q(100, 1)));
    }

    #[test]
    fn insert_trace() {
        let (inst, sol) = toy();
        let out = insert(&inst, &sol, CandidateId(1), &q(3, 1)).unwrap();
        assert_eq!(out.supports(), &[q(3, 1), q(3, 1)]);
        assert_eq!(out.weights()[..3], [q(3, 1), q(1, 1), q(2, 1)]);
        // At t = 0 every approver's whole stake moves, matching prescore(b, 0).
        let out = insert(&inst, &sol, CandidateId(1), &q(0, 1)).unwrap();
        assert_eq!(out.weights()[..3], [q(0, 1), q(4, 1), q(2, 1)]);
        assert_eq!(out.supports()[1], prescore(&inst, &sol, CandidateId(1), &q(0, 1)));
        assert!(insert(&inst, &out, CandidateId(1), &q(0, 1)).is_err());
    }
}
