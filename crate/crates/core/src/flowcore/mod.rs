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


//! Network-flow substrate over the voter/candidate approval graph.
//!
//! Weight vectors are flows from voters to candidates. Differences of weight
//! vectors are signed [`FlowVector`]s, with positive values directed toward
//! the candidates.

mod decompose;
mod forest;
pub(crate) mod maxflow;

pub use decompose::{decompose, Decomposition, FlowPath, Vertex};
pub use forest::{is_forest, trim_to_forest};

use crate::error::{Error, Result};
use crate::instance::{CandidateId, ElectionInstance, WeightVector};
use crate::scalar::{approx_le, Scalar};
use maxflow::Network;

/// Signed per-edge flow; positive values point from voter to candidate.
pub type FlowVector<T> = Vec<T>;

/// Outcome of [`max_support_flow`].
#[derive(Clone, Debug, PartialEq)]
pub enum FloorCheck<T: Scalar> {
    /// A feasible weight vector giving every member at least the floor.
    Feasible(WeightVector<T>),
    /// A sub-committee whose approvers hold `stake < required`, where
    /// `required = |sub_committee| * floor`.
    Infeasible { sub_committee: Vec<CandidateId>, stake: T, required: T },
}

impl<T: Scalar> FloorCheck<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FloorCheck::Feasible(_))
    }
}

/// Result of one max-flow run on the support network.
#[derive(Clone, Debug)]
pub(crate) struct SupportFlow<T: Scalar> {
    pub weights: WeightVector<T>,
    pub value: T,
    /// `sink_side[i]` is true when `members[i]` is cut off from the source
    /// in the final residual network.
    pub sink_side: Vec<bool>,
}

fn residual_eps<T: Scalar>(total: &T) -> T {
    T::tolerance(total) * T::from_f64(1e-3)
}

/// Max flow from the active voters (capacity `s_n`) through approval edges
/// into `members`, each draining at most `floor` into the sink.
///
/// `warm` is an optional feasible weight vector installed (scaled down to the
/// floor where needed) before augmenting.
pub(crate) fn support_flow<T: Scalar>(
    instance: &ElectionInstance<T>,
    members: &[CandidateId],
    floor: &T,
    voter_active: &[bool],
    warm: Option<&[T]>,
) -> SupportFlow<T> {
    let total = instance.total_stake();
    let unbounded = total.clone() + T::one();
    let slot = instance.membership(members);
    let (source, sink, voter_base) = (0, 1, 2);
    let member_base = voter_base + instance.num_voters();
    let mut net = Network::new(member_base + members.len(), residual_eps(&total));
    let member_arcs: Vec<usize> = (0..members.len())
        .map(|i| net.add_arc(member_base + i, sink, floor.clone()))
        .collect();
    let mut edge_arcs = vec![None; instance.num_edges()];
    let mut voter_arcs = vec![None; instance.num_voters()];
    for v in instance.voters() {
        if !voter_active[v.0] {
            continue;
        }
        let mut connected = false;
        for e in instance.voter_edges(v) {
            if let Some(i) = slot[instance.edge_candidate(e).0] {
                edge_arcs[e] = Some(net.add_arc(voter_base + v.0, member_base + i, unbounded.clone()));
                connected = true;
            }
        }
        if connected {
            voter_arcs[v.0] = Some(net.add_arc(source, voter_base + v.0, instance.stake(v).clone()));
        }
    }

    if let Some(warm) = warm {
        let mut factor = Vec::with_capacity(members.len());
        for &c in members {
            let supp: T = instance
                .candidate_edges(c)
                .iter()
                .filter(|&&e| edge_arcs[e].is_some() && warm[e] > T::zero())
                .map(|&e| warm[e].clone())
                .sum();
            factor.push(if supp > *floor { floor.clone() / supp } else { T::one() });
        }
        let mut into_member = vec![T::zero(); members.len()];
        for v in instance.voters() {
            let Some(varc) = voter_arcs[v.0] else { continue };
            let mut spent = T::zero();
            for e in instance.voter_edges(v) {
                if let Some(arc) = edge_arcs[e] {
                    if warm[e] > T::zero() {
                        let i = slot[instance.edge_candidate(e).0].expect("member edge");
                        let x = warm[e].clone() * factor[i].clone();
                        net.preload(arc, &x);
                        into_member[i] += x.clone();
                        spent += x;
                    }
                }
            }
            net.preload(varc, &spent);
        }
        for (i, x) in into_member.iter().enumerate() {
            net.preload(member_arcs[i], x);
        }
    }

    net.max_flow(source, sink, &unbounded);
    let mut weights = vec![T::zero(); instance.num_edges()];
    for (e, arc) in edge_arcs.iter().enumerate() {
        if let Some(arc) = arc {
            let x = net.flow(*arc).clone();
            weights[e] = if x > T::zero() { x } else { T::zero() };
        }
    }
    let value = member_arcs.iter().map(|&a| net.flow(a).clone()).sum();
    let side = net.reachable(source);
    let sink_side = (0..members.len()).map(|i| !side[member_base + i]).collect();
    SupportFlow { weights, value, sink_side }
}

/// Total stake of the voters approving at least one of `members`.
pub fn neighbourhood_stake<T: Scalar>(instance: &ElectionInstance<T>, members: &[CandidateId]) -> T {
    let mut seen = vec![false; instance.num_voters()];
    for &c in members {
        for &e in instance.candidate_edges(c) {
            seen[instance.edge_voter(e).0] = true;
        }
    }
    instance
        .voters()
        .filter(|v| seen[v.0])
        .map(|v| instance.stake(v).clone())
        .sum()
}

/// Decides whether some feasible weight vector gives every member of
/// `committee` a support of at least `floor`.
pub fn max_support_flow<T: Scalar>(
    instance: &ElectionInstance<T>,
    committee: &[CandidateId],
    floor: &T,
) -> FloorCheck<T> {
    let active = vec![true; instance.num_voters()];
    let run = support_flow(instance, committee, floor, &active, None);
    let target = T::from_usize(committee.len()) * floor.clone();
    if approx_le(&target, &run.value) {
        return FloorCheck::Feasible(run.weights);
    }
    let mut sub_committee: Vec<CandidateId> = committee
        .iter()
        .zip(&run.sink_side)
        .filter(|(_, &cut)| cut)
        .map(|(&c, _)| c)
        .collect();
    if sub_committee.is_empty() {
        sub_committee = committee.to_vec();
    }
    sub_committee.sort_unstable();
    let stake = neighbourhood_stake(instance, &sub_committee);
    let required = T::from_usize(sub_committee.len()) * floor.clone();
    FloorCheck::Infeasible { sub_committee, stake, required }
}

/// Largest floor accepted by [`max_support_flow`], by bisection.
///
/// Stops after 64 rounds or once the bracket is narrower than
/// `1e-9 * (1 + total stake)`. Returns the floor and a witness vector.
pub fn max_feasible_floor<T: Scalar>(instance: &ElectionInstance<T>, committee: &[CandidateId]) -> (T, WeightVector<T>) {
    let total = instance.total_stake();
    let width = T::from_f64(crate::scalar::EPS_REL) * (T::one() + total.clone());
    let mut lo = T::zero();
    let mut best = vec![T::zero(); instance.num_edges()];
    let mut hi = committee
        .iter()
        .map(|&c| instance.approval_stake(c))
        .fold(total, crate::scalar::min_of);
    if let FloorCheck::Feasible(w) = max_support_flow(instance, committee, &hi) {
        return (hi, w);
    }
    let two = T::from_usize(2);
    for _ in 0..64 {
        if hi.clone() - lo.clone() < width {
            break;
        }
        let mid = (lo.clone() + hi.clone()) / two.clone();
        match max_support_flow(instance, committee, &mid) {
            FloorCheck::Feasible(w) => {
                lo = mid;
                best = w;
            }
            FloorCheck::Infeasible { .. } => hi = mid,
        }
    }
    (lo, best)
}

/// Net excess of every voter and every candidate.
pub fn excesses<T: Scalar>(instance: &ElectionInstance<T>, f: &[T]) -> (Vec<T>, Vec<T>) {
    let mut voters = vec![T::zero(); instance.num_voters()];
    let mut candidates = vec![T::zero(); instance.num_candidates()];
    for (e, x) in f.iter().enumerate() {
        voters[instance.edge_voter(e).0] += x.clone();
        candidates[instance.edge_candidate(e).0] -= x.clone();
    }
    (voters, candidates)
}

/// `w' - w` as a flow vector.
pub fn difference<T: Scalar>(w_new: &[T], w_old: &[T]) -> FlowVector<T> {
    w_new.iter().zip(w_old).map(|(a, b)| a.clone() - b.clone()).collect()
}

fn same_sign_within<T: Scalar>(part: &T, whole: &T) -> bool {
    let zero = T::zero();
    if *part == zero {
        return true;
    }
    let (p, q) = (part.abs_val(), whole.abs_val());
    ((*part > zero) == (*whole > zero)) && *whole != zero && approx_le(&p, &q)
}

/// Checks that `fprime` is a sub-flow of `f`: on every edge and at every
/// vertex where `fprime` is nonzero, it has the sign of `f` and no larger
/// magnitude.
pub fn is_subflow<T: Scalar>(instance: &ElectionInstance<T>, f: &[T], fprime: &[T]) -> Result<()> {
    for e in 0..instance.num_edges() {
        if !same_sign_within(&fprime[e], &f[e]) {
            return Err(Error::NotSubflow(format!(
                "edge {}-{}: {} against {}",
                instance.voter_name(instance.edge_voter(e)),
                instance.candidate_name(instance.edge_candidate(e)),
                fprime[e],
                f[e]
            )));
        }
    }
    let (fv, fc) = excesses(instance, f);
    let (pv, pc) = excesses(instance, fprime);
    let scale = f.iter().map(|x| x.abs_val()).fold(T::zero(), crate::scalar::max_of);
    let negligible = |x: &T| x.abs_val() <= T::tolerance(&scale);
    for v in instance.voters() {
        if !negligible(&pv[v.0]) && !same_sign_within(&pv[v.0], &fv[v.0]) {
            return Err(Error::NotSubflow(format!("excess at voter {}", instance.voter_name(v))));
        }
    }
    for c in instance.candidates() {
        if !negligible(&pc[c.0]) && !same_sign_within(&pc[c.0], &fc[c.0]) {
            return Err(Error::NotSubflow(format!("excess at candidate {}", instance.candidate_name(c))));
        }
    }
    Ok(())
}

/// `w + fprime`, after checking that `fprime` is a sub-flow of `f`, the
/// difference between `w` and another feasible vector.
pub fn apply_subflow<T: Scalar>(
    instance: &ElectionInstance<T>,
    w: &[T],
    f: &[T],
    fprime: &[T],
) -> Result<WeightVector<T>> {
    is_subflow(instance, f, fprime)?;
    let out: WeightVector<T> = w.iter().zip(fprime).map(|(a, b)| a.clone() + b.clone()).collect();
    debug_assert!(out.iter().all(|x| approx_le(&T::zero(), x)));
    debug_assert!(instance.voters().all(|v| {
        let spent: T = instance.voter_edges(v).map(|e| out[e].clone()).sum();
        approx_le(&spent, instance.stake(v))
    }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::gen_phragmen_worstcase;
    use crate::scalar::Rational;

    fn one_voter() -> ElectionInstance<f64> {
        ElectionInstance::from_approvals(1, 3, vec![(2.0, vec![0, 1]), (1.0, vec![2])]).unwrap()
    }

    #[test]
    fn split_evenly() {
        let inst = one_voter();
        let ab = [CandidateId(0), CandidateId(1)];
        match max_support_flow(&inst, &ab, &1.0) {
            FloorCheck::Feasible(w) => assert_eq!(&w[..2], &[1.0, 1.0]),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            max_support_flow(&inst, &ab, &1.5),
            FloorCheck::Infeasible { sub_committee: ab.to_vec(), stake: 2.0, required: 3.0 }
        );
    }

    #[test]
    fn worstcase_floor_one() {
        let inst = gen_phragmen_worstcase::<Rational>(4, Rational::from_ratio(1, 10)).unwrap();
        let committee: Vec<_> = (1..=4).map(CandidateId).collect();
        assert!(max_support_flow(&inst, &committee, &Rational::from_usize(1)).is_feasible());
        assert!(!max_support_flow(&inst, &committee, &Rational::from_ratio(11, 10)).is_feasible());
    }

    #[test]
    fn bisection_finds_floor() {
        let inst = ElectionInstance::<f64>::from_approvals(1, 2, vec![(4.0, vec![0, 1]), (2.0, vec![1])]).unwrap();
        let (t, w) = max_feasible_floor(&inst, &[CandidateId(0), CandidateId(1)]);
        assert!((t - 3.0).abs() < 1e-8);
        assert!(w[0] >= 3.0 - 1e-8);
    }

    #[test]
    fn warm_start_gives_same_value() {
        let inst = ElectionInstance::<Rational>::from_approvals(
            1,
            3,
            vec![(Rational::from_usize(4), vec![0, 1]), (Rational::from_usize(2), vec![1, 2])],
        )
        .unwrap();
        let members = [CandidateId(0), CandidateId(1), CandidateId(2)];
        let warm: Vec<Rational> = [4, 0, 1, 1].iter().map(|&x| Rational::from_usize(x)).collect();
        let floor = Rational::from_usize(2);
        let active = vec![true; 2];
        let cold = support_flow(&inst, &members, &floor, &active, None);
        let hot = support_flow(&inst, &members, &floor, &active, Some(&warm));
        assert_eq!(cold.value, hot.value);
        assert_eq!(hot.value, Rational::from_usize(6));
    }

    #[test]
    fn subflow_rules() {
        let inst = ElectionInstance::<f64>::from_approvals(1, 2, vec![(2.0, vec![0, 1])]).unwrap();
        let w = vec![2.0, 0.0];
        let w2 = vec![0.0, 2.0];
        let f = difference(&w2, &w);
        assert_eq!(apply_subflow(&inst, &w, &f, &[0.0, 0.0]).unwrap(), w);
        assert_eq!(apply_subflow(&inst, &w, &f, &f).unwrap(), w2);
        assert_eq!(apply_subflow(&inst, &w, &f, &[-0.5, 0.5]).unwrap(), vec![1.5, 0.5]);
        assert!(apply_subflow(&inst, &w, &f, &[0.5, -0.5]).is_err());
        assert!(apply_subflow(&inst, &w, &f, &[-3.0, 3.0]).is_err());
        // nonzero excess where f has none
        assert!(apply_subflow(&inst, &w, &f, &[-1.0, 0.0]).is_err());
    }
}
