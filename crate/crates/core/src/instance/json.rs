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

//! JSON formats for instances and solutions.
//!
//! Instance:
//!
//! ```json
//! {"k": 2, "candidates": ["a", "b", "c"],
//!  "voters": [{"id": "alice", "stake": "1.5", "approvals": ["a", "b"]}]}
//! ```
//!
//! Stakes are JSON numbers or decimal / fraction strings; in exact mode both
//! are read without rounding. The voter `id` is optional and defaults to
//! `n<index>`. Dense ids follow array order, and the canonical serialization
//! writes voters and candidates in id order with sorted, deduplicated
//! approvals.
//!
//! Solution:
//!
//! ```json
//! {"committee": ["a", "b"],
//!  "weights": [{"voter": "alice", "candidate": "a", "weight": 0.75}],
//!  "supports": [{"candidate": "a", "support": 0.75}], "objective": 0.75}
//! ```
//!
//! Only `committee` and `weights` are read back; supports are always
//! recomputed.

use super::{CandidateId, ElectionInstance, Solution, VoterSpec};
use crate::error::{Error, Result};
use crate::scalar::{from_json_value, to_json_value, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub k: usize,
    pub candidates: Vec<String>,
    pub voters: Vec<VoterEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoterEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub stake: Value,
    pub approvals: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SolutionFile {
    pub committee: Vec<String>,
    pub weights: Vec<WeightEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub supports: Vec<SupportEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightEntry {
    pub voter: String,
    pub candidate: String,
    pub weight: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupportEntry {
    pub candidate: String,
    pub support: Value,
}

/// Parses and validates an instance from its JSON text.
pub fn parse_instance<T: Scalar>(text: &str) -> Result<ElectionInstance<T>> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    ElectionInstance::from_file(&file)
}

impl<T: Scalar> ElectionInstance<T> {
    pub fn from_file(file: &InstanceFile) -> Result<Self> {
        let mut lookup = std::collections::HashMap::new();
        for (i, name) in file.candidates.iter().enumerate() {
            if lookup.insert(name.as_str(), CandidateId(i)).is_some() {
                return Err(Error::DuplicateId(name.clone()));
            }
        }
        let mut voters = Vec::with_capacity(file.voters.len());
        for (j, entry) in file.voters.iter().enumerate() {
            let name = entry.id.clone().unwrap_or_else(|| format!("n{j}"));
            let stake: T = from_json_value(&entry.stake)
                .ok_or_else(|| Error::Schema(format!("voter {name}: stake {} is not a number", entry.stake)))?;
            let approvals = entry
                .approvals
                .iter()
                .map(|a| lookup.get(a.as_str()).copied().ok_or_else(|| Error::UnknownCandidate(a.clone())))
                .collect::<Result<Vec<_>>>()?;
            voters.push(VoterSpec { name, stake, approvals });
        }
        ElectionInstance::new(file.k, file.candidates.clone(), voters)
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            k: self.k(),
            candidates: self.candidate_names().to_vec(),
            voters: self
                .voters()
                .map(|v| VoterEntry {
                    id: Some(self.voter_name(v).to_string()),
                    stake: to_json_value(self.stake(v)),
                    approvals: self
                        .approvals(v)
                        .iter()
                        .map(|&c| self.candidate_name(c).to_string())
                        .collect(),
                })
                .collect(),
        }
    }

    /// Canonical compact JSON text.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("instance serializes")
    }
}

/// Serializes a solution; only positive weights are written.
pub fn solution_to_file<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> SolutionFile {
    let weights = (0..instance.num_edges())
        .filter(|&e| solution.weights()[e] != T::zero())
        .map(|e| WeightEntry {
            voter: instance.voter_name(instance.edge_voter(e)).to_string(),
            candidate: instance.candidate_name(instance.edge_candidate(e)).to_string(),
            weight: to_json_value(&solution.weights()[e]),
        })
        .collect();
    SolutionFile {
        committee: solution
            .committee()
            .iter()
            .map(|&c| instance.candidate_name(c).to_string())
            .collect(),
        weights,
        supports: solution
            .committee()
            .iter()
            .zip(solution.supports())
            .map(|(&c, s)| SupportEntry {
                candidate: instance.candidate_name(c).to_string(),
                support: to_json_value(s),
            })
            .collect(),
        objective: solution.objective().map(|t| to_json_value(&t)),
    }
}

/// Strict conversion of a solution file; any unknown name, non-edge,
/// duplicate entry, duplicate member or unparseable number is an error.
/// Negative weights are kept so that verification can report them.
pub fn solution_from_file<T: Scalar>(instance: &ElectionInstance<T>, file: &SolutionFile) -> Result<Solution<T>> {
    let mut committee = Vec::with_capacity(file.committee.len());
    for name in &file.committee {
        let c = instance
            .candidate_by_name(name)
            .ok_or_else(|| Error::UnknownCandidate(name.clone()))?;
        if committee.contains(&c) {
            return Err(Error::DuplicateId(name.clone()));
        }
        committee.push(c);
    }
    let mut weights = vec![T::zero(); instance.num_edges()];
    let mut seen = vec![false; instance.num_edges()];
    for entry in &file.weights {
        let v = instance
            .voter_by_name(&entry.voter)
            .ok_or_else(|| Error::UnknownVoter(entry.voter.clone()))?;
        let c = instance
            .candidate_by_name(&entry.candidate)
            .ok_or_else(|| Error::UnknownCandidate(entry.candidate.clone()))?;
        let e = instance.edge_between(v, c).ok_or_else(|| {
            Error::InvalidSolution(format!("{} does not approve {}", entry.voter, entry.candidate))
        })?;
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::InvalidSolution(format!(
                "duplicate weight entry {} -> {}",
                entry.voter, entry.candidate
            )));
        }
        weights[e] = from_json_value(&entry.weight).ok_or_else(|| {
            Error::InvalidSolution(format!("weight {} is not a number", entry.weight))
        })?;
    }
    Ok(Solution::new(instance, committee, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn minimal_instance() {
        let text = r#"{"k":1,"voters":[{"stake":1,"approvals":["a"]}],"candidates":["a","b"]}"#;
        let err = parse_instance::<f64>(text).unwrap_err();
        // "b" has no approver
        assert_eq!(err, Error::IsolatedVertex("b".into()));

        let text = r#"{"k":1,"voters":[{"stake":1,"approvals":["a","b"]}],"candidates":["a","b"]}"#;
        let inst = parse_instance::<f64>(text).unwrap();
        assert_eq!((inst.num_voters(), inst.num_candidates(), inst.k()), (1, 2, 1));
        assert_eq!(inst.voter_name(crate::instance::VoterId(0)), "n0");
    }

    #[test]
    fn k_out_of_range() {
        let text = r#"{"k":2,"voters":[{"stake":1,"approvals":["a","b"]}],"candidates":["a","b"]}"#;
        assert_eq!(
            parse_instance::<f64>(text).unwrap_err(),
            Error::KOutOfRange { k: 2, candidates: 2 }
        );
    }

    #[test]
    fn isolated_candidate_reported_by_name() {
        let text = r#"{"k":1,"voters":[{"stake":1,"approvals":["a","b"]}],"candidates":["a","b","z"]}"#;
        assert_eq!(parse_instance::<f64>(text).unwrap_err(), Error::IsolatedVertex("z".into()));
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_instance::<f64>("{}"), Err(Error::Schema(_))));
        let text = r#"{"k":1,"voters":[{"stake":"x","approvals":["a"]}],"candidates":["a","b"]}"#;
        assert!(matches!(parse_instance::<f64>(text), Err(Error::Schema(_))));
        let text = r#"{"k":1,"voters":[{"stake":-1,"approvals":["a","b"]}],"candidates":["a","b"]}"#;
        assert!(matches!(parse_instance::<f64>(text), Err(Error::NonPositiveStake { .. })));
        let text = r#"{"k":1,"voters":[{"stake":1,"approvals":["a","q"]}],"candidates":["a","b"]}"#;
        assert_eq!(parse_instance::<f64>(text).unwrap_err(), Error::UnknownCandidate("q".into()));
    }

    #[test]
    fn decimal_strings_are_exact_in_rational_mode() {
        let text = r#"{"k":1,"candidates":["a","b"],"voters":[{"id":"x","stake":"0.1","approvals":["a","b"]},{"id":"y","stake":0.2,"approvals":["b"]}]}"#;
        let inst = parse_instance::<Rational>(text).unwrap();
        assert_eq!(inst.total_stake(), Rational::from_ratio(3, 10));
        let again = parse_instance::<Rational>(&inst.to_canonical_json()).unwrap();
        assert_eq!(again.to_canonical_json(), inst.to_canonical_json());
    }

    #[test]
    fn solution_file_round_trip_and_rejections() {
        let inst = ElectionInstance::<f64>::from_approvals(1, 2, vec![(4.0, vec![0, 1]), (2.0, vec![1])]).unwrap();
        let sol = Solution::new(&inst, vec![CandidateId(1)], vec![0.0, 4.0, 2.0]);
        let file = solution_to_file(&inst, &sol);
        assert_eq!(file.weights.len(), 2);
        let back = solution_from_file(&inst, &file).unwrap();
        assert_eq!(back, sol);

        let mut bad = file.clone();
        bad.weights[0].candidate = "zz".into();
        assert!(matches!(solution_from_file(&inst, &bad), Err(Error::UnknownCandidate(_))));
        let mut bad = file.clone();
        bad.weights[1].candidate = "c0".into();
        assert!(matches!(solution_from_file(&inst, &bad), Err(Error::InvalidSolution(_))));
        let mut bad = file;
        bad.committee.push("c1".into());
        assert!(matches!(solution_from_file(&inst, &bad), Err(Error::DuplicateId(_))));
    }
}
