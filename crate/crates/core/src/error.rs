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

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("isolated vertex {0}")]
    IsolatedVertex(String),
    #[error("k out of range: k={k} with {candidates} candidates")]
    KOutOfRange { k: usize, candidates: usize },
    #[error("non-positive stake {stake} for voter {voter}")]
    NonPositiveStake { voter: String, stake: String },
    #[error("unknown candidate {0}")]
    UnknownCandidate(String),
    #[error("unknown voter {0}")]
    UnknownVoter(String),
    #[error("duplicate identifier {0}")]
    DuplicateId(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("no unelected candidate left")]
    NoUnelectedCandidate,
    #[error("instance too large for exhaustive computation: {0}")]
    TooLarge(String),
    #[error("not a sub-flow: {0}")]
    NotSubflow(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
