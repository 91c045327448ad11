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


//! Approval-based committee elections under the maximin support objective.
//!
//! The crate computes committees together with a weight vector that splits
//! every voter's stake among its elected approved candidates, and checks such
//! solutions in a number of passes over the approval graph that does not
//! depend on how the solution was produced.

pub mod balancing;
pub mod cli;
pub mod error;
pub mod flowcore;
pub mod instance;
pub mod oracle;
pub mod phragmms;
pub mod protocol;
pub mod scalar;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};
pub use instance::{CandidateId, ElectionInstance, EdgeId, Solution, VoterId, WeightVector};
pub use scalar::{Rational, Scalar};
