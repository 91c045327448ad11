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


//! Trimming a solution to a forest of positive edges before submission.

use maximin::balancing::balanced_solution;
use maximin::flowcore::{is_forest, trim_to_forest};
use maximin::instance::{gen_random, RandomParams, StakeDist};
use maximin::{CandidateId, ElectionInstance, Rational};

fn main() -> maximin::Result<()> {
    let params = RandomParams::new(30, 10, 6, 0.5, StakeDist::Uniform { low: 1.0, high: 5.0 }, 3);
    let instance: ElectionInstance<Rational> = gen_random(&params)?;
    let committee: Vec<CandidateId> = (0..6).map(CandidateId).collect();
    let dense = balanced_solution(&instance, &committee);
    let trimmed = trim_to_forest(&instance, &dense);
    println!(
        "positive edges: {} before, {} after (bound |N| + k = {}); forest before {}, after {}",
        dense.positive_edges(),
        trimmed.positive_edges(),
        instance.num_voters() + instance.k(),
        is_forest(&instance, dense.weights()),
        is_forest(&instance, trimmed.weights()),
    );
    println!("supports unchanged: {}", dense.supports() == trimmed.supports());
    Ok(())
}
