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


//! Solve a random election with every algorithm and verify each result.
//!
//! Run with `cargo run --example solve_and_verify`.

use maximin::instance::{gen_random, RandomParams, StakeDist};
use maximin::solvers::{balanced_phragmms, lazy_mms_search, mms, seq_phragmen};
use maximin::verify::verify_full;
use maximin::{ElectionInstance, Solution};

fn main() -> maximin::Result<()> {
    let params = RandomParams::new(40, 12, 5, 0.25, StakeDist::Pareto { shape: 1.5 }, 7);
    let instance: ElectionInstance = gen_random(&params)?;
    println!(
        "{} voters, {} candidates, {} approvals, k = {}",
        instance.num_voters(),
        instance.num_candidates(),
        instance.num_edges(),
        instance.k()
    );

    let runs: Vec<(&str, Solution)> = vec![
        ("seq-phragmen", seq_phragmen(&instance)),
        ("balanced-phragmms", balanced_phragmms(&instance)),
        ("mms", mms(&instance)),
        ("lazy-mms", lazy_mms_search(&instance, &0.1).solution),
    ];
    let t_hat = instance.pjr_threshold();
    for (name, solution) in &runs {
        let report = verify_full(&instance, solution, Some(&t_hat));
        let members: Vec<&str> = solution.committee().iter().map(|&c| instance.candidate_name(c)).collect();
        println!(
            "{name:>18}: least support {:8.4}  balanced {:5}  locally optimal {:5}  PJR condition {:5}  {members:?}",
            solution.objective().unwrap_or(0.0),
            report.balanced,
            report.local_optimal,
            report.pjr_condition.map(|p| p.holds).unwrap_or(false),
        );
    }
    Ok(())
}
