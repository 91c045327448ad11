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


//! LS-PJR post-processing: start from a sequential Phragmen committee and
//! swap out weakly supported members until the PJR condition holds.

use maximin::instance::gen_phragmen_worstcase;
use maximin::solvers::{ls_pjr, seq_phragmen};
use maximin::verify::pjr_condition;

fn main() -> maximin::Result<()> {
    let instance = gen_phragmen_worstcase(4, 0.1)?;
    let start = seq_phragmen(&instance);
    let names = |s: &maximin::Solution| s.committee().iter().map(|&c| instance.candidate_name(c).to_string()).collect::<Vec<_>>();
    println!("seq-phragmen: {:?}, least support {:.4}", names(&start), start.objective().unwrap());

    for eps in [Some(0.01), Some(0.1), None] {
        let out = ls_pjr(&instance, &start, eps.as_ref());
        let t_hat = instance.pjr_threshold();
        println!(
            "eps {:>5}: {:?}, least support {:.4}, {} iterations, PJR condition at {:.4}: {}",
            eps.map_or("inf".to_string(), |e| e.to_string()),
            names(&out.solution),
            out.solution.objective().unwrap(),
            out.iterations,
            t_hat,
            pjr_condition(&instance, &out.solution, &t_hat),
        );
    }
    Ok(())
}
