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


//! Compare the solvers against the exhaustive optimum on small instances.

use maximin::instance::{gen_random, RandomParams, StakeDist};
use maximin::oracle::{check_pjr_exact, opt_maximin};
use maximin::solvers::{balanced_phragmms, lazy_mms_search, mms, seq_phragmen};
use maximin::{ElectionInstance, Rational, Scalar};

fn main() -> maximin::Result<()> {
    let mut worst = [1.0f64; 4];
    let names = ["seq-phragmen", "balanced-phragmms", "mms", "lazy-mms"];
    let mut pjr_failures = [0usize; 4];
    for seed in 0..100 {
        let params = RandomParams::new(8, 8, 3, 0.4, StakeDist::Uniform { low: 1.0, high: 10.0 }, seed);
        let instance: ElectionInstance<Rational> = gen_random(&params)?;
        let (opt, _) = opt_maximin(&instance)?;
        let solutions = [
            seq_phragmen(&instance),
            balanced_phragmms(&instance),
            mms(&instance),
            lazy_mms_search(&instance, &Rational::from_ratio(1, 10)).solution,
        ];
        for (i, sol) in solutions.iter().enumerate() {
            let ratio = (sol.objective().unwrap() / opt.clone()).to_f64();
            worst[i] = worst[i].min(ratio);
            if check_pjr_exact(&instance, sol.committee(), &instance.pjr_threshold())?.is_some() {
                pjr_failures[i] += 1;
            }
        }
    }
    for i in 0..4 {
        println!("{:>18}: worst objective / optimum {:.4}, PJR violations {}", names[i], worst[i], pjr_failures[i]);
    }
    Ok(())
}
