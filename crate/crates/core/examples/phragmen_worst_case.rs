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


//! Sequential Phragmen on the instance family where its least support is a
//! factor H_k - eps below the optimum, checked in exact arithmetic.

use maximin::instance::{gen_phragmen_worstcase, harmonic};
use maximin::oracle::opt_maximin;
use maximin::solvers::{balanced_phragmms, seq_phragmen};
use maximin::{ElectionInstance, Rational, Scalar};

fn main() -> maximin::Result<()> {
    let eps = Rational::from_ratio(1, 10);
    for k in [2, 4, 8, 16] {
        let instance: ElectionInstance<Rational> = gen_phragmen_worstcase(k, eps.clone())?;
        let seq = seq_phragmen(&instance);
        let balanced = balanced_phragmms(&instance);
        let (opt, _) = opt_maximin(&instance)?;
        let ratio = opt.clone() / seq.objective().unwrap();
        println!(
            "k = {k:2}: seq-phragmen {:.6}  balanced-phragmms {}  optimum {}  ratio {} (H_k - eps = {})",
            seq.objective().unwrap().to_f64(),
            balanced.objective().unwrap(),
            opt,
            ratio,
            harmonic::<Rational>(k) - eps.clone(),
        );
    }
    Ok(())
}
