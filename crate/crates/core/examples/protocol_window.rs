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


//! An election window with honest and adversarial provers, in both
//! admission modes. Prints the JSON-lines log.

use maximin::instance::gen_phragmen_worstcase;
use maximin::protocol::{log_to_jsonl, run_window, Mode, ProverSpec, Strategy};

fn main() -> maximin::Result<()> {
    let instance = gen_phragmen_worstcase(4, 0.1)?;
    let provers = [
        ProverSpec::new("alice", Strategy::SeqPhragmen, 1),
        ProverSpec::new("mallory", Strategy::AdversarialOverweight, 1),
        ProverSpec::new("bob", Strategy::BalancedPhragmms, 2),
        ProverSpec::new("eve", Strategy::Malformed, 3),
        ProverSpec::new("carol", Strategy::Mms, 3),
    ];
    for mode in [Mode::FullCheck, Mode::Optimized] {
        let outcome = run_window(&instance, &provers, mode, 4)?;
        println!("# {mode:?}: winner {}", outcome.submitter.as_deref().unwrap_or("none"));
        print!("{}", log_to_jsonl(&outcome.log));
    }
    Ok(())
}
