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


//! Removal of cycles from the positive-weight edge set.

use crate::instance::{ElectionInstance, Solution};
use crate::scalar::Scalar;
use std::collections::VecDeque;

/// Node index in the undirected support graph: voters first, then
/// candidates.
fn endpoints<T: Scalar>(instance: &ElectionInstance<T>, e: usize) -> (usize, usize) {
    (instance.edge_voter(e).0, instance.num_voters() + instance.edge_candidate(e).0)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

/// Returns the edges of some cycle among the positive edges, in cyclic
/// order, or `None` if they form a forest.
fn find_cycle<T: Scalar>(instance: &ElectionInstance<T>, weights: &[T]) -> Option<Vec<usize>> {
    let nodes = instance.num_voters() + instance.num_candidates();
    let mut uf = UnionFind((0..nodes).collect());
    let mut tree: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
    for (e, w) in weights.iter().enumerate() {
        if *w <= T::zero() {
            continue;
        }
        let (a, b) = endpoints(instance, e);
        let (ra, rb) = (uf.find(a), uf.find(b));
        if ra != rb {
            uf.0[ra] = rb;
            tree[a].push((b, e));
            tree[b].push((a, e));
            continue;
        }
        // Tree path from b back to a closes the cycle with edge e.
        let mut via = vec![None; nodes];
        let mut seen = vec![false; nodes];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            if u == b {
                break;
            }
            for &(v, te) in &tree[u] {
                if !seen[v] {
                    seen[v] = true;
                    via[v] = Some((u, te));
                    queue.push_back(v);
                }
            }
        }
        let mut cycle = vec![e];
        let mut x = b;
        while let Some((prev, te)) = via[x] {
            cycle.push(te);
            x = prev;
        }
        return Some(cycle);
    }
    None
}

/// True when the positive-weight edges contain no cycle.
pub fn is_forest<T: Scalar>(instance: &ElectionInstance<T>, weights: &[T]) -> bool {
    find_cycle(instance, weights).is_none()
}

/// Cancels cycles in the positive-weight edge set while keeping every
/// voter's spending and every candidate's support unchanged.
///
/// Around an even cycle the weights alternately gain and lose `delta`, the
/// smallest weight on the losing side, which is set to exactly zero. Each
/// round removes at least one positive edge, so the result has fewer than
/// `|N| + |C'|` positive edges, `C'` being the candidates it touches.
pub fn trim_to_forest<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> Solution<T> {
    let mut w = solution.weights().to_vec();
    while let Some(cycle) = find_cycle(instance, &w) {
        debug_assert!(cycle.len() % 2 == 0);
        let lightest = (0..cycle.len())
            .min_by(|&i, &j| w[cycle[i]].partial_cmp(&w[cycle[j]]).expect("comparable weights"))
            .expect("nonempty cycle");
        let parity = lightest % 2;
        let delta = w[cycle[lightest]].clone();
        for (i, &e) in cycle.iter().enumerate() {
            if i % 2 == parity {
                w[e] -= delta.clone();
            } else {
                w[e] += delta.clone();
            }
        }
        w[cycle[lightest]] = T::zero();
        // Rounding can leave tiny negatives on the losing side in float.
        for &e in cycle.iter().skip(parity).step_by(2) {
            if w[e] < T::zero() {
                w[e] = T::zero();
            }
        }
    }
    Solution::new(instance, solution.committee().to_vec(), w)
}
