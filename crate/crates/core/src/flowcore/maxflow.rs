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


//! Dinic max-flow on a small residual network.

use crate::scalar::Scalar;
use std::collections::VecDeque;

/// Directed network with paired residual arcs: arc `a ^ 1` is the reverse of
/// arc `a`.
#[derive(Clone, Debug)]
pub(crate) struct Network<T: Scalar> {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<T>,
    /// Arcs with residual capacity at most this are treated as saturated.
    eps: T,
}

impl<T: Scalar> Network<T> {
    pub(crate) fn new(nodes: usize, eps: T) -> Self {
        Network { head: vec![Vec::new(); nodes], to: Vec::new(), residual: Vec::new(), eps }
    }

    pub(crate) fn add_arc(&mut self, u: usize, v: usize, cap: T) -> usize {
        let id = self.to.len();
        self.head[u].push(id);
        self.to.push(v);
        self.residual.push(cap);
        self.head[v].push(id + 1);
        self.to.push(u);
        self.residual.push(T::zero());
        id
    }

    /// Flow currently carried by a forward arc.
    pub(crate) fn flow(&self, arc: usize) -> &T {
        &self.residual[arc ^ 1]
    }

    /// Sends `amount` along `arc` without augmenting-path search; used to
    /// install a feasible warm-start flow.
    pub(crate) fn preload(&mut self, arc: usize, amount: &T) {
        self.residual[arc] -= amount.clone();
        self.residual[arc ^ 1] += amount.clone();
    }

    fn open(&self, arc: usize) -> bool {
        self.residual[arc] > self.eps
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if level[v] == usize::MAX && self.open(a) {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    fn augment(&mut self, u: usize, t: usize, limit: T, level: &[usize], next: &mut [usize]) -> T {
        if u == t {
            return limit;
        }
        while next[u] < self.head[u].len() {
            let a = self.head[u][next[u]];
            let v = self.to[a];
            if level[v] == level[u] + 1 && self.open(a) {
                let room = if self.residual[a] < limit { self.residual[a].clone() } else { limit.clone() };
                let pushed = self.augment(v, t, room, level, next);
                if pushed > T::zero() {
                    self.residual[a] -= pushed.clone();
                    self.residual[a ^ 1] += pushed.clone();
                    return pushed;
                }
            }
            next[u] += 1;
        }
        T::zero()
    }

    /// Augments to a maximum flow and returns the amount added.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, unbounded: &T) -> T {
        let mut total = T::zero();
        while let Some(level) = self.levels(s, t) {
            let mut next = vec![0; self.head.len()];
            loop {
                let pushed = self.augment(s, t, unbounded.clone(), &level, &mut next);
                if pushed <= self.eps {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    /// Nodes reachable from `s` through open residual arcs (the source side
    /// of a minimum cut once the flow is maximum).
    pub(crate) fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if !seen[v] && self.open(a) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn classic_network() {
        // CLRS figure: max flow 23.
        let mut net = Network::<f64>::new(6, 0.0);
        for (u, v, c) in [(0, 1, 16.0), (0, 2, 13.0), (1, 3, 12.0), (2, 1, 4.0), (2, 4, 14.0), (3, 2, 9.0), (3, 5, 20.0), (4, 3, 7.0), (4, 5, 4.0)] {
            net.add_arc(u, v, c);
        }
        assert_eq!(net.max_flow(0, 5, &100.0), 23.0);
        let side = net.reachable(0);
        assert!(side[0] && !side[5]);
    }

    #[test]
    fn preload_then_augment_exact() {
        let mut net = Network::<Rational>::new(3, Rational::from_usize(0));
        let a = net.add_arc(0, 1, Rational::from_ratio(3, 2));
        let b = net.add_arc(1, 2, Rational::from_usize(1));
        net.preload(a, &Rational::from_ratio(1, 2));
        net.preload(b, &Rational::from_ratio(1, 2));
        assert_eq!(net.max_flow(0, 2, &Rational::from_usize(10)), Rational::from_ratio(1, 2));
        assert_eq!(*net.flow(a), Rational::from_usize(1));
    }
}
