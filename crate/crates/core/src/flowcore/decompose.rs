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


//! Decomposition of a flow vector into simple paths and cycles.

use super::{excesses, FlowVector};
use crate::instance::{CandidateId, EdgeId, ElectionInstance, VoterId};
use crate::scalar::{max_of, min_of, Scalar};
use std::collections::HashMap;

/// A vertex of the approval graph. Voters order before candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Voter(VoterId),
    Candidate(CandidateId),
}

/// A simple path or a cycle carrying `value` along `vertices`. For a cycle
/// the closing edge runs from the last vertex back to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowPath<T: Scalar> {
    pub vertices: Vec<Vertex>,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T: Scalar> {
    pub paths: Vec<FlowPath<T>>,
    pub cycles: Vec<FlowPath<T>>,
}

fn edge_of<T: Scalar>(instance: &ElectionInstance<T>, a: Vertex, b: Vertex) -> (EdgeId, bool) {
    match (a, b) {
        (Vertex::Voter(n), Vertex::Candidate(c)) => (instance.edge_between(n, c).expect("edge on path"), true),
        (Vertex::Candidate(c), Vertex::Voter(n)) => (instance.edge_between(n, c).expect("edge on path"), false),
        _ => panic!("consecutive vertices {a:?}, {b:?} are not adjacent"),
    }
}

/// Adds `sign * value` along consecutive vertex pairs.
fn push_along<T: Scalar>(instance: &ElectionInstance<T>, f: &mut [T], walk: &[Vertex], value: &T, close: bool) {
    let mut hops: Vec<(Vertex, Vertex)> = walk.windows(2).map(|p| (p[0], p[1])).collect();
    if close && walk.len() > 1 {
        hops.push((walk[walk.len() - 1], walk[0]));
    }
    for (a, b) in hops {
        let (e, forward) = edge_of(instance, a, b);
        if forward {
            f[e] += value.clone();
        } else {
            f[e] -= value.clone();
        }
    }
}

impl<T: Scalar> Decomposition<T> {
    pub fn is_empty(&self) -> bool {
        self.paths.is_empty() && self.cycles.is_empty()
    }

    /// Sum of all paths and cycles.
    pub fn recompose(&self, instance: &ElectionInstance<T>) -> FlowVector<T> {
        self.select(instance, |_| true)
    }

    /// Sum of the paths accepted by `keep` (cycles excluded), for instance
    /// the paths that start at a voter and end at a given set of candidates.
    pub fn paths_flow(&self, instance: &ElectionInstance<T>, keep: impl Fn(&FlowPath<T>) -> bool) -> FlowVector<T> {
        let mut f = vec![T::zero(); instance.num_edges()];
        for p in self.paths.iter().filter(|p| keep(p)) {
            push_along(instance, &mut f, &p.vertices, &p.value, false);
        }
        f
    }

    fn select(&self, instance: &ElectionInstance<T>, keep: impl Fn(&FlowPath<T>) -> bool) -> FlowVector<T> {
        let mut f = self.paths_flow(instance, &keep);
        for c in self.cycles.iter().filter(|c| keep(c)) {
            push_along(instance, &mut f, &c.vertices, &c.value, true);
        }
        f
    }
}

/// Flow decomposition by repeated depth-first walks over nonzero edges,
/// always stepping to the lowest vertex.
///
/// Each path starts at the lowest vertex with positive excess and ends at
/// the first vertex with demand; a walk that revisits a vertex yields a
/// cycle instead. Every extraction zeroes at least one edge or one endpoint
/// excess.
pub fn decompose<T: Scalar>(instance: &ElectionInstance<T>, f: &[T]) -> Decomposition<T> {
    let scale = f.iter().map(|x| x.abs_val()).fold(T::zero(), max_of);
    let thr = T::tolerance(&scale);
    let mut g: Vec<T> = f.iter().map(|x| if x.abs_val() <= thr { T::zero() } else { x.clone() }).collect();
    let mut out = Decomposition { paths: Vec::new(), cycles: Vec::new() };

    let step = |g: &[T], u: Vertex| -> Option<Vertex> {
        match u {
            Vertex::Voter(n) => instance
                .voter_edges(n)
                .find(|&e| g[e] > T::zero())
                .map(|e| Vertex::Candidate(instance.edge_candidate(e))),
            Vertex::Candidate(c) => instance
                .candidate_edges(c)
                .iter()
                .find(|&&e| g[e] < T::zero())
                .map(|&e| Vertex::Voter(instance.edge_voter(e))),
        }
    };

    let all: Vec<Vertex> = instance
        .voters()
        .map(Vertex::Voter)
        .chain(instance.candidates().map(Vertex::Candidate))
        .collect();
    loop {
        let (ev, ec) = excesses(instance, &g);
        let excess = |x: Vertex| match x {
            Vertex::Voter(n) => ev[n.0].clone(),
            Vertex::Candidate(c) => ec[c.0].clone(),
        };
        let start = all
            .iter()
            .copied()
            .find(|&x| excess(x) > thr)
            .or_else(|| all.iter().copied().find(|&x| step(&g, x).is_some()));
        let Some(start) = start else { break };
        if step(&g, start).is_none() {
            // Excess made of edges below the threshold.
            if let Vertex::Voter(n) = start {
                instance.voter_edges(n).for_each(|e| g[e] = T::zero());
            } else if let Vertex::Candidate(c) = start {
                instance.candidate_edges(c).iter().for_each(|&e| g[e] = T::zero());
            }
            continue;
        }

        let mut walk = vec![start];
        let mut position = HashMap::from([(start, 0usize)]);
        let mut cycle_from = None;
        loop {
            let u = *walk.last().expect("nonempty walk");
            if walk.len() > 1 && excess(u) < -thr.clone() {
                break;
            }
            let Some(v) = step(&g, u) else { break };
            if let Some(&i) = position.get(&v) {
                cycle_from = Some(i);
                break;
            }
            position.insert(v, walk.len());
            walk.push(v);
        }

        let magnitude = |g: &[T], a: Vertex, b: Vertex| g[edge_of(instance, a, b).0].abs_val();
        if let Some(i) = cycle_from {
            let cycle = walk.split_off(i);
            let mut value = magnitude(&g, cycle[cycle.len() - 1], cycle[0]);
            for p in cycle.windows(2) {
                value = min_of(value, magnitude(&g, p[0], p[1]));
            }
            push_along(instance, &mut g, &cycle, &-value.clone(), true);
            clean(&mut g, &thr);
            out.cycles.push(FlowPath { vertices: cycle, value });
        } else {
            let end = *walk.last().expect("nonempty walk");
            let mut value = min_of(excess(start), -excess(end));
            for p in walk.windows(2) {
                value = min_of(value, magnitude(&g, p[0], p[1]));
            }
            if walk.len() < 2 || value <= T::zero() {
                // Dead end at a vertex without demand: only possible with
                // rounding residue below the threshold.
                walk.windows(2).for_each(|p| g[edge_of(instance, p[0], p[1]).0] = T::zero());
                continue;
            }
            push_along(instance, &mut g, &walk, &-value.clone(), false);
            clean(&mut g, &thr);
            out.paths.push(FlowPath { vertices: walk, value });
        }
    }
    out
}

fn clean<T: Scalar>(g: &mut [T], thr: &T) {
    for x in g.iter_mut() {
        if x.abs_val() <= *thr && *x != T::zero() {
            *x = T::zero();
        }
    }
}
