//! Brute-force slide combinatorics: reachability, path enumeration and move replay.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use kmact_core::cartan::grassmannian_support;
use kmact_core::paths::{canonical_path, is_middle_weight, is_valid_slide, Move, Sign, SlideSeq, Step};
use kmact_core::{CartanDatum, Support, Weight};
use proptest::prelude::*;

use Sign::{Minus as M, Plus as P};

/// Every `(datum, support)` pair of sl_n Grassmannian supports with `n <= 4`, `m <= 3`.
pub fn grassmannians() -> Vec<(usize, usize, usize, CartanDatum, Support)> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for m in 1..=3 {
            for total in 0..=m * n {
                let s = grassmannian_support(m, n, total).unwrap();
                out.push((m, n, total, CartanDatum::type_a(n - 1), s));
            }
        }
    }
    out
}

/// Shortest valid-slide distances from `mu`, by breadth-first search over the weight graph.
pub fn slide_distances(mu: &Weight, datum: &CartanDatum, support: &Support) -> BTreeMap<Weight, usize> {
    let mut dist = BTreeMap::from([(mu.clone(), 0)]);
    let mut queue = VecDeque::from([mu.clone()]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for k in 0..w.rank() {
            for c in [P, M] {
                let p = w.pairing(datum, k);
                let ok = if c == P { p >= -1 } else { p <= 1 };
                let n = w.shifted(k, c.value());
                if ok && support.contains(&n) && !dist.contains_key(&n) {
                    dist.insert(n.clone(), d + 1);
                    queue.push_back(n);
                }
            }
        }
    }
    dist
}

/// Brute-force enumeration of valid paths of exactly `len` steps from `mu` to `lambda`.
pub fn paths_of_length(mu: &Weight, lambda: &Weight, len: usize, datum: &CartanDatum, support: &Support) -> BTreeSet<Vec<Step>> {
    let mut layer = vec![(mu.clone(), Vec::<Step>::new())];
    for _ in 0..len {
        let mut next = Vec::new();
        for (w, steps) in layer {
            for k in 0..w.rank() {
                for c in [P, M] {
                    if is_valid_slide(&w, k, c, datum, support) {
                        let mut s = steps.clone();
                        s.push((c, k));
                        next.push((w.shifted(k, c.value()), s));
                    }
                }
            }
        }
        layer = next;
    }
    layer.into_iter().filter(|(w, _)| w == lambda).map(|(_, s)| s).collect()
}

pub fn abs_sum(a: &[i64]) -> usize {
    a.iter().map(|x| x.unsigned_abs() as usize).sum()
}

/// Replays rescale-mode moves with the switch and drop conditions written out directly.
pub fn replay_rescale(steps: &[Step], moves: &[Move]) -> Option<Vec<Step>> {
    let mut s = steps.to_vec();
    for &mv in moves {
        match mv {
            Move::Switch(a) => {
                let (x, y) = (*s.get(a - 1)?, *s.get(a)?);
                if x.0.value() + y.0.value() != 0 || x.1 == y.1 {
                    return None;
                }
                s.swap(a - 1, a);
            }
            Move::Drop(a) => {
                let (x, y) = (*s.get(a - 1)?, *s.get(a)?);
                if x.1 != y.1 || x.0.value() + y.0.value() != 0 {
                    return None;
                }
                s.drain(a - 1..=a);
            }
        }
    }
    Some(s)
}

/// Replays path-mode moves, checking every intermediate sequence is a valid path.
pub fn replay_path(start: &SlideSeq, moves: &[Move], datum: &CartanDatum, support: &Support) -> Option<SlideSeq> {
    let mut s = start.clone();
    for &mv in moves {
        match mv {
            Move::Switch(a) if a >= 1 && a < s.len() => s.steps.swap(a - 1, a),
            Move::Drop(a) if a >= 1 && a < s.len() => {
                let (x, y) = (s.steps[a - 1], s.steps[a]);
                if x.1 != y.1 || x.0 == y.0 {
                    return None;
                }
                s.steps.drain(a - 1..=a);
            }
            _ => return None,
        }
        if !valid_path(&s, datum, support) {
            return None;
        }
    }
    Some(s)
}

pub fn valid_path(s: &SlideSeq, datum: &CartanDatum, support: &Support) -> bool {
    let mut w = s.base.clone();
    if !support.contains(&w) {
        return false;
    }
    for &(c, k) in &s.steps {
        let p = w.pairing(datum, k);
        if !(if c == P { p >= -1 } else { p <= 1 }) {
            return false;
        }
        w = w.shifted(k, c.value());
        if !support.contains(&w) {
            return false;
        }
    }
    true
}

/// `(canon, extra)` instances with the sign hypothesis, where `canon` runs from a middle weight.
pub fn appended_instances(d: &CartanDatum, s: &Support) -> Vec<(SlideSeq, Step)> {
    let mut out = Vec::new();
    for mu in s.weights().filter(|w| is_middle_weight(w, d, s)) {
        for lambda in s.weights() {
            let canon = canonical_path(&mu, &lambda, d, s).unwrap();
            let a = canon.step_sum();
            for i in 0..d.vertex_count() {
                for c in [P, M] {
                    let hyp = if c == P { a[i] <= -1 } else { a[i] >= 1 };
                    if hyp && is_valid_slide(&lambda, i, c, d, s) {
                        out.push((canon.clone(), (c, i)));
                    }
                }
            }
        }
    }
    out
}

pub fn zero_sum() -> impl Strategy<Value = Vec<Step>> {
    (1usize..=4)
        .prop_flat_map(|v| prop::collection::vec((prop::bool::ANY, 0..v), 0..=5))
        .prop_flat_map(|half| {
            let mut steps: Vec<Step> = half.iter().map(|&(s, k)| (if s { P } else { M }, k)).collect();
            steps.extend(half.iter().map(|&(s, k)| (if s { M } else { P }, k)));
            Just(steps).prop_shuffle()
        })
}

