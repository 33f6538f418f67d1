//! Sequences of root steps: valid slides between weights, canonical paths, and certified
//! switch/drop rewriting.
//!
//! Move positions are 1-based: `Switch(a)` transposes steps `a` and `a + 1`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::cartan::{CartanDatum, Support, Vertex, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("invalid move at position {position}: {reason}")]
    InvalidMove { position: usize, reason: &'static str },
    #[error("the steps do not sum to zero")]
    NotClosed,
    #[error("the sequences do not share base and endpoint")]
    EndpointMismatch,
    #[error("no shorter equivalent path within the search budget")]
    NotFound,
    #[error("no admissible final step toward the target")]
    ClaimFailure,
    #[error("canonical paths need a type A datum")]
    NotTypeA,
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

pub type Step = (Sign, Vertex);

/// A base weight followed by steps `c * alpha_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlideSeq {
    pub base: Weight,
    pub steps: Vec<Step>,
}

impl SlideSeq {
    pub fn new(base: Weight, steps: Vec<Step>) -> Self {
        SlideSeq { base, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The base followed by the endpoint of every prefix.
    pub fn weights(&self) -> Vec<Weight> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut w = self.base.clone();
        out.push(w.clone());
        for &(c, k) in &self.steps {
            w = w.shifted(k, c.value());
            out.push(w.clone());
        }
        out
    }

    pub fn endpoint(&self) -> Weight {
        self.steps.iter().fold(self.base.clone(), |w, &(c, k)| w.shifted(k, c.value()))
    }

    /// Root coordinates of the sum of the steps.
    pub fn step_sum(&self) -> Vec<i64> {
        let mut sum = alloc::vec![0; self.base.rank()];
        for &(c, k) in &self.steps {
            sum[k] += c.value();
        }
        sum
    }

    pub fn is_valid_path(&self, datum: &CartanDatum, support: &Support) -> bool {
        if !support.contains(&self.base) {
            return false;
        }
        let mut w = self.base.clone();
        for &(c, k) in &self.steps {
            if !is_valid_slide(&w, k, c, datum, support) {
                return false;
            }
            w = w.shifted(k, c.value());
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Switch(usize),
    Drop(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Switches must keep every prefix a valid slide.
    Path,
    /// Switches need opposite signs on distinct vertices.
    Rescale,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveCert {
    pub moves: Vec<Move>,
}

impl MoveCert {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Applies the moves to `start` in order.
    pub fn replay(&self, start: &SlideSeq, mode: Mode, datum: &CartanDatum, support: &Support) -> Result<SlideSeq, PathError> {
        let mut s = start.clone();
        for &mv in &self.moves {
            s = apply_move(&s, mv, mode, datum, support)?;
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// `moves` rewrite the first sequence into the second when `forward`, and the second
    /// into the first otherwise.
    Certified { forward: bool, cert: MoveCert },
    Undecided,
}

/// `lambda ~> lambda + c alpha_k`: needs `<lambda, k> >= -1` going up, `<= 1` going down,
/// and both ends supported.
pub fn is_valid_slide(lambda: &Weight, k: Vertex, c: Sign, datum: &CartanDatum, support: &Support) -> bool {
    let p = lambda.pairing(datum, k);
    let ok = match c {
        Sign::Plus => p >= -1,
        Sign::Minus => p <= 1,
    };
    ok && support.contains(lambda) && support.contains(&lambda.shifted(k, c.value()))
}

fn slides_from<'a>(w: &'a Weight, datum: &'a CartanDatum, support: &'a Support) -> impl Iterator<Item = Weight> + 'a {
    (0..w.rank())
        .flat_map(|k| [(Sign::Plus, k), (Sign::Minus, k)])
        .filter(move |&(c, k)| is_valid_slide(w, k, c, datum, support))
        .map(move |(c, k)| w.shifted(k, c.value()))
}

/// Whether every supported weight is reachable from `lambda` by valid slides.
pub fn is_middle_weight(lambda: &Weight, datum: &CartanDatum, support: &Support) -> bool {
    if !support.contains(lambda) {
        return false;
    }
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(w) = queue.pop_front() {
        for n in slides_from(&w, datum, support) {
            if seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == support.len()
}

/// The path from `mu` to `lambda` built backward, each time taking the smallest vertex `i`
/// with `a_i, lambda_i >= 1` or `a_i, lambda_i <= -1` whose predecessor is supported.
pub fn canonical_path(mu: &Weight, lambda: &Weight, datum: &CartanDatum, support: &Support) -> Result<SlideSeq, PathError> {
    if !datum.is_type_a() {
        return Err(PathError::NotTypeA);
    }
    let mut a = lambda.difference(mu).ok_or(PathError::EndpointMismatch)?;
    if !support.contains(mu) || !support.contains(lambda) {
        return Err(PathError::Precondition("both ends must be supported"));
    }
    let mut cur = lambda.clone();
    let mut rev = Vec::new();
    while a.iter().any(|&x| x != 0) {
        let pick = (0..a.len()).find_map(|i| {
            let p = cur.pairing(datum, i);
            let c = if a[i] >= 1 && p >= 1 {
                Sign::Plus
            } else if a[i] <= -1 && p <= -1 {
                Sign::Minus
            } else {
                return None;
            };
            support.contains(&cur.shifted(i, -c.value())).then_some((c, i))
        });
        let (c, i) = pick.ok_or(PathError::ClaimFailure)?;
        rev.push((c, i));
        a[i] -= c.value();
        cur = cur.shifted(i, -c.value());
    }
    rev.reverse();
    Ok(SlideSeq::new(mu.clone(), rev))
}

fn check_position(s: &SlideSeq, a: usize) -> Result<usize, PathError> {
    if a == 0 || a >= s.len() {
        return Err(PathError::InvalidMove { position: a, reason: "position out of range" });
    }
    Ok(a - 1)
}

/// Transposes steps `a` and `a + 1`.
pub fn switch_move(s: &SlideSeq, a: usize, mode: Mode, datum: &CartanDatum, support: &Support) -> Result<SlideSeq, PathError> {
    let j = check_position(s, a)?;
    let ((c1, k1), (c2, k2)) = (s.steps[j], s.steps[j + 1]);
    let mut out = s.clone();
    out.steps.swap(j, j + 1);
    match mode {
        Mode::Rescale => {
            if c1.value() + c2.value() != 0 {
                return Err(PathError::InvalidMove { position: a, reason: "signs do not cancel" });
            }
            if k1 == k2 {
                return Err(PathError::InvalidMove { position: a, reason: "vertices coincide" });
            }
        }
        Mode::Path => {
            if !out.is_valid_path(datum, support) {
                return Err(PathError::InvalidMove { position: a, reason: "result is not a valid path" });
            }
        }
    }
    Ok(out)
}

/// Removes steps `a` and `a + 1` when they cancel.
pub fn drop_move(s: &SlideSeq, a: usize) -> Result<SlideSeq, PathError> {
    let j = check_position(s, a)?;
    let ((c1, k1), (c2, k2)) = (s.steps[j], s.steps[j + 1]);
    if k1 != k2 || c1 == c2 {
        return Err(PathError::InvalidMove { position: a, reason: "steps do not cancel" });
    }
    let mut out = s.clone();
    out.steps.drain(j..j + 2);
    Ok(out)
}

pub fn apply_move(s: &SlideSeq, mv: Move, mode: Mode, datum: &CartanDatum, support: &Support) -> Result<SlideSeq, PathError> {
    match mv {
        Move::Switch(a) => switch_move(s, a, mode, datum, support),
        Move::Drop(a) => drop_move(s, a),
    }
}

/// Rescale-mode moves taking a zero-sum sequence to the empty one, checked by replay.
pub fn reduce_to_empty(s: &SlideSeq, datum: &CartanDatum, support: &Support) -> Result<MoveCert, PathError> {
    if s.step_sum().iter().any(|&x| x != 0) {
        return Err(PathError::NotClosed);
    }
    let mut cert = MoveCert::default();
    let mut steps = s.steps.clone();
    let switch = |steps: &mut Vec<Step>, j: usize, cert: &mut MoveCert| {
        steps.swap(j, j + 1);
        cert.moves.push(Move::Switch(j + 1));
    };
    while !steps.is_empty() {
        // The closest cancelling pair has no step on its vertex in between.
        let (p, q) = (0..steps.len())
            .flat_map(|p| (p + 1..steps.len()).map(move |q| (p, q)))
            .filter(|&(p, q)| steps[p].1 == steps[q].1 && steps[p].0 != steps[q].0)
            .min_by_key(|&(p, q)| (q - p, p))
            .expect("zero-sum sequences have a cancelling pair");
        let c = steps[p].0;
        let (mut p, mut q) = (p, q);
        // Steps of the opposite sign between the pair move left past its first step.
        let mut r = p + 1;
        while r < q {
            if steps[r].0 == c {
                r += 1;
                continue;
            }
            for j in (p..r).rev() {
                switch(&mut steps, j, &mut cert);
            }
            p += 1;
            r += 1;
        }
        // Only steps of sign `c` remain in between; the second step of the pair passes them.
        while q > p + 1 {
            switch(&mut steps, q - 1, &mut cert);
            q -= 1;
        }
        steps.drain(p..p + 2);
        cert.moves.push(Move::Drop(p + 1));
    }
    let end = cert.replay(s, Mode::Rescale, datum, support)?;
    debug_assert!(end.is_empty());
    if !end.is_empty() {
        return Err(PathError::NotClosed);
    }
    Ok(cert)
}

fn neighbours(s: &SlideSeq, datum: &CartanDatum, support: &Support) -> Vec<(Move, SlideSeq)> {
    let mut out = Vec::new();
    for a in 1..s.len() {
        for mv in [Move::Switch(a), Move::Drop(a)] {
            if let Ok(t) = apply_move(s, mv, Mode::Path, datum, support) {
                out.push((mv, t));
            }
        }
    }
    out
}

/// Breadth-first search from `start` until `goal` accepts a sequence; `budget` bounds the
/// number of sequences expanded.
fn search(
    start: &SlideSeq,
    datum: &CartanDatum,
    support: &Support,
    budget: usize,
    goal: impl Fn(&SlideSeq) -> bool,
) -> Option<(SlideSeq, MoveCert)> {
    let mut parent: BTreeMap<SlideSeq, Option<(SlideSeq, Move)>> = BTreeMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    let mut expanded = 0;
    while let Some(s) = queue.pop_front() {
        if goal(&s) {
            let mut moves = Vec::new();
            let mut cur = s.clone();
            while let Some(Some((prev, mv))) = parent.get(&cur) {
                moves.push(*mv);
                cur = prev.clone();
            }
            moves.reverse();
            return Some((s, MoveCert { moves }));
        }
        if expanded >= budget {
            return None;
        }
        expanded += 1;
        for (mv, t) in neighbours(&s, datum, support) {
            if !parent.contains_key(&t) {
                parent.insert(t.clone(), Some((s.clone(), mv)));
                queue.push_back(t);
            }
        }
    }
    None
}

/// Searches for path-mode moves relating `p` and `q`, starting from the longer one.
pub fn slide_equivalent(
    p: &SlideSeq,
    q: &SlideSeq,
    datum: &CartanDatum,
    support: &Support,
    budget: usize,
) -> Result<Equivalence, PathError> {
    if p.base != q.base || p.endpoint() != q.endpoint() {
        return Err(PathError::EndpointMismatch);
    }
    let forward = p.len() >= q.len();
    let (from, to) = if forward { (p, q) } else { (q, p) };
    Ok(match search(from, datum, support, budget, |s| s == to) {
        Some((_, cert)) => Equivalence::Certified { forward, cert },
        None => Equivalence::Undecided,
    })
}

/// A path one step shorter than `canon` that is slide equivalent to `canon` followed by `extra`.
///
/// Needs `a_i <= -1` for an extra `+alpha_i` and `a_i >= 1` for `-alpha_i`, where `a` is the
/// displacement of `canon`.
pub fn reduce_appended(
    canon: &SlideSeq,
    extra: Step,
    datum: &CartanDatum,
    support: &Support,
    budget: usize,
) -> Result<(SlideSeq, MoveCert), PathError> {
    let (c, i) = extra;
    if i >= canon.base.rank() {
        return Err(PathError::Precondition("vertex out of range"));
    }
    let a = canon.step_sum();
    let hypothesis = match c {
        Sign::Plus => a[i] <= -1,
        Sign::Minus => a[i] >= 1,
    };
    if !hypothesis {
        return Err(PathError::Precondition("sign hypothesis on the displacement fails"));
    }
    if !canon.is_valid_path(datum, support) {
        return Err(PathError::Precondition("canonical sequence is not a valid path"));
    }
    let mut start = canon.clone();
    start.steps.push(extra);
    if !start.is_valid_path(datum, support) {
        return Err(PathError::Precondition("the extra step is not a valid slide"));
    }
    let target = canon.len() - 1;
    search(&start, datum, support, budget, |s| s.len() == target).ok_or(PathError::NotFound)
}

/// Every valid path from `mu` to `lambda` of length `sum |a_j|`.
pub fn minimal_paths(mu: &Weight, lambda: &Weight, datum: &CartanDatum, support: &Support) -> Result<Vec<SlideSeq>, PathError> {
    let a = lambda.difference(mu).ok_or(PathError::EndpointMismatch)?;
    let mut out = Vec::new();
    if !support.contains(mu) {
        return Ok(out);
    }
    fn rec(w: &Weight, rem: &mut Vec<i64>, steps: &mut Vec<Step>, datum: &CartanDatum, support: &Support, all: &mut Vec<Vec<Step>>) {
        if rem.iter().all(|&x| x == 0) {
            all.push(steps.clone());
            return;
        }
        for k in 0..rem.len() {
            let c = match rem[k].signum() {
                1 => Sign::Plus,
                -1 => Sign::Minus,
                _ => continue,
            };
            if is_valid_slide(w, k, c, datum, support) {
                rem[k] -= c.value();
                steps.push((c, k));
                rec(&w.shifted(k, c.value()), rem, steps, datum, support, all);
                steps.pop();
                rem[k] += c.value();
            }
        }
    }
    let mut all = Vec::new();
    rec(mu, &mut a.clone(), &mut Vec::new(), datum, support, &mut all);
    out.extend(all.into_iter().map(|steps| SlideSeq::new(mu.clone(), steps)));
    Ok(out)
}
