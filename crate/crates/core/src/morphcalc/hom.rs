//! Graded Hom dimensions between words, via adjunction and rotation.
//!
//! Every query is reduced to `phi(lam, W, d) = dim Hom(1_lam, W 1_lam <d>)` for an
//! endo-word `W`. Sorting `W` and rotating its `E` part to the front climbs the weight
//! lattice, so the recursion ends at the boundary of the finite support. Results are kept
//! as integer combinations of `dim End^{d + o}(1_mu)` and cancelled before evaluation; only
//! those base terms with `d + o <= 0` are known (0 below zero, 1 at zero).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_rational::Ratio;

use super::elim::{Eliminator, Linear};
use super::{passes, sort_inner, weight_after, Letter, MorphError, MorphWord, Orientation};
use crate::cartan::{CartanDatum, Support, Weight};
use crate::qgrade::{qint, DimTable, DimValue, LaurentInt};

/// Which sorted form the recursion rotates through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Sort to `F_J E_I` and rotate the `E`s: the base weight climbs.
    Ascending,
    /// Sort to `E_I F_J` and rotate the `F`s: the base weight descends.
    Descending,
    /// Run both and keep every degree either one determines.
    Combined,
}

/// How far above the queried degrees the elimination instantiates identities.
const REFINE_SLACK: i64 = 6;
/// Rounds of filling in the missing orientation before collecting identities.
const CLOSURE_ROUNDS: usize = 3;

/// `(root coordinates of mu, offset) -> coefficient`.
type Comb = BTreeMap<(Vec<i64>, i64), i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Phi {
    Known(Comb),
    Unknown,
}

impl Phi {
    fn zero() -> Self {
        Phi::Known(Comb::new())
    }

    /// `self += coeff * other(d + a)` summed over the terms `(a, coeff)` of `f`.
    fn add_scaled(&mut self, other: &Phi, f: &LaurentInt) {
        if f.is_zero() {
            return;
        }
        let (Phi::Known(acc), Phi::Known(src)) = (&mut *self, other) else {
            if !matches!(other, Phi::Known(m) if m.is_empty()) {
                *self = Phi::Unknown;
            }
            return;
        };
        for (a, c) in f.terms() {
            for ((mu, o), v) in src {
                let key = (mu.clone(), o + a);
                let e = acc.entry(key.clone()).or_insert(0);
                *e += c * v;
                if *e == 0 {
                    acc.remove(&key);
                }
            }
        }
    }

    fn shifted(&self, s: i64) -> Phi {
        match self {
            Phi::Known(m) => Phi::Known(m.iter().map(|((mu, o), &v)| ((mu.clone(), o + s), v)).collect()),
            Phi::Unknown => Phi::Unknown,
        }
    }
}

enum Memo {
    InProgress,
    Done(Phi),
}

type MemoKey = (bool, Vec<i64>, Vec<Letter>);

/// Computes graded Hom dimensions over a fixed datum and support.
///
/// Holds a memo table behind a `RefCell`; use one engine per thread.
pub struct HomEngine<'a> {
    datum: &'a CartanDatum,
    support: &'a Support,
    depth_bound: usize,
    strategy: Strategy,
    memo: RefCell<BTreeMap<MemoKey, Memo>>,
}

impl<'a> HomEngine<'a> {
    pub fn new(datum: &'a CartanDatum, support: &'a Support) -> Self {
        HomEngine { datum, support, depth_bound: 64, strategy: Strategy::Combined, memo: RefCell::new(BTreeMap::new()) }
    }

    pub fn with_depth_bound(mut self, depth: usize) -> Self {
        self.depth_bound = depth;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// `[-2L, 2L]` where `L` counts the `E`/`F` letters of both words.
    pub fn default_window(source: &MorphWord, target: &MorphWord) -> (i64, i64) {
        let len: usize = source.letters.iter().chain(&target.letters).map(|l| l.weight_length()).sum();
        let l = 2 * len as i64;
        (-l, l)
    }

    /// `dim Hom(source, target<d>)` for every `d` in the window.
    pub fn hom_dim(
        &self,
        source: &MorphWord,
        target: &MorphWord,
        window: Option<(i64, i64)>,
    ) -> Result<DimTable, MorphError> {
        self.query(source, target, window, false)
    }

    /// The same dimensions, obtained by moving the target's letters across first.
    pub fn hom_dim_by_target(
        &self,
        source: &MorphWord,
        target: &MorphWord,
        window: Option<(i64, i64)>,
    ) -> Result<DimTable, MorphError> {
        self.query(source, target, window, true)
    }

    /// Handles `E_i^(2)` letters by expanding them to `E_i E_i` and dividing out `[2]` per slot.
    pub fn hom_dim_divided(
        &self,
        source: &MorphWord,
        target: &MorphWord,
        window: Option<(i64, i64)>,
    ) -> Result<DimTable, MorphError> {
        self.query(source, target, window, false)
    }

    pub fn end_dim(&self, word: &MorphWord, window: Option<(i64, i64)>) -> Result<DimTable, MorphError> {
        self.hom_dim(word, word, window)
    }

    fn query(
        &self,
        source: &MorphWord,
        target: &MorphWord,
        window: Option<(i64, i64)>,
        by_target: bool,
    ) -> Result<DimTable, MorphError> {
        let (lo, hi) = window.unwrap_or_else(|| Self::default_window(source, target));
        let n = self.datum.vertex_count();
        if let Some(l) = source.letters.iter().chain(&target.letters).find(|l| l.vertex() >= n) {
            return Err(MorphError::VertexOutOfRange(l.vertex()));
        }
        if source.domain != target.domain || source.weight_after() != target.weight_after() {
            return Ok(DimTable::zeros(lo, hi));
        }
        let table = match self.strategy {
            Strategy::Ascending => self.evaluate(source, target, lo, hi, by_target, Orientation::FLeft)?,
            Strategy::Descending => self.evaluate(source, target, lo, hi, by_target, Orientation::ELeft)?,
            Strategy::Combined => {
                let a = self.evaluate(source, target, lo, hi, by_target, Orientation::FLeft)?;
                if a.all_known() {
                    a
                } else {
                    let b = self.evaluate(source, target, lo, hi, by_target, Orientation::ELeft)?;
                    merge(&a, &b)?
                }
            }
        };
        for (d, v) in table.iter() {
            if let DimValue::Exactly(x) = v {
                if x < 0 {
                    return Err(MorphError::NegativeDimension { degree: d, value: x });
                }
            }
        }
        Ok(table)
    }

    fn evaluate(
        &self,
        source: &MorphWord,
        target: &MorphWord,
        lo: i64,
        hi: i64,
        by_target: bool,
        orient: Orientation,
    ) -> Result<DimTable, MorphError> {
        let a = expand(&source.letters);
        let b = expand(&target.letters);
        let divided = (source.letters.iter().chain(&target.letters))
            .filter(|l| matches!(l, Letter::Ed2(_)))
            .count();
        let domain = &source.domain;
        let (word, shift) = if by_target {
            let (x, s1) = peel_target(&a, &b, domain, self.datum);
            let (w, s2) = peel_source(&x, &[], domain, self.datum);
            (w, s1 + s2)
        } else {
            peel_source(&a, &b, domain, self.datum)
        };
        let phi = self.phi(domain, &word, orient, 0)?.shifted(shift);
        if divided == 0 {
            return self.settle(&phi, lo, hi);
        }
        let divisor = qint(2).pow(divided as u32);
        if let Some(q) = divide_symbolic(&phi, &divisor) {
            return self.settle(&q, lo, hi);
        }
        // Numeric fallback: deconvolve from a degree where everything is known to vanish.
        let Phi::Known(m) = &phi else {
            return Ok(DimTable::filled(lo, hi, DimValue::Unknown));
        };
        let top = m.keys().map(|(_, o)| *o).max().unwrap_or(0);
        let ext_lo = lo.min(-top - 2 - 2 * divided as i64);
        let mut g = eval(&phi, ext_lo, hi);
        for _ in 0..divided {
            g = g.deconvolve_q2()?;
        }
        Ok(g.window(lo, hi))
    }

    /// Evaluates `phi`, then settles what it can of the rest by elimination.
    fn settle(&self, phi: &Phi, lo: i64, hi: i64) -> Result<DimTable, MorphError> {
        let mut table = eval(phi, lo, hi);
        if let Phi::Known(m) = phi {
            self.refine(m, &mut table)?;
        }
        Ok(table)
    }

    /// Settles unknown degrees using the identities between the two sorted expansions of
    /// every endo-word met so far. Both expansions compute the same dimension, so their
    /// difference is a linear relation among the unknown base terms.
    fn refine(&self, phi: &Comb, table: &mut DimTable) -> Result<(), MorphError> {
        let open: Vec<i64> = table.iter().filter(|(_, v)| *v == DimValue::Unknown).map(|(d, _)| d).collect();
        let Some(top) = open.iter().filter_map(|d| phi.keys().map(|(_, o)| d + o).max()).max() else {
            return Ok(());
        };
        let top = top + REFINE_SLACK;
        let mut elim = Eliminator::default();
        for id in self.route_identities()? {
            let lo_o = id.keys().map(|(_, o)| *o).min().unwrap_or(0);
            let hi_o = id.keys().map(|(_, o)| *o).max().unwrap_or(0);
            for d in (1 - hi_o)..=(top - lo_o) {
                if d + hi_o > top {
                    continue;
                }
                let row = instantiate(&id, d);
                if !row.atoms.is_empty() && !elim.insert(row) {
                    return Err(MorphError::InconsistentRoutes { degree: d });
                }
            }
        }
        for d in open {
            let mut x = instantiate(phi, d);
            elim.reduce(&mut x);
            if x.atoms.is_empty() && x.constant.is_integer() {
                table.set(d, DimValue::Exactly(x.constant.to_integer() as i64));
            }
        }
        Ok(())
    }

    /// Differences of the two sorted expansions, after computing the missing orientation of
    /// every memoized word.
    fn route_identities(&self) -> Result<Vec<Comb>, MorphError> {
        for _ in 0..CLOSURE_ROUNDS {
            let missing: Vec<MemoKey> = {
                let memo = self.memo.borrow();
                memo.iter()
                    .filter(|(_, m)| matches!(m, Memo::Done(Phi::Known(_))))
                    .map(|((f, mu, w), _)| (!f, mu.clone(), w.clone()))
                    .filter(|k| !memo.contains_key(k))
                    .collect()
            };
            if missing.is_empty() {
                break;
            }
            for (f, mu, w) in missing {
                let orient = if f { Orientation::FLeft } else { Orientation::ELeft };
                self.phi(&self.support.weight(mu), &w, orient, 0)?;
            }
        }
        let memo = self.memo.borrow();
        let mut out = Vec::new();
        for ((f, mu, w), m) in memo.iter() {
            let Memo::Done(Phi::Known(a)) = m else { continue };
            if !*f {
                continue;
            }
            let Some(Memo::Done(Phi::Known(b))) = memo.get(&(false, mu.clone(), w.clone())) else { continue };
            let mut diff = a.clone();
            for (k, v) in b {
                let e = diff.entry(k.clone()).or_insert(0);
                *e -= v;
                if *e == 0 {
                    diff.remove(k);
                }
            }
            if !diff.is_empty() {
                out.push(diff);
            }
        }
        Ok(out)
    }

    /// `dim Hom(1_lam, W<d>)` as a symbolic combination.
    fn phi(&self, lam: &Weight, w: &[Letter], orient: Orientation, depth: usize) -> Result<Phi, MorphError> {
        if !passes(w, lam, self.support) {
            return Ok(Phi::zero());
        }
        if w.is_empty() {
            let mut m = Comb::new();
            m.insert((lam.coords().to_vec(), 0), 1);
            return Ok(Phi::Known(m));
        }
        if depth > self.depth_bound {
            return Ok(Phi::Unknown);
        }
        let key = (orient == Orientation::FLeft, lam.coords().to_vec(), w.to_vec());
        match self.memo.borrow().get(&key) {
            Some(Memo::InProgress) => return Ok(Phi::Unknown),
            Some(Memo::Done(p)) => return Ok(p.clone()),
            None => {}
        }
        self.memo.borrow_mut().insert(key.clone(), Memo::InProgress);

        let mut class = super::GradedClass::zero(lam.clone(), lam.clone());
        class.add(w.to_vec(), &LaurentInt::one());
        let sorted = sort_inner(&class, self.datum, Some(self.support), orient, &mut |_, r| r[0])?;
        let mut acc = Phi::zero();
        for (word, f) in sorted.terms() {
            let part = if word.is_empty() {
                let mut m = Comb::new();
                m.insert((lam.coords().to_vec(), 0), 1);
                Phi::Known(m)
            } else {
                let (base, rotated, shift) = rotate_tail(word, lam, orient, self.datum);
                self.phi(&base, &rotated, orient, depth + 1)?.shifted(shift)
            };
            acc.add_scaled(&part, f);
            if acc == Phi::Unknown {
                break;
            }
        }
        self.memo.borrow_mut().insert(key, Memo::Done(acc.clone()));
        Ok(acc)
    }
}

fn expand(w: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::new();
    for &l in w {
        match l {
            Letter::Ed2(i) => out.extend([Letter::E(i), Letter::E(i)]),
            other => out.push(other),
        }
    }
    out
}

/// Moves every source letter to the front of the target through its right adjoint.
///
/// `Hom(E_i 1_nu A, B<d>) = Hom(A, F_i B<d + nu_i + 1>)` and
/// `Hom(F_i 1_nu A, B<d>) = Hom(A, E_i B<d - nu_i + 1>)`.
fn peel_source(a: &[Letter], b: &[Letter], domain: &Weight, datum: &CartanDatum) -> (Vec<Letter>, i64) {
    let mut word = Vec::with_capacity(a.len() + b.len());
    let mut shift = 0;
    for (k, &l) in a.iter().enumerate().rev() {
        let nu = weight_after(&a[k + 1..], domain);
        let i = l.vertex();
        let p = nu.pairing(datum, i);
        match l {
            Letter::E(_) => {
                word.push(Letter::F(i));
                shift += p + 1;
            }
            Letter::F(_) => {
                word.push(Letter::E(i));
                shift += -p + 1;
            }
            Letter::Ed2(_) => unreachable!("divided powers are expanded first"),
        }
    }
    word.extend_from_slice(b);
    (word, shift)
}

/// Moves every target letter to the front of the source through its left adjoint.
///
/// `Hom(A, E_i 1_nu B<d>) = Hom(F_i A, B<d + nu_i + 1>)` and
/// `Hom(A, F_i 1_nu B<d>) = Hom(E_i A, B<d + nu_i - 1>)`.
fn peel_target(a: &[Letter], b: &[Letter], domain: &Weight, datum: &CartanDatum) -> (Vec<Letter>, i64) {
    let mut source = a.to_vec();
    let mut shift = 0;
    for (k, &l) in b.iter().enumerate() {
        let nu = weight_after(&b[k + 1..], domain);
        let i = l.vertex();
        let p = nu.pairing(datum, i);
        match l {
            Letter::E(_) => {
                source.insert(0, Letter::F(i));
                shift += p + 1;
            }
            Letter::F(_) => {
                source.insert(0, Letter::E(i));
                shift += p - 1;
            }
            Letter::Ed2(_) => unreachable!("divided powers are expanded first"),
        }
    }
    (source, shift)
}

/// Rotates the trailing `E`s (ascending) or `F`s (descending) of a sorted endo-word to the front.
///
/// `phi(lam, W' R, d) = phi(nu', R W', d - c)` where `R` starts at `lam`, and
/// `c = 2 lam_i + 2` for `E_i`, `c = -2 lam_i + 2` for `F_i`.
fn rotate_tail(word: &[Letter], lam: &Weight, orient: Orientation, datum: &CartanDatum) -> (Weight, Vec<Letter>, i64) {
    let mut w = word.to_vec();
    let mut base = lam.clone();
    let mut shift = 0;
    let moves = |l: &Letter| match orient {
        Orientation::FLeft => matches!(l, Letter::E(_)),
        Orientation::ELeft => matches!(l, Letter::F(_)),
    };
    let count = w.iter().rev().take_while(|l| moves(l)).count();
    for _ in 0..count {
        let r = w.pop().expect("counted letter");
        let i = r.vertex();
        let p = base.pairing(datum, i);
        let c = match r {
            Letter::E(_) => 2 * p + 2,
            _ => -2 * p + 2,
        };
        shift -= c;
        base = base.shifted(i, r.root_shift());
        w.insert(0, r);
    }
    (base, w, shift)
}

/// The combination at degree `d`: base terms of negative degree drop out, degree zero ones
/// count 1, the rest stay as unknowns.
fn instantiate(comb: &Comb, d: i64) -> Linear {
    let mut out = Linear::default();
    for ((mu, o), &c) in comb {
        let k = d + o;
        match k.signum() {
            -1 => {}
            0 => out.constant += Ratio::from_integer(c as i128),
            _ => out.add_atom((mu.clone(), k), Ratio::from_integer(c as i128)),
        }
    }
    out
}

fn eval(phi: &Phi, lo: i64, hi: i64) -> DimTable {
    let Phi::Known(m) = phi else {
        return DimTable::filled(lo, hi, DimValue::Unknown);
    };
    DimTable::from_fn(lo, hi, |d| {
        let mut total = 0;
        for ((_, o), &c) in m {
            match (d + o).signum() {
                -1 => {}
                0 => total += c,
                _ => return DimValue::Unknown,
            }
        }
        DimValue::Exactly(total)
    })
}

/// Divides the offsets polynomial of every base weight by `divisor`, if possible.
fn divide_symbolic(phi: &Phi, divisor: &LaurentInt) -> Option<Phi> {
    let Phi::Known(m) = phi else {
        return Some(Phi::Unknown);
    };
    let mut per_weight: BTreeMap<Vec<i64>, LaurentInt> = BTreeMap::new();
    for ((mu, o), &c) in m {
        per_weight.entry(mu.clone()).or_default().add_term(*o, c);
    }
    let mut out = Comb::new();
    for (mu, p) in per_weight {
        let q = p.exact_div(divisor).ok()?;
        for (o, c) in q.terms() {
            out.insert((mu.clone(), o), c);
        }
    }
    Some(Phi::Known(out))
}

fn merge(a: &DimTable, b: &DimTable) -> Result<DimTable, MorphError> {
    let mut out = a.clone();
    for (d, v) in b.iter() {
        match (a.get(d), v) {
            (DimValue::Exactly(x), DimValue::Exactly(y)) if x != y => {
                return Err(MorphError::InconsistentRoutes { degree: d });
            }
            (DimValue::Unknown, known @ DimValue::Exactly(_)) => out.set(d, known),
            _ => {}
        }
    }
    Ok(out)
}
