//! The action of `E_i`, `F_i` on `Lambda^N(C^m (x) C^n)` at `q = 1`, by brute-force linear algebra.
//!
//! The module has basis the `N`-subsets of the cells `(a, c)`, `a < m`, `c < n`. `E_i` moves one
//! cell from column `i` to column `i + 1` in the same row, with the usual wedge sign; `F_i` is its
//! transpose and `E_i^(2)` acts as `E_i^2 / 2`.

use std::collections::BTreeMap;

use kmact_core::cartan::{grassmannian_support, grassmannian_tuples, tuple_pairings};
use kmact_core::morphcalc::{decompose, sort_class, GradedClass, Letter, MorphError, MorphWord, SortOptions};
use kmact_core::qgrade::qint;
use kmact_core::{CartanDatum, Scalar, Support, Weight};
use num_traits::{One, Zero};

pub type Vector = BTreeMap<u32, Scalar>;

pub struct Module {
    pub m: usize,
    pub n: usize,
    /// Weight pairings to the basis of the weight space.
    pub spaces: BTreeMap<Vec<i64>, Vec<u32>>,
}

impl Module {
    pub fn new(m: usize, n: usize, total: usize) -> Module {
        let mut spaces: BTreeMap<Vec<i64>, Vec<u32>> = BTreeMap::new();
        for mask in 0u32..1 << (m * n) {
            if mask.count_ones() as usize != total {
                continue;
            }
            let k: Vec<usize> = (0..n).map(|c| (0..m).filter(|&a| mask & Self::bit(n, a, c) != 0).count()).collect();
            spaces.entry(tuple_pairings(&k)).or_default().push(mask);
        }
        Module { m, n, spaces }
    }

    pub fn bit(n: usize, a: usize, c: usize) -> u32 {
        1 << (a * n + c)
    }

    /// `e_{to <- from}` on one wedge basis vector.
    pub fn elementary(mask: u32, from: u32, to: u32) -> Option<(u32, i64)> {
        if mask & from == 0 || mask & to != 0 {
            return None;
        }
        let (lo, hi) = if from < to { (from, to) } else { (to, from) };
        let between = mask & !(lo | (lo - 1)) & (hi - 1);
        let sign = if between.count_ones().is_multiple_of(2) { 1 } else { -1 };
        Some((mask & !from | to, sign))
    }

    pub fn raise(&self, v: &Vector, i: usize, up: bool) -> Vector {
        let mut out = Vector::new();
        for (&mask, &c) in v {
            for a in 0..self.m {
                let (from, to) = if up {
                    (Self::bit(self.n, a, i), Self::bit(self.n, a, i + 1))
                } else {
                    (Self::bit(self.n, a, i + 1), Self::bit(self.n, a, i))
                };
                if let Some((nm, s)) = Self::elementary(mask, from, to) {
                    let e = out.entry(nm).or_insert_with(Scalar::zero);
                    *e += c * Scalar::from(s);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The action of a word; the rightmost letter acts first.
    pub fn act(&self, letters: &[Letter], v: &Vector) -> Vector {
        let mut v = v.clone();
        for &l in letters.iter().rev() {
            v = match l {
                Letter::E(i) => self.raise(&v, i, true),
                Letter::F(i) => self.raise(&v, i, false),
                Letter::Ed2(i) => {
                    let w = self.raise(&self.raise(&v, i, true), i, true);
                    w.into_iter().map(|(k, c)| (k, c / Scalar::from(2))).collect()
                }
            };
        }
        v
    }

    pub fn basis(&self, pairings: &[i64]) -> Vec<Vector> {
        self.spaces
            .get(pairings)
            .map(|b| b.iter().map(|&mask| Vector::from([(mask, Scalar::one())])).collect())
            .unwrap_or_default()
    }
}

pub fn add_scaled(acc: &mut Vector, v: &Vector, c: Scalar) {
    for (&k, &x) in v {
        let e = acc.entry(k).or_insert_with(Scalar::zero);
        *e += x * c;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// `sum_w c_w(1) * w` applied to `v`.
pub fn act_class(module: &Module, class: &GradedClass, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (w, c) in class.terms() {
        add_scaled(&mut out, &module.act(w, v), Scalar::from(c.eval_at_one()));
    }
    out
}

pub struct Setting {
    pub module: Module,
    pub datum: CartanDatum,
    pub support: Support,
    pub weights: Vec<Weight>,
}

pub fn settings() -> Vec<Setting> {
    let mut out = Vec::new();
    for n in 2..=3 {
        for m in 1..=3 {
            for total in 0..=m * n {
                let datum = CartanDatum::type_a(n - 1);
                let support = grassmannian_support(m, n, total).unwrap();
                let weights = grassmannian_tuples(m, n, total)
                    .iter()
                    .map(|k| support.find_by_pairings(&datum, &tuple_pairings(k)).unwrap())
                    .collect();
                out.push(Setting { module: Module::new(m, n, total), datum, support, weights });
            }
        }
    }
    out
}

pub fn letters(rank: usize) -> Vec<Letter> {
    (0..rank).flat_map(|i| [Letter::E(i), Letter::F(i), Letter::Ed2(i)]).collect()
}

pub fn words_up_to(rank: usize, len: usize) -> Vec<Vec<Letter>> {
    let alphabet = letters(rank);
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                alphabet.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Sorts `word` and checks the class acts like the word on its domain weight space.
///
/// Classes not divisible by `[2]` are compared after scaling both sides by `[2]^k`.
pub fn check_word(s: &Setting, domain: &Weight, letters: &[Letter], drop: bool) -> Result<(), String> {
    let word = MorphWord::new(letters.to_vec(), domain.clone());
    let opts = SortOptions { drop_unsupported: drop, ..SortOptions::default() };
    let (class, factor) = match sort_class(&GradedClass::from_word(&word), &s.datum, &s.support, opts) {
        Ok(c) => (c, Scalar::one()),
        Err(MorphError::NonDivisible) => {
            let k = letters.iter().filter(|l| matches!(l, Letter::Ed2(_))).count() as u32;
            let scaled = GradedClass::from_word(&word).scale(&qint(2).pow(k));
            let c = sort_class(&scaled, &s.datum, &s.support, opts).map_err(|e| e.to_string())?;
            (c, Scalar::from(2i64.pow(k)))
        }
        Err(e) => return Err(e.to_string()),
    };
    for (w, _) in class.terms() {
        let first_e = w.iter().position(|l| l.is_raising()).unwrap_or(w.len());
        if w[first_e..].iter().any(|l| !l.is_raising()) {
            return Err(format!("unsorted word {w:?}"));
        }
    }
    for v in s.module.basis(&domain.pairings(&s.datum)) {
        let mut want = Vector::new();
        add_scaled(&mut want, &s.module.act(letters, &v), factor);
        let got = act_class(&s.module, &class, &v);
        if got != want {
            return Err(format!("{letters:?} at {:?}: class acts differently", domain.pairings(&s.datum)));
        }
    }
    Ok(())
}

/// Decompositions of the words of length at most 4: the ones with a negative coefficient or an
/// unexpected error, and the number without an integral sorted form (`NonDivisible`).
pub fn non_effective(max_m: usize) -> (Vec<String>, usize) {
    let mut bad = Vec::new();
    let mut non_divisible = 0;
    for s in settings().into_iter().filter(|s| s.module.m <= max_m) {
        let words = words_up_to(s.datum.vertex_count(), 4);
        for domain in &s.weights {
            for w in &words {
                let word = MorphWord::new(w.clone(), domain.clone());
                match decompose(&word, &s.datum, &s.support) {
                    Ok(c) if c.is_effective() => {}
                    Err(MorphError::NonDivisible) => non_divisible += 1,
                    other => bad.push(format!("{w:?} at {:?}: {other:?}", domain.pairings(&s.datum))),
                }
            }
        }
    }
    (bad, non_divisible)
}
