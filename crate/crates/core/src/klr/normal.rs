//! Rewriting to the spanning set `tau_w * x^a * e(nu)` with dots at the bottom and `w` the
//! lexicographically least reduced word of its permutation.
//!
//! A permutation `sigma` sends the bottom position of each strand to its top position.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{Gen, KlrElement, KlrError};
use crate::cartan::{CartanDatum, Scalar, Vertex};

/// `(dot exponents at the bottom, permutation) -> coefficient`.
type Nf = BTreeMap<(Vec<u32>, Vec<usize>), Scalar>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Commute(usize),
    Braid(usize),
}

/// The lexicographically least reduced word of `sigma`, listed bottom to top.
pub fn canonical_word(sigma: &[usize]) -> Vec<usize> {
    let mut s = sigma.to_vec();
    let mut word = Vec::new();
    while let Some(k) = (0..s.len().saturating_sub(1)).find(|&k| s[k] > s[k + 1]) {
        word.push(k);
        s.swap(k, k + 1);
    }
    word
}

pub(crate) fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

fn identity(m: usize) -> Vec<usize> {
    (0..m).collect()
}

/// `s_k` composed after `sigma`: swaps the top positions `k` and `k + 1`.
fn left_swap(sigma: &[usize], k: usize) -> Vec<usize> {
    sigma
        .iter()
        .map(|&v| if v == k { k + 1 } else if v == k + 1 { k } else { v })
        .collect()
}

fn labels_after(bottom: &[Vertex], word: &[usize]) -> Vec<Vertex> {
    let mut l = bottom.to_vec();
    for &c in word {
        l.swap(c, c + 1);
    }
    l
}

fn apply_move_word(w: &[usize], mv: Move) -> Vec<usize> {
    let mut out = w.to_vec();
    match mv {
        Move::Commute(j) => out.swap(j, j + 1),
        Move::Braid(j) => {
            let (a, b) = (w[j], w[j + 1]);
            out[j] = b;
            out[j + 1] = a;
            out[j + 2] = b;
        }
    }
    out
}

fn moves_from(w: &[usize]) -> impl Iterator<Item = Move> + '_ {
    let commutes = (0..w.len().saturating_sub(1))
        .filter(move |&j| w[j].abs_diff(w[j + 1]) >= 2)
        .map(Move::Commute);
    let braids = (0..w.len().saturating_sub(2))
        .filter(move |&j| w[j] == w[j + 2] && w[j].abs_diff(w[j + 1]) == 1)
        .map(Move::Braid);
    commutes.chain(braids)
}

fn add_into(acc: &mut Nf, src: Nf, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    for (k, v) in src {
        let e = acc.entry(k.clone()).or_insert_with(Scalar::zero);
        *e += v * coeff;
        if e.is_zero() {
            acc.remove(&k);
        }
    }
}

fn single(dots: Vec<u32>, sigma: Vec<usize>) -> Nf {
    let mut m = Nf::new();
    m.insert((dots, sigma), Scalar::one());
    m
}

/// Rewrites elements to normal form; caches reduced-word graphs between calls.
pub struct Normalizer<'a> {
    datum: &'a CartanDatum,
    budget: u64,
    steps: u64,
    /// For each permutation: every reduced word, with a move taking it one step toward the canonical one.
    trees: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, Option<Move>>>,
}

impl<'a> Normalizer<'a> {
    pub fn new(datum: &'a CartanDatum) -> Self {
        Normalizer { datum, budget: 1_000_000, steps: 0, trees: BTreeMap::new() }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn normalize(&mut self, e: &KlrElement) -> Result<KlrElement, KlrError> {
        e.validate(self.datum)?;
        self.steps = 0;
        let bottom = e.bottom().to_vec();
        let mut acc = Nf::new();
        for (w, c) in e.terms() {
            let nf = self.word_nf(&bottom, &w.gens)?;
            add_into(&mut acc, nf, c);
        }
        let mut out = KlrElement::zero(bottom, e.top().to_vec());
        for ((dots, sigma), c) in acc {
            let mut gens = Vec::new();
            for (p, &a) in dots.iter().enumerate() {
                gens.extend(core::iter::repeat_n(Gen::Dot(p), a as usize));
            }
            gens.extend(canonical_word(&sigma).into_iter().map(Gen::Cross));
            out.add_word(gens, c)?;
        }
        Ok(out)
    }

    fn step(&mut self) -> Result<(), KlrError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(KlrError::NonTermination(self.budget));
        }
        Ok(())
    }

    fn word_nf(&mut self, bottom: &[Vertex], gens: &[Gen]) -> Result<Nf, KlrError> {
        let m = bottom.len();
        let mut nf = single(vec![0; m], identity(m));
        for &g in gens {
            nf = self.apply(bottom, &nf, g)?;
        }
        Ok(nf)
    }

    fn crossings_nf(&mut self, bottom: &[Vertex], dots: &[u32], word: &[usize]) -> Result<Nf, KlrError> {
        let mut nf = single(dots.to_vec(), identity(bottom.len()));
        for &c in word {
            nf = self.apply(bottom, &nf, Gen::Cross(c))?;
        }
        Ok(nf)
    }

    fn apply(&mut self, bottom: &[Vertex], nf: &Nf, g: Gen) -> Result<Nf, KlrError> {
        let mut acc = Nf::new();
        for ((dots, sigma), &c) in nf {
            let r = match g {
                Gen::Dot(p) => self.dot_on_top(bottom, dots, sigma, p)?,
                Gen::Cross(k) => self.cross_on_top(bottom, dots, sigma, k)?,
            };
            add_into(&mut acc, r, c);
        }
        Ok(acc)
    }

    /// Slides a dot placed at top position `p` down to the bottom.
    fn dot_on_top(&mut self, bottom: &[Vertex], dots: &[u32], sigma: &[usize], p: usize) -> Result<Nf, KlrError> {
        self.step()?;
        let word = canonical_word(sigma);
        let mut out = Nf::new();
        let mut pos = p;
        for j in (0..word.len()).rev() {
            let c = word[j];
            let mu = labels_after(bottom, &word[..j]);
            let equal = mu[c] == mu[c + 1];
            let sign = if pos == c {
                pos = c + 1;
                1
            } else if pos == c + 1 {
                pos = c;
                -1
            } else {
                continue;
            };
            // x_k t_k = t_k x_{k+1} + e and x_{k+1} t_k = t_k x_k - e on equal labels.
            if equal {
                let mut shorter = word.clone();
                shorter.remove(j);
                let sub = self.crossings_nf(bottom, dots, &shorter)?;
                add_into(&mut out, sub, Scalar::from(sign));
            }
        }
        let mut d = dots.to_vec();
        d[pos] += 1;
        add_into(&mut out, single(d, sigma.to_vec()), Scalar::one());
        Ok(out)
    }

    /// Puts a crossing at position `k` on top of `tau_sigma x^dots`.
    fn cross_on_top(&mut self, bottom: &[Vertex], dots: &[u32], sigma: &[usize], k: usize) -> Result<Nf, KlrError> {
        self.step()?;
        let inv = |v: usize| sigma.iter().position(|&s| s == v).expect("permutation");
        let swapped = left_swap(sigma, k);
        let mut out = Nf::new();
        if inv(k) < inv(k + 1) {
            let mut word = canonical_word(sigma);
            word.push(k);
            let path = self.path_to_canonical(&swapped, &word);
            let corr = self.walk(bottom, dots, word, &path)?;
            add_into(&mut out, corr, Scalar::one());
            add_into(&mut out, single(dots.to_vec(), swapped), Scalar::one());
            return Ok(out);
        }
        // The crossing undoes one: rewrite tau_sigma as tau_k tau_rho first.
        let rho = swapped;
        let mut target = canonical_word(&rho);
        target.push(k);
        let mut path = self.path_to_canonical(sigma, &target);
        path.reverse();
        let corr = self.walk(bottom, dots, canonical_word(sigma), &path)?;
        // The corrections still sit below the new crossing.
        let corr = self.apply(bottom, &corr, Gen::Cross(k))?;
        add_into(&mut out, corr, Scalar::one());

        let mu = labels_after(bottom, &canonical_word(&rho));
        let (i, j) = (mu[k], mu[k + 1]);
        if i != j {
            match self.datum.pair(i, j) {
                0 => add_into(&mut out, single(dots.to_vec(), rho), self.datum.t(i, j)),
                _ => {
                    let a = self.dot_on_top(bottom, dots, &rho, k)?;
                    add_into(&mut out, a, self.datum.t(i, j));
                    let b = self.dot_on_top(bottom, dots, &rho, k + 1)?;
                    add_into(&mut out, b, self.datum.t(j, i));
                }
            }
        }
        Ok(out)
    }

    /// Applies `moves` to the reduced word `start`, returning only the correction terms.
    fn walk(&mut self, bottom: &[Vertex], dots: &[u32], start: Vec<usize>, moves: &[Move]) -> Result<Nf, KlrError> {
        let mut out = Nf::new();
        let mut w = start;
        for &mv in moves {
            self.step()?;
            if let Move::Braid(j) = mv {
                let (a, b) = (w[j], w[j + 1]);
                let c = a.min(b);
                let mu = labels_after(bottom, &w[..j]);
                let (x, y, z) = (mu[c], mu[c + 1], mu[c + 2]);
                if x == z && x != y && self.datum.pair(x, y) == -1 {
                    // t_c t_{c+1} t_c = t_{c+1} t_c t_{c+1} + t_xy e on labels (x, y, x).
                    let t = self.datum.t(x, y);
                    let coeff = if a == c { t } else { -t };
                    let mut rest = w[..j].to_vec();
                    rest.extend_from_slice(&w[j + 3..]);
                    let sub = self.crossings_nf(bottom, dots, &rest)?;
                    add_into(&mut out, sub, coeff);
                }
            }
            w = apply_move_word(&w, mv);
        }
        Ok(out)
    }

    /// Moves turning the reduced word `w` of `sigma` into the canonical one.
    fn path_to_canonical(&mut self, sigma: &[usize], w: &[usize]) -> Vec<Move> {
        let tree = self.trees.entry(sigma.to_vec()).or_insert_with(|| build_tree(sigma));
        let mut path = Vec::new();
        let mut cur = w.to_vec();
        while let Some(mv) = tree.get(&cur).copied().expect("word is a reduced word of the permutation") {
            path.push(mv);
            cur = apply_move_word(&cur, mv);
        }
        path
    }
}

/// Breadth-first tree over all reduced words of `sigma`, rooted at the canonical one.
fn build_tree(sigma: &[usize]) -> BTreeMap<Vec<usize>, Option<Move>> {
    let root = canonical_word(sigma);
    let mut tree = BTreeMap::new();
    tree.insert(root.clone(), None);
    let mut queue = VecDeque::from([root]);
    while let Some(w) = queue.pop_front() {
        let next: Vec<(Vec<usize>, Move)> = moves_from(&w).map(|mv| (apply_move_word(&w, mv), mv)).collect();
        for (nw, mv) in next {
            if !tree.contains_key(&nw) {
                // Every move is an involution, so the same move leads back.
                tree.insert(nw.clone(), Some(mv));
                queue.push_back(nw);
            }
        }
    }
    tree
}
