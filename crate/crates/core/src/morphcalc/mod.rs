//! Words in `E_i`, `F_i` and `E_i^(2)`, their sorted classes, and graded Hom dimensions.

mod elim;
mod hom;

pub use hom::{HomEngine, Strategy};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cartan::{CartanDatum, Support, Vertex, Weight};
use crate::qgrade::{qint, LaurentInt, QError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphError {
    #[error("class is not divisible by [2] after expanding divided powers")]
    NonDivisible,
    #[error("negative multiplicity {coeff} in front of a summand")]
    NegativeMultiplicity { coeff: LaurentInt },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("word contains no factor E_i E_j E_i with i != j")]
    NoSerreFactor,
    #[error("computed dimension {value} at degree {degree} is negative")]
    NegativeDimension { degree: i64, value: i64 },
    #[error("the two evaluation routes disagree at degree {degree}")]
    InconsistentRoutes { degree: i64 },
    #[error("window too narrow to deconvolve")]
    WindowTooNarrow,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
}

impl From<QError> for MorphError {
    fn from(e: QError) -> Self {
        match e {
            QError::WindowTooNarrow => MorphError::WindowTooNarrow,
            _ => MorphError::NonDivisible,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    E(Vertex),
    F(Vertex),
    /// The divided power `E_i^(2)`.
    Ed2(Vertex),
}

impl Letter {
    pub fn vertex(self) -> Vertex {
        match self {
            Letter::E(i) | Letter::F(i) | Letter::Ed2(i) => i,
        }
    }

    /// Multiple of `alpha_i` added by the letter.
    pub fn root_shift(self) -> i64 {
        match self {
            Letter::E(_) => 1,
            Letter::F(_) => -1,
            Letter::Ed2(_) => 2,
        }
    }

    pub fn is_raising(self) -> bool {
        !matches!(self, Letter::F(_))
    }

    /// Length counted in `E`/`F` letters.
    pub fn weight_length(self) -> usize {
        match self {
            Letter::Ed2(_) => 2,
            _ => 1,
        }
    }
}

/// A composite 1-morphism `L_1 L_2 ... L_r 1_domain`; the rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphWord {
    pub letters: Vec<Letter>,
    pub domain: Weight,
}

impl MorphWord {
    pub fn new(letters: Vec<Letter>, domain: Weight) -> Self {
        MorphWord { letters, domain }
    }

    pub fn identity(domain: Weight) -> Self {
        MorphWord { letters: Vec::new(), domain }
    }

    pub fn weight_after(&self) -> Weight {
        weight_after(&self.letters, &self.domain)
    }

    /// Every weight the word passes through, starting at the domain.
    ///
    /// A divided power `E_i^(2)` also visits the weight halfway up, since it is a summand of `E_i E_i`.
    pub fn visited_weights(&self) -> Vec<Weight> {
        visited(&self.letters, &self.domain)
    }

    pub fn passes_support(&self, support: &Support) -> bool {
        passes(&self.letters, &self.domain, support)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_divided_powers(&self) -> bool {
        self.letters.iter().any(|l| matches!(l, Letter::Ed2(_)))
    }
}

pub(crate) fn weight_after(letters: &[Letter], domain: &Weight) -> Weight {
    let mut w = domain.clone();
    for l in letters {
        w = w.shifted(l.vertex(), l.root_shift());
    }
    w
}

fn visited(letters: &[Letter], domain: &Weight) -> Vec<Weight> {
    let mut out = alloc::vec![domain.clone()];
    let mut w = domain.clone();
    for l in letters.iter().rev() {
        if let Letter::Ed2(i) = *l {
            w = w.shifted(i, 1);
            out.push(w.clone());
            w = w.shifted(i, 1);
        } else {
            w = w.shifted(l.vertex(), l.root_shift());
        }
        out.push(w.clone());
    }
    out
}

pub(crate) fn passes(letters: &[Letter], domain: &Weight, support: &Support) -> bool {
    if !support.contains(domain) {
        return false;
    }
    let mut w = domain.clone();
    for l in letters.iter().rev() {
        let steps = if let Letter::Ed2(_) = l { 2 } else { 1 };
        for _ in 0..steps {
            w = w.shifted(l.vertex(), l.root_shift().signum());
            if !support.contains(&w) {
                return false;
            }
        }
    }
    true
}

/// Domain of `letters[idx]`, i.e. the weight after everything to its right.
fn domain_at(letters: &[Letter], idx: usize, domain: &Weight) -> Weight {
    weight_after(&letters[idx + 1..], domain)
}

/// A `Z[q, q^-1]`-combination of words sharing domain and codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    domain: Weight,
    codomain: Weight,
    terms: BTreeMap<Vec<Letter>, LaurentInt>,
}

impl GradedClass {
    pub fn zero(domain: Weight, codomain: Weight) -> Self {
        GradedClass { domain, codomain, terms: BTreeMap::new() }
    }

    pub fn from_word(word: &MorphWord) -> Self {
        let mut c = GradedClass::zero(word.domain.clone(), word.weight_after());
        c.add(word.letters.clone(), &LaurentInt::one());
        c
    }

    pub fn domain(&self) -> &Weight {
        &self.domain
    }

    pub fn codomain(&self) -> &Weight {
        &self.codomain
    }

    /// Adds `coeff * letters`.
    ///
    /// # Panics
    /// If the word does not run from the class domain to its codomain.
    pub fn add(&mut self, letters: Vec<Letter>, coeff: &LaurentInt) {
        assert_eq!(weight_after(&letters, &self.domain), self.codomain, "word endpoints differ from the class");
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(letters.clone()).or_default();
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&letters);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Letter], &LaurentInt)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, letters: &[Letter]) -> LaurentInt {
        self.terms.get(letters).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|c| c.is_nonnegative())
    }

    pub fn scale(&self, f: &LaurentInt) -> Self {
        let mut out = GradedClass::zero(self.domain.clone(), self.codomain.clone());
        for (w, c) in &self.terms {
            out.add(w.clone(), &(c * f));
        }
        out
    }

    pub fn sum(&self, other: &GradedClass) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add(w.clone(), c);
        }
        out
    }

    pub fn words(&self) -> impl Iterator<Item = (MorphWord, &LaurentInt)> {
        self.terms.iter().map(|(k, v)| (MorphWord::new(k.clone(), self.domain.clone()), v))
    }

    fn from_map(domain: Weight, codomain: Weight, terms: BTreeMap<Vec<Letter>, LaurentInt>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        GradedClass { domain, codomain, terms }
    }
}

/// Which letters end up on the left of a sorted word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `F_J E_I`: the default normal form.
    FLeft,
    /// `E_I F_J`.
    ELeft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SortOptions {
    pub drop_unsupported: bool,
    pub assert_effective: bool,
    pub orientation: Orientation,
}

impl Default for SortOptions {
    fn default() -> Self {
        SortOptions { drop_unsupported: true, assert_effective: false, orientation: Orientation::FLeft }
    }
}

/// Sorts every word so that all `F`s sit left of all `E`s, rewriting the leftmost redex first.
pub fn sort_class(
    c: &GradedClass,
    datum: &CartanDatum,
    support: &Support,
    opts: SortOptions,
) -> Result<GradedClass, MorphError> {
    sort_class_with(c, datum, support, opts, &mut |_, redexes| redexes[0])
}

/// Like [`sort_class`], with `choose` picking which redex (by position) to rewrite next.
///
/// Without dropping, the rewrite rules have no overlapping redexes, so the result does not
/// depend on `choose`. Dropping only touches the input and the final normal form.
pub fn sort_class_with(
    c: &GradedClass,
    datum: &CartanDatum,
    support: &Support,
    opts: SortOptions,
    choose: &mut dyn FnMut(&[Letter], &[usize]) -> usize,
) -> Result<GradedClass, MorphError> {
    let filter = if opts.drop_unsupported { Some(support) } else { None };
    let result = sort_inner(c, datum, filter, opts.orientation, choose)?;
    if opts.assert_effective {
        if let Some((_, coeff)) = result.terms().find(|(_, c)| !c.is_nonnegative()) {
            return Err(MorphError::NegativeMultiplicity { coeff: coeff.clone() });
        }
    }
    Ok(result)
}

pub(crate) fn sort_inner(
    c: &GradedClass,
    datum: &CartanDatum,
    filter: Option<&Support>,
    orientation: Orientation,
    choose: &mut dyn FnMut(&[Letter], &[usize]) -> usize,
) -> Result<GradedClass, MorphError> {
    let n = datum.vertex_count();
    for (w, _) in c.terms() {
        if let Some(l) = w.iter().find(|l| l.vertex() >= n) {
            return Err(MorphError::VertexOutOfRange(l.vertex()));
        }
    }
    let keep = |w: &[Letter]| filter.is_none_or(|s| passes(w, &c.domain, s));
    let two = qint(2);
    let max_d2 = c.terms().map(|(w, _)| count_d2(w)).max().unwrap_or(0);
    let mut pending: BTreeMap<Vec<Letter>, LaurentInt> = BTreeMap::new();
    for (w, coeff) in c.terms() {
        if !keep(w) {
            continue;
        }
        let k = count_d2(w);
        let f = coeff * &two.pow((max_d2 - k) as u32);
        *pending.entry(expand_d2(w)).or_default() += &f;
    }

    let mut done: BTreeMap<Vec<Letter>, LaurentInt> = BTreeMap::new();
    while let Some((w, coeff)) = pending.pop_first() {
        if coeff.is_zero() {
            continue;
        }
        let redexes = find_redexes(&w, orientation);
        if redexes.is_empty() {
            *done.entry(w).or_default() += &coeff;
            continue;
        }
        let p = choose(&w, &redexes);
        assert!(redexes.contains(&p), "chooser returned a non-redex position");
        for (nw, f) in rewrite_at(&w, p, &c.domain, datum, orientation) {
            *pending.entry(nw).or_default() += &(&coeff * &f);
        }
    }

    let divisor = two.pow(max_d2 as u32);
    let mut out = BTreeMap::new();
    for (w, coeff) in done {
        if coeff.is_zero() || !keep(&w) {
            continue;
        }
        let q = if max_d2 == 0 { coeff } else { coeff.exact_div(&divisor).map_err(|_| MorphError::NonDivisible)? };
        out.insert(w, q);
    }
    Ok(GradedClass::from_map(c.domain.clone(), c.codomain.clone(), out))
}

fn count_d2(w: &[Letter]) -> usize {
    w.iter().filter(|l| matches!(l, Letter::Ed2(_))).count()
}

fn expand_d2(w: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        match l {
            Letter::Ed2(i) => {
                out.push(Letter::E(i));
                out.push(Letter::E(i));
            }
            other => out.push(other),
        }
    }
    out
}

fn find_redexes(w: &[Letter], orientation: Orientation) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&p| match (orientation, w[p], w[p + 1]) {
            (Orientation::FLeft, Letter::E(_), Letter::F(_)) => true,
            (Orientation::ELeft, Letter::F(_), Letter::E(_)) => true,
            _ => false,
        })
        .collect()
}

/// One commutation step at positions `p, p+1`.
fn rewrite_at(
    w: &[Letter],
    p: usize,
    domain: &Weight,
    datum: &CartanDatum,
    orientation: Orientation,
) -> Vec<(Vec<Letter>, LaurentInt)> {
    let mu = domain_at(w, p + 1, domain);
    let (i, j) = (w[p].vertex(), w[p + 1].vertex());
    let mut swapped = w.to_vec();
    swapped.swap(p, p + 1);
    let mut out = alloc::vec![(swapped, LaurentInt::one())];
    if i == j {
        let mut removed = w.to_vec();
        removed.drain(p..p + 2);
        let m = mu.pairing(datum, i);
        // E F 1_mu = F E 1_mu + [mu_i] 1_mu, read in either direction.
        let coeff = match orientation {
            Orientation::FLeft => qint(m),
            Orientation::ELeft => -qint(m),
        };
        out.push((removed, coeff));
    }
    out
}

/// The sorted class of a single word with unsupported summands dropped; must be effective.
///
/// Returns the zero class when the word itself passes through an unsupported weight.
pub fn decompose(word: &MorphWord, datum: &CartanDatum, support: &Support) -> Result<GradedClass, MorphError> {
    if !word.passes_support(support) {
        return Ok(GradedClass::zero(word.domain.clone(), word.weight_after()));
    }
    let opts = SortOptions { drop_unsupported: true, assert_effective: true, orientation: Orientation::FLeft };
    sort_class(&GradedClass::from_word(word), datum, support, opts)
}

/// Replaces the leftmost factor `E_i E_j E_i` by `E_i^(2) E_j + E_j E_i^(2)`.
pub fn serre_rewrite(word: &MorphWord, datum: &CartanDatum) -> Result<GradedClass, MorphError> {
    let p = serre_position(&word.letters).ok_or(MorphError::NoSerreFactor)?;
    let (i, j) = (word.letters[p].vertex(), word.letters[p + 1].vertex());
    if datum.pair(i, j) != -1 {
        return Err(MorphError::NotAdjacent(i, j));
    }
    let mut out = GradedClass::zero(word.domain.clone(), word.weight_after());
    for factor in [[Letter::Ed2(i), Letter::E(j)], [Letter::E(j), Letter::Ed2(i)]] {
        let mut w = word.letters[..p].to_vec();
        w.extend_from_slice(&factor);
        w.extend_from_slice(&word.letters[p + 3..]);
        out.add(w, &LaurentInt::one());
    }
    Ok(out)
}

fn serre_position(w: &[Letter]) -> Option<usize> {
    (0..w.len().saturating_sub(2)).find(|&p| match (w[p], w[p + 1], w[p + 2]) {
        (Letter::E(a), Letter::E(b), Letter::E(c)) => a == c && a != b,
        _ => false,
    })
}

/// Checks the Serre rewrite of the leftmost factor at the level of classes.
///
/// `E`-only classes are already sorted, so the check pairs both sides against every ordering
/// `G` of the matching `F` letters: the constant term of the sorted `X G` must agree for
/// `X = [2] E_i E_j E_i` and `X = [2] (E_i^(2) E_j + E_j E_i^(2))`.
pub fn verify_serre(word: &MorphWord, datum: &CartanDatum) -> Result<bool, MorphError> {
    let p = serre_position(&word.letters).ok_or(MorphError::NoSerreFactor)?;
    let factor = word.letters[p..p + 3].to_vec();
    let local = weight_after(&word.letters[p + 3..], &word.domain);
    let lhs_word = MorphWord::new(factor.clone(), local.clone());
    let rhs = serre_rewrite(&lhs_word, datum)?;
    let two = qint(2);
    let lhs = GradedClass::from_word(&lhs_word).scale(&two);
    let rhs = rhs.scale(&two);

    let (i, j) = (factor[0].vertex(), factor[1].vertex());
    let orders = [[i, i, j], [i, j, i], [j, i, i]];
    for g in orders {
        let glets: Vec<Letter> = g.iter().map(|&v| Letter::F(v)).collect();
        // G runs from local + content down to local.
        let start = glets.iter().fold(local.clone(), |w, l| w.shifted(l.vertex(), 1));
        let constant = |x: &GradedClass| -> Result<LaurentInt, MorphError> {
            let mut xg = GradedClass::zero(start.clone(), start.clone());
            for (w, c) in x.terms() {
                let mut full = w.to_vec();
                full.extend_from_slice(&glets);
                xg.add(full, c);
            }
            let sorted = sort_inner(&xg, datum, None, Orientation::FLeft, &mut |_, r| r[0])?;
            Ok(sorted.coeff(&[]))
        };
        if constant(&lhs)? != constant(&rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nonvanishing of a word, exact for the shapes `E_i`, `E_j E_i`, `E_i F_j` and `E_i E_i F_j`.
///
/// Other shapes fall back to a sufficient test: the decomposition is nonzero and effective.
pub fn is_nonzero(word: &MorphWord, datum: &CartanDatum, support: &Support) -> bool {
    let s = |w: &Weight| support.contains(w);
    let d = &word.domain;
    match word.letters.as_slice() {
        [] => s(d),
        [Letter::E(i)] => s(d) && s(&d.shifted(*i, 1)),
        [Letter::E(j), Letter::E(i)] => {
            let a = d.shifted(*i, 1);
            s(d) && s(&a) && s(&a.shifted(*j, 1))
        }
        [Letter::E(i), Letter::F(j)] if i != j => {
            let mid = d.shifted(*j, -1);
            [mid.clone(), mid.shifted(*i, 1), mid.shifted(*j, 1), mid.shifted(*i, 1).shifted(*j, 1)]
                .iter()
                .all(s)
        }
        [Letter::E(i), Letter::E(i2), Letter::F(j)] if i == i2 && i != j => {
            let lam = d.shifted(*j, -1).shifted(*i, 1);
            (-1..=1).all(|r| s(&lam.shifted(*i, r)) && s(&lam.shifted(*j, 1).shifted(*i, r)))
        }
        _ => matches!(decompose(word, datum, support), Ok(c) if !c.is_zero()),
    }
}
