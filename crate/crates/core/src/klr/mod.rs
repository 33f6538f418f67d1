//! Quiver Hecke (KLR) algebras: diagram words, degrees, normal forms and relation checks.
//!
//! Strand positions are 0-based. A word lists its generators bottom to top, so
//! `[Cross(0), Dot(1)]` is a crossing followed by a dot on the second strand above it.

mod nilhecke;
mod normal;
mod relations;

pub use nilhecke::{NilHeckeOracle, Poly};
pub use normal::{canonical_word, Normalizer};
pub use relations::{relation_check, relation_instances, RelationCheckConfig, RelationFailure, RelationInstance, RelationReport};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cartan::{CartanDatum, Scalar, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KlrError {
    #[error("rewriting did not finish within {0} steps")]
    NonTermination(u64),
    #[error("generator {0:?} is out of range for {1} strands")]
    GeneratorOutOfRange(Gen, usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
    #[error("words do not share bottom and top sequences")]
    IdempotentMismatch,
    #[error("the polynomial oracle has not been verified")]
    OracleUnverified,
    #[error("the polynomial oracle needs a constant label sequence")]
    NonConstantLabels,
    #[error("oracle relation check failed: {0}")]
    OracleRelationFailed(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// A dot on the strand at this position.
    Dot(usize),
    /// A crossing of the strands at this position and the next.
    Cross(usize),
}

/// A diagram word over the bottom label sequence `bottom`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KlrWord {
    pub bottom: Vec<Vertex>,
    pub gens: Vec<Gen>,
}

impl KlrWord {
    pub fn new(bottom: Vec<Vertex>, gens: Vec<Gen>) -> Self {
        KlrWord { bottom, gens }
    }

    pub fn idempotent(bottom: Vec<Vertex>) -> Self {
        KlrWord { bottom, gens: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.bottom.len()
    }

    pub fn validate(&self, datum: &CartanDatum) -> Result<(), KlrError> {
        validate_gens(&self.bottom, &self.gens, datum)
    }

    /// Labels read off the top of the diagram.
    pub fn top(&self) -> Vec<Vertex> {
        top_of(&self.bottom, &self.gens)
    }

    /// Two per dot, and `-<i,j>` per crossing of strands labelled `i`, `j`.
    pub fn degree(&self, datum: &CartanDatum) -> i64 {
        let mut labels = self.bottom.clone();
        let mut deg = 0;
        for g in &self.gens {
            match *g {
                Gen::Dot(_) => deg += 2,
                Gen::Cross(k) => {
                    deg -= datum.pair(labels[k], labels[k + 1]);
                    labels.swap(k, k + 1);
                }
            }
        }
        deg
    }
}

fn validate_gens(bottom: &[Vertex], gens: &[Gen], datum: &CartanDatum) -> Result<(), KlrError> {
    if let Some(&v) = bottom.iter().find(|&&v| v >= datum.vertex_count()) {
        return Err(KlrError::VertexOutOfRange(v));
    }
    let m = bottom.len();
    for &g in gens {
        let ok = match g {
            Gen::Dot(p) => p < m,
            Gen::Cross(k) => k + 1 < m,
        };
        if !ok {
            return Err(KlrError::GeneratorOutOfRange(g, m));
        }
    }
    Ok(())
}

fn top_of(bottom: &[Vertex], gens: &[Gen]) -> Vec<Vertex> {
    let mut labels = bottom.to_vec();
    for g in gens {
        match *g {
            Gen::Cross(k) if k + 1 < labels.len() => labels.swap(k, k + 1),
            _ => {}
        }
    }
    labels
}

/// A linear combination of words with one bottom and one top sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlrElement {
    bottom: Vec<Vertex>,
    top: Vec<Vertex>,
    terms: BTreeMap<Vec<Gen>, Scalar>,
}

impl KlrElement {
    pub fn zero(bottom: Vec<Vertex>, top: Vec<Vertex>) -> Self {
        KlrElement { bottom, top, terms: BTreeMap::new() }
    }

    pub fn from_word(word: &KlrWord) -> Self {
        let mut e = KlrElement::zero(word.bottom.clone(), word.top());
        e.terms.insert(word.gens.clone(), Scalar::from(1));
        e
    }

    pub fn idempotent(bottom: Vec<Vertex>) -> Self {
        KlrElement::from_word(&KlrWord::idempotent(bottom))
    }

    pub fn bottom(&self) -> &[Vertex] {
        &self.bottom
    }

    pub fn top(&self) -> &[Vertex] {
        &self.top
    }

    pub fn strands(&self) -> usize {
        self.bottom.len()
    }

    pub fn add_word(&mut self, gens: Vec<Gen>, coeff: Scalar) -> Result<(), KlrError> {
        if top_of(&self.bottom, &gens) != self.top {
            return Err(KlrError::IdempotentMismatch);
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry(gens.clone()).or_insert_with(Scalar::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&gens);
        }
        Ok(())
    }

    pub fn add(&mut self, other: &KlrElement, coeff: Scalar) -> Result<(), KlrError> {
        if other.bottom != self.bottom || other.top != self.top {
            return Err(KlrError::IdempotentMismatch);
        }
        for (g, &c) in &other.terms {
            self.add_word(g.clone(), c * coeff)?;
        }
        Ok(())
    }

    pub fn sub(&self, other: &KlrElement) -> Result<KlrElement, KlrError> {
        let mut out = self.clone();
        out.add(other, Scalar::from(-1))?;
        Ok(out)
    }

    /// The diagram with `upper` stacked on top of `self`.
    pub fn then(&self, upper: &KlrElement) -> Result<KlrElement, KlrError> {
        if upper.bottom != self.top {
            return Err(KlrError::IdempotentMismatch);
        }
        let mut out = KlrElement::zero(self.bottom.clone(), upper.top.clone());
        for (g1, &c1) in &self.terms {
            for (g2, &c2) in &upper.terms {
                let mut g = g1.clone();
                g.extend_from_slice(g2);
                out.add_word(g, c1 * c2)?;
            }
        }
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (KlrWord, Scalar)> + '_ {
        self.terms.iter().map(|(g, &c)| (KlrWord::new(self.bottom.clone(), g.clone()), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, gens: &[Gen]) -> Scalar {
        self.terms.get(gens).copied().unwrap_or_else(Scalar::zero)
    }

    pub fn validate(&self, datum: &CartanDatum) -> Result<(), KlrError> {
        for g in self.terms.keys() {
            validate_gens(&self.bottom, g, datum)?;
        }
        Ok(())
    }

    /// The common degree, or `None` for inhomogeneous or zero elements.
    pub fn degree(&self, datum: &CartanDatum) -> Option<i64> {
        let mut degs = self.terms().map(|(w, _)| w.degree(datum));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

/// Normal form with the default step budget.
pub fn normalize(e: &KlrElement, datum: &CartanDatum) -> Result<KlrElement, KlrError> {
    Normalizer::new(datum).normalize(e)
}

/// Number of spanning words per degree over `bottom`, for degrees `lo..=hi`.
///
/// The spanning set is `{crossings of a canonical reduced word} * {dot monomials at the bottom}`;
/// linear independence is not claimed, so the counts are upper bounds on dimensions.
pub fn graded_dim_count(bottom: &[Vertex], datum: &CartanDatum, lo: i64, hi: i64) -> Vec<(i64, u64)> {
    let m = bottom.len();
    let mut by_perm: BTreeMap<i64, u64> = BTreeMap::new();
    for sigma in normal::permutations(m) {
        let mut deg = 0;
        for a in 0..m {
            for b in a + 1..m {
                if sigma[a] > sigma[b] {
                    deg -= datum.pair(bottom[a], bottom[b]);
                }
            }
        }
        *by_perm.entry(deg).or_insert(0) += 1;
    }
    (lo..=hi)
        .map(|d| {
            let mut count = 0u64;
            for (&pd, &k) in &by_perm {
                let rest = d - pd;
                if rest >= 0 && rest % 2 == 0 {
                    count += k * monomial_count(m, (rest / 2) as u64);
                }
            }
            (d, count)
        })
        .collect()
}

/// Monomials of total degree `d` in `m` variables.
fn monomial_count(m: usize, d: u64) -> u64 {
    if m == 0 {
        return u64::from(d == 0);
    }
    // C(d + m - 1, m - 1)
    let mut num: u64 = 1;
    for k in 1..m as u64 {
        num = num * (d + k) / k;
    }
    num
}
