//! The polynomial representation of the nilHecke algebra: dots multiply, crossings act by
//! divided differences.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{Gen, KlrElement, KlrError};
use crate::cartan::Scalar;

/// A polynomial in `x_1, ..., x_m` with rational coefficients, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Poly::monomial(vec![0; vars], Scalar::from(1))
    }

    pub fn monomial(exps: Vec<u32>, coeff: Scalar) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    /// The variable at 0-based position `p`.
    pub fn var(vars: usize, p: usize) -> Self {
        let mut e = vec![0; vars];
        e[p] = 1;
        Poly::monomial(e, Scalar::from(1))
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Scalar)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).copied().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: Scalar) {
        assert_eq!(exps.len(), self.vars, "exponent vector has the wrong length");
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(Scalar::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&mut self, other: &Poly, coeff: Scalar) {
        for (e, &c) in &other.terms {
            self.add_term(e.clone(), c * coeff);
        }
    }

    /// Multiplication by `x_p`.
    pub fn times_var(&self, p: usize) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e[p] += 1;
            out.add_term(e, c);
        }
        out
    }

    /// `(f - s_k f) / (x_k - x_{k+1})` for 0-based `k`.
    pub fn divided_difference(&self, k: usize) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (e, &c) in &self.terms {
            let (a, b) = (e[k], e[k + 1]);
            let (hi, lo, sign) = if a >= b { (a, b, 1) } else { (b, a, -1) };
            // (x^h y^l - x^l y^h) / (x - y) = sum_{j < h - l} x^(l + j) y^(h - 1 - j)
            for j in 0..hi - lo {
                let mut f = e.clone();
                f[k] = lo + j;
                f[k + 1] = hi - 1 - j;
                out.add_term(f, c * Scalar::from(sign));
            }
        }
        out
    }

    /// All monomials of total degree at most `deg`.
    pub fn monomials_up_to(vars: usize, deg: u32) -> Vec<Poly> {
        let mut exps = vec![Vec::new()];
        for _ in 0..vars {
            exps = exps
                .into_iter()
                .flat_map(|e: Vec<u32>| {
                    let used: u32 = e.iter().sum();
                    (0..=deg - used).map(move |a| {
                        let mut f = e.clone();
                        f.push(a);
                        f
                    })
                })
                .collect();
        }
        exps.into_iter().map(|e| Poly::monomial(e, Scalar::from(1))).collect()
    }
}

/// Acts on polynomials by diagrams with a constant label sequence.
///
/// Must pass [`NilHeckeOracle::verify`] before it will act.
#[derive(Debug, Clone, Default)]
pub struct NilHeckeOracle {
    verified: bool,
}

impl NilHeckeOracle {
    pub fn new() -> Self {
        NilHeckeOracle { verified: false }
    }

    /// An oracle that has already passed [`NilHeckeOracle::verify`].
    pub fn verified() -> Result<Self, KlrError> {
        let mut o = NilHeckeOracle::new();
        o.verify()?;
        Ok(o)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Checks the nilHecke relations for the action on every monomial of degree at most 3
    /// in three variables.
    pub fn verify(&mut self) -> Result<(), KlrError> {
        use Gen::{Cross as T, Dot as X};
        let m = 3;
        let rels: [(&'static str, Vec<(i64, Vec<Gen>)>); 8] = [
            ("x_k t_k = t_k x_(k+1) + 1", vec![(1, vec![X(0), T(0)]), (-1, vec![T(0), X(1)]), (-1, vec![])]),
            ("t_k x_k = x_(k+1) t_k + 1", vec![(1, vec![T(0), X(0)]), (-1, vec![X(1), T(0)]), (-1, vec![])]),
            ("x_k t_k = t_k x_(k+1) + 1 (second pair)", vec![(1, vec![X(1), T(1)]), (-1, vec![T(1), X(2)]), (-1, vec![])]),
            ("t_k x_k = x_(k+1) t_k + 1 (second pair)", vec![(1, vec![T(1), X(1)]), (-1, vec![X(2), T(1)]), (-1, vec![])]),
            ("t_k t_k = 0", vec![(1, vec![T(0), T(0)])]),
            ("t_k t_k = 0 (second pair)", vec![(1, vec![T(1), T(1)])]),
            ("braid", vec![(1, vec![T(0), T(1), T(0)]), (-1, vec![T(1), T(0), T(1)])]),
            ("far dot commutes with crossing", vec![(1, vec![X(2), T(0)]), (-1, vec![T(0), X(2)])]),
        ];
        for f in Poly::monomials_up_to(m, 3) {
            for (name, rel) in &rels {
                let mut total = Poly::zero(m);
                for (c, w) in rel {
                    total.add(&act_word(w, &f), Scalar::from(*c));
                }
                if !total.is_zero() {
                    return Err(KlrError::OracleRelationFailed(name));
                }
            }
        }
        self.verified = true;
        Ok(())
    }

    /// The action of `e` on `f`; the bottom generator of each word acts first.
    pub fn act(&self, e: &KlrElement, f: &Poly) -> Result<Poly, KlrError> {
        if !self.verified {
            return Err(KlrError::OracleUnverified);
        }
        let b = e.bottom();
        if b.windows(2).any(|w| w[0] != w[1]) {
            return Err(KlrError::NonConstantLabels);
        }
        assert_eq!(f.vars(), b.len(), "polynomial variables must match the strand count");
        let mut out = Poly::zero(f.vars());
        for (w, c) in e.terms() {
            out.add(&act_word(&w.gens, f), c);
        }
        Ok(out)
    }
}

fn act_word(gens: &[Gen], f: &Poly) -> Poly {
    let mut p = f.clone();
    for &g in gens {
        p = match g {
            Gen::Dot(q) => p.times_var(q),
            Gen::Cross(k) => p.divided_difference(k),
        };
    }
    p
}
