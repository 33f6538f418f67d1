//! Exact elimination of unknown base terms `dim End^k(1_mu)`, `k > 0`, against linear
//! identities they are known to satisfy.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

type Q = Ratio<i128>;

/// `(root coordinates of mu, k)` standing for `dim End^k(1_mu)`.
pub(super) type Atom = (Vec<i64>, i64);

/// `constant + sum coeff * atom`.
#[derive(Debug, Clone, Default)]
pub(super) struct Linear {
    pub constant: Q,
    pub atoms: BTreeMap<Atom, Q>,
}

impl Linear {
    pub fn add_atom(&mut self, atom: Atom, c: Q) {
        let e = self.atoms.entry(atom.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.atoms.remove(&atom);
        }
    }

    fn sub_scaled(&mut self, other: &Linear, c: Q) {
        self.constant -= other.constant * c;
        for (a, v) in &other.atoms {
            self.add_atom(a.clone(), -(*v * c));
        }
    }
}

/// Rows `L = 0` in reduced echelon form, keyed by pivot atom.
#[derive(Debug, Default)]
pub(super) struct Eliminator {
    rows: BTreeMap<Atom, Linear>,
}

impl Eliminator {
    /// Rewrites `x` so that no pivot atom occurs in it.
    pub fn reduce(&self, x: &mut Linear) {
        let hits: Vec<(Atom, Q)> =
            x.atoms.iter().filter(|(a, _)| self.rows.contains_key(*a)).map(|(a, c)| (a.clone(), *c)).collect();
        for (a, c) in hits {
            x.sub_scaled(&self.rows[&a], c);
        }
    }

    /// Adds the identity `row = 0`. Returns false if it contradicts the earlier ones.
    pub fn insert(&mut self, mut row: Linear) -> bool {
        self.reduce(&mut row);
        let Some((pivot, c)) = row.atoms.iter().next_back().map(|(a, c)| (a.clone(), *c)) else {
            return row.constant.is_zero();
        };
        let inv = Q::one() / c;
        row.constant *= inv;
        for v in row.atoms.values_mut() {
            *v *= inv;
        }
        for other in self.rows.values_mut() {
            if let Some(&k) = other.atoms.get(&pivot) {
                other.sub_scaled(&row, k);
            }
        }
        self.rows.insert(pivot, row);
        true
    }
}
