//! Random KLR data and elements.

use kmact_core::klr::{Gen, KlrElement};
use kmact_core::{CartanDatum, Scalar};
use rand::Rng;

/// Nonzero rational `t_ij`, with `t_ij = t_ji` on non-adjacent pairs.
pub fn random_scalars(datum: CartanDatum, rng: &mut impl Rng) -> CartanDatum {
    let n = datum.vertex_count();
    let mut next = || {
        let num = loop {
            let v = rng.gen_range(-5i64..=5);
            if v != 0 {
                break v;
            }
        };
        Scalar::new(num, rng.gen_range(1i64..=3))
    };
    let mut vals = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = next();
            let b = if datum.pair(i, j) == 0 { a } else { next() };
            vals.push((i, j, a));
            vals.push((j, i, b));
        }
    }
    datum.with_scalars(vals).unwrap()
}

/// A combination of up to three words on `1..=max_strands` strands with every label 0.
pub fn random_constant_element(rng: &mut impl Rng, max_strands: usize, max_gens: usize) -> KlrElement {
    let m = rng.gen_range(1..=max_strands);
    let mut e = KlrElement::zero(vec![0; m], vec![0; m]);
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_gens);
        let gens: Vec<Gen> = (0..len)
            .map(|_| if m == 1 || rng.gen_bool(0.5) { Gen::Dot(rng.gen_range(0..m)) } else { Gen::Cross(rng.gen_range(0..m - 1)) })
            .collect();
        e.add_word(gens, Scalar::from(rng.gen_range(-3i64..=3))).unwrap();
    }
    e
}
