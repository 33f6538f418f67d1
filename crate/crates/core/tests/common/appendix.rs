//! Graded Hom dimension tables for words of length at most three, checked against their
//! closed forms: zero below a threshold degree and 0 or 1 at it, depending on which weights
//! are supported.

use kmact_core::cartan::grassmannian_support;
use kmact_core::morphcalc::{HomEngine, Letter, MorphWord};
use kmact_core::{CartanDatum, DimValue, Support, Weight};

use super::Report;
use Letter::{Ed2, E, F};

/// How far below the threshold every table is checked.
const DEPTH: i64 = 6;

pub struct Case {
    pub label: String,
    pub datum: CartanDatum,
    pub support: Support,
}

/// sl_2 on {-2, 0, 2} and the sl_2 / sl_3 Grassmannian supports with `m <= 3`, `N <= 4`.
pub fn small_cases() -> Vec<Case> {
    let mut out = vec![Case {
        label: "sl2 {-2,0,2}".into(),
        datum: CartanDatum::type_a(1),
        support: Support::new(vec![-2], vec![vec![0], vec![1], vec![2]]).unwrap(),
    }];
    for n in 2..=3 {
        for m in 1..=3 {
            for total in 0..=(m * n).min(4) {
                out.push(Case {
                    label: format!("Gr(m={m}, n={n}, N={total})"),
                    datum: CartanDatum::type_a(n - 1),
                    support: grassmannian_support(m, n, total).unwrap(),
                });
            }
        }
    }
    out
}

/// sl_4 Grassmannian supports with `m <= 2`, `N <= 4`: the smallest ones with non-adjacent
/// vertices and with three distinct vertices.
pub fn rank_three_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for m in 1..=2 {
        for total in 0..=(4 * m).min(4) {
            out.push(Case {
                label: format!("Gr(m={m}, n=4, N={total})"),
                datum: CartanDatum::type_a(3),
                support: grassmannian_support(m, 4, total).unwrap(),
            });
        }
    }
    out
}

/// Whether every weight the word passes through is supported; `E_i^(2)` passes the middle weight.
pub fn passes(letters: &[Letter], lam: &Weight, support: &Support) -> bool {
    let mut w = lam.clone();
    if !support.contains(&w) {
        return false;
    }
    for &l in letters.iter().rev() {
        let (i, s, times) = match l {
            E(i) => (i, 1, 1),
            F(i) => (i, -1, 1),
            Ed2(i) => (i, 1, 2),
        };
        for _ in 0..times {
            w = w.shifted(i, s);
            if !support.contains(&w) {
                return false;
            }
        }
    }
    true
}

struct Ctx<'a> {
    case: &'a Case,
    engine: HomEngine<'a>,
}

impl Ctx<'_> {
    /// Checks `dim Hom(src, tgt<d>)` is 0 for `d < t` and `at_t` at `d = t`.
    fn profile(&self, report: &mut Report, name: &str, lam: &Weight, src: &[Letter], tgt: &[Letter], t: i64, at_t: i64) {
        let s = MorphWord::new(src.to_vec(), lam.clone());
        let g = MorphWord::new(tgt.to_vec(), lam.clone());
        let where_ = || format!("{name} {}: {src:?} -> {tgt:?} at {:?}", self.case.label, lam.pairings(&self.case.datum));
        let divided = src.iter().chain(tgt).any(|l| matches!(l, Ed2(_)));
        let table = if divided {
            self.engine.hom_dim_divided(&s, &g, Some((t - DEPTH, t)))
        } else {
            self.engine.hom_dim(&s, &g, Some((t - DEPTH, t)))
        };
        let table = match table {
            Ok(t) => t,
            Err(e) => {
                report.fail(format!("{}: {e}", where_()));
                return;
            }
        };
        for d in t - DEPTH..t {
            report.expect(table.get(d) == DimValue::Exactly(0), || format!("{} degree {d}: {:?}, want 0", where_(), table.get(d)));
        }
        report.expect(table.get(t) == DimValue::Exactly(at_t), || format!("{} degree {t}: {:?}, want {at_t}", where_(), table.get(t)));
    }

    fn value(&self, lam: &Weight, src: &[Letter], tgt: &[Letter], d: i64) -> Option<i64> {
        let s = MorphWord::new(src.to_vec(), lam.clone());
        let g = MorphWord::new(tgt.to_vec(), lam.clone());
        self.engine.hom_dim_divided(&s, &g, Some((d, d))).ok()?.get(d).exact()
    }
}

fn b(x: bool) -> i64 {
    x as i64
}

fn vertex_pairs(datum: &CartanDatum, adjacent: bool) -> Vec<(usize, usize)> {
    let n = datum.vertex_count();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && (datum.pair(i, j) == -1) == adjacent)
        .collect()
}

/// Endomorphisms of `E_i`, `E_i E_i`, `E_i E_i E_i`; the two `E_i E_j` tables for adjacent and
/// distant pairs; the `F E` / `E F` tables; and the two three-vertex tables.
pub fn check_e_words(case: &Case, report: &mut Report) {
    let ctx = Ctx { case, engine: HomEngine::new(&case.datum, &case.support) };
    let d = &case.datum;
    let s = &case.support;
    let n = d.vertex_count();
    for lam in s.weights() {
        let nz = |w: &[Letter]| passes(w, &lam, s);
        for i in 0..n {
            ctx.profile(report, "End(E)", &lam, &[E(i)], &[E(i)], 0, b(nz(&[E(i)])));

            let ee = [E(i), E(i)];
            match ctx.value(&lam, &ee, &ee, -2) {
                Some(v) => report.expect(v == b(nz(&ee)), || format!("End^-2(EE) {} i={i} at {:?}: {v}", case.label, lam.pairings(d))),
                None => report.fail(format!("End^-2(EE) {} i={i}: not determined", case.label)),
            }
            let eee = [E(i), E(i), E(i)];
            match ctx.value(&lam, &eee, &eee, -6) {
                Some(v) => report.expect(v == b(nz(&eee)), || format!("End^-6(EEE) {} i={i} at {:?}: {v}", case.label, lam.pairings(d))),
                None => report.fail(format!("End^-6(EEE) {} i={i}: not determined", case.label)),
            }

            let p = lam.pairing(d, i);
            let ei = b(nz(&[E(i)]));
            let fi = b(nz(&[F(i)]));
            ctx.profile(report, "Hom(FE,1)", &lam, &[F(i), E(i)], &[], p + 1, ei);
            ctx.profile(report, "Hom(1,FE)", &lam, &[], &[F(i), E(i)], p + 1, ei);
            ctx.profile(report, "Hom(EF,1)", &lam, &[E(i), F(i)], &[], -p + 1, fi);
            ctx.profile(report, "Hom(1,EF)", &lam, &[], &[E(i), F(i)], -p + 1, fi);
        }
        for (i, j) in vertex_pairs(d, true).into_iter().chain(vertex_pairs(d, false)) {
            let (ij, ji) = ([E(i), E(j)], [E(j), E(i)]);
            let t = -d.pair(i, j);
            ctx.profile(report, "Hom(EiEj,EjEi)", &lam, &ij, &ji, t, b(nz(&ij) && nz(&ji)));
            ctx.profile(report, "End(EiEj)", &lam, &ij, &ij, 0, b(nz(&ij)));

            let fe = [F(j), E(i)];
            ctx.profile(report, "Hom(FjEi,EiFj)", &lam, &fe, &[E(i), F(j)], 0, b(nz(&fe)));
            ctx.profile(report, "Hom(EiFj,FjEi)", &lam, &[E(i), F(j)], &fe, 0, b(nz(&fe)));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let ell = d.pair(i, j) + d.pair(i, k) + d.pair(j, k);
                    let mut cube = true;
                    let mut cube_f = true;
                    for e in 0..8 {
                        let (a, b_, c) = (e & 1, (e >> 1) & 1, (e >> 2) & 1);
                        cube &= s.contains(&lam.shifted(i, a).shifted(j, b_).shifted(k, c));
                        cube_f &= s.contains(&lam.shifted(i, a).shifted(j, b_).shifted(k, -c));
                    }
                    ctx.profile(report, "Hom(EiEjEk,EkEjEi)", &lam, &[E(i), E(j), E(k)], &[E(k), E(j), E(i)], -ell, b(cube));
                    ctx.profile(
                        report,
                        "Hom(FkEiEj,EjEiFk)",
                        &lam,
                        &[F(k), E(i), E(j)],
                        &[E(j), E(i), F(k)],
                        -d.pair(i, j),
                        b(cube_f),
                    );
                }
            }
        }
    }
}

/// Tables involving `E_i^(2)`, and the bound on `End(E_i E_j E_i)` by its two Serre summands.
pub fn check_divided(case: &Case, report: &mut Report) {
    let ctx = Ctx { case, engine: HomEngine::new(&case.datum, &case.support) };
    let d = &case.datum;
    let s = &case.support;
    for lam in s.weights() {
        let nz = |w: &[Letter]| passes(w, &lam, s);
        for i in 0..d.vertex_count() {
            ctx.profile(report, "End(E^(2))", &lam, &[Ed2(i)], &[Ed2(i)], 0, b(nz(&[Ed2(i)])));
        }
        for (i, j) in vertex_pairs(d, true) {
            let (a, c) = ([E(i), Ed2(j)], [Ed2(j), E(i)]);
            ctx.profile(report, "Hom(EiEj^(2),Ej^(2)Ei)", &lam, &a, &c, 2, b(nz(&a) && nz(&c)));
            ctx.profile(report, "End(Ej^(2)Ei)", &lam, &c, &c, 0, b(nz(&c)));

            let (x, y, z) = ([Ed2(i), E(j)], [E(j), Ed2(i)], [E(i), E(j), E(i)]);
            if nz(&x) && nz(&y) && nz(&z) {
                ctx.profile(report, "Hom(Ei^(2)Ej,EiEjEi)", &lam, &x, &z, 0, 1);
                ctx.profile(report, "Hom(EjEi^(2),EiEjEi)", &lam, &y, &z, 0, 1);
                ctx.profile(report, "Hom(EiEjEi,Ei^(2)Ej)", &lam, &z, &x, 0, 1);
                ctx.profile(report, "Hom(EiEjEi,EjEi^(2))", &lam, &z, &y, 0, 1);
            }

            let values = (ctx.value(&lam, &z, &z, 0), ctx.value(&lam, &x, &x, 0), ctx.value(&lam, &y, &y, 0));
            let where_ = format!("End(EiEjEi) bound {} ({i},{j}) at {:?}", case.label, lam.pairings(d));
            match values {
                (Some(whole), Some(p), Some(q)) => report.expect(whole <= p + q, || format!("{where_}: {whole} > {p} + {q}")),
                other => report.fail(format!("{where_}: not determined {other:?}")),
            }
        }
    }
}
