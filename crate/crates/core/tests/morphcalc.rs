use kmact_core::cartan::grassmannian_support;
use kmact_core::morphcalc::{
    decompose, is_nonzero, serre_rewrite, sort_class, sort_class_with, verify_serre, GradedClass, HomEngine,
    Letter::{self, E, Ed2, F},
    MorphError, MorphWord, Orientation, SortOptions, Strategy,
};
use kmact_core::qgrade::qint;
use kmact_core::{CartanDatum, DimValue, LaurentInt, Support, Weight};

fn sl2() -> (CartanDatum, Support) {
    (CartanDatum::type_a(1), Support::new(vec![-2], vec![vec![0], vec![1], vec![2]]).unwrap())
}

/// The sl_2 weight with pairing `p` in the support {-2, 0, 2}.
fn at(p: i64) -> Weight {
    Weight::new(vec![-2], vec![(p + 2) / 2]).unwrap()
}

fn word(letters: &[Letter], domain: Weight) -> MorphWord {
    MorphWord::new(letters.to_vec(), domain)
}

fn no_drop() -> SortOptions {
    SortOptions { drop_unsupported: false, ..SortOptions::default() }
}

fn exact(v: i64) -> DimValue {
    DimValue::Exactly(v)
}

#[test]
fn weight_after_examples() {
    let l = at(0);
    assert_eq!(word(&[E(0)], l.clone()).weight_after(), at(2));
    assert_eq!(word(&[F(0), E(0)], l.clone()).weight_after(), l);
    assert_eq!(word(&[Ed2(0)], at(-2)).weight_after(), at(2));
}

#[test]
fn sort_class_examples() {
    let (datum, support) = sl2();
    let big = Support::new(vec![-2], (-3..=4).map(|a| vec![a])).unwrap();
    for (p, s) in [(2, &big), (0, &support), (-2, &big)] {
        let w = word(&[E(0), F(0)], at(p));
        let sorted = sort_class(&GradedClass::from_word(&w), &datum, s, no_drop()).unwrap();
        assert_eq!(sorted.coeff(&[F(0), E(0)]), LaurentInt::one());
        assert_eq!(sorted.coeff(&[]), qint(p));
        assert_eq!(sorted.len(), if p == 0 { 1 } else { 2 });
    }
}

#[test]
fn sorted_words_have_f_left_of_e() {
    let datum = CartanDatum::type_a(2);
    let support = grassmannian_support(2, 3, 3).unwrap();
    let dom = support.weights().nth(3).unwrap();
    let w = word(&[E(0), F(1), E(1), F(0), F(0), E(0)], dom);
    let sorted = sort_class(&GradedClass::from_word(&w), &datum, &support, no_drop()).unwrap();
    for (letters, _) in sorted.terms() {
        let first_e = letters.iter().position(|l| matches!(l, E(_))).unwrap_or(letters.len());
        assert!(letters[first_e..].iter().all(|l| matches!(l, E(_))), "{letters:?}");
    }
    for (mw, _) in sorted.words() {
        assert_eq!(mw.weight_after(), w.weight_after());
        assert_eq!(mw.domain, w.domain);
    }
}

#[test]
fn e_left_orientation_mirrors_the_rule() {
    let (datum, _) = sl2();
    let big = Support::new(vec![-2], (-3..=4).map(|a| vec![a])).unwrap();
    let w = word(&[F(0), E(0)], at(2));
    let opts = SortOptions { drop_unsupported: false, orientation: Orientation::ELeft, ..SortOptions::default() };
    let sorted = sort_class(&GradedClass::from_word(&w), &datum, &big, opts).unwrap();
    assert_eq!(sorted.coeff(&[E(0), F(0)]), LaurentInt::one());
    assert_eq!(sorted.coeff(&[]), -qint(2));
}

#[test]
fn decompose_examples() {
    let (datum, support) = sl2();
    // F E 1_2 passes through the unsupported weight 4, so only [2] 1_2 survives.
    let c = decompose(&word(&[E(0), F(0)], at(2)), &datum, &support).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c.coeff(&[]), qint(2));

    let c = decompose(&word(&[E(0), E(0)], at(-2)), &datum, &support).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c.coeff(&[E(0), E(0)]), LaurentInt::one());

    assert!(decompose(&word(&[F(0), E(0)], at(2)), &datum, &support).unwrap().is_zero());
    assert!(decompose(&word(&[E(0)], Weight::new(vec![-2], vec![5]).unwrap()), &datum, &support).unwrap().is_zero());
}

#[test]
fn divided_powers_sort_only_up_to_a_factor_of_two() {
    let (datum, support) = sl2();
    let c = GradedClass::from_word(&word(&[F(0), Ed2(0)], at(-2)));
    // F E^(2) alone has no integral sorted form in E and F.
    assert_eq!(sort_class(&c, &datum, &support, SortOptions::default()), Err(MorphError::NonDivisible));
    let doubled = sort_class(&c.scale(&qint(2)), &datum, &support, SortOptions::default()).unwrap();
    let expanded = GradedClass::from_word(&word(&[F(0), E(0), E(0)], at(-2)));
    assert_eq!(doubled, expanded);

    let c = GradedClass::from_word(&word(&[Ed2(0), F(0), F(0)], at(2))).scale(&qint(2));
    let direct = sort_class(&GradedClass::from_word(&word(&[E(0), E(0), F(0), F(0)], at(2))), &datum, &support, no_drop())
        .unwrap();
    assert_eq!(sort_class(&c, &datum, &support, no_drop()).unwrap(), direct);
}

#[test]
fn odd_multiples_of_divided_powers_are_not_divisible() {
    let (datum, support) = sl2();
    let mut c = GradedClass::from_word(&word(&[Ed2(0)], at(-2)));
    c.add(vec![E(0), E(0)], &LaurentInt::one());
    assert_eq!(sort_class(&c, &datum, &support, SortOptions::default()), Err(MorphError::NonDivisible));
}

#[test]
fn serre_examples() {
    let datum = CartanDatum::type_a(2);
    let dom = Weight::new(vec![0, 0], vec![0, 0]).unwrap();
    let w = word(&[E(0), E(1), E(0)], dom.clone());
    let c = serre_rewrite(&w, &datum).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(c.coeff(&[Ed2(0), E(1)]), LaurentInt::one());
    assert_eq!(c.coeff(&[E(1), Ed2(0)]), LaurentInt::one());
    assert!(verify_serre(&w, &datum).unwrap());

    let a3 = CartanDatum::type_a(3);
    let w = word(&[E(0), E(2), E(0)], Weight::new(vec![0, 0, 0], vec![0, 0, 0]).unwrap());
    assert_eq!(serre_rewrite(&w, &a3), Err(MorphError::NotAdjacent(0, 2)));
}

#[test]
fn serre_check_holds_at_many_weights_and_in_context() {
    let datum = CartanDatum::type_a(2);
    for a in -3..=3 {
        for b in -3..=3 {
            let dom = Weight::new(vec![a, b], vec![0, 0]).unwrap();
            for letters in [
                vec![E(0), E(1), E(0)],
                vec![E(1), E(0), E(1)],
                vec![F(1), E(0), E(1), E(0), F(0)],
            ] {
                assert!(verify_serre(&word(&letters, dom.clone()), &datum).unwrap(), "{letters:?} at ({a},{b})");
            }
        }
    }
}

#[test]
fn serre_check_detects_a_wrong_rewrite() {
    // The pairing used by the check separates E_i E_j E_i from a single summand.
    let datum = CartanDatum::type_a(2);
    let filter = Support::new(vec![0, 0], vec![vec![0, 0]]).unwrap();
    let mut separated = false;
    for a in -2..=2 {
        for b in -2..=2 {
            let dom = Weight::new(vec![a, b], vec![0, 0]).unwrap();
            let lhs = GradedClass::from_word(&word(&[E(0), E(1), E(0)], dom.clone())).scale(&qint(2));
            let rhs = GradedClass::from_word(&word(&[Ed2(0), E(1)], dom.clone())).scale(&qint(2));
            let start = Weight::new(vec![a, b], vec![2, 1]).unwrap();
            for g in [[F(0), F(0), F(1)], [F(0), F(1), F(0)], [F(1), F(0), F(0)]] {
                let pair = |x: &GradedClass| {
                    let mut xg = GradedClass::zero(start.clone(), start.clone());
                    for (w, c) in x.terms() {
                        let mut full = w.to_vec();
                        full.extend(g);
                        xg.add(full, c);
                    }
                    sort_class(&xg, &datum, &filter, no_drop()).unwrap().coeff(&[])
                };
                separated |= pair(&lhs) != pair(&rhs);
            }
        }
    }
    assert!(separated);
}

#[test]
fn confluence_under_every_redex_choice() {
    let (datum, support) = sl2();
    let w = word(&[E(0), F(0), E(0), F(0), F(0), E(0)], at(0));
    let c = GradedClass::from_word(&w);
    let left = sort_class_with(&c, &datum, &support, SortOptions::default(), &mut |_, r| r[0]).unwrap();
    let right = sort_class_with(&c, &datum, &support, SortOptions::default(), &mut |_, r| *r.last().unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn hom_dim_sl2_examples() {
    let (datum, support) = sl2();
    let engine = HomEngine::new(&datum, &support);
    let e = word(&[E(0)], at(-2));
    let t = engine.end_dim(&e, Some((-4, 0))).unwrap();
    for d in -4..0 {
        assert_eq!(t.get(d), exact(0), "degree {d}");
    }
    assert_eq!(t.get(0), exact(1));

    let ee = word(&[E(0), E(0)], at(-2));
    let t = engine.end_dim(&ee, None).unwrap();
    assert_eq!(t.get(-2), exact(1));
    assert_eq!(t.get(-3), exact(0));
}

#[test]
fn hom_dim_of_swapped_raising_pair() {
    let datum = CartanDatum::type_a(2);
    let support = grassmannian_support(2, 3, 2).unwrap();
    let lam = support.find_by_pairings(&datum, &[0, -1]).unwrap();
    let engine = HomEngine::new(&datum, &support);
    let src = word(&[E(0), E(1)], lam.clone());
    let tgt = word(&[E(1), E(0)], lam);
    let t = engine.hom_dim(&src, &tgt, Some((-6, 1))).unwrap();
    for d in -6..1 {
        assert_eq!(t.get(d), exact(0), "degree {d}");
    }
    assert_eq!(t.get(1), exact(1));
}

#[test]
fn hom_dim_settles_leftover_base_terms_across_routes() {
    // Each sorted expansion alone leaves End^1(1_mu) terms at two different weights here.
    let datum = CartanDatum::type_a(2);
    let support = grassmannian_support(3, 3, 3).unwrap();
    let lam = support.find_by_pairings(&datum, &[1, -2]).unwrap();
    let src = word(&[E(0), E(1)], lam.clone());
    let tgt = word(&[E(1), E(0)], lam.clone());
    for strategy in [Strategy::Ascending, Strategy::Descending, Strategy::Combined] {
        let engine = HomEngine::new(&datum, &support).with_strategy(strategy);
        let t = engine.hom_dim(&src, &tgt, Some((-6, 1))).unwrap();
        for d in -6..1 {
            assert_eq!(t.get(d), exact(0), "{strategy:?} degree {d}");
        }
        assert_eq!(t.get(1), exact(1), "{strategy:?}");
        let t = engine.end_dim(&src, Some((-6, 0))).unwrap();
        assert_eq!(t.get(-1), exact(0), "{strategy:?}");
        assert_eq!(t.get(0), exact(1), "{strategy:?}");
    }
}

#[test]
fn positive_degree_endomorphisms_of_the_identity_stay_unknown() {
    let datum = CartanDatum::type_a(2);
    let support = grassmannian_support(3, 3, 3).unwrap();
    let lam = support.find_by_pairings(&datum, &[1, -2]).unwrap();
    let engine = HomEngine::new(&datum, &support);
    engine.hom_dim(&word(&[E(0), E(1)], lam.clone()), &word(&[E(1), E(0)], lam.clone()), Some((-6, 1))).unwrap();
    let one = word(&[], lam);
    let t = engine.end_dim(&one, Some((-2, 3))).unwrap();
    assert_eq!(t.get(-1), exact(0));
    assert_eq!(t.get(0), exact(1));
    for d in 1..=3 {
        assert_eq!(t.get(d), DimValue::Unknown, "degree {d}");
    }
}

#[test]
fn hom_dim_mismatched_endpoints_is_zero() {
    let (datum, support) = sl2();
    let engine = HomEngine::new(&datum, &support);
    let t = engine.hom_dim(&word(&[E(0)], at(-2)), &word(&[], at(-2)), Some((-2, 2))).unwrap();
    assert!(t.iter().all(|(_, v)| v == exact(0)));
}

#[test]
fn strategies_agree_where_both_are_exact() {
    let (datum, support) = sl2();
    let asc = HomEngine::new(&datum, &support).with_strategy(Strategy::Ascending);
    let desc = HomEngine::new(&datum, &support).with_strategy(Strategy::Descending);
    let w = word(&[E(0), F(0)], at(0));
    let a = asc.end_dim(&w, None).unwrap();
    let b = desc.end_dim(&w, None).unwrap();
    for (d, v) in a.iter() {
        if let (DimValue::Exactly(x), DimValue::Exactly(y)) = (v, b.get(d)) {
            assert_eq!(x, y, "degree {d}");
        }
    }
}

#[test]
fn hom_dim_divided_example() {
    let (datum, support) = sl2();
    let engine = HomEngine::new(&datum, &support);
    let w = word(&[Ed2(0)], at(-2));
    let t = engine.hom_dim_divided(&w, &w, Some((-6, 0))).unwrap();
    for d in -6..0 {
        assert_eq!(t.get(d), exact(0), "degree {d}");
    }
    assert_eq!(t.get(0), exact(1));
}

#[test]
fn is_nonzero_examples() {
    let datum = CartanDatum::type_a(2);
    let support = grassmannian_support(2, 3, 2).unwrap();
    for lam in support.weights() {
        for i in 0..2 {
            let up = lam.shifted(i, 1);
            assert_eq!(is_nonzero(&word(&[E(i)], lam.clone()), &datum, &support), support.contains(&up));
            let j = 1 - i;
            assert_eq!(
                is_nonzero(&word(&[E(j), E(i)], lam.clone()), &datum, &support),
                support.contains(&up) && support.contains(&up.shifted(j, 1))
            );
            // E_i 1_mu F_j at domain mu + alpha_j.
            let dom = lam.shifted(j, 1);
            let four = [lam.clone(), lam.shifted(i, 1), lam.shifted(j, 1), lam.shifted(i, 1).shifted(j, 1)];
            assert_eq!(is_nonzero(&word(&[E(i), F(j)], dom), &datum, &support), four.iter().all(|w| support.contains(w)));
        }
    }
}
