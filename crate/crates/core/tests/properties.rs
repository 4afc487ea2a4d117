use num_rational::BigRational;
use proptest::prelude::*;

use mzv::genfun::{var, var_sum, Perm3, RatPoly};
use mzv::numerics::{Evaluator, PrecisionContext};
use mzv::regularization::{reg_t, reg_t_lin, words_to_expr};
use mzv::word_algebra::{
    composition_from_word, rat, shuffle, stuffle, word_from_composition, Composition, Letter, LinComb, Word,
};

fn letters(bits: Vec<bool>) -> Vec<Letter> {
    bits.into_iter().map(|b| if b { Letter::X } else { Letter::Y }).collect()
}

/// Words of H^1 (ending in y) with weight at most `max`.
fn h1_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..max).prop_map(|bits| {
        let mut l = letters(bits);
        l.push(Letter::Y);
        Word::new(l)
    })
}

/// Convergent words (x ... y) with weight at most `max`.
fn h0_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..max - 1).prop_map(|bits| {
        let mut l = vec![Letter::X];
        l.extend(letters(bits));
        l.push(Letter::Y);
        Word::new(l)
    })
}

fn composition(max_depth: usize, max_part: u32) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1..=max_part, 1..=max_depth).prop_map(|v| Composition::from_slice(&v))
}

fn lc<B: Ord + Clone>(b: B) -> LinComb<B> {
    LinComb::from_basis(b)
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn rat_poly(max_deg: u32) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), small_rat()), 0..6).prop_map(|terms| {
        let mut p = RatPoly::zero();
        for ((a, b, c), q) in terms {
            p.add_term([a, b, c], &q, &rat(1, 1));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_composition_round_trip(w in h1_word(8)) {
        let c = composition_from_word(&w).unwrap();
        prop_assert_eq!(word_from_composition(&c), w);
    }

    #[test]
    fn shuffle_commutative_associative(u in h1_word(4), v in h1_word(4), w in h1_word(3)) {
        let (u, v, w) = (lc(u), lc(v), lc(w));
        prop_assert_eq!(shuffle(&u, &v), shuffle(&v, &u));
        prop_assert_eq!(shuffle(&shuffle(&u, &v), &w), shuffle(&u, &shuffle(&v, &w)));
    }

    #[test]
    fn stuffle_commutative_associative(a in composition(3, 3), b in composition(2, 3), c in composition(2, 3)) {
        let (a, b, c) = (lc(a), lc(b), lc(c));
        prop_assert_eq!(stuffle(&a, &b), stuffle(&b, &a));
        prop_assert_eq!(stuffle(&stuffle(&a, &b), &c), stuffle(&a, &stuffle(&b, &c)));
    }

    #[test]
    fn reg_t_is_shuffle_homomorphism(u in h1_word(4), v in h1_word(4)) {
        let lhs = reg_t_lin(&shuffle(&lc(u.clone()), &lc(v.clone()))).unwrap();
        let rhs = reg_t(&u).unwrap().shuffle(&reg_t(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reg_t_fixes_convergent_words(w in h0_word(7)) {
        let p = reg_t(&w).unwrap();
        prop_assert_eq!(p.degree(), Some(0));
        prop_assert_eq!(p.coefficient(0), lc(w));
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        p in rat_poly(3),
        pt in prop::array::uniform3(small_rat()),
    ) {
        let forms = [var_sum(&[0, 2]), var(1), var_sum(&[1, 2])];
        let image = [&pt[0] + &pt[2], pt[1].clone(), &pt[1] + &pt[2]];
        prop_assert_eq!(p.substitute(&forms).eval(&pt), p.eval(&image));
    }

    #[test]
    fn divided_difference_is_exact(p in rat_poly(4), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let q = p.divided_difference(i, j).unwrap();
        let mut forms = [var(0), var(1), var(2)];
        forms[i] = var(j);
        let diff = RatPoly::linear(&var(i)).sub(&RatPoly::linear(&var(j)));
        prop_assert_eq!(q.mul(&diff), p.sub(&p.substitute(&forms)));
    }

    #[test]
    fn permutation_action_is_a_group_action(p in rat_poly(3)) {
        for a in Perm3::all() {
            for b in Perm3::all() {
                prop_assert_eq!(p.permute(&a).permute(&b), p.permute(&b.compose(&a)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Shuffle and stuffle products of convergent values agree numerically.
    #[test]
    fn double_shuffle_numerically(u in h0_word(4), v in h0_word(3)) {
        let ev = Evaluator::new(PrecisionContext::new(25));
        let (a, b) = (composition_from_word(&u).unwrap(), composition_from_word(&v).unwrap());
        let sh = words_to_expr(&shuffle(&lc(u), &lc(v))).unwrap();
        let st: LinComb<Word> = stuffle(&lc(a), &lc(b)).map_basis(word_from_composition);
        let st = words_to_expr(&st).unwrap();
        let gap = ev.expr(&sh.sub(&st)).unwrap();
        prop_assert!(gap.abs_upper_f64() < 1e-22);
    }

    #[test]
    fn duality(w in h0_word(7)) {
        let ev = Evaluator::new(PrecisionContext::new(25));
        let a = ev.zeta(&composition_from_word(&w).unwrap()).unwrap();
        let b = ev.zeta(&composition_from_word(&w.dual()).unwrap()).unwrap();
        prop_assert!(a.sub(&b).abs_upper_f64() < 1e-22);
    }
}
