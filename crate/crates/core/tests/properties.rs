mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use weitzenbock::poly::{integer, rational};
use weitzenbock::sl2::{e_eigenvalue, is_semi_invariant, order_of};
use weitzenbock::symbolic::BracketExpr;
use weitzenbock::transfer::{lambda_map, lambda_tilde, symbolize};
use weitzenbock::transvect::{convolve, convolve_expanded, semi_transvectant};
use weitzenbock::{LetterContext, Monomial, Polynomial};

fn poly_in(sig: &'static [u16]) -> impl Strategy<Value = Polynomial> {
    let c = ctx(sig);
    let vars: Vec<_> = c.letters().flat_map(|l| l.vars()).collect();
    let n = vars.len();
    prop::collection::vec((prop::collection::vec((0..n, 1u32..=2), 0..3), -6i64..=6, 1i64..=3), 0..5).prop_map(
        move |terms| {
            Polynomial::from_terms(terms.into_iter().map(|(m, num, den)| {
                (Monomial::from_pairs(m.into_iter().map(|(i, e)| (vars[i], e))), rational(num, den))
            }))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(f in poly_in(&[2, 3]), g in poly_in(&[2, 3]), h in poly_in(&[2, 3])) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Polynomial::one(), f.clone());
    }

    #[test]
    fn text_round_trip(f in poly_in(&[2, 3, 1])) {
        let c = ctx(&[2, 3, 1]);
        prop_assert_eq!(Polynomial::parse(&f.to_string(), &c).unwrap(), f);
    }

    #[test]
    fn json_round_trip(f in poly_in(&[4])) {
        let c = ctx(&[4]);
        prop_assert_eq!(Polynomial::from_json_str(&f.to_json_string(), &c).unwrap(), f);
    }

    #[test]
    fn partial_is_a_derivation(f in poly_in(&[3]), g in poly_in(&[3]), i in 0u16..=3) {
        let v = ctx(&[3]).romans()[0].var(i);
        prop_assert_eq!((&f * &g).partial(v), &f.partial(v) * &g + &f * &g.partial(v));
    }

    #[test]
    fn primitive_is_a_scalar_multiple(f in poly_in(&[2, 2])) {
        prop_assume!(!f.is_zero());
        let (q, k) = f.primitive();
        prop_assert_eq!(f.scale(&k), q.clone());
        prop_assert!(q.terms().all(|(_, c)| c.is_integer()));
        prop_assert!(q.leading_term().unwrap().1 > &integer(0));
    }

    #[test]
    fn bracket_text_round_trip(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let m = random_bracket_monomial(n, &mut r, 3, 2);
        let e = BracketExpr::monomial(rational(seed as i64 % 7, 3), m);
        prop_assert_eq!(BracketExpr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn bracket_monomials_are_semi_invariants(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let m = random_bracket_monomial(n, &mut r, 3, 2);
        let p = m.expand();
        prop_assert!(is_semi_invariant(&p));
        prop_assert_eq!(order_of(&p).unwrap(), m.order());
        prop_assert_eq!(e_eigenvalue(&p).unwrap(), m.order() as i64);
    }

    #[test]
    fn convolution_matches_expanded_on_linear_monomials(a in 1u32..=3, bb in 1u32..=3, c in 0u32..=2) {
        let s = symbols(3);
        let e = BracketExpr::linear(s[0], a).mul(&BracketExpr::linear(s[1], bb)).mul(&BracketExpr::linear(s[2], c));
        let direct = convolve(&e, s[0], s[1]).unwrap().expand();
        prop_assert_eq!(convolve_expanded(&e.expand(), s[0], s[1]).unwrap(), direct);
    }

    #[test]
    fn transvectant_is_graded_antisymmetric(seed in any::<u64>()) {
        let pool = SemiInvariantPool::new(&[3], 4);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let f = pool.sample(&mut r, 1);
        let g = pool.sample(&mut r, 2);
        let top = order_of(&f).unwrap().min(order_of(&g).unwrap());
        for k in 0..=top {
            let sign = if k % 2 == 0 { integer(1) } else { integer(-1) };
            prop_assert_eq!(
                semi_transvectant(&f, &g, k).unwrap(),
                semi_transvectant(&g, &f, k).unwrap().scale(&sign)
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symbolize_inverts_lambda(seed in any::<u64>()) {
        let pool = SemiInvariantPool::new(&[2, 3], 3);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let f = pool.sample(&mut r, 1);
        let s = symbolize(&f, &pool.ctx).unwrap();
        prop_assert_eq!(lambda_map(&s.expr.expand(), &s.assignment).unwrap(), f);
    }

    #[test]
    fn lambda_undoes_lambda_tilde_on_multilinear(seed in any::<u64>()) {
        let c = ctx(&[2, 3, 1]);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let romans = c.romans().to_vec();
        let mut f = Polynomial::zero();
        for _ in 0..4 {
            use rand::Rng;
            let m = Monomial::from_pairs(romans.iter().map(|l| (l.var(r.gen_range(0..=l.size())), 1)));
            f += Polynomial::term(integer(r.gen_range(-3..=3)), m);
        }
        prop_assume!(!f.is_zero());
        let (image, assignment) = lambda_tilde(&f).unwrap();
        prop_assert_eq!(lambda_map(&image, &assignment).unwrap(), f);
    }
}

#[test]
fn symbolic_context_round_trip() {
    let c = LetterContext::symbolic(3).unwrap();
    let f = p("a0*b1 - a1*b0", &c);
    assert_eq!(f, b("[a,b]").expand());
}
