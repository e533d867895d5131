mod common;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use wgb_core::algebra::{diamond_mul, star_mul, tail, Monomial};
use wgb_core::engine::{Completion, GammaChoice, Mode, Side, Status};
use wgb_core::freering::{NcPoly, Term};
use wgb_core::oracle::{oracle_member, OracleAnswer};
use wgb_core::presentation::Presentation;

fn pick(i: usize) -> &'static Presentation {
    let pool = saturated_pool();
    &pool[i % pool.len()]
}

fn random_monomial<R: rand::Rng>(rng: &mut R, p: &Presentation, deg: usize) -> Monomial {
    let letters: Vec<_> = p.letters().collect();
    Monomial::new(random_coeff(rng), Term::ring(random_word(rng, &letters, deg)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_is_associative(i in 0usize..5, seed in any::<u64>()) {
        let p = pick(i);
        let mut rng = seeded(seed);
        let (f, g, h) = (random_poly(&mut rng, p, 2, 3), random_poly(&mut rng, p, 2, 3), random_poly(&mut rng, p, 2, 3));
        let left = star_mul(p, &star_mul(p, &f, &g).unwrap(), &h).unwrap();
        let right = star_mul(p, &f, &star_mul(p, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn diamond_turns_right_terms_into_a_left_action(i in 0usize..5, seed in any::<u64>()) {
        let p = pick(i);
        let mut rng = seeded(seed);
        let coeff: Vec<_> = p.alphabet.v_letters().collect();
        let graded: Vec<_> = p.alphabet.big_letters().collect();
        let a = NcPoly::monomial(random_coeff(&mut rng), Term::ring(random_word(&mut rng, &coeff, 2)));
        let rho = random_word(&mut rng, &graded, 2);
        let f = random_canonical(&mut rng, p, 2, 3);
        let lhs = diamond_mul(p, &a.mul_words(&[], &rho), &f).unwrap();
        let rhs = star_mul(p, &a, &star_mul(p, &f, &NcPoly::term(Term::ring(rho))).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tails_lie_strictly_below_the_free_product(i in 0usize..5, seed in any::<u64>()) {
        let p = pick(i);
        let mut rng = seeded(seed);
        let (l, g, r) = (random_monomial(&mut rng, p, 2), random_monomial(&mut rng, p, 2), random_monomial(&mut rng, p, 2));
        let top = Term::ring([l.term.word.as_slice(), &g.term.word, &r.term.word].concat());
        for (t, _) in tail(p, &l, &g, &r).unwrap().iter() {
            prop_assert_eq!(p.order.compare(t, &top), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn order_is_multiplicative(i in 0usize..5, seed in any::<u64>()) {
        let p = pick(i);
        let mut rng = seeded(seed);
        let letters: Vec<_> = p.letters().collect();
        let (a, b) = (random_word(&mut rng, &letters, 3), random_word(&mut rng, &letters, 3));
        let (u, v) = (random_word(&mut rng, &letters, 2), random_word(&mut rng, &letters, 2));
        let base = p.order.compare(&Term::ring(a.clone()), &Term::ring(b.clone()));
        let ctx = |w: &[_]| Term::ring([u.as_slice(), w, &v].concat());
        prop_assert_eq!(p.order.compare(&ctx(&a), &ctx(&b)), base);
    }

    #[test]
    fn canonical_rep_is_an_idempotent_morphism(i in 0usize..5, seed in any::<u64>()) {
        let p = pick(i);
        let mut rng = seeded(seed);
        let (f, g) = (random_poly(&mut rng, p, 3, 4), random_poly(&mut rng, p, 3, 4));
        let cf = p.canonical_rep(&f).unwrap();
        let cg = p.canonical_rep(&g).unwrap();
        prop_assert_eq!(p.canonical_rep(&cf).unwrap(), cf.clone());
        prop_assert_eq!(p.canonical_rep(&f.add(&p.order, &g)).unwrap(), cf.add(&p.order, &cg));
        prop_assert_eq!(
            p.canonical_rep(&f.mul(&p.order, &g).unwrap()).unwrap(),
            p.canonical_rep(&cf.mul(&p.order, &cg).unwrap()).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn completed_bases_are_sound_and_reduce_themselves(i in 0usize..5, seed in any::<u64>()) {
        let p = pick(i);
        let mut rng = seeded(seed);
        let n = rand::Rng::gen_range(&mut rng, 1..=2);
        let gens: Vec<NcPoly> = (0..n).map(|_| random_canonical(&mut rng, p, 2, 2)).filter(|f| !f.is_zero()).collect();
        let side = *[Side::Restricted, Side::Bilateral].choose(&mut rng).unwrap();
        let mut c = Completion::new(p, &gens, side, GammaChoice::Auto, 4).unwrap();
        let status = c.run().unwrap();
        let r = c.result().unwrap();
        prop_assert!(r.stats.gm_size <= r.stats.naive_pairs);
        let set = c.basis_set(&r.basis);
        for g in &r.basis {
            prop_assert!(set.normal_form(g, Mode::Weak, side).unwrap().nf.is_zero());
            // Reductions may pass through multiples above the pair bound.
            if g.max_degree() <= 4 {
                prop_assert_eq!(oracle_member(p, g, &gens, side, 6).unwrap(), OracleAnswer::Yes, "{}", p.fmt(g));
            }
        }
        for s in set.spairs_restricted().unwrap() {
            prop_assert!(set.is_homogeneous(&s));
        }
        if status == Status::Complete && side == Side::Restricted {
            for l in c.liftings().unwrap() {
                prop_assert!(c.check_lift(&l).unwrap());
            }
        }
    }
}
