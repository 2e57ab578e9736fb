mod common;

use common::{random_mono, random_poly, scramble};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensor_algebra::{canonical_term, fr, p, AlgebraError, Factor, Mono, Poly};

#[test]
fn lemma_symmetry_of_curvature_slots() {
    let a = Mono::from_factors(vec![Factor::r(fr("l"), fr("m"), fr("k"), fr("q"))]);
    let b = Mono::from_factors(vec![Factor::r(fr("k"), fr("m"), fr("l"), fr("q"))]);
    assert_eq!(canonical_term(&a).unwrap(), b.canonical());
    assert_eq!(b.canonical().factors[0].slots, vec![fr("k"), fr("m"), fr("l"), fr("q")]);
    let c = Mono::from_factors(vec![Factor::r(fr("k"), fr("q"), fr("l"), fr("m"))]);
    assert_eq!(c.canonical(), b.canonical());
}

#[test]
fn dummy_renaming_is_idempotent() {
    let x = p("R(a,m~,b,a~) ric(m,b~)");
    let (mono, _) = x.iter().next().unwrap();
    assert_eq!(mono.canonical(), *mono);
    assert_eq!(mono.canonical().canonical(), mono.canonical());
    assert_eq!(x.to_string(), "R_{kk̄mℓ̄} ric_{ℓm̄}");
}

#[test]
fn scalar_curvature_is_not_rewritten() {
    let a = p("sc");
    let b = p("8 R(m,q~,q,m~)");
    assert_ne!(a, b);
    assert_eq!(b.to_string(), "8 R_{kk̄mm̄}");
}

#[test]
fn malformed_factor_is_reported() {
    let m = Mono::from_factors(vec![Factor::new(tensor_algebra::Kind::R, vec![0, 1, 1])]);
    match canonical_term(&m) {
        Err(AlgebraError::Structural { factor, .. }) => assert!(factor.starts_with("R[")),
        other => panic!("unexpected {other:?}"),
    }
    let bad = Mono::from_factors(vec![Factor::r(0, 0, 1, 2)]);
    assert!(canonical_term(&bad).is_err());
    assert!(tensor_algebra::parse("R(k,m,l~,q~)").is_err());
}

#[test]
fn symmetric_images_cancel() {
    assert!(p("R(k,m~,l,q~) - R(l,m~,k,q~)").is_zero());
    let x = p("pi^-1 ric(k,k~) + pi^-1 ric(m,m~)");
    assert_eq!(x.to_string(), "2 π^-1 ric_{kk̄}");
}

#[test]
fn bracket_collects_to_stated_form() {
    // first line of the displayed computation, term by term
    let raw = p("1/144 10/3 R(m,s~,q,t~) R(s,m~,t,q~) \
        - 1/27 R(s,s~,q,t~) R(m,m~,t,q~) \
        - 1/144 10/3 R(s,s~,t,t~) R(m,m~,q,q~) - 1/12 20/9 R(q,q~,m,m~) R(t,t~,s,s~) + 1/3 R(s,s~,t,t~) R(m,m~,q,q~) \
        - 4/144 E(t,t~) R(m,m~,q,q~) - 1/12 5/3 E(t,t~) R(q,q~,m,m~) + 5/12 E(a,a~) R(m,m~,q,q~) \
        + 4/144 E(q,t~) R(m,m~,t,q~) + 1/12 8/3 E(q,t~) R(t,q~,m,m~) - 10/24 E(q,t~) R(m,m~,t,q~) \
        + 1/8 E(t,t~) E(q,q~) - 1/8 E(q,t~) E(t,q~)");
    let stated = p("5/216 R(m,s~,q,t~) R(s,m~,t,q~) - 1/27 R(s,s~,q,t~) R(m,m~,t,q~) \
        + 1/8 R(s,s~,t,t~) R(m,m~,q,q~) + 1/4 E(t,t~) R(m,m~,q,q~) - 1/6 E(q,t~) R(m,m~,t,q~) \
        + 1/8 E(t,t~) E(q,q~) - 1/8 E(q,t~) E(t,q~)");
    assert_eq!(raw, stated);
    assert_eq!(stated.len(), 7);
}

#[test]
fn random_canonical_invariance_1000_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let m = random_mono(&mut rng, 4);
        m.validate().unwrap();
        let c = m.canonical();
        assert_eq!(c.canonical(), c, "not idempotent for {m:?}");
        let s = scramble(&mut rng, &m);
        s.validate().unwrap();
        assert_eq!(s.canonical(), c, "scramble changed canonical form of {m:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn poly_minus_itself_vanishes(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_poly(&mut rng, n);
        let neg = x.scale(&tensor_algebra::CRat::int(-1));
        prop_assert!((&x + &neg).is_zero());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn multiplication_commutes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_poly(&mut rng, 3);
        let b = random_poly(&mut rng, 3);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn conjugation_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_poly(&mut rng, 4);
        prop_assert_eq!(a.conj_kernel().conj_kernel(), a.clone());
        prop_assert_eq!(a.conj_operator().conj_operator(), a);
    }
}

#[test]
fn product_of_sums() {
    let a = p("R(m,m~,q,q~) + E(q,q~)");
    let sq = &a * &a;
    let expect = p("R(m,m~,q,q~) R(k,k~,l,l~) + 2 E(q,q~) R(k,k~,l,l~) + E(q,q~) E(k,k~)");
    assert_eq!(sq, expect);
    assert_eq!(Poly::one().to_string(), "1");
}
