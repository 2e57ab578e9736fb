mod common;

use common::{random_kernel, random_operator};
use model_calculus::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn parity(k: &Kernel) -> Option<usize> {
    let mut it = k.0.iter().map(|(m, _)| m.vars.len() % 2);
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

#[test]
fn wick_and_fock_composition_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..200 {
        let a = random_kernel(&mut rng, 4, 2);
        let b = random_kernel(&mut rng, 4, 2);
        assert_eq!(compose(&a, &b), compose_fock(&a, &b), "pair {i}: {a} ∘ {b}");
    }
}

#[test]
fn origin_composition_matches_full_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..100 {
        let a = random_kernel(&mut rng, 4, 3);
        let b = random_kernel(&mut rng, 4, 3);
        assert_eq!(compose_at_origin(&a, &b), eval_origin(&compose(&a, &b)), "{a} ∘ {b}");
    }
}

#[test]
fn composition_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..25 {
        let a = random_kernel(&mut rng, 2, 2);
        let b = random_kernel(&mut rng, 2, 2);
        let c = random_kernel(&mut rng, 2, 2);
        assert_eq!(compose(&compose(&a, &b), &c), compose(&a, &compose(&b, &c)));
    }
}

#[test]
fn composition_respects_parity() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut seen = 0;
    for _ in 0..100 {
        let a = random_kernel(&mut rng, 3, 2);
        let b = random_kernel(&mut rng, 3, 2);
        let (Some(pa), Some(pb)) = (parity(&a), parity(&b)) else { continue };
        let c = compose(&a, &b);
        if c.is_zero() {
            continue;
        }
        assert_eq!(parity(&c), Some((pa + pb) % 2));
        seen += 1;
    }
    assert!(seen > 10);
}

#[test]
fn projector_composition_and_projection() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..50 {
        let k = random_kernel(&mut rng, 3, 3);
        assert_eq!(compose(&Kernel::projector(), &k), project(&k));
        assert_eq!(project(&project(&k)), project(&k));
        assert_eq!(project(&k).add(&project_perp(&k)), k);
    }
}

#[test]
fn resolvent_inverts_laplacian_off_the_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let l = OperatorExpr::laplacian();
    for _ in 0..50 {
        let k = random_kernel(&mut rng, 3, 3);
        assert_eq!(apply_to_p(&l, &inv_l_perp(&k)), project_perp(&k));
        assert!(project(&inv_l_perp(&k)).is_zero());
    }
}

#[test]
fn adjoint_reverses_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..50 {
        let a = random_kernel(&mut rng, 3, 2);
        let b = random_kernel(&mut rng, 3, 2);
        assert_eq!(adjoint(&compose(&a, &b)), compose(&adjoint(&b), &adjoint(&a)));
    }
}

#[test]
fn operator_action_is_a_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for _ in 0..40 {
        let x = random_operator(&mut rng, 2, 2);
        let y = random_operator(&mut rng, 2, 2);
        let k = random_kernel(&mut rng, 2, 2);
        let lhs = apply_to_p(&x.compose(&y), &k);
        let rhs = apply_to_p(&x, &apply_to_p(&y, &k));
        assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_kernel(&mut rng, 4, 4);
        prop_assert_eq!(adjoint(&adjoint(&k)), k);
    }

    #[test]
    fn operator_adjoint_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = normal_order(&random_operator(&mut rng, 3, 3));
        prop_assert_eq!(e.adjoint().adjoint(), e);
    }

    #[test]
    fn fock_form_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_kernel(&mut rng, 3, 3);
        prop_assert_eq!(fock_form(&k).to_kernel(), k);
    }
}
