mod common;

use common::{eval_kernel, gauss, random_kernel, random_operator};
use model_calculus::*;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensor_algebra::{p, CRat, Poly};

#[test]
fn normal_order_matches_fock_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..100 {
        let e = random_operator(&mut rng, 4, 3);
        let n = normal_order(&e);
        assert!(n.is_normal());
        let a = fock_oracle(&e, 12).unwrap();
        let b = fock_oracle(&n, 12).unwrap();
        let d = a.rel_diff(&b);
        assert!(d < 1e-10, "{e} vs {n}: {d}");
        checked += 1;
    }
    assert_eq!(checked, 100);
}

#[test]
fn oracle_commutators() {
    let c = fock_oracle(&OperatorExpr(p("[b(i) bp(i)] - [bp(i) b(i)]")), 8).unwrap();
    let expect = fock_oracle(&OperatorExpr(p("-4 pi")), 8).unwrap();
    assert!(c.rel_diff(&expect) < 1e-12);
    let c = normal_order(&OperatorExpr(p("[b(i) bp(j)] - [bp(j) b(i)]")));
    assert_eq!(c.0, p("-4 pi d(i,j~)"));
    let c = normal_order(&OperatorExpr(p("[b(i) z(j)] - [z(j) b(i)]")));
    assert_eq!(c.0, p("-2 d(j,i~)"));
    let c = normal_order(&OperatorExpr(p("[bp(i) zb(j)] - [zb(j) bp(i)]")));
    assert_eq!(c.0, p("2 d(i,j~)"));
}

#[test]
fn oracle_rejects_small_truncation() {
    let e = OperatorExpr(p("[b(i) bp(i) z(j) zb(j)]"));
    assert!(matches!(fock_oracle(&e, 2), Err(OracleError::Truncation { .. })));
}

#[test]
fn laplacian_is_diagonal_on_fock_levels() {
    let l = OperatorExpr::laplacian();
    for (src, level) in [("z(k) z(l)", 0), ("b(q) z(l)", 1), ("b(m) b(q) R(k,m~,l,q~) z(k) z(l)", 2), ("b(a) b(c) b(e)", 3)] {
        let k = FockForm(p(src)).to_kernel();
        let got = apply_to_p(&l, &k);
        let want = k.scale(&CRat::int(4 * level)).0.scale_pi(1);
        assert_eq!(got.0, want, "{src}");
    }
}

fn grid_compose(k1: &Kernel, k2: &Kernel, z: Complex64, zp: Complex64) -> Complex64 {
    let h = 0.04;
    let steps = (12.0 / h) as i32;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..=steps {
        let x = -6.0 + h * i as f64;
        for j in 0..=steps {
            let y = -6.0 + h * j as f64;
            let w = Complex64::new(x, y);
            let v = eval_kernel(k1, z, w) * gauss(z, w) * eval_kernel(k2, w, zp) * gauss(w, zp);
            total += v;
        }
    }
    total * h * h
}

#[test]
fn compose_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts = [(Complex64::new(0.3, -0.2), Complex64::new(-0.1, 0.4)), (Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.1))];
    let mut pairs = vec![(Kernel::projector(), Kernel::projector()), (Kernel(p("zbp(i)")), Kernel(p("z(j)")))];
    for _ in 0..6 {
        pairs.push((random_kernel(&mut rng, 2, 2), random_kernel(&mut rng, 2, 2)));
    }
    for (a, b) in pairs {
        let c = compose(&a, &b);
        for (z, zp) in pts {
            let exact = eval_kernel(&c, z, zp) * gauss(z, zp);
            let num = grid_compose(&a, &b, z, zp);
            let scale = exact.norm().max(1.0);
            assert!((exact - num).norm() / scale < 1e-8, "{a} ∘ {b}: {exact} vs {num}");
        }
    }
}

#[test]
fn projector_is_idempotent_numerically() {
    let pp = grid_compose(&Kernel::projector(), &Kernel::projector(), Complex64::new(0.2, 0.1), Complex64::new(-0.3, 0.0));
    let p0 = gauss(Complex64::new(0.2, 0.1), Complex64::new(-0.3, 0.0));
    assert!((pp - p0).norm() < 1e-10);
    assert_eq!(eval_origin(&Kernel::projector()), Poly::one());
}
