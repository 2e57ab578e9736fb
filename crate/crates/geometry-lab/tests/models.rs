use geometry_lab::*;
use nalgebra::DMatrix;
use num_complex::Complex64;

const TOL: f64 = 1e-10;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn quadrature_volume_is_one() {
    for m in [&Cp1 as &dyn Model, &Torus] {
        for p in [1, 7, 40] {
            let total: f64 = m.quadrature(m.default_order(p)).iter().map(|(_, w)| w).sum();
            assert!(close(total, 1.0, 1e-12), "{} p={p}: {total}", m.name());
        }
    }
}

#[test]
fn cp1_gram_at_level_two() {
    let g = gram(&Cp1, 2, Cp1.default_order(2));
    let expect = [1.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0];
    for i in 0..3 {
        for j in 0..3 {
            let e = if i == j { expect[i] } else { 0.0 };
            assert!((g[(i, j)] - Complex64::new(e, 0.0)).norm() < 1e-14, "({i},{j}) = {}", g[(i, j)]);
        }
    }
}

#[test]
fn cp1_gram_matches_beta_integrals() {
    // j!(p−j)!/(p+1)! by direct factorials
    let fact = |n: usize| (1..=n).map(|k| k as f64).product::<f64>();
    for p in [3, 9, 15] {
        let g = gram(&Cp1, p, Cp1.default_order(p));
        for j in 0..=p {
            let e = fact(j) * fact(p - j) / fact(p + 1);
            assert!(((g[(j, j)].re - e) / e).abs() < 1e-12, "p={p} j={j}");
        }
    }
}

#[test]
fn torus_gram_is_scalar() {
    for p in [1, 4, 11] {
        let g = gram(&Torus, p, Torus.default_order(p));
        let c = g[(0, 0)].re;
        assert!(close(c, (2.0 * p as f64).sqrt().recip(), 1e-13));
        let dev = (&g - DMatrix::from_diagonal_element(p, p, Complex64::new(c, 0.0))).camax();
        assert!(dev < 1e-13, "p={p}: {dev}");
    }
}

#[test]
fn orthonormal_basis_has_identity_gram() {
    for m in [&Cp1 as &dyn Model, &Torus] {
        let s = BergmanSpace::new(m, 6).unwrap();
        let a = orthonormal_basis(m, 6).unwrap();
        let g = &a * &s.gram * a.adjoint();
        assert!((g - DMatrix::identity(s.dim(), s.dim())).camax() < 1e-12);
        let t = s.toeplitz(&Observable::constant("one", 1.0, m.name() == "cp1"));
        assert!((t.matrix - DMatrix::identity(s.dim(), s.dim())).camax() < 1e-12);
    }
}

#[test]
fn coarse_quadrature_is_rejected_with_suggestion() {
    match BergmanSpace::with_order(&Cp1, 20, 6) {
        Err(LabError::QuadratureResolution { p, suggested, .. }) => {
            assert_eq!(p, 20);
            assert_eq!(suggested, Cp1.default_order(20));
        }
        other => panic!("expected a resolution error, got {:?}", other.map(|s| s.p)),
    }
}

#[test]
fn cp1_density_including_level_zero() {
    let pts = Cp1.sample_points();
    for p in 0..=20 {
        let s = BergmanSpace::new(&Cp1, p).unwrap();
        for x in &pts {
            assert!(close(s.density(*x), (p + 1) as f64, TOL));
            assert!(close(s.density_closed_form(*x), (p + 1) as f64, TOL));
        }
    }
}

#[test]
fn torus_density_matches_theta_oracle() {
    let pts = Torus.sample_points();
    for p in 1..=24 {
        let s = BergmanSpace::new(&Torus, p).unwrap();
        for x in &pts {
            assert!(close(s.density(*x), Torus.density_oracle(p, *x), TOL), "p={p}");
            if p >= Torus.asymptotic_floor() {
                assert!(close(s.density(*x), p as f64, TOL), "p={p}");
            }
        }
    }
    // one section with a zero: the density is far from constant
    let s = BergmanSpace::new(&Torus, 1).unwrap();
    assert!((s.density(Point::new(0.0, 0.0)) - s.density(Point::new(0.5, 0.5))).abs() > 0.5);
}

#[test]
fn density_is_invariant_under_chart_change() {
    let s = BergmanSpace::new(&Cp1, 9).unwrap();
    let pts = Cp1.sample_points();
    let on = |vals: Vec<Complex64>| &s.coeffs * nalgebra::DVector::from_vec(vals);
    for x in &pts {
        let (a, b) = (on(Cp1::frame_values_first_chart(9, *x)), on(Cp1::frame_values_second_chart(9, *x)));
        assert!(close(a.norm_squared(), b.norm_squared(), TOL));
        for y in &pts {
            let (c, d) = (on(Cp1::frame_values_first_chart(9, *y)), on(Cp1::frame_values_second_chart(9, *y)));
            let k1 = a.dotc(&c).norm_sqr();
            let k2 = b.dotc(&d).norm_sqr();
            assert!(close(k1, k2, TOL));
        }
    }
}

#[test]
fn kernel_modulus_is_bounded_by_densities() {
    let s = BergmanSpace::new(&Torus, 7).unwrap();
    let pts = Torus.sample_points();
    for x in &pts {
        for y in &pts {
            let k = s.kernel(*x, *y).norm_sqr();
            assert!(k <= s.density(*x) * s.density(*y) + 1e-9);
        }
    }
}

#[test]
fn height_toeplitz_spectrum() {
    for p in [1, 2, 5, 12, 20] {
        let s = BergmanSpace::new(&Cp1, p).unwrap();
        let t = s.toeplitz_checked(&Observable::height()).unwrap();
        let pf = p as f64;
        let mut expect: Vec<f64> = (0..=p).map(|j| (pf - 2.0 * j as f64) / (pf + 2.0)).collect();
        expect.sort_by(f64::total_cmp);
        for (a, b) in eigenvalues(&t).iter().zip(&expect) {
            assert!(close(*a, *b, TOL));
        }
        assert!(close(operator_norm(&t), pf / (pf + 2.0), TOL));
        // diagonal in the monomial basis
        for i in 0..=p {
            for j in 0..=p {
                if i != j {
                    assert!(t.matrix[(i, j)].norm() < TOL);
                }
            }
        }
    }
}

#[test]
fn constant_observable_norm() {
    for m in [&Cp1 as &dyn Model, &Torus] {
        let s = BergmanSpace::new(m, 5).unwrap();
        let t = s.toeplitz(&Observable::constant("c", -2.5, m.name() == "cp1"));
        assert!(close(operator_norm(&t), 2.5, 1e-12));
    }
}

#[test]
fn toeplitz_norms_are_bounded_and_hermitian() {
    for m in [&Cp1 as &dyn Model, &Torus] {
        for p in [3, 17, 40] {
            let s = BergmanSpace::new(m, p).unwrap();
            for f in m.observables() {
                let t = s.toeplitz_checked(&f).unwrap();
                assert!(hermitian_deviation(&t) <= 1e-12);
                assert!(operator_norm(&t) <= f.sup_norm() + 1e-8, "{} {} p={p}", m.name(), f.name);
            }
        }
    }
}

#[test]
fn self_commutator_vanishes() {
    let s = BergmanSpace::new(&Torus, 9).unwrap();
    let f = Observable::cos_x();
    assert!(s.commutator_defect(&f, &f).unwrap() < 1e-12);
    // mismatched observables are rejected
    assert!(s.commutator_defect(&f, &Observable::height()).is_err());
}

#[test]
fn torus_q_of_one_is_density_over_p() {
    for p in [4, 20] {
        let s = BergmanSpace::new(&Torus, p).unwrap();
        let one = Observable::constant("one", 1.0, false);
        let x = Point::new(0.3, 0.6);
        assert!(close(s.q_apply(&one, x).re, s.density(x) / p as f64, 1e-12));
    }
    let s = BergmanSpace::new(&Torus, 20).unwrap();
    assert!(close(s.q_apply(&Observable::constant("one", 1.0, false), Point::new(0.3, 0.6)).re, 1.0, 1e-10));
}

#[test]
fn toeplitz_diagonal_equals_q_times_p() {
    let s = BergmanSpace::new(&Cp1, 8).unwrap();
    let f = Observable::sphere("mix", 0.5, [0.3, -0.4, 0.2]);
    let x = Cp1.sample_points()[2];
    let diag = s.kernel_diag(&s.toeplitz(&f).matrix, x);
    assert!((diag - s.q_apply(&f, x) * 8.0).norm() < 1e-11);
    // product with the identity reduces to the diagonal
    let one = Observable::constant("one", 1.0, true);
    assert!((s.product_diag(&f, &one, x) - diag).norm() < 1e-11);
}

#[test]
fn riemann_roch_examples() {
    assert_eq!(Cp1.dim(3), 4);
    assert!(close(3.0 * Cp1.volume() + Cp1.euler_number() / 2.0, 4.0, 1e-12));
    assert!(close(Cp1.euler_number(), 2.0, 1e-12));
    assert_eq!(Torus.dim(5), 5);
    assert!(close(5.0 * Torus.volume() + Torus.euler_number() / 2.0, 5.0, 1e-12));
    assert_eq!(Cp1.dim(1) + Torus.dim(1), 3);
}

#[test]
fn model_lookup() {
    assert_eq!(by_name("cp1").unwrap().name(), "cp1");
    assert_eq!(by_name("torus").unwrap().name(), "torus");
    assert!(by_name("k3").is_none());
    assert!(check_ids(None).len() > check_ids(Some("cp1")).len());
}

#[test]
fn unknown_numeric_check_is_rejected() {
    let err = run_checks(&Cp1, &NumericConfig::default(), &["torus-density".into()]).unwrap_err();
    assert!(matches!(err, LabError::WrongModel(_)));
}

#[test]
fn sequential_and_parallel_agree_bitwise() {
    let cfg = NumericConfig { pmin: 2, pmax: 9, order: None };
    let ids = vec!["cp1-density".to_string(), "cp1-gram".to_string()];
    geometry_lab::par::set_parallel(false);
    let a = run_checks(&Cp1, &cfg, &ids).unwrap();
    geometry_lab::par::set_parallel(true);
    let b = run_checks(&Cp1, &cfg, &ids).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.rows, y.rows);
        assert_eq!(x.residue, y.residue);
    }
}
