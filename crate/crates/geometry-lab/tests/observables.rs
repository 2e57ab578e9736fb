use geometry_lab::{Model, Observable, Point, Torus};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn trig() -> impl Strategy<Value = Observable> {
    prop::collection::vec(((-2i32..=2, -2i32..=2), (-1.0f64..1.0, -1.0f64..1.0)), 1..4).prop_map(|m| {
        let modes: Vec<_> = m.into_iter().map(|(k, (a, b))| (k, Complex64::new(a, b))).collect();
        Observable::trig("t", &modes)
    })
}

fn sphere() -> impl Strategy<Value = Observable> {
    (-1.0f64..1.0, prop::array::uniform3(-1.0f64..1.0)).prop_map(|(c0, c)| Observable::sphere("s", c0, c))
}

fn point() -> impl Strategy<Value = Point> {
    (0.0f64..1.0, 0.0f64..1.0).prop_map(|(a, b)| Point::new(a, b))
}

fn numeric_grad(f: &Observable, x: Point) -> (Complex64, Complex64) {
    let h = 1e-5;
    let dx = (f.value(Point::new(x.a + h, x.b)) - f.value(Point::new(x.a - h, x.b))) / (2.0 * h);
    let dy = (f.value(Point::new(x.a, x.b + h)) - f.value(Point::new(x.a, x.b - h))) / (2.0 * h);
    (dx, dy)
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric(f in trig(), g in trig(), x in point()) {
        let a = f.bracket(&g).unwrap().value(x);
        let b = g.bracket(&f).unwrap().value(x);
        prop_assert!((a + b).norm() < 1e-9);
    }

    #[test]
    fn torus_bracket_from_derivatives(f in trig(), g in trig(), x in point()) {
        // {f, g} = (∂_y f ∂_x g − ∂_x f ∂_y g)/2π
        let (fx, fy) = numeric_grad(&f, x);
        let (gx, gy) = numeric_grad(&g, x);
        let expect = (fy * gx - fx * gy) / (2.0 * PI);
        prop_assert!((f.bracket(&g).unwrap().value(x) - expect).norm() < 1e-4 * (1.0 + expect.norm()));
        let pairing = fx * gx + fy * gy;
        prop_assert!((f.grad_pairing(&g, x).unwrap() - pairing).norm() < 1e-4 * (1.0 + pairing.norm()));
    }

    #[test]
    fn torus_laplacian_by_differences(f in trig(), x in point()) {
        let h = 1e-4;
        let v = |a: f64, b: f64| f.value(Point::new(x.a + a, x.b + b));
        let lap = -(v(h, 0.0) + v(-h, 0.0) + v(0.0, h) + v(0.0, -h) - v(0.0, 0.0) * 4.0) / (h * h);
        let got = f.laplacian().value(x);
        prop_assert!((got - lap).norm() < 1e-3 * (1.0 + got.norm()));
    }

    #[test]
    fn sphere_bracket_jacobi(f in sphere(), g in sphere(), h in sphere(), t in -0.99f64..0.99, phi in 0.0f64..6.2) {
        let x = Point::new(t, phi);
        let j = f.bracket(&g.bracket(&h).unwrap()).unwrap().value(x)
            + g.bracket(&h.bracket(&f).unwrap()).unwrap().value(x)
            + h.bracket(&f.bracket(&g).unwrap()).unwrap().value(x);
        prop_assert!(j.norm() < 1e-12);
    }

    #[test]
    fn sup_norm_bounds_values(f in trig(), x in point()) {
        prop_assert!(f.value(x).norm() <= f.sup_norm() + 1e-12);
    }
}

#[test]
fn catalogue_is_real_and_closed() {
    for f in Torus.observables() {
        assert!(f.is_real());
        for g in Torus.observables() {
            assert!(f.bracket(&g).unwrap().is_real());
        }
    }
    assert!(!Observable::mode(1, 0).is_real());
    assert!(Observable::height().bracket(&Observable::cos_x()).is_none());
}

#[test]
fn sphere_coordinate_brackets() {
    let x1 = Observable::sphere("x1", 0.0, [1.0, 0.0, 0.0]);
    let x2 = Observable::sphere("x2", 0.0, [0.0, 1.0, 0.0]);
    let b = x1.bracket(&x2).unwrap();
    assert_eq!(b, Observable::sphere("{x1,x2}", 0.0, [0.0, 0.0, -2.0]));
    let x = Point::new(0.3, 1.1);
    assert!((x1.laplacian().value(x) - x1.value(x) * 8.0 * PI).norm() < 1e-12);
}
