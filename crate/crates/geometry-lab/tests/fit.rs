use geometry_lab::{fit, fitted_exponent, loglog_slope, LabError};
use proptest::prelude::*;

#[test]
fn recovers_exact_two_term_input() {
    let samples: Vec<(usize, f64)> = (5..=30).map(|p| (p, 2.0 - 3.0 / p as f64)).collect();
    let f = fit(&samples, 0, 2).unwrap();
    assert!((f.a(0) - 2.0).abs() < 1e-10);
    assert!((f.a(1) + 3.0).abs() < 1e-10);
    assert!(f.a(2).abs() < 1e-10);
    assert!(f.condition.is_finite() && f.condition > 1.0);
}

#[test]
fn leading_power_is_divided_out() {
    let samples: Vec<(usize, f64)> = (4..=20).map(|p| (p, (p + 1) as f64)).collect();
    let f = fit(&samples, 1, 2).unwrap();
    assert!((f.a(0) - 1.0).abs() < 1e-10 && (f.a(1) - 1.0).abs() < 1e-10);
}

#[test]
fn too_few_levels_is_rank_deficient() {
    let samples = vec![(10, 1.0), (10, 1.1), (12, 1.2)];
    match fit(&samples, 0, 2) {
        Err(e @ LabError::RankDeficient { pmin: 10, pmax: 12, .. }) => {
            assert!(e.to_string().contains("[10, 12]"), "{e}");
            assert!(e.to_string().contains("condition"), "{e}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn slopes_of_pure_powers() {
    let samples: Vec<(usize, f64)> = (8..=40).map(|p| (p, 3.0 / p as f64)).collect();
    assert!((loglog_slope(&samples) + 1.0).abs() < 1e-12);
    assert!((fitted_exponent(&samples) + 1.0).abs() < 1e-9);
    // a 1/p correction biases the plain slope but not the fitted exponent
    let biased: Vec<(usize, f64)> = (8..=40).map(|p| (p, 4.0 * p as f64 / ((p + 2) * (p + 2)) as f64)).collect();
    assert!(loglog_slope(&biased) > -0.81);
    assert!((fitted_exponent(&biased) + 1.0).abs() < 0.05);
}

proptest! {
    #[test]
    fn refit_of_model_predictions(a in prop::array::uniform3(-5.0f64..5.0), n in -1i32..=1, lo in 2usize..10) {
        let samples: Vec<(usize, f64)> = (lo..lo + 20)
            .map(|p| {
                let x = 1.0 / p as f64;
                (p, (p as f64).powi(n) * (a[0] + a[1] * x + a[2] * x * x))
            })
            .collect();
        let f = fit(&samples, n, 2).unwrap();
        for (r, ar) in a.iter().enumerate() {
            prop_assert!((f.a(r) - ar).abs() <= 1e-10 * (1.0 + ar.abs()), "a{} = {} vs {}", r, f.a(r), ar);
        }
        // feeding the fitted model back in reproduces the coefficients
        let again: Vec<(usize, f64)> = samples
            .iter()
            .map(|(p, _)| {
                let x = 1.0 / *p as f64;
                (*p, (*p as f64).powi(n) * (f.a(0) + f.a(1) * x + f.a(2) * x * x))
            })
            .collect();
        let g = fit(&again, n, 2).unwrap();
        for r in 0..3 {
            prop_assert!((g.a(r) - f.a(r)).abs() <= 1e-10 * (1.0 + f.a(r).abs()));
        }
    }
}
