//! The two homogeneous models, both normalized to volume one.

use crate::observable::Observable;
use gauss_quad::GaussLegendre;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Model coordinates: (cosθ, φ) on CP¹, (x, y) ∈ [0,1)² on the torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub a: f64,
    pub b: f64,
}

impl Point {
    pub fn new(a: f64, b: f64) -> Self {
        Point { a, b }
    }

    /// Embedding in the unit sphere for CP¹ coordinates.
    pub fn sphere(self) -> [f64; 3] {
        let s = (1.0 - self.a * self.a).max(0.0).sqrt();
        [s * self.b.cos(), s * self.b.sin(), self.a]
    }
}

pub trait Model: Sync + Send {
    fn name(&self) -> &'static str;
    /// Complex dimension.
    fn n(&self) -> usize {
        1
    }
    fn dim(&self, p: usize) -> usize;
    fn volume(&self) -> f64 {
        1.0
    }
    /// Basis section j in the model's local holomorphic frame.
    fn section_eval(&self, p: usize, j: usize, pt: Point) -> Complex64;
    /// Pointwise h^{L^p}-norm² of the local frame.
    fn weight(&self, p: usize, pt: Point) -> f64;
    /// Basis sections in a unitary frame: section_eval · weight^{1/2}, computed stably.
    fn frame_values(&self, p: usize, pt: Point) -> Vec<Complex64> {
        let w = self.weight(p, pt).sqrt();
        (0..self.dim(p)).map(|j| self.section_eval(p, j, pt) * w).collect()
    }
    /// Default quadrature order at level p.
    fn default_order(&self, p: usize) -> usize;
    /// Nodes and weights for ∫ · dv_X.
    fn quadrature(&self, order: usize) -> Vec<(Point, f64)>;
    fn scalar_curvature(&self, pt: Point) -> f64;
    /// Closed-form Gram matrix of the basis, when known.
    fn exact_gram(&self, p: usize) -> DMatrix<Complex64>;
    /// Catalogue of observables with analytic Δ and brackets.
    fn observables(&self) -> Vec<Observable>;
    /// Points at which pointwise quantities are sampled.
    fn sample_points(&self) -> Vec<Point>;
    /// Independent oracle for the Bergman density.
    fn density_oracle(&self, p: usize, pt: Point) -> f64;
    /// Smallest level at which the density equals its asymptotic expansion to
    /// within 1e−10 (exponentially small corrections excluded).
    fn asymptotic_floor(&self) -> usize {
        1
    }
    /// ∫_X c₁(X) from the scalar curvature (c₁ = br/4π · ω on a curve).
    fn euler_number(&self) -> f64 {
        let q = self.quadrature(64);
        q.iter().map(|(pt, w)| w * self.scalar_curvature(*pt)).sum::<f64>() / (4.0 * PI)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Cp1;

#[derive(Clone, Copy, Debug, Default)]
pub struct Torus;

fn factorial_ratio(j: usize, p: usize) -> f64 {
    // j!(p−j)!/(p+1)! = 1/((p+1) C(p,j))
    let mut binom = 1.0f64;
    for i in 0..j {
        binom = binom * (p - i) as f64 / (i + 1) as f64;
    }
    1.0 / ((p + 1) as f64 * binom)
}

impl Cp1 {
    /// Chart coordinate z = tan(θ/2) e^{iφ}.
    pub fn z(pt: Point) -> Complex64 {
        let r = ((1.0 - pt.a) / (1.0 + pt.a)).sqrt();
        Complex64::from_polar(r, pt.b)
    }

    /// Frame values computed in the chart w = 1/z, where z^j reads w^{p−j}
    /// in the frame e_w = z^p e_z.
    pub fn frame_values_second_chart(p: usize, pt: Point) -> Vec<Complex64> {
        let w = Complex64::new(1.0, 0.0) / Self::z(pt);
        let h = (1.0 + w.norm_sqr()).powf(-(p as f64) / 2.0);
        (0..=p).map(|j| w.powu((p - j) as u32) * h).collect()
    }

    /// Frame values computed literally in the chart z.
    pub fn frame_values_first_chart(p: usize, pt: Point) -> Vec<Complex64> {
        let z = Self::z(pt);
        let h = (1.0 + z.norm_sqr()).powf(-(p as f64) / 2.0);
        (0..=p).map(|j| z.powu(j as u32) * h).collect()
    }
}

impl Model for Cp1 {
    fn name(&self) -> &'static str {
        "cp1"
    }

    fn dim(&self, p: usize) -> usize {
        p + 1
    }

    fn section_eval(&self, _p: usize, j: usize, pt: Point) -> Complex64 {
        Self::z(pt).powu(j as u32)
    }

    fn weight(&self, p: usize, pt: Point) -> f64 {
        (1.0 + Self::z(pt).norm_sqr()).powi(-(p as i32))
    }

    fn frame_values(&self, p: usize, pt: Point) -> Vec<Complex64> {
        // sin^j(θ/2) cos^{p−j}(θ/2) e^{ijφ}, finite at both poles
        let s = ((1.0 - pt.a) / 2.0).max(0.0).sqrt();
        let c = ((1.0 + pt.a) / 2.0).max(0.0).sqrt();
        (0..=p).map(|j| Complex64::from_polar(s.powi(j as i32) * c.powi((p - j) as i32), j as f64 * pt.b)).collect()
    }

    fn default_order(&self, p: usize) -> usize {
        2 * p + 16
    }

    fn quadrature(&self, order: usize) -> Vec<(Point, f64)> {
        let gl = GaussLegendre::new(order.try_into().expect("order ≥ 1"));
        let nphi = order;
        let dphi = 2.0 * PI / nphi as f64;
        let mut out = Vec::with_capacity(order * nphi);
        for (t, wt) in gl.iter() {
            for k in 0..nphi {
                out.push((Point::new(*t, k as f64 * dphi), wt * dphi / (4.0 * PI)));
            }
        }
        out
    }

    fn scalar_curvature(&self, _pt: Point) -> f64 {
        8.0 * PI
    }

    fn density_oracle(&self, p: usize, _pt: Point) -> f64 {
        (p + 1) as f64
    }

    fn exact_gram(&self, p: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(p + 1, p + 1, |i, j| {
            if i == j {
                Complex64::new(factorial_ratio(j, p), 0.0)
            } else {
                Complex64::default()
            }
        })
    }

    fn observables(&self) -> Vec<Observable> {
        vec![
            Observable::constant("one", 1.0, true),
            Observable::sphere("x1", 0.0, [1.0, 0.0, 0.0]),
            Observable::sphere("x2", 0.0, [0.0, 1.0, 0.0]),
            Observable::height(),
            Observable::sphere("mix", 0.5, [0.3, -0.4, 0.2]),
        ]
    }

    fn sample_points(&self) -> Vec<Point> {
        vec![Point::new(0.9, 0.3), Point::new(0.2, 1.7), Point::new(-0.5, 4.0), Point::new(-0.95, 5.5)]
    }
}

/// Theta-function sum Σ_n exp(−πp(n + j/p + y)²) e^{2πi(pn + j)x}.
fn theta_frame(p: usize, j: usize, x: f64, y: f64) -> Complex64 {
    let pf = p as f64;
    let shift = j as f64 / pf + y;
    let reach = (40.0 / (PI * pf)).sqrt() + 1.0;
    let lo = (-shift - reach).floor() as i64;
    let hi = (-shift + reach).ceil() as i64;
    let mut acc = Complex64::default();
    for n in lo..=hi {
        let t = n as f64 + shift;
        let freq = (p as i64 * n + j as i64) as f64;
        acc += Complex64::from_polar((-PI * pf * t * t).exp(), 2.0 * PI * freq * x);
    }
    acc
}

impl Model for Torus {
    fn name(&self) -> &'static str {
        "torus"
    }

    fn dim(&self, p: usize) -> usize {
        p
    }

    /// θ_j(z) = Σ_n exp(−πp(n + j/p)² + 2πi p(n + j/p) z), z = x + iy.
    fn section_eval(&self, p: usize, j: usize, pt: Point) -> Complex64 {
        let w = self.weight(p, pt).sqrt();
        theta_frame(p, j, pt.a, pt.b) / w
    }

    fn weight(&self, p: usize, pt: Point) -> f64 {
        (-2.0 * PI * p as f64 * pt.b * pt.b).exp()
    }

    fn frame_values(&self, p: usize, pt: Point) -> Vec<Complex64> {
        (0..p).map(|j| theta_frame(p, j, pt.a, pt.b)).collect()
    }

    fn default_order(&self, p: usize) -> usize {
        4 * p + 16
    }

    fn quadrature(&self, order: usize) -> Vec<(Point, f64)> {
        let h = 1.0 / order as f64;
        let w = h * h;
        let mut out = Vec::with_capacity(order * order);
        for i in 0..order {
            for k in 0..order {
                out.push((Point::new(i as f64 * h, k as f64 * h), w));
            }
        }
        out
    }

    fn scalar_curvature(&self, _pt: Point) -> f64 {
        0.0
    }

    /// Poisson-summed theta norms: p Σ_{a,b} (−1)^{pab} e^{−πp(a²+b²)/2} e^{2πip(ax+by)}.
    fn density_oracle(&self, p: usize, pt: Point) -> f64 {
        let pf = p as f64;
        let reach = (60.0 / (PI * pf)).sqrt().ceil() as i64 + 1;
        let mut acc = 0.0;
        for a in -reach..=reach {
            for b in -reach..=reach {
                let sign = if (p as i64 * a * b).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let decay = (-PI * pf * (a * a + b * b) as f64 / 2.0).exp();
                acc += sign * decay * (2.0 * PI * pf * (a as f64 * pt.a + b as f64 * pt.b)).cos();
            }
        }
        pf * acc
    }

    /// 4p e^{−πp/2} < 1e−10 from here on.
    fn asymptotic_floor(&self) -> usize {
        18
    }

    fn exact_gram(&self, p: usize) -> DMatrix<Complex64> {
        DMatrix::from_diagonal_element(p, p, Complex64::new((2.0 * p as f64).sqrt().recip(), 0.0))
    }

    fn observables(&self) -> Vec<Observable> {
        vec![
            Observable::constant("one", 1.0, false),
            Observable::cos_x(),
            Observable::cos_y(),
            Observable::sin_x(),
            Observable::cos_xy(),
        ]
    }

    fn sample_points(&self) -> Vec<Point> {
        vec![Point::new(0.0, 0.0), Point::new(0.1, 0.2), Point::new(0.37, 0.71), Point::new(0.8, 0.45)]
    }
}

pub fn by_name(name: &str) -> Option<Box<dyn Model>> {
    match name {
        "cp1" => Some(Box::new(Cp1)),
        "torus" => Some(Box::new(Torus)),
        _ => None,
    }
}
