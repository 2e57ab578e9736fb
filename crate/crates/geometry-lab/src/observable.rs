//! Analytic observables. On CP¹ they are affine functions of the embedding
//! coordinates of the unit sphere; on the torus, trigonometric polynomials.
//! Both families are closed under Δ and under the Poisson bracket of 2πω.

use crate::model::Point;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// c₀ + c·X on the sphere X = (sinθ cosφ, sinθ sinφ, cosθ)
    Sphere { c0: f64, c: [f64; 3] },
    /// Σ c_k e^{2πi(k₁x + k₂y)}
    Trig(Vec<((i32, i32), Complex64)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    pub name: String,
    pub shape: Shape,
}

/// Laplacian eigenvalue of the coordinate functions on the area-one sphere.
pub const SPHERE_LAPLACE: f64 = 8.0 * PI;

impl Observable {
    pub fn sphere(name: &str, c0: f64, c: [f64; 3]) -> Self {
        Observable { name: name.into(), shape: Shape::Sphere { c0, c } }
    }

    pub fn trig(name: &str, modes: &[((i32, i32), Complex64)]) -> Self {
        let mut o = Observable { name: name.into(), shape: Shape::Trig(modes.to_vec()) };
        o.normalize();
        o
    }

    pub fn constant(name: &str, c: f64, on_sphere: bool) -> Self {
        if on_sphere {
            Self::sphere(name, c, [0.0; 3])
        } else {
            Self::trig(name, &[((0, 0), Complex64::new(c, 0.0))])
        }
    }

    pub fn height() -> Self {
        Self::sphere("height", 0.0, [0.0, 0.0, 1.0])
    }

    pub fn cos_x() -> Self {
        Self::trig("cos2pix", &[((1, 0), Complex64::new(0.5, 0.0)), ((-1, 0), Complex64::new(0.5, 0.0))])
    }

    pub fn cos_y() -> Self {
        Self::trig("cos2piy", &[((0, 1), Complex64::new(0.5, 0.0)), ((0, -1), Complex64::new(0.5, 0.0))])
    }

    pub fn sin_x() -> Self {
        Self::trig("sin2pix", &[((1, 0), Complex64::new(0.0, -0.5)), ((-1, 0), Complex64::new(0.0, 0.5))])
    }

    pub fn cos_xy() -> Self {
        Self::trig("cos2pi(x+y)", &[((1, 1), Complex64::new(0.5, 0.0)), ((-1, -1), Complex64::new(0.5, 0.0))])
    }

    pub fn mode(m: i32, n: i32) -> Self {
        Self::trig(&format!("e({m},{n})"), &[((m, n), Complex64::new(1.0, 0.0))])
    }

    fn normalize(&mut self) {
        if let Shape::Trig(modes) = &mut self.shape {
            modes.sort_by_key(|(k, _)| *k);
            let mut out: Vec<((i32, i32), Complex64)> = Vec::new();
            for (k, c) in modes.drain(..) {
                match out.last_mut() {
                    Some((k0, c0)) if *k0 == k => *c0 += c,
                    _ => out.push((k, c)),
                }
            }
            out.retain(|(_, c)| c.norm() > 1e-15);
            *modes = out;
        }
    }

    pub fn on_sphere(&self) -> bool {
        matches!(self.shape, Shape::Sphere { .. })
    }

    pub fn value(&self, pt: Point) -> Complex64 {
        match &self.shape {
            Shape::Sphere { c0, c } => {
                let x = pt.sphere();
                Complex64::new(c0 + c[0] * x[0] + c[1] * x[1] + c[2] * x[2], 0.0)
            }
            Shape::Trig(modes) => modes
                .iter()
                .map(|((a, b), c)| c * Complex64::from_polar(1.0, 2.0 * PI * (*a as f64 * pt.a + *b as f64 * pt.b)))
                .sum(),
        }
    }

    /// Δf with the positive Laplacian of the model metric.
    pub fn laplacian(&self) -> Observable {
        let shape = match &self.shape {
            Shape::Sphere { c, .. } => Shape::Sphere { c0: 0.0, c: c.map(|x| SPHERE_LAPLACE * x) },
            Shape::Trig(modes) => Shape::Trig(
                modes.iter().map(|((a, b), c)| ((*a, *b), c * 4.0 * PI * PI * ((a * a + b * b) as f64))).collect(),
            ),
        };
        let mut o = Observable { name: format!("lap({})", self.name), shape };
        o.normalize();
        o
    }

    /// Poisson bracket for 2πω.
    pub fn bracket(&self, other: &Observable) -> Option<Observable> {
        let shape = match (&self.shape, &other.shape) {
            (Shape::Sphere { c: a, .. }, Shape::Sphere { c: b, .. }) => {
                let cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
                Shape::Sphere { c0: 0.0, c: cross.map(|x| -2.0 * x) }
            }
            (Shape::Trig(f), Shape::Trig(g)) => {
                let mut modes = Vec::new();
                for ((k1, k2), cf) in f {
                    for ((l1, l2), cg) in g {
                        let w = 2.0 * PI * ((k1 * l2 - k2 * l1) as f64);
                        modes.push(((k1 + l1, k2 + l2), cf * cg * w));
                    }
                }
                Shape::Trig(modes)
            }
            _ => return None,
        };
        let mut o = Observable { name: format!("{{{},{}}}", self.name, other.name), shape };
        o.normalize();
        Some(o)
    }

    /// ⟨df, dg⟩ at a point for the model metric.
    pub fn grad_pairing(&self, other: &Observable, pt: Point) -> Option<Complex64> {
        match (&self.shape, &other.shape) {
            (Shape::Sphere { c: a, .. }, Shape::Sphere { c: b, .. }) => {
                // area one: the sphere has radius² = 1/4π
                let x = pt.sphere();
                let dot = |u: &[f64; 3], v: &[f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
                Some(Complex64::new(4.0 * PI * (dot(a, b) - dot(a, &x) * dot(b, &x)), 0.0))
            }
            (Shape::Trig(f), Shape::Trig(g)) => {
                let mut acc = Complex64::default();
                for ((k1, k2), cf) in f {
                    for ((l1, l2), cg) in g {
                        let phase = Complex64::from_polar(1.0, 2.0 * PI * ((k1 + l1) as f64 * pt.a + (k2 + l2) as f64 * pt.b));
                        acc -= cf * cg * phase * (4.0 * PI * PI * (k1 * l1 + k2 * l2) as f64);
                    }
                }
                Some(acc)
            }
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        match &self.shape {
            Shape::Sphere { .. } => true,
            Shape::Trig(modes) => modes.iter().all(|((a, b), c)| {
                let partner = modes.iter().find(|(k, _)| *k == (-a, -b)).map(|(_, c)| *c).unwrap_or_default();
                (partner - c.conj()).norm() < 1e-14
            }),
        }
    }

    /// An upper bound for sup|f| that is exact for the catalogue entries.
    pub fn sup_norm(&self) -> f64 {
        match &self.shape {
            Shape::Sphere { c0, c } => c0.abs() + (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt(),
            Shape::Trig(modes) => modes.iter().map(|(_, c)| c.norm()).sum(),
        }
    }
}
