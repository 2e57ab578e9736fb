//! H⁰(X, L^p) with an orthonormal basis obtained from the quadrature Gram
//! matrix, and the Bergman, Toeplitz and Berezin quantities built on it.

use crate::error::LabError;
use crate::model::{Model, Point};
use crate::observable::Observable;
use crate::par;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Tolerance for quadrature and closed-form Gram matrices to agree.
pub const GRAM_TOL: f64 = 1e-10;

pub const HERMITIAN_TOL: f64 = 1e-10;

pub struct BergmanSpace<'m> {
    pub model: &'m dyn Model,
    pub p: usize,
    pub order: usize,
    pub nodes: Vec<(Point, f64)>,
    /// Quadrature Gram matrix, G_{kl} = ∫ v_k v̄_l.
    pub gram: CMatrix,
    /// Lower-triangular A with A G A^H = I; orthonormal sections are u = A v.
    pub coeffs: CMatrix,
    /// Orthonormal frame values at the nodes (rows = nodes).
    u: CMatrix,
}

#[derive(Clone, Debug)]
pub struct ToeplitzData {
    pub p: usize,
    /// T_{ij} = ⟨u_i, f u_j⟩
    pub matrix: CMatrix,
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn gram(model: &dyn Model, p: usize, order: usize) -> CMatrix {
    BergmanSpace::assemble(model, p, order).2
}

impl<'m> BergmanSpace<'m> {
    pub fn new(model: &'m dyn Model, p: usize) -> Result<Self, LabError> {
        Self::with_order(model, p, model.default_order(p))
    }

    fn assemble(model: &dyn Model, p: usize, order: usize) -> (Vec<(Point, f64)>, CMatrix, CMatrix) {
        let nodes = model.quadrature(order);
        let d = model.dim(p);
        let mut raw = CMatrix::zeros(nodes.len(), d);
        for (q, (pt, _)) in nodes.iter().enumerate() {
            for (j, v) in model.frame_values(p, *pt).into_iter().enumerate() {
                raw[(q, j)] = v;
            }
        }
        let g = weighted_gram(&raw, &nodes, |_| Complex64::new(1.0, 0.0));
        (nodes, raw, g)
    }

    /// Builds the space with a given quadrature order; the Gram matrix must
    /// match the closed form and be positive definite.
    pub fn with_order(model: &'m dyn Model, p: usize, order: usize) -> Result<Self, LabError> {
        if p == 0 && model.dim(0) == 0 {
            return Err(LabError::BadLevel(p));
        }
        let (nodes, raw, gram) = Self::assemble(model, p, order);
        let exact = model.exact_gram(p);
        let dev = max_abs(&(&gram - &exact)) / max_abs(&exact);
        if dev > GRAM_TOL {
            let suggested = model.default_order(p);
            return Err(if order < suggested {
                LabError::QuadratureResolution { p, order, suggested }
            } else {
                LabError::GramMismatch { p, deviation: dev }
            });
        }
        let chol = gram.clone().cholesky().ok_or(LabError::QuadratureResolution {
            p,
            order,
            suggested: model.default_order(p),
        })?;
        let coeffs = chol.l().try_inverse().ok_or(LabError::QuadratureResolution {
            p,
            order,
            suggested: model.default_order(p),
        })?;
        let u = &raw * coeffs.transpose();
        Ok(BergmanSpace { model, p, order, nodes, gram, coeffs, u })
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    /// Orthonormal section values at an arbitrary point.
    pub fn orthonormal_at(&self, pt: Point) -> DVector<Complex64> {
        let v = DVector::from_vec(self.model.frame_values(self.p, pt));
        &self.coeffs * v
    }

    /// P_p(x, x) = Σ |u_i(x)|²
    pub fn density(&self, pt: Point) -> f64 {
        self.orthonormal_at(pt).iter().map(|z| z.norm_sqr()).sum()
    }

    /// Density from the closed-form Gram matrix (no quadrature involved).
    pub fn density_closed_form(&self, pt: Point) -> f64 {
        let g = self.model.exact_gram(self.p);
        let v = self.model.frame_values(self.p, pt);
        v.iter().enumerate().map(|(j, z)| z.norm_sqr() / g[(j, j)].re).sum()
    }

    /// P_p(x, y) in the unitary frames at x and y.
    pub fn kernel(&self, x: Point, y: Point) -> Complex64 {
        let (ux, uy) = (self.orthonormal_at(x), self.orthonormal_at(y));
        ux.iter().zip(uy.iter()).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn toeplitz(&self, f: &Observable) -> ToeplitzData {
        let fv: Vec<Complex64> = self.nodes.iter().map(|(pt, _)| f.value(*pt)).collect();
        // W_{ij} = ∫ f u_i ū_j, and T = Wᵀ
        let w = weighted_gram(&self.u, &self.nodes, |q| fv[q]);
        ToeplitzData { p: self.p, matrix: w.transpose() }
    }

    /// Toeplitz matrix of a real observable, rejected if quadrature breaks Hermitian symmetry.
    pub fn toeplitz_checked(&self, f: &Observable) -> Result<ToeplitzData, LabError> {
        let t = self.toeplitz(f);
        let dev = hermitian_deviation(&t);
        if f.is_real() && dev > HERMITIAN_TOL {
            return Err(LabError::NotHermitian { observable: f.name.clone(), p: self.p, deviation: dev });
        }
        Ok(t)
    }

    /// Kernel of an operator on the diagonal: Σ_{ij} M_{ij} u_i(x) ū_j(x).
    pub fn kernel_diag(&self, m: &CMatrix, pt: Point) -> Complex64 {
        let u = self.orthonormal_at(pt);
        let mu = m * u.map(|z| z.conj());
        u.iter().zip(mu.iter()).map(|(a, b)| a * b).sum()
    }

    /// (T_{f,p} ∘ T_{g,p})(x, x)
    pub fn product_diag(&self, f: &Observable, g: &Observable, pt: Point) -> Complex64 {
        let m = &self.toeplitz(f).matrix * &self.toeplitz(g).matrix;
        self.kernel_diag(&m, pt)
    }

    /// (1/p^n) ∫ |P_p(x,y)|² f(y) dv(y)
    pub fn q_apply(&self, f: &Observable, pt: Point) -> Complex64 {
        let ux = self.orthonormal_at(pt);
        let nodes = &self.nodes;
        let u = &self.u;
        let sum = par::chunked_sum(
            nodes.len(),
            |r| {
                let mut acc = Complex64::default();
                for q in r {
                    let k: Complex64 = (0..ux.len()).map(|i| ux[i] * u[(q, i)].conj()).sum();
                    acc += f.value(nodes[q].0) * (k.norm_sqr() * nodes[q].1);
                }
                acc
            },
            |a, b| a + b,
        )
        .unwrap_or_default();
        sum / (self.p as f64).powi(self.model.n() as i32)
    }

    /// ‖(p/√−1)[T_f, T_g] − T_{{f,g}}‖
    pub fn commutator_defect(&self, f: &Observable, g: &Observable) -> Result<f64, LabError> {
        let br = f.bracket(g).ok_or_else(|| LabError::WrongModel(format!("{{{},{}}}", f.name, g.name)))?;
        let (tf, tg, tb) = (self.toeplitz(f).matrix, self.toeplitz(g).matrix, self.toeplitz(&br).matrix);
        let comm = &tf * &tg - &tg * &tf;
        let scale = Complex64::new(0.0, -(self.p as f64));
        let d = comm * scale - tb;
        Ok(operator_norm(&ToeplitzData { p: self.p, matrix: d }))
    }
}

/// Σ_q w_q c_q R_{qi} R̄_{qj} over the rows of R, chunked with ordered reduction.
fn weighted_gram(r: &CMatrix, nodes: &[(Point, f64)], c: impl Fn(usize) -> Complex64 + Sync + Send) -> CMatrix {
    let d = r.ncols();
    par::chunked_sum(
        nodes.len(),
        |range| {
            let rows = r.rows(range.start, range.len());
            let weighted = CMatrix::from_fn(range.len(), d, |q, i| rows[(q, i)] * (c(range.start + q) * nodes[range.start + q].1));
            weighted.transpose() * rows.map(|z| z.conj())
        },
        |a, b| a + b,
    )
    .unwrap_or_else(|| CMatrix::zeros(d, d))
}

/// Hermitian deviation ‖T − T^H‖_max.
pub fn hermitian_deviation(t: &ToeplitzData) -> f64 {
    max_abs(&(&t.matrix - t.matrix.adjoint()))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn eigenvalues(t: &ToeplitzData) -> Vec<f64> {
    let mut e: Vec<f64> = t.matrix.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(|a, b| a.total_cmp(b));
    e
}

/// Spectral norm: largest |eigenvalue| for Hermitian input, largest singular
/// value otherwise.
pub fn operator_norm(t: &ToeplitzData) -> f64 {
    let scale = max_abs(&t.matrix).max(1e-300);
    if hermitian_deviation(t) <= 1e-12 * scale {
        eigenvalues(t).iter().fold(0.0, |m, x| m.max(x.abs()))
    } else {
        t.matrix.clone().singular_values().iter().fold(0.0, |m, x| m.max(*x))
    }
}

pub fn orthonormal_basis(model: &dyn Model, p: usize) -> Result<CMatrix, LabError> {
    Ok(BergmanSpace::new(model, p)?.coeffs)
}
