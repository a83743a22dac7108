//! Numerical ranges of 3x3 matrices.
//!
//! A 3x3 matrix is unitarily similar to one with `tr(A)/3` on the diagonal.
//! After removing that shift, a unit vector
//! `h = (cos θ₁, e^{iψ₂} sin θ₁ cos θ₂, e^{iψ₃} sin θ₁ sin θ₂)` gives
//!
//! ```text
//! ⟨Ah, h⟩ = s₁c₁ (c₂ J₁₂(e^{iψ₂}) + s₂ J₁₃(e^{iψ₃})) + s₁² s₂c₂ J₂₃(e^{i(ψ₃-ψ₂)})
//! ```
//!
//! where `J_{jk}(z) = a_jk z + a_kj / z`. When `a₂₃ = a₃₂ = 0` the last term
//! drops out and the range is an ellipse whose support function is
//! `½·sqrt(h₁² + h₂²)` for the supports `h₁`, `h₂` of the two Joukowsky
//! ellipses.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull_2d, Ellipse, JoukowskyMap, PointCloud, Polygon2D};
use crate::linalg::{arg, complete_2, complete_to_unitary, ComplexMatrix, C64};
use crate::nr2::{inverse_numerical_range, numerical_range_2x2};

/// Diagonal entries below `ZERO_DIAGONAL_TOL · (1 + ‖A‖)` count as zero.
pub const ZERO_DIAGONAL_TOL: f64 = 1e-9;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn unit_basis(k: usize) -> Vec<C64> {
    let mut e = vec![zero(); 3];
    e[k] = C64::new(1.0, 0.0);
    e
}

/// Result of [`zero_diagonal_reduce_3x3`].
#[derive(Clone, Debug)]
pub struct DiagonalReduction {
    /// Unitary change of basis.
    pub q: ComplexMatrix,
    /// `q*(A - tr(A)/3)q`.
    pub b: ComplexMatrix,
    /// Largest modulus on the diagonal of `b`.
    pub residual: f64,
}

/// Combination of two basis vectors solving the 2x2 inverse problem on
/// their compression at `target`.
fn solve_on_span(
    t: &ComplexMatrix,
    basis: [Vec<C64>; 2],
    target: C64,
    tol: f64,
) -> Result<Vec<C64>> {
    let comp = t.compress(&basis)?;
    let h = inverse_numerical_range(&comp, target, tol)?;
    let (x, y) = (h.components()[0], h.components()[1]);
    Ok(basis[0]
        .iter()
        .zip(&basis[1])
        .map(|(p, q)| p * x + q * y)
        .collect())
}

/// Unitary `q` with `q*(A - tr(A)/3)q` zero on the diagonal.
///
/// A unit `v` with `⟨Tv, v⟩ = 0` is built from 2x2 inverse problems on
/// coordinate planes; the remaining traceless 2x2 block is then solved at
/// its own centre.
pub fn zero_diagonal_reduce_3x3(a: &ComplexMatrix, tol: f64) -> Result<DiagonalReduction> {
    a.require_dim(3)?;
    let t = a.shifted(-a.trace() / 3.0);
    let solve_tol = tol.max(1e-9 * (1.0 + t.hs_norm()));
    let alpha = t.diagonal();

    let near_zero = (0..3)
        .filter(|&i| alpha[i].norm() <= tol)
        .min_by(|&i, &j| alpha[i].norm().total_cmp(&alpha[j].norm()));
    let v = if let Some(i) = near_zero {
        unit_basis(i)
    } else {
        // ray from α₁ through 0 meets [α₂, α₃] at m: s(-α₁) + u(α₂-α₃) = α₂ - α₁
        let (p, q, r) = (-alpha[0], alpha[1] - alpha[2], alpha[1] - alpha[0]);
        let det = p.re * q.im - p.im * q.re;
        if det.abs() <= 1e-12 * p.norm() * q.norm() {
            // collinear diagonal: 0 lies between the two extremes
            let (i, j) = [(0, 1), (0, 2), (1, 2)]
                .into_iter()
                .max_by(|&(i, j), &(k, l)| {
                    (alpha[i] - alpha[j])
                        .norm()
                        .total_cmp(&(alpha[k] - alpha[l]).norm())
                })
                .expect("three pairs");
            solve_on_span(&t, [unit_basis(i), unit_basis(j)], zero(), solve_tol)?
        } else {
            let u = ((p.re * r.im - p.im * r.re) / det).clamp(0.0, 1.0);
            let m = alpha[1] + (alpha[2] - alpha[1]) * u;
            let w = solve_on_span(&t, [unit_basis(1), unit_basis(2)], m, solve_tol)?;
            solve_on_span(&t, [unit_basis(0), w], zero(), solve_tol)?
        }
    };

    let q1 = complete_to_unitary(&v);
    let t1 = t.conjugate_by(&q1)?;
    let tail = ComplexMatrix::from_fn(2, |i, j| t1[(i + 1, j + 1)]);
    let g = inverse_numerical_range(&tail, tail.trace() * 0.5, solve_tol)?;
    let w = complete_2([g.components()[0], g.components()[1]]);
    let q2 = ComplexMatrix::from_fn(3, |i, j| match (i, j) {
        (0, 0) => C64::new(1.0, 0.0),
        (0, _) | (_, 0) => zero(),
        _ => w[(i - 1, j - 1)],
    });
    let q = q1.mul_unchecked(&q2);
    let b = t.conjugate_by(&q)?;
    let residual = b.max_abs_diagonal();
    Ok(DiagonalReduction { q, b, residual })
}

fn require_zero_diagonal(a: &ComplexMatrix) -> Result<()> {
    a.require_dim(3)?;
    let limit = ZERO_DIAGONAL_TOL * (1.0 + a.hs_norm());
    let d = a.max_abs_diagonal();
    if d > limit {
        return Err(Error::Precondition(format!(
            "diagonal must vanish (largest entry {d:e})"
        )));
    }
    Ok(())
}

/// Evaluator of the four-parameter union for a zero-diagonal 3x3 matrix.
#[derive(Clone, Copy, Debug)]
pub struct ZeroDiagonal3 {
    j12: JoukowskyMap,
    j13: JoukowskyMap,
    j23: JoukowskyMap,
}

impl ZeroDiagonal3 {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        require_zero_diagonal(a)?;
        Ok(Self {
            j12: JoukowskyMap::new(a[(0, 1)], a[(1, 0)]),
            j13: JoukowskyMap::new(a[(0, 2)], a[(2, 0)]),
            j23: JoukowskyMap::new(a[(1, 2)], a[(2, 1)]),
        })
    }

    pub fn point(&self, theta1: f64, theta2: f64, psi2: f64, psi3: f64) -> C64 {
        let (s1, c1) = theta1.sin_cos();
        let (s2, c2) = theta2.sin_cos();
        let (z2, z3) = (C64::from_polar(1.0, psi2), C64::from_polar(1.0, psi3));
        self.point_from_parts(s1, c1, s2, c2, z2, z3)
    }

    #[inline]
    fn point_from_parts(&self, s1: f64, c1: f64, s2: f64, c2: f64, z2: C64, z3: C64) -> C64 {
        (self.j12.eval_at(z2) * c2 + self.j13.eval_at(z3) * s2) * (s1 * c1)
            + self.j23.eval_at(z3 * z2.conj()) * (s1 * s1 * s2 * c2)
    }

    /// Points for the `theta1` slice `index` of the grid.
    fn slice(&self, grid: &Nr3Grid, index: usize) -> Vec<C64> {
        let (s1, c1) = grid.theta1(index).sin_cos();
        let z2: Vec<C64> = (0..grid.n_psi2)
            .map(|k| C64::from_polar(1.0, grid.psi2(k)))
            .collect();
        let z3: Vec<C64> = (0..grid.n_psi3)
            .map(|k| C64::from_polar(1.0, grid.psi3(k)))
            .collect();
        let w12: Vec<C64> = z2.iter().map(|&z| self.j12.eval_at(z)).collect();
        let w13: Vec<C64> = z3.iter().map(|&z| self.j13.eval_at(z)).collect();
        let w23: Vec<C64> = z2
            .iter()
            .flat_map(|&a| z3.iter().map(move |&b| b * a.conj()))
            .map(|z| self.j23.eval_at(z))
            .collect();
        let mut out = Vec::with_capacity(grid.n_theta2 * grid.n_psi2 * grid.n_psi3);
        for j in 0..grid.n_theta2 {
            let (s2, c2) = grid.theta2(j).sin_cos();
            let (outer, inner) = (s1 * c1, s1 * s1 * s2 * c2);
            for (k, &x) in w12.iter().enumerate() {
                let row = &w23[k * z3.len()..(k + 1) * z3.len()];
                for (&y, &w) in w13.iter().zip(row) {
                    out.push((x * c2 + y * s2) * outer + w * inner);
                }
            }
        }
        out
    }
}

/// Value of the union formula; equals `⟨Ah, h⟩` for the matching unit `h`.
pub fn nr3_point(a: &ComplexMatrix, theta1: f64, theta2: f64, psi2: f64, psi3: f64) -> Result<C64> {
    Ok(ZeroDiagonal3::new(a)?.point(theta1, theta2, psi2, psi3))
}

/// Product grid densities. Angles `θ` cover `[0, π/2]` with both ends,
/// angles `ψ` cover `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nr3Grid {
    pub n_theta1: usize,
    pub n_theta2: usize,
    pub n_psi2: usize,
    pub n_psi3: usize,
}

impl Default for Nr3Grid {
    fn default() -> Self {
        Self {
            n_theta1: 32,
            n_theta2: 32,
            n_psi2: 64,
            n_psi3: 64,
        }
    }
}

fn closed_quarter(k: usize, n: usize) -> f64 {
    if n > 1 {
        FRAC_PI_2 * k as f64 / (n - 1) as f64
    } else {
        0.0
    }
}

impl Nr3Grid {
    pub fn uniform(n_theta: usize, n_psi: usize) -> Self {
        Self {
            n_theta1: n_theta,
            n_theta2: n_theta,
            n_psi2: n_psi,
            n_psi3: n_psi,
        }
    }

    pub fn len(&self) -> usize {
        self.n_theta1 * self.n_theta2 * self.n_psi2 * self.n_psi3
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn theta1(&self, k: usize) -> f64 {
        closed_quarter(k, self.n_theta1)
    }

    fn theta2(&self, k: usize) -> f64 {
        closed_quarter(k, self.n_theta2)
    }

    fn psi2(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.n_psi2 as f64
    }

    fn psi3(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.n_psi3 as f64
    }

    fn validate(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Precondition(
                "grid densities must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Every grid value of the union formula, ordered by `(θ₁, θ₂, ψ₂, ψ₃)`.
pub fn nr3_sample(a: &ComplexMatrix, grid: &Nr3Grid) -> Result<PointCloud> {
    grid.validate()?;
    let eval = ZeroDiagonal3::new(a)?;
    let parts: Vec<Vec<C64>> = (0..grid.n_theta1)
        .into_par_iter()
        .map(|i| eval.slice(grid, i))
        .collect();
    Ok(PointCloud::from_vec(parts.concat()))
}

/// Convex hull of [`nr3_sample`] without materializing the whole cloud.
pub fn nr3_hull(a: &ComplexMatrix, grid: &Nr3Grid) -> Result<Polygon2D> {
    grid.validate()?;
    let eval = ZeroDiagonal3::new(a)?;
    let vertices: Vec<Vec<C64>> = (0..grid.n_theta1)
        .into_par_iter()
        .map(|i| {
            let hull = convex_hull_2d(&PointCloud::from_vec(eval.slice(grid, i)))?;
            Ok(hull.vertices().to_vec())
        })
        .collect::<Result<_>>()?;
    convex_hull_2d(&PointCloud::from_vec(vertices.concat()))
}

/// Semi-axes and rotation of one 2x2 block's numerical range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubEllipseAxes {
    pub major: f64,
    pub minor: f64,
    pub angle: f64,
}

/// Principal values of the quadratic form `h₁(φ)² + h₂(φ)²` and its axis angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrincipalForm {
    pub lambda1: f64,
    pub lambda2: f64,
    pub gamma: f64,
}

/// Closed-form range of a zero-diagonal 3x3 matrix with `a₂₃ = a₃₂ = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Zero23Ellipse {
    /// Ranges of `[[0, a₁₂], [a₂₁, 0]]` and `[[0, a₁₃], [a₃₁, 0]]`.
    pub blocks: [SubEllipseAxes; 2],
    pub principal: PrincipalForm,
    pub ellipse: Ellipse,
}

fn block_axes(x: C64, y: C64) -> Result<SubEllipseAxes> {
    let m = ComplexMatrix::from_rows(&[[zero(), x], [y, zero()]])?;
    let e = numerical_range_2x2(&m)?.canonical();
    Ok(SubEllipseAxes {
        major: e.axis_u,
        minor: e.axis_v,
        angle: e.rotation,
    })
}

fn require_zero23(a: &ComplexMatrix, tol: f64) -> Result<()> {
    require_zero_diagonal(a)?;
    let off = a[(1, 2)].norm() + a[(2, 1)].norm();
    if off > tol {
        return Err(Error::Precondition(format!(
            "entries (2,3) and (3,2) must vanish (|a23|+|a32| = {off:e})"
        )));
    }
    Ok(())
}

/// The range is the ellipse centred at 0 with semi-axes `sqrt(λ₁)`, `sqrt(λ₂)`
/// along angle `γ`.
///
/// With `(A, B, α)` and `(C, D, β)` the block ellipses, the squared support
/// `h₁² + h₂²` is the quadratic form with eigenvalues
/// `λ = (A²+B²+C²+D²)/2 ± |(A²-B²)e^{2iα} + (C²-D²)e^{2iβ}|/2` and major
/// direction `γ = ½ arg((A²-B²)e^{2iα} + (C²-D²)e^{2iβ})`.
pub fn nr3_ellipse_zero23_detailed(a: &ComplexMatrix, tol: f64) -> Result<Zero23Ellipse> {
    require_zero23(a, tol)?;
    let first = block_axes(a[(0, 1)], a[(1, 0)])?;
    let second = block_axes(a[(0, 2)], a[(2, 0)])?;
    let ecc = |s: &SubEllipseAxes| s.major * s.major - s.minor * s.minor;
    let (e1, e2) = (ecc(&first), ecc(&second));
    let mean = 0.5
        * (first.major.powi(2) + first.minor.powi(2) + second.major.powi(2) + second.minor.powi(2));
    let spread = (e1 * e1 + e2 * e2 + 2.0 * e1 * e2 * (2.0 * (first.angle - second.angle)).cos())
        .max(0.0)
        .sqrt();
    let lambda1 = mean + 0.5 * spread;
    let lambda2 = (mean - 0.5 * spread).max(0.0);
    let w = C64::from_polar(e1, 2.0 * first.angle) + C64::from_polar(e2, 2.0 * second.angle);
    let gamma = if w.norm() <= tol * (1.0 + mean) {
        0.0
    } else {
        0.5 * arg(w)
    };
    Ok(Zero23Ellipse {
        blocks: [first, second],
        principal: PrincipalForm {
            lambda1,
            lambda2,
            gamma,
        },
        ellipse: Ellipse::new(zero(), lambda1.sqrt(), lambda2.sqrt(), gamma),
    })
}

pub fn nr3_ellipse_zero23(a: &ComplexMatrix, tol: f64) -> Result<Ellipse> {
    Ok(nr3_ellipse_zero23_detailed(a, tol)?.ellipse)
}

/// `½·sqrt(h₁(φ)² + h₂(φ)²)` from the Joukowsky ellipses of the first row
/// and column; the support function of the range when `a₂₃ = a₃₂ = 0`.
pub fn zero23_support(a: &ComplexMatrix, phi: f64, tol: f64) -> Result<f64> {
    require_zero23(a, tol)?;
    let h1 = JoukowskyMap::new(a[(0, 1)], a[(1, 0)])
        .ellipse()
        .support(phi);
    let h2 = JoukowskyMap::new(a[(0, 2)], a[(2, 0)])
        .ellipse()
        .support(phi);
    Ok(0.5 * (h1 * h1 + h2 * h2).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hausdorff_distance;
    use crate::linalg::{inner, invariants_agree, is_unitary, TraceInvariants3, I};
    use crate::oracle::{random_matrix, sample_numerical_range, SeededSampler};
    use rand::Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn with_entries(entries: &[((usize, usize), C64)]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(3);
        for &(ij, v) in entries {
            m[ij] = v;
        }
        m
    }

    fn circle_example() -> ComplexMatrix {
        with_entries(&[((0, 1), c(2.0, 0.0)), ((2, 0), c(2.0, 0.0))])
    }

    fn lambda_example() -> ComplexMatrix {
        with_entries(&[
            ((0, 1), c(8.0, 0.0)),
            ((1, 0), c(4.0, 0.0)),
            ((0, 2), c(0.0, 2.0)),
            ((2, 0), c(0.0, 4.0)),
        ])
    }

    fn zero_diag(mut m: ComplexMatrix) -> ComplexMatrix {
        for i in 0..3 {
            m[(i, i)] = zero();
        }
        m
    }

    fn zero23(m: ComplexMatrix) -> ComplexMatrix {
        let mut m = zero_diag(m);
        m[(1, 2)] = zero();
        m[(2, 1)] = zero();
        m
    }

    fn assert_reduction(a: &ComplexMatrix, r: &DiagonalReduction) {
        let scale = 1.0 + a.hs_norm();
        assert!(r.residual <= 1e-9 * scale, "residual {}", r.residual);
        assert!(is_unitary(&r.q, 1e-12));
        let t = a.shifted(-a.trace() / 3.0);
        let x = TraceInvariants3::of(&t).unwrap().as_array();
        let y = TraceInvariants3::of(&r.b).unwrap().as_array();
        assert!(invariants_agree(&x, &y, 1e-8));
    }

    #[test]
    fn reduce_zero_diagonal_input_is_a_relabelling() {
        let a = lambda_example();
        let r = zero_diagonal_reduce_3x3(&a, 1e-12).unwrap();
        assert_reduction(&a, &r);
        // q is a permutation with phases
        for row in r.q.rows() {
            let big: Vec<_> = row.iter().filter(|z| z.norm() > 1e-12).collect();
            assert_eq!(big.len(), 1);
            assert!((big[0].norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reduce_diagonal_matrix_keeps_spectrum() {
        let a = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let r = zero_diagonal_reduce_3x3(&a, 1e-12).unwrap();
        assert_reduction(&a, &r);
        // characteristic polynomial λ³ - λ
        for lambda in [-1.0, 0.0, 1.0] {
            assert!(r.b.shifted(c(-lambda, 0.0)).det().norm() < 1e-12);
        }
    }

    #[test]
    fn reduce_random_matrices() {
        let s = SeededSampler::new(2024);
        for a in s.gaussian_matrices(3, 100) {
            let r = zero_diagonal_reduce_3x3(&a, 1e-12).unwrap();
            assert_reduction(&a, &r);
            let back = r.q.mul_unchecked(&r.b).mul_unchecked(&r.q.adjoint());
            let t = a.shifted(-a.trace() / 3.0);
            assert!(back.mat_sub(&t).unwrap().hs_norm() < 1e-12 * (1.0 + a.hs_norm()));
        }
    }

    #[test]
    fn reduce_degenerate_diagonals() {
        // collinear diagonal, one exactly central entry, and a Hermitian case
        let cases = [
            ComplexMatrix::from_diag(&[c(-1.0, -1.0), c(0.5, 0.5), c(0.5, 0.5)]),
            ComplexMatrix::from_real_rows(&[[1.0, 2.0, 0.0], [0.0, 0.0, 3.0], [1.0, 0.0, -1.0]])
                .unwrap(),
            ComplexMatrix::from_real_rows(&[[2.0, 1.0, 0.0], [1.0, -1.0, 1.0], [0.0, 1.0, -1.0]])
                .unwrap(),
            ComplexMatrix::identity(3),
        ];
        for a in cases {
            assert_reduction(&a, &zero_diagonal_reduce_3x3(&a, 1e-12).unwrap());
        }
    }

    #[test]
    fn point_vanishes_at_theta1_zero() {
        let a = lambda_example();
        for (t2, p2, p3) in [(0.3, 1.0, 2.0), (1.2, 4.0, 0.1)] {
            assert_eq!(nr3_point(&a, 0.0, t2, p2, p3).unwrap(), zero());
        }
    }

    #[test]
    fn point_reduces_to_two_by_two() {
        let a = with_entries(&[((0, 1), c(8.0, 0.0)), ((1, 0), c(4.0, 0.0))]);
        let j = JoukowskyMap::new(c(8.0, 0.0), c(4.0, 0.0));
        for (t1, p2) in [(0.4f64, 0.0), (1.1, 2.5)] {
            let expect = j.eval(p2) * (t1.sin() * t1.cos());
            assert!((nr3_point(&a, t1, 0.0, p2, 0.7).unwrap() - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn point_matches_inner_product() {
        let s = SeededSampler::new(77);
        let mut rng = s.stream(0);
        let a = zero_diag(random_matrix(&mut rng, 3));
        let eval = ZeroDiagonal3::new(&a).unwrap();
        for _ in 0..10_000 {
            let t1 = rng.random_range(0.0..FRAC_PI_2);
            let t2 = rng.random_range(0.0..FRAC_PI_2);
            let p2 = rng.random_range(0.0..2.0 * PI);
            let p3 = rng.random_range(0.0..2.0 * PI);
            let h = [
                c(t1.cos(), 0.0),
                C64::from_polar(t1.sin() * t2.cos(), p2),
                C64::from_polar(t1.sin() * t2.sin(), p3),
            ];
            let direct = inner(&a.mul_vec(&h).unwrap(), &h);
            assert!((eval.point(t1, t2, p2, p3) - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn point_rejects_nonzero_diagonal() {
        assert!(matches!(
            nr3_point(&ComplexMatrix::identity(3), 0.1, 0.2, 0.3, 0.4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sample_of_zero_matrix() {
        let cloud = nr3_sample(&ComplexMatrix::zeros(3), &Nr3Grid::uniform(4, 8)).unwrap();
        assert_eq!(cloud.len(), 4 * 4 * 8 * 8);
        assert!(cloud.points().iter().all(|p| *p == zero()));
    }

    #[test]
    fn sample_stays_inside_oracle_range() {
        let s = SeededSampler::new(3);
        let a = zero_diag(s.gaussian_matrices(3, 1).remove(0));
        let oracle = sample_numerical_range(&a, &s, 200_000);
        let grid = Nr3Grid::uniform(12, 24);
        let hull = nr3_hull(&a, &grid).unwrap();
        let oracle_hull = convex_hull_2d(&oracle).unwrap();
        // grid points are values ⟨Ah,h⟩; random sampling only underfills
        for p in nr3_sample(&a, &grid).unwrap().points() {
            assert!(hull.distance_to(*p) <= 1e-9);
        }
        assert!(hausdorff_distance(&hull, &oracle_hull) < 0.05 * hull.diameter());
    }

    #[test]
    fn circle_example_radius_is_sqrt_two() {
        // Hermitian part [[0,1,1],[1,0,0],[1,0,0]] has top eigenvalue √2 and the
        // range is rotation invariant, so the range is the disk of radius √2
        let a = circle_example();
        let z = nr3_ellipse_zero23_detailed(&a, 1e-12).unwrap();
        assert!((z.principal.lambda1 - 2.0).abs() < 1e-12);
        assert!((z.principal.lambda2 - 2.0).abs() < 1e-12);
        assert!((z.ellipse.axis_u - 2f64.sqrt()).abs() < 1e-12);
        assert!((z.ellipse.axis_v - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(z.principal.gamma, 0.0);
    }

    #[test]
    fn lambda_example_values() {
        let z = nr3_ellipse_zero23_detailed(&lambda_example(), 1e-12).unwrap();
        assert!((z.principal.lambda1 - 37.0).abs() < 1e-10);
        assert!((z.principal.lambda2 - 13.0).abs() < 1e-10);
        assert!(z.principal.gamma.abs() < 1e-10);
        assert!((z.blocks[0].major - 6.0).abs() < 1e-12 && (z.blocks[0].minor - 2.0).abs() < 1e-12);
        assert!((z.blocks[1].major - 3.0).abs() < 1e-12 && (z.blocks[1].minor - 1.0).abs() < 1e-12);
        // real part of the range peaks at the top eigenvalue √37 of the Hermitian part
        assert!((z.ellipse.support(0.0) - 37f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn single_block_matches_two_by_two() {
        let a = with_entries(&[((0, 1), c(1.0, 2.0)), ((1, 0), c(-0.5, 0.3))]);
        let block =
            ComplexMatrix::from_rows(&[[zero(), c(1.0, 2.0)], [c(-0.5, 0.3), zero()]]).unwrap();
        let e3 = nr3_ellipse_zero23(&a, 1e-12).unwrap();
        assert!(e3.approx_eq(&numerical_range_2x2(&block).unwrap(), 1e-12));
    }

    #[test]
    fn zero23_rejects_coupled_tail() {
        let mut a = lambda_example();
        a[(1, 2)] = c(0.1, 0.0);
        assert!(nr3_ellipse_zero23(&a, 1e-12).is_err());
        assert!(zero23_support(&a, 0.0, 1e-12).is_err());
    }

    #[test]
    fn closed_form_agrees_with_union_and_support() {
        let s = SeededSampler::new(12);
        let grid = Nr3Grid::uniform(24, 48);
        for a in s.gaussian_matrices(3, 5).into_iter().map(zero23) {
            let e = nr3_ellipse_zero23(&a, 1e-12).unwrap();
            let hull = nr3_hull(&a, &grid).unwrap();
            let d = hausdorff_distance(&hull, &e.polygon(2048));
            assert!(d <= 1e-2 * e.diameter(), "{d}");
            for k in 0..64 {
                let phi = 2.0 * PI * k as f64 / 64.0;
                let h = zero23_support(&a, phi, 1e-12).unwrap();
                assert!((h - e.support(phi)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn gamma_follows_rotation() {
        // conjugating by diag(1, e^{iτ}, e^{iτ}) rotates the range by nothing,
        // while multiplying by e^{iτ} rotates it by τ
        let a = lambda_example();
        let tau = 0.4;
        let rotated = a.scale(C64::from_polar(1.0, tau));
        let e = nr3_ellipse_zero23(&rotated, 1e-12).unwrap();
        let expect = nr3_ellipse_zero23(&a, 1e-12)
            .unwrap()
            .affine(C64::from_polar(1.0, tau), zero());
        assert!(e.approx_eq(&expect, 1e-10));
        let u = ComplexMatrix::from_diag(&[c(1.0, 0.0), I, I]);
        let same = nr3_ellipse_zero23(&a.conjugate_by(&u).unwrap(), 1e-12).unwrap();
        assert!(same.approx_eq(&nr3_ellipse_zero23(&a, 1e-12).unwrap(), 1e-10));
    }
}
