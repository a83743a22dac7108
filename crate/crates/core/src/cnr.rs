//! C-numerical ranges `W_C(A) = {tr(C·U*AU) : U unitary}`.
//!
//! For 2x2 inputs the range is an ellipse built from the hot forms of both
//! matrices. For a rank-one `C` in row form (only the first row nonzero) it
//! is the union over unit `h` of the disks centred at `c₁₁⟨Ah, h⟩` with
//! radius `τ·sqrt(‖Ah‖² - |⟨Ah, h⟩|²)`, `τ` the norm of the row tail. The
//! q-numerical range is the case `c₁₁ = q`, `τ = sqrt(1 - q²)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Ellipse, PointCloud};
use crate::linalg::{inner, norm, ComplexMatrix, UnitVector, C64};
use crate::nr2::{center_and_rotate, hot_form_reduce, Centered2};
use crate::oracle::{polished_max, random_unit_vector, AscentConfig, SeededSampler};
use crate::search::coordinate_ascent;

/// Parameters of the 2x2 C-numerical range ellipse
/// `center + e^{-i(θ₁+θ₂)}(K₁ cos t + i K₂ sin t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CnrEllipseParams {
    pub k1: f64,
    pub k2: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub center: C64,
}

impl CnrEllipseParams {
    pub fn ellipse(&self) -> Ellipse {
        Ellipse::new(self.center, self.k1, self.k2, -(self.theta1 + self.theta2))
    }
}

/// With hot forms `[[0, b₁], [c₁, 0]]` of `A₀` and `[[0, b₂], [c₂, 0]]` of `C₀`,
/// `W_{C₀}(A₀)` is the range of `z ↦ c₁c₂ z + b₁b₂ / z` on the unit circle.
pub fn cnr_2x2_params(a: &ComplexMatrix, c: &ComplexMatrix) -> Result<CnrEllipseParams> {
    a.require_dim(2)?;
    c.require_dim(2)?;
    let Centered2 {
        a0, theta: theta1, ..
    } = center_and_rotate(a)?;
    let Centered2 {
        a0: c0,
        theta: theta2,
        ..
    } = center_and_rotate(c)?;
    let fa = hot_form_reduce(&a0)?;
    let fc = hot_form_reduce(&c0)?;
    Ok(CnrEllipseParams {
        k1: fa.b * fc.b + fa.c * fc.c,
        k2: fa.b * fc.b - fa.c * fc.c,
        theta1,
        theta2,
        center: a.trace() * c.trace() * 0.5,
    })
}

pub fn cnr_2x2(a: &ComplexMatrix, c: &ComplexMatrix) -> Result<Ellipse> {
    Ok(cnr_2x2_params(a, c)?.ellipse())
}

/// `(K₁, K₂)` from norms and determinants of the centred, rotated matrices:
///
/// ```text
/// K₁² = ½(‖A₀‖²‖C₀‖² + sqrt(‖A₀‖⁴ - 4 det(A₀)²)·sqrt(‖C₀‖⁴ - 4 det(C₀)²) + 4 det(A₀)det(C₀))
/// ```
///
/// and `K₂²` with the sign of the determinant term flipped.
pub fn cnr_radical_axes(a: &ComplexMatrix, c: &ComplexMatrix) -> Result<(f64, f64)> {
    a.require_dim(2)?;
    c.require_dim(2)?;
    let a0 = center_and_rotate(a)?.a0;
    let c0 = center_and_rotate(c)?.a0;
    let (na, nc) = (a0.hs_norm_sq(), c0.hs_norm_sq());
    let (da, dc) = (a0.det().re, c0.det().re);
    let cross =
        (na * na - 4.0 * da * da).max(0.0).sqrt() * (nc * nc - 4.0 * dc * dc).max(0.0).sqrt();
    let sum = na * nc + cross;
    Ok((
        (0.5 * (sum + 4.0 * da * dc)).max(0.0).sqrt(),
        (0.5 * (sum - 4.0 * da * dc)).max(0.0).sqrt(),
    ))
}

/// A rank-one matrix reduced to a single nonzero first row.
#[derive(Clone, Debug, PartialEq)]
pub struct RankOneRowForm {
    pub n: usize,
    pub c11: C64,
    pub tail_norm: f64,
    pub row: Vec<C64>,
}

impl RankOneRowForm {
    /// Row `(c11, tail_norm, 0, …, 0)`.
    pub fn from_parts(n: usize, c11: C64, tail_norm: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition("row form needs n ≥ 2".into()));
        }
        if !(tail_norm >= 0.0 && tail_norm.is_finite()) {
            return Err(Error::Precondition(
                "tail norm must be finite and nonnegative".into(),
            ));
        }
        let mut row = vec![C64::new(0.0, 0.0); n];
        row[0] = c11;
        row[1] = C64::new(tail_norm, 0.0);
        Ok(Self {
            n,
            c11,
            tail_norm,
            row,
        })
    }

    /// The q-numerical range form.
    pub fn q_form(n: usize, q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::QOutOfRange(q));
        }
        Self::from_parts(n, C64::new(q, 0.0), (1.0 - q * q).sqrt())
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| {
            if i == 0 {
                self.row[j]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }
}

/// Row form of a numerically rank-one `C`.
///
/// `C = σ u v*` with the dominant left singular vector `u`; the Householder
/// reflection `H` with `Hu ∝ e₁` makes `HCH*` vanish below the first row.
pub fn rank1_row_form(c: &ComplexMatrix, tol: f64) -> Result<RankOneRowForm> {
    let n = c.dim();
    if n < 2 {
        return Err(Error::Precondition("row form needs n ≥ 2".into()));
    }
    let total = c.hs_norm_sq();
    if total == 0.0 {
        return Err(Error::NotRankOne {
            ratio: f64::INFINITY,
        });
    }
    // start from the largest column and polish by power iteration on CC*
    let mut u = (0..n)
        .map(|j| c.column(j))
        .max_by(|x, y| norm(x).total_cmp(&norm(y)))
        .expect("n ≥ 2");
    let adj = c.adjoint();
    for _ in 0..4 {
        let nu = norm(&u);
        u.iter_mut().for_each(|z| *z /= nu);
        u = c.mul_vec_unchecked(&adj.mul_vec_unchecked(&u));
    }
    let nu = norm(&u);
    u.iter_mut().for_each(|z| *z /= nu);

    // v* = u*C
    let v: Vec<C64> = (0..n).map(|j| inner(&c.column(j), &u).conj()).collect();
    let sigma = norm(&v);
    let residual = ComplexMatrix::from_fn(n, |i, j| c[(i, j)] - u[i] * v[j].conj()).hs_norm();
    let ratio = residual / sigma;
    if ratio > tol {
        return Err(Error::NotRankOne { ratio });
    }

    // H = I - 2ww*/‖w‖², w = u + e^{iα}e₁, Hu = -e^{iα}e₁
    let phase = if u[0].norm() > 0.0 {
        u[0] / u[0].norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let mut w = u.clone();
    w[0] += phase;
    let ww = norm(&w).powi(2);
    let hv: Vec<C64> = {
        // HCH* = H u v* H = -e^{iα} e₁ (Hv)*
        let p = inner(&v, &w);
        v.iter()
            .zip(&w)
            .map(|(x, y)| x - y * (2.0 * p / ww))
            .collect()
    };
    let row: Vec<C64> = hv.iter().map(|z| -phase * z.conj()).collect();
    let tail_norm = norm(&row[1..]);
    Ok(RankOneRowForm {
        n,
        c11: row[0],
        tail_norm,
        row,
    })
}

/// Closed disk `{z : |z - center| ≤ radius}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: C64,
    pub radius: f64,
}

impl Disk {
    pub fn support(&self, phi: f64) -> f64 {
        (self.center * C64::from_polar(1.0, -phi)).re + self.radius
    }

    pub fn boundary_point(&self, t: f64) -> C64 {
        self.center + C64::from_polar(self.radius, t)
    }
}

#[inline]
fn disk_parts(a: &ComplexMatrix, form: &RankOneRowForm, h: &[C64]) -> Disk {
    let ah = a.mul_vec_unchecked(h);
    let w = inner(&ah, h);
    let radicand = ah.iter().map(|z| z.norm_sqr()).sum::<f64>() - w.norm_sqr();
    Disk {
        center: form.c11 * w,
        radius: form.tail_norm * radicand.max(0.0).sqrt(),
    }
}

fn require_form(a: &ComplexMatrix, form: &RankOneRowForm) -> Result<()> {
    if form.n != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: form.n,
        });
    }
    Ok(())
}

/// The disk contributed by the unit vector `h`.
pub fn cnr_rank1_disk(a: &ComplexMatrix, form: &RankOneRowForm, h: &UnitVector) -> Result<Disk> {
    require_form(a, form)?;
    if h.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: h.dim(),
        });
    }
    Ok(disk_parts(a, form, h.components()))
}

/// Moves `0..n` rotate the phase of one coordinate, `n..2n` rescale its
/// modulus by `1 + δ`; the result is renormalized.
fn vector_move(h: &[C64], m: usize, delta: f64) -> Vec<C64> {
    let n = h.len();
    let mut out = h.to_vec();
    if m < n {
        out[m] *= C64::from_polar(1.0, delta);
    } else {
        let k = m - n;
        if out[k].norm() == 0.0 {
            out[k] = C64::new(delta.abs(), 0.0);
        } else {
            out[k] *= (1.0 + delta).max(0.0);
        }
    }
    let nrm = norm(&out);
    if nrm > 0.0 {
        out.iter_mut().for_each(|z| *z /= nrm);
        out
    } else {
        h.to_vec()
    }
}

/// Support of the union of disks at each angle, maximizing over sampled
/// unit vectors and polishing the best candidates by coordinate ascent.
pub fn cnr_rank1_support_profile(
    a: &ComplexMatrix,
    form: &RankOneRowForm,
    angles: &[f64],
    sampler: &SeededSampler,
    n_samples: usize,
    config: &AscentConfig,
) -> Result<Vec<f64>> {
    require_form(a, form)?;
    if n_samples == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    let n = a.dim();
    let vectors: Vec<Vec<C64>> = sampler
        .unit_vectors(n, n_samples)
        .into_iter()
        .map(UnitVector::into_inner)
        .collect();
    let disks: Vec<Disk> = vectors.par_iter().map(|h| disk_parts(a, form, h)).collect();
    Ok(angles
        .iter()
        .map(|&phi| {
            let raw: Vec<f64> = disks.iter().map(|d| d.support(phi)).collect();
            polished_max(&vectors, &raw, config, |h| {
                coordinate_ascent(
                    h.clone(),
                    2 * n,
                    config.sweeps,
                    config.initial_step,
                    |h: &Vec<C64>, m, d| vector_move(h, m, d),
                    |h| disk_parts(a, form, h).support(phi),
                )
                .1
            })
        })
        .collect())
}

pub fn cnr_rank1_support(
    a: &ComplexMatrix,
    form: &RankOneRowForm,
    phi: f64,
    sampler: &SeededSampler,
    n_samples: usize,
) -> Result<f64> {
    Ok(cnr_rank1_support_profile(
        a,
        form,
        &[phi],
        sampler,
        n_samples,
        &AscentConfig::default(),
    )?[0])
}

/// `n_circle` boundary points of the disk of each of `n_h` sampled vectors.
pub fn cnr_rank1_sample(
    a: &ComplexMatrix,
    form: &RankOneRowForm,
    sampler: &SeededSampler,
    n_h: usize,
    n_circle: usize,
) -> Result<PointCloud> {
    require_form(a, form)?;
    if n_h == 0 || n_circle == 0 {
        return Err(Error::Precondition("sample counts must be positive".into()));
    }
    let n = a.dim();
    let step = 2.0 * std::f64::consts::PI / n_circle as f64;
    let disks = sampler.generate(n_h, |rng| {
        disk_parts(a, form, random_unit_vector(rng, n).components())
    });
    Ok(PointCloud::from_vec(
        disks
            .iter()
            .flat_map(|d| (0..n_circle).map(move |k| d.boundary_point(k as f64 * step)))
            .collect(),
    ))
}

pub fn q_numerical_range_support(
    a: &ComplexMatrix,
    q: f64,
    phi: f64,
    sampler: &SeededSampler,
    n_samples: usize,
) -> Result<f64> {
    cnr_rank1_support(
        a,
        &RankOneRowForm::q_form(a.dim(), q)?,
        phi,
        sampler,
        n_samples,
    )
}

pub fn q_numerical_range_sample(
    a: &ComplexMatrix,
    q: f64,
    sampler: &SeededSampler,
    n_h: usize,
    n_circle: usize,
) -> Result<PointCloud> {
    cnr_rank1_sample(
        a,
        &RankOneRowForm::q_form(a.dim(), q)?,
        sampler,
        n_h,
        n_circle,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{specht_equivalent_3x3, I};
    use crate::nr2::numerical_range_2x2;
    use crate::oracle::{orbit_support, sample_c_numerical_range};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn m2(rows: [[C64; 2]; 2]) -> ComplexMatrix {
        ComplexMatrix::from_rows(&rows).unwrap()
    }

    fn e11(n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |i, j| c(if i == 0 && j == 0 { 1.0 } else { 0.0 }, 0.0))
    }

    fn example_a() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[0.0, 8.0], [4.0, 0.0]]).unwrap()
    }

    #[test]
    fn cnr_with_corner_unit_is_numerical_range() {
        let s = SeededSampler::new(31);
        for a in s.gaussian_matrices(2, 20).into_iter().chain([example_a()]) {
            let e = cnr_2x2(&a, &e11(2)).unwrap();
            assert!(e.approx_eq(&numerical_range_2x2(&a).unwrap(), 1e-10));
        }
    }

    #[test]
    fn cnr_with_identity_is_a_point() {
        let a = m2([[c(1.0, 2.0), c(3.0, 0.0)], [c(0.0, -1.0), c(2.0, 0.5)]]);
        let p = cnr_2x2_params(&a, &ComplexMatrix::identity(2)).unwrap();
        assert_eq!((p.k1, p.k2), (0.0, 0.0));
        assert!((p.center - a.trace()).norm() < 1e-15);
    }

    #[test]
    fn cnr_of_nilpotents_is_a_disk() {
        let a = m2([[c(0.0, 0.0), c(2.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
        let cm = m2([[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
        let e = cnr_2x2(&a, &cm).unwrap();
        assert!(e.approx_eq(&Ellipse::circle(c(0.0, 0.0), 2.0), 1e-12));
        // orbit oracle: the maximum of Re tr(C U*AU) is 2 in every direction
        let s = SeededSampler::new(8);
        for phi in [0.0, 1.0, 2.5] {
            let h = orbit_support(&a, &cm, phi, &s, 400, &AscentConfig::default()).unwrap();
            assert!((h - 2.0).abs() < 1e-6, "{h}");
        }
    }

    #[test]
    fn radical_axes_agree_with_hot_form_products() {
        let s = SeededSampler::new(5);
        let ms = s.gaussian_matrices(2, 40);
        for pair in ms.chunks(2) {
            let p = cnr_2x2_params(&pair[0], &pair[1]).unwrap();
            let (k1, k2) = cnr_radical_axes(&pair[0], &pair[1]).unwrap();
            let scale = 1.0 + p.k1;
            assert!((p.k1 - k1).abs() < 1e-10 * scale && (p.k2 - k2).abs() < 1e-10 * scale);
        }
    }

    #[test]
    fn cnr_is_symmetric_and_covariant() {
        let s = SeededSampler::new(6);
        let ms = s.gaussian_matrices(2, 20);
        let (alpha, beta) = (c(0.3, -1.2), c(2.0, 0.7));
        for pair in ms.chunks(2) {
            let (a, cm) = (&pair[0], &pair[1]);
            let e = cnr_2x2(a, cm).unwrap();
            assert!(e.approx_eq(&cnr_2x2(cm, a).unwrap(), 1e-10));
            let moved = a.scale(alpha).shifted(beta);
            let expect = e.affine(alpha, beta * cm.trace());
            assert!(cnr_2x2(&moved, cm).unwrap().approx_eq(&expect, 1e-10));
        }
    }

    #[test]
    fn orbit_samples_stay_inside_cnr() {
        let s = SeededSampler::new(44);
        let ms = s.gaussian_matrices(2, 20);
        for (k, pair) in ms.chunks(2).enumerate() {
            let (a, cm) = (&pair[0], &pair[1]);
            let e = cnr_2x2(a, cm).unwrap();
            let scale = (1.0 + a.hs_norm()) * (1.0 + cm.hs_norm());
            let cloud = sample_c_numerical_range(a, cm, &s.derive(k as u64), 2000).unwrap();
            for p in cloud.points() {
                assert!(e.outside_distance(*p) <= 1e-8 * scale);
            }
        }
    }

    #[test]
    fn row_form_examples() {
        let mut e12 = ComplexMatrix::zeros(3);
        e12[(0, 1)] = c(1.0, 0.0);
        let f = rank1_row_form(&e12, 1e-10).unwrap();
        assert!(f.c11.norm() < 1e-15 && (f.tail_norm - 1.0).abs() < 1e-15);

        let mut e21 = ComplexMatrix::zeros(3);
        e21[(1, 0)] = c(1.0, 0.0);
        let f = rank1_row_form(&e21, 1e-10).unwrap();
        assert!(f.c11.norm() < 1e-15 && (f.tail_norm - 1.0).abs() < 1e-15);
        assert!(specht_equivalent_3x3(&f.matrix(), &e21, 1e-12).unwrap());

        let mut qm = ComplexMatrix::zeros(3);
        qm[(0, 0)] = c(0.6, 0.0);
        qm[(0, 1)] = c(0.8, 0.0);
        let f = rank1_row_form(&qm, 1e-10).unwrap();
        assert!((f.c11 - c(0.6, 0.0)).norm() < 1e-15 && (f.tail_norm - 0.8).abs() < 1e-15);
    }

    #[test]
    fn row_form_of_random_rank_one() {
        let s = SeededSampler::new(9);
        for vecs in s.unit_vectors(3, 40).chunks(2) {
            let (x, y) = (vecs[0].components(), vecs[1].components());
            let cm = ComplexMatrix::from_fn(3, |i, j| x[i] * y[j].conj() * c(1.5, -0.5));
            let f = rank1_row_form(&cm, 1e-10).unwrap();
            assert!((f.c11 - cm.trace()).norm() < 1e-12);
            let tail2: f64 = f.row[1..].iter().map(|z| z.norm_sqr()).sum();
            assert!((tail2 - f.tail_norm.powi(2)).abs() < 1e-12);
            assert!(specht_equivalent_3x3(&f.matrix(), &cm, 1e-10).unwrap());
        }
    }

    #[test]
    fn row_form_rejects_higher_rank() {
        assert!(matches!(
            rank1_row_form(&ComplexMatrix::identity(3), 1e-10),
            Err(Error::NotRankOne { .. })
        ));
        assert!(matches!(
            rank1_row_form(&ComplexMatrix::zeros(3), 1e-10),
            Err(Error::NotRankOne { .. })
        ));
    }

    #[test]
    fn disk_examples() {
        let form = RankOneRowForm::q_form(3, 0.6).unwrap();
        let s = SeededSampler::new(1);
        for h in s.unit_vectors(3, 10) {
            let d = cnr_rank1_disk(&ComplexMatrix::identity(3), &form, &h).unwrap();
            assert!((d.center - form.c11).norm() < 1e-15 && d.radius < 1e-7);
        }
        let mut a = ComplexMatrix::zeros(3);
        a[(0, 1)] = c(1.0, 0.0);
        let d = cnr_rank1_disk(&a, &form, &UnitVector::basis(3, 1)).unwrap();
        assert_eq!(d.center, c(0.0, 0.0));
        assert!((d.radius - 0.8).abs() < 1e-15);
        let flat = RankOneRowForm::from_parts(3, c(0.0, 2.0), 0.0).unwrap();
        let h = &s.unit_vectors(3, 1)[0];
        let d = cnr_rank1_disk(&a, &flat, h).unwrap();
        assert_eq!(d.radius, 0.0);
        assert!((d.center - I * 2.0 * a.quadratic_form(h.components()).unwrap()).norm() < 1e-15);
        assert!(cnr_rank1_disk(&ComplexMatrix::identity(2), &form, h).is_err());
    }

    #[test]
    fn support_of_classical_form_is_numerical_range() {
        let a = example_a();
        let e = numerical_range_2x2(&a).unwrap();
        let form = RankOneRowForm::q_form(2, 1.0).unwrap();
        let s = SeededSampler::new(2);
        for k in 0..8 {
            let phi = k as f64 * PI / 4.0;
            let h = cnr_rank1_support(&a, &form, phi, &s, 500).unwrap();
            assert!((h - e.support(phi)).abs() < 1e-8);
        }
    }

    #[test]
    fn support_with_identity_is_exact() {
        let form = RankOneRowForm::from_parts(3, c(0.3, 0.4), 0.7).unwrap();
        for phi in [0.0, 2.0] {
            let h = cnr_rank1_support(
                &ComplexMatrix::identity(3),
                &form,
                phi,
                &SeededSampler::new(1),
                50,
            )
            .unwrap();
            assert!((h - (form.c11 * C64::from_polar(1.0, -phi)).re).abs() < 1e-7);
        }
    }

    #[test]
    fn q_zero_range_of_nilpotent_is_a_disk() {
        // max over h of sqrt(‖Ah‖² - |⟨Ah,h⟩|²) for A = E₁₂ is 1 (at h = e₂)
        let a = m2([[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
        let s = SeededSampler::new(3);
        let cm = m2([[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
        for phi in [0.0, 1.3, 4.0] {
            let h = q_numerical_range_support(&a, 0.0, phi, &s, 500).unwrap();
            assert!((h - 1.0).abs() < 1e-8, "{h}");
            let orbit = orbit_support(&a, &cm, phi, &s, 400, &AscentConfig::default()).unwrap();
            assert!((orbit - 1.0).abs() < 1e-6, "{orbit}");
        }
    }

    #[test]
    fn support_is_monotone_in_samples() {
        let s = SeededSampler::new(10);
        let a = s.gaussian_matrices(3, 1).remove(0);
        let form = RankOneRowForm::q_form(3, 0.4).unwrap();
        let config = AscentConfig {
            sweeps: 5,
            ..AscentConfig::default()
        };
        let mut last = f64::NEG_INFINITY;
        for n in [1, 10, 100, 1000] {
            let h = cnr_rank1_support_profile(&a, &form, &[0.9], &s, n, &config).unwrap()[0];
            assert!(h >= last);
            last = h;
        }
    }

    #[test]
    fn rank1_samples() {
        let s = SeededSampler::new(4);
        let form = RankOneRowForm::from_parts(3, c(0.5, 0.5), 0.6).unwrap();
        let cloud = cnr_rank1_sample(&ComplexMatrix::identity(3), &form, &s, 20, 6).unwrap();
        assert_eq!(cloud.len(), 120);
        assert!(cloud.points().iter().all(|p| (p - form.c11).norm() < 1e-7));

        let a = example_a();
        let flat = RankOneRowForm::from_parts(2, c(0.0, 1.0), 0.0).unwrap();
        let e = numerical_range_2x2(&a).unwrap().affine(I, c(0.0, 0.0));
        for p in cnr_rank1_sample(&a, &flat, &s, 500, 3).unwrap().points() {
            assert!(e.outside_distance(*p) < 1e-10);
        }
        let q0 = q_numerical_range_sample(&ComplexMatrix::identity(3), 0.0, &s, 10, 4).unwrap();
        assert!(q0.points().iter().all(|p| p.norm() < 1e-7));
    }

    #[test]
    fn q_range_validation() {
        assert_eq!(RankOneRowForm::q_form(3, 1.5), Err(Error::QOutOfRange(1.5)));
        assert!(RankOneRowForm::q_form(3, -0.1).is_err());
        let f = RankOneRowForm::q_form(3, 0.6).unwrap();
        assert!((f.tail_norm - 0.8).abs() < 1e-15);
    }
}
