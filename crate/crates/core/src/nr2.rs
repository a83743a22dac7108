//! Numerical ranges of 2x2 matrices.
//!
//! Every 2x2 matrix is first centred at `tr(A)/2` and rotated so that the
//! determinant of the centred matrix is real and nonpositive. A unitary
//! change of basis then brings it to the hot form `[[0, b], [c, 0]]` with
//! `b ≥ c ≥ 0`, whose numerical range is the ellipse with semi-axes
//! `(b+c)/2` and `(b-c)/2`. The same reduction drives the inverse problem:
//! given `p ∈ W(A)`, build a unit `h` with `⟨Ah, h⟩ = p`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::geometry::Ellipse;
use crate::linalg::{arg, complete_2, default_tol, schur_2x2, ComplexMatrix, UnitVector, C64};

/// Reduced form `witness* (e^{iθ}(A - center)) witness = [[0, b], [c, 0]]`.
#[derive(Clone, Debug)]
pub struct HotForm2 {
    pub b: f64,
    pub c: f64,
    pub theta: f64,
    pub center: C64,
    pub witness: ComplexMatrix,
}

impl HotForm2 {
    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => C64::new(self.b, 0.0),
            (1, 0) => C64::new(self.c, 0.0),
            _ => C64::new(0.0, 0.0),
        })
    }

    /// Semi-axes `((b+c)/2, (b-c)/2)` of the centred, unrotated range.
    pub fn semi_axes(&self) -> (f64, f64) {
        (0.5 * (self.b + self.c), 0.5 * (self.b - self.c))
    }

    pub fn ellipse(&self) -> Ellipse {
        let (u, v) = self.semi_axes();
        Ellipse::new(self.center, u, v, -self.theta)
    }
}

/// Centred and rotated copy of a 2x2 matrix.
#[derive(Clone, Debug)]
pub struct Centered2 {
    pub a0: ComplexMatrix,
    pub theta: f64,
    pub center: C64,
}

/// `θ = (π - arg det(A - tr(A)/2)) / 2`, `A₀ = e^{iθ}(A - tr(A)/2)`.
pub fn center_and_rotate(a: &ComplexMatrix) -> Result<Centered2> {
    a.require_dim(2)?;
    let center = a.trace() * 0.5;
    let shifted = a.shifted(-center);
    let theta = 0.5 * (PI - arg(shifted.det()));
    let mut a0 = shifted.scale(C64::from_polar(1.0, theta));
    // exact zero trace
    let mid = a0.trace() * 0.5;
    a0[(0, 0)] -= mid;
    a0[(1, 1)] -= mid;
    Ok(Centered2 { a0, theta, center })
}

/// Unitary reduction of a traceless `a0` with real nonpositive determinant.
///
/// The returned form has `theta = 0` and `center = 0`; callers that start
/// from a general matrix use [`hot_form`].
pub fn hot_form_reduce(a0: &ComplexMatrix) -> Result<HotForm2> {
    a0.require_dim(2)?;
    let scale = 1.0 + a0.hs_norm_sq();
    let tr = a0.trace();
    let det = a0.det();
    if tr.norm() > 1e-10 * (1.0 + a0.hs_norm()) {
        return Err(Error::Precondition(format!(
            "matrix is not traceless (trace {tr})"
        )));
    }
    if det.im.abs() > 1e-10 * scale || det.re > 1e-10 * scale {
        return Err(Error::Precondition(format!(
            "determinant must be real and nonpositive (det {det})"
        )));
    }

    let mut witness = if a0[(0, 0)].norm() <= 1e-15 * (1.0 + a0.hs_norm()) {
        // diagonal already zero
        ComplexMatrix::identity(2)
    } else {
        // [[λ, y], [0, -λ]]
        let schur = schur_2x2(a0)?;
        let lambda = 0.5 * (schur.t[(0, 0)] - schur.t[(1, 1)]);
        let y = schur.t[(0, 1)];

        // unit v with ⟨Tv, v⟩ = 0
        let v = if lambda.norm() == 0.0 {
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
        } else if y.norm() == 0.0 {
            [C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0)]
        } else {
            let t = 0.5 * (2.0 * lambda.norm()).atan2(y.norm());
            let phase = -lambda * y.conj() / (lambda.norm() * y.norm());
            [C64::new(t.cos(), 0.0), phase * t.sin()]
        };
        schur.u.mul_unchecked(&complete_2(v))
    };
    let off = a0.conjugate_by(&witness)?;
    let (x, yp) = (off[(0, 1)], off[(1, 0)]);

    // diag(1, e^{iφ}) turns both off-diagonal entries real and nonnegative
    let phi = if x.norm() >= yp.norm() {
        -arg(x)
    } else {
        arg(yp)
    };
    let phase = ComplexMatrix::from_diag(&[C64::new(1.0, 0.0), C64::from_polar(1.0, phi)]);
    witness = witness.mul_unchecked(&phase);
    let mut b = (x * C64::from_polar(1.0, phi)).norm();
    let mut c = (yp * C64::from_polar(1.0, -phi)).norm();
    if b < c {
        let swap = ComplexMatrix::from_fn(2, |i, j| C64::new(if i != j { 1.0 } else { 0.0 }, 0.0));
        witness = witness.mul_unchecked(&swap);
        std::mem::swap(&mut b, &mut c);
    }
    Ok(HotForm2 {
        b,
        c,
        theta: 0.0,
        center: C64::new(0.0, 0.0),
        witness,
    })
}

/// Hot form of an arbitrary 2x2 matrix.
pub fn hot_form(a: &ComplexMatrix) -> Result<HotForm2> {
    let Centered2 { a0, theta, center } = center_and_rotate(a)?;
    let form = hot_form_reduce(&a0)?;
    Ok(HotForm2 {
        theta,
        center,
        ..form
    })
}

/// The elliptical numerical range of a 2x2 matrix.
pub fn numerical_range_2x2(a: &ComplexMatrix) -> Result<Ellipse> {
    Ok(hot_form(a)?.ellipse())
}

/// Semi-axes from the radical formulas
/// `sqrt(‖A₀‖²/4 ∓ det(A₀)/2)`, used as an independent cross-check.
pub fn radical_semi_axes(a: &ComplexMatrix) -> Result<(f64, f64)> {
    let Centered2 { a0, .. } = center_and_rotate(a)?;
    let hs = a0.hs_norm_sq();
    let det = a0.det().re;
    Ok((
        (0.25 * hs - 0.5 * det).max(0.0).sqrt(),
        (0.25 * hs + 0.5 * det).max(0.0).sqrt(),
    ))
}

/// `2|p(tr A - p) - det A| ≤ ‖A‖²_HS - |p|² - |tr A - p|²`, with additive slack `tol`.
pub fn membership_specht(a: &ComplexMatrix, p: C64, tol: f64) -> Result<bool> {
    a.require_dim(2)?;
    let tr = a.trace();
    let lhs = 2.0 * (p * (tr - p) - a.det()).norm();
    let rhs = a.hs_norm_sq() - p.norm_sqr() - (tr - p).norm_sqr();
    Ok(lhs <= rhs + tol)
}

/// Point expressed in the hot-form frame: `p₀ = e^{iθ}(p - center)`.
fn to_hot_frame(form: &HotForm2, p: C64) -> C64 {
    C64::from_polar(1.0, form.theta) * (p - form.center)
}

fn scale_in_form(form: &HotForm2, p: C64, tol: f64) -> Result<f64> {
    let (u, v) = form.semi_axes();
    let p0 = to_hot_frame(form, p);
    if u <= tol {
        return if p0.norm() <= tol {
            Ok(0.0)
        } else {
            Err(Error::OutsideRange {
                scale: f64::INFINITY,
            })
        };
    }
    if v <= tol {
        return if p0.im.abs() <= tol {
            Ok(p0.re.abs() / u)
        } else {
            Err(Error::OutsideRange {
                scale: f64::INFINITY,
            })
        };
    }
    Ok(((p0.re / u).powi(2) + (p0.im / v).powi(2)).sqrt())
}

/// Factor `r` with `p ∈ center + r·∂W(A)`; `r ≤ 1` exactly when `p ∈ W(A)`.
///
/// Segment and point ranges only admit points on their supporting line
/// (within the default tolerance) and report [`Error::OutsideRange`] otherwise.
pub fn concentric_scale(a: &ComplexMatrix, p: C64) -> Result<f64> {
    let form = hot_form(a)?;
    scale_in_form(&form, p, default_tol(a))
}

/// Unit vector solving the inverse problem, with the parameters that built it.
#[derive(Clone, Debug)]
pub struct InverseSolution {
    pub vector: UnitVector,
    /// Concentric scale `r = sin 2θ₁`.
    pub scale: f64,
    pub theta1: f64,
    /// Unimodular `z = e^{iψ}` for the hot-form vector `(cos θ₁, z sin θ₁)`.
    pub phase: C64,
}

/// Roots of `α z² + β z + γ` without cancellation.
fn quadratic_roots(alpha: C64, beta: C64, gamma: C64) -> [C64; 2] {
    let disc = (beta * beta - alpha * gamma * 4.0).sqrt();
    let sign = if (beta.conj() * disc).re >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let q = -(beta + disc * sign) * 0.5;
    if q.norm() == 0.0 {
        return [C64::new(0.0, 0.0); 2];
    }
    [q / alpha, gamma / q]
}

pub fn inverse_numerical_range_detailed(
    a: &ComplexMatrix,
    p: C64,
    tol: f64,
) -> Result<InverseSolution> {
    let form = hot_form(a)?;
    let mut r = match scale_in_form(&form, p, tol) {
        Ok(r) => r,
        Err(Error::OutsideRange { .. }) if !membership_specht(a, p, tol)? => {
            return Err(Error::OutsideRange {
                scale: f64::INFINITY,
            })
        }
        Err(e) => return Err(e),
    };
    if r > 1.0 + tol {
        return Err(Error::OutsideRange { scale: r });
    }
    r = r.min(1.0);
    let e1 = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    if r == 0.0 {
        let h = form.witness.mul_vec_unchecked(&e1);
        return Ok(InverseSolution {
            vector: UnitVector::normalized(h)?,
            scale: 0.0,
            theta1: 0.0,
            phase: C64::new(1.0, 0.0),
        });
    }
    let p0 = to_hot_frame(&form, p);
    let theta1 = 0.5 * r.asin();
    // (r/2)(b z + c/z) = p0  ⇔  b z² - (2 p0 / r) z + c = 0
    let roots = quadratic_roots(
        C64::new(form.b, 0.0),
        -p0 * (2.0 / r),
        C64::new(form.c, 0.0),
    );
    let z = roots
        .into_iter()
        .min_by(|x, y| (x.norm() - 1.0).abs().total_cmp(&(y.norm() - 1.0).abs()))
        .expect("two roots");
    let z = if z.norm() > 0.0 {
        z / z.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let h0 = vec![C64::new(theta1.cos(), 0.0), z * theta1.sin()];
    let h = form.witness.mul_vec_unchecked(&h0);
    Ok(InverseSolution {
        vector: UnitVector::normalized(h)?,
        scale: r,
        theta1,
        phase: z,
    })
}

/// Unit `h` with `⟨Ah, h⟩ = p` for `p ∈ W(A)`.
pub fn inverse_numerical_range(a: &ComplexMatrix, p: C64, tol: f64) -> Result<UnitVector> {
    Ok(inverse_numerical_range_detailed(a, p, tol)?.vector)
}

/// `det(A*A - AA*)`; nonzero certifies that a 3x3 `A` is not unitarily a 2⊕1 direct sum.
pub fn direct_sum_obstruction(a: &ComplexMatrix) -> Result<C64> {
    a.require_dim(3)?;
    let s = a.adjoint();
    Ok(s.mul_unchecked(a).mat_sub(&a.mul_unchecked(&s))?.det())
}
