//! Dense complex matrices of small dimension.
//!
//! Everything here works on row-major `n x n` matrices of [`C64`]. The 2x2
//! and 3x3 cases get closed-form determinants and a direct Schur step; the
//! general case falls back to Gaussian elimination. Unitary equivalence is
//! tested through trace words (three for 2x2, seven for 3x3).

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

/// Default comparison band `1e-10 * (1 + ‖A‖_HS)`.
pub fn default_tol(a: &ComplexMatrix) -> f64 {
    1e-10 * (1.0 + a.hs_norm())
}

/// Principal argument in (-π, π] with `arg(0) = 0`.
pub fn arg(z: C64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

pub(crate) fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds an `n x n` matrix from row-major entries.
    pub fn new(n: usize, entries: Vec<C64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("dimension must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if !entries.iter().copied().all(is_finite) {
            return Err(Error::NonFinite);
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    /// Real-entry convenience constructor, mostly for fixtures.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![C64::new(1.0, 0.0); n])
    }

    pub fn from_diag(d: &[C64]) -> Self {
        let n = d.len();
        Self::from_fn(n, |i, j| if i == j { d[i] } else { C64::new(0.0, 0.0) })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<C64>]) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::Precondition("columns must all have length n".into()));
        }
        Ok(Self::from_fn(n, |i, j| cols[j][i]))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C64]> {
        self.entries.chunks(self.n)
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn require_dim(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::WrongSize {
                expected: n,
                got: self.n,
            })
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn det(&self) -> C64 {
        let m = |i, j| self[(i, j)];
        match self.n {
            1 => m(0, 0),
            2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
            3 => {
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            _ => self.det_elimination(),
        }
    }

    fn det_elimination(&self) -> C64 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = C64::new(1.0, 0.0);
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&x, &y| a[x * n + k].norm().total_cmp(&a[y * n + k].norm()))
                .unwrap_or(k);
            if a[pivot * n + k].norm() == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[k * n + k];
            det *= p;
            for i in k + 1..n {
                let f = a[i * n + k] / p;
                for j in k..n {
                    let v = a[k * n + j];
                    a[i * n + j] -= f * v;
                }
            }
        }
        det
    }

    pub fn hs_norm_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hs_norm(&self) -> f64 {
        self.hs_norm_sq().sqrt()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| (0..n).map(|k| self[(i, k)] * other[(k, j)]).sum())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|&z| c * z).collect(),
        }
    }

    pub fn mat_sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mat_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `self + shift * I`.
    pub fn shifted(&self, shift: C64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] += shift;
        }
        out
    }

    /// `u* self u`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        Ok(u.adjoint().mat_mul(self)?.mul_unchecked(u))
    }

    pub fn mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.mul_vec_unchecked(x))
    }

    pub(crate) fn mul_vec_unchecked(&self, x: &[C64]) -> Vec<C64> {
        self.rows()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨Ax, x⟩ = Σ_i (Ax)_i conj(x_i)`.
    pub fn quadratic_form(&self, x: &[C64]) -> Result<C64> {
        let ax = self.mul_vec(x)?;
        Ok(inner(&ax, x))
    }

    /// Compression `B* A B` onto the span of the given orthonormal columns.
    pub fn compress(&self, basis: &[Vec<C64>]) -> Result<Self> {
        for b in basis {
            if b.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: b.len(),
                });
            }
        }
        let images: Vec<Vec<C64>> = basis.iter().map(|b| self.mul_vec_unchecked(b)).collect();
        let k = basis.len();
        Ok(Self::from_fn(k, |i, j| inner(&images[j], &basis[i])))
    }

    pub fn max_abs_diagonal(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)].norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.n + j]
    }
}

/// `⟨u, v⟩ = Σ u_i conj(v_i)`, linear in the first slot.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(m: &ComplexMatrix) -> C64 {
    m.trace()
}

pub fn det(m: &ComplexMatrix) -> C64 {
    m.det()
}

pub fn hs_norm_sq(m: &ComplexMatrix) -> f64 {
    m.hs_norm_sq()
}

pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.mat_mul(b)
}

pub fn mat_scale(c: C64, m: &ComplexMatrix) -> ComplexMatrix {
    m.scale(c)
}

pub fn mat_sub(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.mat_sub(b)
}

/// `‖U*U - I‖_HS ≤ tol`.
pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    unitarity_residual(u) <= tol
}

pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let n = u.dim();
    u.adjoint()
        .mul_unchecked(u)
        .mat_sub(&ComplexMatrix::identity(n))
        .map(|d| d.hs_norm())
        .unwrap_or(f64::INFINITY)
}

/// A vector of Euclidean norm 1 (within 1e-12).
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector(Vec<C64>);

impl UnitVector {
    pub fn new(components: Vec<C64>) -> Result<Self> {
        if !components.iter().copied().all(is_finite) {
            return Err(Error::NonFinite);
        }
        let nrm = norm(&components);
        if (nrm - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnitNorm { norm: nrm });
        }
        Ok(Self(components))
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut components: Vec<C64>) -> Result<Self> {
        let nrm = norm(&components);
        if !(nrm.is_finite() && nrm > 0.0) {
            return Err(Error::Precondition("cannot normalize a zero vector".into()));
        }
        for z in &mut components {
            *z /= nrm;
        }
        Ok(Self(components))
    }

    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[k] = C64::new(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[C64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<C64> {
        self.0
    }
}

/// Unitary-equivalence invariants of a 2x2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceInvariants2 {
    pub tr_a: C64,
    pub tr_a2: C64,
    pub tr_aastar: f64,
}

impl TraceInvariants2 {
    pub fn of(a: &ComplexMatrix) -> Result<Self> {
        a.require_dim(2)?;
        let a2 = a.mul_unchecked(a);
        Ok(Self {
            tr_a: a.trace(),
            tr_a2: a2.trace(),
            tr_aastar: a.hs_norm_sq(),
        })
    }

    pub fn as_array(&self) -> [C64; 3] {
        [self.tr_a, self.tr_a2, C64::new(self.tr_aastar, 0.0)]
    }
}

/// The seven trace words that decide unitary equivalence of 3x3 matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceInvariants3 {
    pub tr_a: C64,
    pub tr_a2: C64,
    pub tr_aastar: f64,
    pub tr_a3: C64,
    pub tr_a2_astar: C64,
    pub tr_a2_astar2: f64,
    pub tr_a2_astar2_a_astar: C64,
}

impl TraceInvariants3 {
    pub fn of(a: &ComplexMatrix) -> Result<Self> {
        a.require_dim(3)?;
        let s = a.adjoint();
        let a2 = a.mul_unchecked(a);
        let s2 = s.mul_unchecked(&s);
        let a2s2 = a2.mul_unchecked(&s2);
        let a_s = a.mul_unchecked(&s);
        Ok(Self {
            tr_a: a.trace(),
            tr_a2: a2.trace(),
            tr_aastar: a.hs_norm_sq(),
            tr_a3: a2.mul_unchecked(a).trace(),
            tr_a2_astar: a2.mul_unchecked(&s).trace(),
            tr_a2_astar2: a2s2.trace().re,
            tr_a2_astar2_a_astar: a2s2.mul_unchecked(&a_s).trace(),
        })
    }

    pub fn as_array(&self) -> [C64; 7] {
        [
            self.tr_a,
            self.tr_a2,
            C64::new(self.tr_aastar, 0.0),
            self.tr_a3,
            self.tr_a2_astar,
            C64::new(self.tr_a2_astar2, 0.0),
            self.tr_a2_astar2_a_astar,
        ]
    }
}

/// Agreement of two trace words, relative to their magnitude once it exceeds 1.
///
/// The words have different homogeneity degrees (1 through 6), so an absolute
/// band would be meaningless for large matrices.
pub fn invariants_agree(x: &[C64], y: &[C64], tol: f64) -> bool {
    x.iter().zip(y).all(|(p, q)| {
        let scale = 1.0f64.max(p.norm()).max(q.norm());
        (p - q).norm() <= tol * scale
    })
}

pub fn specht_equivalent_2x2(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    let ia = TraceInvariants2::of(a)?;
    let ib = TraceInvariants2::of(b)?;
    Ok(invariants_agree(&ia.as_array(), &ib.as_array(), tol))
}

pub fn specht_equivalent_3x3(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    let ia = TraceInvariants3::of(a)?;
    let ib = TraceInvariants3::of(b)?;
    Ok(invariants_agree(&ia.as_array(), &ib.as_array(), tol))
}

/// Unitary `u` and upper-triangular `t = u* m u` of a 2x2 matrix.
#[derive(Clone, Debug)]
pub struct Schur2 {
    pub u: ComplexMatrix,
    pub t: ComplexMatrix,
}

/// Completes a unit vector in C² to the unitary `[v, v⊥]` with `v⊥ = (-conj v₂, conj v₁)`.
pub(crate) fn complete_2(v: [C64; 2]) -> ComplexMatrix {
    ComplexMatrix {
        n: 2,
        entries: vec![v[0], -v[1].conj(), v[1], v[0].conj()],
    }
}

pub fn schur_2x2(m: &ComplexMatrix) -> Result<Schur2> {
    m.require_dim(2)?;
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    if c.norm() == 0.0 {
        return Ok(Schur2 {
            u: ComplexMatrix::identity(2),
            t: m.clone(),
        });
    }
    let half = (a - d) * 0.5;
    let mut s = (half * half + b * c).sqrt();
    // λ - d = half + s; pick the branch that keeps it large.
    if (half + s).norm() < (half - s).norm() {
        s = -s;
    }
    let lambda = (a + d) * 0.5 + s;
    // (A - λI)x = 0 from whichever row is better conditioned.
    let row1 = [b, lambda - a];
    let row2 = [lambda - d, c];
    let x = if norm(&row1) >= norm(&row2) {
        row1
    } else {
        row2
    };
    let nx = norm(&x);
    let u = complete_2([x[0] / nx, x[1] / nx]);
    let mut t = m.conjugate_by(&u)?;
    t[(1, 0)] = C64::new(0.0, 0.0);
    Ok(Schur2 { u, t })
}

/// Orthonormal completion of `v` (unit) to a unitary whose first column is `v`.
pub fn complete_to_unitary(v: &[C64]) -> ComplexMatrix {
    let n = v.len();
    let mut cols: Vec<Vec<C64>> = vec![v.to_vec()];
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![C64::new(0.0, 0.0); n];
        e[k] = C64::new(1.0, 0.0);
        for c in &cols {
            let p = inner(&e, c);
            for (x, y) in e.iter_mut().zip(c) {
                *x -= p * y;
            }
        }
        // second pass for orthogonality at the 1e-16 level
        for c in &cols {
            let p = inner(&e, c);
            for (x, y) in e.iter_mut().zip(c) {
                *x -= p * y;
            }
        }
        let nrm = norm(&e);
        if nrm > 1e-6 {
            for x in &mut e {
                *x /= nrm;
            }
            cols.push(e);
        }
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}
