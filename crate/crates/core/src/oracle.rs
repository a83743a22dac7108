//! Sampling ground truth for the closed forms.
//!
//! Every random quantity comes from [`SeededSampler`], which splits a request
//! into fixed-size chunks. Chunk `k` draws from ChaCha8 seeded with the
//! sampler seed on stream `k`, so a run is reproducible across platforms and
//! thread counts, and the first `n` samples of a larger request are exactly
//! the samples of a request for `n`.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull_2d, hausdorff_distance, Ellipse, PointCloud};
use crate::linalg::{inner, ComplexMatrix, UnitVector, C64};
use crate::search::{coordinate_ascent, RecordFilter};

pub type SampleRng = ChaCha8Rng;

/// Samples per generator stream.
pub const CHUNK: usize = 4096;

/// Deterministic source of random vectors, unitaries and matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeededSampler {
    seed: u64,
}

impl SeededSampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The generator behind chunk `stream`.
    pub fn stream(&self, stream: u64) -> SampleRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// An independent sampler labelled by `label` (splitmix64 mixing).
    pub fn derive(&self, label: u64) -> Self {
        let mut z = self
            .seed
            .wrapping_add(label.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Self::new(z ^ (z >> 31))
    }

    /// `count` draws of `f`, chunked in parallel; output order is the draw order.
    pub fn generate<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut SampleRng) -> T + Sync,
    {
        let chunks = count.div_ceil(CHUNK);
        let parts: Vec<Vec<T>> = (0..chunks)
            .into_par_iter()
            .map(|k| {
                let mut rng = self.stream(k as u64);
                let take = CHUNK.min(count - k * CHUNK);
                (0..take).map(|_| f(&mut rng)).collect()
            })
            .collect();
        parts.into_iter().flatten().collect()
    }

    pub fn unit_vectors(&self, n: usize, count: usize) -> Vec<UnitVector> {
        self.generate(count, |rng| random_unit_vector(rng, n))
    }

    pub fn unitaries(&self, n: usize, count: usize) -> Vec<ComplexMatrix> {
        self.generate(count, |rng| random_unitary(rng, n))
    }

    /// Matrices with independent standard complex-Gaussian entries.
    pub fn gaussian_matrices(&self, n: usize, count: usize) -> Vec<ComplexMatrix> {
        self.generate(count, |rng| random_matrix(rng, n))
    }
}

pub fn gaussian(rng: &mut SampleRng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_matrix(rng: &mut SampleRng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| gaussian(rng))
}

/// Normalized complex-Gaussian vector; rotation invariant.
pub fn random_unit_vector(rng: &mut SampleRng, n: usize) -> UnitVector {
    loop {
        let v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        if let Ok(u) = UnitVector::normalized(v) {
            return u;
        }
    }
}

/// Q factor of a complex-Ginibre matrix with positive diagonal in R.
pub fn random_unitary(rng: &mut SampleRng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        for q in &cols {
            let p = inner(&v, q);
            for (x, y) in v.iter_mut().zip(q) {
                *x -= p * y;
            }
        }
        let r = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if r > 1e-8 {
            cols.push(v.into_iter().map(|z| z / r).collect());
        }
    }
    ComplexMatrix::from_columns(&cols).expect("square")
}

/// `tr(C·U*AU)`.
pub fn orbit_value(a: &ComplexMatrix, c: &ComplexMatrix, u: &ComplexMatrix) -> C64 {
    let x = u.adjoint().mul_unchecked(&a.mul_unchecked(u));
    let n = a.dim();
    let mut s = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s += c[(i, j)] * x[(j, i)];
        }
    }
    s
}

/// `n` values `⟨Ah, h⟩` over sampled unit vectors.
pub fn sample_numerical_range(a: &ComplexMatrix, sampler: &SeededSampler, n: usize) -> PointCloud {
    let dim = a.dim();
    PointCloud::from_vec(sampler.generate(n, |rng| {
        let h = random_unit_vector(rng, dim);
        inner(&a.mul_vec_unchecked(h.components()), h.components())
    }))
}

/// `n` values `tr(C·U*AU)` over sampled unitaries.
pub fn sample_c_numerical_range(
    a: &ComplexMatrix,
    c: &ComplexMatrix,
    sampler: &SeededSampler,
    n: usize,
) -> Result<PointCloud> {
    c.require_dim(a.dim())?;
    let dim = a.dim();
    Ok(PointCloud::from_vec(sampler.generate(n, |rng| {
        orbit_value(a, c, &random_unitary(rng, dim))
    })))
}

/// `⟨Ah, h⟩` for `h = (cos θ, e^{iψ} sin θ)` on a product grid.
///
/// `θ` runs over `n_theta` points of `[0, π/2]` including both ends (only
/// `θ = 0` when `n_theta = 1`); `ψ` over `n_psi` points of `[0, 2π)`.
pub fn exact_grid_2x2(a: &ComplexMatrix, n_theta: usize, n_psi: usize) -> Result<PointCloud> {
    a.require_dim(2)?;
    if n_theta == 0 || n_psi == 0 {
        return Err(Error::Precondition("grid counts must be positive".into()));
    }
    let step = if n_theta > 1 {
        FRAC_PI_2 / (n_theta - 1) as f64
    } else {
        0.0
    };
    let mut points = Vec::with_capacity(n_theta * n_psi);
    for j in 0..n_theta {
        let (s, c) = (j as f64 * step).sin_cos();
        for k in 0..n_psi {
            let z = C64::from_polar(s, 2.0 * PI * k as f64 / n_psi as f64);
            let h = [C64::new(c, 0.0), z];
            points.push(inner(&a.mul_vec_unchecked(&h), &h));
        }
    }
    Ok(PointCloud::from_vec(points))
}

/// Agreement between an analytic ellipse and a sampled region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonReport {
    /// Hausdorff distance between the cloud hull and the polygonized ellipse.
    pub hausdorff: f64,
    /// Largest distance of a sample outside the ellipse.
    pub max_outward_violation: f64,
    pub n_points: usize,
    /// Diameter of the analytic ellipse, for relative thresholds.
    pub diameter: f64,
}

impl ComparisonReport {
    /// Hausdorff distance as a fraction of the diameter (absolute when the
    /// ellipse is a point).
    pub fn relative_hausdorff(&self) -> f64 {
        if self.diameter > 0.0 {
            self.hausdorff / self.diameter
        } else {
            self.hausdorff
        }
    }
}

pub fn compare_region(
    analytic: &Ellipse,
    cloud: &PointCloud,
    boundary_samples: usize,
) -> Result<ComparisonReport> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let max_outward_violation = cloud
        .points()
        .par_iter()
        .map(|&p| analytic.outside_distance(p))
        .reduce(|| 0.0, f64::max);
    let hull = convex_hull_2d(cloud)?;
    let hausdorff = hausdorff_distance(&hull, &analytic.polygon(boundary_samples.max(3)));
    Ok(ComparisonReport {
        hausdorff,
        max_outward_violation,
        n_points: cloud.len(),
        diameter: analytic.diameter(),
    })
}

/// Hausdorff distance between the hulls of two clouds.
pub fn hull_hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    Ok(hausdorff_distance(&convex_hull_2d(a)?, &convex_hull_2d(b)?))
}

/// Tuning of the support searches: raw samples are polished by coordinate
/// ascent whenever they enter the running top `restarts`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AscentConfig {
    pub restarts: usize,
    pub sweeps: usize,
    pub initial_step: f64,
}

impl Default for AscentConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            sweeps: 50,
            initial_step: 0.25,
        }
    }
}

/// Raw scores are scanned in order; polished values of admitted samples
/// are combined with the raw maximum.
pub(crate) fn polished_max<S: Sync>(
    states: &[S],
    raw: &[f64],
    config: &AscentConfig,
    polish: impl Fn(&S) -> f64 + Sync,
) -> f64 {
    let mut filter = RecordFilter::new(config.restarts);
    let admitted: Vec<usize> = (0..raw.len()).filter(|&k| filter.admit(raw[k])).collect();
    let polished = admitted
        .par_iter()
        .map(|&k| polish(&states[k]))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    raw.iter().copied().fold(polished, f64::max)
}

/// Applies a one-parameter unitary move to the columns of `u`: moves
/// `0..n(n-1)` rotate column pairs in the real and imaginary planes, the
/// last `n` rotate the phase of one column.
fn unitary_move(u: &ComplexMatrix, m: usize, delta: f64) -> ComplexMatrix {
    let n = u.dim();
    let pairs = n * (n - 1) / 2;
    let mut out = u.clone();
    if m < 2 * pairs {
        let (mut j, mut k, mut idx) = (0, 1, m / 2);
        while idx > 0 {
            k += 1;
            if k == n {
                j += 1;
                k = j + 1;
            }
            idx -= 1;
        }
        let w = if m.is_multiple_of(2) {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 1.0)
        };
        let (s, c) = delta.sin_cos();
        for r in 0..n {
            let (x, y) = (u[(r, j)], u[(r, k)]);
            out[(r, j)] = x * c + w * y * s;
            out[(r, k)] = -w.conj() * x * s + y * c;
        }
    } else {
        let j = m - 2 * pairs;
        let ph = C64::from_polar(1.0, delta);
        for r in 0..n {
            out[(r, j)] = u[(r, j)] * ph;
        }
    }
    out
}

/// Support of the unitary-orbit cloud in direction `phi`, refined by ascent
/// on the unitary group.
pub fn orbit_support(
    a: &ComplexMatrix,
    c: &ComplexMatrix,
    phi: f64,
    sampler: &SeededSampler,
    n_samples: usize,
    config: &AscentConfig,
) -> Result<f64> {
    Ok(orbit_support_profile(a, c, &[phi], sampler, n_samples, config)?[0])
}

/// [`orbit_support`] at several angles sharing one set of unitaries.
pub fn orbit_support_profile(
    a: &ComplexMatrix,
    c: &ComplexMatrix,
    angles: &[f64],
    sampler: &SeededSampler,
    n_samples: usize,
    config: &AscentConfig,
) -> Result<Vec<f64>> {
    c.require_dim(a.dim())?;
    if n_samples == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    let n = a.dim();
    let unitaries = sampler.unitaries(n, n_samples);
    let values: Vec<C64> = unitaries.par_iter().map(|u| orbit_value(a, c, u)).collect();
    let moves = n * (n - 1) + n;
    Ok(angles
        .iter()
        .map(|&phi| {
            let dir = C64::from_polar(1.0, -phi);
            let raw: Vec<f64> = values.iter().map(|&v| (v * dir).re).collect();
            polished_max(&unitaries, &raw, config, |u| {
                coordinate_ascent(
                    u.clone(),
                    moves,
                    config.sweeps,
                    config.initial_step,
                    unitary_move,
                    |u| (orbit_value(a, c, u) * dir).re,
                )
                .1
            })
        })
        .collect())
}
