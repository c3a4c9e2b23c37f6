//! Monte Carlo harness for the identities exact arithmetic cannot reach:
//! Haar-unitary averages and compositions with ball automorphisms, which
//! are not polynomial.
//!
//! All sampling is double precision and seed-pinned. Work is split into
//! fixed-size chunks; chunk `i` draws from an independent ChaCha stream
//! derived from `(seed, i)` and partial sums are folded in chunk order, so
//! estimates are bit-for-bit reproducible for a given `(seed, N)` and
//! independent of how chunks are scheduled.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::Bidegree;
use crate::poly::BiPoly;
use crate::sphere::SphereContext;
use crate::zonal::SpherePoint;

const CHUNK: usize = 8192;

/// Statistical acceptance threshold: agreement means within `4 * stderr`.
pub const SIGMA_FACTOR: f64 = 4.0;

/// Absolute floor for a "nonzero" claim, so vacuously tiny estimates with
/// tiny errors cannot pass.
pub const NONZERO_FLOOR: f64 = 1e-3;

/// Absolute allowance on agreement checks for the cases where the sampled
/// values are constant up to machine rounding and the standard error
/// collapses below floating-point resolution.
pub const ABS_EPS: f64 = 1e-12;

/// A Monte Carlo value with its standard error.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadEstimate {
    pub re: f64,
    pub im: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl QuadEstimate {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// |estimate - expected| <= 4 stderr (plus the machine-rounding
    /// allowance [`ABS_EPS`]).
    pub fn agrees_with(&self, expected: Complex64) -> bool {
        (self.value() - expected).norm() <= SIGMA_FACTOR * self.stderr + ABS_EPS
    }

    pub fn is_zero_within_tolerance(&self) -> bool {
        self.agrees_with(Complex64::new(0.0, 0.0))
    }

    /// Nonzero beyond both the statistical threshold and the absolute floor.
    pub fn is_nonzero(&self) -> bool {
        let mag = self.value().norm();
        mag > SIGMA_FACTOR * self.stderr && mag > NONZERO_FLOOR
    }
}

fn fold_chunks(
    samples: usize,
    eval: impl Fn(usize, &mut ChaCha8Rng) -> (Complex64, f64, usize) + Send + Sync,
    seed: u64,
) -> QuadEstimate {
    assert!(samples >= 2, "need at least two samples");
    let chunks: Vec<(usize, usize)> = (0..samples)
        .step_by(CHUNK)
        .map(|start| (start / CHUNK, CHUNK.min(samples - start)))
        .collect();
    let partials: Vec<(Complex64, f64, usize)> = chunks
        .par_iter()
        .map(|&(index, len)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64 + 1);
            eval(len, &mut rng)
        })
        .collect();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    let mut count = 0usize;
    for (s, sq, c) in partials {
        sum += s;
        sum_sq += sq;
        count += c;
    }
    let n = count as f64;
    let mean = sum / n;
    // Sample variance of the complex values around the mean.
    let var = ((sum_sq - sum.norm_sqr() / n) / (n - 1.0)).max(0.0);
    QuadEstimate {
        re: mean.re,
        im: mean.im,
        stderr: (var / n).sqrt(),
        samples: count,
    }
}

/// Deterministic sampler for sphere points and Haar unitaries.
#[derive(Debug, Clone, Copy)]
pub struct HaarSampler {
    pub seed: u64,
    pub n: usize,
}

impl HaarSampler {
    pub fn new(seed: u64, n: usize) -> Self {
        assert!(n >= 1);
        HaarSampler { seed, n }
    }

    /// Standard complex Gaussian via Box-Muller.
    fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(r * theta.cos(), r * theta.sin())
    }

    /// Uniform point on the sphere: a normalized complex Gaussian vector.
    pub fn sphere_point(&self, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
        loop {
            let v: Vec<Complex64> = (0..self.n).map(|_| Self::gaussian(rng)).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }

    /// Haar-distributed unitary: orthonormalize a square complex Gaussian
    /// matrix. Gram-Schmidt is QR with the diagonal of the triangular
    /// factor already normalized to positive reals, which is the phase
    /// convention that makes the distribution Haar. Returned row-major.
    pub fn haar_unitary(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
        let n = self.n;
        loop {
            let mut cols: Vec<Vec<Complex64>> = (0..n)
                .map(|_| (0..n).map(|_| Self::gaussian(rng)).collect())
                .collect();
            let mut ok = true;
            for k in 0..n {
                // Two orthogonalization passes for numerical hygiene.
                for _ in 0..2 {
                    for prev in 0..k {
                        let dot: Complex64 = (0..n)
                            .map(|i| cols[k][i] * cols[prev][i].conj())
                            .sum();
                        for i in 0..n {
                            let sub = dot * cols[prev][i];
                            cols[k][i] -= sub;
                        }
                    }
                }
                let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-8 {
                    ok = false;
                    break;
                }
                for i in 0..n {
                    cols[k][i] /= norm;
                }
            }
            if !ok {
                continue;
            }
            // Transpose columns to row-major U.
            return (0..n)
                .map(|i| (0..n).map(|j| cols[j][i]).collect())
                .collect();
        }
    }
}

pub fn apply_matrix(u: &[Vec<Complex64>], z: &[Complex64]) -> Vec<Complex64> {
    u.iter()
        .map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum())
        .collect()
}

/// `|| U U* - I ||` in the Frobenius norm.
pub fn unitarity_defect(u: &[Vec<Complex64>]) -> f64 {
    let n = u.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let dot: Complex64 = (0..n).map(|k| u[i][k] * u[j][k].conj()).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            acc += (dot - target).norm_sqr();
        }
    }
    acc.sqrt()
}

/// The involutive automorphism of the ball exchanging 0 and `a`:
/// `phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>)` with `P_a` the
/// projection onto the span of `a`, `Q_a = I - P_a`, and
/// `s_a = sqrt(1 - |a|^2)`. For `a = 0` the formula degenerates to the
/// unitary `z -> -z`, kept as the continuous limit.
#[derive(Debug, Clone)]
pub struct BallAutomorphism {
    a: Vec<Complex64>,
    a_norm_sq: f64,
    s: f64,
}

impl BallAutomorphism {
    pub fn new(a: Vec<Complex64>) -> Result<Self> {
        let a_norm_sq: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        if a_norm_sq >= 1.0 {
            return Err(Error::ParameterOutsideBall);
        }
        Ok(BallAutomorphism {
            s: (1.0 - a_norm_sq).sqrt(),
            a,
            a_norm_sq,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn parameter(&self) -> &[Complex64] {
        &self.a
    }

    pub fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        assert_eq!(z.len(), self.a.len());
        if self.a_norm_sq == 0.0 {
            return Ok(z.iter().map(|v| -v).collect());
        }
        // <z, a> with the conjugation on the second slot.
        let inner: Complex64 = z.iter().zip(&self.a).map(|(zj, aj)| zj * aj.conj()).sum();
        let denom = Complex64::new(1.0, 0.0) - inner;
        if denom.norm() < 1e-14 {
            return Err(Error::SingularDenominator);
        }
        let scale = inner / self.a_norm_sq;
        Ok(self
            .a
            .iter()
            .zip(z)
            .map(|(aj, zj)| {
                let proj = scale * aj;
                let orth = zj - proj;
                (aj - proj - self.s * orth) / denom
            })
            .collect())
    }
}

/// Mean of `f` over `N` uniform sphere points, with standard error.
pub fn mc_integrate<F>(f: F, sampler: &HaarSampler, samples: usize) -> QuadEstimate
where
    F: Fn(&[Complex64]) -> Complex64 + Send + Sync + Copy,
{
    fold_chunks(
        samples,
        |len, rng| {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sum_sq = 0.0;
            for _ in 0..len {
                let z = sampler.sphere_point(rng);
                let v = f(&z);
                sum += v;
                sum_sq += v.norm_sqr();
            }
            (sum, sum_sq, len)
        },
        sampler.seed,
    )
}

/// Haar-average identity data: the Monte Carlo mean of `f(U z)` over Haar
/// unitaries next to the exact `∫ f dσ` rendered to floating point. The two
/// agree within `4 * stderr` when the identity holds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HaarAverage {
    pub estimate: QuadEstimate,
    pub exact_re: f64,
    pub exact_im: f64,
}

impl HaarAverage {
    pub fn agrees(&self) -> bool {
        self.estimate
            .agrees_with(Complex64::new(self.exact_re, self.exact_im))
    }
}

pub fn haar_average_check(
    ctx: &SphereContext,
    f: &BiPoly,
    z: &[Complex64],
    sampler: &HaarSampler,
    samples: usize,
) -> Result<HaarAverage> {
    if f.dim() != ctx.dim() || z.len() != ctx.dim() {
        return Err(Error::DimensionMismatch {
            expected: ctx.dim(),
            found: f.dim().max(z.len()),
        });
    }
    let exact = ctx.integrate(f)?.to_complex64();
    let z_owned: Vec<Complex64> = z.to_vec();
    let z_ref = &z_owned;
    let estimate = fold_chunks(
        samples,
        move |len, rng| {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sum_sq = 0.0;
            for _ in 0..len {
                let u = sampler.haar_unitary(rng);
                let v = f.eval_complex(&apply_matrix(&u, z_ref));
                sum += v;
                sum_sq += v.norm_sqr();
            }
            (sum, sum_sq, len)
        },
        sampler.seed,
    );
    Ok(HaarAverage {
        estimate,
        exact_re: exact.re,
        exact_im: exact.im,
    })
}

/// Estimates the (p,q)-component of `f` at the reference point `z0` by
/// integrating `f · conj(K_{z0})` with Monte Carlo; the kernel comes from
/// the exact engine and is evaluated in floating point.
pub fn mc_project<F>(
    ctx: &SphereContext,
    f: F,
    bd: Bidegree,
    z0: &SpherePoint,
    sampler: &HaarSampler,
    samples: usize,
) -> Result<QuadEstimate>
where
    F: Fn(&[Complex64]) -> Complex64 + Send + Sync + Copy,
{
    let kernel = ctx.zonal_kernel(bd, z0)?.kernel;
    let kernel_ref = &kernel;
    Ok(mc_integrate(
        move |z| f(z) * kernel_ref.eval_complex(z).conj(),
        sampler,
        samples,
    ))
}

/// Evidence that composing H(p,q) with a ball automorphism reaches the
/// neighbor spaces H(p-1,q) and H(p+1,q).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LadderTarget {
    pub target: Bidegree,
    pub estimates: Vec<QuadEstimate>,
    /// Index of a basis element whose component at `target` passes the
    /// nonzero thresholds, if any.
    pub nonzero_witness: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoebiusLadderReport {
    pub bidegree: Bidegree,
    pub down: LadderTarget,
    pub up: LadderTarget,
    /// For holomorphic sources (q = 0): estimates of components with
    /// `q' > 0`, all of which must vanish statistically.
    pub conjugate_components: Vec<(Bidegree, QuadEstimate)>,
}

impl MoebiusLadderReport {
    /// Both neighbors witnessed (when expected) and no spurious conjugate
    /// component.
    pub fn conjugates_vanish(&self) -> bool {
        self.conjugate_components
            .iter()
            .all(|(_, e)| e.is_zero_within_tolerance())
    }
}

/// For each basis element `f` of H(p,q), estimates the components of
/// `f ∘ phi_a` at the ladder neighbors `(p-1, q)` and `(p+1, q)`, plus the
/// `q' > 0` components when the source is holomorphic.
pub fn moebius_ladder_evidence(
    ctx: &SphereContext,
    bd: Bidegree,
    phi: &BallAutomorphism,
    z0: &SpherePoint,
    sampler: &HaarSampler,
    samples: usize,
) -> Result<MoebiusLadderReport> {
    assert!(bd.p >= 1, "ladder evidence needs p >= 1");
    let space = ctx.harmonic_basis(bd);
    let estimate_target = |target: Bidegree| -> Result<LadderTarget> {
        let mut estimates = Vec::new();
        let mut nonzero_witness = None;
        for (i, f) in space.basis().iter().enumerate() {
            let f_ref = f;
            let est = mc_project(
                ctx,
                move |z: &[Complex64]| {
                    let w = phi.apply(z).expect("automorphism singular on sphere sample");
                    f_ref.eval_complex(&w)
                },
                target,
                z0,
                sampler,
                samples,
            )?;
            if nonzero_witness.is_none() && est.is_nonzero() {
                nonzero_witness = Some(i);
            }
            estimates.push(est);
        }
        Ok(LadderTarget {
            target,
            estimates,
            nonzero_witness,
        })
    };

    let down = estimate_target(Bidegree::new(bd.p - 1, bd.q))?;
    let up = estimate_target(Bidegree::new(bd.p + 1, bd.q))?;

    let mut conjugate_components = Vec::new();
    if bd.q == 0 {
        // Holomorphic compose holomorphic: every q' > 0 component vanishes.
        let mut targets = vec![Bidegree::new(bd.p, 1), Bidegree::new(0, 1)];
        if bd.p > 1 {
            targets.push(Bidegree::new(bd.p - 1, 1));
        }
        for target in targets {
            let f = &space.basis()[0];
            let est = mc_project(
                ctx,
                move |z: &[Complex64]| {
                    let w = phi.apply(z).expect("automorphism singular on sphere sample");
                    f.eval_complex(&w)
                },
                target,
                z0,
                sampler,
                samples,
            )?;
            conjugate_components.push((target, est));
        }
    }

    Ok(MoebiusLadderReport {
        bidegree: bd,
        down,
        up,
        conjugate_components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_integrates_exactly() {
        let sampler = HaarSampler::new(7, 2);
        let est = mc_integrate(|_| c(1.0, 0.0), &sampler, 1000);
        assert_eq!(est.value(), c(1.0, 0.0));
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn second_and_fourth_moments() {
        let sampler = HaarSampler::new(42, 2);
        let est = mc_integrate(|z| c(z[0].norm_sqr(), 0.0), &sampler, 100_000);
        assert!(est.agrees_with(c(0.5, 0.0)), "got {:?}", est);
        let est = mc_integrate(|z| c(z[0].norm_sqr().powi(2), 0.0), &sampler, 100_000);
        assert!(
            est.agrees_with(c(1.0 / 3.0, 0.0)),
            "MC fourth moment {:?} vs exact 1/3",
            est
        );
    }

    #[test]
    fn estimates_reproducible_bit_for_bit() {
        let sampler = HaarSampler::new(1234, 3);
        let a = mc_integrate(|z| z[0] * z[1].conj(), &sampler, 50_000);
        let b = mc_integrate(|z| z[0] * z[1].conj(), &sampler, 50_000);
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }

    #[test]
    fn haar_unitaries_are_unitary() {
        let sampler = HaarSampler::new(5, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let u = sampler.haar_unitary(&mut rng);
            assert!(unitarity_defect(&u) <= 1e-12);
        }
    }

    #[test]
    fn automorphism_invariants() {
        let phi = BallAutomorphism::new(vec![c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        // phi(0) = a.
        let img = phi.apply(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((img[0] - c(0.5, 0.0)).norm() < 1e-15);
        // phi(a) = 0.
        let img = phi.apply(&[c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(img.iter().all(|v| v.norm() < 1e-14));
        // Direct boundary evaluation: phi((1,0)) = (-1, 0).
        let img = phi.apply(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((img[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!(img[1].norm() < 1e-14);
    }

    #[test]
    fn automorphism_involution_and_boundary_statistical() {
        // 100 random (a, z) pairs: involution, sphere preservation, and the
        // exchange identities, all to 1e-12.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let sampler = HaarSampler::new(99, 2);
        for _ in 0..100 {
            let a: Vec<Complex64> = sampler
                .sphere_point(&mut rng)
                .into_iter()
                .map(|v| v * rng.gen_range(0.0..0.95))
                .collect();
            let phi = BallAutomorphism::new(a.clone()).unwrap();
            let zero = vec![c(0.0, 0.0); 2];
            let at_zero = phi.apply(&zero).unwrap();
            assert!(at_zero
                .iter()
                .zip(&a)
                .all(|(x, y)| (x - y).norm() < 1e-12));
            let at_a = phi.apply(&a).unwrap();
            assert!(at_a.iter().all(|v| v.norm() < 1e-12));

            let z = sampler.sphere_point(&mut rng);
            let w = phi.apply(&z).unwrap();
            let norm: f64 = w.iter().map(|v| v.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            let back = phi.apply(&w).unwrap();
            let err: f64 = back
                .iter()
                .zip(&z)
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn zero_parameter_is_minus_identity() {
        let phi = BallAutomorphism::new(vec![c(0.0, 0.0); 2]).unwrap();
        let img = phi.apply(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert_eq!(img[0], c(-0.6, 0.0));
        assert_eq!(img[1], c(-0.0, -0.8));
    }

    #[test]
    fn parameter_outside_ball_rejected() {
        assert!(BallAutomorphism::new(vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn haar_average_of_odd_function_vanishes() {
        let ctx = SphereContext::new(2);
        let sampler = HaarSampler::new(11, 2);
        let f = BiPoly::variable(2, 0);
        let check = haar_average_check(
            &ctx,
            &f,
            &[c(1.0, 0.0), c(0.0, 0.0)],
            &sampler,
            20_000,
        )
        .unwrap();
        assert!(check.exact_re == 0.0 && check.exact_im == 0.0);
        assert!(check.agrees(), "{:?}", check);
    }

    #[test]
    fn mc_project_recovers_reproducing_value() {
        // f = z1 against H(1,0) at z0 = (1,0): K = 2 w1, <z1, K> = 1.
        let ctx = SphereContext::new(2);
        let sampler = HaarSampler::new(21, 2);
        let z0 = SpherePoint::base(2);
        let est = mc_project(
            &ctx,
            |z: &[Complex64]| z[0],
            Bidegree::new(1, 0),
            &z0,
            &sampler,
            100_000,
        )
        .unwrap();
        assert!(est.agrees_with(c(1.0, 0.0)), "{:?}", est);
        // Holomorphic f has no (0,1) component.
        let est = mc_project(
            &ctx,
            |z: &[Complex64]| z[0],
            Bidegree::new(0, 1),
            &z0,
            &sampler,
            100_000,
        )
        .unwrap();
        assert!(est.is_zero_within_tolerance(), "{:?}", est);
    }

    #[test]
    fn quad_estimate_nonzero_needs_floor() {
        let tiny = QuadEstimate {
            re: 1e-5,
            im: 0.0,
            stderr: 1e-9,
            samples: 10,
        };
        assert!(!tiny.is_nonzero());
        let real = QuadEstimate {
            re: 0.3,
            im: 0.0,
            stderr: 0.01,
            samples: 10,
        };
        assert!(real.is_nonzero());
    }

    #[test]
    fn gauss_zero_mean_sanity() {
        // The Box-Muller stream is centered: mean of many draws is small.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut sum = Complex64::zero();
        let count = 20_000;
        for _ in 0..count {
            sum += HaarSampler::gaussian(&mut rng);
        }
        assert!((sum / count as f64).norm() < 0.05);
    }
}
