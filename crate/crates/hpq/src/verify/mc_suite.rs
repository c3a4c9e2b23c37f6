//! Statistical suite: Monte Carlo quadrature against the exact integrals,
//! Haar sampling quality, the Haar-average identity, and the Mobius ladder
//! evidence. All checks are pinned to the run's seed.

use num_complex::Complex64;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CheckResult, VerifyOptions};
use crate::mc::{
    haar_average_check, mc_integrate, mc_project, moebius_ladder_evidence, unitarity_defect,
    BallAutomorphism, HaarSampler,
};
use crate::pattern::Bidegree;
use crate::poly::BiPoly;
use crate::sphere::SphereContext;
use crate::zonal::SpherePoint;
use crate::Rational;

pub(super) fn run(opts: &VerifyOptions) -> Vec<CheckResult> {
    vec![
        monomial_quadrature(opts),
        haar_unitarity(opts),
        column_phase_invariance(opts),
        haar_average_identity(opts),
        mobius_projection(opts),
        mobius_ladder(opts),
    ]
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Monte Carlo means of every monomial with |alpha|, |beta| <= 3 agree with
/// the closed-form integral within 4 standard errors.
pub(super) fn monomial_quadrature(opts: &VerifyOptions) -> CheckResult {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in 1..=3usize {
        let ctx = SphereContext::new(n);
        let sampler = HaarSampler::new(opts.seed, n);
        let mut alphas = Vec::new();
        for d in 0..=3u32 {
            alphas.extend(
                ctx.monomial_basis(d, 0)
                    .monomials
                    .iter()
                    .map(|m| m.alpha.clone())
                    .collect::<Vec<_>>(),
            );
        }
        for a in &alphas {
            for b in &alphas {
                let mono = crate::multiindex::BiMonomial::new(a.clone(), b.clone());
                let f = BiPoly::monomial(n, mono.clone(), One::one());
                let exact = ctx.integrate_monomial(a, b);
                let est = mc_integrate(
                    |z| f.eval_complex(z),
                    &sampler,
                    opts.samples,
                );
                checked += 1;
                let exact_c = c(
                    num_traits::ToPrimitive::to_f64(&exact).unwrap(),
                    0.0,
                );
                if !est.agrees_with(exact_c) {
                    failures.push(format!(
                        "n={} {}: est ({:.5},{:.5})±{:.5} vs exact {:.5}",
                        n, mono, est.re, est.im, est.stderr, exact_c.re
                    ));
                }
            }
        }
    }
    CheckResult::new(
        "mc/monomial-quadrature",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} monomials within 4 stderr of the exact integral", checked)
        } else {
            format!("failures: {}", failures.join("; "))
        },
    )
}

/// Every sampled unitary satisfies ||U U* - I|| <= 1e-12.
fn haar_unitarity(opts: &VerifyOptions) -> CheckResult {
    let mut worst: f64 = 0.0;
    for n in 1..=3usize {
        let sampler = HaarSampler::new(opts.seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..200 {
            let u = sampler.haar_unitary(&mut rng);
            worst = worst.max(unitarity_defect(&u));
        }
    }
    CheckResult::new(
        "mc/haar-unitarity",
        worst <= 1e-12,
        format!("worst defect {:.3e} over 600 samples", worst),
    )
}

/// Right-multiplying the sampled unitaries by a fixed diagonal phase leaves
/// Haar averages unchanged statistically. The start point has two nonzero
/// coordinates so the phase matrix is not a global scalar on it.
fn column_phase_invariance(opts: &VerifyOptions) -> CheckResult {
    let n = 2;
    let ctx = SphereContext::new(n);
    let sampler = HaarSampler::new(opts.seed, n);
    let f = crate::parse::parse_poly("z1^2*w1^2 + z1*w2", n).unwrap();
    let z0 = vec![c(0.6, 0.0), c(0.8, 0.0)];
    let phases = [c(0.0, 1.0), c(-1.0, 0.0)];
    let base = haar_average_check(&ctx, &f, &z0, &sampler, opts.samples).unwrap();
    // f(U D z0) averages the same functional from the rotated start point.
    let rotated: Vec<Complex64> = z0.iter().zip(&phases).map(|(z, p)| z * p).collect();
    let shifted = haar_average_check(&ctx, &f, &rotated, &sampler, opts.samples).unwrap();
    let tol = 4.0 * (base.estimate.stderr.powi(2) + shifted.estimate.stderr.powi(2)).sqrt();
    let diff = (base.estimate.value() - shifted.estimate.value()).norm();
    CheckResult::new(
        "mc/column-phase-invariance",
        diff > 0.0 && diff <= tol && base.agrees() && shifted.agrees(),
        format!("|avg difference| = {:.2e} <= {:.2e}", diff, tol),
    )
}

/// The Haar-average identity: mean of f(U z) over Haar unitaries equals
/// ∫ f dσ, for a constant, for |z1|^4, and for the odd function z1.
fn haar_average_identity(opts: &VerifyOptions) -> CheckResult {
    let n = 2;
    let ctx = SphereContext::new(n);
    let sampler = HaarSampler::new(opts.seed, n);
    let z = vec![c(0.6, 0.0), c(0.0, 0.8)];
    let mut ok = true;
    let mut details = Vec::new();

    // f = 1 is exactly representable: both sides equal with stderr 0.
    let one = BiPoly::one(n);
    let chk = haar_average_check(&ctx, &one, &z, &sampler, opts.samples.min(10_000)).unwrap();
    ok &= chk.estimate.value() == c(1.0, 0.0) && chk.estimate.stderr == 0.0;
    details.push(format!("f=1: stderr {:.1e}", chk.estimate.stderr));

    let constant = BiPoly::constant(n, crate::gauss::GaussRational::from_ratio(7, 3));
    let chk = haar_average_check(&ctx, &constant, &z, &sampler, opts.samples.min(10_000)).unwrap();
    ok &= chk.agrees();
    details.push(format!("f=7/3: stderr {:.1e}", chk.estimate.stderr));

    let f = crate::parse::parse_poly("z1^2*w1^2", n).unwrap();
    let chk = haar_average_check(&ctx, &f, &z, &sampler, opts.samples).unwrap();
    ok &= chk.agrees();
    ok &= (chk.exact_re - 1.0 / 3.0).abs() < 1e-15;
    details.push(format!(
        "|z1|^4: est {:.5}±{:.5} vs 1/3",
        chk.estimate.re, chk.estimate.stderr
    ));

    let f = BiPoly::variable(n, 0);
    let chk = haar_average_check(&ctx, &f, &z, &sampler, opts.samples).unwrap();
    ok &= chk.agrees() && chk.exact_re == 0.0 && chk.exact_im == 0.0;
    details.push(format!(
        "z1: est ({:.1e},{:.1e})±{:.1e} vs 0",
        chk.estimate.re, chk.estimate.im, chk.estimate.stderr
    ));

    CheckResult::new("mc/haar-average", ok, details.join("; "))
}

/// Exact reference for the degree-k coefficient of (a - z)/(1 - a z):
/// `a^{k+1} - a^{k-1}` for k >= 1, via the geometric series.
pub(super) fn mobius_series_coefficient(a: &Rational, k: u32) -> Rational {
    assert!(k >= 1);
    let mut pow = Rational::one();
    for _ in 0..(k - 1) {
        pow *= a;
    }
    let low = pow.clone();
    let high = pow * a * a;
    high - low
}

/// Projection of the Mobius-composed coordinate onto H(2,0): the estimate
/// must be nonzero and agree with the one-variable series oracle.
pub(super) fn mobius_projection(opts: &VerifyOptions) -> CheckResult {
    let n = 2;
    let ctx = SphereContext::new(n);
    let sampler = HaarSampler::new(opts.seed, n);
    let phi = BallAutomorphism::new(vec![c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
    let z0 = SpherePoint::base(n);
    let est = mc_project(
        &ctx,
        |z: &[Complex64]| phi.apply(z).expect("regular on sphere")[0],
        Bidegree::new(2, 0),
        &z0,
        &sampler,
        opts.samples,
    )
    .unwrap();
    // Series oracle: the z1^2 coefficient of (1/2 - z1)/(1 - z1/2) is -3/8,
    // and the (2,0) component of the composition at the base point equals
    // that coefficient.
    let half = Rational::new(1.into(), 2.into());
    let expected = mobius_series_coefficient(&half, 2);
    let expected_f = num_traits::ToPrimitive::to_f64(&expected).unwrap();
    let ok = est.is_nonzero() && est.agrees_with(c(expected_f, 0.0));
    CheckResult::new(
        "mc/mobius-projection",
        ok,
        format!(
            "pi_20(z1 ∘ phi_a) at e1: est {:.5}±{:.5} vs series oracle {:.5}",
            est.re, est.stderr, expected_f
        ),
    )
}

/// Ladder evidence for H(1,0) composed with phi_(1/2,0): both neighbor
/// components are witnessed; with a = 0 the map is unitary and the
/// neighbors vanish while (1,0) is preserved; conjugate components of
/// holomorphic compositions vanish.
pub(super) fn mobius_ladder(opts: &VerifyOptions) -> CheckResult {
    let n = 2;
    let ctx = SphereContext::new(n);
    let sampler = HaarSampler::new(opts.seed, n);
    let z0 = SpherePoint::base(n);
    let mut ok = true;
    let mut details = Vec::new();

    let phi = BallAutomorphism::new(vec![c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
    let report =
        moebius_ladder_evidence(&ctx, Bidegree::new(1, 0), &phi, &z0, &sampler, opts.samples)
            .unwrap();
    ok &= report.down.nonzero_witness.is_some();
    ok &= report.up.nonzero_witness.is_some();
    ok &= report.conjugates_vanish();
    details.push(format!(
        "a=(1/2,0): down witness {:?}, up witness {:?}, conjugates vanish {}",
        report.down.nonzero_witness,
        report.up.nonzero_witness,
        report.conjugates_vanish()
    ));

    // a = 0 degenerates to -identity: bidegree is preserved.
    let phi0 = BallAutomorphism::new(vec![c(0.0, 0.0); n]).unwrap();
    let report0 =
        moebius_ladder_evidence(&ctx, Bidegree::new(1, 0), &phi0, &z0, &sampler, opts.samples)
            .unwrap();
    ok &= report0.down.nonzero_witness.is_none();
    ok &= report0.up.nonzero_witness.is_none();
    let preserved = mc_project(
        &ctx,
        |z: &[Complex64]| phi0.apply(z).unwrap()[0],
        Bidegree::new(1, 0),
        &z0,
        &sampler,
        opts.samples,
    )
    .unwrap();
    ok &= preserved.is_nonzero() && preserved.agrees_with(c(-1.0, 0.0));
    details.push(format!(
        "a=0: neighbors silent, (1,0) preserved at {:.4}±{:.4}",
        preserved.re, preserved.stderr
    ));

    CheckResult::new("mc/mobius-ladder", ok, details.join("; "))
}
