//! The acceptance checks: one function per criterion, each reporting a
//! single pass/fail result with a reproducible detail line. Tolerances are
//! pinned here — exact checks are zero-tolerance, statistical checks use
//! the 4-stderr threshold with the 1e-3 nonzero floor, seed 42 and
//! N = 100000 unless the caller overrides.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{harmonics, mc_suite, patterns, product_span, CheckResult, VerifyOptions};
use crate::family::{classify_pattern, PatternFamily};
use crate::mc::{haar_average_check, BallAutomorphism, HaarSampler};
use crate::pattern::{closure_box, Bidegree, PatternBox};
use crate::span::product_space_support;
use crate::sphere::SphereContext;

fn merge(name: &str, parts: Vec<CheckResult>) -> CheckResult {
    let passed = parts.iter().all(|p| p.passed);
    let detail = parts
        .iter()
        .map(|p| format!("{}: {}", if p.passed { "ok" } else { "FAIL" }, p.detail))
        .collect::<Vec<_>>()
        .join(" | ");
    CheckResult::new(name, passed, detail)
}

/// Criterion 1: at n = 3, every product support with p+q, r+s <= 3 equals
/// the minus-rule prediction exactly, and the plus-rule variant fails
/// across the same sweep.
pub fn criterion_1(_opts: &VerifyOptions) -> CheckResult {
    merge(
        "1 criterion-analysis equivalence (n=3)",
        vec![
            product_span::n3_sweep_matches_combine_rule(3, 3),
            product_span::plus_rule_fails_across_sweep(3, 3),
        ],
    )
}

/// Criterion 2: the n=2 exceptions. H(2,1)^2 excludes (3,1) at n=2 but not
/// at n=3, and over the whole sweep the mismatch set coincides with the
/// deletion families.
pub fn criterion_2(_opts: &VerifyOptions) -> CheckResult {
    let ctx2 = SphereContext::new(2);
    let ctx3 = SphereContext::new(3);
    let b21 = Bidegree::new(2, 1);
    let b31 = Bidegree::new(3, 1);
    let r2 = product_space_support(&ctx2, b21, b21).unwrap();
    let r3 = product_space_support(&ctx3, b21, b21).unwrap();
    let instance = CheckResult::new(
        "h21-squared",
        !r2.support.contains(&b31) && r2.missing.contains(&b31) && r3.support.contains(&b31),
        format!(
            "n=2 support {:?} excludes (3,1); n=3 includes it: {}",
            r2.support,
            r3.support.contains(&b31)
        ),
    );
    merge(
        "2 n=2 exception reproduction",
        vec![
            instance,
            product_span::n2_mismatches_are_exactly_the_deletions(3),
        ],
    )
}

/// Criterion 3: reproducing-kernel identities, exact, for n in {1,2,3} and
/// p+q <= 4 at the fixture points.
pub fn criterion_3(opts: &VerifyOptions) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut r = harmonics::reproducing_kernels(&mut rng);
    r.name = "3 reproducing-kernel identities".into();
    r
}

/// Criterion 4: projection calculus (idempotence, mutual annihilation) on
/// all monomials of total degree <= 4 for n in {2,3}, plus Parseval.
pub fn criterion_4(opts: &VerifyOptions) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    merge(
        "4 projection calculus",
        vec![
            harmonics::projection_calculus(&mut rng),
            harmonics::parseval(&mut rng),
        ],
    )
}

/// Criterion 5: unitary invariance, isometry, and the substitution pairing
/// identity.
pub fn criterion_5(opts: &VerifyOptions) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    merge(
        "5 unitary invariance and isometry",
        vec![
            harmonics::unitary_invariance(),
            harmonics::switcheroo(&mut rng),
        ],
    )
}

/// Criterion 6: the pattern engine — closure examples at D = 8,
/// classification of the two-sided seed, and the six ladder fixpoints.
pub fn criterion_6(_opts: &VerifyOptions) -> CheckResult {
    let full = closure_box(&PatternBox::from_points(
        8,
        [Bidegree::new(1, 0), Bidegree::new(0, 1)],
    ));
    let classified = classify_pattern(&full);
    let gofd = CheckResult::new(
        "classify-gofd1",
        classified.as_ref().map(|r| &r.family) == Ok(&PatternFamily::GofD(1)),
        format!("classify(closure{{(1,0),(0,1)}}) = {:?}", classified.map(|r| r.family)),
    );
    merge(
        "6 pattern engine",
        vec![
            patterns::closure_examples(),
            gofd,
            patterns::ladder_fixpoints(),
            patterns::classification_examples(),
        ],
    )
}

/// Criterion 7: the pluriharmonic pattern fails multiplicativity at n = 2
/// with the coordinate-pair witness escaping at (1,1), and holds at n = 1.
pub fn criterion_7(_opts: &VerifyOptions) -> CheckResult {
    let mut r = product_span::pluriharmonic_witness();
    r.name = "7 non-algebra witness".into();
    r
}

/// Criterion 8: the seed-pinned Monte Carlo suite.
pub fn criterion_8(opts: &VerifyOptions) -> CheckResult {
    let n = 2;
    let ctx = SphereContext::new(n);
    let sampler = HaarSampler::new(opts.seed, n);

    // Haar-average identity for |z1|^4: within 4 stderr of 1/3.
    let f = crate::parse::parse_poly("z1^2*w1^2", n).unwrap();
    let z = vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
    let haar = haar_average_check(&ctx, &f, &z, &sampler, opts.samples).unwrap();
    let haar_ok = haar.agrees() && (haar.exact_re - 1.0 / 3.0).abs() < 1e-15;
    let haar_check = CheckResult::new(
        "haar-z1-fourth",
        haar_ok,
        format!(
            "mean f(Uz) = {:.5}±{:.5} vs 1/3",
            haar.estimate.re, haar.estimate.stderr
        ),
    );

    // Mobius projection is nonzero and matches the series oracle.
    let projection = mc_suite::mobius_projection(opts);

    // Holomorphic compositions have no conjugate components.
    let phi = BallAutomorphism::new(vec![Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)])
        .unwrap();
    let z0 = crate::zonal::SpherePoint::base(n);
    let mut conj_ok = true;
    let mut worst = 0.0f64;
    for (p, q) in [(0u32, 1u32), (1, 1), (2, 1), (1, 2)] {
        let est = crate::mc::mc_project(
            &ctx,
            |z: &[Complex64]| phi.apply(z).expect("regular on sphere")[0],
            Bidegree::new(p, q),
            &z0,
            &sampler,
            opts.samples,
        )
        .unwrap();
        conj_ok &= est.is_zero_within_tolerance();
        worst = worst.max(est.value().norm() / est.stderr.max(1e-300));
    }
    let conj_check = CheckResult::new(
        "holomorphic-conjugate-components",
        conj_ok,
        format!(
            "all q' > 0 components of z1∘phi within 4 stderr of 0 (worst {:.2} sigma)",
            worst
        ),
    );

    merge(
        "8 Monte Carlo suite",
        vec![haar_check, projection, conj_check],
    )
}

/// Runs all eight criteria in order.
pub fn all(opts: &VerifyOptions) -> Vec<CheckResult> {
    vec![
        criterion_1(opts),
        criterion_2(opts),
        criterion_3(opts),
        criterion_4(opts),
        criterion_5(opts),
        criterion_6(opts),
        criterion_7(opts),
        criterion_8(opts),
    ]
}
