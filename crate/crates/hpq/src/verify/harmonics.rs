//! Invariant suite for the harmonic-space layer: reproducing kernels, the
//! projection calculus, unitary invariance, the substitution pairing
//! identity, holomorphic dilation, and Parseval consistency.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    random_holomorphic, random_poly, random_rational, rational_sphere_points, test_unitaries,
    CheckResult, VerifyOptions,
};
use crate::gauss::GaussRational;
use crate::pattern::Bidegree;
use crate::sphere::SphereContext;
use crate::Rational;

pub(super) fn run(opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    vec![
        integral_primitive(),
        reproducing_kernels(&mut rng),
        projection_calculus(&mut rng),
        unitary_invariance(),
        switcheroo(&mut rng),
        holomorphic_dilation(&mut rng),
        parseval(&mut rng),
    ]
}

fn bidegrees_up_to(total: u32) -> Vec<Bidegree> {
    let mut out = Vec::new();
    for p in 0..=total {
        for q in 0..=(total - p) {
            out.push(Bidegree::new(p, q));
        }
    }
    out
}

/// Validation of the closed-form monomial integral: probability
/// normalization, first moments, and the partition-of-unity recurrence.
fn integral_primitive() -> CheckResult {
    use crate::multiindex::MultiIndex;
    let mut ok = true;
    for n in 1..=3usize {
        let ctx = SphereContext::new(n);
        ok &= ctx.integrate(&crate::poly::BiPoly::one(n)).unwrap()
            == num_traits::One::one();
        let e0 = MultiIndex::unit(n, 0);
        ok &= ctx.integrate_monomial(&e0, &e0) == Rational::new(1.into(), (n as i64).into());
        // sum_j I(a + e_j) = I(a) for a spread of exponents.
        for alpha in [vec![0u32; n], vec![2u32; n], {
            let mut v = vec![1u32; n];
            v[0] = 3;
            v
        }] {
            let a = MultiIndex(alpha);
            let total: Rational = (0..n)
                .map(|j| {
                    let bumped = a.plus(&MultiIndex::unit(n, j));
                    ctx.integrate_monomial(&bumped, &bumped)
                })
                .sum();
            ok &= total == ctx.integrate_monomial(&a, &a);
        }
    }
    CheckResult::new(
        "harmonics/integral-primitive",
        ok,
        "sigma(S)=1, first moments 1/n, and the sum-over-slots recurrence",
    )
}

/// For n in {1,2,3}, p+q <= 4, the fixture points, and 5 random basis
/// elements per space: `<f, K_z> = f(z)` and `K_z(z) = <K_z,K_z> > 0`,
/// all exactly.
pub(super) fn reproducing_kernels(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut checks = 0usize;
    let mut ok = true;
    for n in 1..=3usize {
        let ctx = SphereContext::new(n);
        let points = rational_sphere_points(n);
        for bd in bidegrees_up_to(4) {
            let space = ctx.harmonic_basis(bd);
            if space.dim() == 0 {
                continue;
            }
            for z in &points {
                let k = ctx.zonal_kernel(bd, z).unwrap();
                let norm = ctx.norm_sq(&k.kernel).unwrap();
                ok &= norm == k.value_at_point;
                ok &= k.value_at_point.is_real() && k.value_at_point.re > Rational::zero();
                for _ in 0..5 {
                    let f = &space.basis()[rng.gen_range(0..space.dim())];
                    ok &= ctx.inner_product(f, &k.kernel).unwrap()
                        == f.eval(z.coords()).unwrap();
                    checks += 1;
                }
            }
        }
    }
    CheckResult::new(
        "harmonics/reproducing-kernels",
        ok,
        format!("{} exact reproducing identities, kernels positive at their points", checks),
    )
}

/// Idempotence and mutual annihilation on every monomial of total degree
/// <= 4 at n in {2,3}, with a direct inner-product orthogonality spot check.
pub(super) fn projection_calculus(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    let mut projections = 0usize;
    for n in [2usize, 3] {
        let ctx = SphereContext::new(n);
        let targets = bidegrees_up_to(4);
        let mut monos = Vec::new();
        for p in 0..=4u32 {
            for q in 0..=(4 - p) {
                monos.extend(ctx.monomial_basis(p, q).monomials.clone());
            }
        }
        for m in &monos {
            let f = crate::poly::BiPoly::monomial(n, m.clone(), num_traits::One::one());
            for &rs in &targets {
                let h = ctx.project_bidegree(&f, rs).unwrap();
                if h.is_zero() {
                    continue;
                }
                // Idempotence.
                ok &= ctx.project_bidegree(&h, rs).unwrap() == h;
                projections += 1;
                // Mutual annihilation.
                for &pq in &targets {
                    if pq != rs {
                        ok &= ctx.project_bidegree(&h, pq).unwrap().is_zero();
                    }
                }
                // Orthogonality spot check through plain integrals.
                if rng.gen_range(0..20) == 0 {
                    let other = targets[rng.gen_range(0..targets.len())];
                    if other != rs {
                        for b in ctx.harmonic_basis(other).basis() {
                            ok &= ctx.inner_product(&h, b).unwrap().is_zero();
                        }
                    }
                }
            }
        }
    }
    CheckResult::new(
        "harmonics/projection-calculus",
        ok,
        format!(
            "{} nonzero components idempotent and annihilated by every other projection",
            projections
        ),
    )
}

/// Support preservation, span membership, and the L^2 isometry for the
/// exact test unitaries on every basis element with p+q <= 3, n in {2,3}.
pub(super) fn unitary_invariance() -> CheckResult {
    let mut ok = true;
    let mut count = 0usize;
    for n in [2usize, 3] {
        let ctx = SphereContext::new(n);
        for u in test_unitaries(n) {
            for bd in bidegrees_up_to(3) {
                let space = ctx.harmonic_basis(bd);
                for f in space.basis() {
                    let g = f.substitute_linear(&u).unwrap();
                    ok &= space.contains(&g);
                    ok &= ctx.bidegree_support(&g).unwrap()
                        == ctx.bidegree_support(f).unwrap();
                    ok &= ctx.norm_sq(&g).unwrap() == ctx.norm_sq(f).unwrap();
                    count += 1;
                }
            }
        }
    }
    CheckResult::new(
        "harmonics/unitary-invariance",
        ok,
        format!(
            "{} basis elements: f∘U stays in its space with equal support and norm",
            count
        ),
    )
}

/// The unconjugated pairing identity `∫ (f∘U) g = ∫ f (g∘U^{-1})` on 20
/// random polynomial pairs per dimension.
pub(super) fn switcheroo(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    let mut count = 0;
    for n in [2usize, 3] {
        let ctx = SphereContext::new(n);
        let unitaries = test_unitaries(n);
        for _ in 0..20 {
            let f = random_poly(rng, n, 3, 4);
            let g = random_poly(rng, n, 3, 4);
            let u = &unitaries[rng.gen_range(0..unitaries.len())];
            let lhs = ctx
                .pairing_unconjugated(&f.substitute_linear(u).unwrap(), &g)
                .unwrap();
            let rhs = ctx
                .pairing_unconjugated(&f, &g.substitute_linear(&u.adjoint()).unwrap())
                .unwrap();
            ok &= lhs == rhs;
            count += 1;
        }
    }
    CheckResult::new(
        "harmonics/switcheroo",
        ok,
        format!("{} random pairs: ∫(f∘U)g = ∫f(g∘U*) exactly", count),
    )
}

/// Radial dilation of a holomorphic polynomial keeps the support on the
/// q = 0 axis.
fn holomorphic_dilation(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    for n in [1usize, 2, 3] {
        let ctx = SphereContext::new(n);
        for _ in 0..10 {
            let f = random_holomorphic(rng, n, 4, 4);
            let r = random_rational(rng);
            let support = ctx.bidegree_support(&f.scale_radial(&r)).unwrap();
            ok &= support.iter().all(|b| b.q == 0);
        }
    }
    CheckResult::new(
        "harmonics/holomorphic-dilation",
        ok,
        "support of f_r avoids q > 0 for holomorphic f",
    )
}

/// `<f,f>` equals the sum of `<pi f, pi f>` over the support, exactly.
pub(super) fn parseval(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    let mut count = 0;
    for n in [2usize, 3] {
        let ctx = SphereContext::new(n);
        for _ in 0..15 {
            let f = random_poly(rng, n, 4, 5);
            let total = ctx.norm_sq(&f).unwrap();
            let sum = ctx
                .support_components(&f)
                .unwrap()
                .values()
                .map(|c| ctx.norm_sq(c).unwrap())
                .fold(GaussRational::zero(), |acc, v| &acc + &v);
            ok &= total == sum;
            count += 1;
        }
    }
    CheckResult::new(
        "harmonics/parseval",
        ok,
        format!("{} random polynomials of degree <= 4", count),
    )
}
