//! Invariant suite for the product-support oracle: the n>=3 agreement
//! sweep, the n=2 exception set, symmetry, conservation laws, and
//! decomposition completeness.

use std::collections::BTreeSet;

use num_traits::One;

use super::{CheckResult, VerifyOptions};
use crate::family::PatternFamily;
use crate::pattern::{combine_points_with, Bidegree, CombineRule, PatternBox};
use crate::span::{
    expected_n2_deletions, is_algebra_exact, product_space_support, uinv_span_pattern,
};
use crate::sphere::SphereContext;

pub(super) fn run(opts: &VerifyOptions) -> Vec<CheckResult> {
    vec![
        n3_sweep_matches_combine_rule(opts.sweep_n, opts.sweep_maxdeg),
        plus_rule_fails_across_sweep(opts.sweep_n, opts.sweep_maxdeg),
        n2_mismatches_are_exactly_the_deletions(opts.sweep_maxdeg),
        support_symmetry_and_conservation(),
        decomposition_completeness(),
        pluriharmonic_witness(),
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

fn unordered_pairs(total: u32) -> Vec<(Bidegree, Bidegree)> {
    let bds = bidegrees_up_to(total);
    let mut out = Vec::new();
    for (i, &a) in bds.iter().enumerate() {
        for &b in &bds[i..] {
            out.push((a, b));
        }
    }
    out
}

/// At n = 3, the exact support of H(p,q)·H(r,s) equals the minus-rule
/// prediction for every pair with p+q, r+s <= `maxdeg`.
pub(super) fn n3_sweep_matches_combine_rule(n: usize, maxdeg: u32) -> CheckResult {
    assert!(n >= 3, "the agreement sweep needs n >= 3");
    let ctx = SphereContext::new(n);
    let mut failures = Vec::new();
    let pairs = unordered_pairs(maxdeg);
    let count = pairs.len();
    for (a, b) in pairs {
        let report = product_space_support(&ctx, a, b).unwrap();
        if !report.matches {
            failures.push(format!(
                "{}x{}: missing {:?} extra {:?}",
                a, b, report.missing, report.extra
            ));
        }
    }
    CheckResult::new(
        "product-span/n3-sweep",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} unordered pairs at n={}: support = prediction exactly", count, n)
        } else {
            format!("failures: {}", failures.join("; "))
        },
    )
}

/// The printed plus-sign variant of the rule disagrees with the exact
/// support on every pair that combines nontrivially: it predicts points of
/// total degree above the product, which can never carry a component.
pub(super) fn plus_rule_fails_across_sweep(n: usize, maxdeg: u32) -> CheckResult {
    let ctx = SphereContext::new(n);
    let mut nontrivial = 0usize;
    let mut failing = 0usize;
    let mut ok = true;
    for (a, b) in unordered_pairs(maxdeg) {
        let report = product_space_support(&ctx, a, b).unwrap();
        let plus = combine_points_with(CombineRule::Plus, a, b);
        let mu_positive = plus.len() > 1;
        if mu_positive {
            nontrivial += 1;
            if plus != report.support {
                failing += 1;
            } else {
                ok = false;
            }
        }
    }
    ok &= nontrivial > 0 && failing == nontrivial;
    CheckResult::new(
        "product-span/plus-rule-fails",
        ok,
        format!(
            "plus-rule prediction wrong on {}/{} nontrivial pairs (must be all)",
            failing, nontrivial
        ),
    )
}

/// At n = 2, over the same sweep: the support never exceeds the prediction,
/// and the missing points are exactly the deletion set of
/// [`expected_n2_deletions`] — every mismatch is a deletion and every
/// in-range deletion is a mismatch.
pub(super) fn n2_mismatches_are_exactly_the_deletions(maxdeg: u32) -> CheckResult {
    let ctx = SphereContext::new(2);
    let mut failures = Vec::new();
    let mut deleted_total = 0usize;
    let pairs = unordered_pairs(maxdeg);
    let count = pairs.len();
    for (a, b) in pairs {
        let report = product_space_support(&ctx, a, b).unwrap();
        if !report.extra.is_empty() {
            failures.push(format!("{}x{}: support exceeds prediction", a, b));
        }
        let expected = expected_n2_deletions(a, b);
        if report.missing != expected {
            failures.push(format!(
                "{}x{}: missing {:?}, deletion rule says {:?}",
                a, b, report.missing, expected
            ));
        }
        deleted_total += expected.len();
    }
    CheckResult::new(
        "product-span/n2-exceptions",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{} unordered pairs at n=2: mismatch set = deletion set ({} deletions realized)",
                count, deleted_total
            )
        } else {
            format!("failures: {}", failures.join("; "))
        },
    )
}

fn support_symmetry_and_conservation() -> CheckResult {
    let ctx = SphereContext::new(2);
    let mut ok = true;
    for (a, b) in [
        (Bidegree::new(2, 1), Bidegree::new(1, 0)),
        (Bidegree::new(1, 1), Bidegree::new(0, 2)),
        (Bidegree::new(2, 0), Bidegree::new(1, 2)),
    ] {
        let ab = product_space_support(&ctx, a, b).unwrap();
        let ba = product_space_support(&ctx, b, a).unwrap();
        ok &= ab.support == ba.support;
        for s in &ab.support {
            ok &= s.total() <= a.total() + b.total();
            ok &= s.diff() == a.diff() + b.diff();
        }
    }
    CheckResult::new(
        "product-span/symmetry-conservation",
        ok,
        "support symmetric in the factors; degree bounded and difference preserved",
    )
}

/// The supports of all monomials of total degree <= D cover the whole box:
/// no bidegree is missed by the decomposition.
fn decomposition_completeness() -> CheckResult {
    let mut ok = true;
    for n in [2usize, 3] {
        let ctx = SphereContext::new(n);
        let d = 3u32;
        let mut gens = Vec::new();
        for p in 0..=d {
            for q in 0..=(d - p) {
                for m in &ctx.monomial_basis(p, q).monomials {
                    gens.push(crate::poly::BiPoly::monomial(n, m.clone(), One::one()));
                }
            }
        }
        let pattern = uinv_span_pattern(&ctx, &gens).unwrap();
        let full: BTreeSet<Bidegree> = if n == 1 {
            unreachable!()
        } else {
            PatternBox::full(d).members().clone()
        };
        ok &= *pattern.members() == full;
    }
    CheckResult::new(
        "product-span/decomposition-completeness",
        ok,
        "monomials of degree <= 3 span every bidegree of the box at n = 2, 3",
    )
}

/// The pluriharmonic pattern is not multiplicatively closed at n = 2 (the
/// coordinate pair escapes at (1,1)) but is at n = 1.
pub(super) fn pluriharmonic_witness() -> CheckResult {
    let plurih = |d| PatternBox::from_family(&PatternFamily::Pluriharmonic, d);
    let ctx2 = SphereContext::new(2);
    let check2 = is_algebra_exact(&ctx2, &plurih(4)).unwrap();
    let witness_ok = match &check2.counterexample {
        Some(ce) => {
            ce.escaped == Bidegree::new(1, 1)
                && [ce.left, ce.right].into_iter().collect::<BTreeSet<_>>()
                    == [Bidegree::new(1, 0), Bidegree::new(0, 1)]
                        .into_iter()
                        .collect()
        }
        None => false,
    };
    let ctx1 = SphereContext::new(1);
    let check1 = is_algebra_exact(&ctx1, &plurih(4)).unwrap();
    CheckResult::new(
        "product-span/pluriharmonic-witness",
        !check2.holds && witness_ok && check1.holds,
        format!(
            "n=2 fails with pair (1,0),(0,1) escaping at (1,1): {:?}; n=1 holds: {}",
            check2.counterexample, check1.holds
        ),
    )
}
