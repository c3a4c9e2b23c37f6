//! Invariant suite for the pattern combinatorics: closure properties, the
//! family truncations, the six ladder fixpoints, and the n=2-only families
//! validated through the exact product oracle.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckResult, VerifyOptions};
use crate::family::{classify_pattern, PatternFamily};
use crate::pattern::{
    closure_box, combine_points, conjugate_pattern, is_pattern_box, m_ladder_closure,
    six_space_classify, Bidegree, PatternBox,
};
use crate::span::is_algebra_exact;
use crate::sphere::SphereContext;

pub(super) fn run(opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    vec![
        closure_examples(),
        closure_laws(&mut rng),
        family_truncations_combine(),
        family_truncations_n2_oracle(),
        conjugation_preserves_patterns(&mut rng),
        ladder_fixpoints(),
        classification_examples(),
    ]
}

fn bd(p: u32, q: u32) -> Bidegree {
    Bidegree::new(p, q)
}

pub(super) fn closure_examples() -> CheckResult {
    let diag = closure_box(&PatternBox::from_points(8, [bd(1, 1)]));
    let want: BTreeSet<Bidegree> = (0..=4).map(|k| bd(k, k)).collect();
    let a = *diag.members() == want;

    let ray = closure_box(&PatternBox::from_points(8, [bd(1, 0)]));
    let want: BTreeSet<Bidegree> = (1..=8).map(|k| bd(k, 0)).collect();
    let b = *ray.members() == want;

    let gpq = closure_box(&PatternBox::from_points(8, [bd(2, 1)]));
    let c = gpq == PatternBox::from_family(&PatternFamily::Gpq(2, 1), 8);

    CheckResult::new(
        "patterns/closure-examples",
        a && b && c,
        "closure of (1,1) is the diagonal, of (1,0) the holomorphic ray, of (2,1) its Gpq family",
    )
}

/// Recompute-everything fixpoint, an independent oracle for the worklist.
fn naive_closure(seed: &PatternBox) -> PatternBox {
    let mut cur = seed.clone();
    loop {
        let mut next = cur.clone();
        for &a in cur.members() {
            for &b in cur.members() {
                for z in combine_points(a, b) {
                    next.insert(z);
                }
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn closure_laws(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    for _ in 0..40 {
        let d = rng.gen_range(3..=7);
        let count = rng.gen_range(0..=3);
        let seed = PatternBox::from_points(
            d,
            (0..count).map(|_| bd(rng.gen_range(0..=d), rng.gen_range(0..=d))),
        );
        let closed = closure_box(&seed);
        ok &= closed == naive_closure(&seed);
        ok &= closure_box(&closed) == closed;
        ok &= seed.members().is_subset(closed.members());
        ok &= is_pattern_box(&closed);
    }
    CheckResult::new(
        "patterns/closure-laws",
        ok,
        "worklist closure matches the naive fixpoint; idempotent; extensive; combine-closed",
    )
}

/// Box truncations of the n>=3 catalog families pass the combine test up to
/// D = 10.
fn family_truncations_combine() -> CheckResult {
    let families = [
        PatternFamily::Empty,
        PatternFamily::Origin,
        PatternFamily::Hol,
        PatternFamily::AntiHol,
        PatternFamily::Full,
        PatternFamily::GofD(1),
        PatternFamily::GofD(2),
        PatternFamily::GofD(3),
        PatternFamily::GofD(4),
        PatternFamily::GofSigma(BTreeSet::new()),
        PatternFamily::GofSigma([2].into_iter().collect()),
        PatternFamily::GofSigma([3, 5].into_iter().collect()),
        PatternFamily::Gpq(1, 0),
        PatternFamily::Gpq(2, 1),
        PatternFamily::Gpq(3, 1),
        PatternFamily::Gpq(3, 2),
    ];
    let mut ok = true;
    let mut failed = String::new();
    for fam in &families {
        for d in [4u32, 10] {
            if !is_pattern_box(&PatternBox::from_family(fam, d)) {
                ok = false;
                failed = format!("{} at D={}", fam, d);
            }
        }
    }
    CheckResult::new(
        "patterns/family-truncations-combine",
        ok,
        if ok {
            "all combine-rule families closed up to D=10".to_string()
        } else {
            format!("first failure: {}", failed)
        },
    )
}

/// The families that exist only at n = 2 (GpqN2, GofSigmaStar) violate the
/// combine rule by construction; they are validated against the exact
/// product oracle at n = 2 instead. Pluriharmonic is an algebra only at
/// n = 1 and is checked there.
fn family_truncations_n2_oracle() -> CheckResult {
    let ctx2 = SphereContext::new(2);
    let mut ok = true;
    let mut detail = Vec::new();
    for (fam, d) in [
        (PatternFamily::GpqN2(2, 1), 10u32),
        (PatternFamily::GofSigmaStar(BTreeSet::new()), 10),
        (PatternFamily::GofSigmaStar([2].into_iter().collect()), 10),
    ] {
        let omega = PatternBox::from_family(&fam, d);
        let check = is_algebra_exact(&ctx2, &omega).unwrap();
        if !check.holds {
            ok = false;
        }
        detail.push(format!(
            "{} D={}: {} ({} pairs)",
            fam,
            d,
            if check.holds { "algebra" } else { "NOT an algebra" },
            check.pairs_checked
        ));
    }
    let ctx1 = SphereContext::new(1);
    let plurih = PatternBox::from_family(&PatternFamily::Pluriharmonic, 6);
    let check = is_algebra_exact(&ctx1, &plurih).unwrap();
    ok &= check.holds;
    detail.push(format!(
        "plurih D=6 at n=1: {}",
        if check.holds { "algebra" } else { "NOT an algebra" }
    ));
    CheckResult::new(
        "patterns/family-truncations-n2-oracle",
        ok,
        detail.join("; "),
    )
}

fn conjugation_preserves_patterns(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    for _ in 0..25 {
        let d = rng.gen_range(3..=7);
        let seed = PatternBox::from_points(
            d,
            (0..rng.gen_range(1..=2)).map(|_| bd(rng.gen_range(0..=d), rng.gen_range(0..=d))),
        );
        let omega = closure_box(&seed);
        ok &= is_pattern_box(&conjugate_pattern(&omega));
        ok &= conjugate_pattern(&conjugate_pattern(&omega)) == omega;
    }
    CheckResult::new(
        "patterns/conjugation",
        ok,
        "conjugation is an involution mapping combine-closed boxes to combine-closed boxes",
    )
}

/// Exhaustive check at D = 3: the ladder closure of every one of the 2^10
/// subsets is one of exactly six fixpoints, each a named family box.
pub(super) fn ladder_fixpoints() -> CheckResult {
    let all: Vec<Bidegree> = PatternBox::full(3).iter().collect();
    let mut distinct = BTreeSet::new();
    let mut ok = all.len() == 10;
    for mask in 0u32..(1 << all.len()) {
        let seed = PatternBox::from_points(
            3,
            all.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, b)| *b),
        );
        let closed = m_ladder_closure(&seed);
        let family = six_space_classify(&seed);
        ok &= closed == PatternBox::from_family(&family, 3);
        distinct.insert(closed.to_string());
    }
    ok &= distinct.len() == 6;
    CheckResult::new(
        "patterns/ladder-six-fixpoints",
        ok,
        format!(
            "2^10 seeds closed at D=3; {} distinct fixpoints, each a named family box",
            distinct.len()
        ),
    )
}

pub(super) fn classification_examples() -> CheckResult {
    let mut ok = true;
    let full = closure_box(&PatternBox::from_points(6, [bd(1, 0), bd(0, 1)]));
    ok &= classify_pattern(&full).map(|r| r.family) == Ok(PatternFamily::GofD(1));
    let diag = closure_box(&PatternBox::from_points(6, [bd(1, 1)]));
    ok &= classify_pattern(&diag).map(|r| r.family)
        == Ok(PatternFamily::GofSigma(BTreeSet::new()));
    let gpq = closure_box(&PatternBox::from_points(8, [bd(2, 1)]));
    ok &= classify_pattern(&gpq).map(|r| r.family) == Ok(PatternFamily::Gpq(2, 1));
    ok &= classify_pattern(&PatternBox::from_points(4, [bd(1, 1)])).is_err();
    CheckResult::new(
        "patterns/classification",
        ok,
        "GofD(1), GSigma(), and Gpq(2,1) recovered; non-closed box rejected",
    )
}
