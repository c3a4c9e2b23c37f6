//! Combinatorics of bidegree index sets: the product-combination rule, its
//! closure and fixpoint tests on box truncations, conjugation, and the
//! Mobius ladder with its six fixpoint families.
//!
//! Infinite index sets are handled two ways: symbolically through
//! [`crate::family::PatternFamily`] predicates (exact on all of Q), or as
//! finite box truncations `{(p,q) : p+q <= D}` carried by [`PatternBox`].
//! Every boolean answer involving a box is relative to its `D`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::PatternFamily;

/// A bidegree `(p, q)`: degree `p` in the holomorphic variables and `q` in
/// the conjugates.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Bidegree {
    pub p: u32,
    pub q: u32,
}

impl Bidegree {
    pub fn new(p: u32, q: u32) -> Self {
        Bidegree { p, q }
    }

    pub fn total(&self) -> u32 {
        self.p + self.q
    }

    /// Signed difference `p - q`.
    pub fn diff(&self) -> i64 {
        self.p as i64 - self.q as i64
    }

    pub fn is_diagonal(&self) -> bool {
        self.p == self.q
    }

    pub fn conj(&self) -> Bidegree {
        Bidegree::new(self.q, self.p)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl FromStr for Bidegree {
    type Err = Error;

    /// Accepts `(p,q)` or `p,q`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t);
        let mut it = t.split(',');
        let parse_part = |part: Option<&str>| -> Result<u32> {
            part.ok_or_else(|| Error::parse(0, "expected '(p,q)'"))?
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(0, format!("bad bidegree component in {:?}", s)))
        };
        let p = parse_part(it.next())?;
        let q = parse_part(it.next())?;
        if it.next().is_some() {
            return Err(Error::parse(0, "expected exactly two components"));
        }
        Ok(Bidegree::new(p, q))
    }
}

/// Which sign to use in the combination rule. `Minus` is the correct rule
/// (harmonic components of a bidegree-(a,b) product sit at `(a-j, b-j)`);
/// `Plus` exists only so its failure against the exact product oracle can be
/// demonstrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CombineRule {
    #[default]
    Minus,
    Plus,
}

/// The set of bidegrees a product of `H(a)`- and `H(b)`-elements can meet:
/// `{(p+r-j, q+s-j) : 0 <= j <= mu}` with `mu = min{p+q, r+s, p+r, q+s}`.
pub fn combine_points(a: Bidegree, b: Bidegree) -> BTreeSet<Bidegree> {
    combine_points_with(CombineRule::Minus, a, b)
}

pub fn combine_points_with(rule: CombineRule, a: Bidegree, b: Bidegree) -> BTreeSet<Bidegree> {
    let mu = [a.total(), b.total(), a.p + b.p, a.q + b.q]
        .into_iter()
        .min()
        .unwrap();
    (0..=mu)
        .map(|j| match rule {
            CombineRule::Minus => Bidegree::new(a.p + b.p - j, a.q + b.q - j),
            CombineRule::Plus => Bidegree::new(a.p + b.p + j, a.q + b.q + j),
        })
        .collect()
}

/// A finite truncation of an index set: the members with `p+q <= D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternBox {
    max_total_degree: u32,
    members: BTreeSet<Bidegree>,
}

impl PatternBox {
    pub fn empty(max_total_degree: u32) -> Self {
        PatternBox {
            max_total_degree,
            members: BTreeSet::new(),
        }
    }

    /// Builds a box from points, dropping any outside the box.
    pub fn from_points<I: IntoIterator<Item = Bidegree>>(max_total_degree: u32, points: I) -> Self {
        let members = points
            .into_iter()
            .filter(|b| b.total() <= max_total_degree)
            .collect();
        PatternBox {
            max_total_degree,
            members,
        }
    }

    /// Truncation of a symbolic family to the box.
    pub fn from_family(family: &PatternFamily, max_total_degree: u32) -> Self {
        let mut members = BTreeSet::new();
        for p in 0..=max_total_degree {
            for q in 0..=(max_total_degree - p) {
                let bd = Bidegree::new(p, q);
                if family.contains(bd) {
                    members.insert(bd);
                }
            }
        }
        PatternBox {
            max_total_degree,
            members,
        }
    }

    /// All points of the box itself, `p+q <= D`.
    pub fn full(max_total_degree: u32) -> Self {
        PatternBox::from_family(&PatternFamily::Full, max_total_degree)
    }

    pub fn max_total_degree(&self) -> u32 {
        self.max_total_degree
    }

    pub fn members(&self) -> &BTreeSet<Bidegree> {
        &self.members
    }

    pub fn contains(&self, bd: Bidegree) -> bool {
        self.members.contains(&bd)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Inserts a point if it fits in the box; returns whether it was added.
    pub fn insert(&mut self, bd: Bidegree) -> bool {
        bd.total() <= self.max_total_degree && self.members.insert(bd)
    }

    pub fn iter(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.members.iter().copied()
    }
}

impl fmt::Display for PatternBox {
    /// Semicolon-separated `(p,q)` pairs in ascending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Parses a `(p,q);(r,s)` literal into a point set (box degree supplied by
/// the caller).
pub fn parse_pattern_points(text: &str) -> Result<Vec<Bidegree>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(';').map(|part| part.trim().parse()).collect()
}

/// Least fixpoint of pairwise [`combine_points`] inside the box. Exact for
/// membership queries within the box; a truncation can still pass
/// [`is_pattern_box`] while the untruncated set fails beyond `D`.
pub fn closure_box(seed: &PatternBox) -> PatternBox {
    closure_box_with(CombineRule::Minus, seed)
}

pub fn closure_box_with(rule: CombineRule, seed: &PatternBox) -> PatternBox {
    let mut out = seed.clone();
    let mut queue: Vec<Bidegree> = out.members.iter().copied().collect();
    while let Some(x) = queue.pop() {
        let snapshot: Vec<Bidegree> = out.members.iter().copied().collect();
        for y in snapshot {
            for z in combine_points_with(rule, x, y) {
                if out.insert(z) {
                    queue.push(z);
                }
            }
        }
    }
    out
}

/// True iff every pairwise combination that lands inside the box is already
/// a member. A passing truncation certifies the combine-closure property
/// only up to total degree `D`.
pub fn is_pattern_box(omega: &PatternBox) -> bool {
    let d = omega.max_total_degree();
    for &a in omega.members() {
        for &b in omega.members() {
            for z in combine_points(a, b) {
                if z.total() <= d && !omega.contains(z) {
                    return false;
                }
            }
        }
    }
    true
}

/// Reflects every `(p,q)` to `(q,p)`. An involution; maps combine-closed
/// boxes to combine-closed boxes because the rule is symmetric under the
/// reflection.
pub fn conjugate_pattern(omega: &PatternBox) -> PatternBox {
    PatternBox::from_points(
        omega.max_total_degree(),
        omega.iter().map(|b| b.conj()),
    )
}

/// Least fixpoint of the ladder rules inside the box: a member with `p >= 1`
/// pulls in `(p-1, q)` and `(p+1, q)`, and symmetrically in `q`.
pub fn m_ladder_closure(omega: &PatternBox) -> PatternBox {
    let d = omega.max_total_degree();
    let mut out = omega.clone();
    let mut queue: Vec<Bidegree> = out.members.iter().copied().collect();
    while let Some(b) = queue.pop() {
        let mut steps = Vec::new();
        if b.p >= 1 {
            steps.push(Bidegree::new(b.p - 1, b.q));
            steps.push(Bidegree::new(b.p + 1, b.q));
        }
        if b.q >= 1 {
            steps.push(Bidegree::new(b.p, b.q - 1));
            steps.push(Bidegree::new(b.p, b.q + 1));
        }
        for v in steps {
            if v.total() <= d && out.insert(v) {
                queue.push(v);
            }
        }
    }
    out
}

/// Runs the ladder closure and names the resulting fixpoint. Exactly six
/// arise: empty, the origin, the two axes, their union, and the full box.
pub fn six_space_classify(omega: &PatternBox) -> PatternFamily {
    let closed = m_ladder_closure(omega);
    let has_interior = closed.iter().any(|b| b.p > 0 && b.q > 0);
    let has_p_axis = closed.iter().any(|b| b.p > 0 && b.q == 0);
    let has_q_axis = closed.iter().any(|b| b.q > 0 && b.p == 0);
    let family = if closed.is_empty() {
        PatternFamily::Empty
    } else if has_interior {
        PatternFamily::Full
    } else if has_p_axis && has_q_axis {
        PatternFamily::Pluriharmonic
    } else if has_p_axis {
        PatternFamily::Hol
    } else if has_q_axis {
        PatternFamily::AntiHol
    } else {
        PatternFamily::Origin
    };
    debug_assert_eq!(
        closed,
        PatternBox::from_family(&family, omega.max_total_degree())
    );
    family
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bd(p: u32, q: u32) -> Bidegree {
        Bidegree::new(p, q)
    }

    fn boxed(d: u32, pts: &[(u32, u32)]) -> PatternBox {
        PatternBox::from_points(d, pts.iter().map(|&(p, q)| bd(p, q)))
    }

    #[test]
    fn combine_examples() {
        // mu = 1.
        let got = combine_points(bd(1, 0), bd(0, 1));
        assert_eq!(got, [bd(1, 1), bd(0, 0)].into_iter().collect());
        // mu = 2.
        let got = combine_points(bd(1, 1), bd(1, 1));
        assert_eq!(got, [bd(2, 2), bd(1, 1), bd(0, 0)].into_iter().collect());
        // mu = 0: the identity case.
        let got = combine_points(bd(0, 0), bd(5, 2));
        assert_eq!(got, [bd(5, 2)].into_iter().collect());
    }

    #[test]
    fn combine_is_symmetric_and_nonnegative() {
        for p in 0..4u32 {
            for q in 0..4u32 {
                for r in 0..4u32 {
                    for s in 0..4u32 {
                        let a = bd(p, q);
                        let b = bd(r, s);
                        assert_eq!(combine_points(a, b), combine_points(b, a));
                    }
                }
            }
        }
    }

    #[test]
    fn closure_diagonal_from_1_1() {
        let got = closure_box(&boxed(6, &[(1, 1)]));
        let want = boxed(6, &[(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(got, want);
    }

    #[test]
    fn closure_holomorphic_ray_from_1_0() {
        let got = closure_box(&boxed(6, &[(1, 0)]));
        let want = boxed(6, &[(1, 0), (2, 0), (3, 0), (4, 0), (5, 0), (6, 0)]);
        assert_eq!(got, want);
    }

    #[test]
    fn closure_of_empty_is_empty() {
        assert!(closure_box(&PatternBox::empty(5)).is_empty());
    }

    /// Independent oracle: recompute-everything fixpoint iteration, no
    /// worklist.
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

    #[test]
    fn closure_matches_naive_fixpoint_oracle() {
        let seeds = [
            boxed(6, &[(1, 1)]),
            boxed(6, &[(1, 0)]),
            boxed(8, &[(2, 1)]),
            boxed(6, &[(1, 0), (0, 1)]),
            boxed(5, &[(3, 1), (0, 2)]),
            boxed(7, &[(2, 2), (1, 0)]),
        ];
        for seed in &seeds {
            assert_eq!(closure_box(seed), naive_closure(seed));
        }
    }

    #[test]
    fn closure_idempotent_and_monotone() {
        let seed = boxed(6, &[(2, 1), (0, 1)]);
        let once = closure_box(&seed);
        assert_eq!(closure_box(&once), once);
        let smaller = boxed(6, &[(2, 1)]);
        let sub = closure_box(&smaller);
        assert!(sub.members().is_subset(once.members()));
    }

    #[test]
    fn pattern_box_tests() {
        // Holomorphic pattern: products stay holomorphic.
        let hol = PatternBox::from_family(&PatternFamily::Hol, 6);
        assert!(is_pattern_box(&hol));
        // {(1,1)} alone misses (0,0) and (2,2).
        assert!(!is_pattern_box(&boxed(2, &[(1, 1)])));
        // Empty is vacuously closed.
        assert!(is_pattern_box(&PatternBox::empty(4)));
    }

    #[test]
    fn conjugation_is_involution() {
        let omega = boxed(5, &[(1, 0), (2, 1), (0, 3)]);
        assert_eq!(conjugate_pattern(&omega), boxed(5, &[(0, 1), (1, 2), (3, 0)]));
        assert_eq!(conjugate_pattern(&conjugate_pattern(&omega)), omega);
        let diag = closure_box(&boxed(6, &[(1, 1)]));
        assert_eq!(conjugate_pattern(&diag), diag);
    }

    #[test]
    fn conjugation_preserves_pattern_property() {
        let seeds = [
            boxed(6, &[(1, 0)]),
            boxed(8, &[(2, 1)]),
            boxed(6, &[(1, 1)]),
            boxed(6, &[(0, 2), (1, 1)]),
        ];
        for seed in &seeds {
            let omega = closure_box(seed);
            assert!(is_pattern_box(&omega));
            assert!(is_pattern_box(&conjugate_pattern(&omega)));
        }
    }

    #[test]
    fn ladder_fixpoints() {
        // The origin alone is already closed: both rules need p >= 1 or q >= 1.
        let origin = boxed(6, &[(0, 0)]);
        assert_eq!(m_ladder_closure(&origin), origin);
        // (2,0) walks the whole holomorphic axis.
        let got = m_ladder_closure(&boxed(6, &[(2, 0)]));
        assert_eq!(got, PatternBox::from_family(&PatternFamily::Hol, 6));
        // An interior point fills the box.
        let got = m_ladder_closure(&boxed(6, &[(1, 1)]));
        assert_eq!(got, PatternBox::full(6));
    }

    #[test]
    fn six_space_examples() {
        assert_eq!(six_space_classify(&PatternBox::empty(4)), PatternFamily::Empty);
        assert_eq!(six_space_classify(&boxed(4, &[(0, 1)])), PatternFamily::AntiHol);
        assert_eq!(
            six_space_classify(&boxed(4, &[(1, 0), (0, 1)])),
            PatternFamily::Pluriharmonic
        );
        assert_eq!(six_space_classify(&boxed(4, &[(0, 0)])), PatternFamily::Origin);
        assert_eq!(six_space_classify(&boxed(4, &[(2, 2)])), PatternFamily::Full);
        assert_eq!(six_space_classify(&boxed(4, &[(3, 0)])), PatternFamily::Hol);
    }

    #[test]
    fn exactly_six_fixpoints_at_d3() {
        // Enumerate every subset of the D=3 box and collect the distinct
        // ladder closures.
        let all: Vec<Bidegree> = PatternBox::full(3).iter().collect();
        assert_eq!(all.len(), 10);
        let mut closures = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << all.len()) {
            let seed = PatternBox::from_points(
                3,
                all.iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, b)| *b),
            );
            closures.insert(format!("{}", m_ladder_closure(&seed)));
        }
        assert_eq!(closures.len(), 6);
    }

    #[test]
    fn pattern_literal_round_trip() {
        let omega = boxed(6, &[(0, 0), (1, 1), (2, 0)]);
        let text = omega.to_string();
        assert_eq!(text, "(0,0);(1,1);(2,0)");
        let parsed = PatternBox::from_points(6, parse_pattern_points(&text).unwrap());
        assert_eq!(parsed, omega);
        assert!(parse_pattern_points("").unwrap().is_empty());
    }
}
