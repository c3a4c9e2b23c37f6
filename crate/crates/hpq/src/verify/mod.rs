//! Bundled verification suites behind `hpq verify`, plus the acceptance
//! checks the integration suite runs. Each check is exact unless explicitly
//! statistical; statistical checks are seed-pinned and deterministic.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gauss::GaussRational;
use crate::matrix::Matrix;
use crate::poly::BiPoly;
use crate::zonal::SpherePoint;
use crate::{RatMatrix, Rational};

pub mod acceptance;
mod exact_core;
mod harmonics;
mod mc_suite;
mod patterns;
mod product_span;

/// One named check with a human-readable detail line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    /// Dimension of the product-support agreement sweep (the rule's converse
    /// holds for any n >= 3).
    pub sweep_n: usize,
    /// Per-factor total-degree bound of the sweeps.
    pub sweep_maxdeg: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            samples: 100_000,
            sweep_n: 3,
            sweep_maxdeg: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ExactCore,
    Harmonics,
    Patterns,
    ProductSpan,
    Mc,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::ExactCore => "exact-core",
            Suite::Harmonics => "harmonics",
            Suite::Patterns => "patterns",
            Suite::ProductSpan => "product-span",
            Suite::Mc => "mc",
            Suite::All => "all",
        };
        write!(f, "{}", name)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "exact-core" => Ok(Suite::ExactCore),
            "harmonics" => Ok(Suite::Harmonics),
            "patterns" => Ok(Suite::Patterns),
            "product-span" => Ok(Suite::ProductSpan),
            "mc" => Ok(Suite::Mc),
            "all" => Ok(Suite::All),
            other => Err(Error::parse(0, format!("unknown suite {:?}", other))),
        }
    }
}

/// Runs a suite; every result carries enough detail to reproduce a failure.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<CheckResult> {
    match suite {
        Suite::ExactCore => exact_core::run(opts),
        Suite::Harmonics => harmonics::run(opts),
        Suite::Patterns => patterns::run(opts),
        Suite::ProductSpan => product_span::run(opts),
        Suite::Mc => mc_suite::run(opts),
        Suite::All => [
            Suite::ExactCore,
            Suite::Harmonics,
            Suite::Patterns,
            Suite::ProductSpan,
            Suite::Mc,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, opts))
        .collect(),
    }
}

// ---- shared fixtures -----------------------------------------------------

/// The exact test unitaries: a coordinate swap, a diagonal phase, and the
/// 3-4-5 rotation (embedded in the top-left block for n > 2). For n = 1,
/// the 1x1 unitaries -1, i, and (3+4i)/5.
pub(crate) fn test_unitaries(n: usize) -> Vec<RatMatrix> {
    if n == 1 {
        return vec![
            Matrix::from_rows(vec![vec![GaussRational::from_int(-1)]]),
            Matrix::from_rows(vec![vec![GaussRational::i()]]),
            Matrix::from_rows(vec![vec![GaussRational::new(
                Rational::new(3.into(), 5.into()),
                Rational::new(4.into(), 5.into()),
            )]]),
        ];
    }
    let mut swap: RatMatrix = Matrix::identity(n);
    swap.set(0, 0, GaussRational::from_int(0));
    swap.set(1, 1, GaussRational::from_int(0));
    swap.set(0, 1, GaussRational::from_int(1));
    swap.set(1, 0, GaussRational::from_int(1));

    let mut phase: RatMatrix = Matrix::identity(n);
    phase.set(0, 0, GaussRational::i());

    let mut rot: RatMatrix = Matrix::identity(n);
    rot.set(0, 0, GaussRational::from_ratio(3, 5));
    rot.set(0, 1, GaussRational::from_ratio(4, 5));
    rot.set(1, 0, GaussRational::from_ratio(-4, 5));
    rot.set(1, 1, GaussRational::from_ratio(3, 5));

    vec![swap, phase, rot]
}

/// The rational sphere points used by the reproducing-kernel checks:
/// the base point, the 3-4-5 point, and a genuinely complex point, padded
/// with zeros. Only the base point exists at n = 1.
pub(crate) fn rational_sphere_points(n: usize) -> Vec<SpherePoint> {
    let mut points = vec![SpherePoint::base(n)];
    if n >= 2 {
        let pad = |mut v: Vec<GaussRational>| {
            v.resize(n, GaussRational::from_int(0));
            SpherePoint::new(v).expect("fixture point on sphere")
        };
        points.push(pad(vec![
            GaussRational::from_ratio(3, 5),
            GaussRational::from_ratio(4, 5),
        ]));
        points.push(pad(vec![
            GaussRational::new(
                Rational::new(1.into(), 3.into()),
                Rational::new(2.into(), 3.into()),
            ),
            GaussRational::from_ratio(2, 3),
        ]));
    }
    points
}

pub(crate) fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=9);
    Rational::new(num.into(), den.into())
}

pub(crate) fn random_gauss(rng: &mut ChaCha8Rng) -> GaussRational {
    GaussRational::new(random_rational(rng), random_rational(rng))
}

pub(crate) fn random_gauss_nonzero(rng: &mut ChaCha8Rng) -> GaussRational {
    loop {
        let g = random_gauss(rng);
        if !num_traits::Zero::is_zero(&g) {
            return g;
        }
    }
}

/// Random sparse polynomial with total degree and term count bounded.
pub(crate) fn random_poly(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_degree: u32,
    max_terms: usize,
) -> BiPoly {
    use crate::multiindex::{BiMonomial, MultiIndex};
    let terms = rng.gen_range(1..=max_terms);
    let mut out = BiPoly::zero(n);
    for _ in 0..terms {
        let total = rng.gen_range(0..=max_degree);
        let p = rng.gen_range(0..=total);
        let q = total - p;
        let mut alpha = vec![0u32; n];
        for _ in 0..p {
            alpha[rng.gen_range(0..n)] += 1;
        }
        let mut beta = vec![0u32; n];
        for _ in 0..q {
            beta[rng.gen_range(0..n)] += 1;
        }
        out.add_term(
            BiMonomial::new(MultiIndex(alpha), MultiIndex(beta)),
            random_gauss_nonzero(rng),
        );
    }
    out
}

/// Random holomorphic polynomial (no conjugate variables).
pub(crate) fn random_holomorphic(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_degree: u32,
    max_terms: usize,
) -> BiPoly {
    use crate::multiindex::{BiMonomial, MultiIndex};
    let terms = rng.gen_range(1..=max_terms);
    let mut out = BiPoly::zero(n);
    for _ in 0..terms {
        let total = rng.gen_range(0..=max_degree);
        let mut alpha = vec![0u32; n];
        for _ in 0..total {
            alpha[rng.gen_range(0..n)] += 1;
        }
        out.add_term(
            BiMonomial::new(MultiIndex(alpha), MultiIndex::zero(n)),
            random_gauss_nonzero(rng),
        );
    }
    out
}
