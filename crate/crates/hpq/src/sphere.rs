//! Exact integration over the unit sphere of C^n and the shared context
//! that caches harmonic spaces, monomial bases, and pairing matrices.
//!
//! The single quadrature primitive is the closed-form monomial integral
//! against the rotation-invariant probability measure:
//!
//! ```text
//! ∫ z^a conj(z)^b dσ = 0                            if a != b
//!                    = (n-1)! a! / (n-1+|a|)!        if a == b
//! ```
//!
//! It is validated in the test and verify suites three ways: the symmetry
//! identities it must satisfy, the recurrence `sum_j I(a+e_j) = I(a)` forced
//! by `sum |z_j|^2 = 1` on the sphere, and Monte Carlo spot checks.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::harmonic::{build_space, HarmonicSpace};
use crate::matrix::Matrix;
use crate::multiindex::{BiMonomial, MultiIndex};
use crate::pattern::Bidegree;
use crate::poly::BiPoly;
use crate::Rational;

/// Ordered monomial basis of the bidegree-(p,q) coefficient space.
#[derive(Debug)]
pub struct MonomialBasis {
    pub bidegree: (u32, u32),
    pub monomials: Vec<BiMonomial>,
    index: HashMap<BiMonomial, usize>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &BiMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a (p,q)-homogeneous polynomial in this basis.
    pub fn coords_of(&self, f: &BiPoly) -> Vec<GaussRational> {
        let mut v = vec![GaussRational::zero(); self.monomials.len()];
        for (m, c) in f.terms() {
            let idx = self
                .position(m)
                .expect("polynomial term outside the monomial basis");
            v[idx] = c.clone();
        }
        v
    }
}

/// All exponent vectors of total degree `d` over `n` slots, in the lex order
/// matching [`BiMonomial`]'s graded-lex comparison.
fn compositions(n: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>, slots: usize, left: u32) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            rec(out, prefix, slots - 1, left - v);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut out, &mut Vec::new(), n, d);
    out.into_iter().map(MultiIndex).collect()
}

/// Binds the ambient dimension `n >= 1` and owns the exact caches. All
/// operations are pure; the caches are construction memoization only, so a
/// context can be shared across threads.
pub struct SphereContext {
    n: usize,
    spaces: RwLock<HashMap<Bidegree, Arc<HarmonicSpace>>>,
    monomials: RwLock<HashMap<(u32, u32), Arc<MonomialBasis>>>,
    pairings: RwLock<HashMap<((u32, u32), Bidegree), Arc<Matrix<GaussRational>>>>,
}

impl SphereContext {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        SphereContext {
            n,
            spaces: RwLock::new(HashMap::new()),
            monomials: RwLock::new(HashMap::new()),
            pairings: RwLock::new(HashMap::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn check_poly(&self, f: &BiPoly) -> Result<()> {
        if f.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.dim(),
            });
        }
        Ok(())
    }

    /// The closed-form monomial integral; see the module docs.
    pub fn integrate_monomial(&self, alpha: &MultiIndex, beta: &MultiIndex) -> Rational {
        assert_eq!(alpha.len(), self.n);
        assert_eq!(beta.len(), self.n);
        if alpha != beta {
            return Rational::zero();
        }
        self.diagonal_integral(alpha)
    }

    /// `I(a) = (n-1)! a! / (n-1+|a|)!`, the `alpha == beta` value.
    fn diagonal_integral(&self, alpha: &MultiIndex) -> Rational {
        let mut num = BigInt::one();
        for j in 0..self.n {
            for k in 2..=alpha.get(j) {
                num *= BigInt::from(k);
            }
        }
        // (n-1)! / (n-1+|a|)! = 1 / ((n) (n+1) ... (n-1+|a|))
        let mut den = BigInt::one();
        let total = alpha.total();
        for k in 0..total {
            den *= BigInt::from(self.n as u32 + k);
        }
        Rational::new(num, den)
    }

    /// Exact `∫ f dσ`.
    pub fn integrate(&self, f: &BiPoly) -> Result<GaussRational> {
        self.check_poly(f)?;
        let mut acc = GaussRational::zero();
        for (m, c) in f.terms() {
            if m.alpha == m.beta {
                let w = GaussRational::from_rational(self.diagonal_integral(&m.alpha));
                acc = &acc + &(c * &w);
            }
        }
        Ok(acc)
    }

    /// Exact L^2 pairing `<f, g> = ∫ f conj(g) dσ`.
    pub fn inner_product(&self, f: &BiPoly, g: &BiPoly) -> Result<GaussRational> {
        self.check_poly(f)?;
        self.check_poly(g)?;
        self.integrate(&f.try_mul(&g.conj())?)
    }

    /// The unconjugated pairing `∫ f g dσ`, used by the substitution
    /// identity checks.
    pub fn pairing_unconjugated(&self, f: &BiPoly, g: &BiPoly) -> Result<GaussRational> {
        self.check_poly(f)?;
        self.check_poly(g)?;
        self.integrate(&f.try_mul(g)?)
    }

    /// Exact squared L^2 norm.
    pub fn norm_sq(&self, f: &BiPoly) -> Result<GaussRational> {
        self.inner_product(f, f)
    }

    /// The ordered monomial basis of the bidegree-(p,q) span, cached.
    pub fn monomial_basis(&self, p: u32, q: u32) -> Arc<MonomialBasis> {
        if let Some(b) = self.monomials.read().unwrap().get(&(p, q)) {
            return b.clone();
        }
        let alphas = compositions(self.n, p);
        let betas = compositions(self.n, q);
        let mut monomials = Vec::with_capacity(alphas.len() * betas.len());
        for a in &alphas {
            for b in &betas {
                monomials.push(BiMonomial::new(a.clone(), b.clone()));
            }
        }
        // Leading monomials first, so kernel bases pivot on z1-heavy terms.
        monomials.sort();
        monomials.reverse();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let basis = Arc::new(MonomialBasis {
            bidegree: (p, q),
            monomials,
            index,
        });
        self.monomials
            .write()
            .unwrap()
            .entry((p, q))
            .or_insert(basis)
            .clone()
    }

    /// The harmonic space H(p,q), built once and cached.
    pub fn harmonic_basis(&self, bd: Bidegree) -> Arc<HarmonicSpace> {
        if let Some(s) = self.spaces.read().unwrap().get(&bd) {
            return s.clone();
        }
        let space = Arc::new(build_space(self, bd));
        let mut cache = self.spaces.write().unwrap();
        cache.entry(bd).or_insert(space).clone()
    }

    pub fn harmonic_dim(&self, bd: Bidegree) -> usize {
        self.harmonic_basis(bd).dim()
    }

    /// Pairing matrix `P[k][m] = <e_m, b_k>` between the source monomial
    /// basis of bidegree `(a, b)` and the basis of the target harmonic
    /// space. For any source-homogeneous `f` with coordinates `x`, `P x` is
    /// the vector of inner products `<f, b_k>`.
    pub fn pairing_matrix(
        &self,
        source: (u32, u32),
        target: Bidegree,
    ) -> Arc<Matrix<GaussRational>> {
        if let Some(p) = self.pairings.read().unwrap().get(&(source, target)) {
            return p.clone();
        }
        let space = self.harmonic_basis(target);
        let monos = self.monomial_basis(source.0, source.1);
        let p = Arc::new(pairing_of_basis(self, &monos, space.basis()));
        self.pairings
            .write()
            .unwrap()
            .entry((source, target))
            .or_insert(p)
            .clone()
    }

    pub(crate) fn insert_pairing(
        &self,
        source: (u32, u32),
        target: Bidegree,
        p: Arc<Matrix<GaussRational>>,
    ) {
        self.pairings
            .write()
            .unwrap()
            .entry((source, target))
            .or_insert(p);
    }
}

/// Rows of inner products of source monomials against the given polynomials:
/// `P[k][m] = <e_m, f_k>`. Terms of each `f_k` are bucketed by the signed
/// exponent difference `gamma - delta`, because `<z^a w^b, z^g w^d>` can
/// only survive integration when `a - b = g - d`.
pub(crate) fn pairing_of_basis(
    ctx: &SphereContext,
    monos: &MonomialBasis,
    polys: &[BiPoly],
) -> Matrix<GaussRational> {
    let cols = monos.len();
    let mut rows = Vec::with_capacity(polys.len());
    for f in polys {
        let mut buckets: HashMap<Vec<i64>, Vec<(&BiMonomial, GaussRational)>> = HashMap::new();
        for (m, c) in f.terms() {
            buckets
                .entry(m.alpha.signed_diff(&m.beta))
                .or_default()
                .push((m, c.conj()));
        }
        let mut row = vec![GaussRational::zero(); cols];
        for (mi, e) in monos.monomials.iter().enumerate() {
            let key = e.alpha.signed_diff(&e.beta);
            let Some(terms) = buckets.get(&key) else {
                continue;
            };
            let mut acc = GaussRational::zero();
            for (m, cc) in terms {
                // <e, c z^g w^d> = conj(c) * I(alpha + d); the difference
                // bucket guarantees alpha + d = beta + g.
                let weight = ctx.diagonal_integral(&e.alpha.plus(&m.beta));
                acc = &acc + &(cc * &GaussRational::from_rational(weight));
            }
            row[mi] = acc;
        }
        rows.push(row);
    }
    if polys.is_empty() {
        Matrix::zeros(0, cols)
    } else {
        Matrix::from_rows(rows)
    }
}
