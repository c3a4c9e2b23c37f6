//! Bidegree projections and supports.
//!
//! A bidegree-(a,b) polynomial restricted to the sphere decomposes into
//! harmonic components at `(a-j, b-j)` for `0 <= j <= min(a,b)`, so only
//! those finitely many bidegrees need to be probed. The projection itself is
//! an exact Gram solve: the unique `h` in H(p,q) with `<f - h, b> = 0` for
//! every basis element `b`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::Result;
use crate::gauss::GaussRational;
use crate::pattern::Bidegree;
use crate::poly::BiPoly;
use crate::sphere::SphereContext;

impl SphereContext {
    /// Inner products `<f, b_k>` against the H(p,q) basis, accumulated over
    /// every homogeneous component of `f` that can meet the space. `None`
    /// when the space is zero-dimensional or no component is compatible.
    fn inner_vector(&self, f: &BiPoly, bd: Bidegree) -> Result<Option<Vec<GaussRational>>> {
        let space = self.harmonic_basis(bd);
        if space.dim() == 0 {
            return Ok(None);
        }
        let mut v: Option<Vec<GaussRational>> = None;
        for ((a, b), component) in f.homogeneous_components() {
            // Components pair with H(p,q) only when a - b = p - q and the
            // component sits at or above the space (j = a - p >= 0).
            if (a as i64 - b as i64) != bd.diff() || a < bd.p {
                continue;
            }
            let pairing = self.pairing_matrix((a, b), bd);
            let coords = self.monomial_basis(a, b).coords_of(&component);
            let part = pairing.matvec(&coords);
            v = Some(match v {
                None => part,
                Some(mut acc) => {
                    for (x, y) in acc.iter_mut().zip(&part) {
                        *x = &*x + y;
                    }
                    acc
                }
            });
        }
        Ok(v)
    }

    /// The orthogonal projection of `f` onto H(p,q): idempotent, and zero on
    /// every H(r,s) with `(r,s) != (p,q)`.
    pub fn project_bidegree(&self, f: &BiPoly, bd: Bidegree) -> Result<BiPoly> {
        self.inner_product(f, f)?; // dimension check via cheap probe
        match self.inner_vector(f, bd)? {
            None => Ok(BiPoly::zero(self.dim())),
            Some(v) => {
                if v.iter().all(|x| x.is_zero()) {
                    return Ok(BiPoly::zero(self.dim()));
                }
                let space = self.harmonic_basis(bd);
                Ok(space.combination(&space.solve_gram(&v)))
            }
        }
    }

    /// The candidate bidegrees dominated by the terms of `f`.
    fn support_candidates(&self, f: &BiPoly) -> BTreeSet<Bidegree> {
        let mut candidates = BTreeSet::new();
        for (a, b) in f.term_bidegrees() {
            for j in 0..=a.min(b) {
                candidates.insert(Bidegree::new(a - j, b - j));
            }
        }
        candidates
    }

    /// The finite set `{(p,q) : project_bidegree(f, (p,q)) != 0}`. Because
    /// the Gram matrix is invertible, a projection is nonzero exactly when
    /// its inner-product vector is, so no solve is needed here.
    pub fn bidegree_support(&self, f: &BiPoly) -> Result<BTreeSet<Bidegree>> {
        let mut out = BTreeSet::new();
        for bd in self.support_candidates(f) {
            if let Some(v) = self.inner_vector(f, bd)? {
                if v.iter().any(|x| !x.is_zero()) {
                    out.insert(bd);
                }
            }
        }
        Ok(out)
    }

    /// The nonzero harmonic components of `f`, keyed by bidegree. On the
    /// sphere `f` equals the sum of the returned components.
    pub fn support_components(&self, f: &BiPoly) -> Result<BTreeMap<Bidegree, BiPoly>> {
        let mut out = BTreeMap::new();
        for bd in self.support_candidates(f) {
            if let Some(v) = self.inner_vector(f, bd)? {
                if v.iter().any(|x| !x.is_zero()) {
                    let space = self.harmonic_basis(bd);
                    out.insert(bd, space.combination(&space.solve_gram(&v)));
                }
            }
        }
        Ok(out)
    }
}
