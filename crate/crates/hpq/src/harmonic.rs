//! Construction of the harmonic spaces H(p,q): the kernel of the complex
//! Laplacian on the bidegree-(p,q) monomial span, with an exact Gram matrix
//! and its solver.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::gauss::GaussRational;
use crate::matrix::Matrix;
use crate::pattern::Bidegree;
use crate::poly::BiPoly;
use crate::sphere::{pairing_of_basis, MonomialBasis, SphereContext};
use crate::Rational;

/// A basis of H(p,q) with its exact Gram matrix.
///
/// The basis is orthogonal only in the block sense (it is a plain kernel
/// basis); all projection formulas go through the Gram matrix instead of
/// orthonormalization, which would introduce square roots.
pub struct HarmonicSpace {
    n: usize,
    bidegree: Bidegree,
    basis: Vec<BiPoly>,
    /// `gram[j][k] = <basis_j, basis_k>`, Hermitian positive definite.
    gram: Matrix<GaussRational>,
    /// `(gram^T)^{-1}`; solves `gram^T c = v` by a single matvec.
    solver: Matrix<GaussRational>,
    /// Source monomial basis and the basis coordinate matrix (monomials x
    /// basis), kept for exact membership tests.
    monos: Arc<MonomialBasis>,
    coord_matrix: Matrix<GaussRational>,
}

impl HarmonicSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn basis(&self) -> &[BiPoly] {
        &self.basis
    }

    pub fn gram(&self) -> &Matrix<GaussRational> {
        &self.gram
    }

    /// Solves `gram^T c = v`, the coefficient recovery behind projections
    /// and zonal kernels.
    pub fn solve_gram(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        self.solver.matvec(v)
    }

    /// Assembles `sum c_k basis_k`.
    pub fn combination(&self, coeffs: &[GaussRational]) -> BiPoly {
        let mut out = BiPoly::zero(self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    /// Exact membership of a polynomial in the span of the basis.
    pub fn contains(&self, f: &BiPoly) -> bool {
        if f.is_zero() {
            return true;
        }
        if f.dim() != self.n
            || f.homogeneous_bidegree() != Some((self.bidegree.p, self.bidegree.q))
        {
            return false;
        }
        let x = self.monos.coords_of(f);
        self.coord_matrix.solve(&x).is_ok()
    }

    /// Coordinates of a member in the basis, if it lies in the span.
    pub fn coordinates(&self, f: &BiPoly) -> Result<Vec<GaussRational>> {
        let x = self.monos.coords_of(f);
        self.coord_matrix.solve(&x)
    }
}

/// Rescales a rational kernel vector to a primitive integer vector with
/// positive leading entry; cosmetic only.
fn normalize_kernel_vector(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut nums: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut gcd = BigInt::zero();
    for x in &nums {
        gcd = gcd.gcd(x);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for x in &mut nums {
            *x /= &gcd;
        }
    }
    if let Some(first) = nums.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut nums {
                *x = -x.clone();
            }
        }
    }
    nums.into_iter().map(Rational::from).collect()
}

/// Builds H(p,q) for the given context: the exact nullspace of the
/// Laplacian map from the (p,q) monomial span to the (p-1,q-1) span. For
/// `p = 0` or `q = 0` the map is zero and every monomial is harmonic.
pub(crate) fn build_space(ctx: &SphereContext, bd: Bidegree) -> HarmonicSpace {
    let n = ctx.dim();
    let monos = ctx.monomial_basis(bd.p, bd.q);
    let dim_v = monos.len();

    let kernel: Vec<Vec<Rational>> = if bd.p == 0 || bd.q == 0 {
        (0..dim_v)
            .map(|i| {
                let mut v = vec![Rational::zero(); dim_v];
                v[i] = Rational::one();
                v
            })
            .collect()
    } else {
        let targets = ctx.monomial_basis(bd.p - 1, bd.q - 1);
        let mut lap: Matrix<Rational> = Matrix::zeros(targets.len(), dim_v);
        for (col, m) in monos.monomials.iter().enumerate() {
            for j in 0..n {
                let (aj, bj) = (m.alpha.get(j), m.beta.get(j));
                if aj == 0 || bj == 0 {
                    continue;
                }
                let target = crate::multiindex::BiMonomial::new(
                    m.alpha.minus_unit(j).unwrap(),
                    m.beta.minus_unit(j).unwrap(),
                );
                let row = targets.position(&target).unwrap();
                let mut cur = lap.get(row, col).clone();
                cur += Rational::from(BigInt::from(4 * aj as i64 * bj as i64));
                lap.set(row, col, cur);
            }
        }
        lap.kernel()
            .into_iter()
            .map(|v| normalize_kernel_vector(&v))
            .collect()
    };

    let basis: Vec<BiPoly> = kernel
        .iter()
        .map(|v| {
            let coords: Vec<GaussRational> = v
                .iter()
                .map(|r| GaussRational::from_rational(r.clone()))
                .collect();
            BiPoly::from_coords(n, &monos.monomials, &coords)
        })
        .collect();

    debug_assert!(basis.iter().all(|b| b.laplacian().is_zero()));

    // Gram = (P B)^T where P pairs source monomials against the basis and B
    // is the coordinate matrix.
    let pairing = Arc::new(pairing_of_basis(ctx, &monos, &basis));
    let coord_matrix = Matrix::from_fn(dim_v, basis.len(), |i, j| {
        basis[j].coefficient(&monos.monomials[i])
    });
    let gram = pairing.matmul(&coord_matrix).transpose();
    let solver = if basis.is_empty() {
        Matrix::zeros(0, 0)
    } else {
        gram.transpose()
            .inverse()
            .expect("Gram matrix of a harmonic basis is invertible")
    };
    ctx.insert_pairing((bd.p, bd.q), bd, pairing);

    HarmonicSpace {
        n,
        bidegree: bd,
        basis,
        gram,
        solver,
        monos,
        coord_matrix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bd(p: u32, q: u32) -> Bidegree {
        Bidegree::new(p, q)
    }

    #[test]
    fn linear_monomials_are_harmonic() {
        let ctx = SphereContext::new(2);
        let space = ctx.harmonic_basis(bd(1, 0));
        assert_eq!(space.dim(), 2);
        assert_eq!(space.basis()[0], BiPoly::variable(2, 0));
        assert_eq!(space.basis()[1], BiPoly::variable(2, 1));
    }

    #[test]
    fn h11_n2_has_dimension_3() {
        let ctx = SphereContext::new(2);
        // Kernel-rank oracle: the monomial space has dimension 4 and the
        // Laplacian matrix [4 0 0 4] has rank 1.
        assert_eq!(ctx.monomial_basis(1, 1).len(), 4);
        let space = ctx.harmonic_basis(bd(1, 1));
        assert_eq!(space.dim(), 3);
        for b in space.basis() {
            assert!(b.laplacian().is_zero());
            assert_eq!(b.homogeneous_bidegree(), Some((1, 1)));
        }
    }

    #[test]
    fn h21_n2_has_dimension_4() {
        let ctx = SphereContext::new(2);
        let space = ctx.harmonic_basis(bd(2, 1));
        assert_eq!(space.dim(), 4);
    }

    /// Closed form for n=2: dim H(p,q) = p + q + 1.
    #[test]
    fn n2_dimension_closed_form() {
        let ctx = SphereContext::new(2);
        for p in 0..=4u32 {
            for q in 0..=(4 - p) {
                assert_eq!(
                    ctx.harmonic_dim(bd(p, q)),
                    (p + q + 1) as usize,
                    "dim H({},{})",
                    p,
                    q
                );
            }
        }
    }

    /// Rank-nullity against a second elimination order (reversed columns).
    #[test]
    fn kernel_rank_oracle_second_order() {
        let ctx = SphereContext::new(3);
        for (p, q) in [(1u32, 1u32), (2, 1), (2, 2)] {
            let monos = ctx.monomial_basis(p, q);
            let targets = ctx.monomial_basis(p - 1, q - 1);
            let mut lap: Matrix<Rational> = Matrix::zeros(targets.len(), monos.len());
            let mut lap_rev: Matrix<Rational> = Matrix::zeros(targets.len(), monos.len());
            let cols = monos.len();
            for (col, m) in monos.monomials.iter().enumerate() {
                for j in 0..3 {
                    let (aj, bj) = (m.alpha.get(j), m.beta.get(j));
                    if aj == 0 || bj == 0 {
                        continue;
                    }
                    let tgt = crate::multiindex::BiMonomial::new(
                        m.alpha.minus_unit(j).unwrap(),
                        m.beta.minus_unit(j).unwrap(),
                    );
                    let row = targets.position(&tgt).unwrap();
                    let inc = Rational::from(BigInt::from(4 * aj as i64 * bj as i64));
                    let cur = lap.get(row, col).clone();
                    lap.set(row, col, cur + inc.clone());
                    let cur = lap_rev.get(row, cols - 1 - col).clone();
                    lap_rev.set(row, cols - 1 - col, cur + inc);
                }
            }
            let space = ctx.harmonic_basis(bd(p, q));
            assert_eq!(space.dim() + lap.rank(), monos.len());
            assert_eq!(lap.rank(), lap_rev.rank());
        }
    }

    #[test]
    fn n1_degenerate_spaces() {
        let ctx = SphereContext::new(1);
        assert_eq!(ctx.harmonic_dim(bd(3, 0)), 1);
        assert_eq!(ctx.harmonic_dim(bd(0, 2)), 1);
        assert_eq!(ctx.harmonic_dim(bd(1, 1)), 0);
        assert_eq!(ctx.harmonic_dim(bd(2, 1)), 0);
    }

    #[test]
    fn gram_is_hermitian_positive_definite() {
        for n in [2usize, 3] {
            let ctx = SphereContext::new(n);
            for (p, q) in [(1u32, 0u32), (1, 1), (2, 1)] {
                let space = ctx.harmonic_basis(bd(p, q));
                assert!(space.gram().is_hermitian_positive_definite());
            }
        }
    }

    #[test]
    fn membership_test() {
        let ctx = SphereContext::new(2);
        let space = ctx.harmonic_basis(bd(1, 1));
        let z1w2 = BiPoly::variable(2, 0)
            .try_mul(&BiPoly::conj_variable(2, 1))
            .unwrap();
        assert!(space.contains(&z1w2));
        let z1w1 = BiPoly::variable(2, 0)
            .try_mul(&BiPoly::conj_variable(2, 0))
            .unwrap();
        assert!(!space.contains(&z1w1));
        let z2w2 = BiPoly::variable(2, 1)
            .try_mul(&BiPoly::conj_variable(2, 1))
            .unwrap();
        assert!(space.contains(&(&z1w1 - &z2w2)));
    }
}
