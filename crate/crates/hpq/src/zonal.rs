//! Exact sphere points and the zonal reproducing kernels K_z of H(p,q).

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::pattern::Bidegree;
use crate::poly::BiPoly;
use crate::sphere::SphereContext;
use crate::Rational;

/// A point of the unit sphere with Gaussian-rational coordinates,
/// `sum |z_j|^2 = 1` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpherePoint {
    coords: Vec<GaussRational>,
}

impl SpherePoint {
    pub fn new(coords: Vec<GaussRational>) -> Result<Self> {
        let total: Rational = coords.iter().map(|c| c.norm_sqr()).sum();
        if !total.is_one() {
            return Err(Error::NotOnSphere);
        }
        Ok(SpherePoint { coords })
    }

    /// The base point `e_1 = (1, 0, ..., 0)`.
    pub fn base(n: usize) -> Self {
        let mut coords = vec![GaussRational::zero(); n];
        coords[0] = GaussRational::one();
        SpherePoint { coords }
    }

    /// Parses a comma-separated coordinate list, e.g. `3/5,4/5` or
    /// `(1/3+2/3i),2/3`, and validates it lies on the sphere.
    pub fn parse(text: &str) -> Result<Self> {
        SpherePoint::new(crate::parse::parse_gauss_list(text)?)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[GaussRational] {
        &self.coords
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coords.iter().map(|c| c.to_complex64()).collect()
    }
}

/// The reproducing element of H(p,q) at a sphere point: the unique member
/// with `<f, K_z> = f(z)` for every `f` in the space.
#[derive(Debug, Clone)]
pub struct ZonalKernel {
    pub bidegree: Bidegree,
    pub point: SpherePoint,
    pub kernel: BiPoly,
    /// `K_z(z)`, which equals `<K_z, K_z>`; real and positive whenever the
    /// space is nonzero.
    pub value_at_point: GaussRational,
}

impl SphereContext {
    /// Builds `K_z = sum_{j,k} conj(b_j(z)) (G^{-1})_{jk} b_k` for the space
    /// H(p,q). For a zero-dimensional space (which occurs only at n = 1 with
    /// p, q >= 1) the kernel is the zero polynomial and the positivity
    /// clause is vacuous.
    pub fn zonal_kernel(&self, bd: Bidegree, z: &SpherePoint) -> Result<ZonalKernel> {
        if z.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: z.dim(),
            });
        }
        let space = self.harmonic_basis(bd);
        if space.dim() == 0 {
            return Ok(ZonalKernel {
                bidegree: bd,
                point: z.clone(),
                kernel: BiPoly::zero(self.dim()),
                value_at_point: GaussRational::zero(),
            });
        }
        let w: Vec<GaussRational> = space
            .basis()
            .iter()
            .map(|b| Ok(b.eval(z.coords())?.conj()))
            .collect::<Result<_>>()?;
        let coeffs = space.solve_gram(&w);
        let kernel = space.combination(&coeffs);
        let value_at_point = kernel.eval(z.coords())?;
        Ok(ZonalKernel {
            bidegree: bd,
            point: z.clone(),
            kernel,
            value_at_point,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bd(p: u32, q: u32) -> Bidegree {
        Bidegree::new(p, q)
    }

    fn pt(parts: &[(i64, i64)]) -> SpherePoint {
        SpherePoint::new(
            parts
                .iter()
                .map(|&(n, d)| GaussRational::from_ratio(n, d))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_off_sphere_points() {
        let err = SpherePoint::new(vec![
            GaussRational::from_ratio(1, 2),
            GaussRational::from_ratio(1, 2),
        ])
        .unwrap_err();
        assert_eq!(err, Error::NotOnSphere);
    }

    #[test]
    fn accepts_complex_rational_points() {
        // ((1+2i)/3, 2/3): (1+4)/9 + 4/9 = 1.
        let z = SpherePoint::parse("(1/3+2/3i), 2/3").unwrap();
        assert_eq!(z.dim(), 2);
    }

    /// Gram-solve oracle values for H(1,0) at n=2, z=(3/5,4/5):
    /// K_z = (6/5) z1 + (8/5) z2 and K_z(z) = 2 = n.
    #[test]
    fn kernel_h10_345_point() {
        let ctx = SphereContext::new(2);
        let z = pt(&[(3, 5), (4, 5)]);
        let k = ctx.zonal_kernel(bd(1, 0), &z).unwrap();
        let expected = &BiPoly::variable(2, 0).scale(&GaussRational::from_ratio(6, 5))
            + &BiPoly::variable(2, 1).scale(&GaussRational::from_ratio(8, 5));
        assert_eq!(k.kernel, expected);
        assert_eq!(k.value_at_point, GaussRational::from_int(2));
        // <K, K> = K(z).
        assert_eq!(ctx.norm_sq(&k.kernel).unwrap(), k.value_at_point);
    }

    /// One-dimensional space at n=1: K_z(w) = w^p for z = 1.
    #[test]
    fn kernel_n1_holomorphic() {
        let ctx = SphereContext::new(1);
        let z = pt(&[(1, 1)]);
        for p in 1..=3u32 {
            let k = ctx.zonal_kernel(bd(p, 0), &z).unwrap();
            let mut expected = BiPoly::one(1);
            for _ in 0..p {
                expected = expected.try_mul(&BiPoly::variable(1, 0)).unwrap();
            }
            assert_eq!(k.kernel, expected);
            assert_eq!(k.value_at_point, GaussRational::one());
        }
    }

    #[test]
    fn kernel_h11_exact_identities() {
        let ctx = SphereContext::new(2);
        let z = SpherePoint::base(2);
        let k = ctx.zonal_kernel(bd(1, 1), &z).unwrap();
        assert!(!k.kernel.is_zero());
        assert_eq!(ctx.norm_sq(&k.kernel).unwrap(), k.value_at_point);
        assert!(k.value_at_point.is_real());
        assert!(k.value_at_point.re > Rational::zero());
    }

    /// For H(1,0) the kernel value at its own point is n, at every unit z.
    #[test]
    fn kernel_value_is_n_for_linear_space() {
        for n in [1usize, 2, 3] {
            let ctx = SphereContext::new(n);
            let mut points = vec![SpherePoint::base(n)];
            if n >= 2 {
                let mut coords = vec![
                    GaussRational::from_ratio(3, 5),
                    GaussRational::from_ratio(4, 5),
                ];
                coords.resize(n, GaussRational::zero());
                points.push(SpherePoint::new(coords).unwrap());
            }
            for z in points {
                let k = ctx.zonal_kernel(bd(1, 0), &z).unwrap();
                assert_eq!(k.value_at_point, GaussRational::from_int(n as i64));
            }
        }
    }

    /// Reproducing identity: <f, K_z> = f(z) for every basis element.
    #[test]
    fn reproducing_identity_small_sweep() {
        let ctx = SphereContext::new(2);
        let points = [pt(&[(1, 1), (0, 1)]), pt(&[(3, 5), (4, 5)])];
        for p in 0..=2u32 {
            for q in 0..=(2 - p) {
                let space = ctx.harmonic_basis(bd(p, q));
                for z in &points {
                    let k = ctx.zonal_kernel(bd(p, q), z).unwrap();
                    for f in space.basis() {
                        assert_eq!(
                            ctx.inner_product(f, &k.kernel).unwrap(),
                            f.eval(z.coords()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn zero_dimensional_space_kernel_is_zero() {
        let ctx = SphereContext::new(1);
        let z = pt(&[(1, 1)]);
        let k = ctx.zonal_kernel(bd(1, 1), &z).unwrap();
        assert!(k.kernel.is_zero());
    }
}
