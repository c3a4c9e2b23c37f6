//! Sparse bidegree polynomials: finite sums of terms `c * z^alpha * w^beta`
//! with Gaussian-rational coefficients, where `w_j` stands for `conj(z_j)`.
//!
//! All arithmetic is exact. A polynomial never stores a zero coefficient;
//! the zero polynomial has an empty term map.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::matrix::Matrix;
use crate::multiindex::{BiMonomial, MultiIndex};
use crate::Rational;

/// Sparse polynomial in `z_1..z_n` and their conjugates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    n: usize,
    terms: BTreeMap<BiMonomial, GaussRational>,
}

impl BiPoly {
    pub fn zero(n: usize) -> Self {
        BiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussRational) -> Self {
        let mut p = BiPoly::zero(n);
        p.add_term(BiMonomial::one(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        BiPoly::constant(n, GaussRational::one())
    }

    /// The coordinate `z_j`, 0-based.
    pub fn variable(n: usize, j: usize) -> Self {
        let mut p = BiPoly::zero(n);
        p.add_term(
            BiMonomial::new(MultiIndex::unit(n, j), MultiIndex::zero(n)),
            GaussRational::one(),
        );
        p
    }

    /// The conjugate coordinate `w_j = conj(z_j)`, 0-based.
    pub fn conj_variable(n: usize, j: usize) -> Self {
        let mut p = BiPoly::zero(n);
        p.add_term(
            BiMonomial::new(MultiIndex::zero(n), MultiIndex::unit(n, j)),
            GaussRational::one(),
        );
        p
    }

    pub fn monomial(n: usize, m: BiMonomial, c: GaussRational) -> Self {
        assert_eq!(m.dim(), n);
        let mut p = BiPoly::zero(n);
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from monomial coordinates against an ordered
    /// monomial list (zero coefficients skipped).
    pub fn from_coords(n: usize, monos: &[BiMonomial], coords: &[GaussRational]) -> Self {
        let mut p = BiPoly::zero(n);
        for (m, c) in monos.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&BiMonomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &BiMonomial) -> GaussRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussRational::zero)
    }

    /// Adds `c * m` into the polynomial, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: BiMonomial, c: GaussRational) {
        debug_assert_eq!(m.dim(), self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &BiPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Exact product. Errors on dimension mismatch.
    pub fn try_mul(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_dim(other)?;
        let mut out = BiPoly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero(self.n);
        }
        BiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Conjugation: swaps each `(alpha, beta)` and conjugates coefficients.
    /// An involutive ring homomorphism.
    pub fn conj(&self) -> BiPoly {
        BiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.conj(), c.conj()))
                .collect(),
        }
    }

    /// Complex Laplacian `4 * sum_j d^2/(dz_j d(conj z_j))`, computed term by
    /// term: `c z^a w^b` contributes `4 c a_j b_j z^(a-e_j) w^(b-e_j)`.
    pub fn laplacian(&self) -> BiPoly {
        let mut out = BiPoly::zero(self.n);
        for (m, c) in &self.terms {
            for j in 0..self.n {
                let (aj, bj) = (m.alpha.get(j), m.beta.get(j));
                if aj == 0 || bj == 0 {
                    continue;
                }
                let factor = GaussRational::from_int(4 * aj as i64 * bj as i64);
                let mono = BiMonomial::new(
                    m.alpha.minus_unit(j).unwrap(),
                    m.beta.minus_unit(j).unwrap(),
                );
                out.add_term(mono, c * &factor);
            }
        }
        out
    }

    /// Radial dilation `f_r(z) = f(r z)`: each bidegree-(p,q) term picks up
    /// the factor `r^(p+q)`.
    pub fn scale_radial(&self, r: &Rational) -> BiPoly {
        let mut out = BiPoly::zero(self.n);
        for (m, c) in &self.terms {
            let d = m.total_degree();
            let mut factor = Rational::one();
            for _ in 0..d {
                factor *= r;
            }
            out.add_term(m.clone(), c * &GaussRational::from_rational(factor));
        }
        out
    }

    /// Substitutes `z -> U z` into the holomorphic variables and the
    /// conjugate substitution into the `w` variables, for an exactly unitary
    /// `U` (checked: `U U* = I`). Preserves bidegree.
    pub fn substitute_linear(&self, u: &Matrix<GaussRational>) -> Result<BiPoly> {
        if u.rows() != self.n || u.cols() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "expected {0}x{0} matrix, got {1}x{2}",
                self.n,
                u.rows(),
                u.cols()
            )));
        }
        if !u.is_unitary() {
            return Err(Error::NotUnitary);
        }
        // Linear forms (U z)_j and their conjugates, with powers built on
        // demand per term.
        let mut forms = Vec::with_capacity(self.n);
        let mut conj_forms = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let mut lf = BiPoly::zero(self.n);
            for k in 0..self.n {
                lf = &lf + &BiPoly::variable(self.n, k).scale(u.get(j, k));
            }
            conj_forms.push(lf.conj());
            forms.push(lf);
        }
        let mut out = BiPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut term = BiPoly::constant(self.n, c.clone());
            for j in 0..self.n {
                for _ in 0..m.alpha.get(j) {
                    term = term.try_mul(&forms[j])?;
                }
                for _ in 0..m.beta.get(j) {
                    term = term.try_mul(&conj_forms[j])?;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Exact evaluation at a Gaussian-rational point; `w` slots use the
    /// conjugated coordinates.
    pub fn eval(&self, point: &[GaussRational]) -> Result<GaussRational> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        let conj: Vec<GaussRational> = point.iter().map(|z| z.conj()).collect();
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for j in 0..self.n {
                for _ in 0..m.alpha.get(j) {
                    v = &v * &point[j];
                }
                for _ in 0..m.beta.get(j) {
                    v = &v * &conj[j];
                }
            }
            acc += &v;
        }
        Ok(acc)
    }

    /// Floating-point evaluation, used by the Monte Carlo lane.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.n);
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex64();
            for j in 0..self.n {
                for _ in 0..m.alpha.get(j) {
                    v *= point[j];
                }
                for _ in 0..m.beta.get(j) {
                    v *= point[j].conj();
                }
            }
            acc += v;
        }
        acc
    }

    /// The bidegrees `(|alpha|, |beta|)` realized by the terms.
    pub fn term_bidegrees(&self) -> std::collections::BTreeSet<(u32, u32)> {
        self.terms.keys().map(|m| m.bidegree()).collect()
    }

    /// `Some((p, q))` if every term has the same bidegree (zero counts as
    /// homogeneous of no particular bidegree).
    pub fn homogeneous_bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|m| m.bidegree());
        let first = it.next()?;
        if it.all(|b| b == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Splits into bidegree-homogeneous components.
    pub fn homogeneous_components(&self) -> BTreeMap<(u32, u32), BiPoly> {
        let mut out: BTreeMap<(u32, u32), BiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree())
                .or_insert_with(|| BiPoly::zero(self.n))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Canonical text form; parses back to an equal polynomial.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Leading term first: iterate the graded-lex order in reverse.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c.is_real() && c.re < Rational::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let is_const = m.total_degree() == 0;
            if is_const {
                out.push_str(&mag.to_string());
            } else if mag.is_real() && mag.re.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{}*{}", mag, m));
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl serde::Serialize for BiPoly {
    /// Wire form `{"n": 2, "text": "z1*w2 - 1/2"}`; the text is the
    /// canonical rendering, so serialization round-trips exactly.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BiPoly", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("text", &self.render())?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(serde::Deserialize)]
        struct Wire {
            n: usize,
            text: String,
        }
        let w = Wire::deserialize(d)?;
        crate::parse::parse_poly(&w.text, w.n).map_err(D::Error::custom)
    }
}

impl std::ops::Add for &BiPoly {
    type Output = BiPoly;
    /// Panics if dimensions differ.
    fn add(self, rhs: &BiPoly) -> BiPoly {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &BiPoly {
    type Output = BiPoly;
    /// Panics if dimensions differ.
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl std::ops::Mul for &BiPoly {
    type Output = BiPoly;
    /// Panics if dimensions differ; use [`BiPoly::try_mul`] for the checked
    /// form.
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, j: usize) -> BiPoly {
        BiPoly::variable(n, j - 1)
    }

    fn w(n: usize, j: usize) -> BiPoly {
        BiPoly::conj_variable(n, j - 1)
    }

    #[test]
    fn monomial_product() {
        let p = z(2, 1).try_mul(&w(2, 2)).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.homogeneous_bidegree(), Some((1, 1)));
    }

    #[test]
    fn multiply_by_zero_annihilates() {
        let f = &z(2, 1) + &w(2, 2);
        let p = f.try_mul(&BiPoly::zero(2)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let f = &z(2, 1) + &z(2, 2);
        let g = &z(2, 1) - &z(2, 2);
        let p = f.try_mul(&g).unwrap();
        let expected = &z(2, 1).try_mul(&z(2, 1)).unwrap() - &z(2, 2).try_mul(&z(2, 2)).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn product_dimension_mismatch() {
        let err = z(2, 1).try_mul(&z(3, 1)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn homogeneous_product_bidegree_adds() {
        let f = &z(2, 1).try_mul(&z(2, 2)).unwrap() + &z(2, 1).try_mul(&z(2, 1)).unwrap();
        let g = &w(2, 1) + &w(2, 2);
        assert_eq!(f.homogeneous_bidegree(), Some((2, 0)));
        let p = f.try_mul(&g).unwrap();
        assert_eq!(p.homogeneous_bidegree(), Some((2, 1)));
    }

    #[test]
    fn laplacian_term_rules() {
        // Mixed indices annihilate.
        assert!(z(2, 1).try_mul(&w(2, 2)).unwrap().laplacian().is_zero());
        // |z1|^2 -> constant 4.
        let lap = z(2, 1).try_mul(&w(2, 1)).unwrap().laplacian();
        assert_eq!(lap, BiPoly::constant(2, GaussRational::from_int(4)));
        // z1^2 w1 -> 8 z1 (term rule with alpha_1 = 2, beta_1 = 1).
        let f = z(2, 1)
            .try_mul(&z(2, 1))
            .unwrap()
            .try_mul(&w(2, 1))
            .unwrap();
        assert_eq!(f.laplacian(), z(2, 1).scale(&GaussRational::from_int(8)));
    }

    #[test]
    fn laplacian_product_identity_each_slot() {
        for n in 1..=3 {
            for j in 1..=n {
                let lap = z(n, j).try_mul(&w(n, j)).unwrap().laplacian();
                assert_eq!(lap, BiPoly::constant(n, GaussRational::from_int(4)));
            }
        }
    }

    #[test]
    fn radial_scaling_per_term_degree() {
        let half = Rational::new(1.into(), 2.into());
        let f = z(2, 1).try_mul(&z(2, 1)).unwrap();
        assert_eq!(
            f.scale_radial(&half),
            f.scale(&GaussRational::from_ratio(1, 4))
        );
        // r = 1 is the identity.
        let g = &z(2, 1).try_mul(&w(2, 2)).unwrap() + &BiPoly::one(2);
        assert_eq!(g.scale_radial(&Rational::one()), g);
        // Per-term scaling: (z1 w2 + 1, r = 1/3) -> (1/9) z1 w2 + 1.
        let third = Rational::new(1.into(), 3.into());
        let scaled = g.scale_radial(&third);
        let expected = &z(2, 1)
            .try_mul(&w(2, 2))
            .unwrap()
            .scale(&GaussRational::from_ratio(1, 9))
            + &BiPoly::one(2);
        assert_eq!(scaled, expected);
    }

    #[test]
    fn substitution_examples() {
        use crate::matrix::Matrix;
        // Coordinate swap sends z1 to z2.
        let swap = Matrix::from_rows(vec![
            vec![GaussRational::from_int(0), GaussRational::from_int(1)],
            vec![GaussRational::from_int(1), GaussRational::from_int(0)],
        ]);
        assert_eq!(z(2, 1).substitute_linear(&swap).unwrap(), z(2, 2));
        // Diagonal phase diag(i, 1) sends z1 to i*z1.
        let phase = Matrix::from_rows(vec![
            vec![GaussRational::i(), GaussRational::from_int(0)],
            vec![GaussRational::from_int(0), GaussRational::from_int(1)],
        ]);
        assert_eq!(
            z(2, 1).substitute_linear(&phase).unwrap(),
            z(2, 1).scale(&GaussRational::i())
        );
        // The 3-4-5 rotation is exactly unitary; direct substitution.
        let rot = Matrix::from_rows(vec![
            vec![GaussRational::from_ratio(3, 5), GaussRational::from_ratio(4, 5)],
            vec![GaussRational::from_ratio(-4, 5), GaussRational::from_ratio(3, 5)],
        ]);
        let expected = &z(2, 1).scale(&GaussRational::from_ratio(3, 5))
            + &z(2, 2).scale(&GaussRational::from_ratio(4, 5));
        assert_eq!(z(2, 1).substitute_linear(&rot).unwrap(), expected);
        // Bidegree is preserved and non-unitary matrices are rejected.
        let f = z(2, 1).try_mul(&w(2, 2)).unwrap();
        assert_eq!(
            f.substitute_linear(&rot).unwrap().homogeneous_bidegree(),
            Some((1, 1))
        );
        let shear = Matrix::from_rows(vec![
            vec![GaussRational::from_int(1), GaussRational::from_int(1)],
            vec![GaussRational::from_int(0), GaussRational::from_int(1)],
        ]);
        assert!(matches!(
            f.substitute_linear(&shear),
            Err(Error::NotUnitary)
        ));
    }

    #[test]
    fn conj_is_ring_homomorphism() {
        let f = &z(2, 1).scale(&GaussRational::i()) + &w(2, 2);
        let g = &z(2, 2) - &BiPoly::constant(2, GaussRational::from_ratio(1, 2));
        let lhs = f.try_mul(&g).unwrap().conj();
        let rhs = f.conj().try_mul(&g.conj()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(f.conj().conj(), f);
    }

    #[test]
    fn eval_exact() {
        // f = z1*w1 - 1/2 at (3/5, 4/5): |3/5|^2 - 1/2 = 9/25 - 1/2 = -7/50.
        let f = &z(2, 1).try_mul(&w(2, 1)).unwrap()
            - &BiPoly::constant(2, GaussRational::from_ratio(1, 2));
        let pt = vec![
            GaussRational::from_ratio(3, 5),
            GaussRational::from_ratio(4, 5),
        ];
        assert_eq!(f.eval(&pt).unwrap(), GaussRational::from_ratio(-7, 50));
    }
}
