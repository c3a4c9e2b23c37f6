//! Multi-indices and bidegree monomials `z^alpha * conj(z)^beta`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `alpha` of a monomial `z^alpha`; its length is the
/// ambient dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The standard basis index `e_j` (1 in slot `j`, 0-based).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree `|alpha|`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    /// `alpha + beta` componentwise.
    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `alpha - e_j`, or `None` if slot `j` is already zero.
    pub fn minus_unit(&self, j: usize) -> Option<MultiIndex> {
        if self.0[j] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[j] -= 1;
        Some(MultiIndex(v))
    }

    /// Signed componentwise difference `alpha - beta`.
    pub fn signed_diff(&self, other: &MultiIndex) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| *a as i64 - *b as i64)
            .collect()
    }
}

/// Monomial `z^alpha * w^beta` where `w_j` denotes `conj(z_j)`. Its bidegree
/// is `(|alpha|, |beta|)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiMonomial {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
}

impl BiMonomial {
    pub fn new(alpha: MultiIndex, beta: MultiIndex) -> Self {
        debug_assert_eq!(alpha.len(), beta.len());
        BiMonomial { alpha, beta }
    }

    pub fn one(n: usize) -> Self {
        BiMonomial::new(MultiIndex::zero(n), MultiIndex::zero(n))
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.alpha.total(), self.beta.total())
    }

    pub fn total_degree(&self) -> u32 {
        self.alpha.total() + self.beta.total()
    }

    /// Conjugation swaps the holomorphic and antiholomorphic exponents.
    pub fn conj(&self) -> Self {
        BiMonomial::new(self.beta.clone(), self.alpha.clone())
    }

    pub fn mul(&self, other: &BiMonomial) -> BiMonomial {
        BiMonomial::new(self.alpha.plus(&other.alpha), self.beta.plus(&other.beta))
    }
}

impl Ord for BiMonomial {
    /// Graded lexicographic order on the concatenated exponent vector
    /// `(alpha, beta)`: by total degree first, then lex. Fixes canonical
    /// rendering and deterministic iteration.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.alpha.0.cmp(&other.alpha.0))
            .then_with(|| self.beta.0.cmp(&other.beta.0))
    }
}

impl PartialOrd for BiMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, &e) in self.alpha.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("z{}", j + 1)),
                _ => parts.push(format!("z{}^{}", j + 1, e)),
            }
        }
        for (j, &e) in self.beta.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("w{}", j + 1)),
                _ => parts.push(format!("w{}^{}", j + 1, e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let n = 2;
        let one = BiMonomial::one(n);
        let z1 = BiMonomial::new(MultiIndex::unit(n, 0), MultiIndex::zero(n));
        let w2 = BiMonomial::new(MultiIndex::zero(n), MultiIndex::unit(n, 1));
        let z1w2 = z1.mul(&w2);
        assert!(one < z1);
        assert!(w2 < z1, "grade ties break on alpha first");
        assert!(z1 < z1w2);
    }

    #[test]
    fn bidegree_of_product_adds() {
        let a = BiMonomial::new(MultiIndex(vec![2, 0, 1]), MultiIndex(vec![0, 1, 0]));
        let b = BiMonomial::new(MultiIndex(vec![0, 1, 0]), MultiIndex(vec![1, 1, 0]));
        assert_eq!(a.mul(&b).bidegree(), (4, 3));
        assert_eq!(a.conj().bidegree(), (1, 3));
        assert_eq!(a.conj().conj(), a);
    }
}
