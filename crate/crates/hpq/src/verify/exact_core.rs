//! Invariant suite for the exact arithmetic layer: field axioms,
//! conjugation, the Laplacian term rules, unitary substitution, kernels,
//! and the parser round-trip.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    random_gauss, random_gauss_nonzero, random_poly, random_rational, test_unitaries,
    CheckResult, VerifyOptions,
};
use crate::gauss::GaussRational;
use crate::matrix::Matrix;
use crate::parse::parse_poly;
use crate::poly::BiPoly;
use crate::Rational;

pub(super) fn run(opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    vec![
        field_axioms(&mut rng),
        conj_ring_homomorphism(&mut rng),
        laplacian_rules(&mut rng),
        substitution_homomorphism(&mut rng),
        kernel_rank_nullity(&mut rng),
        parser_round_trip(&mut rng),
    ]
}

fn field_axioms(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut failures = 0;
    let trials = 200;
    for _ in 0..trials {
        let a = random_gauss(rng);
        let b = random_gauss(rng);
        let c = random_gauss(rng);
        let assoc_add = (&(&a + &b) + &c) == (&a + &(&b + &c));
        let assoc_mul = (&(&a * &b) * &c) == (&a * &(&b * &c));
        let distrib = (&a * &(&b + &c)) == (&(&a * &b) + &(&a * &c));
        let inverse = {
            let x = random_gauss_nonzero(rng);
            &x * &x.recip() == GaussRational::one()
        };
        let conj_mult = (&a * &b).conj() == &a.conj() * &b.conj();
        if !(assoc_add && assoc_mul && distrib && inverse && conj_mult) {
            failures += 1;
        }
    }
    CheckResult::new(
        "exact-core/field-axioms",
        failures == 0,
        format!("{} random triples, {} failures", trials, failures),
    )
}

fn conj_ring_homomorphism(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let f = random_poly(rng, n, 3, 4);
        let g = random_poly(rng, n, 3, 4);
        let prod = f.try_mul(&g).unwrap();
        ok &= prod.conj() == f.conj().try_mul(&g.conj()).unwrap();
        ok &= f.conj().conj() == f;
        ok &= (&f + &g).conj() == &f.conj() + &g.conj();
    }
    CheckResult::new(
        "exact-core/conj-involutive-ring-hom",
        ok,
        "conj(fg) = conj(f)conj(g), conj involutive, additive",
    )
}

fn laplacian_rules(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    // Linearity on random pairs.
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let f = random_poly(rng, n, 4, 4);
        let g = random_poly(rng, n, 4, 4);
        let c = random_gauss(rng);
        let lhs = (&f.scale(&c) + &g).laplacian();
        let rhs = &f.laplacian().scale(&c) + &g.laplacian();
        ok &= lhs == rhs;
    }
    // Product rule check: 4 on every |z_j|^2.
    for n in 1..=3 {
        for j in 0..n {
            let f = BiPoly::variable(n, j)
                .try_mul(&BiPoly::conj_variable(n, j))
                .unwrap();
            ok &= f.laplacian() == BiPoly::constant(n, GaussRational::from_int(4));
        }
    }
    CheckResult::new(
        "exact-core/laplacian",
        ok,
        "linear; sends each |z_j|^2 to the constant 4",
    )
}

fn substitution_homomorphism(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    let mut detail = String::new();
    for n in [1usize, 2, 3] {
        for u in test_unitaries(n) {
            let f = random_poly(rng, n, 3, 3);
            let g = random_poly(rng, n, 3, 3);
            let hom = f
                .try_mul(&g)
                .unwrap()
                .substitute_linear(&u)
                .unwrap()
                == f.substitute_linear(&u)
                    .unwrap()
                    .try_mul(&g.substitute_linear(&u).unwrap())
                    .unwrap();
            let inv = f
                .substitute_linear(&u)
                .unwrap()
                .substitute_linear(&u.adjoint())
                .unwrap()
                == f;
            ok &= hom && inv;
        }
    }
    // A non-unitary matrix must be rejected.
    let bad: Matrix<GaussRational> = Matrix::from_rows(vec![
        vec![GaussRational::from_int(1), GaussRational::from_int(1)],
        vec![GaussRational::from_int(0), GaussRational::from_int(1)],
    ]);
    let rejected = BiPoly::variable(2, 0).substitute_linear(&bad).is_err();
    ok &= rejected;
    if !rejected {
        detail.push_str("non-unitary matrix accepted; ");
    }
    CheckResult::new(
        "exact-core/substitution",
        ok,
        format!(
            "{}ring homomorphism and U* inverts U for the exact test unitaries",
            detail
        ),
    )
}

fn kernel_rank_nullity(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    let trials = 40;
    for _ in 0..trials {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let m: Matrix<Rational> =
            Matrix::from_fn(rows, cols, |_, _| random_rational(rng));
        let kernel = m.kernel();
        // Exact annihilation.
        for v in &kernel {
            ok &= m.matvec(v).iter().all(|x| x.is_zero());
        }
        // Rank-nullity, against a second elimination order (reversed
        // columns).
        let rank = m.rank();
        ok &= rank + kernel.len() == cols;
        let reversed = Matrix::from_fn(rows, cols, |i, j| m.get(i, cols - 1 - j).clone());
        ok &= reversed.rank() == rank;
    }
    CheckResult::new(
        "exact-core/kernel",
        ok,
        format!(
            "{} random matrices: M v = 0 exactly, rank + nullity = cols under two column orders",
            trials
        ),
    )
}

fn parser_round_trip(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut ok = true;
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let f = random_poly(rng, n, 4, 5);
        match parse_poly(&f.render(), n) {
            Ok(back) => ok &= back == f,
            Err(_) => ok = false,
        }
    }
    CheckResult::new(
        "exact-core/parser-round-trip",
        ok,
        "parse(render(f)) = f on 100 random polynomials",
    )
}
