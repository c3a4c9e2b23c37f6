//! Cross-checks between the combinatorial rule and the exact analytic
//! engine: the combination rule's values are confirmed by projecting actual
//! products of harmonic bases.

use hpq::pattern::{closure_box, combine_points, Bidegree, PatternBox};
use hpq::span::product_space_support;
use hpq::sphere::SphereContext;

fn bd(p: u32, q: u32) -> Bidegree {
    Bidegree::new(p, q)
}

/// combine_points((1,0),(0,1)) = {(1,1),(0,0)} — matched by the product
/// oracle at n=3 (and already at n=2 for this pair).
#[test]
fn combine_1001_matches_oracle() {
    let want = combine_points(bd(1, 0), bd(0, 1));
    for n in [2usize, 3] {
        let ctx = SphereContext::new(n);
        let report = product_space_support(&ctx, bd(1, 0), bd(0, 1)).unwrap();
        assert_eq!(report.support, want, "n = {}", n);
    }
}

/// combine_points((1,1),(1,1)) = {(2,2),(1,1),(0,0)} — matched at n=3.
#[test]
fn combine_1111_matches_oracle_n3() {
    let ctx = SphereContext::new(3);
    let report = product_space_support(&ctx, bd(1, 1), bd(1, 1)).unwrap();
    assert_eq!(report.support, combine_points(bd(1, 1), bd(1, 1)));
}

/// The identity case: multiplying by constants moves nothing.
#[test]
fn combine_identity_case() {
    let ctx = SphereContext::new(2);
    let report = product_space_support(&ctx, bd(0, 0), bd(2, 1)).unwrap();
    assert_eq!(report.support, combine_points(bd(0, 0), bd(2, 1)));
    assert_eq!(report.support.len(), 1);
}

/// Closure of a seed equals the pattern realized by iterated products: run
/// two closure steps through the exact oracle at n=3 and compare.
#[test]
fn closure_agrees_with_iterated_products_n3() {
    let ctx = SphereContext::new(3);
    let d = 4u32;
    let seed = PatternBox::from_points(d, [bd(1, 1)]);
    let combinatorial = closure_box(&seed);

    // Analytic closure: repeatedly add exact product supports.
    let mut analytic = seed;
    loop {
        let members: Vec<Bidegree> = analytic.iter().collect();
        let mut next = analytic.clone();
        for &a in &members {
            for &b in &members {
                for s in product_space_support(&ctx, a, b).unwrap().support {
                    next.insert(s);
                }
            }
        }
        if next == analytic {
            break;
        }
        analytic = next;
    }
    assert_eq!(analytic, combinatorial);
}
