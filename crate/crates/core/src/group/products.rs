//! Direct and central products.
//!
//! In `G × H` the pair `(g, h)` has id `g + |G| h`. A central product is the
//! quotient of `G × H` by the diagonal of the two central involutions; each
//! coset is named by its smallest pair id, and cosets are numbered in order
//! of those ids.

use super::{FiniteGroup, GroupError, MAX_ORDER};

fn common_prime(g: &FiniteGroup, h: &FiniteGroup) -> Result<u32, GroupError> {
    match (g.order(), h.order()) {
        (1, _) => Ok(h.p()),
        (_, 1) => Ok(g.p()),
        _ if g.p() == h.p() => Ok(g.p()),
        _ => Err(GroupError::MixedPrimes(g.p(), h.p())),
    }
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let p = common_prime(g, h)?;
    let (m, n) = (g.order(), h.order());
    if m * n > MAX_ORDER {
        return Err(GroupError::GroupTooLarge(m * n));
    }
    let labels = (0..m * n)
        .map(|id| format!("({},{})", g.label(id % m), h.label(id / m)))
        .collect();
    Ok(FiniteGroup::from_fn(
        m * n,
        p,
        |x, y| g.mul(x % m, y % m) + m * h.mul(x / m, y / m),
        Some(labels),
    ))
}

/// The unique central involution, or `AmbiguousCenter` with the count found.
fn central_involution(g: &FiniteGroup) -> Result<usize, GroupError> {
    let z: Vec<usize> = g.center().iter().filter(|&x| g.element_order(x) == 2).collect();
    match z[..] {
        [x] => Ok(x),
        _ => Err(GroupError::AmbiguousCenter(z.len())),
    }
}

pub fn central_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let zg = central_involution(g)?;
    let zh = central_involution(h)?;
    let m = g.order();
    let n = m * h.order();
    if n / 2 > MAX_ORDER {
        return Err(GroupError::GroupTooLarge(n / 2));
    }
    let partner = |id: usize| g.mul(id % m, zg) + m * h.mul(id / m, zh);
    let reps: Vec<usize> = (0..n).filter(|&id| id < partner(id)).collect();
    let index = |id: usize| -> usize { reps.binary_search(&id.min(partner(id))).unwrap() };
    let labels = reps
        .iter()
        .map(|&id| format!("({},{})", g.label(id % m), h.label(id / m)))
        .collect();
    Ok(FiniteGroup::from_fn(
        reps.len(),
        g.p(),
        |x, y| {
            let (a, b) = (reps[x], reps[y]);
            index(g.mul(a % m, b % m) + m * h.mul(a / m, b / m))
        },
        Some(labels),
    ))
}

#[cfg(test)]
mod tests {
    use super::super::{build_group, make_named, Family};
    use super::*;
    use crate::group::quotient;

    #[test]
    fn direct_c2_c2_is_v4() {
        let c2 = make_named(Family::C, 2).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        assert_eq!((v.order(), v.exponent()), (4, 2));
    }

    #[test]
    fn central_c4_d16() {
        let c4 = make_named(Family::C, 4).unwrap();
        let d16 = make_named(Family::D, 16).unwrap();
        let g = central_product(&c4, &d16).unwrap();
        assert_eq!(g.order(), 32);
        build_group(&g.table(), 2).unwrap();
        // the identified involution generates a central subgroup of order 2
        assert_eq!(g.center().len(), 4);
    }

    #[test]
    fn central_product_rejects_ambiguous_center() {
        let c4 = make_named(Family::C, 4).unwrap();
        let v4 = make_named(Family::V, 4).unwrap();
        assert_eq!(central_product(&c4, &v4).unwrap_err(), GroupError::AmbiguousCenter(3));
        let c1 = make_named(Family::C, 1).unwrap();
        assert_eq!(central_product(&c4, &c1).unwrap_err(), GroupError::AmbiguousCenter(0));
    }

    #[test]
    fn central_product_is_quotient_of_direct_product() {
        let d8 = make_named(Family::D, 8).unwrap();
        let q8 = make_named(Family::Q, 8).unwrap();
        let a = central_product(&d8, &q8).unwrap();
        let dp = direct_product(&d8, &q8).unwrap();
        let b = quotient(&dp, [0, 2 + 8 * 2].into_iter().collect()).unwrap().group;
        assert_eq!(a.table(), b.table());
        let q16 = make_named(Family::Q, 16).unwrap();
        let big = central_product(&q16, &d8).unwrap();
        assert_eq!(big.order(), 64);
        build_group(&big.table(), 2).unwrap();
    }

    #[test]
    fn mixed_primes_rejected() {
        let c2 = make_named(Family::C, 2).unwrap();
        let c3 = make_named(Family::C, 3).unwrap();
        assert_eq!(direct_product(&c2, &c3).unwrap_err(), GroupError::MixedPrimes(2, 3));
        let c1 = make_named(Family::C, 1).unwrap();
        assert_eq!(direct_product(&c1, &c3).unwrap().p(), 3);
    }
}
