//! The built-in corpus of constructor-expressible groups.
//!
//! It contains every named group up to the order bound, the direct products of
//! two nontrivial non-elementary-abelian atoms over the same prime, and the
//! central products of two atoms with a unique central involution. Elementary
//! abelian groups of order 32 and above are left out: their subgroup lattices
//! (hundreds to thousands of classes) dominate the running time without
//! exercising anything the smaller ones do not.

use pglab_core::arith::prime_power;
use pglab_core::group::{Family, FiniteGroup};

use crate::spec::GroupSpec;

const PRIMES: [u32; 4] = [2, 3, 5, 7];
const MAX_ELEMENTARY_ABELIAN: u64 = 16;

/// Named groups of order at most `max_order`, in family then order order.
pub fn atoms(max_order: u64) -> Vec<GroupSpec> {
    let mut orders: Vec<u64> = vec![1];
    for p in PRIMES {
        let mut n = p as u64;
        while n <= max_order {
            orders.push(n);
            n *= p as u64;
        }
    }
    orders.sort_unstable();
    let mut out = Vec::new();
    for f in Family::ALL {
        for &n in &orders {
            if n <= max_order
                && f.check_order(n).is_ok()
                && !(f == Family::V && n > MAX_ELEMENTARY_ABELIAN)
            {
                out.push(GroupSpec::Atom(f, n));
            }
        }
    }
    out
}

fn prime_of(spec: &GroupSpec) -> Option<u32> {
    prime_power(spec.order() as u32).map(|(p, _)| p)
}

fn has_unique_central_involution(g: &FiniteGroup) -> bool {
    g.center().iter().filter(|&x| g.element_order(x) == 2).count() == 1
}

pub fn corpus(max_order: u64) -> Vec<GroupSpec> {
    let atoms = atoms(max_order);
    let mut out = atoms.clone();
    let factors: Vec<&GroupSpec> = atoms
        .iter()
        .filter(|s| s.order() > 1 && !matches!(s, GroupSpec::Atom(Family::V, _)))
        .collect();
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            if prime_of(a) == prime_of(b) && a.order() * b.order() <= max_order {
                out.push(GroupSpec::direct((*a).clone(), (*b).clone()));
            }
        }
    }
    let central: Vec<&GroupSpec> = factors
        .iter()
        .copied()
        .filter(|s| s.order() >= 4 && prime_of(s) == Some(2))
        .filter(|s| s.build().is_ok_and(|g| has_unique_central_involution(&g)))
        .collect();
    for (i, a) in central.iter().enumerate() {
        for b in &central[i..] {
            if a.order() * b.order() / 2 <= max_order {
                out.push(GroupSpec::central((*a).clone(), (*b).clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let c = corpus(64);
        assert!(c.len() >= 60, "{}", c.len());
        assert!(c.iter().all(|s| s.order() <= 64));
        assert!(corpus(32).len() >= 40);
        let names: Vec<String> = c.iter().map(|s| s.to_string()).collect();
        for want in ["C4*D16", "DD32", "DD64", "Q8", "C1", "C2xD8", "C9"] {
            assert!(names.iter().any(|n| n == want), "{want}");
        }
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), names.len());
    }

    #[test]
    fn all_build() {
        for s in corpus(64) {
            let g = s.build().unwrap();
            assert_eq!(g.order() as u64, s.order(), "{s}");
        }
    }
}
