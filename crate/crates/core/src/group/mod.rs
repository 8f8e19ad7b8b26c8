//! Finite p-groups as explicit Cayley tables.
//!
//! Element `0` is always the identity. Orders are capped at 128 so that a
//! set of elements fits in one `u128` bitmask ([`ElemSet`]).
//!
//! Conjugacy classes are ordered by element order, then by smallest element
//! id; the identity class comes first.

mod named;
mod products;
mod roquette;
mod subgroups;

pub use named::{make_named, Family};
pub use products::{central_product, direct_product};
pub use roquette::{is_roquette, is_roquette_with, roquette_iso_type, roquette_iso_type_with, RoquetteFamily, RoquetteTag};
pub use subgroups::{quotient, subgroup_classes, Embedding, Quotient, SubgroupClass, SubgroupClassTable};

use crate::arith::{is_prime, log_p};

pub const MAX_ORDER: usize = 128;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("order {order} is not a power of {p}")]
    OrderNotPPower { order: usize, p: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("group order {0} exceeds the supported maximum of 128")]
    GroupTooLarge(usize),
    #[error("order {order} is not allowed for family {family}")]
    IllegalOrderForFamily { family: String, order: u64 },
    #[error("center has {0} subgroups of order 2; a central product needs exactly one")]
    AmbiguousCenter(usize),
    #[error("cannot combine a {0}-group with a {1}-group")]
    MixedPrimes(u32, u32),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("group is not a Roquette group")]
    NotRoquette,
}

/// A set of element ids of a group of order at most 128.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(pub u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(x: usize) -> ElemSet {
        ElemSet(1u128 << x)
    }

    /// All ids `0..n`.
    pub fn full(n: usize) -> ElemSet {
        if n == 128 {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u128 << x;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersect(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn minus(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Sort key: among sets of equal size, ascending keys order the sorted
    /// id lists lexicographically.
    pub fn lex_key(self) -> u128 {
        !self.0.reverse_bits()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A validated finite p-group.
#[derive(Clone)]
pub struct FiniteGroup {
    n: usize,
    p: u32,
    mul: Vec<u8>,
    inv: Vec<u8>,
    orders: Vec<u32>,
    exponent: u32,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {}, p {})", self.n, self.p)
    }
}

/// Validates a multiplication table and builds the group.
pub fn build_group(mul: &[Vec<usize>], p: u32) -> Result<FiniteGroup, GroupError> {
    let n = mul.len();
    if n == 0 {
        return Err(GroupError::MalformedTable("empty table".into()));
    }
    if n > MAX_ORDER {
        return Err(GroupError::GroupTooLarge(n));
    }
    if let Some(i) = mul.iter().position(|row| row.len() != n) {
        return Err(GroupError::MalformedTable(format!("row {i} has the wrong length")));
    }
    if mul.iter().flatten().any(|&x| x >= n) {
        return Err(GroupError::MalformedTable("entry out of range".into()));
    }
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if log_p(n as u32, p).is_none() {
        return Err(GroupError::OrderNotPPower { order: n, p });
    }
    if (0..n).any(|x| mul[0][x] != x || mul[x][0] != x) {
        return Err(GroupError::NoIdentity);
    }
    let mut inv = vec![0u8; n];
    for x in 0..n {
        match (0..n).find(|&y| mul[x][y] == 0) {
            Some(y) if mul[y][x] == 0 => inv[x] = y as u8,
            _ => return Err(GroupError::NoInverse(x)),
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = mul[a][b];
            for c in 0..n {
                if mul[ab][c] != mul[a][mul[b][c]] {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
    }
    let flat: Vec<u8> = mul.iter().flatten().map(|&x| x as u8).collect();
    Ok(FiniteGroup::from_validated(n, p, flat, inv, None))
}

impl FiniteGroup {
    /// Assembles a group from a table already known to be a group.
    pub(crate) fn from_validated(
        n: usize,
        p: u32,
        mul: Vec<u8>,
        inv: Vec<u8>,
        labels: Option<Vec<String>>,
    ) -> FiniteGroup {
        let mut g = FiniteGroup {
            n,
            p,
            mul,
            inv,
            orders: Vec::new(),
            exponent: 1,
            classes: Vec::new(),
            class_of: Vec::new(),
            labels,
        };
        g.orders = (0..n).map(|x| g.compute_order(x)).collect();
        g.exponent = g.orders.iter().copied().max().unwrap_or(1);
        g.compute_classes();
        g
    }

    /// Builds from a closure multiplication on ids `0..n`, without validation.
    pub(crate) fn from_fn(
        n: usize,
        p: u32,
        f: impl Fn(usize, usize) -> usize,
        labels: Option<Vec<String>>,
    ) -> FiniteGroup {
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = f(a, b) as u8;
            }
        }
        let mut inv = vec![0u8; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("inverse") as u8;
        }
        FiniteGroup::from_validated(n, p, mul, inv, labels)
    }

    fn compute_order(&self, x: usize) -> u32 {
        let (mut y, mut k) = (x, 1);
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    fn compute_classes(&mut self) {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|g| self.conj(g, x)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &y in &cls {
                seen[y] = true;
            }
            classes.push(cls);
        }
        classes.sort_by_key(|c| (self.orders[c[0]], c[0]));
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g h g^{-1}`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let ord = self.orders[a] as i64;
        let e = k.rem_euclid(ord);
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    /// The multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("g{a}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Representative (smallest id) of class `c`.
    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    /// Class of `rep(c)^k`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of(self.pow(self.class_rep(c), k))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether some element generates the group.
    pub fn is_cyclic(&self) -> bool {
        self.exponent as usize == self.n
    }

    /// Subgroup generated by a set of elements.
    pub fn generate(&self, gens: ElemSet) -> ElemSet {
        let gens: Vec<usize> = gens.iter().collect();
        let mut set = ElemSet::singleton(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, s: ElemSet) -> bool {
        s.contains(0) && s.iter().all(|a| s.iter().all(|b| s.contains(self.mul(a, b))))
    }

    pub fn conj_set(&self, g: usize, s: ElemSet) -> ElemSet {
        s.iter().map(|h| self.conj(g, h)).collect()
    }

    pub fn is_normal(&self, s: ElemSet) -> bool {
        (0..self.n).all(|g| self.conj_set(g, s) == s)
    }

    pub fn normalizer(&self, s: ElemSet) -> ElemSet {
        (0..self.n).filter(|&g| self.conj_set(g, s) == s).collect()
    }

    /// Elements commuting with every element of `s`.
    pub fn centralizer(&self, s: ElemSet) -> ElemSet {
        (0..self.n).filter(|&g| s.iter().all(|h| self.mul(g, h) == self.mul(h, g))).collect()
    }

    pub fn center(&self) -> ElemSet {
        self.centralizer(self.all())
    }

    /// Subgroup generated by the commutators `[x, y]` with `x ∈ a`, `y ∈ b`.
    pub fn commutator_subgroup(&self, a: ElemSet, b: ElemSet) -> ElemSet {
        let mut gens = ElemSet::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                let c = self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y));
                gens.insert(c);
            }
        }
        self.generate(gens)
    }

    pub fn derived_subgroup(&self) -> ElemSet {
        self.commutator_subgroup(self.all(), self.all())
    }

    /// Whether the subgroup `s` is cyclic.
    pub fn is_cyclic_subgroup(&self, s: ElemSet) -> bool {
        s.iter().any(|x| self.orders[x] as usize == s.len())
    }

    pub fn is_abelian_subgroup(&self, s: ElemSet) -> bool {
        s.iter().all(|a| s.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of order exactly `k`.
    pub fn elements_of_order(&self, k: u32) -> ElemSet {
        (0..self.n).filter(|&x| self.orders[x] == k).collect()
    }

    /// Relabels elements by a permutation `perm[old] = new` (with `perm[0] = 0`).
    pub fn relabel(&self, perm: &[usize]) -> FiniteGroup {
        let n = self.n;
        let mut back = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            back[new] = old;
        }
        let labels = self.labels.as_ref().map(|l| (0..n).map(|i| l[back[i]].clone()).collect());
        FiniteGroup::from_fn(n, self.p, |a, b| perm[self.mul(back[a], back[b])], labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_c2() {
        let g = build_group(&[vec![0]], 2).unwrap();
        assert_eq!((g.order(), g.exponent()), (1, 1));
        let g = build_group(&[vec![0, 1], vec![1, 0]], 2).unwrap();
        assert_eq!((g.order(), g.exponent()), (2, 2));
    }

    fn s3_table() -> Vec<Vec<usize>> {
        // permutations of {0,1,2} in a fixed order, composed as functions
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |q: [usize; 3]| perms.iter().position(|&r| r == q).unwrap();
        perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect()
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(
            build_group(&s3_table(), 2).unwrap_err(),
            GroupError::OrderNotPPower { order: 6, p: 2 }
        );
        assert_eq!(build_group(&[vec![1, 0], vec![0, 1]], 2).unwrap_err(), GroupError::NoIdentity);
        assert_eq!(build_group(&[vec![0, 1], vec![1, 1]], 2).unwrap_err(), GroupError::NoInverse(1));
        let t = vec![vec![0, 1, 2, 3], vec![1, 2, 3, 0], vec![2, 3, 0, 1], vec![3, 0, 1, 2]];
        assert_eq!(build_group(&t, 4).unwrap_err(), GroupError::NotPrime(4));
    }

    #[test]
    fn non_associative_detected() {
        // the smallest loop that is not a group; every element is self-inverse
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(build_group(&t, 5), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn elem_set_lex_key() {
        let a: ElemSet = [0, 2].into_iter().collect();
        let b: ElemSet = [0, 4].into_iter().collect();
        let c: ElemSet = [0, 5].into_iter().collect();
        assert!(a.lex_key() < b.lex_key() && b.lex_key() < c.lex_key());
        let d: ElemSet = [0, 1, 2, 3].into_iter().collect();
        let e: ElemSet = [0, 2, 4, 6].into_iter().collect();
        assert!(d.lex_key() < e.lex_key());
        assert_eq!(ElemSet::full(128).len(), 128);
    }
}
