//! Complex character tables by monomial induction.
//!
//! Every irreducible character of a p-group is induced from a linear
//! character of some subgroup. The search runs over subgroup class
//! representatives, largest first, tests irreducibility of each induced
//! character with Mackey's criterion, and closes every new irreducible
//! under the Galois action.
//!
//! Tables are ordered by degree, then by decreasing kernel size, then by the
//! value vector; the trivial character is always row 0.

use std::cmp::Reverse;
use std::collections::HashSet;

use serde::Serialize;

use crate::arith::units;
use crate::cyclotomic::CycNum;
use crate::group::{subgroup_classes, ElemSet, Embedding, FiniteGroup, Quotient, SubgroupClassTable};
use crate::rational::Rational;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("character search ended with {found} irreducibles, sum of squared degrees {sum} (expected {classes} and {order})")]
    IncompleteTable { found: usize, sum: u64, classes: usize, order: usize },
    #[error("multiplicity {0} is not a nonnegative integer")]
    NonIntegerMultiplicity(String),
    #[error("inner product {0} is not rational")]
    NotRational(String),
}

/// A class function, with one value per conjugacy class of its group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Character {
    pub values: Vec<CycNum>,
}

impl Character {
    pub fn trivial(g: &FiniteGroup) -> Character {
        Character { values: vec![CycNum::one(); g.num_classes()] }
    }

    /// The value at the identity, as an integer.
    pub fn degree(&self) -> i64 {
        self.values[0].to_i64().expect("degree is a rational integer")
    }

    pub fn value_at(&self, g: &FiniteGroup, x: usize) -> &CycNum {
        &self.values[g.class_of(x)]
    }

    pub fn add(&self, other: &Character) -> Character {
        Character { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: i64) -> Character {
        let k = Rational::from_int(k);
        Character { values: self.values.iter().map(|x| x.scale(&k)).collect() }
    }

    pub fn conjugate(&self) -> Character {
        Character { values: self.values.iter().map(CycNum::conjugate).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|x| x.conjugate() == *x)
    }
}

/// The irreducible characters of a group.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub irreps: Vec<Character>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreps.iter().map(Character::degree).collect()
    }

    pub fn index_of(&self, chi: &Character) -> Option<usize> {
        self.irreps.iter().position(|x| x == chi)
    }

    /// Multiplicities of the irreducibles in `chi`.
    pub fn decompose(&self, g: &FiniteGroup, chi: &Character) -> Result<Vec<i64>, CharError> {
        self.irreps
            .iter()
            .map(|psi| {
                let m = inner_product(g, chi, psi)?;
                m.to_i64()
                    .filter(|&k| k >= 0)
                    .ok_or_else(|| CharError::NonIntegerMultiplicity(m.to_string()))
            })
            .collect()
    }
}

/// `Σ_terms scale · value`, accumulated at level `n`.
fn sum_at_level<'a>(n: u32, terms: impl Iterator<Item = (Rational, &'a CycNum)>) -> CycNum {
    let mut acc = vec![Rational::zero(); crate::arith::euler_phi(n) as usize];
    for (q, x) in terms {
        x.add_into(n, &q, &mut acc);
    }
    CycNum::from_coeffs(n, acc).expect("valid level")
}

/// `(1/|G|) Σ_g a(g) conj(b(g))`.
pub fn inner_product(g: &FiniteGroup, a: &Character, b: &Character) -> Result<Rational, CharError> {
    let n = g.exponent();
    let products: Vec<CycNum> =
        a.values.iter().zip(&b.values).map(|(x, y)| x * &y.conjugate()).collect();
    let total = sum_at_level(
        n,
        products.iter().enumerate().map(|(c, x)| (Rational::from(g.class_size(c)), x)),
    );
    let q = total.to_rational().ok_or_else(|| CharError::NotRational(total.to_string()))?;
    Ok(&q / &Rational::from(g.order()))
}

/// Value restriction to a subgroup, as a character of the embedded group.
pub fn restrict(g: &FiniteGroup, psi: &Character, h: &Embedding) -> Character {
    let values = h
        .group
        .classes()
        .iter()
        .map(|cls| psi.values[g.class_of(h.to_parent[cls[0]])].clone())
        .collect();
    Character { values }
}

/// Induction from a subgroup: `ind(g) = (1/|H|) Σ_x φ°(x g x^{-1})`.
pub fn induce(g: &FiniteGroup, h: &Embedding, phi: &Character) -> Character {
    let n = g.exponent();
    let hn = h.group.order();
    let values = (0..g.num_classes())
        .map(|c| {
            let scale = Rational::new(g.order() as i64, (hn * g.class_size(c)) as i64);
            let terms = g.classes()[c]
                .iter()
                .filter_map(|&x| h.local(x))
                .map(|y| (scale.clone(), &phi.values[h.group.class_of(y)]));
            sum_at_level(n, terms)
        })
        .collect();
    Character { values }
}

/// Pulls a character of `G/N` back to `G`.
pub fn inflate(g: &FiniteGroup, q: &Quotient, phi: &Character) -> Character {
    let values = (0..g.num_classes())
        .map(|c| phi.values[q.group.class_of(q.proj[g.class_rep(c)])].clone())
        .collect();
    Character { values }
}

/// Pushes a character of `G` with `N` in its kernel down to `G/N`.
pub fn deflate(g: &FiniteGroup, q: &Quotient, psi: &Character) -> Character {
    let values = q
        .group
        .classes()
        .iter()
        .map(|cls| psi.values[g.class_of(q.reps[cls[0]])].clone())
        .collect();
    Character { values }
}

/// `(σ_k ψ)(g) = ψ(g^k)`.
pub fn galois_conjugate(g: &FiniteGroup, psi: &Character, k: i64) -> Character {
    let values = (0..g.num_classes()).map(|c| psi.values[g.power_class(c, k)].clone()).collect();
    Character { values }
}

pub fn character_kernel(g: &FiniteGroup, psi: &Character) -> ElemSet {
    g.elements().filter(|&x| psi.values[g.class_of(x)] == psi.values[0]).collect()
}

/// How many elements of `h` lie in each conjugacy class of `g`.
pub fn class_counts(g: &FiniteGroup, h: ElemSet) -> Vec<usize> {
    let mut counts = vec![0; g.num_classes()];
    for x in h.iter() {
        counts[g.class_of(x)] += 1;
    }
    counts
}

/// `dim ψ^H = ⟨res_H ψ, 1_H⟩`.
pub fn fixed_point_dim(g: &FiniteGroup, psi: &Character, h: ElemSet) -> Result<u64, CharError> {
    fixed_point_dim_counts(g, psi, &class_counts(g, h), h.len())
}

/// [`fixed_point_dim`] from precomputed [`class_counts`].
pub fn fixed_point_dim_counts(
    g: &FiniteGroup,
    psi: &Character,
    counts: &[usize],
    h_order: usize,
) -> Result<u64, CharError> {
    let total = sum_at_level(
        g.exponent(),
        counts
            .iter()
            .zip(&psi.values)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, x)| (Rational::from(k), x)),
    );
    let bad = || CharError::NonIntegerMultiplicity(total.to_string());
    let q = total.to_rational().ok_or_else(bad)?;
    let d = &q / &Rational::from(h_order);
    d.to_i64().filter(|&k| k >= 0).map(|k| k as u64).ok_or_else(bad)
}

/// Linear characters of the subgroup `h`, as exponent vectors `e` with
/// `λ(x) = ζ_level^{e[x]}` for `x ∈ h` (entries outside `h` are unused).
///
/// Built along a chain `[h,h] = B_0 < B_1 < ... < h` of index-`p` steps;
/// each character of `B_i` has exactly `p` extensions to `B_{i+1}`.
pub fn linear_exponents(g: &FiniteGroup, h: ElemSet, level: u32) -> Vec<Vec<u32>> {
    let p = g.p();
    let derived = g.commutator_subgroup(h, h);
    let mut cur = derived;
    let mut chars: Vec<Vec<u32>> = vec![vec![0; g.order()]];
    while cur != h {
        let t = h
            .minus(cur)
            .iter()
            .find(|&t| cur.contains(g.pow(t, p as i64)))
            .expect("p-group quotient has an element of order p");
        let mut powers = vec![0usize; p as usize];
        for j in 1..p as usize {
            powers[j] = g.mul(powers[j - 1], t);
        }
        let tp = g.mul(powers[p as usize - 1], t);
        let mut next = Vec::with_capacity(chars.len() * p as usize);
        for chi in &chars {
            let e = chi[tp];
            debug_assert_eq!(e % p, 0);
            for k in 0..p {
                let x = e / p + k * (level / p);
                let mut ext = chi.clone();
                for c in cur.iter() {
                    for (j, &tj) in powers.iter().enumerate().skip(1) {
                        ext[g.mul(c, tj)] = (chi[c] + j as u32 * x) % level;
                    }
                }
                next.push(ext);
            }
        }
        chars = next;
        for tj in powers.iter().skip(1) {
            cur = cur.union(cur.iter().map(|c| g.mul(c, *tj)).collect());
        }
    }
    chars
}

/// All linear characters of `g`.
pub fn linear_characters(g: &FiniteGroup) -> Vec<Character> {
    let level = g.exponent();
    linear_exponents(g, g.all(), level)
        .into_iter()
        .map(|e| {
            let values = g
                .classes()
                .iter()
                .map(|cls| CycNum::root_of_unity(level, e[cls[0]] as i64).unwrap())
                .collect();
            Character { values }
        })
        .collect()
}

/// Data for inducing many linear characters from one subgroup.
struct InductionSite {
    h: ElemSet,
    /// For each double coset `HgH` with `g ∉ H`: pairs `(x, g^{-1} x g)` for
    /// `x ∈ H ∩ gHg^{-1}`.
    mackey: Vec<Vec<(usize, usize)>>,
    /// Elements of `H` in each class of `G`.
    by_class: Vec<Vec<usize>>,
}

impl InductionSite {
    fn new(g: &FiniteGroup, h: ElemSet) -> InductionSite {
        let mut covered = h;
        let mut mackey = Vec::new();
        for x in g.elements() {
            if covered.contains(x) {
                continue;
            }
            let mut dc = ElemSet::EMPTY;
            for a in h.iter() {
                let ax = g.mul(a, x);
                for b in h.iter() {
                    dc.insert(g.mul(ax, b));
                }
            }
            covered = covered.union(dc);
            let xi = g.inv(x);
            let pairs = h
                .iter()
                .filter_map(|y| {
                    let z = g.conj(xi, y);
                    h.contains(z).then_some((y, z))
                })
                .collect();
            mackey.push(pairs);
        }
        let mut by_class = vec![Vec::new(); g.num_classes()];
        for y in h.iter() {
            by_class[g.class_of(y)].push(y);
        }
        InductionSite { h, mackey, by_class }
    }

    /// Mackey: `ind λ` is irreducible iff `λ` and its conjugate differ on
    /// `H ∩ gHg^{-1}` for every `g ∉ H`.
    fn induces_irreducible(&self, lambda: &[u32]) -> bool {
        self.mackey.iter().all(|pairs| pairs.iter().any(|&(y, z)| lambda[y] != lambda[z]))
    }

    fn induced_values(&self, g: &FiniteGroup, lambda: &[u32], level: u32) -> Vec<CycNum> {
        let mut counts = vec![0i64; level as usize];
        (0..g.num_classes())
            .map(|c| {
                let members = &self.by_class[c];
                if members.is_empty() {
                    return CycNum::zero();
                }
                counts.iter_mut().for_each(|k| *k = 0);
                for &y in members {
                    counts[lambda[y] as usize] += 1;
                }
                let scale =
                    Rational::new(g.order() as i64, (self.h.len() * g.class_size(c)) as i64);
                CycNum::from_power_counts(level, &counts).unwrap().scale(&scale)
            })
            .collect()
    }
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, CharError> {
    character_table_with(g, &subgroup_classes(g))
}

pub fn character_table_with(
    g: &FiniteGroup,
    subgroups: &SubgroupClassTable,
) -> Result<CharacterTable, CharError> {
    let order = g.order() as u64;
    let level = g.exponent();
    let galois = units(level);
    let mut found: Vec<Character> = Vec::new();
    let mut seen: HashSet<Vec<CycNum>> = HashSet::new();
    let mut sum_sq = 0u64;
    for class in subgroups.classes.iter().rev() {
        if sum_sq == order {
            break;
        }
        let h = class.rep;
        let d = (g.order() / h.len()) as u64;
        if sum_sq + d * d > order {
            continue;
        }
        let site = InductionSite::new(g, h);
        for lambda in linear_exponents(g, h, level) {
            if !site.induces_irreducible(&lambda) {
                continue;
            }
            let values = site.induced_values(g, &lambda, level);
            if seen.contains(&values) {
                continue;
            }
            let psi = Character { values };
            for &k in &galois {
                let conj = galois_conjugate(g, &psi, k as i64);
                if seen.insert(conj.values.clone()) {
                    sum_sq += d * d;
                    found.push(conj);
                }
            }
            if sum_sq + d * d > order {
                break;
            }
        }
    }
    if sum_sq != order || found.len() != g.num_classes() {
        return Err(CharError::IncompleteTable {
            found: found.len(),
            sum: sum_sq,
            classes: g.num_classes(),
            order: g.order(),
        });
    }
    let mut keyed: Vec<(i64, Reverse<usize>, Character)> = found
        .into_iter()
        .map(|chi| (chi.degree(), Reverse(character_kernel(g, &chi).len()), chi))
        .collect();
    keyed.sort();
    Ok(CharacterTable { irreps: keyed.into_iter().map(|(_, _, chi)| chi).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_named, Family};

    fn named(f: Family, n: u64) -> FiniteGroup {
        make_named(f, n).unwrap()
    }

    fn z(n: u32, j: i64) -> CycNum {
        CycNum::root_of_unity(n, j).unwrap()
    }

    #[test]
    fn degrees() {
        let deg = |f, n| character_table(&named(f, n)).unwrap().degrees();
        assert_eq!(deg(Family::C, 4), vec![1, 1, 1, 1]);
        assert_eq!(deg(Family::D, 8), vec![1, 1, 1, 1, 2]);
        assert_eq!(deg(Family::Q, 16), vec![1, 1, 1, 1, 2, 2, 2]);
        assert_eq!(deg(Family::C, 1), vec![1]);
    }

    #[test]
    fn linear_character_counts() {
        assert_eq!(linear_characters(&named(Family::C, 4)).len(), 4);
        assert_eq!(linear_characters(&named(Family::Q, 8)).len(), 4);
        assert_eq!(linear_characters(&named(Family::C, 1)).len(), 1);
        let c4 = named(Family::C, 4);
        let mut vals: Vec<CycNum> =
            linear_characters(&c4).iter().map(|chi| chi.value_at(&c4, 1).clone()).collect();
        vals.sort();
        let mut expect = vec![z(4, 0), z(4, 1), z(4, 2), z(4, 3)];
        expect.sort();
        assert_eq!(vals, expect);
    }

    /// The faithful 2-dimensional character of D8, induced from `<a>`.
    fn psi0(d8: &FiniteGroup) -> Character {
        let a = Embedding::new(d8, [0, 1, 2, 3].into_iter().collect()).unwrap();
        let i_char = Character {
            values: a.group.classes().iter().map(|c| z(4, c[0] as i64)).collect(),
        };
        induce(d8, &a, &i_char)
    }

    #[test]
    fn d8_psi0_values() {
        let d8 = named(Family::D, 8);
        let psi = psi0(&d8);
        let at = |x: usize| psi.value_at(&d8, x).to_i64().unwrap();
        assert_eq!([at(0), at(1), at(2), at(4), at(5)], [2, 0, -2, 0, 0]);
        assert_eq!(inner_product(&d8, &psi, &psi).unwrap(), Rational::one());
        let triv = Character::trivial(&d8);
        assert_eq!(inner_product(&d8, &psi, &triv).unwrap(), Rational::zero());
        assert_eq!(inner_product(&d8, &triv, &triv).unwrap(), Rational::one());
        assert_eq!(character_kernel(&d8, &psi), ElemSet::singleton(0));
        let table = character_table(&d8).unwrap();
        assert_eq!(table.index_of(&psi), Some(4));
        let b: ElemSet = [0, 4].into_iter().collect();
        assert_eq!(fixed_point_dim(&d8, &psi, b).unwrap(), 1);
    }

    #[test]
    fn restriction_of_psi0_to_cyclic_subgroup() {
        let d8 = named(Family::D, 8);
        let a = Embedding::new(&d8, [0, 1, 2, 3].into_iter().collect()).unwrap();
        let res = restrict(&d8, &psi0(&d8), &a);
        let faithful: Vec<Character> = linear_characters(&a.group)
            .into_iter()
            .filter(|chi| character_kernel(&a.group, chi).len() == 1)
            .collect();
        assert_eq!(faithful.len(), 2);
        assert_eq!(res, faithful[0].add(&faithful[1]));
    }

    #[test]
    fn induce_trivial_from_whole_group() {
        let g = named(Family::Q, 16);
        let whole = Embedding::new(&g, g.all()).unwrap();
        let triv = Character::trivial(&whole.group);
        assert_eq!(induce(&g, &whole, &triv), Character::trivial(&g));
    }

    #[test]
    fn quaternion_fixed_dims() {
        let q8 = named(Family::Q, 8);
        let table = character_table(&q8).unwrap();
        let psi = &table.irreps[4];
        let subs = subgroup_classes(&q8);
        for h in subs.reps() {
            let d = fixed_point_dim(&q8, psi, h).unwrap();
            assert_eq!(d, if h.len() == 1 { 2 } else { 0 });
            assert_eq!(fixed_point_dim(&q8, &Character::trivial(&q8), h).unwrap(), 1);
        }
    }

    #[test]
    fn trivial_first_and_kernels() {
        let c4 = named(Family::C, 4);
        let t = character_table(&c4).unwrap();
        assert_eq!(t.irreps[0], Character::trivial(&c4));
        // the order-2 character has kernel {1, a^2}
        assert_eq!(character_kernel(&c4, &t.irreps[1]).to_vec(), vec![0, 2]);
    }

    fn check_orthonormal(g: &FiniteGroup, t: &CharacterTable) {
        for (i, a) in t.irreps.iter().enumerate() {
            for (j, b) in t.irreps.iter().enumerate() {
                let ip = inner_product(g, a, b).unwrap();
                assert_eq!(ip, Rational::from_int((i == j) as i64));
            }
        }
    }

    #[test]
    fn tables_are_orthonormal() {
        for (f, n) in [
            (Family::D, 16),
            (Family::SD, 16),
            (Family::Mod, 16),
            (Family::DD, 32),
            (Family::C, 9),
            (Family::Mod, 27),
            (Family::V, 8),
        ] {
            let g = named(f, n);
            let t = character_table(&g).unwrap();
            assert_eq!(t.len(), g.num_classes());
            let sum: i64 = t.degrees().iter().map(|d| d * d).sum();
            assert_eq!(sum as usize, g.order());
            check_orthonormal(&g, &t);
        }
    }
}
