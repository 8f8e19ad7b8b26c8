//! The Burnside ring: table of marks, ghost coordinates and units.
//!
//! Marks are stored as `marks[k][h] = |(G/K)^H|` for subgroup classes `h, k`
//! in canonical order, so each row describes one transitive G-set and the
//! matrix is lower triangular. An element of `B(G)` has integer coordinates
//! over the basis `[G/K]`; its ghost is the superclass function
//! `H ↦ Σ_K a_K marks[K][H]`. Units are exactly the elements with ghost
//! values `±1`.

use serde::Serialize;

use crate::char_table::{
    class_counts, fixed_point_dim_counts, CharError, Character, CharacterTable,
};
use crate::group::{ElemSet, FiniteGroup, RoquetteFamily, RoquetteTag, SubgroupClassTable};
use crate::linalg::{rank_f2, rank_q, BitRow, F2Span};
use crate::rationality::{frobenius_schur, rational_character, IrrepInvariants};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum BurnError {
    #[error("superclass function is not a ghost of the Burnside ring")]
    NotInBurnsideRing,
    #[error("integer overflow while solving for Burnside coordinates")]
    Overflow,
    #[error("character is not the character of a real representation")]
    NotRealCharacter,
    #[error("sign vector is not a unit of the Burnside ring")]
    NotAUnit,
    #[error("{classes} subgroup classes exceeds the brute-force limit {limit}")]
    TooLargeForBruteForce { classes: usize, limit: usize },
    #[error("{0}")]
    CountMismatch(String),
    #[error(transparent)]
    Char(#[from] CharError),
}

/// The table of marks, with element counts per class for fixed-point sums.
#[derive(Clone, Debug, Serialize)]
pub struct MarksTable {
    /// `marks[k][h] = |(G/K)^H|`.
    pub marks: Vec<Vec<i64>>,
    /// Orders of the class representatives.
    pub orders: Vec<usize>,
    /// `counts[h][c]`: elements of the representative of `h` in conjugacy class `c`.
    #[serde(skip)]
    pub counts: Vec<Vec<usize>>,
    #[serde(skip)]
    reps: Vec<ElemSet>,
}

impl MarksTable {
    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    /// `|(G/K)^H|`.
    pub fn mark(&self, h: usize, k: usize) -> i64 {
        self.marks[k][h]
    }
}

/// `|(G/K)^H|` is the number of conjugates of `K` containing `H`, times `|N(K) : K|`.
pub fn table_of_marks(g: &FiniteGroup, subgroups: &SubgroupClassTable) -> MarksTable {
    let reps: Vec<ElemSet> = subgroups.reps().collect();
    let marks = subgroups
        .classes
        .iter()
        .map(|k| {
            let weight = (k.normalizer.len() / k.order()) as i64;
            reps.iter()
                .map(|&h| weight * k.orbit.iter().filter(|&&kc| h.is_subset(kc)).count() as i64)
                .collect()
        })
        .collect();
    MarksTable {
        marks,
        orders: reps.iter().map(|h| h.len()).collect(),
        counts: reps.iter().map(|&h| class_counts(g, h)).collect(),
        reps,
    }
}

/// Coordinates of the Burnside element whose ghost is `u`.
pub fn ghost_solve(table: &MarksTable, u: &[i64]) -> Result<Vec<i64>, BurnError> {
    let c = table.len();
    let mut a = vec![0i64; c];
    for h in (0..c).rev() {
        let mut rest = u[h] as i128;
        for k in h + 1..c {
            let m = table.marks[k][h] as i128;
            if m != 0 && a[k] != 0 {
                rest = rest.checked_sub(m.checked_mul(a[k] as i128).ok_or(BurnError::Overflow)?).ok_or(BurnError::Overflow)?;
            }
        }
        let d = table.marks[h][h] as i128;
        if rest % d != 0 {
            return Err(BurnError::NotInBurnsideRing);
        }
        a[h] = i64::try_from(rest / d).map_err(|_| BurnError::Overflow)?;
    }
    Ok(a)
}

/// The permutation character of `G/K`: `g ↦ |(G/K)^{⟨g⟩}|`.
pub fn lin_character(
    g: &FiniteGroup,
    subgroups: &SubgroupClassTable,
    table: &MarksTable,
    k: usize,
) -> Character {
    let values = (0..g.num_classes())
        .map(|c| {
            let cyc = g.generate(ElemSet::singleton(g.class_rep(c)));
            let h = subgroups.class_of(cyc).expect("every subgroup has a class");
            crate::CycNum::from_int(table.mark(h, k))
        })
        .collect();
    Character { values }
}

/// A superclass function with values `±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignVector {
    pub signs: Vec<i8>,
    pub in_burnside: bool,
}

impl SignVector {
    pub fn bits(&self) -> BitRow {
        BitRow::from_bits(self.signs.iter().map(|&s| s < 0))
    }

    fn from_parities(table: &MarksTable, dims: impl Iterator<Item = u64>) -> SignVector {
        let signs: Vec<i8> = dims.map(|d| if d % 2 == 0 { 1 } else { -1 }).collect();
        let ghost: Vec<i64> = signs.iter().map(|&s| s as i64).collect();
        let in_burnside = ghost_solve(table, &ghost).is_ok();
        SignVector { signs, in_burnside }
    }
}

/// `dim χ^H` for every subgroup class `H`.
pub fn fixed_dims(g: &FiniteGroup, table: &MarksTable, chi: &Character) -> Result<Vec<u64>, BurnError> {
    (0..table.len())
        .map(|h| Ok(fixed_point_dim_counts(g, chi, &table.counts[h], table.orders[h])?))
        .collect()
}

/// `H ↦ (-1)^{dim χ^H}` for the character of a real representation.
pub fn die_unit(
    g: &FiniteGroup,
    marks: &MarksTable,
    chars: &CharacterTable,
    chi: &Character,
) -> Result<SignVector, BurnError> {
    check_real(g, chars, chi)?;
    let v = SignVector::from_parities(marks, fixed_dims(g, marks, chi)?.into_iter());
    if !v.in_burnside {
        return Err(BurnError::NotAUnit);
    }
    Ok(v)
}

/// Real representations have real characters in which non-real irreducibles
/// pair with their conjugates and quaternionic ones occur evenly.
fn check_real(g: &FiniteGroup, chars: &CharacterTable, chi: &Character) -> Result<(), BurnError> {
    if !chi.is_real() {
        return Err(BurnError::NotRealCharacter);
    }
    let mult = chars.decompose(g, chi).map_err(|_| BurnError::NotRealCharacter)?;
    for (i, &m) in mult.iter().enumerate() {
        if m % 2 != 0 && frobenius_schur(g, &chars.irreps[i]).map_err(|_| BurnError::NotRealCharacter)? == -1 {
            return Err(BurnError::NotRealCharacter);
        }
    }
    Ok(())
}

/// Orbits of `h` acting on the left cosets of `k`.
fn orbit_count(g: &FiniteGroup, h: ElemSet, k: ElemSet) -> u64 {
    let coset_of = |x: usize| k.iter().map(|y| g.mul(x, y)).min().unwrap();
    let mut seen = ElemSet::EMPTY;
    let mut orbits = 0;
    for x in g.elements() {
        let c = coset_of(x);
        if seen.contains(c) {
            continue;
        }
        orbits += 1;
        for y in h.iter() {
            seen.insert(coset_of(g.mul(y, c)));
        }
    }
    orbits
}

/// `H ↦ (-1)^{#H-orbits on G/K}`, checked against `die(lin(G/K))`.
pub fn exp_unit(
    g: &FiniteGroup,
    subgroups: &SubgroupClassTable,
    marks: &MarksTable,
    chars: &CharacterTable,
    k: usize,
) -> Result<SignVector, BurnError> {
    let kset = marks.reps[k];
    let v = SignVector::from_parities(marks, marks.reps.iter().map(|&h| orbit_count(g, h, kset)));
    let via_lin = die_unit(g, marks, chars, &lin_character(g, subgroups, marks, k))?;
    if v != via_lin {
        return Err(BurnError::CountMismatch(format!("exp and die(lin) differ at G/K for class {k}")));
    }
    Ok(v)
}

/// The character of the real irreducible containing `ψ`.
pub fn realification(psi: &Character, fs: i8) -> Character {
    match fs {
        1 => psi.clone(),
        0 => psi.add(&psi.conjugate()),
        _ => psi.scale(2),
    }
}

/// Number of units, by a sign search pruned on integrality of the
/// back-substitution in [`ghost_solve`].
pub fn count_units_brute_force(marks: &MarksTable, limit: usize) -> Result<u64, BurnError> {
    let c = marks.len();
    if c > limit {
        return Err(BurnError::TooLargeForBruteForce { classes: c, limit });
    }
    fn search(marks: &MarksTable, h: usize, a: &mut Vec<i128>) -> u64 {
        let c = marks.len();
        let mut rest = 0i128;
        for k in h + 1..c {
            rest += marks.marks[k][h] as i128 * a[k];
        }
        let d = marks.marks[h][h] as i128;
        let mut total = 0;
        for s in [1i128, -1] {
            let r = s - rest;
            if r % d != 0 {
                continue;
            }
            a[h] = r / d;
            total += if h == 0 { 1 } else { search(marks, h - 1, a) };
        }
        a[h] = 0;
        total
    }
    Ok(search(marks, c - 1, &mut vec![0; c]))
}

/// The unit group of `B(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct UnitGroup {
    /// Rank over the two-element field.
    pub rank: usize,
    /// A basis of sign vectors, generated by the realified irreducibles and `-1`.
    pub basis: Vec<SignVector>,
    /// Number of units from the sign search, when it ran.
    pub brute_force_count: Option<u64>,
    /// Whether the die-generated group is assumed to be everything (no brute-force check).
    pub surjectivity_assumed: bool,
}

pub fn burnside_units(
    g: &FiniteGroup,
    marks: &MarksTable,
    chars: &CharacterTable,
    threshold: usize,
) -> Result<UnitGroup, BurnError> {
    let mut span = F2Span::new();
    let mut basis = Vec::new();
    let minus_one = SignVector { signs: vec![-1; marks.len()], in_burnside: true };
    let mut generators = vec![minus_one];
    for psi in &chars.irreps {
        let fs = frobenius_schur(g, psi).map_err(|_| BurnError::NotRealCharacter)?;
        generators.push(die_unit(g, marks, chars, &realification(psi, fs))?);
    }
    for v in generators {
        if span.insert(v.bits()) {
            basis.push(v);
        }
    }
    let rank = span.rank();
    let brute_force_count = if marks.len() <= threshold {
        let n = count_units_brute_force(marks, threshold)?;
        if rank >= 64 || n != 1u64 << rank {
            return Err(BurnError::CountMismatch(format!(
                "brute force found {n} units, die images span 2^{rank}"
            )));
        }
        Some(n)
    } else {
        None
    };
    Ok(UnitGroup { rank, basis, surjectivity_assumed: brute_force_count.is_none(), brute_force_count })
}

/// One counting identity: a computed rank against the number it should equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub name: &'static str,
    pub computed: usize,
    pub expected: usize,
    pub ok: bool,
}

impl CountCheck {
    fn new(name: &'static str, computed: usize, expected: usize) -> CountCheck {
        CountCheck { name, computed, expected, ok: computed == expected }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub checks: Vec<CountCheck>,
    pub unit_rank: usize,
    pub exp_rank: usize,
    pub exp_surjective: bool,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failure(&self) -> Option<BurnError> {
        self.checks.iter().find(|c| !c.ok).map(|c| {
            BurnError::CountMismatch(format!("{}: computed {}, expected {}", c.name, c.computed, c.expected))
        })
    }
}

/// Checks the rank identities relating Galois classes, genotypes, fixed-point
/// dimensions and Burnside units. `invariants[i]` and `tags[i]` describe the
/// `i`-th Galois class.
pub fn verify_counts(
    g: &FiniteGroup,
    subgroups: &SubgroupClassTable,
    marks: &MarksTable,
    chars: &CharacterTable,
    invariants: &[IrrepInvariants],
    tags: &[RoquetteTag],
    units: &UnitGroup,
) -> Result<CountReport, BurnError> {
    let classes = invariants.len();
    let dims: Vec<Vec<u64>> = invariants
        .iter()
        .map(|inv| fixed_dims(g, marks, &chars.irreps[inv.orbit[0]]))
        .collect::<Result<_, _>>()?;
    let real = invariants.iter().filter(|inv| inv.fs == 1).count();
    let rational_type = tags.iter().filter(|t| t.is_rational_type()).count();
    let non_quaternion = tags.iter().filter(|t| t.family != RoquetteFamily::Q).count();
    let dihedral = tags.iter().any(|t| t.family == RoquetteFamily::D);

    let mut checks = vec![
        CountCheck::new("galois_classes_vs_cyclic_subgroup_classes", classes, subgroups.cyclic_classes(g).len()),
        CountCheck::new("fixed_dim_rank_q", rank_q(&to_i64(&dims)), classes),
    ];
    if g.p() == 2 {
        let mod2 = dims.iter().map(|row| BitRow::from_bits(row.iter().map(|d| d % 2 == 1)));
        checks.push(CountCheck::new("fixed_dim_rank_f2", rank_f2(mod2), non_quaternion));
    }
    let real_dies = invariants
        .iter()
        .map(|inv| die_unit(g, marks, chars, &realification(&chars.irreps[inv.orbit[0]], inv.fs)).map(|v| v.bits()))
        .collect::<Result<Vec<_>, _>>()?;
    checks.push(CountCheck::new("real_die_rank", rank_f2(real_dies), real));
    let rational_dies = invariants
        .iter()
        .map(|inv| die_unit(g, marks, chars, &rational_character(chars, inv)).map(|v| v.bits()))
        .collect::<Result<Vec<_>, _>>()?;
    checks.push(CountCheck::new("rational_die_rank", rank_f2(rational_dies), rational_type));
    checks.push(CountCheck::new("unit_rank", units.rank, real));
    let exps = (0..marks.len())
        .map(|k| exp_unit(g, subgroups, marks, chars, k).map(|v| v.bits()))
        .collect::<Result<Vec<_>, _>>()?;
    let exp_rank = rank_f2(exps);
    checks.push(CountCheck::new("exp_rank", exp_rank, rational_type));
    let exp_surjective = exp_rank == units.rank;
    checks.push(CountCheck::new("exp_surjective_iff_no_dihedral", exp_surjective as usize, !dihedral as usize));
    Ok(CountReport { checks, unit_rank: units.rank, exp_rank, exp_surjective })
}

fn to_i64(rows: &[Vec<u64>]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_table::character_table;
    use crate::group::{make_named, subgroup_classes, Family};

    fn setup(f: Family, n: u64) -> (FiniteGroup, SubgroupClassTable, MarksTable, CharacterTable) {
        let g = make_named(f, n).unwrap();
        let s = subgroup_classes(&g);
        let m = table_of_marks(&g, &s);
        let t = character_table(&g).unwrap();
        (g, s, m, t)
    }

    /// Fixed cosets counted directly.
    fn brute_mark(g: &FiniteGroup, h: ElemSet, k: ElemSet) -> i64 {
        let cosets: std::collections::BTreeSet<Vec<usize>> = g
            .elements()
            .map(|x| {
                let mut c: Vec<usize> = k.iter().map(|y| g.mul(x, y)).collect();
                c.sort();
                c
            })
            .collect();
        cosets
            .iter()
            .filter(|c| {
                let set: ElemSet = c.iter().copied().collect();
                h.iter().all(|y| c.iter().all(|&x| set.contains(g.mul(y, x))))
            })
            .count() as i64
    }

    #[test]
    fn marks_examples() {
        let (_, _, m, _) = setup(Family::C, 2);
        assert_eq!(m.marks, vec![vec![2, 0], vec![1, 1]]);
        let (_, _, m, _) = setup(Family::C, 1);
        assert_eq!(m.marks, vec![vec![1]]);
        let (g, s, m, _) = setup(Family::Q, 8);
        let diag: Vec<i64> = (0..6).map(|i| m.marks[i][i]).collect();
        assert_eq!(diag, vec![8, 4, 2, 2, 2, 1]);
        for (k, kk) in s.reps().enumerate() {
            for (h, hh) in s.reps().enumerate() {
                assert_eq!(m.mark(h, k), brute_mark(&g, hh, kk));
            }
        }
    }

    #[test]
    fn ghost_examples() {
        let (_, _, m, _) = setup(Family::C, 2);
        assert_eq!(ghost_solve(&m, &[2, 0]).unwrap(), vec![1, 0]);
        assert_eq!(ghost_solve(&m, &[0, 1]), Err(BurnError::NotInBurnsideRing));
        assert_eq!(ghost_solve(&m, &[-1, 1]).unwrap(), vec![-1, 1]);
    }

    #[test]
    fn lin_examples() {
        let (g, s, m, _) = setup(Family::D, 8);
        let last = s.len() - 1;
        assert_eq!(lin_character(&g, &s, &m, last), Character::trivial(&g));
        let reg = lin_character(&g, &s, &m, 0);
        assert_eq!(reg.degree(), 8);
        assert!(reg.values[1..].iter().all(|x| x.is_zero()));
        let b = s.class_of([0, 4].into_iter().collect()).unwrap();
        let lin_b = lin_character(&g, &s, &m, b);
        assert_eq!(lin_b.degree(), 4);
        assert_eq!(lin_b.value_at(&g, 4).to_i64(), Some(2));
    }

    #[test]
    fn die_examples() {
        let (g, _, m, t) = setup(Family::D, 8);
        let v = die_unit(&g, &m, &t, &t.irreps[0]).unwrap();
        assert!(v.signs.iter().all(|&s| s == -1));
        let v = die_unit(&g, &m, &t, &t.irreps[4]).unwrap();
        assert_eq!(v.signs, vec![1, 1, -1, -1, 1, 1, 1, 1]);
        let (g, _, m, t) = setup(Family::Q, 8);
        let v = die_unit(&g, &m, &t, &t.irreps[4].scale(2)).unwrap();
        assert!(v.signs.iter().all(|&s| s == 1));
        assert_eq!(die_unit(&g, &m, &t, &t.irreps[4]), Err(BurnError::NotRealCharacter));
        let (g, _, m, t) = setup(Family::C, 4);
        assert_eq!(die_unit(&g, &m, &t, &t.irreps[2]), Err(BurnError::NotRealCharacter));
    }

    #[test]
    fn exp_examples() {
        let (g, s, m, t) = setup(Family::C, 2);
        assert_eq!(exp_unit(&g, &s, &m, &t, 0).unwrap().signs, vec![1, -1]);
        let (g, s, m, t) = setup(Family::Q, 8);
        let all = exp_unit(&g, &s, &m, &t, s.len() - 1).unwrap();
        assert!(all.signs.iter().all(|&x| x == -1));
        let z = s.class_of([0, 2].into_iter().collect()).unwrap();
        assert_eq!(exp_unit(&g, &s, &m, &t, z).unwrap().signs[0], 1);
    }

    #[test]
    fn unit_counts() {
        for (f, n, count) in [(Family::C, 1, 2), (Family::C, 2, 4), (Family::Q, 8, 16), (Family::D, 16, 64)] {
            let (g, _, m, t) = setup(f, n);
            let u = burnside_units(&g, &m, &t, 22).unwrap();
            assert_eq!(u.brute_force_count, Some(count), "{f}{n}");
        }
        for (f, n) in [(Family::C, 3), (Family::C, 9), (Family::C, 27), (Family::Mod, 27)] {
            let (g, _, m, t) = setup(f, n);
            assert_eq!(burnside_units(&g, &m, &t, 22).unwrap().rank, 1);
        }
        let (_, _, m, _) = setup(Family::D, 16);
        assert!(matches!(count_units_brute_force(&m, 5), Err(BurnError::TooLargeForBruteForce { .. })));
    }

    fn counts_for(f: Family, n: u64) -> CountReport {
        let g = make_named(f, n).unwrap();
        let a = crate::analysis::GroupAnalysis::run(&g, &Default::default()).unwrap();
        a.counts
    }

    fn check(r: &CountReport, name: &str) -> usize {
        let c = r.checks.iter().find(|c| c.name == name).unwrap();
        assert!(c.ok, "{c:?}");
        c.computed
    }

    #[test]
    fn counting_examples() {
        let r = counts_for(Family::D, 16);
        assert!(r.passed());
        assert_eq!(check(&r, "fixed_dim_rank_q"), 6);
        assert_eq!(check(&r, "fixed_dim_rank_f2"), 6);
        assert_eq!(check(&r, "unit_rank"), 6);
        assert_eq!((r.exp_rank, r.exp_surjective), (5, false));
        let r = counts_for(Family::Q, 8);
        assert!(r.passed());
        assert_eq!(check(&r, "fixed_dim_rank_q"), 5);
        assert_eq!(check(&r, "fixed_dim_rank_f2"), 4);
        assert_eq!(check(&r, "unit_rank"), 4);
        assert_eq!((r.exp_rank, r.exp_surjective), (4, true));
        let r = counts_for(Family::C, 1);
        assert!(r.passed());
        assert_eq!((r.unit_rank, r.exp_rank), (1, 1));
    }
}
