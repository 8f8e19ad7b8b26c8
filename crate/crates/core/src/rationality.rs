//! Galois classes of irreducible characters and their rationality invariants.
//!
//! `(ℤ/n)^×`, with `n = exp(G)`, acts on the irreducibles through power maps,
//! `(σ_k ψ)(g) = ψ(g^k)`. The orbit of a complex irreducible determines the
//! rational irreducible containing it; its stabilizer fixes the vertex field.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::arith::units;
use crate::char_table::{galois_conjugate, Character, CharacterTable};
use crate::cyclotomic::{generated_units, stabilizer_field, CycError, FieldHandle};
use crate::group::{RoquetteFamily, RoquetteTag};
use crate::group::FiniteGroup;
use crate::rational::Rational;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RatError {
    #[error("Frobenius-Schur indicator {0} is not in {{-1, 0, 1}}")]
    NonIntegral(String),
    #[error("no classification row matches v={v}, fs={fs}, vertex field {field}")]
    ClassificationInconsistency { v: u32, fs: i8, field: String },
    #[error(transparent)]
    Field(#[from] CycError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FsType {
    R,
    C,
    H,
}

impl FsType {
    pub fn from_indicator(fs: i8) -> FsType {
        match fs {
            1 => FsType::R,
            0 => FsType::C,
            _ => FsType::H,
        }
    }
}

impl fmt::Display for FsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An orbit of `(ℤ/n)^×` on the rows of a character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisOrbit {
    /// Sorted table indices; the first is the representative.
    pub members: Vec<usize>,
    /// Units fixing the representative, at level `exp(G)`.
    pub stabilizer: Vec<u32>,
}

impl GaloisOrbit {
    pub fn rep(&self) -> usize {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Orbits in order of their representatives, so the trivial orbit is first.
pub fn galois_orbits(g: &FiniteGroup, table: &CharacterTable) -> Vec<GaloisOrbit> {
    let n = g.exponent();
    let index: HashMap<&Character, usize> =
        table.irreps.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut assigned = vec![false; table.len()];
    let mut orbits = Vec::new();
    for i in 0..table.len() {
        if assigned[i] {
            continue;
        }
        let psi = &table.irreps[i];
        let mut members = Vec::new();
        let mut stabilizer = Vec::new();
        for k in units(n) {
            let j = index[&galois_conjugate(g, psi, k as i64)];
            if j == i {
                stabilizer.push(k);
            }
            if !assigned[j] {
                assigned[j] = true;
                members.push(j);
            }
        }
        members.sort_unstable();
        orbits.push(GaloisOrbit { members, stabilizer });
    }
    orbits
}

/// `(1/|G|) Σ_g ψ(g²)`.
pub fn frobenius_schur(g: &FiniteGroup, psi: &Character) -> Result<i8, RatError> {
    let n = g.exponent();
    let mut acc = vec![Rational::zero(); crate::arith::euler_phi(n) as usize];
    for c in 0..g.num_classes() {
        psi.values[g.power_class(c, 2)].add_into(n, &Rational::from(g.class_size(c)), &mut acc);
    }
    let total = crate::cyclotomic::CycNum::from_coeffs(n, acc)?;
    let bad = || RatError::NonIntegral(total.to_string());
    let q = total.to_rational().ok_or_else(bad)?;
    let fs = &q / &Rational::from(g.order());
    match fs.to_i64() {
        Some(k @ -1..=1) => Ok(k as i8),
        _ => Err(bad()),
    }
}

/// The rationality data of one Galois class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrepInvariants {
    pub orbit: Vec<usize>,
    pub v: u32,
    pub m: u32,
    pub fs: i8,
    #[serde(rename = "type")]
    pub fs_type: FsType,
    pub vertex_field: FieldHandle,
    pub n_psi: u32,
    pub fein: FieldHandle,
    pub min_splitting: Vec<FieldHandle>,
    #[serde(skip)]
    pub vertex_stab: Vec<u32>,
    #[serde(skip)]
    pub trivial: bool,
    /// The Roquette type singled out by the classification row.
    #[serde(skip)]
    pub row: RoquetteTag,
    #[serde(skip)]
    pub p: u32,
}

fn cyclotomic(n: u32) -> FieldHandle {
    stabilizer_field(n, &[1 % n]).expect("prime power level")
}

fn rationals() -> FieldHandle {
    cyclotomic(1)
}

/// `Fix⟨k⟩` inside `ℚ_n`.
fn fixed_by(n: u32, k: u32) -> FieldHandle {
    stabilizer_field(n, &generated_units(n, &[k])).expect("cyclic subgroup")
}

/// Row data of the classification of complex Galois classes of p-groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifierRow {
    pub tag: RoquetteTag,
    pub m: u32,
    pub n_psi: u32,
    pub fein: FieldHandle,
    pub min_splitting: Vec<FieldHandle>,
}

/// Matches `(p, v, fs, 𝕍)` against the classification table.
pub fn classify(
    p: u32,
    v: u32,
    fs: i8,
    vertex_field: &FieldHandle,
    trivial: bool,
) -> Result<ClassifierRow, RatError> {
    let inconsistent =
        || RatError::ClassificationInconsistency { v, fs, field: vertex_field.display_name() };
    let vf = vertex_field.canonical();
    if vf.degree != v {
        return Err(inconsistent());
    }
    let row = |tag, m, n_psi, fein: FieldHandle, split: Vec<FieldHandle>| {
        Ok(ClassifierRow { tag, m, n_psi, fein, min_splitting: split })
    };
    let quaternion = |v: u32| {
        let (n4, n8) = (4 * v, 8 * v);
        row(
            RoquetteTag::new(RoquetteFamily::Q, n8).unwrap(),
            2,
            n4,
            cyclotomic(n4),
            vec![cyclotomic(n4), fixed_by(n8, 4 * v - 1)],
        )
    };
    if v == 1 {
        return match (trivial, fs) {
            (true, 1) => row(RoquetteTag::cyclic(1), 1, 1, rationals(), vec![rationals()]),
            (false, 1) => row(RoquetteTag::cyclic(2), 1, 1, rationals(), vec![rationals()]),
            (false, -1) if p == 2 => quaternion(1),
            _ => Err(inconsistent()),
        };
    }
    if p != 2 {
        let n = vf.conductor;
        if fs != 0 || vf.stab.len() != 1 || n - n / p != v {
            return Err(inconsistent());
        }
        return row(RoquetteTag::cyclic(n), 1, n, vf.clone(), vec![vf]);
    }
    if !v.is_power_of_two() {
        return Err(inconsistent());
    }
    let (n2, n4) = (2 * v, 4 * v);
    let inv = crate::cyclotomic::involutions(n4)?;
    let q2v = fixed_by(n4, inv.gamma);
    let real = fixed_by(n4, inv.beta);
    let imag = fixed_by(n4, inv.delta);
    match fs {
        1 if vf.same_field(&real) => {
            row(RoquetteTag::new(RoquetteFamily::D, 8 * v).unwrap(), 1, n4, real.canonical(), vec![real.canonical()])
        }
        -1 if vf.same_field(&real) => quaternion(v),
        0 if vf.same_field(&q2v) => {
            row(RoquetteTag::cyclic(n2), 1, n2, q2v.canonical(), vec![q2v.canonical()])
        }
        0 if vf.same_field(&imag) => {
            row(RoquetteTag::new(RoquetteFamily::SD, 8 * v).unwrap(), 1, n4, imag.canonical(), vec![imag.canonical()])
        }
        _ => Err(inconsistent()),
    }
}

pub fn irrep_invariants(
    g: &FiniteGroup,
    table: &CharacterTable,
    orbit: &GaloisOrbit,
) -> Result<IrrepInvariants, RatError> {
    let n = g.exponent();
    let psi = &table.irreps[orbit.rep()];
    let fs = frobenius_schur(g, psi)?;
    let vertex_field = stabilizer_field(n, &orbit.stabilizer)?.canonical();
    let v = orbit.len() as u32;
    let trivial = orbit.rep() == 0;
    let row = classify(g.p(), v, fs, &vertex_field, trivial)?;
    // m = 2 exactly when fs = -1, and |Fein : 𝕍| = m; checked rather than assumed
    let fein_index = row.fein.degree / vertex_field.degree;
    if row.m != if fs == -1 { 2 } else { 1 } || fein_index != row.m {
        return Err(RatError::ClassificationInconsistency {
            v,
            fs,
            field: vertex_field.display_name(),
        });
    }
    Ok(IrrepInvariants {
        orbit: orbit.members.clone(),
        v,
        m: row.m,
        fs,
        fs_type: FsType::from_indicator(fs),
        vertex_field,
        n_psi: row.n_psi,
        fein: row.fein,
        min_splitting: row.min_splitting,
        vertex_stab: orbit.stabilizer.clone(),
        trivial,
        row: row.tag,
        p: g.p(),
    })
}

/// The character of the rational irreducible: `m` times the orbit sum.
pub fn rational_character(table: &CharacterTable, inv: &IrrepInvariants) -> Character {
    let mut sum = table.irreps[inv.orbit[0]].clone();
    for &i in &inv.orbit[1..] {
        sum = sum.add(&table.irreps[i]);
    }
    sum.scale(inv.m as i64)
}

/// Splits an orbit into the orbits of the subgroup `s ≤ (ℤ/exp G)^×`: one
/// block per irreducible over the field fixed by `s`.
pub fn irreps_over_subfield(
    g: &FiniteGroup,
    table: &CharacterTable,
    orbit: &GaloisOrbit,
    s: &[u32],
) -> Result<Vec<Vec<usize>>, RatError> {
    let n = g.exponent();
    // validates `s`
    stabilizer_field(n, s)?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; table.len()];
    for &i in &orbit.members {
        if seen[i] {
            continue;
        }
        let mut block: Vec<usize> = s
            .iter()
            .map(|&k| table.index_of(&galois_conjugate(g, &table.irreps[i], k as i64)).unwrap())
            .collect();
        block.sort_unstable();
        block.dedup();
        for &j in &block {
            seen[j] = true;
        }
        blocks.push(block);
    }
    Ok(blocks)
}
