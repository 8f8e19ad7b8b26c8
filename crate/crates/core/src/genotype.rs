//! Genotypes: the Roquette subquotient from which an irreducible character
//! is tightly induced.
//!
//! Two independent routes are implemented. [`genetic_reduction`] walks down
//! through centralizers of normal `Cp × Cp` subgroups until the current
//! subquotient is Roquette; [`genotype_via_invariants`] reads the type off
//! `(v, fs, 𝕍)`. [`genotype`] runs both and insists they agree.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::char_table::{
    character_kernel, character_table, deflate, induce, inner_product, restrict, CharError,
    Character, CharacterTable,
};
use crate::cyclotomic::{stabilizer_field, value_stabilizer, FieldHandle};
use crate::group::{
    quotient, roquette_iso_type_with, subgroup_classes, ElemSet, Embedding, FiniteGroup,
    GroupError, RoquetteTag, SubgroupClassTable,
};
use crate::rationality::{classify, IrrepInvariants, RatError};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GenoError {
    #[error("no normal Cp x Cp meeting the center in order p")]
    NoSuchSubgroup,
    #[error("genotype mismatch for character {index}: invariants give {invariants}, reduction gives {reduction}")]
    DualPathMismatch { index: usize, invariants: RoquetteTag, reduction: RoquetteTag },
    #[error("reduction check failed: {0}")]
    ChainCheck(String),
    #[error("tight inductions disagree on the genotype: {0:?}")]
    NonUniqueGenotype(Vec<RoquetteTag>),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Rat(#[from] RatError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn ids<S: Serializer>(set: &ElemSet, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(set.iter())
}

/// Normal `E ≅ Cp × Cp` with `E ∩ Z(G)` of order `p` and `[G, E] ≤ E ∩ Z(G)`,
/// lexicographically least by sorted element list.
pub fn find_normal_e(g: &FiniteGroup, subgroups: &SubgroupClassTable) -> Result<ElemSet, GenoError> {
    let p = g.p() as usize;
    let center = g.center();
    subgroups
        .normal_subgroups()
        .filter(|e| e.len() == p * p && e.iter().all(|x| g.element_order(x) as usize <= p))
        .filter(|e| {
            let z = e.intersect(center);
            z.len() == p && g.commutator_subgroup(g.all(), *e).is_subset(z)
        })
        .min_by_key(|e| e.lex_key())
        .ok_or(GenoError::NoSuchSubgroup)
}

/// Outcome of a tightness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Tightness {
    /// `ind φ = ψ` exactly.
    pub induced_ok: bool,
    /// `ℚ[φ] = ℚ[ψ]`.
    pub narrow: bool,
}

impl Tightness {
    pub fn is_tight(&self) -> bool {
        self.induced_ok && self.narrow
    }
}

/// The field generated by the values of a character.
pub fn character_field(g: &FiniteGroup, chi: &Character) -> FieldHandle {
    let n = g.exponent();
    stabilizer_field(n, &value_stabilizer(n, &chi.values)).expect("stabilizers are subgroups").canonical()
}

/// Whether `ψ` is tightly induced from `φ`, a character of `H` with `K` in
/// its kernel (the inflation of a character of `H/K`).
pub fn is_tight_induction(
    g: &FiniteGroup,
    psi: &Character,
    h: ElemSet,
    k: ElemSet,
    phi: &Character,
) -> Result<Tightness, GenoError> {
    let emb = Embedding::new(g, h)?;
    let local_k = emb.local_set(k);
    if !emb.group.is_normal(local_k) || !local_k.is_subset(character_kernel(&emb.group, phi)) {
        return Err(GenoError::ChainCheck("K is not a normal subgroup in the kernel".into()));
    }
    Ok(Tightness {
        induced_ok: induce(g, &emb, phi) == *psi,
        narrow: character_field(g, psi).same_field(&character_field(&emb.group, phi)),
    })
}

/// One pass of the reduction loop.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    /// Order of the subquotient the step starts from.
    pub order: usize,
    /// Preimages in the original group.
    #[serde(serialize_with = "ids")]
    pub e: ElemSet,
    #[serde(serialize_with = "ids")]
    pub t: ElemSet,
    /// Index of the chosen constituent in the table of `T`.
    pub constituent: usize,
    /// Preimage of the kernel divided out after restricting.
    #[serde(serialize_with = "ids")]
    pub kernel: ElemSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct Terminal {
    #[serde(rename = "H", serialize_with = "ids")]
    pub h: ElemSet,
    #[serde(rename = "K", serialize_with = "ids")]
    pub k: ElemSet,
    pub tag: RoquetteTag,
    /// The germ, as a character of `group`.
    #[serde(skip)]
    pub germ: Character,
    /// `H/K`, numbered by the reduction.
    #[serde(skip)]
    pub group: FiniteGroup,
    /// Germ inflated to `H`, as a character of `Embedding::new(G, H)`.
    #[serde(skip)]
    pub germ_on_h: Character,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneticChain {
    /// Kernel of the starting character.
    #[serde(serialize_with = "ids")]
    pub kernel: ElemSet,
    pub steps: Vec<ChainStep>,
    pub terminal: Terminal,
}

/// A subquotient `H/K` of the original group, with the projection from `H`.
struct Subquotient {
    x: FiniteGroup,
    h: ElemSet,
    k: ElemSet,
    /// `proj[y]` for `y ∈ H`; unused elsewhere.
    proj: Vec<usize>,
}

impl Subquotient {
    fn preimage(&self, s: ElemSet) -> ElemSet {
        self.h.iter().filter(|&y| s.contains(self.proj[y])).collect()
    }

    /// Divides out `Ker ψ`, returning the kernel's preimage and the deflated character.
    fn quotient_kernel(&mut self, psi: &Character) -> Result<(ElemSet, Character), GenoError> {
        let n = character_kernel(&self.x, psi);
        let pre = self.preimage(n);
        if n.len() == 1 {
            return Ok((pre, psi.clone()));
        }
        let q = quotient(&self.x, n)?;
        let down = deflate(&self.x, &q, psi);
        for y in self.h.iter() {
            self.proj[y] = q.proj[self.proj[y]];
        }
        self.k = pre;
        self.x = q.group;
        Ok((pre, down))
    }

    fn restrict_to(&mut self, emb: Embedding) {
        let t = emb.set;
        self.h = self.preimage(t);
        for y in self.h.iter() {
            self.proj[y] = emb.local(self.proj[y]).expect("inside T");
        }
        self.x = emb.group;
    }
}

/// Reduces `table.irreps[index]` to a Roquette subquotient with faithful germ,
/// checking tightness and recomposition along the way.
pub fn genetic_reduction(
    g: &FiniteGroup,
    table: &CharacterTable,
    index: usize,
) -> Result<GeneticChain, GenoError> {
    let psi0 = &table.irreps[index];
    let mut sq = Subquotient { x: g.clone(), h: g.all(), k: ElemSet::singleton(0), proj: (0..g.order()).collect() };
    let (kernel, mut psi) = sq.quotient_kernel(psi0)?;
    let mut steps = Vec::new();
    let tag = loop {
        let subs = subgroup_classes(&sq.x);
        if let Ok(tag) = roquette_iso_type_with(&sq.x, &subs) {
            break tag;
        }
        let e = find_normal_e(&sq.x, &subs)?;
        let t = sq.x.centralizer(e);
        if t.len() * sq.x.p() as usize != sq.x.order() {
            return Err(GenoError::ChainCheck(format!("C(E) has order {} in {}", t.len(), sq.x.order())));
        }
        let emb = Embedding::new(&sq.x, t)?;
        let t_table = character_table(&emb.group)?;
        let res = restrict(&sq.x, &psi, &emb);
        let constituent = t_table
            .irreps
            .iter()
            .position(|phi| inner_product(&emb.group, &res, phi).is_ok_and(|m| !m.is_zero()))
            .ok_or_else(|| GenoError::ChainCheck("restriction has no constituent".into()))?;
        let phi = t_table.irreps[constituent].clone();
        if induce(&sq.x, &emb, &phi) != psi
            || !character_field(&sq.x, &psi).same_field(&character_field(&emb.group, &phi))
        {
            return Err(GenoError::ChainCheck(format!("step at order {} is not tight", sq.x.order())));
        }
        let order = sq.x.order();
        let (e_pre, t_pre) = (sq.preimage(e), sq.preimage(t));
        sq.restrict_to(emb);
        let (kern, down) = sq.quotient_kernel(&phi)?;
        psi = down;
        steps.push(ChainStep { order, e: e_pre, t: t_pre, constituent, kernel: kern });
    };

    if character_kernel(&sq.x, &psi).len() != 1 {
        return Err(GenoError::ChainCheck("germ is not faithful".into()));
    }
    let index_h = g.order() / sq.h.len();
    if index_h > sq.k.len() {
        return Err(GenoError::ChainCheck(format!("|G:H| = {index_h} exceeds |K| = {}", sq.k.len())));
    }
    // recompose: inflate the germ to H and induce back up to G
    let emb_h = Embedding::new(g, sq.h)?;
    let germ_on_h = Character {
        values: emb_h
            .group
            .classes()
            .iter()
            .map(|cls| psi.values[sq.x.class_of(sq.proj[emb_h.to_parent[cls[0]]])].clone())
            .collect(),
    };
    let tight = is_tight_induction(g, psi0, sq.h, sq.k, &germ_on_h)?;
    if !tight.is_tight() {
        return Err(GenoError::ChainCheck(format!("recomposition failed: {tight:?}")));
    }
    Ok(GeneticChain {
        kernel,
        steps,
        terminal: Terminal { h: sq.h, k: sq.k, tag, germ: psi, group: sq.x, germ_on_h },
    })
}

/// The genotype read from the classification table.
pub fn genotype_via_invariants(inv: &IrrepInvariants) -> Result<RoquetteTag, GenoError> {
    Ok(classify(inv.p, inv.v, inv.fs, &inv.vertex_field, inv.trivial)?.tag)
}

/// The genotype of a Galois class, by both routes.
pub fn genotype(
    g: &FiniteGroup,
    table: &CharacterTable,
    inv: &IrrepInvariants,
) -> Result<(RoquetteTag, GeneticChain), GenoError> {
    let by_table = genotype_via_invariants(inv)?;
    let chain = genetic_reduction(g, table, inv.orbit[0])?;
    if chain.terminal.tag != by_table {
        return Err(GenoError::DualPathMismatch {
            index: inv.orbit[0],
            invariants: by_table,
            reduction: chain.terminal.tag,
        });
    }
    Ok((by_table, chain))
}

/// A tight induction from a Roquette subquotient, found by search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneticSubquotient {
    pub h: ElemSet,
    pub k: ElemSet,
    pub tag: RoquetteTag,
}

/// Every `(H, K, φ)`, with `H` up to conjugacy and `φ` a faithful character of
/// a Roquette `H/K`, from which `ψ` is tightly induced. Errors unless the
/// list is nonempty and all tags coincide.
pub fn exhaustive_genetic_subquotients(
    g: &FiniteGroup,
    subgroups: &SubgroupClassTable,
    psi: &Character,
) -> Result<Vec<GeneticSubquotient>, GenoError> {
    let degree = psi.degree() as usize;
    let mut found = Vec::new();
    for h in subgroups.reps() {
        let index = g.order() / h.len();
        if !degree.is_multiple_of(index) {
            continue;
        }
        let emb = Embedding::new(g, h)?;
        let table = character_table(&emb.group)?;
        for phi in table.irreps.iter().filter(|phi| phi.degree() as usize * index == degree) {
            let kernel = character_kernel(&emb.group, phi);
            let q = quotient(&emb.group, kernel)?;
            let Ok(tag) = roquette_iso_type_with(&q.group, &subgroup_classes(&q.group)) else {
                continue;
            };
            let k = emb.lift_set(kernel);
            if is_tight_induction(g, psi, h, k, phi)?.is_tight() {
                found.push(GeneticSubquotient { h, k, tag });
            }
        }
    }
    let mut tags: Vec<RoquetteTag> = found.iter().map(|s| s.tag).collect();
    tags.sort();
    tags.dedup();
    if tags.len() != 1 {
        return Err(GenoError::NonUniqueGenotype(tags));
    }
    Ok(found)
}

/// Number of Galois classes of each genotype.
pub fn genotype_census<'a>(tags: impl IntoIterator<Item = &'a RoquetteTag>) -> BTreeMap<RoquetteTag, usize> {
    let mut census = BTreeMap::new();
    for &t in tags {
        *census.entry(t).or_default() += 1;
    }
    census
}
