//! Full analysis of one group: character table, Galois classes with their
//! invariants and genotypes, and the Burnside counting checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::burnside::{burnside_units, table_of_marks, verify_counts, BurnError, CountReport, MarksTable, UnitGroup};
use crate::char_table::{character_table_with, CharError, CharacterTable};
use crate::genotype::{exhaustive_genetic_subquotients, genotype, genotype_census, GenoError, GeneticChain};
use crate::group::{subgroup_classes, FiniteGroup, RoquetteTag, SubgroupClassTable};
use crate::rationality::{galois_orbits, irrep_invariants, GaloisOrbit, IrrepInvariants, RatError};

pub const DEFAULT_BRUTE_UNITS_THRESHOLD: usize = 22;
/// Largest order for which the exhaustive genetic search is allowed.
pub const EXHAUSTIVE_MAX_ORDER: usize = 32;

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub brute_units_threshold: usize,
    pub exhaustive_genetic: bool,
    /// Test hook: negate the indicator of every nontrivial real class before
    /// classification, which must make the two genotype routes disagree.
    pub corrupt_indicators: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            brute_units_threshold: DEFAULT_BRUTE_UNITS_THRESHOLD,
            exhaustive_genetic: false,
            corrupt_indicators: false,
        }
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Rat(#[from] RatError),
    #[error(transparent)]
    Geno(#[from] GenoError),
    #[error(transparent)]
    Burn(#[from] BurnError),
}

/// One Galois class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub degree: i64,
    #[serde(flatten)]
    pub invariants: IrrepInvariants,
    pub genotype: RoquetteTag,
    pub chain: GeneticChain,
    /// Number of genetic subquotients found by the exhaustive search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive_subquotients: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub group: FiniteGroup,
    pub subgroups: SubgroupClassTable,
    pub table: CharacterTable,
    pub orbits: Vec<GaloisOrbit>,
    pub classes: Vec<ClassReport>,
    pub census: BTreeMap<RoquetteTag, usize>,
    pub marks: MarksTable,
    pub units: UnitGroup,
    pub counts: CountReport,
}

impl GroupAnalysis {
    pub fn run(g: &FiniteGroup, opts: &AnalysisOptions) -> Result<GroupAnalysis, AnalysisError> {
        let subgroups = subgroup_classes(g);
        let table = character_table_with(g, &subgroups)?;
        let orbits = galois_orbits(g, &table);
        let mut classes = Vec::with_capacity(orbits.len());
        for orbit in &orbits {
            let invariants = irrep_invariants(g, &table, orbit)?;
            let mut probe = invariants.clone();
            if opts.corrupt_indicators && probe.fs == 1 && !probe.trivial {
                probe.fs = -1;
            }
            let (tag, chain) = genotype(g, &table, &probe)?;
            let exhaustive_subquotients = if opts.exhaustive_genetic && g.order() <= EXHAUSTIVE_MAX_ORDER {
                let found = exhaustive_genetic_subquotients(g, &subgroups, &table.irreps[orbit.rep()])?;
                if found[0].tag != tag {
                    return Err(GenoError::NonUniqueGenotype(vec![tag, found[0].tag]).into());
                }
                Some(found.len())
            } else {
                None
            };
            classes.push(ClassReport {
                degree: table.irreps[orbit.rep()].degree(),
                invariants,
                genotype: tag,
                chain,
                exhaustive_subquotients,
            });
        }
        let tags: Vec<RoquetteTag> = classes.iter().map(|c| c.genotype).collect();
        let census = genotype_census(&tags);
        let marks = table_of_marks(g, &subgroups);
        let units = burnside_units(g, &marks, &table, opts.brute_units_threshold)?;
        let invariants: Vec<IrrepInvariants> = classes.iter().map(|c| c.invariants.clone()).collect();
        let counts = verify_counts(g, &subgroups, &marks, &table, &invariants, &tags, &units)?;
        Ok(GroupAnalysis {
            group: g.clone(),
            subgroups,
            table,
            orbits,
            classes,
            census,
            marks,
            units,
            counts,
        })
    }
}
