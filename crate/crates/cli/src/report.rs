//! JSON and CSV renderings of a [`GroupAnalysis`].

use std::collections::BTreeMap;

use serde::Serialize;

use pglab_core::analysis::{ClassReport, GroupAnalysis};
use pglab_core::burnside::CountCheck;
use pglab_core::CycNum;

#[derive(Serialize)]
pub struct BurnsideSection<'a> {
    pub subgroup_orders: &'a [usize],
    /// `marks[k][h] = |(G/K)^H|`.
    pub marks: &'a [Vec<i64>],
    pub unit_rank: usize,
    pub unit_basis: Vec<&'a [i8]>,
    pub brute_force_units: Option<u64>,
    pub surjectivity_assumed: bool,
    pub exp_rank: usize,
    pub exp_surjective: bool,
    pub checks: &'a [CountCheck],
}

#[derive(Serialize)]
pub struct AnalysisReport<'a> {
    pub spec: String,
    pub order: usize,
    pub p: u32,
    pub exponent: u32,
    pub conjugacy_classes: usize,
    pub subgroup_classes: usize,
    pub subgroups: usize,
    pub cyclic_subgroup_classes: usize,
    pub degrees: Vec<i64>,
    pub character_table: &'a [pglab_core::char_table::Character],
    pub galois_classes: &'a [ClassReport],
    pub census: BTreeMap<String, usize>,
    pub burnside: BurnsideSection<'a>,
}

impl<'a> AnalysisReport<'a> {
    pub fn new(spec: String, a: &'a GroupAnalysis) -> AnalysisReport<'a> {
        let g = &a.group;
        AnalysisReport {
            spec,
            order: g.order(),
            p: g.p(),
            exponent: g.exponent(),
            conjugacy_classes: g.num_classes(),
            subgroup_classes: a.subgroups.len(),
            subgroups: a.subgroups.total_subgroups(),
            cyclic_subgroup_classes: a.subgroups.cyclic_classes(g).len(),
            degrees: a.table.degrees(),
            character_table: &a.table.irreps,
            galois_classes: &a.classes,
            census: a.census.iter().map(|(t, k)| (t.to_string(), *k)).collect(),
            burnside: BurnsideSection {
                subgroup_orders: &a.marks.orders,
                marks: &a.marks.marks,
                unit_rank: a.units.rank,
                unit_basis: a.units.basis.iter().map(|v| v.signs.as_slice()).collect(),
                brute_force_units: a.units.brute_force_count,
                surjectivity_assumed: a.units.surjectivity_assumed,
                exp_rank: a.counts.exp_rank,
                exp_surjective: a.counts.exp_surjective,
                checks: &a.counts.checks,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// `n:[c0,c1,...]` over the basis `1, ζ_n, ..., ζ_n^{φ(n)-1}`.
pub fn coefficient_list(x: &CycNum) -> String {
    let cs: Vec<String> = x.coeffs().iter().map(|c| c.to_string()).collect();
    format!("{}:[{}]", x.level(), cs.join(","))
}

/// The character table as CSV: one row per irreducible, one column per class.
pub fn character_table_csv(a: &GroupAnalysis) -> String {
    let g = &a.group;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["character".to_string(), "degree".to_string()];
    header.extend(g.classes().iter().map(|cls| g.label(cls[0])));
    w.write_record(&header).expect("in-memory write");
    for (i, chi) in a.table.irreps.iter().enumerate() {
        let mut row = vec![i.to_string(), chi.degree().to_string()];
        row.extend(chi.values.iter().map(coefficient_list));
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
