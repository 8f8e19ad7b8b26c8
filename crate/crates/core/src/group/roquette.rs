//! Recognition of Roquette groups: p-groups whose normal abelian subgroups
//! are all cyclic.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{subgroup_classes, FiniteGroup, GroupError, SubgroupClassTable};
use crate::arith::prime_power;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoquetteFamily {
    C,
    D,
    SD,
    Q,
}

/// Isomorphism type of a Roquette group, e.g. `D16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoquetteTag {
    pub family: RoquetteFamily,
    pub order: u32,
}

impl RoquetteTag {
    /// Checks the pair against the list of Roquette groups.
    pub fn new(family: RoquetteFamily, order: u32) -> Option<RoquetteTag> {
        let ok = match family {
            RoquetteFamily::C => order == 1 || prime_power(order).is_some(),
            RoquetteFamily::Q => order.is_power_of_two() && order >= 8,
            RoquetteFamily::D | RoquetteFamily::SD => order.is_power_of_two() && order >= 16,
        };
        ok.then_some(RoquetteTag { family, order })
    }

    pub fn cyclic(order: u32) -> RoquetteTag {
        RoquetteTag::new(RoquetteFamily::C, order).expect("prime power order")
    }

    /// `C1` or `C2`: the genotypes of irreps affordable over the rationals.
    pub fn is_rational_type(&self) -> bool {
        self.family == RoquetteFamily::C && self.order <= 2
    }
}

impl fmt::Display for RoquetteTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            RoquetteFamily::C => "C",
            RoquetteFamily::D => "D",
            RoquetteFamily::SD => "SD",
            RoquetteFamily::Q => "Q",
        };
        write!(f, "{fam}{}", self.order)
    }
}

impl FromStr for RoquetteTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| format!("bad tag {s:?}"))?;
        let (fam, num) = s.split_at(split);
        let family = match fam {
            "C" => RoquetteFamily::C,
            "D" => RoquetteFamily::D,
            "SD" => RoquetteFamily::SD,
            "Q" => RoquetteFamily::Q,
            _ => return Err(format!("bad tag {s:?}")),
        };
        let order: u32 = num.parse().map_err(|_| format!("bad tag {s:?}"))?;
        RoquetteTag::new(family, order).ok_or_else(|| format!("{s} is not a Roquette group"))
    }
}

impl Serialize for RoquetteTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn is_roquette(g: &FiniteGroup) -> bool {
    is_roquette_with(g, &subgroup_classes(g))
}

pub fn is_roquette_with(g: &FiniteGroup, table: &SubgroupClassTable) -> bool {
    table
        .normal_subgroups()
        .all(|n| !g.is_abelian_subgroup(n) || g.is_cyclic_subgroup(n))
}

pub fn roquette_iso_type(g: &FiniteGroup) -> Result<RoquetteTag, GroupError> {
    roquette_iso_type_with(g, &subgroup_classes(g))
}

/// Cyclic iff abelian; otherwise the number of involutions separates the
/// quaternion, dihedral and semidihedral 2-groups.
pub fn roquette_iso_type_with(
    g: &FiniteGroup,
    table: &SubgroupClassTable,
) -> Result<RoquetteTag, GroupError> {
    if !is_roquette_with(g, table) {
        return Err(GroupError::NotRoquette);
    }
    let n = g.order() as u32;
    if g.is_abelian() {
        return Ok(RoquetteTag::cyclic(n));
    }
    if g.p() != 2 {
        return Err(GroupError::NotRoquette);
    }
    let t = g.elements().filter(|&x| g.element_order(x) == 2).count() as u32;
    let family = if t == 1 {
        RoquetteFamily::Q
    } else if t == n / 2 + 1 {
        RoquetteFamily::D
    } else if t == n / 4 + 1 {
        RoquetteFamily::SD
    } else {
        return Err(GroupError::NotRoquette);
    };
    RoquetteTag::new(family, n).ok_or(GroupError::NotRoquette)
}
