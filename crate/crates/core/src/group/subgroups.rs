//! Subgroup classes, quotients and subgroups as stand-alone groups.

use std::collections::HashMap;

use super::{ElemSet, FiniteGroup, GroupError};

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// The conjugate with the lexicographically smallest element list.
    pub rep: ElemSet,
    /// All conjugates, in lexicographic order.
    pub orbit: Vec<ElemSet>,
    pub normalizer: ElemSet,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.rep.len()
    }

    pub fn is_normal(&self) -> bool {
        self.orbit.len() == 1
    }
}

/// All conjugacy classes of subgroups, by order and then by representative.
#[derive(Clone, Debug)]
pub struct SubgroupClassTable {
    pub classes: Vec<SubgroupClass>,
    index: HashMap<ElemSet, usize>,
}

impl SubgroupClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class of an arbitrary subgroup.
    pub fn class_of(&self, s: ElemSet) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn reps(&self) -> impl Iterator<Item = ElemSet> + '_ {
        self.classes.iter().map(|c| c.rep)
    }

    /// Normal subgroups in class order.
    pub fn normal_subgroups(&self) -> impl Iterator<Item = ElemSet> + '_ {
        self.classes.iter().filter(|c| c.is_normal()).map(|c| c.rep)
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.orbit.len()).sum()
    }

    /// Indices of the classes of cyclic subgroups.
    pub fn cyclic_classes(&self, g: &FiniteGroup) -> Vec<usize> {
        (0..self.len()).filter(|&i| g.is_cyclic_subgroup(self.classes[i].rep)).collect()
    }
}

fn orbit_of(g: &FiniteGroup, s: ElemSet) -> Vec<ElemSet> {
    let mut orbit: Vec<ElemSet> = g.elements().map(|x| g.conj_set(x, s)).collect();
    orbit.sort_by_key(|m| m.lex_key());
    orbit.dedup();
    orbit
}

/// Enumerates subgroups up to conjugacy by extending class representatives
/// `H` with elements `t` of `N(H) \ H` satisfying `t^p ∈ H`.
pub fn subgroup_classes(g: &FiniteGroup) -> SubgroupClassTable {
    let p = g.p() as i64;
    let mut found: Vec<(ElemSet, Vec<ElemSet>, ElemSet)> = Vec::new();
    let mut index: HashMap<ElemSet, usize> = HashMap::new();
    let trivial = ElemSet::singleton(0);
    found.push((trivial, vec![trivial], g.all()));
    index.insert(trivial, 0);
    let mut next = 0;
    while next < found.len() {
        let (h, _, norm) = found[next].clone();
        next += 1;
        for t in norm.minus(h).iter() {
            if !h.contains(g.pow(t, p)) {
                continue;
            }
            // H<t> = H ∪ Ht ∪ ... ∪ Ht^{p-1}
            let mut k = h;
            let mut coset = h;
            for _ in 1..p {
                coset = coset.iter().map(|x| g.mul(x, t)).collect();
                k = k.union(coset);
            }
            if index.contains_key(&k) {
                continue;
            }
            let orbit = orbit_of(g, k);
            let id = found.len();
            for &c in &orbit {
                index.insert(c, id);
            }
            let rep = orbit[0];
            found.push((rep, orbit, g.normalizer(rep)));
        }
    }
    found.sort_by_key(|(rep, _, _)| (rep.len(), rep.lex_key()));
    let mut index = HashMap::new();
    let classes: Vec<SubgroupClass> = found
        .into_iter()
        .enumerate()
        .map(|(i, (rep, orbit, normalizer))| {
            for &c in &orbit {
                index.insert(c, i);
            }
            SubgroupClass { rep, orbit, normalizer }
        })
        .collect();
    SubgroupClassTable { classes, index }
}

/// A subgroup re-presented as a group on ids `0..|H|`, numbered in
/// increasing order of the parent ids.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub group: FiniteGroup,
    pub set: ElemSet,
    pub to_parent: Vec<usize>,
    from_parent: HashMap<usize, usize>,
}

impl Embedding {
    pub fn new(g: &FiniteGroup, h: ElemSet) -> Result<Embedding, GroupError> {
        if !g.is_subgroup(h) {
            return Err(GroupError::NotASubgroup);
        }
        let to_parent = h.to_vec();
        let from_parent: HashMap<usize, usize> =
            to_parent.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let labels = g.labels().map(|l| to_parent.iter().map(|&x| l[x].clone()).collect());
        let group = FiniteGroup::from_fn(
            to_parent.len(),
            g.p(),
            |a, b| from_parent[&g.mul(to_parent[a], to_parent[b])],
            labels,
        );
        Ok(Embedding { group, set: h, to_parent, from_parent })
    }

    /// The local id of a parent element of the subgroup.
    pub fn local(&self, x: usize) -> Option<usize> {
        self.from_parent.get(&x).copied()
    }

    /// Maps a set of local ids to parent ids.
    pub fn lift_set(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.to_parent[x]).collect()
    }

    /// Maps a set of parent ids inside the subgroup to local ids.
    pub fn local_set(&self, s: ElemSet) -> ElemSet {
        s.iter().filter_map(|x| self.local(x)).collect()
    }
}

/// `G/N` with cosets numbered by their smallest element.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `proj[g]` is the coset id of `g`.
    pub proj: Vec<usize>,
    /// Smallest element of each coset.
    pub reps: Vec<usize>,
}

pub fn quotient(g: &FiniteGroup, n: ElemSet) -> Result<Quotient, GroupError> {
    if !g.is_subgroup(n) {
        return Err(GroupError::NotASubgroup);
    }
    if !g.is_normal(n) {
        return Err(GroupError::NotNormal);
    }
    let mut proj = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if proj[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for y in n.iter() {
            proj[g.mul(x, y)] = id;
        }
    }
    let labels = g.labels().map(|l| reps.iter().map(|&r| l[r].clone()).collect());
    let group = FiniteGroup::from_fn(
        reps.len(),
        g.p(),
        |a, b| proj[g.mul(reps[a], reps[b])],
        labels,
    );
    Ok(Quotient { group, proj, reps })
}

#[cfg(test)]
mod tests {
    use super::super::{make_named, Family};
    use super::*;

    /// All subgroups by closing every subset of at most two generators and
    /// taking joins until nothing new appears.
    fn brute_force_subgroups(g: &FiniteGroup) -> Vec<ElemSet> {
        let mut subs: std::collections::BTreeSet<u128> = std::collections::BTreeSet::new();
        for a in g.elements() {
            for b in g.elements() {
                subs.insert(g.generate([a, b].into_iter().collect()).0);
            }
        }
        loop {
            let list: Vec<u128> = subs.iter().copied().collect();
            let before = subs.len();
            for &x in &list {
                for &y in &list {
                    subs.insert(g.generate(ElemSet(x | y)).0);
                }
            }
            if subs.len() == before {
                break;
            }
        }
        subs.into_iter().map(ElemSet).collect()
    }

    /// Every subset closed under multiplication, for tiny groups.
    fn closed_subsets(g: &FiniteGroup) -> Vec<ElemSet> {
        let n = g.order();
        assert!(n <= 16);
        (0u32..1 << (n - 1))
            .map(|bits| ElemSet(((bits as u128) << 1) | 1))
            .filter(|&s| g.is_subgroup(s))
            .collect()
    }

    fn class_count_brute(g: &FiniteGroup, subs: &[ElemSet]) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut count = 0;
        for &s in subs {
            if seen.contains(&s) {
                continue;
            }
            count += 1;
            for x in g.elements() {
                seen.insert(g.conj_set(x, s));
            }
        }
        count
    }

    #[test]
    fn class_counts_match_brute_force() {
        for (f, n, expect) in [
            (Family::Q, 8, 6),
            (Family::D, 16, 11),
            (Family::C, 1, 1),
            (Family::D, 8, 8),
            (Family::SD, 16, 0),
            (Family::Mod, 16, 0),
            (Family::V, 16, 0),
            (Family::V, 8, 16),
            (Family::C, 9, 3),
        ] {
            let g = make_named(f, n).unwrap();
            let table = subgroup_classes(&g);
            let subs = closed_subsets(&g);
            assert_eq!(table.total_subgroups(), subs.len(), "{f}{n}");
            assert_eq!(table.len(), class_count_brute(&g, &subs), "{f}{n}");
            if expect > 0 {
                assert_eq!(table.len(), expect, "{f}{n}");
            }
            for &s in &subs {
                assert!(table.class_of(s).is_some());
            }
        }
    }

    #[test]
    fn larger_groups_match_join_closure() {
        for (f, n) in [(Family::DD, 32), (Family::Q, 32), (Family::Mod, 27)] {
            let g = make_named(f, n).unwrap();
            let table = subgroup_classes(&g);
            let subs = brute_force_subgroups(&g);
            assert_eq!(table.total_subgroups(), subs.len(), "{f}{n}");
        }
    }

    #[test]
    fn ordering_and_normalizers() {
        let g = make_named(Family::D, 8).unwrap();
        let t = subgroup_classes(&g);
        let reps: Vec<Vec<usize>> = t.reps().map(|r| r.to_vec()).collect();
        assert_eq!(
            reps,
            vec![
                vec![0],
                vec![0, 2],
                vec![0, 4],
                vec![0, 5],
                vec![0, 1, 2, 3],
                vec![0, 2, 4, 6],
                vec![0, 2, 5, 7],
                (0..8).collect::<Vec<_>>(),
            ]
        );
        for c in &t.classes {
            assert_eq!(c.normalizer, g.normalizer(c.rep));
            assert_eq!(g.order() % c.order(), 0);
            assert_eq!(c.orbit.len() * c.normalizer.len(), g.order());
        }
    }

    #[test]
    fn centralizer_and_derived() {
        let d8 = make_named(Family::D, 8).unwrap();
        let a: ElemSet = [0, 1, 2, 3].into_iter().collect();
        assert_eq!(d8.centralizer(a), a);
        assert_eq!(d8.centralizer(ElemSet::singleton(0)), d8.all());
        let q8 = make_named(Family::Q, 8).unwrap();
        assert_eq!(q8.derived_subgroup().to_vec(), vec![0, 2]);
    }

    fn is_iso_to_v4(g: &FiniteGroup) -> bool {
        g.order() == 4 && g.exponent() == 2
    }

    #[test]
    fn quotients() {
        let d8 = make_named(Family::D, 8).unwrap();
        let q = quotient(&d8, d8.center()).unwrap();
        assert!(is_iso_to_v4(&q.group));
        // V4 from the constructor has the same table under this numbering
        assert_eq!(q.group.table(), make_named(Family::V, 4).unwrap().table());
        for a in d8.elements() {
            for b in d8.elements() {
                assert_eq!(q.proj[d8.mul(a, b)], q.group.mul(q.proj[a], q.proj[b]));
            }
        }
        let q8 = make_named(Family::Q, 8).unwrap();
        let q = quotient(&q8, [0, 2].into_iter().collect()).unwrap();
        assert!(is_iso_to_v4(&q.group));
        let top = quotient(&q8, q8.all()).unwrap();
        assert_eq!(top.group.order(), 1);
        let b: ElemSet = [0, 4].into_iter().collect();
        assert_eq!(quotient(&d8, b).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn embedding_round_trip() {
        let g = make_named(Family::DD, 32).unwrap();
        let t: ElemSet = g.generate([2, 8, 16].into_iter().collect());
        let e = Embedding::new(&g, t).unwrap();
        assert_eq!(e.group.order(), t.len());
        for a in 0..e.group.order() {
            for b in 0..e.group.order() {
                assert_eq!(e.to_parent[e.group.mul(a, b)], g.mul(e.to_parent[a], e.to_parent[b]));
            }
        }
        assert_eq!(e.lift_set(e.local_set(t)), t);
    }
}
