use std::collections::{BTreeSet, HashSet};

use super::{Elem, FiniteGroup, GroupError, DEFAULT_SUBGROUP_CAP};

/// A subgroup of some parent [`FiniteGroup`], stored as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<Elem>,
    normal: bool,
}

impl Subgroup {
    pub(crate) fn new_unchecked(mut members: Vec<Elem>, normal: bool) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members, normal }
    }

    pub(crate) fn whole(g: &FiniteGroup) -> Self {
        Self { members: g.elements().collect(), normal: true }
    }

    /// Validates `members` as a subgroup of `g` and computes its normal flag.
    pub fn new(g: &FiniteGroup, members: impl IntoIterator<Item = Elem>) -> Result<Self, GroupError> {
        let set: BTreeSet<Elem> = members.into_iter().collect();
        for &x in &set {
            g.check_element(x)?;
        }
        if !set.contains(&g.identity()) {
            return Err(GroupError::NotSubgroup);
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) || set.iter().any(|&b| !set.contains(&g.mul(a, b))) {
                return Err(GroupError::NotSubgroup);
            }
        }
        let members: Vec<Elem> = set.into_iter().collect();
        let normal = is_normal_set(g, &members);
        Ok(Self { members, normal })
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn intersection(&self, other: &Subgroup, g: &FiniteGroup) -> Subgroup {
        let members: Vec<Elem> = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        let normal = is_normal_set(g, &members);
        Subgroup { members, normal }
    }
}

fn is_normal_set(g: &FiniteGroup, members: &[Elem]) -> bool {
    let mut mark = vec![false; g.order()];
    for &m in members {
        mark[m] = true;
    }
    g.elements()
        .all(|x| members.iter().all(|&h| mark[g.mul(g.mul(x, h), g.inv(x))]))
}

impl FiniteGroup {
    /// The subgroup generated by `gens` (breadth-first closure).
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let mut mark = vec![false; self.order()];
        mark[self.identity()] = true;
        let mut members = vec![self.identity()];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !mark[y] {
                    mark[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        let normal = is_normal_set(self, &members);
        Subgroup::new_unchecked(members, normal)
    }

    pub fn cyclic_subgroup(&self, g: Elem) -> Subgroup {
        self.subgroup_generated(&[g])
    }

    /// Every subgroup exactly once, sorted by (order, members).
    ///
    /// Starts from the cyclic subgroups and keeps adding joins of pairs until
    /// nothing new appears; every subgroup is the join of the cyclic
    /// subgroups it contains, so the fixed point is the full lattice.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>, GroupError> {
        self.all_subgroups_capped(DEFAULT_SUBGROUP_CAP)
    }

    pub fn all_subgroups_capped(&self, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
        let n = self.order();
        if n > cap || n > 64 {
            return Err(GroupError::TooLarge { order: n, cap: cap.min(64) });
        }
        let to_mask = |s: &Subgroup| s.members().iter().fold(0u64, |m, &x| m | (1 << x));
        let mut known: HashSet<u64> = HashSet::new();
        let mut lattice: Vec<u64> = Vec::new();
        for g in self.elements() {
            let mask = to_mask(&self.cyclic_subgroup(g));
            if known.insert(mask) {
                lattice.push(mask);
            }
        }
        let mut frontier_start = 0;
        while frontier_start < lattice.len() {
            let end = lattice.len();
            for i in 0..end {
                for j in frontier_start.max(i + 1)..end {
                    let (a, b) = (lattice[i], lattice[j]);
                    if a & b == a || a & b == b {
                        continue;
                    }
                    let gens: Vec<Elem> = (0..n).filter(|&x| (a | b) >> x & 1 == 1).collect();
                    let mask = to_mask(&self.subgroup_generated(&gens));
                    if known.insert(mask) {
                        lattice.push(mask);
                    }
                }
            }
            frontier_start = end;
        }
        let mut subgroups: Vec<Subgroup> = lattice
            .into_iter()
            .map(|mask| {
                let members: Vec<Elem> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
                let normal = is_normal_set(self, &members);
                Subgroup { members, normal }
            })
            .collect();
        subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        Ok(subgroups)
    }

    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>, GroupError> {
        Ok(self.all_subgroups()?.into_iter().filter(Subgroup::is_normal).collect())
    }

    /// Normal subgroups `H` with `1 < |H| < |G|`.
    pub fn proper_nontrivial_normal_subgroups(&self) -> Result<Vec<Subgroup>, GroupError> {
        let n = self.order();
        Ok(self
            .normal_subgroups()?
            .into_iter()
            .filter(|h| h.order() > 1 && h.order() < n)
            .collect())
    }
}
