use super::{Elem, FiniteGroup, GroupError, Subgroup};

/// The coset group `G/H` together with the projection `G -> G/H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGroup {
    group: FiniteGroup,
    coset_of: Vec<usize>,
    representatives: Vec<Elem>,
}

impl QuotientGroup {
    /// The coset group itself.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Index of the coset `aH`.
    pub fn coset_of(&self, a: Elem) -> usize {
        self.coset_of[a]
    }

    /// Lowest-index element of every coset, by coset index.
    pub fn representatives(&self) -> &[Elem] {
        &self.representatives
    }

    /// Index of the coset `H` itself.
    pub fn identity_coset(&self) -> usize {
        self.group.identity()
    }

    /// Members of the coset with the given index, in element order.
    pub fn coset_members(&self, coset: usize) -> Vec<Elem> {
        (0..self.coset_of.len()).filter(|&a| self.coset_of[a] == coset).collect()
    }
}

impl FiniteGroup {
    /// Forms `G/H`. Cosets are numbered in order of their lowest element.
    pub fn quotient(&self, h: &Subgroup) -> Result<QuotientGroup, GroupError> {
        if !h.is_normal() {
            return Err(GroupError::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for a in self.elements() {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let idx = representatives.len();
            representatives.push(a);
            for &x in h.members() {
                coset_of[self.mul(a, x)] = idx;
            }
        }
        let k = representatives.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &representatives {
            for &b in &representatives {
                table.push(coset_of[self.mul(a, b)]);
            }
        }
        let group = FiniteGroup::from_trusted_table(table, k, format!("{}/H{}", self.name(), h.order()));
        Ok(QuotientGroup { group, coset_of, representatives })
    }
}
