//! Finite groups stored as explicit Cayley tables.
//!
//! Elements are plain indices `0..order`. Every group carries its full
//! multiplication table, the index of its identity and a table of inverses,
//! which is all the machinery above this module needs.

mod iso;
mod named;
mod quotient;
mod subgroup;

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

pub use iso::{is_isomorphic, iso_label};
pub use named::NamedGroup;
pub use quotient::QuotientGroup;
pub use subgroup::Subgroup;

/// Element of a [`FiniteGroup`], as an index into its Cayley table.
pub type Elem = usize;

/// Default cap on the size of a permutation-group closure.
pub const DEFAULT_CLOSURE_CAP: usize = 2048;

/// Default cap on the order of groups whose subgroup lattice is enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("Cayley table is empty")]
    Empty,
    #[error("Cayley table row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry {row}*{col} = {value} is out of range 0..{order}")]
    NotClosed { row: usize, col: usize, value: usize, order: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("associativity fails for ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotPermutation { index: usize, degree: usize },
    #[error("generated group exceeds the closure cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("group of order {order} exceeds the cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {order} is not a p-group for p = {p}")]
    NotPGroup { order: usize, p: usize },
    #[error("element {element} is out of range for a group of order {order}")]
    BadElement { element: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverses: Vec<Elem>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking every group
    /// axiom (associativity is an O(n^3) scan).
    pub fn from_cayley_table(table: Vec<Vec<usize>>, name: impl Into<String>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::NotSquare { row, len: entries.len(), expected: n });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::NotClosed { row, col, value, order: n });
                }
                flat.push(value);
            }
        }
        let at = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or(GroupError::NoInverse { element: g })?;
            inverses.push(inv);
        }
        Ok(Self { name: name.into(), order: n, table: flat, identity, inverses })
    }

    /// Closes a set of permutations of `0..degree` under composition.
    ///
    /// Element 0 of the result is the identity permutation; the rest follow
    /// in breadth-first order over right multiplication by the generators.
    /// The product `a*b` applies `a` first, then `b`.
    pub fn from_generators(degree: usize, generators: &[Vec<usize>], name: impl Into<String>) -> Result<Self, GroupError> {
        Self::from_generators_capped(degree, generators, name, DEFAULT_CLOSURE_CAP)
    }

    pub fn from_generators_capped(
        degree: usize,
        generators: &[Vec<usize>],
        name: impl Into<String>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::InvalidParameter("permutation degree must be positive".into()));
        }
        for (index, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&x| x < degree && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(GroupError::NotPermutation { index, degree });
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y: Vec<usize> = elements[x].iter().map(|&i| g[i]).collect();
                if !index.contains_key(&y) {
                    if elements.len() == cap {
                        return Err(GroupError::ClosureTooLarge { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        let mut buf = vec![0; degree];
        for a in &elements {
            for b in &elements {
                for (slot, &i) in buf.iter_mut().zip(a.iter()) {
                    *slot = b[i];
                }
                table.push(index[&buf]);
            }
        }
        Ok(Self::from_trusted_table(table, n, name.into()))
    }

    /// Wraps a table already known to satisfy the group axioms (closures of
    /// permutations, quotients, direct products).
    pub(crate) fn from_trusted_table(table: Vec<Elem>, order: usize, name: String) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x))
            .expect("trusted table has an identity");
        let inverses = (0..order)
            .map(|g| (0..order).find(|&h| table[g * order + h] == identity).expect("trusted table has inverses"))
            .collect();
        Self { name, order, table, identity, inverses }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    /// Rows of the Cayley table.
    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(<[Elem]>::to_vec).collect()
    }

    pub fn check_element(&self, g: Elem) -> Result<(), GroupError> {
        if g < self.order {
            Ok(())
        } else {
            Err(GroupError::BadElement { element: g, order: self.order })
        }
    }

    pub fn pow(&self, g: Elem, k: usize) -> Elem {
        let (mut acc, mut base, mut k) = (self.identity, g, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The order o(g): least k >= 1 with g^k = e.
    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Element orders as a map `order -> number of elements of that order`.
    /// Its key set is the order set of the group.
    pub fn order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut spectrum = BTreeMap::new();
        for g in self.elements() {
            *spectrum.entry(self.element_order(g)).or_insert(0) += 1;
        }
        spectrum
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.order_spectrum().keys().fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|g| self.element_order(g) == self.order)
    }

    /// `Some(p)` when the order is a power `p^k` with `k >= 1`.
    pub fn prime_power_base(&self) -> Option<usize> {
        prime_power_base(self.order)
    }

    /// Elementary abelian 2-group (of order at least 2).
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.order >= 2 && self.order.is_power_of_two() && self.elements().all(|g| self.mul(g, g) == self.identity)
    }

    /// Cyclic group whose order is a prime power.
    pub fn is_cyclic_p_group(&self) -> bool {
        self.prime_power_base().is_some() && self.is_cyclic()
    }

    /// Number of distinct cyclic subgroups of order `d`, i.e. the number of
    /// elements of order `d` divided by Euler's phi of `d`.
    pub fn count_cyclic_subgroups(&self, d: usize) -> usize {
        if d == 0 {
            return 0;
        }
        let count = self.elements().filter(|&g| self.element_order(g) == d).count();
        count / euler_phi(d)
    }

    /// Elements commuting with every element.
    pub fn center(&self) -> Subgroup {
        let members = self
            .elements()
            .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::new_unchecked(members, true)
    }

    /// `[a, b] = a^-1 b^-1 a b`
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Lower central series `G^0 = G, G^{i+1} = [G^i, G]` down to its
    /// stable term, as a list of member sets.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![Subgroup::whole(self)];
        loop {
            let last = series.last().expect("series is never empty");
            let commutators: Vec<Elem> = last
                .members()
                .iter()
                .flat_map(|&h| self.elements().map(move |g| (h, g)))
                .map(|(h, g)| self.commutator(h, g))
                .collect();
            let next = self.subgroup_generated(&commutators);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotency class: least c with `G^c` trivial (0 for the trivial
    /// group); `None` when the series stalls above the trivial subgroup.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        (series.last()?.order() == 1).then(|| series.len() - 1)
    }

    /// Maximal class for a 2-group of order `2^n`, `n >= 2`: nilpotency class
    /// exactly `n - 1` (`G^{n-2} != 1` and `G^{n-1} = 1`).
    pub fn is_maximal_class(&self) -> Result<bool, GroupError> {
        if !self.order.is_power_of_two() || self.order < 2 {
            return Err(GroupError::NotPGroup { order: self.order, p: 2 });
        }
        let n = self.order.trailing_zeros() as usize;
        if n < 2 {
            return Ok(false);
        }
        Ok(self.nilpotency_class() == Some(n - 1))
    }

    /// Direct product with componentwise multiplication; element `(a, b)`
    /// has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (a1, b1) = (x / n2, x % n2);
            for y in 0..n {
                let (a2, b2) = (y / n2, y % n2);
                table.push(self.mul(a1, a2) * n2 + other.mul(b1, b2));
            }
        }
        FiniteGroup::from_trusted_table(table, n, format!("{}x{}", self.name, other.name))
    }

    /// Relabels the elements through the bijection `perm` (old index ->
    /// new index), producing an isomorphic copy.
    pub fn relabeled(&self, perm: &[Elem]) -> FiniteGroup {
        let n = self.order;
        assert_eq!(perm.len(), n, "relabeling must cover every element");
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        FiniteGroup::from_trusted_table(table, n, self.name.clone())
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub(crate) fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn prime_power_base(n: usize) -> Option<usize> {
    match prime_factors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}
