//! Predicted genus and crosscap classes of `Γ_H(G)` from `|H|` and the
//! isomorphism class of `G/H`, and the sweep that checks them.

mod preliminaries;
mod sweep;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{iso_label, FiniteGroup};
use crate::topology::GenusEstimate;

pub use preliminaries::{verify_preliminaries, PreliminaryCheck, PreliminaryReport};
pub use sweep::{
    classify_pair, mutation_survivors, sweep, ClassificationRecord, ClassifyError, ClauseCoverage, Mismatch,
    SweepOptions, SweepSummary,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenusClass {
    #[serde(rename = "planar")]
    Planar,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "atLeast3")]
    AtLeast3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrosscapClass {
    #[serde(rename = "planar")]
    Planar,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "atLeast4")]
    AtLeast4,
}

impl GenusClass {
    /// Every value the interval could still take lies in this class.
    pub fn consistent_with(self, e: &GenusEstimate) -> bool {
        match self {
            GenusClass::Planar => e.upper == 0,
            GenusClass::One => e.lower == 1 && e.upper == 1,
            GenusClass::Two => e.lower == 2 && e.upper == 2,
            GenusClass::AtLeast3 => e.lower >= 3,
        }
    }
}

impl CrosscapClass {
    pub fn consistent_with(self, e: &GenusEstimate) -> bool {
        match self {
            CrosscapClass::Planar => e.upper == 0,
            CrosscapClass::One => e.lower == 1 && e.upper == 1,
            CrosscapClass::Three => e.lower == 3 && e.upper == 3,
            CrosscapClass::AtLeast4 => e.lower >= 4,
        }
    }
}

impl fmt::Display for GenusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenusClass::Planar => "planar",
            GenusClass::One => "1",
            GenusClass::Two => "2",
            GenusClass::AtLeast3 => "atLeast3",
        })
    }
}

impl fmt::Display for CrosscapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrosscapClass::Planar => "planar",
            CrosscapClass::One => "1",
            CrosscapClass::Three => "3",
            CrosscapClass::AtLeast4 => "atLeast4",
        })
    }
}

/// The isomorphism invariants of `G/H` that the clauses look at.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientProfile {
    pub label: String,
    pub elementary_abelian_2: bool,
    /// A 2-group of exponent 4 with exactly two cyclic subgroups of order 4.
    pub exponent_4_two_cyclic_4: bool,
}

impl QuotientProfile {
    pub fn of(q: &FiniteGroup) -> Self {
        Self {
            label: iso_label(q),
            elementary_abelian_2: q.is_elementary_abelian_2(),
            exponent_4_two_cyclic_4: q.prime_power_base() == Some(2)
                && q.exponent() == 4
                && q.count_cyclic_subgroups(4) == 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientPattern {
    /// Matches the [`iso_label`] of the quotient.
    Iso(&'static str),
    ElementaryAbelian2,
    Exponent4TwoCyclic4,
}

impl QuotientPattern {
    pub fn matches(&self, q: &QuotientProfile) -> bool {
        match self {
            QuotientPattern::Iso(label) => q.label == *label,
            QuotientPattern::ElementaryAbelian2 => q.elementary_abelian_2,
            QuotientPattern::Exponent4TwoCyclic4 => q.exponent_4_two_cyclic_4,
        }
    }
}

impl fmt::Display for QuotientPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientPattern::Iso(label) => f.write_str(label),
            QuotientPattern::ElementaryAbelian2 => f.write_str("Z2^k"),
            QuotientPattern::Exponent4TwoCyclic4 => f.write_str("2-group, exp 4, s_4 = 2"),
        }
    }
}

/// `|H|` in `h_orders` and `G/H` matching one of `quotients`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause<C> {
    pub id: &'static str,
    pub class: C,
    pub h_orders: Vec<usize>,
    pub quotients: Vec<QuotientPattern>,
}

impl<C> Clause<C> {
    fn new(id: &'static str, class: C, h_orders: &[usize], quotients: &[QuotientPattern]) -> Self {
        Self { id, class, h_orders: h_orders.to_vec(), quotients: quotients.to_vec() }
    }

    pub fn matches(&self, h_order: usize, q: &QuotientProfile) -> bool {
        self.h_orders.contains(&h_order) && self.quotients.iter().any(|p| p.matches(q))
    }
}

pub const GENUS_FALLBACK: &str = "genus-atLeast3";
pub const CROSSCAP_FALLBACK: &str = "crosscap-atLeast4";

/// Both clause lists. The first matching clause wins; no match gives the
/// open-ended class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predictor {
    pub genus: Vec<Clause<GenusClass>>,
    pub crosscap: Vec<Clause<CrosscapClass>>,
}

impl Default for Predictor {
    fn default() -> Self {
        Self::standard()
    }
}

/// One way of weakening a [`Predictor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mutation {
    DropClause(&'static str),
    DropHOrder(&'static str, usize),
    DropQuotient(&'static str, usize),
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::DropClause(id) => write!(f, "drop {id}"),
            Mutation::DropHOrder(id, h) => write!(f, "drop |H| = {h} from {id}"),
            Mutation::DropQuotient(id, i) => write!(f, "drop quotient alternative {i} from {id}"),
        }
    }
}

impl Predictor {
    pub fn standard() -> Self {
        use QuotientPattern::*;
        let planar = [ElementaryAbelian2];
        let z2 = [Iso("Z2")];
        let z3_s3 = [Iso("Z3"), Iso("S3")];
        Self {
            genus: vec![
                Clause::new("genus-planar", GenusClass::Planar, &[2, 3], &planar),
                Clause::new("genus-1a", GenusClass::One, &[4, 5, 6], &z2),
                Clause::new("genus-1b", GenusClass::One, &[3], &z3_s3),
                Clause::new("genus-1c", GenusClass::One, &[2], &[Iso("Z3"), Iso("S3"), Iso("D8"), Iso("Z4")]),
                Clause::new("genus-2a", GenusClass::Two, &[7], &z2),
                Clause::new("genus-2b", GenusClass::Two, &[2], &[Exponent4TwoCyclic4]),
            ],
            crosscap: vec![
                Clause::new("crosscap-planar", CrosscapClass::Planar, &[2, 3], &planar),
                Clause::new("crosscap-1a", CrosscapClass::One, &[4, 5], &z2),
                Clause::new("crosscap-1b", CrosscapClass::One, &[2], &z3_s3),
                Clause::new("crosscap-3a", CrosscapClass::Three, &[6], &z2),
                Clause::new("crosscap-3b", CrosscapClass::Three, &[4, 5], &[Iso("Z2^2")]),
                Clause::new("crosscap-3c", CrosscapClass::Three, &[3], &z3_s3),
                Clause::new("crosscap-3d", CrosscapClass::Three, &[2], &[Iso("Z4"), Iso("D8")]),
            ],
        }
    }

    pub fn predict_genus(&self, h_order: usize, q: &QuotientProfile) -> (GenusClass, &'static str) {
        self.genus
            .iter()
            .find(|c| c.matches(h_order, q))
            .map_or((GenusClass::AtLeast3, GENUS_FALLBACK), |c| (c.class, c.id))
    }

    pub fn predict_crosscap(&self, h_order: usize, q: &QuotientProfile) -> (CrosscapClass, &'static str) {
        self.crosscap
            .iter()
            .find(|c| c.matches(h_order, q))
            .map_or((CrosscapClass::AtLeast4, CROSSCAP_FALLBACK), |c| (c.class, c.id))
    }

    pub fn predict(&self, h_order: usize, q: &QuotientProfile) -> TheoremPrediction {
        let (genus_class, g) = self.predict_genus(h_order, q);
        let (crosscap_class, c) = self.predict_crosscap(h_order, q);
        TheoremPrediction { genus_class, crosscap_class, matched_clause: format!("{g}/{c}") }
    }

    /// Every single-clause and single-alternative deletion.
    pub fn mutations(&self) -> Vec<Mutation> {
        let mut out = Vec::new();
        let mut add = |id: &'static str, hs: &[usize], qs: usize| {
            out.push(Mutation::DropClause(id));
            if hs.len() > 1 {
                out.extend(hs.iter().map(|&h| Mutation::DropHOrder(id, h)));
            }
            if qs > 1 {
                out.extend((0..qs).map(|i| Mutation::DropQuotient(id, i)));
            }
        };
        for c in &self.genus {
            add(c.id, &c.h_orders, c.quotients.len());
        }
        for c in &self.crosscap {
            add(c.id, &c.h_orders, c.quotients.len());
        }
        out
    }

    pub fn mutated(&self, m: &Mutation) -> Self {
        fn apply<C>(clauses: &mut Vec<Clause<C>>, m: &Mutation) {
            match *m {
                Mutation::DropClause(id) => clauses.retain(|c| c.id != id),
                Mutation::DropHOrder(id, h) => {
                    for c in clauses.iter_mut().filter(|c| c.id == id) {
                        c.h_orders.retain(|&x| x != h);
                    }
                }
                Mutation::DropQuotient(id, i) => {
                    for c in clauses.iter_mut().filter(|c| c.id == id) {
                        c.quotients.remove(i);
                    }
                }
            }
        }
        let mut p = self.clone();
        apply(&mut p.genus, m);
        apply(&mut p.crosscap, m);
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremPrediction {
    pub genus_class: GenusClass,
    pub crosscap_class: CrosscapClass,
    pub matched_clause: String,
}

pub fn predict_genus_class(h_order: usize, quotient: &FiniteGroup) -> GenusClass {
    Predictor::standard().predict_genus(h_order, &QuotientProfile::of(quotient)).0
}

pub fn predict_crosscap_class(h_order: usize, quotient: &FiniteGroup) -> CrosscapClass {
    Predictor::standard().predict_crosscap(h_order, &QuotientProfile::of(quotient)).0
}

pub fn predict(h_order: usize, quotient: &FiniteGroup) -> TheoremPrediction {
    Predictor::standard().predict(h_order, &QuotientProfile::of(quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::NamedGroup::{self, *};
    use crate::topology::Provenance;
    use proptest::prelude::*;

    fn build(g: NamedGroup) -> FiniteGroup {
        g.build().unwrap()
    }

    #[test]
    fn worked_predictions() {
        assert_eq!(predict_genus_class(4, &build(Cyclic(2))), GenusClass::One);
        assert_eq!(predict_genus_class(7, &build(Cyclic(2))), GenusClass::Two);
        assert_eq!(predict_genus_class(2, &build(ElementaryAbelian(2, 2))), GenusClass::Planar);
        assert_eq!(predict_crosscap_class(6, &build(Cyclic(2))), CrosscapClass::Three);
        assert_eq!(predict_crosscap_class(2, &build(Symmetric(3))), CrosscapClass::One);
        assert_eq!(predict_crosscap_class(3, &build(Symmetric(3))), CrosscapClass::Three);
        let z4 = predict(2, &build(Cyclic(4)));
        assert_eq!(z4.matched_clause, "genus-1c/crosscap-3d");
        assert_eq!(predict_genus_class(2, &build(Cyclic(6))), GenusClass::AtLeast3);
    }

    #[test]
    fn exponent_four_clause() {
        let z4z2 = build(NamedGroup::direct(Cyclic(4), Cyclic(2)));
        assert_eq!(predict_genus_class(2, &z4z2), GenusClass::Two);
        assert_eq!(predict_crosscap_class(2, &z4z2), CrosscapClass::AtLeast4);
        // three cyclic subgroups of order 4
        assert_eq!(predict_genus_class(2, &build(GeneralizedQuaternion(8))), GenusClass::AtLeast3);
        // exponent 8
        assert_eq!(predict_genus_class(2, &build(Cyclic(8))), GenusClass::AtLeast3);
        // D8 has exactly one cyclic subgroup of order 4 and is caught earlier
        assert_eq!(predict(2, &build(Dihedral(8))).matched_clause, "genus-1c/crosscap-3d");
    }

    #[test]
    fn crosscap_two_is_never_predicted() {
        let p = Predictor::standard();
        assert!(p.crosscap.iter().all(|c| matches!(
            c.class,
            CrosscapClass::Planar | CrosscapClass::One | CrosscapClass::Three
        )));
    }

    #[test]
    fn consistency_rules() {
        let exact = |v| GenusEstimate::exact(v, Provenance::Formula);
        let range = |l, u| GenusEstimate::bounds(l, Provenance::EulerBound, u, Provenance::CycleRank);
        assert!(GenusClass::Two.consistent_with(&exact(2)));
        assert!(!GenusClass::Two.consistent_with(&range(2, 3)));
        assert!(GenusClass::AtLeast3.consistent_with(&range(3, 9)));
        assert!(!GenusClass::AtLeast3.consistent_with(&range(2, 9)));
        assert!(CrosscapClass::AtLeast4.consistent_with(&range(4, 5)));
        assert!(!CrosscapClass::Three.consistent_with(&range(3, 4)));
        assert!(CrosscapClass::Planar.consistent_with(&exact(0)));
    }

    #[test]
    fn mutations_weaken() {
        let p = Predictor::standard();
        let muts = p.mutations();
        assert!(muts.contains(&Mutation::DropQuotient("genus-1c", 2)));
        let weak = p.mutated(&Mutation::DropQuotient("genus-1c", 2));
        let d8 = QuotientProfile::of(&build(Dihedral(8)));
        assert_eq!(weak.predict_genus(2, &d8).0, GenusClass::AtLeast3);
        assert_eq!(p.predict_genus(2, &d8).0, GenusClass::One);
        assert_eq!(p.mutated(&Mutation::DropClause("genus-1c")).genus.len(), p.genus.len() - 1);
    }

    fn named_quotients() -> Vec<FiniteGroup> {
        [
            Cyclic(2),
            Cyclic(3),
            Cyclic(4),
            ElementaryAbelian(2, 2),
            Symmetric(3),
            Dihedral(8),
            GeneralizedQuaternion(8),
            NamedGroup::direct(Cyclic(4), Cyclic(2)),
            ElementaryAbelian(2, 3),
            Cyclic(6),
        ]
        .into_iter()
        .map(build)
        .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn relabelling_the_quotient_keeps_the_prediction(
            which in 0usize..10,
            h in 2usize..9,
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let q = &named_quotients()[which];
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..q.order()).collect();
            perm.shuffle(&mut rng);
            let r = q.relabeled(&perm);
            prop_assert_eq!(predict(h, q), predict(h, &r));
        }
    }
}
