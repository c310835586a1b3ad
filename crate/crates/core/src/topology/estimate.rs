use std::fmt;

use serde::{Deserialize, Serialize};

/// Where a bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    Certificate,
    EulerBound,
    BlockAdditivity,
    ExhaustiveSearch,
    SubgraphBound,
    PlanarityTest,
    CycleRank,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Formula => "formula",
            Provenance::Certificate => "certificate",
            Provenance::EulerBound => "euler-bound",
            Provenance::BlockAdditivity => "block-additivity",
            Provenance::ExhaustiveSearch => "exhaustive-search",
            Provenance::SubgraphBound => "subgraph-bound",
            Provenance::PlanarityTest => "planarity-test",
            Provenance::CycleRank => "cycle-rank",
        };
        f.write_str(s)
    }
}

/// A genus or crosscap known exactly or up to an interval, with the
/// source of each end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenusEstimate {
    pub lower: usize,
    pub upper: usize,
    pub lower_by: Provenance,
    pub upper_by: Provenance,
}

impl GenusEstimate {
    pub fn exact(value: usize, by: Provenance) -> Self {
        Self { lower: value, upper: value, lower_by: by, upper_by: by }
    }

    pub fn bounds(lower: usize, lower_by: Provenance, upper: usize, upper_by: Provenance) -> Self {
        assert!(lower <= upper, "empty interval [{lower}, {upper}]");
        Self { lower, upper, lower_by, upper_by }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }

    /// Raises the lower end to `v` if that is an improvement.
    pub fn raise_lower(&mut self, v: usize, by: Provenance) {
        if v > self.lower {
            assert!(v <= self.upper, "lower bound {v} ({by}) exceeds upper bound {} ({})", self.upper, self.upper_by);
            self.lower = v;
            self.lower_by = by;
        }
    }

    /// Lowers the upper end to `v` if that is an improvement.
    pub fn lower_upper(&mut self, v: usize, by: Provenance) {
        if v < self.upper {
            assert!(v >= self.lower, "upper bound {v} ({by}) below lower bound {} ({})", self.lower, self.lower_by);
            self.upper = v;
            self.upper_by = by;
        }
    }
}

impl fmt::Display for GenusEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lower_by == self.upper_by && self.is_exact() {
            write!(f, "{} ({})", self.lower, self.lower_by)
        } else if self.is_exact() {
            write!(f, "{} ({} + {})", self.lower, self.lower_by, self.upper_by)
        } else {
            write!(f, "[{}, {}] ({} / {})", self.lower, self.upper, self.lower_by, self.upper_by)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tightening() {
        let mut e = GenusEstimate::bounds(1, Provenance::EulerBound, 5, Provenance::CycleRank);
        e.raise_lower(0, Provenance::SubgraphBound);
        assert_eq!(e.lower_by, Provenance::EulerBound);
        e.lower_upper(2, Provenance::Certificate);
        e.raise_lower(2, Provenance::SubgraphBound);
        assert_eq!(e.value(), Some(2));
        assert_eq!(e.to_string(), "2 (subgraph-bound + certificate)");
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"lower":2,"upper":2,"lowerBy":"subgraph-bound","upperBy":"certificate"}"#);
    }

    #[test]
    #[should_panic]
    fn crossing_bounds_panic() {
        let mut e = GenusEstimate::bounds(1, Provenance::EulerBound, 2, Provenance::CycleRank);
        e.raise_lower(3, Provenance::SubgraphBound);
    }
}
