use serde::Serialize;

use super::estimate::{GenusEstimate, Provenance};

/// Genus of a graph from the genera of its blocks: the sum, or the
/// interval sum when some block is only bounded.
pub fn genus_via_blocks(blocks: &[GenusEstimate]) -> GenusEstimate {
    let lower = blocks.iter().map(|b| b.lower).sum();
    let upper = blocks.iter().map(|b| b.upper).sum();
    GenusEstimate::bounds(lower, Provenance::BlockAdditivity, upper, Provenance::BlockAdditivity)
}

/// Crosscap of a graph from `(genus, crosscap)` of each block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrosscapComposition {
    /// The block formula applied mechanically: `1 - n + Σ γ̄(B_i)` when
    /// every block has `γ̄ = 2γ + 1`, else `2n - Σ μ(B_i)`. Only defined
    /// when every block is exact.
    pub raw: Option<usize>,
    /// `max γ̄(B_i)` (lower end), a lower bound since blocks are subgraphs.
    pub floor: usize,
    /// True when the floor exceeds the raw value.
    pub floor_applied: bool,
    pub estimate: GenusEstimate,
}

/// Crosscap over blocks.
///
/// The value uses the nonplanar blocks only: 0 if there are none;
/// `1 + 2 Σ γ(B_i)` if each of them has `γ̄ = 2γ + 1`, because any
/// nonorientable embedding must then pay one extra crosscap on top of the
/// orientable Euler genus; otherwise the Euler genus `Σ min(2γ, γ̄)`.
/// Planar blocks never need a crosscap, which is where the raw formula
/// goes wrong (it would count a `K_4` block as breaking `γ̄ = 2γ + 1`).
/// With bounded blocks the result is an interval built the same way.
pub fn crosscap_via_blocks(blocks: &[(GenusEstimate, GenusEstimate)]) -> CrosscapComposition {
    let floor = blocks.iter().map(|(_, c)| c.lower).max().unwrap_or(0);
    let all_exact = blocks.iter().all(|(g, c)| g.is_exact() && c.is_exact());

    let raw = all_exact.then(|| {
        let n = blocks.len();
        if blocks.iter().all(|(g, c)| c.lower == 2 * g.lower + 1) {
            1 + blocks.iter().map(|(_, c)| c.lower).sum::<usize>() - n
        } else {
            blocks.iter().map(|(g, c)| (2 * g.lower).min(c.lower)).sum()
        }
    });

    // interval: lower from Euler genus additivity and the subgraph floor
    let euler_lower: usize = blocks.iter().map(|(g, c)| (2 * g.lower).min(c.lower)).sum();
    let mut lower = euler_lower.max(floor);
    let lower_by = if floor > euler_lower { Provenance::SubgraphBound } else { Provenance::BlockAdditivity };

    let nonplanar: Vec<&(GenusEstimate, GenusEstimate)> = blocks.iter().filter(|(_, c)| c.upper >= 1).collect();
    let upper = if nonplanar.is_empty() {
        0
    } else {
        let base: usize = nonplanar.iter().map(|(g, c)| (2 * g.upper).min(c.upper)).sum();
        let extra = nonplanar.iter().map(|(g, c)| c.upper.saturating_sub(2 * g.upper)).min().unwrap().min(1);
        base + extra
    };
    if all_exact {
        // every nonplanar block orientably simple forces the extra crosscap
        let np: Vec<_> = blocks.iter().filter(|(_, c)| c.lower >= 1).collect();
        if !np.is_empty() && np.iter().all(|(g, c)| c.lower == 2 * g.lower + 1) {
            lower = lower.max(1 + 2 * np.iter().map(|(g, _)| g.lower).sum::<usize>());
        }
    }
    let estimate = GenusEstimate::bounds(lower, lower_by, upper.max(lower), Provenance::BlockAdditivity);
    let estimate = if estimate.is_exact() {
        GenusEstimate::exact(estimate.lower, Provenance::BlockAdditivity)
    } else {
        estimate
    };
    CrosscapComposition { raw, floor, floor_applied: raw.is_some_and(|r| floor > r), estimate }
}
