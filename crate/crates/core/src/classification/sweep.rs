use std::collections::BTreeSet;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use super::{CrosscapClass, GenusClass, Mutation, Predictor, QuotientProfile, TheoremPrediction};
use crate::catalog::Catalog;
use crate::group::{FiniteGroup, GroupError, Subgroup};
use crate::power::{nsb_power_graph, PowerError};
use crate::topology::{surface_invariants, GenusEstimate, SurfaceCache, SurfaceOptions};

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Power(#[from] PowerError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("max order {requested} is beyond the catalog (largest order {bound})")]
    MaxOrder { requested: usize, bound: usize },
    #[error("writing report: {0}")]
    Io(#[from] std::io::Error),
    #[error("encoding report: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationRecord {
    pub group_name: String,
    pub group_order: usize,
    pub subgroup_members: Vec<usize>,
    pub h_order: usize,
    pub quotient_label: String,
    /// Recognized form, or `"Unrecognized"`.
    pub structural_form: String,
    pub computed_genus: GenusEstimate,
    pub computed_crosscap: GenusEstimate,
    pub prediction: TheoremPrediction,
    pub genus_match: bool,
    pub crosscap_match: bool,
    #[serde(skip)]
    pub quotient: QuotientProfile,
}

impl ClassificationRecord {
    /// Crosscap pinned to 2, which no clause allows.
    pub fn crosscap_two(&self) -> bool {
        self.computed_crosscap.lower == 2 && self.computed_crosscap.upper == 2
    }

    fn mismatches_under(&self, p: &Predictor) -> bool {
        let (g, _) = p.predict_genus(self.h_order, &self.quotient);
        let (c, _) = p.predict_crosscap(self.h_order, &self.quotient);
        !g.consistent_with(&self.computed_genus) || !c.consistent_with(&self.computed_crosscap)
    }
}

/// Builds `Γ_H(G)`, computes its invariants and compares them with the
/// predicted classes.
pub fn classify_pair(
    g: &FiniteGroup,
    h: &Subgroup,
    predictor: &Predictor,
    opts: &SurfaceOptions,
    cache: Option<&SurfaceCache>,
) -> Result<ClassificationRecord, ClassifyError> {
    let nsbp = nsb_power_graph(g, h)?;
    let quotient = QuotientProfile::of(nsbp.quotient().group());
    let inv = surface_invariants(nsbp.graph(), opts, cache);
    let prediction = predictor.predict(h.order(), &quotient);
    Ok(ClassificationRecord {
        group_name: g.name().to_string(),
        group_order: g.order(),
        subgroup_members: h.members().to_vec(),
        h_order: h.order(),
        quotient_label: quotient.label.clone(),
        structural_form: inv.form.unwrap_or_else(|| "Unrecognized".to_string()),
        genus_match: prediction.genus_class.consistent_with(&inv.genus),
        crosscap_match: prediction.crosscap_class.consistent_with(&inv.crosscap),
        computed_genus: inv.genus,
        computed_crosscap: inv.crosscap,
        prediction,
        quotient,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub max_order: usize,
    /// Worker threads; 0 and 1 both mean single-threaded.
    pub jobs: usize,
    pub surface: SurfaceOptions,
    pub predictor: Predictor,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { max_order: 20, jobs: 1, surface: SurfaceOptions::default(), predictor: Predictor::standard() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Mismatch {
    pub group_name: String,
    pub subgroup_members: Vec<usize>,
    pub h_order: usize,
    pub quotient_label: String,
    /// `genus`, `crosscap` or `crosscap-two`.
    pub kind: String,
    pub predicted: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClauseCoverage {
    pub clause: String,
    pub class: String,
    pub pairs: usize,
    /// Quotient labels of the pairs that hit the clause.
    pub quotients: Vec<String>,
    /// `exercised` or `not exercised`.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub max_order: usize,
    pub groups: usize,
    pub pairs_checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub clause_coverage: Vec<ClauseCoverage>,
    pub notes: Vec<String>,
}

type Pairs<'a> = Vec<(&'a FiniteGroup, Subgroup)>;

/// Every pair `(G, H)` with `G` in the catalog up to `max_order` and `H`
/// proper, nontrivial and normal, in report order.
fn pairs(catalog: &Catalog, max_order: usize) -> Result<(usize, Pairs<'_>), ClassifyError> {
    let groups = catalog.up_to_order(max_order);
    let mut out = Vec::new();
    for (_, entry) in &groups {
        let mut subs = entry.group().proper_nontrivial_normal_subgroups()?;
        subs.sort_by(|a, b| a.members().cmp(b.members()));
        out.extend(subs.into_iter().map(|h| (entry.group(), h)));
    }
    Ok((groups.len(), out))
}

/// Classifies every catalog pair up to `opts.max_order`. Records go to
/// `sink` as JSON lines in a fixed order, followed by one summary line.
pub fn sweep(
    catalog: &Catalog,
    opts: &SweepOptions,
    sink: Option<&mut dyn Write>,
) -> Result<(SweepSummary, Vec<ClassificationRecord>), ClassifyError> {
    let bound = catalog.max_order();
    if opts.max_order > bound {
        return Err(ClassifyError::MaxOrder { requested: opts.max_order, bound });
    }
    let (groups, work) = pairs(catalog, opts.max_order)?;
    let cache = SurfaceCache::new();
    let next = AtomicUsize::new(0);
    let jobs = opts.jobs.clamp(1, work.len().max(1));
    let run = || {
        let mut done = Vec::new();
        loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            let Some((g, h)) = work.get(i) else { break };
            done.push((i, classify_pair(g, h, &opts.predictor, &opts.surface, Some(&cache))));
        }
        done
    };
    let mut results: Vec<(usize, Result<ClassificationRecord, ClassifyError>)> = if jobs == 1 {
        run()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs).map(|_| s.spawn(run)).collect();
            handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
        })
    };
    results.sort_by_key(|(i, _)| *i);
    let records = results.into_iter().map(|(_, r)| r).collect::<Result<Vec<_>, _>>()?;

    let summary = summarize(&records, opts, groups);
    if let Some(out) = sink {
        for r in &records {
            serde_json::to_writer(&mut *out, r)?;
            out.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut *out, &serde_json::json!({ "summary": &summary }))?;
        out.write_all(b"\n")?;
    }
    Ok((summary, records))
}

fn summarize(records: &[ClassificationRecord], opts: &SweepOptions, groups: usize) -> SweepSummary {
    let mut mismatches = Vec::new();
    for r in records {
        let base = |kind: &str, predicted: String, computed: &GenusEstimate| Mismatch {
            group_name: r.group_name.clone(),
            subgroup_members: r.subgroup_members.clone(),
            h_order: r.h_order,
            quotient_label: r.quotient_label.clone(),
            kind: kind.to_string(),
            predicted,
            computed: computed.to_string(),
        };
        if !r.genus_match {
            mismatches.push(base("genus", r.prediction.genus_class.to_string(), &r.computed_genus));
        }
        if !r.crosscap_match {
            mismatches.push(base("crosscap", r.prediction.crosscap_class.to_string(), &r.computed_crosscap));
        }
        if r.crosscap_two() {
            mismatches.push(base("crosscap-two", "never 2".to_string(), &r.computed_crosscap));
        }
    }
    let p = &opts.predictor;
    let mut coverage = Vec::new();
    let mut cover = |id: &str, class: String, hit: &dyn Fn(&ClassificationRecord) -> bool| {
        let hits: Vec<&ClassificationRecord> = records.iter().filter(|r| hit(r)).collect();
        let quotients: BTreeSet<String> = hits.iter().map(|r| r.quotient_label.clone()).collect();
        coverage.push(ClauseCoverage {
            clause: id.to_string(),
            class,
            pairs: hits.len(),
            quotients: quotients.into_iter().collect(),
            status: if hits.is_empty() { "not exercised" } else { "exercised" }.to_string(),
        });
    };
    for c in &p.genus {
        cover(c.id, c.class.to_string(), &|r| p.predict_genus(r.h_order, &r.quotient).1 == c.id);
    }
    cover(super::GENUS_FALLBACK, GenusClass::AtLeast3.to_string(), &|r| {
        p.predict_genus(r.h_order, &r.quotient).1 == super::GENUS_FALLBACK
    });
    for c in &p.crosscap {
        cover(c.id, c.class.to_string(), &|r| p.predict_crosscap(r.h_order, &r.quotient).1 == c.id);
    }
    cover(super::CROSSCAP_FALLBACK, CrosscapClass::AtLeast4.to_string(), &|r| {
        p.predict_crosscap(r.h_order, &r.quotient).1 == super::CROSSCAP_FALLBACK
    });
    let mut notes = Vec::new();
    for c in &coverage {
        if c.status == "not exercised" {
            notes.push(format!("{} is not exercised up to order {}", c.clause, opts.max_order));
        }
    }
    if let Some(c) = coverage.iter().find(|c| c.clause == "genus-2b") {
        notes.push(format!(
            "genus-2b covers every 2-group of exponent 4 with two cyclic subgroups of order 4; \
             up to order {} only these quotients occur: {}",
            opts.max_order,
            if c.quotients.is_empty() { "none".to_string() } else { c.quotients.join(", ") }
        ));
    }
    SweepSummary {
        max_order: opts.max_order,
        groups,
        pairs_checked: records.len(),
        mismatches,
        clause_coverage: coverage,
        notes,
    }
}

/// Single-clause or single-alternative deletions that leave every record
/// consistent. An empty result means the sweep catches each of them.
pub fn mutation_survivors(records: &[ClassificationRecord], predictor: &Predictor) -> Vec<Mutation> {
    predictor
        .mutations()
        .into_iter()
        .filter(|m| {
            let weak = predictor.mutated(m);
            !records.iter().any(|r| r.mismatches_under(&weak))
        })
        .collect()
}
