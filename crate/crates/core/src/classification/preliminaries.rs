use std::fmt;

use serde::Serialize;

use super::sweep::ClassifyError;
use crate::catalog::Catalog;
use crate::group::{iso_label, prime_factors, FiniteGroup, NamedGroup, Subgroup};
use crate::power::{is_complete_nsbp, nsb_power_graph, nsb_power_graph_by_definition, validate_coset_adjacency};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PreliminaryCheck {
    pub name: String,
    pub statement: String,
    /// Number of instances the statement was tested on.
    pub instances: usize,
    pub failures: Vec<String>,
    /// Informational hits, e.g. the groups that satisfy a hypothesis.
    pub witnesses: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreliminaryReport {
    pub checks: Vec<PreliminaryCheck>,
}

impl PreliminaryReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&PreliminaryCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for PreliminaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {:<28} {:>4} instances  {}", c.name, c.instances, c.statement)?;
            for w in &c.failures {
                writeln!(f, "     failure: {w}")?;
            }
        }
        Ok(())
    }
}

struct Check {
    inner: PreliminaryCheck,
}

impl Check {
    fn new(name: &str, statement: &str) -> Self {
        Self {
            inner: PreliminaryCheck {
                name: name.to_string(),
                statement: statement.to_string(),
                instances: 0,
                failures: Vec::new(),
                witnesses: Vec::new(),
                passed: true,
            },
        }
    }

    fn test(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.inner.instances += 1;
        if !ok {
            self.inner.failures.push(what());
        }
    }

    fn finish(mut self) -> PreliminaryCheck {
        self.inner.passed = self.inner.failures.is_empty();
        self.inner
    }
}

/// `(p, k)` with `|G| = p^n` and exponent `p^k`, for nontrivial p-groups.
fn p_group(g: &FiniteGroup) -> Option<(usize, u32)> {
    let p = g.prime_power_base()?;
    let mut k = 0;
    let mut e = g.exponent();
    while e > 1 {
        e /= p;
        k += 1;
    }
    Some((p, k))
}

fn s(g: &FiniteGroup, d: usize) -> usize {
    g.count_cyclic_subgroups(d)
}

fn cyclic_subgroups_of_order(g: &FiniteGroup, d: usize) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = g.elements().filter(|&x| g.element_order(x) == d).map(|x| g.cyclic_subgroup(x)).collect();
    out.sort();
    out.dedup();
    out
}

/// The dihedral, quaternion and semidihedral 2-groups with at least one
/// `s_{2^i} = 1`, with their expected `s_{2^j}` for `j = 1..=k`.
fn family_counts(label: &str, k: u32) -> Option<Vec<usize>> {
    let pw = |e: u32| 1usize << e;
    let counts = |f: &dyn Fn(u32) -> usize| (1..=k).map(f).collect();
    let order = |prefix: &str| label.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    if let Some(n) = order("SD") {
        (n == pw(k + 1) && k >= 3).then(|| counts(&|j| match j {
            1 => 1 + pw(k - 1),
            2 => 1 + pw(k - 2),
            _ => 1,
        }))
    } else if let Some(n) = order("D") {
        (n == pw(k + 1) && k >= 2).then(|| counts(&|j| if j == 1 { 1 + pw(k) } else { 1 }))
    } else if let Some(n) = order("Q") {
        (n == pw(k + 1) && k >= 2).then(|| counts(&|j| if j == 2 { 1 + pw(k - 1) } else { 1 }))
    } else {
        None
    }
}

/// Checks the group-theoretic facts the classification leans on, one
/// instance at a time over the catalog, plus the two power-graph facts:
/// both constructions of `Γ_H(G)` agree, and `Γ_H(G)` is complete exactly
/// when `G/H` is a cyclic p-group.
pub fn verify_preliminaries(catalog: &Catalog) -> Result<PreliminaryReport, ClassifyError> {
    let groups: Vec<&FiniteGroup> = catalog.entries().iter().map(|e| e.group()).collect();
    let labels: Vec<String> = groups.iter().map(|g| iso_label(g)).collect();
    let mut checks = Vec::new();

    let mut c = Check::new("frobenius-congruence", "s_p(G) = 1 mod p for every prime p dividing |G|");
    for g in &groups {
        let mut ps = prime_factors(g.order());
        ps.dedup();
        for p in ps {
            let sp = s(g, p);
            c.test(sp % p == 1, || format!("{}: s_{p} = {sp}", g.name()));
        }
    }
    checks.push(c.finish());

    let mut c = Check::new(
        "p-group-congruences",
        "non-cyclic p-groups (for p = 2 also not of maximal class): s_p = 1 + p mod p^2 and p | s_{p^i} for 2 <= i <= k",
    );
    for g in &groups {
        let Some((p, k)) = p_group(g) else { continue };
        if g.is_cyclic() || (p == 2 && g.is_maximal_class()?) {
            continue;
        }
        let sp = s(g, p);
        c.test(sp % (p * p) == 1 + p, || format!("{}: s_{p} = {sp}", g.name()));
        for i in 2..=k {
            let d = p.pow(i);
            let sd = s(g, d);
            c.test(sd.is_multiple_of(p), || format!("{}: s_{d} = {sd}", g.name()));
        }
        c.inner.witnesses.push(g.name().to_string());
    }
    checks.push(c.finish());

    let mut c = Check::new(
        "unique-cyclic-families",
        "a p-group has some s_{p^i} = 1 iff it is cyclic or a dihedral, generalized quaternion or semidihedral 2-group, with the stated counts",
    );
    for (g, label) in groups.iter().zip(&labels) {
        let Some((p, k)) = p_group(g) else { continue };
        let counts: Vec<usize> = (1..=k).map(|j| s(g, p.pow(j))).collect();
        let some_one = counts.contains(&1);
        let expected =
            if g.is_cyclic() { Some(vec![1; k as usize]) } else if p == 2 { family_counts(label, k) } else { None };
        match expected {
            Some(want) => {
                c.test(some_one && counts == want, || format!("{}: counts {counts:?}, expected {want:?}", g.name()));
                c.inner.witnesses.push(format!("{} ({label})", g.name()));
            }
            None => c.test(!some_one, || format!("{} ({label}): counts {counts:?} outside the listed families", g.name())),
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("family-counts", "s_2(D16) = 9, s_4(Q16) = 5, s_2(SD16) = 5, s_4(SD16) = 3");
    let d16 = NamedGroup::Dihedral(16).build()?;
    let q16 = NamedGroup::GeneralizedQuaternion(16).build()?;
    let sd16 = NamedGroup::SemiDihedral(16).build()?;
    for (g, d, want) in [(&d16, 2, 9), (&q16, 4, 5), (&sd16, 2, 5), (&sd16, 4, 3)] {
        let got = s(g, d);
        c.test(got == want, || format!("s_{d}({}) = {got}, expected {want}", g.name()));
    }
    checks.push(c.finish());

    let mut c = Check::new(
        "exponent-p2-unique-cyclic",
        "a p-group of exponent p^2 with one cyclic subgroup of order p^2 is Z4 or D8 (p = 2) or Z_{p^2} (p odd)",
    );
    for (g, label) in groups.iter().zip(&labels) {
        let Some((p, 2)) = p_group(g) else { continue };
        if s(g, p * p) != 1 {
            continue;
        }
        let ok = if p == 2 { label == "Z4" || label == "D8" } else { *label == format!("Z{}", p * p) };
        c.test(ok, || format!("{} is {label}", g.name()));
        c.inner.witnesses.push(format!("{} ({label})", g.name()));
    }
    checks.push(c.finish());

    let mut c = Check::new(
        "exponent-p2-intersection",
        "a p-group of exponent p^2 has one cyclic subgroup of order p^2, or two of them meeting in order p",
    );
    for g in &groups {
        let Some((p, 2)) = p_group(g) else { continue };
        let cyc = cyclic_subgroups_of_order(g, p * p);
        let ok = cyc.len() == 1
            || cyc.iter().enumerate().any(|(i, m)| cyc[i + 1..].iter().any(|n| m.intersection(n, g).order() == p));
        c.test(ok, || format!("{}: {} cyclic subgroups of order {}", g.name(), cyc.len(), p * p));
    }
    checks.push(c.finish());

    let mut c = Check::new(
        "unique-order-3",
        "element orders within {1, 2, 3, 4} and a unique subgroup of order 3 force Z3 or S3",
    );
    for (g, label) in groups.iter().zip(&labels) {
        let spectrum_ok = g.order_spectrum().keys().all(|o| [1, 2, 3, 4].contains(o));
        if !spectrum_ok || s(g, 3) != 1 {
            continue;
        }
        c.test(label == "Z3" || label == "S3", || format!("{} is {label}", g.name()));
        c.inner.witnesses.push(format!("{} ({label})", g.name()));
    }
    checks.push(c.finish());

    let mut dual = Check::new(
        "dual-definition",
        "the raw definition and the quotient power graph give the same graph, with coset-uniform adjacency",
    );
    let mut complete = Check::new("completeness", "the graph is complete iff G/H is a cyclic p-group");
    for g in &groups {
        for h in g.proper_nontrivial_normal_subgroups()? {
            let a = nsb_power_graph(g, &h)?;
            let b = nsb_power_graph_by_definition(g, &h)?;
            let what = || format!("{} / {:?}", g.name(), h.members());
            dual.test(a.graph().edges() == b.graph().edges() && validate_coset_adjacency(&a), what);
            let q = a.quotient().group();
            complete.test(is_complete_nsbp(&a) == q.is_cyclic_p_group(), what);
        }
    }
    checks.push(dual.finish());
    checks.push(complete.finish());

    Ok(PreliminaryReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_passes() {
        let report = verify_preliminaries(&Catalog::bundled().unwrap()).unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.checks.len(), 9);
        assert!(report.checks.iter().all(|c| c.instances > 0), "{report}");
    }

    #[test]
    fn unique_order_three_hits_exactly_z3_and_s3() {
        let report = verify_preliminaries(&Catalog::bundled().unwrap()).unwrap();
        let c = report.get("unique-order-3").unwrap();
        assert_eq!(c.witnesses, ["Z3 (Z3)", "S3 (S3)"]);
    }

    #[test]
    fn family_table() {
        assert_eq!(family_counts("D16", 3), Some(vec![9, 1, 1]));
        assert_eq!(family_counts("Q16", 3), Some(vec![1, 5, 1]));
        assert_eq!(family_counts("SD16", 3), Some(vec![5, 3, 1]));
        assert_eq!(family_counts("D8", 2), Some(vec![5, 1]));
        assert_eq!(family_counts("Q8", 2), Some(vec![1, 3]));
        assert_eq!(family_counts("D12", 2), None);
    }

    #[test]
    fn counts_by_brute_force() {
        // count subgroups of order d directly: distinct cyclic subgroups
        // generated by elements of order d
        for g in [
            NamedGroup::Dihedral(16).build().unwrap(),
            NamedGroup::GeneralizedQuaternion(16).build().unwrap(),
            NamedGroup::SemiDihedral(16).build().unwrap(),
        ] {
            for d in [2, 4, 8] {
                assert_eq!(cyclic_subgroups_of_order(&g, d).len(), g.count_cyclic_subgroups(d), "{} {d}", g.name());
            }
        }
    }
}
