use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::compose::{crosscap_via_blocks, genus_via_blocks, CrosscapComposition};
use super::embedding::{trace_faces, Certificate, Claim, EmbeddingScheme};
use super::estimate::{GenusEstimate, Provenance};
use super::exact::exact_genus_small;
use super::formulas::{crosscap_kmn, crosscap_kn, cycle_rank, euler_genus_lower_bound, genus_kmn, genus_kn};
use super::planarity::is_planar;
use super::search::{search_embedding, SearchOptions};
use crate::graph::{blocks, graph_isomorphism, max_clique, recognize_structure, SimpleGraph, GRAPH_ISO_CAP};

// regenerate with `cargo run --release -p nsbpg-core --example make_certificates`
const SHIPPED: &[&str] = &[
    include_str!("../../data/certificates/k3j2k4.cert.json"),
    include_str!("../../data/certificates/k5.cert.json"),
    include_str!("../../data/certificates/k7n3.cert.json"),
];

/// Certificates bundled with the crate, keyed by the structural form of
/// their graph.
pub fn shipped_certificates() -> &'static [(String, Certificate)] {
    static PARSED: OnceLock<Vec<(String, Certificate)>> = OnceLock::new();
    PARSED.get_or_init(|| {
        SHIPPED
            .iter()
            .map(|text| {
                let cert = Certificate::from_json(text).expect("bundled certificate parses");
                let g = cert.graph().expect("bundled certificate graph is valid");
                let form = recognize_structure(&g).expect("bundled graphs are structural").to_string();
                (form, cert)
            })
            .collect()
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceOptions {
    /// Node budget for the exact genus search on each block.
    pub exact_budget: u64,
    pub search: SearchOptions,
    /// Run the annealing search for the genus when the lower bound is at
    /// most this value.
    pub genus_search_max: usize,
    pub crosscap_search_max: usize,
    pub run_search: bool,
    pub use_shipped_certificates: bool,
}

impl Default for SurfaceOptions {
    fn default() -> Self {
        Self {
            exact_budget: 200_000,
            search: SearchOptions::default(),
            genus_search_max: 2,
            crosscap_search_max: 3,
            run_search: true,
            use_shipped_certificates: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurfaceInvariants {
    pub genus: GenusEstimate,
    pub crosscap: GenusEstimate,
    /// Recognized structure, when there is one.
    pub form: Option<String>,
    /// Present when the graph has more than one block.
    pub crosscap_blocks: Option<CrosscapComposition>,
}

/// Results shared across calls, keyed by structural form.
#[derive(Debug, Default)]
pub struct SurfaceCache {
    map: Mutex<HashMap<String, SurfaceInvariants>>,
}

impl SurfaceCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Genus and crosscap of `g`, exact where some route pins them and sound
/// bounds otherwise.
///
/// Planar graphs stop at the planarity test. Otherwise each block is
/// handled separately: complete and complete bipartite blocks by formula,
/// anything else by Euler and clique lower bounds, cycle-rank upper
/// bounds, the exact rotation search, shipped certificates and annealing.
/// Blocks are then combined.
pub fn surface_invariants(g: &SimpleGraph, opts: &SurfaceOptions, cache: Option<&SurfaceCache>) -> SurfaceInvariants {
    let form = recognize_structure(g).map(|f| f.to_string());
    if let (Some(c), Some(f)) = (cache, &form) {
        if let Some(hit) = c.map.lock().unwrap().get(f) {
            return hit.clone();
        }
    }
    let out = compute(g, form.clone(), opts, cache);
    if let (Some(c), Some(f)) = (cache, form) {
        c.map.lock().unwrap().insert(f, out.clone());
    }
    out
}

fn planar() -> (GenusEstimate, GenusEstimate) {
    let zero = GenusEstimate::exact(0, Provenance::PlanarityTest);
    (zero, zero)
}

fn compute(g: &SimpleGraph, form: Option<String>, opts: &SurfaceOptions, cache: Option<&SurfaceCache>) -> SurfaceInvariants {
    if g.vertex_count() < 3 || is_planar(g) {
        let (genus, crosscap) = planar();
        return SurfaceInvariants { genus, crosscap, form, crosscap_blocks: None };
    }
    let d = blocks(g);
    if d.blocks.len() == 1 {
        let (genus, crosscap) = block_invariants(g, opts);
        return SurfaceInvariants { genus, crosscap, form, crosscap_blocks: None };
    }
    let per_block: Vec<(GenusEstimate, GenusEstimate)> = d
        .block_graphs(g)
        .iter()
        .map(|b| {
            let s = surface_invariants(b, opts, cache);
            (s.genus, s.crosscap)
        })
        .collect();
    let genus = genus_via_blocks(&per_block.iter().map(|p| p.0).collect::<Vec<_>>());
    let comp = crosscap_via_blocks(&per_block);
    SurfaceInvariants { genus, crosscap: comp.estimate, form, crosscap_blocks: Some(comp) }
}

/// Invariants of a single nonplanar block.
fn block_invariants(b: &SimpleGraph, opts: &SurfaceOptions) -> (GenusEstimate, GenusEstimate) {
    if is_planar(b) {
        return planar();
    }
    let n = b.vertex_count();
    if b.is_complete() {
        return (
            GenusEstimate::exact(genus_kn(n).unwrap(), Provenance::Formula),
            GenusEstimate::exact(crosscap_kn(n).unwrap(), Provenance::Formula),
        );
    }
    if let Some((p, q)) = b.complete_bipartite_parts() {
        if p >= 2 {
            return (
                GenusEstimate::exact(genus_kmn(p, q).unwrap(), Provenance::Formula),
                GenusEstimate::exact(crosscap_kmn(p, q).unwrap(), Provenance::Formula),
            );
        }
    }

    let beta = cycle_rank(b);
    let mut genus = GenusEstimate::bounds(1, Provenance::PlanarityTest, (beta / 2).max(1), Provenance::CycleRank);
    let mut crosscap = GenusEstimate::bounds(1, Provenance::PlanarityTest, beta.max(1), Provenance::CycleRank);
    let eg = euler_genus_lower_bound(b, true);
    genus.raise_lower(eg.div_ceil(2), Provenance::EulerBound);
    crosscap.raise_lower(eg, Provenance::EulerBound);
    let omega = max_clique(b).len();
    if omega >= 3 {
        genus.raise_lower(genus_kn(omega).unwrap(), Provenance::SubgraphBound);
        crosscap.raise_lower(crosscap_kn(omega).unwrap(), Provenance::SubgraphBound);
    }
    couple(&genus, &mut crosscap);

    if !genus.is_exact() && opts.exact_budget > 0 {
        let e = exact_genus_small(b, opts.exact_budget);
        genus.raise_lower(e.lower, e.lower_by);
        genus.lower_upper(e.upper, e.upper_by);
        couple(&genus, &mut crosscap);
    }

    if opts.use_shipped_certificates && !(genus.is_exact() && crosscap.is_exact()) && n <= GRAPH_ISO_CAP {
        for (_, cert) in shipped_certificates() {
            if let Some(claim) = transfer_certificate(b, cert) {
                apply_claim(claim, &mut genus, &mut crosscap);
            }
        }
    }

    if opts.run_search {
        let mut t = genus.lower;
        while !genus.is_exact() && t <= opts.genus_search_max && t < genus.upper {
            if let Some((_, trace)) = search_embedding(b, Claim { orientable: true, value: t }, &opts.search) {
                apply_claim(trace.claim(), &mut genus, &mut crosscap);
            }
            t += 1;
        }
        let mut k = crosscap.lower;
        while !crosscap.is_exact() && k <= opts.crosscap_search_max && k < crosscap.upper {
            if let Some((_, trace)) = search_embedding(b, Claim { orientable: false, value: k }, &opts.search) {
                apply_claim(trace.claim(), &mut genus, &mut crosscap);
            }
            k += 1;
        }
    }
    (genus, crosscap)
}

/// `γ̄ <= 2γ + 1`: an orientable embedding plus one crosscap.
fn couple(genus: &GenusEstimate, crosscap: &mut GenusEstimate) {
    crosscap.lower_upper(2 * genus.upper + 1, genus.upper_by);
}

fn apply_claim(claim: Claim, genus: &mut GenusEstimate, crosscap: &mut GenusEstimate) {
    if claim.orientable {
        genus.lower_upper(claim.value, Provenance::Certificate);
        couple(genus, crosscap);
    } else {
        crosscap.lower_upper(claim.value, Provenance::Certificate);
    }
}

/// Moves `cert` onto `g` along a graph isomorphism and re-traces it there.
fn transfer_certificate(g: &SimpleGraph, cert: &Certificate) -> Option<Claim> {
    let scheme = cert.scheme().ok()?;
    let h = scheme.graph();
    let phi = graph_isomorphism(g, &h).ok()??;
    let mut inv = vec![0; phi.len()];
    for (v, &w) in phi.iter().enumerate() {
        inv[w] = v;
    }
    let other = |e: usize, x: usize| {
        let (a, b) = scheme.edges()[e];
        if a == x {
            b
        } else {
            a
        }
    };
    let rotations: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| scheme.rotations()[phi[v]].iter().map(|&e| inv[other(e, phi[v])]).collect())
        .collect();
    let sign_of: HashMap<(usize, usize), i8> = scheme
        .edges()
        .iter()
        .zip(scheme.signs())
        .map(|(&(a, b), &s)| ((a.min(b), a.max(b)), s))
        .collect();
    let signs = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (phi[u], phi[v]);
            sign_of[&(a.min(b), a.max(b))]
        })
        .collect();
    let moved = EmbeddingScheme::from_vertex_rotations(g, &rotations, Some(signs)).ok()?;
    let claim = trace_faces(&moved).ok()?.claim();
    (claim == cert.claim).then_some(claim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_form, realize};

    fn quick() -> SurfaceOptions {
        SurfaceOptions { run_search: false, ..SurfaceOptions::default() }
    }

    fn inv(form: &str) -> SurfaceInvariants {
        surface_invariants(&realize(&parse_form(form).unwrap()), &quick(), None)
    }

    #[test]
    fn formula_cases() {
        let k5 = inv("K_5");
        assert_eq!((k5.genus.value(), k5.crosscap.value()), (Some(1), Some(1)));
        assert_eq!(k5.genus.lower_by, Provenance::Formula);
        let k33 = surface_invariants(&SimpleGraph::complete_bipartite(3, 3), &quick(), None);
        assert_eq!(k33.genus.value(), Some(1));
        let planar = inv("K_1 v (K_3 u 3K_2)");
        assert_eq!(planar.genus, GenusEstimate::exact(0, Provenance::PlanarityTest));
    }

    #[test]
    fn cones_over_unions() {
        let a = inv("K_1 v (K_6 u 4K_2)");
        assert_eq!((a.genus.value(), a.crosscap.value()), (Some(1), Some(3)));
        let b = inv("K_1 v (K_6 u 3K_3)");
        assert_eq!((b.genus.value(), b.crosscap.value()), (Some(1), Some(3)));
        assert!(b.crosscap_blocks.unwrap().floor_applied);
        let c = inv("K_1 v 3K_4");
        assert_eq!((c.genus.value(), c.crosscap.value()), (Some(3), Some(3)));
        let d = inv("K_1 v 3K_5");
        assert_eq!((d.genus.value(), d.crosscap.value()), (Some(3), Some(3)));
    }

    #[test]
    fn bounds_without_search() {
        let opts = SurfaceOptions { use_shipped_certificates: false, ..quick() };
        let s = surface_invariants(&realize(&parse_form("K_3 v 2K_4").unwrap()), &opts, None);
        assert_eq!(s.genus.lower, 2);
        assert!(!s.genus.is_exact());
        assert_eq!(s.crosscap.lower, 4);
        assert!(s.crosscap.upper <= 2 * s.genus.upper + 1);
    }

    #[test]
    fn shipped_certificates_verify() {
        let shipped = shipped_certificates();
        let forms: Vec<&str> = shipped.iter().map(|(f, _)| f.as_str()).collect();
        assert_eq!(forms, ["K_3 v 2K_4", "K_5", "K_7"]);
        for (form, cert) in shipped {
            let g = realize(&parse_form(form).unwrap());
            assert!(crate::topology::verify_certificate(&g, cert).unwrap(), "{form}");
        }
        let trace = trace_faces(&shipped[0].1.scheme().unwrap()).unwrap();
        assert_eq!((trace.faces, trace.euler_characteristic), (26, -2));
    }

    #[test]
    fn shipped_certificate_pins_the_genus() {
        let s = inv("K_3 v 2K_4");
        assert_eq!(s.genus, GenusEstimate::bounds(2, Provenance::EulerBound, 2, Provenance::Certificate));
        assert_eq!(s.crosscap.lower, 4);
        // relabelled copy: the certificate is moved along an isomorphism
        let g = realize(&parse_form("K_3 v 2K_4").unwrap());
        let n = g.vertex_count();
        let perm: Vec<usize> = (0..n).map(|v| (v * 5 + 3) % n).collect();
        let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let h = SimpleGraph::from_edges(n, &edges).unwrap();
        assert_eq!(surface_invariants(&h, &quick(), None).genus.value(), Some(2));
    }

    #[test]
    fn cache_hits() {
        let cache = SurfaceCache::new();
        let g = realize(&parse_form("K_1 v 3K_4").unwrap());
        let a = surface_invariants(&g, &quick(), Some(&cache));
        assert!(cache.len() >= 2);
        assert_eq!(surface_invariants(&g, &quick(), Some(&cache)), a);
    }
}
