//! Regenerates the certificates in `data/certificates` by seeded search.
use std::path::Path;

use nsbpg_core::graph::{parse_form, realize};
use nsbpg_core::topology::{search_embedding, Claim, SearchOptions};

const TARGETS: &[(&str, &str, bool, usize)] = &[
    ("k3j2k4.cert.json", "K_3 v 2K_4", true, 2),
    ("k5.cert.json", "K_5", true, 1),
    ("k7n3.cert.json", "K_7", false, 3),
];

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/certificates");
    for &(file, form, orientable, value) in TARGETS {
        let g = realize(&parse_form(form).unwrap());
        let (scheme, trace) = search_embedding(&g, Claim { orientable, value }, &SearchOptions::default())
            .unwrap_or_else(|| panic!("no embedding found for {form}"));
        let cert = scheme.to_certificate(trace.claim());
        std::fs::write(dir.join(file), cert.to_json()).unwrap();
        println!("{file}: {form} on {:?}, {} faces", trace.surface, trace.faces);
    }
}
