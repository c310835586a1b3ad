use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use nsbpg_core::catalog::{Catalog, CATALOG_ENV};
use nsbpg_core::classification::{mutation_survivors, sweep, verify_preliminaries, SweepOptions};
use nsbpg_core::graph::{parse_form, realize, GraphFile, SimpleGraph};
use nsbpg_core::group::{iso_label, FiniteGroup, Subgroup};
use nsbpg_core::power::nsb_power_graph;
use nsbpg_core::topology::{
    search_embedding, surface_invariants, trace_faces, verify_certificate, Certificate, Claim, SearchOptions,
    SurfaceOptions,
};

use crate::{
    BuildArgs, CatalogCommand, Cli, Command, GraphSource, InvariantsArgs, SearchArgs, SearchKnobs, VerifyCommand,
};

const MISMATCH: u8 = 1;

pub fn run(cli: Cli) -> Result<ExitCode> {
    let catalog = || load_catalog(cli.catalog.as_deref());
    match cli.command {
        Command::Catalog(CatalogCommand::List { max_order, nontrivial }) => catalog_list(&catalog()?, max_order, nontrivial),
        Command::Build(args) => build(&catalog()?, &args),
        Command::Invariants(args) => invariants(&cli.catalog, &args),
        Command::Verify(VerifyCommand::Sweep { max_order, report, jobs, mutations }) => {
            verify_sweep(&catalog()?, max_order, report.as_deref(), jobs, mutations)
        }
        Command::Verify(VerifyCommand::Preliminaries { json }) => verify_prelims(&catalog()?, json),
        Command::Verify(VerifyCommand::Embedding { certificate }) => verify_embedding(&certificate),
        Command::Search(args) => search(&cli.catalog, &args),
    }
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog> {
    let from_env = std::env::var_os(CATALOG_ENV);
    let path = path.map(Path::to_path_buf).or_else(|| from_env.map(Into::into));
    match path {
        Some(p) => Catalog::from_path(&p).with_context(|| format!("loading catalog {}", p.display())),
        None => Ok(Catalog::bundled()?),
    }
}

fn group<'a>(catalog: &'a Catalog, name: &str) -> Result<&'a FiniteGroup> {
    catalog.get(name).map(|e| e.group()).ok_or_else(|| anyhow!("no group named {name:?} in the catalog"))
}

/// `center`, or the subgroup generated by comma-separated element indices.
fn subgroup(g: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    if spec.trim() == "center" {
        return Ok(g.center());
    }
    let mut gens = Vec::new();
    for part in spec.split(',') {
        let x: usize = part.trim().parse().with_context(|| format!("bad element index {part:?}"))?;
        g.check_element(x)?;
        gens.push(x);
    }
    Ok(g.subgroup_generated(&gens))
}

fn catalog_list(catalog: &Catalog, max_order: Option<usize>, nontrivial: bool) -> Result<ExitCode> {
    let rows = catalog.up_to_order(max_order.unwrap_or(usize::MAX));
    let mut out = std::io::stdout().lock();
    writeln!(out, "{:<12} {:>5}  {:<7}  {:>8}", "name", "order", "abelian", "exponent")?;
    for (_, e) in rows {
        let g = e.group();
        if nontrivial && g.order() == 1 {
            continue;
        }
        let abelian = if g.is_abelian() { "yes" } else { "no" };
        writeln!(out, "{:<12} {:>5}  {:<7}  {:>8}", e.name(), g.order(), abelian, g.exponent())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn build(catalog: &Catalog, args: &BuildArgs) -> Result<ExitCode> {
    let g = group(catalog, &args.group)?;
    let h = subgroup(g, &args.subgroup)?;
    let nsbp = nsb_power_graph(g, &h).with_context(|| format!("H = {:?} in {}", h.members(), g.name()))?;
    let graph = nsbp.graph();
    let form = nsbpg_core::graph::recognize_structure(graph).map_or("Unrecognized".to_string(), |f| f.to_string());
    println!("G = {} (order {}), H = {:?}, G/H = {}", g.name(), g.order(), h.members(), iso_label(nsbp.quotient().group()));
    println!("vertices: {}, edges: {}", graph.vertex_count(), graph.edge_count());
    println!("form: {form}");
    if let Some(path) = &args.dot {
        let name = format!("Gamma_H({})", g.name());
        std::fs::write(path, graph.to_dot(&name)).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&graph.to_file())?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn graph_from_source(catalog: &Option<std::path::PathBuf>, src: &GraphSource) -> Result<SimpleGraph> {
    let given = [src.group.is_some(), src.graph_file.is_some(), src.form.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        bail!("give exactly one of --group/--subgroup, --graph-file, --form");
    }
    if let (Some(name), Some(sub)) = (&src.group, &src.subgroup) {
        let catalog = load_catalog(catalog.as_deref())?;
        let g = group(&catalog, name)?;
        let h = subgroup(g, sub)?;
        return Ok(nsb_power_graph(g, &h)?.into_graph());
    }
    if let Some(path) = &src.graph_file {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: GraphFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(SimpleGraph::from_file(&file)?);
    }
    let form = src.form.as_deref().expect("one source is set");
    Ok(realize(&parse_form(form)?))
}

fn search_options(knobs: &SearchKnobs) -> SearchOptions {
    SearchOptions { seed: knobs.seed, budget: knobs.budget, ..SearchOptions::default() }
}

fn invariants(catalog: &Option<std::path::PathBuf>, args: &InvariantsArgs) -> Result<ExitCode> {
    let g = graph_from_source(catalog, &args.source)?;
    let opts = SurfaceOptions { search: search_options(&args.knobs), run_search: !args.no_search, ..SurfaceOptions::default() };
    let inv = surface_invariants(&g, &opts, None);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&inv)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!("vertices: {}, edges: {}", g.vertex_count(), g.edge_count());
    println!("form: {}", inv.form.as_deref().unwrap_or("Unrecognized"));
    println!("genus: {}", inv.genus);
    println!("crosscap: {}", inv.crosscap);
    if let Some(c) = &inv.crosscap_blocks {
        let raw = c.raw.map_or("n/a".to_string(), |r| r.to_string());
        println!("crosscap over blocks: raw {raw}, floor {}, floor applied: {}", c.floor, c.floor_applied);
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_sweep(catalog: &Catalog, max_order: usize, report: Option<&Path>, jobs: usize, mutations: bool) -> Result<ExitCode> {
    let opts = SweepOptions { max_order, jobs, ..SweepOptions::default() };
    let (summary, records) = match report {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            let r = sweep(catalog, &opts, Some(&mut w))?;
            w.flush()?;
            r
        }
        None => sweep(catalog, &opts, None)?,
    };
    println!("checked {} pairs over {} groups of order <= {}", summary.pairs_checked, summary.groups, max_order);
    for c in &summary.clause_coverage {
        println!("  {:<18} class {:<9} {:>4} pairs  {}", c.clause, c.class, c.pairs, c.quotients.join(" "));
    }
    for n in &summary.notes {
        println!("note: {n}");
    }
    for m in &summary.mismatches {
        eprintln!(
            "MISMATCH {} H={:?} |H|={} G/H={} {}: predicted {}, computed {}",
            m.group_name, m.subgroup_members, m.h_order, m.quotient_label, m.kind, m.predicted, m.computed
        );
    }
    println!("{} mismatches", summary.mismatches.len());
    let mut ok = summary.mismatches.is_empty();
    if mutations {
        let p = &opts.predictor;
        let survivors = mutation_survivors(&records, p);
        let total = p.mutations().len();
        println!("mutations: {} of {total} detected", total - survivors.len());
        for m in &survivors {
            eprintln!("UNDETECTED {m}");
        }
        ok &= survivors.is_empty();
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(MISMATCH) })
}

fn verify_prelims(catalog: &Catalog, json: bool) -> Result<ExitCode> {
    let report = verify_preliminaries(catalog)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{report}");
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        for f in &c.failures {
            eprintln!("FAILED {}: {f}", c.name);
        }
    }
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(MISMATCH) })
}

fn surface_name(claim: Claim) -> String {
    let kind = if claim.orientable { "orientable" } else { "nonorientable" };
    format!("{kind} genus {}", claim.value)
}

fn verify_embedding(path: &Path) -> Result<ExitCode> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cert = Certificate::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    let g = cert.graph()?;
    let trace = trace_faces(&cert.scheme()?)?;
    if verify_certificate(&g, &cert)? {
        println!("VALID: {}, faces {}", surface_name(cert.claim), trace.faces);
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "INVALID: claims {}, traces to {} with {} faces",
            surface_name(cert.claim),
            surface_name(trace.claim()),
            trace.faces
        );
        Ok(ExitCode::from(MISMATCH))
    }
}

fn search(catalog: &Option<std::path::PathBuf>, args: &SearchArgs) -> Result<ExitCode> {
    let g = graph_from_source(catalog, &args.source)?;
    let target = Claim { orientable: args.orientable, value: args.target };
    let opts = search_options(&args.knobs);
    let Some((scheme, trace)) = search_embedding(&g, target, &opts) else {
        eprintln!(
            "NotFound: no embedding on the {} surface within {} moves (seed {})",
            surface_name(target),
            opts.budget,
            opts.seed
        );
        return Ok(ExitCode::from(MISMATCH));
    };
    let cert = scheme.to_certificate(trace.claim());
    let status = format!("FOUND: {}, faces {}", surface_name(trace.claim()), trace.faces);
    match &args.out {
        Some(path) => {
            std::fs::write(path, cert.to_json()).with_context(|| format!("writing {}", path.display()))?;
            println!("{status}");
            println!("certificate written to {}", path.display());
        }
        None => {
            eprintln!("{status}");
            print!("{}", cert.to_json());
        }
    }
    Ok(ExitCode::SUCCESS)
}
