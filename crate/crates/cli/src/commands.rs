use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::anyhow;
use log::{debug, info};
use tkgraph::eval::{classification_metrics, coverage, feature_correlations, parse_votes, rpref, store_stats};
use tkgraph::fuse::{build_fused_graph, FusionConfig};
use tkgraph::interlink::CorpusStats;
use tkgraph::kg::nquads::{from_nquads, to_nquads};
use tkgraph::kg::query::{canned_query_locations, canned_query_top_events, resolve};
use tkgraph::kg::vocab::{expand, graph_iri, FUSED_GRAPH};
use tkgraph::kg::{to_tkg, Iri, QuadStore, Tkg};
use tkgraph::pipeline::{build, build_and_fuse, Manifest};
use tkgraph::timeline::{
    build_benchmark, build_feature_space, collect_candidates, generate_timeline, parse_abstract_links,
    parse_bio_annotations, render_html, render_tsv, split_entities, tm_baseline, train_instances, training_instances,
    Benchmark, BenchmarkInput, FeatureSpace, RelevanceModel,
};

use crate::config::CliConfig;
use crate::{Classify, Cli, CliError, Command, DataArgs, EvalCommand, QueryCommand};

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(anyhow!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::Internal(anyhow!("{}: {e}", path.display())))
}

fn label(path: &Path) -> String {
    path.display().to_string()
}

fn load_store(path: &Path) -> Result<QuadStore> {
    from_nquads(&read(path)?).map_err(|e| CliError::Input(anyhow!("{}: {e}", path.display())))
}

fn load_stats(path: &Path) -> Result<CorpusStats> {
    CorpusStats::from_tsv(&read(path)?, &label(path)).input()
}

fn load_benchmark(path: &Path) -> Result<Benchmark> {
    Benchmark::from_tsv(&read(path)?, &label(path)).input()
}

fn load_model(path: &Path) -> Result<RelevanceModel> {
    RelevanceModel::from_text(&read(path)?, &label(path)).input()
}

fn fused_tkg(store: &QuadStore) -> Result<Tkg> {
    if !store.iter().any(|q| q.graph == *FUSED_GRAPH && q.subject != *FUSED_GRAPH) {
        return Err(CliError::Input(anyhow!("store has no fused graph; run `tkgraph fuse` first")));
    }
    to_tkg(store, &FUSED_GRAPH).input()
}

/// Canonical resource of a prefixed or absolute identifier.
fn entity(store: &QuadStore, name: &str) -> Result<Iri> {
    let iri = expand(name).input()?;
    resolve(store, &iri).input()
}

fn load_data(data: &DataArgs) -> Result<(QuadStore, Tkg, CorpusStats)> {
    let store = load_store(&data.store)?;
    let tkg = fused_tkg(&store)?;
    let stats = load_stats(&data.stats)?;
    Ok((store, tkg, stats))
}

fn graph_summary(store: &QuadStore) -> String {
    let mut counts: BTreeMap<&str, usize> = store.graphs().map(|(g, _)| (g.local_name(), 0)).collect();
    for q in store.iter() {
        *counts.entry(q.graph.local_name()).or_default() += 1;
    }
    let mut out = String::from("graph\tquads\n");
    for (g, n) in counts {
        let _ = writeln!(out, "{g}\t{n}");
    }
    out
}

pub fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(p) => CliConfig::parse(&read(p)?).map_err(|e| CliError::Input(anyhow!("{}: {e}", p.display())))?,
        None => CliConfig::default(),
    };
    let seed = cli.seed;
    match cli.command {
        Command::Build { manifest, out, stats, fuse } => {
            let m = Manifest::load(&manifest).input()?;
            let built = if fuse { build_and_fuse(&m).input()?.0 } else { build(&m).input()? };
            write(&out, &to_nquads(&built.store))?;
            let stats_path = stats.unwrap_or_else(|| PathBuf::from(format!("{}.stats.tsv", out.display())));
            write(&stats_path, &built.stats.to_tsv())?;
            info!("wrote {} and {}", out.display(), stats_path.display());
            print!("{}", graph_summary(&built.store));
        }
        Command::Fuse { store, out, manifest } => {
            let mut s = load_store(&store)?;
            let mut fusion = match manifest {
                Some(p) => Manifest::load(&p).input()?.fusion_config().input()?,
                None => FusionConfig::default(),
            };
            for (g, rank) in &config.fusion.trust {
                fusion.trust_ranks.insert(graph_iri(g).input()?, *rank);
            }
            if let Some(strict) = config.fusion.strict {
                fusion.strict = strict;
            }
            let report = build_fused_graph(&mut s, &fusion).input()?;
            write(&out, &to_nquads(&s))?;
            println!("resources\t{}\nevents\t{}\nrelations\t{}", report.resources, report.events, report.relations);
            for cycle in &report.location_cycles {
                let names: Vec<&str> = cycle.iter().map(Iri::as_str).collect();
                println!("location_cycle\t{}", names.join(" -> "));
            }
        }
        Command::Stats { store, json } => {
            let s = store_stats(&load_store(&store)?);
            print!("{}", s.to_tsv());
            if let Some(p) = json {
                write(&p, &s.to_json())?;
            }
        }
        Command::Query { query } => match query {
            QueryCommand::Locations { store, event } => {
                let s = load_store(&store)?;
                let rows = canned_query_locations(&s, &expand(&event).input()?).input()?;
                println!("loc\tg");
                for (loc, g) in rows {
                    println!("{loc}\t{g}");
                }
            }
            QueryCommand::TopEvents { store, entity: name, graph, limit } => {
                let s = load_store(&store)?;
                let g = graph_iri(&graph).input()?;
                if !s.has_graph(&g) {
                    return Err(CliError::Input(anyhow!("store has no graph {graph}")));
                }
                let rows = canned_query_top_events(&s, &expand(&name).input()?, &g).input()?;
                println!("event\tcount\tstart");
                for r in rows.iter().take(limit.unwrap_or(usize::MAX)) {
                    let start = r.start.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
                    println!("{}\t{}\t{start}", r.event, r.count);
                }
            }
        },
        Command::Benchmark { store, bio, abstracts, out } => {
            let s = load_store(&store)?;
            let tkg = fused_tkg(&s)?;
            let canonical = |iri: &Iri| match resolve(&s, iri) {
                Ok(c) => c,
                Err(_) => {
                    debug!("{iri} is not in the store");
                    iri.clone()
                }
            };
            let input = match (bio, abstracts) {
                (Some(p), _) => {
                    let mut annotations = parse_bio_annotations(&read(&p)?, &label(&p)).input()?;
                    for a in &mut annotations {
                        a.person = resolve(&s, &a.person).input()?;
                        for r in &mut a.records {
                            r.linked_entities = r.linked_entities.iter().map(&canonical).collect();
                        }
                    }
                    BenchmarkInput::Bio(annotations)
                }
                (None, Some(p)) => {
                    let mut links = parse_abstract_links(&read(&p)?, &label(&p)).input()?;
                    for l in &mut links {
                        l.person = resolve(&s, &l.person).input()?;
                        l.events = l.events.iter().map(&canonical).collect();
                    }
                    BenchmarkInput::Abstracts(links)
                }
                (None, None) => return Err(CliError::Input(anyhow!("one of --bio or --abstracts is required"))),
            };
            let b = build_benchmark(&input, &tkg).input()?;
            write(&out, &b.to_tsv())?;
            println!("person\tcandidates\trelevant");
            for (p, js) in &b.judgements {
                println!("{p}\t{}\t{}", js.len(), js.values().filter(|j| **j).count());
            }
        }
        Command::Train { data, benchmark, model, split } => {
            let (_, tkg, stats) = load_data(&data)?;
            let b = load_benchmark(&benchmark)?;
            let persons = b.persons();
            let (train_persons, test_persons) = if split { split_entities(&persons, seed) } else { (persons, Vec::new()) };
            let mut candidates = Vec::new();
            for p in &train_persons {
                candidates.extend(collect_candidates(&tkg, p).input()?);
            }
            let space = build_feature_space(&candidates, &train_persons, &tkg, &stats).input()?;
            let (rows, labels) = training_instances(&b, &train_persons, &space, &tkg, &stats).input()?;
            let outcome = train_instances(&rows, &labels, &space, &config.train_config(seed)).input()?;
            write(&model, &outcome.model.to_text())?;
            println!("instances\t{}", rows.len());
            println!("features\t{}", space.len());
            println!("loss\t{:.6}", outcome.loss.last().copied().unwrap_or(0.0));
            if !test_persons.is_empty() {
                let (rows, gold) = training_instances(&b, &test_persons, &space, &tkg, &stats).input()?;
                let predicted = rows
                    .iter()
                    .map(|r| outcome.model.score(r).map(|s| s >= 0.0))
                    .collect::<std::result::Result<Vec<bool>, _>>()
                    .internal()?;
                let report = classification_metrics(&predicted, &gold).input()?;
                print!("{}", report.to_tsv());
            }
        }
        Command::Timeline { data, entity: name, model, html } => {
            let (store, tkg, stats) = load_data(&data)?;
            let m = load_model(&model)?;
            let timeline = generate_timeline(&entity(&store, &name)?, &m, &tkg, &stats).input()?;
            print!("{}", render_tsv(&timeline));
            if let Some(p) = html {
                write(&p, &render_html(&timeline))?;
            }
        }
        Command::BaselineTm { data, entity: name, k, min_frequency } => {
            let (store, tkg, stats) = load_data(&data)?;
            let mut tm = config.tm_config();
            if let Some(f) = min_frequency {
                tm.min_frequency = f;
            }
            let k = k.or(config.baseline.k).unwrap_or(10);
            let timeline = tm_baseline(&entity(&store, &name)?, &tkg, &stats, k, &tm).input()?;
            print!("{}", render_tsv(&timeline));
        }
        Command::Eval { eval } => run_eval(eval)?,
    }
    Ok(())
}

fn read_labels(path: &Path) -> Result<Vec<bool>> {
    read(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| match l.trim() {
            "1" | "true" => Ok(true),
            "0" | "false" => Ok(false),
            other => Err(CliError::Input(anyhow!("{}:{}: expected 0 or 1, got {other:?}", path.display(), i + 1))),
        })
        .collect()
}

fn run_eval(eval: EvalCommand) -> Result<()> {
    match eval {
        EvalCommand::Metrics { predictions, gold } => {
            let report = classification_metrics(&read_labels(&predictions)?, &read_labels(&gold)?).input()?;
            print!("{}", report.to_tsv());
            println!("zero_division\t{}", u8::from(report.zero_division));
        }
        EvalCommand::Pcc { data, benchmark, model } => {
            let (_, tkg, stats) = load_data(&data)?;
            let b = load_benchmark(&benchmark)?;
            let persons = b.persons();
            let space: FeatureSpace = match model {
                Some(p) => load_model(&p)?.space,
                None => {
                    let mut candidates = Vec::new();
                    for p in &persons {
                        candidates.extend(collect_candidates(&tkg, p).input()?);
                    }
                    build_feature_space(&candidates, &persons, &tkg, &stats).input()?
                }
            };
            let (rows, labels) = training_instances(&b, &persons, &space, &tkg, &stats).input()?;
            println!("feature\tpcc\tzero_variance");
            for (name, c) in feature_correlations(&rows, &labels, &space.names()).input()? {
                println!("{name}\t{:.6}\t{}", c.value, u8::from(c.zero_variance));
            }
        }
        EvalCommand::Coverage { store, benchmark, graphs } => {
            let s = load_store(&store)?;
            fused_tkg(&s)?;
            let b = load_benchmark(&benchmark)?;
            let graphs: Vec<Iri> = if graphs.is_empty() {
                s.graphs().map(|(g, _)| g.clone()).filter(|g| *g != *FUSED_GRAPH).collect()
            } else {
                graphs.iter().map(|g| graph_iri(g)).collect::<std::result::Result<_, _>>().input()?
            };
            println!("graph\tplain\textended\tpersons");
            for r in coverage(&b, &s, &graphs).input()? {
                println!("{}\t{:.6}\t{:.6}\t{}", r.graph.local_name(), r.plain, r.extended, r.persons);
            }
        }
        EvalCommand::Rpref { votes } => {
            let v = parse_votes(&read(&votes)?, &label(&votes)).input()?;
            println!("option\trpref");
            for (option, score) in rpref(&v).input()? {
                println!("{option}\t{score:.6}");
            }
        }
    }
    Ok(())
}
