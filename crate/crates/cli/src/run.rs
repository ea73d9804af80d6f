use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use cdwsd_core::baselines::Stopwords;
use cdwsd_core::disambiguator::disambiguate;
use cdwsd_core::eval::{
    evaluate, ingest_semcor, load_corpus, sweep, write_category_csv, write_corpus,
    write_overall_csv, write_reject_log, ConceptDensity, CorpusItem, FirstSense, IngestOutcome,
    Lesk, RandomSense, WsdSystem,
};
use cdwsd_core::lexicon::{load_wndb_dir, parse_compact_lexicon, LexiconError};
use cdwsd_core::{SemanticNetwork, Token, WsdConfig};
use serde_json::json;
use tempfile::NamedTempFile;

use crate::args::{
    Cli, Command, DisambiguateArgs, EvaluateArgs, IngestArgs, SweepArgs, SystemKind,
};
use crate::manifest::{digest, RunManifest};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Domain(_) => 2,
            CliError::Input(_) | CliError::Io { .. } => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_owned(),
        source,
    }
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Disambiguate(a) => cmd_disambiguate(a),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Ingest(a) => cmd_ingest(a),
    }
}

/// `CDWSD_THREADS` caps the worker pool; unset or 0 leaves the default.
fn configure_threads() -> Result<(), CliError> {
    let Some(raw) = std::env::var_os("CDWSD_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .to_str()
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| CliError::Usage(format!("CDWSD_THREADS must be a number, got {raw:?}")))?;
    if n > 0 {
        // fails only if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

fn load_lexicon(path: &Path) -> Result<SemanticNetwork, CliError> {
    let loaded = if path.is_dir() {
        load_wndb_dir(path)
    } else {
        let file = File::open(path).map_err(io_err(path))?;
        parse_compact_lexicon(BufReader::new(file))
    };
    loaded.map_err(|e| match e {
        LexiconError::Io(source) => CliError::Io {
            path: path.to_owned(),
            source,
        },
        other => CliError::Input(format!("{}: {other}", path.display())),
    })
}

fn load_items(path: &Path) -> Result<Vec<CorpusItem>, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    load_corpus(BufReader::new(file))
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic<F>(path: &Path, fill: F) -> Result<(), CliError>
where
    F: FnOnce(&mut BufWriter<&mut NamedTempFile>) -> io::Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut tmp = NamedTempFile::new_in(dir).map_err(io_err(dir))?;
    {
        let mut w = BufWriter::new(&mut tmp);
        fill(&mut w).map_err(io_err(path))?;
        w.flush().map_err(io_err(path))?;
    }
    tmp.persist(path).map_err(|e| CliError::Io {
        path: path.to_owned(),
        source: e.error,
    })?;
    Ok(())
}

fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<(), CliError> {
    write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, manifest).map_err(io::Error::other)?;
        writeln!(w)
    })
}

fn digests(paths: &[&Path]) -> Result<Vec<crate::manifest::InputDigest>, CliError> {
    paths.iter().map(|p| digest(p).map_err(io_err(p))).collect()
}

fn cmd_disambiguate(a: DisambiguateArgs) -> Result<(), CliError> {
    let cfg = a.config.resolve().map_err(CliError::Usage)?;
    let net = load_lexicon(&a.lexicon)?;
    let word = a.word.trim().to_lowercase();
    if net.senses_of(&word).is_empty() {
        return Err(CliError::Domain(format!(
            "`{word}` is not a noun of the lexicon"
        )));
    }
    let mut doc = vec![Token::noun(word)];
    doc.extend(
        a.context
            .split_whitespace()
            .map(|w| Token::noun(w.to_lowercase())),
    );
    // the given context is the whole window
    let cfg = WsdConfig {
        window_radius: doc.len(),
        ..cfg
    };
    let dist = disambiguate(&doc, 0, &cfg, &net).map_err(|e| CliError::Domain(e.to_string()))?;
    if dist.abstained {
        eprintln!("cdwsd: no sense received any marks; abstaining");
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (id, p) in dist.ranked() {
        let lemmas = net
            .node(id)
            .map(|n| net.synset(n).lemmas.join(","))
            .unwrap_or_default();
        match writeln!(out, "{id}\t{p:.4}\t{lemmas}") {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => return Ok(()),
            r => r.map_err(io_err(Path::new("<stdout>")))?,
        }
    }
    Ok(())
}

fn cmd_evaluate(a: EvaluateArgs) -> Result<(), CliError> {
    let seed = match (a.system, a.seed) {
        (SystemKind::Random, Some(s)) => Some(s),
        (SystemKind::Random, None) => {
            return Err(CliError::Usage("--system random requires --seed".into()))
        }
        (_, Some(_)) => {
            return Err(CliError::Usage(
                "--seed is only valid with --system random".into(),
            ))
        }
        (_, None) => None,
    };
    let cfg = a.config.resolve().map_err(CliError::Usage)?;
    let net = load_lexicon(&a.lexicon)?;
    let corpus = load_items(&a.corpus)?;

    let system: Box<dyn WsdSystem> = match a.system {
        SystemKind::Cd => Box::new(ConceptDensity(cfg.clone())),
        SystemKind::Lesk => Box::new(Lesk {
            window_radius: cfg.window_radius,
            fallback: cfg.fallback,
            stopwords: Stopwords::builtin(),
        }),
        SystemKind::Random => Box::new(RandomSense {
            seed: seed.expect("checked above"),
        }),
        SystemKind::First => Box::new(FirstSense),
    };
    let report = evaluate(&corpus, system.as_ref(), &net);

    let overall = a.out.join("overall.csv");
    write_atomic(&overall, |w| {
        write_overall_csv(&[&report], w).map_err(io::Error::other)
    })?;
    let categories = a.out.join("categories.csv");
    write_atomic(&categories, |w| {
        write_category_csv(&report, w).map_err(io::Error::other)
    })?;
    let manifest = RunManifest::new(
        "evaluate",
        json!({ "system": report.system, "seed": seed, "wsd": cfg }),
        digests(&[&a.lexicon, &a.corpus])?,
    );
    write_manifest(&a.out.join("evaluate.manifest.json"), &manifest)?;

    println!(
        "{}: recall {:.4}, coverage {:.4}, random {:.4} over {} items",
        report.system, report.recall, report.coverage, report.random_recall, report.items
    );
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<(), CliError> {
    let base = a.config.resolve().map_err(CliError::Usage)?;
    let values: Vec<String> = a
        .values
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(str::to_owned)
        .collect();
    // reject bad values before any expensive loading
    cdwsd_core::eval::axis_configs(&base, a.axis, &values)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let net = load_lexicon(&a.lexicon)?;
    let corpus = load_items(&a.corpus)?;
    let report = sweep(&corpus, &net, &base, a.axis, &values)
        .map_err(|e| CliError::Domain(e.to_string()))?;

    let name = format!("sweep_{}", a.axis);
    let csv_path = a.out.join(format!("{name}.csv"));
    write_atomic(&csv_path, |w| report.write_csv(w).map_err(io::Error::other))?;
    let manifest = RunManifest::new(
        "sweep",
        json!({ "axis": a.axis.name(), "values": values, "base": base }),
        digests(&[&a.lexicon, &a.corpus])?,
    );
    write_manifest(&a.out.join(format!("{name}.manifest.json")), &manifest)?;

    for row in &report.rows {
        println!(
            "{}\trecall {:.4}\tcoverage {:.4}",
            row.label, row.recall, row.coverage
        );
    }
    Ok(())
}

fn cmd_ingest(a: IngestArgs) -> Result<(), CliError> {
    let mut files = Vec::new();
    fs::read_dir(&a.semcor).map_err(io_err(&a.semcor))?;
    for entry in walkdir::WalkDir::new(&a.semcor).sort_by_file_name() {
        let entry = entry.map_err(|e| CliError::Io {
            path: a.semcor.clone(),
            source: e.into(),
        })?;
        if entry.file_type().is_file() && !entry.file_name().to_string_lossy().starts_with('.') {
            files.push(entry.into_path());
        }
    }
    let net = load_lexicon(&a.lexicon)?;

    let mut all = IngestOutcome::default();
    for path in &files {
        let bytes = fs::read(path).map_err(io_err(path))?;
        let doc_id = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let outcome = ingest_semcor(&String::from_utf8_lossy(&bytes), &doc_id, &net)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        all.items.extend(outcome.items);
        all.rejects.extend(outcome.rejects);
    }

    write_atomic(&a.out, |w| write_corpus(&all.items, w))?;
    let mut rejects = a.out.clone().into_os_string();
    rejects.push(".rejects.tsv");
    write_atomic(Path::new(&rejects), |w| write_reject_log(&all.rejects, w))?;
    let mut manifest_path = a.out.clone().into_os_string();
    manifest_path.push(".manifest.json");
    let manifest = RunManifest::new("ingest", json!({}), digests(&[&a.semcor, &a.lexicon])?);
    write_manifest(Path::new(&manifest_path), &manifest)?;

    let docs: BTreeSet<&str> = all.items.iter().map(|it| it.doc_id.as_str()).collect();
    println!(
        "{} items from {} documents, {} rejected",
        all.items.len(),
        docs.len(),
        all.rejects.len()
    );
    Ok(())
}
