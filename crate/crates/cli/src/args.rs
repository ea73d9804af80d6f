use std::path::PathBuf;

use cdwsd_core::eval::SweepAxis;
use cdwsd_core::{DensityFormula, Fallback, FormulaKind, RelationSet, Weighting, WsdConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cdwsd",
    version,
    about = "Conceptual-density word sense disambiguation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank the senses of one word given its context words.
    Disambiguate(DisambiguateArgs),
    /// Score a system on a sense-tagged corpus.
    Evaluate(EvaluateArgs),
    /// Evaluate the density system across the values of one parameter.
    Sweep(SweepArgs),
    /// Convert Semcor tag files into the corpus format.
    Ingest(IngestArgs),
}

#[derive(Debug, Args)]
pub struct DisambiguateArgs {
    /// WordNet database directory or compact lexicon file.
    #[arg(long, value_name = "PATH")]
    pub lexicon: PathBuf,
    /// Target lemma.
    #[arg(long, value_name = "LEMMA")]
    pub word: String,
    /// Whitespace-separated context nouns.
    #[arg(long, value_name = "WORDS", default_value = "")]
    pub context: String,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemKind {
    Cd,
    Lesk,
    Random,
    First,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// WordNet database directory or compact lexicon file.
    #[arg(long, value_name = "PATH")]
    pub lexicon: PathBuf,
    /// Corpus in the five-column TSV format.
    #[arg(long, value_name = "PATH")]
    pub corpus: PathBuf,
    #[arg(long, value_enum, default_value = "cd")]
    pub system: SystemKind,
    /// Seed of the random baseline; required by and only valid with `--system random`.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Output directory for overall.csv, categories.csv and the manifest.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// WordNet database directory or compact lexicon file.
    #[arg(long, value_name = "PATH")]
    pub lexicon: PathBuf,
    /// Corpus in the five-column TSV format.
    #[arg(long, value_name = "PATH")]
    pub corpus: PathBuf,
    /// One of relations, window, formula, top-cut, chain-limit, weighting.
    #[arg(long, value_name = "AXIS", value_parser = parse_axis)]
    pub axis: SweepAxis,
    /// Comma-separated values of the axis; relation sets join with `+`.
    #[arg(long, value_name = "LIST")]
    pub values: String,
    /// Output directory for sweep_<axis>.csv and its manifest.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Directory searched recursively for Semcor tag files.
    #[arg(long, value_name = "DIR")]
    pub semcor: PathBuf,
    /// WordNet database directory or compact lexicon file the sense numbers refer to.
    #[arg(long, value_name = "PATH")]
    pub lexicon: PathBuf,
    /// Corpus TSV to write; rejects go to `<PATH>.rejects.tsv`.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

/// Disambiguator settings. The defaults are the best-performing setup.
#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    #[arg(long, value_name = "FORMULA", default_value = "ar", value_parser = parse_formula)]
    pub formula: FormulaKind,
    /// SAR exponent; only valid with `--formula sar`.
    #[arg(long, value_name = "F")]
    pub alpha: Option<f64>,
    /// Context nouns taken on each side of the target.
    #[arg(long, value_name = "N", default_value_t = 150)]
    pub window: usize,
    /// Relations followed from a sense, joined with `+` (hypernym, hyponym, meronym, holonym).
    #[arg(long, value_name = "LIST", default_value = "hypernym", value_parser = parse_relations)]
    pub relations: RelationSet,
    #[arg(long, value_name = "W", default_value = "words", value_parser = parse_weighting)]
    pub weighting: Weighting,
    /// Maximum relation steps from a sense; 0 is unlimited.
    #[arg(long, value_name = "N", default_value_t = 2)]
    pub chain_limit: u32,
    /// Ignore concepts at depth up to N; 0 keeps all.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub top_cut: u32,
    /// What to do when no sense scores: `uniform` or `abstain`.
    #[arg(long, value_name = "MODE", default_value = "uniform", value_parser = parse_fallback)]
    pub fallback: Fallback,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<WsdConfig, String> {
        let formula = match (self.formula, self.alpha) {
            (FormulaKind::Sar, alpha) => {
                DensityFormula::sar(alpha.unwrap_or(cdwsd_core::density::DEFAULT_ALPHA))?
            }
            (_, Some(_)) => return Err("--alpha only applies to --formula sar".into()),
            (FormulaKind::Ar, None) => DensityFormula::ar(),
            (FormulaKind::Sdf, None) => DensityFormula::sdf(),
            (FormulaKind::Lf, None) => DensityFormula::lf(),
        };
        let cfg = WsdConfig {
            relations: self.relations,
            formula,
            window_radius: self.window,
            top_cut: self.top_cut,
            chain_limit: self.chain_limit,
            weighting: self.weighting,
            fallback: self.fallback,
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

fn parse_axis(s: &str) -> Result<SweepAxis, String> {
    s.parse()
        .map_err(|e: cdwsd_core::eval::SweepError| e.to_string())
}

fn parse_formula(s: &str) -> Result<FormulaKind, String> {
    s.parse()
}

fn parse_relations(s: &str) -> Result<RelationSet, String> {
    s.parse()
}

fn parse_weighting(s: &str) -> Result<Weighting, String> {
    s.parse()
}

fn parse_fallback(s: &str) -> Result<Fallback, String> {
    s.parse()
}
