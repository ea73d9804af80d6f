//! Conceptual-density disambiguation of one target word in its context.
//!
//! The procedure has three steps. Every sense of every noun in a window
//! around the target (the target included) deposits marks on the concepts it
//! reaches through the configured relations. Each sense of the target is then
//! scored by the densest concept it reaches. The sense scores are normalized
//! into a [`SenseDistribution`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::density::{conceptual_density, DensityFormula};
use crate::distribution::{Fallback, SenseDistribution};
use crate::lexicon::{
    ancestors_within, ConceptId, NodeId, RelationSet, RelationType, SemanticNetwork,
};

/// How a word sense's marks are counted at the concepts it reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    /// One mark per sense.
    Synsets,
    /// `1 / polysemy` per sense.
    Fractional,
    /// Number of distinct words with some sense below the concept.
    Words,
}

impl Weighting {
    pub const ALL: [Weighting; 3] = [Weighting::Synsets, Weighting::Fractional, Weighting::Words];
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weighting::Synsets => "synsets",
            Weighting::Fractional => "fractional",
            Weighting::Words => "words",
        })
    }
}

impl FromStr for Weighting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "synsets" => Ok(Weighting::Synsets),
            "fractional" => Ok(Weighting::Fractional),
            "words" => Ok(Weighting::Words),
            other => Err(format!("unknown weighting `{other}`")),
        }
    }
}

/// Every tunable of the disambiguator.
///
/// The default is the best-performing configuration: AR density over
/// hypernymy, word weighting, chains of at most two steps, a 150-noun radius
/// and uniform fallback.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WsdConfig {
    pub relations: RelationSet,
    pub formula: DensityFormula,
    /// Nouns taken on each side of the target.
    pub window_radius: usize,
    /// Concepts at global depth `<= top_cut` are ignored; 0 keeps all.
    pub top_cut: u32,
    /// Maximum relation steps from a sense to a concept; 0 is unlimited.
    pub chain_limit: u32,
    pub weighting: Weighting,
    pub fallback: Fallback,
}

impl Default for WsdConfig {
    fn default() -> Self {
        WsdConfig {
            relations: RelationSet::only(RelationType::Hypernym),
            formula: DensityFormula::ar(),
            window_radius: 150,
            top_cut: 0,
            chain_limit: 2,
            weighting: Weighting::Words,
            fallback: Fallback::Uniform,
        }
    }
}

impl WsdConfig {
    /// The unmodified Agirre-Rigau setup: SAR, synset weighting, no limits.
    pub fn original() -> Self {
        WsdConfig {
            formula: DensityFormula::sar(crate::density::DEFAULT_ALPHA)
                .expect("default alpha is valid"),
            chain_limit: 0,
            weighting: Weighting::Synsets,
            fallback: Fallback::Abstain,
            ..WsdConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), WsdError> {
        if self.relations.is_empty() {
            return Err(WsdError::Config("relation set is empty".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WsdError {
    #[error("cannot disambiguate `{0}`: not a known noun")]
    UnknownWord(String),
    #[error("token position {0} is outside the document")]
    OutOfRange(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub lemma: String,
    pub noun: bool,
}

impl Token {
    pub fn noun(lemma: impl Into<String>) -> Self {
        Token {
            lemma: lemma.into(),
            noun: true,
        }
    }

    pub fn other(lemma: impl Into<String>) -> Self {
        Token {
            lemma: lemma.into(),
            noun: false,
        }
    }
}

/// A target noun and the nouns around it.
///
/// `context` holds at most `radius` nouns on each side of the target, in
/// document order, and never the target itself. Only nouns with at least one
/// sense are counted.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub target: usize,
    pub target_lemma: String,
    pub context: Vec<(String, usize)>,
    pub radius: usize,
}

impl Window {
    /// All words that deposit marks: the target first, then the context.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.target_lemma.as_str())
            .chain(self.context.iter().map(|(l, _)| l.as_str()))
    }
}

fn is_known_noun(t: &Token, net: &SemanticNetwork) -> bool {
    t.noun && !net.senses_of(&t.lemma).is_empty()
}

/// Window around `known[k]`, where `known` lists the positions of all known
/// nouns in `doc`.
pub(crate) fn window_from_known(doc: &[Token], known: &[usize], k: usize, radius: usize) -> Window {
    let lo = k.saturating_sub(radius);
    let hi = (k + radius + 1).min(known.len());
    let context = known[lo..hi]
        .iter()
        .filter(|&&p| p != known[k])
        .map(|&p| (doc[p].lemma.clone(), p))
        .collect();
    Window {
        target: known[k],
        target_lemma: doc[known[k]].lemma.clone(),
        context,
        radius,
    }
}

pub(crate) fn known_positions(doc: &[Token], net: &SemanticNetwork) -> Vec<usize> {
    doc.iter()
        .enumerate()
        .filter(|(_, t)| is_known_noun(t, net))
        .map(|(i, _)| i)
        .collect()
}

pub fn build_window(
    doc: &[Token],
    target: usize,
    radius: usize,
    net: &SemanticNetwork,
) -> Result<Window, WsdError> {
    let token = doc.get(target).ok_or(WsdError::OutOfRange(target))?;
    if !is_known_noun(token, net) {
        return Err(WsdError::UnknownWord(token.lemma.clone()));
    }
    let known = known_positions(doc, net);
    let k = known
        .binary_search(&target)
        .expect("target is a known noun");
    Ok(window_from_known(doc, &known, k, radius))
}

/// Marks accumulated at one concept.
#[derive(Debug, Clone, Default)]
struct MarkEntry {
    total: f64,
    distinct: u32,
    /// Bitset over the window's distinct lemmas.
    words: Vec<u64>,
}

impl MarkEntry {
    fn add_word(&mut self, word: u32) -> bool {
        let (slot, bit) = ((word / 64) as usize, 1u64 << (word % 64));
        if self.words.len() <= slot {
            self.words.resize(slot + 1, 0);
        }
        let fresh = self.words[slot] & bit == 0;
        if fresh {
            self.words[slot] |= bit;
            self.distinct += 1;
        }
        fresh
    }
}

/// Per-concept marks deposited by the words of one window.
#[derive(Debug, Clone, Default)]
pub struct MarkTable {
    entries: HashMap<NodeId, MarkEntry>,
    lemmas: Vec<String>,
}

impl MarkTable {
    /// Marks at `concept` (0 if untouched).
    pub fn marks(&self, concept: NodeId) -> f64 {
        self.entries.get(&concept).map_or(0.0, |e| e.total)
    }

    /// Distinct words that contributed to `concept`, in window order.
    pub fn contributors(&self, concept: NodeId) -> Vec<&str> {
        let Some(e) = self.entries.get(&concept) else {
            return Vec::new();
        };
        self.lemmas
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                e.words
                    .get(i / 64)
                    .is_some_and(|w| w & (1 << (i % 64)) != 0)
            })
            .map(|(_, l)| l.as_str())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn concepts(&self) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.entries.iter().map(|(n, e)| (*n, e.total))
    }
}

/// Worker-local memo of `ancestors_within` for one configuration.
pub struct AncestorCache<'a> {
    net: &'a SemanticNetwork,
    relations: RelationSet,
    chain_limit: u32,
    top_cut: u32,
    memo: HashMap<NodeId, Vec<(NodeId, u32)>>,
}

impl<'a> AncestorCache<'a> {
    pub fn new(net: &'a SemanticNetwork, cfg: &WsdConfig) -> Self {
        AncestorCache {
            net,
            relations: cfg.relations,
            chain_limit: cfg.chain_limit,
            top_cut: cfg.top_cut,
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, sense: NodeId) -> &[(NodeId, u32)] {
        let (net, relations, l, k) = (self.net, self.relations, self.chain_limit, self.top_cut);
        self.memo
            .entry(sense)
            .or_insert_with(|| ancestors_within(sense, relations, l, k, net))
    }
}

fn collect_marks_cached(
    window: &Window,
    cfg: &WsdConfig,
    cache: &mut AncestorCache<'_>,
) -> MarkTable {
    let net = cache.net;
    let mut table = MarkTable::default();
    let mut lemma_ids: HashMap<&str, u32> = HashMap::new();
    for word in window.words() {
        let next = lemma_ids.len() as u32;
        let word_id = *lemma_ids.entry(word).or_insert_with(|| {
            table.lemmas.push(word.to_owned());
            next
        });
        let senses = net.senses_of(word);
        if senses.is_empty() {
            continue;
        }
        let weight = match cfg.weighting {
            Weighting::Fractional => 1.0 / senses.len() as f64,
            _ => 1.0,
        };
        for &sense in senses {
            for &(concept, _) in cache.get(sense) {
                let entry = table.entries.entry(concept).or_default();
                let fresh = entry.add_word(word_id);
                match cfg.weighting {
                    Weighting::Words => {
                        if fresh {
                            entry.total = f64::from(entry.distinct);
                        }
                    }
                    _ => entry.total += weight,
                }
            }
        }
    }
    table
}

/// Deposits the marks of every word in `window`, the target included.
pub fn collect_marks(window: &Window, cfg: &WsdConfig, net: &SemanticNetwork) -> MarkTable {
    collect_marks_cached(window, cfg, &mut AncestorCache::new(net, cfg))
}

/// The unnormalized score of one sense and the concept that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SenseScore {
    pub sense: NodeId,
    pub raw: f64,
    /// Densest candidate concept and its distance from the sense.
    pub best: Option<(NodeId, u32)>,
}

/// Candidate concepts for a sense start one step away from it: the sense's
/// own synset always holds that sense's mark and would otherwise dominate
/// every sparse context.
const MIN_CANDIDATE_DISTANCE: u32 = 1;

fn best_candidate(
    candidates: &[(NodeId, u32)],
    marks: &MarkTable,
    cfg: &WsdConfig,
    net: &SemanticNetwork,
) -> (f64, Option<(NodeId, u32)>) {
    let mut best: Option<(NodeId, u32)> = None;
    let mut best_density = 0.0;
    for &(concept, dist) in candidates {
        if dist < MIN_CANDIDATE_DISTANCE {
            continue;
        }
        let m = marks.marks(concept);
        if m <= 0.0 {
            continue;
        }
        let density = conceptual_density(&cfg.formula, net.stats(concept), m);
        let better = match best {
            None => density > 0.0,
            Some((current, _)) => {
                density > best_density
                    || (density == best_density && prefer_on_tie(concept, current, net))
            }
        };
        if better {
            best = Some((concept, dist));
            best_density = density;
        }
    }
    (best_density, best)
}

/// Deeper concept first, then the smaller id.
fn prefer_on_tie(a: NodeId, b: NodeId, net: &SemanticNetwork) -> bool {
    let (da, db) = (net.stats(a).depth, net.stats(b).depth);
    da > db || (da == db && net.id(a) < net.id(b))
}

fn score_cached(
    target_lemma: &str,
    marks: &MarkTable,
    cfg: &WsdConfig,
    cache: &mut AncestorCache<'_>,
) -> Result<Vec<SenseScore>, WsdError> {
    let net = cache.net;
    let senses = net.senses_of(target_lemma);
    if senses.is_empty() {
        return Err(WsdError::UnknownWord(target_lemma.to_owned()));
    }
    Ok(senses
        .iter()
        .map(|&sense| {
            let (raw, best) = best_candidate(cache.get(sense), marks, cfg, net);
            SenseScore { sense, raw, best }
        })
        .collect())
}

/// Raw per-sense densities, in source sense order.
pub fn raw_sense_scores(
    target_lemma: &str,
    marks: &MarkTable,
    cfg: &WsdConfig,
    net: &SemanticNetwork,
) -> Result<Vec<SenseScore>, WsdError> {
    score_cached(target_lemma, marks, cfg, &mut AncestorCache::new(net, cfg))
}

fn normalize(scores: &[SenseScore], cfg: &WsdConfig, net: &SemanticNetwork) -> SenseDistribution {
    let ids = scores.iter().map(|s| net.id(s.sense).clone()).collect();
    let raw: Vec<f64> = scores.iter().map(|s| s.raw).collect();
    SenseDistribution::from_raw(ids, &raw, cfg.fallback)
}

pub fn score_senses(
    target_lemma: &str,
    marks: &MarkTable,
    cfg: &WsdConfig,
    net: &SemanticNetwork,
) -> Result<SenseDistribution, WsdError> {
    let scores = raw_sense_scores(target_lemma, marks, cfg, net)?;
    Ok(normalize(&scores, cfg, net))
}

/// Window, marks and normalized scores for one target in one call.
pub fn disambiguate(
    doc: &[Token],
    target: usize,
    cfg: &WsdConfig,
    net: &SemanticNetwork,
) -> Result<SenseDistribution, WsdError> {
    cfg.validate()?;
    let window = build_window(doc, target, cfg.window_radius, net)?;
    let marks = collect_marks(&window, cfg, net);
    score_senses(&window.target_lemma, &marks, cfg, net)
}

/// Result for one noun token of a document.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenSenses {
    pub position: usize,
    pub lemma: String,
    pub distribution: SenseDistribution,
}

/// Disambiguates every noun token of `doc`. Nouns without senses yield an
/// abstention with no entries.
pub fn disambiguate_document(
    doc: &[Token],
    cfg: &WsdConfig,
    net: &SemanticNetwork,
) -> Result<Vec<TokenSenses>, WsdError> {
    cfg.validate()?;
    let known = known_positions(doc, net);
    let mut cache = AncestorCache::new(net, cfg);
    let mut out = Vec::new();
    let mut k = 0;
    for (position, token) in doc.iter().enumerate() {
        if !token.noun {
            continue;
        }
        let distribution = if known.get(k) == Some(&position) {
            let window = window_from_known(doc, &known, k, cfg.window_radius);
            k += 1;
            let marks = collect_marks_cached(&window, cfg, &mut cache);
            let scores = score_cached(&window.target_lemma, &marks, cfg, &mut cache)?;
            normalize(&scores, cfg, net)
        } else {
            SenseDistribution::abstain(Vec::new())
        };
        out.push(TokenSenses {
            position,
            lemma: token.lemma.clone(),
            distribution,
        });
    }
    Ok(out)
}

/// External ids of the senses of `lemma`.
pub(crate) fn sense_ids(lemma: &str, net: &SemanticNetwork) -> Vec<ConceptId> {
    net.senses_of(lemma)
        .iter()
        .map(|&n| net.id(n).clone())
        .collect()
}
