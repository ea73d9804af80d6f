//! The semantic network: synsets, typed relation edges, the word index and
//! the per-concept hierarchy statistics that density scoring reads in its
//! inner loop.
//!
//! A [`SemanticNetwork`] is immutable once built. All statistics are computed
//! eagerly at load time, so a network can be shared by reference across any
//! number of scoring threads.

mod compact;
mod stats;
mod traverse;
mod wndb;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use compact::parse_compact_lexicon;
pub use stats::ConceptStats;
pub use traverse::ancestors_within;
pub use wndb::{load_wndb_dir, parse_wndb};

/// Stable external identifier of a concept.
///
/// For WNDB sources this is the synset's byte offset in `data.noun`, rendered
/// as a zero-padded 8-digit decimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConceptId(String);

impl ConceptId {
    pub fn new(id: impl Into<String>) -> Self {
        ConceptId(id.into())
    }

    pub fn from_offset(offset: u64) -> Self {
        ConceptId(format!("{offset:08}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ConceptId {
    fn from(s: &str) -> Self {
        ConceptId(s.to_owned())
    }
}

/// Dense index of a synset inside one [`SemanticNetwork`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Self {
        NodeId(u32::try_from(i).expect("network larger than u32::MAX nodes"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationType {
    Hypernym,
    Hyponym,
    Meronym,
    Holonym,
}

impl RelationType {
    pub const ALL: [RelationType; 4] = [
        RelationType::Hypernym,
        RelationType::Hyponym,
        RelationType::Meronym,
        RelationType::Holonym,
    ];

    pub fn inverse(self) -> Self {
        match self {
            RelationType::Hypernym => RelationType::Hyponym,
            RelationType::Hyponym => RelationType::Hypernym,
            RelationType::Meronym => RelationType::Holonym,
            RelationType::Holonym => RelationType::Meronym,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationType::Hypernym => "hypernym",
            RelationType::Hyponym => "hyponym",
            RelationType::Meronym => "meronym",
            RelationType::Holonym => "holonym",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hypernym" | "hypernymy" => Ok(RelationType::Hypernym),
            "hyponym" | "hyponymy" => Ok(RelationType::Hyponym),
            "meronym" | "meronymy" => Ok(RelationType::Meronym),
            "holonym" | "holonymy" => Ok(RelationType::Holonym),
            other => Err(format!("unknown relation `{other}`")),
        }
    }
}

/// A set of relation types along which marks propagate.
///
/// Rendered and parsed as `+`-joined names (`hypernym+meronym`); `,` is also
/// accepted as a separator when parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RelationSet(u8);

impl RelationSet {
    pub fn empty() -> Self {
        RelationSet(0)
    }

    pub fn only(r: RelationType) -> Self {
        RelationSet(r.bit())
    }

    pub fn with(self, r: RelationType) -> Self {
        RelationSet(self.0 | r.bit())
    }

    pub fn contains(self, r: RelationType) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = RelationType> {
        RelationType::ALL
            .into_iter()
            .filter(move |r| self.contains(*r))
    }
}

impl FromIterator<RelationType> for RelationSet {
    fn from_iter<I: IntoIterator<Item = RelationType>>(iter: I) -> Self {
        iter.into_iter()
            .fold(RelationSet::empty(), RelationSet::with)
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.iter().map(RelationType::name).collect();
        f.write_str(&names.join("+"))
    }
}

impl FromStr for RelationSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let set = s
            .split(['+', ','])
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<RelationSet, _>>()?;
        if set.is_empty() {
            return Err("empty relation set".into());
        }
        Ok(set)
    }
}

impl Serialize for RelationSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RelationSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone)]
pub struct Synset {
    pub id: ConceptId,
    pub lemmas: Vec<String>,
    pub gloss: String,
    pub edges: Vec<(RelationType, NodeId)>,
}

/// An edge whose target does not exist in the network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DanglingEdge {
    pub from: String,
    pub target: ConceptId,
}

impl fmt::Display for DanglingEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.target)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dangling targets: {}", join_edges(.0))]
    Dangling(Vec<DanglingEdge>),
    #[error("hypernym cycle involving {0}")]
    Cycle(ConceptId),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_edges(edges: &[DanglingEdge]) -> String {
    edges
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// A synset as read from a source file, before target resolution.
#[derive(Debug, Clone)]
pub(crate) struct RawSynset {
    pub id: ConceptId,
    pub lemmas: Vec<String>,
    pub gloss: String,
    pub edges: Vec<(RelationType, ConceptId)>,
}

/// Accumulates raw synsets and sense lists, then resolves, validates and
/// indexes them into a [`SemanticNetwork`].
#[derive(Debug, Default)]
pub(crate) struct NetworkBuilder {
    synsets: Vec<RawSynset>,
    senses: Vec<(String, Vec<ConceptId>)>,
}

impl NetworkBuilder {
    pub fn push_synset(&mut self, s: RawSynset) {
        self.synsets.push(s);
    }

    /// Records the ordered sense list of a lemma. Later calls for the same
    /// lemma append.
    pub fn push_senses(&mut self, lemma: String, senses: Vec<ConceptId>) {
        self.senses.push((lemma, senses));
    }

    pub fn build(self) -> Result<SemanticNetwork, LexiconError> {
        let mut by_id = HashMap::with_capacity(self.synsets.len());
        for (i, s) in self.synsets.iter().enumerate() {
            by_id.insert(s.id.clone(), NodeId::from_index(i));
        }

        let mut dangling = Vec::new();
        let mut synsets: Vec<Synset> = Vec::with_capacity(self.synsets.len());
        for raw in self.synsets {
            let mut edges = Vec::with_capacity(raw.edges.len());
            for (rel, target) in raw.edges {
                match by_id.get(&target) {
                    Some(&t) => edges.push((rel, t)),
                    None => dangling.push(DanglingEdge {
                        from: raw.id.to_string(),
                        target,
                    }),
                }
            }
            synsets.push(Synset {
                id: raw.id,
                lemmas: raw.lemmas,
                gloss: raw.gloss,
                edges,
            });
        }

        let mut word_index: HashMap<String, Vec<NodeId>> = HashMap::new();
        for (lemma, ids) in self.senses {
            let mut resolved = Vec::with_capacity(ids.len());
            for id in ids {
                match by_id.get(&id) {
                    Some(&n) => resolved.push(n),
                    None => dangling.push(DanglingEdge {
                        from: format!("word `{lemma}`"),
                        target: id,
                    }),
                }
            }
            let entry = word_index.entry(lemma).or_default();
            for n in resolved {
                if !entry.contains(&n) {
                    entry.push(n);
                }
            }
        }
        if !dangling.is_empty() {
            return Err(LexiconError::Dangling(dangling));
        }

        complete_inverses(&mut synsets);

        let roots = synsets
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.edges.iter().any(|(r, _)| *r == RelationType::Hypernym))
            .map(|(i, _)| NodeId::from_index(i))
            .collect();

        let stats = stats::compute_all(&synsets)?;

        Ok(SemanticNetwork {
            synsets,
            by_id,
            word_index,
            roots,
            stats,
        })
    }
}

/// Adds the inverse of every edge that lacks one, then sorts and dedups each
/// edge list so traversal order is independent of source layout quirks.
fn complete_inverses(synsets: &mut [Synset]) {
    let mut missing = Vec::new();
    for (i, s) in synsets.iter().enumerate() {
        let from = NodeId::from_index(i);
        for &(rel, t) in &s.edges {
            let inv = (rel.inverse(), from);
            if !synsets[t.index()].edges.contains(&inv) {
                missing.push((t, inv));
            }
        }
    }
    for (t, edge) in missing {
        synsets[t.index()].edges.push(edge);
    }
    for s in synsets.iter_mut() {
        s.edges.sort_unstable();
        s.edges.dedup();
    }
}

/// Immutable concept graph with its word index and hierarchy statistics.
#[derive(Debug, Clone)]
pub struct SemanticNetwork {
    synsets: Vec<Synset>,
    by_id: HashMap<ConceptId, NodeId>,
    word_index: HashMap<String, Vec<NodeId>>,
    roots: Vec<NodeId>,
    stats: Vec<ConceptStats>,
}

impl SemanticNetwork {
    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn synset(&self, n: NodeId) -> &Synset {
        &self.synsets[n.index()]
    }

    pub fn synsets(&self) -> impl Iterator<Item = (NodeId, &Synset)> {
        self.synsets
            .iter()
            .enumerate()
            .map(|(i, s)| (NodeId::from_index(i), s))
    }

    pub fn node(&self, id: &ConceptId) -> Option<NodeId> {
        self.by_id.get(id).copied()
    }

    pub fn id(&self, n: NodeId) -> &ConceptId {
        &self.synsets[n.index()].id
    }

    /// Concepts with no outgoing hypernym edge, in load order.
    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    /// Senses of `lemma` in source order; empty for unknown words.
    ///
    /// The lemma is lowercased before lookup.
    pub fn senses_of(&self, lemma: &str) -> &[NodeId] {
        let hit = self.word_index.get(lemma);
        let hit = match hit {
            Some(v) => Some(v),
            None if lemma.bytes().any(|b| b.is_ascii_uppercase()) || !lemma.is_ascii() => {
                self.word_index.get(&lemma.to_lowercase())
            }
            None => None,
        };
        hit.map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of distinct lemmas in the word index.
    pub fn vocabulary_len(&self) -> usize {
        self.word_index.len()
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.word_index.keys().map(String::as_str)
    }

    /// Precomputed hyponym-hierarchy statistics of `n`.
    pub fn stats(&self, n: NodeId) -> &ConceptStats {
        &self.stats[n.index()]
    }

    pub fn neighbors(&self, n: NodeId, rel: RelationType) -> impl Iterator<Item = NodeId> + '_ {
        self.synsets[n.index()]
            .edges
            .iter()
            .filter(move |(r, _)| *r == rel)
            .map(|(_, t)| *t)
    }
}

/// Statistics for a concept looked up by external id.
pub fn subtree_stats(id: &ConceptId, net: &SemanticNetwork) -> Option<ConceptStats> {
    net.node(id).map(|n| *net.stats(n))
}

/// Senses of `lemma` as external ids, in source order.
pub fn senses_of(lemma: &str, net: &SemanticNetwork) -> Vec<ConceptId> {
    net.senses_of(lemma)
        .iter()
        .map(|&n| net.id(n).clone())
        .collect()
}

pub(crate) fn normalize_lemma(s: &str) -> String {
    s.trim().to_lowercase()
}
