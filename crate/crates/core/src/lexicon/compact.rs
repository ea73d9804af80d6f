//! Tab-separated lexicon format used for small hand-built networks:
//!
//! ```text
//! id <TAB> lemma1,lemma2 <TAB> rel:target;rel:target <TAB> gloss
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. A lemma's senses are
//! ordered by the line on which they appear.

use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use super::{normalize_lemma, ConceptId, LexiconError, NetworkBuilder, RawSynset, SemanticNetwork};

pub fn parse_compact_lexicon<R: BufRead>(reader: R) -> Result<SemanticNetwork, LexiconError> {
    let mut builder = NetworkBuilder::default();
    let mut seen = HashSet::new();
    let mut senses: Vec<(String, Vec<ConceptId>)> = Vec::new();
    let mut sense_slot: HashMap<String, usize> = HashMap::new();

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let err = |msg: String| LexiconError::Parse { line: lineno, msg };
        let trimmed = line.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut cols = trimmed.splitn(4, '\t');
        let id = cols.next().unwrap_or("").trim();
        if id.is_empty() {
            return Err(err("empty concept id".into()));
        }
        let id = ConceptId::new(id);
        if !seen.insert(id.clone()) {
            return Err(err(format!("duplicate concept id {id}")));
        }

        let lemmas: Vec<String> = cols
            .next()
            .unwrap_or("")
            .split(',')
            .map(normalize_lemma)
            .filter(|l| !l.is_empty())
            .collect();
        if lemmas.is_empty() {
            return Err(err(format!("concept {id} has no lemmas")));
        }

        let mut edges = Vec::new();
        for tok in cols
            .next()
            .unwrap_or("")
            .split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
        {
            let (rel, target) = tok
                .split_once(':')
                .ok_or_else(|| err(format!("relation token `{tok}` is not rel:target")))?;
            let rel = rel.parse().map_err(err)?;
            edges.push((rel, ConceptId::new(target.trim())));
        }

        let gloss = cols.next().unwrap_or("").trim().to_owned();

        for lemma in &lemmas {
            let slot = *sense_slot.entry(lemma.clone()).or_insert_with(|| {
                senses.push((lemma.clone(), Vec::new()));
                senses.len() - 1
            });
            senses[slot].1.push(id.clone());
        }
        builder.push_synset(RawSynset {
            id,
            lemmas,
            gloss,
            edges,
        });
    }

    for (lemma, ids) in senses {
        builder.push_senses(lemma, ids);
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::RelationType;

    fn parse(s: &str) -> Result<SemanticNetwork, LexiconError> {
        parse_compact_lexicon(s.as_bytes())
    }

    #[test]
    fn empty_stream_is_empty_network() {
        let net = parse("").unwrap();
        assert!(net.is_empty());
        assert!(net.roots().is_empty());
    }

    #[test]
    fn unknown_relation_token_is_rejected() {
        let err = parse("a\tthing\t\t\nb\tbit\txyz:a\tgloss\n").unwrap_err();
        match err {
            LexiconError::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("xyz"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let err = parse("a\tx\t\t\na\ty\t\t\n").unwrap_err();
        assert!(matches!(err, LexiconError::Parse { line: 2, .. }));
    }

    #[test]
    fn dangling_target_is_rejected() {
        let err = parse("a\tx\thypernym:nowhere\t\n").unwrap_err();
        assert!(matches!(err, LexiconError::Dangling(ref v) if v[0].target.as_str() == "nowhere"));
    }

    #[test]
    fn inverse_edges_are_completed() {
        let net = parse("top\tthing\t\troot\nleaf\tBit,piece\thypernym:top\ta bit\n").unwrap();
        let top = net.node(&"top".into()).unwrap();
        let leaf = net.node(&"leaf".into()).unwrap();
        assert_eq!(
            net.neighbors(top, RelationType::Hyponym)
                .collect::<Vec<_>>(),
            vec![leaf]
        );
        assert_eq!(net.senses_of("bit"), &[leaf]);
        assert_eq!(net.senses_of("Piece"), &[leaf]);
        assert_eq!(net.roots(), &[top]);
    }

    #[test]
    fn hypernym_cycle_is_rejected() {
        let err = parse("a\tx\thypernym:b\t\nb\ty\thypernym:a\t\n").unwrap_err();
        assert!(matches!(err, LexiconError::Cycle(_)));
    }
}
