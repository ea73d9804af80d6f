//! Reader for the WordNet database noun files (`data.noun`, `index.noun`).

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::{
    normalize_lemma, ConceptId, LexiconError, NetworkBuilder, RawSynset, RelationType,
    SemanticNetwork,
};

fn pointer_relation(symbol: &str) -> Option<RelationType> {
    match symbol {
        "@" | "@i" => Some(RelationType::Hypernym),
        "~" | "~i" => Some(RelationType::Hyponym),
        "%p" | "%m" | "%s" => Some(RelationType::Meronym),
        "#p" | "#m" | "#s" => Some(RelationType::Holonym),
        _ => None,
    }
}

fn parse_err(file: &str, line: usize, msg: impl Into<String>) -> LexiconError {
    LexiconError::Parse {
        line,
        msg: format!("{file}: {}", msg.into()),
    }
}

/// Iterates over non-header lines, yielding 1-based line numbers.
fn content_lines<R: BufRead>(
    mut reader: R,
) -> impl Iterator<Item = Result<(usize, String), std::io::Error>> {
    let mut buf = Vec::new();
    let mut lineno = 0usize;
    std::iter::from_fn(move || loop {
        buf.clear();
        match reader.read_until(b'\n', &mut buf) {
            Ok(0) => return None,
            Ok(_) => {
                lineno += 1;
                if buf.starts_with(b"  ") {
                    continue;
                }
                let line = String::from_utf8_lossy(&buf);
                let line = line.trim_end_matches(['\n', '\r']);
                if line.trim().is_empty() {
                    continue;
                }
                return Some(Ok((lineno, line.to_owned())));
            }
            Err(e) => return Some(Err(e)),
        }
    })
}

fn parse_data_line(line: &str, lineno: usize) -> Result<RawSynset, LexiconError> {
    let err = |msg: &str| parse_err("data.noun", lineno, msg);
    let (head, gloss) = match line.split_once('|') {
        Some((h, g)) => (h, g.trim()),
        None => (line, ""),
    };
    let fields: Vec<&str> = head.split_whitespace().collect();
    if fields.len() < 4 {
        return Err(err("truncated synset record"));
    }
    let offset: u64 = fields[0].parse().map_err(|_| err("bad synset offset"))?;
    let word_count = usize::from_str_radix(fields[3], 16).map_err(|_| err("bad word count"))?;
    let mut pos = 4;
    let mut lemmas = Vec::with_capacity(word_count);
    for _ in 0..word_count {
        let word = fields.get(pos).ok_or_else(|| err("missing word"))?;
        // `lex_id` follows each word
        fields.get(pos + 1).ok_or_else(|| err("missing lex_id"))?;
        let lemma = normalize_lemma(word);
        if !lemmas.contains(&lemma) {
            lemmas.push(lemma);
        }
        pos += 2;
    }
    if lemmas.is_empty() {
        return Err(err("synset without words"));
    }
    let pointer_count: usize = fields
        .get(pos)
        .ok_or_else(|| err("missing pointer count"))?
        .parse()
        .map_err(|_| err("bad pointer count"))?;
    pos += 1;
    let mut edges = Vec::new();
    for _ in 0..pointer_count {
        if pos + 4 > fields.len() {
            return Err(err("truncated pointer list"));
        }
        let (symbol, target, target_pos) = (fields[pos], fields[pos + 1], fields[pos + 2]);
        pos += 4;
        if target_pos != "n" {
            continue;
        }
        if let Some(rel) = pointer_relation(symbol) {
            let t: u64 = target.parse().map_err(|_| err("bad pointer offset"))?;
            edges.push((rel, ConceptId::from_offset(t)));
        }
    }
    Ok(RawSynset {
        id: ConceptId::from_offset(offset),
        lemmas,
        gloss: gloss.to_owned(),
        edges,
    })
}

fn parse_index_line(line: &str, lineno: usize) -> Result<(String, Vec<ConceptId>), LexiconError> {
    let err = |msg: &str| parse_err("index.noun", lineno, msg);
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() < 4 {
        return Err(err("truncated index record"));
    }
    let lemma = normalize_lemma(fields[0]);
    let synset_count: usize = fields[2].parse().map_err(|_| err("bad synset count"))?;
    let pointer_count: usize = fields[3].parse().map_err(|_| err("bad pointer count"))?;
    // lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt offsets...
    let first = 4 + pointer_count + 2;
    if fields.len() < first + synset_count {
        return Err(err("truncated offset list"));
    }
    let senses = fields[first..first + synset_count]
        .iter()
        .map(|f| {
            f.parse::<u64>()
                .map(ConceptId::from_offset)
                .map_err(|_| err("bad synset offset"))
        })
        .collect::<Result<_, _>>()?;
    Ok((lemma, senses))
}

/// Builds a network from a matched `data.noun` / `index.noun` pair.
pub fn parse_wndb<D: BufRead, I: BufRead>(
    data: D,
    index: I,
) -> Result<SemanticNetwork, LexiconError> {
    let mut builder = NetworkBuilder::default();
    for line in content_lines(data) {
        let (lineno, line) = line?;
        builder.push_synset(parse_data_line(&line, lineno)?);
    }
    for line in content_lines(index) {
        let (lineno, line) = line?;
        let (lemma, senses) = parse_index_line(&line, lineno)?;
        builder.push_senses(lemma, senses);
    }
    builder.build()
}

/// Loads `data.noun` and `index.noun` from a WordNet `dict` directory.
pub fn load_wndb_dir(dir: &Path) -> Result<SemanticNetwork, LexiconError> {
    let data = BufReader::new(File::open(dir.join("data.noun"))?);
    let index = BufReader::new(File::open(dir.join("index.noun"))?);
    parse_wndb(data, index)
}
