//! Normalized corpus format: one noun instance per line,
//!
//! ```text
//! doc_id <TAB> category <TAB> position <TAB> lemma <TAB> gold_id[,gold_id...]
//! ```

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use crate::disambiguator::Token;
use crate::lexicon::ConceptId;

/// A Brown Corpus text category, `A` through `R` without `I`, `O` and `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Category(char);

impl Category {
    pub const ALL: [char; 15] = [
        'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'J', 'K', 'L', 'M', 'N', 'P', 'R',
    ];

    pub fn new(code: char) -> Option<Self> {
        let code = code.to_ascii_uppercase();
        Self::ALL.contains(&code).then_some(Category(code))
    }

    pub fn code(self) -> char {
        self.0
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            'A' => "Press: reportage",
            'B' => "Press: editorial",
            'C' => "Press: reviews",
            'D' => "Religion",
            'E' => "Skills & hobbies",
            'F' => "Popular lore",
            'G' => "Belles lettres, biography, essays",
            'H' => "Miscellaneous",
            'J' => "Learned",
            'K' => "General fiction",
            'L' => "Mystery & detective fiction",
            'M' => "Science fiction",
            'N' => "Adventure & western fiction",
            'P' => "Romance & love story",
            'R' => "Humor",
            _ => unreachable!("validated at construction"),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusItem {
    pub doc_id: String,
    pub category: Category,
    pub position: usize,
    pub lemma: String,
    pub gold: Vec<ConceptId>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate position {position} in document {doc_id} (first seen on line {first_line})")]
    Duplicate {
        line: usize,
        doc_id: String,
        position: usize,
        first_line: usize,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn load_corpus<R: BufRead>(reader: R) -> Result<Vec<CorpusItem>, CorpusError> {
    let mut items = Vec::new();
    let mut seen: HashMap<(String, usize), usize> = HashMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let err = |msg: String| CorpusError::Parse { line: lineno, msg };
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(err(format!(
                "expected 5 tab-separated fields, found {}",
                cols.len()
            )));
        }
        let doc_id = cols[0].trim();
        if doc_id.is_empty() {
            return Err(err("empty doc_id".into()));
        }
        let mut code = cols[1].trim().chars();
        let category = match (code.next(), code.next()) {
            (Some(c), None) => Category::new(c),
            _ => None,
        }
        .ok_or_else(|| err(format!("bad category code `{}`", cols[1])))?;
        let position: usize = cols[2]
            .trim()
            .parse()
            .map_err(|_| err(format!("bad position `{}`", cols[2])))?;
        let lemma = cols[3].trim().to_lowercase();
        if lemma.is_empty() {
            return Err(err("empty lemma".into()));
        }
        let gold: Vec<ConceptId> = cols[4]
            .split(',')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(ConceptId::new)
            .collect();
        if gold.is_empty() {
            return Err(err("empty gold field".into()));
        }
        if let Some(&first_line) = seen.get(&(doc_id.to_owned(), position)) {
            return Err(CorpusError::Duplicate {
                line: lineno,
                doc_id: doc_id.to_owned(),
                position,
                first_line,
            });
        }
        seen.insert((doc_id.to_owned(), position), lineno);
        items.push(CorpusItem {
            doc_id: doc_id.to_owned(),
            category,
            position,
            lemma,
            gold,
        });
    }
    Ok(items)
}

pub fn write_corpus<W: Write>(items: &[CorpusItem], mut w: W) -> std::io::Result<()> {
    for it in items {
        let gold: Vec<&str> = it.gold.iter().map(ConceptId::as_str).collect();
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}",
            it.doc_id,
            it.category,
            it.position,
            it.lemma,
            gold.join(",")
        )?;
    }
    Ok(())
}

/// The items of one document in position order, viewed as a noun sequence.
#[derive(Debug, Clone)]
pub struct CorpusDocument {
    pub doc_id: String,
    pub items: Vec<CorpusItem>,
    /// Index of each item in the corpus it came from.
    pub indices: Vec<usize>,
}

impl CorpusDocument {
    pub fn tokens(&self) -> Vec<Token> {
        self.items
            .iter()
            .map(|it| Token::noun(it.lemma.clone()))
            .collect()
    }
}

/// Groups items by document, in order of each document's first item.
pub fn group_documents(items: &[CorpusItem]) -> Vec<CorpusDocument> {
    let mut slot: HashMap<&str, usize> = HashMap::new();
    let mut members: Vec<(String, Vec<usize>)> = Vec::new();
    for (i, it) in items.iter().enumerate() {
        let s = *slot.entry(it.doc_id.as_str()).or_insert_with(|| {
            members.push((it.doc_id.clone(), Vec::new()));
            members.len() - 1
        });
        members[s].1.push(i);
    }
    members
        .into_iter()
        .map(|(doc_id, mut idx)| {
            idx.sort_by_key(|&i| items[i].position);
            CorpusDocument {
                doc_id,
                items: idx.iter().map(|&i| items[i].clone()).collect(),
                indices: idx,
            }
        })
        .collect()
}
