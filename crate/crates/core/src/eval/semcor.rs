//! Conversion of Semcor tagged files into the normalized corpus format.
//!
//! Semcor files are SGML-like: `<context filename=br-a01 ...>` wraps
//! paragraphs and sentences of `<wf ...>word</wf>` and `<punc>.</punc>`
//! tokens. Attribute values are usually unquoted. Noun word forms
//! (`pos=NN*`) with a `wnsn` sense number become corpus rows; the sense
//! number indexes the lemma's sense list in the network (1-based, `;` joins
//! several).

use std::collections::HashMap;
use std::io::Write;

use super::{Category, CorpusItem};
use crate::lexicon::SemanticNetwork;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reject {
    pub doc_id: String,
    pub position: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct IngestOutcome {
    pub items: Vec<CorpusItem>,
    pub rejects: Vec<Reject>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemcorError {
    #[error("byte {offset}: {msg}")]
    Structure { offset: usize, msg: String },
    #[error("document `{0}` has no Brown category code")]
    Category(String),
}

fn structure(offset: usize, msg: impl Into<String>) -> SemcorError {
    SemcorError::Structure {
        offset,
        msg: msg.into(),
    }
}

fn parse_attrs(body: &str) -> HashMap<String, String> {
    let mut attrs = HashMap::new();
    let mut rest = body.trim_start();
    while !rest.is_empty() {
        let key_end = rest
            .find(|c: char| c == '=' || c.is_whitespace())
            .unwrap_or(rest.len());
        let key = rest[..key_end].to_ascii_lowercase();
        rest = &rest[key_end..];
        let value;
        if let Some(after) = rest.strip_prefix('=') {
            if let Some(q) = after.chars().next().filter(|c| *c == '"' || *c == '\'') {
                let inner = &after[1..];
                let close = inner.find(q).unwrap_or(inner.len());
                value = inner[..close].to_owned();
                rest = inner.get(close + 1..).unwrap_or("");
            } else {
                let end = after.find(char::is_whitespace).unwrap_or(after.len());
                value = after[..end].to_owned();
                rest = &after[end..];
            }
        } else {
            value = String::new();
        }
        if !key.is_empty() {
            attrs.insert(key, value);
        }
        rest = rest.trim_start();
    }
    attrs
}

/// `br-a01` → `A`.
fn category_of(doc_id: &str) -> Option<Category> {
    let name = doc_id.rsplit(['/', '\\']).next().unwrap_or(doc_id);
    let code = name.strip_prefix("br-").unwrap_or(name).chars().next()?;
    Category::new(code)
}

struct Doc {
    id: String,
    category: Category,
    position: usize,
}

/// Converts one Semcor file. `default_doc_id` names the document when no
/// `<context filename=...>` tag does.
pub fn ingest_semcor(
    src: &str,
    default_doc_id: &str,
    net: &SemanticNetwork,
) -> Result<IngestOutcome, SemcorError> {
    let mut out = IngestOutcome::default();
    let mut doc: Option<Doc> = None;
    let open_doc = |id: &str| -> Result<Doc, SemcorError> {
        Ok(Doc {
            id: id.to_owned(),
            category: category_of(id).ok_or_else(|| SemcorError::Category(id.to_owned()))?,
            position: 0,
        })
    };

    let mut at = 0;
    while let Some(rel) = src[at..].find('<') {
        let start = at + rel;
        let end = start
            + src[start..]
                .find('>')
                .ok_or_else(|| structure(start, "unterminated tag"))?;
        let tag = &src[start + 1..end];
        at = end + 1;
        let (name, body) = tag.split_once(char::is_whitespace).unwrap_or((tag, ""));
        match name.to_ascii_lowercase().as_str() {
            "context" => {
                let attrs = parse_attrs(body);
                let id = attrs
                    .get("filename")
                    .map(String::as_str)
                    .unwrap_or(default_doc_id);
                doc = Some(open_doc(id)?);
            }
            "/context" => doc = None,
            "wf" | "punc" => {
                let closing = if name.eq_ignore_ascii_case("wf") {
                    "</wf>"
                } else {
                    "</punc>"
                };
                let text_end = at
                    + src[at..]
                        .find(closing)
                        .ok_or_else(|| structure(start, format!("<{name}> without {closing}")))?;
                let text = src[at..text_end].trim();
                if text.contains('<') {
                    return Err(structure(start, format!("markup nested inside <{name}>")));
                }
                at = text_end + closing.len();
                if doc.is_none() {
                    doc = Some(open_doc(default_doc_id)?);
                }
                let d = doc.as_mut().expect("document opened above");
                let position = d.position;
                d.position += 1;
                if name.eq_ignore_ascii_case("wf") {
                    word_form(&parse_attrs(body), text, d, position, net, &mut out);
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

fn word_form(
    attrs: &HashMap<String, String>,
    text: &str,
    doc: &Doc,
    position: usize,
    net: &SemanticNetwork,
    out: &mut IngestOutcome,
) {
    let is_noun = attrs
        .get("pos")
        .is_some_and(|p| p.to_ascii_uppercase().starts_with("NN"));
    if !is_noun || attrs.get("cmd").is_some_and(|c| c == "ignore") {
        return;
    }
    let mut reject = |reason: String| {
        out.rejects.push(Reject {
            doc_id: doc.id.clone(),
            position,
            reason,
        })
    };
    let lemma = attrs
        .get("lemma")
        .map(String::as_str)
        .unwrap_or(text)
        .to_lowercase();
    let Some(wnsn) = attrs.get("wnsn") else {
        reject(format!("no sense tag for `{lemma}`"));
        return;
    };
    let senses = net.senses_of(&lemma);
    if senses.is_empty() {
        reject(format!("lemma `{lemma}` not in lexicon"));
        return;
    }
    let mut gold = Vec::new();
    for part in wnsn.split(';') {
        match part.trim().parse::<usize>() {
            Ok(n) if n >= 1 && n <= senses.len() => {
                let id = net.id(senses[n - 1]).clone();
                if !gold.contains(&id) {
                    gold.push(id);
                }
            }
            Ok(n) if n >= 1 => {
                reject(format!(
                    "wnsn {n} exceeds the {} senses of `{lemma}`",
                    senses.len()
                ));
                return;
            }
            _ => {
                reject(format!("unusable wnsn `{wnsn}` for `{lemma}`"));
                return;
            }
        }
    }
    out.items.push(CorpusItem {
        doc_id: doc.id.clone(),
        category: doc.category,
        position,
        lemma,
        gold,
    });
}

/// `doc <TAB> position <TAB> reason`, one reject per line.
pub fn write_reject_log<W: Write>(rejects: &[Reject], mut w: W) -> std::io::Result<()> {
    for r in rejects {
        writeln!(
            w,
            "{}\t{}\t{}",
            r.doc_id,
            r.position,
            r.reason.replace(['\t', '\n'], " ")
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::parse_compact_lexicon;

    fn net() -> SemanticNetwork {
        let src = "t\tthing\t\t\ne1\tend\thypernym:t\tfirst\ne2\tend\thypernym:t\tsecond\nj\tjury\thypernym:t\tpanel\n";
        parse_compact_lexicon(src.as_bytes()).unwrap()
    }

    const DOC: &str = "<contextfile concordance=brown>\n\
        <context filename=br-a01 paras=yes>\n<p pnum=1>\n<s snum=1>\n\
        <wf cmd=ignore pos=DT>The</wf>\n\
        <wf cmd=done pos=NN lemma=end wnsn=1 lexsn=1:15:00::>end</wf>\n\
        <wf cmd=done pos=VB lemma=say wnsn=1 lexsn=2:32:00::>said</wf>\n\
        <wf cmd=done pos=NN lemma=end wnsn=9 lexsn=1:15:00::>end</wf>\n\
        <wf cmd=done pos=NNS lemma=jury wnsn=1;2 lexsn=1:14:00::>juries</wf>\n\
        <punc>.</punc>\n\
        <wf cmd=done pos=NN lemma=zebra wnsn=1>zebra</wf>\n\
        </s>\n</p>\n</context>\n</contextfile>\n";

    #[test]
    fn nouns_become_rows_and_bad_senses_are_logged() {
        let net = net();
        let out = ingest_semcor(DOC, "x", &net).unwrap();
        assert_eq!(out.items.len(), 1);
        let it = &out.items[0];
        assert_eq!(
            (it.doc_id.as_str(), it.category.code(), it.position),
            ("br-a01", 'A', 1)
        );
        assert_eq!(it.gold, vec!["e1".into()]);
        let reasons: Vec<_> = out
            .rejects
            .iter()
            .map(|r| (r.position, r.reason.as_str()))
            .collect();
        assert_eq!(reasons.len(), 3);
        assert_eq!(reasons[0].0, 3);
        assert!(reasons[0].1.contains("exceeds"));
        // jury has one sense, so wnsn=1;2 is partly out of range
        assert_eq!(reasons[1].0, 4);
        assert!(reasons[2].1.contains("not in lexicon"));
    }

    #[test]
    fn unterminated_tag_reports_offset() {
        let src = "<context filename=br-a01>\n<wf pos=NN lemma=end wnsn=1";
        match ingest_semcor(src, "x", &net()) {
            Err(SemcorError::Structure { offset, .. }) => assert_eq!(offset, 26),
            other => panic!("unexpected {other:?}"),
        }
        let src = "<context filename=br-a01>\n<wf pos=NN lemma=end wnsn=1>end\n";
        assert!(matches!(
            ingest_semcor(src, "x", &net()),
            Err(SemcorError::Structure { offset: 26, .. })
        ));
    }

    #[test]
    fn quoted_attributes_parse() {
        let a = parse_attrs(r#"pos="NN" lemma='end' wnsn=2 flag"#);
        assert_eq!(a["pos"], "NN");
        assert_eq!(a["lemma"], "end");
        assert_eq!(a["wnsn"], "2");
        assert_eq!(a["flag"], "");
    }

    #[test]
    fn category_from_file_name() {
        assert_eq!(category_of("br-k05").unwrap().code(), 'K');
        assert_eq!(
            category_of("semcor/brown1/tagfiles/br-r04").unwrap().code(),
            'R'
        );
        assert!(category_of("br-i01").is_none());
    }
}
