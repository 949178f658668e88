use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Segmenter;
use crate::error::{Error, Result};
use crate::script::normalize_text;

pub const INDEX_FORMAT_VERSION: u32 = 1;
const INDEX_MAGIC: &str = "khmer-search-index";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    pub doc_id: String,
    pub tf: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub hits: usize,
    pub ranked: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertedIndex {
    normalize: bool,
    postings: BTreeMap<String, Vec<Posting>>,
    doc_lengths: BTreeMap<String, usize>,
}

impl Default for InvertedIndex {
    fn default() -> Self {
        InvertedIndex::new(true)
    }
}

impl InvertedIndex {
    /// `normalize` controls character-order normalization of both ingested
    /// text and query terms.
    pub fn new(normalize: bool) -> Self {
        InvertedIndex {
            normalize,
            postings: BTreeMap::new(),
            doc_lengths: BTreeMap::new(),
        }
    }

    pub fn normalizes(&self) -> bool {
        self.normalize
    }

    pub fn doc_count(&self) -> usize {
        self.doc_lengths.len()
    }

    pub fn doc_length(&self, id: &str) -> Option<usize> {
        self.doc_lengths.get(id).copied()
    }

    pub fn term_count(&self) -> usize {
        self.postings.len()
    }

    pub fn postings(&self, term: &str) -> &[Posting] {
        self.postings.get(term).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &[Posting])> {
        self.postings.iter().map(|(t, p)| (t.as_str(), p.as_slice()))
    }

    pub fn ingest(&mut self, id: &str, text: &str, segmenter: &Segmenter) -> Result<Document> {
        if self.doc_lengths.contains_key(id) {
            return Err(Error::DuplicateDocId(id.to_owned()));
        }
        let tokens = segmenter.segment_with(text, self.normalize);
        let mut tf: HashMap<&str, u32> = HashMap::new();
        for t in &tokens {
            *tf.entry(t.as_str()).or_insert(0) += 1;
        }
        for (term, n) in tf {
            let list = self.postings.entry(term.to_owned()).or_default();
            let pos = list.partition_point(|p| p.doc_id.as_str() < id);
            list.insert(
                pos,
                Posting {
                    doc_id: id.to_owned(),
                    tf: n,
                },
            );
        }
        self.doc_lengths.insert(id.to_owned(), tokens.len());
        Ok(Document {
            id: id.to_owned(),
            text: text.to_owned(),
            tokens,
        })
    }

    fn query_term(&self, t: &str) -> String {
        let t = t.trim();
        if self.normalize {
            normalize_text(t)
        } else {
            t.to_owned()
        }
    }

    /// Boolean OR over `terms`, ranked by summed `tf * (ln(N / df) + 1)`.
    pub fn search<S: AsRef<str>>(&self, terms: &[S]) -> SearchResult {
        let n = self.doc_count() as f64;
        let terms: BTreeSet<String> = terms.iter().map(|t| self.query_term(t.as_ref())).collect();
        let mut scores: BTreeMap<&str, f64> = BTreeMap::new();
        for t in &terms {
            let list = self.postings(t);
            if list.is_empty() {
                continue;
            }
            let idf = (n / list.len() as f64).ln() + 1.0;
            for p in list {
                *scores.entry(p.doc_id.as_str()).or_insert(0.0) += f64::from(p.tf) * idf;
            }
        }
        let mut ranked: Vec<(String, f64)> = scores.into_iter().map(|(d, s)| (d.to_owned(), s)).collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        SearchResult {
            hits: ranked.len(),
            ranked,
        }
    }

    pub fn hits<S: AsRef<str>>(&self, terms: &[S]) -> usize {
        self.search(terms).hits
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let f = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(f);
        writeln!(w, "{INDEX_MAGIC} {INDEX_FORMAT_VERSION}").map_err(|e| Error::io(path, e))?;
        serde_json::to_writer(&mut w, self).map_err(|e| Error::Corrupt(e.to_string()))?;
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Loads an index file; nothing is returned unless the whole file parses.
    pub fn load(path: impl AsRef<Path>) -> Result<InvertedIndex> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let (header, body) = text
            .split_once('\n')
            .ok_or_else(|| Error::Corrupt(format!("{}: missing header", path.display())))?;
        let version = match header.split_once(' ') {
            Some((INDEX_MAGIC, v)) => v
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::Corrupt(format!("{}: bad version {v:?}", path.display())))?,
            _ => return Err(Error::Corrupt(format!("{}: not an index file", path.display()))),
        };
        if version != INDEX_FORMAT_VERSION {
            return Err(Error::VersionMismatch {
                found: version,
                expected: INDEX_FORMAT_VERSION,
            });
        }
        let index: InvertedIndex =
            serde_json::from_str(body).map_err(|e| Error::Corrupt(format!("{}: {e}", path.display())))?;
        index.check()?;
        Ok(index)
    }

    fn check(&self) -> Result<()> {
        for (t, list) in &self.postings {
            if list.windows(2).any(|w| w[0].doc_id >= w[1].doc_id)
                || list.iter().any(|p| !self.doc_lengths.contains_key(&p.doc_id) || p.tf == 0)
            {
                return Err(Error::Corrupt(format!("inconsistent postings for {t:?}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
struct CorpusRecord {
    id: String,
    text: String,
}

/// Reads a JSON-lines corpus of `{"id": .., "text": ..}` objects.
pub fn read_corpus_jsonl(path: impl AsRef<Path>) -> Result<Vec<(String, String)>> {
    let path = path.as_ref();
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_corpus_jsonl(BufReader::new(f), path)
}

pub fn parse_corpus_jsonl<R: BufRead>(reader: R, path: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CorpusRecord =
            serde_json::from_str(&line).map_err(|e| Error::parse(path, i + 1, e.to_string()))?;
        out.push((rec.id, rec.text));
    }
    Ok(out)
}

/// Builds an index from `(id, text)` pairs.
pub fn build_index<'a, I>(docs: I, segmenter: &Segmenter, normalize: bool) -> Result<InvertedIndex>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut index = InvertedIndex::new(normalize);
    for (id, text) in docs {
        index.ingest(id, text, segmenter)?;
    }
    Ok(index)
}
