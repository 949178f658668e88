//! Vector files.
//!
//! The text format is `vocab_size dim` followed by one `word v1 .. vdim` line
//! per word; it holds composed vectors only. The binary model format keeps
//! word and n-gram bucket rows so out-of-vocabulary lookups keep working.

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use super::{EmbeddingConfig, EmbeddingModel, Rows};
use crate::error::{Error, Result};

const MODEL_MAGIC: &[u8; 8] = b"KHSEMB\0\0";
pub const MODEL_VERSION: u32 = 1;

/// One pre-segmented sentence per line, tokens separated by whitespace.
pub fn read_corpus(path: impl AsRef<Path>) -> Result<Vec<Vec<String>>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .lines()
        .map(|l| l.split_whitespace().map(str::to_owned).collect::<Vec<_>>())
        .filter(|s| !s.is_empty())
        .collect())
}

pub fn save_vectors(model: &EmbeddingModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(f);
    let mut write = || -> std::io::Result<()> {
        writeln!(w, "{} {}", model.vocab.len(), model.dim())?;
        for (i, word) in model.vocab.iter().enumerate() {
            let v = model.word_vector_by_id(i);
            write!(w, "{word}")?;
            for x in &v.values {
                write!(w, " {x:.6}")?;
            }
            writeln!(w)?;
        }
        w.flush()
    };
    write().map_err(|e| Error::io(path, e))
}

/// Loads a text vector file into a query-only model.
pub fn load_vectors(path: impl AsRef<Path>) -> Result<EmbeddingModel> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::parse(path, 1, "missing header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let parse_usize = |s: &str| s.parse::<usize>().ok();
    let (n, dim) = match head.as_slice() {
        [n, d] => match (parse_usize(n), parse_usize(d)) {
            (Some(n), Some(d)) if d > 0 => (n, d),
            _ => return Err(Error::parse(path, 1, "header must be `vocab_size dim`")),
        },
        _ => return Err(Error::parse(path, 1, "header must be `vocab_size dim`")),
    };

    let mut vocab = Vec::with_capacity(n);
    let mut rows = Vec::with_capacity(n * dim);
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let word = parts.next().expect("non-empty line");
        let vals: Vec<f32> = parts
            .map(|p| p.parse::<f32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(path, i + 1, "non-numeric vector component"))?;
        if vals.len() != dim {
            return Err(Error::parse(
                path,
                i + 1,
                format!("expected {dim} components, found {}", vals.len()),
            ));
        }
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::parse(path, i + 1, "non-finite vector component"));
        }
        vocab.push(crate::script::normalize_text(word));
        rows.extend(vals);
    }
    if vocab.len() != n {
        return Err(Error::parse(
            path,
            1,
            format!("header declares {n} rows, found {}", vocab.len()),
        ));
    }
    let config = EmbeddingConfig {
        dim,
        ..EmbeddingConfig::default()
    };
    let counts = vec![0; vocab.len()];
    Ok(EmbeddingModel::from_parts(config, vocab, counts, Rows::Composed(rows), Vec::new()))
}

struct Writer<W: Write>(W);

impl<W: Write> Writer<W> {
    fn u32(&mut self, v: u32) -> std::io::Result<()> {
        self.0.write_all(&v.to_le_bytes())
    }
    fn u64(&mut self, v: u64) -> std::io::Result<()> {
        self.0.write_all(&v.to_le_bytes())
    }
    fn f32s(&mut self, v: &[f32]) -> std::io::Result<()> {
        for x in v {
            self.0.write_all(&x.to_le_bytes())?;
        }
        Ok(())
    }
    fn str(&mut self, s: &str) -> std::io::Result<()> {
        self.u32(s.len() as u32)?;
        self.0.write_all(s.as_bytes())
    }
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        if self.buf.len() < n {
            return Err(Error::Corrupt("unexpected end of model file".into()));
        }
        let (a, b) = self.buf.split_at(n);
        self.buf = b;
        Ok(a)
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn f32s(&mut self, n: usize) -> Result<Vec<f32>> {
        let bytes = self.take(n.checked_mul(4).ok_or_else(|| Error::Corrupt("size overflow".into()))?)?;
        Ok(bytes
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }
    fn string(&mut self) -> Result<String> {
        let n = self.u32()? as usize;
        String::from_utf8(self.take(n)?.to_vec()).map_err(|_| Error::Corrupt("invalid UTF-8".into()))
    }
}

/// Saves the full model, including n-gram bucket rows.
pub fn save_model(model: &EmbeddingModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let Rows::Subword { words, buckets } = &model.rows else {
        return Err(Error::InvalidConfig(
            "model loaded from a text vector file has no subword rows to save".into(),
        ));
    };
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = Writer(BufWriter::new(f));
    let c = &model.config;
    let mut write = || -> std::io::Result<()> {
        w.0.write_all(MODEL_MAGIC)?;
        w.u32(MODEL_VERSION)?;
        for v in [c.dim, c.min_n, c.max_n, c.window, c.negatives, c.epochs] {
            w.u64(v as u64)?;
        }
        w.u32(c.bucket_count)?;
        w.f32s(&[c.learning_rate])?;
        w.u64(c.min_word_count)?;
        w.u64(c.seed)?;
        w.u64(model.vocab.len() as u64)?;
        for (word, &count) in model.vocab.iter().zip(&model.counts) {
            w.str(word)?;
            w.u64(count)?;
        }
        w.f32s(words)?;
        let mut ids: Vec<&u32> = buckets.keys().collect();
        ids.sort_unstable();
        w.u64(ids.len() as u64)?;
        for id in ids {
            w.u32(*id)?;
            w.f32s(&buckets[id])?;
        }
        w.u64(model.epoch_losses.len() as u64)?;
        for l in &model.epoch_losses {
            w.0.write_all(&l.to_le_bytes())?;
        }
        w.0.flush()
    };
    write().map_err(|e| Error::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<EmbeddingModel> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    let mut r = Reader { buf: &bytes };
    if r.take(MODEL_MAGIC.len())? != MODEL_MAGIC {
        return Err(Error::Corrupt(format!("{} is not a model file", path.display())));
    }
    let version = r.u32()?;
    if version != MODEL_VERSION {
        return Err(Error::VersionMismatch {
            found: version,
            expected: MODEL_VERSION,
        });
    }
    let mut nums = [0usize; 6];
    for n in &mut nums {
        *n = r.u64()? as usize;
    }
    let [dim, min_n, max_n, window, negatives, epochs] = nums;
    let bucket_count = r.u32()?;
    let learning_rate = r.f32s(1)?[0];
    let min_word_count = r.u64()?;
    let seed = r.u64()?;
    let config = EmbeddingConfig {
        dim,
        min_n,
        max_n,
        bucket_count,
        window,
        negatives,
        epochs,
        learning_rate,
        min_word_count,
        seed,
    };
    config.validate().map_err(|e| Error::Corrupt(e.to_string()))?;

    let n = r.u64()? as usize;
    let mut vocab = Vec::with_capacity(n.min(1 << 20));
    let mut counts = Vec::with_capacity(n.min(1 << 20));
    for _ in 0..n {
        vocab.push(r.string()?);
        counts.push(r.u64()?);
    }
    let words = r.f32s(n * dim)?;
    let nb = r.u64()? as usize;
    let mut buckets = HashMap::with_capacity(nb.min(1 << 20));
    for _ in 0..nb {
        let id = r.u32()?;
        buckets.insert(id, r.f32s(dim)?);
    }
    let nl = r.u64()? as usize;
    let mut losses = Vec::with_capacity(nl.min(1 << 16));
    for _ in 0..nl {
        losses.push(f64::from_le_bytes(r.take(8)?.try_into().unwrap()));
    }
    if !r.buf.is_empty() {
        return Err(Error::Corrupt("trailing bytes in model file".into()));
    }
    Ok(EmbeddingModel::from_parts(
        config,
        vocab,
        counts,
        Rows::Subword { words, buckets },
        losses,
    ))
}
