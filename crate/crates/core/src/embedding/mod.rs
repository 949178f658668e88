//! Subword word embeddings.
//!
//! A word is represented by its own row plus one hashed row per cluster
//! n-gram; its vector is the mean of those rows. Words never seen in training
//! still get a vector from their n-grams. Training is skip-gram with negative
//! sampling.
//!
//! Bucket rows are stored sparsely. A bucket that was never touched has the
//! same pseudo-random initial row it would have had in a dense table, derived
//! from the seed and the bucket id.

mod io;
mod ngram;
mod train;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use io::{load_model, load_vectors, read_corpus, save_model, save_vectors};
pub use ngram::{extract_ngrams, fnv1a, marked_units};
pub use train::train;

use crate::error::{Error, Result};
use crate::script::normalize_text;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingConfig {
    pub dim: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub bucket_count: u32,
    pub window: usize,
    pub negatives: usize,
    pub epochs: usize,
    pub learning_rate: f32,
    pub min_word_count: u64,
    pub seed: u64,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        EmbeddingConfig {
            dim: 100,
            min_n: 1,
            max_n: 4,
            bucket_count: 1 << 21,
            window: 5,
            negatives: 5,
            epochs: 5,
            learning_rate: 0.05,
            min_word_count: 5,
            seed: 42,
        }
    }
}

impl EmbeddingConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_owned()));
        if self.min_n < 1 || self.min_n > self.max_n {
            return bad("need 1 <= min_n <= max_n");
        }
        if self.dim < 8 {
            return bad("dim must be at least 8");
        }
        if self.bucket_count == 0 || self.window == 0 || self.negatives == 0 || self.epochs == 0 {
            return bad("bucket_count, window, negatives and epochs must be positive");
        }
        if self.min_word_count == 0 {
            return bad("min_word_count must be positive");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning_rate must be positive");
        }
        Ok(())
    }
}

/// Dense word vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordVector {
    pub values: Vec<f32>,
}

impl WordVector {
    pub fn new(values: Vec<f32>) -> Self {
        WordVector { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|&v| f64::from(v) * f64::from(v)).sum::<f64>().sqrt()
    }
}

impl std::ops::Neg for WordVector {
    type Output = WordVector;

    fn neg(self) -> WordVector {
        WordVector::new(self.values.into_iter().map(|v| -v).collect())
    }
}

pub fn cosine(a: &WordVector, b: &WordVector) -> Result<f64> {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    let dot: f64 = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(&x, &y)| f64::from(x) * f64::from(y))
        .sum();
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}

/// Row storage: trained models keep word and bucket rows; models loaded from
/// the text format only have one composed vector per word.
#[derive(Debug, Clone)]
pub(crate) enum Rows {
    Subword {
        words: Vec<f32>,
        buckets: HashMap<u32, Vec<f32>>,
    },
    Composed(Vec<f32>),
}

#[derive(Debug, Clone)]
pub struct EmbeddingModel {
    pub(crate) config: EmbeddingConfig,
    pub(crate) vocab: Vec<String>,
    pub(crate) counts: Vec<u64>,
    pub(crate) index: HashMap<String, usize>,
    pub(crate) rows: Rows,
    /// Composed, unit-normalized vocabulary vectors for neighbor search.
    unit: Vec<f32>,
    pub(crate) epoch_losses: Vec<f64>,
}

/// Deterministic initial value of a bucket row.
pub(crate) fn init_bucket_row(seed: u64, bucket: u32, dim: usize) -> Vec<f32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(bucket) << 32 | 0x9e37_79b9));
    let bound = 1.0 / dim as f32;
    (0..dim).map(|_| rng.gen_range(-bound..bound)).collect()
}

impl EmbeddingModel {
    pub(crate) fn from_parts(
        config: EmbeddingConfig,
        vocab: Vec<String>,
        counts: Vec<u64>,
        rows: Rows,
        epoch_losses: Vec<f64>,
    ) -> Self {
        let index = vocab.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut m = EmbeddingModel {
            config,
            vocab,
            counts,
            index,
            rows,
            unit: Vec::new(),
            epoch_losses,
        };
        m.refresh_unit_vectors();
        m
    }

    pub(crate) fn refresh_unit_vectors(&mut self) {
        let dim = self.config.dim;
        let mut unit = vec![0f32; self.vocab.len() * dim];
        for i in 0..self.vocab.len() {
            let v = self.word_vector_by_id(i);
            let n = v.norm();
            if n > 0.0 {
                for (dst, &x) in unit[i * dim..(i + 1) * dim].iter_mut().zip(&v.values) {
                    *dst = (f64::from(x) / n) as f32;
                }
            }
        }
        self.unit = unit;
    }

    pub fn config(&self) -> &EmbeddingConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn count(&self, word: &str) -> Option<u64> {
        self.index.get(word).map(|&i| self.counts[i])
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(&normalize_text(word))
    }

    /// Mean training loss per epoch; empty for loaded models.
    pub fn epoch_losses(&self) -> &[f64] {
        &self.epoch_losses
    }

    /// Whether vectors can be built for out-of-vocabulary words.
    pub fn has_subwords(&self) -> bool {
        matches!(self.rows, Rows::Subword { .. })
    }

    pub(crate) fn bucket_ids(&self, word: &str) -> Vec<u32> {
        extract_ngrams(word, self.config.min_n, self.config.max_n)
            .iter()
            .map(|g| fnv1a(g) % self.config.bucket_count)
            .collect()
    }

    fn word_vector_by_id(&self, id: usize) -> WordVector {
        let dim = self.config.dim;
        match &self.rows {
            Rows::Composed(rows) => WordVector::new(rows[id * dim..(id + 1) * dim].to_vec()),
            Rows::Subword { words, .. } => {
                let mut acc: Vec<f32> = words[id * dim..(id + 1) * dim].to_vec();
                let buckets = self.bucket_ids(&self.vocab[id]);
                self.add_buckets(&mut acc, &buckets);
                let n = (buckets.len() + 1) as f32;
                acc.iter_mut().for_each(|v| *v /= n);
                WordVector::new(acc)
            }
        }
    }

    fn add_buckets(&self, acc: &mut [f32], ids: &[u32]) {
        let Rows::Subword { buckets, .. } = &self.rows else {
            return;
        };
        for &b in ids {
            match buckets.get(&b) {
                Some(row) => acc.iter_mut().zip(row).for_each(|(a, &x)| *a += x),
                None => {
                    let row = init_bucket_row(self.config.seed, b, self.config.dim);
                    acc.iter_mut().zip(&row).for_each(|(a, &x)| *a += x);
                }
            }
        }
    }

    /// Vector for any word: own row plus n-gram rows when in vocabulary,
    /// n-gram rows alone otherwise.
    pub fn vector_of(&self, word: &str) -> Result<WordVector> {
        let w = normalize_text(word.trim());
        if let Some(&id) = self.index.get(&w) {
            return Ok(self.word_vector_by_id(id));
        }
        if !self.has_subwords() {
            return Err(Error::NoSubwords(w));
        }
        let buckets = self.bucket_ids(&w);
        if buckets.is_empty() {
            return Err(Error::NoSubwords(w));
        }
        let mut acc = vec![0f32; self.config.dim];
        self.add_buckets(&mut acc, &buckets);
        let n = buckets.len() as f32;
        acc.iter_mut().for_each(|v| *v /= n);
        Ok(WordVector::new(acc))
    }

    /// Top-`k` vocabulary words by cosine similarity to `word`, excluding the
    /// word itself. Ties are broken by word.
    pub fn nearest_neighbors(&self, word: &str, k: usize) -> Result<Vec<(String, f64)>> {
        if self.vocab.is_empty() {
            return Err(Error::EmptyModel);
        }
        let w = normalize_text(word.trim());
        let q = self.vector_of(&w)?;
        let qn = q.norm();
        if qn == 0.0 {
            return Err(Error::ZeroVector);
        }
        let dim = self.config.dim;
        let mut scored: Vec<(String, f64)> = self
            .vocab
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != w)
            .map(|(i, v)| {
                let row = &self.unit[i * dim..(i + 1) * dim];
                let dot: f64 = row
                    .iter()
                    .zip(&q.values)
                    .map(|(&a, &b)| f64::from(a) * f64::from(b))
                    .sum();
                (v.clone(), (dot / qn).clamp(-1.0, 1.0))
            })
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        scored.truncate(k);
        Ok(scored)
    }
}
