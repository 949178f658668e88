use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{init_bucket_row, EmbeddingConfig, EmbeddingModel, Rows};
use crate::error::{Error, Result};
use crate::script::normalize_text;

const NEGATIVE_TABLE_SIZE: usize = 1_000_000;

fn sigmoid(x: f32) -> f32 {
    if x > 8.0 {
        1.0
    } else if x < -8.0 {
        0.0
    } else {
        1.0 / (1.0 + (-x).exp())
    }
}

struct Trainer<'a> {
    cfg: &'a EmbeddingConfig,
    words: Vec<f32>,
    buckets: HashMap<u32, Vec<f32>>,
    output: Vec<f32>,
    subwords: Vec<Vec<u32>>,
    negatives: Vec<u32>,
    rng: ChaCha8Rng,
    hidden: Vec<f32>,
    grad: Vec<f32>,
}

impl Trainer<'_> {
    fn compute_hidden(&mut self, center: usize) {
        let dim = self.cfg.dim;
        self.hidden.copy_from_slice(&self.words[center * dim..(center + 1) * dim]);
        for b in &self.subwords[center] {
            let row = &self.buckets[b];
            self.hidden.iter_mut().zip(row).for_each(|(h, &x)| *h += x);
        }
        let n = (self.subwords[center].len() + 1) as f32;
        self.hidden.iter_mut().for_each(|h| *h /= n);
    }

    /// One binary logistic step against an output row; returns the loss.
    fn binary(&mut self, target: usize, label: bool, lr: f32) -> f64 {
        let dim = self.cfg.dim;
        let out = &mut self.output[target * dim..(target + 1) * dim];
        let score = sigmoid(out.iter().zip(&self.hidden).map(|(&o, &h)| o * h).sum());
        let alpha = lr * (f32::from(u8::from(label)) - score);
        for ((g, o), &h) in self.grad.iter_mut().zip(out.iter_mut()).zip(&self.hidden) {
            *g += alpha * *o;
            *o += alpha * h;
        }
        let p = if label { score } else { 1.0 - score };
        -f64::from(p.max(1e-7)).ln()
    }

    fn step(&mut self, center: usize, context: usize, lr: f32) -> f64 {
        self.grad.iter_mut().for_each(|g| *g = 0.0);
        let mut loss = self.binary(context, true, lr);
        if self.output.len() > self.cfg.dim {
            for _ in 0..self.cfg.negatives {
                let neg = loop {
                    let n = self.negatives[self.rng.gen_range(0..self.negatives.len())] as usize;
                    if n != context {
                        break n;
                    }
                };
                loss += self.binary(neg, false, lr);
            }
        }
        let dim = self.cfg.dim;
        self.words[center * dim..(center + 1) * dim]
            .iter_mut()
            .zip(&self.grad)
            .for_each(|(w, &g)| *w += g);
        for b in &self.subwords[center] {
            let row = self.buckets.get_mut(b).expect("bucket allocated at build");
            row.iter_mut().zip(&self.grad).for_each(|(w, &g)| *w += g);
        }
        loss
    }
}

fn negative_table(counts: &[u64]) -> Vec<u32> {
    let weights: Vec<f64> = counts.iter().map(|&c| (c as f64).powf(0.75)).collect();
    let total: f64 = weights.iter().sum();
    let mut table = Vec::with_capacity(NEGATIVE_TABLE_SIZE);
    for (i, w) in weights.iter().enumerate() {
        let n = ((w / total) * NEGATIVE_TABLE_SIZE as f64).ceil() as usize;
        table.extend(std::iter::repeat_n(i as u32, n.max(1)));
    }
    table
}

/// Trains skip-gram with negative sampling over pre-segmented sentences.
/// Single-threaded and deterministic for a given seed.
pub fn train(sentences: &[Vec<String>], config: &EmbeddingConfig) -> Result<EmbeddingModel> {
    config.validate()?;
    let cfg = config;
    let dim = cfg.dim;

    let sentences: Vec<Vec<String>> = sentences
        .iter()
        .map(|s| {
            s.iter()
                .map(|t| normalize_text(t.trim()))
                .filter(|t| !t.is_empty())
                .collect()
        })
        .collect();

    let mut freq: BTreeMap<&str, u64> = BTreeMap::new();
    for s in &sentences {
        for t in s {
            *freq.entry(t.as_str()).or_insert(0) += 1;
        }
    }
    let mut vocab: Vec<(String, u64)> = freq
        .into_iter()
        .filter(|&(_, c)| c >= cfg.min_word_count)
        .map(|(w, c)| (w.to_owned(), c))
        .collect();
    if vocab.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    vocab.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let (words_list, counts): (Vec<String>, Vec<u64>) = vocab.into_iter().unzip();
    let index: HashMap<&str, usize> = words_list.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bound = 1.0 / dim as f32;
    let words: Vec<f32> = (0..words_list.len() * dim).map(|_| rng.gen_range(-bound..bound)).collect();

    // n-gram bucket lists, computed the same way the model does at query time
    let probe = EmbeddingModel::from_parts(
        cfg.clone(),
        Vec::new(),
        Vec::new(),
        Rows::Composed(Vec::new()),
        Vec::new(),
    );
    let subwords: Vec<Vec<u32>> = words_list.iter().map(|w| probe.bucket_ids(w)).collect();
    let mut buckets: HashMap<u32, Vec<f32>> = HashMap::new();
    for ids in &subwords {
        for &b in ids {
            buckets
                .entry(b)
                .or_insert_with(|| init_bucket_row(cfg.seed, b, dim));
        }
    }

    let corpus: Vec<Vec<usize>> = sentences
        .iter()
        .map(|s| s.iter().filter_map(|t| index.get(t.as_str()).copied()).collect())
        .collect();
    let total_tokens: usize = corpus.iter().map(Vec::len).sum();

    let mut tr = Trainer {
        cfg,
        words,
        buckets,
        output: vec![0f32; words_list.len() * dim],
        subwords,
        negatives: negative_table(&counts),
        rng,
        hidden: vec![0f32; dim],
        grad: vec![0f32; dim],
    };

    let total_steps = (total_tokens * cfg.epochs).max(1) as f32;
    let mut processed = 0usize;
    let mut epoch_losses = Vec::with_capacity(cfg.epochs);
    for epoch in 0..cfg.epochs {
        let mut loss_sum = 0f64;
        let mut loss_n = 0usize;
        for sent in &corpus {
            for (i, &center) in sent.iter().enumerate() {
                let lr = cfg.learning_rate * (1.0 - processed as f32 / total_steps).max(1e-4);
                processed += 1;
                let span = tr.rng.gen_range(1..=cfg.window);
                let lo = i.saturating_sub(span);
                let hi = (i + span).min(sent.len() - 1);
                tr.compute_hidden(center);
                for (j, &ctx) in sent.iter().enumerate().take(hi + 1).skip(lo) {
                    if j == i {
                        continue;
                    }
                    loss_sum += tr.step(center, ctx, lr);
                    loss_n += 1;
                    tr.compute_hidden(center);
                }
            }
        }
        let mean = if loss_n == 0 { 0.0 } else { loss_sum / loss_n as f64 };
        log::info!("epoch {}/{}: mean loss {:.4}", epoch + 1, cfg.epochs, mean);
        epoch_losses.push(mean);
    }

    let Trainer { words, buckets, .. } = tr;
    Ok(EmbeddingModel::from_parts(
        cfg.clone(),
        words_list,
        counts,
        Rows::Subword { words, buckets },
        epoch_losses,
    ))
}
