//! Independent reference implementations and generators shared by the
//! integration tests. Nothing here calls the code it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

pub const COENG: char = '\u{17D2}';

/// Base consonants U+1780..=U+17A2.
pub fn consonants() -> Vec<char> {
    ('\u{1780}'..='\u{17A2}').collect()
}

/// Dependent vowels U+17B6..=U+17C5.
pub fn vowels() -> Vec<char> {
    ('\u{17B6}'..='\u{17C5}').collect()
}

/// Signs that are neither shifters nor coeng.
pub fn diacritics() -> Vec<char> {
    let mut d: Vec<char> = ('\u{17C6}'..='\u{17D3}')
        .filter(|c| !matches!(c, '\u{17C9}' | '\u{17CA}' | '\u{17D2}'))
        .collect();
    d.push('\u{17DD}');
    d
}

pub const SHIFTERS: [char; 2] = ['\u{17C9}', '\u{17CA}'];

/// Parts of one cluster, in no particular order.
#[derive(Debug, Clone)]
pub struct Parts {
    pub base: char,
    pub subscripts: Vec<char>,
    pub shifter: Option<char>,
    pub diacritics: Vec<char>,
    pub vowel: Option<char>,
}

impl Parts {
    /// Canonical string written out by hand: base, subscripts ascending,
    /// shifter, diacritics ascending, vowel.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        s.push(self.base);
        let mut subs = self.subscripts.clone();
        subs.sort();
        for c in subs {
            s.push(COENG);
            s.push(c);
        }
        s.extend(self.shifter);
        let mut d = self.diacritics.clone();
        d.sort();
        s.extend(d);
        s.extend(self.vowel);
        s
    }

    /// Movable units after the base. A subscript stays glued to its coeng.
    pub fn units(&self) -> Vec<String> {
        let mut u: Vec<String> = self.subscripts.iter().map(|&c| format!("{COENG}{c}")).collect();
        u.extend(self.shifter.map(String::from));
        u.extend(self.diacritics.iter().map(|&c| c.to_string()));
        u.extend(self.vowel.map(String::from));
        u
    }

    pub fn trailing_scalars(&self) -> usize {
        self.units().iter().map(|u| u.chars().count()).sum()
    }

    pub fn typed(&self, order: &[usize]) -> String {
        let units = self.units();
        let mut s = String::from(self.base);
        for &i in order {
            s.push_str(&units[i]);
        }
        s
    }
}

/// Random cluster whose marks take at most `max_trailing` scalars.
pub fn random_parts<R: Rng>(rng: &mut R, max_trailing: usize) -> Parts {
    let cons = consonants();
    loop {
        let nsub = rng.gen_range(0..=2);
        let mut subscripts = Vec::new();
        while subscripts.len() < nsub {
            let c = *cons.choose(rng).unwrap();
            if !subscripts.contains(&c) {
                subscripts.push(c);
            }
        }
        let shifter = rng.gen_bool(0.2).then(|| *SHIFTERS.choose(rng).unwrap());
        let nd = rng.gen_range(0..=2);
        let pool = diacritics();
        let mut signs = Vec::new();
        while signs.len() < nd {
            let c = *pool.choose(rng).unwrap();
            if !signs.contains(&c) {
                signs.push(c);
            }
        }
        let vowel = rng.gen_bool(0.7).then(|| *vowels().choose(rng).unwrap());
        let p = Parts {
            base: *cons.choose(rng).unwrap(),
            subscripts,
            shifter,
            diacritics: signs,
            vowel,
        };
        if p.trailing_scalars() <= max_trailing {
            return p;
        }
    }
}

/// All orderings of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Simple pronounceable-looking word of 1..=3 clusters, already canonical.
pub fn random_word<R: Rng>(rng: &mut R) -> String {
    let cons = consonants();
    let vow = vowels();
    let n = rng.gen_range(1..=3);
    let mut s = String::new();
    for _ in 0..n {
        s.push(*cons.choose(rng).unwrap());
        if rng.gen_bool(0.25) {
            s.push(COENG);
            s.push(*cons.choose(rng).unwrap());
        }
        if rng.gen_bool(0.6) {
            s.push(*vow.choose(rng).unwrap());
        }
    }
    s
}

/// Mixed Khmer / ASCII / zero-width text, not necessarily well formed.
pub fn random_mixed<R: Rng>(rng: &mut R, len: usize) -> String {
    let pools: [&[char]; 5] = [
        &['a', 'Z', '7', ' ', '-', '.', '\n'],
        &['\u{1780}', '\u{179F}', '\u{17A2}', '\u{17A5}', '\u{17B3}'],
        &['\u{17B6}', '\u{17B8}', '\u{17C1}', '\u{17C6}', '\u{17C9}', '\u{17CD}', '\u{17DD}'],
        &[COENG, COENG, '\u{17E0}', '\u{17D4}'],
        &['\u{200B}', '\u{200C}', 'é', '漢'],
    ];
    (0..len)
        .map(|_| {
            let p = pools[rng.gen_range(0..pools.len())];
            p[rng.gen_range(0..p.len())]
        })
        .collect()
}

/// Optimal string alignment distance, full dynamic-programming matrix.
pub fn osa_oracle(a: &[char], b: &[char]) -> usize {
    let (n, m) = (a.len(), b.len());
    let mut d = vec![vec![0usize; m + 1]; n + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, v) in d[0].iter_mut().enumerate() {
        *v = j;
    }
    for i in 1..=n {
        for j in 1..=m {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut v = (d[i - 1][j] + 1).min(d[i][j - 1] + 1).min(d[i - 1][j - 1] + cost);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                v = v.min(d[i - 2][j - 2] + 1);
            }
            d[i][j] = v;
        }
    }
    d[n][m]
}

/// Applies `edits` random single edits (insert, delete, substitute, swap).
pub fn corrupt<R: Rng>(rng: &mut R, word: &str, edits: usize, alphabet: &[char]) -> String {
    let mut w: Vec<char> = word.chars().collect();
    for _ in 0..edits {
        let op = rng.gen_range(0..4);
        match op {
            0 => {
                let i = rng.gen_range(0..=w.len());
                w.insert(i, *alphabet.choose(rng).unwrap());
            }
            1 if w.len() > 1 => {
                let i = rng.gen_range(0..w.len());
                w.remove(i);
            }
            3 if w.len() > 1 => {
                let i = rng.gen_range(0..w.len() - 1);
                w.swap(i, i + 1);
            }
            _ if !w.is_empty() => {
                let i = rng.gen_range(0..w.len());
                w[i] = *alphabet.choose(rng).unwrap();
            }
            _ => w.push(*alphabet.choose(rng).unwrap()),
        }
    }
    w.into_iter().collect()
}

/// Naive search: for each document, count term occurrences directly in its
/// token list and score with `tf * (ln(N / df) + 1)`.
pub fn scan_search(docs: &[(String, Vec<String>)], terms: &[String]) -> Vec<(String, f64)> {
    let n = docs.len() as f64;
    let terms: BTreeSet<&String> = terms.iter().collect();
    let mut df: BTreeMap<&String, usize> = BTreeMap::new();
    for t in &terms {
        df.insert(t, docs.iter().filter(|(_, toks)| toks.contains(t)).count());
    }
    let mut out = Vec::new();
    for (id, toks) in docs {
        let mut score = 0.0;
        let mut hit = false;
        for t in &terms {
            let tf = toks.iter().filter(|x| x == t).count();
            if tf > 0 {
                hit = true;
                score += tf as f64 * ((n / df[t] as f64).ln() + 1.0);
            }
        }
        if hit {
            out.push((id.clone(), score));
        }
    }
    out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
    out
}
