//! Symmetric-delete candidate index over symbol sequences.
//!
//! Every dictionary item is stored under each variant reachable by deleting
//! up to `max_distance` symbols. A query generates its own delete variants;
//! any shared variant makes the item a candidate, which is then verified with
//! the true OSA distance.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use crate::distance::osa_distance;

#[derive(Debug, Clone)]
pub struct SymmetricDeleteIndex<S> {
    max_distance: usize,
    items: Vec<Vec<S>>,
    entries: HashMap<Vec<S>, Vec<u32>>,
}

/// All distinct sequences obtainable by deleting at most `max_deletes`
/// symbols, including the sequence itself.
pub fn delete_variants<S: Clone + Eq + Hash>(seq: &[S], max_deletes: usize) -> HashSet<Vec<S>> {
    let mut seen: HashSet<Vec<S>> = HashSet::new();
    seen.insert(seq.to_vec());
    let mut frontier = vec![seq.to_vec()];
    for _ in 0..max_deletes {
        let mut next = Vec::new();
        for s in &frontier {
            for i in 0..s.len() {
                let mut v = Vec::with_capacity(s.len() - 1);
                v.extend_from_slice(&s[..i]);
                v.extend_from_slice(&s[i + 1..]);
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

impl<S: Clone + Eq + Hash> SymmetricDeleteIndex<S> {
    /// Items are indexed in the order given; their position is the id
    /// returned by [`candidates`](Self::candidates). Callers deduplicate.
    pub fn build<I>(items: I, max_distance: usize) -> Self
    where
        I: IntoIterator<Item = Vec<S>>,
    {
        let items: Vec<Vec<S>> = items.into_iter().collect();
        let mut entries: HashMap<Vec<S>, Vec<u32>> = HashMap::new();
        for (id, item) in items.iter().enumerate() {
            for v in delete_variants(item, max_distance) {
                entries.entry(v).or_default().push(id as u32);
            }
        }
        SymmetricDeleteIndex {
            max_distance,
            items,
            entries,
        }
    }

    pub fn max_distance(&self) -> usize {
        self.max_distance
    }

    pub fn items(&self) -> &[Vec<S>] {
        &self.items
    }

    pub fn variant_count(&self) -> usize {
        self.entries.len()
    }

    pub fn variants(&self) -> impl Iterator<Item = &Vec<S>> {
        self.entries.keys()
    }

    /// Ids under one exact delete variant.
    pub fn ids_for(&self, variant: &[S]) -> &[u32] {
        self.entries.get(variant).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Every item within `max_distance` of `query` with its distance, in id
    /// order. `max_distance` is clamped to the build distance.
    pub fn candidates(&self, query: &[S], max_distance: usize) -> Vec<(u32, usize)> {
        let max_distance = max_distance.min(self.max_distance);
        let mut ids: HashSet<u32> = HashSet::new();
        for v in delete_variants(query, max_distance) {
            if let Some(list) = self.entries.get(&v) {
                ids.extend(list.iter().copied());
            }
        }
        let mut out: Vec<(u32, usize)> = ids
            .into_iter()
            .filter_map(|id| {
                let item = &self.items[id as usize];
                if item.len().abs_diff(query.len()) > max_distance {
                    return None;
                }
                let d = osa_distance(query, item);
                (d <= max_distance).then_some((id, d))
            })
            .collect();
        out.sort_unstable();
        out
    }
}
