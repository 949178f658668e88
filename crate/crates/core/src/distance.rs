//! Optimal string alignment (restricted Damerau-Levenshtein) distance.

/// Edit distance over arbitrary symbol slices: insertion, deletion,
/// substitution and adjacent transposition each cost 1, and no substring is
/// edited twice.
pub fn osa_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let width = b.len() + 1;
    // three rolling rows: i-2, i-1, i
    let mut prev2 = vec![0usize; width];
    let mut prev: Vec<usize> = (0..width).collect();
    let mut cur = vec![0usize; width];

    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut d = (prev[j] + 1).min(cur[j - 1] + 1).min(prev[j - 1] + cost);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                d = d.min(prev2[j - 2] + 1);
            }
            cur[j] = d;
        }
        std::mem::swap(&mut prev2, &mut prev);
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Distance between two strings counted in Unicode scalars.
pub fn damerau_levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    osa_distance(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Full-matrix recursive definition, kept separate from the rolling-row
    /// implementation above.
    fn oracle(a: &[char], b: &[char]) -> usize {
        let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
        for (i, row) in d.iter_mut().enumerate() {
            row[0] = i;
        }
        for (j, v) in d[0].iter_mut().enumerate() {
            *v = j;
        }
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                let sub = if a[i - 1] == b[j - 1] { 0 } else { 1 };
                d[i][j] = *[d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + sub]
                    .iter()
                    .min()
                    .unwrap();
                if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                    d[i][j] = d[i][j].min(d[i - 2][j - 2] + 1);
                }
            }
        }
        d[a.len()][b.len()]
    }

    fn levenshtein(a: &[char], b: &[char]) -> usize {
        let mut prev: Vec<usize> = (0..=b.len()).collect();
        for (i, ca) in a.iter().enumerate() {
            let mut cur = vec![i + 1; b.len() + 1];
            for (j, cb) in b.iter().enumerate() {
                cur[j + 1] = (prev[j + 1] + 1)
                    .min(cur[j] + 1)
                    .min(prev[j] + usize::from(ca != cb));
            }
            prev = cur;
        }
        prev[b.len()]
    }

    #[test]
    fn known_values() {
        assert_eq!(damerau_levenshtein("ចាំរៀង", "ចំរៀង"), 1);
        assert_eq!(damerau_levenshtein("ស្ត្រី", "ស្ត្រី"), 0);
        assert_eq!(damerau_levenshtein("", "កខគ"), 3);
        assert_eq!(damerau_levenshtein("កខគ", ""), 3);
        assert_eq!(damerau_levenshtein("ab", "ba"), 1);
        // OSA, not unrestricted Damerau
        assert_eq!(damerau_levenshtein("ca", "abc"), 3);
        assert_eq!(damerau_levenshtein("kitten", "sitting"), 3);
    }

    #[test]
    fn khmer_pair_matches_oracle() {
        let a: Vec<char> = "ចាំរៀង".chars().collect();
        let b: Vec<char> = "ចំរៀង".chars().collect();
        assert_eq!(oracle(&a, &b), 1);
    }

    fn small_string() -> impl Strategy<Value = Vec<char>> {
        prop::collection::vec(prop::sample::select(vec!['ក', 'ខ', 'ា', '្', 'រ', 'a', 'b']), 0..9)
    }

    proptest! {
        #[test]
        fn agrees_with_oracle(a in small_string(), b in small_string()) {
            prop_assert_eq!(osa_distance(&a, &b), oracle(&a, &b));
        }

        #[test]
        fn symmetric(a in small_string(), b in small_string()) {
            prop_assert_eq!(osa_distance(&a, &b), osa_distance(&b, &a));
        }

        #[test]
        fn identity_and_bounds(a in small_string(), b in small_string()) {
            prop_assert_eq!(osa_distance(&a, &a), 0);
            let d = osa_distance(&a, &b);
            prop_assert!(d <= a.len().max(b.len()));
            prop_assert!(d >= a.len().abs_diff(b.len()));
            prop_assert!(d <= levenshtein(&a, &b));
        }

        #[test]
        fn levenshtein_triangle(a in small_string(), b in small_string(), c in small_string()) {
            prop_assert!(levenshtein(&a, &c) <= levenshtein(&a, &b) + levenshtein(&b, &c));
        }
    }
}
