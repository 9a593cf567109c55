//! String similarity primitives used by the fuzzy alignment stage.
//!
//! Both measures operate on characters (Unicode scalar values), not bytes.
//! [`gestalt_ratio`] follows the Ratcliff-Obershelp definition as popularized
//! by Python's `difflib.SequenceMatcher.ratio()`: recursively match the
//! longest common substring, preferring the earliest start in the first
//! string and then in the second on ties. Like `ratio()`, it is not
//! symmetric in its arguments.

/// Levenshtein edit distance (unit-cost insert/delete/substitute) over
/// characters.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut previous: Vec<usize> = (0..=b.len()).collect();
    let mut current = vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        current[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let substitution = previous[j] + usize::from(ca != cb);
            current[j + 1] = substitution
                .min(previous[j + 1] + 1)
                .min(current[j] + 1);
        }
        std::mem::swap(&mut previous, &mut current);
    }
    previous[b.len()]
}

/// Levenshtein distance normalized to a similarity in `[0, 1]`:
/// `1 - distance / max(|a|, |b|)`. Two empty strings are fully similar.
pub fn levenshtein_similarity(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein(a, b) as f64 / longest as f64
}

/// Gestalt pattern-matching similarity: `2·M / (|a| + |b|)` where `M` is the
/// total number of characters matched by recursively taking the longest
/// common substring. Two empty strings compare as `1.0`.
pub fn gestalt_ratio(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let total = a.len() + b.len();
    if total == 0 {
        return 1.0;
    }
    let matched = matching_chars(&a, &b);
    2.0 * matched as f64 / total as f64
}

/// Total characters matched by the recursive longest-common-substring
/// decomposition.
fn matching_chars(a: &[char], b: &[char]) -> usize {
    match longest_common_substring(a, b) {
        None => 0,
        Some((ai, bi, len)) => {
            len + matching_chars(&a[..ai], &b[..bi])
                + matching_chars(&a[ai + len..], &b[bi + len..])
        }
    }
}

/// The longest common substring of `a` and `b` as `(start_in_a, start_in_b,
/// length)`. Ties prefer the smallest start in `a`, then the smallest start
/// in `b`. `None` when the strings share no character.
fn longest_common_substring(a: &[char], b: &[char]) -> Option<(usize, usize, usize)> {
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let mut best: Option<(usize, usize, usize)> = None;
    // lengths[j] = length of the common suffix of a[..i] and b[..j].
    let mut previous = vec![0usize; b.len() + 1];
    let mut current = vec![0usize; b.len() + 1];
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            current[j] = if a[i - 1] == b[j - 1] {
                previous[j - 1] + 1
            } else {
                0
            };
            let len = current[j];
            // Strictly-greater keeps the first maximal match in scan order,
            // which is exactly the earliest-in-a, then earliest-in-b rule.
            if len > best.map_or(0, |(_, _, l)| l) {
                best = Some((i - len, j - len, len));
            }
        }
        std::mem::swap(&mut previous, &mut current);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levenshtein_known_values() {
        assert_eq!(levenshtein("kitten", "sitting"), 3);
        assert_eq!(levenshtein("", ""), 0);
        assert_eq!(levenshtein("", "abc"), 3);
        assert_eq!(levenshtein("abc", ""), 3);
        assert_eq!(levenshtein("flaw", "lawn"), 2);
        assert_eq!(levenshtein("desembarcam", "desembarcar"), 1);
    }

    #[test]
    fn levenshtein_counts_characters_not_bytes() {
        assert_eq!(levenshtein("café", "cafe"), 1);
        assert_eq!(levenshtein("São", "Sao"), 1);
    }

    #[test]
    fn levenshtein_similarity_bounds() {
        assert_eq!(levenshtein_similarity("", ""), 1.0);
        assert_eq!(levenshtein_similarity("abc", "abc"), 1.0);
        assert_eq!(levenshtein_similarity("abc", "xyz"), 0.0);
        let sim = levenshtein_similarity("desembarcam", "desembarcar");
        assert!((sim - (1.0 - 1.0 / 11.0)).abs() < 1e-12);
    }

    #[test]
    fn gestalt_known_values() {
        assert_eq!(gestalt_ratio("", ""), 1.0);
        assert_eq!(gestalt_ratio("abc", "abc"), 1.0);
        assert_eq!(gestalt_ratio("abc", ""), 0.0);
        assert!((gestalt_ratio("abcd", "bcde") - 0.75).abs() < 1e-12);
        assert!((gestalt_ratio("abab", "bab") - 6.0 / 7.0).abs() < 1e-12);
        assert!((gestalt_ratio("desembarcam", "desembarcar") - 20.0 / 22.0).abs() < 1e-12);
    }

    #[test]
    fn gestalt_is_order_dependent() {
        // The recursive decomposition after the first match differs with
        // argument order; these are the standard reference values.
        assert!((gestalt_ratio("tide", "diet") - 0.25).abs() < 1e-12);
        assert!((gestalt_ratio("diet", "tide") - 0.5).abs() < 1e-12);
    }

    #[test]
    fn gestalt_tie_breaks_toward_earliest_match() {
        // The length-1 match for 'a' could bind to either 'a' of "aa";
        // binding to the first leaves the second free for the right-hand
        // recursion, yielding M = 2.
        assert!((gestalt_ratio("xaya", "aa") - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn longest_common_substring_prefers_earliest_starts() {
        let a: Vec<char> = "ab".chars().collect();
        let b: Vec<char> = "ba".chars().collect();
        assert_eq!(longest_common_substring(&a, &b), Some((0, 1, 1)));
        let a: Vec<char> = "xaya".chars().collect();
        let b: Vec<char> = "aa".chars().collect();
        assert_eq!(longest_common_substring(&a, &b), Some((1, 0, 1)));
    }
}
