//! Character-level text utilities.
//!
//! All spans in this crate are expressed in *character* offsets (Unicode
//! scalar values), never bytes, so that offsets survive the round trip
//! through JSON interchange files consumed by Python tooling. The helpers
//! here do the char/byte bookkeeping in one place.

use std::borrow::Cow;

use unicode_normalization::{is_nfc, UnicodeNormalization};

/// Normalizes text to Unicode NFC, borrowing when already normalized.
pub fn nfc(text: &str) -> Cow<'_, str> {
    if is_nfc(text) {
        Cow::Borrowed(text)
    } else {
        Cow::Owned(text.nfc().collect())
    }
}

/// Number of characters (not bytes) in `text`.
pub fn char_len(text: &str) -> usize {
    text.chars().count()
}

/// Maps a character range to the corresponding byte range, if in bounds.
pub fn byte_range(text: &str, start: usize, end: usize) -> Option<std::ops::Range<usize>> {
    if start > end {
        return None;
    }
    let mut byte_start = None;
    let mut byte_end = None;
    for (char_idx, (byte_idx, _)) in text.char_indices().enumerate() {
        if char_idx == start {
            byte_start = Some(byte_idx);
        }
        if char_idx == end {
            byte_end = Some(byte_idx);
            break;
        }
    }
    let total_chars = char_len(text);
    if start == total_chars {
        byte_start = Some(text.len());
    }
    if end == total_chars {
        byte_end = Some(text.len());
    }
    Some(byte_start?..byte_end?)
}

/// Extracts the substring covering the character range `start..end`.
pub fn char_slice(text: &str, start: usize, end: usize) -> Option<&str> {
    byte_range(text, start, end).map(|r| &text[r])
}

/// Character ranges of the tokens of `text`.
///
/// A token is either a maximal run of alphanumeric characters or a single
/// non-alphanumeric, non-whitespace character (punctuation and symbols stand
/// alone). Tokens tile the non-whitespace content of the text exactly.
pub fn token_ranges(text: &str) -> Vec<(usize, usize)> {
    let mut ranges = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some((idx, ch)) = chars.next() {
        if ch.is_whitespace() {
            continue;
        }
        if ch.is_alphanumeric() {
            let mut end = idx + 1;
            while let Some(&(next_idx, next_ch)) = chars.peek() {
                if next_ch.is_alphanumeric() {
                    chars.next();
                    end = next_idx + 1;
                } else {
                    break;
                }
            }
            ranges.push((idx, end));
        } else {
            ranges.push((idx, idx + 1));
        }
    }
    ranges
}

/// Lowercase fold used for case-insensitive comparisons. Uses the full
/// Unicode lowercase mapping, so the result may be longer than the input.
pub fn casefold(text: &str) -> String {
    text.chars().flat_map(char::to_lowercase).collect()
}

/// Collapses every whitespace run to a single ASCII space and trims the ends.
pub fn normalize_ws(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Leftmost case-insensitive occurrence of `needle` in `haystack`, as a
/// character range into the *original* haystack.
///
/// Both strings are compared under [`casefold`]. Because folding can expand a
/// character into several (e.g. `İ` folds to two characters), matches are
/// only accepted when they start and end on original-character boundaries.
pub fn find_ci(haystack: &str, needle: &str) -> Option<(usize, usize)> {
    if needle.is_empty() {
        return None;
    }
    let needle_folded: Vec<char> = needle.chars().flat_map(char::to_lowercase).collect();
    // Fold the haystack, remembering which original character each folded
    // character came from.
    let mut folded: Vec<char> = Vec::with_capacity(haystack.len());
    let mut origin: Vec<usize> = Vec::with_capacity(haystack.len());
    for (char_idx, ch) in haystack.chars().enumerate() {
        for low in ch.to_lowercase() {
            folded.push(low);
            origin.push(char_idx);
        }
    }
    if needle_folded.len() > folded.len() {
        return None;
    }
    for start in 0..=(folded.len() - needle_folded.len()) {
        // The match must begin at an original-character boundary…
        if start > 0 && origin[start] == origin[start - 1] {
            continue;
        }
        let end = start + needle_folded.len();
        // …and end at one.
        if end < folded.len() && origin[end] == origin[end - 1] {
            continue;
        }
        if folded[start..end] == needle_folded[..] {
            return Some((origin[start], origin[end - 1] + 1));
        }
    }
    None
}
