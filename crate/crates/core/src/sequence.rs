//! Integer sequences: ascent sequences, binary words and their pattern relations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{parse_word, write_word};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntSequence(Vec<usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryStats {
    pub inv: usize,
    pub ones: usize,
    pub zerozeros: usize,
    pub oneones: usize,
    pub lastentry: usize,
}

impl IntSequence {
    pub fn new(entries: Vec<usize>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn is_ascent_sequence(&self) -> bool {
        self.ascent_violation().is_none()
    }

    /// First index breaking the ascent-sequence condition, with the bound it broke.
    pub fn ascent_violation(&self) -> Option<(usize, usize)> {
        let mut ascents = 0;
        for (i, &e) in self.0.iter().enumerate() {
            let bound = if i == 0 { 0 } else { ascents + 1 };
            if e > bound {
                return Some((i, bound));
            }
            if i > 0 && self.0[i - 1] < e {
                ascents += 1;
            }
        }
        None
    }

    pub fn ascents(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] < w[1]).count()
    }

    /// Order-isomorphic containment, equalities included.
    pub fn contains(&self, pattern: &IntSequence) -> bool {
        SeqMatcher::new(&pattern.0).occurs_in(&self.0)
    }

    /// Literal subsequence containment of a binary word.
    pub fn bin_contains(&self, pattern: &IntSequence) -> Result<bool> {
        check_binary(&self.0)?;
        check_binary(&pattern.0)?;
        Ok(literal_subsequence(&self.0, &pattern.0))
    }

    pub fn binary_stats(&self) -> Result<BinaryStats> {
        check_binary(&self.0)?;
        let lastentry = *self.0.last().ok_or(Error::UndefinedOnEmpty { stat: "lastentry" })?;
        let ones = self.0.iter().filter(|&&e| e == 1).count();
        let zeros = self.0.len() - ones;
        let mut inv = 0;
        let mut seen_ones = 0;
        for &e in &self.0 {
            if e == 1 {
                seen_ones += 1;
            } else {
                inv += seen_ones;
            }
        }
        Ok(BinaryStats {
            inv,
            ones,
            zerozeros: zeros * zeros.saturating_sub(1) / 2,
            oneones: ones * ones.saturating_sub(1) / 2,
            lastentry,
        })
    }
}

pub(crate) fn check_binary(entries: &[usize]) -> Result<()> {
    match entries.iter().find(|&&e| e > 1) {
        Some(&e) => Err(Error::NotBinary(e)),
        None => Ok(()),
    }
}

pub(crate) fn literal_subsequence(text: &[usize], pattern: &[usize]) -> bool {
    let mut it = text.iter();
    pattern.iter().all(|p| it.any(|t| t == p))
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.0)
    }
}

impl FromStr for IntSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
            .map(IntSequence)
            .map_err(|e| Error::InvalidSequence(format!("{s:?}: {e}")))
    }
}

impl From<Vec<usize>> for IntSequence {
    fn from(entries: Vec<usize>) -> Self {
        Self(entries)
    }
}

/// An order pattern on integer words, with ties significant.
#[derive(Clone, Debug)]
pub struct SeqMatcher {
    pattern: Vec<usize>,
}

impl SeqMatcher {
    pub fn new(pattern: &[usize]) -> Self {
        Self {
            pattern: pattern.to_vec(),
        }
    }

    pub fn occurs_in(&self, text: &[usize]) -> bool {
        let mut chosen = vec![0; self.pattern.len()];
        self.search(text, 0, 0, text.len(), &mut chosen)
    }

    /// Whether an occurrence ends at the last entry of `text`.
    pub fn occurs_ending_at_last(&self, text: &[usize]) -> bool {
        let k = self.pattern.len();
        if k == 0 || text.is_empty() {
            return k == 0;
        }
        let mut chosen = vec![0; k];
        chosen[k - 1] = *text.last().unwrap();
        let head = &text[..text.len() - 1];
        self.search_with_tail(head, 0, 0, &mut chosen)
    }

    fn fits(&self, t: usize, v: usize, chosen: &[usize], upto: usize) -> bool {
        (0..upto).all(|s| self.pattern[s].cmp(&self.pattern[t]) == chosen[s].cmp(&v))
    }

    fn search(&self, text: &[usize], t: usize, start: usize, end: usize, chosen: &mut [usize]) -> bool {
        let k = self.pattern.len();
        if t == k {
            return true;
        }
        if end < start || end - start < k - t {
            return false;
        }
        for i in start..=end - (k - t) {
            let v = text[i];
            if self.fits(t, v, chosen, t) {
                chosen[t] = v;
                if self.search(text, t + 1, i + 1, end, chosen) {
                    return true;
                }
            }
        }
        false
    }

    fn search_with_tail(&self, head: &[usize], t: usize, start: usize, chosen: &mut [usize]) -> bool {
        let k = self.pattern.len();
        if t + 1 == k {
            let last = chosen[k - 1];
            return self.fits(k - 1, last, chosen, k - 1);
        }
        let need = k - 1 - t;
        if head.len() < start + need {
            return false;
        }
        for i in start..=head.len() - need {
            let v = head[i];
            if self.fits(t, v, chosen, t) {
                chosen[t] = v;
                if self.search_with_tail(head, t + 1, i + 1, chosen) {
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(w: &str) -> IntSequence {
        w.parse().unwrap()
    }

    fn naive_seq_contains(text: &[usize], pattern: &[usize]) -> bool {
        let n = text.len();
        let k = pattern.len();
        (0u32..(1 << n)).any(|mask| {
            if mask.count_ones() as usize != k {
                return false;
            }
            let sub: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| text[i]).collect();
            (0..k).all(|a| (0..k).all(|b| sub[a].cmp(&sub[b]) == pattern[a].cmp(&pattern[b])))
        })
    }

    #[test]
    fn ascent_sequence_examples() {
        assert!(s("001021301").is_ascent_sequence());
        assert!(!s("001031201").is_ascent_sequence());
        assert!(s("0").is_ascent_sequence());
        assert!(!s("1").is_ascent_sequence());
        assert!(s("").is_ascent_sequence());
        assert_eq!(s("001031201").ascent_violation(), Some((4, 2)));
    }

    #[test]
    fn order_containment_examples() {
        let w = s("0110132");
        assert!(w.contains(&s("000")));
        assert!(w.contains(&s("021")));
        assert!(!w.contains(&s("210")));
        assert!(!s("00000").contains(&s("01")));
        assert!(s("0101").contains(&s("101")));
    }

    #[test]
    fn literal_and_order_relations_differ() {
        assert!(!s("1111").bin_contains(&s("000")).unwrap());
        assert!(s("1111").contains(&s("000")));
        assert!(s("010").bin_contains(&s("00")).unwrap());
        assert!(!s("").bin_contains(&s("0")).unwrap());
        assert_eq!(s("012").bin_contains(&s("0")), Err(Error::NotBinary(2)));
    }

    #[test]
    fn binary_statistics() {
        let st = s("0110").binary_stats().unwrap();
        assert_eq!(
            st,
            BinaryStats { inv: 2, ones: 2, zerozeros: 1, oneones: 1, lastentry: 0 }
        );
        let z = s("00000").binary_stats().unwrap();
        assert_eq!((z.inv, z.ones, z.zerozeros, z.oneones, z.lastentry), (0, 0, 10, 0, 0));
        let one = s("1").binary_stats().unwrap();
        assert_eq!((one.inv, one.ones, one.zerozeros, one.oneones, one.lastentry), (0, 1, 0, 0, 1));
        assert!(s("").binary_stats().is_err());
    }

    proptest! {
        #[test]
        fn order_containment_matches_subset_scan(
            text in proptest::collection::vec(0usize..4, 0..10),
            pattern in proptest::collection::vec(0usize..3, 1..4),
        ) {
            prop_assert_eq!(
                IntSequence::new(text.clone()).contains(&IntSequence::new(pattern.clone())),
                naive_seq_contains(&text, &pattern)
            );
        }

        #[test]
        fn tail_match_is_new_occurrence(
            text in proptest::collection::vec(0usize..4, 1..10),
            pattern in proptest::collection::vec(0usize..3, 1..4),
        ) {
            let m = SeqMatcher::new(&pattern);
            let head = &text[..text.len() - 1];
            if m.occurs_in(&text) && !m.occurs_in(head) {
                prop_assert!(m.occurs_ending_at_last(&text));
            }
            if m.occurs_ending_at_last(&text) {
                prop_assert!(m.occurs_in(&text));
            }
        }
    }
}
