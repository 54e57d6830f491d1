use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::{check_binary, literal_subsequence, IntSequence, SeqMatcher};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeqKind {
    /// Ascent sequences, with order-isomorphic patterns.
    Ascent,
    /// All binary words, with literal subsequence patterns.
    Binary,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqClassSpec {
    kind: SeqKind,
    avoid: Vec<IntSequence>,
}

impl SeqClassSpec {
    pub fn new(kind: SeqKind, mut avoid: Vec<IntSequence>) -> Result<Self> {
        for a in &avoid {
            if a.is_empty() {
                return Err(Error::InvalidPattern("sequence pattern must be nonempty".into()));
            }
            if kind == SeqKind::Binary {
                check_binary(a.entries())?;
            }
        }
        avoid.sort();
        avoid.dedup();
        Ok(Self { kind, avoid })
    }

    pub fn parse(kind: SeqKind, patterns: &[&str]) -> Result<Self> {
        let avoid = patterns.iter().map(|p| p.parse()).collect::<Result<Vec<_>>>()?;
        Self::new(kind, avoid)
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn avoid(&self) -> &[IntSequence] {
        &self.avoid
    }

    pub fn admits(&self, s: &IntSequence) -> bool {
        match self.kind {
            SeqKind::Ascent => s.is_ascent_sequence() && self.avoid.iter().all(|a| !s.contains(a)),
            SeqKind::Binary => {
                s.is_binary()
                    && self
                        .avoid
                        .iter()
                        .all(|a| !literal_subsequence(s.entries(), a.entries()))
            }
        }
    }
}

impl fmt::Display for SeqClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            SeqKind::Ascent => "A",
            SeqKind::Binary => "B",
        };
        let pats: Vec<String> = self.avoid.iter().map(|p| p.to_string()).collect();
        write!(f, "{letter}({})", pats.join(","))
    }
}

struct SeqWalker<'a> {
    spec: &'a SeqClassSpec,
    matchers: Vec<SeqMatcher>,
    target: usize,
}

impl SeqWalker<'_> {
    fn fresh_occurrence(&self, word: &[usize]) -> bool {
        match self.spec.kind {
            SeqKind::Ascent => self.matchers.iter().any(|m| m.occurs_ending_at_last(word)),
            SeqKind::Binary => {
                let (&last, head) = word.split_last().expect("nonempty word");
                self.spec.avoid.iter().any(|a| {
                    let (&end, rest) = a.entries().split_last().expect("nonempty pattern");
                    end == last && literal_subsequence(head, rest)
                })
            }
        }
    }

    fn walk<F: FnMut(&[usize]) -> Result<()>>(&self, word: &mut Vec<usize>, ascents: usize, leaf: &mut F) -> Result<()> {
        if word.len() == self.target {
            return leaf(word);
        }
        let bound = match (self.spec.kind, word.last()) {
            (SeqKind::Binary, _) => 1,
            (SeqKind::Ascent, None) => 0,
            (SeqKind::Ascent, Some(_)) => ascents + 1,
        };
        for e in 0..=bound {
            let rise = word.last().is_some_and(|&l| l < e) as usize;
            word.push(e);
            if !self.fresh_occurrence(word) {
                self.walk(word, ascents + rise, leaf)?;
            }
            word.pop();
        }
        Ok(())
    }

    fn run<F: FnMut(&[usize]) -> Result<()>>(spec: &SeqClassSpec, n: usize, mut leaf: F) -> Result<()> {
        let walker = SeqWalker {
            spec,
            matchers: spec.avoid.iter().map(|a| SeqMatcher::new(a.entries())).collect(),
            target: n,
        };
        walker.walk(&mut Vec::with_capacity(n), 0, &mut leaf)
    }
}

pub fn count_seq_class(spec: &SeqClassSpec, n: usize) -> Result<u64> {
    let mut count = 0u64;
    SeqWalker::run(spec, n, |_| {
        count = count.checked_add(1).ok_or(Error::Overflow("sequence class count"))?;
        Ok(())
    })?;
    Ok(count)
}

pub fn seq_members(spec: &SeqClassSpec, n: usize) -> Vec<IntSequence> {
    let mut out = Vec::new();
    SeqWalker::run(spec, n, |w| {
        out.push(IntSequence::new(w.to_vec()));
        Ok(())
    })
    .expect("collecting members cannot fail");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(n: usize, alphabet: usize) -> Vec<IntSequence> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..alphabet).map(move |e| {
                        let mut x = w.clone();
                        x.push(e);
                        x
                    })
                })
                .collect();
        }
        out.into_iter().map(IntSequence::new).collect()
    }

    #[test]
    fn examples() {
        let a120 = SeqClassSpec::parse(SeqKind::Ascent, &["120"]).unwrap();
        assert_eq!(count_seq_class(&a120, 10).unwrap(), 20754);
        let a101 = SeqClassSpec::parse(SeqKind::Ascent, &["101"]).unwrap();
        assert_eq!(count_seq_class(&a101, 6).unwrap(), 132);
        let b000 = SeqClassSpec::parse(SeqKind::Binary, &["000"]).unwrap();
        assert_eq!(count_seq_class(&b000, 4).unwrap(), 11);
        let free = SeqClassSpec::parse(SeqKind::Ascent, &[]).unwrap();
        let got: Vec<u64> = (0..=7).map(|n| count_seq_class(&free, n).unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 15, 53, 217, 1014]);
        assert!(SeqClassSpec::parse(SeqKind::Binary, &["012"]).is_err());
        assert!(SeqClassSpec::new(SeqKind::Ascent, vec![IntSequence::default()]).is_err());
        assert_eq!(b000.to_string(), "B(000)");
    }

    #[test]
    fn pruned_search_matches_filtering() {
        let ascent = [vec!["012"], vec!["101", "021"], vec!["0000"], vec!["201", "1"]];
        for pats in &ascent {
            let spec = SeqClassSpec::parse(SeqKind::Ascent, pats).unwrap();
            for n in 0..=6 {
                let brute: Vec<_> = words(n, n.max(1)).into_iter().filter(|s| spec.admits(s)).collect();
                assert_eq!(seq_members(&spec, n), brute, "{spec} n={n}");
            }
        }
        let binary = [vec!["101"], vec!["0", "11"], vec!["1100", "010"]];
        for pats in &binary {
            let spec = SeqClassSpec::parse(SeqKind::Binary, pats).unwrap();
            for n in 0..=9 {
                let brute: Vec<_> = words(n, 2).into_iter().filter(|s| spec.admits(s)).collect();
                assert_eq!(seq_members(&spec, n), brute, "{spec} n={n}");
            }
        }
    }
}
