//! Permutations in one-line notation, classical and Fishburn pattern containment,
//! and the permutation statistics used throughout the crate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a rearrangement of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self(values)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        Self((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    /// Zero-based position of every value; index 0 is unused.
    pub fn positions(&self) -> Vec<usize> {
        positions_of(&self.0)
    }

    pub fn inv(&self) -> usize {
        inversions(&self.0)
    }

    pub fn ltrmax(&self) -> usize {
        left_to_right_maxima(&self.0)
    }

    /// Number of entries to the right of the entry 1.
    pub fn afterone(&self) -> Result<usize> {
        let pos = self
            .0
            .iter()
            .position(|&v| v == 1)
            .ok_or(Error::UndefinedOnEmpty { stat: "afterone" })?;
        Ok(self.0.len() - 1 - pos)
    }

    pub fn has_descent(&self) -> bool {
        self.0.windows(2).any(|w| w[0] > w[1])
    }

    pub fn contains(&self, pattern: &PatternSpec) -> bool {
        match pattern {
            PatternSpec::FishburnF => contains_f(&self.0),
            PatternSpec::Classical(p) => CompiledPattern::new(p).occurs_in(&self.0),
        }
    }

    pub fn avoids(&self, pattern: &PatternSpec) -> bool {
        !self.contains(pattern)
    }

    pub fn contains_perm(&self, pattern: &Permutation) -> bool {
        CompiledPattern::new(pattern).occurs_in(&self.0)
    }

    pub fn is_fishburn(&self) -> bool {
        !contains_f(&self.0)
    }

    pub fn count_f_occurrences(&self) -> usize {
        count_f(&self.0)
    }

    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.len();
        let mut values = self.0.clone();
        values.extend(other.0.iter().map(|v| v + shift));
        Permutation(values)
    }

    pub fn is_indecomposable(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::UndefinedOnEmpty {
                stat: "indecomposability",
            });
        }
        Ok(indecomposable(&self.0))
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| self.0[v - 1] == i + 1)
    }

    pub fn classify_restrictive(&self) -> Restrictiveness {
        let v = &self.0;
        if !contains_f(v) || self.contains_perm(&perm_lit(&[1, 2, 3])) {
            return Restrictiveness::Neither;
        }
        if self.contains_perm(&perm_lit(&[2, 4, 1, 3]))
            || self.contains_perm(&perm_lit(&[3, 4, 1, 2]))
        {
            Restrictiveness::Unrestrictive
        } else {
            Restrictiveness::Restrictive
        }
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((1..=n).collect()),
        }
    }
}

fn perm_lit(values: &[usize]) -> Permutation {
    Permutation(values.to_vec())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.0)
    }
}

pub(crate) fn write_word(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    if values.iter().all(|&v| v <= 9) {
        for v in values {
            write!(f, "{v}")?;
        }
    } else {
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
    }
    Ok(())
}

/// Parses `"4175326"` or `"10,2,1,..."`. Whitespace-separated entries are also accepted.
pub(crate) fn parse_word(s: &str) -> std::result::Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') || s.contains(char::is_whitespace) {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| tok.parse::<usize>().map_err(|_| format!("bad entry {tok:?}")))
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| format!("bad digit {c:?}"))
            })
            .collect()
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_word(s).map_err(|e| Error::InvalidPermutation(format!("{s:?}: {e}")))?;
        Permutation::new(values)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation(current))
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A pattern to avoid or contain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternSpec {
    Classical(Permutation),
    /// The bivincular pattern: entries `p_j, p_{j+1}, p_k` with `j + 1 < k`,
    /// `p_j = p_k + 1` and `p_{j+1} > p_j`.
    FishburnF,
}

impl PatternSpec {
    pub fn classical(p: Permutation) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidPattern("classical pattern must be nonempty".into()));
        }
        Ok(Self::Classical(p))
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Classical(p) => write!(f, "{p}"),
            Self::FishburnF => f.write_str("f"),
        }
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "f" {
            return Ok(Self::FishburnF);
        }
        Self::classical(s.parse()?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Restrictiveness {
    Restrictive,
    Unrestrictive,
    Neither,
}

/// Builds the permutation with the members of `members` in decreasing order,
/// then 1, then the remaining values of `{2, ..., n}` in decreasing order.
pub fn pi_of_subset(n: usize, members: &[usize]) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::InvalidArgument("subset construction needs n >= 1".into()));
    }
    let mut inside = vec![false; n + 1];
    for &m in members {
        if m < 2 || m > n || inside[m] {
            return Err(Error::InvalidArgument(format!(
                "subset {members:?} must list distinct values from 2..={n}"
            )));
        }
        inside[m] = true;
    }
    let mut values: Vec<usize> = (2..=n).rev().filter(|&v| inside[v]).collect();
    values.push(1);
    values.extend((2..=n).rev().filter(|&v| !inside[v]));
    Ok(Permutation(values))
}

pub(crate) fn positions_of(values: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; values.len() + 1];
    for (i, &v) in values.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

pub(crate) fn inversions(values: &[usize]) -> usize {
    let mut count = 0;
    for (i, &a) in values.iter().enumerate() {
        count += values[i + 1..].iter().filter(|&&b| b < a).count();
    }
    count
}

pub(crate) fn left_to_right_maxima(values: &[usize]) -> usize {
    let mut best = 0;
    let mut count = 0;
    for &v in values {
        if v > best {
            best = v;
            count += 1;
        }
    }
    count
}

pub(crate) fn indecomposable(values: &[usize]) -> bool {
    let mut running = 0;
    for (i, &v) in values.iter().enumerate() {
        running = running.max(v);
        if running == i + 1 && i + 1 < values.len() {
            return false;
        }
    }
    !values.is_empty()
}

/// Number of witnesses `j` of the Fishburn pattern; each `j` determines its `k`.
pub(crate) fn count_f(values: &[usize]) -> usize {
    let pos = positions_of(values);
    (0..values.len().saturating_sub(1))
        .filter(|&j| {
            let a = values[j];
            a >= 2 && values[j + 1] > a && pos[a - 1] > j + 1
        })
        .count()
}

pub(crate) fn contains_f(values: &[usize]) -> bool {
    let pos = positions_of(values);
    (0..values.len().saturating_sub(1)).any(|j| {
        let a = values[j];
        a >= 2 && values[j + 1] > a && pos[a - 1] > j + 1
    })
}

const STACK_PATTERN: usize = 16;

/// A classical pattern prepared for repeated matching.
///
/// For each pattern index `t`, `below[t]`/`above[t]` name the earlier index whose
/// value is the nearest smaller/larger one; a partial match extends to `t` exactly
/// when the text value lies strictly between the values matched at those indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledPattern {
    values: Vec<usize>,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    max_index: usize,
}

impl CompiledPattern {
    pub fn new(pattern: &Permutation) -> Self {
        let values = pattern.values().to_vec();
        let k = values.len();
        let mut below = vec![None; k];
        let mut above = vec![None; k];
        for t in 0..k {
            for s in 0..t {
                if values[s] < values[t] && below[t].is_none_or(|b: usize| values[b] < values[s]) {
                    below[t] = Some(s);
                }
                if values[s] > values[t] && above[t].is_none_or(|b: usize| values[b] > values[s]) {
                    above[t] = Some(s);
                }
            }
        }
        let max_index = values.iter().position(|&v| v == k).unwrap_or(0);
        Self {
            values,
            below,
            above,
            max_index,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn occurs_in(&self, text: &[usize]) -> bool {
        self.run(text, None)
    }

    /// Whether an occurrence maps the pattern's maximum onto `text[pos]`.
    pub fn occurs_through_max(&self, text: &[usize], pos: usize) -> bool {
        self.run(text, Some(pos))
    }

    fn run(&self, text: &[usize], forced: Option<usize>) -> bool {
        let k = self.values.len();
        if k == 0 {
            return true;
        }
        if k > text.len() {
            return false;
        }
        if k <= STACK_PATTERN {
            let mut chosen = [0usize; STACK_PATTERN];
            self.search(text, 0, 0, &mut chosen, forced)
        } else {
            let mut chosen = vec![0usize; k];
            self.search(text, 0, 0, &mut chosen, forced)
        }
    }

    fn search(
        &self,
        text: &[usize],
        t: usize,
        start: usize,
        chosen: &mut [usize],
        forced: Option<usize>,
    ) -> bool {
        let k = self.values.len();
        if t == k {
            return true;
        }
        let lo = self.below[t].map_or(0, |s| chosen[s]);
        let hi = self.above[t].map_or(usize::MAX, |s| chosen[s]);
        let n = text.len();
        let last = match forced {
            Some(fp) if t == self.max_index => {
                if fp < start || fp >= n {
                    return false;
                }
                let v = text[fp];
                if v <= lo || v >= hi {
                    return false;
                }
                chosen[t] = v;
                return self.search(text, t + 1, fp + 1, chosen, forced);
            }
            Some(fp) if t < self.max_index => {
                let gap = self.max_index - t;
                if fp < gap {
                    return false;
                }
                fp - gap
            }
            _ => {
                if n < k - t {
                    return false;
                }
                n - (k - t)
            }
        };
        let mut i = start;
        while i <= last {
            let v = text[i];
            if v > lo && v < hi {
                chosen[t] = v;
                if self.search(text, t + 1, i + 1, chosen, forced) {
                    return true;
                }
            }
            i += 1;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> PatternSpec {
        s.parse().unwrap()
    }

    // Independent containment check over every index subset.
    fn naive_contains(text: &[usize], pattern: &[usize]) -> bool {
        let n = text.len();
        let k = pattern.len();
        if k > n {
            return false;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let ok = (0..k).all(|a| {
                (0..k).all(|b| (text[idx[a]] < text[idx[b]]) == (pattern[a] < pattern[b]))
            });
            if ok {
                return true;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                if idx[i] < n - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn naive_f(v: &[usize]) -> bool {
        let n = v.len();
        (0..n).any(|j| (j + 2..n).any(|k| j + 1 < n && v[j] == v[k] + 1 && v[j + 1] > v[j]))
    }

    #[test]
    fn statistics_from_definitions() {
        assert_eq!(p("5176243").inv(), 12);
        assert_eq!(p("3265174").ltrmax(), 3);
        assert_eq!(p("415326").afterone().unwrap(), 4);
        assert_eq!(Permutation::identity(6).inv(), 0);
        assert_eq!(Permutation::decreasing(6).inv(), 15);
        assert_eq!(Permutation::identity(6).ltrmax(), 6);
        assert_eq!(Permutation::decreasing(6).ltrmax(), 1);
        assert_eq!(Permutation::identity(5).afterone().unwrap(), 4);
        assert_eq!(Permutation::decreasing(5).afterone().unwrap(), 0);
        assert!(Permutation::empty().afterone().is_err());
    }

    #[test]
    fn containment_examples() {
        assert!(p("415326").contains(&pat("231")));
        assert!(!p("415326").contains(&pat("2413")));
        assert!(p("35142").contains(&PatternSpec::FishburnF));
        assert!(!p("3142").contains(&PatternSpec::FishburnF));
        assert!(!Permutation::identity(7).contains(&pat("21")));
        assert!(!Permutation::identity(7).contains(&pat("1432")));
        assert!(Permutation::empty().avoids(&pat("1")));
    }

    #[test]
    fn f_occurrences() {
        assert_eq!(p("231").count_f_occurrences(), 1);
        assert_eq!(Permutation::identity(6).count_f_occurrences(), 0);
        assert_eq!(p("3142").count_f_occurrences(), 0);
    }

    #[test]
    fn direct_sums_and_indecomposables() {
        assert_eq!(p("42531").direct_sum(&p("312")), p("42531867"));
        assert_eq!(Permutation::empty().direct_sum(&p("213")), p("213"));
        assert_eq!(p("1").direct_sum(&p("1")), p("12"));
        assert!(!p("42531867").is_indecomposable().unwrap());
        assert!(p("1").is_indecomposable().unwrap());
        assert!(!p("12").is_indecomposable().unwrap());
        assert!(Permutation::empty().is_indecomposable().is_err());
    }

    #[test]
    fn restrictiveness() {
        assert_eq!(p("231").classify_restrictive(), Restrictiveness::Restrictive);
        assert_eq!(p("3412").classify_restrictive(), Restrictiveness::Unrestrictive);
        assert_eq!(p("3142").classify_restrictive(), Restrictiveness::Neither);
    }

    #[test]
    fn restrictive_permutations_have_one_f() {
        for n in 0..=6 {
            for q in Permutation::all(n) {
                if q.classify_restrictive() == Restrictiveness::Restrictive {
                    assert_eq!(q.count_f_occurrences(), 1, "{q}");
                }
            }
        }
    }

    #[test]
    fn subset_construction() {
        assert_eq!(pi_of_subset(3, &[]).unwrap(), p("132"));
        assert_eq!(pi_of_subset(3, &[2, 3]).unwrap(), p("321"));
        assert_eq!(pi_of_subset(3, &[3]).unwrap(), p("312"));
        assert!(pi_of_subset(3, &[1]).is_err());
        assert!(pi_of_subset(3, &[4]).is_err());
    }

    #[test]
    fn subset_construction_hits_exactly_the_123_avoiders() {
        let f123 = pat("123");
        for n in 1..=8 {
            let mut image = std::collections::BTreeSet::new();
            for mask in 0u32..(1 << (n - 1)) {
                let members: Vec<usize> = (2..=n).filter(|v| mask >> (v - 2) & 1 == 1).collect();
                image.insert(pi_of_subset(n, &members).unwrap());
            }
            assert_eq!(image.len(), 1 << (n - 1));
            let direct: std::collections::BTreeSet<_> = Permutation::all(n)
                .filter(|q| q.is_fishburn() && q.avoids(&f123))
                .collect();
            assert_eq!(image, direct, "n={n}");
        }
    }

    #[test]
    fn fishburn_containing_231_contains_3142() {
        let (a, b) = (p("231"), p("3142"));
        for n in 0..=9 {
            for q in Permutation::all(n) {
                if q.is_fishburn() && q.contains_perm(&a) {
                    assert!(q.contains_perm(&b), "{q}");
                }
            }
        }
    }

    #[test]
    fn fishburn_and_231_agree_below_3142() {
        let big = p("3142");
        let f231 = p("231");
        let small: Vec<Permutation> = (1..=4)
            .flat_map(Permutation::all)
            .filter(|s| big.contains_perm(s))
            .collect();
        for n in 0..=8 {
            let all: Vec<Permutation> = Permutation::all(n).collect();
            for s in &small {
                let left = all.iter().filter(|q| q.is_fishburn() && !q.contains_perm(s));
                let right: Vec<_> = all
                    .iter()
                    .filter(|q| !q.contains_perm(&f231) && !q.contains_perm(s))
                    .collect();
                assert!(left.eq(right.into_iter()), "sigma={s}, n={n}");
            }
        }
    }

    #[test]
    fn fishburn_predicate_matches_triple_scan() {
        for n in 0..=8 {
            for q in Permutation::all(n) {
                assert_eq!(q.contains(&PatternSpec::FishburnF), naive_f(q.values()), "{q}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("312").to_string(), "312");
        let long: Permutation = "10,9,8,7,6,5,4,3,2,1".parse().unwrap();
        assert_eq!(long, Permutation::decreasing(10));
        assert_eq!(long.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert!("1224".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert!("".parse::<PatternSpec>().is_err());
        assert_eq!("f".parse::<PatternSpec>().unwrap(), PatternSpec::FishburnF);
        assert_eq!(Permutation::all(4).count(), 24);
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
        (0..=max)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(Permutation)
    }

    proptest! {
        #[test]
        fn compiled_matches_subset_scan(text in arb_perm(9), pattern in arb_perm(5)) {
            prop_assume!(!pattern.is_empty());
            prop_assert_eq!(
                text.contains_perm(&pattern),
                naive_contains(text.values(), pattern.values())
            );
        }

        #[test]
        fn forced_max_match_is_restriction(text in arb_perm(9), pattern in arb_perm(4)) {
            prop_assume!(!pattern.is_empty() && !text.is_empty());
            let cp = CompiledPattern::new(&pattern);
            let top = text.len();
            let pos = text.values().iter().position(|&v| v == top).unwrap();
            let without: Vec<usize> = text.values().iter().copied().filter(|&v| v != top).collect();
            let expected = naive_contains(text.values(), pattern.values())
                && !naive_contains(&without, pattern.values());
            if expected {
                prop_assert!(cp.occurs_through_max(text.values(), pos));
            }
            if cp.occurs_through_max(text.values(), pos) {
                prop_assert!(naive_contains(text.values(), pattern.values()));
            }
        }

        #[test]
        fn direct_sum_is_decomposable(a in arb_perm(5), b in arb_perm(5)) {
            prop_assume!(!a.is_empty() && !b.is_empty());
            prop_assert!(!a.direct_sum(&b).is_indecomposable().unwrap());
        }

        #[test]
        fn display_round_trips(q in arb_perm(12)) {
            prop_assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q);
        }
    }
}
