//! Active sites, insertion of a new maximum, and the map from Fishburn
//! permutations to ascent sequences.
//!
//! A site of a permutation of length `n` is identified by the number of entries
//! to its left, so sites are `0..=n`.

use crate::error::{Error, Result};
use crate::perm::{contains_f, positions_of, Permutation};
use crate::sequence::IntSequence;

/// Active sites by trial insertion: site `s` is active when inserting the new
/// maximum there leaves the permutation Fishburn.
pub fn active_sites(p: &Permutation) -> Result<Vec<usize>> {
    ensure_fishburn(p)?;
    let mut buf = Vec::with_capacity(p.len() + 1);
    Ok((0..=p.len())
        .filter(|&s| {
            buf.clear();
            buf.extend_from_slice(&p.values()[..s]);
            buf.push(p.len() + 1);
            buf.extend_from_slice(&p.values()[s..]);
            !contains_f(&buf)
        })
        .collect())
}

/// Active sites of a Fishburn word, using that inserting the maximum right after
/// an entry `a > 1` creates the pattern exactly when `a - 1` lies to the right of `a`.
pub fn active_sites_of(values: &[usize], pos: &[usize], out: &mut Vec<usize>) {
    out.clear();
    out.push(0);
    for s in 1..=values.len() {
        let a = values[s - 1];
        if a == 1 || pos[a - 1] < s - 1 {
            out.push(s);
        }
    }
}

pub fn insert_max(p: &Permutation, site: usize) -> Result<Permutation> {
    if site > p.len() {
        return Err(Error::SiteOutOfRange {
            site,
            len: p.len(),
        });
    }
    let mut values = p.values().to_vec();
    values.insert(site, p.len() + 1);
    Ok(Permutation::from_vec_unchecked(values))
}

/// The ascent sequence of active-site labels recorded while building `p` by
/// inserting `1, 2, ..., n` in turn.
pub fn g_map(p: &Permutation) -> Result<IntSequence> {
    ensure_fishburn(p)?;
    let n = p.len();
    let target = p.positions();
    let mut current: Vec<usize> = Vec::with_capacity(n);
    let mut sites = Vec::with_capacity(n + 1);
    let mut labels = Vec::with_capacity(n);
    for i in 1..=n {
        let site = p.values()[..target[i]].iter().filter(|&&v| v < i).count();
        active_sites_of(&current, &positions_of(&current), &mut sites);
        let label = sites
            .iter()
            .position(|&s| s == site)
            .ok_or_else(|| Error::NotFishburn(p.to_string()))?;
        labels.push(label);
        current.insert(site, i);
    }
    Ok(IntSequence::new(labels))
}

pub fn g_inverse(seq: &IntSequence) -> Result<Permutation> {
    if let Some((index, bound)) = seq.ascent_violation() {
        return Err(Error::NotAscentSequence {
            index,
            value: seq.entries()[index],
            bound,
        });
    }
    let mut current: Vec<usize> = Vec::with_capacity(seq.len());
    let mut sites = Vec::with_capacity(seq.len() + 1);
    for (index, &label) in seq.entries().iter().enumerate() {
        active_sites_of(&current, &positions_of(&current), &mut sites);
        let site = *sites.get(label).ok_or(Error::SiteIndexOverflow {
            index,
            label,
            available: sites.len(),
        })?;
        current.insert(site, index + 1);
    }
    Ok(Permutation::from_vec_unchecked(current))
}

fn ensure_fishburn(p: &Permutation) -> Result<()> {
    if p.is_fishburn() {
        Ok(())
    } else {
        Err(Error::NotFishburn(p.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PatternSpec;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> IntSequence {
        s.parse().unwrap()
    }

    fn fishburn(n: usize) -> Vec<Permutation> {
        Permutation::all(n).filter(|q| q.is_fishburn()).collect()
    }

    fn ascent_sequences(n: usize) -> Vec<IntSequence> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &out {
                let asc = IntSequence::new(w.clone()).ascents();
                let bound = if w.is_empty() { 0 } else { asc + 1 };
                for e in 0..=bound {
                    let mut x = w.clone();
                    x.push(e);
                    next.push(x);
                }
            }
            out = next;
        }
        out.into_iter().map(IntSequence::new).collect()
    }

    #[test]
    fn site_examples() {
        assert_eq!(active_sites(&p("415326")).unwrap(), vec![0, 2, 3, 5, 6]);
        assert_eq!(active_sites(&p("1")).unwrap(), vec![0, 1]);
        for n in 1..=7 {
            assert_eq!(active_sites(&Permutation::decreasing(n)).unwrap(), vec![0, n]);
        }
        assert!(active_sites(&p("35142")).is_err());
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(insert_max(&p("415326"), 0).unwrap(), p("7415326"));
        assert_eq!(insert_max(&p("415326"), 6).unwrap(), p("4153267"));
        assert_eq!(insert_max(&p("1"), 0).unwrap(), p("21"));
        assert_eq!(
            insert_max(&p("12"), 3),
            Err(Error::SiteOutOfRange { site: 3, len: 2 })
        );
    }

    #[test]
    fn map_examples() {
        assert_eq!(g_map(&p("4175326")).unwrap(), seq("0110131"));
        assert_eq!(g_map(&p("4157326")).unwrap(), seq("0110132"));
        assert_eq!(g_map(&p("3142")).unwrap(), seq("0101"));
        assert_eq!(g_map(&Permutation::decreasing(6)).unwrap(), seq("000000"));
        assert_eq!(g_map(&Permutation::empty()).unwrap(), seq(""));
        assert_eq!(g_inverse(&seq("0110132")).unwrap(), p("4157326"));
        assert_eq!(g_inverse(&seq("0101")).unwrap(), p("3142"));
        assert_eq!(g_inverse(&seq("0")).unwrap(), p("1"));
        assert!(matches!(g_map(&p("35142")), Err(Error::NotFishburn(_))));
    }

    #[test]
    fn inverse_reports_first_bad_index() {
        assert_eq!(
            g_inverse(&seq("001031201")),
            Err(Error::NotAscentSequence { index: 4, value: 3, bound: 2 })
        );
        assert_eq!(
            g_inverse(&seq("1")),
            Err(Error::NotAscentSequence { index: 0, value: 1, bound: 0 })
        );
    }

    #[test]
    fn fast_rule_matches_trial_insertion() {
        let mut out = Vec::new();
        for n in 0..=8 {
            for q in fishburn(n) {
                active_sites_of(q.values(), &q.positions(), &mut out);
                assert_eq!(out, active_sites(&q).unwrap(), "{q}");
            }
        }
    }

    #[test]
    fn round_trips() {
        for n in 0..=8 {
            for q in fishburn(n) {
                assert_eq!(g_inverse(&g_map(&q).unwrap()).unwrap(), q);
            }
            let seqs = ascent_sequences(n);
            assert_eq!(seqs.len(), fishburn(n).len());
            for s in seqs {
                assert_eq!(g_map(&g_inverse(&s).unwrap()).unwrap(), s);
            }
        }
    }

    #[test]
    fn sites_evolve_as_insertion_predicts() {
        for n in 1..=7 {
            for q in fishburn(n) {
                let before = active_sites(&q).unwrap();
                for &s in &before {
                    let child = insert_max(&q, s).unwrap();
                    let after = active_sites(&child).unwrap();
                    // Sites left of the new entry keep their index; those right of it shift by one.
                    for old in 0..=n {
                        if old == s {
                            continue;
                        }
                        let new = if old < s { old } else { old + 1 };
                        assert_eq!(before.contains(&old), after.contains(&new), "{q} site {s}");
                    }
                    assert!(after.contains(&s));
                    let pos = child.positions();
                    let right_active = after.contains(&(s + 1));
                    assert_eq!(right_active, pos[n] < pos[n + 1], "{child}");
                }
            }
        }
    }

    #[test]
    fn later_small_labels_sit_to_the_left() {
        for n in 0..=8 {
            for q in fishburn(n) {
                let a = g_map(&q).unwrap();
                let pos = q.positions();
                for j in 1..=n {
                    for k in j + 1..=n {
                        if a.entries()[k - 1] <= a.entries()[j - 1] {
                            assert!(pos[k] < pos[j], "{q}: {k} before {j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn site_labels_never_decrease() {
        fn walk(q: &Permutation, depth: usize) {
            if depth == 0 {
                return;
            }
            let sites = active_sites(q).unwrap();
            for (label, &s) in sites.iter().enumerate() {
                let child = insert_max(q, s).unwrap();
                let child_sites = active_sites(&child).unwrap();
                for (old_label, &old) in sites.iter().enumerate() {
                    if old == s {
                        continue;
                    }
                    let new = if old < s { old } else { old + 1 };
                    let new_label = child_sites.iter().position(|&x| x == new).unwrap();
                    assert!(new_label >= old_label, "{q} -> {child} (label {label})");
                }
                walk(&child, depth - 1);
            }
        }
        walk(&Permutation::empty(), 7);
    }

    #[test]
    fn avoiding_123_is_binary_image() {
        let f123 = PatternSpec::Classical(p("123"));
        let s012 = seq("012");
        for n in 0..=8 {
            for q in fishburn(n) {
                let a = g_map(&q).unwrap();
                assert_eq!(q.avoids(&f123), a.is_binary(), "{q}");
                assert_eq!(q.avoids(&f123), !a.contains(&s012), "{q}");
                if a.is_binary() && n >= 1 {
                    let st = a.binary_stats().unwrap();
                    assert_eq!(q.afterone().unwrap(), st.ones);
                    assert_eq!(q.ltrmax(), 1 + st.lastentry);
                    assert_eq!(q.inv(), st.inv + st.zerozeros + st.oneones);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn every_ascent_sequence_inverts(n in 0usize..10, seed in proptest::collection::vec(0usize..100, 10)) {
            let mut w = Vec::new();
            for &r in seed.iter().take(n) {
                let bound = if w.is_empty() { 0 } else { IntSequence::new(w.clone()).ascents() + 1 };
                w.push(r % (bound + 1));
            }
            let s = IntSequence::new(w);
            let q = g_inverse(&s).unwrap();
            prop_assert!(q.is_fishburn());
            prop_assert_eq!(g_map(&q).unwrap(), s);
        }
    }
}
