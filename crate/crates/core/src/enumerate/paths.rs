//! Auxiliary counting for the equinumerosity checks.

use crate::error::{Error, Result};
use crate::perm::{CompiledPattern, Permutation};

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow("path count"))
}

/// Motzkin paths of `n` steps with exactly one maximal run of up steps.
pub fn count_motzkin_one_ascent(n: usize) -> Result<u64> {
    // phase 0: no up step yet; 1: inside the run; 2: run finished.
    let mut table = vec![[0u64; 3]; n + 1];
    table[0][0] = 1;
    for _ in 0..n {
        let mut next = vec![[0u64; 3]; n + 1];
        for h in 0..=n {
            for phase in 0..3 {
                let c = table[h][phase];
                if c == 0 {
                    continue;
                }
                let closed = if phase == 0 { 0 } else { 2 };
                next[h][closed] = add(next[h][closed], c)?;
                if h > 0 {
                    next[h - 1][closed] = add(next[h - 1][closed], c)?;
                }
                if phase < 2 && h < n {
                    next[h + 1][1] = add(next[h + 1][1], c)?;
                }
            }
        }
        table = next;
    }
    add(table[0][1], table[0][2])
}

/// Binary words of length `n` with at most one 0 between any two consecutive 1s.
pub fn count_gap_binary(n: usize) -> Result<u64> {
    // before the first 1, just after a 1, one 0 after a 1, two or more 0s after a 1.
    let mut s = [1u64, 0, 0, 0];
    for _ in 0..n {
        let ones = add(add(s[0], s[1])?, s[2])?;
        s = [s[0], ones, s[1], add(s[2], s[3])?];
    }
    s.iter().try_fold(0, |acc, &c| add(acc, c))
}

/// Involutions of length `n` avoiding every pattern in `avoid`.
pub fn count_involutions(n: usize, avoid: &[Permutation]) -> Result<u64> {
    let patterns: Vec<CompiledPattern> = avoid.iter().map(CompiledPattern::new).collect();
    let mut word = vec![0usize; n];
    let mut count = 0u64;
    pair_up(&mut word, 0, &patterns, &mut count)?;
    Ok(count)
}

fn pair_up(word: &mut [usize], from: usize, patterns: &[CompiledPattern], count: &mut u64) -> Result<()> {
    let Some(i) = (from..word.len()).find(|&i| word[i] == 0) else {
        if patterns.iter().all(|p| !p.occurs_in(word)) {
            *count = add(*count, 1)?;
        }
        return Ok(());
    };
    word[i] = i + 1;
    pair_up(word, i + 1, patterns, count)?;
    for j in i + 1..word.len() {
        if word[j] == 0 {
            word[i] = j + 1;
            word[j] = i + 1;
            pair_up(word, i + 1, patterns, count)?;
            word[j] = 0;
        }
    }
    word[i] = 0;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn motzkin_brute(n: usize) -> u64 {
        let mut count = 0;
        for code in 0..3usize.pow(n as u32) {
            let steps: Vec<i32> = (0..n).map(|i| (code / 3usize.pow(i as u32) % 3) as i32 - 1).collect();
            let mut h = 0;
            let mut ok = true;
            for &s in &steps {
                h += s;
                ok &= h >= 0;
            }
            let runs = (0..n).filter(|&i| steps[i] == 1 && (i == 0 || steps[i - 1] != 1)).count();
            if ok && h == 0 && runs == 1 {
                count += 1;
            }
        }
        count
    }

    fn gap_brute(n: usize) -> u64 {
        (0u32..1 << n)
            .filter(|&w| {
                let ones: Vec<usize> = (0..n).filter(|&i| w >> i & 1 == 1).collect();
                ones.windows(2).all(|p| p[1] - p[0] <= 2)
            })
            .count() as u64
    }

    #[test]
    fn motzkin_examples() {
        assert_eq!(count_motzkin_one_ascent(0).unwrap(), 0);
        assert_eq!(count_motzkin_one_ascent(3).unwrap(), 3);
        assert_eq!(count_motzkin_one_ascent(5).unwrap(), 14);
        for n in 0..=10 {
            assert_eq!(count_motzkin_one_ascent(n).unwrap(), motzkin_brute(n), "n={n}");
        }
    }

    #[test]
    fn gap_examples() {
        assert_eq!(count_gap_binary(0).unwrap(), 1);
        assert_eq!(count_gap_binary(3).unwrap(), 8);
        assert_eq!(count_gap_binary(4).unwrap(), 15);
        for n in 0..=14 {
            assert_eq!(count_gap_binary(n).unwrap(), gap_brute(n), "n={n}");
        }
    }

    #[test]
    fn involution_counts() {
        let counts: Vec<u64> = (0..=8).map(|n| count_involutions(n, &[]).unwrap()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 10, 26, 76, 232, 764]);
        let p3412: Permutation = "3412".parse().unwrap();
        for n in 0..=8 {
            let brute = Permutation::all(n)
                .filter(|p| p.is_involution() && !p.contains_perm(&p3412))
                .count() as u64;
            assert_eq!(count_involutions(n, &[p3412.clone()]).unwrap(), brute);
        }
    }
}
