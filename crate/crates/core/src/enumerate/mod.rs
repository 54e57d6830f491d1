//! Generating-tree enumeration of permutation and sequence classes.
//!
//! Members of length `m + 1` are produced from members of length `m` by inserting
//! the new maximum into a site: every site for [`Base::All`], the active sites for
//! [`Base::Fishburn`]. Since the inserted entry is the largest, any new occurrence of
//! a forbidden pattern must use it as the pattern's maximum, so only those
//! occurrences are searched at each node.

mod labels;
mod paths;
mod sequences;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub use labels::{
    children_labels, identified_1423, label_distribution, label_distribution_with, label_of,
    rule_children, GenTreeLabel, Label1423, Label2143, Label3124, Tree,
};
pub use paths::{count_gap_binary, count_involutions, count_motzkin_one_ascent};
pub use sequences::{count_seq_class, seq_members, SeqClassSpec, SeqKind};

use crate::algebra::{Exponents, SparsePoly};
use crate::bijection::active_sites_of;
use crate::error::{Error, Result};
use crate::perm::{
    indecomposable, inversions, left_to_right_maxima, CompiledPattern, Permutation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    All,
    Fishburn,
}

/// A permutation class: a base set, classical patterns to avoid, and an
/// optional restriction to indecomposable members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassSpec {
    base: Base,
    avoid: Vec<Permutation>,
    indecomposable_only: bool,
}

impl ClassSpec {
    /// Patterns are stored sorted and deduplicated.
    pub fn new(base: Base, mut avoid: Vec<Permutation>, indecomposable_only: bool) -> Result<Self> {
        if avoid.iter().any(Permutation::is_empty) {
            return Err(Error::InvalidPattern("classical pattern must be nonempty".into()));
        }
        avoid.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        avoid.dedup();
        Ok(Self {
            base,
            avoid,
            indecomposable_only,
        })
    }

    pub fn parse(base: Base, patterns: &[&str]) -> Result<Self> {
        let avoid = patterns.iter().map(|p| p.parse()).collect::<Result<Vec<_>>>()?;
        Self::new(base, avoid, false)
    }

    pub fn fishburn(patterns: &[&str]) -> Result<Self> {
        Self::parse(Base::Fishburn, patterns)
    }

    pub fn all(patterns: &[&str]) -> Result<Self> {
        Self::parse(Base::All, patterns)
    }

    pub fn indecomposable(mut self) -> Self {
        self.indecomposable_only = true;
        self
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn avoid(&self) -> &[Permutation] {
        &self.avoid
    }

    pub fn indecomposable_only(&self) -> bool {
        self.indecomposable_only
    }

    /// Direct membership test, independent of the tree search.
    pub fn admits(&self, p: &Permutation) -> bool {
        (self.base == Base::All || p.is_fishburn())
            && self.avoid.iter().all(|a| !p.contains_perm(a))
            && (!self.indecomposable_only || indecomposable(p.values()))
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.base {
            Base::All => "S",
            Base::Fishburn => "F",
        };
        let ind = if self.indecomposable_only { "^ind" } else { "" };
        let pats: Vec<String> = self.avoid.iter().map(|p| p.to_string()).collect();
        write!(f, "{letter}{ind}({})", pats.join(","))
    }
}

/// Which statistics become exponents: `inv` on `q`, `ltrmax` on `t`, `afterone` on `r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Stats {
    pub inv: bool,
    pub ltrmax: bool,
    pub afterone: bool,
}

impl Stats {
    pub const NONE: Stats = Stats { inv: false, ltrmax: false, afterone: false };
    pub const INV_LTRMAX: Stats = Stats { inv: true, ltrmax: true, afterone: false };
    pub const ALL: Stats = Stats { inv: true, ltrmax: true, afterone: true };

    pub fn parse(list: &str) -> Result<Self> {
        let mut stats = Stats::NONE;
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "inv" => stats.inv = true,
                "ltrmax" => stats.ltrmax = true,
                "afterone" => stats.afterone = true,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown statistic {other:?}; expected inv, ltrmax or afterone"
                    )))
                }
            }
        }
        Ok(stats)
    }

    pub fn exponents(&self, values: &[usize]) -> Exponents {
        let q = if self.inv { inversions(values) as u32 } else { 0 };
        let t = if self.ltrmax { left_to_right_maxima(values) as u32 } else { 0 };
        let r = if self.afterone {
            values
                .iter()
                .position(|&v| v == 1)
                .map_or(0, |p| (values.len() - 1 - p) as u32)
        } else {
            0
        };
        [q, t, r]
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(self.inv, "inv"), (self.ltrmax, "ltrmax"), (self.afterone, "afterone")]
            .into_iter()
            .filter_map(|(on, name)| on.then_some(name))
            .collect();
        f.write_str(&names.join(","))
    }
}

/// How a search is divided: subtrees rooted at depth `split_depth` are handed
/// to `threads` workers, and their results are combined in subtree order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parallelism {
    pub threads: usize,
    pub split_depth: usize,
}

impl Default for Parallelism {
    fn default() -> Self {
        Self {
            threads: 1,
            split_depth: 0,
        }
    }
}

impl Parallelism {
    pub fn new(threads: usize, split_depth: usize) -> Self {
        Self {
            threads: threads.max(1),
            split_depth,
        }
    }
}

pub(crate) struct Walker {
    spec: ClassSpec,
    patterns: Vec<CompiledPattern>,
    target: usize,
}

impl Walker {
    pub(crate) fn new(spec: &ClassSpec, target: usize) -> Self {
        Self {
            spec: spec.clone(),
            patterns: spec.avoid.iter().map(CompiledPattern::new).collect(),
            target,
        }
    }

    fn sites(&self, values: &[usize], pos: &mut Vec<usize>, out: &mut Vec<usize>) {
        match self.spec.base {
            Base::All => {
                out.clear();
                out.extend(0..=values.len());
            }
            Base::Fishburn => {
                pos.clear();
                pos.resize(values.len() + 1, 0);
                for (i, &v) in values.iter().enumerate() {
                    pos[v] = i;
                }
                active_sites_of(values, pos, out);
            }
        }
    }

    /// Whether inserting the maximum at `site` created no forbidden occurrence.
    fn admits_child(&self, values: &[usize], site: usize) -> bool {
        self.patterns.iter().all(|p| !p.occurs_through_max(values, site))
    }

    fn is_leaf_member(&self, values: &[usize]) -> bool {
        !self.spec.indecomposable_only || indecomposable(values)
    }

    fn descend<F>(&self, values: &mut Vec<usize>, scratch: &mut Scratch, leaf: &mut F) -> Result<()>
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        let depth = values.len();
        if depth == self.target {
            if self.is_leaf_member(values) {
                leaf(values)?;
            }
            return Ok(());
        }
        let mut sites = std::mem::take(&mut scratch.sites[depth]);
        self.sites(values, &mut scratch.pos, &mut sites);
        let top = depth + 1;
        for &s in &sites {
            values.insert(s, top);
            if self.admits_child(values, s) {
                self.descend(values, scratch, leaf)?;
            }
            values.remove(s);
        }
        scratch.sites[depth] = sites;
        Ok(())
    }

    /// Class members of length `min(depth, target)` in search order.
    fn frontier(&self, depth: usize) -> Vec<Vec<usize>> {
        let depth = depth.min(self.target);
        let cut = Walker {
            spec: ClassSpec {
                indecomposable_only: false,
                ..self.spec.clone()
            },
            patterns: self.patterns.clone(),
            target: depth,
        };
        let mut out = Vec::new();
        let mut scratch = Scratch::new(depth);
        cut.descend(&mut Vec::new(), &mut scratch, &mut |v| {
            out.push(v.to_vec());
            Ok(())
        })
        .expect("collecting the frontier cannot fail");
        out
    }
}

struct Scratch {
    sites: Vec<Vec<usize>>,
    pos: Vec<usize>,
}

impl Scratch {
    fn new(depth: usize) -> Self {
        Self {
            sites: vec![Vec::new(); depth + 1],
            pos: Vec::new(),
        }
    }
}

/// Folds `leaf` over every member of length `n`, splitting the search as `par` directs.
///
/// Per-subtree accumulators are merged in subtree order, so the result does not
/// depend on scheduling.
pub fn fold_class<A, I, L, M>(
    spec: &ClassSpec,
    n: usize,
    par: Parallelism,
    init: I,
    leaf: L,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    L: Fn(&mut A, &[usize]) -> Result<()> + Sync,
    M: Fn(A, A) -> Result<A>,
{
    let walker = Walker::new(spec, n);
    let run = |start: &[usize]| -> Result<A> {
        let mut acc = init();
        let mut values = start.to_vec();
        let mut scratch = Scratch::new(n);
        walker.descend(&mut values, &mut scratch, &mut |v| leaf(&mut acc, v))?;
        Ok(acc)
    };
    if par.split_depth == 0 {
        return run(&[]);
    }
    let tasks = walker.frontier(par.split_depth);
    let slots: Vec<Mutex<Option<Result<A>>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        if i >= tasks.len() {
            break;
        }
        let result = run(&tasks[i]);
        *slots[i].lock().expect("result slot poisoned") = Some(result);
    };
    if par.threads <= 1 {
        work();
    } else {
        std::thread::scope(|scope| {
            for _ in 0..par.threads.min(tasks.len().max(1)) {
                scope.spawn(work);
            }
        });
    }
    let mut acc = init();
    for slot in slots {
        let part = slot
            .into_inner()
            .expect("result slot poisoned")
            .expect("every subtree is processed");
        acc = merge(acc, part?)?;
    }
    Ok(acc)
}

pub fn count_class(spec: &ClassSpec, n: usize) -> Result<u64> {
    count_class_with(spec, n, Parallelism::default())
}

pub fn count_class_with(spec: &ClassSpec, n: usize, par: Parallelism) -> Result<u64> {
    fold_class(
        spec,
        n,
        par,
        || 0u64,
        |acc, _| {
            *acc = acc.checked_add(1).ok_or(Error::Overflow("class count"))?;
            Ok(())
        },
        |a, b| a.checked_add(b).ok_or(Error::Overflow("class count")),
    )
}

pub fn poly_class(spec: &ClassSpec, n: usize, stats: Stats) -> Result<SparsePoly> {
    poly_class_with(spec, n, stats, Parallelism::default())
}

pub fn poly_class_with(spec: &ClassSpec, n: usize, stats: Stats, par: Parallelism) -> Result<SparsePoly> {
    if stats.afterone && n == 0 {
        return Err(Error::UndefinedOnEmpty { stat: "afterone" });
    }
    fold_class(
        spec,
        n,
        par,
        SparsePoly::zero,
        |acc, v| acc.add_term(stats.exponents(v), 1),
        |a, b| a.checked_add(&b),
    )
}

pub fn members(spec: &ClassSpec, n: usize) -> Vec<Permutation> {
    iter_class(spec, n).collect()
}

/// Members of length `n` in search order: depth first, sites in increasing position.
pub fn iter_class(spec: &ClassSpec, n: usize) -> ClassIter {
    ClassIter {
        walker: Walker::new(spec, n),
        stack: Vec::new(),
        started: false,
    }
}

pub struct ClassIter {
    walker: Walker,
    stack: Vec<Frame>,
    started: bool,
}

struct Frame {
    values: Vec<usize>,
    sites: Vec<usize>,
    next: usize,
}

impl ClassIter {
    fn frame(&self, values: Vec<usize>) -> Frame {
        let mut sites = Vec::new();
        if values.len() < self.walker.target {
            self.walker.sites(&values, &mut Vec::new(), &mut sites);
        }
        Frame {
            values,
            sites,
            next: 0,
        }
    }
}

impl Iterator for ClassIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if !self.started {
            self.started = true;
            let root = self.frame(Vec::new());
            self.stack.push(root);
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.values.len() == self.walker.target {
                let done = self.stack.pop().expect("nonempty stack");
                if self.walker.is_leaf_member(&done.values) {
                    return Some(Permutation::from_vec_unchecked(done.values));
                }
                continue;
            }
            if top.next == top.sites.len() {
                self.stack.pop();
                continue;
            }
            let site = top.sites[top.next];
            top.next += 1;
            let mut child = top.values.clone();
            child.insert(site, child.len() + 1);
            if self.walker.admits_child(&child, site) {
                let frame = self.frame(child);
                self.stack.push(frame);
            }
        }
    }
}
