//! Labels and rewriting rules of the generating trees for `F(321,1423)`,
//! `F(321,3124)` and `F(321,2143)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{fold_class, Base, ClassSpec, Parallelism, Stats};
use crate::algebra::SparsePoly;
use crate::bijection::active_sites_of;
use crate::error::{Error, Result};
use crate::perm::{positions_of, CompiledPattern, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    T1423,
    T3124,
    T2143,
}

impl Tree {
    pub const ALL: [Tree; 3] = [Tree::T1423, Tree::T3124, Tree::T2143];

    fn second_pattern(self) -> &'static str {
        match self {
            Tree::T1423 => "1423",
            Tree::T3124 => "3124",
            Tree::T2143 => "2143",
        }
    }

    /// The Fishburn class the tree generates.
    pub fn class(self) -> ClassSpec {
        ClassSpec::parse(Base::Fishburn, &["321", self.second_pattern()]).expect("fixed patterns parse")
    }

    /// Label of the single permutation of length one.
    pub fn root(self) -> GenTreeLabel {
        match self {
            Tree::T1423 => GenTreeLabel::T1423(Label1423::TwoA),
            Tree::T3124 => GenTreeLabel::T3124(Label3124::K(2)),
            Tree::T2143 => GenTreeLabel::T2143(Label2143::K(2)),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.second_pattern())
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches(['T', 't']);
        Tree::ALL
            .into_iter()
            .find(|t| t.second_pattern() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown tree {s:?}; expected T1423, T3124 or T2143")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label1423 {
    One,
    TwoA,
    TwoB,
    TwoC,
    TwoD,
    Three,
}

impl Label1423 {
    /// Label after merging `(2b)` with `(2c)`; `(2a)` and `(2d)` become `(2x)` and `(2z)`.
    pub fn identified(self) -> &'static str {
        match self {
            Label1423::One => "(1)",
            Label1423::TwoA => "(2x)",
            Label1423::TwoB | Label1423::TwoC => "(2y)",
            Label1423::TwoD => "(2z)",
            Label1423::Three => "(3)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label3124 {
    OneA,
    OneB,
    /// `k >= 2`.
    K(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label2143 {
    OneA,
    /// `k >= 2`.
    K(usize),
    /// `k >= 1`.
    Star(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenTreeLabel {
    T1423(Label1423),
    T3124(Label3124),
    T2143(Label2143),
}

impl GenTreeLabel {
    pub fn tree(&self) -> Tree {
        match self {
            GenTreeLabel::T1423(_) => Tree::T1423,
            GenTreeLabel::T3124(_) => Tree::T3124,
            GenTreeLabel::T2143(_) => Tree::T2143,
        }
    }
}

impl fmt::Display for GenTreeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenTreeLabel::T1423(l) => f.write_str(match l {
                Label1423::One => "(1)",
                Label1423::TwoA => "(2a)",
                Label1423::TwoB => "(2b)",
                Label1423::TwoC => "(2c)",
                Label1423::TwoD => "(2d)",
                Label1423::Three => "(3)",
            }),
            GenTreeLabel::T3124(Label3124::OneA) | GenTreeLabel::T2143(Label2143::OneA) => f.write_str("(1a)"),
            GenTreeLabel::T3124(Label3124::OneB) => f.write_str("(1b)"),
            GenTreeLabel::T3124(Label3124::K(k)) | GenTreeLabel::T2143(Label2143::K(k)) => write!(f, "({k})"),
            GenTreeLabel::T2143(Label2143::Star(k)) => write!(f, "({k}*)"),
        }
    }
}

/// The `(2b)`/`(2c)` identification, or `None` outside the 1423 tree.
pub fn identified_1423(label: GenTreeLabel) -> Option<&'static str> {
    match label {
        GenTreeLabel::T1423(l) => Some(l.identified()),
        _ => None,
    }
}

fn violated(tree: Tree, values: &[usize]) -> Error {
    Error::LabelRuleViolated {
        tree: tree.to_string(),
        perm: Permutation::from_vec_unchecked(values.to_vec()).to_string(),
    }
}

fn has_descent(values: &[usize]) -> bool {
    values.windows(2).any(|w| w[0] > w[1])
}

/// Classifies a class member without rechecking membership.
pub(crate) fn classify(tree: Tree, values: &[usize]) -> Result<GenTreeLabel> {
    let n = values.len();
    if n == 0 {
        return Err(Error::UndefinedOnEmpty { stat: "generating tree label" });
    }
    match tree {
        Tree::T1423 => classify_1423(values).map(GenTreeLabel::T1423),
        Tree::T3124 => classify_3124(values).map(GenTreeLabel::T3124),
        Tree::T2143 => classify_2143(values).map(GenTreeLabel::T2143),
    }
    .ok_or_else(|| violated(tree, values))
}

fn classify_1423(p: &[usize]) -> Option<Label1423> {
    let n = p.len();
    let last = p[n - 1];
    let pos_max = p.iter().position(|&v| v == n).expect("permutation holds its length");
    let descent = has_descent(p);
    let suffix_2c = n >= 3
        && last == n - 1
        && pos_max + 2 < n
        && p[pos_max + 1..n - 1].iter().enumerate().all(|(i, &v)| v == i + 1);
    let cases = [
        (Label1423::One, n >= 2 && last == n - 1 && p[n - 2] == n),
        (Label1423::TwoA, n == 1),
        (Label1423::TwoB, n >= 4 && p[n - 2] == n && 1 < last && last < n - 1),
        (Label1423::TwoC, suffix_2c),
        (Label1423::TwoD, last == n && descent),
        (Label1423::Three, n >= 2 && !descent),
    ];
    exactly_one(&cases)
}

fn classify_3124(p: &[usize]) -> Option<Label3124> {
    let n = p.len();
    if CompiledPattern::new(&"312".parse().expect("fixed pattern")).occurs_in(p) {
        return Some(Label3124::OneB);
    }
    if p[n - 1] == n {
        let run = (1..n).take_while(|&i| p[n - 1 - i] + i == n).count() + 1;
        return Some(Label3124::K(run + 1));
    }
    (n >= 2 && p[n - 2] == n && p[n - 1] == n - 1).then_some(Label3124::OneA)
}

fn classify_2143(p: &[usize]) -> Option<Label2143> {
    let n = p.len();
    if !has_descent(p) {
        return Some(Label2143::K(n + 1));
    }
    if p[n - 1] == n {
        return Some(Label2143::OneA);
    }
    let pos_max = p.iter().position(|&v| v == n).expect("permutation holds its length");
    let right = &p[pos_max + 1..];
    let m = right.len();
    if right.windows(2).any(|w| w[1] != w[0] + 1) {
        return None;
    }
    let last = p[n - 1];
    if last == n - 1 {
        Some(Label2143::Star(m))
    } else {
        // The run right of the maximum must start above 1.
        (last > m).then_some(Label2143::Star(m + 1))
    }
}

fn exactly_one<L: Copy>(cases: &[(L, bool)]) -> Option<L> {
    let mut hits = cases.iter().filter(|(_, holds)| *holds);
    match (hits.next(), hits.next()) {
        (Some(&(label, _)), None) => Some(label),
        _ => None,
    }
}

fn ensure_member(tree: Tree, p: &Permutation) -> Result<()> {
    if tree.class().admits(p) {
        Ok(())
    } else {
        Err(Error::NotInClass {
            tree: tree.to_string(),
            perm: p.to_string(),
        })
    }
}

pub fn label_of(tree: Tree, p: &Permutation) -> Result<GenTreeLabel> {
    if p.is_empty() {
        return Err(Error::UndefinedOnEmpty { stat: "generating tree label" });
    }
    ensure_member(tree, p)?;
    classify(tree, p.values())
}

/// Labels of the children of `p` in the tree, left to right by insertion site.
pub fn children_labels(tree: Tree, p: &Permutation) -> Result<Vec<GenTreeLabel>> {
    ensure_member(tree, p)?;
    let patterns: Vec<CompiledPattern> = tree.class().avoid().iter().map(CompiledPattern::new).collect();
    let values = p.values();
    let mut sites = Vec::new();
    active_sites_of(values, &positions_of(values), &mut sites);
    let mut out = Vec::new();
    let mut child = Vec::with_capacity(values.len() + 1);
    for s in sites {
        child.clear();
        child.extend_from_slice(&values[..s]);
        child.push(values.len() + 1);
        child.extend_from_slice(&values[s..]);
        if patterns.iter().all(|c| !c.occurs_through_max(&child, s)) {
            out.push(classify(tree, &child)?);
        }
    }
    Ok(out)
}

/// The rewriting rule for `label`, children listed left to right.
pub fn rule_children(label: GenTreeLabel) -> Vec<GenTreeLabel> {
    use GenTreeLabel as G;
    match label {
        G::T1423(l) => {
            use Label1423::*;
            let kids: &[Label1423] = match l {
                One => &[TwoD],
                TwoA => &[One, Three],
                TwoB | TwoC => &[TwoB, TwoD],
                TwoD => &[One, TwoD],
                Three => &[TwoC, One, Three],
            };
            kids.iter().map(|&k| G::T1423(k)).collect()
        }
        G::T3124(l) => match l {
            Label3124::OneA => vec![G::T3124(Label3124::K(2))],
            Label3124::OneB => vec![G::T3124(Label3124::OneB)],
            Label3124::K(k) => {
                let mut v = vec![G::T3124(Label3124::OneB); k.saturating_sub(2)];
                v.push(G::T3124(Label3124::OneA));
                v.push(G::T3124(Label3124::K(k + 1)));
                v
            }
        },
        G::T2143(l) => match l {
            Label2143::OneA => vec![G::T2143(Label2143::OneA)],
            Label2143::K(k) => {
                let mut v: Vec<_> = (1..k).rev().map(|j| G::T2143(Label2143::Star(j))).collect();
                v.push(G::T2143(Label2143::K(k + 1)));
                v
            }
            Label2143::Star(k) => {
                let mut v: Vec<_> = (2..=k).rev().map(|j| G::T2143(Label2143::Star(j))).collect();
                v.push(G::T2143(Label2143::OneA));
                v
            }
        },
    }
}

pub fn label_distribution(tree: Tree, n: usize, stats: Stats) -> Result<BTreeMap<GenTreeLabel, SparsePoly>> {
    label_distribution_with(tree, n, stats, Parallelism::default())
}

/// Class members of length `n` grouped by label, each group summed as a polynomial in the requested statistics.
pub fn label_distribution_with(
    tree: Tree,
    n: usize,
    stats: Stats,
    par: Parallelism,
) -> Result<BTreeMap<GenTreeLabel, SparsePoly>> {
    if n == 0 {
        return Err(Error::UndefinedOnEmpty { stat: "generating tree label" });
    }
    fold_class(
        &tree.class(),
        n,
        par,
        BTreeMap::new,
        |acc: &mut BTreeMap<GenTreeLabel, SparsePoly>, v| {
            let label = classify(tree, v)?;
            acc.entry(label).or_default().add_term(stats.exponents(v), 1)
        },
        |mut a, b| {
            for (label, poly) in b {
                let slot = a.entry(label).or_default();
                *slot = slot.checked_add(&poly)?;
            }
            Ok(a)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{members, poly_class};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn label(tree: Tree, s: &str) -> String {
        label_of(tree, &p(s)).unwrap().to_string()
    }

    #[test]
    fn label_examples() {
        assert_eq!(label(Tree::T1423, "21"), "(1)");
        assert_eq!(label(Tree::T1423, "1"), "(2a)");
        assert_eq!(label(Tree::T3124, "1"), "(2)");
        assert_eq!(label(Tree::T3124, "12"), "(3)");
        assert_eq!(label(Tree::T2143, "132"), "(1*)");
        assert_eq!(label(Tree::T2143, "312"), "(2*)");
        assert_eq!(label(Tree::T2143, "1"), "(2)");
        for t in Tree::ALL {
            assert_eq!(label_of(t, &p("1")).unwrap(), t.root());
        }
        assert!(matches!(label_of(Tree::T1423, &p("321")), Err(Error::NotInClass { .. })));
        assert!(label_of(Tree::T1423, &Permutation::empty()).is_err());
        assert_eq!("2143".parse::<Tree>().unwrap(), Tree::T2143);
        assert!("T1234".parse::<Tree>().is_err());
    }

    #[test]
    fn children_examples() {
        let show = |v: Vec<GenTreeLabel>| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(show(children_labels(Tree::T1423, &p("1")).unwrap()), "(1),(3)");
        assert_eq!(show(children_labels(Tree::T2143, &p("12")).unwrap()), "(2*),(1*),(4)");
        for q in members(&Tree::T3124.class(), 5) {
            if label_of(Tree::T3124, &q).unwrap() == GenTreeLabel::T3124(Label3124::OneB) {
                assert_eq!(show(children_labels(Tree::T3124, &q).unwrap()), "(1b)");
            }
        }
    }

    #[test]
    fn trees_follow_their_rules() {
        for tree in Tree::ALL {
            for n in 1..=9 {
                for q in members(&tree.class(), n) {
                    let l = label_of(tree, &q).unwrap();
                    assert_eq!(children_labels(tree, &q).unwrap(), rule_children(l), "{tree} {q} {l}");
                }
            }
        }
    }

    #[test]
    fn identified_rules_for_1423() {
        let merged = |l: GenTreeLabel| -> Vec<&str> {
            rule_children(l).into_iter().map(|c| identified_1423(c).unwrap()).collect()
        };
        use Label1423::*;
        assert_eq!(merged(GenTreeLabel::T1423(Three)), vec!["(2y)", "(1)", "(3)"]);
        assert_eq!(merged(GenTreeLabel::T1423(TwoB)), merged(GenTreeLabel::T1423(TwoC)));
        assert_eq!(identified_1423(Tree::T2143.root()), None);
    }

    #[test]
    fn distributions_refine_the_class_polynomial() {
        for tree in Tree::ALL {
            for n in 1..=8 {
                let dist = label_distribution(tree, n, Stats::INV_LTRMAX).unwrap();
                let total = dist.values().fold(SparsePoly::zero(), |a, b| a + b.clone());
                assert_eq!(total, poly_class(&tree.class(), n, Stats::INV_LTRMAX).unwrap());
                let par = label_distribution_with(tree, n, Stats::INV_LTRMAX, Parallelism::new(3, 2)).unwrap();
                assert_eq!(par, dist);
            }
        }
        let five = label_distribution(Tree::T2143, 5, Stats::INV_LTRMAX).unwrap();
        assert_eq!(
            five[&GenTreeLabel::T2143(Label2143::Star(2))],
            "q^2t^3 + q^3t^3 + q^4t^3 + q^4t^2".parse().unwrap()
        );
        let four = label_distribution(Tree::T2143, 4, Stats::INV_LTRMAX).unwrap();
        assert_eq!(four[&GenTreeLabel::T2143(Label2143::OneA)], "2qt^3 + q^2t^2".parse().unwrap());
        let three = label_distribution(Tree::T1423, 3, Stats::NONE).unwrap();
        assert_eq!(three[&GenTreeLabel::T1423(Label1423::Three)], SparsePoly::one());
        assert_eq!(three[&GenTreeLabel::T1423(Label1423::TwoC)], SparsePoly::one());
        let two = label_distribution(Tree::T3124, 2, Stats::NONE).unwrap();
        assert_eq!(two[&GenTreeLabel::T3124(Label3124::K(3))], SparsePoly::one());
    }
}
