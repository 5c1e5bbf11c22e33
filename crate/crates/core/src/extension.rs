//! Extension graphs and the tree and planar tree classifications.
//!
//! Every verdict here is relative to a truncated language: a report says
//! what holds for words up to `max_len_checked`, never more.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bifix::require_len;
use crate::error::{Error, Result};
use crate::symbolic::FactorialLanguage;
use crate::word::{ranks, Letter, Word};

/// The bipartite graph `G(w)` on `L(w)` and `R(w)`, with an edge `(a, b)`
/// whenever `awb` is in the language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGraph {
    pub word: Word,
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub edges: BTreeSet<(Letter, Letter)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    TreeSet,
    PlanarTreeSet,
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureReason {
    NotConnected,
    HasCycle,
    OrderViolation,
    ConditionIII,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub word: Word,
    pub reason: FailureReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCheckReport {
    pub verdict: Verdict,
    pub max_len_checked: usize,
    pub counterexample: Option<Counterexample>,
}

/// `G(w)` read off membership queries. Needs `|w| + 2 <= S.max_len`.
pub fn extension_graph(s: &FactorialLanguage, w: &[Letter]) -> Result<ExtensionGraph> {
    require_len(s, w.len() + 2)?;
    Ok(ExtensionGraph {
        word: w.to_vec(),
        left: s.left_extensions(w),
        right: s.right_extensions(w),
        edges: s.bi_extensions(w).into_iter().collect(),
    })
}

impl ExtensionGraph {
    /// Tree test: connected with `|E| = |L| + |R| - 1`.
    pub fn is_tree(&self) -> Result<bool> {
        Ok(self.tree_failure()?.is_none())
    }

    /// Why the graph is not a tree, if it is not.
    pub fn tree_failure(&self) -> Result<Option<FailureReason>> {
        if self.edges.is_empty() {
            return Err(Error::EmptyGraph(format!("{:?}", self.word)));
        }
        if !self.is_connected() {
            return Ok(Some(FailureReason::NotConnected));
        }
        if self.edges.len() != self.left.len() + self.right.len() - 1 {
            return Ok(Some(FailureReason::HasCycle));
        }
        Ok(None)
    }

    fn is_connected(&self) -> bool {
        // union-find over left vertices [0, n) and right vertices [n, 2n)
        let n = self.left.iter().chain(&self.right).map(|&l| l as usize + 1).max().unwrap_or(0);
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, n + b as usize));
            parent[ra] = rb;
        }
        let mut roots = self
            .left
            .iter()
            .map(|&a| a as usize)
            .chain(self.right.iter().map(|&b| n + b as usize))
            .map(|v| find(&mut parent, v));
        let first = roots.next();
        roots.all(|r| Some(r) == first)
    }

    /// For edges `(a, b)` and `(c, d)`, `a` strictly before `c` in
    /// `left_order` forces `b` not after `d` in `right_order`. Orders list
    /// letters; letters absent from an order make the check fail.
    pub fn is_planar_compatible(&self, left_order: &[Letter], right_order: &[Letter]) -> bool {
        let (Some(lr), Some(rr)) = (partial_ranks(left_order), partial_ranks(right_order)) else {
            return false;
        };
        let rank = |r: &[Option<usize>], l: Letter| r.get(l as usize).copied().flatten();
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            match (rank(&lr, a), rank(&rr, b)) {
                (Some(x), Some(y)) => edges.push((x, y)),
                _ => return false,
            }
        }
        // sorted by left rank, right ranks must be non-decreasing across
        // distinct left ranks
        edges.sort_unstable();
        let mut prev_max: Option<usize> = None;
        let mut i = 0;
        while i < edges.len() {
            let mut j = i;
            while j < edges.len() && edges[j].0 == edges[i].0 {
                j += 1;
            }
            let group_min = edges[i].1;
            if prev_max.is_some_and(|m| m > group_min) {
                return false;
            }
            let group_max = edges[j - 1].1;
            prev_max = Some(prev_max.map_or(group_max, |m| m.max(group_max)));
            i = j;
        }
        true
    }
}

fn partial_ranks(order: &[Letter]) -> Option<Vec<Option<usize>>> {
    let n = order.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut r = vec![None; n];
    for (i, &l) in order.iter().enumerate() {
        if r[l as usize].replace(i).is_some() {
            return None;
        }
    }
    Some(r)
}

/// Graphs of all biextendable words up to `max_len`, shortest first.
fn graphs(s: &FactorialLanguage, max_len: usize) -> Result<Vec<ExtensionGraph>> {
    require_len(s, max_len + 2)?;
    let mut out = Vec::new();
    for w in s.words().filter(|w| w.len() <= max_len) {
        let g = extension_graph(s, w)?;
        if !g.edges.is_empty() {
            out.push(g);
        }
    }
    Ok(out)
}

fn first_failure(gs: &[ExtensionGraph], orders: Option<(&[Letter], &[Letter])>) -> Result<Option<Counterexample>> {
    for g in gs {
        let reason = match g.tree_failure()? {
            Some(r) => Some(r),
            None => match orders {
                Some((l, r)) if !g.is_planar_compatible(l, r) => Some(FailureReason::OrderViolation),
                _ => None,
            },
        };
        if let Some(reason) = reason {
            return Ok(Some(Counterexample { word: g.word.clone(), reason }));
        }
    }
    Ok(None)
}

/// Runs the tree test, and the compatibility test when `orders` (left,
/// right) are given, on `G(w)` for every `w` with `|w| <= max_len`. Words
/// without a two-sided extension are skipped.
pub fn check_planar_tree_set(
    s: &FactorialLanguage,
    orders: Option<(&[Letter], &[Letter])>,
    max_len: usize,
) -> Result<TreeCheckReport> {
    let gs = graphs(s, max_len)?;
    let counterexample = first_failure(&gs, orders)?;
    let verdict = match (&counterexample, orders) {
        (Some(_), _) => Verdict::Fails,
        (None, Some(_)) => Verdict::PlanarTreeSet,
        (None, None) => Verdict::TreeSet,
    };
    Ok(TreeCheckReport { verdict, max_len_checked: max_len, counterexample })
}

/// Largest alphabet for which order pairs are searched exhaustively.
pub const MAX_SEARCH_LETTERS: usize = 5;

fn permutations(n: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut cur: Vec<Letter> = (0..n as Letter).collect();
    heap_permute(n, &mut cur, &mut out);
    out.sort();
    out
}

fn heap_permute(k: usize, a: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, a, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        a.swap(j, k - 1);
    }
}

fn require_searchable(s: &FactorialLanguage) -> Result<()> {
    if s.alphabet().len() > MAX_SEARCH_LETTERS {
        return Err(Error::InvalidOrder(format!(
            "order search needs at most {MAX_SEARCH_LETTERS} letters, got {}",
            s.alphabet().len()
        )));
    }
    Ok(())
}

/// Every (left, right) order pair for which all graphs up to `max_len`
/// are planar-compatible trees. Exhaustive, so limited to small alphabets.
pub fn planar_order_pairs(s: &FactorialLanguage, max_len: usize) -> Result<Vec<(Vec<Letter>, Vec<Letter>)>> {
    require_searchable(s)?;
    let gs = graphs(s, max_len)?;
    if first_failure(&gs, None)?.is_some() {
        return Ok(Vec::new());
    }
    // only graphs with two left and two right vertices constrain the orders
    let constraining: Vec<&ExtensionGraph> = gs.iter().filter(|g| g.left.len() > 1 && g.right.len() > 1).collect();
    let perms = permutations(s.alphabet().len());
    let mut out = Vec::new();
    for l in &perms {
        for r in &perms {
            if constraining.iter().all(|g| g.is_planar_compatible(l, r)) {
                out.push((l.clone(), r.clone()));
            }
        }
    }
    Ok(out)
}

/// Outcome of one condition of the Ferenczi–Zamboni characterization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub holds: bool,
    pub witness: Option<Word>,
}

impl ConditionResult {
    fn from_witness(witness: Option<Word>) -> Self {
        ConditionResult { holds: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FzReport {
    pub max_len_checked: usize,
    /// `L(w)` is an interval of `<_2` and `R(w)` an interval of `<_1`.
    pub consecutive: ConditionResult,
    /// `a <_2 c` implies `b <=_1 d` for edges `(a, b)`, `(c, d)` of `G(w)`.
    pub compatible: ConditionResult,
    /// Neighbours `a, b` of `L(w)` in `<_2` have `R(aw) ∩ R(bw)` a singleton.
    pub singleton: ConditionResult,
    /// Whether the tested range agrees with "compatible and singleton imply
    /// consecutive".
    pub implication_consistent: bool,
}

impl FzReport {
    pub fn all_hold(&self) -> bool {
        self.consecutive.holds && self.compatible.holds && self.singleton.holds
    }
}

fn is_consecutive(set: &[Letter], rank: &[usize]) -> bool {
    if set.is_empty() {
        return true;
    }
    let rs: Vec<usize> = set.iter().map(|&l| rank[l as usize]).collect();
    let (lo, hi) = (rs.iter().min().unwrap(), rs.iter().max().unwrap());
    hi - lo + 1 == rs.len()
}

/// Checks conditions (i) to (iii) for every word of length at most
/// `max_len`, with `order1` on the right and `order2` on the left.
/// Orders must list the whole alphabet.
pub fn fz_conditions(s: &FactorialLanguage, order1: &[Letter], order2: &[Letter], max_len: usize) -> Result<FzReport> {
    require_len(s, max_len + 2)?;
    let n = s.alphabet().len();
    for o in [order1, order2] {
        if partial_ranks(o).is_none() || o.len() != n || o.iter().any(|&l| l as usize >= n) {
            return Err(Error::InvalidOrder(format!("{o:?}")));
        }
    }
    let (r1, r2) = (ranks(order1), ranks(order2));
    let mut consecutive = None;
    let mut compatible = None;
    let mut singleton = None;
    for w in s.words().filter(|w| w.len() <= max_len) {
        let g = extension_graph(s, w)?;
        if consecutive.is_none() && (!is_consecutive(&g.left, &r2) || !is_consecutive(&g.right, &r1)) {
            consecutive = Some(w.clone());
        }
        if compatible.is_none() && !g.is_planar_compatible(order2, order1) {
            compatible = Some(w.clone());
        }
        if singleton.is_none() {
            let mut left = g.left.clone();
            left.sort_by_key(|&a| r2[a as usize]);
            let bad = left.windows(2).any(|p| {
                let aw: Word = std::iter::once(p[0]).chain(w.iter().copied()).collect();
                let bw: Word = std::iter::once(p[1]).chain(w.iter().copied()).collect();
                let ra = s.right_extensions(&aw);
                let rb = s.right_extensions(&bw);
                ra.iter().filter(|x| rb.contains(x)).count() != 1
            });
            if bad {
                singleton = Some(w.clone());
            }
        }
    }
    let tree_ok = first_failure(&graphs(s, max_len)?, None)?.is_none();
    let (consecutive, compatible, singleton) = (
        ConditionResult::from_witness(consecutive),
        ConditionResult::from_witness(compatible),
        ConditionResult::from_witness(singleton),
    );
    let implication_consistent = !(tree_ok && compatible.holds && singleton.holds) || consecutive.holds;
    Ok(FzReport { max_len_checked: max_len, consecutive, compatible, singleton, implication_consistent })
}

/// Every `(order1, order2)` pair satisfying all three conditions up to
/// `max_len`.
pub fn fz_order_pairs(s: &FactorialLanguage, max_len: usize) -> Result<Vec<(Vec<Letter>, Vec<Letter>)>> {
    require_searchable(s)?;
    let perms = permutations(s.alphabet().len());
    let mut out = Vec::new();
    for o1 in &perms {
        for o2 in &perms {
            if fz_conditions(s, o1, o2, max_len)?.all_hold() {
                out.push((o1.clone(), o2.clone()));
            }
        }
    }
    Ok(out)
}
