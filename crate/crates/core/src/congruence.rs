//! Congruences of finite algebras.
//!
//! `Con(A)` is built from principal congruences (the closure of a single
//! pair) and then closed under joins. Simplicity and subdirect irreducibility
//! are read off that lattice; [`criterion_verdict`] decides simplicity of a
//! double Boolean algebra from its skeletons alone, without building `Con`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{ElementId, FiniteAlgebra, FiniteDba, VerifiedDba};
use crate::error::{DbaError, Result};
use crate::ideals::{
    all_filters, all_ideals, is_congruence_pair, CongruencePair, ElementSet, Filter, Ideal,
};
use crate::lattice::FiniteLattice;
use crate::skeleton::{is_pure, Skeleton};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

/// An equivalence relation stored as a block id per element. Block ids are
/// normalized to first-occurrence order, so equal relations have equal
/// representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    /// Normalizes an arbitrary block labelling.
    pub fn from_blocks(labels: &[usize]) -> Congruence {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let blocks = labels
            .iter()
            .map(|&l| match seen.iter().find(|(old, _)| *old == l) {
                Some(&(_, new)) => new,
                None => {
                    let new = seen.len();
                    seen.push((l, new));
                    new
                }
            })
            .collect();
        Congruence { blocks }
    }

    /// Δ
    pub fn identity(n: usize) -> Congruence {
        Congruence {
            blocks: (0..n).collect(),
        }
    }

    /// ∇
    pub fn total(n: usize) -> Congruence {
        Congruence { blocks: vec![0; n] }
    }

    fn from_union_find(uf: &mut UnionFind) -> Congruence {
        let n = uf.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        Congruence::from_blocks(&roots)
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_of(&self, x: ElementId) -> usize {
        self.blocks[x]
    }

    pub fn related(&self, x: ElementId, y: ElementId) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// The classes, each ascending, in block-id order.
    pub fn classes(&self) -> Vec<Vec<ElementId>> {
        let mut classes = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.blocks.iter().enumerate() {
            classes[b].push(x);
        }
        classes
    }

    /// `[x]_θ`
    pub fn class_of(&self, x: ElementId) -> Vec<ElementId> {
        (0..self.size()).filter(|&y| self.related(x, y)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let n = self.size();
        (0..n).all(|x| (x + 1..n).all(|y| !self.related(x, y) || other.related(x, y)))
    }

    pub fn intersect(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .copied()
            .zip(other.blocks.iter().copied())
            .collect();
        let mut labels = Vec::with_capacity(pairs.len());
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for p in pairs {
            let idx = match seen.iter().position(|&q| q == p) {
                Some(i) => i,
                None => {
                    seen.push(p);
                    seen.len() - 1
                }
            };
            labels.push(idx);
        }
        Congruence::from_blocks(&labels)
    }

    /// Whether every operation maps related arguments to related results.
    pub fn is_compatible<A: FiniteAlgebra + ?Sized>(&self, a: &A) -> bool {
        let n = a.size();
        if n != self.size() {
            return false;
        }
        // Compatibility in each argument position separately suffices.
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.related(x, y))
            .collect();
        a.unary_tables()
            .iter()
            .all(|u| pairs.iter().all(|&(x, y)| self.related(u[x], u[y])))
            && a.binary_tables().iter().all(|t| {
                pairs.iter().all(|&(x, y)| {
                    (0..n).all(|c| {
                        self.related(t[x * n + c], t[y * n + c])
                            && self.related(t[c * n + x], t[c * n + y])
                    })
                })
            })
    }
}

/// Least congruence containing every given pair.
pub fn congruence_closure<A: FiniteAlgebra + ?Sized>(
    a: &A,
    pairs: &[(ElementId, ElementId)],
) -> Congruence {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    close_union_find(a, &mut uf);
    Congruence::from_union_find(&mut uf)
}

fn close_union_find<A: FiniteAlgebra + ?Sized>(a: &A, uf: &mut UnionFind) {
    let n = a.size();
    let unary = a.unary_tables();
    let binary = a.binary_tables();
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for u in &unary {
                changed |= uf.union(u[x], u[r]);
            }
            for t in &binary {
                for c in 0..n {
                    changed |= uf.union(t[x * n + c], t[r * n + c]);
                    changed |= uf.union(t[c * n + x], t[c * n + r]);
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// `θ ∨ ψ`: the congruence generated by the union.
pub fn join<A: FiniteAlgebra + ?Sized>(a: &A, theta: &Congruence, psi: &Congruence) -> Congruence {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    for rel in [theta, psi] {
        let mut first = vec![usize::MAX; rel.block_count()];
        for x in 0..n {
            let b = rel.block_of(x);
            if first[b] == usize::MAX {
                first[b] = x;
            } else {
                uf.union(first[b], x);
            }
        }
    }
    close_union_find(a, &mut uf);
    Congruence::from_union_find(&mut uf)
}

/// `Con(A)` ordered by refinement. Elements are sorted so that Δ comes first
/// and ∇ last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLattice {
    elements: Vec<Congruence>,
}

impl CongruenceLattice {
    fn from_set(set: impl IntoIterator<Item = Congruence>) -> Self {
        let mut elements: Vec<Congruence> = set.into_iter().collect();
        elements.sort_by(|p, q| q.block_count().cmp(&p.block_count()).then_with(|| p.cmp(q)));
        elements.dedup();
        CongruenceLattice { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Congruence] {
        &self.elements
    }

    /// Δ
    pub fn bottom(&self) -> &Congruence {
        &self.elements[0]
    }

    /// ∇
    pub fn top(&self) -> &Congruence {
        self.elements.last().expect("Con is never empty")
    }

    pub fn index_of(&self, theta: &Congruence) -> Option<usize> {
        self.elements.iter().position(|c| c == theta)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].refines(&self.elements[j])
    }

    pub fn contains(&self, theta: &Congruence) -> bool {
        self.index_of(theta).is_some()
    }

    pub fn to_lattice(&self) -> FiniteLattice {
        FiniteLattice::from_order(self.len(), |i, j| self.leq(i, j))
            .expect("congruences form a lattice under refinement")
    }

    /// `|A| > 1` and `Con(A) = {Δ, ∇}`.
    pub fn is_simple(&self) -> bool {
        self.bottom().size() > 1 && self.len() == 2
    }

    /// The least congruence above Δ, when the carrier has more than one
    /// element and such a congruence exists.
    pub fn monolith(&self) -> Option<Congruence> {
        if self.bottom().size() <= 1 {
            return None;
        }
        let meet = self.elements[1..]
            .iter()
            .fold(None::<Congruence>, |acc, c| {
                Some(match acc {
                    None => c.clone(),
                    Some(m) => m.intersect(c),
                })
            })?;
        (!meet.is_identity()).then_some(meet)
    }

    pub fn is_subdirectly_irreducible(&self) -> bool {
        self.bottom().size() == 1 || self.monolith().is_some()
    }

    pub fn is_distributive(&self) -> bool {
        self.to_lattice().is_distributive()
    }
}

/// Every congruence of `a`.
pub fn all_congruences<A: FiniteAlgebra + Sync + ?Sized>(a: &A) -> CongruenceLattice {
    let n = a.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let mut principal: Vec<Congruence> = pairs
        .par_iter()
        .map(|&p| congruence_closure(a, &[p]))
        .collect();
    principal.sort();
    principal.dedup();

    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut queue = VecDeque::new();
    for c in std::iter::once(Congruence::identity(n)).chain(principal.iter().cloned()) {
        if seen.insert(c.clone()) {
            queue.push_back(c);
        }
    }
    while let Some(theta) = queue.pop_front() {
        for p in &principal {
            if p.refines(&theta) {
                continue;
            }
            let j = join(a, &theta, p);
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
    }
    CongruenceLattice::from_set(seen)
}

pub fn is_simple<A: FiniteAlgebra + Sync + ?Sized>(a: &A) -> bool {
    all_congruences(a).is_simple()
}

pub fn monolith<A: FiniteAlgebra + Sync + ?Sized>(a: &A) -> Option<Congruence> {
    all_congruences(a).monolith()
}

pub fn is_subdirectly_irreducible<A: FiniteAlgebra + Sync + ?Sized>(a: &A) -> bool {
    all_congruences(a).is_subdirectly_irreducible()
}

pub fn is_congruence_lattice_distributive(lattice: &CongruenceLattice) -> bool {
    lattice.is_distributive()
}

/// Which branch of the skeleton criterion decided simplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionPath {
    /// One-element carrier: not simple by convention.
    Singleton,
    /// Not pure: simple iff `|D| = 2`.
    NotPure,
    /// Pure and finite: element-level and ideal-level clauses.
    Pure,
}

/// Outcome of the skeleton-based simplicity criterion, with every clause
/// evaluated so disagreements are visible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub path: CriterionPath,
    pub simple: bool,
    /// Element form over `D_⊓`: `¬⌟a ⊑ a` only for `⊥`, `⊤`.
    pub meet_clause: Option<bool>,
    /// Element form over `D_⊔`: `b ⊑ ⌟¬b` only for `⊥`, `⊤`.
    pub join_clause: Option<bool>,
    /// Ideal form: only `{⊥}` and `D_⊓` satisfy `¬⌟J ⊆ J`.
    pub ideal_clause: Option<bool>,
    /// Filter form: only `{⊤}` and `D_⊔` satisfy `⌟¬F ⊆ F`.
    pub filter_clause: Option<bool>,
}

impl CriterionVerdict {
    pub fn clauses_agree(&self) -> bool {
        [
            self.meet_clause,
            self.join_clause,
            self.ideal_clause,
            self.filter_clause,
        ]
        .iter()
        .flatten()
        .all(|&c| c == self.simple)
    }
}

/// Decides simplicity from the skeletons, without enumerating `Con`.
pub fn criterion_verdict(a: &VerifiedDba) -> CriterionVerdict {
    if a.size() == 1 {
        return CriterionVerdict {
            path: CriterionPath::Singleton,
            simple: false,
            meet_clause: None,
            join_clause: None,
            ideal_clause: None,
            filter_clause: None,
        };
    }
    if !is_pure(a) {
        return CriterionVerdict {
            path: CriterionPath::NotPure,
            simple: a.size() == 2,
            meet_clause: None,
            join_clause: None,
            ideal_clause: None,
            filter_clause: None,
        };
    }
    let s = Skeleton::new(a);
    let (bot, top) = (a.bot(), a.top());
    let bot_top: ElementSet = [bot, top].into_iter().collect();
    let meet_trivial = s.meet_part() == [bot];
    let join_trivial = s.join_part() == [top];
    let top_idem = a.meet(top, top) == top;
    let bot_idem = a.join(bot, bot) == bot;

    let meet_fixed: ElementSet = s
        .meet_part()
        .iter()
        .copied()
        .filter(|&x| a.quasi_leq(a.neg(a.opp(x)), x))
        .collect();
    let meet_clause =
        (meet_trivial && s.join_part().len() <= 2) || (top_idem && meet_fixed == bot_top);

    let join_fixed: ElementSet = s
        .join_part()
        .iter()
        .copied()
        .filter(|&x| a.quasi_leq(x, a.opp(a.neg(x))))
        .collect();
    let join_clause =
        (join_trivial && s.meet_part().len() <= 2) || (bot_idem && join_fixed == bot_top);

    let ideal_clause = (meet_trivial && s.join_part().len() <= 2)
        || (top_idem && closed_ideals(&s) == extreme_ideals(&s));
    let filter_clause = (join_trivial && s.meet_part().len() <= 2)
        || (bot_idem && closed_filters(&s) == extreme_filters(&s));

    CriterionVerdict {
        path: CriterionPath::Pure,
        simple: meet_clause,
        meet_clause: Some(meet_clause),
        join_clause: Some(join_clause),
        ideal_clause: Some(ideal_clause),
        filter_clause: Some(filter_clause),
    }
}

/// Ideals `J` of `D_⊓` with `¬⌟J ⊆ J`, as parent-id sets.
fn closed_ideals(s: &Skeleton) -> BTreeSet<ElementSet> {
    let a = s.parent();
    all_ideals(s.meet_ba())
        .into_iter()
        .map(|j| {
            j.elements()
                .iter()
                .map(|&i| s.meet_part()[i])
                .collect::<ElementSet>()
        })
        .filter(|j| j.iter().all(|&x| j.contains(&a.neg(a.opp(x)))))
        .collect()
}

fn extreme_ideals(s: &Skeleton) -> BTreeSet<ElementSet> {
    [
        ElementSet::from([s.parent().bot()]),
        s.meet_part().iter().copied().collect(),
    ]
    .into_iter()
    .collect()
}

/// Filters `F` of `D_⊔` with `⌟¬F ⊆ F`, as parent-id sets.
fn closed_filters(s: &Skeleton) -> BTreeSet<ElementSet> {
    let a = s.parent();
    all_filters(s.join_ba())
        .into_iter()
        .map(|f| {
            f.elements()
                .iter()
                .map(|&i| s.join_part()[i])
                .collect::<ElementSet>()
        })
        .filter(|f| f.iter().all(|&x| f.contains(&a.opp(a.neg(x)))))
        .collect()
}

fn extreme_filters(s: &Skeleton) -> BTreeSet<ElementSet> {
    [
        ElementSet::from([s.parent().top()]),
        s.join_part().iter().copied().collect(),
    ]
    .into_iter()
    .collect()
}

/// Simplicity by the skeleton criterion. Errors if its equivalent clauses
/// disagree, which would mean a checker bug.
pub fn simple_by_criterion(a: &VerifiedDba) -> Result<bool> {
    let v = criterion_verdict(a);
    if !v.clauses_agree() {
        return Err(DbaError::Internal(format!(
            "equivalent simplicity clauses disagree: {v:?}"
        )));
    }
    Ok(v.simple)
}

fn require_pure(s: &Skeleton) -> Result<()> {
    if is_pure(s.parent()) {
        Ok(())
    } else {
        Err(DbaError::Contract(
            "congruence generating pairs correspond to congruences only on pure algebras".into(),
        ))
    }
}

/// `(a, b) ∈ θ` iff `a + b ∈ I` and `a · b ∈ F`.
pub fn theta_from_pair(s: &Skeleton, pair: &CongruencePair) -> Result<Congruence> {
    require_pure(s)?;
    let a = s.parent();
    let n = a.size();
    let ideal = pair.ideal_in_parent(s);
    let filter = pair.filter_in_parent(s);
    let related =
        |x: usize, y: usize| ideal.contains(&a.plus(x, y)) && filter.contains(&a.dot(x, y));
    let mut labels = vec![usize::MAX; n];
    for x in 0..n {
        if labels[x] == usize::MAX {
            labels[x] = x;
            for (y, l) in labels.iter_mut().enumerate().skip(x + 1) {
                if related(x, y) {
                    *l = x;
                }
            }
        }
    }
    let theta = Congruence::from_blocks(&labels);
    let agrees = (0..n).all(|x| (0..n).all(|y| related(x, y) == theta.related(x, y)));
    if !agrees {
        return Err(DbaError::Internal(format!(
            "relation from {pair:?} is not an equivalence"
        )));
    }
    if !theta.is_compatible(a.as_dba()) {
        return Err(DbaError::Internal(format!(
            "relation from {pair:?} is not compatible with the operations"
        )));
    }
    Ok(theta)
}

/// `θ ↦ ([⊥]_θ ∩ D_⊓, [⊤]_θ ∩ D_⊔)`
pub fn pair_from_theta(s: &Skeleton, theta: &Congruence) -> Result<CongruencePair> {
    require_pure(s)?;
    let a = s.parent();
    if theta.size() != a.size() {
        return Err(DbaError::Contract(
            "congruence on a different carrier".into(),
        ));
    }
    let ideal: ElementSet = theta
        .class_of(a.bot())
        .into_iter()
        .filter_map(|x| s.meet_local(x))
        .collect();
    let filter: ElementSet = theta
        .class_of(a.top())
        .into_iter()
        .filter_map(|x| s.join_local(x))
        .collect();
    let ideal = Ideal::new(s.meet_ba(), ideal)
        .map_err(|e| DbaError::Internal(format!("[⊥] ∩ D_⊓ is not an ideal: {e}")))?;
    let filter = Filter::new(s.join_ba(), filter)
        .map_err(|e| DbaError::Internal(format!("[⊤] ∩ D_⊔ is not a filter: {e}")))?;
    if !is_congruence_pair(s, &ideal, &filter) {
        return Err(DbaError::Internal(
            "image of a congruence is not a congruence generating pair".into(),
        ));
    }
    Ok(CongruencePair { ideal, filter })
}

/// Restriction of a congruence of the parent to `D_p` (local ids).
pub fn restrict_to_pure_part(s: &Skeleton, theta: &Congruence) -> Congruence {
    let labels: Vec<usize> = s.pure_part().iter().map(|&x| theta.block_of(x)).collect();
    Congruence::from_blocks(&labels)
}

/// `θ′ = θ ∪ Δ_D` for a congruence `θ` of the pure sub-algebra.
pub fn extend_skeleton_congruence(s: &Skeleton, theta_p: &Congruence) -> Result<Congruence> {
    let pure = s.pure_subalgebra();
    if theta_p.size() != pure.size() {
        return Err(DbaError::Contract(format!(
            "expected a relation on {} elements of D_p, got {}",
            pure.size(),
            theta_p.size()
        )));
    }
    if !theta_p.is_compatible(pure.as_dba()) {
        return Err(DbaError::Contract("not a congruence of D_p".into()));
    }
    let a: &FiniteDba = s.parent();
    let n = a.size();
    let labels: Vec<usize> = (0..n)
        .map(|x| match s.pure_local(x) {
            Some(i) => theta_p.block_of(i),
            None => n + x,
        })
        .collect();
    let extended = Congruence::from_blocks(&labels);
    if !extended.is_compatible(a) {
        return Err(DbaError::Internal(
            "extension of a D_p congruence is not compatible".into(),
        ));
    }
    Ok(extended)
}

/// Congruence facts, as they appear in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceSummary {
    pub con_size: usize,
    pub simple: bool,
    pub si: bool,
    pub monolith: Option<Congruence>,
    pub criterion_agrees: bool,
}

pub fn summarize(a: &VerifiedDba) -> CongruenceSummary {
    let con = all_congruences(a);
    let simple = con.is_simple();
    let verdict = criterion_verdict(a);
    CongruenceSummary {
        con_size: con.len(),
        simple,
        si: con.is_subdirectly_irreducible(),
        monolith: con.monolith(),
        criterion_agrees: verdict.clauses_agree() && verdict.simple == simple,
    }
}
