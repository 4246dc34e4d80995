//! Ideals and filters of finite Boolean algebras, and the congruence
//! generating pairs `(I, F)` of a double Boolean algebra.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::algebra::ElementId;
use crate::boolean::FiniteBooleanAlgebra;
use crate::error::{DbaError, Result};
use crate::skeleton::{is_pure, Skeleton};

pub type ElementSet = BTreeSet<ElementId>;

/// Contains 0, closed under `∨`, and downward closed.
pub fn is_ideal(b: &FiniteBooleanAlgebra, set: &ElementSet) -> bool {
    set.contains(&b.zero())
        && set
            .iter()
            .all(|&x| set.iter().all(|&y| set.contains(&b.or(x, y))))
        && set
            .iter()
            .all(|&y| b.elements().all(|x| !b.leq(x, y) || set.contains(&x)))
}

/// Contains 1, closed under `∧`, and upward closed.
pub fn is_filter(b: &FiniteBooleanAlgebra, set: &ElementSet) -> bool {
    set.contains(&b.one())
        && set
            .iter()
            .all(|&x| set.iter().all(|&y| set.contains(&b.and(x, y))))
        && set
            .iter()
            .all(|&y| b.elements().all(|x| !b.leq(y, x) || set.contains(&x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Ideal {
    carrier: ElementSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Filter {
    carrier: ElementSet,
}

impl Ideal {
    pub fn new(b: &FiniteBooleanAlgebra, carrier: ElementSet) -> Result<Ideal> {
        if is_ideal(b, &carrier) {
            Ok(Ideal { carrier })
        } else {
            Err(DbaError::Contract(format!("{carrier:?} is not an ideal")))
        }
    }

    pub fn elements(&self) -> &ElementSet {
        &self.carrier
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.carrier.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.carrier.is_subset(&other.carrier)
    }
}

impl Filter {
    pub fn new(b: &FiniteBooleanAlgebra, carrier: ElementSet) -> Result<Filter> {
        if is_filter(b, &carrier) {
            Ok(Filter { carrier })
        } else {
            Err(DbaError::Contract(format!("{carrier:?} is not a filter")))
        }
    }

    pub fn elements(&self) -> &ElementSet {
        &self.carrier
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.carrier.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.carrier.is_subset(&other.carrier)
    }
}

/// `I(x) = {y : y ≤ x}`
pub fn principal_ideal(b: &FiniteBooleanAlgebra, x: ElementId) -> Ideal {
    Ideal {
        carrier: b.elements().filter(|&y| b.leq(y, x)).collect(),
    }
}

/// `F(y) = {x : y ≤ x}`
pub fn principal_filter(b: &FiniteBooleanAlgebra, y: ElementId) -> Filter {
    Filter {
        carrier: b.elements().filter(|&x| b.leq(y, x)).collect(),
    }
}

/// Closes `seed` under the given binary operation and the given order
/// direction until nothing changes.
fn close(
    b: &FiniteBooleanAlgebra,
    seed: impl IntoIterator<Item = ElementId>,
    op: impl Fn(ElementId, ElementId) -> ElementId,
    below: impl Fn(ElementId, ElementId) -> bool,
) -> ElementSet {
    let mut set: ElementSet = seed.into_iter().collect();
    loop {
        let mut next = set.clone();
        for &x in &set {
            for &y in &set {
                next.insert(op(x, y));
            }
            next.extend(b.elements().filter(|&z| below(z, x)));
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// Least ideal containing `seed`.
pub fn generated_ideal(b: &FiniteBooleanAlgebra, seed: &ElementSet) -> Ideal {
    let seed = seed.iter().copied().chain([b.zero()]);
    Ideal {
        carrier: close(b, seed, |x, y| b.or(x, y), |z, x| b.leq(z, x)),
    }
}

/// Least filter containing `seed`.
pub fn generated_filter(b: &FiniteBooleanAlgebra, seed: &ElementSet) -> Filter {
    let seed = seed.iter().copied().chain([b.one()]);
    Filter {
        carrier: close(b, seed, |x, y| b.and(x, y), |z, x| b.leq(x, z)),
    }
}

/// Every ideal, found by repeatedly extending known ideals by one element
/// and closing. Sorted by size, then contents.
pub fn all_ideals(b: &FiniteBooleanAlgebra) -> Vec<Ideal> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = generated_ideal(b, &ElementSet::new());
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(ideal) = queue.pop_front() {
        for x in b.elements().filter(|&x| !ideal.contains(x)) {
            let mut seed = ideal.carrier.clone();
            seed.insert(x);
            let bigger = generated_ideal(b, &seed);
            if seen.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }
    let mut out: Vec<Ideal> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Every filter; dual of [`all_ideals`].
pub fn all_filters(b: &FiniteBooleanAlgebra) -> Vec<Filter> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = generated_filter(b, &ElementSet::new());
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(filter) = queue.pop_front() {
        for x in b.elements().filter(|&x| !filter.contains(x)) {
            let mut seed = filter.carrier.clone();
            seed.insert(x);
            let bigger = generated_filter(b, &seed);
            if seen.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }
    let mut out: Vec<Filter> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// An ideal of `D_⊓` and a filter of `D_⊔` (both on skeleton-local ids)
/// with `¬F ⊆ I` and `⌟I ⊆ F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CongruencePair {
    pub ideal: Ideal,
    pub filter: Filter,
}

impl CongruencePair {
    /// `(I, F) ≤ (G, H)` iff `I ⊆ G` and `F ⊆ H`.
    pub fn leq(&self, other: &CongruencePair) -> bool {
        self.ideal.is_subset(&other.ideal) && self.filter.is_subset(&other.filter)
    }

    /// The ideal as parent-algebra ids.
    pub fn ideal_in_parent(&self, s: &Skeleton) -> ElementSet {
        self.ideal
            .elements()
            .iter()
            .map(|&i| s.meet_part()[i])
            .collect()
    }

    /// The filter as parent-algebra ids.
    pub fn filter_in_parent(&self, s: &Skeleton) -> ElementSet {
        self.filter
            .elements()
            .iter()
            .map(|&i| s.join_part()[i])
            .collect()
    }
}

/// Whether `¬F ⊆ I` and `⌟I ⊆ F` hold in the parent algebra.
pub fn is_congruence_pair(s: &Skeleton, ideal: &Ideal, filter: &Filter) -> bool {
    let a = s.parent();
    let neg_f_in_i = filter.elements().iter().all(|&f| {
        s.meet_local(a.neg(s.join_part()[f]))
            .is_some_and(|i| ideal.contains(i))
    });
    let opp_i_in_f = ideal.elements().iter().all(|&i| {
        s.join_local(a.opp(s.meet_part()[i]))
            .is_some_and(|f| filter.contains(f))
    });
    neg_f_in_i && opp_i_in_f
}

/// All congruence generating pairs with their containment order.
#[derive(Clone, Debug)]
pub struct CongruencePairs {
    pub pairs: Vec<CongruencePair>,
    /// `(i, j)` when `pairs[j]` covers `pairs[i]`.
    pub covers: Vec<(usize, usize)>,
    /// False when the parent is not pure; the pairs are then only advisory,
    /// since they need not correspond to congruences.
    pub parent_is_pure: bool,
}

impl CongruencePairs {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.pairs[i].leq(&self.pairs[j])
    }
}

pub fn congruence_pairs(s: &Skeleton) -> CongruencePairs {
    let ideals = all_ideals(s.meet_ba());
    let filters = all_filters(s.join_ba());
    let mut pairs: Vec<CongruencePair> = ideals
        .iter()
        .flat_map(|i| filters.iter().map(move |f| (i, f)))
        .filter(|(i, f)| is_congruence_pair(s, i, f))
        .map(|(i, f)| CongruencePair {
            ideal: i.clone(),
            filter: f.clone(),
        })
        .collect();
    pairs.sort_by(|p, q| {
        (p.ideal.len() + p.filter.len())
            .cmp(&(q.ideal.len() + q.filter.len()))
            .then_with(|| p.cmp(q))
    });
    let covers = cover_relation(pairs.len(), |i, j| pairs[i].leq(&pairs[j]));
    CongruencePairs {
        pairs,
        covers,
        parent_is_pure: is_pure(s.parent()),
    }
}

/// Cover pairs of a finite partial order given by `leq`.
pub(crate) fn cover_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |i: usize, j: usize| i != j && leq(i, j);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                covers.push((i, j));
            }
        }
    }
    covers
}
