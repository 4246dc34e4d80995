//! The two Boolean skeletons `D_⊓`, `D_⊔`, the pure part `D_p`, and the
//! structural classification (pure, trivial, regular, types I–V).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementId, FiniteDba, VerifiedDba};
use crate::boolean::{FiniteBooleanAlgebra, VerifiedBooleanAlgebra};

/// `D_⊓ = {x : x ⊓ x = x}`
pub fn meet_part(a: &FiniteDba) -> Vec<ElementId> {
    a.elements().filter(|&x| a.is_meet_idempotent(x)).collect()
}

/// `D_⊔ = {x : x ⊔ x = x}`
pub fn join_part(a: &FiniteDba) -> Vec<ElementId> {
    a.elements().filter(|&x| a.is_join_idempotent(x)).collect()
}

/// `D_p = D_⊓ ∪ D_⊔`
pub fn pure_part(a: &FiniteDba) -> Vec<ElementId> {
    a.elements()
        .filter(|&x| a.is_meet_idempotent(x) || a.is_join_idempotent(x))
        .collect()
}

pub fn is_pure(a: &FiniteDba) -> bool {
    a.elements()
        .all(|x| a.is_meet_idempotent(x) || a.is_join_idempotent(x))
}

/// `⊤ ⊓ ⊤ = ⊥ ⊔ ⊥`
pub fn is_trivial(a: &FiniteDba) -> bool {
    a.meet(a.top(), a.top()) == a.join(a.bot(), a.bot())
}

/// Antisymmetry of the quasi-order, decided over all pairs.
pub fn is_regular(a: &FiniteDba) -> bool {
    a.elements()
        .all(|x| (x + 1..a.size()).all(|y| !(a.quasi_leq(x, y) && a.quasi_leq(y, x))))
}

fn local_index(part: &[ElementId], size: usize) -> Vec<Option<usize>> {
    let mut index = vec![None; size];
    for (i, &x) in part.iter().enumerate() {
        index[x] = Some(i);
    }
    index
}

/// Restricts operations of `a` to `part`, re-indexed densely.
struct SubCarrier<'a> {
    part: &'a [ElementId],
    index: Vec<Option<usize>>,
    what: &'static str,
}

impl<'a> SubCarrier<'a> {
    fn new(part: &'a [ElementId], size: usize, what: &'static str) -> Self {
        SubCarrier {
            part,
            index: local_index(part, size),
            what,
        }
    }

    fn local(&self, x: ElementId) -> usize {
        self.index[x].unwrap_or_else(|| {
            panic!(
                "internal inconsistency: {} is not closed (element {x} escapes)",
                self.what
            )
        })
    }
}

/// `D_⊓`, `D_⊔`, `D_p` of a verified algebra with the two Boolean algebras
/// `(D_⊓; ⊓, ∨, ¬, ⊥, ¬⊥)` and `(D_⊔; ∧, ⊔, ⌟, ⌟⊤, ⊤)` on dense local ids.
#[derive(Clone, Debug)]
pub struct Skeleton {
    parent: VerifiedDba,
    meet_part: Vec<ElementId>,
    join_part: Vec<ElementId>,
    pure_part: Vec<ElementId>,
    meet_index: Vec<Option<usize>>,
    join_index: Vec<Option<usize>>,
    pure_index: Vec<Option<usize>>,
    meet_ba: VerifiedBooleanAlgebra,
    join_ba: VerifiedBooleanAlgebra,
}

impl Skeleton {
    /// # Panics
    /// If either skeleton fails Boolean verification. For a verified parent
    /// this cannot happen, so a panic means a checker bug.
    pub fn new(parent: &VerifiedDba) -> Skeleton {
        let a: &FiniteDba = parent;
        let meet_part = meet_part(a);
        let join_part = join_part(a);
        let pure_part = pure_part(a);

        let m = SubCarrier::new(&meet_part, a.size(), "D_⊓");
        let meet_ba = FiniteBooleanAlgebra::from_fns(
            meet_part.len(),
            |i, j| m.local(a.meet(m.part[i], m.part[j])),
            |i, j| m.local(a.vee(m.part[i], m.part[j])),
            |i| m.local(a.neg(m.part[i])),
            m.local(a.bot()),
            m.local(a.neg(a.bot())),
        )
        .and_then(FiniteBooleanAlgebra::verify)
        .unwrap_or_else(|e| panic!("internal inconsistency: D_⊓ is not Boolean: {e}"));

        let j = SubCarrier::new(&join_part, a.size(), "D_⊔");
        let join_ba = FiniteBooleanAlgebra::from_fns(
            join_part.len(),
            |x, y| j.local(a.wedge(j.part[x], j.part[y])),
            |x, y| j.local(a.join(j.part[x], j.part[y])),
            |x| j.local(a.opp(j.part[x])),
            j.local(a.opp(a.top())),
            j.local(a.top()),
        )
        .and_then(FiniteBooleanAlgebra::verify)
        .unwrap_or_else(|e| panic!("internal inconsistency: D_⊔ is not Boolean: {e}"));

        Skeleton {
            parent: parent.clone(),
            meet_index: m.index,
            join_index: j.index,
            pure_index: local_index(&pure_part, a.size()),
            meet_part,
            join_part,
            pure_part,
            meet_ba,
            join_ba,
        }
    }

    pub fn parent(&self) -> &VerifiedDba {
        &self.parent
    }

    /// Parent ids of `D_⊓`, ascending; local id `i` is `meet_part()[i]`.
    pub fn meet_part(&self) -> &[ElementId] {
        &self.meet_part
    }

    pub fn join_part(&self) -> &[ElementId] {
        &self.join_part
    }

    pub fn pure_part(&self) -> &[ElementId] {
        &self.pure_part
    }

    pub fn meet_ba(&self) -> &VerifiedBooleanAlgebra {
        &self.meet_ba
    }

    pub fn join_ba(&self) -> &VerifiedBooleanAlgebra {
        &self.join_ba
    }

    pub fn meet_local(&self, x: ElementId) -> Option<usize> {
        self.meet_index[x]
    }

    pub fn join_local(&self, x: ElementId) -> Option<usize> {
        self.join_index[x]
    }

    pub fn pure_local(&self, x: ElementId) -> Option<usize> {
        self.pure_index[x]
    }

    /// The largest pure sub-algebra `D_p`, on local ids in `pure_part()` order.
    ///
    /// # Panics
    /// If `D_p` is not closed or fails the identities (a checker bug).
    pub fn pure_subalgebra(&self) -> VerifiedDba {
        let a: &FiniteDba = &self.parent;
        let p = SubCarrier::new(&self.pure_part, a.size(), "D_p");
        FiniteDba::from_fns(
            self.pure_part.len(),
            p.local(a.bot()),
            p.local(a.top()),
            |x, y| p.local(a.meet(p.part[x], p.part[y])),
            |x, y| p.local(a.join(p.part[x], p.part[y])),
            |x| p.local(a.neg(p.part[x])),
            |x| p.local(a.opp(p.part[x])),
        )
        .and_then(FiniteDba::verify)
        .unwrap_or_else(|e| panic!("internal inconsistency: D_p is not a sub-dBa: {e}"))
    }

    /// Whether `D_p` is a Boolean algebra under `(⊓, ⊔, ¬, ⊥, ⊤)`.
    pub fn pure_part_is_boolean(&self) -> bool {
        let a: &FiniteDba = &self.parent;
        let p = SubCarrier::new(&self.pure_part, a.size(), "D_p");
        FiniteBooleanAlgebra::from_fns(
            self.pure_part.len(),
            |x, y| p.local(a.meet(p.part[x], p.part[y])),
            |x, y| p.local(a.join(p.part[x], p.part[y])),
            |x| p.local(a.neg(p.part[x])),
            p.local(a.bot()),
            p.local(a.top()),
        )
        .and_then(FiniteBooleanAlgebra::verify)
        .is_ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeTag {
    I,
    II,
    III,
    IV,
    V,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeTag::I => "I",
            TypeTag::II => "II",
            TypeTag::III => "III",
            TypeTag::IV => "IV",
            TypeTag::V => "V",
        };
        f.write_str(s)
    }
}

/// The (overlapping) type classes an algebra belongs to.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DbaType {
    pub tags: BTreeSet<TypeTag>,
}

impl DbaType {
    pub fn contains(&self, tag: TypeTag) -> bool {
        self.tags.contains(&tag)
    }
}

impl fmt::Display for DbaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<String> = self.tags.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", tags.join(", "))
    }
}

pub fn classify_type(skeleton: &Skeleton) -> DbaType {
    let a: &FiniteDba = skeleton.parent();
    let (bot, top) = (a.bot(), a.top());
    let bb = a.join(bot, bot);
    let tt = a.meet(top, top);
    let mut tags = BTreeSet::new();
    if skeleton.join_part() == [top] {
        tags.insert(TypeTag::I);
    }
    if skeleton.meet_part() == [bot] {
        tags.insert(TypeTag::II);
    }
    if bb == bot && tt == top {
        tags.insert(TypeTag::III);
    }
    if bot == top || bb != bot || tt != top {
        tags.insert(TypeTag::IV);
    }
    if skeleton.pure_part_is_boolean() {
        tags.insert(TypeTag::V);
    }
    DbaType { tags }
}

/// Structural summary of an algebra, as it appears in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub pure: bool,
    pub trivial: bool,
    pub regular: bool,
    pub types: DbaType,
    pub d_meet: Vec<ElementId>,
    pub d_join: Vec<ElementId>,
}

pub fn summarize(skeleton: &Skeleton) -> StructureSummary {
    let a: &FiniteDba = skeleton.parent();
    StructureSummary {
        pure: is_pure(a),
        trivial: is_trivial(a),
        regular: is_regular(a),
        types: classify_type(skeleton),
        d_meet: skeleton.meet_part().to_vec(),
        d_join: skeleton.join_part().to_vec(),
    }
}
