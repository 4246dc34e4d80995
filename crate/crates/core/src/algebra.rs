//! Finite double Boolean algebras as operation tables.
//!
//! A [`FiniteDba`] is any algebra of signature `(⊓, ⊔, ¬, ⌟, ⊥, ⊤)` on the
//! carrier `{0, …, n−1}` whose tables are closed. It makes no promise that the
//! double Boolean algebra identities hold; [`FiniteDba::verify`] checks all 23
//! of them exhaustively and is the only way to obtain a [`VerifiedDba`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{DbaError, Result};

/// Index of an element in a finite carrier `{0, …, n−1}`.
pub type ElementId = usize;

/// Default number of violations reported per axiom.
pub const DEFAULT_VIOLATION_CAP: usize = 16;

/// Read access to the four operation tables, possibly only partially filled.
///
/// Axioms are written once against this trait so the same definitions drive
/// both the checker on complete tables and the pruning in the enumerator.
pub(crate) trait OpLookup {
    fn meet_at(&self, x: ElementId, y: ElementId) -> Option<ElementId>;
    fn join_at(&self, x: ElementId, y: ElementId) -> Option<ElementId>;
    fn neg_at(&self, x: ElementId) -> Option<ElementId>;
    fn opp_at(&self, x: ElementId) -> Option<ElementId>;
    fn bot_id(&self) -> ElementId;
    fn top_id(&self) -> ElementId;
}

/// An algebra given by closed operation tables, as seen by congruence code.
pub trait FiniteAlgebra {
    fn size(&self) -> usize;
    /// Binary tables, each row-major of length `size * size`.
    fn binary_tables(&self) -> Vec<&[ElementId]>;
    fn unary_tables(&self) -> Vec<&[ElementId]>;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteDba {
    size: usize,
    bot: ElementId,
    top: ElementId,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    neg: Vec<ElementId>,
    opp: Vec<ElementId>,
}

fn check_square(
    table: &'static str,
    rows: &[Vec<ElementId>],
    size: usize,
) -> Result<Vec<ElementId>> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(DbaError::Shape {
            table,
            expected: format!("{size}x{size}"),
            found: format!(
                "{} rows of lengths {:?}",
                rows.len(),
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            ),
        });
    }
    let mut flat = Vec::with_capacity(size * size);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v >= size {
                return Err(DbaError::Closure {
                    cell: format!("{table}[{i}][{j}]"),
                    value: v,
                    size,
                });
            }
            flat.push(v);
        }
    }
    Ok(flat)
}

fn check_vector(table: &'static str, values: &[ElementId], size: usize) -> Result<()> {
    if values.len() != size {
        return Err(DbaError::Shape {
            table,
            expected: format!("{size}"),
            found: format!("{}", values.len()),
        });
    }
    if let Some((i, &v)) = values.iter().enumerate().find(|(_, &v)| v >= size) {
        return Err(DbaError::Closure {
            cell: format!("{table}[{i}]"),
            value: v,
            size,
        });
    }
    Ok(())
}

fn check_constant(name: &'static str, value: ElementId, size: usize) -> Result<()> {
    if value >= size {
        return Err(DbaError::Closure {
            cell: name.to_string(),
            value,
            size,
        });
    }
    Ok(())
}

impl FiniteDba {
    /// Builds an algebra from row-major tables (`meet[x][y] = x ⊓ y`),
    /// rejecting any entry outside the carrier.
    pub fn from_tables(
        size: usize,
        bot: ElementId,
        top: ElementId,
        meet: &[Vec<ElementId>],
        join: &[Vec<ElementId>],
        neg: &[ElementId],
        opp: &[ElementId],
    ) -> Result<Self> {
        if size == 0 {
            return Err(DbaError::EmptyCarrier);
        }
        check_constant("bot", bot, size)?;
        check_constant("top", top, size)?;
        let meet = check_square("meet", meet, size)?;
        let join = check_square("join", join, size)?;
        check_vector("neg", neg, size)?;
        check_vector("opp", opp, size)?;
        Ok(FiniteDba {
            size,
            bot,
            top,
            meet,
            join,
            neg: neg.to_vec(),
            opp: opp.to_vec(),
        })
    }

    /// Builds an algebra by tabulating the given operations.
    pub fn from_fns(
        size: usize,
        bot: ElementId,
        top: ElementId,
        meet: impl Fn(ElementId, ElementId) -> ElementId,
        join: impl Fn(ElementId, ElementId) -> ElementId,
        neg: impl Fn(ElementId) -> ElementId,
        opp: impl Fn(ElementId) -> ElementId,
    ) -> Result<Self> {
        let square = |f: &dyn Fn(ElementId, ElementId) -> ElementId| -> Vec<Vec<ElementId>> {
            (0..size)
                .map(|x| (0..size).map(|y| f(x, y)).collect())
                .collect()
        };
        let meet = square(&meet);
        let join = square(&join);
        let neg: Vec<_> = (0..size).map(neg).collect();
        let opp: Vec<_> = (0..size).map(opp).collect();
        Self::from_tables(size, bot, top, &meet, &join, &neg, &opp)
    }

    /// The one-element algebra.
    pub fn singleton() -> Self {
        FiniteDba {
            size: 1,
            bot: 0,
            top: 0,
            meet: vec![0],
            join: vec![0],
            neg: vec![0],
            opp: vec![0],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bot(&self) -> ElementId {
        self.bot
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.size
    }

    #[inline]
    pub fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        self.meet[x * self.size + y]
    }

    #[inline]
    pub fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn neg(&self, x: ElementId) -> ElementId {
        self.neg[x]
    }

    #[inline]
    pub fn opp(&self, x: ElementId) -> ElementId {
        self.opp[x]
    }

    /// `x ∨ y = ¬(¬x ⊓ ¬y)`
    pub fn vee(&self, x: ElementId, y: ElementId) -> ElementId {
        self.neg(self.meet(self.neg(x), self.neg(y)))
    }

    /// `x ∧ y = ⌟(⌟x ⊔ ⌟y)`
    pub fn wedge(&self, x: ElementId, y: ElementId) -> ElementId {
        self.opp(self.join(self.opp(x), self.opp(y)))
    }

    /// `x + y = (x ⊓ ¬y) ∨ (¬x ⊓ y)`
    pub fn plus(&self, x: ElementId, y: ElementId) -> ElementId {
        self.vee(self.meet(x, self.neg(y)), self.meet(self.neg(x), y))
    }

    /// `x · y = (x ⊔ ⌟y) ∧ (⌟x ⊔ y)`
    pub fn dot(&self, x: ElementId, y: ElementId) -> ElementId {
        self.wedge(self.join(x, self.opp(y)), self.join(self.opp(x), y))
    }

    /// The quasi-order: `x ⊑ y` iff `x ⊓ y = x ⊓ x` and `x ⊔ y = y ⊔ y`.
    pub fn quasi_leq(&self, x: ElementId, y: ElementId) -> bool {
        self.meet(x, y) == self.meet(x, x) && self.join(x, y) == self.join(y, y)
    }

    /// `x ⊓ x = x`
    pub fn is_meet_idempotent(&self, x: ElementId) -> bool {
        self.meet(x, x) == x
    }

    /// `x ⊔ x = x`
    pub fn is_join_idempotent(&self, x: ElementId) -> bool {
        self.join(x, x) == x
    }

    pub fn meet_rows(&self) -> Vec<Vec<ElementId>> {
        self.meet.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn join_rows(&self) -> Vec<Vec<ElementId>> {
        self.join.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn neg_table(&self) -> &[ElementId] {
        &self.neg
    }

    pub fn opp_table(&self) -> &[ElementId] {
        &self.opp
    }

    /// Relabels the carrier: element `x` becomes `perm[x]`.
    ///
    /// # Panics
    /// If `perm` is not a permutation of the carrier.
    pub fn relabel(&self, perm: &[ElementId]) -> FiniteDba {
        let n = self.size;
        assert_eq!(perm.len(), n, "relabeling must cover the carrier");
        let mut inverse = vec![usize::MAX; n];
        for (x, &p) in perm.iter().enumerate() {
            assert!(
                p < n && inverse[p] == usize::MAX,
                "relabeling is not a bijection"
            );
            inverse[p] = x;
        }
        FiniteDba {
            size: n,
            bot: perm[self.bot],
            top: perm[self.top],
            meet: (0..n * n)
                .map(|c| perm[self.meet(inverse[c / n], inverse[c % n])])
                .collect(),
            join: (0..n * n)
                .map(|c| perm[self.join(inverse[c / n], inverse[c % n])])
                .collect(),
            neg: (0..n).map(|x| perm[self.neg(inverse[x])]).collect(),
            opp: (0..n).map(|x| perm[self.opp(inverse[x])]).collect(),
        }
    }

    /// Returns up to `cap` violations of one identity (`cap == 0` stops at the
    /// first; pass `usize::MAX` for all of them). Tuples are scanned in
    /// lexicographic order.
    pub fn check_axiom(&self, axiom: AxiomId, cap: usize) -> Vec<AxiomViolation> {
        let limit = cap.max(1);
        let arity = axiom.arity();
        let n = self.size;
        let mut out = Vec::new();
        let total = n.pow(arity as u32);
        for code in 0..total {
            let mut witness = Vec::with_capacity(arity);
            let mut rest = code;
            for _ in 0..arity {
                witness.push(rest % n);
                rest /= n;
            }
            witness.reverse();
            let (lhs, rhs) = axiom.evaluate(self, &witness);
            if lhs != rhs {
                out.push(AxiomViolation {
                    axiom,
                    witness,
                    lhs,
                    rhs,
                });
                if out.len() >= limit {
                    break;
                }
            }
        }
        out
    }

    pub fn check_all_axioms(&self, cap: usize) -> BTreeMap<AxiomId, Vec<AxiomViolation>> {
        AxiomId::ALL
            .iter()
            .map(|&ax| (ax, self.check_axiom(ax, cap)))
            .collect()
    }

    pub fn is_dba(&self) -> bool {
        AxiomId::ALL
            .iter()
            .all(|&ax| self.check_axiom(ax, 0).is_empty())
    }

    /// Checks all identities; on success the algebra is wrapped as verified.
    pub fn verify(self) -> Result<VerifiedDba> {
        for ax in AxiomId::ALL {
            if let Some(v) = self.check_axiom(ax, 0).into_iter().next() {
                return Err(DbaError::NotADba {
                    axiom: v.axiom,
                    witness: v.witness,
                    lhs: v.lhs,
                    rhs: v.rhs,
                });
            }
        }
        Ok(VerifiedDba(self))
    }
}

impl OpLookup for FiniteDba {
    fn meet_at(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        Some(self.meet(x, y))
    }
    fn join_at(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        Some(self.join(x, y))
    }
    fn neg_at(&self, x: ElementId) -> Option<ElementId> {
        Some(self.neg(x))
    }
    fn opp_at(&self, x: ElementId) -> Option<ElementId> {
        Some(self.opp(x))
    }
    fn bot_id(&self) -> ElementId {
        self.bot
    }
    fn top_id(&self) -> ElementId {
        self.top
    }
}

impl FiniteAlgebra for FiniteDba {
    fn size(&self) -> usize {
        self.size
    }
    fn binary_tables(&self) -> Vec<&[ElementId]> {
        vec![&self.meet, &self.join]
    }
    fn unary_tables(&self) -> Vec<&[ElementId]> {
        vec![&self.neg, &self.opp]
    }
}

/// A [`FiniteDba`] known to satisfy every identity (1a)–(12).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VerifiedDba(FiniteDba);

impl VerifiedDba {
    pub fn as_dba(&self) -> &FiniteDba {
        &self.0
    }

    pub fn into_inner(self) -> FiniteDba {
        self.0
    }
}

impl Deref for VerifiedDba {
    type Target = FiniteDba;
    fn deref(&self) -> &FiniteDba {
        &self.0
    }
}

impl FiniteAlgebra for VerifiedDba {
    fn size(&self) -> usize {
        self.0.size
    }
    fn binary_tables(&self) -> Vec<&[ElementId]> {
        self.0.binary_tables()
    }
    fn unary_tables(&self) -> Vec<&[ElementId]> {
        self.0.unary_tables()
    }
}

/// The 23 defining identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomId {
    #[serde(rename = "1a")]
    A1a,
    #[serde(rename = "2a")]
    A2a,
    #[serde(rename = "3a")]
    A3a,
    #[serde(rename = "4a")]
    A4a,
    #[serde(rename = "5a")]
    A5a,
    #[serde(rename = "6a")]
    A6a,
    #[serde(rename = "7a")]
    A7a,
    #[serde(rename = "8a")]
    A8a,
    #[serde(rename = "9a")]
    A9a,
    #[serde(rename = "10a")]
    A10a,
    #[serde(rename = "11a")]
    A11a,
    #[serde(rename = "1b")]
    A1b,
    #[serde(rename = "2b")]
    A2b,
    #[serde(rename = "3b")]
    A3b,
    #[serde(rename = "4b")]
    A4b,
    #[serde(rename = "5b")]
    A5b,
    #[serde(rename = "6b")]
    A6b,
    #[serde(rename = "7b")]
    A7b,
    #[serde(rename = "8b")]
    A8b,
    #[serde(rename = "9b")]
    A9b,
    #[serde(rename = "10b")]
    A10b,
    #[serde(rename = "11b")]
    A11b,
    #[serde(rename = "12")]
    A12,
}

impl AxiomId {
    pub const ALL: [AxiomId; 23] = [
        AxiomId::A1a,
        AxiomId::A2a,
        AxiomId::A3a,
        AxiomId::A4a,
        AxiomId::A5a,
        AxiomId::A6a,
        AxiomId::A7a,
        AxiomId::A8a,
        AxiomId::A9a,
        AxiomId::A10a,
        AxiomId::A11a,
        AxiomId::A1b,
        AxiomId::A2b,
        AxiomId::A3b,
        AxiomId::A4b,
        AxiomId::A5b,
        AxiomId::A6b,
        AxiomId::A7b,
        AxiomId::A8b,
        AxiomId::A9b,
        AxiomId::A10b,
        AxiomId::A11b,
        AxiomId::A12,
    ];

    pub fn tag(self) -> &'static str {
        use AxiomId::*;
        match self {
            A1a => "1a",
            A2a => "2a",
            A3a => "3a",
            A4a => "4a",
            A5a => "5a",
            A6a => "6a",
            A7a => "7a",
            A8a => "8a",
            A9a => "9a",
            A10a => "10a",
            A11a => "11a",
            A1b => "1b",
            A2b => "2b",
            A3b => "3b",
            A4b => "4b",
            A5b => "5b",
            A6b => "6b",
            A7b => "7b",
            A8b => "8b",
            A9b => "9b",
            A10b => "10b",
            A11b => "11b",
            A12 => "12",
        }
    }

    pub fn from_tag(tag: &str) -> Option<AxiomId> {
        Self::ALL.iter().copied().find(|a| a.tag() == tag)
    }

    /// Number of variables the identity quantifies over.
    pub fn arity(self) -> usize {
        use AxiomId::*;
        match self {
            A10a | A10b | A11a | A11b => 0,
            A8a | A8b | A9a | A9b | A12 => 1,
            A3a | A3b | A6a | A6b => 3,
            _ => 2,
        }
    }

    /// Both sides of the identity at `args` (missing variables read as 0).
    pub fn evaluate(self, algebra: &FiniteDba, args: &[ElementId]) -> (ElementId, ElementId) {
        let at = |i: usize| args.get(i).copied().unwrap_or(0);
        self.sides(algebra, at(0), at(1), at(2))
            .expect("complete tables always evaluate")
    }

    /// Both sides at `(x, y, z)`, or `None` if some needed entry is unknown.
    pub(crate) fn sides<T: OpLookup>(
        self,
        t: &T,
        x: ElementId,
        y: ElementId,
        z: ElementId,
    ) -> Option<(ElementId, ElementId)> {
        use AxiomId::*;
        let vee = |a, b| t.neg_at(t.meet_at(t.neg_at(a)?, t.neg_at(b)?)?);
        let wedge = |a, b| t.opp_at(t.join_at(t.opp_at(a)?, t.opp_at(b)?)?);
        let (bot, top) = (t.bot_id(), t.top_id());
        Some(match self {
            A1a => (t.meet_at(t.meet_at(x, x)?, y)?, t.meet_at(x, y)?),
            A1b => (t.join_at(t.join_at(x, x)?, y)?, t.join_at(x, y)?),
            A2a => (t.meet_at(x, y)?, t.meet_at(y, x)?),
            A2b => (t.join_at(x, y)?, t.join_at(y, x)?),
            A3a => (
                t.meet_at(x, t.meet_at(y, z)?)?,
                t.meet_at(t.meet_at(x, y)?, z)?,
            ),
            A3b => (
                t.join_at(x, t.join_at(y, z)?)?,
                t.join_at(t.join_at(x, y)?, z)?,
            ),
            A4a => (t.meet_at(x, t.join_at(x, y)?)?, t.meet_at(x, x)?),
            A4b => (t.join_at(x, t.meet_at(x, y)?)?, t.join_at(x, x)?),
            A5a => (t.meet_at(x, vee(x, y)?)?, t.meet_at(x, x)?),
            A5b => (t.join_at(x, wedge(x, y)?)?, t.join_at(x, x)?),
            A6a => (
                t.meet_at(x, vee(y, z)?)?,
                vee(t.meet_at(x, y)?, t.meet_at(x, z)?)?,
            ),
            A6b => (
                t.join_at(x, wedge(y, z)?)?,
                wedge(t.join_at(x, y)?, t.join_at(x, z)?)?,
            ),
            A7a => {
                let m = t.meet_at(x, y)?;
                (t.neg_at(t.neg_at(m)?)?, m)
            }
            A7b => {
                let j = t.join_at(x, y)?;
                (t.opp_at(t.opp_at(j)?)?, j)
            }
            A8a => (t.neg_at(t.meet_at(x, x)?)?, t.neg_at(x)?),
            A8b => (t.opp_at(t.join_at(x, x)?)?, t.opp_at(x)?),
            A9a => (t.meet_at(x, t.neg_at(x)?)?, bot),
            A9b => (t.join_at(x, t.opp_at(x)?)?, top),
            A10a => (t.neg_at(bot)?, t.meet_at(top, top)?),
            A10b => (t.opp_at(top)?, t.join_at(bot, bot)?),
            A11a => (t.neg_at(top)?, bot),
            A11b => (t.opp_at(bot)?, top),
            A12 => {
                let m = t.meet_at(x, x)?;
                let j = t.join_at(x, x)?;
                (t.join_at(m, m)?, t.meet_at(j, j)?)
            }
        })
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One tuple at which an identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: AxiomId,
    pub witness: Vec<ElementId>,
    pub lhs: ElementId,
    pub rhs: ElementId,
}
