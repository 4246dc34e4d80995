//! Finite Boolean algebras `(B; ∧, ∨, ′, 0, 1)` given by tables.

use std::ops::Deref;

use crate::algebra::{ElementId, FiniteAlgebra, FiniteDba};
use crate::error::{DbaError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBooleanAlgebra {
    size: usize,
    and: Vec<ElementId>,
    or: Vec<ElementId>,
    not: Vec<ElementId>,
    zero: ElementId,
    one: ElementId,
}

impl FiniteBooleanAlgebra {
    pub fn from_fns(
        size: usize,
        and: impl Fn(ElementId, ElementId) -> ElementId,
        or: impl Fn(ElementId, ElementId) -> ElementId,
        not: impl Fn(ElementId) -> ElementId,
        zero: ElementId,
        one: ElementId,
    ) -> Result<Self> {
        if size == 0 {
            return Err(DbaError::EmptyCarrier);
        }
        let mut ba = FiniteBooleanAlgebra {
            size,
            and: Vec::with_capacity(size * size),
            or: Vec::with_capacity(size * size),
            not: (0..size).map(not).collect(),
            zero,
            one,
        };
        for x in 0..size {
            for y in 0..size {
                ba.and.push(and(x, y));
                ba.or.push(or(x, y));
            }
        }
        ba.check_closure()?;
        Ok(ba)
    }

    fn check_closure(&self) -> Result<()> {
        let n = self.size;
        let bad = |cell: String, value: usize| DbaError::Closure {
            cell,
            value,
            size: n,
        };
        for (name, table) in [("and", &self.and), ("or", &self.or)] {
            if let Some((c, &v)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(bad(format!("{name}[{}][{}]", c / n, c % n), v));
            }
        }
        if let Some((i, &v)) = self.not.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(bad(format!("not[{i}]"), v));
        }
        if self.zero >= n {
            return Err(bad("zero".into(), self.zero));
        }
        if self.one >= n {
            return Err(bad("one".into(), self.one));
        }
        Ok(())
    }

    /// The power set of a `k`-element set; element `m` is the subset with
    /// bitmask `m`.
    pub fn powerset(k: u32) -> VerifiedBooleanAlgebra {
        let n = 1usize << k;
        Self::from_fns(n, |x, y| x & y, |x, y| x | y, |x| !x & (n - 1), 0, n - 1)
            .and_then(Self::verify)
            .expect("power sets are Boolean algebras")
    }

    /// Power set Boolean algebra of the given cardinality (must be a power of two).
    pub fn of_size(size: usize) -> Result<VerifiedBooleanAlgebra> {
        if size == 0 || !size.is_power_of_two() {
            return Err(DbaError::Contract(format!(
                "finite Boolean algebras have 2^k elements, not {size}"
            )));
        }
        Ok(Self::powerset(size.trailing_zeros()))
    }

    /// Reads a Boolean algebra stored in the dBa file format: `∧ = ⊓`,
    /// `∨ = ⊔`, `′ = ¬ = ⌟`, `0 = ⊥`, `1 = ⊤`.
    pub fn from_dba(algebra: &FiniteDba) -> Result<VerifiedBooleanAlgebra> {
        if algebra.neg_table() != algebra.opp_table() {
            return Err(DbaError::NotBoolean {
                law: "negation equals opposition",
                witness: algebra
                    .elements()
                    .filter(|&x| algebra.neg(x) != algebra.opp(x))
                    .take(1)
                    .collect(),
            });
        }
        Self::from_fns(
            algebra.size(),
            |x, y| algebra.meet(x, y),
            |x, y| algebra.join(x, y),
            |x| algebra.neg(x),
            algebra.bot(),
            algebra.top(),
        )?
        .verify()
    }

    /// The same algebra in dBa signature: `⊓ = ∧`, `⊔ = ∨`, `¬ = ⌟ = ′`.
    pub fn to_dba(&self) -> FiniteDba {
        FiniteDba::from_fns(
            self.size,
            self.zero,
            self.one,
            |x, y| self.and(x, y),
            |x, y| self.or(x, y),
            |x| self.not(x),
            |x| self.not(x),
        )
        .expect("closed tables stay closed")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn and(&self, x: ElementId, y: ElementId) -> ElementId {
        self.and[x * self.size + y]
    }

    #[inline]
    pub fn or(&self, x: ElementId, y: ElementId) -> ElementId {
        self.or[x * self.size + y]
    }

    #[inline]
    pub fn not(&self, x: ElementId) -> ElementId {
        self.not[x]
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.size
    }

    /// `x ≤ y` iff `x ∧ y = x`.
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.and(x, y) == x
    }

    /// Checks the Boolean algebra laws exhaustively.
    pub fn verify(self) -> Result<VerifiedBooleanAlgebra> {
        if let Some((law, witness)) = self.first_failure() {
            return Err(DbaError::NotBoolean { law, witness });
        }
        Ok(VerifiedBooleanAlgebra(self))
    }

    fn first_failure(&self) -> Option<(&'static str, Vec<ElementId>)> {
        let els = || 0..self.size;
        for x in els() {
            if self.and(x, self.not(x)) != self.zero {
                return Some(("complement x ∧ x′ = 0", vec![x]));
            }
            if self.or(x, self.not(x)) != self.one {
                return Some(("complement x ∨ x′ = 1", vec![x]));
            }
            if self.and(x, self.one) != x {
                return Some(("bound x ∧ 1 = x", vec![x]));
            }
            if self.or(x, self.zero) != x {
                return Some(("bound x ∨ 0 = x", vec![x]));
            }
            for y in els() {
                if self.and(x, y) != self.and(y, x) {
                    return Some(("commutativity of ∧", vec![x, y]));
                }
                if self.or(x, y) != self.or(y, x) {
                    return Some(("commutativity of ∨", vec![x, y]));
                }
                if self.and(x, self.or(x, y)) != x {
                    return Some(("absorption x ∧ (x ∨ y) = x", vec![x, y]));
                }
                if self.or(x, self.and(x, y)) != x {
                    return Some(("absorption x ∨ (x ∧ y) = x", vec![x, y]));
                }
                for z in els() {
                    if self.and(x, self.and(y, z)) != self.and(self.and(x, y), z) {
                        return Some(("associativity of ∧", vec![x, y, z]));
                    }
                    if self.or(x, self.or(y, z)) != self.or(self.or(x, y), z) {
                        return Some(("associativity of ∨", vec![x, y, z]));
                    }
                    if self.and(x, self.or(y, z)) != self.or(self.and(x, y), self.and(x, z)) {
                        return Some(("distributivity", vec![x, y, z]));
                    }
                }
            }
        }
        None
    }
}

impl FiniteAlgebra for FiniteBooleanAlgebra {
    fn size(&self) -> usize {
        self.size
    }
    fn binary_tables(&self) -> Vec<&[ElementId]> {
        vec![&self.and, &self.or]
    }
    fn unary_tables(&self) -> Vec<&[ElementId]> {
        vec![&self.not]
    }
}

/// A [`FiniteBooleanAlgebra`] whose laws have been checked.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VerifiedBooleanAlgebra(FiniteBooleanAlgebra);

impl VerifiedBooleanAlgebra {
    pub fn into_inner(self) -> FiniteBooleanAlgebra {
        self.0
    }

    pub fn as_algebra(&self) -> &FiniteBooleanAlgebra {
        &self.0
    }

    /// Atoms: the covers of 0.
    pub fn atoms(&self) -> Vec<ElementId> {
        let b = &self.0;
        b.elements()
            .filter(|&a| {
                a != b.zero
                    && b.elements()
                        .all(|y| !(b.leq(y, a) && y != a && y != b.zero))
            })
            .collect()
    }
}

impl Deref for VerifiedBooleanAlgebra {
    type Target = FiniteBooleanAlgebra;
    fn deref(&self) -> &FiniteBooleanAlgebra {
        &self.0
    }
}

impl FiniteAlgebra for VerifiedBooleanAlgebra {
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
