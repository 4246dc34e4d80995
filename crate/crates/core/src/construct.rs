//! Building double Boolean algebras from Boolean algebras.

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementId, FiniteDba, VerifiedDba};
use crate::boolean::{FiniteBooleanAlgebra, VerifiedBooleanAlgebra};
use crate::error::{DbaError, Result};
use crate::skeleton::{is_pure, is_trivial, Skeleton};

/// Sizes of the two power-set factors of a glued sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedSumSpec {
    pub p: usize,
    pub q: usize,
}

impl GluedSumSpec {
    pub fn build(self) -> Result<VerifiedDba> {
        let p = FiniteBooleanAlgebra::of_size(self.p)?;
        let q = FiniteBooleanAlgebra::of_size(self.q)?;
        glued_sum(&p, &q)
    }
}

/// Element ids of a glued sum: `P` keeps its own ids, `0_Q` is identified
/// with `1_P`, and the rest of `Q` follows in order.
struct GluedLayout<'a> {
    p: &'a FiniteBooleanAlgebra,
    q: &'a FiniteBooleanAlgebra,
    /// Sum id of each `Q` element.
    q_ids: Vec<ElementId>,
    /// `Q` element of each sum id, if any.
    q_of: Vec<Option<ElementId>>,
}

impl<'a> GluedLayout<'a> {
    fn new(p: &'a FiniteBooleanAlgebra, q: &'a FiniteBooleanAlgebra) -> Self {
        let size = p.size() + q.size() - 1;
        let mut q_ids = vec![0; q.size()];
        let mut q_of = vec![None; size];
        let mut next = p.size();
        for y in q.elements() {
            q_ids[y] = if y == q.zero() {
                p.one()
            } else {
                next += 1;
                next - 1
            };
            q_of[q_ids[y]] = Some(y);
        }
        GluedLayout { p, q, q_ids, q_of }
    }

    fn size(&self) -> usize {
        self.q_of.len()
    }

    fn in_p(&self, x: ElementId) -> bool {
        x < self.p.size()
    }

    fn in_q(&self, x: ElementId) -> bool {
        self.q_of[x].is_some()
    }

    fn q(&self, x: ElementId) -> ElementId {
        self.q_of[x].expect("element of Q")
    }

    fn glue(&self) -> ElementId {
        self.p.one()
    }

    fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        match (self.in_p(x), self.in_p(y)) {
            (true, true) => self.p.and(x, y),
            _ if self.in_q(x) && self.in_q(y) => self.glue(),
            (true, false) => x,
            _ => y,
        }
    }

    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        if self.in_q(x) && self.in_q(y) {
            return self.q_ids[self.q.or(self.q(x), self.q(y))];
        }
        match (self.in_p(x), self.in_p(y)) {
            (true, true) => self.glue(),
            (true, false) => y,
            _ => x,
        }
    }

    fn neg(&self, x: ElementId) -> ElementId {
        if self.in_p(x) {
            self.p.not(x)
        } else {
            self.p.zero()
        }
    }

    fn opp(&self, x: ElementId) -> ElementId {
        if self.in_q(x) {
            self.q_ids[self.q.not(self.q(x))]
        } else {
            self.q_ids[self.q.one()]
        }
    }
}

/// The glued sum of `P` and `Q`: `P` below, `Q` above, `1_P = 0_Q`.
/// `D_⊓` of the result is `P` and `D_⊔` is `Q`.
pub fn glued_sum(p: &FiniteBooleanAlgebra, q: &FiniteBooleanAlgebra) -> Result<VerifiedDba> {
    let l = GluedLayout::new(p, q);
    FiniteDba::from_fns(
        l.size(),
        p.zero(),
        l.q_ids[q.one()],
        |x, y| l.meet(x, y),
        |x, y| l.join(x, y),
        |x| l.neg(x),
        |x| l.opp(x),
    )?
    .verify()
    .map_err(|e| DbaError::Internal(format!("glued sum failed verification: {e}")))
}

/// Recovers `(D_⊓, D_⊔)` from a pure, trivial algebra, which is the glued sum
/// of the two.
pub fn decompose_glued(
    a: &VerifiedDba,
) -> Result<(VerifiedBooleanAlgebra, VerifiedBooleanAlgebra)> {
    if !is_pure(a) || !is_trivial(a) {
        return Err(DbaError::Classification(
            "only pure trivial algebras decompose as glued sums".into(),
        ));
    }
    let s = Skeleton::new(a);
    Ok((s.meet_ba().clone(), s.join_ba().clone()))
}

/// `⊓ = ∧`, `¬ = ′`, while `⊔` and `⌟` are constantly `1`.
pub fn lift_type1(b: &FiniteBooleanAlgebra) -> Result<VerifiedDba> {
    FiniteDba::from_fns(
        b.size(),
        b.zero(),
        b.one(),
        |x, y| b.and(x, y),
        |_, _| b.one(),
        |x| b.not(x),
        |_| b.one(),
    )?
    .verify()
}

/// `⊔ = ∨`, `⌟ = ′`, while `⊓` and `¬` are constantly `0`.
pub fn lift_type2(b: &FiniteBooleanAlgebra) -> Result<VerifiedDba> {
    FiniteDba::from_fns(
        b.size(),
        b.zero(),
        b.one(),
        |_, _| b.zero(),
        |x, y| b.or(x, y),
        |_| b.zero(),
        |x| b.not(x),
    )?
    .verify()
}
