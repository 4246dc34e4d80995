//! Finite lattices given by their order relation.
//!
//! Used to compare congruence lattices structurally (distributivity, direct
//! products, isomorphism), independently of the algebras they came from.

use crate::error::{DbaError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl FiniteLattice {
    /// Builds a lattice from a partial order, checking the order axioms and
    /// that all binary meets and joins exist.
    pub fn from_order(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FiniteLattice> {
        if size == 0 {
            return Err(DbaError::EmptyCarrier);
        }
        let mut table = vec![false; size * size];
        for i in 0..size {
            for j in 0..size {
                table[i * size + j] = leq(i, j);
            }
        }
        let le = |i: usize, j: usize| table[i * size + j];
        for i in 0..size {
            if !le(i, i) {
                return Err(DbaError::Contract(format!("order is not reflexive at {i}")));
            }
            for j in 0..size {
                if i != j && le(i, j) && le(j, i) {
                    return Err(DbaError::Contract(format!(
                        "order is not antisymmetric at ({i}, {j})"
                    )));
                }
                for k in 0..size {
                    if le(i, j) && le(j, k) && !le(i, k) {
                        return Err(DbaError::Contract(format!(
                            "order is not transitive at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        let bound = |i: usize, j: usize, lower: bool| -> Option<usize> {
            let below = |x: usize, y: usize| if lower { le(x, y) } else { le(y, x) };
            let candidates: Vec<usize> =
                (0..size).filter(|&k| below(k, i) && below(k, j)).collect();
            candidates
                .iter()
                .copied()
                .find(|&k| candidates.iter().all(|&c| below(c, k)))
        };
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for i in 0..size {
            for j in 0..size {
                meet[i * size + j] = bound(i, j, true)
                    .ok_or_else(|| DbaError::Contract(format!("no meet of {i} and {j}")))?;
                join[i * size + j] = bound(i, j, false)
                    .ok_or_else(|| DbaError::Contract(format!("no join of {i} and {j}")))?;
            }
        }
        Ok(FiniteLattice {
            size,
            leq: table,
            meet,
            join,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.size + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.size + j]
    }

    pub fn bottom(&self) -> usize {
        (0..self.size)
            .find(|&i| (0..self.size).all(|j| self.leq(i, j)))
            .expect("finite lattices are bounded")
    }

    pub fn top(&self) -> usize {
        (0..self.size)
            .find(|&i| (0..self.size).all(|j| self.leq(j, i)))
            .expect("finite lattices are bounded")
    }

    /// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` over all triples.
    pub fn is_distributive(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// Direct product; element `(i, j)` has index `i * other.size() + j`.
    pub fn product(&self, other: &FiniteLattice) -> FiniteLattice {
        let m = other.size;
        FiniteLattice::from_order(self.size * m, |a, b| {
            self.leq(a / m, b / m) && other.leq(a % m, b % m)
        })
        .expect("products of lattices are lattices")
    }

    fn signature(&self, i: usize) -> (usize, usize) {
        let down = (0..self.size).filter(|&j| self.leq(j, i)).count();
        let up = (0..self.size).filter(|&j| self.leq(i, j)).count();
        (down, up)
    }

    /// An order isomorphism `self → other`, if one exists.
    pub fn isomorphism(&self, other: &FiniteLattice) -> Option<Vec<usize>> {
        if self.size != other.size {
            return None;
        }
        let n = self.size;
        let sig_a: Vec<_> = (0..n).map(|i| self.signature(i)).collect();
        let sig_b: Vec<_> = (0..n).map(|i| other.signature(i)).collect();
        let mut sorted_a = sig_a.clone();
        let mut sorted_b = sig_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return None;
        }
        // Assign elements bottom-up so comparabilities constrain early.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| sig_a[i]);
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_iso(other, &order, 0, &sig_a, &sig_b, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso(
        &self,
        other: &FiniteLattice,
        order: &[usize],
        depth: usize,
        sig_a: &[(usize, usize)],
        sig_b: &[(usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for candidate in 0..other.size {
            if used[candidate] || sig_b[candidate] != sig_a[x] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&y| {
                self.leq(x, y) == other.leq(candidate, image[y])
                    && self.leq(y, x) == other.leq(image[y], candidate)
            });
            if !consistent {
                continue;
            }
            image[x] = candidate;
            used[candidate] = true;
            if self.extend_iso(other, order, depth + 1, sig_a, sig_b, image, used) {
                return true;
            }
            used[candidate] = false;
            image[x] = usize::MAX;
        }
        false
    }

    pub fn is_isomorphic(&self, other: &FiniteLattice) -> bool {
        self.isomorphism(other).is_some()
    }
}
