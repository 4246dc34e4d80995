//! Isomorphism testing and canonical forms for double Boolean algebras.
//!
//! Canonical labelling uses colour refinement with individualization: the
//! carrier is split by how elements interact with each colour class, and
//! whenever refinement stalls each member of the first non-singleton cell is
//! tried in turn. The lexicographically least serialization over all leaves
//! is the canonical form.

use std::cmp::Ordering;

use crate::algebra::{ElementId, FiniteDba};

/// A labelling-independent encoding of an algebra: equal forms mean
/// isomorphic algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Decodes the representative algebra the form was taken from.
    pub fn to_dba(&self) -> FiniteDba {
        let words: Vec<usize> = self
            .0
            .chunks_exact(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]) as usize)
            .collect();
        let n = words[0];
        let (bot, top) = (words[1], words[2]);
        let meet = &words[3..3 + n * n];
        let join = &words[3 + n * n..3 + 2 * n * n];
        let neg = &words[3 + 2 * n * n..3 + 2 * n * n + n];
        let opp = &words[3 + 2 * n * n + n..];
        FiniteDba::from_fns(
            n,
            bot,
            top,
            |x, y| meet[x * n + y],
            |x, y| join[x * n + y],
            |x| neg[x],
            |x| opp[x],
        )
        .expect("canonical forms encode closed tables")
    }
}

fn serialize(a: &FiniteDba) -> Vec<u8> {
    let n = a.size();
    let mut words = Vec::with_capacity(3 + 2 * n * n + 2 * n);
    words.extend([n, a.bot(), a.top()]);
    for t in [FiniteDba::meet, FiniteDba::join] {
        for x in 0..n {
            for y in 0..n {
                words.push(t(a, x, y));
            }
        }
    }
    words.extend_from_slice(a.neg_table());
    words.extend_from_slice(a.opp_table());
    words
        .into_iter()
        .flat_map(|w| {
            u16::try_from(w)
                .expect("carriers beyond u16 are out of scope")
                .to_be_bytes()
        })
        .collect()
}

/// Replaces colours by the rank of `key(x)` among all keys.
fn rerank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

fn cell_count(colours: &[usize]) -> usize {
    colours.iter().copied().max().map_or(0, |m| m + 1)
}

/// Refines until stable. Ranks respect the previous order, so the result
/// depends only on the isomorphism class of `(a, colours)`.
fn refine(a: &FiniteDba, colours: &mut Vec<usize>) {
    let n = a.size();
    let mut cells = cell_count(colours);
    while cells < n {
        let keys: Vec<(usize, usize, usize, Vec<[usize; 5]>)> = (0..n)
            .map(|x| {
                let mut row: Vec<[usize; 5]> = (0..n)
                    .map(|y| {
                        [
                            colours[y],
                            colours[a.meet(x, y)],
                            colours[a.meet(y, x)],
                            colours[a.join(x, y)],
                            colours[a.join(y, x)],
                        ]
                    })
                    .collect();
                row.sort_unstable();
                (colours[x], colours[a.neg(x)], colours[a.opp(x)], row)
            })
            .collect();
        *colours = rerank(&keys);
        let next = cell_count(colours);
        if next == cells {
            break;
        }
        cells = next;
    }
}

fn initial_colours(a: &FiniteDba) -> Vec<usize> {
    let keys: Vec<(bool, bool, bool, bool)> = a
        .elements()
        .map(|x| {
            (
                x != a.bot(),
                x != a.top(),
                !a.is_meet_idempotent(x),
                !a.is_join_idempotent(x),
            )
        })
        .collect();
    rerank(&keys)
}

struct Best {
    form: Vec<u8>,
    perm: Vec<ElementId>,
}

fn search(a: &FiniteDba, mut colours: Vec<usize>, best: &mut Option<Best>) {
    refine(a, &mut colours);
    let n = a.size();
    if cell_count(&colours) == n {
        let form = serialize(&a.relabel(&colours));
        let better = match best {
            None => true,
            Some(b) => form.cmp(&b.form) == Ordering::Less,
        };
        if better {
            *best = Some(Best {
                form,
                perm: colours,
            });
        }
        return;
    }
    let mut sizes = vec![0usize; cell_count(&colours)];
    for &c in &colours {
        sizes[c] += 1;
    }
    let target = sizes
        .iter()
        .position(|&s| s > 1)
        .expect("some cell is not a singleton");
    for v in (0..n).filter(|&x| colours[x] == target) {
        let keys: Vec<(usize, bool)> = (0..n)
            .map(|x| (colours[x], colours[x] == target && x != v))
            .collect();
        search(a, rerank(&keys), best);
    }
}

/// The canonical form and a permutation `perm` such that
/// `a.relabel(perm)` serializes to it.
pub fn canonical_labelling(a: &FiniteDba) -> (CanonicalForm, Vec<ElementId>) {
    let mut best = None;
    search(a, initial_colours(a), &mut best);
    let best = best.expect("search visits at least one leaf");
    (CanonicalForm(best.form), best.perm)
}

pub fn canonical_form(a: &FiniteDba) -> CanonicalForm {
    canonical_labelling(a).0
}

/// Whether `f` is a bijection `a → b` preserving every operation and both
/// constants.
pub fn is_isomorphism(a: &FiniteDba, b: &FiniteDba, f: &[ElementId]) -> bool {
    let n = a.size();
    if b.size() != n || f.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in f {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    f[a.bot()] == b.bot()
        && f[a.top()] == b.top()
        && a.elements().all(|x| {
            f[a.neg(x)] == b.neg(f[x])
                && f[a.opp(x)] == b.opp(f[x])
                && a.elements().all(|y| {
                    f[a.meet(x, y)] == b.meet(f[x], f[y]) && f[a.join(x, y)] == b.join(f[x], f[y])
                })
        })
}

/// An isomorphism `a → b`, if one exists.
pub fn is_isomorphic(a: &FiniteDba, b: &FiniteDba) -> Option<Vec<ElementId>> {
    if a.size() != b.size() {
        return None;
    }
    let (fa, pa) = canonical_labelling(a);
    let (fb, pb) = canonical_labelling(b);
    if fa != fb {
        return None;
    }
    let mut pb_inv = vec![0; pb.len()];
    for (x, &c) in pb.iter().enumerate() {
        pb_inv[c] = x;
    }
    let f: Vec<ElementId> = pa.iter().map(|&c| pb_inv[c]).collect();
    debug_assert!(is_isomorphism(a, b, &f));
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get;

    #[test]
    fn relabelled_copies_share_a_form() {
        let d6 = get("D6").unwrap().into_inner();
        let perm = vec![3, 5, 0, 1, 4, 2];
        let moved = d6.relabel(&perm);
        assert_eq!(canonical_form(&d6), canonical_form(&moved));
        let f = is_isomorphic(&d6, &moved).unwrap();
        assert!(is_isomorphism(&d6, &moved, &f));
    }

    #[test]
    fn form_roundtrip() {
        let d4 = get("D4").unwrap().into_inner();
        let form = canonical_form(&d4);
        let back = form.to_dba();
        assert_eq!(canonical_form(&back), form);
        assert!(is_isomorphic(&d4, &back).is_some());
    }

    #[test]
    fn distinct_catalog_entries_are_not_isomorphic() {
        let c = crate::catalog::catalog();
        for (i, a) in c.iter().enumerate() {
            for b in &c[i + 1..] {
                assert!(
                    is_isomorphic(&a.algebra, &b.algebra).is_none(),
                    "{} ~ {}",
                    a.alias,
                    b.alias
                );
            }
        }
    }
}
