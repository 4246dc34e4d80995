//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's axiom checker, congruence closure,
//! ideal generation, canonical forms or enumerator: each oracle recomputes
//! its answer from definitions by brute force.

#![allow(dead_code)]

pub mod suites;

use std::collections::BTreeSet;

use dba_lab::catalog::catalog;
use dba_lab::enumerate::{enumerate_verified, EnumerateOptions};
use dba_lab::{FiniteBooleanAlgebra, FiniteDba, VerifiedDba};

/// Plain tables, written out independently of the library type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Raw {
    pub n: usize,
    pub bot: usize,
    pub top: usize,
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
    pub neg: Vec<usize>,
    pub opp: Vec<usize>,
}

impl Raw {
    pub fn of(a: &FiniteDba) -> Raw {
        let n = a.size();
        Raw {
            n,
            bot: a.bot(),
            top: a.top(),
            meet: (0..n * n).map(|c| a.meet(c / n, c % n)).collect(),
            join: (0..n * n).map(|c| a.join(c / n, c % n)).collect(),
            neg: (0..n).map(|x| a.neg(x)).collect(),
            opp: (0..n).map(|x| a.opp(x)).collect(),
        }
    }

    pub fn to_dba(&self) -> FiniteDba {
        let n = self.n;
        FiniteDba::from_fns(
            n,
            self.bot,
            self.top,
            |x, y| self.meet[x * n + y],
            |x, y| self.join[x * n + y],
            |x| self.neg[x],
            |x| self.opp[x],
        )
        .unwrap()
    }

    /// `x ↦ perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Raw {
        let n = self.n;
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        Raw {
            n,
            bot: perm[self.bot],
            top: perm[self.top],
            meet: (0..n * n)
                .map(|c| perm[self.meet[inv[c / n] * n + inv[c % n]]])
                .collect(),
            join: (0..n * n)
                .map(|c| perm[self.join[inv[c / n] * n + inv[c % n]]])
                .collect(),
            neg: (0..n).map(|x| perm[self.neg[inv[x]]]).collect(),
            opp: (0..n).map(|x| perm[self.opp[inv[x]]]).collect(),
        }
    }
}

/// The identities that only mention `⊓`, `¬`, `⊥`, `⊤`.
pub fn meet_side_holds(n: usize, bot: usize, top: usize, m: &[usize], ng: &[usize]) -> bool {
    let me = |x: usize, y: usize| m[x * n + y];
    let or = |x: usize, y: usize| ng[me(ng[x], ng[y])];
    if ng[bot] != me(top, top) || ng[top] != bot {
        return false;
    }
    for x in 0..n {
        if ng[me(x, x)] != ng[x] || me(x, ng[x]) != bot {
            return false;
        }
        for y in 0..n {
            if me(me(x, x), y) != me(x, y)
                || me(x, y) != me(y, x)
                || me(x, or(x, y)) != me(x, x)
                || ng[ng[me(x, y)]] != me(x, y)
            {
                return false;
            }
            for z in 0..n {
                if me(x, me(y, z)) != me(me(x, y), z) || me(x, or(y, z)) != or(me(x, y), me(x, z)) {
                    return false;
                }
            }
        }
    }
    true
}

/// The identities that only mention `⊔`, `⌟`, `⊥`, `⊤`.
pub fn join_side_holds(n: usize, bot: usize, top: usize, j: &[usize], op: &[usize]) -> bool {
    let jo = |x: usize, y: usize| j[x * n + y];
    let and = |x: usize, y: usize| op[jo(op[x], op[y])];
    if op[top] != jo(bot, bot) || op[bot] != top {
        return false;
    }
    for x in 0..n {
        if op[jo(x, x)] != op[x] || jo(x, op[x]) != top {
            return false;
        }
        for y in 0..n {
            if jo(jo(x, x), y) != jo(x, y)
                || jo(x, y) != jo(y, x)
                || jo(x, and(x, y)) != jo(x, x)
                || op[op[jo(x, y)]] != jo(x, y)
            {
                return false;
            }
            for z in 0..n {
                if jo(x, jo(y, z)) != jo(jo(x, y), z) || jo(x, and(y, z)) != and(jo(x, y), jo(x, z))
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Absorption in both directions and the `(x⊓x)⊔(x⊓x) = (x⊔x)⊓(x⊔x)` law.
pub fn mixed_holds(n: usize, m: &[usize], j: &[usize]) -> bool {
    let me = |x: usize, y: usize| m[x * n + y];
    let jo = |x: usize, y: usize| j[x * n + y];
    (0..n).all(|x| {
        jo(me(x, x), me(x, x)) == me(jo(x, x), jo(x, x))
            && (0..n).all(|y| me(x, jo(x, y)) == me(x, x) && jo(x, me(x, y)) == jo(x, x))
    })
}

pub fn oracle_is_dba(r: &Raw) -> bool {
    meet_side_holds(r.n, r.bot, r.top, &r.meet, &r.neg)
        && join_side_holds(r.n, r.bot, r.top, &r.join, &r.opp)
        && mixed_holds(r.n, &r.meet, &r.join)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Least relabelled copy over all `n!` permutations.
pub fn brute_canonical(a: &FiniteDba) -> Raw {
    let r = Raw::of(a);
    permutations(a.size())
        .iter()
        .map(|p| r.permuted(p))
        .min()
        .unwrap()
}

pub fn brute_isomorphic(a: &FiniteDba, b: &FiniteDba) -> bool {
    a.size() == b.size() && brute_canonical(a) == brute_canonical(b)
}

/// Every set partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            prefix.push(b);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

fn compatible(r: &Raw, p: &[usize]) -> bool {
    let n = r.n;
    for a in 0..n {
        for b in 0..n {
            if p[a] != p[b] {
                continue;
            }
            if p[r.neg[a]] != p[r.neg[b]] || p[r.opp[a]] != p[r.opp[b]] {
                return false;
            }
            for c in 0..n {
                for d in 0..n {
                    if p[c] == p[d]
                        && (p[r.meet[a * n + c]] != p[r.meet[b * n + d]]
                            || p[r.join[a * n + c]] != p[r.join[b * n + d]])
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All congruences as restricted growth strings, by filtering every
/// partition.
pub fn brute_congruences(a: &FiniteDba) -> BTreeSet<Vec<usize>> {
    let r = Raw::of(a);
    set_partitions(a.size())
        .into_iter()
        .filter(|p| compatible(&r, p))
        .collect()
}

/// Ideals of a Boolean algebra by checking every subset against the
/// definition: non-empty, down-closed, closed under joins.
pub fn brute_ideals(b: &FiniteBooleanAlgebra) -> BTreeSet<BTreeSet<usize>> {
    let n = b.size();
    (1u64..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|&x| mask >> x & 1 == 1)
                .collect::<BTreeSet<usize>>()
        })
        .filter(|s| {
            s.iter().all(|&x| {
                (0..n).all(|y| b.and(x, y) != y || s.contains(&y))
                    && s.iter().all(|&y| s.contains(&b.or(x, y)))
            })
        })
        .collect()
}

pub fn brute_filters(b: &FiniteBooleanAlgebra) -> BTreeSet<BTreeSet<usize>> {
    let n = b.size();
    (1u64..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|&x| mask >> x & 1 == 1)
                .collect::<BTreeSet<usize>>()
        })
        .filter(|s| {
            s.iter().all(|&x| {
                (0..n).all(|y| b.and(x, y) != x || s.contains(&y))
                    && s.iter().all(|&y| s.contains(&b.and(x, y)))
            })
        })
        .collect()
}

/// Enumerated algebras of sizes 1 to 3 plus the catalog.
pub fn universe() -> Vec<(String, VerifiedDba)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for (i, a) in enumerate_verified(n, EnumerateOptions::default())
            .unwrap()
            .into_iter()
            .enumerate()
        {
            out.push((format!("n{n}#{i}"), a));
        }
    }
    for e in catalog() {
        out.push((e.alias.to_string(), e.algebra));
    }
    out
}

/// The universe extended by the size-4 enumeration.
pub fn wide_universe() -> Vec<(String, VerifiedDba)> {
    let mut out = universe();
    let opts = EnumerateOptions {
        allow_uncertified: true,
        workers: None,
    };
    for (i, a) in enumerate_verified(4, opts).unwrap().into_iter().enumerate() {
        out.push((format!("n4#{i}"), a));
    }
    out
}
