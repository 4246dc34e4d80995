//! Identity suites evaluated exhaustively on one algebra. Each returns the
//! list of counterexamples it found, so an empty list means the suite holds.

use std::collections::BTreeSet;

use dba_lab::FiniteDba;

use super::{brute_filters, brute_ideals};

fn in_meet(a: &FiniteDba, x: usize) -> bool {
    a.meet(x, x) == x
}

fn in_join(a: &FiniteDba, x: usize) -> bool {
    a.join(x, x) == x
}

/// `x ⊑ y` from its definition: `x⊓y = x⊓x` and `x⊔y = y⊔y`.
pub fn leq(a: &FiniteDba, x: usize, y: usize) -> bool {
    a.meet(x, y) == a.meet(x, x) && a.join(x, y) == a.join(y, y)
}

fn vee(a: &FiniteDba, x: usize, y: usize) -> usize {
    a.neg(a.meet(a.neg(x), a.neg(y)))
}

fn wedge(a: &FiniteDba, x: usize, y: usize) -> usize {
    a.opp(a.join(a.opp(x), a.opp(y)))
}

fn plus(a: &FiniteDba, x: usize, y: usize) -> usize {
    vee(a, a.meet(x, a.neg(y)), a.meet(a.neg(x), y))
}

fn dot(a: &FiniteDba, x: usize, y: usize) -> usize {
    wedge(a, a.join(x, a.opp(y)), a.join(a.opp(x), y))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

/// The seven calculation rules for `⊓, ⊔, ¬, ⌟, ∨, ∧`.
pub fn calculation_rules(a: &FiniteDba) -> Vec<String> {
    let mut bad = Vec::new();
    for (x, y) in pairs(a.size()) {
        let mut fail = |clause: u8, ok: bool| {
            if !ok {
                bad.push(format!("rule {clause} at ({x},{y})"));
            }
        };
        fail(1, in_meet(a, a.meet(x, y)) && in_join(a, a.join(x, y)));
        fail(2, in_meet(a, a.neg(x)) && in_join(a, a.opp(x)));
        fail(
            3,
            leq(a, x, y) == (leq(a, a.neg(y), a.neg(x)) && leq(a, a.opp(y), a.opp(x))),
        );
        fail(
            4,
            a.neg(a.neg(x)) == a.meet(x, x) && a.opp(a.opp(x)) == a.join(x, x),
        );
        fail(5, in_meet(a, vee(a, x, y)) && in_join(a, wedge(a, x, y)));
        fail(
            6,
            a.neg(vee(a, x, y)) == a.meet(a.neg(x), a.neg(y))
                && a.neg(a.meet(x, y)) == vee(a, a.neg(x), a.neg(y)),
        );
        fail(
            7,
            a.opp(wedge(a, x, y)) == a.join(a.opp(x), a.opp(y))
                && a.opp(a.join(x, y)) == wedge(a, a.opp(x), a.opp(y)),
        );
    }
    bad
}

/// Ideals of `D_⊓` and filters of `D_⊔` as parent-id sets, by brute force.
fn parent_ideals_and_filters(a: &FiniteDba) -> (Vec<BTreeSet<usize>>, Vec<BTreeSet<usize>>) {
    let meet_part: Vec<usize> = a.elements().filter(|&x| in_meet(a, x)).collect();
    let join_part: Vec<usize> = a.elements().filter(|&x| in_join(a, x)).collect();
    let local = |part: &[usize], x: usize| part.iter().position(|&p| p == x).unwrap();
    let mb = dba_lab::FiniteBooleanAlgebra::from_fns(
        meet_part.len(),
        |i, j| local(&meet_part, a.meet(meet_part[i], meet_part[j])),
        |i, j| local(&meet_part, vee(a, meet_part[i], meet_part[j])),
        |i| local(&meet_part, a.neg(meet_part[i])),
        local(&meet_part, a.bot()),
        local(&meet_part, a.neg(a.bot())),
    )
    .unwrap();
    let jb = dba_lab::FiniteBooleanAlgebra::from_fns(
        join_part.len(),
        |i, j| local(&join_part, wedge(a, join_part[i], join_part[j])),
        |i, j| local(&join_part, a.join(join_part[i], join_part[j])),
        |i| local(&join_part, a.opp(join_part[i])),
        local(&join_part, a.opp(a.top())),
        local(&join_part, a.top()),
    )
    .unwrap();
    let ideals = brute_ideals(&mb)
        .into_iter()
        .map(|s| s.into_iter().map(|i| meet_part[i]).collect())
        .collect();
    let filters = brute_filters(&jb)
        .into_iter()
        .map(|s| s.into_iter().map(|i| join_part[i]).collect())
        .collect();
    (ideals, filters)
}

/// The rules for `+` and `·`. The last clause, `a+b=⊥ ∧ a·b=⊤ ⟺ a=b`, is
/// only evaluated on regular algebras.
pub fn sum_product_rules(a: &FiniteDba, regular: bool) -> Vec<String> {
    let n = a.size();
    let (bot, top) = (a.bot(), a.top());
    let mut bad = Vec::new();
    for (x, y) in pairs(n) {
        let mut fail = |clause: u8, ok: bool| {
            if !ok {
                bad.push(format!("rule {clause} at ({x},{y})"));
            }
        };
        fail(1, in_meet(a, plus(a, x, y)) && in_join(a, dot(a, x, y)));
        fail(
            2,
            plus(a, x, y) == plus(a, y, x) && dot(a, x, y) == dot(a, y, x),
        );
        fail(3, plus(a, x, x) == bot && dot(a, x, x) == top);
        fail(
            4,
            plus(a, x, bot) == a.meet(x, x) && dot(a, x, top) == a.join(x, x),
        );
        fail(5, plus(a, x, top) == a.neg(x) && dot(a, x, bot) == a.opp(x));
        fail(
            7,
            plus(a, x, a.meet(y, y)) == plus(a, x, y) && dot(a, x, a.join(y, y)) == dot(a, x, y),
        );
        fail(
            8,
            plus(a, a.meet(x, x), a.meet(y, y)) == plus(a, x, y)
                && dot(a, a.join(x, x), a.join(y, y)) == dot(a, x, y),
        );
        for z in 0..n {
            fail(
                9,
                plus(a, plus(a, x, y), z) == plus(a, x, plus(a, y, z))
                    && dot(a, dot(a, x, y), z) == dot(a, x, dot(a, y, z)),
            );
        }
        if regular {
            fail(
                10,
                (plus(a, x, y) == bot && dot(a, x, y) == top) == (x == y),
            );
        }
    }
    let (ideals, filters) = parent_ideals_and_filters(a);
    for i in &ideals {
        for (&x, &y) in i.iter().flat_map(|x| i.iter().map(move |y| (x, y))) {
            if !i.contains(&plus(a, x, y)) {
                bad.push(format!("rule 6 (ideal {i:?}) at ({x},{y})"));
            }
        }
    }
    for f in &filters {
        for (&x, &y) in f.iter().flat_map(|x| f.iter().map(move |y| (x, y))) {
            if !f.contains(&dot(a, x, y)) {
                bad.push(format!("rule 6 (filter {f:?}) at ({x},{y})"));
            }
        }
    }
    bad
}

/// Squaring into the opposite skeleton lands in both skeletons.
pub fn squares_in_both_parts(a: &FiniteDba) -> Vec<String> {
    let mut bad = Vec::new();
    for x in a.elements() {
        let both = |y| in_meet(a, y) && in_join(a, y);
        if in_meet(a, x) && !both(a.join(x, x)) {
            bad.push(format!("x⊔x at {x}"));
        }
        if in_join(a, x) && !both(a.meet(x, x)) {
            bad.push(format!("x⊓x at {x}"));
        }
    }
    bad
}

/// `⊔, ⌟` constant on `D_⊓` and `⊓, ¬` constant on `D_⊔`. Only meaningful
/// for trivial algebras.
pub fn trivial_constancy(a: &FiniteDba) -> Vec<String> {
    let (bot, top) = (a.bot(), a.top());
    let mut bad = Vec::new();
    for (x, y) in pairs(a.size()) {
        if in_meet(a, x) && in_meet(a, y) && (a.join(x, y) != a.join(bot, bot) || a.opp(x) != top) {
            bad.push(format!("meet side at ({x},{y})"));
        }
        if in_join(a, x) && in_join(a, y) && (a.meet(x, y) != a.meet(top, top) || a.neg(x) != bot) {
            bad.push(format!("join side at ({x},{y})"));
        }
    }
    bad
}

/// `⊑` is antisymmetric whenever every element lies in some skeleton.
pub fn pure_is_regular(a: &FiniteDba) -> Vec<String> {
    let pure = a.elements().all(|x| in_meet(a, x) || in_join(a, x));
    if !pure {
        return Vec::new();
    }
    pairs(a.size())
        .filter(|&(x, y)| x != y && leq(a, x, y) && leq(a, y, x))
        .map(|(x, y)| format!("pure but {x} ⊑ {y} ⊑ {x}"))
        .collect()
}

/// Swapping two elements with equal squares gives a congruence.
pub fn equal_squares_swap(a: &FiniteDba) -> Vec<String> {
    let n = a.size();
    let mut bad = Vec::new();
    for (x, y) in pairs(n).filter(|&(x, y)| x < y) {
        if a.meet(x, x) != a.meet(y, y) || a.join(x, x) != a.join(y, y) {
            continue;
        }
        let same = |p: usize, q: usize| p == q || (p.min(q), p.max(q)) == (x, y);
        let unary = same(a.neg(x), a.neg(y)) && same(a.opp(x), a.opp(y));
        let binary = (0..n).all(|z| {
            [(x, y), (y, x)].iter().all(|&(u, v)| {
                same(a.meet(u, z), a.meet(v, z))
                    && same(a.join(u, z), a.join(v, z))
                    && same(a.meet(z, u), a.meet(z, v))
                    && same(a.join(z, u), a.join(z, v))
            })
        });
        if !(unary && binary) {
            bad.push(format!("swap ({x},{y}) is not compatible"));
        }
    }
    bad
}
