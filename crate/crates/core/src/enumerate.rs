//! Exhaustive enumeration of small double Boolean algebras up to
//! isomorphism, and the simple/SI summary table over a universe of algebras.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AxiomId, ElementId, OpLookup, VerifiedDba};
use crate::catalog::catalog;
use crate::congruence::all_congruences;
use crate::error::{DbaError, Result};
use crate::iso::{canonical_form, CanonicalForm};
use crate::skeleton::{classify_type, is_trivial, Skeleton, TypeTag};

/// Largest size for which enumeration is certified complete.
pub const CERTIFIED_MAX_SIZE: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Permit sizes above [`CERTIFIED_MAX_SIZE`].
    pub allow_uncertified: bool,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
enum Cell {
    Neg(ElementId),
    Opp(ElementId),
    Meet(ElementId, ElementId),
    Join(ElementId, ElementId),
}

#[derive(Clone, Debug)]
struct Partial {
    n: usize,
    bot: ElementId,
    top: ElementId,
    meet: Vec<Option<ElementId>>,
    join: Vec<Option<ElementId>>,
    neg: Vec<Option<ElementId>>,
    opp: Vec<Option<ElementId>>,
}

impl OpLookup for Partial {
    fn meet_at(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.meet[x * self.n + y]
    }
    fn join_at(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.join[x * self.n + y]
    }
    fn neg_at(&self, x: ElementId) -> Option<ElementId> {
        self.neg[x]
    }
    fn opp_at(&self, x: ElementId) -> Option<ElementId> {
        self.opp[x]
    }
    fn bot_id(&self) -> ElementId {
        self.bot
    }
    fn top_id(&self) -> ElementId {
        self.top
    }
}

impl Partial {
    fn new(n: usize, top: ElementId) -> Self {
        Partial {
            n,
            bot: 0,
            top,
            meet: vec![None; n * n],
            join: vec![None; n * n],
            neg: vec![None; n],
            opp: vec![None; n],
        }
    }

    fn set(&mut self, cell: Cell, v: Option<ElementId>) {
        let n = self.n;
        match cell {
            Cell::Neg(x) => self.neg[x] = v,
            Cell::Opp(x) => self.opp[x] = v,
            Cell::Meet(x, y) => {
                self.meet[x * n + y] = v;
                self.meet[y * n + x] = v;
            }
            Cell::Join(x, y) => {
                self.join[x * n + y] = v;
                self.join[y * n + x] = v;
            }
        }
    }

    /// False if some fully instantiated axiom instance already fails.
    fn consistent(&self) -> bool {
        let n = self.n;
        AxiomId::ALL.iter().all(|&ax| {
            let ys = if ax.arity() >= 2 { n } else { 1 };
            let zs = if ax.arity() >= 3 { n } else { 1 };
            let xs = if ax.arity() >= 1 { n } else { 1 };
            (0..xs).all(|x| {
                (0..ys).all(|y| {
                    (0..zs).all(|z| match ax.sides(self, x, y, z) {
                        Some((l, r)) => l == r,
                        None => true,
                    })
                })
            })
        })
    }

    fn complete(&self) -> crate::algebra::FiniteDba {
        let get = |v: Option<ElementId>| v.expect("complete assignment");
        crate::algebra::FiniteDba::from_fns(
            self.n,
            self.bot,
            self.top,
            |x, y| get(self.meet[x * self.n + y]),
            |x, y| get(self.join[x * self.n + y]),
            |x| get(self.neg[x]),
            |x| get(self.opp[x]),
        )
        .expect("assigned values are in range")
    }
}

/// `¬`, `⌟`, then the upper triangles of `⊓` and `⊔`.
fn fill_order(n: usize) -> Vec<Cell> {
    let mut cells: Vec<Cell> = (0..n).map(Cell::Neg).collect();
    cells.extend((0..n).map(Cell::Opp));
    for x in 0..n {
        for y in x..n {
            cells.push(Cell::Meet(x, y));
        }
    }
    for x in 0..n {
        for y in x..n {
            cells.push(Cell::Join(x, y));
        }
    }
    cells
}

fn dfs(p: &mut Partial, cells: &[Cell], depth: usize, out: &mut Vec<CanonicalForm>) {
    let Some(&cell) = cells.get(depth) else {
        out.push(canonical_form(&p.complete()));
        return;
    };
    for v in 0..p.n {
        p.set(cell, Some(v));
        if p.consistent() {
            dfs(p, cells, depth + 1, out);
        }
    }
    p.set(cell, None);
}

/// Every dBa of size `n` up to isomorphism, as sorted canonical forms.
pub fn enumerate_dbas(n: usize) -> Result<Vec<CanonicalForm>> {
    enumerate_dbas_with(n, EnumerateOptions::default())
}

pub fn enumerate_dbas_with(n: usize, opts: EnumerateOptions) -> Result<Vec<CanonicalForm>> {
    if n == 0 {
        return Err(DbaError::EmptyCarrier);
    }
    if n > CERTIFIED_MAX_SIZE && !opts.allow_uncertified {
        return Err(DbaError::EnumerationCap {
            size: n,
            cap: CERTIFIED_MAX_SIZE,
        });
    }
    let cells = fill_order(n);
    // ⊥ is 0; ⊤ is 0 or, when distinct, 1. The first cell splits the rest.
    let tops: Vec<ElementId> = if n == 1 { vec![0] } else { vec![0, 1] };
    let roots: Vec<(ElementId, ElementId)> = tops
        .iter()
        .flat_map(|&t| (0..n).map(move |v| (t, v)))
        .collect();
    let run = || {
        roots
            .par_iter()
            .map(|&(top, v)| {
                let mut p = Partial::new(n, top);
                let mut out = Vec::new();
                p.set(cells[0], Some(v));
                if p.consistent() {
                    dfs(&mut p, &cells, 1, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
    };
    let chunks = match opts.workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| DbaError::Internal(format!("worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    let forms: BTreeSet<CanonicalForm> = chunks.into_iter().flatten().collect();
    Ok(forms.into_iter().collect())
}

/// The enumerated algebras themselves, each re-verified.
pub fn enumerate_verified(n: usize, opts: EnumerateOptions) -> Result<Vec<VerifiedDba>> {
    enumerate_dbas_with(n, opts)?
        .iter()
        .map(|f| {
            f.to_dba()
                .verify()
                .map_err(|e| DbaError::Internal(format!("enumerated algebra fails: {e}")))
        })
        .collect()
}

/// A column of the simple/SI summary table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableColumn {
    TypeI,
    TypeII,
    Trivial,
    TypeIV,
    TypeV,
}

impl TableColumn {
    pub const ALL: [TableColumn; 5] = [
        TableColumn::TypeI,
        TableColumn::TypeII,
        TableColumn::Trivial,
        TableColumn::TypeIV,
        TableColumn::TypeV,
    ];

    pub fn heading(self) -> &'static str {
        match self {
            TableColumn::TypeI => "type I",
            TableColumn::TypeII => "type II",
            TableColumn::Trivial => "trivial",
            TableColumn::TypeIV => "type IV",
            TableColumn::TypeV => "type V",
        }
    }

    fn admits(self, a: &VerifiedDba, s: &Skeleton) -> bool {
        let tag = match self {
            TableColumn::Trivial => return is_trivial(a),
            TableColumn::TypeI => TypeTag::I,
            TableColumn::TypeII => TypeTag::II,
            TableColumn::TypeIV => TypeTag::IV,
            TableColumn::TypeV => TypeTag::V,
        };
        classify_type(s).contains(tag)
    }

    /// Catalog aliases of the algebras the column is known to contain.
    pub fn expected(self) -> &'static [&'static str] {
        match self {
            TableColumn::TypeI => &["D2I", "D2III"],
            TableColumn::TypeII => &["D2II", "D2III"],
            TableColumn::Trivial | TableColumn::TypeIV => &["D2I", "D2II", "D2III"],
            TableColumn::TypeV => &["B2", "D2III"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryColumn {
    pub column: TableColumn,
    pub simple: Vec<String>,
    pub si: Vec<String>,
    #[serde(skip)]
    simple_forms: BTreeSet<CanonicalForm>,
    #[serde(skip)]
    si_forms: BTreeSet<CanonicalForm>,
}

impl SummaryColumn {
    pub fn simple_forms(&self) -> &BTreeSet<CanonicalForm> {
        &self.simple_forms
    }

    pub fn si_forms(&self) -> &BTreeSet<CanonicalForm> {
        &self.si_forms
    }
}

/// Simple and SI algebras with more than one element, per column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryTable {
    pub universe: usize,
    pub columns: Vec<SummaryColumn>,
}

fn catalog_names() -> BTreeMap<CanonicalForm, &'static str> {
    catalog()
        .into_iter()
        .map(|e| (canonical_form(&e.algebra), e.name))
        .collect()
}

fn catalog_form(alias: &str) -> CanonicalForm {
    let entries = catalog();
    let e = crate::catalog::find(&entries, alias).expect("alias is in the catalog");
    canonical_form(&e.algebra)
}

pub fn summary_table(algebras: &[VerifiedDba]) -> SummaryTable {
    let names = catalog_names();
    let facts: Vec<(CanonicalForm, Vec<TableColumn>, bool, bool)> = algebras
        .par_iter()
        .filter(|a| a.size() > 1)
        .map(|a| {
            let s = Skeleton::new(a);
            let con = all_congruences(a);
            let cols = TableColumn::ALL
                .into_iter()
                .filter(|c| c.admits(a, &s))
                .collect();
            (
                canonical_form(a),
                cols,
                con.is_simple(),
                con.is_subdirectly_irreducible(),
            )
        })
        .collect();
    let name = |f: &CanonicalForm| -> String {
        names.get(f).map_or_else(
            || {
                let hex: String = f.as_bytes().iter().map(|b| format!("{b:02x}")).collect();
                format!("unnamed:{hex}")
            },
            |n| n.to_string(),
        )
    };
    let columns = TableColumn::ALL
        .into_iter()
        .map(|column| {
            let mut simple_forms = BTreeSet::new();
            let mut si_forms = BTreeSet::new();
            for (form, cols, simple, si) in &facts {
                if cols.contains(&column) {
                    if *simple {
                        simple_forms.insert(form.clone());
                    }
                    if *si {
                        si_forms.insert(form.clone());
                    }
                }
            }
            let sorted_names = |set: &BTreeSet<CanonicalForm>| {
                let mut v: Vec<String> = set.iter().map(name).collect();
                v.sort();
                v
            };
            SummaryColumn {
                column,
                simple: sorted_names(&simple_forms),
                si: sorted_names(&si_forms),
                simple_forms,
                si_forms,
            }
        })
        .collect();
    SummaryTable {
        universe: algebras.len(),
        columns,
    }
}

impl SummaryTable {
    /// Columns whose simple or SI set differs from the known cells.
    pub fn mismatches(&self) -> Vec<TableColumn> {
        self.columns
            .iter()
            .filter(|c| {
                let expected: BTreeSet<CanonicalForm> = c
                    .column
                    .expected()
                    .iter()
                    .map(|a| catalog_form(a))
                    .collect();
                c.simple_forms != expected || c.si_forms != expected
            })
            .map(|c| c.column)
            .collect()
    }

    pub fn matches_expected(&self) -> bool {
        self.mismatches().is_empty()
    }
}

impl fmt::Display for SummaryTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |names: &[String]| names.join(", ");
        let mut rows: Vec<Vec<String>> = vec![std::iter::once(String::new())
            .chain(self.columns.iter().map(|c| c.column.heading().to_string()))
            .collect()];
        rows.push(
            std::iter::once("simple".to_string())
                .chain(self.columns.iter().map(|c| cell(&c.simple)))
                .collect(),
        );
        rows.push(
            std::iter::once("SI".to_string())
                .chain(self.columns.iter().map(|c| cell(&c.si)))
                .collect(),
        );
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0))
            .collect();
        for row in rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                .collect();
            writeln!(f, "{}", line.join("  ").trim_end())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_one_and_cap() {
        assert_eq!(enumerate_dbas(1).unwrap().len(), 1);
        assert!(matches!(
            enumerate_dbas(4),
            Err(DbaError::EnumerationCap { size: 4, cap: 3 })
        ));
        assert!(matches!(enumerate_dbas(0), Err(DbaError::EmptyCarrier)));
    }

    #[test]
    fn two_element_algebras_are_the_catalog_four() {
        let forms: BTreeSet<CanonicalForm> = enumerate_dbas(2).unwrap().into_iter().collect();
        let expected: BTreeSet<CanonicalForm> = ["D2I", "D2II", "D2III", "B2"]
            .iter()
            .map(|a| catalog_form(a))
            .collect();
        assert_eq!(forms, expected);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = enumerate_dbas_with(
            3,
            EnumerateOptions {
                workers: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        let many = enumerate_dbas_with(
            3,
            EnumerateOptions {
                workers: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, many);
    }
}
