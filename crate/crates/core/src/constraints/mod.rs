//! Relations, P-matrices and relational constraints.
//!
//! A tuple of an `m`-ary relation is stored as a word whose bit `r` is the
//! entry in row `r + 1`, so a column of a P-matrix is one word.

mod gadgets;
mod io;
mod witness;

use std::collections::BTreeSet;

use crate::boolfn::{in_w, Depth, TruthTable};
use crate::classes::FunctionClass;
use crate::engine::{Composer, Flow};
use crate::error::{Error, Result};

pub use gadgets::{build_f, build_j, build_p, gadget_claim};
pub use io::{parse_relation_file, write_relation_file};
pub use witness::{hat, hat_inner, outer_witness, witness_compositions, HatOp};

/// Largest relation arity (tuples are single words).
pub const MAX_RELATION_ARITY: usize = 64;

/// Largest arity for relations given by complement, which are enumerated.
pub const MAX_COMPLEMENT_ARITY: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    tuples: BTreeSet<u64>,
}

fn arity_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

impl Relation {
    pub fn new(arity: usize, tuples: impl IntoIterator<Item = u64>) -> Result<Self> {
        if arity > MAX_RELATION_ARITY {
            return Err(Error::input(format!("relation arity {arity} exceeds {MAX_RELATION_ARITY}")));
        }
        let mask = arity_mask(arity);
        let tuples: BTreeSet<u64> = tuples.into_iter().collect();
        if let Some(bad) = tuples.iter().find(|&&t| t & !mask != 0) {
            return Err(Error::input(format!("tuple {bad:#x} is wider than arity {arity}")));
        }
        Ok(Relation { arity, tuples })
    }

    /// Tuples given as bit vectors, entry `i` being row `i + 1`.
    pub fn from_bits(arity: usize, tuples: &[&[bool]]) -> Result<Self> {
        let mut words = Vec::with_capacity(tuples.len());
        for t in tuples {
            if t.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: t.len() });
            }
            words.push(t.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i)));
        }
        Relation::new(arity, words)
    }

    fn complement_of(arity: usize, missing: u64) -> Result<Self> {
        if arity > MAX_COMPLEMENT_ARITY {
            return Err(Error::resource(format!(
                "complement relations are enumerated only up to arity {MAX_COMPLEMENT_ARITY}"
            )));
        }
        Relation::new(arity, (0..=arity_mask(arity)).filter(|&t| t != missing))
    }

    /// `{0,1}^m ∖ {0}`.
    pub fn nonzero(arity: usize) -> Result<Self> {
        Relation::complement_of(arity, 0)
    }

    /// `{0,1}^m ∖ {1}`.
    pub fn non_one(arity: usize) -> Result<Self> {
        Relation::complement_of(arity, arity_mask(arity))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> impl Iterator<Item = u64> + '_ {
        self.tuples.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: u64) -> bool {
        self.tuples.contains(&t)
    }

    /// Whether this is `{0,1}^m` minus exactly the tuple `missing`.
    fn is_complement_of(&self, missing: u64) -> bool {
        self.arity >= 1
            && self.arity <= MAX_COMPLEMENT_ARITY
            && self.tuples.len() as u64 == arity_mask(self.arity)
            && !self.tuples.contains(&missing)
    }
}

/// An `m × n` 0/1 matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TupleMatrix {
    rows: usize,
    columns: Vec<u64>,
}

impl TupleMatrix {
    pub fn from_columns(rows: usize, columns: Vec<u64>) -> Result<Self> {
        let mask = arity_mask(rows.min(64));
        if rows > MAX_RELATION_ARITY || columns.iter().any(|&c| c & !mask != 0) {
            return Err(Error::input("column wider than the row count"));
        }
        Ok(TupleMatrix { rows, columns })
    }

    /// Rows as bit masks over the columns (bit `j` = column `j + 1`).
    pub fn from_rows(cols: usize, rows: &[usize]) -> Result<Self> {
        if cols > 64 || rows.iter().any(|&r| cols < usize::BITS as usize && r >> cols != 0) {
            return Err(Error::input("row wider than the column count"));
        }
        let columns = (0..cols)
            .map(|j| rows.iter().enumerate().fold(0u64, |acc, (i, &r)| acc | ((((r >> j) & 1) as u64) << i)))
            .collect();
        TupleMatrix::from_columns(rows.len(), columns)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    /// Row `i` (0-based) as a table index: bit `j` is column `j + 1`.
    pub fn row(&self, i: usize) -> usize {
        self.columns.iter().enumerate().fold(0usize, |acc, (j, &c)| acc | ((((c >> i) & 1) as usize) << j))
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        (self.columns[j] >> i) & 1 == 1
    }

    pub fn is_p_matrix(&self, p: &Relation) -> bool {
        self.rows == p.arity() && self.columns.iter().all(|&c| p.contains(c))
    }

    /// `f(N)`: `f` applied to every row.
    pub fn apply(&self, f: &TruthTable) -> Result<u64> {
        if f.arity() != self.cols() {
            return Err(Error::ArityMismatch { expected: f.arity(), found: self.cols() });
        }
        Ok((0..self.rows).fold(0u64, |acc, i| acc | ((f.bit(self.row(i)) as u64) << i)))
    }
}

impl std::fmt::Display for TupleMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: String = (0..self.cols()).map(|j| if self.entry(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// A pair `(P, Q)` of relations of equal arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    p: Relation,
    q: Relation,
}

impl Constraint {
    pub fn new(p: Relation, q: Relation) -> Result<Self> {
        if p.arity() != q.arity() {
            return Err(Error::ArityMismatch { expected: p.arity(), found: q.arity() });
        }
        Ok(Constraint { p, q })
    }

    pub fn p(&self) -> &Relation {
        &self.p
    }

    pub fn q(&self) -> &Relation {
        &self.q
    }

    pub fn arity(&self) -> usize {
        self.p.arity()
    }

    /// `(Q, Q)`.
    pub fn preservation(&self) -> Constraint {
        Constraint { p: self.q.clone(), q: self.q.clone() }
    }
}

/// Which closed-form test decides a constraint, if any.
enum Shortcut {
    /// `({0,1}^m∖{0}, {0,1}^m∖{0})`: `f ∈ W^m`.
    Preserve,
    /// `({0,1}^m∖{1}, {0,1}^m∖{0})`: every at most `m` zero rows share a 1.
    CommonOne,
}

fn shortcut(c: &Constraint) -> Option<Shortcut> {
    if !c.q.is_complement_of(0) {
        return None;
    }
    if c.p == c.q {
        Some(Shortcut::Preserve)
    } else if c.p.is_complement_of(arity_mask(c.arity())) {
        Some(Shortcut::CommonOne)
    } else {
        None
    }
}

/// Zero rows of `f`, complemented if `complement`, and at most `m` of them
/// covering every column, if such rows exist.
fn covering_rows(f: &TruthTable, m: usize, complement: bool) -> Option<Vec<usize>> {
    let n = f.arity();
    let full = (1usize << n) - 1;
    let rows: Vec<usize> = f.zero_set().into_iter().map(|r| if complement { !r & full } else { r }).collect();
    fn rec(rows: &[usize], full: usize, covered: usize, budget: usize, acc: &mut Vec<usize>) -> bool {
        if covered == full && !acc.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let c = if covered == full { 0 } else { (!covered & full).trailing_zeros() };
        for &r in rows {
            if covered == full || (r >> c) & 1 == 1 {
                acc.push(r);
                if rec(rows, full, covered | r, budget - 1, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    rec(&rows, full, 0, m, &mut acc).then_some(acc)
}

/// A violating matrix for a shortcut constraint, built from covering rows.
fn shortcut_violation(f: &TruthTable, c: &Constraint, s: Shortcut) -> Result<Option<TupleMatrix>> {
    let m = c.arity();
    let complement = matches!(s, Shortcut::CommonOne);
    let full = (1usize << f.arity()) - 1;
    match covering_rows(f, m, complement) {
        None => Ok(None),
        Some(rows) => {
            let mut rows: Vec<usize> = rows.into_iter().map(|r| if complement { !r & full } else { r }).collect();
            let last = *rows.last().expect("nonempty cover");
            rows.resize(m, last);
            let matrix = TupleMatrix::from_rows(f.arity(), &rows)?;
            debug_assert!(matrix.is_p_matrix(c.p()) && !c.q().contains(matrix.apply(f)?));
            Ok(Some(matrix))
        }
    }
}

/// Number of P-matrices for an `n`-ary function, saturating.
fn matrix_count(p: usize, n: usize) -> u128 {
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(p as u128))
}

/// Enumerates every P-matrix (in lexicographic column order) and returns
/// the first one whose image is not in Q.
pub fn find_violation_by_enumeration(f: &TruthTable, c: &Constraint, max_matrices: u64) -> Result<Option<TupleMatrix>> {
    let n = f.arity();
    if c.p.is_empty() && n > 0 {
        return Ok(None);
    }
    let count = matrix_count(c.p.len(), n);
    if count > max_matrices as u128 {
        return Err(Error::resource(format!("{count} P-matrices exceed the enumeration cap of {max_matrices}")));
    }
    let m = c.arity();
    if m == 0 {
        // a single empty column type; the image is the empty tuple
        let ok = c.q.contains(0) || (c.p.is_empty() && n > 0);
        return if ok { Ok(None) } else { Ok(Some(TupleMatrix::from_columns(0, vec![0; n])?)) };
    }
    let inner: Vec<u64> = c.p.tuples().collect();
    let mut witness = None;
    Composer::new(m, &inner, 0, false).run(f, &mut |r, cols| {
        if c.q.contains(r) {
            Flow::Continue
        } else {
            witness = Some(cols.to_vec());
            Flow::Break
        }
    });
    witness.map(|cols| TupleMatrix::from_columns(m, cols)).transpose()
}

/// A P-matrix `N` with `f(N) ∉ Q`, if one exists. Constraints with a
/// closed-form test are decided from the zero set; the rest are enumerated.
pub fn find_violation(f: &TruthTable, c: &Constraint, max_matrices: u64) -> Result<Option<TupleMatrix>> {
    match shortcut(c) {
        Some(s) => shortcut_violation(f, c, s),
        None => find_violation_by_enumeration(f, c, max_matrices),
    }
}

/// `f(N) ∈ Q` for every P-matrix `N`.
pub fn satisfies(f: &TruthTable, c: &Constraint) -> Result<bool> {
    satisfies_with_cap(f, c, crate::DEFAULT_MAX_MATRICES)
}

pub fn satisfies_with_cap(f: &TruthTable, c: &Constraint, max_matrices: u64) -> Result<bool> {
    match shortcut(c) {
        Some(Shortcut::Preserve) => Ok(in_w(f, Depth::Finite(c.arity()))),
        Some(s @ Shortcut::CommonOne) => Ok(shortcut_violation(f, c, s)?.is_none()),
        None => Ok(find_violation_by_enumeration(f, c, max_matrices)?.is_none()),
    }
}

/// Satisfies both `(P, Q)` and `(Q, Q)`.
pub fn strongly_satisfies(f: &TruthTable, c: &Constraint) -> Result<bool> {
    Ok(satisfies(f, c)? && satisfies(f, &c.preservation())?)
}

/// `(P_n, Q_n)`: `P_n` is the set of columns of the matrix `O_n` whose rows
/// are all `n`-tuples, and `Q_n` holds the tables of the `n`-ary members.
pub fn canonical_constraints(k: &FunctionClass, n: usize) -> Result<Constraint> {
    if n > k.max_arity() {
        return Err(Error::input(format!("n = {n} exceeds the bound {}", k.max_arity())));
    }
    let p = Relation::new(1 << n, (0..n).map(|j| crate::boolfn::small::var(n, j)))?;
    let q = Relation::new(1 << n, k.level(n).iter().copied())?;
    Constraint::new(p, q)
}

/// The constraints of the named classes `Ω_=`, `Ω_00`, `Ω_11`, `R`, `B^2`
/// and `D^2`.
pub fn catalog_constraints() -> Vec<(&'static str, Constraint)> {
    let rel = |m: usize, t: &[u64]| Relation::new(m, t.iter().copied()).expect("valid");
    let eq = rel(2, &[0b00, 0b11]);
    vec![
        ("Ω_=", Constraint::new(rel(2, &[0b10]), eq.clone()).expect("same arity")),
        ("Ω_00", Constraint::new(rel(2, &[0b10]), rel(2, &[0b00])).expect("same arity")),
        ("Ω_11", Constraint::new(rel(2, &[0b10]), rel(2, &[0b11])).expect("same arity")),
        ("R", Constraint::new(rel(2, &[0b01, 0b10]), eq).expect("same arity")),
        (
            "B^2",
            Constraint::new(Relation::non_one(2).expect("small"), Relation::nonzero(2).expect("small"))
                .expect("same arity"),
        ),
        (
            "D^2",
            Constraint::new(Relation::nonzero(2).expect("small"), Relation::non_one(2).expect("small"))
                .expect("same arity"),
        ),
    ]
}
