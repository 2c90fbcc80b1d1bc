//! Arity-bounded function classes and the closure operators on them.
//!
//! A [`FunctionClass`] with bound `N` is a set of functions with at most `N`
//! essential variables, identified up to equivalence (permutation and
//! dummy variables). It is stored per arity `0..=N` with every equivalent
//! table present, so compositions of same-arity functions are plain
//! products of stored words.

mod closure;
mod io;
mod zero;

use std::collections::BTreeSet;

use rustc_hash::FxHashSet;

use crate::boolfn::{small, small_mask, TruthTable};
use crate::error::{Error, Result};

pub use closure::{
    clone_closure, compose_classes, equational_closure, idempotent_closure, is_composition_closed,
    is_composition_closed_by_patterns, is_composition_closed_local, iterative_closure, IdempotentClosure,
    PATTERN_CHECK_MAX_BOUND,
};
pub use io::{parse_class_file, write_class_file};
pub use zero::{lift_zero_removal, z_operator};

/// Largest supported bound.
pub const MAX_BOUND: usize = 6;

/// Largest bound at which a class can be built by testing every table.
pub const MAX_ENUMERATION_BOUND: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionClass {
    max_arity: usize,
    // levels[n]: sorted tables of arity n
    levels: Vec<Vec<u64>>,
}

pub(crate) fn check_bound(n: usize) -> Result<()> {
    if n > MAX_BOUND {
        return Err(Error::input(format!("bound {n} exceeds the maximum {MAX_BOUND}")));
    }
    Ok(())
}

/// Tables at arity `n` with the variables `x_{m+1}, ..., x_n` inessential,
/// restricted to arity `m`.
fn restrict(t: u64, n: usize, m: usize) -> Option<u64> {
    let low = small_mask(m);
    let width = 1usize << m;
    let reps = 1usize << (n - m);
    let base = t & low;
    (1..reps).all(|r| (t >> (r * width)) & low == base).then_some(base)
}

/// `t` of arity `m` with dummy variables added up to arity `n`.
pub(crate) fn extend(t: u64, m: usize, n: usize) -> u64 {
    let width = 1usize << m;
    (0..(1usize << (n - m))).fold(0u64, |acc, r| acc | (t << (r * width)))
}

impl FunctionClass {
    pub fn empty(max_arity: usize) -> Result<Self> {
        check_bound(max_arity)?;
        Ok(FunctionClass { max_arity, levels: vec![Vec::new(); max_arity + 1] })
    }

    /// Builds the class from a permutation-closed set of tables at the top
    /// arity; lower levels are the restrictions of top tables with trailing
    /// dummy variables.
    pub(crate) fn from_top_level(max_arity: usize, mut top: Vec<u64>) -> Self {
        top.sort_unstable();
        top.dedup();
        let mut levels = vec![Vec::new(); max_arity + 1];
        for m in 0..max_arity {
            let mut lv: Vec<u64> = top.iter().filter_map(|&t| restrict(t, max_arity, m)).collect();
            lv.sort_unstable();
            lv.dedup();
            levels[m] = lv;
        }
        levels[max_arity] = top;
        FunctionClass { max_arity, levels }
    }

    /// Builds the class whose canonical members are `canon`, given as
    /// `(essential arity, table)` pairs.
    pub(crate) fn from_canonical(max_arity: usize, canon: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut top = Vec::new();
        for (a, t) in canon {
            debug_assert!(a <= max_arity);
            top.extend(small::expansions(a, t, max_arity));
        }
        FunctionClass::from_top_level(max_arity, top)
    }

    /// The class of all functions equivalent to one of `tables`.
    pub fn from_tables(max_arity: usize, tables: &[TruthTable]) -> Result<Self> {
        check_bound(max_arity)?;
        let mut canon = Vec::with_capacity(tables.len());
        for t in tables {
            let c = crate::boolfn::canonicalize(t);
            if c.arity() > max_arity {
                return Err(Error::input(format!(
                    "{t} has {} essential variables, more than the bound {max_arity}",
                    c.arity()
                )));
            }
            canon.push((c.arity(), c.as_u64().expect("arity at most 6")));
        }
        Ok(FunctionClass::from_canonical(max_arity, canon))
    }

    /// All functions of arity at most `max_arity` satisfying `pred`, which
    /// must be invariant under permuting and adding dummy variables.
    pub fn from_predicate(max_arity: usize, pred: impl Fn(&TruthTable) -> bool) -> Result<Self> {
        if max_arity > MAX_ENUMERATION_BOUND {
            return Err(Error::resource(format!(
                "enumerating all functions is limited to arity {MAX_ENUMERATION_BOUND}, got {max_arity}"
            )));
        }
        let n = max_arity;
        let top: Vec<u64> = (0..=small_mask(n)).filter(|&t| pred(&TruthTable::from_u64_unchecked(n, t))).collect();
        Ok(FunctionClass::from_top_level(n, top))
    }

    /// Projections of every arity `1..=max_arity` (none at arity 0).
    pub fn projections(max_arity: usize) -> Result<Self> {
        check_bound(max_arity)?;
        if max_arity == 0 {
            return FunctionClass::empty(0);
        }
        Ok(FunctionClass::from_canonical(max_arity, [(1, 0b10)]))
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// Tables of arity `n` (sorted), every equivalent variant included.
    pub fn level(&self, n: usize) -> &[u64] {
        self.levels.get(n).map_or(&[], Vec::as_slice)
    }

    pub(crate) fn top(&self) -> &[u64] {
        &self.levels[self.max_arity]
    }

    pub fn is_empty(&self) -> bool {
        self.top().is_empty()
    }

    /// Number of tables per arity `0..=max_arity`.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Whether `f`, or the function it is equivalent to, belongs to the class.
    pub fn contains(&self, f: &TruthTable) -> bool {
        if let Some(t) = f.as_u64() {
            if f.arity() <= self.max_arity {
                return self.level(f.arity()).binary_search(&t).is_ok();
            }
        }
        let c = crate::boolfn::reduce(f);
        match c.as_u64() {
            Some(t) if c.arity() <= self.max_arity => {
                let e = extend(t, c.arity(), self.max_arity);
                self.top().binary_search(&e).is_ok()
            }
            _ => false,
        }
    }

    pub(crate) fn contains_top(&self, t: u64) -> bool {
        self.top().binary_search(&t).is_ok()
    }

    /// Canonical representatives `(essential arity, table)`, sorted.
    pub(crate) fn canonical_pairs(&self) -> Vec<(usize, u64)> {
        let mut out: BTreeSet<(usize, u64)> = BTreeSet::new();
        for (n, level) in self.levels.iter().enumerate() {
            for &t in level {
                if small::reduce(t, n).0 == n {
                    out.insert(small::canonical(t, n));
                }
            }
        }
        out.into_iter().collect()
    }

    /// One table per equivalence class, with inessential variables removed.
    pub fn canonical_members(&self) -> Vec<TruthTable> {
        self.canonical_pairs().into_iter().map(|(a, t)| TruthTable::from_u64_unchecked(a, t)).collect()
    }

    pub fn canonical_count(&self) -> usize {
        self.canonical_pairs().len()
    }

    fn same_bound(&self, other: &Self) -> Result<()> {
        if self.max_arity != other.max_arity {
            return Err(Error::input(format!("bound mismatch: {} vs {}", self.max_arity, other.max_arity)));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_bound(other)?;
        Ok(self.top().iter().all(|&t| other.contains_top(t)))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_bound(other)?;
        let top = self.top().iter().copied().filter(|&t| other.contains_top(t)).collect();
        Ok(FunctionClass::from_top_level(self.max_arity, top))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_bound(other)?;
        let top = self.top().iter().chain(other.top()).copied().collect();
        Ok(FunctionClass::from_top_level(self.max_arity, top))
    }

    /// The same class at a smaller bound.
    pub fn restrict_to(&self, max_arity: usize) -> Result<Self> {
        if max_arity > self.max_arity {
            return Err(Error::input(format!("cannot raise the bound from {} to {max_arity}", self.max_arity)));
        }
        Ok(FunctionClass::from_top_level(max_arity, self.levels[max_arity].clone()))
    }

    /// Dual functions `¬f(¬x)` of every member.
    pub fn dual(&self) -> Self {
        let n = self.max_arity;
        let top =
            self.top().iter().map(|&t| TruthTable::from_u64_unchecked(n, t).dual().as_u64().expect("small")).collect();
        FunctionClass::from_top_level(n, top)
    }

    /// Whether the class is closed under taking minors within the bound.
    pub fn is_equational(&self) -> bool {
        let n = self.max_arity;
        let set: FxHashSet<u64> = self.top().iter().copied().collect();
        // identifying two variables and re-adding a dummy stays at arity n
        self.top().iter().all(|&t| {
            (1..n).all(|j| {
                (0..j).all(|i| {
                    let sigma: Vec<usize> = (0..n).map(|k| if k == j { i } else { k }).collect();
                    set.contains(&small::minor(t, &sigma, n))
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt(s: &str) -> TruthTable {
        s.parse().unwrap()
    }

    #[test]
    fn restriction_and_extension() {
        assert_eq!(extend(0b10, 1, 2), 0b1010);
        assert_eq!(restrict(0b1010, 2, 1), Some(0b10));
        assert_eq!(restrict(0b1100, 2, 1), None);
        assert_eq!(extend(1, 0, 3), 0xFF);
    }

    #[test]
    fn construction_and_membership() {
        let c = FunctionClass::from_tables(3, &[tt("2:D")]).unwrap();
        assert_eq!(c.level_sizes(), vec![0, 0, 2, 6]);
        assert!(c.contains(&tt("2:B")));
        assert!(c.contains(&tt("4:DDDD")));
        assert!(!c.contains(&tt("1:3")));
        assert_eq!(c.canonical_members(), vec![tt("2:D")]);
        assert!(!c.is_equational());
        assert!(FunctionClass::from_tables(2, &[tt("3:E8")]).is_err());
        let p = FunctionClass::projections(3).unwrap();
        assert_eq!(p.level_sizes(), vec![0, 1, 2, 3]);
        assert!(p.is_equational());
    }

    #[test]
    fn predicate_fragments() {
        let m = FunctionClass::from_predicate(2, crate::boolfn::is_monotone).unwrap();
        assert_eq!(m.level_sizes(), vec![2, 3, 6]);
        assert!(FunctionClass::from_predicate(5, |_| true).is_err());
        let all = FunctionClass::from_predicate(3, |_| true).unwrap();
        assert_eq!(all.level_sizes(), vec![2, 4, 16, 256]);
        assert!(m.is_subset(&all.restrict_to(2).unwrap()).unwrap());
        assert_eq!(m.dual(), m);
    }
}
