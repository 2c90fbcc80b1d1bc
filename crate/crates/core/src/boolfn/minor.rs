use std::collections::{BTreeSet, VecDeque};

use rustc_hash::FxHashSet;

use super::small;
use super::table::TruthTable;
use crate::error::{Error, Result};

/// A variable substitution `sigma: {1..n} -> {1..m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorMap {
    target_arity: usize,
    map: Vec<usize>,
}

impl MinorMap {
    /// `map[j-1] = sigma(j)`, all entries 1-based and at most `target_arity`.
    pub fn new(target_arity: usize, map: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = map.iter().find(|&&s| s == 0 || s > target_arity) {
            return Err(Error::input(format!("minor map entry {bad} outside 1..={target_arity}")));
        }
        Ok(MinorMap { target_arity, map })
    }

    pub fn source_arity(&self) -> usize {
        self.map.len()
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `tau ∘ self`: first substitute by `self`, then by `tau`.
    pub fn then(&self, tau: &MinorMap) -> Result<MinorMap> {
        if tau.source_arity() != self.target_arity {
            return Err(Error::ArityMismatch { expected: self.target_arity, found: tau.source_arity() });
        }
        MinorMap::new(tau.target_arity, self.map.iter().map(|&s| tau.map[s - 1]).collect())
    }
}

/// `g(x_1..x_m) = f(x_{sigma(1)}, ..., x_{sigma(n)})`.
pub fn apply_minor(f: &TruthTable, sigma: &MinorMap) -> Result<TruthTable> {
    if sigma.source_arity() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), found: sigma.source_arity() });
    }
    let m = sigma.target_arity();
    TruthTable::from_fn(m, |i| {
        let b = sigma.map.iter().enumerate().fold(0usize, |acc, (j, &s)| acc | (((i >> (s - 1)) & 1) << j));
        f.bit(b)
    })
}

/// The unary diagonal `x ↦ f(x, ..., x)`.
pub fn diagonal(f: &TruthTable) -> TruthTable {
    let last = f.len() - 1;
    TruthTable::from_fn(1, |i| f.bit(if i == 1 { last } else { 0 })).expect("unary table")
}

/// Keeps the essential variables of `f`, in order.
pub fn reduce(f: &TruthTable) -> TruthTable {
    if let Some(t) = f.as_u64() {
        let (m, r) = small::reduce(t, f.arity());
        return TruthTable::from_u64_unchecked(m, r);
    }
    let ess = f.essential_vars();
    if ess.len() == f.arity() {
        return f.clone();
    }
    TruthTable::from_fn(ess.len(), |i| {
        let b = ess.iter().enumerate().fold(0usize, |acc, (p, &v)| acc | (((i >> p) & 1) << v));
        f.bit(b)
    })
    .expect("smaller arity")
}

/// Canonical representative of the equivalence class of `f`.
///
/// Inessential variables are deleted, then the permutation of the remaining
/// ones with the lexicographically smallest bit sequence (index 0 first) is
/// chosen. `f ≡ g` iff their canonical forms are identical.
pub fn canonicalize(f: &TruthTable) -> TruthTable {
    if let Some(t) = f.as_u64() {
        let (m, c) = small::canonical(t, f.arity());
        return TruthTable::from_u64_unchecked(m, c);
    }
    canonicalize_search(&reduce(f))
}

/// Branch-and-bound search for the lexicographically least permutation of a
/// table whose variables are all essential. Variables that are pairwise
/// interchangeable are only tried in ascending order.
pub(crate) fn canonicalize_search(f: &TruthTable) -> TruthTable {
    let n = f.arity();
    if n <= 1 {
        return f.clone();
    }
    // Group interchangeable variables.
    let mut group: Vec<usize> = (0..n).collect();
    for i in 0..n {
        if group[i] != i {
            continue;
        }
        for j in (i + 1)..n {
            if group[j] == j && swappable(f, i, j) {
                group[j] = i;
            }
        }
    }

    struct Search<'a> {
        f: &'a TruthTable,
        n: usize,
        group: Vec<usize>,
        order: Vec<usize>,
        used: Vec<bool>,
        cur: Vec<u8>,
        // old index for each new index computed so far
        old: Vec<usize>,
        best: Option<Vec<u8>>,
    }

    impl Search<'_> {
        fn run(&mut self, p: usize) {
            if p == self.n {
                if self.best.as_ref().is_none_or(|b| self.cur < *b) {
                    self.best = Some(self.cur.clone());
                }
                return;
            }
            let lo = 1usize << p;
            for v in 0..self.n {
                if self.used[v] {
                    continue;
                }
                let g = self.group[v];
                if (g..v).any(|u| self.group[u] == g && !self.used[u]) {
                    continue;
                }
                for t in 0..lo {
                    let o = self.old[t] | (1 << v);
                    self.old[lo + t] = o;
                    self.cur[lo + t] = self.f.bit(o) as u8;
                }
                let prefix = 2 * lo;
                if let Some(best) = &self.best {
                    if self.cur[..prefix] > best[..prefix] {
                        continue;
                    }
                }
                self.used[v] = true;
                self.order.push(v);
                self.run(p + 1);
                self.order.pop();
                self.used[v] = false;
            }
        }
    }

    let len = f.len();
    let mut s = Search {
        f,
        n,
        group,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        cur: vec![0; len],
        old: vec![0; len],
        best: None,
    };
    s.cur[0] = f.bit(0) as u8;
    s.run(0);
    let best = s.best.expect("at least one ordering");
    TruthTable::from_fn(n, |i| best[i] == 1).expect("same arity")
}

fn swappable(f: &TruthTable, i: usize, j: usize) -> bool {
    (0..f.len()).all(|a| {
        let bi = (a >> i) & 1;
        let bj = (a >> j) & 1;
        if bi == bj {
            return true;
        }
        let b = a ^ (1 << i) ^ (1 << j);
        f.bit(a) == f.bit(b)
    })
}

/// Identifies `x_{j+1}` with `x_{i+1}` (`i < j`, 0-based), giving arity `n-1`.
pub(crate) fn identify(f: &TruthTable, i: usize, j: usize) -> TruthTable {
    debug_assert!(i < j && j < f.arity());
    let sigma: Vec<usize> = (0..f.arity())
        .map(|k| match k.cmp(&j) {
            std::cmp::Ordering::Less => k + 1,
            std::cmp::Ordering::Equal => i + 1,
            std::cmp::Ordering::Greater => k,
        })
        .collect();
    let map = MinorMap::new(f.arity() - 1, sigma).expect("valid identification");
    apply_minor(f, &map).expect("arity matches")
}

/// Cap on distinct intermediate functions visited by [`minors`].
pub const MINOR_SEARCH_LIMIT: usize = 1 << 20;

/// Canonical forms of all minors of `f` with at most `max_target_arity`
/// essential variables.
///
/// Every minor is a dummy-extension of a permuted identification minor, so
/// it suffices to walk repeated pairwise identifications.
pub fn minors(f: &TruthTable, max_target_arity: usize) -> Result<BTreeSet<TruthTable>> {
    let start = canonicalize(f);
    let mut seen: FxHashSet<TruthTable> = FxHashSet::default();
    let mut queue = VecDeque::new();
    let mut out = BTreeSet::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(g) = queue.pop_front() {
        if g.arity() <= max_target_arity {
            out.insert(g.clone());
        }
        for j in 1..g.arity() {
            for i in 0..j {
                let h = canonicalize(&identify(&g, i, j));
                if seen.insert(h.clone()) {
                    if seen.len() > MINOR_SEARCH_LIMIT {
                        return Err(Error::resource(format!(
                            "minor search of {f} exceeded {MINOR_SEARCH_LIMIT} functions"
                        )));
                    }
                    queue.push_back(h);
                }
            }
        }
    }
    Ok(out)
}

/// `f(g_1, ..., g_n)(a) = f(g_1(a), ..., g_n(a))`.
pub fn compose(f: &TruthTable, gs: &[TruthTable]) -> Result<TruthTable> {
    if gs.len() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), found: gs.len() });
    }
    let k = match gs.first() {
        Some(g) => g.arity(),
        None => {
            return Err(Error::input("composition needs at least one inner function"));
        }
    };
    if let Some(bad) = gs.iter().find(|g| g.arity() != k) {
        return Err(Error::ArityMismatch { expected: k, found: bad.arity() });
    }
    TruthTable::from_fn(k, |a| {
        let b = gs.iter().enumerate().fold(0usize, |acc, (j, g)| acc | ((g.bit(a) as usize) << j));
        f.bit(b)
    })
}
