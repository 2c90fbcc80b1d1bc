use rustc_hash::FxHashSet;

use super::{check_bound, extend, z_operator, FunctionClass};
use crate::boolfn::{minors, reduce, small, small_mask, Depth, TruthTable};
use crate::engine::{Composer, Flow, WordSet};
use crate::error::{Error, Result};

type Canon = FxHashSet<(usize, u64)>;

/// Adds every minor of the canonical function `(a, t)` with at most `bound`
/// essential variables to `out`.
fn add_minors(out: &mut Canon, a: usize, t: u64, bound: usize) {
    let mut seen: Canon = FxHashSet::default();
    let mut stack = vec![(a, t)];
    seen.insert((a, t));
    while let Some((a, t)) = stack.pop() {
        if a <= bound && !out.insert((a, t)) {
            // already present, and so are its minors
            continue;
        }
        for j in 1..a {
            for i in 0..j {
                let sigma: Vec<usize> = (0..a)
                    .map(|k| match k.cmp(&j) {
                        std::cmp::Ordering::Less => k,
                        std::cmp::Ordering::Equal => i,
                        std::cmp::Ordering::Greater => k - 1,
                    })
                    .collect();
                let c = small::canonical(small::minor(t, &sigma, a - 1), a - 1);
                if !out.contains(&c) && seen.insert(c) {
                    stack.push(c);
                }
            }
        }
    }
}

fn seed_minors(s: &[TruthTable], bound: usize) -> Result<Canon> {
    let mut out = Canon::default();
    for f in s {
        let r = reduce(f);
        match r.as_u64() {
            Some(t) => {
                let (a, c) = small::canonical(t, r.arity());
                add_minors(&mut out, a, c, bound);
            }
            None => {
                for g in minors(&r, bound)? {
                    out.insert((g.arity(), g.as_u64().expect("within bound")));
                }
            }
        }
    }
    Ok(out)
}

/// The smallest class at bound `n` containing every minor with at most `n`
/// essential variables of every input.
pub fn equational_closure(s: &[TruthTable], n: usize) -> Result<FunctionClass> {
    check_bound(n)?;
    Ok(FunctionClass::from_canonical(n, seed_minors(s, n)?))
}

fn expansions_of(canon: &[(usize, u64)], n: usize) -> Vec<u64> {
    let mut v: Vec<u64> = canon.iter().flat_map(|&(a, t)| small::expansions(a, t, n)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Compositions `A∘B` at a common bound: outer functions from `a` with at
/// most `N` variables, inner functions from `b` of a common arity.
pub fn compose_classes(a: &FunctionClass, b: &FunctionClass) -> Result<FunctionClass> {
    a.same_bound(b)?;
    let n = a.max_arity();
    let inner = b.top();
    let width = 1usize << n;
    let mut results = WordSet::new(width);
    for (ar, t) in a.canonical_pairs() {
        if ar == 0 {
            if !inner.is_empty() {
                results.insert(extend(t, 0, n));
            }
            continue;
        }
        let f = TruthTable::from_u64_unchecked(ar, t);
        Composer::new(width, inner, 0, false).run(&f, &mut |r, _| {
            results.insert(r);
            Flow::Continue
        });
    }
    Ok(FunctionClass::from_top_level(n, results.to_sorted_vec()))
}

/// Whether `K∘K ⊆ K` at the bound.
pub fn is_composition_closed(k: &FunctionClass) -> bool {
    let n = k.max_arity();
    let inner = k.top();
    let width = 1usize << n;
    for (ar, t) in k.canonical_pairs() {
        if ar == 0 {
            continue; // constants are members already
        }
        let f = TruthTable::from_u64_unchecked(ar, t);
        let flow = Composer::new(width, inner, 0, false).run(&f, &mut |r, _| {
            if k.contains_top(r) {
                Flow::Continue
            } else {
                Flow::Break
            }
        });
        if let Flow::Break = flow {
            return false;
        }
    }
    true
}

/// Whether `K∘K ⊆ K` at the bound, for a class with `Z_k K = K`.
///
/// Such a class is determined by its admissible point sets: sets of at most
/// `k` points inside the zero set of a member. A composition
/// `f(g_1, ..., g_n)` vanishes on a point set `Y` exactly when every row of
/// the matrix `(g_i(y))` is a zero of `f`. So it suffices to check, for each
/// non-admissible `Y`, that no member `f` vanishes on all rows of a matrix
/// whose columns are restrictions `g|_Y` of members.
pub fn is_composition_closed_local(k: &FunctionClass, depth: usize) -> Result<bool> {
    if depth == 0 {
        return Err(Error::input("depth must be at least 1"));
    }
    if z_operator(k, Depth::Finite(depth))? != *k {
        return Err(Error::input(format!("the class is not closed under Z_{depth}")));
    }
    let n = k.max_arity();
    let mask = small_mask(n);
    let zero_sets: Vec<u64> = k.top().iter().map(|&t| !t & mask).collect();
    let outers: Vec<TruthTable> = k
        .canonical_pairs()
        .into_iter()
        .filter(|p| p.0 > 0)
        .map(|(a, t)| TruthTable::from_u64_unchecked(a, t))
        .collect();
    let points = 1usize << n;
    let mut closed = true;
    let mut chosen: Vec<usize> = Vec::new();
    for_each_subset(points, depth, &mut chosen, &mut |ys: &[usize]| {
        let y: u64 = ys.iter().map(|&p| 1u64 << p).sum();
        if zero_sets.iter().any(|&z| z & y == y) {
            return Flow::Continue;
        }
        let mut cols: Vec<u64> = k
            .top()
            .iter()
            .map(|&t| ys.iter().enumerate().fold(0u64, |acc, (j, &p)| acc | (((t >> p) & 1) << j)))
            .collect();
        cols.sort_unstable();
        cols.dedup();
        for f in &outers {
            let flow = Composer::new(ys.len(), &cols, 0, false).run(f, &mut |r, _| {
                if r == 0 {
                    Flow::Break
                } else {
                    Flow::Continue
                }
            });
            if let Flow::Break = flow {
                closed = false;
                return Flow::Break;
            }
        }
        Flow::Continue
    });
    Ok(closed)
}

/// Largest bound at which [`is_composition_closed_by_patterns`] checks
/// locality (by running over every top-level table).
pub const PATTERN_CHECK_MAX_BOUND: usize = 4;

/// Restriction of the table `t` to the points `ys`, bit `j` for `ys[j]`.
fn restrict(t: u64, ys: &[usize]) -> u64 {
    ys.iter().enumerate().fold(0u64, |acc, (j, &p)| acc | (((t >> p) & 1) << j))
}

/// Whether `K∘K ⊆ K` at the bound, for a class whose top level is decided
/// by restrictions to point sets of at most `d` points: `f ∈ K` iff `f|_Y`
/// agrees with some member on `Y` for every such `Y`. Then a composition
/// lies in `K` iff on each `Y` it maps allowed patterns to an allowed
/// pattern, which only needs columns of width `|Y|`.
///
/// Returns `None` when the class is not `d`-local at the bound or the bound
/// exceeds [`PATTERN_CHECK_MAX_BOUND`]. The answer otherwise equals
/// [`is_composition_closed`].
pub fn is_composition_closed_by_patterns(k: &FunctionClass, d: usize) -> Option<bool> {
    let n = k.max_arity();
    if n > PATTERN_CHECK_MAX_BOUND || d == 0 || d > 4 {
        return None;
    }
    let points = 1usize << n;
    // allowed patterns per point set, as a bitmask over patterns
    let mut sets: Vec<(Vec<usize>, u16)> = Vec::new();
    let mut chosen = Vec::new();
    for_each_subset(points, d, &mut chosen, &mut |ys: &[usize]| {
        let allowed = k.top().iter().fold(0u16, |acc, &t| acc | (1 << restrict(t, ys)));
        sets.push((ys.to_vec(), allowed));
        Flow::Continue
    });
    let local = |t: u64| sets.iter().all(|(ys, allowed)| (allowed >> restrict(t, ys)) & 1 == 1);
    if (0..=small_mask(n)).any(|t| k.contains_top(t) != local(t)) {
        return None;
    }
    let mut distinct: Vec<(usize, u16)> = sets.iter().map(|(ys, a)| (ys.len(), *a)).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let outers: Vec<TruthTable> = k
        .canonical_pairs()
        .into_iter()
        .filter(|p| p.0 > 0)
        .map(|(a, t)| TruthTable::from_u64_unchecked(a, t))
        .collect();
    for (size, allowed) in distinct {
        let cols: Vec<u64> = (0..1u64 << size).filter(|&c| (allowed >> c) & 1 == 1).collect();
        for f in &outers {
            let flow = Composer::new(size, &cols, 0, false).run(f, &mut |r, _| {
                if (allowed >> r) & 1 == 1 {
                    Flow::Continue
                } else {
                    Flow::Break
                }
            });
            if let Flow::Break = flow {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Calls `visit` on every nonempty subset of `0..points` with at most
/// `size` elements, in increasing element order.
fn for_each_subset(
    points: usize,
    size: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Flow,
) -> Flow {
    let from = chosen.last().map_or(0, |&p| p + 1);
    for p in from..points {
        chosen.push(p);
        let mut flow = visit(chosen);
        if let Flow::Continue = flow {
            if chosen.len() < size {
                flow = for_each_subset(points, size, chosen, visit);
            }
        }
        chosen.pop();
        if let Flow::Break = flow {
            return Flow::Break;
        }
    }
    Flow::Continue
}

/// Functions of arity `level` in the clone generated by `s`.
///
/// This is the closure of the projections under the generators used as
/// outer functions, so generators of any arity up to the table limit
/// contribute exactly.
fn clone_level(s: &[TruthTable], level: usize) -> Vec<u64> {
    let width = 1usize << level;
    let mask = small_mask(level);
    let mut gens: Vec<TruthTable> = s.iter().map(reduce).collect();
    gens.sort();
    gens.dedup();
    let mut known = WordSet::new(width);
    let mut all: Vec<u64> = (0..level).map(|v| small::var(level, v)).collect();
    for &p in &all {
        known.insert(p);
    }
    for g in &gens {
        if let Some(c) = g.is_constant().filter(|_| g.arity() == 0) {
            let t = if c { mask } else { 0 };
            if known.insert(t) {
                all.push(t);
            }
        }
    }
    let mut fresh_from = 0;
    let mut first = true;
    loop {
        let mut new = Vec::new();
        for g in gens.iter().filter(|g| g.arity() > 0) {
            Composer::new(width, &all, fresh_from, !first).run(g, &mut |r, _| {
                if known.insert(r) {
                    new.push(r);
                }
                Flow::Continue
            });
        }
        if new.is_empty() {
            break;
        }
        first = false;
        fresh_from = all.len();
        all.extend(new);
    }
    all
}

/// The clone generated by `s`, restricted to arity at most `n`.
pub fn clone_closure(s: &[TruthTable], n: usize) -> Result<FunctionClass> {
    check_bound(n)?;
    let level = n.max(1);
    let c = FunctionClass::from_top_level(level, clone_level(s, level));
    c.restrict_to(n)
}

/// Least fixpoint of `K ↦ E(K ∪ K∘(K ∪ extra))` starting from `E(s)`.
fn composition_fixpoint(s: &[TruthTable], n: usize, with_projections: bool) -> Result<FunctionClass> {
    check_bound(n)?;
    let level = n.max(1);
    let width = 1usize << level;
    let mut canon = seed_minors(s, level)?;
    let mut outer_old: Vec<(usize, u64)> = Vec::new();
    let mut outer_new: Vec<(usize, u64)> = canon.iter().copied().collect();
    outer_new.sort_unstable();
    let projections: Vec<u64> =
        if with_projections { (0..level).map(|v| small::var(level, v)).collect() } else { Vec::new() };
    let mut inner_old: Vec<u64> = projections.clone();
    let mut inner_set: FxHashSet<u64> = inner_old.iter().copied().collect();
    loop {
        let fresh: Vec<u64> = expansions_of(&outer_new, level).into_iter().filter(|t| !inner_set.contains(t)).collect();
        let fresh_from = inner_old.len();
        let mut inner = inner_old.clone();
        inner.extend(&fresh);
        let mut results = WordSet::new(width);
        let mut found: Vec<u64> = Vec::new();
        let mut sink = |r: u64, _: &[u64]| {
            if results.insert(r) {
                found.push(r);
            }
            Flow::Continue
        };
        for &(a, t) in outer_new.iter().filter(|p| p.0 > 0) {
            let f = TruthTable::from_u64_unchecked(a, t);
            Composer::new(width, &inner, 0, false).run(&f, &mut sink);
        }
        if fresh_from < inner.len() {
            for &(a, t) in outer_old.iter().filter(|p| p.0 > 0) {
                let f = TruthTable::from_u64_unchecked(a, t);
                Composer::new(width, &inner, fresh_from, true).run(&f, &mut sink);
            }
        }
        let before: Canon = canon.clone();
        for r in found {
            let (a, c) = small::canonical(r, level);
            if !canon.contains(&(a, c)) {
                add_minors(&mut canon, a, c, level);
            }
        }
        outer_old.extend(outer_new.iter().copied());
        inner_set.extend(fresh.iter().copied());
        inner_old = inner;
        let mut added: Vec<(usize, u64)> = canon.difference(&before).copied().collect();
        if added.is_empty() {
            break;
        }
        added.sort_unstable();
        outer_new = added;
    }
    FunctionClass::from_canonical(level, canon).restrict_to(n)
}

/// Result of [`idempotent_closure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentClosure {
    pub class: FunctionClass,
    /// Whether the fixpoint agrees with `[S]∘E(S)` computed at the same
    /// bound.
    pub exact: bool,
}

/// Least fixpoint of `K ↦ E(K ∪ K∘K)` from `E(s)`, cross-checked against
/// the composition of the generated clone with `E(s)`.
pub fn idempotent_closure(s: &[TruthTable], n: usize) -> Result<IdempotentClosure> {
    let class = composition_fixpoint(s, n, false)?;
    let alt = compose_classes(&clone_closure(s, n)?, &equational_closure(s, n)?)?;
    let exact = alt == class;
    Ok(IdempotentClosure { class, exact })
}

/// Least fixpoint of `K ↦ E(K ∪ K∘(K ∪ projections))` from `E(s)`.
pub fn iterative_closure(s: &[TruthTable], n: usize) -> Result<FunctionClass> {
    composition_fixpoint(s, n, true)
}
