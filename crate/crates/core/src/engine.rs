//! Enumeration of compositions `f(g_1, ..., g_n)` with inner functions drawn
//! from a fixed candidate list.
//!
//! Inner functions are `width`-bit words: tables over `2^N` points for
//! class composition, or `m`-bit tuples when enumerating P-matrices.
//! Substitution proceeds one outer variable at a time. After `i` choices the
//! partial composite is described by its cofactors with respect to the
//! remaining `n - i` variables, one word per assignment of those variables.
//! Two prefixes with the same cofactors have the same completions, so each
//! depth keeps a memo of cofactor vectors already expanded.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::boolfn::TruthTable;

pub(crate) enum Flow {
    Continue,
    Break,
}

type State = SmallVec<[u64; 4]>;

/// Memo entries per depth before the memo is dropped and restarted.
const MEMO_LIMIT: usize = 1 << 22;

pub(crate) struct Composer<'a> {
    n: usize,
    mask: u64,
    inner: &'a [u64],
    fresh_from: usize,
    require_fresh: bool,
    // per depth: state -> whether it was expanded under the fresh requirement
    memo: Vec<FxHashMap<State, bool>>,
    chosen: Vec<u64>,
}

impl<'a> Composer<'a> {
    /// `inner[fresh_from..]` are the fresh candidates. With `require_fresh`
    /// only compositions using at least one of them are produced.
    pub(crate) fn new(width: usize, inner: &'a [u64], fresh_from: usize, require_fresh: bool) -> Self {
        debug_assert!((1..=64).contains(&width));
        Composer {
            n: 0,
            mask: if width == 64 { u64::MAX } else { (1u64 << width) - 1 },
            inner,
            fresh_from,
            require_fresh,
            memo: Vec::new(),
            chosen: Vec::new(),
        }
    }

    /// Calls `sink(result, inner choice)` for every composition with outer
    /// `f`, skipping prefixes whose completions were already produced.
    pub(crate) fn run(&mut self, f: &TruthTable, sink: &mut impl FnMut(u64, &[u64]) -> Flow) -> Flow {
        self.n = f.arity();
        self.memo = (0..self.n).map(|_| FxHashMap::default()).collect();
        self.chosen.clear();
        if self.inner.is_empty() && self.n > 0 {
            return Flow::Continue;
        }
        let state: State = (0..f.len()).map(|y| if f.bit(y) { self.mask } else { 0 }).collect();
        self.dfs(0, &state, !self.require_fresh, sink)
    }

    fn dfs(&mut self, i: usize, state: &[u64], fresh_used: bool, sink: &mut impl FnMut(u64, &[u64]) -> Flow) -> Flow {
        if i == self.n {
            if !fresh_used {
                return Flow::Continue;
            }
            return sink(state[0], &self.chosen);
        }
        let need_fresh = !fresh_used;
        let memo = &mut self.memo[i];
        match memo.get(state) {
            Some(false) => return Flow::Continue,
            Some(true) if need_fresh => return Flow::Continue,
            _ => {
                if memo.len() >= MEMO_LIMIT {
                    memo.clear();
                }
                memo.insert(State::from_slice(state), need_fresh);
            }
        }
        let half = state.len() / 2;
        // If the current variable no longer matters, one candidate suffices,
        // preferring a fresh one when a fresh choice is still owed.
        let irrelevant = (0..half).all(|y| state[2 * y] == state[2 * y + 1]);
        let last = i + 1 == self.n;
        let start = if last && need_fresh { self.fresh_from } else { 0 };
        let mut next: State = SmallVec::from_elem(0, half);
        let candidates = start..self.inner.len();
        let candidates: Vec<usize> = if irrelevant {
            let pick = if need_fresh && self.fresh_from < self.inner.len() { self.fresh_from } else { start };
            if pick < self.inner.len() {
                vec![pick]
            } else {
                vec![]
            }
        } else {
            candidates.collect()
        };
        for idx in candidates {
            let g = self.inner[idx];
            for y in 0..half {
                let (lo, hi) = (state[2 * y], state[2 * y + 1]);
                next[y] = (g & hi) | (!g & lo & self.mask);
            }
            self.chosen.push(g);
            let flow = self.dfs(i + 1, &next, fresh_used || idx >= self.fresh_from, sink);
            self.chosen.pop();
            if let Flow::Break = flow {
                return Flow::Break;
            }
        }
        Flow::Continue
    }
}

/// Set of words of a fixed width: a bitmap up to 16 bits, hashed beyond.
pub(crate) enum WordSet {
    Bits(Vec<u64>),
    Hash(rustc_hash::FxHashSet<u64>),
}

impl WordSet {
    pub(crate) fn new(width: usize) -> Self {
        if width <= 16 {
            WordSet::Bits(vec![0; (1usize << width).div_ceil(64)])
        } else {
            WordSet::Hash(Default::default())
        }
    }

    /// Returns whether `w` was newly inserted.
    pub(crate) fn insert(&mut self, w: u64) -> bool {
        match self {
            WordSet::Bits(b) => {
                let (i, s) = ((w / 64) as usize, w % 64);
                let fresh = (b[i] >> s) & 1 == 0;
                b[i] |= 1 << s;
                fresh
            }
            WordSet::Hash(h) => h.insert(w),
        }
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, w: u64) -> bool {
        match self {
            WordSet::Bits(b) => (b[(w / 64) as usize] >> (w % 64)) & 1 == 1,
            WordSet::Hash(h) => h.contains(&w),
        }
    }

    pub(crate) fn to_sorted_vec(&self) -> Vec<u64> {
        match self {
            WordSet::Bits(b) => {
                let mut out = Vec::new();
                for (i, &word) in b.iter().enumerate() {
                    let mut w = word;
                    while w != 0 {
                        let s = w.trailing_zeros() as u64;
                        out.push(i as u64 * 64 + s);
                        w &= w - 1;
                    }
                }
                out
            }
            WordSet::Hash(h) => {
                let mut v: Vec<u64> = h.iter().copied().collect();
                v.sort_unstable();
                v
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::compose;

    fn all_compositions(f: &TruthTable, n_inner: usize, inner: &[u64]) -> Vec<u64> {
        let mut out = Vec::new();
        let mut idx = vec![0usize; f.arity()];
        loop {
            let gs: Vec<TruthTable> = idx.iter().map(|&i| TruthTable::from_u64(n_inner, inner[i]).unwrap()).collect();
            out.push(compose(f, &gs).unwrap().as_u64().unwrap());
            let mut p = 0;
            loop {
                if p == idx.len() {
                    out.sort_unstable();
                    out.dedup();
                    return out;
                }
                idx[p] += 1;
                if idx[p] < inner.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        let inner: Vec<u64> = vec![0xA, 0xC, 0xD, 0x6, 0x8];
        for f in ["2:D", "3:E8", "3:96", "3:B2", "2:6"] {
            let f: TruthTable = f.parse().unwrap();
            let mut got = Vec::new();
            Composer::new(4, &inner, 0, false).run(&f, &mut |r, _| {
                got.push(r);
                Flow::Continue
            });
            got.sort_unstable();
            got.dedup();
            assert_eq!(got, all_compositions(&f, 2, &inner), "outer {f}");
        }
    }

    #[test]
    fn fresh_requirement() {
        // with only the last candidate fresh, every result must use it
        let inner: Vec<u64> = vec![0xA, 0xC, 0x6];
        let f: TruthTable = "2:D".parse().unwrap();
        let mut got = Vec::new();
        Composer::new(4, &inner, 2, true).run(&f, &mut |r, gs| {
            assert!(gs.contains(&0x6));
            got.push(r);
            Flow::Continue
        });
        got.sort_unstable();
        got.dedup();
        // x->(x+y), y->(x+y), (x+y)->x, (x+y)->y, (x+y)->(x+y)
        let mut want: Vec<u64> = [(0xA, 0x6), (0xC, 0x6), (0x6, 0xA), (0x6, 0xC), (0x6, 0x6)]
            .iter()
            .map(|&(a, b): &(u64, u64)| (!a | b) & 0xF)
            .collect();
        want.sort_unstable();
        want.dedup();
        assert_eq!(got, want);
    }

    #[test]
    fn word_sets() {
        for width in [4, 32] {
            let mut s = WordSet::new(width);
            assert!(s.insert(9));
            assert!(!s.insert(9));
            assert!(s.insert(3));
            assert!(s.contains(3) && !s.contains(4));
            assert_eq!(s.to_sorted_vec(), vec![3, 9]);
        }
    }
}
