//! Word-sized tables (arity at most 6) used by the closure machinery.

use std::sync::OnceLock;

use super::table::{small_mask, VAR_LOW};

/// Projection `x_{var+1}` at arity `n`.
#[inline]
pub(crate) fn var(n: usize, v: usize) -> u64 {
    (!VAR_LOW[v]) & small_mask(n)
}

/// `g(x_1..x_m) = f(x_{sigma[0]+1}, ..., x_{sigma[n-1]+1})`, 0-based `sigma`.
pub(crate) fn minor(t: u64, sigma: &[usize], m: usize) -> u64 {
    let mut g = 0u64;
    for i in 0..(1usize << m) {
        let mut b = 0usize;
        for (j, &s) in sigma.iter().enumerate() {
            b |= ((i >> s) & 1) << j;
        }
        g |= ((t >> b) & 1) << i;
    }
    g
}

#[inline]
pub(crate) fn is_essential(t: u64, v: usize) -> bool {
    ((t >> (1 << v)) ^ t) & VAR_LOW[v] != 0
}

/// Drops inessential variables, keeping the relative order of the rest.
pub(crate) fn reduce(t: u64, n: usize) -> (usize, u64) {
    let ess: Vec<usize> = (0..n).filter(|&v| is_essential(t, v)).collect();
    if ess.len() == n {
        return (n, t);
    }
    // g(y) = f(x) where x_{ess[p]} = y_p and the other x are 0.
    let m = ess.len();
    let mut g = 0u64;
    for i in 0..(1usize << m) {
        let mut b = 0usize;
        for (p, &v) in ess.iter().enumerate() {
            b |= ((i >> p) & 1) << v;
        }
        g |= ((t >> b) & 1) << i;
    }
    (m, g)
}

/// All permutations of `0..n` for `n <= 6`, as `sigma` vectors.
pub(crate) fn permutations(n: usize) -> &'static [Vec<usize>] {
    static CACHE: OnceLock<Vec<Vec<Vec<usize>>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (0..=6)
            .map(|n| {
                let mut out = Vec::new();
                let mut cur: Vec<usize> = Vec::with_capacity(n);
                let mut used = vec![false; n];
                fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
                    if cur.len() == n {
                        out.push(cur.clone());
                        return;
                    }
                    for v in 0..n {
                        if !used[v] {
                            used[v] = true;
                            cur.push(v);
                            rec(n, cur, used, out);
                            cur.pop();
                            used[v] = false;
                        }
                    }
                }
                rec(n, &mut cur, &mut used, &mut out);
                out
            })
            .collect()
    });
    &all[n]
}

/// Injective maps `0..a -> 0..n`.
pub(crate) fn injections(a: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(a);
    let mut used = vec![false; n];
    fn rec(a: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(a, n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(a, n, &mut cur, &mut used, &mut out);
    out
}

/// Canonical representative: inessential variables removed, then the
/// permutation whose bit sequence (index 0 first) is smallest.
pub(crate) fn canonical(t: u64, n: usize) -> (usize, u64) {
    let (m, r) = reduce(t, n);
    if m <= 1 {
        return (m, r);
    }
    let mut best = r;
    let mut best_key = r.reverse_bits();
    for sigma in permutations(m) {
        let p = minor(r, sigma, m);
        let key = p.reverse_bits();
        if key < best_key {
            best = p;
            best_key = key;
        }
    }
    (m, best)
}

/// Every table at arity `n` equivalent to the canonical form `(a, t)`.
pub(crate) fn expansions(a: usize, t: u64, n: usize) -> Vec<u64> {
    debug_assert!(a <= n);
    if a == 0 {
        return vec![if t & 1 == 1 { small_mask(n) } else { 0 }];
    }
    let mut out: Vec<u64> = injections(a, n).iter().map(|iota| minor(t, iota, n)).collect();
    out.sort_unstable();
    out.dedup();
    out
}
