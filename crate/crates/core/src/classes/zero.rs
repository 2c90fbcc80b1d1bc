//! Operators acting on zero sets.

use super::FunctionClass;
use crate::boolfn::{apply_minor, encode, small_mask, Depth, MinorMap, TruthTable};
use crate::error::{Error, Result};

/// Output cap for [`z_operator`] at bounds where the result cannot be
/// bounded by full enumeration.
pub const Z_OUTPUT_LIMIT: usize = 1 << 24;

enum Admissible {
    // bit H set iff the point set H lies in some member's zero set
    Bitmap(Vec<u64>),
    Maximal(Vec<u64>),
}

impl Admissible {
    fn new(k: &FunctionClass) -> Self {
        let n = k.max_arity();
        let mask = small_mask(n);
        let zero_sets = k.top().iter().map(|&t| !t & mask);
        if n <= 4 {
            let size = 1usize << (1usize << n);
            let mut bits = vec![0u64; size.div_ceil(64)];
            for z in zero_sets {
                bits[(z / 64) as usize] |= 1 << (z % 64);
            }
            // down-closure, one point at a time
            for p in 0..(1usize << n) {
                for h in 0..size {
                    if (h >> p) & 1 == 1 && (bits[h / 64] >> (h % 64)) & 1 == 1 {
                        let l = h ^ (1 << p);
                        bits[l / 64] |= 1 << (l % 64);
                    }
                }
            }
            Admissible::Bitmap(bits)
        } else {
            let mut sets: Vec<u64> = zero_sets.collect();
            sets.sort_unstable_by_key(|s| std::cmp::Reverse(s.count_ones()));
            sets.dedup();
            let mut maximal: Vec<u64> = Vec::new();
            for s in sets {
                if !maximal.iter().any(|&m| m & s == s) {
                    maximal.push(s);
                }
            }
            Admissible::Maximal(maximal)
        }
    }

    fn contains(&self, h: u64) -> bool {
        match self {
            Admissible::Bitmap(bits) => (bits[(h / 64) as usize] >> (h % 64)) & 1 == 1,
            Admissible::Maximal(sets) => sets.iter().any(|&m| m & h == h),
        }
    }
}

/// Whether every subset of `h` with at most `size` points, joined with `p`,
/// is admissible.
fn subsets_ok(adm: &Admissible, h: u64, p: u64, size: usize) -> bool {
    fn rec(adm: &Admissible, rest: u64, acc: u64, size: usize) -> bool {
        if !adm.contains(acc) {
            return false;
        }
        if size == 0 {
            return true;
        }
        let mut r = rest;
        while r != 0 {
            let bit = r & r.wrapping_neg();
            r &= r - 1;
            if !rec(adm, r, acc | bit, size - 1) {
                return false;
            }
        }
        true
    }
    rec(adm, h, p, size)
}

/// `Z_k K` (or `Z_∞ K`) at the bound of `K`: all functions each of whose
/// at most `k`-point zero subsets lies in the zero set of a same-arity
/// member. `K` is expected to be equational, which makes the result
/// consistent across arities.
pub fn z_operator(k: &FunctionClass, depth: Depth) -> Result<FunctionClass> {
    let n = k.max_arity();
    if k.is_empty() {
        return FunctionClass::empty(n);
    }
    let adm = Admissible::new(k);
    let points = 1usize << n;
    let mask = small_mask(n);
    let mut out: Vec<u64> = Vec::new();
    // Membership is inherited by subsets of the zero set, so extending zero
    // sets point by point in increasing order reaches every member.
    let mut stack: Vec<(u64, usize)> = vec![(0, 0)];
    while let Some((h, from)) = stack.pop() {
        out.push(!h & mask);
        if out.len() > Z_OUTPUT_LIMIT {
            return Err(Error::resource(format!("Z operator output exceeds {Z_OUTPUT_LIMIT} tables")));
        }
        for p in from..points {
            let bit = 1u64 << p;
            let ok = match depth {
                Depth::Infinite => adm.contains(h | bit),
                Depth::Finite(kk) => subsets_ok(&adm, h, bit, kk.saturating_sub(1)),
            };
            if ok {
                stack.push((h | bit, p + 1));
            }
        }
    }
    Ok(FunctionClass::from_top_level(n, out))
}

/// For `g` with `g(a) = 0`, builds
/// `(⋁_{i ∈ X, j ∈ Y} g(x_i,...,x_i, y_j,...,y_j)) → g`, where `X` and `Y`
/// are the positions where `a` is 0 and 1 and the inner minor puts `x_i`
/// on all of `X` and `y_j` on all of `Y`. The result equals `g` except
/// that `a` is no longer a zero; this is checked against a direct edit.
///
/// Requires `g(0,...,0) = g(1,...,1) = g(¬a) = 1`.
pub fn lift_zero_removal(g: &TruthTable, a: &[bool]) -> Result<TruthTable> {
    let n = g.arity();
    if a.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: a.len() });
    }
    let idx = encode(a);
    let full = g.len() - 1;
    if g.bit(idx) {
        return Err(Error::input(format!("{g} is not 0 at the given point")));
    }
    if !g.bit(0) || !g.bit(full) || !g.bit(full ^ idx) {
        return Err(Error::input(format!(
            "{g} must be 1 at the all-0 point, the all-1 point and the complement of the given point"
        )));
    }
    let xs: Vec<usize> = (0..n).filter(|&i| !a[i]).collect();
    let ys: Vec<usize> = (0..n).filter(|&i| a[i]).collect();
    let mut disjunction = TruthTable::constant(n, false)?;
    for &i in &xs {
        for &j in &ys {
            let sigma: Vec<usize> = (0..n).map(|p| if a[p] { j + 1 } else { i + 1 }).collect();
            let minor = apply_minor(g, &MinorMap::new(n, sigma)?)?;
            disjunction = disjunction.or(&minor)?;
        }
    }
    let lifted = disjunction.implies(g)?;
    let mut expected = g.clone();
    expected.set_bit(idx, true);
    if lifted != expected {
        return Err(Error::Internal(format!("zero removal on {g} produced {lifted}, expected {expected}")));
    }
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{compose, decode, in_b, in_w};
    use crate::classes::equational_closure;

    fn tt(s: &str) -> TruthTable {
        s.parse().unwrap()
    }

    #[test]
    fn zero_removal_on_w2() {
        let w2 = tt("4:FDD7");
        let f = lift_zero_removal(&w2, &[true, true, false, false]).unwrap();
        assert_eq!(f.zero_set(), vec![5, 9]);
        // the same function as an explicit composition with
        // h(z1..z4, w) = (z1 | z2 | z3 | z4) -> w
        let h = TruthTable::from_fn(5, |i| i & 0xF == 0 || i & 0x10 != 0).unwrap();
        let minor = |i: usize, j: usize| {
            let sigma = (0..4).map(|p| if p < 2 { j } else { i }).collect();
            apply_minor(&w2, &MinorMap::new(4, sigma).unwrap()).unwrap()
        };
        let inner = vec![minor(3, 1), minor(3, 2), minor(4, 1), minor(4, 2), w2.clone()];
        assert_eq!(compose(&h, &inner).unwrap(), f);
    }

    #[test]
    fn zero_removal_edge_cases() {
        let single = tt("2:D");
        assert_eq!(lift_zero_removal(&single, &[true, false]).unwrap(), tt("2:F"));
        assert!(lift_zero_removal(&single, &[false, true]).is_err());
        assert!(lift_zero_removal(&tt("2:6"), &[false, false]).is_err());
        assert!(lift_zero_removal(&single, &[true]).is_err());
        for t in 0..=0xFFFFu64 {
            let g = TruthTable::from_u64(4, t).unwrap();
            for a in g.zero_set() {
                if let Ok(f) = lift_zero_removal(&g, &decode(a, 4)) {
                    let mut want = g.zero_set();
                    want.retain(|&z| z != a);
                    assert_eq!(f.zero_set(), want);
                }
            }
        }
    }

    #[test]
    fn z_operator_examples() {
        let e = equational_closure(&[tt("2:D")], 2).unwrap();
        let z = z_operator(&e, Depth::Infinite).unwrap();
        assert!(z.contains(&tt("2:F")));
        assert!(z.contains(&tt("2:D")));
        assert!(!z.contains(&tt("2:E")));
        // zero sets inside {1} x {0} x {0,1}^2 are covered by g_4
        let e4 = equational_closure(&[tt("2:D")], 4).unwrap();
        let z4 = z_operator(&e4, Depth::Infinite).unwrap();
        for sub in 0..16u64 {
            let zeros: Vec<usize> =
                [1usize, 5, 9, 13].iter().enumerate().filter(|(b, _)| (sub >> b) & 1 == 1).map(|(_, &p)| p).collect();
            let f = TruthTable::from_fn(4, |i| !zeros.contains(&i)).unwrap();
            assert!(z4.contains(&f));
        }
        assert!(z_operator(&FunctionClass::empty(3).unwrap(), Depth::Finite(2)).unwrap().is_empty());
    }

    #[test]
    fn z_fixes_b_fragments() {
        for k in [2, 3] {
            let b = FunctionClass::from_predicate(4, |f| in_b(f, Depth::Finite(k))).unwrap();
            assert_eq!(z_operator(&b, Depth::Finite(k)).unwrap(), b);
            let w = FunctionClass::from_predicate(4, |f| in_w(f, Depth::Finite(k))).unwrap();
            assert_eq!(z_operator(&w, Depth::Finite(k)).unwrap(), w);
        }
    }
}
