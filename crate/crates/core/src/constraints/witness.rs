//! Explicit outer functions realizing a `k`-ary `h` as `f(x_i ∘ x_j)` over
//! all `k²` ordered pairs `(i, j)`, for `∘` either `→` or `+`.

use crate::boolfn::{compose, TruthTable, MAX_ARITY};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HatOp {
    Implication,
    Xor,
}

impl HatOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            HatOp::Implication => !a || b,
            HatOp::Xor => a ^ b,
        }
    }
}

fn check_arity(k: usize) -> Result<()> {
    if k * k > MAX_ARITY {
        return Err(Error::input(format!("k = {k} gives an outer arity above {MAX_ARITY}")));
    }
    Ok(())
}

/// `â`: the `k²` values `a_i ∘ a_j`, pair `(i, j)` at position `i·k + j`.
pub fn hat(a: usize, k: usize, op: HatOp) -> usize {
    let mut out = 0;
    for i in 0..k {
        for j in 0..k {
            let v = op.apply((a >> i) & 1 == 1, (a >> j) & 1 == 1);
            out |= (v as usize) << (i * k + j);
        }
    }
    out
}

/// The `k²` inner functions `x_i ∘ x_j`, in the order of [`hat`].
pub fn hat_inner(k: usize, op: HatOp) -> Result<Vec<TruthTable>> {
    check_arity(k)?;
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            out.push(TruthTable::from_fn(k, |a| op.apply((a >> i) & 1 == 1, (a >> j) & 1 == 1))?);
        }
    }
    Ok(out)
}

/// `f` of arity `k²` with `f(â) = h(a)` and `f = fill` off the image of
/// the hat map, or `None` if `h` differs on two points with the same hat.
pub fn outer_witness(h: &TruthTable, op: HatOp, fill: bool) -> Result<Option<TruthTable>> {
    let k = h.arity();
    check_arity(k)?;
    let n = k * k;
    let mut values: Vec<Option<bool>> = vec![None; 1 << n];
    for a in 0..h.len() {
        let b = hat(a, k, op);
        match values[b] {
            Some(v) if v != h.bit(a) => return Ok(None),
            _ => values[b] = Some(h.bit(a)),
        }
    }
    Ok(Some(TruthTable::from_fn(n, |b| values[b].unwrap_or(fill))?))
}

/// All `k`-ary `h` that have an outer witness, each checked to satisfy
/// `h = f(x_1 ∘ x_1, ..., x_k ∘ x_k)`.
pub fn witness_compositions(k: usize, op: HatOp, fill: bool) -> Result<Vec<TruthTable>> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    if k > 3 {
        return Err(Error::resource(format!("enumerating all {k}-ary functions is limited to k ≤ 3")));
    }
    let inner = hat_inner(k, op)?;
    let mut out = Vec::new();
    for t in 0..(1u64 << (1 << k)) {
        let h = TruthTable::from_u64(k, t)?;
        if let Some(f) = outer_witness(&h, op, fill)? {
            let back = compose(&f, &inner)?;
            if back != h {
                return Err(Error::Internal(format!("outer witness for {h} composes to {back}")));
            }
            out.push(h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hat_values() {
        // a = (1, 0): 1→1, 1→0, 0→1, 0→0
        assert_eq!(hat(0b01, 2, HatOp::Implication), 0b1101);
        assert_eq!(hat(0b01, 2, HatOp::Xor), 0b0110);
        assert_eq!(hat(0, 3, HatOp::Implication), 0x1FF);
        assert_eq!(hat(0b111, 3, HatOp::Xor), 0);
    }

    #[test]
    fn implication_witnesses_are_the_constant_agreeing_functions() {
        for k in 1..=3 {
            let got = witness_compositions(k, HatOp::Implication, false).unwrap();
            let full = (1usize << k) - 1;
            let want = (0..1u64 << (1 << k))
                .map(|t| TruthTable::from_u64(k, t).unwrap())
                .filter(|h| h.bit(0) == h.bit(full))
                .count();
            assert_eq!(got.len(), want);
            assert!(got.iter().all(|h| h.bit(0) == h.bit(full)));
        }
    }

    #[test]
    fn xor_witnesses_are_reflexive() {
        let got = witness_compositions(2, HatOp::Xor, false).unwrap();
        assert!(got.iter().all(|h| (0..4).all(|a| h.bit(a) == h.bit(3 ^ a))));
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn fill_value() {
        let h: TruthTable = "2:9".parse().unwrap();
        let f0 = outer_witness(&h, HatOp::Implication, false).unwrap().unwrap();
        let f1 = outer_witness(&h, HatOp::Implication, true).unwrap().unwrap();
        assert!(f0.bit(f0.len() - 1) && f1.bit(f1.len() - 1));
        assert_eq!(f1.count_ones() - f0.count_ones(), 16 - 3);
        assert!(outer_witness(&"1:1".parse().unwrap(), HatOp::Implication, false).unwrap().is_none());
        assert!(outer_witness(&TruthTable::constant(5, true).unwrap(), HatOp::Xor, false).is_err());
    }
}
