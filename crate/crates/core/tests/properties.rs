use postlat::boolfn::{anf, apply_minor, canonicalize, compose, in_b, in_w, predicate, w_depth, ClassName, Depth};
use postlat::classes::{equational_closure, z_operator};
use postlat::constraints::{find_violation_by_enumeration, satisfies};
use postlat::{Constraint, Expr, MinorMap, Relation, TruthTable};
use proptest::prelude::*;

fn table(max_arity: usize) -> impl Strategy<Value = TruthTable> {
    (0..=max_arity).prop_flat_map(|n| {
        let mask = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        any::<u64>().prop_map(move |t| TruthTable::from_u64(n, t & mask).unwrap())
    })
}

fn nonconstant_arity(lo: usize, hi: usize) -> impl Strategy<Value = TruthTable> {
    (lo..=hi).prop_flat_map(|n| {
        let mask = (1u64 << (1 << n)) - 1;
        any::<u64>().prop_map(move |t| TruthTable::from_u64(n, t & mask).unwrap())
    })
}

fn minor_map(source: usize, target: usize) -> impl Strategy<Value = MinorMap> {
    proptest::collection::vec(1..=target, source).prop_map(move |m| MinorMap::new(target, m).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

/// Whether every `k` zero rows (with repetition) leave some column all 0.
fn w_brute(f: &TruthTable, k: usize) -> bool {
    let n = f.arity();
    let full = (1usize << n) - 1;
    let zeros = f.zero_set();
    fn rec(zeros: &[usize], full: usize, acc: usize, left: usize) -> bool {
        if acc == full {
            return false;
        }
        left == 0 || zeros.iter().all(|&z| rec(zeros, full, acc | z, left - 1))
    }
    zeros.iter().all(|&z| rec(&zeros, full, z, k - 1))
}

fn expr(depth: u32) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(1usize..=4).prop_map(Expr::Var), any::<bool>().prop_map(Expr::Const),];
    leaf.prop_recursive(depth, 32, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Not(Box::new(e))),
            (0..4usize, inner.clone(), inner.clone()).prop_map(|(op, a, b)| {
                let op = [
                    postlat::formula::BinOp::And,
                    postlat::formula::BinOp::Or,
                    postlat::formula::BinOp::Xor,
                    postlat::formula::BinOp::Implies,
                ][op];
                Expr::Binary(op, Box::new(a), Box::new(b))
            }),
            (0..3usize, inner.clone(), inner.clone(), inner).prop_map(|(op, a, b, c)| {
                let op = [
                    postlat::formula::TernaryOp::Majority,
                    postlat::formula::TernaryOp::Minority,
                    postlat::formula::TernaryOp::TwoThirdsMinority,
                ][op];
                Expr::Ternary(op, Box::new([a, b, c]))
            }),
        ]
    })
}

fn relation(m: usize) -> impl Strategy<Value = Relation> {
    proptest::collection::btree_set(0..(1u64 << m), 0..=(1usize << m)).prop_map(move |s| Relation::new(m, s).unwrap())
}

/// Direct enumeration over all P-matrices.
fn satisfies_brute(f: &TruthTable, p: &Relation, q: &Relation) -> bool {
    let n = f.arity();
    let m = p.arity();
    let cols: Vec<u64> = p.tuples().collect();
    if n == 0 {
        let r = if f.bit(0) { (1u64 << m) - 1 } else { 0 };
        return q.contains(r);
    }
    if cols.is_empty() {
        return true;
    }
    let total = cols.len().pow(n as u32);
    (0..total).all(|mut code| {
        let mut chosen = Vec::with_capacity(n);
        for _ in 0..n {
            chosen.push(cols[code % cols.len()]);
            code /= cols.len();
        }
        let r = (0..m).fold(0u64, |acc, row| {
            let idx = chosen.iter().enumerate().fold(0usize, |a, (j, &c)| a | ((((c >> row) & 1) as usize) << j));
            acc | ((f.bit(idx) as u64) << row)
        });
        q.contains(r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn table_literal_round_trip(f in table(6)) {
        prop_assert_eq!(f.to_string().parse::<TruthTable>().unwrap(), f);
    }

    #[test]
    fn minors_compose((f, s, t) in (0usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(n, m, l)| {
        (nonconstant_arity(n, n), minor_map(n, m), minor_map(m, l))
    })) {
        let once = apply_minor(&f, &s.then(&t).unwrap()).unwrap();
        let twice = apply_minor(&apply_minor(&f, &s).unwrap(), &t).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn minor_is_composition_with_projections((f, s) in (1usize..=4, 1usize..=4).prop_flat_map(|(n, m)| {
        (nonconstant_arity(n, n), minor_map(n, m))
    })) {
        let m = s.target_arity();
        let inner: Vec<TruthTable> = s.map().iter().map(|&j| TruthTable::projection(m, j).unwrap()).collect();
        prop_assert_eq!(compose(&f, &inner).unwrap(), apply_minor(&f, &s).unwrap());
    }

    #[test]
    fn canonical_form_ignores_permutations((f, p) in (1usize..=5).prop_flat_map(|n| (nonconstant_arity(n, n), permutation(n)))) {
        let n = f.arity();
        let g = apply_minor(&f, &MinorMap::new(n, p).unwrap()).unwrap();
        let c = canonicalize(&f);
        prop_assert_eq!(canonicalize(&g), c.clone());
        prop_assert_eq!(canonicalize(&c), c.clone());
        // a dummy variable does not change the class either
        let pad = MinorMap::new(n + 1, (1..=n).collect()).unwrap();
        prop_assert_eq!(canonicalize(&apply_minor(&f, &pad).unwrap()), c);
    }

    #[test]
    fn w_matches_brute_force(f in nonconstant_arity(1, 4), k in 1usize..=4) {
        prop_assert_eq!(in_w(&f, Depth::Finite(k)), w_brute(&f, k));
    }

    #[test]
    fn w_chain_descends(f in table(5)) {
        for k in 1..6 {
            if in_w(&f, Depth::Finite(k + 1)) {
                prop_assert!(in_w(&f, Depth::Finite(k)));
            }
        }
        if in_w(&f, Depth::Infinite) {
            prop_assert!(in_w(&f, Depth::Finite(5)));
        }
        match w_depth(&f) {
            Depth::Finite(d) => {
                prop_assert!(d == 0 || in_w(&f, Depth::Finite(d)));
                prop_assert!(!in_w(&f, Depth::Finite(d + 1)));
            }
            Depth::Infinite => prop_assert!(in_w(&f, Depth::Infinite)),
        }
    }

    #[test]
    fn u_is_dual_of_w(f in table(5), k in 2usize..=4) {
        let w: ClassName = format!("W^{k}").parse().unwrap();
        let u: ClassName = format!("U^{k}").parse().unwrap();
        prop_assert_eq!(predicate(&f, &u), predicate(&f.dual(), &w));
        prop_assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn b_inside_w_and_omega_11(f in table(5), k in 1usize..=4) {
        if in_b(&f, Depth::Finite(k)) {
            let omega11: ClassName = "Ω_11".parse().unwrap();
            prop_assert!(in_w(&f, Depth::Finite(k)));
            prop_assert!(in_w(&f.reflect(), Depth::Finite(k)));
            prop_assert!(predicate(&f, &omega11));
        }
    }

    #[test]
    fn anf_round_trip(f in table(6)) {
        prop_assert_eq!(anf(&f).to_table(), f);
    }

    #[test]
    fn expression_print_parse(e in expr(4)) {
        let text = e.to_string();
        let back: Expr = text.parse().unwrap();
        prop_assert_eq!(back.to_table(Some(4)).unwrap(), e.to_table(Some(4)).unwrap());
    }

    #[test]
    fn satisfaction_matches_brute_force(f in table(3), p in relation(2), q in relation(2)) {
        let c = Constraint::new(p.clone(), q.clone()).unwrap();
        prop_assert_eq!(satisfies(&f, &c).unwrap(), satisfies_brute(&f, &p, &q));
    }

    #[test]
    fn satisfaction_is_antitone_in_p_and_monotone_in_q(
        f in table(3),
        p in relation(3),
        q in relation(3),
        drop in any::<u64>(),
        add in any::<u8>(),
    ) {
        let c = Constraint::new(p.clone(), q.clone()).unwrap();
        if satisfies(&f, &c).unwrap() {
            let smaller = Relation::new(3, p.tuples().enumerate().filter(|(i, _)| (drop >> i) & 1 == 0).map(|(_, t)| t)).unwrap();
            let larger = Relation::new(3, q.tuples().chain((0..8u64).filter(|b| (add >> b) & 1 == 1))).unwrap();
            prop_assert!(satisfies(&f, &Constraint::new(smaller, larger).unwrap()).unwrap());
        }
    }

    #[test]
    fn shortcuts_agree_with_enumeration(f in table(4), m in 1usize..=4) {
        for c in [
            Constraint::new(Relation::nonzero(m).unwrap(), Relation::nonzero(m).unwrap()).unwrap(),
            Constraint::new(Relation::non_one(m).unwrap(), Relation::nonzero(m).unwrap()).unwrap(),
        ] {
            let slow = find_violation_by_enumeration(&f, &c, u64::MAX).unwrap().is_none();
            prop_assert_eq!(satisfies(&f, &c).unwrap(), slow);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn equational_closure_is_a_closure(gens in proptest::collection::vec(nonconstant_arity(1, 3), 1..=3)) {
        let e = equational_closure(&gens, 3).unwrap();
        prop_assert!(e.is_equational());
        prop_assert!(gens.iter().all(|g| e.contains(g)));
        prop_assert_eq!(equational_closure(&e.canonical_members(), 3).unwrap(), e);
    }

    #[test]
    fn z_operators_are_ordered(gens in proptest::collection::vec(nonconstant_arity(1, 3), 1..=3)) {
        let e = equational_closure(&gens, 3).unwrap();
        let z2 = z_operator(&e, Depth::Finite(2)).unwrap();
        let z3 = z_operator(&e, Depth::Finite(3)).unwrap();
        let zi = z_operator(&e, Depth::Infinite).unwrap();
        prop_assert!(e.is_subset(&zi).unwrap());
        prop_assert!(zi.is_subset(&z3).unwrap());
        prop_assert!(z3.is_subset(&z2).unwrap());
        prop_assert_eq!(z_operator(&zi, Depth::Infinite).unwrap(), zi);
    }
}
