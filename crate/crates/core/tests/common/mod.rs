#![allow(dead_code)]

use arcadian::formula::Formula;
use proptest::prelude::*;

pub const FIG4: &str = "(forall x. P(x)) -> forall y. exists x. P(x)";

pub const PROVABLE: [&str; 15] = [
    "p -> p",
    "p -> q -> p",
    "(p -> q -> r) -> (p -> q) -> p -> r",
    "p /\\ q -> q /\\ p",
    "p -> p \\/ q",
    "p \\/ q -> q \\/ p",
    "bot -> p",
    "~~(p \\/ ~p)",
    "(forall x. P(x) -> Q(x)) -> (forall x. P(x)) -> forall x. Q(x)",
    "(forall x. P(x)) -> ~exists x. ~P(x)",
    "(exists x. P(x)) -> ~forall x. ~P(x)",
    "(exists x. forall y. R(x,y)) -> forall y. exists x. R(x,y)",
    "(forall x. P(x) /\\ Q(x)) -> (forall x. P(x)) /\\ (forall x. Q(x))",
    "(exists x. P(x) \\/ Q(x)) -> (exists x. P(x)) \\/ (exists x. Q(x))",
    FIG4,
];

pub const NON_THEOREMS: [&str; 5] = [
    "((p -> q) -> p) -> p",
    "p \\/ ~p",
    "~~p -> p",
    "(forall y. exists x. R(x,y)) -> exists x. forall y. R(x,y)",
    "exists x. (P(x) -> forall y. P(y))",
];

const VARS: [&str; 3] = ["x", "y", "z"];

fn leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        Just(Formula::prop("p")),
        Just(Formula::prop("q")),
        Just(Formula::Bottom),
        (0..3usize).prop_map(|i| Formula::atom("P", &[VARS[i]])),
        (0..3usize).prop_map(|i| Formula::atom("Q", &[VARS[i]])),
        (0..3usize, 0..3usize).prop_map(|(i, j)| Formula::atom("R", &[VARS[i], VARS[j]])),
    ]
}

/// First-order formulas of depth at most `depth`, possibly open.
pub fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (0..3usize, inner.clone()).prop_map(|(i, a)| Formula::forall(VARS[i], a)),
            (0..3usize, inner).prop_map(|(i, a)| Formula::exists(VARS[i], a)),
        ]
    })
}

pub fn closed_formula(depth: u32) -> impl Strategy<Value = Formula> {
    formula(depth).prop_map(|f| f.universal_closure())
}

/// Calls `f` on every propositional formula over atoms `p`, `q` with
/// exactly `n` connectives, counting each of ∧, ∨, → and ⊥ as one.
/// Stops early when `f` returns false; returns whether it ran to the end.
pub fn for_each_prop(n: usize, f: &mut dyn FnMut(&Formula) -> bool) -> bool {
    if n == 0 {
        return f(&Formula::prop("p")) && f(&Formula::prop("q"));
    }
    if n == 1 && !f(&Formula::Bottom) {
        return false;
    }
    for l in 0..n {
        let ok = for_each_prop(l, &mut |a| {
            for_each_prop(n - 1 - l, &mut |b| {
                f(&Formula::and(a.clone(), b.clone()))
                    && f(&Formula::or(a.clone(), b.clone()))
                    && f(&Formula::imp(a.clone(), b.clone()))
            })
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Number of formulas `for_each_prop(n, ..)` visits.
pub fn count_prop(n: usize) -> u128 {
    let mut c = vec![0u128; n + 1];
    for k in 0..=n {
        c[k] = if k == 0 { 2 } else { u128::from(k == 1) };
        for l in 0..k {
            c[k] += 3 * c[l] * c[k - 1 - l];
        }
    }
    c[n]
}
