mod common;

use std::collections::BTreeSet;

use arcadian::construction::build;
use arcadian::engine::{prove, readable, Attempt};
use arcadian::formula::{alpha_eq, parse, print, sym, Binding, Eigen, Formula, FormulaTree, Var};
use arcadian::machine::{canonicalize, step, Budget, CanonKey, Id, Polarity, RunJson, RunTree};
use arcadian::proofterm::{classify_nf, is_lnf, type_check, Context, NfClass};
use common::{closed_formula, formula, PROVABLE};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// All bindings of `nodes` into `1..=k`.
fn assignments(nodes: &[arcadian::formula::NodeId], k: u32) -> Vec<Binding> {
    let mut out = vec![Binding::new()];
    for &n in nodes {
        out = out
            .into_iter()
            .flat_map(|b| {
                (1..=k).map(move |y| {
                    let mut b = b.clone();
                    b.insert(n, Eigen(y));
                    b
                })
            })
            .collect();
    }
    out
}

/// Renames every bound first-order variable of `f`.
fn rename_bound(f: &Formula) -> Formula {
    match f {
        Formula::Atom(..) | Formula::Bottom => f.clone(),
        Formula::And(a, b) => Formula::and(rename_bound(a), rename_bound(b)),
        Formula::Or(a, b) => Formula::or(rename_bound(a), rename_bound(b)),
        Formula::Imp(a, b) => Formula::imp(rename_bound(a), rename_bound(b)),
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            let y = format!("{x}r");
            let body = rename_bound(&a.subst_avoiding(x, &Var::named(&y)));
            if matches!(f, Formula::Forall(..)) {
                Formula::forall(&y, body)
            } else {
                Formula::exists(&y, body)
            }
        }
    }
}

fn attempt(f: &Formula) -> Attempt {
    prove(f, Budget::new(10, 1)).unwrap()
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn print_then_parse_is_identity(f in formula(6)) {
        let back = parse(&print(&f)).unwrap();
        prop_assert!(alpha_eq(&back, &f), "{} vs {}", print(&f), print(&back));
    }

    #[test]
    fn bind_finds_the_nearest_binder(f in closed_formula(5)) {
        let t = FormulaTree::index(&f).unwrap();
        for n in t.ids() {
            for v in t.formula(n).free_vars() {
                let x = v.as_name().unwrap().clone();
                let b = t.bind(n, &x).unwrap();
                let mut a = t.parent(n);
                let nearest = loop {
                    let p = a.expect("a binder exists");
                    match t.formula(p) {
                        Formula::Forall(y, _) | Formula::Exists(y, _) if *y == x => break p,
                        _ => a = t.parent(p),
                    }
                };
                prop_assert_eq!(b, nearest);
            }
        }
    }

    #[test]
    fn fv_is_closed_under_children(f in closed_formula(5)) {
        let t = FormulaTree::index(&f).unwrap();
        for n in t.ids().filter(|&n| !t.children(n).is_empty()) {
            let mut union: BTreeSet<_> = t.children(n).iter().flat_map(|&c| t.fv(c).iter().copied()).collect();
            if t.kind(n).is_quantifier() {
                union.remove(&n);
            }
            let own: BTreeSet<_> = t.fv(n).iter().copied().collect();
            prop_assert_eq!(own, union);
        }
    }

    #[test]
    fn instantiation_ignores_bindings_outside_fv(f in closed_formula(5)) {
        let t = FormulaTree::index(&f).unwrap();
        let quantifiers: Vec<_> = t.ids().filter(|&n| t.kind(n).is_quantifier()).collect();
        for n in t.ids() {
            for w in assignments(t.fv(n), 2).into_iter().take(4) {
                let base = t.instantiate(n, &w).unwrap();
                let mut ext = w.clone();
                for &q in &quantifiers {
                    if !ext.contains(q) {
                        ext.insert(q, Eigen(7));
                    }
                }
                prop_assert_eq!(t.instantiate(n, &ext).unwrap(), base);
            }
        }
    }

    #[test]
    fn every_instance_emerges(f in closed_formula(5)) {
        let t = FormulaTree::index(&f).unwrap();
        for n in t.ids() {
            for w in assignments(t.fv(n), 2) {
                let psi = t.instantiate(n, &w).unwrap();
                prop_assert!(t.emerged_from(&psi).iter().any(|(m, _)| *m == n), "{} at {}", print(&psi), t.path(n));
            }
        }
    }

    #[test]
    fn automata_are_well_formed_and_quadratic(f in closed_formula(6)) {
        let c = build(&f).unwrap();
        let aut = &c.automaton;
        prop_assert_eq!(aut.well_formed(), vec![]);
        let n = aut.tree().len();
        prop_assert!(aut.states().len() <= 2 * n * n + 4 * n + 2, "{} states for {n} nodes", aut.states().len());
        prop_assert!(aut.instructions().len() <= 6 * n * n + 4 * n, "{} instructions for {n} nodes", aut.instructions().len());
        for s in aut.states() {
            if s.id.flavor == arcadian::machine::Flavor::Plain && s.id.polarity == Polarity::Existential {
                prop_assert!(s.instructions.iter().any(|&i| aut.instruction(i).pattern == 13));
            }
            if s.id.polarity == Polarity::Universal && s.instructions.is_empty() {
                prop_assert_eq!(s.id.flavor, arcadian::machine::Flavor::Axiom);
            }
        }
    }
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn proved_terms_check_and_are_long(f in closed_formula(3)) {
        let a = attempt(&f);
        if let Some(m) = a.result.term() {
            let ctx = Context::new();
            prop_assert!(type_check(&ctx, m, &a.formula).is_ok());
            prop_assert!(is_lnf(&ctx, m, &a.formula).unwrap());
            prop_assert_ne!(classify_nf(m), NfClass::NotNormal);
            // weakening
            let wide = Context::from_pairs([("zz", Formula::prop("s"))]);
            prop_assert!(type_check(&wide, m, &a.formula).is_ok());
            // α-invariance of term and goal
            let renamed = readable(m, &a.formula);
            prop_assert!(type_check(&ctx, &renamed, &rename_bound(&a.formula)).is_ok());
        }
    }

    #[test]
    fn runs_replay_and_grow(f in closed_formula(3)) {
        let a = attempt(&f);
        if let Some(run) = a.result.run() {
            let aut = a.automaton();
            run.replay(aut).unwrap();
            let mut stack = vec![run];
            while let Some(r) = stack.pop() {
                let tree = aut.tree();
                let dom: Vec<_> = r.id.w.domain().collect();
                prop_assert_eq!(&dom[..], tree.fv(r.id.node));
                for s in &r.steps {
                    let c = &s.child.id;
                    prop_assert!(r.id.domain.iter().all(|y| c.domain.contains(y)));
                    prop_assert!(r.id.store.iter().all(|e| c.store.contains(e)));
                    let succ = step(aut, &r.id, s.instruction).unwrap();
                    prop_assert!(succ.iter().any(|x| x.id == *c));
                    stack.push(&s.child);
                }
            }
            let text = serde_json::to_string(&run.to_json(aut)).unwrap();
            let doc: RunJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&RunTree::from_json(aut, &doc).unwrap(), run);
        }
    }

    #[test]
    fn canonical_keys_ignore_eigenvariable_names(f in closed_formula(3), shift in 1u32..50) {
        let a = attempt(&f);
        if let Some(run) = a.result.run() {
            for id in run.ids() {
                let c = canonicalize(id);
                prop_assert_eq!(&canonicalize(&c), &c);
                let moved = Id {
                    w: id.w.map_values(|e| Eigen(e.0 + shift)),
                    aux: id.aux.map_values(|e| Eigen(e.0 + shift)),
                    store: id.store.iter().rev().map(|e| arcadian::machine::StoreEntry {
                        node: e.node,
                        binding: e.binding.map_values(|x| Eigen(x.0 + shift)),
                        label: sym("other"),
                    }).collect(),
                    domain: id.domain.iter().map(|e| Eigen(e.0 + shift)).collect(),
                    ..id.clone()
                };
                prop_assert_eq!(CanonKey::of(&moved), CanonKey::of(id));
            }
        }
    }
}

#[test]
fn proving_is_deterministic() {
    for f in PROVABLE {
        let phi = parse(f).unwrap();
        let a = prove(&phi, Budget::new(24, 3)).unwrap();
        let b = prove(&phi, Budget::new(24, 3)).unwrap();
        assert_eq!(a.result.term(), b.result.term(), "{f}");
        let ja = serde_json::to_string(&a.result.run().unwrap().to_json(a.automaton())).unwrap();
        let jb = serde_json::to_string(&b.result.run().unwrap().to_json(b.automaton())).unwrap();
        assert_eq!(ja, jb, "{f}");
    }
}
