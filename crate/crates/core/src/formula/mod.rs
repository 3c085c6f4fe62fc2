//! First-order formulas over variables (no function symbols), their concrete
//! syntax, and the binder analysis of a closed formula's syntax tree.

mod parse;
mod print;
mod tree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use parse::{parse, parse_at, ParseError};
pub(crate) use parse::{expect as expect_tok, unexpected as unexpected_tok, FormulaParser};
pub use tree::{Alignment, FormulaTree, NodeId, NodeKind, Path, TreeNode};

/// Interned-ish symbol used for predicate names and named variables.
pub type Sym = Arc<str>;

pub fn sym(s: &str) -> Sym {
    Arc::from(s)
}

/// An eigenvariable: an element of the automaton's working domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eigen(pub u32);

impl fmt::Display for Eigen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

/// A first-order variable occurrence: either a user-written name or an
/// eigenvariable produced during search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Named(Sym),
    Eigen(Eigen),
}

impl Var {
    pub fn named(s: &str) -> Var {
        Var::Named(sym(s))
    }

    pub fn eigen(n: u32) -> Var {
        Var::Eigen(Eigen(n))
    }

    pub fn as_name(&self) -> Option<&Sym> {
        match self {
            Var::Named(s) => Some(s),
            Var::Eigen(_) => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Named(s) => f.write_str(s),
            Var::Eigen(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pred {
    pub name: Sym,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Pred, Vec<Var>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(Sym, Box<Formula>),
    Exists(Sym, Box<Formula>),
    Bottom,
}

/// Raised when substituting `y` for `x` would capture `y` under a binder.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("variable {var} would be captured by a binder of {binder}")]
pub struct Capture {
    pub var: Var,
    pub binder: Sym,
}

impl Formula {
    pub fn atom(name: &str, args: &[&str]) -> Formula {
        Formula::Atom(
            Pred {
                name: sym(name),
                arity: args.len(),
            },
            args.iter().map(|a| Var::named(a)).collect(),
        )
    }

    pub fn atom_vars(name: &str, args: Vec<Var>) -> Formula {
        Formula::Atom(
            Pred {
                name: sym(name),
                arity: args.len(),
            },
            args,
        )
    }

    pub fn prop(name: &str) -> Formula {
        Formula::atom(name, &[])
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bottom)
    }

    pub fn forall(x: &str, body: Formula) -> Formula {
        Formula::Forall(sym(x), Box::new(body))
    }

    pub fn exists(x: &str, body: Formula) -> Formula {
        Formula::Exists(sym(x), Box::new(body))
    }

    /// Atoms, existentials and disjunctions.
    pub fn is_pseudo_atom(&self) -> bool {
        matches!(
            self,
            Formula::Atom(..) | Formula::Exists(..) | Formula::Or(..)
        )
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Forall(..) | Formula::Exists(..))
    }

    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(p, _) => p.arity == 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::Bottom => true,
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Bottom => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
        }
    }

    pub fn contains_bottom(&self) -> bool {
        match self {
            Formula::Bottom => true,
            Formula::Atom(..) => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.contains_bottom() || b.contains_bottom()
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => a.contains_bottom(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a Sym>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => {
                for a in args {
                    match a {
                        Var::Named(n) if bound.contains(&n) => {}
                        _ => {
                            out.insert(a.clone());
                        }
                    }
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x);
                a.collect_free(bound, out);
                bound.pop();
            }
            Formula::Bottom => {}
        }
    }

    /// Free variables in order of first occurrence (left to right).
    pub fn free_vars_ordered(&self) -> Vec<Var> {
        let mut out: Vec<Var> = Vec::new();
        fn go<'a>(f: &'a Formula, bound: &mut Vec<&'a Sym>, out: &mut Vec<Var>) {
            match f {
                Formula::Atom(_, args) => {
                    for a in args {
                        let is_bound = matches!(a, Var::Named(n) if bound.contains(&n));
                        if !is_bound && !out.contains(a) {
                            out.push(a.clone());
                        }
                    }
                }
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(x, a) | Formula::Exists(x, a) => {
                    bound.push(x);
                    go(a, bound, out);
                    bound.pop();
                }
                Formula::Bottom => {}
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// All names (bound or free) written in the formula.
    pub fn names(&self, out: &mut BTreeSet<Sym>) {
        match self {
            Formula::Atom(_, args) => {
                for a in args {
                    if let Var::Named(n) = a {
                        out.insert(n.clone());
                    }
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.names(out);
                b.names(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.names(out);
            }
            Formula::Bottom => {}
        }
    }

    /// `self[x := y]`, failing instead of renaming when `y` would be captured.
    pub fn subst(&self, x: &Sym, y: &Var) -> Result<Formula, Capture> {
        Ok(match self {
            Formula::Atom(p, args) => Formula::Atom(
                p.clone(),
                args.iter()
                    .map(|a| match a {
                        Var::Named(n) if n == x => y.clone(),
                        _ => a.clone(),
                    })
                    .collect(),
            ),
            Formula::And(a, b) => Formula::and(a.subst(x, y)?, b.subst(x, y)?),
            Formula::Or(a, b) => Formula::or(a.subst(x, y)?, b.subst(x, y)?),
            Formula::Imp(a, b) => Formula::imp(a.subst(x, y)?, b.subst(x, y)?),
            Formula::Forall(z, a) | Formula::Exists(z, a) => {
                let body = if z == x {
                    (**a).clone()
                } else {
                    let occurs = a.free_vars().contains(&Var::Named(x.clone()));
                    if occurs && y.as_name() == Some(z) {
                        return Err(Capture {
                            var: y.clone(),
                            binder: z.clone(),
                        });
                    }
                    a.subst(x, y)?
                };
                match self {
                    Formula::Forall(..) => Formula::Forall(z.clone(), Box::new(body)),
                    _ => Formula::Exists(z.clone(), Box::new(body)),
                }
            }
            Formula::Bottom => Formula::Bottom,
        })
    }

    /// `self[x := y]`, renaming inner binders that would capture `y`.
    pub fn subst_avoiding(&self, x: &Sym, y: &Var) -> Formula {
        match self {
            Formula::Atom(..) | Formula::Bottom => self.subst(x, y).expect("no binders"),
            Formula::And(a, b) => Formula::and(a.subst_avoiding(x, y), b.subst_avoiding(x, y)),
            Formula::Or(a, b) => Formula::or(a.subst_avoiding(x, y), b.subst_avoiding(x, y)),
            Formula::Imp(a, b) => Formula::imp(a.subst_avoiding(x, y), b.subst_avoiding(x, y)),
            Formula::Forall(z, a) | Formula::Exists(z, a) => {
                let (z, body) = if z == x || !a.free_vars().contains(&Var::Named(x.clone())) {
                    (z.clone(), (**a).clone())
                } else if y.as_name() == Some(z) {
                    let mut taken = BTreeSet::new();
                    a.names(&mut taken);
                    taken.insert(z.clone());
                    let fresh = fresh_name(z, &taken);
                    let renamed = a.subst(z, &Var::Named(fresh.clone())).unwrap_or_else(|_| {
                        unreachable!("fresh name cannot be captured")
                    });
                    (fresh, renamed.subst_avoiding(x, y))
                } else {
                    (z.clone(), a.subst_avoiding(x, y))
                };
                match self {
                    Formula::Forall(..) => Formula::Forall(z, Box::new(body)),
                    _ => Formula::Exists(z, Box::new(body)),
                }
            }
        }
    }

    /// Simultaneous replacement of free named variables.
    pub fn rename_free(&self, map: &Substitution) -> Formula {
        fn go(f: &Formula, map: &Substitution, bound: &mut Vec<Sym>) -> Formula {
            match f {
                Formula::Atom(p, args) => Formula::Atom(
                    p.clone(),
                    args.iter()
                        .map(|a| match a {
                            Var::Named(n) if !bound.contains(n) => {
                                map.get(n).cloned().unwrap_or_else(|| a.clone())
                            }
                            _ => a.clone(),
                        })
                        .collect(),
                ),
                Formula::And(a, b) => Formula::and(go(a, map, bound), go(b, map, bound)),
                Formula::Or(a, b) => Formula::or(go(a, map, bound), go(b, map, bound)),
                Formula::Imp(a, b) => Formula::imp(go(a, map, bound), go(b, map, bound)),
                Formula::Forall(x, a) | Formula::Exists(x, a) => {
                    bound.push(x.clone());
                    let body = Box::new(go(a, map, bound));
                    bound.pop();
                    if matches!(f, Formula::Forall(..)) {
                        Formula::Forall(x.clone(), body)
                    } else {
                        Formula::Exists(x.clone(), body)
                    }
                }
                Formula::Bottom => Formula::Bottom,
            }
        }
        go(self, map, &mut Vec::new())
    }

    /// Rewrite every variable (free or otherwise) through `f`; binders untouched.
    pub fn map_vars(&self, f: &mut impl FnMut(&Var) -> Var) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(&mut *f).collect()),
            Formula::And(a, b) => Formula::and(a.map_vars(f), b.map_vars(f)),
            Formula::Or(a, b) => Formula::or(a.map_vars(f), b.map_vars(f)),
            Formula::Imp(a, b) => Formula::imp(a.map_vars(f), b.map_vars(f)),
            Formula::Forall(x, a) => Formula::Forall(x.clone(), Box::new(a.map_vars(f))),
            Formula::Exists(x, a) => Formula::Exists(x.clone(), Box::new(a.map_vars(f))),
            Formula::Bottom => Formula::Bottom,
        }
    }

    /// Universal closure over the free named variables, outermost first.
    pub fn universal_closure(&self) -> Formula {
        let mut out = self.clone();
        for v in self.free_vars_ordered().into_iter().rev() {
            if let Var::Named(n) = v {
                out = Formula::Forall(n, Box::new(out));
            }
        }
        out
    }
}

/// `base`, `base'`, `base''`, ... : the first variant not in `taken`.
pub fn fresh_name(base: &str, taken: &BTreeSet<Sym>) -> Sym {
    let mut s = base.to_string();
    loop {
        s.push('\'');
        if !taken.iter().any(|t| t.as_ref() == s) {
            return sym(&s);
        }
    }
}

/// Equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha_eq_in(a, b, &mut Vec::new(), &mut Vec::new())
}

/// Looks `v` up in a binder stack; returns the de Bruijn index when bound.
fn lookup(v: &Var, bound: &[&Sym]) -> Option<usize> {
    match v {
        Var::Named(n) => bound.iter().rev().position(|b| *b == n),
        Var::Eigen(_) => None,
    }
}

fn alpha_eq_in<'a>(
    a: &'a Formula,
    b: &'a Formula,
    ba: &mut Vec<&'a Sym>,
    bb: &mut Vec<&'a Sym>,
) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| {
                    match (lookup(x, ba), lookup(y, bb)) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                })
        }
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            alpha_eq_in(a1, b1, ba, bb) && alpha_eq_in(a2, b2, ba, bb)
        }
        (Formula::Forall(x, a1), Formula::Forall(y, b1))
        | (Formula::Exists(x, a1), Formula::Exists(y, b1)) => {
            ba.push(x);
            bb.push(y);
            let r = alpha_eq_in(a1, b1, ba, bb);
            ba.pop();
            bb.pop();
            r
        }
        (Formula::Bottom, Formula::Bottom) => true,
        _ => false,
    }
}

/// Map from named (pattern) variables to the variables they stand for.
pub type Substitution = BTreeMap<Sym, Var>;

/// Matches `pattern` against `target` up to α-equivalence, where the free
/// named variables of `pattern` may be instantiated by free variables of
/// `target`. Returns the instantiating substitution.
pub fn match_formula(pattern: &Formula, target: &Formula) -> Option<Substitution> {
    let mut sub = Substitution::new();
    if match_in(pattern, target, &mut Vec::new(), &mut Vec::new(), &mut sub) {
        Some(sub)
    } else {
        None
    }
}

fn match_in<'a>(
    p: &'a Formula,
    t: &'a Formula,
    bp: &mut Vec<&'a Sym>,
    bt: &mut Vec<&'a Sym>,
    sub: &mut Substitution,
) -> bool {
    match (p, t) {
        (Formula::Atom(a, xs), Formula::Atom(b, ys)) => {
            if a != b || xs.len() != ys.len() {
                return false;
            }
            for (x, y) in xs.iter().zip(ys) {
                match (lookup(x, bp), lookup(y, bt)) {
                    (Some(i), Some(j)) if i == j => {}
                    (None, None) => match x {
                        Var::Named(n) => match sub.get(n) {
                            Some(prev) if prev != y => return false,
                            Some(_) => {}
                            None => {
                                sub.insert(n.clone(), y.clone());
                            }
                        },
                        Var::Eigen(_) => {
                            if x != y {
                                return false;
                            }
                        }
                    },
                    _ => return false,
                }
            }
            true
        }
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            match_in(a1, b1, bp, bt, sub) && match_in(a2, b2, bp, bt, sub)
        }
        (Formula::Forall(x, a1), Formula::Forall(y, b1))
        | (Formula::Exists(x, a1), Formula::Exists(y, b1)) => {
            bp.push(x);
            bt.push(y);
            let r = match_in(a1, b1, bp, bt, sub);
            bp.pop();
            bt.pop();
            r
        }
        (Formula::Bottom, Formula::Bottom) => true,
        _ => false,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

pub use print::print;

/// Partial map from quantifier nodes to eigenvariables, kept sorted by node.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binding(Vec<(NodeId, Eigen)>);

impl Binding {
    pub fn new() -> Binding {
        Binding(Vec::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (NodeId, Eigen)>) -> Binding {
        let mut b = Binding::new();
        for (n, e) in pairs {
            b.insert(n, e);
        }
        b
    }

    pub fn get(&self, n: NodeId) -> Option<Eigen> {
        self.0
            .binary_search_by_key(&n, |&(k, _)| k)
            .ok()
            .map(|i| self.0[i].1)
    }

    pub fn insert(&mut self, n: NodeId, e: Eigen) {
        match self.0.binary_search_by_key(&n, |&(k, _)| k) {
            Ok(i) => self.0[i].1 = e,
            Err(i) => self.0.insert(i, (n, e)),
        }
    }

    pub fn contains(&self, n: NodeId) -> bool {
        self.get(n).is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, Eigen)> + '_ {
        self.0.iter().copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.0.iter().map(|&(n, _)| n)
    }

    pub fn values(&self) -> impl Iterator<Item = Eigen> + '_ {
        self.0.iter().map(|&(_, e)| e)
    }

    /// Left-biased union: entries of `self` win over `other` (`self ⊕ other`).
    pub fn overlay(&self, other: &Binding) -> Binding {
        let mut out = other.clone();
        for (n, e) in self.iter() {
            out.insert(n, e);
        }
        out
    }

    pub fn restrict(&self, dom: &[NodeId]) -> Binding {
        Binding(
            self.0
                .iter()
                .filter(|(n, _)| dom.contains(n))
                .copied()
                .collect(),
        )
    }

    pub fn covers(&self, dom: &[NodeId]) -> bool {
        dom.iter().all(|&n| self.contains(n))
    }

    /// True when every entry of `self` is also in `other`.
    pub fn is_subset_of(&self, other: &Binding) -> bool {
        self.iter().all(|(n, e)| other.get(n) == Some(e))
    }

    pub fn map_values(&self, mut f: impl FnMut(Eigen) -> Eigen) -> Binding {
        Binding(self.0.iter().map(|&(n, e)| (n, f(e))).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("formula is not closed; free variables: {0}")]
    NotClosed(String),
    #[error("variable {var} is not free at node {node}")]
    VarNotFree { node: Path, var: Sym },
    #[error("binding does not cover the free variables of node {0}")]
    IncompleteBinding(Path),
    #[error("no such node {0}")]
    UnknownNode(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[&str]) -> BTreeSet<Var> {
        vs.iter().map(|v| Var::named(v)).collect()
    }

    #[test]
    fn free_vars_clauses() {
        assert_eq!(Formula::atom("P", &["x", "y"]).free_vars(), set(&["x", "y"]));
        assert_eq!(
            Formula::forall("x", Formula::atom("P", &["x"])).free_vars(),
            set(&[])
        );
        let f = Formula::exists("x", Formula::imp(Formula::Bottom, Formula::atom("P", &["x"])));
        assert!(f.free_vars().is_empty());
        let g = Formula::and(
            Formula::atom("P", &["x"]),
            Formula::forall("x", Formula::atom("P", &["x"])),
        );
        assert_eq!(g.free_vars(), set(&["x"]));
    }

    #[test]
    fn alpha_equivalence() {
        let px = Formula::forall("x", Formula::atom("P", &["x"]));
        let py = Formula::forall("y", Formula::atom("P", &["y"]));
        assert!(alpha_eq(&px, &py));
        let ex = Formula::exists("x", Formula::atom("P", &["x"]));
        assert!(!alpha_eq(&px, &ex));
        let a = Formula::forall("x", Formula::forall("y", Formula::atom("R", &["x", "y"])));
        let b = Formula::forall("y", Formula::forall("x", Formula::atom("R", &["y", "x"])));
        assert!(alpha_eq(&a, &b));
        let c = Formula::forall("y", Formula::forall("x", Formula::atom("R", &["x", "y"])));
        assert!(!alpha_eq(&a, &c));
    }

    #[test]
    fn free_and_bound_do_not_alias() {
        // ∀x.P(x) vs ∀y.P(x): the second has x free
        let a = Formula::forall("x", Formula::atom("P", &["x"]));
        let b = Formula::forall("y", Formula::atom("P", &["x"]));
        assert!(!alpha_eq(&a, &b));
    }

    #[test]
    fn subst_reports_capture() {
        let f = Formula::exists("y", Formula::atom("R", &["x", "y"]));
        let err = f.subst(&sym("x"), &Var::named("y")).unwrap_err();
        assert_eq!(err.binder.as_ref(), "y");
        let ok = f.subst(&sym("x"), &Var::eigen(1)).unwrap();
        assert_eq!(
            ok,
            Formula::exists(
                "y",
                Formula::atom_vars("R", vec![Var::eigen(1), Var::named("y")])
            )
        );
    }

    #[test]
    fn subst_avoiding_renames_the_capturing_binder() {
        let f = Formula::exists("y", Formula::atom("R", &["x", "y"]));
        let g = f.subst_avoiding(&sym("x"), &Var::named("y"));
        let want = Formula::exists("z", Formula::atom("R", &["y", "z"]));
        assert!(alpha_eq(&g, &want), "{g}");
    }

    #[test]
    fn subst_stops_at_shadowing_binder() {
        let f = Formula::and(
            Formula::atom("P", &["x"]),
            Formula::forall("x", Formula::atom("P", &["x"])),
        );
        let g = f.subst(&sym("x"), &Var::eigen(2)).unwrap();
        assert_eq!(
            g,
            Formula::and(
                Formula::atom_vars("P", vec![Var::eigen(2)]),
                Formula::forall("x", Formula::atom("P", &["x"])),
            )
        );
    }

    #[test]
    fn matching_instantiates_free_pattern_variables() {
        let pat = Formula::atom("R", &["x", "y"]);
        let tgt = Formula::atom_vars("R", vec![Var::eigen(1), Var::eigen(1)]);
        let sub = match_formula(&pat, &tgt).unwrap();
        assert_eq!(sub.get("x"), Some(&Var::eigen(1)));
        assert_eq!(sub.get("y"), Some(&Var::eigen(1)));
        let pat2 = Formula::atom("R", &["x", "x"]);
        let tgt2 = Formula::atom_vars("R", vec![Var::eigen(1), Var::eigen(2)]);
        assert!(match_formula(&pat2, &tgt2).is_none());
    }

    #[test]
    fn closure_binds_in_first_occurrence_order() {
        let f = Formula::atom("R", &["y", "x"]);
        let c = f.universal_closure();
        assert_eq!(
            c,
            Formula::forall("y", Formula::forall("x", Formula::atom("R", &["y", "x"])))
        );
    }

    #[test]
    fn binding_overlay_prefers_left() {
        let a = Binding::from_pairs([(NodeId(1), Eigen(1))]);
        let b = Binding::from_pairs([(NodeId(1), Eigen(2)), (NodeId(3), Eigen(3))]);
        let c = a.overlay(&b);
        assert_eq!(c.get(NodeId(1)), Some(Eigen(1)));
        assert_eq!(c.get(NodeId(3)), Some(Eigen(3)));
        assert_eq!(c.restrict(&[NodeId(3)]).len(), 1);
    }
}
