//! Proof terms for intuitionistic natural deduction, a bidirectional checker
//! for them, and the long-normal-form classifier.

mod check;
mod normal;
mod syntax;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::formula::{sym, Formula, Substitution, Sym, Var};

pub use check::{synthesize, type_check, CheckError, Rule};
pub use normal::{classify_nf, is_lnf, NfClass};
pub use syntax::{parse_term, parse_term_at, print_term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::Left => 1,
            Side::Right => 2,
        }
    }
}

/// One arm of a `case`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub var: Sym,
    pub ty: Formula,
    pub body: Box<ProofTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProofTerm {
    Var(Sym),
    Pair(Box<ProofTerm>, Box<ProofTerm>),
    Proj(Side, Box<ProofTerm>),
    /// Annotated with the whole disjunction.
    Inl(Formula, Box<ProofTerm>),
    Inr(Formula, Box<ProofTerm>),
    Case {
        scrut: Box<ProofTerm>,
        left: Branch,
        right: Branch,
    },
    Lam(Sym, Formula, Box<ProofTerm>),
    App(Box<ProofTerm>, Box<ProofTerm>),
    TLam(Var, Box<ProofTerm>),
    TApp(Box<ProofTerm>, Var),
    /// `pack body, witness to var. formula` proves `exists var. formula`.
    Pack {
        body: Box<ProofTerm>,
        witness: Var,
        var: Sym,
        formula: Formula,
    },
    /// `let [eigen, label: ty] = scrut in body`.
    Let {
        eigen: Var,
        label: Sym,
        ty: Formula,
        scrut: Box<ProofTerm>,
        body: Box<ProofTerm>,
    },
    Abort(Formula, Box<ProofTerm>),
}

impl ProofTerm {
    pub fn var(x: &str) -> ProofTerm {
        ProofTerm::Var(sym(x))
    }

    pub fn lam(x: &str, ty: Formula, body: ProofTerm) -> ProofTerm {
        ProofTerm::Lam(sym(x), ty, Box::new(body))
    }

    pub fn app(f: ProofTerm, a: ProofTerm) -> ProofTerm {
        ProofTerm::App(Box::new(f), Box::new(a))
    }

    pub fn pair(a: ProofTerm, b: ProofTerm) -> ProofTerm {
        ProofTerm::Pair(Box::new(a), Box::new(b))
    }

    pub fn proj(side: Side, m: ProofTerm) -> ProofTerm {
        ProofTerm::Proj(side, Box::new(m))
    }

    pub fn inl(annot: Formula, m: ProofTerm) -> ProofTerm {
        ProofTerm::Inl(annot, Box::new(m))
    }

    pub fn inr(annot: Formula, m: ProofTerm) -> ProofTerm {
        ProofTerm::Inr(annot, Box::new(m))
    }

    pub fn case(scrut: ProofTerm, left: (&str, Formula, ProofTerm), right: (&str, Formula, ProofTerm)) -> ProofTerm {
        ProofTerm::Case {
            scrut: Box::new(scrut),
            left: Branch {
                var: sym(left.0),
                ty: left.1,
                body: Box::new(left.2),
            },
            right: Branch {
                var: sym(right.0),
                ty: right.1,
                body: Box::new(right.2),
            },
        }
    }

    pub fn tlam(x: Var, body: ProofTerm) -> ProofTerm {
        ProofTerm::TLam(x, Box::new(body))
    }

    pub fn tapp(m: ProofTerm, y: Var) -> ProofTerm {
        ProofTerm::TApp(Box::new(m), y)
    }

    pub fn pack(body: ProofTerm, witness: Var, var: &str, formula: Formula) -> ProofTerm {
        ProofTerm::Pack {
            body: Box::new(body),
            witness,
            var: sym(var),
            formula,
        }
    }

    pub fn let_in(eigen: Var, label: &str, ty: Formula, scrut: ProofTerm, body: ProofTerm) -> ProofTerm {
        ProofTerm::Let {
            eigen,
            label: sym(label),
            ty,
            scrut: Box::new(scrut),
            body: Box::new(body),
        }
    }

    pub fn abort(annot: Formula, m: ProofTerm) -> ProofTerm {
        ProofTerm::Abort(annot, Box::new(m))
    }

    pub fn size(&self) -> usize {
        1 + match self {
            ProofTerm::Var(_) => 0,
            ProofTerm::Pair(a, b) | ProofTerm::App(a, b) => a.size() + b.size(),
            ProofTerm::Proj(_, m)
            | ProofTerm::Inl(_, m)
            | ProofTerm::Inr(_, m)
            | ProofTerm::Lam(_, _, m)
            | ProofTerm::TLam(_, m)
            | ProofTerm::TApp(m, _)
            | ProofTerm::Pack { body: m, .. }
            | ProofTerm::Abort(_, m) => m.size(),
            ProofTerm::Case { scrut, left, right } => {
                scrut.size() + left.body.size() + right.body.size()
            }
            ProofTerm::Let { scrut, body, .. } => scrut.size() + body.size(),
        }
    }

    /// Rewrites every eigenvariable occurrence (in binders, witnesses and
    /// annotations) through `f`.
    pub fn map_fo_vars(&self, f: &mut dyn FnMut(&Var) -> Var) -> ProofTerm {
        use ProofTerm as T;
        let g = |a: &Formula, f: &mut dyn FnMut(&Var) -> Var| a.map_vars(&mut &mut *f);
        match self {
            T::Var(x) => T::Var(x.clone()),
            T::Pair(a, c) => T::Pair(Box::new(a.map_fo_vars(f)), Box::new(c.map_fo_vars(f))),
            T::Proj(s, m) => T::Proj(*s, Box::new(m.map_fo_vars(f))),
            T::Inl(a, m) => T::Inl(g(a, f), Box::new(m.map_fo_vars(f))),
            T::Inr(a, m) => T::Inr(g(a, f), Box::new(m.map_fo_vars(f))),
            T::Case { scrut, left, right } => {
                let scrut = Box::new(scrut.map_fo_vars(f));
                let arm = |b: &Branch, f: &mut dyn FnMut(&Var) -> Var| Branch {
                    var: b.var.clone(),
                    ty: g(&b.ty, f),
                    body: Box::new(b.body.map_fo_vars(f)),
                };
                let left = arm(left, f);
                let right = arm(right, f);
                T::Case { scrut, left, right }
            }
            T::Lam(x, a, m) => T::Lam(x.clone(), g(a, f), Box::new(m.map_fo_vars(f))),
            T::App(m, n) => T::App(Box::new(m.map_fo_vars(f)), Box::new(n.map_fo_vars(f))),
            T::TLam(x, m) => T::TLam(f(x), Box::new(m.map_fo_vars(f))),
            T::TApp(m, y) => {
                let m = Box::new(m.map_fo_vars(f));
                T::TApp(m, f(y))
            }
            T::Pack {
                body,
                witness,
                var,
                formula,
            } => T::Pack {
                body: Box::new(body.map_fo_vars(f)),
                witness: f(witness),
                var: var.clone(),
                formula: g(formula, f),
            },
            T::Let {
                eigen,
                label,
                ty,
                scrut,
                body,
            } => T::Let {
                eigen: f(eigen),
                label: label.clone(),
                ty: g(ty, f),
                scrut: Box::new(scrut.map_fo_vars(f)),
                body: Box::new(body.map_fo_vars(f)),
            },
            T::Abort(a, m) => T::Abort(g(a, f), Box::new(m.map_fo_vars(f))),
        }
    }

    /// Every first-order name written anywhere in the term.
    pub fn fo_names(&self, out: &mut BTreeSet<Sym>) {
        self.map_fo_vars(&mut |v| {
            if let Var::Named(n) = v {
                out.insert(n.clone());
            }
            v.clone()
        });
        self.visit_formulas(&mut |f| f.names(out));
    }

    fn visit_formulas(&self, f: &mut impl FnMut(&Formula)) {
        use ProofTerm as T;
        match self {
            T::Var(_) => {}
            T::Pair(a, b) | T::App(a, b) => {
                a.visit_formulas(f);
                b.visit_formulas(f);
            }
            T::Proj(_, m) | T::TLam(_, m) | T::TApp(m, _) => m.visit_formulas(f),
            T::Inl(a, m) | T::Inr(a, m) | T::Lam(_, a, m) | T::Abort(a, m) => {
                f(a);
                m.visit_formulas(f);
            }
            T::Case { scrut, left, right } => {
                scrut.visit_formulas(f);
                f(&left.ty);
                left.body.visit_formulas(f);
                f(&right.ty);
                right.body.visit_formulas(f);
            }
            T::Pack { body, formula, var, .. } => {
                f(&Formula::Exists(var.clone(), Box::new(formula.clone())));
                body.visit_formulas(f);
            }
            T::Let { ty, scrut, body, .. } => {
                f(ty);
                scrut.visit_formulas(f);
                body.visit_formulas(f);
            }
        }
    }

    /// Replaces eigenvariables by readable names that clash with nothing
    /// in the term or in `avoid`, so the printed term parses back.
    pub fn with_readable_eigens(&self, avoid: &BTreeSet<Sym>) -> ProofTerm {
        let mut eigens = BTreeSet::new();
        self.map_fo_vars(&mut |v| {
            if let Var::Eigen(e) = v {
                eigens.insert(*e);
            }
            v.clone()
        });
        if eigens.is_empty() {
            return self.clone();
        }
        let mut taken = avoid.clone();
        self.fo_names(&mut taken);
        let mut names = BTreeMap::new();
        let mut pool = ["Y", "Z", "U", "W", "V"].iter().map(|s| s.to_string()).chain((1..).map(|i| format!("Y{i}")));
        for e in eigens {
            let name = pool.find(|n| !taken.iter().any(|t| t.as_ref() == n)).expect("infinite pool");
            names.insert(e, Var::named(&name));
        }
        self.map_fo_vars(&mut |v| match v {
            Var::Eigen(e) => names[e].clone(),
            _ => v.clone(),
        })
    }
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

/// Free proof variables.
pub fn free_term_vars(m: &ProofTerm) -> BTreeSet<Sym> {
    use ProofTerm as T;
    match m {
        T::Var(x) => BTreeSet::from([x.clone()]),
        T::Pair(a, b) | T::App(a, b) => {
            let mut s = free_term_vars(a);
            s.extend(free_term_vars(b));
            s
        }
        T::Proj(_, m)
        | T::Inl(_, m)
        | T::Inr(_, m)
        | T::TLam(_, m)
        | T::TApp(m, _)
        | T::Pack { body: m, .. }
        | T::Abort(_, m) => free_term_vars(m),
        T::Case { scrut, left, right } => {
            let mut s = free_term_vars(scrut);
            let mut l = free_term_vars(&left.body);
            l.remove(&left.var);
            let mut r = free_term_vars(&right.body);
            r.remove(&right.var);
            s.extend(l);
            s.extend(r);
            s
        }
        T::Lam(x, _, m) => {
            let mut s = free_term_vars(m);
            s.remove(x);
            s
        }
        T::Let {
            label, scrut, body, ..
        } => {
            let mut s = free_term_vars(scrut);
            let mut b = free_term_vars(body);
            b.remove(label);
            s.extend(b);
            s
        }
    }
}

/// Free first-order variables, counting annotations and witnesses.
pub fn free_fo_vars(m: &ProofTerm) -> BTreeSet<Var> {
    use ProofTerm as T;
    match m {
        T::Var(_) => BTreeSet::new(),
        T::Pair(a, b) | T::App(a, b) => {
            let mut s = free_fo_vars(a);
            s.extend(free_fo_vars(b));
            s
        }
        T::Proj(_, m) => free_fo_vars(m),
        T::Inl(a, m) | T::Inr(a, m) | T::Lam(_, a, m) | T::Abort(a, m) => {
            let mut s = a.free_vars();
            s.extend(free_fo_vars(m));
            s
        }
        T::Case { scrut, left, right } => {
            let mut s = free_fo_vars(scrut);
            for b in [left, right] {
                s.extend(b.ty.free_vars());
                s.extend(free_fo_vars(&b.body));
            }
            s
        }
        T::TLam(x, m) => {
            let mut s = free_fo_vars(m);
            s.remove(x);
            s
        }
        T::TApp(m, y) => {
            let mut s = free_fo_vars(m);
            s.insert(y.clone());
            s
        }
        T::Pack {
            body,
            witness,
            var,
            formula,
        } => {
            let mut s = free_fo_vars(body);
            s.insert(witness.clone());
            s.extend(Formula::Exists(var.clone(), Box::new(formula.clone())).free_vars());
            s
        }
        T::Let {
            eigen,
            ty,
            scrut,
            body,
            ..
        } => {
            let mut inner = ty.free_vars();
            inner.extend(free_fo_vars(body));
            inner.remove(eigen);
            let mut s = free_fo_vars(scrut);
            s.extend(inner);
            s
        }
    }
}

/// Typing context: proof variables with their formulas. Later entries
/// shadow earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    entries: Vec<(Sym, Formula)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Formula)>) -> Context {
        let mut c = Context::new();
        for (x, f) in pairs {
            c.push(sym(x), f);
        }
        c
    }

    pub fn push(&mut self, x: Sym, f: Formula) {
        self.entries.push((x, f));
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    pub fn extended(&self, x: Sym, f: Formula) -> Context {
        let mut c = self.clone();
        c.push(x, f);
        c
    }

    pub fn lookup(&self, x: &str) -> Option<&Formula> {
        self.entries.iter().rev().find(|(y, _)| y.as_ref() == x).map(|(_, f)| f)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lookup(x).is_some()
    }

    /// Visible entries, shadowed ones omitted.
    pub fn entries(&self) -> Vec<(Sym, Formula)> {
        let mut seen = BTreeSet::new();
        let mut out: Vec<(Sym, Formula)> = self
            .entries
            .iter()
            .rev()
            .filter(|(x, _)| seen.insert(x.clone()))
            .cloned()
            .collect();
        out.reverse();
        out
    }

    /// First-order variables free in some visible assumption.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.entries().iter().flat_map(|(_, f)| f.free_vars()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries().len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// α-equivalence on terms: bound proof variables and bound first-order
/// variables may be renamed consistently.
pub fn term_alpha_eq(a: &ProofTerm, b: &ProofTerm) -> bool {
    canonical(a) == canonical(b)
}

/// Renames every binder to a positional name (`_0`, `_1`, ...); names with a
/// leading underscore cannot come from the parser, so nothing clashes.
fn canonical(m: &ProofTerm) -> ProofTerm {
    let mut n = 0;
    canon_in(m, &mut Vec::new(), &mut Vec::new(), &mut n)
}

fn rename_formula(f: &Formula, fo: &[(Var, Var)]) -> Formula {
    let mut named = Substitution::new();
    let mut eigens = BTreeMap::new();
    for (from, to) in fo {
        match from {
            Var::Named(x) => {
                named.insert(x.clone(), to.clone());
            }
            Var::Eigen(e) => {
                eigens.insert(*e, to.clone());
            }
        }
    }
    let g = f.rename_free(&named);
    if eigens.is_empty() {
        return normalize_binders(&g);
    }
    normalize_binders(&g.map_vars(&mut |v| match v {
        Var::Eigen(e) => eigens.get(e).cloned().unwrap_or_else(|| v.clone()),
        _ => v.clone(),
    }))
}

/// Renames formula binders by depth so that α-equal formulas become equal.
fn normalize_binders(f: &Formula) -> Formula {
    fn go(f: &Formula, depth: usize) -> Formula {
        match f {
            Formula::Atom(..) | Formula::Bottom => f.clone(),
            Formula::And(a, b) => Formula::and(go(a, depth), go(b, depth)),
            Formula::Or(a, b) => Formula::or(go(a, depth), go(b, depth)),
            Formula::Imp(a, b) => Formula::imp(go(a, depth), go(b, depth)),
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let fresh = sym(&format!("_b{depth}"));
                let body = a.subst(x, &Var::Named(fresh.clone())).expect("fresh");
                let body = Box::new(go(&body, depth + 1));
                if matches!(f, Formula::Forall(..)) {
                    Formula::Forall(fresh, body)
                } else {
                    Formula::Exists(fresh, body)
                }
            }
        }
    }
    go(f, 0)
}

fn canon_in(m: &ProofTerm, pv: &mut Vec<(Sym, Sym)>, fo: &mut Vec<(Var, Var)>, n: &mut usize) -> ProofTerm {
    use ProofTerm as T;
    let fresh = |n: &mut usize| {
        *n += 1;
        sym(&format!("_{}", *n - 1))
    };
    let fo_var = |v: &Var, fo: &[(Var, Var)]| {
        fo.iter().rev().find(|(a, _)| a == v).map(|(_, b)| b.clone()).unwrap_or_else(|| v.clone())
    };
    match m {
        T::Var(x) => T::Var(pv.iter().rev().find(|(a, _)| a == x).map(|(_, b)| b.clone()).unwrap_or_else(|| x.clone())),
        T::Pair(a, b) => T::Pair(Box::new(canon_in(a, pv, fo, n)), Box::new(canon_in(b, pv, fo, n))),
        T::App(a, b) => T::App(Box::new(canon_in(a, pv, fo, n)), Box::new(canon_in(b, pv, fo, n))),
        T::Proj(s, a) => T::Proj(*s, Box::new(canon_in(a, pv, fo, n))),
        T::Inl(f, a) => T::Inl(rename_formula(f, fo), Box::new(canon_in(a, pv, fo, n))),
        T::Inr(f, a) => T::Inr(rename_formula(f, fo), Box::new(canon_in(a, pv, fo, n))),
        T::Abort(f, a) => T::Abort(rename_formula(f, fo), Box::new(canon_in(a, pv, fo, n))),
        T::Lam(x, f, a) => {
            let ty = rename_formula(f, fo);
            let y = fresh(n);
            pv.push((x.clone(), y.clone()));
            let body = canon_in(a, pv, fo, n);
            pv.pop();
            T::Lam(y, ty, Box::new(body))
        }
        T::Case { scrut, left, right } => {
            let scrut = Box::new(canon_in(scrut, pv, fo, n));
            let mut arm = |b: &Branch, n: &mut usize| {
                let ty = rename_formula(&b.ty, fo);
                let y = fresh(n);
                pv.push((b.var.clone(), y.clone()));
                let body = Box::new(canon_in(&b.body, pv, fo, n));
                pv.pop();
                Branch { var: y, ty, body }
            };
            let left = arm(left, n);
            let right = arm(right, n);
            T::Case { scrut, left, right }
        }
        T::TLam(x, a) => {
            let y = Var::Named(fresh(n));
            fo.push((x.clone(), y.clone()));
            let body = canon_in(a, pv, fo, n);
            fo.pop();
            T::TLam(y, Box::new(body))
        }
        T::TApp(a, y) => T::TApp(Box::new(canon_in(a, pv, fo, n)), fo_var(y, fo)),
        T::Pack {
            body,
            witness,
            var,
            formula,
        } => {
            let ex = rename_formula(&Formula::Exists(var.clone(), Box::new(formula.clone())), fo);
            let Formula::Exists(var, formula) = ex else { unreachable!() };
            T::Pack {
                body: Box::new(canon_in(body, pv, fo, n)),
                witness: fo_var(witness, fo),
                var,
                formula: *formula,
            }
        }
        T::Let {
            eigen,
            label,
            ty,
            scrut,
            body,
        } => {
            let scrut = Box::new(canon_in(scrut, pv, fo, n));
            let e = Var::Named(fresh(n));
            let l = fresh(n);
            fo.push((eigen.clone(), e.clone()));
            let ty = rename_formula(ty, fo);
            pv.push((label.clone(), l.clone()));
            let body = Box::new(canon_in(body, pv, fo, n));
            pv.pop();
            fo.pop();
            T::Let {
                eigen: e,
                label: l,
                ty,
                scrut,
                body,
            }
        }
    }
}

/// η-expands `m : ty` until every component is a spine of pseudo-atomic
/// or ⊥ type. `fresh` supplies unused proof labels and eigenvariables.
pub fn eta_expand(m: ProofTerm, ty: &Formula, fresh: &mut dyn FnMut(EtaFresh) -> Var) -> ProofTerm {
    match ty {
        Formula::Imp(a, b) => {
            let Var::Named(y) = fresh(EtaFresh::Label) else {
                unreachable!("labels are named")
            };
            let arg = eta_expand(ProofTerm::Var(y.clone()), a, fresh);
            let body = eta_expand(ProofTerm::app(m, arg), b, fresh);
            ProofTerm::Lam(y, (**a).clone(), Box::new(body))
        }
        Formula::And(a, b) => {
            let l = eta_expand(ProofTerm::proj(Side::Left, m.clone()), a, fresh);
            let r = eta_expand(ProofTerm::proj(Side::Right, m), b, fresh);
            ProofTerm::pair(l, r)
        }
        Formula::Forall(x, a) => {
            let z = fresh(EtaFresh::Eigen);
            let body = eta_expand(ProofTerm::tapp(m, z.clone()), &a.subst_avoiding(x, &z), fresh);
            ProofTerm::tlam(z, body)
        }
        _ => m,
    }
}

/// What [`eta_expand`] asks its name supply for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaFresh {
    Label,
    Eigen,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn free_term_variable_clauses() {
        assert_eq!(free_term_vars(&ProofTerm::var("x")), BTreeSet::from([sym("x")]));
        assert!(free_term_vars(&ProofTerm::lam("x", f("p"), ProofTerm::var("x"))).is_empty());
        let c = ProofTerm::case(
            ProofTerm::var("z"),
            ("x", f("p"), ProofTerm::var("x")),
            ("y", f("q"), ProofTerm::var("w")),
        );
        assert_eq!(free_term_vars(&c), BTreeSet::from([sym("z"), sym("w")]));
    }

    #[test]
    fn free_first_order_variable_clauses() {
        let m = ProofTerm::inl(f("P(x) \\/ q"), ProofTerm::var("z"));
        assert_eq!(free_fo_vars(&m), BTreeSet::from([Var::named("x")]));
        let t = ProofTerm::tlam(Var::named("X"), ProofTerm::tapp(ProofTerm::var("f"), Var::named("X")));
        assert!(free_fo_vars(&t).is_empty());
        let a = ProofTerm::tapp(ProofTerm::var("f"), Var::named("Y"));
        assert_eq!(free_fo_vars(&a), BTreeSet::from([Var::named("Y")]));
    }

    #[test]
    fn alpha_equivalence_of_terms() {
        let a = ProofTerm::lam("x", f("p"), ProofTerm::var("x"));
        let b = ProofTerm::lam("y", f("p"), ProofTerm::var("y"));
        assert!(term_alpha_eq(&a, &b));
        let c = ProofTerm::lam("y", f("p"), ProofTerm::var("x"));
        assert!(!term_alpha_eq(&a, &c));
        let t1 = ProofTerm::tlam(
            Var::named("Y"),
            ProofTerm::lam("h", f("P(Y)"), ProofTerm::tapp(ProofTerm::var("g"), Var::named("Y"))),
        );
        let t2 = ProofTerm::tlam(
            Var::eigen(4),
            ProofTerm::lam(
                "k",
                Formula::atom_vars("P", vec![Var::eigen(4)]),
                ProofTerm::tapp(ProofTerm::var("g"), Var::eigen(4)),
            ),
        );
        assert!(term_alpha_eq(&t1, &t2));
    }

    #[test]
    fn readable_eigens_avoid_existing_names() {
        let m = ProofTerm::tlam(Var::eigen(1), ProofTerm::tapp(ProofTerm::var("x"), Var::eigen(1)));
        let avoid = BTreeSet::from([sym("Y")]);
        let r = m.with_readable_eigens(&avoid);
        assert_eq!(r, ProofTerm::tlam(Var::named("Z"), ProofTerm::tapp(ProofTerm::var("x"), Var::named("Z"))));
    }

    #[test]
    fn eta_expansion_of_a_function_variable() {
        let mut k = 0;
        let mut fresh = |w: EtaFresh| {
            k += 1;
            match w {
                EtaFresh::Label => Var::named(&format!("u{k}")),
                EtaFresh::Eigen => Var::eigen(k),
            }
        };
        let ty = f("(p -> q) -> r /\\ s");
        let m = eta_expand(ProofTerm::var("y"), &ty, &mut fresh);
        assert_eq!(m.to_string(), "\\u1:p -> q. <p1 (y (\\u2:p. u1 u2)), p2 (y (\\u2:p. u1 u2))>");
    }
}
