use super::check::{synthesize, type_check, CheckError};
use super::{Context, ProofTerm, Side};
use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NfClass {
    Introduction,
    ProperEliminator,
    ImproperEliminator,
    NotNormal,
}

/// Syntactic classification; any redex (an introduction or an improper
/// eliminator in eliminated position) makes the term `NotNormal`.
pub fn classify_nf(m: &ProofTerm) -> NfClass {
    use NfClass::*;
    use ProofTerm as T;
    let normal = |n: &ProofTerm| classify_nf(n) != NotNormal;
    let proper = |n: &ProofTerm| classify_nf(n) == ProperEliminator;
    match m {
        T::Var(_) => ProperEliminator,
        T::Lam(_, _, n) | T::TLam(_, n) | T::Inl(_, n) | T::Inr(_, n) | T::Pack { body: n, .. } => {
            if normal(n) {
                Introduction
            } else {
                NotNormal
            }
        }
        T::Pair(a, b) => {
            if normal(a) && normal(b) {
                Introduction
            } else {
                NotNormal
            }
        }
        T::App(p, n) => {
            if proper(p) && normal(n) {
                ProperEliminator
            } else {
                NotNormal
            }
        }
        T::Proj(_, p) | T::TApp(p, _) => {
            if proper(p) {
                ProperEliminator
            } else {
                NotNormal
            }
        }
        T::Abort(_, p) => {
            if proper(p) {
                ImproperEliminator
            } else {
                NotNormal
            }
        }
        T::Case { scrut, left, right } => {
            if proper(scrut) && normal(&left.body) && normal(&right.body) {
                ImproperEliminator
            } else {
                NotNormal
            }
        }
        T::Let { scrut, body, .. } => {
            if proper(scrut) && normal(body) {
                ImproperEliminator
            } else {
                NotNormal
            }
        }
    }
}

/// Whether `m` is a long normal form of type `goal` under `ctx`; fails
/// when `m` does not have that type.
pub fn is_lnf(ctx: &Context, m: &ProofTerm, goal: &Formula) -> Result<bool, CheckError> {
    type_check(ctx, m, goal)?;
    Ok(lnf(&mut ctx.clone(), m, goal))
}

fn quasi_atomic(f: &Formula) -> bool {
    f.is_pseudo_atom() || *f == Formula::Bottom
}

/// Assumes `ctx ⊢ m : goal` holds.
fn lnf(ctx: &mut Context, m: &ProofTerm, goal: &Formula) -> bool {
    use ProofTerm as T;
    let within = |ctx: &mut Context, x: &crate::formula::Sym, ty: &Formula, n: &ProofTerm, g: &Formula| {
        ctx.push(x.clone(), ty.clone());
        let r = lnf(ctx, n, g);
        ctx.pop();
        r
    };
    match (m, goal) {
        (T::Lam(x, ty, body), Formula::Imp(_, b)) => within(ctx, x, ty, body, b),
        (T::Pair(a, b), Formula::And(ga, gb)) => lnf(ctx, a, ga) && lnf(ctx, b, gb),
        (T::Inl(_, a), Formula::Or(l, _)) => lnf(ctx, a, l),
        (T::Inr(_, a), Formula::Or(_, r)) => lnf(ctx, a, r),
        (T::TLam(x, body), Formula::Forall(y, phi)) => lnf(ctx, body, &phi.subst_avoiding(y, x)),
        (
            T::Pack {
                body,
                witness,
                var,
                formula,
            },
            _,
        ) => lnf(ctx, body, &formula.subst_avoiding(var, witness)),
        (T::Case { scrut, left, right }, _) => {
            quasi_long(ctx, scrut)
                && within(ctx, &left.var, &left.ty, &left.body, goal)
                && within(ctx, &right.var, &right.ty, &right.body, goal)
        }
        (
            T::Let {
                label, ty, scrut, body, ..
            },
            _,
        ) => quasi_long(ctx, scrut) && within(ctx, label, ty, body, goal),
        (T::Abort(_, p), _) => quasi_long(ctx, p),
        (T::Var(_) | T::App(..) | T::Proj(..) | T::TApp(..), _) => quasi_long(ctx, m),
        _ => false,
    }
}

/// A spine of type pseudo-atom or ⊥ whose arguments are long normal forms.
fn quasi_long(ctx: &mut Context, p: &ProofTerm) -> bool {
    match spine_type(ctx, p) {
        Some(t) => quasi_atomic(&t),
        None => false,
    }
}

/// The type of a proper-eliminator spine whose arguments are all lnfs.
fn spine_type(ctx: &mut Context, p: &ProofTerm) -> Option<Formula> {
    use ProofTerm as T;
    match p {
        T::Var(x) => ctx.lookup(x).cloned(),
        T::App(f, a) => match spine_type(ctx, f)? {
            Formula::Imp(l, r) => lnf(ctx, a, &l).then_some(*r),
            _ => None,
        },
        T::Proj(side, a) => match spine_type(ctx, a)? {
            Formula::And(l, r) => Some(if *side == Side::Left { *l } else { *r }),
            _ => None,
        },
        T::TApp(f, _) => {
            spine_type(ctx, f)?;
            synthesize(ctx, p).ok()
        }
        _ => None,
    }
}
