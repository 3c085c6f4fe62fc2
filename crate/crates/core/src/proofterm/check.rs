use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{Context, ProofTerm, Side};
use crate::formula::{alpha_eq, fresh_name, sym, Formula, Sym, Var};

/// Natural-deduction rules, used to report where checking failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Var,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    ImpI,
    ImpE,
    AllI,
    AllE,
    ExI,
    ExE,
    BotE,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Var => "(var)",
            Rule::AndI => "(∧I)",
            Rule::AndE1 => "(∧E1)",
            Rule::AndE2 => "(∧E2)",
            Rule::OrI1 => "(∨I1)",
            Rule::OrI2 => "(∨I2)",
            Rule::OrE => "(∨E)",
            Rule::ImpI => "(→I)",
            Rule::ImpE => "(→E)",
            Rule::AllI => "(∀I)",
            Rule::AllE => "(∀E)",
            Rule::ExI => "(∃I)",
            Rule::ExE => "(∃E)",
            Rule::BotE => "(⊥E)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unbound proof variable {0}")]
    UnboundVariable(Sym),
    #[error("{rule}: expected {expected}, found {found}")]
    RuleMismatch {
        rule: Rule,
        expected: String,
        found: String,
    },
    #[error("{rule}: eigenvariable condition violated for {var}")]
    EigenvariableViolation { rule: Rule, var: Var },
}

fn mismatch(rule: Rule, expected: impl fmt::Display, found: impl fmt::Display) -> CheckError {
    CheckError::RuleMismatch {
        rule,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Decides `ctx ⊢ m : goal`.
pub fn type_check(ctx: &Context, m: &ProofTerm, goal: &Formula) -> Result<(), CheckError> {
    Checker { ctx: ctx.clone() }.check(m, goal)
}

/// Computes the unique formula `m` proves under `ctx`, if any.
pub fn synthesize(ctx: &Context, m: &ProofTerm) -> Result<Formula, CheckError> {
    Checker { ctx: ctx.clone() }.synth(m)
}

struct Checker {
    ctx: Context,
}

/// `body[x := y]` with bound variables renamed out of the way.
fn instantiate(x: &Sym, body: &Formula, y: &Var) -> Formula {
    body.subst_avoiding(x, y)
}

impl Checker {
    fn under<T>(&mut self, x: &Sym, f: &Formula, k: impl FnOnce(&mut Self) -> T) -> T {
        self.ctx.push(x.clone(), f.clone());
        let r = k(self);
        self.ctx.pop();
        r
    }

    fn check(&mut self, m: &ProofTerm, goal: &Formula) -> Result<(), CheckError> {
        use ProofTerm as T;
        match m {
            T::Pair(a, b) => match goal {
                Formula::And(g1, g2) => {
                    self.check(a, g1)?;
                    self.check(b, g2)
                }
                _ => Err(mismatch(Rule::AndI, "a conjunction", goal)),
            },
            T::Inl(annot, a) | T::Inr(annot, a) => {
                let rule = if matches!(m, T::Inl(..)) { Rule::OrI1 } else { Rule::OrI2 };
                let Formula::Or(l, r) = annot else {
                    return Err(mismatch(rule, "a disjunction annotation", annot));
                };
                if !alpha_eq(annot, goal) {
                    return Err(mismatch(rule, goal, annot));
                }
                self.check(a, if rule == Rule::OrI1 { l } else { r })
            }
            T::Lam(x, ty, body) => match goal {
                Formula::Imp(a, b) => {
                    if !alpha_eq(ty, a) {
                        return Err(mismatch(Rule::ImpI, a, ty));
                    }
                    self.under(x, ty, |c| c.check(body, b))
                }
                _ => Err(mismatch(Rule::ImpI, "an implication", goal)),
            },
            T::TLam(x, body) => match goal {
                Formula::Forall(y, phi) => {
                    if self.ctx.free_vars().contains(x) || goal.free_vars().contains(x) {
                        return Err(CheckError::EigenvariableViolation {
                            rule: Rule::AllI,
                            var: x.clone(),
                        });
                    }
                    self.check(body, &instantiate(y, phi, x))
                }
                _ => Err(mismatch(Rule::AllI, "a universal formula", goal)),
            },
            T::Pack {
                body,
                witness,
                var,
                formula,
            } => {
                let ex = Formula::Exists(var.clone(), Box::new(formula.clone()));
                if !matches!(goal, Formula::Exists(..)) {
                    return Err(mismatch(Rule::ExI, "an existential formula", goal));
                }
                if !alpha_eq(&ex, goal) {
                    return Err(mismatch(Rule::ExI, goal, ex));
                }
                self.check(body, &instantiate(var, formula, witness))
            }
            T::Case { scrut, left, right } => {
                let st = self.synth(scrut)?;
                let Formula::Or(a, b) = &st else {
                    return Err(mismatch(Rule::OrE, "a disjunction", st));
                };
                if !alpha_eq(a, &left.ty) {
                    return Err(mismatch(Rule::OrE, a, &left.ty));
                }
                if !alpha_eq(b, &right.ty) {
                    return Err(mismatch(Rule::OrE, b, &right.ty));
                }
                self.under(&left.var, &left.ty, |c| c.check(&left.body, goal))?;
                self.under(&right.var, &right.ty, |c| c.check(&right.body, goal))
            }
            T::Let {
                eigen,
                label,
                ty,
                scrut,
                body,
            } => {
                let st = self.synth(scrut)?;
                self.let_premise(eigen, ty, &st, goal)?;
                self.under(label, ty, |c| c.check(body, goal))
            }
            T::Abort(annot, a) => {
                if !alpha_eq(annot, goal) {
                    return Err(mismatch(Rule::BotE, goal, annot));
                }
                self.check(a, &Formula::Bottom)
            }
            T::Var(_) | T::App(..) | T::Proj(..) | T::TApp(..) => {
                let found = self.synth(m)?;
                if alpha_eq(&found, goal) {
                    Ok(())
                } else {
                    let rule = match m {
                        T::Var(_) => Rule::Var,
                        T::App(..) => Rule::ImpE,
                        T::Proj(Side::Left, _) => Rule::AndE1,
                        T::Proj(Side::Right, _) => Rule::AndE2,
                        _ => Rule::AllE,
                    };
                    Err(mismatch(rule, goal, found))
                }
            }
        }
    }

    /// Side conditions of (∃E) shared by both modes. `result` is the
    /// conclusion when known.
    fn let_premise(&self, eigen: &Var, ty: &Formula, st: &Formula, result: &Formula) -> Result<(), CheckError> {
        let Formula::Exists(z, chi) = st else {
            return Err(mismatch(Rule::ExE, "an existential formula", st));
        };
        let opened = instantiate(z, chi, eigen);
        if !alpha_eq(&opened, ty) {
            return Err(mismatch(Rule::ExE, opened, ty));
        }
        if self.ctx.free_vars().contains(eigen) || st.free_vars().contains(eigen) || result.free_vars().contains(eigen) {
            return Err(CheckError::EigenvariableViolation {
                rule: Rule::ExE,
                var: eigen.clone(),
            });
        }
        Ok(())
    }

    fn synth(&mut self, m: &ProofTerm) -> Result<Formula, CheckError> {
        use ProofTerm as T;
        match m {
            T::Var(x) => self.ctx.lookup(x).cloned().ok_or_else(|| CheckError::UnboundVariable(x.clone())),
            T::App(f, a) => {
                let ft = self.synth(f)?;
                match ft {
                    Formula::Imp(l, r) => {
                        self.check(a, &l)?;
                        Ok(*r)
                    }
                    other => Err(mismatch(Rule::ImpE, "an implication", other)),
                }
            }
            T::Proj(side, a) => {
                let rule = if *side == Side::Left { Rule::AndE1 } else { Rule::AndE2 };
                match self.synth(a)? {
                    Formula::And(l, r) => Ok(if *side == Side::Left { *l } else { *r }),
                    other => Err(mismatch(rule, "a conjunction", other)),
                }
            }
            T::TApp(a, y) => match self.synth(a)? {
                Formula::Forall(x, phi) => phi.subst(&x, y).map_err(|_| CheckError::EigenvariableViolation {
                    rule: Rule::AllE,
                    var: y.clone(),
                }),
                other => Err(mismatch(Rule::AllE, "a universal formula", other)),
            },
            T::Pair(a, b) => Ok(Formula::and(self.synth(a)?, self.synth(b)?)),
            T::Inl(annot, _) | T::Inr(annot, _) | T::Abort(annot, _) => {
                self.check(m, annot)?;
                Ok(annot.clone())
            }
            T::Pack { var, formula, .. } => {
                let goal = Formula::Exists(var.clone(), Box::new(formula.clone()));
                self.check(m, &goal)?;
                Ok(goal)
            }
            T::Lam(x, ty, body) => {
                let r = self.under(x, ty, |c| c.synth(body))?;
                Ok(Formula::imp(ty.clone(), r))
            }
            T::TLam(x, body) => {
                if self.ctx.free_vars().contains(x) {
                    return Err(CheckError::EigenvariableViolation {
                        rule: Rule::AllI,
                        var: x.clone(),
                    });
                }
                let phi = self.synth(body)?;
                Ok(generalize(x, &phi))
            }
            T::Case { scrut, left, right } => {
                let st = self.synth(scrut)?;
                let Formula::Or(a, b) = &st else {
                    return Err(mismatch(Rule::OrE, "a disjunction", st));
                };
                if !alpha_eq(a, &left.ty) {
                    return Err(mismatch(Rule::OrE, a, &left.ty));
                }
                if !alpha_eq(b, &right.ty) {
                    return Err(mismatch(Rule::OrE, b, &right.ty));
                }
                let l = self.under(&left.var, &left.ty, |c| c.synth(&left.body))?;
                self.under(&right.var, &right.ty, |c| c.check(&right.body, &l))?;
                Ok(l)
            }
            T::Let {
                eigen,
                label,
                ty,
                scrut,
                body,
            } => {
                let st = self.synth(scrut)?;
                let result = self.under(label, ty, |c| c.synth(body))?;
                self.let_premise(eigen, ty, &st, &result)?;
                Ok(result)
            }
        }
    }
}

/// `∀X.phi` where the variable `x` of `phi` becomes bound.
fn generalize(x: &Var, phi: &Formula) -> Formula {
    match x {
        Var::Named(n) => Formula::Forall(n.clone(), Box::new(phi.clone())),
        Var::Eigen(e) => {
            let mut taken = BTreeSet::new();
            phi.names(&mut taken);
            let name = fresh_name(&format!("x{}", e.0), &taken);
            let body = phi.map_vars(&mut |v| if v == x { Var::Named(name.clone()) } else { v.clone() });
            Formula::Forall(sym(&name), Box::new(body))
        }
    }
}
