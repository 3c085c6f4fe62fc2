//! Decision procedure for intuitionistic propositional logic, independent of
//! the automaton pipeline. Uses the contraction-free sequent calculus G4ip,
//! which terminates without any fuel.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use thiserror::Error;

use crate::formula::{print, Formula, Sym};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("not a propositional formula: {0}")]
    NotPropositional(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum P {
    Atom(u32),
    Bot,
    And(Rc<P>, Rc<P>),
    Or(Rc<P>, Rc<P>),
    Imp(Rc<P>, Rc<P>),
}

fn lower(f: &Formula, atoms: &mut BTreeMap<Sym, u32>) -> Option<Rc<P>> {
    Some(Rc::new(match f {
        Formula::Atom(p, args) if args.is_empty() => {
            let n = atoms.len() as u32;
            P::Atom(*atoms.entry(p.name.clone()).or_insert(n))
        }
        Formula::Bottom => P::Bot,
        Formula::And(a, b) => P::And(lower(a, atoms)?, lower(b, atoms)?),
        Formula::Or(a, b) => P::Or(lower(a, atoms)?, lower(b, atoms)?),
        Formula::Imp(a, b) => P::Imp(lower(a, atoms)?, lower(b, atoms)?),
        _ => return None,
    }))
}

/// A sequent whose context has been saturated under the invertible left
/// rules: only atoms and implications with an atomic or implicational
/// antecedent remain.
type Ctx = Vec<Rc<P>>;

#[derive(Default)]
struct Prover {
    memo: HashMap<(Ctx, Rc<P>), bool>,
}

impl Prover {
    /// Adds `todo` to `ctx` applying the invertible left rules. Returns the
    /// list of saturated contexts that all have to prove the goal, or `None`
    /// when ⊥ was found (the sequent holds trivially).
    fn saturate(&self, ctx: Ctx, mut todo: Vec<Rc<P>>) -> Option<Vec<Ctx>> {
        let mut ctx = ctx;
        while let Some(f) = todo.pop() {
            match &*f {
                P::Bot => return None,
                P::And(a, b) => {
                    todo.push(a.clone());
                    todo.push(b.clone());
                }
                P::Or(a, b) => {
                    let mut out = Vec::new();
                    for side in [a, b] {
                        let mut t = todo.clone();
                        t.push(side.clone());
                        if let Some(cs) = self.saturate(ctx.clone(), t) {
                            out.extend(cs);
                        }
                    }
                    return Some(out);
                }
                P::Imp(a, b) => match &**a {
                    P::Bot => {}
                    P::And(c, d) => todo.push(Rc::new(P::Imp(
                        c.clone(),
                        Rc::new(P::Imp(d.clone(), b.clone())),
                    ))),
                    P::Or(c, d) => {
                        todo.push(Rc::new(P::Imp(c.clone(), b.clone())));
                        todo.push(Rc::new(P::Imp(d.clone(), b.clone())));
                    }
                    P::Atom(_) if ctx.contains(a) => todo.push(b.clone()),
                    _ => insert(&mut ctx, f.clone()),
                },
                P::Atom(_) => {
                    if !ctx.contains(&f) {
                        // Implications waiting on this atom fire now.
                        let (fire, keep): (Vec<_>, Vec<_>) = ctx
                            .into_iter()
                            .partition(|g| matches!(&**g, P::Imp(a, _) if *a == f));
                        ctx = keep;
                        for g in fire {
                            if let P::Imp(_, b) = &*g {
                                todo.push(b.clone());
                            }
                        }
                        insert(&mut ctx, f.clone());
                    }
                }
            }
        }
        Some(vec![ctx])
    }

    fn prove(&mut self, ctx: Ctx, todo: Vec<Rc<P>>, goal: &Rc<P>) -> bool {
        match self.saturate(ctx, todo) {
            None => true,
            Some(cs) => cs.into_iter().all(|c| self.right(c, goal)),
        }
    }

    fn right(&mut self, ctx: Ctx, goal: &Rc<P>) -> bool {
        let key = (ctx, goal.clone());
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let (ctx, _) = key;
        let r = self.right_uncached(&ctx, goal);
        self.memo.insert((ctx, goal.clone()), r);
        r
    }

    fn right_uncached(&mut self, ctx: &Ctx, goal: &Rc<P>) -> bool {
        match &**goal {
            P::And(a, b) => {
                return self.right(ctx.clone(), a) && self.right(ctx.clone(), b);
            }
            P::Imp(a, b) => return self.prove(ctx.clone(), vec![a.clone()], b),
            P::Atom(_) if ctx.contains(goal) => return true,
            _ => {}
        }
        if let P::Or(a, b) = &**goal {
            if self.right(ctx.clone(), a) || self.right(ctx.clone(), b) {
                return true;
            }
        }
        // (C → D) → B ∈ Γ:  Γ', D → B ⊢ C → D  and  Γ', B ⊢ goal.
        for (i, f) in ctx.iter().enumerate() {
            let P::Imp(a, b) = &**f else { continue };
            let P::Imp(c, d) = &**a else { continue };
            let mut rest = ctx.clone();
            rest.remove(i);
            let db = Rc::new(P::Imp(d.clone(), b.clone()));
            let cd = Rc::new(P::Imp(c.clone(), d.clone()));
            if self.prove(rest.clone(), vec![db], &cd) && self.prove(rest, vec![b.clone()], goal) {
                return true;
            }
        }
        false
    }
}

fn insert(ctx: &mut Ctx, f: Rc<P>) {
    if let Err(i) = ctx.binary_search(&f) {
        ctx.insert(i, f);
    }
}

/// Decides intuitionistic validity of a closed propositional formula.
pub fn decide_prop(phi: &Formula) -> Result<bool, OracleError> {
    let p = lower(phi, &mut BTreeMap::new())
        .ok_or_else(|| OracleError::NotPropositional(print(phi)))?;
    Ok(Prover::default().prove(Vec::new(), Vec::new(), &p))
}
