//! End-to-end proving: search for an accepting run, read a proof term off
//! it, and check that term independently.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::construction::{build, Construction, ConstructionError};
use crate::formula::{sym, Eigen, Formula, FormulaError, FormulaTree, Sym, Var};
use crate::machine::{
    accepts, ArcadianAutomaton, Budget, ExtractionTag as Tag, Flavor, Id, Polarity, RunStep, RunTree,
    SearchOutcome, SearchStats,
};
use crate::proofterm::{eta_expand, is_lnf, type_check, CheckError, Context, EtaFresh, ProofTerm, Side};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("malformed run: {0}")]
    MalformedRun(String),
    #[error("extracted term was rejected: {0}")]
    Rejected(#[from] CheckError),
    #[error("extracted term is not in long normal form")]
    NotLong,
}

impl From<FormulaError> for EngineError {
    fn from(e: FormulaError) -> EngineError {
        EngineError::MalformedRun(e.to_string())
    }
}

#[derive(Clone, Debug)]
pub enum ProveResult {
    Proved {
        run: RunTree,
        term: ProofTerm,
        stats: SearchStats,
    },
    NotFoundWithinFuel(SearchStats),
    /// The bounded search space was exhausted. Not a refutation: witnesses
    /// are drawn only from eigenvariables already introduced.
    Exhausted(SearchStats),
}

impl ProveResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProveResult::Proved { .. })
    }

    pub fn term(&self) -> Option<&ProofTerm> {
        match self {
            ProveResult::Proved { term, .. } => Some(term),
            _ => None,
        }
    }

    pub fn run(&self) -> Option<&RunTree> {
        match self {
            ProveResult::Proved { run, .. } => Some(run),
            _ => None,
        }
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            ProveResult::Proved { stats, .. } | ProveResult::NotFoundWithinFuel(stats) | ProveResult::Exhausted(stats) => {
                stats
            }
        }
    }
}

/// A proving attempt together with the automaton it ran on.
#[derive(Clone, Debug)]
pub struct Attempt {
    /// The formula actually proved (the universal closure of the input).
    pub formula: Formula,
    pub construction: Construction,
    pub result: ProveResult,
}

impl Attempt {
    pub fn automaton(&self) -> &ArcadianAutomaton {
        &self.construction.automaton
    }
}

/// Searches for a proof of `phi` (closed universally first), extracts the
/// term and verifies it before returning.
pub fn prove(phi: &Formula, fuel: Budget) -> Result<Attempt, EngineError> {
    let formula = phi.universal_closure();
    let construction = build(&formula)?;
    let aut = &construction.automaton;
    let result = match accepts(aut, &aut.initial_id(), fuel) {
        SearchOutcome::Accepted { run, stats } => {
            let term = extract(&run, aut)?;
            type_check(&Context::new(), &term, &formula)?;
            if !is_lnf(&Context::new(), &term, &formula)? {
                return Err(EngineError::NotLong);
            }
            ProveResult::Proved { run, term, stats }
        }
        SearchOutcome::FuelExhausted(s) => ProveResult::NotFoundWithinFuel(s),
        SearchOutcome::ProvenUnreachable(s) => ProveResult::Exhausted(s),
    };
    Ok(Attempt {
        formula,
        construction,
        result,
    })
}

/// `∅ ⊢ m : phi`.
pub fn verify(phi: &Formula, m: &ProofTerm) -> bool {
    type_check(&Context::new(), m, phi).is_ok()
}

/// The term with eigenvariables renamed to readable names that do not
/// clash with the names of `goal`.
pub fn readable(term: &ProofTerm, goal: &Formula) -> ProofTerm {
    let mut avoid = BTreeSet::new();
    goal.names(&mut avoid);
    term.with_readable_eigens(&avoid)
}

struct Extractor<'a> {
    aut: &'a ArcadianAutomaton,
    labels: BTreeSet<Sym>,
    next_label: usize,
    next_eigen: u32,
}

fn malformed(msg: impl Into<String>) -> EngineError {
    EngineError::MalformedRun(msg.into())
}

impl Extractor<'_> {
    fn tree(&self) -> &FormulaTree {
        self.aut.tree()
    }

    fn goal(&self, id: &Id) -> Result<Formula, EngineError> {
        Ok(self.tree().instantiate(id.node, &id.w)?)
    }

    /// The assumption added last in `id`.
    fn newest(&self, id: &Id) -> Result<(Sym, Formula), EngineError> {
        let e = id.store.last().ok_or_else(|| malformed("store is empty"))?;
        Ok((e.label.clone(), self.tree().instantiate(e.node, &e.binding)?))
    }

    fn fresh(&mut self, what: EtaFresh) -> Var {
        match what {
            EtaFresh::Label => loop {
                self.next_label += 1;
                let s = sym(&format!("u{}", self.next_label));
                if !self.labels.contains(&s) {
                    return Var::Named(s);
                }
            },
            EtaFresh::Eigen => {
                self.next_eigen += 1;
                Var::Eigen(Eigen(self.next_eigen))
            }
        }
    }

    fn tag(&self, s: &RunStep) -> Result<Tag, EngineError> {
        self.aut
            .instruction(s.instruction)
            .tag
            .ok_or_else(|| malformed("untagged instruction at a universal ID"))
    }

    fn eigen(s: &RunStep) -> Result<Var, EngineError> {
        s.choice
            .eigen
            .map(Var::Eigen)
            .ok_or_else(|| malformed("missing eigenvariable choice"))
    }

    fn label(s: &RunStep) -> Result<Sym, EngineError> {
        s.choice.label.clone().ok_or_else(|| malformed("missing label choice"))
    }

    fn term(&mut self, t: &RunTree) -> Result<ProofTerm, EngineError> {
        let state = self.aut.state(t.id.state);
        match state.polarity() {
            Polarity::Existential => {
                let [s] = t.steps.as_slice() else {
                    return Err(malformed("existential ID needs one step"));
                };
                let ins = self.aut.instruction(s.instruction);
                let Some(tag) = ins.tag else {
                    return self.term(&s.child);
                };
                match tag {
                    Tag::Var => {
                        let v = ProofTerm::Var(Self::label(s)?);
                        let goal = self.goal(&t.id)?;
                        if state.id.flavor == Flavor::Plain && !(goal.is_pseudo_atom() || goal == Formula::Bottom) {
                            Ok(eta_expand(v, &goal, &mut |w| self.fresh(w)))
                        } else {
                            Ok(v)
                        }
                    }
                    Tag::Inl => Ok(ProofTerm::Inl(self.goal(&t.id)?, Box::new(self.term(&s.child)?))),
                    Tag::Inr => Ok(ProofTerm::Inr(self.goal(&t.id)?, Box::new(self.term(&s.child)?))),
                    Tag::Proj(i) => {
                        let side = if i == 0 { Side::Left } else { Side::Right };
                        Ok(ProofTerm::proj(side, self.term(&s.child)?))
                    }
                    Tag::TApp => Ok(ProofTerm::tapp(self.term(&s.child)?, Self::eigen(s)?)),
                    Tag::Case | Tag::App | Tag::Let | Tag::Abort => self.term(&s.child),
                    _ => Err(malformed(format!("unexpected tag {tag:?} at an existential ID"))),
                }
            }
            Polarity::Universal => {
                let first = t.steps.first().ok_or_else(|| malformed("universal ID without steps"))?;
                let tag = self.tag(first)?;
                let child = |i: usize| t.steps.get(i).ok_or_else(|| malformed("missing universal branch"));
                match tag {
                    Tag::Lam => {
                        let (label, ty) = self.newest(&first.child.id)?;
                        Ok(ProofTerm::Lam(label, ty, Box::new(self.term(&first.child)?)))
                    }
                    Tag::Pair => {
                        let r = child(1)?;
                        Ok(ProofTerm::pair(self.term(&first.child)?, self.term(&r.child)?))
                    }
                    Tag::TLam => Ok(ProofTerm::tlam(Self::eigen(first)?, self.term(&first.child)?)),
                    Tag::Pack => {
                        let Formula::Exists(x, body) = self.goal(&t.id)? else {
                            return Err(malformed("pack at a non-existential goal"));
                        };
                        Ok(ProofTerm::Pack {
                            body: Box::new(self.term(&first.child)?),
                            witness: Self::eigen(first)?,
                            var: x,
                            formula: *body,
                        })
                    }
                    Tag::CaseScrutinee => {
                        let (l, r) = (child(1)?, child(2)?);
                        let scrut = self.term(&first.child)?;
                        let (lx, lty) = self.newest(&l.child.id)?;
                        let (rx, rty) = self.newest(&r.child.id)?;
                        Ok(ProofTerm::Case {
                            scrut: Box::new(scrut),
                            left: crate::proofterm::Branch {
                                var: lx,
                                ty: lty,
                                body: Box::new(self.term(&l.child)?),
                            },
                            right: crate::proofterm::Branch {
                                var: rx,
                                ty: rty,
                                body: Box::new(self.term(&r.child)?),
                            },
                        })
                    }
                    Tag::AppFunction => {
                        let a = child(1)?;
                        Ok(ProofTerm::app(self.term(&first.child)?, self.term(&a.child)?))
                    }
                    Tag::LetScrutinee => {
                        let b = child(1)?;
                        let (label, ty) = self.newest(&b.child.id)?;
                        Ok(ProofTerm::Let {
                            eigen: Self::eigen(b)?,
                            label,
                            ty,
                            scrut: Box::new(self.term(&first.child)?),
                            body: Box::new(self.term(&b.child)?),
                        })
                    }
                    Tag::AbortBody => Ok(ProofTerm::abort(self.goal(&t.id)?, self.term(&first.child)?)),
                    _ => Err(malformed(format!("unexpected tag {tag:?} at a universal ID"))),
                }
            }
        }
    }
}

/// Reads a proof term off an accepting run. The term proves the goal of
/// the run's root ID from the assumptions in its store.
pub fn extract(run: &RunTree, aut: &ArcadianAutomaton) -> Result<ProofTerm, EngineError> {
    let ids = run.ids();
    let labels: BTreeSet<Sym> = ids
        .iter()
        .flat_map(|id| id.store.iter().map(|e| e.label.clone()))
        .collect();
    let next_eigen = ids
        .iter()
        .flat_map(|id| id.domain.iter().map(|e| e.0))
        .max()
        .unwrap_or(0);
    let mut ex = Extractor {
        aut,
        labels,
        next_label: 0,
        next_eigen,
    };
    ex.term(run)
}

/// The typing context described by the store of `id`.
pub fn store_context(aut: &ArcadianAutomaton, id: &Id) -> Result<Context, EngineError> {
    let mut ctx = Context::new();
    for e in &id.store {
        ctx.push(e.label.clone(), aut.tree().instantiate(e.node, &e.binding)?);
    }
    Ok(ctx)
}

/// IDs of the run whose goal or stored assumptions did not emerge from the
/// root formula; empty when the subformula property holds throughout.
pub fn emergence_violations(aut: &ArcadianAutomaton, run: &RunTree) -> Vec<String> {
    let tree = aut.tree();
    let emerged = |n, b| match tree.instantiate(n, b) {
        Ok(f) => !tree.emerged_from(&f).is_empty(),
        Err(_) => false,
    };
    run.ids()
        .into_iter()
        .filter(|id| {
            let goal_ok = aut.is_accepting(id.state) || emerged(id.node, &id.w);
            !(goal_ok && id.store.iter().all(|e| emerged(e.node, &e.binding)))
        })
        .map(|id| id.display(aut))
        .collect()
}
