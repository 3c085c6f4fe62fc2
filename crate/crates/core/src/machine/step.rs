use crate::formula::{sym, Binding, Eigen, NodeId, Sym};

use super::{ArcadianAutomaton, Choice, Guard, Id, InstrIx, Kind, MachineError, StoreEntry};

/// One outcome of executing an instruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Successor {
    pub choice: Choice,
    pub id: Id,
}

/// The next canonical fresh eigenvariable for a working domain.
pub fn fresh_eigen(domain: &[Eigen]) -> Eigen {
    Eigen(domain.last().map_or(1, |e| e.0 + 1))
}

fn fresh_label(store: &[StoreEntry]) -> Sym {
    let mut k = store.len() + 1;
    loop {
        let s = format!("x{k}");
        if !store.iter().any(|e| e.label.as_ref() == s) {
            return sym(&s);
        }
        k += 1;
    }
}

fn with_eigen(domain: &[Eigen], e: Eigen) -> Vec<Eigen> {
    let mut d = domain.to_vec();
    if let Err(i) = d.binary_search(&e) {
        d.insert(i, e);
    }
    d
}

/// Every extension of `base` to `missing` with values drawn from `domain`,
/// in lexicographic order.
fn assignments(base: &Binding, missing: &[NodeId], domain: &[Eigen]) -> Vec<Binding> {
    let mut out = vec![base.clone()];
    for &n in missing {
        let mut next = Vec::with_capacity(out.len() * domain.len());
        for b in &out {
            for &e in domain {
                let mut b2 = b.clone();
                b2.insert(n, e);
                next.push(b2);
            }
        }
        out = next;
    }
    out
}

fn not_applicable(msg: impl Into<String>) -> MachineError {
    MachineError::NotApplicable(msg.into())
}

/// Executes one instruction, enumerating every nondeterministic outcome
/// over the current working domain. Fails with `NotApplicable` when no
/// outcome exists.
pub fn step(aut: &ArcadianAutomaton, id: &Id, ins: InstrIx) -> Result<Vec<Successor>, MachineError> {
    let out = outcomes(aut, id, ins)?;
    if out.is_empty() {
        return Err(not_applicable(format!("{} has no outcome", aut.render(ins))));
    }
    Ok(out)
}

/// Like [`step`] but reports an instruction without outcome as an empty list.
pub(crate) fn outcomes(aut: &ArcadianAutomaton, id: &Id, ins: InstrIx) -> Result<Vec<Successor>, MachineError> {
    let tree = aut.tree();
    let instr = aut
        .instructions()
        .get(ins.ix())
        .ok_or(MachineError::NotAvailable(ins.0))?;
    if instr.owner != id.state {
        return Err(MachineError::NotAvailable(ins.0));
    }
    let kappa = id.node;
    let goal_w = |target: NodeId| -> Result<Binding, MachineError> {
        let fv = tree.fv(target);
        if id.w.covers(fv) {
            Ok(id.w.restrict(fv))
        } else {
            Err(MachineError::IllFormed(format!(
                "goal binding does not cover fv({})",
                tree.path(target)
            )))
        }
    };
    let mut out = Vec::new();
    match &instr.kind {
        Kind::Store { node, next_node, next } => {
            let binding = id.aux.overlay(&id.w).restrict(tree.fv(*node));
            if !binding.covers(tree.fv(*node)) {
                return Err(not_applicable("stored binding is incomplete"));
            }
            let label = fresh_label(&id.store);
            let mut store = id.store.clone();
            store.push(StoreEntry {
                node: *node,
                binding,
                label: label.clone(),
            });
            out.push(Successor {
                choice: Choice {
                    label: Some(label),
                    ..Choice::default()
                },
                id: Id {
                    state: *next,
                    node: *next_node,
                    w: goal_w(*next_node)?,
                    aux: Binding::new(),
                    store,
                    domain: id.domain.clone(),
                },
            });
        }
        Kind::Jmp { node, next, guard: None } => {
            let fv = tree.fv(*node);
            let base = id.aux.overlay(&id.w).restrict(fv);
            let missing: Vec<NodeId> = fv.iter().copied().filter(|&n| !base.contains(n)).collect();
            for w in assignments(&base, &missing, &id.domain) {
                out.push(Successor {
                    choice: Choice {
                        binding: Some(w.clone()),
                        ..Choice::default()
                    },
                    id: Id {
                        state: *next,
                        node: *node,
                        w,
                        aux: Binding::new(),
                        store: id.store.clone(),
                        domain: id.domain.clone(),
                    },
                });
            }
        }
        Kind::Jmp { node, next, guard: Some(g) } => {
            for v in solve_guard(aut, id, g)? {
                let sol = v.restrict(tree.fv(g.solve));
                let eigen = g.witness.and_then(|x| v.get(x));
                let (w, aux) = if g.into_aux {
                    (goal_w(*node)?, sol.clone())
                } else {
                    (v.restrict(tree.fv(*node)), Binding::new())
                };
                out.push(Successor {
                    choice: Choice {
                        binding: Some(if g.into_aux { sol } else { w.clone() }),
                        eigen,
                        label: None,
                    },
                    id: Id {
                        state: *next,
                        node: *node,
                        w,
                        aux,
                        store: id.store.clone(),
                        domain: id.domain.clone(),
                    },
                });
            }
        }
        Kind::New { node, next } => {
            if !tree.kind(kappa).is_quantifier() || tree.parent(*node) != Some(kappa) {
                return Err(not_applicable("new needs a quantifier node and its child"));
            }
            let y = fresh_eigen(&id.domain);
            let mut w = id.w.clone();
            w.insert(kappa, y);
            out.push(Successor {
                choice: Choice {
                    eigen: Some(y),
                    ..Choice::default()
                },
                id: Id {
                    state: *next,
                    node: *node,
                    w: w.restrict(tree.fv(*node)),
                    aux: Binding::new(),
                    store: id.store.clone(),
                    domain: with_eigen(&id.domain, y),
                },
            });
        }
        Kind::Check { next_node, next, .. } => {
            for e in &id.store {
                if tree.instances_equal(e.node, &e.binding, kappa, &id.w) {
                    out.push(Successor {
                        choice: Choice {
                            label: Some(e.label.clone()),
                            ..Choice::default()
                        },
                        id: Id {
                            state: *next,
                            node: *next_node,
                            w: goal_w(*next_node)?,
                            aux: Binding::new(),
                            store: id.store.clone(),
                            domain: id.domain.clone(),
                        },
                    });
                }
            }
        }
        Kind::InstL { node, next_node, next } => {
            let parent = tree
                .parent(*node)
                .filter(|&p| tree.kind(p).is_quantifier())
                .ok_or_else(|| not_applicable("instl needs the child of a quantifier"))?;
            let y = fresh_eigen(&id.domain);
            let mut inner = id.aux.clone();
            inner.insert(parent, y);
            let binding = inner.overlay(&id.w).restrict(tree.fv(*node));
            if !binding.covers(tree.fv(*node)) {
                return Err(not_applicable("instantiated binding is incomplete"));
            }
            let label = fresh_label(&id.store);
            let mut store = id.store.clone();
            store.push(StoreEntry {
                node: *node,
                binding,
                label: label.clone(),
            });
            out.push(Successor {
                choice: Choice {
                    binding: None,
                    eigen: Some(y),
                    label: Some(label),
                },
                id: Id {
                    state: *next,
                    node: *next_node,
                    w: goal_w(*next_node)?,
                    aux: Binding::new(),
                    store,
                    domain: with_eigen(&id.domain, y),
                },
            });
        }
        Kind::InstR { node, next } => {
            if !tree.kind(kappa).is_quantifier() || tree.parent(*node) != Some(kappa) {
                return Err(not_applicable("instr needs a quantifier node and its child"));
            }
            for &y in &id.domain {
                let mut w = id.w.clone();
                w.insert(kappa, y);
                out.push(Successor {
                    choice: Choice {
                        eigen: Some(y),
                        ..Choice::default()
                    },
                    id: Id {
                        state: *next,
                        node: *node,
                        w: w.restrict(tree.fv(*node)),
                        aux: Binding::new(),
                        store: id.store.clone(),
                        domain: id.domain.clone(),
                    },
                });
            }
        }
        Kind::Load { node, domain, next } => {
            let fv = tree.fv(*domain);
            for v in assignments(&Binding::new(), fv, &id.domain) {
                out.push(Successor {
                    choice: Choice {
                        binding: Some(v.clone()),
                        ..Choice::default()
                    },
                    id: Id {
                        state: *next,
                        node: *node,
                        w: goal_w(*node)?,
                        aux: v,
                        store: id.store.clone(),
                        domain: id.domain.clone(),
                    },
                });
            }
        }
    }
    Ok(out)
}

/// All bindings over `fv(solve)` (and the witness node) under which the
/// guard pattern instantiates to the current goal.
fn solve_guard(aut: &ArcadianAutomaton, id: &Id, g: &Guard) -> Result<Vec<Binding>, MachineError> {
    let tree = aut.tree();
    let pairs = tree
        .alignment(g.pattern, id.node)
        .ok_or_else(|| not_applicable("guard pattern never matches the goal"))?;
    let mut dom: Vec<NodeId> = tree.fv(g.solve).to_vec();
    dom.extend(g.witness);
    let mut v = Binding::new();
    for &(a, b) in pairs {
        let e = id
            .w
            .get(b)
            .ok_or_else(|| MachineError::IllFormed("goal binding is incomplete".into()))?;
        match v.get(a) {
            Some(prev) if prev != e => return Ok(Vec::new()),
            _ => v.insert(a, e),
        }
    }
    let v = v.restrict(&dom);
    let missing: Vec<NodeId> = dom.iter().copied().filter(|&n| !v.contains(n)).collect();
    Ok(assignments(&v, &missing, &id.domain))
}
