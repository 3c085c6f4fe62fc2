//! Compiles a closed formula into its Arcadian automaton.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Binding, Eigen, Formula, FormulaError, FormulaTree, NodeId, NodeKind};
use crate::machine::{
    ArcadianAutomaton, ExtractionTag as Tag, Guard, Id, InstrIx, Instruction, Kind, StateIx, StoreEntry,
};
use crate::proofterm::Context;

pub use crate::machine::{Flavor, StateId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("{0} did not emerge from the goal formula")]
    NotEmerged(Formula),
}

/// Instructions listed by pattern number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstructionTable {
    pub entries: Vec<(u8, InstrIx)>,
}

impl InstructionTable {
    pub fn of_pattern(&self, pattern: u8) -> impl Iterator<Item = InstrIx> + '_ {
        self.entries
            .iter()
            .filter(move |(p, _)| *p == pattern)
            .map(|&(_, i)| i)
    }
}

/// An automaton together with its instruction table.
#[derive(Clone, Debug)]
pub struct Construction {
    pub automaton: ArcadianAutomaton,
    pub table: InstructionTable,
}

struct Builder<'t> {
    tree: &'t FormulaTree,
    states: Vec<StateId>,
    index: BTreeMap<StateId, StateIx>,
    instructions: Vec<Instruction>,
}

impl Builder<'_> {
    fn state(&mut self, id: StateId) -> StateIx {
        if let Some(&q) = self.index.get(&id) {
            return q;
        }
        let q = StateIx(self.states.len() as u32);
        self.states.push(id);
        self.index.insert(id, q);
        q
    }

    fn emit(&mut self, owner: StateIx, pattern: u8, kind: Kind, tag: Option<Tag>) {
        self.instructions.push(Instruction {
            owner,
            pattern,
            kind,
            tag,
        });
    }

    fn nodes_of(&self, k: NodeKind) -> Vec<NodeId> {
        self.tree.ids().filter(|&n| self.tree.kind(n) == k).collect()
    }

    fn child(&self, n: NodeId, i: usize) -> NodeId {
        self.tree.children(n)[i]
    }

    fn matches(&self, pattern: NodeId, goal: NodeId) -> bool {
        self.tree.alignment(pattern, goal).is_some()
    }

    /// Projection, application and instantiation jumps available for a
    /// goal at `m`, in pattern order.
    fn eliminations(&mut self, owner: StateIx, m: NodeId) {
        for n in self.nodes_of(NodeKind::And) {
            for i in 0..2 {
                let c = self.child(n, i);
                if self.matches(c, m) {
                    let next = self.state(StateId::head(n));
                    let guard = Guard {
                        pattern: c,
                        solve: n,
                        witness: None,
                        into_aux: false,
                    };
                    self.emit(
                        owner,
                        7,
                        Kind::Jmp {
                            node: n,
                            next,
                            guard: Some(guard),
                        },
                        Some(Tag::Proj(i as u8)),
                    );
                }
            }
        }
        for n in self.nodes_of(NodeKind::Imp) {
            let r = self.child(n, 1);
            if self.matches(r, m) {
                let next = self.state(StateId::flavored(m, Flavor::ImpElim(n)));
                let guard = Guard {
                    pattern: r,
                    solve: n,
                    witness: None,
                    into_aux: true,
                };
                self.emit(
                    owner,
                    9,
                    Kind::Jmp {
                        node: m,
                        next,
                        guard: Some(guard),
                    },
                    Some(Tag::App),
                );
            }
        }
        for n in self.nodes_of(NodeKind::Forall) {
            let c = self.child(n, 0);
            if self.matches(c, m) {
                let next = self.state(StateId::head(n));
                let guard = Guard {
                    pattern: c,
                    solve: n,
                    witness: Some(n),
                    into_aux: false,
                };
                self.emit(
                    owner,
                    10,
                    Kind::Jmp {
                        node: n,
                        next,
                        guard: Some(guard),
                    },
                    Some(Tag::TApp),
                );
            }
        }
    }

    fn existential(&mut self, m: NodeId) {
        let tree = self.tree;
        let kind = tree.kind(m);
        let owner = self.state(StateId::exists(m));
        let axiom = self.state(StateId::axiom());
        self.emit(
            owner,
            13,
            Kind::Check {
                node: m,
                next_node: m,
                next: axiom,
            },
            Some(Tag::Var),
        );
        if kind == NodeKind::Or {
            for (i, tag) in [(0, Tag::Inl), (1, Tag::Inr)] {
                let c = self.child(m, i);
                let next = self.state(StateId::exists(c));
                self.emit(
                    owner,
                    3,
                    Kind::Jmp {
                        node: c,
                        next,
                        guard: None,
                    },
                    Some(tag),
                );
            }
        }
        if matches!(kind, NodeKind::Imp | NodeKind::And | NodeKind::Forall | NodeKind::Exists) {
            let next = self.state(StateId::forall(m));
            self.emit(
                owner,
                6,
                Kind::Jmp {
                    node: m,
                    next,
                    guard: None,
                },
                None,
            );
        }
        let quasi = kind.is_pseudo_atom() || kind == NodeKind::Bottom;
        let mark = self.instructions.len();
        if quasi {
            self.eliminations(owner, m);
        }
        let elims: Vec<Instruction> = self.instructions.drain(mark..).collect();
        // Pattern order: (7) before (8), (9) and (10) before (11).
        let (seven, rest): (Vec<_>, Vec<_>) = elims.into_iter().partition(|i| i.pattern == 7);
        self.instructions.extend(seven);
        for d in self.nodes_of(NodeKind::Or) {
            let next = self.state(StateId::flavored(m, Flavor::OrElim(d)));
            self.emit(
                owner,
                8,
                Kind::Load {
                    node: m,
                    domain: d,
                    next,
                },
                Some(Tag::Case),
            );
        }
        self.instructions.extend(rest);
        for e in self.nodes_of(NodeKind::Exists) {
            let next = self.state(StateId::flavored(m, Flavor::ExElim(e)));
            self.emit(
                owner,
                11,
                Kind::Load {
                    node: m,
                    domain: e,
                    next,
                },
                Some(Tag::Let),
            );
        }
        if tree.bottom_node().is_some() {
            let next = self.state(StateId::flavored(m, Flavor::BotElim));
            self.emit(
                owner,
                12,
                Kind::Jmp {
                    node: m,
                    next,
                    guard: None,
                },
                Some(Tag::Abort),
            );
        }
    }

    fn head(&mut self, m: NodeId) {
        let owner = self.state(StateId::head(m));
        let axiom = self.state(StateId::axiom());
        self.emit(
            owner,
            13,
            Kind::Check {
                node: m,
                next_node: m,
                next: axiom,
            },
            Some(Tag::Var),
        );
        self.eliminations(owner, m);
    }

    fn universal(&mut self, n: NodeId) {
        let kind = self.tree.kind(n);
        if !matches!(kind, NodeKind::Imp | NodeKind::And | NodeKind::Forall | NodeKind::Exists) {
            return;
        }
        let owner = self.state(StateId::forall(n));
        match kind {
            NodeKind::Imp => {
                let (l, r) = (self.child(n, 0), self.child(n, 1));
                let next = self.state(StateId::exists(r));
                self.emit(
                    owner,
                    1,
                    Kind::Store {
                        node: l,
                        next_node: r,
                        next,
                    },
                    Some(Tag::Lam),
                );
            }
            NodeKind::And => {
                for i in 0..2 {
                    let c = self.child(n, i);
                    let next = self.state(StateId::exists(c));
                    self.emit(
                        owner,
                        2,
                        Kind::Jmp {
                            node: c,
                            next,
                            guard: None,
                        },
                        Some(Tag::Pair),
                    );
                }
            }
            NodeKind::Forall => {
                let c = self.child(n, 0);
                let next = self.state(StateId::exists(c));
                self.emit(owner, 4, Kind::New { node: c, next }, Some(Tag::TLam));
            }
            _ => {
                let c = self.child(n, 0);
                let next = self.state(StateId::exists(c));
                self.emit(owner, 5, Kind::InstR { node: c, next }, Some(Tag::Pack));
            }
        }
    }

    /// Instruction groups of the elimination states created so far.
    fn flavored(&mut self) {
        let mut done = 0;
        while done < self.states.len() {
            let id = self.states[done];
            let owner = StateIx(done as u32);
            done += 1;
            let m = id.node;
            match id.flavor {
                Flavor::OrElim(d) => {
                    let head = self.state(StateId::head(d));
                    let goal = self.state(StateId::exists(m));
                    self.emit(
                        owner,
                        14,
                        Kind::Jmp {
                            node: d,
                            next: head,
                            guard: None,
                        },
                        Some(Tag::CaseScrutinee),
                    );
                    for (i, (p, tag)) in [(15, Tag::CaseLeft), (16, Tag::CaseRight)].into_iter().enumerate() {
                        let c = self.child(d, i);
                        self.emit(
                            owner,
                            p,
                            Kind::Store {
                                node: c,
                                next_node: m,
                                next: goal,
                            },
                            Some(tag),
                        );
                    }
                }
                Flavor::ImpElim(n) => {
                    let head = self.state(StateId::head(n));
                    let l = self.child(n, 0);
                    let arg = self.state(StateId::exists(l));
                    self.emit(
                        owner,
                        17,
                        Kind::Jmp {
                            node: n,
                            next: head,
                            guard: None,
                        },
                        Some(Tag::AppFunction),
                    );
                    self.emit(
                        owner,
                        18,
                        Kind::Jmp {
                            node: l,
                            next: arg,
                            guard: None,
                        },
                        Some(Tag::AppArgument),
                    );
                }
                Flavor::ExElim(e) => {
                    let head = self.state(StateId::head(e));
                    let goal = self.state(StateId::exists(m));
                    let c = self.child(e, 0);
                    self.emit(
                        owner,
                        19,
                        Kind::Jmp {
                            node: e,
                            next: head,
                            guard: None,
                        },
                        Some(Tag::LetScrutinee),
                    );
                    self.emit(
                        owner,
                        20,
                        Kind::InstL {
                            node: c,
                            next_node: m,
                            next: goal,
                        },
                        Some(Tag::LetBody),
                    );
                }
                Flavor::BotElim => {
                    let bot = self.tree.bottom_node().expect("⊥ state without ⊥ node");
                    let head = self.state(StateId::head(bot));
                    self.emit(
                        owner,
                        21,
                        Kind::Jmp {
                            node: bot,
                            next: head,
                            guard: None,
                        },
                        Some(Tag::AbortBody),
                    );
                }
                _ => {}
            }
        }
    }
}

/// Builds the automaton whose emptiness is equivalent to the provability
/// of the closed formula `phi`.
pub fn build(phi: &Formula) -> Result<Construction, ConstructionError> {
    let tree = Arc::new(FormulaTree::index(phi)?);
    let mut b = Builder {
        tree: &tree,
        states: Vec::new(),
        index: BTreeMap::new(),
        instructions: Vec::new(),
    };
    let initial = b.state(StateId::exists(NodeId::ROOT));
    for n in tree.ids() {
        b.existential(n);
        b.head(n);
        b.universal(n);
    }
    b.flavored();
    b.state(StateId::axiom());
    let Builder {
        states, instructions, ..
    } = b;
    let mut entries: Vec<(u8, InstrIx)> = instructions
        .iter()
        .enumerate()
        .map(|(i, ins)| (ins.pattern, InstrIx(i as u32)))
        .collect();
    entries.sort();
    let automaton = ArcadianAutomaton::new(tree, states, instructions, initial, NodeId::ROOT);
    Ok(Construction {
        automaton,
        table: InstructionTable { entries },
    })
}

/// ⟨q∃_root, root, ∅, ∅, ∅, ∅⟩.
pub fn initial_id(aut: &ArcadianAutomaton) -> Id {
    aut.initial_id()
}

/// The least node from which `psi` emerged, with its binding.
fn emergence(tree: &FormulaTree, psi: &Formula) -> Result<(NodeId, Binding), ConstructionError> {
    tree.emerged_from(psi)
        .into_iter()
        .find_map(|(n, sub)| tree.binding_for(n, &sub).map(|b| (n, b)))
        .ok_or_else(|| ConstructionError::NotEmerged(psi.clone()))
}

/// Translates the question `Γ ⊢ ? : ψ` into an ID. Free variables of the
/// judgement must be eigenvariables.
pub fn judgment_to_id(ctx: &Context, psi: &Formula, aut: &ArcadianAutomaton) -> Result<Id, ConstructionError> {
    let tree = aut.tree();
    let (node, w) = emergence(tree, psi)?;
    let mut domain: Vec<Eigen> = w.values().collect();
    let mut store = Vec::new();
    for (label, f) in ctx.entries() {
        let (n, b) = emergence(tree, &f)?;
        domain.extend(b.values());
        store.push(StoreEntry {
            node: n,
            binding: b,
            label,
        });
    }
    domain.sort();
    domain.dedup();
    let state = aut
        .lookup(&StateId::exists(node))
        .expect("every node has an existential state");
    Ok(Id {
        state,
        node,
        w,
        aux: Binding::new(),
        store,
        domain,
    })
}

/// Deterministic listing of every instruction, grouped by pattern.
pub fn dump_table(aut: &ArcadianAutomaton, table: &InstructionTable) -> String {
    let mut rows: Vec<(u8, &crate::formula::Path, StateIx, InstrIx)> = table
        .entries
        .iter()
        .map(|&(p, i)| {
            let owner = aut.instruction(i).owner;
            (p, aut.tree().path(aut.state(owner).id.node), owner, i)
        })
        .collect();
    rows.sort();
    let mut out = String::new();
    for (_, _, _, i) in rows {
        out.push_str(&aut.render(i));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct NodeJson {
    path: String,
    label: &'static str,
    formula: String,
    fv: Vec<String>,
}

#[derive(Serialize)]
struct StateJson {
    name: String,
    polarity: &'static str,
    instructions: Vec<u32>,
}

#[derive(Serialize)]
struct InstrJson {
    index: u32,
    pattern: u8,
    owner: String,
    text: String,
}

#[derive(Serialize)]
struct AutomatonJson {
    formula: String,
    nodes: Vec<NodeJson>,
    states: Vec<StateJson>,
    instructions: Vec<InstrJson>,
    initial: String,
}

/// JSON rendering of the automaton: nodes with their fv sets, states and
/// instructions.
pub fn automaton_json(aut: &ArcadianAutomaton) -> serde_json::Value {
    let tree = aut.tree();
    let doc = AutomatonJson {
        formula: tree.root_formula().to_string(),
        nodes: tree
            .ids()
            .map(|n| NodeJson {
                path: tree.path(n).to_string(),
                label: tree.kind(n).symbol(),
                formula: tree.formula(n).to_string(),
                fv: tree.fv(n).iter().map(|&b| tree.path(b).to_string()).collect(),
            })
            .collect(),
        states: aut
            .states()
            .iter()
            .map(|s| StateJson {
                name: s.id.display(tree),
                polarity: match s.id.polarity {
                    crate::machine::Polarity::Existential => "exists",
                    crate::machine::Polarity::Universal => "forall",
                },
                instructions: s.instructions.iter().map(|i| i.0).collect(),
            })
            .collect(),
        instructions: (0..aut.instructions().len() as u32)
            .map(|i| {
                let ix = InstrIx(i);
                let ins = aut.instruction(ix);
                InstrJson {
                    index: i,
                    pattern: ins.pattern,
                    owner: aut.state_name(ins.owner),
                    text: aut.render(ix),
                }
            })
            .collect(),
        initial: aut.state_name(aut.initial_state()),
    };
    serde_json::to_value(doc).expect("automaton JSON is always serializable")
}
