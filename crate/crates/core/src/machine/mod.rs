//! Generic Arcadian automata: states, the seven instruction kinds,
//! instantaneous descriptions, AND-OR acceptance and run trees.

mod canon;
mod run;
mod search;
mod step;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::{Binding, Eigen, FormulaTree, NodeId, Sym};

pub use canon::{canonicalize, CanonKey};
pub use run::{ChoiceJson, InstructionJson, ReplayError, RunJson, RunNodeJson, RunStep, RunTree, StoreJson};
pub use search::{accepts, Budget, SearchOutcome, SearchStats};
pub use step::{fresh_eigen, step, Successor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateIx(pub u32);

impl StateIx {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstrIx(pub u32);

impl InstrIx {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Existential,
    Universal,
}

/// Refinement of a state beyond its node and polarity. Elimination flavors
/// carry the node being eliminated so that correlated instruction groups
/// live in their own state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Plain,
    /// Goal reached through an elimination: only a store lookup or a
    /// further elimination may close it.
    Head,
    OrElim(NodeId),
    ImpElim(NodeId),
    ExElim(NodeId),
    BotElim,
    Axiom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId {
    pub node: NodeId,
    pub polarity: Polarity,
    pub flavor: Flavor,
}

impl StateId {
    pub fn exists(node: NodeId) -> StateId {
        StateId {
            node,
            polarity: Polarity::Existential,
            flavor: Flavor::Plain,
        }
    }

    pub fn forall(node: NodeId) -> StateId {
        StateId {
            node,
            polarity: Polarity::Universal,
            flavor: Flavor::Plain,
        }
    }

    pub fn head(node: NodeId) -> StateId {
        StateId {
            node,
            polarity: Polarity::Existential,
            flavor: Flavor::Head,
        }
    }

    pub fn flavored(node: NodeId, flavor: Flavor) -> StateId {
        StateId {
            node,
            polarity: Polarity::Universal,
            flavor,
        }
    }

    pub fn axiom() -> StateId {
        StateId {
            node: NodeId::ROOT,
            polarity: Polarity::Universal,
            flavor: Flavor::Axiom,
        }
    }

    /// Human-readable name such as `q∃_100`, `q∀_ε,∨0` or `q∃*_0`.
    pub fn display(&self, tree: &FormulaTree) -> String {
        let p = |n: NodeId| tree.path(n).to_string();
        let pol = match self.polarity {
            Polarity::Existential => "∃",
            Polarity::Universal => "∀",
        };
        match self.flavor {
            Flavor::Plain => format!("q{pol}_{}", p(self.node)),
            Flavor::Head => format!("q{pol}*_{}", p(self.node)),
            Flavor::OrElim(d) => format!("q{pol}_{},∨{}", p(self.node), p(d)),
            Flavor::ImpElim(n) => format!("q{pol}_{},→{}", p(self.node), p(n)),
            Flavor::ExElim(e) => format!("q{pol}_{},∃{}", p(self.node), p(e)),
            Flavor::BotElim => format!("q{pol}_{},⊥", p(self.node)),
            Flavor::Axiom => "q∀_axiom".to_string(),
        }
    }
}

/// Runtime side condition of an elimination jump: find `v` over
/// `fv(solve)` (plus `witness`, when present) such that the instance of
/// `pattern` under `v` is α-equal to the current goal instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Guard {
    pub pattern: NodeId,
    pub solve: NodeId,
    pub witness: Option<NodeId>,
    /// Keep the solution in the auxiliary register and stay at the current
    /// node instead of moving with it.
    pub into_aux: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Store { node: NodeId, next_node: NodeId, next: StateIx },
    Jmp { node: NodeId, next: StateIx, guard: Option<Guard> },
    New { node: NodeId, next: StateIx },
    Check { node: NodeId, next_node: NodeId, next: StateIx },
    InstL { node: NodeId, next_node: NodeId, next: StateIx },
    InstR { node: NodeId, next: StateIx },
    /// Loads a binding over `fv(domain)` into the auxiliary register.
    Load { node: NodeId, domain: NodeId, next: StateIx },
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Store { .. } => "store",
            Kind::Jmp { .. } => "jmp",
            Kind::New { .. } => "new",
            Kind::Check { .. } => "check",
            Kind::InstL { .. } => "instl",
            Kind::InstR { .. } => "instr",
            Kind::Load { .. } => "load",
        }
    }

    pub fn target(&self) -> StateIx {
        match *self {
            Kind::Store { next, .. }
            | Kind::Jmp { next, .. }
            | Kind::New { next, .. }
            | Kind::Check { next, .. }
            | Kind::InstL { next, .. }
            | Kind::InstR { next, .. }
            | Kind::Load { next, .. } => next,
        }
    }

    pub fn nodes(&self) -> Vec<NodeId> {
        match self {
            Kind::Store { node, next_node, .. }
            | Kind::Check { node, next_node, .. }
            | Kind::InstL { node, next_node, .. } => vec![*node, *next_node],
            Kind::Jmp { node, guard, .. } => {
                let mut v = vec![*node];
                if let Some(g) = guard {
                    v.extend([g.pattern, g.solve]);
                    v.extend(g.witness);
                }
                v
            }
            Kind::New { node, .. } | Kind::InstR { node, .. } => vec![*node],
            Kind::Load { node, domain, .. } => vec![*node, *domain],
        }
    }
}

/// How a proof term is read off an instruction application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtractionTag {
    Lam,
    Pair,
    Inl,
    Inr,
    TLam,
    Pack,
    Proj(u8),
    TApp,
    Var,
    Case,
    CaseScrutinee,
    CaseLeft,
    CaseRight,
    App,
    AppFunction,
    AppArgument,
    Let,
    LetScrutinee,
    LetBody,
    Abort,
    AbortBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instruction {
    pub owner: StateIx,
    /// Number of the instruction pattern this instance comes from (1-21).
    pub pattern: u8,
    pub kind: Kind,
    pub tag: Option<ExtractionTag>,
}

#[derive(Clone, Debug)]
pub struct State {
    pub id: StateId,
    pub instructions: Vec<InstrIx>,
}

impl State {
    pub fn polarity(&self) -> Polarity {
        self.id.polarity
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("instruction {0} is not available in the current state")]
    NotAvailable(u32),
    #[error("instruction not applicable: {0}")]
    NotApplicable(String),
    #[error("ill-formed ID: {0}")]
    IllFormed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateOwnership(InstrIx),
    DanglingNode(InstrIx, NodeId),
    DanglingState(InstrIx, StateIx),
    WrongOwner(InstrIx),
    VacuousUniversal(StateIx),
    BadInitial,
    FvClosure(String),
}

/// An automaton over the node tree of a formula.
#[derive(Clone, Debug)]
pub struct ArcadianAutomaton {
    tree: Arc<FormulaTree>,
    states: Vec<State>,
    instructions: Vec<Instruction>,
    index: HashMap<StateId, StateIx>,
    initial_state: StateIx,
    initial_node: NodeId,
}

impl ArcadianAutomaton {
    /// Assembles an automaton; instruction ownership is taken from
    /// `Instruction::owner`, in the given order.
    pub fn new(
        tree: Arc<FormulaTree>,
        state_ids: Vec<StateId>,
        instructions: Vec<Instruction>,
        initial_state: StateIx,
        initial_node: NodeId,
    ) -> ArcadianAutomaton {
        let mut states: Vec<State> = state_ids
            .into_iter()
            .map(|id| State {
                id,
                instructions: Vec::new(),
            })
            .collect();
        for (i, ins) in instructions.iter().enumerate() {
            if let Some(s) = states.get_mut(ins.owner.ix()) {
                s.instructions.push(InstrIx(i as u32));
            }
        }
        Self::from_parts(tree, states, instructions, initial_state, initial_node)
    }

    /// Assembles an automaton from explicit per-state instruction lists.
    pub fn from_parts(
        tree: Arc<FormulaTree>,
        states: Vec<State>,
        instructions: Vec<Instruction>,
        initial_state: StateIx,
        initial_node: NodeId,
    ) -> ArcadianAutomaton {
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id, StateIx(i as u32)))
            .collect();
        ArcadianAutomaton {
            tree,
            states,
            instructions,
            index,
            initial_state,
            initial_node,
        }
    }

    pub fn tree(&self) -> &FormulaTree {
        &self.tree
    }

    pub fn shared_tree(&self) -> Arc<FormulaTree> {
        self.tree.clone()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, q: StateIx) -> &State {
        &self.states[q.ix()]
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn instruction(&self, i: InstrIx) -> &Instruction {
        &self.instructions[i.ix()]
    }

    pub fn initial_state(&self) -> StateIx {
        self.initial_state
    }

    pub fn initial_node(&self) -> NodeId {
        self.initial_node
    }

    pub fn lookup(&self, id: &StateId) -> Option<StateIx> {
        self.index.get(id).copied()
    }

    pub fn state_name(&self, q: StateIx) -> String {
        self.states[q.ix()].id.display(&self.tree)
    }

    pub fn state_by_name(&self, name: &str) -> Result<StateIx, MachineError> {
        self.states
            .iter()
            .position(|s| s.id.display(&self.tree) == name)
            .map(|i| StateIx(i as u32))
            .ok_or_else(|| MachineError::UnknownState(name.to_string()))
    }

    /// The instructions available in `q`.
    pub fn available(&self, q: StateIx) -> Result<&[InstrIx], MachineError> {
        self.states
            .get(q.ix())
            .map(|s| s.instructions.as_slice())
            .ok_or_else(|| MachineError::UnknownState(format!("#{}", q.0)))
    }

    pub fn is_accepting(&self, q: StateIx) -> bool {
        let s = &self.states[q.ix()];
        s.polarity() == Polarity::Universal && s.instructions.is_empty()
    }

    /// The initial ID: initial state and node, everything else empty.
    pub fn initial_id(&self) -> Id {
        Id {
            state: self.initial_state,
            node: self.initial_node,
            w: Binding::new(),
            aux: Binding::new(),
            store: Vec::new(),
            domain: Vec::new(),
        }
    }

    /// Human-readable rendering of one instruction.
    pub fn render(&self, i: InstrIx) -> String {
        let ins = &self.instructions[i.ix()];
        let p = |n: NodeId| self.tree.path(n).to_string();
        let q = |s: StateIx| self.state_name(s);
        let body = match &ins.kind {
            Kind::Store { node, next_node, next } => {
                format!("store {}, {}, {}", p(*node), p(*next_node), q(*next))
            }
            Kind::Jmp { node, next, guard } => {
                let mut s = format!("jmp {}, {}", p(*node), q(*next));
                if let Some(g) = guard {
                    s.push_str(&format!(" [match {}", p(g.pattern)));
                    if let Some(x) = g.witness {
                        s.push_str(&format!(", witness {}", p(x)));
                    }
                    s.push(']');
                }
                s
            }
            Kind::New { node, next } => format!("new {}, {}", p(*node), q(*next)),
            Kind::Check { node, next_node, next } => {
                format!("check {}, {}, {}", p(*node), p(*next_node), q(*next))
            }
            Kind::InstL { node, next_node, next } => {
                format!("instl {}, {}, {}", p(*node), p(*next_node), q(*next))
            }
            Kind::InstR { node, next } => format!("instr {}, {}", p(*node), q(*next)),
            Kind::Load { node, domain, next } => {
                format!("load {}, {} [over {}]", p(*node), q(*next), p(*domain))
            }
        };
        format!("({}) {}: {}", ins.pattern, self.state_name(ins.owner), body)
    }

    /// Checks the structural conditions on the tuple; empty means none.
    pub fn well_formed(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut owners: Vec<u32> = vec![0; self.instructions.len()];
        for (si, s) in self.states.iter().enumerate() {
            for &i in &s.instructions {
                match self.instructions.get(i.ix()) {
                    Some(ins) if ins.owner.ix() != si => out.push(Violation::WrongOwner(i)),
                    Some(_) => {}
                    None => continue,
                }
                owners[i.ix()] += 1;
            }
            let vacuous = s.id.polarity == Polarity::Universal
                && s.instructions.is_empty()
                && s.id.flavor != Flavor::Axiom;
            if vacuous {
                out.push(Violation::VacuousUniversal(StateIx(si as u32)));
            }
        }
        for (i, &count) in owners.iter().enumerate() {
            if count != 1 {
                out.push(Violation::DuplicateOwnership(InstrIx(i as u32)));
            }
        }
        for (i, ins) in self.instructions.iter().enumerate() {
            let ix = InstrIx(i as u32);
            for n in ins.kind.nodes() {
                if !self.tree.contains(n) {
                    out.push(Violation::DanglingNode(ix, n));
                }
            }
            let t = ins.kind.target();
            if t.ix() >= self.states.len() {
                out.push(Violation::DanglingState(ix, t));
            }
        }
        if self.initial_state.ix() >= self.states.len() || !self.tree.contains(self.initial_node) {
            out.push(Violation::BadInitial);
        }
        if let Err(e) = self.tree.check_invariants() {
            out.push(Violation::FvClosure(e));
        }
        out
    }
}

/// An assumption held in the store.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StoreEntry {
    pub node: NodeId,
    pub binding: Binding,
    pub label: Sym,
}

/// Instantaneous description ⟨q, κ, w, w′, S, V⟩.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Id {
    pub state: StateIx,
    pub node: NodeId,
    pub w: Binding,
    pub aux: Binding,
    pub store: Vec<StoreEntry>,
    /// The working domain, kept sorted.
    pub domain: Vec<Eigen>,
}

impl Id {
    /// Checks the ID invariants against an automaton.
    pub fn check(&self, aut: &ArcadianAutomaton) -> Result<(), MachineError> {
        let tree = aut.tree();
        if self.state.ix() >= aut.states().len() {
            return Err(MachineError::UnknownState(format!("#{}", self.state.0)));
        }
        if !tree.contains(self.node) {
            return Err(MachineError::IllFormed(format!("no node #{}", self.node.0)));
        }
        if !self.w.covers(tree.fv(self.node)) {
            return Err(MachineError::IllFormed(format!(
                "w does not cover fv({})",
                tree.path(self.node)
            )));
        }
        let in_domain = |b: &Binding| b.values().all(|e| self.domain.binary_search(&e).is_ok());
        if !in_domain(&self.w) || !in_domain(&self.aux) {
            return Err(MachineError::IllFormed("binding leaves the working domain".into()));
        }
        for e in &self.store {
            if !tree.contains(e.node) || !e.binding.covers(tree.fv(e.node)) || !in_domain(&e.binding) {
                return Err(MachineError::IllFormed(format!(
                    "bad store entry {}",
                    e.label
                )));
            }
        }
        if !self.domain.windows(2).all(|p| p[0] < p[1]) {
            return Err(MachineError::IllFormed("working domain not sorted".into()));
        }
        Ok(())
    }

    pub fn display(&self, aut: &ArcadianAutomaton) -> String {
        IdDisplay { id: self, aut }.to_string()
    }
}

struct IdDisplay<'a> {
    id: &'a Id,
    aut: &'a ArcadianAutomaton,
}

pub(crate) fn fmt_binding(tree: &FormulaTree, b: &Binding) -> String {
    let parts: Vec<String> = b
        .iter()
        .map(|(n, e)| format!("{}↦{}", tree.path(n), e))
        .collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for IdDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tree = self.aut.tree();
        let id = self.id;
        let store: Vec<String> = id
            .store
            .iter()
            .map(|e| format!("⟨{}, {}, {}⟩", tree.path(e.node), fmt_binding(tree, &e.binding), e.label))
            .collect();
        let dom: Vec<String> = id.domain.iter().map(|e| e.to_string()).collect();
        write!(
            f,
            "⟨{}, {}, {}, {}, {{{}}}, {{{}}}⟩",
            self.aut.state_name(id.state),
            tree.path(id.node),
            fmt_binding(tree, &id.w),
            fmt_binding(tree, &id.aux),
            store.join(", "),
            dom.join(", ")
        )
    }
}

/// The resolution of an instruction's nondeterminism.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Choice {
    /// Chosen binding: the new `w` for jumps, the loaded `w′` for loads and
    /// auxiliary-register jumps.
    pub binding: Option<Binding>,
    /// Fresh eigenvariable (new, instl), witness (instr, witness guards).
    pub eigen: Option<Eigen>,
    /// Label of the stored (store, instl) or matched (check) assumption.
    pub label: Option<Sym>,
}
