use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{sym, Binding, Eigen, FormulaTree, NodeId};

use super::step::step;
use super::{ArcadianAutomaton, Choice, Id, InstrIx, MachineError, Polarity, StoreEntry};

/// A witness of eventual acceptance. Existential IDs have one step,
/// universal IDs one step per available instruction, accepting IDs none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTree {
    pub id: Id,
    pub steps: Vec<RunStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunStep {
    pub instruction: InstrIx,
    pub choice: Choice,
    pub child: RunTree,
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("malformed run document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad field in run document: {0}")]
    Field(String),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error("step {step} does not reproduce the recorded ID {expected}")]
    Mismatch { step: String, expected: String },
    #[error("ID {0} does not have the required number of steps")]
    Shape(String),
}

impl RunTree {
    /// Number of IDs in the tree.
    pub fn size(&self) -> usize {
        1 + self.steps.iter().map(|s| s.child.size()).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        self.steps.iter().map(|s| 1 + s.child.height()).max().unwrap_or(0)
    }

    /// Every ID in preorder.
    pub fn ids(&self) -> Vec<&Id> {
        let mut out = Vec::new();
        self.walk(&mut |t| out.push(&t.id));
        out
    }

    fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a RunTree)) {
        f(self);
        for s in &self.steps {
            s.child.walk(f);
        }
    }

    /// Applied instructions in preorder.
    pub fn instructions(&self) -> Vec<InstrIx> {
        let mut out = Vec::new();
        self.walk(&mut |t| out.extend(t.steps.iter().map(|s| s.instruction)));
        out
    }

    /// Kind names of the applied instructions in preorder.
    pub fn kind_sequence(&self, aut: &ArcadianAutomaton) -> Vec<&'static str> {
        self.instructions()
            .into_iter()
            .map(|i| aut.instruction(i).kind.name())
            .collect()
    }

    /// Re-executes every edge and checks the acceptance shape.
    pub fn replay(&self, aut: &ArcadianAutomaton) -> Result<(), ReplayError> {
        self.id.check(aut)?;
        let state = aut.state(self.id.state);
        let name = || self.id.display(aut);
        match state.polarity() {
            Polarity::Existential => {
                if self.steps.len() != 1 {
                    return Err(ReplayError::Shape(name()));
                }
            }
            Polarity::Universal => {
                let used: Vec<InstrIx> = self.steps.iter().map(|s| s.instruction).collect();
                if used != state.instructions {
                    return Err(ReplayError::Shape(name()));
                }
            }
        }
        for s in &self.steps {
            let succs = step(aut, &self.id, s.instruction)?;
            let ok = succs
                .iter()
                .any(|o| o.choice == s.choice && o.id == s.child.id);
            if !ok {
                return Err(ReplayError::Mismatch {
                    step: aut.render(s.instruction),
                    expected: s.child.id.display(aut),
                });
            }
            s.child.replay(aut)?;
        }
        Ok(())
    }

    pub fn to_json(&self, aut: &ArcadianAutomaton) -> RunJson {
        RunJson {
            formula: aut.tree().root_formula().to_string(),
            root: node_json(aut, self, None),
        }
    }

    /// Rebuilds a run from its JSON form and replays it.
    pub fn from_json(aut: &ArcadianAutomaton, doc: &RunJson) -> Result<RunTree, ReplayError> {
        let t = tree_from_json(aut, &doc.root)?;
        t.replay(aut)?;
        Ok(t)
    }

    pub fn to_dot(&self, aut: &ArcadianAutomaton) -> String {
        let mut out = String::from("digraph run {\n  node [shape=box, fontname=\"monospace\"];\n");
        let mut counter = 0usize;
        dot_node(aut, self, &mut counter, &mut out);
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_node(aut: &ArcadianAutomaton, t: &RunTree, counter: &mut usize, out: &mut String) -> usize {
    let me = *counter;
    *counter += 1;
    let _ = writeln!(out, "  n{me} [label=\"{}\"];", escape(&t.id.display(aut)));
    for s in &t.steps {
        let c = dot_node(aut, &s.child, counter, out);
        let ins = aut.instruction(s.instruction);
        let label = aut.render(s.instruction);
        let operands = label.split_once(": ").map_or(label.as_str(), |(_, r)| r);
        let _ = writeln!(
            out,
            "  n{me} -> n{c} [label=\"({}) {}\"];",
            ins.pattern,
            escape(operands)
        );
    }
    me
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunJson {
    pub formula: String,
    pub root: RunNodeJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreJson {
    pub node: String,
    pub binding: BTreeMap<String, String>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstructionJson {
    pub index: u32,
    pub pattern: u8,
    pub kind: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceJson {
    pub binding: Option<BTreeMap<String, String>>,
    pub eigen: Option<String>,
    pub label: Option<String>,
}

/// One run node; `instruction` and `choice` describe the edge from the
/// parent and are absent at the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunNodeJson {
    pub state: String,
    pub node: String,
    pub w: BTreeMap<String, String>,
    #[serde(rename = "wAux")]
    pub w_aux: BTreeMap<String, String>,
    pub store: Vec<StoreJson>,
    #[serde(rename = "V")]
    pub domain: Vec<String>,
    pub instruction: Option<InstructionJson>,
    pub choice: Option<ChoiceJson>,
    pub children: Vec<RunNodeJson>,
}

fn binding_json(tree: &FormulaTree, b: &Binding) -> BTreeMap<String, String> {
    b.iter()
        .map(|(n, e)| (tree.path(n).to_string(), e.to_string()))
        .collect()
}

fn node_json(aut: &ArcadianAutomaton, t: &RunTree, edge: Option<&RunStep>) -> RunNodeJson {
    let tree = aut.tree();
    let (instruction, choice) = match edge {
        None => (None, None),
        Some(s) => {
            let ins = aut.instruction(s.instruction);
            (
                Some(InstructionJson {
                    index: s.instruction.0,
                    pattern: ins.pattern,
                    kind: ins.kind.name().to_string(),
                    text: aut.render(s.instruction),
                }),
                Some(ChoiceJson {
                    binding: s.choice.binding.as_ref().map(|b| binding_json(tree, b)),
                    eigen: s.choice.eigen.map(|e| e.to_string()),
                    label: s.choice.label.as_ref().map(|l| l.to_string()),
                }),
            )
        }
    };
    RunNodeJson {
        state: aut.state_name(t.id.state),
        node: tree.path(t.id.node).to_string(),
        w: binding_json(tree, &t.id.w),
        w_aux: binding_json(tree, &t.id.aux),
        store: t
            .id
            .store
            .iter()
            .map(|e| StoreJson {
                node: tree.path(e.node).to_string(),
                binding: binding_json(tree, &e.binding),
                label: e.label.to_string(),
            })
            .collect(),
        domain: t.id.domain.iter().map(|e| e.to_string()).collect(),
        instruction,
        choice,
        children: t
            .steps
            .iter()
            .map(|s| node_json(aut, &s.child, Some(s)))
            .collect(),
    }
}

fn field(msg: impl Into<String>) -> ReplayError {
    ReplayError::Field(msg.into())
}

fn parse_eigen(s: &str) -> Result<Eigen, ReplayError> {
    s.strip_prefix('X')
        .and_then(|d| d.parse().ok())
        .map(Eigen)
        .ok_or_else(|| field(format!("eigenvariable {s}")))
}

fn parse_node(tree: &FormulaTree, s: &str) -> Result<NodeId, ReplayError> {
    tree.parse_node(s).map_err(|e| field(e.to_string()))
}

fn parse_binding(tree: &FormulaTree, m: &BTreeMap<String, String>) -> Result<Binding, ReplayError> {
    let mut b = Binding::new();
    for (k, v) in m {
        b.insert(parse_node(tree, k)?, parse_eigen(v)?);
    }
    Ok(b)
}

fn tree_from_json(aut: &ArcadianAutomaton, j: &RunNodeJson) -> Result<RunTree, ReplayError> {
    let tree = aut.tree();
    let store = j
        .store
        .iter()
        .map(|e| {
            Ok(StoreEntry {
                node: parse_node(tree, &e.node)?,
                binding: parse_binding(tree, &e.binding)?,
                label: sym(&e.label),
            })
        })
        .collect::<Result<Vec<_>, ReplayError>>()?;
    let id = Id {
        state: aut.state_by_name(&j.state)?,
        node: parse_node(tree, &j.node)?,
        w: parse_binding(tree, &j.w)?,
        aux: parse_binding(tree, &j.w_aux)?,
        store,
        domain: j.domain.iter().map(|e| parse_eigen(e)).collect::<Result<_, _>>()?,
    };
    let mut steps = Vec::new();
    for c in &j.children {
        let ins = c.instruction.as_ref().ok_or_else(|| field("missing instruction"))?;
        let ix = InstrIx(ins.index);
        if ins.index as usize >= aut.instructions().len() || aut.render(ix) != ins.text {
            return Err(field(format!("instruction {}", ins.text)));
        }
        let ch = c.choice.as_ref().ok_or_else(|| field("missing choice"))?;
        let choice = Choice {
            binding: ch.binding.as_ref().map(|b| parse_binding(tree, b)).transpose()?,
            eigen: ch.eigen.as_deref().map(parse_eigen).transpose()?,
            label: ch.label.as_deref().map(sym),
        };
        steps.push(RunStep {
            instruction: ix,
            choice,
            child: tree_from_json(aut, c)?,
        });
    }
    Ok(RunTree { id, steps })
}
