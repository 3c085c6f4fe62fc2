use std::fmt;
use std::str::FromStr;

use super::{alpha_eq, match_formula, Binding, Formula, FormulaError, Substitution, Sym, Var};

/// Index of a node in preorder. Preorder coincides with the lexicographic
/// order of child-index paths, so comparing ids compares paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

/// Address of a node as the sequence of child indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<u8>);

impl Path {
    pub fn is_strict_prefix_of(&self, other: &Path) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Path, FormulaError> {
        if s == "ε" || s.is_empty() {
            return Ok(Path(Vec::new()));
        }
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| FormulaError::UnknownNode(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Path)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Atom,
    And,
    Or,
    Imp,
    Forall,
    Exists,
    Bottom,
}

impl NodeKind {
    pub fn of(f: &Formula) -> NodeKind {
        match f {
            Formula::Atom(..) => NodeKind::Atom,
            Formula::And(..) => NodeKind::And,
            Formula::Or(..) => NodeKind::Or,
            Formula::Imp(..) => NodeKind::Imp,
            Formula::Forall(..) => NodeKind::Forall,
            Formula::Exists(..) => NodeKind::Exists,
            Formula::Bottom => NodeKind::Bottom,
        }
    }

    pub fn is_quantifier(self) -> bool {
        matches!(self, NodeKind::Forall | NodeKind::Exists)
    }

    pub fn is_pseudo_atom(self) -> bool {
        matches!(self, NodeKind::Atom | NodeKind::Or | NodeKind::Exists)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            NodeKind::Atom => "atom",
            NodeKind::And => "∧",
            NodeKind::Or => "∨",
            NodeKind::Imp => "→",
            NodeKind::Forall => "∀",
            NodeKind::Exists => "∃",
            NodeKind::Bottom => "⊥",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub path: Path,
    pub kind: NodeKind,
    pub formula: Formula,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Quantifier nodes binding the free variables of this node, sorted.
    pub fv: Vec<NodeId>,
    /// Free variable name to its binding quantifier node.
    pub free: Vec<(Sym, NodeId)>,
}

/// Pairs of binder nodes whose eigenvariables must coincide for two node
/// instances to be α-equal.
pub type Alignment = Box<[(NodeId, NodeId)]>;

/// The indexed syntax tree of a closed formula.
#[derive(Clone, Debug)]
pub struct FormulaTree {
    root: Formula,
    nodes: Vec<TreeNode>,
    bottom: Option<NodeId>,
    align: Vec<Option<Alignment>>,
}

impl FormulaTree {
    pub fn index(f: &Formula) -> Result<FormulaTree, FormulaError> {
        let free = f.free_vars();
        if !free.is_empty() {
            let names: Vec<String> = free.iter().map(|v| v.to_string()).collect();
            return Err(FormulaError::NotClosed(names.join(", ")));
        }
        let mut nodes = Vec::new();
        build(f, Path(Vec::new()), None, &mut Vec::new(), &mut nodes);
        let bottom = nodes
            .iter()
            .position(|n| n.kind == NodeKind::Bottom)
            .map(|i| NodeId(i as u32));
        let mut tree = FormulaTree {
            root: f.clone(),
            nodes,
            bottom,
            align: Vec::new(),
        };
        let n = tree.nodes.len();
        let mut align = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                align.push(tree.compute_alignment(NodeId(a as u32), NodeId(b as u32)));
            }
        }
        tree.align = align;
        Ok(tree)
    }

    pub fn root_formula(&self) -> &Formula {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn contains(&self, n: NodeId) -> bool {
        n.ix() < self.nodes.len()
    }

    pub fn node(&self, n: NodeId) -> &TreeNode {
        &self.nodes[n.ix()]
    }

    pub fn kind(&self, n: NodeId) -> NodeKind {
        self.nodes[n.ix()].kind
    }

    pub fn formula(&self, n: NodeId) -> &Formula {
        &self.nodes[n.ix()].formula
    }

    pub fn path(&self, n: NodeId) -> &Path {
        &self.nodes[n.ix()].path
    }

    pub fn children(&self, n: NodeId) -> &[NodeId] {
        &self.nodes[n.ix()].children
    }

    pub fn parent(&self, n: NodeId) -> Option<NodeId> {
        self.nodes[n.ix()].parent
    }

    pub fn fv(&self, n: NodeId) -> &[NodeId] {
        &self.nodes[n.ix()].fv
    }

    /// The canonical ⊥ node (the first in preorder), if ⊥ occurs.
    pub fn bottom_node(&self) -> Option<NodeId> {
        self.bottom
    }

    pub fn node_at(&self, p: &Path) -> Option<NodeId> {
        self.nodes
            .binary_search_by(|n| n.path.cmp(p))
            .ok()
            .map(|i| NodeId(i as u32))
    }

    pub fn parse_node(&self, s: &str) -> Result<NodeId, FormulaError> {
        let p: Path = s.parse()?;
        self.node_at(&p)
            .ok_or_else(|| FormulaError::UnknownNode(s.to_string()))
    }

    /// The quantifier node that binds the free occurrences of `x` at `n`.
    pub fn bind(&self, n: NodeId, x: &Sym) -> Result<NodeId, FormulaError> {
        self.nodes[n.ix()]
            .free
            .iter()
            .find(|(name, _)| name == x)
            .map(|&(_, b)| b)
            .ok_or_else(|| FormulaError::VarNotFree {
                node: self.path(n).clone(),
                var: x.clone(),
            })
    }

    /// The formula at `n` with each free variable replaced by the
    /// eigenvariable its binder is mapped to under `w`.
    pub fn instantiate(&self, n: NodeId, w: &Binding) -> Result<Formula, FormulaError> {
        let node = &self.nodes[n.ix()];
        let mut sub = Substitution::new();
        for (name, binder) in &node.free {
            let e = w
                .get(*binder)
                .ok_or_else(|| FormulaError::IncompleteBinding(node.path.clone()))?;
            sub.insert(name.clone(), Var::Eigen(e));
        }
        Ok(node.formula.rename_free(&sub))
    }

    /// Every node whose formula, under some substitution of its free
    /// variables, is α-equal to `psi`.
    pub fn emerged_from(&self, psi: &Formula) -> Vec<(NodeId, Substitution)> {
        self.ids()
            .filter_map(|n| match_formula(self.formula(n), psi).map(|s| (n, s)))
            .collect()
    }

    /// Converts a substitution found by [`Self::emerged_from`] into a binding
    /// over `fv(n)`; fails when a variable maps to a non-eigenvariable.
    pub fn binding_for(&self, n: NodeId, sub: &Substitution) -> Option<Binding> {
        let mut w = Binding::new();
        for (name, binder) in &self.nodes[n.ix()].free {
            match sub.get(name)? {
                Var::Eigen(e) => {
                    if let Some(prev) = w.get(*binder) {
                        if prev != *e {
                            return None;
                        }
                    }
                    w.insert(*binder, *e);
                }
                Var::Named(_) => return None,
            }
        }
        Some(w)
    }

    /// Constraint pairs under which instances of `a` and `b` coincide, or
    /// `None` when no instances of the two nodes can ever be α-equal.
    pub fn alignment(&self, a: NodeId, b: NodeId) -> Option<&[(NodeId, NodeId)]> {
        self.align[a.ix() * self.nodes.len() + b.ix()].as_deref()
    }

    /// Decides `instantiate(a, v) =α instantiate(b, w)` through the
    /// alignment table.
    pub fn instances_equal(&self, a: NodeId, v: &Binding, b: NodeId, w: &Binding) -> bool {
        match self.alignment(a, b) {
            None => false,
            Some(pairs) => pairs.iter().all(|&(x, y)| match (v.get(x), w.get(y)) {
                (Some(e1), Some(e2)) => e1 == e2,
                _ => false,
            }),
        }
    }

    fn compute_alignment(&self, a: NodeId, b: NodeId) -> Option<Alignment> {
        let mut pairs = Vec::new();
        let ok = align_in(
            self.formula(a),
            self.formula(b),
            &mut Vec::new(),
            &mut Vec::new(),
            &self.nodes[a.ix()].free,
            &self.nodes[b.ix()].free,
            &mut pairs,
        );
        if !ok {
            return None;
        }
        pairs.sort();
        pairs.dedup();
        Some(pairs.into_boxed_slice())
    }

    /// Checks the binder-analysis invariants; returns a description of the
    /// first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        for n in self.ids() {
            let node = self.node(n);
            let mut expected: Vec<NodeId> = Vec::new();
            for &c in &node.children {
                expected.extend_from_slice(self.fv(c));
            }
            if node.kind.is_quantifier() {
                expected.retain(|&x| x != n);
            }
            expected.sort();
            expected.dedup();
            if !node.children.is_empty() && expected != node.fv {
                return Err(format!("fv closure fails at {}", node.path));
            }
            for &b in &node.fv {
                if !self.kind(b).is_quantifier() || !self.path(b).is_strict_prefix_of(&node.path) {
                    return Err(format!("fv({}) contains a non-ancestor", node.path));
                }
            }
            let vars = node.formula.free_vars();
            if vars.len() != node.free.len() {
                return Err(format!("free map mismatch at {}", node.path));
            }
            let mut from_bind: Vec<NodeId> = node.free.iter().map(|&(_, b)| b).collect();
            from_bind.sort();
            from_bind.dedup();
            if from_bind != node.fv {
                return Err(format!("fv differs from bind image at {}", node.path));
            }
        }
        if !alpha_eq(self.formula(NodeId::ROOT), &self.root) {
            return Err("root formula mismatch".into());
        }
        Ok(())
    }
}

fn build(
    f: &Formula,
    path: Path,
    parent: Option<NodeId>,
    env: &mut Vec<(Sym, NodeId)>,
    nodes: &mut Vec<TreeNode>,
) -> NodeId {
    let id = NodeId(nodes.len() as u32);
    let mut free: Vec<(Sym, NodeId)> = f
        .free_vars()
        .into_iter()
        .filter_map(|v| match v {
            Var::Named(name) => env
                .iter()
                .rev()
                .find(|(x, _)| *x == name)
                .map(|&(_, b)| (name, b)),
            Var::Eigen(_) => None,
        })
        .collect();
    free.sort();
    let mut fv: Vec<NodeId> = free.iter().map(|&(_, b)| b).collect();
    fv.sort();
    fv.dedup();
    nodes.push(TreeNode {
        path: path.clone(),
        kind: NodeKind::of(f),
        formula: f.clone(),
        parent,
        children: Vec::new(),
        fv,
        free,
    });
    let child_path = |i: u8| {
        let mut p = path.0.clone();
        p.push(i);
        Path(p)
    };
    let children = match f {
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            let l = build(a, child_path(0), Some(id), env, nodes);
            let r = build(b, child_path(1), Some(id), env, nodes);
            vec![l, r]
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            env.push((x.clone(), id));
            let c = build(a, child_path(0), Some(id), env, nodes);
            env.pop();
            vec![c]
        }
        Formula::Atom(..) | Formula::Bottom => Vec::new(),
    };
    nodes[id.ix()].children = children;
    id
}

fn binder_of(free: &[(Sym, NodeId)], name: &Sym) -> Option<NodeId> {
    free.iter().find(|(x, _)| x == name).map(|&(_, b)| b)
}

fn align_in<'a>(
    a: &'a Formula,
    b: &'a Formula,
    ba: &mut Vec<&'a Sym>,
    bb: &mut Vec<&'a Sym>,
    free_a: &[(Sym, NodeId)],
    free_b: &[(Sym, NodeId)],
    out: &mut Vec<(NodeId, NodeId)>,
) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            if p != q || xs.len() != ys.len() {
                return false;
            }
            for (x, y) in xs.iter().zip(ys) {
                let (Var::Named(xn), Var::Named(yn)) = (x, y) else {
                    return false;
                };
                let ix = ba.iter().rev().position(|n| *n == xn);
                let iy = bb.iter().rev().position(|n| *n == yn);
                match (ix, iy) {
                    (Some(i), Some(j)) if i == j => {}
                    (None, None) => match (binder_of(free_a, xn), binder_of(free_b, yn)) {
                        (Some(u), Some(v)) => out.push((u, v)),
                        _ => return false,
                    },
                    _ => return false,
                }
            }
            true
        }
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            align_in(a1, b1, ba, bb, free_a, free_b, out)
                && align_in(a2, b2, ba, bb, free_a, free_b, out)
        }
        (Formula::Forall(x, a1), Formula::Forall(y, b1))
        | (Formula::Exists(x, a1), Formula::Exists(y, b1)) => {
            ba.push(x);
            bb.push(y);
            let r = align_in(a1, b1, ba, bb, free_a, free_b, out);
            ba.pop();
            bb.pop();
            r
        }
        (Formula::Bottom, Formula::Bottom) => true,
        _ => false,
    }
}
