//! Index a formula as a tree and inspect binders and instances.
use arcadian::formula::{parse, print, Binding, Eigen, FormulaTree};

fn main() {
    let f = parse("(forall x. P(x)) -> forall y. exists x. P(x)").unwrap();
    let t = FormulaTree::index(&f).unwrap();
    for n in t.ids() {
        let fv: Vec<String> = t.fv(n).iter().map(|&m| t.path(m).to_string()).collect();
        println!("{:>4}  {:<8} fv = {{{}}}", t.path(n).to_string(), t.kind(n).symbol(), fv.join(", "));
    }
    let leaf = t.parse_node("100").unwrap();
    let w = Binding::from_pairs([(t.parse_node("10").unwrap(), Eigen(1))]);
    let inst = t.instantiate(leaf, &w).unwrap();
    println!("instance at 100: {}", print(&inst));
    for (n, _) in t.emerged_from(&inst) {
        println!("emerges from node {}", t.path(n));
    }
}
