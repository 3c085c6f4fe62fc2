//! Decide propositional formulas with the sequent-calculus oracle.
use arcadian::formula::parse;
use arcadian::oracle::decide_prop;

fn main() {
    for text in ["p \\/ ~p", "~~(p \\/ ~p)", "((p -> q) -> p) -> p", "(p -> q) \\/ (((q -> p) -> q) -> q)"] {
        println!("{text}: {}", decide_prop(&parse(text).unwrap()).unwrap());
    }
}
