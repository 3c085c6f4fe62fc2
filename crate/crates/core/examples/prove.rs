//! Search for proofs and print the extracted terms.
use arcadian::engine::{prove, readable, ProveResult};
use arcadian::formula::parse;
use arcadian::machine::Budget;
use arcadian::proofterm::print_term;

fn main() {
    for text in [
        "(forall x. P(x)) -> forall y. exists x. P(x)",
        "p \\/ q -> q \\/ p",
        "(exists x. forall y. R(x,y)) -> forall y. exists x. R(x,y)",
        "((p -> q) -> p) -> p",
    ] {
        let a = prove(&parse(text).unwrap(), Budget::new(24, 3)).unwrap();
        match &a.result {
            ProveResult::Proved { term, stats, .. } => {
                println!("{text}\n  {}\n  ({} IDs expanded)", print_term(&readable(term, &a.formula)), stats.expanded)
            }
            ProveResult::NotFoundWithinFuel(_) => println!("{text}\n  not found within fuel"),
            ProveResult::Exhausted(_) => println!("{text}\n  bounded search space exhausted"),
        }
    }
}
