//! Build the automaton of a formula and list its instructions.
use arcadian::construction::{build, dump_table};
use arcadian::formula::parse;

fn main() {
    let text = std::env::args().nth(1).unwrap_or("(forall x. P(x)) -> forall y. exists x. P(x)".into());
    let c = build(&parse(&text).unwrap()).unwrap();
    let aut = &c.automaton;
    println!("{} states, {} instructions", aut.states().len(), aut.instructions().len());
    print!("{}", dump_table(aut, &c.table));
}
