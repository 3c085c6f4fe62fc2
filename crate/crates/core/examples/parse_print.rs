//! Parse formulas, print them back and compare up to bound-variable names.
use arcadian::formula::{alpha_eq, parse, print};

fn main() {
    let a = parse("forall x. forall y. R(x,y)").unwrap();
    let b = parse("forall y. forall x. R(y,x)").unwrap();
    println!("{}", print(&a));
    println!("alpha-equal to {}: {}", print(&b), alpha_eq(&a, &b));
    println!("{}", print(&parse("~p \\/ q /\\ r -> s").unwrap()));
    if let Err(e) = parse("p -> (q") {
        println!("error: {e}");
    }
}
