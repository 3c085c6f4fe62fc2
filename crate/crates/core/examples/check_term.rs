//! Type-check proof terms against formulas.
use arcadian::formula::parse;
use arcadian::proofterm::{is_lnf, parse_term, type_check, Context};

fn main() {
    let goal = parse("p /\\ q -> q /\\ p").unwrap();
    for text in ["\\h:p /\\ q. <p2 h, p1 h>", "\\h:p /\\ q. <p1 h, p2 h>"] {
        let m = parse_term(text).unwrap();
        match type_check(&Context::new(), &m, &goal) {
            Ok(()) => println!("{text}: ok, long normal = {}", is_lnf(&Context::new(), &m, &goal).unwrap()),
            Err(e) => println!("{text}: {e}"),
        }
    }
}
