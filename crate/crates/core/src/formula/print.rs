use super::Formula;

const QUANT: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NEG: u8 = 4;
const ATOM: u8 = 5;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => QUANT,
        Formula::Imp(_, b) if **b == Formula::Bottom => NEG,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Atom(..) | Formula::Bottom => ATOM,
    }
}

/// Renders a formula with the minimal parentheses the parser needs.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    go(f, QUANT, true, &mut out);
    out
}

/// `tail` marks positions where a quantifier may appear unparenthesized
/// because its scope can extend to the end of the enclosing group.
fn go(f: &Formula, min: u8, tail: bool, out: &mut String) {
    let p = prec(f);
    if p < min || (p == QUANT && !tail) {
        out.push('(');
        go(f, QUANT, true, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Atom(pred, args) => {
            out.push_str(&pred.name);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&a.to_string());
                }
                out.push(')');
            }
        }
        Formula::Bottom => out.push_str("bot"),
        Formula::Imp(a, b) if **b == Formula::Bottom => {
            out.push('~');
            go(a, NEG, false, out);
        }
        Formula::Imp(a, b) => {
            go(a, OR, false, out);
            out.push_str(" -> ");
            go(b, QUANT, true, out);
        }
        Formula::Or(a, b) => {
            go(a, OR, false, out);
            out.push_str(" \\/ ");
            go(b, AND, false, out);
        }
        Formula::And(a, b) => {
            go(a, AND, false, out);
            out.push_str(" /\\ ");
            go(b, NEG, false, out);
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            out.push_str(if matches!(f, Formula::Forall(..)) {
                "forall "
            } else {
                "exists "
            });
            out.push_str(x);
            out.push_str(". ");
            go(body, QUANT, true, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn minimal_parentheses() {
        assert_eq!(print(&Formula::Bottom), "bot");
        let (p, q) = (Formula::prop("p"), Formula::prop("q"));
        assert_eq!(
            print(&Formula::imp(p.clone(), Formula::imp(q.clone(), p.clone()))),
            "p -> q -> p"
        );
        assert_eq!(
            print(&Formula::imp(Formula::imp(p.clone(), q.clone()), p.clone())),
            "(p -> q) -> p"
        );
        assert_eq!(
            print(&Formula::or(p.clone(), Formula::or(q.clone(), p.clone()))),
            "p \\/ (q \\/ p)"
        );
        assert_eq!(
            print(&Formula::or(Formula::or(p.clone(), q.clone()), p.clone())),
            "p \\/ q \\/ p"
        );
    }

    #[test]
    fn quantified_example_prints_with_one_pair_of_parentheses() {
        let text = "(forall x. P(x)) -> forall y. exists x. P(x)";
        assert_eq!(print(&parse(text).unwrap()), text);
    }

    #[test]
    fn negations_and_nested_quantifiers() {
        let cases = [
            "~~(p \\/ ~p)",
            "(forall x. P(x)) -> ~(exists x. ~P(x))",
            "p /\\ (forall x. P(x)) -> q",
            "(exists x. P(x) \\/ Q(x)) -> (exists x. P(x)) \\/ (exists x. Q(x))",
            "~(p -> q)",
        ];
        for c in cases {
            assert_eq!(print(&parse(c).unwrap()), c);
        }
    }
}
