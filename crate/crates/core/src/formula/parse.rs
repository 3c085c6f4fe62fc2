use std::collections::HashMap;

use thiserror::Error;

use super::{sym, Formula, Pred, Var};
use crate::lexer::{tokenize, Cursor, LexError, Pos, Tok};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("{pos}: expected {expected}, found {found}")]
    Syntax {
        pos: Pos,
        expected: String,
        found: String,
    },
    #[error("{pos}: predicate {pred} used with arity {found}, but earlier with arity {expected}")]
    Arity {
        pos: Pos,
        pred: String,
        expected: usize,
        found: usize,
    },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Lex(e) => e.pos,
            ParseError::Syntax { pos, .. } | ParseError::Arity { pos, .. } => *pos,
        }
    }
}

const KEYWORDS: [&str; 3] = ["forall", "exists", "bot"];

/// Parses a formula; `~a` is read as `a -> bot`.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_at(text, &mut HashMap::new())
}

/// Like [`parse`], sharing a predicate-arity table across several calls.
pub fn parse_at(text: &str, arities: &mut HashMap<String, usize>) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(tokenize(text)?);
    let mut p = FormulaParser { arities };
    let f = p.formula(&mut cur)?;
    expect(&mut cur, &Tok::Eof, "end of input")?;
    Ok(f)
}

pub(crate) fn expect(cur: &mut Cursor, tok: &Tok, what: &str) -> Result<(), ParseError> {
    if cur.eat(tok) {
        Ok(())
    } else {
        Err(unexpected(cur, what))
    }
}

pub(crate) fn unexpected(cur: &Cursor, what: &str) -> ParseError {
    ParseError::Syntax {
        pos: cur.pos(),
        expected: what.to_string(),
        found: cur.peek().to_string(),
    }
}

pub(crate) struct FormulaParser<'a> {
    pub arities: &'a mut HashMap<String, usize>,
}

impl FormulaParser<'_> {
    pub fn formula(&mut self, cur: &mut Cursor) -> Result<Formula, ParseError> {
        if cur.is_keyword("forall") || cur.is_keyword("exists") {
            let universal = cur.is_keyword("forall");
            cur.bump();
            let x = self.var_name(cur)?;
            expect(cur, &Tok::Dot, "`.`")?;
            let body = Box::new(self.formula(cur)?);
            return Ok(if universal {
                Formula::Forall(sym(&x), body)
            } else {
                Formula::Exists(sym(&x), body)
            });
        }
        let lhs = self.disjunction(cur)?;
        if cur.eat(&Tok::Arrow) {
            let rhs = self.formula(cur)?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self, cur: &mut Cursor) -> Result<Formula, ParseError> {
        let mut f = self.conjunction(cur)?;
        while cur.eat(&Tok::Or) {
            let rhs = self.conjunction(cur)?;
            f = Formula::or(f, rhs);
        }
        Ok(f)
    }

    fn conjunction(&mut self, cur: &mut Cursor) -> Result<Formula, ParseError> {
        let mut f = self.negation(cur)?;
        while cur.eat(&Tok::And) {
            let rhs = self.negation(cur)?;
            f = Formula::and(f, rhs);
        }
        Ok(f)
    }

    fn negation(&mut self, cur: &mut Cursor) -> Result<Formula, ParseError> {
        if cur.eat(&Tok::Tilde) {
            let f = self.negation(cur)?;
            return Ok(Formula::not(f));
        }
        self.atomic(cur)
    }

    fn atomic(&mut self, cur: &mut Cursor) -> Result<Formula, ParseError> {
        if cur.is_keyword("forall") || cur.is_keyword("exists") {
            return self.formula(cur);
        }
        if cur.is_keyword("bot") {
            cur.bump();
            return Ok(Formula::Bottom);
        }
        if cur.eat(&Tok::LParen) {
            let f = self.formula(cur)?;
            expect(cur, &Tok::RParen, "`)`")?;
            return Ok(f);
        }
        let pos = cur.pos();
        let name = match cur.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(unexpected(cur, "a formula")),
        };
        cur.bump();
        let mut args = Vec::new();
        if cur.eat(&Tok::LParen) {
            loop {
                args.push(Var::Named(sym(&self.var_name(cur)?)));
                if cur.eat(&Tok::Comma) {
                    continue;
                }
                expect(cur, &Tok::RParen, "`,` or `)`")?;
                break;
            }
        }
        match self.arities.get(&name) {
            Some(&a) if a != args.len() => {
                return Err(ParseError::Arity {
                    pos,
                    pred: name,
                    expected: a,
                    found: args.len(),
                })
            }
            Some(_) => {}
            None => {
                self.arities.insert(name.clone(), args.len());
            }
        }
        Ok(Formula::Atom(
            Pred {
                name: sym(&name),
                arity: args.len(),
            },
            args,
        ))
    }

    pub fn var_name(&mut self, cur: &mut Cursor) -> Result<String, ParseError> {
        match cur.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                cur.bump();
                Ok(s)
            }
            _ => Err(unexpected(cur, "a variable")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quantified_implication() {
        let f = parse("(forall x. P(x)) -> forall y. exists x. P(x)").unwrap();
        let px = Formula::atom("P", &["x"]);
        assert_eq!(
            f,
            Formula::imp(
                Formula::forall("x", px.clone()),
                Formula::forall("y", Formula::exists("x", px)),
            )
        );
    }

    #[test]
    fn bottom_and_right_associativity() {
        assert_eq!(parse("bot").unwrap(), Formula::Bottom);
        let (p, q) = (Formula::prop("p"), Formula::prop("q"));
        assert_eq!(
            parse("p -> q -> p").unwrap(),
            Formula::imp(p.clone(), Formula::imp(q, p))
        );
    }

    #[test]
    fn precedence_and_negation() {
        let (p, q, r) = (Formula::prop("p"), Formula::prop("q"), Formula::prop("r"));
        assert_eq!(
            parse("~p /\\ q \\/ r -> p").unwrap(),
            Formula::imp(
                Formula::or(Formula::and(Formula::not(p.clone()), q), r),
                p.clone()
            )
        );
        assert_eq!(parse("~~p").unwrap(), Formula::not(Formula::not(p)));
    }

    #[test]
    fn quantifier_scope_extends_right() {
        let f = parse("forall x. P(x) -> Q(x)").unwrap();
        assert_eq!(
            f,
            Formula::forall(
                "x",
                Formula::imp(Formula::atom("P", &["x"]), Formula::atom("Q", &["x"]))
            )
        );
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let err = parse("P(x) -> P(x, y)").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Arity {
                expected: 1,
                found: 2,
                ..
            }
        ));
        assert_eq!(err.pos().col, 9);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("p ->").unwrap_err();
        assert_eq!(err.pos().col, 5);
        let err = parse("forall . p").unwrap_err();
        assert!(err.to_string().contains("expected a variable"));
        assert!(parse("(p").is_err());
        assert!(parse("p q").is_err());
    }
}
