use std::collections::HashMap;

use super::{Branch, ProofTerm, Side};
use crate::formula::{expect_tok, print, sym, unexpected_tok, Formula, FormulaParser, ParseError, Var};
use crate::lexer::{tokenize, Cursor, Tok};

const KEYWORDS: [&str; 14] = [
    "case", "of", "let", "in", "pack", "to", "abort", "inl", "inr", "p1", "p2", "forall", "exists", "bot",
];

pub fn parse_term(text: &str) -> Result<ProofTerm, ParseError> {
    parse_term_at(text, &mut HashMap::new())
}

/// Parses a term whose annotations share the predicate arities in `arities`.
pub fn parse_term_at(text: &str, arities: &mut HashMap<String, usize>) -> Result<ProofTerm, ParseError> {
    let mut cur = Cursor::new(tokenize(text)?);
    let mut p = TermParser {
        formulas: FormulaParser { arities },
    };
    let m = p.term(&mut cur)?;
    expect_tok(&mut cur, &Tok::Eof, "end of input")?;
    Ok(m)
}

struct TermParser<'a> {
    formulas: FormulaParser<'a>,
}

impl TermParser<'_> {
    fn name(&mut self, cur: &mut Cursor) -> Result<String, ParseError> {
        match cur.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                cur.bump();
                Ok(s)
            }
            _ => Err(unexpected_tok(cur, "a variable")),
        }
    }

    fn formula(&mut self, cur: &mut Cursor) -> Result<Formula, ParseError> {
        self.formulas.formula(cur)
    }

    fn bracketed_formula(&mut self, cur: &mut Cursor) -> Result<Formula, ParseError> {
        expect_tok(cur, &Tok::LBracket, "`[`")?;
        let f = self.formula(cur)?;
        expect_tok(cur, &Tok::RBracket, "`]`")?;
        Ok(f)
    }

    fn term(&mut self, cur: &mut Cursor) -> Result<ProofTerm, ParseError> {
        if cur.eat(&Tok::Lambda) {
            let x = self.name(cur)?;
            expect_tok(cur, &Tok::Colon, "`:`")?;
            let ty = self.formula(cur)?;
            expect_tok(cur, &Tok::Dot, "`.`")?;
            let body = self.term(cur)?;
            return Ok(ProofTerm::lam(&x, ty, body));
        }
        if cur.eat(&Tok::BigLambda) {
            let x = self.name(cur)?;
            expect_tok(cur, &Tok::Dot, "`.`")?;
            let body = self.term(cur)?;
            return Ok(ProofTerm::tlam(Var::named(&x), body));
        }
        if cur.is_keyword("let") {
            cur.bump();
            expect_tok(cur, &Tok::LBracket, "`[`")?;
            let eigen = self.name(cur)?;
            expect_tok(cur, &Tok::Comma, "`,`")?;
            let label = self.name(cur)?;
            expect_tok(cur, &Tok::Colon, "`:`")?;
            let ty = self.formula(cur)?;
            expect_tok(cur, &Tok::RBracket, "`]`")?;
            expect_tok(cur, &Tok::Eq, "`=`")?;
            let scrut = self.term(cur)?;
            if !cur.is_keyword("in") {
                return Err(unexpected_tok(cur, "`in`"));
            }
            cur.bump();
            let body = self.term(cur)?;
            return Ok(ProofTerm::let_in(Var::named(&eigen), &label, ty, scrut, body));
        }
        if cur.is_keyword("pack") {
            cur.bump();
            let body = self.term(cur)?;
            expect_tok(cur, &Tok::Comma, "`,`")?;
            let witness = self.name(cur)?;
            if !cur.is_keyword("to") {
                return Err(unexpected_tok(cur, "`to`"));
            }
            cur.bump();
            let var = self.name(cur)?;
            expect_tok(cur, &Tok::Dot, "`.`")?;
            let formula = self.formula(cur)?;
            return Ok(ProofTerm::pack(body, Var::named(&witness), &var, formula));
        }
        self.application(cur)
    }

    fn application(&mut self, cur: &mut Cursor) -> Result<ProofTerm, ParseError> {
        let mut m = self.unit(cur)?;
        loop {
            if cur.eat(&Tok::At) {
                let y = self.name(cur)?;
                m = ProofTerm::tapp(m, Var::named(&y));
            } else if self.at_atom(cur) {
                let a = self.atom(cur)?;
                m = ProofTerm::app(m, a);
            } else {
                return Ok(m);
            }
        }
    }

    fn at_atom(&self, cur: &Cursor) -> bool {
        match cur.peek() {
            Tok::Ident(s) => s == "case" || !KEYWORDS.contains(&s.as_str()),
            Tok::LParen | Tok::Lt => true,
            _ => false,
        }
    }

    fn unit(&mut self, cur: &mut Cursor) -> Result<ProofTerm, ParseError> {
        let kw = match cur.peek() {
            Tok::Ident(s) => s.clone(),
            _ => String::new(),
        };
        match kw.as_str() {
            "p1" | "p2" => {
                cur.bump();
                let side = if kw == "p1" { Side::Left } else { Side::Right };
                Ok(ProofTerm::proj(side, self.unit(cur)?))
            }
            "inl" | "inr" | "abort" => {
                cur.bump();
                let annot = self.bracketed_formula(cur)?;
                let m = self.unit(cur)?;
                Ok(match kw.as_str() {
                    "inl" => ProofTerm::inl(annot, m),
                    "inr" => ProofTerm::inr(annot, m),
                    _ => ProofTerm::abort(annot, m),
                })
            }
            _ => self.atom(cur),
        }
    }

    fn atom(&mut self, cur: &mut Cursor) -> Result<ProofTerm, ParseError> {
        if cur.eat(&Tok::LParen) {
            let m = self.term(cur)?;
            expect_tok(cur, &Tok::RParen, "`)`")?;
            return Ok(m);
        }
        if cur.eat(&Tok::Lt) {
            let a = self.term(cur)?;
            expect_tok(cur, &Tok::Comma, "`,`")?;
            let b = self.term(cur)?;
            expect_tok(cur, &Tok::Gt, "`>`")?;
            return Ok(ProofTerm::pair(a, b));
        }
        if cur.is_keyword("case") {
            cur.bump();
            let scrut = self.term(cur)?;
            if !cur.is_keyword("of") {
                return Err(unexpected_tok(cur, "`of`"));
            }
            cur.bump();
            expect_tok(cur, &Tok::LBrace, "`{`")?;
            let left = self.branch(cur)?;
            expect_tok(cur, &Tok::Bar, "`|`")?;
            let right = self.branch(cur)?;
            expect_tok(cur, &Tok::RBrace, "`}`")?;
            return Ok(ProofTerm::Case {
                scrut: Box::new(scrut),
                left,
                right,
            });
        }
        let x = self.name(cur).map_err(|_| unexpected_tok(cur, "a term"))?;
        Ok(ProofTerm::Var(sym(&x)))
    }

    fn branch(&mut self, cur: &mut Cursor) -> Result<Branch, ParseError> {
        let x = self.name(cur)?;
        expect_tok(cur, &Tok::Colon, "`:`")?;
        let ty = self.formula(cur)?;
        expect_tok(cur, &Tok::FatArrow, "`=>`")?;
        let body = self.term(cur)?;
        Ok(Branch {
            var: sym(&x),
            ty,
            body: Box::new(body),
        })
    }
}

const TOP: u8 = 0;
const APP: u8 = 1;
const UNIT: u8 = 2;
const ATOM: u8 = 3;

fn level(m: &ProofTerm) -> u8 {
    use ProofTerm as T;
    match m {
        T::Lam(..) | T::TLam(..) | T::Let { .. } | T::Pack { .. } => TOP,
        T::App(..) | T::TApp(..) => APP,
        T::Proj(..) | T::Inl(..) | T::Inr(..) | T::Abort(..) => UNIT,
        T::Var(_) | T::Pair(..) | T::Case { .. } => ATOM,
    }
}

/// Renders a term in the concrete syntax accepted by [`parse_term`].
pub fn print_term(m: &ProofTerm) -> String {
    let mut out = String::new();
    go(m, TOP, &mut out);
    out
}

fn annotation(f: &Formula) -> String {
    if f.is_quantifier() {
        format!("({})", print(f))
    } else {
        print(f)
    }
}

fn go(m: &ProofTerm, min: u8, out: &mut String) {
    use ProofTerm as T;
    if level(m) < min {
        out.push('(');
        go(m, TOP, out);
        out.push(')');
        return;
    }
    match m {
        T::Var(x) => out.push_str(x),
        T::Lam(x, ty, body) => {
            out.push_str(&format!("\\{x}:{}. ", annotation(ty)));
            go(body, TOP, out);
        }
        T::TLam(x, body) => {
            out.push_str(&format!("\\\\{x}. "));
            go(body, TOP, out);
        }
        T::Let {
            eigen,
            label,
            ty,
            scrut,
            body,
        } => {
            out.push_str(&format!("let [{eigen}, {label}:{}] = ", print(ty)));
            go(scrut, TOP, out);
            out.push_str(" in ");
            go(body, TOP, out);
        }
        T::Pack {
            body,
            witness,
            var,
            formula,
        } => {
            out.push_str("pack ");
            go(body, ATOM, out);
            out.push_str(&format!(", {witness} to {var}. {}", print(formula)));
        }
        T::App(f, a) => {
            go(f, APP, out);
            out.push(' ');
            go(a, ATOM, out);
        }
        T::TApp(f, y) => {
            go(f, APP, out);
            out.push_str(&format!(" @{y}"));
        }
        T::Proj(side, a) => {
            out.push_str(&format!("p{} ", side.index()));
            go(a, UNIT, out);
        }
        T::Inl(f, a) | T::Inr(f, a) | T::Abort(f, a) => {
            let kw = match m {
                T::Inl(..) => "inl",
                T::Inr(..) => "inr",
                _ => "abort",
            };
            out.push_str(&format!("{kw}[{}] ", print(f)));
            go(a, UNIT, out);
        }
        T::Pair(a, b) => {
            out.push('<');
            go(a, TOP, out);
            out.push_str(", ");
            go(b, TOP, out);
            out.push('>');
        }
        T::Case { scrut, left, right } => {
            out.push_str("case ");
            go(scrut, TOP, out);
            out.push_str(" of {");
            for (i, b) in [left, right].into_iter().enumerate() {
                if i > 0 {
                    out.push_str(" | ");
                }
                out.push_str(&format!("{}:{} => ", b.var, print(&b.ty)));
                go(&b.body, TOP, out);
            }
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::term_alpha_eq;
    use super::*;
    use crate::formula::parse;

    #[test]
    fn parses_the_quantified_example_term() {
        let text = "\\x:(forall x. P(x)). \\\\Y. pack (x @Y), Y to x. P(x)";
        let m = parse_term(text).unwrap();
        let want = ProofTerm::lam(
            "x",
            parse("forall x. P(x)").unwrap(),
            ProofTerm::tlam(
                Var::named("Y"),
                ProofTerm::pack(
                    ProofTerm::tapp(ProofTerm::var("x"), Var::named("Y")),
                    Var::named("Y"),
                    "x",
                    parse("P(x)").unwrap(),
                ),
            ),
        );
        assert_eq!(m, want);
        assert_eq!(print_term(&m), text);
    }

    #[test]
    fn application_is_left_associative() {
        let m = parse_term("f a b").unwrap();
        let want = ProofTerm::app(ProofTerm::app(ProofTerm::var("f"), ProofTerm::var("a")), ProofTerm::var("b"));
        assert_eq!(m, want);
        let p = parse_term("p1 x y").unwrap();
        assert_eq!(
            p,
            ProofTerm::app(ProofTerm::proj(Side::Left, ProofTerm::var("x")), ProofTerm::var("y"))
        );
    }

    #[test]
    fn round_trips() {
        let cases = [
            "\\x:p. x",
            "\\x:p /\\ q. <p2 x, p1 x>",
            "\\x:p \\/ q. case x of {a:p => inr[q \\/ p] a | b:q => inl[q \\/ p] b}",
            "\\h:(exists x. P(x)). let [Y, u:P(Y)] = h in pack u, Y to z. P(z)",
            "\\x:bot. abort[p] x",
            "\\f:p -> q. \\a:p. f a",
            "p1 (f @X) a",
            "(\\x:p. x) y",
        ];
        for c in cases {
            let m = parse_term(c).unwrap();
            assert_eq!(print_term(&m), c);
            assert!(term_alpha_eq(&parse_term(&print_term(&m)).unwrap(), &m));
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_term("\\x:p x").unwrap_err();
        assert_eq!(err.pos().col, 6);
        assert!(parse_term("case x of {a:p => a}").is_err());
        assert!(parse_term("let [X, u:P(X)] = h u").is_err());
        let mut ar = HashMap::from([("P".to_string(), 1)]);
        assert!(matches!(parse_term_at("\\x:P. x", &mut ar), Err(ParseError::Arity { .. })));
    }
}
