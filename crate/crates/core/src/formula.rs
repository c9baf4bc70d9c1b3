//! Propositional formulas: AST, concrete syntax, and truth evaluation.
//!
//! The reasoning engine is syntax-based, so formulas are compared by
//! structure only; logically equivalent but syntactically distinct
//! formulas are distinct values. Connective precedence in the concrete
//! syntax is `~` > `&` > `|` > `->` > `<->`, with `->` right-associative
//! and the other binary connectives left-associative.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_owned())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// The negation of `self`, as a syntactic wrapper.
    pub fn negated(&self) -> Formula {
        Formula::not(self.clone())
    }

    /// All atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set
    }

    pub(crate) fn collect_atoms(&self, set: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(name) => {
                set.insert(name.clone());
            }
            Formula::Not(child) => child.collect_atoms(set),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_atoms(set);
                r.collect_atoms(set);
            }
        }
    }

    /// Standard propositional semantics. Errors if `v` is partial on the formula.
    pub fn eval(&self, v: &Valuation) -> Result<bool> {
        match self {
            Formula::True => Ok(true),
            Formula::False => Ok(false),
            Formula::Atom(name) => v
                .get(name)
                .ok_or_else(|| Error::MissingAtom(name.clone())),
            Formula::Not(child) => Ok(!child.eval(v)?),
            Formula::And(l, r) => Ok(l.eval(v)? && r.eval(v)?),
            Formula::Or(l, r) => Ok(l.eval(v)? || r.eval(v)?),
            Formula::Implies(l, r) => Ok(!l.eval(v)? || r.eval(v)?),
            Formula::Iff(l, r) => Ok(l.eval(v)? == r.eval(v)?),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) => 5,
            Formula::True | Formula::False | Formula::Atom(_) => 6,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Formula::True => write!(f, "true")?,
            Formula::False => write!(f, "false")?,
            Formula::Atom(name) => write!(f, "{name}")?,
            Formula::Not(child) => {
                write!(f, "~")?;
                child.fmt_prec(f, 5)?;
            }
            Formula::And(l, r) => {
                l.fmt_prec(f, 4)?;
                write!(f, " & ")?;
                r.fmt_prec(f, 5)?;
            }
            Formula::Or(l, r) => {
                l.fmt_prec(f, 3)?;
                write!(f, " | ")?;
                r.fmt_prec(f, 4)?;
            }
            Formula::Implies(l, r) => {
                l.fmt_prec(f, 3)?;
                write!(f, " -> ")?;
                r.fmt_prec(f, 2)?;
            }
            Formula::Iff(l, r) => {
                l.fmt_prec(f, 1)?;
                write!(f, " <-> ")?;
                r.fmt_prec(f, 2)?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A total truth assignment over a finite atom set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation(BTreeMap<String, bool>);

impl Valuation {
    pub fn new() -> Valuation {
        Valuation(BTreeMap::new())
    }

    pub fn set(&mut self, atom: &str, value: bool) {
        self.0.insert(atom.to_owned(), value);
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.0.get(atom).copied()
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for Valuation {
    fn from_iter<T: IntoIterator<Item = (S, bool)>>(iter: T) -> Valuation {
        Valuation(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// Parses the concrete syntax described in the module docs.
pub fn parse(text: &str) -> Result<Formula> {
    let mut parser = Parser::new(text);
    let formula = parser.formula()?;
    parser.expect_end()?;
    Ok(formula)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
}

struct Parser {
    tokens: Vec<(usize, Token)>, // (1-based char position, token)
    pos: usize,
    end: usize, // position just past the input, for EOF errors
}

impl Parser {
    fn new(text: &str) -> Parser {
        let chars: Vec<char> = text.chars().collect();
        Parser {
            tokens: Vec::new(),
            pos: 0,
            end: chars.len() + 1,
        }
    }

    fn lex(&mut self, text: &str) -> Result<()> {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let at = i + 1;
            match c {
                ' ' | '\t' | '\r' | '\n' => i += 1,
                '~' => {
                    self.tokens.push((at, Token::Tilde));
                    i += 1;
                }
                '&' => {
                    self.tokens.push((at, Token::Amp));
                    i += 1;
                }
                '|' => {
                    self.tokens.push((at, Token::Pipe));
                    i += 1;
                }
                '(' => {
                    self.tokens.push((at, Token::LParen));
                    i += 1;
                }
                ')' => {
                    self.tokens.push((at, Token::RParen));
                    i += 1;
                }
                '-' => {
                    if i + 1 < chars.len() && chars[i + 1] == '>' {
                        self.tokens.push((at, Token::Arrow));
                        i += 2;
                    } else {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "expected `->`".to_owned(),
                        });
                    }
                }
                '<' => {
                    if i + 2 < chars.len() + 1 && chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                        self.tokens.push((at, Token::DoubleArrow));
                        i += 3;
                    } else {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "expected `<->`".to_owned(),
                        });
                    }
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let ident: String = chars[start..i].iter().collect();
                    self.tokens.push((start + 1, Token::Ident(ident)));
                }
                other => {
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("unexpected character `{other}`"),
                    });
                }
            }
        }
        Ok(())
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn next_pos(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        self.equiv()
    }

    fn equiv(&mut self) -> Result<Formula> {
        let mut lhs = self.impl_()?;
        while self.eat(&Token::DoubleArrow) {
            let rhs = self.impl_()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn impl_(&mut self) -> Result<Formula> {
        let lhs = self.disj()?;
        if self.eat(&Token::Arrow) {
            let rhs = self.impl_()?; // right-associative
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut lhs = self.conj()?;
        while self.eat(&Token::Pipe) {
            let rhs = self.conj()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::Amp) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let pos = self.next_pos();
        match self.bump() {
            Some(Token::Tilde) => Ok(Formula::not(self.unary()?)),
            Some(Token::LParen) => {
                let inner = self.formula()?;
                if self.eat(&Token::RParen) {
                    Ok(inner)
                } else {
                    Err(Error::Parse {
                        pos: self.next_pos(),
                        msg: "expected `)`".to_owned(),
                    })
                }
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "true" => Ok(Formula::True),
                "false" => Ok(Formula::False),
                _ => Ok(Formula::Atom(name)),
            },
            Some(tok) => Err(Error::Parse {
                pos,
                msg: format!("unexpected token `{tok:?}`"),
            }),
            None => Err(Error::Parse {
                pos,
                msg: "unexpected end of input".to_owned(),
            }),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(Error::Parse {
                pos: self.next_pos(),
                msg: "trailing input after formula".to_owned(),
            })
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse(s)
    }
}

// Parser construction needs two passes over the text (lexing fills the
// token buffer), so `parse` wires them together here.
impl Parser {
    fn formula_entry(text: &str) -> Result<Parser> {
        let mut p = Parser::new(text);
        p.lex(text)?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn parses_implication_with_conjunction_chain() {
        let got = p("a -> b & e & f");
        let want = Formula::implies(
            Formula::atom("a"),
            Formula::and(Formula::and(Formula::atom("b"), Formula::atom("e")), Formula::atom("f")),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn parses_constants_and_negated_disjunction() {
        assert_eq!(p("true"), Formula::True);
        assert_eq!(p("false"), Formula::False);
        let got = p("~b | ~d");
        let want = Formula::or(
            Formula::not(Formula::atom("b")),
            Formula::not(Formula::atom("d")),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            p("a -> b -> c"),
            Formula::implies(Formula::atom("a"), Formula::implies(Formula::atom("b"), Formula::atom("c")))
        );
    }

    #[test]
    fn precedence_orders_connectives() {
        assert_eq!(
            p("~a & b | c -> d <-> e"),
            Formula::iff(
                Formula::implies(
                    Formula::or(
                        Formula::and(Formula::not(Formula::atom("a")), Formula::atom("b")),
                        Formula::atom("c")
                    ),
                    Formula::atom("d")
                ),
                Formula::atom("e")
            )
        );
    }

    #[test]
    fn reports_error_positions() {
        match parse("a & ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("a @ b") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("(a | b").is_err());
        assert!(parse("a b").is_err());
    }

    #[test]
    fn eval_follows_truth_tables() {
        let v: Valuation = [("a", true), ("b", false)].into_iter().collect();
        assert!(Formula::True.eval(&v).unwrap());
        assert!(!p("a -> b").eval(&v).unwrap());
        assert!(p("a -> a").eval(&v).unwrap());
        let v2: Valuation = [("b", true), ("d", false)].into_iter().collect();
        assert!(p("~b | ~d").eval(&v2).unwrap());
        assert_eq!(p("a <-> b").eval(&v).unwrap(), false);
    }

    #[test]
    fn eval_errors_on_partial_valuation() {
        let v: Valuation = [("a", true)].into_iter().collect();
        assert_eq!(
            p("a & b").eval(&v),
            Err(Error::MissingAtom("b".to_owned()))
        );
    }

    #[test]
    fn atoms_collects_exactly_the_occurring_names() {
        let names: Vec<_> = p("a -> b & e & f").atoms().into_iter().collect();
        assert_eq!(names, vec!["a", "b", "e", "f"]);
        assert!(Formula::True.atoms().is_empty());
        let names: Vec<_> = p("~b | ~d").atoms().into_iter().collect();
        assert_eq!(names, vec!["b", "d"]);
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::True),
            Just(Formula::False),
            prop_oneof![Just("a"), Just("b"), Just("c"), Just("dd"), Just("x_1")]
                .prop_map(Formula::atom),
        ];
        leaf.prop_recursive(5, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_formula()) {
            let printed = f.to_string();
            let reparsed = parse(&printed).unwrap();
            prop_assert_eq!(reparsed, f);
        }

        #[test]
        fn de_morgan_duality_under_eval(f in arb_formula(), g in arb_formula(), seed in any::<u64>()) {
            let mut v = Valuation::new();
            let mut bits = seed;
            for atom in f.atoms().union(&g.atoms()) {
                v.set(atom, bits & 1 == 1);
                bits >>= 1;
            }
            let lhs = Formula::not(Formula::and(f.clone(), g.clone())).eval(&v).unwrap();
            let rhs = Formula::or(Formula::not(f), Formula::not(g)).eval(&v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
