//! Recursive-descent parser producing the surface syntax tree.

use num_traits::One;

use super::ast::{CmpOp, IncrRhs, SGuard, SStmt, Spanned, SurfaceProgram, Term};
use super::lexer::{tokenize, Tok, Token};
use super::{LangError, Span};
use crate::dist::DistSpec;
use crate::error::Error;
use crate::rational::{parse_probability_literal, Rational};

pub const KEYWORDS: &[&str] = &[
    "skip", "if", "else", "observe", "and", "or", "not", "true", "false", "iid", "geometric", "bernoulli",
    "dirac", "uniform", "binomial", "negbinomial", "custom",
];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn syntax(span: Span, message: impl Into<String>) -> LangError {
    LangError::SyntaxError { line: span.line, column: span.column, message: message.into() }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn unexpected(&self, expected: &str) -> LangError {
        syntax(self.span(), format!("expected {expected}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, LangError> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, LangError> {
        if self.at_keyword(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn variable(&mut self) -> Result<Spanned<String>, LangError> {
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                let span = self.bump().span;
                Ok(Spanned { node: name, span })
            }
            _ => Err(self.unexpected("a variable")),
        }
    }

    fn integer(&mut self) -> Result<u64, LangError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let span = self.bump().span;
                s.parse().map_err(|_| syntax(span, format!("integer `{s}` is too large")))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    /// `n`, `n/d` or a terminating decimal, required to lie in [0, 1].
    fn probability(&mut self) -> Result<Rational, LangError> {
        let span = self.span();
        let text = match self.peek().clone() {
            Tok::Decimal(s) => {
                self.bump();
                s
            }
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(d) => {
                            self.bump();
                            format!("{n}/{d}")
                        }
                        _ => return Err(self.unexpected("a denominator")),
                    }
                } else {
                    n
                }
            }
            _ => return Err(self.unexpected("a probability")),
        };
        let p = parse_probability_literal(&text).map_err(|e| syntax(span, e.to_string()))?;
        if p > Rational::one() {
            return Err(LangError::ProbabilityRangeError { line: span.line, column: span.column, value: text });
        }
        Ok(p)
    }

    fn program(&mut self, terminator: &Tok) -> Result<SurfaceProgram, LangError> {
        let mut out = Vec::new();
        while self.peek() != terminator {
            out.push(self.statement()?);
            if *self.peek() == Tok::Semi {
                self.bump();
            } else if self.peek() != terminator {
                return Err(self.unexpected("`;`"));
            }
        }
        Ok(out)
    }

    fn block(&mut self) -> Result<SurfaceProgram, LangError> {
        self.expect(Tok::LBrace, "`{`")?;
        let body = self.program(&Tok::RBrace)?;
        self.expect(Tok::RBrace, "`}`")?;
        Ok(body)
    }

    fn statement(&mut self) -> Result<Spanned<SStmt>, LangError> {
        let span = self.span();
        let node = match self.peek().clone() {
            Tok::LBrace => {
                let left = self.block()?;
                if *self.peek() == Tok::LBracket {
                    self.bump();
                    let p = self.probability()?;
                    self.expect(Tok::RBracket, "`]`")?;
                    let right = self.block()?;
                    SStmt::Choice(left, p, right)
                } else {
                    SStmt::Block(left)
                }
            }
            Tok::Ident(kw) if kw == "skip" => {
                self.bump();
                SStmt::Skip
            }
            Tok::Ident(kw) if kw == "observe" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let g = self.guard()?;
                self.expect(Tok::RParen, "`)`")?;
                SStmt::Observe(g)
            }
            Tok::Ident(kw) if kw == "if" => self.if_statement()?,
            Tok::Ident(_) => {
                let var = self.variable()?;
                match self.peek() {
                    Tok::Assign => {
                        self.bump();
                        SStmt::Assign(var, self.linear()?)
                    }
                    Tok::PlusAssign => {
                        self.bump();
                        SStmt::Incr(var, self.increment()?)
                    }
                    Tok::MinusMinus => {
                        self.bump();
                        SStmt::Decr(var)
                    }
                    _ => return Err(self.unexpected("`:=`, `+=` or `--`")),
                }
            }
            _ => return Err(self.unexpected("a statement")),
        };
        Ok(Spanned { node, span })
    }

    fn if_statement(&mut self) -> Result<SStmt, LangError> {
        self.keyword("if")?;
        self.expect(Tok::LParen, "`(`")?;
        let g = self.guard()?;
        self.expect(Tok::RParen, "`)`")?;
        let then = self.block()?;
        let otherwise = if self.at_keyword("else") {
            self.bump();
            if self.at_keyword("if") {
                let span = self.span();
                vec![Spanned { node: self.if_statement()?, span }]
            } else {
                self.block()?
            }
        } else {
            Vec::new()
        };
        Ok(SStmt::If(g, then, otherwise))
    }

    fn linear(&mut self) -> Result<Vec<Term>, LangError> {
        let mut terms = vec![self.term()?];
        while *self.peek() == Tok::Plus {
            self.bump();
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term, LangError> {
        if let Tok::Int(_) = self.peek() {
            let n = self.integer()?;
            if *self.peek() == Tok::Star {
                self.bump();
                return Ok(Term::Var(n, self.variable()?));
            }
            return Ok(Term::Const(n));
        }
        Ok(Term::Var(1, self.variable()?))
    }

    fn increment(&mut self) -> Result<IncrRhs, LangError> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(IncrRhs::Const(self.integer()?)),
            Tok::Ident(kw) if kw == "iid" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let d = self.distribution()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.variable()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(IncrRhs::Iid(d, y))
            }
            Tok::Ident(kw) if KEYWORDS.contains(&kw.as_str()) => Ok(IncrRhs::Dist(self.distribution()?)),
            Tok::Ident(_) => Ok(IncrRhs::Var(self.variable()?)),
            _ => Err(self.unexpected("an integer, variable or distribution")),
        }
    }

    fn distribution(&mut self) -> Result<DistSpec, LangError> {
        let span = self.span();
        let name = match self.peek().clone() {
            Tok::Ident(s) => s,
            _ => return Err(self.unexpected("a distribution")),
        };
        self.bump();
        self.expect(Tok::LParen, "`(`")?;
        let spec = match name.as_str() {
            "geometric" => DistSpec::Geometric(self.probability()?),
            "bernoulli" => DistSpec::Bernoulli(self.probability()?),
            "dirac" => DistSpec::Dirac(self.integer()?),
            "uniform" => DistSpec::Uniform(self.integer()?),
            "binomial" | "negbinomial" => {
                let n = self.integer()?;
                self.expect(Tok::Comma, "`,`")?;
                let p = self.probability()?;
                if name == "binomial" {
                    DistSpec::Binomial(n, p)
                } else {
                    DistSpec::NegBinomial(n, p)
                }
            }
            "custom" => match self.peek().clone() {
                Tok::Str(path) => {
                    self.bump();
                    DistSpec::Custom(path.into())
                }
                _ => return Err(self.unexpected("a file path string")),
            },
            _ => return Err(syntax(span, format!("unknown distribution `{name}`"))),
        };
        self.expect(Tok::RParen, "`)`")?;
        spec.check().map_err(|e| match e {
            Error::InvalidParameter(message) => {
                LangError::InvalidDistribution { line: span.line, column: span.column, message }
            }
            other => syntax(span, other.to_string()),
        })?;
        Ok(spec)
    }

    fn guard(&mut self) -> Result<Spanned<SGuard>, LangError> {
        let mut left = self.conjunction()?;
        while self.at_keyword("or") {
            self.bump();
            let right = self.conjunction()?;
            let span = left.span;
            left = Spanned { node: SGuard::Or(Box::new(left), Box::new(right)), span };
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Spanned<SGuard>, LangError> {
        let mut left = self.negation()?;
        while self.at_keyword("and") {
            self.bump();
            let right = self.negation()?;
            let span = left.span;
            left = Spanned { node: SGuard::And(Box::new(left), Box::new(right)), span };
        }
        Ok(left)
    }

    fn negation(&mut self) -> Result<Spanned<SGuard>, LangError> {
        let span = self.span();
        if self.at_keyword("not") {
            self.bump();
            let inner = self.negation()?;
            return Ok(Spanned { node: SGuard::Not(Box::new(inner)), span });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Spanned<SGuard>, LangError> {
        let span = self.span();
        let node = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let g = self.guard()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(g);
            }
            Tok::Ident(kw) if kw == "true" => {
                self.bump();
                SGuard::True
            }
            Tok::Ident(kw) if kw == "false" => {
                self.bump();
                SGuard::False
            }
            _ => {
                let var = self.variable()?;
                if *self.peek() == Tok::Percent {
                    self.bump();
                    let m = self.integer()?;
                    self.expect(Tok::EqEq, "`==`")?;
                    let n = self.integer()?;
                    SGuard::Mod(var, m, n)
                } else {
                    let op = match self.peek() {
                        Tok::Lt => CmpOp::Lt,
                        Tok::Le => CmpOp::Le,
                        Tok::EqEq => CmpOp::Eq,
                        Tok::Ne => CmpOp::Ne,
                        Tok::Gt => CmpOp::Gt,
                        Tok::Ge => CmpOp::Ge,
                        _ => return Err(self.unexpected("a comparison operator")),
                    };
                    self.bump();
                    SGuard::Cmp(var, op, self.integer()?)
                }
            }
        };
        Ok(Spanned { node, span })
    }
}

/// Parses source text into the surface tree.
pub fn parse_surface(src: &str) -> Result<SurfaceProgram, LangError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let prog = p.program(&Tok::Eof)?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(prog)
}

/// Parses a standalone guard expression, as used by queries.
pub fn parse_guard_surface(src: &str) -> Result<Spanned<SGuard>, LangError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let g = p.guard()?;
    p.expect(Tok::Eof, "end of guard")?;
    Ok(g)
}
