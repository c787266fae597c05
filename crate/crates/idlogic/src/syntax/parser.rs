//! Recursive-descent parser for theory files.
//!
//! The concrete grammar, in EBNF (`#` starts a line comment; whitespace is
//! free):
//!
//! ```text
//! theory      = { declaration | axiom } ;
//! declaration = ( "pred" ident "/" nat | "func" ident "/" nat | "const" ident ) "." ;
//! axiom       = formula "." ;
//!
//! formula     = iff ;
//! iff         = implies { "<=>" implies } ;              (* left-assoc *)
//! implies     = or [ "=>" implies ] ;                    (* right-assoc *)
//! or          = and { "|" and } ;
//! and         = unary { "&" unary } ;
//! unary       = "~" unary
//!             | ("!" | "?") binder ":" formula           (* maximal scope *)
//!             | primary ;
//! binder      = ident [ "/" nat ] ;
//! primary     = "true" | "false"
//!             | "(" formula ")"
//!             | definition
//!             | atom
//!             | term "=" term ;
//! definition  = "{" rule { rule } "}" ;
//! rule        = atom "<-" formula "." ;
//! atom        = pred-ident [ "(" term { "," term } ")" ] ;
//! term        = obj-ident [ "(" term { "," term } ")" ] ;
//! ```
//!
//! Identifiers starting with an upper-case letter are predicate symbols;
//! all others (including numerals) are object or function symbols. A
//! binder with an arity annotation quantifies a predicate (`?X/2:`) or a
//! function (`?f/1:`); without one it quantifies an object symbol. The
//! reserved namespace — names containing `$` or `'` — cannot be declared;
//! it is used for machine-generated symbols, which keeps emitted formulas
//! re-parseable.
//!
//! Inside a rule, undeclared and unbound object identifiers are collected
//! as the rule's implicit universal variables. Everywhere else an
//! undeclared symbol is an error.

use std::collections::BTreeSet;

use super::ast::{Binder, BinderKind, Definition, Formula, Rule, Term, Theory};
use crate::error::{Error, Result};

pub fn parse_theory(text: &str) -> Result<Theory> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        theory: Theory { vocab: Default::default(), axioms: vec![] },
        scopes: vec![],
        rule_vars: None,
    };
    parser.theory()?;
    Ok(parser.theory)
}

/// Parse a single formula against an existing vocabulary (no declarations,
/// no trailing period). Used by tests and the examples.
pub fn parse_formula(text: &str, vocab: &crate::structure::Vocabulary) -> Result<Formula> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        theory: Theory { vocab: vocab.clone(), axioms: vec![] },
        scopes: vec![],
        rule_vars: None,
    };
    let f = parser.formula()?;
    parser.expect(TokKind::Eof)?;
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
enum TokKind {
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Slash,
    Colon,
    Arrow,   // <-
    Tilde,   // ~
    Amp,     // &
    Pipe,    // |
    Implies, // =>
    Iff,     // <=>
    Eq,      // =
    Bang,    // !
    Question,
    KwPred,
    KwFunc,
    KwConst,
    KwTrue,
    KwFalse,
    Eof,
}

impl TokKind {
    fn describe(&self) -> String {
        match self {
            TokKind::Ident(s) => format!("`{s}`"),
            TokKind::LParen => "`(`".into(),
            TokKind::RParen => "`)`".into(),
            TokKind::LBrace => "`{`".into(),
            TokKind::RBrace => "`}`".into(),
            TokKind::Comma => "`,`".into(),
            TokKind::Dot => "`.`".into(),
            TokKind::Slash => "`/`".into(),
            TokKind::Colon => "`:`".into(),
            TokKind::Arrow => "`<-`".into(),
            TokKind::Tilde => "`~`".into(),
            TokKind::Amp => "`&`".into(),
            TokKind::Pipe => "`|`".into(),
            TokKind::Implies => "`=>`".into(),
            TokKind::Iff => "`<=>`".into(),
            TokKind::Eq => "`=`".into(),
            TokKind::Bang => "`!`".into(),
            TokKind::Question => "`?`".into(),
            TokKind::KwPred => "`pred`".into(),
            TokKind::KwFunc => "`func`".into(),
            TokKind::KwConst => "`const`".into(),
            TokKind::KwTrue => "`true`".into(),
            TokKind::KwFalse => "`false`".into(),
            TokKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    line: usize,
    col: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

fn ident_cont(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    loop {
        let (tline, tcol) = (line, col);
        let c = match chars.peek().copied() {
            Some(c) => c,
            None => {
                out.push(Tok { kind: TokKind::Eof, line, col });
                return Ok(out);
            }
        };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        let kind = match c {
            '(' => {
                bump!();
                TokKind::LParen
            }
            ')' => {
                bump!();
                TokKind::RParen
            }
            '{' => {
                bump!();
                TokKind::LBrace
            }
            '}' => {
                bump!();
                TokKind::RBrace
            }
            ',' => {
                bump!();
                TokKind::Comma
            }
            '.' => {
                bump!();
                TokKind::Dot
            }
            '/' => {
                bump!();
                TokKind::Slash
            }
            ':' => {
                bump!();
                TokKind::Colon
            }
            '~' => {
                bump!();
                TokKind::Tilde
            }
            '&' => {
                bump!();
                TokKind::Amp
            }
            '|' => {
                bump!();
                TokKind::Pipe
            }
            '!' => {
                bump!();
                TokKind::Bang
            }
            '?' => {
                bump!();
                TokKind::Question
            }
            '=' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    TokKind::Implies
                } else {
                    TokKind::Eq
                }
            }
            '<' => {
                bump!();
                match chars.peek() {
                    Some('-') => {
                        bump!();
                        TokKind::Arrow
                    }
                    Some('=') => {
                        bump!();
                        if chars.peek() == Some(&'>') {
                            bump!();
                            TokKind::Iff
                        } else {
                            return Err(Error::Syntax {
                                line: tline,
                                col: tcol,
                                expected: "`<=>` or `<-`".into(),
                            });
                        }
                    }
                    _ => {
                        return Err(Error::Syntax {
                            line: tline,
                            col: tcol,
                            expected: "`<=>` or `<-`".into(),
                        })
                    }
                }
            }
            c if ident_start(c) => {
                let mut s = String::new();
                s.push(bump!().unwrap());
                while let Some(&c) = chars.peek() {
                    if ident_cont(c) {
                        s.push(bump!().unwrap());
                    } else {
                        break;
                    }
                }
                match s.as_str() {
                    "pred" => TokKind::KwPred,
                    "func" => TokKind::KwFunc,
                    "const" => TokKind::KwConst,
                    "true" => TokKind::KwTrue,
                    "false" => TokKind::KwFalse,
                    _ => TokKind::Ident(s),
                }
            }
            other => {
                return Err(Error::Syntax {
                    line: tline,
                    col: tcol,
                    expected: format!("a token (found `{other}`)"),
                })
            }
        };
        out.push(Tok { kind, line: tline, col: tcol });
    }
}

/// True for predicate-class identifiers: the first alphabetic character is
/// upper case.
fn is_pred_ident(name: &str) -> bool {
    name.chars()
        .find(|c| c.is_ascii_alphabetic())
        .map(|c| c.is_ascii_uppercase())
        .unwrap_or(false)
}

fn is_reserved(name: &str) -> bool {
    name.contains('$') || name.contains('\'')
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
    theory: Theory,
    /// Quantifier bindings in scope, innermost last.
    scopes: Vec<Binder>,
    /// When parsing a rule, the implicit universal variables collected so
    /// far; `None` outside rules.
    rule_vars: Option<BTreeSet<String>>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Tok {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, tok: &Tok, expected: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { line: tok.line, col: tok.col, expected: expected.into() })
    }

    fn expect(&mut self, kind: TokKind) -> Result<Tok> {
        let t = self.next();
        if t.kind == kind {
            Ok(t)
        } else {
            self.err(&t, format!("{} (found {})", kind.describe(), t.kind.describe()))
        }
    }

    fn eat(&mut self, kind: TokKind) -> bool {
        if self.peek().kind == kind {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Tok)> {
        let t = self.next();
        match &t.kind {
            TokKind::Ident(s) => Ok((s.clone(), t.clone())),
            _ => self.err(&t, format!("{what} (found {})", t.kind.describe())),
        }
    }

    fn nat(&mut self) -> Result<usize> {
        let t = self.next();
        if let TokKind::Ident(s) = &t.kind {
            if let Ok(n) = s.parse::<usize>() {
                return Ok(n);
            }
        }
        self.err(&t, format!("an arity (found {})", t.kind.describe()))
    }

    fn theory(&mut self) -> Result<()> {
        loop {
            match self.peek().kind {
                TokKind::Eof => return Ok(()),
                TokKind::KwPred => {
                    self.next();
                    let (name, tok) = self.ident("a predicate name")?;
                    self.declare_check(&name, &tok)?;
                    self.expect(TokKind::Slash)?;
                    let arity = self.nat()?;
                    self.expect(TokKind::Dot)?;
                    self.theory
                        .vocab
                        .add_predicate(name.clone(), arity)
                        .map_err(|_| Error::Syntax {
                            line: tok.line,
                            col: tok.col,
                            expected: format!("a fresh symbol name (`{name}` is already declared)"),
                        })?;
                }
                TokKind::KwFunc => {
                    self.next();
                    let (name, tok) = self.ident("a function name")?;
                    self.declare_check(&name, &tok)?;
                    self.expect(TokKind::Slash)?;
                    let arity = self.nat()?;
                    self.expect(TokKind::Dot)?;
                    self.theory
                        .vocab
                        .add_function(name.clone(), arity)
                        .map_err(|_| Error::Syntax {
                            line: tok.line,
                            col: tok.col,
                            expected: format!("a fresh symbol name (`{name}` is already declared)"),
                        })?;
                }
                TokKind::KwConst => {
                    self.next();
                    let (name, tok) = self.ident("a constant name")?;
                    self.declare_check(&name, &tok)?;
                    self.expect(TokKind::Dot)?;
                    self.theory
                        .vocab
                        .add_function(name.clone(), 0)
                        .map_err(|_| Error::Syntax {
                            line: tok.line,
                            col: tok.col,
                            expected: format!("a fresh symbol name (`{name}` is already declared)"),
                        })?;
                }
                _ => {
                    let axiom = self.formula()?;
                    self.expect(TokKind::Dot)?;
                    self.theory.axioms.push(axiom);
                }
            }
        }
    }

    fn declare_check(&self, name: &str, tok: &Tok) -> Result<()> {
        if is_reserved(name) {
            return self.err(
                tok,
                format!("a user symbol name (`{name}` uses the reserved `$`/`'` namespace)"),
            );
        }
        Ok(())
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut left = self.implies_expr()?;
        while self.eat(TokKind::Iff) {
            let right = self.implies_expr()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implies_expr(&mut self) -> Result<Formula> {
        let left = self.or_expr()?;
        if self.eat(TokKind::Implies) {
            let right = self.implies_expr()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn or_expr(&mut self) -> Result<Formula> {
        let mut left = self.and_expr()?;
        while self.eat(TokKind::Pipe) {
            let right = self.and_expr()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.eat(TokKind::Amp) {
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().kind {
            TokKind::Tilde => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            TokKind::Bang => {
                self.next();
                self.quantified(true)
            }
            TokKind::Question => {
                self.next();
                self.quantified(false)
            }
            _ => self.primary(),
        }
    }

    fn quantified(&mut self, universal: bool) -> Result<Formula> {
        let (name, tok) = self.ident("a quantified symbol")?;
        let kind = if self.eat(TokKind::Slash) {
            let arity = self.nat()?;
            if is_pred_ident(&name) {
                BinderKind::Predicate(arity)
            } else if arity == 0 {
                BinderKind::Object
            } else {
                BinderKind::Function(arity)
            }
        } else if is_pred_ident(&name) {
            return self.err(
                &tok,
                format!("an arity annotation for the predicate binder (`?{name}/n:`)"),
            );
        } else {
            BinderKind::Object
        };
        if self.rule_vars.is_some() && kind != BinderKind::Object {
            return self.err(&tok, "an object binder (rule bodies are first-order)".to_string());
        }
        self.expect(TokKind::Colon)?;
        let binder = Binder { name, kind };
        self.scopes.push(binder.clone());
        let body = self.formula();
        self.scopes.pop();
        let body = body?;
        Ok(if universal {
            Formula::forall(binder, body)
        } else {
            Formula::exists(binder, body)
        })
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().kind.clone() {
            TokKind::KwTrue => {
                self.next();
                Ok(Formula::True)
            }
            TokKind::KwFalse => {
                self.next();
                Ok(Formula::False)
            }
            TokKind::LParen => {
                self.next();
                let f = self.formula()?;
                self.expect(TokKind::RParen)?;
                Ok(f)
            }
            TokKind::LBrace => self.definition(),
            TokKind::Ident(name) if is_pred_ident(&name) => {
                let (_, tok) = self.ident("a predicate")?;
                let args = self.atom_args()?;
                self.check_pred(&name, args.len(), &tok)?;
                Ok(Formula::Atom(name, args))
            }
            TokKind::Ident(_) => {
                let left = self.term()?;
                let t = self.next();
                if t.kind != TokKind::Eq {
                    return self.err(&t, format!("`=` (found {})", t.kind.describe()));
                }
                let right = self.term()?;
                Ok(Formula::Eq(left, right))
            }
            _ => {
                let t = self.peek().clone();
                self.err(&t, format!("a formula (found {})", t.kind.describe()))
            }
        }
    }

    fn atom_args(&mut self) -> Result<Vec<Term>> {
        let mut args = Vec::new();
        if self.eat(TokKind::LParen) {
            loop {
                args.push(self.term()?);
                if !self.eat(TokKind::Comma) {
                    break;
                }
            }
            self.expect(TokKind::RParen)?;
        }
        Ok(args)
    }

    /// Innermost binding for `name`, if any.
    fn bound(&self, name: &str) -> Option<&Binder> {
        self.scopes.iter().rev().find(|b| b.name == name)
    }

    fn check_pred(&mut self, name: &str, used: usize, tok: &Tok) -> Result<()> {
        if let Some(b) = self.bound(name) {
            return match b.kind {
                BinderKind::Predicate(a) if a == used => Ok(()),
                BinderKind::Predicate(a) => Err(Error::Arity {
                    line: tok.line,
                    col: tok.col,
                    symbol: name.to_string(),
                    used,
                    declared: a,
                }),
                _ => self.err(tok, format!("a predicate (`{name}` is bound as an object here)")),
            };
        }
        match self.theory.vocab.predicate_arity(name) {
            Some(a) if a == used => Ok(()),
            Some(a) => Err(Error::Arity {
                line: tok.line,
                col: tok.col,
                symbol: name.to_string(),
                used,
                declared: a,
            }),
            None => Err(Error::UndeclaredSymbol {
                line: tok.line,
                col: tok.col,
                symbol: name.to_string(),
            }),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let (name, tok) = self.ident("a term")?;
        if is_pred_ident(&name) {
            return self.err(&tok, format!("a term (`{name}` is a predicate symbol)"));
        }
        if self.peek().kind == TokKind::LParen {
            self.next();
            let mut args = Vec::new();
            loop {
                args.push(self.term()?);
                if !self.eat(TokKind::Comma) {
                    break;
                }
            }
            self.expect(TokKind::RParen)?;
            let declared = if let Some(b) = self.bound(&name) {
                match b.kind {
                    BinderKind::Function(a) => Some(a),
                    _ => {
                        return self
                            .err(&tok, format!("a function symbol (`{name}` is bound otherwise)"))
                    }
                }
            } else {
                self.theory.vocab.function_arity(&name)
            };
            match declared {
                Some(a) if a == args.len() => Ok(Term::Apply(name, args)),
                Some(a) => Err(Error::Arity {
                    line: tok.line,
                    col: tok.col,
                    symbol: name,
                    used: args.len(),
                    declared: a,
                }),
                None => Err(Error::UndeclaredSymbol {
                    line: tok.line,
                    col: tok.col,
                    symbol: name,
                }),
            }
        } else {
            // a bare object identifier
            if let Some(b) = self.bound(&name) {
                return match b.kind {
                    BinderKind::Object => Ok(Term::Var(name)),
                    BinderKind::Function(0) => Ok(Term::Apply(name, vec![])),
                    BinderKind::Function(a) => Err(Error::Arity {
                        line: tok.line,
                        col: tok.col,
                        symbol: name,
                        used: 0,
                        declared: a,
                    }),
                    BinderKind::Predicate(_) => {
                        self.err(&tok, format!("a term (`{name}` is bound as a predicate)"))
                    }
                };
            }
            match self.theory.vocab.function_arity(&name) {
                Some(0) => Ok(Term::Apply(name, vec![])),
                Some(a) => Err(Error::Arity {
                    line: tok.line,
                    col: tok.col,
                    symbol: name,
                    used: 0,
                    declared: a,
                }),
                None => {
                    if let Some(vars) = &mut self.rule_vars {
                        vars.insert(name.clone());
                        Ok(Term::Var(name))
                    } else {
                        Err(Error::UndeclaredSymbol {
                            line: tok.line,
                            col: tok.col,
                            symbol: name,
                        })
                    }
                }
            }
        }
    }

    fn definition(&mut self) -> Result<Formula> {
        let open = self.expect(TokKind::LBrace)?;
        if self.rule_vars.is_some() {
            return self.err(&open, "a first-order rule body (no nested definition)".to_string());
        }
        let mut rules = Vec::new();
        loop {
            if self.eat(TokKind::RBrace) {
                break;
            }
            if self.peek().kind == TokKind::Eof {
                return self.err(&open.clone(), "`}` closing the definition".to_string());
            }
            rules.push(self.rule()?);
        }
        if rules.is_empty() {
            return self.err(&open, "at least one rule in the definition".to_string());
        }
        Ok(Formula::Def(Definition::new(rules)?))
    }

    fn rule(&mut self) -> Result<Rule> {
        self.rule_vars = Some(BTreeSet::new());
        let result = self.rule_inner();
        let vars = self.rule_vars.take().unwrap_or_default();
        let (head_pred, head_args, body) = result?;
        Ok(Rule::new(vars, head_pred, head_args, body))
    }

    fn rule_inner(&mut self) -> Result<(String, Vec<Term>, Formula)> {
        let (name, tok) = self.ident("a rule head predicate")?;
        if !is_pred_ident(&name) {
            return self.err(&tok, format!("a predicate symbol in the rule head (found `{name}`)"));
        }
        let args = self.atom_args()?;
        self.check_pred(&name, args.len(), &tok)?;
        self.expect(TokKind::Arrow)?;
        let body = self.formula()?;
        self.expect(TokKind::Dot)?;
        Ok((name, args, body))
    }
}
