//! Pretty-printing back into the concrete grammar.
//!
//! Printing inserts the minimal parentheses needed for the output to
//! re-parse to the same tree; `parse ∘ print` is the identity on well-formed
//! trees and `print ∘ parse` is a fixed point on printed text.

use std::fmt;

use super::ast::{Binder, BinderKind, Definition, Formula, Rule, Term, Theory};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Apply(name, args) => {
                write!(f, "{name}")?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Binder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BinderKind::Object => write!(f, "{}", self.name),
            BinderKind::Function(a) => write!(f, "{}/{a}", self.name),
            BinderKind::Predicate(a) => write!(f, "{}/{a}", self.name),
        }
    }
}

// connective precedence, loosest first
const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;

impl Formula {
    /// `ctx` is the precedence the surrounding context demands; `rightmost`
    /// is true when nothing will be printed after this subformula in the
    /// enclosing formula, which lets a maximal-scope quantifier go unfenced.
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8, rightmost: bool) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(pred, args) => {
                write!(f, "{pred}")?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
            Formula::Eq(l, r) => write!(f, "{l}={r}"),
            Formula::Not(inner) => {
                write!(f, "~")?;
                if precedence(inner) < PREC_UNARY {
                    write!(f, "(")?;
                    inner.fmt_prec(f, 0, true)?;
                    write!(f, ")")
                } else {
                    inner.fmt_prec(f, PREC_UNARY, rightmost)
                }
            }
            Formula::And(l, r) => self.fmt_binary(f, ctx, rightmost, l, r, "&", PREC_AND, true),
            Formula::Or(l, r) => self.fmt_binary(f, ctx, rightmost, l, r, "|", PREC_OR, true),
            Formula::Implies(l, r) => {
                self.fmt_binary(f, ctx, rightmost, l, r, "=>", PREC_IMPLIES, false)
            }
            Formula::Iff(l, r) => self.fmt_binary(f, ctx, rightmost, l, r, "<=>", PREC_IFF, true),
            Formula::Exists(b, body) => Self::fmt_quant(f, "?", b, body, ctx, rightmost),
            Formula::Forall(b, body) => Self::fmt_quant(f, "!", b, body, ctx, rightmost),
            Formula::Def(d) => write!(f, "{d}"),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn fmt_binary(
        &self,
        f: &mut fmt::Formatter<'_>,
        ctx: u8,
        rightmost: bool,
        l: &Formula,
        r: &Formula,
        op: &str,
        prec: u8,
        left_assoc: bool,
    ) -> fmt::Result {
        let parens = prec < ctx;
        if parens {
            write!(f, "(")?;
        }
        let inner_rightmost = if parens { true } else { rightmost };
        let (lp, rp) = if left_assoc { (prec, prec + 1) } else { (prec + 1, prec) };
        l.fmt_prec(f, lp, false)?;
        write!(f, " {op} ")?;
        r.fmt_prec(f, rp, inner_rightmost)?;
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }

    fn fmt_quant(
        f: &mut fmt::Formatter<'_>,
        mark: &str,
        b: &Binder,
        body: &Formula,
        ctx: u8,
        rightmost: bool,
    ) -> fmt::Result {
        if ctx == 0 {
            write!(f, "{mark}{b}: ")?;
            body.fmt_prec(f, 0, rightmost)
        } else if rightmost {
            write!(f, "{mark}{b}: (")?;
            body.fmt_prec(f, 0, true)?;
            write!(f, ")")
        } else {
            write!(f, "({mark}{b}: ")?;
            body.fmt_prec(f, 0, true)?;
            write!(f, ")")
        }
    }
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => PREC_IFF,
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        Formula::Not(..) | Formula::Exists(..) | Formula::Forall(..) => PREC_UNARY,
        _ => PREC_UNARY + 1,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0, true)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Formula::Atom(self.head_pred.clone(), self.head_args.clone()))?;
        write!(f, " <- ")?;
        self.body.fmt_prec(f, 0, true)?;
        write!(f, ".")
    }
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{ ")?;
        for r in self.rules() {
            write!(f, "{r} ")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, arity) in self.vocab.predicates() {
            writeln!(f, "pred {name}/{arity}.")?;
        }
        for (name, arity) in self.vocab.functions() {
            if arity == 0 {
                writeln!(f, "const {name}.")?;
            } else {
                writeln!(f, "func {name}/{arity}.")?;
            }
        }
        for a in &self.axioms {
            writeln!(f, "{a}.")?;
        }
        Ok(())
    }
}
