//! Abstract syntax for terms, formulas, rules, definitions and theories.
//!
//! Formulas follow the two-layer grammar of the logic: ordinary first-order
//! connectives and quantifiers, plus definitions (`Def`) as formulas in
//! their own right. A definition is a set of rules `∀x̄ (X(t̄) <- φ)` whose
//! bodies are first-order only — no nested definitions and no second-order
//! quantifiers.
//!
//! Free symbols are not a separate syntactic category: an object symbol
//! left free acts as a constant, one in the scope of a quantifier acts as a
//! variable.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::structure::Vocabulary;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// An object symbol without a fixed interpretation in the AST: a bound
    /// variable, an implicit rule variable, or a free constant.
    Var(String),
    /// A function symbol applied to arguments; constants are 0-ary
    /// applications.
    Apply(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Apply(name.into(), vec![])
    }

    pub fn app(name: impl Into<String>, args: impl IntoIterator<Item = Term>) -> Term {
        Term::Apply(name.into(), args.into_iter().collect())
    }
}

/// What a quantifier binds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinderKind {
    Object,
    Function(usize),
    Predicate(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binder {
    pub name: String,
    pub kind: BinderKind,
}

impl Binder {
    pub fn object(name: impl Into<String>) -> Binder {
        Binder { name: name.into(), kind: BinderKind::Object }
    }

    pub fn predicate(name: impl Into<String>, arity: usize) -> Binder {
        Binder { name: name.into(), kind: BinderKind::Predicate(arity) }
    }

    pub fn function(name: impl Into<String>, arity: usize) -> Binder {
        Binder { name: name.into(), kind: BinderKind::Function(arity) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(Binder, Box<Formula>),
    Forall(Binder, Box<Formula>),
    Def(Definition),
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: impl IntoIterator<Item = Term>) -> Formula {
        Formula::Atom(pred.into(), args.into_iter().collect())
    }

    pub fn prop(pred: impl Into<String>) -> Formula {
        Formula::Atom(pred.into(), vec![])
    }

    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Eq(l, r)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn exists(b: Binder, f: Formula) -> Formula {
        Formula::Exists(b, Box::new(f))
    }

    pub fn forall(b: Binder, f: Formula) -> Formula {
        Formula::Forall(b, Box::new(f))
    }

    pub fn exists_obj(name: impl Into<String>, f: Formula) -> Formula {
        Formula::exists(Binder::object(name), f)
    }

    pub fn forall_obj(name: impl Into<String>, f: Formula) -> Formula {
        Formula::forall(Binder::object(name), f)
    }

    /// Conjunction of a non-empty sequence, folded to the left.
    pub fn conj(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = fs.into_iter();
        let first = it.next().unwrap_or(Formula::True);
        it.fold(first, Formula::and)
    }

    /// Disjunction of a non-empty sequence, folded to the left.
    pub fn disj(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = fs.into_iter();
        let first = it.next().unwrap_or(Formula::False);
        it.fold(first, Formula::or)
    }

    /// True iff the formula contains no `Def` node.
    pub fn is_def_free(&self) -> bool {
        match self {
            Formula::Def(_) => false,
            Formula::True | Formula::False | Formula::Atom(..) | Formula::Eq(..) => true,
            Formula::Not(f) => f.is_def_free(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.is_def_free() && r.is_def_free(),
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.is_def_free(),
        }
    }

    /// True iff the formula quantifies only over object symbols.
    pub fn is_first_order(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(..) | Formula::Eq(..) => true,
            Formula::Not(f) => f.is_first_order(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.is_first_order() && r.is_first_order(),
            Formula::Exists(b, f) | Formula::Forall(b, f) => {
                b.kind == BinderKind::Object && f.is_first_order()
            }
            Formula::Def(d) => d.rules.iter().all(|r| r.body.is_first_order()),
        }
    }
}

/// One rule `∀vars (head_pred(head_args) <- body)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub vars: Vec<String>,
    pub head_pred: String,
    pub head_args: Vec<Term>,
    pub body: Formula,
}

impl Rule {
    pub fn new(
        vars: impl IntoIterator<Item = String>,
        head_pred: impl Into<String>,
        head_args: impl IntoIterator<Item = Term>,
        body: Formula,
    ) -> Rule {
        Rule {
            vars: vars.into_iter().collect(),
            head_pred: head_pred.into(),
            head_args: head_args.into_iter().collect(),
            body,
        }
    }

    /// A propositional rule `P <- body`.
    pub fn prop(head: impl Into<String>, body: Formula) -> Rule {
        Rule::new([], head, [], body)
    }
}

/// A definition: a non-empty set of rules, read inductively rather than as
/// material implications.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Definition {
    rules: Vec<Rule>,
}

impl Definition {
    pub fn new(rules: Vec<Rule>) -> Result<Definition> {
        if rules.is_empty() {
            return Err(Error::Syntax {
                line: 0,
                col: 0,
                expected: "a definition with at least one rule".into(),
            });
        }
        let mut arities: std::collections::BTreeMap<&str, usize> = Default::default();
        for rule in &rules {
            if !rule.body.is_def_free() {
                return Err(Error::Syntax {
                    line: 0,
                    col: 0,
                    expected: "a first-order rule body (no nested definition)".into(),
                });
            }
            if !rule.body.is_first_order() {
                return Err(Error::Syntax {
                    line: 0,
                    col: 0,
                    expected: "a first-order rule body (no second-order quantifier)".into(),
                });
            }
            match arities.get(rule.head_pred.as_str()) {
                Some(&a) if a != rule.head_args.len() => {
                    return Err(Error::ArityMismatch {
                        symbol: rule.head_pred.clone(),
                        expected: a,
                        got: rule.head_args.len(),
                    })
                }
                _ => {
                    arities.insert(&rule.head_pred, rule.head_args.len());
                }
            }
        }
        Ok(Definition { rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// The defined symbols: predicates occurring in some rule head.
    pub fn defined_symbols(&self) -> BTreeSet<String> {
        self.rules.iter().map(|r| r.head_pred.clone()).collect()
    }

    pub fn defines(&self, pred: &str) -> bool {
        self.rules.iter().any(|r| r.head_pred == pred)
    }

    pub fn head_arity(&self, pred: &str) -> Option<usize> {
        self.rules
            .iter()
            .find(|r| r.head_pred == pred)
            .map(|r| r.head_args.len())
    }
}

/// A set of axioms over a declared vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub vocab: Vocabulary,
    pub axioms: Vec<Formula>,
}

impl Theory {
    /// The top-level definitions among the axioms, in order.
    pub fn definitions(&self) -> Vec<&Definition> {
        self.axioms
            .iter()
            .filter_map(|a| match a {
                Formula::Def(d) => Some(d),
                _ => None,
            })
            .collect()
    }
}
