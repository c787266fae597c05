//! The satisfaction relation for full formulas over finite structures.
//!
//! The truth recursion is standard; quantifiers over object symbols range
//! over the domain, and second-order quantifiers enumerate all relations
//! (`2^(|A|^n)` candidates) or all total function tables (`|A|^(|A|^n)`),
//! guarded by the candidate budget and short-circuited. Definitions are
//! formulas: a structure satisfies one exactly when it is its well-founded
//! model, which is delegated to the engine.

use std::collections::BTreeSet;

use crate::engine;
use crate::error::{Error, Result};
use crate::structure::{
    Elem, ExtensionLattice, FuncInterp, Relation, Structure, TupleIter,
};
use crate::syntax::{free_symbols, BinderKind, Formula, Term, Theory};
use crate::Budget;

/// A quantifier witness: the value bound to a symbol during evaluation.
#[derive(Debug, Clone)]
enum Value {
    Object(Elem),
    Function(FuncInterp),
    Relation(Relation),
}

/// Innermost-last binding stack.
#[derive(Debug, Default)]
struct Env {
    bindings: Vec<(String, Value)>,
}

impl Env {
    fn lookup(&self, name: &str) -> Option<&Value> {
        self.bindings.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    fn scoped<T>(&mut self, name: &str, value: Value, f: impl FnOnce(&mut Env) -> T) -> T {
        self.bindings.push((name.to_string(), value));
        let out = f(self);
        self.bindings.pop();
        out
    }
}

/// `I ⊨ φ`. Every free symbol of `φ` must be interpreted by `I`.
pub fn satisfies(i: &Structure, phi: &Formula, budget: &Budget) -> Result<bool> {
    for sym in free_symbols(phi) {
        if !i.interprets(&sym) {
            return Err(Error::FreeSymbolUninterpreted(sym));
        }
    }
    eval(i, &mut Env::default(), phi, budget)
}

/// `I ⊨ φ` with the given object symbols bound to elements, as in
/// `I[x̄:ā] ⊨ φ`.
pub fn satisfies_with_objs(
    i: &Structure,
    phi: &Formula,
    bindings: &[(String, Elem)],
    budget: &Budget,
) -> Result<bool> {
    let mut env = Env::default();
    for (n, e) in bindings {
        env.bindings.push((n.clone(), Value::Object(*e)));
    }
    eval(i, &mut env, phi, budget)
}

/// `I ⊨ T`: satisfaction of every axiom.
pub fn satisfies_theory(i: &Structure, theory: &Theory, budget: &Budget) -> Result<bool> {
    for axiom in &theory.axioms {
        if !satisfies(i, axiom, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All extensions of `base` over the given predicates that satisfy the
/// theory, in the lattice enumeration order. Any interpretation `base`
/// already gives to a listed predicate is discarded and re-enumerated.
pub fn enumerate_models(
    theory: &Theory,
    base: &Structure,
    free_preds: &BTreeSet<String>,
    budget: &Budget,
) -> Result<Vec<Structure>> {
    let stripped = base.without_preds(free_preds.iter().map(|s| s.as_str()));
    let mut vocab = stripped.vocab();
    for name in free_preds {
        let arity = theory
            .vocab
            .predicate_arity(name)
            .ok_or_else(|| Error::UndeclaredSymbol { line: 0, col: 0, symbol: name.clone() })?;
        vocab.add_predicate(name.clone(), arity)?;
    }
    let lat = ExtensionLattice::new(stripped, vocab)?;
    let mut out = Vec::new();
    for candidate in lat.enumerate(budget.candidates)? {
        if satisfies_theory(&candidate, theory, budget)? {
            out.push(candidate);
        }
    }
    Ok(out)
}

fn eval_term(i: &Structure, env: &Env, t: &Term) -> Result<Elem> {
    match t {
        Term::Var(v) => match env.lookup(v) {
            Some(Value::Object(e)) => Ok(*e),
            Some(Value::Function(f)) if f.arity() == 0 => Ok(f.apply(&[], i.domain().size())),
            Some(_) => Err(Error::ArityMismatch { symbol: v.clone(), expected: 0, got: 0 }),
            None => i.apply_func(v, &[]),
        },
        Term::Apply(f, args) => {
            let mut vals = Vec::with_capacity(args.len());
            for a in args {
                vals.push(eval_term(i, env, a)?);
            }
            match env.lookup(f) {
                Some(Value::Function(table)) if table.arity() == vals.len() => {
                    Ok(table.apply(&vals, i.domain().size()))
                }
                Some(Value::Object(e)) if vals.is_empty() => Ok(*e),
                Some(_) => Err(Error::ArityMismatch {
                    symbol: f.clone(),
                    expected: vals.len(),
                    got: vals.len(),
                }),
                None => i.apply_func(f, &vals),
            }
        }
    }
}

fn eval(i: &Structure, env: &mut Env, phi: &Formula, budget: &Budget) -> Result<bool> {
    match phi {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        Formula::Eq(l, r) => Ok(eval_term(i, env, l)? == eval_term(i, env, r)?),
        Formula::Atom(pred, args) => {
            let mut tuple = Vec::with_capacity(args.len());
            for a in args {
                tuple.push(eval_term(i, env, a)?);
            }
            match env.lookup(pred) {
                Some(Value::Relation(r)) if r.arity() == tuple.len() => Ok(r.contains(&tuple)),
                Some(Value::Relation(r)) => Err(Error::ArityMismatch {
                    symbol: pred.clone(),
                    expected: r.arity(),
                    got: tuple.len(),
                }),
                Some(_) => Err(Error::FreeSymbolUninterpreted(pred.clone())),
                None => i.holds(pred, &tuple),
            }
        }
        Formula::Not(f) => Ok(!eval(i, env, f, budget)?),
        Formula::And(l, r) => Ok(eval(i, env, l, budget)? && eval(i, env, r, budget)?),
        Formula::Or(l, r) => Ok(eval(i, env, l, budget)? || eval(i, env, r, budget)?),
        Formula::Implies(l, r) => Ok(!eval(i, env, l, budget)? || eval(i, env, r, budget)?),
        Formula::Iff(l, r) => Ok(eval(i, env, l, budget)? == eval(i, env, r, budget)?),
        Formula::Exists(b, f) => witness(i, env, b, f, budget, false),
        Formula::Forall(b, f) => Ok(!witness(i, env, b, f, budget, true)?),
        Formula::Def(d) => {
            let grounded = materialize(i, env)?;
            engine::satisfies_definition(&grounded, d)
        }
    }
}

/// Search for a witness value of the binder making the body true
/// (`negate = false`) or false (`negate = true`, serving `∀` as `¬∃¬`).
fn witness(
    i: &Structure,
    env: &mut Env,
    b: &crate::syntax::Binder,
    body: &Formula,
    budget: &Budget,
    negate: bool,
) -> Result<bool> {
    let size = i.domain().size();
    match b.kind {
        BinderKind::Object => {
            for e in i.domain().elems() {
                let hit = env.scoped(&b.name, Value::Object(e), |env| {
                    eval(i, env, body, budget)
                })?;
                if hit != negate {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        BinderKind::Predicate(arity) => {
            let cells = size.pow(arity as u32);
            let candidates = checked_pow2(cells);
            if candidates > budget.candidates {
                return Err(Error::BudgetExceeded { needed: candidates, budget: budget.candidates });
            }
            let atoms: Vec<Vec<Elem>> = i.domain().tuples(arity).collect();
            let mut selector = vec![false; cells];
            loop {
                let rel = Relation::from_tuples(
                    arity,
                    atoms
                        .iter()
                        .zip(selector.iter())
                        .filter(|(_, sel)| **sel)
                        .map(|(t, _)| t.clone()),
                )
                .expect("tuples fit arity");
                let hit = env.scoped(&b.name, Value::Relation(rel), |env| {
                    eval(i, env, body, budget)
                })?;
                if hit != negate {
                    return Ok(true);
                }
                if !bump_bits(&mut selector) {
                    return Ok(false);
                }
            }
        }
        BinderKind::Function(arity) => {
            let cells = size.pow(arity as u32);
            let candidates = checked_pow(size as u128, cells);
            if candidates > budget.candidates {
                return Err(Error::BudgetExceeded { needed: candidates, budget: budget.candidates });
            }
            let mut table = vec![Elem(0); cells];
            loop {
                let interp = FuncInterp::from_table(arity, table.clone(), size)
                    .expect("table has the right size");
                let hit = env.scoped(&b.name, Value::Function(interp), |env| {
                    eval(i, env, body, budget)
                })?;
                if hit != negate {
                    return Ok(true);
                }
                if !bump_radix(&mut table, size) {
                    return Ok(false);
                }
            }
        }
    }
}

fn checked_pow2(bits: usize) -> u128 {
    if bits >= 127 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

fn checked_pow(base: u128, exp: usize) -> u128 {
    let mut out: u128 = 1;
    for _ in 0..exp {
        out = out.saturating_mul(base);
    }
    out
}

fn bump_bits(bits: &mut [bool]) -> bool {
    for b in bits.iter_mut() {
        if *b {
            *b = false;
        } else {
            *b = true;
            return true;
        }
    }
    false
}

fn bump_radix(digits: &mut [Elem], radix: usize) -> bool {
    for d in digits.iter_mut() {
        if d.index() + 1 < radix {
            *d = Elem(d.0 + 1);
            return true;
        }
        *d = Elem(0);
    }
    false
}

/// Turn the current bindings into interpretations: a bound object symbol
/// becomes a constant, a bound function a function table, a bound
/// predicate a relation. Needed when the recursion reaches a definition,
/// whose evaluation works on whole structures.
fn materialize(i: &Structure, env: &Env) -> Result<Structure> {
    let mut out = i.clone();
    for (name, value) in &env.bindings {
        match value {
            Value::Object(e) => {
                out = out.without_preds([name.as_str()]);
                out.set_func(name.clone(), FuncInterp::constant(*e))?;
            }
            Value::Function(f) => {
                out = out.without_preds([name.as_str()]);
                out.set_func(name.clone(), f.clone())?;
            }
            Value::Relation(r) => {
                out = out.without_funcs([name.as_str()]);
                out.set_rel(name.clone(), r.clone())?;
            }
        }
    }
    Ok(out)
}

/// All tuples of a given arity over the domain of `i`; re-exported for
/// calling convenience in tests and examples.
pub fn tuples(i: &Structure, arity: usize) -> TupleIter {
    i.domain().tuples(arity)
}
