//! Syntactic analyses: free symbols, the defined/open partition, polarity,
//! the single-rule normal form, and the negative-occurrence renaming.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Binder, BinderKind, Definition, Formula, Rule, Term};
use crate::error::{Error, Result};
use crate::structure::Vocabulary;

/// Occurrence polarity: under an even (`Pos`) or odd (`Neg`) number of
/// negations, counting the expansion of the derived connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

fn term_symbols(t: &Term, bound: &[String], out: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) => {
            if !bound.iter().any(|b| b == v) {
                out.insert(v.clone());
            }
        }
        Term::Apply(f, args) => {
            if !bound.iter().any(|b| b == f) {
                out.insert(f.clone());
            }
            for a in args {
                term_symbols(a, bound, out);
            }
        }
    }
}

fn free_into(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        Formula::True | Formula::False => {}
        Formula::Atom(pred, args) => {
            if !bound.iter().any(|b| b == pred) {
                out.insert(pred.clone());
            }
            for t in args {
                term_symbols(t, bound, out);
            }
        }
        Formula::Eq(l, r) => {
            term_symbols(l, bound, out);
            term_symbols(r, bound, out);
        }
        Formula::Not(g) => free_into(g, bound, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            free_into(l, bound, out);
            free_into(r, bound, out);
        }
        Formula::Exists(b, g) | Formula::Forall(b, g) => {
            bound.push(b.name.clone());
            free_into(g, bound, out);
            bound.pop();
        }
        Formula::Def(d) => {
            for rule in d.rules() {
                let depth = bound.len();
                bound.extend(rule.vars.iter().cloned());
                if !bound.iter().any(|b| b == &rule.head_pred) {
                    out.insert(rule.head_pred.clone());
                }
                for t in &rule.head_args {
                    term_symbols(t, bound, out);
                }
                free_into(&rule.body, bound, out);
                bound.truncate(depth);
            }
        }
    }
}

/// The set of symbols with a free occurrence, by the standard induction.
/// Definitions bind nothing beyond their rules' universal variables.
pub fn free_symbols(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    free_into(f, &mut Vec::new(), &mut out);
    out
}

pub fn definition_free_symbols(d: &Definition) -> BTreeSet<String> {
    free_symbols(&Formula::Def(d.clone()))
}

/// The open symbols of `d` in the ambient vocabulary: everything that is
/// not a head predicate. Fails if a free symbol of `d` falls outside the
/// vocabulary.
pub fn open_symbols(d: &Definition, vocab: &Vocabulary) -> Result<BTreeSet<String>> {
    for s in definition_free_symbols(d) {
        if !vocab.contains(&s) {
            return Err(Error::FreeSymbolOutsideVocab(s));
        }
    }
    let defined = d.defined_symbols();
    let mut out = BTreeSet::new();
    for (n, _) in vocab.functions() {
        out.insert(n.to_string());
    }
    for (n, _) in vocab.predicates() {
        if !defined.contains(n) {
            out.insert(n.to_string());
        }
    }
    Ok(out)
}

/// Visit every free predicate occurrence together with its polarity.
/// `Iff` gives both sides both polarities; the antecedent of `Implies`
/// flips; `Forall` keeps polarity (it abbreviates a double negation).
fn pred_occurrences(
    f: &Formula,
    sign: Sign,
    bound: &mut Vec<String>,
    visit: &mut impl FnMut(&str, Sign),
) {
    match f {
        Formula::True | Formula::False | Formula::Eq(..) => {}
        Formula::Atom(pred, _) => {
            if !bound.iter().any(|b| b == pred) {
                visit(pred, sign);
            }
        }
        Formula::Not(g) => pred_occurrences(g, sign.flip(), bound, visit),
        Formula::And(l, r) | Formula::Or(l, r) => {
            pred_occurrences(l, sign, bound, visit);
            pred_occurrences(r, sign, bound, visit);
        }
        Formula::Implies(l, r) => {
            pred_occurrences(l, sign.flip(), bound, visit);
            pred_occurrences(r, sign, bound, visit);
        }
        Formula::Iff(l, r) => {
            for side in [l, r] {
                pred_occurrences(side, sign, bound, visit);
                pred_occurrences(side, sign.flip(), bound, visit);
            }
        }
        Formula::Exists(b, g) | Formula::Forall(b, g) => {
            bound.push(b.name.clone());
            pred_occurrences(g, sign, bound, visit);
            bound.pop();
        }
        Formula::Def(d) => {
            for rule in d.rules() {
                visit(&rule.head_pred, sign);
                pred_occurrences(&rule.body, sign, bound, visit);
            }
        }
    }
}

/// No defined predicate occurs negatively in any rule body.
pub fn is_positive(d: &Definition) -> bool {
    let defined = d.defined_symbols();
    let mut ok = true;
    for rule in d.rules() {
        pred_occurrences(&rule.body, Sign::Pos, &mut Vec::new(), &mut |p, s| {
            if s == Sign::Neg && defined.contains(p) {
                ok = false;
            }
        });
    }
    ok
}

/// No defined predicate occurs in any rule body at all.
pub fn is_non_recursive(d: &Definition) -> bool {
    let defined = d.defined_symbols();
    let mut ok = true;
    for rule in d.rules() {
        pred_occurrences(&rule.body, Sign::Pos, &mut Vec::new(), &mut |p, _| {
            if defined.contains(p) {
                ok = false;
            }
        });
    }
    ok
}

/// All symbol names occurring anywhere in the definition, free or bound.
fn all_names(d: &Definition) -> BTreeSet<String> {
    fn walk_term(t: &Term, out: &mut BTreeSet<String>) {
        match t {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Apply(f, args) => {
                out.insert(f.clone());
                args.iter().for_each(|a| walk_term(a, out));
            }
        }
    }
    fn walk(f: &Formula, out: &mut BTreeSet<String>) {
        match f {
            Formula::True | Formula::False => {}
            Formula::Atom(p, args) => {
                out.insert(p.clone());
                args.iter().for_each(|a| walk_term(a, out));
            }
            Formula::Eq(l, r) => {
                walk_term(l, out);
                walk_term(r, out);
            }
            Formula::Not(g) => walk(g, out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            Formula::Exists(b, g) | Formula::Forall(b, g) => {
                out.insert(b.name.clone());
                walk(g, out);
            }
            Formula::Def(d) => {
                for rule in d.rules() {
                    out.insert(rule.head_pred.clone());
                    rule.vars.iter().for_each(|v| {
                        out.insert(v.clone());
                    });
                    rule.head_args.iter().for_each(|t| walk_term(t, out));
                    walk(&rule.body, out);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for rule in d.rules() {
        out.insert(rule.head_pred.clone());
        rule.vars.iter().for_each(|v| {
            out.insert(v.clone());
        });
        rule.head_args.iter().for_each(|t| walk_term(t, &mut out));
        walk(&rule.body, &mut out);
    }
    out
}

/// Substitute a term for a free object symbol. The replacement's symbols
/// must not be capturable (callers pass fresh names).
pub fn subst_obj_term(t: &Term, from: &str, to: &Term) -> Term {
    match t {
        Term::Var(v) if v == from => to.clone(),
        Term::Var(_) => t.clone(),
        Term::Apply(f, args) if f == from && args.is_empty() => to.clone(),
        Term::Apply(f, args) => {
            Term::Apply(f.clone(), args.iter().map(|a| subst_obj_term(a, from, to)).collect())
        }
    }
}

pub fn subst_obj(f: &Formula, from: &str, to: &Term) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(p, args) => {
            Formula::Atom(p.clone(), args.iter().map(|a| subst_obj_term(a, from, to)).collect())
        }
        Formula::Eq(l, r) => Formula::Eq(subst_obj_term(l, from, to), subst_obj_term(r, from, to)),
        Formula::Not(g) => Formula::not(subst_obj(g, from, to)),
        Formula::And(l, r) => Formula::and(subst_obj(l, from, to), subst_obj(r, from, to)),
        Formula::Or(l, r) => Formula::or(subst_obj(l, from, to), subst_obj(r, from, to)),
        Formula::Implies(l, r) => Formula::implies(subst_obj(l, from, to), subst_obj(r, from, to)),
        Formula::Iff(l, r) => Formula::iff(subst_obj(l, from, to), subst_obj(r, from, to)),
        Formula::Exists(b, g) if b.name == from => Formula::Exists(b.clone(), g.clone()),
        Formula::Forall(b, g) if b.name == from => Formula::Forall(b.clone(), g.clone()),
        Formula::Exists(b, g) => Formula::exists(b.clone(), subst_obj(g, from, to)),
        Formula::Forall(b, g) => Formula::forall(b.clone(), subst_obj(g, from, to)),
        Formula::Def(d) => {
            let rules = d
                .rules()
                .iter()
                .map(|rule| {
                    if rule.vars.iter().any(|v| v == from) {
                        rule.clone()
                    } else {
                        Rule::new(
                            rule.vars.clone(),
                            rule.head_pred.clone(),
                            rule.head_args.iter().map(|t| subst_obj_term(t, from, to)),
                            subst_obj(&rule.body, from, to),
                        )
                    }
                })
                .collect();
            Formula::Def(Definition::new(rules).expect("substitution keeps rules well-formed"))
        }
    }
}

/// Rename a free predicate symbol throughout a formula.
pub fn subst_pred(f: &Formula, from: &str, to: &str) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Eq(..) => f.clone(),
        Formula::Atom(p, args) if p == from => Formula::Atom(to.to_string(), args.clone()),
        Formula::Atom(..) => f.clone(),
        Formula::Not(g) => Formula::not(subst_pred(g, from, to)),
        Formula::And(l, r) => Formula::and(subst_pred(l, from, to), subst_pred(r, from, to)),
        Formula::Or(l, r) => Formula::or(subst_pred(l, from, to), subst_pred(r, from, to)),
        Formula::Implies(l, r) => Formula::implies(subst_pred(l, from, to), subst_pred(r, from, to)),
        Formula::Iff(l, r) => Formula::iff(subst_pred(l, from, to), subst_pred(r, from, to)),
        Formula::Exists(b, g) if b.name == from => Formula::Exists(b.clone(), g.clone()),
        Formula::Forall(b, g) if b.name == from => Formula::Forall(b.clone(), g.clone()),
        Formula::Exists(b, g) => Formula::exists(b.clone(), subst_pred(g, from, to)),
        Formula::Forall(b, g) => Formula::forall(b.clone(), subst_pred(g, from, to)),
        Formula::Def(d) => {
            let rules = d
                .rules()
                .iter()
                .map(|rule| {
                    Rule::new(
                        rule.vars.clone(),
                        if rule.head_pred == from { to.to_string() } else { rule.head_pred.clone() },
                        rule.head_args.clone(),
                        subst_pred(&rule.body, from, to),
                    )
                })
                .collect();
            Formula::Def(Definition::new(rules).expect("renaming keeps rules well-formed"))
        }
    }
}

/// Pool of readable fresh variable names, falling back to the reserved
/// namespace once the pool is exhausted.
fn fresh_var(avoid: &BTreeSet<String>, taken: &mut BTreeSet<String>) -> String {
    const POOL: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    for name in POOL {
        if !avoid.contains(name) && !taken.contains(name) {
            taken.insert(name.to_string());
            return name.to_string();
        }
    }
    for i in 1.. {
        for stem in POOL {
            let name = format!("{stem}{i}");
            if !avoid.contains(&name) && !taken.contains(&name) {
                taken.insert(name.clone());
                return name;
            }
        }
        if i > 10_000 {
            break;
        }
    }
    // unreachable in practice
    let name = format!("$v{}", taken.len());
    taken.insert(name.clone());
    name
}

/// The single-rule normal form: one rule `∀x̄ (X(x̄) <- φ_X)` per defined
/// predicate, where `φ_X` collects the original rules for `X` as
/// disjuncts `∃ȳ (x̄ = t̄ ∧ φ)`. Equations `x_i = v` with `v` a rule
/// variable are eliminated by substitution, which keeps bodies close to
/// their hand-written shape.
pub fn single_rule_form(d: &Definition) -> Definition {
    let free = definition_free_symbols(d);
    let occurring = all_names(d);

    // defined predicates in order of first head occurrence
    let mut order: Vec<String> = Vec::new();
    for rule in d.rules() {
        if !order.contains(&rule.head_pred) {
            order.push(rule.head_pred.clone());
        }
    }

    let mut new_rules = Vec::new();
    for pred in order {
        let arity = d.head_arity(&pred).expect("defined predicate");
        let mut taken = BTreeSet::new();
        let head_vars: Vec<String> = (0..arity).map(|_| fresh_var(&free, &mut taken)).collect();

        let mut disjuncts = Vec::new();
        for rule in d.rules().iter().filter(|r| r.head_pred == pred) {
            disjuncts.push(rule_disjunct(rule, &head_vars, &free, &occurring));
        }
        let body = Formula::disj(disjuncts);
        new_rules.push(Rule::new(
            head_vars.iter().cloned(),
            pred,
            head_vars.iter().map(Term::var),
            body,
        ));
    }
    Definition::new(new_rules).expect("normal form is well-formed")
}

/// Rename every quantifier binding `from` inside the formula so that a
/// term mentioning `from` can be substituted in without capture.
fn rename_binders(
    f: &Formula,
    from: &str,
    avoid: &BTreeSet<String>,
    taken: &mut BTreeSet<String>,
) -> Formula {
    match f {
        Formula::Exists(b, g) | Formula::Forall(b, g) if b.name == from => {
            let fresh = fresh_var(avoid, taken);
            let renamed = subst_obj(g, from, &Term::var(&fresh));
            let renamed = rename_binders(&renamed, from, avoid, taken);
            let binder = Binder { name: fresh, kind: b.kind.clone() };
            match f {
                Formula::Exists(..) => Formula::exists(binder, renamed),
                _ => Formula::forall(binder, renamed),
            }
        }
        Formula::Exists(b, g) => Formula::exists(b.clone(), rename_binders(g, from, avoid, taken)),
        Formula::Forall(b, g) => Formula::forall(b.clone(), rename_binders(g, from, avoid, taken)),
        Formula::Not(g) => Formula::not(rename_binders(g, from, avoid, taken)),
        Formula::And(l, r) => Formula::and(
            rename_binders(l, from, avoid, taken),
            rename_binders(r, from, avoid, taken),
        ),
        Formula::Or(l, r) => Formula::or(
            rename_binders(l, from, avoid, taken),
            rename_binders(r, from, avoid, taken),
        ),
        Formula::Implies(l, r) => Formula::implies(
            rename_binders(l, from, avoid, taken),
            rename_binders(r, from, avoid, taken),
        ),
        Formula::Iff(l, r) => Formula::iff(
            rename_binders(l, from, avoid, taken),
            rename_binders(r, from, avoid, taken),
        ),
        _ => f.clone(),
    }
}

fn rule_disjunct(
    rule: &Rule,
    head_vars: &[String],
    free: &BTreeSet<String>,
    occurring: &BTreeSet<String>,
) -> Formula {
    // α-rename rule variables that collide with the chosen head variables
    let mut vars = rule.vars.clone();
    let mut head_args = rule.head_args.clone();
    let mut body = rule.body.clone();
    let mut avoid: BTreeSet<String> = free.clone();
    avoid.extend(head_vars.iter().cloned());
    avoid.extend(occurring.iter().cloned());
    let mut taken = BTreeSet::new();
    for v in vars.iter_mut() {
        if head_vars.contains(v) {
            let fresh = fresh_var(&avoid, &mut taken);
            let to = Term::var(&fresh);
            head_args = head_args.iter().map(|t| subst_obj_term(t, v, &to)).collect();
            body = subst_obj(&body, v, &to);
            *v = fresh;
        }
    }
    // quantifiers inside the body must not capture the head variables
    for hv in head_vars {
        body = rename_binders(&body, hv, &avoid, &mut taken);
    }

    // equations x_i = t_i, eliminating those whose right side is a plain
    // rule variable
    let mut eqs: Vec<(String, Term)> = head_vars
        .iter()
        .cloned()
        .zip(head_args.iter().cloned())
        .collect();
    loop {
        let hit = eqs.iter().position(|(_, t)| match t {
            Term::Var(v) => vars.contains(v),
            _ => false,
        });
        let Some(i) = hit else { break };
        let (hv, t) = eqs.remove(i);
        let Term::Var(v) = t else { unreachable!() };
        let to = Term::var(&hv);
        for (_, rest) in eqs.iter_mut() {
            *rest = subst_obj_term(rest, &v, &to);
        }
        body = subst_obj(&body, &v, &to);
        vars.retain(|w| w != &v);
    }

    let mut parts: Vec<Formula> = eqs
        .into_iter()
        .map(|(hv, t)| Formula::eq(Term::var(hv), t))
        .collect();
    if parts.is_empty() {
        parts.push(body);
    } else if body != Formula::True {
        parts.push(body);
    }
    let mut out = Formula::conj(parts);
    for v in vars.into_iter().rev() {
        out = Formula::exists_obj(v, out);
    }
    out
}

/// The result of renaming negative occurrences of defined symbols.
#[derive(Debug, Clone)]
pub struct RenamedDefinition {
    /// `Δ′`: positive in the original defined symbols; primed symbols
    /// occur only negatively.
    pub def: Definition,
    /// Defined symbols that actually had negative occurrences, mapped to
    /// their primed stand-ins.
    pub primes: BTreeMap<String, String>,
}

impl RenamedDefinition {
    /// `τ′ = τ ∪ {X′}` with each primed symbol at its original arity.
    pub fn primed_vocab(&self, vocab: &Vocabulary) -> Result<Vocabulary> {
        let mut out = vocab.clone();
        for (orig, primed) in &self.primes {
            let arity = vocab
                .predicate_arity(orig)
                .ok_or_else(|| Error::FreeSymbolOutsideVocab(orig.clone()))?;
            out.add_predicate(primed.clone(), arity)?;
        }
        Ok(out)
    }
}

/// Substitute a primed symbol for each negative occurrence of a defined
/// symbol. `Iff` nodes containing a defined predicate are expanded into two
/// implications first, so that every occurrence has a single polarity;
/// other connectives keep their shape.
pub fn rename_negatives(d: &Definition) -> RenamedDefinition {
    let defined = d.defined_symbols();
    let occurring = all_names(d);
    let mut primes: BTreeMap<String, String> = BTreeMap::new();

    let prime_of = |name: &str, primes: &mut BTreeMap<String, String>| -> String {
        if let Some(p) = primes.get(name) {
            return p.clone();
        }
        let mut candidate = format!("{name}'");
        while occurring.contains(&candidate) {
            candidate.push('\'');
        }
        primes.insert(name.to_string(), candidate.clone());
        candidate
    };

    fn contains_defined(f: &Formula, defined: &BTreeSet<String>) -> bool {
        let mut found = false;
        pred_occurrences(f, Sign::Pos, &mut Vec::new(), &mut |p, _| {
            if defined.contains(p) {
                found = true;
            }
        });
        found
    }

    fn walk(
        f: &Formula,
        sign: Sign,
        defined: &BTreeSet<String>,
        prime_of: &mut impl FnMut(&str) -> String,
    ) -> Formula {
        match f {
            Formula::True | Formula::False | Formula::Eq(..) => f.clone(),
            Formula::Atom(p, args) => {
                if sign == Sign::Neg && defined.contains(p) {
                    Formula::Atom(prime_of(p), args.clone())
                } else {
                    f.clone()
                }
            }
            Formula::Not(g) => Formula::not(walk(g, sign.flip(), defined, prime_of)),
            Formula::And(l, r) => Formula::and(
                walk(l, sign, defined, prime_of),
                walk(r, sign, defined, prime_of),
            ),
            Formula::Or(l, r) => Formula::or(
                walk(l, sign, defined, prime_of),
                walk(r, sign, defined, prime_of),
            ),
            Formula::Implies(l, r) => Formula::implies(
                walk(l, sign.flip(), defined, prime_of),
                walk(r, sign, defined, prime_of),
            ),
            Formula::Iff(l, r) => {
                if contains_defined(f, defined) {
                    let expanded = Formula::and(
                        Formula::implies((**l).clone(), (**r).clone()),
                        Formula::implies((**r).clone(), (**l).clone()),
                    );
                    walk(&expanded, sign, defined, prime_of)
                } else {
                    f.clone()
                }
            }
            Formula::Exists(b, g) => {
                Formula::exists(b.clone(), walk(g, sign, defined, prime_of))
            }
            Formula::Forall(b, g) => {
                Formula::forall(b.clone(), walk(g, sign, defined, prime_of))
            }
            Formula::Def(_) => f.clone(), // absent from rule bodies
        }
    }

    let rules = d
        .rules()
        .iter()
        .map(|rule| {
            Rule::new(
                rule.vars.clone(),
                rule.head_pred.clone(),
                rule.head_args.clone(),
                walk(&rule.body, Sign::Pos, &defined, &mut |n| prime_of(n, &mut primes)),
            )
        })
        .collect();

    RenamedDefinition {
        def: Definition::new(rules).expect("renaming keeps rules well-formed"),
        primes,
    }
}

/// Infer a vocabulary for the free symbols of a definition from how they
/// are used: head and body predicates with their arities, applied function
/// symbols, and free object symbols as constants.
pub fn inferred_vocab(d: &Definition) -> Result<Vocabulary> {
    let mut preds: BTreeMap<String, usize> = BTreeMap::new();
    let mut funcs: BTreeMap<String, usize> = BTreeMap::new();

    fn note(
        map: &mut BTreeMap<String, usize>,
        other: &BTreeMap<String, usize>,
        name: &str,
        arity: usize,
    ) -> Result<()> {
        if other.contains_key(name) {
            return Err(Error::NameCollision(name.to_string()));
        }
        match map.get(name) {
            Some(&a) if a != arity => Err(Error::ArityMismatch {
                symbol: name.to_string(),
                expected: a,
                got: arity,
            }),
            _ => {
                map.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    fn walk_term(
        t: &Term,
        bound: &[String],
        preds: &mut BTreeMap<String, usize>,
        funcs: &mut BTreeMap<String, usize>,
    ) -> Result<()> {
        match t {
            Term::Var(v) => {
                if !bound.iter().any(|b| b == v) {
                    note(funcs, preds, v, 0)?;
                }
            }
            Term::Apply(f, args) => {
                if !bound.iter().any(|b| b == f) {
                    note(funcs, preds, f, args.len())?;
                }
                for a in args {
                    walk_term(a, bound, preds, funcs)?;
                }
            }
        }
        Ok(())
    }

    fn walk(
        f: &Formula,
        bound: &mut Vec<String>,
        preds: &mut BTreeMap<String, usize>,
        funcs: &mut BTreeMap<String, usize>,
    ) -> Result<()> {
        match f {
            Formula::True | Formula::False => Ok(()),
            Formula::Atom(p, args) => {
                if !bound.iter().any(|b| b == p) {
                    note(preds, funcs, p, args.len())?;
                }
                for a in args {
                    walk_term(a, bound, preds, funcs)?;
                }
                Ok(())
            }
            Formula::Eq(l, r) => {
                walk_term(l, bound, preds, funcs)?;
                walk_term(r, bound, preds, funcs)
            }
            Formula::Not(g) => walk(g, bound, preds, funcs),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                walk(l, bound, preds, funcs)?;
                walk(r, bound, preds, funcs)
            }
            Formula::Exists(b, g) | Formula::Forall(b, g) => {
                bound.push(b.name.clone());
                let r = walk(g, bound, preds, funcs);
                bound.pop();
                r
            }
            Formula::Def(_) => Ok(()),
        }
    }

    for rule in d.rules() {
        note(&mut preds, &funcs, &rule.head_pred, rule.head_args.len())?;
        let bound: Vec<String> = rule.vars.clone();
        for t in &rule.head_args {
            walk_term(t, &bound, &mut preds, &mut funcs)?;
        }
        let mut scope = bound.clone();
        walk(&rule.body, &mut scope, &mut preds, &mut funcs)?;
    }

    let mut vocab = Vocabulary::new();
    for (n, a) in funcs {
        vocab.add_function(n, a)?;
    }
    for (n, a) in preds {
        vocab.add_predicate(n, a)?;
    }
    Ok(vocab)
}

/// Convenience binder lists for second-order constructions.
pub fn predicate_binders(names: &[(String, usize)]) -> Vec<Binder> {
    names
        .iter()
        .map(|(n, a)| Binder { name: n.clone(), kind: BinderKind::Predicate(*a) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::parser::{parse_formula, parse_theory};
    use super::*;

    fn even_def() -> Definition {
        let t = parse_theory("pred E/1. func s/1. const 0.\n{ E(x) <- x = 0. E(s(x)) <- ~E(x). }.")
            .unwrap();
        t.definitions()[0].clone()
    }

    fn even_odd_def() -> Definition {
        let t = parse_theory(
            "pred E/1. pred O/1. func s/1. const 0.\n\
             { E(x) <- x = 0. E(s(x)) <- O(x). O(s(x)) <- E(x). }.",
        )
        .unwrap();
        t.definitions()[0].clone()
    }

    fn tc_def() -> Definition {
        let t = parse_theory(
            "pred T/2. pred G/2.\n\
             { T(x,y) <- G(x,y). T(x,y) <- ?z: (T(x,z) & T(z,y)). }.",
        )
        .unwrap();
        t.definitions()[0].clone()
    }

    #[test]
    fn free_symbols_of_formulas() {
        let mut v = Vocabulary::new();
        v.add_predicate("P", 1).unwrap();
        v.add_predicate("Q", 1).unwrap();
        v.add_function("c", 0).unwrap();
        // x is free in the first conjunct even though the second binds it
        let f = parse_formula("P(c) & ?x: Q(x)", &v).unwrap();
        let g = Formula::and(
            Formula::atom("P", [Term::var("x")]),
            Formula::exists_obj("x", Formula::atom("Q", [Term::var("x")])),
        );
        assert_eq!(
            free_symbols(&g).into_iter().collect::<Vec<_>>(),
            vec!["P".to_string(), "Q".to_string(), "x".to_string()]
        );
        assert_eq!(
            free_symbols(&f).into_iter().collect::<Vec<_>>(),
            vec!["P".to_string(), "Q".to_string(), "c".to_string()]
        );
        // a quantified predicate is bound
        let h = parse_formula("?X/1: X(c)", &v).unwrap();
        assert_eq!(free_symbols(&h).into_iter().collect::<Vec<_>>(), vec!["c".to_string()]);
    }

    #[test]
    fn free_symbols_of_even() {
        let d = even_def();
        assert_eq!(
            definition_free_symbols(&d).into_iter().collect::<Vec<_>>(),
            vec!["0".to_string(), "E".to_string(), "s".to_string()]
        );
    }

    #[test]
    fn defined_and_open_partition() {
        let d = even_odd_def();
        let defined = d.defined_symbols();
        assert_eq!(defined.iter().cloned().collect::<Vec<_>>(), vec!["E", "O"]);
        let mut v = Vocabulary::new();
        v.add_predicate("E", 1).unwrap();
        v.add_predicate("O", 1).unwrap();
        v.add_function("s", 1).unwrap();
        v.add_function("0", 0).unwrap();
        let open = open_symbols(&d, &v).unwrap();
        assert_eq!(open.iter().cloned().collect::<Vec<_>>(), vec!["0", "s"]);

        let tc = tc_def();
        assert_eq!(tc.defined_symbols().iter().cloned().collect::<Vec<_>>(), vec!["T"]);
    }

    #[test]
    fn open_symbols_outside_vocab() {
        let d = even_def();
        let mut v = Vocabulary::new();
        v.add_predicate("E", 1).unwrap();
        assert!(matches!(open_symbols(&d, &v), Err(Error::FreeSymbolOutsideVocab(_))));
    }

    #[test]
    fn positivity() {
        assert!(is_positive(&tc_def()));
        assert!(!is_non_recursive(&tc_def()));
        assert!(!is_positive(&even_def()));
        assert!(is_positive(&even_odd_def()));

        let t = parse_theory("pred P/0. pred Q/0.\n{ P <- Q. }.").unwrap();
        let d = t.definitions()[0].clone();
        assert!(is_positive(&d));
        assert!(is_non_recursive(&d));
    }

    #[test]
    fn implies_flips_polarity() {
        let t = parse_theory("pred P/0. pred Q/0.\n{ P <- P => Q. }.").unwrap();
        let d = t.definitions()[0].clone();
        // P occurs in the antecedent, hence negatively
        assert!(!is_positive(&d));
    }

    #[test]
    fn single_rule_form_of_even() {
        let d = even_def();
        let n = single_rule_form(&d);
        assert_eq!(n.rules().len(), 1);
        let rule = &n.rules()[0];
        assert_eq!(rule.head_pred, "E");
        assert_eq!(rule.to_string(), "E(x) <- x=0 | ?y: (x=s(y) & ~E(y)).");
    }

    #[test]
    fn single_rule_form_of_even_odd() {
        let n = single_rule_form(&even_odd_def());
        assert_eq!(n.rules().len(), 2);
        assert_eq!(n.rules()[0].to_string(), "E(x) <- x=0 | ?y: (x=s(y) & O(y)).");
        assert_eq!(n.rules()[1].to_string(), "O(x) <- ?y: x=s(y) & E(y).");
    }

    #[test]
    fn single_rule_form_keeps_single_rules_shape() {
        let d = single_rule_form(&even_def());
        let again = single_rule_form(&d);
        assert_eq!(d.rules()[0].body, again.rules()[0].body);
    }

    #[test]
    fn srf_free_symbols_preserved() {
        for d in [even_def(), even_odd_def(), tc_def()] {
            assert_eq!(definition_free_symbols(&d), definition_free_symbols(&single_rule_form(&d)));
        }
    }

    #[test]
    fn srf_avoids_capture_by_inner_quantifier() {
        // the body binds x itself; the head variable must not be captured
        let t = parse_theory("pred P/1. pred R/2.\n{ P(v) <- ?x: R(v,x). }.").unwrap();
        let d = t.definitions()[0].clone();
        let n = single_rule_form(&d);
        let body = n.rules()[0].body.to_string();
        assert_eq!(body, "?y: R(x,y)");
    }

    #[test]
    fn rename_negatives_on_selected_occurrences() {
        let t = parse_theory(
            "pred P/1. pred Q/3. pred S/3.\n\
             { P(x) <- S(x,y,z) & ~P(y). P(x) <- ~Q(x,y,z) & P(y). }.",
        )
        .unwrap();
        let d = t.definitions()[0].clone();
        let renamed = rename_negatives(&d);
        assert_eq!(renamed.primes.len(), 1);
        assert_eq!(renamed.primes["P"], "P'");
        assert_eq!(renamed.def.rules()[0].body.to_string(), "S(x,y,z) & ~P'(y)");
        // the positive occurrence of P and the open Q stay untouched
        assert_eq!(renamed.def.rules()[1].body.to_string(), "~Q(x,y,z) & P(y)");
        assert!(is_positive(&renamed.def));
    }

    #[test]
    fn rename_negatives_identity_on_positive() {
        let d = tc_def();
        let renamed = rename_negatives(&d);
        assert!(renamed.primes.is_empty());
        assert_eq!(renamed.def, d);
    }

    #[test]
    fn rename_negatives_on_even() {
        let d = single_rule_form(&even_def());
        let renamed = rename_negatives(&d);
        assert_eq!(renamed.def.rules()[0].to_string(), "E(x) <- x=0 | ?y: (x=s(y) & ~E'(y)).");
    }

    #[test]
    fn inferred_vocab_from_usage() {
        let v = inferred_vocab(&even_def()).unwrap();
        assert_eq!(v.predicate_arity("E"), Some(1));
        assert_eq!(v.function_arity("s"), Some(1));
        assert_eq!(v.function_arity("0"), Some(0));
        assert_eq!(v.function_arity("x"), None); // rule variable, bound
    }
}
