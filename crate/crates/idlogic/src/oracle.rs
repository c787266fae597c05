//! Independent reference implementations used by the test suite: minimal
//! models by exhaustive enumeration, completion models through the
//! checker, and a second well-founded algorithm in the
//! derive-true/unfounded-set style. None of them touch the engine's
//! fixpoint machinery or the grounder's pair evaluation, so agreement with
//! the engine is genuine cross-validation rather than a tautology.

use std::collections::{BTreeMap, BTreeSet};

use crate::checker;
use crate::engine::WfPair;
use crate::error::{Error, Result};
use crate::ground::{GroundBody, GroundRuleSet};
use crate::structure::{ExtensionLattice, Relation, Structure};
use crate::syntax::{inferred_vocab, single_rule_form, Definition, Formula};
use crate::Budget;

/// Enumerate the extensions of `base` over the defined predicates.
fn candidate_lattice(def: &Definition, base: &Structure) -> Result<ExtensionLattice> {
    let vocab = base.vocab().union(&inferred_vocab(def)?)?;
    ExtensionLattice::new(base.clone(), vocab)
}

/// All `⊑`-minimal extensions of `base` satisfying the rules read as
/// material implications.
pub fn minimal_models(def: &Definition, base: &Structure, budget: &Budget) -> Result<Vec<Structure>> {
    let implications = crate::transform::rules_as_implications(def);
    let lat = candidate_lattice(def, base)?;
    let mut satisfying = Vec::new();
    for candidate in lat.enumerate(budget.candidates)? {
        if checker::satisfies(&candidate, &implications, budget)? {
            satisfying.push(candidate);
        }
    }
    let minimal: Vec<Structure> = satisfying
        .iter()
        .filter(|m| !satisfying.iter().any(|other| other.leq(m) && *m != other))
        .cloned()
        .collect();
    Ok(minimal)
}

/// All extensions of `base` satisfying the completion, built here from the
/// single-rule normal form and evaluated by the checker alone.
pub fn completion_models(
    def: &Definition,
    base: &Structure,
    budget: &Budget,
) -> Result<Vec<Structure>> {
    let normal = single_rule_form(def);
    let comp = Formula::conj(normal.rules().iter().map(|rule| {
        let head = Formula::Atom(rule.head_pred.clone(), rule.head_args.clone());
        let mut f = Formula::iff(head, rule.body.clone());
        for v in rule.vars.iter().rev() {
            f = Formula::forall_obj(v.clone(), f);
        }
        f
    }));
    let lat = candidate_lattice(def, base)?;
    let mut out = Vec::new();
    for candidate in lat.enumerate(budget.candidates)? {
        if checker::satisfies(&candidate, &comp, budget)? {
            out.push(candidate);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Lit {
    Pos(usize),
    Neg(usize),
}

/// Ground rules in clause form: for each defined atom, the disjuncts of
/// its body as literal conjunctions over defined atoms.
struct ClauseProgram {
    rules: Vec<Vec<Vec<Lit>>>,
}

const DNF_CAP: usize = 1 << 14;

fn to_clauses(g: &GroundRuleSet, opens: &Structure) -> Result<ClauseProgram> {
    let mut rules = Vec::with_capacity(g.n_defined());
    for idx in 0..g.n_defined() {
        let body = g.body(crate::ground::AtomId(idx as u32));
        let disjuncts = dnf(g, body, false, opens)?;
        rules.push(disjuncts);
    }
    Ok(ClauseProgram { rules })
}

/// Negation-normal-form expansion straight into a disjunct list. `None`
/// inside the lattice of literal sets is represented by dropping the
/// disjunct (false) or an empty conjunction (true).
fn dnf(
    g: &GroundRuleSet,
    body: &GroundBody,
    negated: bool,
    opens: &Structure,
) -> Result<Vec<Vec<Lit>>> {
    let out = match body {
        GroundBody::True => {
            if negated {
                vec![]
            } else {
                vec![vec![]]
            }
        }
        GroundBody::False => {
            if negated {
                vec![vec![]]
            } else {
                vec![]
            }
        }
        GroundBody::Leaf { atom, defined, .. } => {
            if *defined {
                let lit = if negated { Lit::Neg(atom.index()) } else { Lit::Pos(atom.index()) };
                vec![vec![lit]]
            } else {
                let value = opens.holds_atom(g.atom(*atom))? != negated;
                if value {
                    vec![vec![]]
                } else {
                    vec![]
                }
            }
        }
        GroundBody::Not(inner) => dnf(g, inner, !negated, opens)?,
        GroundBody::And(parts) if !negated => dnf_conj(g, parts, negated, opens)?,
        GroundBody::Or(parts) if negated => dnf_conj(g, parts, negated, opens)?,
        GroundBody::And(parts) | GroundBody::Or(parts) => {
            let mut disjuncts = Vec::new();
            for p in parts {
                disjuncts.extend(dnf(g, p, negated, opens)?);
                if disjuncts.len() > DNF_CAP {
                    return Err(Error::BudgetExceeded {
                        needed: disjuncts.len() as u128,
                        budget: DNF_CAP as u128,
                    });
                }
            }
            disjuncts
        }
    };
    Ok(out)
}

fn dnf_conj(
    g: &GroundRuleSet,
    parts: &[GroundBody],
    negated: bool,
    opens: &Structure,
) -> Result<Vec<Vec<Lit>>> {
    let mut acc: Vec<Vec<Lit>> = vec![vec![]];
    for p in parts {
        let next = dnf(g, p, negated, opens)?;
        let mut crossed = Vec::with_capacity(acc.len() * next.len().max(1));
        for left in &acc {
            for right in &next {
                let mut lits = left.clone();
                lits.extend(right.iter().copied());
                lits.sort_unstable();
                lits.dedup();
                crossed.push(lits);
            }
        }
        if crossed.len() > DNF_CAP {
            return Err(Error::BudgetExceeded {
                needed: crossed.len() as u128,
                budget: DNF_CAP as u128,
            });
        }
        acc = crossed;
    }
    Ok(acc)
}

/// The well-founded bounds computed by alternating an immediate-derivation
/// step with removal of the greatest unfounded set, entirely on the clause
/// form of the ground rules.
pub fn wf_unfounded(g: &GroundRuleSet, i_o: &Structure) -> Result<WfPair> {
    let defined: Vec<&str> = g.defined_predicates().iter().map(|(n, _)| n.as_str()).collect();
    let frame = i_o.without_preds(defined.iter().copied());
    let program = to_clauses(g, &frame)?;
    let n = g.n_defined();

    let mut true_set: BTreeSet<usize> = BTreeSet::new();
    let mut false_set: BTreeSet<usize> = BTreeSet::new();
    loop {
        // one immediate-derivation step over the current partial knowledge
        let mut derived = true_set.clone();
        for (atom, disjuncts) in program.rules.iter().enumerate() {
            if derived.contains(&atom) {
                continue;
            }
            let fires = disjuncts.iter().any(|lits| {
                lits.iter().all(|lit| match lit {
                    Lit::Pos(b) => true_set.contains(b),
                    Lit::Neg(b) => false_set.contains(b),
                })
            });
            if fires {
                derived.insert(atom);
            }
        }

        // greatest unfounded set: the complement of the atoms with a
        // possibly-true derivation chain
        let mut possible: BTreeSet<usize> = BTreeSet::new();
        loop {
            let mut grew = false;
            for (atom, disjuncts) in program.rules.iter().enumerate() {
                if possible.contains(&atom) {
                    continue;
                }
                let supported = disjuncts.iter().any(|lits| {
                    lits.iter().all(|lit| match lit {
                        Lit::Pos(b) => possible.contains(b) && !false_set.contains(b),
                        Lit::Neg(b) => !true_set.contains(b),
                    })
                });
                if supported {
                    possible.insert(atom);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        let unfounded: BTreeSet<usize> = (0..n).filter(|a| !possible.contains(a)).collect();

        let new_false: BTreeSet<usize> = false_set.union(&unfounded).copied().collect();
        if derived == true_set && new_false == false_set {
            break;
        }
        true_set = derived;
        false_set = new_false;
    }

    let build = |members: &dyn Fn(usize) -> bool| -> Structure {
        let mut rels: BTreeMap<String, Relation> = BTreeMap::new();
        for (name, arity) in g.defined_predicates() {
            rels.insert(name.clone(), Relation::empty(*arity));
        }
        for (idx, atom) in g.defined_atoms().iter().enumerate() {
            if members(idx) {
                rels.get_mut(&atom.pred)
                    .expect("defined predicate")
                    .insert(atom.args.clone())
                    .expect("arity fits");
            }
        }
        frame.extend(&rels).expect("fresh names")
    };

    Ok(WfPair {
        lb: build(&|i| true_set.contains(&i)),
        ub: build(&|i| !false_set.contains(&i)),
        trace: None,
    })
}
