//! Splitting definitions and translating them to classical logic:
//! partitions with reduction certificates computed on the ground
//! dependency graph, completion, the second-order least-relation axiom,
//! circumscription, and iterated-induction sequences.
//!
//! Certificates are deliberately one-sided. The ground dependency graph
//! over-approximates the semantic dependency relation, so a passing check
//! certifies the property while a failing check only reports `Unknown` —
//! a finer semantic argument might still succeed.

use std::collections::{BTreeMap, BTreeSet};

use crate::engine;
use crate::error::{Error, Result};
use crate::ground::{ground_definition, GroundingMode};
use crate::structure::{GroundAtom, Structure};
use crate::syntax::{
    definition_free_symbols, is_positive, single_rule_form, subst_pred, Binder, Definition,
    Formula, Rule, Term,
};
use crate::Budget;

/// A partition of a definition: rules routed by head predicate into at
/// least two parts with disjoint defined symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<Definition>,
    part_of: BTreeMap<String, usize>,
}

impl Partition {
    pub fn parts(&self) -> &[Definition] {
        &self.parts
    }

    pub fn part_of(&self, pred: &str) -> Option<usize> {
        self.part_of.get(pred).copied()
    }

    /// The conjunction `Δ₁ ∧ … ∧ Δₙ` as a formula.
    pub fn conjunction(&self) -> Formula {
        Formula::conj(self.parts.iter().map(|d| Formula::Def(d.clone())))
    }
}

/// Route every rule to the part its head predicate is grouped into.
/// Grouping values are normalized to `0..n` in sorted order; a grouping
/// with fewer than two parts is rejected, as is one missing a defined
/// predicate.
pub fn make_partition(def: &Definition, grouping: &BTreeMap<String, usize>) -> Result<Partition> {
    let defined = def.defined_symbols();
    for pred in &defined {
        if !grouping.contains_key(pred) {
            return Err(Error::UncoveredPredicate(pred.clone()));
        }
    }
    let mut indices: Vec<usize> = defined.iter().map(|p| grouping[p]).collect();
    indices.sort_unstable();
    indices.dedup();
    if indices.len() < 2 {
        return Err(Error::Syntax {
            line: 0,
            col: 0,
            expected: "a partition into at least two parts".into(),
        });
    }

    let mut part_of: BTreeMap<String, usize> = BTreeMap::new();
    for pred in &defined {
        let slot = indices.binary_search(&grouping[pred]).expect("normalized");
        part_of.insert(pred.clone(), slot);
    }

    let mut buckets: Vec<Vec<Rule>> = vec![Vec::new(); indices.len()];
    for rule in def.rules() {
        buckets[part_of[&rule.head_pred]].push(rule.clone());
    }
    let mut parts = Vec::with_capacity(buckets.len());
    for bucket in buckets {
        // unreachable by construction; the head routing is total
        if bucket.is_empty() {
            return Err(Error::SplitHead("<empty part>".into()));
        }
        parts.push(Definition::new(bucket)?);
    }
    for part in &parts {
        for pred in part.defined_symbols() {
            let here = part_of[&pred];
            if parts
                .iter()
                .enumerate()
                .any(|(i, other)| i != here && other.defines(&pred))
            {
                return Err(Error::SplitHead(pred));
            }
        }
    }
    Ok(Partition { parts, part_of })
}

/// Outcome of a certificate check. `Unknown` is not a refutation: the
/// syntactic dependency graph may overestimate the real dependencies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified,
    Unknown {
        /// Atoms of one mutually-dependent component violating the check.
        witness: Vec<GroundAtom>,
    },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified)
    }
}

/// Check that mutually reachable atoms never straddle parts: in every
/// strongly connected component of the ground dependency graph, all
/// defined atoms belong to one part.
pub fn certify_reduction_partition(
    def: &Definition,
    partition: &Partition,
    base: &Structure,
    budget: &Budget,
) -> Result<Certification> {
    let g = ground_definition(def, base, GroundingMode::FoldOpens, budget)?;
    let dg = g.dependency_graph();
    let scc = dg.scc_preorder();
    for comp in &scc.components {
        if comp.len() < 2 {
            continue;
        }
        let mut parts_seen: BTreeSet<usize> = BTreeSet::new();
        let mut has_open = false;
        for &node in comp {
            match partition.part_of(&dg.nodes()[node].pred) {
                Some(p) => {
                    parts_seen.insert(p);
                }
                None => has_open = true,
            }
        }
        if parts_seen.len() > 1 || (has_open && !parts_seen.is_empty()) {
            return Ok(Certification::Unknown {
                witness: comp.iter().map(|&n| dg.nodes()[n].clone()).collect(),
            });
        }
    }
    Ok(Certification::Certified)
}

/// Check that the dependency graph restricted to defined atoms is acyclic
/// (no component of two or more atoms, no self-edge), which makes the
/// reachability order a strict well-founded order.
pub fn certify_strict_reduction(
    def: &Definition,
    base: &Structure,
    budget: &Budget,
) -> Result<Certification> {
    let g = ground_definition(def, base, GroundingMode::FoldOpens, budget)?;
    let dg = g.dependency_graph();
    let scc = dg.scc_preorder();
    for (cid, comp) in scc.components.iter().enumerate() {
        if scc.cyclic[cid] && comp.iter().any(|&n| dg.is_defined(n)) {
            return Ok(Certification::Unknown {
                witness: comp.iter().map(|&n| dg.nodes()[n].clone()).collect(),
            });
        }
    }
    Ok(Certification::Certified)
}

/// The rules of a definition as plain material implications,
/// `⋀ ∀ȳ (φ ⊃ X(t̄))`.
pub fn rules_as_implications(def: &Definition) -> Formula {
    Formula::conj(def.rules().iter().map(|rule| {
        let head = Formula::Atom(rule.head_pred.clone(), rule.head_args.clone());
        let mut f = Formula::implies(rule.body.clone(), head);
        for v in rule.vars.iter().rev() {
            f = Formula::forall_obj(v.clone(), f);
        }
        f
    }))
}

/// `comp(Δ)`: the conjunction over defined predicates of
/// `∀x̄ (X(x̄) <=> φ_X)`, with the bodies in single-rule normal form.
pub fn completion(def: &Definition) -> Formula {
    let normal = single_rule_form(def);
    Formula::conj(normal.rules().iter().map(|rule| {
        let head = Formula::Atom(rule.head_pred.clone(), rule.head_args.clone());
        let mut f = Formula::iff(head, rule.body.clone());
        for v in rule.vars.iter().rev() {
            f = Formula::forall_obj(v.clone(), f);
        }
        f
    }))
}

fn defined_with_arities(def: &Definition) -> Vec<(String, usize)> {
    def.defined_symbols()
        .into_iter()
        .map(|p| {
            let a = def.head_arity(&p).expect("defined");
            (p, a)
        })
        .collect()
}

/// Fresh second-order variables from the reserved namespace, one per
/// defined predicate.
fn fresh_pred_vars(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("$X{i}")).collect()
}

fn subset_clause(sub: &str, sup: &str, arity: usize) -> Formula {
    let vars: Vec<String> = (0..arity).map(|i| format!("$a{i}")).collect();
    let mut f = Formula::implies(
        Formula::Atom(sub.to_string(), vars.iter().map(Term::var).collect()),
        Formula::Atom(sup.to_string(), vars.iter().map(Term::var).collect()),
    );
    for v in vars.iter().rev() {
        f = Formula::forall_obj(v.clone(), f);
    }
    f
}

fn renamed_implications(def: &Definition, fresh: &[(String, usize, String)]) -> Formula {
    let mut conj = rules_as_implications(def);
    for (orig, _, new) in fresh {
        conj = subst_pred(&conj, orig, new);
    }
    conj
}

/// The second-order axiom that the defined predicates are the least
/// relations closed under the rules:
/// `⋀Δ ∧ ∀X̄ (⋀Δ[P̄/X̄] ⊃ P̄ ⊆ X̄)`.
pub fn pos_ind(def: &Definition) -> Formula {
    let defined = defined_with_arities(def);
    let fresh_names = fresh_pred_vars(defined.len());
    let fresh: Vec<(String, usize, String)> = defined
        .iter()
        .zip(fresh_names.iter())
        .map(|((p, a), x)| (p.clone(), *a, x.clone()))
        .collect();

    let closed = renamed_implications(def, &fresh);
    let subset = Formula::conj(fresh.iter().map(|(p, a, x)| subset_clause(p, x, *a)));
    let mut minimal = Formula::implies(closed, subset);
    for (_, a, x) in fresh.iter().rev() {
        minimal = Formula::forall(Binder::predicate(x.clone(), *a), minimal);
    }
    Formula::and(rules_as_implications(def), minimal)
}

/// The circumscription of the rules with respect to the defined
/// predicates: `⋀Δ ∧ ∀X̄ ((⋀Δ[P̄/X̄] ∧ X̄ ⊆ P̄) ⊃ P̄ ⊆ X̄)`.
pub fn circumscription(def: &Definition) -> Formula {
    let defined = defined_with_arities(def);
    let fresh_names = fresh_pred_vars(defined.len());
    let fresh: Vec<(String, usize, String)> = defined
        .iter()
        .zip(fresh_names.iter())
        .map(|((p, a), x)| (p.clone(), *a, x.clone()))
        .collect();

    let closed = renamed_implications(def, &fresh);
    let below = Formula::conj(fresh.iter().map(|(p, a, x)| subset_clause(x, p, *a)));
    let subset = Formula::conj(fresh.iter().map(|(p, a, x)| subset_clause(p, x, *a)));
    let mut minimal = Formula::implies(Formula::and(closed, below), subset);
    for (_, a, x) in fresh.iter().rev() {
        minimal = Formula::forall(Binder::predicate(x.clone(), *a), minimal);
    }
    Formula::and(rules_as_implications(def), minimal)
}

/// Validate an iterated-induction sequence: positive parts defining
/// pairwise disjoint predicate sets, with no part using a predicate that a
/// later part defines.
pub fn check_iid(defs: &[Definition]) -> Result<()> {
    if defs.is_empty() {
        return Err(Error::NotAnIidSequence("the sequence is empty".into()));
    }
    for (i, d) in defs.iter().enumerate() {
        if !is_positive(d) {
            return Err(Error::NotAnIidSequence(format!(
                "part {} is not a positive definition",
                i + 1
            )));
        }
    }
    for i in 0..defs.len() {
        let di = defs[i].defined_symbols();
        for (j, dj) in defs.iter().enumerate() {
            if i == j {
                continue;
            }
            let shared: Vec<&String> =
                di.iter().filter(|p| dj.defined_symbols().contains(*p)).collect();
            if j > i {
                if let Some(p) = shared.first() {
                    return Err(Error::NotAnIidSequence(format!(
                        "`{p}` is defined in both part {} and part {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if j < i {
                for p in &di {
                    if definition_free_symbols(dj).contains(p) && !dj.defines(p) {
                        return Err(Error::NotAnIidSequence(format!(
                            "`{p}` is defined in part {} but already used openly in part {}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn is_iid(defs: &[Definition]) -> bool {
    check_iid(defs).is_ok()
}

/// The union `Δ₁ ∪ … ∪ Δₙ` as one simultaneous definition.
pub fn union_definition(defs: &[Definition]) -> Result<Definition> {
    let rules: Vec<Rule> = defs.iter().flat_map(|d| d.rules().iter().cloned()).collect();
    Definition::new(rules)
}

/// Fold the strata: extend the open structure by each part in turn. Every
/// part is positive, hence total, so each step succeeds.
pub fn iterated_extension(defs: &[Definition], i_o: &Structure) -> Result<Structure> {
    check_iid(defs)?;
    let mut current = i_o.clone();
    for def in defs {
        current = engine::extension(def, &current)?;
    }
    Ok(current)
}
