//! Shared random-instance generation for the integration suites.

use rand::rngs::StdRng;
use rand::Rng;

use idlogic::structure::{Domain, Elem, FuncInterp, Relation, Structure};
use idlogic::syntax::{Definition, Formula, Rule, Term};

pub struct Instance {
    pub def: Definition,
    pub base: Structure,
}

/// A random definition with at most three predicates of arity ≤ 2 over a
/// domain of at most three elements, kept to at most twelve defined ground
/// atoms. The base interprets a constant, a unary function, and any open
/// predicate.
pub fn random_instance(rng: &mut StdRng) -> Instance {
    let dsize = rng.gen_range(1..=3usize);
    let domain = Domain::numbered(dsize);

    let n_def = rng.gen_range(1..=2usize);
    let has_open = rng.gen_bool(0.5);
    let names: Vec<&str> = ["P", "Q"][..n_def].to_vec();

    // arities with a bounded ground-atom count, leaning small so the
    // exhaustive checks stay fast while still reaching twelve atoms
    const ARITY_POOL: [usize; 5] = [0, 0, 1, 1, 2];
    let arities: Vec<usize> = loop {
        let candidate: Vec<usize> =
            (0..n_def).map(|_| ARITY_POOL[rng.gen_range(0..ARITY_POOL.len())]).collect();
        let atoms: usize = candidate.iter().map(|a| dsize.pow(*a as u32)).sum();
        if atoms <= 12 {
            break candidate;
        }
    };
    let open_arity = rng.gen_range(0..=1usize);

    let mut base = Structure::new(domain.clone())
        .with_func("c", FuncInterp::constant(Elem(rng.gen_range(0..dsize) as u32)))
        .unwrap();
    let table: Vec<Elem> = (0..dsize).map(|_| Elem(rng.gen_range(0..dsize) as u32)).collect();
    base = base.with_func("f", FuncInterp::from_table(1, table, dsize).unwrap()).unwrap();
    if has_open {
        let mut rel = Relation::empty(open_arity);
        for t in domain.tuples(open_arity) {
            if rng.gen_bool(0.5) {
                rel.insert(t).unwrap();
            }
        }
        base = base.with_rel("S", rel).unwrap();
    }

    let mut all_preds: Vec<(String, usize)> = names
        .iter()
        .zip(arities.iter())
        .map(|(n, a)| (n.to_string(), *a))
        .collect();
    if has_open {
        all_preds.push(("S".to_string(), open_arity));
    }

    let mut rules = Vec::new();
    for (name, arity) in names.iter().zip(arities.iter()) {
        for _ in 0..rng.gen_range(1..=2usize) {
            rules.push(random_rule(rng, name, *arity, &all_preds));
        }
    }
    Instance { def: Definition::new(rules).unwrap(), base }
}

pub fn random_term(rng: &mut StdRng, scope: &[String]) -> Term {
    match rng.gen_range(0..4) {
        0 if !scope.is_empty() => Term::var(&scope[rng.gen_range(0..scope.len())]),
        1 if !scope.is_empty() => {
            Term::app("f", [Term::var(&scope[rng.gen_range(0..scope.len())])])
        }
        2 => Term::app("f", [Term::constant("c")]),
        _ => Term::constant("c"),
    }
}

pub fn random_body(
    rng: &mut StdRng,
    depth: usize,
    scope: &mut Vec<String>,
    preds: &[(String, usize)],
) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..6) {
            0 | 1 => {
                let (name, arity) = &preds[rng.gen_range(0..preds.len())];
                let args: Vec<Term> = (0..*arity).map(|_| random_term(rng, scope)).collect();
                Formula::Atom(name.clone(), args)
            }
            2 => Formula::eq(random_term(rng, scope), random_term(rng, scope)),
            3 => Formula::True,
            4 => Formula::False,
            _ => {
                let (name, arity) = &preds[rng.gen_range(0..preds.len())];
                let args: Vec<Term> = (0..*arity).map(|_| random_term(rng, scope)).collect();
                Formula::not(Formula::Atom(name.clone(), args))
            }
        };
    }
    match rng.gen_range(0..7) {
        0 => Formula::not(random_body(rng, depth - 1, scope, preds)),
        1 => Formula::and(
            random_body(rng, depth - 1, scope, preds),
            random_body(rng, depth - 1, scope, preds),
        ),
        2 => Formula::or(
            random_body(rng, depth - 1, scope, preds),
            random_body(rng, depth - 1, scope, preds),
        ),
        3 => Formula::implies(
            random_body(rng, depth - 1, scope, preds),
            random_body(rng, depth - 1, scope, preds),
        ),
        6 => Formula::iff(
            random_body(rng, depth - 1, scope, preds),
            random_body(rng, depth - 1, scope, preds),
        ),
        4 => {
            let var = format!("z{}", scope.len());
            scope.push(var.clone());
            let inner = random_body(rng, depth - 1, scope, preds);
            scope.pop();
            Formula::exists_obj(var, inner)
        }
        _ => {
            let var = format!("z{}", scope.len());
            scope.push(var.clone());
            let inner = random_body(rng, depth - 1, scope, preds);
            scope.pop();
            Formula::forall_obj(var, inner)
        }
    }
}

pub fn random_rule(
    rng: &mut StdRng,
    head: &str,
    arity: usize,
    preds: &[(String, usize)],
) -> Rule {
    let n_vars = rng.gen_range(0..=2usize);
    let vars: Vec<String> = ["x", "y"][..n_vars].iter().map(|s| s.to_string()).collect();
    let head_args: Vec<Term> = (0..arity).map(|_| random_term(rng, &vars)).collect();
    let mut scope = vars.clone();
    let body = random_body(rng, 2, &mut scope, preds);
    Rule::new(vars, head, head_args, body)
}
