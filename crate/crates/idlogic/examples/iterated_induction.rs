//! Iterated induction: a sequence of positive definitions, each stratum
//! building on the previous ones. Folding the strata one by one, taking
//! the well-founded model of the union, and conjoining the second-order
//! least-relation axioms all produce the same structure.
//!
//! Run with `cargo run -p idlogic --example iterated_induction`.

use std::collections::BTreeSet;

use idlogic::checker::enumerate_models;
use idlogic::engine::extension;
use idlogic::structure::{Domain, Elem, Relation, Structure};
use idlogic::syntax::{parse_theory, Formula, Theory};
use idlogic::transform::{check_iid, iterated_extension, pos_ind, union_definition};
use idlogic::Budget;

fn main() -> idlogic::Result<()> {
    // stratum 1: reachability from `a`; stratum 2: the unreached part,
    // defined negatively in terms of the finished stratum
    let t = parse_theory(
        "pred R/1. pred Out/1. pred G/2. const a.\n\
         { R(x) <- ?y: (G(y,x) & R(y)). R(x) <- x = a. }.\n\
         { Out(x) <- ~R(x). }.",
    )?;
    let defs: Vec<_> = t.definitions().into_iter().cloned().collect();

    println!("valid iterated sequence: {}", check_iid(&defs).is_ok());

    let base = Structure::new(Domain::new(["a", "b", "c"])?)
        .with_func("a", idlogic::structure::FuncInterp::constant(Elem(0)))?
        .with_rel("G", Relation::from_tuples(2, [vec![Elem(0), Elem(1)]])?)?;

    let folded = iterated_extension(&defs, &base)?;
    println!("stratified construction: {folded}");

    let union = union_definition(&defs)?;
    let joint = extension(&union, &base)?;
    println!("union's well-founded model agrees: {}", joint == folded);

    let axioms: Vec<Formula> = defs.iter().map(pos_ind).collect();
    let theory = Theory { vocab: t.vocab.clone(), axioms };
    let free: BTreeSet<String> = ["R".to_string(), "Out".to_string()].into();
    let models = enumerate_models(&theory, &base, &free, &Budget::default())?;
    println!(
        "least-relation axioms have {} model, agrees: {}",
        models.len(),
        models == vec![folded]
    );

    // reordering the strata leaks a defined symbol backwards
    let reordered = vec![defs[1].clone(), defs[0].clone()];
    match check_iid(&reordered) {
        Ok(()) => println!("reordered sequence unexpectedly valid"),
        Err(e) => println!("reordered sequence rejected: {e}"),
    }

    Ok(())
}
