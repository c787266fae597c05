//! Positive definitions collapse to plain monotone induction: the
//! well-founded extension, the least fixpoint of the one-step operator,
//! the unique minimal model of the rules-as-implications, and the unique
//! model of the second-order translations all coincide.
//!
//! Run with `cargo run -p idlogic --example transitive_closure`.

use std::collections::BTreeSet;

use idlogic::checker::enumerate_models;
use idlogic::engine::{extension, gamma, lfp_monotone};
use idlogic::ground::{ground_definition, GroundingMode};
use idlogic::oracle::minimal_models;
use idlogic::structure::{Domain, Elem, ExtensionLattice, Relation, Structure};
use idlogic::syntax::{parse_theory, Formula, Theory};
use idlogic::transform::{circumscription, pos_ind};
use idlogic::Budget;

fn main() -> idlogic::Result<()> {
    let theory = parse_theory(
        "pred T/2. pred G/2.\n\
         { T(x,y) <- G(x,y). T(x,y) <- ?z: (T(x,z) & T(z,y)). }.",
    )?;
    let def = theory.definitions()[0].clone();

    let base = Structure::new(Domain::new(["a", "b", "c"])?).with_rel(
        "G",
        Relation::from_tuples(2, [vec![Elem(0), Elem(1)], vec![Elem(1), Elem(2)]])?,
    )?;
    let budget = Budget::default();

    // the defined extension of the open structure
    let ext = extension(&def, &base)?;
    println!("T-extension: {ext}");

    // the same relation as the least fixpoint of the one-step operator
    let g = ground_definition(&def, &base, GroundingMode::FoldOpens, &budget)?;
    let mut vocab = base.vocab();
    vocab.add_predicate("T", 2)?;
    let lat = ExtensionLattice::new(base.clone(), vocab.clone())?;
    let lfp = lfp_monotone(|s| gamma(&g, s), &lat)?;
    println!("lfp of gamma agrees: {}", lfp == ext);

    // the unique minimal model of the rules read as implications
    let minimal = minimal_models(&def, &base, &budget)?;
    println!("minimal models: {}, agrees: {}", minimal.len(), minimal == vec![ext.clone()]);

    // and the unique model of the least-relation and circumscription axioms
    let free: BTreeSet<String> = ["T".to_string()].into();
    let as_theory = |axiom: Formula| Theory { vocab: theory.vocab.clone(), axioms: vec![axiom] };
    let pos = enumerate_models(&as_theory(pos_ind(&def)), &base, &free, &budget)?;
    let circ = enumerate_models(&as_theory(circumscription(&def)), &base, &free, &budget)?;
    println!("least-relation axiom models: {}, agrees: {}", pos.len(), pos == vec![ext.clone()]);
    println!("circumscription models: {}, agrees: {}", circ.len(), circ == vec![ext]);

    Ok(())
}
