//! The well-founded evaluation pipeline on a small propositional
//! definition: grounding, the stable operator, the alternating fixpoint,
//! and definition satisfaction.
//!
//! Run with `cargo run -p idlogic --example wf_basics`.

use idlogic::engine::{satisfies_definition, stable, well_founded_pair};
use idlogic::ground::{ground_definition, GroundingMode};
use idlogic::structure::{Domain, Relation, Structure};
use idlogic::syntax::parse_theory;
use idlogic::Budget;

fn main() -> idlogic::Result<()> {
    // Q is supported either by the absence of P or by itself; the layered
    // reading derives P first and then refutes Q.
    let theory = parse_theory(
        "pred P/0. pred Q/0.\n\
         { P <- true. Q <- ~P. Q <- Q. }.",
    )?;
    let def = theory.definitions()[0].clone();

    let base = Structure::new(Domain::new(["u"])?);
    let g = ground_definition(&def, &base, GroundingMode::FoldOpens, &Budget::default())?;
    println!("ground rules:\n{}", g.dump());

    // iterate the stable operator by hand: each application jumps to the
    // least fixpoint with negations frozen at the previous guess
    let props = |p: bool, q: bool| -> Structure {
        base.clone()
            .with_rel("P", Relation::truth(p))
            .unwrap()
            .with_rel("Q", Relation::truth(q))
            .unwrap()
    };
    let mut current = props(false, false);
    for step in 1..=3 {
        current = stable(&g, &current)?;
        println!("stable^{step}(empty) = {current}");
    }

    // the alternating fixpoint refines a lower and an upper bound at once
    let pair = well_founded_pair(&g, &base, true)?;
    for (k, (lb, ub)) in pair.trace.as_ref().unwrap().iter().enumerate() {
        println!("stage {k}: lb = {lb}, ub = {ub}");
    }
    println!("total: {}", pair.total());
    println!("well-founded model: {}", pair.lb);

    // a structure satisfies the definition exactly when it is that model
    for (p, q) in [(true, false), (true, true), (false, false)] {
        let candidate = props(p, q);
        println!(
            "{candidate} |= def ? {}",
            satisfies_definition(&candidate, &def)?
        );
    }
    Ok(())
}
