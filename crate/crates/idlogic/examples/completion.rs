//! Replacing a definition by its completion is only sound under an
//! acyclicity certificate: the completion of a circular definition has
//! spurious models, while an acyclic one is captured exactly.
//!
//! Run with `cargo run -p idlogic --example completion`.

use std::collections::BTreeSet;

use idlogic::checker::enumerate_models;
use idlogic::oracle::completion_models;
use idlogic::structure::{Domain, Elem, FuncInterp, Structure};
use idlogic::syntax::{parse_formula, parse_theory, Formula, Theory};
use idlogic::transform::{certify_strict_reduction, completion};
use idlogic::Budget;

fn main() -> idlogic::Result<()> {
    let budget = Budget::default();

    // the completion of the even definition, printable and re-parseable
    let t = parse_theory(
        "pred E/1. func s/1. const 0.\n\
         { E(x) <- x = 0. E(s(x)) <- ~E(x). }.",
    )?;
    let def = t.definitions()[0].clone();
    let comp = completion(&def);
    println!("comp: {comp}.");
    let reparsed = parse_formula(&comp.to_string(), &t.vocab)?;
    println!("round-trips: {}", reparsed == comp);

    // over an injective successor the definition is acyclic, and the
    // completion has exactly the same models
    let domain = Domain::numbered(5);
    let succ = FuncInterp::from_fn(&domain, 1, |args| Elem(((args[0].index() + 1) % 5) as u32));
    let base = Structure::new(domain)
        .with_func("s", succ)?
        .with_func("0", FuncInterp::constant(Elem(0)))?;
    let cert = certify_strict_reduction(&def, &base, &budget)?;
    println!("strict reduction on the 5-cycle: certified = {}", cert.is_certified());

    let free: BTreeSet<String> = ["E".to_string()].into();
    let def_models = enumerate_models(
        &Theory { vocab: t.vocab.clone(), axioms: vec![Formula::Def(def.clone())] },
        &base,
        &free,
        &budget,
    )?;
    let comp_models = completion_models(&def, &base, &budget)?;
    println!(
        "definition models = completion models: {} ({} each)",
        def_models == comp_models,
        def_models.len()
    );

    // without the certificate the completion may be strictly weaker
    let t = parse_theory("pred P/0. pred Q/0.\n{ P <- Q. Q <- P. }.")?;
    let circular = t.definitions()[0].clone();
    let unit = Structure::new(Domain::new(["u"])?);
    let cert = certify_strict_reduction(&circular, &unit, &budget)?;
    println!("circular definition: certified = {}", cert.is_certified());
    let free: BTreeSet<String> = ["P".to_string(), "Q".to_string()].into();
    let def_models = enumerate_models(
        &Theory { vocab: t.vocab.clone(), axioms: vec![Formula::Def(circular.clone())] },
        &unit,
        &free,
        &budget,
    )?;
    let comp_models = completion_models(&circular, &unit, &budget)?;
    println!(
        "definition has {} model(s), completion has {}",
        def_models.len(),
        comp_models.len()
    );

    Ok(())
}
