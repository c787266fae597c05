//! When is a simultaneous definition equivalent to the conjunction of its
//! parts? Splitting is only safe when no mutual dependency straddles the
//! parts; the certificate is computed on the ground dependency graph.
//!
//! Run with `cargo run -p idlogic --example modularity`.

use std::collections::{BTreeMap, BTreeSet};

use idlogic::checker::enumerate_models;
use idlogic::engine::is_total;
use idlogic::structure::{Domain, Elem, FuncInterp, Structure};
use idlogic::syntax::{parse_theory, Theory};
use idlogic::transform::{certify_reduction_partition, make_partition, Certification};
use idlogic::Budget;

fn group(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().map(|(p, i)| (p.to_string(), *i)).collect()
}

fn main() -> idlogic::Result<()> {
    let budget = Budget::default();
    let unit = Structure::new(Domain::new(["u"])?);

    // circular support: the split breaks the cycle and gains a model
    let t = parse_theory("pred P/0. pred Q/0.\n{ P <- Q. Q <- P. }.")?;
    let def = t.definitions()[0].clone();
    let p = make_partition(&def, &group(&[("P", 0), ("Q", 1)]))?;
    let free: BTreeSet<String> = ["P".to_string(), "Q".to_string()].into();
    let whole = enumerate_models(&t, &unit, &free, &budget)?;
    let split_theory = Theory { vocab: t.vocab.clone(), axioms: vec![p.conjunction()] };
    let split = enumerate_models(&split_theory, &unit, &free, &budget)?;
    println!("joined definition models: {}", whole.len());
    println!("conjunction of parts models: {}", split.len());
    match certify_reduction_partition(&def, &p, &unit, &budget)? {
        Certification::Certified => println!("certificate: certified"),
        Certification::Unknown { witness } => {
            let atoms: Vec<String> = witness.iter().map(|a| a.display(unit.domain())).collect();
            println!("certificate: unknown, cross-part cycle {{{}}}", atoms.join(", "));
        }
    }

    // even/odd over an injective successor of odd length: certified, and
    // the split preserves the models exactly
    let t = parse_theory(
        "pred E/1. pred O/1. func s/1. const 0.\n\
         { E(x) <- x = 0. E(s(x)) <- O(x). O(s(x)) <- E(x). }.",
    )?;
    let def = t.definitions()[0].clone();
    let p = make_partition(&def, &group(&[("E", 0), ("O", 1)]))?;
    let domain = Domain::numbered(5);
    let succ = FuncInterp::from_fn(&domain, 1, |args| Elem(((args[0].index() + 1) % 5) as u32));
    let base = Structure::new(domain)
        .with_func("s", succ)?
        .with_func("0", FuncInterp::constant(Elem(0)))?;
    let cert = certify_reduction_partition(&def, &p, &base, &budget)?;
    println!("even/odd split on a 5-cycle: certified = {}", cert.is_certified());
    for (k, part) in p.parts().iter().enumerate() {
        println!("  part {} total: {}", k + 1, is_total(part, &base, &budget)?);
    }
    let free: BTreeSet<String> = ["E".to_string(), "O".to_string()].into();
    let whole = enumerate_models(&t, &base, &free, &budget)?;
    let split_theory = Theory { vocab: t.vocab.clone(), axioms: vec![p.conjunction()] };
    let split = enumerate_models(&split_theory, &base, &free, &budget)?;
    println!("  model sets equal: {}", whole == split);

    // a certificate does not buy consistency: { P <- ~P. Q <- ~P. } splits
    // cleanly, yet the first part has no model at all
    let t = parse_theory("pred P/0. pred Q/0.\n{ P <- ~P. Q <- ~P. }.")?;
    let def = t.definitions()[0].clone();
    let p = make_partition(&def, &group(&[("P", 0), ("Q", 1)]))?;
    let cert = certify_reduction_partition(&def, &p, &unit, &budget)?;
    println!("self-refuting split: certified = {}", cert.is_certified());
    println!("  part 1 total: {}", is_total(&p.parts()[0], &unit, &budget)?);
    let free: BTreeSet<String> = ["P".to_string(), "Q".to_string()].into();
    let models = enumerate_models(&t, &unit, &free, &budget)?;
    let split_theory = Theory { vocab: t.vocab.clone(), axioms: vec![p.conjunction()] };
    let split_models = enumerate_models(&split_theory, &unit, &free, &budget)?;
    println!("  models of the whole: {}", models.len());
    println!("  models of the conjunction: {}", split_models.len());

    Ok(())
}
