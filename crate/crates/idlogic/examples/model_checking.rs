//! Satisfaction over finite structures for the full language: definitions
//! under connectives, object quantifiers, and second-order quantification
//! by enumeration.
//!
//! Run with `cargo run -p idlogic --example model_checking`.

use std::collections::BTreeSet;

use idlogic::checker::{enumerate_models, satisfies, satisfies_theory};
use idlogic::structure::{Domain, Elem, FuncInterp, Relation, Structure};
use idlogic::syntax::{parse_formula, parse_theory};
use idlogic::Budget;

fn main() -> idlogic::Result<()> {
    let budget = Budget::default();

    // chain 0..4 with E interpreted as the even elements
    let domain = Domain::numbered(5);
    let succ = FuncInterp::from_fn(&domain, 1, |args| {
        let i = args[0].index();
        Elem(if i < 4 { (i + 1) as u32 } else { 4 })
    });
    let i = Structure::new(domain)
        .with_func("s", succ)?
        .with_func("0", FuncInterp::constant(Elem(0)))?
        .with_rel("E", Relation::from_tuples(1, [vec![Elem(0)], vec![Elem(2)], vec![Elem(4)]])?)?;

    let theory = parse_theory("pred E/1. func s/1. const 0.")?;
    let vocab = theory.vocab.clone();

    // the definition is a formula; conjoin it with a membership query
    let f = parse_formula("{ E(x) <- x = 0. E(s(x)) <- ~E(x). } & E(s(s(0)))", &vocab)?;
    println!("evens satisfy the definition and E(2): {}", satisfies(&i, &f, &budget)?);

    // second-order: there is a set closed under successor containing 0
    let g = parse_formula("?X/1: (X(0) & !x: X(x) => X(s(x)))", &vocab)?;
    println!("a successor-closed set through 0 exists: {}", satisfies(&i, &g, &budget)?);

    // and one whose complement is exactly E fails to be closed
    let h = parse_formula("?X/1: ((!x: X(x) <=> ~E(x)) & X(0))", &vocab)?;
    println!("the complement of E contains 0: {}", satisfies(&i, &h, &budget)?);

    // theory satisfaction and model enumeration over a free predicate
    let t = parse_theory(
        "pred P/0. pred Q/0.\n\
         { P <- Q. } & { Q <- P. }.",
    )?;
    let unit = Structure::new(Domain::new(["u"])?);
    let free: BTreeSet<String> = ["P".to_string(), "Q".to_string()].into();
    let models = enumerate_models(&t, &unit, &free, &budget)?;
    println!("split circular support has {} models:", models.len());
    for m in &models {
        println!("  {m}");
    }

    // the simultaneous definition admits only the empty model
    let joined = parse_theory(
        "pred P/0. pred Q/0.\n\
         { P <- Q. Q <- P. }.",
    )?;
    let sat = satisfies_theory(&models[1], &joined, &budget)?;
    println!("{} satisfies the joined definition: {sat}", models[1]);

    Ok(())
}
