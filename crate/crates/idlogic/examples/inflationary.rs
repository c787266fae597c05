//! The inflationary fixpoint is a different way to force convergence out
//! of a non-monotone rule body: it keeps everything ever derived. On the
//! even-number body it overshoots to the whole domain, while the
//! well-founded reading recovers exactly the evens.
//!
//! Run with `cargo run -p idlogic --example inflationary`.

use idlogic::engine::{extension, inflationary_fixpoint};
use idlogic::structure::{Domain, Elem, FuncInterp, Structure};
use idlogic::syntax::{parse_formula, parse_theory};
use idlogic::Budget;

fn main() -> idlogic::Result<()> {
    let n = 11;
    let domain = Domain::numbered(n);
    let succ = FuncInterp::from_fn(&domain, 1, |args| {
        let i = args[0].index();
        Elem(if i + 1 < n { (i + 1) as u32 } else { (n - 1) as u32 })
    });
    let base = Structure::new(domain)
        .with_func("s", succ)?
        .with_func("0", FuncInterp::constant(Elem(0)))?;

    // the one-formula version of the even rules; the parameter x is a free
    // symbol, declared so it parses as a constant
    let theory = parse_theory("pred E/1. func s/1. const 0. const x.")?;
    let body = parse_formula("x = 0 | ?y: (x = s(y) & ~E(y))", &theory.vocab)?;
    let inflated = inflationary_fixpoint(&body, &["x".to_string()], "E", &base, &Budget::default())?;
    let members: Vec<&str> = inflated.tuples().map(|t| base.domain().name(t[0])).collect();
    println!("inflationary fixpoint: {{{}}} ({} of {n})", members.join(", "), inflated.len());

    // the rule-based reading of the same induction
    let t = parse_theory(
        "pred E/1. func s/1. const 0.\n\
         { E(x) <- x = 0. E(s(x)) <- ~E(x). }.",
    )?;
    let def = t.definitions()[0].clone();
    let wf = extension(&def, &base)?;
    println!("well-founded extension: {wf}");

    Ok(())
}
