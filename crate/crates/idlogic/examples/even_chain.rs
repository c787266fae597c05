//! Whether a non-monotone definition pins down its predicate depends on
//! the structure it is read over: the even-number induction is total on
//! successor chains with an even top, and leaves the top atom undefined
//! otherwise.
//!
//! Run with `cargo run -p idlogic --example even_chain`.

use idlogic::engine::well_founded;
use idlogic::structure::{Domain, Elem, FuncInterp, Structure};
use idlogic::syntax::parse_theory;

/// Domain `0..n-1` with the successor saturating at the top.
fn chain(n: usize) -> Structure {
    let domain = Domain::numbered(n);
    let succ = FuncInterp::from_fn(&domain, 1, |args| {
        let i = args[0].index();
        Elem(if i + 1 < n { (i + 1) as u32 } else { (n - 1) as u32 })
    });
    Structure::new(domain)
        .with_func("s", succ)
        .unwrap()
        .with_func("0", FuncInterp::constant(Elem(0)))
        .unwrap()
}

fn main() -> idlogic::Result<()> {
    let theory = parse_theory(
        "pred E/1. func s/1. const 0.\n\
         { E(x) <- x = 0. E(s(x)) <- ~E(x). }.",
    )?;
    let def = theory.definitions()[0].clone();

    for n in [5, 6] {
        let base = chain(n);
        let pair = well_founded(&def, &base, false)?;
        print!("chain 0..{}: ", n - 1);
        if pair.total() {
            println!("total, E = {}", pair.lb);
        } else {
            let undef: Vec<String> = pair
                .undefined_atoms()
                .iter()
                .map(|a| a.display(base.domain()))
                .collect();
            println!("not total, undefined: {}", undef.join(", "));
        }
    }

    // two elements with s(0) = 1 and s(1) = 1: the atom E[1] is supported
    // only through its own negation, so the bounds never meet on it
    let domain = Domain::numbered(2);
    let succ = FuncInterp::from_fn(&domain, 1, |_| Elem(1));
    let base = Structure::new(domain)
        .with_func("s", succ)?
        .with_func("0", FuncInterp::constant(Elem(0)))?;
    let pair = well_founded(&def, &base, false)?;
    println!("two-element sink: lb = {}, ub = {}", pair.lb, pair.ub);

    Ok(())
}
