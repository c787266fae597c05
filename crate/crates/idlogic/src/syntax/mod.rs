//! Syntax: AST, parser, pretty-printer and syntactic analyses.

mod analysis;
mod ast;
mod parser;
mod printer;

pub use analysis::{
    definition_free_symbols, free_symbols, inferred_vocab, is_non_recursive, is_positive,
    open_symbols, predicate_binders, rename_negatives, single_rule_form, subst_obj,
    subst_obj_term, subst_pred, RenamedDefinition, Sign,
};
pub use ast::{Binder, BinderKind, Definition, Formula, Rule, Term, Theory};
pub use parser::{parse_formula, parse_theory};
