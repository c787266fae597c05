//! Loading structures from JSON text.
//!
//! The accepted document shape:
//!
//! ```json
//! {
//!   "domain": ["0", "1", "2"],
//!   "functions": {
//!     "0": "0",
//!     "s": { "0": "1", "1": "2", "2": "2" }
//!   },
//!   "relations": {
//!     "G": [["0", "1"], ["1", "2"]]
//!   }
//! }
//! ```
//!
//! A function interpretation is either a plain element name (a constant), a
//! map from comma-joined argument names to an element name, or a nested
//! array indexed by domain order with nesting depth equal to the arity.
//! Arities are inferred from the document and checked against the given
//! vocabulary; every interpreted symbol must be a member of it.

use serde_json::Value;

use super::{Domain, Elem, FuncInterp, Relation, Structure, SymbolKind, Vocabulary};
use crate::error::{Error, Result};

pub fn structure_from_json(text: &str, vocab: &Vocabulary) -> Result<Structure> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::StructureFile(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::StructureFile("top level must be an object".into()))?;

    let domain_names: Vec<String> = obj
        .get("domain")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::StructureFile("missing `domain` array".into()))?
        .iter()
        .map(|v| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(Error::StructureFile("domain elements must be strings".into())),
        })
        .collect::<Result<_>>()?;
    let domain = Domain::new(domain_names)?;

    let mut out = Structure::new(domain.clone());

    if let Some(funcs) = obj.get("functions") {
        let funcs = funcs
            .as_object()
            .ok_or_else(|| Error::StructureFile("`functions` must be an object".into()))?;
        for (name, spec) in funcs {
            let declared = match vocab.kind(name) {
                Some(SymbolKind::Function(a)) => a,
                Some(SymbolKind::Predicate(_)) => {
                    return Err(Error::StructureFile(format!(
                        "`{name}` is a predicate, interpreted as a function"
                    )))
                }
                None => {
                    return Err(Error::StructureFile(format!(
                        "function `{name}` is not in the vocabulary"
                    )))
                }
            };
            let interp = parse_func(name, spec, declared, &domain)?;
            out.set_func(name.clone(), interp)?;
        }
    }

    if let Some(rels) = obj.get("relations") {
        let rels = rels
            .as_object()
            .ok_or_else(|| Error::StructureFile("`relations` must be an object".into()))?;
        for (name, spec) in rels {
            let declared = match vocab.kind(name) {
                Some(SymbolKind::Predicate(a)) => a,
                Some(SymbolKind::Function(_)) => {
                    return Err(Error::StructureFile(format!(
                        "`{name}` is a function, interpreted as a relation"
                    )))
                }
                None => {
                    return Err(Error::StructureFile(format!(
                        "predicate `{name}` is not in the vocabulary"
                    )))
                }
            };
            let rel = parse_rel(name, spec, declared, &domain)?;
            out.set_rel(name.clone(), rel)?;
        }
    }

    Ok(out)
}

fn lookup(domain: &Domain, name: &str) -> Result<Elem> {
    domain
        .elem(name)
        .ok_or_else(|| Error::ElementOutOfDomain(name.to_string()))
}

fn value_elem(domain: &Domain, v: &Value) -> Result<Elem> {
    match v {
        Value::String(s) => lookup(domain, s),
        Value::Number(n) => lookup(domain, &n.to_string()),
        _ => Err(Error::StructureFile("expected an element name".into())),
    }
}

fn parse_func(name: &str, spec: &Value, declared: usize, domain: &Domain) -> Result<FuncInterp> {
    match spec {
        Value::String(_) | Value::Number(_) => {
            if declared != 0 {
                return Err(Error::ArityMismatch {
                    symbol: name.to_string(),
                    expected: declared,
                    got: 0,
                });
            }
            Ok(FuncInterp::constant(value_elem(domain, spec)?))
        }
        Value::Object(map) => {
            // keys are comma-joined argument tuples
            let mut entries = Vec::new();
            for (key, val) in map {
                let args: Vec<Elem> = if key.is_empty() {
                    vec![]
                } else {
                    key.split(',')
                        .map(|p| lookup(domain, p.trim()))
                        .collect::<Result<_>>()?
                };
                if args.len() != declared {
                    return Err(Error::ArityMismatch {
                        symbol: name.to_string(),
                        expected: declared,
                        got: args.len(),
                    });
                }
                entries.push((args, value_elem(domain, val)?));
            }
            table_from_entries(name, declared, entries, domain)
        }
        Value::Array(_) => {
            let mut entries = Vec::new();
            collect_nested(name, spec, declared, domain, &mut Vec::new(), &mut entries)?;
            table_from_entries(name, declared, entries, domain)
        }
        _ => Err(Error::StructureFile(format!("bad interpretation for function `{name}`"))),
    }
}

fn collect_nested(
    name: &str,
    spec: &Value,
    remaining: usize,
    domain: &Domain,
    prefix: &mut Vec<Elem>,
    entries: &mut Vec<(Vec<Elem>, Elem)>,
) -> Result<()> {
    if remaining == 0 {
        entries.push((prefix.clone(), value_elem(domain, spec)?));
        return Ok(());
    }
    let arr = spec.as_array().ok_or_else(|| {
        Error::StructureFile(format!("function `{name}`: expected array nesting of depth {remaining}"))
    })?;
    if arr.len() != domain.size() {
        return Err(Error::StructureFile(format!(
            "function `{name}`: expected {} entries, got {}",
            domain.size(),
            arr.len()
        )));
    }
    for (i, sub) in arr.iter().enumerate() {
        prefix.push(Elem(i as u32));
        collect_nested(name, sub, remaining - 1, domain, prefix, entries)?;
        prefix.pop();
    }
    Ok(())
}

fn table_from_entries(
    name: &str,
    arity: usize,
    entries: Vec<(Vec<Elem>, Elem)>,
    domain: &Domain,
) -> Result<FuncInterp> {
    let size = domain.size();
    let total = size.pow(arity as u32);
    let mut table: Vec<Option<Elem>> = vec![None; total];
    for (args, val) in entries {
        let mut idx = 0usize;
        for a in &args {
            idx = idx * size + a.index();
        }
        if table[idx].replace(val).is_some() {
            return Err(Error::StructureFile(format!(
                "function `{name}`: duplicate entry for one argument tuple"
            )));
        }
    }
    let table: Option<Vec<Elem>> = table.into_iter().collect();
    match table {
        Some(t) => FuncInterp::from_table(arity, t, size),
        None => Err(Error::MissingFunctionInterpretation(format!(
            "{name} (table is not total)"
        ))),
    }
}

fn parse_rel(name: &str, spec: &Value, declared: usize, domain: &Domain) -> Result<Relation> {
    let rows = spec
        .as_array()
        .ok_or_else(|| Error::StructureFile(format!("relation `{name}` must be an array of tuples")))?;
    let mut rel = Relation::empty(declared);
    for row in rows {
        let tuple: Vec<Elem> = match row {
            Value::Array(cells) => cells.iter().map(|c| value_elem(domain, c)).collect::<Result<_>>()?,
            // a bare name is shorthand for a 1-tuple
            Value::String(_) | Value::Number(_) => vec![value_elem(domain, row)?],
            _ => return Err(Error::StructureFile(format!("relation `{name}`: bad tuple"))),
        };
        if tuple.len() != declared {
            return Err(Error::ArityMismatch {
                symbol: name.to_string(),
                expected: declared,
                got: tuple.len(),
            });
        }
        rel.insert(tuple)?;
    }
    Ok(rel)
}
