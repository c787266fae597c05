//! Vocabularies, finite structures and the lattice of structure extensions.
//!
//! A [`Structure`] interprets a finite set of function and predicate symbols
//! over a finite, non-empty domain of interned elements. Structures are
//! immutable values: every operation returns a new structure, so fixpoint
//! iterations can snapshot them freely.
//!
//! Given a base structure interpreting at least all function symbols of a
//! vocabulary, the set of its extensions ordered by pointwise inclusion of
//! the predicate interpretations forms a complete lattice
//! ([`ExtensionLattice`]), with the all-empty extension at the bottom and the
//! all-full extension at the top.

mod json;

pub use json::structure_from_json;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An interned domain element. The numeric value is an index into the
/// owning [`Domain`]; the ordering of elements is the declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, non-empty set of named elements.
#[derive(Debug, PartialEq, Eq)]
pub struct Domain {
    names: Vec<String>,
}

impl Domain {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Domain>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::StructureFile("domain must be non-empty".into()));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(Error::StructureFile(format!("duplicate domain element `{n}`")));
            }
        }
        Ok(Arc::new(Domain { names }))
    }

    /// A domain named `0..n-1`, convenient for chain structures.
    pub fn numbered(n: usize) -> Arc<Domain> {
        Domain::new((0..n).map(|i| i.to_string())).expect("n > 0")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.names.len() as u32).map(Elem)
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(|i| Elem(i as u32))
    }

    /// All tuples of the given arity in lexicographic order.
    pub fn tuples(&self, arity: usize) -> TupleIter {
        TupleIter::new(self.size(), arity)
    }
}

/// Lexicographic enumeration of element tuples of a fixed arity.
pub struct TupleIter {
    size: usize,
    current: Option<Vec<Elem>>,
}

impl TupleIter {
    fn new(size: usize, arity: usize) -> TupleIter {
        let current = if size == 0 && arity > 0 { None } else { Some(vec![Elem(0); arity]) };
        TupleIter { size, current }
    }
}

impl Iterator for TupleIter {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        let cur = self.current.as_mut()?;
        let out = cur.clone();
        // odometer increment, last position fastest
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            if cur[pos].index() + 1 < self.size {
                cur[pos] = Elem(cur[pos].0 + 1);
                for slot in cur.iter_mut().skip(pos + 1) {
                    *slot = Elem(0);
                }
                break;
            }
        }
        Some(out)
    }
}

/// The kind of a non-logical symbol together with its arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Function(usize),
    Predicate(usize),
}

/// A finite set of function and predicate symbols with fixed arities.
///
/// Object constants are 0-ary functions and propositions are 0-ary
/// predicates. Equality and the propositional constants are built into the
/// logic and never members of a vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    functions: BTreeMap<String, usize>,
    predicates: BTreeMap<String, usize>,
}

impl Vocabulary {
    pub fn new() -> Vocabulary {
        Vocabulary::default()
    }

    pub fn add_function(&mut self, name: impl Into<String>, arity: usize) -> Result<()> {
        let name = name.into();
        if self.contains(&name) {
            return Err(Error::NameCollision(name));
        }
        self.functions.insert(name, arity);
        Ok(())
    }

    pub fn add_predicate(&mut self, name: impl Into<String>, arity: usize) -> Result<()> {
        let name = name.into();
        if self.contains(&name) {
            return Err(Error::NameCollision(name));
        }
        self.predicates.insert(name, arity);
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.functions.contains_key(name) || self.predicates.contains_key(name)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn kind(&self, name: &str) -> Option<SymbolKind> {
        self.function_arity(name)
            .map(SymbolKind::Function)
            .or_else(|| self.predicate_arity(name).map(SymbolKind::Predicate))
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn is_subset_of(&self, other: &Vocabulary) -> bool {
        self.functions
            .iter()
            .all(|(n, a)| other.function_arity(n) == Some(*a))
            && self
                .predicates
                .iter()
                .all(|(n, a)| other.predicate_arity(n) == Some(*a))
    }

    pub fn union(&self, other: &Vocabulary) -> Result<Vocabulary> {
        let mut out = self.clone();
        for (n, a) in other.functions() {
            match out.kind(n) {
                None => out.functions.insert(n.to_string(), a).map(|_| ()).unwrap_or(()),
                Some(SymbolKind::Function(b)) if a == b => {}
                Some(_) => return Err(Error::NameCollision(n.to_string())),
            }
        }
        for (n, a) in other.predicates() {
            match out.kind(n) {
                None => out.predicates.insert(n.to_string(), a).map(|_| ()).unwrap_or(()),
                Some(SymbolKind::Predicate(b)) if a == b => {}
                Some(_) => return Err(Error::NameCollision(n.to_string())),
            }
        }
        Ok(out)
    }
}

/// A total interpretation of an n-ary function symbol: a flat table indexed
/// by the mixed-radix encoding of the argument tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncInterp {
    arity: usize,
    table: Vec<Elem>,
}

fn radix_index(args: &[Elem], size: usize) -> usize {
    let mut idx = 0usize;
    for a in args {
        idx = idx * size + a.index();
    }
    idx
}

impl FuncInterp {
    /// An interpretation of a constant (0-ary function).
    pub fn constant(value: Elem) -> FuncInterp {
        FuncInterp { arity: 0, table: vec![value] }
    }

    /// Build a total table by evaluating `f` on every tuple.
    pub fn from_fn(domain: &Domain, arity: usize, mut f: impl FnMut(&[Elem]) -> Elem) -> FuncInterp {
        let table = domain.tuples(arity).map(|t| f(&t)).collect();
        FuncInterp { arity, table }
    }

    pub fn from_table(arity: usize, table: Vec<Elem>, domain_size: usize) -> Result<FuncInterp> {
        if table.len() != domain_size.pow(arity as u32) {
            return Err(Error::StructureFile(format!(
                "function table has {} entries, expected {}",
                table.len(),
                domain_size.pow(arity as u32)
            )));
        }
        Ok(FuncInterp { arity, table })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn apply(&self, args: &[Elem], domain_size: usize) -> Elem {
        self.table[radix_index(args, domain_size)]
    }
}

/// An interpretation of an n-ary predicate symbol: a set of tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    arity: usize,
    tuples: BTreeSet<Vec<Elem>>,
}

impl Relation {
    pub fn empty(arity: usize) -> Relation {
        Relation { arity, tuples: BTreeSet::new() }
    }

    pub fn full(arity: usize, domain: &Domain) -> Relation {
        Relation { arity, tuples: domain.tuples(arity).collect() }
    }

    pub fn from_tuples(arity: usize, tuples: impl IntoIterator<Item = Vec<Elem>>) -> Result<Relation> {
        let mut rel = Relation::empty(arity);
        for t in tuples {
            rel.insert(t)?;
        }
        Ok(rel)
    }

    /// The 0-ary relation holding the empty tuple (a true proposition).
    pub fn truth(value: bool) -> Relation {
        let mut rel = Relation::empty(0);
        if value {
            rel.tuples.insert(vec![]);
        }
        rel
    }

    pub fn insert(&mut self, tuple: Vec<Elem>) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                symbol: "<relation>".into(),
                expected: self.arity,
                got: tuple.len(),
            });
        }
        self.tuples.insert(tuple);
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn contains(&self, tuple: &[Elem]) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn tuples(&self) -> impl Iterator<Item = &Vec<Elem>> {
        self.tuples.iter()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.tuples.is_subset(&other.tuples)
    }
}

/// A domain atom `P[a1,..,an]`: a predicate symbol applied to domain
/// elements rather than terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub pred: String,
    pub args: Vec<Elem>,
}

impl GroundAtom {
    pub fn new(pred: impl Into<String>, args: Vec<Elem>) -> GroundAtom {
        GroundAtom { pred: pred.into(), args }
    }

    pub fn display(&self, domain: &Domain) -> String {
        if self.args.is_empty() {
            self.pred.clone()
        } else {
            let args: Vec<&str> = self.args.iter().map(|e| domain.name(*e)).collect();
            format!("{}[{}]", self.pred, args.join(","))
        }
    }
}

/// A finite structure: a domain plus total function interpretations and
/// relation interpretations for the symbols of its vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    domain: Arc<Domain>,
    funcs: BTreeMap<String, FuncInterp>,
    rels: BTreeMap<String, Relation>,
}

impl Structure {
    pub fn new(domain: Arc<Domain>) -> Structure {
        Structure { domain, funcs: BTreeMap::new(), rels: BTreeMap::new() }
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn same_domain(&self, other: &Structure) -> bool {
        Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain
    }

    /// The vocabulary interpreted by this structure.
    pub fn vocab(&self) -> Vocabulary {
        let mut v = Vocabulary::new();
        for (n, f) in &self.funcs {
            v.functions.insert(n.clone(), f.arity);
        }
        for (n, r) in &self.rels {
            v.predicates.insert(n.clone(), r.arity);
        }
        v
    }

    pub fn set_func(&mut self, name: impl Into<String>, interp: FuncInterp) -> Result<()> {
        let name = name.into();
        if self.rels.contains_key(&name) {
            return Err(Error::NameCollision(name));
        }
        self.funcs.insert(name, interp);
        Ok(())
    }

    pub fn set_rel(&mut self, name: impl Into<String>, rel: Relation) -> Result<()> {
        let name = name.into();
        if self.funcs.contains_key(&name) {
            return Err(Error::NameCollision(name));
        }
        for t in rel.tuples() {
            for e in t {
                if e.index() >= self.domain.size() {
                    return Err(Error::ElementOutOfDomain(format!("#{}", e.0)));
                }
            }
        }
        self.rels.insert(name, rel);
        Ok(())
    }

    pub fn with_func(mut self, name: impl Into<String>, interp: FuncInterp) -> Result<Structure> {
        self.set_func(name, interp)?;
        Ok(self)
    }

    pub fn with_rel(mut self, name: impl Into<String>, rel: Relation) -> Result<Structure> {
        self.set_rel(name, rel)?;
        Ok(self)
    }

    pub fn func(&self, name: &str) -> Option<&FuncInterp> {
        self.funcs.get(name)
    }

    pub fn rel(&self, name: &str) -> Option<&Relation> {
        self.rels.get(name)
    }

    pub fn interprets(&self, name: &str) -> bool {
        self.funcs.contains_key(name) || self.rels.contains_key(name)
    }

    pub fn apply_func(&self, name: &str, args: &[Elem]) -> Result<Elem> {
        let f = self
            .funcs
            .get(name)
            .ok_or_else(|| Error::SymbolNotInterpreted(name.to_string()))?;
        if f.arity != args.len() {
            return Err(Error::ArityMismatch {
                symbol: name.to_string(),
                expected: f.arity,
                got: args.len(),
            });
        }
        Ok(f.apply(args, self.domain.size()))
    }

    pub fn holds(&self, pred: &str, tuple: &[Elem]) -> Result<bool> {
        let r = self
            .rels
            .get(pred)
            .ok_or_else(|| Error::SymbolNotInterpreted(pred.to_string()))?;
        if r.arity != tuple.len() {
            return Err(Error::ArityMismatch {
                symbol: pred.to_string(),
                expected: r.arity,
                got: tuple.len(),
            });
        }
        Ok(r.contains(tuple))
    }

    pub fn holds_atom(&self, atom: &GroundAtom) -> Result<bool> {
        self.holds(&atom.pred, &atom.args)
    }

    /// The extension order: same vocabulary, same domain, same function
    /// values, and every relation of `self` included in the corresponding
    /// relation of `other`. Mismatching structures compare as `false`.
    pub fn leq(&self, other: &Structure) -> bool {
        if !self.same_domain(other) || self.funcs != other.funcs {
            return false;
        }
        if self.rels.len() != other.rels.len() {
            return false;
        }
        self.rels.iter().all(|(n, r)| match other.rels.get(n) {
            Some(s) => r.is_subset_of(s),
            None => false,
        })
    }

    /// Restriction to a sub-vocabulary, `I|_sub`.
    pub fn restrict(&self, sub: &Vocabulary) -> Result<Structure> {
        let mut out = Structure::new(self.domain.clone());
        for (n, a) in sub.functions() {
            match self.funcs.get(n) {
                Some(f) if f.arity == a => {
                    out.funcs.insert(n.to_string(), f.clone());
                }
                _ => return Err(Error::SymbolNotInterpreted(n.to_string())),
            }
        }
        for (n, a) in sub.predicates() {
            match self.rels.get(n) {
                Some(r) if r.arity == a => {
                    out.rels.insert(n.to_string(), r.clone());
                }
                _ => return Err(Error::SymbolNotInterpreted(n.to_string())),
            }
        }
        Ok(out)
    }

    /// `I[X̄:v̄]`: reinterpret (or newly interpret) the given predicates.
    pub fn extend(&self, assignments: &BTreeMap<String, Relation>) -> Result<Structure> {
        let mut out = self.clone();
        for (name, rel) in assignments {
            out.set_rel(name.clone(), rel.clone())?;
        }
        Ok(out)
    }

    /// Drop the interpretations of the given predicates, keeping the rest.
    pub fn without_preds<'a>(&self, preds: impl IntoIterator<Item = &'a str>) -> Structure {
        let mut out = self.clone();
        for p in preds {
            out.rels.remove(p);
        }
        out
    }

    /// Drop the interpretations of the given function symbols.
    pub fn without_funcs<'a>(&self, funcs: impl IntoIterator<Item = &'a str>) -> Structure {
        let mut out = self.clone();
        for f in funcs {
            out.funcs.remove(f);
        }
        out
    }

    /// All domain atoms of the interpreted predicates, in the fixed order
    /// (predicate name, then argument tuple lexicographically).
    pub fn all_atoms(&self) -> Vec<GroundAtom> {
        let mut out = Vec::new();
        for (n, r) in &self.rels {
            for t in self.domain.tuples(r.arity) {
                out.push(GroundAtom::new(n.clone(), t));
            }
        }
        out
    }

    /// The atoms true in this structure, in the fixed order.
    pub fn true_atoms(&self) -> Vec<GroundAtom> {
        let mut out = Vec::new();
        for (n, r) in &self.rels {
            for t in r.tuples() {
                out.push(GroundAtom::new(n.clone(), t.clone()));
            }
        }
        out
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms = self.true_atoms();
        let shown: Vec<String> = atoms.iter().map(|a| a.display(&self.domain)).collect();
        write!(f, "{{{}}}", shown.join(", "))
    }
}

/// The complete lattice `⟨S, ⊑⟩` of extensions of a base structure to a
/// larger vocabulary. The base must interpret every function symbol of the
/// target vocabulary; without that requirement the extension order has no
/// meets or joins.
#[derive(Debug, Clone)]
pub struct ExtensionLattice {
    base: Structure,
    vocab: Vocabulary,
}

impl ExtensionLattice {
    pub fn new(base: Structure, vocab: Vocabulary) -> Result<ExtensionLattice> {
        if !base.vocab().is_subset_of(&vocab) {
            let missing = base
                .vocab()
                .predicates()
                .chain(base.vocab().functions())
                .find(|(n, _)| vocab.kind(n).is_none())
                .map(|(n, _)| n.to_string())
                .unwrap_or_default();
            return Err(Error::FreeSymbolOutsideVocab(missing));
        }
        for (n, _) in vocab.functions() {
            if base.func(n).is_none() {
                return Err(Error::MissingFunctionInterpretation(n.to_string()));
            }
        }
        Ok(ExtensionLattice { base, vocab })
    }

    pub fn base(&self) -> &Structure {
        &self.base
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    /// Predicates of the target vocabulary the base leaves uninterpreted,
    /// in the fixed symbol order.
    pub fn missing_predicates(&self) -> Vec<(String, usize)> {
        self.vocab
            .predicates()
            .filter(|(n, _)| self.base.rel(n).is_none())
            .map(|(n, a)| (n.to_string(), a))
            .collect()
    }

    /// `⊥`: every uninterpreted predicate empty.
    pub fn bottom(&self) -> Structure {
        let mut out = self.base.clone();
        for (n, a) in self.missing_predicates() {
            out.rels.insert(n, Relation::empty(a));
        }
        out
    }

    /// `⊤`: every uninterpreted n-ary predicate the full product `Aⁿ`.
    pub fn top(&self) -> Structure {
        let mut out = self.base.clone();
        for (n, a) in self.missing_predicates() {
            let full = Relation::full(a, &self.base.domain);
            out.rels.insert(n, full);
        }
        out
    }

    pub fn contains(&self, s: &Structure) -> bool {
        self.bottom().leq(s) && s.leq(&self.top())
    }

    /// Domain atoms of the uninterpreted predicates, in the fixed order.
    pub fn free_atoms(&self) -> Vec<GroundAtom> {
        let mut out = Vec::new();
        for (n, a) in self.missing_predicates() {
            for t in self.base.domain.tuples(a) {
                out.push(GroundAtom::new(n.clone(), t));
            }
        }
        out
    }

    /// The number of structures in the lattice, `Π 2^(|A|^arity)`.
    pub fn count(&self) -> u128 {
        let bits = self.free_atoms().len() as u32;
        if bits >= 127 {
            u128::MAX
        } else {
            1u128 << bits
        }
    }

    /// Enumerate every extension exactly once, from bottom to top. The
    /// order is the binary counter over the fixed atom order, with the
    /// first atom as the least significant digit.
    pub fn enumerate(&self, budget: u128) -> Result<ExtensionIter> {
        let needed = self.count();
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        Ok(ExtensionIter {
            lattice: self.clone(),
            atoms: self.free_atoms(),
            mask: Some(vec![]),
        })
    }
}

/// Iterator over all extensions in an [`ExtensionLattice`].
#[derive(Debug)]
pub struct ExtensionIter {
    lattice: ExtensionLattice,
    atoms: Vec<GroundAtom>,
    // subset of `atoms` currently selected, as a sorted index list; None when done
    mask: Option<Vec<usize>>,
}

impl ExtensionIter {
    fn build(&self, selected: &[usize]) -> Structure {
        let mut out = self.lattice.base.clone();
        for (n, a) in self.lattice.missing_predicates() {
            out.rels.insert(n, Relation::empty(a));
        }
        for &i in selected {
            let atom = &self.atoms[i];
            out.rels
                .get_mut(&atom.pred)
                .expect("free atom predicate present")
                .tuples
                .insert(atom.args.clone());
        }
        out
    }
}

impl Iterator for ExtensionIter {
    type Item = Structure;

    fn next(&mut self) -> Option<Structure> {
        let mask = self.mask.as_ref()?;
        let out = self.build(mask);
        // advance the characteristic vector as a binary counter
        let mut set: BTreeSet<usize> = mask.iter().copied().collect();
        let mut pos = 0;
        loop {
            if pos >= self.atoms.len() {
                self.mask = None;
                break;
            }
            if set.contains(&pos) {
                set.remove(&pos);
                pos += 1;
            } else {
                set.insert(pos);
                self.mask = Some(set.into_iter().collect());
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Structure {
        // domain 0..n-1 with successor saturating at the top element
        let domain = Domain::numbered(n);
        let succ = FuncInterp::from_fn(&domain, 1, |args| {
            let i = args[0].index();
            Elem(if i + 1 < n { (i + 1) as u32 } else { (n - 1) as u32 })
        });
        let zero = FuncInterp::constant(Elem(0));
        Structure::new(domain)
            .with_func("s", succ)
            .unwrap()
            .with_func("0", zero)
            .unwrap()
    }

    fn vocab_e_s() -> Vocabulary {
        let mut v = Vocabulary::new();
        v.add_function("s", 1).unwrap();
        v.add_function("0", 0).unwrap();
        v.add_predicate("E", 1).unwrap();
        v
    }

    #[test]
    fn leq_is_reflexive() {
        let s = chain(3);
        assert!(s.leq(&s));
    }

    #[test]
    fn leq_on_zero_ary_predicate() {
        let d = Domain::numbered(1);
        let i = Structure::new(d.clone()).with_rel("P", Relation::truth(false)).unwrap();
        let j = Structure::new(d).with_rel("P", Relation::truth(true)).unwrap();
        assert!(i.leq(&j));
        assert!(!j.leq(&i));
    }

    #[test]
    fn bottom_and_top_of_unary_lattice() {
        let lat = ExtensionLattice::new(chain(3), vocab_e_s()).unwrap();
        let bot = lat.bottom();
        let top = lat.top();
        assert!(bot.rel("E").unwrap().is_empty());
        assert_eq!(top.rel("E").unwrap().len(), 3);
        assert!(bot.leq(&top));
    }

    #[test]
    fn bottom_top_propositional() {
        let d = Domain::new(["a"]).unwrap();
        let mut v = Vocabulary::new();
        v.add_predicate("P", 0).unwrap();
        let lat = ExtensionLattice::new(Structure::new(d), v).unwrap();
        assert!(!lat.bottom().holds("P", &[]).unwrap());
        assert!(lat.top().holds("P", &[]).unwrap());
    }

    #[test]
    fn missing_function_is_an_error() {
        let d = Domain::numbered(3);
        let base = Structure::new(d); // no `s`
        let err = ExtensionLattice::new(base, vocab_e_s()).unwrap_err();
        assert!(matches!(err, Error::MissingFunctionInterpretation(_)));
    }

    #[test]
    fn restrict_identity_and_drop() {
        let s = chain(3).with_rel("E", Relation::empty(1)).unwrap();
        let full = s.restrict(&s.vocab()).unwrap();
        assert_eq!(s, full);

        let mut sub = Vocabulary::new();
        sub.add_function("s", 1).unwrap();
        let restricted = s.restrict(&sub).unwrap();
        assert!(restricted.rel("E").is_none());
        assert!(restricted.func("s").is_some());
    }

    #[test]
    fn restrict_unknown_symbol_fails() {
        let s = chain(2);
        let mut sub = Vocabulary::new();
        sub.add_predicate("Q", 1).unwrap();
        assert!(matches!(s.restrict(&sub), Err(Error::SymbolNotInterpreted(_))));
    }

    #[test]
    fn extend_overrides_and_checks() {
        let s = chain(3);
        assert_eq!(s.extend(&BTreeMap::new()).unwrap(), s);

        let mut assign = BTreeMap::new();
        assign.insert(
            "E".to_string(),
            Relation::from_tuples(1, [vec![Elem(0)], vec![Elem(2)]]).unwrap(),
        );
        let e = s.extend(&assign).unwrap();
        assert!(e.holds("E", &[Elem(0)]).unwrap());
        assert!(!e.holds("E", &[Elem(1)]).unwrap());

        // arity violation inside the relation literal
        assert!(Relation::from_tuples(1, [vec![Elem(0), Elem(1)]]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // one 0-ary predicate: two structures
        let d = Domain::new(["a"]).unwrap();
        let mut v = Vocabulary::new();
        v.add_predicate("P", 0).unwrap();
        let lat = ExtensionLattice::new(Structure::new(d), v).unwrap();
        assert_eq!(lat.enumerate(u128::MAX).unwrap().count(), 2);

        // unary over two elements: four structures
        let d2 = Domain::numbered(2);
        let mut v2 = Vocabulary::new();
        v2.add_predicate("E", 1).unwrap();
        let lat2 = ExtensionLattice::new(Structure::new(d2), v2).unwrap();
        let all: Vec<Structure> = lat2.enumerate(u128::MAX).unwrap().collect();
        assert_eq!(all.len(), 4);
        // all distinct, bottom first
        assert_eq!(all[0], lat2.bottom());
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn enumeration_budget() {
        // binary predicate over six elements: 2^36 candidates
        let d = Domain::numbered(6);
        let mut v = Vocabulary::new();
        v.add_predicate("T", 2).unwrap();
        let lat = ExtensionLattice::new(Structure::new(d), v).unwrap();
        match lat.enumerate(1 << 20) {
            Err(Error::BudgetExceeded { needed, .. }) => assert_eq!(needed, 1u128 << 36),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn lattice_bounds_every_member() {
        let d = Domain::numbered(2);
        let mut v = Vocabulary::new();
        v.add_predicate("E", 1).unwrap();
        v.add_predicate("P", 0).unwrap();
        let lat = ExtensionLattice::new(Structure::new(d), v).unwrap();
        for s in lat.enumerate(u128::MAX).unwrap() {
            assert!(lat.bottom().leq(&s));
            assert!(s.leq(&lat.top()));
        }
    }
}
