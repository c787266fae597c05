//! The semantic core: the immediate-consequence operator, the binary
//! operator that splits positive from negative occurrences, the stable
//! operator, and the alternating fixpoint yielding the well-founded
//! lower/upper bound pair.
//!
//! On a finite lattice the transfinite sequences collapse to plain
//! iteration until equality, so every computation here is a loop over
//! structure snapshots. The hot path works on bit masks over the defined
//! ground atoms ([`GroundSolver`]); the structure-level entry points
//! convert at the boundary.

use std::collections::BTreeMap;

use crate::checker;
use crate::error::{Error, Result};
use crate::ground::{ground_definition, GroundBody, GroundRuleSet, GroundingMode};
use crate::structure::{Elem, ExtensionLattice, GroundAtom, Relation, Structure, Vocabulary};
use crate::syntax::{inferred_vocab, Definition, Formula, Sign};
use crate::Budget;

/// The result of the alternating fixpoint: the least and greatest fixpoint
/// of the squared stable operator. `lb = ub` means the definition is total
/// and `lb` is the defined extension; otherwise the atoms on which they
/// disagree are exactly the undefined ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfPair {
    pub lb: Structure,
    pub ub: Structure,
    /// Stage snapshots `(I^ξ, J^ξ)` of the alternating computation,
    /// starting from `(⊥, ⊤)`, when requested.
    pub trace: Option<Vec<(Structure, Structure)>>,
}

impl WfPair {
    pub fn total(&self) -> bool {
        self.lb == self.ub
    }

    /// Defined atoms on which the bounds disagree.
    pub fn undefined_atoms(&self) -> Vec<GroundAtom> {
        self.ub
            .true_atoms()
            .into_iter()
            .filter(|a| !self.lb.holds_atom(a).unwrap_or(false))
            .collect()
    }
}

/// A set of defined ground atoms, packed into machine words. Atom `i` of
/// the owning solver corresponds to bit `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomMask {
    n: usize,
    words: Vec<u64>,
}

impl AtomMask {
    pub fn empty(n: usize) -> AtomMask {
        AtomMask { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> AtomMask {
        let mut m = AtomMask::empty(n);
        for i in 0..n {
            m.set(i, true);
        }
        m
    }

    /// The mask whose bit `i` is bit `i` of `bits`; usable for exhaustive
    /// enumeration when `n ≤ 64`.
    pub fn from_bits(n: usize, bits: u64) -> AtomMask {
        assert!(n <= 64);
        let mut m = AtomMask::empty(n);
        if !m.words.is_empty() {
            m.words[0] = bits;
        }
        m
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn is_subset(&self, other: &AtomMask) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Body with open leaves folded against a fixed open structure; leaves are
/// defined-atom indices tagged with which side of a pair read serves them.
#[derive(Debug, Clone)]
enum SBody {
    True,
    False,
    Leaf { atom: usize, positive: bool },
    Not(Box<SBody>),
    And(Vec<SBody>),
    Or(Vec<SBody>),
}

/// Fixpoint machinery for one grounding and one fixed interpretation of
/// the open symbols.
pub struct GroundSolver<'g> {
    g: &'g GroundRuleSet,
    /// The open structure: everything except the defined predicates.
    frame: Structure,
    bodies: Vec<SBody>,
}

impl<'g> GroundSolver<'g> {
    /// `opens` must share the grounding base's domain, agree with it on any
    /// open predicate the base already interprets, and interpret every open
    /// predicate that occurs symbolically in the bodies. Interpretations of
    /// defined predicates, if present, are ignored.
    pub fn new(g: &'g GroundRuleSet, opens: &Structure) -> Result<GroundSolver<'g>> {
        if !opens.same_domain(g.base()) {
            return Err(Error::DomainMismatch);
        }
        let defined: Vec<&str> = g.defined_predicates().iter().map(|(n, _)| n.as_str()).collect();
        let mut frame = opens.without_preds(defined.iter().copied());
        for (name, _) in g.vocab().functions() {
            if frame.func(name).is_none() {
                match g.base().func(name) {
                    Some(f) => frame.set_func(name, f.clone())?,
                    None => return Err(Error::MissingFunctionInterpretation(name.to_string())),
                }
            }
        }
        for (name, _) in g.open_predicates() {
            if let (Some(a), Some(b)) = (g.base().rel(name), frame.rel(name)) {
                if a != b {
                    return Err(Error::BaseMismatch(name.to_string()));
                }
            }
        }
        let n = g.n_defined();
        let mut bodies = Vec::with_capacity(n);
        for id in 0..n {
            bodies.push(Self::specialize(g, g.body(crate::ground::AtomId(id as u32)), &frame)?);
        }
        Ok(GroundSolver { g, frame, bodies })
    }

    fn specialize(g: &GroundRuleSet, body: &GroundBody, frame: &Structure) -> Result<SBody> {
        Ok(match body {
            GroundBody::True => SBody::True,
            GroundBody::False => SBody::False,
            GroundBody::Leaf { atom, sign, defined } => {
                if *defined {
                    SBody::Leaf { atom: atom.index(), positive: *sign == Sign::Pos }
                } else if frame.holds_atom(g.atom(*atom))? {
                    SBody::True
                } else {
                    SBody::False
                }
            }
            GroundBody::Not(b) => SBody::Not(Box::new(Self::specialize(g, b, frame)?)),
            GroundBody::And(parts) => SBody::And(
                parts
                    .iter()
                    .map(|p| Self::specialize(g, p, frame))
                    .collect::<Result<_>>()?,
            ),
            GroundBody::Or(parts) => SBody::Or(
                parts
                    .iter()
                    .map(|p| Self::specialize(g, p, frame))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.bodies.len()
    }

    pub fn atoms(&self) -> &[GroundAtom] {
        self.g.defined_atoms()
    }

    pub fn opens(&self) -> &Structure {
        &self.frame
    }

    fn eval(body: &SBody, i: &AtomMask, j: &AtomMask) -> bool {
        match body {
            SBody::True => true,
            SBody::False => false,
            SBody::Leaf { atom, positive } => {
                if *positive {
                    i.get(*atom)
                } else {
                    j.get(*atom)
                }
            }
            SBody::Not(b) => !Self::eval(b, i, j),
            SBody::And(parts) => parts.iter().all(|p| Self::eval(p, i, j)),
            SBody::Or(parts) => parts.iter().any(|p| Self::eval(p, i, j)),
        }
    }

    /// One step of the immediate-consequence operator.
    pub fn gamma(&self, i: &AtomMask) -> AtomMask {
        self.tpp(i, i)
    }

    /// One step of the pair operator: positive defined leaves read `i`,
    /// negative defined leaves read `j`.
    pub fn tpp(&self, i: &AtomMask, j: &AtomMask) -> AtomMask {
        let mut out = AtomMask::empty(self.n_atoms());
        for (idx, body) in self.bodies.iter().enumerate() {
            if Self::eval(body, i, j) {
                out.set(idx, true);
            }
        }
        out
    }

    /// The stable operator: the least fixpoint of `tpp(·, j)`.
    pub fn stable(&self, j: &AtomMask) -> AtomMask {
        let mut i = AtomMask::empty(self.n_atoms());
        loop {
            let next = self.tpp(&i, j);
            if next == i {
                return i;
            }
            i = next;
        }
    }

    /// The alternating fixpoint from `(⊥, ⊤)`; returns the maximal
    /// oscillating pair of the stable operator.
    pub fn pair(&self) -> (AtomMask, AtomMask) {
        let (lb, ub, _) = self.pair_with_trace(false);
        (lb, ub)
    }

    pub fn pair_with_trace(&self, trace: bool) -> (AtomMask, AtomMask, Vec<(AtomMask, AtomMask)>) {
        let mut i = AtomMask::empty(self.n_atoms());
        let mut j = AtomMask::full(self.n_atoms());
        let mut stages = Vec::new();
        if trace {
            stages.push((i.clone(), j.clone()));
        }
        loop {
            let ni = self.stable(&j);
            let nj = self.stable(&i);
            if ni == i && nj == j {
                return (i, j, stages);
            }
            i = ni;
            j = nj;
            if trace {
                stages.push((i.clone(), j.clone()));
            }
        }
    }

    /// Read the defined atoms of a structure into a mask.
    pub fn mask_of(&self, s: &Structure) -> Result<AtomMask> {
        if !s.same_domain(self.g.base()) {
            return Err(Error::DomainMismatch);
        }
        let mut m = AtomMask::empty(self.n_atoms());
        for (idx, atom) in self.g.defined_atoms().iter().enumerate() {
            m.set(idx, s.holds_atom(atom)?);
        }
        Ok(m)
    }

    /// Materialize a mask as a structure extending the open frame.
    pub fn structure_of(&self, m: &AtomMask) -> Structure {
        let mut rels: BTreeMap<String, Relation> = BTreeMap::new();
        for (name, arity) in self.g.defined_predicates() {
            rels.insert(name.clone(), Relation::empty(*arity));
        }
        for (idx, atom) in self.g.defined_atoms().iter().enumerate() {
            if m.get(idx) {
                rels.get_mut(&atom.pred)
                    .expect("defined predicate present")
                    .insert(atom.args.clone())
                    .expect("arity fits");
            }
        }
        self.frame.extend(&rels).expect("fresh predicate names")
    }
}

/// `Γ`: re-derive every defined relation from the rule bodies under `i`;
/// open symbols are copied from `i`.
pub fn gamma(g: &GroundRuleSet, i: &Structure) -> Result<Structure> {
    let mut rels: BTreeMap<String, Relation> = BTreeMap::new();
    for (name, arity) in g.defined_predicates() {
        rels.insert(name.clone(), Relation::empty(*arity));
    }
    for (atom, body) in g.bodies().take(g.n_defined()) {
        if g.eval_body(body, i)? {
            rels.get_mut(&atom.pred).expect("defined").insert(atom.args.clone())?;
        }
    }
    i.extend(&rels)
}

/// `T″`: positive occurrences of defined symbols read `i`, negative and
/// open occurrences read `j`; open symbols are copied from `j`.
pub fn t_pp(g: &GroundRuleSet, i: &Structure, j: &Structure) -> Result<Structure> {
    let mut rels: BTreeMap<String, Relation> = BTreeMap::new();
    for (name, arity) in g.defined_predicates() {
        rels.insert(name.clone(), Relation::empty(*arity));
    }
    for (atom, body) in g.bodies().take(g.n_defined()) {
        if g.eval_body_pair(body, i, j)? {
            rels.get_mut(&atom.pred).expect("defined").insert(atom.args.clone())?;
        }
    }
    j.extend(&rels)
}

/// The stable operator: the least fixpoint of `t_pp(·, j)` over extensions
/// of `j`'s open part.
pub fn stable(g: &GroundRuleSet, j: &Structure) -> Result<Structure> {
    let solver = GroundSolver::new(g, j)?;
    let jm = solver.mask_of(j)?;
    Ok(solver.structure_of(&solver.stable(&jm)))
}

/// The alternating fixpoint over extensions of the open structure `i_o`,
/// yielding the well-founded bounds.
pub fn well_founded_pair(g: &GroundRuleSet, i_o: &Structure, trace: bool) -> Result<WfPair> {
    let solver = GroundSolver::new(g, i_o)?;
    let (lb, ub, stages) = solver.pair_with_trace(trace);
    Ok(WfPair {
        lb: solver.structure_of(&lb),
        ub: solver.structure_of(&ub),
        trace: trace.then(|| {
            stages
                .into_iter()
                .map(|(i, j)| (solver.structure_of(&i), solver.structure_of(&j)))
                .collect()
        }),
    })
}

/// Kleene iteration of a monotone operator from the lattice bottom. The
/// monotonicity precondition is unchecked, but a non-ascending step is
/// detected and reported.
pub fn lfp_monotone(
    op: impl Fn(&Structure) -> Result<Structure>,
    lat: &ExtensionLattice,
) -> Result<Structure> {
    let mut x = lat.bottom();
    loop {
        let next = op(&x)?;
        if next == x {
            return Ok(x);
        }
        if !x.leq(&next) {
            return Err(Error::NonMonotoneDetected);
        }
        x = next;
    }
}

fn grounding_for(def: &Definition, i_o: &Structure) -> Result<(GroundRuleSet, Structure)> {
    let defined: Vec<String> = def.defined_symbols().into_iter().collect();
    let base = i_o.without_preds(defined.iter().map(|s| s.as_str()));
    let g = ground_definition(def, &base, GroundingMode::FoldOpens, &Budget::default())?;
    Ok((g, base))
}

/// `τ_Δ^o`-predicates of the ambient vocabulary left uninterpreted by the
/// given structure.
fn missing_opens(def: &Definition, i_o: &Structure) -> Result<Vec<(String, usize)>> {
    let vocab: Vocabulary = i_o.vocab().union(&inferred_vocab(def)?)?;
    let defined = def.defined_symbols();
    Ok(vocab
        .predicates()
        .filter(|(n, _)| !defined.contains(*n) && i_o.rel(n).is_none())
        .map(|(n, a)| (n.to_string(), a))
        .collect())
}

/// Compute the well-founded pair of `def` over the open structure `i_o`
/// (which must interpret every open predicate occurring in the rules).
pub fn well_founded(def: &Definition, i_o: &Structure, trace: bool) -> Result<WfPair> {
    let (g, base) = grounding_for(def, i_o)?;
    well_founded_pair(&g, &base, trace)
}

/// Totality of `def` in `i_o`. When `i_o` interprets only part of the open
/// vocabulary, totality quantifies over every completion, enumerated
/// within the budget.
pub fn is_total(def: &Definition, i_o: &Structure, budget: &Budget) -> Result<bool> {
    let missing = missing_opens(def, i_o)?;
    if missing.is_empty() {
        return Ok(well_founded(def, i_o, false)?.total());
    }
    let defined: Vec<String> = def.defined_symbols().into_iter().collect();
    let base = i_o.without_preds(defined.iter().map(|s| s.as_str()));
    let g = ground_definition(def, &base, GroundingMode::FoldOpens, budget)?;
    let mut vocab = base.vocab();
    for (n, a) in missing {
        vocab.add_predicate(n, a)?;
    }
    let lat = ExtensionLattice::new(base, vocab)?;
    for completion in lat.enumerate(budget.candidates)? {
        let solver = GroundSolver::new(&g, &completion)?;
        let (lb, ub) = solver.pair();
        if lb != ub {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The defined extension of `i_o`: the well-founded model when the
/// definition is total, and an error carrying the diagnostic pair when it
/// is not.
pub fn extension(def: &Definition, i_o: &Structure) -> Result<Structure> {
    let missing = missing_opens(def, i_o)?;
    if let Some((name, _)) = missing.first() {
        return Err(Error::FreeSymbolUninterpreted(name.clone()));
    }
    let pair = well_founded(def, i_o, false)?;
    if pair.total() {
        Ok(pair.lb)
    } else {
        Err(Error::NotTotal(Box::new(pair)))
    }
}

/// `I ⊨ Δ`: the definition is total in `I`'s open part and the
/// well-founded model is `I` itself.
pub fn satisfies_definition(i: &Structure, def: &Definition) -> Result<bool> {
    for sym in crate::syntax::definition_free_symbols(def) {
        if !i.interprets(&sym) {
            return Err(Error::FreeSymbolUninterpreted(sym));
        }
    }
    let pair = well_founded(def, i, false)?;
    Ok(pair.total() && pair.lb == *i)
}

/// The inflationary fixpoint of `φ(params, X)`: iterate
/// `R ↦ R ∪ {ā | I[X:R] ⊨ φ[ā]}` from the empty relation.
pub fn inflationary_fixpoint(
    phi: &Formula,
    params: &[String],
    x_pred: &str,
    i: &Structure,
    budget: &Budget,
) -> Result<Relation> {
    let arity = params.len();
    let mut current = Relation::empty(arity);
    loop {
        let mut with_x = BTreeMap::new();
        with_x.insert(x_pred.to_string(), current.clone());
        let base = i.without_preds([x_pred]).extend(&with_x)?;
        let mut next = current.clone();
        for tuple in i.domain().tuples(arity) {
            if next.contains(&tuple) {
                continue;
            }
            let bindings: Vec<(String, Elem)> = params
                .iter()
                .cloned()
                .zip(tuple.iter().copied())
                .collect();
            if checker::satisfies_with_objs(&base, phi, &bindings, budget)? {
                next.insert(tuple)?;
            }
        }
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{Domain, FuncInterp};
    use crate::syntax::parse_theory;

    pub(crate) fn chain(n: usize) -> Structure {
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

    fn def_of(text: &str) -> Definition {
        parse_theory(text).unwrap().definitions()[0].clone()
    }

    fn delta0() -> (GroundRuleSet, Structure) {
        let def = def_of("pred P/0. pred Q/0.\n{ P <- true. Q <- ~P. Q <- Q. }.");
        let base = Structure::new(Domain::new(["u"]).unwrap());
        let g = ground_definition(&def, &base, GroundingMode::FoldOpens, &Budget::default()).unwrap();
        (g, base)
    }

    fn props(base: &Structure, p: bool, q: bool) -> Structure {
        base.clone()
            .with_rel("P", Relation::truth(p))
            .unwrap()
            .with_rel("Q", Relation::truth(q))
            .unwrap()
    }

    #[test]
    fn gamma_iterates_to_the_wrong_fixpoint_on_delta0() {
        // iterating Γ from the empty structure hits {P,Q} immediately
        let (g, base) = delta0();
        let empty = props(&base, false, false);
        let step1 = gamma(&g, &empty).unwrap();
        assert_eq!(step1, props(&base, true, true));
        let step2 = gamma(&g, &step1).unwrap();
        assert_eq!(step2, step1);
    }

    #[test]
    fn stable_trace_on_delta0() {
        let (g, base) = delta0();
        let s1 = stable(&g, &props(&base, false, false)).unwrap();
        assert_eq!(s1, props(&base, true, true));
        let s2 = stable(&g, &s1).unwrap();
        assert_eq!(s2, props(&base, true, false));
        let s3 = stable(&g, &s2).unwrap();
        assert_eq!(s3, s2);
    }

    #[test]
    fn well_founded_pair_of_delta0() {
        let (g, base) = delta0();
        let pair = well_founded_pair(&g, &base, true).unwrap();
        assert!(pair.total());
        assert_eq!(pair.lb, props(&base, true, false));
        let trace = pair.trace.unwrap();
        assert_eq!(trace[0], (props(&base, false, false), props(&base, true, true)));
        assert_eq!(trace.last().unwrap(), &(props(&base, true, false), props(&base, true, false)));
    }

    #[test]
    fn self_negation_is_not_total() {
        let def = def_of("pred P/0.\n{ P <- ~P. }.");
        let base = Structure::new(Domain::new(["u"]).unwrap());
        let pair = well_founded(&def, &base, false).unwrap();
        assert!(!pair.total());
        assert!(!pair.lb.holds("P", &[]).unwrap());
        assert!(pair.ub.holds("P", &[]).unwrap());
        assert_eq!(pair.undefined_atoms(), vec![GroundAtom::new("P", vec![])]);
    }

    #[test]
    fn even_on_two_cycle() {
        // domain {0,1}, s(0)=1, s(1)=1: lb E={0}, ub E={0,1}
        let def = def_of("pred E/1. func s/1. const 0.\n{ E(x) <- x = 0. E(s(x)) <- ~E(x). }.");
        let base = chain(2);
        let pair = well_founded(&def, &base, false).unwrap();
        assert!(!pair.total());
        assert!(pair.lb.holds("E", &[Elem(0)]).unwrap());
        assert!(!pair.lb.holds("E", &[Elem(1)]).unwrap());
        assert!(pair.ub.holds("E", &[Elem(1)]).unwrap());
    }

    #[test]
    fn gamma_of_even_from_empty_is_everything() {
        let def = def_of("pred E/1. func s/1. const 0.\n{ E(x) <- x = 0. E(s(x)) <- ~E(x). }.");
        let base = chain(3);
        let g = ground_definition(&def, &base, GroundingMode::FoldOpens, &Budget::default()).unwrap();
        let empty = base.clone().with_rel("E", Relation::empty(1)).unwrap();
        let step = gamma(&g, &empty).unwrap();
        assert_eq!(step.rel("E").unwrap().len(), 3);
    }

    #[test]
    fn tpp_equals_gamma_on_diagonal_and_is_order_correct() {
        let (g, base) = delta0();
        let all: Vec<Structure> = (0..4).map(|k| props(&base, k & 1 != 0, k & 2 != 0)).collect();
        for i in &all {
            assert_eq!(t_pp(&g, i, i).unwrap(), gamma(&g, i).unwrap());
        }
        // monotone in the first argument, anti-monotone in the second
        for i in &all {
            for i2 in &all {
                for j in &all {
                    for j2 in &all {
                        if i.leq(i2) && j2.leq(j) {
                            let a = t_pp(&g, i, j).unwrap();
                            let b = t_pp(&g, i2, j2).unwrap();
                            assert!(a.leq(&b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tpp_of_purely_negative_definition_ignores_first_argument() {
        // the even rules have no positive defined occurrence, so the pair
        // operator collapses to gamma of its second argument
        let def = def_of("pred E/1. func s/1. const 0.\n{ E(x) <- x = 0. E(s(x)) <- ~E(x). }.");
        let base = chain(3);
        let g = ground_definition(&def, &base, GroundingMode::FoldOpens, &Budget::default()).unwrap();
        let with = |bits: u32| {
            let tuples = (0..3).filter(|i| bits & (1 << i) != 0).map(|i| vec![Elem(i)]);
            base.clone().with_rel("E", Relation::from_tuples(1, tuples).unwrap()).unwrap()
        };
        for i in 0..8u32 {
            for j in 0..8u32 {
                assert_eq!(
                    t_pp(&g, &with(i), &with(j)).unwrap(),
                    gamma(&g, &with(j)).unwrap()
                );
            }
        }
    }

    #[test]
    fn inflationary_edge_cases() {
        let base = chain(4);
        let budget = Budget::default();
        // a false body never derives anything
        let none =
            inflationary_fixpoint(&Formula::False, &["x".to_string()], "E", &base, &budget)
                .unwrap();
        assert!(none.is_empty());

        // a positive body reaches exactly the least fixpoint
        let t = parse_theory("pred E/1. func s/1. const 0. const x.").unwrap();
        let body =
            crate::syntax::parse_formula("x = 0 | ?y: (x = s(y) & E(y))", &t.vocab).unwrap();
        let inflated =
            inflationary_fixpoint(&body, &["x".to_string()], "E", &base, &budget).unwrap();
        assert_eq!(inflated, Relation::full(1, base.domain()));
        let def = def_of(
            "pred E/1. func s/1. const 0.\n{ E(x) <- x = 0. E(s(x)) <- E(x). }.",
        );
        let lfp = extension(&def, &base).unwrap();
        assert_eq!(lfp.rel("E").unwrap(), &inflated);
    }

    #[test]
    fn positive_definitions_are_always_total() {
        let def = def_of(
            "pred E/1. pred O/1. func s/1. const 0.\n\
             { E(x) <- x = 0. E(s(x)) <- O(x). O(s(x)) <- E(x). }.",
        );
        for n in 1..=5 {
            assert!(is_total(&def, &chain(n), &Budget::default()).unwrap());
        }
    }

    #[test]
    fn stable_is_anti_monotone_and_pair_oscillates() {
        let (g, base) = delta0();
        let solver = GroundSolver::new(&g, &base).unwrap();
        let n = solver.n_atoms();
        for a in 0..(1u64 << n) {
            for b in 0..(1u64 << n) {
                let ma = AtomMask::from_bits(n, a);
                let mb = AtomMask::from_bits(n, b);
                if ma.is_subset(&mb) {
                    assert!(solver.stable(&mb).is_subset(&solver.stable(&ma)));
                }
            }
        }
        let (lb, ub) = solver.pair();
        assert_eq!(solver.stable(&lb), ub);
        assert_eq!(solver.stable(&ub), lb);
        // maximality among oscillating pairs
        for a in 0..(1u64 << n) {
            for b in 0..(1u64 << n) {
                let x = AtomMask::from_bits(n, a);
                let y = AtomMask::from_bits(n, b);
                if solver.stable(&x) == y && solver.stable(&y) == x {
                    assert!(lb.is_subset(&x));
                    assert!(y.is_subset(&ub));
                }
            }
        }
    }

    #[test]
    fn lfp_of_transitive_closure_matches_warshall() {
        let def = def_of(
            "pred T/2. pred G/2.\n{ T(x,y) <- G(x,y). T(x,y) <- ?z: (T(x,z) & T(z,y)). }.",
        );
        let domain = Domain::new(["a", "b", "c"]).unwrap();
        let base = Structure::new(domain.clone())
            .with_rel(
                "G",
                Relation::from_tuples(2, [vec![Elem(0), Elem(1)], vec![Elem(1), Elem(2)]]).unwrap(),
            )
            .unwrap();
        let g = ground_definition(&def, &base, GroundingMode::FoldOpens, &Budget::default()).unwrap();
        let mut vocab = base.vocab();
        vocab.add_predicate("T", 2).unwrap();
        let lat = ExtensionLattice::new(base.clone(), vocab).unwrap();
        let closure = lfp_monotone(|s| gamma(&g, s), &lat).unwrap();
        let expected =
            Relation::from_tuples(2, [vec![Elem(0), Elem(1)], vec![Elem(1), Elem(2)], vec![Elem(0), Elem(2)]])
                .unwrap();
        assert_eq!(closure.rel("T").unwrap(), &expected);
        // and it agrees with the well-founded extension of a positive definition
        let ext = extension(&def, &base).unwrap();
        assert_eq!(ext.rel("T").unwrap(), &expected);
    }

    #[test]
    fn lfp_constant_and_identity() {
        let base = Structure::new(Domain::new(["u"]).unwrap());
        let mut vocab = base.vocab();
        vocab.add_predicate("P", 0).unwrap();
        let lat = ExtensionLattice::new(base.clone(), vocab).unwrap();
        let constant = lat.top();
        assert_eq!(lfp_monotone(|_| Ok(constant.clone()), &lat).unwrap(), constant);
        assert_eq!(lfp_monotone(|s| Ok(s.clone()), &lat).unwrap(), lat.bottom());
    }

    #[test]
    fn lfp_detects_non_monotone_steps() {
        let base = Structure::new(Domain::new(["u"]).unwrap());
        let mut vocab = base.vocab();
        vocab.add_predicate("P", 0).unwrap();
        let lat = ExtensionLattice::new(base.clone(), vocab).unwrap();
        // alternates between top and bottom
        let flip = |s: &Structure| {
            Ok(if s.holds("P", &[]).unwrap() {
                s.extend(&BTreeMap::from([("P".to_string(), Relation::truth(false))])).unwrap()
            } else {
                s.extend(&BTreeMap::from([("P".to_string(), Relation::truth(true))])).unwrap()
            })
        };
        assert!(matches!(lfp_monotone(flip, &lat), Err(Error::NonMonotoneDetected)));
    }

    #[test]
    fn totality_quantifies_over_completions() {
        // { P <- ~R } with R open: total in every completion
        let def = def_of("pred P/0. pred R/0.\n{ P <- ~R. }.");
        let base = Structure::new(Domain::new(["u"]).unwrap());
        assert!(is_total(&def, &base, &Budget::default()).unwrap());
        // extension needs the completion
        assert!(matches!(
            extension(&def, &base),
            Err(Error::FreeSymbolUninterpreted(ref s)) if s == "R"
        ));
    }

    #[test]
    fn satisfies_definition_examples() {
        let (_, base) = delta0();
        let def = def_of("pred P/0. pred Q/0.\n{ P <- true. Q <- ~P. Q <- Q. }.");
        assert!(satisfies_definition(&props(&base, true, false), &def).unwrap());
        assert!(!satisfies_definition(&props(&base, false, false), &def).unwrap());
        assert!(!satisfies_definition(&props(&base, true, true), &def).unwrap());

        let pq = def_of("pred P/0. pred Q/0.\n{ P <- Q. Q <- P. }.");
        assert!(satisfies_definition(&props(&base, false, false), &pq).unwrap());
        assert!(!satisfies_definition(&props(&base, true, true), &pq).unwrap());

        let neg = def_of("pred P/0.\n{ P <- ~P. }.");
        let u = Structure::new(Domain::new(["u"]).unwrap());
        for p in [false, true] {
            let s = u.clone().with_rel("P", Relation::truth(p)).unwrap();
            assert!(!satisfies_definition(&s, &neg).unwrap());
        }
    }
}
