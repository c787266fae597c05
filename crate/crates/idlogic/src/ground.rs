//! Grounding: compile a definition over a finite structure into one
//! quantifier-free boolean body per defined domain atom, and derive the
//! dependency graph between domain atoms that underlies the modularity
//! certificates.
//!
//! Quantifiers expand into conjunctions/disjunctions over the domain in the
//! fixed element order. Equalities and atoms interpreted by the base fold
//! to constants; defined atoms stay symbolic, tagged with the polarity of
//! the occurrence — the ground image of the negative-occurrence renaming.
//! Beyond true/false absorption no simplification is applied, so grounded
//! bodies stay auditable.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::structure::{Domain, Elem, GroundAtom, Structure, Vocabulary};
use crate::syntax::{
    inferred_vocab, single_rule_form, BinderKind, Definition, Formula, Sign, Term,
};
use crate::Budget;

/// Index into the atom table of a [`GroundRuleSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A quantifier-free boolean body over ground-atom leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroundBody {
    True,
    False,
    Leaf { atom: AtomId, sign: Sign, defined: bool },
    Not(Box<GroundBody>),
    And(Vec<GroundBody>),
    Or(Vec<GroundBody>),
}

impl GroundBody {
    fn not(b: GroundBody) -> GroundBody {
        match b {
            GroundBody::True => GroundBody::False,
            GroundBody::False => GroundBody::True,
            other => GroundBody::Not(Box::new(other)),
        }
    }

    fn and(parts: Vec<GroundBody>) -> GroundBody {
        let mut kept = Vec::new();
        for p in parts {
            match p {
                GroundBody::True => {}
                GroundBody::False => return GroundBody::False,
                other => kept.push(other),
            }
        }
        match kept.len() {
            0 => GroundBody::True,
            1 => kept.pop().unwrap(),
            _ => GroundBody::And(kept),
        }
    }

    fn or(parts: Vec<GroundBody>) -> GroundBody {
        let mut kept = Vec::new();
        for p in parts {
            match p {
                GroundBody::False => {}
                GroundBody::True => return GroundBody::True,
                other => kept.push(other),
            }
        }
        match kept.len() {
            0 => GroundBody::False,
            1 => kept.pop().unwrap(),
            _ => GroundBody::Or(kept),
        }
    }

    /// Every leaf, with its tag.
    pub fn leaves(&self, visit: &mut impl FnMut(AtomId, Sign, bool)) {
        match self {
            GroundBody::True | GroundBody::False => {}
            GroundBody::Leaf { atom, sign, defined } => visit(*atom, *sign, *defined),
            GroundBody::Not(b) => b.leaves(visit),
            GroundBody::And(parts) | GroundBody::Or(parts) => {
                parts.iter().for_each(|p| p.leaves(visit))
            }
        }
    }
}

/// Whether open-predicate atoms interpreted by the base are folded to
/// constants or kept as symbolic leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundingMode {
    /// Fold every open atom the base interprets; leave the rest symbolic.
    FoldOpens,
    /// Keep all open-predicate atoms symbolic (parametric grounding).
    SymbolicOpens,
}

/// The quantifier-free compilation of a definition over a base structure:
/// one boolean body per defined domain atom.
#[derive(Debug, Clone)]
pub struct GroundRuleSet {
    base: Structure,
    vocab: Vocabulary,
    defined_preds: Vec<(String, usize)>,
    open_preds: Vec<(String, usize)>,
    atoms: Vec<GroundAtom>,
    index: BTreeMap<GroundAtom, AtomId>,
    n_defined: usize,
    bodies: Vec<GroundBody>,
}

pub fn ground_definition(
    def: &Definition,
    base: &Structure,
    mode: GroundingMode,
    budget: &Budget,
) -> Result<GroundRuleSet> {
    let vocab = base.vocab().union(&inferred_vocab(def)?)?;
    for (name, _) in vocab.functions() {
        if base.func(name).is_none() {
            return Err(Error::MissingFunctionInterpretation(name.to_string()));
        }
    }

    let defined = def.defined_symbols();
    let mut defined_preds: Vec<(String, usize)> = Vec::new();
    let mut open_preds: Vec<(String, usize)> = Vec::new();
    for (name, arity) in vocab.predicates() {
        if defined.contains(name) {
            defined_preds.push((name.to_string(), arity));
        } else {
            open_preds.push((name.to_string(), arity));
        }
    }

    let domain = base.domain().clone();
    let size = domain.size();
    let mut total: usize = 0;
    for (_, arity) in &defined_preds {
        total = total.saturating_add(size.checked_pow(*arity as u32).unwrap_or(usize::MAX));
        if total > budget.atoms {
            return Err(Error::DomainTooLarge { atoms: total, budget: budget.atoms });
        }
    }

    let mut g = GroundRuleSet {
        base: base.clone(),
        vocab,
        defined_preds: defined_preds.clone(),
        open_preds,
        atoms: Vec::new(),
        index: BTreeMap::new(),
        n_defined: 0,
        bodies: Vec::new(),
    };
    for (name, arity) in &defined_preds {
        for tuple in domain.tuples(*arity) {
            g.intern(GroundAtom::new(name.clone(), tuple));
        }
    }
    g.n_defined = g.atoms.len();

    let normal = single_rule_form(def);
    let mut bodies = vec![GroundBody::True; g.n_defined];
    for rule in normal.rules() {
        for tuple in domain.tuples(rule.head_args.len()) {
            let mut env: BTreeMap<String, Elem> = BTreeMap::new();
            for (v, e) in rule.vars.iter().zip(tuple.iter()) {
                env.insert(v.clone(), *e);
            }
            let body = g.lower(&rule.body, &mut env, Sign::Pos, mode)?;
            let id = g.index[&GroundAtom::new(rule.head_pred.clone(), tuple)];
            bodies[id.index()] = body;
        }
    }
    g.bodies = bodies;
    Ok(g)
}

impl GroundRuleSet {
    fn intern(&mut self, atom: GroundAtom) -> AtomId {
        if let Some(id) = self.index.get(&atom) {
            return *id;
        }
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(atom.clone());
        self.index.insert(atom, id);
        id
    }

    fn eval_term(&self, t: &Term, env: &BTreeMap<String, Elem>) -> Result<Elem> {
        match t {
            Term::Var(v) => match env.get(v) {
                Some(e) => Ok(*e),
                None => self.base.apply_func(v, &[]),
            },
            Term::Apply(f, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval_term(a, env)?);
                }
                self.base.apply_func(f, &vals)
            }
        }
    }

    fn lower(
        &mut self,
        f: &Formula,
        env: &mut BTreeMap<String, Elem>,
        sign: Sign,
        mode: GroundingMode,
    ) -> Result<GroundBody> {
        Ok(match f {
            Formula::True => GroundBody::True,
            Formula::False => GroundBody::False,
            Formula::Eq(l, r) => {
                if self.eval_term(l, env)? == self.eval_term(r, env)? {
                    GroundBody::True
                } else {
                    GroundBody::False
                }
            }
            Formula::Atom(pred, args) => {
                let mut tuple = Vec::with_capacity(args.len());
                for a in args {
                    tuple.push(self.eval_term(a, env)?);
                }
                let is_defined = self.defined_preds.iter().any(|(n, _)| n == pred);
                if is_defined {
                    let id = self.index[&GroundAtom::new(pred.clone(), tuple)];
                    GroundBody::Leaf { atom: id, sign, defined: true }
                } else if mode == GroundingMode::FoldOpens && self.base.rel(pred).is_some() {
                    if self.base.holds(pred, &tuple)? {
                        GroundBody::True
                    } else {
                        GroundBody::False
                    }
                } else {
                    let id = self.intern(GroundAtom::new(pred.clone(), tuple));
                    GroundBody::Leaf { atom: id, sign, defined: false }
                }
            }
            Formula::Not(g) => GroundBody::not(self.lower(g, env, sign.flip(), mode)?),
            Formula::And(l, r) => GroundBody::and(vec![
                self.lower(l, env, sign, mode)?,
                self.lower(r, env, sign, mode)?,
            ]),
            Formula::Or(l, r) => GroundBody::or(vec![
                self.lower(l, env, sign, mode)?,
                self.lower(r, env, sign, mode)?,
            ]),
            Formula::Implies(l, r) => GroundBody::or(vec![
                GroundBody::not(self.lower(l, env, sign.flip(), mode)?),
                self.lower(r, env, sign, mode)?,
            ]),
            Formula::Iff(l, r) => {
                let fwd = Formula::implies((**l).clone(), (**r).clone());
                let bwd = Formula::implies((**r).clone(), (**l).clone());
                GroundBody::and(vec![
                    self.lower(&fwd, env, sign, mode)?,
                    self.lower(&bwd, env, sign, mode)?,
                ])
            }
            Formula::Exists(b, g) if b.kind == BinderKind::Object => {
                let mut parts = Vec::new();
                let shadowed = env.remove(&b.name);
                for e in self.base.domain().elems() {
                    env.insert(b.name.clone(), e);
                    let part = self.lower(g, env, sign, mode);
                    env.remove(&b.name);
                    parts.push(part?);
                    if parts.last() == Some(&GroundBody::True) {
                        break;
                    }
                }
                if let Some(e) = shadowed {
                    env.insert(b.name.clone(), e);
                }
                GroundBody::or(parts)
            }
            Formula::Forall(b, g) if b.kind == BinderKind::Object => {
                let mut parts = Vec::new();
                let shadowed = env.remove(&b.name);
                for e in self.base.domain().elems() {
                    env.insert(b.name.clone(), e);
                    let part = self.lower(g, env, sign, mode);
                    env.remove(&b.name);
                    parts.push(part?);
                    if parts.last() == Some(&GroundBody::False) {
                        break;
                    }
                }
                if let Some(e) = shadowed {
                    env.insert(b.name.clone(), e);
                }
                GroundBody::and(parts)
            }
            Formula::Exists(..) | Formula::Forall(..) | Formula::Def(_) => {
                return Err(Error::Syntax {
                    line: 0,
                    col: 0,
                    expected: "a first-order rule body".into(),
                })
            }
        })
    }

    pub fn base(&self) -> &Structure {
        &self.base
    }

    pub fn domain(&self) -> &Arc<Domain> {
        self.base.domain()
    }

    /// The ambient vocabulary: the base's symbols joined with everything
    /// the definition mentions.
    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn defined_predicates(&self) -> &[(String, usize)] {
        &self.defined_preds
    }

    pub fn open_predicates(&self) -> &[(String, usize)] {
        &self.open_preds
    }

    /// The defined domain atoms, in the fixed order (predicate name, then
    /// argument tuple).
    pub fn defined_atoms(&self) -> &[GroundAtom] {
        &self.atoms[..self.n_defined]
    }

    pub fn atom(&self, id: AtomId) -> &GroundAtom {
        &self.atoms[id.index()]
    }

    pub fn atom_id(&self, atom: &GroundAtom) -> Option<AtomId> {
        self.index.get(atom).copied()
    }

    pub fn body(&self, id: AtomId) -> &GroundBody {
        &self.bodies[id.index()]
    }

    pub fn bodies(&self) -> impl Iterator<Item = (&GroundAtom, &GroundBody)> {
        self.atoms.iter().zip(self.bodies.iter())
    }

    pub fn n_defined(&self) -> usize {
        self.n_defined
    }

    /// Evaluate a body with every leaf read from `i`.
    pub fn eval_body(&self, body: &GroundBody, i: &Structure) -> Result<bool> {
        if !i.same_domain(&self.base) {
            return Err(Error::DomainMismatch);
        }
        self.eval_in(body, &mut |atom| i.holds_atom(atom))
    }

    /// Evaluate a body reading positive defined leaves from `i`, negative
    /// defined leaves and open leaves from `j`.
    pub fn eval_body_pair(&self, body: &GroundBody, i: &Structure, j: &Structure) -> Result<bool> {
        if !i.same_domain(&self.base) || !j.same_domain(&self.base) {
            return Err(Error::DomainMismatch);
        }
        self.eval_pair_in(body, i, j)
    }

    fn eval_in(
        &self,
        body: &GroundBody,
        lookup: &mut impl FnMut(&GroundAtom) -> Result<bool>,
    ) -> Result<bool> {
        Ok(match body {
            GroundBody::True => true,
            GroundBody::False => false,
            GroundBody::Leaf { atom, .. } => lookup(&self.atoms[atom.index()])?,
            GroundBody::Not(b) => !self.eval_in(b, lookup)?,
            GroundBody::And(parts) => {
                for p in parts {
                    if !self.eval_in(p, lookup)? {
                        return Ok(false);
                    }
                }
                true
            }
            GroundBody::Or(parts) => {
                for p in parts {
                    if self.eval_in(p, lookup)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    fn eval_pair_in(&self, body: &GroundBody, i: &Structure, j: &Structure) -> Result<bool> {
        Ok(match body {
            GroundBody::True => true,
            GroundBody::False => false,
            GroundBody::Leaf { atom, sign, defined } => {
                let target = if *defined && *sign == Sign::Pos { i } else { j };
                target.holds_atom(&self.atoms[atom.index()])?
            }
            GroundBody::Not(b) => !self.eval_pair_in(b, i, j)?,
            GroundBody::And(parts) => {
                for p in parts {
                    if !self.eval_pair_in(p, i, j)? {
                        return Ok(false);
                    }
                }
                true
            }
            GroundBody::Or(parts) => {
                for p in parts {
                    if self.eval_pair_in(p, i, j)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// One line per defined atom: `P[a,b] := <body>` with `+`/`-` polarity
    /// marks on defined leaves.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (atom, body) in self.bodies() {
            let _ = writeln!(out, "{} := {}", atom.display(self.domain()), self.show(body));
        }
        out
    }

    fn show(&self, body: &GroundBody) -> String {
        match body {
            GroundBody::True => "true".into(),
            GroundBody::False => "false".into(),
            GroundBody::Leaf { atom, sign, defined } => {
                let name = self.atoms[atom.index()].display(self.domain());
                if *defined {
                    match sign {
                        Sign::Pos => format!("+{name}"),
                        Sign::Neg => format!("-{name}"),
                    }
                } else {
                    name
                }
            }
            GroundBody::Not(b) => format!("~{}", self.show_nested(b)),
            GroundBody::And(parts) => parts
                .iter()
                .map(|p| self.show_nested(p))
                .collect::<Vec<_>>()
                .join(" & "),
            GroundBody::Or(parts) => parts
                .iter()
                .map(|p| self.show_nested(p))
                .collect::<Vec<_>>()
                .join(" | "),
        }
    }

    fn show_nested(&self, body: &GroundBody) -> String {
        match body {
            GroundBody::And(_) | GroundBody::Or(_) => format!("({})", self.show(body)),
            _ => self.show(body),
        }
    }

    /// The dependency graph: an edge `Q[b̄] → P[ā]` with a polarity for
    /// every leaf `Q[b̄]` of the body of `P[ā]`. Atoms folded to constants
    /// during grounding contribute no edges.
    pub fn dependency_graph(&self) -> DependencyGraph {
        let domain = self.domain().clone();
        let mut nodes = Vec::new();
        let mut index = BTreeMap::new();
        let mut defined_flags = Vec::new();
        for (preds, defined) in [(&self.defined_preds, true), (&self.open_preds, false)] {
            for (name, arity) in preds.iter() {
                for tuple in domain.tuples(*arity) {
                    let atom = GroundAtom::new(name.clone(), tuple);
                    index.insert(atom.clone(), nodes.len());
                    nodes.push(atom);
                    defined_flags.push(defined);
                }
            }
        }
        let mut edges = std::collections::BTreeSet::new();
        for (head_idx, body) in self.bodies.iter().enumerate() {
            let head = &self.atoms[head_idx];
            let to = index[head];
            body.leaves(&mut |leaf, sign, _| {
                let from = index[&self.atoms[leaf.index()]];
                edges.insert((from, to, sign));
            });
        }
        DependencyGraph { domain, nodes, index, defined: defined_flags, edges }
    }
}

/// Edges between domain atoms: `(from, to, polarity)` means the body of
/// `to` has a leaf `from` at that polarity.
#[derive(Debug, Clone)]
pub struct DependencyGraph {
    domain: Arc<Domain>,
    nodes: Vec<GroundAtom>,
    index: BTreeMap<GroundAtom, usize>,
    defined: Vec<bool>,
    edges: std::collections::BTreeSet<(usize, usize, Sign)>,
}

impl DependencyGraph {
    pub fn nodes(&self) -> &[GroundAtom] {
        &self.nodes
    }

    pub fn node_index(&self, atom: &GroundAtom) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn is_defined(&self, node: usize) -> bool {
        self.defined[node]
    }

    pub fn edges(&self) -> impl Iterator<Item = (&GroundAtom, &GroundAtom, Sign)> {
        self.edges.iter().map(|(f, t, s)| (&self.nodes[*f], &self.nodes[*t], *s))
    }

    pub fn has_edge(&self, from: &GroundAtom, to: &GroundAtom) -> bool {
        match (self.index.get(from), self.index.get(to)) {
            (Some(f), Some(t)) => {
                self.edges.contains(&(*f, *t, Sign::Pos)) || self.edges.contains(&(*f, *t, Sign::Neg))
            }
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (f, t, _) in &self.edges {
            if out[*f].last() != Some(t) {
                out[*f].push(*t);
            }
        }
        out
    }

    pub fn has_self_loop(&self, node: usize) -> bool {
        self.edges.contains(&(node, node, Sign::Pos)) || self.edges.contains(&(node, node, Sign::Neg))
    }

    /// DOT text for the edge list, polarity as an edge label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dependencies {\n");
        for (f, t, s) in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.nodes[*f].display(&self.domain),
                self.nodes[*t].display(&self.domain),
                match s {
                    Sign::Pos => "pos",
                    Sign::Neg => "neg",
                }
            );
        }
        out.push_str("}\n");
        out
    }

    /// Strongly connected components with the induced topological order:
    /// components listed dependencies-first, each flagged cyclic when it
    /// has two or more atoms or a self-edge.
    pub fn scc_preorder(&self) -> SccPreorder {
        let n = self.nodes.len();
        let succ = self.successors();

        // iterative Tarjan
        let mut comp_of = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut disc = vec![usize::MAX; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_disc = 0usize;
        let mut comps: Vec<Vec<usize>> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&mut (v, ref mut ei)) = call.last_mut() {
                if *ei == 0 {
                    disc[v] = next_disc;
                    low[v] = next_disc;
                    next_disc += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                if let Some(&w) = succ[v].get(*ei) {
                    *ei += 1;
                    if disc[w] == usize::MAX {
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    if low[v] == disc[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp_of[w] = comps.len();
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                    call.pop();
                    if let Some(&mut (u, _)) = call.last_mut() {
                        low[u] = low[u].min(low[v]);
                    }
                }
            }
        }

        // topological order of the condensation, dependencies first
        let ncomp = comps.len();
        let mut indegree = vec![0usize; ncomp];
        let mut csucc: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); ncomp];
        for (f, t, _) in &self.edges {
            let (cf, ct) = (comp_of[*f], comp_of[*t]);
            if cf != ct && csucc[cf].insert(ct) {
                indegree[ct] += 1;
            }
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..ncomp).filter(|c| indegree[*c] == 0).collect();
        let mut order = Vec::with_capacity(ncomp);
        while let Some(&c) = ready.iter().next() {
            ready.remove(&c);
            order.push(c);
            for &d in &csucc[c] {
                indegree[d] -= 1;
                if indegree[d] == 0 {
                    ready.insert(d);
                }
            }
        }

        let cyclic = comps
            .iter()
            .map(|comp| comp.len() > 1 || comp.iter().any(|&v| self.has_self_loop(v)))
            .collect();

        SccPreorder { comp_of, components: comps, order, cyclic }
    }
}

/// Strongly-connected-component decomposition of a dependency graph. The
/// reachability pre-order it induces is the reflexive-transitive closure of
/// the edge relation.
#[derive(Debug, Clone)]
pub struct SccPreorder {
    /// Node index → component id.
    pub comp_of: Vec<usize>,
    /// Component id → member node indices (sorted).
    pub components: Vec<Vec<usize>>,
    /// Component ids in topological order, dependencies first.
    pub order: Vec<usize>,
    /// Component id → whether it contains a cycle (size ≥ 2 or self-edge).
    pub cyclic: Vec<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{FuncInterp, Relation};
    use crate::syntax::parse_theory;

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

    fn even_def() -> Definition {
        let t = parse_theory("pred E/1. func s/1. const 0.\n{ E(x) <- x = 0. E(s(x)) <- ~E(x). }.")
            .unwrap();
        t.definitions()[0].clone()
    }

    fn delta0() -> Definition {
        let t = parse_theory("pred P/0. pred Q/0.\n{ P <- true. Q <- ~P. Q <- Q. }.").unwrap();
        t.definitions()[0].clone()
    }

    fn ground(def: &Definition, base: &Structure) -> GroundRuleSet {
        ground_definition(def, base, GroundingMode::FoldOpens, &Budget::default()).unwrap()
    }

    #[test]
    fn even_on_chain_3() {
        let g = ground(&even_def(), &chain(3));
        let dump = g.dump();
        assert_eq!(
            dump,
            "E[0] := true\nE[1] := ~-E[0]\nE[2] := ~-E[1] | ~-E[2]\n"
        );
    }

    #[test]
    fn delta0_bodies() {
        let d = Domain::new(["u"]).unwrap();
        let base = Structure::new(d);
        let g = ground(&delta0(), &base);
        assert_eq!(g.dump(), "P := true\nQ := ~-P | +Q\n");
    }

    #[test]
    fn tc_folds_open_graph_facts() {
        let t = parse_theory(
            "pred T/2. pred G/2.\n{ T(x,y) <- G(x,y). T(x,y) <- ?z: (T(x,z) & T(z,y)). }.",
        )
        .unwrap();
        let def = t.definitions()[0].clone();
        let d = Domain::new(["a", "b"]).unwrap();
        let base = Structure::new(d)
            .with_rel("G", Relation::from_tuples(2, [vec![Elem(0), Elem(1)]]).unwrap())
            .unwrap();
        let g = ground(&def, &base);
        // the G(a,b) fact folds to a true disjunct
        let id = g.atom_id(&GroundAtom::new("T", vec![Elem(0), Elem(1)])).unwrap();
        assert_eq!(g.body(id), &GroundBody::True);
    }

    #[test]
    fn eval_body_and_pair() {
        let g = ground(&even_def(), &chain(3));
        let e0 = g.atom_id(&GroundAtom::new("E", vec![Elem(0)])).unwrap();
        let e1 = g.atom_id(&GroundAtom::new("E", vec![Elem(1)])).unwrap();

        let all = chain(3).with_rel("E", Relation::full(1, g.domain())).unwrap();
        let none = chain(3).with_rel("E", Relation::empty(1)).unwrap();

        // body of E[1] is ~E[0]
        assert!(!g.eval_body(g.body(e1), &all).unwrap());
        assert!(g.eval_body(g.body(e1), &none).unwrap());
        assert!(g.eval_body(g.body(e0), &all).unwrap());

        // E[1]'s leaf is negative, so the pair read goes to the second argument
        assert!(!g.eval_body_pair(g.body(e1), &none, &all).unwrap());
        assert!(g.eval_body_pair(g.body(e1), &all, &none).unwrap());
    }

    #[test]
    fn pair_eval_splits_polarities() {
        // body of Q is ~P | Q: the negative P reads the second argument,
        // the positive Q reads the first
        let d = Domain::new(["u"]).unwrap();
        let base = Structure::new(d.clone());
        let g = ground(&delta0(), &base);
        let q = g.atom_id(&GroundAtom::new("Q", vec![])).unwrap();
        let empty = base
            .clone()
            .with_rel("P", Relation::truth(false))
            .unwrap()
            .with_rel("Q", Relation::truth(false))
            .unwrap();
        let full = base
            .clone()
            .with_rel("P", Relation::truth(true))
            .unwrap()
            .with_rel("Q", Relation::truth(true))
            .unwrap();
        // ~P^J | Q^I with I empty, J full: false | false
        assert!(!g.eval_body_pair(g.body(q), &empty, &full).unwrap());
        // with I full, J empty: true | true
        assert!(g.eval_body_pair(g.body(q), &full, &empty).unwrap());
    }

    #[test]
    fn pair_eval_collapses_on_diagonal() {
        let g = ground(&delta0(), &Structure::new(Domain::new(["u"]).unwrap()));
        let d = Domain::new(["u"]).unwrap();
        for p in [false, true] {
            for q in [false, true] {
                let s = Structure::new(d.clone())
                    .with_rel("P", Relation::truth(p))
                    .unwrap()
                    .with_rel("Q", Relation::truth(q))
                    .unwrap();
                for (_, body) in g.bodies() {
                    assert_eq!(
                        g.eval_body_pair(body, &s, &s).unwrap(),
                        g.eval_body(body, &s).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn dependency_edges_of_even() {
        let g = ground(&even_def(), &chain(3));
        let dg = g.dependency_graph();
        let e = |i: u32| GroundAtom::new("E", vec![Elem(i)]);
        assert!(dg.has_edge(&e(0), &e(1)));
        assert!(dg.has_edge(&e(1), &e(2)));
        assert!(dg.has_edge(&e(2), &e(2)));
        assert_eq!(dg.edge_count(), 3);
        let edges: Vec<_> = dg.edges().collect();
        assert!(edges.iter().all(|(_, _, s)| *s == Sign::Neg));
    }

    #[test]
    fn mutual_recursion_is_one_component() {
        let t = parse_theory("pred P/0. pred Q/0.\n{ P <- Q. Q <- P. }.").unwrap();
        let def = t.definitions()[0].clone();
        let g = ground(&def, &Structure::new(Domain::new(["u"]).unwrap()));
        let dg = g.dependency_graph();
        let edges: Vec<_> = dg.edges().collect();
        assert_eq!(edges.len(), 2);
        assert!(edges.iter().all(|(_, _, s)| *s == Sign::Pos));
        let scc = dg.scc_preorder();
        assert_eq!(scc.components.len(), 1);
        assert!(scc.cyclic[0]);
    }

    #[test]
    fn acyclic_chain_order_follows_the_chain() {
        let g = ground(&even_def(), &chain(3));
        let dg = g.dependency_graph();
        let scc = dg.scc_preorder();
        // E[2] has a self-edge, the others do not
        let e2 = dg.node_index(&GroundAtom::new("E", vec![Elem(2)])).unwrap();
        let e0 = dg.node_index(&GroundAtom::new("E", vec![Elem(0)])).unwrap();
        let e1 = dg.node_index(&GroundAtom::new("E", vec![Elem(1)])).unwrap();
        assert!(scc.cyclic[scc.comp_of[e2]]);
        assert!(!scc.cyclic[scc.comp_of[e0]]);
        // dependencies come first in the order
        let pos = |c: usize| scc.order.iter().position(|&x| x == c).unwrap();
        assert!(pos(scc.comp_of[e0]) < pos(scc.comp_of[e1]));
        assert!(pos(scc.comp_of[e1]) < pos(scc.comp_of[e2]));
    }

    #[test]
    fn non_recursive_folded_bodies_have_no_edges() {
        let t = parse_theory("pred P/0. pred R/0.\n{ P <- R. }.").unwrap();
        let def = t.definitions()[0].clone();
        let base = Structure::new(Domain::new(["u"]).unwrap())
            .with_rel("R", Relation::truth(true))
            .unwrap();
        let g = ground(&def, &base);
        assert_eq!(g.dependency_graph().edge_count(), 0);
    }

    #[test]
    fn symbolic_mode_keeps_open_leaves() {
        let t = parse_theory("pred P/0. pred R/0.\n{ P <- R. }.").unwrap();
        let def = t.definitions()[0].clone();
        let base = Structure::new(Domain::new(["u"]).unwrap())
            .with_rel("R", Relation::truth(true))
            .unwrap();
        let g =
            ground_definition(&def, &base, GroundingMode::SymbolicOpens, &Budget::default())
                .unwrap();
        assert_eq!(g.dependency_graph().edge_count(), 1);
    }

    #[test]
    fn atom_budget_is_enforced() {
        let t = parse_theory("pred T/2.\n{ T(x,y) <- T(y,x). }.").unwrap();
        let def = t.definitions()[0].clone();
        let base = Structure::new(Domain::numbered(6));
        let err = ground_definition(&def, &base, GroundingMode::FoldOpens, &Budget::default().with_atoms(10))
            .unwrap_err();
        assert!(matches!(err, Error::DomainTooLarge { atoms: 36, budget: 10 }));
    }
}
