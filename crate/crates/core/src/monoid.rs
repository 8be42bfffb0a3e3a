//! The inverse monoid `S_c` of pairs `(Δ, g)` where `Δ` is a compact
//! subgraph containing `1` and `g`.
//!
//! ```text
//! (Δ, g)(Ξ, h) = ((Δ ∪ gΞ)^c, gh)
//! (Δ, g)⁻¹     = (g⁻¹Δ, g⁻¹)
//! (Δ, g)^m     = ({1, g}^c, g)          (F-inverse mode only)
//! (Δ, g) ≤ (Ξ, h)  iff  g = h and Ξ ⊆ Δ
//! ```
//!
//! An [`Element`] keeps the finite seed it was built from next to the
//! closure result. Arithmetic only touches seeds, so it is exact even when
//! a closure did not stabilize; comparisons need stabilized closures.

use std::collections::BTreeSet;

use crate::closure::{ClosureBudget, ClosureOperator, ClosureResult, Mode, Status};
use crate::error::{Error, Result};
use crate::graphs::{Edge, Subgraph};
use crate::groups::{Group, GroupElem};
use crate::words::{Alphabet, FTerm, Letter, Word};

/// Upper bound on `|E(Γ_X)| + |V(Γ_X)|` for [`MonoidContext::elements`].
pub const MAX_ENUMERATION_BITS: usize = 24;

/// A group, a closure operator on its Cayley graph, and the default
/// budget for computing closures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidContext {
    group: Group,
    closure: ClosureOperator,
    budget: ClosureBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    seed: Subgraph,
    anchor: GroupElem,
    closed: ClosureResult,
}

impl Element {
    pub fn seed(&self) -> &Subgraph {
        &self.seed
    }

    /// The group component `g`, which is also `σ` of the element.
    pub fn anchor(&self) -> &GroupElem {
        &self.anchor
    }

    pub fn sigma(&self) -> &GroupElem {
        &self.anchor
    }

    pub fn closure(&self) -> &ClosureResult {
        &self.closed
    }

    pub fn is_stabilized(&self) -> bool {
        self.closed.is_stabilized()
    }

    /// `Δ`, when the closure is exact.
    pub fn graph(&self) -> Option<&Subgraph> {
        self.closed.closed()
    }

    /// `(Δ, g)`, the value that determines the element.
    pub fn value(&self) -> Result<(&Subgraph, &GroupElem)> {
        self.graph()
            .map(|g| (g, &self.anchor))
            .ok_or(Error::NotStabilized)
    }

    /// Equality in `S_c`; undefined unless both closures stabilized.
    pub fn try_eq(&self, other: &Element) -> Result<bool> {
        Ok(self.value()? == other.value()?)
    }
}

impl MonoidContext {
    pub fn new(group: Group, closure: ClosureOperator, budget: ClosureBudget) -> Result<Self> {
        closure.validate(&group)?;
        Ok(MonoidContext {
            group,
            closure,
            budget,
        })
    }

    /// Munn's model of the free inverse monoid.
    pub fn free_inverse(alphabet: Alphabet) -> Self {
        MonoidContext::margolis_meakin(Group::free(alphabet))
    }

    /// The Margolis–Meakin expansion of `group`.
    pub fn margolis_meakin(group: Group) -> Self {
        MonoidContext {
            group,
            closure: ClosureOperator::IdentityConnected,
            budget: ClosureBudget::default(),
        }
    }

    /// The free F-inverse monoid.
    pub fn free_f_inverse(alphabet: Alphabet) -> Self {
        MonoidContext {
            group: Group::free(alphabet),
            closure: ClosureOperator::IdentityAll,
            budget: ClosureBudget::default(),
        }
    }

    /// The free inverse monoid in the F-inverse signature, where
    /// `w^m = red(w)`.
    pub fn free_inverse_as_f_inverse(alphabet: Alphabet) -> Self {
        MonoidContext {
            group: Group::free(alphabet),
            closure: ClosureOperator::TreeConnect,
            budget: ClosureBudget::default(),
        }
    }

    pub fn with_budget(mut self, budget: ClosureBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn closure(&self) -> &ClosureOperator {
        &self.closure
    }

    pub fn mode(&self) -> Mode {
        self.closure.mode()
    }

    pub fn budget(&self) -> &ClosureBudget {
        &self.budget
    }

    /// Builds `(seed^c, anchor)`; the seed must contain `1` and `anchor`.
    pub fn element(&self, seed: Subgraph, anchor: GroupElem) -> Result<Element> {
        if !self.group.owns(&anchor) {
            return Err(Error::OracleMismatch);
        }
        if !seed.has_vertex(&self.group.identity()) || !seed.has_vertex(&anchor) {
            return Err(Error::ModeMismatch(
                "seed must contain the identity and the anchor".into(),
            ));
        }
        let closed = self.closure.close(&self.group, &seed, &self.budget)?;
        Ok(Element {
            seed,
            anchor,
            closed,
        })
    }

    fn element_from(&self, seed: Subgraph, start: &Subgraph, anchor: GroupElem) -> Result<Element> {
        let closed = self.closure.close(&self.group, start, &self.budget)?;
        Ok(Element {
            seed,
            anchor,
            closed,
        })
    }

    /// `({1}^c, 1)`.
    pub fn identity(&self) -> Element {
        self.eval_word(&Word::empty())
            .expect("the one-vertex graph is a valid seed")
    }

    /// `w_{S_c} = (⟨w̄⟩^c, w_G)`.
    pub fn eval_word(&self, w: &Word) -> Result<Element> {
        let one = self.group.identity();
        let mut seed = Subgraph::new();
        let anchor = seed.add_path(&self.group, &one, w);
        self.element(seed, anchor)
    }

    /// The value of a term; only meaningful in F-inverse mode.
    pub fn eval_term(&self, t: &FTerm) -> Result<Element> {
        if let Some(w) = t.as_word() {
            return self.eval_word(w);
        }
        if self.mode() != Mode::FInverse {
            return Err(Error::ModeMismatch(
                "^m is not in the signature of E-unitary inverse monoids".into(),
            ));
        }
        let one = self.group.identity();
        let mut seed = Subgraph::new();
        let anchor = seed.add_journey(&self.group, &one, t);
        self.element(seed, anchor)
    }

    fn check_owned(&self, a: &Element) -> Result<()> {
        if self.group.owns(&a.anchor) {
            Ok(())
        } else {
            Err(Error::OracleMismatch)
        }
    }

    /// `((Δ ∪ gΞ)^c, gh)`.
    ///
    /// The new seed is the union of seeds. When both closures are exact the
    /// expansion starts from the union of the closed graphs; the fixpoint
    /// is the same.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_owned(a)?;
        self.check_owned(b)?;
        let g = &a.anchor;
        let seed = a.seed.union(&b.seed.translate(&self.group, g));
        let anchor = self.group.mul(g, &b.anchor);
        match (a.graph(), b.graph()) {
            (Some(da), Some(db)) => {
                let start = da.union(&db.translate(&self.group, g));
                self.element_from(seed, &start, anchor)
            }
            _ => self.element_from(seed.clone(), &seed, anchor),
        }
    }

    /// `(g⁻¹Δ, g⁻¹)`. Translation commutes with closure, so the closure
    /// result is translated rather than recomputed.
    pub fn inverse(&self, a: &Element) -> Element {
        let g_inv = self.group.invert(&a.anchor);
        Element {
            seed: a.seed.translate(&self.group, &g_inv),
            closed: ClosureResult {
                graph: a.closed.graph.translate(&self.group, &g_inv),
                status: a.closed.status,
                rounds_used: a.closed.rounds_used,
            },
            anchor: g_inv,
        }
    }

    /// `({1, g}^c, g)`, the greatest element of the σ-class.
    pub fn max_m(&self, a: &Element) -> Result<Element> {
        if self.mode() != Mode::FInverse {
            return Err(Error::ModeMismatch(
                "^m is not in the signature of E-unitary inverse monoids".into(),
            ));
        }
        self.check_owned(a)?;
        let seed = Subgraph::from_vertices([self.group.identity(), a.anchor.clone()]);
        self.element(seed, a.anchor.clone())
    }

    /// The natural partial order: `a ≤ b` iff equal anchors and
    /// `b`'s graph inside `a`'s.
    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        let (da, ga) = a.value()?;
        let (db, gb) = b.value()?;
        Ok(ga == gb && da.contains(db))
    }

    pub fn is_idempotent(&self, a: &Element) -> bool {
        a.anchor == self.group.identity()
    }

    /// `e ∧ f = ((Δ ∪ Ξ)^c, 1)` for idempotents.
    pub fn meet_idempotent(&self, e: &Element, f: &Element) -> Result<Element> {
        if !self.is_idempotent(e) || !self.is_idempotent(f) {
            return Err(Error::NotIdempotent);
        }
        self.multiply(e, f)
    }

    /// `(Δ, g) ↦ (Δ^{c'}, g)` into `target`, whose closure must be coarser.
    ///
    /// Coarseness is checked on this element's seed when both closures
    /// stabilize.
    pub fn canonical_morphism(&self, target: &MonoidContext, a: &Element) -> Result<Element> {
        if self.group != target.group {
            return Err(Error::OracleMismatch);
        }
        if self.mode() != target.mode() {
            return Err(Error::ModeMismatch(
                "canonical morphisms stay within one mode".into(),
            ));
        }
        let image = target.element(a.seed.clone(), a.anchor.clone())?;
        if let (Some(src), Some(dst)) = (a.graph(), image.graph()) {
            if !dst.contains(src) {
                return Err(Error::NotCoarser);
            }
        }
        Ok(image)
    }

    /// Every element of `S_c` for a finite group, sorted by `(Δ, g)`.
    ///
    /// Enumerates all subgraphs of the finite Cayley graph that contain
    /// `1` (connected ones in E-unitary mode) and keeps the closed ones.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let vertices = self.group.elements()?;
        let one = self.group.identity();
        let edges: Vec<Edge> = vertices
            .iter()
            .flat_map(|v| {
                (0..self.group.rank() as u32).map(move |generator| Edge {
                    source: v.clone(),
                    generator,
                })
            })
            .collect();
        let bits = edges.len() + vertices.len();
        if bits > MAX_ENUMERATION_BITS {
            return Err(Error::EnumerationTooLarge(bits));
        }

        let mut closed_graphs = BTreeSet::new();
        for edge_mask in 0u64..(1 << edges.len()) {
            let mut base = Subgraph::from_vertices([one.clone()]);
            for (i, e) in edges.iter().enumerate() {
                if edge_mask >> i & 1 == 1 {
                    base.insert_edge(&self.group, &e.source, Letter::pos(e.generator));
                }
            }
            let free: Vec<&GroupElem> = vertices.iter().filter(|v| !base.has_vertex(v)).collect();
            for vertex_mask in 0u64..(1 << free.len()) {
                let mut graph = base.clone();
                for (i, v) in free.iter().enumerate() {
                    if vertex_mask >> i & 1 == 1 {
                        graph.insert_vertex((*v).clone());
                    }
                }
                if self.mode() == Mode::EUnitary && !graph.is_connected(&self.group) {
                    continue;
                }
                if self.closure.is_closed(&self.group, &graph) {
                    closed_graphs.insert(graph);
                }
            }
        }

        let mut out = Vec::new();
        for graph in closed_graphs {
            for g in graph.vertices() {
                out.push(Element {
                    seed: graph.clone(),
                    anchor: g.clone(),
                    closed: ClosureResult {
                        graph: graph.clone(),
                        status: Status::Stabilized,
                        rounds_used: 0,
                    },
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_term, parse_word};

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    fn w(ctx: &MonoidContext, text: &str) -> Element {
        ctx.eval_word(&parse_word(text, ctx.group().alphabet()).unwrap())
            .unwrap()
    }

    fn t(ctx: &MonoidContext, text: &str) -> Element {
        ctx.eval_term(&parse_term(text, ctx.group().alphabet()).unwrap())
            .unwrap()
    }

    fn g(ctx: &MonoidContext, text: &str) -> GroupElem {
        ctx.group()
            .eval_word(&parse_word(text, ctx.group().alphabet()).unwrap())
    }

    fn path(ctx: &MonoidContext, text: &str) -> Subgraph {
        let grp = ctx.group();
        Subgraph::span_path(
            grp,
            &grp.identity(),
            &parse_word(text, grp.alphabet()).unwrap(),
        )
    }

    #[test]
    fn eval_examples() {
        let fim = MonoidContext::free_inverse(xy());
        let e = w(&fim, "x x^-1");
        assert_eq!(
            e.value().unwrap(),
            (&path(&fim, "x"), &fim.group().identity())
        );

        let ff = MonoidContext::free_f_inverse(xy());
        let e = t(&ff, "x^m");
        let x = g(&ff, "x");
        let pair = Subgraph::from_vertices([ff.group().identity(), x.clone()]);
        assert_eq!(e.value().unwrap(), (&pair, &x));

        for ctx in [&fim, &ff] {
            let one = ctx.identity();
            assert_eq!(
                one.value().unwrap(),
                (
                    &Subgraph::from_vertices([ctx.group().identity()]),
                    &ctx.group().identity()
                )
            );
        }

        assert!(matches!(
            fim.eval_term(&parse_term("x^m", fim.group().alphabet()).unwrap()),
            Err(Error::ModeMismatch(_))
        ));
    }

    #[test]
    fn multiply_examples() {
        let fim = MonoidContext::free_inverse(xy());
        let prod = fim.multiply(&w(&fim, "x"), &w(&fim, "x^-1")).unwrap();
        assert!(prod.try_eq(&w(&fim, "x x^-1")).unwrap());

        let a = w(&fim, "x y^-1 x");
        assert!(fim
            .multiply(&a, &fim.identity())
            .unwrap()
            .try_eq(&a)
            .unwrap());
        assert!(fim
            .multiply(&fim.identity(), &a)
            .unwrap()
            .try_eq(&a)
            .unwrap());

        let e = w(&fim, "x y y^-1 x^-1");
        assert!(fim.multiply(&e, &e).unwrap().try_eq(&e).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let fim = MonoidContext::free_inverse(xy());
        let one = fim.identity();
        assert!(fim.inverse(&one).try_eq(&one).unwrap());

        let x = w(&fim, "x");
        let xi = fim.inverse(&x);
        assert!(xi.try_eq(&w(&fim, "x^-1")).unwrap());
        assert_eq!(xi.anchor(), &g(&fim, "x^-1"));
        assert!(fim.inverse(&xi).try_eq(&x).unwrap());
        let back = fim.multiply(&fim.multiply(&x, &xi).unwrap(), &x).unwrap();
        assert!(back.try_eq(&x).unwrap());
    }

    #[test]
    fn max_m_examples() {
        let ff = MonoidContext::free_f_inverse(xy());
        let a = w(&ff, "x y");
        let m = ff.max_m(&a).unwrap();
        let xy_g = g(&ff, "x y");
        assert_eq!(
            m.value().unwrap(),
            (
                &Subgraph::from_vertices([ff.group().identity(), xy_g.clone()]),
                &xy_g
            )
        );
        assert!(ff.max_m(&m).unwrap().try_eq(&m).unwrap());
        assert!(ff.leq(&a, &m).unwrap());
        assert!(!ff.leq(&m, &a).unwrap());

        let tc = MonoidContext::free_inverse_as_f_inverse(xy());
        let a = w(&tc, "x y");
        assert!(tc.max_m(&a).unwrap().try_eq(&a).unwrap());

        let fim = MonoidContext::free_inverse(xy());
        assert!(matches!(
            fim.max_m(&fim.identity()),
            Err(Error::ModeMismatch(_))
        ));
    }

    #[test]
    fn order_sigma_idempotents() {
        let fim = MonoidContext::free_inverse(xy());
        let a = w(&fim, "x y");
        assert!(fim.leq(&a, &a).unwrap());
        let b = w(&fim, "x x^-1 x");
        let x = w(&fim, "x");
        assert!(fim.leq(&b, &x).unwrap());
        assert!(fim.leq(&x, &b).unwrap());
        assert_eq!(a.sigma(), &g(&fim, "x y"));
        assert!(fim.is_idempotent(&fim.identity()));
        assert!(fim.is_idempotent(&w(&fim, "x x^-1")));
        assert!(!fim.is_idempotent(&x));
    }

    #[test]
    fn meets() {
        let fim = MonoidContext::free_inverse(xy());
        let e = w(&fim, "x x^-1");
        let f = w(&fim, "y y^-1");
        assert!(fim.meet_idempotent(&e, &e).unwrap().try_eq(&e).unwrap());
        assert!(fim
            .meet_idempotent(&e, &fim.identity())
            .unwrap()
            .try_eq(&e)
            .unwrap());
        let star = fim.meet_idempotent(&e, &f).unwrap();
        assert_eq!(star.value().unwrap().0, &path(&fim, "x x^-1 y"));
        assert!(star.try_eq(&fim.meet_idempotent(&f, &e).unwrap()).unwrap());
        assert_eq!(
            fim.meet_idempotent(&e, &w(&fim, "x")),
            Err(Error::NotIdempotent)
        );
    }

    #[test]
    fn canonical_morphism_examples() {
        let ff = MonoidContext::free_f_inverse(xy());
        let tc = MonoidContext::free_inverse_as_f_inverse(xy());
        let m = ff.max_m(&w(&ff, "x y")).unwrap();
        let image = ff.canonical_morphism(&tc, &m).unwrap();
        assert_eq!(image.value().unwrap(), (&path(&tc, "x y"), &g(&tc, "x y")));

        let a = t(&ff, "x^m y (x y)^m");
        assert!(ff.canonical_morphism(&ff, &a).unwrap().try_eq(&a).unwrap());

        // identity_all is not coarser than tree_connect
        let b = t(&tc, "(x y)^m");
        assert_eq!(tc.canonical_morphism(&ff, &b), Err(Error::NotCoarser));
    }

    #[test]
    fn enumeration_margolis_meakin_z3() {
        let group =
            Group::permutation_from_cycles(Alphabet::new(["x"]).unwrap(), 3, &["(1 2 3)"]).unwrap();
        let mm = MonoidContext::margolis_meakin(group);
        assert_eq!(mm.elements().unwrap().len(), 17);
    }

    #[test]
    fn enumeration_trivial_group() {
        // one vertex with an x-loop: {1} and {1 with loop}
        let group =
            Group::permutation_from_cycles(Alphabet::new(["x"]).unwrap(), 1, &["()"]).unwrap();
        let mm = MonoidContext::margolis_meakin(group.clone());
        let elems = mm.elements().unwrap();
        assert_eq!(elems.len(), 2);
        assert!(elems.iter().all(|e| mm.is_idempotent(e)));

        let ff = MonoidContext::new(
            group,
            ClosureOperator::IdentityAll,
            ClosureBudget::default(),
        )
        .unwrap();
        assert_eq!(ff.elements().unwrap().len(), 2);
    }

    #[test]
    fn enumeration_f_inverse_z2() {
        // Γ: vertices {1, x}, edges 1 -x-> x and x -x-> 1.
        // Subgraphs containing 1: {1}; {1,x} with any of 4 edge sets.
        // Elements: 1 + 4 * 2 = 9.
        let group =
            Group::permutation_from_cycles(Alphabet::new(["x"]).unwrap(), 2, &["(1 2)"]).unwrap();
        let ff = MonoidContext::new(
            group,
            ClosureOperator::IdentityAll,
            ClosureBudget::default(),
        )
        .unwrap();
        assert_eq!(ff.elements().unwrap().len(), 9);
        assert_eq!(
            MonoidContext::free_inverse(xy()).elements().unwrap_err(),
            Error::InfiniteGroup
        );
    }
}
