//! Finitary, G-invariant closure operators on subgraphs of `Γ_X`.
//!
//! A relation-induced closure declares a subgraph closed when, for every
//! related pair `(u, v)`, `u` labels a path (or journey) from `g` to `h`
//! exactly when `v` does. The closure of a finite graph is the union of
//! its iterated full P-expansions, which may be infinite; [`ClosureOperator::close`]
//! therefore runs under a [`ClosureBudget`] and reports whether the
//! fixpoint was reached.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graphs::Subgraph;
use crate::groups::{Group, GroupElem};
use crate::words::{FTerm, Letter, Word};

/// Which poset the closure lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Connected subgraphs, plain words; E-unitary inverse monoids.
    EUnitary,
    /// All subgraphs, terms with `^m`; F-inverse monoids.
    FInverse,
}

/// A finite symmetric relation on words or terms whose related pairs are
/// equal in the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSystem {
    mode: Mode,
    pairs: Vec<(FTerm, FTerm)>,
}

impl RelationSystem {
    /// Validates every pair against the group and takes the symmetric
    /// closure. In E-unitary mode every side must be a plain word.
    pub fn new<I>(group: &Group, mode: Mode, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FTerm, FTerm)>,
    {
        let alphabet = group.alphabet();
        let mut set = BTreeSet::new();
        for (u, v) in pairs {
            if mode == Mode::EUnitary && (u.as_word().is_none() || v.as_word().is_none()) {
                return Err(Error::ModeMismatch(format!(
                    "term relator `{}` = `{}` in an inverse monoid presentation",
                    u.display(alphabet),
                    v.display(alphabet)
                )));
            }
            if group.eval_term(&u) != group.eval_term(&v) {
                return Err(Error::RelatorNotInGroup {
                    lhs: u.display(alphabet).to_string(),
                    rhs: v.display(alphabet).to_string(),
                });
            }
            if u != v {
                set.insert((v.clone(), u.clone()));
                set.insert((u, v));
            }
        }
        Ok(RelationSystem {
            mode,
            pairs: set.into_iter().collect(),
        })
    }

    pub fn from_words<I>(group: &Group, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Word)>,
    {
        RelationSystem::new(
            group,
            Mode::EUnitary,
            pairs.into_iter().map(|(u, v)| (u.into(), v.into())),
        )
    }

    /// `{(red(w), w^m) : |w| ≤ max_len}` over the group's alphabet.
    ///
    /// Over a free group with `max_len` at least the diameter of a graph,
    /// closing under this system connects the graph into its geodesic hull.
    pub fn free_reduction_schema(group: &Group, max_len: usize) -> Result<Self> {
        let letters: Vec<Letter> = group.alphabet().letters().collect();
        let mut words = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(frontier.len() * letters.len());
            for w in &frontier {
                for &l in &letters {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        RelationSystem::new(
            group,
            Mode::FInverse,
            words
                .into_iter()
                .map(|w| (FTerm::from(w.free_reduce()), FTerm::jump(w))),
        )
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Both orientations of every pair, sorted.
    pub fn pairs(&self) -> &[(FTerm, FTerm)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureOperator {
    /// Identity on connected subgraphs (Margolis–Meakin, Munn).
    IdentityConnected,
    /// Identity on all subgraphs (initial F-inverse object).
    IdentityAll,
    Relation(RelationSystem),
    /// Geodesic hull in a free group's Cayley tree: the closed graphs are
    /// exactly the connected ones.
    TreeConnect,
}

/// Limits for semi-decidable closure computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureBudget {
    max_rounds: usize,
    max_vertices: usize,
}

impl ClosureBudget {
    pub fn new(max_rounds: usize, max_vertices: usize) -> Result<Self> {
        if max_rounds == 0 || max_vertices == 0 {
            return Err(Error::ZeroBudget);
        }
        Ok(ClosureBudget {
            max_rounds,
            max_vertices,
        })
    }

    pub fn max_rounds(&self) -> usize {
        self.max_rounds
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }

    fn spent(&self, rounds: usize, graph: &Subgraph) -> bool {
        rounds >= self.max_rounds || graph.vertex_count() > self.max_vertices
    }
}

impl Default for ClosureBudget {
    fn default() -> Self {
        ClosureBudget {
            max_rounds: 64,
            max_vertices: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Stabilized,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub graph: Subgraph,
    pub status: Status,
    /// Expansion rounds that grew the graph.
    pub rounds_used: usize,
}

impl ClosureResult {
    pub fn is_stabilized(&self) -> bool {
        self.status == Status::Stabilized
    }

    /// The exact closure, if it was reached.
    pub fn closed(&self) -> Option<&Subgraph> {
        self.is_stabilized().then_some(&self.graph)
    }
}

/// All `(g, h)` such that `label` traces inside `graph` from `g` to `h`.
pub fn occurrences(
    group: &Group,
    graph: &Subgraph,
    label: &FTerm,
) -> BTreeSet<(GroupElem, GroupElem)> {
    graph
        .vertices()
        .iter()
        .filter_map(|g| graph.trace_journey(group, g, label).map(|h| (g.clone(), h)))
        .collect()
}

/// One simultaneous round: for every `(u, v)` and every occurrence of `u`
/// from `g`, add the span of `v` from `g`. Occurrences are read from the
/// input graph only.
pub fn full_p_expansion(group: &Group, graph: &Subgraph, relation: &RelationSystem) -> Subgraph {
    let mut out = graph.clone();
    for (u, v) in relation.pairs() {
        for g in graph.vertices() {
            if graph.trace_journey(group, g, u).is_some()
                && graph.trace_journey(group, g, v).is_none()
            {
                out.add_journey(group, g, v);
            }
        }
    }
    out
}

/// Whether `u` and `v` have the same occurrences for every related pair.
pub fn is_closed(group: &Group, graph: &Subgraph, relation: &RelationSystem) -> bool {
    // a trace of `u` from `g` ends at `g·u_G = g·v_G`, so comparing the
    // start vertices compares the occurrence sets
    relation.pairs().iter().all(|(u, v)| {
        graph.vertices().iter().all(|g| {
            graph.trace_journey(group, g, u).is_none() || graph.trace_journey(group, g, v).is_some()
        })
    })
}

/// The smallest connected subgraph of a free group's Cayley tree
/// containing `graph`.
pub fn geodesic_hull(group: &Group, graph: &Subgraph) -> Result<Subgraph> {
    if !group.is_free() {
        return Err(Error::RequiresFreeGroup("tree_connect"));
    }
    let mut out = graph.clone();
    let Some(root) = graph.vertices().first() else {
        return Ok(out);
    };
    for v in graph.vertices() {
        let path = group.geodesic_word(&group.quotient(root, v))?;
        out.add_path(group, root, &path);
    }
    Ok(out)
}

impl ClosureOperator {
    /// The mode whose poset this operator acts on.
    pub fn mode(&self) -> Mode {
        match self {
            ClosureOperator::IdentityConnected => Mode::EUnitary,
            ClosureOperator::IdentityAll | ClosureOperator::TreeConnect => Mode::FInverse,
            ClosureOperator::Relation(r) => r.mode(),
        }
    }

    /// Rejects operators the group cannot support.
    pub fn validate(&self, group: &Group) -> Result<()> {
        match self {
            ClosureOperator::TreeConnect if !group.is_free() => {
                Err(Error::RequiresFreeGroup("tree_connect"))
            }
            _ => Ok(()),
        }
    }

    fn check_input(&self, group: &Group, graph: &Subgraph) -> Result<()> {
        self.validate(group)?;
        if self.mode() == Mode::EUnitary && !graph.is_connected(group) {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Whether `graph` is a fixed point.
    pub fn is_closed(&self, group: &Group, graph: &Subgraph) -> bool {
        match self {
            ClosureOperator::IdentityAll => true,
            ClosureOperator::IdentityConnected => graph.is_connected(group),
            ClosureOperator::TreeConnect => group.is_free() && graph.is_connected(group),
            ClosureOperator::Relation(r) => is_closed(group, graph, r),
        }
    }

    /// Starts the round sequence `Δ₀ = graph, Δᵢ₊₁ = full_p_expansion(Δᵢ)`.
    /// Non-relation operators jump straight to their (finite) closure.
    pub fn expansion<'a>(&'a self, group: &'a Group, graph: Subgraph) -> Result<Expansion<'a>> {
        self.check_input(group, &graph)?;
        let (graph, stable) = match self {
            ClosureOperator::IdentityAll | ClosureOperator::IdentityConnected => (graph, true),
            ClosureOperator::TreeConnect => (geodesic_hull(group, &graph)?, true),
            ClosureOperator::Relation(_) => (graph, false),
        };
        Ok(Expansion {
            group,
            operator: self,
            graph,
            rounds: 0,
            stable,
        })
    }

    /// Closes `graph`, stopping early when the budget is spent.
    ///
    /// A round that overshoots `max_vertices` is completed before
    /// stopping. When the budget runs out the final graph is still checked
    /// for closedness, so `Stabilized` always means the exact closure.
    pub fn close(
        &self,
        group: &Group,
        graph: &Subgraph,
        budget: &ClosureBudget,
    ) -> Result<ClosureResult> {
        self.close_traced(group, graph, budget, |_| {})
    }

    /// [`close`](Self::close), calling `on_round` with the starting graph
    /// and again after every round that grew it.
    pub fn close_traced<F>(
        &self,
        group: &Group,
        graph: &Subgraph,
        budget: &ClosureBudget,
        mut on_round: F,
    ) -> Result<ClosureResult>
    where
        F: FnMut(&Subgraph),
    {
        let mut exp = self.expansion(group, graph.clone())?;
        on_round(exp.graph());
        loop {
            if exp.is_stable() {
                return Ok(exp.finish(Status::Stabilized));
            }
            if budget.spent(exp.rounds(), exp.graph()) {
                let status = if self.is_closed(group, exp.graph()) {
                    Status::Stabilized
                } else {
                    Status::BudgetExhausted
                };
                return Ok(exp.finish(status));
            }
            if exp.step() {
                on_round(exp.graph());
            }
        }
    }
}

/// The increasing sequence of graphs produced by full P-expansions.
#[derive(Debug, Clone)]
pub struct Expansion<'a> {
    group: &'a Group,
    operator: &'a ClosureOperator,
    graph: Subgraph,
    rounds: usize,
    stable: bool,
}

impl Expansion<'_> {
    pub fn graph(&self) -> &Subgraph {
        &self.graph
    }

    /// Rounds that grew the graph so far.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// True once a round added nothing (or the operator needs no rounds).
    pub fn is_stable(&self) -> bool {
        self.stable
    }

    /// Runs one full P-expansion; returns whether the graph grew.
    pub fn step(&mut self) -> bool {
        if self.stable {
            return false;
        }
        let ClosureOperator::Relation(relation) = self.operator else {
            unreachable!("only relation closures expand in rounds");
        };
        let next = full_p_expansion(self.group, &self.graph, relation);
        if next == self.graph {
            self.stable = true;
            return false;
        }
        debug_assert!(next.contains(&self.graph));
        debug_assert!(relation.mode() == Mode::FInverse || next.is_connected(self.group));
        self.graph = next;
        self.rounds += 1;
        true
    }

    pub fn finish(self, status: Status) -> ClosureResult {
        ClosureResult {
            graph: self.graph,
            status,
            rounds_used: self.rounds,
        }
    }
}
