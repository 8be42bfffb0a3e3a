//! Semi-decision procedures for the word problem and the natural order.
//!
//! Both procedures grow Schützenberger graphs round by round from the
//! spans of their inputs. Positive answers are found after finitely many
//! rounds whenever they hold; negative answers need either distinct group
//! images or a stabilized expansion. Anything else is reported as
//! [`Verdict::Unknown`] once the budget is spent.

use std::fmt;

use crate::closure::{ClosureBudget, ClosureResult, Expansion, Mode};
use crate::error::{Error, Result};
use crate::graphs::Subgraph;
use crate::monoid::MonoidContext;
use crate::words::FTerm;

/// Why a negative verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// The two labels have different values in the group.
    GroupImage,
    /// The expansions stabilized without the positive criterion holding.
    Stabilized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    NotEqual(Reason),
    GreaterEq,
    NotGreaterEq(Reason),
    /// The budget ran out first.
    Unknown,
}

impl Verdict {
    /// 0 for a positive answer, 1 for a negative one, 2 for unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Equal | Verdict::GreaterEq => 0,
            Verdict::NotEqual(_) | Verdict::NotGreaterEq(_) => 1,
            Verdict::Unknown => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "EQUAL",
            Verdict::NotEqual(Reason::GroupImage) => "NOT_EQUAL:group-image",
            Verdict::NotEqual(Reason::Stabilized) => "NOT_EQUAL:stabilized-distinct",
            Verdict::GreaterEq => "GREATER_EQ",
            Verdict::NotGreaterEq(Reason::GroupImage) => "NOT_GREATER_EQ:group-image",
            Verdict::NotGreaterEq(Reason::Stabilized) => "NOT_GREATER_EQ:stabilized",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// A verdict with the number of rounds run and the size of the largest
/// graph built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub rounds: usize,
    pub vertices: usize,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "VERDICT={} ROUNDS={} VERTICES={}",
            self.verdict, self.rounds, self.vertices
        )
    }
}

fn check_label(ctx: &MonoidContext, t: &FTerm) -> Result<()> {
    if ctx.mode() == Mode::EUnitary && t.as_word().is_none() {
        return Err(Error::ModeMismatch(
            "^m is not in the signature of E-unitary inverse monoids".into(),
        ));
    }
    Ok(())
}

fn span(ctx: &MonoidContext, t: &FTerm) -> Subgraph {
    Subgraph::span_journey(ctx.group(), &ctx.group().identity(), t)
}

fn over_budget(budget: &ClosureBudget, round: usize, graphs: &[&Subgraph]) -> bool {
    round >= budget.max_rounds()
        || graphs
            .iter()
            .any(|g| g.vertex_count() > budget.max_vertices())
}

/// A stable expansion, or one whose current graph is already closed.
fn settled(ctx: &MonoidContext, exp: &Expansion<'_>) -> bool {
    exp.is_stable() || ctx.closure().is_closed(ctx.group(), exp.graph())
}

/// Decides `u = v` when possible.
///
/// Grows `Δᵢᵘ` and `Δᵢᵛ` in lockstep and answers [`Verdict::Equal`] at the
/// first `i` with `span(v) ⊆ Δᵢᵘ` and `span(u) ⊆ Δᵢᵛ`.
pub fn check_equal(
    ctx: &MonoidContext,
    u: &FTerm,
    v: &FTerm,
    budget: &ClosureBudget,
) -> Result<Decision> {
    check_label(ctx, u)?;
    check_label(ctx, v)?;
    let group = ctx.group();
    let (span_u, span_v) = (span(ctx, u), span(ctx, v));
    if group.eval_term(u) != group.eval_term(v) {
        return Ok(Decision {
            verdict: Verdict::NotEqual(Reason::GroupImage),
            rounds: 0,
            vertices: span_u.vertex_count().max(span_v.vertex_count()),
        });
    }
    let mut eu = ctx.closure().expansion(group, span_u.clone())?;
    let mut ev = ctx.closure().expansion(group, span_v.clone())?;
    let mut round = 0;
    loop {
        let vertices = eu.graph().vertex_count().max(ev.graph().vertex_count());
        let decision = |verdict| Decision {
            verdict,
            rounds: round,
            vertices,
        };
        if eu.graph().contains(&span_v) && ev.graph().contains(&span_u) {
            return Ok(decision(Verdict::Equal));
        }
        if eu.is_stable() && ev.is_stable() {
            return Ok(decision(Verdict::NotEqual(Reason::Stabilized)));
        }
        if over_budget(budget, round, &[eu.graph(), ev.graph()]) {
            let verdict = if settled(ctx, &eu) && settled(ctx, &ev) {
                Verdict::NotEqual(Reason::Stabilized)
            } else {
                Verdict::Unknown
            };
            return Ok(decision(verdict));
        }
        eu.step();
        ev.step();
        round += 1;
    }
}

/// Decides `u ≥ w` when possible: `u` must label a path (journey) from `1`
/// to `w_G` in the Schützenberger graph of `w`.
pub fn check_geq(
    ctx: &MonoidContext,
    u: &FTerm,
    w: &FTerm,
    budget: &ClosureBudget,
) -> Result<Decision> {
    check_label(ctx, u)?;
    check_label(ctx, w)?;
    let group = ctx.group();
    let one = group.identity();
    let target = group.eval_term(w);
    let start = span(ctx, w);
    if group.eval_term(u) != target {
        return Ok(Decision {
            verdict: Verdict::NotGreaterEq(Reason::GroupImage),
            rounds: 0,
            vertices: start.vertex_count(),
        });
    }
    let mut exp = ctx.closure().expansion(group, start)?;
    let mut round = 0;
    loop {
        let decision = |verdict, graph: &Subgraph| Decision {
            verdict,
            rounds: round,
            vertices: graph.vertex_count(),
        };
        if exp.graph().trace_journey(group, &one, u).as_ref() == Some(&target) {
            return Ok(decision(Verdict::GreaterEq, exp.graph()));
        }
        if exp.is_stable() {
            return Ok(decision(
                Verdict::NotGreaterEq(Reason::Stabilized),
                exp.graph(),
            ));
        }
        if over_budget(budget, round, &[exp.graph()]) {
            let verdict = if settled(ctx, &exp) {
                Verdict::NotGreaterEq(Reason::Stabilized)
            } else {
                Verdict::Unknown
            };
            return Ok(decision(verdict, exp.graph()));
        }
        exp.step();
        round += 1;
    }
}

/// DOT rendering of a (possibly truncated) Schützenberger graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphExport {
    pub result: ClosureResult,
    /// One graph per round when requested, else only the last.
    pub dots: Vec<String>,
}

/// Closes `span(w)` and renders it with `1` and `w_G` highlighted.
pub fn graph_export(
    ctx: &MonoidContext,
    w: &FTerm,
    budget: &ClosureBudget,
    rounds: bool,
) -> Result<GraphExport> {
    check_label(ctx, w)?;
    let group = ctx.group();
    let highlights = [group.identity(), group.eval_term(w)];
    let mut dots = Vec::new();
    let result = ctx
        .closure()
        .close_traced(group, &span(ctx, w), budget, |g| {
            if rounds {
                dots.push(g.to_dot(group, &highlights));
            }
        })?;
    if !rounds {
        dots.push(result.graph.to_dot(group, &highlights));
    }
    Ok(GraphExport { result, dots })
}

/// Per-round size of an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundStats {
    pub round: usize,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
}

/// Sizes of `Δ₀ = span(w), Δ₁, …` until stabilization or the budget.
pub fn expansion_trace(
    ctx: &MonoidContext,
    w: &FTerm,
    budget: &ClosureBudget,
) -> Result<(Vec<RoundStats>, ClosureResult)> {
    check_label(ctx, w)?;
    let group = ctx.group();
    let mut stats = Vec::new();
    let result = ctx
        .closure()
        .close_traced(group, &span(ctx, w), budget, |g| {
            stats.push(RoundStats {
                round: stats.len(),
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                components: g.components(group).len(),
            });
        })?;
    Ok((stats, result))
}
