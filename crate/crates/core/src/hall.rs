//! Out-degree bounded branchings covering a prescribed vertex class.
//!
//! Given a partition `{S, T}` of the vertices and budgets `f`, a branching `B`
//! with `d⁻_B(v) = 1` on `T` and `d⁺_B(v) <= f(v)` everywhere exists whenever
//! every non-empty `X ⊆ T` satisfies `f̃(N⁻(X)) >= |X|`, where `N⁻(X)` is the
//! set of vertices outside `X` with an arc into `X` (it may contain other
//! vertices of `T`). The extraction grows `B` one arc at a time and keeps that
//! condition true for the shrinking set `T*` of uncovered vertices.

use crate::digraph::{ArcId, ArcSubset, Digraph, VertexId};
use crate::error::{NdtError, Result};
use crate::flow::{max_flow, FlowNetwork, INFINITE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallInstance<'a> {
    digraph: &'a Digraph,
    in_t: Vec<bool>,
    budget: Vec<u64>,
}

impl<'a> HallInstance<'a> {
    /// `t` lists the vertices of `T`; everything else is `S`. `budget[v]` is `f(v)`.
    pub fn new(digraph: &'a Digraph, t: &[VertexId], budget: Vec<u64>) -> Result<Self> {
        if budget.len() != digraph.vertex_count() {
            return Err(NdtError::InvalidParameter(format!(
                "budget has {} entries for {} vertices",
                budget.len(),
                digraph.vertex_count()
            )));
        }
        let in_t = digraph.mask(t)?;
        Ok(HallInstance {
            digraph,
            in_t,
            budget,
        })
    }

    /// Same budget `f(v) = value` at every vertex.
    pub fn uniform(digraph: &'a Digraph, t: &[VertexId], value: u64) -> Result<Self> {
        Self::new(digraph, t, vec![value; digraph.vertex_count()])
    }

    pub fn digraph(&self) -> &'a Digraph {
        self.digraph
    }

    pub fn t(&self) -> Vec<VertexId> {
        members(&self.in_t)
    }

    pub fn s(&self) -> Vec<VertexId> {
        (0..self.in_t.len()).filter(|&v| !self.in_t[v]).collect()
    }

    pub fn budget(&self) -> &[u64] {
        &self.budget
    }
}

/// A non-empty `X ⊆ T` with `f̃(N⁻(X)) < |X|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallViolation {
    pub set: Vec<VertexId>,
    pub deficiency: i64,
}

impl HallViolation {
    /// Recomputes `|X| - f̃(N⁻(X))` under the given budgets.
    pub fn recompute(digraph: &Digraph, set: &[VertexId], budget: &[u64]) -> Result<i64> {
        let supply: u64 = digraph.in_neighbors(set)?.iter().map(|&y| budget[y]).sum();
        Ok(set.len() as i64 - supply as i64)
    }
}

fn members(mask: &[bool]) -> Vec<VertexId> {
    (0..mask.len()).filter(|&v| mask[v]).collect()
}

/// Worst deficiency of the Hall-type condition over `X ⊆ T`, via one max flow.
///
/// Nodes: `R_x` per `x ∈ T`, `L_y` per vertex. Edges `source -> R_x` (1),
/// `R_x -> L_y` (∞) for every arc `y -> x`, `L_y -> R_y` (`f(y)`) when
/// `y ∈ T`, and `L_y -> sink` (`f(y)`) otherwise. A cut with `X` = source-side
/// `R` nodes costs `|T \ X| + f̃(N⁻(X))`, so the min cut is `|T| + min_X
/// (f̃(N⁻(X)) - |X|)`.
fn hall_deficiency(digraph: &Digraph, in_t: &[bool], budget: &[u64]) -> Option<HallViolation> {
    let n = digraph.vertex_count();
    let source = 0;
    let sink = 1;
    let right = |x: VertexId| 2 + x;
    let left = |y: VertexId| 2 + n + y;
    let mut net = FlowNetwork::new(2 + 2 * n, source, sink).expect("valid terminals");
    let mut size = 0;
    for x in (0..n).filter(|&x| in_t[x]) {
        size += 1;
        net.add_edge(source, right(x), 1).expect("in range");
        for &a in digraph.in_arcs(x) {
            net.add_edge(right(x), left(digraph.tail(a)), INFINITE)
                .expect("in range");
        }
    }
    for y in 0..n {
        let to = if in_t[y] { right(y) } else { sink };
        net.add_edge(left(y), to, budget[y] as i64)
            .expect("in range");
    }
    let res = max_flow(&net);
    if res.value == size {
        return None;
    }
    let set: Vec<VertexId> = (0..n)
        .filter(|&x| in_t[x] && res.source_side[right(x)])
        .collect();
    let deficiency = size - res.value;
    debug_assert_eq!(
        HallViolation::recompute(digraph, &set, budget).ok(),
        Some(deficiency)
    );
    Some(HallViolation { set, deficiency })
}

/// Checks `f̃(N⁻(X)) >= |X|` for every non-empty `X ⊆ T`.
pub fn check_hall(inst: &HallInstance<'_>) -> std::result::Result<(), HallViolation> {
    match hall_deficiency(inst.digraph, &inst.in_t, &inst.budget) {
        None => Ok(()),
        Some(v) => Err(v),
    }
}

/// Mutable state of the extraction: the uncovered set `T*`, the remaining
/// budgets `f*`, and the branching built so far. `S*` is the complement of
/// `T*`.
#[derive(Debug, Clone)]
pub struct ExtractionState<'a> {
    inst: &'a HallInstance<'a>,
    in_t_star: Vec<bool>,
    remaining: Vec<u64>,
    branching: ArcSubset,
    out_in_b: Vec<u64>,
    in_in_b: Vec<u64>,
}

impl<'a> ExtractionState<'a> {
    pub fn new(inst: &'a HallInstance<'a>) -> Self {
        let n = inst.digraph.vertex_count();
        ExtractionState {
            inst,
            in_t_star: inst.in_t.clone(),
            remaining: inst.budget.clone(),
            branching: ArcSubset::empty(inst.digraph.arc_count()),
            out_in_b: vec![0; n],
            in_in_b: vec![0; n],
        }
    }

    pub fn is_done(&self) -> bool {
        !self.in_t_star.iter().any(|&b| b)
    }

    pub fn t_star(&self) -> Vec<VertexId> {
        members(&self.in_t_star)
    }

    pub fn in_t_star(&self, v: VertexId) -> bool {
        self.in_t_star[v]
    }

    pub fn remaining_budget(&self) -> &[u64] {
        &self.remaining
    }

    pub fn branching(&self) -> &ArcSubset {
        &self.branching
    }

    /// Current worst violation of the condition on `T*` under `f*`.
    pub fn violation(&self) -> Option<HallViolation> {
        hall_deficiency(self.inst.digraph, &self.in_t_star, &self.remaining)
    }

    /// Smallest `s ∈ N⁻(T*)` with `f*(s) > 0`.
    pub fn select_source(&self) -> Option<VertexId> {
        self.inst
            .digraph
            .in_neighbors_of_mask(&self.in_t_star)
            .into_iter()
            .find(|&s| self.remaining[s] > 0)
    }

    /// Out-neighbours of `s0` still in `T*`, ascending, each with the smallest
    /// arc id realising it.
    pub fn candidates(&self, s0: VertexId) -> Vec<(VertexId, ArcId)> {
        let dg = self.inst.digraph;
        let mut best: Vec<Option<ArcId>> = vec![None; dg.vertex_count()];
        for &a in dg.out_arcs(s0) {
            let t = dg.head(a);
            if self.in_t_star[t] && best[t].is_none() {
                best[t] = Some(a);
            }
        }
        best.iter()
            .enumerate()
            .filter_map(|(t, a)| a.map(|a| (t, a)))
            .collect()
    }

    fn check_move(&self, s0: VertexId, t0: VertexId) -> Result<ArcId> {
        let n = self.inst.digraph.vertex_count();
        for v in [s0, t0] {
            if v >= n {
                return Err(NdtError::VertexOutOfRange { vertex: v, n });
            }
        }
        if self.in_t_star[s0] {
            return Err(NdtError::Precondition(format!(
                "source {s0} is still in T*"
            )));
        }
        if self.remaining[s0] == 0 {
            return Err(NdtError::Precondition(format!(
                "source {s0} has no budget left"
            )));
        }
        if !self.in_t_star[t0] {
            return Err(NdtError::Precondition(format!("target {t0} is not in T*")));
        }
        self.candidates(s0)
            .into_iter()
            .find(|&(t, _)| t == t0)
            .map(|(_, a)| a)
            .ok_or_else(|| NdtError::Precondition(format!("no arc {s0} -> {t0}")))
    }

    /// Would the condition on `T*` survive adding `s0 -> t0`?
    pub fn commit_test(&self, s0: VertexId, t0: VertexId) -> Result<bool> {
        self.check_move(s0, t0)?;
        let mut in_t_star = self.in_t_star.clone();
        in_t_star[t0] = false;
        let mut remaining = self.remaining.clone();
        remaining[s0] -= 1;
        Ok(hall_deficiency(self.inst.digraph, &in_t_star, &remaining).is_none())
    }

    /// Adds `s0 -> t0` to the branching without re-checking feasibility.
    pub fn commit(&mut self, s0: VertexId, t0: VertexId) -> Result<ArcId> {
        let arc = self.check_move(s0, t0)?;
        self.branching.insert(arc);
        self.in_t_star[t0] = false;
        self.remaining[s0] -= 1;
        self.out_in_b[s0] += 1;
        self.in_in_b[t0] += 1;
        Ok(arc)
    }

    /// Checks the three maintained properties:
    /// (a) covered vertices of `T` have in-degree 1 in `B`;
    /// (b) `d⁺_B(v) + f*(v) <= f(v)` on `S*`;
    /// (c) vertices of `T*` are isolated in `B`.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for v in 0..self.in_t_star.len() {
            if self.inst.in_t[v] && !self.in_t_star[v] && self.in_in_b[v] != 1 {
                return Err(format!("(a) fails at {v}"));
            }
            if !self.in_t_star[v] && self.out_in_b[v] + self.remaining[v] > self.inst.budget[v] {
                return Err(format!("(b) fails at {v}"));
            }
            if self.in_t_star[v] && (self.out_in_b[v] != 0 || self.in_in_b[v] != 0) {
                return Err(format!("(c) fails at {v}"));
            }
        }
        Ok(())
    }
}

/// One committed arc of the extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionStep {
    pub source: VertexId,
    pub target: VertexId,
    pub arc: ArcId,
    /// Out-neighbours in `T*` tried before `target` and found infeasible.
    pub rejected: Vec<VertexId>,
}

pub fn extract_bounded_branching(inst: &HallInstance<'_>) -> Result<ArcSubset> {
    extract_bounded_branching_traced(inst).map(|(b, _)| b)
}

/// Like [`extract_bounded_branching`], also returning every committed step.
pub fn extract_bounded_branching_traced(
    inst: &HallInstance<'_>,
) -> Result<(ArcSubset, Vec<ExtractionStep>)> {
    check_hall(inst).map_err(NdtError::HallViolated)?;
    let mut state = ExtractionState::new(inst);
    let mut steps = Vec::new();
    while !state.is_done() {
        let s0 = state
            .select_source()
            .expect("condition on T* guarantees a source with budget");
        let mut rejected = Vec::new();
        let mut chosen = None;
        for (t, _) in state.candidates(s0) {
            if state.commit_test(s0, t)? {
                chosen = Some(t);
                break;
            }
            rejected.push(t);
        }
        let t0 = chosen.ok_or(NdtError::DeadEnd { source_vertex: s0 })?;
        let arc = state.commit(s0, t0)?;
        debug_assert_eq!(state.check_invariants(), Ok(()));
        steps.push(ExtractionStep {
            source: s0,
            target: t0,
            arc,
            rejected,
        });
    }
    Ok((state.branching, steps))
}
