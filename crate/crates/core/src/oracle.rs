//! Exhaustive ground truth for small instances.

use std::time::{Duration, Instant};

use crate::decompose::{Decomposition, DecompositionKind};
use crate::digraph::{Digraph, VertexId};
use crate::error::{NdtError, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest vertex count accepted by subset enumeration.
    pub max_vertices: usize,
    /// Largest arc count accepted by decomposition search.
    pub max_arcs: usize,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 16,
            max_arcs: 14,
            time_limit: None,
        }
    }
}

impl OracleBudget {
    fn check_vertices(&self, digraph: &Digraph) -> Result<()> {
        if self.max_vertices == 0 || self.max_vertices > 30 {
            return Err(NdtError::InvalidParameter(
                "max_vertices must lie in 1..=30".into(),
            ));
        }
        if digraph.vertex_count() > self.max_vertices {
            return Err(NdtError::BudgetExceeded {
                what: "vertex count",
                actual: digraph.vertex_count(),
                limit: self.max_vertices,
            });
        }
        Ok(())
    }

    fn check_arcs(&self, digraph: &Digraph) -> Result<()> {
        if self.max_arcs == 0 {
            return Err(NdtError::InvalidParameter(
                "max_arcs must be positive".into(),
            ));
        }
        if digraph.arc_count() > self.max_arcs {
            return Err(NdtError::BudgetExceeded {
                what: "arc count",
                actual: digraph.arc_count(),
                limit: self.max_arcs,
            });
        }
        Ok(())
    }
}

/// Calls `visit(subset_mask, size, induced_arcs)` for every non-empty subset.
fn for_each_subset(digraph: &Digraph, mut visit: impl FnMut(u32, i64, i64)) {
    let masks: Vec<u32> = digraph
        .arcs()
        .iter()
        .map(|&(u, v)| (1u32 << u) | (1u32 << v))
        .collect();
    for set in 1u32..(1u32 << digraph.vertex_count()) {
        let arcs = masks.iter().filter(|&&am| set & am == am).count() as i64;
        visit(set, set.count_ones() as i64, arcs);
    }
}

/// `γ` by enumerating every vertex subset of size at least 2.
pub fn brute_gamma(digraph: &Digraph, budget: &OracleBudget) -> Result<Rational> {
    budget.check_vertices(digraph)?;
    if digraph.vertex_count() < 2 {
        return Err(NdtError::TooFewVertices {
            needed: 2,
            got: digraph.vertex_count(),
        });
    }
    let mut best = Rational::from_integer(0);
    for_each_subset(digraph, |_, size, arcs| {
        if size >= 2 {
            best = best.max(Rational::new(arcs, size - 1));
        }
    });
    Ok(best)
}

/// `mad` by enumerating every non-empty vertex subset.
pub fn brute_mad(digraph: &Digraph, budget: &OracleBudget) -> Result<Rational> {
    budget.check_vertices(digraph)?;
    if digraph.vertex_count() == 0 {
        return Err(NdtError::TooFewVertices { needed: 1, got: 0 });
    }
    let mut best = Rational::from_integer(0);
    for_each_subset(digraph, |_, size, arcs| {
        best = best.max(Rational::new(2 * arcs, size));
    });
    Ok(best)
}

/// The decision problem handed to the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionQuery {
    pub parts: usize,
    /// Out-degree bound on the last part.
    pub last_part_budget: Option<usize>,
    pub kind: DecompositionKind,
}

impl DecompositionQuery {
    /// `k` parts, no out-degree bound.
    pub fn plain(k: usize, kind: DecompositionKind) -> Self {
        DecompositionQuery {
            parts: k,
            last_part_budget: None,
            kind,
        }
    }

    /// `k + 1` parts, the last with out-degree at most `d`.
    pub fn bounded(k: usize, d: usize, kind: DecompositionKind) -> Self {
        DecompositionQuery {
            parts: k + 1,
            last_part_budget: Some(d),
            kind,
        }
    }

    /// Parts whose labels can be permuted without changing the question.
    fn interchangeable(&self) -> usize {
        match self.last_part_budget {
            Some(_) => self.parts - 1,
            None => self.parts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Decomposable(Decomposition),
    /// The search finished without finding a decomposition.
    Infeasible,
}

struct RollbackForest {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<usize>>,
}

impl RollbackForest {
    fn new(n: usize) -> Self {
        RollbackForest {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn connected(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return;
        }
        if self.size[ra] > self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[ra] = rb;
        self.size[rb] += self.size[ra];
        self.history.push(Some(ra));
    }

    fn undo(&mut self) {
        if let Some(Some(ra)) = self.history.pop() {
            let rb = self.parent[ra];
            self.size[rb] -= self.size[ra];
            self.parent[ra] = ra;
        }
    }
}

struct Search<'a> {
    digraph: &'a Digraph,
    query: DecompositionQuery,
    assignment: Vec<usize>,
    entered: Vec<Vec<bool>>,
    forests: Vec<RollbackForest>,
    used: Vec<usize>,
    last_out: Vec<usize>,
    deadline: Option<Instant>,
    steps: u64,
}

impl<'a> Search<'a> {
    fn new(digraph: &'a Digraph, query: DecompositionQuery, budget: &OracleBudget) -> Self {
        let n = digraph.vertex_count();
        Search {
            digraph,
            query,
            assignment: vec![0; digraph.arc_count()],
            entered: vec![vec![false; n]; query.parts],
            forests: (0..query.parts).map(|_| RollbackForest::new(n)).collect(),
            used: vec![0; query.parts],
            last_out: vec![0; n],
            deadline: budget.time_limit.map(|t| Instant::now() + t),
            steps: 0,
        }
    }

    fn allowed(&self, a: usize, part: usize) -> bool {
        let (u, v) = self.digraph.arc(a);
        if self.entered[part][v] {
            return false;
        }
        if part < self.query.interchangeable()
            && self.used[part] == 0
            && part > 0
            && self.used[part - 1] == 0
        {
            return false;
        }
        if self.query.kind == DecompositionKind::Branching && self.forests[part].connected(u, v) {
            return false;
        }
        if part + 1 == self.query.parts {
            if let Some(d) = self.query.last_part_budget {
                if self.last_out[u] >= d {
                    return false;
                }
            }
        }
        true
    }

    fn place(&mut self, a: usize, part: usize) {
        let (u, v) = self.digraph.arc(a);
        self.assignment[a] = part;
        self.entered[part][v] = true;
        self.forests[part].union(u, v);
        self.used[part] += 1;
        if part + 1 == self.query.parts {
            self.last_out[u] += 1;
        }
    }

    fn unplace(&mut self, a: usize, part: usize) {
        let (u, v) = self.digraph.arc(a);
        self.entered[part][v] = false;
        self.forests[part].undo();
        self.used[part] -= 1;
        if part + 1 == self.query.parts {
            self.last_out[u] -= 1;
        }
    }

    /// Depth-first over arcs in id order; `visit` returns `false` to stop.
    fn run(&mut self, a: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        self.steps += 1;
        if self.steps.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(NdtError::TimeLimit);
                }
            }
        }
        if a == self.digraph.arc_count() {
            return Ok(visit(&self.assignment));
        }
        for part in 0..self.query.parts {
            if !self.allowed(a, part) {
                continue;
            }
            self.place(a, part);
            let keep_going = self.run(a + 1, visit)?;
            self.unplace(a, part);
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_query(query: &DecompositionQuery) -> Result<()> {
    if query.parts == 0 {
        return Err(NdtError::InvalidParameter("need at least one part".into()));
    }
    Ok(())
}

/// Backtracking search for a decomposition answering `query`.
pub fn brute_decompose(
    digraph: &Digraph,
    query: &DecompositionQuery,
    budget: &OracleBudget,
) -> Result<OracleVerdict> {
    check_query(query)?;
    budget.check_arcs(digraph)?;
    let mut found = None;
    let mut search = Search::new(digraph, *query, budget);
    search.run(0, &mut |assignment| {
        found = Some(assignment.to_vec());
        false
    })?;
    Ok(match found {
        Some(assignment) => OracleVerdict::Decomposable(Decomposition {
            parent: digraph.clone(),
            parts: query.parts,
            assignment,
            kind: query.kind,
        }),
        None => OracleVerdict::Infeasible,
    })
}

/// Visits every decomposition answering `query`, one per orbit of the
/// interchangeable part labels (non-empty interchangeable parts appear in
/// order of their smallest arc). Stops early when `visit` returns `false`.
/// Returns the number of decompositions visited.
pub fn enumerate_decompositions(
    digraph: &Digraph,
    query: &DecompositionQuery,
    budget: &OracleBudget,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<usize> {
    check_query(query)?;
    budget.check_arcs(digraph)?;
    let mut count = 0;
    let mut search = Search::new(digraph, *query, budget);
    search.run(0, &mut |assignment| {
        count += 1;
        visit(assignment)
    })?;
    Ok(count)
}

/// Vertices of a subset bitmask, for callers of the subset enumerations.
pub fn mask_members(mask: u32) -> Vec<VertexId> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}
