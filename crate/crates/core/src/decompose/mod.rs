//! Arc decompositions into branchings and pseudo-branchings.
//!
//! Part indices are 0-based: a decomposition into `k + 1` parts uses indices
//! `0..=k`, and the out-degree bounded part is always the last one.

mod frank;
mod hakimi;
mod ndt;
mod pseudo;

pub use frank::frank_decompose;
pub use hakimi::{hakimi_pseudoforest_decompose, HakimiDecomposition};
pub use ndt::ndt_branching_decompose;
pub use pseudo::{
    pseudo_ndt_decompose, DensityCertificate, PseudoOutcome, PseudoState, PseudoStats, TrailClosure,
};

use crate::digraph::{ArcId, Digraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecompositionKind {
    /// Every part has in-degree at most 1 and an acyclic underlying graph.
    Branching,
    /// Every part has in-degree at most 1.
    PseudoBranching,
}

impl DecompositionKind {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionKind::Branching => "branching",
            DecompositionKind::PseudoBranching => "pseudo-branching",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parent: Digraph,
    pub parts: usize,
    /// Part index of every arc, indexed by arc id.
    pub assignment: Vec<usize>,
    pub kind: DecompositionKind,
}

/// First defect found by [`verify_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    AssignmentLength {
        expected: usize,
        got: usize,
    },
    PartOutOfRange {
        arc: ArcId,
        part: usize,
        parts: usize,
    },
    /// Two arcs of one part share their head.
    InDegree {
        part: usize,
        vertex: VertexId,
        arcs: (ArcId, ArcId),
    },
    /// Arcs of one part forming a cycle of the underlying graph.
    Cycle {
        part: usize,
        arcs: Vec<ArcId>,
    },
    OutDegree {
        part: usize,
        vertex: VertexId,
        out_degree: usize,
        budget: usize,
    },
}

impl Decomposition {
    pub fn part_arcs(&self, part: usize) -> Vec<ArcId> {
        (0..self.assignment.len())
            .filter(|&a| self.assignment[a] == part)
            .collect()
    }

    pub fn part_out_degree(&self, part: usize, v: VertexId) -> usize {
        self.parent
            .out_arcs(v)
            .iter()
            .filter(|&&a| self.assignment[a] == part)
            .count()
    }

    pub fn part_in_degree(&self, part: usize, v: VertexId) -> usize {
        self.parent
            .in_arcs(v)
            .iter()
            .filter(|&&a| self.assignment[a] == part)
            .count()
    }

    pub fn part_max_out_degree(&self, part: usize) -> usize {
        (0..self.parent.vertex_count())
            .map(|v| self.part_out_degree(part, v))
            .max()
            .unwrap_or(0)
    }

    /// Root set of a part: its in-degree-0 vertices.
    pub fn roots(&self, part: usize) -> Vec<VertexId> {
        (0..self.parent.vertex_count())
            .filter(|&v| self.part_in_degree(part, v) == 0)
            .collect()
    }

    pub fn verify(&self, budget: Option<usize>) -> Result<(), Violation> {
        verify_decomposition(self, budget)
    }
}

struct Forest {
    parent: Vec<usize>,
}

impl Forest {
    fn new(n: usize) -> Self {
        Forest {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Arcs of the tree path between `from` and `to` in the forest spanned by `arcs`.
fn forest_path(digraph: &Digraph, arcs: &[ArcId], from: VertexId, to: VertexId) -> Vec<ArcId> {
    let n = digraph.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &a in arcs {
        let (u, v) = digraph.arc(a);
        adj[u].push((v, a));
        adj[v].push((u, a));
    }
    let mut via: Vec<Option<(VertexId, ArcId)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        if u == to {
            break;
        }
        for &(w, a) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                via[w] = Some((u, a));
                stack.push(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some((prev, a)) = via[cur] {
        path.push(a);
        cur = prev;
    }
    path.reverse();
    path
}

/// Checks totality, per-part in-degree, acyclicity for branchings, and the
/// out-degree budget of the last part when one is given.
pub fn verify_decomposition(dec: &Decomposition, budget: Option<usize>) -> Result<(), Violation> {
    let dg = &dec.parent;
    let m = dg.arc_count();
    if dec.assignment.len() != m {
        return Err(Violation::AssignmentLength {
            expected: m,
            got: dec.assignment.len(),
        });
    }
    if let Some(a) = (0..m).find(|&a| dec.assignment[a] >= dec.parts) {
        return Err(Violation::PartOutOfRange {
            arc: a,
            part: dec.assignment[a],
            parts: dec.parts,
        });
    }
    let n = dg.vertex_count();
    for part in 0..dec.parts {
        let mut entering: Vec<Option<ArcId>> = vec![None; n];
        let mut forest = Forest::new(n);
        let mut kept = Vec::new();
        for a in (0..m).filter(|&a| dec.assignment[a] == part) {
            let (u, v) = dg.arc(a);
            if let Some(prev) = entering[v] {
                return Err(Violation::InDegree {
                    part,
                    vertex: v,
                    arcs: (prev, a),
                });
            }
            entering[v] = Some(a);
            if dec.kind == DecompositionKind::Branching && !forest.union(u, v) {
                let mut cycle = forest_path(dg, &kept, v, u);
                cycle.push(a);
                return Err(Violation::Cycle { part, arcs: cycle });
            }
            kept.push(a);
        }
    }
    if let (Some(d), Some(last)) = (budget, dec.parts.checked_sub(1)) {
        for v in 0..n {
            let out = dec.part_out_degree(last, v);
            if out > d {
                return Err(Violation::OutDegree {
                    part: last,
                    vertex: v,
                    out_degree: out,
                    budget: d,
                });
            }
        }
    }
    Ok(())
}
