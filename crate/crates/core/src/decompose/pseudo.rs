//! `k + 1` pseudo-branchings with an out-degree bounded last part.
//!
//! The procedure works on the core left after peeling every vertex whose
//! in-degree is positive but at most `k`; in the core every vertex has
//! in-degree `0` or `k + 1`. Each head spreads its `k + 1` entering arcs over
//! all parts, and the residue `λ = Σ max(d⁺_last(v) - d, 0)` is driven to zero
//! by swaps along alternating trails. When no swap exists from an overloaded
//! vertex, the closure of all alternating trails from it is a vertex set whose
//! arc density exceeds `k + (d - k)/(d + 1)`, which is returned as a
//! certificate instead.

use std::collections::VecDeque;

use super::{Decomposition, DecompositionKind};
use crate::digraph::{ArcId, ArcSubset, Digraph, VertexId};
use crate::error::{NdtError, Result};
use crate::Rational;

/// A decomposition of a digraph into `k + 1` pseudo-branchings together with
/// the out-degrees of its last part.
#[derive(Debug, Clone)]
pub struct PseudoState {
    digraph: Digraph,
    k: usize,
    d: usize,
    assignment: Vec<usize>,
    last_out: Vec<usize>,
}

/// Union of all alternating trails from `root`.
///
/// Forward arcs belong to the last part and are walked tail to head; backward
/// arcs enter the head of the preceding forward arc and are walked head to
/// tail. Every arc has a fixed role (the only last-part arc entering a vertex
/// is the forward one), so the closure is a breadth-first search over arcs and
/// each arc is discovered once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrailClosure {
    pub root: VertexId,
    pub arcs: ArcSubset,
    /// `V(v₀)`, sorted.
    pub vertices: Vec<VertexId>,
    /// Vertices of the closure entered by some closure arc.
    pub z1: Vec<VertexId>,
    /// The remaining closure vertices.
    pub z2: Vec<VertexId>,
    /// Arc discovered just before each closure arc; `None` for arcs leaving
    /// the root and for arcs outside the closure.
    pub predecessor: Vec<Option<ArcId>>,
    /// First backward arc found whose tail has last-part out-degree below `d`.
    pub deficient: Option<ArcId>,
}

impl TrailClosure {
    /// The alternating trail ending in `arc`, reconstructed from predecessors.
    pub fn trail_to(&self, arc: ArcId) -> Vec<ArcId> {
        let mut trail = vec![arc];
        let mut cur = arc;
        while let Some(prev) = self.predecessor[cur] {
            trail.push(prev);
            cur = prev;
        }
        trail.reverse();
        trail
    }
}

/// A vertex set whose arc count proves `mad(D)/2 > bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityCertificate {
    pub vertices: Vec<VertexId>,
    /// Arcs of the trail closure, all inside `vertices`.
    pub arc_count: usize,
    /// `arc_count / |vertices|`.
    pub ratio: Rational,
    /// `k + (d - k)/(d + 1)`.
    pub bound: Rational,
    pub z1: Vec<VertexId>,
    pub z2: Vec<VertexId>,
}

impl DensityCertificate {
    /// Recounts the arcs induced by `vertices` in `digraph` and confirms the
    /// reported ratio and the violation.
    pub fn verify(&self, digraph: &Digraph) -> bool {
        let Ok(induced) = digraph.count_induced_arcs(&self.vertices) else {
            return false;
        };
        let size = self.vertices.len() as i64;
        size > 0
            && induced >= self.arc_count
            && self.ratio == Rational::new(self.arc_count as i64, size)
            && self.ratio > self.bound
            && Rational::new(induced as i64, size) > self.bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PseudoStats {
    pub peeled_vertices: usize,
    pub peeled_arcs: usize,
    pub initial_residue: usize,
    pub swaps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudoOutcome {
    Decomposed {
        decomposition: Decomposition,
        stats: PseudoStats,
    },
    Certificate(DensityCertificate),
}

impl PseudoState {
    /// Wraps an assignment of every arc to one of `k + 1` parts, each of which
    /// must have in-degree at most 1 everywhere.
    pub fn new(digraph: Digraph, k: usize, d: usize, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != digraph.arc_count() {
            return Err(NdtError::InvalidParameter(format!(
                "assignment has {} entries for {} arcs",
                assignment.len(),
                digraph.arc_count()
            )));
        }
        let mut seen = vec![vec![false; k + 1]; digraph.vertex_count()];
        let mut last_out = vec![0; digraph.vertex_count()];
        for (a, &part) in assignment.iter().enumerate() {
            let (u, v) = digraph.arc(a);
            if part > k {
                return Err(NdtError::InvalidParameter(format!(
                    "arc {a} assigned to part {part} of {}",
                    k + 1
                )));
            }
            if std::mem::replace(&mut seen[v][part], true) {
                return Err(NdtError::InvalidParameter(format!(
                    "part {part} enters vertex {v} twice"
                )));
            }
            if part == k {
                last_out[u] += 1;
            }
        }
        Ok(PseudoState {
            digraph,
            k,
            d,
            assignment,
            last_out,
        })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn last_part(&self) -> usize {
        self.k
    }

    pub fn last_out_degree(&self, v: VertexId) -> usize {
        self.last_out[v]
    }

    /// `λ = Σ_v max(d⁺_last(v) - d, 0)`.
    pub fn residue(&self) -> usize {
        self.last_out
            .iter()
            .map(|&o| o.saturating_sub(self.d))
            .sum()
    }

    /// Smallest vertex whose last-part out-degree exceeds `d`.
    pub fn overloaded_vertex(&self) -> Option<VertexId> {
        (0..self.last_out.len()).find(|&v| self.last_out[v] > self.d)
    }

    fn in_last(&self, a: ArcId) -> bool {
        self.assignment[a] == self.k
    }

    pub fn closure(&self, root: VertexId) -> TrailClosure {
        let dg = &self.digraph;
        let m = dg.arc_count();
        let n = dg.vertex_count();
        let mut arcs = ArcSubset::empty(m);
        let mut predecessor = vec![None; m];
        let mut deficient = None;
        let mut queue = VecDeque::new();

        for &a in dg.out_arcs(root) {
            if self.in_last(a) && arcs.insert(a) {
                queue.push_back(a);
            }
        }
        while let Some(a) = queue.pop_front() {
            if self.in_last(a) {
                let w = dg.head(a);
                for &b in dg.in_arcs(w) {
                    if b != a && arcs.insert(b) {
                        predecessor[b] = Some(a);
                        queue.push_back(b);
                    }
                }
            } else {
                let x = dg.tail(a);
                if deficient.is_none() && self.last_out[x] < self.d {
                    deficient = Some(a);
                }
                for &c in dg.out_arcs(x) {
                    if self.in_last(c) && arcs.insert(c) {
                        predecessor[c] = Some(a);
                        queue.push_back(c);
                    }
                }
            }
        }

        let mut inside = vec![false; n];
        let mut entered = vec![false; n];
        inside[root] = true;
        for a in arcs.iter() {
            let (u, v) = dg.arc(a);
            inside[u] = true;
            inside[v] = true;
            entered[v] = true;
        }
        let vertices: Vec<VertexId> = (0..n).filter(|&v| inside[v]).collect();
        let z1 = vertices.iter().copied().filter(|&v| entered[v]).collect();
        let z2 = vertices.iter().copied().filter(|&v| !entered[v]).collect();
        TrailClosure {
            root,
            arcs,
            vertices,
            z1,
            z2,
            predecessor,
            deficient,
        }
    }

    /// Checks the closure properties: every last-part arc leaving the root is
    /// inside; a vertex entered by a closure arc has all its entering arcs
    /// inside; a vertex left by a closure arc has all its last-part leaving
    /// arcs inside.
    pub fn check_closure(&self, closure: &TrailClosure) -> std::result::Result<(), String> {
        let dg = &self.digraph;
        let last_out_inside = |v: VertexId| {
            dg.out_arcs(v)
                .iter()
                .all(|&a| !self.in_last(a) || closure.arcs.contains(a))
        };
        if !last_out_inside(closure.root) {
            return Err(format!(
                "last-part arc out of root {} missing",
                closure.root
            ));
        }
        for &v in &closure.vertices {
            let entered = dg.in_arcs(v).iter().any(|&a| closure.arcs.contains(a));
            if entered && !dg.in_arcs(v).iter().all(|&a| closure.arcs.contains(a)) {
                return Err(format!("arc entering {v} missing"));
            }
            let left = dg.out_arcs(v).iter().any(|&a| closure.arcs.contains(a));
            if left && !last_out_inside(v) {
                return Err(format!("last-part arc out of {v} missing"));
            }
        }
        Ok(())
    }

    /// Swaps along an alternating trail `f₁ b₁ f₂ b₂ …`: each forward arc
    /// `fᵢ` leaves the last part for the part of `bᵢ`, which joins the last
    /// part. In-degrees of every part are unchanged; the last-part out-degree
    /// drops at the trail's start and rises at its end.
    pub fn swap_along(&mut self, trail: &[ArcId]) -> Result<()> {
        let dg = &self.digraph;
        if trail.is_empty() || !trail.len().is_multiple_of(2) {
            return Err(NdtError::InvalidParameter(
                "trail must have a positive even number of arcs".into(),
            ));
        }
        let mut used = ArcSubset::empty(dg.arc_count());
        for (i, pair) in trail.chunks(2).enumerate() {
            let (f, b) = (pair[0], pair[1]);
            for a in [f, b] {
                if a >= dg.arc_count() {
                    return Err(NdtError::ArcOutOfRange {
                        arc: a,
                        m: dg.arc_count(),
                    });
                }
                if !used.insert(a) {
                    return Err(NdtError::InvalidParameter(format!("arc {a} repeats")));
                }
            }
            if !self.in_last(f) || self.in_last(b) || dg.head(f) != dg.head(b) {
                return Err(NdtError::InvalidParameter(format!(
                    "arcs {f}, {b} do not alternate"
                )));
            }
            if i > 0 && dg.tail(trail[2 * i - 1]) != dg.tail(f) {
                return Err(NdtError::InvalidParameter(format!(
                    "trail breaks before arc {f}"
                )));
            }
        }
        for pair in trail.chunks(2) {
            let (f, b) = (pair[0], pair[1]);
            let part = self.assignment[b];
            self.assignment[f] = part;
            self.assignment[b] = self.k;
            self.last_out[dg.tail(f)] -= 1;
            self.last_out[dg.tail(b)] += 1;
        }
        Ok(())
    }

    fn certificate(&self, closure: &TrailClosure) -> DensityCertificate {
        let size = closure.vertices.len() as i64;
        let arc_count = closure.arcs.len();
        let k = self.k as i64;
        let d = self.d as i64;
        debug_assert_eq!(arc_count, (self.k + 1) * closure.z1.len());
        debug_assert!(closure.z1.len() > self.d * closure.z2.len());
        DensityCertificate {
            vertices: closure.vertices.clone(),
            arc_count,
            ratio: Rational::new(arc_count as i64, size),
            bound: Rational::new(d * (k + 1), d + 1),
            z1: closure.z1.clone(),
            z2: closure.z2.clone(),
        }
    }
}

/// Decomposes into `k + 1` pseudo-branchings with `Δ⁺` of the last part at
/// most `d`, or returns a certificate that `mad(D)/2 > k + (d-k)/(d+1)`.
pub fn pseudo_ndt_decompose(digraph: &Digraph, k: usize, d: usize) -> Result<PseudoOutcome> {
    if k == 0 || d == 0 {
        return Err(NdtError::InvalidParameter(
            "k and d must be positive".into(),
        ));
    }
    if let Some(v) = digraph.argmax_in_degree() {
        if digraph.in_degree(v) > k + 1 {
            return Err(NdtError::InDegreeExceeded {
                vertex: v,
                in_degree: digraph.in_degree(v),
                bound: k + 1,
            });
        }
    }
    let n = digraph.vertex_count();
    let m = digraph.arc_count();

    // peel
    let mut active = ArcSubset::full(m);
    let mut in_degree: Vec<usize> = (0..n).map(|v| digraph.in_degree(v)).collect();
    let mut peeled: Vec<Vec<ArcId>> = Vec::new();
    while let Some(v) = (0..n).find(|&v| in_degree[v] > 0 && in_degree[v] <= k) {
        let arcs: Vec<ArcId> = digraph
            .in_arcs(v)
            .iter()
            .copied()
            .filter(|&a| active.contains(a))
            .collect();
        for &a in &arcs {
            active.remove(a);
        }
        in_degree[v] = 0;
        peeled.push(arcs);
    }
    let (core, core_map) = digraph.spanning_subdigraph(&active);

    let mut initial = vec![0; core.arc_count()];
    for v in 0..n {
        debug_assert!(core.in_degree(v) == 0 || core.in_degree(v) == k + 1);
        for (part, &a) in core.in_arcs(v).iter().enumerate() {
            initial[a] = part;
        }
    }
    let mut state = PseudoState::new(core, k, d, initial)?;
    let mut stats = PseudoStats {
        peeled_vertices: peeled.len(),
        peeled_arcs: m - active.len(),
        initial_residue: state.residue(),
        swaps: 0,
    };

    while let Some(root) = state.overloaded_vertex() {
        let closure = state.closure(root);
        debug_assert_eq!(state.check_closure(&closure), Ok(()));
        match closure.deficient {
            Some(last) => {
                let before = state.residue();
                let trail = closure.trail_to(last);
                state.swap_along(&trail)?;
                debug_assert_eq!(state.residue() + 1, before);
                stats.swaps += 1;
            }
            None => {
                let cert = state.certificate(&closure);
                debug_assert!(cert.verify(digraph));
                return Ok(PseudoOutcome::Certificate(cert));
            }
        }
    }

    // unpeel
    let mut assignment = vec![usize::MAX; m];
    for (local, &parent) in core_map.iter().enumerate() {
        assignment[parent] = state.assignment[local];
    }
    for arcs in peeled.iter().rev() {
        for (part, &a) in arcs.iter().enumerate() {
            assignment[a] = part;
        }
    }
    let decomposition = Decomposition {
        parent: digraph.clone(),
        parts: k + 1,
        assignment,
        kind: DecompositionKind::PseudoBranching,
    };
    debug_assert_eq!(decomposition.verify(Some(d)), Ok(()));
    Ok(PseudoOutcome::Decomposed {
        decomposition,
        stats,
    })
}
