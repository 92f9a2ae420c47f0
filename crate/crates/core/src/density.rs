//! Exact fractional arboricity and maximum average degree.
//!
//! Both quantities are maxima of a ratio over vertex sets of the underlying
//! multigraph (every arc is one edge, parallel and antiparallel arcs count
//! separately). The decision version "is there H beating p/q?" clears
//! denominators and becomes a max-weight closure problem, solved as a min cut
//! in a network with one node per arc. The optimisation version runs
//! Dinkelbach iterations on top of the decision oracle.

use num_traits::Zero;

use crate::digraph::{Digraph, VertexId};
use crate::error::{NdtError, Result};
use crate::flow::{max_flow, FlowNetwork, INFINITE};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DensityMode {
    /// `|A[H]| / (|H| - 1)`, defined for `|H| >= 2`.
    Arb,
    /// `2|A[H]| / |H|`, defined for `|H| >= 1`.
    Mad,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitness {
    pub vertices: Vec<VertexId>,
    pub ratio: Rational,
    pub mode: DensityMode,
}

impl DensityWitness {
    pub fn new(digraph: &Digraph, vertices: Vec<VertexId>, mode: DensityMode) -> Result<Self> {
        let ratio = ratio_of(digraph, &vertices, mode)?;
        Ok(DensityWitness {
            vertices,
            ratio,
            mode,
        })
    }

    /// Recomputes the ratio from the digraph and compares it with the stored one.
    pub fn is_consistent(&self, digraph: &Digraph) -> bool {
        ratio_of(digraph, &self.vertices, self.mode) == Ok(self.ratio)
    }
}

/// Density of `set` in the given mode.
pub fn ratio_of(digraph: &Digraph, set: &[VertexId], mode: DensityMode) -> Result<Rational> {
    let mask = digraph.mask(set)?;
    let size = mask.iter().filter(|&&b| b).count() as i64;
    let arcs = digraph.count_induced_arcs_mask(&mask) as i64;
    match mode {
        DensityMode::Arb if size >= 2 => Ok(Rational::new(arcs, size - 1)),
        DensityMode::Arb => Err(NdtError::TooFewVertices {
            needed: 2,
            got: size as usize,
        }),
        DensityMode::Mad if size >= 1 => Ok(Rational::new(2 * arcs, size)),
        DensityMode::Mad => Err(NdtError::TooFewVertices { needed: 1, got: 0 }),
    }
}

/// Maximises `arc_weight * |A[H]| - vertex_weight * |H|` over vertex sets H,
/// restricted to sets containing `forced` when given. Returns the optimum and
/// the inclusion-minimal maximiser (source side of the canonical cut).
fn max_closure(
    digraph: &Digraph,
    arc_weight: i64,
    vertex_weight: i64,
    forced: Option<VertexId>,
) -> (i64, Vec<VertexId>) {
    let n = digraph.vertex_count();
    let m = digraph.arc_count();
    // nodes: source, sink, arcs 2..2+m, vertices 2+m..
    let source = 0;
    let sink = 1;
    let vertex_node = |v: VertexId| 2 + m + v;
    let mut net = FlowNetwork::new(2 + m + n, source, sink).expect("valid terminals");
    for (a, &(u, v)) in digraph.arcs().iter().enumerate() {
        net.add_edge(source, 2 + a, arc_weight).expect("in range");
        net.add_edge(2 + a, vertex_node(u), INFINITE)
            .expect("in range");
        net.add_edge(2 + a, vertex_node(v), INFINITE)
            .expect("in range");
    }
    for v in 0..n {
        net.add_edge(vertex_node(v), sink, vertex_weight)
            .expect("in range");
    }
    if let Some(v) = forced {
        net.add_edge(source, vertex_node(v), INFINITE)
            .expect("in range");
    }
    let res = max_flow(&net);
    let chosen: Vec<VertexId> = (0..n)
        .filter(|&v| res.source_side[vertex_node(v)])
        .collect();
    let value = arc_weight
        * digraph.count_induced_arcs_mask(&digraph.mask(&chosen).unwrap()) as i64
        - vertex_weight * chosen.len() as i64;
    debug_assert_eq!(value, arc_weight * m as i64 - res.value);
    (value, chosen)
}

/// Best ARB-mode set for threshold `p/q`: maximises `q|A[H]| - p(|H| - 1)`
/// over `|H| >= 1` by forcing each vertex in turn. Ties go to the smallest
/// forced vertex.
fn best_arb_excess(digraph: &Digraph, p: i64, q: i64) -> (i64, Vec<VertexId>) {
    let mut best: Option<(i64, Vec<VertexId>)> = None;
    for v in 0..digraph.vertex_count() {
        let (value, set) = max_closure(digraph, q, p, Some(v));
        let excess = value + p;
        if best.as_ref().is_none_or(|(b, _)| excess > *b) {
            best = Some((excess, set));
        }
    }
    best.unwrap_or((0, Vec::new()))
}

fn check_threshold(q: i64) -> Result<()> {
    if q <= 0 {
        return Err(NdtError::InvalidParameter(format!(
            "threshold denominator must be positive, got {q}"
        )));
    }
    Ok(())
}

/// Returns some H whose density strictly exceeds `p/q`, or `None` if no set
/// does.
pub fn density_threshold_test(
    digraph: &Digraph,
    p: i64,
    q: i64,
    mode: DensityMode,
) -> Result<Option<Vec<VertexId>>> {
    check_threshold(q)?;
    let n = digraph.vertex_count();
    if p < 0 {
        // every admissible set has non-negative density
        let needed = if mode == DensityMode::Arb { 2 } else { 1 };
        return Ok((n >= needed).then(|| (0..n).collect()));
    }
    match mode {
        DensityMode::Arb => {
            for v in 0..n {
                let (value, set) = max_closure(digraph, q, p, Some(v));
                if value + p > 0 {
                    debug_assert!(set.len() >= 2);
                    return Ok(Some(set));
                }
            }
            Ok(None)
        }
        DensityMode::Mad => {
            let (value, set) = max_closure(digraph, 2 * q, p, None);
            Ok((value > 0).then_some(set))
        }
    }
}

/// `γ(D) = max |A[H]| / (|H| - 1)` over `|H| >= 2`, with a maximising set.
pub fn fractional_arboricity(digraph: &Digraph) -> Result<(Rational, DensityWitness)> {
    let n = digraph.vertex_count();
    if n < 2 {
        return Err(NdtError::TooFewVertices { needed: 2, got: n });
    }
    let mut set: Vec<VertexId> = (0..n).collect();
    let mut ratio = ratio_of(digraph, &set, DensityMode::Arb)?;
    loop {
        let (excess, candidate) = best_arb_excess(digraph, *ratio.numer(), *ratio.denom());
        if excess <= 0 {
            break;
        }
        let next = ratio_of(digraph, &candidate, DensityMode::Arb)?;
        debug_assert!(next > ratio);
        ratio = next;
        set = candidate;
    }
    let witness = DensityWitness {
        vertices: set,
        ratio,
        mode: DensityMode::Arb,
    };
    Ok((ratio, witness))
}

/// `mad(D) = max 2|A[H]| / |H|` over non-empty H, with a maximising set.
pub fn max_average_degree(digraph: &Digraph) -> Result<(Rational, DensityWitness)> {
    let n = digraph.vertex_count();
    if n == 0 {
        return Err(NdtError::TooFewVertices { needed: 1, got: 0 });
    }
    let mut set: Vec<VertexId> = (0..n).collect();
    let mut ratio = ratio_of(digraph, &set, DensityMode::Mad)?;
    loop {
        let (value, candidate) = max_closure(digraph, 2 * *ratio.denom(), *ratio.numer(), None);
        if value <= 0 || candidate.is_empty() {
            break;
        }
        let next = ratio_of(digraph, &candidate, DensityMode::Mad)?;
        debug_assert!(next > ratio);
        ratio = next;
        set = candidate;
    }
    debug_assert!(!ratio.is_zero() || digraph.arc_count() == 0);
    let witness = DensityWitness {
        vertices: set,
        ratio,
        mode: DensityMode::Mad,
    };
    Ok((ratio, witness))
}
