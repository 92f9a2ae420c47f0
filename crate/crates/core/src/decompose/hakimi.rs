use super::{Decomposition, DecompositionKind};
use crate::density::{DensityMode, DensityWitness};
use crate::digraph::Digraph;
use crate::error::{NdtError, Result};
use crate::flow::{max_flow, FlowNetwork, INFINITE};
use crate::Rational;

/// `k` pseudo-forests of the underlying graph, given as pseudo-branchings of a
/// reorientation that keeps arc ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HakimiDecomposition {
    /// `reversed[a]` iff arc `a` points the other way in the orientation.
    pub reversed: Vec<bool>,
    /// Decomposition of the reoriented digraph.
    pub decomposition: Decomposition,
}

/// Orients every edge so that in-degrees are at most `k` (one max flow), then
/// colours the arcs entering each vertex with distinct parts.
pub fn hakimi_pseudoforest_decompose(digraph: &Digraph, k: usize) -> Result<HakimiDecomposition> {
    if k == 0 {
        return Err(NdtError::InvalidParameter("k must be positive".into()));
    }
    let n = digraph.vertex_count();
    let m = digraph.arc_count();
    let source = 0;
    let sink = 1;
    let vertex_node = |v: usize| 2 + m + v;
    let mut net = FlowNetwork::new(2 + m + n, source, sink)?;
    let mut to_head = Vec::with_capacity(m);
    for (a, &(u, v)) in digraph.arcs().iter().enumerate() {
        net.add_edge(source, 2 + a, 1)?;
        to_head.push(net.add_edge(2 + a, vertex_node(v), INFINITE)?);
        net.add_edge(2 + a, vertex_node(u), INFINITE)?;
    }
    for v in 0..n {
        net.add_edge(vertex_node(v), sink, k as i64)?;
    }
    let res = max_flow(&net);
    if res.value < m as i64 {
        let h: Vec<usize> = (0..n)
            .filter(|&v| res.source_side[vertex_node(v)])
            .collect();
        return Err(NdtError::DensityExceeded {
            witness: DensityWitness::new(digraph, h, DensityMode::Mad)?,
            bound: Rational::from_integer(2 * k as i64),
        });
    }

    let reversed: Vec<bool> = to_head.iter().map(|&e| res.flows[e] == 0).collect();
    let oriented = digraph.reoriented(&reversed);
    let mut assignment = vec![0; m];
    for v in 0..n {
        for (colour, &a) in oriented.in_arcs(v).iter().enumerate() {
            assignment[a] = colour;
        }
    }
    let decomposition = Decomposition {
        parent: oriented,
        parts: k,
        assignment,
        kind: DecompositionKind::PseudoBranching,
    };
    debug_assert_eq!(decomposition.verify(None), Ok(()));
    Ok(HakimiDecomposition {
        reversed,
        decomposition,
    })
}
