use std::collections::BTreeMap;

use super::{Decomposition, DecompositionKind};
use crate::density::{density_threshold_test, DensityMode, DensityWitness};
use crate::digraph::{Digraph, VertexId};
use crate::error::{NdtError, Result};
use crate::flow::{max_flow, FlowNetwork};
use crate::Rational;

/// Does every vertex keep `need` arc-disjoint paths from `root` using only the
/// available arcs?
fn rooted_connectivity_at_least(
    nodes: usize,
    arcs: &[(VertexId, VertexId)],
    available: &[bool],
    root: VertexId,
    need: usize,
) -> bool {
    let mut multiplicity: BTreeMap<(VertexId, VertexId), i64> = BTreeMap::new();
    for (a, &arc) in arcs.iter().enumerate() {
        if available[a] {
            *multiplicity.entry(arc).or_default() += 1;
        }
    }
    (0..nodes).filter(|&v| v != root).all(|v| {
        let mut net = FlowNetwork::new(nodes, root, v).expect("root differs from v");
        for (&(u, w), &c) in &multiplicity {
            net.add_edge(u, w, c).expect("in range");
        }
        max_flow(&net).value >= need as i64
    })
}

/// Splits the arcs into `k` branchings.
///
/// A root `r` is added with `k - d⁻(v)` arcs into every vertex `v`, making all
/// in-degrees exactly `k`. The augmented digraph then packs `k` arc-disjoint
/// spanning `r`-arborescences, extracted one at a time: an arborescence grows
/// from `r` by any arc whose removal leaves every vertex with `k - i - 1`
/// arc-disjoint paths from `r`. Dropping `r` turns each arborescence into a
/// branching.
pub fn frank_decompose(digraph: &Digraph, k: usize) -> Result<Decomposition> {
    if k == 0 {
        return Err(NdtError::InvalidParameter("k must be positive".into()));
    }
    if let Some(v) = digraph.argmax_in_degree() {
        if digraph.in_degree(v) > k {
            return Err(NdtError::InDegreeExceeded {
                vertex: v,
                in_degree: digraph.in_degree(v),
                bound: k,
            });
        }
    }
    if let Some(h) = density_threshold_test(digraph, k as i64, 1, DensityMode::Arb)? {
        return Err(NdtError::DensityExceeded {
            witness: DensityWitness::new(digraph, h, DensityMode::Arb)?,
            bound: Rational::from_integer(k as i64),
        });
    }

    let n = digraph.vertex_count();
    let m = digraph.arc_count();
    let root = n;
    let mut arcs = digraph.arcs().to_vec();
    for v in 0..n {
        for _ in digraph.in_degree(v)..k {
            arcs.push((root, v));
        }
    }
    debug_assert_eq!(arcs.len(), k * n);

    let mut available = vec![true; arcs.len()];
    let mut assignment = vec![usize::MAX; m];
    for part in 0..k {
        let need = k - part - 1;
        let mut in_tree = vec![false; n + 1];
        in_tree[root] = true;
        for _ in 0..n {
            let mut rejected: Vec<(VertexId, VertexId)> = Vec::new();
            let mut picked = None;
            for a in 0..arcs.len() {
                let (t, h) = arcs[a];
                if !available[a] || !in_tree[t] || in_tree[h] || rejected.contains(&(t, h)) {
                    continue;
                }
                available[a] = false;
                if need == 0 || rooted_connectivity_at_least(n + 1, &arcs, &available, root, need) {
                    picked = Some(a);
                    break;
                }
                available[a] = true;
                rejected.push((t, h));
            }
            let a = picked.ok_or_else(|| {
                NdtError::Precondition(format!("arborescence {part} cannot be extended"))
            })?;
            in_tree[arcs[a].1] = true;
            if a < m {
                assignment[a] = part;
            }
        }
    }
    debug_assert!(available.iter().all(|&b| !b));

    let dec = Decomposition {
        parent: digraph.clone(),
        parts: k,
        assignment,
        kind: DecompositionKind::Branching,
    };
    debug_assert_eq!(dec.verify(None), Ok(()));
    Ok(dec)
}
