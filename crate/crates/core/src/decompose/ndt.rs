use super::{frank_decompose, Decomposition, DecompositionKind};
use crate::density::{density_threshold_test, DensityMode, DensityWitness};
use crate::digraph::{Digraph, VertexId};
use crate::error::{NdtError, Result};
use crate::hall::{extract_bounded_branching, HallInstance};
use crate::Rational;

/// `k + 1` branchings whose last part has out-degree at most `d`, for `d <= k`.
///
/// Requires `Δ⁻(D) <= k + 1` and `γ(D) <= d(k+1)/(d+1)`. The vertices of
/// in-degree `k + 1` form `T`; a branching covering `T` with out-degrees at
/// most `d` becomes the last part, and the rest (now of in-degree at most `k`)
/// is split into `k` branchings.
pub fn ndt_branching_decompose(digraph: &Digraph, k: usize, d: usize) -> Result<Decomposition> {
    if k == 0 || d == 0 {
        return Err(NdtError::InvalidParameter(
            "k and d must be positive".into(),
        ));
    }
    if d > k {
        return Err(NdtError::Unsupported { k, d });
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
    let (p, q) = ((d * (k + 1)) as i64, (d + 1) as i64);
    if let Some(h) = density_threshold_test(digraph, p, q, DensityMode::Arb)? {
        return Err(NdtError::DensityExceeded {
            witness: DensityWitness::new(digraph, h, DensityMode::Arb)?,
            bound: Rational::new(p, q),
        });
    }

    let full: Vec<VertexId> = (0..digraph.vertex_count())
        .filter(|&v| digraph.in_degree(v) == k + 1)
        .collect();
    if full.is_empty() {
        let mut dec = frank_decompose(digraph, k)?;
        dec.parts = k + 1;
        return Ok(dec);
    }

    let inst = HallInstance::uniform(digraph, &full, d as u64)?;
    let last = extract_bounded_branching(&inst)?;
    let (rest, arc_map) = digraph.without_arcs(&last);
    let inner = frank_decompose(&rest, k)?;

    let mut assignment = vec![k; digraph.arc_count()];
    for (local, &parent) in arc_map.iter().enumerate() {
        assignment[parent] = inner.assignment[local];
    }
    let dec = Decomposition {
        parent: digraph.clone(),
        parts: k + 1,
        assignment,
        kind: DecompositionKind::Branching,
    };
    debug_assert_eq!(dec.verify(Some(d)), Ok(()));
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn in_star_path() {
        // u=0 -> v=1 <- w=2
        let dg = Digraph::new(3, vec![(0, 1), (2, 1)]).unwrap();
        let dec = ndt_branching_decompose(&dg, 1, 1).unwrap();
        assert_eq!(dec.verify(Some(1)), Ok(()));
        assert_ne!(dec.assignment[0], dec.assignment[1]);
        assert_eq!(dec.part_in_degree(1, 1), 1);
    }

    #[test]
    fn three_cycle() {
        let dg = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let dec = ndt_branching_decompose(&dg, 2, 1).unwrap();
        assert_eq!(dec.verify(Some(1)), Ok(()));
    }

    #[test]
    fn empty_t_delegates() {
        let dg = Digraph::new(2, vec![(0, 1)]).unwrap();
        let dec = ndt_branching_decompose(&dg, 1, 1).unwrap();
        assert_eq!(dec.parts, 2);
        assert!(dec.part_arcs(1).is_empty());
    }

    #[test]
    fn rejections() {
        let dg = Digraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(
            ndt_branching_decompose(&dg, 1, 2),
            Err(NdtError::Unsupported { k: 1, d: 2 })
        );
        let tri = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(
            ndt_branching_decompose(&tri, 1, 1),
            Err(NdtError::DensityExceeded { .. })
        ));
        let star = Digraph::new(4, vec![(0, 3), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(
            ndt_branching_decompose(&star, 1, 1),
            Err(NdtError::InDegreeExceeded { vertex: 3, .. })
        ));
    }
}
