//! Extremal digraph families.
//!
//! Sharpness digraphs: `U = {u_0, …, u_{n-1}}` and disjoint `d`-sets `W_i`;
//! `u_{i+j} -> w` for every `w ∈ W_i` and `0 <= j <= k`, indices mod `n`.
//! Vertex `u_i` has id `i` and `W_i` occupies ids `n + d·i .. n + d·i + d`.
//! The glued digraph takes two copies and identifies both `u_0`; the first
//! copy keeps its ids, the shared vertex `u_0*` is id `0`, and vertex `x > 0`
//! of the second copy becomes `n + d·n + x - 1`.
//!
//! Tree family: `D_0` is one vertex; `D_{i+1}` hangs new in-neighbours on
//! every vertex of `D_i` until each has in-degree `k + 1`.

use crate::digraph::{Digraph, VertexId};
use crate::error::{NdtError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharpnessParams {
    pub k: usize,
    pub d: usize,
    pub n: usize,
}

impl SharpnessParams {
    pub fn new(k: usize, d: usize, n: usize) -> Result<Self> {
        let p = SharpnessParams { k, d, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.d == 0 {
            return Err(NdtError::InvalidParameter(
                "k and d must be positive".into(),
            ));
        }
        if self.n < self.k + 1 {
            return Err(NdtError::InvalidParameter(format!(
                "n = {} must be at least k + 1 = {}",
                self.n,
                self.k + 1
            )));
        }
        Ok(())
    }

    pub fn u(&self, i: usize) -> VertexId {
        i % self.n
    }

    /// Id of the `j`-th vertex of `W_i`.
    pub fn w(&self, i: usize, j: usize) -> VertexId {
        self.n + self.d * (i % self.n) + j
    }

    pub fn base_vertex_count(&self) -> usize {
        self.n + self.d * self.n
    }

    pub fn glued_vertex_count(&self) -> usize {
        2 * self.base_vertex_count() - 1
    }
}

fn base_arcs(p: &SharpnessParams) -> Vec<(VertexId, VertexId)> {
    let mut arcs = Vec::with_capacity(p.d * (p.k + 1) * p.n);
    for i in 0..p.n {
        for w in 0..p.d {
            for j in 0..=p.k {
                arcs.push((p.u(i + j), p.w(i, w)));
            }
        }
    }
    arcs
}

/// `D_0(k, d, n)`.
pub fn gen_sharp_base(p: &SharpnessParams) -> Result<Digraph> {
    p.validate()?;
    Digraph::new(p.base_vertex_count(), base_arcs(p))
}

/// The glued digraph `D(k, d, n)` and the id of the shared vertex `u_0*`.
pub fn gen_sharp_glued(p: &SharpnessParams) -> Result<(Digraph, VertexId)> {
    p.validate()?;
    let size = p.base_vertex_count();
    let second = |x: VertexId| if x == 0 { 0 } else { size + x - 1 };
    let base = base_arcs(p);
    let mut arcs = base.clone();
    arcs.extend(base.iter().map(|&(u, v)| (second(u), second(v))));
    Ok((Digraph::new(p.glued_vertex_count(), arcs)?, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeFamilyParams {
    pub k: usize,
    pub n: usize,
}

impl TreeFamilyParams {
    pub fn vertex_count(&self) -> usize {
        (0..=self.n).map(|i| (self.k + 1).pow(i as u32)).sum()
    }
}

/// `D_n(k)`; new vertices get consecutive ids, so `V(D_i)` is a prefix.
pub fn gen_tree_family(p: &TreeFamilyParams) -> Result<Digraph> {
    if p.k == 0 {
        return Err(NdtError::InvalidParameter("k must be positive".into()));
    }
    let mut in_degree = vec![0usize];
    let mut arcs = Vec::new();
    for _ in 0..p.n {
        let existing = in_degree.len();
        for v in 0..existing {
            while in_degree[v] < p.k + 1 {
                let leaf = in_degree.len();
                in_degree.push(0);
                arcs.push((leaf, v));
                in_degree[v] += 1;
            }
        }
    }
    Digraph::new(in_degree.len(), arcs)
}
