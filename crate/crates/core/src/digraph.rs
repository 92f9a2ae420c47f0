//! Loop-free multidigraphs with stable arc identities.
//!
//! Vertices are `0..n` and arcs are `0..m`; parallel arcs keep distinct ids so
//! a decomposition can be expressed as a map from arc id to part index.

use crate::error::{NdtError, Result};

pub type VertexId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
    in_arcs: Vec<Vec<ArcId>>,
    out_arcs: Vec<Vec<ArcId>>,
}

impl Digraph {
    /// Builds a digraph on `n` vertices; arc `i` is `arcs[i] = (tail, head)`.
    pub fn new(n: usize, arcs: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let mut in_arcs = vec![Vec::new(); n];
        let mut out_arcs = vec![Vec::new(); n];
        for (id, &(tail, head)) in arcs.iter().enumerate() {
            for v in [tail, head] {
                if v >= n {
                    return Err(NdtError::VertexOutOfRange { vertex: v, n });
                }
            }
            if tail == head {
                return Err(NdtError::Loop {
                    arc: id,
                    vertex: tail,
                });
            }
            out_arcs[tail].push(id);
            in_arcs[head].push(id);
        }
        Ok(Digraph {
            n,
            arcs,
            in_arcs,
            out_arcs,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Digraph {
            n,
            arcs: Vec::new(),
            in_arcs: vec![Vec::new(); n],
            out_arcs: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcId) -> (VertexId, VertexId) {
        self.arcs[a]
    }

    pub fn tail(&self, a: ArcId) -> VertexId {
        self.arcs[a].0
    }

    pub fn head(&self, a: ArcId) -> VertexId {
        self.arcs[a].1
    }

    /// Arcs with head `v`, in increasing id order.
    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_arcs[v]
    }

    /// Arcs with tail `v`, in increasing id order.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_arcs[v].len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_arcs[v].len()
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_arcs.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_arcs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Smallest vertex attaining the maximum in-degree, if any vertex exists.
    pub fn argmax_in_degree(&self) -> Option<VertexId> {
        (0..self.n).max_by_key(|&v| (self.in_degree(v), std::cmp::Reverse(v)))
    }

    /// Membership mask for `set`, rejecting out-of-range ids.
    pub fn mask(&self, set: &[VertexId]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in set {
            if v >= self.n {
                return Err(NdtError::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    /// `{ y ∉ X : y → x for some x ∈ X }`, sorted.
    pub fn in_neighbors(&self, set: &[VertexId]) -> Result<Vec<VertexId>> {
        let inside = self.mask(set)?;
        Ok(self.in_neighbors_of_mask(&inside))
    }

    pub(crate) fn in_neighbors_of_mask(&self, inside: &[bool]) -> Vec<VertexId> {
        let mut seen = vec![false; self.n];
        for (x, _) in inside.iter().enumerate().filter(|(_, &b)| b) {
            for &a in &self.in_arcs[x] {
                let y = self.tail(a);
                if !inside[y] {
                    seen[y] = true;
                }
            }
        }
        (0..self.n).filter(|&y| seen[y]).collect()
    }

    /// `{ z ∉ X : x → z for some x ∈ X }`, sorted.
    pub fn out_neighbors(&self, set: &[VertexId]) -> Result<Vec<VertexId>> {
        let inside = self.mask(set)?;
        let mut seen = vec![false; self.n];
        for (x, _) in inside.iter().enumerate().filter(|(_, &b)| b) {
            for &a in &self.out_arcs[x] {
                let z = self.head(a);
                if !inside[z] {
                    seen[z] = true;
                }
            }
        }
        Ok((0..self.n).filter(|&z| seen[z]).collect())
    }

    /// Number of arcs `u → v` with `u ∈ from` and `v ∈ to`, with multiplicity.
    pub fn count_arcs_between(&self, from: &[VertexId], to: &[VertexId]) -> Result<usize> {
        let from = self.mask(from)?;
        let to = self.mask(to)?;
        Ok(self.arcs.iter().filter(|&&(u, v)| from[u] && to[v]).count())
    }

    /// `|A[X]|`.
    pub fn count_induced_arcs(&self, set: &[VertexId]) -> Result<usize> {
        let inside = self.mask(set)?;
        Ok(self.count_induced_arcs_mask(&inside))
    }

    pub(crate) fn count_induced_arcs_mask(&self, inside: &[bool]) -> usize {
        self.arcs
            .iter()
            .filter(|&&(u, v)| inside[u] && inside[v])
            .count()
    }

    /// `D[X]`. Vertex `i` of the result is the `i`-th smallest element of `X`.
    pub fn induced_subdigraph(&self, set: &[VertexId]) -> Result<InducedSubdigraph> {
        let inside = self.mask(set)?;
        let vertices: Vec<VertexId> = (0..self.n).filter(|&v| inside[v]).collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut arcs = Vec::new();
        let mut arc_map = Vec::new();
        for (id, &(u, v)) in self.arcs.iter().enumerate() {
            if inside[u] && inside[v] {
                arcs.push((local[u], local[v]));
                arc_map.push(id);
            }
        }
        let digraph = Digraph::new(vertices.len(), arcs)?;
        Ok(InducedSubdigraph {
            digraph,
            vertices,
            arc_map,
        })
    }

    /// Spanning subdigraph keeping exactly the arcs in `keep`. Returns the new
    /// digraph and, for each of its arcs, the parent arc id.
    pub fn spanning_subdigraph(&self, keep: &ArcSubset) -> (Digraph, Vec<ArcId>) {
        let arc_map: Vec<ArcId> = keep.iter().collect();
        let arcs = arc_map.iter().map(|&a| self.arcs[a]).collect();
        let sub = Digraph::new(self.n, arcs).expect("subset of a valid digraph");
        (sub, arc_map)
    }

    /// `D - A0`.
    pub fn without_arcs(&self, removed: &ArcSubset) -> (Digraph, Vec<ArcId>) {
        self.spanning_subdigraph(&removed.complement())
    }

    /// Same arc ids, with arc `a` reversed whenever `reverse[a]` is set.
    pub fn reoriented(&self, reverse: &[bool]) -> Digraph {
        let arcs = self
            .arcs
            .iter()
            .zip(reverse)
            .map(|(&(u, v), &r)| if r { (v, u) } else { (u, v) })
            .collect();
        Digraph::new(self.n, arcs).expect("reversal keeps arcs loop-free")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubdigraph {
    pub digraph: Digraph,
    /// Parent vertex id of each local vertex.
    pub vertices: Vec<VertexId>,
    /// Parent arc id of each local arc.
    pub arc_map: Vec<ArcId>,
}

/// A set of arc ids of one parent digraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcSubset {
    bits: Vec<bool>,
    len: usize,
}

impl ArcSubset {
    pub fn empty(universe: usize) -> Self {
        ArcSubset {
            bits: vec![false; universe],
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        ArcSubset {
            bits: vec![true; universe],
            len: universe,
        }
    }

    pub fn from_arcs(universe: usize, arcs: impl IntoIterator<Item = ArcId>) -> Result<Self> {
        let mut set = ArcSubset::empty(universe);
        for a in arcs {
            if a >= universe {
                return Err(NdtError::ArcOutOfRange {
                    arc: a,
                    m: universe,
                });
            }
            set.insert(a);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, a: ArcId) -> bool {
        self.bits.get(a).copied().unwrap_or(false)
    }

    /// Returns whether the arc was newly inserted.
    pub fn insert(&mut self, a: ArcId) -> bool {
        let fresh = !self.bits[a];
        if fresh {
            self.bits[a] = true;
            self.len += 1;
        }
        fresh
    }

    /// Returns whether the arc was present.
    pub fn remove(&mut self, a: ArcId) -> bool {
        let present = self.bits[a];
        if present {
            self.bits[a] = false;
            self.len -= 1;
        }
        present
    }

    pub fn complement(&self) -> Self {
        ArcSubset {
            bits: self.bits.iter().map(|b| !b).collect(),
            len: self.bits.len() - self.len,
        }
    }

    /// Member ids in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(a, &b)| b.then_some(a))
    }

    pub fn to_vec(&self) -> Vec<ArcId> {
        self.iter().collect()
    }
}
