//! Integer maximum flow / minimum cut.
//!
//! Dinic's algorithm on an edge list. The reported cut side is the set of
//! nodes reachable from the source in the final residual network, which is the
//! unique inclusion-minimal source side over all minimum cuts.

use std::collections::VecDeque;

use crate::error::{NdtError, Result};

pub type Capacity = i64;

/// Stands in for an uncuttable edge. Large enough to dominate any finite cut
/// this crate builds, small enough that sums of a few of them do not overflow.
pub const INFINITE: Capacity = i64::MAX / 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowEdge {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    edges: Vec<FlowEdge>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes {
            return Err(NdtError::MalformedNetwork(format!(
                "terminal out of range ({source}, {sink}) for {nodes} nodes"
            )));
        }
        if source == sink {
            return Err(NdtError::MalformedNetwork("source equals sink".into()));
        }
        Ok(FlowNetwork {
            nodes,
            source,
            sink,
            edges: Vec::new(),
        })
    }

    /// Adds an edge and returns its index into [`MaxFlowResult::flows`].
    pub fn add_edge(&mut self, from: usize, to: usize, capacity: Capacity) -> Result<usize> {
        if from >= self.nodes || to >= self.nodes {
            return Err(NdtError::MalformedNetwork(format!(
                "edge {from}->{to} out of range for {} nodes",
                self.nodes
            )));
        }
        if capacity < 0 {
            return Err(NdtError::MalformedNetwork(format!(
                "negative capacity {capacity} on {from}->{to}"
            )));
        }
        self.edges.push(FlowEdge { from, to, capacity });
        Ok(self.edges.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn edges(&self) -> &[FlowEdge] {
        &self.edges
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlowResult {
    pub value: Capacity,
    /// Flow on each edge, indexed like [`FlowNetwork::edges`].
    pub flows: Vec<Capacity>,
    /// `source_side[v]` iff `v` is residual-reachable from the source.
    pub source_side: Vec<bool>,
}

impl MaxFlowResult {
    /// Total capacity of edges leaving the reported source side.
    pub fn cut_capacity(&self, net: &FlowNetwork) -> Capacity {
        net.edges
            .iter()
            .filter(|e| self.source_side[e.from] && !self.source_side[e.to])
            .map(|e| e.capacity)
            .sum()
    }
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<Capacity>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn build(net: &FlowNetwork) -> Self {
        let mut head = Vec::with_capacity(2 * net.edges.len());
        let mut cap = Vec::with_capacity(2 * net.edges.len());
        let mut adj = vec![Vec::new(); net.nodes];
        for e in &net.edges {
            adj[e.from].push(head.len());
            head.push(e.to);
            cap.push(e.capacity);
            adj[e.to].push(head.len());
            head.push(e.from);
            cap.push(0);
        }
        Residual { head, cap, adj }
    }

    fn levels(&self, source: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.adj.len()];
        level[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = level[u].map(|l| l + 1);
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && level[v].is_none() {
                    level[v] = next;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn augment(
        &mut self,
        u: usize,
        sink: usize,
        limit: Capacity,
        level: &[Option<usize>],
        cursor: &mut [usize],
    ) -> Capacity {
        if u == sink {
            return limit;
        }
        while cursor[u] < self.adj[u].len() {
            let e = self.adj[u][cursor[u]];
            let v = self.head[e];
            if self.cap[e] > 0 && level[v].is_some() && level[v] == level[u].map(|l| l + 1) {
                let pushed = self.augment(v, sink, limit.min(self.cap[e]), level, cursor);
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            cursor[u] += 1;
        }
        0
    }
}

pub fn max_flow(net: &FlowNetwork) -> MaxFlowResult {
    let mut residual = Residual::build(net);
    let mut value: Capacity = 0;
    loop {
        let level = residual.levels(net.source);
        if level[net.sink].is_none() {
            let source_side = level.iter().map(Option::is_some).collect();
            let flows = net
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| e.capacity - residual.cap[2 * i])
                .collect();
            return MaxFlowResult {
                value,
                flows,
                source_side,
            };
        }
        let mut cursor = vec![0; net.nodes];
        loop {
            let pushed = residual.augment(net.source, net.sink, INFINITE, &level, &mut cursor);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }
}
