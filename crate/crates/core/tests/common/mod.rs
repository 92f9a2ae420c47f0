//! Generators and independent checkers shared by the integration targets.
#![allow(dead_code)]

use ndt_core::{DecompositionKind, Digraph, VertexId};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Loop-free multidigraph with `m` arcs; heads are drawn among vertices whose
/// in-degree is still below `max_in` (if given). Stops early once no head is
/// available.
pub fn random_digraph(r: &mut ChaCha8Rng, n: usize, m: usize, max_in: Option<usize>) -> Digraph {
    assert!(n >= 2);
    let mut indeg = vec![0usize; n];
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let open: Vec<VertexId> = (0..n)
            .filter(|&v| max_in.is_none_or(|c| indeg[v] < c))
            .collect();
        if open.is_empty() {
            break;
        }
        let head = open[r.gen_range(0..open.len())];
        let mut tail = r.gen_range(0..n - 1);
        if tail >= head {
            tail += 1;
        }
        indeg[head] += 1;
        arcs.push((tail, head));
    }
    Digraph::new(n, arcs).unwrap()
}

/// All loop-free simple digraphs on `n` vertices with at most `max_arcs` arcs.
pub fn all_simple_digraphs(n: usize, max_arcs: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .filter(|mask| mask.count_ones() as usize <= max_arcs)
        .map(|mask| {
            let arcs = (0..pairs.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| pairs[i])
                .collect();
            Digraph::new(n, arcs).unwrap()
        })
        .collect()
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Checks an assignment against the definitions directly: in-degree at most
/// one per part, no undirected cycle for branchings, last-part out-degree.
pub fn assignment_is_valid(
    dg: &Digraph,
    assignment: &[usize],
    parts: usize,
    kind: DecompositionKind,
    last_budget: Option<usize>,
) -> bool {
    let n = dg.vertex_count();
    if assignment.len() != dg.arc_count() || assignment.iter().any(|&p| p >= parts) {
        return false;
    }
    for p in 0..parts {
        let mut entered = vec![false; n];
        let mut parent: Vec<usize> = (0..n).collect();
        let mut out = vec![0usize; n];
        for (a, &(u, v)) in dg.arcs().iter().enumerate() {
            if assignment[a] != p {
                continue;
            }
            if entered[v] {
                return false;
            }
            entered[v] = true;
            out[u] += 1;
            if kind == DecompositionKind::Branching {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru == rv {
                    return false;
                }
                parent[ru] = rv;
            }
        }
        if p + 1 == parts {
            if let Some(d) = last_budget {
                if out.iter().any(|&o| o > d) {
                    return false;
                }
            }
        }
    }
    true
}

/// In-neighbours of `x` (a bitmask) lying outside `x`.
pub fn in_nbhd_mask(dg: &Digraph, x: u32) -> u32 {
    dg.arcs()
        .iter()
        .filter(|&&(u, v)| x & (1 << v) != 0 && x & (1 << u) == 0)
        .fold(0, |acc, &(u, _)| acc | (1 << u))
}

pub fn weight(mask: u32, f: &[u64]) -> u64 {
    (0..f.len())
        .filter(|&v| mask & (1 << v) != 0)
        .map(|v| f[v])
        .sum()
}

/// Every non-empty subset of `t` (bitmask), by enumeration.
pub fn subsets(t: u32) -> impl Iterator<Item = u32> {
    let mut sub = t;
    let mut done = t == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        sub = (sub - 1) & t;
        done = sub == 0;
        Some(out)
    })
}

/// The Hall-type condition by brute force over subsets of `t`.
pub fn hall_holds(dg: &Digraph, t: u32, f: &[u64]) -> bool {
    subsets(t).all(|x| weight(in_nbhd_mask(dg, x), f) >= x.count_ones() as u64)
}

pub fn to_mask(set: &[VertexId]) -> u32 {
    set.iter().fold(0, |acc, &v| acc | (1 << v))
}

/// Whether part `p` contains a directed path with `len` arcs.
pub fn has_directed_path(dg: &Digraph, assignment: &[usize], p: usize, len: usize) -> bool {
    let n = dg.vertex_count();
    // longest[v] = longest directed path in part p ending at v
    let mut longest = vec![0usize; n];
    for _ in 0..n {
        for (a, &(u, v)) in dg.arcs().iter().enumerate() {
            if assignment[a] == p {
                longest[v] = longest[v].max(longest[u] + 1).min(n);
            }
        }
    }
    longest.iter().any(|&l| l >= len)
}

/// Like [`random_digraph`] with in-degree cap `k + 1`, but heads prefer
/// vertices that are partly filled and tails prefer a few hubs, so vertices of
/// in-degree `k + 1` and high-out-degree tails are common.
pub fn skewed_digraph(r: &mut ChaCha8Rng, n: usize, m: usize, k: usize) -> Digraph {
    assert!(n >= 2);
    let hubs = 1 + n / 4;
    let mut indeg = vec![0usize; n];
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let open: Vec<VertexId> = (0..n).filter(|&v| indeg[v] <= k).collect();
        if open.is_empty() {
            break;
        }
        let partial: Vec<VertexId> = open.iter().copied().filter(|&v| indeg[v] > 0).collect();
        let pool = if !partial.is_empty() && r.gen_bool(0.7) {
            &partial
        } else {
            &open
        };
        let head = pool[r.gen_range(0..pool.len())];
        let tail = loop {
            let t = if r.gen_bool(0.6) {
                r.gen_range(0..hubs)
            } else {
                r.gen_range(0..n)
            };
            if t != head {
                break t;
            }
        };
        indeg[head] += 1;
        arcs.push((tail, head));
    }
    Digraph::new(n, arcs).unwrap()
}

/// Several vertices of in-degree `k + 1` whose highest-id in-arc comes from
/// vertex 0, so the default last part overloads vertex 0.
pub fn hub_digraph(r: &mut ChaCha8Rng, n: usize, full: usize, k: usize) -> Digraph {
    assert!(n >= 3);
    let mut arcs = Vec::new();
    let heads: Vec<VertexId> = (1..n).take(full).collect();
    for &h in &heads {
        for _ in 0..k {
            let t = loop {
                let t = r.gen_range(1..n);
                if t != h {
                    break t;
                }
            };
            arcs.push((t, h));
        }
    }
    arcs.extend(heads.iter().map(|&h| (0, h)));
    Digraph::new(n, arcs).unwrap()
}
