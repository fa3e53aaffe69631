//! Exact NP-hard invariants on small graphs.
//!
//! These are the brute-force side of every closed-form invariant: exactness
//! is the contract, speed is not. All searches require order <= 64 so the
//! candidate sets fit in one machine word.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::{Error, Result};

fn bitset_adjacency(g: &Graph, cap: usize) -> Result<Vec<u64>> {
    let n = g.order();
    if n > 64 || n > cap {
        return Err(Error::Size {
            order: n as u128,
            cap: cap.min(64),
        });
    }
    let mut adj = vec![0u64; n];
    for (u, v) in g.edge_list() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(adj)
}

/// Branch-and-bound maximum clique with a greedy-coloring upper bound.
///
/// Candidates are colored greedily (each color class is an independent set
/// of the candidate subgraph), so a vertex of color `c` can extend the
/// current clique to at most `size + c`; processing colors in decreasing
/// order makes that bound a valid cutoff for everything that remains.
fn max_clique_bitset(adj: &[u64], size: usize, cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut uncolored = cand;
    let mut color = 0usize;
    while uncolored != 0 {
        color += 1;
        let mut class = uncolored;
        while class != 0 {
            let v = class.trailing_zeros() as usize;
            class &= !(1 << v);
            class &= !adj[v];
            uncolored &= !(1 << v);
            order.push((v, color));
        }
    }
    let mut cand = cand;
    for &(v, c) in order.iter().rev() {
        if size + c <= *best {
            return;
        }
        max_clique_bitset(adj, size + 1, cand & adj[v], best);
        cand &= !(1 << v);
    }
}

/// Exact clique number for graphs of order <= `cap` (and <= 64).
pub fn clique_number(g: &Graph, cap: usize) -> Result<usize> {
    let adj = bitset_adjacency(g, cap)?;
    let n = g.order();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    max_clique_bitset(&adj, 0, all, &mut best);
    Ok(best)
}

/// Exact maximum independent set size, as the clique number of the
/// complement.
pub fn independence_number(g: &Graph, cap: usize) -> Result<usize> {
    clique_number(&g.complement(), cap)
}

/// Exact minimum vertex-cut size; `order - 1` for complete graphs, 0 for
/// disconnected input.
///
/// Each non-adjacent pair is separated by a unit-capacity vertex-split
/// flow, bounded by the best cut found so far.
pub fn vertex_connectivity(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.order();
    if n > cap {
        return Err(Error::Size {
            order: n as u128,
            cap,
        });
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut best = g.min_degree();
    for s in 0..n {
        for t in (s + 1)..n {
            if g.has_edge(s, t) {
                continue;
            }
            let flow = vertex_flow(g, s, t, best);
            best = best.min(flow);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// Max-flow between `s` and `t` in the vertex-split digraph, stopping once
/// the flow reaches `bound` (the caller only needs min(flow, bound)).
fn vertex_flow(g: &Graph, s: usize, t: usize, bound: usize) -> usize {
    let n = g.order();
    // Node 2v = in-copy, 2v+1 = out-copy. Residual graph as an edge list
    // with paired reverse edges.
    let mut heads: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut to: Vec<usize> = Vec::new();
    let mut capacity: Vec<u32> = Vec::new();
    let add_edge = |heads: &mut Vec<Vec<usize>>,
                    to: &mut Vec<usize>,
                    capacity: &mut Vec<u32>,
                    a: usize,
                    b: usize,
                    c: u32| {
        heads[a].push(to.len());
        to.push(b);
        capacity.push(c);
        heads[b].push(to.len());
        to.push(a);
        capacity.push(0);
    };
    let big = (n as u32) + 1;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        add_edge(&mut heads, &mut to, &mut capacity, 2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edge_list() {
        add_edge(&mut heads, &mut to, &mut capacity, 2 * u + 1, 2 * v, big);
        add_edge(&mut heads, &mut to, &mut capacity, 2 * v + 1, 2 * u, big);
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0usize;
    let mut parent_edge = vec![usize::MAX; 2 * n];
    while flow < bound {
        for p in parent_edge.iter_mut() {
            *p = usize::MAX;
        }
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(source);
        parent_edge[source] = usize::MAX - 1;
        let mut reached = false;
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in &heads[u] {
                let v = to[e];
                if capacity[e] > 0 && parent_edge[v] == usize::MAX {
                    parent_edge[v] = e;
                    if v == sink {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !reached {
            break;
        }
        // Unit augmentation along the path.
        let mut v = sink;
        while v != source {
            let e = parent_edge[v];
            capacity[e] -= 1;
            capacity[e ^ 1] += 1;
            v = to[e ^ 1];
        }
        flow += 1;
    }
    flow
}

/// Backtracking `k`-colorability check; test oracle for chromatic bounds.
pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    let n = g.order();
    let mut colors = vec![usize::MAX; n];
    fn assign(g: &Graph, colors: &mut [usize], v: usize, k: usize) -> bool {
        if v == g.order() {
            return true;
        }
        // Symmetry break: vertex v may only open one new color.
        let used = colors[..v].iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().all(|&u| colors[u as usize] != c) {
                colors[v] = c;
                if assign(g, colors, v + 1, k) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }
    assign(g, &mut colors, 0, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{lexicographic_product, named, power_graph};
    use crate::Caps;

    const CAP: usize = 64;

    #[test]
    fn independence_basics() {
        assert_eq!(independence_number(&named("cycle:5"), CAP).unwrap(), 2);
        assert_eq!(independence_number(&named("complete:4"), CAP).unwrap(), 1);
        assert_eq!(independence_number(&named("petersen"), CAP).unwrap(), 4);
        assert_eq!(independence_number(&named("star:6"), CAP).unwrap(), 5);
    }

    #[test]
    fn clique_basics() {
        assert_eq!(clique_number(&named("complete:4"), CAP).unwrap(), 4);
        assert_eq!(clique_number(&named("cycle:5"), CAP).unwrap(), 2);
        assert_eq!(clique_number(&named("petersen"), CAP).unwrap(), 2);
    }

    #[test]
    fn independence_of_squared_c5_is_multiplicative() {
        let c5 = named("cycle:5");
        let p = power_graph(&c5, 2, None, Caps::default().construction).unwrap();
        assert_eq!(independence_number(&p, CAP).unwrap(), 4);
        assert_eq!(clique_number(&p, CAP).unwrap(), 4);
    }

    #[test]
    fn connectivity_basics() {
        assert_eq!(vertex_connectivity(&named("cycle:4"), CAP).unwrap(), 2);
        assert_eq!(vertex_connectivity(&named("complete:4"), CAP).unwrap(), 3);
        assert_eq!(vertex_connectivity(&named("star:5"), CAP).unwrap(), 1);
        assert_eq!(vertex_connectivity(&named("path:4"), CAP).unwrap(), 1);
        assert_eq!(vertex_connectivity(&named("petersen"), CAP).unwrap(), 3);
        let disconnected = crate::graph::Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(vertex_connectivity(&disconnected, CAP).unwrap(), 0);
    }

    #[test]
    fn connectivity_of_squared_c4() {
        let c4 = named("cycle:4");
        let p = power_graph(&c4, 2, None, Caps::default().construction).unwrap();
        assert_eq!(vertex_connectivity(&p, CAP).unwrap(), 8);
    }

    #[test]
    fn connectivity_of_product_scales_with_inner_order() {
        // For non-complete factors the cut moves through whole copies.
        let c4 = named("cycle:4");
        let c5 = named("cycle:5");
        let p = lexicographic_product(&c4, &c5, Caps::default().construction).unwrap();
        assert_eq!(vertex_connectivity(&p, CAP).unwrap(), 5 * 2);
    }

    #[test]
    fn search_cap_is_enforced() {
        let big = named("cycle:40");
        assert!(independence_number(&big, 10).is_err());
    }

    #[test]
    fn colorability() {
        assert!(is_k_colorable(&named("petersen"), 3));
        assert!(!is_k_colorable(&named("petersen"), 2));
        assert!(is_k_colorable(&named("cycle:4"), 2));
        assert!(!is_k_colorable(&named("cycle:5"), 2));
        assert!(!is_k_colorable(&named("complete:5"), 4));
        assert!(is_k_colorable(&named("complete:5"), 5));
    }
}
