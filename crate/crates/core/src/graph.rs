//! Base-graph representation, generators and explicit product construction.
//!
//! Base graphs are small by design (the closed forms do the heavy lifting),
//! so the representation is a plain sorted adjacency list. Explicit product
//! construction exists only for the oracle and is guarded by
//! [`crate::Caps::construction`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// A simple undirected graph on vertices `0..order`.
///
/// No loops, no multi-edges; adjacency lists are sorted and symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    order: usize,
    adj: Vec<Vec<u32>>,
    edges: usize,
}

impl Graph {
    /// Builds a graph from an explicit edge list, validating every entry.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parse("graph order must be at least 1".into()));
        }
        let mut adj = vec![Vec::new(); order];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if u >= order || v >= order {
                return Err(Error::Parse(format!(
                    "edge {idx} [{u}, {v}]: endpoint out of range for order {order}"
                )));
            }
            if u == v {
                return Err(Error::Parse(format!("edge {idx} [{u}, {v}]: loop")));
            }
            if adj[u].contains(&(v as u32)) {
                return Err(Error::Parse(format!("edge {idx} [{u}, {v}]: duplicate")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            order,
            adj,
            edges: edges.len(),
        })
    }

    /// The single-vertex graph.
    pub fn singleton() -> Self {
        Graph {
            order: 1,
            adj: vec![Vec::new()],
            edges: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// All edges as ordered pairs `u < v`.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for u in 0..self.order {
            for &v in &self.adj[u] {
                if (v as usize) > u {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Degree histogram: degree -> number of vertices with that degree.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for v in 0..self.order {
            *hist.entry(self.degree(v)).or_insert(0) += 1;
        }
        hist
    }

    /// `Some(q)` when every vertex has degree `q`.
    pub fn regularity(&self) -> Option<usize> {
        let q = self.degree(0);
        (1..self.order).all(|v| self.degree(v) == q).then_some(q)
    }

    pub fn is_complete(&self) -> bool {
        self.edges == self.order * (self.order - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// BFS distances from `src`; unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order];
        let mut queue = alloc::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let v = v as usize;
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Complement graph (used to reduce clique search to independence search).
    pub fn complement(&self) -> Graph {
        let n = self.order;
        let mut adj = vec![Vec::new(); n];
        let mut edges = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            for v in 0..n {
                if u != v && !self.has_edge(u, v) {
                    list.push(v as u32);
                    if u < v {
                        edges += 1;
                    }
                }
            }
        }
        Graph {
            order: n,
            adj,
            edges,
        }
    }
}

/// Graph diameter: `Diameter::Infinite` iff the graph is disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => write!(f, "infinity"),
        }
    }
}

/// Maximum eccentricity over all vertices, by all-pairs BFS.
pub fn diameter(g: &Graph) -> Diameter {
    let mut max = 0;
    for v in 0..g.order() {
        for d in g.bfs_distances(v) {
            if d == usize::MAX {
                return Diameter::Infinite;
            }
            max = max.max(d);
        }
    }
    Diameter::Finite(max)
}

/// Named generators for standard base graphs.
///
/// Degenerate parameters collapse to the natural simple graph:
/// `cycle:1`, `path:1` and `star:1` are the single vertex, `cycle:2` and
/// `star:2` are a single edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Star(usize),
    Petersen,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Cycle(n) => write!(f, "cycle:{n}"),
            Generator::Path(n) => write!(f, "path:{n}"),
            Generator::Complete(n) => write!(f, "complete:{n}"),
            Generator::Star(n) => write!(f, "star:{n}"),
            Generator::Petersen => write!(f, "petersen"),
        }
    }
}

/// Either a named generator or an explicit edge list with declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Named(Generator),
    EdgeList {
        order: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Named(g) => g.fmt(f),
            GraphSpec::EdgeList { order, edges } => {
                write!(f, "graph(order={order}, edges={})", edges.len())
            }
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    /// Parses generator strings such as `cycle:4`, `complete:2`, `petersen`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "petersen" {
            return Ok(GraphSpec::Named(Generator::Petersen));
        }
        let (name, param) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown graph spec `{s}`")))?;
        let n: usize = param
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator parameter `{param}` in `{s}`")))?;
        if n < 1 {
            return Err(Error::Parse(format!(
                "generator parameter must be at least 1 in `{s}`"
            )));
        }
        let gen = match name {
            "cycle" => Generator::Cycle(n),
            "path" => Generator::Path(n),
            "complete" => Generator::Complete(n),
            "star" => Generator::Star(n),
            _ => return Err(Error::Parse(format!("unknown generator `{name}`"))),
        };
        Ok(GraphSpec::Named(gen))
    }
}

/// Materializes a [`GraphSpec`] with canonical vertex labels `0..n-1`.
pub fn parse_graph(spec: &GraphSpec) -> Result<Graph> {
    match spec {
        GraphSpec::Named(gen) => Ok(generate(gen)),
        GraphSpec::EdgeList { order, edges } => Graph::from_edges(*order, edges),
    }
}

fn generate(gen: &Generator) -> Graph {
    match *gen {
        Generator::Cycle(n) => cycle(n),
        Generator::Path(n) => path(n),
        Generator::Complete(n) => complete(n),
        Generator::Star(n) => star(n),
        Generator::Petersen => petersen(),
    }
}

fn cycle(n: usize) -> Graph {
    match n {
        1 => Graph::singleton(),
        2 => complete(2),
        _ => {
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges).expect("cycle edges are valid")
        }
    }
}

fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges).expect("path edges are valid")
}

fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("complete edges are valid")
}

/// Star `K_{1,n-1}` on `n` vertices; vertex 0 is the center.
fn star(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::from_edges(n, &edges).expect("star edges are valid")
}

/// Petersen graph under the Kneser labeling: vertices are the 2-subsets of
/// `{0..4}` in lexicographic order, adjacent iff disjoint.
fn petersen() -> Graph {
    let mut subsets = Vec::new();
    for a in 0..5u8 {
        for b in (a + 1)..5 {
            subsets.push((a, b));
        }
    }
    let mut edges = Vec::new();
    for i in 0..subsets.len() {
        for j in (i + 1)..subsets.len() {
            let (a, b) = subsets[i];
            let (c, d) = subsets[j];
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(10, &edges).expect("petersen edges are valid")
}

/// Explicit generalized composition `H[G_1, ..., G_n]`: vertex `j` of `H`
/// is replaced by `G_j`, and all vertices of `G_i` are joined to all
/// vertices of `G_j` whenever `ij` is an edge of `H`. Part `j` occupies the
/// contiguous index block starting at the prefix sum of earlier orders.
pub fn hjoin_graph(h: &Graph, parts: &[Graph], cap: usize) -> Result<Graph> {
    assert_eq!(parts.len(), h.order(), "one part per vertex of H");
    let mut offsets = Vec::with_capacity(parts.len() + 1);
    let mut total = 0usize;
    for part in parts {
        offsets.push(total);
        total += part.order();
    }
    offsets.push(total);
    if total > cap {
        return Err(Error::Size {
            order: total as u128,
            cap,
        });
    }
    let mut edges = Vec::new();
    for (j, part) in parts.iter().enumerate() {
        let base = offsets[j];
        for (u, v) in part.edge_list() {
            edges.push((base + u, base + v));
        }
    }
    for (i, j) in h.edge_list() {
        for u in offsets[i]..offsets[i + 1] {
            for v in offsets[j]..offsets[j + 1] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(total, &edges)
}

/// Explicit lexicographic product `H[G]`.
///
/// Vertex `(x, y)` gets index `x * |V(G)| + y`; `(x1,y1) ~ (x2,y2)` iff
/// `x1 ~ x2` in `H`, or `x1 = x2` and `y1 ~ y2` in `G`.
pub fn lexicographic_product(h: &Graph, g: &Graph, cap: usize) -> Result<Graph> {
    let parts = vec![g.clone(); h.order()];
    hjoin_graph(h, &parts, cap)
}

/// Explicit iterated product `H^k[G]` (or `H^k` when `g` is `None`, with
/// the convention that the zeroth power is the single vertex).
pub fn power_graph(h: &Graph, k: u32, g: Option<&Graph>, cap: usize) -> Result<Graph> {
    let mut result = match g {
        Some(g) => g.clone(),
        None => Graph::singleton(),
    };
    if result.order() > cap {
        return Err(Error::Size {
            order: result.order() as u128,
            cap,
        });
    }
    for _ in 0..k {
        let next_order = (h.order() as u128) * (result.order() as u128);
        if next_order > cap as u128 {
            return Err(Error::Size {
                order: next_order,
                cap,
            });
        }
        result = lexicographic_product(h, &result, cap)?;
    }
    Ok(result)
}

/// Convenience: parse and materialize a generator string.
pub fn named(spec: &str) -> Graph {
    parse_graph(&spec.parse().expect("valid generator string")).expect("valid generator")
}

impl Graph {
    /// Human-readable short description, e.g. `order 10, 15 edges`.
    pub fn describe(&self) -> String {
        let mut s = format!("order {}, {} edges", self.order, self.edges);
        if let Some(q) = self.regularity() {
            s.push_str(&format!(", {q}-regular"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Caps;

    fn caps() -> usize {
        Caps::default().construction
    }

    #[test]
    fn cycle_4_is_2_regular() {
        let g = named("cycle:4");
        assert_eq!(g.order(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.regularity(), Some(2));
    }

    #[test]
    fn petersen_is_3_regular_on_15_edges() {
        let g = named("petersen");
        assert_eq!(g.order(), 10);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.regularity(), Some(3));
        assert!(g.is_connected());
        assert_eq!(diameter(&g), Diameter::Finite(2));
    }

    #[test]
    fn edge_list_k2() {
        let g = parse_graph(&GraphSpec::EdgeList {
            order: 2,
            edges: vec![(0, 1)],
        })
        .unwrap();
        assert_eq!(g, named("complete:2"));
    }

    #[test]
    fn edge_list_errors_name_the_offending_entry() {
        let loops = Graph::from_edges(3, &[(0, 1), (2, 2)]).unwrap_err();
        assert!(matches!(loops, Error::Parse(ref m) if m.contains("edge 1") && m.contains("loop")));
        let range = Graph::from_edges(2, &[(0, 3)]).unwrap_err();
        assert!(matches!(range, Error::Parse(ref m) if m.contains("out of range")));
        let dup = Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(dup, Error::Parse(ref m) if m.contains("duplicate")));
    }

    #[test]
    fn star_4_degrees() {
        let g = named("star:4");
        assert_eq!(g.order(), 4);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 1);
        let hist = g.degree_histogram();
        assert_eq!(hist.get(&3), Some(&1));
        assert_eq!(hist.get(&1), Some(&3));
    }

    #[test]
    fn product_of_k2_by_k2_is_k4() {
        let k2 = named("complete:2");
        let p = lexicographic_product(&k2, &k2, caps()).unwrap();
        assert_eq!(p, named("complete:4"));
    }

    #[test]
    #[allow(clippy::identity_op)]
    fn c4_k2_product_is_5_regular_order_8() {
        let p = lexicographic_product(&named("cycle:4"), &named("complete:2"), caps()).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.regularity(), Some(5));
        assert_eq!(p.edge_count(), 4 * 1 + 4 * 4);
    }

    #[test]
    fn c4_squared_k2_is_21_regular_order_32() {
        let inner = lexicographic_product(&named("cycle:4"), &named("complete:2"), caps()).unwrap();
        let p = lexicographic_product(&named("cycle:4"), &inner, caps()).unwrap();
        assert_eq!(p.order(), 32);
        // 5 neighbors inside the copy plus 2 * 8 across adjacent copies.
        assert_eq!(p.regularity(), Some(21));
    }

    #[test]
    fn power_graph_conventions() {
        let h = named("cycle:4");
        assert_eq!(power_graph(&h, 0, None, caps()).unwrap().order(), 1);
        assert_eq!(power_graph(&h, 1, None, caps()).unwrap(), h);
        let p2 = power_graph(&named("petersen"), 2, None, caps()).unwrap();
        assert_eq!(p2.order(), 100);
        assert_eq!(p2.regularity(), Some(33));
        let c4k2 = power_graph(&h, 2, Some(&named("complete:2")), caps()).unwrap();
        assert_eq!(c4k2.order(), 32);
    }

    #[test]
    fn power_matches_nested_products_vertex_by_vertex() {
        let h = named("cycle:4");
        let g = named("path:3");
        let via_power = power_graph(&h, 2, Some(&g), caps()).unwrap();
        let inner = lexicographic_product(&h, &g, caps()).unwrap();
        let nested = lexicographic_product(&h, &inner, caps()).unwrap();
        assert_eq!(via_power, nested);
    }

    #[test]
    fn construction_cap_is_enforced() {
        let h = named("complete:30");
        let err = power_graph(&h, 3, None, caps()).unwrap_err();
        assert!(matches!(err, Error::Size { .. }));
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&named("cycle:4")), Diameter::Finite(2));
        assert_eq!(diameter(&named("complete:5")), Diameter::Finite(1));
        assert_eq!(diameter(&named("cycle:6")), Diameter::Finite(3));
        let disconnected = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(diameter(&disconnected), Diameter::Infinite);
        // Power diameter collapses to the base diameter.
        let p = power_graph(&named("cycle:4"), 2, Some(&named("complete:2")), caps()).unwrap();
        assert_eq!(diameter(&p), Diameter::Finite(2));
    }

    #[test]
    fn spec_parsing_round_trips() {
        for s in ["cycle:4", "path:7", "complete:3", "star:5", "petersen"] {
            let spec: GraphSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("cycle".parse::<GraphSpec>().is_err());
        assert!("cycle:0".parse::<GraphSpec>().is_err());
        assert!("blorp:3".parse::<GraphSpec>().is_err());
    }

    #[test]
    fn hjoin_graph_blocks_and_joins() {
        // K2-join of K1 and K2 is the triangle.
        let h = named("complete:2");
        let joined = hjoin_graph(&h, &[named("complete:1"), named("complete:2")], caps()).unwrap();
        assert_eq!(joined, named("complete:3"));
    }
}
