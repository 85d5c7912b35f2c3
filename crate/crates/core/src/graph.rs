//! Undirected graphs with integer-tuple vertex labels, graph products and
//! the generators for every instance family used by the constructions.
//!
//! Vertices are dense `0..n` ids. Labels carry coordinates (grid positions,
//! tree ids, product tuples) and are purely documentary: algorithms work on
//! ids, labels survive products by concatenation so a product vertex can be
//! decoded without bookkeeping on the caller's side.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on vertex counts for products and generators. Exceeding it is
/// reported as an error instead of attempting the allocation.
pub const MAX_VERTICES: usize = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph would have {requested} vertices, limit is {MAX_VERTICES}")]
    TooLarge { requested: u128 },
    #[error("edge ({u}, {v}) is out of range for {n} vertices")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("loop at vertex {v} is not allowed")]
    LoopEdge { v: usize },
    #[error("cycle needs at least 3 vertices, got {n}")]
    CycleTooSmall { n: usize },
    #[error("generator requires n >= 1")]
    EmptyGenerator,
    #[error("graph with {n} vertices and {edges} edges is not a tree")]
    NotATree { n: usize, edges: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("vertex {v} is out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("maximum degree {max_degree} cannot accommodate {n} tree vertices")]
    DegreeTooSmall { max_degree: usize, n: usize },
}

/// Simple undirected graph. Adjacency lists are kept sorted so membership
/// tests can binary-search and iteration order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    labels: Vec<Vec<i64>>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from per-vertex labels and an edge list. Duplicate
    /// edges collapse; loops and out-of-range endpoints are errors.
    pub fn from_edges(labels: Vec<Vec<i64>>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge {
                requested: n as u128,
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge { v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            labels,
            adj,
            edge_count: edge_count / 2,
        })
    }

    /// Graph on `n` vertices with no edges; vertex `i` is labelled `[i]`.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            labels: (0..n).map(|i| vec![i as i64]).collect(),
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self, v: usize) -> &[i64] {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.clear();
            queue.push(start);
            let mut comp = vec![start];
            while let Some(v) = queue.pop() {
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.connected_components().len() == 1
    }

    /// Components of the subgraph induced by `member`, same ordering rules
    /// as [`Graph::connected_components`].
    pub fn components_within(&self, member: &[bool]) -> Vec<Vec<usize>> {
        debug_assert_eq!(member.len(), self.vertex_count());
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for start in 0..self.vertex_count() {
            if !member[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            queue.clear();
            queue.push(start);
            let mut comp = vec![start];
            while let Some(v) = queue.pop() {
                for &w in self.neighbors(v) {
                    if member[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

fn checked_product_size(a: &Graph, b: &Graph) -> Result<usize, GraphError> {
    let n = a.vertex_count() as u128 * b.vertex_count() as u128;
    if n > MAX_VERTICES as u128 {
        return Err(GraphError::TooLarge { requested: n });
    }
    Ok(n as usize)
}

fn product_labels(a: &Graph, b: &Graph) -> Vec<Vec<i64>> {
    let mut labels = Vec::with_capacity(a.vertex_count() * b.vertex_count());
    for la in a.labels() {
        for lb in b.labels() {
            let mut l = la.clone();
            l.extend_from_slice(lb);
            labels.push(l);
        }
    }
    labels
}

/// Strong product: `(v,x)` and `(w,y)` are adjacent when each coordinate is
/// equal or adjacent and the pairs differ. Vertex `(v,x)` has id
/// `v * |V(B)| + x`, so nested products flatten associatively.
pub fn strong_product(a: &Graph, b: &Graph) -> Result<Graph, GraphError> {
    checked_product_size(a, b)?;
    let nb = b.vertex_count();
    let mut edges = Vec::new();
    for v in 0..a.vertex_count() {
        for x in 0..nb {
            let id = v * nb + x;
            // y > x keeps each edge once within a row; w > v covers the rest.
            for &y in b.neighbors(x).iter().filter(|&&y| y > x) {
                edges.push((id, v * nb + y));
            }
            for &w in a.neighbors(v).iter().filter(|&&w| w > v) {
                edges.push((id, w * nb + x));
                for &y in b.neighbors(x) {
                    edges.push((id, w * nb + y));
                }
            }
        }
    }
    Graph::from_edges(product_labels(a, b), &edges)
}

/// Cartesian product: one coordinate moves along an edge, the other is fixed.
pub fn cartesian_product(a: &Graph, b: &Graph) -> Result<Graph, GraphError> {
    checked_product_size(a, b)?;
    let nb = b.vertex_count();
    let mut edges = Vec::new();
    for v in 0..a.vertex_count() {
        for x in 0..nb {
            let id = v * nb + x;
            for &y in b.neighbors(x).iter().filter(|&&y| y > x) {
                edges.push((id, v * nb + y));
            }
            for &w in a.neighbors(v).iter().filter(|&&w| w > v) {
                edges.push((id, w * nb + x));
            }
        }
    }
    Graph::from_edges(product_labels(a, b), &edges)
}

/// Direct (tensor) product: both coordinates move along edges simultaneously.
pub fn direct_product(a: &Graph, b: &Graph) -> Result<Graph, GraphError> {
    checked_product_size(a, b)?;
    let nb = b.vertex_count();
    let mut edges = Vec::new();
    for v in 0..a.vertex_count() {
        for x in 0..nb {
            let id = v * nb + x;
            for &w in a.neighbors(v).iter().filter(|&&w| w > v) {
                for &y in b.neighbors(x) {
                    edges.push((id, w * nb + y));
                }
            }
        }
    }
    Graph::from_edges(product_labels(a, b), &edges)
}

/// `d`-fold strong power of `g`.
pub fn strong_power(g: &Graph, d: usize) -> Result<Graph, GraphError> {
    assert!(d >= 1, "strong power needs d >= 1");
    let mut acc = g.clone();
    for _ in 1..d {
        acc = strong_product(&acc, g)?;
    }
    Ok(acc)
}

/// Basic generator families exposed by the CLI.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasicKind {
    Path,
    Cycle,
    Complete,
    Star,
}

/// Path, cycle or complete graph on `n` vertices, or the star with `n`
/// leaves (centre is vertex 0, total `n + 1` vertices).
pub fn generate_basic(kind: BasicKind, n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGenerator);
    }
    match kind {
        BasicKind::Path => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edges((0..n).map(|i| vec![i as i64]).collect(), &edges)
        }
        BasicKind::Cycle => {
            if n < 3 {
                return Err(GraphError::CycleTooSmall { n });
            }
            let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            edges.push((n - 1, 0));
            Graph::from_edges((0..n).map(|i| vec![i as i64]).collect(), &edges)
        }
        BasicKind::Complete => {
            if n > MAX_VERTICES {
                return Err(GraphError::TooLarge {
                    requested: n as u128,
                });
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Graph::from_edges((0..n).map(|i| vec![i as i64]).collect(), &edges)
        }
        BasicKind::Star => {
            if n + 1 > MAX_VERTICES {
                return Err(GraphError::TooLarge {
                    requested: n as u128 + 1,
                });
            }
            let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
            Graph::from_edges((0..=n).map(|i| vec![i as i64]).collect(), &edges)
        }
    }
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    generate_basic(BasicKind::Path, n)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    generate_basic(BasicKind::Cycle, n)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    generate_basic(BasicKind::Complete, n)
}

pub fn star(leaves: usize) -> Result<Graph, GraphError> {
    generate_basic(BasicKind::Star, leaves)
}

/// A tree with a distinguished root plus the parent/depth arrays derived
/// from it. The underlying graph keeps its own vertex ids; re-rooting only
/// recomputes parents and depths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl RootedTree {
    /// Validates that `graph` is a tree (connected, `n - 1` edges) and roots
    /// it at `root`.
    pub fn new(graph: Graph, root: usize) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        if n == 0 || root >= n {
            return Err(GraphError::VertexOutOfRange { v: root, n });
        }
        if graph.edge_count() != n - 1 {
            return Err(GraphError::NotATree {
                n,
                edges: graph.edge_count(),
            });
        }
        if !graph.is_connected() {
            return Err(GraphError::NotConnected);
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut frontier = vec![root];
        while let Some(v) = frontier.pop() {
            for &w in graph.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    depth[w] = depth[v] + 1;
                    frontier.push(w);
                }
            }
        }
        Ok(RootedTree {
            graph,
            root,
            parent,
            depth,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Children of `v` in increasing id order.
    pub fn children(&self, v: usize) -> Vec<usize> {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.parent[w] == Some(v))
            .collect()
    }

    /// Vertices of degree <= 1 (the root counts if it has one child).
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.graph.degree(v) <= 1)
            .collect()
    }

    pub fn reroot(&self, new_root: usize) -> Result<Self, GraphError> {
        RootedTree::new(self.graph.clone(), new_root)
    }

    /// Re-roots at the smallest-id leaf. Identity when the root already is
    /// one. Single-vertex trees stay put.
    pub fn rerooted_at_leaf(&self) -> Self {
        if self.graph.degree(self.root) <= 1 {
            return self.clone();
        }
        let leaf = self
            .leaves()
            .into_iter()
            .next()
            .expect("a tree with >= 2 vertices has a leaf");
        self.reroot(leaf).expect("re-rooting a valid tree")
    }

    /// Vertices in breadth-first order from the root, children visited in
    /// increasing id order. Parents always precede children.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(self.root);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in self.children(v) {
                queue.push_back(w);
            }
        }
        order
    }
}

/// Complete `n`-ary tree of depth `k - 1` together with its closure, which
/// additionally joins every vertex to all of its ancestors.
///
/// For `n >= 2` the tree has `(n^k - 1) / (n - 1)` vertices; for `n = 1` it
/// is a path on `k` vertices. `k = 1` gives a single vertex either way.
pub fn generate_tree_closure(k: usize, n: usize) -> Result<(RootedTree, Graph), GraphError> {
    if k == 0 || n == 0 {
        return Err(GraphError::EmptyGenerator);
    }
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..k {
        total += level;
        if total > MAX_VERTICES as u128 {
            return Err(GraphError::TooLarge { requested: total });
        }
        level *= n as u128;
    }
    let total = total as usize;
    let labels: Vec<_> = (0..total).map(|i| vec![i as i64]).collect();
    let mut tree_edges = Vec::new();
    let mut parent = vec![None; total];
    // Ids are assigned level by level, so the root is 0 and children of the
    // queue front are the next unused ids.
    let mut next = 1usize;
    let mut frontier = vec![0usize];
    for _depth in 1..k {
        let mut next_frontier = Vec::new();
        for &v in &frontier {
            for _ in 0..n {
                tree_edges.push((v, next));
                parent[next] = Some(v);
                next_frontier.push(next);
                next += 1;
            }
        }
        frontier = next_frontier;
    }
    debug_assert_eq!(next, total);
    let tree = RootedTree::new(Graph::from_edges(labels.clone(), &tree_edges)?, 0)?;
    let mut closure_edges = tree_edges;
    for v in 0..total {
        // Ancestors strictly above the parent; the parent edge already exists.
        let mut a = parent[v].and_then(|p| parent[p]);
        while let Some(anc) = a {
            closure_edges.push((anc, v));
            a = parent[anc];
        }
    }
    let closure = Graph::from_edges(labels, &closure_edges)?;
    Ok((tree, closure))
}

/// Grid graph on `{0..n-1}^d`: distinct `v`, `w` are adjacent when
/// `w_i ∈ {v_i, v_i + 1}` for every coordinate, or symmetrically with the
/// roles of `v` and `w` swapped. For `d = 2` this is the triangulated grid.
pub fn generate_hex_grid(n: usize, d: usize) -> Result<Graph, GraphError> {
    if n == 0 || d == 0 {
        return Err(GraphError::EmptyGenerator);
    }
    let total = (n as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > MAX_VERTICES as u128 {
        return Err(GraphError::TooLarge { requested: total });
    }
    let total = total as usize;
    let mut labels = Vec::with_capacity(total);
    let mut coord = vec![0usize; d];
    for _ in 0..total {
        labels.push(coord.iter().map(|&c| c as i64).collect::<Vec<i64>>());
        for i in (0..d).rev() {
            coord[i] += 1;
            if coord[i] < n {
                break;
            }
            coord[i] = 0;
        }
    }
    let index = |c: &[usize]| c.iter().fold(0usize, |acc, &x| acc * n + x);
    let mut edges = Vec::new();
    // Each vertex emits edges to the "upper" neighbours (every coordinate
    // stays or increases by one, not all stay), which enumerates each edge
    // exactly once.
    let mut deltas = Vec::new();
    for mask in 1u32..(1 << d) {
        deltas.push(mask);
    }
    for (v, lbl) in labels.iter().enumerate() {
        let c: Vec<usize> = lbl.iter().map(|&x| x as usize).collect();
        'next_delta: for &mask in &deltas {
            let mut w = c.clone();
            for i in 0..d {
                if mask & (1 << i) != 0 {
                    w[i] += 1;
                    if w[i] >= n {
                        continue 'next_delta;
                    }
                }
            }
            edges.push((v, index(&w)));
        }
    }
    Graph::from_edges(labels, &edges)
}

/// `d`-fold strong power of the path on `n` vertices. Shares vertex order
/// and labelling with [`generate_hex_grid`], which it contains.
pub fn grid_product(n: usize, d: usize) -> Result<Graph, GraphError> {
    if n == 0 || d == 0 {
        return Err(GraphError::EmptyGenerator);
    }
    let total = (n as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > MAX_VERTICES as u128 {
        return Err(GraphError::TooLarge { requested: total });
    }
    strong_power(&path(n)?, d)
}

/// Random tree on `n` vertices with maximum degree at most `max_degree`,
/// rooted at vertex 0. Vertex `i` attaches to a uniformly random earlier
/// vertex that still has spare degree. Deterministic per seed.
pub fn random_bounded_degree_tree(
    n: usize,
    max_degree: usize,
    seed: u64,
) -> Result<RootedTree, GraphError> {
    use rand::{Rng, SeedableRng};
    if n == 0 {
        return Err(GraphError::EmptyGenerator);
    }
    if max_degree < 2 && n > 2 {
        return Err(GraphError::DegreeTooSmall { max_degree, n });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = Vec::new();
    if n > 1 {
        open.push(0);
    }
    let mut edges = Vec::new();
    for v in 1..n {
        let slot = rng.gen_range(0..open.len());
        let parent = open[slot];
        edges.push((parent, v));
        degree[parent] += 1;
        degree[v] += 1;
        if degree[parent] >= max_degree {
            open.swap_remove(slot);
        }
        if degree[v] < max_degree {
            open.push(v);
        }
        if open.is_empty() && v + 1 < n {
            return Err(GraphError::DegreeTooSmall { max_degree, n });
        }
    }
    RootedTree::new(
        Graph::from_edges((0..n).map(|i| vec![i as i64]).collect(), &edges)?,
        0,
    )
}

#[cfg(test)]
impl Graph {
    fn adj_degrees_all(&self, d: usize) -> bool {
        (0..self.vertex_count()).all(|v| self.degree(v) == d)
    }
}
