//! Constructive colourings: consistent colourings of paths, cycles and
//! trees, combinators that colour strong products from factor colourings,
//! and the randomized palette reduction.
//!
//! Every routine returns the graph it coloured alongside the colouring, so
//! callers can hand both straight to the verifier. Advertised clustering
//! bounds are documented per routine; the verifier is always the ground
//! truth.

use crate::coloring::{
    check_consistency, ColoringError, ConsistentColoring, DefectParameter, EdgePartition,
    FractionalColoring,
};
use crate::graph::{complete, path, star, strong_product, Graph, GraphError, RootedTree};
use crate::seeding::derive_seed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConstructionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("needs at least {min} colour classes, got {k}")]
    TooFewClasses { k: usize, min: usize },
    #[error("cycle on {n} vertices is too short for k={k}; need n >= {min}")]
    CycleTooShort { n: usize, k: usize, min: usize },
    #[error("tree root {root} has degree {degree}, must be a leaf")]
    RootNotLeaf { root: usize, degree: usize },
    #[error("palette size mismatch: expected {expected}, got {got}")]
    PaletteMismatch { expected: usize, got: usize },
    #[error("input colouring is not consistent across edge ({u}, {v})")]
    NotConsistent { u: usize, v: usize },
    #[error("combined palettes leave no colours per vertex: q={q} + r={r} <= p={p}")]
    PigeonholeEmpty { p: usize, q: usize, r: usize },
    #[error("expected an ordinary colouring (q = 1), got q = {q}")]
    NotSimpleColoring { q: usize },
    #[error("no factor colourings given")]
    EmptyFactorList,
    #[error("palette size overflow while combining factors")]
    PaletteOverflow,
    #[error("tree has maximum degree {got}, bound is {bound}")]
    DegreeBoundExceeded { got: usize, bound: usize },
    #[error("inclusion density {x} is outside (0, 1]")]
    DensityOutOfRange { x: f64 },
    #[error("palette reduction left some vertex without colours after {attempts} attempts")]
    RetriesExhausted { attempts: u32 },
    #[error("colouring has clustering {measured}, claimed bound is {claimed}")]
    ClusteringExceeded { measured: usize, claimed: usize },
    #[error("no {needed} identically coloured leaf copies (best repetition: {best})")]
    PigeonholeFailed { needed: usize, best: usize },
    #[error("leaf and centre colourings clash at vertex pair ({u}, {v})")]
    ColoringClash { u: usize, v: usize },
}

/// Smallest palette colour absent from `tuple`, over the palette `0..=k`.
fn missing_color(tuple: &[usize], k: usize) -> usize {
    let mut present = vec![false; k + 1];
    for &c in tuple {
        present[c] = true;
    }
    present.iter().position(|&p| !p).expect("tuple has k of k+1 colours")
}

/// Consistent `(k+1 : k)`-colouring of the path on `n` vertices with
/// clustering at most `k`. Vertex 0 receives the tuple `(0, .., k-1)`; the
/// tuple sequence repeats with period `k (k+1)`.
pub fn consistent_path_coloring(n: usize, k: usize) -> Result<ConsistentColoring, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::TooFewClasses { k, min: 1 });
    }
    if n == 0 {
        return Err(ConstructionError::Graph(GraphError::EmptyGenerator));
    }
    let tree = RootedTree::new(path(n)?, 0).expect("a path is a tree");
    // Edge j (1-indexed, between vertices j-1 and j) goes to class
    // (k - j) mod k, the assignment that makes every k-th edge share a
    // class and pins down the exact tuple sequence.
    let partition = EdgePartition::new(
        k,
        (1..n).map(|j| ((j - 1, j), (k - (j % k)) % k)),
    )?;
    edge_partition_to_consistent(&tree, &partition)
}

/// Consistent `(k+1 : k)`-colouring of the cycle on `n` vertices with
/// clustering at most `k^2 + 3k - 1`. Requires `n >= k(k+1) + 1`: the
/// construction colours a prefix path whose endpoints share a tuple and
/// repeats that shared tuple around the remainder.
pub fn consistent_cycle_coloring(n: usize, k: usize) -> Result<ConsistentColoring, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::TooFewClasses { k, min: 1 });
    }
    let period = k * (k + 1);
    if n < period + 1 {
        return Err(ConstructionError::CycleTooShort {
            n,
            k,
            min: period + 1,
        });
    }
    // Largest m <= n with m ≡ 1 (mod k(k+1)); vertices m-1 and 0 then carry
    // the same tuple, so the leftover arc can repeat it safely.
    let m = 1 + period * ((n - 1) / period);
    let prefix = consistent_path_coloring(m, k)?;
    let mut tuples = prefix.tuples().to_vec();
    debug_assert_eq!(tuples[0], tuples[m - 1]);
    tuples.resize(n, tuples[m - 1].clone());
    Ok(ConsistentColoring::new(k + 1, k, tuples)?)
}

/// Turns an edge partition of a tree into a consistent `(k+1 : k)`-colouring.
///
/// The root (which must be a leaf) gets the tuple `(0, .., k-1)`. Walking
/// down an edge of class `i`, the child copies its parent's tuple with
/// position `i` replaced by the one palette colour the parent does not use.
/// Any full partition yields a consistent colouring; the partition's class
/// structure controls the clustering, since each monochromatic component
/// stays inside a component of the tree minus one class.
pub fn edge_partition_to_consistent(
    t: &RootedTree,
    partition: &EdgePartition,
) -> Result<ConsistentColoring, ConstructionError> {
    let root = t.root();
    let degree = t.graph().degree(root);
    if degree > 1 {
        return Err(ConstructionError::RootNotLeaf { root, degree });
    }
    partition.covers(t)?;
    let k = partition.class_count();
    let mut tuples = vec![Vec::new(); t.vertex_count()];
    tuples[root] = (0..k).collect();
    for v in t.bfs_order() {
        if v == root {
            continue;
        }
        let parent = t.parent(v).expect("non-root vertex has a parent");
        let class = partition
            .class_of(parent, v)
            .expect("coverage checked above");
        let mut tuple = tuples[parent].clone();
        tuple[class] = missing_color(&tuple, k);
        tuples[v] = tuple;
    }
    Ok(ConsistentColoring::new(k + 1, k, tuples)?)
}

/// Edge partition of a tree into `k` classes for
/// [`edge_partition_to_consistent`], aimed at bounded-degree trees.
///
/// The child-edges of a vertex at depth `i (mod k)` are spread over the
/// classes other than `i`, visited in increasing cyclic order starting just
/// past `i`, so each such class receives at least
/// `floor((deg - 1) / (k - 1))` of them. On a path this degenerates to edge
/// `j` taking class `j mod k`. Requires `k >= 2` and a leaf root.
pub fn bounded_degree_tree_partition(
    t: &RootedTree,
    k: usize,
) -> Result<EdgePartition, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::TooFewClasses { k, min: 2 });
    }
    let root = t.root();
    let degree = t.graph().degree(root);
    if degree > 1 {
        return Err(ConstructionError::RootNotLeaf { root, degree });
    }
    let mut assignments = Vec::with_capacity(t.vertex_count().saturating_sub(1));
    for v in t.bfs_order() {
        let i = t.depth(v) % k;
        for (idx, child) in t.children(v).into_iter().enumerate() {
            let class = (i + 1 + idx % (k - 1)) % k;
            debug_assert_ne!(class, i);
            assignments.push(((v, child), class));
        }
    }
    Ok(EdgePartition::new(k, assignments)?)
}

/// Clustering value advertised for colourings built from
/// [`bounded_degree_tree_partition`] on a tree of maximum degree `delta`:
/// `1` for `k = 1`, `k` when `ceil((k-2)(delta-1) / (k-1)) = 1`, and the
/// geometric sum `1 + D + .. + D^(k-1)` of that ceiling `D` otherwise.
///
/// Treat this as a target, not a certificate. Paths meet it exactly, but on
/// branching trees a vertex at depth `i (mod k)` keeps all of its child
/// edges when class `i` is removed, so the remaining components re-branch
/// every `k` levels and the measured clustering can grow with the tree
/// height (complete binary trees with `k = 3` measure 3, 5, 7, 11, .. while
/// the value here stays 3). For `k = 2` the value collapses to 1, which no
/// edge partition can deliver on a tree with an edge. Callers should verify
/// measured clustering instead of trusting this value off the path case.
pub fn tree_partition_clustering_bound(k: u64, delta: u64) -> u64 {
    if k == 1 {
        return 1;
    }
    let d = ((k - 2) * delta.saturating_sub(1)).div_ceil(k - 1);
    if d == 1 {
        return k;
    }
    let mut sum: u64 = 0;
    let mut power: u64 = 1;
    for _ in 0..k {
        sum = sum.saturating_add(power);
        power = power.saturating_mul(d);
    }
    sum
}

fn check_cover(g: &Graph, f: &FractionalColoring) -> Result<(), ConstructionError> {
    if f.vertex_count() != g.vertex_count() {
        return Err(ConstructionError::Coloring(ColoringError::LengthMismatch {
            got: f.vertex_count(),
            expected: g.vertex_count(),
        }));
    }
    Ok(())
}

/// Colours the strong product of the factors by the product of their
/// colourings: vertex `(v_1, .., v_d)` receives every tuple of factor
/// colours, flattened left-to-right (`(a, b)` becomes `a * p_2 + b`). The
/// result is a `(prod p_i : prod q_i)`-colouring whose clustering is at
/// most the product of the factor clusterings, with equality when each
/// factor attains its clustering. Colours decode via
/// [`decode_product_color`].
pub fn tensor_coloring(
    factors: &[(&Graph, &FractionalColoring)],
) -> Result<(Graph, FractionalColoring), ConstructionError> {
    let ((g0, f0), rest) = factors.split_first().ok_or(ConstructionError::EmptyFactorList)?;
    check_cover(g0, f0)?;
    let mut graph = (*g0).clone();
    let mut coloring = (*f0).clone();
    for &(h, b) in rest {
        check_cover(h, b)?;
        let p = coloring
            .p()
            .checked_mul(b.p())
            .ok_or(ConstructionError::PaletteOverflow)?;
        let q = coloring
            .q()
            .checked_mul(b.q())
            .ok_or(ConstructionError::PaletteOverflow)?;
        let product = strong_product(&graph, h)?;
        let nh = h.vertex_count();
        let mut assign = Vec::with_capacity(product.vertex_count());
        for va in 0..graph.vertex_count() {
            for vb in 0..nh {
                let mut set = Vec::with_capacity(q);
                for &a in coloring.set(va) {
                    for &c in b.set(vb) {
                        set.push(a * b.p() + c);
                    }
                }
                assign.push(set);
            }
        }
        graph = product;
        coloring = FractionalColoring::new(p, q, assign)?;
    }
    Ok((graph, coloring))
}

/// Splits a flattened product colour back into per-factor colours, given
/// the factor palette sizes in order.
pub fn decode_product_color(mut id: usize, palettes: &[usize]) -> Vec<usize> {
    let mut digits = vec![0usize; palettes.len()];
    for (slot, &p) in digits.iter_mut().zip(palettes).rev() {
        *slot = id % p;
        id /= p;
    }
    digits
}

/// Colours `G ⊠ K_t` by giving the whole clique copy of each vertex that
/// vertex's colours: a `(p:q)`-colouring whose clustering is `t` times the
/// input clustering. `t = 1` returns the input colouring unchanged.
pub fn blow_up(
    g: &Graph,
    f: &FractionalColoring,
    t: usize,
) -> Result<(Graph, FractionalColoring), ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::Graph(GraphError::EmptyGenerator));
    }
    let kt = complete(t)?;
    let ones = FractionalColoring::simple(1, vec![0; t])?;
    tensor_coloring(&[(g, f), (&kt, &ones)])
}

/// Combines a consistent `(p:q)`-colouring of `G` with a `(q:r)`-colouring
/// of `H` into a `(p:r)`-colouring of `G ⊠ H`: vertex `(x, v)` selects the
/// entries of `x`'s tuple at the positions named by `v`'s colours.
/// Clustering is at most the product of the two input clusterings.
pub fn consistent_combine(
    g: &Graph,
    a: &ConsistentColoring,
    h: &Graph,
    b: &FractionalColoring,
) -> Result<(Graph, FractionalColoring), ConstructionError> {
    if a.vertex_count() != g.vertex_count() {
        return Err(ConstructionError::Coloring(ColoringError::LengthMismatch {
            got: a.vertex_count(),
            expected: g.vertex_count(),
        }));
    }
    check_cover(h, b)?;
    if b.p() != a.q() {
        return Err(ConstructionError::PaletteMismatch {
            expected: a.q(),
            got: b.p(),
        });
    }
    if let Some(v) = check_consistency(g, a)? {
        return Err(ConstructionError::NotConsistent { u: v.u, v: v.v });
    }
    let product = strong_product(g, h)?;
    let nh = h.vertex_count();
    let mut assign = Vec::with_capacity(product.vertex_count());
    for x in 0..g.vertex_count() {
        let tuple = a.tuple(x);
        for v in 0..nh {
            assign.push(b.set(v).iter().map(|&i| tuple[i]).collect());
        }
    }
    let coloring = FractionalColoring::new(a.p(), b.q(), assign)?;
    Ok((product, coloring))
}

/// Combines a `(p:q)`- and a `(p:r)`-colouring over a shared palette into a
/// `(p : q+r-p)`-colouring of `G ⊠ H`: vertex `(u, v)` keeps the colours in
/// both endpoint sets, which number at least `q + r - p`, truncated to the
/// lowest `q + r - p` ids. Clustering is at most the product of the input
/// clusterings. Errors when `q + r <= p`.
pub fn pigeonhole_combine(
    g: &Graph,
    f: &FractionalColoring,
    h: &Graph,
    b: &FractionalColoring,
) -> Result<(Graph, FractionalColoring), ConstructionError> {
    check_cover(g, f)?;
    check_cover(h, b)?;
    if f.p() != b.p() {
        return Err(ConstructionError::PaletteMismatch {
            expected: f.p(),
            got: b.p(),
        });
    }
    let p = f.p();
    if f.q() + b.q() <= p {
        return Err(ConstructionError::PigeonholeEmpty {
            p,
            q: f.q(),
            r: b.q(),
        });
    }
    let q_out = f.q() + b.q() - p;
    let product = strong_product(g, h)?;
    let nh = h.vertex_count();
    let mut assign = Vec::with_capacity(product.vertex_count());
    for u in 0..g.vertex_count() {
        for v in 0..nh {
            let mut common: Vec<usize> = f
                .set(u)
                .iter()
                .copied()
                .filter(|&c| b.contains(v, c))
                .collect();
            debug_assert!(common.len() >= q_out);
            common.truncate(q_out);
            assign.push(common);
        }
    }
    let coloring = FractionalColoring::new(p, q_out, assign)?;
    Ok((product, coloring))
}

/// Extends an ordinary `k`-colouring of `G` with clustering `c` to a
/// `(k+1)`-colouring of `G ⊠ P_m` with clustering at most `c * k`: the
/// path copy of each vertex walks through the consistent path colouring at
/// the positions named by the `G`-colour.
pub fn multiply_path(
    g: &Graph,
    f: &FractionalColoring,
    m: usize,
) -> Result<(Graph, FractionalColoring), ConstructionError> {
    if f.q() != 1 {
        return Err(ConstructionError::NotSimpleColoring { q: f.q() });
    }
    check_cover(g, f)?;
    let k = f.p();
    let p = path(m)?;
    let a = consistent_path_coloring(m, k)?;
    let (_, combined) = consistent_combine(&p, &a, g, f)?;
    // combined lives on P ⊠ G; transpose the indexing onto G ⊠ P.
    let n = g.vertex_count();
    let product = strong_product(g, &p)?;
    let mut assign = Vec::with_capacity(n * m);
    for v in 0..n {
        for j in 0..m {
            assign.push(combined.set(j * n + v).to_vec());
        }
    }
    let coloring = FractionalColoring::new(k + 1, 1, assign)?;
    Ok((product, coloring))
}

/// Extends an ordinary `k`-colouring of `G` with clustering `c` to a
/// `(k+1)`-colouring of `G ⊠ T` for a tree `T` of maximum degree `delta`,
/// with clustering at most `c * delta^(k-1)` (for `delta >= 2`): vertex
/// `(v, w)` copies the [`multiply_path`] colour of `(v, x_depth(w))`.
///
/// Depths are measured after re-rooting `T` at its smallest-id leaf; a leaf
/// root caps every vertex of a monochromatic component's tree projection at
/// `delta - 1` children, which is what keeps the advertised bound sound.
pub fn multiply_tree(
    g: &Graph,
    f: &FractionalColoring,
    t: &RootedTree,
) -> Result<(Graph, FractionalColoring), ConstructionError> {
    if f.q() != 1 {
        return Err(ConstructionError::NotSimpleColoring { q: f.q() });
    }
    check_cover(g, f)?;
    let k = f.p();
    let tl = t.rerooted_at_leaf();
    let m = tl.height() + 1;
    let (_, on_path) = multiply_path(g, f, m)?;
    let nt = t.vertex_count();
    let product = strong_product(g, t.graph())?;
    let mut assign = Vec::with_capacity(g.vertex_count() * nt);
    for v in 0..g.vertex_count() {
        for w in 0..nt {
            assign.push(on_path.set(v * m + tl.depth(w)).to_vec());
        }
    }
    let coloring = FractionalColoring::new(k + 1, 1, assign)?;
    Ok((product, coloring))
}

/// Colours the strong product of `d` trees with `d + 1` colours by applying
/// [`multiply_tree`] repeatedly, starting from a proper 2-colouring of the
/// first tree by depth parity. Every tree after the first must have maximum
/// degree at most `delta`; the clustering is then at most
/// `delta^(d choose 2)`.
pub fn tree_product_coloring(
    trees: &[&RootedTree],
    delta: usize,
) -> Result<(Graph, FractionalColoring), ConstructionError> {
    let (first, rest) = trees.split_first().ok_or(ConstructionError::EmptyFactorList)?;
    let mut graph = first.graph().clone();
    let mut coloring = FractionalColoring::simple(
        2,
        (0..first.vertex_count()).map(|v| first.depth(v) % 2).collect(),
    )?;
    for t in rest {
        let got = t.graph().max_degree();
        if got > delta {
            return Err(ConstructionError::DegreeBoundExceeded { got, bound: delta });
        }
        let (g2, f2) = multiply_tree(&graph, &coloring, t)?;
        graph = g2;
        coloring = f2;
    }
    Ok((graph, coloring))
}

/// `(d+1)`-colouring of the `d`-fold strong power of the path on `n`
/// vertices with clustering at most `d!`: iterates [`multiply_path`]
/// starting from the alternating 2-colouring of the path. The graph matches
/// [`crate::graph::grid_product`] vertex for vertex.
pub fn hex_grid_coloring(n: usize, d: usize) -> Result<(Graph, FractionalColoring), ConstructionError> {
    if n == 0 || d == 0 {
        return Err(ConstructionError::Graph(GraphError::EmptyGenerator));
    }
    let mut graph = path(n)?;
    let mut coloring = FractionalColoring::simple(2, (0..n).map(|j| j % 2).collect())?;
    for _ in 1..d {
        let (g2, f2) = multiply_path(&graph, &coloring, n)?;
        graph = g2;
        coloring = f2;
    }
    Ok((graph, coloring))
}

/// Outcome of [`randomized_palette_reduction`]: the coloured product, the
/// achieved palette shape and how many samples were drawn.
#[derive(Clone, Debug)]
pub struct PaletteReduction {
    pub graph: Graph,
    pub coloring: FractionalColoring,
    pub achieved_p: usize,
    pub achieved_q: usize,
    pub attempts: u32,
}

/// Randomized sparsification of the tensor colouring of `G ⊠ H`: keeps each
/// colour pair `(i, j)` independently with probability `x` and colours
/// `(u, v)` by the kept pairs with `i ∈ f(u)`, `j ∈ b(v)`, truncated to the
/// minimum set size across vertices. With `x = 1` this reproduces
/// [`tensor_coloring`] exactly. Retries with fresh randomness (derived
/// deterministically from `seed`) when some vertex ends up with no colours,
/// and errors after `max_retries` extra attempts.
pub fn randomized_palette_reduction(
    g: &Graph,
    f: &FractionalColoring,
    h: &Graph,
    b: &FractionalColoring,
    x: f64,
    seed: u64,
    max_retries: u32,
) -> Result<PaletteReduction, ConstructionError> {
    check_cover(g, f)?;
    check_cover(h, b)?;
    if f.p() != b.p() {
        return Err(ConstructionError::PaletteMismatch {
            expected: f.p(),
            got: b.p(),
        });
    }
    if !(x > 0.0 && x <= 1.0) {
        return Err(ConstructionError::DensityOutOfRange { x });
    }
    let p = f.p();
    let product = strong_product(g, h)?;
    let nh = h.vertex_count();
    for attempt in 0..=max_retries {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, attempt as u64));
        let mut kept: Vec<(usize, usize)> = Vec::new();
        for i in 0..p {
            for j in 0..p {
                if x >= 1.0 || rng.gen::<f64>() < x {
                    kept.push((i, j));
                }
            }
        }
        let mut assign = Vec::with_capacity(product.vertex_count());
        let mut q_min = usize::MAX;
        for u in 0..g.vertex_count() {
            for v in 0..nh {
                let set: Vec<usize> = kept
                    .iter()
                    .enumerate()
                    .filter(|(_, &(i, j))| f.contains(u, i) && b.contains(v, j))
                    .map(|(id, _)| id)
                    .collect();
                q_min = q_min.min(set.len());
                assign.push(set);
            }
        }
        if product.vertex_count() > 0 && q_min == 0 {
            continue;
        }
        let q = if product.vertex_count() == 0 { 1 } else { q_min };
        for set in &mut assign {
            set.truncate(q);
        }
        let coloring = FractionalColoring::new(kept.len().max(1), q, assign)?;
        return Ok(PaletteReduction {
            graph: product,
            coloring,
            achieved_p: kept.len(),
            achieved_q: q,
            attempts: attempt + 1,
        });
    }
    Err(ConstructionError::RetriesExhausted {
        attempts: max_retries + 1,
    })
}

/// Converts an `l`-colouring of `G ⊠ K_{1,n}` (centre of the star is vertex
/// 0) with clustering at most `c` into an `l`-colouring of `G ⊠ P_m` with
/// clustering at most `c`, by alternating the colouring of `c` identically
/// coloured leaf copies with the centre copy's colouring along the path.
///
/// Large enough `n` (for instance `n >= c * l^|V(G)|`) guarantees the
/// identical copies exist; otherwise this reports a pigeonhole failure.
/// A clash between the two copy colourings would certify that the input's
/// clustering exceeded `c`, so it is reported as an error too.
pub fn star_to_path_transfer(
    g: &Graph,
    n_leaves: usize,
    f: &FractionalColoring,
    c: usize,
    m: usize,
) -> Result<(Graph, FractionalColoring), ConstructionError> {
    if f.q() != 1 {
        return Err(ConstructionError::NotSimpleColoring { q: f.q() });
    }
    if c == 0 {
        return Err(ConstructionError::ClusteringExceeded {
            measured: 1,
            claimed: 0,
        });
    }
    let s = star(n_leaves)?;
    let product = strong_product(g, &s)?;
    check_cover(&product, f)?;
    let report = crate::coloring::verify_coloring(&product, f, DefectParameter::ClusterSize)?;
    if report.clustering > c {
        return Err(ConstructionError::ClusteringExceeded {
            measured: report.clustering,
            claimed: c,
        });
    }
    let n = g.vertex_count();
    let copies = n_leaves + 1;
    let copy_pattern =
        |j: usize| -> Vec<usize> { (0..n).map(|v| f.set(v * copies + j)[0]).collect() };
    let centre = copy_pattern(0);
    let mut counts: std::collections::BTreeMap<Vec<usize>, usize> = std::collections::BTreeMap::new();
    for j in 1..=n_leaves {
        *counts.entry(copy_pattern(j)).or_insert(0) += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    let leaf = (1..=n_leaves)
        .map(copy_pattern)
        .find(|pat| counts[pat] >= c)
        .ok_or(ConstructionError::PigeonholeFailed { needed: c, best })?;
    for v in 0..n {
        if leaf[v] == centre[v] {
            return Err(ConstructionError::ColoringClash { u: v, v });
        }
    }
    for (u, v) in g.edges() {
        if leaf[u] == centre[v] || leaf[v] == centre[u] {
            return Err(ConstructionError::ColoringClash { u, v });
        }
    }
    let out_graph = strong_product(g, &path(m)?)?;
    let mut assign = Vec::with_capacity(n * m);
    for v in 0..n {
        for j in 0..m {
            assign.push(vec![if j % 2 == 0 { leaf[v] } else { centre[v] }]);
        }
    }
    let coloring = FractionalColoring::new(f.p(), 1, assign)?;
    Ok((out_graph, coloring))
}
