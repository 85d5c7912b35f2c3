//! Exact brute-force oracles for small graphs: chromatic number,
//! independence and clique numbers, clustered-colouring feasibility, the
//! exhaustive two-colouring crossing check on grids, fractional chromatic
//! bounds, a Shannon capacity lower bound and connected-graph enumeration.
//!
//! Everything here is exponential and guarded by an [`OracleBudget`]: a
//! vertex cap (bitset algorithms also cap at 64), a colour cap and a wall
//! clock limit checked periodically inside every search loop. These oracles
//! exist to check the constructions, so they share no code with them.

use crate::coloring::{ColoringError, DefectParameter, FractionalColoring};
use crate::graph::{strong_power, Graph, GraphError};
use num::rational::Ratio;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("graph has {n} vertices, oracle budget allows {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("{p} colours exceed the oracle budget of {max}")]
    TooManyColors { p: usize, max: usize },
    #[error("oracle exceeded its time budget of {limit:?}")]
    TimedOut { limit: Duration },
    #[error("exhaustive enumeration handles at most {max} vertices, got {n}")]
    EnumerationTooLarge { n: usize, max: usize },
    #[error("strong power exponent must be at least 1")]
    ZeroPower,
    #[error("witness colouring is not proper, its p/q is not an upper bound")]
    NotProper,
}

/// Resource limits for the exhaustive searches. Bitset-based oracles
/// additionally cap vertices at 64 and colours at 64 regardless of the
/// budget values.
#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_colors: usize,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 64,
            max_colors: 64,
            time_limit: Duration::from_secs(60),
        }
    }
}

/// Wall clock guard polled inside search loops. Checks the clock once per
/// 1024 ticks to keep the overhead negligible.
struct Ticker {
    deadline: Instant,
    limit: Duration,
    ticks: u32,
}

impl Ticker {
    fn new(limit: Duration) -> Self {
        Ticker {
            deadline: Instant::now() + limit,
            limit,
            ticks: 0,
        }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) && Instant::now() > self.deadline {
            return Err(OracleError::TimedOut { limit: self.limit });
        }
        Ok(())
    }
}

/// Adjacency as one u64 mask per vertex. Errors when the graph exceeds the
/// budget or the 64-vertex bitset limit.
fn bitset_adj(g: &Graph, budget: &OracleBudget) -> Result<Vec<u64>, OracleError> {
    let n = g.vertex_count();
    let max = budget.max_vertices.min(64);
    if n > max {
        return Err(OracleError::TooManyVertices { n, max });
    }
    let mut adj = vec![0u64; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(adj)
}

fn alpha_recurse(
    adj: &[u64],
    candidates: u64,
    current: usize,
    best: &mut usize,
    t: &mut Ticker,
) -> Result<(), OracleError> {
    t.tick()?;
    let remaining = candidates.count_ones() as usize;
    if current + remaining <= *best {
        return Ok(());
    }
    if candidates == 0 {
        *best = current;
        return Ok(());
    }
    // Pivot on the candidate with the most candidate neighbours; if even it
    // has none, the rest is an independent set and we can take all of it.
    let mut pivot = 0;
    let mut pivot_deg = usize::MAX;
    let mut bits = candidates;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let deg = (adj[v] & candidates).count_ones() as usize;
        if pivot_deg == usize::MAX || deg > pivot_deg {
            pivot = v;
            pivot_deg = deg;
        }
    }
    if pivot_deg == 0 {
        *best = (*best).max(current + remaining);
        return Ok(());
    }
    alpha_recurse(
        adj,
        candidates & !adj[pivot] & !(1u64 << pivot),
        current + 1,
        best,
        t,
    )?;
    alpha_recurse(adj, candidates & !(1u64 << pivot), current, best, t)
}

fn alpha_of(adj: &[u64], t: &mut Ticker) -> Result<usize, OracleError> {
    let n = adj.len();
    if n == 0 {
        return Ok(0);
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    alpha_recurse(adj, all, 0, &mut best, t)?;
    Ok(best)
}

/// Largest independent set size, by branch and bound.
pub fn independence_number(g: &Graph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let adj = bitset_adj(g, budget)?;
    alpha_of(&adj, &mut Ticker::new(budget.time_limit))
}

/// Largest clique size: the independence number of the complement.
pub fn clique_number(g: &Graph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let adj = bitset_adj(g, budget)?;
    let comp = complement_of(&adj);
    alpha_of(&comp, &mut Ticker::new(budget.time_limit))
}

fn complement_of(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    adj.iter()
        .enumerate()
        .map(|(v, &a)| !a & all & !(1u64 << v))
        .collect()
}

/// Colours used by already-coloured neighbours of `v`, as a bitmask.
fn neighbor_color_mask(adj: &[u64], colors: &[Option<usize>], v: usize) -> u64 {
    let mut mask = 0u64;
    let mut bits = adj[v];
    while bits != 0 {
        let w = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if let Some(c) = colors[w] {
            mask |= 1 << c;
        }
    }
    mask
}

/// Uncoloured vertex with the most distinct neighbour colours, ties broken
/// by uncoloured degree then by id. `None` when everything is coloured.
fn most_saturated(adj: &[u64], colors: &[Option<usize>]) -> Option<usize> {
    let mut best: Option<(u32, u32, usize)> = None;
    let uncolored: u64 = colors
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_none())
        .fold(0u64, |m, (v, _)| m | (1 << v));
    for v in 0..adj.len() {
        if colors[v].is_some() {
            continue;
        }
        let sat = neighbor_color_mask(adj, colors, v).count_ones();
        let deg = (adj[v] & uncolored).count_ones();
        let key = (sat, deg, usize::MAX - v);
        if best.is_none_or(|b| key > (b.0, b.1, usize::MAX - b.2)) {
            best = Some((sat, deg, v));
        }
    }
    best.map(|(_, _, v)| v)
}

/// Greedy DSATUR colouring; the number of colours it uses is an upper bound
/// for the chromatic number.
fn dsatur_greedy(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    while let Some(v) = most_saturated(adj, &colors) {
        let used = neighbor_color_mask(adj, &colors, v);
        let c = (!used).trailing_zeros() as usize;
        colors[v] = Some(c);
    }
    colors.into_iter().map(|c| c.expect("all coloured")).collect()
}

fn color_recurse(
    adj: &[u64],
    k: usize,
    colors: &mut Vec<Option<usize>>,
    colored: usize,
    used: usize,
    t: &mut Ticker,
) -> Result<bool, OracleError> {
    t.tick()?;
    if colored == adj.len() {
        return Ok(true);
    }
    let v = most_saturated(adj, colors).expect("some vertex is uncoloured");
    let forbidden = neighbor_color_mask(adj, colors, v);
    // Colour classes are interchangeable, so at most one previously unused
    // colour (the next index) needs to be tried.
    for c in 0..(used + 1).min(k) {
        if forbidden & (1 << c) != 0 {
            continue;
        }
        colors[v] = Some(c);
        if color_recurse(adj, k, colors, colored + 1, used.max(c + 1), t)? {
            return Ok(true);
        }
        colors[v] = None;
    }
    Ok(false)
}

fn k_colorable(adj: &[u64], k: usize, t: &mut Ticker) -> Result<Option<Vec<usize>>, OracleError> {
    let mut colors = vec![None; adj.len()];
    if color_recurse(adj, k, &mut colors, 0, 0, t)? {
        Ok(Some(colors.into_iter().map(|c| c.unwrap()).collect()))
    } else {
        Ok(None)
    }
}

/// Exact chromatic number: clique and `ceil(n / alpha)` lower bounds, a
/// DSATUR upper bound, then branch and bound on each candidate in between.
pub fn chromatic_number(g: &Graph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let adj = bitset_adj(g, budget)?;
    let n = adj.len();
    if n == 0 {
        return Ok(0);
    }
    let mut t = Ticker::new(budget.time_limit);
    let alpha = alpha_of(&adj, &mut t)?;
    let omega = alpha_of(&complement_of(&adj), &mut t)?;
    let lb = omega.max(n.div_ceil(alpha));
    let ub = dsatur_greedy(&adj).iter().max().map_or(0, |&c| c + 1);
    debug_assert!(lb <= ub);
    let max_colors = budget.max_colors.min(64);
    for k in lb..ub {
        if k > max_colors {
            return Err(OracleError::TooManyColors { p: k, max: max_colors });
        }
        if k_colorable(&adj, k, &mut t)?.is_some() {
            return Ok(k);
        }
    }
    if ub > max_colors {
        return Err(OracleError::TooManyColors { p: ub, max: max_colors });
    }
    Ok(ub)
}

/// Outcome of a feasibility search: a witness colouring or a proof by
/// exhaustion that none exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(FractionalColoring),
    Infeasible,
}

/// Size of the monochromatic component containing `v` if `v` were coloured
/// `c`, among `v` and the already-assigned vertices `0..assigned.len()`.
fn component_size_with(g: &Graph, assigned: &[usize], v: usize, c: usize) -> usize {
    let mut seen = vec![false; v + 1];
    seen[v] = true;
    let mut stack = vec![v];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if w < assigned.len() && assigned[w] == c && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count
}

fn clustered_recurse(
    g: &Graph,
    colors: usize,
    cmax: usize,
    assigned: &mut Vec<usize>,
    used: usize,
    t: &mut Ticker,
) -> Result<bool, OracleError> {
    t.tick()?;
    let v = assigned.len();
    if v == g.vertex_count() {
        return Ok(true);
    }
    for c in 0..(used + 1).min(colors) {
        if component_size_with(g, assigned, v, c) > cmax {
            continue;
        }
        assigned.push(c);
        if clustered_recurse(g, colors, cmax, assigned, used.max(c + 1), t)? {
            return Ok(true);
        }
        assigned.pop();
    }
    Ok(false)
}

/// Searches for an ordinary `colors`-colouring of `g` in which every
/// monochromatic component has at most `max_component` vertices. Vertices
/// are assigned in id order; a branch dies as soon as the component through
/// the newest vertex grows past the cap, which is exact because the final
/// component through its last-assigned member is always inspected whole.
pub fn clustered_feasibility(
    g: &Graph,
    colors: usize,
    max_component: usize,
    budget: &OracleBudget,
) -> Result<Feasibility, OracleError> {
    let n = g.vertex_count();
    let max = budget.max_vertices.min(64);
    if n > max {
        return Err(OracleError::TooManyVertices { n, max });
    }
    if n == 0 {
        return Ok(Feasibility::Feasible(FractionalColoring::simple(
            colors.max(1),
            vec![],
        )?));
    }
    if colors == 0 || max_component == 0 {
        return Ok(Feasibility::Infeasible);
    }
    let max_colors = budget.max_colors.min(64);
    if colors > max_colors {
        return Err(OracleError::TooManyColors {
            p: colors,
            max: max_colors,
        });
    }
    let mut t = Ticker::new(budget.time_limit);
    let mut assigned = Vec::with_capacity(n);
    if clustered_recurse(g, colors, max_component, &mut assigned, 0, &mut t)? {
        Ok(Feasibility::Feasible(FractionalColoring::simple(
            colors, assigned,
        )?))
    } else {
        Ok(Feasibility::Infeasible)
    }
}

/// Outcome of [`hex_lemma_check`]: either every 2-colouring had a
/// monochromatic crossing, or a colouring without one (which would refute
/// the crossing lemma on that grid).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HexCheck {
    Holds { colorings_checked: u64 },
    Counterexample { coloring: FractionalColoring },
}

/// Whether the vertices of `color` contain a connected crossing from
/// `axis = 0` to `axis = n-1`, where the axis of vertex `v` is coordinate
/// `coord` of its grid label.
fn has_crossing(g: &Graph, n: usize, mask: u64, color: u64, coord: usize) -> bool {
    let total = g.vertex_count();
    let member = |v: usize| (mask >> v) & 1 == color;
    let axis = |v: usize| g.label(v)[coord] as usize;
    let mut seen = vec![false; total];
    let mut stack: Vec<usize> = (0..total)
        .filter(|&v| member(v) && axis(v) == 0)
        .collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(v) = stack.pop() {
        if axis(v) == n - 1 {
            return true;
        }
        for &w in g.neighbors(v) {
            if member(w) && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Exhaustively checks every 2-colouring of the two-dimensional grid
/// `crate::graph::generate_hex_grid(n, 2)` for a monochromatic crossing:
/// colour 0 spanning the second coordinate or colour 1 spanning the first.
pub fn hex_lemma_check(n: usize, budget: &OracleBudget) -> Result<HexCheck, OracleError> {
    if n == 0 {
        return Err(OracleError::Graph(GraphError::EmptyGenerator));
    }
    let g = crate::graph::generate_hex_grid(n, 2)?;
    let total = g.vertex_count();
    let max = budget.max_vertices.min(63);
    if total > max {
        return Err(OracleError::TooManyVertices { n: total, max });
    }
    let mut t = Ticker::new(budget.time_limit);
    let count = 1u64 << total;
    for mask in 0..count {
        t.tick()?;
        if has_crossing(&g, n, mask, 0, 1) || has_crossing(&g, n, mask, 1, 0) {
            continue;
        }
        let assign = (0..total).map(|v| ((mask >> v) & 1) as usize).collect();
        return Ok(HexCheck::Counterexample {
            coloring: FractionalColoring::simple(2, assign)?,
        });
    }
    Ok(HexCheck::Holds {
        colorings_checked: count,
    })
}

/// Exact rational bounds on the fractional chromatic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalBounds {
    /// `max(n / alpha, omega)`.
    pub lower: Ratio<u64>,
    /// `p / q` of the witness when one is given, otherwise the chromatic
    /// number.
    pub upper: Ratio<u64>,
}

/// Brackets the fractional chromatic number of `g`. A witness colouring
/// must be proper (every colour class independent); its `p/q` then bounds
/// from above. Without a witness the chromatic number is used instead.
pub fn fractional_bounds(
    g: &Graph,
    witness: Option<&FractionalColoring>,
    budget: &OracleBudget,
) -> Result<FractionalBounds, OracleError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(FractionalBounds {
            lower: Ratio::from_integer(0),
            upper: Ratio::from_integer(0),
        });
    }
    let adj = bitset_adj(g, budget)?;
    let mut t = Ticker::new(budget.time_limit);
    let alpha = alpha_of(&adj, &mut t)?;
    let omega = alpha_of(&complement_of(&adj), &mut t)?;
    let lower = Ratio::new(n as u64, alpha as u64).max(Ratio::from_integer(omega as u64));
    let upper = match witness {
        Some(f) => {
            let report = crate::coloring::verify_coloring(g, f, DefectParameter::Properness)?;
            if !report.proper {
                return Err(OracleError::NotProper);
            }
            Ratio::new(f.p() as u64, f.q() as u64)
        }
        None => Ratio::from_integer(chromatic_number(g, budget)? as u64),
    };
    debug_assert!(lower <= upper);
    Ok(FractionalBounds { lower, upper })
}

/// `alpha(g^{⊠ d})^{1/d}`, a lower bound on the Shannon capacity of `g`.
/// The power must fit the oracle's vertex budget.
pub fn shannon_lower_bound(g: &Graph, d: usize, budget: &OracleBudget) -> Result<f64, OracleError> {
    if d == 0 {
        return Err(OracleError::ZeroPower);
    }
    let n = g.vertex_count() as u128;
    let max = budget.max_vertices.min(64) as u128;
    if n.checked_pow(d as u32).is_none_or(|p| p > max) {
        return Err(OracleError::TooManyVertices {
            n: n.saturating_pow(d as u32).min(usize::MAX as u128) as usize,
            max: max as usize,
        });
    }
    let power = strong_power(g, d)?;
    let alpha = independence_number(&power, budget)?;
    Ok((alpha as f64).powf(1.0 / d as f64))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, arr: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(arr.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, arr, out);
            if k.is_multiple_of(2) {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
        heap(k - 1, arr, out);
    }
    heap(n, &mut current, &mut out);
    out
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    if n <= 1 {
        return true;
    }
    let mut adj = vec![0u32; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask & (1 << i) != 0 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let mut reached: u32 = 1;
    loop {
        let mut next = reached;
        let mut bits = reached;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v];
        }
        if next == reached {
            break;
        }
        reached = next;
    }
    reached == (1u32 << n) - 1
}

/// All connected graphs on exactly `n` vertices up to isomorphism, each
/// labelled `0..n`. Canonical representatives are the edge masks minimal
/// under vertex permutation, so the list is deterministic. Limited to
/// `n <= 6` (720 permutations over 32768 edge masks).
pub fn enumerate_connected_graphs(
    n: usize,
    budget: &OracleBudget,
) -> Result<Vec<Graph>, OracleError> {
    if n == 0 {
        return Err(OracleError::Graph(GraphError::EmptyGenerator));
    }
    if n > 6 {
        return Err(OracleError::EnumerationTooLarge { n, max: 6 });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let m = pairs.len();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = i;
        pair_index[v][u] = i;
    }
    // bit_maps[p][i] = position of pair i after applying permutation p.
    let bit_maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|perm| {
            pairs
                .iter()
                .map(|&(u, v)| pair_index[perm[u]][perm[v]])
                .collect()
        })
        .collect();
    let labels: Vec<Vec<i64>> = (0..n).map(|i| vec![i as i64]).collect();
    let mut t = Ticker::new(budget.time_limit);
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << m) {
        t.tick()?;
        if !mask_connected(n, &pairs, mask) {
            continue;
        }
        let minimal = bit_maps.iter().all(|map| {
            let mut permuted = 0u32;
            for (i, &target) in map.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    permuted |= 1 << target;
                }
            }
            permuted >= mask
        });
        if minimal {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            out.push(Graph::from_edges(labels.clone(), &edges)?);
        }
    }
    Ok(out)
}
