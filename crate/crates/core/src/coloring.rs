//! Fractional and consistent colourings plus the verifier that measures
//! them.
//!
//! A `(p:q)`-colouring assigns every vertex a `q`-subset of a `p`-colour
//! palette. A consistent colouring additionally fixes an *ordering* of each
//! vertex's colours such that entries at distinct positions differ across
//! every edge; the same colour may repeat across an edge only at the same
//! position. Verification always reports properness, clustering (largest
//! monochromatic component order) and defect (largest monochromatic degree)
//! together; the chosen [`DefectParameter`] merely selects which of them is
//! highlighted as the headline value.

use crate::graph::{Graph, RootedTree};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("colouring covers {got} vertices, graph has {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("palette must satisfy 1 <= q <= p, got p={p} q={q}")]
    BadPalette { p: usize, q: usize },
    #[error("vertex {v} has {got} colours, expected q={q}")]
    WrongSetSize { v: usize, got: usize, q: usize },
    #[error("vertex {v} repeats colour {color}")]
    DuplicateColor { v: usize, color: usize },
    #[error("vertex {v} uses colour {color}, palette size is {p}")]
    ColorOutOfRange { v: usize, color: usize, p: usize },
    #[error("colour {color} is outside the palette of size {p}")]
    NoSuchColor { color: usize, p: usize },
    #[error("edge class {class} is outside 0..{k}")]
    EdgeClassOutOfRange { class: usize, k: usize },
    #[error("edge ({u}, {v}) has no class assigned")]
    EdgeClassMissing { u: usize, v: usize },
    #[error("edge partition needs at least one class")]
    NoClasses,
}

/// `(p:q)`-colouring: every vertex holds a sorted `q`-subset of `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalColoring {
    p: usize,
    q: usize,
    assign: Vec<Vec<usize>>,
}

impl FractionalColoring {
    /// Validates and normalises (sorts) the per-vertex colour sets.
    pub fn new(p: usize, q: usize, assign: Vec<Vec<usize>>) -> Result<Self, ColoringError> {
        if q == 0 || q > p {
            return Err(ColoringError::BadPalette { p, q });
        }
        let mut assign = assign;
        for (v, set) in assign.iter_mut().enumerate() {
            if set.len() != q {
                return Err(ColoringError::WrongSetSize {
                    v,
                    got: set.len(),
                    q,
                });
            }
            set.sort_unstable();
            for w in set.windows(2) {
                if w[0] == w[1] {
                    return Err(ColoringError::DuplicateColor { v, color: w[0] });
                }
            }
            if let Some(&c) = set.last() {
                if c >= p {
                    return Err(ColoringError::ColorOutOfRange { v, color: c, p });
                }
            }
        }
        Ok(FractionalColoring { p, q, assign })
    }

    /// Ordinary colouring (`q = 1`) from one colour per vertex.
    pub fn simple(p: usize, colors: Vec<usize>) -> Result<Self, ColoringError> {
        FractionalColoring::new(p, 1, colors.into_iter().map(|c| vec![c]).collect())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn vertex_count(&self) -> usize {
        self.assign.len()
    }

    pub fn set(&self, v: usize) -> &[usize] {
        &self.assign[v]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.assign
    }

    pub fn contains(&self, v: usize, color: usize) -> bool {
        self.assign[v].binary_search(&color).is_ok()
    }

    /// Vertices whose set contains `color`.
    pub fn class(&self, color: usize) -> Vec<usize> {
        (0..self.assign.len())
            .filter(|&v| self.contains(v, color))
            .collect()
    }

    fn check_graph(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.assign.len() != g.vertex_count() {
            return Err(ColoringError::LengthMismatch {
                got: self.assign.len(),
                expected: g.vertex_count(),
            });
        }
        Ok(())
    }
}

/// Consistent colouring: an ordered `q`-tuple of distinct colours per
/// vertex. Across every edge, entries at distinct positions must differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistentColoring {
    p: usize,
    q: usize,
    order: Vec<Vec<usize>>,
}

impl ConsistentColoring {
    pub fn new(p: usize, q: usize, order: Vec<Vec<usize>>) -> Result<Self, ColoringError> {
        // Validate via the set form, then keep the given tuple order.
        FractionalColoring::new(p, q, order.clone())?;
        Ok(ConsistentColoring { p, q, order })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn tuple(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.order
    }

    /// Forgets the ordering.
    pub fn to_fractional(&self) -> FractionalColoring {
        FractionalColoring::new(self.p, self.q, self.order.clone())
            .expect("ordered tuples already validated")
    }
}

/// Assigns each edge of a tree to one of `k` classes. Keys are normalised
/// to `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePartition {
    k: usize,
    classes: BTreeMap<(usize, usize), usize>,
}

impl EdgePartition {
    pub fn new(
        k: usize,
        assignments: impl IntoIterator<Item = ((usize, usize), usize)>,
    ) -> Result<Self, ColoringError> {
        if k == 0 {
            return Err(ColoringError::NoClasses);
        }
        let mut classes = BTreeMap::new();
        for ((u, v), class) in assignments {
            if class >= k {
                return Err(ColoringError::EdgeClassOutOfRange { class, k });
            }
            classes.insert((u.min(v), u.max(v)), class);
        }
        Ok(EdgePartition { k, classes })
    }

    pub fn class_count(&self) -> usize {
        self.k
    }

    pub fn class_of(&self, u: usize, v: usize) -> Option<usize> {
        self.classes.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Checks that every edge of `t` has a class.
    pub fn covers(&self, t: &RootedTree) -> Result<(), ColoringError> {
        for (u, v) in t.graph().edges() {
            if self.class_of(u, v).is_none() {
                return Err(ColoringError::EdgeClassMissing { u, v });
            }
        }
        Ok(())
    }
}

/// Which single number a verification highlights. All three metrics are
/// computed regardless.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefectParameter {
    /// Largest monochromatic component order ("clustering").
    ClusterSize,
    /// Largest degree inside a monochromatic subgraph ("defect").
    MaxDegree,
    /// 1 when every monochromatic subgraph is edgeless, infinite otherwise.
    Properness,
}

/// Value of a defect parameter. `Properness` uses `Infinite` as an explicit
/// sentinel for "some monochromatic edge exists".
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ParamValue {
    Finite(u64),
    Infinite,
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Finite(v) => write!(f, "{v}"),
            ParamValue::Infinite => write!(f, "inf"),
        }
    }
}

impl DefectParameter {
    /// Evaluates the parameter on a whole graph.
    pub fn evaluate(&self, g: &Graph) -> ParamValue {
        match self {
            DefectParameter::ClusterSize => ParamValue::Finite(
                g.connected_components()
                    .iter()
                    .map(Vec::len)
                    .max()
                    .unwrap_or(0) as u64,
            ),
            DefectParameter::MaxDegree => ParamValue::Finite(g.max_degree() as u64),
            DefectParameter::Properness => {
                if g.edge_count() == 0 {
                    ParamValue::Finite(1)
                } else {
                    ParamValue::Infinite
                }
            }
        }
    }

    /// How the parameter composes over a strong product of monochromatic
    /// subgraphs: component orders multiply, degrees compose as
    /// `(a+1)(b+1)-1`, and edgelessness multiplies with `Infinite`
    /// absorbing.
    pub fn product_bound(&self, values: &[ParamValue]) -> ParamValue {
        let mut acc = match self {
            DefectParameter::MaxDegree => 0u128,
            _ => 1u128,
        };
        for v in values {
            let x = match v {
                ParamValue::Finite(x) => *x as u128,
                ParamValue::Infinite => return ParamValue::Infinite,
            };
            acc = match self {
                DefectParameter::MaxDegree => (acc + 1) * (x + 1) - 1,
                _ => acc * x,
            };
        }
        ParamValue::Finite(acc.min(u64::MAX as u128) as u64)
    }
}

/// Extremal monochromatic component: the colour and its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub color: usize,
    pub vertices: Vec<usize>,
}

/// Everything the verifier measures in one pass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub parameter: DefectParameter,
    pub parameter_value: ParamValue,
    pub proper: bool,
    pub clustering: usize,
    pub defect: usize,
    /// `Some` only when an ordered colouring was checked.
    pub consistent: Option<bool>,
    /// A component attaining `clustering`; `None` on empty graphs.
    pub witness: Option<Witness>,
}

/// First cross-position equality found across an edge, as
/// `(u, v, pos_u, pos_v)` with 0-based positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyViolation {
    pub u: usize,
    pub v: usize,
    pub pos_u: usize,
    pub pos_v: usize,
}

/// Components of the subgraph induced by the class of `color`: sorted
/// vertex lists ordered by smallest member.
pub fn monochromatic_components(
    g: &Graph,
    f: &FractionalColoring,
    color: usize,
) -> Result<Vec<Vec<usize>>, ColoringError> {
    f.check_graph(g)?;
    if color >= f.p() {
        return Err(ColoringError::NoSuchColor { color, p: f.p() });
    }
    let member: Vec<bool> = (0..g.vertex_count()).map(|v| f.contains(v, color)).collect();
    Ok(g.components_within(&member))
}

/// Measures properness, clustering and defect of `f` on `g`, highlighting
/// `parameter`. The witness is the first extremal component in (colour,
/// smallest-vertex) order.
pub fn verify_coloring(
    g: &Graph,
    f: &FractionalColoring,
    parameter: DefectParameter,
) -> Result<VerificationReport, ColoringError> {
    f.check_graph(g)?;
    let mut clustering = 0usize;
    let mut defect = 0usize;
    let mut witness = None;
    for color in 0..f.p() {
        let member: Vec<bool> = (0..g.vertex_count()).map(|v| f.contains(v, color)).collect();
        for comp in g.components_within(&member) {
            if comp.len() > clustering {
                clustering = comp.len();
                witness = Some(Witness {
                    color,
                    vertices: comp.clone(),
                });
            }
            for &v in &comp {
                let d = g.neighbors(v).iter().filter(|&&w| member[w]).count();
                defect = defect.max(d);
            }
        }
    }
    let proper = defect == 0;
    debug_assert!(proper == (clustering <= 1));
    debug_assert!(clustering == 0 || defect <= clustering - 1);
    let parameter_value = match parameter {
        DefectParameter::ClusterSize => ParamValue::Finite(clustering as u64),
        DefectParameter::MaxDegree => ParamValue::Finite(defect as u64),
        DefectParameter::Properness => {
            if proper {
                ParamValue::Finite(1)
            } else {
                ParamValue::Infinite
            }
        }
    };
    Ok(VerificationReport {
        parameter,
        parameter_value,
        proper,
        clustering,
        defect,
        consistent: None,
        witness,
    })
}

/// [`verify_coloring`] on the underlying sets, plus the cross-position
/// distinctness check, recorded in `consistent`.
pub fn verify_consistent_coloring(
    g: &Graph,
    c: &ConsistentColoring,
    parameter: DefectParameter,
) -> Result<VerificationReport, ColoringError> {
    let mut report = verify_coloring(g, &c.to_fractional(), parameter)?;
    report.consistent = Some(check_consistency(g, c)?.is_none());
    Ok(report)
}

/// Looks for an edge `uv` and distinct positions `i != j` with
/// `tuple(u)[i] == tuple(v)[j]`. `None` means the colouring is consistent.
pub fn check_consistency(
    g: &Graph,
    c: &ConsistentColoring,
) -> Result<Option<ConsistencyViolation>, ColoringError> {
    if c.vertex_count() != g.vertex_count() {
        return Err(ColoringError::LengthMismatch {
            got: c.vertex_count(),
            expected: g.vertex_count(),
        });
    }
    for (u, v) in g.edges() {
        let tu = c.tuple(u);
        let tv = c.tuple(v);
        for (i, &a) in tu.iter().enumerate() {
            for (j, &b) in tv.iter().enumerate() {
                if i != j && a == b {
                    return Ok(Some(ConsistencyViolation {
                        u,
                        v,
                        pos_u: i,
                        pos_v: j,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star, strong_product};

    #[test]
    fn validation_rejects_malformed_colourings() {
        assert!(matches!(
            FractionalColoring::new(3, 0, vec![]),
            Err(ColoringError::BadPalette { .. })
        ));
        assert!(matches!(
            FractionalColoring::new(2, 3, vec![]),
            Err(ColoringError::BadPalette { .. })
        ));
        assert!(matches!(
            FractionalColoring::new(3, 2, vec![vec![0]]),
            Err(ColoringError::WrongSetSize { v: 0, got: 1, q: 2 })
        ));
        assert!(matches!(
            FractionalColoring::new(3, 2, vec![vec![1, 1]]),
            Err(ColoringError::DuplicateColor { v: 0, color: 1 })
        ));
        assert!(matches!(
            FractionalColoring::new(3, 2, vec![vec![1, 3]]),
            Err(ColoringError::ColorOutOfRange { v: 0, color: 3, p: 3 })
        ));
        let g = path(3).unwrap();
        let f = FractionalColoring::simple(2, vec![0, 1]).unwrap();
        assert!(matches!(
            verify_coloring(&g, &f, DefectParameter::ClusterSize),
            Err(ColoringError::LengthMismatch { got: 2, expected: 3 })
        ));
    }

    #[test]
    fn monochromatic_components_on_triangle_and_star() {
        let k3 = complete(3).unwrap();
        let f = FractionalColoring::simple(3, vec![0, 1, 2]).unwrap();
        assert_eq!(
            monochromatic_components(&k3, &f, 0).unwrap(),
            vec![vec![0]]
        );
        let s = star(3).unwrap();
        let all0 = FractionalColoring::simple(1, vec![0; 4]).unwrap();
        assert_eq!(
            monochromatic_components(&s, &all0, 0).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
        assert!(matches!(
            monochromatic_components(&s, &all0, 1),
            Err(ColoringError::NoSuchColor { color: 1, p: 1 })
        ));
    }

    #[test]
    fn verify_proper_triangle() {
        let k3 = complete(3).unwrap();
        let f = FractionalColoring::simple(3, vec![0, 1, 2]).unwrap();
        let r = verify_coloring(&k3, &f, DefectParameter::Properness).unwrap();
        assert!(r.proper);
        assert_eq!(r.clustering, 1);
        assert_eq!(r.defect, 0);
        assert_eq!(r.parameter_value, ParamValue::Finite(1));
        assert_eq!(r.consistent, None);
        assert_eq!(r.witness.as_ref().unwrap().vertices.len(), 1);
    }

    #[test]
    fn verify_monochromatic_star() {
        let s = star(5).unwrap();
        let f = FractionalColoring::simple(1, vec![0; 6]).unwrap();
        let r = verify_coloring(&s, &f, DefectParameter::MaxDegree).unwrap();
        assert!(!r.proper);
        assert_eq!(r.clustering, 6);
        assert_eq!(r.defect, 5);
        assert_eq!(r.parameter_value, ParamValue::Finite(5));
        let r2 = verify_coloring(&s, &f, DefectParameter::Properness).unwrap();
        assert_eq!(r2.parameter_value, ParamValue::Infinite);
        let w = r.witness.unwrap();
        assert_eq!(w.color, 0);
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn defect_is_always_below_clustering() {
        // Exercised harder by the property suite; this is the documented
        // relation on a hand-picked example.
        let c5 = cycle(5).unwrap();
        let f = FractionalColoring::new(
            5,
            2,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
        )
        .unwrap();
        let r = verify_coloring(&c5, &f, DefectParameter::ClusterSize).unwrap();
        assert!(r.clustering >= 1 && r.defect <= r.clustering - 1);
    }

    #[test]
    fn consistency_of_hand_built_tuples() {
        let p2 = path(2).unwrap();
        let good = ConsistentColoring::new(3, 2, vec![vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(check_consistency(&p2, &good).unwrap(), None);
        let bad = ConsistentColoring::new(2, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let v = check_consistency(&p2, &bad).unwrap().unwrap();
        assert_eq!((v.u, v.v), (0, 1));
        assert_ne!(v.pos_u, v.pos_v);
        let r = verify_consistent_coloring(&p2, &good, DefectParameter::ClusterSize).unwrap();
        assert_eq!(r.consistent, Some(true));
        assert_eq!(r.clustering, 2);
    }

    #[test]
    fn eta_product_bounds_compose() {
        use DefectParameter::*;
        assert_eq!(
            ClusterSize.product_bound(&[ParamValue::Finite(2), ParamValue::Finite(3)]),
            ParamValue::Finite(6)
        );
        assert_eq!(
            MaxDegree.product_bound(&[ParamValue::Finite(1), ParamValue::Finite(2)]),
            ParamValue::Finite(5)
        );
        assert_eq!(
            Properness.product_bound(&[ParamValue::Finite(1), ParamValue::Infinite]),
            ParamValue::Infinite
        );
        assert_eq!(
            Properness.product_bound(&[ParamValue::Finite(1), ParamValue::Finite(1)]),
            ParamValue::Finite(1)
        );
        assert!(ParamValue::Finite(u64::MAX) < ParamValue::Infinite);
    }

    #[test]
    fn eta_evaluate_on_whole_graphs() {
        let s = star(3).unwrap();
        assert_eq!(
            DefectParameter::ClusterSize.evaluate(&s),
            ParamValue::Finite(4)
        );
        assert_eq!(
            DefectParameter::MaxDegree.evaluate(&s),
            ParamValue::Finite(3)
        );
        assert_eq!(DefectParameter::Properness.evaluate(&s), ParamValue::Infinite);
        let e = crate::graph::Graph::edgeless(4);
        assert_eq!(DefectParameter::Properness.evaluate(&e), ParamValue::Finite(1));
    }

    #[test]
    fn max_degree_product_bound_matches_strong_product_degree() {
        let a = path(4).unwrap();
        let b = star(3).unwrap();
        let prod = strong_product(&a, &b).unwrap();
        let bound = DefectParameter::MaxDegree.product_bound(&[
            DefectParameter::MaxDegree.evaluate(&a),
            DefectParameter::MaxDegree.evaluate(&b),
        ]);
        assert_eq!(bound, ParamValue::Finite(prod.max_degree() as u64));
    }

    #[test]
    fn edge_partition_normalises_and_covers() {
        let part = EdgePartition::new(2, [((1, 0), 0), ((1, 2), 1)]).unwrap();
        assert_eq!(part.class_of(0, 1), Some(0));
        assert_eq!(part.class_of(2, 1), Some(1));
        assert_eq!(part.len(), 2);
        assert!(matches!(
            EdgePartition::new(2, [((0, 1), 2)]),
            Err(ColoringError::EdgeClassOutOfRange { class: 2, k: 2 })
        ));
        let t = RootedTree::new(path(3).unwrap(), 0).unwrap();
        assert!(part.covers(&t).is_ok());
        let partial = EdgePartition::new(2, [((0, 1), 0)]).unwrap();
        assert!(matches!(
            partial.covers(&t),
            Err(ColoringError::EdgeClassMissing { u: 1, v: 2 })
        ));
    }
}
