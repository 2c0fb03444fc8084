//! Super domination subdivision number of trees.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError};
use crate::solvers::{gamma_sp, k_subsets, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubdivisionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("no pair of edges raises the super domination number ({})", match .0 {
        Some(k) => format!("{k} edges needed"),
        None => "more edges needed".to_string(),
    })]
    BoundViolated(Option<usize>),
    #[error("construction inapplicable: diameter {0} is below 4")]
    ConstructionInapplicable(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassLabel {
    Class1,
    Class2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionResult {
    pub base_gamma_sp: usize,
    pub sd: usize,
    /// The first edge set (in lexicographic order) whose subdivision raises the number.
    pub witness_edges: Vec<Edge>,
    pub class_label: ClassLabel,
}

fn raises(t: &Graph, es: &[Edge], base: usize) -> Result<bool, SubdivisionError> {
    Ok(gamma_sp(&t.subdivide(es)?)? > base)
}

/// Super domination numbers after subdividing each edge on its own, in edge order.
pub fn single_edge_values(t: &Graph) -> Result<Vec<(Edge, usize)>, SubdivisionError> {
    t.edges()
        .iter()
        .map(|&e| Ok((e, gamma_sp(&t.subdivide(&[e])?)?)))
        .collect()
}

/// Tries every edge, then every pair of distinct edges.
pub fn sd_gamma_sp(t: &Graph) -> Result<SubdivisionResult, SubdivisionError> {
    t.require_tree()?;
    let base = gamma_sp(t)?;
    let edges = t.edges();
    for &e in edges {
        if raises(t, &[e], base)? {
            return Ok(SubdivisionResult {
                base_gamma_sp: base,
                sd: 1,
                witness_edges: vec![e],
                class_label: ClassLabel::Class1,
            });
        }
    }
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if raises(t, &[e, f], base)? {
                return Ok(SubdivisionResult {
                    base_gamma_sp: base,
                    sd: 2,
                    witness_edges: vec![e, f],
                    class_label: ClassLabel::Class2,
                });
            }
        }
    }
    Err(SubdivisionError::BoundViolated(smallest_raising_set(t, base, 3)?))
}

/// Subsets tried past the pair phase before giving up on an exact value.
const EXTRA_TRIALS: u64 = 1 << 16;

/// Smallest `k >= k_min` whose some `k`-edge subdivision raises the number,
/// within the trial budget.
fn smallest_raising_set(t: &Graph, base: usize, k_min: usize) -> Result<Option<usize>, SubdivisionError> {
    let edges = t.edges();
    let mut budget = EXTRA_TRIALS;
    for k in k_min..=edges.len() {
        for mask in k_subsets(edges.len(), k) {
            if budget == 0 {
                return Ok(None);
            }
            budget -= 1;
            let chosen: Vec<Edge> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            if raises(t, &chosen, base)? {
                return Ok(Some(k));
            }
        }
    }
    Ok(None)
}

/// True when subdividing some single edge raises the number.
pub fn is_class_one(t: &Graph) -> Result<bool, SubdivisionError> {
    t.require_tree()?;
    let base = gamma_sp(t)?;
    for &e in t.edges() {
        if raises(t, &[e], base)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Subdivides the second and third edges of a longest path
/// `u1 u2 u3 u4 ...` and reports whether that raises the number.
pub fn thm31_pair_check(t: &Graph) -> Result<bool, SubdivisionError> {
    t.require_tree()?;
    let path = t.longest_path()?;
    let diam = path.len() - 1;
    if diam < 4 {
        return Err(SubdivisionError::ConstructionInapplicable(diam));
    }
    let base = gamma_sp(t)?;
    raises(t, &[(path[1], path[2]), (path[2], path[3])], base)
}
