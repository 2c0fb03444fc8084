//! Moving a chosen leaf into the complement of a minimum super dominating set.
//!
//! Given a minimum super dominating set `S` of a tree and a leaf `v`, the
//! tree is rooted at `v` and one of three cases applies:
//!
//! * `v` is already outside `S`: nothing to do.
//! * the support `u` of `v` is outside `S`: `u` and `v` trade places and
//!   the conflicts this creates are repaired downwards by exchanging
//!   vertices along alternating private-neighbour chains.
//! * both `v` and `u` are in `S`: some child `u1` of `u` outside `S` has
//!   `u` as its private neighbour, and `u1` trades places with `v`.
//!
//! The repair loop keeps a stack of pending levels. A *complement level*
//! lists vertices that must leave the complement; each is swapped with one
//! of its private-neighbour children. A *private level* lists vertices of
//! `S` that lost their privacy because their parent entered the
//! complement; each enters the complement in place of the child it used to
//! serve.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::solvers::{self, analyze_sp_set, gamma_sp, SolveError, SpSetAnalysis};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("set {0} is not super dominating")]
    NotSuperDominating(String),
    #[error("set has size {given} but the super domination number is {optimum}")]
    NotOptimal { given: usize, optimum: usize },
    #[error("set capacity {0} does not match the tree order {1}")]
    CapacityMismatch(usize, usize),
    /// Reached a configuration that a minimum set cannot produce.
    #[error("unreachable configuration: {0}")]
    Unreachable(String),
    #[error("repair loop exceeded {0} steps")]
    StepBudget(usize),
    #[error("output {0} failed validation: {1}")]
    InvalidOutput(String, String),
}

/// The tree oriented away from a root.
#[derive(Debug, Clone)]
pub struct RootedView {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
}

impl RootedView {
    pub fn new(t: &Graph, root: usize) -> Result<Self, GraphError> {
        t.require_tree()?;
        if root >= t.order() {
            return Err(GraphError::NoSuchVertex(root));
        }
        let n = t.order();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = VertexSet::new(n);
        seen.insert(root);
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in t.neighbors(x) {
                if seen.insert(y) {
                    parent[y] = Some(x);
                    children[x].push(y);
                    stack.push(y);
                }
            }
        }
        for c in children.iter_mut() {
            c.sort_unstable();
        }
        Ok(Self { root, parent, children })
    }

    pub fn children_in(&self, x: usize, set: &VertexSet) -> Vec<usize> {
        self.children[x].iter().copied().filter(|&c| set.contains(c)).collect()
    }
}

/// Which private neighbour to take when a complement vertex has several
/// private-neighbour children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum EpnChoice {
    #[default]
    Lowest,
    Highest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LeafCase {
    /// The leaf was already outside the set.
    AlreadyOutside,
    /// The leaf's support was outside the set; repaired by the level loop.
    SupportOutside,
    /// Both were inside; a child of the support traded places with the leaf.
    BothInside,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub set: VertexSet,
    pub case: LeafCase,
    /// Iterations of the repair loop (swaps plus level pops).
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LevelKind {
    Complement,
    Private,
}

/// Returns a minimum super dominating set of the same size as `s` whose
/// complement contains the leaf `v`.
pub fn normalize_for_leaf(t: &Graph, s: &VertexSet, v: usize) -> Result<VertexSet, TransformError> {
    normalize_for_leaf_traced(t, s, v, EpnChoice::Lowest).map(|r| r.set)
}

pub fn normalize_for_leaf_traced(
    t: &Graph,
    s: &VertexSet,
    v: usize,
    choice: EpnChoice,
) -> Result<Normalization, TransformError> {
    t.require_tree()?;
    let optimum = gamma_sp(t)?;
    normalize_with_optimum(t, s, v, choice, optimum)
}

/// As [`normalize_for_leaf_traced`] with a precomputed super domination number.
pub fn normalize_with_optimum(
    t: &Graph,
    s: &VertexSet,
    v: usize,
    choice: EpnChoice,
    optimum: usize,
) -> Result<Normalization, TransformError> {
    t.require_tree()?;
    let n = t.order();
    if s.capacity() != n {
        return Err(TransformError::CapacityMismatch(s.capacity(), n));
    }
    if v >= n || t.degree(v) != 1 {
        return Err(TransformError::NotALeaf(v));
    }
    let analysis = analyze_sp_set(t, s).map_err(|_| TransformError::NotSuperDominating(s.to_string()))?;
    if s.len() != optimum {
        return Err(TransformError::NotOptimal { given: s.len(), optimum });
    }

    let view = RootedView::new(t, v)?;
    let u = t.neighbors(v)[0];
    let sbar = &analysis.sbar;

    let (complement, case, steps) = if sbar.contains(v) {
        (sbar.clone(), LeafCase::AlreadyOutside, 0)
    } else if sbar.contains(u) {
        let (h, steps) = repair_levels(t, &view, &analysis, u, choice)?;
        (h, LeafCase::SupportOutside, steps)
    } else {
        (swap_private_child(t, &view, &analysis, u)?, LeafCase::BothInside, 0)
    };

    let set = complement.complement();
    validate(t, &set, s.len(), v)?;
    Ok(Normalization { set, case, steps })
}

/// Case where the support `u` of the root is in the complement.
fn repair_levels(
    t: &Graph,
    view: &RootedView,
    a: &SpSetAnalysis,
    u: usize,
    choice: EpnChoice,
) -> Result<(VertexSet, usize), TransformError> {
    let n = t.order();
    let sbar = &a.sbar;
    let mut h = sbar.clone();
    h.remove(u);
    h.insert(view.root);

    let budget = 4 * n;
    let mut steps = 0;
    let mut levels: Vec<(LevelKind, Vec<usize>)> = vec![(LevelKind::Complement, view.children_in(u, sbar))];

    while let Some((kind, members)) = levels.last_mut() {
        steps += 1;
        if steps > budget {
            return Err(TransformError::StepBudget(budget));
        }
        if members.is_empty() {
            levels.pop();
            continue;
        }
        // Lowest id first.
        let x = members.remove(0);
        match kind {
            LevelKind::Complement => {
                let cands: Vec<usize> = view.children[x]
                    .iter()
                    .copied()
                    .filter(|c| a.epn.get(&x).is_some_and(|e| e.contains(*c)))
                    .collect();
                let y = match choice {
                    EpnChoice::Lowest => cands.first(),
                    EpnChoice::Highest => cands.last(),
                }
                .copied()
                .ok_or_else(|| {
                    TransformError::Unreachable(format!("vertex {x} has no private neighbour below it"))
                })?;
                h.remove(x);
                h.insert(y);
                let below_x = view.children_in(x, sbar);
                let below_y = view.children_in(y, &a.p_set);
                levels.push((LevelKind::Complement, below_x));
                levels.push((LevelKind::Private, below_y));
            }
            LevelKind::Private => {
                let w = x;
                let z = *view
                    .children_in(w, sbar)
                    .first()
                    .ok_or_else(|| TransformError::Unreachable(format!("private vertex {w} serves no child")))?;
                h.remove(z);
                h.insert(w);
                let below_w = view.children_in(w, &a.p_set);
                let below_z = view.children_in(z, sbar);
                levels.push((LevelKind::Private, below_w));
                levels.push((LevelKind::Complement, below_z));
            }
        }
    }
    Ok((h, steps))
}

/// Case where the root and its support `u` are both in the set.
fn swap_private_child(
    t: &Graph,
    view: &RootedView,
    a: &SpSetAnalysis,
    u: usize,
) -> Result<VertexSet, TransformError> {
    let sbar = &a.sbar;
    let kids = view.children_in(u, sbar);
    if kids.is_empty() {
        return Err(TransformError::Unreachable(format!(
            "support {u} has no neighbour outside the set, so the root could leave it"
        )));
    }
    if let Some(&u1) = kids.iter().find(|&&c| a.epn[&c].contains(u)) {
        let mut d = sbar.clone();
        d.remove(u1);
        d.insert(view.root);
        return Ok(d);
    }
    // The support serves none of its children. Moving it into the
    // complement would give a smaller super dominating set whenever none of
    // its children is a private neighbour, and the subtree exchange reduces
    // the remaining case to that one.
    let private_kids = view.children_in(u, &a.p_set);
    let detail = if private_kids.is_empty() {
        let mut d = sbar.clone();
        d.insert(u);
        let smaller = solvers::is_super_dominating(t, &d.complement());
        format!("adding support {u} to the complement gives a smaller set (valid: {smaller})")
    } else {
        format!("support {u} serves no child and has private-neighbour children {private_kids:?}")
    };
    Err(TransformError::Unreachable(detail))
}

fn validate(t: &Graph, set: &VertexSet, size: usize, v: usize) -> Result<(), TransformError> {
    let fail = |why: &str| Err(TransformError::InvalidOutput(set.to_string(), why.to_string()));
    if set.len() != size {
        return fail("cardinality changed");
    }
    if set.contains(v) {
        return fail("leaf is still in the set");
    }
    if !solvers::is_super_dominating(t, set) {
        return fail("not super dominating");
    }
    Ok(())
}

/// Some minimum super dominating set whose complement contains the leaf `v`.
pub fn exists_normalized(t: &Graph, v: usize) -> Result<VertexSet, TransformError> {
    t.require_tree()?;
    let s = solvers::gamma_sp_witness(t)?;
    normalize_for_leaf(t, &s, v)
}
