//! Coronas `H ∘ K_1`.

use std::collections::BTreeMap;

use crate::canon::canonical_form;
use crate::enumeration::all_trees;
use crate::graph::Graph;

use super::{Base, Family, FamilyCertificate, FamilyError, Recognition};

/// A tree written as `H ∘ K_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoronaMatch {
    pub inner: Graph,
    /// `inner` vertex `i` is tree vertex `inner_vertices[i]`.
    pub inner_vertices: Vec<usize>,
}

/// Recognizes a corona: every non-leaf has exactly one leaf neighbour and
/// there are as many leaves as non-leaves. Returns `H` (the tree minus its
/// leaves) on success.
pub fn is_corona(t: &Graph) -> Option<CoronaMatch> {
    if !t.is_tree() || t.order() < 2 || !t.order().is_multiple_of(2) {
        return None;
    }
    if t.order() == 2 {
        return Some(CoronaMatch {
            inner: Graph::empty(1),
            inner_vertices: vec![0],
        });
    }
    let leaves = t.leaves();
    let inner_set = leaves.complement();
    if leaves.len() != inner_set.len() {
        return None;
    }
    if !inner_set.iter().all(|v| t.leaf_neighbors(v).len() == 1) {
        return None;
    }
    let (inner, inner_vertices) = t.induced(&inner_set);
    Some(CoronaMatch { inner, inner_vertices })
}

pub fn certificate(m: &CoronaMatch) -> FamilyCertificate {
    FamilyCertificate {
        family: Family::Corona,
        base: Base::Corona {
            order: m.inner.order(),
            edges: m.inner.edges().to_vec(),
        },
        steps: Vec::new(),
    }
}

pub(super) fn recognize(t: &Graph) -> Recognition {
    match is_corona(t) {
        Some(m) => Recognition {
            family: Family::Corona,
            member: true,
            certificate: Some(certificate(&m)),
            detail: format!("inner tree on {} vertices, edges {:?}", m.inner.order(), m.inner.edges()),
        },
        None => Recognition {
            family: Family::Corona,
            member: false,
            certificate: None,
            detail: "not a corona".to_string(),
        },
    }
}

pub(super) fn replay(cert: &FamilyCertificate) -> Result<Graph, FamilyError> {
    if cert.family != Family::Corona {
        return Err(FamilyError::WrongFamily {
            expected: Family::Corona,
            found: cert.family,
        });
    }
    let Base::Corona { order, edges } = &cert.base else {
        return Err(FamilyError::InvalidBase("corona certificates need a Corona base".into()));
    };
    if !cert.steps.is_empty() {
        return Err(super::bad_step(0, "corona certificates take no steps"));
    }
    let inner = Graph::new(*order, edges.iter().copied())?;
    if !inner.is_tree() {
        return Err(FamilyError::InvalidBase("inner graph is not a tree".into()));
    }
    Ok(inner.corona())
}

/// `H ∘ K_1` for every tree `H` on at most `n_max / 2` vertices.
pub(super) fn closure(n_max: usize) -> Result<BTreeMap<Vec<u8>, Graph>, FamilyError> {
    let mut out = BTreeMap::new();
    for h in 1..=n_max / 2 {
        for inner in all_trees(h).map_err(|_| FamilyError::Budget(n_max))? {
            let c = inner.corona();
            out.insert(canonical_form(&c)?, c);
        }
    }
    Ok(out)
}
