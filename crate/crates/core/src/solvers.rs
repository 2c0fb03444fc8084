//! Exact domination, total domination and super domination numbers.
//!
//! All searches are exponential and work on single-word neighbour masks,
//! so they accept graphs on at most 64 vertices. Subsets of a fixed size
//! are visited in ascending mask order, which makes every returned witness
//! the numerically least optimal set among those examined.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest order accepted by the mask-based solvers.
pub const MAX_SOLVER_ORDER: usize = 64;
/// Largest order for which all optimal super dominating sets are listed.
pub const MAX_ENUMERATION_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("undefined parameter: {0}")]
    UndefinedParameter(&'static str),
    #[error("instance too large: {order} vertices exceeds the limit of {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("set {0} is not super dominating")]
    NotSuperDominating(String),
}

pub fn is_dominating(g: &Graph, d: &VertexSet) -> bool {
    g.vertices()
        .all(|v| d.contains(v) || !g.neighbor_set(v).is_disjoint(d))
}

pub fn is_total_dominating(g: &Graph, d: &VertexSet) -> bool {
    g.vertices().all(|v| !g.neighbor_set(v).is_disjoint(d))
}

/// Every vertex outside `s` has an external private neighbour: some
/// `v ∈ s` whose only neighbour outside `s` is that vertex.
pub fn is_super_dominating(g: &Graph, s: &VertexSet) -> bool {
    let sbar = s.complement();
    sbar.iter().all(|u| has_private_neighbor(g, &sbar, u))
}

fn has_private_neighbor(g: &Graph, sbar: &VertexSet, u: usize) -> bool {
    g.neighbors(u)
        .iter()
        .any(|&v| !sbar.contains(v) && is_private_for(g, sbar, v, u))
}

#[inline]
fn is_private_for(g: &Graph, sbar: &VertexSet, v: usize, u: usize) -> bool {
    let nv = g.neighbor_set(v);
    nv.contains(u) && nv.intersection_len(sbar) == 1
}

/// Iterates all `k`-subsets of `0..n` as masks, ascending.
pub(crate) fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    debug_assert!(n <= 64 && k <= n);
    let limit: u128 = 1u128 << n;
    let first: u128 = if k == 0 { 0 } else { (1u128 << k) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nx = (((r ^ cur) >> 2) / c) | r;
            (nx < limit).then_some(nx)
        };
        Some(cur as u64)
    })
}

fn masks_for(g: &Graph) -> Result<Vec<u64>, SolveError> {
    if g.order() > MAX_SOLVER_ORDER {
        return Err(SolveError::TooLarge {
            order: g.order(),
            limit: MAX_SOLVER_ORDER,
        });
    }
    Ok(g.neighbor_masks().expect("order checked against word size"))
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn require_no_isolated(g: &Graph) -> Result<(), SolveError> {
    if g.order() == 0 {
        return Err(SolveError::UndefinedParameter("empty graph"));
    }
    if g.has_isolated_vertex() {
        return Err(SolveError::UndefinedParameter("graph has an isolated vertex"));
    }
    Ok(())
}

/// Greedy cover: repeatedly take the vertex whose (closed or open)
/// neighbourhood hits the most uncovered vertices, lowest id on ties.
fn greedy_cover(cover: &[u64], n: usize) -> u64 {
    let all = full_mask(n);
    let mut chosen = 0u64;
    let mut covered = 0u64;
    while covered != all {
        let best = (0..n)
            .max_by_key(|&v| ((cover[v] & !covered).count_ones(), std::cmp::Reverse(v)))
            .expect("nonempty");
        chosen |= 1 << best;
        covered |= cover[best];
    }
    chosen
}

/// Smallest set whose cover-union is everything: ascending cardinality
/// from `lower`, never past the greedy bound.
fn min_cover(cover: &[u64], n: usize, lower: usize) -> u64 {
    let all = full_mask(n);
    let upper = greedy_cover(cover, n).count_ones() as usize;
    for k in lower.max(1)..=upper {
        for m in k_subsets(n, k) {
            let mut acc = 0u64;
            let mut rest = m;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                acc |= cover[v];
            }
            if acc == all {
                return m;
            }
        }
    }
    unreachable!("the greedy cover has size {upper}")
}

fn max_degree(g: &Graph) -> usize {
    g.vertices().map(|v| g.degree(v)).max().unwrap_or(0)
}

pub fn gamma_witness(g: &Graph) -> Result<VertexSet, SolveError> {
    require_no_isolated(g)?;
    let nbr = masks_for(g)?;
    let n = g.order();
    let closed: Vec<u64> = nbr.iter().enumerate().map(|(v, m)| m | 1 << v).collect();
    let lower = n.div_ceil(max_degree(g) + 1);
    Ok(VertexSet::from_mask(n, min_cover(&closed, n, lower)))
}

pub fn gamma(g: &Graph) -> Result<usize, SolveError> {
    gamma_witness(g).map(|s| s.len())
}

pub fn gamma_t_witness(g: &Graph) -> Result<VertexSet, SolveError> {
    require_no_isolated(g)?;
    let nbr = masks_for(g)?;
    let n = g.order();
    let lower = n.div_ceil(max_degree(g)).max(2);
    Ok(VertexSet::from_mask(n, min_cover(&nbr, n, lower)))
}

pub fn gamma_t(g: &Graph) -> Result<usize, SolveError> {
    gamma_t_witness(g).map(|s| s.len())
}

/// Mask-level feasibility of a candidate complement `sbar`.
#[inline]
pub(crate) fn complement_is_feasible(nbr: &[u64], sbar: u64) -> bool {
    let mut rest = sbar;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut cands = nbr[u] & !sbar;
        let mut ok = false;
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if nbr[v] & sbar == 1 << u {
                ok = true;
                break;
            }
        }
        if !ok {
            return false;
        }
    }
    true
}

fn sp_setup(g: &Graph) -> Result<Vec<u64>, SolveError> {
    if g.order() < 2 {
        return Err(SolveError::UndefinedParameter("super domination needs at least two vertices"));
    }
    require_no_isolated(g)?;
    masks_for(g)
}

/// Largest feasible complement size and the least complement of that size.
fn max_complement(nbr: &[u64], n: usize) -> (usize, u64) {
    for k in (0..=n / 2).rev() {
        if let Some(m) = k_subsets(n, k).find(|&m| complement_is_feasible(nbr, m)) {
            return (k, m);
        }
    }
    unreachable!("the empty complement is always feasible")
}

pub fn gamma_sp(g: &Graph) -> Result<usize, SolveError> {
    let nbr = sp_setup(g)?;
    let n = g.order();
    Ok(n - max_complement(&nbr, n).0)
}

/// One minimum super dominating set.
pub fn gamma_sp_witness(g: &Graph) -> Result<VertexSet, SolveError> {
    let nbr = sp_setup(g)?;
    let n = g.order();
    let (_, sbar) = max_complement(&nbr, n);
    Ok(VertexSet::from_mask(n, !sbar & full_mask(n)))
}

/// Every minimum super dominating set, ordered by ascending mask.
pub fn all_gamma_sp_sets(g: &Graph) -> Result<Vec<VertexSet>, SolveError> {
    if g.order() > MAX_ENUMERATION_ORDER {
        return Err(SolveError::TooLarge {
            order: g.order(),
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    let nbr = sp_setup(g)?;
    let n = g.order();
    let (k, _) = max_complement(&nbr, n);
    let mut sets: Vec<u64> = k_subsets(n, k)
        .filter(|&m| complement_is_feasible(&nbr, m))
        .map(|m| !m & full_mask(n))
        .collect();
    sets.sort_unstable();
    Ok(sets.into_iter().map(|m| VertexSet::from_mask(n, m)).collect())
}

/// Private-neighbour structure of a super dominating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpSetAnalysis {
    pub s: VertexSet,
    pub sbar: VertexSet,
    /// External private neighbours of each vertex outside `s`.
    pub epn: BTreeMap<usize, VertexSet>,
    /// Union of all external private neighbours.
    pub p_set: VertexSet,
    /// Vertices outside `s` with exactly one external private neighbour.
    pub q_set: VertexSet,
    /// The unique external private neighbours of the vertices in `q_set`.
    pub u_set: VertexSet,
}

pub fn analyze_sp_set(g: &Graph, s: &VertexSet) -> Result<SpSetAnalysis, SolveError> {
    let n = g.order();
    let sbar = s.complement();
    let mut epn = BTreeMap::new();
    let mut p_set = VertexSet::new(n);
    let mut q_set = VertexSet::new(n);
    let mut u_set = VertexSet::new(n);
    for u in sbar.iter() {
        let private = VertexSet::from_iter_with_capacity(
            n,
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&v| s.contains(v) && is_private_for(g, &sbar, v, u)),
        );
        if private.is_empty() {
            return Err(SolveError::NotSuperDominating(s.to_string()));
        }
        p_set = p_set.union(&private);
        if private.len() == 1 {
            q_set.insert(u);
            u_set = u_set.union(&private);
        }
        epn.insert(u, private);
    }
    Ok(SpSetAnalysis {
        s: s.clone(),
        sbar,
        epn,
        p_set,
        q_set,
        u_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_iter_with_capacity(n, xs.iter().copied())
    }

    #[test]
    fn k_subsets_counts_and_order() {
        let all: Vec<u64> = k_subsets(5, 2).collect();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(k_subsets(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(4, 4).collect::<Vec<_>>(), vec![0b1111]);
        assert_eq!(k_subsets(64, 64).count(), 1);
        assert_eq!(k_subsets(64, 1).count(), 64);
    }

    #[test]
    fn domination_predicates_on_p4() {
        let p4 = Graph::path(4);
        assert!(is_dominating(&p4, &set(4, &[1, 2])));
        assert!(is_total_dominating(&p4, &set(4, &[1, 2])));
        assert!(is_dominating(&p4, &set(4, &[0, 3])));
        assert!(!is_total_dominating(&p4, &set(4, &[0, 3])));
        assert!(!is_dominating(&p4, &set(4, &[1])));
    }

    #[test]
    fn super_domination_predicate() {
        let p4 = Graph::path(4);
        assert!(is_super_dominating(&p4, &set(4, &[1, 2])));
        let claw = Graph::star(3);
        for leaf in 1..4 {
            assert!(!is_super_dominating(&claw, &set(4, &[0, leaf])));
        }
        for g in [Graph::path(5), Graph::star(4), Graph::cycle(5)] {
            assert!(is_super_dominating(&g, &VertexSet::full(g.order())));
        }
    }

    #[test]
    fn small_parameter_values() {
        let p4 = Graph::path(4);
        assert_eq!(gamma(&p4), Ok(2));
        assert_eq!(gamma_t(&p4), Ok(2));
        let p6 = Graph::path(6);
        assert_eq!(gamma(&p6), Ok(2));
        assert_eq!(gamma_t(&p6), Ok(4));
        assert_eq!(gamma_sp(&p6), Ok(3));
        for k in 1..8 {
            assert_eq!(gamma(&Graph::star(k)), Ok(1));
            assert_eq!(gamma_t(&Graph::star(k)), Ok(2));
        }
        assert_eq!(gamma_sp(&Graph::path(2)), Ok(1));
        assert_eq!(gamma_sp(&Graph::star(3)), Ok(3));
        for n in 2..=12 {
            assert_eq!(gamma_sp(&Graph::path(n)), Ok(n.div_ceil(2)), "P_{n}");
        }
    }

    #[test]
    fn witnesses_are_valid() {
        let g = Graph::path(7).corona();
        let d = gamma_witness(&g).unwrap();
        assert!(is_dominating(&g, &d));
        let t = gamma_t_witness(&g).unwrap();
        assert!(is_total_dominating(&g, &t));
        let s = gamma_sp_witness(&g).unwrap();
        assert!(is_super_dominating(&g, &s));
        assert_eq!(s.len(), 7);
    }

    #[test]
    fn undefined_inputs() {
        assert!(matches!(gamma(&Graph::empty(1)), Err(SolveError::UndefinedParameter(_))));
        assert!(matches!(gamma_t(&Graph::empty(3)), Err(SolveError::UndefinedParameter(_))));
        assert!(matches!(gamma_sp(&Graph::empty(1)), Err(SolveError::UndefinedParameter(_))));
        let with_isolated = Graph::new(3, [(0, 1)]).unwrap();
        assert!(gamma_sp(&with_isolated).is_err());
        assert!(matches!(
            all_gamma_sp_sets(&Graph::path(30)),
            Err(SolveError::TooLarge { order: 30, .. })
        ));
    }

    #[test]
    fn all_optimal_sets_small_paths() {
        assert_eq!(all_gamma_sp_sets(&Graph::path(2)).unwrap(), vec![set(2, &[0]), set(2, &[1])]);
        // Every single-vertex complement of P_3 is feasible.
        let p3 = all_gamma_sp_sets(&Graph::path(3)).unwrap();
        assert_eq!(p3.len(), 3);
        assert!(all_gamma_sp_sets(&Graph::path(4)).unwrap().contains(&set(4, &[1, 2])));
    }

    #[test]
    fn analysis_on_p4_and_p3() {
        let p4 = Graph::path(4);
        let a = analyze_sp_set(&p4, &set(4, &[1, 2])).unwrap();
        assert_eq!(a.epn[&0], set(4, &[1]));
        assert_eq!(a.epn[&3], set(4, &[2]));
        assert_eq!(a.q_set, set(4, &[0, 3]));
        assert_eq!(a.u_set, set(4, &[1, 2]));
        assert_eq!(a.p_set, set(4, &[1, 2]));

        let p3 = Graph::path(3);
        let b = analyze_sp_set(&p3, &set(3, &[1, 2])).unwrap();
        assert_eq!(b.epn[&0], set(3, &[1]));
        assert!(!b.p_set.contains(2));

        let full = analyze_sp_set(&p4, &VertexSet::full(4)).unwrap();
        assert!(full.epn.is_empty() && full.p_set.is_empty() && full.u_set.is_empty());

        assert!(analyze_sp_set(&Graph::star(3), &set(4, &[0, 1])).is_err());
    }
}
