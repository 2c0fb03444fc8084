//! Trees grown from a star of order at least three by hanging stars at
//! vertices that satisfy the optimal-set condition of [`u1_applicable`].
//!
//! Membership is decided by subdivision: a tree belongs when no single
//! subdivided edge raises the super domination number. Stars of order at
//! least four need more than two subdivided edges yet are members. The
//! certificate comes from peeling hanging stars and re-checking the
//! condition on each intermediate tree.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::canon::canonical_form;
use crate::graph::Graph;
use crate::solvers::{all_gamma_sp_sets, analyze_sp_set};
use crate::subdivision::{is_class_one, sd_gamma_sp, SubdivisionError};
use crate::vertex_set::VertexSet;

use super::{bad_step, Base, Family, FamilyCertificate, FamilyError, Recognition, Step};

/// True when some minimum super dominating set `S` has `N[v]` disjoint
/// from the complement of `S`, or has `v` in `S` with `N[v]` disjoint from
/// the external private neighbours.
pub fn u1_applicable(t: &Graph, v: usize) -> Result<bool, FamilyError> {
    Ok(u1_applicable_vertices(t)?.contains(v))
}

/// All vertices at which a star may be hung.
pub fn u1_applicable_vertices(t: &Graph) -> Result<VertexSet, FamilyError> {
    let n = t.order();
    let mut out = VertexSet::new(n);
    for s in all_gamma_sp_sets(t)? {
        let a = analyze_sp_set(t, &s)?;
        for v in t.vertices() {
            let closed = t.closed_neighbor_set(v);
            if closed.is_disjoint(&a.sbar) || (!a.sbar.contains(v) && closed.is_disjoint(&a.u_set)) {
                out.insert(v);
            }
        }
        if out.len() == n {
            break;
        }
    }
    Ok(out)
}

fn star_graph(order: usize) -> Graph {
    Graph::star(order - 1)
}

fn hang_star(t: &Graph, v: usize, star_order: usize) -> Result<Graph, FamilyError> {
    if star_order < 2 {
        return Err(FamilyError::StarTooSmall(star_order));
    }
    Ok(t.attach(v, &star_graph(star_order), 0)?)
}

/// Joins the center of a star of order `star_order` to `v`. The star's
/// center becomes vertex `n`, its leaves `n + 1 ..`.
pub fn apply_u1(t: &Graph, v: usize, star_order: usize) -> Result<Graph, FamilyError> {
    if star_order < 2 {
        return Err(FamilyError::StarTooSmall(star_order));
    }
    t.require_tree()?;
    if v >= t.order() {
        return Err(FamilyError::Graph(crate::graph::GraphError::NoSuchVertex(v)));
    }
    if !u1_applicable(t, v)? {
        return Err(FamilyError::PreconditionFails(v));
    }
    hang_star(t, v, star_order)
}

pub(super) fn replay(cert: &FamilyCertificate) -> Result<Graph, FamilyError> {
    if cert.family != Family::U {
        return Err(FamilyError::WrongFamily {
            expected: Family::U,
            found: cert.family,
        });
    }
    let Base::Star { order } = cert.base else {
        return Err(FamilyError::InvalidBase("U certificates start from a star".into()));
    };
    if order < 3 {
        return Err(FamilyError::InvalidBase(format!("star order {order} is below 3")));
    }
    let mut g = star_graph(order);
    for (index, step) in cert.steps.iter().enumerate() {
        let Step::Star { anchor, star_order } = *step else {
            return Err(bad_step(index, "U certificates only use star steps"));
        };
        g = apply_u1(&g, anchor, star_order).map_err(|e| bad_step(index, e.to_string()))?;
    }
    Ok(g)
}

/// Center of `alive` if it induces a star of order at least three.
fn star_center(t: &Graph, alive: &VertexSet) -> Option<usize> {
    if alive.len() < 3 {
        return None;
    }
    alive
        .iter()
        .find(|&c| t.neighbor_set(c).intersection_len(alive) == alive.len() - 1)
}

/// A hanging star: center, its leaves, and the vertex it hangs from.
#[derive(Debug, Clone)]
struct Hung {
    center: usize,
    leaves: Vec<usize>,
    anchor: usize,
}

fn hanging_stars(t: &Graph, alive: &VertexSet) -> Vec<Hung> {
    let deg = |v: usize| t.neighbor_set(v).intersection_len(alive);
    let mut out = Vec::new();
    for c in alive.iter() {
        let nb: Vec<usize> = t.neighbors(c).iter().copied().filter(|&w| alive.contains(w)).collect();
        let (leaves, inner): (Vec<usize>, Vec<usize>) = nb.into_iter().partition(|&w| deg(w) == 1);
        if leaves.is_empty() || inner.len() != 1 {
            continue;
        }
        out.push(Hung {
            center: c,
            leaves,
            anchor: inner[0],
        });
    }
    out
}

fn peel(t: &Graph, alive: &VertexSet, failed: &mut HashSet<VertexSet>, out: &mut Vec<Hung>) -> Option<usize> {
    if let Some(c) = star_center(t, alive) {
        return Some(c);
    }
    if failed.contains(alive) {
        return None;
    }
    for h in hanging_stars(t, alive) {
        let mut next = alive.clone();
        next.remove(h.center);
        for &l in &h.leaves {
            next.remove(l);
        }
        if next.len() < 3 {
            continue;
        }
        let (sub, old) = t.induced(&next);
        let Some(anchor) = old.iter().position(|&o| o == h.anchor) else {
            continue;
        };
        if !u1_applicable(&sub, anchor).unwrap_or(false) {
            continue;
        }
        out.push(h);
        if let Some(c) = peel(t, &next, failed, out) {
            return Some(c);
        }
        out.pop();
    }
    failed.insert(alive.clone());
    None
}

/// Certificate by peeling hanging stars down to a star of order at least three.
pub fn u_certificate(t: &Graph) -> Result<Option<FamilyCertificate>, FamilyError> {
    t.require_tree()?;
    let n = t.order();
    let mut hung = Vec::new();
    let alive = VertexSet::full(n);
    let Some(center) = peel(t, &alive, &mut HashSet::new(), &mut hung) else {
        return Ok(None);
    };
    let mut remaining = alive;
    for h in &hung {
        remaining.remove(h.center);
        for &l in &h.leaves {
            remaining.remove(l);
        }
    }
    let mut replay_id = vec![usize::MAX; n];
    replay_id[center] = 0;
    for (i, v) in remaining.iter().filter(|&v| v != center).enumerate() {
        replay_id[v] = i + 1;
    }
    let mut next = remaining.len();
    let mut steps = Vec::with_capacity(hung.len());
    for h in hung.iter().rev() {
        steps.push(Step::Star {
            anchor: replay_id[h.anchor],
            star_order: h.leaves.len() + 1,
        });
        replay_id[h.center] = next;
        for (i, &l) in h.leaves.iter().enumerate() {
            replay_id[l] = next + 1 + i;
        }
        next += h.leaves.len() + 1;
    }
    Ok(Some(FamilyCertificate {
        family: Family::U,
        base: Base::Star { order: remaining.len() },
        steps,
    }))
}

/// Membership: no single subdivided edge raises the super domination number.
pub fn is_in_u(t: &Graph) -> Result<bool, FamilyError> {
    t.require_tree()?;
    if t.order() < 2 {
        return Ok(false);
    }
    Ok(!is_class_one(t)?)
}

fn sd_detail(t: &Graph) -> Result<String, FamilyError> {
    match sd_gamma_sp(t) {
        Ok(r) => Ok(format!("sd = {}", r.sd)),
        Err(SubdivisionError::BoundViolated(Some(k))) => Ok(format!("sd = {k}")),
        Err(SubdivisionError::BoundViolated(None)) => Ok("sd > 2".to_string()),
        Err(e) => Err(e.into()),
    }
}

pub(super) fn recognize(t: &Graph) -> Result<Recognition, FamilyError> {
    if t.order() < 2 {
        return Ok(Recognition {
            family: Family::U,
            member: false,
            certificate: None,
            detail: "trivial tree".to_string(),
        });
    }
    Ok(Recognition {
        family: Family::U,
        member: is_in_u(t)?,
        certificate: u_certificate(t)?,
        detail: sd_detail(t)?,
    })
}

/// Breadth-first closure from every star of order `3..=n_max`.
pub(super) fn closure(n_max: usize) -> Result<BTreeMap<Vec<u8>, Graph>, FamilyError> {
    let mut out = BTreeMap::new();
    let mut queue = VecDeque::new();
    for order in 3..=n_max {
        let s = star_graph(order);
        if out.insert(canonical_form(&s)?, s.clone()).is_none() {
            queue.push_back(s);
        }
    }
    while let Some(g) = queue.pop_front() {
        let room = n_max - g.order();
        if room < 2 {
            continue;
        }
        let spots = u1_applicable_vertices(&g)?;
        for v in spots.iter() {
            for star_order in 2..=room {
                let grown = hang_star(&g, v, star_order)?;
                let code = canonical_form(&grown)?;
                if let std::collections::btree_map::Entry::Vacant(e) = out.entry(code) {
                    e.insert(grown.clone());
                    queue.push_back(grown);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_applicability() {
        let p3 = Graph::path(3);
        assert_eq!(u1_applicable(&p3, 1), Ok(false));
        assert_eq!(u1_applicable(&p3, 0), Ok(true));
        let p5 = apply_u1(&p3, 0, 2).unwrap();
        assert_eq!(p5.order(), 5);
        assert_eq!(is_in_u(&p5), Ok(true));
        assert_eq!(apply_u1(&p3, 1, 2), Err(FamilyError::PreconditionFails(1)));
        let p3_center_hung = p3.attach(1, &Graph::path(2), 0).unwrap();
        assert_eq!(is_in_u(&p3_center_hung), Ok(false));
    }

    #[test]
    fn star_order_one_is_rejected() {
        assert_eq!(apply_u1(&Graph::path(3), 0, 1), Err(FamilyError::StarTooSmall(1)));
    }

    #[test]
    fn recognition_examples() {
        assert_eq!(is_in_u(&Graph::star(3)), Ok(true));
        assert_eq!(is_in_u(&Graph::path(2)), Ok(false));
        assert_eq!(is_in_u(&Graph::path(6)), Ok(false));
        let cert = u_certificate(&Graph::star(3)).unwrap().unwrap();
        assert_eq!(cert.base, Base::Star { order: 4 });
        assert!(u_certificate(&Graph::path(6)).unwrap().is_none());
    }

    #[test]
    fn certificate_replays() {
        let p5 = apply_u1(&Graph::path(3), 0, 2).unwrap();
        let cert = u_certificate(&p5).unwrap().expect("member");
        assert_eq!(canonical_form(&replay(&cert).unwrap()), canonical_form(&p5));
    }

    #[test]
    fn closure_matches_subdivision_number_to_seven() {
        let c = closure(7).unwrap();
        for n in 2..=7 {
            for t in crate::enumeration::all_trees(n).unwrap() {
                let code = canonical_form(&t).unwrap();
                assert_eq!(c.contains_key(&code), is_in_u(&t).unwrap(), "{:?}", t.edges());
            }
        }
    }
}
