//! Trees grown from `P_2 = a_1 b_1` by adding a pair `a_j b_j` joined to
//! an earlier pair through `a_i a_j` or `b_i b_j`.
//!
//! Membership is decided by the super domination number (exactly half the
//! order). Certificates come from an independent route: peeling pendant
//! pairs (a leaf together with its degree-two support) back down to `P_2`.

use std::collections::{BTreeMap, HashSet};

use crate::canon::{canonical_form, canonical_form_labeled};
use crate::graph::Graph;
use crate::solvers::gamma_sp;
use crate::vertex_set::VertexSet;

use super::{bad_step, Base, Family, FamilyCertificate, FamilyError, Recognition, Side, Step};

fn side_of(replay_id: usize) -> Side {
    if replay_id.is_multiple_of(2) {
        Side::A
    } else {
        Side::B
    }
}

/// Builds a member from its steps (see [`Step::Pair`]).
pub fn build_r(steps: &[Step]) -> Result<Graph, FamilyError> {
    let mut edges = vec![(0, 1)];
    let mut n = 2;
    for (index, step) in steps.iter().enumerate() {
        let Step::Pair { anchor, side } = *step else {
            return Err(bad_step(index, "R certificates only use pair steps"));
        };
        if anchor >= n {
            return Err(bad_step(index, format!("anchor {anchor} does not exist yet")));
        }
        if side_of(anchor) != side {
            return Err(bad_step(index, format!("anchor {anchor} is not on side {side:?}")));
        }
        let (a, b) = (n, n + 1);
        edges.push((a, b));
        edges.push((anchor, if side == Side::A { a } else { b }));
        n += 2;
    }
    Ok(Graph::new(n, edges)?)
}

pub(super) fn replay(cert: &FamilyCertificate) -> Result<Graph, FamilyError> {
    if cert.family != Family::R {
        return Err(FamilyError::WrongFamily {
            expected: Family::R,
            found: cert.family,
        });
    }
    if cert.base != Base::P2 {
        return Err(FamilyError::InvalidBase("R certificates start from P2".into()));
    }
    build_r(&cert.steps)
}

/// Membership via the super domination number.
pub fn is_in_r(t: &Graph) -> Result<bool, FamilyError> {
    t.require_tree()?;
    let n = t.order();
    if n < 2 || !n.is_multiple_of(2) {
        return Ok(false);
    }
    Ok(gamma_sp(t)? == n / 2)
}

/// A peeled pendant pair: `leaf`, its support `inner`, and the vertex the
/// support hangs from.
#[derive(Debug, Clone, Copy)]
struct Peel {
    leaf: usize,
    inner: usize,
    anchor: usize,
}

fn alive_degree(t: &Graph, alive: &VertexSet, v: usize) -> usize {
    t.neighbor_set(v).intersection_len(alive)
}

fn alive_neighbors(t: &Graph, alive: &VertexSet, v: usize) -> Vec<usize> {
    t.neighbors(v).iter().copied().filter(|&w| alive.contains(w)).collect()
}

/// Backtracking peel; `failed` memoizes dead alive-sets.
fn peel(t: &Graph, alive: &VertexSet, failed: &mut HashSet<VertexSet>, out: &mut Vec<Peel>) -> bool {
    if alive.len() == 2 {
        return true;
    }
    if failed.contains(alive) {
        return false;
    }
    for leaf in alive.iter() {
        if alive_degree(t, alive, leaf) != 1 {
            continue;
        }
        let inner = alive_neighbors(t, alive, leaf)[0];
        let rest_nbrs: Vec<usize> = alive_neighbors(t, alive, inner).into_iter().filter(|&w| w != leaf).collect();
        if rest_nbrs.len() != 1 {
            continue;
        }
        let mut next = alive.clone();
        next.remove(leaf);
        next.remove(inner);
        out.push(Peel {
            leaf,
            inner,
            anchor: rest_nbrs[0],
        });
        if peel(t, &next, failed, out) {
            return true;
        }
        out.pop();
    }
    failed.insert(alive.clone());
    false
}

/// Certificate by peeling pendant pairs, or `None` if no peel order reaches `P_2`.
pub fn r_certificate(t: &Graph) -> Result<Option<FamilyCertificate>, FamilyError> {
    t.require_tree()?;
    let n = t.order();
    if n < 2 || !n.is_multiple_of(2) {
        return Ok(None);
    }
    let mut peels = Vec::new();
    let alive = VertexSet::full(n);
    if !peel(t, &alive, &mut HashSet::new(), &mut peels) {
        return Ok(None);
    }
    let mut remaining = alive;
    for p in &peels {
        remaining.remove(p.leaf);
        remaining.remove(p.inner);
    }
    let base: Vec<usize> = remaining.iter().collect();
    let mut replay_id = vec![usize::MAX; n];
    replay_id[base[0]] = 0;
    replay_id[base[1]] = 1;
    let mut next = 2;
    let mut steps = Vec::with_capacity(peels.len());
    for p in peels.iter().rev() {
        let anchor = replay_id[p.anchor];
        let side = side_of(anchor);
        let (a, b) = (next, next + 1);
        // The support joins the anchor's side; the leaf takes the other slot.
        let (inner_id, leaf_id) = if side == Side::A { (a, b) } else { (b, a) };
        replay_id[p.inner] = inner_id;
        replay_id[p.leaf] = leaf_id;
        next += 2;
        steps.push(Step::Pair { anchor, side });
    }
    Ok(Some(FamilyCertificate {
        family: Family::R,
        base: Base::P2,
        steps,
    }))
}

pub(super) fn recognize(t: &Graph) -> Result<Recognition, FamilyError> {
    let member = is_in_r(t)?;
    let certificate = r_certificate(t)?;
    let detail = match t.order() {
        n if n >= 2 => format!("gamma_sp = {}, n/2 = {}", gamma_sp(t)?, n as f64 / 2.0),
        _ => "trivial tree".to_string(),
    };
    Ok(Recognition {
        family: Family::R,
        member,
        certificate,
        detail,
    })
}

/// Forward closure, tracking the `a`/`b` side of every vertex.
pub(super) fn closure(n_max: usize) -> Result<BTreeMap<Vec<u8>, Graph>, FamilyError> {
    let mut out = BTreeMap::new();
    if n_max < 2 {
        return Ok(out);
    }
    let mut seen = HashSet::new();
    let base = (Graph::path(2), vec![b'a', b'b']);
    seen.insert(canonical_form_labeled(&base.0, &base.1)?);
    let mut frontier = vec![base];
    while let Some((g, sides)) = frontier.pop() {
        out.entry(canonical_form(&g)?).or_insert_with(|| g.clone());
        if g.order() + 2 > n_max {
            continue;
        }
        for anchor in g.vertices() {
            let side = sides[anchor];
            let pair = Graph::path(2);
            let grown = g.attach(anchor, &pair, 0)?;
            let mut grown_sides = sides.clone();
            grown_sides.push(side);
            grown_sides.push(if side == b'a' { b'b' } else { b'a' });
            if seen.insert(canonical_form_labeled(&grown, &grown_sides)?) {
                frontier.push((grown, grown_sides));
            }
        }
    }
    Ok(out)
}
