//! Labelled trees grown from the labelled `P_6` (C, A, B, B, A, C) by
//! hanging another labelled `P_6` unit from a `B` vertex through the unit's
//! third vertex.
//!
//! In every member the labelling is forced: leaves are `C`, supports are
//! `A`, everything else is `B`. Recognition derives that labelling, checks
//! the local structure it implies, then peels units off until the base
//! remains.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::canon::canonical_form_labeled;
use crate::graph::{Graph, LabeledTree, Status};
use crate::vertex_set::VertexSet;

use super::{bad_step, Base, Family, FamilyCertificate, FamilyError, Recognition, Step};

const UNIT: [Status; 6] = [Status::C, Status::A, Status::B, Status::B, Status::A, Status::C];

/// The labelled base path.
pub fn base_p6() -> LabeledTree {
    LabeledTree::new(Graph::path(6), UNIT.to_vec()).expect("path is a tree")
}

/// Hangs a labelled unit `n..n+5` from `v`, joining `n + 2` to it.
pub fn apply_o(lt: &LabeledTree, v: usize) -> Result<LabeledTree, FamilyError> {
    if v >= lt.tree().order() {
        return Err(FamilyError::Graph(crate::graph::GraphError::NoSuchVertex(v)));
    }
    if lt.status(v) != Status::B {
        return Err(FamilyError::NotBVertex(v));
    }
    let grown = lt.tree().attach(v, &Graph::path(6), 2)?;
    let mut status = lt.statuses().to_vec();
    status.extend_from_slice(&UNIT);
    Ok(LabeledTree::new(grown, status)?)
}

/// Leaves `C`, supports `A`, all others `B`.
pub fn forced_labeling(t: &Graph) -> Vec<Status> {
    let leaves = t.leaves();
    let supports = t.supports();
    t.vertices()
        .map(|v| {
            if leaves.contains(v) {
                Status::C
            } else if supports.contains(v) {
                Status::A
            } else {
                Status::B
            }
        })
        .collect()
}

/// The six structural properties of members, each as a pass/fail message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelingReport {
    pub c_iff_leaf: Result<(), String>,
    pub a_iff_support: Result<(), String>,
    pub supports_degree_two: Result<(), String>,
    pub b_has_one_a: Result<(), String>,
    pub classes_equal: Result<(), String>,
    pub ab_is_min_total_dominating: Result<(), String>,
}

impl LabelingReport {
    pub fn failures(&self) -> Vec<String> {
        [
            ("(a)", &self.c_iff_leaf),
            ("(b)", &self.a_iff_support),
            ("(c)", &self.supports_degree_two),
            ("(d)", &self.b_has_one_a),
            ("(e)", &self.classes_equal),
            ("(f)", &self.ab_is_min_total_dominating),
        ]
        .into_iter()
        .filter_map(|(tag, r)| r.as_ref().err().map(|e| format!("{tag} {e}")))
        .collect()
    }
}

fn check_local(t: &Graph, status: &[Status]) -> (Result<(), String>, Result<(), String>) {
    let supports = t.supports();
    let mut deg_two = Ok(());
    for v in supports.iter() {
        let mut nb: Vec<Status> = t.neighbors(v).iter().map(|&w| status[w]).collect();
        nb.sort();
        if t.degree(v) != 2 || nb != [Status::B, Status::C] {
            deg_two = Err(format!("support {v} has neighbour statuses {nb:?}"));
            break;
        }
    }
    let mut one_a = Ok(());
    for v in t.vertices().filter(|&v| status[v] == Status::B) {
        let a = t.neighbors(v).iter().filter(|&&w| status[w] == Status::A).count();
        let b = t.neighbors(v).iter().filter(|&&w| status[w] == Status::B).count();
        if a != 1 || a + b != t.degree(v) {
            one_a = Err(format!("B vertex {v} has {a} A-neighbours and {b} B-neighbours"));
            break;
        }
    }
    (deg_two, one_a)
}

/// Checks all six properties of a labelled tree.
pub fn check_labeling(lt: &LabeledTree) -> Result<LabelingReport, FamilyError> {
    let t = lt.tree();
    let status = lt.statuses();
    let leaves = t.leaves();
    let supports = t.supports();
    let mismatch = |want: Status, set: &VertexSet, what: &str| {
        match t.vertices().find(|&v| (status[v] == want) != set.contains(v)) {
            None => Ok(()),
            Some(v) => Err(format!("vertex {v} has status {:?} but leaf/support membership disagrees ({what})", status[v])),
        }
    };
    let c_iff_leaf = mismatch(Status::C, &leaves, "leaf");
    let a_iff_support = mismatch(Status::A, &supports, "support");
    let (supports_degree_two, b_has_one_a) = check_local(t, status);
    let sizes = [Status::A, Status::B, Status::C].map(|s| lt.class(s).len());
    let classes_equal = if sizes[0] == sizes[1] && sizes[1] == sizes[2] {
        Ok(())
    } else {
        Err(format!("class sizes A/B/C = {sizes:?}"))
    };
    let ab = lt.class(Status::A).union(&lt.class(Status::B));
    let gt = crate::solvers::gamma_t(t)?;
    let ab_is_min_total_dominating = if !crate::solvers::is_total_dominating(t, &ab) {
        Err("A ∪ B is not total dominating".to_string())
    } else if ab.len() != gt {
        Err(format!("|A ∪ B| = {} but gamma_t = {gt}", ab.len()))
    } else {
        Ok(())
    };
    Ok(LabelingReport {
        c_iff_leaf,
        a_iff_support,
        supports_degree_two,
        b_has_one_a,
        classes_equal,
        ab_is_min_total_dominating,
    })
}

pub(super) fn replay(cert: &FamilyCertificate) -> Result<LabeledTree, FamilyError> {
    if cert.family != Family::T {
        return Err(FamilyError::WrongFamily {
            expected: Family::T,
            found: cert.family,
        });
    }
    if cert.base != Base::LabeledP6 {
        return Err(FamilyError::InvalidBase("T certificates start from the labelled P6".into()));
    }
    let mut lt = base_p6();
    for (index, step) in cert.steps.iter().enumerate() {
        let Step::Path6 { anchor } = *step else {
            return Err(bad_step(index, "T certificates only use path6 steps"));
        };
        lt = apply_o(&lt, anchor).map_err(|e| bad_step(index, e.to_string()))?;
    }
    Ok(lt)
}

/// Unit `[u1, .., u6]` hanging from `anchor` through `u3`.
#[derive(Debug, Clone, Copy)]
struct Unit {
    path: [usize; 6],
    anchor: usize,
}

fn alive_nbrs(t: &Graph, alive: &VertexSet, v: usize) -> Vec<usize> {
    t.neighbors(v).iter().copied().filter(|&w| alive.contains(w)).collect()
}

/// Follows `B(u4) - A(u5) - C(u6)` away from `from`, or `A(u2) - C(u1)`.
fn tail(t: &Graph, alive: &VertexSet, st: &[Status], from: usize, start: usize, want: &[Status]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(want.len());
    let (mut prev, mut cur) = (from, start);
    for (i, &w) in want.iter().enumerate() {
        if st[cur] != w {
            return None;
        }
        let nb = alive_nbrs(t, alive, cur);
        let last = i + 1 == want.len();
        let expected = if last { 1 } else { 2 };
        if nb.len() != expected {
            return None;
        }
        out.push(cur);
        if !last {
            let next = *nb.iter().find(|&&x| x != prev)?;
            prev = cur;
            cur = next;
        }
    }
    Some(out)
}

fn candidate_units(t: &Graph, alive: &VertexSet, st: &[Status]) -> Vec<Unit> {
    let mut out = Vec::new();
    for u3 in alive.iter().filter(|&v| st[v] == Status::B) {
        let nb = alive_nbrs(t, alive, u3);
        if nb.len() != 3 {
            continue;
        }
        let Some(&u2) = nb.iter().find(|&&w| st[w] == Status::A) else {
            continue;
        };
        let Some(left) = tail(t, alive, st, u3, u2, &[Status::A, Status::C]) else {
            continue;
        };
        for &u4 in nb.iter().filter(|&&w| st[w] == Status::B) {
            let Some(right) = tail(t, alive, st, u3, u4, &[Status::B, Status::A, Status::C]) else {
                continue;
            };
            let anchor = *nb.iter().find(|&&w| w != u2 && w != u4).expect("three neighbours");
            if st[anchor] != Status::B {
                continue;
            }
            out.push(Unit {
                path: [left[1], left[0], u3, right[0], right[1], right[2]],
                anchor,
            });
        }
    }
    out
}

/// The base path in order C, A, B, B, A, C, if `alive` is exactly that.
fn as_base(t: &Graph, alive: &VertexSet, st: &[Status]) -> Option<[usize; 6]> {
    if alive.len() != 6 {
        return None;
    }
    let end = alive
        .iter()
        .find(|&v| st[v] == Status::C && alive_nbrs(t, alive, v).len() == 1)?;
    let nb = alive_nbrs(t, alive, end);
    let rest = tail(t, alive, st, end, nb[0], &UNIT[1..])?;
    Some([end, rest[0], rest[1], rest[2], rest[3], rest[4]])
}

fn labels_forced_on(t: &Graph, alive: &VertexSet, st: &[Status]) -> bool {
    let (sub, old) = t.induced(alive);
    forced_labeling(&sub)
        .iter()
        .zip(&old)
        .all(|(&f, &v)| st[v] == f)
}

fn peel(
    t: &Graph,
    alive: &VertexSet,
    st: &[Status],
    failed: &mut HashSet<VertexSet>,
    out: &mut Vec<Unit>,
) -> Option<[usize; 6]> {
    if let Some(base) = as_base(t, alive, st) {
        return Some(base);
    }
    if alive.len() < 12 || failed.contains(alive) {
        return None;
    }
    for unit in candidate_units(t, alive, st) {
        let mut next = alive.clone();
        for v in unit.path {
            next.remove(v);
        }
        if !labels_forced_on(t, &next, st) {
            continue;
        }
        out.push(unit);
        if let Some(base) = peel(t, &next, st, failed, out) {
            return Some(base);
        }
        out.pop();
    }
    failed.insert(alive.clone());
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TRecognition {
    pub member: bool,
    pub labeling: Option<Vec<Status>>,
    pub certificate: Option<FamilyCertificate>,
    pub reason: String,
}

impl TRecognition {
    fn reject(reason: impl Into<String>) -> Self {
        Self {
            member: false,
            labeling: None,
            certificate: None,
            reason: reason.into(),
        }
    }

    pub(super) fn into_recognition(self) -> Recognition {
        let detail = match &self.labeling {
            Some(l) => format!(
                "labels {}",
                l.iter().map(|s| s.as_byte() as char).collect::<String>()
            ),
            None => self.reason.clone(),
        };
        Recognition {
            family: Family::T,
            member: self.member,
            certificate: self.certificate,
            detail,
        }
    }
}

/// Structural recognition: forced labelling, local checks, then peeling.
pub fn recognize_t(t: &Graph) -> Result<TRecognition, FamilyError> {
    t.require_tree()?;
    let n = t.order();
    if n < 6 || !n.is_multiple_of(6) {
        return Ok(TRecognition::reject(format!("order {n} is not a positive multiple of 6")));
    }
    let st = forced_labeling(t);
    let (deg_two, one_a) = check_local(t, &st);
    if let Err(e) = deg_two.and(one_a) {
        return Ok(TRecognition::reject(e));
    }
    let mut units = Vec::new();
    let Some(base) = peel(t, &VertexSet::full(n), &st, &mut HashSet::new(), &mut units) else {
        return Ok(TRecognition::reject("no sequence of unit removals reaches the base path"));
    };
    let mut replay_id = vec![usize::MAX; n];
    for (i, &v) in base.iter().enumerate() {
        replay_id[v] = i;
    }
    let mut next = 6;
    let mut steps = Vec::with_capacity(units.len());
    for unit in units.iter().rev() {
        steps.push(Step::Path6 {
            anchor: replay_id[unit.anchor],
        });
        for (i, &v) in unit.path.iter().enumerate() {
            replay_id[v] = next + i;
        }
        next += 6;
    }
    Ok(TRecognition {
        member: true,
        labeling: Some(st),
        certificate: Some(FamilyCertificate {
            family: Family::T,
            base: Base::LabeledP6,
            steps,
        }),
        reason: "peeled to the base path".to_string(),
    })
}

pub(super) fn recognize(t: &Graph) -> Result<TRecognition, FamilyError> {
    recognize_t(t)
}

fn labels_as_bytes(lt: &LabeledTree) -> Vec<u8> {
    lt.statuses().iter().map(|s| s.as_byte()).collect()
}

/// Forward closure of labelled members with at most `n_max` vertices.
pub fn closure(n_max: usize) -> Result<BTreeMap<Vec<u8>, LabeledTree>, FamilyError> {
    let mut out = BTreeMap::new();
    if n_max < 6 {
        return Ok(out);
    }
    let mut seen = HashSet::new();
    let mut frontier = vec![base_p6()];
    while let Some(lt) = frontier.pop() {
        let code = canonical_form_labeled(lt.tree(), &labels_as_bytes(&lt))?;
        if !seen.insert(code) {
            continue;
        }
        let plain = crate::canon::canonical_form(lt.tree())?;
        if lt.tree().order() + 6 <= n_max {
            for v in lt.tree().vertices().filter(|&v| lt.status(v) == Status::B) {
                frontier.push(apply_o(&lt, v)?);
            }
        }
        out.entry(plain).or_insert(lt);
    }
    Ok(out)
}
