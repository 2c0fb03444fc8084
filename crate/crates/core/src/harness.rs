//! Exhaustive checks of the super domination results over every tree in a
//! range of orders.
//!
//! Each check has an id, a smallest order and a cap. Trees are generated
//! up front, checked in parallel, and violations are merged in canonical
//! order, so reports differ between runs only in `elapsed_ms`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::canonical_form;
use crate::enumeration::trees_in_range;
use crate::families::{self, corona::is_corona, t::check_labeling, Family, FamilyError};
use crate::graph::Graph;
use crate::io::emit_inline;
use crate::solvers::{self, all_gamma_sp_sets, k_subsets, SolveError};
use crate::subdivision::{single_edge_values, sd_gamma_sp, thm31_pair_check, SubdivisionError};
use crate::transform::{normalize_with_optimum, EpnChoice};
use crate::vertex_set::VertexSet;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SUPERDOM_THREADS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown check {id:?}; valid ids: {}", CHECKS.iter().map(|c| c.id).collect::<Vec<_>>().join(", "))]
    UnknownCheck { id: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// The tree as `u v;u v;...`.
    pub tree: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub theorem_id: String,
    pub n_min: usize,
    pub n_max: usize,
    pub instances_checked: usize,
    pub skipped_precondition: usize,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
    pub verdict: Verdict,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Deliberate bugs for testing that the checks notice them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Reports one more than the true super domination number.
    GammaSpOffByOne,
    /// The super domination predicate ignores the last vertex outside the set.
    SuperDominatingOffByOne,
}

#[derive(Debug, Clone, Copy)]
struct Check {
    id: &'static str,
    n_min: usize,
    cap: usize,
    description: &'static str,
}

const CHECKS: [Check; 10] = [
    Check { id: "thm2.5", n_min: 2, cap: 12, description: "gamma <= gamma_sp, ceil(n/2) <= gamma_sp; equality exactly for coronas" },
    Check { id: "thm2.6", n_min: 3, cap: 12, description: "3 gamma_t <= 4 gamma_sp; equality exactly for the T family" },
    Check { id: "thm2.8", n_min: 2, cap: 12, description: "gamma_sp = n/2 exactly for the R family, with replayable certificates" },
    Check { id: "thm3.1", n_min: 2, cap: 10, description: "sd in {1, 2}; longest-path pair raises gamma_sp when diameter >= 4" },
    Check { id: "thm3.4", n_min: 2, cap: 10, description: "sd = 2 exactly for the U family, with replayable certificates" },
    Check { id: "obs2.2", n_min: 2, cap: 10, description: "a support and its leaves meet each optimal complement at most once" },
    Check { id: "obs2.3", n_min: 2, cap: 12, description: "deleting leaves at strong supports lowers gamma_sp by the same count" },
    Check { id: "pendant", n_min: 2, cap: 10, description: "a new leaf at a support adds one to gamma_sp, nothing to gamma or gamma_t" },
    Check { id: "prop2.4", n_min: 2, cap: 10, description: "every optimal set normalizes to put any chosen leaf in the complement" },
    Check { id: "obs2.9", n_min: 6, cap: 12, description: "T family labelling properties, the almost-total set, and 3 gamma_t = 4 gamma_sp" },
];

/// Registered check ids with one-line descriptions, in run order.
pub fn checks() -> Vec<(&'static str, &'static str)> {
    CHECKS.iter().map(|c| (c.id, c.description)).collect()
}

/// Parameters the checks compute, optionally with an injected fault.
#[derive(Debug, Clone, Copy, Default)]
pub struct Engine {
    fault: Option<Fault>,
}

fn faulty_is_super_dominating(g: &Graph, sbar: u64) -> bool {
    let outside: Vec<usize> = (0..g.order()).filter(|&u| sbar >> u & 1 == 1).collect();
    let n_checked = outside.len().saturating_sub(1);
    outside[..n_checked].iter().all(|&u| {
        g.neighbors(u).iter().any(|&v| {
            sbar >> v & 1 == 0 && g.neighbors(v).iter().filter(|&&w| sbar >> w & 1 == 1).eq([u].iter())
        })
    })
}

impl Engine {
    pub fn with_fault(fault: Fault) -> Self {
        Self { fault: Some(fault) }
    }

    pub fn gamma_sp(&self, g: &Graph) -> Result<usize, SolveError> {
        match self.fault {
            None => solvers::gamma_sp(g),
            Some(Fault::GammaSpOffByOne) => solvers::gamma_sp(g).map(|x| x + 1),
            Some(Fault::SuperDominatingOffByOne) => {
                solvers::gamma_sp(g)?;
                let n = g.order();
                let best = (0..=n)
                    .rev()
                    .find(|&k| k_subsets(n, k).any(|m| faulty_is_super_dominating(g, m)))
                    .unwrap_or(0);
                Ok(n - best)
            }
        }
    }

    /// Runs one check on every tree with at most `n_max` vertices (capped per check).
    pub fn verify(&self, id: &str, n_max: usize) -> Result<VerifyReport, HarnessError> {
        let check = CHECKS
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| HarnessError::UnknownCheck { id: id.to_string() })?;
        let pool = thread_pool()?;
        match pool {
            Some(p) => p.install(|| self.run(check, n_max)),
            None => self.run(check, n_max),
        }
    }

    /// Every registered check, in order.
    pub fn verify_all(&self, n_max: usize) -> Result<Vec<VerifyReport>, HarnessError> {
        CHECKS.iter().map(|c| self.verify(c.id, n_max)).collect()
    }

    fn run(&self, check: &Check, n_max: usize) -> Result<VerifyReport, HarnessError> {
        let start = Instant::now();
        let hi = n_max.min(check.cap);
        let lo = check.n_min;
        let mut outcome = if hi < lo {
            Tally::default()
        } else {
            match check.id {
                "obs2.9" => self.check_t_members(hi)?,
                _ => self.over_trees(check.id, lo, hi)?,
            }
        };
        outcome.violations.sort();
        let violations: Vec<Violation> = outcome
            .violations
            .into_iter()
            .map(|(_, tree, detail)| Violation { tree, detail })
            .collect();
        let verdict = if violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
        Ok(VerifyReport {
            theorem_id: check.id.to_string(),
            n_min: lo,
            n_max: hi,
            instances_checked: outcome.checked,
            skipped_precondition: outcome.skipped,
            violations,
            elapsed_ms: start.elapsed().as_millis() as u64,
            verdict,
        })
    }

    fn over_trees(&self, id: &str, lo: usize, hi: usize) -> Result<Tally, HarnessError> {
        let trees = trees_in_range(lo, hi).map_err(|e| FamilyError::Budget(e.0))?;
        let ctx = Context::for_check(id, hi)?;
        let per_tree: Vec<(Vec<u8>, Graph, Outcome)> = trees
            .into_par_iter()
            .map(|t| {
                let code = canonical_form(&t).expect("enumerated trees are trees");
                let outcome = self.check_tree(id, &t, &code, &ctx);
                (code, t, outcome)
            })
            .collect();
        let mut tally = Tally::default();
        let mut seen = BTreeSet::new();
        for (code, t, outcome) in per_tree {
            match outcome {
                Outcome::Skipped => tally.skipped += 1,
                Outcome::Checked(problems) => {
                    tally.checked += 1;
                    for p in problems {
                        tally.violations.push((code.clone(), emit_inline(&t), p));
                    }
                }
            }
            seen.insert(code);
        }
        if let Some(closure) = &ctx.closure {
            for (code, g) in closure {
                if (lo..=hi).contains(&g.order()) && !seen.contains(code) {
                    tally
                        .violations
                        .push((code.clone(), emit_inline(g), "closure member missing from the enumeration".into()));
                }
            }
        }
        Ok(tally)
    }

    fn check_tree(&self, id: &str, t: &Graph, code: &[u8], ctx: &Context) -> Outcome {
        let result = match id {
            "thm2.5" => self.thm25(t, code, ctx),
            "thm2.6" => self.thm26(t, code, ctx),
            "thm2.8" => self.thm28(t, code, ctx),
            "thm3.1" => thm31(t),
            "thm3.4" => thm34(t, code, ctx),
            "obs2.2" => obs22(t),
            "obs2.3" => self.obs23(t),
            "pendant" => self.pendant(t),
            "prop2.4" => prop24(t),
            other => unreachable!("no per-tree check {other}"),
        };
        result.unwrap_or_else(|e| Outcome::Checked(vec![format!("error: {e}")]))
    }

    fn thm25(&self, t: &Graph, code: &[u8], ctx: &Context) -> Result<Outcome, CheckError> {
        let n = t.order();
        let g = solvers::gamma(t)?;
        let sp = self.gamma_sp(t)?;
        let mut v = Vec::new();
        if g > sp {
            v.push(format!("gamma = {g} > gamma_sp = {sp}"));
        }
        if sp < n.div_ceil(2) || sp > n - 1 {
            v.push(format!("gamma_sp = {sp} outside [{}, {}]", n.div_ceil(2), n - 1));
        }
        if g > n / 2 {
            v.push(format!("gamma = {g} > floor(n/2)"));
        }
        let equal = g == sp;
        let in_closure = ctx.contains(code);
        let recognized = is_corona(t).is_some();
        if equal != in_closure || equal != recognized {
            v.push(format!(
                "gamma = gamma_sp is {equal}, corona closure says {in_closure}, recognizer says {recognized}"
            ));
        }
        Ok(Outcome::Checked(v))
    }

    fn thm26(&self, t: &Graph, code: &[u8], ctx: &Context) -> Result<Outcome, CheckError> {
        let gt = solvers::gamma_t(t)?;
        let sp = self.gamma_sp(t)?;
        let mut v = Vec::new();
        if 3 * gt > 4 * sp {
            v.push(format!("3 gamma_t = {} > 4 gamma_sp = {}", 3 * gt, 4 * sp));
        }
        let equal = 3 * gt == 4 * sp;
        let in_closure = ctx.contains(code);
        let rec = families::t::recognize_t(t)?;
        if equal != in_closure || equal != rec.member {
            v.push(format!(
                "3 gamma_t = 4 gamma_sp is {equal}, T closure says {in_closure}, recognizer says {}",
                rec.member
            ));
        }
        if let Some(cert) = &rec.certificate {
            replay_matches(cert, code, &mut v);
        }
        Ok(Outcome::Checked(v))
    }

    fn thm28(&self, t: &Graph, code: &[u8], ctx: &Context) -> Result<Outcome, CheckError> {
        let n = t.order();
        let sp = self.gamma_sp(t)?;
        let half = n.is_multiple_of(2) && 2 * sp == n;
        let in_closure = ctx.contains(code);
        let cert = families::r::r_certificate(t)?;
        let mut v = Vec::new();
        if half != in_closure || half != cert.is_some() {
            v.push(format!(
                "gamma_sp = n/2 is {half}, R closure says {in_closure}, pair peeling says {}",
                cert.is_some()
            ));
        }
        if let Some(cert) = &cert {
            replay_matches(cert, code, &mut v);
        }
        Ok(Outcome::Checked(v))
    }

    fn obs23(&self, t: &Graph) -> Result<Outcome, CheckError> {
        let strong: Vec<usize> = t.strong_supports().iter().collect();
        if strong.is_empty() {
            return Ok(Outcome::Skipped);
        }
        let base = self.gamma_sp(t)?;
        let leaves: Vec<Vec<usize>> = strong.iter().map(|&u| t.leaf_neighbors(u)).collect();
        let limits: Vec<usize> = strong
            .iter()
            .zip(&leaves)
            .map(|(&u, l)| (t.degree(u) - 2).min(l.len() - 1))
            .collect();
        let mut v = Vec::new();
        let mut x = vec![0usize; strong.len()];
        loop {
            let total: usize = x.iter().sum();
            if total > 0 {
                let mut drop = VertexSet::new(t.order());
                for (i, &xi) in x.iter().enumerate() {
                    for &l in &leaves[i][..xi] {
                        drop.insert(l);
                    }
                }
                let (smaller, _) = t.remove_vertices(&drop);
                let got = self.gamma_sp(&smaller)?;
                if got + total != base {
                    v.push(format!(
                        "deleting {x:?} leaves at strong supports {strong:?}: gamma_sp {base} -> {got}, expected {}",
                        base - total
                    ));
                }
            }
            let Some(i) = (0..x.len()).find(|&i| x[i] < limits[i]) else {
                break;
            };
            x[i] += 1;
            for xj in &mut x[..i] {
                *xj = 0;
            }
        }
        Ok(Outcome::Checked(v))
    }

    fn pendant(&self, t: &Graph) -> Result<Outcome, CheckError> {
        let before = (solvers::gamma(t)?, solvers::gamma_t(t)?, self.gamma_sp(t)?);
        let mut v = Vec::new();
        for s in t.supports().iter() {
            let grown = t.add_pendant(s)?;
            let after = (solvers::gamma(&grown)?, solvers::gamma_t(&grown)?, self.gamma_sp(&grown)?);
            if after != (before.0, before.1, before.2 + 1) {
                v.push(format!(
                    "leaf added at support {s}: (gamma, gamma_t, gamma_sp) {before:?} -> {after:?}"
                ));
            }
        }
        Ok(Outcome::Checked(v))
    }

    fn check_t_members(&self, hi: usize) -> Result<Tally, HarnessError> {
        let members: Vec<_> = families::t::closure(hi)?.into_iter().collect();
        let per_member: Vec<(Vec<u8>, String, Vec<String>)> = members
            .into_par_iter()
            .map(|(code, lt)| {
                let problems = self.t_member(&lt).unwrap_or_else(|e| vec![format!("error: {e}")]);
                (code, emit_inline(lt.tree()), problems)
            })
            .collect();
        let mut tally = Tally::default();
        for (code, tree, problems) in per_member {
            tally.checked += 1;
            for p in problems {
                tally.violations.push((code.clone(), tree.clone(), p));
            }
        }
        Ok(tally)
    }

    fn t_member(&self, lt: &crate::graph::LabeledTree) -> Result<Vec<String>, CheckError> {
        let t = lt.tree();
        let mut v = check_labeling(lt)?.failures();
        let gt = solvers::gamma_t(t)?;
        let sp = self.gamma_sp(t)?;
        if 3 * gt != 4 * sp {
            v.push(format!("3 gamma_t = {} but 4 gamma_sp = {}", 3 * gt, 4 * sp));
        }
        for leaf in t.leaves().iter() {
            if almost_total_set(t, leaf, gt - 1).is_none() {
                v.push(format!("no set of size {} containing leaf {leaf} dominates every other vertex totally", gt - 1));
            }
        }
        Ok(v)
    }
}

/// A set `X` of size `k` containing `v` such that every vertex other than
/// `v` has a neighbour in `X`.
pub fn almost_total_set(t: &Graph, v: usize, k: usize) -> Option<VertexSet> {
    let n = t.order();
    let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    if k == 0 || k > n {
        return None;
    }
    k_subsets(n - 1, k - 1).find_map(|m| {
        let x = VertexSet::from_iter_with_capacity(
            n,
            std::iter::once(v).chain((0..n - 1).filter(|&i| m >> i & 1 == 1).map(|i| others[i])),
        );
        others
            .iter()
            .all(|&u| !t.neighbor_set(u).is_disjoint(&x))
            .then_some(x)
    })
}

fn thm31(t: &Graph) -> Result<Outcome, CheckError> {
    let base = solvers::gamma_sp(t)?;
    let mut v = Vec::new();
    let singles = single_edge_values(t)?;
    for &(e, after) in &singles {
        if after < base {
            v.push(format!("subdividing {e:?} lowers gamma_sp {base} -> {after}"));
        }
    }
    let any_single = singles.iter().any(|&(_, after)| after > base);
    match sd_gamma_sp(t) {
        Ok(r) => {
            if (r.sd == 2) == any_single {
                v.push(format!("sd = {} disagrees with the single-edge phase", r.sd));
            }
        }
        Err(SubdivisionError::BoundViolated(k)) => v.push(match k {
            Some(k) => format!("sd = {k} exceeds 2"),
            None => "sd exceeds 2".to_string(),
        }),
        Err(e) => return Err(e.into()),
    }
    if t.diameter()? >= 4 && !thm31_pair_check(t)? {
        v.push(format!("longest path {:?}: subdividing its second and third edges does not raise gamma_sp", t.longest_path()?));
    }
    Ok(Outcome::Checked(v))
}

fn thm34(t: &Graph, code: &[u8], ctx: &Context) -> Result<Outcome, CheckError> {
    let sd = match sd_gamma_sp(t) {
        Ok(r) => Some(r.sd),
        Err(SubdivisionError::BoundViolated(k)) => k,
        Err(e) => return Err(e.into()),
    };
    let class_two = sd == Some(2);
    let in_closure = ctx.contains(code);
    let mut v = Vec::new();
    if class_two != in_closure {
        let shown = sd.map_or("> 2".to_string(), |k| k.to_string());
        v.push(format!("sd = {shown} but U closure membership is {in_closure}"));
    }
    if in_closure {
        match families::u::u_certificate(t)? {
            Some(cert) => replay_matches(&cert, code, &mut v),
            None => v.push("closure member has no star-peeling certificate".into()),
        }
    }
    Ok(Outcome::Checked(v))
}

fn obs22(t: &Graph) -> Result<Outcome, CheckError> {
    let mut v = Vec::new();
    let supports: Vec<usize> = t.supports().iter().collect();
    for s in all_gamma_sp_sets(t)? {
        let sbar = s.complement();
        for &u in &supports {
            let mut group = VertexSet::from_iter_with_capacity(t.order(), t.leaf_neighbors(u));
            group.insert(u);
            let hit = group.intersection_len(&sbar);
            if hit > 1 {
                v.push(format!("optimal set {s}: support {u} with its leaves meets the complement {hit} times"));
            }
        }
    }
    Ok(Outcome::Checked(v))
}

fn prop24(t: &Graph) -> Result<Outcome, CheckError> {
    let sets = all_gamma_sp_sets(t)?;
    let optimum = sets.first().map_or(0, VertexSet::len);
    let optimal: BTreeSet<&VertexSet> = sets.iter().collect();
    let mut v = Vec::new();
    for s in &sets {
        for leaf in t.leaves().iter() {
            for choice in [EpnChoice::Lowest, EpnChoice::Highest] {
                match normalize_with_optimum(t, s, leaf, choice, optimum) {
                    Ok(r) if !optimal.contains(&r.set) => {
                        v.push(format!("S = {s}, leaf {leaf}, {choice:?}: output {} is not optimal", r.set));
                    }
                    Ok(r) if r.set.contains(leaf) => {
                        v.push(format!("S = {s}, leaf {leaf}, {choice:?}: leaf still in the output {}", r.set));
                    }
                    Ok(_) => {}
                    Err(e) => v.push(format!("S = {s}, leaf {leaf}, {choice:?}: {e}")),
                }
            }
        }
    }
    Ok(Outcome::Checked(v))
}

fn replay_matches(cert: &families::FamilyCertificate, code: &[u8], v: &mut Vec<String>) {
    match families::replay(cert) {
        Ok(g) => {
            if canonical_form(&g).ok().as_deref() != Some(code) {
                v.push(format!("{} certificate replays to a different tree", cert.family));
            }
        }
        Err(e) => v.push(format!("{} certificate does not replay: {e}", cert.family)),
    }
}

#[derive(Debug, Error)]
enum CheckError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
}

enum Outcome {
    Skipped,
    Checked(Vec<String>),
}

#[derive(Default)]
struct Tally {
    checked: usize,
    skipped: usize,
    violations: Vec<(Vec<u8>, String, String)>,
}

/// Family closure a check compares against, built before the parallel section.
struct Context {
    closure: Option<BTreeMap<Vec<u8>, Graph>>,
}

impl Context {
    fn for_check(id: &str, hi: usize) -> Result<Self, HarnessError> {
        let family = match id {
            "thm2.5" => Some(Family::Corona),
            "thm2.6" => Some(Family::T),
            "thm2.8" => Some(Family::R),
            "thm3.4" => Some(Family::U),
            _ => None,
        };
        let closure = family.map(|f| families::enumerate_family(f, hi)).transpose()?;
        Ok(Self { closure })
    }

    fn contains(&self, code: &[u8]) -> bool {
        self.closure.as_ref().is_some_and(|c| c.contains_key(code))
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, HarnessError> {
    let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()) else {
        return Ok(None);
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build()
        .map(Some)
        .map_err(|e| HarnessError::ThreadPool(e.to_string()))
}

pub fn verify(id: &str, n_max: usize) -> Result<VerifyReport, HarnessError> {
    Engine::default().verify(id, n_max)
}

pub fn verify_all(n_max: usize) -> Result<Vec<VerifyReport>, HarnessError> {
    Engine::default().verify_all(n_max)
}
