//! Slow, independent reference implementations used only by tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use superdom::Graph;

fn masks(g: &Graph) -> Vec<u32> {
    assert!(g.order() <= 20, "oracle is for tiny graphs");
    (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Minimum over all subsets passing `ok`.
fn min_subset(n: usize, ok: impl Fn(u32) -> bool) -> Option<usize> {
    (0u32..1 << n).filter(|&m| ok(m)).map(|m| m.count_ones() as usize).min()
}

pub fn oracle_is_dominating(g: &Graph, d: u32) -> bool {
    let nb = masks(g);
    (0..g.order()).all(|v| d >> v & 1 == 1 || nb[v] & d != 0)
}

pub fn oracle_is_total_dominating(g: &Graph, d: u32) -> bool {
    let nb = masks(g);
    (0..g.order()).all(|v| nb[v] & d != 0)
}

/// Straight from the definition: every u outside S has some v in S whose
/// only neighbour outside S is u.
pub fn oracle_is_super_dominating(g: &Graph, s: u32) -> bool {
    let n = g.order();
    let nb = masks(g);
    let out = !s & ((1u32 << n) - 1);
    (0..n)
        .filter(|&u| out >> u & 1 == 1)
        .all(|u| (0..n).any(|v| s >> v & 1 == 1 && nb[v] & out == 1 << u))
}

pub fn oracle_gamma(g: &Graph) -> usize {
    min_subset(g.order(), |m| oracle_is_dominating(g, m)).unwrap()
}

pub fn oracle_gamma_t(g: &Graph) -> usize {
    min_subset(g.order(), |m| oracle_is_total_dominating(g, m)).unwrap()
}

pub fn oracle_gamma_sp(g: &Graph) -> usize {
    min_subset(g.order(), |m| oracle_is_super_dominating(g, m)).unwrap()
}

/// Every minimum super dominating set as a sorted list of masks.
pub fn oracle_all_sp_sets(g: &Graph) -> Vec<u32> {
    let k = oracle_gamma_sp(g);
    (0u32..1 << g.order())
        .filter(|&m| m.count_ones() as usize == k && oracle_is_super_dominating(g, m))
        .collect()
}

/// Rooted trees on `n` vertices as preorder level sequences (root at level 1),
/// generated by the Beyer-Hedetniemi successor rule.
pub fn rooted_level_sequences(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut l: Vec<usize> = (1..=n).collect();
    let mut out = vec![l.clone()];
    loop {
        let Some(p) = (0..n).rev().find(|&i| l[i] != 2 && i > 0) else {
            return out;
        };
        let q = (0..p).rev().find(|&i| l[i] == l[p] - 1).unwrap();
        for i in p..n {
            l[i] = l[i - (p - q)];
        }
        out.push(l.clone());
    }
}

pub fn tree_from_levels(levels: &[usize]) -> Graph {
    let mut stack: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    for (v, &lvl) in levels.iter().enumerate() {
        stack.truncate(lvl - 1);
        if let Some(&parent) = stack.last() {
            edges.push((parent, v));
        }
        stack.push(v);
    }
    Graph::new(levels.len(), edges).unwrap()
}

/// Canonical string of a free tree: the least rooted encoding over all roots.
/// Different from the library's centroid-based form.
pub fn min_root_code(t: &Graph) -> String {
    fn enc(t: &Graph, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| enc(t, w, Some(v)))
            .collect();
        kids.sort();
        format!("1{}0", kids.concat())
    }
    (0..t.order()).map(|r| enc(t, r, None)).min().unwrap()
}

/// Free trees on `n` vertices from the second generator, one per class.
pub fn second_generator(n: usize) -> BTreeSet<String> {
    rooted_level_sequences(n)
        .iter()
        .map(|l| min_root_code(&tree_from_levels(l)))
        .collect()
}

/// Number of unlabeled free trees on `n` vertices via Otter's formula.
pub fn otter_count(n: usize) -> u64 {
    // Rooted tree counts r[1..=n] by the standard divisor-sum recurrence.
    let mut r = vec![0u64; n + 1];
    if n >= 1 {
        r[1] = 1;
    }
    for m in 2..=n {
        let mut s = 0u64;
        for k in 1..m {
            let d_sum: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * r[d]).sum();
            s += d_sum * r[m - k];
        }
        r[m] = s / (m as u64 - 1);
    }
    let mut pairs: u64 = (1..n).map(|i| r[i] * r[n - i]).sum();
    if n.is_multiple_of(2) {
        pairs -= r[n / 2];
    }
    r[n] - pairs / 2
}

/// Isomorphism by trying every permutation.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort();
    db.sort();
    if da != db {
        return false;
    }
    let n = a.order();
    let mut perm: Vec<usize> = (0..n).collect();
    fn search(a: &Graph, b: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>, i: usize) -> bool {
        let n = a.order();
        if i == n {
            return true;
        }
        for c in 0..n {
            if used[c] || a.degree(i) != b.degree(c) {
                continue;
            }
            let consistent = a.neighbors(i).iter().filter(|&&w| w < i).all(|&w| b.has_edge(perm[w], c));
            if !consistent {
                continue;
            }
            perm[i] = c;
            used[c] = true;
            if search(a, b, perm, used, i + 1) {
                return true;
            }
            used[c] = false;
        }
        false
    }
    search(a, b, &mut perm, &mut vec![false; n], 0)
}

/// The star `K_{1,m}` with `m >= 3` leaves.
pub fn is_big_star(t: &Graph) -> bool {
    t.order() >= 4 && t.vertices().any(|v| t.degree(v) == t.order() - 1)
}
