//! Canonical forms for free trees (AHU encoding rooted at the centroid).
//!
//! Each vertex is encoded as `(` + optional label byte + the sorted encodings
//! of its children + `)`. A tree with two centroids takes the smaller of
//! the two rooted encodings, so two trees share a form exactly when they
//! are isomorphic (label-preserving, for the labelled variant).

use crate::graph::{Graph, GraphError};

/// Canonical byte string of a tree.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, GraphError> {
    encode_min_centroid(g, None).map(|(code, _)| code)
}

/// Canonical form of a vertex-labelled tree; labels are compared as bytes.
pub fn canonical_form_labeled(g: &Graph, labels: &[u8]) -> Result<Vec<u8>, GraphError> {
    assert_eq!(labels.len(), g.order(), "one label per vertex");
    encode_min_centroid(g, Some(labels)).map(|(code, _)| code)
}

/// Relabels a tree into its canonical representative: vertices are
/// numbered in preorder from the canonical root, children visited in
/// encoding order. Isomorphic inputs produce identical graphs.
pub fn canonical_relabel(g: &Graph) -> Result<Graph, GraphError> {
    let (_, root) = encode_min_centroid(g, None)?;
    let (parent, order) = rooted_order(g, root);
    let codes = rooted_codes(g, &parent, &order, None);
    let mut perm = vec![usize::MAX; g.order()];
    let mut next = 0;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        perm[v] = next;
        next += 1;
        let mut kids: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| parent[w] == v && w != root).collect();
        // Push in reverse so the smallest code is numbered first.
        kids.sort_by(|&a, &b| codes[b].cmp(&codes[a]).then(b.cmp(&a)));
        stack.extend(kids);
    }
    Ok(g.relabel(&perm))
}

/// The one or two centroids of a tree, ascending.
pub fn centroids(g: &Graph) -> Result<Vec<usize>, GraphError> {
    g.require_tree()?;
    let n = g.order();
    let (parent, order) = rooted_order(g, 0);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if v != 0 {
            size[parent[v]] += size[v];
        }
    }
    let mut out = Vec::new();
    for v in 0..n {
        let mut heaviest = n - size[v];
        for &w in g.neighbors(v) {
            if parent[w] == v {
                heaviest = heaviest.max(size[w]);
            }
        }
        if 2 * heaviest <= n {
            out.push(v);
        }
    }
    Ok(out)
}

fn encode_min_centroid(g: &Graph, labels: Option<&[u8]>) -> Result<(Vec<u8>, usize), GraphError> {
    let cs = centroids(g)?;
    let mut best: Option<(Vec<u8>, usize)> = None;
    for c in cs {
        let code = encode_rooted(g, c, labels);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, c));
        }
    }
    Ok(best.expect("a tree has at least one centroid"))
}

/// AHU encoding of the tree rooted at `root`.
pub fn encode_rooted(g: &Graph, root: usize, labels: Option<&[u8]>) -> Vec<u8> {
    let (parent, order) = rooted_order(g, root);
    let mut codes = rooted_codes(g, &parent, &order, labels);
    std::mem::take(&mut codes[root])
}

/// BFS parent array (root is its own parent) and BFS order from `root`.
fn rooted_order(g: &Graph, root: usize) -> (Vec<usize>, Vec<usize>) {
    let n = g.order();
    let mut parent = vec![usize::MAX; n];
    parent[root] = root;
    let mut order = Vec::with_capacity(n);
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    (parent, order)
}

fn rooted_codes(g: &Graph, parent: &[usize], order: &[usize], labels: Option<&[u8]>) -> Vec<Vec<u8>> {
    let n = g.order();
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut kids: Vec<&Vec<u8>> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| parent[w] == v && parent[v] != w)
            .map(|&w| &codes[w])
            .collect();
        kids.sort();
        let mut code = Vec::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
        code.push(b'(');
        if let Some(l) = labels {
            code.push(l[v]);
        }
        for k in kids {
            code.extend_from_slice(k);
        }
        code.push(b')');
        codes[v] = code;
    }
    codes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_labelings_agree() {
        let centered_at_0 = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        let centered_at_1 = Graph::path(3);
        assert_eq!(canonical_form(&centered_at_0), canonical_form(&centered_at_1));
    }

    #[test]
    fn p4_and_claw_differ() {
        assert_ne!(canonical_form(&Graph::path(4)), canonical_form(&Graph::star(3)));
    }

    #[test]
    fn star_relabelings_agree() {
        let s = Graph::star(4);
        let base = canonical_form(&s).unwrap();
        for center in 0..5 {
            let perm: Vec<usize> = (0..5).map(|v| (v + center) % 5).collect();
            assert_eq!(canonical_form(&s.relabel(&perm)).unwrap(), base);
        }
    }

    #[test]
    fn centroid_counts() {
        assert_eq!(centroids(&Graph::path(4)).unwrap(), vec![1, 2]);
        assert_eq!(centroids(&Graph::path(5)).unwrap(), vec![2]);
        assert_eq!(centroids(&Graph::star(4)).unwrap(), vec![0]);
        assert_eq!(centroids(&Graph::path(2)).unwrap(), vec![0, 1]);
    }

    #[test]
    fn rejects_non_trees() {
        assert!(canonical_form(&Graph::cycle(4)).is_err());
    }

    #[test]
    fn labels_distinguish() {
        let p3 = Graph::path(3);
        let a = canonical_form_labeled(&p3, b"CAB").unwrap();
        let b = canonical_form_labeled(&p3, b"BAC").unwrap();
        let c = canonical_form_labeled(&p3, b"ABC").unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn canonical_relabel_is_invariant() {
        let t = Graph::new(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        let perm = [5, 3, 1, 0, 2, 4];
        assert_eq!(canonical_relabel(&t).unwrap(), canonical_relabel(&t.relabel(&perm)).unwrap());
        assert_eq!(canonical_form(&canonical_relabel(&t).unwrap()), canonical_form(&t));
    }
}
