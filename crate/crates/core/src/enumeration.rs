//! Non-isomorphic free trees, generated level by level.
//!
//! Level `n` is obtained by hanging a leaf from every vertex of every tree
//! on `n - 1` vertices and keeping one representative per canonical form.
//! Representatives are stored canonically relabelled and sorted by their
//! canonical form, so the output is deterministic.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_form, canonical_relabel};
use crate::graph::Graph;
use crate::io::emit_edge_list;

pub const MAX_TREE_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("tree order {0} outside the supported range 1..={MAX_TREE_ORDER}")]
pub struct OrderOutOfBudget(pub usize);

/// All trees of one order, one per isomorphism class.
#[derive(Debug, Clone)]
pub struct TreeStream {
    n: usize,
    trees: std::vec::IntoIter<Graph>,
}

impl TreeStream {
    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for TreeStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        self.trees.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.trees.size_hint()
    }
}

impl ExactSizeIterator for TreeStream {}

/// Cached levels of the generator. Level `i` holds the trees on `i + 1` vertices.
#[derive(Debug, Default)]
pub struct TreeCatalog {
    levels: Vec<Vec<Graph>>,
}

impl TreeCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn level(&mut self, n: usize) -> Result<&[Graph], OrderOutOfBudget> {
        if n == 0 || n > MAX_TREE_ORDER {
            return Err(OrderOutOfBudget(n));
        }
        if self.levels.is_empty() {
            self.levels.push(vec![Graph::empty(1)]);
        }
        while self.levels.len() < n {
            let next = extend_level(self.levels.last().expect("seeded"));
            self.levels.push(next);
        }
        Ok(&self.levels[n - 1])
    }
}

fn extend_level(prev: &[Graph]) -> Vec<Graph> {
    let candidates: Vec<(Vec<u8>, Graph)> = prev
        .par_iter()
        .flat_map_iter(|t| {
            t.vertices().map(move |v| {
                let g = t.add_pendant(v).expect("vertex exists");
                let code = canonical_form(&g).expect("pendant extension of a tree is a tree");
                (code, g)
            })
        })
        .collect();
    let mut unique: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    for (code, g) in candidates {
        unique.entry(code).or_insert(g);
    }
    unique
        .into_values()
        .map(|g| canonical_relabel(&g).expect("tree"))
        .collect()
}

fn shared_catalog() -> &'static Mutex<TreeCatalog> {
    static CATALOG: OnceLock<Mutex<TreeCatalog>> = OnceLock::new();
    CATALOG.get_or_init(|| Mutex::new(TreeCatalog::new()))
}

/// Every tree on `n` vertices up to isomorphism.
pub fn all_trees(n: usize) -> Result<TreeStream, OrderOutOfBudget> {
    if n == 0 || n > MAX_TREE_ORDER {
        return Err(OrderOutOfBudget(n));
    }
    let lock = || shared_catalog().lock().unwrap_or_else(|e| e.into_inner());
    loop {
        // Never hold the lock across the rayon extension (re-entrant deadlock).
        let prev = {
            let mut catalog = lock();
            if catalog.levels.len() >= n {
                let trees = catalog.level(n)?.to_vec();
                return Ok(TreeStream {
                    n,
                    trees: trees.into_iter(),
                });
            }
            if catalog.levels.is_empty() {
                catalog.levels.push(vec![Graph::empty(1)]);
                continue;
            }
            (catalog.levels.len(), catalog.levels.last().expect("seeded").clone())
        };
        let next = extend_level(&prev.1);
        let mut catalog = lock();
        if catalog.levels.len() == prev.0 {
            catalog.levels.push(next);
        }
    }
}

/// Trees with `n_min..=n_max` vertices, ascending by order. An empty range yields nothing.
pub fn trees_in_range(n_min: usize, n_max: usize) -> Result<Vec<Graph>, OrderOutOfBudget> {
    let mut out = Vec::new();
    for n in n_min.max(1)..=n_max {
        out.extend(all_trees(n)?);
    }
    Ok(out)
}

pub fn hex_name(code: &[u8]) -> String {
    hex::encode(code)
}

/// Writes one edge-list file per tree into `dir`, named by the hex of its canonical form.
pub fn dump_edge_lists<'a>(
    dir: &Path,
    trees: impl IntoIterator<Item = &'a Graph>,
) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for t in trees {
        let code = canonical_form(t).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e))?;
        let path = dir.join(format!("{}.txt", hex_name(&code)));
        std::fs::write(&path, emit_edge_list(t))?;
        paths.push(path);
    }
    Ok(paths)
}
