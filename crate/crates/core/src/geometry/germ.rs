//! The tree of open cells around a point.

use std::collections::VecDeque;

use super::complex::Simplex;
use super::rational::RationalPoint;
use super::GeometryError;
use crate::forest::RootedForest;

/// Builds the rooted tree with one vertex `P{i}` per cell `cells[i]` (read as
/// an open simplex), an edge between `P` and `Q` whenever one lies in the
/// closure of the other and their dimensions differ by one, rooted at the
/// cell `{d}`.
///
/// The cells must have pairwise disjoint relative interiors, and for each
/// cell `P` and each `e < dim P` exactly one cell of dimension `e` must lie in
/// the closure of `P`.
pub fn germ_tree(cells: &[Simplex], d: &RationalPoint) -> Result<RootedForest, GeometryError> {
    let root = cells
        .iter()
        .position(|c| c.dim() == 0 && &c.vertices()[0] == d)
        .ok_or_else(|| GeometryError::MissingRootCell(d.to_string()))?;
    for (i, p) in cells.iter().enumerate() {
        if p.ambient_dim() != d.dim() {
            return Err(GeometryError::DimensionMismatch { expected: d.dim(), got: p.ambient_dim() });
        }
        for q in &cells[..i] {
            if p.relint_meets(q) {
                return Err(GeometryError::NotPairwiseDisjoint(q.to_string(), p.to_string()));
            }
        }
    }
    // below[i] lists the cells inside the closure of cell i
    let below: Vec<Vec<usize>> = cells
        .iter()
        .enumerate()
        .map(|(i, p)| (0..cells.len()).filter(|&j| j != i && p.closure_contains(&cells[j])).collect())
        .collect();
    for (i, p) in cells.iter().enumerate() {
        for e in 0..p.dim() {
            let count = below[i].iter().filter(|&&j| cells[j].dim() == e).count();
            if count != 1 {
                return Err(GeometryError::ConditionVViolated { cell: p.to_string(), dim: e, count });
            }
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    let mut edges = 0;
    for (i, list) in below.iter().enumerate() {
        for &j in list {
            if cells[j].dim() + 1 == cells[i].dim() {
                adj[i].push(j);
                adj[j].push(i);
                edges += 1;
            }
        }
    }
    if edges + 1 != cells.len() {
        return Err(GeometryError::NotATree);
    }
    let mut parent: Vec<Option<usize>> = vec![None; cells.len()];
    let mut seen = vec![false; cells.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GeometryError::NotATree);
    }
    let names: Vec<String> = (0..cells.len()).map(|i| format!("P{i}")).collect();
    Ok(RootedForest::from_parents(names, parent))
}
