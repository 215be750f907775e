//! Finite rooted forests: validation, initial segments, subtrees and
//! AHU canonical forms.
//!
//! A forest is the index set for the coordinates of the tree-lexicographic
//! groups in [`crate::tlex`]. Vertex names are opaque; everything that
//! matters for classification is label-free, which is why isomorphism is
//! decided through [`RootedForest::ahu_canonical`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("parent relation contains a cycle through vertex `{0}`")]
    CycleDetected(String),
    #[error("parent entry `{child}` -> `{parent}` references an unknown vertex")]
    DanglingParent { child: String, parent: String },
    #[error("roots list does not match the parentless vertices: {0}")]
    RootMismatch(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("vertex set is not an initial segment of the tree rooted at `{0}`")]
    NotInitialSegment(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// Index of a vertex inside one [`RootedForest`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Wire form of a forest, with the exact field names of the JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub parent: BTreeMap<String, String>,
    pub roots: Vec<String>,
}

/// A validated finite rooted forest. Immutable after construction.
#[derive(Debug, Clone)]
pub struct RootedForest {
    names: Vec<String>,
    index: HashMap<String, usize>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
}

impl PartialEq for RootedForest {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.parent == other.parent && self.roots == other.roots
    }
}

impl Eq for RootedForest {}

impl RootedForest {
    /// Checks a raw description and builds the forest.
    pub fn validate(raw: &ForestJson) -> Result<Self, ForestError> {
        let mut index = HashMap::with_capacity(raw.vertices.len());
        for (i, name) in raw.vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(ForestError::DuplicateVertex(name.clone()));
            }
        }
        let mut parent = vec![None; raw.vertices.len()];
        for (child, par) in &raw.parent {
            let dangling = || ForestError::DanglingParent {
                child: child.clone(),
                parent: par.clone(),
            };
            let c = *index.get(child).ok_or_else(dangling)?;
            let p = *index.get(par).ok_or_else(dangling)?;
            parent[c] = Some(p);
        }
        detect_cycle(&parent).map_err(|v| ForestError::CycleDetected(raw.vertices[v].clone()))?;

        let mut roots = Vec::with_capacity(raw.roots.len());
        let mut seen = BTreeSet::new();
        for r in &raw.roots {
            let i = *index
                .get(r)
                .ok_or_else(|| ForestError::RootMismatch(format!("`{r}` is not a vertex")))?;
            if parent[i].is_some() {
                return Err(ForestError::RootMismatch(format!("`{r}` has a parent")));
            }
            if !seen.insert(i) {
                return Err(ForestError::RootMismatch(format!("`{r}` listed twice")));
            }
            roots.push(i);
        }
        if let Some(v) = (0..parent.len()).find(|&v| parent[v].is_none() && !seen.contains(&v)) {
            return Err(ForestError::RootMismatch(format!(
                "parentless vertex `{}` missing from roots",
                raw.vertices[v]
            )));
        }
        Ok(Self::assemble(raw.vertices.clone(), index, parent, roots))
    }

    /// Builds a forest from names and a parent array. Roots are taken in
    /// vertex order. Panics if the parent array is cyclic or names repeat.
    pub fn from_parents(names: Vec<String>, parent: Vec<Option<usize>>) -> Self {
        assert_eq!(names.len(), parent.len());
        assert!(detect_cycle(&parent).is_ok(), "cyclic parent array");
        let index: HashMap<_, _> = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        assert_eq!(index.len(), names.len(), "duplicate vertex names");
        let roots = (0..parent.len()).filter(|&v| parent[v].is_none()).collect();
        Self::assemble(names, index, parent, roots)
    }

    /// Parent array with generated names `v0, v1, ...`.
    pub fn from_parent_indices(parent: &[Option<usize>]) -> Self {
        let names = (0..parent.len()).map(|i| format!("v{i}")).collect();
        Self::from_parents(names, parent.to_vec())
    }

    pub fn empty() -> Self {
        Self::from_parents(Vec::new(), Vec::new())
    }

    pub fn singleton() -> Self {
        Self::from_parent_indices(&[None])
    }

    /// Chain `v0 -> v1 -> ... -> v(n-1)` rooted at `v0`.
    pub fn chain(n: usize) -> Self {
        let parent: Vec<_> = (0..n).map(|i| i.checked_sub(1)).collect();
        Self::from_parent_indices(&parent)
    }

    /// Root `v0` with `leaves` children.
    pub fn star(leaves: usize) -> Self {
        let parent: Vec<_> = (0..=leaves).map(|i| if i == 0 { None } else { Some(0) }).collect();
        Self::from_parent_indices(&parent)
    }

    /// `k` singleton trees.
    pub fn singletons(k: usize) -> Self {
        Self::from_parent_indices(&vec![None; k])
    }

    /// Uniform-ish random forest on `n` vertices: each vertex either starts
    /// a new tree or attaches below an earlier vertex.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let parent: Vec<_> = (0..n)
            .map(|i| {
                let pick = rng.gen_range(0..=i);
                (pick < i).then_some(pick)
            })
            .collect();
        Self::from_parent_indices(&parent)
    }

    fn assemble(
        names: Vec<String>,
        index: HashMap<String, usize>,
        parent: Vec<Option<usize>>,
        roots: Vec<usize>,
    ) -> Self {
        let mut children = vec![Vec::new(); names.len()];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(v);
            }
        }
        Self { names, index, parent, children, roots }
    }

    pub fn to_json(&self) -> ForestJson {
        ForestJson {
            vertices: self.names.clone(),
            parent: self
                .parent
                .iter()
                .enumerate()
                .filter_map(|(c, p)| p.map(|p| (self.names[c].clone(), self.names[p].clone())))
                .collect(),
            roots: self.roots.iter().map(|&r| self.names[r].clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied().map(VertexId)
    }

    pub fn lookup(&self, name: &str) -> Result<VertexId, ForestError> {
        self.vertex(name).ok_or_else(|| ForestError::UnknownVertex(name.to_owned()))
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v.0].map(VertexId)
    }

    pub fn children(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.children[v.0].iter().copied().map(VertexId)
    }

    pub fn roots(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.roots.iter().copied().map(VertexId)
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn is_root(&self, v: VertexId) -> bool {
        self.parent[v.0].is_none()
    }

    /// Root of the tree containing `v`.
    pub fn root_of(&self, mut v: VertexId) -> VertexId {
        while let Some(p) = self.parent(v) {
            v = p;
        }
        v
    }

    pub fn depth(&self, mut v: VertexId) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent(v) {
            v = p;
            d += 1;
        }
        d
    }

    /// True when `anc` lies on the path from `v` to its root, `v` excluded.
    pub fn is_strict_ancestor(&self, anc: VertexId, v: VertexId) -> bool {
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            if p == anc {
                return true;
            }
            cur = p;
        }
        false
    }

    /// True when every tree is a chain (each vertex has at most one child).
    pub fn is_chain_forest(&self) -> bool {
        self.children.iter().all(|c| c.len() <= 1)
    }

    /// Vertices in depth-first preorder, trees in root order.
    pub fn preorder(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack: Vec<usize> = self.roots.iter().rev().copied().collect();
        while let Some(v) = stack.pop() {
            out.push(VertexId(v));
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// `T_w`: all vertices whose path to the root passes through `w`.
    pub fn subtree(&self, w: VertexId) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        let mut stack = vec![w.0];
        while let Some(v) = stack.pop() {
            out.insert(VertexId(v));
            stack.extend(&self.children[v]);
        }
        out
    }

    pub fn subtree_by_name(&self, w: &str) -> Result<BTreeSet<VertexId>, ForestError> {
        Ok(self.subtree(self.lookup(w)?))
    }

    /// Next vertices `N(seg)` of an initial segment of the tree rooted at
    /// `root`. The empty segment has the root as its only next vertex.
    pub fn next_vertices(
        &self,
        root: VertexId,
        seg: &BTreeSet<VertexId>,
    ) -> Result<BTreeSet<VertexId>, ForestError> {
        let root_name = || ForestError::NotInitialSegment(self.names[root.0].clone());
        if !self.is_root(root) {
            return Err(root_name());
        }
        for &v in seg {
            if v.0 >= self.len() || self.root_of(v) != root {
                return Err(root_name());
            }
            if let Some(p) = self.parent(v) {
                if !seg.contains(&p) {
                    return Err(root_name());
                }
            }
        }
        if seg.is_empty() {
            return Ok(BTreeSet::from([root]));
        }
        Ok(seg
            .iter()
            .flat_map(|&v| self.children(v))
            .filter(|w| !seg.contains(w))
            .collect())
    }

    fn vertex_codes(&self) -> Vec<String> {
        let mut codes = vec![String::new(); self.len()];
        // children have larger preorder positions, so reverse preorder is bottom-up
        for v in self.preorder().into_iter().rev() {
            let mut kids: Vec<&str> = self.children[v.0].iter().map(|&c| codes[c].as_str()).collect();
            kids.sort_unstable();
            let mut code = String::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
            code.push('(');
            kids.into_iter().for_each(|k| code.push_str(k));
            code.push(')');
            codes[v.0] = code;
        }
        codes
    }

    /// AHU encoding of the forest as a multiset of rooted trees. Two forests
    /// get the same string exactly when they are isomorphic.
    pub fn ahu_canonical(&self) -> String {
        let codes = self.vertex_codes();
        let mut trees: Vec<&str> = self.roots.iter().map(|&r| codes[r].as_str()).collect();
        trees.sort_unstable();
        trees.concat()
    }

    /// Decides rooted-forest isomorphism. On success returns the image of
    /// every vertex of `self` in `other`.
    pub fn iso(&self, other: &RootedForest) -> Option<Vec<VertexId>> {
        if self.len() != other.len() || self.ahu_canonical() != other.ahu_canonical() {
            return None;
        }
        let (ca, cb) = (self.vertex_codes(), other.vertex_codes());
        let mut map = vec![VertexId(usize::MAX); self.len()];
        let mut pending: Vec<(Vec<usize>, Vec<usize>)> = vec![(self.roots.clone(), other.roots.clone())];
        while let Some((xs, ys)) = pending.pop() {
            let mut by_code: HashMap<&str, Vec<usize>> = HashMap::new();
            for &y in &ys {
                by_code.entry(cb[y].as_str()).or_default().push(y);
            }
            // pop in listing order so equal forests map by identity
            by_code.values_mut().for_each(|ys| ys.reverse());
            for &x in &xs {
                let y = by_code.get_mut(ca[x].as_str())?.pop()?;
                map[x] = VertexId(y);
                pending.push((self.children[x].clone(), other.children[y].clone()));
            }
        }
        Some(map)
    }

    pub fn is_isomorphic(&self, other: &RootedForest) -> bool {
        self.ahu_canonical() == other.ahu_canonical()
    }

    /// Same shape with vertex names replaced through `rename`.
    pub fn relabeled(&self, rename: impl Fn(&str) -> String) -> Self {
        let names = self.names.iter().map(|n| rename(n)).collect();
        Self::from_parents(names, self.parent.clone())
    }

    /// Same forest with vertices listed in the order given by `perm`
    /// (`perm[new] = old`), and roots in that induced order.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let names = perm.iter().map(|&old| self.names[old].clone()).collect();
        let parent = perm.iter().map(|&old| self.parent[old].map(|p| inv[p])).collect();
        Self::from_parents(names, parent)
    }
}

/// Returns the first vertex found on a cycle, if any.
fn detect_cycle(parent: &[Option<usize>]) -> Result<(), usize> {
    // 0 = unvisited, 1 = on current walk, 2 = known acyclic
    let mut state = vec![0u8; parent.len()];
    for start in 0..parent.len() {
        let mut walk = Vec::new();
        let mut cur = Some(start);
        while let Some(v) = cur {
            match state[v] {
                2 => break,
                1 => return Err(v),
                _ => {
                    state[v] = 1;
                    walk.push(v);
                    cur = parent[v];
                }
            }
        }
        walk.into_iter().for_each(|v| state[v] = 2);
    }
    Ok(())
}
