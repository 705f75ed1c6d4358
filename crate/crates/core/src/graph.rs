//! Dynamic undirected graph with edge deletion, an indexed edge set that
//! supports constant-time uniform sampling, and component analysis.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Above this many vertices the position tables switch from a dense `N x N`
/// array to a hash map.
pub const DENSE_MAX_VERTICES: usize = 2048;

const VACANT: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0} is not present")]
    NoSuchEdge(EdgeKey),
    #[error("cannot sample from an empty edge set")]
    EmptySet,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    BadVertex { vertex: u32, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}")]
    DuplicateEdge(EdgeKey),
}

/// A vertex of the population, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Unordered vertex pair stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeKey {
    a: u32,
    b: u32,
}

impl EdgeKey {
    pub fn new(x: u32, y: u32) -> Result<Self, GraphError> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(EdgeKey { a: x, b: y }),
            std::cmp::Ordering::Greater => Ok(EdgeKey { a: y, b: x }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(x)),
        }
    }

    /// Caller guarantees `x != y`.
    #[inline]
    pub(crate) fn new_unchecked(x: u32, y: u32) -> Self {
        debug_assert_ne!(x, y);
        if x < y {
            EdgeKey { a: x, b: y }
        } else {
            EdgeKey { a: y, b: x }
        }
    }

    #[inline]
    pub fn a(self) -> u32 {
        self.a
    }

    #[inline]
    pub fn b(self) -> u32 {
        self.b
    }

    #[inline]
    fn slot_key(self, n: usize) -> u64 {
        self.a as u64 * n as u64 + self.b as u64
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Position table over the key space `[0, n*n)`.
#[derive(Debug, Clone)]
enum Slots {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

impl Slots {
    fn new(n: usize) -> Self {
        if n <= DENSE_MAX_VERTICES {
            Slots::Dense(vec![VACANT; n * n])
        } else {
            Slots::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn get(&self, key: u64) -> Option<u32> {
        match self {
            Slots::Dense(v) => {
                let p = v[key as usize];
                (p != VACANT).then_some(p)
            }
            Slots::Sparse(m) => m.get(&key).copied(),
        }
    }

    #[inline]
    fn set(&mut self, key: u64, pos: u32) {
        match self {
            Slots::Dense(v) => v[key as usize] = pos,
            Slots::Sparse(m) => {
                m.insert(key, pos);
            }
        }
    }

    #[inline]
    fn clear(&mut self, key: u64) {
        match self {
            Slots::Dense(v) => v[key as usize] = VACANT,
            Slots::Sparse(m) => {
                m.remove(&key);
            }
        }
    }
}

/// A set of edges kept in a dense array with an inverse position map, so that
/// membership, insertion, swap-removal and uniform sampling are all O(1).
#[derive(Debug, Clone)]
pub struct IndexedEdgeSet {
    n: usize,
    items: Vec<EdgeKey>,
    position: Slots,
}

impl IndexedEdgeSet {
    /// Empty set for edges over `n` vertices.
    pub fn new(n: usize) -> Self {
        IndexedEdgeSet { n, items: Vec::new(), position: Slots::new(n) }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[EdgeKey] {
        &self.items
    }

    #[inline]
    pub fn contains(&self, e: EdgeKey) -> bool {
        self.position.get(e.slot_key(self.n)).is_some()
    }

    /// Returns `false` if `e` was already present.
    pub fn insert(&mut self, e: EdgeKey) -> bool {
        let key = e.slot_key(self.n);
        if self.position.get(key).is_some() {
            return false;
        }
        self.position.set(key, self.items.len() as u32);
        self.items.push(e);
        true
    }

    /// Returns `false` if `e` was absent.
    pub fn remove(&mut self, e: EdgeKey) -> bool {
        let key = e.slot_key(self.n);
        let Some(pos) = self.position.get(key) else {
            return false;
        };
        self.position.clear(key);
        self.items.swap_remove(pos as usize);
        if let Some(&moved) = self.items.get(pos as usize) {
            self.position.set(moved.slot_key(self.n), pos);
        }
        true
    }

    /// Uniform element; the set is unchanged.
    #[inline]
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<EdgeKey, GraphError> {
        if self.items.is_empty() {
            return Err(GraphError::EmptySet);
        }
        Ok(self.items[rng.random_range(0..self.items.len())])
    }

    /// Checks `position(items[i]) == i` and that no other slot is occupied.
    pub fn check_inverse(&self) -> Result<(), String> {
        for (i, e) in self.items.iter().enumerate() {
            match self.position.get(e.slot_key(self.n)) {
                Some(p) if p as usize == i => {}
                other => return Err(format!("item {i} ({e}) maps to {other:?}")),
            }
        }
        let occupied = match &self.position {
            Slots::Dense(v) => v.iter().filter(|&&p| p != VACANT).count(),
            Slots::Sparse(m) => m.len(),
        };
        if occupied != self.items.len() {
            return Err(format!("{occupied} occupied slots for {} items", self.items.len()));
        }
        Ok(())
    }
}

/// Undirected simple graph on `{0, ..., n-1}` that only ever loses edges once
/// built.
#[derive(Debug, Clone)]
pub struct DynamicGraph {
    adj: Vec<Vec<u32>>,
    // slot x*n + y holds the index of y inside adj[x]
    adj_pos: Slots,
    edges: IndexedEdgeSet,
}

impl DynamicGraph {
    pub fn empty(n: usize) -> Self {
        DynamicGraph { adj: vec![Vec::new(); n], adj_pos: Slots::new(n), edges: IndexedEdgeSet::new(n) }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = DynamicGraph::empty(n);
        for v in g.adj.iter_mut() {
            v.reserve_exact(n.saturating_sub(1));
        }
        for x in 0..n as u32 {
            for y in (x + 1)..n as u32 {
                g.insert_new(EdgeKey::new_unchecked(x, y));
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = DynamicGraph::empty(n);
        for &(x, y) in edges {
            for v in [x, y] {
                if v as usize >= n {
                    return Err(GraphError::BadVertex { vertex: v, n });
                }
            }
            let e = EdgeKey::new(x, y)?;
            if g.has_edge(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
            g.insert_new(e);
        }
        Ok(g)
    }

    fn insert_new(&mut self, e: EdgeKey) {
        let n = self.n();
        let (a, b) = (e.a, e.b);
        self.adj_pos.set(a as u64 * n as u64 + b as u64, self.adj[a as usize].len() as u32);
        self.adj[a as usize].push(b);
        self.adj_pos.set(b as u64 * n as u64 + a as u64, self.adj[b as usize].len() as u32);
        self.adj[b as usize].push(a);
        self.edges.insert(e);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    #[inline]
    pub fn has_edge(&self, e: EdgeKey) -> bool {
        self.edges.contains(e)
    }

    pub fn edges(&self) -> &IndexedEdgeSet {
        &self.edges
    }

    /// Uniform present edge.
    #[inline]
    pub fn sample_edge<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<EdgeKey, GraphError> {
        self.edges.sample_uniform(rng)
    }

    pub fn remove_edge(&mut self, e: EdgeKey) -> Result<(), GraphError> {
        if !self.edges.remove(e) {
            return Err(GraphError::NoSuchEdge(e));
        }
        self.unlink(e.a, e.b);
        self.unlink(e.b, e.a);
        Ok(())
    }

    // drop `y` from adj[x]
    fn unlink(&mut self, x: u32, y: u32) {
        let n = self.n() as u64;
        let key = x as u64 * n + y as u64;
        let pos = self.adj_pos.get(key).expect("adjacency out of sync") as usize;
        self.adj_pos.clear(key);
        let list = &mut self.adj[x as usize];
        list.swap_remove(pos);
        if let Some(&moved) = list.get(pos) {
            self.adj_pos.set(x as u64 * n + moved as u64, pos as u32);
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Component sizes in descending order; isolated vertices count as size 1.
    pub fn connected_components(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        let mut sizes = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root as u32);
            let mut size = 0;
            while let Some(v) = queue.pop_front() {
                size += 1;
                for &w in &self.adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Component label per vertex (labels are 0-based in discovery order).
    pub fn component_labels(&self) -> Vec<u32> {
        let n = self.n();
        let mut label = vec![u32::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for root in 0..n {
            if label[root] != u32::MAX {
                continue;
            }
            label[root] = next;
            stack.push(root as u32);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v as usize] {
                    if label[w as usize] == u32::MAX {
                        label[w as usize] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// Full structural audit: symmetry, position tables and the edge-count
    /// identity.
    pub fn check_consistency(&self) -> Result<(), String> {
        let n = self.n() as u64;
        let mut degree_sum = 0;
        for (x, list) in self.adj.iter().enumerate() {
            degree_sum += list.len();
            for (i, &y) in list.iter().enumerate() {
                if y as usize == x {
                    return Err(format!("self-loop at {x}"));
                }
                if self.adj_pos.get(x as u64 * n + y as u64) != Some(i as u32) {
                    return Err(format!("adjacency position of {y} in adj({x}) is stale"));
                }
                if self.adj_pos.get(y as u64 * n + x as u64).is_none() {
                    return Err(format!("asymmetric adjacency {x} -> {y}"));
                }
                if !self.edges.contains(EdgeKey::new_unchecked(x as u32, y)) {
                    return Err(format!("edge {x}-{y} missing from edge set"));
                }
            }
        }
        if degree_sum != 2 * self.edge_count() {
            return Err(format!("degree sum {degree_sum} != 2 * edge count {}", self.edge_count()));
        }
        self.edges.check_inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_pcg::Pcg64Mcg;

    fn e(x: u32, y: u32) -> EdgeKey {
        EdgeKey::new(x, y).unwrap()
    }

    fn two_triangles() -> DynamicGraph {
        DynamicGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn edge_key_is_canonical() {
        assert_eq!(e(3, 1), e(1, 3));
        assert_eq!(e(3, 1).a(), 1);
        assert_eq!(EdgeKey::new(2, 2), Err(GraphError::SelfLoop(2)));
    }

    #[test]
    fn remove_from_triangle_keeps_it_connected() {
        let mut g = DynamicGraph::complete(3);
        g.remove_edge(e(0, 1)).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_connected());
        g.check_consistency().unwrap();
    }

    #[test]
    fn removing_only_edge_splits_pair() {
        let mut g = DynamicGraph::complete(2);
        g.remove_edge(e(0, 1)).unwrap();
        assert_eq!(g.connected_components(), vec![1, 1]);
    }

    #[test]
    fn double_remove_is_an_error() {
        let mut g = DynamicGraph::complete(3);
        g.remove_edge(e(0, 1)).unwrap();
        assert_eq!(g.remove_edge(e(0, 1)), Err(GraphError::NoSuchEdge(e(0, 1))));
    }

    #[test]
    fn component_sizes() {
        assert_eq!(DynamicGraph::complete(4).connected_components(), vec![4]);
        assert_eq!(DynamicGraph::empty(3).connected_components(), vec![1, 1, 1]);
        assert_eq!(two_triangles().connected_components(), vec![3, 3]);
        let labels = two_triangles().component_labels();
        assert_eq!(labels, vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn min_degrees() {
        assert_eq!(DynamicGraph::complete(7).min_degree(), 6);
        let star = DynamicGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.min_degree(), 1);
        assert_eq!(DynamicGraph::empty(4).min_degree(), 0);
    }

    #[test]
    fn bad_edge_lists_are_rejected() {
        assert!(matches!(
            DynamicGraph::from_edges(3, &[(0, 3)]),
            Err(GraphError::BadVertex { vertex: 3, n: 3 })
        ));
        assert!(matches!(DynamicGraph::from_edges(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(_))));
    }

    #[test]
    fn sampling_singleton_and_empty() {
        let mut rng = Pcg64Mcg::seed_from_u64(1);
        let mut s = IndexedEdgeSet::new(4);
        assert_eq!(s.sample_uniform(&mut rng), Err(GraphError::EmptySet));
        s.insert(e(1, 2));
        for _ in 0..100 {
            assert_eq!(s.sample_uniform(&mut rng), Ok(e(1, 2)));
        }
    }

    #[test]
    fn sampling_four_edges_is_uniform() {
        let mut rng = Pcg64Mcg::seed_from_u64(7);
        let mut s = IndexedEdgeSet::new(5);
        let keys = [e(0, 1), e(1, 2), e(2, 3), e(3, 4)];
        for k in keys {
            s.insert(k);
        }
        let trials = 100_000;
        let mut counts = [0usize; 4];
        for _ in 0..trials {
            let k = s.sample_uniform(&mut rng).unwrap();
            counts[keys.iter().position(|&x| x == k).unwrap()] += 1;
        }
        let sigma = (trials as f64 * 0.25 * 0.75).sqrt();
        for c in counts {
            assert!((c as f64 - 0.25 * trials as f64).abs() <= 4.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn sparse_positions_behave_like_dense() {
        let n = DENSE_MAX_VERTICES + 1;
        let mut g = DynamicGraph::from_edges(n, &[(0, 1), (1, 2), (0, (n - 1) as u32)]).unwrap();
        g.remove_edge(e(0, 1)).unwrap();
        g.check_consistency().unwrap();
        assert_eq!(g.connected_components()[..2], [2, 2]);
        assert_eq!(g.min_degree(), 0);
    }
}
