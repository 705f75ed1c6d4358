//! The indexed edge set behind the simulator: O(1) insert, remove and
//! uniform sampling, and component queries on a shrinking graph.

use offended_voter::graph::{DynamicGraph, EdgeKey, IndexedEdgeSet};
use offended_voter::rng::rng_from_seed;

fn main() {
    let mut rng = rng_from_seed(1);
    let mut set = IndexedEdgeSet::new(10);
    for (a, b) in [(0, 1), (2, 3), (4, 5), (6, 7)] {
        set.insert(EdgeKey::new(a, b).unwrap());
    }
    set.remove(EdgeKey::new(2, 3).unwrap());
    let mut hits = std::collections::BTreeMap::new();
    for _ in 0..30_000 {
        *hits.entry(set.sample_uniform(&mut rng).unwrap().to_string()).or_insert(0) += 1;
    }
    println!("uniform over {} edges: {hits:?}", set.len());

    let mut g = DynamicGraph::complete(6);
    for e in [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)] {
        g.remove_edge(EdgeKey::new(e.0, e.1).unwrap()).unwrap();
    }
    println!("K6 minus K3,3: components {:?}, min degree {}", g.connected_components(), g.min_degree());
}
