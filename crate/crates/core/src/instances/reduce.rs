use std::collections::BTreeSet;

use super::{Graph, HypergraphInstance, Id, Tournament};

/// Vertex Cover as 2-Hitting Set.
pub fn vc_to_hs(g: &Graph) -> HypergraphInstance {
    g.to_hs()
}

/// Cluster Vertex Deletion as 3-Hitting Set: one set per induced P3.
pub fn cvd_to_hs(g: &Graph) -> HypergraphInstance {
    let mut family = BTreeSet::new();
    for center in g.vertices() {
        let nb: Vec<Id> = g.neighbors(center).iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.adjacent(a, b) {
                    let mut set = vec![a, center, b];
                    set.sort_unstable();
                    family.insert(set);
                }
            }
        }
    }
    HypergraphInstance::from_sorted_parts(3, g.vertices().collect(), family.into_iter().collect())
}

/// Feedback Vertex Set in Tournaments as 3-Hitting Set: one set per directed triangle.
pub fn fvst_to_hs(t: &Tournament) -> HypergraphInstance {
    let mut family = BTreeSet::new();
    for (u, v) in t.arcs() {
        for &w in t.out_neighbors(v) {
            if t.has_arc(w, u) {
                let mut set = vec![u, v, w];
                set.sort_unstable();
                family.insert(set);
            }
        }
    }
    HypergraphInstance::from_sorted_parts(3, t.vertices().collect(), family.into_iter().collect())
}
