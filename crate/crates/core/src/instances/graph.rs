use std::collections::{BTreeMap, BTreeSet};

use super::{HypergraphInstance, Id, InstanceError};

/// Simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BTreeMap<Id, BTreeSet<Id>>,
    edge_count: usize,
}

impl Graph {
    /// Fails on self-loops, duplicate edges (in either orientation) and unknown endpoints.
    pub fn new(vertices: impl IntoIterator<Item = Id>, edges: impl IntoIterator<Item = (Id, Id)>) -> Result<Self, InstanceError> {
        let mut adj: BTreeMap<Id, BTreeSet<Id>> = BTreeMap::new();
        for v in vertices {
            if v == 0 {
                return Err(InstanceError::ZeroId);
            }
            adj.entry(v).or_default();
        }
        let mut edge_count = 0;
        for (u, v) in edges {
            if u == v {
                return Err(InstanceError::SelfLoop(u));
            }
            for x in [u, v] {
                if !adj.contains_key(&x) {
                    return Err(InstanceError::UnknownElement(x));
                }
            }
            if !adj.get_mut(&u).unwrap().insert(v) {
                return Err(InstanceError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj.get_mut(&v).unwrap().insert(u);
            edge_count += 1;
        }
        Ok(Graph { adj, edge_count })
    }

    /// Vertices `1..=n` with the given edges.
    pub fn dense(n: usize, edges: impl IntoIterator<Item = (Id, Id)>) -> Result<Self, InstanceError> {
        Self::new(1..=n as Id, edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = Id> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Id> {
        self.adj.keys().copied().collect()
    }

    pub fn contains_vertex(&self, v: Id) -> bool {
        self.adj.contains_key(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Id, Id)> + '_ {
        self.adj.iter().flat_map(|(&u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: Id) -> &BTreeSet<Id> {
        &self.adj[&v]
    }

    pub fn degree(&self, v: Id) -> usize {
        self.adj.get(&v).map_or(0, |nb| nb.len())
    }

    pub fn adjacent(&self, u: Id, v: Id) -> bool {
        self.adj.get(&u).is_some_and(|nb| nb.contains(&v))
    }

    /// Subgraph induced by the vertices in `keep`.
    pub fn induced(&self, keep: &BTreeSet<Id>) -> Graph {
        let adj: BTreeMap<Id, BTreeSet<Id>> = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, nb)| (v, nb.iter().copied().filter(|u| keep.contains(u)).collect()))
            .collect();
        let edge_count = adj.values().map(|nb: &BTreeSet<Id>| nb.len()).sum::<usize>() / 2;
        Graph { adj, edge_count }
    }

    /// `G - removed`.
    pub fn remove_vertices(&self, removed: &BTreeSet<Id>) -> Graph {
        let keep = self.vertices().filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// Union of the neighborhoods of `set`, minus `set` itself.
    pub fn open_neighborhood(&self, set: &BTreeSet<Id>) -> BTreeSet<Id> {
        set.iter()
            .flat_map(|v| self.adj[v].iter().copied())
            .filter(|u| !set.contains(u))
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<Id>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in &self.adj[&v] {
                    if seen.insert(u) {
                        comp.insert(u);
                        stack.push(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Whether `set` induces a complete subgraph.
    pub fn is_clique(&self, set: &BTreeSet<Id>) -> bool {
        set.iter().all(|v| set.iter().all(|u| u == v || self.adjacent(*u, *v)))
    }

    /// The Vertex Cover instance: universe V, one 2-set per edge.
    pub fn to_hs(&self) -> HypergraphInstance {
        let family = self.edges().map(|(u, v)| vec![u, v]).collect();
        HypergraphInstance::from_sorted_parts(2, self.vertices().collect(), family)
    }
}

impl Graph {
    /// Relabels the vertices to `1..=n` in ascending order; returns the map new → old.
    pub fn densify(&self) -> (Graph, Vec<Id>) {
        let map: Vec<Id> = self.vertices().collect();
        let index: BTreeMap<Id, Id> = map.iter().enumerate().map(|(i, &v)| (v, i as Id + 1)).collect();
        let g = Graph::dense(map.len(), self.edges().map(|(u, v)| (index[&u], index[&v]))).expect("relabeling keeps the graph simple");
        (g, map)
    }
}
