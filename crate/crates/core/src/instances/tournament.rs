use std::collections::{BTreeMap, BTreeSet};

use super::{Id, InstanceError};

/// Tournament: exactly one arc between every pair of distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tournament {
    out: BTreeMap<Id, BTreeSet<Id>>,
}

impl Tournament {
    /// Fails when a pair has no arc or two arcs, on self-loops and on unknown endpoints.
    pub fn new(vertices: impl IntoIterator<Item = Id>, arcs: impl IntoIterator<Item = (Id, Id)>) -> Result<Self, InstanceError> {
        let mut out: BTreeMap<Id, BTreeSet<Id>> = BTreeMap::new();
        for v in vertices {
            if v == 0 {
                return Err(InstanceError::ZeroId);
            }
            out.entry(v).or_default();
        }
        for (u, v) in arcs {
            if u == v {
                return Err(InstanceError::SelfLoop(u));
            }
            for x in [u, v] {
                if !out.contains_key(&x) {
                    return Err(InstanceError::UnknownElement(x));
                }
            }
            if out[&v].contains(&u) || !out.get_mut(&u).unwrap().insert(v) {
                return Err(InstanceError::DuplicateArc(u.min(v), u.max(v)));
            }
        }
        let t = Tournament { out };
        for (u, v) in t.pairs() {
            if !t.has_arc(u, v) && !t.has_arc(v, u) {
                return Err(InstanceError::MissingArc(u, v));
            }
        }
        Ok(t)
    }

    pub fn dense(n: usize, arcs: impl IntoIterator<Item = (Id, Id)>) -> Result<Self, InstanceError> {
        Self::new(1..=n as Id, arcs)
    }

    /// Transitive tournament following `order` (earlier beats later).
    pub fn transitive(order: &[Id]) -> Result<Self, InstanceError> {
        let arcs = order
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| order[i + 1..].iter().map(move |&v| (u, v)));
        Self::new(order.iter().copied(), arcs)
    }

    fn pairs(&self) -> impl Iterator<Item = (Id, Id)> + '_ {
        self.out
            .keys()
            .flat_map(move |&u| self.out.range(u + 1..).map(move |(&v, _)| (u, v)))
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Id> + '_ {
        self.out.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Id> {
        self.out.keys().copied().collect()
    }

    pub fn contains_vertex(&self, v: Id) -> bool {
        self.out.contains_key(&v)
    }

    pub fn has_arc(&self, u: Id, v: Id) -> bool {
        self.out.get(&u).is_some_and(|o| o.contains(&v))
    }

    pub fn out_neighbors(&self, v: Id) -> &BTreeSet<Id> {
        &self.out[&v]
    }

    /// All arcs, ordered by tail then head.
    pub fn arcs(&self) -> impl Iterator<Item = (Id, Id)> + '_ {
        self.out.iter().flat_map(|(&u, o)| o.iter().map(move |&v| (u, v)))
    }

    /// Whether `{a, b, c}` spans a directed cycle.
    pub fn is_triangle(&self, a: Id, b: Id, c: Id) -> bool {
        (self.has_arc(a, b) && self.has_arc(b, c) && self.has_arc(c, a)) || (self.has_arc(a, c) && self.has_arc(c, b) && self.has_arc(b, a))
    }

    pub fn induced(&self, keep: &BTreeSet<Id>) -> Tournament {
        let out = self
            .out
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, o)| (v, o.iter().copied().filter(|u| keep.contains(u)).collect()))
            .collect();
        Tournament { out }
    }

    pub fn remove_vertices(&self, removed: &BTreeSet<Id>) -> Tournament {
        let keep = self.vertices().filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// The unique topological order if the tournament is acyclic.
    ///
    /// In an acyclic tournament the vertex with `k` out-arcs sits at position `n - 1 - k`.
    pub fn topological_order(&self) -> Option<Vec<Id>> {
        let n = self.n();
        let mut slots: Vec<Option<Id>> = vec![None; n];
        for (&v, o) in &self.out {
            let slot = slots.get_mut(n - 1 - o.len())?;
            if slot.replace(v).is_some() {
                return None;
            }
        }
        Some(slots.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Some directed triangle, if one exists.
    pub fn find_triangle(&self) -> Option<[Id; 3]> {
        for (&u, o) in &self.out {
            for &v in o {
                for &w in &self.out[&v] {
                    if w != u && self.has_arc(w, u) {
                        let mut t = [u, v, w];
                        t.sort_unstable();
                        return Some(t);
                    }
                }
            }
        }
        None
    }
}

impl Tournament {
    /// Relabels the vertices to `1..=n` in ascending order; returns the map new → old.
    pub fn densify(&self) -> (Tournament, Vec<Id>) {
        let map: Vec<Id> = self.vertices().collect();
        let index: BTreeMap<Id, Id> = map.iter().enumerate().map(|(i, &v)| (v, i as Id + 1)).collect();
        let t = Tournament::dense(map.len(), self.arcs().map(|(u, v)| (index[&u], index[&v]))).expect("relabeling keeps a tournament");
        (t, map)
    }
}
