use std::collections::{BTreeMap, BTreeSet};

use super::{Id, InstanceError};

/// A d-Hitting Set instance: a universe and a family of subsets of size at most `d`.
///
/// The family is stored deduplicated in lexicographic order of the sorted sets,
/// so two instances with the same universe and the same family compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypergraphInstance {
    d: usize,
    universe: Vec<Id>,
    family: Vec<Vec<Id>>,
}

impl HypergraphInstance {
    pub fn new<I, S>(d: usize, universe: impl IntoIterator<Item = Id>, family: I) -> Result<Self, InstanceError>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Id>,
    {
        if d == 0 {
            return Err(InstanceError::ZeroRank);
        }
        let universe: BTreeSet<Id> = universe.into_iter().collect();
        if universe.contains(&0) {
            return Err(InstanceError::ZeroId);
        }
        let mut sets = BTreeSet::new();
        for set in family {
            let set: BTreeSet<Id> = set.into_iter().collect();
            if set.is_empty() {
                return Err(InstanceError::EmptySet);
            }
            if set.len() > d {
                return Err(InstanceError::SetTooLarge { size: set.len(), d });
            }
            if let Some(&bad) = set.iter().find(|e| !universe.contains(e)) {
                return Err(InstanceError::UnknownElement(bad));
            }
            sets.insert(set.into_iter().collect::<Vec<_>>());
        }
        Ok(HypergraphInstance {
            d,
            universe: universe.into_iter().collect(),
            family: sets.into_iter().collect(),
        })
    }

    /// Instance whose universe is exactly the union of the family.
    pub fn from_family<I, S>(d: usize, family: I) -> Result<Self, InstanceError>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Id>,
    {
        let family: Vec<Vec<Id>> = family.into_iter().map(|s| s.into_iter().collect()).collect();
        let universe: BTreeSet<Id> = family.iter().flatten().copied().collect();
        Self::new(d, universe, family)
    }

    /// Builds from parts already known to satisfy the invariants.
    pub(crate) fn from_sorted_parts(d: usize, universe: Vec<Id>, family: Vec<Vec<Id>>) -> Self {
        debug_assert!(universe.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(family.windows(2).all(|w| w[0] < w[1]));
        HypergraphInstance { d, universe, family }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Universe ids in ascending order.
    pub fn universe(&self) -> &[Id] {
        &self.universe
    }

    /// Sets, each sorted ascending; the family itself is in lexicographic order.
    pub fn family(&self) -> &[Vec<Id>] {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn m(&self) -> usize {
        self.family.len()
    }

    pub fn contains_element(&self, id: Id) -> bool {
        self.universe.binary_search(&id).is_ok()
    }

    /// True when the universe is exactly `1..=n`.
    pub fn is_dense(&self) -> bool {
        self.universe.iter().enumerate().all(|(i, &e)| e as usize == i + 1)
    }

    /// Union of all sets.
    pub fn covered_elements(&self) -> BTreeSet<Id> {
        self.family.iter().flatten().copied().collect()
    }

    /// For every universe element, the indices of the sets containing it.
    pub fn incidence(&self) -> BTreeMap<Id, Vec<usize>> {
        let mut inc: BTreeMap<Id, Vec<usize>> = self.universe.iter().map(|&e| (e, Vec::new())).collect();
        for (i, set) in self.family.iter().enumerate() {
            for e in set {
                inc.get_mut(e).expect("set element outside universe").push(i);
            }
        }
        inc
    }

    /// First set (in family order) that `chosen` misses.
    pub fn first_unhit(&self, chosen: &BTreeSet<Id>) -> Option<&[Id]> {
        self.family
            .iter()
            .find(|s| !s.iter().any(|e| chosen.contains(e)))
            .map(|s| s.as_slice())
    }

    pub fn is_hitting_set(&self, chosen: &BTreeSet<Id>) -> bool {
        self.first_unhit(chosen).is_none()
    }

    /// Same universe, only the sets selected by `keep`.
    pub fn filter_family(&self, mut keep: impl FnMut(&[Id]) -> bool) -> Self {
        let family = self.family.iter().filter(|s| keep(s)).cloned().collect();
        Self::from_sorted_parts(self.d, self.universe.clone(), family)
    }

    /// Universe restricted to `sub`, keeping the sets contained in it.
    pub fn induced(&self, sub: &BTreeSet<Id>) -> Self {
        let universe = self.universe.iter().copied().filter(|e| sub.contains(e)).collect();
        let family = self.family.iter().filter(|s| s.iter().all(|e| sub.contains(e))).cloned().collect();
        Self::from_sorted_parts(self.d, universe, family)
    }

    /// Same family over a different universe (which must contain every set).
    pub fn with_universe(&self, universe: impl IntoIterator<Item = Id>) -> Result<Self, InstanceError> {
        Self::new(self.d, universe, self.family.iter().map(|s| s.iter().copied()))
    }

    /// Relabels the universe to `1..=n` in ascending order.
    ///
    /// Returns the dense instance and the map from new id (index + 1) to old id.
    pub fn densify(&self) -> (Self, Vec<Id>) {
        let map = self.universe.clone();
        let index: BTreeMap<Id, Id> = map.iter().enumerate().map(|(i, &e)| (e, i as Id + 1)).collect();
        let mut family: Vec<Vec<Id>> = self.family.iter().map(|s| s.iter().map(|e| index[e]).collect()).collect();
        family.sort();
        let universe = (1..=map.len() as Id).collect();
        (Self::from_sorted_parts(self.d, universe, family), map)
    }
}
