//! Left cosets `LC2·U` of the local group inside the two-qubit Clifford group.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::CzGraph;
use crate::group::GroupTable;

pub const EXPECTED_ORBITS: usize = 20;
pub const ORBIT_SIZE: usize = 4608;

/// 1-based orbit label, printed as `O<n>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitId(pub u8);

impl OrbitId {
    pub fn from_index(i: usize) -> Self {
        OrbitId(u8::try_from(i + 1).expect("orbit index fits in u8"))
    }

    /// 0-based position, also the node index in [`CzGraph`].
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitAtlas {
    orbit_of: Vec<u8>,
    members: Vec<Vec<usize>>,
    representative: Vec<usize>,
    layer: Option<Vec<u32>>,
}

impl OrbitAtlas {
    /// Splits `c2` into the cosets `{V·U : V ∈ lc2}`.
    ///
    /// Elements are visited in id order, so each new orbit is opened by its
    /// smallest member and the provisional labels follow ascending
    /// canonical representatives. Layers are not yet known.
    pub fn partition(c2: &GroupTable, lc2: &GroupTable) -> Result<OrbitAtlas> {
        const UNASSIGNED: u8 = 0;
        let mut orbit_of = vec![UNASSIGNED; c2.len()];
        let mut members = Vec::new();
        for (u, mu) in c2.elements().iter().enumerate() {
            if orbit_of[u] != UNASSIGNED {
                continue;
            }
            let label = u8::try_from(members.len() + 1)
                .map_err(|_| Error::Verification("more than 255 orbits".into()))?;
            let mut orbit = Vec::with_capacity(lc2.len());
            for v in lc2.elements() {
                let id = c2
                    .contains(&(v * mu))
                    .ok_or_else(|| Error::Verification("local group is not contained in c2".into()))?;
                if orbit_of[id] == UNASSIGNED {
                    orbit_of[id] = label;
                    orbit.push(id);
                } else if orbit_of[id] != label {
                    return Err(Error::Verification(format!("cosets of element {u} overlap")));
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        if let Some((i, o)) = members.iter().enumerate().find(|(_, o)| o.len() != ORBIT_SIZE) {
            return Err(Error::Verification(format!(
                "orbit {} has {} elements, expected {ORBIT_SIZE}",
                i + 1,
                o.len()
            )));
        }
        if members.len() != EXPECTED_ORBITS {
            return Err(Error::Verification(format!(
                "found {} orbits, expected {EXPECTED_ORBITS}",
                members.len()
            )));
        }
        let representative = members.iter().map(|o| o[0]).collect();
        Ok(OrbitAtlas { orbit_of, members, representative, layer: None })
    }

    /// Assigns CZ layers by breadth-first search from the orbit of the
    /// identity and relabels orbits layer-major, then by ascending canonical
    /// representative. `graph` must be built on this atlas's current labels.
    pub fn assign_layers_and_labels(&self, graph: &CzGraph, identity: usize) -> Result<OrbitAtlas> {
        let n = self.members.len();
        if graph.node_count() != n {
            return Err(Error::Verification("graph and atlas disagree on node count".into()));
        }
        let start = self.orbit_of(identity).index();
        let mut dist = vec![u32::MAX; n];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in graph.neighbors(x) {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist.contains(&u32::MAX) {
            return Err(Error::Verification("CZ graph is disconnected".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&o| (dist[o], self.representative[o]));
        let mut new_label = vec![0u8; n];
        for (new, &old) in order.iter().enumerate() {
            new_label[old] = (new + 1) as u8;
        }
        Ok(OrbitAtlas {
            orbit_of: self.orbit_of.iter().map(|&o| new_label[o as usize - 1]).collect(),
            members: order.iter().map(|&o| self.members[o].clone()).collect(),
            representative: order.iter().map(|&o| self.representative[o]).collect(),
            layer: Some(order.iter().map(|&o| dist[o]).collect()),
        })
    }

    pub fn orbit_count(&self) -> usize {
        self.members.len()
    }

    pub fn orbits(&self) -> impl Iterator<Item = OrbitId> {
        (0..self.members.len()).map(OrbitId::from_index)
    }

    /// Panics if `element` is not a valid c2 id.
    pub fn orbit_of(&self, element: usize) -> OrbitId {
        OrbitId(self.orbit_of[element])
    }

    /// Sorted element ids of an orbit.
    pub fn members(&self, orbit: OrbitId) -> &[usize] {
        &self.members[orbit.index()]
    }

    /// Smallest member under the canonical order.
    pub fn representative(&self, orbit: OrbitId) -> usize {
        self.representative[orbit.index()]
    }

    /// `None` until layers have been assigned.
    pub fn layer(&self, orbit: OrbitId) -> Option<u32> {
        self.layer.as_ref().map(|l| l[orbit.index()])
    }

    pub fn has_layers(&self) -> bool {
        self.layer.is_some()
    }

    /// Number of orbits at each layer, indexed by layer.
    pub fn layer_profile(&self) -> Vec<usize> {
        let Some(layers) = &self.layer else {
            return Vec::new();
        };
        let depth = layers.iter().copied().max().unwrap_or(0) as usize;
        let mut profile = vec![0; depth + 1];
        for &l in layers {
            profile[l as usize] += 1;
        }
        profile
    }

    /// Element counts per layer; equals the histogram of minimal CZ cost.
    pub fn cz_cost_histogram(&self) -> Vec<usize> {
        let mut hist = self.layer_profile();
        for (layer, count) in hist.iter_mut().enumerate() {
            *count = self
                .orbits()
                .filter(|&o| self.layer(o) == Some(layer as u32))
                .map(|o| self.members(o).len())
                .sum();
        }
        hist
    }
}
