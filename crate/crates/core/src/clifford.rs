use crate::error::{Error, Result};
use crate::graph::{self, CzGraph};
use crate::group::{self, GroupTable, LocalTable};
use crate::matrix::{gates, GateMatrix};
use crate::orbit::{OrbitAtlas, OrbitId};
use crate::synth::Synthesizer;

/// Everything derived from the two-qubit Clifford group: the three group
/// tables, the layered orbit atlas and the CZ quotient graph.
#[derive(Clone, Debug)]
pub struct Clifford2 {
    pub c1: GroupTable,
    pub lc2: LocalTable,
    pub c2: GroupTable,
    pub atlas: OrbitAtlas,
    pub graph: CzGraph,
}

impl Clifford2 {
    pub fn build() -> Result<Clifford2> {
        let c1 = group::build_c1()?;
        let lc2 = group::build_lc2(&c1)?;
        let c2 = group::build_c2()?;
        Self::from_tables(c1, lc2, c2)
    }

    /// Partitions, builds the graph on provisional labels, relabels by layer
    /// and rebuilds the graph on the final labels.
    pub fn from_tables(c1: GroupTable, lc2: LocalTable, c2: GroupTable) -> Result<Clifford2> {
        let cz = gates::cz();
        let provisional = OrbitAtlas::partition(&c2, &lc2)?;
        let g0 = CzGraph::build(&provisional, &c2, &cz)?;
        let atlas = provisional.assign_layers_and_labels(&g0, c2.identity_id())?;
        let graph = CzGraph::build(&atlas, &c2, &cz)?;
        Ok(Clifford2 { c1, lc2, c2, atlas, graph })
    }

    pub fn orbit_of_matrix(&self, m: &GateMatrix) -> Result<OrbitId> {
        let id = self.c2.contains(m).ok_or(Error::NotClifford)?;
        Ok(self.atlas.orbit_of(id))
    }

    pub fn synthesizer(&self) -> Result<Synthesizer<'_>> {
        Synthesizer::new(&self.c1, &self.lc2, &self.c2, &self.atlas)
    }

    /// Reference-diagram label of every orbit, indexed by orbit index.
    pub fn reference_labels(&self) -> Option<Vec<OrbitId>> {
        graph::match_reference(&self.graph, &self.atlas)
    }
}
