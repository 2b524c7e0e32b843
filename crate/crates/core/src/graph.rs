//! The quotient graph on orbits induced by left multiplication with a
//! two-qubit gate, the reference connectivity diagram, and an anchored
//! isomorphism search between the two.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::matrix::GateMatrix;
use crate::orbit::{OrbitAtlas, OrbitId};

/// Size of every non-empty intersection `CZ·O_i ∩ O_j`.
pub const EDGE_WEIGHT: u32 = 512;
pub const DEGREE: usize = 9;

/// `weight[i][j] = |{U ∈ O_i : orbit(G·U) = O_j}|` for a gate `G`, with
/// node `i` standing for orbit `O_{i+1}`. No validation is performed.
pub fn intersection_weights(atlas: &OrbitAtlas, c2: &GroupTable, gate: &GateMatrix) -> Result<Vec<Vec<u32>>> {
    let n = atlas.orbit_count();
    let mut weight = vec![vec![0u32; n]; n];
    for (u, m) in c2.elements().iter().enumerate() {
        let pushed = gate.matmul(m)?;
        let v = c2.contains(&pushed).ok_or(Error::NotClifford)?;
        weight[atlas.orbit_of(u).index()][atlas.orbit_of(v).index()] += 1;
    }
    Ok(weight)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CzGraph {
    weight: Vec<Vec<u32>>,
    edges: Vec<(usize, usize)>,
}

impl CzGraph {
    /// Computes the intersection cardinalities for `gate` and checks that
    /// they are symmetric and take only the values 0 and [`EDGE_WEIGHT`].
    pub fn build(atlas: &OrbitAtlas, c2: &GroupTable, gate: &GateMatrix) -> Result<CzGraph> {
        let weight = intersection_weights(atlas, c2, gate)?;
        for (i, row) in weight.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                if w != weight[j][i] {
                    return Err(Error::Verification(format!(
                        "asymmetric weights between O{} and O{}",
                        i + 1,
                        j + 1
                    )));
                }
                if w != 0 && w != EDGE_WEIGHT {
                    return Err(Error::Verification(format!(
                        "weight {w} between O{} and O{} is neither 0 nor {EDGE_WEIGHT}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self::from_weights(weight))
    }

    fn from_weights(weight: Vec<Vec<u32>>) -> CzGraph {
        let n = weight.len();
        let edges = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| weight[i][j] > 0)
            .collect();
        CzGraph { weight, edges }
    }

    pub fn node_count(&self) -> usize {
        self.weight.len()
    }

    pub fn weights(&self) -> &[Vec<u32>] {
        &self.weight
    }

    pub fn weight(&self, a: OrbitId, b: OrbitId) -> u32 {
        self.weight[a.index()][b.index()]
    }

    /// Unordered edges `(i, j)` with `i <= j`, 0-based, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.weight[node].iter().enumerate().filter(|(_, &w)| w > 0).map(|(j, _)| j)
    }

    pub fn degree(&self, node: usize) -> usize {
        self.neighbors(node).count()
    }

    /// Breadth-first distances from `start`; `None` for unreachable nodes.
    pub fn distances(&self, start: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.node_count()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for y in self.neighbors(x) {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.node_count(), self.edges.iter().copied())
    }
}

/// Edge list transcribed from the published orbit connectivity diagram,
/// 1-based labels, each edge once.
pub const REFERENCE_EDGES: &[(u8, &[u8])] = &[
    (1, &[2, 3, 4, 5, 6, 7, 8, 9, 10]),
    (20, &[11, 12, 13, 14, 15, 16, 17, 18, 19]),
    (2, &[7, 8, 9, 10, 11, 12, 13, 14]),
    (3, &[4, 5, 7, 9, 14, 15, 16, 17]),
    (4, &[6, 7, 10, 13, 15, 16, 18]),
    (5, &[6, 8, 9, 12, 15, 17, 19]),
    (6, &[8, 10, 11, 15, 18, 19]),
    (7, &[8, 13, 14, 17, 18]),
    (8, &[11, 12, 17, 18]),
    (9, &[10, 12, 14, 16, 19]),
    (10, &[11, 13, 16, 19]),
    (11, &[12, 13, 18, 19]),
    (12, &[14, 17, 19]),
    (13, &[14, 16, 18]),
    (14, &[16, 17]),
    (15, &[16, 17, 18, 19]),
    (16, &[19]),
    (17, &[18]),
];

pub fn reference_graph() -> SimpleGraph {
    let edges = REFERENCE_EDGES
        .iter()
        .flat_map(|&(a, bs)| bs.iter().map(move |&b| (a as usize - 1, b as usize - 1)));
    SimpleGraph::from_edges(20, edges)
}

/// Undirected graph without weights, adjacency-matrix backed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> SimpleGraph {
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        SimpleGraph { adj }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn set_edge(&mut self, a: usize, b: usize, present: bool) {
        self.adj[a][b] = present;
        self.adj[b][a] = present;
    }

    pub fn edge_count(&self) -> usize {
        let n = self.node_count();
        (0..n).map(|i| (i..n).filter(|&j| self.adj[i][j]).count()).sum()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].iter().filter(|&&e| e).count()
    }

    fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[node].iter().enumerate().filter(|(_, &e)| e).map(|(j, _)| j)
    }
}

/// Joint colour refinement of two graphs. Anchored node pairs start with a
/// shared private colour; colours are then refined by the multiset of
/// neighbour colours, with colour names shared across both graphs.
fn refine(g: &SimpleGraph, h: &SimpleGraph, anchors: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let mut cg = vec![0usize; g.node_count()];
    let mut ch = vec![0usize; h.node_count()];
    for (k, &(a, b)) in anchors.iter().enumerate() {
        cg[a] = k + 1;
        ch[b] = k + 1;
    }
    loop {
        let sig = |graph: &SimpleGraph, colors: &[usize], v: usize| {
            let mut ns: Vec<usize> = graph.neighbors(v).map(|u| colors[u]).collect();
            ns.sort_unstable();
            (colors[v], ns)
        };
        let sg: Vec<_> = (0..g.node_count()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.node_count()).map(|v| sig(h, &ch, v)).collect();
        let mut names: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in sg.iter().chain(sh.iter()) {
            let next = names.len();
            names.entry(s).or_insert(next);
        }
        let ng: Vec<usize> = sg.iter().map(|s| names[s]).collect();
        let nh: Vec<usize> = sh.iter().map(|s| names[s]).collect();
        let classes = |c: &[usize]| c.iter().collect::<std::collections::BTreeSet<_>>().len();
        let stable = classes(&ng) == classes(&cg) && classes(&nh) == classes(&ch);
        cg = ng;
        ch = nh;
        if stable {
            return (cg, ch);
        }
    }
}

/// Finds a bijection `map` from the nodes of `g` to the nodes of `h` with
/// `g.has_edge(a, b) == h.has_edge(map[a], map[b])` for all pairs and
/// `map[a] = b` for every anchor `(a, b)`.
pub fn check_isomorphic(g: &SimpleGraph, h: &SimpleGraph, anchors: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = g.node_count();
    if n != h.node_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (cg, ch) = refine(g, h, anchors);
    let histogram = |c: &[usize]| {
        let mut m: HashMap<usize, usize> = HashMap::new();
        for &x in c {
            *m.entry(x).or_default() += 1;
        }
        m
    };
    if histogram(&cg) != histogram(&ch) {
        return None;
    }

    // visit g in breadth-first order from the anchors so each new node
    // usually has mapped neighbours constraining it
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = anchors.iter().map(|&(a, _)| a).collect();
    for &(a, _) in anchors {
        seen[a] = true;
    }
    loop {
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        match (0..n).find(|&v| !seen[v]) {
            Some(v) => {
                seen[v] = true;
                queue.push_back(v);
            }
            None => break,
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &SimpleGraph,
    h: &SimpleGraph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..h.node_count() {
        if used[w] || cg[v] != ch[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Maps each computed orbit onto its label in the reference diagram, with
/// the identity orbit sent to `O1` and the deepest orbit sent to `O20`.
pub fn match_reference(graph: &CzGraph, atlas: &OrbitAtlas) -> Option<Vec<OrbitId>> {
    let deepest: Vec<OrbitId> = {
        let max = atlas.orbits().filter_map(|o| atlas.layer(o)).max()?;
        atlas.orbits().filter(|&o| atlas.layer(o) == Some(max)).collect()
    };
    let &[last] = deepest.as_slice() else {
        return None;
    };
    let first = atlas.orbits().find(|&o| atlas.layer(o) == Some(0))?;
    let map = check_isomorphic(
        &graph.to_simple(),
        &reference_graph(),
        &[(first.index(), 0), (last.index(), 19)],
    )?;
    Some(map.into_iter().map(OrbitId::from_index).collect())
}

/// Graphviz export: nodes `O1..On` grouped into one rank per layer.
pub fn to_dot(graph: &CzGraph, atlas: &OrbitAtlas) -> String {
    let mut out = String::from("graph cz_orbits {\n    node [shape=circle];\n");
    let mut by_layer: BTreeMap<u32, Vec<OrbitId>> = BTreeMap::new();
    for o in atlas.orbits() {
        by_layer.entry(atlas.layer(o).unwrap_or(0)).or_default().push(o);
    }
    for (layer, nodes) in &by_layer {
        let names: Vec<String> = nodes.iter().map(|o| o.to_string()).collect();
        writeln!(out, "    {{ rank=same; {}; }} // layer {layer}", names.join("; ")).unwrap();
    }
    for &(a, b) in graph.edges() {
        let (oa, ob) = (OrbitId::from_index(a), OrbitId::from_index(b));
        writeln!(out, "    {oa} -- {ob} [weight={}];", graph.weight(oa, ob)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonNode {
    id: u8,
    layer: Option<u32>,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    paper_label: Option<u8>,
}

#[derive(Serialize)]
struct JsonEdge {
    a: u8,
    b: u8,
    weight: u32,
}

#[derive(Serialize)]
struct JsonGraph {
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
}

/// JSON export. `labels`, when given, adds the reference-diagram label of
/// every node as `paper_label`.
pub fn to_json(graph: &CzGraph, atlas: &OrbitAtlas, labels: Option<&[OrbitId]>) -> String {
    let nodes = atlas
        .orbits()
        .map(|o| JsonNode {
            id: o.0,
            layer: atlas.layer(o),
            size: atlas.members(o).len(),
            paper_label: labels.map(|l| l[o.index()].0),
        })
        .collect();
    let edges = graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (oa, ob) = (OrbitId::from_index(a), OrbitId::from_index(b));
            JsonEdge { a: oa.0, b: ob.0, weight: graph.weight(oa, ob) }
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&JsonGraph { nodes, edges }).expect("graph serializes");
    s.push('\n');
    s
}
