//! End-to-end verification of the orbit decomposition and synthesis claims.

use std::fmt;

use crate::clifford::Clifford2;
use crate::graph::{intersection_weights, CzGraph, DEGREE, EDGE_WEIGHT};
use crate::matrix::{gates, GateMatrix};
use crate::orbit::{EXPECTED_ORBITS, ORBIT_SIZE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CHECK {} expected={} observed={} {}",
            self.name,
            self.expected,
            self.observed,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: &str, expected: impl fmt::Display, observed: impl fmt::Display) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let pass = expected == observed;
        self.checks.push(Check { name: name.to_string(), expected, observed, pass });
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        writeln!(f, "OVERALL {}", if self.overall() { "PASS" } else { "FAIL" })
    }
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn frobenius_unitarity_error(m: &GateMatrix) -> f64 {
    let n = m.dim();
    let a = m.to_complex();
    let mut err = 0.0;
    for i in 0..n {
        for j in 0..n {
            let s: num_complex::Complex64 = (0..n).map(|l| a[i * n + l] * a[j * n + l].conj()).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            err += (s - target).norm_sqr();
        }
    }
    err.sqrt()
}

/// Runs every check in a fixed order.
pub fn run(data: &Clifford2) -> VerificationReport {
    let mut r = VerificationReport::default();
    let (c1, lc2, c2, atlas, graph) = (&data.c1, &data.lc2, &data.c2, &data.atlas, &data.graph);

    r.push("c1-order", 192, c1.len());
    r.push("lc2-order", 4608, lc2.len());
    r.push("c2-order", 92160, c2.len());
    r.push("lc2-phase-overlap", 8, c1.len() * c1.len() / lc2.len().max(1));
    r.push("lc2-subset-of-c2", true, lc2.elements().iter().all(|m| c2.contains(m).is_some()));

    r.push("orbit-count", EXPECTED_ORBITS, atlas.orbit_count());
    let sizes_ok = atlas.orbits().all(|o| atlas.members(o).len() == ORBIT_SIZE);
    r.push("orbit-sizes", format!("all {ORBIT_SIZE}"), if sizes_ok { format!("all {ORBIT_SIZE}") } else { "mixed".into() });
    let covered: usize = atlas.orbits().map(|o| atlas.members(o).len()).sum();
    r.push("orbit-cover", c2.len(), covered);
    let o1 = atlas.orbit_of(c2.identity_id());
    r.push("identity-orbit", "O1", o1);
    let o1_is_lc2 = atlas.members(o1).len() == lc2.len()
        && atlas.members(o1).iter().all(|&e| lc2.contains(&c2.elements()[e]).is_some());
    r.push("identity-orbit-equals-lc2", true, o1_is_lc2);
    let well_defined = (0..c2.len()).all(|e| {
        let rep = &c2.elements()[atlas.representative(atlas.orbit_of(e))];
        lc2.contains(&(&c2.elements()[e] * &rep.dagger())).is_some()
    });
    r.push("coset-well-defined", true, well_defined);

    let w = graph.weights();
    let n = graph.node_count();
    let values_ok = w.iter().flatten().all(|&x| x == 0 || x == EDGE_WEIGHT);
    r.push("intersection-values", format!("{{0,{EDGE_WEIGHT}}}"), if values_ok { format!("{{0,{EDGE_WEIGHT}}}") } else { "other".into() });
    let symmetric = (0..n).all(|i| (0..n).all(|j| w[i][j] == w[j][i]));
    r.push("intersection-symmetric", true, symmetric);
    let diag: u32 = (0..n).map(|i| w[i][i]).sum();
    r.push("self-intersection", 0, diag);
    let degrees: Vec<usize> = (0..n).map(|i| graph.degree(i)).collect();
    let degree_obs = if degrees.iter().all(|&d| d == DEGREE) { format!("all {DEGREE}") } else { list(&degrees) };
    r.push("node-degree", format!("all {DEGREE}"), degree_obs);
    r.push("edge-count", 90, graph.edges().len());
    let row_sums: Vec<u32> = w.iter().map(|row| row.iter().sum()).collect();
    let rows_ok = row_sums.iter().all(|&s| s as usize == ORBIT_SIZE);
    r.push("row-sums", format!("all {ORBIT_SIZE}"), if rows_ok { format!("all {ORBIT_SIZE}") } else { list(&row_sums) });

    r.push("layer-profile", "[1,9,9,1]", list(&atlas.layer_profile()));
    r.push("layer-element-counts", "[4608,41472,41472,4608]", list(&atlas.cz_cost_histogram()));
    let ecc = graph.distances(o1.index()).into_iter().map(|d| d.unwrap_or(u32::MAX)).max().unwrap_or(0);
    r.push("eccentricity-o1", 3, ecc);

    let labels = data.reference_labels();
    r.push("figure-isomorphism", "found", if labels.is_some() { "found" } else { "absent" });

    for (name, gate) in [("cnot-target2-graph", gates::cnot_target2()), ("cnot-target1-graph", gates::cnot_target1())] {
        let same = matches!(CzGraph::build(atlas, c2, &gate), Ok(g) if g.weights() == graph.weights());
        r.push(name, "identical", if same { "identical" } else { "different" });
    }
    let local_probe = intersection_weights(atlas, c2, &gates::on_wire1(&gates::h())).map(|w| w[0][0]);
    r.push("local-gate-probe-w11", ORBIT_SIZE, local_probe.map_or("error".into(), |x| x.to_string()));

    let exact_unitary = c1.elements().iter().chain(lc2.elements()).chain(c2.elements()).all(GateMatrix::is_unitary);
    r.push("exact-unitarity", true, exact_unitary);
    let worst = c2.elements().iter().map(frobenius_unitarity_error).fold(0.0, f64::max);
    r.push("numeric-unitarity-below-1e-12", true, worst < 1e-12);

    match data.synthesizer() {
        Ok(synth) => {
            let mut ok = 0usize;
            let mut max_cz = 0usize;
            for (e, m) in c2.elements().iter().enumerate() {
                let Ok(circuit) = synth.synthesize(m) else { continue };
                let layer = atlas.layer(atlas.orbit_of(e)).unwrap() as usize;
                if circuit.cz_count() == layer && circuit.is_alternating() && circuit.evaluate() == *m {
                    ok += 1;
                }
                max_cz = max_cz.max(circuit.cz_count());
            }
            r.push("synthesis-exact-minimal", c2.len(), ok);
            r.push("synthesis-max-cz", 3, max_cz);
            let swap = synth.synthesize(&gates::swap()).map(|c| c.cz_count());
            r.push("swap-cz-count", 3, swap.map_or("error".into(), |c| c.to_string()));
        }
        Err(e) => r.push("synthesis-exact-minimal", c2.len(), format!("error:{e}")),
    }
    r
}
