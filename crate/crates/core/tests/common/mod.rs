#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::OnceLock;

use clifford_core::{gates, Clifford2, GroupTable};

pub fn data() -> &'static Clifford2 {
    static DATA: OnceLock<Clifford2> = OnceLock::new();
    DATA.get_or_init(|| Clifford2::build().expect("tables build"))
}

/// Minimal number of `cz` letters over all words for each c2 element,
/// by 0-1 breadth-first search on the Cayley graph (local letters cost 0).
/// Uses only the group table, never the orbit atlas.
pub fn zero_one_cz_distance(c2: &GroupTable) -> Vec<u32> {
    let cz = gates::cz();
    let mut dist = vec![u32::MAX; c2.len()];
    let start = c2.identity_id();
    dist[start] = 0;
    let mut deque = VecDeque::from([start]);
    while let Some(x) = deque.pop_front() {
        for gen in c2.alphabet() {
            let cost = u32::from(gen.matrix == cz);
            let y = c2.contains(&(&c2.elements()[x] * &gen.matrix)).expect("closed");
            let d = dist[x] + cost;
            if d < dist[y] {
                dist[y] = d;
                if cost == 0 {
                    deque.push_front(y);
                } else {
                    deque.push_back(y);
                }
            }
        }
    }
    dist
}
