//! Synthesis of two-qubit Clifford gates as local Clifford layers
//! interleaved with the minimal number of CZ gates.
//!
//! An element of layer `d` is reduced to layer `d − 1` by one local layer
//! and one CZ. For every orbit a descent witness `V₀` is precomputed against
//! the orbit representative `r`, i.e. `CZ·V₀·r` lies one layer lower. Any
//! other member `U = W·r` is then handled by `V = V₀·W†`, so each step costs a
//! couple of table lookups.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::group::{GroupTable, LocalTable};
use crate::matrix::{gates, GateMatrix};
use crate::orbit::{OrbitAtlas, OrbitId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    H,
    P,
}

impl Letter {
    pub fn matrix(self) -> GateMatrix {
        match self {
            Letter::H => gates::h(),
            Letter::P => gates::p(),
        }
    }
}

/// A single-qubit word over `{H, P}`, read as a matrix product left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocalWord(pub Vec<Letter>);

impl LocalWord {
    pub fn evaluate(&self) -> GateMatrix {
        self.0.iter().fold(gates::i2(), |acc, l| &acc * &l.matrix())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> LocalWord {
        LocalWord(self.0.iter().rev().copied().collect())
    }

    /// Converts a word over the C1 table alphabet (`H` = 0, `P` = 1).
    pub fn from_c1_word(word: &[u8]) -> LocalWord {
        LocalWord(word.iter().map(|&g| if g == 0 { Letter::H } else { Letter::P }).collect())
    }
}

/// Letters concatenated; the empty word prints as `I`.
impl fmt::Display for LocalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::H => "H",
                Letter::P => "P",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LocalWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        if s.is_empty() {
            return Err(ParseError::Word(s.to_string()));
        }
        s.chars()
            .filter(|&c| c != 'I')
            .map(|c| match c {
                'H' => Ok(Letter::H),
                'P' => Ok(Letter::P),
                _ => Err(ParseError::Word(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(LocalWord)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    /// `A ⊗ B`, `a` on wire 1 and `b` on wire 2.
    Local { a: LocalWord, b: LocalWord },
    Cz,
}

/// A product of local layers and CZ gates, in matrix-product order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    ops: Vec<Op>,
}

impl Circuit {
    pub fn from_ops(ops: Vec<Op>) -> Circuit {
        Circuit { ops }
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn cz_count(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, Op::Cz)).count()
    }

    /// No two local layers are adjacent.
    pub fn is_alternating(&self) -> bool {
        self.ops
            .windows(2)
            .all(|w| !(matches!(w[0], Op::Local { .. }) && matches!(w[1], Op::Local { .. })))
    }

    /// Exact product of the circuit's matrices, left to right.
    pub fn evaluate(&self) -> GateMatrix {
        self.ops.iter().fold(gates::i4(), |acc, op| match op {
            Op::Cz => &acc * &gates::cz(),
            Op::Local { a, b } => {
                let layer = GateMatrix::tensor(&a.evaluate(), &b.evaluate()).expect("2x2 words");
                &acc * &layer
            }
        })
    }

    /// The same gates in time order: items and words reversed, so the
    /// first line is the first gate applied to the input state.
    pub fn time_order(&self) -> Circuit {
        let ops = self
            .ops
            .iter()
            .rev()
            .map(|op| match op {
                Op::Cz => Op::Cz,
                Op::Local { a, b } => Op::Local { a: a.reversed(), b: b.reversed() },
            })
            .collect();
        Circuit { ops }
    }
}

/// Circuit text format: `CZ-COUNT d`, then one item per line, either
/// `LOCAL a=<word> b=<word>` or `CZ`.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CZ-COUNT {}", self.cz_count())?;
        for op in &self.ops {
            match op {
                Op::Cz => writeln!(f, "CZ")?,
                Op::Local { a, b } => writeln!(f, "LOCAL a={a} b={b}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(ParseError::Truncated)?;
        let declared: usize = header
            .trim()
            .strip_prefix("CZ-COUNT ")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| ParseError::Line { line: 1, msg: format!("bad header {header:?}") })?;
        let mut ops = Vec::new();
        for (i, line) in lines {
            let bad = |msg: &str| ParseError::Line { line: i + 1, msg: msg.to_string() };
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("CZ") if toks.next().is_none() => ops.push(Op::Cz),
                Some("LOCAL") => {
                    let a = toks.next().and_then(|t| t.strip_prefix("a=")).ok_or_else(|| bad("missing a="))?;
                    let b = toks.next().and_then(|t| t.strip_prefix("b=")).ok_or_else(|| bad("missing b="))?;
                    if toks.next().is_some() {
                        return Err(bad("trailing tokens"));
                    }
                    ops.push(Op::Local { a: a.parse()?, b: b.parse()? });
                }
                _ => return Err(bad("expected LOCAL or CZ")),
            }
        }
        let circuit = Circuit { ops };
        if circuit.cz_count() != declared {
            return Err(ParseError::Line { line: 1, msg: "CZ-COUNT does not match body".into() });
        }
        Ok(circuit)
    }
}

#[derive(Clone, Copy, Debug)]
struct DescentWitness {
    /// lc2 id of `V₀`
    local: usize,
    /// c2 id of `CZ·V₀·r`
    lower: usize,
}

/// Synthesis over fixed, fully built tables and a layered atlas.
pub struct Synthesizer<'a> {
    c1: &'a GroupTable,
    lc2: &'a LocalTable,
    c2: &'a GroupTable,
    atlas: &'a OrbitAtlas,
    cz: GateMatrix,
    witnesses: Vec<Option<DescentWitness>>,
}

impl<'a> Synthesizer<'a> {
    pub fn new(
        c1: &'a GroupTable,
        lc2: &'a LocalTable,
        c2: &'a GroupTable,
        atlas: &'a OrbitAtlas,
    ) -> Result<Synthesizer<'a>> {
        if !atlas.has_layers() {
            return Err(Error::Verification("atlas has no layers assigned".into()));
        }
        let cz = gates::cz();
        let mut witnesses = Vec::with_capacity(atlas.orbit_count());
        for o in atlas.orbits() {
            let layer = atlas.layer(o).unwrap();
            if layer == 0 {
                witnesses.push(None);
                continue;
            }
            let rep = c2.element(atlas.representative(o))?;
            let (local, lower) = descend(lc2, c2, atlas, &cz, rep, layer)
                .ok_or_else(|| Error::Verification(format!("{o} has no descent to layer {}", layer - 1)))?;
            witnesses.push(Some(DescentWitness { local, lower }));
        }
        Ok(Synthesizer { c1, lc2, c2, atlas, cz, witnesses })
    }

    /// Minimal-CZ circuit for `m`; the CZ count equals the layer of `m`'s
    /// orbit.
    pub fn synthesize(&self, m: &GateMatrix) -> Result<Circuit> {
        let mut cur = self.c2.contains(m).ok_or(Error::NotClifford)?;
        let mut locals = Vec::new();
        loop {
            let o = self.atlas.orbit_of(cur);
            let Some(w) = self.witnesses[o.index()] else {
                locals.push(self.local_id(self.c2.element(cur)?)?);
                break;
            };
            // cur = W·r with W local; V = V₀·W† sends cur to CZ·V₀·r
            let rep = self.c2.element(self.atlas.representative(o))?;
            let w_mat = self.c2.element(cur)? * &rep.dagger();
            let v0 = self.lc2.element(w.local)?;
            let v_dag = &w_mat * &v0.dagger();
            locals.push(self.local_id(&v_dag)?);
            cur = w.lower;
        }
        self.assemble(&locals)
    }

    /// Same decomposition, found by scanning the local group in canonical
    /// order at every step instead of using the witness cache.
    pub fn synthesize_by_search(&self, m: &GateMatrix) -> Result<Circuit> {
        let mut cur = m.clone();
        self.c2.contains(&cur).ok_or(Error::NotClifford)?;
        let mut locals = Vec::new();
        loop {
            let id = self.c2.contains(&cur).ok_or(Error::NotClifford)?;
            let layer = self.atlas.layer(self.atlas.orbit_of(id)).unwrap();
            if layer == 0 {
                locals.push(self.local_id(&cur)?);
                break;
            }
            let (v, lower) = descend(self.lc2, self.c2, self.atlas, &self.cz, &cur, layer)
                .ok_or_else(|| Error::Verification("no descent step".into()))?;
            locals.push(self.local_id(&self.lc2.element(v)?.dagger())?);
            cur = self.c2.element(lower)?.clone();
        }
        self.assemble(&locals)
    }

    fn local_id(&self, m: &GateMatrix) -> Result<usize> {
        self.lc2
            .contains(m)
            .ok_or_else(|| Error::Verification("expected a local Clifford factor".into()))
    }

    /// `L₀ CZ L₁ CZ … L_d`, dropping identity layers.
    fn assemble(&self, locals: &[usize]) -> Result<Circuit> {
        let identity = self.lc2.identity_id();
        let mut ops = Vec::with_capacity(2 * locals.len());
        for (i, &l) in locals.iter().enumerate() {
            if i > 0 {
                ops.push(Op::Cz);
            }
            if l != identity {
                let (a, b) = self.lc2.factor(l)?;
                ops.push(Op::Local {
                    a: LocalWord::from_c1_word(self.c1.word_of(a)?),
                    b: LocalWord::from_c1_word(self.c1.word_of(b)?),
                });
            }
        }
        Ok(Circuit { ops })
    }

    /// Minimal CZ count for `m`, without building a circuit.
    pub fn cz_cost(&self, m: &GateMatrix) -> Result<u32> {
        let id = self.c2.contains(m).ok_or(Error::NotClifford)?;
        Ok(self.atlas.layer(self.atlas.orbit_of(id)).unwrap())
    }

    /// The precomputed descent `(V₀, CZ·V₀·r)` for an orbit, as lc2 and c2
    /// ids; `None` for layer 0.
    pub fn witness(&self, orbit: OrbitId) -> Option<(usize, usize)> {
        self.witnesses[orbit.index()].map(|w| (w.local, w.lower))
    }
}

/// First `V` in canonical local order with `CZ·V·m` one layer below `layer`.
fn descend(
    lc2: &LocalTable,
    c2: &GroupTable,
    atlas: &OrbitAtlas,
    cz: &GateMatrix,
    m: &GateMatrix,
    layer: u32,
) -> Option<(usize, usize)> {
    lc2.elements().iter().enumerate().find_map(|(v, vm)| {
        let id = c2.contains(&(&(cz * vm) * m))?;
        (atlas.layer(atlas.orbit_of(id)) == Some(layer - 1)).then_some((v, id))
    })
}
