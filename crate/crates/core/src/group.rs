//! Finite matrix groups as deduplicated, indexed tables.
//!
//! Tables are built by breadth-first closure from the identity, multiplying
//! each frontier element on the right by every generator. A stored word
//! `[g1, g2, .., gn]` therefore evaluates to the matrix product
//! `g1·g2·…·gn`, and it is a shortest word for its element. After the
//! closure the elements are sorted by canonical encoding, so element ids do
//! not depend on generator order or traversal details.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::matrix::{gates, GateMatrix};

/// Hard cap on closure size. Reaching it means the arithmetic is producing
/// spurious distinct elements.
pub const CLOSURE_CAP: usize = 1_000_000;

/// A word over a table's generator alphabet, as indices into the alphabet.
pub type Word = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub matrix: GateMatrix,
}

impl Generator {
    pub fn new(name: &str, matrix: GateMatrix) -> Self {
        Generator { name: name.to_string(), matrix }
    }
}

/// `{H, P}`
pub fn c1_alphabet() -> Vec<Generator> {
    vec![Generator::new("H", gates::h()), Generator::new("P", gates::p())]
}

/// `{h1, h2, p1, p2}`: H and P on either wire.
pub fn local_alphabet() -> Vec<Generator> {
    vec![
        Generator::new("h1", gates::on_wire1(&gates::h())),
        Generator::new("h2", gates::on_wire2(&gates::h())),
        Generator::new("p1", gates::on_wire1(&gates::p())),
        Generator::new("p2", gates::on_wire2(&gates::p())),
    ]
}

/// `{h1, h2, p1, p2, cz}`. A word lies in the local group iff it avoids `cz`.
pub fn c2_alphabet() -> Vec<Generator> {
    let mut gens = local_alphabet();
    gens.push(Generator::new("cz", gates::cz()));
    gens
}

#[derive(Clone, Debug)]
pub struct GroupTable {
    name: String,
    alphabet: Vec<Generator>,
    elements: Vec<GateMatrix>,
    index_of: HashMap<GateMatrix, usize>,
    words: Vec<Word>,
}

impl GroupTable {
    /// Breadth-first closure of `alphabet` starting at the identity.
    pub fn closure(name: &str, alphabet: Vec<Generator>) -> Result<GroupTable> {
        Self::closure_with_cap(name, alphabet, CLOSURE_CAP)
    }

    pub fn closure_with_cap(name: &str, alphabet: Vec<Generator>, cap: usize) -> Result<GroupTable> {
        let dim = alphabet.first().map_or(2, |g| g.matrix.dim());
        if let Some(g) = alphabet.iter().find(|g| g.matrix.dim() != dim) {
            return Err(Error::Dimension(dim, g.matrix.dim()));
        }
        let mut found: HashMap<GateMatrix, Word> = HashMap::new();
        let mut queue = VecDeque::new();
        let id = GateMatrix::identity(dim);
        found.insert(id.clone(), Word::new());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            let word = found[&x].clone();
            for (g, gen) in alphabet.iter().enumerate() {
                let y = &x * &gen.matrix;
                if found.contains_key(&y) {
                    continue;
                }
                if found.len() >= cap {
                    return Err(Error::ClosureCap(cap));
                }
                let mut w = word.clone();
                w.push(g as u8);
                found.insert(y.clone(), w);
                queue.push_back(y);
            }
        }
        let mut pairs: Vec<(GateMatrix, Word)> = found.into_iter().collect();
        pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let (elements, words): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Ok(Self::assemble(name, alphabet, elements, words))
    }

    /// Rebuilds a table from a canonically sorted element list, recomputing
    /// shortest words. Fails if the list is unsorted, has duplicates, is not
    /// closed under the alphabet, or is not generated by it.
    pub fn from_elements(
        name: &str,
        alphabet: Vec<Generator>,
        elements: Vec<GateMatrix>,
    ) -> std::result::Result<GroupTable, String> {
        if let Some(i) = (1..elements.len()).find(|&i| elements[i - 1] >= elements[i]) {
            return Err(format!("records {} and {} are not in strictly increasing canonical order", i, i + 1));
        }
        let dim = elements.first().ok_or("empty table")?.dim();
        let index_of: HashMap<GateMatrix, usize> =
            elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let start = *index_of
            .get(&GateMatrix::identity(dim))
            .ok_or("identity missing")?;
        let mut words: Vec<Option<Word>> = vec![None; elements.len()];
        words[start] = Some(Word::new());
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (g, gen) in alphabet.iter().enumerate() {
                let y = elements[x].matmul(&gen.matrix).map_err(|e| e.to_string())?;
                let &j = index_of
                    .get(&y)
                    .ok_or_else(|| format!("record {} times {} is not in the table", x + 1, gen.name))?;
                if words[j].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(g as u8);
                    words[j] = Some(w);
                    queue.push_back(j);
                }
            }
        }
        let words = words
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| format!("record {} is not generated by the alphabet", i + 1)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(GroupTable { name: name.to_string(), alphabet, elements, index_of, words })
    }

    fn assemble(name: &str, alphabet: Vec<Generator>, elements: Vec<GateMatrix>, words: Vec<Word>) -> GroupTable {
        let index_of = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        GroupTable { name: name.to_string(), alphabet, elements, index_of, words }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in canonical order; the position is the element id.
    pub fn elements(&self) -> &[GateMatrix] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> Result<&GateMatrix> {
        self.elements.get(id).ok_or(Error::InvalidId(id))
    }

    pub fn contains(&self, m: &GateMatrix) -> Option<usize> {
        self.index_of.get(m).copied()
    }

    pub fn identity_id(&self) -> usize {
        let dim = self.elements[0].dim();
        self.contains(&GateMatrix::identity(dim)).expect("group tables contain the identity")
    }

    pub fn word_of(&self, id: usize) -> Result<&[u8]> {
        self.words.get(id).map(Vec::as_slice).ok_or(Error::InvalidId(id))
    }

    pub fn evaluate_word(&self, word: &[u8]) -> GateMatrix {
        let dim = self.elements[0].dim();
        word.iter()
            .fold(GateMatrix::identity(dim), |acc, &g| &acc * &self.alphabet[g as usize].matrix)
    }

    /// Generator names joined by spaces; the empty word is `""`.
    pub fn word_text(&self, word: &[u8]) -> String {
        let names: Vec<&str> = word.iter().map(|&g| self.alphabet[g as usize].name.as_str()).collect();
        names.join(" ")
    }

    /// Length of the longest stored shortest word.
    pub fn diameter(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// The local group `{A ⊗ B : A, B ∈ C1}`, with a preferred tensor
/// factorization for every element.
#[derive(Clone, Debug)]
pub struct LocalTable {
    table: GroupTable,
    factors: Vec<(usize, usize)>,
}

impl LocalTable {
    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    /// C1 ids `(a, b)` with `element = c1[a] ⊗ c1[b]`, minimizing the total
    /// C1 word length and then `(a, b)`.
    pub fn factor(&self, id: usize) -> Result<(usize, usize)> {
        self.factors.get(id).copied().ok_or(Error::InvalidId(id))
    }
}

impl std::ops::Deref for LocalTable {
    type Target = GroupTable;

    fn deref(&self) -> &GroupTable {
        &self.table
    }
}

/// All tensor products of pairs of C1 elements, deduplicated.
pub fn build_lc2(c1: &GroupTable) -> Result<LocalTable> {
    let mut best: HashMap<GateMatrix, (usize, usize, usize)> = HashMap::new();
    for (a, ma) in c1.elements().iter().enumerate() {
        let la = c1.word_of(a)?.len();
        for (b, mb) in c1.elements().iter().enumerate() {
            let cost = la + c1.word_of(b)?.len();
            let m = GateMatrix::tensor(ma, mb)?;
            best.entry(m)
                .and_modify(|cur| {
                    if (cost, a, b) < *cur {
                        *cur = (cost, a, b);
                    }
                })
                .or_insert((cost, a, b));
        }
    }
    let mut pairs: Vec<(GateMatrix, (usize, usize, usize))> = best.into_iter().collect();
    pairs.sort_unstable_by(|x, y| x.0.cmp(&y.0));

    // wire-1 letters first, then wire-2 letters; the two factors commute
    let lift = |c1_word: &[u8], wire_offset: u8| -> Vec<u8> {
        c1_word.iter().map(|&g| 2 * g + wire_offset).collect()
    };
    let mut elements = Vec::with_capacity(pairs.len());
    let mut words = Vec::with_capacity(pairs.len());
    let mut factors = Vec::with_capacity(pairs.len());
    for (m, (_, a, b)) in pairs {
        let mut w = lift(c1.word_of(a)?, 0);
        w.extend(lift(c1.word_of(b)?, 1));
        elements.push(m);
        words.push(w);
        factors.push((a, b));
    }
    let table = GroupTable::assemble("lc2", local_alphabet(), elements, words);
    Ok(LocalTable { table, factors })
}

pub fn build_c1() -> Result<GroupTable> {
    GroupTable::closure("c1", c1_alphabet())
}

pub fn build_c2() -> Result<GroupTable> {
    GroupTable::closure("c2", c2_alphabet())
}
