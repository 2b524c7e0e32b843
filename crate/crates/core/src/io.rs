//! Text persistence for group tables and orbit atlases.
//!
//! Table file: a header `CLIFFORD-TABLE v1 <name> <count>`, then `count`
//! matrices in the matrix text format, in canonical order. Output is a pure
//! function of the table contents, so files are byte-identical across runs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::clifford::Clifford2;
use crate::error::{Error, ParseError, Result};
use crate::group::{self, GroupTable};
use crate::matrix::GateMatrix;
use crate::orbit::OrbitAtlas;

pub const TABLE_MAGIC: &str = "CLIFFORD-TABLE";
pub const TABLE_VERSION: &str = "v1";
pub const TABLE_FILES: [&str; 3] = ["c1.tbl", "lc2.tbl", "c2.tbl"];
pub const ORBIT_MAP_FILE: &str = "orbits.map";
pub const ORBIT_SUMMARY_FILE: &str = "orbits.txt";

pub fn table_text(name: &str, elements: &[GateMatrix]) -> String {
    let mut out = String::with_capacity(elements.len() * 200);
    writeln!(out, "{TABLE_MAGIC} {TABLE_VERSION} {name} {}", elements.len()).unwrap();
    for m in elements {
        write!(out, "{m}").unwrap();
    }
    out
}

/// Parses a table file, returning its name and records.
pub fn parse_table(text: &str) -> Result<(String, Vec<GateMatrix>), ParseError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(ParseError::Truncated)?;
    let fields: Vec<&str> = header.split(' ').collect();
    let bad_header = || ParseError::Line { line: 1, msg: format!("bad table header {header:?}") };
    let [magic, version, name, count] = fields.as_slice() else {
        return Err(bad_header());
    };
    if *magic != TABLE_MAGIC || *version != TABLE_VERSION {
        return Err(bad_header());
    }
    let count: usize = count.parse().map_err(|_| bad_header())?;
    let mut elements = Vec::with_capacity(count);
    let mut line_no = 2;
    for _ in 0..count {
        let m = GateMatrix::parse_lines(&mut lines, line_no)?;
        line_no += m.dim() + 1;
        elements.push(m);
    }
    if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
        return Err(ParseError::Line { line: line_no, msg: format!("trailing input {extra:?}") });
    }
    Ok((name.to_string(), elements))
}

/// `element_id orbit_id` per line, element ids being c2 record positions
/// starting at 0.
pub fn orbit_map_text(atlas: &OrbitAtlas, element_count: usize) -> String {
    let mut out = String::with_capacity(element_count * 9);
    for e in 0..element_count {
        writeln!(out, "{e} {}", atlas.orbit_of(e).0).unwrap();
    }
    out
}

/// `orbit_id layer size representative_encoding`, the encoding in hex.
pub fn orbit_summary_text(atlas: &OrbitAtlas, c2: &GroupTable) -> String {
    let mut out = String::new();
    for o in atlas.orbits() {
        let rep = &c2.elements()[atlas.representative(o)];
        let layer = atlas.layer(o).map_or("-".to_string(), |l| l.to_string());
        writeln!(out, "{} {layer} {} {}", o.0, atlas.members(o).len(), hex::encode(rep.canonical_encoding()))
            .unwrap();
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_path_buf(), source })
}

/// Writes `c1.tbl`, `lc2.tbl`, `c2.tbl` into `dir`.
pub fn save_tables(dir: &Path, data: &Clifford2) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let tables: [(&str, &GroupTable); 3] = [("c1", &data.c1), ("lc2", data.lc2.table()), ("c2", &data.c2)];
    let mut written = Vec::new();
    for (file, (name, table)) in TABLE_FILES.iter().zip(tables) {
        let path = dir.join(file);
        write_file(&path, &table_text(name, table.elements()))?;
        written.push(path);
    }
    Ok(written)
}

/// Writes the orbit map and orbit summary into `dir`.
pub fn save_orbits(dir: &Path, data: &Clifford2) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let map = dir.join(ORBIT_MAP_FILE);
    write_file(&map, &orbit_map_text(&data.atlas, data.c2.len()))?;
    let summary = dir.join(ORBIT_SUMMARY_FILE);
    write_file(&summary, &orbit_summary_text(&data.atlas, &data.c2))?;
    Ok(vec![map, summary])
}

pub fn tables_present(dir: &Path) -> bool {
    TABLE_FILES.iter().all(|f| dir.join(f).is_file())
}

fn read_table(dir: &Path, file: &str, expected_name: &str) -> Result<Vec<GateMatrix>> {
    let path = dir.join(file);
    let text = fs::read_to_string(&path).map_err(|source| Error::Io { path: path.clone(), source })?;
    let corrupt = |msg: String| Error::CorruptTable { path: path.clone(), msg };
    let (name, elements) = parse_table(&text).map_err(|e| corrupt(e.to_string()))?;
    if name != expected_name {
        return Err(corrupt(format!("table name {name:?}, expected {expected_name:?}")));
    }
    Ok(elements)
}

/// Loads the three tables from `dir`, validating each against its generator
/// alphabet, and derives the atlas and graph.
pub fn load(dir: &Path) -> Result<Clifford2> {
    let corrupt = |file: &str, msg: String| Error::CorruptTable { path: dir.join(file), msg };

    let c1 = GroupTable::from_elements("c1", group::c1_alphabet(), read_table(dir, "c1.tbl", "c1")?)
        .map_err(|m| corrupt("c1.tbl", m))?;
    let lc2_records = read_table(dir, "lc2.tbl", "lc2")?;
    let lc2 = group::build_lc2(&c1)?;
    if lc2.elements() != lc2_records.as_slice() {
        return Err(corrupt("lc2.tbl", "records differ from the tensor square of c1".into()));
    }
    let c2 = GroupTable::from_elements("c2", group::c2_alphabet(), read_table(dir, "c2.tbl", "c2")?)
        .map_err(|m| corrupt("c2.tbl", m))?;
    Clifford2::from_tables(c1, lc2, c2)
}

/// Loads tables from `dir`; when they are absent and `regenerate` is set,
/// builds them and writes them first.
pub fn load_or_generate(dir: &Path, regenerate: bool) -> Result<Clifford2> {
    if tables_present(dir) {
        return load(dir);
    }
    if !regenerate {
        let missing = TABLE_FILES.iter().map(|f| dir.join(f)).find(|p| !p.is_file()).unwrap();
        return Err(Error::Io {
            path: missing,
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "table missing and regeneration disabled"),
        });
    }
    let data = Clifford2::build()?;
    save_tables(dir, &data)?;
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::gates;

    #[test]
    fn table_round_trip() {
        let c1 = group::build_c1().unwrap();
        let text = table_text("c1", c1.elements());
        assert!(text.starts_with("CLIFFORD-TABLE v1 c1 192\n"));
        let (name, elements) = parse_table(&text).unwrap();
        assert_eq!(name, "c1");
        assert_eq!(elements, c1.elements());
    }

    #[test]
    fn table_errors() {
        let text = table_text("t", &[gates::i4(), gates::cz()]);
        let truncated: String = text.lines().take(7).map(|l| format!("{l}\n")).collect();
        assert_eq!(parse_table(&truncated), Err(ParseError::Truncated));
        assert!(parse_table(&text.replace("v1", "v2")).is_err());
        assert!(parse_table(&format!("{text}junk\n")).is_err());
        assert!(parse_table(&text.replace(" 2\n", " two\n")).is_err());
    }
}
