//! Reader and writer for the ASCII MSH 2.x format.
//!
//! Only `$MeshFormat`, `$Nodes` and `$Elements` are interpreted; other
//! sections are skipped. Tetrahedra (type 4) build the mesh, triangles
//! (type 2) are checked for valid node references and otherwise ignored since
//! the boundary is always derived from the tetrahedra. Other element types
//! are skipped.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::MeshError;
use crate::mesh::TetMesh;

/// Upper bound on speculative preallocation from declared counts.
const MAX_PREALLOC: usize = 1 << 16;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), line: 0 }
    }

    /// Next non-empty line, trimmed.
    fn next(&mut self) -> Option<&'a str> {
        for (i, l) in self.inner.by_ref() {
            self.line = i + 1;
            let t = l.trim();
            if !t.is_empty() {
                return Some(t);
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<&'a str, MeshError> {
        let line = self.line;
        self.next().ok_or_else(|| MeshError::Parse { line: line + 1, message: format!("unexpected end of file, expected {what}") })
    }

    fn err(&self, message: impl Into<String>) -> MeshError {
        MeshError::Parse { line: self.line, message: message.into() }
    }
}

fn parse_num<T: std::str::FromStr>(lines: &Lines, tok: Option<&str>, what: &str) -> Result<T, MeshError> {
    let tok = tok.ok_or_else(|| lines.err(format!("missing {what}")))?;
    tok.parse::<T>().map_err(|_| lines.err(format!("invalid {what} '{tok}'")))
}

/// Parses MSH text into a mesh.
pub fn parse_msh(text: &str) -> Result<TetMesh, MeshError> {
    let mut lines = Lines::new(text);
    let mut format_seen = false;
    let mut nodes: Option<(Vec<[f64; 3]>, HashMap<u64, usize>)> = None;
    let mut tets_raw: Vec<(usize, [u64; 4])> = Vec::new();
    let mut tris_raw: Vec<(usize, [u64; 3])> = Vec::new();
    let mut elements_seen = false;

    while let Some(l) = lines.next() {
        match l {
            "$MeshFormat" => {
                let header = lines.expect("format header")?;
                let mut it = header.split_whitespace();
                let version: String = parse_num(&lines, it.next(), "version")?;
                let file_type: u32 = parse_num(&lines, it.next(), "file type")?;
                let _data_size: u32 = parse_num(&lines, it.next(), "data size")?;
                if !(version == "2" || version.starts_with("2.")) {
                    return Err(lines.err(format!("unsupported MSH version {version}")));
                }
                if file_type != 0 {
                    return Err(lines.err("binary MSH is not supported"));
                }
                if lines.expect("$EndMeshFormat")? != "$EndMeshFormat" {
                    return Err(lines.err("expected $EndMeshFormat"));
                }
                format_seen = true;
            }
            "$Nodes" => {
                if !format_seen {
                    return Err(lines.err("$Nodes before $MeshFormat"));
                }
                if nodes.is_some() {
                    return Err(lines.err("duplicate $Nodes section"));
                }
                let count_line = lines.expect("node count")?;
                let count: usize = parse_num(&lines, Some(count_line), "node count")?;
                let mut coords = Vec::with_capacity(count.min(MAX_PREALLOC));
                let mut ids = HashMap::with_capacity(count.min(MAX_PREALLOC));
                for _ in 0..count {
                    let row = lines.expect("node")?;
                    if row.starts_with('$') {
                        return Err(lines.err(format!("expected {count} nodes, found {}", coords.len())));
                    }
                    let mut it = row.split_whitespace();
                    let id: u64 = parse_num(&lines, it.next(), "node id")?;
                    let mut p = [0.0f64; 3];
                    for (k, c) in p.iter_mut().enumerate() {
                        *c = parse_num(&lines, it.next(), ["x", "y", "z"][k])?;
                        if !c.is_finite() {
                            return Err(lines.err("non-finite coordinate"));
                        }
                    }
                    if ids.insert(id, coords.len()).is_some() {
                        return Err(lines.err(format!("duplicate node id {id}")));
                    }
                    coords.push(p);
                }
                if lines.expect("$EndNodes")? != "$EndNodes" {
                    return Err(lines.err("expected $EndNodes"));
                }
                nodes = Some((coords, ids));
            }
            "$Elements" => {
                if !format_seen {
                    return Err(lines.err("$Elements before $MeshFormat"));
                }
                if elements_seen {
                    return Err(lines.err("duplicate $Elements section"));
                }
                elements_seen = true;
                let count_line = lines.expect("element count")?;
                let count: usize = parse_num(&lines, Some(count_line), "element count")?;
                for _ in 0..count {
                    let row = lines.expect("element")?;
                    if row.starts_with('$') {
                        return Err(lines.err(format!("expected {count} elements")));
                    }
                    let mut it = row.split_whitespace();
                    let _id: u64 = parse_num(&lines, it.next(), "element id")?;
                    let kind: u32 = parse_num(&lines, it.next(), "element type")?;
                    let ntags: usize = parse_num(&lines, it.next(), "tag count")?;
                    for _ in 0..ntags {
                        let _: i64 = parse_num(&lines, it.next(), "tag")?;
                    }
                    match kind {
                        4 => {
                            let mut t = [0u64; 4];
                            for x in t.iter_mut() {
                                *x = parse_num(&lines, it.next(), "node reference")?;
                            }
                            tets_raw.push((lines.line, t));
                        }
                        2 => {
                            let mut t = [0u64; 3];
                            for x in t.iter_mut() {
                                *x = parse_num(&lines, it.next(), "node reference")?;
                            }
                            tris_raw.push((lines.line, t));
                        }
                        _ => continue,
                    }
                    if it.next().is_some() {
                        return Err(lines.err("trailing data after element nodes"));
                    }
                }
                if lines.expect("$EndElements")? != "$EndElements" {
                    return Err(lines.err("expected $EndElements"));
                }
            }
            s if s.starts_with('$') && !s.starts_with("$End") => {
                let end = format!("$End{}", &s[1..]);
                loop {
                    let row = lines.expect(&end)?;
                    if row == end {
                        break;
                    }
                }
            }
            other => return Err(lines.err(format!("unexpected content '{}'", truncate(other)))),
        }
    }

    if !format_seen {
        return Err(MeshError::Parse { line: lines.line, message: "missing $MeshFormat".into() });
    }
    let (coords, ids) = nodes.ok_or_else(|| MeshError::Parse { line: lines.line, message: "missing $Nodes".into() })?;
    let lookup = |line: usize, id: u64| {
        ids.get(&id).copied().ok_or_else(|| MeshError::Parse { line, message: format!("unknown node {id}") })
    };
    for (line, t) in &tris_raw {
        for id in t {
            lookup(*line, *id)?;
        }
    }
    let mut tets = Vec::with_capacity(tets_raw.len());
    for (line, t) in &tets_raw {
        tets.push([lookup(*line, t[0])?, lookup(*line, t[1])?, lookup(*line, t[2])?, lookup(*line, t[3])?]);
    }
    TetMesh::new(coords, tets)
}

fn truncate(s: &str) -> String {
    s.chars().take(40).collect()
}

/// Reads and parses an MSH file.
pub fn load_mesh(path: impl AsRef<Path>) -> Result<TetMesh, MeshError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| MeshError::Io(format!("{}: {e}", path.display())))?;
    parse_msh(&text)
}

/// MSH 2.2 text of the mesh: boundary triangles then tetrahedra.
pub fn write_msh(mesh: &TetMesh) -> String {
    let mut s = String::new();
    s.push_str("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n");
    let _ = writeln!(s, "{}", mesh.vertices.len());
    for (i, p) in mesh.vertices.iter().enumerate() {
        let _ = writeln!(s, "{} {:?} {:?} {:?}", i + 1, p[0], p[1], p[2]);
    }
    s.push_str("$EndNodes\n$Elements\n");
    let _ = writeln!(s, "{}", mesh.boundary_tris.len() + mesh.tets.len());
    let mut id = 1;
    for f in &mesh.boundary_tris {
        let _ = writeln!(s, "{id} 2 2 1 1 {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        id += 1;
    }
    for t in &mesh.tets {
        let _ = writeln!(s, "{id} 4 2 1 1 {} {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1, t[3] + 1);
        id += 1;
    }
    s.push_str("$EndElements\n");
    s
}
