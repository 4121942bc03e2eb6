//! Text formats: graph6, the three matroid formats, and verification reports.
//!
//! Matroid files look like
//!
//! ```text
//! graph 4 6        gfp 5 2 4        bases 4 2
//! 0 1              1 0 1 1          0 1
//! ...              0 1 1 2          ...
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. Graph edge lines may
//! carry a third token, the edge label.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Position, Result};
use crate::gfp::LinearRep;
use crate::graph::Graph;
use crate::mask::Mask;
use crate::matroid::{Matroid, Provenance, DEFAULT_CAP};

const G6_HEADER: &str = ">>graph6<<";

fn g6_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
}

/// Encodes a simple graph. Edge order is not preserved: graph6 stores only
/// adjacency.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::arg("graph6 stores simple graphs only"));
    }
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut out = Vec::new();
    g6_size(n, &mut out);
    let bits: Vec<bool> = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .map(|(i, j)| adj[i][j])
        .collect();
    for chunk in bits.chunks(6) {
        let v = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (k, &b)| acc | (u8::from(b) << (5 - k)));
        out.push(v + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 line; `>>graph6<<` and surrounding whitespace are
/// accepted. Edges come out in column order: (0,1), (0,2), (1,2), (0,3), ...
pub fn decode_graph6(line: &str) -> Result<Graph> {
    let start = line.len() - line.trim_start().len();
    let mut body = line.trim();
    let mut base = start;
    if let Some(rest) = body.strip_prefix(G6_HEADER) {
        body = rest;
        base += G6_HEADER.len();
    }
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(
                Position::Byte(base + i),
                format!("byte {b:#04x} outside the graph6 range"),
            ));
        }
    }
    let val = |i: usize| usize::from(bytes[i] - 63);
    let need = |len: usize| {
        if bytes.len() < len {
            Err(Error::parse(
                Position::Byte(base + bytes.len()),
                "truncated vertex count",
            ))
        } else {
            Ok(())
        }
    };
    need(1)?;
    let (n, mut pos) = if bytes[0] != 126 {
        (val(0), 1)
    } else {
        need(2)?;
        if bytes[1] != 126 {
            need(4)?;
            ((1..4).fold(0, |acc, i| (acc << 6) | val(i)), 4)
        } else {
            need(8)?;
            ((2..8).fold(0, |acc, i| (acc << 6) | val(i)), 8)
        }
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let expect = pos + nbits.div_ceil(6);
    if bytes.len() != expect {
        let at = base + bytes.len().min(expect);
        return Err(Error::parse(
            Position::Byte(at),
            format!(
                "{n} vertices need {} adjacency bytes, found {}",
                nbits.div_ceil(6),
                bytes.len() - pos
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = val(pos + k / 6);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    pos += k.div_ceil(6);
    if k % 6 != 0 && val(pos - 1) & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(Error::parse(
            Position::Byte(base + pos - 1),
            "nonzero padding bits",
        ));
    }
    Graph::new(n, edges)
}

/// Lines with their 1-based numbers, skipping blanks and comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn nums<T: std::str::FromStr>(line: usize, toks: &[&str]) -> Result<Vec<T>> {
    toks.iter()
        .map(|t| {
            t.parse().map_err(|_| {
                Error::parse(
                    Position::Line(line),
                    format!("expected a number, got {t:?}"),
                )
            })
        })
        .collect()
}

fn count_err(line: usize, want: usize, what: &str, got: usize) -> Error {
    Error::parse(
        Position::Line(line),
        format!("expected {want} {what}, found {got}"),
    )
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(Position::Line(1), "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "graph" {
        return Err(Error::parse(
            Position::Line(hl),
            "expected header `graph n m`",
        ));
    }
    let [n, m]: [usize; 2] = nums(hl, &toks[1..])?.try_into().expect("two tokens");
    let mut edges = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(Error::parse(
                Position::Line(ln),
                "expected `u v` or `u v label`",
            ));
        }
        let uv: Vec<usize> = nums(ln, &toks[..2])?;
        if uv[0] >= n || uv[1] >= n {
            return Err(Error::parse(
                Position::Line(ln),
                format!("vertex out of range for {n} vertices"),
            ));
        }
        if edges.len() == m {
            return Err(count_err(ln, m, "edges", m + 1));
        }
        edges.push((uv[0], uv[1]));
        labels.push(toks.get(2).map(|s| s.to_string()));
    }
    if edges.len() != m {
        return Err(count_err(last, m, "edges", edges.len()));
    }
    let g = Graph::new(n, edges)?;
    if labels.iter().any(Option::is_some) {
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
            .collect();
        return g.with_labels(labels);
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("graph {} {}\n", g.vertex_count(), g.edge_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match g.label(e) {
            Some(l) => s.push_str(&format!("{u} {v} {l}\n")),
            None => s.push_str(&format!("{u} {v}\n")),
        }
    }
    s
}

fn parse_gfp(
    hl: usize,
    toks: &[&str],
    lines: &mut dyn Iterator<Item = (usize, &str)>,
) -> Result<LinearRep> {
    let [p, r, n]: [usize; 3] = nums(hl, toks)?.try_into().expect("three tokens");
    let mut rows = Vec::with_capacity(r);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        let row: Vec<i64> = nums(ln, &l.split_whitespace().collect::<Vec<_>>())?;
        if row.len() != n {
            return Err(count_err(ln, n, "entries", row.len()));
        }
        if rows.len() == r {
            return Err(count_err(ln, r, "rows", r + 1));
        }
        rows.push(row);
    }
    if rows.len() != r {
        return Err(count_err(last, r, "rows", rows.len()));
    }
    if r == 0 {
        return Err(Error::parse(
            Position::Line(hl),
            "a representation needs at least one row",
        ));
    }
    let p = u32::try_from(p).map_err(|_| Error::parse(Position::Line(hl), "modulus too large"))?;
    LinearRep::new(p, rows)
}

fn parse_bases(
    hl: usize,
    toks: &[&str],
    lines: &mut dyn Iterator<Item = (usize, &str)>,
    cap: usize,
) -> Result<Matroid> {
    let [n, r]: [usize; 2] = nums(hl, toks)?.try_into().expect("two tokens");
    let mut bases = Vec::new();
    for (ln, l) in lines {
        let b: Vec<usize> = nums(ln, &l.split_whitespace().collect::<Vec<_>>())?;
        if b.len() != r {
            return Err(count_err(ln, r, "indices", b.len()));
        }
        if b.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(
                Position::Line(ln),
                "basis indices must be strictly increasing",
            ));
        }
        if b.iter().any(|&e| e >= n) {
            return Err(Error::parse(
                Position::Line(ln),
                format!("index out of range for {n} elements"),
            ));
        }
        bases.push(Mask::from_elems(b));
    }
    Matroid::from_bases_capped(n, &bases, cap)
}

/// Reads any of the three matroid formats.
pub fn parse_matroid(text: &str) -> Result<Matroid> {
    parse_matroid_capped(text, DEFAULT_CAP)
}

pub fn parse_matroid_capped(text: &str, cap: usize) -> Result<Matroid> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(Position::Line(1), "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    match (toks.first().copied(), toks.len()) {
        (Some("graph"), 3) => Matroid::from_graph_capped(&parse_graph(text)?, cap),
        (Some("gfp"), 4) => Matroid::from_gfp_capped(&parse_gfp(hl, &toks[1..], &mut lines)?, cap),
        (Some("bases"), 3) => parse_bases(hl, &toks[1..], &mut lines, cap),
        _ => Err(Error::parse(
            Position::Line(hl),
            "expected `graph n m`, `gfp p r n` or `bases n r`",
        )),
    }
}

pub fn write_gfp(rep: &LinearRep) -> String {
    let mut s = format!(
        "gfp {} {} {}\n",
        rep.prime(),
        rep.row_count(),
        rep.col_count()
    );
    for r in 0..rep.row_count() {
        let row: Vec<String> = rep.row(r).iter().map(u32::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn write_bases(m: &Matroid) -> String {
    let mut s = format!("bases {} {}\n", m.size(), m.total_rank());
    let mut bases: Vec<Vec<usize>> = m.bases().iter().map(|b| b.to_vec()).collect();
    bases.sort();
    for b in bases {
        let b: Vec<String> = b.iter().map(usize::to_string).collect();
        s.push_str(&b.join(" "));
        s.push('\n');
    }
    s
}

/// Writes a graph or representation when the matroid carries one, and the
/// basis list otherwise.
pub fn write_matroid(m: &Matroid) -> String {
    match m.provenance() {
        Provenance::Graphic(g) => write_graph(g),
        Provenance::LinearGfp(rep) => write_gfp(rep),
        _ => write_bases(m),
    }
}

/// FNV-1a, printed as 16 hex digits. Identifies inputs that have no family spec.
pub fn digest(text: &str) -> String {
    let h = text.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    });
    format!("{h:016x}")
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub id: String,
    pub source: String,
    /// Family spec, or the input digest.
    pub spec: String,
    pub elements: usize,
    pub outcome: String,
    pub witness: Option<serde_json::Value>,
    pub timing_ms: u64,
    pub version: String,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReportFormat> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::arg(format!("unknown report format {s:?}"))),
        }
    }
}

const CSV_HEADER: [&str; 8] = [
    "id",
    "source",
    "spec",
    "elements",
    "outcome",
    "witness",
    "timing_ms",
    "version",
];

/// JSON is one array with one record per line; CSV always has a header.
pub fn write_report(records: &[ReportRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            if records.is_empty() {
                return "[]\n".into();
            }
            let rows: Vec<String> = records
                .iter()
                .map(|r| serde_json::to_string(r).expect("records serialize"))
                .collect();
            format!("[\n{}\n]\n", rows.join(",\n"))
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("in-memory write");
            for r in records {
                let witness = r
                    .witness
                    .as_ref()
                    .map(|v| v.to_string())
                    .unwrap_or_default();
                w.write_record([
                    r.id.as_str(),
                    &r.source,
                    &r.spec,
                    &r.elements.to_string(),
                    &r.outcome,
                    &witness,
                    &r.timing_ms.to_string(),
                    &r.version,
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
    }
}

pub fn read_report_json(text: &str) -> Result<Vec<ReportRecord>> {
    serde_json::from_str(text).map_err(|e| Error::parse(Position::Line(e.line()), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_graph6() {
        let g = decode_graph6("C~").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
        assert_eq!(encode_graph6(&g).unwrap(), "C~");
        assert_eq!(decode_graph6(">>graph6<<C~\n").unwrap().edge_count(), 6);
    }

    #[test]
    fn graph6_errors_have_offsets() {
        match decode_graph6("C~\x01") {
            Err(Error::Parse {
                at: Position::Byte(2),
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
        // K3 uses 3 bits; the low 3 padding bits must be clear.
        assert!(decode_graph6("Bw").is_ok());
        assert!(matches!(
            decode_graph6("Bx"),
            Err(Error::Parse {
                at: Position::Byte(1),
                ..
            })
        ));
        assert!(decode_graph6("C").is_err());
    }

    #[test]
    fn large_size_prefix() {
        let g = Graph::new(70, (0..69).map(|i| (i, i + 1)).collect()).unwrap();
        let s = encode_graph6(&g).unwrap();
        assert!(s.starts_with('~'));
        let h = decode_graph6(&s).unwrap();
        assert_eq!(h.edge_count(), 69);
        assert_eq!(encode_graph6(&h).unwrap(), s);
    }

    #[test]
    fn gfp_u24() {
        let m = parse_matroid("gfp 5 2 4\n1 0 1 1\n0 1 1 2\n").unwrap();
        for a in 0..4 {
            for b in a + 1..4 {
                assert_eq!(m.rank(Mask::from_elems([a, b])), 2);
            }
        }
        assert_eq!(
            parse_matroid(&write_matroid(&m)).unwrap().table(),
            m.table()
        );
        assert_eq!(write_bases(&m).lines().count(), 7);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_matroid("gfp 5 2 4\n1 0 1\n0 1 1 2\n").unwrap_err();
        assert!(matches!(
            e,
            Error::Parse {
                at: Position::Line(2),
                ..
            }
        ));
        let e = parse_matroid("# c\ngraph 3 3\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(
            e,
            Error::Parse {
                at: Position::Line(4),
                ..
            }
        ));
        let e = parse_matroid("bases 3 1\n0\n2 1\n").unwrap_err();
        assert!(matches!(
            e,
            Error::Parse {
                at: Position::Line(3),
                ..
            }
        ));
        assert!(matches!(
            parse_matroid("bases 4 2\n0 1\n2 3\n"),
            Err(Error::InvalidBases { .. })
        ));
    }

    #[test]
    fn empty_csv_is_header() {
        assert_eq!(
            write_report(&[], ReportFormat::Csv),
            CSV_HEADER.join(",") + "\n"
        );
    }
}
