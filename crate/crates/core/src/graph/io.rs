//! Text and JSON serialisation of graphs.
//!
//! Text format: a header line `n d l` (order, directed flag, loops flag)
//! followed by one `u v` line per edge, 0-indexed and sorted. Undirected
//! edges are written once with `u < v`.

use super::GraphData;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub directed: bool,
    pub loops: bool,
    pub edges: Vec<[usize; 2]>,
}

fn parse_err(line: usize, detail: impl Into<String>) -> Error {
    Error::Parse {
        line,
        detail: detail.into(),
    }
}

fn flag(tok: &str, line: usize) -> Result<bool> {
    match tok {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(parse_err(line, format!("expected 0 or 1, found {tok:?}"))),
    }
}

impl GraphData {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} {}\n",
            self.order(),
            self.is_directed() as u8,
            self.loops_allowed() as u8
        );
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the text format. Blank lines and lines starting with `#` are
    /// skipped.
    pub fn from_text(text: &str) -> Result<GraphData> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(hl, "header must be `n d l`"));
        }
        let n: usize = toks[0]
            .parse()
            .map_err(|_| parse_err(hl, format!("bad order {:?}", toks[0])))?;
        let directed = flag(toks[1], hl)?;
        let loops = flag(toks[2], hl)?;
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(parse_err(ln, "edge lines must be `u v`"));
            }
            let mut e = [0usize; 2];
            for (slot, t) in e.iter_mut().zip(&toks) {
                *slot = t.parse().map_err(|_| parse_err(ln, format!("bad vertex {t:?}")))?;
            }
            edges.push((e[0], e[1]));
        }
        GraphData::from_edges(n, directed, loops, &edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.order(),
            directed: self.is_directed(),
            loops: self.loops_allowed(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<GraphData> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        GraphData::from_edges(j.n, j.directed, j.loops, &edges)
    }

    /// Accepts either the text format or the JSON object form.
    pub fn parse_any(text: &str) -> Result<GraphData> {
        if text.trim_start().starts_with('{') {
            let j: GraphJson = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
            GraphData::from_json(&j)
        } else {
            GraphData::from_text(text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let g = GraphData::cycle(4);
        let t = g.to_text();
        assert_eq!(t, "4 0 0\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(GraphData::from_text(&t).unwrap(), g);
        let d = GraphData::from_edges(3, true, true, &[(2, 0), (1, 1)]).unwrap();
        assert_eq!(GraphData::from_text(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn json_round_trip() {
        let g = GraphData::path(3);
        let s = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(s, r#"{"n":3,"directed":false,"loops":false,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(GraphData::parse_any(&s).unwrap(), g);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        match GraphData::from_text("3 0 0\n0 1\nx 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(GraphData::from_text("3 0 2\n").is_err());
        assert!(GraphData::from_text("").is_err());
    }
}
