//! Minimal GML reader and writer.
//!
//! Supported subset: one `graph [ ... ]` block containing `node [ id N
//! label "..." ]` and `edge [ source N target N ]` records, with an
//! optional numeric `transitions` attribute on edges. Unknown scalar keys
//! are skipped; unknown nested blocks are an error. Files may be gzipped.

use std::collections::HashMap;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use flate2::write::GzEncoder;

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, NodeId, SparseGraph};

/// Read a GML file; `gzipped` selects transparent gzip decoding.
pub fn read_gml(path: impl AsRef<Path>, gzipped: bool) -> Result<SparseGraph> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    if gzipped {
        read_gml_from(MultiGzDecoder::new(file), path)
    } else {
        read_gml_from(file, path)
    }
}

/// As [`read_gml`], from an arbitrary reader; `origin` labels errors.
pub fn read_gml_from(mut reader: impl Read, origin: &Path) -> Result<SparseGraph> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| Error::io(origin, e))?;
    Parser::new(&text, origin).parse()
}

/// Write the GML form of a graph. The `transitions` attribute is emitted
/// only for weighted graphs.
pub fn write_gml(graph: &SparseGraph, path: impl AsRef<Path>, gzipped: bool) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let result = if gzipped {
        let mut enc = GzEncoder::new(BufWriter::new(file), flate2::Compression::default());
        write_gml_to(graph, &mut enc).and_then(|_| enc.finish().map(|_| ()))
    } else {
        write_gml_to(graph, &mut BufWriter::new(file))
    };
    result.map_err(|e| Error::io(path, e))
}

pub fn write_gml_to(graph: &SparseGraph, w: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
    writeln!(w, "graph [")?;
    writeln!(w, "  directed 1")?;
    for id in graph.node_ids() {
        writeln!(w, "  node [")?;
        writeln!(w, "    id {id}")?;
        writeln!(w, "    label \"{}\"", escape(graph.label(id)))?;
        writeln!(w, "  ]")?;
    }
    for u in graph.node_ids() {
        let weights = graph.out_weights(u);
        for (slot, &v) in graph.out_neighbors(u).iter().enumerate() {
            writeln!(w, "  edge [")?;
            writeln!(w, "    source {u}")?;
            writeln!(w, "    target {v}")?;
            if let Some(weights) = weights {
                writeln!(w, "    transitions {}", weights[slot])?;
            }
            writeln!(w, "  ]")?;
        }
    }
    writeln!(w, "]")?;
    Ok(())
}

fn escape(label: &str) -> String {
    label.replace('&', "&amp;").replace('"', "&quot;")
}

fn unescape(label: &str) -> String {
    label.replace("&quot;", "\"").replace("&amp;", "&")
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Key(String),
    Int(i64),
    Float(f64),
    Str(String),
    Open,
    Close,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    origin: &'a Path,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, origin: &'a Path) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            origin,
        }
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            path: self.origin.into(),
            offset,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>> {
        self.skip_ws();
        let start = self.pos;
        let Some(&b) = self.bytes.get(self.pos) else {
            return Ok(None);
        };
        let token = match b {
            b'[' => {
                self.pos += 1;
                Token::Open
            }
            b']' => {
                self.pos += 1;
                Token::Close
            }
            b'"' => {
                self.pos += 1;
                let content_start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'"' {
                    self.pos += 1;
                }
                if self.pos == self.bytes.len() {
                    return Err(self.error(start, "unterminated string"));
                }
                let raw = std::str::from_utf8(&self.bytes[content_start..self.pos])
                    .map_err(|_| self.error(content_start, "invalid UTF-8 in string"))?;
                self.pos += 1;
                Token::Str(unescape(raw))
            }
            b'-' | b'+' | b'0'..=b'9' | b'.' => {
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'[' && *b != b']')
                {
                    self.pos += 1;
                }
                let raw = std::str::from_utf8(&self.bytes[start..self.pos])
                    .map_err(|_| self.error(start, "invalid UTF-8"))?;
                if let Ok(i) = raw.parse::<i64>() {
                    Token::Int(i)
                } else if let Ok(f) = raw.parse::<f64>() {
                    Token::Float(f)
                } else {
                    return Err(self.error(start, format!("unparseable number {raw:?}")));
                }
            }
            _ => {
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'[' && *b != b']')
                {
                    self.pos += 1;
                }
                let raw = std::str::from_utf8(&self.bytes[start..self.pos])
                    .map_err(|_| self.error(start, "invalid UTF-8"))?;
                Token::Key(raw.to_string())
            }
        };
        Ok(Some((start, token)))
    }

    fn expect_open(&mut self, context: &str) -> Result<()> {
        match self.next_token()? {
            Some((_, Token::Open)) => Ok(()),
            Some((at, t)) => Err(self.error(at, format!("expected `[` after {context}, got {t:?}"))),
            None => Err(self.error(self.bytes.len(), format!("expected `[` after {context}"))),
        }
    }

    fn parse(&mut self) -> Result<SparseGraph> {
        match self.next_token()? {
            Some((_, Token::Key(k))) if k == "graph" => {}
            Some((at, t)) => return Err(self.error(at, format!("expected `graph`, got {t:?}"))),
            None => return Err(self.error(0, "empty document")),
        }
        self.expect_open("`graph`")?;

        let mut nodes: Vec<(usize, i64, String)> = Vec::new();
        let mut ids_seen: HashMap<i64, usize> = HashMap::new();
        let mut edges: Vec<(usize, i64, i64, Option<f64>)> = Vec::new();
        let mut weighted = false;

        loop {
            match self.next_token()? {
                Some((_, Token::Close)) => break,
                Some((at, Token::Key(k))) if k == "node" => {
                    self.expect_open("`node`")?;
                    let (id, label) = self.parse_node(at)?;
                    if ids_seen.insert(id, nodes.len()).is_some() {
                        return Err(self.error(at, format!("duplicate node id {id}")));
                    }
                    nodes.push((at, id, label.unwrap_or_else(|| id.to_string())));
                }
                Some((at, Token::Key(k))) if k == "edge" => {
                    self.expect_open("`edge`")?;
                    let (source, target, transitions) = self.parse_edge(at)?;
                    weighted |= transitions.is_some();
                    edges.push((at, source, target, transitions));
                }
                Some((at, Token::Key(_))) => {
                    // Unknown scalar attribute of the graph block, e.g. `directed 1`.
                    self.skip_scalar_value(at)?;
                }
                Some((at, t)) => {
                    return Err(self.error(at, format!("unexpected {t:?} in graph block")))
                }
                None => return Err(self.error(self.bytes.len(), "unterminated graph block")),
            }
        }

        if let Some((at, t)) = self.next_token()? {
            return Err(self.error(at, format!("unexpected {t:?} after the graph block")));
        }

        let mut builder = GraphBuilder::new();
        let mut id_of: HashMap<i64, NodeId> = HashMap::with_capacity(nodes.len());
        for (at, gml_id, label) in &nodes {
            let node = builder
                .add_node(label)
                .map_err(|e| self.error(*at, e.to_string()))?;
            id_of.insert(*gml_id, node);
        }
        for (at, source, target, transitions) in edges {
            if !id_of.contains_key(&source) {
                return Err(self.error(at, format!("edge references missing node id {source}")));
            }
            if !id_of.contains_key(&target) {
                return Err(self.error(at, format!("edge references missing node id {target}")));
            }
            let source_label = nodes[ids_seen[&source]].2.clone();
            let target_label = nodes[ids_seen[&target]].2.clone();
            let weight = if weighted {
                Some(transitions.unwrap_or(0.0))
            } else {
                None
            };
            builder
                .add_edge(&source_label, &target_label, weight)
                .map_err(|e| self.error(at, e.to_string()))?;
        }
        Ok(builder.build())
    }

    fn parse_node(&mut self, at: usize) -> Result<(i64, Option<String>)> {
        let mut id = None;
        let mut label = None;
        loop {
            match self.next_token()? {
                Some((_, Token::Close)) => break,
                Some((kat, Token::Key(k))) => match k.as_str() {
                    "id" => match self.next_token()? {
                        Some((_, Token::Int(i))) => id = Some(i),
                        Some((vat, t)) => {
                            return Err(self.error(vat, format!("node id must be an integer, got {t:?}")))
                        }
                        None => return Err(self.error(self.bytes.len(), "unterminated node block")),
                    },
                    "label" => match self.next_token()? {
                        Some((_, Token::Str(s))) => label = Some(s),
                        Some((vat, t)) => {
                            return Err(self.error(vat, format!("node label must be a string, got {t:?}")))
                        }
                        None => return Err(self.error(self.bytes.len(), "unterminated node block")),
                    },
                    _ => self.skip_scalar_value(kat)?,
                },
                Some((tat, t)) => return Err(self.error(tat, format!("unexpected {t:?} in node block"))),
                None => return Err(self.error(self.bytes.len(), "unterminated node block")),
            }
        }
        let id = id.ok_or_else(|| self.error(at, "node block without id"))?;
        Ok((id, label))
    }

    fn parse_edge(&mut self, at: usize) -> Result<(i64, i64, Option<f64>)> {
        let mut source = None;
        let mut target = None;
        let mut transitions = None;
        loop {
            match self.next_token()? {
                Some((_, Token::Close)) => break,
                Some((kat, Token::Key(k))) => match k.as_str() {
                    "source" | "target" => {
                        let value = match self.next_token()? {
                            Some((_, Token::Int(i))) => i,
                            Some((vat, t)) => {
                                return Err(self
                                    .error(vat, format!("edge {k} must be an integer, got {t:?}")))
                            }
                            None => {
                                return Err(self.error(self.bytes.len(), "unterminated edge block"))
                            }
                        };
                        if k == "source" {
                            source = Some(value);
                        } else {
                            target = Some(value);
                        }
                    }
                    "transitions" => match self.next_token()? {
                        Some((_, Token::Int(i))) => transitions = Some(i as f64),
                        Some((_, Token::Float(f))) => transitions = Some(f),
                        Some((vat, t)) => {
                            return Err(self
                                .error(vat, format!("edge transitions must be numeric, got {t:?}")))
                        }
                        None => return Err(self.error(self.bytes.len(), "unterminated edge block")),
                    },
                    _ => self.skip_scalar_value(kat)?,
                },
                Some((tat, t)) => return Err(self.error(tat, format!("unexpected {t:?} in edge block"))),
                None => return Err(self.error(self.bytes.len(), "unterminated edge block")),
            }
        }
        let source = source.ok_or_else(|| self.error(at, "edge block without source"))?;
        let target = target.ok_or_else(|| self.error(at, "edge block without target"))?;
        Ok((source, target, transitions))
    }

    /// Consume the scalar value of an unknown key.
    fn skip_scalar_value(&mut self, key_at: usize) -> Result<()> {
        match self.next_token()? {
            Some((_, Token::Int(_) | Token::Float(_) | Token::Str(_) | Token::Key(_))) => Ok(()),
            Some((at, Token::Open)) => Err(self.error(at, "nested blocks are not supported here")),
            Some((at, Token::Close)) => Err(self.error(at, "key without a value")),
            None => Err(self.error(key_at, "key without a value")),
        }
    }
}
