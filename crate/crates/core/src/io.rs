//! Canonical plain-text and JSON encodings of complexes.
//!
//! Plain: an optional `# name: <name>` header, then one facet per line with
//! space-separated vertices. Lines starting with `#` are comments. Facets and
//! the vertices inside them are written in sorted order, so equal complexes
//! encode to equal bytes.
//!
//! JSON: `{"name", "vertices", "facets", "coloring"?, "involution"?}` with all
//! arrays sorted the same way.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::maps::{Coloring, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Plain,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Plain => "txt",
            Format::Json => "json",
        }
    }

    /// Guesses the format from the first non-blank character.
    pub fn sniff(text: &str) -> Format {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Plain
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" | "txt" => Ok(Format::Plain),
            "json" => Ok(Format::Json),
            other => Err(Error::MalformedInput(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Plain => "plain",
            Format::Json => "json",
        })
    }
}

/// A complex with its name and optional coloring and involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDocument {
    pub name: String,
    pub complex: SimplicialComplex,
    pub coloring: Option<Coloring>,
    pub involution: Option<Permutation>,
}

#[derive(Serialize, Deserialize)]
struct JsonDocument {
    #[serde(default)]
    name: String,
    #[serde(default)]
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coloring: Option<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    involution: Option<BTreeMap<String, String>>,
}

impl ComplexDocument {
    pub fn new(name: impl Into<String>, complex: SimplicialComplex) -> Self {
        ComplexDocument {
            name: name.into(),
            complex,
            coloring: None,
            involution: None,
        }
    }

    pub fn with_coloring(mut self, coloring: Coloring) -> Self {
        self.coloring = Some(coloring);
        self
    }

    pub fn with_involution(mut self, involution: Permutation) -> Self {
        self.involution = Some(involution);
        self
    }

    /// Whether encoding as `format` loses the coloring or involution.
    pub fn loses_metadata(&self, format: Format) -> bool {
        format == Format::Plain && (self.coloring.is_some() || self.involution.is_some())
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        if !self.name.is_empty() {
            out.push_str(&format!("# name: {}\n", self.name));
        }
        for f in self.complex.facets() {
            let labels: Vec<&str> = f.iter().map(VertexId::as_str).collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = JsonDocument {
            name: self.name.clone(),
            vertices: self.complex.vertices().iter().map(|v| v.to_string()).collect(),
            facets: self
                .complex
                .facets()
                .iter()
                .map(|f| f.iter().map(|v| v.to_string()).collect())
                .collect(),
            coloring: self
                .coloring
                .as_ref()
                .map(|c| c.assignment().iter().map(|(v, &k)| (v.to_string(), k)).collect()),
            involution: self.involution.as_ref().map(|p| {
                p.mapping()
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect()
            }),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.to_plain(),
            Format::Json => self.to_json(),
        }
    }

    /// SHA-256 of the canonical encoding, as lowercase hex.
    pub fn digest(&self, format: Format) -> String {
        sha256_hex(self.render(format).as_bytes())
    }

    pub fn parse_plain(text: &str) -> Result<Self> {
        let mut name = String::new();
        let mut facets = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(value) = comment.trim_start().strip_prefix("name:") {
                    if facets.is_empty() && name.is_empty() {
                        name = value.trim().to_string();
                    }
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let face = Face::new(line.split_whitespace()).map_err(|e| Error::Parse {
                line: n + 1,
                message: e.to_string(),
            })?;
            facets.push(face);
        }
        if facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(ComplexDocument::new(name, SimplicialComplex::from_facets(facets)?))
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: JsonDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        if doc.facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let facets = doc
            .facets
            .iter()
            .map(|f| Face::new(f.iter().map(String::as_str)))
            .collect::<Result<Vec<_>>>()?;
        let complex = SimplicialComplex::from_facets(facets)?;
        if !doc.vertices.is_empty() {
            let listed: Vec<VertexId> = {
                let mut v: Vec<VertexId> = doc.vertices.iter().map(VertexId::new).collect();
                v.sort();
                v.dedup();
                v
            };
            if listed != complex.vertices() {
                return Err(Error::MalformedInput(
                    "\"vertices\" does not match the vertices of the facets".into(),
                ));
            }
        }
        let coloring = doc.coloring.map(Coloring::from_pairs);
        let involution = doc
            .involution
            .map(|m| Permutation::from_pairs(m.into_iter().map(|(a, b)| (VertexId::new(a), VertexId::new(b)))))
            .transpose()?;
        Ok(ComplexDocument {
            name: doc.name,
            complex,
            coloring,
            involution,
        })
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        match format {
            Format::Plain => Self::parse_plain(text),
            Format::Json => Self::parse_json(text),
        }
    }

    /// Reads a file, choosing the format from its contents.
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        Self::parse(&text, Format::sniff(&text))
    }

    /// Writes the canonical encoding and returns its digest.
    pub fn write(&self, path: impl AsRef<Path>, format: Format) -> Result<String> {
        let path = path.as_ref();
        let text = self.render(format);
        std::fs::write(path, &text).map_err(|e| io_error(path, e))?;
        Ok(sha256_hex(text.as_bytes()))
    }
}

pub(crate) fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosspoly::cross_polytope_boundary;

    fn octahedron() -> ComplexDocument {
        let p = cross_polytope_boundary(3).unwrap();
        ComplexDocument::new("octahedron", p.complex)
            .with_coloring(p.coloring)
            .with_involution(p.antipode)
    }

    #[test]
    fn plain_is_sorted_and_round_trips() {
        let doc = ComplexDocument::parse_plain("# a comment\nb a\n\nc b\n# name: ignored\na b\n").unwrap();
        assert_eq!(doc.to_plain(), "a b\nb c\n");
        let named = ComplexDocument::parse_plain("# name: path\nb a\n").unwrap();
        assert_eq!(named.name, "path");
        assert_eq!(ComplexDocument::parse_plain(&named.to_plain()).unwrap(), named);
    }

    #[test]
    fn plain_errors_carry_line_numbers() {
        let err = ComplexDocument::parse_plain("a b\n# c\nx y x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert_eq!(
            ComplexDocument::parse_plain("# only\n\n#x\n").unwrap_err(),
            Error::EmptyComplex
        );
    }

    #[test]
    fn json_keeps_metadata() {
        let doc = octahedron();
        let text = doc.to_json();
        let back = ComplexDocument::parse_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"involution\""));
    }

    #[test]
    fn json_plain_json_drops_only_metadata() {
        let doc = octahedron();
        assert!(doc.loses_metadata(Format::Plain));
        let plain = ComplexDocument::parse_plain(&doc.to_plain()).unwrap();
        let stripped = ComplexDocument {
            coloring: None,
            involution: None,
            ..doc
        };
        assert_eq!(plain.digest(Format::Json), stripped.digest(Format::Json));
    }

    #[test]
    fn json_rejects_inconsistent_input() {
        let bad = r#"{"name":"x","vertices":["a","z"],"facets":[["a","b"]]}"#;
        assert!(matches!(
            ComplexDocument::parse_json(bad),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            ComplexDocument::parse_json("{\n\"facets\": [[1]]}"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(
            ComplexDocument::parse_json(r#"{"facets":[]}"#).unwrap_err(),
            Error::EmptyComplex
        );
    }

    #[test]
    fn sniffing_and_digests() {
        let doc = octahedron();
        assert_eq!(Format::sniff(&doc.to_json()), Format::Json);
        assert_eq!(Format::sniff(&doc.to_plain()), Format::Plain);
        assert_eq!(doc.digest(Format::Plain), octahedron().digest(Format::Plain));
        assert_eq!(sha256_hex(b"").len(), 64);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("sphereprod-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("oct.json");
        let digest = octahedron().write(&path, Format::Json).unwrap();
        assert_eq!(digest, octahedron().digest(Format::Json));
        assert_eq!(ComplexDocument::read(&path).unwrap(), octahedron());
        assert!(matches!(
            ComplexDocument::read(dir.join("missing")),
            Err(Error::Io { .. })
        ));
        std::fs::remove_dir_all(dir).unwrap();
    }
}
