//! Arrangement files: JSON with Gaussian rationals written as strings.
//!
//! ```json
//! {"space": "affine2", "lines": [{"a": "0", "b": "1", "c": "-1/2+i"}]}
//! {"space": "projective", "m": 1, "hyperplanes": [["1", "0", "0", "i"]]}
//! ```
//!
//! Semantic checks run inside deserialization so every diagnostic carries
//! the line and column where the parser stood.

use std::fmt;

use arrpi1_core::exactnum::GaussianRational;
use arrpi1_core::geometry::{AffineLine, Arrangement};
use arrpi1_core::projective::{ProjectiveArrangement, ProjectiveHyperplane};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    JsonSyntax,
    Schema,
    MalformedGq,
    ZeroCoefficients,
    DuplicateLine,
    DimensionMismatch,
    EmptyArrangement,
}

impl ErrorCode {
    const TAGGED: [ErrorCode; 5] =
        [Self::MalformedGq, Self::ZeroCoefficients, Self::DuplicateLine, Self::DimensionMismatch, Self::EmptyArrangement];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::JsonSyntax => "JSON_SYNTAX",
            Self::Schema => "SCHEMA",
            Self::MalformedGq => "MALFORMED_GQ",
            Self::ZeroCoefficients => "ZERO_COEFFICIENTS",
            Self::DuplicateLine => "DUPLICATE_LINE",
            Self::DimensionMismatch => "DIMENSION_MISMATCH",
            Self::EmptyArrangement => "EMPTY_ARRANGEMENT",
        }
    }

    fn tag<E: de::Error>(self, msg: impl fmt::Display) -> E {
        E::custom(format_args!("[{}] {msg}", self.as_str()))
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{code} at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub code: ErrorCode,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        let text = e.to_string();
        // serde_json appends " at line L column C"; keep the message bare.
        let bare = text.rsplit_once(" at line ").map_or(text.as_str(), |(m, _)| m);
        let tagged = ErrorCode::TAGGED.iter().find_map(|&c| {
            let prefix = format!("[{}] ", c.as_str());
            bare.strip_prefix(&prefix).map(|rest| (c, rest.to_string()))
        });
        let (code, message) = match tagged {
            Some(t) => t,
            None if e.is_data() => (ErrorCode::Schema, bare.to_string()),
            None => (ErrorCode::JsonSyntax, bare.to_string()),
        };
        Self { code, message, line, column }
    }
}

struct Gq(GaussianRational);

impl<'de> Deserialize<'de> for Gq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Gq).map_err(|e| ErrorCode::MalformedGq.tag(e))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    a: Gq,
    b: Gq,
    c: Gq,
}

struct Line(AffineLine);

impl<'de> Deserialize<'de> for Line {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let RawLine { a, b, c } = RawLine::deserialize(d)?;
        AffineLine::new(a.0, b.0, c.0)
            .map(Line)
            .map_err(|_| ErrorCode::ZeroCoefficients.tag("line has a = b = 0"))
    }
}

struct Lines(Arrangement);

impl<'de> Deserialize<'de> for Lines {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let lines: Vec<Line> = Vec::deserialize(d)?;
        let lines: Vec<AffineLine> = lines.into_iter().map(|l| l.0).collect();
        if lines.is_empty() {
            return Err(ErrorCode::EmptyArrangement.tag("no lines"));
        }
        for i in 0..lines.len() {
            if let Some(j) = (i + 1..lines.len()).find(|&j| lines[i] == lines[j]) {
                return Err(ErrorCode::DuplicateLine.tag(format_args!("lines {} and {} are the same line", i + 1, j + 1)));
            }
        }
        Arrangement::new(lines).map(Lines).map_err(de::Error::custom)
    }
}

struct Hyperplane(ProjectiveHyperplane);

impl<'de> Deserialize<'de> for Hyperplane {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs: Vec<Gq> = Vec::deserialize(d)?;
        ProjectiveHyperplane::new(coeffs.into_iter().map(|c| c.0).collect())
            .map(Hyperplane)
            .map_err(|_| ErrorCode::ZeroCoefficients.tag("hyperplane has all coefficients zero"))
    }
}

#[derive(Deserialize)]
enum Space {
    #[serde(rename = "affine2")]
    Affine,
    #[serde(rename = "projective")]
    Projective,
}

// A flat record rather than an internally tagged enum: serde buffers tagged
// content and would lose the line and column of errors inside it.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    space: Space,
    lines: Option<Lines>,
    m: Option<usize>,
    hyperplanes: Option<Vec<Hyperplane>>,
}

/// A validated arrangement file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrangementFile {
    Affine(Arrangement),
    Projective(ProjectiveArrangement),
}

/// Line and column of the first occurrence of `key`, for diagnostics that
/// concern a whole list rather than one token.
fn locate(text: &str, key: &str) -> (usize, usize) {
    let offset = text.find(key).unwrap_or(0);
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}

pub fn parse_arrangement(text: &str) -> Result<ArrangementFile, ParseError> {
    let raw: RawFile = serde_json::from_str(text)?;
    let schema = |message: &str| {
        let (line, column) = locate(text, "\"space\"");
        ParseError { code: ErrorCode::Schema, message: message.to_string(), line, column }
    };
    match raw {
        RawFile { space: Space::Affine, lines: Some(lines), m: None, hyperplanes: None } => Ok(ArrangementFile::Affine(lines.0)),
        RawFile { space: Space::Affine, .. } => Err(schema("an affine2 file has exactly the keys \"space\" and \"lines\"")),
        RawFile { space: Space::Projective, lines: None, m: Some(m), hyperplanes: Some(hyperplanes) } => {
            let (line, column) = locate(text, "\"hyperplanes\"");
            let hs: Vec<ProjectiveHyperplane> = hyperplanes.into_iter().map(|h| h.0).collect();
            use arrpi1_core::projective::ProjectiveError as P;
            ProjectiveArrangement::new(m, hs).map(ArrangementFile::Projective).map_err(|e| {
                let code = match e {
                    P::DimensionMismatch { .. } => ErrorCode::DimensionMismatch,
                    P::Duplicate(..) => ErrorCode::DuplicateLine,
                    P::Empty => ErrorCode::EmptyArrangement,
                    _ => ErrorCode::Schema,
                };
                let message = match e {
                    P::Duplicate(i, j) => format!("hyperplanes {} and {} coincide", i + 1, j + 1),
                    P::DimensionMismatch { index, expected, got } => {
                        format!("hyperplane {} has {got} coefficients, expected m + 3 = {expected}", index + 1)
                    }
                    other => other.to_string(),
                };
                ParseError { code, message, line, column }
            })
        }
        RawFile { space: Space::Projective, .. } => {
            Err(schema("a projective file has exactly the keys \"space\", \"m\" and \"hyperplanes\""))
        }
    }
}

#[derive(Serialize)]
struct OutLine {
    a: String,
    b: String,
    c: String,
}

#[derive(Serialize)]
#[serde(tag = "space")]
enum OutFile {
    #[serde(rename = "affine2")]
    Affine { lines: Vec<OutLine> },
    #[serde(rename = "projective")]
    Projective { m: usize, hyperplanes: Vec<Vec<String>> },
}

impl ArrangementFile {
    /// Canonical JSON text; parsing it gives back an equal value.
    pub fn to_json(&self) -> String {
        let out = match self {
            Self::Affine(arr) => OutFile::Affine {
                lines: arr
                    .lines()
                    .iter()
                    .map(|l| OutLine { a: l.a().to_string(), b: l.b().to_string(), c: l.c().to_string() })
                    .collect(),
            },
            Self::Projective(arr) => OutFile::Projective {
                m: arr.m(),
                hyperplanes: arr.hyperplanes().iter().map(|h| h.coeffs().iter().map(ToString::to_string).collect()).collect(),
            },
        };
        serde_json::to_string_pretty(&out).expect("serializable")
    }
}
