//! Plain-text grid files.
//!
//! ```text
//! # dim=3
//! # origin=0,0,0
//! AB
//! ..
//!
//! BB
//! ..
//! ```
//!
//! Lines starting with `#` are comments. Two comments are read as directives:
//! `dim=N` fixes the dimension (otherwise a single layer means 2D and several
//! layers mean 3D) and `origin=x,y,z` offsets the first cell of the first row
//! of the first layer. Layers are separated by blank lines, rows run in
//! increasing y and layers in increasing z. `.` is empty, `A`/`B` mark cells.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{Configuration, GeometryError};

#[derive(Debug, Error)]
pub enum GridFileError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("invalid configuration: {0}")]
    Invalid(#[from] GeometryError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown cell character {ch:?} at column {column}")]
    UnknownCharacter { ch: char, column: usize },
    #[error("row has width {found}, expected {expected}")]
    RaggedRow { found: usize, expected: usize },
    #[error("layer has {found} rows, expected {expected}")]
    RaggedLayer { found: usize, expected: usize },
    #[error("malformed directive: {0}")]
    BadDirective(String),
    #[error("{layers} layers in a {dim}D file")]
    LayerCount { layers: usize, dim: usize },
    #[error("file contains no cells")]
    NoLayers,
}

fn parse_err(line: usize, kind: ParseErrorKind) -> GridFileError {
    GridFileError::Parse { line, kind }
}

pub fn parse_grid(text: &str) -> Result<Configuration, GridFileError> {
    let mut dim: Option<usize> = None;
    let mut origin = [0i32; 3];
    // (first line number, rows)
    let mut layers: Vec<(usize, Vec<(usize, Vec<u8>)>)> = Vec::new();
    let mut current: Option<(usize, Vec<(usize, Vec<u8>)>)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.trim().split_once('=') {
                match key.trim() {
                    "dim" => {
                        let d = value.trim().parse::<usize>().ok().filter(|d| (2..=3).contains(d));
                        dim = Some(d.ok_or_else(|| parse_err(line_no, ParseErrorKind::BadDirective(line.into())))?);
                    }
                    "origin" => {
                        let parts: Vec<_> = value.split(',').map(|s| s.trim().parse::<i32>()).collect();
                        if parts.len() != 3 || parts.iter().any(|p| p.is_err()) {
                            return Err(parse_err(line_no, ParseErrorKind::BadDirective(line.into())));
                        }
                        for (o, p) in origin.iter_mut().zip(parts) {
                            *o = p.expect("checked above");
                        }
                    }
                    _ => {}
                }
            }
            continue;
        }
        if line.is_empty() {
            if let Some(layer) = current.take() {
                layers.push(layer);
            }
            continue;
        }
        let mut row = Vec::with_capacity(line.len());
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '.' | 'A' | 'B' => row.push(ch as u8),
                _ => return Err(parse_err(line_no, ParseErrorKind::UnknownCharacter { ch, column: col + 1 })),
            }
        }
        current.get_or_insert_with(|| (line_no, Vec::new())).1.push((line_no, row));
    }
    if let Some(layer) = current.take() {
        layers.push(layer);
    }
    if layers.is_empty() {
        return Err(parse_err(text.lines().count().max(1), ParseErrorKind::NoLayers));
    }

    let width = layers[0].1[0].1.len();
    let height = layers[0].1.len();
    for (first_line, rows) in &layers {
        if rows.len() != height {
            return Err(parse_err(*first_line, ParseErrorKind::RaggedLayer { found: rows.len(), expected: height }));
        }
        for (line_no, row) in rows {
            if row.len() != width {
                return Err(parse_err(*line_no, ParseErrorKind::RaggedRow { found: row.len(), expected: width }));
            }
        }
    }
    let dim = dim.unwrap_or(if layers.len() == 1 { 2 } else { 3 });
    if dim == 2 && layers.len() != 1 {
        return Err(parse_err(layers[1].0, ParseErrorKind::LayerCount { layers: layers.len(), dim }));
    }
    if dim == 2 {
        origin[2] = 0;
    }

    let mut a = Vec::new();
    let mut b = Vec::new();
    for (z, (_, rows)) in layers.iter().enumerate() {
        for (y, (_, row)) in rows.iter().enumerate() {
            for (x, &ch) in row.iter().enumerate() {
                let cell = [origin[0] + x as i32, origin[1] + y as i32, origin[2] + z as i32];
                match ch {
                    b'A' => a.push(cell),
                    b'B' => b.push(cell),
                    _ => {}
                }
            }
        }
    }
    Ok(Configuration::from_cells(dim, &a, &b)?)
}

pub fn format_grid(cfg: &Configuration) -> String {
    let bounds = cfg.bounds();
    let dim = cfg.dim();
    let mut out = String::new();
    let _ = writeln!(out, "# dim={dim}");
    let _ = writeln!(out, "# origin={},{},{}", bounds.min[0], bounds.min[1], bounds.min[2]);
    for z in bounds.min[2]..=bounds.max[2] {
        if z > bounds.min[2] {
            out.push('\n');
        }
        for y in bounds.min[1]..=bounds.max[1] {
            for x in bounds.min[0]..=bounds.max[0] {
                let c = [x, y, z];
                out.push(if cfg.a().contains(c) {
                    'A'
                } else if cfg.b().contains(c) {
                    'B'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
    }
    out
}

pub fn read_grid(path: &Path) -> Result<Configuration, GridFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| GridFileError::Io { path: path.display().to_string(), source })?;
    parse_grid(&text)
}

pub fn write_grid(cfg: &Configuration, path: &Path) -> Result<(), GridFileError> {
    std::fs::write(path, format_grid(cfg)).map_err(|source| GridFileError::Io { path: path.display().to_string(), source })
}
