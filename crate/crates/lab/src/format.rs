//! Text formats.
//!
//! Instance file: first line `n m` (m = 0 for free-form), then `n` lines of
//! `x y`, single-space separated, nothing else. Tour file: one line of `n`
//! space-separated 1-based labels.

use std::fs;
use std::path::Path;

use tsp_core::{Instance, Tour};

use crate::error::LabError;

fn parse_err(line: usize, msg: impl Into<String>) -> LabError {
    LabError::Parse { line, msg: msg.into() }
}

fn fields(line: &str, lineno: usize, expected: usize) -> Result<Vec<&str>, LabError> {
    let parts: Vec<&str> = line.split(' ').collect();
    if parts.len() != expected || parts.iter().any(|p| p.is_empty()) {
        return Err(parse_err(lineno, format!("expected {expected} single-space separated integers, got {line:?}")));
    }
    Ok(parts)
}

fn lines(text: &str) -> Vec<&str> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Vec::new();
    }
    body.split('\n').collect()
}

pub fn parse_instance(text: &str) -> Result<Instance, LabError> {
    let rows = lines(text);
    let header = rows.first().ok_or_else(|| parse_err(1, "missing header"))?;
    let h = fields(header, 1, 2)?;
    let n: usize = h[0].parse().map_err(|_| parse_err(1, format!("bad point count {:?}", h[0])))?;
    let m: u32 = h[1].parse().map_err(|_| parse_err(1, format!("bad grid size {:?}", h[1])))?;
    if rows.len() - 1 != n {
        return Err(parse_err(rows.len(), format!("header announces {n} points, found {} rows", rows.len() - 1)));
    }
    let mut coords = Vec::with_capacity(n);
    for (idx, row) in rows[1..].iter().enumerate() {
        let lineno = idx + 2;
        let f = fields(row, lineno, 2)?;
        let x: i32 = f[0].parse().map_err(|_| parse_err(lineno, format!("coordinate {:?} out of range", f[0])))?;
        let y: i32 = f[1].parse().map_err(|_| parse_err(lineno, format!("coordinate {:?} out of range", f[1])))?;
        coords.push((x, y));
    }
    Ok(Instance::validate(&coords, m)?)
}

pub fn format_instance(inst: &Instance) -> String {
    let mut out = format!("{} {}\n", inst.n(), inst.grid_size());
    for p in inst.points() {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

pub fn read_instance(path: &Path) -> Result<Instance, LabError> {
    let text = fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    parse_instance(&text)
}

pub fn write_instance(inst: &Instance, path: &Path) -> Result<(), LabError> {
    fs::write(path, format_instance(inst)).map_err(|e| LabError::io(path, e))
}

pub fn parse_tour(text: &str) -> Result<Tour, LabError> {
    let rows = lines(text);
    if rows.len() != 1 {
        return Err(parse_err(rows.len().max(1), "tour file must hold exactly one line"));
    }
    let labels = rows[0]
        .split(' ')
        .map(|t| t.parse::<u32>().map_err(|_| parse_err(1, format!("bad label {t:?}"))))
        .collect::<Result<Vec<u32>, _>>()?;
    Ok(Tour::new(labels)?)
}

pub fn format_tour(tour: &Tour) -> String {
    let labels: Vec<String> = tour.as_slice().iter().map(|l| l.to_string()).collect();
    format!("{}\n", labels.join(" "))
}

pub fn read_tour(path: &Path) -> Result<Tour, LabError> {
    let text = fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    parse_tour(&text)
}

pub fn write_tour(tour: &Tour, path: &Path) -> Result<(), LabError> {
    fs::write(path, format_tour(tour)).map_err(|e| LabError::io(path, e))
}
