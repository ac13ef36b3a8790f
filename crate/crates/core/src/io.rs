//! Field serialization: node-major CSV and legacy-ASCII VTK structured grids.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! write-read cycle reproduces every value bit for bit and identical inputs
//! produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::field::ScalarField;
use crate::grid::Grid;

/// A named scalar column for export.
pub struct Column<'a> {
    pub name: &'a str,
    pub data: &'a [f64],
}

/// Render fields as CSV text with header `u,v,<names...>`, node-major
/// (u fastest).
pub fn fields_to_csv(grid: &Grid, columns: &[Column]) -> String {
    let mut s = String::new();
    s.push_str("u,v");
    for c in columns {
        s.push(',');
        s.push_str(c.name);
    }
    s.push('\n');
    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            let idx = grid.index(i, j);
            let _ = write!(s, "{},{}", grid.u_coord(i), grid.v_coord(j));
            for c in columns {
                let _ = write!(s, ",{}", c.data[idx]);
            }
            s.push('\n');
        }
    }
    s
}

/// Write fields as CSV to a path.
pub fn write_csv(path: &Path, grid: &Grid, columns: &[Column]) -> io::Result<()> {
    fs::write(path, fields_to_csv(grid, columns))
}

/// Parse a CSV produced by [`fields_to_csv`]: returns column names (beyond
/// u, v) and per-column data in node-major order.
pub fn read_csv(text: &str) -> io::Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidData, "empty csv"))?;
    let names: Vec<String> = header.split(',').skip(2).map(|s| s.to_string()).collect();
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for line in lines {
        if line.is_empty() {
            continue;
        }
        for (k, tok) in line.split(',').skip(2).enumerate() {
            let v: f64 = tok
                .parse()
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("{e}: {tok}")))?;
            cols[k].push(v);
        }
    }
    Ok((names, cols))
}

/// Render a legacy-ASCII VTK structured grid with the embedding positions
/// (or parameter-plane coordinates when `positions` is None) and one
/// POINT_DATA scalar per column.
pub fn fields_to_vtk(grid: &Grid, positions: Option<&[[f64; 3]]>, columns: &[Column]) -> String {
    let n = grid.node_count();
    let mut s = String::new();
    s.push_str("# vtk DataFile Version 3.0\n");
    s.push_str("disclin fields\n");
    s.push_str("ASCII\n");
    s.push_str("DATASET STRUCTURED_GRID\n");
    let _ = writeln!(s, "DIMENSIONS {} {} 1", grid.n_u, grid.n_v);
    let _ = writeln!(s, "POINTS {} double", n);
    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            match positions {
                Some(p) => {
                    let q = p[grid.index(i, j)];
                    let _ = writeln!(s, "{} {} {}", q[0], q[1], q[2]);
                }
                None => {
                    let _ = writeln!(s, "{} {} 0", grid.u_coord(i), grid.v_coord(j));
                }
            }
        }
    }
    let _ = writeln!(s, "POINT_DATA {}", n);
    for c in columns {
        let _ = writeln!(s, "SCALARS {} double 1", c.name);
        s.push_str("LOOKUP_TABLE default\n");
        for j in 0..grid.n_v {
            for i in 0..grid.n_u {
                let _ = writeln!(s, "{}", c.data[grid.index(i, j)]);
            }
        }
    }
    s
}

/// Write a VTK file.
pub fn write_vtk(
    path: &Path,
    grid: &Grid,
    positions: Option<&[[f64; 3]]>,
    columns: &[Column],
) -> io::Result<()> {
    fs::write(path, fields_to_vtk(grid, positions, columns))
}

/// Convenience: single scalar field to CSV.
pub fn scalar_to_csv(f: &ScalarField, name: &str) -> String {
    fields_to_csv(
        &f.grid,
        &[Column {
            name,
            data: &f.data,
        }],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    #[test]
    fn csv_roundtrip_exact() {
        let grid = Grid::open_patch(4, 3, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let data: Vec<f64> = (0..grid.node_count())
            .map(|k| (k as f64 * 0.7311).sin() / 3.0)
            .collect();
        let text = fields_to_csv(
            &grid,
            &[Column {
                name: "phi",
                data: &data,
            }],
        );
        let (names, cols) = read_csv(&text).unwrap();
        assert_eq!(names, vec!["phi".to_string()]);
        assert_eq!(cols[0], data);
    }
}
