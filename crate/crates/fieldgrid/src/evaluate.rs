//! Deterministic parallel grid evaluation and CSV/JSON export.
//!
//! Rows are computed independently per grid point and assembled in
//! lexicographic grid order, so the output bytes do not depend on the
//! worker count. Numbers serialize with 17 significant digits.

use rayon::prelude::*;

use hgbeam::kgmodes::{beam_radius, envelope, gouy_relativistic, RelativeEvent};
use hgbeam::kinematics::make_kinematics;

use crate::config::{ConfigError, OutputFormat, RunConfig};
use crate::grid::{point_at, total_points};
use crate::report::fmt_real;

pub const CSV_HEADER: &str = "xi1,xi2,xi3,tau,s,re,im,abs,phase,width,gouy";

/// Render the whole eval output (CSV or JSON) as a byte-stable string.
pub fn render(config: &RunConfig, threads: usize) -> Result<String, ConfigError> {
    let grid = config
        .grid
        .as_ref()
        .ok_or_else(|| ConfigError::new("eval requires a [grid] section"))?;
    let (kin, geom) = make_kinematics(&config.beam)?;
    let total = total_points(grid);

    let row_values = |flat: usize| -> [f64; 11] {
        let p = point_at(grid, flat);
        let rel = RelativeEvent::new(p.xi1, p.xi2, p.xi3, p.tau);
        let s = rel.s();
        let value = envelope(&rel, config.mode, &kin, &geom, config.convention);
        [
            p.xi1,
            p.xi2,
            p.xi3,
            p.tau,
            s,
            value.re,
            value.im,
            value.norm(),
            value.arg(),
            beam_radius(s, &geom),
            gouy_relativistic(s, config.mode, &geom),
        ]
    };

    let format_row = |flat: usize| -> String {
        let vals = row_values(flat);
        let mut cells = vals.iter().map(|v| fmt_real(*v));
        let mut line = cells.next().unwrap_or_default();
        for cell in cells {
            line.push(',');
            line.push_str(&cell);
        }
        line
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ConfigError::new(format!("cannot build worker pool: {e}")))?;
    let rows: Vec<String> = pool.install(|| (0..total).into_par_iter().map(format_row).collect());

    let mut out = String::new();
    match config.format {
        OutputFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in &rows {
                out.push_str(row);
                out.push('\n');
            }
        }
        OutputFormat::Json => {
            out.push_str("{\"columns\":[");
            for (i, name) in CSV_HEADER.split(',').enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('"');
                out.push_str(name);
                out.push('"');
            }
            out.push_str("],\"rows\":[");
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('[');
                out.push_str(row);
                out.push(']');
            }
            out.push_str("]}\n");
        }
    }
    Ok(out)
}
