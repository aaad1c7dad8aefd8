//! Column-aligned row tables for human reading.

use causal_teams::{Assignment, CausalTeam, GeneralizedCausalTeam, Signature};

use crate::workspace::Workspace;

/// Lays out a header row plus data rows with aligned columns.
fn layout(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let fmt_row = |cells: &[String]| -> String {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < cols {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        line.trim_end().to_string()
    };
    let mut out = fmt_row(&header);
    out.push('\n');
    let dash: usize = widths.iter().sum::<usize>() + 2 * (cols - 1);
    out.push_str(&"-".repeat(dash));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(&row));
        out.push('\n');
    }
    out
}

fn value_cells(row: &Assignment, sig: &Signature) -> Vec<String> {
    (0..sig.var_count())
        .map(|v| sig.value_name(v, row.get(v)).to_string())
        .collect()
}

/// The row table of a causal team.
pub fn team_table(team: &CausalTeam) -> String {
    let sig = team.signature();
    let header = (0..sig.var_count())
        .map(|v| sig.var_name(v).to_string())
        .collect();
    let rows = team.rows().iter().map(|r| value_cells(r, sig)).collect();
    layout(header, rows)
}

/// The member table of a generalized causal team; the trailing column names
/// each member's component, looked up in `ws` when possible.
pub fn gct_table(team: &GeneralizedCausalTeam, ws: Option<&Workspace>) -> String {
    let sig = team.signature();
    let mut header: Vec<String> = (0..sig.var_count())
        .map(|v| sig.var_name(v).to_string())
        .collect();
    header.push("component".to_string());
    let rows = team
        .members()
        .iter()
        .map(|(row, fc)| {
            let mut cells = value_cells(row, sig);
            let name = ws
                .and_then(|w| w.component_name(fc))
                .unwrap_or("?")
                .to_string();
            cells.push(name);
            cells
        })
        .collect();
    layout(header, rows)
}
