//! Curve-table CSV emission: one header row, one row per grid point with 17
//! significant digits, no NaN cells. Rows any series could not produce are
//! omitted and their x-ranges recorded as trailing `# trimmed: [a,b]`
//! comment lines.

use gm_order::harness::CurveTable;

pub fn render_csv(table: &CurveTable) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    let mut trimmed: Vec<(f64, f64)> = Vec::new();
    let mut prev_omitted = false;
    for row in &table.rows {
        let x = row[0].expect("x column is always present");
        if row.iter().any(|c| c.is_none()) {
            if prev_omitted {
                trimmed.last_mut().unwrap().1 = x;
            } else {
                trimmed.push((x, x));
            }
            prev_omitted = true;
            continue;
        }
        prev_omitted = false;
        let cells: Vec<String> = row.iter().map(|c| format!("{:.16e}", c.unwrap())).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    for (lo, hi) in trimmed {
        out.push_str(&format!("# trimmed: [{lo:.16e},{hi:.16e}]\n"));
    }
    out
}
