use serde_json::{Map, Value};

pub const FRAME_COLUMNS: [&str; 12] = [
    "s", "gx", "gy", "gz", "tx", "ty", "tz", "dx", "dy", "dz", "kappa_g", "kappa_g_prime",
];

pub const GENERATE_COLUMNS: [&str; 8] = [
    "s",
    "s_star",
    "bx",
    "by",
    "bz",
    "speed_ratio",
    "kappa_beta_definitional",
    "kappa_beta_paper",
];

/// Header plus one line per row; LF endings, shortest round-trip decimals.
pub fn csv_table<const N: usize>(columns: &[&str; N], rows: &[[f64; N]]) -> String {
    let mut out = columns.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Rows as JSON objects keyed by column name, in column order.
pub fn records<const N: usize>(columns: &[&str; N], rows: &[[f64; N]]) -> Vec<Value> {
    rows.iter()
        .map(|row| {
            let mut m = Map::new();
            for (name, v) in columns.iter().zip(row) {
                m.insert((*name).to_string(), Value::from(*v));
            }
            Value::Object(m)
        })
        .collect()
}
