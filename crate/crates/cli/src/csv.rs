//! Deterministic CSV emission: `\n` line endings, a single `#` comment
//! line carrying the full parameter set and tool version, and every float
//! printed with 12 significant digits so golden-file comparisons are
//! byte-stable.

/// One CSV cell.
#[derive(Debug, Clone)]
pub enum Field {
    F(f64),
    U(u64),
}

/// 12-significant-digit scientific notation; `-0.0` normalizes to `0`.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn fmt_field(f: &Field) -> String {
    match f {
        Field::F(x) => fmt_f64(*x),
        Field::U(n) => n.to_string(),
    }
}

/// Assembles the full CSV body.
pub fn render(comment_pairs: &[(String, String)], header: &[&str], rows: &[Vec<Field>]) -> String {
    let mut out = String::new();
    out.push('#');
    for (k, v) in comment_pairs {
        out.push(' ');
        out.push_str(k);
        out.push('=');
        out.push_str(v);
    }
    out.push(' ');
    out.push_str("version=");
    out.push_str(env!("CARGO_PKG_VERSION"));
    out.push('\n');
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let cells: Vec<String> = row.iter().map(fmt_field).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
