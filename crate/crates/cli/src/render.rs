use btrack_core::calculus::Report;
use btrack_core::{Classification, Tag};

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < row.len() {
                line.push_str(&" ".repeat(widths[c] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Verdict line, a key/value block, then the probe table with the union
/// of probe fields as columns.
pub fn report(r: &Report) -> String {
    let mut out = format!("{}\n", r.verdict);
    let kv: Vec<Vec<String>> = r.values.iter().map(|(k, v)| vec![k.clone(), v.clone()]).collect();
    out.push_str(&table(&kv));
    if !r.probes.is_empty() {
        let mut cols: Vec<String> = Vec::new();
        for p in &r.probes {
            for k in p.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
        let mut rows = vec![cols.clone()];
        for p in &r.probes {
            rows.push(cols.iter().map(|c| p.get(c).cloned().unwrap_or_else(|| "-".into())).collect());
        }
        out.push('\n');
        out.push_str(&table(&rows));
    }
    out
}

pub fn class(c: &Classification) -> String {
    match c.tag {
        Tag::Zero => "Zero".into(),
        tag => format!("{tag:?} ({})", c.sign.word()),
    }
}
