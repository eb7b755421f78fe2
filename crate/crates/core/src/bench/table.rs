//! Metrics table in CSV form.

use serde::{Deserialize, Serialize};

use super::MetricsRow;

pub const CSV_HEADER: &str =
    "label,status,path_cost,wall_time_ms,nodes_stored,expansions,gcost_writes";

#[derive(Serialize, Deserialize)]
struct Record {
    label: String,
    status: String,
    path_cost: Option<f64>,
    wall_time_ms: Option<f64>,
    nodes_stored: Option<u64>,
    expansions: Option<u64>,
    gcost_writes: Option<u64>,
}

/// Header plus one `\n`-terminated line per row. Floats use the shortest
/// representation that parses back to the same value; missing values are
/// empty fields.
pub fn write_csv(rows: &[MetricsRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(Record {
            label: r.label.clone(),
            status: r.status.to_string(),
            path_cost: r.path_cost,
            wall_time_ms: r.wall_time_ms,
            nodes_stored: r.nodes_stored,
            expansions: r.expansions,
            gcost_writes: r.gcost_writes,
        })
        .expect("writing to memory cannot fail");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    format!("{CSV_HEADER}\n{body}")
}

/// Inverse of [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<MetricsRow>, String> {
    let mut rd = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = rd.headers().map_err(|e| e.to_string())?;
    if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(format!("unexpected header: {header:?}"));
    }
    rd.deserialize::<Record>()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            Ok(MetricsRow {
                label: rec.label,
                status: rec.status.parse()?,
                path_cost: rec.path_cost,
                wall_time_ms: rec.wall_time_ms,
                nodes_stored: rec.nodes_stored,
                expansions: rec.expansions,
                gcost_writes: rec.gcost_writes,
            })
        })
        .collect()
}
