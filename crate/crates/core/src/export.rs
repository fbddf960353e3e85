//! Plot-ready CSV of run records and JSON of ensemble statistics.

use std::path::Path;

use crate::ensemble::{Algorithm, EnsembleStats, RunRecord};
use crate::error::{Error, Result};

pub const RECORD_COLUMNS: [&str; 7] = ["n", "algo", "seed", "instance", "swaps", "ratio", "wall_ms"];

pub fn records_to_csv(records: &[RunRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(RECORD_COLUMNS).map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.n.to_string(),
            r.algorithm.to_string(),
            r.seed.to_string(),
            r.instance.to_string(),
            r.swaps.to_string(),
            r.ratio().to_string(),
            r.wall_ms.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn records_from_csv(text: &str) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if headers.iter().ne(RECORD_COLUMNS) {
        return Err(Error::Parse(format!("unexpected CSV header {headers:?}")));
    }
    let mut out = Vec::new();
    for (line, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let field = |k: usize| row.get(k).unwrap_or_default();
        let bad = |k: usize| Error::Parse(format!("row {}: bad {} {:?}", line + 1, RECORD_COLUMNS[k], field(k)));
        let record = RunRecord {
            n: field(0).parse().map_err(|_| bad(0))?,
            algorithm: field(1).parse::<Algorithm>().map_err(|_| bad(1))?,
            seed: field(2).parse().map_err(|_| bad(2))?,
            instance: field(3).parse().map_err(|_| bad(3))?,
            swaps: field(4).parse().map_err(|_| bad(4))?,
            wall_ms: field(6).parse().map_err(|_| bad(6))?,
        };
        let ratio: f64 = field(5).parse().map_err(|_| bad(5))?;
        if ratio != record.ratio() {
            return Err(Error::Parse(format!(
                "row {}: ratio {ratio} does not equal swaps/n",
                line + 1
            )));
        }
        out.push(record);
    }
    Ok(out)
}

pub fn write_records_csv(path: impl AsRef<Path>, records: &[RunRecord]) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, records_to_csv(records)?).map_err(|e| Error::io(path, e))
}

pub fn read_records_csv(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    let path = path.as_ref();
    records_from_csv(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

/// One JSON object per (n, algorithm) group, as an array.
pub fn write_stats_json(path: impl AsRef<Path>, stats: &[EnsembleStats]) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(stats).expect("stats serialise");
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

pub fn read_stats_json(path: impl AsRef<Path>) -> Result<Vec<EnsembleStats>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> RunRecord {
        RunRecord {
            n: 7,
            algorithm: Algorithm::MfAoa,
            seed: u64::MAX,
            instance: 3,
            swaps: 2,
            wall_ms: 1.25,
        }
    }

    #[test]
    fn empty_list_is_header_only() {
        assert_eq!(
            records_to_csv(&[]).unwrap(),
            "n,algo,seed,instance,swaps,ratio,wall_ms\n"
        );
        assert!(records_from_csv(&records_to_csv(&[]).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn single_record_round_trip() {
        let text = records_to_csv(&[record()]).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(records_from_csv(&text).unwrap(), vec![record()]);
    }

    #[test]
    fn inconsistent_ratio_is_rejected() {
        let text = "n,algo,seed,instance,swaps,ratio,wall_ms\n7,mfaoa,1,0,2,0.5,0\n";
        assert!(records_from_csv(text).is_err());
        assert!(records_from_csv("a,b\n1,2\n").is_err());
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = write_records_csv("/nonexistent-dir/x.csv", &[]).unwrap_err();
        assert_eq!(err.kind(), "io");
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }

    #[test]
    fn stats_json_fields() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("stats.json");
        let stats = vec![EnsembleStats {
            n: 100,
            algorithm: Algorithm::MfAoa,
            count: 200,
            mean_ratio: 0.3089,
            std_ratio: Some(0.0226),
        }];
        write_stats_json(&path, &stats).unwrap();
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let keys: Vec<_> = v[0].as_object().unwrap().keys().cloned().collect();
        let mut expected = vec!["algo", "count", "mean_ratio", "n", "std_ratio"];
        expected.sort();
        assert_eq!(keys, expected);
        assert_eq!(read_stats_json(&path).unwrap(), stats);
    }
}
