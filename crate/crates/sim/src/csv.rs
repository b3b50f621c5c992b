//! Sweep results as CSV.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use crate::harness::TrialRecord;

pub const HEADER: [&str; 9] = [
    "ebno_db",
    "frames",
    "frame_errors",
    "bit_errors",
    "fer",
    "ber",
    "avg_iterations",
    "avg_path_switches",
    "throughput_info_bps_per_worker",
];

/// One CSV line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub ebno_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub avg_iterations: f64,
    pub avg_path_switches: f64,
    pub throughput_info_bps_per_worker: f64,
}

impl From<&TrialRecord> for Row {
    fn from(r: &TrialRecord) -> Self {
        Row {
            ebno_db: r.ebno_db,
            frames: r.frames,
            frame_errors: r.frame_errors,
            bit_errors: r.bit_errors,
            fer: r.fer(),
            ber: r.ber(),
            avg_iterations: r.avg_iterations(),
            avg_path_switches: r.avg_path_switches(),
            throughput_info_bps_per_worker: r.info_throughput(),
        }
    }
}

/// Writes the header and one row per record.
pub fn write_rows<W: Write>(records: &[TrialRecord], out: W) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.serialize(Row::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(records: &[TrialRecord], path: &Path) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_rows(records, file).with_context(|| format!("writing {}", path.display()))
}

/// Parses rows written by [`write_rows`], checking the header.
pub fn read_rows<R: Read>(input: R) -> anyhow::Result<Vec<Row>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    anyhow::ensure!(header == HEADER, "unexpected header {header:?}");
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

pub fn read_csv(path: &Path) -> anyhow::Result<Vec<Row>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_rows(file).with_context(|| format!("reading {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn record(ebno_db: f64, frames: u64, errors: u64) -> TrialRecord {
        TrialRecord {
            ebno_db,
            frames,
            frame_errors: errors,
            bit_errors: 7 * errors,
            payload_bits: 488,
            info_bits: 512,
            total_iterations: 1024 * frames + 3,
            total_path_switches: errors / 2,
            decode_wall_time: Duration::from_micros(37 * frames),
        }
    }

    #[test]
    fn empty_list_gives_a_header_only_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        write_csv(&[], &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), format!("{}\n", HEADER.join(",")));
        assert!(read_csv(&path).unwrap().is_empty());
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.csv");
        let records: Vec<_> = (0..7).map(|i| record(i as f64 * 0.5, 10_000 + i, 300 - 40 * i)).collect();
        write_csv(&records[..1], &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
        write_csv(&records, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 8);
        let rows = read_csv(&path).unwrap();
        let expected: Vec<Row> = records.iter().map(Row::from).collect();
        assert_eq!(rows, expected);
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let err = write_csv(&[], Path::new("/nonexistent-dir/x.csv")).unwrap_err();
        assert!(format!("{err:#}").contains("/nonexistent-dir/x.csv"));
    }
}
