//! Per-run history files.
//!
//! Floats are written as `{:.16e}`, 17 significant digits, which round-trips
//! every finite `f64` exactly.

use std::io::{Read, Write};

use qgan_core::qgan::IterationRecord;

pub const HEADER: [&str; 6] = ["iteration", "loss_g", "loss_d", "tv", "fidelity", "wall_time_ms"];

pub fn write_history<W: Write>(out: W, history: &[IterationRecord<f64>]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in history {
        w.write_record([
            r.iteration.to_string(),
            format!("{:.16e}", r.loss_g),
            format!("{:.16e}", r.loss_d),
            format!("{:.16e}", r.tv_to_target),
            format!("{:.16e}", r.fidelity_to_target),
            format!("{:.16e}", r.wall_time_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_history<R: Read>(input: R) -> Result<Vec<IterationRecord<f64>>, String> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(HEADER) {
        return Err(format!("unexpected header {header:?}"));
    }
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let row = i + 2;
        let float = |col: usize| -> Result<f64, String> {
            rec[col]
                .parse()
                .map_err(|e| format!("row {row}, column {}: {e}", HEADER[col]))
        };
        out.push(IterationRecord {
            iteration: rec[0]
                .parse()
                .map_err(|e| format!("row {row}, column iteration: {e}"))?,
            loss_g: float(1)?,
            loss_d: float(2)?,
            tv_to_target: float(3)?,
            fidelity_to_target: float(4)?,
            wall_time_ms: float(5)?,
        });
    }
    Ok(out)
}
