// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Stable number formatting and the sweep CSV layout.

use std::io::Write;

use crate::design::SweepRow;

/// Rounds to 12 significant digits. Negative zero becomes zero.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal text of [`sig12`]`(x)`, e.g. `3`, `0.5`.
pub fn fmt_num(x: f64) -> String {
    format!("{}", sig12(x))
}

/// Header of the sweep CSV for an arm with `n` segments.
pub fn sweep_header(n: usize) -> Vec<String> {
    let mut h = vec![
        "z".to_string(),
        "block".to_string(),
        "components".to_string(),
    ];
    for member in 1..=2 {
        h.extend((0..n).map(|j| format!("ik{member}_theta{j}")));
    }
    h
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> csv::Result<()> {
    let n = rows.first().map_or(0, |r| r.ik[0].len());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(sweep_header(n))?;
    for row in rows {
        let mut rec = vec![
            fmt_num(row.z),
            row.state.label().to_string(),
            row.components().to_string(),
        ];
        for cfg in &row.ik {
            rec.extend(cfg.angles().iter().map(|a| fmt_num(*a)));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
