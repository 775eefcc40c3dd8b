use std::fmt::Write as _;

use cayleywalk::verify::VerifyReport;
use serde::Serialize;

use crate::sweep::Sweep;

/// Shortest decimal string that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn sweep_csv(sweep: &Sweep) -> String {
    let n = sweep.vertices;
    let with_amplitudes = sweep.rows.first().is_some_and(|r| r.amplitudes.is_some());
    let mut out = String::from("t");
    for j in 0..n {
        write!(out, ",P_{j}").unwrap();
    }
    out.push_str(",tv_to_uniform");
    if with_amplitudes {
        for j in 0..n {
            write!(out, ",Re_{j},Im_{j}").unwrap();
        }
    }
    out.push('\n');
    for row in &sweep.rows {
        out.push_str(&num(row.t));
        for &p in &row.probabilities {
            out.push(',');
            out.push_str(&num(p));
        }
        out.push(',');
        out.push_str(&num(row.tv_to_uniform));
        if let Some(amps) = &row.amplitudes {
            for &(re, im) in amps {
                write!(out, ",{},{}", num(re), num(im)).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn verify_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        writeln!(
            out,
            "{} {:<13} {:<48} max_error={:.3e} tolerance={:.1e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            c.max_error,
            c.tolerance
        )
        .unwrap();
    }
    let failed = report.failures().count();
    writeln!(
        out,
        "{} checks, {} failed, max error {:.3e}",
        report.checks.len(),
        failed,
        report.max_error()
    )
    .unwrap();
    out
}

pub fn verify_csv(report: &VerifyReport) -> String {
    let mut out = String::from("suite,name,max_error,tolerance,passed\n");
    for c in &report.checks {
        writeln!(
            out,
            "{},{},{},{},{}",
            c.suite,
            c.name,
            num(c.max_error),
            num(c.tolerance),
            c.passed
        )
        .unwrap();
    }
    out
}
