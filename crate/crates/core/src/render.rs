//! Text renderings of reports: CSV with a header row, and plain tables.
//!
//! Sequence CSV columns are `length,count`. Product CSV columns are
//! `length,count_x,count_y,count_product`.

use std::fmt::Write as _;

use crate::engine::SequenceReport;
use crate::sturmian::ProductReport;

fn csv_text<R: AsRef<[String]>>(header: &[&str], rows: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for row in rows {
        w.write_record(row.as_ref()).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii output")
}

pub fn sequence_csv(report: &SequenceReport) -> String {
    csv_text(
        &["length", "count"],
        report
            .counts
            .iter()
            .enumerate()
            .map(|(i, c)| vec![(i + 1).to_string(), c.to_string()]),
    )
}

pub fn product_csv(report: &ProductReport) -> String {
    csv_text(
        &["length", "count_x", "count_y", "count_product"],
        (0..report.counts_product.len()).map(|i| {
            vec![
                (i + 1).to_string(),
                report.counts_x[i].to_string(),
                report.counts_y[i].to_string(),
                report.counts_product[i].to_string(),
            ]
        }),
    )
}

pub fn sequence_table(report: &SequenceReport) -> String {
    let mut out = String::new();
    writeln!(out, "quantity   {}", report.quantity).unwrap();
    if report.certified {
        writeln!(
            out,
            "periodic   from length {} with period {}",
            report.preperiod, report.period
        )
        .unwrap();
    } else {
        writeln!(
            out,
            "periodic   not certified up to length {}",
            report.lmax()
        )
        .unwrap();
    }
    writeln!(out, "liminf     {}", report.liminf).unwrap();
    writeln!(out, "limsup     {}", report.limsup).unwrap();
    let width = report
        .counts
        .iter()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1)
        .max("count".len());
    let lwidth = report.lmax().to_string().len().max("length".len());
    writeln!(out, "{:>lwidth$}  {:>width$}", "length", "count").unwrap();
    for (i, c) in report.counts.iter().enumerate() {
        writeln!(out, "{:>lwidth$}  {:>width$}", i + 1, c).unwrap();
    }
    out
}
