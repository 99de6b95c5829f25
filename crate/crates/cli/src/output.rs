//! JSON-lines and CSV report records.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use ladderlab::crossbreed::HybridReport;
use ladderlab::factorize::FactorizationCertificate;
use ladderlab::report::fmt17;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub fn sink(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct ReportLine<'a> {
    #[serde(flatten)]
    report: &'a HybridReport,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

pub fn write_reports(
    w: &mut dyn Write,
    reports: &[HybridReport],
    csv: bool,
    timestamp: Option<u64>,
) -> anyhow::Result<()> {
    if !csv {
        for report in reports {
            let line = ReportLine {
                report,
                pass: report.pass(),
                timestamp,
            };
            writeln!(w, "{}", serde_json::to_string(&line)?)?;
        }
        return Ok(w.flush()?);
    }
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec![
        "formula_id",
        "L",
        "U",
        "k",
        "delta4",
        "delta5",
        "lhs",
        "rhs",
        "abs_residual",
        "rel_residual",
        "deviation",
        "reference_residual",
        "tol_budget",
        "pass",
    ];
    if timestamp.is_some() {
        header.push("timestamp");
    }
    out.write_record(&header)?;
    for r in reports {
        let ks: Vec<String> = r.inputs.k.iter().map(ToString::to_string).collect();
        let mut row = vec![
            r.formula_id.to_string(),
            r.inputs.l.to_string(),
            fmt17(r.inputs.u),
            ks.join(";"),
            opt(r.inputs.deltas.map(|d| d[0])),
            opt(r.inputs.deltas.map(|d| d[1])),
            fmt17(r.lhs),
            fmt17(r.rhs),
            fmt17(r.abs_residual),
            fmt17(r.rel_residual),
            opt(r.deviation),
            opt(r.reference_residual),
            fmt17(r.tol_budget),
            r.pass().to_string(),
        ];
        if let Some(ts) = timestamp {
            row.push(ts.to_string());
        }
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

fn certificate_fields(c: &FactorizationCertificate) -> Vec<String> {
    let mut names = vec!["family", "L", "U", "k", "alpha0"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    names.extend((1..=c.k).map(|r| format!("alpha{r}")));
    names.extend((1..=c.k).map(|r| format!("beta{r}")));
    names.push("residual".into());
    names
}

pub fn write_certificate(
    w: &mut dyn Write,
    c: &FactorizationCertificate,
    csv: bool,
) -> anyhow::Result<()> {
    let names = certificate_fields(c);
    let values = c.record();
    if csv {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&names)?;
        out.write_record(&values)?;
        out.flush()?;
        return Ok(());
    }
    let mut obj = Map::new();
    for (name, value) in names.into_iter().zip(values) {
        let v = match name.as_str() {
            "family" => json!(value),
            "L" | "k" => json!(value.parse::<u64>()?),
            _ => json!(value.parse::<f64>()?),
        };
        obj.insert(name, v);
    }
    if let Some(d) = c.family.delta() {
        obj.insert("delta".into(), json!(d));
    }
    writeln!(w, "{}", Value::Object(obj))?;
    Ok(w.flush()?)
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub l: u64,
    pub deviation: f64,
    pub budget: f64,
    pub gap_ratio: f64,
}

pub fn write_sweep(w: &mut dyn Write, rows: &[SweepRow]) -> anyhow::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["L", "deviation", "budget", "gap_ratio"])?;
    for r in rows {
        out.write_record([
            r.l.to_string(),
            fmt17(r.deviation),
            fmt17(r.budget),
            fmt17(r.gap_ratio),
        ])?;
    }
    out.flush()?;
    Ok(())
}
