//! Offline re-analysis of rates result files.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

use randcube_core::montecarlo::{rate_fit, theoretical_exponent, ErrorMoment, RatePoint};

use crate::output::{split_csv_line, Format};
use crate::runners::RATES_COLUMNS;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct GroupKey {
    algo: String,
    space: String,
    problem: String,
    d: String,
    r: String,
    p: String,
}

#[derive(Clone, Debug)]
struct Row {
    key: GroupKey,
    n: usize,
    p: f64,
    value: f64,
    stderr: f64,
    trials: usize,
}

fn parse_csv(text: &str) -> Result<Vec<Row>> {
    let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('#'));
    let header = lines.next().context("file has no header row")?;
    let columns = split_csv_line(header);
    if columns != RATES_COLUMNS {
        bail!(
            "schema mismatch: expected columns `{}`, found `{header}`",
            RATES_COLUMNS.join(",")
        );
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields = split_csv_line(line);
        if fields.len() != RATES_COLUMNS.len() {
            bail!("row {}: expected {} fields, got {}", i + 2, RATES_COLUMNS.len(), fields.len());
        }
        let get = |name: &str| fields[RATES_COLUMNS.iter().position(|c| *c == name).unwrap()].as_str();
        rows.push(Row {
            key: GroupKey {
                algo: get("algo").to_string(),
                space: get("space").to_string(),
                problem: get("problem").to_string(),
                d: get("d").to_string(),
                r: get("r").to_string(),
                p: get("p").to_string(),
            },
            n: get("n").parse().with_context(|| format!("row {}: bad n", i + 2))?,
            p: get("p").parse().with_context(|| format!("row {}: bad p", i + 2))?,
            value: get("value")
                .parse()
                .with_context(|| format!("row {}: bad value", i + 2))?,
            stderr: get("stderr")
                .parse()
                .with_context(|| format!("row {}: bad stderr", i + 2))?,
            trials: get("trials")
                .parse()
                .with_context(|| format!("row {}: bad trials", i + 2))?,
        });
    }
    Ok(rows)
}

fn parse_jsonl(text: &str) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(line)
            .with_context(|| format!("line {}: invalid JSON", i + 1))?;
        let obj = v
            .as_object()
            .with_context(|| format!("line {}: expected an object", i + 1))?;
        for col in RATES_COLUMNS {
            if !obj.contains_key(col) {
                bail!("schema mismatch: line {} lacks field `{col}`", i + 1);
            }
        }
        let text_of = |k: &str| match &obj[k] {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let num_of = |k: &str| -> Result<f64> {
            obj[k]
                .as_f64()
                .with_context(|| format!("line {}: field `{k}` is not numeric", i + 1))
        };
        rows.push(Row {
            key: GroupKey {
                algo: text_of("algo"),
                space: text_of("space"),
                problem: text_of("problem"),
                d: text_of("d"),
                r: text_of("r"),
                p: text_of("p"),
            },
            n: num_of("n")? as usize,
            p: num_of("p")?,
            value: num_of("value")?,
            stderr: num_of("stderr")?,
            trials: num_of("trials")? as usize,
        });
    }
    Ok(rows)
}

/// Reads a rates results file, groups rows by configuration, refits the
/// log-log slope per group, and prints one summary line per group.
pub fn fit_and_summarize(path: &Path, format: Format) -> Result<()> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let rows = match format {
        Format::Csv => parse_csv(&text)?,
        Format::Jsonl => parse_jsonl(&text)?,
    };
    if rows.is_empty() {
        bail!("no data rows in {}", path.display());
    }

    let mut groups: BTreeMap<GroupKey, Vec<Row>> = BTreeMap::new();
    for row in rows {
        groups.entry(row.key.clone()).or_default().push(row);
    }

    let mut fitted = 0;
    for (key, rows) in &groups {
        let points: Vec<RatePoint> = rows
            .iter()
            .map(|row| RatePoint {
                n: row.n,
                moment: ErrorMoment {
                    p: row.p,
                    value: row.value,
                    stderr: row.stderr,
                    trials: row.trials,
                },
            })
            .collect();
        let label = format!(
            "fit algo={} space={} problem={} d={} r={} p={}",
            key.algo, key.space, key.problem, key.d, key.r, key.p
        );
        match rate_fit(&points) {
            Ok(report) => {
                fitted += 1;
                let theory = match (key.r.parse::<u32>(), key.d.parse::<usize>(), key.p.parse::<f64>()) {
                    (Ok(r), Ok(d), Ok(p)) => {
                        format!(" theory={}", theoretical_exponent(r, d, p))
                    }
                    _ => String::new(),
                };
                let excluded = if report.excluded > 0 {
                    format!(" excluded={} (non-positive values dropped)", report.excluded)
                } else {
                    String::new()
                };
                println!(
                    "{label}: slope={:.4} intercept={:.4} r2={:.5}{theory}{excluded} points={}",
                    report.slope,
                    report.intercept,
                    report.r2,
                    report.points.len()
                );
            }
            Err(e) => println!("{label}: no fit ({e})"),
        }
    }
    if fitted == 0 {
        bail!("no group had enough positive points to fit");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_csv(values: &[(usize, f64)]) -> String {
        let mut text = String::from("# comment line\n");
        text.push_str(&RATES_COLUMNS.join(","));
        text.push('\n');
        for (n, v) in values {
            text.push_str(&format!("std,scalar,expsum,1,0,2,{n},200,{v},0.001,42\n"));
        }
        text
    }

    #[test]
    fn csv_round_trip_exact_power_law() {
        let values: Vec<(usize, f64)> = (3..=8)
            .map(|j| {
                let n = 1usize << j;
                (n, (n as f64).powf(-0.5))
            })
            .collect();
        let rows = parse_csv(&sample_csv(&values)).unwrap();
        assert_eq!(rows.len(), 6);
        let points: Vec<RatePoint> = rows
            .iter()
            .map(|r| RatePoint {
                n: r.n,
                moment: ErrorMoment {
                    p: r.p,
                    value: r.value,
                    stderr: r.stderr,
                    trials: r.trials,
                },
            })
            .collect();
        let report = rate_fit(&points).unwrap();
        assert!((report.slope + 0.5).abs() < 1e-9);
    }

    #[test]
    fn csv_schema_mismatch_is_rejected() {
        let text = "a,b,c\n1,2,3\n";
        assert!(parse_csv(text).is_err());
    }

    #[test]
    fn zero_valued_rows_are_excluded_from_the_fit() {
        let mut values: Vec<(usize, f64)> = (3..=8)
            .map(|j| {
                let n = 1usize << j;
                (n, (n as f64).powf(-0.5))
            })
            .collect();
        values.push((512, 0.0));
        let rows = parse_csv(&sample_csv(&values)).unwrap();
        let points: Vec<RatePoint> = rows
            .iter()
            .map(|r| RatePoint {
                n: r.n,
                moment: ErrorMoment {
                    p: r.p,
                    value: r.value,
                    stderr: r.stderr,
                    trials: r.trials,
                },
            })
            .collect();
        let report = rate_fit(&points).unwrap();
        assert_eq!(report.excluded, 1);
        assert!((report.slope + 0.5).abs() < 1e-9);
    }

    #[test]
    fn jsonl_parses_rows() {
        let line = r#"{"algo":"std","space":"scalar","problem":"expsum","d":1,"r":0,"p":2.0,"n":16,"trials":200,"value":0.25,"stderr":0.001,"seed":42}"#;
        let rows = parse_jsonl(line).unwrap();
        assert_eq!(rows[0].n, 16);
        assert_eq!(rows[0].value, 0.25);
        assert!(parse_jsonl(r#"{"algo":"std"}"#).is_err());
    }
}
