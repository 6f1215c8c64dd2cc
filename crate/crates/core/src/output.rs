//! Text, CSV, LaTeX and JSON renderings of tables and intervals.

use serde::{Deserialize, Serialize};

use crate::arith::OddPrime;
use crate::bounds::{su_lower, su_upper_closed, su_upper_recursive};
use crate::error::{Error, Result};
use crate::exceptional::{ExceptionalTable, FactorTemplate, TableRow};
use crate::spaces::{BoundInterval, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Latex,
    Json,
}

/// Columns padded to their widest cell, separated by two spaces.
fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// `18,19,20` for a finite interval, `≥18` otherwise.
pub fn interval_values(iv: &BoundInterval) -> String {
    match iv.values() {
        Some(vs) => vs.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
        None => format!("≥{}", iv.lower()),
    }
}

/// `exp_5(SU(18)) ∈ [18, 20]`, or `= v` for a point interval.
pub fn interval_line(space: &Space, p: OddPrime, iv: &BoundInterval) -> String {
    let subject = format!("exp_{p}({space})");
    match iv.upper() {
        Some(hi) if hi == iv.lower() => format!("{subject} = {hi}"),
        Some(hi) => format!("{subject} ∈ [{}, {hi}]", iv.lower()),
        None => format!("{subject} ∈ [{}, ∞)", iv.lower()),
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn latex_space(s: &Space) -> String {
    match s {
        Space::Sphere(d) => format!("S^{{{d}}}"),
        Space::Bundle(b) if b.attaching() != 1 => {
            let dims: Vec<String> = b.dims().iter().map(u64::to_string).collect();
            format!("B_{}({})", b.attaching(), dims.join(","))
        }
        Space::Bundle(b) => b.to_string(),
        Space::Product(fs) => fs
            .iter()
            .map(latex_space)
            .collect::<Vec<_>>()
            .join("\\times "),
        Space::Group(g) => {
            let name = g.to_string();
            match name.as_bytes() {
                [c @ (b'G' | b'F' | b'E'), d] => format!("{}_{}", *c as char, *d as char),
                _ => match name.split_once('(') {
                    Some((head, tail)) => format!("\\mathrm{{{head}}}({tail}"),
                    None => name,
                },
            }
        }
        Space::Exotic(a) => {
            let name = a.to_string();
            match name.split_at(1) {
                (k, n) if !n.is_empty() => format!("{k}_{n}"),
                _ => name,
            }
        }
    }
}

fn latex_factor(row: &TableRow) -> String {
    match (&row.template, row.primes.len()) {
        (FactorTemplate::BelowTop(top), n) if n > 1 => format!("$B({top}-q,{top})$"),
        _ => format!("${}$", latex_space(&row.factor)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTableRow {
    pub group: String,
    pub p: String,
    pub primes: Vec<u64>,
    pub lower: u64,
    pub upper: Option<u64>,
    pub factor: String,
    pub mode: String,
    pub references: Vec<String>,
}

impl From<&TableRow> for JsonTableRow {
    fn from(r: &TableRow) -> Self {
        JsonTableRow {
            group: r.group_label(),
            p: r.condition.label(),
            primes: r.primes.clone(),
            lower: r.interval.lower(),
            upper: r.interval.upper(),
            factor: r.factor_label(),
            mode: r.mode.to_string(),
            references: r.references.clone(),
        }
    }
}

const TABLE_HEADER: [&str; 5] = ["X", "p", "exp_p(X)", "Factor", "Reference"];

pub fn render_exceptional_table(table: &ExceptionalTable, format: Format) -> String {
    match format {
        Format::Text => {
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.group_label(),
                        r.condition.label(),
                        interval_values(&r.interval),
                        r.factor_label(),
                        r.references.join(", "),
                    ]
                })
                .collect();
            aligned(&TABLE_HEADER, &rows)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.group_label(),
                        r.condition.label(),
                        r.interval.lower().to_string(),
                        r.interval
                            .upper()
                            .map(|u| u.to_string())
                            .unwrap_or_default(),
                        r.factor_label(),
                        r.mode.to_string(),
                        r.references.join("; "),
                    ]
                })
                .collect();
            csv_string(
                &[
                    "group",
                    "p",
                    "lower",
                    "upper",
                    "factor",
                    "mode",
                    "references",
                ],
                &rows,
            )
        }
        Format::Json => {
            let rows: Vec<JsonTableRow> = table.rows.iter().map(JsonTableRow::from).collect();
            serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{cc|ccc}\n");
            out.push_str("$X$&$p$&$\\exp_p(X)$&Factor&Reference\\\\\n");
            let mut prev_group = String::new();
            for r in &table.rows {
                let group = r.group_label();
                if group != prev_group {
                    out.push_str("\\hline\n");
                    prev_group = group.clone();
                }
                let names: Vec<String> = r
                    .groups
                    .iter()
                    .map(|g| latex_space(&Space::Group(g.lie_group())))
                    .collect();
                out.push_str(&format!(
                    "${}$&${}$&${}$&{}&{}\\\\\n",
                    names.join(","),
                    r.condition.label(),
                    interval_values(&r.interval).replace('≥', "\\ge "),
                    latex_factor(r),
                    r.references.join(", ")
                ));
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    }
}

/// `(group label, prime label, lower, upper)` recovered from an emitted table.
pub type ParsedRow = (String, String, u64, Option<u64>);

pub fn parse_table_csv(text: &str) -> Result<Vec<ParsedRow>> {
    let bad = |e: csv::Error| Error::Syntax {
        pos: 0,
        msg: e.to_string(),
    };
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(bad)?;
        let num = |i: usize| -> Result<Option<u64>> {
            let field = rec.get(i).unwrap_or("");
            if field.is_empty() {
                return Ok(None);
            }
            field.parse().map(Some).map_err(|_| Error::Syntax {
                pos: 0,
                msg: format!("bad number '{field}'"),
            })
        };
        let lower = num(2)?.ok_or(Error::Syntax {
            pos: 0,
            msg: "missing lower bound".into(),
        })?;
        rows.push((rec[0].to_string(), rec[1].to_string(), lower, num(3)?));
    }
    Ok(rows)
}

pub fn parse_table_json(text: &str) -> Result<Vec<ParsedRow>> {
    let rows: Vec<JsonTableRow> = serde_json::from_str(text).map_err(|e| Error::Syntax {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    Ok(rows
        .into_iter()
        .map(|r| (r.group, r.p, r.lower, r.upper))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuRow {
    pub n: u64,
    pub lower: u64,
    pub upper_recursive: u64,
    pub upper_closed: u64,
}

impl SuRow {
    pub fn upper(&self) -> u64 {
        self.upper_recursive.min(self.upper_closed)
    }

    pub fn exact(&self) -> bool {
        self.lower == self.upper()
    }
}

/// Lower and upper bounds for `exp_p(SU(n))`, `2 ≤ n ≤ max_n`.
pub fn su_table(p: OddPrime, max_n: u64) -> Vec<SuRow> {
    (2..=max_n)
        .map(|n| SuRow {
            n,
            lower: su_lower(p, n),
            upper_recursive: su_upper_recursive(p, n),
            upper_closed: su_upper_closed(p, n),
        })
        .collect()
}

pub fn render_su_table(rows: &[SuRow], format: Format) -> String {
    let header = ["n", "lower", "upper", "closed", "exact"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.lower.to_string(),
                r.upper_recursive.to_string(),
                r.upper_closed.to_string(),
                if r.exact() {
                    "exact".into()
                } else {
                    String::new()
                },
            ]
        })
        .collect();
    match format {
        Format::Text => aligned(&header, &cells),
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.lower.to_string(),
                        r.upper_recursive.to_string(),
                        r.upper_closed.to_string(),
                        r.exact().to_string(),
                    ]
                })
                .collect();
            csv_string(&header, &cells)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                #[serde(flatten)]
                row: SuRow,
                exact: bool,
            }
            let rows: Vec<Row> = rows
                .iter()
                .map(|&row| Row {
                    row,
                    exact: row.exact(),
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{r|rrr|c}\n");
            out.push_str("$n$&lower&upper&closed&exact\\\\\n\\hline\n");
            for r in rows {
                out.push_str(&format!(
                    "${}$&${}$&${}$&${}$&{}\\\\\n",
                    r.n,
                    r.lower,
                    r.upper_recursive,
                    r.upper_closed,
                    if r.exact() { "$\\checkmark$" } else { "" }
                ));
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    }
}
