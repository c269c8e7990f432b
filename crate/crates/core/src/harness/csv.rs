//! CSV tables. Numbers carry 9 significant digits; empty fields mark missing
//! values (timeouts, out-of-regime bounds).

use std::fmt::Write as _;
use std::path::Path;

use crate::analysis::{BoundKind, ConditionVerdict, RateBound};
use crate::dynamics::Trajectory;

use super::sweep::SweepResult;
use super::trapping::TrappingResult;

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Shortest of fixed or scientific notation with 9 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Space-aligned columns for terminals.
    pub fn to_pretty(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len().max(1));
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{:<w$}", if c.is_empty() { "-" } else { c }))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&self.header);
        for row in &self.rows {
            line(row);
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv())
    }
}

/// `t,xi_1..xi_n,zeta_1..zeta_n,r`.
pub fn trajectory_table(traj: &Trajectory) -> Table {
    let n = traj.xi_samples.first().map_or(0, Vec::len);
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|i| format!("xi_{i}")));
    header.extend((1..=n).map(|i| format!("zeta_{i}")));
    header.push("r".to_string());
    let mut table = Table { header, rows: Vec::new() };
    for k in 0..traj.len() {
        let mut row = vec![fmt_sig(traj.times[k])];
        row.extend(traj.xi_samples[k].iter().map(|x| fmt_sig(*x)));
        row.extend(traj.zeta_samples[k].iter().map(|x| fmt_sig(*x)));
        row.push(fmt_sig(traj.r_samples[k]));
        table.push(row);
    }
    table
}

/// `multiplier,mean_time,std_time,timeouts`.
pub fn sweep_table(result: &SweepResult) -> Table {
    let mut table = Table::new(&["multiplier", "mean_time", "std_time", "timeouts"]);
    for rec in &result.records {
        table.push(vec![
            fmt_sig(rec.multiplier),
            opt(rec.mean_time),
            opt(rec.std_time),
            rec.timeout_count.to_string(),
        ]);
    }
    table
}

/// `multiplier,max_final_relative_phase`.
pub fn trapping_table(result: &TrappingResult) -> Table {
    let mut table = Table::new(&["multiplier", "max_final_relative_phase"]);
    for rec in &result.records {
        table.push(vec![fmt_sig(rec.multiplier), opt(rec.max_final_relative_phase)]);
    }
    table
}

/// `kind,epsilon,value,valid,margin,binding_term`.
pub fn bounds_table(epsilon: f64, rows: &[(BoundKind, Option<RateBound>)]) -> Table {
    let mut table = Table::new(&["kind", "epsilon", "value", "valid", "margin", "binding_term"]);
    for (kind, bound) in rows {
        let row = match bound {
            Some(b) => vec![
                kind.to_string(),
                fmt_sig(epsilon),
                fmt_sig(b.value),
                b.valid.to_string(),
                fmt_sig(b.verdict.margin),
                b.verdict.binding_term.to_string(),
            ],
            None => vec![
                kind.to_string(),
                fmt_sig(epsilon),
                String::new(),
                "false".to_string(),
                String::new(),
                "out_of_regime".to_string(),
            ],
        };
        table.push(row);
    }
    table
}

/// `theorem,epsilon,holds,margin,binding_term`.
pub fn verdict_table(epsilon: f64, verdicts: &[(&'static str, Option<ConditionVerdict>)]) -> Table {
    let mut table = Table::new(&["theorem", "epsilon", "holds", "margin", "binding_term"]);
    for (name, verdict) in verdicts {
        let row = match verdict {
            Some(v) => vec![
                name.to_string(),
                fmt_sig(epsilon),
                v.holds.to_string(),
                fmt_sig(v.margin),
                v.binding_term.to_string(),
            ],
            None => vec![
                name.to_string(),
                fmt_sig(epsilon),
                "false".to_string(),
                String::new(),
                "out_of_regime".to_string(),
            ],
        };
        table.push(row);
    }
    table
}
