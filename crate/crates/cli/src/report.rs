//! Output rows and their Markdown, CSV and JSON renderings.

use std::fmt::{Display, Write as _};

use clap::ValueEnum;
use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use ffperiod_core::golden::{CellReport, FooterReport};
use ffperiod_core::{render_decimal, ExactRatio, Limit, TowerQuery};

/// Significant digits of every rendered ratio.
pub const SIG_FIGS: usize = 9;

fn as_string<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// Exact ratio, nine significant digits, half to even.
    Exact,
    /// Count and p^n stored as 32-bit-mantissa floats before dividing.
    Binary32,
}

/// One table row: the periodic count in `F_{p^n}` and its proportion.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub n: u64,
    pub field: String,
    #[serde(serialize_with = "as_string")]
    pub count: BigUint,
    #[serde(serialize_with = "as_string")]
    pub ratio: ExactRatio,
    pub rendered: String,
    pub method: Method,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitView {
    #[serde(serialize_with = "as_string")]
    pub ratio: ExactRatio,
    #[serde(serialize_with = "as_string")]
    pub numerator: BigUint,
    #[serde(serialize_with = "as_string")]
    pub denominator: BigUint,
    pub rendered: String,
    pub extension: bool,
    pub i_primes: Vec<u64>,
    pub j_primes: Vec<u64>,
    #[serde(serialize_with = "as_string")]
    pub q_i: BigUint,
    #[serde(serialize_with = "as_string")]
    pub q_j: BigUint,
}

impl LimitView {
    pub fn new(lim: Limit, rendered: String) -> Self {
        LimitView {
            numerator: lim.value.numer().clone(),
            denominator: lim.value.denom().clone(),
            ratio: lim.value,
            rendered,
            extension: lim.extension,
            i_primes: lim.i_primes,
            j_primes: lim.j_primes,
            q_i: lim.q_i,
            q_j: lim.q_j,
        }
    }
}

/// The query echoed back in tower and limit documents.
#[derive(Debug, Clone, Serialize)]
pub struct QueryView {
    pub p: u64,
    pub map: String,
    pub delta: u64,
    pub nu: Vec<u32>,
    pub constraint: String,
}

impl From<&TowerQuery> for QueryView {
    fn from(q: &TowerQuery) -> Self {
        QueryView {
            p: q.p(),
            map: q.map().to_string(),
            delta: q.delta(),
            nu: q.nu().to_vec(),
            constraint: q.constraint().name().to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Document {
    Count {
        p: u64,
        map: String,
        row: ReportRow,
    },
    Tower {
        query: QueryView,
        rounding: Rounding,
        rows: Vec<ReportRow>,
        limit: LimitView,
    },
    Limit {
        query: QueryView,
        limit: LimitView,
    },
    Tables {
        cells: Vec<CellView>,
        footers: Vec<FooterView>,
        rows_follow_towers: bool,
    },
}

#[derive(Debug, Serialize)]
pub struct CellView {
    pub table: String,
    pub p: u64,
    pub delta: Option<u64>,
    pub n: u64,
    pub printed: String,
    #[serde(serialize_with = "as_string")]
    pub value: ExactRatio,
    pub displayed: String,
    pub status: String,
    pub brute_confirmed: Option<bool>,
}

impl From<&CellReport> for CellView {
    fn from(c: &CellReport) -> Self {
        CellView {
            table: c.table.to_string(),
            p: c.p,
            delta: c.delta,
            n: c.n,
            printed: c.printed.to_string(),
            value: c.value.clone(),
            displayed: c.displayed.clone(),
            status: c.status.to_string(),
            brute_confirmed: c.brute_confirmed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FooterView {
    pub table: String,
    pub p: u64,
    pub delta: Option<u64>,
    pub printed: String,
    #[serde(serialize_with = "as_string")]
    pub value: ExactRatio,
    pub rendered: String,
    pub matches: bool,
    pub sets_match: bool,
}

impl From<&FooterReport> for FooterView {
    fn from(f: &FooterReport) -> Self {
        FooterView {
            table: f.table.to_string(),
            p: f.p,
            delta: f.delta,
            printed: f.printed.to_string(),
            value: f.value.clone(),
            rendered: f.rendered.clone(),
            matches: f.matches,
            sets_match: f.sets_match,
        }
    }
}

/// Nine-digit rendering with trailing zeros dropped, as table footers print
/// limits (`0.5`, `0.265625`, `0.333333333`).
pub fn render_footer(r: &ExactRatio) -> String {
    let s = render_decimal(r, SIG_FIGS);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `{3, 5}`, or `∅` when empty.
pub fn prime_set(primes: &[u64]) -> String {
    if primes.is_empty() {
        "∅".to_string()
    } else {
        let items: Vec<String> = primes.iter().map(u64::to_string).collect();
        format!("{{{}}}", items.join(", "))
    }
}

fn nu_tuple(nu: &[u32]) -> String {
    let items: Vec<String> = nu.iter().map(u32::to_string).collect();
    format!("({})", items.join(", "))
}

pub fn count_plain(p: u64, map: &str, row: &ReportRow) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field     {}", row.field);
    let _ = writeln!(s, "map       {map}");
    let _ = writeln!(s, "p         {p}");
    let _ = writeln!(s, "n         {}", row.n);
    let _ = writeln!(s, "count     {}", row.count);
    let _ = writeln!(s, "ratio     {}", row.ratio);
    let _ = writeln!(s, "rendered  {}", row.rendered);
    let _ = writeln!(s, "method    {}", method_name(row.method));
    s
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Analytic => "analytic",
        Method::Brute => "brute",
        Method::Both => "both",
    }
}

fn caption(q: &QueryView) -> String {
    format!(
        "{} over F_{{{}^n}}, delta = {}, nu = {}, {}",
        q.map,
        q.p,
        q.delta,
        nu_tuple(&q.nu),
        q.constraint
    )
}

pub fn tower_markdown(q: &QueryView, rows: &[ReportRow], lim: &LimitView) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}\n", caption(q));
    let _ = writeln!(s, "| n | field | #Per | #Per / p^n |");
    let _ = writeln!(s, "|---:|---|---:|---|");
    for r in rows {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} |",
            r.n, r.field, r.count, r.rendered
        );
    }
    let _ = writeln!(s, "| limit | | | {} |", lim.rendered);
    s
}

pub fn tower_csv(rows: &[ReportRow], lim: &LimitView) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "field", "count", "ratio", "rendered", "method"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.field.clone(),
            r.count.to_string(),
            r.ratio.to_string(),
            r.rendered.clone(),
            method_name(r.method).to_string(),
        ])?;
    }
    w.write_record([
        "limit",
        "",
        "",
        &lim.ratio.to_string(),
        &lim.rendered,
        "analytic",
    ])?;
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn limit_plain(q: &QueryView, lim: &LimitView) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "query      {}", caption(q));
    let _ = writeln!(s, "limit      {}", lim.ratio);
    let _ = writeln!(s, "decimal    {}", lim.rendered);
    let _ = writeln!(s, "extension  {}", lim.extension);
    let _ = writeln!(s, "I          {}", prime_set(&lim.i_primes));
    let _ = writeln!(s, "J          {}", prime_set(&lim.j_primes));
    s
}

pub fn tables_markdown(cells: &[CellView], footers: &[FooterView], rows_follow: bool) -> String {
    let mut s = String::new();
    let mut current = "";
    for c in cells {
        if c.table != current {
            current = &c.table;
            let _ = writeln!(s, "\n## {current}\n");
            let _ = writeln!(
                s,
                "| p | delta | n | printed | computed | value | status | brute |"
            );
            let _ = writeln!(s, "|---:|---:|---:|---|---|---|---|---|");
        }
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            c.p,
            opt(&c.delta),
            c.n,
            c.printed,
            c.displayed,
            c.value,
            c.status,
            opt(&c.brute_confirmed)
        );
    }
    let _ = writeln!(s, "\n## Limits\n");
    let _ = writeln!(
        s,
        "| table | p | delta | printed | computed | value | match | I, J |"
    );
    let _ = writeln!(s, "|---|---:|---:|---|---|---|---|---|");
    for f in footers {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            f.table,
            f.p,
            opt(&f.delta),
            f.printed,
            f.rendered,
            f.value,
            f.matches,
            f.sets_match
        );
    }
    let _ = writeln!(s, "\nrow labels follow towers: {rows_follow}");
    s
}

fn opt<T: Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}
