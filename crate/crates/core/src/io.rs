//! CSV and JSON encodings of coefficient tables, count tables, oracle
//! comparisons and verification reports.
//!
//! Rationals travel as separate numerator and denominator integer strings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{Rat, Series};
use crate::error::{Error, Result};
use crate::kernel::KernelTable;
use crate::oracle::CountTable;
use crate::slices::{Family, FamilyKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidConfig(format!("unknown format {other:?}"))),
        }
    }
}

/// `[var^n] X_k = num/den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefRow {
    pub family: FamilyKind,
    pub k: usize,
    pub n: usize,
    pub num: String,
    pub den: String,
}

impl CoefRow {
    /// The coefficient, checking that it is written in lowest terms with a
    /// positive denominator.
    pub fn value(&self) -> Result<Rat> {
        checked_rat(&self.num, &self.den, || format!("{}_{} at n = {}", self.family, self.k, self.n))
    }
}

fn checked_rat(num: &str, den: &str, at: impl Fn() -> String) -> Result<Rat> {
    let bad = |what: &str| Error::Parse(format!("{}: {what}", at()));
    let num: BigInt = parse_int(num).ok_or_else(|| bad("numerator is not an integer"))?;
    let den: BigInt = parse_int(den).ok_or_else(|| bad("denominator is not an integer"))?;
    if !den.is_positive() {
        return Err(bad("denominator must be positive"));
    }
    if !num.gcd(&den).is_one() {
        return Err(bad("fraction is not in lowest terms"));
    }
    Ok(Rat::new_raw(num, den))
}

/// Plain decimal integers only: optional minus sign, then digits.
fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Rows for every known coefficient, ordered by `k` then `n`.
pub fn family_rows(fam: &Family) -> Vec<CoefRow> {
    fam.iter()
        .flat_map(|(k, s)| {
            s.coeffs().iter().enumerate().map(move |(n, c)| CoefRow {
                family: fam.kind(),
                k,
                n,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
        })
        .collect()
}

/// Rebuilds families from rows. Within a family the indices `k` must be
/// consecutive and each series must list `n = 0, 1, …` in order.
pub fn families_from_rows(rows: &[CoefRow]) -> Result<Vec<Family>> {
    let mut out: Vec<(FamilyKind, usize, Vec<Vec<Rat>>)> = Vec::new();
    for row in rows {
        let value = row.value()?;
        let fresh = out.last().is_none_or(|(kind, _, _)| *kind != row.family);
        if fresh {
            if out.iter().any(|(kind, _, _)| *kind == row.family) {
                return Err(Error::Parse(format!("rows of family {} are not contiguous", row.family)));
            }
            out.push((row.family, row.k, Vec::new()));
        }
        let (_, start, series) = out.last_mut().expect("just pushed");
        let next_k = *start + series.len();
        if row.n == 0 {
            if row.k != next_k {
                return Err(Error::Parse(format!("{}: expected k = {next_k}, found {}", row.family, row.k)));
            }
            series.push(vec![value]);
        } else {
            let cur = series
                .last_mut()
                .filter(|_| row.k + 1 == next_k)
                .ok_or_else(|| Error::Parse(format!("{}_{}: series must start at n = 0", row.family, row.k)))?;
            if cur.len() != row.n {
                return Err(Error::Parse(format!("{}_{}: expected n = {}, found {}", row.family, row.k, cur.len(), row.n)));
            }
            cur.push(value);
        }
    }
    Ok(out
        .into_iter()
        .map(|(kind, start, series)| {
            let var = kind.weight_var();
            Family::new(kind, start, series.into_iter().map(|c| Series::new(var, c)).collect())
        })
        .collect())
}

fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(|e| Error::Parse(e.to_string()))?;
    for r in rows {
        w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn from_csv<T: DeserializeOwned>(text: &str, header: &[&str]) -> Result<Vec<T>> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let got = r.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if got.iter().ne(header.iter().copied()) {
        return Err(Error::Parse(format!("expected header {}, found {}", header.join(","), got.iter().collect::<Vec<_>>().join(","))));
    }
    r.deserialize().map(|row| row.map_err(|e| Error::Parse(e.to_string()))).collect()
}

fn to_json<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

const COEF_HEADER: [&str; 5] = ["family", "k", "n", "num", "den"];

pub fn encode_coefficients(rows: &[CoefRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(rows, &COEF_HEADER),
        Format::Json => to_json(rows),
    }
}

/// Parses and validates a coefficient table.
pub fn decode_coefficients(text: &str, format: Format) -> Result<Vec<CoefRow>> {
    let rows: Vec<CoefRow> = match format {
        Format::Csv => from_csv(text, &COEF_HEADER)?,
        Format::Json => from_json(text)?,
    };
    for r in &rows {
        r.value()?;
    }
    Ok(rows)
}

/// `ψ_{m,n} = num/den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRow {
    pub m: usize,
    pub n: usize,
    pub num: String,
    pub den: String,
}

impl KernelRow {
    pub fn value(&self) -> Result<Rat> {
        checked_rat(&self.num, &self.den, || format!("psi_{{{},{}}}", self.m, self.n))
    }
}

/// Rows ordered by `m` then `n`.
pub fn kernel_rows(table: &KernelTable) -> Vec<KernelRow> {
    (0..=table.m_max())
        .flat_map(|m| (0..=table.n_max()).map(move |n| (m, n)))
        .map(|(m, n)| {
            let c = table.psi(m, n);
            KernelRow {
                m,
                n,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            }
        })
        .collect()
}

const KERNEL_HEADER: [&str; 4] = ["m", "n", "num", "den"];

pub fn encode_kernel(rows: &[KernelRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(rows, &KERNEL_HEADER),
        Format::Json => to_json(rows),
    }
}

pub fn decode_kernel(text: &str, format: Format) -> Result<Vec<KernelRow>> {
    let rows: Vec<KernelRow> = match format {
        Format::Csv => from_csv(text, &KERNEL_HEADER)?,
        Format::Json => from_json(text)?,
    };
    for r in &rows {
        r.value()?;
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct CountRow {
    #[serde(rename = "F")]
    f: usize,
    #[serde(rename = "k_or_L")]
    k_or_l: usize,
    count: u64,
}

const COUNT_HEADER: [&str; 3] = ["F", "k_or_L", "count"];

pub fn encode_counts(table: &CountTable, format: Format) -> Result<String> {
    let rows: Vec<CountRow> = table.rows().map(|(f, k_or_l, count)| CountRow { f, k_or_l, count }).collect();
    match format {
        Format::Csv => to_csv(&rows, &COUNT_HEADER),
        Format::Json => to_json(&rows),
    }
}

/// Parses a count table; repeated keys are rejected.
pub fn decode_counts(text: &str, format: Format) -> Result<CountTable> {
    let rows: Vec<CountRow> = match format {
        Format::Csv => from_csv(text, &COUNT_HEADER)?,
        Format::Json => from_json(text)?,
    };
    let mut table = CountTable::new();
    let mut seen = std::collections::HashSet::new();
    for r in rows {
        if !seen.insert((r.f, r.k_or_l)) {
            return Err(Error::Parse(format!("duplicate row F = {}, {}", r.f, r.k_or_l)));
        }
        table.add(r.f, r.k_or_l, r.count);
    }
    Ok(table)
}

/// One row of an oracle-versus-series comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    #[serde(rename = "F")]
    pub f: usize,
    pub k: usize,
    pub oracle_count: u64,
    pub series_count: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

const COMPARISON_HEADER: [&str; 5] = ["F", "k", "oracle_count", "series_count", "match"];

pub fn encode_comparison(rows: &[ComparisonRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(rows, &COMPARISON_HEADER),
        Format::Json => to_json(rows),
    }
}

pub fn decode_comparison(text: &str, format: Format) -> Result<Vec<ComparisonRow>> {
    match format {
        Format::Csv => from_csv(text, &COMPARISON_HEADER),
        Format::Json => from_json(text),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

pub fn encode_report(report: &[CheckResult]) -> Result<String> {
    to_json(report)
}

pub fn decode_report(text: &str) -> Result<Vec<CheckResult>> {
    from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Var};

    fn sample() -> Family {
        let a = Series::new(Var::G, vec![rat(0, 1), rat(-3, 4), rat(5, 1)]);
        let b = Series::new(Var::G, vec![rat(1, 1), rat(0, 1), rat(2, 7)]);
        Family::new(FamilyKind::S, 2, vec![a, b])
    }

    #[test]
    fn coefficient_round_trip() {
        let rows = family_rows(&sample());
        assert_eq!(rows[1].num, "-3");
        assert_eq!(rows[1].den, "4");
        for fmt in [Format::Csv, Format::Json] {
            let text = encode_coefficients(&rows, fmt).unwrap();
            let back = decode_coefficients(&text, fmt).unwrap();
            assert_eq!(back, rows);
            assert_eq!(families_from_rows(&back).unwrap(), vec![sample()]);
        }
        let csv = encode_coefficients(&rows, Format::Csv).unwrap();
        assert!(csv.starts_with("family,k,n,num,den\nS,2,0,0,1\n"));
    }

    #[test]
    fn rejects_malformed_coefficients() {
        let bad = [
            "family,k,n,num,den\nS,0,0,2,4\n",
            "family,k,n,num,den\nS,0,0,1,0\n",
            "family,k,n,num,den\nS,0,0,1,-1\n",
            "family,k,n,num,den\nS,0,0,+1,1\n",
            "family,k,n,num,den\nQ,0,0,1,1\n",
            "family,k,n,numer,den\nS,0,0,1,1\n",
        ];
        for text in bad {
            assert!(decode_coefficients(text, Format::Csv).is_err(), "{text}");
        }
        let gap = decode_coefficients("family,k,n,num,den\nS,0,1,1,1\n", Format::Csv).unwrap();
        assert!(families_from_rows(&gap).is_err());
    }

    #[test]
    fn count_round_trip() {
        let mut t = CountTable::new();
        t.add(2, 0, 4);
        t.add(2, 1, 7);
        for fmt in [Format::Csv, Format::Json] {
            let text = encode_counts(&t, fmt).unwrap();
            assert_eq!(decode_counts(&text, fmt).unwrap(), t);
        }
        assert!(decode_counts("F,k_or_L,count\n2,0,1\n2,0,1\n", Format::Csv).is_err());
    }

    #[test]
    fn report_round_trip() {
        let r = vec![CheckResult {
            check: "sum-rule".into(),
            status: Status::Fail,
            detail: "F = 4".into(),
        }];
        let text = encode_report(&r).unwrap();
        assert!(text.contains("\"status\": \"fail\""));
        assert_eq!(decode_report(&text).unwrap(), r);
    }

    #[test]
    fn kernel_round_trip() {
        let rows = kernel_rows(&KernelTable::by_recurrence(2, 3));
        assert_eq!(rows.len(), 12);
        for fmt in [Format::Csv, Format::Json] {
            let text = encode_kernel(&rows, fmt).unwrap();
            assert_eq!(decode_kernel(&text, fmt).unwrap(), rows);
        }
        assert!(decode_kernel("m,n,num,den\n0,0,2,4\n", Format::Csv).is_err());
    }
}
