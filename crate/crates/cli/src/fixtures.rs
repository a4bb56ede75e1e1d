//! Published tables bundled as CSV.

use serde::Deserialize;

use crate::error::CliError;

const MAIN_TABLE: &str = include_str!("../fixtures/main_table.csv");
const DESCENT_TABLES: &str = include_str!("../fixtures/descent_tables.csv");

/// One row of the table of central values.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct TableRow {
    pub factored: String,
    pub lambda: u64,
    pub e: u32,
    pub r: u32,
    pub s: u32,
    /// `r - e + 1`, the sort key of the table.
    pub key: i64,
    pub lalg: u64,
    /// Order of Ш as listed.
    pub sha: u64,
}

/// One row of the descent example tables.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct DescentRow {
    /// Which descent family the row belongs to: 1 or 2.
    pub family: u8,
    pub factored: String,
    pub lambda: u64,
    pub t: i32,
    pub r: u32,
    pub s: u32,
    /// Order of Ш[6] as listed.
    pub sha6: u64,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, CliError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.deserialize().map(|r| r.map_err(CliError::from)).collect()
}

pub fn main_table() -> Result<Vec<TableRow>, CliError> {
    parse(MAIN_TABLE)
}

pub fn descent_tables() -> Result<Vec<DescentRow>, CliError> {
    parse(DESCENT_TABLES)
}

/// Evaluates `2^2*3*7` style products.
pub fn eval_factored(s: &str) -> Option<u64> {
    s.split('*').try_fold(1u64, |acc, f| {
        let (b, e) = match f.split_once('^') {
            Some((b, e)) => (b.parse::<u64>().ok()?, e.parse::<u32>().ok()?),
            None => (f.parse::<u64>().ok()?, 1),
        };
        acc.checked_mul(b.checked_pow(e)?)
    })
}
