//! On-disk cache: one file per `(λ, digits)` holding the coefficient table
//! and the rendered report.
//!
//! Layout, all integers little-endian:
//! `CUBELVAL` · version u32 · λ u64 · n_max u64 · digits u32 ·
//! params (u32 length + UTF-8) · `a_1 .. a_{n_max}` as i64 ·
//! report (u64 length + UTF-8 JSON).

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use cubelval_core::hecke::CoefficientTable;

const MAGIC: &[u8; 8] = b"CUBELVAL";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub lambda: u64,
    pub digits: u32,
    /// Everything besides `λ` and digits that shaped the report.
    pub params: String,
    pub table: CoefficientTable,
    pub report: String,
}

pub fn path_for(dir: &Path, lambda: u64, digits: u32) -> PathBuf {
    dir.join(format!("{lambda}-{digits}.bin"))
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub fn encode(e: &Entry) -> Vec<u8> {
    let coeffs = e.table.as_slice();
    let mut out = Vec::with_capacity(48 + 8 * coeffs.len() + e.params.len() + e.report.len());
    out.extend_from_slice(MAGIC);
    put_u32(&mut out, VERSION);
    put_u64(&mut out, e.lambda);
    put_u64(&mut out, coeffs.len() as u64);
    put_u32(&mut out, e.digits);
    put_u32(&mut out, e.params.len() as u32);
    out.extend_from_slice(e.params.as_bytes());
    for &a in coeffs {
        out.extend_from_slice(&a.to_le_bytes());
    }
    put_u64(&mut out, e.report.len() as u64);
    out.extend_from_slice(e.report.as_bytes());
    out
}

struct Reader<'a>(&'a [u8]);

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Option<&[u8]> {
        if self.0.len() < n {
            return None;
        }
        let (head, tail) = self.0.split_at(n);
        self.0 = tail;
        Some(head)
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|b| u32::from_le_bytes(b.try_into().unwrap()))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8).map(|b| u64::from_le_bytes(b.try_into().unwrap()))
    }

    fn string(&mut self, n: usize) -> Option<String> {
        self.take(n).and_then(|b| String::from_utf8(b.to_vec()).ok())
    }
}

/// `None` for anything truncated, foreign or from another version.
pub fn decode(bytes: &[u8]) -> Option<Entry> {
    let mut r = Reader(bytes);
    if r.take(8)? != MAGIC || r.u32()? != VERSION {
        return None;
    }
    let lambda = r.u64()?;
    let n_max = usize::try_from(r.u64()?).ok()?;
    let digits = r.u32()?;
    let plen = r.u32()? as usize;
    let params = r.string(plen)?;
    let raw = r.take(n_max.checked_mul(8)?)?;
    let a = raw.chunks_exact(8).map(|c| i64::from_le_bytes(c.try_into().unwrap())).collect();
    let rlen = usize::try_from(r.u64()?).ok()?;
    let report = r.string(rlen)?;
    if !r.0.is_empty() {
        return None;
    }
    let table = CoefficientTable::from_raw(lambda, a).ok()?;
    Some(Entry { lambda, digits, params, table, report })
}

pub fn load(dir: &Path, lambda: u64, digits: u32) -> io::Result<Option<Entry>> {
    let mut buf = Vec::new();
    match fs::File::open(path_for(dir, lambda, digits)) {
        Ok(mut f) => f.read_to_end(&mut buf)?,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(decode(&buf).filter(|e| e.lambda == lambda && e.digits == digits))
}

/// Writes through a temporary file so readers never see a partial entry.
pub fn store(dir: &Path, e: &Entry) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let path = path_for(dir, e.lambda, e.digits);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(e))?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)
}
