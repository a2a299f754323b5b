//! Binary cache of per-curve Frobenius data.
//!
//! Layout (little-endian): the magic `HWCACHE1`, q as u32, n as u32, the record
//! count as u64, then per record `[n: u32][n + 1 coefficients of d as u32,
//! ascending][c_1..c_{2g} as i64]`.

use std::io::{Read, Write};
use std::path::Path;

use super::{frobenius_data, CurveData, FqContext, FqPoly};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"HWCACHE1";

pub fn write<W: Write>(mut w: W, q: u32, n: u32, curves: &[CurveData]) -> Result<()> {
    let io = |e: std::io::Error| Error::Cache(e.to_string());
    let mut buf = Vec::with_capacity(24 + curves.len() * (8 * n as usize + 8));
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&q.to_le_bytes());
    buf.extend_from_slice(&n.to_le_bytes());
    buf.extend_from_slice(&(curves.len() as u64).to_le_bytes());
    for c in curves {
        if c.degree() as u32 != n || c.q != q {
            return Err(Error::Cache(format!("record {} does not belong to (q, n) = ({q}, {n})", c.d)));
        }
        buf.extend_from_slice(&n.to_le_bytes());
        for &x in c.d.coeffs() {
            buf.extend_from_slice(&x.to_le_bytes());
        }
        for &x in &c.charpoly[1..] {
            buf.extend_from_slice(&x.to_le_bytes());
        }
    }
    w.write_all(&buf).map_err(io)
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N]> {
        let end = self.pos + N;
        let s = self.data.get(self.pos..end).ok_or_else(|| Error::Cache("truncated file".into()))?;
        self.pos = end;
        Ok(s.try_into().unwrap())
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take()?))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take()?))
    }
    fn i64(&mut self) -> Result<i64> {
        Ok(i64::from_le_bytes(self.take()?))
    }
}

pub fn read<R: Read>(mut r: R, q: u32, n: u32) -> Result<Vec<CurveData>> {
    let mut data = Vec::new();
    r.read_to_end(&mut data).map_err(|e| Error::Cache(e.to_string()))?;
    let mut c = Cursor { data: &data, pos: 0 };
    if &c.take::<8>()? != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let (fq, fnn) = (c.u32()?, c.u32()?);
    if (fq, fnn) != (q, n) {
        return Err(Error::Cache(format!("cache holds (q, n) = ({fq}, {fnn}), wanted ({q}, {n})")));
    }
    let count = c.u64()?;
    let g = (n.max(1) as usize - 1) / 2;
    let mut out = Vec::with_capacity(count as usize);
    for _ in 0..count {
        if c.u32()? != n {
            return Err(Error::Cache("record degree mismatch".into()));
        }
        let coeffs = (0..=n).map(|_| c.u32()).collect::<Result<Vec<_>>>()?;
        let mut charpoly = vec![1i64];
        for _ in 0..2 * g {
            charpoly.push(c.i64()?);
        }
        let d = FqPoly::new(coeffs);
        let counts = Vec::new();
        out.push(CurveData { q, d, genus: g, counts, charpoly });
    }
    if c.pos != data.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    Ok(out)
}

/// Frobenius data for every monic squarefree d of degree n, in enumeration
/// order, reading from and writing to `path` when one is given. Point counts
/// are not stored, so curves loaded from a cache have `counts` empty.
pub fn load_or_compute(ctx: &FqContext, n: usize, path: Option<&Path>) -> Result<Vec<CurveData>> {
    if let Some(p) = path {
        if p.exists() {
            let f = std::fs::File::open(p).map_err(|e| Error::Cache(e.to_string()))?;
            return read(std::io::BufReader::new(f), ctx.q(), n as u32);
        }
    }
    let polys: Vec<FqPoly> = super::enumerate_squarefree(ctx, n)?.collect();
    let curves = crate::exec::map(&polys, |d| frobenius_data(ctx, d)).into_iter().collect::<Result<Vec<_>>>()?;
    if let Some(p) = path {
        let f = std::fs::File::create(p).map_err(|e| Error::Cache(e.to_string()))?;
        write(std::io::BufWriter::new(f), ctx.q(), n as u32, &curves)?;
    }
    Ok(curves)
}
