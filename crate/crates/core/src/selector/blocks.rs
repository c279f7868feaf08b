use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Observations `x[1], …, x[N+1]`, stored row-major (`p` rows of `N + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBlock {
    p: usize,
    n: usize,
    data: Vec<f64>,
}

impl SampleBlock {
    pub fn from_row_major(p: usize, n: usize, data: Vec<f64>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("p must be positive".into()));
        }
        if data.len() != p * (n + 1) {
            return Err(Error::DimensionMismatch {
                expected: p * (n + 1),
                found: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("sample block contains non-finite values".into()));
        }
        Ok(SampleBlock { p, n, data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let p = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(Error::InvalidInput("sample block needs at least one column".into()));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged sample rows".into()));
        }
        SampleBlock::from_row_major(p, cols - 1, rows.concat())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `N`; the block holds `N + 1` columns.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.n + 1
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols()..(r + 1) * self.cols()]
    }

    pub fn get(&self, r: usize, t: usize) -> f64 {
        self.data[r * self.cols() + t]
    }

    /// Row `r` of the result is row `perm[r]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.p {
            return Err(Error::DimensionMismatch {
                expected: self.p,
                found: perm.len(),
            });
        }
        let rows = perm.iter().map(|&r| self.row(r).to_vec()).collect();
        SampleBlock::from_rows(rows)
    }

    pub fn negate_row(&mut self, r: usize) {
        let cols = self.cols();
        self.data[r * cols..(r + 1) * cols]
            .iter_mut()
            .for_each(|v| *v = -*v);
    }

    /// CSV layout: a `p,N` header, then `N + 1` lines of `p` values, time
    /// running down the rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{},{}", self.p, self.n)?;
        let mut line = String::new();
        for t in 0..self.cols() {
            line.clear();
            for r in 0..self.p {
                if r > 0 {
                    line.push(',');
                }
                write!(line, "{}", self.get(r, t)).expect("writing to a String cannot fail");
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty sample file".into()))??;
        let dims: Vec<usize> = header
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("header `{header}`: {e}")))?;
        let [p, n] = dims[..] else {
            return Err(Error::Parse(format!("header `{header}` is not `p,N`")));
        };
        let mut rows = vec![Vec::with_capacity(n + 1); p];
        let mut count = 0;
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let values: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", i + 2)))?;
            if values.len() != p {
                return Err(Error::Parse(format!(
                    "line {} has {} values, expected {p}",
                    i + 2,
                    values.len()
                )));
            }
            for (row, v) in rows.iter_mut().zip(values) {
                row.push(v);
            }
            count += 1;
        }
        if count != n + 1 {
            return Err(Error::Parse(format!("expected {} sample lines, found {count}", n + 1)));
        }
        SampleBlock::from_rows(rows)
    }
}

/// Mirror-extended observations `x̃[1], …, x̃[2N]`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedBlock {
    p: usize,
    len: usize,
    data: Vec<f64>,
}

impl ExtendedBlock {
    pub fn p(&self) -> usize {
        self.p
    }

    /// `2N`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.len..(r + 1) * self.len]
    }
}

/// `x̃[n] = x[n]` for `n ≤ N+1` and `x̃[n] = x[2N − n + 2]` beyond (1-based).
pub fn mirror_extend(x: &SampleBlock) -> Result<ExtendedBlock> {
    let n = x.n();
    if n == 0 {
        return Err(Error::InvalidInput(
            "mirror extension needs at least two observations (N >= 1)".into(),
        ));
    }
    let len = 2 * n;
    let mut data = Vec::with_capacity(x.p() * len);
    for r in 0..x.p() {
        let row = x.row(r);
        data.extend_from_slice(row);
        // 0-based: x̃[i] = x[2N - i] for i = N+1 .. 2N-1.
        data.extend((n + 1..len).map(|i| row[len - i]));
    }
    Ok(ExtendedBlock {
        p: x.p(),
        len,
        data,
    })
}

/// Unitary DFT of each extended row; real because the rows are mirror
/// symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumBlock {
    p: usize,
    len: usize,
    data: Vec<f64>,
}

impl SpectrumBlock {
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of bins, `2N`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.len..(r + 1) * self.len]
    }
}

/// Imaginary residue allowed relative to the row norm.
const IMAG_TOL: f64 = 1e-9;

/// `x̂[k] = (1/√(2N)) Σ_n x̃[n] exp(−j2π(k−1)(n−1)/(2N))` per row.
pub fn dft_rows(ext: &ExtendedBlock) -> Result<SpectrumBlock> {
    let len = ext.len;
    let fft = FftPlanner::<f64>::new().plan_fft_forward(len);
    let scale = 1.0 / (len as f64).sqrt();
    let mut buf = vec![Complex::new(0.0, 0.0); len];
    let mut scratch = vec![Complex::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mut data = Vec::with_capacity(ext.p * len);
    for r in 0..ext.p {
        let row = ext.row(r);
        for (b, &v) in buf.iter_mut().zip(row) {
            *b = Complex::new(v, 0.0);
        }
        fft.process_with_scratch(&mut buf, &mut scratch);
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        let residue = buf.iter().fold(0.0_f64, |m, c| m.max(c.im.abs())) * scale;
        if residue > IMAG_TOL * norm.max(f64::MIN_POSITIVE) {
            return Err(Error::Invariant(format!(
                "row {r}: imaginary DFT residue {residue:e} for row norm {norm:e}; \
                 the extension is not mirror symmetric"
            )));
        }
        data.extend(buf.iter().map(|c| c.re * scale));
    }
    Ok(SpectrumBlock {
        p: ext.p,
        len,
        data,
    })
}
