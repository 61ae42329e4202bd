//! Dense matrices over GF(p).
//!
//! General moduli store one `u32` per entry and multiply with lazily reduced
//! `u64` accumulators. For p = 2 rows are bit-packed into `u64` words and
//! row operations become XOR.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{PrimeModulus, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    Words(Vec<u32>),
    /// Row-major bits, `stride` words per row, padding bits always zero.
    Bits {
        stride: usize,
        words: Vec<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    modulus: PrimeModulus,
    data: Storage,
}

fn stride_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl GfMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: PrimeModulus) -> Self {
        let data = if modulus.is_two() {
            let stride = stride_for(cols);
            Storage::Bits {
                stride,
                words: vec![0; stride * rows],
            }
        } else {
            Storage::Words(vec![0; rows * cols])
        };
        GfMatrix {
            rows,
            cols,
            modulus,
            data,
        }
    }

    pub fn identity(n: usize, modulus: PrimeModulus) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize, modulus: PrimeModulus) -> Self {
        Self::from_fn(rows, cols, modulus, |_, _| 1)
    }

    /// Builds a matrix from integer entries, reducing each mod p.
    pub fn from_fn(rows: usize, cols: usize, modulus: PrimeModulus, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(rows, cols, modulus);
        for r in 0..rows {
            for c in 0..cols {
                let v = modulus.scalar(f(r, c));
                if !v.is_zero() {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>], modulus: PrimeModulus) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Format("ragged rows".into()));
        }
        Ok(Self::from_fn(r, c, modulus, |i, j| rows[i][j]))
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        match &self.data {
            Storage::Words(w) => Scalar(w[r * self.cols + c]),
            Storage::Bits { stride, words } => Scalar(((words[r * stride + c / 64] >> (c % 64)) & 1) as u32),
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(r < self.rows && c < self.cols && v.0 < self.modulus.value());
        let cols = self.cols;
        match &mut self.data {
            Storage::Words(w) => w[r * cols + c] = v.0,
            Storage::Bits { stride, words } => {
                let word = &mut words[r * *stride + c / 64];
                let bit = 1u64 << (c % 64);
                if v.0 == 1 {
                    *word |= bit;
                } else {
                    *word &= !bit;
                }
            }
        }
    }

    /// Entries of row `r` as integers.
    pub fn row_values(&self, r: usize) -> Vec<u32> {
        (0..self.cols).map(|c| self.get(r, c).0).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Words(w) => w.iter().all(|&x| x == 0),
            Storage::Bits { words, .. } => words.iter().all(|&x| x == 0),
        }
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        match &self.data {
            Storage::Words(w) => w[r * self.cols..(r + 1) * self.cols].iter().all(|&x| x == 0),
            Storage::Bits { stride, words } => words[r * stride..(r + 1) * stride].iter().all(|&x| x == 0),
        }
    }

    /// Indices of rows holding at least one nonzero entry.
    pub fn nonzero_rows(&self) -> Vec<u32> {
        (0..self.rows)
            .filter(|&r| !self.row_is_zero(r))
            .map(|r| r as u32)
            .collect()
    }

    /// Per column, whether any entry is nonzero.
    pub fn nonzero_cols(&self) -> Vec<bool> {
        let mut out = vec![false; self.cols];
        for r in 0..self.rows {
            for c in self.row_support(r) {
                out[c] = true;
            }
        }
        out
    }

    fn row_support(&self, r: usize) -> Vec<usize> {
        match &self.data {
            Storage::Words(w) => {
                let row = &w[r * self.cols..(r + 1) * self.cols];
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(c, _)| c)
                    .collect()
            }
            Storage::Bits { stride, words } => {
                let mut out = Vec::new();
                for (wi, &word) in words[r * stride..(r + 1) * stride].iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        out.push(wi * 64 + bits.trailing_zeros() as usize);
                        bits &= bits - 1;
                    }
                }
                out
            }
        }
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        match &self.data {
            Storage::Words(w) => w.iter().filter(|&&x| x != 0).count(),
            Storage::Bits { words, .. } => words.iter().map(|w| w.count_ones() as usize).sum(),
        }
    }

    fn check_same(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                op,
                left: self.modulus.value(),
                right: other.modulus.value(),
            });
        }
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// `self += coeff * other`.
    pub fn axpy(&mut self, coeff: Scalar, other: &Self) -> Result<()> {
        self.check_same(other, "axpy")?;
        self.axpy_rows(coeff, other, None);
        Ok(())
    }

    /// `self += coeff * other`, restricted to the listed rows when given.
    /// Shapes must already agree.
    pub(crate) fn axpy_rows(&mut self, coeff: Scalar, other: &Self, rows: Option<&[u32]>) {
        if coeff.is_zero() {
            return;
        }
        let m = self.modulus;
        let cols = self.cols;
        match (&mut self.data, &other.data) {
            (Storage::Words(a), Storage::Words(b)) => {
                let c = coeff.0 as u64;
                let mut apply = |lo: usize, hi: usize| {
                    for (x, &y) in a[lo..hi].iter_mut().zip(&b[lo..hi]) {
                        if y != 0 {
                            *x = m.reduce_u64(*x as u64 + c * y as u64);
                        }
                    }
                };
                match rows {
                    Some(rs) => rs
                        .iter()
                        .for_each(|&r| apply(r as usize * cols, (r as usize + 1) * cols)),
                    None => {
                        let len = b.len();
                        apply(0, len)
                    }
                }
            }
            (Storage::Bits { stride, words: a }, Storage::Bits { words: b, .. }) => {
                let stride = *stride;
                let mut apply = |lo: usize, hi: usize| {
                    for (x, &y) in a[lo..hi].iter_mut().zip(&b[lo..hi]) {
                        *x ^= y;
                    }
                };
                match rows {
                    Some(rs) => rs
                        .iter()
                        .for_each(|&r| apply(r as usize * stride, (r as usize + 1) * stride)),
                    None => {
                        let len = b.len();
                        apply(0, len)
                    }
                }
            }
            _ => unreachable!("storage follows modulus"),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(Scalar::ONE, other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(self.modulus.neg(Scalar::ONE), other)?;
        Ok(out)
    }

    pub fn scale(&mut self, coeff: Scalar) {
        let m = self.modulus;
        match &mut self.data {
            Storage::Words(w) => {
                for x in w.iter_mut() {
                    *x = m.mul(Scalar(*x), coeff).0;
                }
            }
            Storage::Bits { words, .. } => {
                if coeff.is_zero() {
                    words.iter_mut().for_each(|x| *x = 0);
                }
            }
        }
    }

    pub fn scaled(&self, coeff: Scalar) -> Self {
        let mut out = self.clone();
        out.scale(coeff);
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.modulus);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Zeroes every row whose flag is false (left multiplication by a
    /// diagonal 0/1 matrix).
    pub fn mask_rows(&mut self, keep: &[bool]) {
        let cols = self.cols;
        match &mut self.data {
            Storage::Words(w) => {
                for (r, row) in w.chunks_mut(cols.max(1)).enumerate() {
                    if !keep[r] {
                        row.iter_mut().for_each(|x| *x = 0);
                    }
                }
            }
            Storage::Bits { stride, words } => {
                for (r, row) in words.chunks_mut((*stride).max(1)).enumerate() {
                    if !keep[r] {
                        row.iter_mut().for_each(|x| *x = 0);
                    }
                }
            }
        }
    }

    /// Zeroes every column whose flag is false (right multiplication by a
    /// diagonal 0/1 matrix).
    pub fn mask_cols(&mut self, keep: &[bool]) {
        let cols = self.cols;
        match &mut self.data {
            Storage::Words(w) => {
                for row in w.chunks_mut(cols.max(1)) {
                    for (x, &k) in row.iter_mut().zip(keep) {
                        if !k {
                            *x = 0;
                        }
                    }
                }
            }
            Storage::Bits { stride, words } => {
                let mut mask = vec![0u64; *stride];
                for (c, &k) in keep.iter().enumerate() {
                    if k {
                        mask[c / 64] |= 1 << (c % 64);
                    }
                }
                for row in words.chunks_mut((*stride).max(1)) {
                    for (x, &mk) in row.iter_mut().zip(&mask) {
                        *x &= mk;
                    }
                }
            }
        }
    }

    /// `self * J`: every entry of row r becomes the sum of row r.
    pub fn times_all_ones(&self, cols: usize) -> Self {
        let m = self.modulus;
        let mut out = Self::zeros(self.rows, cols, m);
        for r in 0..self.rows {
            let s = match &self.data {
                Storage::Words(w) => {
                    m.reduce_u64(w[r * self.cols..(r + 1) * self.cols].iter().map(|&x| x as u64).sum())
                }
                Storage::Bits { .. } => (self.row_support(r).len() % 2) as u32,
            };
            if s != 0 {
                for c in 0..cols {
                    out.set(r, c, Scalar(s));
                }
            }
        }
        out
    }

    /// Exact product `self * other`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                op: "mat_mul",
                left: self.modulus.value(),
                right: other.modulus.value(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(match (&self.data, &other.data) {
            (Storage::Words(a), Storage::Words(b)) => self.mul_words(a, other, b),
            (Storage::Bits { stride: sa, words: a }, Storage::Bits { stride: sb, words: b }) => {
                self.mul_bits(*sa, a, other, *sb, b)
            }
            _ => unreachable!("storage follows modulus"),
        })
    }

    fn mul_words(&self, a: &[u32], other: &Self, b: &[u32]) -> Self {
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let modulus = self.modulus;
        let max_terms = modulus.max_lazy_terms();
        // Column window of each row of `b`; empty rows are skipped outright.
        let ranges: Vec<(usize, usize)> = (0..k)
            .map(|r| {
                let row = &b[r * m..(r + 1) * m];
                match row.iter().position(|&x| x != 0) {
                    None => (0, 0),
                    Some(lo) => (lo, m - row.iter().rev().position(|&x| x != 0).unwrap()),
                }
            })
            .collect();
        let mut out = vec![0u32; n * m];
        out.par_chunks_mut(m.max(1)).enumerate().for_each(|(i, out_row)| {
            let a_row = &a[i * k..(i + 1) * k];
            let mut acc: Vec<u64> = Vec::new();
            let (mut lo_all, mut hi_all) = (m, 0);
            let mut terms = 0usize;
            for (kk, &x) in a_row.iter().enumerate() {
                let (lo, hi) = ranges[kk];
                if x == 0 || lo == hi {
                    continue;
                }
                if acc.is_empty() {
                    acc = vec![0u64; m];
                }
                if terms == max_terms {
                    for v in &mut acc[lo_all..hi_all] {
                        *v = modulus.reduce_u64(*v) as u64;
                    }
                    terms = 1;
                }
                let x = x as u64;
                for (v, &y) in acc[lo..hi].iter_mut().zip(&b[kk * m + lo..kk * m + hi]) {
                    *v += x * y as u64;
                }
                terms += 1;
                lo_all = lo_all.min(lo);
                hi_all = hi_all.max(hi);
            }
            if !acc.is_empty() {
                for j in lo_all..hi_all {
                    out_row[j] = modulus.reduce_u64(acc[j]);
                }
            }
        });
        GfMatrix {
            rows: n,
            cols: m,
            modulus,
            data: Storage::Words(out),
        }
    }

    fn mul_bits(&self, sa: usize, a: &[u64], other: &Self, sb: usize, b: &[u64]) -> Self {
        let (n, m) = (self.rows, other.cols);
        let mut out = vec![0u64; n * sb];
        out.par_chunks_mut(sb.max(1)).enumerate().for_each(|(i, out_row)| {
            for (wi, &word) in a[i * sa..(i + 1) * sa].iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let kk = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (o, &y) in out_row.iter_mut().zip(&b[kk * sb..(kk + 1) * sb]) {
                        *o ^= y;
                    }
                }
            }
        });
        GfMatrix {
            rows: n,
            cols: m,
            modulus: self.modulus,
            data: Storage::Bits { stride: sb, words: out },
        }
    }

    /// Column sums.
    pub fn column_sums(&self) -> Vec<Scalar> {
        let m = self.modulus;
        match &self.data {
            Storage::Words(w) => {
                let mut acc = vec![0u64; self.cols];
                let max_terms = m.max_lazy_terms().max(1);
                for (r, row) in w.chunks(self.cols.max(1)).enumerate() {
                    if r > 0 && r % max_terms == 0 {
                        acc.iter_mut().for_each(|x| *x = m.reduce_u64(*x) as u64);
                    }
                    for (a, &x) in acc.iter_mut().zip(row) {
                        *a += x as u64;
                    }
                }
                acc.into_iter().map(|x| Scalar(m.reduce_u64(x))).collect()
            }
            Storage::Bits { stride, words } => {
                let mut acc = vec![0u64; *stride];
                for row in words.chunks((*stride).max(1)) {
                    for (a, &x) in acc.iter_mut().zip(row) {
                        *a ^= x;
                    }
                }
                (0..self.cols)
                    .map(|c| Scalar(((acc[c / 64] >> (c % 64)) & 1) as u32))
                    .collect()
            }
        }
    }

    /// Row sums.
    pub fn row_sums(&self) -> Vec<Scalar> {
        let m = self.modulus;
        (0..self.rows)
            .map(|r| match &self.data {
                Storage::Words(w) => {
                    Scalar(m.reduce_u64(w[r * self.cols..(r + 1) * self.cols].iter().map(|&x| x as u64).sum()))
                }
                Storage::Bits { stride, words } => Scalar(
                    words[r * stride..(r + 1) * stride]
                        .iter()
                        .map(|x| x.count_ones())
                        .sum::<u32>()
                        % 2,
                ),
            })
            .collect()
    }

    /// Square matrix whose kept rows all equal `row`.
    pub(crate) fn broadcast_row(row: &[Scalar], keep: Option<&[bool]>, modulus: PrimeModulus) -> Self {
        let n = row.len();
        let mut out = Self::zeros(n, n, modulus);
        for r in 0..n {
            if keep.map_or(true, |k| k[r]) {
                for (c, &v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    /// Square matrix whose entry `(r, c)` is `col[r]`.
    pub(crate) fn broadcast_col(col: &[Scalar], modulus: PrimeModulus) -> Self {
        let n = col.len();
        let mut out = Self::zeros(n, n, modulus);
        for (r, &v) in col.iter().enumerate() {
            if !v.is_zero() {
                for c in 0..n {
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// `A * self` where the 0/1 matrix `A` has row `i` supported on
    /// `nbrs[i*deg..(i+1)*deg]`. Only rows flagged in `keep` are formed.
    pub(crate) fn left_neighbour_sum(&self, nbrs: &[u32], deg: usize, keep: Option<&[bool]>) -> Self {
        let n = self.rows;
        let modulus = self.modulus;
        let mut out = Self::zeros(n, self.cols, modulus);
        let live: Vec<bool> = (0..n).map(|r| !self.row_is_zero(r)).collect();
        let cols = self.cols;
        match (&mut out.data, &self.data) {
            (Storage::Words(o), Storage::Words(x)) => {
                let max_terms = modulus.max_lazy_terms().max(1);
                let mut acc = vec![0u64; cols];
                for i in 0..n {
                    if keep.is_some_and(|k| !k[i]) {
                        continue;
                    }
                    let mut terms = 0;
                    for &k in &nbrs[i * deg..(i + 1) * deg] {
                        let k = k as usize;
                        if !live[k] {
                            continue;
                        }
                        if terms == max_terms {
                            acc.iter_mut().for_each(|v| *v = modulus.reduce_u64(*v) as u64);
                            terms = 1;
                        }
                        terms += 1;
                        for (a, &y) in acc.iter_mut().zip(&x[k * cols..(k + 1) * cols]) {
                            *a += y as u64;
                        }
                    }
                    if terms > 0 {
                        for (dst, a) in o[i * cols..(i + 1) * cols].iter_mut().zip(acc.iter_mut()) {
                            *dst = modulus.reduce_u64(*a);
                            *a = 0;
                        }
                    }
                }
            }
            (Storage::Bits { stride, words: o }, Storage::Bits { words: x, .. }) => {
                let s = *stride;
                for i in 0..n {
                    if keep.is_some_and(|k| !k[i]) {
                        continue;
                    }
                    for &k in &nbrs[i * deg..(i + 1) * deg] {
                        let k = k as usize;
                        if !live[k] {
                            continue;
                        }
                        for (a, &y) in o[i * s..(i + 1) * s].iter_mut().zip(&x[k * s..(k + 1) * s]) {
                            *a ^= y;
                        }
                    }
                }
            }
            _ => unreachable!("storage follows modulus"),
        }
        out
    }

    /// `self * A` for a symmetric 0/1 matrix `A` given as in
    /// [`Self::left_neighbour_sum`].
    pub(crate) fn right_neighbour_sum(&self, nbrs: &[u32], deg: usize) -> Self {
        let n = self.rows;
        let modulus = self.modulus;
        let cols = self.cols;
        let mut out = Self::zeros(n, cols, modulus);
        match (&mut out.data, &self.data) {
            (Storage::Words(o), Storage::Words(x)) => {
                let max_terms = modulus.max_lazy_terms().max(1);
                let mut acc = vec![0u64; cols];
                for i in 0..n {
                    let row = &x[i * cols..(i + 1) * cols];
                    let mut terms = 0;
                    for (k, &v) in row.iter().enumerate() {
                        if v == 0 {
                            continue;
                        }
                        if terms == max_terms {
                            acc.iter_mut().for_each(|a| *a = modulus.reduce_u64(*a) as u64);
                            terms = 1;
                        }
                        terms += 1;
                        for &j in &nbrs[k * deg..(k + 1) * deg] {
                            acc[j as usize] += v as u64;
                        }
                    }
                    if terms > 0 {
                        for (dst, a) in o[i * cols..(i + 1) * cols].iter_mut().zip(acc.iter_mut()) {
                            *dst = modulus.reduce_u64(*a);
                            *a = 0;
                        }
                    }
                }
            }
            (Storage::Bits { stride, words: o }, Storage::Bits { words: x, .. }) => {
                let s = *stride;
                for i in 0..n {
                    for wi in 0..s {
                        let mut bits = x[i * s + wi];
                        while bits != 0 {
                            let k = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            for &j in &nbrs[k * deg..(k + 1) * deg] {
                                let j = j as usize;
                                o[i * s + j / 64] ^= 1 << (j % 64);
                            }
                        }
                    }
                }
            }
            _ => unreachable!("storage follows modulus"),
        }
        out
    }

    /// Flattened row-major index of the first nonzero entry.
    pub(crate) fn first_nonzero(&self) -> Option<usize> {
        match &self.data {
            Storage::Words(w) => w.iter().position(|&x| x != 0),
            Storage::Bits { stride, words } => {
                let wi = words.iter().position(|&x| x != 0)?;
                let (r, c) = (wi / stride, (wi % stride) * 64);
                Some(r * self.cols + c + words[wi].trailing_zeros() as usize)
            }
        }
    }

    #[inline]
    pub(crate) fn get_flat(&self, idx: usize) -> Scalar {
        self.get(idx / self.cols, idx % self.cols)
    }

    /// Renders the text dump: a `rows cols p` header, then one line per row.
    pub fn to_dump_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.rows, self.cols, self.modulus.value());
        for r in 0..self.rows {
            let line: Vec<String> = self.row_values(r).iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn write_dump(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(self.to_dump_string().as_bytes())?;
        Ok(())
    }

    /// Parses the text dump written by [`GfMatrix::write_dump`].
    pub fn read_dump(r: impl BufRead) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::Format("empty dump".into()))??;
        let dims: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|e| Error::Format(format!("header: {e}"))))
            .collect::<Result<_>>()?;
        let [rows, cols, p] = dims[..] else {
            return Err(Error::Format("header must be `rows cols p`".into()));
        };
        let modulus = PrimeModulus::new(p)?;
        let mut out = Self::zeros(rows as usize, cols as usize, modulus);
        for r in 0..rows as usize {
            let line = lines
                .next()
                .ok_or_else(|| Error::Format(format!("missing row {r}")))??;
            let vals: Vec<u64> = line
                .split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|e| Error::Format(format!("row {r}: {e}"))))
                .collect::<Result<_>>()?;
            if vals.len() != cols as usize {
                return Err(Error::Format(format!("row {r} has {} entries", vals.len())));
            }
            for (c, &v) in vals.iter().enumerate() {
                if v >= p {
                    return Err(Error::Format(format!("entry ({r},{c}) = {v} is not reduced")));
                }
                out.set(r, c, Scalar(v as u32));
            }
        }
        Ok(out)
    }
}

/// Least `k <= bound` with `m^k = O`, found by repeated squaring and a final
/// linear pass.
pub fn nilpotency_index(m: &GfMatrix, bound: usize) -> Result<Option<usize>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            op: "nilpotency_index",
            left: m.shape(),
            right: m.shape(),
        });
    }
    if bound == 0 {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(1));
    }
    let mut e = 1usize;
    let mut power = m.clone();
    while e < bound {
        let sq = power.mat_mul(&power)?;
        if sq.is_zero() {
            break;
        }
        power = sq;
        e *= 2;
    }
    // power = m^e is nonzero; step up one factor at a time.
    while e < bound {
        power = power.mat_mul(m)?;
        e += 1;
        if power.is_zero() {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Row-sparse matrix used for the 0/1 generators during closure.
#[derive(Clone, Debug)]
pub struct SparseRows {
    rows: usize,
    cols: usize,
    modulus: PrimeModulus,
    offsets: Vec<usize>,
    entries: Vec<(u32, u32)>,
}

impl SparseRows {
    pub fn from_dense(m: &GfMatrix) -> Self {
        let mut offsets = Vec::with_capacity(m.rows + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for r in 0..m.rows {
            for c in m.row_support(r) {
                entries.push((c as u32, m.get(r, c).0));
            }
            offsets.push(entries.len());
        }
        SparseRows {
            rows: m.rows,
            cols: m.cols,
            modulus: m.modulus,
            offsets,
            entries,
        }
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[(u32, u32)] {
        &self.entries[self.offsets[r]..self.offsets[r + 1]]
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn to_dense(&self) -> GfMatrix {
        let mut m = GfMatrix::zeros(self.rows, self.cols, self.modulus);
        for r in 0..self.rows {
            for &(c, v) in self.row(r) {
                m.set(r, c as usize, Scalar(v));
            }
        }
        m
    }

    /// `a * self`.
    pub fn left_mul(&self, a: &GfMatrix) -> GfMatrix {
        assert_eq!(a.cols, self.rows);
        let modulus = self.modulus;
        let mut out = GfMatrix::zeros(a.rows, self.cols, modulus);
        let mut acc = vec![0u64; self.cols];
        for i in 0..a.rows {
            if a.row_is_zero(i) {
                continue;
            }
            let mut touched = false;
            let max_terms = modulus.max_lazy_terms();
            let mut terms = 0usize;
            for k in a.row_support(i) {
                let row = self.row(k);
                if row.is_empty() {
                    continue;
                }
                if terms == max_terms {
                    acc.iter_mut().for_each(|v| *v = modulus.reduce_u64(*v) as u64);
                    terms = 1;
                }
                terms += 1;
                let x = a.get(i, k).0 as u64;
                for &(c, v) in row {
                    acc[c as usize] += x * v as u64;
                }
                touched = true;
            }
            if touched {
                for (c, v) in acc.iter_mut().enumerate() {
                    if *v != 0 {
                        out.set(i, c, Scalar(modulus.reduce_u64(*v)));
                        *v = 0;
                    }
                }
            }
        }
        out
    }

    /// `self * b`.
    pub fn right_mul(&self, b: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, b.rows);
        let modulus = self.modulus;
        let mut out = GfMatrix::zeros(self.rows, b.cols, modulus);
        let nonzero: Vec<bool> = (0..b.rows).map(|r| !b.row_is_zero(r)).collect();
        for i in 0..self.rows {
            let live: Vec<(u32, u32)> = self
                .row(i)
                .iter()
                .copied()
                .filter(|&(k, _)| nonzero[k as usize])
                .collect();
            if live.is_empty() {
                continue;
            }
            match (&mut out.data, &b.data) {
                (Storage::Words(o), Storage::Words(bw)) => {
                    let m = b.cols;
                    let mut acc = vec![0u64; m];
                    let max_terms = modulus.max_lazy_terms();
                    for (t, &(k, v)) in live.iter().enumerate() {
                        if t > 0 && t % max_terms == 0 {
                            acc.iter_mut().for_each(|x| *x = modulus.reduce_u64(*x) as u64);
                        }
                        let k = k as usize;
                        for (x, &y) in acc.iter_mut().zip(&bw[k * m..(k + 1) * m]) {
                            *x += v as u64 * y as u64;
                        }
                    }
                    for (o, &x) in o[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                        *o = modulus.reduce_u64(x);
                    }
                }
                (Storage::Bits { stride, words: o }, Storage::Bits { words: bw, .. }) => {
                    let s = *stride;
                    for &(k, _) in &live {
                        let k = k as usize;
                        for (x, &y) in o[i * s..(i + 1) * s].iter_mut().zip(&bw[k * s..(k + 1) * s]) {
                            *x ^= y;
                        }
                    }
                }
                _ => unreachable!("storage follows modulus"),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn naive_mul(a: &GfMatrix, b: &GfMatrix) -> GfMatrix {
        let p = a.modulus().value() as u64;
        GfMatrix::from_fn(a.n_rows(), b.n_cols(), a.modulus(), |i, j| {
            (0..a.n_cols())
                .map(|k| a.get(i, k).0 as u64 * b.get(k, j).0 as u64 % p)
                .sum()
        })
    }

    fn random(rows: usize, cols: usize, m: PrimeModulus, density: f64, rng: &mut ChaCha8Rng) -> GfMatrix {
        let p = m.value();
        GfMatrix::from_fn(rows, cols, m, |_, _| {
            if rng.gen_bool(density) {
                rng.gen_range(0..p) as u64
            } else {
                0
            }
        })
    }

    #[test]
    fn product_matches_naive_across_moduli() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5, 7, 65521, 2147483647] {
            for (r, k, c) in [(1, 1, 1), (3, 5, 2), (16, 16, 16), (7, 70, 65)] {
                let a = random(r, k, gf(p), 0.6, &mut rng);
                let b = random(k, c, gf(p), 0.6, &mut rng);
                assert_eq!(a.mat_mul(&b).unwrap(), naive_mul(&a, &b), "p={p} {r}x{k}x{c}");
            }
        }
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = gf(5);
        let a = random(16, 16, m, 1.0, &mut rng);
        let i = GfMatrix::identity(16, m);
        assert_eq!(i.mat_mul(&a).unwrap(), a);
        assert_eq!(a.mat_mul(&i).unwrap(), a);
    }

    #[test]
    fn all_ones_squares_to_multiple() {
        for p in [2u64, 3, 5, 7] {
            let m = gf(p);
            let j = GfMatrix::ones(16, 16, m);
            let jj = j.mat_mul(&j).unwrap();
            assert_eq!(jj, j.scaled(m.scalar(16)));
            if p == 2 {
                assert!(jj.is_zero());
            }
        }
    }

    #[test]
    fn product_errors_are_structured() {
        let a = GfMatrix::zeros(2, 3, gf(5));
        let b = GfMatrix::zeros(2, 3, gf(5));
        assert!(matches!(a.mat_mul(&b), Err(Error::DimensionMismatch { .. })));
        let c = GfMatrix::zeros(3, 3, gf(7));
        assert!(matches!(a.mat_mul(&c), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn transpose_basics() {
        let m = gf(3);
        let i = GfMatrix::identity(5, m);
        assert_eq!(i.transpose(), i);
        let a = GfMatrix::from_rows(&[vec![1, 2, 0], vec![0, 0, 1]], m).unwrap();
        let t = a.transpose();
        assert_eq!(t.shape(), (3, 2));
        assert_eq!(t.get(1, 0), Scalar(2));
    }

    #[test]
    fn nilpotency_examples() {
        let m = gf(5);
        assert_eq!(nilpotency_index(&GfMatrix::zeros(4, 4, m), 4).unwrap(), Some(1));
        assert_eq!(nilpotency_index(&GfMatrix::identity(4, m), 4).unwrap(), None);
        // Shift matrix of size 6 has index 6.
        let shift = GfMatrix::from_fn(6, 6, m, |r, c| (c == r + 1) as u64);
        assert_eq!(nilpotency_index(&shift, 6).unwrap(), Some(6));
        assert_eq!(nilpotency_index(&shift, 5).unwrap(), None);
        for k in 1..=9 {
            let s = GfMatrix::from_fn(k, k, gf(2), |r, c| (c == r + 1) as u64);
            assert_eq!(nilpotency_index(&s, 20).unwrap(), Some(k), "size {k}");
        }
    }

    #[test]
    fn dump_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 7] {
            let a = random(5, 5, gf(p), 0.5, &mut rng);
            let text = a.to_dump_string();
            assert!(text.starts_with(&format!("5 5 {p}\n")));
            let b = GfMatrix::read_dump(text.as_bytes()).unwrap();
            assert_eq!(a, b);
        }
        assert!(GfMatrix::read_dump("2 2 5\n1 9\n0 0\n".as_bytes()).is_err());
        assert!(GfMatrix::read_dump("2 2 4\n1 0\n0 0\n".as_bytes()).is_err());
    }

    #[test]
    fn sparse_products_match_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u64, 5, 2147483647] {
            let a = random(20, 20, gf(p), 0.5, &mut rng);
            let g = random(20, 20, gf(p), 0.1, &mut rng);
            let s = SparseRows::from_dense(&g);
            assert_eq!(s.to_dense(), g);
            assert_eq!(s.left_mul(&a), a.mat_mul(&g).unwrap());
            assert_eq!(s.right_mul(&a), g.mat_mul(&a).unwrap());
        }
    }

    #[test]
    fn masks_and_ones() {
        let m = gf(3);
        let a = GfMatrix::ones(3, 3, m);
        let mut b = a.clone();
        b.mask_rows(&[true, false, true]);
        b.mask_cols(&[false, true, true]);
        assert_eq!(b.nnz(), 4);
        assert_eq!(b.times_all_ones(3).get(0, 0), Scalar(2));
        assert_eq!(b.first_nonzero(), Some(1));
    }

    fn arb_triple(p: u64, n: usize) -> impl Strategy<Value = (GfMatrix, GfMatrix, GfMatrix)> {
        let m = gf(p);
        let cell = proptest::collection::vec(0..p, n * n);
        (cell.clone(), cell.clone(), cell).prop_map(move |(a, b, c)| {
            let mk = |v: Vec<u64>| GfMatrix::from_fn(n, n, m, |i, j| v[i * n + j]);
            (mk(a), mk(b), mk(c))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn associative_distributive_gf2((a, b, c) in arb_triple(2, 9)) {
            let ab = a.mat_mul(&b).unwrap();
            prop_assert_eq!(ab.mat_mul(&c).unwrap(), a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap());
            let bc = b.add(&c).unwrap();
            prop_assert_eq!(a.mat_mul(&bc).unwrap(), ab.add(&a.mat_mul(&c).unwrap()).unwrap());
            prop_assert_eq!(ab.transpose(), b.transpose().mat_mul(&a.transpose()).unwrap());
            prop_assert_eq!(a.transpose().transpose(), a);
        }

        #[test]
        fn associative_distributive_gf7((a, b, c) in arb_triple(7, 8)) {
            let ab = a.mat_mul(&b).unwrap();
            prop_assert_eq!(ab.mat_mul(&c).unwrap(), a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap());
            let bc = b.add(&c).unwrap();
            prop_assert_eq!(a.mat_mul(&bc).unwrap(), ab.add(&a.mat_mul(&c).unwrap()).unwrap());
            prop_assert_eq!(ab.transpose(), b.transpose().mat_mul(&a.transpose()).unwrap());
        }

        #[test]
        fn associative_large_prime((a, b, c) in arb_triple(2147483647, 5)) {
            let ab = a.mat_mul(&b).unwrap();
            prop_assert_eq!(ab.mat_mul(&c).unwrap(), a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap());
            prop_assert_eq!(&ab, &naive_mul(&a, &b));
        }
    }
}
