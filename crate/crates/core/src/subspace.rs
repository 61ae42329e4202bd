//! Canonical reduced row-echelon bases of subspaces of the flattened matrix
//! space.

use crate::error::{Error, Result};
use crate::field::{PrimeModulus, Scalar};
use crate::matrix::GfMatrix;

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    m: GfMatrix,
    // Matrix rows where `m` is nonzero; row operations touch only these.
    support: Vec<u32>,
}

/// A subspace of `rows x cols` matrices stored as its unique RREF basis.
/// Vectors are flattened row-major and pivots are first-nonzero positions.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    shape: (usize, usize),
    modulus: PrimeModulus,
    rows: Vec<Row>,
}

impl PartialEq for SubspaceBasis {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape
            && self.modulus == other.modulus
            && self.rows.len() == other.rows.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.pivot == b.pivot && a.m == b.m)
    }
}

impl Eq for SubspaceBasis {}

fn union_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

impl SubspaceBasis {
    /// The zero subspace of `rows x cols` matrices.
    pub fn new(rows: usize, cols: usize, modulus: PrimeModulus) -> Self {
        SubspaceBasis {
            shape: (rows, cols),
            modulus,
            rows: Vec::new(),
        }
    }

    /// RREF basis of the span of `items`.
    pub fn span<'a>(
        rows: usize,
        cols: usize,
        modulus: PrimeModulus,
        items: impl IntoIterator<Item = &'a GfMatrix>,
    ) -> Result<Self> {
        let mut b = Self::new(rows, cols, modulus);
        for m in items {
            b.insert(m)?;
        }
        Ok(b)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.shape.0 * self.shape.1
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Sorted flattened pivot positions.
    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &GfMatrix> {
        self.rows.iter().map(|r| &r.m)
    }

    pub fn row(&self, i: usize) -> &GfMatrix {
        &self.rows[i].m
    }

    fn check(&self, m: &GfMatrix, op: &'static str) -> Result<()> {
        if m.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                op,
                left: self.modulus.value(),
                right: m.modulus().value(),
            });
        }
        if m.shape() != self.shape {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape,
                right: m.shape(),
            });
        }
        Ok(())
    }

    /// Coordinates of `m` against the basis rows, read off at the pivots.
    /// Meaningful only when `m` lies in the span.
    pub fn pivot_coordinates(&self, m: &GfMatrix) -> Vec<Scalar> {
        self.rows.iter().map(|r| m.get_flat(r.pivot)).collect()
    }

    /// The canonical residue of `m` modulo the subspace (zero at every pivot).
    pub fn reduce(&self, m: &GfMatrix) -> Result<GfMatrix> {
        self.check(m, "reduce")?;
        let mut out = m.clone();
        self.reduce_in_place(&mut out);
        Ok(out)
    }

    fn reduce_in_place(&self, m: &mut GfMatrix) {
        // In RREF no row touches another row's pivot, so all coefficients
        // can be read before any update.
        let coeffs = self.pivot_coordinates(m);
        for (row, c) in self.rows.iter().zip(coeffs) {
            if !c.is_zero() {
                m.axpy_rows(self.modulus.neg(c), &row.m, Some(&row.support));
            }
        }
    }

    /// Exact membership test.
    pub fn contains(&self, m: &GfMatrix) -> Result<bool> {
        Ok(self.reduce(m)?.is_zero())
    }

    /// Adds `m` to the span in place; returns whether the rank grew.
    pub fn insert(&mut self, m: &GfMatrix) -> Result<bool> {
        self.check(m, "rref_extend")?;
        let mut r = m.clone();
        self.reduce_in_place(&mut r);
        let Some(pivot) = r.first_nonzero() else {
            return Ok(false);
        };
        let lead = r.get_flat(pivot);
        r.scale(self.modulus.inv(lead).expect("nonzero pivot"));
        let support = r.nonzero_rows();
        for row in &mut self.rows {
            let c = row.m.get_flat(pivot);
            if !c.is_zero() {
                row.m.axpy_rows(self.modulus.neg(c), &r, Some(&support));
                row.support = union_sorted(&row.support, &support);
            }
        }
        let at = self.rows.partition_point(|x| x.pivot < pivot);
        self.rows.insert(at, Row { pivot, m: r, support });
        Ok(true)
    }

    /// Functional form of [`SubspaceBasis::insert`].
    pub fn rref_extend(&self, m: &GfMatrix) -> Result<(SubspaceBasis, bool)> {
        let mut out = self.clone();
        let grew = out.insert(m)?;
        Ok((out, grew))
    }

    /// Whether every basis row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> Result<bool> {
        for r in self.rows() {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Span of `self` together with `other`.
    pub fn join(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        let mut out = self.clone();
        for r in other.rows() {
            out.insert(r)?;
        }
        Ok(out)
    }
}
