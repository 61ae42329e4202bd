//! The Terwilliger algebra as a span of matrices plus its structure
//! constants.
//!
//! Once the span is known to be closed under multiplication, a product of two
//! basis elements is determined by its entries at the RREF pivots, so the
//! structure constants cost one dot product per pivot. Every later question
//! (ideals, nilpotency, matrix units, corners) is then answered in the
//! coordinate space of dimension `dim T`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::context::TerwilligerContext;
use crate::error::{Error, Result};
use crate::expr::{AlgExpr, Atom};
use crate::field::{PrimeModulus, Scalar};
use crate::matrix::GfMatrix;
use crate::scheme::{CLASSES, DEFAULT_SEED};
use crate::subspace::SubspaceBasis;

/// Products `b_i b_j` expressed in the basis, `c[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    modulus: PrimeModulus,
    table: Vec<u32>,
}

impl StructureConstants {
    pub fn new(dim: usize, modulus: PrimeModulus) -> Self {
        StructureConstants {
            dim,
            modulus,
            table: vec![0; dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        Scalar(self.table[(i * self.dim + j) * self.dim + k])
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.table[(i * self.dim + j) * self.dim + k] = v.0;
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let m = self.modulus;
        let max_terms = m.max_lazy_terms().max(1);
        let mut acc = vec![0u64; d];
        let mut terms = 0;
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = m.mul(*xi, *yj).0 as u64;
                if terms == max_terms {
                    acc.iter_mut().for_each(|a| *a = m.reduce_u64(*a) as u64);
                    terms = 1;
                }
                terms += 1;
                let row = &self.table[(i * d + j) * d..(i * d + j + 1) * d];
                for (a, &t) in acc.iter_mut().zip(row) {
                    *a += c * t as u64;
                }
            }
        }
        acc.into_iter().map(|a| Scalar(m.reduce_u64(a))).collect()
    }

    /// Checks `(b_i b_j) b_k = b_i (b_j b_k)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        let e = |i: usize| unit_vector(d, i);
        (0..d).all(|i| {
            (0..d).all(|j| {
                let ij = self.mul(&e(i), &e(j));
                (0..d).all(|k| self.mul(&ij, &e(k)) == self.mul(&e(i), &self.mul(&e(j), &e(k))))
            })
        })
    }
}

pub fn unit_vector(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar(0); d];
    v[i] = Scalar::ONE;
    v
}

/// A coordinate vector as a `1 x d` matrix, for use with [`SubspaceBasis`].
pub fn coord_row(c: &[Scalar], m: PrimeModulus) -> GfMatrix {
    let mut out = GfMatrix::zeros(1, c.len(), m);
    for (i, &v) in c.iter().enumerate() {
        out.set(0, i, v);
    }
    out
}

pub fn row_coords(m: &GfMatrix) -> Vec<Scalar> {
    (0..m.n_cols()).map(|c| m.get(0, c)).collect()
}

/// How the span was shown to be the whole algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMethod {
    /// Closure by generator products from `I` and the generators.
    FullClosure,
    /// A spanning set containing `I` whose span is closed under left
    /// multiplication by every generator.
    GeneratorCheck,
    /// Corner `eAe` of an algebra already closed.
    Corner,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCertificate {
    pub method: ClosureMethod,
    pub passes: usize,
    pub final_rank: usize,
    pub products: usize,
    /// Basis pairs whose full matrix product was compared against the
    /// structure constants.
    pub spot_checks: usize,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub coords: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct AlgebraHandle {
    span: SubspaceBasis,
    generators: Vec<Generator>,
    identity: Vec<Scalar>,
    certificate: ClosureCertificate,
    constants: StructureConstants,
}

/// The nonzero `E_a A_b E_c` in lexicographic `(a, b, c)` order.
pub fn generator_words(ctx: &TerwilligerContext) -> Vec<(String, Vec<Atom>)> {
    let mut out = Vec::new();
    for a in 0..CLASSES {
        for b in 0..CLASSES {
            for c in 0..CLASSES {
                if ctx.p_int(c, b, a) != 0 {
                    let w = vec![Atom::E(a as u8), Atom::A(b as u8), Atom::E(c as u8)];
                    out.push((format!("E{a}A{b}E{c}"), w));
                }
            }
        }
    }
    out
}

/// Span of every `E_a A_b E_c`. Its rank must equal the number of nonzero
/// intersection numbers; anything else is reported with the dependent words.
pub fn t0_basis(ctx: &TerwilligerContext) -> Result<SubspaceBasis> {
    let n = ctx.order();
    let mut span = SubspaceBasis::new(n, n, ctx.modulus());
    let mut expected = 0;
    let mut dependent = Vec::new();
    for a in 0..CLASSES {
        for b in 0..CLASSES {
            for c in 0..CLASSES {
                let m = ctx.triple_product(a, b, c);
                if ctx.p_int(c, b, a) != 0 {
                    expected += 1;
                    if !span.insert(&m)? {
                        dependent.push(format!("E{a}A{b}E{c}"));
                    }
                } else if !m.is_zero() {
                    dependent.push(format!("E{a}A{b}E{c} (nonzero with p = 0)"));
                }
            }
        }
    }
    if span.rank() != expected || !dependent.is_empty() {
        return Err(Error::RankDeficient {
            expected,
            found: span.rank(),
            witnesses: dependent,
        });
    }
    Ok(span)
}

/// Generates `T` by multiplying basis rows with generators until a full
/// pass adds nothing.
pub fn closure_generate(ctx: &TerwilligerContext) -> Result<AlgebraHandle> {
    let n = ctx.order();
    let gens = generator_words(ctx);
    let mut span = SubspaceBasis::new(n, n, ctx.modulus());
    span.insert(&ctx.identity())?;
    for (_, w) in &gens {
        span.insert(&ctx.eval_word(w))?;
    }
    let mut passes = 0;
    let mut products = 0;
    loop {
        passes += 1;
        let before = span.rank();
        let rows: Vec<GfMatrix> = span.rows().cloned().collect();
        for r in &rows {
            for (_, w) in &gens {
                let right = ctx.right_mul_word(r, w);
                let left = ctx.left_mul_word(w, r);
                products += 2;
                span.insert(&right)?;
                span.insert(&left)?;
            }
        }
        if span.rank() == before {
            break;
        }
    }
    let cert = ClosureCertificate {
        method: ClosureMethod::FullClosure,
        passes,
        final_rank: span.rank(),
        products,
        spot_checks: 0,
    };
    AlgebraHandle::from_closed_span(ctx, span, cert)
}

/// Span of `items`, certified as the whole algebra by checking that every
/// generator times every basis row stays inside. Fails with the first
/// escaping product otherwise.
pub fn from_spanning_set(ctx: &TerwilligerContext, items: &[AlgExpr]) -> Result<AlgebraHandle> {
    let n = ctx.order();
    let mut span = SubspaceBasis::new(n, n, ctx.modulus());
    for e in items {
        span.insert(&ctx.eval(e)?)?;
    }
    if !span.contains(&ctx.identity())? {
        return Err(Error::NotIdeal("spanning set does not contain I".into()));
    }
    let gens = generator_words(ctx);
    let mut products = 0;
    for (i, r) in span.rows().enumerate() {
        for (label, w) in &gens {
            let prod = ctx.left_mul_word(w, r);
            products += 1;
            if !span.contains(&prod)? {
                return Err(Error::NotIdeal(format!("{label} times basis row {i} leaves the span")));
            }
        }
    }
    let cert = ClosureCertificate {
        method: ClosureMethod::GeneratorCheck,
        passes: 1,
        final_rank: span.rank(),
        products,
        spot_checks: 0,
    };
    AlgebraHandle::from_closed_span(ctx, span, cert)
}

/// Structure constants from pivot entries. `span` must be closed under
/// multiplication.
fn pivot_constants(span: &SubspaceBasis) -> StructureConstants {
    let d = span.rank();
    let (n, cols) = span.shape();
    let m = span.modulus();
    let pivots: Vec<(usize, usize)> = span.pivot_cols().iter().map(|&f| (f / cols, f % cols)).collect();
    let mut prow: Vec<usize> = pivots.iter().map(|p| p.0).collect();
    prow.sort_unstable();
    prow.dedup();
    let mut pcol: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    pcol.sort_unstable();
    pcol.dedup();
    let row_idx = |r: usize| prow.binary_search(&r).unwrap();
    let col_idx = |c: usize| pcol.binary_search(&c).unwrap();
    // rows[i][r]: sparse row of b_i at pivot row r; cols[j][c]: dense column.
    let rows: Vec<Vec<Vec<(u32, u32)>>> = span
        .rows()
        .map(|b| {
            prow.iter()
                .map(|&r| {
                    (0..n)
                        .filter_map(|k| {
                            let v = b.get(r, k).0;
                            (v != 0).then_some((k as u32, v))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let colv: Vec<Vec<Vec<u32>>> = span
        .rows()
        .map(|b| pcol.iter().map(|&c| (0..n).map(|k| b.get(k, c).0).collect()).collect())
        .collect();
    let mut out = StructureConstants::new(d, m);
    for i in 0..d {
        for j in 0..d {
            for (k, &(r, c)) in pivots.iter().enumerate() {
                let row = &rows[i][row_idx(r)];
                let col = &colv[j][col_idx(c)];
                let mut acc = 0u64;
                for &(kk, v) in row {
                    acc += v as u64 * col[kk as usize] as u64;
                    if acc >= 1 << 62 {
                        acc = m.reduce_u64(acc) as u64;
                    }
                }
                out.set(i, j, k, Scalar(m.reduce_u64(acc)));
            }
        }
    }
    out
}

impl AlgebraHandle {
    /// Wraps a multiplicatively closed span containing `I`; generators are
    /// the nonzero `E_a A_b E_c`.
    fn from_closed_span(ctx: &TerwilligerContext, span: SubspaceBasis, cert: ClosureCertificate) -> Result<Self> {
        let mut generators = Vec::new();
        for (label, w) in generator_words(ctx) {
            let coords = coords_in(&span, &ctx.eval_word(&w))?;
            generators.push(Generator { label, coords });
        }
        let identity = coords_in(&span, &ctx.identity())?;
        Self::assemble(span, generators, identity, cert)
    }

    fn assemble(
        span: SubspaceBasis,
        generators: Vec<Generator>,
        identity: Vec<Scalar>,
        mut cert: ClosureCertificate,
    ) -> Result<Self> {
        let constants = pivot_constants(&span);
        let mut alg = AlgebraHandle {
            span,
            generators,
            identity,
            certificate: cert.clone(),
            constants,
        };
        cert.spot_checks = alg.spot_check(if alg.span.shape().0 <= 256 { 8 } else { 2 })?;
        alg.certificate = cert;
        Ok(alg)
    }

    /// Compares full products of a few seeded basis pairs with the
    /// structure constants.
    fn spot_check(&self, count: usize) -> Result<usize> {
        let d = self.dim();
        if d == 0 {
            return Ok(0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        for _ in 0..count {
            let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
            let full = self.span.row(i).mat_mul(self.span.row(j))?;
            let via = self.element(&self.constants.mul(&unit_vector(d, i), &unit_vector(d, j)));
            if full != via {
                return Err(Error::NotIdeal(format!(
                    "basis product ({i}, {j}) is not closed in the span"
                )));
            }
        }
        Ok(count)
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.span.modulus()
    }

    pub fn span(&self) -> &SubspaceBasis {
        &self.span
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn identity(&self) -> &[Scalar] {
        &self.identity
    }

    pub fn certificate(&self) -> &ClosureCertificate {
        &self.certificate
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.constants.mul(x, y)
    }

    /// Coordinates of a matrix; an error if it lies outside the span.
    pub fn coords_of(&self, m: &GfMatrix) -> Result<Vec<Scalar>> {
        coords_in(&self.span, m)
    }

    pub fn coords_of_expr(&self, ctx: &TerwilligerContext, e: &AlgExpr) -> Result<Vec<Scalar>> {
        self.coords_of(&ctx.eval(e)?)
    }

    /// The matrix with the given coordinates.
    pub fn element(&self, c: &[Scalar]) -> GfMatrix {
        let (r, cols) = self.span.shape();
        let mut out = GfMatrix::zeros(r, cols, self.modulus());
        for (b, &v) in self.span.rows().zip(c) {
            out.axpy_rows(v, b, None);
        }
        out
    }

    /// Subspace of the coordinate space spanned by `items`.
    pub fn coord_span<'a>(&self, items: impl IntoIterator<Item = &'a [Scalar]>) -> Result<SubspaceBasis> {
        let m = self.modulus();
        let mut s = SubspaceBasis::new(1, self.dim(), m);
        for c in items {
            s.insert(&coord_row(c, m))?;
        }
        Ok(s)
    }

    /// The whole algebra as a coordinate subspace.
    pub fn full_coord_span(&self) -> SubspaceBasis {
        let d = self.dim();
        let units: Vec<Vec<Scalar>> = (0..d).map(|i| unit_vector(d, i)).collect();
        self.coord_span(units.iter().map(|v| v.as_slice()))
            .expect("shapes agree")
    }

    /// The corner `e A e` with identity `e`. Its generators are its basis.
    pub fn corner_subalgebra(&self, e: &[Scalar]) -> Result<AlgebraHandle> {
        if self.mul(e, e) != e {
            return Err(Error::NotIdempotent);
        }
        let d = self.dim();
        let (r, c) = self.span.shape();
        let mut span = SubspaceBasis::new(r, c, self.modulus());
        for i in 0..d {
            let eb = self.mul(e, &unit_vector(d, i));
            let ebe = self.mul(&eb, e);
            span.insert(&self.element(&ebe))?;
        }
        let generators = (0..span.rank())
            .map(|i| Generator {
                label: format!("basis[{i}]"),
                coords: unit_vector(span.rank(), i),
            })
            .collect();
        let identity = coords_in(&span, &self.element(e))?;
        let cert = ClosureCertificate {
            method: ClosureMethod::Corner,
            passes: 0,
            final_rank: span.rank(),
            products: 2 * d,
            spot_checks: 0,
        };
        Self::assemble(span, generators, identity, cert)
    }

    /// Coordinates in this algebra of an element of a parent algebra whose
    /// span contains this one.
    pub fn coords_from_parent(&self, parent: &AlgebraHandle, c: &[Scalar]) -> Result<Vec<Scalar>> {
        self.coords_of(&parent.element(c))
    }
}

fn coords_in(span: &SubspaceBasis, m: &GfMatrix) -> Result<Vec<Scalar>> {
    if !span.contains(m)? {
        return Err(Error::Unsupported("element lies outside the algebra".into()));
    }
    Ok(span.pivot_coordinates(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: usize) -> TerwilligerContext {
        TerwilligerContext::elementary_abelian(p, n, 0).unwrap()
    }

    fn nonzero_count(ctx: &TerwilligerContext) -> usize {
        let mut k = 0;
        for a in 0..CLASSES {
            for b in 0..CLASSES {
                for c in 0..CLASSES {
                    k += (ctx.p_int(c, b, a) != 0) as usize;
                }
            }
        }
        k
    }

    #[test]
    fn t0_rank_is_tensor_support() {
        for (p, n) in [(2, 4), (3, 4), (5, 8)] {
            let c = ctx(p, n);
            assert_eq!(t0_basis(&c).unwrap().rank(), nonzero_count(&c));
        }
    }

    #[test]
    fn closure_dimensions_small() {
        assert_eq!(closure_generate(&ctx(5, 4)).unwrap().dim(), 51);
        assert_eq!(closure_generate(&ctx(3, 4)).unwrap().dim(), 51);
        assert_eq!(closure_generate(&ctx(2, 8)).unwrap().dim(), 61);
    }

    #[test]
    fn closure_contains_t0_and_is_transpose_closed() {
        let c = ctx(3, 4);
        let t = closure_generate(&c).unwrap();
        let t0 = t0_basis(&c).unwrap();
        assert!(t0.is_subspace_of(t.span()).unwrap());
        for b in t.span().rows() {
            assert!(t.span().contains(&b.transpose()).unwrap());
        }
        assert!(t.constants().is_associative());
    }

    #[test]
    fn constants_match_dense_products() {
        let c = ctx(3, 4);
        let t = closure_generate(&c).unwrap();
        let d = t.dim();
        for i in (0..d).step_by(3) {
            for j in (0..d).step_by(5) {
                let full = t.span().row(i).mat_mul(t.span().row(j)).unwrap();
                let via = t.element(&t.mul(&unit_vector(d, i), &unit_vector(d, j)));
                assert_eq!(full, via);
            }
        }
        assert_eq!(t.element(t.identity()), c.identity());
    }

    #[test]
    fn corners_have_expected_ranks() {
        let c = ctx(5, 4);
        let t = closure_generate(&c).unwrap();
        let e0 = t.coords_of(c.dual_idempotent(0)).unwrap();
        assert_eq!(t.corner_subalgebra(&e0).unwrap().dim(), 1);
        let e4 = t.coords_of(c.dual_idempotent(4)).unwrap();
        let corner = t.corner_subalgebra(&e4).unwrap();
        assert_eq!(corner.dim(), 6);
        assert_eq!(corner.element(corner.identity()), *c.dual_idempotent(4));
        let two = t.coords_of(&c.identity().scaled(Scalar(2))).unwrap();
        assert!(matches!(t.corner_subalgebra(&two), Err(Error::NotIdempotent)));
    }

    #[test]
    fn generator_check_rejects_non_closed_span() {
        let c = ctx(3, 4);
        let items = [AlgExpr::identity(), AlgExpr::triple(1, 2, 3)];
        assert!(from_spanning_set(&c, &items).is_err());
    }
}
