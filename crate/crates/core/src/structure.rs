//! Radical candidates, their certification and the resulting
//! decomposition of the algebra and of its corners `E_a T E_a`.
//!
//! A candidate `V` is accepted as the radical when it is a nilpotent
//! two-sided ideal and the unit table realises `T / V` as a direct sum of full
//! matrix algebras of the right total dimension: a nilpotent ideal lies in the
//! radical, and a semisimple quotient forces equality.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::{
    closure_generate, from_spanning_set, row_coords, t0_basis, AlgebraHandle, ClosureMethod, StructureConstants,
};
use crate::context::TerwilligerContext;
use crate::error::{Error, Result};
use crate::expr::AlgExpr;
use crate::field::Scalar;
use crate::notation::{self, ex, Params};
use crate::subspace::SubspaceBasis;
use crate::units::{matrix_unit_scheme, MatrixUnitScheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    I,
    II,
    P2,
    III,
    IV,
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::I => "I",
            Case::II => "II",
            Case::P2 => "P2",
            Case::III => "III",
            Case::IV => "IV",
        }
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::Unsupported(format!("n = {n} is not a power of two >= 4")));
    }
    Ok(())
}

pub fn classify_case(p: u64, n: usize) -> Result<Case> {
    check_order(n)?;
    if !crate::field::is_prime(p) {
        return Err(Error::InvalidModulus { p, reason: "not prime" });
    }
    Ok(if p == 2 {
        Case::P2
    } else {
        match n as u64 % p {
            1 => Case::I,
            2 => Case::II,
            4 => Case::III,
            _ => Case::IV,
        }
    })
}

/// Closed-form semisimplicity: `p` not 2 or 3 with `n = 4`, or `n` not
/// congruent to 1, 2 or 4 modulo `p`.
pub fn semisimple_closed_form(p: u64, n: usize) -> bool {
    let r = n as u64 % p;
    (p != 2 && p != 3 && n == 4) || !(r == 1 % p || r == 2 % p || r == 4 % p)
}

/// Generating set of the radical candidate for the case.
pub fn radical_candidate_exprs(case: Case, pr: Params) -> Vec<AlgExpr> {
    match case {
        Case::I => [notation::b4(pr), notation::c1(), notation::d1()].concat(),
        Case::II if pr.p != 2 => notation::b4(pr),
        Case::II | Case::P2 => [notation::b4(pr), notation::c2(pr), notation::d2()].concat(),
        Case::III => [notation::c3(), notation::d3()].concat(),
        Case::IV => Vec::new(),
    }
}

/// Generating set of the radical candidate of the corner at `E_a`.
pub fn corner_candidate_exprs(case: Case, pr: Params, a: u8) -> Vec<AlgExpr> {
    match (a, case) {
        (0, _) => Vec::new(),
        (1..=3, Case::I) => vec![AlgExpr::ej(a, a)],
        (1..=3, _) => Vec::new(),
        (_, Case::I) => notation::c1(),
        (_, Case::II | Case::P2) => notation::c2(pr),
        (_, Case::III) => notation::c3(),
        (_, Case::IV) => Vec::new(),
    }
}

/// Span of the evaluated expressions in the coordinates of `alg`.
pub fn coord_span_of(ctx: &TerwilligerContext, alg: &AlgebraHandle, items: &[AlgExpr]) -> Result<SubspaceBasis> {
    let coords = items
        .iter()
        .map(|e| alg.coords_of_expr(ctx, e))
        .collect::<Result<Vec<_>>>()?;
    alg.coord_span(coords.iter().map(|c| c.as_slice()))
}

/// The case's radical candidate as a coordinate subspace of `alg`.
pub fn radical_candidate(ctx: &TerwilligerContext, alg: &AlgebraHandle, case: Case) -> Result<SubspaceBasis> {
    if !ctx.is_elementary_abelian() {
        return Err(Error::Unsupported(
            "radical candidates need an elementary abelian 2-group".into(),
        ));
    }
    let pr = Params::new(ctx.p() as u64, ctx.n())?;
    coord_span_of(ctx, alg, &radical_candidate_exprs(case, pr))
}

fn basis_coords(v: &SubspaceBasis) -> Vec<Vec<Scalar>> {
    v.rows().map(row_coords).collect()
}

fn contains_coords(alg: &AlgebraHandle, v: &SubspaceBasis, c: &[Scalar]) -> Result<bool> {
    v.contains(&crate::algebra::coord_row(c, alg.modulus()))
}

/// First product `g w` or `w g` (generator `g`, basis row `w`) escaping `v`.
pub fn ideal_violation(alg: &AlgebraHandle, v: &SubspaceBasis) -> Result<Option<String>> {
    for (wi, w) in basis_coords(v).iter().enumerate() {
        for g in alg.generators() {
            if !contains_coords(alg, v, &alg.mul(&g.coords, w))? {
                return Ok(Some(format!("{} * basis[{wi}] not in subspace", g.label)));
            }
            if !contains_coords(alg, v, &alg.mul(w, &g.coords))? {
                return Ok(Some(format!("basis[{wi}] * {} not in subspace", g.label)));
            }
        }
    }
    Ok(None)
}

pub fn is_two_sided_ideal(alg: &AlgebraHandle, v: &SubspaceBasis) -> Result<bool> {
    Ok(ideal_violation(alg, v)?.is_none())
}

/// Least `k <= bound` with `V^k = 0`.
pub fn nilpotency_exponent(alg: &AlgebraHandle, v: &SubspaceBasis, bound: usize) -> Result<Option<usize>> {
    let base = basis_coords(v);
    let mut power = v.clone();
    for k in 1..=bound {
        if power.is_zero() {
            return Ok(Some(k));
        }
        let rows = basis_coords(&power);
        let mut next = SubspaceBasis::new(1, alg.dim(), alg.modulus());
        for a in &rows {
            for b in &base {
                next.insert(&crate::algebra::coord_row(&alg.mul(a, b), alg.modulus()))?;
            }
        }
        power = next;
    }
    Ok(None)
}

/// Structure constants of `alg / ideal` on the transversal of unit vectors
/// at the non-pivot coordinates of the ideal.
pub fn quotient_structure(alg: &AlgebraHandle, ideal: &SubspaceBasis) -> Result<StructureConstants> {
    if let Some(w) = ideal_violation(alg, ideal)? {
        return Err(Error::NotIdeal(w));
    }
    let d = alg.dim();
    let pivots = ideal.pivot_cols();
    let free: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
    let m = alg.modulus();
    let mut out = StructureConstants::new(free.len(), m);
    for (qi, &i) in free.iter().enumerate() {
        for (qj, &j) in free.iter().enumerate() {
            let prod = alg.mul(&crate::algebra::unit_vector(d, i), &crate::algebra::unit_vector(d, j));
            let red = ideal.reduce(&crate::algebra::coord_row(&prod, m))?;
            for (qk, &k) in free.iter().enumerate() {
                out.set(qi, qj, qk, red.get(0, k));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageFlags {
    pub ideal: bool,
    pub nilpotent: bool,
    pub units: bool,
    pub dims: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalCertificate {
    pub scheme: String,
    pub dim_algebra: usize,
    pub dim_radical: usize,
    pub nilpotency: Option<usize>,
    pub blocks: Vec<usize>,
    pub stages: StageFlags,
    /// First failure, if any.
    pub witness: Option<String>,
    pub certified: bool,
}

/// Runs the four certification stages for `candidate` inside `alg` with the
/// units evaluated through `ctx`.
pub fn certify_radical(
    ctx: &TerwilligerContext,
    alg: &AlgebraHandle,
    candidate: &SubspaceBasis,
    units: &MatrixUnitScheme,
) -> Result<RadicalCertificate> {
    let m = alg.modulus();
    let mut witness = None;
    let ideal_fail = ideal_violation(alg, candidate)?;
    let ideal = ideal_fail.is_none();
    if let Some(w) = ideal_fail {
        witness.get_or_insert(format!("ideal: {w}"));
    }
    let nilpotency = nilpotency_exponent(alg, candidate, candidate.rank() + 1)?;
    if nilpotency.is_none() {
        witness.get_or_insert("nilpotent: power did not vanish".to_string());
    }

    let blocks = units.materialized();
    let sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let mut coords: Vec<Vec<Vec<Vec<Scalar>>>> = Vec::new();
    for b in &blocks {
        let mut rows = Vec::new();
        for row in b {
            rows.push(
                row.iter()
                    .map(|e| alg.coords_of_expr(ctx, e))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        coords.push(rows);
    }
    let mut units_ok = true;
    let zero = vec![Scalar(0); alg.dim()];
    'outer: for (bi, b) in coords.iter().enumerate() {
        for (bj, c) in coords.iter().enumerate() {
            for g in 0..b.len() {
                for h in 0..b.len() {
                    for r in 0..c.len() {
                        for s in 0..c.len() {
                            let mut diff = alg.mul(&b[g][h], &c[r][s]);
                            if bi == bj && h == r {
                                for (x, y) in diff.iter_mut().zip(&b[g][s]) {
                                    *x = m.sub(*x, *y);
                                }
                            }
                            if diff != zero && !contains_coords(alg, candidate, &diff)? {
                                units_ok = false;
                                witness.get_or_insert(format!(
                                    "units: M{}[{}{}] * M{}[{}{}] fails",
                                    bi + 1,
                                    g + 1,
                                    h + 1,
                                    bj + 1,
                                    r + 1,
                                    s + 1
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut sum = zero.clone();
    for b in &coords {
        for (j, row) in b.iter().enumerate() {
            for (x, y) in sum.iter_mut().zip(&row[j]) {
                *x = m.add(*x, *y);
            }
        }
    }
    let diff: Vec<Scalar> = sum.iter().zip(alg.identity()).map(|(x, y)| m.sub(*x, *y)).collect();
    if !contains_coords(alg, candidate, &diff)? {
        units_ok = false;
        witness.get_or_insert("units: diagonal units do not sum to the identity".to_string());
    }

    let mut all = candidate.clone();
    for b in &coords {
        for row in b {
            for u in row {
                all.insert(&crate::algebra::coord_row(u, m))?;
            }
        }
    }
    let squares: usize = sizes.iter().map(|s| s * s).sum();
    let dims = all.rank() == alg.dim() && alg.dim() == candidate.rank() + squares;
    if !dims {
        witness.get_or_insert(format!(
            "dims: span rank {} of {}, candidate {} + squares {squares}",
            all.rank(),
            alg.dim(),
            candidate.rank()
        ));
    }
    let stages = StageFlags {
        ideal,
        nilpotent: nilpotency.is_some(),
        units: units_ok,
        dims,
    };
    let certified = stages.ideal && stages.nilpotent && stages.units && stages.dims;
    Ok(RadicalCertificate {
        scheme: units.name.clone(),
        dim_algebra: alg.dim(),
        dim_radical: candidate.rank(),
        nilpotency,
        blocks: sizes,
        stages,
        witness,
        certified,
    })
}

/// Rank of a listed set of elements against the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisClaim {
    pub name: String,
    /// Whether `(p, n)` satisfies the hypothesis under which the set is
    /// claimed to be a basis.
    pub applies: bool,
    pub listed: usize,
    pub distinct: usize,
    pub rank: usize,
    pub linearly_dependent: bool,
    pub spans_algebra: bool,
}

fn basis_claim(
    ctx: &TerwilligerContext,
    alg: &AlgebraHandle,
    name: &str,
    applies: bool,
    items: &[AlgExpr],
) -> Result<BasisClaim> {
    let mut distinct: Vec<String> = items.iter().map(|e| e.to_string()).collect();
    distinct.sort();
    distinct.dedup();
    let span = coord_span_of(ctx, alg, items)?;
    Ok(BasisClaim {
        name: name.into(),
        applies,
        listed: items.len(),
        distinct: distinct.len(),
        rank: span.rank(),
        linearly_dependent: span.rank() < items.len(),
        spans_algebra: span.rank() == alg.dim(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerReport {
    pub index: u8,
    pub dim: usize,
    pub blocks: Vec<usize>,
    pub dim_radical: usize,
    pub certificate: RadicalCertificate,
    /// The corner radical equals `E_a Rad(T) E_a`.
    pub radical_is_projection: bool,
    /// For the corner at `E4`, rank of the listed corner basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub listed_basis: Option<BasisClaim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub ideal: bool,
    pub nilpotent: bool,
    pub units: bool,
    pub dims: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub p: u64,
    pub n: usize,
    pub basepoint: usize,
    pub case: Case,
    #[serde(rename = "dim_T")]
    pub dim_t: usize,
    #[serde(rename = "dim_T0")]
    pub dim_t0: usize,
    pub dim_rad: usize,
    pub blocks: Vec<usize>,
    pub corner_blocks: Vec<Vec<usize>>,
    pub semisimple: bool,
    pub semisimple_closed_form: bool,
    pub certificate: CertificateSummary,
    pub radical: RadicalCertificate,
    pub corners: Vec<CornerReport>,
    pub bases: Vec<BasisClaim>,
    pub closure: crate::algebra::ClosureCertificate,
    /// True when `T` was obtained from the listed basis and a generator
    /// check instead of a closure from scratch.
    pub partial_certificate: bool,
    pub certified: bool,
    pub duration_ms: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    pub basepoint: usize,
    /// Run the full closure even at `n >= 32`.
    pub allow_large: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            basepoint: 0,
            allow_large: false,
        }
    }
}

/// Builds `T` by closure for `n <= 16` (or with `allow_large`), otherwise
/// from the listed basis with a generator check.
/// Largest order handled without `allow_large`.
pub const MAX_ORDER: usize = 32;

fn check_size(n: usize, allow_large: bool) -> Result<()> {
    if n > MAX_ORDER && !allow_large {
        return Err(Error::Unsupported(format!(
            "n = {n} is above {MAX_ORDER}; pass --allow-large to run it anyway"
        )));
    }
    Ok(())
}

pub fn build_algebra(ctx: &TerwilligerContext, allow_large: bool) -> Result<AlgebraHandle> {
    check_size(ctx.n(), allow_large)?;
    if ctx.n() <= 16 || allow_large {
        closure_generate(ctx)
    } else {
        let pr = Params::new(ctx.p() as u64, ctx.n())?;
        from_spanning_set(ctx, &notation::paper_basis(pr))
    }
}

pub fn decompose(p: u64, n: usize, basepoint: usize) -> Result<DecompositionReport> {
    decompose_with(
        p,
        n,
        DecomposeOptions {
            basepoint,
            ..Default::default()
        },
    )
}

pub fn decompose_with(p: u64, n: usize, opts: DecomposeOptions) -> Result<DecompositionReport> {
    let start = Instant::now();
    let case = classify_case(p, n)?;
    check_size(n, opts.allow_large)?;
    let pr = Params::new(p, n)?;
    let ctx = TerwilligerContext::elementary_abelian(p, n, opts.basepoint)?;
    let alg = build_algebra(&ctx, opts.allow_large)?;
    let dim_t0 = t0_basis(&ctx)?.rank();

    let candidate = radical_candidate(&ctx, &alg, case)?;
    let units = matrix_unit_scheme(case, p, None)?;
    let radical = certify_radical(&ctx, &alg, &candidate, &units)?;

    let mut bases = vec![basis_claim(&ctx, &alg, "B", true, &notation::paper_basis(pr))?];
    if case == Case::I {
        let applies = n > 8 || (p == 7 && n == 8);
        bases.push(basis_claim(
            &ctx,
            &alg,
            "B4 ∪ C1 ∪ D1 ∪ H1 ∪ {E0, E4 + E4A1E2A3E4}",
            applies,
            &notation::alternate_basis(pr),
        )?);
        if n == 4 {
            bases.push(basis_claim(
                &ctx,
                &alg,
                "K1 ∪ H1 ∪ {E0, E4 + E4A1E2A3E4}",
                p == 3,
                &notation::alternate_basis_n4(pr),
            )?);
        }
    }

    let mut corners = Vec::new();
    for a in 0..=4u8 {
        corners.push(corner_report(&ctx, &alg, &candidate, case, pr, a)?);
    }
    let semisimple = radical.dim_radical == 0;
    let certified = radical.certified
        && bases[0].spans_algebra
        && !bases[0].linearly_dependent
        && corners
            .iter()
            .all(|c| c.certificate.certified && c.radical_is_projection);
    Ok(DecompositionReport {
        p,
        n,
        basepoint: opts.basepoint,
        case,
        dim_t: alg.dim(),
        dim_t0,
        dim_rad: radical.dim_radical,
        blocks: radical.blocks.clone(),
        corner_blocks: corners.iter().map(|c| c.blocks.clone()).collect(),
        semisimple,
        semisimple_closed_form: semisimple_closed_form(p, n),
        certificate: CertificateSummary {
            ideal: radical.stages.ideal,
            nilpotent: radical.stages.nilpotent,
            units: radical.stages.units,
            dims: radical.stages.dims,
        },
        radical,
        corners,
        bases,
        closure: alg.certificate().clone(),
        partial_certificate: alg.certificate().method != ClosureMethod::FullClosure,
        certified,
        duration_ms: start.elapsed().as_millis() as u64,
    })
}

fn corner_report(
    ctx: &TerwilligerContext,
    alg: &AlgebraHandle,
    radical: &SubspaceBasis,
    case: Case,
    pr: Params,
    a: u8,
) -> Result<CornerReport> {
    let e = alg.coords_of_expr(ctx, &ex(&format!("E{a}")))?;
    let corner = alg.corner_subalgebra(&e)?;
    let cand_exprs = corner_candidate_exprs(case, pr, a);
    let cand = coord_span_of(ctx, &corner, &cand_exprs)?;
    let units = matrix_unit_scheme(case, pr.p, Some(a))?;
    let certificate = certify_radical(ctx, &corner, &cand, &units)?;

    // E_a Rad(T) E_a against the corner candidate, both in T's coordinates.
    let projected: Vec<Vec<Scalar>> = basis_coords(radical)
        .iter()
        .map(|v| alg.mul(&alg.mul(&e, v), &e))
        .collect();
    let projected = alg.coord_span(projected.iter().map(|v| v.as_slice()))?;
    let in_t = coord_span_of(ctx, alg, &cand_exprs)?;
    let radical_is_projection = projected == in_t;

    let listed_basis = if a == 4 {
        Some(basis_claim(
            ctx,
            &corner,
            "corner basis",
            true,
            &notation::corner_basis(pr),
        )?)
    } else {
        None
    };
    Ok(CornerReport {
        index: a,
        dim: corner.dim(),
        blocks: certificate.blocks.clone(),
        dim_radical: certificate.dim_radical,
        certificate,
        radical_is_projection,
        listed_basis,
    })
}
