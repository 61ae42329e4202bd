//! Named sets of symbolic elements for the elementary abelian 2-group
//! schemes, parametrised by the characteristic `p` and the order `n`.

use crate::error::{Error, Result};
use crate::expr::AlgExpr;
use crate::scheme::intersection_closed;

/// Characteristic and group order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub p: u64,
    pub n: usize,
}

impl Params {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::Unsupported(format!("n = {n} is not a power of two >= 4")));
        }
        Ok(Params { p, n })
    }

    pub fn valency(&self, i: usize) -> usize {
        intersection_closed(i, i, 0, self.n)
    }

    /// `p^i_{gh}` as an integer.
    pub fn int(&self, g: usize, h: usize, i: usize) -> usize {
        intersection_closed(g, h, i, self.n)
    }
}

pub(crate) fn ex(s: &str) -> AlgExpr {
    AlgExpr::parse(s).unwrap_or_else(|e| panic!("bad built-in expression {s:?}: {e}"))
}

fn exs(items: &[&str]) -> Vec<AlgExpr> {
    items.iter().map(|s| ex(s)).collect()
}

fn with_transposes(items: Vec<AlgExpr>) -> Vec<AlgExpr> {
    let t: Vec<AlgExpr> = items.iter().map(|e| e.transpose()).collect();
    items.into_iter().chain(t).collect()
}

/// The six arrangements `(g, h, i)` of `[1, 3]`.
pub const PERMS: [[u8; 3]; 6] = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];

/// `E_a A_b E_c` with `a, c` in `range`, `b` in `[0, 3]`, `b != max(a, c)` and
/// `p^a_{cb} != 0`.
fn low_triples(pr: Params, range: std::ops::RangeInclusive<u8>) -> Vec<AlgExpr> {
    let mut out = Vec::new();
    for a in range.clone() {
        for c in range.clone() {
            for b in 0..=3u8 {
                if b != a.max(c) && pr.int(c as usize, b as usize, a as usize) != 0 {
                    out.push(AlgExpr::triple(a, b, c));
                }
            }
        }
    }
    out
}

pub fn b1(pr: Params) -> Vec<AlgExpr> {
    low_triples(pr, 1..=4)
}

pub fn b2() -> Vec<AlgExpr> {
    (0..=4).flat_map(|a| (0..=4).map(move |b| AlgExpr::ej(a, b))).collect()
}

pub fn b3() -> Vec<AlgExpr> {
    let mut out: Vec<AlgExpr> = (0..=3).map(|a| AlgExpr::triple(4, a, 4)).collect();
    out.push(AlgExpr::ej(4, 4));
    out
}

/// `E_a J E_b` with `p | k_a k_b`.
pub fn b4(pr: Params) -> Vec<AlgExpr> {
    let mut out = Vec::new();
    for a in 0..=4u8 {
        for b in 0..=4u8 {
            let prod = (pr.valency(a as usize) as u128) * (pr.valency(b as usize) as u128);
            if prod % pr.p as u128 == 0 {
                out.push(AlgExpr::ej(a, b));
            }
        }
    }
    out
}

pub fn b5() -> Vec<AlgExpr> {
    exs(&[
        "E1A2E3A1E4",
        "E2A1E3A2E4",
        "E3A1E2A3E4",
        "E4A1E3A2E1",
        "E4A2E3A1E2",
        "E4A3E2A1E3",
    ])
}

pub fn b6() -> Vec<AlgExpr> {
    PERMS
        .iter()
        .map(|&[a, b, c]| ex(&format!("E4A{a}E{b}A{c}E4")))
        .collect()
}

pub fn c1() -> Vec<AlgExpr> {
    let mut out = exs(&[
        "E4JE4",
        "E4A1E4 - E4A2E4",
        "E4A1E4 - E4A3E4",
        "E4A1E2A3E4 - E4 - E4A1E4",
    ]);
    for x in ["E4A1E3A2E4", "E4A2E1A3E4", "E4A2E3A1E4", "E4A3E1A2E4", "E4A3E2A1E4"] {
        out.push(ex(&format!("E4A1E2A3E4 - {x}")));
    }
    out
}

pub fn d1() -> Vec<AlgExpr> {
    with_transposes(exs(&[
        "E1A2E4 - E1A3E4",
        "E2A1E4 - E2A3E4",
        "E3A1E4 - E3A2E4",
        "E1A2E3A1E4 - E1A3E4",
        "E2A1E3A2E4 - E2A3E4",
        "E3A1E2A3E4 - E3A2E4",
    ]))
}

pub fn h1(pr: Params) -> Vec<AlgExpr> {
    let mut out = low_triples(pr, 1..=3);
    out.extend(exs(&[
        "E1A2E4",
        "E2A1E4",
        "E3A1E4",
        "-E4A1E2",
        "-E4A1E3",
        "-E4A2E1",
        "-E4A1E2A3E4",
    ]));
    out
}

pub fn k1(pr: Params) -> Vec<AlgExpr> {
    let mut out = b4(pr);
    out.extend(exs(&[
        "E4A1E2A3E4 - E4 - E4A1E4",
        "E1A2E4 - E1A3E4",
        "E2A1E4 - E2A3E4",
        "E3A1E4 - E3A2E4",
        "E4A1E2 - E4A3E2",
        "E4A1E3 - E4A2E3",
        "E4A1E4 - E4A2E4",
        "E4A1E4 - E4A3E4",
        "E4A2E1 - E4A3E1",
    ]));
    out
}

pub fn c2(pr: Params) -> Vec<AlgExpr> {
    if pr.p != 2 {
        return exs(&["E4JE4"]);
    }
    exs(&[
        "E4JE4",
        "E4 + E4A1E4 + E4A2E3A1E4 + E4A3E2A1E4",
        "E4 + E4A2E4 + E4A1E3A2E4 + E4A3E1A2E4",
        "E4 + E4A3E4 + E4A1E2A3E4 + E4A2E1A3E4",
        "E4A1E2A3E4 + E4A2E1A3E4 + E4A3E1A2E4 + E4A3E2A1E4",
        "E4A2E3A1E4 + E4A3E2A1E4 + E4A1E2A3E4 + E4A1E3A2E4",
    ])
}

pub fn d2() -> Vec<AlgExpr> {
    with_transposes(exs(&[
        "E1A2E4 + E1A3E4 + E1A2E3A1E4",
        "E2A1E4 + E2A3E4 + E2A1E3A2E4",
        "E3A1E4 + E3A2E4 + E3A1E2A3E4",
    ]))
}

pub fn h21() -> Vec<AlgExpr> {
    (0..=3).flat_map(|a| (0..=3).map(move |b| AlgExpr::ej(a, b))).collect()
}

pub fn h22() -> Vec<AlgExpr> {
    exs(&[
        "E2A1E3A2E4",
        "E3A1E2A3E4",
        "E4A2E1A3E4",
        "E4A2E3A1E2",
        "E4A3E1A2E4",
        "E4A3E2A1E3",
        "E4A1E2A3E4 + E4A2E1A3E4",
        "E4A1E3A2E4 + E4A3E1A2E4",
        "E1A2E4",
        "E1A3E4",
        "E2A3E4",
        "E3A2E4",
        "E4A2E1",
        "E4A2E3",
        "E4A3E1",
        "E4A3E2",
        "E1 + E1JE1",
        "E1A2E3 + E1JE3",
        "E1A3E2 + E1JE2",
        "E2 + E2JE2",
        "E2A1E3 + E2JE3",
        "E2A3E1 + E2JE1",
        "E3 + E3JE3",
        "E3A1E2 + E3JE2",
        "E3A2E1 + E3JE1",
    ])
}

pub fn k2(pr: Params) -> Vec<AlgExpr> {
    let ejj = AlgExpr::ej(4, 4);
    b4(pr)
        .into_iter()
        .chain(c2(pr))
        .chain(d2())
        .filter(|e| *e != ejj)
        .collect()
}

pub fn c3() -> Vec<AlgExpr> {
    exs(&[
        "E4JE4 - E4 - E4A1E4 - E4A2E3A1E4 - E4A3E2A1E4",
        "E4JE4 - E4 - E4A2E4 - E4A1E3A2E4 - E4A3E1A2E4",
        "E4JE4 - E4 - E4A3E4 - E4A1E2A3E4 - E4A2E1A3E4",
        "E4A1E2A3E4 + E4A2E1A3E4 - E4A3E1A2E4 - E4A3E2A1E4",
        "E4A2E3A1E4 + E4A3E2A1E4 - E4A1E2A3E4 - E4A1E3A2E4",
    ])
}

pub fn d3() -> Vec<AlgExpr> {
    with_transposes(exs(&[
        "E1JE4 - E1A2E4 - E1A3E4 - E1A2E3A1E4",
        "E2JE4 - E2A1E4 - E2A3E4 - E2A1E3A2E4",
        "E3JE4 - E3A1E4 - E3A2E4 - E3A1E2A3E4",
    ]))
}

/// The claimed basis `B` of the whole algebra.
pub fn paper_basis(pr: Params) -> Vec<AlgExpr> {
    let special = ex("E4A1E2A3E4");
    let mut out = b1(pr);
    out.extend(b2());
    if pr.n == 4 {
        out.push(special);
    } else {
        out.extend(b5());
        out.extend(b6());
        if pr.p == 2 && pr.n == 8 {
            out.retain(|e| *e != special);
        }
    }
    out
}

/// The claimed basis `B_3 ∪ B_6` (adjusted as in [`paper_basis`]) of the
/// corner at `E4`.
pub fn corner_basis(pr: Params) -> Vec<AlgExpr> {
    let special = ex("E4A1E2A3E4");
    let mut out = b3();
    if pr.n == 4 {
        out.push(special);
    } else {
        out.extend(b6());
        if pr.p == 2 && pr.n == 8 {
            out.retain(|e| *e != special);
        }
    }
    out
}

fn tail_pair() -> Vec<AlgExpr> {
    exs(&["E0", "E4 + E4A1E2A3E4"])
}

/// The alternative basis listed for `n ≡ 1 (mod p)` with `n > 8` (or
/// `p = 7, n = 8`): `B4 ∪ C1 ∪ D1 ∪ H1 ∪ {E0, E4 + E4A1E2A3E4}`, kept with
/// repetitions exactly as listed.
pub fn alternate_basis(pr: Params) -> Vec<AlgExpr> {
    let mut out = b4(pr);
    out.extend(c1());
    out.extend(d1());
    out.extend(h1(pr));
    out.extend(tail_pair());
    out
}

/// The alternative basis listed for `p = 3, n = 4`:
/// `K1 ∪ H1 ∪ {E0, E4 + E4A1E2A3E4}`.
pub fn alternate_basis_n4(pr: Params) -> Vec<AlgExpr> {
    let mut out = k1(pr);
    out.extend(h1(pr));
    out.extend(tail_pair());
    out
}

/// Every named set at `(p, n)`, in a fixed order.
pub fn named_sets(pr: Params) -> Vec<(&'static str, Vec<AlgExpr>)> {
    vec![
        ("B1", b1(pr)),
        ("B2", b2()),
        ("B3", b3()),
        ("B4", b4(pr)),
        ("B5", b5()),
        ("B6", b6()),
        ("C1", c1()),
        ("D1", d1()),
        ("H1", h1(pr)),
        ("K1", k1(pr)),
        ("C2", c2(pr)),
        ("D2", d2()),
        ("H2_1", h21()),
        ("H2_2", h22()),
        ("K2", k2(pr)),
        ("C3", c3()),
        ("D3", d3()),
        ("B", paper_basis(pr)),
    ]
}
