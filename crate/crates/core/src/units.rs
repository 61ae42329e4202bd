//! Matrix-unit tables for each case, as data.
//!
//! A table is a list of square blocks of expressions `M_gh`. Blocks marked
//! residual are given implicitly as `identity - (sum of every other diagonal
//! unit)`, where the identity is `I` for the whole algebra and `E4` for the
//! corner at `E4`.

use crate::error::{Error, Result};
use crate::expr::AlgExpr;
use crate::notation::ex;
use crate::structure::Case;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixUnitScheme {
    pub name: String,
    pub blocks: Vec<Vec<Vec<AlgExpr>>>,
    /// Identity of the ambient (corner) algebra when the last block is the
    /// residual `identity - sum of diagonals`.
    pub residual_of: Option<AlgExpr>,
}

impl MatrixUnitScheme {
    /// Block sizes, the residual block included.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        if self.residual_of.is_some() {
            s.push(1);
        }
        s
    }

    /// All blocks with the residual written out.
    pub fn materialized(&self) -> Vec<Vec<Vec<AlgExpr>>> {
        let mut out = self.blocks.clone();
        if let Some(id) = &self.residual_of {
            let mut r = id.clone();
            for b in &self.blocks {
                for (j, row) in b.iter().enumerate() {
                    r = r.sub(&row[j]);
                }
            }
            out.push(vec![vec![r]]);
        }
        out
    }
}

fn third(g: u8, i: u8) -> u8 {
    6 - g - i
}

fn grid(size: usize, f: impl Fn(usize, usize) -> AlgExpr) -> Vec<Vec<AlgExpr>> {
    (1..=size).map(|g| (1..=size).map(|h| f(g, h)).collect()).collect()
}

fn table(rows: &[&[&str]]) -> Vec<Vec<AlgExpr>> {
    rows.iter().map(|r| r.iter().map(|s| ex(s)).collect()).collect()
}

/// `E_g A_h E_i` for distinct `g, i` in `[1, 3]` and `E_g` on the diagonal,
/// each shifted by `sign * coeff * E_g J E_i`.
fn low_block(coeff: &str, sign: char) -> Vec<Vec<String>> {
    (1..=3u8)
        .map(|g| {
            (1..=3u8)
                .map(|i| {
                    let head = if g == i {
                        format!("E{g}")
                    } else {
                        format!("E{g}A{}E{i}", third(g, i))
                    };
                    format!("{head} {sign} {{{coeff}}}E{g}JE{i}")
                })
                .collect()
        })
        .collect()
}

fn j_block(size: usize, coeff: impl Fn(usize, usize) -> String) -> Vec<Vec<AlgExpr>> {
    grid(size, |g, h| ex(&format!("{{{}}}E{}JE{}", coeff(g, h), g - 1, h - 1)))
}

fn case_one() -> MatrixUnitScheme {
    let m = table(&[
        &["E1", "E1A3E2", "E1A2E3", "E1A2E4"],
        &["E2A3E1", "E2", "E2A1E3", "E2A1E4"],
        &["E3A2E1", "E3A1E2", "E3", "E3A1E4"],
        &["-E4A2E1", "-E4A1E2", "-E4A1E3", "-E4A1E2A3E4"],
    ]);
    MatrixUnitScheme {
        name: "case I".into(),
        blocks: vec![m, table(&[&["E0"]]), table(&[&["E4 + E4A1E2A3E4"]])],
        residual_of: None,
    }
}

fn case_one_corner() -> MatrixUnitScheme {
    MatrixUnitScheme {
        name: "case I, corner E4".into(),
        blocks: vec![table(&[&["2E4 + E4A1E4"]]), table(&[&["-E4A1E2A3E4"]])],
        residual_of: None,
    }
}

const TWO_CORNER: [[&str; 3]; 3] = [
    [
        "E4 + E4A1E4 - E4A2E3A1E4 - E4A3E2A1E4",
        "E4A1E3A2E4 - E4A3E1A2E4 - E4 - E4A2E4",
        "E4A1E2A3E4 - E4A2E1A3E4 - E4 - E4A3E4",
    ],
    [
        "E4A2E3A1E4 - E4A3E2A1E4 - E4 - E4A1E4",
        "E4 + E4A2E4 - E4A1E3A2E4 - E4A3E1A2E4",
        "E4A2E1A3E4 - E4A1E2A3E4 - E4 - E4A3E4",
    ],
    [
        "E4A3E2A1E4 - E4A2E3A1E4 - E4 - E4A1E4",
        "E4A3E1A2E4 - E4A1E3A2E4 - E4 - E4A2E4",
        "E4 + E4A3E4 - E4A1E2A3E4 - E4A2E1A3E4",
    ],
];

fn half(s: &str) -> AlgExpr {
    ex(&format!("{{1/2}}({s})"))
}

fn case_two_corner() -> MatrixUnitScheme {
    MatrixUnitScheme {
        name: "case II, corner E4".into(),
        blocks: vec![grid(3, |g, h| half(TWO_CORNER[g - 1][h - 1]))],
        residual_of: Some(ex("E4")),
    }
}

fn case_two() -> MatrixUnitScheme {
    let low = low_block("1", '-');
    let right = [
        ["E1A2E3A1E4", "E1A2E4", "E1A3E4"],
        ["E2A1E4", "E2A1E3A2E4", "E2A3E4"],
        ["E3A1E4", "E3A2E4", "E3A1E2A3E4"],
    ];
    let left = [
        [
            "E4A1E3A2E1 - E4A2E1 - E4A3E1",
            "E4A1E2 - E4A3E2 - E4A2E3A1E2",
            "E4A1E3 - E4A2E3 - E4A3E2A1E3",
        ],
        [
            "E4A2E1 - E4A3E1 - E4A1E3A2E1",
            "E4A2E3A1E2 - E4A1E2 - E4A3E2",
            "E4A2E3 - E4A1E3 - E4A3E2A1E3",
        ],
        [
            "E4A3E1 - E4A2E1 - E4A1E3A2E1",
            "E4A3E2 - E4A1E2 - E4A2E3A1E2",
            "E4A3E2A1E3 - E4A1E3 - E4A2E3",
        ],
    ];
    let m = grid(6, |g, h| match (g <= 3, h <= 3) {
        (true, true) => ex(&low[g - 1][h - 1]),
        (true, false) => ex(right[g - 1][h - 4]),
        (false, true) => half(left[g - 4][h - 1]),
        (false, false) => half(TWO_CORNER[g - 4][h - 4]),
    });
    MatrixUnitScheme {
        name: "case II".into(),
        blocks: vec![m, j_block(4, |_, _| "1".into())],
        residual_of: Some(AlgExpr::identity()),
    }
}

fn p2_corner() -> MatrixUnitScheme {
    let m = table(&[
        &["E4A2E1A3E4", "E4A1E3A2E4 + E4A3E1A2E4"],
        &["E4A1E2A3E4 + E4A2E1A3E4", "E4A3E1A2E4"],
    ]);
    let n = table(&[&["E4 + E4A2E1A3E4 + E4A3E1A2E4"]]);
    MatrixUnitScheme {
        name: "case p = 2, corner E4".into(),
        blocks: vec![m, n],
        residual_of: None,
    }
}

fn p2_full() -> MatrixUnitScheme {
    let low = low_block("1", '+');
    let right = [["E1A3E4", "E1A2E4"], ["E2A3E4", "E2A1E3A2E4"], ["E3A1E2A3E4", "E3A2E4"]];
    let left = [["E4A2E1", "E4A2E3A1E2", "E4A2E3"], ["E4A3E1", "E4A3E2", "E4A3E2A1E3"]];
    let corner = [
        ["E4A2E1A3E4", "E4A1E3A2E4 + E4A3E1A2E4"],
        ["E4A1E2A3E4 + E4A2E1A3E4", "E4A3E1A2E4"],
    ];
    let m = grid(5, |g, h| match (g <= 3, h <= 3) {
        (true, true) => ex(&low[g - 1][h - 1]),
        (true, false) => ex(right[g - 1][h - 4]),
        (false, true) => ex(left[g - 4][h - 1]),
        (false, false) => ex(corner[g - 4][h - 4]),
    });
    let n = table(&[&["E4 + E4A2E1A3E4 + E4A3E1A2E4"]]);
    MatrixUnitScheme {
        name: "case p = 2".into(),
        blocks: vec![m, j_block(4, |_, _| "1".into()), n],
        residual_of: None,
    }
}

const THREE_CORNER: [[&str; 2]; 2] = [
    [
        "{1/3}(E4JE4 - 2E4A1E2A3E4 - E4A1E3A2E4)",
        "{1/3}(E4A1E3A2E4 - E4A1E2A3E4)",
    ],
    [
        "{1/3}(E4A2E3A1E4 - E4A2E1A3E4)",
        "{1/3}(E4JE4 - 2E4A2E1A3E4 - E4A2E3A1E4)",
    ],
];

fn case_three_corner() -> MatrixUnitScheme {
    MatrixUnitScheme {
        name: "case III, corner E4".into(),
        blocks: vec![
            grid(2, |g, h| ex(THREE_CORNER[g - 1][h - 1])),
            table(&[&["{1/6}E4JE4"]]),
        ],
        residual_of: Some(ex("E4")),
    }
}

fn case_three() -> MatrixUnitScheme {
    let low = low_block("1/3", '-');
    let right = [
        ["{1/3}(2E1A3E4 + E1A2E4 - E1JE4)", "{1/3}(2E1A3E4 + E1A2E3A1E4 - E1JE4)"],
        ["{1/3}(2E2A3E4 + E2A1E3A2E4 - E2JE4)", "{1/3}(2E2A3E4 + E2A1E4 - E2JE4)"],
        [
            "{1/3}(2E3A1E2A3E4 + E3A2E4 - E3JE4)",
            "{1/3}(2E3A1E2A3E4 + E3A1E4 - E3JE4)",
        ],
    ];
    let left = [
        ["{1/3}E4JE1 - E4A1E3A2E1", "{1/3}E4JE2 - E4A1E2", "{1/3}E4JE3 - E4A1E3"],
        ["{1/3}E4JE1 - E4A2E1", "{1/3}E4JE2 - E4A2E3A1E2", "{1/3}E4JE3 - E4A2E3"],
    ];
    let m = grid(5, |g, h| match (g <= 3, h <= 3) {
        (true, true) => ex(&low[g - 1][h - 1]),
        (true, false) => ex(right[g - 1][h - 4]),
        (false, true) => ex(left[g - 4][h - 1]),
        (false, false) => ex(THREE_CORNER[g - 4][h - 4]),
    });
    let n = j_block(5, |g, _| match g {
        1 => "1".into(),
        5 => "1/6".into(),
        _ => "1/3".into(),
    });
    MatrixUnitScheme {
        name: "case III".into(),
        blocks: vec![m, n],
        residual_of: Some(AlgExpr::identity()),
    }
}

const C1: &str = "n-1";
const C2: &str = "n-2";
const C3: &str = "n-3";
const C4: &str = "(n-1)*(n-2)";
const C5: &str = "(n-1)*(n-4)";

/// `c5^{-1}(body)` with `c3` substituted.
fn over_c5(body: &str) -> AlgExpr {
    ex(&format!("{{1/({C5})}}({})", body.replace("c3", &format!("{{{C3}}}"))))
}

const FOUR_CORNER: [[&str; 3]; 3] = [
    [
        "E4A2E3A1E4 + E4A3E2A1E4 + c3(E4 + E4A1E4) - E4JE4",
        "E4 + E4A2E4 + E4A3E1A2E4 + c3 E4A1E3A2E4 - E4JE4",
        "E4 + E4A3E4 + E4A2E1A3E4 + c3 E4A1E2A3E4 - E4JE4",
    ],
    [
        "E4 + E4A1E4 + E4A3E2A1E4 + c3 E4A2E3A1E4 - E4JE4",
        "E4A1E3A2E4 + E4A3E1A2E4 + c3(E4 + E4A2E4) - E4JE4",
        "E4 + E4A3E4 + E4A1E2A3E4 + c3 E4A2E1A3E4 - E4JE4",
    ],
    [
        "E4 + E4A1E4 + E4A2E3A1E4 + c3 E4A3E2A1E4 - E4JE4",
        "E4 + E4A2E4 + E4A1E3A2E4 + c3 E4A3E1A2E4 - E4JE4",
        "E4A1E2A3E4 + E4A2E1A3E4 + c3(E4 + E4A3E4) - E4JE4",
    ],
];

fn case_four_corner() -> MatrixUnitScheme {
    MatrixUnitScheme {
        name: "case IV, corner E4".into(),
        blocks: vec![
            grid(3, |g, h| over_c5(FOUR_CORNER[g - 1][h - 1])),
            vec![vec![ex(&format!("{{1/({C4})}}E4JE4"))]],
        ],
        residual_of: Some(ex("E4")),
    }
}

fn case_four() -> MatrixUnitScheme {
    let inv_c1 = format!("1/({C1})");
    let low = low_block(&inv_c1, '-');
    let right = [
        ["E1A2E3A1E4", "E1A2E4", "E1A3E4"],
        ["E2A1E4", "E2A1E3A2E4", "E2A3E4"],
        ["E3A1E4", "E3A2E4", "E3A1E2A3E4"],
    ];
    let left = [
        [
            "E4A2E1 + E4A3E1 + c3 E4A1E3A2E1 - E4JE1",
            "E4A3E2 + E4A2E3A1E2 + c3 E4A1E2 - E4JE2",
            "E4A2E3 + E4A3E2A1E3 + c3 E4A1E3 - E4JE3",
        ],
        [
            "E4A3E1 + E4A1E3A2E1 + c3 E4A2E1 - E4JE1",
            "E4A1E2 + E4A3E2 + c3 E4A2E3A1E2 - E4JE2",
            "E4A1E3 + E4A3E2A1E3 + c3 E4A2E3 - E4JE3",
        ],
        [
            "E4A2E1 + E4A1E3A2E1 + c3 E4A3E1 - E4JE1",
            "E4A1E2 + E4A2E3A1E2 + c3 E4A3E2 - E4JE2",
            "E4A1E3 + E4A2E3 + c3 E4A3E2A1E3 - E4JE3",
        ],
    ];
    let m = grid(6, |g, h| match (g <= 3, h <= 3) {
        (true, true) => ex(&low[g - 1][h - 1]),
        (true, false) => ex(&format!("{} - {{{inv_c1}}}E{g}JE4", right[g - 1][h - 4])),
        (false, true) => over_c5(left[g - 4][h - 1]),
        (false, false) => over_c5(FOUR_CORNER[g - 4][h - 4]),
    });
    let n = j_block(5, |g, h| match (g, h) {
        (1, 5) => format!("1/({C2})"),
        (1, _) => "1".into(),
        (_, 5) => format!("1/({C4})"),
        _ => inv_c1.clone(),
    });
    MatrixUnitScheme {
        name: "case IV".into(),
        blocks: vec![m, n],
        residual_of: Some(AlgExpr::identity()),
    }
}

/// Units of the corner at `E_a` for `a` in `[0, 3]`.
fn small_corner(case: Case, a: u8) -> MatrixUnitScheme {
    let name = format!("{}, corner E{a}", case.name());
    let blocks = if a == 0 || matches!(case, Case::I) {
        vec![vec![vec![ex(&format!("E{a}"))]]]
    } else {
        vec![
            vec![vec![ex(&format!("{{1/({C1})}}E{a}JE{a}"))]],
            vec![vec![ex(&format!("E{a} - {{1/({C1})}}E{a}JE{a}"))]],
        ]
    };
    MatrixUnitScheme {
        name,
        blocks,
        residual_of: None,
    }
}

/// The unit table of a case, for the whole algebra or for the corner at
/// `E_corner`.
pub fn matrix_unit_scheme(case: Case, p: u64, corner: Option<u8>) -> Result<MatrixUnitScheme> {
    Ok(match (case, corner) {
        (Case::I, None) => case_one(),
        (Case::I, Some(4)) => case_one_corner(),
        (Case::II, None) => case_two(),
        (Case::II, Some(4)) if p != 2 => case_two_corner(),
        (Case::P2, None) => p2_full(),
        (Case::P2, Some(4)) => p2_corner(),
        (Case::III, None) => case_three(),
        (Case::III, Some(4)) => case_three_corner(),
        (Case::IV, None) => case_four(),
        (Case::IV, Some(4)) => case_four_corner(),
        (c, Some(a @ 0..=3)) => small_corner(c, a),
        (c, corner) => {
            return Err(Error::Unsupported(format!(
                "no unit table for {} with corner {corner:?}",
                c.name()
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_sizes_per_case() {
        let sizes = |c, p, k| matrix_unit_scheme(c, p, k).unwrap().block_sizes();
        assert_eq!(sizes(Case::I, 5, None), [4, 1, 1]);
        assert_eq!(sizes(Case::II, 3, None), [6, 4, 1]);
        assert_eq!(sizes(Case::P2, 2, None), [5, 4, 1]);
        assert_eq!(sizes(Case::III, 7, None), [5, 5, 1]);
        assert_eq!(sizes(Case::IV, 5, None), [6, 5, 1]);
        assert_eq!(sizes(Case::I, 5, Some(4)), [1, 1]);
        assert_eq!(sizes(Case::II, 3, Some(4)), [3, 1]);
        assert_eq!(sizes(Case::P2, 2, Some(4)), [2, 1]);
        assert_eq!(sizes(Case::III, 7, Some(4)), [2, 1, 1]);
        assert_eq!(sizes(Case::IV, 5, Some(4)), [3, 1, 1]);
        assert_eq!(sizes(Case::I, 5, Some(2)), [1]);
        assert_eq!(sizes(Case::IV, 5, Some(2)), [1, 1]);
        assert_eq!(sizes(Case::IV, 5, Some(0)), [1]);
    }

    #[test]
    fn transcribed_entries() {
        let one = matrix_unit_scheme(Case::I, 5, None).unwrap();
        assert_eq!(one.blocks[0][0][1], ex("E1A3E2"));
        let p2 = matrix_unit_scheme(Case::P2, 2, Some(4)).unwrap();
        assert_eq!(p2.blocks[0][0][0], ex("E4A2E1A3E4"));
        let four = matrix_unit_scheme(Case::IV, 5, None).unwrap();
        assert_eq!(four.blocks[0][3][3], over_c5(FOUR_CORNER[0][0]));
        assert_eq!(four.blocks[1][0][4], ex("{1/(n-2)}E0JE4"));
    }

    #[test]
    fn residual_is_identity_minus_diagonals() {
        let s = matrix_unit_scheme(Case::III, 7, Some(4)).unwrap();
        let blocks = s.materialized();
        let last = &blocks.last().unwrap()[0][0];
        let expect = ex("E4")
            .sub(&blocks[0][0][0])
            .sub(&blocks[0][1][1])
            .sub(&blocks[1][0][0]);
        assert_eq!(last, &expect);
    }
}
