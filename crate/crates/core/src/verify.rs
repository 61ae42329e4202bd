//! Registry of checkable identities and entry-level claims about the
//! products `E_a A_b E_c ...`, evaluated exactly against a context.
//!
//! Identities are stored as index templates (`g`, `h`, `i` bound per
//! instantiation) and compared entrywise. Predicates scan matrix entries
//! against coordinate formulas or test span (non-)membership in `T0`.
//! Entry ids follow the labels of the source lemmas, e.g. `L2.15.iv`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::t0_basis;
use crate::context::TerwilligerContext;
use crate::error::{Error, Result};
use crate::expr::{AlgExpr, Atom};
use crate::matrix::GfMatrix;
use crate::subspace::SubspaceBasis;

/// Default seed for sampled checks.
pub const DEFAULT_SEED: u64 = 0x7f0e_2d11;

/// Number of sampled rows per instantiation at `n > 4`.
const ROW_SAMPLES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantifier {
    /// No indices.
    Single,
    /// `{g, h, i} = [1, 3]`.
    Perm,
    /// `g, h` in `[1, 3]`, `g != h`.
    DistinctPair,
    /// Every tuple in `[0, 4]^k`.
    Cube(u8),
}

impl Quantifier {
    pub fn instances(self) -> Vec<Vec<u8>> {
        match self {
            Quantifier::Single => vec![vec![]],
            Quantifier::Perm => crate::notation::PERMS.iter().map(|p| p.to_vec()).collect(),
            Quantifier::DistinctPair => {
                let mut out = Vec::new();
                for g in 1..=3 {
                    for h in 1..=3 {
                        if g != h {
                            out.push(vec![g, h]);
                        }
                    }
                }
                out
            }
            Quantifier::Cube(k) => {
                let mut out = vec![vec![]];
                for _ in 0..k {
                    out = out
                        .into_iter()
                        .flat_map(|t: Vec<u8>| {
                            (0..=4).map(move |v| {
                                let mut t = t.clone();
                                t.push(v);
                                t
                            })
                        })
                        .collect();
                }
                out
            }
        }
    }

    fn letters(self) -> &'static [char] {
        match self {
            Quantifier::Perm => &['g', 'h', 'i'],
            Quantifier::DistinctPair => &['g', 'h'],
            Quantifier::Cube(_) => &['a', 'b', 'c'],
            Quantifier::Single => &[],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Always,
    NEquals(usize),
    NAbove(usize),
    P2N8,
    PNot2NAbove4,
}

impl Hypothesis {
    pub fn holds(self, p: u32, n: usize) -> bool {
        match self {
            Hypothesis::Always => true,
            Hypothesis::NEquals(m) => n == m,
            Hypothesis::NAbove(m) => n > m,
            Hypothesis::P2N8 => p == 2 && n == 8,
            Hypothesis::PNot2NAbove4 => p != 2 && n > 4,
        }
    }

    pub fn describe(self) -> String {
        match self {
            Hypothesis::Always => "always".into(),
            Hypothesis::NEquals(m) => format!("n = {m}"),
            Hypothesis::NAbove(m) => format!("n > {m}"),
            Hypothesis::P2N8 => "p = 2 and n = 8".into(),
            Hypothesis::PNot2NAbove4 => "p != 2 and n > 4".into(),
        }
    }
}

type ExprPairs = fn(&TerwilligerContext, &[u8]) -> Vec<(AlgExpr, AlgExpr)>;
type PredFn = fn(&mut Probe, &[u8]) -> Result<Option<String>>;

#[derive(Clone, Copy)]
enum Check {
    Template(&'static str, &'static str),
    Exprs(ExprPairs, &'static str),
    Pred(PredFn, &'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Identity,
    Predicate,
}

#[derive(Clone, Copy)]
pub struct Entry {
    pub id: &'static str,
    pub quantifier: Quantifier,
    pub hypothesis: Hypothesis,
    /// Needs an elementary abelian 2-group.
    pub needs_ea2: bool,
    check: Check,
}

impl Entry {
    pub fn kind(&self) -> EntryKind {
        match self.check {
            Check::Pred(..) => EntryKind::Predicate,
            _ => EntryKind::Identity,
        }
    }

    pub fn statement(&self) -> String {
        match self.check {
            Check::Template(l, r) => format!("{l} = {r}"),
            Check::Exprs(_, s) | Check::Pred(_, s) => s.to_string(),
        }
    }

    pub fn applies(&self, ctx: &TerwilligerContext) -> bool {
        (!self.needs_ea2 || ctx.is_elementary_abelian()) && self.hypothesis.holds(ctx.p(), ctx.n())
    }
}

const fn tpl(id: &'static str, q: Quantifier, h: Hypothesis, ea2: bool, l: &'static str, r: &'static str) -> Entry {
    Entry {
        id,
        quantifier: q,
        hypothesis: h,
        needs_ea2: ea2,
        check: Check::Template(l, r),
    }
}

const fn pred(id: &'static str, q: Quantifier, h: Hypothesis, ea2: bool, f: PredFn, s: &'static str) -> Entry {
    Entry {
        id,
        quantifier: q,
        hypothesis: h,
        needs_ea2: ea2,
        check: Check::Pred(f, s),
    }
}

const fn exprs(id: &'static str, q: Quantifier, f: ExprPairs, s: &'static str) -> Entry {
    Entry {
        id,
        quantifier: q,
        hypothesis: Hypothesis::Always,
        needs_ea2: false,
        check: Check::Exprs(f, s),
    }
}

use Hypothesis::{Always, NAbove, NEquals, PNot2NAbove4, P2N8};
use Quantifier::{Cube, DistinctPair, Perm, Single};

const SIX: &str = "E4A1E2A3E4 + E4A1E3A2E4 + E4A2E1A3E4 + E4A2E3A1E4 + E4A3E1A2E4 + E4A3E2A1E4";

static REGISTRY: &[Entry] = &[
    pred("Eq.1", Cube(1), Always, false, eq1_transposes, "A_a^T = A_a and E_a^T = E_a"),
    exprs("Eq.2", Cube(2), eq2_products, "A_aA_b = sum_j p^j_{ab} A_j and E_aE_b = delta_{ab} E_a"),
    exprs("Eq.3", Single, eq3_sums, "J = sum_j A_j and I = sum_j E_j"),
    pred("Eq.4", Cube(2), Always, false, eq4_all_ones, "E_aJE_b != O and JE_aJ = k_a J"),
    exprs("TP.i", Cube(3), tp_row_sums, "E_aA_bE_cJ = p^a_{cb} E_aJ and JE_aA_bE_c = p^c_{ab} JE_c"),
    pred("TP.ii", Cube(3), Always, false, tp_thin_corner, "E_aA_bE_c != O and min(k_a, k_c) = 1 imply E_aA_bE_c = E_aJE_c"),
    pred("TP.iii", Cube(3), Always, false, tp_nonzero, "E_aA_bE_c != O iff p^a_{cb} != 0"),
    pred("TP.iv", Single, Always, false, tp_t0_basis, "the nonzero E_aA_bE_c form a basis of T0"),
    pred("TP.v", Single, Always, false, tp_b4_ideal, "span{E_aJE_b : p | k_a k_b} is a nilpotent two-sided ideal of T"),
    pred("TP.vi", Cube(3), Always, false, tp_entry_count, "(y,z) entry of E_gA_aE_bA_cE_s is |yR_a ∩ xR_b ∩ zR_c| for y in xR_g, z in xR_s"),
    pred("L1.2", Single, Always, true, l1_2_coordinates, "any two coordinates of a triple multiply to the third"),
    pred("L1.3", Perm, Always, true, l1_3_zero_entries, "y in xR_g, z in xR_4 ∩ (yR_h ∪ yR_i): (y,z) entry of EgAhEiAgE4 is 0"),
    pred("L1.4", Perm, NAbove(4), true, l1_4_not_in_t0, "EgAhEiAgE4, E4AgEiAhEg not in T0"),
    identity_n4("L1.5.i", "EgAhEiAgE4", "EgA4E4"),
    identity_n4("L1.5.ii", "E4AgEiAhEg", "E4A4Eg"),
    pred("L1.6", Perm, Always, false, l1_6_unit_entries, "nonzero (y,z) entry of E4AgEhAiE4 means |yR_g ∩ xR_h ∩ zR_i| = 1 and entry 1"),
    pred("L1.7", Perm, Always, true, l1_7_support, "y in xR_4, z in xR_4 ∩ yR_4: x_i y_g not in {x_h, y_h}; nonzero entry forces z_i = x_h y_g, z_h not in {x_h, y_h, x_i y_g}"),
    pred("L1.8", Perm, Always, true, l1_8_constructed, "z_i = x_h y_g, z_h not in {x_h, y_h, x_i y_g}: z in xR_4 ∩ yR_4, entry 1"),
    pred("L1.9", Perm, Always, true, l1_9_not_in_t0, "E4AgEhAiE4 not in T0"),
    pred("L1.10", Perm, Always, true, l1_10_support, "z in xR_4 ∩ yR_h with nonzero entry: z = (x_h y_i, y_h, x_h y_g) in positions (g, h, i)"),
    pred("L1.11", Perm, Always, true, l1_11_constructed, "z = (x_h y_i, y_h, x_h y_g) in positions (g, h, i): z in xR_4 ∩ yR_h, entry 1"),
    pred("L1.12", Perm, Always, true, l1_12_zero_entries, "y, z in xR_4, z in yR_0 ∪ yR_g ∪ yR_i: entry of E4AgEhAiE4 is 0"),
    pred("L1.13", Perm, Always, true, l1_13_common_support, "E4AgEhAiE4 and E4AiEhAgE4 both nonzero at (y,z) iff z = (x_h y_i, y_h, x_h y_g)"),
    pred("L1.14", Perm, Always, true, l1_14_disjoint_support, "E4AgEhAiE4 shares no nonzero entry with E4AhEgAiE4 or with E4AgEiAhE4"),
    pred("L1.15", Perm, Always, true, l1_15_common_support, "E4AgEhAiE4 with E4AiEgAhE4 (or E4AhEiAgE4) both nonzero iff z = (x_i y_h, x_g y_i, x_h y_g)"),
    pred("L1.16", Single, NAbove(4), true, l1_16_intersection, "the span of the six E4AgEhAiE4 meets T0 in at most span{E4A4E4}"),
    pred("L1.17", Single, NAbove(4), true, l1_17_intersection, "without E4A1E2A3E4, or for n > 8, the six span meets T0 trivially"),
    pred("L1.18", Single, PNot2NAbove4, true, l1_18_intersection, "the span of the six E4AgEhAiE4 meets T0 trivially"),
    tpl("L1.19", Single, P2N8, true, SIX, "E4A4E4"),
    tpl("L1.20.i", Single, NEquals(4), true, "E4A1E3A2E4 + E4A1E2A3E4", "E4A2E4 + E4A3E4 + E4A4E4"),
    tpl("L1.20.ii", Single, NEquals(4), true, "E4A2E1A3E4 + E4A1E2A3E4", "E4A1E4 + E4A2E4 + E4A4E4"),
    tpl("L1.20.iii", Single, NEquals(4), true, "E4A2E3A1E4 - E4A1E2A3E4", "E4A3E4 - E4A2E4"),
    tpl("L1.20.iv", Single, NEquals(4), true, "E4A3E1A2E4 - E4A1E2A3E4", "E4A1E4 - E4A2E4"),
    tpl("L1.20.v", Single, NEquals(4), true, "E4A3E2A1E4 + E4A1E2A3E4", "{2}E4A2E4 + E4A4E4"),
    general("L2.1", "EgAhEiAhEg", "Eg"),
    ea2("L2.2", "EgAhEiAgEh", "EgAiEh"),
    general("L2.3.i", "EgAhEiAhE4", "EgAhE4"),
    general("L2.3.ii", "E4AhEiAhEg", "E4AhEg"),
    ea2("L2.4.i", "EgAhEiAgE4", "EgAiEhAgE4"),
    ea2("L2.4.ii", "E4AgEiAhEg", "E4AgEhAiEg"),
    ea2("L2.5.i", "EgAhE4AgEh", "EgJEh - EgAiEh"),
    ea2("L2.5.ii", "EgAhE4AgEi", "EgJEi - EgAhEi"),
    ea2("L2.5.iii", "EgAhE4AhEg", "{n-2}Eg"),
    ea2("L2.5.iv", "EgAhE4AhEi", "{n-2}EgAhEi"),
    ea2("L2.5.v", "EgAhE4AiEg", "EgJEg - Eg"),
    ea2("L2.5.vi", "EgAhE4AiEh", "EgJEh - EgAiEh"),
    ea2("L2.6.i", "EiAhEgAhEiAgE4", "EiAgE4"),
    ea2("L2.6.ii", "E4AgEiAhEgAhEi", "E4AgEi"),
    ea2("L2.6.iii", "EhAiEgAhEiAgE4", "EhAgE4"),
    ea2("L2.6.iv", "E4AgEiAhEgAiEh", "E4AgEh"),
    ea2("L2.7.i", "EgAhEiAgE4AgEh", "{n-2}EgAiEh"),
    ea2("L2.7.ii", "EhAgE4AgEiAhEg", "{n-2}EhAiEg"),
    ea2("L2.7.iii", "EgAhEiAgE4AgEi", "{n-2}EgAhEi"),
    ea2("L2.7.iv", "EiAgE4AgEiAhEg", "{n-2}EiAhEg"),
    ea2("L2.7.v", "EgAhEiAgE4AhEg", "EgJEg - Eg"),
    ea2("L2.7.vi", "EgAhE4AgEiAhEg", "EgJEg - Eg"),
    ea2("L2.7.vii", "EgAhEiAgE4AhEi", "EgJEi - EgAhEi"),
    ea2("L2.7.viii", "EiAhE4AgEiAhEg", "EiJEg - EiAhEg"),
    ea2("L2.7.ix", "EgAhEiAgE4AiEg", "EgJEg - Eg"),
    ea2("L2.7.x", "EgAiE4AgEiAhEg", "EgJEg - Eg"),
    ea2("L2.7.xi", "EgAhEiAgE4AiEh", "EgJEh - EgAiEh"),
    ea2("L2.7.xii", "EhAiE4AgEiAhEg", "EhJEg - EhAiEg"),
    general("L2.8.i", "EgAhE4AgE4", "EgJE4 - EgAhE4 - EgAhEiAgE4"),
    general("L2.8.ii", "E4AgE4AhEg", "E4JEg - E4AhEg - E4AgEiAhEg"),
    general("L2.8.iii", "EgAhE4AhE4", "{n-3}EgAhE4"),
    general("L2.8.iv", "E4AhE4AhEg", "{n-3}E4AhEg"),
    general("L2.8.v", "EgAhE4AiE4", "EgJE4 - EgAhE4 - EgAiE4"),
    general("L2.8.vi", "E4AiE4AhEg", "E4JEg - E4AhEg - E4AiEg"),
    tpl("L2.9", DistinctPair, Always, false, "E4AgEhAgE4", "E4 + E4AgE4"),
    ea2("L2.10.i", "EgAhEiAgE4AgE4", "{n-3}EgAhEiAgE4"),
    ea2("L2.10.ii", "E4AgE4AgEiAhEg", "{n-3}E4AgEiAhEg"),
    ea2("L2.10.iii", "EgAhEiAgE4AhE4", "EgJE4 - EgAhE4 - EgAhEiAgE4"),
    ea2("L2.10.iv", "E4AhE4AgEiAhEg", "E4JEg - E4AhEg - E4AgEiAhEg"),
    ea2("L2.10.v", "EgAhEiAgE4AiE4", "EgJE4 - EgAiE4 - EgAhEiAgE4"),
    ea2("L2.10.vi", "E4AiE4AgEiAhEg", "E4JEg - E4AiEg - E4AgEiAhEg"),
    ea2("L2.11.i", "E4AhEgAhEiAgE4", "E4AhEiAgE4"),
    ea2("L2.11.ii", "E4AgEiAhEgAhE4", "E4AgEiAhE4"),
    ea2("L2.11.iii", "E4AiEgAhEiAgE4", "E4AiEhAgE4"),
    ea2("L2.11.iv", "E4AgEiAhEgAiE4", "E4AgEhAiE4"),
    ea2("L2.12.i", "EhAgE4AgEhAiE4", "{n-2}EhAiE4"),
    ea2("L2.12.ii", "E4AiEhAgE4AgEh", "{n-2}E4AiEh"),
    ea2("L2.12.iii", "EiAgE4AgEhAiE4", "{n-2}EiAgEhAiE4"),
    ea2("L2.12.iv", "E4AiEhAgE4AgEi", "{n-2}E4AiEhAgEi"),
    ea2("L2.12.v", "EgAhE4AgEhAiE4", "EgJE4 - EgAiE4"),
    ea2("L2.12.vi", "E4AiEhAgE4AhEg", "E4JEg - E4AiEg"),
    ea2("L2.12.vii", "EiAhE4AgEhAiE4", "EiJE4 - EiAgEhAiE4"),
    ea2("L2.12.viii", "E4AiEhAgE4AhEi", "E4JEi - E4AiEhAgEi"),
    ea2("L2.12.ix", "EgAiE4AgEhAiE4", "EgJE4 - EgAiE4"),
    ea2("L2.12.x", "E4AiEhAgE4AiEg", "E4JEg - E4AiEg"),
    ea2("L2.12.xi", "EhAiE4AgEhAiE4", "EhJE4 - EhAiE4"),
    ea2("L2.12.xii", "E4AiEhAgE4AiEh", "E4JEh - E4AiEh"),
    general("L2.13.i", "E4AgE4AgE4", "{n-3}E4 + {n-4}E4AgE4"),
    general("L2.13.ii", "E4AgE4AhE4", "E4JE4 - E4 - E4AgE4 - E4AhE4 - E4AgEiAhE4"),
    general("L2.14.i", "E4AgE4AgEhAiE4", "{n-3}E4AgEhAiE4"),
    general("L2.14.ii", "E4AiEhAgE4AgE4", "{n-3}E4AiEhAgE4"),
    ea2("L2.14.iii", "E4AhE4AgEhAiE4", "E4JE4 - E4AgEhAiE4 - E4AhEgAiE4"),
    ea2("L2.14.iv", "E4AiEhAgE4AhE4", "E4JE4 - E4AiEhAgE4 - E4AiEgAhE4"),
    general("L2.14.v", "E4AiE4AgEhAiE4", "E4JE4 - E4AgEhAiE4 - E4 - E4AiE4"),
    general("L2.14.vi", "E4AiEhAgE4AiE4", "E4JE4 - E4AiEhAgE4 - E4 - E4AiE4"),
    ea2("L2.15.i", "E4AgEhAiE4AgEhAiE4", "E4JE4 - E4AgEhAiE4"),
    ea2("L2.15.ii", "E4AgEhAiE4AgEiAhE4", "E4JE4 - E4AgEiAhE4"),
    ea2("L2.15.iii", "E4AgEhAiE4AhEgAiE4", "E4JE4 - E4AgEhAiE4"),
    ea2("L2.15.iv", "E4AgEhAiE4AhEiAgE4", "E4JE4 - E4 - E4AgE4"),
    ea2("L2.15.v", "E4AgEhAiE4AiEgAhE4", "{n-2}E4AgEiAhE4"),
    ea2("L2.15.vi", "E4AgEhAiE4AiEhAgE4", "{n-2}E4 + {n-2}E4AgE4"),
];

const fn general(id: &'static str, l: &'static str, r: &'static str) -> Entry {
    tpl(id, Perm, Always, false, l, r)
}

const fn ea2(id: &'static str, l: &'static str, r: &'static str) -> Entry {
    tpl(id, Perm, Always, true, l, r)
}

const fn identity_n4(id: &'static str, l: &'static str, r: &'static str) -> Entry {
    tpl(id, Perm, NEquals(4), true, l, r)
}

pub fn registry() -> &'static [Entry] {
    REGISTRY
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub id: String,
    pub kind: EntryKind,
    pub quantifier: Quantifier,
    pub hypothesis: String,
    pub needs_elementary_abelian: bool,
    pub statement: String,
}

/// Stable listing of every registry entry.
pub fn registry_manifest() -> Vec<ManifestEntry> {
    REGISTRY
        .iter()
        .map(|e| ManifestEntry {
            id: e.id.into(),
            kind: e.kind(),
            quantifier: e.quantifier,
            hypothesis: e.hypothesis.describe(),
            needs_elementary_abelian: e.needs_ea2,
            statement: e.statement(),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Identities,
    Predicates,
    #[default]
    All,
}

impl Suite {
    fn includes(self, k: EntryKind) -> bool {
        matches!(
            (self, k),
            (Suite::All, _) | (Suite::Identities, EntryKind::Identity) | (Suite::Predicates, EntryKind::Predicate)
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunOptions {
    pub suite: Suite,
    /// Only entries whose id starts with this prefix.
    pub filter: Option<String>,
    pub seed: u64,
    /// Check the transposed form of every identity instead.
    pub transposed: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            suite: Suite::All,
            filter: None,
            seed: DEFAULT_SEED,
            transposed: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub indices: Vec<u8>,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryOutcome {
    pub id: String,
    pub kind: EntryKind,
    pub status: Status,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub p: u32,
    pub n: usize,
    pub basepoint: usize,
    pub options: RunOptions,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub entries: Vec<EntryOutcome>,
    pub pass: bool,
}

impl PartialEq for RunOptions {
    fn eq(&self, o: &Self) -> bool {
        self.suite == o.suite && self.filter == o.filter && self.seed == o.seed && self.transposed == o.transposed
    }
}

impl Eq for RunOptions {}

pub fn run_identities(ctx: &TerwilligerContext) -> VerifyReport {
    run(
        ctx,
        &RunOptions {
            suite: Suite::Identities,
            ..Default::default()
        },
    )
}

pub fn run_predicates(ctx: &TerwilligerContext) -> VerifyReport {
    run(
        ctx,
        &RunOptions {
            suite: Suite::Predicates,
            ..Default::default()
        },
    )
}

/// Runs the selected entries. Failures, including evaluation errors, are
/// report content; entries are merged in registry order.
pub fn run(ctx: &TerwilligerContext, opts: &RunOptions) -> VerifyReport {
    let selected: Vec<&Entry> = REGISTRY
        .iter()
        .filter(|e| opts.suite.includes(e.kind()))
        .filter(|e| opts.filter.as_ref().map_or(true, |f| e.id.starts_with(f.as_str())))
        .collect();
    let needs_t0 = selected
        .iter()
        .any(|e| e.kind() == EntryKind::Predicate && e.applies(ctx));
    let t0 = if needs_t0 { t0_basis(ctx).ok() } else { None };
    let entries: Vec<EntryOutcome> = selected
        .par_iter()
        .map(|e| run_entry(ctx, e, opts, t0.as_ref()))
        .collect();
    let count = |s| entries.iter().filter(|e| e.status == s).count();
    let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    VerifyReport {
        p: ctx.p(),
        n: ctx.n(),
        basepoint: ctx.basepoint(),
        options: opts.clone(),
        passed,
        failed,
        skipped,
        entries,
        pass: failed == 0,
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

fn run_entry(ctx: &TerwilligerContext, e: &Entry, opts: &RunOptions, t0: Option<&SubspaceBasis>) -> EntryOutcome {
    let skipped = EntryOutcome {
        id: e.id.into(),
        kind: e.kind(),
        status: Status::Skipped,
        instances: 0,
        failures: vec![],
    };
    if !e.applies(ctx) || (opts.transposed && e.kind() == EntryKind::Predicate) {
        return skipped;
    }
    let instances = e.quantifier.instances();
    let mut failures = Vec::new();
    for (k, idx) in instances.iter().enumerate() {
        let seed = opts.seed ^ fnv(e.id) ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let verdict = match e.check {
            Check::Template(l, r) => {
                let bind: Vec<(char, u8)> = e
                    .quantifier
                    .letters()
                    .iter()
                    .copied()
                    .zip(idx.iter().copied())
                    .collect();
                AlgExpr::parse_with(l, &bind)
                    .and_then(|l| Ok((l, AlgExpr::parse_with(r, &bind)?)))
                    .and_then(|pair| compare_pairs(ctx, &[pair], opts.transposed))
            }
            Check::Exprs(f, _) => compare_pairs(ctx, &f(ctx, idx), opts.transposed),
            Check::Pred(f, _) => {
                let mut probe = Probe {
                    ctx,
                    rng: ChaCha8Rng::seed_from_u64(seed),
                    t0,
                };
                f(&mut probe, idx)
            }
        };
        match verdict {
            Ok(None) => {}
            Ok(Some(w)) => failures.push(Failure {
                indices: idx.clone(),
                witness: w,
            }),
            Err(err) => failures.push(Failure {
                indices: idx.clone(),
                witness: format!("error: {err}"),
            }),
        }
    }
    EntryOutcome {
        id: e.id.into(),
        kind: e.kind(),
        status: if failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        instances: instances.len(),
        failures,
    }
}

fn compare_pairs(ctx: &TerwilligerContext, pairs: &[(AlgExpr, AlgExpr)], transposed: bool) -> Result<Option<String>> {
    for (l, r) in pairs {
        let (l, r) = if transposed {
            (l.transpose(), r.transpose())
        } else {
            (l.clone(), r.clone())
        };
        let (lm, rm) = (ctx.eval(&l)?, ctx.eval(&r)?);
        if let Some((y, z)) = first_difference(&lm, &rm) {
            return Ok(Some(format!(
                "{l} = {r} fails at ({y},{z}): {} vs {}",
                lm.get(y, z).value(),
                rm.get(y, z).value()
            )));
        }
    }
    Ok(None)
}

fn first_difference(a: &GfMatrix, b: &GfMatrix) -> Option<(usize, usize)> {
    if a == b {
        return None;
    }
    (0..a.n_rows())
        .flat_map(|y| (0..a.n_cols()).map(move |z| (y, z)))
        .find(|&(y, z)| a.get(y, z) != b.get(y, z))
}

/// Per-instantiation state for predicates.
pub struct Probe<'a> {
    ctx: &'a TerwilligerContext,
    rng: ChaCha8Rng,
    t0: Option<&'a SubspaceBasis>,
}

impl Probe<'_> {
    /// Exhaustive at `n = 4`, otherwise a seeded sample of rows.
    fn sample(&mut self, set: Vec<usize>) -> Vec<usize> {
        if self.ctx.n() == 4 || set.len() <= ROW_SAMPLES {
            return set;
        }
        let mut s: Vec<usize> = set.choose_multiple(&mut self.rng, ROW_SAMPLES).copied().collect();
        s.sort_unstable();
        s
    }

    fn sub(&self, a: usize) -> Vec<usize> {
        self.ctx
            .subconstituent_mask(a)
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(y, _)| y)
            .collect()
    }

    fn rel(&self, y: usize, z: usize) -> usize {
        self.ctx.triple_space().classify_pair(y, z)
    }

    fn coord(&self, y: usize, j: u8) -> u32 {
        self.ctx.triple_space().point(y)[j as usize - 1]
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.ctx.triple_space().group().op(a as usize, b as usize) as u32
    }

    fn x(&self, j: u8) -> u32 {
        self.coord(self.ctx.basepoint(), j)
    }

    /// The point with coordinates `va` at `a` and `vb` at `b`; the third
    /// coordinate is their product (valid in an elementary abelian 2-group).
    fn point_with(&self, a: u8, va: u32, b: u8, vb: u32) -> Option<usize> {
        let mut t = [0usize; 3];
        t[a as usize - 1] = va as usize;
        t[b as usize - 1] = vb as usize;
        let c = 6 - a - b;
        t[c as usize - 1] = self.mul(va, vb) as usize;
        self.ctx.triple_space().id_of(t)
    }

    /// `|yR_a ∩ xR_b ∩ zR_c|` by direct count.
    fn count(&self, y: usize, a: usize, b: usize, z: usize, c: usize) -> usize {
        let ts = self.ctx.triple_space();
        (0..ts.len())
            .filter(|&u| self.ctx.class_of(u) == b && ts.classify_pair(y, u) == a && ts.classify_pair(z, u) == c)
            .count()
    }

    fn word(&self, s: &str, idx: &[u8]) -> Result<GfMatrix> {
        let bind: Vec<(char, u8)> = ['g', 'h', 'i'].into_iter().zip(idx.iter().copied()).collect();
        self.ctx.eval(&AlgExpr::parse_with(s, &bind)?)
    }

    fn t0(&self) -> Result<&SubspaceBasis> {
        self.t0.ok_or_else(|| Error::Unsupported("T0 basis unavailable".into()))
    }

    fn span(&self, items: &[GfMatrix]) -> Result<SubspaceBasis> {
        let n = self.ctx.order();
        SubspaceBasis::span(n, n, self.ctx.modulus(), items)
    }
}

fn nz(m: &GfMatrix, y: usize, z: usize) -> bool {
    !m.get(y, z).is_zero()
}

fn eq1_transposes(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let a = idx[0] as usize;
    let am = pr.ctx.adjacency_matrix(a);
    if am.transpose() != *am {
        return Ok(Some(format!("A{a} is not symmetric")));
    }
    let em = pr.ctx.dual_idempotent(a);
    Ok((em.transpose() != *em).then(|| format!("E{a} is not symmetric")))
}

fn eq2_products(ctx: &TerwilligerContext, idx: &[u8]) -> Vec<(AlgExpr, AlgExpr)> {
    let (a, b) = (idx[0], idx[1]);
    let mut rhs = AlgExpr::zero();
    for j in 0..=4u8 {
        let c = ctx.p_int(a as usize, b as usize, j as usize);
        rhs = rhs.add(&AlgExpr::parse(&format!("{{{c}}}A{j}")).expect("literal"));
    }
    let lhs = AlgExpr::word(vec![Atom::A(a), Atom::A(b)]);
    let e = AlgExpr::word(vec![Atom::E(a), Atom::E(b)]);
    let er = if a == b {
        AlgExpr::atom(Atom::E(a))
    } else {
        AlgExpr::zero()
    };
    vec![(lhs, rhs), (e, er)]
}

fn eq3_sums(_ctx: &TerwilligerContext, _: &[u8]) -> Vec<(AlgExpr, AlgExpr)> {
    let p = |s: &str| AlgExpr::parse(s).expect("literal");
    vec![
        (p("J"), p("A0 + A1 + A2 + A3 + A4")),
        (p("I"), p("E0 + E1 + E2 + E3 + E4")),
    ]
}

fn eq4_all_ones(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (a, b) = (idx[0], idx[1]);
    if pr.word(&format!("E{a}JE{b}"), &[])?.is_zero() {
        return Ok(Some(format!("E{a}JE{b} = O")));
    }
    let k = pr.ctx.valency(b as usize);
    let l = pr.word(&format!("JE{b}J"), &[])?;
    let r = pr.word(&format!("{{{k}}}J"), &[])?;
    Ok((l != r).then(|| format!("JE{b}J != {k}J")))
}

fn tp_row_sums(ctx: &TerwilligerContext, idx: &[u8]) -> Vec<(AlgExpr, AlgExpr)> {
    let (a, b, c) = (idx[0], idx[1], idx[2]);
    let p = |s: String| AlgExpr::parse(&s).expect("literal");
    let left = ctx.p_int(c as usize, b as usize, a as usize);
    let right = ctx.p_int(a as usize, b as usize, c as usize);
    vec![
        (p(format!("E{a}A{b}E{c}J")), p(format!("{{{left}}}E{a}J"))),
        (p(format!("JE{a}A{b}E{c}")), p(format!("{{{right}}}JE{c}"))),
    ]
}

fn tp_thin_corner(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (a, b, c) = (idx[0], idx[1], idx[2]);
    let m = pr.word(&format!("E{a}A{b}E{c}"), &[])?;
    if m.is_zero() || pr.ctx.valency(a as usize).min(pr.ctx.valency(c as usize)) != 1 {
        return Ok(None);
    }
    Ok((m != pr.word(&format!("E{a}JE{c}"), &[])?).then(|| format!("E{a}A{b}E{c} != E{a}JE{c}")))
}

fn tp_nonzero(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (a, b, c) = (idx[0], idx[1], idx[2]);
    let nonzero = !pr.word(&format!("E{a}A{b}E{c}"), &[])?.is_zero();
    let p = pr.ctx.p_int(c as usize, b as usize, a as usize);
    Ok((nonzero != (p != 0)).then(|| format!("E{a}A{b}E{c} nonzero = {nonzero} but p = {p}")))
}

fn tp_t0_basis(pr: &mut Probe, _: &[u8]) -> Result<Option<String>> {
    let mut count = 0;
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                count += usize::from(pr.ctx.p_int(c, b, a) != 0);
            }
        }
    }
    let rank = pr.t0()?.rank();
    Ok((rank != count).then(|| format!("rank {rank} vs {count} nonzero triple products")))
}

fn tp_b4_ideal(pr: &mut Probe, _: &[u8]) -> Result<Option<String>> {
    let p = pr.ctx.p() as usize;
    let mut items = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            if (pr.ctx.valency(a) * pr.ctx.valency(b)) % p == 0 {
                items.push(pr.word(&format!("E{a}JE{b}"), &[])?);
            }
        }
    }
    let v = pr.span(&items)?;
    for a in 0..5u8 {
        for b in 0..5u8 {
            for c in 0..5u8 {
                let w = [Atom::E(a), Atom::A(b), Atom::E(c)];
                for m in &items {
                    if !v.contains(&pr.ctx.right_mul_word(m, &w))? || !v.contains(&pr.ctx.left_mul_word(&w, m))? {
                        return Ok(Some(format!("product with E{a}A{b}E{c} escapes")));
                    }
                }
            }
        }
    }
    let mut power = v.clone();
    for _ in 0..=items.len() {
        if power.is_zero() {
            return Ok(None);
        }
        let mut next = pr.span(&[])?;
        for q in power.rows() {
            for m in &items {
                next.insert(&q.mat_mul(m)?)?;
            }
        }
        power = next;
    }
    Ok(Some("powers do not vanish".into()))
}

fn tp_entry_count(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (a, b, c) = (idx[0] as usize, idx[1] as usize, idx[2] as usize);
    let m = pr.word(&format!("A{a}E{b}A{c}"), &[])?;
    // One outer pair (g, s) per instance; the linear map below reaches all 25.
    let g = (a + 2 * b + c) % 5;
    let s = (a + b + 3 * c) % 5;
    let full = pr.word(&format!("E{g}A{a}E{b}A{c}E{s}"), &[])?;
    let mo = pr.ctx.modulus();
    for y in pr.sample((0..pr.ctx.order()).collect()) {
        for z in 0..pr.ctx.order() {
            let expected = mo.scalar(pr.count(y, a, b, z, c) as u64);
            if m.get(y, z) != expected {
                return Ok(Some(format!(
                    "A{a}E{b}A{c} entry ({y},{z}) is {} vs count {}",
                    m.get(y, z).value(),
                    expected.value()
                )));
            }
            let inside = pr.ctx.class_of(y) == g && pr.ctx.class_of(z) == s;
            if full.get(y, z) != if inside { expected } else { mo.scalar(0) } {
                return Ok(Some(format!(
                    "E{g}A{a}E{b}A{c}E{s} entry ({y},{z}) is {}",
                    full.get(y, z).value()
                )));
            }
        }
    }
    Ok(None)
}

fn l1_2_coordinates(pr: &mut Probe, _: &[u8]) -> Result<Option<String>> {
    let ys = pr.sample((0..pr.ctx.order()).collect());
    for y in ys {
        for [a, b, c] in crate::notation::PERMS {
            if pr.mul(pr.coord(y, a), pr.coord(y, b)) != pr.coord(y, c) {
                return Ok(Some(format!("point {y}: y{a} y{b} != y{c}")));
            }
        }
    }
    Ok(None)
}

fn l1_3_zero_entries(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (g, h, i) = (idx[0] as usize, idx[1] as usize, idx[2] as usize);
    let m = pr.word("EgAhEiAgE4", idx)?;
    for y in pr.sample(pr.sub(g)) {
        for z in pr.sub(4) {
            let r = pr.rel(y, z);
            if (r == h || r == i) && nz(&m, y, z) {
                return Ok(Some(format!("nonzero entry at ({y},{z})")));
            }
        }
    }
    Ok(None)
}

fn not_in_t0(pr: &mut Probe, words: &[&str], idx: &[u8]) -> Result<Option<String>> {
    for w in words {
        let m = pr.word(w, idx)?;
        if pr.t0()?.contains(&m)? {
            return Ok(Some(format!("{w} lies in T0")));
        }
    }
    Ok(None)
}

fn l1_4_not_in_t0(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    not_in_t0(pr, &["EgAhEiAgE4", "E4AgEiAhEg"], idx)
}

fn l1_9_not_in_t0(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    not_in_t0(pr, &["E4AgEhAiE4"], idx)
}

fn l1_6_unit_entries(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (g, h, i) = (idx[0] as usize, idx[1] as usize, idx[2] as usize);
    let m = pr.word("E4AgEhAiE4", idx)?;
    for y in pr.sample(pr.sub(4)) {
        for z in 0..pr.ctx.order() {
            if nz(&m, y, z) && (m.get(y, z).value() != 1 || pr.count(y, g, h, z, i) != 1) {
                return Ok(Some(format!("entry ({y},{z})")));
            }
        }
    }
    Ok(None)
}

fn l1_7_support(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (g, h, i) = (idx[0], idx[1], idx[2]);
    let m = pr.word("E4AgEhAiE4", idx)?;
    for y in pr.sample(pr.sub(4)) {
        let c = pr.mul(pr.x(i), pr.coord(y, g));
        let three: BTreeSet<u32> = [pr.x(h), pr.coord(y, h), c].into();
        if three.len() != 3 {
            return Ok(Some(format!("row {y}: x_h, y_h, x_i y_g not distinct")));
        }
        for z in pr.sub(4) {
            if pr.rel(y, z) != 4 || !nz(&m, y, z) {
                continue;
            }
            if pr.coord(z, i) != pr.mul(pr.x(h), pr.coord(y, g)) || three.contains(&pr.coord(z, h)) {
                return Ok(Some(format!("entry ({y},{z}) outside the predicted support")));
            }
        }
    }
    Ok(None)
}

fn l1_8_constructed(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (h, i) = (idx[1], idx[2]);
    let g = idx[0];
    let m = pr.word("E4AgEhAiE4", idx)?;
    let order = pr.ctx.n() as u32;
    for y in pr.sample(pr.sub(4)) {
        let zi = pr.mul(pr.x(h), pr.coord(y, g));
        let banned = [pr.x(h), pr.coord(y, h), pr.mul(pr.x(i), pr.coord(y, g))];
        for zh in (0..order).filter(|w| !banned.contains(w)) {
            let Some(z) = pr.point_with(i, zi, h, zh) else {
                return Ok(Some(format!("row {y}: no point with the prescribed coordinates")));
            };
            if pr.ctx.class_of(z) != 4 || pr.rel(y, z) != 4 || m.get(y, z).value() != 1 {
                return Ok(Some(format!("constructed ({y},{z}) fails")));
            }
        }
    }
    Ok(None)
}

/// `z = (x_h y_i, y_h, x_h y_g)` in coordinate positions `(g, h, i)`.
fn formula_1013(pr: &Probe, y: usize, g: u8, h: u8, i: u8) -> Option<usize> {
    pr.point_with(h, pr.coord(y, h), i, pr.mul(pr.x(h), pr.coord(y, g)))
        .filter(|&z| pr.coord(z, g) == pr.mul(pr.x(h), pr.coord(y, i)))
}

fn l1_10_support(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (g, h, i) = (idx[0], idx[1], idx[2]);
    let m = pr.word("E4AgEhAiE4", idx)?;
    for y in pr.sample(pr.sub(4)) {
        let want = formula_1013(pr, y, g, h, i);
        for z in pr.sub(4) {
            if pr.rel(y, z) == h as usize && nz(&m, y, z) && Some(z) != want {
                return Ok(Some(format!("entry ({y},{z}) off the formula")));
            }
        }
    }
    Ok(None)
}

fn l1_11_constructed(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (g, h, i) = (idx[0], idx[1], idx[2]);
    let m = pr.word("E4AgEhAiE4", idx)?;
    for y in pr.sample(pr.sub(4)) {
        let Some(z) = formula_1013(pr, y, g, h, i) else {
            return Ok(Some(format!("row {y}: formula gives no point")));
        };
        if pr.ctx.class_of(z) != 4 || pr.rel(y, z) != h as usize || m.get(y, z).value() != 1 {
            return Ok(Some(format!("constructed ({y},{z}) fails")));
        }
    }
    Ok(None)
}

fn l1_12_zero_entries(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let (g, i) = (idx[0] as usize, idx[2] as usize);
    let m = pr.word("E4AgEhAiE4", idx)?;
    for y in pr.sample(pr.sub(4)) {
        for z in pr.sub(4) {
            let r = pr.rel(y, z);
            if (r == 0 || r == g || r == i) && nz(&m, y, z) {
                return Ok(Some(format!("nonzero entry at ({y},{z})")));
            }
        }
    }
    Ok(None)
}

/// For sampled rows, the columns where both words are nonzero are exactly
/// the predicted point.
fn common_support(
    pr: &mut Probe,
    idx: &[u8],
    a: &str,
    b: &str,
    predict: fn(&Probe, usize, &[u8]) -> Option<usize>,
) -> Result<Option<String>> {
    let (ma, mb) = (pr.word(a, idx)?, pr.word(b, idx)?);
    for y in pr.sample(pr.sub(4)) {
        let got: Vec<usize> = pr
            .sub(4)
            .into_iter()
            .filter(|&z| nz(&ma, y, z) && nz(&mb, y, z))
            .collect();
        let want: Vec<usize> = predict(pr, y, idx)
            .into_iter()
            .filter(|&z| pr.ctx.class_of(z) == 4)
            .collect();
        if got != want {
            return Ok(Some(format!("row {y}: common support {got:?}, predicted {want:?}")));
        }
    }
    Ok(None)
}

fn l1_13_common_support(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    common_support(pr, idx, "E4AgEhAiE4", "E4AiEhAgE4", |pr, y, t| {
        formula_1013(pr, y, t[0], t[1], t[2])
    })
}

/// `z = (x_i y_h, x_g y_i, x_h y_g)` in positions `(g, h, i)`.
fn formula_15(pr: &Probe, y: usize, t: &[u8]) -> Option<usize> {
    let (g, h, i) = (t[0], t[1], t[2]);
    pr.point_with(h, pr.mul(pr.x(g), pr.coord(y, i)), i, pr.mul(pr.x(h), pr.coord(y, g)))
        .filter(|&z| pr.coord(z, g) == pr.mul(pr.x(i), pr.coord(y, h)))
}

fn l1_15_common_support(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    if let Some(w) = common_support(pr, idx, "E4AgEhAiE4", "E4AiEgAhE4", formula_15)? {
        return Ok(Some(w));
    }
    common_support(pr, idx, "E4AgEhAiE4", "E4AhEiAgE4", formula_15)
}

fn l1_14_disjoint_support(pr: &mut Probe, idx: &[u8]) -> Result<Option<String>> {
    let m = pr.word("E4AgEhAiE4", idx)?;
    for other in ["E4AhEgAiE4", "E4AgEiAhE4"] {
        let o = pr.word(other, idx)?;
        for y in pr.sample(pr.sub(4)) {
            if let Some(z) = pr.sub(4).into_iter().find(|&z| nz(&m, y, z) && nz(&o, y, z)) {
                return Ok(Some(format!("{other} shares entry ({y},{z})")));
            }
        }
    }
    Ok(None)
}

const SIX_WORDS: [&str; 6] = [
    "E4A1E2A3E4",
    "E4A1E3A2E4",
    "E4A2E1A3E4",
    "E4A2E3A1E4",
    "E4A3E1A2E4",
    "E4A3E2A1E4",
];

/// Dimension of `span(words) ∩ T0`.
fn meet_t0(pr: &mut Probe, words: &[&str]) -> Result<(SubspaceBasis, usize)> {
    let mats = words.iter().map(|w| pr.word(w, &[])).collect::<Result<Vec<_>>>()?;
    let s = pr.span(&mats)?;
    let t0 = pr.t0()?;
    let joined = s.join(t0)?;
    Ok((s.clone(), s.rank() + t0.rank() - joined.rank()))
}

fn l1_16_intersection(pr: &mut Probe, _: &[u8]) -> Result<Option<String>> {
    let (s, meet) = meet_t0(pr, &SIX_WORDS)?;
    if s.rank() != 6 {
        return Ok(Some(format!("the six words have rank {}", s.rank())));
    }
    let e4a4e4 = pr.word("E4A4E4", &[])?;
    if meet > 1 || (meet == 1 && !s.contains(&e4a4e4)?) {
        return Ok(Some(format!("intersection with T0 has dimension {meet}")));
    }
    Ok(None)
}

fn l1_17_intersection(pr: &mut Probe, _: &[u8]) -> Result<Option<String>> {
    let (_, meet) = meet_t0(pr, &SIX_WORDS[1..])?;
    if meet != 0 {
        return Ok(Some(format!("five-word span meets T0 in dimension {meet}")));
    }
    if pr.ctx.n() > 8 {
        let (_, meet) = meet_t0(pr, &SIX_WORDS)?;
        if meet != 0 {
            return Ok(Some(format!("six-word span meets T0 in dimension {meet}")));
        }
    }
    Ok(None)
}

fn l1_18_intersection(pr: &mut Probe, _: &[u8]) -> Result<Option<String>> {
    let (_, meet) = meet_t0(pr, &SIX_WORDS)?;
    Ok((meet != 0).then(|| format!("six-word span meets T0 in dimension {meet}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_ids_are_unique_and_cover_anchors() {
        let m = registry_manifest();
        let ids: BTreeSet<&str> = m.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids.len(), m.len());
        assert!(ids.contains("L2.15.iv") && ids.contains("Eq.4"));
        assert!(m.len() >= 60);
    }

    #[test]
    fn templates_parse_for_every_instance() {
        for e in registry() {
            if let Check::Template(l, r) = e.check {
                for idx in e.quantifier.instances() {
                    let bind: Vec<(char, u8)> = e.quantifier.letters().iter().copied().zip(idx).collect();
                    AlgExpr::parse_with(l, &bind).unwrap();
                    AlgExpr::parse_with(r, &bind).unwrap();
                }
            }
        }
    }

    #[test]
    fn hypotheses_gate_entries() {
        let ctx = TerwilligerContext::elementary_abelian(3, 4, 0).unwrap();
        let rep = run(
            &ctx,
            &RunOptions {
                filter: Some("L1.19".into()),
                ..Default::default()
            },
        );
        assert_eq!(rep.entries[0].status, Status::Skipped);
        let ctx = TerwilligerContext::elementary_abelian(2, 8, 0).unwrap();
        let rep = run(
            &ctx,
            &RunOptions {
                filter: Some("L1.19".into()),
                ..Default::default()
            },
        );
        assert_eq!(rep.entries[0].status, Status::Pass);
    }

    #[test]
    fn everything_passes_at_n4() {
        for p in [2, 3, 5, 7] {
            let ctx = TerwilligerContext::elementary_abelian(p, 4, 0).unwrap();
            let rep = run(&ctx, &RunOptions::default());
            let bad: Vec<_> = rep.entries.iter().filter(|e| e.status == Status::Fail).collect();
            assert!(rep.pass, "p = {p}: {bad:?}");
        }
    }

    #[test]
    fn a_false_identity_reports_a_witness() {
        let ctx = TerwilligerContext::elementary_abelian(5, 4, 0).unwrap();
        let w = compare_pairs(
            &ctx,
            &[(AlgExpr::parse("E1A1E1").unwrap(), AlgExpr::parse("E1").unwrap())],
            false,
        )
        .unwrap();
        assert!(w.unwrap().contains("fails at"));
    }

    #[test]
    fn cube_instances() {
        assert_eq!(Quantifier::Cube(3).instances().len(), 125);
        assert_eq!(Quantifier::DistinctPair.instances().len(), 6);
    }
}
