//! Adjacency matrices, dual idempotents and word evaluation at a basepoint.
//!
//! Products with `A_1..A_3` go through neighbour lists, `J` through row or
//! column sums and `A_4` as `J - I - A_1 - A_2 - A_3`, so no dense product is
//! ever formed while evaluating words.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::expr::{AlgExpr, Atom};
use crate::field::{PrimeModulus, Scalar};
use crate::matrix::GfMatrix;
use crate::scheme::{AxiomCheck, GroupSpec, SchemeDescriptor, TripleSpace, CLASSES};

/// Prefix cache budget in bytes.
const CACHE_BYTES: usize = 256 << 20;

#[derive(Default)]
struct WordCache {
    map: HashMap<Vec<Atom>, Arc<GfMatrix>>,
    bytes: usize,
}

pub struct TerwilligerContext {
    ts: TripleSpace,
    sd: SchemeDescriptor,
    modulus: PrimeModulus,
    basepoint: usize,
    class_of: Vec<u8>,
    masks: Vec<Vec<bool>>,
    // nbrs[b-1][y*deg..(y+1)*deg] lists y R_b for b in 1..=3.
    nbrs: Vec<Vec<u32>>,
    deg: usize,
    adjacency: OnceLock<Vec<GfMatrix>>,
    duals: OnceLock<Vec<GfMatrix>>,
    cache: Mutex<WordCache>,
}

impl std::fmt::Debug for TerwilligerContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TerwilligerContext")
            .field("n", &self.ts.n())
            .field("p", &self.modulus.value())
            .field("basepoint", &self.basepoint)
            .finish()
    }
}

fn bytes_of(m: &GfMatrix) -> usize {
    let (r, c) = m.shape();
    if m.modulus().is_two() {
        r * c.div_ceil(64) * 8
    } else {
        r * c * 4
    }
}

impl TerwilligerContext {
    pub fn new(ts: TripleSpace, sd: SchemeDescriptor, modulus: PrimeModulus, basepoint: usize) -> Result<Self> {
        let big_n = ts.len();
        if basepoint >= big_n {
            return Err(Error::Unsupported(format!(
                "basepoint {basepoint} out of range 0..{big_n}"
            )));
        }
        if !sd.is_symmetric() {
            return Err(Error::Unsupported("scheme is not symmetric".into()));
        }
        let class_of: Vec<u8> = (0..big_n).map(|y| ts.classify_pair(basepoint, y) as u8).collect();
        let masks = (0..CLASSES)
            .map(|a| class_of.iter().map(|&c| c as usize == a).collect())
            .collect();
        let deg = ts.n() - 1;
        let mut nbrs = vec![Vec::with_capacity(big_n * deg); 3];
        for y in 0..big_n {
            for z in 0..big_n {
                let r = ts.classify_pair(y, z);
                if (1..=3).contains(&r) {
                    nbrs[r - 1].push(z as u32);
                }
            }
            for (b, list) in nbrs.iter().enumerate() {
                if list.len() != (y + 1) * deg {
                    return Err(Error::InvalidGroup(format!(
                        "point {y} has irregular R{} degree",
                        b + 1
                    )));
                }
            }
        }
        Ok(TerwilligerContext {
            ts,
            sd,
            modulus,
            basepoint,
            class_of,
            masks,
            nbrs,
            deg,
            adjacency: OnceLock::new(),
            duals: OnceLock::new(),
            cache: Mutex::new(WordCache::default()),
        })
    }

    /// Context for the elementary abelian 2-group of order `n`.
    pub fn elementary_abelian(p: u64, n: usize, basepoint: usize) -> Result<Self> {
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::Unsupported(format!("n = {n} is not a power of two >= 4")));
        }
        let modulus = PrimeModulus::new(p)?;
        let ts = TripleSpace::build(GroupSpec::elementary_abelian(n.trailing_zeros()))?;
        let sd = SchemeDescriptor::build(&ts, AxiomCheck::default_for(n))?;
        Self::new(ts, sd, modulus, basepoint)
    }

    /// Group order.
    pub fn n(&self) -> usize {
        self.ts.n()
    }

    /// Number of points, `n^2`.
    pub fn order(&self) -> usize {
        self.ts.len()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn p(&self) -> u32 {
        self.modulus.value()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn scheme(&self) -> &SchemeDescriptor {
        &self.sd
    }

    pub fn triple_space(&self) -> &TripleSpace {
        &self.ts
    }

    pub fn is_elementary_abelian(&self) -> bool {
        matches!(self.ts.group(), GroupSpec::ElementaryAbelian2 { .. })
    }

    /// Index of the subconstituent containing `y`.
    pub fn class_of(&self, y: usize) -> usize {
        self.class_of[y] as usize
    }

    pub fn subconstituent_mask(&self, a: usize) -> &[bool] {
        &self.masks[a]
    }

    /// `y R_b` for `b` in 1..=3.
    pub fn neighbours(&self, y: usize, b: usize) -> &[u32] {
        &self.nbrs[b - 1][y * self.deg..(y + 1) * self.deg]
    }

    pub fn identity(&self) -> GfMatrix {
        GfMatrix::identity(self.order(), self.modulus)
    }

    pub fn all_ones(&self) -> GfMatrix {
        GfMatrix::ones(self.order(), self.order(), self.modulus)
    }

    pub fn zero(&self) -> GfMatrix {
        GfMatrix::zeros(self.order(), self.order(), self.modulus)
    }

    /// `A_i`.
    pub fn adjacency_matrix(&self, i: usize) -> &GfMatrix {
        &self.adjacency.get_or_init(|| {
            let big_n = self.order();
            (0..CLASSES)
                .map(|i| {
                    GfMatrix::from_fn(big_n, big_n, self.modulus, |y, z| {
                        (self.ts.classify_pair(y, z) == i) as u64
                    })
                })
                .collect()
        })[i]
    }

    /// `E_i^*` at the basepoint.
    pub fn dual_idempotent(&self, i: usize) -> &GfMatrix {
        &self.duals.get_or_init(|| {
            let big_n = self.order();
            (0..CLASSES)
                .map(|i| {
                    GfMatrix::from_fn(big_n, big_n, self.modulus, |y, z| {
                        (y == z && self.class_of(y) == i) as u64
                    })
                })
                .collect()
        })[i]
    }

    /// `E_a^* A_b E_c^*`.
    pub fn triple_product(&self, a: usize, b: usize, c: usize) -> GfMatrix {
        let w = [Atom::E(a as u8), Atom::A(b as u8), Atom::E(c as u8)];
        (*self.eval_word(&w)).clone()
    }

    fn atom_matrix(&self, a: Atom) -> GfMatrix {
        match a {
            Atom::E(i) => self.dual_idempotent(i as usize).clone(),
            Atom::A(i) => self.adjacency_matrix(i as usize).clone(),
            Atom::J => self.all_ones(),
        }
    }

    fn check_atom(&self, a: Atom) -> Result<()> {
        match a {
            Atom::E(i) | Atom::A(i) if i as usize >= CLASSES => {
                Err(Error::Unsupported(format!("atom index {i} out of range")))
            }
            _ => Ok(()),
        }
    }

    /// `x * atom`.
    pub fn right_atom(&self, x: &GfMatrix, a: Atom) -> GfMatrix {
        match a {
            Atom::E(i) => {
                let mut out = x.clone();
                out.mask_cols(&self.masks[i as usize]);
                out
            }
            Atom::A(0) => x.clone(),
            Atom::A(b @ 1..=3) => x.right_neighbour_sum(&self.nbrs[b as usize - 1], self.deg),
            Atom::A(_) => {
                let mut out = GfMatrix::broadcast_col(&x.row_sums(), self.modulus);
                let minus = self.modulus.neg(Scalar::ONE);
                out.axpy_rows(minus, x, None);
                for list in &self.nbrs {
                    out.axpy_rows(minus, &x.right_neighbour_sum(list, self.deg), None);
                }
                out
            }
            Atom::J => GfMatrix::broadcast_col(&x.row_sums(), self.modulus),
        }
    }

    /// `atom * x`, forming only the rows flagged in `keep`.
    pub fn left_atom(&self, a: Atom, x: &GfMatrix, keep: Option<&[bool]>) -> GfMatrix {
        let mut out = match a {
            Atom::E(i) => {
                let mut out = x.clone();
                out.mask_rows(&self.masks[i as usize]);
                out
            }
            Atom::A(0) => x.clone(),
            Atom::A(b @ 1..=3) => x.left_neighbour_sum(&self.nbrs[b as usize - 1], self.deg, keep),
            Atom::A(_) => {
                let mut out = GfMatrix::broadcast_row(&x.column_sums(), keep, self.modulus);
                let minus = self.modulus.neg(Scalar::ONE);
                out.axpy_rows(minus, x, None);
                for list in &self.nbrs {
                    out.axpy_rows(minus, &x.left_neighbour_sum(list, self.deg, keep), None);
                }
                out
            }
            Atom::J => GfMatrix::broadcast_row(&x.column_sums(), keep, self.modulus),
        };
        if let Some(k) = keep {
            out.mask_rows(k);
        }
        out
    }

    /// `x * w`.
    pub fn right_mul_word(&self, x: &GfMatrix, w: &[Atom]) -> GfMatrix {
        let mut out = x.clone();
        for &a in w {
            if out.is_zero() {
                break;
            }
            out = self.right_atom(&out, a);
        }
        out
    }

    /// `w * x`. Atoms are applied right to left; a dual idempotent to the
    /// left of an adjacency atom restricts which rows get formed.
    pub fn left_mul_word(&self, w: &[Atom], x: &GfMatrix) -> GfMatrix {
        let mut out = x.clone();
        for idx in (0..w.len()).rev() {
            if out.is_zero() {
                break;
            }
            let keep = match idx.checked_sub(1).map(|j| w[j]) {
                Some(Atom::E(e)) => Some(self.masks[e as usize].as_slice()),
                _ => None,
            };
            out = self.left_atom(w[idx], &out, keep);
        }
        out
    }

    /// Evaluates a word, reusing the longest cached prefix. The empty word
    /// is `I`.
    pub fn eval_word(&self, w: &[Atom]) -> Arc<GfMatrix> {
        if w.is_empty() {
            return Arc::new(self.identity());
        }
        let (mut len, mut cur) = {
            let cache = self.cache.lock().unwrap();
            let mut found = None;
            for l in (1..=w.len()).rev() {
                if let Some(m) = cache.map.get(&w[..l]) {
                    found = Some((l, m.clone()));
                    break;
                }
            }
            found.unwrap_or_else(|| (1, Arc::new(self.atom_matrix(w[0]))))
        };
        loop {
            self.remember(&w[..len], &cur);
            if len == w.len() {
                return cur;
            }
            cur = Arc::new(self.right_atom(&cur, w[len]));
            len += 1;
        }
    }

    fn remember(&self, w: &[Atom], m: &Arc<GfMatrix>) {
        let mut cache = self.cache.lock().unwrap();
        if cache.map.contains_key(w) {
            return;
        }
        let b = bytes_of(m);
        if cache.bytes + b <= CACHE_BYTES {
            cache.bytes += b;
            cache.map.insert(w.to_vec(), m.clone());
        }
    }

    /// Drops every cached word.
    pub fn clear_cache(&self) {
        *self.cache.lock().unwrap() = WordCache::default();
    }

    /// Evaluates a formal sum of words with coefficients reduced mod p.
    pub fn eval(&self, e: &AlgExpr) -> Result<GfMatrix> {
        let mut out = self.zero();
        let n = self.n() as u64;
        for t in e.terms() {
            for &a in &t.word {
                self.check_atom(a)?;
            }
            let c = t.coeff.eval(n, self.modulus)?;
            if c.is_zero() {
                continue;
            }
            let m = self.eval_word(&t.word);
            out.axpy_rows(c, &m, None);
        }
        Ok(out)
    }

    /// Integer intersection number `p^i_{gh}`.
    pub fn p_int(&self, g: usize, h: usize, i: usize) -> usize {
        self.sd.p(g, h, i)
    }

    pub fn valency(&self, i: usize) -> usize {
        self.sd.valencies[i]
    }
}
