use std::sync::OnceLock;

use proptest::prelude::*;
use tforge::expr::Atom;
use tforge::structure::{build_algebra, radical_candidate, semisimple_closed_form};
use tforge::{classify_case, AlgExpr, AlgebraHandle, Case, Scalar, SubspaceBasis, TerwilligerContext};

struct Fixture {
    ctx: TerwilligerContext,
    alg: AlgebraHandle,
    case: Case,
    radical: SubspaceBasis,
}

const POINTS: [(u64, usize); 8] = [(2, 4), (3, 4), (5, 4), (7, 4), (2, 8), (3, 8), (5, 8), (7, 8)];

fn fixture(k: usize) -> &'static Fixture {
    static CELLS: [OnceLock<Fixture>; 8] = [const { OnceLock::new() }; 8];
    CELLS[k].get_or_init(|| {
        let (p, n) = POINTS[k];
        let ctx = TerwilligerContext::elementary_abelian(p, n, 0).unwrap();
        let alg = build_algebra(&ctx, false).unwrap();
        let case = classify_case(p, n).unwrap();
        let radical = radical_candidate(&ctx, &alg, case).unwrap();
        Fixture {
            ctx,
            alg,
            case,
            radical,
        }
    })
}

fn coords(f: &Fixture, raw: &[u64]) -> Vec<Scalar> {
    let m = f.alg.modulus();
    (0..f.alg.dim())
        .map(|i| m.scalar(raw[i % raw.len()].wrapping_mul(i as u64 + 1) >> 3))
        .collect()
}

fn radical_element(f: &Fixture, raw: &[u64]) -> Vec<Scalar> {
    let m = f.alg.modulus();
    let mut out = vec![Scalar::ZERO; f.alg.dim()];
    for (k, row) in f.radical.rows().enumerate() {
        let c = m.scalar(raw[k % raw.len()] >> (k % 7));
        for (j, o) in out.iter_mut().enumerate() {
            *o = m.add(*o, m.mul(c, row.get(0, j)));
        }
    }
    out
}

fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![(0u8..5).prop_map(Atom::E), (0u8..5).prop_map(Atom::A), Just(Atom::J)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coordinate_products_match_matrices(k in 0usize..8, a in prop::collection::vec(any::<u64>(), 1..9), b in prop::collection::vec(any::<u64>(), 1..9)) {
        let f = fixture(k);
        let (x, y) = (coords(f, &a), coords(f, &b));
        let lhs = f.alg.element(&f.alg.mul(&x, &y));
        prop_assert_eq!(lhs, f.alg.element(&x).mat_mul(&f.alg.element(&y)).unwrap());
    }

    #[test]
    fn structure_constants_are_associative(k in 0usize..8, a in prop::collection::vec(any::<u64>(), 1..9), b in prop::collection::vec(any::<u64>(), 1..9), c in prop::collection::vec(any::<u64>(), 1..9)) {
        let f = fixture(k);
        let (x, y, z) = (coords(f, &a), coords(f, &b), coords(f, &c));
        prop_assert_eq!(f.alg.mul(&f.alg.mul(&x, &y), &z), f.alg.mul(&x, &f.alg.mul(&y, &z)));
    }

    #[test]
    fn identity_is_two_sided(k in 0usize..8, a in prop::collection::vec(any::<u64>(), 1..9)) {
        let f = fixture(k);
        let x = coords(f, &a);
        prop_assert_eq!(&f.alg.mul(f.alg.identity(), &x), &x);
        prop_assert_eq!(&f.alg.mul(&x, f.alg.identity()), &x);
    }

    #[test]
    fn radical_absorbs_products(k in 0usize..8, a in prop::collection::vec(any::<u64>(), 1..9), r in prop::collection::vec(any::<u64>(), 1..9)) {
        let f = fixture(k);
        let (x, v) = (coords(f, &a), radical_element(f, &r));
        let m = f.alg.modulus();
        for w in [f.alg.mul(&x, &v), f.alg.mul(&v, &x)] {
            prop_assert!(f.radical.contains(&tforge::algebra::coord_row(&w, m)).unwrap(), "case {:?}", f.case);
        }
    }

    #[test]
    fn radical_elements_are_nilpotent(k in 0usize..8, r in prop::collection::vec(any::<u64>(), 1..9)) {
        let f = fixture(k);
        let v = radical_element(f, &r);
        let mut power = v.clone();
        for _ in 0..f.radical.rank() {
            power = f.alg.mul(&power, &v);
        }
        prop_assert!(power.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn algebra_is_closed_under_transpose(k in 0usize..8, a in prop::collection::vec(any::<u64>(), 1..9)) {
        let f = fixture(k);
        let t = f.alg.element(&coords(f, &a)).transpose();
        prop_assert!(f.alg.span().contains(&t).unwrap());
    }

    #[test]
    fn evaluation_commutes_with_transpose(k in 0usize..8, w in prop::collection::vec(atom(), 1..6)) {
        let f = fixture(k);
        let e = AlgExpr::word(w);
        prop_assert_eq!(f.ctx.eval(&e.transpose()).unwrap(), f.ctx.eval(&e).unwrap().transpose());
    }

    #[test]
    fn words_lie_in_the_algebra(k in 0usize..8, w in prop::collection::vec(atom(), 1..7)) {
        let f = fixture(k);
        let m = f.ctx.eval(&AlgExpr::word(w)).unwrap();
        prop_assert!(f.alg.span().contains(&m).unwrap());
    }
}

proptest! {
    #[test]
    fn classifier_is_consistent(pi in 0usize..15, m in 2u32..24) {
        let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47][pi];
        let n = 1usize << m;
        let case = classify_case(p, n).unwrap();
        let r = (n as u64) % p;
        let expected = match (p, r) {
            (2, _) => Case::P2,
            (_, 1) => Case::I,
            (_, 2) => Case::II,
            (_, 4) => Case::III,
            _ => Case::IV,
        };
        prop_assert_eq!(case, expected);
        if semisimple_closed_form(p, n) {
            prop_assert!(p > 3);
            prop_assert!(matches!(case, Case::III | Case::IV));
        }
        if case == Case::IV {
            prop_assert!(semisimple_closed_form(p, n));
        }
    }
}
