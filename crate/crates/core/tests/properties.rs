use proptest::prelude::*;
use twisted_gabidulin::cli::generic_subspace;
use twisted_gabidulin::gf::{Fe, Field, FieldRef};
use twisted_gabidulin::linalg::Matrix;
use twisted_gabidulin::linpoly::{LinearizedPoly, SubspaceSpec};
use twisted_gabidulin::rankcode::{rank_distance, CodeParams, RankCode};

fn fields() -> Vec<FieldRef> {
    vec![
        Field::new(2, 1, 5, None).unwrap(),
        Field::new(3, 1, 3, None).unwrap(),
        Field::new(2, 2, 3, None).unwrap(),
        Field::new(5, 1, 2, None).unwrap(),
    ]
}

fn field_idx() -> impl Strategy<Value = usize> {
    0..4usize
}

fn elem(f: &FieldRef, raw: u64) -> Fe {
    f.element((raw % f.order()) as u32).unwrap()
}

fn poly(f: &FieldRef, raw: &[u64]) -> LinearizedPoly {
    LinearizedPoly::new(f, (0..f.n() as usize).map(|i| elem(f, raw[i])).collect())
}

proptest! {
    #[test]
    fn field_axioms(i in field_idx(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = &fields()[i];
        let (a, b, c) = (elem(f, a), elem(f, b), elem(f, c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism(i in field_idx(), a in any::<u64>(), b in any::<u64>(), j in -6i64..6) {
        let f = &fields()[i];
        let (a, b) = (elem(f, a), elem(f, b));
        prop_assert_eq!(f.frobenius(f.add(a, b), j), f.add(f.frobenius(a, j), f.frobenius(b, j)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), j), f.mul(f.frobenius(a, j), f.frobenius(b, j)));
        prop_assert_eq!(f.frobenius(a, f.n() as i64), a);
        prop_assert_eq!(f.frobenius(a, 1), f.pow(a, f.q()));
    }

    #[test]
    fn digits_round_trip(i in field_idx(), a in any::<u64>()) {
        let f = &fields()[i];
        let a = elem(f, a);
        prop_assert_eq!(f.from_digits(&f.digits(a)).unwrap(), a);
    }

    #[test]
    fn composition_is_evaluation_of_evaluation(
        i in field_idx(),
        fr in prop::collection::vec(any::<u64>(), 6),
        gr in prop::collection::vec(any::<u64>(), 6),
        x in any::<u64>(),
    ) {
        let f = &fields()[i];
        let (p, g, x) = (poly(f, &fr), poly(f, &gr), elem(f, x));
        prop_assert_eq!(p.compose(&g).unwrap().eval(x), p.eval(g.eval(x)));
        prop_assert_eq!(p.add(&g).eval(x), f.add(p.eval(x), g.eval(x)));
    }

    #[test]
    fn matrices_represent_maps(
        i in field_idx(),
        fr in prop::collection::vec(any::<u64>(), 6),
        gr in prop::collection::vec(any::<u64>(), 6),
    ) {
        let f = &fields()[i];
        let basis = f.power_basis();
        let sf = f.scalars();
        let (p, g) = (poly(f, &fr), poly(f, &gr));
        prop_assert_eq!(LinearizedPoly::from_matrix(&basis, &p.to_matrix(&basis)), p.clone());
        // row j holds f(β_j), so composition reverses the product
        let lhs = p.compose(&g).unwrap().to_matrix(&basis);
        prop_assert_eq!(lhs, g.to_matrix(&basis).mul(&p.to_matrix(&basis), sf));
    }

    #[test]
    fn reduction_is_exact_on_the_subspace(
        seed in 0u64..40,
        m in 1usize..5,
        fr in prop::collection::vec(any::<u64>(), 6),
    ) {
        let f = Field::new(3, 1, 4, None).unwrap();
        let spec = SubspaceSpec::new(&f, generic_subspace(&f, m, seed).unwrap(), 1).unwrap();
        let g = poly(&f, &fr);
        let rep = LinearizedPoly::from_transversal(&f, &spec.reduce(&g), 1);
        for u in spec.elements() {
            prop_assert_eq!(rep.eval(u), g.eval(u));
            prop_assert!(spec.theta_eval(u).is_zero());
        }
        prop_assert_eq!(spec.elements().len() as u64, 3u64.pow(m as u32));
    }

    #[test]
    fn rank_distance_is_a_metric(
        a in prop::collection::vec(0u32..3, 12),
        b in prop::collection::vec(0u32..3, 12),
        c in prop::collection::vec(0u32..3, 12),
    ) {
        let sf = Field::new(3, 1, 1, None).unwrap().scalars().clone();
        let (a, b, c) = (Matrix::from_vec(3, 4, a), Matrix::from_vec(3, 4, b), Matrix::from_vec(3, 4, c));
        let d = |x: &Matrix, y: &Matrix| rank_distance(x, y, &sf).unwrap();
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
    }

    #[test]
    fn codes_are_closed_under_combination(
        seed in 0u64..20,
        x in prop::collection::vec(0u32..2, 8),
        y in prop::collection::vec(0u32..2, 8),
    ) {
        let f = Field::new(2, 1, 4, None).unwrap();
        let params = CodeParams::new(&f, 3, 2, 1, 0, Fe::ZERO).unwrap();
        let spec = SubspaceSpec::new(&f, generic_subspace(&f, 3, seed).unwrap(), 1).unwrap();
        let code = RankCode::twisted_gabidulin(&params, &spec).unwrap();
        let sf = code.scalars();
        let sum = code.combine(&x).add(&code.combine(&y), sf);
        prop_assert!(code.contains(&sum));
        let xy: Vec<u32> = x.iter().zip(&y).map(|(a, b)| sf.add(*a, *b)).collect();
        prop_assert_eq!(code.combine(&xy), sum);
    }
}

#[test]
fn codeword_count_matches_dimension() {
    let f = Field::new(2, 1, 4, None).unwrap();
    let params = CodeParams::new(&f, 3, 1, 1, 0, Fe::ZERO).unwrap();
    let spec = SubspaceSpec::new(&f, generic_subspace(&f, 3, 0).unwrap(), 1).unwrap();
    let code = RankCode::twisted_gabidulin(&params, &spec).unwrap();
    let words = code.codewords(1 << 10).unwrap();
    assert_eq!(words.len(), 16);
    let mut sorted = words.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 16);
    assert!(code.codewords(15).unwrap_err().is_guard());
}
