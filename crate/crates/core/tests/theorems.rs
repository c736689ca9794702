use hopfsvd::deformation::BilinearForm;
use hopfsvd::structure::{commutes_with_grade, gram_a, iterated_gram, StructureTables};
use hopfsvd::{Rational, RectMatrix, Scalar};

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

#[test]
fn iterated_gram_for_unit_diagonal_metrics() {
    for n in 1..=3usize {
        for signs in 0..1u32 << n {
            let l: Vec<Rational> = (0..n).map(|i| if signs >> i & 1 == 1 { q(-1) } else { q(1) }).collect();
            let t = StructureTables::clifford(&BilinearForm::diagonal(&l).unwrap()).unwrap();
            for r in 1..=4u32 {
                let expected = RectMatrix::identity(1 << n).scale(&q(1i64 << (n as u32 * (r - 1))));
                assert_eq!(iterated_gram(&t, r as usize).unwrap(), expected, "l={l:?}, r={r}");
            }
        }
    }
}

#[test]
fn gram_operators_commute_with_grade() {
    for n in 1..=3 {
        let t = StructureTables::<Rational>::grassmann(n).unwrap();
        for r in 1..=4 {
            assert!(commutes_with_grade(&iterated_gram(&t, r).unwrap(), n));
        }
        let l: Vec<Rational> = (1..=n as i64).map(|i| Rational::from_ratio(i, 3)).collect();
        let c = StructureTables::clifford(&BilinearForm::diagonal(&l).unwrap()).unwrap();
        assert!(commutes_with_grade(&gram_a(&c), n));
    }
}
