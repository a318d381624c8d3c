use pearlhom::det_lines::{
    direct_sum_bracketings, direct_sum_triple, direct_sum_triple_reversed, interchange_sign,
    supercommutativity_square, verify_exact_square, ExactSquare, GradedLine,
};
use pearlhom::{Matrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seed() -> u64 {
    std::env::var("PEARLHOM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20240611)
}

fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    loop {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into()))
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(rows, n);
        if n == 0 || m.determinant() != Rational::from_integer(0.into()) {
            return m;
        }
    }
}

#[test]
fn thousand_random_squares_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut nontrivial = 0;
    for k in 0..1000 {
        let total = rng.gen_range(0..=5);
        let mut dims = [0usize; 4];
        for _ in 0..total {
            dims[rng.gen_range(0..4)] += 1;
        }
        let [i, a, b, r] = dims;
        let sizes = [i, i + a, a, i + b, i + a + b + r, a + r, b, b + r, r];
        let bases: [Matrix<Rational>; 9] = sizes.map(|n| random_invertible(&mut rng, n));
        let sq = ExactSquare::from_blocks(dims, &bases).unwrap();
        let report = verify_exact_square(&sq);
        assert!(report.commutes(), "square {k} dims {dims:?}: {report:?}");
        if report.via_rows != Rational::from_integer(1.into()) {
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 500);
}

#[test]
fn supercommutativity_sign() {
    for d1 in 0..=5 {
        for d2 in 0..=5 {
            let sq = supercommutativity_square(d1, d2).unwrap();
            assert!(verify_exact_square(&sq).commutes());
            let id = Matrix::identity(d1 + d2);
            let ratio = direct_sum_triple(d1, d2, &id).unwrap().scalar()
                / direct_sum_triple_reversed(d1, d2, &id).unwrap().scalar();
            let expected = if (d1 * d2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(ratio, Rational::from_integer(expected.into()), "{d1} {d2}");
            let sign = interchange_sign(
                &GradedLine::new("a", (d1 % 2) as u8),
                &GradedLine::new("b", (d2 % 2) as u8),
            );
            assert_eq!(sign, expected as i32);
        }
    }
}

#[test]
fn two_hundred_associativity_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 7);
    for k in 0..200 {
        let dims = [0; 3].map(|_| rng.gen_range(0..=3usize));
        let [d1, d2, d3] = dims;
        let b12 = random_invertible(&mut rng, d1 + d2);
        let b23 = random_invertible(&mut rng, d2 + d3);
        let b123 = random_invertible(&mut rng, d1 + d2 + d3);
        let (left, right) = direct_sum_bracketings(dims, &b12, &b23, &b123).unwrap();
        assert_eq!(left, right, "triple {k} dims {dims:?}");
    }
}
