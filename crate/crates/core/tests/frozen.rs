//! Closed-form values, frozen as decimal literals, checked against the
//! solvers. Every expected value below was derived by hand (eigenvalues of
//! small Hermitian matrices, the Jordan-block cosine formula, corner and
//! scalar identities), not by running the code under test.

use wradius_core::{
    cb_norm_estimate, numerical_radius, operator_norm, radius_lower_bound_sampling,
    shift_generator, symmetric_chain, two_by_two_generator, w_max, w_t_norm, Complex64,
    ComplexMatrix, ConcreteOperatorSpace, LinearMap, MatrixOverX, NormKind, SearchConfig,
    SymmetricRep, TensorRep,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn jordan(n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n - 1 {
        m.set(i, i + 1, c(1.0, 0.0));
    }
    m
}

#[test]
fn jordan_block_radii_match_the_cosine_table() {
    // cos(pi / (n + 1)) for n = 2..=8.
    let expected = [
        0.5,
        0.707_106_781_186_547_6,
        0.809_016_994_374_947_5,
        0.866_025_403_784_438_7,
        0.900_968_867_902_419_1,
        0.923_879_532_511_286_7,
        0.939_692_620_785_908_4,
    ];
    for (n, want) in (2..=8).zip(expected) {
        let w = numerical_radius(&jordan(n), 1e-10).unwrap();
        assert!(
            (w.value - want).abs() <= 1e-9,
            "n = {n}: {} vs {want}",
            w.value
        );
        assert!(w.lower <= want + 1e-10 && want <= w.upper + 1e-10);
    }
}

#[test]
fn rank_one_corner_radius_is_half_the_modulus() {
    // |3 - 4i| = 5, so the corner matrix has radius 2.5.
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(0, 1, c(3.0, -4.0));
    let w = numerical_radius(&m, 1e-10).unwrap();
    assert!((w.value - 2.5).abs() <= 1e-9);
}

#[test]
fn hermitian_radius_is_the_top_eigenvalue() {
    // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(0, 0, c(2.0, 0.0));
    m.set(0, 1, c(1.0, 0.0));
    m.set(1, 0, c(1.0, 0.0));
    m.set(1, 1, c(2.0, 0.0));
    let w = numerical_radius(&m, 1e-10).unwrap();
    assert!((w.value - 3.0).abs() <= 1e-9);
    assert!((operator_norm(&m).unwrap() - 3.0).abs() <= 1e-10);
}

#[test]
fn half_weight_two_by_two_generator_radius() {
    // w([[0, sqrt(1/2)], [0, sqrt(1/2)]]) = (2 + sqrt(2)) / 4.
    let g = two_by_two_generator(0.5).unwrap();
    let w = numerical_radius(&g.matrix, 1e-10).unwrap();
    assert!((w.value - 0.853_553_390_593_273_7).abs() <= 1e-9, "{}", w.value);
}

#[test]
fn ascent_oracle_reaches_the_jordan_radius() {
    let sampled = radius_lower_bound_sampling(&jordan(3), 20, 5).unwrap();
    assert!(
        sampled >= 0.707_106_781_186_547_6 - 1e-6,
        "sampled {sampled}"
    );
    let w = numerical_radius(&jordan(3), 1e-10).unwrap();
    assert!(sampled <= w.upper + 1e-12);
}

#[test]
fn factorization_search_recovers_the_corner_radius() {
    // On scalars the factorization norm equals the radius; the corner
    // matrix [[0, 1], [0, 0]] has radius 1/2.
    let space = ConcreteOperatorSpace::scalar();
    let mut x = MatrixOverX::zero(2, 1);
    x.set_cell(0, 1, vec![c(1.0, 0.0)]).unwrap();
    let config = SearchConfig {
        restarts: 20,
        iters: 400,
        seed: 2,
        tol: 1e-8,
    };
    let (est, fact) = w_max(&space, &x, &config).unwrap();
    assert!(est.lower <= 0.5 + 1e-9 && 0.5 <= est.upper + 1e-9);
    assert!((est.upper - 0.5).abs() <= 1e-3, "upper {}", est.upper);
    assert!(fact.reconstruction_defect(&space, &x).unwrap() <= 1e-8);
}

#[test]
fn shift_family_endpoints_on_a_scalar() {
    // Level-1 scalar x = [4i]: W_0 = |x|/2 = 2 and W_1 = |x| cos(pi/4).
    let space = ConcreteOperatorSpace::scalar();
    let mut x = MatrixOverX::zero(1, 1);
    x.set_cell(0, 0, vec![c(0.0, 4.0)]).unwrap();
    let w0 = w_t_norm(&space, &x, &shift_generator(3, 0.0).unwrap(), 1e-10).unwrap();
    assert!((w0.value - 2.0).abs() <= 1e-9, "{}", w0.value);
    let w1 = w_t_norm(&space, &x, &shift_generator(3, 1.0).unwrap(), 1e-10).unwrap();
    assert!(
        (w1.value - 4.0 * 0.707_106_781_186_547_6).abs() <= 1e-9,
        "{}",
        w1.value
    );
}

#[test]
fn scalar_tensor_chain_frozen_values() {
    // u = x a conj(x) with x = 1, a = 0.6 - 0.8i: h = wh = 1, wcb = 1/2.
    let space = ConcreteOperatorSpace::scalar();
    let middle = ComplexMatrix::scalar(c(0.6, -0.8)).unwrap();
    let sym = SymmetricRep::new(space, vec![vec![vec![c(1.0, 0.0)]]], middle).unwrap();
    let config = SearchConfig {
        restarts: 3,
        iters: 200,
        seed: 0,
        tol: 1e-8,
    };
    let chain = symmetric_chain(&sym, &config).unwrap();
    assert!((chain.h.value - 1.0).abs() <= 1e-8, "h {}", chain.h.value);
    assert!((chain.wh.value - 1.0).abs() <= 1e-6, "wh {}", chain.wh.value);
    assert!(
        (chain.wcb.value - 0.5).abs() <= 1e-6,
        "wcb {}",
        chain.wcb.value
    );
    assert!(
        (chain.wh_alt.value - 1.0).abs() <= 1e-6,
        "wh alt {}",
        chain.wh_alt.value
    );
    for est in [&chain.h, &chain.wh, &chain.wcb, &chain.wh_alt] {
        assert!(est.certificate.contains("search gap"));
    }
}

#[test]
fn elementary_tensor_haagerup_value() {
    // X = [[1, 2], [0, 1]] has norm 1 + sqrt(2); Y is a permutation, norm 1.
    let mut x = ComplexMatrix::zeros(2, 2);
    x.set(0, 0, c(1.0, 0.0));
    x.set(0, 1, c(2.0, 0.0));
    x.set(1, 1, c(1.0, 0.0));
    let mut y = ComplexMatrix::zeros(2, 2);
    y.set(0, 1, c(1.0, 0.0));
    y.set(1, 0, c(1.0, 0.0));
    assert!((operator_norm(&x).unwrap() - 2.414_213_562_373_095).abs() <= 1e-12);

    let left_space = ConcreteOperatorSpace::new(2, vec![x]).unwrap();
    let right_space = ConcreteOperatorSpace::new(2, vec![y]).unwrap();
    let rep = TensorRep::new(
        left_space,
        right_space,
        vec![vec![vec![c(1.0, 0.0)]]],
        vec![vec![vec![c(1.0, 0.0)]]],
    )
    .unwrap();
    let config = SearchConfig {
        restarts: 3,
        iters: 200,
        seed: 0,
        tol: 1e-8,
    };
    let h = wradius_core::haagerup_norm(&rep, &config).unwrap();
    assert!(
        (h.value - 2.414_213_562_373_095).abs() <= 1e-8,
        "h {}",
        h.value
    );
    assert!(h.upper - h.lower <= 1e-7);
}

#[test]
fn cb_estimates_of_identity_and_scaling() {
    let space = ConcreteOperatorSpace::scalar();
    let id = LinearMap::identity(&space);
    let est = cb_norm_estimate(&id, NormKind::Operator, 2, 50, 3).unwrap();
    assert!((est.value - 1.0).abs() <= 1e-9);

    let scaled = LinearMap::new(space.clone(), space, vec![vec![c(0.0, 2.5)]]).unwrap();
    let est = cb_norm_estimate(&scaled, NormKind::Radius, 2, 50, 3).unwrap();
    assert!((est.value - 2.5).abs() <= 1e-6, "{}", est.value);
}
