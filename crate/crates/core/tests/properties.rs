//! Randomized invariants of the public API, cross-checked between
//! independent computation paths wherever one exists.

use proptest::prelude::*;

use wradius_core::{
    amplified_w, direct_sum, numerical_radius, o_norm, off_corner, operator_norm,
    radius_lower_bound_sampling, realize, scalar_compress, shift_generator, w_norm, w_t_norm,
    Complex64, ComplexMatrix, ConcreteOperatorSpace, MatrixOverX, TensorRep,
};

fn entry() -> impl Strategy<Value = (f64, f64)> {
    ((-100i32..=100), (-100i32..=100)).prop_map(|(re, im)| (re as f64 / 50.0, im as f64 / 50.0))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(entry(), rows * cols).prop_map(move |entries| {
        let mut m = ComplexMatrix::zeros(rows, cols);
        for (idx, (re, im)) in entries.into_iter().enumerate() {
            m.set(idx / cols, idx % cols, Complex64::new(re, im));
        }
        m
    })
}

fn square(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n, n)
}

fn element(level: usize, dim: usize) -> impl Strategy<Value = MatrixOverX> {
    prop::collection::vec(entry(), level * level * dim).prop_map(move |entries| {
        let mut x = MatrixOverX::zero(level, dim);
        let mut it = entries.into_iter();
        for i in 0..level {
            for j in 0..level {
                let cell: Vec<Complex64> = (0..dim)
                    .map(|_| {
                        let (re, im) = it.next().unwrap();
                        Complex64::new(re, im)
                    })
                    .collect();
                x.set_cell(i, j, cell).unwrap();
            }
        }
        x
    })
}

/// Orthonormalizes the columns of `a + 3I`; the shift keeps the columns
/// independent for the sizes used here.
fn unitary_from(a: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = a.rows();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    a.at(i, j)
                        + if i == j {
                            Complex64::new(3.0, 0.0)
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                })
                .collect()
        })
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let correction = proj * cols[k][i];
                cols[j][i] -= correction;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            return None;
        }
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            u.set(i, j, cols[j][i]);
        }
    }
    Some(u)
}

/// Independent radius oracle for 2x2 matrices: the numerical range is the
/// filled ellipse with foci at the eigenvalues and minor semi-axis
/// `sqrt(tr(A*A) - |l1|^2 - |l2|^2) / 2`; the radius is the farthest point
/// of that ellipse from the origin, found on a dense parameter grid.
fn two_by_two_radius_oracle(a: &ComplexMatrix) -> f64 {
    let tr = a.at(0, 0) + a.at(1, 1);
    let det = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    let disc = (tr * tr - det.scale(4.0)).sqrt();
    let l1 = (tr + disc) * Complex64::new(0.5, 0.0);
    let l2 = (tr - disc) * Complex64::new(0.5, 0.0);
    let center = (l1 + l2) * Complex64::new(0.5, 0.0);
    let gram_trace: f64 = (0..2)
        .map(|i| (0..2).map(|j| a.at(i, j).norm_sqr()).sum::<f64>())
        .sum();
    let minor_sq = (gram_trace - l1.norm_sqr() - l2.norm_sqr()).max(0.0);
    let minor = 0.5 * minor_sq.sqrt();
    let focal = 0.5 * (l1 - l2).norm();
    let major = (minor * minor + focal * focal).sqrt();
    let axis = if focal > 1e-12 {
        let d = l1 - l2;
        d / Complex64::new(d.norm(), 0.0)
    } else {
        Complex64::new(1.0, 0.0)
    };
    let steps = 32_768;
    let mut best = 0.0f64;
    for k in 0..steps {
        let phi = core::f64::consts::TAU * k as f64 / steps as f64;
        let point = center + axis * Complex64::new(major * phi.cos(), minor * phi.sin());
        best = best.max(point.norm());
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn operator_norm_is_dagger_invariant(a in matrix(3, 2)) {
        let n1 = operator_norm(&a).unwrap();
        let n2 = operator_norm(&a.dagger()).unwrap();
        prop_assert!((n1 - n2).abs() <= 1e-10 * (1.0 + n1));
    }

    #[test]
    fn kron_norm_is_multiplicative(a in square(2), b in square(3)) {
        let na = operator_norm(&a).unwrap();
        let nb = operator_norm(&b).unwrap();
        let nk = operator_norm(&a.kron(&b)).unwrap();
        prop_assert!((nk - na * nb).abs() <= 1e-9 * (1.0 + na * nb));
    }

    #[test]
    fn radius_sits_in_the_operator_norm_sandwich(a in square(4)) {
        let w = numerical_radius(&a, 1e-9).unwrap();
        let n = operator_norm(&a).unwrap();
        prop_assert!(w.upper >= 0.5 * n - 1e-9, "w upper {} below half norm {}", w.upper, 0.5 * n);
        prop_assert!(w.lower <= n + 1e-9, "w lower {} above norm {n}", w.lower);
        prop_assert!(w.lower <= w.value && w.value <= w.upper);
        prop_assert!(w.upper - w.lower <= 1e-8 * (1.0 + n));
    }

    #[test]
    fn radius_of_adjoint_matches(a in square(3)) {
        let w1 = numerical_radius(&a, 1e-9).unwrap();
        let w2 = numerical_radius(&a.dagger(), 1e-9).unwrap();
        prop_assert!((w1.value - w2.value).abs() <= 1e-8 * (1.0 + w1.value));
    }

    #[test]
    fn radius_is_unitarily_invariant(a in square(3), g in square(3)) {
        let u = match unitary_from(&g) {
            Some(u) => u,
            None => return Ok(()),
        };
        let conjugated = u.matmul(&a).unwrap().matmul(&u.dagger()).unwrap();
        let w1 = numerical_radius(&a, 1e-9).unwrap();
        let w2 = numerical_radius(&conjugated, 1e-9).unwrap();
        prop_assert!((w1.value - w2.value).abs() <= 1e-8 * (1.0 + w1.value));
    }

    #[test]
    fn sampling_oracle_respects_the_upper_bracket(a in square(3), seed in 0u64..1000) {
        let w = numerical_radius(&a, 1e-8).unwrap();
        let sampled = radius_lower_bound_sampling(&a, 10, seed).unwrap();
        prop_assert!(sampled <= w.upper + 1e-9, "sampled {sampled} above upper {}", w.upper);
    }

    #[test]
    fn ellipse_oracle_agrees_on_two_by_two(a in square(2)) {
        let w = numerical_radius(&a, 1e-9).unwrap();
        let oracle = two_by_two_radius_oracle(&a);
        prop_assert!(
            (w.value - oracle).abs() <= 1e-5 * (1.0 + oracle),
            "solver {} vs ellipse {oracle}",
            w.value
        );
    }

    #[test]
    fn radius_compression_inequality(a in square(3), g in matrix(2, 3)) {
        let w = numerical_radius(&a, 1e-9).unwrap();
        let ng = operator_norm(&g).unwrap();
        let compressed = g.matmul(&a).unwrap().matmul(&g.dagger()).unwrap();
        let wc = numerical_radius(&compressed, 1e-9).unwrap();
        prop_assert!(wc.lower <= ng * ng * w.upper + 1e-9);
    }

    #[test]
    fn amplified_radius_of_diagonal_blocks_is_the_max(a in square(2), b in square(2)) {
        let zero = ComplexMatrix::zeros(2, 2);
        let blocks = vec![
            vec![a.clone(), zero.clone()],
            vec![zero.clone(), b.clone()],
        ];
        let w = amplified_w(&blocks, 1e-9).unwrap();
        let wa = numerical_radius(&a, 1e-9).unwrap();
        let wb = numerical_radius(&b, 1e-9).unwrap();
        let expected = wa.value.max(wb.value);
        prop_assert!((w.value - expected).abs() <= 1e-8 * (1.0 + expected));
    }

    #[test]
    fn corner_radius_is_half_the_norm(a in square(3)) {
        let zero = ComplexMatrix::zeros(3, 3);
        let blocks = vec![
            vec![zero.clone(), a.clone()],
            vec![zero.clone(), zero.clone()],
        ];
        let w = amplified_w(&blocks, 1e-9).unwrap();
        let n = operator_norm(&a).unwrap();
        prop_assert!((w.value - 0.5 * n).abs() <= 1e-8 * (1.0 + n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn realize_is_linear(
        x in element(2, 2),
        y in element(2, 2),
        (re, im) in entry(),
    ) {
        let space = space_m2();
        let lambda = Complex64::new(re, im);
        let mut sum = MatrixOverX::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let cell: Vec<Complex64> = x
                    .cell(i, j)
                    .iter()
                    .zip(y.cell(i, j).iter())
                    .map(|(a, b)| *a + lambda * *b)
                    .collect();
                sum.set_cell(i, j, cell).unwrap();
            }
        }
        let lhs = realize(&space, &sum).unwrap();
        let rhs = realize(&space, &x)
            .unwrap()
            .add(&realize(&space, &y).unwrap().scale(lambda))
            .unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-12 * (1.0 + rhs.frobenius_norm()));
    }

    #[test]
    fn direct_sum_w_norm_is_the_max(x in element(1, 2), y in element(2, 2)) {
        let space = space_m2();
        let sum = direct_sum(&x, &y).unwrap();
        let ws = w_norm(&space, &sum, 1e-9).unwrap();
        let wx = w_norm(&space, &x, 1e-9).unwrap();
        let wy = w_norm(&space, &y, 1e-9).unwrap();
        let expected = wx.value.max(wy.value);
        prop_assert!((ws.value - expected).abs() <= 1e-8 * (1.0 + expected));
    }

    #[test]
    fn off_corner_halves_the_operator_norm(x in element(2, 2)) {
        let space = space_m2();
        let w = w_norm(&space, &off_corner(&x), 1e-9).unwrap();
        let o = o_norm(&space, &x).unwrap();
        prop_assert!((w.value - 0.5 * o.value).abs() <= 1e-8 * (1.0 + o.value));
    }

    #[test]
    fn compression_commutes_with_realization(x in element(2, 2), g in matrix(2, 2), h in matrix(2, 2)) {
        let space = space_m2();
        let compressed = scalar_compress(&g, &x, &h).unwrap();
        let lhs = realize(&space, &compressed).unwrap();
        let eye = ComplexMatrix::identity(2);
        let rhs = g
            .kron(&eye)
            .matmul(&realize(&space, &x).unwrap())
            .unwrap()
            .matmul(&h.kron(&eye))
            .unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-12 * (1.0 + rhs.frobenius_norm()));
    }

    #[test]
    fn shift_family_is_lipschitz_in_t(
        x in element(2, 1),
        t in 0u8..=10,
        s in 0u8..=10,
    ) {
        let space = ConcreteOperatorSpace::scalar();
        let t = t as f64 / 10.0;
        let s = s as f64 / 10.0;
        let gen_t = shift_generator(3, t).unwrap();
        let gen_s = shift_generator(3, s).unwrap();
        let wt = w_t_norm(&space, &x, &gen_t, 1e-9).unwrap();
        let ws = w_t_norm(&space, &x, &gen_s, 1e-9).unwrap();
        let o = o_norm(&space, &x).unwrap();
        prop_assert!(
            (wt.value - ws.value).abs() <= o.value * (t - s).abs() + 1e-9,
            "|{} - {}| above {} * {}",
            wt.value,
            ws.value,
            o.value,
            (t - s).abs()
        );
    }

    #[test]
    fn tensor_realization_survives_unit_triangular_recombination(
        left in prop::collection::vec(prop::collection::vec(prop::collection::vec(entry(), 2), 2), 2),
        right in prop::collection::vec(prop::collection::vec(prop::collection::vec(entry(), 2), 2), 2),
        (sre, sim) in entry(),
    ) {
        let space_l = space_m2();
        let space_r = space_m2();
        let to_cells = |grid: &[Vec<Vec<(f64, f64)>>]| -> Vec<Vec<Vec<Complex64>>> {
            grid.iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| cell.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
                        .collect()
                })
                .collect()
        };
        let left = to_cells(&left);
        let right = to_cells(&right);
        let s = Complex64::new(sre, sim);
        // S = [[1, s], [0, 1]] has the exact inverse [[1, -s], [0, 1]].
        let mut left_s = left.clone();
        let mut right_s = right.clone();
        for i in 0..2 {
            left_s[i][1] = left[i][0]
                .iter()
                .zip(left[i][1].iter())
                .map(|(a, b)| *a * s + *b)
                .collect();
        }
        for j in 0..2 {
            right_s[0][j] = right[0][j]
                .iter()
                .zip(right[1][j].iter())
                .map(|(a, b)| *a - s * *b)
                .collect();
        }
        let rep = TensorRep::new(space_l.clone(), space_r.clone(), left, right).unwrap();
        let rep_s = TensorRep::new(space_l, space_r, left_s, right_s).unwrap();
        let m1 = wradius_core::realize_tensor(&rep).unwrap();
        let m2 = wradius_core::realize_tensor(&rep_s).unwrap();
        prop_assert!(m1.sub(&m2).unwrap().frobenius_norm() <= 1e-10 * (1.0 + m1.frobenius_norm()));
    }
}

fn space_m2() -> ConcreteOperatorSpace {
    let mut e01 = ComplexMatrix::zeros(2, 2);
    e01.set(0, 1, Complex64::new(1.0, 0.0));
    let mut mixed = ComplexMatrix::zeros(2, 2);
    mixed.set(0, 0, Complex64::new(1.0, 0.0));
    mixed.set(1, 0, Complex64::new(0.0, 0.7));
    ConcreteOperatorSpace::new(2, vec![e01, mixed]).unwrap()
}
