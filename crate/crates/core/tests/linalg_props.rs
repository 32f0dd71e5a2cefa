use polyframe::linalg::{
    direct_rotation, gram_schmidt_pair, qr_householder, qr_sign_corrected, svd_2x2, ComplexVector, Matrix2,
    RealVector,
};
use polyframe::sampling::SeededRng;
use polyframe::{Complex64, Scalar, Vector};
use proptest::prelude::*;

fn real_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Independent angle oracle: atan2 of the sine (from the rejection) and cosine.
fn oracle_angle(a: &[f64], b: &[f64]) -> f64 {
    let c = real_dot(a, b);
    let s = a
        .iter()
        .zip(b)
        .map(|(x, y)| (y - c * x).powi(2))
        .sum::<f64>()
        .sqrt();
    s.atan2(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gram_schmidt_is_orthonormal(seed in any::<u64>(), n in 3usize..2000) {
        let mut rng = SeededRng::new(seed);
        let (a, b) = gram_schmidt_pair(&rng.gaussian_vector(n), &rng.gaussian_vector(n)).unwrap();
        prop_assert!((a.norm() - 1.0).abs() <= 1e-12);
        prop_assert!((b.norm() - 1.0).abs() <= 1e-12);
        prop_assert!(a.dot(&b).abs() <= 1e-12);
    }

    #[test]
    fn complex_gram_schmidt_is_orthonormal(seed in any::<u64>(), n in 2usize..500) {
        let mut rng = SeededRng::new(seed);
        let (a, b) = gram_schmidt_pair(&rng.complex_gaussian_vector(n), &rng.complex_gaussian_vector(n)).unwrap();
        prop_assert!((a.norm() - 1.0).abs() <= 1e-12);
        prop_assert!((b.norm() - 1.0).abs() <= 1e-12);
        prop_assert!(a.dot(&b).norm() <= 1e-12);
    }

    #[test]
    fn direct_rotation_scales_the_angle(seed in any::<u64>(), n in 2usize..200, t in 0.0f64..=1.0) {
        let mut rng = SeededRng::new(seed);
        let a = rng.gaussian_vector(n).normalized().unwrap();
        let b = rng.gaussian_vector(n).normalized().unwrap();
        let r = direct_rotation(&a, &b, t).unwrap();
        prop_assert!((r.norm() - 1.0).abs() <= 1e-12);
        let full = oracle_angle(a.as_slice(), b.as_slice());
        let partial = oracle_angle(a.as_slice(), r.as_slice());
        prop_assert!((partial - t * full).abs() <= 1e-10, "{partial} vs {}", t * full);
    }
}

#[test]
fn sign_corrected_qr_equals_gram_schmidt() {
    let mut rng = SeededRng::new(11);
    for k in 0..1000 {
        let n = 2 + k % 300;
        let c1 = rng.gaussian_vector(n);
        let c2 = rng.gaussian_vector(n);
        let qr = qr_sign_corrected(&c1, &c2).unwrap();
        let (a, b) = gram_schmidt_pair(&c1, &c2).unwrap();
        assert!(qr.q.0.max_abs_diff(&a) <= 1e-10);
        assert!(qr.q.1.max_abs_diff(&b) <= 1e-10);
        assert!(qr.r[0] > 0.0 && qr.r[2] > 0.0);
    }
}

#[test]
fn householder_factors_reconstruct_the_matrix() {
    let mut rng = SeededRng::new(12);
    for n in [2, 3, 7, 64, 1000] {
        let c1 = rng.gaussian_vector(n);
        let c2 = rng.gaussian_vector(n);
        let qr = qr_householder(&c1, &c2).unwrap();
        let [r11, r12, r22] = qr.r;
        let a1: Vec<f64> = qr.q.0.iter().map(|q| r11 * q).collect();
        let a2: Vec<f64> = qr.q.0.iter().zip(qr.q.1.iter()).map(|(p, q)| r12 * p + r22 * q).collect();
        let scale = c1.norm().max(c2.norm());
        assert!(RealVector::new(a1).max_abs_diff(&c1) <= 1e-13 * scale * n as f64);
        assert!(RealVector::new(a2).max_abs_diff(&c2) <= 1e-13 * scale * n as f64);
        assert!(real_dot(qr.q.0.as_slice(), qr.q.1.as_slice()).abs() <= 1e-13);
        // the LAPACK convention puts a non-positive entry at the top of the first column
        assert!(qr.q.0[0] <= 0.0);
    }
}

fn unitary_defect<S: Scalar>(m: &Matrix2<S>) -> f64 {
    m.adjoint().mul(m).frobenius_distance(&Matrix2::identity())
}

#[test]
fn svd_reconstructs_real_matrices() {
    let mut rng = SeededRng::new(13);
    for _ in 0..10_000 {
        let m = Matrix2::new(
            rng.standard_normal(),
            rng.standard_normal(),
            rng.standard_normal(),
            rng.standard_normal(),
        );
        let svd = svd_2x2(&m);
        assert!(svd.reconstruct().frobenius_distance(&m) <= 1e-12);
        assert!(svd.sigma[0] >= svd.sigma[1] && svd.sigma[1] >= 0.0);
        assert!(unitary_defect(&svd.u) <= 1e-12 && unitary_defect(&svd.v) <= 1e-12);
    }
}

#[test]
fn svd_reconstructs_complex_matrices() {
    let mut rng = SeededRng::new(14);
    let mut z = || Complex64::new(rng.standard_normal(), rng.standard_normal());
    for _ in 0..10_000 {
        let m = Matrix2::new(z(), z(), z(), z());
        let svd = svd_2x2(&m);
        assert!(svd.reconstruct().frobenius_distance(&m) <= 1e-12);
        assert!(svd.sigma[0] >= svd.sigma[1] && svd.sigma[1] >= 0.0);
        assert!(unitary_defect(&svd.u) <= 1e-12 && unitary_defect(&svd.v) <= 1e-12);
    }
}

#[test]
fn svd_singular_values_match_the_characteristic_polynomial() {
    // σ² are the roots of λ² − ‖M‖²_F λ + |det M|² = 0
    let mut rng = SeededRng::new(15);
    for _ in 0..1000 {
        let (a, b, c, d) = (
            rng.standard_normal(),
            rng.standard_normal(),
            rng.standard_normal(),
            rng.standard_normal(),
        );
        let fro = a * a + b * b + c * c + d * d;
        let det = a * d - b * c;
        let disc = (fro * fro - 4.0 * det * det).max(0.0).sqrt();
        let s1 = ((fro + disc) / 2.0).sqrt();
        let s2 = (det.abs()) / s1;
        let svd = svd_2x2(&Matrix2::new(a, b, c, d));
        assert!((svd.sigma[0] - s1).abs() <= 1e-12 * s1.max(1.0));
        assert!((svd.sigma[1] - s2).abs() <= 1e-12 * s1.max(1.0));
    }
}

#[test]
fn complex_vectors_use_the_hermitian_product() {
    let a = ComplexVector::new(vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)]);
    let b = Vector::new(vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)]);
    assert_eq!(a.dot(&b), Complex64::new(1.0, 0.0));
    assert_eq!(a.norm_sqr(), 2.0);
}
