//! Dense complex matrices of small size (2, 3, 4, 6 or 9) and helpers.

use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;

/// Dense complex matrix used for spin operators, boosts and gamma matrices.
pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;
pub type Vec3 = Vector3<f64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn zeros(n: usize) -> CMat {
    CMat::zeros(n, n)
}

/// `v · ops = Σ_i v_i ops_i`.
pub fn dot_ops(ops: &[CMat; 3], v: &Vec3) -> CMat {
    &ops[0] * re(v.x) + &ops[1] * re(v.y) + &ops[2] * re(v.z)
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// `a ⊗ b` with the first factor's index running slow.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// `[[a, b], [c, d]]` for square blocks of equal size.
pub fn block2(a: &CMat, b: &CMat, c: &CMat, d: &CMat) -> CMat {
    let n = a.nrows();
    let mut m = zeros(2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(a);
    m.view_mut((0, n), (n, n)).copy_from(b);
    m.view_mut((n, 0), (n, n)).copy_from(c);
    m.view_mut((n, n), (n, n)).copy_from(d);
    m
}

pub fn block_diag(a: &CMat, d: &CMat) -> CMat {
    let z = zeros(a.nrows());
    block2(a, &z, &z, d)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a - b))
}

/// Frobenius inner product `Tr(a† b)`.
pub fn frobenius_inner(a: &CMat, b: &CMat) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn frobenius_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Distance from unitarity, `max |U U† − 1|`.
pub fn unitarity_defect(u: &CMat) -> f64 {
    max_abs_diff(&(u * u.adjoint()), &identity(u.nrows()))
}

pub fn hermiticity_defect(m: &CMat) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Rotation matrix `exp(θ [n]_×)` for a unit axis `n` (Rodrigues).
pub fn rotation_matrix(axis: &Vec3, angle: f64) -> nalgebra::Matrix3<f64> {
    nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(*axis), angle).into_inner()
}
