//! Spin matrices, Wigner time-reversal operators and gamma-matrix algebras.
//!
//! Basis: `J_z` diagonal with projections ordered from `+j` down to `−j`.
//! Euclidean four-indices run `1..=4` in the literature; here they are
//! stored `0..4` with index 3 playing the role of "4" (`x4 = i x0`).

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::kinematics::FourMomentum;
use crate::linalg::{anticommutator, block2, commutator, dot_ops, identity, re, zeros, CMat, Vec3, I};
use crate::{Error, Result};

/// Spin of a particle. Only `j = 1/2` and `j = 1` are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    #[serde(rename = "1/2")]
    Half,
    #[serde(rename = "1")]
    One,
}

impl Spin {
    pub fn from_twice(twice_j: u32) -> Result<Self> {
        match twice_j {
            1 => Ok(Spin::Half),
            2 => Ok(Spin::One),
            other => Err(Error::Unsupported(other)),
        }
    }

    pub fn twice(self) -> u32 {
        match self {
            Spin::Half => 1,
            Spin::One => 2,
        }
    }

    pub fn value(self) -> f64 {
        self.twice() as f64 / 2.0
    }

    /// Dimension `2j + 1` of the spin space.
    pub fn dim(self) -> usize {
        self.twice() as usize + 1
    }

    /// Basis index of the projection `σ` given as `2σ`.
    pub fn index_of(self, twice_sigma: i32) -> Result<usize> {
        let tj = self.twice() as i32;
        if twice_sigma.abs() > tj || (tj - twice_sigma) % 2 != 0 {
            return Err(Error::InvalidProjection {
                twice_j: self.twice(),
                twice_sigma,
            });
        }
        Ok(((tj - twice_sigma) / 2) as usize)
    }

    /// Projections `2σ` in basis order.
    pub fn projections(self) -> impl Iterator<Item = i32> {
        let tj = self.twice() as i32;
        (0..=tj).map(move |n| tj - 2 * n)
    }
}

/// Spin-`j` matrices together with the Wigner operator `Θ_[j]`.
#[derive(Debug, Clone)]
pub struct SpinOperatorSet {
    pub spin: Spin,
    /// `(J_x, J_y, J_z)`.
    pub j: [CMat; 3],
    pub theta: CMat,
}

impl SpinOperatorSet {
    pub fn dot(&self, v: &Vec3) -> CMat {
        dot_ops(&self.j, v)
    }

    pub fn identity(&self) -> CMat {
        identity(self.spin.dim())
    }

    pub fn casimir(&self) -> CMat {
        self.j.iter().map(|m| m * m).fold(zeros(self.spin.dim()), |a, b| a + b)
    }
}

/// Spin matrices from the ladder construction, plus `Θ_[j]` with matrix
/// elements `(−1)^{j−σ} δ_{σ',−σ}`.
pub fn make_spin_set(spin: Spin) -> SpinOperatorSet {
    let n = spin.dim();
    let j = spin.value();
    let proj: Vec<f64> = spin.projections().map(|t| t as f64 / 2.0).collect();

    let mut jz = zeros(n);
    let mut jplus = zeros(n);
    for (a, &m) in proj.iter().enumerate() {
        jz[(a, a)] = re(m);
        // <m+1| J+ |m> sits one row above.
        if a > 0 {
            jplus[(a - 1, a)] = re((j * (j + 1.0) - m * (m + 1.0)).sqrt());
        }
    }
    let jminus = jplus.adjoint();
    let jx = (&jplus + &jminus) * re(0.5);
    let jy = (&jplus - &jminus) * Complex64::new(0.0, -0.5);

    let mut theta = zeros(n);
    for (col, &sigma) in proj.iter().enumerate() {
        let row = n - 1 - col;
        let phase = if ((j - sigma).round() as i64) % 2 == 0 { 1.0 } else { -1.0 };
        theta[(row, col)] = re(phase);
    }

    SpinOperatorSet {
        spin,
        j: [jx, jy, jz],
        theta,
    }
}

/// Cached spin sets.
pub fn spin_set(spin: Spin) -> &'static SpinOperatorSet {
    static HALF: OnceLock<SpinOperatorSet> = OnceLock::new();
    static ONE: OnceLock<SpinOperatorSet> = OnceLock::new();
    match spin {
        Spin::Half => HALF.get_or_init(|| make_spin_set(Spin::Half)),
        Spin::One => ONE.get_or_init(|| make_spin_set(Spin::One)),
    }
}

/// Pauli matrices `σ = 2 S` for `j = 1/2`.
pub fn pauli() -> [CMat; 3] {
    let s = spin_set(Spin::Half);
    [&s.j[0] * re(2.0), &s.j[1] * re(2.0), &s.j[2] * re(2.0)]
}

/// Spin matrices normalized the way the amplitudes use them: `σ` for
/// `j = 1/2`, `J` for `j = 1`.
pub fn amplitude_spin_matrices(spin: Spin) -> [CMat; 3] {
    match spin {
        Spin::Half => pauli(),
        Spin::One => spin_set(Spin::One).j.clone(),
    }
}

/// The 6x6 Barut–Muzinich–Williams matrices and their derived sets.
#[derive(Debug, Clone)]
pub struct Gamma6Set {
    /// `γ_{μν}`, Euclidean indices.
    pub gamma: [[CMat; 4]; 4],
    /// `γ_{5,αβ} = i Σ_μ [γ_{αμ}, γ_{βμ}]`.
    pub gamma5: [[CMat; 4]; 4],
    gamma6: Vec<CMat>,
    /// `block-diag(+1, −1)` in the `(j,0)⊕(0,j)` block basis.
    pub chirality: CMat,
}

impl Gamma6Set {
    /// `γ_{6,αβ,μν}`.
    pub fn gamma6(&self, a: usize, b: usize, m: usize, n: usize) -> &CMat {
        &self.gamma6[((a * 4 + b) * 4 + m) * 4 + n]
    }

    /// `Γ_{αβ} = γ_{αβ} + δ_{αβ}`.
    pub fn big_gamma(&self, a: usize, b: usize) -> CMat {
        if a == b {
            &self.gamma[a][b] + identity(6)
        } else {
            self.gamma[a][b].clone()
        }
    }
}

pub fn make_gamma6(set: &SpinOperatorSet) -> Result<Gamma6Set> {
    if set.spin != Spin::One {
        return Err(Error::Unsupported(set.spin.twice()));
    }
    let j = &set.j;
    let z = zeros(3);
    let one = identity(3);
    let mut gamma: [[CMat; 4]; 4] = Default::default();
    for a in 0..3 {
        for b in 0..3 {
            let delta = if a == b { one.clone() } else { zeros(3) };
            let x = delta - anticommutator(&j[a], &j[b]);
            gamma[a][b] = block2(&z, &x, &x, &z);
        }
        let ij = &j[a] * I;
        gamma[a][3] = block2(&z, &ij, &(-&ij), &z);
        gamma[3][a] = gamma[a][3].clone();
    }
    gamma[3][3] = block2(&z, &one, &one, &z);

    let mut gamma5: [[CMat; 4]; 4] = Default::default();
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = zeros(6);
            for m in 0..4 {
                acc += commutator(&gamma[a][m], &gamma[b][m]);
            }
            gamma5[a][b] = acc * I;
        }
    }

    let delta = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
    let mut gamma6 = Vec::with_capacity(256);
    for a in 0..4 {
        for b in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let scalar = 2.0 * (delta(a, m) * delta(b, n) - delta(b, m) * delta(a, n));
                    gamma6.push(
                        anticommutator(&gamma[a][m], &gamma[b][n])
                            - anticommutator(&gamma[b][m], &gamma[a][n])
                            + identity(6) * re(scalar),
                    );
                }
            }
        }
    }

    Ok(Gamma6Set {
        gamma,
        gamma5,
        gamma6,
        chirality: chirality(3),
    })
}

pub fn gamma6_set() -> &'static Gamma6Set {
    static SET: OnceLock<Gamma6Set> = OnceLock::new();
    SET.get_or_init(|| make_gamma6(spin_set(Spin::One)).expect("spin-1 set"))
}

/// `block-diag(+1_n, −1_n)`.
pub fn chirality(n: usize) -> CMat {
    let mut c = identity(2 * n);
    for a in n..2 * n {
        c[(a, a)] = re(-1.0);
    }
    c
}

/// `block-diag(0, 1; 1, 0)`: swaps the two chiral blocks (`γ_44`, `γ^0`).
pub fn block_swap(n: usize) -> CMat {
    let z = zeros(n);
    let one = identity(n);
    block2(&z, &one, &one, &z)
}

/// Dirac matrices in the chiral basis with the right-handed block on top,
/// so that `block-diag(α(p), α(p)⁻¹)` represents the boost `Λ_p`.
/// Minkowski, contravariant: `γ^0 = [[0,1],[1,0]]`, `γ^k = [[0,−σ_k],[σ_k,0]]`.
#[derive(Debug, Clone)]
pub struct DiracSet {
    pub gamma: [CMat; 4],
    pub chirality: CMat,
}

impl DiracSet {
    /// `σ_{μν} = ½ [γ_μ, γ_ν]`.
    pub fn sigma(&self, m: usize, n: usize) -> CMat {
        commutator(&self.gamma[m], &self.gamma[n]) * re(0.5)
    }
}

pub fn dirac_set() -> &'static DiracSet {
    static SET: OnceLock<DiracSet> = OnceLock::new();
    SET.get_or_init(|| {
        let s = pauli();
        let z = zeros(2);
        let g = |k: usize| block2(&z, &(-&s[k]), &s[k], &z);
        DiracSet {
            gamma: [block_swap(2), g(0), g(1), g(2)],
            chirality: chirality(2),
        }
    })
}

/// Four-vector with Euclidean components `(x1, x2, x3, x4 = i x0)`.
pub type EuclideanFour = [Complex64; 4];

pub fn euclidean_vector(p: &FourMomentum) -> EuclideanFour {
    let [p0, p1, p2, p3] = p.components();
    [re(p1), re(p2), re(p3), I * p0]
}

/// `Σ_μ a_μ b_μ`; equals minus the Minkowski product for real spatial parts.
pub fn euclidean_dot(a: &EuclideanFour, b: &EuclideanFour) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
