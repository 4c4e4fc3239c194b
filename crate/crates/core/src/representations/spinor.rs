use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::boost::boost;
use crate::kinematics::FourMomentum;
use crate::linalg::{re, CVec};
use crate::spin_algebra::{block_swap, spin_set, Spin};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinorKind {
    /// `𝒰(p)`, positive-energy states.
    U,
    /// `𝒱(p)`, negative-energy states.
    V,
}

/// A `2(2j+1)`-component Weinberg spinor.
#[derive(Debug, Clone)]
pub struct WeinbergSpinor {
    pub spin: Spin,
    pub kind: SpinorKind,
    pub p: FourMomentum,
    pub twice_sigma: i32,
    pub components: CVec,
}

impl WeinbergSpinor {
    /// `self† γ_44 other`, with `γ_44` swapping the chiral blocks.
    pub fn gamma44_product(&self, other: &WeinbergSpinor) -> Complex64 {
        let swap = block_swap(self.spin.dim());
        (self.components.adjoint() * swap * &other.components)[(0, 0)]
    }

    pub fn top(&self) -> CVec {
        let n = self.spin.dim();
        self.components.rows(0, n).into_owned()
    }

    pub fn bottom(&self) -> CVec {
        let n = self.spin.dim();
        self.components.rows(n, n).into_owned()
    }
}

fn xi(spin: Spin, twice_sigma: i32) -> Result<CVec> {
    let mut v = CVec::zeros(spin.dim());
    v[spin.index_of(twice_sigma)?] = re(1.0);
    Ok(v)
}

fn stack(top: CVec, bottom: CVec) -> CVec {
    let n = top.len();
    let mut v = CVec::zeros(2 * n);
    v.rows_mut(0, n).copy_from(&top);
    v.rows_mut(n, n).copy_from(&bottom);
    v
}

pub fn spinor_u(spin: Spin, p: &FourMomentum, twice_sigma: i32) -> Result<WeinbergSpinor> {
    let xi = xi(spin, twice_sigma)?;
    let b = boost(spin, p);
    let norm = re((p.mass() / 2.0).sqrt());
    Ok(WeinbergSpinor {
        spin,
        kind: SpinorKind::U,
        p: *p,
        twice_sigma,
        components: stack(&b.d_plus * &xi * norm, &b.d_minus * &xi * norm),
    })
}

/// Negative-energy spinor, using `D^j(α Θ_[1/2]) = D^j(α) Θ_[j]`. The lower
/// block carries `(−1)^{2j}`; the resulting `𝒱†γ_44𝒱` is `(−1)^{2j} M`.
pub fn spinor_v(spin: Spin, p: &FourMomentum, twice_sigma: i32) -> Result<WeinbergSpinor> {
    // ξ_σ is real in the canonical basis, so ξ_σ* = ξ_σ.
    let xi = xi(spin, twice_sigma)?.map(|z| z.conj());
    let theta = &spin_set(spin).theta;
    let b = boost(spin, p);
    let norm = re((p.mass() / 2.0).sqrt());
    let sign = re(if spin.twice() % 2 == 0 { 1.0 } else { -1.0 });
    Ok(WeinbergSpinor {
        spin,
        kind: SpinorKind::V,
        p: *p,
        twice_sigma,
        components: stack(
            &b.d_plus * theta * &xi * norm,
            &b.d_minus * theta * &xi * norm * sign,
        ),
    })
}
