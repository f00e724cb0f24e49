use nalgebra::DMatrix;

use super::{IntegralSet, OrbitalBasis};
use crate::error::{Error, Result};
use crate::tensor::Tensor4;

/// AO → MO transformation with coefficient columns `C`.
pub fn mo_transform(ints: &IntegralSet, c: &DMatrix<f64>) -> Result<IntegralSet> {
    if ints.basis == OrbitalBasis::SpinOrbital {
        return Err(Error::InvalidArgument("mo_transform needs spatial-orbital integrals".into()));
    }
    let n = ints.n_orb;
    if c.nrows() != n {
        return Err(Error::InvalidArgument(format!("C has {} rows, expected {n}", c.nrows())));
    }
    let m = c.ncols();
    let overlap = ints.overlap.clone().unwrap_or_else(|| DMatrix::identity(n, n));
    let ortho = (c.transpose() * overlap * c - DMatrix::<f64>::identity(m, m)).abs().max();
    if ortho > 1e-8 {
        return Err(Error::InvalidArgument(format!("C is not S-orthonormal (deviation {ortho:e})")));
    }
    let h = c.transpose() * &ints.h * c;

    // four quarter transformations, one index at a time
    let mut cur = ints.g.as_slice().to_vec();
    let mut dims = [n, n, n, n];
    for axis in 0..4 {
        let mut next_dims = dims;
        next_dims[axis] = m;
        let stride = |d: &[usize; 4], k: usize| d[k + 1..].iter().product::<usize>();
        let mut next = vec![0.0; next_dims.iter().product()];
        for (flat, out) in next.iter_mut().enumerate() {
            let mut idx = [0usize; 4];
            let mut rem = flat;
            for k in (0..4).rev() {
                idx[k] = rem % next_dims[k];
                rem /= next_dims[k];
            }
            let target = idx[axis];
            let mut v = 0.0;
            for mu in 0..n {
                idx[axis] = mu;
                let src: usize = (0..4).map(|k| idx[k] * stride(&dims, k)).sum();
                v += c[(mu, target)] * cur[src];
            }
            *out = v;
        }
        cur = next;
        dims = next_dims;
    }
    let g = Tensor4::from_fn(m, |p, q, r, s| cur[((p * m + q) * m + r) * m + s]);
    Ok(IntegralSet { n_orb: m, e_nuc: ints.e_nuc, h, g, basis: OrbitalBasis::Mo, overlap: None })
}

/// Spin-orbital expansion with qubit index `2·orbital + spin` (0 = α, 1 = β).
///
/// Output `g` is plain physicists' `⟨pq|st⟩ = (ps|qt) δ(σp,σs) δ(σq,σt)`.
pub fn spin_orbital_expand(ints: &IntegralSet) -> Result<IntegralSet> {
    if ints.basis != OrbitalBasis::Mo {
        return Err(Error::InvalidArgument("spin_orbital_expand needs MO integrals".into()));
    }
    let n = ints.n_orb;
    let r = 2 * n;
    let h = DMatrix::from_fn(r, r, |p, q| if p % 2 == q % 2 { ints.h[(p / 2, q / 2)] } else { 0.0 });
    let g = Tensor4::from_fn(r, |p, q, s, t| {
        if p % 2 == s % 2 && q % 2 == t % 2 {
            ints.g[(p / 2, s / 2, q / 2, t / 2)]
        } else {
            0.0
        }
    });
    Ok(IntegralSet { n_orb: r, e_nuc: ints.e_nuc, h, g, basis: OrbitalBasis::SpinOrbital, overlap: None })
}

/// Two-electron reduced Hamiltonian over spin orbitals.
///
/// `K2` is normalized so that `Tr(K2 · D/(N(N−1)))` is the electronic energy
/// for a 2-RDM `D` with trace `N(N−1)`.
#[derive(Clone, Debug)]
pub struct ReducedHamiltonian {
    pub k2: Tensor4<f64>,
    pub n_electrons: usize,
}

pub fn reduced_hamiltonian(ints: &IntegralSet, n_electrons: usize) -> Result<ReducedHamiltonian> {
    if ints.basis != OrbitalBasis::SpinOrbital {
        return Err(Error::InvalidArgument("reduced_hamiltonian needs spin-orbital integrals".into()));
    }
    if n_electrons < 2 {
        return Err(Error::InvalidArgument(format!("reduced Hamiltonian needs N >= 2, got {n_electrons}")));
    }
    let nn = n_electrons as f64;
    let h = &ints.h;
    let g = &ints.g;
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let k2 = Tensor4::from_fn(ints.n_orb, |p, q, s, t| {
        let one = h[(p, s)] * delta(q, t) + h[(q, t)] * delta(p, s)
            - h[(p, t)] * delta(q, s)
            - h[(q, s)] * delta(p, t);
        let two = g[(p, q, s, t)] - g[(p, q, t, s)];
        nn / 4.0 * one + nn * (nn - 1.0) / 4.0 * two
    });
    Ok(ReducedHamiltonian { k2, n_electrons })
}
