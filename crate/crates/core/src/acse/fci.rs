use nalgebra::DMatrix;

use crate::chem::{IntegralSet, OrbitalBasis};
use crate::error::{Error, Result};
use crate::secondq::hamiltonian_pauli;
use crate::tensorspace::PauliSum;
use crate::StateVector;

/// Basis indices with `n_electrons` set bits and `2Sz = N_α − N_β = ms2`,
/// α on even qubits and β on odd qubits.
pub fn sector_determinants(num_spin_orbitals: usize, n_electrons: usize, ms2: i32) -> Vec<usize> {
    let alpha_mask = (0..num_spin_orbitals).step_by(2).fold(0usize, |m, q| m | 1 << q);
    (0usize..1 << num_spin_orbitals)
        .filter(|&b| {
            let na = (b & alpha_mask).count_ones() as i32;
            let nb = (b & !alpha_mask).count_ones() as i32;
            (na + nb) as usize == n_electrons && na - nb == ms2
        })
        .collect()
}

/// Dense Hamiltonian matrix of `h` over the given determinants.
pub fn sector_matrix(h: &PauliSum<f64>, dets: &[usize]) -> Result<DMatrix<f64>> {
    let index: std::collections::HashMap<usize, usize> =
        dets.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut m = DMatrix::<num_complex::Complex64>::zeros(dets.len(), dets.len());
    for (j, &b) in dets.iter().enumerate() {
        for p in h.iter() {
            let (phase, target) = p.letters.act(b);
            if let Some(&i) = index.get(&target) {
                m[(i, j)] += phase.apply(p.coefficient);
            }
        }
    }
    let imag = m.iter().fold(0.0f64, |a, z| a.max(z.im.abs()));
    if imag > 1e-10 {
        return Err(Error::InvalidArgument(format!("sector Hamiltonian is complex (max imag {imag:e})")));
    }
    Ok(m.map(|z| z.re))
}

/// Lowest eigenpair of the Hamiltonian in the fixed-(N, Sz) determinant space.
///
/// The energy includes `E_nuc`. The eigenvector is embedded in the full
/// register with determinant `|j₁<…<j_N⟩ ≡ a†_{j₁}…a†_{j_N}|vac⟩`.
pub fn fci_ground_state(ints: &IntegralSet, n_electrons: usize, ms2: i32) -> Result<(f64, StateVector)> {
    if ints.basis != OrbitalBasis::SpinOrbital {
        return Err(Error::InvalidArgument("fci_ground_state needs spin-orbital integrals".into()));
    }
    let r = ints.n_orb;
    let empty = Error::EmptySector { n_electrons, ms2, num_spin_orbitals: r };
    if n_electrons == 0 || n_electrons > r {
        return Err(empty);
    }
    let dets = sector_determinants(r, n_electrons, ms2);
    if dets.is_empty() {
        return Err(empty);
    }
    let h = hamiltonian_pauli(ints)?;
    let m = sector_matrix(&h, &dets)?;
    let (values, vectors) = crate::chem::sorted_eigh_pub(&m);
    let mut state = StateVector::zeros(r)?;
    let col = vectors.column(0);
    // fix the overall sign so the largest component is positive
    let lead = col.iter().copied().fold(0.0f64, |a, v| if v.abs() > a.abs() { v } else { a });
    let sign = if lead < 0.0 { -1.0 } else { 1.0 };
    for (k, &b) in dets.iter().enumerate() {
        state.amplitudes_mut()[b] = num_complex::Complex64::new(sign * col[k], 0.0);
    }
    Ok((values[0] + ints.e_nuc, state))
}
