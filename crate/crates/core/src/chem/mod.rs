//! Molecular integrals, restricted Hartree–Fock, basis transformations and
//! FCIDUMP input/output for hydrogen-chain style systems in s-type bases.

mod basis;
mod boys;
mod fcidump;
mod geometry;
mod integrals;
mod scf;
mod transform;

pub use basis::{BasisSet, ContractedGaussian, Shell};
pub use boys::boys_f0;
pub use fcidump::{fcidump_read, fcidump_read_str, fcidump_write, fcidump_write_to, Fcidump};
pub use geometry::{Atom, Geometry, LengthUnit, ANGSTROM_TO_BOHR};
pub use integrals::{compute_ao_integrals, AoComponents};
pub use scf::{rhf_scf, ScfOptions, ScfResult};
pub(crate) use scf::sorted_eigh as sorted_eigh_pub;
pub use transform::{mo_transform, reduced_hamiltonian, spin_orbital_expand, ReducedHamiltonian};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::tensor::Tensor4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitalBasis {
    Ao,
    Mo,
    SpinOrbital,
}

/// Index convention of the two-electron tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    /// `(pq|st) = ∫ φp(1)φq(1) r12⁻¹ φs(2)φt(2)`
    Chemists,
    /// `⟨pq|st⟩ = (ps|qt)`
    Physicists,
}

/// One- and two-electron integrals over `n_orb` orbitals.
///
/// Spatial bases (AO, MO) store `g` in chemists' notation; the spin-orbital
/// basis stores plain (not antisymmetrized) physicists' `⟨pq|st⟩`.
#[derive(Clone, Debug)]
pub struct IntegralSet {
    pub n_orb: usize,
    pub e_nuc: f64,
    pub h: DMatrix<f64>,
    pub g: Tensor4<f64>,
    pub basis: OrbitalBasis,
    /// AO overlap; `None` means the orbitals are orthonormal.
    pub overlap: Option<DMatrix<f64>>,
}

impl IntegralSet {
    pub fn notation(&self) -> Notation {
        match self.basis {
            OrbitalBasis::SpinOrbital => Notation::Physicists,
            _ => Notation::Chemists,
        }
    }

    /// Largest deviation from the permutational symmetries of `h` and `g`.
    pub fn symmetry_error(&self) -> f64 {
        let n = self.n_orb;
        let mut worst: f64 = 0.0;
        for p in 0..n {
            for q in 0..n {
                worst = worst.max((self.h[(p, q)] - self.h[(q, p)]).abs());
            }
        }
        let g = &self.g;
        for p in 0..n {
            for q in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        let v = g[(p, q, s, t)];
                        let partners = match self.notation() {
                            Notation::Chemists => [g[(q, p, s, t)], g[(p, q, t, s)], g[(s, t, p, q)]],
                            Notation::Physicists => [g[(q, p, t, s)], g[(s, t, p, q)], g[(s, q, p, t)]],
                        };
                        for w in partners {
                            worst = worst.max((v - w).abs());
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn check_symmetry(&self, tol: f64) -> Result<()> {
        let err = self.symmetry_error();
        if err > tol {
            return Err(Error::AsymmetricIntegrals(format!("max deviation {err:e}")));
        }
        Ok(())
    }
}

/// Integrals of a neutral closed-shell molecule at each stage of the pipeline.
#[derive(Clone, Debug)]
pub struct MolecularSystem {
    pub n_electrons: usize,
    pub ao: IntegralSet,
    pub scf: ScfResult,
    pub mo: IntegralSet,
    pub spin_orbital: IntegralSet,
}

/// AO integrals → RHF → MO transform → spin-orbital expansion.
pub fn prepare_system(geom: &Geometry, basis: &BasisSet, opts: &ScfOptions) -> Result<MolecularSystem> {
    let n_electrons = geom.total_charge() as usize;
    let (ao, _) = compute_ao_integrals(geom, basis)?;
    let scf = rhf_scf(&ao, n_electrons, opts)?;
    let mo = mo_transform(&ao, &scf.coefficients)?;
    let spin_orbital = spin_orbital_expand(&mo)?;
    Ok(MolecularSystem { n_electrons, ao, scf, mo, spin_orbital })
}
