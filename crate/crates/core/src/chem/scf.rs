use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{IntegralSet, OrbitalBasis};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct ScfOptions {
    pub max_iter: usize,
    /// Convergence threshold on the Frobenius norm of `FDS − SDF`.
    pub conv_tol: f64,
    /// Fraction of the previous density mixed into the next one.
    pub damping: f64,
}

impl Default for ScfOptions {
    fn default() -> Self {
        ScfOptions { max_iter: 200, conv_tol: 1e-10, damping: 0.0 }
    }
}

#[derive(Clone, Debug)]
pub struct ScfResult {
    /// Columns are MOs sorted by orbital energy.
    pub coefficients: DMatrix<f64>,
    pub orbital_energies: DVector<f64>,
    /// Total energy including nuclear repulsion.
    pub energy: f64,
    /// Closed-shell density `D = 2 C_occ C_occᵀ`.
    pub density: DMatrix<f64>,
    pub iterations: usize,
    pub commutator_norm: f64,
}

/// Eigen-decomposition with eigenvalues ascending.
pub(crate) fn sorted_eigh(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

fn fock(ints: &IntegralSet, density: &DMatrix<f64>) -> DMatrix<f64> {
    let n = ints.n_orb;
    let mut f = ints.h.clone();
    for p in 0..n {
        for q in 0..n {
            let mut v = 0.0;
            for r in 0..n {
                for s in 0..n {
                    v += density[(r, s)] * (ints.g[(p, q, r, s)] - 0.5 * ints.g[(p, r, q, s)]);
                }
            }
            f[(p, q)] += v;
        }
    }
    f
}

/// Closed-shell SCF with symmetric orthogonalization and core-Hamiltonian guess.
pub fn rhf_scf(ints: &IntegralSet, n_electrons: usize, opts: &ScfOptions) -> Result<ScfResult> {
    if ints.basis == OrbitalBasis::SpinOrbital {
        return Err(Error::InvalidArgument("rhf_scf needs spatial-orbital integrals".into()));
    }
    if !n_electrons.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("closed-shell SCF needs even N, got {n_electrons}")));
    }
    let n = ints.n_orb;
    let n_occ = n_electrons / 2;
    if n_occ > n {
        return Err(Error::InvalidArgument(format!("{n_electrons} electrons exceed {n} orbitals")));
    }
    let overlap = ints.overlap.clone().unwrap_or_else(|| DMatrix::identity(n, n));
    let (s_vals, s_vecs) = sorted_eigh(&overlap);
    let s_min = s_vals.iter().copied().fold(f64::INFINITY, f64::min);
    if !(s_min > 1e-10) {
        return Err(Error::SingularOverlap(s_min));
    }
    let inv_sqrt = DMatrix::from_diagonal(&s_vals.map(|v| 1.0 / v.sqrt()));
    let x = &s_vecs * inv_sqrt * s_vecs.transpose();

    let diagonalize = |f: &DMatrix<f64>| {
        let (eps, cp) = sorted_eigh(&(x.transpose() * f * &x));
        let c = &x * cp;
        let occ = c.columns(0, n_occ);
        let d = 2.0 * &occ * occ.transpose();
        (eps, c, d)
    };

    let (_, _, mut density) = diagonalize(&ints.h);
    let mut last_norm = f64::INFINITY;
    for iter in 1..=opts.max_iter {
        let f = fock(ints, &density);
        let comm = &f * &density * &overlap - &overlap * &density * &f;
        last_norm = comm.norm();
        let (eps, c, d_new) = diagonalize(&f);
        if last_norm < opts.conv_tol {
            let energy = 0.5 * density.component_mul(&(&ints.h + &f)).sum() + ints.e_nuc;
            return Ok(ScfResult {
                coefficients: c,
                orbital_energies: eps,
                energy,
                density,
                iterations: iter,
                commutator_norm: last_norm,
            });
        }
        density = (1.0 - opts.damping) * d_new + opts.damping * density;
    }
    Err(Error::ScfNotConverged { iterations: opts.max_iter, residual: last_norm })
}
