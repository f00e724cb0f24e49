//! Fermionic reduced density matrices measured from statevectors, the
//! two-body energy functional, and ensemble N-representability checks.

use std::io::{BufRead, Write};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::chem::{reduced_hamiltonian, IntegralSet, ReducedHamiltonian};
use crate::error::{Error, Result};
use crate::secondq::{pair_annihilations, Statistics};
use crate::tensor::{folded_pairs, Tensor4};
use crate::StateVector;

/// `D^{pq}_{st} = ⟨a†_p a†_q a_t a_s⟩`, trace `N(N−1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoRDM {
    pub d: Tensor4<Complex64>,
    pub n_electrons: usize,
}

/// `d^p_s = ⟨a†_p a_s⟩`, trace `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneRDM {
    pub d: DMatrix<Complex64>,
}

impl TwoRDM {
    pub fn num_orbitals(&self) -> usize {
        self.d.dim()
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.num_orbitals();
        let mut t = Complex64::default();
        for p in 0..n {
            for q in 0..n {
                t += self.d[(p, q, p, q)];
            }
        }
        t
    }

    /// Folded-pair matrix `M[(pq),(st)] = D^{pq}_{st}` for `p<q`, `s<t`.
    pub fn pair_matrix(&self) -> DMatrix<Complex64> {
        folded_matrix(&self.d)
    }

    pub fn max_abs_diff(&self, other: &TwoRDM) -> f64 {
        self.d
            .as_slice()
            .iter()
            .zip(other.d.as_slice())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Writes header `r N trace`, then `p q s t real imag` for folded-unique
    /// elements (`p<q`, `s<t`, 0-based) above 1e-14.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        let n = self.num_orbitals();
        writeln!(w, "{} {} {:.17e}", n, self.n_electrons, self.trace().re)?;
        let pairs = folded_pairs(n);
        for &(p, q) in &pairs {
            for &(s, t) in &pairs {
                let v = self.d[(p, q, s, t)];
                if v.norm() > 1e-14 {
                    writeln!(w, "{p} {q} {s} {t} {:.17e} {:.17e}", v.re, v.im)?;
                }
            }
        }
        Ok(())
    }

    /// Reads [`TwoRDM::write_dump`] output; partners are filled by antisymmetry only.
    pub fn read_dump<R: BufRead>(reader: R) -> Result<TwoRDM> {
        let mut lines = reader.lines().enumerate();
        let (n, n_electrons) = loop {
            let Some((i, line)) = lines.next() else {
                return Err(Error::Parse { line: 1, msg: "empty RDM dump".into() });
            };
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let err = || Error::Parse { line: i + 1, msg: "expected header `r N trace`".into() };
            if f.len() != 3 {
                return Err(err());
            }
            let n: usize = f[0].parse().map_err(|_| err())?;
            let ne: usize = f[1].parse().map_err(|_| err())?;
            f[2].parse::<f64>().map_err(|_| err())?;
            break (n, ne);
        };
        if n > crate::tensorspace::MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let mut d = Tensor4::zeros(n);
        for (i, line) in lines {
            let line = line?;
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            if f.len() != 6 {
                return Err(err("expected `p q s t real imag`"));
            }
            let mut idx = [0usize; 4];
            for k in 0..4 {
                idx[k] = f[k].parse().map_err(|_| err("bad index"))?;
                if idx[k] >= n {
                    return Err(err("index out of range"));
                }
            }
            let [p, q, s, t] = idx;
            if p == q || s == t {
                return Err(err("repeated index in pair"));
            }
            let re: f64 = f[4].parse().map_err(|_| err("bad real part"))?;
            let im: f64 = f[5].parse().map_err(|_| err("bad imaginary part"))?;
            let v = Complex64::new(re, im);
            d[(p, q, s, t)] = v;
            d[(q, p, s, t)] = -v;
            d[(p, q, t, s)] = -v;
            d[(q, p, t, s)] = v;
        }
        Ok(TwoRDM { d, n_electrons })
    }
}

fn folded_matrix(t: &Tensor4<Complex64>) -> DMatrix<Complex64> {
    let pairs = folded_pairs(t.dim());
    DMatrix::from_fn(pairs.len(), pairs.len(), |i, j| {
        let (p, q) = pairs[i];
        let (s, u) = pairs[j];
        t[(p, q, s, u)]
    })
}

/// Measures the 2-RDM with fermionic (Jordan–Wigner) operators, whatever
/// statistics were used to prepare the state.
pub fn measure_2rdm(state: &StateVector, n_electrons: usize) -> Result<TwoRDM> {
    let measured = state.number_expectation();
    if (measured - n_electrons as f64).abs() > 1e-8 {
        return Err(Error::WrongSector { expected: n_electrons, measured });
    }
    let r = state.num_qubits();
    let pairs = folded_pairs(r);
    let vecs = pair_annihilations(state, Statistics::Fermionic);
    let mut d = Tensor4::zeros(r);
    for (i, &(p, q)) in pairs.iter().enumerate() {
        for (j, &(s, t)) in pairs.iter().enumerate().skip(i) {
            let v = vecs[i].inner(&vecs[j]).expect("same register");
            for (a, b, c, e, val) in [(p, q, s, t, v), (s, t, p, q, v.conj())] {
                d[(a, b, c, e)] = val;
                d[(b, a, c, e)] = -val;
                d[(a, b, e, c)] = -val;
                d[(b, a, e, c)] = val;
            }
        }
    }
    Ok(TwoRDM { d, n_electrons })
}

/// `d^p_s = (1/(N−1)) Σ_q D^{pq}_{sq}`.
pub fn contract_to_1rdm(rdm: &TwoRDM) -> Result<OneRDM> {
    let ne = rdm.n_electrons;
    if ne < 2 {
        return Err(Error::InvalidArgument(format!("1-RDM contraction needs N >= 2, got {ne}")));
    }
    let n = rdm.num_orbitals();
    let scale = 1.0 / (ne - 1) as f64;
    let d = DMatrix::from_fn(n, n, |p, s| (0..n).map(|q| rdm.d[(p, q, s, q)]).sum::<Complex64>() * scale);
    Ok(OneRDM { d })
}

impl OneRDM {
    pub fn trace(&self) -> Complex64 {
        self.d.trace()
    }

    /// Natural occupation numbers, ascending.
    pub fn occupations(&self) -> Vec<f64> {
        let mut v: Vec<f64> = hermitian_eigenvalues(&self.d);
        v.sort_by(f64::total_cmp);
        v
    }
}

/// `Tr(K2 · D) / (N(N−1)) + E_nuc`.
pub fn energy_from_rdm(k: &ReducedHamiltonian, rdm: &TwoRDM, e_nuc: f64) -> Result<f64> {
    let n = rdm.num_orbitals();
    if k.k2.dim() != n {
        return Err(Error::LengthMismatch { expected: k.k2.dim(), actual: n });
    }
    if k.n_electrons != rdm.n_electrons {
        return Err(Error::InvalidArgument(format!(
            "reduced Hamiltonian built for N={}, RDM has N={}",
            k.n_electrons, rdm.n_electrons
        )));
    }
    let mut tr = Complex64::default();
    for p in 0..n {
        for q in 0..n {
            for s in 0..n {
                for t in 0..n {
                    tr += k.k2[(p, q, s, t)] * rdm.d[(s, t, p, q)];
                }
            }
        }
    }
    let ne = rdm.n_electrons as f64;
    Ok(tr.re / (ne * (ne - 1.0)) + e_nuc)
}

/// Energy functional straight from spin-orbital integrals (includes `E_nuc`).
pub fn energy_from_integrals(ints: &IntegralSet, rdm: &TwoRDM) -> Result<f64> {
    let k = reduced_hamiltonian(ints, rdm.n_electrons)?;
    energy_from_rdm(&k, rdm, ints.e_nuc)
}

/// Two-hole matrix `Q^{pq}_{st} = ⟨a_p a_q a†_t a†_s⟩` by anticommutation from `D` and `d`.
pub fn hole_matrix(rdm: &TwoRDM, one: &OneRDM) -> Tensor4<Complex64> {
    let n = rdm.num_orbitals();
    let d1 = &one.d;
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    Tensor4::from_fn(n, |p, q, s, t| {
        Complex64::new(delta(p, s) * delta(q, t) - delta(p, t) * delta(q, s), 0.0)
            - d1[(s, p)] * delta(q, t)
            + d1[(t, p)] * delta(q, s)
            + d1[(s, q)] * delta(p, t)
            - d1[(t, q)] * delta(p, s)
            + rdm.d[(s, t, p, q)]
    })
}

/// Particle-hole matrix `G^{pq}_{st} = ⟨a†_p a_q a†_t a_s⟩ = δ_qt d^p_s + D^{pt}_{qs}`.
pub fn particle_hole_matrix(rdm: &TwoRDM, one: &OneRDM) -> Tensor4<Complex64> {
    let n = rdm.num_orbitals();
    Tensor4::from_fn(n, |p, q, s, t| {
        let direct = if q == t { one.d[(p, s)] } else { Complex64::default() };
        direct + rdm.d[(p, t, q, s)]
    })
}

fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    SymmetricEigen::new(sym).eigenvalues.iter().copied().collect()
}

fn min_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    hermitian_eigenvalues(m).into_iter().fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Copy, Debug)]
pub struct NRepTolerances {
    pub trace: f64,
    pub symmetry: f64,
    pub eigenvalue: f64,
}

impl Default for NRepTolerances {
    fn default() -> Self {
        NRepTolerances { trace: 1e-8, symmetry: 1e-10, eigenvalue: 1e-8 }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct NRepReport {
    pub trace_error: f64,
    #[serde(rename = "herm_error")]
    pub hermiticity_error: f64,
    #[serde(rename = "antisym_error")]
    pub antisymmetry_error: f64,
    #[serde(rename = "min_eig_D")]
    pub min_eig_d: f64,
    #[serde(rename = "min_eig_Q")]
    pub min_eig_q: f64,
    #[serde(rename = "min_eig_G")]
    pub min_eig_g: f64,
    pub pass_trace: bool,
    pub pass_herm: bool,
    pub pass_antisym: bool,
    #[serde(rename = "pass_D")]
    pub pass_d: bool,
    #[serde(rename = "pass_Q")]
    pub pass_q: bool,
    #[serde(rename = "pass_G")]
    pub pass_g: bool,
}

impl NRepReport {
    pub fn all_pass(&self) -> bool {
        self.pass_trace && self.pass_herm && self.pass_antisym && self.pass_d && self.pass_q && self.pass_g
    }

    /// Flat `key = value` block.
    pub fn to_key_value(&self) -> String {
        let v = serde_json::to_value(self).expect("plain struct");
        let mut out = String::new();
        for (k, val) in v.as_object().expect("struct serializes to object") {
            out.push_str(&format!("{k} = {val}\n"));
        }
        out
    }
}

/// Ensemble (D, Q, G) N-representability report; no new measurement needed.
pub fn n_rep_check(rdm: &TwoRDM, tol: &NRepTolerances) -> NRepReport {
    let n = rdm.num_orbitals();
    let ne = rdm.n_electrons as f64;
    let d = &rdm.d;
    let mut herm: f64 = 0.0;
    let mut anti: f64 = 0.0;
    for p in 0..n {
        for q in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let v = d[(p, q, s, t)];
                    herm = herm.max((v - d[(s, t, p, q)].conj()).norm());
                    anti = anti.max((v + d[(q, p, s, t)]).norm()).max((v + d[(p, q, t, s)]).norm());
                }
            }
        }
    }
    let trace_error = (rdm.trace() - Complex64::new(ne * (ne - 1.0), 0.0)).norm();
    let one = contract_to_1rdm(rdm).unwrap_or(OneRDM { d: DMatrix::zeros(n, n) });
    let min_d = min_eigenvalue(&rdm.pair_matrix());
    let min_q = min_eigenvalue(&folded_matrix(&hole_matrix(rdm, &one)));
    let g = particle_hole_matrix(rdm, &one);
    let g_mat = DMatrix::from_fn(n * n, n * n, |i, j| g[(i / n, i % n, j / n, j % n)]);
    let min_g = min_eigenvalue(&g_mat);
    NRepReport {
        trace_error,
        hermiticity_error: herm,
        antisymmetry_error: anti,
        min_eig_d: min_d,
        min_eig_q: min_q,
        min_eig_g: min_g,
        pass_trace: trace_error <= tol.trace,
        pass_herm: herm <= tol.symmetry,
        pass_antisym: anti <= tol.symmetry,
        pass_d: min_d >= -tol.eigenvalue,
        pass_q: min_q >= -tol.eigenvalue,
        pass_g: min_g >= -tol.eigenvalue,
    }
}
