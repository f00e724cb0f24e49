use std::io::{self, BufRead, Write};

use num_complex::Complex;

use super::pauli::{PauliString, PauliSum};
use super::MAX_QUBITS;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense statevector over the qubit occupation basis.
///
/// Qubit `p` is bit `p` of the basis index (bit 0 least significant).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

fn check_qubits(r: usize) -> Result<()> {
    if r > MAX_QUBITS {
        return Err(Error::TooManyQubits(r));
    }
    Ok(())
}

impl<T: Real> StateVector<T> {
    /// All-zero vector (not normalized).
    pub fn zeros(num_qubits: usize) -> Result<Self> {
        check_qubits(num_qubits)?;
        Ok(StateVector { num_qubits, amplitudes: vec![Complex::default(); 1 << num_qubits] })
    }

    /// Computational basis state with the listed qubits set.
    pub fn basis(num_qubits: usize, occupied: &[usize]) -> Result<Self> {
        let mut s = Self::zeros(num_qubits)?;
        let mut index = 0usize;
        for &q in occupied {
            if q >= num_qubits {
                return Err(Error::IndexOutOfRange { index: q, num_qubits });
            }
            if index >> q & 1 == 1 {
                return Err(Error::DuplicateIndex(q));
            }
            index |= 1 << q;
        }
        s.amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(s)
    }

    pub fn from_amplitudes(num_qubits: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_qubits(num_qubits)?;
        if amplitudes.len() != 1 << num_qubits {
            return Err(Error::LengthMismatch { expected: 1 << num_qubits, actual: amplitudes.len() });
        }
        Ok(StateVector { num_qubits, amplitudes })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > T::zero() {
            for a in &mut self.amplitudes {
                *a /= n;
            }
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.num_qubits {
            return Err(Error::LengthMismatch { expected: self.num_qubits, actual: n });
        }
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector<T>) -> Result<Complex<T>> {
        self.check_len(other.num_qubits)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::default(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Returns `P|self⟩`.
    pub fn apply_pauli_string(&self, p: &PauliString<T>) -> Result<StateVector<T>> {
        self.check_len(p.num_qubits())?;
        let mut out = vec![Complex::default(); self.dim()];
        for (b, a) in self.amplitudes.iter().enumerate() {
            let (phase, target) = p.letters.act(b);
            out[target] = phase.apply(*a * p.coefficient);
        }
        Ok(StateVector { num_qubits: self.num_qubits, amplitudes: out })
    }

    /// Returns `H|self⟩`.
    pub fn apply_pauli_sum(&self, h: &PauliSum<T>) -> Result<StateVector<T>> {
        self.check_len(h.num_qubits())?;
        let mut out = vec![Complex::default(); self.dim()];
        for p in h.iter() {
            for (b, a) in self.amplitudes.iter().enumerate() {
                let (phase, target) = p.letters.act(b);
                out[target] += phase.apply(*a * p.coefficient);
            }
        }
        Ok(StateVector { num_qubits: self.num_qubits, amplitudes: out })
    }

    /// In place `exp(iθP)|self⟩ = cos θ |self⟩ + i sin θ P|self⟩` for a unit-coefficient string.
    pub fn apply_pauli_rotation(&mut self, p: &PauliString<T>, theta: T) -> Result<()> {
        self.check_len(p.num_qubits())?;
        let one = Complex::new(T::one(), T::zero());
        if (p.coefficient - one).norm() > T::merge_tolerance() {
            return Err(Error::NonUnitCoefficient(format!("{}", p.coefficient)));
        }
        let (cos, sin) = (theta.cos(), theta.sin());
        let isin = Complex::new(T::zero(), sin);
        let x = p.letters.x_mask() as usize;
        if x == 0 {
            // diagonal: every basis state is a ±1 eigenvector
            let plus = Complex::new(cos, sin);
            let minus = Complex::new(cos, -sin);
            for (b, a) in self.amplitudes.iter_mut().enumerate() {
                let (phase, _) = p.letters.act(b);
                *a *= if phase.power() == 0 { plus } else { minus };
            }
            return Ok(());
        }
        let high = 1usize << (usize::BITS - 1 - x.leading_zeros());
        for b in 0..self.dim() {
            if b & high != 0 {
                continue;
            }
            let (phase_b, partner) = p.letters.act(b);
            let (phase_p, _) = p.letters.act(partner);
            let (ab, ap) = (self.amplitudes[b], self.amplitudes[partner]);
            self.amplitudes[b] = ab * cos + isin * phase_p.apply(ap);
            self.amplitudes[partner] = ap * cos + isin * phase_b.apply(ab);
        }
        Ok(())
    }

    /// `⟨self|H|self⟩`.
    pub fn expectation(&self, h: &PauliSum<T>) -> Result<Complex<T>> {
        self.check_len(h.num_qubits())?;
        let mut total = Complex::default();
        for p in h.iter() {
            let mut acc = Complex::<T>::default();
            for (b, a) in self.amplitudes.iter().enumerate() {
                let (phase, target) = p.letters.act(b);
                acc += self.amplitudes[target].conj() * phase.apply(*a);
            }
            total += acc * p.coefficient;
        }
        Ok(total)
    }

    /// Expected number of set qubits.
    pub fn number_expectation(&self) -> T {
        self.amplitudes
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (b, a)| acc + a.norm_sqr() * T::lit(b.count_ones() as f64))
    }

    /// Writes one line `index real imag` per nonzero amplitude.
    pub fn write_amplitudes<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (b, a) in self.amplitudes.iter().enumerate() {
            if a.re != T::zero() || a.im != T::zero() {
                writeln!(w, "{} {:.17e} {:.17e}", b, a.re, a.im)?;
            }
        }
        Ok(())
    }

    /// Reads the format produced by [`StateVector::write_amplitudes`].
    pub fn read_amplitudes<R: BufRead>(num_qubits: usize, r: R) -> Result<Self> {
        let mut s = Self::zeros(num_qubits)?;
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse { line: lineno + 1, msg: msg.to_string() };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(bad("expected `index real imag`"));
            }
            let index: usize = fields[0].parse().map_err(|_| bad("bad index"))?;
            if index >= s.dim() {
                return Err(bad("index out of range"));
            }
            let re: f64 = fields[1].parse().map_err(|_| bad("bad real part"))?;
            let im: f64 = fields[2].parse().map_err(|_| bad("bad imaginary part"))?;
            s.amplitudes[index] = Complex::new(T::lit(re), T::lit(im));
        }
        Ok(s)
    }
}
