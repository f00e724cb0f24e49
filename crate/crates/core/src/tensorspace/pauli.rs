//! Pauli strings and merged Pauli sums.
//!
//! A string is stored as a pair of bit masks `(x, z)`. The letter on qubit `p`
//! is `I` for `(0, 0)`, `X` for `(1, 0)`, `Z` for `(0, 1)` and `Y` for `(1, 1)`,
//! with the convention `Y = iXZ`. Phases that arise from products are tracked
//! exactly as powers of `i`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Exact phase `i^k`, `k` in 0..4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Self {
        Phase((4 - self.0) % 4)
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        match self.0 {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        }
    }

    /// Multiplies `c` by this phase without rounding.
    #[inline]
    pub fn apply<T: Real>(self, c: Complex<T>) -> Complex<T> {
        match self.0 {
            0 => c,
            1 => Complex::new(-c.im, c.re),
            2 => Complex::new(-c.re, -c.im),
            _ => Complex::new(c.im, -c.re),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Coefficient-free tensor product of Pauli letters on `num_qubits` qubits.
///
/// Ordering is lexicographic over the letter sequence read from qubit 0
/// upward, with `I < X < Y < Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliLetters {
    num_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliLetters {
    pub fn identity(num_qubits: usize) -> Self {
        PauliLetters { num_qubits, x: 0, z: 0 }
    }

    pub fn from_masks(num_qubits: usize, x: u64, z: u64) -> Result<Self> {
        let valid = if num_qubits >= 64 { u64::MAX } else { (1u64 << num_qubits) - 1 };
        if (x | z) & !valid != 0 {
            let bad = 63 - ((x | z) & !valid).leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index: bad, num_qubits });
        }
        Ok(PauliLetters { num_qubits, x, z })
    }

    /// Builds letters from `(qubit, letter)` pairs; unspecified qubits are `I`.
    pub fn from_sparse(num_qubits: usize, letters: &[(usize, Pauli)]) -> Result<Self> {
        let mut out = PauliLetters::identity(num_qubits);
        for &(q, p) in letters {
            if q >= num_qubits {
                return Err(Error::IndexOutOfRange { index: q, num_qubits });
            }
            out.set(q, p);
        }
        Ok(out)
    }

    fn set(&mut self, q: usize, p: Pauli) {
        let (xb, zb) = p.bits();
        let m = 1u64 << q;
        self.x = if xb { self.x | m } else { self.x & !m };
        self.z = if zb { self.z | m } else { self.z & !m };
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.num_qubits).map(|q| self.get(q)).collect()
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Product `self · rhs = phase · letters`.
    pub fn mul(&self, rhs: &PauliLetters) -> (Phase, PauliLetters) {
        debug_assert_eq!(self.num_qubits, rhs.num_qubits);
        let out = PauliLetters { num_qubits: self.num_qubits, x: self.x ^ rhs.x, z: self.z ^ rhs.z };
        // letters = i^{|x&z|} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{|z1&x2|}
        let k = self.y_count() + rhs.y_count() + 2 * (self.z & rhs.x).count_ones() + 4
            - out.y_count() % 4;
        (Phase::from_power(k), out)
    }

    pub fn commutes_with(&self, rhs: &PauliLetters) -> bool {
        ((self.x & rhs.z).count_ones() + (self.z & rhs.x).count_ones()).is_multiple_of(2)
    }

    /// Action on a basis state: `P|b⟩ = phase · |b ⊕ x⟩`.
    #[inline]
    pub fn act(&self, b: usize) -> (Phase, usize) {
        let b64 = b as u64;
        let k = self.y_count() + 2 * (b64 & self.z).count_ones();
        (Phase::from_power(k), (b64 ^ self.x) as usize)
    }
}

impl Ord for PauliLetters {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num_qubits.cmp(&other.num_qubits).then_with(|| {
            let diff = (self.x ^ other.x) | (self.z ^ other.z);
            if diff == 0 {
                return Ordering::Equal;
            }
            let q = diff.trailing_zeros() as usize;
            self.get(q).cmp(&other.get(q))
        })
    }
}

impl PartialOrd for PauliLetters {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliLetters {
    /// Sparse form, e.g. `X0 Z1 Y3`; identity prints as `I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for q in 0..self.num_qubits {
            let p = self.get(q);
            if p != Pauli::I {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}{}", p.as_char(), q)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Phase-weighted Pauli string.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliString<T: Real> {
    pub coefficient: Complex<T>,
    pub letters: PauliLetters,
}

impl<T: Real> PauliString<T> {
    pub fn new(coefficient: Complex<T>, letters: PauliLetters) -> Self {
        PauliString { coefficient, letters }
    }

    /// Unit-coefficient string from a dense letter word such as `"XIZY"` (qubit 0 first).
    pub fn parse(word: &str) -> Result<Self> {
        let mut letters = PauliLetters::identity(word.chars().count());
        for (q, c) in word.chars().enumerate() {
            let p = Pauli::from_char(c)
                .ok_or_else(|| Error::InvalidArgument(format!("bad Pauli letter {c:?}")))?;
            letters.set(q, p);
        }
        Ok(PauliString { coefficient: Complex::new(T::one(), T::zero()), letters })
    }

    pub fn single(num_qubits: usize, qubit: usize, p: Pauli) -> Result<Self> {
        Ok(PauliString {
            coefficient: Complex::new(T::one(), T::zero()),
            letters: PauliLetters::from_sparse(num_qubits, &[(qubit, p)])?,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.letters.num_qubits()
    }

    pub fn weight(&self) -> usize {
        self.letters.weight()
    }

    pub fn scaled(mut self, c: Complex<T>) -> Self {
        self.coefficient *= c;
        self
    }

    pub fn mul(&self, rhs: &PauliString<T>) -> PauliString<T> {
        let (phase, letters) = self.letters.mul(&rhs.letters);
        PauliString { coefficient: phase.apply(self.coefficient * rhs.coefficient), letters }
    }
}

/// Sum of Pauli strings, merged so that each letter word appears once.
///
/// Iteration order is the lexicographic letter order of [`PauliLetters`].
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum<T: Real> {
    num_qubits: usize,
    terms: BTreeMap<PauliLetters, Complex<T>>,
}

impl<T: Real> PauliSum<T> {
    pub fn zero(num_qubits: usize) -> Self {
        PauliSum { num_qubits, terms: BTreeMap::new() }
    }

    pub fn identity(num_qubits: usize, c: Complex<T>) -> Self {
        let mut s = Self::zero(num_qubits);
        s.push(PauliString::new(c, PauliLetters::identity(num_qubits)));
        s.prune();
        s
    }

    pub fn from_strings<I: IntoIterator<Item = PauliString<T>>>(num_qubits: usize, it: I) -> Self {
        let mut s = Self::zero(num_qubits);
        for p in it {
            s.push(p);
        }
        s.prune();
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = PauliString<T>> + '_ {
        self.terms.iter().map(|(l, c)| PauliString::new(*c, *l))
    }

    pub fn coefficient(&self, letters: &PauliLetters) -> Complex<T> {
        self.terms.get(letters).copied().unwrap_or_default()
    }

    /// Adds a string without pruning.
    fn push(&mut self, p: PauliString<T>) {
        assert_eq!(p.num_qubits(), self.num_qubits, "Pauli string length mismatch");
        *self.terms.entry(p.letters).or_default() += p.coefficient;
    }

    /// Drops coefficients below the merge tolerance.
    fn prune(&mut self) {
        let tol = T::merge_tolerance();
        self.terms.retain(|_, c| c.norm() >= tol);
    }

    pub fn add_string(&mut self, p: PauliString<T>) {
        self.push(p);
        self.prune();
    }

    pub fn add(&self, rhs: &PauliSum<T>) -> PauliSum<T> {
        self.axpy(Complex::new(T::one(), T::zero()), rhs)
    }

    pub fn sub(&self, rhs: &PauliSum<T>) -> PauliSum<T> {
        self.axpy(Complex::new(-T::one(), T::zero()), rhs)
    }

    /// `self + a · rhs`.
    pub fn axpy(&self, a: Complex<T>, rhs: &PauliSum<T>) -> PauliSum<T> {
        let mut out = self.clone();
        out.add_scaled_in_place(a, rhs);
        out
    }

    pub fn add_scaled_in_place(&mut self, a: Complex<T>, rhs: &PauliSum<T>) {
        assert_eq!(self.num_qubits, rhs.num_qubits, "PauliSum length mismatch");
        for p in rhs.iter() {
            self.push(p.scaled(a));
        }
        self.prune();
    }

    pub fn scale(&self, a: Complex<T>) -> PauliSum<T> {
        let mut out = PauliSum::zero(self.num_qubits);
        for p in self.iter() {
            out.push(p.scaled(a));
        }
        out.prune();
        out
    }

    pub fn mul(&self, rhs: &PauliSum<T>) -> PauliSum<T> {
        assert_eq!(self.num_qubits, rhs.num_qubits, "PauliSum length mismatch");
        let mut out = PauliSum::zero(self.num_qubits);
        for a in self.iter() {
            for b in rhs.iter() {
                out.push(a.mul(&b));
            }
        }
        out.prune();
        out
    }

    pub fn commutator(&self, rhs: &PauliSum<T>) -> PauliSum<T> {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn anticommutator(&self, rhs: &PauliSum<T>) -> PauliSum<T> {
        self.mul(rhs).add(&rhs.mul(self))
    }

    /// Hermitian conjugate; Pauli letters are Hermitian so only coefficients conjugate.
    pub fn dagger(&self) -> PauliSum<T> {
        PauliSum {
            num_qubits: self.num_qubits,
            terms: self.terms.iter().map(|(l, c)| (*l, c.conj())).collect(),
        }
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    pub fn is_anti_hermitian(&self, tol: T) -> bool {
        self.terms.values().all(|c| c.re.abs() <= tol)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(PauliLetters::weight).max().unwrap_or(0)
    }

    /// Largest coefficient difference against `rhs`, over the union of terms.
    pub fn max_abs_diff(&self, rhs: &PauliSum<T>) -> T {
        let mut worst = T::zero();
        for (l, c) in &self.terms {
            worst = worst.max((*c - rhs.coefficient(l)).norm());
        }
        for (l, c) in &rhs.terms {
            if !self.terms.contains_key(l) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }
}

impl<T: Real> fmt::Display for PauliSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (l, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i) {}", c.re, c.im, l)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn single_qubit_products() {
        let x = PauliLetters::from_sparse(1, &[(0, Pauli::X)]).unwrap();
        let y = PauliLetters::from_sparse(1, &[(0, Pauli::Y)]).unwrap();
        let z = PauliLetters::from_sparse(1, &[(0, Pauli::Z)]).unwrap();
        assert_eq!(x.mul(&y), (Phase::I, z));
        assert_eq!(y.mul(&z), (Phase::I, x));
        assert_eq!(z.mul(&x), (Phase::I, y));
        assert_eq!(y.mul(&x), (Phase::MINUS_I, z));
        assert_eq!(x.mul(&x), (Phase::ONE, PauliLetters::identity(1)));
        assert_eq!(y.mul(&y), (Phase::ONE, PauliLetters::identity(1)));
    }

    #[test]
    fn y_action_matches_convention() {
        let y = PauliLetters::from_sparse(1, &[(0, Pauli::Y)]).unwrap();
        assert_eq!(y.act(0), (Phase::I, 1));
        assert_eq!(y.act(1), (Phase::MINUS_I, 0));
    }

    #[test]
    fn lexicographic_order() {
        let a = PauliString::<f64>::parse("XZ").unwrap().letters;
        let b = PauliString::<f64>::parse("YI").unwrap().letters;
        let i = PauliString::<f64>::parse("IZ").unwrap().letters;
        assert!(i < a && a < b);
    }

    #[test]
    fn merge_drops_cancelled_terms() {
        let mut s = PauliSum::<f64>::zero(2);
        let p = PauliString::parse("XY").unwrap();
        s.add_string(p.scaled(c(0.5, 0.0)));
        s.add_string(p.scaled(c(-0.5, 0.0)));
        assert!(s.is_empty());
    }

    #[test]
    fn weight_and_display() {
        let p = PauliString::<f64>::parse("ZIYX").unwrap();
        assert_eq!(p.weight(), 3);
        assert_eq!(p.letters.to_string(), "Z0 Y2 X3");
    }

    #[test]
    fn out_of_range_letter_rejected() {
        assert!(PauliLetters::from_sparse(2, &[(2, Pauli::X)]).is_err());
        assert!(PauliLetters::from_masks(2, 0b100, 0).is_err());
    }
}
