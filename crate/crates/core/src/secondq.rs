//! Second-quantized ladder operators and their qubit images.
//!
//! Fermionic operators are encoded with Jordan–Wigner strings on all lower
//! qubits, `a†_p = ½(X_p − iY_p) Z_{p−1}…Z_0`. Qubit-particle (hard-core)
//! operators use the same local factor with no string, so they anticommute
//! on-site and commute between sites.

use std::fmt;

use num_complex::Complex;

use crate::chem::{IntegralSet, OrbitalBasis};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{folded_pairs, Tensor4};
use crate::tensorspace::{PauliLetters, PauliString, PauliSum, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistics {
    Fermionic,
    QubitParticle,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Fermionic => "fermionic",
            Statistics::QubitParticle => "qubit",
        })
    }
}

/// One creation (`dagger`) or annihilation operator on an orbital.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ladder {
    pub orbital: usize,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(orbital: usize) -> Self {
        Ladder { orbital, dagger: true }
    }

    pub fn annihilate(orbital: usize) -> Self {
        Ladder { orbital, dagger: false }
    }
}

/// Coefficient times an ordered product of ladder operators (leftmost acts last).
#[derive(Clone, Debug, PartialEq)]
pub struct LadderTerm<T: Real> {
    pub coefficient: Complex<T>,
    pub factors: Vec<Ladder>,
    pub statistics: Statistics,
}

impl<T: Real> LadderTerm<T> {
    pub fn new(coefficient: Complex<T>, factors: Vec<Ladder>, statistics: Statistics) -> Self {
        LadderTerm { coefficient, factors, statistics }
    }

    /// `c · x†_p x†_q x_t x_s`.
    pub fn two_body(
        coefficient: Complex<T>,
        (p, q, s, t): (usize, usize, usize, usize),
        statistics: Statistics,
    ) -> Self {
        LadderTerm::new(
            coefficient,
            vec![Ladder::create(p), Ladder::create(q), Ladder::annihilate(t), Ladder::annihilate(s)],
            statistics,
        )
    }

    /// `c · x†_p x_q`.
    pub fn one_body(coefficient: Complex<T>, p: usize, q: usize, statistics: Statistics) -> Self {
        LadderTerm::new(coefficient, vec![Ladder::create(p), Ladder::annihilate(q)], statistics)
    }

    pub fn check_range(&self, num_qubits: usize) -> Result<()> {
        match self.factors.iter().find(|f| f.orbital >= num_qubits) {
            Some(f) => Err(Error::IndexOutOfRange { index: f.orbital, num_qubits }),
            None => Ok(()),
        }
    }

    pub fn is_normal_ordered(&self) -> bool {
        let split = self.factors.iter().position(|f| !f.dagger).unwrap_or(self.factors.len());
        let (cre, ann) = self.factors.split_at(split);
        ann.iter().all(|f| !f.dagger)
            && cre.windows(2).all(|w| w[0].orbital < w[1].orbital)
            && ann.windows(2).all(|w| w[0].orbital < w[1].orbital)
    }

    /// Rewrites the term as a sum of normal-ordered terms: creators left of
    /// annihilators, strictly ascending orbitals within each group. Terms that
    /// vanish by exclusion are dropped.
    pub fn normal_order(&self) -> Vec<LadderTerm<T>> {
        let mut done = Vec::new();
        let mut work = vec![self.clone()];
        while let Some(term) = work.pop() {
            if term.coefficient.norm() == T::zero() {
                continue;
            }
            let swap = term.factors.windows(2).position(|w| {
                let (a, b) = (w[0], w[1]);
                (!a.dagger && b.dagger)
                    || (a.dagger == b.dagger && a.orbital >= b.orbital)
            });
            let Some(i) = swap else {
                done.push(term);
                continue;
            };
            let (a, b) = (term.factors[i], term.factors[i + 1]);
            if a.dagger == b.dagger && a.orbital == b.orbital {
                // x_p x_p = x†_p x†_p = 0 for both statistics
                continue;
            }
            let sign = if a.orbital == b.orbital || self.statistics == Statistics::Fermionic {
                -T::one()
            } else {
                T::one()
            };
            let mut swapped = term.clone();
            swapped.factors.swap(i, i + 1);
            swapped.coefficient *= sign;
            work.push(swapped);
            if a.orbital == b.orbital {
                // x_p x†_p = 1 − x†_p x_p
                let mut contracted = term.clone();
                contracted.factors.drain(i..i + 2);
                work.push(contracted);
            }
        }
        done
    }
}

/// Qubit image of a single ladder operator.
fn ladder_image<T: Real>(num_qubits: usize, op: Ladder, statistics: Statistics) -> PauliSum<T> {
    let p = op.orbital;
    let z = match statistics {
        Statistics::Fermionic => (1u64 << p) - 1,
        Statistics::QubitParticle => 0,
    };
    let bit = 1u64 << p;
    let half = T::lit(0.5);
    let x_term = PauliLetters::from_masks(num_qubits, bit, z).expect("orbital in range");
    // Y_p carries z bit p; product with the string (which excludes p) is exact
    let y_term = PauliLetters::from_masks(num_qubits, bit, z | bit).expect("orbital in range");
    let y_coeff = if op.dagger { Complex::new(T::zero(), -half) } else { Complex::new(T::zero(), half) };
    PauliSum::from_strings(
        num_qubits,
        [
            PauliString::new(Complex::new(half, T::zero()), x_term),
            PauliString::new(y_coeff, y_term),
        ],
    )
}

fn encode_factors<T: Real>(
    num_qubits: usize,
    coefficient: Complex<T>,
    factors: &[Ladder],
    statistics: Statistics,
) -> PauliSum<T> {
    let mut acc = PauliSum::identity(num_qubits, coefficient);
    for &f in factors {
        acc = acc.mul(&ladder_image(num_qubits, f, statistics));
    }
    acc
}

/// Jordan–Wigner image of a fermionic ladder term.
pub fn jordan_wigner<T: Real>(term: &LadderTerm<T>, num_qubits: usize) -> Result<PauliSum<T>> {
    if term.statistics != Statistics::Fermionic {
        return Err(Error::WrongStatistics("jordan_wigner requires fermionic statistics"));
    }
    term.check_range(num_qubits)?;
    Ok(encode_factors(num_qubits, term.coefficient, &term.factors, Statistics::Fermionic))
}

/// Qubit image of a qubit-particle ladder term (no parity strings).
pub fn qubit_particle_encode<T: Real>(term: &LadderTerm<T>, num_qubits: usize) -> Result<PauliSum<T>> {
    if term.statistics != Statistics::QubitParticle {
        return Err(Error::WrongStatistics("qubit_particle_encode requires qubit-particle statistics"));
    }
    term.check_range(num_qubits)?;
    Ok(encode_factors(num_qubits, term.coefficient, &term.factors, Statistics::QubitParticle))
}

/// Image of a term under the encoding matching its own statistics.
pub fn encode<T: Real>(term: &LadderTerm<T>, num_qubits: usize) -> Result<PauliSum<T>> {
    match term.statistics {
        Statistics::Fermionic => jordan_wigner(term, num_qubits),
        Statistics::QubitParticle => qubit_particle_encode(term, num_qubits),
    }
}

/// Applies one ladder operator to a basis index; `None` when the result vanishes.
///
/// Fermionic signs are the Jordan–Wigner parity of occupied lower qubits.
#[inline]
pub fn ladder_on_basis(b: usize, op: Ladder, statistics: Statistics) -> Option<(bool, usize)> {
    let bit = 1usize << op.orbital;
    let occupied = b & bit != 0;
    if occupied == op.dagger {
        return None;
    }
    let negative = statistics == Statistics::Fermionic && (b & (bit - 1)).count_ones() % 2 == 1;
    Some((negative, b ^ bit))
}

/// Applies `factors` (rightmost first) directly to a statevector.
pub fn apply_ladders<T: Real>(
    state: &StateVector<T>,
    factors: &[Ladder],
    statistics: Statistics,
) -> Result<StateVector<T>> {
    let r = state.num_qubits();
    if let Some(f) = factors.iter().find(|f| f.orbital >= r) {
        return Err(Error::IndexOutOfRange { index: f.orbital, num_qubits: r });
    }
    let mut out = StateVector::zeros(r)?;
    let dst = out.amplitudes_mut();
    'basis: for (b, a) in state.amplitudes().iter().enumerate() {
        if a.re == T::zero() && a.im == T::zero() {
            continue;
        }
        let mut idx = b;
        let mut negative = false;
        for &f in factors.iter().rev() {
            match ladder_on_basis(idx, f, statistics) {
                Some((neg, next)) => {
                    negative ^= neg;
                    idx = next;
                }
                None => continue 'basis,
            }
        }
        dst[idx] = if negative { dst[idx] - *a } else { dst[idx] + *a };
    }
    Ok(out)
}

/// Vectors `x_t x_s |ψ⟩` for every folded pair `s < t`, in [`folded_pairs`] order.
///
/// With these, `⟨φ| x†_p x†_q x_t x_s |ψ⟩ = ⟨v_pq(φ) | v_st(ψ)⟩`.
pub fn pair_annihilations<T: Real>(
    state: &StateVector<T>,
    statistics: Statistics,
) -> Vec<StateVector<T>> {
    folded_pairs(state.num_qubits())
        .into_iter()
        .map(|(s, t)| {
            apply_ladders(state, &[Ladder::annihilate(t), Ladder::annihilate(s)], statistics)
                .expect("pair indices in range")
        })
        .collect()
}

/// Coefficients `A^{pq}_{st}` of a two-body anti-Hermitian generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorCoefficients<T: Real> {
    pub a: Tensor4<Complex<T>>,
}

impl<T: Real> GeneratorCoefficients<T> {
    pub fn zeros(num_orbitals: usize) -> Self {
        GeneratorCoefficients { a: Tensor4::zeros(num_orbitals) }
    }

    pub fn num_orbitals(&self) -> usize {
        self.a.dim()
    }

    /// Sets a folded element and every partner fixed by antisymmetry and
    /// anti-Hermiticity. Requires `p ≠ q`, `s ≠ t`, `(p,q) ≠ (s,t)` as sets.
    pub fn set_folded(&mut self, (p, q, s, t): (usize, usize, usize, usize), value: Complex<T>) {
        let a = &mut self.a;
        a[(p, q, s, t)] = value;
        a[(q, p, s, t)] = -value;
        a[(p, q, t, s)] = -value;
        a[(q, p, t, s)] = value;
        let h = -value.conj();
        a[(s, t, p, q)] = h;
        a[(t, s, p, q)] = -h;
        a[(s, t, q, p)] = -h;
        a[(t, s, q, p)] = h;
    }

    /// Largest violation of antisymmetry or anti-Hermiticity.
    pub fn invariant_error(&self) -> T {
        let n = self.num_orbitals();
        let a = &self.a;
        let mut worst = T::zero();
        for p in 0..n {
            for q in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        let v = a[(p, q, s, t)];
                        worst = worst
                            .max((v + a[(q, p, s, t)]).norm())
                            .max((v + a[(p, q, t, s)]).norm())
                            .max((v + a[(s, t, p, q)].conj()).norm());
                    }
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> T {
        self.a.as_slice().iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.a.as_slice().iter().fold(T::zero(), |m, v| m + v.norm_sqr()).sqrt()
    }

    /// Zeroes every element with magnitude below `threshold`.
    pub fn truncated(&self, threshold: T) -> Self {
        GeneratorCoefficients {
            a: self.a.map(|v| if v.norm() < threshold { Complex::default() } else { v }),
        }
    }

    /// Folded index quadruples `p<q, s<t, (p,q) ≠ (s,t)` with a nonzero coefficient.
    pub fn folded_support(&self) -> Vec<(usize, usize, usize, usize)> {
        let pairs = folded_pairs(self.num_orbitals());
        let mut out = Vec::new();
        for &(p, q) in &pairs {
            for &(s, t) in &pairs {
                if (p, q) != (s, t) && self.a[(p, q, s, t)].norm() > T::zero() {
                    out.push((p, q, s, t));
                }
            }
        }
        out
    }
}

/// Builds `Â = 4 Σ_{p<q, s<t, (pq)≠(st)} A^{pq}_{st} x†_p x†_q x_t x_s` in the chosen
/// encoding. For fermions this equals the unrestricted sum over all index
/// quadruples; for qubit particles only the folded form is meaningful since
/// different-site creators commute.
pub fn build_generator<T: Real>(
    coeffs: &GeneratorCoefficients<T>,
    statistics: Statistics,
) -> Result<PauliSum<T>> {
    let n = coeffs.num_orbitals();
    let scale = coeffs.max_abs().max(T::one());
    let err = coeffs.invariant_error();
    if err > T::lit(1e-10) * scale {
        return Err(Error::InvalidGenerator(format!("symmetry violation {err}")));
    }
    let creators = pair_images::<T>(n, true, statistics);
    let annihilators = pair_images::<T>(n, false, statistics);
    let four = T::lit(4.0);
    let mut out = PauliSum::zero(n);
    for (p, q, s, t) in coeffs.folded_support() {
        let c = coeffs.a[(p, q, s, t)] * four;
        let term = creators[p * n + q].mul(&annihilators[s * n + t]);
        out.add_scaled_in_place(c, &term);
    }
    Ok(out)
}

/// `x†_p x†_q` (dagger) or `x_t x_s` (indexed `[s*n+t]`) images for all pairs.
fn pair_images<T: Real>(n: usize, dagger: bool, statistics: Statistics) -> Vec<PauliSum<T>> {
    let one = Complex::new(T::one(), T::zero());
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let factors = if dagger {
                [Ladder::create(i), Ladder::create(j)]
            } else {
                [Ladder::annihilate(j), Ladder::annihilate(i)]
            };
            out.push(encode_factors(n, one, &factors, statistics));
        }
    }
    out
}

/// Jordan–Wigner image of `Σ h_pq a†_p a_q + ½ Σ ⟨pq|st⟩ a†_p a†_q a_t a_s`.
///
/// The nuclear repulsion constant is not included.
pub fn hamiltonian_pauli(ints: &IntegralSet) -> Result<PauliSum<f64>> {
    if ints.basis != OrbitalBasis::SpinOrbital {
        return Err(Error::InvalidArgument("hamiltonian_pauli needs spin-orbital integrals".into()));
    }
    ints.check_symmetry(1e-10)?;
    let n = ints.n_orb;
    let stats = Statistics::Fermionic;
    let mut out = PauliSum::zero(n);
    let one = Complex::new(1.0, 0.0);
    for p in 0..n {
        for q in 0..n {
            let h = ints.h[(p, q)];
            if h != 0.0 {
                let img = encode_factors(n, one, &[Ladder::create(p), Ladder::annihilate(q)], stats);
                out.add_scaled_in_place(Complex::new(h, 0.0), &img);
            }
        }
    }
    let creators = pair_images::<f64>(n, true, stats);
    let annihilators = pair_images::<f64>(n, false, stats);
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            let mut pair = PauliSum::zero(n);
            for s in 0..n {
                for t in 0..n {
                    let g = ints.g[(p, q, s, t)];
                    if s != t && g != 0.0 {
                        pair.add_scaled_in_place(Complex::new(0.5 * g, 0.0), &annihilators[s * n + t]);
                    }
                }
            }
            if !pair.is_empty() {
                out.add_scaled_in_place(one, &creators[p * n + q].mul(&pair));
            }
        }
    }
    Ok(out)
}

/// Total number operator `Σ_p x†_p x_p` (identical in both encodings).
pub fn number_operator<T: Real>(num_qubits: usize) -> PauliSum<T> {
    let one = Complex::new(T::one(), T::zero());
    let mut out = PauliSum::zero(num_qubits);
    for p in 0..num_qubits {
        let t = LadderTerm::one_body(one, p, p, Statistics::Fermionic);
        out.add_scaled_in_place(one, &jordan_wigner(&t, num_qubits).expect("in range"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorspace::Pauli;

    type C = Complex<f64>;
    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn sparse(n: usize, letters: &[(usize, Pauli)], coeff: C) -> PauliString<f64> {
        PauliString::new(coeff, PauliLetters::from_sparse(n, letters).unwrap())
    }

    #[test]
    fn creation_at_zero_has_no_string() {
        let t = LadderTerm::new(c(1.0, 0.0), vec![Ladder::create(0)], Statistics::Fermionic);
        let img = jordan_wigner(&t, 1).unwrap();
        let expect = PauliSum::from_strings(
            1,
            [sparse(1, &[(0, Pauli::X)], c(0.5, 0.0)), sparse(1, &[(0, Pauli::Y)], c(0.0, -0.5))],
        );
        assert_eq!(img, expect);
    }

    #[test]
    fn creation_at_two_carries_lower_string() {
        let t = LadderTerm::new(c(1.0, 0.0), vec![Ladder::create(2)], Statistics::Fermionic);
        let img = jordan_wigner(&t, 4).unwrap();
        let z = [(0, Pauli::Z), (1, Pauli::Z)];
        let expect = PauliSum::from_strings(
            4,
            [
                sparse(4, &[z[0], z[1], (2, Pauli::X)], c(0.5, 0.0)),
                sparse(4, &[z[0], z[1], (2, Pauli::Y)], c(0.0, -0.5)),
            ],
        );
        assert_eq!(img, expect);

        let q = LadderTerm::new(c(1.0, 0.0), vec![Ladder::create(2)], Statistics::QubitParticle);
        let img = qubit_particle_encode(&q, 4).unwrap();
        let expect = PauliSum::from_strings(
            4,
            [sparse(4, &[(2, Pauli::X)], c(0.5, 0.0)), sparse(4, &[(2, Pauli::Y)], c(0.0, -0.5))],
        );
        assert_eq!(img, expect);
    }

    #[test]
    fn number_operator_image() {
        for stats in [Statistics::Fermionic, Statistics::QubitParticle] {
            let t = LadderTerm::one_body(c(1.0, 0.0), 0, 0, stats);
            let img = encode(&t, 1).unwrap();
            let expect = PauliSum::from_strings(
                1,
                [sparse(1, &[], c(0.5, 0.0)), sparse(1, &[(0, Pauli::Z)], c(-0.5, 0.0))],
            );
            assert_eq!(img, expect);
        }
    }

    #[test]
    fn hopping_pair_is_weight_two_without_strings() {
        let one = c(1.0, 0.0);
        let a = qubit_particle_encode(&LadderTerm::one_body(one, 3, 1, Statistics::QubitParticle), 4)
            .unwrap();
        let b = qubit_particle_encode(&LadderTerm::one_body(one, 1, 3, Statistics::QubitParticle), 4)
            .unwrap();
        let diff = a.sub(&b);
        let expect = PauliSum::from_strings(
            4,
            [
                sparse(4, &[(1, Pauli::Y), (3, Pauli::X)], c(0.0, 0.5)),
                sparse(4, &[(1, Pauli::X), (3, Pauli::Y)], c(0.0, -0.5)),
            ],
        );
        assert_eq!(diff, expect);
        assert!(diff.iter().all(|p| p.weight() == 2));
    }

    #[test]
    fn wrong_statistics_rejected() {
        let f = LadderTerm::<f64>::one_body(c(1.0, 0.0), 0, 0, Statistics::Fermionic);
        let q = LadderTerm::<f64>::one_body(c(1.0, 0.0), 0, 0, Statistics::QubitParticle);
        assert!(matches!(qubit_particle_encode(&f, 2), Err(Error::WrongStatistics(_))));
        assert!(matches!(jordan_wigner(&q, 2), Err(Error::WrongStatistics(_))));
        assert!(matches!(jordan_wigner(&f, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn zero_generator_is_empty() {
        let g = GeneratorCoefficients::<f64>::zeros(4);
        assert!(build_generator(&g, Statistics::Fermionic).unwrap().is_empty());
        assert!(build_generator(&g, Statistics::QubitParticle).unwrap().is_empty());
    }

    #[test]
    fn invalid_generator_rejected() {
        let mut g = GeneratorCoefficients::<f64>::zeros(4);
        g.a[(0, 1, 2, 3)] = c(1.0, 0.0);
        assert!(matches!(build_generator(&g, Statistics::Fermionic), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn single_pair_generators() {
        let mut g = GeneratorCoefficients::<f64>::zeros(4);
        g.set_folded((0, 1, 2, 3), c(0.7, 0.0));
        for stats in [Statistics::Fermionic, Statistics::QubitParticle] {
            let img = build_generator(&g, stats).unwrap();
            assert_eq!(img.len(), 8, "{stats}");
            assert!(img.iter().all(|p| p.weight() == 4));
            assert!(img.is_anti_hermitian(1e-14));
            // 4·0.7 split over eight strings of magnitude 4·0.7/8
            assert!(img.iter().all(|p| (p.coefficient.norm() - 0.35).abs() < 1e-14));
        }
    }

    #[test]
    fn normal_order_simple_cases() {
        let one = c(1.0, 0.0);
        let t = LadderTerm::<f64>::new(one, vec![Ladder::annihilate(0), Ladder::create(0)], Statistics::Fermionic);
        let terms = t.normal_order();
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(LadderTerm::is_normal_ordered));

        let t = LadderTerm::<f64>::new(one, vec![Ladder::create(2), Ladder::create(1)], Statistics::Fermionic);
        let terms = t.normal_order();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].coefficient, c(-1.0, 0.0));
        let t = LadderTerm::<f64>::new(one, vec![Ladder::create(2), Ladder::create(1)], Statistics::QubitParticle);
        assert_eq!(t.normal_order()[0].coefficient, one);

        let t = LadderTerm::<f64>::new(one, vec![Ladder::create(1), Ladder::create(1)], Statistics::Fermionic);
        assert!(t.normal_order().is_empty());
    }

    #[test]
    fn basis_action_signs() {
        // a_1 on |11> picks up the parity of qubit 0
        assert_eq!(ladder_on_basis(0b11, Ladder::annihilate(1), Statistics::Fermionic), Some((true, 0b01)));
        assert_eq!(ladder_on_basis(0b11, Ladder::annihilate(1), Statistics::QubitParticle), Some((false, 0b01)));
        assert_eq!(ladder_on_basis(0b10, Ladder::create(1), Statistics::Fermionic), None);
    }
}
