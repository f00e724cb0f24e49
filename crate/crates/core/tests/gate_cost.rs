//! CNOT counts of single double-excitation generators, checked by enumeration.

use num_complex::Complex64;
use qparticle::gatecost::{generator_cost, CostModel};
use qparticle::secondq::{build_generator, GeneratorCoefficients, Statistics};
use qparticle::tensorspace::PauliSum;

fn excitation(r: usize, (p, q, s, t): (usize, usize, usize, usize), stats: Statistics) -> PauliSum<f64> {
    let mut g = GeneratorCoefficients::zeros(r);
    g.set_folded((p, q, s, t), Complex64::new(0.3, 0.0));
    build_generator(&g, stats).unwrap()
}

/// Support of the Jordan–Wigner image: the four indices plus the parity
/// strings strictly inside each of the two sorted pairs.
fn oracle_weight(idx: [usize; 4]) -> usize {
    let mut s = idx;
    s.sort();
    4 + (s[1] - s[0] - 1) + (s[3] - s[2] - 1)
}

/// Every double excitation `{p<q} → {s<t}` with disjoint pairs on `r` orbitals.
fn all_excitations(r: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 0..r {
        for q in p + 1..r {
            for s in 0..r {
                for t in s + 1..r {
                    let disjoint = ![p, q].contains(&s) && ![p, q].contains(&t);
                    if disjoint && (p, q) < (s, t) {
                        out.push((p, q, s, t));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn eight_rotations_per_excitation_with_predicted_weights() {
    let r = 8;
    let model = CostModel;
    for e in all_excitations(r) {
        let (p, q, s, t) = e;
        let f = excitation(r, e, Statistics::Fermionic);
        let b = excitation(r, e, Statistics::QubitParticle);
        assert_eq!(f.len(), 8, "{e:?}");
        assert_eq!(b.len(), 8, "{e:?}");
        let w = oracle_weight([p, q, s, t]);
        assert!(f.iter().all(|x| x.weight() == w), "{e:?}");
        assert!(b.iter().all(|x| x.weight() == 4), "{e:?}");
        assert_eq!(generator_cost(&f), 8 * model.rotation_cost(w));
        assert_eq!(generator_cost(&b), 48);
    }
}

#[test]
fn spread_excitation_costs() {
    // indices 0,2,4,6: parity strings on qubits 1 and 5 give weight 6
    let f = excitation(8, (0, 2, 4, 6), Statistics::Fermionic);
    let q = excitation(8, (0, 2, 4, 6), Statistics::QubitParticle);
    assert_eq!(f.max_weight(), 6);
    assert_eq!(generator_cost(&f), 80);
    assert_eq!(generator_cost(&q), 48);
}

#[test]
fn span_sweep_grows_linearly_for_fermions_only() {
    let r = 8;
    let all = all_excitations(r);
    let mut previous = None;
    for d in 3..=7usize {
        let fermionic_worst = all
            .iter()
            .filter(|&&(p, q, s, t)| {
                let v = [p, q, s, t];
                v.iter().max().unwrap() - v.iter().min().unwrap() == d
            })
            .map(|&e| generator_cost(&excitation(r, e, Statistics::Fermionic)))
            .max()
            .unwrap();
        // a fixed excitation attaining the worst case at this span
        let chosen = (0, d, d - 2, d - 1);
        let f = generator_cost(&excitation(r, chosen, Statistics::Fermionic));
        let q = generator_cost(&excitation(r, chosen, Statistics::QubitParticle));
        assert_eq!(f, fermionic_worst, "d={d}");
        assert_eq!(q, 48);
        assert_eq!(f - q, 16 * (d - 3), "d={d}");
        if let Some(prev) = previous {
            assert_eq!(f - prev, 16);
        }
        previous = Some(f);
    }
}

#[test]
fn qubit_cost_never_exceeds_fermionic() {
    for e in all_excitations(6) {
        let f = generator_cost(&excitation(6, e, Statistics::Fermionic));
        let q = generator_cost(&excitation(6, e, Statistics::QubitParticle));
        assert!(q <= f);
    }
}
