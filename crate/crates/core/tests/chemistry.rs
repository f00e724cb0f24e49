//! Integrals, Hartree–Fock and exact diagonalization against an external
//! quantum chemistry package (values in `fixtures/reference_energies.txt`).

mod common;

use common::{data, fixture, h2, h4, reference};
use qparticle::acse::{fci_ground_state, sector_determinants};
use qparticle::chem::{
    boys_f0, compute_ao_integrals, fcidump_read, fcidump_read_str, fcidump_write_to, prepare_system, rhf_scf,
    spin_orbital_expand, BasisSet, Geometry, LengthUnit, ScfOptions, ANGSTROM_TO_BOHR,
};
use qparticle::Error;

/// Composite Gauss–Legendre (5 nodes, 400 panels) for ∫₀¹ exp(−t u²) du.
fn boys_quadrature(t: f64) -> f64 {
    let nodes = [0.0, -0.538469310105683, 0.538469310105683, -0.906179845938664, 0.906179845938664];
    let weights = [0.568888888888889, 0.478628670499366, 0.478628670499366, 0.236926885056189, 0.236926885056189];
    let panels = 400;
    let h = 1.0 / panels as f64;
    let mut sum = 0.0;
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * h;
        for (x, w) in nodes.iter().zip(weights) {
            let u = mid + 0.5 * h * x;
            sum += 0.5 * h * w * (-t * u * u).exp();
        }
    }
    sum
}

#[test]
fn boys_function_against_quadrature() {
    for t in [0.0, 1e-9, 1e-4, 5e-3, 0.0099, 0.01, 0.2, 1.0, 3.7, 12.0, 45.0] {
        let q = boys_quadrature(t);
        assert!((boys_f0(t).unwrap() - q).abs() < 1e-13, "t={t}");
    }
    // √π/2 · erf(1)
    assert!((boys_f0(1.0).unwrap() - 0.746824132812427).abs() < 1e-15);
}

#[test]
fn h2_ao_integrals() {
    let mut g = Geometry::default();
    g.push("H", [0.0, 0.0, 0.0], LengthUnit::Bohr).unwrap();
    g.push("H", [0.0, 0.0, 1.4], LengthUnit::Bohr).unwrap();
    let (ints, parts) = compute_ao_integrals(&g, &BasisSet::sto3g()).unwrap();
    let close = |a: f64, key: &str| assert!((a - reference(key)).abs() < 1e-9, "{key}: {a}");
    close(parts.overlap[(0, 0)], "h2r14_s11");
    close(parts.overlap[(0, 1)], "h2r14_s12");
    close(parts.kinetic[(0, 0)], "h2r14_t11");
    close(parts.kinetic[(0, 1)], "h2r14_t12");
    close(parts.nuclear[(0, 0)], "h2r14_v11");
    close(parts.nuclear[(1, 0)], "h2r14_v12");
    close(ints.g[(0, 0, 0, 0)], "h2r14_eri1111");
    close(ints.g[(0, 0, 1, 1)], "h2r14_eri1122");
    close(ints.g[(1, 0, 0, 0)], "h2r14_eri2111");
    close(ints.g[(1, 0, 1, 0)], "h2r14_eri2121");
    assert!(ints.symmetry_error() == 0.0);
    assert!((ints.e_nuc - 1.0 / 1.4).abs() < 1e-15);
}

#[test]
fn hartree_fock_matches_reference() {
    for (name, sys) in [("h4", h4()), ("h2", h2())] {
        assert!((sys.ao.e_nuc - reference(&format!("{name}_e_nuc"))).abs() < 1e-12);
        assert!((sys.scf.energy - reference(&format!("{name}_e_hf"))).abs() < 1e-9, "{name}");
        assert!(sys.scf.commutator_norm < 1e-10);
    }
    let eps = h4().scf.orbital_energies;
    let text = std::fs::read_to_string(fixture("reference_energies.txt")).unwrap();
    let line = text.lines().find(|l| l.starts_with("h4_mo_energies")).unwrap();
    for (e, r) in eps.iter().zip(line.split_whitespace().skip(1)) {
        assert!((e - r.parse::<f64>().unwrap()).abs() < 1e-8);
    }
}

#[test]
fn helium_atom() {
    let mut g = Geometry::default();
    g.push("He", [0.0, 0.0, 0.0], LengthUnit::Bohr).unwrap();
    let (ints, _) = compute_ao_integrals(&g, &BasisSet::sto3g()).unwrap();
    let scf = rhf_scf(&ints, 2, &ScfOptions::default()).unwrap();
    assert!((scf.energy - reference("he_e_hf")).abs() < 1e-9);
}

#[test]
fn full_ci_matches_reference() {
    for (name, sys) in [("h4", h4()), ("h2", h2())] {
        let (e, state) = fci_ground_state(&sys.spin_orbital, sys.n_electrons, 0).unwrap();
        assert!((e - reference(&format!("{name}_e_fci"))).abs() < 1e-8, "{name}: {e}");
        assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(e < sys.scf.energy);
    }
}

#[test]
fn external_fcidump_gives_same_energies() {
    for name in ["h4", "h2"] {
        let dump = fcidump_read(fixture(&format!("{name}_sto3g_pyscf.fcidump"))).unwrap();
        let so = spin_orbital_expand(&dump.ints).unwrap();
        let (e, _) = fci_ground_state(&so, dump.n_electrons, dump.ms2).unwrap();
        assert!((e - reference(&format!("{name}_e_fci"))).abs() < 1e-10);
        assert!((dump.ints.e_nuc - reference(&format!("{name}_e_nuc"))).abs() < 1e-12);
    }
}

#[test]
fn sector_dimensions() {
    assert_eq!(sector_determinants(8, 4, 0).len(), 36);
    assert_eq!(sector_determinants(8, 3, 1).len(), 24);
    assert_eq!(sector_determinants(4, 2, 0).len(), 4);
    let sys = h2();
    assert!(matches!(fci_ground_state(&sys.spin_orbital, 5, 1), Err(Error::EmptySector { .. })));
}

#[test]
fn energies_are_translation_invariant() {
    let g = Geometry::hydrogen_chain(4, 0.88821, LengthUnit::Angstrom);
    let moved = g.translated([0.7, -1.3, 2.9]);
    let basis = BasisSet::sto3g();
    let a = prepare_system(&g, &basis, &ScfOptions::default()).unwrap();
    let b = prepare_system(&moved, &basis, &ScfOptions::default()).unwrap();
    assert!((a.scf.energy - b.scf.energy).abs() < 1e-10);
    let (ea, _) = fci_ground_state(&a.spin_orbital, 4, 0).unwrap();
    let (eb, _) = fci_ground_state(&b.spin_orbital, 4, 0).unwrap();
    assert!((ea - eb).abs() < 1e-10);
}

#[test]
fn geometry_file_matches_builder() {
    let file = Geometry::parse(std::io::BufReader::new(std::fs::File::open(data("h4_chain.geom")).unwrap())).unwrap();
    let built = Geometry::hydrogen_chain(4, 0.88821, LengthUnit::Angstrom);
    assert_eq!(file.atoms.len(), 4);
    for (a, b) in file.atoms.iter().zip(&built.atoms) {
        for k in 0..3 {
            assert!((a.position[k] - b.position[k]).abs() < 1e-12);
        }
    }
    assert!((built.atoms[1].position[2] - 0.88821 * ANGSTROM_TO_BOHR).abs() < 1e-15);
    let basis_file =
        BasisSet::parse(std::io::BufReader::new(std::fs::File::open(data("sto-3g.basis")).unwrap())).unwrap();
    assert_eq!(basis_file, BasisSet::sto3g());
}

#[test]
fn fcidump_round_trip() {
    let sys = h4();
    let mut buf = Vec::new();
    fcidump_write_to(&sys.mo, 4, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with(" &FCI NORB=4,NELEC=4,MS2=0,"));
    let back = fcidump_read_str(&text).unwrap();
    assert_eq!((back.n_electrons, back.ms2), (4, 0));
    assert!((back.ints.e_nuc - sys.mo.e_nuc).abs() < 1e-15);
    let n = 4;
    for p in 0..n {
        for q in 0..n {
            assert!((back.ints.h[(p, q)] - sys.mo.h[(p, q)]).abs() < 1e-15);
            for s in 0..n {
                for t in 0..n {
                    assert!((back.ints.g[(p, q, s, t)] - sys.mo.g[(p, q, s, t)]).abs() < 1e-15);
                }
            }
        }
    }
}

#[test]
fn fcidump_errors() {
    let header = " &FCI NORB=2,NELEC=2,MS2=0,\n  ISYM=1 /\n";
    let cases = [
        format!("{header}  0.5 3 1 1 1\n"),
        format!("{header}  abc 1 1 1 1\n"),
        format!("{header}  0.5 1 1 1\n"),
        " &FCI NORB=2,NELEC=2,MS2=1,\n /\n".to_string(),
        "NORB=2\n".to_string(),
    ];
    for c in &cases {
        assert!(matches!(fcidump_read_str(c), Err(Error::Parse { .. })), "{c}");
    }
    let ok = fcidump_read_str(&format!("{header}  0.5D0 1 1 1 1\n -1.0 1 1 0 0\n 0.25 0 0 0 0\n")).unwrap();
    assert_eq!(ok.ints.g[(0, 0, 0, 0)], 0.5);
    assert_eq!(ok.ints.h[(0, 0)], -1.0);
    assert_eq!(ok.ints.e_nuc, 0.25);
}

#[test]
fn scf_input_errors() {
    let g = Geometry::hydrogen_chain(3, 0.9, LengthUnit::Angstrom);
    let (ints, _) = compute_ao_integrals(&g, &BasisSet::sto3g()).unwrap();
    assert!(rhf_scf(&ints, 3, &ScfOptions::default()).is_err());
    let mut li = Geometry::default();
    li.push("Li", [0.0; 3], LengthUnit::Bohr).unwrap();
    assert!(matches!(compute_ao_integrals(&li, &BasisSet::sto3g()), Err(Error::UnsupportedBasis(_))));
}
