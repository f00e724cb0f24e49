#![allow(dead_code)]

use std::path::PathBuf;

use qparticle::chem::{prepare_system, BasisSet, Geometry, LengthUnit, MolecularSystem, ScfOptions};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Scalar from `reference_energies.txt`.
pub fn reference(key: &str) -> f64 {
    let text = std::fs::read_to_string(fixture("reference_energies.txt")).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .find_map(|l| {
            let mut it = l.split_whitespace();
            (it.next() == Some(key)).then(|| it.next().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("no reference value {key}"))
}

pub fn hydrogen_chain(n: usize, spacing_angstrom: f64) -> MolecularSystem {
    let g = Geometry::hydrogen_chain(n, spacing_angstrom, LengthUnit::Angstrom);
    prepare_system(&g, &BasisSet::sto3g(), &ScfOptions::default()).unwrap()
}

pub fn h4() -> MolecularSystem {
    hydrogen_chain(4, 0.88821)
}

pub fn h2() -> MolecularSystem {
    hydrogen_chain(2, 0.74)
}
