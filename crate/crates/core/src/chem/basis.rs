use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::BufRead;

use super::geometry::{canonical_symbol, dist2, Geometry};
use crate::error::{Error, Result};

/// Contracted s shell: `(exponent, contraction coefficient)` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Shell {
    pub primitives: Vec<(f64, f64)>,
}

/// Per-element s shells.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BasisSet {
    pub shells: BTreeMap<String, Vec<Shell>>,
}

/// Normalized contracted s Gaussian centred on an atom.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractedGaussian {
    pub center: [f64; 3],
    /// Exponent and coefficient including the primitive normalization `(2α/π)^{3/4}`.
    pub primitives: Vec<(f64, f64)>,
}

const STO3G: &str = include_str!("../../data/sto-3g.basis");

impl BasisSet {
    /// STO-3G for H and He, read from the data file shipped with the crate.
    pub fn sto3g() -> Self {
        BasisSet::parse(STO3G.as_bytes()).expect("bundled basis parses")
    }

    /// Parses `element exponent coefficient` lines; blank lines separate shells.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut basis = BasisSet::default();
        let mut current: Option<(String, Shell)> = None;
        let flush = |basis: &mut BasisSet, cur: &mut Option<(String, Shell)>| {
            if let Some((el, shell)) = cur.take() {
                basis.shells.entry(el).or_default().push(shell);
            }
        };
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                flush(&mut basis, &mut current);
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(err("expected `element exponent coefficient`".into()));
            }
            let el = canonical_symbol(f[0]).ok_or_else(|| err(format!("unknown element {:?}", f[0])))?;
            let alpha: f64 = f[1].parse().map_err(|_| err(format!("bad exponent {:?}", f[1])))?;
            let coeff: f64 = f[2].parse().map_err(|_| err(format!("bad coefficient {:?}", f[2])))?;
            if !(alpha > 0.0) || !alpha.is_finite() || !coeff.is_finite() {
                return Err(err("exponents must be positive and values finite".into()));
            }
            match &mut current {
                Some((cur_el, shell)) if cur_el == el => shell.primitives.push((alpha, coeff)),
                _ => {
                    flush(&mut basis, &mut current);
                    current = Some((el.to_string(), Shell { primitives: vec![(alpha, coeff)] }));
                }
            }
        }
        flush(&mut basis, &mut current);
        Ok(basis)
    }

    /// Basis functions for every atom, in atom order.
    pub fn functions_for(&self, geom: &Geometry) -> Result<Vec<ContractedGaussian>> {
        let mut out = Vec::new();
        for atom in &geom.atoms {
            let shells = self
                .shells
                .get(&atom.symbol)
                .ok_or_else(|| Error::UnsupportedBasis(format!("no shells for {}", atom.symbol)))?;
            for shell in shells {
                out.push(ContractedGaussian::normalized(atom.position, &shell.primitives));
            }
        }
        Ok(out)
    }
}

impl ContractedGaussian {
    pub fn normalized(center: [f64; 3], shell: &[(f64, f64)]) -> Self {
        let mut g = ContractedGaussian {
            center,
            primitives: shell.iter().map(|&(a, c)| (a, c * (2.0 * a / PI).powf(0.75))).collect(),
        };
        let norm = overlap_contracted(&g, &g).sqrt();
        for p in &mut g.primitives {
            p.1 /= norm;
        }
        g
    }
}

/// `∫ exp(−a|r−A|²) exp(−b|r−B|²) dr`.
pub(crate) fn overlap_primitive(a: f64, ca: [f64; 3], b: f64, cb: [f64; 3]) -> f64 {
    let p = a + b;
    (PI / p).powf(1.5) * (-a * b / p * dist2(ca, cb)).exp()
}

pub(crate) fn overlap_contracted(f: &ContractedGaussian, g: &ContractedGaussian) -> f64 {
    let mut s = 0.0;
    for &(a, ca) in &f.primitives {
        for &(b, cb) in &g.primitives {
            s += ca * cb * overlap_primitive(a, f.center, b, g.center);
        }
    }
    s
}
