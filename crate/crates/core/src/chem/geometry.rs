use std::io::BufRead;

use crate::error::{Error, Result};

pub const ANGSTROM_TO_BOHR: f64 = 1.8897259886;

#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub symbol: String,
    pub charge: u32,
    /// Bohr.
    pub position: [f64; 3],
}

/// Nuclear framework, stored in Bohr.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Geometry {
    pub atoms: Vec<Atom>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthUnit {
    Angstrom,
    Bohr,
}

impl LengthUnit {
    pub fn to_bohr(self) -> f64 {
        match self {
            LengthUnit::Angstrom => ANGSTROM_TO_BOHR,
            LengthUnit::Bohr => 1.0,
        }
    }
}

const ELEMENTS: [&str; 10] = ["H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne"];

pub fn nuclear_charge(symbol: &str) -> Option<u32> {
    ELEMENTS
        .iter()
        .position(|e| e.eq_ignore_ascii_case(symbol))
        .map(|i| i as u32 + 1)
}

/// Canonical capitalization (`he` → `He`).
pub fn canonical_symbol(symbol: &str) -> Option<&'static str> {
    ELEMENTS.iter().copied().find(|e| e.eq_ignore_ascii_case(symbol))
}

impl Geometry {
    pub fn push(&mut self, symbol: &str, position: [f64; 3], unit: LengthUnit) -> Result<()> {
        let charge = nuclear_charge(symbol)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown element {symbol:?}")))?;
        if position.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite position for {symbol}")));
        }
        let k = unit.to_bohr();
        self.atoms.push(Atom {
            symbol: canonical_symbol(symbol).unwrap().to_string(),
            charge,
            position: [position[0] * k, position[1] * k, position[2] * k],
        });
        Ok(())
    }

    /// Linear hydrogen chain along z starting at the origin.
    pub fn hydrogen_chain(n_atoms: usize, spacing: f64, unit: LengthUnit) -> Self {
        let mut g = Geometry::default();
        for i in 0..n_atoms {
            g.push("H", [0.0, 0.0, i as f64 * spacing], unit).expect("hydrogen is known");
        }
        g
    }

    pub fn translated(&self, shift: [f64; 3]) -> Self {
        let mut g = self.clone();
        for a in &mut g.atoms {
            for (x, d) in a.position.iter_mut().zip(shift) {
                *x += d;
            }
        }
        g
    }

    pub fn total_charge(&self) -> u32 {
        self.atoms.iter().map(|a| a.charge).sum()
    }

    /// `Σ_{a<b} Z_a Z_b / R_ab` in Hartree.
    pub fn nuclear_repulsion(&self) -> f64 {
        let mut e = 0.0;
        for (i, a) in self.atoms.iter().enumerate() {
            for b in &self.atoms[i + 1..] {
                e += (a.charge * b.charge) as f64 / distance(a.position, b.position);
            }
        }
        e
    }

    /// Parses a header line `angstrom` or `bohr` followed by `element x y z` lines.
    /// Blank lines and `#` comments are ignored.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut unit = None;
        let mut g = Geometry::default();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let Some(u) = unit else {
                unit = Some(match line.to_ascii_lowercase().as_str() {
                    "angstrom" => LengthUnit::Angstrom,
                    "bohr" => LengthUnit::Bohr,
                    other => return Err(err(format!("expected `angstrom` or `bohr`, got {other:?}"))),
                });
                continue;
            };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(err("expected `element x y z`".into()));
            }
            let mut pos = [0.0; 3];
            for k in 0..3 {
                pos[k] = f[k + 1].parse().map_err(|_| err(format!("bad coordinate {:?}", f[k + 1])))?;
            }
            g.push(f[0], pos, u).map_err(|e| err(e.to_string()))?;
        }
        if unit.is_none() {
            return Err(Error::Parse { line: 0, msg: "missing unit header".into() });
        }
        Ok(g)
    }
}

pub(crate) fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    dist2(a, b).sqrt()
}

pub(crate) fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}
