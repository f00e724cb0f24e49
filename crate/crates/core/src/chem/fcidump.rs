use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use nalgebra::DMatrix;

use super::{IntegralSet, OrbitalBasis};
use crate::error::{Error, Result};
use crate::tensor::Tensor4;

/// Contents of an FCIDUMP file.
#[derive(Clone, Debug)]
pub struct Fcidump {
    pub ints: IntegralSet,
    pub n_electrons: usize,
    pub ms2: i32,
}

/// Writes spatial MO integrals: namelist header, then 8-fold unique
/// `value i j k l` lines (1-based, chemists' notation), one-body `value i j 0 0`,
/// and the core energy as `value 0 0 0 0`.
pub fn fcidump_write_to<W: Write>(ints: &IntegralSet, n_electrons: usize, mut w: W) -> Result<()> {
    if ints.basis == OrbitalBasis::SpinOrbital {
        return Err(Error::InvalidArgument("FCIDUMP stores spatial-orbital integrals".into()));
    }
    let n = ints.n_orb;
    let tiny = 1e-15;
    writeln!(w, " &FCI NORB={},NELEC={},MS2={},", n, n_electrons, n_electrons % 2)?;
    writeln!(w, "  ISYM=1 /")?;
    for i in 0..n {
        for j in 0..=i {
            for k in 0..n {
                for l in 0..=k {
                    if i * (i + 1) / 2 + j < k * (k + 1) / 2 + l {
                        continue;
                    }
                    let v = ints.g[(i, j, k, l)];
                    if v.abs() > tiny {
                        writeln!(w, "{:24.16e} {:4} {:4} {:4} {:4}", v, i + 1, j + 1, k + 1, l + 1)?;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..=i {
            let v = ints.h[(i, j)];
            if v.abs() > tiny {
                writeln!(w, "{:24.16e} {:4} {:4} {:4} {:4}", v, i + 1, j + 1, 0, 0)?;
            }
        }
    }
    writeln!(w, "{:24.16e} {:4} {:4} {:4} {:4}", ints.e_nuc, 0, 0, 0, 0)?;
    Ok(())
}

pub fn fcidump_write(ints: &IntegralSet, n_electrons: usize, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    fcidump_write_to(ints, n_electrons, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn fcidump_read(path: impl AsRef<Path>) -> Result<Fcidump> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    fcidump_read_str(&text)
}

/// Parses FCIDUMP text, including files written by other packages
/// (`ORBSYM`, `&END` terminators, Fortran `D` exponents).
pub fn fcidump_read_str(text: &str) -> Result<Fcidump> {
    let lines: Vec<&str> = text.lines().collect();
    let start = lines
        .iter()
        .position(|l| l.trim_start().to_ascii_uppercase().starts_with("&FCI"))
        .ok_or(Error::Parse { line: 1, msg: "missing &FCI header".into() })?;
    let mut header = String::new();
    let mut body_start = None;
    for (i, line) in lines.iter().enumerate().skip(start) {
        let upper = line.to_ascii_uppercase();
        if let Some(pos) = upper.find("&END").or_else(|| upper.find('/')) {
            header.push_str(&upper[..pos]);
            body_start = Some(i + 1);
            break;
        }
        header.push_str(&upper);
        header.push(',');
    }
    let body_start = body_start.ok_or(Error::Parse { line: start + 1, msg: "unterminated header".into() })?;

    let compact: String = header.chars().filter(|c| !c.is_whitespace()).collect();
    let compact = compact.trim_start_matches("&FCI");
    let mut keys: Vec<(String, Vec<String>)> = Vec::new();
    for token in compact.split(',').filter(|t| !t.is_empty()) {
        match token.split_once('=') {
            Some((k, v)) => keys.push((k.to_string(), vec![v.to_string()])),
            None => match keys.last_mut() {
                Some((_, vals)) => vals.push(token.to_string()),
                None => return Err(Error::Parse { line: start + 1, msg: format!("stray token {token:?}") }),
            },
        }
    }
    let get = |name: &str| -> Result<Option<i64>> {
        match keys.iter().find(|(k, _)| k == name) {
            None => Ok(None),
            Some((_, v)) => v[0]
                .parse()
                .map(Some)
                .map_err(|_| Error::Parse { line: start + 1, msg: format!("bad {name} value {:?}", v[0]) }),
        }
    };
    let header_err = |msg: String| Error::Parse { line: start + 1, msg };
    let n = get("NORB")?.ok_or_else(|| header_err("missing NORB".into()))?;
    let nelec = get("NELEC")?.ok_or_else(|| header_err("missing NELEC".into()))?;
    let ms2 = get("MS2")?.unwrap_or(0);
    if n <= 0 || nelec < 0 {
        return Err(header_err(format!("invalid NORB={n} or NELEC={nelec}")));
    }
    if (nelec - ms2).rem_euclid(2) != 0 || ms2.abs() > nelec {
        return Err(header_err(format!("MS2={ms2} inconsistent with NELEC={nelec}")));
    }
    let n = n as usize;

    let mut h = DMatrix::zeros(n, n);
    let mut g = Tensor4::zeros(n);
    let mut e_nuc = 0.0;
    for (i, line) in lines.iter().enumerate().skip(body_start) {
        let lineno = i + 1;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno, msg };
        if f.len() != 5 {
            return Err(err(format!("expected `value i j k l`, got {} fields", f.len())));
        }
        let value: f64 = f[0]
            .replace(['D', 'd'], "E")
            .parse()
            .map_err(|_| err(format!("non-numeric value {:?}", f[0])))?;
        let mut idx = [0usize; 4];
        for k in 0..4 {
            idx[k] = f[k + 1].parse().map_err(|_| err(format!("bad index {:?}", f[k + 1])))?;
            if idx[k] > n {
                return Err(err(format!("index {} out of range for NORB={n}", idx[k])));
            }
        }
        match idx {
            [0, 0, 0, 0] => e_nuc = value,
            [i, j, 0, 0] if i > 0 && j > 0 => {
                h[(i - 1, j - 1)] = value;
                h[(j - 1, i - 1)] = value;
            }
            [_, 0, 0, 0] => {} // orbital energy
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                let (i, j, k, l) = (i - 1, j - 1, k - 1, l - 1);
                for (p, q, r, s) in [
                    (i, j, k, l),
                    (j, i, k, l),
                    (i, j, l, k),
                    (j, i, l, k),
                    (k, l, i, j),
                    (l, k, i, j),
                    (k, l, j, i),
                    (l, k, j, i),
                ] {
                    g[(p, q, r, s)] = value;
                }
            }
            _ => return Err(err(format!("unrecognized index pattern {idx:?}"))),
        }
    }
    Ok(Fcidump {
        ints: IntegralSet { n_orb: n, e_nuc, h, g, basis: OrbitalBasis::Mo, overlap: None },
        n_electrons: nelec as usize,
        ms2: ms2 as i32,
    })
}
