use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::basis::{overlap_contracted, overlap_primitive, BasisSet, ContractedGaussian};
use super::boys::boys_f0;
use super::geometry::{dist2, Geometry};
use super::{IntegralSet, OrbitalBasis};
use crate::error::Result;
use crate::tensor::Tensor4;

/// One-electron pieces kept separately for inspection.
#[derive(Clone, Debug)]
pub struct AoComponents {
    pub overlap: DMatrix<f64>,
    pub kinetic: DMatrix<f64>,
    pub nuclear: DMatrix<f64>,
}

fn product_center(a: f64, ca: [f64; 3], b: f64, cb: [f64; 3]) -> [f64; 3] {
    let p = a + b;
    [(a * ca[0] + b * cb[0]) / p, (a * ca[1] + b * cb[1]) / p, (a * ca[2] + b * cb[2]) / p]
}

fn kinetic_primitive(a: f64, ca: [f64; 3], b: f64, cb: [f64; 3]) -> f64 {
    let mu = a * b / (a + b);
    mu * (3.0 - 2.0 * mu * dist2(ca, cb)) * overlap_primitive(a, ca, b, cb)
}

fn nuclear_primitive(a: f64, ca: [f64; 3], b: f64, cb: [f64; 3], geom: &Geometry) -> Result<f64> {
    let p = a + b;
    let pc = product_center(a, ca, b, cb);
    let pre = -2.0 * PI / p * (-a * b / p * dist2(ca, cb)).exp();
    let mut v = 0.0;
    for atom in &geom.atoms {
        v += atom.charge as f64 * boys_f0(p * dist2(pc, atom.position))?;
    }
    Ok(pre * v)
}

fn repulsion_primitive(
    (a, ca): (f64, [f64; 3]),
    (b, cb): (f64, [f64; 3]),
    (c, cc): (f64, [f64; 3]),
    (d, cd): (f64, [f64; 3]),
) -> Result<f64> {
    let p = a + b;
    let q = c + d;
    let pc = product_center(a, ca, b, cb);
    let qc = product_center(c, cc, d, cd);
    let pre = 2.0 * PI.powf(2.5) / (p * q * (p + q).sqrt())
        * (-a * b / p * dist2(ca, cb) - c * d / q * dist2(cc, cd)).exp();
    Ok(pre * boys_f0(p * q / (p + q) * dist2(pc, qc))?)
}

fn one_body(
    f: &[ContractedGaussian],
    mut prim: impl FnMut(f64, [f64; 3], f64, [f64; 3]) -> Result<f64>,
) -> Result<DMatrix<f64>> {
    let n = f.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut v = 0.0;
            for &(a, ca) in &f[i].primitives {
                for &(b, cb) in &f[j].primitives {
                    v += ca * cb * prim(a, f[i].center, b, f[j].center)?;
                }
            }
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(m)
}

/// Closed-form s-Gaussian integrals over the atom-centred basis.
///
/// Returns the AO integral set (core Hamiltonian `T + V`, chemists'-notation
/// repulsion, nuclear repulsion, overlap) plus the separate one-electron parts.
pub fn compute_ao_integrals(geom: &Geometry, basis: &BasisSet) -> Result<(IntegralSet, AoComponents)> {
    let f = basis.functions_for(geom)?;
    let n = f.len();
    let overlap = {
        let mut s = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                s[(i, j)] = overlap_contracted(&f[i], &f[j]);
            }
        }
        s
    };
    let kinetic = one_body(&f, |a, ca, b, cb| Ok(kinetic_primitive(a, ca, b, cb)))?;
    let nuclear = one_body(&f, |a, ca, b, cb| nuclear_primitive(a, ca, b, cb, geom))?;

    let mut g = Tensor4::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            for k in 0..n {
                for l in 0..=k {
                    if i * (i + 1) / 2 + j < k * (k + 1) / 2 + l {
                        continue;
                    }
                    let mut v = 0.0;
                    for &(a, wa) in &f[i].primitives {
                        for &(b, wb) in &f[j].primitives {
                            for &(c, wc) in &f[k].primitives {
                                for &(d, wd) in &f[l].primitives {
                                    v += wa * wb * wc * wd
                                        * repulsion_primitive(
                                            (a, f[i].center),
                                            (b, f[j].center),
                                            (c, f[k].center),
                                            (d, f[l].center),
                                        )?;
                                }
                            }
                        }
                    }
                    for (p, q, r, s) in [(i, j), (j, i)]
                        .into_iter()
                        .flat_map(|(p, q)| [(p, q, k, l), (p, q, l, k)])
                        .flat_map(|(p, q, r, s)| [(p, q, r, s), (r, s, p, q)])
                    {
                        g[(p, q, r, s)] = v;
                    }
                }
            }
        }
    }

    let ints = IntegralSet {
        n_orb: n,
        e_nuc: geom.nuclear_repulsion(),
        h: &kinetic + &nuclear,
        g,
        basis: OrbitalBasis::Ao,
        overlap: Some(overlap.clone()),
    };
    Ok((ints, AoComponents { overlap, kinetic, nuclear }))
}
