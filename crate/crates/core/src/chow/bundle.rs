use serde::Serialize;

use super::cayley_sum::{cayley_sum_configuration, CayleySumConfiguration};
use super::intersection::{nef_divisor_of_polytope, toric_intersection_number};
use crate::cayley::{pi_faces, CayleyStructure};
use crate::divisors::{is_basepoint_free, local_data, ToricDivisor};
use crate::error::{Error, Result};
use crate::lattice::{Configuration, Face};
use crate::linalg;

/// `E = L_0* + ... + L_l*` on `Z_pi`, where `L_i` is generated by the
/// characters `G_i = pi^{-1}(e_i) - v_i` for a chosen `l`-dimensional pi-face
/// `{v_0, ..., v_l}`.
#[derive(Clone, Debug, Serialize)]
pub struct SplitBundle {
    pub base: CayleySumConfiguration,
    /// `v_i`, as point indices of the input configuration.
    pub pi_face: Vec<usize>,
    /// `G_i` in the coordinates of the input configuration.
    pub generators: Vec<Vec<Vec<i64>>>,
    /// `L_i` as a nef divisor on `Z_pi` with section polytope `conv G_i`.
    pub summands: Vec<ToricDivisor>,
    /// `deg L_i` against the hyperplane class of `Z_pi`; empty when `Z_pi` is
    /// a point.
    pub degrees: Vec<i128>,
    /// For each vertex `b` of `Z_pi` (in `base.config.vertices()` order), the
    /// generator `w_i(b)` of `L_i` near `b`.
    pub local_generators: Vec<Vec<Vec<i64>>>,
}

impl SplitBundle {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

pub fn universal_bundle(cfg: &Configuration, p: &CayleyStructure) -> Result<SplitBundle> {
    let faces = pi_faces(cfg, p, p.length())?;
    let sigma = faces
        .first()
        .ok_or_else(|| Error::Internal("Cayley structure without a top pi-face".into()))?;
    universal_bundle_for_face(cfg, p, sigma)
}

pub fn universal_bundle_for_face(
    cfg: &Configuration,
    p: &CayleyStructure,
    sigma: &Face,
) -> Result<SplitBundle> {
    let l = p.length();
    let mut pi_face = vec![usize::MAX; l + 1];
    for &v in &sigma.members {
        let i = p
            .assignment(v)
            .ok_or_else(|| Error::NotPiFaceChain(format!("point {v} is outside the domain")))?;
        pi_face[i] = v;
    }
    if sigma.dim != l || pi_face.contains(&usize::MAX) {
        return Err(Error::NotPiFaceChain(
            "face is not an l-dimensional pi-face".into(),
        ));
    }
    let base = cayley_sum_configuration(cfg, p)?;
    let z = &base.config;
    if !z.is_smooth() {
        return Err(Error::NotSmooth("Z_pi is singular".into()));
    }
    let generators: Vec<Vec<Vec<i64>>> = p
        .fibers
        .iter()
        .zip(&pi_face)
        .map(|(fiber, &v)| {
            fiber
                .iter()
                .map(|&u| linalg::sub(cfg.point(u), cfg.point(v)))
                .collect()
        })
        .collect();
    // Coordinates of each generator on Z_pi.
    let in_z: Vec<Vec<Vec<i64>>> = generators
        .iter()
        .map(|g| {
            g.iter()
                .map(|w| {
                    z.map().linear_to_normalized(w).ok_or_else(|| {
                        Error::Internal("generator outside the lattice of Z_pi".into())
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let summands = in_z
        .iter()
        .map(|g| nef_divisor_of_polytope(z, g))
        .collect::<Result<Vec<_>>>()?;

    let mut local_generators = Vec::with_capacity(z.vertices().len());
    for &b in z.vertices() {
        // An interior point of the normal cone at b; it is minimized over each
        // G_i exactly at the local generator.
        let lambda = z
            .facets_containing_point(b)
            .iter()
            .fold(vec![0; z.dim()], |acc, &j| {
                linalg::add(&acc, z.facet_normal(j))
            });
        let mut here = Vec::with_capacity(l + 1);
        for (i, g) in in_z.iter().enumerate() {
            let vals: Vec<i64> = g.iter().map(|w| linalg::dot(&lambda, w)).collect();
            let min = *vals.iter().min().expect("fibers are non-empty");
            let at: Vec<usize> = (0..g.len()).filter(|&t| vals[t] == min).collect();
            if at.len() != 1 {
                return Err(Error::Internal(format!(
                    "G_{i} has no unique generator at vertex {b}"
                )));
            }
            here.push(generators[i][at[0]].clone());
        }
        let sum = here
            .iter()
            .zip(&pi_face)
            .fold(vec![0; cfg.dim()], |acc, (w, &v)| {
                linalg::add(&acc, &linalg::add(w, cfg.point(v)))
            });
        if sum != z.original_point(b) {
            return Err(Error::Internal(format!(
                "local generators at vertex {b} do not sum to it"
            )));
        }
        local_generators.push(here);
    }
    for (i, d) in summands.iter().enumerate() {
        if !is_basepoint_free(z, d)? {
            return Err(Error::Internal(format!("L_{i} is not nef on Z_pi")));
        }
        let ld = local_data(z, d)?;
        for (vi, &b) in z.vertices().iter().enumerate() {
            let want = z.map().linear_to_normalized(&local_generators[vi][i]);
            if ld.get(b) != want.as_deref() {
                return Err(Error::Internal(format!(
                    "normal fan of conv G_{i} is not refined by Z_pi at vertex {b}"
                )));
            }
        }
    }
    let degrees = if z.dim() == 0 {
        Vec::new()
    } else {
        let h = ToricDivisor::hyperplane(z);
        summands
            .iter()
            .map(|d| {
                let mut ds = vec![h.clone(); z.dim()];
                ds[0] = d.clone();
                toric_intersection_number(z, &ds)
            })
            .collect::<Result<_>>()?
    };
    Ok(SplitBundle {
        base,
        pi_face,
        generators,
        summands,
        degrees,
        local_generators,
    })
}
