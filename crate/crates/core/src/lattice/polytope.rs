use std::collections::HashMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::faces::Configuration;
use super::hull;
use super::point::PointConfiguration;
use crate::error::{Error, Result};
use crate::linalg;

/// A lattice polytope given by its (irredundant, sorted) vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolytope {
    ambient: usize,
    vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    pub fn from_points(points: Vec<Vec<i64>>) -> Result<Self> {
        let cfg = Configuration::from_points(dedup(points))?;
        let ambient = cfg.original_point(0).len();
        let mut vertices: Vec<Vec<i64>> = cfg
            .vertices()
            .iter()
            .map(|&v| cfg.original_point(v).to_vec())
            .collect();
        vertices.sort();
        Ok(LatticePolytope { ambient, vertices })
    }

    /// `{u : <normals[i], u> >= rhs[i]}`, or `None` when empty. Fails if the
    /// region is unbounded or has a non-lattice vertex.
    pub fn from_inequalities(normals: &[Vec<i64>], rhs: &[i64]) -> Result<Option<Self>> {
        let ambient = normals.first().map_or(0, Vec::len);
        let vertices = hull::polyhedron_vertices(normals, rhs)?;
        Ok((!vertices.is_empty()).then_some(LatticePolytope { ambient, vertices }))
    }

    /// The standard simplex `conv{0, e_1, ..., e_n}` scaled by `k`.
    pub fn simplex(n: usize, k: i64) -> Self {
        let mut vertices = vec![vec![0; n]];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = k;
            vertices.push(e);
        }
        vertices.sort();
        vertices.dedup();
        LatticePolytope {
            ambient: n,
            vertices,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        PointConfiguration::new(self.vertices.clone())
            .map(|p| p.dim())
            .unwrap_or(0)
    }

    pub fn translate(&self, v: &[i64]) -> Self {
        let mut vertices: Vec<Vec<i64>> = self.vertices.iter().map(|p| linalg::add(p, v)).collect();
        vertices.sort();
        LatticePolytope {
            ambient: self.ambient,
            vertices,
        }
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::InvalidDivisor("negative dilation".into()));
        }
        if k == 0 {
            return Ok(LatticePolytope {
                ambient: self.ambient,
                vertices: vec![vec![0; self.ambient]],
            });
        }
        let mut vertices: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|p| p.iter().map(|x| x * k).collect())
            .collect();
        vertices.sort();
        Ok(LatticePolytope {
            ambient: self.ambient,
            vertices,
        })
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(linalg::add(a, b));
            }
        }
        Self::from_points(pts)
    }

    /// `ambient! * volume`, measured in the ambient lattice.
    pub fn normalized_volume(&self) -> Result<i128> {
        if self.ambient == 0 {
            return Ok(1);
        }
        let cfg = Configuration::from_points(self.vertices.clone())?;
        if cfg.dim() < self.ambient {
            return Ok(0);
        }
        let index = linalg::det(cfg.map().basis_rows()).abs();
        Ok(simplicial_volume(&cfg)? * index)
    }

    /// All lattice points, sorted.
    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>> {
        let lo: Vec<i64> = (0..self.ambient)
            .map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..self.ambient)
            .map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap())
            .collect();
        let mut out = Vec::new();
        if self.vertices.len() == 1 {
            out.push(self.vertices[0].clone());
        } else if self.dim() == self.ambient {
            let facets = hull::facets(&self.vertices)?;
            for_each_in_box(&lo, &hi, |u| {
                if facets.iter().all(|f| linalg::dot(&f.normal, u) >= f.offset) {
                    out.push(u.to_vec());
                }
            });
        } else {
            // Lower-dimensional: work in rational coordinates on the affine span,
            // whose lattice may be finer than the one spanned by the vertices.
            let cfg = Configuration::from_points(self.vertices.clone())?;
            let map = cfg.map();
            let cols: Vec<Vec<i64>> = (0..self.ambient)
                .map(|i| map.basis_rows().iter().map(|b| b[i]).collect())
                .collect();
            let facets: Vec<(Vec<BigRational>, BigRational)> = (0..cfg.num_facets())
                .map(|j| {
                    (
                        linalg::to_rational(cfg.facet_normal(j)),
                        BigRational::from_integer(cfg.facet_offset(j).into()),
                    )
                })
                .collect();
            for_each_in_box(&lo, &hi, |u| {
                let Some(x) = linalg::solve_rational(&cols, &linalg::sub(u, map.origin())) else {
                    return;
                };
                let inside = facets.iter().all(|(nu, h)| {
                    let v: BigRational = nu.iter().zip(&x).map(|(a, b)| a * b).sum();
                    &v >= h
                });
                if inside {
                    out.push(u.to_vec());
                }
            });
        }
        Ok(out)
    }
}

/// Lattice points of `{u : <normals[i], u> >= rhs[i]}`, sorted. The region
/// must be bounded but may have non-lattice vertices.
pub fn inequality_lattice_points(normals: &[Vec<i64>], rhs: &[i64]) -> Result<Vec<Vec<i64>>> {
    let verts = hull::rational_vertices(normals, rhs)?;
    let Some(d) = verts.first().map(|v| v.0.len()) else {
        return Ok(Vec::new());
    };
    let lo: Vec<i64> = (0..d)
        .map(|i| {
            verts
                .iter()
                .map(|(v, t)| v[i].div_euclid(*t))
                .min()
                .unwrap()
        })
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| {
            verts
                .iter()
                .map(|(v, t)| -((-v[i]).div_euclid(*t)))
                .max()
                .unwrap()
        })
        .collect();
    let mut out = Vec::new();
    for_each_in_box(&lo, &hi, |u| {
        if normals
            .iter()
            .zip(rhs)
            .all(|(n, &b)| linalg::dot(n, u) >= b)
        {
            out.push(u.to_vec());
        }
    });
    Ok(out)
}

fn dedup(mut pts: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    pts.sort();
    pts.dedup();
    pts
}

/// Calls `f` on every integer point of the box `[lo, hi]` in lexicographic order.
pub(crate) fn for_each_in_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut u = lo.to_vec();
    loop {
        f(&u);
        let mut i = u.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if u[i] < hi[i] {
                u[i] += 1;
                break;
            }
            u[i] = lo[i];
        }
    }
}

/// Pulling triangulation over the face lattice; returns the sum of
/// `|det|` over the simplices.
fn simplicial_volume(cfg: &Configuration) -> Result<i128> {
    let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    let full = cfg.faces().len() - 1;
    let simplices = triangulate(cfg, full, &mut memo);
    let mut total = 0i128;
    for s in &simplices {
        let base = cfg.point(s[0]);
        let m: Vec<Vec<i64>> = s[1..]
            .iter()
            .map(|&i| linalg::sub(cfg.point(i), base))
            .collect();
        total += linalg::det(&m).abs();
    }
    Ok(total)
}

fn triangulate(
    cfg: &Configuration,
    face: usize,
    memo: &mut HashMap<usize, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(&face) {
        return t.clone();
    }
    let g = cfg.face(face);
    let out = if g.dim == 0 {
        vec![vec![g.members[0]]]
    } else {
        let apex = *cfg
            .vertices()
            .iter()
            .find(|&&v| g.contains(v))
            .expect("a face contains a vertex");
        let mut out = Vec::new();
        let subs: Vec<usize> = (0..cfg.faces().len())
            .filter(|&i| {
                let f = cfg.face(i);
                f.dim + 1 == g.dim && f.is_subset_of(g) && !f.contains(apex)
            })
            .collect();
        for f in subs {
            for mut s in triangulate(cfg, f, memo) {
                s.push(apex);
                out.push(s);
            }
        }
        out
    };
    memo.insert(face, out.clone());
    out
}

/// Normalized mixed volume `MV(P_1, ..., P_d)` with `MV(Δ, ..., Δ) = 1` for
/// the unit simplex, by inclusion-exclusion over Minkowski sums.
pub fn normalized_mixed_volume(polys: &[LatticePolytope]) -> Result<i128> {
    let d = polys.len();
    if let Some(p) = polys.iter().find(|p| p.ambient() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.ambient(),
        });
    }
    if d == 0 {
        return Ok(1);
    }
    let mut total = 0i128;
    for mask in 1u32..(1 << d) {
        let mut sum: Option<LatticePolytope> = None;
        for (i, p) in polys.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = Some(match sum {
                    None => p.clone(),
                    Some(s) => s.minkowski_sum(p)?,
                });
            }
        }
        let vol = sum.expect("mask is non-empty").normalized_volume()?;
        let sign = if (d - mask.count_ones() as usize) % 2 == 0 {
            1
        } else {
            -1
        };
        total += sign * vol;
    }
    let fact: i128 = (1..=d as i128).product();
    if total % fact != 0 {
        return Err(Error::Internal("mixed volume is not integral".into()));
    }
    Ok(total / fact)
}
