//! Torus-invariant Cartier divisors on a smooth `Y_A`, their classes, and
//! their restrictions to the linear spaces `L_pi`.
//!
//! All lattice data (local data, polytopes, sections) are expressed in the
//! normalized coordinates of the configuration. Facets are indexed in the
//! canonical order of [`Configuration::facet`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cayley::{induced_projection, leq, CayleyStructure};
use crate::error::{Error, Result};
use crate::lattice::{inequality_lattice_points, Configuration, Face, LatticePolytope};
use crate::linalg::{self, LatticeBasis};
use crate::par;

/// `D = sum_F a_F D_F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ToricDivisor {
    coeffs: Vec<i64>,
}

impl ToricDivisor {
    pub fn new(cfg: &Configuration, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != cfg.num_facets() {
            return Err(Error::InvalidDivisor(format!(
                "expected {} facet coefficients, found {}",
                cfg.num_facets(),
                coeffs.len()
            )));
        }
        Ok(ToricDivisor { coeffs })
    }

    pub fn zero(cfg: &Configuration) -> Self {
        ToricDivisor {
            coeffs: vec![0; cfg.num_facets()],
        }
    }

    /// The prime divisor `D_F` of facet `j`.
    pub fn prime(cfg: &Configuration, j: usize) -> Self {
        let mut coeffs = vec![0; cfg.num_facets()];
        coeffs[j] = 1;
        ToricDivisor { coeffs }
    }

    /// The divisor whose polytope is `conv A`, i.e. the hyperplane class of the
    /// embedding.
    pub fn hyperplane(cfg: &Configuration) -> Self {
        ToricDivisor {
            coeffs: (0..cfg.num_facets())
                .map(|j| -cfg.facet_offset(j))
                .collect(),
        }
    }

    /// `div(chi^m) = sum_F <nu_F, m> D_F`.
    pub fn principal(cfg: &Configuration, m: &[i64]) -> Self {
        ToricDivisor {
            coeffs: (0..cfg.num_facets())
                .map(|j| linalg::dot(cfg.facet_normal(j), m))
                .collect(),
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, other: &ToricDivisor) -> ToricDivisor {
        ToricDivisor {
            coeffs: linalg::add(&self.coeffs, &other.coeffs),
        }
    }

    pub fn sub(&self, other: &ToricDivisor) -> ToricDivisor {
        ToricDivisor {
            coeffs: linalg::sub(&self.coeffs, &other.coeffs),
        }
    }

    pub fn scale(&self, k: i64) -> ToricDivisor {
        ToricDivisor {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&a| a >= 0)
    }
}

/// The lattice of principal divisors inside `Z^{#facets}`.
fn principal_lattice(cfg: &Configuration) -> Result<LatticeBasis> {
    let n = cfg.num_facets();
    let rows: Vec<Vec<i64>> = (0..cfg.dim())
        .map(|i| (0..n).map(|j| cfg.facet_normal(j)[i]).collect())
        .collect();
    if rows.is_empty() {
        return LatticeBasis::span(n, &[vec![0; n]]);
    }
    LatticeBasis::span(n, &rows)
}

/// A divisor class in `Pic Y_A`. Equality compares the canonical reduction of
/// the representative modulo principal divisors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisorClass {
    representative: ToricDivisor,
    key: Vec<i64>,
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for DivisorClass {}

impl DivisorClass {
    pub fn new(cfg: &Configuration, representative: ToricDivisor) -> Result<Self> {
        let key = principal_lattice(cfg)?.reduce(representative.coeffs());
        Ok(DivisorClass {
            representative,
            key,
        })
    }

    pub fn representative(&self) -> &ToricDivisor {
        &self.representative
    }

    /// Canonical coefficient vector of the class.
    pub fn key(&self) -> &[i64] {
        &self.key
    }

    pub fn is_zero(&self) -> bool {
        self.key.iter().all(|&x| x == 0)
    }

    pub fn add(&self, cfg: &Configuration, other: &DivisorClass) -> Result<Self> {
        DivisorClass::new(cfg, self.representative.add(&other.representative))
    }

    pub fn sub(&self, cfg: &Configuration, other: &DivisorClass) -> Result<Self> {
        DivisorClass::new(cfg, self.representative.sub(&other.representative))
    }
}

/// Characters `u_v` with `chi^{u_v}` generating `O(D)` near the fixed point of
/// each vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub vertices: Vec<usize>,
    pub characters: Vec<Vec<i64>>,
}

impl LocalData {
    pub fn get(&self, v: usize) -> Option<&[i64]> {
        let i = self.vertices.binary_search(&v).ok()?;
        Some(&self.characters[i])
    }
}

fn require_smooth(cfg: &Configuration) -> Result<()> {
    if cfg.is_smooth() {
        Ok(())
    } else {
        Err(Error::NotSmooth("Cartier data unavailable".into()))
    }
}

fn local_character(cfg: &Configuration, d: &ToricDivisor, v: usize) -> Result<Vec<i64>> {
    let fs = cfg.facets_containing_point(v);
    let rows: Vec<Vec<i64>> = fs.iter().map(|&j| cfg.facet_normal(j).to_vec()).collect();
    let rhs: Vec<i64> = fs.iter().map(|&j| -d.coeffs[j]).collect();
    linalg::solve_integer(&rows, &rhs)
        .ok_or_else(|| Error::Internal(format!("no local character at vertex {v}")))
}

/// Solves `<nu_F, u_v> = -a_F` for every facet `F` through each vertex `v`.
pub fn local_data(cfg: &Configuration, d: &ToricDivisor) -> Result<LocalData> {
    require_smooth(cfg)?;
    let vertices = cfg.vertices().to_vec();
    let characters = vertices
        .iter()
        .map(|&v| local_character(cfg, d, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalData {
        vertices,
        characters,
    })
}

/// `conv{u_v}`.
pub fn divisor_polytope(cfg: &Configuration, d: &ToricDivisor) -> Result<LatticePolytope> {
    LatticePolytope::from_points(local_data(cfg, d)?.characters)
}

/// Characters of the torus-invariant global sections of `O(D)`: the lattice
/// points of `{u : <nu_F, u> >= -a_F}`.
pub fn sections(cfg: &Configuration, d: &ToricDivisor) -> Result<Vec<Vec<i64>>> {
    require_smooth(cfg)?;
    let normals: Vec<Vec<i64>> = (0..cfg.num_facets())
        .map(|j| cfg.facet_normal(j).to_vec())
        .collect();
    let rhs: Vec<i64> = d.coeffs.iter().map(|a| -a).collect();
    inequality_lattice_points(&normals, &rhs)
}

/// Each `u_v` must be a vertex of `P_D` whose tangent cone lies in the tangent
/// cone of `conv A` at `v`. Unwinding the cones, this says every `u_w` satisfies
/// `<nu_F, u_w> >= -a_F` for every facet `F`.
pub fn is_basepoint_free(cfg: &Configuration, d: &ToricDivisor) -> Result<bool> {
    let ld = local_data(cfg, d)?;
    Ok((0..cfg.num_facets()).all(|j| {
        ld.characters
            .iter()
            .all(|u| linalg::dot(cfg.facet_normal(j), u) >= -d.coeffs[j])
    }))
}

pub fn class_is_basepoint_free(cfg: &Configuration, c: &DivisorClass) -> Result<bool> {
    is_basepoint_free(cfg, c.representative())
}

/// Some representative has all coefficients `>= 0` and the class is non-zero.
pub fn is_effective_nontrivial(cfg: &Configuration, c: &DivisorClass) -> Result<bool> {
    Ok(!c.is_zero() && !sections(cfg, c.representative())?.is_empty())
}

/// A representative of `c` with `u_v in M_tau` for all vertices `v` of `tau`,
/// obtained by subtracting `div(chi^{u_{v_0}})` for a vertex `v_0` of `tau`.
pub fn make_dagger_representative(
    cfg: &Configuration,
    c: &DivisorClass,
    tau: &Face,
) -> Result<ToricDivisor> {
    require_smooth(cfg)?;
    let d = c.representative();
    let v0 = *tau
        .members
        .iter()
        .find(|&&i| cfg.vertices().binary_search(&i).is_ok())
        .ok_or_else(|| Error::Internal("face without vertices".into()))?;
    let u0 = local_character(cfg, d, v0)?;
    let shifted = d.add(&ToricDivisor::principal(cfg, &u0));
    if cfg
        .facets_containing(tau)
        .iter()
        .any(|&j| shifted.coeffs[j] != 0)
    {
        return Err(Error::Internal(
            "shifted divisor still contains Y_tau".into(),
        ));
    }
    Ok(shifted)
}

struct Restriction {
    degree: i64,
    /// Image of the fixed point `e_0` of `L_pi`.
    w0: Vec<i64>,
    divisor: ToricDivisor,
}

fn restrict(cfg: &Configuration, c: &DivisorClass, p: &CayleyStructure) -> Result<Restriction> {
    let d = make_dagger_representative(cfg, c, &p.face)?;
    let proj = induced_projection(cfg, p)?;
    let l = p.length();
    let mut images: Vec<Option<Vec<i64>>> = vec![None; l + 1];
    for (i, fiber) in p.fibers.iter().enumerate() {
        for &v in fiber
            .iter()
            .filter(|v| cfg.vertices().binary_search(v).is_ok())
        {
            let u = local_character(cfg, &d, v)?;
            let w = proj.apply(&u).ok_or_else(|| {
                Error::InvalidCayleyRestriction(format!("local character at {v} is outside M_tau"))
            })?;
            match &images[i] {
                Some(prev) if *prev != w => {
                    return Err(Error::InvalidCayleyRestriction(format!(
                        "vertices of fiber {i} disagree"
                    )))
                }
                _ => images[i] = Some(w),
            }
        }
    }
    let images: Vec<Vec<i64>> = images
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidCayleyRestriction("fiber without a vertex".into()))?;
    let w0 = images[0].clone();
    let degree = if l == 0 { 0 } else { images[1][1] - w0[1] };
    for (i, w) in images.iter().enumerate() {
        let mut want = w0.clone();
        want[i] += degree;
        want[0] -= degree;
        if *w != want {
            return Err(Error::InvalidCayleyRestriction(
                "image is not a dilated standard simplex".into(),
            ));
        }
    }
    Ok(Restriction {
        degree,
        w0,
        divisor: d,
    })
}

/// Degree of `c` restricted to `L_pi`.
pub fn restriction_degree(
    cfg: &Configuration,
    c: &DivisorClass,
    p: &CayleyStructure,
) -> Result<i64> {
    Ok(restrict(cfg, c, p)?.degree)
}

/// Whether every section of `O(c)|_{L_pi}` lifts to a section of `O(c)`.
pub fn restricts_surjectively(
    cfg: &Configuration,
    c: &DivisorClass,
    p: &CayleyStructure,
) -> Result<bool> {
    let r = restrict(cfg, c, p)?;
    if r.degree < 0 {
        return Ok(true);
    }
    let proj = induced_projection(cfg, p)?;
    let image: BTreeSet<Vec<i64>> = sections(cfg, &r.divisor)?
        .iter()
        .filter_map(|u| proj.apply(u))
        .collect();
    // Lattice points of the simplex with vertices w0 + degree (e_i - e_0).
    let l = p.length();
    let mut base = r.w0.clone();
    base[0] -= r.degree;
    let mut target = BTreeSet::new();
    let mut y = vec![0i64; l + 1];
    compositions(&mut y, 0, r.degree, &mut |y| {
        target.insert(linalg::add(&base, y));
    });
    Ok(image == target)
}

/// Calls `f` on every `y >= 0` with `sum y = total`, filling from index `i`.
fn compositions(y: &mut Vec<i64>, i: usize, total: i64, f: &mut impl FnMut(&[i64])) {
    if i + 1 == y.len() {
        y[i] = total;
        f(y);
        y[i] = 0;
        return;
    }
    for a in 0..=total {
        y[i] = a;
        compositions(y, i + 1, total - a, f);
    }
    y[i] = 0;
}

/// Outcome of the check that every class restricts surjectively along every
/// structure below `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdaggerVerdict {
    pub holds: bool,
    /// First failing `(class index, structure)` in canonical order.
    pub witness: Option<(usize, CayleyStructure)>,
}

/// Checks all `(i, q)` with `q <= p` and `length(q) >= max(k, 1)`, drawing the
/// candidates `q` from `structures`.
pub fn satisfies_ddagger(
    cfg: &Configuration,
    classes: &[DivisorClass],
    p: &CayleyStructure,
    k: usize,
    structures: &[CayleyStructure],
) -> Result<DdaggerVerdict> {
    let below: Vec<&CayleyStructure> = structures
        .iter()
        .filter(|q| q.length() >= k.max(1) && leq(q, p))
        .collect();
    let grid: Vec<(usize, &CayleyStructure)> = below
        .iter()
        .flat_map(|q| (0..classes.len()).map(move |i| (i, *q)))
        .collect();
    let results = par::try_map(&grid, |&(i, q)| restricts_surjectively(cfg, &classes[i], q))?;
    let witness = grid
        .iter()
        .zip(results)
        .find(|(_, ok)| !ok)
        .map(|((i, q), _)| (*i, (*q).clone()));
    Ok(DdaggerVerdict {
        holds: witness.is_none(),
        witness,
    })
}
