//! Exact convex hulls by the double description method.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{self, narrow};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

fn dot128(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn primitive128(v: &[i128]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i128, |g, &x| {
        let (mut a, mut b) = (g.abs(), x.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    });
    v.iter()
        .map(|&x| narrow(if g == 0 { x } else { x / g }, "extreme ray"))
        .collect()
}

/// Extreme rays of the pointed cone `{y : row . y >= 0 for all rows}`.
///
/// `rows` must have full column rank. Rays are primitive integer vectors,
/// returned in sorted order.
pub fn extreme_rays(rows: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let dim = rows.first().map_or(0, Vec::len);
    let basis = linalg::independent_rows(rows);
    if basis.len() != dim || dim == 0 {
        return Err(Error::Internal(
            "extreme_rays needs full column rank".into(),
        ));
    }
    let sq: Vec<Vec<i64>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let n = rows.len();

    let mut rays: Vec<(Vec<i64>, Bits)> = Vec::with_capacity(dim);
    for j in 0..dim {
        let rhs: Vec<i64> = (0..dim).map(|i| i64::from(i == j)).collect();
        let x = linalg::solve_square(&sq, &rhs)
            .ok_or_else(|| Error::Internal("singular initial basis".into()))?;
        let den = x.iter().fold(num_bigint::BigInt::from(1), |acc, q| {
            num_integer::Integer::lcm(&acc, q.denom())
        });
        let ints: Vec<i128> = x
            .iter()
            .map(|q| {
                let v = q.numer() * (&den / q.denom());
                i128::try_from(v).map_err(|_| Error::Overflow("extreme ray"))
            })
            .collect::<Result<_>>()?;
        let mut z = Bits::new(n);
        for (k, &i) in basis.iter().enumerate() {
            if k != j {
                z.set(i);
            }
        }
        rays.push((primitive128(&ints)?, z));
    }

    let in_basis: BTreeSet<usize> = basis.iter().copied().collect();
    for (ri, row) in rows.iter().enumerate() {
        if in_basis.contains(&ri) {
            continue;
        }
        let vals: Vec<i128> = rays.iter().map(|(r, _)| dot128(row, r)).collect();
        let mut next: Vec<(Vec<i64>, Bits)> = Vec::new();
        for ((r, z), &v) in rays.iter().zip(&vals) {
            if v > 0 {
                next.push((r.clone(), z.clone()));
            } else if v == 0 {
                let mut z = z.clone();
                z.set(ri);
                next.push((r.clone(), z));
            }
        }
        for (p, &vp) in vals.iter().enumerate().filter(|(_, &v)| v > 0) {
            for (q, &vq) in vals.iter().enumerate().filter(|(_, &v)| v < 0) {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() + 2 < dim {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(o, (_, zo))| o != p && o != q && common.subset_of(zo));
                if blocked {
                    continue;
                }
                let combo: Vec<i128> = rays[p]
                    .0
                    .iter()
                    .zip(&rays[q].0)
                    .map(|(&a, &b)| vp * b as i128 - vq * a as i128)
                    .collect();
                let mut z = common;
                z.set(ri);
                next.push((primitive128(&combo)?, z));
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<i64>> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// A facet of a full-dimensional point set: the points with `<normal, p> = offset`
/// while every point satisfies `<normal, p> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullFacet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub members: Vec<usize>,
}

/// Facets of the convex hull of `points`, which must affinely span their
/// ambient space. Sorted by member list.
pub fn facets(points: &[Vec<i64>]) -> Result<Vec<HullFacet>> {
    let d = points.first().map_or(0, Vec::len);
    if d == 0 {
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<i64>> = points
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(1);
            r
        })
        .collect();
    let mut out = Vec::new();
    for ray in extreme_rays(&rows)? {
        let normal = ray[..d].to_vec();
        let vals: Vec<i64> = points.iter().map(|p| linalg::dot(&normal, p)).collect();
        let offset = *vals.iter().min().unwrap();
        let members = (0..points.len()).filter(|&i| vals[i] == offset).collect();
        out.push(HullFacet {
            normal,
            offset,
            members,
        });
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

/// Vertices of `{u : <normals[i], u> >= rhs[i]}` as `(numerator, denominator)`
/// pairs with positive denominator. The normals must span the dual space. An
/// empty result means the polyhedron is empty.
pub fn rational_vertices(normals: &[Vec<i64>], rhs: &[i64]) -> Result<Vec<(Vec<i64>, i64)>> {
    let d = normals.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<i64>> = normals
        .iter()
        .zip(rhs)
        .map(|(n, &b)| {
            let mut r = n.clone();
            r.push(-b);
            r
        })
        .collect();
    let mut t = vec![0; d + 1];
    t[d] = 1;
    rows.push(t);
    let mut verts = Vec::new();
    for ray in extreme_rays(&rows)? {
        let t = ray[d];
        if t == 0 {
            return Err(Error::Unbounded);
        }
        verts.push((ray[..d].to_vec(), t));
    }
    verts.sort();
    Ok(verts)
}

/// Vertices of `{u : <normals[i], u> >= rhs[i]}`, which must all be lattice
/// points. An empty result means the polyhedron is empty.
pub fn polyhedron_vertices(normals: &[Vec<i64>], rhs: &[i64]) -> Result<Vec<Vec<i64>>> {
    let mut verts = Vec::new();
    for (num, t) in rational_vertices(normals, rhs)? {
        if num.iter().any(|x| x % t != 0) {
            return Err(Error::InvalidDivisor(
                "polytope has a non-lattice vertex".into(),
            ));
        }
        verts.push(num.iter().map(|x| x / t).collect());
    }
    verts.sort();
    Ok(verts)
}
