use crate::divisors::{divisor_polytope, is_basepoint_free, ToricDivisor};
use crate::error::{Error, Result};
use crate::lattice::{normalized_mixed_volume, Configuration, LatticePolytope};
use crate::linalg;

/// The nef divisor on `z` whose section polytope is `conv(points)`; the points
/// are in the normalized coordinates of `z`. The caller is responsible for the
/// normal fan of the polytope being refined by that of `z`.
pub fn nef_divisor_of_polytope(z: &Configuration, points: &[Vec<i64>]) -> Result<ToricDivisor> {
    if points.is_empty() {
        return Err(Error::InvalidDivisor("empty polytope".into()));
    }
    let coeffs = (0..z.num_facets())
        .map(|j| {
            -points
                .iter()
                .map(|u| linalg::dot(z.facet_normal(j), u))
                .min()
                .expect("non-empty")
        })
        .collect();
    ToricDivisor::new(z, coeffs)
}

/// Smallest `t` in `{0, 1, 2, 4, ...}` with `d + t H` nef.
fn nef_shift(z: &Configuration, d: &ToricDivisor, h: &ToricDivisor) -> Result<i64> {
    if is_basepoint_free(z, d)? {
        return Ok(0);
    }
    let mut t = 1i64;
    while t <= 1 << 24 {
        if is_basepoint_free(z, &d.add(&h.scale(t)))? {
            return Ok(t);
        }
        t *= 2;
    }
    Err(Error::Internal(
        "no ample shift makes the divisor nef".into(),
    ))
}

/// `D_1 ... D_d` on the smooth complete toric variety of `z`, `d = dim z`.
/// Each `D_i` is written as `(D_i + t_i H) - t_i H` with both parts nef and the
/// product is expanded multilinearly into mixed volumes of section polytopes.
pub fn toric_intersection_number(z: &Configuration, divisors: &[ToricDivisor]) -> Result<i128> {
    let d = z.dim();
    if divisors.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: divisors.len(),
        });
    }
    if !z.is_smooth() {
        return Err(Error::NotSmooth(
            "intersection numbers need a smooth variety".into(),
        ));
    }
    if d == 0 {
        return Ok(1);
    }
    let h = ToricDivisor::hyperplane(z);
    let mut pos: Vec<LatticePolytope> = Vec::with_capacity(d);
    let mut neg: Vec<Option<LatticePolytope>> = Vec::with_capacity(d);
    for div in divisors {
        let t = nef_shift(z, div, &h)?;
        pos.push(divisor_polytope(z, &div.add(&h.scale(t)))?);
        neg.push(if t == 0 {
            None
        } else {
            Some(divisor_polytope(z, &h.scale(t))?)
        });
    }
    let mut total = 0i128;
    'mask: for mask in 0u32..(1 << d) {
        let mut polys = Vec::with_capacity(d);
        for i in 0..d {
            if mask & (1 << i) == 0 {
                polys.push(pos[i].clone());
            } else {
                match &neg[i] {
                    Some(p) => polys.push(p.clone()),
                    None => continue 'mask,
                }
            }
        }
        let mv = normalized_mixed_volume(&polys)?;
        if mask.count_ones() % 2 == 0 {
            total += mv;
        } else {
            total -= mv;
        }
    }
    Ok(total)
}
