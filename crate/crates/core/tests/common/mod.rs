#![allow(dead_code)]

use fano_toric_core::divisors::{class_is_basepoint_free, DivisorClass, ToricDivisor};
use fano_toric_core::Configuration;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub fn class_of(cfg: &Configuration, terms: &[(&[i64], i64)]) -> DivisorClass {
    let d = terms
        .iter()
        .fold(ToricDivisor::zero(cfg), |acc, (normal, a)| {
            let j = cfg.facet_by_functional(normal).expect("facet");
            acc.add(&ToricDivisor::prime(cfg, j).scale(*a))
        });
    DivisorClass::new(cfg, d).unwrap()
}

/// Up to `want` distinct non-zero basepoint free classes, found by sampling
/// facet coefficients in `[-2, 2]`.
pub fn random_bpf_classes<R: Rng>(
    cfg: &Configuration,
    rng: &mut R,
    want: usize,
) -> Vec<DivisorClass> {
    let mut out: Vec<DivisorClass> = Vec::new();
    for _ in 0..400 {
        if out.len() == want {
            break;
        }
        let coeffs = (0..cfg.num_facets())
            .map(|_| rng.gen_range(-2..=2))
            .collect();
        let c = DivisorClass::new(cfg, ToricDivisor::new(cfg, coeffs).unwrap()).unwrap();
        if !c.is_zero() && !out.contains(&c) && class_is_basepoint_free(cfg, &c).unwrap() {
            out.push(c);
        }
    }
    out
}

/// Rational nullspace of the rows `(p, 1)`: the affine relations among the
/// points.
fn affine_relations(points: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let n = points.len();
    let m = points[0].len() + 1;
    // Columns are points; rows are coordinates plus the constant row.
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let x = if r + 1 == m { 1 } else { points[c][r] };
                    BigRational::from_integer(x.into())
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = BigRational::one() / a[row][col].clone();
        for x in a[row].iter_mut() {
            *x *= inv.clone();
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let sub = f.clone() * a[row][c].clone();
                    a[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

fn set_partitions(n: usize, f: &mut impl FnMut(&[usize])) {
    fn go(i: usize, n: usize, blocks: usize, lab: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if i == n {
            f(lab);
            return;
        }
        for b in 0..=blocks {
            lab.push(b);
            go(i + 1, n, blocks.max(b + 1), lab, f);
            lab.pop();
        }
    }
    go(0, n, 0, &mut Vec::new(), f);
}

/// Brute-force Cayley structures: every partition of every face into at least
/// two blocks such that sending block `i` to `e_i` kills all affine relations.
/// Returns sorted `(face members, sorted fibers)` pairs.
pub fn brute_force_cayley(cfg: &Configuration) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for face in cfg.faces() {
        let pts: Vec<Vec<i64>> = face
            .members
            .iter()
            .map(|&i| cfg.point(i).to_vec())
            .collect();
        let rel = affine_relations(&pts);
        set_partitions(pts.len(), &mut |lab| {
            let blocks = lab.iter().max().map_or(0, |b| b + 1);
            if blocks < 2 {
                return;
            }
            let ok = rel.iter().all(|r| {
                (0..blocks).all(|b| {
                    lab.iter()
                        .zip(r)
                        .filter(|(l, _)| **l == b)
                        .fold(BigRational::zero(), |acc, (_, x)| acc + x)
                        .is_zero()
                })
            });
            if ok {
                let mut fibers: Vec<Vec<usize>> = (0..blocks)
                    .map(|b| {
                        (0..lab.len())
                            .filter(|&i| lab[i] == b)
                            .map(|i| face.members[i])
                            .collect()
                    })
                    .collect();
                fibers.sort();
                out.push((face.members.clone(), fibers));
            }
        });
    }
    out.sort();
    out
}
