//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Gcd of all entries (0 for the zero vector).
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Divides by the content; the zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = content(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn narrow(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

/// A sublattice of `Z^n` given by a basis in row-style Hermite normal form:
/// pivot columns strictly increase, pivots are positive, and entries above a
/// pivot are reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ambient: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl LatticeBasis {
    /// Hermite basis of the lattice spanned by `generators` in `Z^ambient`.
    pub fn span(ambient: usize, generators: &[Vec<i64>]) -> Result<Self> {
        Ok(hermite_with_transform(ambient, generators)?.0)
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| (0..ambient).map(|j| i64::from(i == j)).collect())
            .collect();
        LatticeBasis {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient && self.index() == 1
    }

    /// Product of the pivots; equals the index of the lattice in its
    /// saturation when pivot columns are the leading columns.
    pub fn index(&self) -> i64 {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(r, &p)| r[p])
            .product()
    }

    /// Integer coordinates of `v` in this basis, or `None` if `v` is not in
    /// the lattice.
    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut residual = v.to_vec();
        let mut out = Vec::with_capacity(self.rank());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if residual[p] % row[p] != 0 {
                return None;
            }
            let x = residual[p] / row[p];
            if x != 0 {
                for (r, b) in residual.iter_mut().zip(row) {
                    *r -= x * b;
                }
            }
            out.push(x);
        }
        residual.iter().all(|&r| r == 0).then_some(out)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coords(v).is_some()
    }

    /// Canonical representative of `v` modulo the lattice: entries in pivot
    /// columns are reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = out[p].div_euclid(row[p]);
            if q != 0 {
                for (o, b) in out.iter_mut().zip(row) {
                    *o -= q * b;
                }
            }
        }
        out
    }

    /// `sum_j c_j b_j`.
    pub fn combine(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            for (o, b) in out.iter_mut().zip(row) {
                *o += c * b;
            }
        }
        out
    }
}

/// Hermite basis of the row span together with a transform `T` such that
/// basis row `j` equals `sum_i T[j][i] * generators[i]`.
pub fn hermite_with_transform(
    ambient: usize,
    generators: &[Vec<i64>],
) -> Result<(LatticeBasis, Vec<Vec<i64>>)> {
    let n = generators.len();
    let mut a: Vec<Vec<i128>> = generators
        .iter()
        .map(|g| {
            debug_assert_eq!(g.len(), ambient);
            g.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ambient {
        if r == n {
            break;
        }
        loop {
            let best = (r..n)
                .filter(|&i| a[i][col] != 0)
                .min_by_key(|&i| a[i][col].abs());
            let Some(best) = best else { break };
            a.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..n {
                if a[i][col] != 0 {
                    let q = a[i][col].div_euclid(a[r][col]);
                    row_axpy(&mut a, i, r, -q);
                    row_axpy(&mut u, i, r, -q);
                    if a[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < n && a[r][col] != 0 {
            if a[r][col] < 0 {
                a[r].iter_mut().for_each(|x| *x = -*x);
                u[r].iter_mut().for_each(|x| *x = -*x);
            }
            for i in 0..r {
                let q = a[i][col].div_euclid(a[r][col]);
                if q != 0 {
                    row_axpy(&mut a, i, r, -q);
                    row_axpy(&mut u, i, r, -q);
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    let rows = a[..r]
        .iter()
        .map(|row| row.iter().map(|&x| narrow(x, "hermite form")).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let transform = u[..r]
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| narrow(x, "hermite transform"))
                .collect()
        })
        .collect::<Result<Vec<Vec<i64>>>>()?;
    Ok((
        LatticeBasis {
            ambient,
            rows,
            pivots,
        },
        transform,
    ))
}

fn row_axpy(m: &mut [Vec<i128>], target: usize, source: usize, factor: i128) {
    if factor == 0 {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = m.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        *x += factor * y;
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    match rows.first() {
        None => 0,
        Some(r) => LatticeBasis::span(r.len(), rows)
            .map(|b| b.rank())
            .unwrap_or_else(|_| rational_rank(rows)),
    }
}

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| to_rational(r)).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            for i in r + 1..m.len() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
            r += 1;
        }
    }
    r
}

pub fn to_rational(v: &[i64]) -> Vec<BigRational> {
    v.iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect()
}

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily
/// in order.
pub fn independent_rows(rows: &[Vec<i64>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = to_rational(row);
        for (e, &p) in echelon.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = &v[p] / &e[p];
                for j in 0..v.len() {
                    let t = &f * &e[j];
                    v[j] -= t;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            echelon.push(v);
            pivots.push(p);
            chosen.push(idx);
        }
    }
    chosen
}

/// Solves the square system `m x = b` over the rationals; `None` if singular.
pub fn solve_square(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = to_rational(row);
            r.push(BigRational::from_integer(BigInt::from(bi)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = BigRational::one() / &a[c][c];
        for j in c..=n {
            a[c][j] = &a[c][j] * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Solves `m x = b` for an integer vector `x`, where `m` has full column rank.
/// Returns `None` when there is no solution or it is not integral.
pub fn solve_integer(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    solve_rational(m, b)?
        .iter()
        .map(|q| {
            if q.is_integer() {
                i64::try_from(q.to_integer()).ok()
            } else {
                None
            }
        })
        .collect()
}

/// Solves `m x = b` over the rationals where `m` has full column rank;
/// `None` if inconsistent.
pub fn solve_rational(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let idx = independent_rows(m);
    let cols = m.first().map_or(0, Vec::len);
    if idx.len() != cols {
        return None;
    }
    let sq: Vec<Vec<i64>> = idx.iter().map(|&i| m[i].clone()).collect();
    let rhs: Vec<i64> = idx.iter().map(|&i| b[i]).collect();
    let x = solve_square(&sq, &rhs)?;
    let ok = m.iter().zip(b).all(|(row, &bi)| {
        let v: BigRational = row.iter().zip(&x).map(|(&a, q)| q * BigInt::from(a)).sum();
        v == BigRational::from_integer(BigInt::from(bi))
    });
    ok.then_some(x)
}

/// Whether `m x = b` has a rational solution.
pub fn is_consistent(m: &[Vec<i64>], b: &[i64]) -> bool {
    let aug: Vec<Vec<i64>> = m
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut r = r.clone();
            r.push(bi);
            r
        })
        .collect();
    rank(m) == rank(&aug)
}

pub fn is_unimodular(m: &[Vec<i64>]) -> bool {
    m.len() == m.first().map_or(0, Vec::len) && det(m).abs() == 1
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn ratio_sign(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}
