use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, LatticeBasis};

pub type LatticePoint = Vec<i64>;

/// A finite set of distinct lattice points, stored in lexicographic order.
/// Point indices always refer to this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointConfiguration {
    ambient_rank: usize,
    points: Vec<LatticePoint>,
}

impl PointConfiguration {
    pub fn new(mut points: Vec<LatticePoint>) -> Result<Self> {
        let ambient_rank = points.first().ok_or(Error::EmptyConfiguration)?.len();
        if let Some(p) = points.iter().find(|p| p.len() != ambient_rank) {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                found: p.len(),
            });
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].clone()));
        }
        Ok(PointConfiguration {
            ambient_rank,
            points,
        })
    }

    /// Builds a configuration from a matrix whose columns are the points.
    pub fn from_columns(rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if ncols == 0 {
            return Err(Error::EmptyConfiguration);
        }
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: r.len(),
            });
        }
        Self::new(
            (0..ncols)
                .map(|j| rows.iter().map(|r| r[j]).collect())
                .collect(),
        )
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).ok()
    }

    /// Differences `p_i - p_0`.
    pub fn differences(&self) -> Vec<Vec<i64>> {
        let o = &self.points[0];
        self.points[1..].iter().map(|p| linalg::sub(p, o)).collect()
    }

    /// Rank of the difference lattice.
    pub fn dim(&self) -> usize {
        linalg::rank(&self.differences())
    }
}

/// `x |-> origin + sum_j x_j basis_j`, an isomorphism from `Z^d` onto the
/// affine lattice spanned by a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLatticeMap {
    origin: Vec<i64>,
    basis: LatticeBasis,
    basis_rows: Vec<Vec<i64>>,
}

impl AffineLatticeMap {
    pub fn identity(m: usize) -> Self {
        let basis = LatticeBasis::full(m);
        AffineLatticeMap {
            origin: vec![0; m],
            basis_rows: basis.rows().to_vec(),
            basis,
        }
    }

    pub fn origin(&self) -> &[i64] {
        &self.origin
    }

    pub fn basis_rows(&self) -> &[Vec<i64>] {
        &self.basis_rows
    }

    pub fn source_rank(&self) -> usize {
        self.basis_rows.len()
    }

    pub fn is_identity(&self) -> bool {
        self.origin.iter().all(|&x| x == 0)
            && self.basis_rows.len() == self.origin.len()
            && self
                .basis_rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    pub fn to_original(&self, x: &[i64]) -> Vec<i64> {
        linalg::add(&self.origin, &self.linear_to_original(x))
    }

    pub fn linear_to_original(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.origin.len()];
        for (c, row) in x.iter().zip(&self.basis_rows) {
            for (o, b) in out.iter_mut().zip(row) {
                *o += c * b;
            }
        }
        out
    }

    /// Inverse of `to_original`; `None` off the affine lattice.
    pub fn to_normalized(&self, u: &[i64]) -> Option<Vec<i64>> {
        self.linear_to_normalized(&linalg::sub(u, &self.origin))
    }

    pub fn linear_to_normalized(&self, v: &[i64]) -> Option<Vec<i64>> {
        self.basis.coords(v)
    }

    /// Pulls a functional on the original lattice back to normalized coordinates.
    pub fn pull_back_functional(&self, f: &[i64]) -> Vec<i64> {
        self.basis_rows.iter().map(|b| linalg::dot(f, b)).collect()
    }
}

/// Re-embeds `a` into `Z^d` so that differences of its points generate the
/// lattice. Returns the identity map when `a` is already normalized.
pub fn normalize_configuration(
    a: &PointConfiguration,
) -> Result<(PointConfiguration, AffineLatticeMap)> {
    let m = a.ambient_rank();
    let diffs = a.differences();
    let span = if diffs.is_empty() {
        LatticeBasis::span(m, &[vec![0; m]])?
    } else {
        LatticeBasis::span(m, &diffs)?
    };
    if span.rank() == m && span.is_full() && span.rows() == LatticeBasis::full(m).rows() {
        return Ok((a.clone(), AffineLatticeMap::identity(m)));
    }
    let origin = a.point(0).to_vec();
    let map = AffineLatticeMap {
        origin,
        basis_rows: span.rows().to_vec(),
        basis: span,
    };
    let pts = a
        .points()
        .iter()
        .map(|p| {
            map.to_normalized(p)
                .ok_or_else(|| Error::Internal("point outside its own span".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((PointConfiguration::new(pts)?, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rescales_index_two() {
        let a = PointConfiguration::new(vec![vec![0], vec![2]]).unwrap();
        let (b, map) = normalize_configuration(&a).unwrap();
        assert_eq!(b.points(), &[vec![0], vec![1]]);
        assert_eq!(map.to_original(&[1]), vec![2]);
    }

    #[test]
    fn simplex_is_fixed() {
        let a = PointConfiguration::new(vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let (b, map) = normalize_configuration(&a).unwrap();
        assert_eq!(a, b);
        assert!(map.is_identity());
    }

    #[test]
    fn lowers_dimension_and_is_idempotent() {
        let a = PointConfiguration::new(vec![
            vec![1, 1, 1],
            vec![2, 1, 0],
            vec![3, 1, -1],
            vec![1, 2, 1],
        ])
        .unwrap();
        let (b, map) = normalize_configuration(&a).unwrap();
        assert_eq!(b.ambient_rank(), 2);
        for p in b.points() {
            assert!(a.index_of(&map.to_original(p)).is_some());
        }
        let (c, map2) = normalize_configuration(&b).unwrap();
        assert_eq!(b, c);
        assert!(map2.is_identity());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            PointConfiguration::new(vec![]),
            Err(Error::EmptyConfiguration)
        );
        assert_eq!(
            PointConfiguration::new(vec![vec![1], vec![1]]),
            Err(Error::DuplicatePoint(vec![1]))
        );
        assert!(PointConfiguration::from_columns(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn single_point() {
        let a = PointConfiguration::new(vec![vec![3, 4]]).unwrap();
        let (b, map) = normalize_configuration(&a).unwrap();
        assert_eq!(b.ambient_rank(), 0);
        assert_eq!(b.len(), 1);
        assert_eq!(map.to_original(&[]), vec![3, 4]);
    }
}
