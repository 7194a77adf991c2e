use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::hull;
use super::point::{normalize_configuration, AffineLatticeMap, PointConfiguration};
use crate::error::{Error, Result};
use crate::linalg;

/// A face of a configuration: the points minimizing `supporting_normal`.
/// The full configuration is a face of itself with no normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub members: Vec<usize>,
    pub dim: usize,
    pub supporting_normal: Option<Vec<i64>>,
}

impl Face {
    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        is_subset(&self.members, &other.members)
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_faces: usize,
    pub max_search_nodes: usize,
    pub max_fixed_points: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_faces: 100_000,
            max_search_nodes: 5_000_000,
            max_fixed_points: 1_000_000,
        }
    }
}

/// A normalized configuration with its face lattice and facet data.
#[derive(Clone, Debug)]
pub struct Configuration {
    points: PointConfiguration,
    map: AffineLatticeMap,
    original: Vec<Vec<i64>>,
    faces: Vec<Face>,
    facets: Vec<usize>,
    normals: Vec<Vec<i64>>,
    offsets: Vec<i64>,
    vertices: Vec<usize>,
    smooth: bool,
}

impl Configuration {
    pub fn new(points: &PointConfiguration) -> Result<Self> {
        Self::with_budget(points, &Budget::default())
    }

    pub fn from_points(points: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(&PointConfiguration::new(points)?)
    }

    pub fn from_columns(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(&PointConfiguration::from_columns(rows)?)
    }

    pub fn with_budget(input: &PointConfiguration, budget: &Budget) -> Result<Self> {
        let (points, map) = normalize_configuration(input)?;
        let original = points.points().iter().map(|p| map.to_original(p)).collect();
        let hull_facets = hull::facets(points.points())?;
        let d = points.ambient_rank();
        let n = points.len();

        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        for f in &hull_facets {
            if sets.insert(f.members.clone()) {
                queue.push_back(f.members.clone());
            }
        }
        while let Some(s) = queue.pop_front() {
            for f in &hull_facets {
                let t = intersect(&s, &f.members);
                if !t.is_empty() && !sets.contains(&t) {
                    if sets.len() + 1 >= budget.max_faces {
                        return Err(Error::BudgetExceeded {
                            resource: "faces",
                            limit: budget.max_faces,
                        });
                    }
                    sets.insert(t.clone());
                    queue.push_back(t);
                }
            }
        }
        sets.insert((0..n).collect());

        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|members| {
                let pts: Vec<Vec<i64>> =
                    members.iter().map(|&i| points.point(i).to_vec()).collect();
                let diffs: Vec<Vec<i64>> =
                    pts[1..].iter().map(|p| linalg::sub(p, &pts[0])).collect();
                let dim = linalg::rank(&diffs);
                let supporting_normal = if members.len() == n {
                    None
                } else {
                    let mut nu = vec![0; d];
                    for f in hull_facets
                        .iter()
                        .filter(|f| is_subset(&members, &f.members))
                    {
                        nu = linalg::add(&nu, &f.normal);
                    }
                    Some(nu)
                };
                Face {
                    members,
                    dim,
                    supporting_normal,
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.members).cmp(&(b.dim, &b.members)));

        let index: HashMap<&Vec<usize>, usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (&f.members, i))
            .collect();
        let facets: Vec<usize> = hull_facets.iter().map(|f| index[&f.members]).collect();
        let mut order: Vec<usize> = (0..facets.len()).collect();
        order.sort_by_key(|&i| facets[i]);
        let facets_sorted: Vec<usize> = order.iter().map(|&i| facets[i]).collect();
        let normals = order
            .iter()
            .map(|&i| hull_facets[i].normal.clone())
            .collect();
        let offsets = order.iter().map(|&i| hull_facets[i].offset).collect();
        let vertices = faces
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| f.members[0])
            .collect();

        let mut cfg = Configuration {
            points,
            map,
            original,
            faces,
            facets: facets_sorted,
            normals,
            offsets,
            vertices,
            smooth: false,
        };
        cfg.smooth = cfg.compute_smooth();
        Ok(cfg)
    }

    pub fn dim(&self) -> usize {
        self.points.ambient_rank()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &PointConfiguration {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[i64] {
        self.points.point(i)
    }

    /// The input coordinates of normalized point `i`.
    pub fn original_point(&self, i: usize) -> &[i64] {
        &self.original[i]
    }

    pub fn map(&self) -> &AffineLatticeMap {
        &self.map
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn full_face(&self) -> &Face {
        self.faces.last().expect("configuration has a full face")
    }

    pub fn face_index(&self, members: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.members == members)
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// The face underlying facet `j`.
    pub fn facet(&self, j: usize) -> &Face {
        &self.faces[self.facets[j]]
    }

    /// Primitive inner normal of facet `j`.
    pub fn facet_normal(&self, j: usize) -> &[i64] {
        &self.normals[j]
    }

    /// `h_F` with `<nu_F, u> >= h_F` on the configuration.
    pub fn facet_offset(&self, j: usize) -> i64 {
        self.offsets[j]
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// Facets (by facet index) containing every member of `face`.
    pub fn facets_containing(&self, face: &Face) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&j| face.is_subset_of(self.facet(j)))
            .collect()
    }

    pub fn facets_containing_point(&self, i: usize) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&j| self.facet(j).contains(i))
            .collect()
    }

    /// Faces contained in `face`, in canonical order.
    pub fn subfaces(&self, face: &Face) -> Vec<&Face> {
        self.faces.iter().filter(|f| f.is_subset_of(face)).collect()
    }

    /// The facet whose points are exactly the minimizers of `functional`
    /// (given in input coordinates) over the configuration.
    pub fn facet_by_functional(&self, functional: &[i64]) -> Option<usize> {
        if functional.len() != self.map.origin().len() {
            return None;
        }
        let vals: Vec<i64> = self
            .original
            .iter()
            .map(|p| linalg::dot(functional, p))
            .collect();
        let min = *vals.iter().min()?;
        let members: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == min).collect();
        (0..self.facets.len()).find(|&j| self.facet(j).members == members)
    }

    /// Primitive edge directions at vertex `v`, one per edge.
    pub fn edge_directions(&self, v: usize) -> Vec<Vec<i64>> {
        self.faces
            .iter()
            .filter(|f| f.dim == 1 && f.contains(v))
            .map(|f| {
                let w = f
                    .members
                    .iter()
                    .find(|&&w| w != v)
                    .expect("edge has two points");
                linalg::primitive(&linalg::sub(self.point(*w), self.point(v)))
            })
            .collect()
    }

    fn compute_smooth(&self) -> bool {
        let d = self.dim();
        self.vertices.iter().all(|&v| {
            let dirs = self.edge_directions(v);
            dirs.len() == d
                && linalg::is_unimodular(&dirs)
                && dirs.iter().all(|e| {
                    self.points
                        .index_of(&linalg::add(self.point(v), e))
                        .is_some()
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(n: usize) -> Vec<Vec<i64>> {
        let mut pts = vec![vec![0; n]];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            pts.push(e);
        }
        pts
    }

    #[test]
    fn simplex_faces() {
        let c = Configuration::from_points(simplex(2)).unwrap();
        assert_eq!(c.faces().len(), 7);
        assert_eq!(c.vertices().len(), 3);
        assert_eq!(c.num_facets(), 3);
        assert!(c.is_smooth());
        let v = c.face(0);
        assert_eq!(c.facets_containing(v).len(), 2);
    }

    #[test]
    fn square_faces() {
        let c = Configuration::from_points(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
            .unwrap();
        assert_eq!(c.faces().len(), 9);
        let edge = c.faces().iter().find(|f| f.dim == 1).unwrap();
        assert_eq!(c.facets_containing(edge).len(), 1);
        assert!(c.is_smooth());
    }

    #[test]
    fn weighted_projective_plane_is_singular() {
        let c = Configuration::from_points(vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1]])
            .unwrap();
        assert!(!c.is_smooth());
    }

    #[test]
    fn index_two_triangle_normalizes_to_a_smooth_one() {
        let c = Configuration::from_points(vec![vec![0, 0], vec![1, 0], vec![1, 2]]).unwrap();
        assert!(c.is_smooth());
    }

    #[test]
    fn missing_edge_point_is_not_smooth() {
        let c = Configuration::from_points(vec![
            vec![0, 0],
            vec![1, 0],
            vec![2, 0],
            vec![0, 1],
            vec![0, 2],
        ])
        .unwrap();
        assert_eq!(c.dim(), 2);
        assert!(!c.is_smooth());
    }

    #[test]
    fn supporting_normals_cut_out_faces() {
        let c = Configuration::from_points(simplex(3)).unwrap();
        for f in c.faces() {
            if let Some(nu) = &f.supporting_normal {
                let vals: Vec<i64> = c
                    .points()
                    .points()
                    .iter()
                    .map(|p| linalg::dot(nu, p))
                    .collect();
                let min = *vals.iter().min().unwrap();
                let arg: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == min).collect();
                assert_eq!(arg, f.members);
            }
        }
    }

    #[test]
    fn meet_closed() {
        let mut pts = Vec::new();
        for p in simplex(2) {
            for h in 0..2 {
                pts.push(vec![p[0], p[1], h]);
            }
        }
        let c = Configuration::from_points(pts).unwrap();
        for f in c.faces() {
            for g in c.faces() {
                let m = intersect(&f.members, &g.members);
                if !m.is_empty() {
                    assert!(c.face_index(&m).is_some());
                }
            }
        }
    }

    #[test]
    fn face_budget() {
        let b = Budget {
            max_faces: 5,
            ..Budget::default()
        };
        let p = PointConfiguration::new(simplex(3)).unwrap();
        assert!(matches!(
            Configuration::with_budget(&p, &b),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
