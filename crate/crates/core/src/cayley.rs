//! Cayley structures: surjections from a face onto the vertices of a standard
//! simplex that preserve affine relations.
//!
//! Each fiber of such a map is the locus where one barycentric coordinate is
//! 1, and its complement where that coordinate is 0, so both are faces of the
//! domain separated by an affine function. Conversely every partition of a
//! face into such "cut faces" is a Cayley structure. Enumeration is therefore
//! an exact-cover search over cut faces.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{is_subset, Budget, Configuration, Face};
use crate::linalg::{self, LatticeBasis};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CayleyStructure {
    pub face: Face,
    /// Fiber blocks over `e_0, ..., e_l`, each sorted, ordered by smallest member.
    pub fibers: Vec<Vec<usize>>,
}

impl CayleyStructure {
    /// Validates a fiber partition of `face` and puts it in canonical form.
    pub fn new(cfg: &Configuration, face: &Face, fibers: Vec<Vec<usize>>) -> Result<Self> {
        let mut fibers: Vec<Vec<usize>> = fibers
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        if fibers.iter().any(Vec::is_empty) {
            return Err(Error::InvalidCayleyRestriction("empty fiber".into()));
        }
        fibers.sort();
        let mut all: Vec<usize> = fibers.concat();
        all.sort_unstable();
        if all != face.members {
            return Err(Error::InvalidCayleyRestriction(
                "fibers do not partition the face".into(),
            ));
        }
        let s = CayleyStructure {
            face: face.clone(),
            fibers,
        };
        if !s.preserves_affine_relations(cfg) {
            return Err(Error::InvalidCayleyRestriction(
                "assignment is not affine".into(),
            ));
        }
        Ok(s)
    }

    pub fn length(&self) -> usize {
        self.fibers.len() - 1
    }

    /// Fiber index of point `i`, if `i` lies in the domain.
    pub fn assignment(&self, i: usize) -> Option<usize> {
        self.fibers.iter().position(|f| f.binary_search(&i).is_ok())
    }

    /// Checks that `u |-> e_{pi(u)}` extends to an affine map on the span of
    /// the face, which is equivalent to preserving all affine relations.
    pub fn preserves_affine_relations(&self, cfg: &Configuration) -> bool {
        let rows: Vec<Vec<i64>> = self
            .face
            .members
            .iter()
            .map(|&i| {
                let mut r = cfg.point(i).to_vec();
                r.push(1);
                r
            })
            .collect();
        (0..self.fibers.len()).all(|j| {
            let rhs: Vec<i64> = self
                .face
                .members
                .iter()
                .map(|&i| i64::from(self.fibers[j].binary_search(&i).is_ok()))
                .collect();
            linalg::is_consistent(&rows, &rhs)
        })
    }

    /// The restriction of this structure to a subface, if all fibers are hit.
    pub fn restrict(&self, cfg: &Configuration, sub: &Face) -> Option<CayleyStructure> {
        if !sub.is_subset_of(&self.face) {
            return None;
        }
        let fibers: Vec<Vec<usize>> = self
            .fibers
            .iter()
            .map(|f| {
                f.iter()
                    .copied()
                    .filter(|&i| sub.contains(i))
                    .collect::<Vec<_>>()
            })
            .collect();
        if fibers.iter().any(Vec::is_empty) {
            return None;
        }
        CayleyStructure::new(cfg, sub, fibers).ok()
    }
}

/// `p <= q`: the domain of `p` lies in that of `q` and `p` factors through `q`.
pub fn leq(p: &CayleyStructure, q: &CayleyStructure) -> bool {
    if !p.face.is_subset_of(&q.face) || p.length() > q.length() {
        return false;
    }
    q.fibers.iter().all(|qf| {
        let mut image = qf.iter().filter_map(|&i| p.assignment(i));
        match image.next() {
            None => true,
            Some(first) => image.all(|x| x == first),
        }
    })
}

/// Faces `G` of `tau` (proper, non-empty) whose complement in `tau` is also a
/// face and which are the level set 1 of an affine function vanishing on the
/// complement.
fn cut_faces(cfg: &Configuration, tau: &Face) -> Vec<Vec<usize>> {
    let sub: Vec<&Face> = cfg.subfaces(tau);
    let sets: HashSet<&Vec<usize>> = sub.iter().map(|f| &f.members).collect();
    let rows: Vec<Vec<i64>> = tau
        .members
        .iter()
        .map(|&i| {
            let mut r = cfg.point(i).to_vec();
            r.push(1);
            r
        })
        .collect();
    let mut out: Vec<Vec<usize>> = sub
        .iter()
        .filter(|g| g.members.len() < tau.members.len())
        .filter(|g| {
            let comp: Vec<usize> = tau
                .members
                .iter()
                .copied()
                .filter(|&i| !g.contains(i))
                .collect();
            sets.contains(&comp) && {
                let rhs: Vec<i64> = tau
                    .members
                    .iter()
                    .map(|&i| i64::from(g.contains(i)))
                    .collect();
                linalg::is_consistent(&rows, &rhs)
            }
        })
        .map(|g| g.members.clone())
        .collect();
    out.sort();
    out
}

fn exact_covers(
    universe: &[usize],
    blocks: &[Vec<usize>],
    nodes: &AtomicUsize,
    budget: usize,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut covered = vec![false; universe.len()];
    let pos = |x: usize| {
        universe
            .binary_search(&x)
            .expect("block member lies in the face")
    };
    let blocks_pos: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| b.iter().map(|&x| pos(x)).collect())
        .collect();
    fn recurse(
        blocks: &[Vec<usize>],
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &AtomicUsize,
        budget: usize,
    ) -> Result<()> {
        if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
            return Err(Error::BudgetExceeded {
                resource: "cayley search nodes",
                limit: budget,
            });
        }
        let Some(first) = covered.iter().position(|c| !c) else {
            out.push(chosen.clone());
            return Ok(());
        };
        for (bi, b) in blocks.iter().enumerate() {
            if b[0] != first || b.iter().any(|&x| covered[x]) {
                continue;
            }
            for &x in b {
                covered[x] = true;
            }
            chosen.push(bi);
            recurse(blocks, covered, chosen, out, nodes, budget)?;
            chosen.pop();
            for &x in b {
                covered[x] = false;
            }
        }
        Ok(())
    }
    let mut raw = Vec::new();
    recurse(
        &blocks_pos,
        &mut covered,
        &mut chosen,
        &mut raw,
        nodes,
        budget,
    )?;
    for sel in raw {
        out.push(sel.into_iter().map(|bi| blocks[bi].clone()).collect());
    }
    Ok(out)
}

/// All Cayley structures of length at least `min_length` (treated as at least
/// 1) on all faces, canonical and sorted.
pub fn enumerate_cayley_structures(
    cfg: &Configuration,
    min_length: usize,
    budget: &Budget,
) -> Result<Vec<CayleyStructure>> {
    let min_length = min_length.max(1);
    let faces: Vec<&Face> = cfg.faces().iter().filter(|f| f.dim >= min_length).collect();
    let nodes = AtomicUsize::new(0);
    let per_face = par::try_map(&faces, |tau| -> Result<Vec<CayleyStructure>> {
        let blocks = cut_faces(cfg, tau);
        let covers = exact_covers(&tau.members, &blocks, &nodes, budget.max_search_nodes)?;
        let mut out: Vec<CayleyStructure> = covers
            .into_iter()
            .filter(|c| c.len() > min_length)
            .map(|mut fibers| {
                fibers.sort();
                CayleyStructure {
                    face: (*tau).clone(),
                    fibers,
                }
            })
            .collect();
        out.sort_by(|a, b| a.fibers.cmp(&b.fibers));
        Ok(out)
    })?;
    Ok(per_face.into_iter().flatten().collect())
}

/// Structures of length at least `min_length` not strictly below any other.
pub fn maximal_cayley_structures(
    cfg: &Configuration,
    min_length: usize,
    budget: &Budget,
) -> Result<Vec<CayleyStructure>> {
    let all = enumerate_cayley_structures(cfg, min_length, budget)?;
    Ok(maximal_among(&all))
}

/// The elements of `all` not strictly below another element.
pub fn maximal_among(all: &[CayleyStructure]) -> Vec<CayleyStructure> {
    let keep = par::map(all, |s| {
        !all.iter().any(|t| {
            t != s
                && t.length() >= s.length()
                && t.face.members.len() >= s.face.members.len()
                && leq(s, t)
        })
    });
    all.iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(s, _)| s.clone())
        .collect()
}

/// `k`-dimensional faces of the domain on which the structure is injective.
pub fn pi_faces<'a>(
    cfg: &'a Configuration,
    p: &CayleyStructure,
    k: usize,
) -> Result<Vec<&'a Face>> {
    if k > p.length() {
        return Err(Error::LengthTooSmall {
            k,
            length: p.length(),
        });
    }
    Ok(cfg
        .faces()
        .iter()
        .filter(|f| f.dim == k && is_subset(&f.members, &p.face.members))
        .filter(|f| {
            let mut seen = vec![false; p.fibers.len()];
            f.members.iter().all(|&i| {
                let a = p.assignment(i).expect("member of the domain");
                !std::mem::replace(&mut seen[a], true)
            })
        })
        .collect())
}

/// `dim tau - l + (k+1)(l-k)`.
pub fn component_dimension(p: &CayleyStructure, k: usize) -> Result<i64> {
    let l = p.length();
    if k > l {
        return Err(Error::LengthTooSmall { k, length: l });
    }
    let (d, l, k) = (p.face.dim as i64, l as i64, k as i64);
    Ok(d - l + (k + 1) * (l - k))
}

/// The lattice map `M_tau -> M_l` with `v - v' |-> e_pi(v) - e_pi(v')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeProjection {
    basis: LatticeBasis,
    images: Vec<Vec<i64>>,
    length: usize,
}

impl LatticeProjection {
    pub fn domain(&self) -> &LatticeBasis {
        &self.basis
    }

    /// Image of `u` in `Z^{l+1}` (coordinate sum zero), or `None` if `u` is not
    /// in `M_tau`.
    pub fn apply(&self, u: &[i64]) -> Option<Vec<i64>> {
        let c = self.basis.coords(u)?;
        let mut out = vec![0; self.length + 1];
        for (ci, img) in c.iter().zip(&self.images) {
            for (o, y) in out.iter_mut().zip(img) {
                *o += ci * y;
            }
        }
        Some(out)
    }

    /// The `l x rank` matrix of the map from the Hermite basis of `M_tau` to the
    /// basis `e_i - e_0` of `M_l`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (1..=self.length)
            .map(|i| self.images.iter().map(|img| img[i]).collect())
            .collect()
    }
}

pub fn induced_projection(cfg: &Configuration, p: &CayleyStructure) -> Result<LatticeProjection> {
    let m = &p.face.members;
    let v0 = m[0];
    let a0 = p.assignment(v0).expect("member");
    let l = p.length();
    let diffs: Vec<Vec<i64>> = m[1..]
        .iter()
        .map(|&i| linalg::sub(cfg.point(i), cfg.point(v0)))
        .collect();
    let imgs: Vec<Vec<i64>> = m[1..]
        .iter()
        .map(|&i| {
            let mut y = vec![0; l + 1];
            y[p.assignment(i).expect("member")] += 1;
            y[a0] -= 1;
            y
        })
        .collect();
    let d = cfg.dim();
    let (basis, transform) = if diffs.is_empty() {
        (LatticeBasis::span(d, &[vec![0; d]])?, Vec::new())
    } else {
        linalg::hermite_with_transform(d, &diffs)?
    };
    let images = transform
        .iter()
        .map(|row| {
            let mut acc = vec![0; l + 1];
            for (c, y) in row.iter().zip(&imgs) {
                for (a, b) in acc.iter_mut().zip(y) {
                    *a += c * b;
                }
            }
            acc
        })
        .collect();
    Ok(LatticeProjection {
        basis,
        images,
        length: l,
    })
}
