use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bundle::{universal_bundle_for_face, SplitBundle};
use crate::analysis::binomial;
use crate::cayley::{pi_faces, CayleyStructure};
use crate::error::{Error, Result};
use crate::lattice::{Budget, Configuration};
use crate::linalg;
use crate::par;

const MAX_ATTEMPTS: usize = 64;
const XI_RANGE: i64 = 1 << 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationOptions {
    /// Seed for the evaluation vector; attempt `t` uses `seed + t`.
    pub seed: u64,
    /// Index, among the `l`-dimensional pi-faces, of the face `{v_i}` used to
    /// build `G_i = pi^{-1}(e_i) - v_i`.
    pub generator_face: usize,
    /// Index of the pi-face `{v'_i}` whose points linearize `L_i`: the torus
    /// acts on `L_i` near `b` by `w_i(b) + v'_i`. Defaults to `generator_face`,
    /// for which the characters are the points of the configuration.
    pub linearization_face: Option<usize>,
}

/// A torus-fixed point of `Gr(k+1, E)`: a vertex of `Z_pi` and the summands
/// spanning the plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub vertex: usize,
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationResult {
    pub count: i128,
    pub dimension: usize,
    pub fixed_points: usize,
    pub xi: Vec<i64>,
    pub attempts: usize,
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

fn compositions(total: i64, parts: usize, cur: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if cur.len() + 1 == parts {
        cur.push(total);
        f(cur);
        cur.pop();
        return;
    }
    for a in 0..=total {
        cur.push(a);
        compositions(total - a, parts, cur, f);
        cur.pop();
    }
}

/// Torus data at one vertex of `Z_pi`, in the characters of the big torus.
struct VertexData {
    /// Characters of `L_i^*`'s dual at this vertex, i.e. the weights of `E`'s
    /// summands as coordinates of `P^{|A|-1}`.
    chars: Vec<Vec<i64>>,
    /// Tangent weights of `Z_pi`.
    edges: Vec<Vec<i64>>,
}

fn vertex_data(bundle: &SplitBundle, offsets: &[Vec<i64>]) -> Vec<VertexData> {
    let z = &bundle.base.config;
    z.vertices()
        .iter()
        .zip(&bundle.local_generators)
        .map(|(&b, gens)| VertexData {
            chars: gens
                .iter()
                .zip(offsets)
                .map(|(w, o)| linalg::add(w, o))
                .collect(),
            edges: z
                .edge_directions(b)
                .iter()
                .map(|e| z.map().linear_to_original(e))
                .collect(),
        })
        .collect()
}

fn is_generic(data: &[VertexData], xi: &[i64]) -> bool {
    data.iter().all(|vd| {
        vd.edges.iter().all(|e| linalg::dot(e, xi) != 0)
            && vd.chars.iter().enumerate().all(|(i, a)| {
                vd.chars[i + 1..]
                    .iter()
                    .all(|b| linalg::dot(a, xi) != linalg::dot(b, xi))
            })
    })
}

/// Contribution of all fixed points over one vertex.
fn vertex_sum(
    vd: &VertexData,
    xi: &[i64],
    k: usize,
    deltas: &[i64],
    subsets: &[Vec<usize>],
) -> BigRational {
    let e: Vec<i128> = vd
        .chars
        .iter()
        .map(|c| linalg::dot(c, xi) as i128)
        .collect();
    let tangent: BigInt = vd
        .edges
        .iter()
        .map(|w| BigInt::from(linalg::dot(w, xi)))
        .product();
    let mut total = BigRational::zero();
    for s in subsets {
        let mut denom = tangent.clone();
        for &i in s {
            for j in (0..e.len()).filter(|j| !s.contains(j)) {
                denom *= BigInt::from(e[j] - e[i]);
            }
        }
        // Roots of S* are -e_i; those of Sym^delta S* are their delta-fold sums.
        let mut numer = BigInt::one();
        let mut cur = Vec::with_capacity(k + 1);
        for &d in deltas {
            compositions(d, k + 1, &mut cur, &mut |a| {
                let root: i128 = a.iter().zip(s).map(|(&ai, &i)| ai as i128 * e[i]).sum();
                numer *= BigInt::from(-root);
            });
        }
        total += BigRational::new(numer, denom);
    }
    total
}

/// Number of `k`-planes on a general complete intersection in the component
/// of `p`, as `int_{Gr(k+1,E)} prod_i c_top(Sym^{delta_i} S*)`.
pub fn count_k_planes(
    cfg: &Configuration,
    p: &CayleyStructure,
    k: usize,
    deltas: &[i64],
    budget: &Budget,
) -> Result<i128> {
    Ok(count_k_planes_with(cfg, p, k, deltas, &LocalizationOptions::default(), budget)?.count)
}

pub fn count_k_planes_with(
    cfg: &Configuration,
    p: &CayleyStructure,
    k: usize,
    deltas: &[i64],
    opts: &LocalizationOptions,
    budget: &Budget,
) -> Result<LocalizationResult> {
    let l = p.length();
    if k > l {
        return Err(Error::LengthTooSmall { k, length: l });
    }
    if let Some(&d) = deltas.iter().find(|&&d| d < 0) {
        return Err(Error::NegativeDegree(d));
    }
    if !cfg.is_smooth() {
        return Err(Error::NotSmooth("Y_A is singular".into()));
    }
    let faces = pi_faces(cfg, p, l)?;
    let pick = |i: usize| {
        faces
            .get(i)
            .copied()
            .ok_or_else(|| Error::NotPiFaceChain(format!("no pi-face with index {i}")))
    };
    let bundle = universal_bundle_for_face(cfg, p, pick(opts.generator_face)?)?;
    let offsets: Vec<Vec<i64>> = match opts.linearization_face {
        None => bundle
            .pi_face
            .iter()
            .map(|&v| cfg.point(v).to_vec())
            .collect(),
        Some(i) => universal_bundle_for_face(cfg, p, pick(i)?)?
            .pi_face
            .iter()
            .map(|&v| cfg.point(v).to_vec())
            .collect(),
    };

    let z = &bundle.base.config;
    let dimension = z.dim() + (k + 1) * (l - k);
    let integrand: usize = deltas
        .iter()
        .map(|&d| binomial(k as i64 + d, k as i64) as usize)
        .sum();
    if integrand != dimension {
        return Err(Error::DegreeMismatch {
            integrand,
            dimension,
        });
    }
    let subsets = combinations(l + 1, k + 1);
    let fixed_points = z.vertices().len() * subsets.len();
    if fixed_points > budget.max_fixed_points {
        return Err(Error::BudgetExceeded {
            resource: "fixed points",
            limit: budget.max_fixed_points,
        });
    }

    let data = vertex_data(&bundle, &offsets);
    let mut found = None;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(attempt as u64));
        let xi: Vec<i64> = (0..cfg.dim())
            .map(|_| rng.gen_range(-XI_RANGE..=XI_RANGE))
            .collect();
        if is_generic(&data, &xi) {
            found = Some((xi, attempt + 1));
            break;
        }
    }
    let (xi, attempts) = found.ok_or(Error::NonGeneric(MAX_ATTEMPTS))?;

    let parts = par::map(&data, |vd| vertex_sum(vd, &xi, k, deltas, &subsets));
    let total = parts
        .into_iter()
        .fold(BigRational::zero(), |acc, x| acc + x);
    if !total.is_integer() {
        return Err(Error::Internal(format!(
            "localization sum {total} is not an integer"
        )));
    }
    let count = total
        .to_integer()
        .to_i128()
        .ok_or(Error::Overflow("count_k_planes"))?;
    Ok(LocalizationResult {
        count,
        dimension,
        fixed_points,
        xi,
        attempts,
    })
}

/// All torus-fixed points of `Gr(k+1, E)`, in canonical order.
pub fn fixed_points(bundle: &SplitBundle, k: usize) -> Vec<FixedPoint> {
    let subsets = combinations(bundle.rank(), k + 1);
    bundle
        .base
        .config
        .vertices()
        .iter()
        .flat_map(|&vertex| {
            subsets.iter().map(move |s| FixedPoint {
                vertex,
                subset: s.clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::maximal_cayley_structures;
    use crate::corpus;

    fn full_simplex_structure(n: usize) -> (Configuration, CayleyStructure) {
        let cfg = corpus::simplex(n);
        let p = CayleyStructure::new(&cfg, cfg.full_face(), (0..=n).map(|i| vec![i]).collect())
            .unwrap();
        (cfg, p)
    }

    #[test]
    fn lines_on_hypersurfaces_in_projective_space() {
        let (cfg, p) = full_simplex_structure(3);
        assert_eq!(
            count_k_planes(&cfg, &p, 1, &[3], &Budget::default()).unwrap(),
            27
        );
        let (cfg, p) = full_simplex_structure(4);
        assert_eq!(
            count_k_planes(&cfg, &p, 1, &[5], &Budget::default()).unwrap(),
            2875
        );
    }

    #[test]
    fn points_by_bezout() {
        let (cfg, p) = full_simplex_structure(2);
        assert_eq!(
            count_k_planes(&cfg, &p, 0, &[2, 3], &Budget::default()).unwrap(),
            6
        );
        let (cfg, p) = full_simplex_structure(1);
        assert_eq!(
            count_k_planes(&cfg, &p, 0, &[1], &Budget::default()).unwrap(),
            1
        );
    }

    #[test]
    fn seeds_agree() {
        let (cfg, p) = full_simplex_structure(3);
        for seed in 0..5 {
            let opts = LocalizationOptions {
                seed,
                ..Default::default()
            };
            let r = count_k_planes_with(&cfg, &p, 1, &[3], &opts, &Budget::default()).unwrap();
            assert_eq!(r.count, 27);
            assert_eq!(r.fixed_points, 6);
        }
    }

    #[test]
    fn fixed_points_of_segre_component() {
        let cfg = corpus::product_of_simplices(&[2, 2]);
        let p = &maximal_cayley_structures(&cfg, 1, &Budget::default()).unwrap()[0];
        let bundle = super::super::universal_bundle(&cfg, p).unwrap();
        assert_eq!(fixed_points(&bundle, 1).len(), 9);
    }

    #[test]
    fn rejects_mismatch_and_negative_degrees() {
        let (cfg, p) = full_simplex_structure(4);
        assert!(matches!(
            count_k_planes(&cfg, &p, 1, &[1, 1, 1, 1], &Budget::default()),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            count_k_planes(&cfg, &p, 1, &[-1], &Budget::default()),
            Err(Error::NegativeDegree(-1))
        ));
    }
}
