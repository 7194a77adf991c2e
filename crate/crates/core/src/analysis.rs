//! Expected dimensions, normal bundles of torus-fixed planes, and mechanical
//! checks of the non-emptiness hypotheses.
//!
//! Verdicts concern a sufficiently general complete intersection `X`; nothing
//! here constructs `X`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cayley::{component_dimension, pi_faces, CayleyStructure};
use crate::divisors::{
    class_is_basepoint_free, is_effective_nontrivial, restriction_degree, restricts_surjectively,
    satisfies_ddagger, DivisorClass, ToricDivisor,
};
use crate::error::{Error, Result};
use crate::lattice::{is_subset, Configuration, Face};
use crate::linalg;
use crate::par;

/// `C(a, b)`, zero when `a < b` or `b < 0`.
pub fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1i64, |acc, i| acc * (a - i) / (i + 1))
}

/// `dim tau - l + (k+1)(l-k) - sum_i C(k + delta_i, k)`.
pub fn expected_dimension(p: &CayleyStructure, k: usize, deltas: &[i64]) -> Result<i64> {
    let k64 = k as i64;
    Ok(component_dimension(p, k)? - deltas.iter().map(|&d| binomial(k64 + d, k64)).sum::<i64>())
}

/// The tuple `(A, pi, alpha, k)`.
#[derive(Clone, Debug)]
pub struct ExpectedDimensionInput<'a> {
    pub cfg: &'a Configuration,
    pub cayley: &'a CayleyStructure,
    pub classes: &'a [DivisorClass],
    pub k: usize,
}

impl<'a> ExpectedDimensionInput<'a> {
    /// Validates `k <= l` and, on smooth input, that every class is effective
    /// and non-trivial.
    pub fn new(
        cfg: &'a Configuration,
        cayley: &'a CayleyStructure,
        classes: &'a [DivisorClass],
        k: usize,
    ) -> Result<Self> {
        if k > cayley.length() {
            return Err(Error::LengthTooSmall {
                k,
                length: cayley.length(),
            });
        }
        if cfg.is_smooth() {
            for (i, c) in classes.iter().enumerate() {
                if !is_effective_nontrivial(cfg, c)? {
                    return Err(Error::NotEffective(i));
                }
            }
        }
        Ok(ExpectedDimensionInput {
            cfg,
            cayley,
            classes,
            k,
        })
    }

    pub fn deltas(&self) -> Result<Vec<i64>> {
        self.classes
            .iter()
            .map(|c| restriction_degree(self.cfg, c, self.cayley))
            .collect()
    }

    pub fn expected_dimension(&self) -> Result<i64> {
        expected_dimension(self.cayley, self.k, &self.deltas()?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FacetRole {
    /// Contains `sigma` but not `sigma'`.
    One,
    /// Contains `sigma'` but not `tau`.
    Zero,
    /// Contains `tau`.
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSummand {
    pub facet: usize,
    pub role: FacetRole,
    pub degree: i64,
}

/// Degrees of `O(D_F)|_{L_sigma}` for the facets through `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalBundleDegrees {
    pub summands: Vec<NormalSummand>,
}

impl NormalBundleDegrees {
    /// Sorted degree multiset.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.summands.iter().map(|s| s.degree).collect();
        d.sort_unstable();
        d
    }

    /// `(l-k)` ones, `(dim tau - l)` zeros, `(m - dim tau)` negatives, each on
    /// the facets of the matching role.
    pub fn has_expected_shape(&self, cfg: &Configuration, p: &CayleyStructure, k: usize) -> bool {
        let l = p.length();
        let t = p.face.dim;
        let m = cfg.dim();
        let count = |r: FacetRole| self.summands.iter().filter(|s| s.role == r).count();
        count(FacetRole::One) == l - k
            && count(FacetRole::Zero) == t - l
            && count(FacetRole::Negative) == m - t
            && self.summands.iter().all(|s| match s.role {
                FacetRole::One => s.degree == 1,
                FacetRole::Zero => s.degree == 0,
                FacetRole::Negative => s.degree < 0,
            })
    }
}

/// The structure `sigma -> Delta_k` sending each point of a `pi`-face to its
/// own vertex.
pub fn face_structure(cfg: &Configuration, sigma: &Face) -> Result<CayleyStructure> {
    CayleyStructure::new(cfg, sigma, sigma.members.iter().map(|&i| vec![i]).collect())
}

fn is_pi_face(p: &CayleyStructure, f: &Face) -> bool {
    let mut seen = HashSet::new();
    is_subset(&f.members, &p.face.members)
        && f.members.iter().all(|&i| seen.insert(p.assignment(i)))
}

pub fn normal_bundle_degrees(
    cfg: &Configuration,
    p: &CayleyStructure,
    sigma_prime: &Face,
    sigma: &Face,
) -> Result<NormalBundleDegrees> {
    if !cfg.is_smooth() {
        return Err(Error::NotSmooth(
            "normal bundle degrees need a smooth Y_A".into(),
        ));
    }
    if sigma_prime.dim != p.length() || !is_pi_face(p, sigma_prime) {
        return Err(Error::NotPiFaceChain(
            "sigma' is not an l-dimensional pi-face".into(),
        ));
    }
    if !sigma.is_subset_of(sigma_prime) {
        return Err(Error::NotPiFaceChain(
            "sigma is not a face of sigma'".into(),
        ));
    }
    let on_sigma = face_structure(cfg, sigma)?;
    let f_tau = cfg.facets_containing(&p.face);
    let f_prime = cfg.facets_containing(sigma_prime);
    let summands = cfg
        .facets_containing(sigma)
        .into_iter()
        .map(|j| {
            let role = if f_tau.contains(&j) {
                FacetRole::Negative
            } else if f_prime.contains(&j) {
                FacetRole::Zero
            } else {
                FacetRole::One
            };
            let class = DivisorClass::new(cfg, ToricDivisor::prime(cfg, j))?;
            let degree = restriction_degree(cfg, &class, &on_sigma)?;
            Ok(NormalSummand {
                facet: j,
                role,
                degree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NormalBundleDegrees { summands })
}

/// All `(sigma', sigma)` with `sigma'` an `l`-dimensional `pi`-face and `sigma`
/// a `k`-dimensional face of it, in canonical order.
pub fn pi_face_chains<'a>(
    cfg: &'a Configuration,
    p: &CayleyStructure,
    k: usize,
) -> Result<Vec<(&'a Face, &'a Face)>> {
    let tops = pi_faces(cfg, p, p.length())?;
    Ok(tops
        .into_iter()
        .flat_map(|top| {
            cfg.subfaces(top)
                .into_iter()
                .filter(move |f| f.dim == k)
                .map(move |f| (top, f))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Holds {
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
    },
    Fails {
        witness: String,
    },
    NotCheckable {
        reason: String,
    },
}

impl Verdict {
    fn holds() -> Self {
        Verdict::Holds { witness: None }
    }

    fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::holds()
        } else {
            Verdict::Fails { witness: witness() }
        }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Conditions (1)-(7) of the non-emptiness theorem.
    Theorem,
    /// The basepoint-free simplification.
    Corollary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub id: String,
    pub description: String,
    pub verdict: Verdict,
}

/// What may be concluded about `V_{pi,k}` for sufficiently general `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Conclusion {
    /// Non-empty, and smooth of dimension `phi` for sufficiently general `X`.
    NonEmptySmooth {
        dimension: i64,
    },
    /// Empty for sufficiently general `X`.
    Empty,
    /// Of dimension `phi` for sufficiently general `X`, provided it is non-empty.
    DimensionIfNonEmpty {
        dimension: i64,
    },
    Undetermined {
        reason: String,
    },
}

impl Conclusion {
    pub fn statement(&self) -> String {
        match self {
            Conclusion::NonEmptySmooth { dimension } => {
                format!("non-empty, and smooth of dimension {dimension} for sufficiently general X")
            }
            Conclusion::Empty => "empty for sufficiently general X".into(),
            Conclusion::DimensionIfNonEmpty { dimension } => format!(
                "dimension {dimension} for sufficiently general X, conditional on non-emptiness"
            ),
            Conclusion::Undetermined { reason } => format!("no conclusion: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub mode: Mode,
    pub k: usize,
    pub length: usize,
    pub tau_dim: usize,
    pub component_dimension: i64,
    pub deltas: Option<Vec<i64>>,
    pub phi: Option<i64>,
    pub conditions: Vec<Condition>,
    /// Whether every class restricts surjectively along every structure below
    /// `pi`, when known.
    pub ddagger: Option<bool>,
    pub conclusion: Conclusion,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.verdict.is_holds())
    }

    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

fn cond(id: &str, description: &str, verdict: Verdict) -> Condition {
    Condition {
        id: id.into(),
        description: description.into(),
        verdict,
    }
}

fn fmt_structure(cfg: &Configuration, q: &CayleyStructure) -> String {
    let fibers: Vec<Vec<Vec<i64>>> = q
        .fibers
        .iter()
        .map(|f| f.iter().map(|&i| cfg.original_point(i).to_vec()).collect())
        .collect();
    format!("length {} structure with fibers {:?}", q.length(), fibers)
}

fn fmt_face(cfg: &Configuration, f: &Face) -> String {
    let pts: Vec<Vec<i64>> = f
        .members
        .iter()
        .map(|&i| cfg.original_point(i).to_vec())
        .collect();
    format!("{pts:?}")
}

/// Lemma 3.3-style numerical conditions shared by both modes.
fn numeric_conditions(
    p: &CayleyStructure,
    k: usize,
    r: usize,
    deltas: Option<&[i64]>,
    phi: Option<i64>,
) -> Vec<Condition> {
    let l = p.length() as i64;
    let k64 = k as i64;
    let tau = p.face.dim as i64;
    let unknown = || Verdict::NotCheckable {
        reason: "restriction degrees unavailable".into(),
    };
    let c4 = match phi {
        Some(phi) => Verdict::from_bool(phi >= 0, || format!("phi = {phi}")),
        None => unknown(),
    };
    let c5 = match deltas {
        Some(d) => Verdict::from_bool(d.iter().all(|&x| x >= 0), || format!("deltas = {d:?}")),
        None => unknown(),
    };
    let slack = tau - 2 * k64 - r as i64;
    let c6 = Verdict::from_bool(slack >= 0, || format!("dim tau - 2k - r = {slack}"));
    let c7 = match deltas {
        Some(d) => {
            let ones = d.iter().filter(|&&x| x == 1).count() as i64;
            let ok = d.iter().any(|&x| x >= 3)
                || d.iter().filter(|&&x| x >= 2).count() >= 2
                || l - 2 * k64 - ones >= 0;
            Verdict::from_bool(ok, || {
                format!(
                    "no delta >= 3, fewer than two deltas >= 2, and l - 2k - #{{delta = 1}} = {}",
                    l - 2 * k64 - ones
                )
            })
        }
        None => unknown(),
    };
    vec![
        cond("4", "expected dimension phi >= 0", c4),
        cond("5", "all restriction degrees delta_i >= 0", c5),
        cond("6", "dim tau - 2k - r >= 0", c6),
        cond(
            "7",
            "some delta_i >= 3, or two delta_i >= 2, or l - 2k - #{i : delta_i = 1} >= 0",
            c7,
        ),
    ]
}

/// Searches for a chain `sigma < sigma'` along which every `alpha_i - [D_F]`,
/// `F` through `sigma` but not `sigma'`, restricts surjectively.
fn chain_condition(
    cfg: &Configuration,
    p: &CayleyStructure,
    classes: &[DivisorClass],
    k: usize,
) -> Result<Verdict> {
    let chains = pi_face_chains(cfg, p, k)?;
    if chains.is_empty() {
        return Ok(Verdict::Fails {
            witness: "no pi-face chain of the required dimensions".into(),
        });
    }
    let ok = par::try_map(&chains, |&(top, sigma)| -> Result<bool> {
        let on_sigma = face_structure(cfg, sigma)?;
        let top_facets = cfg.facets_containing(top);
        for j in cfg.facets_containing(sigma) {
            if top_facets.contains(&j) {
                continue;
            }
            let prime = DivisorClass::new(cfg, ToricDivisor::prime(cfg, j))?;
            for c in classes {
                if !restricts_surjectively(cfg, &c.sub(cfg, &prime)?, &on_sigma)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    Ok(match ok.iter().position(|&b| b) {
        Some(i) => Verdict::Holds {
            witness: Some(format!(
                "sigma' = {}, sigma = {}",
                fmt_face(cfg, chains[i].0),
                fmt_face(cfg, chains[i].1)
            )),
        },
        None => Verdict::Fails {
            witness: format!("all {} pi-face chains fail", chains.len()),
        },
    })
}

/// Checks the hypotheses of the non-emptiness results for `input`. `structures`
/// must contain every Cayley structure of length at least `max(k, 1)`; it is
/// only consulted in theorem mode.
pub fn check_hypotheses(
    input: &ExpectedDimensionInput<'_>,
    mode: Mode,
    structures: &[CayleyStructure],
) -> Result<HypothesisReport> {
    let cfg = input.cfg;
    let p = input.cayley;
    let k = input.k;
    let classes = input.classes;
    let smooth = cfg.is_smooth();
    let comp = component_dimension(p, k)?;
    let (deltas, phi) = if smooth {
        let d = input.deltas()?;
        let phi = expected_dimension(p, k, &d)?;
        (Some(d), Some(phi))
    } else {
        (None, None)
    };
    let not_smooth = || Verdict::NotCheckable {
        reason: "Y_A is singular".into(),
    };
    let mut conditions = vec![cond(
        "1",
        "Y_A is nonsingular",
        Verdict::from_bool(smooth, || "some vertex cone is not unimodular".into()),
    )];
    let ddagger: Option<bool>;
    match mode {
        Mode::Theorem => {
            let (c2, known) = if smooth {
                let v = satisfies_ddagger(cfg, classes, p, k, structures)?;
                let verdict = match &v.witness {
                    None => Verdict::holds(),
                    Some((i, q)) => Verdict::Fails {
                        witness: format!(
                            "class {i} does not restrict surjectively along {}",
                            fmt_structure(cfg, q)
                        ),
                    },
                };
                (verdict, Some(v.holds))
            } else {
                (not_smooth(), None)
            };
            ddagger = known;
            conditions.push(cond(
                "2",
                "every class restricts surjectively along every structure below pi of length >= k",
                c2,
            ));
            let c3 = if smooth {
                chain_condition(cfg, p, classes, k)?
            } else {
                not_smooth()
            };
            conditions.push(cond(
                "3",
                "some pi-face chain sigma < sigma' has alpha_i - [D_F] restricting surjectively along sigma",
                c3,
            ));
        }
        Mode::Corollary => {
            let (bpf, bpf_minus) = if smooth {
                let bpf = par::try_map(classes, |c| class_is_basepoint_free(cfg, c))?;
                let primes = (0..cfg.num_facets())
                    .map(|j| DivisorClass::new(cfg, ToricDivisor::prime(cfg, j)))
                    .collect::<Result<Vec<_>>>()?;
                let grid: Vec<(usize, usize)> = (0..classes.len())
                    .flat_map(|i| (0..primes.len()).map(move |j| (i, j)))
                    .collect();
                let minus = par::try_map(&grid, |&(i, j)| {
                    class_is_basepoint_free(cfg, &classes[i].sub(cfg, &primes[j])?)
                })?;
                let v1 = match bpf.iter().position(|b| !b) {
                    None => Verdict::holds(),
                    Some(i) => Verdict::Fails {
                        witness: format!("class {i} is not basepoint free"),
                    },
                };
                let v2 = match minus.iter().position(|b| !b) {
                    None => Verdict::holds(),
                    Some(n) => Verdict::Fails {
                        witness: format!(
                            "class {} minus the prime divisor of facet {} is not basepoint free",
                            grid[n].0, grid[n].1
                        ),
                    },
                };
                (v1, v2)
            } else {
                (not_smooth(), not_smooth())
            };
            // Basepoint-free classes restrict surjectively everywhere.
            ddagger = bpf.is_holds().then_some(true);
            conditions.push(cond("bpf", "every alpha_i is basepoint free", bpf));
            conditions.push(cond(
                "bpf-minus-prime",
                "every alpha_i - [P] is basepoint free for every prime invariant divisor P",
                bpf_minus,
            ));
        }
    }
    conditions.extend(numeric_conditions(
        p,
        k,
        classes.len(),
        deltas.as_deref(),
        phi,
    ));
    let all_hold = conditions.iter().all(|c| c.verdict.is_holds());
    let conclusion = match (phi, ddagger) {
        (Some(phi), _) if all_hold => Conclusion::NonEmptySmooth { dimension: phi },
        (Some(phi), Some(true)) if phi < 0 => Conclusion::Empty,
        (Some(phi), Some(true)) => Conclusion::DimensionIfNonEmpty { dimension: phi },
        (Some(_), Some(false)) => Conclusion::Undetermined {
            reason: "surjective restriction fails below pi".into(),
        },
        (Some(_), None) => Conclusion::Undetermined {
            reason: "surjective restriction below pi is not established".into(),
        },
        (None, _) => Conclusion::Undetermined {
            reason: "Y_A is singular".into(),
        },
    };
    Ok(HypothesisReport {
        mode,
        k,
        length: p.length(),
        tau_dim: p.face.dim,
        component_dimension: comp,
        deltas,
        phi,
        conditions,
        ddagger,
        conclusion,
    })
}

/// Whether `x` lies in the semigroup generated by `gens`, given a functional
/// `f` that is positive on every non-zero generator.
pub fn semigroup_contains(gens: &[Vec<i64>], f: &[i64], x: &[i64]) -> bool {
    fn go(gens: &[Vec<i64>], f: &[i64], x: Vec<i64>, failed: &mut HashSet<Vec<i64>>) -> bool {
        if x.iter().all(|&c| c == 0) {
            return true;
        }
        let fx = linalg::dot(f, &x);
        if fx <= 0 || failed.contains(&x) {
            return false;
        }
        for g in gens {
            let fg = linalg::dot(f, g);
            if fg > 0 && fg <= fx && go(gens, f, linalg::sub(&x, g), failed) {
                return true;
            }
        }
        failed.insert(x);
        false
    }
    go(gens, f, x.to_vec(), &mut HashSet::new())
}

/// Checks that the semigroups generated by `pi^{-1}(e_j) - v_j` coincide for
/// all `j`, where `v_j` are the points of the `l`-dimensional `pi`-face `top`.
pub fn fiber_semigroups_agree(
    cfg: &Configuration,
    p: &CayleyStructure,
    top: &Face,
) -> Result<bool> {
    if top.dim != p.length() || !is_pi_face(p, top) {
        return Err(Error::NotPiFaceChain("not an l-dimensional pi-face".into()));
    }
    let base: Vec<usize> = (0..p.fibers.len())
        .map(|j| {
            *top.members
                .iter()
                .find(|&&i| p.assignment(i) == Some(j))
                .expect("pi-face meets every fiber")
        })
        .collect();
    let gens: Vec<Vec<Vec<i64>>> = p
        .fibers
        .iter()
        .zip(&base)
        .map(|(fib, &v)| {
            fib.iter()
                .map(|&w| linalg::sub(cfg.point(w), cfg.point(v)))
                .collect()
        })
        .collect();
    // Every v_j is a vertex of A; the sum of the facet normals through it is
    // positive on all non-zero directions into A.
    let functional = |v: usize| -> Vec<i64> {
        cfg.facets_containing_point(v)
            .iter()
            .fold(vec![0; cfg.dim()], |acc, &j| {
                linalg::add(&acc, cfg.facet_normal(j))
            })
    };
    for (a, &va) in base.iter().enumerate() {
        let f = functional(va);
        for (b, gb) in gens.iter().enumerate() {
            if a != b && !gb.iter().all(|x| semigroup_contains(&gens[a], &f, x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{enumerate_cayley_structures, maximal_cayley_structures};
    use crate::corpus;
    use crate::lattice::Budget;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 1), 6);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 1), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(7, 7), 1);
    }

    #[test]
    fn conic_contains_no_line() {
        let c = corpus::simplex(2);
        let max = maximal_cayley_structures(&c, 1, &Budget::default()).unwrap();
        let two_h = DivisorClass::new(&c, ToricDivisor::hyperplane(&c).scale(2)).unwrap();
        let classes = [two_h];
        let input = ExpectedDimensionInput::new(&c, &max[0], &classes, 1).unwrap();
        assert_eq!(input.expected_dimension().unwrap(), -1);
        let all = enumerate_cayley_structures(&c, 1, &Budget::default()).unwrap();
        let rep = check_hypotheses(&input, Mode::Theorem, &all).unwrap();
        assert_eq!(rep.conclusion, Conclusion::Empty);
        assert!(rep.condition("4").unwrap().verdict.is_fails());
    }

    #[test]
    fn simplex_normal_bundle() {
        let c = corpus::simplex(3);
        let p = &maximal_cayley_structures(&c, 1, &Budget::default()).unwrap()[0];
        for (top, sigma) in pi_face_chains(&c, p, 1).unwrap() {
            let nb = normal_bundle_degrees(&c, p, top, sigma).unwrap();
            assert_eq!(nb.degrees(), vec![1, 1]);
            assert!(nb.has_expected_shape(&c, p, 1));
        }
    }

    #[test]
    fn semigroups() {
        let gens = vec![vec![1, 0], vec![0, 1]];
        assert!(semigroup_contains(&gens, &[1, 1], &[3, 2]));
        assert!(!semigroup_contains(&gens, &[1, 1], &[-1, 2]));
        let gens = vec![vec![2, 0], vec![0, 1]];
        assert!(!semigroup_contains(&gens, &[1, 1], &[1, 1]));
    }
}
