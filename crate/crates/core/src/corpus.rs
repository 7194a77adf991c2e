//! Standard configurations used in examples, tests and benchmarks.

use rand::Rng;

use crate::lattice::{Configuration, LatticePolytope};

fn build(points: Vec<Vec<i64>>) -> Configuration {
    Configuration::from_points(points).expect("corpus configuration is valid")
}

/// Lattice points of `k * Delta_n` in `Z^n`.
pub fn simplex_points(n: usize, k: i64) -> Vec<Vec<i64>> {
    LatticePolytope::simplex(n, k)
        .lattice_points()
        .expect("simplex lattice points")
}

/// The vertices of the standard simplex, `Y = P^n`.
pub fn simplex(n: usize) -> Configuration {
    build(simplex_points(n, 1))
}

pub fn unit_square() -> Configuration {
    build(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
}

/// Cartesian product of two point sets.
pub fn product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .flat_map(|p| b.iter().map(move |q| [p.as_slice(), q.as_slice()].concat()))
        .collect()
}

/// `Delta_{m_1} x ... x Delta_{m_q}`, the Segre embedding of `prod P^{m_i}`.
pub fn product_of_simplices(dims: &[usize]) -> Configuration {
    let pts = dims.iter().fold(vec![Vec::new()], |acc, &m| {
        product(&acc, &simplex_points(m, 1))
    });
    build(pts)
}

/// `{u in Z^5 : u >= 0, u1+u2+u3 >= 1, sum u <= 2}`, the blow-up of `P^5`
/// along a plane in its embedding by `2H - E`.
pub fn bl_p2_p5() -> Configuration {
    build(
        simplex_points(5, 2)
            .into_iter()
            .filter(|u| u[0] + u[1] + u[2] >= 1)
            .collect(),
    )
}

/// The blow-up of `P^2` in a point, embedded by `2H - E`.
pub fn bl_p_p2_points() -> Vec<Vec<i64>> {
    vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
}

/// `Bl_P P^2 x P^q`.
pub fn bl_p_p2_times_pq(q: usize) -> Configuration {
    build(product(&bl_p_p2_points(), &simplex_points(q, 1)))
}

/// Lattice points of the trapezoid with vertices `(0,0), (b+a,0), (b,1), (0,1)`,
/// a Hirzebruch surface `F_a`.
pub fn hirzebruch_points(a: i64, b: i64) -> Vec<Vec<i64>> {
    (0..=b + a)
        .map(|x| vec![x, 0])
        .chain((0..=b).map(|x| vec![x, 1]))
        .collect()
}

pub fn hirzebruch(a: i64, b: i64) -> Configuration {
    build(hirzebruch_points(a, b))
}

/// Named smooth configurations small enough for exhaustive property checks.
pub fn smooth_corpus() -> Vec<(&'static str, Configuration)> {
    vec![
        ("P1", simplex(1)),
        ("P2", simplex(2)),
        ("P3", simplex(3)),
        ("P4", simplex(4)),
        ("P1xP1", product_of_simplices(&[1, 1])),
        ("P1xP2", product_of_simplices(&[1, 2])),
        ("P2xP2", product_of_simplices(&[2, 2])),
        ("P1xP1xP1", product_of_simplices(&[1, 1, 1])),
        ("F1", hirzebruch(1, 1)),
        ("F2", hirzebruch(2, 1)),
        ("BlP2", build(bl_p_p2_points())),
        ("BlP2xP1", bl_p_p2_times_pq(1)),
        ("BlP2xP2", bl_p_p2_times_pq(2)),
        ("Bl_P2_P5", bl_p2_p5()),
    ]
}

/// A random small smooth configuration: a dilated simplex, a Hirzebruch
/// trapezoid, or a product of two of these, with at most three dimensions.
pub fn random_smooth<R: Rng>(rng: &mut R) -> (String, Configuration) {
    fn factor<R: Rng>(rng: &mut R, max_dim: usize) -> (String, Vec<Vec<i64>>) {
        if max_dim >= 2 && rng.gen_bool(0.4) {
            let a = rng.gen_range(0..=2);
            let b = rng.gen_range(1..=2);
            (format!("F({a},{b})"), hirzebruch_points(a, b))
        } else {
            let n = rng.gen_range(1..=max_dim.min(2));
            let k = rng.gen_range(1..=2);
            (format!("{k}D{n}"), simplex_points(n, k))
        }
    }
    let (name, pts) = factor(rng, 3);
    let dim = pts[0].len();
    if dim < 3 && rng.gen_bool(0.5) {
        let (other, more) = factor(rng, 3 - dim);
        let c = build(product(&pts, &more));
        return (format!("{name}x{other}"), c);
    }
    (name, build(pts))
}
