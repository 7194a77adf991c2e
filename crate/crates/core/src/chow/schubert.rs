use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

type Poly = BTreeMap<Vec<u32>, BigInt>;

fn mul_linear(p: &Poly, coeffs: &[i64], cap: &[u32]) -> Poly {
    let mut out = Poly::new();
    for (mono, c) in p {
        for (i, &a) in coeffs.iter().enumerate() {
            if a == 0 || mono[i] + 1 > cap[i] {
                continue;
            }
            let mut m = mono.clone();
            m[i] += 1;
            *out.entry(m).or_insert_with(BigInt::zero) += c * a;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .rev()
        .flat_map(|a| {
            compositions(total - a, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, a);
                    rest
                })
        })
        .collect()
}

/// `int_{Gr(k+1, n+1)} prod_i c_top(Sym^{delta_i} S*)`, computed symbolically:
/// the integrand is a symmetric polynomial in the Chern roots of `S*`, and the
/// integral is its coefficient on the Schur polynomial of the full
/// `(k+1) x (n-k)` box, read off as the coefficient of `x^{box + rho}` in the
/// integrand times the Vandermonde product.
pub fn schubert_oracle(n: usize, k: usize, deltas: &[i64]) -> Result<i128> {
    if k > n {
        return Err(Error::LengthTooSmall { k, length: n });
    }
    if let Some(&d) = deltas.iter().find(|&&d| d < 0) {
        return Err(Error::NegativeDegree(d));
    }
    let r = k + 1;
    let dimension = r * (n - k);
    let integrand: usize = deltas
        .iter()
        .map(|&d| crate::analysis::binomial(k as i64 + d, k as i64) as usize)
        .sum();
    if integrand != dimension {
        return Err(Error::DegreeMismatch {
            integrand,
            dimension,
        });
    }
    let target: Vec<u32> = (0..r).map(|i| ((n - k) + (r - 1 - i)) as u32).collect();
    let mut poly = Poly::from([(vec![0; r], BigInt::from(1))]);
    for i in 0..r {
        for j in i + 1..r {
            let mut lin = vec![0; r];
            lin[i] = 1;
            lin[j] = -1;
            poly = mul_linear(&poly, &lin, &target);
        }
    }
    for &d in deltas {
        for a in compositions(d, r) {
            poly = mul_linear(&poly, &a, &target);
        }
    }
    poly.get(&target)
        .map_or(Some(0), |c| c.to_i128())
        .ok_or(Error::Overflow("schubert_oracle"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_numbers() {
        assert_eq!(schubert_oracle(3, 1, &[3]).unwrap(), 27);
        assert_eq!(schubert_oracle(4, 1, &[5]).unwrap(), 2875);
        assert_eq!(schubert_oracle(5, 1, &[3, 3]).unwrap(), 1053);
        assert_eq!(schubert_oracle(5, 1, &[2, 4]).unwrap(), 1280);
        assert_eq!(schubert_oracle(5, 1, &[1, 1, 1, 1]).unwrap(), 1);
        // A smooth quadric threefold contains no planes.
        assert_eq!(schubert_oracle(5, 2, &[2, 1]).unwrap(), 0);
        assert_eq!(schubert_oracle(1, 0, &[1]).unwrap(), 1);
        assert_eq!(schubert_oracle(2, 0, &[1, 1]).unwrap(), 1);
        assert_eq!(schubert_oracle(2, 0, &[2, 3]).unwrap(), 6);
        assert_eq!(schubert_oracle(5, 2, &[1, 1, 1]).unwrap(), 1);
    }

    #[test]
    fn degree_mismatch() {
        assert!(matches!(
            schubert_oracle(4, 1, &[1, 1, 1, 1]),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}
