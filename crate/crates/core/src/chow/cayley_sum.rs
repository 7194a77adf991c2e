use std::collections::BTreeSet;

use serde::Serialize;

use crate::cayley::CayleyStructure;
use crate::error::{Error, Result};
use crate::lattice::Configuration;
use crate::linalg;

/// The fiber sums `u_0 + ... + u_l` of a Cayley structure. Its toric variety is
/// the base `Z_pi` of the family of `l`-planes.
#[derive(Clone, Debug, Serialize)]
pub struct CayleySumConfiguration {
    pub source: CayleyStructure,
    /// Normalized configuration; its original coordinates live in the lattice
    /// of the input configuration.
    #[serde(skip)]
    pub config: Configuration,
    pub sums: Vec<Vec<i64>>,
}

impl CayleySumConfiguration {
    pub fn dim(&self) -> usize {
        self.config.dim()
    }
}

pub fn cayley_sum_configuration(
    cfg: &Configuration,
    p: &CayleyStructure,
) -> Result<CayleySumConfiguration> {
    let m = cfg.dim();
    let mut sums: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; m]]);
    for fiber in &p.fibers {
        sums = sums
            .iter()
            .flat_map(|s| fiber.iter().map(move |&u| linalg::add(s, cfg.point(u))))
            .collect();
    }
    let sums: Vec<Vec<i64>> = sums.into_iter().collect();
    if sums.is_empty() {
        return Err(Error::Internal("empty Cayley sum".into()));
    }
    let config = Configuration::from_points(sums.clone())?;
    Ok(CayleySumConfiguration {
        source: p.clone(),
        config,
        sums,
    })
}
