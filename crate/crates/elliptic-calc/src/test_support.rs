//! Shared generators for the unit-test suites.

use rand::prelude::*;

use crate::space::EllipticRanks;

/// Random product of `1..=max_factors` spheres with dimensions `1..=max_dim`.
pub(crate) fn random_sphere_product(
    rng: &mut impl Rng,
    max_factors: usize,
    max_dim: u64,
) -> EllipticRanks {
    let count = rng.gen_range(1..=max_factors);
    let factors: Vec<EllipticRanks> = (0..count)
        .map(|_| EllipticRanks::sphere(rng.gen_range(1..=max_dim)).unwrap())
        .collect();
    EllipticRanks::product(&factors).unwrap()
}
