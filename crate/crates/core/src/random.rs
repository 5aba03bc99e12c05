//! Seeded sampling helpers. Every sampler takes an explicit RNG so runs are
//! reproducible from a single seed.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::divalg::{CMat, Oct, OctC, Quat, C64};

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream for sub-task `k` of a seeded job.
pub fn substream(seed: u64, k: u64) -> Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k.wrapping_add(1));
    r
}

pub fn gauss(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn quat(rng: &mut Rng) -> Quat {
    Quat(std::array::from_fn(|_| gauss(rng)))
}

pub fn oct(rng: &mut Rng) -> Oct {
    Oct(std::array::from_fn(|_| gauss(rng)))
}

pub fn octc(rng: &mut Rng) -> OctC {
    OctC::new(oct(rng), oct(rng))
}

pub fn complex(rng: &mut Rng) -> C64 {
    C64::new(gauss(rng), gauss(rng))
}

pub fn real_matrix(rng: &mut Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| gauss(rng))
}

pub fn complex_matrix(rng: &mut Rng, r: usize, c: usize) -> CMat {
    CMat::from_fn(r, c, |_, _| complex(rng))
}
