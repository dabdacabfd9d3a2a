#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistlab_core::{ActionConfig, Construction, Tower, TowerConfig};

pub fn construction(p: u32, q: u32, n: usize, k_max: usize) -> Construction {
    let tower = Tower::build(TowerConfig::new(p, q, k_max)).unwrap();
    Construction::new(tower, ActionConfig::default_for(p, n).unwrap(), 8).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
