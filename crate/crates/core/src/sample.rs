//! Seeded generators of valid parameters and modules.

use crate::modules::{CycleModule, Module, PathModule};
use crate::orbit::{Letter, OrbitConfig, TParam};
use crate::scalars::{CycloScalar, JordanType};
use rand::Rng;

/// Bounds for random module generation.
#[derive(Clone, Copy, Debug)]
pub struct SampleBounds {
    /// Maximum word length, as a multiple of `p`.
    pub max_reps: usize,
    /// Maximum total size of the eigen-data.
    pub max_jordan: usize,
    /// Probability of a letter `0` at a break.
    pub zero_rate: f64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_reps: 3,
            max_jordan: 3,
            zero_rate: 0.1,
        }
    }
}

/// Random parameter with exponents in `0..=2`.
pub fn random_tparam<R: Rng>(rng: &mut R, p: u32, breakless_ok: bool) -> TParam {
    loop {
        let exps: Vec<u32> = (0..p)
            .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=2) })
            .collect();
        let t = TParam::new(exps);
        if breakless_ok || t.has_breaks() {
            return t;
        }
    }
}

fn random_letter<R: Rng>(rng: &mut R, t: &TParam, k: i64, b: &SampleBounds) -> Letter {
    if !t.is_break(k) {
        Letter::One
    } else if rng.gen_bool(b.zero_rate) {
        Letter::Zero
    } else if rng.gen_bool(0.5) {
        Letter::X
    } else {
        Letter::Y
    }
}

/// Random nonzero eigenvalue: a small integer times a root of unity.
pub fn random_eigenvalue<R: Rng>(rng: &mut R, cfg: &OrbitConfig) -> CycloScalar {
    let n = cfg.conductor();
    let mag = [1i64, 1, 1, 2, -1, 3][rng.gen_range(0..6)];
    let k = rng.gen_range(0..n.max(1) as i64);
    &CycloScalar::from_int(mag, n) * &CycloScalar::root_of_unity(k, n)
}

pub fn random_jordan<R: Rng>(rng: &mut R, cfg: &OrbitConfig, max: usize) -> JordanType {
    let total = rng.gen_range(1..=max.max(1));
    let mut left = total;
    let mut blocks = Vec::new();
    while left > 0 {
        let a = rng.gen_range(1..=left);
        let xi = if !blocks.is_empty() && rng.gen_bool(0.4) {
            let (x, _): &(CycloScalar, usize) = &blocks[0];
            x.clone()
        } else {
            random_eigenvalue(rng, cfg)
        };
        blocks.push((xi, a));
        left -= a;
    }
    JordanType::new(blocks)
}

/// Random path module for a parameter with at least one break.
pub fn random_path<R: Rng>(rng: &mut R, cfg: &OrbitConfig, t: &TParam, b: &SampleBounds) -> PathModule {
    let p = cfg.p() as i64;
    let breaks = t.breaks();
    let i = breaks[rng.gen_range(0..breaks.len())];
    let max_len = b.max_reps as i64 * p;
    let lens: Vec<i64> = (0..=max_len).filter(|l| t.is_break(i as i64 + l + 1)).collect();
    let l = lens[rng.gen_range(0..lens.len())];
    let w = (1..=l).map(|s| random_letter(rng, t, i as i64 + s, b)).collect();
    PathModule::new(*cfg, t.clone(), i, w).expect("sampled path is valid")
}

pub fn random_cycle<R: Rng>(rng: &mut R, cfg: &OrbitConfig, t: &TParam, b: &SampleBounds) -> CycleModule {
    let p = cfg.p() as i64;
    let r = rng.gen_range(1..=b.max_reps.max(1)) as i64;
    let w = (1..=r * p).map(|k| random_letter(rng, t, k, b)).collect();
    let f = random_jordan(rng, cfg, b.max_jordan);
    CycleModule::new(*cfg, t.clone(), w, f).expect("sampled cycle is valid")
}

/// Random module: a path or a cycle, over a fresh random parameter.
pub fn random_module<R: Rng>(rng: &mut R, cfg: &OrbitConfig, b: &SampleBounds) -> Module {
    if rng.gen_bool(0.5) {
        let t = random_tparam(rng, cfg.p(), false);
        Module::Path(random_path(rng, cfg, &t, b))
    } else {
        let t = random_tparam(rng, cfg.p(), true);
        Module::Cycle(random_cycle(rng, cfg, &t, b))
    }
}
