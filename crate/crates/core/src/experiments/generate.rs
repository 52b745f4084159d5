//! Reproducible random instances.
//!
//! Trial `t` of a config with seed `s` draws from ChaCha8 seeded with
//! `seed_from_u64(s)` on stream `t`. Each coordinate consumes one `u64`,
//! keeps its top 53 bits as a fraction in `[0, 1)` and scales it by the side
//! length. APs are drawn before TDs, `x` before `y`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::config::ExperimentConfig;
use crate::geometry::Point;
use crate::instance::Instance;

/// Uniform fraction in `[0, 1)` from the 53 high bits of `bits`.
pub fn unit_fraction(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

/// Instance for trial `trial_index` of `cfg`, uniform over `[0, side]^2`.
pub fn generate_instance(cfg: &ExperimentConfig, trial_index: usize) -> Instance {
    let mut rng = trial_rng(cfg.seed, trial_index as u64);
    let mut draw = |count: usize| -> Vec<Point> {
        (0..count)
            .map(|_| {
                let x = unit_fraction(rng.next_u64()) * cfg.side;
                let y = unit_fraction(rng.next_u64()) * cfg.side;
                Point::new(x, y)
            })
            .collect()
    };
    let aps = draw(cfg.m);
    let tds = draw(cfg.n);
    Instance::new(aps, tds, cfg.k, cfg.c, cfg.alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::validate_instance;

    #[test]
    fn generated_instance_is_valid() {
        let cfg = ExperimentConfig::new(100, 4, 25);
        let inst = generate_instance(&cfg, 0);
        assert_eq!(inst.num_tds(), 100);
        assert_eq!(inst.num_aps(), 4);
        assert_eq!(validate_instance(&inst), Ok(()));
    }

    #[test]
    fn same_trial_same_points() {
        let cfg = ExperimentConfig::new(30, 2, 20);
        assert_eq!(generate_instance(&cfg, 0), generate_instance(&cfg, 0));
        assert_ne!(generate_instance(&cfg, 0), generate_instance(&cfg, 1));
        let mut other = cfg.clone();
        other.seed += 1;
        assert_ne!(generate_instance(&cfg, 0), generate_instance(&other, 0));
    }

    #[test]
    fn coordinates_stay_in_the_square() {
        let mut cfg = ExperimentConfig::new(500, 20, 40);
        cfg.side = 15.0;
        for t in 0..5 {
            let inst = generate_instance(&cfg, t);
            for p in inst.aps.iter().chain(&inst.tds) {
                assert!((0.0..=15.0).contains(&p.x) && (0.0..=15.0).contains(&p.y));
            }
        }
    }

    #[test]
    fn fraction_bounds() {
        assert_eq!(unit_fraction(0), 0.0);
        assert!(unit_fraction(u64::MAX) < 1.0);
    }
}
