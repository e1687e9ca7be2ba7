//! Seeded random path polygons.
//!
//! Slabs are laid out left to right. Each new slab changes exactly one of
//! the previous slab's top or bottom, so every seam keeps a positive
//! overlap and every break produces one vertical edge at a fresh x.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fixtures::column_vertices;
use crate::geom::{validate_polygon, Coord, OrthoPolygon};

pub const MAX_GENERATED_COORD: Coord = 1_000_000;
pub const MAX_SLABS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenConfig {
    pub slabs: usize,
    /// y-coordinates lie in `0..=range`.
    pub range: Coord,
    pub seed: u64,
    /// Probability that a step changes the top rather than the bottom.
    pub wind_probability: f64,
    /// Force at least one corridor break.
    pub unbalanced: bool,
}

impl GenConfig {
    pub fn new(slabs: usize, seed: u64) -> Self {
        GenConfig {
            slabs,
            range: 64,
            seed,
            wind_probability: 0.5,
            unbalanced: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("ConfigInvalid: {0}")]
    ConfigInvalid(String),
}

fn check(cfg: &GenConfig) -> Result<(), GenError> {
    let bad = |msg: String| Err(GenError::ConfigInvalid(msg));
    if cfg.slabs == 0 || cfg.slabs > MAX_SLABS {
        return bad(format!("slab count {} outside 1..={MAX_SLABS}", cfg.slabs));
    }
    if cfg.range < 2 || cfg.range > MAX_GENERATED_COORD {
        return bad(format!(
            "range {} outside 2..={MAX_GENERATED_COORD}",
            cfg.range
        ));
    }
    if !(0.0..=1.0).contains(&cfg.wind_probability) {
        return bad(format!(
            "wind probability {} outside [0, 1]",
            cfg.wind_probability
        ));
    }
    if cfg.unbalanced && (cfg.slabs < 3 || cfg.range < 3) {
        return bad("an unbalanced polygon needs at least 3 slabs and range 3".into());
    }
    Ok(())
}

/// Column spans `(bottom, top)` for `cfg`.
fn spans(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Vec<(Coord, Coord)> {
    let r = cfg.range;
    let mut out = Vec::with_capacity(cfg.slabs);
    if cfg.unbalanced {
        // Bottom at least 2, then a bottom drop of at least 2, then a top
        // that falls strictly between the two bottoms.
        let b0 = rng.gen_range(2..r);
        let t0 = rng.gen_range(b0 + 1..=r);
        let b1 = rng.gen_range(0..=b0 - 2);
        let t2 = rng.gen_range(b1 + 1..b0);
        out.extend([(b0, t0), (b1, t0), (b1, t2)]);
        if rng.gen_bool(0.5) {
            // Mirror vertically so the break also appears on the other side.
            for s in &mut out {
                *s = (r - s.1, r - s.0);
            }
        }
    } else {
        let b = rng.gen_range(0..r);
        out.push((b, rng.gen_range(b + 1..=r)));
    }
    while out.len() < cfg.slabs {
        let (b, t) = *out.last().unwrap();
        // Top moves within (b, r] minus t; bottom within [0, t) minus b.
        let top_options = r - b - 1;
        let bottom_options = t - 1;
        let change_top = if top_options == 0 {
            false
        } else if bottom_options == 0 {
            true
        } else {
            rng.gen_bool(cfg.wind_probability)
        };
        let next = if change_top {
            let mut v = rng.gen_range(b + 1..r);
            if v >= t {
                v += 1;
            }
            (b, v)
        } else {
            let mut v = rng.gen_range(0..t - 1);
            if v >= b {
                v += 1;
            }
            (v, t)
        };
        out.push(next);
    }
    out
}

pub fn generate(cfg: &GenConfig) -> Result<OrthoPolygon, GenError> {
    check(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let spans = spans(cfg, &mut rng);
    let max_step = (MAX_GENERATED_COORD / cfg.slabs as Coord).clamp(1, 4);
    let mut xs = Vec::with_capacity(cfg.slabs + 1);
    xs.push(0);
    for _ in 0..cfg.slabs {
        let last = *xs.last().unwrap();
        xs.push(last + rng.gen_range(1..=max_step));
    }
    let poly = validate_polygon(&column_vertices(&xs, &spans)).expect("generated polygon is valid");
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balanced::split_balanced;
    use crate::decompose::vertical_decompose;

    #[test]
    fn one_slab_is_a_rectangle() {
        let p = generate(&GenConfig::new(1, 7)).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.reflex_count(), 0);
    }

    #[test]
    fn vertex_count_follows_slab_count() {
        for seed in 0..20 {
            let p = generate(&GenConfig::new(5, seed)).unwrap();
            assert_eq!(p.len(), 12);
            assert_eq!(vertical_decompose(&p).unwrap().len(), 5);
        }
    }

    #[test]
    fn unbalanced_breaks_the_corridor() {
        for seed in 0..50 {
            let cfg = GenConfig {
                unbalanced: true,
                range: 5,
                ..GenConfig::new(3, seed)
            };
            let p = generate(&cfg).unwrap();
            let split = split_balanced(&vertical_decompose(&p).unwrap());
            assert!(split.parts.len() >= 2, "seed {seed}");
        }
    }

    #[test]
    fn same_seed_same_polygon() {
        let cfg = GenConfig::new(40, 99);
        assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
        assert_ne!(
            generate(&cfg).unwrap(),
            generate(&GenConfig::new(40, 100)).unwrap()
        );
    }

    #[test]
    fn extreme_wind_still_valid() {
        for wind in [0.0, 1.0] {
            let cfg = GenConfig {
                wind_probability: wind,
                range: 2,
                ..GenConfig::new(30, 3)
            };
            assert_eq!(generate(&cfg).unwrap().len(), 62);
        }
    }

    #[test]
    fn invalid_configs() {
        assert!(generate(&GenConfig::new(0, 0)).is_err());
        let cfg = GenConfig {
            unbalanced: true,
            ..GenConfig::new(2, 0)
        };
        assert!(matches!(generate(&cfg), Err(GenError::ConfigInvalid(_))));
        let cfg = GenConfig {
            range: 1,
            ..GenConfig::new(4, 0)
        };
        assert!(generate(&cfg).is_err());
    }
}
