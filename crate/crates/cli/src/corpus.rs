//! Batch runs over generated instances, one JSON report per instance.

use std::time::Instant;

use pathguard::balanced::split_balanced;
use pathguard::guard::place_guards;
use pathguard::oracle::{min_rguards_exact, OracleConfig};
use pathguard::pixel::pixel_decompose;
use pathguard::visibility::coverage_check;
use pathguard::{generate, vertical_decompose, GenConfig};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSpec {
    pub max_slabs: usize,
    pub seeds_per_m: u64,
    pub base_seed: u64,
}

/// y-ranges cycled through by seed; small ranges keep pixel grids small.
const RANGES: [i64; 3] = [4, 8, 16];

impl CorpusSpec {
    /// Instance configurations, ordered by slab count then seed. Every
    /// second seed forces a corridor break where that is possible.
    pub fn configs(&self) -> Vec<GenConfig> {
        let mut out = Vec::new();
        for m in 1..=self.max_slabs {
            for k in 0..self.seeds_per_m {
                let range = RANGES[(k % 3) as usize];
                out.push(GenConfig {
                    slabs: m,
                    range,
                    seed: self.base_seed.wrapping_add(k * 1_000 + m as u64),
                    wind_probability: 0.5,
                    unbalanced: k % 2 == 1 && m >= 3,
                });
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StageTimes {
    pub decompose_ns: u128,
    pub split_ns: u128,
    pub place_ns: u128,
    pub oracle_ns: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub parts: usize,
    pub guard_number: usize,
    pub oracle: Option<usize>,
    pub coverage_ok: bool,
    pub times: StageTimes,
}

impl RunReport {
    /// False when the oracle ran and disagrees with the algorithm.
    pub fn agrees(&self) -> bool {
        self.oracle.is_none_or(|o| o == self.guard_number)
    }
}

pub fn run_instance(cfg: &GenConfig, oracle: Option<&OracleConfig>) -> anyhow::Result<RunReport> {
    let poly = generate(cfg)?;
    let mut times = StageTimes::default();
    let t = Instant::now();
    let vd = vertical_decompose(&poly)?;
    times.decompose_ns = t.elapsed().as_nanos();
    let t = Instant::now();
    let split = split_balanced(&vd);
    times.split_ns = t.elapsed().as_nanos();
    let t = Instant::now();
    let sol = place_guards(&vd, &split);
    times.place_ns = t.elapsed().as_nanos();
    let coverage_ok = coverage_check(&pixel_decompose(&poly), &sol.guards).is_complete();
    let oracle = match oracle {
        Some(oc) => {
            let t = Instant::now();
            let count = min_rguards_exact(&poly, oc)?.count;
            times.oracle_ns = Some(t.elapsed().as_nanos());
            Some(count)
        }
        None => None,
    };
    Ok(RunReport {
        id: format!(
            "m{}-s{}-r{}{}",
            cfg.slabs,
            cfg.seed,
            cfg.range,
            if cfg.unbalanced { "-u" } else { "" }
        ),
        n: poly.len(),
        m: vd.len(),
        parts: split.parts.len(),
        guard_number: sol.guard_number,
        oracle,
        coverage_ok,
        times,
    })
}

/// Runs every instance of `spec` on `jobs` worker threads; reports keep the
/// order of [`CorpusSpec::configs`].
pub fn run_corpus(
    spec: &CorpusSpec,
    oracle: Option<&OracleConfig>,
    jobs: usize,
) -> anyhow::Result<Vec<RunReport>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    pool.install(|| {
        spec.configs()
            .par_iter()
            .map(|cfg| run_instance(cfg, oracle))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_runs() {
        let spec = CorpusSpec {
            max_slabs: 4,
            seeds_per_m: 3,
            base_seed: 0,
        };
        let reports = run_corpus(&spec, Some(&OracleConfig::default()), 2).unwrap();
        assert_eq!(reports.len(), 12);
        assert!(reports.iter().all(|r| r.coverage_ok));
        assert_eq!(reports[0].m, 1);
        assert_eq!(reports[0].guard_number, 1);
    }
}
