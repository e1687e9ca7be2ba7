//! Wall-clock scaling of the guard pipeline on generated polygons.

use std::hint::black_box;
use std::time::Instant;

use pathguard::{generate, guard_path_polygon, GenConfig};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub median_ns: u128,
    pub ns_per_vertex: f64,
}

pub const CSV_HEADER: &str = "m,n,median_ns,ns_per_vertex";

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{:.3}",
            self.m, self.n, self.median_ns, self.ns_per_vertex
        )
    }
}

/// Times `guard_path_polygon` on one generated polygon per size. Generation
/// and validation are not timed.
pub fn run_bench(sizes: &[usize], repeats: usize, seed: u64) -> anyhow::Result<Vec<BenchRow>> {
    let repeats = repeats.max(1);
    let mut rows = Vec::with_capacity(sizes.len());
    for &m in sizes {
        let poly = generate(&GenConfig {
            range: 1_000_000,
            ..GenConfig::new(m, seed)
        })?;
        let mut times: Vec<u128> = (0..repeats)
            .map(|_| {
                let t = Instant::now();
                let sol =
                    guard_path_polygon(black_box(&poly)).expect("generated polygons are paths");
                black_box(sol.guard_number);
                t.elapsed().as_nanos()
            })
            .collect();
        times.sort_unstable();
        let median_ns = times[times.len() / 2];
        rows.push(BenchRow {
            m,
            n: poly.len(),
            median_ns,
            ns_per_vertex: median_ns as f64 / poly.len() as f64,
        });
    }
    Ok(rows)
}

/// Least-squares slope of `ln(median_ns)` against `ln(n)`.
pub fn log_log_slope(rows: &[BenchRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), (r.median_ns.max(1) as f64).ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_slab_row() {
        let rows = run_bench(&[1], 5, 0).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].n, 4);
    }

    #[test]
    fn slope_of_linear_data() {
        let rows: Vec<BenchRow> = [10usize, 100, 1000]
            .iter()
            .map(|&n| BenchRow {
                m: n,
                n,
                median_ns: 7 * n as u128,
                ns_per_vertex: 7.0,
            })
            .collect();
        assert!((log_log_slope(&rows) - 1.0).abs() < 1e-9);
    }
}
