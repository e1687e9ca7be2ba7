//! Exact minimum r-guard count for small polygons, by set cover.
//!
//! The universe is the pixel set. Candidates are every element of the
//! fine lattice that lies in the polygon: pixel interiors, open pieces of
//! grid lines, and grid vertices. Any point of the polygon sees exactly the
//! pixels its lattice element sees, so this candidate set loses nothing.
//! The cover is solved by branch and bound after dominance reductions.

use std::env;

use thiserror::Error;

use crate::geom::{DoubledPoint, OrthoPolygon};
use crate::pixel::{pixel_decompose, pixel_decompose_refined, PixelGrid};
use crate::visibility::sees_pixel;

pub const DEFAULT_PIXEL_CAP: usize = 400;
pub const PIXEL_CAP_ENV: &str = "PATHGUARD_PIXEL_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub pixel_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            pixel_cap: DEFAULT_PIXEL_CAP,
        }
    }
}

impl OracleConfig {
    /// Default config, with the cap overridden by `PATHGUARD_PIXEL_CAP`
    /// when set to a valid number.
    pub fn from_env() -> Self {
        let pixel_cap = env::var(PIXEL_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_PIXEL_CAP);
        OracleConfig { pixel_cap }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("TooLarge: {pixels} pixels exceed the cap of {cap}")]
    TooLarge { pixels: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSolution {
    pub count: usize,
    /// Witness guards in the doubled coordinates of the grid that was solved.
    pub guards: Vec<DoubledPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn difference(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    k * 64 + b
                })
            })
        })
    }
}

/// Set-cover view of a guarding instance.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub candidates: Vec<DoubledPoint>,
    /// For each candidate, the sorted ids of pixels it sees entirely.
    pub cover_sets: Vec<Vec<usize>>,
    pub universe: usize,
}

pub fn cover_instance(grid: &PixelGrid) -> CoverInstance {
    let (w, h) = grid.fine_dims();
    let mut candidates = Vec::new();
    let mut cover_sets = Vec::new();
    for j in 0..h {
        for i in 0..w {
            if !grid.fine_inside(i, j) {
                continue;
            }
            candidates.push(grid.fine_point(i, j));
            cover_sets.push(
                (0..grid.len())
                    .filter(|&id| sees_pixel(grid, i, j, id))
                    .collect(),
            );
        }
    }
    CoverInstance {
        candidates,
        cover_sets,
        universe: grid.len(),
    }
}

/// Minimum number of sets covering `0..universe`; returns the chosen set
/// indices. Every element must be coverable.
pub fn solve_set_cover(universe: usize, sets: &[Vec<usize>]) -> Vec<usize> {
    if universe == 0 {
        return Vec::new();
    }
    let bitsets: Vec<BitSet> = sets
        .iter()
        .map(|s| {
            let mut b = BitSet::new(universe);
            s.iter().for_each(|&e| b.insert(e));
            b
        })
        .collect();
    let mut all = BitSet::new(universe);
    bitsets.iter().for_each(|b| all.union_with(b));
    assert_eq!(all.count(), universe, "some element is not coverable");

    let reduced = Reduced::new(universe, &bitsets);
    let mut search = Search::new(&reduced);
    let greedy = search.greedy();
    search.best = greedy;
    let mut chosen = Vec::new();
    search.run(BitSet::full(reduced.elements), &mut chosen);
    let mut picked: Vec<usize> = search.best.iter().map(|&s| reduced.set_origin[s]).collect();
    picked.sort_unstable();
    picked
}

/// Instance after removing dominated sets and dominating elements.
struct Reduced {
    elements: usize,
    /// Sets over reduced elements.
    sets: Vec<BitSet>,
    set_origin: Vec<usize>,
    /// For each reduced element, the reduced sets containing it.
    elem_sets: Vec<Vec<usize>>,
}

impl Reduced {
    fn new(universe: usize, sets: &[BitSet]) -> Self {
        let mut live_sets: Vec<usize> = (0..sets.len()).collect();
        let mut live_elems: Vec<usize> = (0..universe).collect();
        let mut projected: Vec<BitSet> = sets.to_vec();
        loop {
            // A set contained in another set is never needed.
            live_sets.sort_by_key(|&s| (std::cmp::Reverse(projected[s].count()), s));
            let mut kept: Vec<usize> = Vec::new();
            for &s in &live_sets {
                if projected[s].is_empty() {
                    continue;
                }
                if !kept.iter().any(|&k| projected[s].is_subset(&projected[k])) {
                    kept.push(s);
                }
            }
            // An element covered by every set covering another element is
            // covered for free.
            let cov: Vec<BitSet> = live_elems
                .iter()
                .map(|&e| {
                    let mut b = BitSet::new(kept.len());
                    for (k, &s) in kept.iter().enumerate() {
                        if projected[s].contains(e) {
                            b.insert(k);
                        }
                    }
                    b
                })
                .collect();
            let mut order: Vec<usize> = (0..live_elems.len()).collect();
            order.sort_by_key(|&i| (cov[i].count(), i));
            let mut keep_elems: Vec<usize> = Vec::new();
            for &i in &order {
                if !keep_elems.iter().any(|&k| cov[k].is_subset(&cov[i])) {
                    keep_elems.push(i);
                }
            }
            let changed = kept.len() != live_sets.len() || keep_elems.len() != live_elems.len();
            let mut elem_mask = BitSet::new(universe);
            let new_elems: Vec<usize> = {
                let mut v: Vec<usize> = keep_elems.iter().map(|&i| live_elems[i]).collect();
                v.sort_unstable();
                v
            };
            new_elems.iter().for_each(|&e| elem_mask.insert(e));
            for &s in &kept {
                projected[s] = BitSet {
                    words: projected[s]
                        .words
                        .iter()
                        .zip(&elem_mask.words)
                        .map(|(a, b)| a & b)
                        .collect(),
                };
            }
            live_sets = kept;
            live_elems = new_elems;
            if !changed {
                break;
            }
        }

        let index_of: std::collections::HashMap<usize, usize> = live_elems
            .iter()
            .enumerate()
            .map(|(k, &e)| (e, k))
            .collect();
        let elements = live_elems.len();
        let mut elem_sets = vec![Vec::new(); elements];
        let reduced_sets: Vec<BitSet> = live_sets
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let mut b = BitSet::new(elements);
                for e in projected[s].iter() {
                    let r = index_of[&e];
                    b.insert(r);
                    elem_sets[r].push(k);
                }
                b
            })
            .collect();
        Reduced {
            elements,
            sets: reduced_sets,
            set_origin: live_sets,
            elem_sets,
        }
    }
}

struct Search<'a> {
    inst: &'a Reduced,
    best: Vec<usize>,
    max_set: usize,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Reduced) -> Self {
        let max_set = inst
            .sets
            .iter()
            .map(BitSet::count)
            .max()
            .unwrap_or(1)
            .max(1);
        Search {
            inst,
            best: Vec::new(),
            max_set,
        }
    }

    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = BitSet::full(self.inst.elements);
        let mut out = Vec::new();
        while !uncovered.is_empty() {
            let s = (0..self.inst.sets.len())
                .max_by_key(|&s| {
                    (
                        self.inst.sets[s].intersection_count(&uncovered),
                        std::cmp::Reverse(s),
                    )
                })
                .unwrap();
            uncovered = uncovered.difference(&self.inst.sets[s]);
            out.push(s);
        }
        out
    }

    /// Elements no two of which share a set each need their own guard.
    fn lower_bound(&self, uncovered: &BitSet) -> usize {
        let mut elems: Vec<usize> = uncovered.iter().collect();
        elems.sort_by_key(|&e| (self.inst.elem_sets[e].len(), e));
        let mut used = vec![false; self.inst.sets.len()];
        let mut packed = 0;
        for e in elems {
            let sets = &self.inst.elem_sets[e];
            if sets.iter().all(|&s| !used[s]) {
                sets.iter().for_each(|&s| used[s] = true);
                packed += 1;
            }
        }
        packed.max(uncovered.count().div_ceil(self.max_set))
    }

    fn run(&mut self, uncovered: BitSet, chosen: &mut Vec<usize>) {
        if uncovered.is_empty() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + self.lower_bound(&uncovered) >= self.best.len() {
            return;
        }
        // Branch on the uncovered element with the fewest covering sets.
        let pivot = uncovered
            .iter()
            .min_by_key(|&e| self.inst.elem_sets[e].len())
            .unwrap();
        let mut options: Vec<(usize, usize)> = self.inst.elem_sets[pivot]
            .iter()
            .map(|&s| (self.inst.sets[s].intersection_count(&uncovered), s))
            .collect();
        options.sort_by(|a, b| b.cmp(a));
        for (_, s) in options {
            chosen.push(s);
            let rest = uncovered.difference(&self.inst.sets[s]);
            self.run(rest, chosen);
            chosen.pop();
            if chosen.len() + 1 >= self.best.len() {
                break;
            }
        }
    }
}

/// Exact minimum guard count over all lattice candidates of a grid.
pub fn min_rguards_on_grid(grid: &PixelGrid) -> OracleSolution {
    let inst = cover_instance(grid);
    let chosen = solve_set_cover(inst.universe, &inst.cover_sets);
    OracleSolution {
        count: chosen.len(),
        guards: chosen.iter().map(|&c| inst.candidates[c]).collect(),
    }
}

pub fn min_rguards_exact(
    poly: &OrthoPolygon,
    config: &OracleConfig,
) -> Result<OracleSolution, OracleError> {
    let grid = pixel_decompose(poly);
    if grid.len() > config.pixel_cap {
        return Err(OracleError::TooLarge {
            pixels: grid.len(),
            cap: config.pixel_cap,
        });
    }
    Ok(min_rguards_on_grid(&grid))
}

/// Re-solves with every pixel split `factor x factor`. Must agree with
/// [`min_rguards_exact`].
pub fn refine_and_recheck(
    poly: &OrthoPolygon,
    factor: usize,
    config: &OracleConfig,
) -> Result<usize, OracleError> {
    let base = pixel_decompose(poly).len();
    let pixels = base * factor * factor;
    if pixels > config.pixel_cap {
        return Err(OracleError::TooLarge {
            pixels,
            cap: config.pixel_cap,
        });
    }
    let grid = pixel_decompose_refined(poly, factor);
    Ok(min_rguards_on_grid(&grid).count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::visibility::coverage_check;

    /// Exhaustive search over subsets in increasing size.
    fn brute_force(universe: usize, sets: &[Vec<usize>]) -> usize {
        for k in 0..=sets.len() {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let mut seen = vec![false; universe];
                idx.iter()
                    .for_each(|&i| sets[i].iter().for_each(|&e| seen[e] = true));
                if seen.iter().all(|&b| b) {
                    return k;
                }
                // next combination
                let mut p = k;
                while p > 0 && idx[p - 1] == sets.len() - k + p - 1 {
                    p -= 1;
                }
                if p == 0 {
                    break;
                }
                idx[p - 1] += 1;
                for q in p..k {
                    idx[q] = idx[q - 1] + 1;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn set_cover_matches_brute_force() {
        let sets = vec![
            vec![0, 1, 2],
            vec![2, 3],
            vec![3, 4, 5],
            vec![0, 5],
            vec![1, 4],
            vec![6],
            vec![5, 6],
        ];
        let got = solve_set_cover(7, &sets);
        assert_eq!(got.len(), brute_force(7, &sets));
        let mut seen = [false; 7];
        got.iter()
            .for_each(|&s| sets[s].iter().for_each(|&e| seen[e] = true));
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn fixture_optima() {
        let cfg = OracleConfig::default();
        assert_eq!(
            min_rguards_exact(&fixtures::rectangle(), &cfg)
                .unwrap()
                .count,
            1
        );
        assert_eq!(min_rguards_exact(&fixtures::comb(), &cfg).unwrap().count, 3);
        assert_eq!(
            min_rguards_exact(&fixtures::zigzag(), &cfg).unwrap().count,
            2
        );
        assert_eq!(
            min_rguards_exact(&fixtures::l_shape(), &cfg).unwrap().count,
            1
        );
    }

    #[test]
    fn comb_optimum_matches_subset_enumeration() {
        let grid = pixel_decompose(&fixtures::comb());
        let inst = cover_instance(&grid);
        assert_eq!(inst.universe, 8);
        // Candidates at pixel centres only, enumerated exhaustively.
        let centre_sets: Vec<Vec<usize>> = (0..grid.len())
            .map(|id| {
                let c = grid.pixel(id).rect.center2();
                crate::visibility::visibility_region(&grid, c)
                    .unwrap()
                    .covered_pixels
            })
            .collect();
        assert_eq!(brute_force(8, &centre_sets), 3);
    }

    #[test]
    fn witness_covers() {
        let comb = fixtures::comb();
        let sol = min_rguards_exact(&comb, &OracleConfig::default()).unwrap();
        assert!(coverage_check(&pixel_decompose(&comb), &sol.guards).is_complete());
    }

    #[test]
    fn refinement_agrees() {
        let cfg = OracleConfig::default();
        assert_eq!(refine_and_recheck(&fixtures::comb(), 2, &cfg).unwrap(), 3);
        assert_eq!(
            refine_and_recheck(&fixtures::rectangle(), 3, &cfg).unwrap(),
            1
        );
        assert_eq!(refine_and_recheck(&fixtures::zigzag(), 2, &cfg).unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = OracleConfig { pixel_cap: 4 };
        assert_eq!(
            min_rguards_exact(&fixtures::comb(), &cfg),
            Err(OracleError::TooLarge { pixels: 8, cap: 4 })
        );
        assert!(refine_and_recheck(&fixtures::l_shape(), 2, &cfg).is_err());
    }

    #[test]
    fn degenerate_corridor_needs_a_guard_on_a_grid_line() {
        // Band collapses to the line y = 4; one guard at (3, 4) sees all.
        let poly = fixtures::columns(&[0, 2, 4, 6], &[(4, 6), (0, 6), (0, 4)]);
        let sol = min_rguards_exact(&poly, &OracleConfig::default()).unwrap();
        assert_eq!(sol.count, 1);
        assert_eq!(sol.guards[0].y2, 8);
    }
}
