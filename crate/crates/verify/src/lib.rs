//! Checks for the acceptance criteria over a shared generated corpus.

use std::panic::{self, AssertUnwindSafe};
use std::time::Duration;

use pathguard::balanced::FlipAt;
use pathguard::decompose::vertical_decompose;
use pathguard::geom::{classify_horizontal_edges, Coord, DoubledPoint, EdgeClass, Point};
use pathguard::guard::{guard_path_polygon_with, place_guards, shadow_necessity_witness};
use pathguard::oracle::{min_rguards_exact, refine_and_recheck, OracleConfig, OracleSolution};
use pathguard::pixel::{pixel_decompose, PixelGrid};
use pathguard::visibility::{coverage_check, r_visible2};
use pathguard::{
    guard_path_polygon, split_balanced, validate_polygon, GenConfig, GuardSolution, OrthoPolygon,
    VerticalDecomposition,
};
use pathguard_cli::bench::{log_log_slope, run_bench};
use pathguard_cli::corpus::CorpusSpec;
use rayon::prelude::*;

pub const SUITE_BUDGET: Duration = Duration::from_secs(300);
pub const ORACLE: OracleConfig = OracleConfig { pixel_cap: 100_000 };

pub struct Instance {
    pub cfg: GenConfig,
    pub poly: OrthoPolygon,
    pub grid: PixelGrid,
    pub vd: VerticalDecomposition,
    /// `Err` holds the message of a failed runtime assertion.
    pub sol: Result<GuardSolution, String>,
    pub oracle: OracleSolution,
}

impl Instance {
    pub fn id(&self) -> String {
        format!(
            "m={} seed={} range={}{}",
            self.cfg.slabs,
            self.cfg.seed,
            self.cfg.range,
            if self.cfg.unbalanced {
                " unbalanced"
            } else {
                ""
            }
        )
    }
}

pub fn build(cfg: GenConfig) -> Instance {
    let poly = pathguard::generate(&cfg).expect("corpus config is valid");
    let grid = pixel_decompose(&poly);
    let vd = vertical_decompose(&poly).expect("generated polygons are paths");
    let split = split_balanced(&vd);
    let sol = panic::catch_unwind(AssertUnwindSafe(|| place_guards(&vd, &split))).map_err(|e| {
        e.downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default()
    });
    let oracle = min_rguards_exact(&poly, &ORACLE).expect("pixel cap covers the corpus");
    Instance {
        cfg,
        poly,
        grid,
        vd,
        sol,
        oracle,
    }
}

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: String, failures: Vec<String>) -> Self {
        Outcome {
            pass,
            detail,
            failures,
        }
    }
}

fn solutions(corpus: &[Instance]) -> impl Iterator<Item = (&Instance, &GuardSolution)> {
    corpus
        .iter()
        .filter_map(|i| i.sol.as_ref().ok().map(|s| (i, s)))
}

/// Algorithm count equals the exact optimum on every instance, within the
/// time budget.
pub fn optimality(corpus: &[Instance], elapsed: Duration) -> Outcome {
    let mut failures = Vec::new();
    let mut above = 0;
    for inst in corpus {
        match &inst.sol {
            Ok(sol) if sol.guard_number == inst.oracle.count => {}
            Ok(sol) => {
                if sol.guard_number > inst.oracle.count {
                    above += 1;
                }
                failures.push(format!(
                    "{}: algorithm {} vs optimum {}",
                    inst.id(),
                    sol.guard_number,
                    inst.oracle.count
                ));
            }
            Err(e) => failures.push(format!("{}: placement panicked: {e}", inst.id())),
        }
    }
    let in_time = elapsed < SUITE_BUDGET;
    if !in_time {
        failures.push(format!("suite took {elapsed:?}"));
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} instances, {} equal the optimum, {} above it, {:.1}s elapsed",
            corpus.len(),
            corpus.len() - failures.len() + usize::from(!in_time),
            above,
            elapsed.as_secs_f64()
        ),
        failures,
    )
}

/// Algorithm outputs and oracle witnesses cover every pixel, and no single
/// algorithm guard can be dropped.
pub fn coverage(corpus: &[Instance]) -> Outcome {
    let failures: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|inst| {
            let mut f = Vec::new();
            if !coverage_check(&inst.grid, &inst.oracle.guards).is_complete() {
                f.push(format!(
                    "{}: oracle witness leaves pixels uncovered",
                    inst.id()
                ));
            }
            if let Ok(sol) = &inst.sol {
                if !coverage_check(&inst.grid, &sol.guards).is_complete() {
                    f.push(format!("{}: algorithm leaves pixels uncovered", inst.id()));
                }
                if sol.guard_number >= 2 {
                    for k in 0..sol.guards.len() {
                        let mut fewer = sol.guards.clone();
                        fewer.remove(k);
                        if coverage_check(&inst.grid, &fewer).is_complete() {
                            f.push(format!("{}: guard {k} is redundant", inst.id()));
                        }
                    }
                }
            }
            f
        })
        .collect();
    let tight = solutions(corpus)
        .filter(|(_, s)| s.guard_number >= 2)
        .count();
    Outcome::new(
        failures.is_empty(),
        format!("{} instances, {tight} checked for tightness", corpus.len()),
        failures,
    )
}

/// Vertex, slab and pixel counts.
pub fn counting(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    for inst in corpus {
        let n = inst.poly.len();
        let m = (n - 2) / 2;
        let ok = inst.poly.reflex_count() == (n - 4) / 2
            && inst.poly.convex_count() == (n + 4) / 2
            && inst.vd.len() == m
            && inst.grid.len() <= m * m;
        if !ok {
            failures.push(format!("{}: counts off", inst.id()));
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{} instances", corpus.len()),
        failures,
    )
}

/// Fixtures for the cut-assignment cases: local minimum before the cut,
/// after it, both, or neither, with the neighbours of the cut slab hanging
/// from opposite or from the same boundary.
pub struct CutFixture {
    pub name: &'static str,
    pub prev_local_min: bool,
    pub next_local_min: bool,
    pub same_side: bool,
    pub vertices: &'static [(Coord, Coord)],
}

pub const CUT_FIXTURES: &[CutFixture] = &[
    CutFixture {
        name: "(a) both neighbours local minima",
        prev_local_min: true,
        next_local_min: true,
        same_side: false,
        vertices: &[
            (0, 0),
            (1, 0),
            (1, 3),
            (3, 3),
            (3, 1),
            (9, 1),
            (9, 6),
            (7, 6),
            (7, 2),
            (5, 2),
            (5, 4),
            (0, 4),
        ],
    },
    CutFixture {
        name: "(a) same side",
        prev_local_min: true,
        next_local_min: true,
        same_side: true,
        vertices: &[
            (0, 3),
            (4, 3),
            (4, 0),
            (17, 0),
            (17, 3),
            (13, 3),
            (13, 1),
            (9, 1),
            (9, 6),
            (8, 6),
            (8, 3),
            (7, 3),
            (7, 6),
            (0, 6),
        ],
    },
    CutFixture {
        name: "(b) previous local minimum",
        prev_local_min: true,
        next_local_min: false,
        same_side: false,
        vertices: &[
            (0, 2),
            (2, 2),
            (2, 3),
            (4, 3),
            (4, 0),
            (8, 0),
            (8, 2),
            (6, 2),
            (6, 4),
            (0, 4),
        ],
    },
    CutFixture {
        name: "(b) same side",
        prev_local_min: true,
        next_local_min: false,
        same_side: true,
        vertices: &[
            (0, 3),
            (2, 3),
            (2, 0),
            (11, 0),
            (11, 1),
            (10, 1),
            (10, 6),
            (9, 6),
            (9, 3),
            (6, 3),
            (6, 6),
            (0, 6),
        ],
    },
    CutFixture {
        name: "(c) next local minimum",
        prev_local_min: false,
        next_local_min: true,
        same_side: false,
        vertices: &[
            (0, 3),
            (4, 3),
            (4, 1),
            (9, 1),
            (9, 0),
            (13, 0),
            (13, 2),
            (7, 2),
            (7, 4),
            (0, 4),
        ],
    },
    CutFixture {
        name: "(c) same side",
        prev_local_min: false,
        next_local_min: true,
        same_side: true,
        vertices: &[
            (0, 2),
            (4, 2),
            (4, 0),
            (15, 0),
            (15, 2),
            (11, 2),
            (11, 1),
            (9, 1),
            (9, 4),
            (7, 4),
            (7, 3),
            (0, 3),
        ],
    },
    CutFixture {
        name: "(d) no local minimum",
        prev_local_min: false,
        next_local_min: false,
        same_side: false,
        vertices: &[
            (0, 3),
            (3, 3),
            (3, 1),
            (11, 1),
            (11, 2),
            (7, 2),
            (7, 4),
            (0, 4),
        ],
    },
    CutFixture {
        name: "(d) same side",
        prev_local_min: false,
        next_local_min: false,
        same_side: true,
        vertices: &[
            (0, 2),
            (3, 2),
            (3, 1),
            (7, 1),
            (7, 4),
            (10, 4),
            (10, 6),
            (1, 6),
            (1, 3),
            (0, 3),
        ],
    },
];

/// The cut rule never loses to its flip on the case fixtures, wins strictly
/// on a local-minimum fixture, and matches the optimum.
pub fn cut_cases() -> Outcome {
    let mut failures = Vec::new();
    let mut strict_local_min = 0;
    let mut lines = Vec::new();
    for fx in CUT_FIXTURES {
        let pts: Vec<Point> = fx.vertices.iter().map(|&(x, y)| Point::new(x, y)).collect();
        let poly = validate_polygon(&pts).expect("fixture is valid");
        let vd = vertical_decompose(&poly).expect("fixture is a path");
        let split = split_balanced(&vd);
        let Some(cut) = split.cuts.first().copied() else {
            failures.push(format!("{}: no cut", fx.name));
            continue;
        };
        let slabs = vd.slabs();
        let shares_top = |k: usize| slabs[k].upper_y() == slabs[cut.cut].upper_y();
        let same_side = shares_top(cut.cut - 1) == shares_top(cut.cut + 1);
        if cut.prev_local_min != fx.prev_local_min
            || cut.next_local_min != fx.next_local_min
            || same_side != fx.same_side
        {
            failures.push(format!("{}: fixture does not realise its case", fx.name));
        }
        let implemented = guard_path_polygon(&poly).unwrap().guard_number;
        let flipped = guard_path_polygon_with(&poly, &mut FlipAt(0))
            .unwrap()
            .guard_number;
        let optimum = min_rguards_exact(&poly, &ORACLE).unwrap().count;
        if implemented > flipped {
            failures.push(format!(
                "{}: implemented {implemented} > flipped {flipped}",
                fx.name
            ));
        }
        if implemented != optimum {
            failures.push(format!(
                "{}: implemented {implemented} vs optimum {optimum}",
                fx.name
            ));
        }
        if fx.prev_local_min && implemented < flipped {
            strict_local_min += 1;
        }
        lines.push(format!(
            "{} {implemented}/{flipped}/{optimum}",
            fx.name.split(' ').next().unwrap()
        ));
    }
    if strict_local_min == 0 {
        failures.push("no local-minimum fixture is strictly better than its flip".into());
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} fixtures (implemented/flipped/optimum: {}), {strict_local_min} strict local-minimum wins",
            CUT_FIXTURES.len(),
            lines.join(", ")
        ),
        failures,
    )
}

/// Every tooth edge has an oracle guard in its orthogonal shadow.
pub fn shadow_necessity(corpus: &[Instance]) -> Outcome {
    let mut teeth = 0;
    let mut failures = Vec::new();
    for inst in corpus {
        for class in classify_horizontal_edges(&inst.poly) {
            if class.class != EdgeClass::Tooth {
                continue;
            }
            teeth += 1;
            if !shadow_necessity_witness(&inst.poly, &inst.grid, class.edge, &inst.oracle.guards) {
                failures.push(format!(
                    "{}: no witness guard in the shadow of edge {}",
                    inst.id(),
                    class.edge
                ));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{teeth} tooth edges"),
        failures,
    )
}

/// Pixel centres strictly inside the rectangle's interior.
fn interior_centres(grid: &PixelGrid, r: &pathguard::AxisRect) -> Vec<DoubledPoint> {
    grid.pixels()
        .iter()
        .map(|p| p.rect.center2())
        .filter(|c| {
            c.x2 > 2 * r.lo.x && c.x2 < 2 * r.hi.x && c.y2 > 2 * r.lo.y && c.y2 < 2 * r.hi.y
        })
        .collect()
}

/// Guards lie in their corridors, corridors lie in the polygon, and no
/// two corridor interiors see each other.
pub fn corridors(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for (inst, sol) in solutions(corpus) {
        for part in &sol.parts {
            let c = part.part.corridor;
            if !inst.grid.contains_rect(&c) {
                failures.push(format!("{}: corridor {c:?} not contained", inst.id()));
            }
            for pos in &part.positions {
                if !c.contains_doubled(pos.guard) {
                    failures.push(format!("{}: guard outside its corridor", inst.id()));
                }
            }
        }
        let centres: Vec<Vec<DoubledPoint>> = sol
            .parts
            .iter()
            .map(|p| interior_centres(&inst.grid, &p.part.corridor))
            .collect();
        for i in 0..centres.len() {
            for j in i + 1..centres.len() {
                for &p in &centres[i] {
                    for &q in &centres[j] {
                        pairs += 1;
                        if r_visible2(&inst.grid, p, q).unwrap() {
                            failures.push(format!(
                                "{}: corridors {i} and {j} see each other at {p} and {q}",
                                inst.id()
                            ));
                        }
                    }
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{pairs} cross-corridor point pairs sampled"),
        failures,
    )
}

/// Halving the pixel size leaves the optimum unchanged.
pub fn refinement(corpus: &[Instance]) -> Outcome {
    let small: Vec<&Instance> = corpus.iter().filter(|i| i.grid.len() <= 100).collect();
    let failures: Vec<String> = small
        .par_iter()
        .filter_map(|inst| {
            let refined = refine_and_recheck(&inst.poly, 2, &ORACLE).unwrap();
            (refined != inst.oracle.count).then(|| {
                format!(
                    "{}: refined {refined} vs base {}",
                    inst.id(),
                    inst.oracle.count
                )
            })
        })
        .collect();
    Outcome::new(
        failures.is_empty(),
        format!("{} instances", small.len()),
        failures,
    )
}

/// Log-log slope of running time and the absolute time at two million
/// vertices.
pub fn linear_time() -> Outcome {
    let rows = run_bench(&[1_000, 10_000, 100_000, 1_000_000], 5, 0).unwrap();
    let slope = log_log_slope(&rows);
    let largest = rows.last().unwrap();
    let largest_s = largest.median_ns as f64 / 1e9;
    let mut failures = Vec::new();
    if slope > 1.15 {
        failures.push(format!("slope {slope:.3} exceeds 1.15"));
    }
    if largest.n != 2_000_002 || largest_s >= 5.0 {
        failures.push(format!("n = {} took {largest_s:.3}s", largest.n));
    }
    let per_vertex: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.0}", r.ns_per_vertex))
        .collect();
    Outcome::new(
        failures.is_empty(),
        format!(
            "slope {slope:.3}, n = {} in {largest_s:.3}s, ns/vertex [{}]",
            largest.n,
            per_vertex.join(", ")
        ),
        failures,
    )
}

/// No placement assertion fires and positions are interior-disjoint.
pub fn structure(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let mut positions = 0;
    for inst in corpus {
        match &inst.sol {
            Err(e) => failures.push(format!("{}: assertion fired: {e}", inst.id())),
            Ok(sol) => {
                let rects: Vec<_> = sol.positions().map(|p| p.rect).collect();
                positions += rects.len();
                for a in 0..rects.len() {
                    for b in a + 1..rects.len() {
                        if rects[a].interiors_overlap(&rects[b]) {
                            failures.push(format!("{}: positions {a} and {b} overlap", inst.id()));
                        }
                    }
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{} instances, {positions} positions", corpus.len()),
        failures,
    )
}

/// The shared corpus: slab counts 1 to 30, twenty seeds each, half of the
/// seeds forcing a corridor break. Built in parallel.
pub fn build_corpus() -> Vec<Instance> {
    let spec = CorpusSpec {
        max_slabs: 30,
        seeds_per_m: 20,
        base_seed: 0,
    };
    // Assertion failures inside placement are recorded per instance and
    // reported by `structure`, so the default hook is silenced meanwhile.
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let corpus = spec.configs().into_par_iter().map(build).collect();
    panic::set_hook(hook);
    corpus
}
