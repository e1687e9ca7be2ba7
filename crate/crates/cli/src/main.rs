use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use pathguard::format::write_polygon;
use pathguard::oracle::{min_rguards_exact, OracleConfig};
use pathguard::pixel::pixel_decompose;
use pathguard::visibility::coverage_check;
use pathguard::{generate, guard_path_polygon, split_balanced, vertical_decompose, GenConfig};
use pathguard_cli::bench::{run_bench, CSV_HEADER};
use pathguard_cli::corpus::{run_corpus, CorpusSpec};
use pathguard_cli::input::{load_guards, load_polygon};
use pathguard_cli::json::{
    BalancedJson, CheckJson, DecompositionJson, OracleJson, SolutionJson, ValidateJson,
};
use pathguard_cli::render::{render_svg, Overlay};
use serde::Serialize;

/// Minimum r-guard placement for orthogonal path polygons.
///
/// Exit codes: 0 success, 1 check failed, 2 invalid input.
#[derive(Parser)]
#[command(name = "pathguard", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a polygon file and print its vertex counts.
    Validate { file: String },
    /// Print the vertical decomposition, or the balanced split.
    Decompose {
        file: String,
        #[arg(long)]
        balanced: bool,
    },
    /// Place guards and print the solution as JSON.
    Guard { file: String },
    /// Solve exactly by set cover over the pixel grid (small inputs only).
    Oracle { file: String },
    /// Check that a guard file covers the polygon.
    Check {
        file: String,
        #[arg(long)]
        guards: String,
    },
    /// Write a random path polygon to standard output.
    Gen {
        #[arg(long)]
        slabs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        range: i64,
        #[arg(long)]
        unbalanced: bool,
        /// Probability that a step changes the top boundary.
        #[arg(long, default_value_t = 0.5)]
        wind: f64,
    },
    /// Draw the polygon as SVG.
    Render {
        file: String,
        #[arg(long)]
        out: String,
        /// Guard file to draw.
        #[arg(long)]
        guards: Option<String>,
        /// Draw seams and corridors.
        #[arg(long)]
        decomposition: bool,
        /// Solve and draw positions and guards.
        #[arg(long)]
        solve: bool,
    },
    /// Time the guard pipeline; prints CSV.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run generated instances and print one JSON report per line.
    Corpus {
        #[arg(long, default_value_t = 30)]
        max_slabs: usize,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        base_seed: u64,
        /// Also run the exact oracle on each instance.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Command::Validate { file } => {
            let poly = load_polygon(&file)?;
            print_json(&ValidateJson::new(&poly))?;
        }
        Command::Decompose { file, balanced } => {
            let poly = load_polygon(&file)?;
            let vd = vertical_decompose(&poly)?;
            if balanced {
                print_json(&BalancedJson::new(&vd, &split_balanced(&vd)))?;
            } else {
                print_json(&DecompositionJson::from(&vd))?;
            }
        }
        Command::Guard { file } => {
            let poly = load_polygon(&file)?;
            let sol = guard_path_polygon(&poly)?;
            print_json(&SolutionJson::from(&sol))?;
        }
        Command::Oracle { file } => {
            let poly = load_polygon(&file)?;
            let sol = min_rguards_exact(&poly, &OracleConfig::from_env())?;
            print_json(&OracleJson::new(&sol, pixel_decompose(&poly).len()))?;
        }
        Command::Check { file, guards } => {
            let poly = load_polygon(&file)?;
            let guards = load_guards(&guards)?;
            let grid = pixel_decompose(&poly);
            let cov = coverage_check(&grid, &guards);
            print_json(&CheckJson {
                covered: cov.is_complete(),
                uncovered: cov
                    .uncovered
                    .iter()
                    .map(|&id| grid.pixel(id).rect)
                    .collect(),
            })?;
            if !cov.is_complete() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Gen {
            slabs,
            seed,
            range,
            unbalanced,
            wind,
        } => {
            let poly = generate(&GenConfig {
                slabs,
                range,
                seed,
                wind_probability: wind,
                unbalanced,
            })?;
            io::stdout().write_all(write_polygon(poly.vertices()).as_bytes())?;
        }
        Command::Render {
            file,
            out,
            guards,
            decomposition,
            solve,
        } => {
            let poly = load_polygon(&file)?;
            let extra = match guards {
                Some(path) => load_guards(&path)?,
                None => Vec::new(),
            };
            let vd = if decomposition {
                Some(vertical_decompose(&poly)?)
            } else {
                None
            };
            let split = vd.as_ref().map(split_balanced);
            let sol = if solve {
                Some(guard_path_polygon(&poly)?)
            } else {
                None
            };
            let overlay = Overlay {
                decomposition: vd.as_ref().zip(split.as_ref()),
                solution: sol.as_ref(),
                guards: &extra,
            };
            fs::write(&out, render_svg(&poly, &overlay))
                .with_context(|| format!("writing {out}"))?;
        }
        Command::Bench {
            sizes,
            repeats,
            seed,
        } => {
            let rows = run_bench(&sizes, repeats, seed)?;
            let mut out = io::stdout().lock();
            writeln!(out, "{CSV_HEADER}")?;
            for r in rows {
                writeln!(out, "{}", r.csv())?;
            }
        }
        Command::Corpus {
            max_slabs,
            seeds,
            base_seed,
            oracle,
            jobs,
        } => {
            let spec = CorpusSpec {
                max_slabs,
                seeds_per_m: seeds,
                base_seed,
            };
            let cfg = oracle.then(OracleConfig::from_env);
            let reports = run_corpus(&spec, cfg.as_ref(), jobs.max(1))?;
            let mut ok = true;
            for r in &reports {
                print_json(r)?;
                ok &= r.coverage_ok && r.agrees();
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
