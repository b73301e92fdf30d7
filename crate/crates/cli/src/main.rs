use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lattice_sched::format::{parse_schedule, parse_tiling, schedule_to_json, tiling_to_json};
use lattice_sched::lattice::{Point, Prototile, Window};
use lattice_sched::oracle::{
    find_tilings, hnf_bases_of_index, optimal_uniform_schedule, sizes_reach,
};
use lattice_sched::polyomino::{bn_exact, exactness_verdict, BoundaryWord, Verdict};
use lattice_sched::render::render_svg;
use lattice_sched::sim::{run_sim, Mac, SimConfig, Traffic};
use lattice_sched::{
    build_schedule, respectable_index, verify_collision_free, verify_tiling,
    window_supports_optimality, PeriodicTiling, Violation,
};

/// Collision-free broadcast schedules for sensor networks on lattices.
#[derive(Parser)]
#[command(name = "lattice-sched", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a tiling file describes a tiling (exit 1 if it does not).
    Verify { tiling: PathBuf },
    /// Build the tiling schedule; prints m and writes the schedule JSON.
    Schedule {
        tiling: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for collisions of a schedule file on a window.
    Check {
        schedule: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
        window: Window,
        /// Also report whether the window is large enough for the slot
        /// count to be forced on it.
        #[arg(long)]
        optimality_window: bool,
    },
    /// Decide whether a polyomino tiles the plane by translation.
    Exact {
        /// Boundary word over u, d, l, r.
        #[arg(long, conflicts_with = "cells", required_unless_present = "cells")]
        word: Option<String>,
        /// Cells as `x,y;x,y;...` or a JSON list of pairs.
        #[arg(long)]
        cells: Option<String>,
    },
    /// Search periodic tilings by the prototiles of a file.
    Solve {
        /// JSON list of prototiles, or a tiling file whose prototiles are used.
        prototiles: PathBuf,
        /// Largest sublattice index to try.
        #[arg(long, default_value_t = 16)]
        index_bound: u64,
        /// Stop after this many tilings.
        #[arg(long, default_value_t = 10)]
        limit: usize,
        /// Write the first tiling found here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum slot count of a uniform schedule for a tiling.
    Optimize {
        tiling: PathBuf,
        /// Print the slot of every prototile cell too.
        #[arg(long)]
        slots: bool,
    },
    /// Run the broadcast simulator; prints a CSV report.
    Simulate {
        tiling: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window, default_value = "-10,-10,10,10")]
        window: Window,
        #[arg(long, default_value_t = 10_000)]
        rounds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = MacArg::Tiling)]
        mac: MacArg,
        /// Slot count for `--mac random`; defaults to the schedule length.
        #[arg(long)]
        slots: Option<u32>,
        /// Per-round arrival probability; omitted means always backlogged.
        #[arg(long)]
        arrival: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a planar tiling as SVG.
    Render {
        tiling: PathBuf,
        /// Label every sensor with its slot.
        #[arg(long)]
        schedule: bool,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window, default_value = "0,0,7,7")]
        window: Window,
        /// Output path; defaults to the tiling path with an `.svg` extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MacArg {
    Tiling,
    Naive,
    Random,
}

enum Failure {
    /// Well-formed input, negative answer.
    Negative,
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse_window(s: &str) -> Result<Window, String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if !v.len().is_multiple_of(2) || v.is_empty() {
        return Err("expected x0,y0,x1,y1".into());
    }
    let d = v.len() / 2;
    Window::new(v[..d].to_vec(), v[d..].to_vec()).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_tiling(
    path: &Path,
) -> Result<(PeriodicTiling, Option<lattice_sched::GeometricBasis>), Failure> {
    parse_tiling(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verify(path: &Path) -> Outcome {
    let (t, _) = load_tiling(path)?;
    let r = verify_tiling(&t)?;
    if r.valid {
        println!("valid, index={}", r.index);
        return Ok(());
    }
    println!(
        "invalid, index={}, {} violation(s)",
        r.index,
        r.violations.len()
    );
    for v in r.violations.iter().take(10) {
        match v {
            Violation::Uncovered { witness } => println!("  uncovered {witness}"),
            Violation::Overlap {
                witness,
                placements,
            } => {
                println!(
                    "  overlap at {witness} between placements {} and {}",
                    placements.0, placements.1
                )
            }
        }
    }
    Err(Failure::Negative)
}

fn schedule(path: &Path, out: Option<&Path>) -> Outcome {
    let (t, _) = load_tiling(path)?;
    let s = build_schedule(&t)?;
    let json = schedule_to_json(&s);
    match out {
        Some(o) => {
            write(o, &json)?;
            println!("m={}", s.m());
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn check(path: &Path, window: &Window, optimality: bool) -> Outcome {
    let s = parse_schedule(&read(path)?)?;
    let r = verify_collision_free(&s, window)?;
    let mut ok = r.collision_free;
    if ok {
        println!(
            "collision-free, m={}, pairs checked={}",
            s.m(),
            r.pairs_checked
        );
    } else {
        println!("{} collision(s), m={}", r.witnesses.len(), s.m());
        for w in r.witnesses.iter().take(10) {
            println!(
                "  slot {}: {} and {} both reach {}",
                w.slot, w.p, w.q, w.common
            );
        }
    }
    if optimality {
        match respectable_index(s.prototiles()) {
            Some(i) => {
                let gate = window_supports_optimality(window, &s.prototiles()[i])?;
                println!("optimality window: {}", if gate { "yes" } else { "no" });
                ok &= gate;
            }
            None => {
                println!("optimality window: no respectable prototile");
                ok = false;
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn parse_cells(s: &str) -> Result<Vec<Point>, Failure> {
    let pairs: Vec<Vec<i64>> = if s.trim_start().starts_with('[') {
        serde_json::from_str(s)?
    } else {
        s.split(';')
            .filter(|c| !c.trim().is_empty())
            .map(|c| {
                c.split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?
    };
    if pairs.iter().any(|p| p.len() != 2) {
        return Err(Failure::Input("cells must be pairs x,y".into()));
    }
    Ok(pairs.into_iter().map(Point::new).collect())
}

fn exact(word: Option<&str>, cells: Option<&str>) -> Outcome {
    let found = match (word, cells) {
        (Some(w), _) => {
            let w: BoundaryWord = w.parse()?;
            bn_exact(&w)
        }
        (None, Some(c)) => match exactness_verdict(&parse_cells(c)?.into_iter().collect()) {
            Verdict::Exact(f) => Some(f),
            Verdict::NotExact => None,
            Verdict::NotPolyomino(e) => {
                println!("not a polyomino: {e}");
                return Err(Failure::Negative);
            }
        },
        (None, None) => return Err(Failure::Input("give --word or --cells".into())),
    };
    match found {
        Some(f) => {
            println!("exact");
            println!("{f}");
            Ok(())
        }
        None => {
            println!("not exact");
            Err(Failure::Negative)
        }
    }
}

fn load_prototiles(path: &Path) -> Result<Vec<Prototile>, Failure> {
    let text = read(path)?;
    if let Ok((t, _)) = parse_tiling(&text) {
        return Ok(t.prototiles);
    }
    let docs: Vec<Vec<Vec<i64>>> = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    docs.into_iter()
        .enumerate()
        .map(|(i, cells)| Ok(Prototile::new(i, cells.into_iter().map(Point::new))?))
        .collect()
}

fn solve(path: &Path, bound: u64, limit: usize, out: Option<&Path>) -> Outcome {
    let tiles = load_prototiles(path)?;
    let dim = tiles
        .first()
        .ok_or(Failure::Input("no prototiles".into()))?
        .dim();
    let sizes: Vec<usize> = tiles.iter().map(Prototile::len).collect();
    let mut found: Vec<PeriodicTiling> = Vec::new();
    'search: for index in 1..=bound {
        if !sizes_reach(&sizes, index as usize) {
            continue;
        }
        for basis in hnf_bases_of_index(dim, index) {
            for sol in find_tilings(&tiles, &basis, limit - found.len())? {
                let t = sol.into_tiling(&basis, &tiles)?;
                let gens: Vec<String> =
                    t.basis.generators().iter().map(|g| g.to_string()).collect();
                let pls: Vec<String> = t
                    .placements
                    .iter()
                    .map(|p| format!("{}#{}", p.offset, p.tile))
                    .collect();
                println!(
                    "index={index} basis={} placements={}",
                    gens.join(" "),
                    pls.join(" ")
                );
                found.push(t);
                if found.len() >= limit {
                    break 'search;
                }
            }
        }
    }
    if found.is_empty() {
        println!("no tiling with index <= {bound}");
        return Err(Failure::Negative);
    }
    if let Some(o) = out {
        write(o, &tiling_to_json(&found[0], None))?;
    }
    Ok(())
}

fn optimize(path: &Path, slots: bool) -> Outcome {
    let (t, _) = load_tiling(path)?;
    let u = optimal_uniform_schedule(&t)?;
    println!("{}", u.m);
    if slots {
        for ((tile, cell), slot) in &u.slots {
            println!("  tile {tile} cell {cell}: slot {slot}");
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    path: &Path,
    window: Window,
    rounds: u64,
    seed: u64,
    mac: MacArg,
    slots: Option<u32>,
    arrival: Option<f64>,
    out: Option<&Path>,
) -> Outcome {
    let (t, _) = load_tiling(path)?;
    let mac = match mac {
        MacArg::Tiling => Mac::TilingTdma,
        MacArg::Naive => Mac::NaiveTdmaRoundRobin,
        MacArg::Random => Mac::RandomSlot {
            m: match slots {
                Some(m) => m,
                None => build_schedule(&t)?.m(),
            },
        },
    };
    let traffic = match arrival {
        Some(p) => Traffic::Bernoulli { p },
        None => Traffic::AlwaysBacklogged,
    };
    let cfg = SimConfig {
        window,
        rounds,
        mac,
        traffic,
        seed,
    };
    let csv = run_sim(&t, &cfg)?.to_csv();
    match out {
        Some(o) => write(o, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn render(path: &Path, with_schedule: bool, window: &Window, out: Option<PathBuf>) -> Outcome {
    let (t, geometry) = load_tiling(path)?;
    let s = if with_schedule {
        Some(build_schedule(&t)?)
    } else {
        None
    };
    let svg = render_svg(&t, s.as_ref(), window, geometry.as_ref())?;
    let out = out.unwrap_or_else(|| path.with_extension("svg"));
    write(&out, &svg)?;
    println!("{}", out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { tiling } => verify(&tiling),
        Command::Schedule { tiling, out } => schedule(&tiling, out.as_deref()),
        Command::Check {
            schedule,
            window,
            optimality_window,
        } => check(&schedule, &window, optimality_window),
        Command::Exact { word, cells } => exact(word.as_deref(), cells.as_deref()),
        Command::Solve {
            prototiles,
            index_bound,
            limit,
            out,
        } => solve(&prototiles, index_bound, limit.max(1), out.as_deref()),
        Command::Optimize { tiling, slots } => optimize(&tiling, slots),
        Command::Simulate {
            tiling,
            window,
            rounds,
            seed,
            mac,
            slots,
            arrival,
            out,
        } => simulate(
            &tiling,
            window,
            rounds,
            seed,
            mac,
            slots,
            arrival,
            out.as_deref(),
        ),
        Command::Render {
            tiling,
            schedule,
            window,
            out,
        } => render(&tiling, schedule, &window, out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
