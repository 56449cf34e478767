//! Command-line front end. [`run`] writes to the given streams and returns
//! the process exit code: 0 on success, 1 when a verification or audit
//! fails, 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config_spec::{format_bits, format_glyph, parse_config};
use crate::enumeration::{
    deletability_rate, distribution, duality_check, full_report, oracle_lut, table_csv, table_text,
    TABLES,
};
use crate::grid::{Adjacency, BinaryImage, NeighborhoodConfig};
use crate::metrics::{
    hilditch, is_interior, is_isolated, topological_number, topological_number_complement, yokoi,
};
use crate::pbm::{read_pbm, write_pbm, PbmVariant};
use crate::simplicity::{is_simple, locality_mismatches, lut, Characterization};
use crate::thinning::{thin, ScanOrder, ThinningPolicy};

const GLYPH_HELP: &str = "CONFIG is a decimal mask 0-255, eight 0/1 digits for the neighbors \
E NE N NW W SW S SE, or a 3x3 block with '#' = black, '.' = white and 'x' = center, rows top \
to bottom separated by '/' or newlines (e.g. '.#./#x#/...').";

#[derive(Debug, Parser)]
#[command(name = "topo2d", version, about = "2D digital topology toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reproduce the metric distribution tables and the simple-point counts.
    Enumerate {
        /// Also write table1.csv, table2.csv and table3.csv into this directory.
        #[arg(long, value_name = "DIR")]
        csv: Option<PathBuf>,
    },
    /// Print every metric and simplicity verdict for one configuration.
    #[command(after_help = GLYPH_HELP)]
    Check {
        config: String,
        #[arg(long, value_parser = parse_adjacency)]
        n: Option<Adjacency>,
    },
    /// Exhaustively check every characterization against the brute-force oracle.
    Verify {
        /// Side of the oracle canvas.
        #[arg(long, default_value_t = 5, value_parser = parse_canvas)]
        canvas: usize,
        /// Number of random images for the locality check.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Size of the random images, WxH.
        #[arg(long, default_value = "16x16", value_parser = parse_size)]
        size: (usize, usize),
        /// Seed of the ChaCha8 generator used for random images.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mark the simple points of a PBM image.
    Analyze {
        input: PathBuf,
        #[arg(long, value_parser = parse_adjacency)]
        n: Adjacency,
        /// Write a PBM where simple points are black.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Thin a PBM image by sequential deletion of simple points.
    Thin {
        input: PathBuf,
        #[arg(long, value_parser = parse_adjacency)]
        n: Adjacency,
        /// Keep pixels with exactly one black neighbor.
        #[arg(long)]
        endpoints: bool,
        #[arg(long, value_enum, default_value_t = Scan::Raster)]
        scan: Scan,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the output as plain (P1) PBM instead of raw (P4).
        #[arg(long)]
        plain: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scan {
    Raster,
    Reverse,
}

fn parse_adjacency(s: &str) -> Result<Adjacency, String> {
    s.parse::<u32>()
        .map_err(|e| e.to_string())
        .and_then(|v| Adjacency::try_from(v).map_err(|e| e.to_string()))
}

fn parse_canvas(s: &str) -> Result<usize, String> {
    match s {
        "5" => Ok(5),
        "7" => Ok(7),
        _ => Err(format!("canvas must be 5 or 7, got {s:?}")),
    }
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w: usize = w.parse().map_err(|_| format!("bad width in {s:?}"))?;
    let h: usize = h.parse().map_err(|_| format!("bad height in {s:?}"))?;
    if w == 0 || h == 0 {
        return Err("dimensions must be positive".into());
    }
    Ok((w, h))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

type Outcome = Result<i32, String>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let stream: &mut dyn Write = if code == 0 { out } else { err };
            let _ = stream.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Enumerate { csv } => enumerate(csv.as_deref(), out),
        Command::Check { config, n } => check(&config, n, out),
        Command::Verify {
            canvas,
            random,
            size,
            seed,
        } => verify(canvas, random, size, seed, out),
        Command::Analyze { input, n, out: map } => analyze(&input, n, map.as_deref(), out),
        Command::Thin {
            input,
            n,
            endpoints,
            scan,
            out: path,
            plain,
        } => {
            let policy = ThinningPolicy::new(n)
                .with_endpoints(endpoints)
                .with_scan_order(match scan {
                    Scan::Raster => ScanOrder::Raster,
                    Scan::Reverse => ScanOrder::ReverseRaster,
                });
            let variant = if plain {
                PbmVariant::Plain
            } else {
                PbmVariant::Raw
            };
            thin_cmd(&input, policy, path.as_deref(), variant, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

fn io<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn enumerate(csv: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let mut ok = true;
    for (name, metrics) in TABLES {
        io(writeln!(out, "{name}"))?;
        io(write!(out, "{}", table_text(metrics)))?;
        io(writeln!(out))?;
        for &metric in metrics {
            let d = distribution(metric);
            if !d.matches_reference() {
                ok = false;
                io(writeln!(
                    out,
                    "MISMATCH {metric}: got {:?}, expected {:?}",
                    &d.counts[..5],
                    metric.reference_counts()
                ))?;
            }
        }
    }
    for n in Adjacency::BOTH {
        let rate = deletability_rate(n);
        ok &= rate.simple == 116;
        io(writeln!(
            out,
            "{n}-simple configurations: {rate}; non-simple: {}",
            rate.non_simple()
        ))?;
    }
    let duality = duality_check();
    ok &= duality.passed();
    io(write!(out, "{duality}"))?;

    if let Some(dir) = csv {
        io(fs::create_dir_all(dir))?;
        for (name, metrics) in TABLES {
            io(fs::write(
                dir.join(format!("{name}.csv")),
                table_csv(metrics),
            ))?;
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn check(config: &str, only: Option<Adjacency>, out: &mut dyn Write) -> Outcome {
    let c = io(parse_config(config))?;
    let mut lines = vec![
        format!("mask: {} (bits {})", c, format_bits(c)),
        format_glyph(c),
    ];
    for n in Adjacency::BOTH {
        lines.push(format!("T{n}: {}", topological_number(c, n)));
    }
    for m in Adjacency::BOTH {
        lines.push(format!(
            "T{m} of complement: {}",
            topological_number_complement(c, m)
        ));
    }
    lines.push(format!("H: {}", hilditch(c)));
    for n in Adjacency::BOTH {
        lines.push(format!("Y{n}: {}", yokoi(c, n)));
    }
    for n in Adjacency::BOTH {
        lines.push(format!(
            "{n}-interior: {}, {n}-isolated: {}",
            yes_no(is_interior(c, n)),
            yes_no(is_isolated(c, n))
        ));
    }
    lines.push(format!(
        "4-simple: {}, 8-simple: {}",
        yes_no(lut(Adjacency::Four).get(c)),
        yes_no(lut(Adjacency::Eight).get(c))
    ));
    for n in Adjacency::BOTH {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        for method in Characterization::ALL {
            if !method.supports(n) {
                continue;
            }
            let simple = io(is_simple(c, n, method))?;
            lines.push(format!(
                "  n={n} {method}: {}",
                if simple { "simple" } else { "not simple" }
            ));
        }
    }
    for line in lines {
        io(writeln!(out, "{line}"))?;
    }
    Ok(0)
}

fn verify(
    canvas: usize,
    random: usize,
    (width, height): (usize, usize),
    seed: u64,
    out: &mut dyn Write,
) -> Outcome {
    let mut ok = true;
    for n in Adjacency::BOTH {
        let production = lut(n);
        let oracle = io(oracle_lut(n, canvas))?;
        let diff = production.diff(&oracle);
        ok &= diff.is_empty();
        io(writeln!(
            out,
            "[{}] LUT vs {canvas}x{canvas} oracle (n={n}): {} simple, {} mismatches{}",
            if diff.is_empty() { "PASS" } else { "FAIL" },
            oracle.count(),
            diff.len(),
            mask_list(&diff)
        ))?;
    }

    let report = io(full_report(canvas))?;
    ok &= report.passed();
    io(write!(out, "{report}"))?;

    if random > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pixels = 0usize;
        let mut failures = Vec::new();
        for index in 0..random {
            let img = io(BinaryImage::random(width, height, 0.5, &mut rng))?;
            for n in Adjacency::BOTH {
                pixels += img.black_count();
                for p in locality_mismatches(&img, n) {
                    let mask = img.config_at(p);
                    failures.push(format!("image {index} pixel {p} n={n} mask {mask}"));
                }
            }
        }
        ok &= failures.is_empty();
        io(writeln!(
            out,
            "[{}] locality on {random} random {width}x{height} images (seed {seed}): \
             {pixels} pixel checks, {} mismatches",
            if failures.is_empty() { "PASS" } else { "FAIL" },
            failures.len()
        ))?;
        for f in failures.iter().take(20) {
            io(writeln!(out, "  {f}"))?;
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn mask_list(masks: &[NeighborhoodConfig]) -> String {
    if masks.is_empty() {
        return String::new();
    }
    let list: Vec<String> = masks.iter().map(|m| m.to_string()).collect();
    format!(" (masks: {})", list.join(", "))
}

fn load(path: &Path) -> Result<BinaryImage, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    read_pbm(&bytes).map_err(|e| format!("{}: {e}", path.display()))
}

fn analyze(input: &Path, n: Adjacency, map: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let img = load(input)?;
    let table = lut(n);
    let simple = BinaryImage::from_fn(img.width(), img.height(), |col, row| {
        let p = (col as i64, row as i64).into();
        img.is_black(p) && table.get(img.config_at(p))
    })
    .expect("same dimensions as a valid image");
    io(writeln!(
        out,
        "{}x{} image, {} black pixels, {} {n}-simple",
        img.width(),
        img.height(),
        img.black_count(),
        simple.black_count()
    ))?;
    if let Some(path) = map {
        io(fs::write(path, write_pbm(&simple, PbmVariant::Raw)))?;
    }
    Ok(0)
}

fn thin_cmd(
    input: &Path,
    policy: ThinningPolicy,
    path: Option<&Path>,
    variant: PbmVariant,
    out: &mut dyn Write,
) -> Outcome {
    let img = load(input)?;
    let (thinned, report) = thin(&img, policy);
    io(writeln!(out, "{report}"))?;
    if let Some(path) = path {
        io(fs::write(path, write_pbm(&thinned, variant)))?;
    }
    Ok(if report.preserved() { 0 } else { 1 })
}
