//! Batch front end: parse arrangement or poset files, run the exact
//! computations, and emit deterministic text reports. Exit codes: 0 on
//! success, 1 when a verification or cross-check fails, 2 on malformed
//! input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use recess::arrangement::{
    centralize, emit_arrangement, intersection_poset, parse_arrangement, Arrangement,
};
use recess::families::ExponentialFamily;
use recess::ratlin::{dot, fmt_rat, rat_int, Rat};
use recess::regions::{enumerate_regions, level_histogram, levels_via_formula, recession_cone};
use recess::semilattice::{
    centralization, cone, emit_cone, emit_semilattice, level_distribution, parse_semilattice,
    validate, GeometricSemilattice,
};
use recess::verify::{fuzz_suite, verify_arrangement, verify_semilattice, Check};

#[derive(Parser)]
#[command(
    name = "recess",
    about = "Exact region and level computations for hyperplane arrangements",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Enumerate,
    Formula,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial with the region counts r and b
    Chi { file: PathBuf },
    /// Region report: sign vector, level, cone-span flat, witness
    Regions {
        file: PathBuf,
        /// Also emit plot data (dim-2 arrangements only)
        #[arg(long)]
        plot_data: bool,
    },
    /// Level histogram, by enumeration, by the flat formula, or both
    Levels {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Cone of the input (combinatorial), in the poset format
    Cone { file: PathBuf },
    /// Centralization of the input
    Centralize { file: PathBuf },
    /// Emit a named family member; optionally its levels and chi
    Family {
        name: String,
        n: usize,
        /// Append the level histogram and characteristic polynomial
        #[arg(long)]
        levels: bool,
        /// Append level tables for every index up to this depth
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Run every applicable invariant; prints a pass/fail table
    Verify {
        file: Option<PathBuf>,
        /// Also run the level identities on this many random arrangements
        #[arg(long)]
        fuzz: Option<usize>,
        /// Seed for --fuzz
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Input {
    Arrangement(Arrangement),
    Semilattice(GeometricSemilattice),
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("dim") {
        let arr = parse_arrangement(&text)
            .map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
        Ok(Input::Arrangement(arr))
    } else if first.starts_with("elements") || first.starts_with("a0") {
        let (data, _) = parse_semilattice(&text)
            .map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
        let m = validate(&data)
            .map_err(|e| fail(2, format!("{}: invalid poset: {e}", path.display())))?;
        Ok(Input::Semilattice(m))
    } else {
        Err(fail(
            2,
            format!("{}: expected a `dim` or `elements` header", path.display()),
        ))
    }
}

fn counts_line(values: &[impl ToString]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_chi(file: &Path) -> Result<String, Failure> {
    let mut out = String::new();
    match load(file)? {
        Input::Arrangement(arr) => {
            let ip = intersection_poset(&arr);
            let chi = ip
                .poset()
                .char_poly(arr.dim())
                .expect("ambient bounds rank");
            let (r, b) = ip.poset().zaslavsky(arr.dim()).expect("ambient bounds rank");
            writeln!(out, "chi: {chi}").unwrap();
            writeln!(out, "r: {r}").unwrap();
            writeln!(out, "b: {b}").unwrap();
        }
        Input::Semilattice(m) => {
            let (r, b) = m.region_counts();
            writeln!(out, "chi: {}", m.chi()).unwrap();
            writeln!(out, "r: {r}").unwrap();
            writeln!(out, "b: {b}").unwrap();
        }
    }
    Ok(out)
}

fn run_regions(file: &Path, plot_data: bool) -> Result<String, Failure> {
    let Input::Arrangement(arr) = load(file)? else {
        return Err(fail(2, "regions requires an arrangement input"));
    };
    if plot_data && arr.dim() != 2 {
        return Err(fail(2, "--plot-data is only available for dim-2 arrangements"));
    }
    let cent = centralize(&arr);
    let lc = intersection_poset(&cent.arr);
    let mut out = String::new();
    let regions = enumerate_regions(&arr);
    for region in &regions {
        let rc = recession_cone(&arr, region);
        let flat = lc
            .flat_index(&rc.span)
            .expect("cone span is a flat of the centralization");
        write!(
            out,
            "R {} level {} flat {flat} witness",
            region.sign_string(),
            rc.level()
        )
        .unwrap();
        for value in &region.witness {
            write!(out, " {}", fmt_rat(value)).unwrap();
        }
        out.push('\n');
    }
    if plot_data {
        let reach = rat_int(10);
        for h in arr.hyperplanes() {
            // point on the line and a direction along it
            let norm = dot(&h.normal, &h.normal);
            let p: Vec<Rat> = h.normal.iter().map(|w| w * &h.offset / &norm).collect();
            let d = [-h.normal[1].clone(), h.normal[0].clone()];
            let a: Vec<Rat> = p.iter().zip(&d).map(|(x, v)| x - v * &reach).collect();
            let b: Vec<Rat> = p.iter().zip(&d).map(|(x, v)| x + v * &reach).collect();
            writeln!(
                out,
                "plot line {} {} {} {}",
                fmt_rat(&a[0]),
                fmt_rat(&a[1]),
                fmt_rat(&b[0]),
                fmt_rat(&b[1])
            )
            .unwrap();
        }
        for region in &regions {
            writeln!(
                out,
                "plot point {} {}",
                fmt_rat(&region.witness[0]),
                fmt_rat(&region.witness[1])
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn run_levels(file: &Path, method: Method) -> Result<(String, bool), Failure> {
    let mut out = String::new();
    let mut matched = true;
    match load(file)? {
        Input::Arrangement(arr) => {
            writeln!(out, "indexing: ambient (r_0..r_{})", arr.dim()).unwrap();
            let enumerated = (method != Method::Formula).then(|| level_histogram(&arr));
            let formula = (method != Method::Enumerate).then(|| levels_via_formula(&arr));
            if let Some(h) = &enumerated {
                writeln!(out, "enumerate: {}", counts_line(h)).unwrap();
            }
            if let Some(f) = &formula {
                writeln!(out, "formula: {}", counts_line(f)).unwrap();
            }
            if let (Some(h), Some(f)) = (&enumerated, &formula) {
                matched = h == f;
                writeln!(out, "{}", if matched { "MATCH" } else { "MISMATCH" }).unwrap();
            }
        }
        Input::Semilattice(m) => {
            writeln!(out, "indexing: rank (r_0..r_{})", m.max_rank()).unwrap();
            writeln!(out, "distribution: {}", counts_line(&level_distribution(&m))).unwrap();
        }
    }
    Ok((out, matched))
}

fn run_cone(file: &Path) -> Result<String, Failure> {
    let m = match load(file)? {
        Input::Arrangement(arr) => {
            GeometricSemilattice::from_intersection_poset(&intersection_poset(&arr))
        }
        Input::Semilattice(m) => m,
    };
    Ok(emit_cone(&cone(&m)))
}

fn run_centralize(file: &Path) -> Result<String, Failure> {
    match load(file)? {
        Input::Arrangement(arr) => Ok(emit_arrangement(&centralize(&arr).arr)),
        Input::Semilattice(m) => Ok(emit_semilattice(&centralization(&m), None)),
    }
}

fn run_family(name: &str, n: usize, levels: bool, max_n: Option<usize>) -> Result<String, Failure> {
    let fam = ExponentialFamily::by_name(name)
        .ok_or_else(|| fail(2, format!("unknown family `{name}` (braid, shi, catalan, semiorder, ish)")))?;
    let arr = fam
        .generate(n)
        .map_err(|e| fail(2, format!("family {name}: {e}")))?;
    let mut out = emit_arrangement(&arr);
    if levels {
        let hist = level_histogram(&arr);
        let chi = intersection_poset(&arr)
            .poset()
            .char_poly(arr.dim())
            .expect("ambient bounds rank");
        writeln!(out, "levels: {}", counts_line(&hist)).unwrap();
        writeln!(out, "chi: {chi}").unwrap();
    }
    if let Some(depth) = max_n {
        for m in 1..=depth {
            writeln!(out, "table m={m}: {}", counts_line(&fam.level_table(m))).unwrap();
        }
    }
    Ok(out)
}

fn render_checks(checks: &[Check], out: &mut String) -> bool {
    let mut ok = true;
    for c in checks {
        match &c.result {
            Ok(()) => writeln!(out, "PASS {}", c.name).unwrap(),
            Err(detail) => {
                ok = false;
                writeln!(out, "FAIL {}: {detail}", c.name).unwrap();
            }
        }
    }
    ok
}

fn run_verify(file: Option<&Path>, fuzz: Option<usize>, seed: u64) -> Result<(String, bool), Failure> {
    if file.is_none() && fuzz.is_none() {
        return Err(fail(2, "verify needs a FILE, --fuzz <N>, or both"));
    }
    let mut out = String::new();
    let mut ok = true;
    if let Some(path) = file {
        let checks = match load(path)? {
            Input::Arrangement(arr) => verify_arrangement(&arr),
            Input::Semilattice(m) => verify_semilattice(&m),
        };
        ok &= render_checks(&checks, &mut out);
    }
    if let Some(count) = fuzz {
        ok &= render_checks(&fuzz_suite(count, seed), &mut out);
    }
    writeln!(out, "RESULT: {}", if ok { "PASS" } else { "FAIL" }).unwrap();
    Ok((out, ok))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    match cli.command {
        Command::Chi { file } => run_chi(&file).map(|s| (s, true)),
        Command::Regions { file, plot_data } => run_regions(&file, plot_data).map(|s| (s, true)),
        Command::Levels { file, method } => run_levels(&file, method),
        Command::Cone { file } => run_cone(&file).map(|s| (s, true)),
        Command::Centralize { file } => run_centralize(&file).map(|s| (s, true)),
        Command::Family {
            name,
            n,
            levels,
            max_n,
        } => run_family(&name, n, levels, max_n).map(|s| (s, true)),
        Command::Verify { file, fuzz, seed } => run_verify(file.as_deref(), fuzz, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, ok)) => {
            print!("{output}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
