//! Command-line front end.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{analyze, Analysis, AnalysisOptions};
use crate::arrangement::{
    checked_modular_points, lattice_isomorphism, lower_bounds_check, terao_experiment, LineArrangement,
};
use crate::catalog::{families, get, verify_all, DEFAULT_MAX_DEGREE};
use crate::classify::{cuspidal_guarantee, Verdict};
use crate::error::{Error, Result};
use crate::geometry::{format_point, is_modular_point, supersolvable_check};
use crate::parse::{parse_arrangement, parse_curve, parse_points};
use crate::report::{exit_code, to_json, CurveReport, ErrorReport, SCHEMA_VERSION};
use crate::syzygy::{er_dim, kr_dim_formula};

#[derive(Parser, Debug)]
#[command(name = "freeness", version, about = "Freeness profiles of plane projective curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for primes and random choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include per-stage timings.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// Homogeneous polynomial in x, y, z, or @FILE.
    pub curve: String,
    /// Syzygy scan horizon (default 3d - 4).
    #[arg(long)]
    pub kmax: Option<u32>,
    /// The curve has only simple singularities.
    #[arg(long)]
    pub ade: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full invariant report.
    Analyze(CurveArgs),
    /// Class and exponents.
    Classify(CurveArgs),
    /// Minimal resolution of the Milnor algebra and syzygy generators.
    Resolution(CurveArgs),
    /// Koszul and essential relation dimensions and the defect sequence.
    Defects(CurveArgs),
    /// Combinatorics of a line arrangement.
    Arrangement {
        /// Lines separated by `;` or newlines, or @FILE.
        lines: String,
        /// Also analyze the product and check the tau lower bounds.
        #[arg(long)]
        analyze: bool,
    },
    /// Tests points for modularity.
    Modular {
        curve: String,
        /// Points such as "(1:0:0);(0:1:0)"; defaults to rational singular points.
        #[arg(long)]
        candidates: Option<String>,
    },
    /// Searches for a modular point.
    Supersolvable {
        curve: String,
        #[arg(long)]
        candidates: Option<String>,
    },
    /// Named curves with expected invariants.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Compares two arrangements with isomorphic intersection lattices.
    Terao {
        first: String,
        second: String,
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Whether degree and mdr guarantee freeness of a rational cuspidal curve.
    CuspidalGuarantee { d: u32, r: u32 },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    /// Analyzes the catalog entries and compares with expectations.
    Verify {
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Prints one entry.
    Show { name: String, params: Vec<u32> },
}

fn read_input(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn read_arrangement(s: &str) -> Result<LineArrangement> {
    LineArrangement::from_forms(&parse_arrangement(&read_input(s)?)?)
}

fn options(cli: &Cli, kmax: Option<u32>, ade: bool) -> AnalysisOptions {
    AnalysisOptions {
        horizon: kmax,
        seed: cli.seed,
        ade_asserted: ade,
    }
}

fn analyze_curve(cli: &Cli, args: &CurveArgs) -> Result<(String, Analysis)> {
    let text = read_input(&args.curve)?;
    let f = parse_curve(&text)?;
    let a = analyze(&f, &options(cli, args.kmax, args.ade))?;
    Ok((text.trim().to_string(), a))
}

fn opt(v: Option<usize>) -> String {
    v.map_or("none".into(), |v| v.to_string())
}

fn list(v: &[impl ToString]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    out.write_all(to_json(value).as_bytes())
        .map_err(|e| Error::InvalidInput(format!("write failed: {e}")))
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| Error::InvalidInput(format!("write failed: {e}")))?
    };
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Skipped => "skip",
    }
}

fn print_analysis(out: &mut dyn Write, input: &str, a: &Analysis, timing: bool) -> Result<()> {
    say!(out, "curve       {input}");
    say!(out, "degree      {}   T = {}", a.degree(), a.t());
    say!(out, "class       {}", a.class);
    say!(out, "exponents   {}", list(&a.exponents()));
    say!(out, "relations   {}", list(&a.scan.relation_degrees()));
    say!(out, "tau         {}", a.tau);
    say!(out, "nu          {}", a.nu);
    say!(out, "sigma       {}", opt(a.module_table.sigma));
    say!(out, "ct / st     {} / {}   ct+st = {}", opt(a.thresholds.ct), a.thresholds.st, opt(a.ct_plus_st()));
    say!(out, "splitting   ({}, {})", a.splitting.d1, a.splitting.d2);
    say!(out, "dPW bounds  {} <= tau <= {}", a.bounds.tau_min, a.bounds.applicable_max());
    say!(out, "M(f)_k      {}", list(&a.milnor));
    say!(out, "N(f)_k      {}", list(&a.module_table.n_values));
    say!(out, "defects     {}", list(&a.defects.defects));
    if a.maximal_tjurina.maximal {
        say!(out, "maximal Tjurina curve");
    }
    if a.maximizing.maximizing {
        say!(out, "maximizing curve");
    }
    say!(out, "checks");
    for c in &a.checks {
        say!(out, "  {}  {}: {}", verdict(c.verdict), c.name, c.detail);
    }
    if timing {
        say!(out, "timings");
        for t in &a.timings {
            say!(out, "  {:<24} {:>10.1} ms", t.stage, t.millis);
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Analyze(args) => {
            let (input, a) = analyze_curve(cli, args)?;
            if cli.json {
                emit_json(out, &CurveReport::new(&input, cli.seed, &a, cli.timing))
            } else {
                print_analysis(out, &input, &a, cli.timing)
            }
        }
        Command::Classify(args) => {
            let (input, a) = analyze_curve(cli, args)?;
            if cli.json {
                return emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA_VERSION,
                        "input": input,
                        "class": a.class,
                        "exponents": a.exponents(),
                        "tau": a.tau,
                        "nu": a.nu,
                    }),
                );
            }
            say!(out, "{}   exponents {}   tau {}   nu {}", a.class, list(&a.exponents()), a.tau, a.nu);
            Ok(())
        }
        Command::Resolution(args) => {
            let (input, a) = analyze_curve(cli, args)?;
            let report = CurveReport::new(&input, cli.seed, &a, false);
            if cli.json {
                return emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA_VERSION,
                        "input": input,
                        "syzygy": report.syzygy,
                    }),
                );
            }
            let r = &a.resolution;
            say!(out, "F0 = S({})", list(&r.f0.iter().map(|s| format!("-{s}")).collect::<Vec<_>>()));
            say!(out, "F1 shifts   {}", list(&r.f1));
            say!(out, "F2 shifts   {}", list(&r.f2));
            say!(out, "F3 shifts   {}", list(&r.f3));
            say!(out, "AR(f)_k     {}", list(&a.scan.ar_dims));
            for (k, p, m) in &a.scan.verification {
                say!(out, "  degree {k}: predicted {p}, measured {m}");
            }
            say!(out, "generators");
            for g in &report.syzygy.profile.generators {
                say!(out, "  ({}, {}, {})", g[0], g[1], g[2]);
            }
            Ok(())
        }
        Command::Defects(args) => {
            let (input, a) = analyze_curve(cli, args)?;
            let d = a.degree();
            let rows: Vec<[usize; 4]> = (0..=3 * d - 4)
                .map(|k| {
                    let ar = a.scan.ar_dim(k);
                    let kr = kr_dim_formula(d, k);
                    [k as usize, ar, kr, er_dim(&a.scan, k)]
                })
                .collect();
            if cli.json {
                return emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA_VERSION,
                        "input": input,
                        "tau": a.tau,
                        "defects": a.defects,
                        "ar_kr_er": rows,
                    }),
                );
            }
            say!(out, "tau {}", a.tau);
            say!(out, "   k    AR    KR    ER");
            for r in rows {
                say!(out, "{:>4} {:>5} {:>5} {:>5}", r[0], r[1], r[2], r[3]);
            }
            say!(out, "defects (k = 0, 1, ...)  {}", list(&a.defects.defects));
            Ok(())
        }
        Command::Arrangement { lines, analyze: run } => {
            let arr = read_arrangement(lines)?;
            let pts = arr.multiple_points();
            let modular = checked_modular_points(&arr)?;
            let wc = arr.weak_combinatorics();
            let profile = arr.multiplicity_profile();
            let analysis = if *run {
                let a = analyze(&arr.product(), &options(cli, None, false))?;
                let bounds = lower_bounds_check(&arr, a.mdr(), a.tau, a.class.is_free())?;
                Some((a, bounds))
            } else {
                None
            };
            if cli.json {
                let analysis_json = analysis.as_ref().map(|(a, b)| {
                    json!({
                        "report": CurveReport::new(&arr.product().to_string(), cli.seed, a, false),
                        "tau_lower_bounds": b,
                    })
                });
                return emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA_VERSION,
                        "lines": arr.lines.iter().map(|l| l.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "t": wc.t,
                        "tau": arr.tau_combinatorial(),
                        "multiple_points": pts.iter().map(|p| json!({"point": format_point(&p.point), "lines": p.lines})).collect::<Vec<_>>(),
                        "multiplicity_profile": profile,
                        "modular_points": modular.iter().map(format_point).collect::<Vec<_>>(),
                        "lattice_fingerprint": arr.lattice_fingerprint(),
                        "analysis": analysis_json,
                    }),
                );
            }
            say!(out, "lines       {}", arr.degree());
            say!(out, "t_k         {}", list(&wc.t.iter().map(|(k, v)| format!("t{k}={v}")).collect::<Vec<_>>()));
            say!(out, "tau         {}", arr.tau_combinatorial());
            say!(out, "m(C) = {}   n(C) = {}", profile.m, profile.n);
            if modular.is_empty() {
                say!(out, "modular     none");
            } else {
                say!(out, "modular     {}", list(&modular.iter().map(format_point).collect::<Vec<_>>()));
            }
            say!(out, "multiple points");
            for p in pts.iter().filter(|p| p.multiplicity() > 2) {
                say!(out, "  {} on lines {}", format_point(&p.point), list(&p.lines));
            }
            say!(out, "  ({} double points)", pts.iter().filter(|p| p.multiplicity() == 2).count());
            if let Some((a, bounds)) = analysis {
                say!(out, "class       {}   mdr {}   tau {}", a.class, a.mdr(), a.tau);
                for c in bounds {
                    say!(out, "  {}  {}: {}", verdict(c.verdict), c.name, c.detail);
                }
            }
            Ok(())
        }
        Command::Modular { curve, candidates } => {
            let f = parse_curve(&read_input(curve)?)?;
            let pts = match candidates {
                Some(c) => parse_points(c)?,
                None => crate::geometry::rational_singular_points(&f, crate::geometry::DEFAULT_HEIGHT, cli.seed)?,
            };
            let certs = pts.iter().map(|p| is_modular_point(&f, p)).collect::<Result<Vec<_>>>()?;
            if cli.json {
                return emit_json(out, &json!({"schema": SCHEMA_VERSION, "certificates": certs}));
            }
            for c in certs {
                say!(
                    out,
                    "{}  multiplicity {}  modular {}  tangent cone {}  discriminant {}",
                    c.point, c.multiplicity, c.modular, c.tangent_cone, c.discriminant
                );
            }
            Ok(())
        }
        Command::Supersolvable { curve, candidates } => {
            let f = parse_curve(&read_input(curve)?)?;
            let extra = candidates.as_deref().map(parse_points).transpose()?.unwrap_or_default();
            let r = supersolvable_check(&f, &extra, cli.seed)?;
            if cli.json {
                return emit_json(out, &json!({"schema": SCHEMA_VERSION, "report": r}));
            }
            say!(out, "candidates tested  {}", r.candidates_tested);
            if !r.modular_points.is_empty() {
                say!(out, "modular points     {}", list(&r.modular_points));
            }
            if r.incomplete {
                say!(out, "no modular point among the rational candidates (search incomplete)");
            }
            Ok(())
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let fams = families();
                if cli.json {
                    return emit_json(out, &json!({"schema": SCHEMA_VERSION, "families": fams}));
                }
                for f in fams {
                    say!(out, "{:<22} {:<22} {}", f.name, f.params, f.summary);
                }
                Ok(())
            }
            CatalogAction::Show { name, params } => {
                let e = get(name, params)?;
                if cli.json {
                    return emit_json(out, &json!({"schema": SCHEMA_VERSION, "entry": e}));
                }
                say!(out, "{}   degree {}", e.label(), e.degree);
                say!(out, "f = {}", e.equation);
                for x in &e.expectations {
                    say!(out, "  expect {:?} [{:?}] {}", x.expect, x.source, x.note);
                }
                for n in &e.notes {
                    say!(out, "  note: {n}");
                }
                Ok(())
            }
            CatalogAction::Verify { max_degree } => {
                let r = verify_all(*max_degree, cli.seed)?;
                if cli.json {
                    emit_json(out, &json!({"schema": SCHEMA_VERSION, "report": r}))?;
                } else {
                    for e in &r.entries {
                        let mark = if e.passed { "pass" } else { "FAIL" };
                        if cli.timing {
                            say!(out, "{mark}  {:<28} d={:<3} {:>9.1} ms", e.entry, e.degree, e.millis);
                        } else {
                            say!(out, "{mark}  {:<28} d={}", e.entry, e.degree);
                        }
                        if let Some(err) = &e.error {
                            say!(out, "      error: {err}");
                        }
                        for x in e.results.iter().filter(|x| !x.pass) {
                            say!(out, "      {:?} [{:?}: {}] found {}", x.expected.expect, x.expected.source, x.expected.note, x.found);
                        }
                    }
                }
                if r.all_passed {
                    Ok(())
                } else {
                    Err(Error::hard("catalog verification", "some expectations failed"))
                }
            }
        },
        Command::Terao { first, second, kmax } => {
            let (a, b) = (read_arrangement(first)?, read_arrangement(second)?);
            let map = lattice_isomorphism(&a, &b)?;
            if map.is_none() {
                return Err(Error::InvalidInput("the intersection lattices are not isomorphic".into()));
            }
            let r = terao_experiment(&a, &b, &options(cli, *kmax, false))?;
            if cli.json {
                return emit_json(out, &json!({"schema": SCHEMA_VERSION, "line_bijection": map, "report": r}));
            }
            say!(out, "lattice     {}", r.lattice_fingerprint);
            for c in &r.comparisons {
                let mark = if c.equal { "=" } else { "!=" };
                say!(out, "  {:<16} {:<24} {mark:<3} {}", c.invariant, c.first, c.second);
            }
            for n in &r.notes {
                say!(out, "note: {n}");
            }
            Ok(())
        }
        Command::CuspidalGuarantee { d, r } => {
            let s = cuspidal_guarantee(*d, *r)?;
            if cli.json {
                return emit_json(out, &json!({"schema": SCHEMA_VERSION, "status": s}));
            }
            say!(
                out,
                "d = {} r = {}: {} ({:?})",
                s.d,
                s.r,
                if s.guaranteed { "free" } else { "not guaranteed" },
                s.tag
            );
            Ok(())
        }
    }
}

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let input = match &cli.command {
                    Command::Analyze(a) | Command::Classify(a) | Command::Resolution(a) | Command::Defects(a) => a.curve.clone(),
                    _ => String::new(),
                };
                let _ = out.write_all(to_json(&ErrorReport::new(&input, &e)).as_bytes());
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}
