use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use heptagon::cohomology::{parse_class_id, F2Cohomology};
use heptagon::invariant::{class_table, Route, TableOptions};
use heptagon::manifolds::{build, Manifold};
use heptagon::simplicial::io::{read_complex, write_complex};
use heptagon::simplicial::validate_closed_pseudomanifold;
use heptagon::{verify, Field, Gf};

#[derive(Parser)]
#[command(name = "heptagon", version, about = "Heptagon-relation invariants of triangulated 5-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangulation of a manifold in the complex file format.
    Build(ManifoldArgs),
    /// Check that a complex is a closed pseudomanifold and report its f-vector.
    Validate(ManifoldOutput),
    /// GF(2) Betti numbers and the number of degree-3 classes.
    Cohomology(ManifoldOutput),
    /// Compute (dim V_p/V_g, rank A) for every class of H^3(M; GF(2)).
    Invariant(InvariantArgs),
    /// Check the full heptagon relation for every split of the 6-simplex boundary.
    VerifyHeptagon(VerifyArgs),
    /// Check the cocycle properties of Q and of the five-cocycles.
    VerifyCocycle(VerifyArgs),
    /// Recompute the invariant after each move of a Pachner move script.
    PachnerTest(PachnerArgs),
    /// Transfer matrix of the three-dimensional construction for given vertex parameters.
    PentagonDemo(PentagonArgs),
}

#[derive(Args)]
struct ManifoldArgs {
    /// Catalog name, product such as RP2xS3, or path to a complex file.
    #[arg(long, short)]
    manifold: String,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct ManifoldOutput {
    #[command(flatten)]
    manifold: ManifoldArgs,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct FieldArgs {
    /// Field GF(p^k) as `p,k`.
    #[arg(long, default_value = "2,15")]
    field: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct InvariantArgs {
    #[command(flatten)]
    manifold: ManifoldArgs,
    #[command(flatten)]
    field: FieldArgs,
    /// Restrict to these classes, given as bit strings over the cohomology basis.
    #[arg(long)]
    class: Vec<String>,
    #[arg(long, default_value = "structured")]
    route: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads across classes; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value_t = heptagon::cohomology::DEFAULT_CLASS_CAP)]
    class_cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct PachnerArgs {
    #[command(flatten)]
    manifold: ManifoldArgs,
    #[command(flatten)]
    field: FieldArgs,
    /// Class bit string; the zero class when omitted.
    #[arg(long)]
    class: Option<String>,
    /// Moves such as `1-6@auto,2-5@0.1.2.3.4,6-1@auto`.
    #[arg(long)]
    script: String,
    #[arg(long, default_value = "structured")]
    route: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct PentagonArgs {
    /// Comma-separated vertex parameters as field element representations.
    #[arg(long)]
    z: String,
    #[arg(long, default_value = "2,15")]
    field: String,
}

/// Runs `$body` with `$F` bound to the field named by `$p,$k`.
macro_rules! with_field {
    ($pk:expr, $F:ident => $body:expr) => {
        match $pk {
            (2, 1) => { type $F = Gf<2, 1>; $body }
            (2, 2) => { type $F = Gf<2, 2>; $body }
            (2, 4) => { type $F = Gf<2, 4>; $body }
            (2, 8) => { type $F = Gf<2, 8>; $body }
            (2, 10) => { type $F = Gf<2, 10>; $body }
            (2, 12) => { type $F = Gf<2, 12>; $body }
            (2, 15) => { type $F = Gf<2, 15>; $body }
            (2, 16) => { type $F = Gf<2, 16>; $body }
            (3, 1) => { type $F = Gf<3, 1>; $body }
            (3, 2) => { type $F = Gf<3, 2>; $body }
            (3, 5) => { type $F = Gf<3, 5>; $body }
            (3, 9) => { type $F = Gf<3, 9>; $body }
            (5, 1) => { type $F = Gf<5, 1>; $body }
            (7, 1) => { type $F = Gf<7, 1>; $body }
            (p, k) => Err(Usage(format!("unsupported field GF({p}^{k})")).into()),
        }
    };
}

/// `print!` that reports a closed stdout as an error instead of panicking.
macro_rules! out {
    ($($t:tt)*) => { write!(std::io::stdout().lock(), $($t)*)? };
}

macro_rules! outln {
    ($($t:tt)*) => { writeln!(std::io::stdout().lock(), $($t)*)? };
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

enum Outcome {
    Pass,
    Fail,
}

fn parse_field(s: &str) -> anyhow::Result<(u32, u32)> {
    let (p, k) = s.split_once(',').ok_or_else(|| Usage(format!("field must be `p,k`, got `{s}`")))?;
    let p = p.trim().parse().map_err(|_| Usage(format!("bad characteristic `{p}`")))?;
    let k = k.trim().parse().map_err(|_| Usage(format!("bad degree `{k}`")))?;
    Ok((p, k))
}

fn load(arg: &str) -> anyhow::Result<Manifold> {
    if Path::new(arg).is_file() {
        let complex = read_complex(arg).with_context(|| format!("reading {arg}"))?;
        return Ok(Manifold { name: arg.to_string(), complex, provenance: format!("file {arg}") });
    }
    build(arg).map_err(|e| match e {
        heptagon::Error::UnknownManifold(_) => Usage(e.to_string()).into(),
        e => e.into(),
    })
}

fn route(s: &str) -> anyhow::Result<Route> {
    s.parse().map_err(|e: heptagon::Error| Usage(e.to_string()).into())
}

fn print_json(v: &serde_json::Value) -> anyhow::Result<()> {
    outln!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Build(a) => {
            let m = load(&a.manifold)?;
            out!("{}", write_complex(&m.complex, Some(&format!("{} ({})", m.name, m.provenance))));
            Ok(Outcome::Pass)
        }
        Command::Validate(a) => {
            let m = load(&a.manifold.manifold)?;
            let r = validate_closed_pseudomanifold(&m.complex);
            let ok = r.is_closed_pseudomanifold();
            match a.format {
                Format::Json => print_json(&json!({ "manifold": m.name, "report": r, "pass": ok }))?,
                Format::Table => {
                    outln!("{}: {}", m.name, if ok { "pass" } else { "FAIL" });
                    outln!("  f-vector {:?}, euler characteristic {}", r.f_vector, r.euler_characteristic);
                    outln!("  bad ridges {}, components {}, orientable {:?}", r.bad_ridges.len(), r.components, r.orientable);
                }
            }
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Cohomology(a) => {
            let m = load(&a.manifold.manifold)?;
            let h = F2Cohomology::new(&m.complex, &[]);
            let betti = h.betti_numbers();
            let b3 = betti.get(3).copied().unwrap_or(0);
            match a.format {
                Format::Json => print_json(&json!({ "manifold": m.name, "betti_f2": betti, "classes_h3": 1u64 << b3 }))?,
                Format::Table => {
                    outln!("{}: GF(2) Betti numbers {:?}", m.name, betti);
                    outln!("  classes in H^3: {}", 1u64 << b3);
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Invariant(a) => {
            let m = load(&a.manifold.manifold)?;
            let pk = parse_field(&a.field.field)?;
            let route = route(&a.route)?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(a.threads).build()?;
            let b3 = F2Cohomology::new(&m.complex, &[]).betti(3);
            let only = a.class.iter().map(|s| parse_class_id(s, b3)).collect::<Result<Vec<_>, _>>().map_err(|e| Usage(e.to_string()))?;
            let opts = TableOptions { seed: a.field.seed, route, class_cap: a.class_cap, only };
            let table = with_field!(pk, F => pool.install(|| {
                if F::CHARACTERISTIC != 2 {
                    return Err(anyhow!(Usage("the invariant is computed in characteristic 2".into())));
                }
                class_table::<F>(&m.name, &m.complex, &opts, |r| {
                    eprintln!("class {}: dim {} rank {}", r.class_id, r.quotient_dim, r.rank_a);
                })
                .map_err(anyhow::Error::from)
            }))?;
            match a.format {
                Format::Json => print_json(&json!({
                    "manifold": table.manifold,
                    "field": table.field,
                    "seed": table.seed,
                    "route": a.route,
                    "betti3": table.betti3,
                    "classes": table.classes.iter().map(|r| json!({
                        "class_id": r.class_id,
                        "dim": r.quotient_dim,
                        "rank": r.rank_a,
                        "A": r.a,
                        "gauge_dim": r.gauge_dim,
                        "omega_attempts": r.omega_attempts,
                        "certificate": r.certificate,
                    })).collect::<Vec<_>>(),
                }))?,
                Format::Table => out!("{}", table.to_text()),
            }
            let ok = table.classes.iter().all(|r| r.certificate.holds());
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::VerifyHeptagon(a) => {
            let pk = parse_field(&a.field.field)?;
            let report = with_field!(pk, F => verify::full_polygon::<F>(5, a.trials, a.field.seed).map_err(anyhow::Error::from))?;
            report_verification(&report, a.format)
        }
        Command::VerifyCocycle(a) => {
            let pk = parse_field(&a.field.field)?;
            let report = with_field!(pk, F => verify::cocycles::<F>(a.trials, a.field.seed).map_err(anyhow::Error::from))?;
            report_verification(&report, a.format)
        }
        Command::PachnerTest(a) => {
            let m = load(&a.manifold.manifold)?;
            let pk = parse_field(&a.field.field)?;
            let route = route(&a.route)?;
            let script = heptagon::pachner::parse_script(&a.script).map_err(|e| Usage(e.to_string()))?;
            let b3 = F2Cohomology::new(&m.complex, &[]).betti(3);
            let class = match &a.class {
                Some(s) => parse_class_id(s, b3).map_err(|e| Usage(e.to_string()))?,
                None => vec![0; b3],
            };
            let report = with_field!(pk, F => {
                if F::CHARACTERISTIC != 2 {
                    return Err(anyhow!(Usage("the invariant is computed in characteristic 2".into())));
                }
                heptagon::pachner::invariance_harness::<F>(&m.complex, &class, a.field.seed, &script, route, |s| {
                    eprintln!("step {}: {} -> dim {} rank {}", s.step, s.descriptor, s.quotient_dim, s.rank_a);
                })
                .map_err(anyhow::Error::from)
            })?;
            match a.format {
                Format::Json => print_json(&serde_json::to_value(&report)?)?,
                Format::Table => {
                    for s in &report.steps {
                        outln!("{:>3}  {:<20} facets {:>6}  dim {:>2}  rank {:>2}", s.step, s.descriptor, s.facets, s.quotient_dim, s.rank_a);
                    }
                    outln!("constant: {}", report.constant);
                }
            }
            Ok(if report.constant { Outcome::Pass } else { Outcome::Fail })
        }
        Command::PentagonDemo(a) => {
            let pk = parse_field(&a.field)?;
            let z: Vec<u32> = a
                .z
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Usage(format!("bad parameter `{s}`"))))
                .collect::<Result<_, _>>()?;
            let out = with_field!(pk, F => pentagon_demo::<F>(&z))?;
            print_json(&out.0)?;
            Ok(if out.1 { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn pentagon_demo<F: Field>(z: &[u32]) -> anyhow::Result<(serde_json::Value, bool)> {
    use heptagon::pentagon::*;
    let z: Vec<F> = z
        .iter()
        .map(|&r| F::from_repr(r).ok_or_else(|| anyhow!(Usage(format!("{r} is not an element of the field")))))
        .collect::<anyhow::Result<_>>()?;
    let data = PentagonData::new(z).map_err(|e| Usage(e.to_string()))?;
    let rows = |m: &heptagon::algebra::DenseMatrix<F>| -> Vec<Vec<u32>> {
        m.row_vecs().iter().map(|r| r.iter().map(|x| x.repr()).collect()).collect()
    };
    let m = pentagon_matrix(&data)?;
    let agrees = framework_matrix(&data)? == m;
    let normalized = normalized_matrix(&data)?;
    let orthogonal = normalized.as_ref().map(is_orthogonal_form);
    let relation = if data.z().len() == 5 { Some(pentagon_relation_check(&data)?) } else { None };
    let ok = agrees && orthogonal != Some(false) && relation != Some(false);
    Ok((
        json!({
            "field": { "p": F::CHARACTERISTIC, "k": F::DEGREE },
            "matrix": rows(&m),
            "matches_coloring_framework": agrees,
            "normalized": normalized.as_ref().map(rows),
            "orthogonal_form": orthogonal,
            "full_pentagon": relation,
        }),
        ok,
    ))
}

fn report_verification(r: &verify::VerificationReport, format: Format) -> anyhow::Result<Outcome> {
    match format {
        Format::Json => print_json(&serde_json::to_value(r)?)?,
        Format::Table => {
            for c in &r.checks {
                outln!("{:<56} {:>6}/{:<6} {}", c.name, c.passed, c.trials, if c.passed == c.trials { "ok" } else { "FAIL" });
            }
        }
    }
    Ok(if r.all_passed() { Outcome::Pass } else { Outcome::Fail })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) if e.downcast_ref::<Usage>().is_some() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
