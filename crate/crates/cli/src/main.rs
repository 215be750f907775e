use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use treelex::expr::{self, EnvJson, Mode};
use treelex::fuzz;
use treelex::geometry::{apply_stellar_script, GeometricComplex, RationalPoint, Simplex, StellarScript, StellarStep, WeightedComplex};
use treelex::parasemifield::{def2_check, fallback_unit, GeneratorAssignment, GensJson};
use treelex::pwl::{ideal_member_at_depth, PwlFunction};
use treelex::reconstruct::{self, PresentationJson, ScrambledPresentation};
use treelex::tlex::ForestRef;
use treelex::{RootedForest, TlexElement};

#[derive(Parser)]
#[command(name = "treelex", version, about = "Tree-indexed lattice-ordered groups and friends")]
struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// AHU canonical string of a forest or of a presentation.
    Canon {
        /// Forest JSON, a forest name such as `chain3`, or a presentation.
        input: String,
        #[arg(long, default_value_t = reconstruct::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Decide whether two forests or presentations are isomorphic.
    Iso {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = reconstruct::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Recover the forest of a scrambled presentation.
    Reconstruct {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, default_value_t = reconstruct::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Evaluate an expression over an element environment.
    Eval {
        #[arg(long)]
        env: PathBuf,
        expr: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Lgroup)]
        mode: ModeArg,
    },
    /// Apply a stellar script to a weighted complex.
    Stellar {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        emit_steps: Option<PathBuf>,
    },
    /// Piecewise-linear function checks.
    Pwl {
        #[arg(value_enum)]
        action: PwlAction,
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, conflicts_with = "steps")]
        complex: Option<PathBuf>,
        #[arg(long, requires = "depth")]
        steps: Option<PathBuf>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        point: Option<String>,
    },
    /// Exponent-cone membership of a monomial.
    Cone {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        exp: String,
    },
    /// Order-unit for a generator assignment, with certificates.
    Unit {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 6)]
        degree_bound: u64,
    },
    /// Run a seeded property suite.
    Fuzz {
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Lgroup,
    Semiring,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PwlAction {
    Eval,
    Convex,
    Vanish,
    Ideal,
}

/// Bad input (exit 2) versus a failed computation or check (exit 1).
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Usage(e.into())
}

/// What a command prints, and whether it counts as a failed check.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Self { json, text: text.into(), ok: true }
    }

    fn boolean(b: bool) -> Self {
        Self::new(Value::Bool(b), b.to_string())
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)?;
    serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display())).map_err(usage)
}

fn decode<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| usage(anyhow!("not a valid {what}: {e}")))
}

fn show(e: &TlexElement) -> String {
    let c: Vec<String> = e.coords().iter().map(|x| x.to_string()).collect();
    format!("({})", c.join(","))
}

/// A forest or a presentation, read from a file or given by name.
enum Source {
    Forest(RootedForest),
    Presentation(ScrambledPresentation),
}

fn load_source(arg: &str) -> Result<Source, Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        let forest = ForestRef::Named(arg.to_string()).resolve().map_err(|e| usage(anyhow!("{arg}: no such file, and {e}")))?;
        return Ok(Source::Forest(forest));
    }
    let v = read_json(path)?;
    if v.get("gens").is_some() {
        let p: PresentationJson = decode(v, "presentation")?;
        return Ok(Source::Presentation(ScrambledPresentation::from_json(&p).map_err(usage)?));
    }
    let r: ForestRef = decode(v, "forest")?;
    Ok(Source::Forest(r.resolve().map_err(usage)?))
}

fn canonical(s: &Source, depth: usize) -> Result<String, Failure> {
    Ok(match s {
        Source::Forest(f) => f.ahu_canonical(),
        Source::Presentation(p) => reconstruct::canonical_string(p, depth).map_err(anyhow::Error::from)?,
    })
}

fn load_presentation(path: &Path) -> Result<ScrambledPresentation, Failure> {
    let p: PresentationJson = decode(read_json(path)?, "presentation")?;
    ScrambledPresentation::from_json(&p).map_err(usage)
}

fn load_gens(path: &Path) -> Result<GeneratorAssignment, Failure> {
    let g: GensJson = decode(read_json(path)?, "generator assignment")?;
    GeneratorAssignment::from_json(&g).map_err(usage)
}

fn load_pwl(path: &Path) -> Result<PwlFunction, Failure> {
    decode(read_json(path)?, "piecewise-linear function")
}

#[derive(serde::Deserialize)]
struct GeometryJson {
    ambient_dim: usize,
    simplexes: Vec<Simplex>,
}

/// A complex given as a step file, as explicit simplexes, or as a weighted
/// complex in its canonical realization.
fn load_geometry(path: &Path) -> Result<GeometricComplex, Failure> {
    let v = read_json(path)?;
    if v.get("realization").is_some() {
        let step = StellarStep::from_json(&decode(v, "step")?).map_err(usage)?;
        return Ok(step.geometry);
    }
    if v.get("simplexes").is_some() {
        let g: GeometryJson = decode(v, "geometric complex")?;
        return GeometricComplex::from_simplexes(g.ambient_dim, g.simplexes).map_err(usage);
    }
    let w = WeightedComplex::from_json(&decode(v, "weighted complex")?).map_err(usage)?;
    Ok(w.canonical_realization().0)
}

fn load_steps(dir: &Path) -> Result<Vec<StellarStep>, Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))
        .map_err(usage)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|f| StellarStep::from_json(&decode(read_json(f)?, "step")?).map_err(usage))
        .collect()
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Canon { input, depth } => {
            let s = canonical(&load_source(&input)?, depth)?;
            Ok(Output::new(json!({ "canonical": s }), s))
        }
        Command::Iso { a, b, depth } => {
            let (a, b) = (load_source(&a)?, load_source(&b)?);
            Ok(Output::boolean(canonical(&a, depth)? == canonical(&b, depth)?))
        }
        Command::Reconstruct { presentation, depth } => {
            let p = load_presentation(&presentation)?;
            reconstruct::spot_check(&p, cli.seed.unwrap_or(0), 16).map_err(usage)?;
            let f = reconstruct::recover_forest(&p, depth).map_err(anyhow::Error::from)?;
            let verified = f.is_isomorphic(p.hidden().forest());
            let canonical = f.ahu_canonical();
            let mut out = Output::new(
                json!({ "forest": f.to_json(), "canonical": canonical, "verified": verified }),
                format!("{canonical}\nverified: {verified}"),
            );
            out.ok = verified;
            Ok(out)
        }
        Command::Eval { env, expr: src, mode } => {
            let env: EnvJson = decode(read_json(&env)?, "environment")?;
            let (forest, elements) = env.load().map_err(usage)?;
            let mode = match mode {
                ModeArg::Lgroup => Mode::Lgroup,
                ModeArg::Semiring => Mode::Semiring,
            };
            let e = expr::parse(&src, mode).map_err(usage)?;
            let x = expr::evaluate(&e, &forest, &elements).map_err(anyhow::Error::from)?;
            Ok(Output::new(serde_json::to_value(x.to_json()).map_err(anyhow::Error::from)?, show(&x)))
        }
        Command::Stellar { complex, script, emit_steps } => {
            let w = WeightedComplex::from_json(&decode(read_json(&complex)?, "weighted complex")?).map_err(usage)?;
            let script: StellarScript = decode(read_json(&script)?, "stellar script")?;
            let steps = apply_stellar_script(&w, &script).map_err(anyhow::Error::from)?;
            if let Some(dir) = emit_steps {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (i, s) in steps.iter().enumerate() {
                    let file = dir.join(format!("step_{i:03}.json"));
                    fs::write(&file, serde_json::to_string_pretty(&s.to_json()).map_err(anyhow::Error::from)? + "\n")
                        .with_context(|| format!("writing {}", file.display()))?;
                }
            }
            let last = steps.last().expect("the initial step is always present");
            let consistent = treelex::geometry::stellar::check_correspondence(&steps);
            let mut out = Output::new(
                json!({ "steps": steps.len(), "final": last.to_json(), "consistent": consistent.is_ok() }),
                format!("{} steps, final complex has {} maximal sets", steps.len(), last.complex.maximal_sets().len()),
            );
            if let Err(why) = consistent {
                out.text.push_str(&format!("\ninconsistent: {why}"));
                out.ok = false;
            }
            Ok(out)
        }
        Command::Pwl { action, function, complex, steps, depth, point } => {
            let f = load_pwl(&function)?;
            match action {
                PwlAction::Eval => {
                    let p = point.ok_or_else(|| usage(anyhow!("pwl eval needs --point")))?;
                    let x = RationalPoint::parse(&p).map_err(usage)?;
                    let v = f.eval(&x).map_err(usage)?;
                    let s = treelex::geometry::format_rational(&v);
                    Ok(Output::new(Value::String(s.clone()), s))
                }
                PwlAction::Convex => {
                    let k = load_geometry(&complex.ok_or_else(|| usage(anyhow!("pwl convex needs --complex")))?)?;
                    let mut all = true;
                    for s in k.maximal() {
                        all &= f.convex_check(s).map_err(anyhow::Error::from)?;
                    }
                    Ok(Output::boolean(all))
                }
                PwlAction::Vanish => {
                    let k = load_geometry(&complex.ok_or_else(|| usage(anyhow!("pwl vanish needs --complex")))?)?;
                    Ok(Output::boolean(f.vanishes_on(&k).map_err(anyhow::Error::from)?))
                }
                PwlAction::Ideal => {
                    let dir = steps.ok_or_else(|| usage(anyhow!("pwl ideal needs --steps and --depth")))?;
                    let depth = depth.ok_or_else(|| usage(anyhow!("pwl ideal needs --depth")))?;
                    let steps = load_steps(&dir)?;
                    Ok(Output::boolean(ideal_member_at_depth(&f, &steps, depth).map_err(usage)?))
                }
            }
        }
        Command::Cone { gens, exp } => {
            let ga = load_gens(&gens)?;
            let a: Vec<u64> = exp
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|e| usage(anyhow!("bad exponent list `{exp}`: {e}")))?;
            Ok(Output::boolean(ga.cone_member(&a).map_err(usage)?))
        }
        Command::Unit { gens, degree_bound } => {
            let ga = load_gens(&gens)?;
            let bound = ga.certificate_bound();
            let (source, point, u) = match ga.find_interior_cone_point(degree_bound) {
                Some(c) => {
                    let u = ga.def2_unit_from_cone(&c).map_err(anyhow::Error::from)?;
                    ("cone", Some(c), u)
                }
                None => ("fallback", None, fallback_unit(ga.forest())),
            };
            let mut certs = Vec::new();
            let mut ok = true;
            for g in ga.gens() {
                match def2_check(&u, g, &bound) {
                    Ok(n) => certs.push(json!(n.to_string())),
                    Err(_) => {
                        ok = false;
                        certs.push(Value::Null);
                    }
                }
            }
            let text = format!(
                "unit {} ({source})\ncertificates {}",
                show(&u),
                certs.iter().map(|c| c.as_str().unwrap_or("none").to_string()).collect::<Vec<_>>().join(" ")
            );
            let mut out = Output::new(json!({ "source": source, "cone_point": point, "unit": u.to_json(), "certificates": certs }), text);
            out.ok = ok;
            Ok(out)
        }
        Command::Fuzz { suite, trials } => {
            let seed = cli.seed.ok_or_else(|| usage(anyhow!("fuzz needs an explicit --seed")))?;
            let report = fuzz::fuzz(&suite, seed, trials).map_err(usage)?;
            let mut text = format!("{} seed {} trials {}", report.suite, report.seed, report.trials);
            for p in &report.properties {
                text.push_str(&format!("\n{:<28} passed {:>6} failed {:>6}", p.name, p.passed, p.failed));
                if let Some(ce) = &p.first_counterexample {
                    text.push_str(&format!("\n  first counterexample: {ce}"));
                }
            }
            let mut out = Output::new(serde_json::to_value(&report).map_err(anyhow::Error::from)?, text);
            out.ok = report.all_passed();
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", out.json),
                Format::Text => println!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

