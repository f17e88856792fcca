use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fusion_forge::catalog::{self, GroupSpec};
use fusion_forge::fusion::{fusion_of_group, spec::FusionSpec, FusionSystem, PGroup};
use fusion_forge::structure;
use fusion_forge::table::{log_p, prime_of_power};
use fusion_forge::theorems::{
    self, corpus_run, default_corpus, describe_subgroup, run_verifier, CorpusConfig, Outcome,
    VerificationReport, VERIFIER_IDS,
};
use fusion_forge::{Caps, Error};

mod render;

const SCHEMA: &str = "fusion-forge/1";

#[derive(Parser)]
#[command(name = "fusion-forge", version, about = "Finite p-groups and fusion systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Prime for group documents that are not themselves p-groups.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Parameter `n` of the exponent bounds.
    #[arg(long, global = true)]
    n: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest group order to enumerate.
    #[arg(long, global = true)]
    cap_order: Option<u64>,
    /// Largest p-group whose subgroup lattice is enumerated.
    #[arg(long, global = true)]
    cap_lattice: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Order, class, center, exponent, J(P) and the agemo/omega series of the
    /// center for a p-group (or a Sylow subgroup with --prime).
    GroupInfo { input: PathBuf },
    /// Build a fusion system and list its conjugacy classes of subgroups.
    FusionBuild { input: PathBuf },
    /// Saturation axioms, O_p(F), Z(F) and the Alperin family.
    FusionCheck { input: PathBuf },
    /// Run one verifier. `example-sharpness` takes the realization as an
    /// optional input and reads p and n from the flags.
    Verify {
        id: String,
        input: Option<PathBuf>,
    },
    /// Run a corpus configuration, or the built-in corpus when none is given.
    Corpus {
        config: Option<PathBuf>,
        /// Record wall-clock time per verifier. Output is then no longer
        /// reproducible byte for byte.
        #[arg(long)]
        timing: bool,
    },
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

struct Output {
    doc: Value,
    code: u8,
}

fn code(passed: bool) -> u8 {
    if passed {
        0
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = caps(&cli.opts);
    let result = match &cli.command {
        Command::GroupInfo { input } => group_info(input, &cli.opts, &caps),
        Command::FusionBuild { input } => fusion_build(input, &cli.opts, &caps),
        Command::FusionCheck { input } => fusion_check(input, &cli.opts, &caps),
        Command::Verify { id, input } => verify(id, input.as_deref(), &cli.opts, &caps),
        Command::Corpus { config, timing } => corpus(config.as_deref(), *timing, &caps),
    };
    match result {
        Ok(out) => {
            let text = match cli.opts.format {
                Format::Json => serde_json::to_string_pretty(&out.doc).unwrap() + "\n",
                Format::Text => render::text(&out.doc),
            };
            if let Err(e) = emit(&cli.opts.out, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn caps(o: &Opts) -> Caps {
    let mut c = Caps::default();
    if let Some(v) = o.cap_order {
        c.max_group_order = v;
    }
    if let Some(v) = o.cap_lattice {
        c.max_lattice_order = v;
    }
    c
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("standard input: {e}")))?;
    } else {
        s = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

/// Syntax and shape errors both carry their position.
fn positioned(e: serde_json::Error) -> Failure {
    Failure::from(Error::from(e))
}

fn envelope(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    doc
}

/// A fusion document, or a group document realized at `--prime` (inferred
/// for p-groups).
fn load_fusion(path: &Path, opts: &Opts, caps: &Caps) -> Result<FusionSystem, Failure> {
    let text = read_input(path)?;
    let v: Value = serde_json::from_str(&text).map_err(positioned)?;
    let is_fusion = v
        .as_object()
        .is_some_and(|o| o.contains_key("group_realized") || o.contains_key("generated"));
    if is_fusion {
        let spec: FusionSpec = serde_json::from_str(&text).map_err(positioned)?;
        return Ok(spec.build(caps)?);
    }
    let spec: GroupSpec = serde_json::from_str(&text).map_err(positioned)?;
    let g = catalog::build(&spec, caps)?;
    let p = prime_for(&g, opts)?;
    let sylow = structure::sylow(&g, p, caps)?;
    Ok(fusion_of_group(&g, &sylow, p, caps)?)
}

fn prime_for(g: &fusion_forge::Group, opts: &Opts) -> Result<u64, Failure> {
    match (opts.prime, prime_of_power(g.order())) {
        (Some(p), _) => Ok(p),
        (None, Some(p)) => Ok(p),
        (None, None) => Err(Failure::Input(format!(
            "group of order {} is not a p-group; pass --prime",
            g.order()
        ))),
    }
}

fn group_info(path: &Path, opts: &Opts, caps: &Caps) -> Result<Output, Failure> {
    let spec: GroupSpec = serde_json::from_str(&read_input(path)?).map_err(positioned)?;
    let g = catalog::build(&spec, caps)?;
    let p = prime_for(&g, opts)?;
    let sylow = structure::sylow(&g, p, caps)?;
    let pg = PGroup::new(&sylow, p, caps)?;
    let lat = pg.lattice();
    let top = lat.top();
    let z = lat.center(top);
    let ez = lat.exponent(z);
    let ns: Vec<u32> = match opts.n {
        Some(n) => vec![n],
        None => (1..=log_p(ez, p).unwrap_or(0).max(1)).collect(),
    };
    let series = |f: &dyn Fn(u32) -> usize| -> Vec<Value> {
        ns.iter().map(|&n| json!({ "n": n, "order": f(n) })).collect()
    };
    let body = json!({
        "group_order": g.order(),
        "prime": p,
        "p_group": describe_subgroup(&sylow),
        "class": lat.class(top),
        "exponent": lat.exponent(top),
        "abelian": lat.is_abelian(top),
        "center": {
            "order": lat.order(z),
            "exponent": ez,
            "generators": describe_subgroup(&pg.sub(z))["generators"],
        },
        "thompson": describe_subgroup(&pg.sub(lat.thompson(top))),
        "center_agemo": series(&|n| lat.order(lat.agemo(z, n))),
        "center_omega": series(&|n| lat.order(lat.omega(z, n))),
        "subgroups": lat.len(),
    });
    Ok(Output {
        doc: envelope("group-info", body),
        code: 0,
    })
}

fn fusion_build(path: &Path, opts: &Opts, caps: &Caps) -> Result<Output, Failure> {
    let f = load_fusion(path, opts, caps)?;
    let pg = f.pgroup();
    let classes: Vec<Value> = f
        .classes()
        .iter()
        .map(|c| {
            json!({
                "representative": describe_subgroup(&pg.sub(c.rep)),
                "members": c.members.len(),
                "aut_order": f.aut_order(c.rep),
            })
        })
        .collect();
    let body = json!({
        "prime": f.prime(),
        "p_group": describe_subgroup(&pg.sub(f.base())),
        "subgroups": f.nodes().count(),
        "classes": classes,
    });
    Ok(Output {
        doc: envelope("fusion-build", body),
        code: 0,
    })
}

fn subgroup_or_error(f: &FusionSystem, r: fusion_forge::Result<usize>) -> Value {
    match r {
        Ok(q) => describe_subgroup(&f.pgroup().sub(q)),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn fusion_check(path: &Path, opts: &Opts, caps: &Caps) -> Result<Output, Failure> {
    let f = load_fusion(path, opts, caps)?;
    let sat = theorems::verify_saturation(&f);
    let saturated = sat.conclusion == Outcome::Pass;
    let family = match f.alperin_family() {
        Ok(v) => json!(v
            .iter()
            .map(|&q| describe_subgroup(&f.pgroup().sub(q)))
            .collect::<Vec<_>>()),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let body = json!({
        "prime": f.prime(),
        "p_group": describe_subgroup(&f.pgroup().sub(f.base())),
        "saturated": saturated,
        "sylow_axiom": sat.checks[0].detail,
        "extension_axiom": sat.checks[1].detail,
        "counterexample": sat.counterexample,
        "op_subgroup": subgroup_or_error(&f, f.op_subgroup()),
        "center": subgroup_or_error(&f, f.center_of_fusion()),
        "alperin_family": family,
    });
    Ok(Output {
        doc: envelope("fusion-check", body),
        code: code(saturated),
    })
}

fn summarize(reports: &[VerificationReport]) -> Value {
    let count = |o: Outcome| reports.iter().filter(|r| r.conclusion == o).count();
    json!({
        "pass": count(Outcome::Pass),
        "fail": count(Outcome::Fail),
        "vacuous": count(Outcome::Vacuous),
        "error": 0,
    })
}

fn verify(id: &str, input: Option<&Path>, opts: &Opts, caps: &Caps) -> Result<Output, Failure> {
    if !VERIFIER_IDS.contains(&id) {
        return Err(Failure::Input(format!(
            "unknown verifier {id:?}; expected one of {}",
            VERIFIER_IDS.join(", ")
        )));
    }
    let reports = match (id, input) {
        ("example-sharpness", None) => {
            let (Some(p), Some(n)) = (opts.prime, opts.n) else {
                return Err(Failure::Input(
                    "example-sharpness without a realization needs --prime and --n".into(),
                ));
            };
            vec![theorems::verify_example_sharpness(p, n, None, caps)?]
        }
        (_, None) => return Err(Failure::Input(format!("verifier {id} needs an input document"))),
        (_, Some(path)) => {
            let f = load_fusion(path, opts, caps)?;
            run_verifier(id, &f, opts.n, caps)?
        }
    };
    let passed = reports.iter().all(|r| r.conclusion != Outcome::Fail);
    let body = json!({ "reports": reports, "summary": summarize(&reports) });
    Ok(Output {
        doc: envelope("verify", body),
        code: code(passed),
    })
}

fn corpus(config: Option<&Path>, timing: bool, caps: &Caps) -> Result<Output, Failure> {
    let cfg = match config {
        Some(path) => CorpusConfig::from_json(&read_input(path)?)?,
        None => default_corpus(),
    };
    let out = corpus_run(&cfg, caps, timing);
    let code = if out.summary.fail > 0 {
        1
    } else if out.errors.iter().any(|e| !e.cap_exceeded) {
        2
    } else if !out.errors.is_empty() {
        3
    } else {
        0
    };
    Ok(Output {
        doc: envelope("corpus", serde_json::to_value(&out).unwrap()),
        code,
    })
}
