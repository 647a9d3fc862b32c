use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use solvsph_core::build::{build_subalgebra, check_sphericity, is_weight_basis, verify_closure};
use solvsph_core::combdata::{check_reduced, largest_torus, validate};
use solvsph_core::enumerate::{d, d0, emit_table, enumerate_reduced, enumerate_valid, Catalog};
use solvsph_core::rootsys::{support_iter, Support};
use solvsph_core::transform::{elementary_transform, orbit, regular_active_simple_roots};
use solvsph_core::{CombTriple, RootSystem, TorusSpec};

#[derive(Parser)]
#[command(name = "solvsph", version, about = "Spherical solvable subgroups: validation, construction, orbits and catalogs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Root system label such as A2, B3, A1xA2.
    #[arg(long, global = true)]
    system: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct TripleInput {
    /// Inline JSON triple, or a path to one; stdin when omitted or "-".
    triple: Option<String>,
    #[arg(long, conflicts_with = "triple")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Positive roots and nonzero structure constants.
    Roots { label: Option<String> },
    /// Check (A), (D), (E), (C), (T) and the reducedness conditions.
    Validate(TripleInput),
    /// Build the subalgebra and check closure and sphericity.
    Build(TripleInput),
    /// Apply one elementary transformation.
    Transform {
        #[command(flatten)]
        input: TripleInput,
        /// 0-based index of a regular active simple root.
        #[arg(long)]
        center: usize,
    },
    /// Orbit of a triple under elementary transformations.
    Orbit {
        #[command(flatten)]
        input: TripleInput,
        /// Follow only moves that keep the triple reduced.
        #[arg(long)]
        reduced: bool,
    },
    /// Stream every triple with the given support (all supports by default).
    Enumerate {
        label: Option<String>,
        /// Only reduced triples; required above rank 3.
        #[arg(long)]
        reduced: bool,
        /// 0-based simple-root indices, comma separated.
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<usize>>,
    },
    /// Print d0 and d.
    Counts { label: Option<String> },
    /// Table for one or more systems on the same graph.
    Table { labels: Vec<String> },
}

/// Failures that map to exit status 1.
#[derive(Debug)]
struct Rejected;

impl std::fmt::Display for Rejected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("validation failed")
    }
}

impl std::error::Error for Rejected {}

struct Ctx {
    system: Option<String>,
    format: Option<Format>,
    out: Box<dyn Write>,
}

impl Ctx {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn system(&self, positional: Option<String>) -> anyhow::Result<RootSystem> {
        let label = positional
            .or_else(|| self.system.clone())
            .ok_or_else(|| anyhow!("no root system given"))?;
        Ok(RootSystem::from_label(&label)?)
    }

    fn line(&mut self, s: impl std::fmt::Display) -> anyhow::Result<()> {
        writeln!(self.out, "{s}")?;
        Ok(())
    }

    fn json(&mut self, v: &Value) -> anyhow::Result<()> {
        let s = serde_json::to_string(v)?;
        self.line(s)
    }
}

struct Loaded {
    rs: RootSystem,
    triple: CombTriple,
    torus: Option<TorusSpec>,
}

fn read_input(inp: &TripleInput) -> anyhow::Result<String> {
    if let Some(p) = &inp.input {
        return fs::read_to_string(p).with_context(|| format!("reading {}", p.display()));
    }
    match inp.triple.as_deref() {
        Some(s) if s.trim_start().starts_with('{') => Ok(s.to_string()),
        Some(p) if p != "-" => fs::read_to_string(p).with_context(|| format!("reading {p}")),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn load(ctx: &Ctx, inp: &TripleInput) -> anyhow::Result<Loaded> {
    let text = read_input(inp)?;
    let v: Value = serde_json::from_str(&text).context("malformed JSON")?;
    let label = ctx
        .system
        .clone()
        .or_else(|| v.get("system").and_then(Value::as_str).map(String::from))
        .ok_or_else(|| anyhow!("no root system given (use --system or a \"system\" key)"))?;
    let rs = RootSystem::from_label(&label)?;
    let triple: CombTriple = serde_json::from_value(v.clone()).context("malformed triple")?;
    let torus = match v.get("torus") {
        Some(t) => Some(TorusSpec::from_json(&t.to_string(), rs.rank())?),
        None => None,
    };
    Ok(Loaded { rs, triple, torus })
}

fn parse_support(rs: &RootSystem, idx: &[usize]) -> anyhow::Result<Support> {
    let mut s: Support = 0;
    for &i in idx {
        if i >= rs.rank() {
            bail!("support index {i} out of range for rank {}", rs.rank());
        }
        s |= 1 << i;
    }
    Ok(s)
}

fn triple_text(t: &CombTriple) -> String {
    if t.is_empty() {
        "(empty)".into()
    } else {
        t.to_string()
    }
}

fn cmd_roots(ctx: &mut Ctx, label: Option<String>) -> anyhow::Result<()> {
    let rs = ctx.system(label)?;
    let n = rs.num_positive();
    let mut consts = Vec::new();
    for a in 0..2 * n {
        for b in 0..2 * n {
            let c = rs.n_signed(a, b);
            if c != 0 {
                consts.push((rs.signed_root(a), rs.signed_root(b), c));
            }
        }
    }
    match ctx.format(Format::Text) {
        Format::Json => {
            let sc: Vec<Value> = consts.iter().map(|(a, b, c)| json!({"a": a, "b": b, "N": c})).collect();
            let v = json!({
                "system": rs.label(),
                "rank": rs.rank(),
                "cartan": rs.cartan_matrix(),
                "positive_roots": rs.positive_roots(),
                "structure_constants": sc,
            });
            ctx.json(&v)
        }
        Format::Csv => {
            ctx.line("a,b,N")?;
            for (a, b, c) in &consts {
                ctx.line(format!("\"{a}\",\"{b}\",{c}"))?;
            }
            Ok(())
        }
        Format::Text => {
            ctx.line(format!("{} rank {} positive roots {}", rs.label(), rs.rank(), n))?;
            for (i, r) in rs.positive_roots().iter().enumerate() {
                ctx.line(format!("{i:>3}  {r}  height {}", r.height()))?;
            }
            ctx.line("structure constants N(a, b), a + b a root:")?;
            for (a, b, c) in &consts {
                ctx.line(format!("  N({a}, {b}) = {c}"))?;
            }
            Ok(())
        }
    }
}

fn cmd_validate(ctx: &mut Ctx, inp: &TripleInput) -> anyhow::Result<()> {
    let l = load(ctx, inp)?;
    let base = validate(&l.rs, &l.triple, None);
    let torus = match &l.torus {
        Some(t) => Some(t.clone()),
        None if base.admissible() => Some(largest_torus(&l.rs, &l.triple)),
        None => None,
    };
    let mut rep = match &torus {
        Some(t) => validate(&l.rs, &l.triple, Some(t)),
        None => base,
    };
    if rep.admissible() {
        let red = check_reduced(&l.rs, &l.triple);
        rep.a_prime = red.a_prime;
        rep.d_prime = red.d_prime;
        rep.e_prime = red.e_prime;
        for f in red.failures {
            if !rep.failures.contains(&f) {
                rep.failures.push(f);
            }
        }
    }
    let valid = [rep.a, rep.d, rep.e, rep.c, rep.t].iter().all(|x| x.unwrap_or(true));
    match ctx.format(Format::Json) {
        Format::Text => {
            let rows = [
                ("A", rep.a),
                ("D", rep.d),
                ("E", rep.e),
                ("C", rep.c),
                ("T", rep.t),
                ("A'", rep.a_prime),
                ("D'", rep.d_prime),
                ("E'", rep.e_prime),
            ];
            for (n, v) in rows {
                let s = match v {
                    Some(true) => "ok",
                    Some(false) => "FAIL",
                    None => "-",
                };
                ctx.line(format!("({n}) {s}"))?;
            }
            for f in rep.failures.clone() {
                ctx.line(format!("  {f}"))?;
            }
        }
        _ => {
            let mut v = serde_json::to_value(&rep)?;
            v["valid"] = json!(valid);
            v["reduced"] = json!(rep.ok() && rep.a_prime.is_some());
            ctx.json(&v)?;
        }
    }
    if valid {
        Ok(())
    } else {
        Err(Rejected.into())
    }
}

fn cmd_build(ctx: &mut Ctx, inp: &TripleInput) -> anyhow::Result<()> {
    let l = load(ctx, inp)?;
    let torus = l.torus.clone().unwrap_or_else(|| largest_torus(&l.rs, &l.triple));
    let model = build_subalgebra(&l.rs, &l.triple, &torus)?;
    let closed = verify_closure(&l.rs, &model);
    let invariant = is_weight_basis(&l.rs, &model);
    let spherical = check_sphericity(&l.rs, &model);
    match ctx.format(Format::Json) {
        Format::Text => {
            ctx.line(format!("triple      {}", triple_text(&l.triple)))?;
            ctx.line(format!("rank S      {}", model.torus.rank_s()))?;
            ctx.line(format!("dim n       {}", model.dim()))?;
            ctx.line(format!("closed      {closed}"))?;
            ctx.line(format!("S-invariant {invariant}"))?;
            ctx.line(format!("spherical   {spherical}"))?;
        }
        _ => {
            let mut v = model.to_json();
            v["closed"] = json!(closed);
            v["s_invariant"] = json!(invariant);
            v["spherical"] = json!(spherical);
            ctx.json(&v)?;
        }
    }
    Ok(())
}

fn cmd_transform(ctx: &mut Ctx, inp: &TripleInput, center: usize) -> anyhow::Result<()> {
    let l = load(ctx, inp)?;
    if center >= l.rs.rank() {
        bail!("center {center} out of range for rank {}", l.rs.rank());
    }
    let reg = regular_active_simple_roots(&l.rs, &l.triple)?;
    if !reg.contains(&center) {
        bail!("simple root {center} is not a regular active root; regular: {reg:?}");
    }
    let t = elementary_transform(&l.rs, &l.triple, center)?;
    match ctx.format(Format::Json) {
        Format::Text => ctx.line(triple_text(&t)),
        _ => ctx.json(&serde_json::to_value(&t)?),
    }
}

fn cmd_orbit(ctx: &mut Ctx, inp: &TripleInput, reduced: bool) -> anyhow::Result<()> {
    let l = load(ctx, inp)?;
    let g = orbit(&l.rs, &l.triple, reduced)?;
    match ctx.format(Format::Json) {
        Format::Text => {
            for (i, t) in g.nodes.iter().enumerate() {
                let out: Vec<String> = g
                    .edges
                    .iter()
                    .filter(|e| e.from == i)
                    .map(|e| format!("{}->{}", e.center, e.to))
                    .collect();
                ctx.line(format!("{i:>4}  {}  [{}]", triple_text(t), out.join(" ")))?;
            }
            Ok(())
        }
        Format::Csv => {
            ctx.line("from,to,center")?;
            for e in g.edges.clone() {
                ctx.line(format!("{},{},{}", e.from, e.to, e.center))?;
            }
            Ok(())
        }
        Format::Json => ctx.json(&g.to_json()),
    }
}

fn emit_catalog(ctx: &mut Ctx, cat: &Catalog, fmt: Format) -> anyhow::Result<()> {
    match fmt {
        Format::Json => {
            for v in cat.json_lines() {
                ctx.json(&v)?;
            }
        }
        Format::Csv => {
            for (i, t) in cat.triples.iter().enumerate() {
                let (cs, cn) = cat.codims[i];
                let support: Vec<String> = support_iter(cat.support).map(|k| k.to_string()).collect();
                ctx.line(format!(
                    "{},{},\"{}\",\"{}\",{cs},{cn},{}",
                    cat.label,
                    support.join(" "),
                    triple_text(t),
                    i,
                    cat.orbit_of(i)
                ))?;
            }
        }
        Format::Text => {
            for (i, t) in cat.triples.iter().enumerate() {
                let (cs, cn) = cat.codims[i];
                ctx.line(format!("{}\t{}\tcS={cs} cN={cn} orbit={}", cat.label, triple_text(t), cat.orbit_of(i)))?;
            }
        }
    }
    Ok(())
}

fn cmd_enumerate(ctx: &mut Ctx, label: Option<String>, reduced: bool, support: Option<Vec<usize>>) -> anyhow::Result<()> {
    let rs = ctx.system(label)?;
    let supports: Vec<Support> = match support {
        Some(idx) => vec![parse_support(&rs, &idx)?],
        None => (0..=rs.full_support()).collect(),
    };
    let fmt = ctx.format(Format::Json);
    if fmt == Format::Csv {
        ctx.line("system,support,triple,index,cS,cN,orbit")?;
    }
    for s in supports {
        let cat = if reduced {
            enumerate_reduced(&rs, s)?
        } else {
            enumerate_valid(&rs, s)?
        };
        emit_catalog(ctx, &cat, fmt)?;
        ctx.out.flush()?;
    }
    Ok(())
}

fn cmd_counts(ctx: &mut Ctx, label: Option<String>) -> anyhow::Result<()> {
    let rs = ctx.system(label)?;
    let (a, b) = (d0(&rs)?, d(&rs)?);
    match ctx.format(Format::Text) {
        Format::Json => ctx.json(&json!({"system": rs.label(), "d0": a, "d": b})),
        Format::Csv => {
            ctx.line("system,d0,d")?;
            ctx.line(format!("{},{a},{b}", rs.label()))
        }
        Format::Text => ctx.line(format!("d0={a} d={b}")),
    }
}

fn cmd_table(ctx: &mut Ctx, mut labels: Vec<String>) -> anyhow::Result<()> {
    if labels.is_empty() {
        labels = ctx
            .system
            .as_deref()
            .map(|s| s.split(',').map(String::from).collect())
            .unwrap_or_default();
    }
    if labels.is_empty() {
        bail!("no root systems given");
    }
    let systems = labels
        .iter()
        .map(|l| RootSystem::from_label(l))
        .collect::<Result<Vec<_>, _>>()?;
    let table = emit_table(&systems)?;
    match ctx.format(Format::Text) {
        Format::Text => write!(ctx.out, "{}", table.to_text())?,
        Format::Csv => write!(ctx.out, "{}", table.to_csv())?,
        Format::Json => ctx.json(&table.to_json())?,
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    let out: Box<dyn Write> = match &cli.output {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut ctx = Ctx {
        system: cli.system,
        format: cli.format,
        out,
    };
    let res = match cli.cmd {
        Cmd::Roots { label } => cmd_roots(&mut ctx, label),
        Cmd::Validate(inp) => cmd_validate(&mut ctx, &inp),
        Cmd::Build(inp) => cmd_build(&mut ctx, &inp),
        Cmd::Transform { input, center } => cmd_transform(&mut ctx, &input, center),
        Cmd::Orbit { input, reduced } => cmd_orbit(&mut ctx, &input, reduced),
        Cmd::Enumerate { label, reduced, support } => cmd_enumerate(&mut ctx, label, reduced, support),
        Cmd::Counts { label } => cmd_counts(&mut ctx, label),
        Cmd::Table { labels } => cmd_table(&mut ctx, labels),
    };
    ctx.out.flush()?;
    res
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Rejected>() => {
            eprintln!("solvsph: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("solvsph: {e:#}");
            ExitCode::from(2)
        }
    }
}
