use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use semidual_core::algebra::LocalAlgebra;
use semidual_core::formats::{load_module, load_ring};
use semidual_core::lattice::{build_lattice, cross_validate, lattice_counts, symbolic_base_change, ChainSpec};
use semidual_core::modcat::{regular_module, residue_field, IsoOptions, RModule};
use semidual_core::semidual::{
    bass_series, certify_semidualizing, dualizing_module, enumerate_semidualizing, hom_bass_series,
    is_dualizing, is_gorenstein, EnumOptions, FlatExtension, SdOptions, SdStatus,
};

mod render;

const VERSION: &str = env!("CARGO_PKG_VERSION");
const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Exit code for input errors and bad usage.
const EXIT_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "semidual", version, about = "Semidualizing modules over finite-dimensional local algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the randomized isomorphism search.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Highest Ext/Tor degree examined without a finite certificate (default 2 * dim R).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    ext_bound: Option<u64>,
    /// Truncation degree of Bass series.
    #[arg(long, default_value_t = 20, global = true)]
    trunc: usize,
    /// Largest number of generators searched by enumeration.
    #[arg(long, default_value_t = 3, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    gen_bound: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, basis, socle, Bass series and Gorenstein verdict of a ring.
    RingInfo { ring: PathBuf },
    /// Certify a module as semidualizing (exit 0 certified, 1 to bound, 2 refuted).
    CheckSd {
        ring: PathBuf,
        /// Module file, or one of `omega`, `regular`, `residue`.
        #[arg(long)]
        module: String,
    },
    /// Search for semidualizing classes up to isomorphism.
    Enumerate {
        ring: PathBuf,
        /// Largest number of relations per candidate (default: all submodules).
        #[arg(long)]
        rel_bound: Option<usize>,
        /// Largest number of relation submodules examined per generator count.
        #[arg(long, default_value_t = 50_000)]
        candidate_cap: usize,
    },
    /// The Boolean lattice of classes attached to a chain of length n.
    Lattice {
        n: usize,
        /// Covering pairs only.
        #[arg(long)]
        hasse: bool,
        /// Label nodes with dagger words.
        #[arg(long)]
        dagger: bool,
        /// Print node and relation counts only.
        #[arg(long)]
        count_only: bool,
        /// Same as `--format dot`.
        #[arg(long)]
        dot: bool,
        /// Do not assume C_0 is the ring itself.
        #[arg(long)]
        no_c0_trivial: bool,
        /// Do not assume the nesting (transitivity) hypothesis.
        #[arg(long)]
        no_transitive: bool,
    },
    /// Compare classes over R and over R ⊗ T for a flat extension with fibre T.
    BaseChange { ring: PathBuf, fibre: PathBuf },
    /// Check the subset calculus against concrete modules on a chain.
    CrossValidate {
        ring: PathBuf,
        /// Work over ring ⊗ fibre.
        #[arg(long)]
        fibre: Option<PathBuf>,
        /// Comma-separated chain C_0,...,C_n: module files or `regular`,
        /// `omega`, `omega-base`, `omega-fibre`.
        #[arg(long)]
        chain: Option<String>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("SEMIDUAL_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_ERROR),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn sd_options(&self) -> SdOptions {
        SdOptions {
            ext_bound: self.cli.ext_bound.map(|b| b as usize),
            iso: IsoOptions {
                seed: self.cli.seed,
                ..IsoOptions::default()
            },
        }
    }

    fn config(&self, extra: Value) -> Value {
        let mut c = json!({
            "seed": self.cli.seed,
            "ext_bound": self.cli.ext_bound,
            "trunc": self.cli.trunc,
            "gen_bound": self.cli.gen_bound,
            "format": self.cli.format,
        });
        if let (Value::Object(base), Value::Object(more)) = (&mut c, extra) {
            base.extend(more);
        }
        c
    }

    fn emit(&self, command: &str, config: Value, result: Value, text: String) -> Result<()> {
        match self.cli.format {
            Format::Json => {
                let doc = json!({
                    "engine": {"name": "semidual", "version": VERSION},
                    "command": command,
                    "config": config,
                    "result": result,
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            }
            Format::Text => {
                println!("semidual {VERSION} {command}");
                println!("config: {}", render::config_line(&config));
                print!("{text}");
            }
            Format::Dot => bail!("--format dot is only available for the lattice command"),
        }
        Ok(())
    }
}

fn read_ring(path: &Path) -> Result<Arc<LocalAlgebra>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    load_ring(&text).with_context(|| format!("ring file {}", path.display()))
}

fn resolve_module(spec: &str, algebra: &Arc<LocalAlgebra>, ext: Option<&FlatExtension>) -> Result<RModule> {
    Ok(match spec {
        "omega" => dualizing_module(algebra),
        "regular" => regular_module(algebra),
        "residue" => residue_field(algebra),
        "omega-base" | "omega-fibre" => {
            let Some(ext) = ext else {
                bail!("module '{spec}' needs --fibre");
            };
            if spec == "omega-base" {
                ext.base_change(&dualizing_module(&ext.base))?
            } else {
                ext.tensor(&regular_module(&ext.base), &dualizing_module(&ext.fibre))?
            }
        }
        path => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            load_module(&text, algebra).with_context(|| format!("module file {path}"))?
        }
    })
}

fn run(cli: &Cli) -> Result<u8> {
    let ctx = Ctx { cli };
    if cli.format == Format::Dot && !matches!(cli.command, Command::Lattice { .. }) {
        bail!("--format dot is only available for the lattice command");
    }
    match &cli.command {
        Command::RingInfo { ring } => ring_info(&ctx, ring),
        Command::CheckSd { ring, module } => check_sd(&ctx, ring, module),
        Command::Enumerate {
            ring,
            rel_bound,
            candidate_cap,
        } => enumerate(&ctx, ring, *rel_bound, *candidate_cap),
        Command::Lattice {
            n,
            hasse,
            dagger,
            count_only,
            dot,
            no_c0_trivial,
            no_transitive,
        } => {
            let mut spec = ChainSpec::new(*n)?;
            spec.assume_c0_trivial = !no_c0_trivial;
            spec.assume_transitive = !no_transitive;
            let format = if *dot { Format::Dot } else { cli.format };
            lattice(&ctx, format, &spec, *hasse, *dagger, *count_only)
        }
        Command::BaseChange { ring, fibre } => base_change(&ctx, ring, fibre),
        Command::CrossValidate { ring, fibre, chain } => cross(&ctx, ring, fibre.as_deref(), chain.as_deref()),
    }
}

fn ring_info(ctx: &Ctx, path: &Path) -> Result<u8> {
    let a = read_ring(path)?;
    let series = bass_series(&a, ctx.cli.trunc)?;
    let socle = a.socle().dim();
    let result = json!({
        "p": a.field().p(),
        "dim": a.dim(),
        "basis": a.basis_labels(),
        "variables": a.var_names(),
        "loewy_dims": a.loewy_dims(),
        "socle_dim": socle,
        "gorenstein": is_gorenstein(&a),
        "bass_series": series,
    });
    let text = render::ring_info(&a, socle, &series);
    ctx.emit("ring-info", ctx.config(json!({"ring": path})), result, text)?;
    Ok(0)
}

fn check_sd(ctx: &Ctx, path: &Path, module: &str) -> Result<u8> {
    let a = read_ring(path)?;
    let c = resolve_module(module, &a, None)?;
    let opts = ctx.sd_options();
    let cert = certify_semidualizing(&c, &opts)?;
    let dualizing = (!cert.is_refuted()).then(|| is_dualizing(&c, &opts));
    let result = json!({"certificate": cert, "dualizing": dualizing});
    let text = render::certificate(&cert, dualizing);
    let config = ctx.config(json!({"ring": path, "module": module, "effective_ext_bound": opts.bound_for(&a)}));
    ctx.emit("check-sd", config, result, text)?;
    Ok(match cert.status {
        SdStatus::Certified => 0,
        SdStatus::CertifiedToBound => 1,
        SdStatus::Refuted { .. } => 2,
    })
}

fn enum_options(ctx: &Ctx, rel_bound: Option<usize>, candidate_cap: usize) -> EnumOptions {
    EnumOptions {
        gen_bound: ctx.cli.gen_bound as usize,
        rel_bound,
        candidate_cap,
        sd: ctx.sd_options(),
    }
}

fn enumerate(ctx: &Ctx, path: &Path, rel_bound: Option<usize>, candidate_cap: usize) -> Result<u8> {
    let a = read_ring(path)?;
    let opts = enum_options(ctx, rel_bound, candidate_cap);
    let catalog = enumerate_semidualizing(&a, &opts)?;
    let text = render::catalog(&catalog);
    ctx.emit(
        "enumerate",
        ctx.config(json!({"ring": path, "rel_bound": rel_bound, "candidate_cap": candidate_cap})),
        serde_json::to_value(&catalog)?,
        text,
    )?;
    Ok(0)
}

fn lattice(ctx: &Ctx, format: Format, spec: &ChainSpec, hasse: bool, dagger: bool, count_only: bool) -> Result<u8> {
    if count_only {
        let (nodes, relations) = lattice_counts(spec)?;
        match format {
            Format::Json => println!("{}", json!({"nodes": nodes.to_string(), "relations": relations.to_string()})),
            _ => println!("nodes={nodes} relations={relations}"),
        }
        return Ok(0);
    }
    if dagger && !spec.assume_c0_trivial {
        bail!("--dagger needs C_0 to be trivial; drop --no-c0-trivial");
    }
    let l = build_lattice(spec)?;
    match format {
        Format::Dot => print!("{}", l.to_dot(hasse, dagger)),
        Format::Json => {
            let edges = if hasse { l.hasse_edges() } else { l.strict_edges() };
            let result = json!({
                "nodes": l.nodes,
                "node_count": l.node_count(),
                "relation_count": l.relation_count(),
                "edges": edges,
                "hasse": hasse,
            });
            ctx.emit("lattice", ctx.config(json!({"n": spec.n, "chain": spec})), result, String::new())?;
        }
        Format::Text => {
            let text = render::lattice(&l, hasse, dagger);
            ctx.emit("lattice", ctx.config(json!({"n": spec.n})), Value::Null, text)?;
        }
    }
    Ok(0)
}

fn base_change(ctx: &Ctx, ring: &Path, fibre: &Path) -> Result<u8> {
    let r = read_ring(ring)?;
    let t = read_ring(fibre)?;
    let ext = FlatExtension::new(&r, &t)?;
    let opts = enum_options(ctx, None, 50_000);
    let cat_r = enumerate_semidualizing(&r, &opts)?;
    let cat_t = enumerate_semidualizing(&t, &opts)?;
    let report = render::base_change_classes(&ext, &cat_r, &cat_t, &opts.sd)?;
    let bound = symbolic_base_change(cat_r.count, ext.is_gorenstein());
    let bass = hom_bass_series(&ext, ctx.cli.trunc.min(10))?;
    let exhibited = report.classes.len();
    let result = json!({
        "gorenstein": ext.is_gorenstein(),
        "fibre_socle_dim": t.socle().dim(),
        "classes_over_base": cat_r.count,
        "classes_over_fibre": cat_t.count,
        "total_dim": ext.total.dim(),
        "classes_over_total": report.classes,
        "symbolic_bound": bound,
        "bound_met": exhibited >= bound.bound,
        "bass": bass,
    });
    let text = render::base_change(&ext, &cat_r, &report, &bound, &bass);
    ctx.emit(
        "base-change",
        ctx.config(json!({"ring": ring, "fibre": fibre})),
        result,
        text,
    )?;
    Ok(0)
}

fn cross(ctx: &Ctx, ring: &Path, fibre: Option<&Path>, chain: Option<&str>) -> Result<u8> {
    let r = read_ring(ring)?;
    let ext = match fibre {
        Some(f) => Some(FlatExtension::new(&r, &read_ring(f)?)?),
        None => None,
    };
    let algebra = ext.as_ref().map_or(r.clone(), |e| e.total.clone());
    let default_chain = if ext.is_some() { "regular,omega-base,omega" } else { "regular,omega" };
    let chain = chain.unwrap_or(default_chain);
    let names: Vec<String> = chain.split(',').map(|s| s.trim().to_string()).collect();
    if names.is_empty() || names.iter().any(String::is_empty) {
        bail!("empty entry in --chain");
    }
    let modules = names
        .iter()
        .map(|s| resolve_module(s, &algebra, ext.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let spec = ChainSpec::new(names.len() - 1)?;
    let report = cross_validate(&spec, &modules, &ctx.sd_options())?;
    let text = render::cross_validation(&report, &names);
    ctx.emit(
        "cross-validate",
        ctx.config(json!({"ring": ring, "fibre": fibre, "chain": names})),
        serde_json::to_value(&report)?,
        text,
    )?;
    Ok(if report.all_agree() { 0 } else { 2 })
}
