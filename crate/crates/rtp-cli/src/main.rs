//! `rtp`: rational triple trees from the command line.

mod error;
mod target;

use clap::{Parser, Subcommand, ValueEnum};
use error::CliError;
use rtp_core::cycle::{laufer_run, Selection};
use rtp_core::lfd::{
    certify_lfd_with, infinitesimal_action_matrix, CertifyMode, CertifyOptions, RepSpace, DEFAULT_DIRECT_CAP,
};
use rtp_core::quiver::{reduce_to_core_seeded, reflect, rep_dimension, tits_form, QuiverJson, Step};
use rtp_core::roots::{
    enumerate_positive_roots_descent, enumerate_roots_box_with, root_count_formula, tree_kind, RootError, RootOptions,
};
use rtp_core::tree::{classify_rational, to_dot, Family, TreeJson};
use rtp_core::verify;
use serde_json::json;
use std::process::ExitCode;
use target::{Loaded, QuiverArgs, TargetArgs};

#[derive(Debug, Parser)]
#[command(name = "rtp", version, about = "Root systems, Artin cycles and linear free divisors of rational trees")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Box,
    Descent,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Direct,
    Compositional,
    Auto,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the families, or print one catalog tree.
    Catalog {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Negative definiteness, Artin cycle, p_a(Z) and multiplicity.
    Classify {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Artin cycle by Laufer's algorithm.
    Artin {
        #[command(flatten)]
        target: TargetArgs,
        /// Print every intermediate divisor.
        #[arg(long)]
        trace: bool,
        /// Add the highest-id offending vertex instead of the lowest.
        #[arg(long)]
        highest_first: bool,
    },
    /// Enumerate the root system.
    Roots {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum, default_value = "box")]
        method: Method,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        positive_only: bool,
        /// Apply the pairwise divisibility filter (quasi trees).
        #[arg(long)]
        divisibility_filter: bool,
        /// Search up to this multiple of Z (quasi trees).
        #[arg(long, default_value_t = 1)]
        box_scale: i64,
        #[arg(long, default_value_t = 50_000_000)]
        max_box: u128,
    },
    /// Closed-form root count of a family.
    Count {
        family: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
    },
    /// Apply reflections at the given vertices in order.
    Reflect {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Vertex ids, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
    },
    /// Reflect down to a Dynkin core.
    Reduce {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Reflections replayed before the search, comma separated.
        #[arg(long, value_delimiter = ',')]
        prefix: Vec<usize>,
        /// For quasi-example: replay the stored reflection prefix.
        #[arg(long)]
        example_prefix: bool,
    },
    /// Certify the discriminant as a linear free divisor.
    Lfd {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_DIRECT_CAP)]
        cap: usize,
        #[arg(long, value_delimiter = ',')]
        prefix: Vec<usize>,
        #[arg(long)]
        example_prefix: bool,
        /// Print the matrix of vector fields.
        #[arg(long)]
        emit_matrix: bool,
        /// Print the determinant.
        #[arg(long)]
        emit_poly: bool,
    },
    /// Write a tree or quiver as JSON or DOT.
    Export {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Label DOT vertices with the Artin cycle.
        #[arg(long)]
        cycle: bool,
    },
    /// Run the reproduction table.
    VerifyPaper {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn cmd_catalog(target: &TargetArgs, as_json: bool) -> Result<(), CliError> {
    if target.family.is_none() && target.file.is_none() {
        if as_json {
            let rows: Vec<_> = Family::ALL
                .iter()
                .map(|f| json!({"name": f.name(), "params": f.params_help(), "triple": f.is_triple()}))
                .collect();
            print_json(&rows);
        } else {
            for f in Family::ALL {
                println!("{:<16} {}", f.name(), f.params_help());
            }
        }
        return Ok(());
    }
    match target.load()? {
        Loaded::Tree(t) if as_json => print_json(&TreeJson::from(&t)),
        Loaded::Quiver(q) if as_json => print_json(&QuiverJson::from(&q)),
        loaded => {
            let (t, arrows) = match &loaded {
                Loaded::Tree(t) => (t, None),
                Loaded::Quiver(q) => (q.tree(), Some(q.arrows())),
            };
            println!("{} vertices, kind {:?}", t.len(), tree_kind(t));
            for v in 0..t.len() {
                println!("  {:>3} {:<6} weight {}  neighbors {:?}", v, t.label(v), t.weight(v), t.neighbors(v));
            }
            if let Some(arrows) = arrows {
                println!("arrows {arrows:?}");
            }
        }
    }
    Ok(())
}

fn cmd_classify(target: &TargetArgs, as_json: bool) -> Result<(), CliError> {
    let t = target.tree()?;
    let r = classify_rational(&t);
    if as_json {
        print_json(&r);
        return Ok(());
    }
    println!("negative definite  {}", r.negative_definite);
    if let Some(z) = &r.artin_cycle {
        println!("artin cycle        {z}");
    }
    if let Some(pa) = r.pa_of_z {
        println!("p_a(Z)             {pa}");
    }
    if let Some(m) = r.multiplicity {
        println!("multiplicity       {m}");
    }
    if !r.valency_violations.is_empty() {
        println!("valency above w+1  {:?}", r.valency_violations);
    }
    println!("{}", if r.rational { "rational" } else { "not rational" });
    Ok(())
}

fn cmd_artin(target: &TargetArgs, trace: bool, highest: bool, as_json: bool) -> Result<(), CliError> {
    let t = target.tree()?;
    let sel = if highest { Selection::HighestId } else { Selection::LowestId };
    let run = laufer_run(&t, sel, trace)?;
    let z2 = t.self_intersection(&run.cycle);
    if as_json {
        print_json(&json!({
            "cycle": run.cycle,
            "self_intersection": z2,
            "multiplicity": -z2,
            "trace": trace.then_some(&run.trace),
            "added": trace.then_some(&run.added),
        }));
        return Ok(());
    }
    if trace {
        for (k, z) in run.trace.iter().enumerate() {
            match run.added.get(k) {
                Some(v) => println!("Z{:<3} {z}  add vertex {v}", k + 1),
                None => println!("Z{:<3} {z}", k + 1),
            }
        }
    }
    println!("{}", run.cycle);
    println!("Z^2 = {z2}, multiplicity {}", -z2);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_roots(
    target: &TargetArgs,
    method: Method,
    count_only: bool,
    positive_only: bool,
    opts: RootOptions,
    as_json: bool,
) -> Result<(), CliError> {
    let t = target.tree()?;
    let set = match method {
        Method::Box => enumerate_roots_box_with(&t, &opts)?,
        Method::Descent => enumerate_positive_roots_descent(&t)?,
    };
    let roots: Vec<Vec<i64>> = if positive_only {
        set.positive().map(|y| y.coeffs().to_vec()).collect()
    } else {
        set.iter().map(|y| y.coeffs().to_vec()).collect()
    };
    if count_only {
        if as_json {
            print_json(&json!({"count": roots.len()}));
        } else {
            println!("{}", roots.len());
        }
    } else if as_json {
        print_json(&roots);
    } else {
        for y in &roots {
            let cells: Vec<String> = y.iter().map(i64::to_string).collect();
            println!("({})", cells.join(", "));
        }
        println!("{} roots", roots.len());
    }
    Ok(())
}

fn cmd_count(family: &str, params: &[i64], as_json: bool) -> Result<(), CliError> {
    let f: Family = family.parse().map_err(|e: rtp_core::tree::TreeError| CliError::usage(e.to_string()))?;
    let n = root_count_formula(f, params).map_err(|e| match e {
        RootError::Tree(te) => CliError::usage(te.to_string()),
        other => other.into(),
    })?;
    if as_json {
        print_json(&json!({"family": f.name(), "params": params, "count": n}));
    } else {
        println!("{n}");
    }
    Ok(())
}

fn cmd_reflect(args: &QuiverArgs, at: &[usize], as_json: bool) -> Result<(), CliError> {
    let (mut q, mut a) = args.load()?;
    let start = tits_form(&q, &a);
    let mut rows = Vec::new();
    for &v in at {
        let kind = if q.is_source(v) { "source" } else { "sink" };
        (q, a) = reflect(&q, &a, v)?;
        rows.push(json!({"vertex": v, "kind": kind, "dims": a}));
        if !as_json {
            println!("reflect {v} ({kind})  {a}");
        }
    }
    if as_json {
        print_json(&json!({"steps": rows, "quiver": QuiverJson::from(&q), "dims": a, "tits": tits_form(&q, &a)}));
    } else {
        println!("tits form {} -> {}, N = {}", start, tits_form(&q, &a), rep_dimension(&q, &a));
    }
    Ok(())
}

fn prefix_for(args: &QuiverArgs, prefix: &[usize], example: bool) -> Result<Vec<usize>, CliError> {
    if !example {
        return Ok(prefix.to_vec());
    }
    if !args.target.is_example() {
        return Err(CliError::usage("--example-prefix needs the quasi-example family"));
    }
    let mut seed = args.example_seed()?;
    seed.extend_from_slice(prefix);
    Ok(seed)
}

fn cmd_reduce(args: &QuiverArgs, prefix: &[usize], example: bool, as_json: bool) -> Result<(), CliError> {
    let (q, a) = args.load()?;
    let seed = prefix_for(args, prefix, example)?;
    let trail = reduce_to_core_seeded(&q, &a, &seed)?;
    if as_json {
        print_json(&trail);
        return Ok(());
    }
    for (k, s) in trail.steps.iter().enumerate() {
        println!("{:>4}  {s}", k + 1);
    }
    let reflections = trail.steps.iter().filter(|s| matches!(s, Step::Reflect { .. })).count();
    println!("{reflections} reflections, final dims {}", trail.final_dims);
    println!("split-off edges {:?} (m = {})", trail.split_off_edges, trail.split_off_count);
    for p in &trail.core {
        let name = p.dynkin.map_or("non-Dynkin".to_string(), |d| d.to_string());
        println!("core piece {name} on {:?} dims {:?}", p.vertices, p.dims);
    }
    if let Some(d) = &trail.diagnostic {
        println!("incomplete: {d}");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_lfd(
    args: &QuiverArgs,
    mode: Mode,
    cap: usize,
    prefix: &[usize],
    example: bool,
    emit_matrix: bool,
    emit_poly: bool,
    as_json: bool,
) -> Result<(), CliError> {
    let (q, a) = args.load()?;
    let opts = CertifyOptions {
        mode: match mode {
            Mode::Direct => CertifyMode::Direct,
            Mode::Compositional => CertifyMode::Compositional,
            Mode::Auto => CertifyMode::Auto,
        },
        cap,
        seed: prefix_for(args, prefix, example)?,
    };
    let cert = certify_lfd_with(&q, &a, &opts)?;
    let matrix = if emit_matrix {
        let r = RepSpace::new(&q, &a)?;
        let m = infinitesimal_action_matrix(&r)?;
        Some(
            m.entries()
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    if as_json {
        let mut v = serde_json::to_value(&cert).expect("certificate serializes");
        if let Some(m) = &matrix {
            v["matrix"] = json!(m);
        }
        print_json(&v);
        return Ok(());
    }
    if let Some(m) = &matrix {
        for row in m {
            println!("[{}]", row.join(", "));
        }
    }
    if emit_poly {
        match &cert.discriminant {
            Some(p) => println!("{p}"),
            None => {
                for p in cert.composition.iter().flat_map(|c| &c.pieces) {
                    println!("{}", p.discriminant);
                }
            }
        }
    }
    println!("mode {:?}, degree {}, verdict {}", cert.mode, cert.degree, cert.verdict);
    if let Some(c) = &cert.composition {
        println!("split-off factors {} on edges {:?}", c.split_off_count, c.split_off_edges);
        for p in &c.pieces {
            let name = p.dynkin.map_or("non-Dynkin".to_string(), |d| d.to_string());
            println!(
                "piece {name} dims {:?} -> {:?} (N = {}, {} castling steps): {}",
                p.dims, p.certified_dims, p.n, p.castling_steps, p.verdict
            );
        }
    }
    if let Some(d) = &cert.diagnostic {
        println!("diagnostic: {d}");
    }
    Ok(())
}

fn cmd_export(target: &TargetArgs, format: Format, cycle: bool) -> Result<(), CliError> {
    let loaded = target.load()?;
    match format {
        Format::Json => match &loaded {
            Loaded::Tree(t) => print_json(&TreeJson::from(t)),
            Loaded::Quiver(q) => print_json(&QuiverJson::from(q)),
        },
        Format::Dot => {
            let t = match &loaded {
                Loaded::Tree(t) => t,
                Loaded::Quiver(q) => q.tree(),
            };
            let z = if cycle { Some(rtp_core::cycle::laufer_artin_cycle(t)?) } else { None };
            print!("{}", to_dot(t, z.as_ref()));
        }
    }
    Ok(())
}

fn cmd_verify(seed: u64, as_json: bool) -> Result<bool, CliError> {
    let checks = verify::run_all(seed);
    if as_json {
        print_json(&checks);
    } else {
        for c in &checks {
            println!("{} {}  {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.title);
            for d in &c.details {
                println!("       {d}");
            }
        }
    }
    Ok(checks.iter().all(|c| c.passed))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let j = cli.json;
    match cli.command {
        Command::Catalog { target } => cmd_catalog(&target, j)?,
        Command::Classify { target } => cmd_classify(&target, j)?,
        Command::Artin { target, trace, highest_first } => cmd_artin(&target, trace, highest_first, j)?,
        Command::Roots { target, method, count_only, positive_only, divisibility_filter, box_scale, max_box } => {
            if box_scale < 1 {
                return Err(CliError::usage("--box-scale must be at least 1"));
            }
            let opts = RootOptions { divisibility_filter, box_scale, max_box };
            cmd_roots(&target, method, count_only, positive_only, opts, j)?
        }
        Command::Count { family, params } => cmd_count(&family, &params, j)?,
        Command::Reflect { quiver, at } => cmd_reflect(&quiver, &at, j)?,
        Command::Reduce { quiver, prefix, example_prefix } => cmd_reduce(&quiver, &prefix, example_prefix, j)?,
        Command::Lfd { quiver, mode, cap, prefix, example_prefix, emit_matrix, emit_poly } => {
            cmd_lfd(&quiver, mode, cap, &prefix, example_prefix, emit_matrix, emit_poly, j)?
        }
        Command::Export { target, format, cycle } => cmd_export(&target, format, cycle)?,
        Command::VerifyPaper { seed } => return cmd_verify(seed, j),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("rtp: {e}");
            e.exit_code()
        }
    }
}
