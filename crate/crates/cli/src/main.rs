use clap::{Parser, Subcommand, ValueEnum};
use mpat_cli::cache::{Cache, ResultRecord};
use mpat_cli::formats::{
    family_hash, family_to_json, load_family, load_pattern, pattern_from_json, pattern_to_json,
    serialize_pattern,
};
use mpat_cli::suites::{run_suite, SuiteName, SuiteOptions, DEFAULT_SEED};
use mpat_core::{
    contains_any, ex_exact_with, ex_o1_decide, family_bdr, family_pkr, identity_equivalents,
    insert_empty_layer, j_family, lift_entry, lower_entry, minnonlin_count_bound,
    minnonlin_filters, replicate_dim, sat_exact_with, ssat_exact_with, ssat_exponent,
    ssat_exponent_pattern, ssat_witness, Error as CoreError, Family, O1Verdict, SearchConfig,
    Tensor01,
};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "mpat", version, about = "workbench for forbidden 0-1 pattern problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cap on undetermined host cells after the forced-zero reduction.
    #[arg(long, global = true)]
    max_cells: Option<usize>,
    /// Cap on search tree nodes.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Thread count for verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Result cache directory; MPAT_CACHE_DIR overrides this flag.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the random inequality corpus.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether a host matrix contains any family member.
    Contains { host: PathBuf, family: PathBuf },
    /// Maximum weight of an n-sized host avoiding every family member.
    Ex {
        family: PathBuf,
        #[arg(short, long)]
        n: usize,
    },
    /// Minimum weight of a saturated n-sized host.
    Sat {
        family: PathBuf,
        #[arg(short, long)]
        n: usize,
    },
    /// Minimum weight of a semisaturated n-sized host.
    Ssat {
        family: PathBuf,
        #[arg(short, long)]
        n: usize,
    },
    /// Growth exponent of the semisaturation function.
    ClassifySsat { family: PathBuf },
    /// Decide whether the extremal function stays bounded, up to a depth.
    DecideO1 {
        family: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Emit a built-in pattern or family.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Apply a pattern transform.
    Transform {
        #[command(subcommand)]
        what: TransformCommand,
    },
    /// Run necessary-condition filters on a pattern.
    Filters {
        #[command(subcommand)]
        what: FilterCommand,
    },
    /// Run a verification suite (inequalities, exact-values, ssat, decisions, all).
    Verify { suite: String },
    /// Dump every cached result.
    Report,
}

#[derive(Subcommand)]
enum GenCommand {
    /// The monotone diagonal matrices of a given depth.
    IdentityEquivalents { n0: usize, d: usize },
    /// Weight-n0 members pairwise sharing a coordinate in some dimension.
    JFamily { n0: usize, d: usize },
    /// The family forcing the extremal function to k * n^r.
    Pkr { d: usize, k: usize, r: usize },
    /// Corner-block pattern with its single-flip extension family.
    Bdr {
        d: usize,
        r: usize,
        /// Print the corner pattern instead of the extension family.
        #[arg(long)]
        corner: bool,
    },
    /// Semisaturation witness for a family at exponent k and size n.
    SsatWitness { family: PathBuf, k: usize, n: usize },
    /// Canonical pattern with semisaturation exponent k.
    SsatPattern { d: usize, k: usize },
}

#[derive(Subcommand)]
enum TransformCommand {
    /// Duplicate coordinate dim onto a new axis.
    Replicate {
        pattern: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Move a bottom 1-entry into a fresh bottom layer.
    Lower {
        pattern: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Coordinates of the entry, comma separated.
        #[arg(long, value_delimiter = ',')]
        at: Vec<usize>,
    },
    /// Move a top 1-entry into a fresh top layer.
    Lift {
        pattern: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_delimiter = ',')]
        at: Vec<usize>,
    },
    /// Insert an all-zero layer after a position (0 = front).
    InsertLayer {
        pattern: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        pos: usize,
    },
}

#[derive(Subcommand)]
enum FilterCommand {
    /// Necessary conditions for minimal superlinearity, with the count bound.
    Minnonlin { pattern: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(CoreError::EnumerationGuard(_)) = cause.downcast_ref::<CoreError>() {
            return EXIT_GUARD;
        }
    }
    EXIT_USAGE
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Contains { host, family } => run_contains(cli, host, family),
        Command::Ex { family, n } => run_search(cli, "ex", family, *n),
        Command::Sat { family, n } => run_search(cli, "sat", family, *n),
        Command::Ssat { family, n } => run_search(cli, "ssat", family, *n),
        Command::ClassifySsat { family } => run_classify(cli, family),
        Command::DecideO1 { family, depth } => run_decide(cli, family, *depth),
        Command::Gen { what } => run_gen(what),
        Command::Transform { what } => run_transform(what),
        Command::Filters { what } => run_filters(cli, what),
        Command::Verify { suite } => run_verify(cli, suite),
        Command::Report => run_report(cli),
    }
}

fn search_config(cli: &Cli, function: &str) -> SearchConfig {
    let mut cfg =
        if function == "ex" { SearchConfig::for_ex() } else { SearchConfig::for_minima() };
    if let Some(c) = cli.max_cells {
        cfg.max_cells = c;
    }
    if let Some(n) = cli.max_nodes {
        cfg.max_nodes = n;
    }
    cfg
}

// A lone 1 in a 1x...x1 shape embeds into every nonzero host, which makes
// the search answers correct but vacuous; say so once on stderr.
fn warn_if_degenerate(fam: &Family) {
    if fam.patterns().iter().any(|p| p.cells() == 1 && p.weight() == 1) {
        eprintln!(
            "warning: a family member is a single 1 in a unit shape; every nonzero \
             host contains it, so the extremal value is 0 and saturation is trivial"
        );
    }
}

fn run_search(cli: &Cli, function: &'static str, family: &PathBuf, n: usize) -> anyhow::Result<u8> {
    let fam = load_family(family)?;
    warn_if_degenerate(&fam);
    let hash = family_hash(&fam);
    let cache = Cache::resolve(cli.cache_dir.clone());
    if let Some(rec) = cache.lookup(&hash, function, n) {
        print_record(cli.format, &rec);
        return Ok(EXIT_OK);
    }
    let cfg = search_config(cli, function);
    let out = match function {
        "ex" => ex_exact_with(&fam, n, &cfg)?,
        "sat" => sat_exact_with(&fam, n, &cfg)?,
        _ => ssat_exact_with(&fam, n, &cfg)?,
    };
    let rec = ResultRecord::from_outcome(&hash, function, n, &out);
    cache.store(&rec)?;
    print_record(cli.format, &rec);
    Ok(if rec.exact { EXIT_OK } else { EXIT_GUARD })
}

fn print_record(format: Format, rec: &ResultRecord) {
    match format {
        Format::Text => {
            let status = if rec.no_solution {
                "no solution"
            } else if rec.exact {
                "exact"
            } else {
                "inexact, guard tripped"
            };
            println!("{} n={}: {} ({status})", rec.function, rec.n, rec.value);
            println!("witness weight: {}", rec.witness_weight());
            println!("nodes: {}", rec.nodes);
            println!("family: {}", rec.family_hash);
            if let Some(w) = &rec.witness {
                if let Ok(t) = pattern_from_json(w) {
                    println!("witness:");
                    print!("{}", serialize_pattern(&t));
                }
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(rec).expect("record serializes"));
        }
        Format::Csv => {
            println!("{}", ResultRecord::CSV_HEADER);
            println!("{}", rec.csv_row());
        }
    }
}

fn run_contains(cli: &Cli, host: &PathBuf, family: &PathBuf) -> anyhow::Result<u8> {
    let h = load_pattern(host)?;
    let fam = load_family(family)?;
    let hit = contains_any(&h, &fam)?;
    match cli.format {
        Format::Text => match &hit {
            Some((idx, emb)) => {
                println!("contains: member {idx}");
                for (i, m) in emb.maps().iter().enumerate() {
                    let picks: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                    println!("dim {}: {}", i + 1, picks.join(" "));
                }
            }
            None => println!("avoids: no member embeds"),
        },
        Format::Json => {
            let body = match &hit {
                Some((idx, emb)) => serde_json::json!({
                    "contains": true,
                    "member": idx,
                    "maps": emb.maps(),
                }),
                None => serde_json::json!({ "contains": false }),
            };
            println!("{}", serde_json::to_string_pretty(&body)?);
        }
        Format::Csv => {
            println!("contains,member");
            match &hit {
                Some((idx, _)) => println!("true,{idx}"),
                None => println!("false,"),
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_classify(cli: &Cli, family: &PathBuf) -> anyhow::Result<u8> {
    let fam = load_family(family)?;
    let c = ssat_exponent(&fam)?;
    match cli.format {
        Format::Text => {
            println!("semisaturation exponent: {}", c.exponent);
            println!(
                "property (i) at the exponent: {}",
                if c.property_i.holds { "holds" } else { "fails" }
            );
            println!(
                "property (ii) at the exponent: {}",
                if c.property_ii.holds { "holds" } else { "fails" }
            );
            println!("levels ruled out below: {}", c.evidence.len());
        }
        Format::Json => {
            let body = serde_json::json!({
                "exponent": c.exponent,
                "property_i": c.property_i.holds,
                "property_ii": c.property_ii.holds,
                "levels_ruled_out": c.evidence.len(),
            });
            println!("{}", serde_json::to_string_pretty(&body)?);
        }
        Format::Csv => {
            println!("exponent,property_i,property_ii");
            println!("{},{},{}", c.exponent, c.property_i.holds, c.property_ii.holds);
        }
    }
    Ok(EXIT_OK)
}

fn run_decide(cli: &Cli, family: &PathBuf, depth: usize) -> anyhow::Result<u8> {
    let fam = load_family(family)?;
    let verdict = ex_o1_decide(&fam, depth)?;
    match &verdict {
        O1Verdict::BoundedO1 { n0, bound } => {
            match cli.format {
                Format::Text => println!("bounded: every depth-{n0} diagonal and shared-coordinate member embeds a pattern; extremal values never exceed {bound}"),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "status": "bounded-o1", "n0": n0, "bound": bound.to_string(),
                    }))?
                ),
                Format::Csv => {
                    println!("status,n0,bound");
                    println!("bounded-o1,{n0},{bound}");
                }
            }
            Ok(EXIT_OK)
        }
        O1Verdict::NotO1AtDepth { n0_max, avoiders } => {
            match cli.format {
                Format::Text => {
                    println!("not bounded through depth {n0_max}: every depth has an avoiding member");
                    for (n0, m) in avoiders {
                        println!("depth {n0}: avoider of weight {}", m.weight());
                    }
                }
                Format::Json => {
                    let list: Vec<_> = avoiders
                        .iter()
                        .map(|(n0, m)| {
                            serde_json::json!({ "depth": n0, "avoider": pattern_to_json(m) })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "status": "not-o1", "depth": n0_max, "avoiders": list,
                        }))?
                    );
                }
                Format::Csv => {
                    println!("status,depth,avoider_weight");
                    for (n0, m) in avoiders {
                        println!("not-o1,{n0},{}", m.weight());
                    }
                }
            }
            Ok(EXIT_OK)
        }
        O1Verdict::Aborted { completed, reason, .. } => {
            eprintln!("aborted after depth {completed}: {reason}");
            Ok(EXIT_GUARD)
        }
    }
}

fn emit_pattern(t: &Tensor01) {
    print!("{}", serialize_pattern(t));
}

fn emit_family(fam: &Family) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(&family_to_json(fam))?);
    Ok(())
}

fn run_gen(what: &GenCommand) -> anyhow::Result<u8> {
    match what {
        GenCommand::IdentityEquivalents { n0, d } => emit_family(&identity_equivalents(*n0, *d)?)?,
        GenCommand::JFamily { n0, d } => {
            let members: Vec<Tensor01> = j_family(*n0, *d)?.collect();
            emit_family(&Family::new(members)?)?;
        }
        GenCommand::Pkr { d, k, r } => emit_family(&family_pkr(*d, *k, *r)?)?,
        GenCommand::Bdr { d, r, corner } => {
            let (block, fam) = family_bdr(*d, *r)?;
            if *corner {
                emit_pattern(&block);
            } else {
                emit_family(&fam)?;
            }
        }
        GenCommand::SsatWitness { family, k, n } => {
            let fam = load_family(family)?;
            emit_pattern(&ssat_witness(&fam, *k, *n)?);
        }
        GenCommand::SsatPattern { d, k } => emit_pattern(&ssat_exponent_pattern(*d, *k)?),
    }
    Ok(EXIT_OK)
}

fn run_transform(what: &TransformCommand) -> anyhow::Result<u8> {
    let t = match what {
        TransformCommand::Replicate { pattern, dim } => {
            replicate_dim(&load_pattern(pattern)?, *dim)?
        }
        TransformCommand::Lower { pattern, dim, at } => {
            lower_entry(&load_pattern(pattern)?, *dim, at)?
        }
        TransformCommand::Lift { pattern, dim, at } => lift_entry(&load_pattern(pattern)?, *dim, at)?,
        TransformCommand::InsertLayer { pattern, dim, pos } => {
            insert_empty_layer(&load_pattern(pattern)?, *dim, *pos)?
        }
    };
    emit_pattern(&t);
    Ok(EXIT_OK)
}

fn run_filters(cli: &Cli, what: &FilterCommand) -> anyhow::Result<u8> {
    let FilterCommand::Minnonlin { pattern } = what;
    let p = load_pattern(pattern)?;
    let rep = minnonlin_filters(&p)?;
    let count_bound = minnonlin_count_bound(p.dims())?;
    match cli.format {
        Format::Text => {
            println!(
                "largest dimension within bound {}: {}",
                rep.dims_bound,
                verdict(rep.dims_ok)
            );
            let exception = if rep.weight_exception { " (all-ones exception)" } else { "" };
            println!(
                "weight within bound {}{exception}: {}",
                rep.weight_bound,
                verdict(rep.weight_ok)
            );
            match rep.alternation_pair {
                Some((a, b)) => println!(
                    "projections free of length-4 alternations: fail (dims {a},{b})"
                ),
                None => println!("projections free of length-4 alternations: pass"),
            }
            match rep.boundary_layer {
                Some((i, side)) => {
                    println!("every boundary layer occupied: fail (dim {i}, {side:?} side)")
                }
                None => println!("every boundary layer occupied: pass"),
            }
            println!("passes all filters: {}", rep.passes());
            println!("candidates with these dims: at most {count_bound}");
        }
        Format::Json => {
            let body = serde_json::json!({
                "dims_ok": rep.dims_ok,
                "dims_bound": rep.dims_bound,
                "weight_ok": rep.weight_ok,
                "weight_bound": rep.weight_bound,
                "weight_exception": rep.weight_exception,
                "alternation_ok": rep.alternation_ok,
                "boundary_ok": rep.boundary_ok,
                "passes": rep.passes(),
                "count_bound": count_bound.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&body)?);
        }
        Format::Csv => {
            println!("dims_ok,weight_ok,alternation_ok,boundary_ok,passes,count_bound");
            println!(
                "{},{},{},{},{},{count_bound}",
                rep.dims_ok,
                rep.weight_ok,
                rep.alternation_ok,
                rep.boundary_ok,
                rep.passes()
            );
        }
    }
    Ok(EXIT_OK)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn run_verify(cli: &Cli, suite: &str) -> anyhow::Result<u8> {
    let Some(name) = SuiteName::parse(suite) else {
        anyhow::bail!(
            "unknown suite '{suite}' (expected inequalities, exact-values, ssat, decisions, all)"
        );
    };
    let opts =
        SuiteOptions { workers: cli.workers.max(1), seed: cli.seed.unwrap_or(DEFAULT_SEED) };
    let report = run_suite(name, &opts)?;
    match cli.format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => print!("{}", report.render_json()),
        Format::Csv => print!("{}", report.render_csv()),
    }
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_VERIFY_FAIL })
}

fn run_report(cli: &Cli) -> anyhow::Result<u8> {
    let cache = Cache::resolve(cli.cache_dir.clone());
    if cache.dir().is_none() {
        anyhow::bail!("report needs --cache-dir or MPAT_CACHE_DIR");
    }
    let records = cache.scan()?;
    match cli.format {
        Format::Text => {
            println!("{} cached results", records.len());
            for r in &records {
                let short = &r.family_hash[..12.min(r.family_hash.len())];
                println!(
                    "{}({short}) n={}: {} [{}]",
                    r.function,
                    r.n,
                    r.value,
                    if r.exact { "exact" } else { "inexact" }
                );
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&records)?),
        Format::Csv => {
            println!("{}", ResultRecord::CSV_HEADER);
            for r in &records {
                println!("{}", r.csv_row());
            }
        }
    }
    Ok(EXIT_OK)
}
