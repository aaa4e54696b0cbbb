use bv::report::{csv_field, Format};
use bv::{
    run_analyze, run_fixtures, run_scan, run_scan_no_div_3, run_structures, run_verify, CliError,
    VerifyParams,
};
use beauville_core::BuildOptions;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bv", version, about = "Finite-group generating-pair analysis")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker thread count (default: available parallelism). Results are
    /// identical regardless.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest group order any constructor may produce.
    #[arg(long, global = true, default_value_t = 5000)]
    max_order: usize,
    /// Coset limit for presented-group enumeration.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_cosets: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a group from a spec and report its dimension.
    Analyze { spec: String },
    /// List trivially-intersecting carrier families with classifications.
    Structures {
        spec: String,
        /// Only families realizing d.
        #[arg(long, conflicts_with = "all")]
        minimal: bool,
        /// Also report families one carrier larger than d (the default).
        #[arg(long)]
        all: bool,
        /// Maximum number of families to report.
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Run a bundled fixture suite.
    Fixtures {
        #[arg(long, default_value = "paper-tables")]
        suite: String,
    },
    /// Analyze every member of a parametrized family.
    Scan {
        #[arg(long, required_unless_present = "no_div_3")]
        family: Option<String>,
        /// Parameter values: `a..b` (inclusive) or `v1,v2,...`.
        #[arg(long, required_unless_present = "no_div_3")]
        range: Option<String>,
        /// Sweep bundled members with order coprime to 3, flagging d > 2.
        #[arg(long)]
        no_div_3: bool,
    },
    /// Run one of the named checks.
    Verify {
        /// 1, 2, 3, 8, cor1, lemma2b or family-d4.
        #[arg(long)]
        thm: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        /// Order bound for sweep checks (2 and cor1).
        #[arg(long = "bound")]
        bound: Option<u64>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        params: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once at startup");
    }
    let opts = BuildOptions {
        max_order: cli.max_order,
        max_cosets: cli.max_cosets,
    };
    match dispatch(&cli, &opts) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn dispatch(cli: &Cli, opts: &BuildOptions) -> Result<i32, CliError> {
    match &cli.cmd {
        Cmd::Analyze { spec } => {
            let report = run_analyze(spec, opts, true)?;
            match cli.format {
                Format::Json => println!("{}", json(&report)),
                Format::Csv => print!("{}", report.to_csv()),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(0)
        }
        Cmd::Structures {
            spec,
            minimal,
            all: _,
            limit,
        } => {
            let report = run_structures(spec, *minimal, *limit, opts)?;
            match cli.format {
                Format::Json => println!("{}", json(&report)),
                Format::Csv => {
                    println!("spec,order,d,classification,pairs");
                    for f in &report.families {
                        let pairs = f
                            .pairs
                            .iter()
                            .map(|p| format!("({}, {})", p.x, p.y))
                            .collect::<Vec<_>>()
                            .join(" ");
                        println!(
                            "{},{},{},{},{}",
                            csv_field(&report.spec),
                            report.order,
                            report.d,
                            f.classification,
                            csv_field(&pairs)
                        );
                    }
                }
                Format::Text => {
                    println!(
                        "spec: {}  order: {}  distinct carriers: {}  d = {}",
                        report.spec, report.order, report.sigma_count, report.d
                    );
                    if let Some(b) = &report.blocking_element {
                        println!("no structures: element {b} lies in every carrier");
                    }
                    for (i, f) in report.families.iter().enumerate() {
                        println!(
                            "family {}: {} carriers {:?} [{}]",
                            i + 1,
                            f.pairs.len(),
                            f.carrier_sizes,
                            f.classification
                        );
                        for p in &f.pairs {
                            println!("  x = {}, y = {}, xy = {}", p.x, p.y, p.z);
                        }
                    }
                }
            }
            Ok(0)
        }
        Cmd::Fixtures { suite } => {
            let report = run_fixtures(suite, opts)?;
            match cli.format {
                Format::Json => println!("{}", json(&report)),
                Format::Csv => {
                    println!("expected_d,expected_order,spec,order,d,pass");
                    for r in &report.rows {
                        println!(
                            "{},{},{},{},{},{}",
                            r.expected_d,
                            r.expected_order,
                            csv_field(&r.spec),
                            r.order.map_or(String::new(), |o| o.to_string()),
                            r.d.map_or(String::new(), |d| d.to_string()),
                            r.pass
                        );
                    }
                }
                Format::Text => {
                    for r in &report.rows {
                        let status = if r.pass { "ok  " } else { "FAIL" };
                        match (r.order, r.d) {
                            (Some(o), Some(d)) => println!(
                                "{status} d={d} (expected {}) order={o} (expected {})  {}",
                                r.expected_d, r.expected_order, r.provenance
                            ),
                            _ => println!(
                                "{status} error: {}  {}",
                                r.error.as_deref().unwrap_or("?"),
                                r.provenance
                            ),
                        }
                    }
                    println!("{} rows, {} failures", report.rows.len(), report.failures);
                }
            }
            Ok(if report.failures == 0 { 0 } else { 1 })
        }
        Cmd::Scan {
            family,
            range,
            no_div_3,
        } => {
            let report = if *no_div_3 {
                run_scan_no_div_3(1000, opts)?
            } else {
                let family = family.as_deref().expect("clap enforces --family");
                let params = bv::parse_range(range.as_deref().expect("clap enforces --range"))?;
                run_scan(family, &params, opts)?
            };
            match cli.format {
                Format::Json => println!("{}", json(&report)),
                Format::Csv => {
                    println!("family,param,spec,order,d,error");
                    for e in &report.entries {
                        println!(
                            "{},{},{},{},{},{}",
                            report.family,
                            e.param,
                            csv_field(&e.spec),
                            e.order.map_or(String::new(), |o| o.to_string()),
                            e.d.map_or(String::new(), |d| d.to_string()),
                            csv_field(e.error.as_deref().unwrap_or(""))
                        );
                    }
                }
                Format::Text => {
                    for e in &report.entries {
                        match (e.order, e.d) {
                            (Some(o), Some(d)) => {
                                println!("param {}: order {o}, d = {d}  [{}]", e.param, e.spec)
                            }
                            _ => println!(
                                "param {}: skipped ({})",
                                e.param,
                                e.error.as_deref().unwrap_or("?")
                            ),
                        }
                    }
                    println!(
                        "{} members, {} with d > 2",
                        report.entries.len(),
                        report.hits_above_2
                    );
                }
            }
            Ok(0)
        }
        Cmd::Verify {
            thm,
            p,
            k,
            g,
            h,
            spec,
            bound,
            family,
            params,
        } => {
            let vp = VerifyParams {
                p: *p,
                k: *k,
                g: g.clone(),
                h: h.clone(),
                spec: spec.clone(),
                max_order: *bound,
                family: family.clone(),
                params: params.clone(),
            };
            let report = run_verify(thm, &vp, opts)?;
            match cli.format {
                Format::Json => println!("{}", json(&report)),
                Format::Csv | Format::Text => {
                    println!(
                        "check {}: {}",
                        report.check,
                        if report.pass { "pass" } else { "FAIL" }
                    );
                    println!("{}", serde_json::to_string_pretty(&report.detail).unwrap());
                }
            }
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}
