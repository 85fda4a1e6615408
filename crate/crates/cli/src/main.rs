use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use skdv_algebra::qi;
use skdv_cli::commands::{self, Output};
use skdv_cli::config::parse_q;
use skdv_cli::{overall, run_all, FileConfig, Settings, Target};
use skdv_core::{CoreError, Exec};

#[derive(Parser)]
#[command(name = "skdv", version, about = "Exact checks for the reduced lattice super-KdV map")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Parameter h as an exact fraction p/q.
    #[arg(long, global = true)]
    h: Option<String>,
    /// Number of iterates.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Random lines per degree measurement.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated seeds for multi-seed checks.
    #[arg(long, global = true, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// TOML file with default settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Keep h transcendental in tower and finder computations (slow).
    #[arg(long, global = true)]
    generic_h: bool,
    /// Disable the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact orbit with the invariants at every step.
    Iterate {
        /// Starting point x0,x1,x2,x3.
        #[arg(long, allow_hyphen_values = true, default_value = "0,0,2,0")]
        point: String,
    },
    /// Bidegrees of the iterates against the matrix prediction.
    Degrees,
    /// Degrees of the three-dimensional reduction.
    PsiDegrees {
        /// Value of I2; random when omitted.
        #[arg(long, allow_hyphen_values = true)]
        i2: Option<String>,
    },
    /// The pull-back matrix on the Picard lattice.
    PicardMatrix {
        /// Use the published rows instead of computing them.
        #[arg(long)]
        published: bool,
    },
    /// Characteristic polynomial, Jordan form and growth class.
    Growth {
        /// Compute the rows on the tower instead of using the published ones.
        #[arg(long)]
        computed: bool,
    },
    /// Runs verification targets; all of them when none are named.
    Verify {
        #[arg(value_enum)]
        targets: Vec<Target>,
    },
    /// Laurent orders of a singular germ along the orbit.
    TrackSingularity {
        /// confined, cyclic, anti-confined, cyclic-p2p2, cyclic-start-p2p2, anti-confined-start-p2p2
        germ: String,
    },
    /// Orders along E1..E17 and divisor classes.
    Multiplicities {
        /// Polynomial in x0..x3 and h; the five standard hypersurfaces when omitted.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// Bidegree a,b of the polynomial.
        #[arg(long, default_value = "2,2")]
        bidegree: String,
    },
    /// Recovers the invariants from a divisor class.
    FindInvariants {
        /// i1, i2 or a class such as "2Ha + 2Hb - 3E11 - E{1,2}".
        #[arg(long, default_value = "i2", allow_hyphen_values = true)]
        class: String,
        /// Also run the total-degree ansatz and raised orders.
        #[arg(long)]
        audit: bool,
    },
}

fn settings(g: &Global) -> Result<Settings, CoreError> {
    let mut s = Settings::default();
    if let Some(p) = &g.config {
        s.apply(&FileConfig::load(p)?)?;
    }
    if let Some(h) = &g.h {
        s.h = Some(parse_q(h)?);
    }
    if let Some(n) = g.n {
        s.n_max = n;
        s.psi_n_max = n;
    }
    if let Some(t) = g.trials {
        s.trials = t;
    }
    if let Some(seed) = g.seed {
        s.seed = seed;
    }
    if let Some(seeds) = &g.seeds {
        s.seeds = seeds.clone();
    }
    if g.generic_h {
        s.generic_h = true;
    }
    if g.sequential {
        s.exec = Exec::Sequential;
    }
    Ok(s)
}

fn emit(out: &Output, g: &Global) -> ExitCode {
    if g.json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable report"));
    } else if g.csv {
        match &out.csv {
            Some(c) => print!("{c}"),
            None => {
                eprintln!("this command has no CSV form; use --json");
                return ExitCode::from(2);
            }
        }
    } else {
        print!("{}", out.text);
    }
    ExitCode::from(out.status.exit_code() as u8)
}

fn fail(e: CoreError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        CoreError::Invalid(_) => ExitCode::from(2),
        CoreError::Inconclusive { .. } | CoreError::Precision | CoreError::DegenerateGerm(_) => ExitCode::from(3),
        _ => ExitCode::from(1),
    }
}

fn verify(targets: Vec<Target>, s: &Settings, g: &Global) -> ExitCode {
    let targets = if targets.is_empty() { Target::ALL.to_vec() } else { targets };
    let reports = run_all(&targets, s);
    let status = overall(&reports);
    if g.json {
        let v = serde_json::json!({ "status": status, "seed": s.seed, "version": env!("CARGO_PKG_VERSION"), "reports": reports });
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable report"));
    } else if g.csv {
        println!("target,status,item,expected,got,ok");
        for r in &reports {
            for c in &r.comparisons {
                println!("{},{:?},\"{}\",\"{}\",\"{}\",{}", r.target, r.status, c.item, c.expected, c.got, c.ok);
            }
        }
    } else {
        for r in &reports {
            print!("{}", r.text());
        }
        println!("overall: {}", status.label());
    }
    ExitCode::from(status.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let s = match settings(g) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let out = match cli.command {
        Command::Verify { targets } => return verify(targets, &s, g),
        Command::Iterate { point } => commands::parse_point(&point).map(|p| {
            commands::iterate(p, s.h.clone().unwrap_or_else(|| qi(1)), g.n.unwrap_or(2), &s)
        }),
        Command::Degrees => commands::degrees(&s),
        Command::PsiDegrees { i2 } => i2.as_deref().map(parse_q).transpose().and_then(|c| commands::psi_degrees(c, &s)),
        Command::PicardMatrix { published } => commands::picard_matrix(&s, !published),
        Command::Growth { computed } => commands::growth(&s, computed),
        Command::TrackSingularity { germ } => commands::track_singularity(&germ, &s, g.n),
        Command::Multiplicities { poly, bidegree } => parse_bidegree(&bidegree)
            .and_then(|bd| commands::multiplicities(poly.as_deref().map(|p| (p, bd)), &s)),
        Command::FindInvariants { class, audit } => commands::find_invariants_cmd(&class, audit, &s),
    };
    match out {
        Ok(o) => emit(&o, g),
        Err(e) => fail(e),
    }
}

fn parse_bidegree(s: &str) -> Result<(u32, u32), CoreError> {
    let bad = || CoreError::Invalid(format!("bidegree must be a,b: {s}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}
