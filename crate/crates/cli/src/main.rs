//! Command-line front end.
//!
//! Exit codes: 0 success or "yes", 1 "no" from a query command, 2 bad input
//! (including unknown flags), 3 an internal consistency check failed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use leavitt::decomp::{
    compatible_count, condition_a, condition_b, decomposability_routes, naive_an_check, satisfies_p,
};
use leavitt::document::ingest_path;
use leavitt::dot::graph_dot;
use leavitt::expr::eval_expr;
use leavitt::lattice::{hasse_dot, PairLattice};
use leavitt::report::analyze;
use leavitt::scalar::{is_prime, Fp, Scalar};
use leavitt::selfcheck::run_all;
use leavitt::steinberg::{ideal_membership, split_element, AlgebraElement};
use leavitt::topology::{complement_pair, is_clopen};
use leavitt::{Config, Error, Graph, HSPair, Rational};

#[derive(Parser)]
#[command(
    name = "leavitt",
    version,
    about = "Ideals, clopen invariant sets and decompositions of graph algebras"
)]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Caps {
    /// Largest vertex count accepted for subset enumeration.
    #[arg(long, global = true)]
    vertex_cap: Option<usize>,
    /// Largest breaking-vertex set accepted when enumerating pairs.
    #[arg(long, global = true)]
    breaking_cap: Option<usize>,
    /// Edge indices sampled from each ω bundle.
    #[arg(long, global = true)]
    omega_samples: Option<u64>,
    /// Sample paths listed per compatible-path count.
    #[arg(long, global = true)]
    sample_cap: Option<usize>,
}

impl Caps {
    fn config(&self) -> Config {
        let d = Config::default();
        Config {
            vertex_cap: self.vertex_cap.unwrap_or(d.vertex_cap),
            breaking_cap: self.breaking_cap.unwrap_or(d.breaking_cap),
            omega_samples: self.omega_samples.unwrap_or(d.omega_samples),
            sample_cap: self.sample_cap.unwrap_or(d.sample_cap),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis report.
    Analyze {
        file: PathBuf,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// The lattice of admissible pairs.
    Lattice {
        file: PathBuf,
        /// Print the Hasse diagram as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// The graph itself as DOT.
    Dot { file: PathBuf },
    /// Whether U_{H,S} is clopen. Exit 1 if it is not.
    Clopen {
        file: PathBuf,
        #[arg(long = "H", value_name = "VERTICES")]
        h: String,
        #[arg(long = "S", value_name = "VERTICES", default_value = "")]
        s: String,
    },
    /// Whether the algebra splits as a direct sum. Exit 1 if it does not.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        explain: bool,
    },
    /// Compatible-path counts for a pair of disjoint hereditary saturated
    /// sets. Exit 1 if the counting condition fails.
    Compatible {
        file: PathBuf,
        #[arg(long = "H1", value_name = "VERTICES")]
        h1: String,
        #[arg(long = "H2", value_name = "VERTICES")]
        h2: String,
    },
    /// Evaluate an expression in the algebra. Exit 1 if an ideal is given
    /// and the element is not in it.
    Algebra {
        file: PathBuf,
        #[arg(long)]
        expr: String,
        /// The set used by `vh(v)` terms.
        #[arg(long = "H", value_name = "VERTICES")]
        h: Option<String>,
        #[arg(long = "ideal-H", value_name = "VERTICES")]
        ideal_h: Option<String>,
        #[arg(
            long = "ideal-S",
            value_name = "VERTICES",
            default_value = "",
            requires = "ideal_h"
        )]
        ideal_s: String,
        /// `q` for the rationals or `p:<prime>` for a prime field.
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Run every internal consistency suite. Exit 3 on any failure.
    Selfcheck {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Primes accepted by `--field p:<prime>`.
const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 101, 65537, 2147483647];

enum Outcome {
    Yes,
    No,
    Broken,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = cli.caps.config();
    match run(cli.command, &config) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Ok(Outcome::Broken) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn verdict(b: bool) -> Outcome {
    if b {
        Outcome::Yes
    } else {
        Outcome::No
    }
}

fn run(command: Command, config: &Config) -> leavitt::Result<Outcome> {
    match command {
        Command::Analyze { file, json, .. } => {
            let g = ingest_path(&file)?;
            let report = analyze(&g, config)?;
            if json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(verdict(true))
        }
        Command::Lattice { file, dot } => {
            let g = ingest_path(&file)?;
            let lattice = PairLattice::build(&g, config)?;
            if dot {
                print!("{}", hasse_dot(&g, &lattice));
            } else {
                for (i, p) in lattice.elements.iter().enumerate() {
                    println!("{i}: {}", p.to_text(&g));
                }
                for (a, b) in lattice.covers() {
                    println!("{a} < {b}");
                }
            }
            Ok(verdict(true))
        }
        Command::Dot { file } => {
            let g = ingest_path(&file)?;
            print!("{}", graph_dot(&g));
            Ok(verdict(true))
        }
        Command::Clopen { file, h, s } => {
            let g = ingest_path(&file)?;
            let pair = HSPair::new(&g, g.parse_vertex_set(&h)?, g.parse_vertex_set(&s)?)?;
            let v = is_clopen(&g, &pair)?;
            println!("{}: {}", pair.to_text(&g), v.describe(&g));
            if v.clopen {
                println!("complement: {}", complement_pair(&g, &pair)?.to_text(&g));
            }
            Ok(verdict(v.clopen))
        }
        Command::Decompose { file, explain } => decompose(&ingest_path(&file)?, config, explain),
        Command::Compatible { file, h1, h2 } => {
            let g = ingest_path(&file)?;
            compatible(&g, config, &h1, &h2)
        }
        Command::Algebra {
            file,
            expr,
            h,
            ideal_h,
            ideal_s,
            field,
        } => {
            let g = ingest_path(&file)?;
            let h = h.map(|t| g.parse_vertex_set(&t)).transpose()?;
            let ideal = match ideal_h {
                Some(ih) => Some(HSPair::new(
                    &g,
                    g.parse_vertex_set(&ih)?,
                    g.parse_vertex_set(&ideal_s)?,
                )?),
                None => None,
            };
            let job = AlgebraJob {
                g: &g,
                expr: &expr,
                h: h.as_ref(),
                ideal: ideal.as_ref(),
            };
            match field.as_str() {
                "q" | "Q" => job.run::<Rational>(),
                other => {
                    let p = other
                        .strip_prefix("p:")
                        .and_then(|n| n.parse::<u64>().ok())
                        .ok_or_else(|| {
                            Error::Input(format!("field must be q or p:<prime>, got {other}"))
                        })?;
                    dispatch_prime(&job, p)
                }
            }
        }
        Command::Selfcheck { file, seed } => {
            let g = ingest_path(&file)?;
            let report = run_all(&g, config, seed)?;
            for (name, c) in &report.suites {
                println!(
                    "{name}: {} ({} cases)",
                    if c.passed { "ok" } else { "FAILED" },
                    c.cases
                );
                for f in &c.failures {
                    println!("  {f}");
                }
            }
            Ok(if report.passed() {
                Outcome::Yes
            } else {
                Outcome::Broken
            })
        }
    }
}

fn decompose(g: &Graph, config: &Config, explain: bool) -> leavitt::Result<Outcome> {
    let routes = decomposability_routes(g, config)?;
    if !routes.agree() {
        return Err(Error::Invariant(format!(
            "criteria disagree: conditions {}, clopen pair {}, compatible paths {}",
            routes.conditions.decomposable, routes.clopen.decomposable, routes.compatible.holds
        )));
    }
    match &routes.conditions.witness {
        Some(w) => println!(
            "decomposable: H={} S={}, complement H={} S={}",
            g.format_set(w.pair.h()),
            g.format_set(w.pair.s()),
            g.format_set(w.complement.h()),
            g.format_set(w.complement.s())
        ),
        None => println!("not decomposable"),
    }
    if explain {
        println!("conditions: {}", yes_no(routes.conditions.decomposable));
        println!("clopen pair: {}", yes_no(routes.clopen.decomposable));
        if let Some(w) = &routes.clopen.witness {
            println!(
                "  {} with complement {}",
                w.pair.to_text(g),
                w.complement.to_text(g)
            );
        }
        print!("compatible paths: {}", yes_no(routes.compatible.holds));
        if let Some((a, b)) = &routes.compatible.witness {
            print!(", H1={} H2={}", g.format_set(a), g.format_set(b));
        }
        println!();
        for h in g.enumerate_hs(config.vertex_cap)? {
            if h.is_empty() || h.len() == g.vertex_count() {
                continue;
            }
            let a = condition_a(g, &h)?;
            let b = condition_b(g, &h)?;
            let mut line = format!("H={}:", g.format_set(&h));
            match &a.witness {
                None => line.push_str(" (a) holds"),
                Some(c) => line.push_str(&format!(" (a) fails, cycle {}", c.to_text(g))),
            }
            match b.witness {
                None => line.push_str(", (b) holds"),
                Some(v) => line.push_str(&format!(", (b) fails, vertex {}", g.vertex_name(v))),
            }
            println!("{line}");
        }
    }
    Ok(verdict(routes.conditions.decomposable))
}

fn compatible(g: &Graph, config: &Config, h1: &str, h2: &str) -> leavitt::Result<Outcome> {
    let h1 = g.parse_vertex_set(h1)?;
    let h2 = g.parse_vertex_set(h2)?;
    let naive = naive_an_check(g, &h1, &h2)?;
    let mut ok = true;
    for v in g.all_vertices().difference(&h1.union(&h2)).iter() {
        let c1 = compatible_count(g, v, &h1, config)?;
        let c2 = compatible_count(g, v, &h2, config)?;
        let total = c1.count.clone() + c2.count.clone();
        let good = total.is_finite() && total != leavitt::Cardinal::from_u64(0);
        ok &= good;
        println!(
            "{}: {} + {} = {}{}",
            g.vertex_name(v),
            c1.count,
            c2.count,
            total,
            if good { "" } else { "  (fails)" }
        );
        for p in c1.samples.iter().chain(&c2.samples) {
            println!("  {}", p.to_text(g));
        }
        for (h, name) in [(&h1, "H1"), (&h2, "H2")] {
            if satisfies_p(g, v, h)? {
                println!("  infinitely many {name}-compatible paths");
            }
        }
    }
    println!(
        "compatible-path condition: {}",
        if ok { "holds" } else { "fails" }
    );
    match naive.witness {
        None => println!("path counting into H1 ∪ H2: holds"),
        Some(v) => println!("path counting into H1 ∪ H2: fails at {}", g.vertex_name(v)),
    }
    Ok(verdict(ok))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct AlgebraJob<'a> {
    g: &'a Graph,
    expr: &'a str,
    h: Option<&'a leavitt::VertexSet>,
    ideal: Option<&'a HSPair>,
}

impl AlgebraJob<'_> {
    fn run<K: Scalar>(&self) -> leavitt::Result<Outcome> {
        let g = self.g;
        let x: AlgebraElement<K> = eval_expr(g, self.expr, self.h)?;
        let n = x.normalize(g);
        if n.is_empty() {
            println!("zero");
        } else {
            println!("{}", n.to_text(g));
        }
        let Some(pair) = self.ideal else {
            return Ok(Outcome::Yes);
        };
        let inside = ideal_membership(g, &x, pair)?;
        println!("in the ideal of {}: {}", pair.to_text(g), yes_no(inside));
        if is_clopen(g, pair)?.clopen {
            let (a, b) = split_element(g, &x, pair)?;
            println!(
                "part over {}: {}",
                pair.to_text(g),
                a.normalize(g).to_text(g)
            );
            println!(
                "part over {}: {}",
                complement_pair(g, pair)?.to_text(g),
                b.normalize(g).to_text(g)
            );
        }
        Ok(verdict(inside))
    }
}

fn dispatch_prime(job: &AlgebraJob<'_>, p: u64) -> leavitt::Result<Outcome> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    match p {
        2 => job.run::<Fp<2>>(),
        3 => job.run::<Fp<3>>(),
        5 => job.run::<Fp<5>>(),
        7 => job.run::<Fp<7>>(),
        11 => job.run::<Fp<11>>(),
        13 => job.run::<Fp<13>>(),
        17 => job.run::<Fp<17>>(),
        19 => job.run::<Fp<19>>(),
        23 => job.run::<Fp<23>>(),
        101 => job.run::<Fp<101>>(),
        65537 => job.run::<Fp<65537>>(),
        2147483647 => job.run::<Fp<2147483647>>(),
        _ => Err(Error::Input(format!(
            "prime {p} is not supported; choose one of {}",
            PRIMES.map(|q| q.to_string()).join(", ")
        ))),
    }
}
