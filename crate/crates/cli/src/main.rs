//! `cglab`: exact Chvátal-Gomory cuts, closures and certificates.
//!
//! Exit codes: 0 success, 1 other failure, 2 unreadable input, 3 refuted or
//! negative result, 4 budget exhausted.

mod input;
mod render;
mod reports;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use cglab::arith::{int, parse_rational};
use cglab::certify;
use cglab::cgengine::{self, LatticeBox};
use cglab::diophantine::{self, KRONECKER_BUDGET};
use cglab::{config, hilbert, io, sample, CGCut, ConvexBody, Error, HPolyhedron, Rational};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cglab", version, about = "Exact Chvátal-Gomory cuts and closures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest ambient dimension accepted (overrides CGLAB_DIM_BOUND).
    #[arg(long, global = true)]
    dim_bound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write an SVG picture of the 2-D instance.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = sample::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// The CG cut of a body in one integer direction.
    Cut {
        #[arg(long)]
        body: PathBuf,
        /// Direction, e.g. "-1,-1".
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// CG closure: exact for polyhedra, truncated at the radius otherwise.
    Closure {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        radius: u64,
        /// Use the truncated closure even for polyhedra.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Number of closure rounds until a bounded polyhedron reaches its integer hull.
    Rank {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, default_value_t = 10)]
        budget: usize,
    },
    /// Integer hull from the lattice points of a box.
    Hull {
        #[arg(long)]
        body: PathBuf,
        /// Cube "lo:hi" in every coordinate.
        #[arg(long = "box", default_value = "-10:10", allow_hyphen_values = true)]
        bounds: String,
    },
    /// Hilbert basis of a pointed rational cone.
    Hilbert {
        #[arg(long)]
        body: PathBuf,
    },
    /// Verify a direction family, or search grids up to the radius.
    Certify {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        radius: u64,
        /// JSON list of integer directions to verify instead of searching.
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// A point of Q_F outside the body for the full grid of the radius.
    Nonfg {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        radius: u64,
    },
    /// The rational subspace attached to a quadratic vector.
    Vpi {
        #[arg(long, allow_hyphen_values = true)]
        pi: String,
    },
    /// Integer approximation c − mπ ≈ target with m > n0.
    Kronecker {
        #[arg(long, allow_hyphen_values = true)]
        pi: String,
        /// Defaults to the zero vector.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        #[arg(long, default_value = "1/1000")]
        eps: String,
        #[arg(long, default_value_t = 50)]
        n0: u64,
        #[arg(long, default_value_t = KRONECKER_BUDGET)]
        budget: u64,
        /// Report a convex zero-sum combination of up to this many approximants.
        #[arg(long)]
        zero_sum: Option<usize>,
    },
    /// The cut family built on the face exposed by αx ≤ α₀.
    Facecuts {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha0: String,
        /// JSON list of {"g": [...], "floor": ...}; the zero direction is always included.
        #[arg(long = "G", alias = "g", default_value = "[]")]
        g: String,
        #[arg(long, default_value = "1/10")]
        delta: String,
        #[arg(long, default_value_t = 20)]
        n0: u64,
    },
    /// Reproduce the worked examples (1, 2, 3) or run the closure oracle.
    Examples {
        #[arg(long, default_value = "1")]
        which: String,
    },
    /// Draw a 2-D body with its truncated closure (needs --svg).
    Render {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        radius: u64,
        #[arg(long, default_value = "-1:6,-1:6", allow_hyphen_values = true)]
        window: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Ok,
    Negative,
    Budget,
}

struct Outcome {
    doc: Value,
    table: Option<Vec<Vec<String>>>,
    status: Status,
    picture: Option<Picture>,
}

struct Picture {
    body: ConvexBody,
    cuts: Vec<CGCut>,
    region: Option<HPolyhedron>,
}

impl Outcome {
    fn new(doc: Value) -> Self {
        Self { doc, table: None, status: Status::Ok, picture: None }
    }

    fn table(mut self, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(rows);
        self
    }

    fn status(mut self, s: Status) -> Self {
        self.status = s;
        self
    }

    fn picture(mut self, body: ConvexBody, cuts: Vec<CGCut>, region: Option<HPolyhedron>) -> Self {
        self.picture = Some(Picture { body, cuts, region });
        self
    }
}

fn cut_rows(cuts: &[CGCut]) -> Vec<Vec<String>> {
    cuts.iter().map(|c| c.c.iter().map(ToString::to_string).chain([c.rhs.to_string()]).collect()).collect()
}

fn poly_rows(p: &HPolyhedron) -> Vec<Vec<String>> {
    p.rows().map(|(a, b)| a.iter().chain([b]).map(cglab::arith::format_rational).collect()).collect()
}

fn default_window() -> [(Rational, Rational); 2] {
    [(int(-1), int(6)), (int(-1), int(6))]
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if let Some(b) = cli.dim_bound {
        config::set_dim_bound(b);
    }
    Ok(match &cli.command {
        Command::Cut { body, dir } => {
            let k = input::body(body)?;
            let c = input::ints(dir)?;
            let sup = k.support(&c)?;
            let cut = cgengine::cg_cut(&k, &c)?;
            let doc = io::document(
                "cut",
                json!({ "direction": io::int_vec(&c), "support": io::ext(&sup.value), "cut": cut.as_ref().map(io::cut) }),
            );
            let cuts: Vec<CGCut> = cut.into_iter().collect();
            Outcome::new(doc).table(cut_rows(&cuts)).picture(k, cuts, None)
        }
        Command::Closure { body, radius, bruteforce } => {
            let k = input::body(body)?;
            let report = match (&k, bruteforce) {
                (ConvexBody::RationalPoly(p), false) => cgengine::schrijver_closure(p)?,
                _ => cgengine::closure_bruteforce(&k, *radius as usize)?,
            };
            Outcome::new(io::closure(&report)).table(cut_rows(&report.cuts)).picture(
                k,
                report.cuts.clone(),
                Some(report.polyhedron.clone()),
            )
        }
        Command::Rank { body, budget } => {
            let ConvexBody::RationalPoly(p) = input::body(body)? else {
                anyhow::bail!(Error::Precondition("rank needs a polyhedron".into()));
            };
            match cgengine::chvatal_rank(&p, *budget) {
                Ok(r) => Outcome::new(io::rank(&r)),
                Err(Error::Exceeded(n)) => {
                    Outcome::new(io::document("rank", json!({ "rank": null, "exceeded": n }))).status(Status::Budget)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Hull { body, bounds } => {
            let k = input::body(body)?;
            let (lo, hi) = input::range(bounds)?;
            let n = k.dim();
            let bx = LatticeBox { lower: vec![lo; n], upper: vec![hi; n] };
            let h = cgengine::integer_hull(&k, &bx)?;
            Outcome::new(io::hull(&h)).table(poly_rows(&h.hpoly)).picture(k, Vec::new(), Some(h.hpoly.clone()))
        }
        Command::Hilbert { body } => {
            let c = input::cone(body)?;
            let basis = hilbert::hilbert_basis(&c)?;
            let rows = basis.iter().map(|h| h.iter().map(ToString::to_string).collect()).collect();
            Outcome::new(io::hilbert(&c, &basis)).table(rows)
        }
        Command::Certify { body, radius, family } => {
            let k = input::body(body)?;
            match family {
                Some(path) => {
                    let cert = certify::verify_certificate(&k, &input::int_vecs(path)?)?;
                    let status = if cert.is_certified() { Status::Ok } else { Status::Negative };
                    Outcome::new(io::certificate(&cert))
                        .table(poly_rows(&cert.q_f))
                        .status(status)
                        .picture(k, cert.cuts.clone(), Some(cert.q_f.clone()))
                }
                None => match certify::search_certificate(&k, *radius as usize)? {
                    Some(cert) => Outcome::new(io::certificate(&cert))
                        .table(poly_rows(&cert.q_f))
                        .picture(k, cert.cuts.clone(), Some(cert.q_f.clone())),
                    None => Outcome::new(io::document(
                        "certificate",
                        json!({ "found": false, "searched_radius": radius }),
                    ))
                    .status(Status::Budget),
                },
            }
        }
        Command::Nonfg { body, radius } => {
            let k = input::body(body)?;
            match certify::nonfg_witness(&k, *radius as usize) {
                Ok(w) => Outcome::new(io::document("nonfg", json!({ "radius": radius, "witness": io::rat_vec(&w) })))
                    .table(vec![w.iter().map(cglab::arith::format_rational).collect()])
                    .status(Status::Negative),
                Err(Error::CertifiedInstead(n)) => {
                    Outcome::new(io::document("nonfg", json!({ "radius": n, "certified_instead": true })))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Vpi { pi } => {
            let v = diophantine::v_pi(&input::quads(pi)?)?;
            let rows = v.basis.iter().map(|b| b.iter().map(cglab::arith::format_rational).collect()).collect();
            Outcome::new(io::vpi(&v)).table(rows)
        }
        Command::Kronecker { pi, target, eps, n0, budget, zero_sum } => {
            let pi = input::quads(pi)?;
            let eps = parse_rational(eps)?;
            if let Some(k_max) = zero_sum {
                let z = diophantine::zero_combination(&pi, &eps, *n0, *k_max)?;
                return Ok(Outcome::new(io::zero_combination(&z)));
            }
            let target = match target {
                Some(t) => input::rationals(t)?,
                None => vec![Rational::from_integer(0.into()); pi.len()],
            };
            let a = diophantine::kronecker_approx_with_budget(&pi, &target, &eps, *n0, *budget)?;
            let row = a.c.iter().map(ToString::to_string).chain([a.m.to_string()]).collect();
            Outcome::new(io::approximant(&a)).table(vec![row])
        }
        Command::Facecuts { body, alpha, alpha0, g, delta, n0 } => {
            let k = input::body(body)?;
            let alpha = input::quads(alpha)?;
            let alpha0: BigInt = alpha0.trim().parse().map_err(|_| Error::Parse(format!("{alpha0}: not an integer")))?;
            let fam = certify::face_cuts(&k, &alpha, &alpha0, &input::g_list(g)?, &parse_rational(delta)?, *n0)?;
            let cuts: Vec<CGCut> = fam.members.iter().map(|m| CGCut { c: m.direction(), rhs: m.rhs.clone() }).collect();
            Outcome::new(io::face_family(&fam)).table(cut_rows(&cuts)).picture(k, cuts, None)
        }
        Command::Examples { which } => {
            let report = match which.as_str() {
                "1" => reports::example1()?,
                "2" => reports::example2()?,
                "3" => reports::example3()?,
                "oracle" => reports::oracle(cli.seed, 10)?,
                other => anyhow::bail!(Error::Parse(format!("unknown example {other:?}; expected 1, 2, 3 or oracle"))),
            };
            let status = if report.all_match { Status::Ok } else { Status::Negative };
            Outcome::new(report.doc).status(status)
        }
        Command::Render { body, radius, window } => {
            let k = input::body(body)?;
            if cli.svg.is_none() {
                anyhow::bail!(Error::Precondition("render needs --svg".into()));
            }
            let report = cgengine::closure_bruteforce(&k, *radius as usize)?;
            let svg = render::svg(&k, &report.cuts, Some(&report.polyhedron), &input::window(window)?)?;
            let mut out = Outcome::new(io::closure(&report));
            out.doc["svg"] = Value::from(cli.svg.as_ref().map(|p| p.display().to_string()));
            write_svg(cli, &svg)?;
            out
        }
    })
}

fn write_svg(cli: &Cli, svg: &str) -> anyhow::Result<()> {
    if let Some(path) = &cli.svg {
        fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn emit(cli: &Cli, out: &Outcome) -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match (cli.format, &out.table) {
        (Format::Csv, Some(rows)) => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(lock);
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        _ => lock.write_all(io::to_string(&out.doc).as_bytes())?,
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Parse(_) | Error::Json(_)) => 2,
        Some(Error::Exceeded(_) | Error::SearchBudgetExceeded | Error::ApproximationBudget | Error::UnstableBox) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        if let (Some(p), Some(pic)) = (&cli.svg, &out.picture) {
            let svg = render::svg(&pic.body, &pic.cuts, pic.region.as_ref(), &default_window())?;
            fs::write(p, svg).with_context(|| format!("writing {}", p.display()))?;
        }
        emit(&cli, &out)?;
        Ok(out.status)
    });
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(3),
        Ok(Status::Budget) => ExitCode::from(4),
        Err(e) => {
            eprintln!("cglab: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
