use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

use tzitzeica::algebra::serial;
use tzitzeica::cohomology::{finite_type_rank, translation_gauge, SampleTable};
use tzitzeica::jet::{e_lin, SystemParams};
use tzitzeica::linsolve::kernel_basis;
use tzitzeica::recursion::{p_step, v5};
use tzitzeica::{DiffPoly, Error};

mod verify;

#[derive(Parser, Debug)]
#[command(name = "tzitzeica", version, about = "Conservation laws of the Tzitzeica equation")]
struct Cli {
    /// Coefficient in the potential e^{-αu} - e^{2αu}.
    #[arg(long, global = true, default_value = "-1", allow_hyphen_values = true)]
    alpha: String,
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest k in the exponential window {kα/2 : |k| ≤ window} used by integration.
    #[arg(long, global = true, default_value_t = 4)]
    max_exp_window: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basis of the generating functions of a given weight.
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        weight: i64,
    },
    /// Iterate the recursion from a seed.
    Recur {
        /// `u0`, `v5` or a file holding a polynomial.
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Run an invariant suite; exit 0 iff every residual vanishes.
    Verify {
        #[arg(long, value_enum)]
        what: Suite,
        #[arg(long, default_value = "u0")]
        seed: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 7)]
        rng_seed: u64,
    },
    /// Translation-invariant representative of a generating function.
    Gauge {
        /// `u0`, `v5` or a file holding a polynomial.
        #[arg(long)]
        gen: String,
    },
    /// Finite-type rank test on sampled jets.
    Rank {
        /// CSV table with a `u` column and generator columns.
        #[arg(long)]
        samples: String,
        /// One polynomial per line.
        #[arg(long)]
        gens: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Flatness,
    Killing,
    Closed,
    Gauge,
    Commutator,
}

/// Exit status and message of a failed command.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }

    pub fn math(msg: impl Into<String>) -> Self {
        Failure {
            code: 3,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Precondition(_)
            | Error::Data(_)
            | Error::MissingAssignment(_)
            | Error::InsufficientRows { .. } => Failure::usage(e.to_string()),
            _ => Failure::math(e.to_string()),
        }
    }
}

/// Text and JSON renderings of a successful result.
pub struct Output {
    pub text: String,
    pub json: Value,
}

fn parse_alpha(s: &str) -> Result<SystemParams, Failure> {
    let q: Rational64 = s
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("invalid alpha '{}'", s)))?;
    Ok(SystemParams::new(q)?)
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {}", path, e)))
}

/// `u0`, `v5`, or a file with polynomial text or JSON term records.
pub fn load_poly(arg: &str) -> Result<DiffPoly, Failure> {
    match arg {
        "u0" => return Ok(DiffPoly::u(0)),
        "v5" => return Ok(v5()),
        _ => {}
    }
    if !Path::new(arg).exists() {
        return Err(Failure::usage(format!(
            "'{}' is neither a built-in seed nor a file",
            arg
        )));
    }
    let text = read_file(arg)?;
    let t = text.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| Failure::usage(format!("{}: {}", arg, e)))?;
        Ok(serial::from_json(&v)?)
    } else {
        Ok(t.parse()?)
    }
}

fn require_tzitzeica(params: &SystemParams, what: &str) -> Result<(), Failure> {
    if params.is_normalized() {
        Ok(())
    } else {
        Err(Failure::usage(format!("{} requires alpha = -1", what)))
    }
}

fn cmd_kernel(params: &SystemParams, weight: i64) -> Result<Output, Failure> {
    if weight % 2 == 0 {
        return Err(Failure::usage(format!("weight must be odd, got {}", weight)));
    }
    let basis = kernel_basis(params, weight);
    let mut text = format!("dim V_{} = {}\n", weight, basis.len());
    for p in &basis {
        text += &format!("{}\n", p);
    }
    let json = json!({
        "alpha": params.alpha().to_string(),
        "weight": weight,
        "dimension": basis.len(),
        "basis": basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    Ok(Output { text, json })
}

fn cmd_recur(params: &SystemParams, seed: &str, steps: usize) -> Result<Output, Failure> {
    require_tzitzeica(params, "the recursion")?;
    let mut cur = load_poly(seed)?;
    let mut chain = vec![cur.clone()];
    for _ in 0..steps {
        cur = p_step(params, &cur)?.a_next;
        chain.push(cur.clone());
    }
    let mut text = String::new();
    let mut items = Vec::new();
    let mut all_ok = true;
    for (k, p) in chain.iter().enumerate() {
        let ok = e_lin(params, p).is_zero();
        all_ok &= ok;
        let w = match p.weight_of() {
            tzitzeica::algebra::WeightOf::Homogeneous(d) => d.to_string(),
            _ => "?".into(),
        };
        text += &format!(
            "[{}] weight {}  E = 0: {}\n{}\n",
            k,
            w,
            if ok { "yes" } else { "NO" },
            p
        );
        items.push(json!({ "step": k, "weight": w, "in_kernel": ok, "poly": p.to_string() }));
    }
    if !all_ok {
        return Err(Failure::math(format!("{}chain left the kernel", text)));
    }
    Ok(Output {
        text,
        json: json!({ "chain": items }),
    })
}

fn cmd_gauge(params: &SystemParams, gen: &str, window: u32) -> Result<Output, Failure> {
    let p = load_poly(gen)?;
    let g = translation_gauge(params, &p, window)?;
    let text = format!("A = {}\nB = {}\nphi_hat = {}\nG = {}\n", g.a, g.b, g.phi_hat, g.g);
    let json = json!({
        "A": g.a.to_string(),
        "B": g.b.to_string(),
        "phi_hat": g.phi_hat.to_string(),
        "G": g.g.to_string(),
    });
    Ok(Output { text, json })
}

fn cmd_rank(samples: &str, gens: &str) -> Result<Output, Failure> {
    let table = SampleTable::from_csv(read_file(samples)?.as_bytes(), samples)?;
    let gens: Vec<DiffPoly> = read_file(gens)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse())
        .collect::<Result<_, _>>()?;
    let r = finite_type_rank(&table, &gens)?;
    let cert = r.certificate.as_ref().map(|c| {
        json!({
            "spanning": c.spanning,
            "relation": c.relation.iter().map(|z| tzitzeica::cohomology::format_complex(*z)).collect::<Vec<_>>(),
            "residual": c.residual,
            "exact": c.exact,
        })
    });
    let json = json!({ "rank": r.rank, "singular_values": r.singular_values, "certificate": cert });
    Ok(Output {
        text: format!("{}\n", r),
        json,
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let params = parse_alpha(&cli.alpha)?;
    match &cli.command {
        Command::Kernel { weight } => cmd_kernel(&params, *weight),
        Command::Recur { seed, steps } => cmd_recur(&params, seed, *steps),
        Command::Verify {
            what,
            seed,
            cases,
            rng_seed,
        } => verify::run(&params, *what, seed, *cases, *rng_seed),
        Command::Gauge { gen } => cmd_gauge(&params, gen, cli.max_exp_window),
        Command::Rank { samples, gens } => cmd_rank(samples, gens),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
