use std::io::{IsTerminal, Read};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use peterson::maps::{gamma_sd, gamma_t, phi_fl, phi_fl_inv, phi_gr, psi_pc, AffIndex, FlIndex, IndexRecord};
use peterson::oracle::{quantum_product_fl, quantum_product_gr, FlTableRecord, GrTableRecord};
use peterson::perms::{DegreeVector, Permutation};
use peterson::shapes::{Partition, RectContext};
use peterson::verify::{
    lift_suite, pc_numeric_suite, pentagon_suite, props_suite, sd_numeric_suite, t_numeric_suite, PropBounds, Report,
};

#[derive(Parser)]
#[command(name = "peterson", version, about = "Quantum Schubert calculus index correspondences")]
struct Cli {
    /// Human-readable output instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,

    /// Worker threads for the verification suites.
    #[arg(long, global = true, env = "PETERSON_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a product of two Schubert classes.
    #[command(subcommand)]
    Product(Product),
    /// Apply one correspondence to an index tuple given by flags or as a JSON record on stdin.
    Map(MapArgs),
    /// Run an exhaustive verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum Product {
    /// σ_a * σ_b in QH*(Gr(m, n)).
    Gr {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: Partition,
        #[arg(long, allow_hyphen_values = true)]
        b: Partition,
    },
    /// σ_a * σ_b in QH*(Fl(n)).
    Fl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: Permutation,
        #[arg(long)]
        b: Permutation,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Sd,
    Pc,
    T,
    Gr,
    Fl,
    Flinv,
}

#[derive(Args)]
struct MapArgs {
    which: Which,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    lambda: Option<Partition>,
    #[arg(long)]
    mu: Option<Partition>,
    #[arg(long)]
    nu: Option<Partition>,
    #[arg(long)]
    eta: Option<Partition>,
    /// Grassmannian degree.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    u: Option<Permutation>,
    #[arg(long)]
    v: Option<Permutation>,
    #[arg(long)]
    w: Option<Permutation>,
    /// Flag degree vector, e.g. 0,1,0,0.
    #[arg(long)]
    deg: Option<DegreeVector>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Pentagon,
    PcNumeric,
    SdNumeric,
    TNumeric,
    Props,
    Lift,
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    /// Largest n to enumerate.
    #[arg(long)]
    n: usize,
}

const MAX_N: usize = 16;

type SuiteFn = fn(usize, &(dyn Fn(&str) + Sync)) -> Report;

impl MapArgs {
    fn given(&self) -> bool {
        self.lambda.is_some() || self.u.is_some()
    }

    fn record(&self) -> anyhow::Result<IndexRecord> {
        if !self.given() {
            return read_record();
        }
        let need = |name: &str| anyhow!("missing --{name}");
        let rec = match self.which {
            Which::Sd | Which::Pc | Which::Gr => IndexRecord::Gr {
                m: self.m.ok_or_else(|| need("m"))?,
                n: self.n.ok_or_else(|| need("n"))?,
                lambda: self.lambda.clone().ok_or_else(|| need("lambda"))?,
                mu: self.mu.clone().ok_or_else(|| need("mu"))?,
                nu: self.nu.clone().ok_or_else(|| need("nu"))?,
                d: self.d.ok_or_else(|| need("d"))?,
            },
            Which::T | Which::Flinv => {
                let u = self.u.clone().ok_or_else(|| need("u"))?;
                IndexRecord::Fl {
                    n: u.n(),
                    v: self.v.clone().ok_or_else(|| need("v"))?,
                    w: self.w.clone().ok_or_else(|| need("w"))?,
                    d: self.deg.clone().ok_or_else(|| need("deg"))?,
                    u,
                }
            }
            Which::Fl => {
                let n = self.n.ok_or_else(|| need("n"))?;
                IndexRecord::Aff {
                    k: n.checked_sub(1).ok_or_else(|| anyhow!("--n must be positive"))?,
                    lambda: self.lambda.clone().ok_or_else(|| need("lambda"))?,
                    mu: self.mu.clone().ok_or_else(|| need("mu"))?,
                    eta: self.eta.clone().ok_or_else(|| need("eta"))?,
                    m: self.m,
                }
            }
        };
        Ok(rec)
    }
}

fn read_record() -> anyhow::Result<IndexRecord> {
    let mut stdin = std::io::stdin();
    if stdin.is_terminal() {
        bail!("no index given: pass flags or pipe a JSON record on stdin");
    }
    let mut text = String::new();
    stdin.read_to_string(&mut text)?;
    let line = text.lines().map(str::trim).rfind(|l| !l.is_empty()).ok_or_else(|| anyhow!("empty stdin"))?;
    serde_json::from_str(line).with_context(|| format!("parsing record {line:?}"))
}

enum Failure {
    Verification,
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<peterson::Error> for Failure {
    fn from(e: peterson::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn emit<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn product(cmd: Product, pretty: bool) -> Result<(), Failure> {
    match cmd {
        Product::Gr { m, n, a, b } => {
            let ctx = RectContext::from_mn(m, n)?;
            let table = quantum_product_gr(&a, &b, ctx)?;
            if pretty {
                println!("σ_{a:?} * σ_{b:?} in QH*(Gr({m},{n}))");
                for ((nu, d), c) in table.iter() {
                    println!("  {c:>4}  q^{d} σ_{nu:?}");
                }
            } else {
                emit(&GrTableRecord::new(&table, ctx))?;
            }
        }
        Product::Fl { n, a, b } => {
            if a.n() != n || b.n() != n {
                return Err(Failure::Usage(anyhow!("both permutations must lie in S_{n}")));
            }
            if n > 7 {
                return Err(Failure::Usage(anyhow!("the flag oracle supports n ≤ 7")));
            }
            let table = quantum_product_fl(&a, &b)?;
            if pretty {
                println!("σ_{a:?} * σ_{b:?} in QH*(Fl({n}))");
                for ((w, d), c) in table.iter() {
                    println!("  {c:>4}  q^{d:?} σ_{w:?}");
                }
            } else {
                emit(&FlTableRecord::new(&table, n))?;
            }
        }
    }
    Ok(())
}

fn map(args: MapArgs, pretty: bool) -> Result<(), Failure> {
    let rec = args.record()?;
    let out = match args.which {
        Which::Sd => IndexRecord::from(&gamma_sd(&rec.to_gr()?)?),
        Which::Pc => IndexRecord::from(&psi_pc(&rec.to_gr()?)?),
        Which::Gr => {
            let x = rec.to_gr()?;
            IndexRecord::from_aff(&phi_gr(&x)?, Some(x.ctx.m()))
        }
        Which::T => IndexRecord::from(&gamma_t(&rec.to_fl()?)?),
        Which::Fl => {
            let (x, m): (AffIndex, Option<usize>) = rec.to_aff()?;
            let m = args.m.or(m).ok_or_else(|| anyhow!("Φ_Fl needs the row count m (--m or \"m\" in the record)"))?;
            IndexRecord::from(&phi_fl(&x, RectContext::from_mn(m, x.k + 1)?)?)
        }
        Which::Flinv => {
            let x: FlIndex = rec.to_fl()?;
            IndexRecord::from_aff(&phi_fl_inv(&x)?, None)
        }
    };
    if pretty {
        match &out {
            IndexRecord::Gr { .. } => println!("{}", out.to_gr()?),
            IndexRecord::Fl { .. } => println!("{}", out.to_fl()?),
            IndexRecord::Aff { .. } => println!("{}", out.to_aff()?.0),
        }
    } else {
        emit(&out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SuiteLine<'a> {
    suite: &'a str,
    n: usize,
    checked: u64,
    failures: usize,
    seconds: f64,
}

fn verify(args: VerifyArgs, pretty: bool) -> Result<(), Failure> {
    let n = args.n;
    if !(2..=MAX_N).contains(&n) {
        return Err(Failure::Usage(anyhow!("--n must lie in 2..={MAX_N}")));
    }
    if matches!(args.suite, Suite::PcNumeric | Suite::TNumeric) && n > 6 {
        return Err(Failure::Usage(anyhow!("the flag oracle suites support n ≤ 6")));
    }
    let sink = |msg: &str| eprintln!("FAIL {msg}");
    let start = Instant::now();
    let up_to = |suite: SuiteFn| {
        let mut report = Report::default();
        for size in 2..=n {
            report.merge(suite(size, &sink));
        }
        report
    };
    let sections: Vec<(String, Report)> = match args.suite {
        Suite::Pentagon => vec![("pentagon".into(), up_to(pentagon_suite))],
        Suite::PcNumeric => vec![("pc-numeric".into(), up_to(pc_numeric_suite))],
        Suite::SdNumeric => vec![("sd-numeric".into(), up_to(sd_numeric_suite))],
        Suite::TNumeric => vec![("t-numeric".into(), up_to(t_numeric_suite))],
        Suite::Lift => vec![("lift".into(), lift_suite(n, &sink))],
        Suite::Props => props_suite(&PropBounds::uniform(n), &sink)
            .into_iter()
            .map(|(name, r)| (format!("props/{name}"), r))
            .collect(),
    };
    let seconds = start.elapsed().as_secs_f64();
    let mut failed = false;
    for (name, report) in &sections {
        failed |= !report.passed();
        if pretty {
            println!("{name:<24} n<={n:<3} {:>9} checked  {:>4} failures", report.checked, report.failures.len());
        } else {
            emit(&SuiteLine { suite: name, n, checked: report.checked, failures: report.failures.len(), seconds })?;
        }
    }
    if pretty {
        println!("{seconds:.2}s");
    }
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Product(cmd) => product(cmd, cli.pretty),
        Command::Map(args) => map(args, cli.pretty),
        Command::Verify(args) => verify(args, cli.pretty),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
