use clap::{Args, Parser, Subcommand, ValueEnum};
use quatheta::arith::{is_prime, Discriminant};
use quatheta::brandt::{
    eigensystem_from, expected_row_sum, rational_eigenspaces, BrandtData, EigenSystem,
};
use quatheta::linalg::{identity, mat_mul, mat_vec};
use quatheta::order::IdealClassSet;
use quatheta::qform::{class_number, closed_form_h, mass, unit_factor, LevelConfig};
use quatheta::rational::{serialize_frac, to_frac_string, Rational};
use quatheta::theta32::{trace_identity_check, TernaryCounts};
use quatheta::verify::{coefficient_congruence, divisibility_table, eigenvalue_congruence};
use quatheta::Error;
use num_integer::gcd;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quatheta", version, about = "Weight 3/2 Cohen-Eisenstein coefficients from quaternion orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare theta-series and class-number coefficients of H for 0 <= D <= dmax.
    Hseries(RunArgs),
    /// Run one verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Divisibility of m_D against h(-D) over the admissible family.
    Shatable(RunArgs),
    /// Class numbers h(-D) and unit factors for 3 <= D <= dmax.
    Classnum {
        #[arg(long, default_value_t = 2000)]
        dmax: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Mass,
    Rowsum,
    Trace,
    Hecke,
    Congruence,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Mass => "mass",
            Suite::Rowsum => "rowsum",
            Suite::Trace => "trace",
            Suite::Hecke => "hecke",
            Suite::Congruence => "congruence",
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated ramified primes (an odd number of them).
    #[arg(long, value_delimiter = ',', required = true)]
    ramified: Vec<u64>,
    #[arg(long = "M", default_value_t = 1)]
    m: u64,
    #[arg(long, default_value_t = 2000)]
    dmax: u64,
    #[arg(long, default_value_t = 30)]
    mmax: u64,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Config(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidLevel(_) | Error::CongruencePrecondition(_) => Failure::Config(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.into())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Hseries(run) => hseries(&run),
        Command::Verify { suite, run } => verify(suite, &run),
        Command::Shatable(run) => shatable(&run),
        Command::Classnum { dmax, output } => classnum(dmax, &output),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn level(run: &RunArgs) -> Result<LevelConfig, Failure> {
    Ok(LevelConfig::new(&run.ramified, run.m)?)
}

fn classes(run: &RunArgs, cfg: &LevelConfig) -> Result<IdealClassSet, Failure> {
    Ok(IdealClassSet::load_or_build(cfg, run.cache_dir.as_deref())?)
}

fn emit<T: Serialize>(output: &OutputArgs, rows: &[T], summary: Option<serde_json::Value>) -> Result<(), Failure> {
    let mut buf: Vec<u8> = Vec::new();
    match output.format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
            for r in rows {
                w.serialize(r).map_err(|e| Failure::Compute(Error::Io(e.into())))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut doc = serde_json::json!({ "rows": rows });
            if let Some(s) = summary {
                doc["summary"] = s;
            }
            serde_json::to_writer_pretty(&mut buf, &doc).map_err(|e| Failure::Compute(e.into()))?;
            buf.push(b'\n');
        }
    }
    match &output.out {
        Some(path) => std::fs::write(path, &buf)?,
        None => std::io::stdout().lock().write_all(&buf)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct HRow {
    #[serde(rename = "D")]
    d: u64,
    #[serde(rename = "H_theta", serialize_with = "serialize_frac")]
    h_theta: Rational,
    #[serde(rename = "H_closed", serialize_with = "serialize_frac")]
    h_closed: Rational,
    equal: bool,
    fundamental: bool,
    s: Option<usize>,
    h: Option<u64>,
    u: Option<u64>,
}

fn hseries(run: &RunArgs) -> Outcome {
    let cfg = level(run)?;
    let set = classes(run, &cfg)?;
    let h = TernaryCounts::new(&set, run.dmax)?.cohen_h();
    let rows: Vec<HRow> = (0..=run.dmax)
        .map(|d| {
            let disc = (d > 0).then(|| Discriminant::new(-(d as i64)).ok()).flatten();
            let h_theta = h.coefficient(d).clone();
            let h_closed = closed_form_h(d, &cfg);
            HRow {
                d,
                equal: h_theta == h_closed,
                h_theta,
                h_closed,
                fundamental: disc.map_or(false, |x| x.is_fundamental()),
                s: disc.map(|x| cfg.ramified_count(&x)),
                h: disc.map(|x| class_number(&x)),
                u: disc.map(|x| unit_factor(&x)),
            }
        })
        .collect();
    let unequal = rows.iter().filter(|r| !r.equal).count();
    emit(
        &run.output,
        &rows,
        Some(serde_json::json!({ "level": cfg.level(), "unequal": unequal })),
    )?;
    Ok(unequal == 0)
}

#[derive(Serialize)]
struct Check {
    check: String,
    index: u64,
    pass: bool,
    lhs: String,
    rhs: String,
}

impl Check {
    fn new(check: &str, index: u64, lhs: String, rhs: String) -> Self {
        Self {
            check: check.to_string(),
            index,
            pass: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

fn good_primes(cfg: &LevelConfig, bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p) && cfg.level() % p != 0).collect()
}

/// The cusp eigensystem whose splitting eigenvalues satisfy `a_p = b_p mod l`,
/// falling back to the first one in eigenvalue order.
fn select_eigensystem(
    set: &IdealClassSet,
    data: &BrandtData,
    cfg: &LevelConfig,
    l: u64,
) -> Result<EigenSystem, Failure> {
    let primes = good_primes(cfg, data.m_max().min(30));
    let (lines, unsplit) = rational_eigenspaces(set, data, &primes)?;
    let congruent = |line: &&quatheta::brandt::EigenSpace| {
        line.eigenvalues
            .iter()
            .all(|&(p, a)| a.rem_euclid(l as i64) as u64 == expected_row_sum(p, cfg) % l)
    };
    let chosen = lines
        .iter()
        .find(congruent)
        .or(lines.first())
        .cloned()
        .ok_or(Error::NoRationalSplitting { dims: unsplit })?;
    Ok(eigensystem_from(set, data, chosen))
}

fn verify(suite: Suite, run: &RunArgs) -> Outcome {
    let cfg = level(run)?;
    if matches!(suite, Suite::Congruence) && run.l.is_none() {
        return Err(Failure::Config("--l is required for the congruence suite".into()));
    }
    let set = classes(run, &cfg)?;
    let mut checks = Vec::new();
    let mut summary = serde_json::json!({ "suite": suite.name(), "level": cfg.level() });
    match suite {
        Suite::Mass => {
            checks.push(Check::new("mass", 0, to_frac_string(&set.mass()), to_frac_string(&mass(&cfg))));
            for (i, r) in set.right_orders().iter().enumerate() {
                checks.push(Check::new(
                    "right_order_discriminant",
                    i as u64,
                    r.reduced_discriminant().to_string(),
                    cfg.level().to_string(),
                ));
            }
            summary["mass"] = to_frac_string(&set.mass()).into();
        }
        Suite::Rowsum => {
            let data = BrandtData::new(&set, run.mmax)?;
            let b1 = data.matrix(1.min(run.mmax));
            checks.push(Check::new(
                "identity",
                1,
                format!("{:?}", b1.entries() == &identity(set.len())),
                "true".into(),
            ));
            for m in 1..=run.mmax {
                let expected = expected_row_sum(m, &cfg).to_string();
                for (i, s) in data.matrix(m).row_sums().iter().enumerate() {
                    checks.push(Check::new(&format!("row_sum[{i}]"), m, to_frac_string(s), format!("{expected}/1")));
                }
            }
        }
        Suite::Trace => {
            let data = BrandtData::new(&set, run.mmax)?;
            let h = TernaryCounts::new(&set, 4 * run.mmax)?.cohen_h();
            for row in trace_identity_check(&data, &h, run.mmax) {
                checks.push(Check::new(
                    "trace",
                    row.m,
                    to_frac_string(&row.trace),
                    to_frac_string(&row.class_number_sum),
                ));
            }
        }
        Suite::Hecke => {
            let data = BrandtData::new(&set, run.mmax)?;
            let n = set.len();
            let ones = vec![Rational::from_integer(1.into()); n];
            for p in good_primes(&cfg, run.mmax) {
                let bu = mat_vec(data.matrix(p).entries(), &ones);
                let b = Rational::from_integer(expected_row_sum(p, &cfg).into());
                let ok = bu.iter().all(|x| *x == b);
                checks.push(Check::new("u_eigenvector", p, ok.to_string(), "true".into()));
            }
            for m in 1..=run.mmax {
                for k in 1..=run.mmax / m {
                    let mk = m * k;
                    if k <= m || gcd(m, k) != 1 || gcd(mk, cfg.level()) != 1 {
                        continue;
                    }
                    let prod = mat_mul(data.matrix(m).entries(), data.matrix(k).entries());
                    let ok = &prod == data.matrix(mk).entries();
                    checks.push(Check::new(&format!("multiplicative[{m}x{k}]"), mk, ok.to_string(), "true".into()));
                }
            }
        }
        Suite::Congruence => {
            let l = run.l.expect("checked above");
            let p_max = run.mmax;
            let data = BrandtData::new(&set, p_max)?;
            let eig = select_eigensystem(&set, &data, &cfg, l)?;
            let ev = eigenvalue_congruence(&eig, &cfg, &set.w(), l, p_max)?;
            for (&p, &a) in eig.eigenvalues.range(..=p_max) {
                checks.push(Check::new(
                    "eigenvalue",
                    p,
                    a.rem_euclid(l as i64).to_string(),
                    (expected_row_sum(p, &cfg) % l).to_string(),
                ));
            }
            let t = TernaryCounts::new(&set, run.dmax)?;
            let cc = coefficient_congruence(&t.cohen_h(), &t.cusp_g(&eig), l)?;
            for f in &cc.failures {
                checks.push(Check::new("coefficient", f.index, f.lhs.to_string(), f.rhs.to_string()));
            }
            checks.push(Check::new(
                "lambda",
                0,
                cc.lambda.map_or("absent".to_string(), |x| x.to_string()),
                cc.lambda.map_or("present".to_string(), |x| x.to_string()),
            ));
            summary["l"] = l.into();
            summary["lambda"] = cc.lambda.into();
            summary["eigenvalue_failures"] = ev.failures.len().into();
            summary["coefficient_note"] = cc.note.clone().into();
            let c: Vec<String> = eig.c.iter().map(|x| x.to_string()).collect();
            summary["eigenvector"] = c.into();
        }
    }
    let passed = checks.iter().all(|c| c.pass);
    summary["pass"] = passed.into();
    emit(&run.output, &checks, Some(summary))?;
    Ok(passed)
}

fn shatable(run: &RunArgs) -> Outcome {
    let cfg = level(run)?;
    let l = run.l.ok_or_else(|| Failure::Config("--l is required".into()))?;
    if l == 2 || !is_prime(l) {
        return Err(Failure::Config(format!("--l {l} is not an odd prime")));
    }
    let set = classes(run, &cfg)?;
    let data = BrandtData::new(&set, run.mmax.max(2))?;
    let eig = select_eigensystem(&set, &data, &cfg, l)?;
    let t = TernaryCounts::new(&set, run.dmax)?;
    let g = t.cusp_g(&eig);
    let cc = coefficient_congruence(&t.cohen_h(), &g, l)?;
    let table = divisibility_table(&cfg, &g, l, run.dmax)?;
    let total = table.rows.len();
    eprintln!(
        "agreement {}/{} ({})",
        table.agreements,
        total,
        if total == 0 {
            "no admissible D".to_string()
        } else {
            format!("{:.1}%", 100.0 * table.agreements as f64 / total as f64)
        }
    );
    let summary = serde_json::json!({
        "level": cfg.level(),
        "l": l,
        "lambda": cc.lambda,
        "agreements": table.agreements,
        "disagreements": table.disagreements,
    });
    emit(&run.output, &table.rows, Some(summary))?;
    Ok(true)
}

#[derive(Serialize)]
struct ClassRow {
    #[serde(rename = "D")]
    d: u64,
    fundamental: bool,
    h: u64,
    u: u64,
}

fn classnum(d_max: u64, output: &OutputArgs) -> Outcome {
    if d_max < 3 {
        return Err(Failure::Config("--dmax must be at least 3".into()));
    }
    let rows: Vec<ClassRow> = (3..=d_max)
        .filter_map(|d| Discriminant::new(-(d as i64)).ok().map(|x| (d, x)))
        .map(|(d, x)| ClassRow {
            d,
            fundamental: x.is_fundamental(),
            h: class_number(&x),
            u: unit_factor(&x),
        })
        .collect();
    emit(output, &rows, None)?;
    Ok(true)
}
