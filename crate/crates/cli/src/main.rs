use std::collections::BTreeSet;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bentnorm::equiv::{affine_class_representative, fingerprint_buckets};
use bentnorm::format::{parse_function_file, write_function_file};
use bentnorm::{
    check_ea_certificate, for_each_expansion, is_bent, par_classify_normality, par_is_abnormal,
    par_r_degree, par_sieving, spectral_class, BoolFun, CertificateCheck, EACertificate,
    ExpandOptions, SpectralKind,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

#[derive(Parser)]
#[command(name = "bentnorm", version, about = "Normality, sieving and bent expansion of Boolean functions")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "BENTNORM_WORKERS", default_value_t = 0)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Function file: a line "m=<int>" then one hex truth table per line.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "anf")]
    input: Option<PathBuf>,

    /// A single function given as ANF text, e.g. "x1*x2 + x3".
    #[arg(long, requires = "m")]
    anf: Option<String>,

    /// Number of variables for --anf.
    #[arg(long)]
    m: Option<usize>,
}

impl Input {
    fn load(&self) -> Result<(usize, Vec<BoolFun>)> {
        match (&self.input, &self.anf) {
            (Some(path), None) => read_functions(path),
            (None, Some(text)) => {
                let m = self.m.context("--anf needs --m")?;
                Ok((m, vec![BoolFun::from_anf_str(m, text)?]))
            }
            _ => bail!("give either --in <file> or --anf <expr> --m <int>"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Degree, valuation, weight, spectral and normality class.
    Analyze(Input),
    /// Spectral class and |Walsh| histogram.
    Spectrum(Input),
    /// Minimal relative degree over all r-flats.
    Rdegree {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
    },
    /// Normality class with a witness flat.
    Abnormal(Input),
    /// Quadratic forms q with f + q abnormal.
    Sieve {
        #[command(flatten)]
        input: Input,
        /// Write every abnormal f + q to this function file.
        #[arg(long, value_name = "FILE")]
        emit_abnormal: Option<PathBuf>,
    },
    /// All bent expansions of near-bent functions.
    Expand {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Cap on enumerated assignments per block.
        #[arg(long, default_value_t = bentnorm::expand::DEFAULT_BUDGET)]
        budget: u128,
        /// Re-check bentness and the restriction to x_m = 0 of every output.
        #[arg(long)]
        verify: bool,
    },
    /// Check f2(x) = f(xA + b) + a(x) for the first two functions of the input.
    VerifyEa {
        #[command(flatten)]
        input: Input,
        /// "A=<hex rows, comma separated>;b=<hex>;a=<ANF>"
        #[arg(long)]
        cert: String,
    },
    /// Sieve, dedup, expand and check with checkpoint files in --out.
    Campaign {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Stage::All)]
        stage: Stage,
        #[arg(long, default_value_t = bentnorm::expand::DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Sieve,
    Dedup,
    Expand,
    Check,
    All,
}

fn read_functions(path: &Path) -> Result<(usize, Vec<BoolFun>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_function_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn analyze(out: &mut impl Write, fs: &[BoolFun]) -> Result<()> {
    for f in fs {
        let class = spectral_class(f);
        let normality = par_classify_normality(f);
        let valuation = f.valuation().map_or("none".to_string(), |v| v.to_string());
        writeln!(
            out,
            "{} m={} deg={} val={} wt={} spectrum={} zeros={} normality={} half_degree={}",
            f.to_hex(),
            f.num_vars(),
            f.degree(),
            valuation,
            f.weight(),
            class.kind,
            class.zero_count,
            normality.kind,
            normality.half_degree
        )?;
    }
    Ok(())
}

fn spectrum(out: &mut impl Write, fs: &[BoolFun]) -> Result<()> {
    for f in fs {
        let class = spectral_class(f);
        let histogram: Vec<String> = f
            .walsh()
            .abs_histogram()
            .iter()
            .map(|(v, n)| format!("{v}:{n}"))
            .collect();
        writeln!(out, "{} {} |W|={}", f.to_hex(), class.kind, histogram.join(","))?;
    }
    Ok(())
}

fn sieve(out: &mut impl Write, m: usize, fs: &[BoolFun], emit: Option<&Path>) -> Result<Vec<BoolFun>> {
    let mut abnormal = Vec::new();
    for f in fs {
        let q = par_sieving(f)?;
        writeln!(out, "{} |Q(f)|={}", f.to_hex(), q.len())?;
        for form in q.iter() {
            writeln!(out, "  {form}")?;
            abnormal.push(f ^ &form.to_boolfun());
        }
    }
    if let Some(path) = emit {
        write_file(path, &write_function_file(m, &abnormal))?;
        info!("wrote {} abnormal functions to {}", abnormal.len(), path.display());
    }
    Ok(abnormal)
}

fn verify_expansion(g: &BoolFun, f: &BoolFun) -> Result<()> {
    if !is_bent(f) || &f.block(1, 0) != g {
        bail!("expansion {} of {} failed verification", f.to_hex(), g.to_hex());
    }
    Ok(())
}

/// Writes `<g> -> <f>` for every expansion `f` of every `g` as it is found.
/// Returns the number of lines written.
fn expand_to(out: &mut impl Write, fs: &[BoolFun], budget: u128, verify: bool) -> Result<usize> {
    let options = ExpandOptions {
        budget,
        ..ExpandOptions::default()
    };
    let mut total = 0;
    for g in fs {
        let g_hex = g.to_hex();
        let mut count = 0usize;
        let mut failure: Option<anyhow::Error> = None;
        for_each_expansion(g, &options, |f| {
            if failure.is_some() {
                return;
            }
            let written = if verify { verify_expansion(g, &f) } else { Ok(()) }
                .and_then(|()| writeln!(out, "{g_hex} -> {}", f.to_hex()).map_err(Into::into));
            match written {
                Ok(()) => count += 1,
                Err(e) => failure = Some(e),
            }
        })
        .with_context(|| format!("expanding {g_hex}"))?;
        if let Some(e) = failure {
            return Err(e);
        }
        info!("{g_hex}: {count} expansions");
        total += count;
    }
    Ok(total)
}

/// Parses one `<g> -> <f>` line; `None` for blank and comment lines.
fn parse_expansion_line(line: &str, number: usize) -> Result<Option<(BoolFun, BoolFun)>> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let (g, f) = line
        .split_once("->")
        .with_context(|| format!("line {number}: expected \"<g> -> <f>\""))?;
    let (g, f) = (g.trim(), f.trim());
    let n = hex_vars(g.len()).with_context(|| format!("line {number}: bad length"))?;
    Ok(Some((BoolFun::from_hex(n, g)?, BoolFun::from_hex(n + 1, f)?)))
}

fn hex_vars(digits: usize) -> Option<usize> {
    if digits.is_power_of_two() {
        Some(digits.trailing_zeros() as usize + 2)
    } else {
        None
    }
}

fn dedup(fs: &[BoolFun]) -> Vec<BoolFun> {
    let kept: BTreeSet<BoolFun> = fs
        .iter()
        .filter(|f| spectral_class(f).kind == SpectralKind::NearBent)
        .map(affine_class_representative)
        .collect();
    kept.into_iter().collect()
}

fn campaign(input: Option<&Path>, dir: &Path, stage: Stage, budget: u128) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let abnormal = dir.join("abnormal.hex");
    let near_bent = dir.join("near_bent.hex");
    let expansions = dir.join("expansions.txt");
    let report = dir.join("check.txt");
    let runs = |s: Stage| stage == s || stage == Stage::All;

    if runs(Stage::Sieve) {
        let path = input.context("the sieve stage needs --in")?;
        let (m, fs) = read_functions(path)?;
        let mut log = Vec::new();
        let found = sieve(&mut log, m, &fs, Some(&abnormal))?;
        write_file(&dir.join("sieve.txt"), &String::from_utf8(log)?)?;
        info!("sieve: {} inputs, {} abnormal functions", fs.len(), found.len());
    }
    if runs(Stage::Dedup) {
        let (m, fs) = read_functions(&abnormal)?;
        let kept = dedup(&fs);
        let buckets = fingerprint_buckets(&kept);
        info!(
            "dedup: {} functions, {} near-bent up to affine terms, {} fingerprint buckets",
            fs.len(),
            kept.len(),
            buckets.len()
        );
        write_file(&near_bent, &write_function_file(m, &kept))?;
    }
    if runs(Stage::Expand) {
        let (_, fs) = read_functions(&near_bent)?;
        let file = fs::File::create(&expansions).with_context(|| format!("writing {}", expansions.display()))?;
        let mut writer = BufWriter::new(file);
        let total = expand_to(&mut writer, &fs, budget, true)?;
        writer.flush()?;
        info!("expand: {} near-bent inputs, {total} bent expansions", fs.len());
    }
    if runs(Stage::Check) {
        let file = fs::File::open(&expansions).with_context(|| format!("reading {}", expansions.display()))?;
        let (mut checked, mut abnormal) = (0usize, Vec::new());
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let Some((_, f)) = parse_expansion_line(&line?, i + 1)? else {
                continue;
            };
            checked += 1;
            if par_is_abnormal(&f) {
                abnormal.push(f.to_hex());
            }
        }
        let mut summary = format!("checked={checked} abnormal={}\n", abnormal.len());
        for f in &abnormal {
            summary.push_str(&format!("{f}\n"));
        }
        write_file(&report, &summary)?;
        info!("check: {}", summary.lines().next().unwrap_or_default());
        if !abnormal.is_empty() {
            bail!("{} expansions are abnormal, see {}", abnormal.len(), report.display());
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Analyze(input) => analyze(&mut out, &input.load()?.1)?,
        Command::Spectrum(input) => spectrum(&mut out, &input.load()?.1)?,
        Command::Rdegree { input, r } => {
            let (m, fs) = input.load()?;
            if r > m {
                bail!("r={r} exceeds m={m}");
            }
            for f in &fs {
                let rd = par_r_degree(f, r)?;
                writeln!(out, "{} deg_{r}={} witness={}", f.to_hex(), rd.value, rd.witness)?;
            }
        }
        Command::Abnormal(input) => {
            for f in &input.load()?.1 {
                let c = par_classify_normality(f);
                writeln!(out, "{} {} {} {}", f.to_hex(), c.kind, c.half_degree, c.witness)?;
            }
        }
        Command::Sieve { input, emit_abnormal } => {
            let (m, fs) = input.load()?;
            sieve(&mut out, m, &fs, emit_abnormal.as_deref())?;
        }
        Command::Expand {
            input,
            out: path,
            budget,
            verify,
        } => {
            let (_, fs) = input.load()?;
            let total = match path {
                Some(p) => {
                    let file = fs::File::create(&p).with_context(|| format!("writing {}", p.display()))?;
                    let mut writer = BufWriter::new(file);
                    let total = expand_to(&mut writer, &fs, budget, verify)?;
                    writer.flush()?;
                    total
                }
                None => expand_to(&mut out, &fs, budget, verify)?,
            };
            if verify {
                info!("verified {total} expansions");
            }
        }
        Command::VerifyEa { input, cert } => {
            let (m, fs) = input.load()?;
            let [f, f2] = fs.as_slice() else {
                bail!("verify-ea needs exactly two functions, found {}", fs.len());
            };
            let cert = EACertificate::parse(m, &cert)?;
            match check_ea_certificate(f, f2, &cert)? {
                CertificateCheck::Equivalent => writeln!(out, "equivalent")?,
                CertificateCheck::Counterexample(x) => {
                    writeln!(out, "counterexample x={x:x}")?;
                    bail!("certificate does not map the first function to the second");
                }
            }
        }
        Command::Campaign {
            input,
            out: dir,
            stage,
            budget,
        } => campaign(input.as_deref(), &dir, stage, budget)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::FAILURE;
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
