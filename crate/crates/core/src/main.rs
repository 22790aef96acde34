//! Command-line front end: run either concentration protocol at a point,
//! sweep the branch coefficient and emit CSV or JSON lines, and run the
//! Fock-oracle verification suite.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ghz_ecp::elements::{apply_beam_splitter, BeamSplitterSpec};
use ghz_ecp::fock::{coherent_to_fock, fock_norm_squared, fock_overlap};
use ghz_ecp::protocol::{find_peak, run_protocol, sweep};
use ghz_ecp::state::coherent_overlap;
use ghz_ecp::{
    Error, ModeAmplitude, ModeLabel, ProtocolConfig, ProtocolKind, ProtocolReport,
    StateSuperposition, Term,
};

const EXIT_USAGE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "ghz-ecp", version, about = "Entanglement concentration of 3-mode GHZ-type entangled coherent states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the ancilla-assisted protocol at one parameter point
    Ecp1(EcpArgs),
    /// Run the two-copy protocol at one parameter point
    Ecp2(EcpArgs),
    /// Sweep the branch coefficient and emit one curve per alpha
    Sweep(SweepArgs),
    /// Cross-check the analytic core against the truncated-Fock oracle
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EcpArgs {
    /// Coherent amplitude
    #[arg(long)]
    alpha: f64,
    /// First branch coefficient; defaults to 1/sqrt(2), the peak point
    #[arg(long)]
    c1: Option<f64>,
    /// Second branch coefficient; defaults to sqrt(1 - c1^2)
    #[arg(long)]
    c2: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Protocol to sweep
    #[arg(long, value_parser = parse_protocol)]
    protocol: ProtocolKind,
    /// Comma-separated list of coherent amplitudes
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    /// Number of c1 samples, uniform in the open interval (0, 1)
    #[arg(long)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when omitted
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 60)]
    n_max: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    JsonLines,
}

fn parse_protocol(s: &str) -> Result<ProtocolKind, String> {
    match s {
        "1" => Ok(ProtocolKind::One),
        "2" => Ok(ProtocolKind::Two),
        other => Err(format!("protocol must be 1 or 2, got '{other}'")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ecp1(args) => cmd_ecp(ProtocolKind::One, &args),
        Command::Ecp2(args) => cmd_ecp(ProtocolKind::Two, &args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::EmptySelection { .. }
        | Error::DegenerateState(_)
        | Error::NonPositiveCoefficient(_) => EXIT_DEGENERATE,
        Error::InvalidConfig(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

/// Nine significant digits, locale-independent.
fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:+.6}{:+.6}i", z.re, z.im)
}

fn cmd_ecp(kind: ProtocolKind, args: &EcpArgs) -> Result<ExitCode, Error> {
    let c1 = args.c1.unwrap_or(std::f64::consts::FRAC_1_SQRT_2);
    let cfg = ProtocolConfig::new(args.alpha, c1, args.c2)?;
    match run_protocol(kind, &cfg) {
        Ok(report) => {
            print_report(kind, &cfg, &report);
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::EmptySelection { probability }) => {
            eprintln!(
                "post-selection kept no terms: success probability {probability} \
                 (degenerate coefficients c1={}, c2={})",
                cfg.c1, cfg.c2
            );
            Ok(ExitCode::from(EXIT_DEGENERATE))
        }
        Err(e) => Err(e),
    }
}

fn print_report(kind: ProtocolKind, cfg: &ProtocolConfig, report: &ProtocolReport) {
    println!(
        "protocol {kind}: alpha={}, c1={}, c2={}",
        cfg.alpha, cfg.c1, cfg.c2
    );
    for (name, state) in &report.stages {
        println!("\n== {name} ==");
        let modes: Vec<&str> = state.modes().iter().map(ModeLabel::name).collect();
        println!("modes: [{}]", modes.join(", "));
        for (i, t) in state.terms().iter().enumerate() {
            let amps: Vec<String> = t.amps.iter().map(|a| fmt_complex(a.value())).collect();
            println!("term {i}: coeff {}  amps [{}]", fmt_complex(t.coeff), amps.join(", "));
        }
    }
    println!();
    println!("paper_probability = {}", sig9(report.paper_probability));
    println!("exact_probability = {}", sig9(report.exact_probability));
    println!("final_fidelity    = {}", sig9(report.final_fidelity));
    println!(
        "amplitude_check   = {} (expected sqrt(2)*alpha = {})",
        sig9(report.amplitude_check),
        sig9(std::f64::consts::SQRT_2 * cfg.alpha)
    );
}

fn cmd_sweep(args: &SweepArgs) -> Result<ExitCode, Error> {
    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Error::InvalidConfig(format!("cannot open output '{path}': {e}"))
        })?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };

    if matches!(args.format, Format::Csv) {
        writeln!(out, "protocol,alpha,c1,c2,p_paper,p_exact,fidelity").map_err(io_internal)?;
    }
    for &alpha in &args.alpha {
        let rows = sweep(args.protocol, alpha, args.points)?;
        for r in &rows {
            match args.format {
                Format::Csv => writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    args.protocol,
                    sig9(alpha),
                    sig9(r.c1),
                    sig9(r.c2),
                    sig9(r.paper_probability),
                    sig9(r.exact_probability),
                    sig9(r.final_fidelity)
                )
                .map_err(io_internal)?,
                Format::JsonLines => {
                    let obj = serde_json::json!({
                        "protocol": args.protocol.to_string(),
                        "alpha": alpha,
                        "c1": r.c1,
                        "c2": r.c2,
                        "p_paper": r.paper_probability,
                        "p_exact": r.exact_probability,
                        "fidelity": r.final_fidelity,
                    });
                    writeln!(out, "{obj}").map_err(io_internal)?;
                }
            }
        }
        if matches!(args.format, Format::Csv) {
            let (c1, p) = find_peak(&rows)?;
            writeln!(out, "# peak alpha={} c1={} p={}", sig9(alpha), sig9(c1), sig9(p))
                .map_err(io_internal)?;
        }
    }
    out.flush().map_err(io_internal)?;
    Ok(ExitCode::SUCCESS)
}

fn io_internal(e: io::Error) -> Error {
    Error::InvalidConfig(format!("write failed: {e}"))
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, Error> {
    if args.trials < 1 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut ok = true;

    // analytic overlap vs truncated-Fock overlap on random amplitude pairs
    let mut max_overlap_dev: f64 = 0.0;
    let mut skipped = 0usize;
    let lim = std::f64::consts::SQRT_2; // componentwise bound keeping |alpha| <= 2
    for _ in 0..args.trials {
        let a = random_amp(&mut rng, lim);
        let b = random_amp(&mut rng, lim);
        let (va, vb) = match (coherent_to_fock(a, args.n_max), coherent_to_fock(b, args.n_max)) {
            (Ok(va), Ok(vb)) => (va, vb),
            _ => {
                skipped += 1;
                continue;
            }
        };
        let dev = (fock_overlap(&va, &vb)? - coherent_overlap(a, b)).norm();
        max_overlap_dev = max_overlap_dev.max(dev);
    }
    let overlap_pass = max_overlap_dev < 1e-10;
    ok &= overlap_pass;
    println!(
        "overlap agreement : max deviation {} over {} trials ({} refused by tail bound) .. {}",
        sig9(max_overlap_dev),
        args.trials,
        skipped,
        pass(overlap_pass)
    );

    // Gram-based norms of single-mode superpositions vs Fock expansion
    let norm_trials = (args.trials / 4).max(1);
    let mut max_norm_dev: f64 = 0.0;
    let mut norm_skipped = 0usize;
    for _ in 0..norm_trials {
        let n_terms = rng.gen_range(1..=4);
        let terms: Vec<Term> = (0..n_terms)
            .map(|_| {
                Term::real(rng.gen_range(-1.0..1.0), vec![random_amp(&mut rng, lim)])
            })
            .collect();
        let s = StateSuperposition::new(vec![ModeLabel::from("m")], terms)?;
        match fock_norm_squared(&s, args.n_max) {
            Ok(fock) => {
                let dev = (fock - s.norm_squared()?).abs();
                max_norm_dev = max_norm_dev.max(dev);
            }
            Err(Error::FockTruncation { .. }) => norm_skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let norm_pass = max_norm_dev < 1e-9;
    ok &= norm_pass;
    println!(
        "norm agreement    : max deviation {} over {} trials ({} refused by tail bound) .. {}",
        sig9(max_norm_dev),
        norm_trials,
        norm_skipped,
        pass(norm_pass)
    );

    // beam-splitter unitarity: full Gram matrix preserved entrywise
    let bs_trials = (args.trials / 2).max(1);
    let mut max_gram_dev: f64 = 0.0;
    let spec = BeamSplitterSpec::new("p", "q", "r", "s");
    for _ in 0..bs_trials {
        let n_terms = rng.gen_range(1..=4);
        let terms: Vec<Term> = (0..n_terms)
            .map(|_| {
                Term::real(
                    rng.gen_range(-1.0..1.0),
                    vec![random_amp(&mut rng, lim), random_amp(&mut rng, lim)],
                )
            })
            .collect();
        let s = StateSuperposition::new(
            vec![ModeLabel::from("p"), ModeLabel::from("q")],
            terms,
        )?;
        let before = s.gram()?;
        let after = apply_beam_splitter(&s, &spec)?.gram()?;
        for i in 0..before.dim() {
            for j in 0..before.dim() {
                let dev = (before.entry(i, j) - after.entry(i, j)).norm();
                max_gram_dev = max_gram_dev.max(dev);
            }
        }
    }
    let bs_pass = max_gram_dev < 1e-12;
    ok &= bs_pass;
    println!(
        "BS unitarity      : max Gram deviation {} over {} trials .. {}",
        sig9(max_gram_dev),
        bs_trials,
        pass(bs_pass)
    );

    if ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_INTERNAL))
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn random_amp(rng: &mut ChaCha8Rng, lim: f64) -> ModeAmplitude {
    let z = Complex64::new(rng.gen_range(-lim..lim), rng.gen_range(-lim..lim));
    ModeAmplitude::new(z).expect("finite amplitude")
}
