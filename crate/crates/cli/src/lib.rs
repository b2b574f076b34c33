//! Command-line front end for `quadrille`.
//!
//! Exit codes: `0` when every check passed, `1` when a verification failed,
//! `2` for usage and input-validation errors. Results go to standard output,
//! diagnostics to standard error. All integers in JSON are decimal strings.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use quadrille::lattice::{lambda_colour, DeltaWord, EdgeRef, VertexCoord};
use quadrille::odometer::{
    coset_profile, embedding_suite, group_axiom_suite, in_kernel, induced_permutation, verify_virtually_abelian,
    OdometerElement, OdometerParams, SuiteReport,
};
use quadrille::verify::{
    homogeneity_report, validate_certificate, validate_homogeneity, verify_aperiodicity, verify_free_subgroup,
    verify_nontrivial_action, WitnessCertificate,
};
use quadrille::Error;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

pub const MAX_RENDER_RADIUS: u64 = 64;

#[derive(Parser, Debug)]
#[command(name = "quadrille", version, about = "Certificates for a minimal Z²-subshift and its full group")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Draw a square window of λ.
    Render {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        x: BigInt,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        y: BigInt,
        #[arg(long, default_value_t = 4)]
        radius: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Certify that a reduced word over A, B, C moves some point.
    Witness {
        #[arg(long, required_unless_present = "check", conflicts_with = "check")]
        word: Option<String>,
        /// Re-validate a certificate previously emitted with `--format json`.
        #[arg(long, value_name = "FILE")]
        check: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Certify the images of all free-group words up to a length.
    VerifyFree {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Certify that no nonzero translation with |t|∞ ≤ range is a period of λ.
    Aperiodic {
        #[arg(long, default_value_t = 16)]
        range: u64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Measure recurrence radii of window patterns and re-check them.
    Homogeneity {
        #[arg(long, default_value_t = 1)]
        pattern_radius: u64,
        #[arg(long, default_value_t = 64)]
        search_radius: u64,
        /// Region for the independent re-check; defaults to the search radius.
        #[arg(long)]
        validate_radius: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Run the sampled group-structure suites on the p-adic odometer.
    OdometerVerify {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also report on an element read from a JSON file.
        #[arg(long, value_name = "FILE")]
        element: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

/// How a run ended, before conversion to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::CertificateRejected(_) | Error::ConstructionBug(_) | Error::PatternAbsent(_) => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--jobs must be positive".into())),
        Some(n) => {
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn emit_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Render { x, y, radius, format } => render(VertexCoord { x, y }, radius, format, out),
        Command::Witness { word, check, format } => match (word, check) {
            (_, Some(path)) => check_witness(&path, format, out),
            (Some(word), None) => witness(&word, format, out),
            (None, None) => Err(Failure::Usage("one of --word or --check is required".into())),
        },
        Command::VerifyFree { max_len, jobs, format } => verify_free(max_len, jobs, format, out),
        Command::Aperiodic { range, jobs, format } => aperiodic(range, jobs, format, out),
        Command::Homogeneity { pattern_radius, search_radius, validate_radius, format } => {
            homogeneity(pattern_radius, search_radius, validate_radius.unwrap_or(search_radius), format, out)
        }
        Command::OdometerVerify { p, n, samples, seed, element, format } => {
            odometer_verify(p, n, samples, seed, element, format, out)
        }
    }
}

/// A `4·radius + 1`-line picture of `λ` around `center`, top row first.
///
/// Vertex rows alternate `+` with horizontal-edge letters; between them, the
/// vertical-edge letters sit under each `+`, separated by spaces.
///
/// ```
/// use quadrille::lattice::VertexCoord;
/// let art = quadrille_cli::render_ascii(&VertexCoord::new(1, 0), 1);
/// let lines: Vec<&str> = art.lines().collect();
/// assert_eq!(lines.len(), 5);
/// assert_eq!(lines[2], "+E+F+");
/// ```
pub fn render_ascii(center: &VertexCoord, radius: u64) -> String {
    let r = radius as i64;
    let mut lines = Vec::with_capacity(4 * radius as usize + 1);
    for dy in (-r..=r).rev() {
        let y = &center.y + dy;
        if dy < r {
            let verticals: Vec<String> =
                (-r..=r).map(|dx| lambda_colour(&EdgeRef::vertical(&center.x + dx, y.clone())).to_string()).collect();
            lines.push(verticals.join(" "));
        }
        let mut row = String::from("+");
        for dx in -r..r {
            row.push(lambda_colour(&EdgeRef::horizontal(&center.x + dx, y.clone())).as_char());
            row.push('+');
        }
        lines.push(row);
    }
    let mut text = lines.join("\n");
    text.push('\n');
    text
}

fn render(center: VertexCoord, radius: u64, format: OutputFormat, out: &mut dyn Write) -> Outcome {
    if radius > MAX_RENDER_RADIUS {
        return Err(Failure::Usage(format!("radius {radius} exceeds {MAX_RENDER_RADIUS}")));
    }
    let art = render_ascii(&center, radius);
    match format {
        OutputFormat::Text => out.write_all(art.as_bytes())?,
        OutputFormat::Json => emit_json(
            out,
            &json!({"center": center, "radius": radius.to_string(), "lines": art.lines().collect::<Vec<_>>()}),
        )?,
    }
    Ok(true)
}

fn parse_word(word: &str) -> Result<DeltaWord, Failure> {
    let w: DeltaWord = word.parse()?;
    if w.is_empty() {
        return Err(Error::EmptyWord.into());
    }
    Ok(w)
}

fn write_certificate(cert: &WitnessCertificate, format: OutputFormat, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        OutputFormat::Json => emit_json(out, cert),
        OutputFormat::Text => {
            writeln!(out, "word               {}", cert.word)?;
            writeln!(out, "index              {}", cert.index)?;
            writeln!(out, "witness            {}", cert.witness)?;
            writeln!(out, "displacement       {}", cert.displacement)?;
            writeln!(out, "h_bound            {}", cert.h_bound)?;
            writeln!(out, "final up edge      {}", cert.final_up_edge)?;
            writeln!(out, "differs from start {}", cert.differs_from_start)?;
            Ok(())
        }
    }
}

fn witness(word: &str, format: OutputFormat, out: &mut dyn Write) -> Outcome {
    let cert = verify_nontrivial_action(&parse_word(word)?)?;
    validate_certificate(&cert)?;
    write_certificate(&cert, format, out)?;
    Ok(true)
}

fn check_witness(path: &PathBuf, format: OutputFormat, out: &mut dyn Write) -> Outcome {
    let text = fs::read_to_string(path)?;
    let cert: WitnessCertificate =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    validate_certificate(&cert)?;
    match format {
        OutputFormat::Text => writeln!(out, "certificate for {} is valid", cert.word)?,
        OutputFormat::Json => emit_json(out, &json!({"word": cert.word, "valid": true}))?,
    }
    Ok(true)
}

fn verify_free(max_len: usize, jobs: Option<usize>, format: OutputFormat, out: &mut dyn Write) -> Outcome {
    let summary = with_jobs(jobs, || verify_free_subgroup(max_len))??;
    match format {
        OutputFormat::Json => emit_json(out, &summary)?,
        OutputFormat::Text => {
            writeln!(out, "certified {} free-group words of length ≤ {}", summary.words_checked, summary.max_len)?;
            for (len, count) in summary.per_length.iter().enumerate() {
                writeln!(out, "  length {:>2}: {count}", len + 1)?;
            }
            writeln!(
                out,
                "longest image {}, widest witness column 2^{}",
                summary.longest_image, summary.max_witness_log2
            )?;
        }
    }
    Ok(true)
}

fn aperiodic(range: u64, jobs: Option<usize>, format: OutputFormat, out: &mut dyn Write) -> Outcome {
    let certs = with_jobs(jobs, || verify_aperiodicity(range))??;
    for cert in &certs {
        cert.validate()?;
    }
    match format {
        OutputFormat::Json => emit_json(
            out,
            &json!({"range": range.to_string(), "count": certs.len().to_string(), "certificates": certs}),
        )?,
        OutputFormat::Text => {
            for c in &certs {
                writeln!(
                    out,
                    "t = {}: {} is {} but {} after the shift",
                    c.translation, c.witness_edge, c.colour_at, c.colour_shifted
                )?;
            }
            writeln!(out, "{} translations certified", certs.len())?;
        }
    }
    Ok(true)
}

fn homogeneity(
    pattern_radius: u64,
    search_radius: u64,
    validate_radius: u64,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Outcome {
    let report = homogeneity_report(pattern_radius, search_radius)?;
    let validation = validate_homogeneity(&report, validate_radius)?;
    match format {
        OutputFormat::Json => emit_json(out, &json!({"report": report, "validation": validation}))?,
        OutputFormat::Text => {
            writeln!(
                out,
                "{} patterns of radius {} in the radius-{} square, max f̂ {}",
                report.entries.len(),
                pattern_radius,
                search_radius,
                report.max_f_hat()
            )?;
            for (pattern, f_hat) in &report.entries {
                writeln!(out, "  {:>4}  {}", f_hat, pattern.to_compact())?;
            }
            writeln!(
                out,
                "re-checked over radius {}: {} vertices, {} violations",
                validation.region_radius,
                validation.vertices_checked,
                validation.violations.len()
            )?;
            for v in &validation.violations {
                writeln!(out, "  {v}")?;
            }
        }
    }
    Ok(validation.passed())
}

fn odometer_verify(
    p: u32,
    n: u32,
    samples: u64,
    seed: u64,
    element: Option<PathBuf>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Outcome {
    let params = OdometerParams::new(p, n)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let structure = verify_virtually_abelian(params, samples, &mut rng)?;
    let axioms = group_axiom_suite(params, samples, &mut rng)?;
    let embedding = embedding_suite(params, samples, &mut rng)?;

    let element_report = match element {
        None => None,
        Some(path) => {
            let text = fs::read_to_string(&path)?;
            let e: OdometerElement =
                serde_json::from_str(&text).map_err(|err| Failure::Usage(format!("{}: {err}", path.display())))?;
            let permutation = induced_permutation(&e)?;
            let profile = coset_profile(&e)?;
            Some(json!({
                "p": e.params().p,
                "n": e.params().n,
                "permutation": permutation.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "residues": profile.residues.iter().map(|(k, l)| [k.to_string(), l.to_string()]).collect::<Vec<_>>(),
                "in_kernel": in_kernel(&e),
            }))
        }
    };

    let suites: [&SuiteReport; 5] =
        [&structure.kernel_commutation, &structure.normality, &structure.coset_characterisation, &axioms, &embedding];
    let passed = suites.iter().all(|s| s.passed());
    match format {
        OutputFormat::Json => emit_json(
            out,
            &json!({
                "params": {"p": p, "n": n},
                "seed": seed.to_string(),
                "virtually_abelian": structure,
                "group_axioms": axioms,
                "embedding": embedding,
                "element": element_report,
                "passed": passed,
            }),
        )?,
        OutputFormat::Text => {
            writeln!(
                out,
                "odometer p = {p}, depth n = {n}, {} cylinders",
                quadrille::odometer::cylinder_count(params)
            )?;
            for s in suites {
                let status = if s.passed() { "ok" } else { "FAILED" };
                writeln!(out, "  {:<32} {:>6} checks  {status}", s.name, s.checks)?;
                for f in &s.failures {
                    writeln!(out, "    {f}")?;
                }
            }
            writeln!(out, "index of Kₙ is at most {}", structure.quotient_bound)?;
            if let Some(e) = element_report {
                writeln!(out, "element: {e}")?;
            }
        }
    }
    Ok(passed)
}
