use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sperner_kkm::fixedpoint::MapRegistry;
use sperner_kkm::rational::parse_list;
use sperner_kkm::{
    approximate_fixed_point, build_cover, extract_cl_simplex, find_completely_labeled, fixture,
    intersection_point, labeling_from_map, member, naive_cover_check, random_sperner_labeling,
    read_instance, render_svg, validate_labeling, verify_covering_certificate,
    verify_covering_sampled, write_instance, BPoint, Error, FaceIndexSet, KKMCover, Labeling,
    Membership, SchemeParams, SchemeRegistry, Subdivision, SvgOptions, ValidationMode,
    ValidationReport,
};

#[derive(Parser)]
#[command(
    name = "sperner-kkm",
    version,
    about = "Exact Sperner labelings and KKM covers of the unit simplex"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Instance document to read ("-" for stdin).
    #[arg(short, long, default_value = "-")]
    input: String,
    /// Write output here instead of stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OutOnly {
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Fast,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    Fig1,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a subdivision of the simplex.
    GenSubdivision {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "edgewise")]
        scheme: String,
        /// Barycentric refinement passes (barycentric scheme only).
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[command(flatten)]
        out: OutOnly,
    },
    /// Attach a Sperner labeling to an instance.
    #[command(group(ArgGroup::new("rule").required(true).args(["seed", "map"])))]
    Label {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        map: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Validate the subdivision (and its labels, when present).
    Validate {
        #[arg(long, value_enum, default_value = "fast")]
        mode: Mode,
        #[command(flatten)]
        io: Io,
    },
    /// List completely labeled cells.
    FindCl {
        #[command(flatten)]
        io: Io,
    },
    /// Emit the cover sets C_1..C_n.
    BuildCover {
        #[command(flatten)]
        io: Io,
    },
    /// Decide membership of a point in C_label.
    Member {
        #[arg(long)]
        label: usize,
        /// Comma-separated rationals, e.g. 1/2,0,1/2.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        io: Io,
    },
    /// Check the covering condition by certificate or by grid sampling.
    #[command(group(ArgGroup::new("how").required(true).args(["cert", "sample"])))]
    VerifyCover {
        #[arg(long)]
        cert: bool,
        #[arg(long)]
        sample: bool,
        /// Face index set for sampling, e.g. 1,2.
        #[arg(long = "J", requires = "sample")]
        face: Option<String>,
        #[arg(long, requires = "sample")]
        denom: Option<u32>,
        /// Cover document to check instead of rebuilding it from the instance.
        #[arg(long)]
        cover: Option<PathBuf>,
        #[command(flatten)]
        io: Io,
    },
    /// A point in every C_i, with witnesses.
    Intersect {
        #[command(flatten)]
        io: Io,
    },
    /// Recover a completely labeled cell from a point of the intersection.
    Extract {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        io: Io,
    },
    /// Vertices in every naive set D_i but in no completely labeled cell.
    NaiveCheck {
        #[command(flatten)]
        io: Io,
    },
    /// Approximate a fixed point of a built-in map.
    Fixpoint {
        #[arg(long)]
        map: String,
        /// Increasing resolutions, e.g. 2,4,8.
        #[arg(long)]
        schedule: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        out: OutOnly,
    },
    /// Render an n = 3 instance as SVG.
    RenderSvg {
        /// Shade the pieces of C_i.
        #[arg(long)]
        overlay: Option<usize>,
        #[arg(long, default_value_t = 400.0)]
        width: f64,
        #[command(flatten)]
        io: Io,
    },
    /// Emit a built-in instance.
    Fixture {
        #[arg(value_enum)]
        name: FixtureName,
        #[command(flatten)]
        out: OutOnly,
    },
}

enum Failure {
    Usage(String),
    Invalid {
        message: String,
        payload: Option<String>,
    },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::UnknownStrategy { .. }
            | Error::LabelOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Invalid {
                payload: e.report().map(to_json),
                message: e.to_string(),
            },
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid {
            message: e.to_string(),
            payload: None,
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types always serialize")
}

fn read_input(path: &str) -> CliResult<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = fs::read_to_string(path)?;
    }
    Ok(text)
}

fn emit(out: Option<&PathBuf>, text: &str) -> CliResult {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load(io: &Io) -> CliResult<(Subdivision, Option<Labeling>)> {
    Ok(read_instance(&read_input(&io.input)?)?)
}

fn load_labeled(io: &Io) -> CliResult<(Subdivision, Labeling)> {
    match load(io)? {
        (sub, Some(lab)) => Ok((sub, lab)),
        (_, None) => Err(Failure::Invalid {
            message: "instance has no labels; run `label` first".into(),
            payload: None,
        }),
    }
}

fn parse_point(s: &str) -> CliResult<BPoint> {
    let coords = parse_list(s).map_err(|e| Failure::Usage(e.to_string()))?;
    BPoint::new(coords).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_usizes(s: &str, what: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("invalid {what} entry {t:?}")))
        })
        .collect()
}

/// Emits a report and fails with exit status 1 when it did not pass.
fn emit_report(out: Option<&PathBuf>, reports: &[ValidationReport]) -> CliResult {
    let text = reports.iter().map(to_json).collect::<Vec<_>>().join("\n");
    emit(out, &text)?;
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Invalid {
            message: "validation failed".into(),
            payload: None,
        })
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::GenSubdivision {
            n,
            m,
            scheme,
            depth,
            out,
        } => {
            let registry = SchemeRegistry::with_builtins();
            let sub = registry
                .get(&scheme)?
                .generate(n, &SchemeParams { m, depth })?;
            emit(out.out.as_ref(), &write_instance(&sub, None))
        }
        Command::Label { seed, map, io } => {
            let (sub, _) = load(&io)?;
            sub.require_valid()?;
            let labeling = match (seed, map) {
                (Some(seed), _) => random_sperner_labeling(&sub, seed),
                (None, Some(name)) => {
                    let registry = MapRegistry::with_builtins();
                    let map = registry.get(&name)?;
                    labeling_from_map(&sub, |x| sperner_kkm::fixedpoint::apply(map, x))?
                }
                (None, None) => unreachable!("clap enforces one labeling rule"),
            };
            emit(io.out.as_ref(), &write_instance(&sub, Some(&labeling)))
        }
        Command::Validate { mode, io } => {
            let (sub, labeling) = load(&io)?;
            let mode = match mode {
                Mode::Fast => ValidationMode::Fast,
                Mode::Full => ValidationMode::Full,
            };
            let mut reports = vec![sub.validate(mode)];
            if let Some(lab) = &labeling {
                reports.push(validate_labeling(&sub, lab));
            }
            emit_report(io.out.as_ref(), &reports)
        }
        Command::FindCl { io } => {
            let (sub, lab) = load_labeled(&io)?;
            let report = find_completely_labeled(&sub, &lab)?;
            emit(io.out.as_ref(), &to_json(&report))
        }
        Command::BuildCover { io } => {
            let (sub, lab) = load_labeled(&io)?;
            let cover = build_cover(&sub, &lab)?;
            emit(io.out.as_ref(), &to_json(&cover))
        }
        Command::Member { label, point, io } => {
            let (sub, lab) = load_labeled(&io)?;
            let x = parse_point(&point)?;
            let cover = build_cover(&sub, &lab)?;
            let value = match member(&cover, &sub, label, &x)? {
                Membership::Member(w) => json!({"member": true, "witness": w}),
                Membership::NotMember => json!({"member": false, "label": label}),
            };
            emit(io.out.as_ref(), &value.to_string())
        }
        Command::VerifyCover {
            cert,
            sample: _,
            face,
            denom,
            cover,
            io,
        } => {
            let (sub, lab) = load_labeled(&io)?;
            let cover: KKMCover = match cover {
                Some(path) => {
                    let mut cover: KKMCover = serde_json::from_str(&fs::read_to_string(path)?)
                        .map_err(|e| Failure::Invalid {
                            message: format!("malformed cover document: {e}"),
                            payload: None,
                        })?;
                    cover.normalize();
                    cover
                }
                None => build_cover(&sub, &lab)?,
            };
            let report = if cert {
                verify_covering_certificate(&cover, &sub, &lab)
            } else {
                let face = face.ok_or_else(|| Failure::Usage("--sample needs --J".into()))?;
                let denom = denom.ok_or_else(|| Failure::Usage("--sample needs --denom".into()))?;
                let face = FaceIndexSet::new(parse_usizes(&face, "--J")?, sub.n())?;
                verify_covering_sampled(&cover, &sub, &face, denom)
            };
            emit_report(io.out.as_ref(), &[report])
        }
        Command::Intersect { io } => {
            let (sub, lab) = load_labeled(&io)?;
            let (x, witnesses) = intersection_point(&sub, &lab)?;
            emit(
                io.out.as_ref(),
                &json!({"point": x, "witnesses": witnesses}).to_string(),
            )
        }
        Command::Extract { point, io } => {
            let (sub, lab) = load_labeled(&io)?;
            let x = parse_point(&point)?;
            let cover = build_cover(&sub, &lab)?;
            match extract_cl_simplex(&cover, &sub, &lab, &x) {
                Ok(cell) => emit(io.out.as_ref(), &json!({ "cell": cell }).to_string()),
                Err(Error::NotInIntersection(label)) => Err(Failure::Invalid {
                    message: format!("point is not in C_{label}"),
                    payload: Some(
                        json!({"error": "not-in-intersection", "label": label}).to_string(),
                    ),
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::NaiveCheck { io } => {
            let (sub, lab) = load_labeled(&io)?;
            let report = naive_cover_check(&sub, &lab)?;
            emit(io.out.as_ref(), &to_json(&report))
        }
        Command::Fixpoint {
            map,
            schedule,
            n,
            out,
        } => {
            let registry = MapRegistry::with_builtins();
            let map = registry.get(&map)?;
            let schedule = parse_usizes(&schedule, "--schedule")?;
            let trace = approximate_fixed_point(map, n, &schedule)?;
            let lines: Vec<String> = trace.iter().map(to_json).collect();
            emit(out.out.as_ref(), &lines.join("\n"))
        }
        Command::RenderSvg { overlay, width, io } => {
            let (sub, lab) = load(&io)?;
            sub.require_valid()?;
            let options = SvgOptions {
                width,
                overlay,
                ..SvgOptions::default()
            };
            let svg = render_svg(&sub, lab.as_ref(), &options)?;
            emit(io.out.as_ref(), &svg)
        }
        Command::Fixture { name, out } => match name {
            FixtureName::Fig1 => {
                let (sub, lab) = fixture::fig1();
                emit(out.out.as_ref(), &write_instance(&sub, Some(&lab)))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid { message, payload }) => {
            if let Some(payload) = payload {
                println!("{payload}");
            }
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
