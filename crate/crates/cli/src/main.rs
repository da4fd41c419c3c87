//! Command-line front end: knot codecs, surgery groups, group
//! identification, and Morse level-set exports.
//!
//! Exit codes: 0 success, 2 input or parse error, 3 computation
//! inconclusive (coset bound reached), 4 internal invariant violation.
//! Errors print a single machine-parsable line `ERROR <code>: ...` on
//! stderr.

mod config;
mod io;

use clap::{Args, Parser, Subcommand};
use config::Config;
use io::{parse_cloud_csv, parse_diagram, parse_presentation, read_input, render_cloud_csv};
use surgery_core::analysis::{
    count_homs_with_budget, count_surjections, distinguish, todd_coxeter, verdict_to_json,
    EnumerationResult,
};
use surgery_core::group::Presentation;
use surgery_core::morse::{
    count_components, default_link_radius, revolve, sample_level_set_seeded,
    stereographic_inverse, stereographic_project, surgery_sequence_seeded, to_csv, to_json,
    to_obj, MorseForm,
};
use surgery_core::surgery::{framed_longitude, surgery_group, wirtinger, SurgerySpec};

pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn inconclusive(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(
    name = "surgery",
    about = "Knot diagrams, surgery groups, and Morse level-set geometry",
    version
)]
struct Cli {
    /// Configuration file with key=value lines (seed, max_cosets,
    /// resolution, hom_budget); flags override it.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Seed for randomized sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Knot diagram parsing and transforms
    #[command(subcommand)]
    Knot(KnotCommand),
    /// Knot groups, longitudes, surgery quotients, identification
    #[command(subcommand)]
    Group(GroupCommand),
    /// Morse forms, level sets, and geometry exports
    #[command(subcommand)]
    Morse(MorseCommand),
}

#[derive(Args)]
struct InputArg {
    /// Input file; stdin when omitted or `-`
    file: Option<String>,
}

#[derive(Subcommand)]
enum KnotCommand {
    /// Parse a Gauss code, PD code, or JSON diagram and emit JSON
    Parse(InputArg),
    /// Validate a diagram and report its shape
    Validate(InputArg),
    /// Print the writhe (blackboard framing number)
    Writhe(InputArg),
    /// Print the canonical signed Gauss code
    Canon(InputArg),
}

#[derive(clap::ValueEnum, Clone, Copy, PartialEq)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Wirtinger presentation of the knot group
    Wirtinger {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Longitude word (blackboard framing unless --framing is given)
    Longitude {
        #[command(flatten)]
        input: InputArg,
        /// Integer framing; defaults to the writhe
        #[arg(long)]
        framing: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Fundamental group of the surgered manifold
    Surgery {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        framing: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Abelianization (first homology) of a presentation
    Abelianize(InputArg),
    /// Group order by coset enumeration
    Order {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Count homomorphisms into a symmetric group
    Homs {
        #[command(flatten)]
        input: InputArg,
        /// Degree n of the symmetric group S_n
        #[arg(long)]
        sym: usize,
        /// Count only surjections
        #[arg(long)]
        surjections: bool,
        /// Apply Tietze elimination before counting
        #[arg(long)]
        eliminate: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compare two presentations by an invariant battery
    Distinguish { left: String, right: String },
}

#[derive(Args)]
struct FormArgs {
    /// Ambient dimension of the handle disc
    #[arg(long)]
    dim: usize,
    /// Morse index (number of negative squares)
    #[arg(long)]
    index: usize,
    /// Run the dual (time-reversed) process
    #[arg(long)]
    time_reversed: bool,
}

impl FormArgs {
    fn build(&self) -> Result<MorseForm, CliError> {
        let form = MorseForm::new(self.dim, self.index)
            .map_err(|e| CliError::input(e.to_string()))?;
        Ok(if self.time_reversed { form.reversed() } else { form })
    }
}

#[derive(clap::ValueEnum, Clone, Copy, PartialEq)]
enum ExportFormat {
    Csv,
    Obj,
    Json,
}

#[derive(Subcommand)]
enum MorseCommand {
    /// Evaluate the Morse form at a point
    Eval {
        #[command(flatten)]
        form: FormArgs,
        /// Comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Gradient of the Morse form at a point
    Grad {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Morse index from the Hessian eigenvalues
    Index {
        #[command(flatten)]
        form: FormArgs,
    },
    /// Compare the analytic gradient with central differences
    GradCheck {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value = "1e-5")]
        step: f64,
    },
    /// Sample level sets at given t values
    Levels {
        #[command(flatten)]
        form: FormArgs,
        /// Comma-separated level values in (-1, 1)
        #[arg(long, allow_hyphen_values = true)]
        t_list: String,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: ExportFormat,
    },
    /// Sample the temporal evolution over a uniform t grid
    Sequence {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, allow_negative_numbers = true)]
        t_from: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_to: f64,
        #[arg(long)]
        t_steps: usize,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: ExportFormat,
    },
    /// Count connected components of a point cloud
    Components {
        #[command(flatten)]
        input: InputArg,
        /// Linking radius; 2x the largest nearest-neighbor gap if omitted
        #[arg(long)]
        link_radius: Option<f64>,
    },
    /// Stereographic projection of a sphere cloud (or its inverse)
    ProjectStereo {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated pole coordinates
        #[arg(long, allow_hyphen_values = true)]
        pole: String,
        /// Lift a plane cloud back to the sphere instead
        #[arg(long)]
        inverse: bool,
    },
    /// Surface of revolution of a point cloud
    Revolve {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated coordinate indices that stay fixed
        #[arg(long)]
        fixed_axes: String,
        #[arg(long)]
        steps: usize,
        /// Twist angle in radians, graded along the first fixed axis
        #[arg(long, default_value = "0", allow_negative_numbers = true)]
        twist: f64,
        /// Revolve through 2π instead of the half turn
        #[arg(long)]
        full_turn: bool,
    },
}

fn parse_floats(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::input(format!("not a number: {s:?}")))
        })
        .collect()
}

fn parse_indices(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::input(format!("not an index: {s:?}")))
        })
        .collect()
}

fn run(cli: Cli) -> CliResult {
    let config = Config::load(cli.config.as_deref(), cli.seed)?;
    match cli.command {
        Command::Knot(cmd) => run_knot(cmd),
        Command::Group(cmd) => run_group(cmd, &config),
        Command::Morse(cmd) => run_morse(cmd, &config),
    }
}

fn run_knot(cmd: KnotCommand) -> CliResult {
    match cmd {
        KnotCommand::Parse(input) => {
            let d = parse_diagram(&read_input(input.file.as_deref())?)?;
            println!("{}", d.to_json());
        }
        KnotCommand::Validate(input) => {
            let d = parse_diagram(&read_input(input.file.as_deref())?)?;
            println!(
                "ok: {} crossings, {} arcs, writhe {}",
                d.crossing_count(),
                d.arc_count(),
                d.writhe()
            );
        }
        KnotCommand::Writhe(input) => {
            let d = parse_diagram(&read_input(input.file.as_deref())?)?;
            println!("{}", d.writhe());
        }
        KnotCommand::Canon(input) => {
            let d = parse_diagram(&read_input(input.file.as_deref())?)?;
            println!("{}", d.canonical_gauss());
        }
    }
    Ok(())
}

fn emit_presentation(p: &Presentation, format: TextOrJson) {
    match format {
        TextOrJson::Text => println!("{p}"),
        TextOrJson::Json => println!("{}", p.to_json()),
    }
}

fn abelianization_json(p: &Presentation) -> String {
    let inv = p.abelianize();
    let torsion: Vec<String> = inv.torsion.iter().map(|d| d.to_string()).collect();
    format!(
        "{{\"free_rank\":{},\"torsion\":[{}]}}",
        inv.free_rank,
        torsion.join(",")
    )
}

fn run_group(cmd: GroupCommand, config: &Config) -> CliResult {
    match cmd {
        GroupCommand::Wirtinger { input, format } => {
            let d = parse_diagram(&read_input(input.file.as_deref())?)?;
            emit_presentation(&wirtinger(&d), format);
        }
        GroupCommand::Longitude {
            input,
            framing,
            format,
        } => {
            let d = parse_diagram(&read_input(input.file.as_deref())?)?;
            let framing = framing.unwrap_or_else(|| d.writhe());
            let longitude = framed_longitude(&d, framing);
            let group = wirtinger(&d);
            let word = group.word_to_text(&longitude.word);
            match format {
                TextOrJson::Text => println!("{word}"),
                TextOrJson::Json => println!(
                    "{{\"exponent_sum\":{},\"word\":\"{}\"}}",
                    longitude.exponent_sum, word
                ),
            }
        }
        GroupCommand::Surgery {
            input,
            framing,
            format,
        } => {
            let d = parse_diagram(&read_input(input.file.as_deref())?)?;
            let group = surgery_group(&SurgerySpec {
                diagram: d,
                framing,
            });
            emit_presentation(&group, format);
        }
        GroupCommand::Abelianize(input) => {
            let p = parse_presentation(&read_input(input.file.as_deref())?)?;
            println!("{}", abelianization_json(&p));
        }
        GroupCommand::Order { input, max_cosets } => {
            let p = parse_presentation(&read_input(input.file.as_deref())?)?;
            let bound = max_cosets.unwrap_or(config.max_cosets);
            let result = todd_coxeter(&p, bound);
            println!("{}", result.to_json());
            if matches!(result, EnumerationResult::Inconclusive { .. }) {
                return Err(CliError::inconclusive(format!(
                    "coset enumeration did not close within {bound} cosets"
                )));
            }
        }
        GroupCommand::Homs {
            input,
            sym,
            surjections,
            eliminate,
            budget,
        } => {
            let mut p = parse_presentation(&read_input(input.file.as_deref())?)?;
            if eliminate {
                p = p.tietze_eliminate();
            }
            let count = if surjections {
                count_surjections(&p, sym)
            } else {
                count_homs_with_budget(&p, sym, budget.unwrap_or(config.hom_budget))
            }
            .map_err(|e| CliError::input(e.to_string()))?;
            println!("{count}");
        }
        GroupCommand::Distinguish { left, right } => {
            let p1 = parse_presentation(&read_input(Some(&left))?)?;
            let p2 = parse_presentation(&read_input(Some(&right))?)?;
            println!("{}", verdict_to_json(&distinguish(&p1, &p2)));
        }
    }
    Ok(())
}

fn run_morse(cmd: MorseCommand, config: &Config) -> CliResult {
    let morse_err = |e: surgery_core::morse::MorseError| CliError::input(e.to_string());
    match cmd {
        MorseCommand::Eval { form, point } => {
            let form = form.build()?;
            let x = parse_floats(&point)?;
            println!("{}", form.evaluate(&x).map_err(morse_err)?);
        }
        MorseCommand::Grad { form, point } => {
            let form = form.build()?;
            let x = parse_floats(&point)?;
            let g = form.gradient(&x).map_err(morse_err)?;
            let parts: Vec<String> = g.iter().map(|v| v.to_string()).collect();
            println!("{}", parts.join(","));
        }
        MorseCommand::Index { form } => {
            println!("{}", form.build()?.hessian_index());
        }
        MorseCommand::GradCheck { form, point, step } => {
            let form = form.build()?;
            let x = parse_floats(&point)?;
            println!("{:e}", form.gradient_check(&x, step).map_err(morse_err)?);
        }
        MorseCommand::Levels {
            form,
            t_list,
            resolution,
            format,
        } => {
            let form = form.build()?;
            let ts = parse_floats(&t_list)?;
            let resolution = resolution.unwrap_or(config.resolution);
            let samples: Result<Vec<_>, _> = ts
                .iter()
                .map(|&t| sample_level_set_seeded(&form, t, resolution, config.seed))
                .collect();
            export(&samples.map_err(morse_err)?, format)?;
        }
        MorseCommand::Sequence {
            form,
            t_from,
            t_to,
            t_steps,
            resolution,
            format,
        } => {
            let form = form.build()?;
            if t_steps == 0 {
                return Err(CliError::input("t-steps must be at least 1"));
            }
            let grid: Vec<f64> = (0..t_steps)
                .map(|k| {
                    if t_steps == 1 {
                        t_from
                    } else {
                        t_from + (t_to - t_from) * k as f64 / (t_steps - 1) as f64
                    }
                })
                .collect();
            let resolution = resolution.unwrap_or(config.resolution);
            let samples = surgery_sequence_seeded(&form, &grid, resolution, config.seed)
                .map_err(morse_err)?;
            export(&samples, format)?;
        }
        MorseCommand::Components { input, link_radius } => {
            let cloud = parse_cloud_csv(&read_input(input.file.as_deref())?)?;
            let radius = match link_radius {
                Some(r) => r,
                None => default_link_radius(&cloud),
            };
            println!("{}", count_components(&cloud, radius).map_err(morse_err)?);
        }
        MorseCommand::ProjectStereo {
            input,
            pole,
            inverse,
        } => {
            let cloud = parse_cloud_csv(&read_input(input.file.as_deref())?)?;
            let pole = parse_floats(&pole)?;
            let out = if inverse {
                stereographic_inverse(&cloud, &pole)
            } else {
                stereographic_project(&cloud, &pole)
            }
            .map_err(morse_err)?;
            print!("{}", render_cloud_csv(&out));
        }
        MorseCommand::Revolve {
            input,
            fixed_axes,
            steps,
            twist,
            full_turn,
        } => {
            let cloud = parse_cloud_csv(&read_input(input.file.as_deref())?)?;
            let axes = parse_indices(&fixed_axes)?;
            let out = revolve(&cloud, &axes, steps, twist, full_turn).map_err(morse_err)?;
            print!("{}", render_cloud_csv(&out));
        }
    }
    Ok(())
}

fn export(
    samples: &[surgery_core::morse::LevelSetSample],
    format: ExportFormat,
) -> CliResult {
    match format {
        ExportFormat::Csv => print!("{}", to_csv(samples)),
        ExportFormat::Json => println!("{}", to_json(samples)),
        ExportFormat::Obj => {
            print!(
                "{}",
                to_obj(samples).map_err(|e| CliError::input(e.to_string()))?
            )
        }
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprintln!("ERROR 2: {e}");
            std::process::exit(2);
        }
    };
    let outcome = std::panic::catch_unwind(|| run(cli));
    let code = match outcome {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            eprintln!("ERROR {}: {}", e.code, e.message);
            e.code
        }
        Err(_) => {
            eprintln!("ERROR 4: internal invariant violation");
            4
        }
    };
    std::process::exit(code);
}
