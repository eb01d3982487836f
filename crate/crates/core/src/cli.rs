//! Command-line front end. [`run`] parses arguments, executes one subcommand and
//! returns the exit code with the text destined for stdout and stderr.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a failed census or check.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::contextuality::{
    certify_pentagrams, context_sign_by_matrix, enumerate_grids, enumerate_pentagrams, is_magic,
    mermin_pentagram_canonical, mermin_square_canonical, pentagrams_inside, Configuration,
    ConfigurationJson, SquareGame,
};
use crate::entanglement::{
    self, classify_3qubit, hyperplane_section_poly, secant_dimension_estimate, singularity_type,
    two_qubit_separable, zak_dichotomy, EntanglementError, StateJson, StateTensor,
};
use crate::export;
use crate::gf2::BitVector;
use crate::lie;
use crate::pauli::parse_pauli;
use crate::polar::{self, build_polar_space, PolarSpace};

pub const THREADS_ENV: &str = "PAULI_POLAR_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "pauli-polar",
    version,
    about = "Pauli polar spaces, contextuality and entanglement"
)]
struct Cli {
    /// Worker threads for parallel enumerations (also PAULI_POLAR_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Symplectic polar space W(2N-1, 2).
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Contexts, Mermin squares and pentagrams.
    #[command(subcommand)]
    Magic(MagicCmd),
    /// The magic Veldkamp line of three qubits.
    #[command(subcommand)]
    Magicline(MagicLineCmd),
    /// Entanglement classes, secant varieties, singularities.
    #[command(subcommand)]
    Slocc(SloccCmd),
}

#[derive(Debug, Args)]
struct Width {
    /// Number of qubits N.
    #[arg(short = 'n')]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum SpaceCmd {
    /// Points, lines and planes.
    Build {
        #[command(flatten)]
        width: Width,
        /// Emit the collinearity graph as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Geometric hyperplanes.
    Hyperplanes {
        #[command(flatten)]
        width: Width,
        /// Only the counts per type.
        #[arg(long)]
        census: bool,
    },
    /// Veldkamp lines by type.
    Veldkamp {
        #[command(flatten)]
        width: Width,
    },
}

#[derive(Debug, Subcommand)]
enum MagicCmd {
    /// The Mermin-Peres square.
    Square {
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        dot: bool,
    },
    /// The Mermin pentagram.
    Pentagram {
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        dot: bool,
    },
    /// The ten grids of the two-qubit doily.
    EnumerateGrids,
    /// All Mermin pentagrams of three qubits.
    EnumeratePentagrams {
        /// JSON array of operators; count only pentagrams inside this set.
        #[arg(long)]
        within: Option<PathBuf>,
    },
    /// Classical value of the square game of a configuration file.
    GameValue { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum MagicLineCmd {
    /// The three hyperplanes and their core.
    Show {
        #[arg(long)]
        dot: bool,
    },
    /// A5 weight diagram on the core.
    Weights {
        /// Which root quintuple (in lexicographic order) to use.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Measure c in Tr(Ω³) = c·Pf(A).
    PfaffianCheck {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
enum SloccCmd {
    /// Classify a 2- or 3-qubit state file.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = entanglement::DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Terracini estimate of dim σ_k of a Segre variety.
    SecantDim {
        #[arg(long, value_delimiter = ',', required = true)]
        format: Vec<usize>,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Singularity of the hyperplane section of a state at a chart origin.
    Singularity {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        chart: Vec<usize>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Check {
        output: Option<Value>,
        message: String,
    },
}

type CmdResult = Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn check_failed(output: Value, message: impl Into<String>) -> Failure {
    Failure::Check {
        output: Some(output),
        message: message.into(),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let threads = cli
        .threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    let pretty = cli.pretty;
    let result = match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(usage(e)),
        },
        None => dispatch(&cli),
    };
    let render = |v: &Value| {
        let mut s = if pretty {
            serde_json::to_string_pretty(v)
        } else {
            serde_json::to_string(v)
        }
        .expect("json");
        s.push('\n');
        s
    };
    match result {
        Ok(Output::Json(v)) => Outcome {
            code: 0,
            stdout: render(&v),
            stderr: String::new(),
        },
        Ok(Output::Text(t)) => Outcome {
            code: 0,
            stdout: t,
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Check { output, message }) => Outcome {
            code: 2,
            stdout: output.map(|v| render(&v)).unwrap_or_default(),
            stderr: format!("check failed: {message}\n"),
        },
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Space(cmd) => space(cmd),
        Command::Magic(cmd) => magic(cmd),
        Command::Magicline(cmd) => magicline(cmd, cli.seed),
        Command::Slocc(cmd) => slocc(cmd, cli.seed),
    }
}

fn build(n: usize) -> Result<PolarSpace, Failure> {
    build_polar_space(n).map_err(usage)
}

fn expected_counts(n: usize) -> (usize, usize, usize) {
    let p = (1usize << (2 * n)) - 1;
    let l = p * ((1usize << (2 * n - 2)) - 1) / 3;
    let planes = if n >= 2 {
        l * ((1usize << (2 * n - 4)) - 1) / 7
    } else {
        0
    };
    (p, l, planes)
}

fn space(cmd: &SpaceCmd) -> CmdResult {
    match cmd {
        SpaceCmd::Build { width, dot } => {
            let s = build(width.n)?;
            if *dot {
                return Ok(Output::Text(export::space_dot(&s, None)));
            }
            let (p, l, pl) = expected_counts(width.n);
            let planes = s.planes().map(<[_]>::len);
            let mut out = json!({
                "n": width.n,
                "points": s.num_points(),
                "lines": s.lines().len(),
                "planes": planes,
            });
            if width.n == 2 {
                let g = s.to_geometry();
                out["generalized_quadrangle"] =
                    json!(g.gq_order() == Some((2, 2)) && g.is_triangle_free());
            }
            let ok = s.num_points() == p && s.lines().len() == l && planes.is_none_or(|x| x == pl);
            if !ok {
                return Err(check_failed(
                    out,
                    format!("expected {p} points, {l} lines, {pl} planes"),
                ));
            }
            Ok(Output::Json(out))
        }
        SpaceCmd::Hyperplanes { width, census } => {
            let n = width.n;
            let s = build(n)?;
            let hs = polar::all_hyperplanes(&s);
            let c = polar::hyperplane_census(&hs);
            let out = if *census {
                to_json(&c)
            } else {
                Value::Array(
                    hs.iter()
                        .map(|h| to_json(&export::hyperplane_json(&s, h)))
                        .collect(),
                )
            };
            let half = 1usize << (n - 1);
            let elliptic = if n == 1 { 0 } else { half * ((1 << n) - 1) };
            let expected = ((1usize << (2 * n)) - 1, half * ((1 << n) + 1), elliptic);
            if (c.perp, c.hyperbolic, c.elliptic) != expected {
                return Err(check_failed(
                    out,
                    format!("census differs from {expected:?}"),
                ));
            }
            if n <= polar::MAX_VELDKAMP_WIDTH {
                let kernel = polar::hyperplanes_by_kernel(&s).map_err(usage)?;
                let ours: BTreeSet<&BitVector> = hs.iter().map(|h| h.points()).collect();
                let theirs: BTreeSet<&BitVector> = kernel.iter().collect();
                if ours != theirs {
                    return Err(check_failed(
                        out,
                        "hyperplane families disagree with the incidence kernel",
                    ));
                }
            }
            Ok(Output::Json(out))
        }
        SpaceCmd::Veldkamp { width } => {
            if width.n < 2 {
                return Err(usage("W(1,2) has no lines; Veldkamp lines need N >= 2"));
            }
            let s = build(width.n)?;
            let v = polar::veldkamp_lines(&s).map_err(usage)?;
            let by_type: serde_json::Map<String, Value> = v
                .by_type
                .iter()
                .map(|(t, c)| (t.name().to_string(), json!(c)))
                .collect();
            let out = json!({
                "hyperplanes": v.hyperplanes.len(),
                "lines": v.lines.len(),
                "by_type": by_type,
            });
            let points = (1usize << (2 * width.n + 1)) - 1;
            let lines = points * (points - 1) / 6;
            if v.hyperplanes.len() != points || v.lines.len() != lines {
                return Err(check_failed(
                    out,
                    format!(
                        "expected PG({},2): {points} points, {lines} lines",
                        2 * width.n
                    ),
                ));
            }
            Ok(Output::Json(out))
        }
    }
}

fn configuration_report(config: &Configuration, verify: bool) -> Result<Value, Failure> {
    let mut out = to_json(&config.to_json());
    let magic = is_magic(config);
    out["magic"] = json!(magic);
    out["negative_contexts"] = json!(config
        .contexts()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.sign < 0)
        .map(|(i, _)| i)
        .collect::<Vec<_>>());
    if verify {
        let mut mismatches = Vec::new();
        for (i, ctx) in config.contexts().iter().enumerate() {
            let oracle = context_sign_by_matrix(&config.context_operators(i)).map_err(usage)?;
            if oracle != Some(ctx.sign) {
                mismatches.push(i);
            }
        }
        out["verified"] = json!(mismatches.is_empty());
        if !mismatches.is_empty() {
            return Err(check_failed(
                out,
                format!("matrix oracle disagrees on contexts {mismatches:?}"),
            ));
        }
    }
    if !magic {
        return Err(check_failed(out, "configuration is not magic"));
    }
    Ok(out)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn magic(cmd: &MagicCmd) -> CmdResult {
    match cmd {
        MagicCmd::Square { verify, dot } | MagicCmd::Pentagram { verify, dot } => {
            let config = if matches!(cmd, MagicCmd::Square { .. }) {
                mermin_square_canonical()
            } else {
                mermin_pentagram_canonical()
            };
            let report = configuration_report(&config, *verify)?;
            if *dot {
                return Ok(Output::Text(export::configuration_dot(&config)));
            }
            Ok(Output::Json(report))
        }
        MagicCmd::EnumerateGrids => {
            let s = build(2)?;
            let grids = enumerate_grids(&s).map_err(usage)?;
            let all_magic = grids.iter().all(is_magic);
            let out = json!({
                "count": grids.len(),
                "all_magic": all_magic,
                "grids": grids.iter().map(|g| to_json(&g.to_json())).collect::<Vec<_>>(),
            });
            if grids.len() != 10 || !all_magic {
                return Err(check_failed(out, "expected 10 magic grids"));
            }
            Ok(Output::Json(out))
        }
        MagicCmd::EnumeratePentagrams { within } => {
            let s = build(3)?;
            let pentagrams = enumerate_pentagrams(&s).map_err(usage)?;
            let selected = match within {
                None => pentagrams,
                Some(path) => {
                    let labels: Vec<String> = parse_json(path)?;
                    let mut set = BitVector::zeros(s.capacity());
                    for label in &labels {
                        let op = parse_pauli(label).map_err(|e| usage(format!("{label}: {e}")))?;
                        if op.width() != 3 || op.vector().is_zero() {
                            return Err(usage(format!(
                                "{label}: expected a non-identity three-qubit operator"
                            )));
                        }
                        set.set(op.vector().packed() as usize, true);
                    }
                    pentagrams_inside(&pentagrams, &set)
                }
            };
            let census = certify_pentagrams(&s, &selected).map_err(usage)?;
            let out = to_json(&census);
            if !census.all_magic || (within.is_none() && census.count != 12096) {
                return Err(check_failed(out, "pentagram census failed"));
            }
            Ok(Output::Json(out))
        }
        MagicCmd::GameValue { file } => {
            let json: ConfigurationJson = parse_json(file)?;
            let points = json
                .points
                .iter()
                .map(|s| parse_pauli(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            let config = Configuration::new(
                points,
                json.contexts.iter().map(|c| c.points.clone()).collect(),
            )
            .map_err(usage)?;
            // Declared signs define the game; they may differ from the operator products.
            let signs: Vec<i8> = json
                .contexts
                .iter()
                .zip(config.contexts())
                .map(|(declared, computed)| declared.sign.unwrap_or(computed.sign))
                .collect();
            let matches_operators = signs
                .iter()
                .zip(config.contexts())
                .all(|(s, c)| *s == c.sign);
            let game_config = config.with_signs(&signs).map_err(usage)?;
            let game = SquareGame::from_configuration(&game_config).map_err(usage)?;
            let value = game.classical_value();
            let magic = is_magic(&game_config);
            let out = json!({
                "value": format!("{}/{}", value.numer(), value.denom()),
                "numerator": value.numer(),
                "denominator": value.denom(),
                "magic": magic,
                "signs_match_operators": matches_operators,
            });
            if (value < num_rational::Ratio::from_integer(1)) != magic {
                return Err(check_failed(out, "game value and magic test disagree"));
            }
            Ok(Output::Json(out))
        }
    }
}

fn magicline(cmd: &MagicLineCmd, seed: u64) -> CmdResult {
    let s = build(3)?;
    let line = lie::magic_veldkamp_line(&s).map_err(usage)?;
    match cmd {
        MagicLineCmd::Show { dot } => {
            if *dot {
                return Ok(Output::Text(export::space_dot(&s, Some(&line.core))));
            }
            let (commuting, anticommuting) = lie::partition_35(&s).map_err(usage)?;
            let mut out = to_json(&export::magic_line_json(&s, &line));
            let doily = lie::core_is_doily(&s, &line);
            let is_line = line.is_veldkamp_line(&s);
            out["core_is_doily"] = json!(doily);
            out["is_veldkamp_line"] = json!(is_line);
            out["partition"] = json!({
                "commuting": commuting.count_ones(),
                "anticommuting": anticommuting.count_ones(),
            });
            let sizes = (
                line.perp.len(),
                line.elliptic.len(),
                line.hyperbolic.len(),
                line.core.count_ones(),
            );
            if sizes != (31, 27, 35, 15) || !doily || !is_line || commuting != line.core {
                return Err(check_failed(out, "magic Veldkamp line checks failed"));
            }
            Ok(Output::Json(out))
        }
        MagicLineCmd::Weights { index, dot } => {
            let highest = parse_pauli("ZIZ").expect("static");
            let all = lie::find_root_quintuples(&s, highest).map_err(usage)?;
            let roots = all
                .get(*index)
                .ok_or_else(|| usage(format!("only {} root quintuples", all.len())))?
                .map(crate::pauli::PauliOperator::hermitian);
            let diagram = lie::weight_orbit(&s, &roots, highest).map_err(usage)?;
            if *dot {
                return Ok(Output::Text(export::weight_diagram_dot(&diagram)));
            }
            let mut out = to_json(&export::weight_diagram_json(&diagram));
            out["quintuples_found"] = json!(all.len());
            if diagram.node_set() != line.core_points() {
                return Err(check_failed(out, "orbit does not cover the core"));
            }
            Ok(Output::Json(out))
        }
        MagicLineCmd::PfaffianCheck { samples } => {
            let labeling = lie::find_duad_labeling(&s, &line.core).map_err(usage)?;
            let labelings = lie::count_duad_labelings(&s, &line.core).map_err(usage)?;
            let mut out = json!({
                "samples": samples,
                "labelings": labelings,
                "labeling": export::labeling_json(&labeling),
            });
            match lie::trace_cube_pfaffian_check(&labeling, *samples, seed) {
                Ok(c) => {
                    out["constant"] = json!(c);
                    Ok(Output::Json(out))
                }
                Err(e) => Err(check_failed(out, e.to_string())),
            }
        }
    }
}

fn read_state(path: &Path) -> Result<StateTensor, Failure> {
    let json: StateJson = parse_json(path)?;
    StateTensor::from_json(&json).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn slocc(cmd: &SloccCmd, seed: u64) -> CmdResult {
    match cmd {
        SloccCmd::Classify { file, epsilon } => {
            let t = read_state(file)?;
            match t.format() {
                [2, 2] => {
                    let separable = two_qubit_separable(&t, *epsilon).map_err(usage)?;
                    let a = t.amplitudes();
                    Ok(Output::Json(json!({
                        "class": if separable { "SEP" } else { "ENTANGLED" },
                        "det_abs": (a[0] * a[3] - a[1] * a[2]).norm(),
                        "norm": t.norm(),
                    })))
                }
                [2, 2, 2] => {
                    let c = classify_3qubit(&t, *epsilon).map_err(usage)?;
                    let mut out = to_json(&c);
                    out["norm"] = json!(t.norm());
                    Ok(Output::Json(out))
                }
                other => Err(usage(format!(
                    "classification needs format [2,2] or [2,2,2], got {other:?}"
                ))),
            }
        }
        SloccCmd::SecantDim { format, k } => {
            if format.is_empty() || format.contains(&0) {
                return Err(usage("format dimensions must be positive"));
            }
            let affine = secant_dimension_estimate(format, *k, seed);
            let mut out = json!({
                "format": format,
                "k": k,
                "affine_dimension": affine,
                "projective_dimension": affine.saturating_sub(1),
            });
            if *k == 2 {
                out["zak"] = to_json(&zak_dichotomy(format, seed));
            }
            Ok(Output::Json(out))
        }
        SloccCmd::Singularity { file, chart } => {
            let t = read_state(file)?;
            let germ = hyperplane_section_poly(&t).chart(chart).map_err(usage)?;
            let mut out = json!({
                "polynomial": germ.display(),
                "variables": germ.variables,
                "on_hypersurface": germ.polynomial.eval(&vec![Default::default(); germ.variables.len()]).norm()
                    < entanglement::DEFAULT_EPSILON,
            });
            match entanglement::singular_point_analysis(&germ) {
                Ok(a) => {
                    out["critical"] = json!(true);
                    out["isolated"] = json!(true);
                    let mut fields = to_json(&a);
                    fields["type"] = json!(singularity_type(&a).name());
                    merge(&mut out, fields);
                }
                Err(EntanglementError::NotCritical(g)) => {
                    out["critical"] = json!(false);
                    out["gradient_norm"] = json!(g);
                }
                Err(EntanglementError::NonIsolated(d)) => {
                    out["critical"] = json!(true);
                    out["isolated"] = json!(false);
                    out["d_max"] = json!(d);
                }
                Err(e) => return Err(usage(e)),
            }
            Ok(Output::Json(out))
        }
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}
