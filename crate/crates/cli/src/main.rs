use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use jordanline::harness::{
    build_graph, enumerate_grassmannian, enumerate_isotropic_with_ids, point_records,
    verify_jordan, verify_remarks, verify_theorem1, GeometryConfig, PointSet, PointsReport,
    RelationKind, FORMAT_VERSION,
};
use jordanline::hermitian::{
    bartolone_hermitian, is_totally_isotropic, lemma2_common_complement, theorem1_decompose,
};
use jordanline::projline::{bartolone, BartolonePairJson};
use jordanline::{
    BartolonePair, Error, Field, Involution, IsotropicPoint, MatrixJson, SubspacePoint,
};

#[derive(Parser, Debug)]
#[command(
    name = "jordanline",
    version,
    about = "Projective lines over matrix rings and Hermitian matrices over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Field characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    /// Extension degree; the field is GF(p^k).
    #[arg(long, global = true, default_value_t = 1)]
    k: u32,
    /// `identity` or `frobenius` (x -> x^(p^(k/2)), k even).
    #[arg(long, global = true, default_value = "identity")]
    involution: Involution,
    /// Block size; points are n-subspaces of K^2n.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all points of the projective line (the Grassmannian Gr(2n, n)).
    Enumerate,
    /// List the maximal totally isotropic points.
    Isotropic,
    /// Compare the Hermitian Bartolone image with the isotropic points.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1,
    /// Run the batch of rank, annihilator, Jordan-map and star checks.
    VerifyRemarks,
    /// Build the distant or adjacency graph.
    Graph {
        #[arg(long, value_enum, default_value_t = Relation::Distant)]
        relation: Relation,
        #[arg(long, value_enum, default_value_t = Points::All)]
        points: Points,
    },
    /// Map a parameter pair (T1, T2) to its point.
    Bartolone {
        /// JSON `{"t1": .., "t2": ..}` inline or a path to a file holding it.
        #[arg(long)]
        pair: String,
    },
    /// Write an isotropic point as the image of a Hermitian pair.
    Decompose {
        /// JSON basis matrix inline or a path to a file holding it.
        #[arg(long)]
        point: String,
    },
    /// A totally isotropic common complement of two isotropic points.
    Complement {
        #[arg(long)]
        u1: String,
        #[arg(long)]
        u2: String,
    },
    /// Check well-definedness and adjacency preservation of the Jordan maps.
    JordanCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Relation {
    Distant,
    Adjacency,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Points {
    All,
    Isotropic,
}

/// Failures that map to exit status 1.
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    format_version: u32,
    field_p: u32,
    field_k: u32,
    involution: Involution,
    n: usize,
    relation: &'static str,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct BartoloneOut {
    pair: BartolonePairJson,
    point: MatrixJson,
    isotropic: bool,
}

#[derive(Serialize)]
struct DecomposeOut {
    point: MatrixJson,
    pair: BartolonePairJson,
    hermitian: bool,
    roundtrip: bool,
}

#[derive(Serialize)]
struct ComplementOut {
    u1: MatrixJson,
    u2: MatrixJson,
    complement: MatrixJson,
    verified: bool,
}

impl Cli {
    fn config(&self) -> GeometryConfig {
        GeometryConfig::new(self.p, self.k, self.involution, self.n)
    }

    /// Field and block size for single-object commands; no budget gate.
    fn field(&self) -> Result<Field, Error> {
        if self.n < 2 {
            return Err(Error::InvalidBlockSize(self.n));
        }
        Field::new(self.p, self.k, self.involution)
    }

    fn envelope<T: Serialize>(&self, relation: &'static str, body: T) -> Envelope<T> {
        Envelope {
            format_version: FORMAT_VERSION,
            field_p: self.p,
            field_k: self.k,
            involution: self.involution,
            n: self.n,
            relation,
            body,
        }
    }
}

fn check_format(cmd: &Command, format: Format) -> anyhow::Result<()> {
    let ok = match format {
        Format::Json => true,
        Format::Csv => matches!(
            cmd,
            Command::Enumerate | Command::Isotropic | Command::Graph { .. }
        ),
        Format::Dot => matches!(cmd, Command::Graph { .. }),
    };
    if !ok {
        bail!("--format {format:?} is not available for this subcommand");
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn read_json(arg: &str) -> anyhow::Result<Value> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    Ok(serde_json::from_str(&text)?)
}

/// A basis matrix, or any report object carrying one under `point`,
/// `complement` or `basis`.
fn read_point(field: &Field, n: usize, arg: &str) -> anyhow::Result<SubspacePoint> {
    let mut v = read_json(arg)?;
    for key in ["point", "complement", "basis"] {
        if let Some(inner) = v.get(key) {
            v = inner.clone();
            break;
        }
    }
    let json: MatrixJson = serde_json::from_value(v).context("expected a basis matrix")?;
    let p = SubspacePoint::from_json(field, &json)?;
    if p.n() != n {
        return Err(
            Error::DimensionMismatch(format!("point has n = {}, expected {n}", p.n())).into(),
        );
    }
    Ok(p)
}

fn read_pair(field: &Field, n: usize, arg: &str) -> anyhow::Result<BartolonePair> {
    let mut v = read_json(arg)?;
    if let Some(inner) = v.get("pair") {
        v = inner.clone();
    }
    let json: BartolonePairJson =
        serde_json::from_value(v).context("expected {\"t1\": .., \"t2\": ..}")?;
    let pair = BartolonePair::from_json(field, &json)?;
    if pair.n() != n {
        return Err(
            Error::DimensionMismatch(format!("pair has n = {}, expected {n}", pair.n())).into(),
        );
    }
    Ok(pair)
}

fn isotropic(p: SubspacePoint) -> anyhow::Result<IsotropicPoint> {
    Ok(IsotropicPoint::new(p)?)
}

fn run(cli: &Cli) -> anyhow::Result<String> {
    check_format(&cli.command, cli.format)?;
    let cfg = cli.config();
    match &cli.command {
        Command::Enumerate | Command::Isotropic => {
            let (relation, points): (&str, Vec<(usize, SubspacePoint)>) = match cli.command {
                Command::Enumerate => (
                    "grassmannian",
                    enumerate_grassmannian(&cfg)?
                        .into_iter()
                        .enumerate()
                        .collect(),
                ),
                _ => (
                    "isotropic",
                    enumerate_isotropic_with_ids(&cfg)?
                        .into_iter()
                        .map(|(id, p)| (id, p.into_point()))
                        .collect(),
                ),
            };
            let report = PointsReport::new(
                &cfg,
                relation,
                point_records(points.iter().map(|(i, p)| (*i, p))),
            );
            match cli.format {
                Format::Csv => Ok(report.to_csv()),
                _ => to_json(&report),
            }
        }
        Command::VerifyTheorem1 => {
            let report = verify_theorem1(&cfg)?;
            let out = to_json(&report)?;
            if !report.equal {
                emit(cli, &out)?;
                return Err(VerificationFailed(format!(
                    "{} witnesses of inequality",
                    report.witnesses.len()
                ))
                .into());
            }
            Ok(out)
        }
        Command::VerifyRemarks | Command::JordanCheck => {
            let report = match cli.command {
                Command::VerifyRemarks => verify_remarks(&cfg, cli.seed)?,
                _ => verify_jordan(&cfg, cli.seed)?,
            };
            let out = to_json(&report)?;
            if !report.all_passed {
                emit(cli, &out)?;
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                return Err(VerificationFailed(failed.join(", ")).into());
            }
            Ok(out)
        }
        Command::Graph { relation, points } => {
            let kind = match relation {
                Relation::Distant => RelationKind::Distant,
                Relation::Adjacency => RelationKind::Adjacency,
            };
            let set = match points {
                Points::All => PointSet::All,
                Points::Isotropic => PointSet::Isotropic,
            };
            let graph = build_graph(&cfg, kind, set)?;
            match cli.format {
                Format::Dot => Ok(graph.to_dot()),
                Format::Csv => Ok(graph.degree_csv()),
                Format::Json => to_json(&graph.report(&cfg)),
            }
        }
        Command::Bartolone { pair } => {
            let field = cli.field()?;
            let pair = read_pair(&field, cli.n, pair)?;
            let point = bartolone(&pair);
            let body = BartoloneOut {
                pair: pair.to_json(),
                point: point.to_json(),
                isotropic: is_totally_isotropic(&point),
            };
            to_json(&cli.envelope("bartolone", body))
        }
        Command::Decompose { point } => {
            let field = cli.field()?;
            let point = isotropic(read_point(&field, cli.n, point)?)?;
            let pair = theorem1_decompose(&point);
            let back = bartolone_hermitian(&pair)?;
            let body = DecomposeOut {
                point: point.point().to_json(),
                pair: pair.to_json(),
                hermitian: pair.t1.is_hermitian() && pair.t2.is_hermitian(),
                roundtrip: back == point,
            };
            if !(body.hermitian && body.roundtrip) {
                return Err(VerificationFailed(
                    "decomposition does not reproduce the point".into(),
                )
                .into());
            }
            to_json(&cli.envelope("decompose", body))
        }
        Command::Complement { u1, u2 } => {
            let field = cli.field()?;
            let u1 = isotropic(read_point(&field, cli.n, u1)?)?;
            let u2 = isotropic(read_point(&field, cli.n, u2)?)?;
            let x = lemma2_common_complement(&u1, &u2)?;
            let trivial = |u: &IsotropicPoint| -> anyhow::Result<bool> {
                Ok(x.space().intersect(u.space())?.dim() == 0)
            };
            let verified = trivial(&u1)? && trivial(&u2)?;
            let body = ComplementOut {
                u1: u1.point().to_json(),
                u2: u2.point().to_json(),
                complement: x.point().to_json(),
                verified,
            };
            if !verified {
                return Err(VerificationFailed("complement meets U1 or U2".into()).into());
            }
            to_json(&cli.envelope("complement", body))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| emit(&cli, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<VerificationFailed>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
