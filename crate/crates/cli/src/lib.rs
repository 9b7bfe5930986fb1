//! Command-line front end for `morifan`.
//!
//! Every subcommand prints one canonical JSON document on standard output and
//! diagnostics on standard error. Exit codes: 0 success, 2 parse error,
//! 3 validation error, 4 class not effective, 5 verification failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use morifan::fixtures::MapTarget;
use morifan::io::{cone_json, int_json, rational_json, render_canonical, FanDocument, MapFile, WeightFile};
use morifan::mori::{certify_sections, h0_with_ceiling, DEFAULT_H0_CEILING};
use morifan::morphism::{verify_subspace_restriction, RestrictionReport};
use morifan::slice::{slice, Slice, SlicePoint};
use morifan::{
    chamber_info, git_fan, restrict_fan, restrict_region_fan, signature, verify_restriction, zariski,
    Cone, Error, Fan, FixtureLibrary, PullbackMap, RationalVector, Verdict, WeightSystem,
};
use serde_json::{json, Value};

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NOT_EFFECTIVE: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "morifan", version, about = "Mori chamber fans of toric Mori dream spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Weight system file.
    #[arg(required_unless_present = "fixture")]
    pub input: Option<PathBuf>,
    /// Use a shipped weight system instead of a file.
    #[arg(long, conflicts_with = "input")]
    pub fixture: Option<String>,
}

#[derive(Debug, Args)]
pub struct Divisor {
    /// Class coordinates, e.g. `1,-1/2,0`.
    #[arg(short = 'd', long = "divisor", allow_hyphen_values = true)]
    pub divisor: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the fan of the effective cone.
    Fan {
        #[command(flatten)]
        input: Input,
    },
    /// Zariski decomposition of a class.
    Zariski {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        divisor: Divisor,
        /// Also compare section counts at the clearing multiple and its doubles.
        #[arg(long)]
        certify: bool,
    },
    /// The fan cone containing a class in its relative interior.
    Chamber {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        divisor: Divisor,
    },
    /// Number of Cox ring monomials of a given degree.
    H0 {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        divisor: Divisor,
        #[arg(long, default_value_t = DEFAULT_H0_CEILING)]
        ceiling: u64,
    },
    /// Semistable and stable supports of a character.
    Signature {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        divisor: Divisor,
    },
    /// Compare the fan of Y with the restriction of the fan of X.
    Verify {
        /// Weight system of X.
        #[arg(requires_all = ["y", "map"], required_unless_present = "fixture_map")]
        x: Option<PathBuf>,
        /// Weight system of Y.
        y: Option<PathBuf>,
        /// Map file for Pic(Y) -> Pic(X).
        map: Option<PathBuf>,
        /// Use a shipped map such as `bl2p3→bl1p3` (`->` also accepted).
        #[arg(long, conflicts_with_all = ["x", "y", "map"])]
        fixture_map: Option<String>,
    },
    /// Restrict the fan to a subspace and/or a region.
    Restrict {
        #[command(flatten)]
        input: Input,
        /// Map file whose columns span the subspace.
        #[arg(long, conflicts_with = "subspace")]
        map: Option<PathBuf>,
        /// Subspace spanned by `a,b,c[:d,e,f...]`.
        #[arg(long, allow_hyphen_values = true)]
        subspace: Option<String>,
        /// Region cone generated by `a,b,c[:d,e,f...]`.
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
    },
    /// Planar cross-section of a rank-3 fan.
    Slice {
        #[command(flatten)]
        input: Input,
        /// Overlay the subspace spanned by `a,b,c[:d,e,f]`.
        #[arg(long, allow_hyphen_values = true)]
        subspace: Option<String>,
        /// Also write an SVG drawing.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::NotEffective(_) => EXIT_NOT_EFFECTIVE,
            _ => EXIT_VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn parse_failure(message: String) -> Failure {
    Failure { code: EXIT_PARSE, message }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| parse_failure(format!("{}: {e}", path.display())))
}

fn load_weight_system(input: &Input) -> Result<WeightSystem, Failure> {
    if let Some(name) = &input.fixture {
        return FixtureLibrary::weight_system(name)
            .ok_or_else(|| parse_failure(format!("unknown fixture {name:?}")));
    }
    let path = input.input.as_deref().expect("clap requires an input");
    load_weight_file(path)
}

fn load_weight_file(path: &Path) -> Result<WeightSystem, Failure> {
    let file = WeightFile::parse(&read(path)?)
        .map_err(|e| parse_failure(format!("{}: {e}", path.display())))?;
    Ok(file.to_weight_system()?)
}

fn load_map(path: &Path) -> Result<PullbackMap, Failure> {
    let file = MapFile::parse(&read(path)?).map_err(|e| parse_failure(format!("{}: {e}", path.display())))?;
    Ok(file.to_map()?)
}

fn parse_class(s: &str) -> Result<RationalVector, Failure> {
    Ok(s.parse::<RationalVector>()?)
}

/// `a,b,c:d,e,f` as a list of vectors.
fn parse_vectors(s: &str) -> Result<Vec<RationalVector>, Failure> {
    s.split(':').map(parse_class).collect()
}

fn class_in(ws: &WeightSystem, divisor: &Divisor) -> Result<RationalVector, Failure> {
    let d = parse_class(&divisor.divisor)?;
    if d.len() != ws.rank() {
        return Err(Error::DimensionMismatch { expected: ws.rank(), found: d.len() }.into());
    }
    Ok(d)
}

fn fan_json(fan: &Fan) -> Result<Value, Failure> {
    Ok(serde_json::to_value(FanDocument::from_fan(fan)?).expect("serializable"))
}

fn generator_names(ws: &WeightSystem, indices: impl IntoIterator<Item = usize>) -> Value {
    Value::Array(indices.into_iter().map(|i| Value::String(ws.generators()[i].name.clone())).collect())
}

fn cmd_zariski(ws: &WeightSystem, d: &RationalVector, certify: bool) -> Result<Value, Failure> {
    let z = zariski(ws, d)?;
    let mut doc = json!({
        "divisor": rational_json(d),
        "positive": rational_json(&z.positive),
        "negative": rational_json(&z.negative),
        "coefficients": rational_json(&RationalVector(z.coefficients.clone())),
        "negative_support": generator_names(ws, z.negative_support()),
        "cone": cone_json(&z.cone)?,
        "kind": z.kind.as_str(),
    });
    if certify {
        if !d.is_integral() {
            return Err(Error::NonIntegral(d.to_string()).into());
        }
        let checks = certify_sections(ws, d, &z, &[1, 2, 3])?;
        doc["certificate"] = Value::Array(
            checks
                .iter()
                .map(|c| {
                    json!({
                        "multiple": c.multiple,
                        "h0_class": c.h0_class,
                        "h0_positive": c.h0_positive,
                        "h0_negative": c.h0_negative,
                        "holds": c.holds(),
                    })
                })
                .collect(),
        );
    }
    Ok(doc)
}

fn cmd_chamber(ws: &WeightSystem, d: &RationalVector) -> Result<Value, Failure> {
    let info = chamber_info(ws, d)?;
    Ok(json!({
        "divisor": rational_json(d),
        "cone": cone_json(&info.cone)?,
        "dim": info.dim,
        "kind": info.kind.as_str(),
        "positive_face": cone_json(&info.positive_face)?,
        "exceptional_indices": info.exceptional_indices.iter().collect::<Vec<_>>(),
        "exceptional": generator_names(ws, info.exceptional_indices.iter().copied()),
    }))
}

fn cmd_signature(ws: &WeightSystem, d: &RationalVector) -> Result<Value, Failure> {
    let sig = signature(ws, d)?;
    let list = |set: &std::collections::BTreeSet<morifan::SupportSet>| {
        let mut v: Vec<Vec<usize>> = set.iter().map(|s| s.indices().collect()).collect();
        v.sort();
        v
    };
    Ok(json!({
        "character": rational_json(d),
        "generators": generator_names(ws, 0..ws.num_generators()),
        "semistable_supports": list(&sig.semistable_supports),
        "stable_supports": list(&sig.stable_supports),
    }))
}

fn report_json(report: &RestrictionReport) -> Result<Value, Failure> {
    let mismatches = report
        .mismatches
        .iter()
        .map(|m| {
            let mut c = cone_json(&m.cone)?;
            c["side"] = Value::from(m.side.as_str());
            Ok(c)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let checks = report
        .cone_checks
        .iter()
        .map(|c| {
            Ok(json!({
                "name": c.name,
                "expected": cone_json(&c.expected)?,
                "actual": cone_json(&c.actual)?,
                "passed": c.passed(),
            }))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let mut doc = json!({
        "verdict": report.verdict.as_str(),
        "expected": fan_json(&report.expected)?,
        "actual": fan_json(&report.actual)?,
        "mismatches": mismatches,
        "cone_checks": checks,
    });
    if report.verdict == Verdict::Fail {
        doc["note"] = Value::from(
            "no theorem violation is provable: either the map is wrong or no surjection realizes it",
        );
    }
    Ok(doc)
}

fn cmd_verify(
    x: Option<&Path>,
    y: Option<&Path>,
    map: Option<&Path>,
    fixture_map: Option<&str>,
) -> Result<RestrictionReport, Failure> {
    if let Some(name) = fixture_map {
        let m = FixtureLibrary::map_fixture(name)
            .ok_or_else(|| parse_failure(format!("unknown fixture map {name:?}")))?;
        let f = FixtureLibrary::map(name).expect("shipped map");
        let ws_x = FixtureLibrary::weight_system(m.source).expect("shipped weight system");
        return Ok(match m.target {
            MapTarget::WeightSystem(y) => {
                verify_restriction(&ws_x, &FixtureLibrary::weight_system(y).expect("shipped"), &f)?
            }
            MapTarget::GoldenFan(_) => {
                verify_subspace_restriction(&ws_x, &f, &FixtureLibrary::golden_fan(name).expect("golden"))?
            }
        });
    }
    let (x, y, map) = (x.expect("clap"), y.expect("clap"), map.expect("clap"));
    let (ws_x, ws_y, f) = (load_weight_file(x)?, load_weight_file(y)?, load_map(map)?);
    Ok(verify_restriction(&ws_x, &ws_y, &f)?)
}

fn cmd_restrict(
    ws: &WeightSystem,
    map: Option<&Path>,
    subspace: Option<&str>,
    region: Option<&str>,
) -> Result<Fan, Failure> {
    let f = match (map, subspace) {
        (Some(p), _) => Some(load_map(p)?),
        (None, Some(s)) => {
            let cols = parse_vectors(s)?;
            let rows = (0..ws.rank())
                .map(|k| {
                    cols.iter()
                        .map(|c| {
                            c.0.get(k)
                                .and_then(|x| x.is_integer().then(|| x.to_integer()))
                                .ok_or_else(|| Failure {
                                    code: EXIT_VALIDATION,
                                    message: format!("subspace vector {c} must be integral of length {}", ws.rank()),
                                })
                        })
                        .collect()
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Some(PullbackMap::new(cols.len(), rows)?)
        }
        (None, None) => None,
    };
    let fan = match region {
        Some(r) => {
            let gens = parse_vectors(r)?;
            let cone = Cone::from_generators(ws.rank(), &gens)?;
            restrict_region_fan(ws, &cone, f.as_ref())?
        }
        None => match &f {
            Some(f) => restrict_fan(git_fan(ws), f)?,
            None => git_fan(ws).clone(),
        },
    };
    Ok(fan)
}

fn point_json(p: &SlicePoint) -> Result<Value, Failure> {
    Ok(json!({
        "label": p.label,
        "class": int_json(&p.class)?,
        "point": rational_json(&RationalVector(p.coords.to_vec())),
    }))
}

fn slice_json(s: &Slice) -> Result<Value, Failure> {
    let points = |ps: &[SlicePoint]| ps.iter().map(point_json).collect::<Result<Vec<_>, Failure>>();
    let polygons = s
        .polygons
        .iter()
        .map(|p| Ok(json!({ "kind": p.kind.as_str(), "vertices": points(&p.vertices)? })))
        .collect::<Result<Vec<_>, Failure>>()?;
    let mut doc = json!({ "corners": points(&s.corners)?, "polygons": polygons });
    if let Some(o) = &s.overlay {
        doc["overlay"] = Value::Array(points(o)?);
    }
    Ok(doc)
}

/// Runs one command, writing its JSON document to `out`. Returns the exit code.
fn execute(command: &Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let doc = match command {
        Command::Fan { input } => fan_json(git_fan(&load_weight_system(input)?))?,
        Command::Zariski { input, divisor, certify } => {
            let ws = load_weight_system(input)?;
            cmd_zariski(&ws, &class_in(&ws, divisor)?, *certify)?
        }
        Command::Chamber { input, divisor } => {
            let ws = load_weight_system(input)?;
            cmd_chamber(&ws, &class_in(&ws, divisor)?)?
        }
        Command::H0 { input, divisor, ceiling } => {
            let ws = load_weight_system(input)?;
            let d = class_in(&ws, divisor)?;
            json!({ "divisor": rational_json(&d), "h0": h0_with_ceiling(&ws, &d, *ceiling)? })
        }
        Command::Signature { input, divisor } => {
            let ws = load_weight_system(input)?;
            cmd_signature(&ws, &class_in(&ws, divisor)?)?
        }
        Command::Verify { x, y, map, fixture_map } => {
            let report = cmd_verify(x.as_deref(), y.as_deref(), map.as_deref(), fixture_map.as_deref())?;
            write_doc(out, &report_json(&report)?)?;
            return Ok(if report.verdict == Verdict::Pass { 0 } else { EXIT_VERIFY_FAILED });
        }
        Command::Restrict { input, map, subspace, region } => {
            let ws = load_weight_system(input)?;
            fan_json(&cmd_restrict(&ws, map.as_deref(), subspace.as_deref(), region.as_deref())?)?
        }
        Command::Slice { input, subspace, svg } => {
            let ws = load_weight_system(input)?;
            let basis = subspace.as_deref().map(parse_vectors).transpose()?;
            let s = slice(&ws, basis.as_deref())?;
            if let Some(path) = svg {
                fs::write(path, s.to_svg()).map_err(|e| Failure {
                    code: EXIT_VALIDATION,
                    message: format!("{}: {e}", path.display()),
                })?;
            }
            slice_json(&s)?
        }
    };
    write_doc(out, &doc)?;
    Ok(0)
}

fn write_doc(out: &mut dyn Write, doc: &Value) -> Result<(), Failure> {
    out.write_all(render_canonical(doc).as_bytes()).map_err(|e| Failure {
        code: EXIT_VALIDATION,
        message: format!("cannot write output: {e}"),
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "morifan: {}", f.message);
            f.code
        }
    }
}
