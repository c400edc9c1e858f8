//! Batch front end: one job per invocation, one JSON report per job.
//!
//! A job is a JSON object naming its input and parameters:
//!
//! ```json
//! {"pipeline": "pi1", "family": "GL", "n": 2, "p": 3}
//! {"pipeline": "validate", "group": {"type": "perm", ...}, "poset": {"items": [...], ...}}
//! ```
//!
//! `family` expands to `GL_n(F_p)` acting on its flag poset with the
//! associated-graded links; `"links": "trivial"` drops them. Explicit
//! `group` + `poset` input uses the schemas of [`GroupDescriptor`] and
//! [`GPoset::from_json`]. Parameters (`p`, `d`, `basepoint`, `max_order`,
//! `max_chains`, `max_cosets`) may sit in the job or come from flags, which win.
//!
//! Exit status is 0 when the report passes, 1 when it records a verified
//! mathematical failure and 2 on input or scale errors. Errors carry a JSON
//! pointer into the job and never produce an output file.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::category::{build_category, Category, CategoryError};
use crate::gposet::GPoset;
use crate::group::{FinGroup, GroupDescriptor, GroupError, GroupKind, DEFAULT_MAX_ORDER};
use crate::homotopy::{
    build_complex, functor_homology, pi1_vs_quotient, CoefficientFunctor, Coefficients,
    CosetOutcome, HomotopyError, DEFAULT_MAX_CHAINS, DEFAULT_MAX_COSETS,
};
use crate::lie::{
    exhaustive_radical_enumeration, radicals_match_flags, BorelTits, FlagPoset, LieError,
};
use crate::schema::{self, child, SchemaError};

pub const FORMAT: u64 = 1;

/// Largest number of violations listed in a validation report.
const LISTED_VIOLATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Validate,
    BuildCat,
    BorelTits,
    Pi1,
    Homology,
    FunctorHomology,
    Radicals,
    Flagposet,
}

impl Pipeline {
    pub const ALL: [Pipeline; 8] = [
        Pipeline::Validate,
        Pipeline::BuildCat,
        Pipeline::BorelTits,
        Pipeline::Pi1,
        Pipeline::Homology,
        Pipeline::FunctorHomology,
        Pipeline::Radicals,
        Pipeline::Flagposet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Validate => "validate",
            Pipeline::BuildCat => "build-cat",
            Pipeline::BorelTits => "borel-tits",
            Pipeline::Pi1 => "pi1",
            Pipeline::Homology => "homology",
            Pipeline::FunctorHomology => "functor-homology",
            Pipeline::Radicals => "radicals",
            Pipeline::Flagposet => "flagposet",
        }
    }

    pub fn parse(name: &str) -> Option<Pipeline> {
        Pipeline::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// Parameters given outside the job document.
#[derive(Clone, Debug, Default, PartialEq, Eq, Args)]
pub struct Params {
    /// Prime: the field of a generated family, or the prime for `radicals`.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Truncation degree for homology.
    #[arg(long, global = true)]
    pub d: Option<u64>,
    /// Basepoint object for the fundamental group.
    #[arg(long, global = true)]
    pub basepoint: Option<u64>,
    /// Cap on group closure [default: 20000].
    #[arg(long, global = true)]
    pub max_order: Option<u64>,
    /// Cap on nerve chains per degree [default: 2000000].
    #[arg(long, global = true)]
    pub max_chains: Option<u64>,
    /// Cap on live cosets during enumeration [default: 10000].
    #[arg(long, global = true)]
    pub max_cosets: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    /// Pipeline chosen outside the document; otherwise the job's `pipeline` key decides.
    pub pipeline: Option<Pipeline>,
    pub input: Value,
    pub params: Params,
    pub out: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(input: Value) -> JobSpec {
        JobSpec {
            pipeline: None,
            input,
            params: Params::default(),
            out: None,
        }
    }

    pub fn with_pipeline(mut self, pipeline: Pipeline) -> JobSpec {
        self.pipeline = Some(pipeline);
        self
    }
}

/// A finished report. `passed == false` maps to exit status 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn run(job: &JobSpec) -> Result<Outcome, SchemaError> {
    let ctx = Context::new(job)?;
    let pipeline = ctx.pipeline()?;
    let mut outcome = match pipeline {
        Pipeline::Validate => ctx.validate(),
        Pipeline::BuildCat => ctx.build_cat(),
        Pipeline::BorelTits => ctx.borel_tits(),
        Pipeline::Pi1 => ctx.pi1(),
        Pipeline::Homology => ctx.homology(),
        Pipeline::FunctorHomology => ctx.functor_homology(),
        Pipeline::Radicals => ctx.radicals(),
        Pipeline::Flagposet => ctx.flagposet(),
    }?;
    if let Value::Object(map) = &mut outcome.report {
        map.insert("format".into(), json!(FORMAT));
        if pipeline != Pipeline::Flagposet {
            map.insert("pipeline".into(), json!(pipeline.name()));
            map.entry("pass").or_insert(json!(outcome.passed));
            map.insert(
                "status".into(),
                json!(if outcome.passed { "PASS" } else { "FAIL" }),
            );
        }
    }
    Ok(outcome)
}

/// The canonical dump of the category a job describes.
pub fn dump_category(job: &JobSpec) -> Result<Value, SchemaError> {
    let ctx = Context::new(job)?;
    let category = ctx
        .category(true)?
        .map_err(|e| SchemaError::new("", e.to_string()))?;
    Ok(category.to_json())
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn render(report: &Value) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("JSON values always serialise");
    text.push('\n');
    text
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Runs a job and emits its report; returns the exit status.
pub fn execute(job: &JobSpec) -> i32 {
    match run(job) {
        Ok(outcome) => {
            let text = render(&outcome.report);
            let written = match &job.out {
                Some(path) => write_atomic(path, text.as_bytes()),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => outcome.exit_code(),
                Err(e) => report_error(&SchemaError::new("", format!("cannot write output: {e}"))),
            }
        }
        Err(e) => report_error(&e),
    }
}

fn report_error(e: &SchemaError) -> i32 {
    let body = json!({"format": FORMAT, "error": {"pointer": e.pointer, "message": e.message}});
    eprint!("{}", render(&body));
    2
}

#[derive(Debug, Parser)]
#[command(
    name = "exitcat",
    version,
    about = "Quotient categories of finite group actions on posets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Job file (JSON).
    #[arg(long = "in", global = true, conflicts_with = "spec")]
    pub input: Option<PathBuf>,
    /// Inline job (JSON).
    #[arg(long, global = true)]
    pub spec: Option<String>,
    /// Report destination; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Run the pipeline named by the job's "pipeline" key.
    Run,
    /// Check the action and link axioms of a G-poset.
    Validate,
    /// Dump the quotient category as canonical JSON.
    BuildCat,
    /// Compare the flag category with the orbit category on radicals.
    BorelTits,
    /// Fundamental group of the category against G/E.
    Pi1,
    /// Nerve homology through degree d.
    Homology,
    /// Homology with coefficients in a functor.
    FunctorHomology,
    /// Exhaustive p-radical subgroup scan.
    Radicals,
    /// Expand a generated family into group and poset JSON.
    Flagposet,
}

impl Command {
    fn pipeline(self) -> Option<Pipeline> {
        match self {
            Command::Run => None,
            Command::Validate => Some(Pipeline::Validate),
            Command::BuildCat => Some(Pipeline::BuildCat),
            Command::BorelTits => Some(Pipeline::BorelTits),
            Command::Pi1 => Some(Pipeline::Pi1),
            Command::Homology => Some(Pipeline::Homology),
            Command::FunctorHomology => Some(Pipeline::FunctorHomology),
            Command::Radicals => Some(Pipeline::Radicals),
            Command::Flagposet => Some(Pipeline::Flagposet),
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let text = match (&cli.io.input, &cli.io.spec) {
        (Some(path), _) => match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                return report_error(&SchemaError::new(
                    "",
                    format!("cannot read {}: {e}", path.display()),
                ))
            }
        },
        (None, Some(spec)) => spec.clone(),
        (None, None) => "{}".to_owned(),
    };
    let input: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return report_error(&SchemaError::new("", format!("invalid JSON: {e}"))),
    };
    let job = JobSpec {
        pipeline: cli.command.pipeline(),
        input,
        params: cli.params,
        out: cli.io.out,
    };
    execute(&job)
}

struct Context<'a> {
    job: &'a JobSpec,
    obj: &'a Map<String, Value>,
}

/// What a job's input describes.
enum Source {
    Flags(FlagPoset),
    Poset(GPoset),
}

impl Source {
    fn poset(&self) -> &GPoset {
        match self {
            Source::Flags(f) => f.gposet(),
            Source::Poset(p) => p,
        }
    }
}

fn group_error(pointer: &str, e: GroupError) -> SchemaError {
    SchemaError::new(pointer, e.to_string())
}

fn lie_error(pointer: &str, e: LieError) -> SchemaError {
    SchemaError::new(pointer, e.to_string())
}

/// A verified failure becomes a failing report rather than an input error.
fn failure(message: impl Into<String>) -> Outcome {
    Outcome {
        report: json!({"error": message.into()}),
        passed: false,
    }
}

impl<'a> Context<'a> {
    fn new(job: &'a JobSpec) -> Result<Context<'a>, SchemaError> {
        Ok(Context {
            job,
            obj: schema::object(&job.input, "")?,
        })
    }

    fn pipeline(&self) -> Result<Pipeline, SchemaError> {
        let named = match self.obj.get("pipeline") {
            None => None,
            Some(v) => {
                let name = schema::string(v, "/pipeline")?;
                Some(Pipeline::parse(name).ok_or_else(|| {
                    let known: Vec<&str> = Pipeline::ALL.iter().map(|p| p.name()).collect();
                    SchemaError::new(
                        "/pipeline",
                        format!(
                            "unknown pipeline \"{name}\"; expected one of {}",
                            known.join(", ")
                        ),
                    )
                })?)
            }
        };
        match (self.job.pipeline, named) {
            (Some(a), Some(b)) if a != b => Err(SchemaError::new(
                "/pipeline",
                format!(
                    "job names pipeline \"{}\" but \"{}\" was requested",
                    b.name(),
                    a.name()
                ),
            )),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Err(SchemaError::new("", "missing field \"pipeline\"")),
        }
    }

    /// A parameter from the flags, else from the job.
    fn param(&self, key: &str, flag: Option<u64>) -> Result<Option<u64>, SchemaError> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.obj
            .get(key)
            .map(|v| schema::uint(v, &child("", key)))
            .transpose()
    }

    fn max_order(&self) -> Result<usize, SchemaError> {
        Ok(self
            .param("max_order", self.job.params.max_order)?
            .map_or(DEFAULT_MAX_ORDER, |x| x as usize))
    }

    fn max_chains(&self) -> Result<usize, SchemaError> {
        Ok(self
            .param("max_chains", self.job.params.max_chains)?
            .map_or(DEFAULT_MAX_CHAINS, |x| x as usize))
    }

    fn max_cosets(&self) -> Result<usize, SchemaError> {
        Ok(self
            .param("max_cosets", self.job.params.max_cosets)?
            .map_or(DEFAULT_MAX_COSETS, |x| x as usize))
    }

    fn flag(&self, key: &str) -> Result<bool, SchemaError> {
        match self.obj.get(key) {
            None => Ok(false),
            Some(v) => v
                .as_bool()
                .ok_or_else(|| SchemaError::new(child("", key), "expected a boolean")),
        }
    }

    fn trivial_links(&self) -> Result<bool, SchemaError> {
        match self.obj.get("links") {
            None => Ok(false),
            Some(v) => match schema::string(v, "/links")? {
                "graded" => Ok(false),
                "trivial" => Ok(true),
                other => Err(SchemaError::new(
                    "/links",
                    format!("expected \"graded\" or \"trivial\", found \"{other}\""),
                )),
            },
        }
    }

    fn group(&self) -> Result<Arc<FinGroup>, SchemaError> {
        let descriptor =
            GroupDescriptor::from_json(schema::field(self.obj, "group", "")?, "/group")?;
        let group = descriptor
            .build(self.max_order()?)
            .map_err(|e| group_error("/group", e))?;
        Ok(Arc::new(group))
    }

    fn family(&self) -> Result<FlagPoset, SchemaError> {
        let family = schema::string(schema::field(self.obj, "family", "")?, "/family")?;
        if family != "GL" {
            return Err(SchemaError::new(
                "/family",
                format!("unknown family \"{family}\"; only \"GL\" is generated"),
            ));
        }
        let n = schema::uint(schema::field(self.obj, "n", "")?, "/n")?;
        let p = self
            .param("p", self.job.params.p)?
            .ok_or_else(|| SchemaError::new("", "missing field \"p\""))?;
        let p =
            u32::try_from(p).map_err(|_| SchemaError::new("/p", format!("{p} is out of range")))?;
        FlagPoset::with_cap(n as usize, p, self.max_order()?).map_err(|e| lie_error("", e))
    }

    fn source(&self) -> Result<Source, SchemaError> {
        let mut source = if self.obj.contains_key("family") {
            Source::Flags(self.family()?)
        } else {
            let group = self.group()?;
            Source::Poset(GPoset::from_json(
                &group,
                schema::field(self.obj, "poset", "")?,
                "/poset",
            )?)
        };
        if self.trivial_links()? {
            source = Source::Poset(source.poset().with_trivial_links());
        }
        Ok(source)
    }

    /// The quotient category, optionally its opposite. The outer error is an
    /// input error, the inner one a failed axiom check.
    fn category(
        &self,
        allow_opposite: bool,
    ) -> Result<Result<Category, CategoryError>, SchemaError> {
        let source = self.source()?;
        let opposite = self.flag("opposite")?;
        if opposite && !allow_opposite {
            return Err(SchemaError::new(
                "/opposite",
                "this pipeline needs the category itself",
            ));
        }
        let category = build_category(source.poset());
        Ok(if opposite {
            category.and_then(|c| c.opposite())
        } else {
            category
        })
    }

    fn coefficients(&self, v: Option<&Value>, pointer: &str) -> Result<Coefficients, SchemaError> {
        match v {
            None => Ok(Coefficients::Integers),
            Some(Value::String(s)) if s == "Z" => Ok(Coefficients::Integers),
            Some(v) => {
                let p = schema::uint(v, pointer)
                    .map_err(|_| SchemaError::new(pointer, "expected \"Z\" or a prime"))?;
                match u32::try_from(p) {
                    Ok(p) if crate::group::is_prime(p) => Ok(Coefficients::Field(p)),
                    _ => Err(SchemaError::new(pointer, format!("{p} is not a prime"))),
                }
            }
        }
    }

    fn degree(&self) -> Result<usize, SchemaError> {
        Ok(self.param("d", self.job.params.d)?.unwrap_or(2) as usize)
    }

    fn validate(&self) -> Result<Outcome, SchemaError> {
        let source = self.source()?;
        let poset = source.poset();
        let action = poset.validate_action();
        let links = poset.validate_links();
        let listed = |v: Vec<String>| json!({"total": v.len(), "listed": v.into_iter().take(LISTED_VIOLATIONS).collect::<Vec<_>>()});
        let passed = action.passed() && links.passed();
        let report = json!({
            "items": poset.len(),
            "group_order": poset.group().order(),
            "action": {
                "pass": action.passed(),
                "violations": listed(action.violations.iter().map(ToString::to_string).collect()),
            },
            "links": {
                "pass": links.passed(),
                "violations": listed(links.violations.iter().map(ToString::to_string).collect()),
                "non_normal": links.non_normal.iter().map(|&i| &poset.items()[i]).collect::<Vec<_>>(),
            },
        });
        Ok(Outcome { report, passed })
    }

    fn build_cat(&self) -> Result<Outcome, SchemaError> {
        Ok(match self.category(true)? {
            Ok(category) => Outcome {
                report: category.to_json(),
                passed: true,
            },
            Err(e) => failure(e.to_string()),
        })
    }

    fn borel_tits(&self) -> Result<Outcome, SchemaError> {
        let flags = if self.obj.contains_key("family") {
            self.family()?
        } else {
            let group = self.group()?;
            if !matches!(group.kind(), GroupKind::Matrix { .. }) {
                return Err(SchemaError::new(
                    "/group",
                    "borel-tits needs a matrix group",
                ));
            }
            FlagPoset::over(group).map_err(|e| lie_error("/group", e))?
        };
        match BorelTits::new(flags) {
            Ok(bt) => {
                let report = bt.report();
                Ok(Outcome {
                    passed: report.passed(),
                    report: report.to_json(),
                })
            }
            Err(e @ (LieError::Category(_) | LieError::Poset(_) | LieError::NotRadical { .. })) => {
                Ok(failure(e.to_string()))
            }
            Err(e) => Err(lie_error("", e)),
        }
    }

    fn pi1(&self) -> Result<Outcome, SchemaError> {
        let source = self.source()?;
        let category = match self.category(false)? {
            Ok(c) => c,
            Err(e) => return Ok(failure(e.to_string())),
        };
        let default_base = match &source {
            Source::Flags(f) => f.top(),
            Source::Poset(_) => 0,
        };
        let basepoint = self
            .param("basepoint", self.job.params.basepoint)?
            .map_or(default_base, |b| b as usize);
        let max_cosets = self.max_cosets()?;
        let report = pi1_vs_quotient(&category, source.poset(), basepoint, max_cosets).map_err(
            |e| match e {
                HomotopyError::UnknownObject(_) | HomotopyError::DisconnectedBasepoint { .. } => {
                    SchemaError::new("/basepoint", e.to_string())
                }
                other => SchemaError::new("", other.to_string()),
            },
        )?;
        if let CosetOutcome::Inconclusive { live, defined } = report.enumeration.outcome {
            return Err(SchemaError::new(
                "/max_cosets",
                format!("coset enumeration did not close within {max_cosets} cosets ({live} live, {defined} defined)"),
            ));
        }
        let mut json = report.to_json();
        json["order"] = json["pi1_order"].clone();
        json["basepoint"] = json!(category.objects()[basepoint]);
        Ok(Outcome {
            passed: report.passed(),
            report: json,
        })
    }

    fn chain_error(e: HomotopyError) -> SchemaError {
        match e {
            HomotopyError::ChainCap { .. } => SchemaError::new("/max_chains", e.to_string()),
            HomotopyError::NotFunctorial(_) => SchemaError::new("/functor", e.to_string()),
            other => SchemaError::new("", other.to_string()),
        }
    }

    fn homology(&self) -> Result<Outcome, SchemaError> {
        let coefficients = self.coefficients(self.obj.get("coefficients"), "/coefficients")?;
        let d = self.degree()?;
        let max_chains = self.max_chains()?;
        let category = match self.category(true)? {
            Ok(c) => c,
            Err(e) => return Ok(failure(e.to_string())),
        };
        let constant = CoefficientFunctor::constant(&category, coefficients);
        let complex =
            build_complex(&category, &constant, d, max_chains).map_err(Self::chain_error)?;
        let squared = complex.check_boundary_squared();
        let homology = complex.all_homology();
        let report = json!({
            "coefficients": coefficients.to_string(),
            "degree": d,
            "objects": category.num_objects(),
            "morphisms": category.num_morphisms(),
            "chain_ranks": complex.ranks(),
            "boundary_squared_zero": squared.is_ok(),
            "homology": homology.iter().map(|h| h.to_json()).collect::<Vec<_>>(),
            "display": homology.iter().map(ToString::to_string).collect::<Vec<_>>(),
        });
        Ok(Outcome {
            report,
            passed: squared.is_ok(),
        })
    }

    /// `"constant"` (optionally with `coefficients`) or an explicit functor
    /// `{"coefficients": "Z" | p, "dims": [..], "matrices": [[..], ..]}` with
    /// one row-major matrix per morphism id.
    fn coefficient_functor(
        &self,
        category: &Category,
    ) -> Result<(CoefficientFunctor, bool), SchemaError> {
        let top = self.coefficients(self.obj.get("coefficients"), "/coefficients")?;
        let Some(spec) = self.obj.get("functor") else {
            return Ok((CoefficientFunctor::constant(category, top), true));
        };
        if spec.as_str() == Some("constant") {
            return Ok((CoefficientFunctor::constant(category, top), true));
        }
        let obj = schema::object(spec, "/functor")?;
        let coefficients = self.coefficients(obj.get("coefficients"), "/functor/coefficients")?;
        let dims: Vec<usize> =
            schema::uint_array(schema::field(obj, "dims", "/functor")?, "/functor/dims")?
                .into_iter()
                .map(|x| x as usize)
                .collect();
        let matrices_ptr = "/functor/matrices";
        let matrices = schema::array(schema::field(obj, "matrices", "/functor")?, matrices_ptr)?
            .iter()
            .enumerate()
            .map(|(f, m)| {
                let ptr = child(matrices_ptr, f);
                schema::array(m, &ptr)?
                    .iter()
                    .enumerate()
                    .map(|(k, x)| schema::int(x, &child(&ptr, k)))
                    .collect()
            })
            .collect::<Result<Vec<Vec<i64>>, _>>()?;
        Ok((
            CoefficientFunctor {
                coefficients,
                dims,
                matrices,
            },
            false,
        ))
    }

    fn functor_homology(&self) -> Result<Outcome, SchemaError> {
        let d = self.degree()?;
        let max_chains = self.max_chains()?;
        let category = match self.category(true)? {
            Ok(c) => c,
            Err(e) => return Ok(failure(e.to_string())),
        };
        let (functor, constant) = self.coefficient_functor(&category)?;
        let homology =
            functor_homology(&category, &functor, d, max_chains).map_err(Self::chain_error)?;
        let mut report = json!({
            "coefficients": functor.coefficients.to_string(),
            "degree": d,
            "constant": constant,
            "homology": homology.iter().map(|h| h.to_json()).collect::<Vec<_>>(),
            "display": homology.iter().map(ToString::to_string).collect::<Vec<_>>(),
        });
        let mut passed = true;
        if constant {
            let nerve = build_complex(&category, &functor, d, max_chains)
                .map_err(Self::chain_error)?
                .all_homology();
            passed = nerve == homology;
            report["matches_nerve"] = json!(passed);
        }
        Ok(Outcome { report, passed })
    }

    fn radicals(&self) -> Result<Outcome, SchemaError> {
        let (group, p, flags) = if self.obj.contains_key("family") {
            let flags = self.family()?;
            (flags.group().clone(), flags.p(), Some(flags))
        } else {
            let group = self.group()?;
            let p = self
                .param("p", self.job.params.p)?
                .ok_or_else(|| SchemaError::new("", "missing field \"p\""))?;
            let p = u32::try_from(p)
                .ok()
                .filter(|&p| crate::group::is_prime(p))
                .ok_or_else(|| SchemaError::new("/p", format!("{p} is not a prime")))?;
            (group, p, None)
        };
        let radicals =
            exhaustive_radical_enumeration(&group, p).map_err(|e| lie_error("/group", e))?;
        let list: Vec<Value> = radicals
            .members()
            .iter()
            .map(|u| json!({"order": u.order(), "generators": u.generators(), "normalizer_order": u.normalizer().order()}))
            .collect();
        let mut report = json!({"p": p, "group_order": group.order(), "count": radicals.len(), "radicals": list});
        let mut passed = true;
        if let Some(flags) = &flags {
            passed = radicals_match_flags(flags).map_err(|e| lie_error("/group", e))?;
            report["matches_flags"] = json!(passed);
            report["flags"] = json!(flags.len());
        }
        Ok(Outcome { report, passed })
    }

    fn flagposet(&self) -> Result<Outcome, SchemaError> {
        let flags = self.family()?;
        let group = flags.group();
        let descriptor = GroupDescriptor::of(group).expect("generated groups are matrix groups");
        let report = json!({
            "group": descriptor.to_json(),
            "group_order": group.order(),
            "poset": flags.gposet().to_json(),
            "flags": flags.flags().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "parabolic_orders": (0..flags.len()).map(|i| flags.parabolic(i).order()).collect::<Vec<_>>(),
            "link_orders": (0..flags.len()).map(|i| flags.graded_link(i).order()).collect::<Vec<_>>(),
        });
        Ok(Outcome {
            report,
            passed: true,
        })
    }
}
