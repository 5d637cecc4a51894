//! `flatweb`: analysis and flatness decisions for homogeneous foliations.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use flatweb::exec::Exec;
use flatweb::flatness::{classify_degree3, flatness_decision_with, FlatnessError, FlatnessStatus, ModelMatch};
use flatweb::foliation::HomFoliation;
use flatweb::models::{self, Model, FAMILY_IDS, FIXED_IDS, FIXTURE_IDS};
use flatweb::oracle::{
    beta_flatness_test, curvature::DEFAULT_STEP, curvature_test, legendre_general, legendre_implicit, GeneralFoliation,
    ImplicitWeb, NumericVerdict,
};
use flatweb::parser::{parse_general_oneform, parse_oneform, ParseError};
use flatweb::report::{analysis_text, verdict_text, Report};

const EXIT_NOT_FLAT: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

#[derive(Parser)]
#[command(name = "flatweb", version, about = "Flatness of Legendre webs of homogeneous foliations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inflection divisor, type, singularities at infinity and CS polynomial.
    Analyze(Common),
    /// Exact flatness verdict, optionally corroborated by the β test.
    Flatness {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Identify a flat cubic foliation with one of the eleven models.
    Classify(Common),
    /// Blaschke curvature of the dual web at random points.
    Curvature {
        #[command(flatten)]
        common: Common,
        /// Number of sample points.
        #[arg(long, default_value_t = 5)]
        points: usize,
        /// Finite-difference step.
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Implicit equation of the dual web.
    Legendre(Common),
    /// Built-in catalogue.
    Models {
        #[command(subcommand)]
        cmd: ModelsCmd,
    },
}

#[derive(Subcommand)]
enum ModelsCmd {
    List {
        #[arg(long)]
        json: bool,
    },
    Show {
        id: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        nu: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    /// 1-form such as "y^3*dx - x^3*dy".
    #[arg(long, conflicts_with_all = ["model", "fermat"])]
    form: Option<String>,
    /// Catalogue id, e.g. omega7 or omega4d with --d and --nu.
    #[arg(long, conflicts_with = "fermat")]
    model: Option<String>,
    /// The Fermat foliation of degree --d.
    #[arg(long)]
    fermat: bool,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    nu: Option<usize>,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct NumericArgs {
    /// Run the floating-point β-constancy test as well.
    #[arg(long)]
    numeric: bool,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

/// Error carrying the process exit code.
struct Failure(u8, String);

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INVALID, e.to_string())
}

enum Input {
    Hom(HomFoliation),
    General(GeneralFoliation),
}

fn resolve(c: &Common) -> Result<Input, Failure> {
    if c.fermat {
        let d = c.d.ok_or_else(|| invalid("--fermat needs --d"))?;
        return match models::lookup("fermat", Some(d), None).map_err(invalid)? {
            Model::General(g) => Ok(Input::General(g)),
            Model::Homogeneous(h) => Ok(Input::Hom(h)),
        };
    }
    if let Some(id) = &c.model {
        return match models::lookup(id, c.d, c.nu).map_err(invalid)? {
            Model::General(g) => Ok(Input::General(g)),
            Model::Homogeneous(h) => Ok(Input::Hom(h)),
        };
    }
    let text = c.form.as_deref().ok_or_else(|| invalid("one of --form, --model or --fermat is required"))?;
    match parse_oneform(text) {
        Ok((a, b)) => HomFoliation::new(a, b).map(Input::Hom).map_err(invalid),
        Err(ParseError::NotHomogeneous) => {
            let (a, b) = parse_general_oneform(text).map_err(invalid)?;
            GeneralFoliation::new(&a, &b).map(Input::General).map_err(invalid)
        }
        Err(e) => Err(invalid(e)),
    }
}

fn homogeneous(c: &Common) -> Result<HomFoliation, Failure> {
    match resolve(c)? {
        Input::Hom(h) => Ok(h),
        Input::General(_) => Err(invalid("this command needs a homogeneous 1-form")),
    }
}

fn emit(json: bool, value: Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{text}");
    }
}

fn status_code(s: FlatnessStatus) -> u8 {
    match s {
        FlatnessStatus::Flat => 0,
        FlatnessStatus::NotFlat => EXIT_NOT_FLAT,
        FlatnessStatus::Undecided => EXIT_UNDECIDED,
    }
}

fn numeric_code(v: NumericVerdict) -> u8 {
    match v {
        NumericVerdict::Flat => 0,
        NumericVerdict::NotFlat => EXIT_NOT_FLAT,
        NumericVerdict::Inconclusive => EXIT_UNDECIDED,
    }
}

fn analyze(c: &Common) -> Result<u8, Failure> {
    let a = homogeneous(c)?.analyze();
    let text = analysis_text(&a);
    let report = Report { analysis: Some(a), ..Default::default() };
    emit(c.json, report.to_json(), text);
    Ok(0)
}

fn flatness(c: &Common, n: &NumericArgs) -> Result<u8, Failure> {
    let h = homogeneous(c)?;
    let verdict = flatness_decision_with(&h, Exec::default());
    let mut text = verdict_text(&verdict);
    let numeric = if n.numeric && h.degree() >= 3 {
        let r = beta_flatness_test(&h, n.samples, n.seed, n.tol, Exec::default()).map_err(|e| Failure(EXIT_UNDECIDED, e.to_string()))?;
        text += &format!("beta test     {:?} (spread {:.3e}, scale {:.3e})\n", r.verdict, r.spread, r.scale);
        Some(r.to_json())
    } else {
        None
    };
    let code = status_code(verdict.status);
    let report = Report { analysis: Some(h.analyze()), flatness: Some(verdict), numeric, model_match: None };
    emit(c.json, report.to_json(), text);
    Ok(code)
}

fn classify(c: &Common) -> Result<u8, Failure> {
    let h = homogeneous(c)?;
    let (m, code) = match classify_degree3(&h) {
        Ok(m @ ModelMatch::Model(_)) => (m, 0),
        // a flat cubic outside the eleven classes would contradict the classification
        Ok(ModelMatch::NoMatch) => (ModelMatch::NoMatch, EXIT_NOT_FLAT),
        Err(FlatnessError::NotFlat) => {
            let v = flatness_decision_with(&h, Exec::default());
            return Err(Failure(status_code(v.status), format!("not flat: {:?}", v.status)));
        }
        Err(e) => return Err(invalid(e)),
    };
    let text = match &m {
        ModelMatch::Model(id) => format!("{id}\n"),
        ModelMatch::NoMatch => "NoMatch: flat cubic outside the eleven models (falsification finding)\n".into(),
    };
    let report = Report { model_match: Some(m), ..Default::default() };
    emit(c.json, report.to_json(), text);
    Ok(code)
}

fn web(c: &Common) -> Result<ImplicitWeb, Failure> {
    Ok(match resolve(c)? {
        Input::Hom(h) => legendre_implicit(&h),
        Input::General(g) => legendre_general(&g),
    })
}

fn curvature(c: &Common, points: usize, step: f64, seed: u64) -> Result<u8, Failure> {
    let w = web(c)?;
    if w.degree_in_x < 3 {
        return Err(invalid(format!("a {}-web carries no curvature", w.degree_in_x)));
    }
    let r = curvature_test(&w, points, seed, step, Exec::default()).map_err(|e| Failure(EXIT_UNDECIDED, e.to_string()))?;
    let mut text = String::new();
    for s in &r.samples {
        text += &format!("p = {:.6}  q = {:.6}  K = {:.3e}  |K|/scale = {:.3e}\n", s.point.0, s.point.1, s.k, s.scaled);
    }
    text += &format!("verdict {:?} (max scaled |K| {:.3e})\n", r.verdict, r.spread);
    emit(c.json, json!({"schema_version": "1", "numeric": r.to_json()}), text);
    Ok(numeric_code(r.verdict))
}

fn legendre(c: &Common) -> Result<u8, Failure> {
    let w = web(c)?;
    let value = json!({"schema_version": "1", "implicit": w.f.to_string(), "degree_in_x": w.degree_in_x});
    emit(c.json, value, format!("{}\n", w.f));
    Ok(0)
}

fn models_cmd(cmd: &ModelsCmd) -> Result<u8, Failure> {
    match cmd {
        ModelsCmd::List { json } => {
            let mut rows = Vec::new();
            let mut text = String::new();
            for id in FIXED_IDS.iter().chain(&FIXTURE_IDS) {
                let h = models::catalog_model(id).map_err(invalid)?;
                let ty = h.divisor_analysis().1.to_string();
                text += &format!("{id:<16} degree {}  type {ty}\n", h.degree());
                rows.push(json!({"id": id, "kind": "fixed", "degree": h.degree(), "type": ty}));
            }
            for id in FAMILY_IDS {
                let params = match id {
                    "omega3d" | "omega4d" => "--d D --nu NU",
                    _ => "--d D",
                };
                text += &format!("{id:<16} family  {params}\n");
                rows.push(json!({"id": id, "kind": "family", "params": params}));
            }
            emit(*json, json!({"schema_version": "1", "models": rows}), text);
        }
        ModelsCmd::Show { id, d, nu } => {
            let form = match models::lookup(id, *d, *nu).map_err(invalid)? {
                Model::Homogeneous(h) => h.to_string(),
                Model::General(g) => format!("({})*dx + ({})*dy", g.a(), g.b()),
            };
            println!("{form}");
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Analyze(c) => analyze(c),
        Cmd::Flatness { common, numeric } => flatness(common, numeric),
        Cmd::Classify(c) => classify(c),
        Cmd::Curvature { common, points, step, seed } => curvature(common, *points, *step, *seed),
        Cmd::Legendre(c) => legendre(c),
        Cmd::Models { cmd } => models_cmd(cmd),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

