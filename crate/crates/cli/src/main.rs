//! `ecta`: emptiness checks, region automaton export, membership and the
//! bundled demonstrations for event-clock automata.
//!
//! Every command prints one `key: value` line per result field, or a single
//! JSON object with `--json`. Exit status 0 means the command ran (the
//! verdict is in the output), 1 that a demo check failed, 2 bad input.

mod demo;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ecta::analysis::{back_exact_with, forw_exact_with, SearchOptions};
use ecta::automaton::{accepting_run, bounded_untimed_language, initial_state, EctaFile};
use ecta::{build, state_count_bound, BuildMode, Ecta, Quantifier, RegionVariant, TimedWord};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ecta", version, about = "Event-clock automata toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide or semi-decide emptiness of the untimed language.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Region)]
        method: Method,
        /// States the zone searches may dequeue before giving up.
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
        /// Zone searches accept only when the whole zone is accepting.
        #[arg(long)]
        literal_accept: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build a region automaton and report its size.
    Untime {
        file: PathBuf,
        #[command(flatten)]
        build: BuildFlags,
        /// Write `<PATH>.dot` and `<PATH>.json`.
        #[arg(short = 'o', value_name = "PATH")]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Does the automaton accept a timed word?
    Member {
        file: PathBuf,
        /// `[["b","0"],["a","1/2"]]` or `b@0 a@1/2`.
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// List accepted untimed words up to a length.
    BoundedLang {
        file: PathBuf,
        #[arg(short, default_value_t = 4)]
        k: usize,
        /// Use a region automaton instead of the zone search.
        #[arg(long)]
        region: bool,
        #[command(flatten)]
        build: BuildFlags,
        #[command(flatten)]
        common: Common,
    },
    /// Run a bundled demonstration: ainf, backdiv or forwdiv.
    Demo {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Region constant; defaults to the largest guard constant.
    #[arg(long)]
    cmax: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BuildFlags {
    #[arg(long, conflicts_with = "forall")]
    exists: bool,
    #[arg(long)]
    forall: bool,
    #[arg(long, conflicts_with = "refined")]
    classic: bool,
    #[arg(long)]
    refined: bool,
}

impl BuildFlags {
    fn mode(&self) -> BuildMode {
        let q = if self.forall {
            Quantifier::Universal
        } else {
            Quantifier::Existential
        };
        let v = if self.refined {
            RegionVariant::Refined
        } else {
            RegionVariant::Classic
        };
        BuildMode::new(q, v)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Region,
    Forward,
    Backward,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Region => "region",
            Method::Forward => "forward",
            Method::Backward => "backward",
        }
    }
}

pub enum Failure {
    /// Bad file, word, flag value or output path.
    Input(String),
    /// A demo ran but one of its checks did not hold.
    Check(Value),
}

impl From<ecta::Error> for Failure {
    fn from(e: ecta::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

/// An automaton file together with the region constant to use.
struct Loaded {
    ecta: Ecta,
    cmax: u32,
}

fn load(path: &Path, cmax: Option<u32>) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file: EctaFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let declared = file.cmax;
    let ecta = file.into_ecta()?;
    let required = ecta.max_constant();
    let cmax = cmax.or(declared).unwrap_or(required);
    if cmax < required {
        return Err(ecta::Error::CmaxTooSmall { cmax, required }.into());
    }
    Ok(Loaded { ecta, cmax })
}

fn parse_word(text: &str) -> Result<TimedWord, Failure> {
    let word = if text.trim_start().starts_with('[') {
        TimedWord::from_json(text)?
    } else {
        TimedWord::parse(text)?
    };
    Ok(word)
}

fn words_json(words: impl IntoIterator<Item = Vec<ecta::Symbol>>) -> Value {
    let words: Vec<String> = words
        .into_iter()
        .map(|w| {
            if w.is_empty() {
                "ε".to_string()
            } else {
                w.iter().map(|s| s.as_str()).collect()
            }
        })
        .collect();
    json!(words)
}

fn check(
    loaded: &Loaded,
    method: Method,
    fuel: usize,
    literal_accept: bool,
) -> Result<Value, Failure> {
    let a = &loaded.ecta;
    let mut out = Map::new();
    out.insert("command".into(), json!("check"));
    out.insert("method".into(), json!(method.name()));
    match method {
        Method::Region => {
            let ra = build(
                a,
                loaded.cmax,
                BuildMode::new(Quantifier::Existential, RegionVariant::Classic),
            )?;
            out.insert("language_empty".into(), json!(ra.language_empty()));
            out.insert("cmax".into(), json!(loaded.cmax));
            out.insert("states".into(), json!(ra.states().len()));
        }
        Method::Forward | Method::Backward => {
            let opts = SearchOptions {
                fuel,
                literal_accept,
            };
            let r = if method == Method::Forward {
                forw_exact_with(a, &opts)?
            } else {
                back_exact_with(a, &opts)?
            };
            let empty = match r.verdict {
                ecta::Verdict::Empty => json!(true),
                ecta::Verdict::NonEmpty => json!(false),
                ecta::Verdict::Unknown => json!("unknown"),
            };
            out.insert("language_empty".into(), empty);
            out.insert("verdict".into(), json!(r.verdict));
            out.insert("steps".into(), json!(r.steps_used));
            if let Some(path) = r.witness {
                let path: Vec<Value> = path
                    .iter()
                    .map(|s| json!({"location": s.location, "zone": s.zone.debug_string()}))
                    .collect();
                out.insert("witness".into(), json!(path));
            }
        }
    }
    Ok(Value::Object(out))
}

fn untime(loaded: &Loaded, mode: BuildMode, out_path: Option<&Path>) -> Result<Value, Failure> {
    let ra = build(&loaded.ecta, loaded.cmax, mode)?;
    if let Some(base) = out_path {
        let write = |ext: &str, body: String| {
            let path = base.with_extension(ext);
            std::fs::write(&path, body)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        };
        write("dot", ra.to_dot())?;
        let mut body = serde_json::to_string_pretty(&ra.to_json()).expect("json value");
        body.push('\n');
        write("json", body)?;
    }
    let mut out = Map::new();
    out.insert("command".into(), json!("untime"));
    out.insert("quantifier".into(), json!(mode.quantifier.to_string()));
    out.insert("variant".into(), json!(mode.variant.to_string()));
    out.insert("cmax".into(), json!(loaded.cmax));
    out.insert("states".into(), json!(ra.states().len()));
    out.insert("edges".into(), json!(ra.edges().len()));
    out.insert("accepting".into(), json!(ra.accepting().len()));
    out.insert("language_empty".into(), json!(ra.language_empty()));
    out.insert(
        "bound".into(),
        json!(state_count_bound(&loaded.ecta, loaded.cmax).to_string()),
    );
    if let Some(base) = out_path {
        out.insert(
            "dot".into(),
            json!(base.with_extension("dot").display().to_string()),
        );
        out.insert(
            "json".into(),
            json!(base.with_extension("json").display().to_string()),
        );
    }
    Ok(Value::Object(out))
}

fn member(loaded: &Loaded, word: &TimedWord) -> Result<Value, Failure> {
    let run = accepting_run(&loaded.ecta, word)?;
    let mut out = Map::new();
    out.insert("command".into(), json!("member"));
    out.insert("word".into(), json!(word.to_string()));
    out.insert("accepted".into(), json!(run.is_some()));
    if let Some(run) = run {
        let edges: Vec<String> = run
            .iter()
            .map(|&k| loaded.ecta.edges()[k].to_string())
            .collect();
        out.insert("run".into(), json!(edges));
    }
    Ok(Value::Object(out))
}

fn bounded_lang(loaded: &Loaded, k: usize, region: Option<BuildMode>) -> Result<Value, Failure> {
    let a = &loaded.ecta;
    let mut out = Map::new();
    out.insert("command".into(), json!("bounded-lang"));
    out.insert("k".into(), json!(k));
    let words = match region {
        Some(mode) => {
            out.insert("method".into(), json!(format!("region {mode}")));
            build(a, loaded.cmax, mode)?.bounded_language(k)
        }
        None => {
            out.insert("method".into(), json!("zone"));
            bounded_untimed_language(a, &[initial_state(a)], k)?
        }
    };
    out.insert("count".into(), json!(words.len()));
    out.insert("words".into(), words_json(words));
    Ok(Value::Object(out))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key: value` lines; arrays get one line per element.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        return format!("{}\n", scalar(v));
    };
    for (key, value) in map {
        match value {
            Value::Array(items) => {
                for item in items {
                    out.push_str(&format!("{key}: {}\n", scalar(item)));
                }
            }
            other => out.push_str(&format!("{key}: {}\n", scalar(other))),
        }
    }
    out
}

fn emit(v: &Value, as_json: bool) {
    if as_json {
        println!("{v}");
    } else {
        print!("{}", render_text(v));
    }
}

fn run(cli: Cli) -> (Result<Value, Failure>, bool) {
    match cli.command {
        Command::Check {
            file,
            method,
            fuel,
            literal_accept,
            common,
        } => (
            load(&file, common.cmax).and_then(|l| check(&l, method, fuel, literal_accept)),
            common.json,
        ),
        Command::Untime {
            file,
            build,
            out,
            common,
        } => (
            load(&file, common.cmax).and_then(|l| untime(&l, build.mode(), out.as_deref())),
            common.json,
        ),
        Command::Member { file, word, common } => (
            load(&file, common.cmax).and_then(|l| member(&l, &parse_word(&word)?)),
            common.json,
        ),
        Command::BoundedLang {
            file,
            k,
            region,
            build,
            common,
        } => {
            let any_flag = build.exists || build.forall || build.classic || build.refined;
            let mode = (region || any_flag).then(|| build.mode());
            (
                load(&file, common.cmax).and_then(|l| bounded_lang(&l, k, mode)),
                common.json,
            )
        }
        Command::Demo { name, json } => (demo::run(&name), json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, as_json) = run(cli);
    match result {
        Ok(v) => {
            emit(&v, as_json);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            emit(&v, as_json);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
