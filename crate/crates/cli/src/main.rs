use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use schubitope::verify::{self, Report};
use schubitope::{
    bruhat_leq, column_word, fill_diagram, hrep, key_polynomial, member, rank_diagram, rothe,
    schubert_polynomial, skyline, skyline_vertices, theta_columns, vertices, Composition, Diagram,
    DiagramJson, HRep, HRepJson, Permutation, Polynomial, Rational, Subset, VertexSetJson,
};

#[derive(Parser)]
#[command(
    name = "schubitope",
    version,
    about = "Schubitope vertices, halfspaces and polynomial oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Hform,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Diagram JSON file: {"n": N, "boxes": [[row, col], ...]}
    #[arg(long, value_name = "FILE")]
    diagram: Option<PathBuf>,
    /// Rothe diagram of a permutation
    #[arg(long, value_name = "PERM")]
    rothe: Option<String>,
    /// Skyline diagram of a composition
    #[arg(long, value_name = "COMP")]
    skyline: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Rothe diagram of a permutation
    Rothe {
        #[arg(long, value_name = "PERM")]
        perm: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the skyline diagram of a composition
    Skyline {
        #[arg(long, value_name = "CSV")]
        alpha: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Fill a diagram greedily with a permutation
    Fill {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "PERM")]
        perm: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// List the vertices of the Schubitope
    Vertices {
        #[command(flatten)]
        source: Source,
        /// For skylines, read the vertices off the Bruhat interval instead of sweeping S_n
        #[arg(long)]
        interval: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the halfspace description of the Schubitope
    Hrep {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate theta on a subset, column by column
    Theta {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        set: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate the rank function of the column matroids on a subset
    Rank {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "CSV")]
        set: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Test whether a point lies in a Schubitope or a stored halfspace description
    Member {
        #[arg(long, value_name = "FILE", conflicts_with_all = ["diagram", "rothe", "skyline"])]
        hrep: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        diagram: Option<PathBuf>,
        #[arg(long, value_name = "PERM")]
        rothe: Option<String>,
        #[arg(long, value_name = "COMP")]
        skyline: Option<String>,
        /// Comma-separated coordinates; integers or p/q
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the key polynomial of a composition
    Key {
        #[arg(long, value_name = "CSV")]
        alpha: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the Schubert polynomial of a permutation
    Schubert {
        #[arg(long, value_name = "PERM")]
        perm: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Compare two permutations in Bruhat order
    Bruhat {
        #[arg(long, value_name = "PERM")]
        u: String,
        #[arg(long, value_name = "PERM")]
        w: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run the cross-validation suite
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

/// A failure with a one-line message; `code` is the process exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<schubitope::Error> for Failure {
    fn from(e: schubitope::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<String, Failure>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaJson {
    set: Vec<usize>,
    theta: usize,
    columns: Vec<usize>,
    words: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RankJson {
    set: Vec<usize>,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberJson {
    member: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BruhatJson {
    u: Permutation,
    w: Permutation,
    leq: bool,
}

fn pick(
    format: Option<Format>,
    default: Format,
    allowed: &[Format],
    verb: &str,
) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let name = f
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        Err(usage(format!(
            "format: '{name}' is not available for {verb}"
        )))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    Ok(s.parse::<Permutation>()?)
}

fn parse_comp(s: &str) -> Result<Composition, Failure> {
    Ok(s.parse::<Composition>()?)
}

fn read_file(path: &PathBuf, field: &str) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| usage(format!("{field}: cannot read {}: {e}", path.display())))
}

fn read_diagram(path: &PathBuf) -> Result<Diagram, Failure> {
    let text = read_file(path, "diagram")?;
    let doc: DiagramJson = serde_json::from_str(&text).map_err(|e| {
        usage(format!(
            "diagram: malformed JSON in {}: {e}",
            path.display()
        ))
    })?;
    Ok(Diagram::from_json(&doc)?)
}

fn load(
    diagram: Option<&PathBuf>,
    rothe_perm: Option<&str>,
    skyline_comp: Option<&str>,
) -> Result<Diagram, Failure> {
    match (diagram, rothe_perm, skyline_comp) {
        (Some(p), None, None) => read_diagram(p),
        (None, Some(w), None) => Ok(rothe(&parse_perm(w)?)?),
        (None, None, Some(a)) => Ok(skyline(&parse_comp(a)?)?),
        _ => Err(usage(
            "diagram: give exactly one of --diagram, --rothe, --skyline",
        )),
    }
}

impl Source {
    fn diagram(&self) -> Result<Diagram, Failure> {
        load(
            self.diagram.as_ref(),
            self.rothe.as_deref(),
            self.skyline.as_deref(),
        )
    }
}

fn parse_set(s: &str, n: usize) -> Result<Subset, Failure> {
    let set: Subset = s.parse()?;
    if let Some(m) = set.max() {
        if m > n {
            return Err(usage(format!("set: element {m} outside [1, {n}]")));
        }
    }
    Ok(set)
}

fn parse_point(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<Rational>()
                .map_err(|_| usage(format!("point: '{t}' is not an integer or p/q")))
        })
        .collect()
}

fn diagram_doc(d: &Diagram, format: Format) -> String {
    match format {
        Format::Json => json(&d.to_json()),
        _ => d.to_text(),
    }
}

fn polynomial_doc(p: &Polynomial, format: Format) -> String {
    match format {
        Format::Json => json(&p.to_json()),
        _ => format!("{p}\n"),
    }
}

fn hrep_text(h: &HRep) -> String {
    let vars = |s: Subset| {
        s.iter()
            .map(|i| format!("x{i}"))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let mut out = format!("{} = {}\n", vars(Subset::full(h.n())), h.total());
    for (&s, b) in h.bounds() {
        let _ = writeln!(out, "{} <= {b}", vars(s));
    }
    out
}

fn run(command: Command) -> Outcome {
    use Format::*;
    match command {
        Command::Rothe { perm, format } => {
            let f = pick(format, Text, &[Json, Text], "rothe")?;
            Ok(diagram_doc(&rothe(&parse_perm(&perm)?)?, f))
        }
        Command::Skyline { alpha, format } => {
            let f = pick(format, Text, &[Json, Text], "skyline")?;
            Ok(diagram_doc(&skyline(&parse_comp(&alpha)?)?, f))
        }
        Command::Fill {
            source,
            perm,
            format,
        } => {
            let f = pick(format, Text, &[Json, Text], "fill")?;
            let d = source.diagram()?;
            let filling = fill_diagram(&d, &parse_perm(&perm)?)?;
            Ok(match f {
                Json => json(&filling.to_json()),
                _ => filling.to_text(),
            })
        }
        Command::Vertices {
            source,
            interval,
            format,
        } => {
            let f = pick(format, Json, &[Json, Text], "vertices")?;
            let vs = match (&source.skyline, interval) {
                (Some(a), true) => skyline_vertices(&parse_comp(a)?)?,
                (None, true) => return Err(usage("interval: only available with --skyline")),
                _ => vertices(&source.diagram()?)?,
            };
            Ok(match f {
                Json => json(&VertexSetJson::new(vs)),
                _ => vs.iter().map(|v| format!("{v}\n")).collect(),
            })
        }
        Command::Hrep { source, format } => {
            let f = pick(format, Json, &[Json, Text, Hform], "hrep")?;
            let h = hrep(&source.diagram()?)?;
            Ok(match f {
                Json => json(&h.to_json()),
                Hform => h.to_hform(),
                Text => hrep_text(&h),
            })
        }
        Command::Theta {
            source,
            set,
            format,
        } => {
            let f = pick(format, Text, &[Json, Text], "theta")?;
            let d = source.diagram()?;
            let s = parse_set(&set, d.n())?;
            let columns = theta_columns(&d, s);
            let words: Vec<String> = (1..=d.n())
                .map(|j| column_word(&d, j, s).map(|w| w.to_string()))
                .collect::<Result<_, _>>()?;
            let doc = ThetaJson {
                set: s.to_vec(),
                theta: columns.iter().sum(),
                columns,
                words,
            };
            Ok(match f {
                Json => json(&doc),
                _ => {
                    let cols: Vec<String> = doc.columns.iter().map(usize::to_string).collect();
                    format!(
                        "{}\ncolumns: {}\nwords: {}\n",
                        doc.theta,
                        cols.join(","),
                        doc.words.join(" ")
                    )
                }
            })
        }
        Command::Rank {
            source,
            set,
            format,
        } => {
            let f = pick(format, Text, &[Json, Text], "rank")?;
            let d = source.diagram()?;
            let s = parse_set(&set, d.n())?;
            let r = rank_diagram(&d, s);
            Ok(match f {
                Json => json(&RankJson {
                    set: s.to_vec(),
                    rank: r,
                }),
                _ => format!("{r}\n"),
            })
        }
        Command::Member {
            hrep: hrep_file,
            diagram,
            rothe: r,
            skyline: a,
            point,
            format,
        } => {
            let f = pick(format, Text, &[Json, Text], "member")?;
            let h = match hrep_file {
                Some(path) => {
                    let text = read_file(&path, "hrep")?;
                    if text.trim_start().starts_with('{') {
                        let doc: HRepJson = serde_json::from_str(&text).map_err(|e| {
                            usage(format!("hrep: malformed JSON in {}: {e}", path.display()))
                        })?;
                        HRep::from_json(&doc)?
                    } else {
                        HRep::from_hform(&text)?
                    }
                }
                None => hrep(&load(diagram.as_ref(), r.as_deref(), a.as_deref())?)?,
            };
            let inside = member(&h, &parse_point(&point)?)?;
            Ok(match f {
                Json => json(&MemberJson { member: inside }),
                _ => format!("{inside}\n"),
            })
        }
        Command::Key { alpha, format } => {
            let f = pick(format, Text, &[Json, Text], "key")?;
            Ok(polynomial_doc(&key_polynomial(&parse_comp(&alpha)?)?, f))
        }
        Command::Schubert { perm, format } => {
            let f = pick(format, Text, &[Json, Text], "schubert")?;
            Ok(polynomial_doc(
                &schubert_polynomial(&parse_perm(&perm)?)?,
                f,
            ))
        }
        Command::Bruhat { u, w, format } => {
            let f = pick(format, Text, &[Json, Text], "bruhat")?;
            let (u, w) = (parse_perm(&u)?, parse_perm(&w)?);
            let leq = bruhat_leq(&u, &w)?;
            Ok(match f {
                Json => json(&BruhatJson { u, w, leq }),
                _ => format!("{leq}\n"),
            })
        }
        Command::Verify {
            n,
            seed,
            jobs,
            format,
        } => {
            let f = pick(format, Json, &[Json, Text], "verify")?;
            let report = verify::run(&verify::Options { n, seed, jobs })?;
            let doc = match f {
                Json => json(&report),
                _ => verify_text(&report),
            };
            if report.passed() {
                Ok(doc)
            } else {
                print!("{doc}");
                Err(Failure {
                    code: 1,
                    message: "verification failed".into(),
                })
            }
        }
    }
}

fn verify_text(r: &Report) -> String {
    let mut out = String::new();
    for c in &r.checks {
        match &c.counterexample {
            None => {
                let _ = writeln!(out, "pass {} ({} instances)", c.name, c.instances);
            }
            Some(cx) => {
                let _ = writeln!(out, "FAIL {} after {} instances: {cx}", c.name, c.instances);
            }
        }
    }
    let status = if r.passed() { "pass" } else { "fail" };
    let _ = writeln!(out, "{status}: n={} seed={}", r.n, r.seed);
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
