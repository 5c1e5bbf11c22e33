//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the exit code with everything to print, so the
//! binary is a thin wrapper and the whole surface is testable in-process.
//!
//! JSON documents carry `command`, `parameters`, `input_sha256` (SHA-256
//! over the bytes of every input file, in argument order) and `result`.
//! Keys are sorted, so equal inputs give byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bifix::{
    analyze_bifix, build_tf, decode_language, enumerate_maximal_bifix, CodeFile, CodeKind, CodeSet, CodingMorphism,
};
use crate::error::{Error, Result};
use crate::extension::{check_planar_tree_set, planar_order_pairs, FailureReason, Verdict};
use crate::iet::{Iet, RegularityReport, DEFAULT_DEPTH};
use crate::rauzy::{csv_string, exchange_deviation, max_norm, rauzy_cloud, svg_string, torus_deviation};
use crate::skew::{
    induced_on_home, return_words, schreier_check, skew_as_iet, skew_check_regular, PermMorphism, SkewIet,
};
use crate::symbolic::{invariant_measure, language_of_iet, substitution_language, FactorialLanguage, Substitution};
use crate::word::{Alphabet, Word};

#[derive(Parser, Debug)]
#[command(name = "bifix-iet", version, about = "Exact interval exchanges, natural codings and bifix decoding")]
pub struct Cli {
    /// Output document format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search for connections between separation points.
    Regular {
        #[arg(long)]
        iet: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Truncated language of an exchange or of a substitution fixpoint.
    Lang(LangArgs),
    /// Exact invariant measure of the cylinder of a word.
    Measure {
        #[arg(long)]
        iet: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Bifix codes in the language of an exchange.
    #[command(subcommand)]
    Bifix(BifixCommand),
    /// Maximal bifix decoding: decoded language and decoded exchange.
    Decode {
        #[arg(long)]
        iet: PathBuf,
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out_len: usize,
        /// Also write the decoded exchange to this file.
        #[arg(long)]
        iet_out: Option<PathBuf>,
    },
    /// Tree and planar tree checks on a language file.
    Tree {
        #[arg(long)]
        lang: PathBuf,
        /// Left and right orders, e.g. `ba,ab`.
        #[arg(long, conflicts_with = "search")]
        planar: Option<String>,
        /// List every order pair making the set a planar tree set.
        #[arg(long)]
        search: bool,
        #[arg(long)]
        max_len: usize,
    },
    /// Skew product with a permutation morphism, stacked as one exchange.
    Skew {
        #[arg(long)]
        iet: PathBuf,
        /// Assignment such as `a:(2 3);b:(1 2)`.
        #[arg(long)]
        perm: String,
        /// Size of the permuted set; defaults to the largest point named.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        return_words: bool,
        #[arg(long, default_value_t = 1)]
        home: usize,
        #[arg(long, default_value_t = 8)]
        max_word_len: usize,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        iet_out: Option<PathBuf>,
    },
    /// `T^n` as an exchange on the words of length `n`.
    Power {
        #[arg(long)]
        iet: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rauzy fractal point cloud rendered as SVG.
    Rauzy {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
pub struct LangSource {
    #[arg(long)]
    iet: Option<PathBuf>,
    /// Rules such as `a:ab;b:a`.
    #[arg(long, requires = "seed")]
    subst: Option<String>,
}

#[derive(Args, Debug)]
pub struct LangArgs {
    #[command(flatten)]
    source: LangSource,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    max_len: usize,
    /// Also write the language file here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct CodeArgs {
    /// Code words separated by commas or spaces.
    #[arg(long)]
    code: Option<String>,
    /// JSON coding morphism file.
    #[arg(long)]
    code_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum BifixCommand {
    /// Degree, kernel and interval orders of a maximal bifix code.
    Analyze {
        #[arg(long)]
        iet: PathBuf,
        #[arg(long)]
        code: String,
        /// Truncation of the language; defaults to twice the longest word.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// All maximal bifix codes of a given degree.
    Enum {
        #[arg(long)]
        iet: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        max_word_len: usize,
    },
}

/// What the binary should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// A result as JSON plus its plain-text rendering.
struct Report {
    command: &'static str,
    parameters: Value,
    inputs: Vec<Vec<u8>>,
    result: Value,
    text: String,
}

fn execute(cli: &Cli) -> Result<String> {
    let r = match &cli.command {
        Command::Regular { iet, depth } => cmd_regular(iet, *depth)?,
        Command::Lang(args) => cmd_lang(args)?,
        Command::Measure { iet, word } => cmd_measure(iet, word)?,
        Command::Bifix(BifixCommand::Analyze { iet, code, max_len }) => cmd_analyze(iet, code, *max_len)?,
        Command::Bifix(BifixCommand::Enum { iet, degree, max_word_len }) => cmd_enum(iet, *degree, *max_word_len)?,
        Command::Decode { iet, code, out_len, iet_out } => cmd_decode(iet, code, *out_len, iet_out.as_deref())?,
        Command::Tree { lang, planar, search, max_len } => cmd_tree(lang, planar.as_deref(), *search, *max_len)?,
        Command::Skew { iet, perm, degree, return_words, home, max_word_len, depth, iet_out } => {
            cmd_skew(iet, perm, *degree, *return_words, *home, *max_word_len, *depth, iet_out.as_deref())?
        }
        Command::Power { iet, n, out } => cmd_power(iet, *n, out.as_deref())?,
        Command::Rauzy { points, out, csv } => cmd_rauzy(*points, out, csv.as_deref())?,
    };
    Ok(match cli.format {
        Format::Text => r.text,
        Format::Json => {
            let mut hasher = Sha256::new();
            for bytes in &r.inputs {
                hasher.update(bytes);
            }
            let doc = json!({
                "command": r.command,
                "parameters": r.parameters,
                "input_sha256": hex(&hasher.finalize()),
                "result": r.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    })
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_iet(path: &Path) -> Result<(Iet, Vec<u8>)> {
    let bytes = read(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::Format(e.to_string()))?;
    Ok((Iet::from_json(text)?, bytes))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn words_json(a: &Alphabet, ws: impl IntoIterator<Item = impl AsRef<[u16]>>) -> Value {
    Value::from(ws.into_iter().map(|w| a.format_word(w.as_ref())).collect::<Vec<_>>())
}

fn words_text(a: &Alphabet, ws: impl IntoIterator<Item = impl AsRef<[u16]>>) -> String {
    let v: Vec<String> = ws.into_iter().map(|w| display_word(a, w.as_ref())).collect();
    v.join(" ")
}

fn display_word(a: &Alphabet, w: &[u16]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        a.format_word(w)
    }
}

fn regularity_json(r: &RegularityReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn regularity_text(r: &RegularityReport) -> String {
    match r.witness {
        None => format!("regular up to depth {}\n", r.depth),
        Some(c) => format!("connection found: T^{}(mu_{}) = mu_{} (depth {})\n", c.k, c.i, c.j, r.depth),
    }
}

fn cmd_regular(path: &Path, depth: usize) -> Result<Report> {
    let (t, bytes) = load_iet(path)?;
    let r = t.check_regular(depth);
    Ok(Report {
        command: "regular",
        parameters: json!({ "depth": depth }),
        inputs: vec![bytes],
        text: regularity_text(&r),
        result: regularity_json(&r),
    })
}

fn language_json(s: &FactorialLanguage) -> Value {
    json!({
        "alphabet": s.alphabet().names(),
        "max_len": s.max_len(),
        "count": s.count(),
        "words": words_json(s.alphabet(), s.words().filter(|w| !w.is_empty())),
    })
}

fn language_file(s: &FactorialLanguage) -> Result<String> {
    s.to_text()
}

fn cmd_lang(args: &LangArgs) -> Result<Report> {
    let (s, inputs, parameters) = match (&args.source.iet, &args.source.subst) {
        (Some(path), _) => {
            let (t, bytes) = load_iet(path)?;
            (language_of_iet(&t, args.max_len)?, vec![bytes], json!({ "max_len": args.max_len }))
        }
        (None, Some(rules)) => {
            let f = Substitution::parse(rules)?;
            let seed = args.seed.as_deref().ok_or_else(|| Error::Format("--subst needs --seed".into()))?;
            let s = substitution_language(&f, seed, args.max_len)?;
            (s, Vec::new(), json!({ "max_len": args.max_len, "subst": rules, "seed": seed }))
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let text = language_file(&s)?;
    if let Some(out) = &args.out {
        write(out, &text)?;
    }
    Ok(Report { command: "lang", parameters, inputs, result: language_json(&s), text })
}

fn cmd_measure(path: &Path, word: &str) -> Result<Report> {
    let (t, bytes) = load_iet(path)?;
    let w = t.alphabet().parse_word(word)?;
    let m = invariant_measure(&t, &w);
    Ok(Report {
        command: "measure",
        parameters: json!({ "word": word }),
        inputs: vec![bytes],
        text: format!("{m}\n"),
        result: json!({ "word": t.alphabet().format_word(&w), "measure": m.to_string() }),
    })
}

fn cmd_analyze(path: &Path, code: &str, max_len: Option<usize>) -> Result<Report> {
    let (t, bytes) = load_iet(path)?;
    let a = t.alphabet();
    let x = CodeSet::parse(a, code, CodeKind::Any)?;
    let len = max_len.unwrap_or(2 * x.max_word_len());
    let s = language_of_iet(&t, len)?;
    let r = analyze_bifix(&x, &s, Some(&t))?;
    let order1 = r.order1.clone().unwrap_or_default();
    let order2 = r.order2.clone().unwrap_or_default();
    let text = format!(
        "code: {}\ndegree: {}\nkernel: {}\norder1: {}\norder2: {}\nlanguage max_len: {len}\n",
        words_text(a, x.words()),
        r.degree,
        words_text(a, &r.kernel),
        words_text(a, &order1),
        words_text(a, &order2),
    );
    Ok(Report {
        command: "bifix analyze",
        parameters: json!({ "code": code, "max_len": len }),
        inputs: vec![bytes],
        result: json!({
            "code": words_json(a, x.words()),
            "s_maximal": r.s_maximal,
            "degree": r.degree,
            "internal_factors": words_json(a, &r.internal_factors),
            "kernel": words_json(a, &r.kernel),
            "order1": words_json(a, &order1),
            "order2": words_json(a, &order2),
        }),
        text,
    })
}

fn cmd_enum(path: &Path, degree: usize, max_word_len: usize) -> Result<Report> {
    let (t, bytes) = load_iet(path)?;
    let a = t.alphabet();
    let s = language_of_iet(&t, max_word_len)?;
    let codes = enumerate_maximal_bifix(&s, degree, max_word_len)?;
    let text: String = codes.iter().map(|c| words_text(a, c.words()) + "\n").collect();
    Ok(Report {
        command: "bifix enum",
        parameters: json!({ "degree": degree, "max_word_len": max_word_len }),
        inputs: vec![bytes],
        result: json!({
            "count": codes.len(),
            "codes": codes.iter().map(|c| words_json(a, c.words())).collect::<Vec<_>>(),
        }),
        text,
    })
}

fn load_code(args: &CodeArgs, target: &Alphabet, inputs: &mut Vec<Vec<u8>>) -> Result<CodingMorphism> {
    match (&args.code, &args.code_file) {
        (Some(words), _) => Ok(CodingMorphism::from_code(&CodeSet::parse(target, words, CodeKind::Any)?)),
        (None, Some(path)) => {
            let bytes = read(path)?;
            let file: CodeFile = serde_json::from_slice(&bytes)?;
            inputs.push(bytes);
            CodingMorphism::from_file(&file, target)
        }
        (None, None) => unreachable!("clap requires a code"),
    }
}

fn cmd_decode(path: &Path, code: &CodeArgs, out_len: usize, iet_out: Option<&Path>) -> Result<Report> {
    let (t, bytes) = load_iet(path)?;
    let mut inputs = vec![bytes];
    let f = load_code(code, t.alphabet(), &mut inputs)?;
    let len = (out_len * f.max_image_len()).max(f.max_image_len());
    let s = language_of_iet(&t, len)?;
    let tf = build_tf(&t, &f, &s)?;
    let decoded = decode_language(&s, &f, out_len)?;
    if let Some(p) = iet_out {
        write(p, &(tf.to_json() + "\n"))?;
    }
    let morphism = f.to_file(t.alphabet());
    let text = format!(
        "morphism: {}\ndecoded exchange:\n{}\ndecoded language:\n{}",
        morphism.images.iter().map(|(b, w)| format!("{b}->{w}")).collect::<Vec<_>>().join(" "),
        tf.to_json(),
        decoded.to_text().unwrap_or_else(|_| words_text(decoded.alphabet(), decoded.words()) + "\n"),
    );
    Ok(Report {
        command: "decode",
        parameters: json!({ "code": code.code, "out_len": out_len, "language_max_len": len }),
        inputs,
        result: json!({
            "morphism": serde_json::to_value(&morphism)?,
            "iet": serde_json::to_value(tf.to_file())?,
            "language": language_json(&decoded),
        }),
        text,
    })
}

fn parse_orders(a: &Alphabet, spec: &str) -> Result<(Word, Word)> {
    let (l, r) =
        spec.split_once(',').ok_or_else(|| Error::InvalidOrder(format!("expected LEFT,RIGHT, got `{spec}`")))?;
    let check = |w: Word| -> Result<Word> {
        let names: Vec<&str> = w.iter().map(|&x| a.name(x)).collect();
        a.order(&names)
    };
    Ok((check(a.parse_word(l)?)?, check(a.parse_word(r)?)?))
}

fn cmd_tree(path: &Path, planar: Option<&str>, search: bool, max_len: usize) -> Result<Report> {
    let bytes = read(path)?;
    let s = FactorialLanguage::from_text(std::str::from_utf8(&bytes).map_err(|e| Error::Format(e.to_string()))?)?;
    let a = s.alphabet().clone();
    let mut parameters = json!({ "max_len": max_len, "planar": planar, "search": search });
    if search {
        let pairs = planar_order_pairs(&s, max_len)?;
        let text = if pairs.is_empty() {
            format!("no order pair makes a planar tree set (max_len {max_len})\n")
        } else {
            pairs.iter().map(|(l, r)| format!("{},{}\n", a.format_word(l), a.format_word(r))).collect()
        };
        let result = json!({
            "max_len_checked": max_len,
            "pairs": pairs.iter().map(|(l, r)| json!([a.format_word(l), a.format_word(r)])).collect::<Vec<_>>(),
        });
        return Ok(Report { command: "tree", parameters, inputs: vec![bytes], result, text });
    }
    let orders = planar.map(|p| parse_orders(&a, p)).transpose()?;
    let report = check_planar_tree_set(&s, orders.as_ref().map(|(l, r)| (l.as_slice(), r.as_slice())), max_len)?;
    let verdict = match report.verdict {
        Verdict::TreeSet => "TreeSet",
        Verdict::PlanarTreeSet => "PlanarTreeSet",
        Verdict::Fails => "Fails",
    };
    let counterexample = report.counterexample.as_ref().map(|c| {
        let reason = match c.reason {
            FailureReason::NotConnected => "NotConnected",
            FailureReason::HasCycle => "HasCycle",
            FailureReason::OrderViolation => "OrderViolation",
            FailureReason::ConditionIII => "ConditionIII",
        };
        (display_word(&a, &c.word), reason)
    });
    let text = match &counterexample {
        None => format!("{verdict} (max_len {max_len})\n"),
        Some((w, reason)) => format!("{verdict} (max_len {max_len}): {reason} at {w}\n"),
    };
    parameters["planar"] = json!(planar);
    Ok(Report {
        command: "tree",
        parameters,
        inputs: vec![bytes],
        result: json!({
            "verdict": verdict,
            "max_len_checked": report.max_len_checked,
            "counterexample": counterexample.map(|(w, r)| json!({ "word": w, "reason": r })),
        }),
        text,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_skew(
    path: &Path,
    perm: &str,
    degree: Option<usize>,
    want_returns: bool,
    home: usize,
    max_word_len: usize,
    depth: usize,
    iet_out: Option<&Path>,
) -> Result<Report> {
    let (t, bytes) = load_iet(path)?;
    let a = t.alphabet().clone();
    let phi = PermMorphism::parse(&a, perm, degree)?;
    let d = phi.degree();
    let u = SkewIet::new(t, phi)?;
    let stack = skew_as_iet(&u);
    if let Some(p) = iet_out {
        write(p, &(stack.to_json() + "\n"))?;
    }
    let reg = skew_check_regular(&u, depth);
    let mut text = format!("degree: {d}\nperm: {}\nstack: {} letters\n", u.perm().format(&a), stack.letter_count());
    text += &regularity_text(&reg);
    let mut result = json!({
        "degree": d,
        "perm": u.perm().format(&a),
        "stack": serde_json::to_value(stack.to_file())?,
        "regularity": regularity_json(&reg),
    });
    if want_returns {
        let words = return_words(&u, home, max_word_len)?;
        let complete = induced_on_home(&u, home, max_word_len).is_ok();
        let code = CodeSet::new(words.iter().cloned(), CodeKind::Any)?;
        let schreier = schreier_check(&code, d, a.len());
        text += &format!("return words: {}\ncomplete: {complete}\nschreier: {schreier}\n", words_text(&a, &words));
        result["return_words"] = words_json(&a, &words);
        result["complete"] = json!(complete);
        result["schreier"] = json!(schreier);
    }
    Ok(Report {
        command: "skew",
        parameters: json!({
            "perm": perm,
            "degree": d,
            "return_words": want_returns,
            "home": home,
            "max_word_len": max_word_len,
            "depth": depth,
        }),
        inputs: vec![bytes],
        result,
        text,
    })
}

fn cmd_power(path: &Path, n: usize, out: Option<&Path>) -> Result<Report> {
    let (t, bytes) = load_iet(path)?;
    let p = t.power(n)?;
    let file = p.to_json() + "\n";
    if let Some(o) = out {
        write(o, &file)?;
    }
    Ok(Report {
        command: "power",
        parameters: json!({ "n": n }),
        inputs: vec![bytes],
        result: serde_json::to_value(p.to_file())?,
        text: file,
    })
}

fn cmd_rauzy(points: usize, out: &Path, csv: Option<&Path>) -> Result<Report> {
    if points == 0 {
        return Err(Error::Format("--points must be at least 1".into()));
    }
    let cloud = rauzy_cloud(points);
    let svg = svg_string(&cloud);
    write(out, &svg)?;
    if let Some(c) = csv {
        write(c, &csv_string(&cloud))?;
    }
    let (norm, dev, torus) = (max_norm(&cloud), exchange_deviation(&cloud), torus_deviation(&cloud));
    let svg_hash = hex(&Sha256::digest(svg.as_bytes()));
    Ok(Report {
        command: "rauzy",
        parameters: json!({ "points": points }),
        inputs: Vec::new(),
        result: json!({
            "points": points,
            "svg": out.display().to_string(),
            "svg_sha256": svg_hash,
            "max_norm": norm,
            "exchange_deviation": dev,
            "torus_deviation": torus,
        }),
        text: format!(
            "wrote {points} points to {}\nmax norm: {norm}\nexchange deviation: {dev:e}\ntorus deviation: {torus:e}\n",
            out.display()
        ),
    })
}
