//! `atomon`: command-line front end for finite atomic monoids, their length
//! sets, coproducts, products, limits and colimits.

mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use atomon::atomprod::{self, TupleElem};
use atomon::fixtures;
use atomon::freeprod::{self, Family, ReducedWord};
use atomon::lenset::{self, EpSet, LengthSystem};
use atomon::monoid::{FiniteMonoid, MonoidFile, MonoidHom, Property};
use atomon::univ::{self, PushoutAnswer};
use atomon::verify::{self, VerifyOptions};

use input::{load_family, load_hom, load_monoid};

#[derive(Debug, Parser)]
#[command(name = "atomon", version, about = "Exact computations with finite atomic monoids")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a monoid file describes a monoid.
    Validate { monoid: PathBuf },
    /// Units, atoms, predicates and length sets of a monoid.
    Analyze { monoid: PathBuf },
    /// Length set of one element.
    Lengthset {
        monoid: PathBuf,
        element: String,
        /// Also compare against exhaustive enumeration up to this length.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Unions of length sets `U_k` for `k = 0..=max-k`.
    Unions {
        monoid: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
    },
    /// Print a built-in fixture as a monoid file.
    Fixture { name: String },
    /// Queries on the coproduct of a family.
    #[command(subcommand)]
    Coproduct(CoproductCmd),
    /// Queries on the product of a family.
    #[command(subcommand)]
    Product(ProductCmd),
    /// Limits and colimits.
    #[command(subcommand)]
    Limits(LimitsCmd),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum CoproductCmd {
    /// Reduced form of a word.
    Reduce { family: PathBuf, word: String },
    /// Product of two words.
    Mul {
        family: PathBuf,
        left: String,
        right: String,
    },
    /// Whether a word is a unit, an atom or neither.
    Atom { family: PathBuf, word: String },
    /// Length set of a word.
    Lengthset {
        family: PathBuf,
        word: String,
        /// Also compare against a bounded factorization search.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// `U_k` of the coproduct.
    Unionk { family: PathBuf, k: usize },
    /// Sums over admissible index words with at most `max-blocks` terms.
    System {
        family: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_blocks: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ProductCmd {
    /// Whether a tuple lies in the product.
    Contains { family: PathBuf, tuple: String },
    /// Length set of a tuple of the product.
    Lengthset { family: PathBuf, tuple: String },
    /// The system of length sets of the product.
    System {
        family: PathBuf,
        /// Drop the set {0}.
        #[arg(long)]
        nonzero: bool,
    },
    /// `U_k` of the product.
    Unionk { family: PathBuf, k: usize },
    /// The product as an explicit monoid.
    Materialize {
        family: PathBuf,
        #[arg(long, default_value_t = 60)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
enum LimitsCmd {
    /// The terminal monoid {1, a, 0}.
    Terminal,
    /// The trivial monoid {1}.
    Initial,
    /// Equalizer of two homomorphisms H -> K.
    Equalizer { f: PathBuf, g: PathBuf },
    /// Pullback of H -> L <- K.
    Pullback { f: PathBuf, g: PathBuf },
    /// Coequalizer of two homomorphisms H -> K.
    Coequalizer { f: PathBuf, g: PathBuf },
    /// Presentation of the pushout of H <- L -> K.
    PushoutPresent { f: PathBuf, g: PathBuf },
    /// Bounded search for equality of two words in the pushout.
    PushoutEq {
        f: PathBuf,
        g: PathBuf,
        left: String,
        right: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite to run.
    suite: Option<String>,
    /// Run every suite.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on states stored by bounded searches (default: $ATOMON_BUDGET or
    /// the library default).
    #[arg(long)]
    budget: Option<usize>,
    /// List suite names and exit.
    #[arg(long)]
    list: bool,
}

/// Text and JSON renderings of a command result.
struct Output {
    text: String,
    json: Value,
    success: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self {
            text: text.into(),
            json,
            success: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text.trim_end());
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::Validate { monoid } => validate(&monoid),
        Command::Analyze { monoid } => analyze(&load_monoid(&monoid)?),
        Command::Lengthset {
            monoid,
            element,
            bound,
        } => monoid_lengthset(&load_monoid(&monoid)?, &element, bound),
        Command::Unions { monoid, max_k } => unions(&load_monoid(&monoid)?, max_k),
        Command::Fixture { name } => {
            let m = fixtures::by_name(&name).with_context(|| format!("unknown fixture `{name}`"))?;
            Ok(monoid_output(&m))
        }
        Command::Coproduct(cmd) => coproduct(cmd),
        Command::Product(cmd) => product(cmd),
        Command::Limits(cmd) => limits(cmd),
        Command::Verify(args) => run_verify(args),
    }
}

fn validate(path: &Path) -> Result<Output> {
    let m = load_monoid(path)?;
    Ok(Output::new(
        format!("valid monoid with {} elements (atomic: {})", m.size(), m.is_atomic()),
        json!({"valid": true, "size": m.size(), "atomic": m.is_atomic()}),
    ))
}

fn names_of(m: &FiniteMonoid, elems: impl IntoIterator<Item = atomon::monoid::Elem>) -> Vec<String> {
    elems.into_iter().map(|x| m.name(x).to_string()).collect()
}

fn system_json(sys: &LengthSystem) -> Value {
    json!({
        "sets": sys.entries().iter().map(|s| json!(s.to_json())).collect::<Vec<_>>(),
        "display": sys.entries().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "truncated_at": sys.truncated_at(),
    })
}

fn epset_json(s: &EpSet) -> Value {
    json!({"display": s.to_string(), "set": s.to_json()})
}

fn analyze(m: &FiniteMonoid) -> Result<Output> {
    let units = names_of(m, m.units().iter());
    let atoms = names_of(m, m.atoms().iter());
    let props: Vec<(&str, bool)> = Property::ALL
        .iter()
        .map(|&p| (p.name(), m.check_property(p)))
        .collect();
    let sets = lenset::length_sets(m);
    let system = lenset::length_system(m, false);
    let mut text = format!("elements: {}\n", m.names().join(", "));
    text += &format!("units: {{{}}}\n", units.join(", "));
    text += &format!("atoms: {{{}}}\n", atoms.join(", "));
    for (name, holds) in &props {
        text += &format!("{name}: {}\n", if *holds { "yes" } else { "no" });
    }
    text += "length sets:\n";
    for x in m.elems() {
        text += &format!("  L({}) = {}  [{}]\n", m.name(x), sets[x.0], m.classify(x));
    }
    text += &format!("system: {system}\n");
    let elements: Vec<Value> = m
        .elems()
        .map(|x| {
            json!({
                "name": m.name(x),
                "class": m.classify(x).to_string(),
                "length_set": epset_json(&sets[x.0]),
            })
        })
        .collect();
    let props_json: serde_json::Map<String, Value> = props
        .iter()
        .map(|(n, h)| (n.to_string(), json!(h)))
        .collect();
    Ok(Output::new(
        text,
        json!({
            "units": units,
            "atoms": atoms,
            "properties": props_json,
            "elements": elements,
            "system": system_json(&system),
        }),
    ))
}

fn monoid_lengthset(m: &FiniteMonoid, element: &str, bound: Option<usize>) -> Result<Output> {
    let x = m
        .elem_by_name(element)
        .with_context(|| format!("no element named `{element}`"))?;
    let l = lenset::length_set(m, x);
    let mut text = l.to_string();
    let mut value = epset_json(&l);
    let mut success = true;
    if let Some(k) = bound {
        let oracle: Vec<usize> = lenset::brute_force_lengths(m, x, k).into_iter().collect();
        let agrees = oracle == l.elems_up_to(k);
        success = agrees;
        text += &format!(
            "\noracle up to {k}: {oracle:?} ({})",
            if agrees { "agrees" } else { "DISAGREES" }
        );
        value["oracle"] = json!({"bound": k, "lengths": oracle, "agrees": agrees});
    }
    Ok(Output {
        text,
        json: value,
        success,
    })
}

fn unions(m: &FiniteMonoid, max_k: usize) -> Result<Output> {
    let system = lenset::length_system(m, false);
    let mut text = String::new();
    let mut rows = Vec::new();
    for k in 0..=max_k {
        let u = lenset::union_k_of(&system, k);
        text += &format!("U_{k} = {u}\n");
        rows.push(json!({"k": k, "union": epset_json(&u)}));
    }
    Ok(Output::new(text, json!(rows)))
}

fn monoid_output(m: &FiniteMonoid) -> Output {
    let file = MonoidFile::from(m);
    let value = serde_json::to_value(&file).expect("serializable");
    Output::new(serde_json::to_string(&value).expect("serializable"), value)
}

fn parse_reduced(family: &Family, text: &str) -> Result<ReducedWord> {
    let raw = family.parse_word(text)?;
    Ok(family.reduce(&raw)?)
}

fn word_output(family: &Family, w: &ReducedWord) -> Output {
    let text = family.format_word(w);
    Output::new(text.clone(), json!({"word": text}))
}

fn budget_from_env() -> Result<usize> {
    match std::env::var("ATOMON_BUDGET") {
        Ok(v) => v
            .parse()
            .with_context(|| format!("ATOMON_BUDGET must be a number, got `{v}`")),
        Err(_) => Ok(verify::DEFAULT_BUDGET),
    }
}

fn coproduct(cmd: CoproductCmd) -> Result<Output> {
    match cmd {
        CoproductCmd::Reduce { family, word } => {
            let f = load_family(&family)?;
            Ok(word_output(&f, &parse_reduced(&f, &word)?))
        }
        CoproductCmd::Mul {
            family,
            left,
            right,
        } => {
            let f = load_family(&family)?;
            let (x, y) = (parse_reduced(&f, &left)?, parse_reduced(&f, &right)?);
            Ok(word_output(&f, &f.mul(&x, &y)))
        }
        CoproductCmd::Atom { family, word } => {
            let f = load_family(&family)?;
            let w = parse_reduced(&f, &word)?;
            let class = if f.is_unit(&w) {
                "unit"
            } else if f.is_atom(&w) {
                "atom"
            } else {
                "reducible"
            };
            Ok(Output::new(
                format!("{}: {class}", f.format_word(&w)),
                json!({"word": f.format_word(&w), "class": class, "unit": f.is_unit(&w), "atom": f.is_atom(&w)}),
            ))
        }
        CoproductCmd::Lengthset {
            family,
            word,
            bound,
        } => {
            let f = load_family(&family)?;
            let w = parse_reduced(&f, &word)?;
            let l = f.length_set(&w);
            let mut out = Output::new(l.to_string(), epset_json(&l));
            if let Some(k) = bound {
                let oracle: Vec<usize> = freeprod::brute_force_lengths(&f, &w, k, budget_from_env()?)?
                    .into_iter()
                    .collect();
                let agrees = oracle == l.elems_up_to(k);
                out.success = agrees;
                out.text += &format!(
                    "\noracle up to {k}: {oracle:?} ({})",
                    if agrees { "agrees" } else { "DISAGREES" }
                );
                out.json["oracle"] = json!({"bound": k, "lengths": oracle, "agrees": agrees});
            }
            Ok(out)
        }
        CoproductCmd::Unionk { family, k } => {
            if k == 0 {
                bail!("k must be positive");
            }
            let f = load_family(&family)?;
            let u = f.union_k(k);
            Ok(Output::new(u.to_string(), epset_json(&u)))
        }
        CoproductCmd::System { family, max_blocks } => {
            if max_blocks == 0 {
                bail!("max-blocks must be positive");
            }
            let f = load_family(&family)?;
            let sys = f.length_system_bounded(max_blocks);
            Ok(Output::new(sys.to_string(), system_json(&sys)))
        }
    }
}

fn product(cmd: ProductCmd) -> Result<Output> {
    match cmd {
        ProductCmd::Contains { family, tuple } => {
            let f = load_family(&family)?;
            let t = TupleElem::parse(&f, &tuple)?;
            let inside = atomprod::contains(&f, &t)?;
            let mut value = json!({"tuple": t.display(&f), "contains": inside});
            let mut text = format!("{}: {}", t.display(&f), if inside { "in product" } else { "not in product" });
            if inside {
                let class = if atomprod::is_unit(&f, &t)? {
                    "unit"
                } else if atomprod::is_atom(&f, &t)? {
                    "atom"
                } else {
                    "reducible"
                };
                text += &format!(" ({class})");
                value["class"] = json!(class);
            }
            Ok(Output::new(text, value))
        }
        ProductCmd::Lengthset { family, tuple } => {
            let f = load_family(&family)?;
            let t = TupleElem::parse(&f, &tuple)?;
            let l = atomprod::length_set(&f, &t)?;
            Ok(Output::new(l.to_string(), epset_json(&l)))
        }
        ProductCmd::System { family, nonzero } => {
            let f = load_family(&family)?;
            let sys = atomprod::length_system(&f, nonzero);
            Ok(Output::new(sys.to_string(), system_json(&sys)))
        }
        ProductCmd::Unionk { family, k } => {
            let f = load_family(&family)?;
            let u = atomprod::union_k(&f, k);
            Ok(Output::new(u.to_string(), epset_json(&u)))
        }
        ProductCmd::Materialize { family, cap } => {
            let f = load_family(&family)?;
            let p = atomprod::materialize(&f, cap)?;
            let mut out = monoid_output(&p.monoid);
            out.json = json!({
                "monoid": out.json,
                "projections": p.projections.iter().map(|h| h.map_indices()).collect::<Vec<_>>(),
            });
            Ok(out)
        }
    }
}

fn hom_json(h: &MonoidHom) -> Value {
    json!(h.map_indices())
}

fn limit_output(label: &str, m: &Arc<FiniteMonoid>, maps: &[(&str, &MonoidHom)]) -> Output {
    let file = serde_json::to_value(MonoidFile::from(&**m)).expect("serializable");
    let mut text = format!("{label}: {}\n", serde_json::to_string(&file).expect("serializable"));
    let mut value = json!({"monoid": file});
    for (name, h) in maps {
        let shown: Vec<String> = h
            .source()
            .elems()
            .map(|x| format!("{} -> {}", h.source().name(x), h.target().name(h.apply(x))))
            .collect();
        text += &format!("{name}: {}\n", shown.join(", "));
        value[*name] = hom_json(h);
    }
    Output::new(text, value)
}

fn limits(cmd: LimitsCmd) -> Result<Output> {
    match cmd {
        LimitsCmd::Terminal => Ok(monoid_output(&univ::terminal())),
        LimitsCmd::Initial => Ok(monoid_output(&univ::initial())),
        LimitsCmd::Equalizer { f, g } => {
            let e = univ::equalizer(&load_hom(&f)?, &load_hom(&g)?)?;
            Ok(limit_output("equalizer", &e.monoid, &[("inclusion", &e.inclusion)]))
        }
        LimitsCmd::Pullback { f, g } => {
            let p = univ::pullback(&load_hom(&f)?, &load_hom(&g)?)?;
            Ok(limit_output("pullback", &p.monoid, &[("p1", &p.p1), ("p2", &p.p2)]))
        }
        LimitsCmd::Coequalizer { f, g } => {
            let q = univ::coequalizer(&load_hom(&f)?, &load_hom(&g)?)?;
            Ok(limit_output("coequalizer", &q.monoid, &[("projection", &q.projection)]))
        }
        LimitsCmd::PushoutPresent { f, g } => {
            let p = univ::pushout_presentation(&load_hom(&f)?, &load_hom(&g)?)?;
            let fam = p.family();
            let pairs: Vec<(String, String)> = p
                .relations()
                .iter()
                .map(|(l, r)| (fam.format_word(l), fam.format_word(r)))
                .collect();
            let text = pairs
                .iter()
                .map(|(l, r)| format!("{l} = {r}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(text, json!({"relations": pairs})))
        }
        LimitsCmd::PushoutEq {
            f,
            g,
            left,
            right,
            depth,
        } => {
            let p = univ::pushout_presentation(&load_hom(&f)?, &load_hom(&g)?)?;
            let w1 = parse_reduced(p.family(), &left)?;
            let w2 = parse_reduced(p.family(), &right)?;
            let answer = match univ::pushout_eq_bounded(&p, &w1, &w2, depth) {
                PushoutAnswer::Equal => "equal",
                PushoutAnswer::Unknown => "unknown",
            };
            Ok(Output::new(answer, json!({"answer": answer, "depth": depth})))
        }
    }
}

fn run_verify(args: VerifyArgs) -> Result<Output> {
    if args.list {
        let names = verify::all_suites();
        return Ok(Output::new(names.join("\n"), json!(names)));
    }
    let suites: Vec<String> = match (&args.suite, args.all) {
        (_, true) => verify::all_suites().into_iter().map(String::from).collect(),
        (Some(s), false) => vec![s.clone()],
        (None, false) => bail!("name a suite or pass --all (see --list)"),
    };
    let options = VerifyOptions {
        seed: args.seed,
        budget: match args.budget {
            Some(b) => b,
            None => budget_from_env()?,
        },
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut success = true;
    for suite in &suites {
        let r = verify::run_suite(suite, &options)?;
        success &= r.passed();
        text += &format!("{r}\n");
        for m in &r.mismatches {
            text += &format!("  mismatch: {m}\n");
        }
        reports.push(json!({
            "suite": r.suite,
            "cases": r.cases,
            "mismatches": r.mismatches,
            "skipped": r.skipped,
            "elapsed_secs": r.elapsed.as_secs_f64(),
        }));
    }
    Ok(Output {
        text,
        json: json!(reports),
        success,
    })
}
