mod format;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isg_core::bits::ElemSet;
use isg_core::constructions::{
    adjoin_absorbing, adjoin_zero, exel_boolean4, quotient, symmetric_inverse_semigroup, Congruence,
    ConstructionError, Group,
};
use isg_core::corpus::{builtin, BUILTIN_NAMES};
use isg_core::semigroup::{AlgebraError, InverseSemigroup};
use isg_core::semilattice::{LatticeError, TightMode};
use rayon::prelude::*;

use format::{ParseError, SemigroupFile};
use report::{Format, ReportError, Section};

#[derive(Parser)]
#[command(name = "isg", version, about = "Finite inverse semigroups: validation, tight representations, ultrafilters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a table file is an inverse semigroup with zero.
    Validate { path: PathBuf },
    /// Print the full analysis report.
    Analyze(AnalyzeArgs),
    /// Build a semigroup and write it as a table file.
    Construct {
        #[command(subcommand)]
        recipe: Recipe,
        /// Output file; standard output if omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Table file to analyze.
    #[arg(conflicts_with_all = ["builtin", "corpus"], required_unless_present_any = ["builtin", "corpus"])]
    path: Option<PathBuf>,
    /// One of the built-in examples.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_NAMES))]
    builtin: Option<String>,
    /// Analyze every `.isg` file in a directory, in filename order.
    #[arg(long, conflicts_with = "builtin")]
    corpus: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    tight_mode: Mode,
    /// Largest cover examined by the tightness search.
    #[arg(long, env = "ISG_COVER_CAP")]
    cover_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Sections to print, comma separated; all by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    sections: Vec<Section>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Simplified,
}

#[derive(Subcommand)]
enum Recipe {
    /// I(X) on k points.
    Symmetric { k: usize },
    /// Adjoin a new zero to an inverse semigroup (the file's zero, if any, is ignored).
    AdjoinZero { path: PathBuf },
    /// Adjoin a new absorbing element below the existing zero.
    AdjoinAbsorbing { path: PathBuf },
    /// The quotient of E x G over the four-element Boolean algebra E.
    Exel {
        #[arg(long, value_enum)]
        group: GroupName,
        /// N_{e1}: `full`, `trivial` or comma separated group elements.
        #[arg(long)]
        n1: String,
        /// N_{e2}: `full`, `trivial` or comma separated group elements.
        #[arg(long)]
        n2: String,
    },
    /// Quotient by the congruence whose classes are listed one per line.
    Quotient { path: PathBuf, congruence: PathBuf },
    /// Write one of the built-in examples.
    Builtin {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_NAMES))]
        name: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupName {
    Z2,
    Z3,
    Z4,
    V4,
    S3,
}

impl GroupName {
    fn group(self) -> Group {
        match self {
            GroupName::Z2 => Group::cyclic(2).with_labels(vec!["1".into(), "n".into()]),
            GroupName::Z3 => Group::cyclic(3),
            GroupName::Z4 => Group::cyclic(4),
            GroupName::V4 => Group::klein_four(),
            GroupName::S3 => Group::symmetric3(),
        }
    }
}

/// Exit status classes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Io(String),
    Algebra(AlgebraError),
    Construction(ConstructionError),
    Lattice(LatticeError),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Algebra(e) => algebra_code(e),
            Failure::Construction(ConstructionError::Algebra(e)) => algebra_code(e),
            Failure::Construction(ConstructionError::SizeCap { .. }) => 7,
            Failure::Construction(ConstructionError::Lattice(LatticeError::SizeCap { .. })) => 7,
            Failure::Construction(_) | Failure::Other(_) => 5,
            Failure::Lattice(LatticeError::SizeCap { .. }) => 7,
            Failure::Lattice(_) => 5,
            Failure::Parse(_) | Failure::Io(_) => 6,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Io(m) | Failure::Other(m) => m.clone(),
            Failure::Algebra(e) => e.to_string(),
            Failure::Construction(e) => e.to_string(),
            Failure::Lattice(LatticeError::SizeCap { n, limit }) => {
                format!("SizeCap: exhaustive tightness search limited to {limit} idempotents, got {n}; try --tight-mode simplified")
            }
            Failure::Lattice(e) => e.to_string(),
        }
    }
}

fn algebra_code(e: &AlgebraError) -> u8 {
    match e {
        AlgebraError::NotAssociative { .. } => 2,
        AlgebraError::ZeroNotAbsorbing(_) => 3,
        AlgebraError::NoInverse(_) | AlgebraError::NonUniqueInverse { .. } => 4,
        AlgebraError::TooLarge { .. } => 7,
        _ => 5,
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Algebra(e)
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Algebra(e) => Failure::Algebra(e),
            other => Failure::Construction(other),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Algebra(e) => Failure::Algebra(e),
            ReportError::Lattice(e) => Failure::Lattice(e),
            ReportError::Regular(e) => Failure::Other(e.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<SemigroupFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<InverseSemigroup, Failure> {
    Ok(read_file(path)?.semigroup()?)
}

fn validate(path: &Path) -> Result<String, Failure> {
    let s = load(path)?;
    Ok(format!(
        "ok: {} is an inverse semigroup with zero {} ({} elements, {} idempotents)\n",
        path.display(),
        s.zero(),
        s.len(),
        s.idempotents().len()
    ))
}

fn analyze_one(s: &InverseSemigroup, args: &AnalyzeArgs) -> Result<String, Failure> {
    let sections = if args.sections.is_empty() {
        Section::ALL.to_vec()
    } else {
        let mut v = args.sections.clone();
        v.sort();
        v.dedup();
        v
    };
    let mode = match args.tight_mode {
        Mode::Exhaustive => TightMode::Exhaustive,
        Mode::Simplified => TightMode::Simplified,
    };
    let report = report::analyze(s, &sections, report::tightness_options(mode, args.cover_cap))?;
    Ok(report.render(args.format))
}

fn analyze(args: &AnalyzeArgs) -> Result<String, Failure> {
    if let Some(name) = &args.builtin {
        let s = builtin(name).ok_or_else(|| Failure::Usage(format!("unknown builtin {name}")))?;
        return analyze_one(&s, args);
    }
    if let Some(path) = &args.path {
        return analyze_one(&load(path)?, args);
    }
    let dir = args.corpus.as_ref().expect("clap requires one input");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "isg"))
        .collect();
    files.sort();
    let results: Vec<(PathBuf, Result<String, Failure>)> = files
        .into_par_iter()
        .map(|p| {
            let r = load(&p).and_then(|s| analyze_one(&s, args));
            (p, r)
        })
        .collect();
    let mut out = String::new();
    let mut first_failure = None;
    for (path, result) in results {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        match (args.format, result) {
            (Format::Text, Ok(text)) => out.push_str(&format!("#### {name}\n{text}")),
            (Format::Lines, Ok(text)) => {
                out.push_str(&format!("file name={name} status=ok\n{text}"));
            }
            (Format::Text, Err(f)) => {
                out.push_str(&format!("#### {name}\nerror (exit {}): {}\n\n", f.code(), f.message()));
                first_failure.get_or_insert(f);
            }
            (Format::Lines, Err(f)) => {
                out.push_str(&format!("file name={name} status=error exit={}\n", f.code()));
                first_failure.get_or_insert(f);
            }
        }
    }
    match first_failure {
        None => Ok(out),
        Some(f) => {
            print!("{out}");
            Err(f)
        }
    }
}

fn subgroup(group: &Group, spec: &str) -> Result<ElemSet, Failure> {
    match spec {
        "full" => Ok(group.all()),
        "trivial" => Ok(group.trivial_subgroup()),
        list => list
            .split(',')
            .map(|x| {
                let g: usize = x
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad subgroup element `{x}`")))?;
                if g < group.len() {
                    Ok(g)
                } else {
                    Err(Failure::Usage(format!("group element {g} out of range 0..{}", group.len())))
                }
            })
            .collect(),
    }
}

/// One class per non-comment line, members separated by whitespace.
fn read_congruence(path: &Path, n: usize) -> Result<Congruence, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut blocks = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let block = line
            .split_whitespace()
            .map(|x| {
                x.parse::<usize>()
                    .map_err(|_| Failure::Parse(format!("{}: line {}: bad element `{x}`", path.display(), i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(block);
    }
    Ok(Congruence::from_blocks(n, &blocks)?)
}

fn construct(recipe: &Recipe) -> Result<InverseSemigroup, Failure> {
    Ok(match recipe {
        Recipe::Symmetric { k } => symmetric_inverse_semigroup(*k)?,
        Recipe::AdjoinZero { path } => {
            let file = read_file(path)?;
            adjoin_zero(&file.table()?)?
        }
        Recipe::AdjoinAbsorbing { path } => adjoin_absorbing(&load(path)?)?,
        Recipe::Exel { group, n1, n2 } => {
            let g = group.group();
            let (a, b) = (subgroup(&g, n1)?, subgroup(&g, n2)?);
            exel_boolean4(g, a, b)?.semigroup
        }
        Recipe::Quotient { path, congruence } => {
            let s = load(path)?;
            let c = read_congruence(congruence, s.len())?;
            let q = quotient(s.table(), &c)?.semigroup;
            // each class is labelled by its least member
            match s.labels() {
                Some(_) => q.with_labels(c.representatives().into_iter().map(|r| s.label(r)).collect())?,
                None => q,
            }
        }
        Recipe::Builtin { name } => builtin(name).ok_or_else(|| Failure::Usage(format!("unknown builtin {name}")))?,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { path } => print!("{}", validate(&path)?),
        Command::Analyze(args) => print!("{}", analyze(&args)?),
        Command::Construct { recipe, out } => {
            let text = SemigroupFile::from_semigroup(&construct(&recipe)?).write();
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
                }
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
