//! Command-line front end: parse configuration documents, run extension and
//! block computations, and emit either human-readable tables or stable
//! line-oriented machine output (`--porcelain`, `key=value` per line).
//!
//! Exit codes: 0 success; 2 validation or input errors; 3 requests whose
//! block enumeration is not finite; 4 oracle disagreement with the closed
//! formula. Diagnostics go to stderr.

use clap::{Parser, Subcommand};
use mapext::blocks::{self, BlockClass, BlockError, SpectralCharacter};
use mapext::chars::{self, IrrepLabel, ModuleExpr};
use mapext::emalg::{load_config, ConfigDoc, EmalgError, EvalRepSpec, ExtResult};
use mapext::ext::ext_dim;
use mapext::intlinalg::QuotientGroup;
use mapext::oracle::{oracle_ext_dim, OracleError};
use mapext::rootsys::{self, CartanData, RootSystemSpec, Weight};
use mapext::BigInt;
use std::path::PathBuf;
use std::process::ExitCode;

/// Write one line to stdout, exiting quietly if the reading end has closed
/// (e.g. output piped into `head`).
fn emit_line(line: String) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let done = stdout.write_all(line.as_bytes()).and_then(|()| stdout.write_all(b"\n"));
    if let Err(e) = done {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit_line(format!($($arg)*)) };
}

#[derive(Parser)]
#[command(
    name = "mapext",
    version,
    about = "Ext^1 dimensions and block decompositions for equivariant map algebras"
)]
struct Cli {
    /// Machine output: one stable `key=value` line per field.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ext^1 between two representations named in a configuration document.
    Ext {
        config: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Enumerate the block characters supported on the given points.
    Blocks {
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<String>,
    },
    /// The spectral character of a named representation.
    Spectral {
        config: PathBuf,
        #[arg(long)]
        rep: String,
    },
    /// Whether two named representations lie in the same block.
    Sameblock {
        config: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Decompose the tensor product of two irreducibles.
    Tensor {
        #[arg(long)]
        g: String,
        #[arg(long)]
        l: String,
        #[arg(long)]
        m: String,
    },
    /// dim Hom(U ⊗ V, W) for U an irreducible, a sum, or `adjoint`.
    Homdim {
        #[arg(long)]
        g: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Brute-force Ext^1 with an agreement verdict against `ext`.
    Oracle {
        config: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Invariant factors of the weight lattice modulo the root lattice, or
    /// modulo the span of a module's weights (`--span-of`).
    Quotient {
        #[arg(long)]
        g: String,
        #[arg(long = "span-of")]
        span_of: Option<String>,
    },
}

struct CmdError {
    code: u8,
    messages: Vec<String>,
}

impl CmdError {
    fn validation(msg: impl Into<String>) -> Self {
        CmdError { code: 2, messages: vec![msg.into()] }
    }
}

fn validation_errors(errs: Vec<EmalgError>) -> CmdError {
    CmdError { code: 2, messages: errs.iter().map(|e| e.to_string()).collect() }
}

fn block_error(err: BlockError) -> CmdError {
    match err {
        BlockError::Nonfinite => CmdError { code: 3, messages: vec![err.to_string()] },
        BlockError::Invalid(e) => CmdError::validation(e.to_string()),
    }
}

fn oracle_error(err: OracleError) -> CmdError {
    match err {
        OracleError::Validation(errs) => validation_errors(errs),
        other => CmdError::validation(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            for m in &e.messages {
                eprintln!("error: {m}");
            }
            ExitCode::from(e.code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CmdError> {
    let p = cli.porcelain;
    match &cli.command {
        Command::Ext { config, from, to } => {
            let doc = load(config)?;
            let from = rep(&doc, from)?;
            let to = rep(&doc, to)?;
            let result = ext_dim(&doc.algebra, from, to).map_err(validation_errors)?;
            print_ext(&result, p);
            Ok(())
        }
        Command::Blocks { config, points } => {
            let doc = load(config)?;
            let list = blocks::enumerate_blocks(&doc.algebra, points).map_err(block_error)?;
            if p {
                out!("count={}", list.len());
                for ch in &list {
                    out!("block={}", character_str(ch));
                }
            } else {
                out!("{} blocks on points {}:", list.len(), points.join(","));
                for ch in &list {
                    out!("  {}", character_str(ch));
                }
            }
            Ok(())
        }
        Command::Spectral { config, rep: id } => {
            let doc = load(config)?;
            let r = rep(&doc, id)?;
            let ch = blocks::spectral_character(&doc.algebra, r).map_err(block_error)?;
            if p {
                for (point, class) in &ch.values {
                    out!("value={point}:{}", class_str(class));
                }
                if !ch.noneval_tag.is_empty() {
                    out!("noneval={}", ch.noneval_tag);
                }
            } else {
                if ch.values.is_empty() && ch.noneval_tag.is_empty() {
                    out!("trivial character");
                }
                for (point, class) in &ch.values {
                    out!("{point}: {}", class_str(class));
                }
                if !ch.noneval_tag.is_empty() {
                    out!("noneval tag: {}", ch.noneval_tag);
                }
            }
            Ok(())
        }
        Command::Sameblock { config, a, b } => {
            let doc = load(config)?;
            let ra = rep(&doc, a)?;
            let rb = rep(&doc, b)?;
            let same = blocks::same_block(&doc.algebra, ra, rb).map_err(block_error)?;
            let word = if same { "yes" } else { "no" };
            if p {
                out!("same_block={word}");
            } else {
                out!("{word}");
            }
            Ok(())
        }
        Command::Tensor { g, l, m } => {
            let cd = cartan(g)?;
            let lw = dominant_weight(&cd, l, "--l")?;
            let mw = dominant_weight(&cd, m, "--m")?;
            let expr = chars::tensor_decompose(&cd, &lw, &mw);
            let mut terms: Vec<(Vec<i64>, u64)> = expr
                .terms
                .iter()
                .map(|(label, mult)| (label.hw.coords.clone(), *mult))
                .collect();
            terms.sort();
            for (coords, mult) in terms {
                let cs = int_list(&coords);
                if p {
                    out!("term={cs}:{mult}");
                } else {
                    out!("({cs}) x{mult}");
                }
            }
            Ok(())
        }
        Command::Homdim { g, u, v, w } => {
            let cd = cartan(g)?;
            let u_expr = if u == "adjoint" {
                chars::adjoint_expr(&cd)
            } else {
                ModuleExpr::of(IrrepLabel::uncharged(dominant_weight(&cd, u, "--u")?))
            };
            let vw = IrrepLabel::uncharged(dominant_weight(&cd, v, "--v")?);
            let ww = IrrepLabel::uncharged(dominant_weight(&cd, w, "--w")?);
            let dim = chars::hom_dim(&cd, &u_expr, &vw, &ww);
            if p {
                out!("hom_dim={dim}");
            } else {
                out!("{dim}");
            }
            Ok(())
        }
        Command::Oracle { config, from, to } => {
            let doc = load(config)?;
            let from = rep(&doc, from)?;
            let to = rep(&doc, to)?;
            let formula = ext_dim(&doc.algebra, from, to).map_err(validation_errors)?;
            let oracle = oracle_ext_dim(&doc.algebra, from, to).map_err(oracle_error)?;
            let agree = formula.infinite_summands.is_empty() && formula.finite_dim == oracle;
            let verdict = if agree { "yes" } else { "no" };
            if p {
                out!("oracle_dim={oracle}");
                out!("formula_dim={}", formula.finite_dim);
                out!("agree={verdict}");
            } else {
                out!("oracle: {oracle}");
                out!("formula: {}", formula.finite_dim);
                out!("agree: {verdict}");
            }
            if agree {
                Ok(())
            } else {
                Err(CmdError {
                    code: 4,
                    messages: vec![format!(
                        "oracle dimension {oracle} disagrees with formula dimension {}",
                        formula.finite_dim
                    )],
                })
            }
        }
        Command::Quotient { g, span_of } => {
            let cd = cartan(g)?;
            let sub = match span_of.as_deref() {
                None | Some("adjoint") => cd.root_lattice(),
                Some(weight) => {
                    let hw = dominant_weight(&cd, weight, "--span-of")?;
                    let weights: Vec<Weight> = chars::weight_multiplicities(&cd, &hw)
                        .mults
                        .keys()
                        .cloned()
                        .collect();
                    cd.span_of_weights(&weights)
                        .map_err(|e| CmdError::validation(e.to_string()))?
                }
            };
            let quotient = mapext::intlinalg::quotient_of(&sub);
            let factors = factors_str(&quotient);
            if p {
                out!("factors={factors}");
            } else {
                out!("invariant factors: {factors}");
            }
            Ok(())
        }
    }
}

fn load(path: &PathBuf) -> Result<ConfigDoc, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::validation(format!("cannot read {}: {e}", path.display())))?;
    load_config(&text).map_err(validation_errors)
}

fn rep<'a>(doc: &'a ConfigDoc, id: &str) -> Result<&'a EvalRepSpec, CmdError> {
    doc.reps
        .get(id)
        .ok_or_else(|| CmdError::validation(format!("unknown rep id \"{id}\"")))
}

fn cartan(spec: &str) -> Result<CartanData, CmdError> {
    let spec = RootSystemSpec::parse(spec).map_err(|e| CmdError::validation(e.to_string()))?;
    rootsys::build(&spec).map_err(|e| CmdError::validation(e.to_string()))
}

fn dominant_weight(cd: &CartanData, text: &str, flag: &str) -> Result<Weight, CmdError> {
    let coords: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CmdError::validation(format!("{flag}: expected a comma list of integers, got \"{text}\"")))?;
    if coords.len() != cd.rank() {
        return Err(CmdError::validation(format!(
            "{flag}: expected {} coordinates, got {}",
            cd.rank(),
            coords.len()
        )));
    }
    let w = Weight::new(coords);
    if !w.is_dominant() {
        return Err(CmdError::validation(format!(
            "{flag}: weight must be dominant (all coordinates ≥ 0)"
        )));
    }
    Ok(w)
}

fn print_ext(r: &ExtResult, porcelain: bool) {
    if porcelain {
        out!("finite_dim={}", r.finite_dim);
        for s in &r.infinite_summands {
            out!("symbolic={s}");
        }
        for (desc, n) in &r.breakdown {
            out!("breakdown={n} {desc}");
        }
    } else {
        let mut line = format!("Ext^1 = {}", r.finite_dim);
        for s in &r.infinite_summands {
            line.push_str(&format!(" + {s}"));
        }
        out!("{line}");
        if !r.breakdown.is_empty() {
            out!("breakdown:");
            for (desc, n) in &r.breakdown {
                out!("  {desc}: {n}");
            }
        }
    }
}

fn int_list(coords: &[i64]) -> String {
    coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Nontrivial invariant factors, comma-joined; `1` for the trivial group;
/// free factors print as `0`.
fn factors_str(q: &QuotientGroup) -> String {
    let one = BigInt::from(1);
    let nontrivial: Vec<String> = q
        .invariant_factors
        .iter()
        .filter(|f| **f != one)
        .map(|f| f.to_string())
        .collect();
    if nontrivial.is_empty() {
        "1".into()
    } else {
        nontrivial.join(",")
    }
}

/// Coset normal form over the nontrivial invariant factors: `c1,c2 mod
/// f1,f2` with `Z` for free factors; `0` when the quotient is trivial.
fn coset_str(q: &QuotientGroup, coset: &[BigInt]) -> String {
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    let mut coords = Vec::new();
    let mut mods = Vec::new();
    for (c, f) in coset.iter().zip(&q.invariant_factors) {
        if *f == one {
            continue;
        }
        coords.push(c.to_string());
        mods.push(if *f == zero { "Z".to_string() } else { f.to_string() });
    }
    if coords.is_empty() {
        "0".into()
    } else {
        format!("{} mod {}", coords.join(","), mods.join(","))
    }
}

fn class_str(class: &BlockClass) -> String {
    let one = BigInt::from(1);
    match class {
        BlockClass::Zero => "0".into(),
        BlockClass::LatticeCoset { quotient, coset } => coset_str(quotient, coset),
        BlockClass::OnsagerFixed { quotient, coset, charge_mod_z } => {
            let charge = format!("{charge_mod_z} mod Z");
            if quotient.invariant_factors.iter().all(|f| *f == one) {
                charge
            } else {
                format!("{}; {charge}", coset_str(quotient, coset))
            }
        }
    }
}

fn character_str(ch: &SpectralCharacter) -> String {
    let parts: Vec<String> = ch
        .values
        .iter()
        .map(|(point, class)| format!("{point}:{}", class_str(class)))
        .collect();
    if parts.is_empty() {
        "trivial".into()
    } else {
        parts.join(";")
    }
}
