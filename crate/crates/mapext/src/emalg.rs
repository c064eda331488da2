//! Data model for equivariant map algebras and their irreducible
//! finite-dimensional representations, plus the configuration-document
//! format that the CLI and test suites consume.
//!
//! An algebra is described by a family (untwisted current, multiloop,
//! exchange involution, or generalized Onsager), the root-system data of the
//! target Lie algebra, and a list of points. Geometry is abstracted away:
//! each point carries only its stabilizer kind, the dimension of its
//! (co)tangent space, and a fixed-point flag — the extension and block
//! formulas consume nothing else. Representations are finitely supported
//! assignments of irreducible labels to points (one point per orbit),
//! optionally twisted by an opaque non-evaluation tag.

use crate::chars::{self, IrrepLabel};
use crate::rootsys::{self, CartanData, RootSystemSpec, RootSysError, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

/// Which equivariant map algebra family a configuration describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `g ⊗ A` for an affine coordinate ring `A`, trivial group.
    Untwisted,
    /// `(k^×)^n` with a free action of a product of finite cyclic groups;
    /// `n` is the number of loop variables. The cyclic orders may be recorded
    /// but do not enter any formula.
    Multiloop { n: usize, orders: Vec<i64> },
    /// `g = s ⊞ s` with the involution swapping the two copies.
    Exchange,
    /// `X = k^×`, an order-2 group acting by `t ↦ t⁻¹` on `X` and by an
    /// order-2 automorphism on a simple `g`.
    Onsager,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Untwisted => "untwisted",
            Family::Multiloop { .. } => "multiloop",
            Family::Exchange => "exchange",
            Family::Onsager => "onsager",
        }
    }
}

/// Symmetric-pair branching data for an Onsager-family configuration:
/// `g = g₀ ⊕ g₁` with `g₀ = g₀,rss ⊕ g₀,ab` and `g₁` described by the
/// highest weight `ν` — `g₁ ≅ V(ν)` irreducible when `g0_ab_dim = 0`, and
/// `g₁ ≅ (V(ν) ⊗ k₁) ⊕ (V(ν)* ⊗ k₋₁)` when `g0_ab_dim = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnsagerPairData {
    pub g0_spec: RootSystemSpec,
    pub g0_ab_dim: usize,
    pub nu: Weight,
}

impl OnsagerPairData {
    /// The built-in pair: sl2 with the involution `e ↔ f`, `h ↦ −h`.
    /// Here `g₀` is the one-dimensional span of `(e+f)/2` and `g₁` carries
    /// charges ±1, so `g₀,rss` is empty and `ν` is the empty weight.
    pub fn builtin_sl2() -> Self {
        OnsagerPairData {
            g0_spec: RootSystemSpec::new(vec![]),
            g0_ab_dim: 1,
            nu: Weight::zero(0),
        }
    }
}

/// Whether the stabilizer of a point is trivial or the full group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stabilizer {
    Trivial,
    Full,
}

/// One point (orbit representative) of the underlying variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSpec {
    pub id: String,
    pub stabilizer: Stabilizer,
    /// dim (m_x/m_x²)* at the point (or at its image in the quotient where
    /// the formulas require it).
    pub tangent_dim: usize,
    pub fixed_point: bool,
}

/// A full algebra configuration: family, Lie data, and points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraConfig {
    pub family: Family,
    /// Root system of the semisimple part of `g`. For the exchange family
    /// this is the single simple factor `s` (the algebra is `s ⊞ s`); for the
    /// Onsager family it is the full simple `g`.
    pub g_spec: RootSystemSpec,
    /// Dimension of the abelian part of `g` (untwisted/multiloop only);
    /// its contributions to Ext are reported symbolically.
    pub g_ab_dim: usize,
    /// Symmetric-pair data; present exactly for the Onsager family.
    pub onsager: Option<OnsagerPairData>,
    pub points: Vec<PointSpec>,
}

/// Root-system and abelian-rank descriptor of the isotropy algebra `g^x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyDescriptor {
    pub rs: RootSystemSpec,
    pub ab_rank: usize,
}

impl IsotropyDescriptor {
    pub fn build_cd(&self) -> Result<CartanData, RootSysError> {
        rootsys::build(&self.rs)
    }
}

/// An irreducible finite-dimensional representation: a finitely supported
/// assignment of local labels (one per orbit; trivial labels omitted), plus
/// an opaque tag naming the one-dimensional non-evaluation twist (empty =
/// untwisted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalRepSpec {
    pub support: BTreeMap<String, IrrepLabel>,
    pub noneval_tag: String,
}

impl EvalRepSpec {
    pub fn trivial() -> Self {
        EvalRepSpec { support: BTreeMap::new(), noneval_tag: String::new() }
    }
}

/// A symbolic, necessarily infinite-dimensional Ext summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolicSummand {
    /// Copies of the dual of the abelianization `M_ab` of the map algebra
    /// (or of its abelian factor), when that space is infinite-dimensional.
    DualOfMab { copies: u64 },
    /// Reserved for graded inputs whose abelianization is infinite-
    /// dimensional but not split off by the reductive decomposition; the
    /// shipped families never produce it.
    DualOfMabGss { copies: u64 },
}

impl fmt::Display for SymbolicSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicSummand::DualOfMab { copies } => write!(f, "dual(M_ab)^{copies}"),
            SymbolicSummand::DualOfMabGss { copies } => write!(f, "dual(M_ab_gss)^{copies}"),
        }
    }
}

/// The result of an Ext¹ computation: an exact finite dimension, any
/// symbolic infinite summands, and an additive breakdown of the finite part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtResult {
    pub finite_dim: u64,
    pub infinite_summands: Vec<SymbolicSummand>,
    /// `(description, contribution)` lines summing exactly to `finite_dim`.
    /// Corrections shared between summands may be negative; the total never
    /// is.
    pub breakdown: Vec<(String, i64)>,
}

impl ExtResult {
    pub fn zero(reason: &str) -> Self {
        ExtResult {
            finite_dim: 0,
            infinite_summands: vec![],
            breakdown: vec![(reason.to_string(), 0)],
        }
    }

    pub fn finite(dim: u64, description: &str) -> Self {
        ExtResult {
            finite_dim: dim,
            infinite_summands: vec![],
            breakdown: vec![(description.to_string(), dim as i64)],
        }
    }

    /// Check the defining invariant: breakdown sums to the finite dimension.
    pub fn consistent(&self) -> bool {
        self.breakdown.iter().map(|(_, c)| c).sum::<i64>() == self.finite_dim as i64
    }

    pub(crate) fn push_summand(&mut self, s: SymbolicSummand) {
        let (copies, gss) = match s {
            SymbolicSummand::DualOfMab { copies } => (copies, false),
            SymbolicSummand::DualOfMabGss { copies } => (copies, true),
        };
        if copies == 0 {
            return;
        }
        for existing in &mut self.infinite_summands {
            match (existing, gss) {
                (SymbolicSummand::DualOfMab { copies: c }, false)
                | (SymbolicSummand::DualOfMabGss { copies: c }, true) => {
                    *c += copies;
                    return;
                }
                _ => {}
            }
        }
        self.infinite_summands.push(if gss {
            SymbolicSummand::DualOfMabGss { copies }
        } else {
            SymbolicSummand::DualOfMab { copies }
        });
    }
}

/// A parsed configuration document: the algebra plus named representations.
#[derive(Debug, Clone)]
pub struct ConfigDoc {
    pub algebra: AlgebraConfig,
    pub reps: BTreeMap<String, EvalRepSpec>,
}

/// Diagnostics from parsing and validation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmalgError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown key '{key}' in section {section}")]
    UnknownKey { section: String, key: String },
    #[error("missing key '{key}' in section {section}")]
    MissingKey { section: String, key: String },
    #[error("key '{key}': {msg}")]
    BadValue { key: String, msg: String },
    #[error("key '{key}' is not accepted for family {family}")]
    KeyNotForFamily { key: String, family: String },
    #[error("duplicate {what} '{id}'")]
    Duplicate { what: String, id: String },
    #[error("rep '{rep}': unknown point '{point}'")]
    UnknownPoint { rep: String, point: String },
    #[error("rep '{rep}': duplicate support point '{point}' (one label per orbit)")]
    DuplicateSupport { rep: String, point: String },
    #[error("point '{point}': tangent_dim must equal n (expected {expected}, got {got})")]
    TangentMismatch { point: String, expected: usize, got: usize },
    #[error("point '{point}': {msg}")]
    PointInvalid { point: String, msg: String },
    #[error("rep '{rep}' at '{point}': {msg}")]
    LabelInvalid { rep: String, point: String, msg: String },
    #[error("rep '{rep}' at '{point}': trivial labels must be omitted from the support")]
    TrivialLabel { rep: String, point: String },
    #[error("algebra: {0}")]
    AlgebraInvalid(String),
    #[error(transparent)]
    RootSys(#[from] RootSysError),
}

// ---------------------------------------------------------------------------
// Configuration document parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Int(i64),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, EmalgError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            '{' => {
                chars.next();
                toks.push((Tok::LBrace, line));
            }
            '}' => {
                chars.next();
                toks.push((Tok::RBrace, line));
            }
            '[' => {
                chars.next();
                toks.push((Tok::LBracket, line));
            }
            ']' => {
                chars.next();
                toks.push((Tok::RBracket, line));
            }
            '=' => {
                chars.next();
                toks.push((Tok::Eq, line));
            }
            ';' => {
                chars.next();
                toks.push((Tok::Semi, line));
            }
            ',' => {
                chars.next();
                toks.push((Tok::Comma, line));
            }
            '/' => {
                chars.next();
                toks.push((Tok::Slash, line));
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\n') | None => {
                            return Err(EmalgError::Parse {
                                line,
                                msg: "unterminated string literal".into(),
                            })
                        }
                        Some(c) => s.push(c),
                    }
                }
                toks.push((Tok::Str(s), line));
            }
            '-' | '0'..='9' => {
                let mut s = String::new();
                if c == '-' {
                    s.push(c);
                    chars.next();
                }
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v: i64 = s.parse().map_err(|_| EmalgError::Parse {
                    line,
                    msg: format!("bad integer '{s}'"),
                })?;
                toks.push((Tok::Int(v), line));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), line));
            }
            other => {
                return Err(EmalgError::Parse {
                    line,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|(_, l)| *l)
            .unwrap_or(0)
    }

    fn err(&self, msg: impl Into<String>) -> EmalgError {
        EmalgError::Parse { line: self.line(), msg: msg.into() }
    }

    fn next(&mut self, what: &str) -> Result<Tok, EmalgError> {
        let t = self
            .toks
            .get(self.pos)
            .map(|(t, _)| t.clone())
            .ok_or_else(|| self.err(format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), EmalgError> {
        let t = self.next(what)?;
        if t == tok {
            Ok(())
        } else {
            Err(self.err(format!("expected {what}, found {t:?}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, EmalgError> {
        match self.next(what)? {
            Tok::Ident(s) => Ok(s),
            t => Err(self.err(format!("expected {what}, found {t:?}"))),
        }
    }

    fn string(&mut self, what: &str) -> Result<String, EmalgError> {
        match self.next(what)? {
            Tok::Str(s) => Ok(s),
            t => Err(self.err(format!("expected {what}, found {t:?}"))),
        }
    }

    fn skip_semis(&mut self) {
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
        }
    }

    /// A bracketed list of exact rationals `[a, b/c, ...]`.
    fn rational_list(&mut self) -> Result<Vec<BigRational>, EmalgError> {
        self.expect(Tok::LBracket, "'['")?;
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::RBracket) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            let n = match self.next("number")? {
                Tok::Int(v) => v,
                t => return Err(self.err(format!("expected number, found {t:?}"))),
            };
            let mut value = BigRational::from(BigInt::from(n));
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let d = match self.next("denominator")? {
                    Tok::Int(v) => v,
                    t => return Err(self.err(format!("expected denominator, found {t:?}"))),
                };
                if d == 0 {
                    return Err(self.err("zero denominator"));
                }
                value = BigRational::new(BigInt::from(n), BigInt::from(d));
            }
            out.push(value);
            match self.next("',' or ']'")? {
                Tok::Comma => continue,
                Tok::RBracket => break,
                t => return Err(self.err(format!("expected ',' or ']', found {t:?}"))),
            }
        }
        Ok(out)
    }

    fn integer_list(&mut self, key: &str) -> Result<Vec<i64>, EmalgError> {
        let rats = self.rational_list()?;
        rats.into_iter()
            .map(|r| {
                if r.is_integer() {
                    Ok(num_traits::ToPrimitive::to_i64(&r.to_integer()).unwrap())
                } else {
                    Err(EmalgError::BadValue {
                        key: key.to_string(),
                        msg: "entries must be integers".into(),
                    })
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
enum Value {
    Str(String),
    Int(i64),
    Word(String),
    Rationals(Vec<BigRational>),
}

impl Value {
    fn type_name(&self) -> &'static str {
        match self {
            Value::Str(_) => "string",
            Value::Int(_) => "integer",
            Value::Word(_) => "word",
            Value::Rationals(_) => "list",
        }
    }
}

fn take_string(map: &mut BTreeMap<String, Value>, key: &str) -> Result<Option<String>, EmalgError> {
    match map.remove(key) {
        None => Ok(None),
        Some(Value::Str(s)) => Ok(Some(s)),
        Some(v) => Err(EmalgError::BadValue {
            key: key.into(),
            msg: format!("expected a quoted string, found {}", v.type_name()),
        }),
    }
}

fn take_usize(map: &mut BTreeMap<String, Value>, key: &str) -> Result<Option<usize>, EmalgError> {
    match map.remove(key) {
        None => Ok(None),
        Some(Value::Int(v)) if v >= 0 => Ok(Some(v as usize)),
        Some(Value::Int(_)) => {
            Err(EmalgError::BadValue { key: key.into(), msg: "must be non-negative".into() })
        }
        Some(v) => Err(EmalgError::BadValue {
            key: key.into(),
            msg: format!("expected an integer, found {}", v.type_name()),
        }),
    }
}

fn take_int_list(
    map: &mut BTreeMap<String, Value>,
    key: &str,
) -> Result<Option<Vec<i64>>, EmalgError> {
    match map.remove(key) {
        None => Ok(None),
        Some(Value::Rationals(rs)) => {
            let mut out = Vec::with_capacity(rs.len());
            for r in rs {
                if !r.is_integer() {
                    return Err(EmalgError::BadValue {
                        key: key.into(),
                        msg: "entries must be integers".into(),
                    });
                }
                out.push(num_traits::ToPrimitive::to_i64(&r.to_integer()).unwrap());
            }
            Ok(Some(out))
        }
        Some(v) => Err(EmalgError::BadValue {
            key: key.into(),
            msg: format!("expected a bracketed list, found {}", v.type_name()),
        }),
    }
}

/// Parse a configuration document. Purely syntactic plus key-shape checks;
/// run `validate` afterwards for the semantic invariants.
pub fn parse_config(text: &str) -> Result<ConfigDoc, EmalgError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let mut algebra: Option<AlgebraConfig> = None;
    let mut points: Vec<PointSpec> = Vec::new();
    let mut reps: BTreeMap<String, EvalRepSpec> = BTreeMap::new();
    while p.peek().is_some() {
        let section = p.ident("section name ('algebra', 'point', or 'rep')")?;
        match section.as_str() {
            "algebra" => {
                if algebra.is_some() {
                    return Err(EmalgError::Duplicate {
                        what: "algebra section".into(),
                        id: "algebra".into(),
                    });
                }
                algebra = Some(parse_algebra_section(&mut p)?);
            }
            "point" => {
                let id = p.string("point id")?;
                if points.iter().any(|pt| pt.id == id) {
                    return Err(EmalgError::Duplicate { what: "point".into(), id });
                }
                points.push(parse_point_section(&mut p, id)?);
            }
            "rep" => {
                let id = p.string("rep id")?;
                if reps.contains_key(&id) {
                    return Err(EmalgError::Duplicate { what: "rep".into(), id });
                }
                let rep = parse_rep_section(&mut p, &id)?;
                reps.insert(id, rep);
            }
            other => {
                return Err(p.err(format!(
                    "unknown section '{other}' (expected 'algebra', 'point', or 'rep')"
                )))
            }
        }
    }
    let mut algebra = algebra.ok_or(EmalgError::MissingKey {
        section: "document".into(),
        key: "algebra".into(),
    })?;
    algebra.points = points;
    Ok(ConfigDoc { algebra, reps })
}

/// Collect `key = value` statements until the closing brace.
fn parse_kv_block(p: &mut Parser, section: &str) -> Result<BTreeMap<String, Value>, EmalgError> {
    p.expect(Tok::LBrace, "'{'")?;
    let mut map = BTreeMap::new();
    loop {
        p.skip_semis();
        if p.peek() == Some(&Tok::RBrace) {
            p.pos += 1;
            return Ok(map);
        }
        let key = p.ident("key")?;
        p.expect(Tok::Eq, "'='")?;
        let value = match p.peek() {
            Some(Tok::Str(_)) => Value::Str(p.string("string")?),
            Some(Tok::Int(_)) => match p.next("integer")? {
                Tok::Int(v) => Value::Int(v),
                _ => unreachable!(),
            },
            Some(Tok::Ident(_)) => Value::Word(p.ident("word")?),
            Some(Tok::LBracket) => Value::Rationals(p.rational_list()?),
            _ => return Err(p.err("expected a value")),
        };
        if map.insert(key.clone(), value).is_some() {
            return Err(EmalgError::Duplicate {
                what: format!("key in section {section}"),
                id: key,
            });
        }
    }
}

fn parse_spec_value(s: &str, key: &str) -> Result<RootSystemSpec, EmalgError> {
    RootSystemSpec::parse(s).map_err(|e| EmalgError::BadValue {
        key: key.to_string(),
        msg: e.to_string(),
    })
}

fn parse_algebra_section(p: &mut Parser) -> Result<AlgebraConfig, EmalgError> {
    let mut map = parse_kv_block(p, "algebra")?;
    let family_word = match map.remove("family") {
        Some(Value::Word(w)) | Some(Value::Str(w)) => w,
        Some(v) => {
            return Err(EmalgError::BadValue {
                key: "family".into(),
                msg: format!("expected a family name, found {}", v.type_name()),
            })
        }
        None => {
            return Err(EmalgError::MissingKey { section: "algebra".into(), key: "family".into() })
        }
    };
    let missing = |key: &str| EmalgError::MissingKey { section: "algebra".into(), key: key.into() };
    let config = match family_word.as_str() {
        "untwisted" | "multiloop" => {
            let g = take_string(&mut map, "g")?.ok_or_else(|| missing("g"))?;
            let g_spec = parse_spec_value(&g, "g")?;
            let g_ab_dim = take_usize(&mut map, "g_ab_dim")?.unwrap_or(0);
            let family = if family_word == "untwisted" {
                if map.contains_key("n") {
                    return Err(EmalgError::KeyNotForFamily {
                        key: "n".into(),
                        family: "untwisted".into(),
                    });
                }
                Family::Untwisted
            } else {
                let n = take_usize(&mut map, "n")?.ok_or_else(|| missing("n"))?;
                if n == 0 {
                    return Err(EmalgError::BadValue {
                        key: "n".into(),
                        msg: "must be at least 1".into(),
                    });
                }
                let orders = take_int_list(&mut map, "m")?.unwrap_or_default();
                Family::Multiloop { n, orders }
            };
            AlgebraConfig { family, g_spec, g_ab_dim, onsager: None, points: vec![] }
        }
        "exchange" => {
            let s = take_string(&mut map, "s")?.ok_or_else(|| missing("s"))?;
            let s_spec = parse_spec_value(&s, "s")?;
            AlgebraConfig {
                family: Family::Exchange,
                g_spec: s_spec,
                g_ab_dim: 0,
                onsager: None,
                points: vec![],
            }
        }
        "onsager" => {
            let g = take_string(&mut map, "g")?.ok_or_else(|| missing("g"))?;
            let g_spec = parse_spec_value(&g, "g")?;
            let g0 = take_string(&mut map, "g0")?;
            let g0_ab = take_usize(&mut map, "g0_ab_dim")?;
            let nu = take_int_list(&mut map, "nu")?;
            let pair = if g0.is_none() && g0_ab.is_none() && nu.is_none() {
                if g_spec != RootSystemSpec::parse("A1").unwrap() {
                    return Err(EmalgError::AlgebraInvalid(
                        "symmetric-pair data (g0, g0_ab_dim, nu) is required unless g = \"A1\", \
                         which defaults to the built-in pair"
                            .into(),
                    ));
                }
                OnsagerPairData::builtin_sl2()
            } else {
                let g0_spec = match g0 {
                    Some(s) => parse_spec_value(&s, "g0")?,
                    None => RootSystemSpec::new(vec![]),
                };
                let g0_ab_dim = g0_ab.ok_or_else(|| missing("g0_ab_dim"))?;
                let nu = Weight::new(nu.ok_or_else(|| missing("nu"))?);
                OnsagerPairData { g0_spec, g0_ab_dim, nu }
            };
            AlgebraConfig {
                family: Family::Onsager,
                g_spec,
                g_ab_dim: 0,
                onsager: Some(pair),
                points: vec![],
            }
        }
        other => {
            return Err(EmalgError::BadValue {
                key: "family".into(),
                msg: format!(
                    "unknown family '{other}' (expected untwisted, multiloop, exchange, onsager)"
                ),
            })
        }
    };
    if let Some(key) = map.keys().next() {
        return Err(EmalgError::UnknownKey { section: "algebra".into(), key: key.clone() });
    }
    Ok(config)
}

fn parse_point_section(p: &mut Parser, id: String) -> Result<PointSpec, EmalgError> {
    let mut map = parse_kv_block(p, "point")?;
    let tangent_dim = take_usize(&mut map, "tangent_dim")?.ok_or(EmalgError::MissingKey {
        section: format!("point \"{id}\""),
        key: "tangent_dim".into(),
    })?;
    let fixed_point = match map.remove("fixed") {
        None => false,
        Some(Value::Word(w)) if w == "true" => true,
        Some(Value::Word(w)) if w == "false" => false,
        Some(_) => {
            return Err(EmalgError::BadValue {
                key: "fixed".into(),
                msg: "expected true or false".into(),
            })
        }
    };
    let stabilizer = match map.remove("stabilizer") {
        None => {
            if fixed_point {
                Stabilizer::Full
            } else {
                Stabilizer::Trivial
            }
        }
        Some(Value::Str(s)) | Some(Value::Word(s)) => match s.as_str() {
            "trivial" => Stabilizer::Trivial,
            "full" => Stabilizer::Full,
            other => {
                return Err(EmalgError::BadValue {
                    key: "stabilizer".into(),
                    msg: format!("expected \"trivial\" or \"full\", found \"{other}\""),
                })
            }
        },
        Some(v) => {
            return Err(EmalgError::BadValue {
                key: "stabilizer".into(),
                msg: format!("expected \"trivial\" or \"full\", found {}", v.type_name()),
            })
        }
    };
    if let Some(key) = map.keys().next() {
        return Err(EmalgError::UnknownKey {
            section: format!("point \"{id}\""),
            key: key.clone(),
        });
    }
    Ok(PointSpec { id, stabilizer, tangent_dim, fixed_point })
}

fn parse_rep_section(p: &mut Parser, rep_id: &str) -> Result<EvalRepSpec, EmalgError> {
    p.expect(Tok::LBrace, "'{'")?;
    let mut support: Vec<(String, Option<Vec<i64>>, Vec<BigRational>)> = Vec::new();
    let mut noneval_tag: Option<String> = None;
    loop {
        p.skip_semis();
        if p.peek() == Some(&Tok::RBrace) {
            p.pos += 1;
            break;
        }
        let word = p.ident("statement ('at', 'charge', or 'noneval')")?;
        match word.as_str() {
            "at" => {
                let point = p.string("point id")?;
                if support.iter().any(|(id, _, _)| *id == point) {
                    return Err(EmalgError::DuplicateSupport {
                        rep: rep_id.to_string(),
                        point,
                    });
                }
                // Optional inline `weight = [...]`.
                let mut weight = None;
                if p.peek() == Some(&Tok::Ident("weight".into())) {
                    p.pos += 1;
                    p.expect(Tok::Eq, "'='")?;
                    weight = Some(p.integer_list("weight")?);
                }
                support.push((point, weight, vec![]));
            }
            "charge" => {
                p.expect(Tok::Eq, "'='")?;
                let charges = p.rational_list()?;
                let Some(last) = support.last_mut() else {
                    return Err(p.err("'charge' must follow an 'at' clause"));
                };
                if !last.2.is_empty() {
                    return Err(p.err("duplicate 'charge' for the same 'at' clause"));
                }
                last.2 = charges;
            }
            "noneval" => {
                p.expect(Tok::Eq, "'='")?;
                let tag = p.string("tag string")?;
                if noneval_tag.is_some() {
                    return Err(p.err("duplicate 'noneval'"));
                }
                noneval_tag = Some(tag);
            }
            other => return Err(p.err(format!("unknown statement '{other}' in rep section"))),
        }
    }
    let mut map = BTreeMap::new();
    for (point, weight, charges) in support {
        let hw = Weight::new(weight.unwrap_or_default());
        map.insert(point, IrrepLabel::new(hw, charges));
    }
    Ok(EvalRepSpec { support: map, noneval_tag: noneval_tag.unwrap_or_default() })
}

// ---------------------------------------------------------------------------
// Validation and isotropy descriptors
// ---------------------------------------------------------------------------

/// The isotropy descriptor `g^x` at a point of the configuration.
pub fn g_fixed_at(config: &AlgebraConfig, point: &PointSpec) -> IsotropyDescriptor {
    match &config.family {
        Family::Untwisted | Family::Multiloop { .. } => {
            IsotropyDescriptor { rs: config.g_spec.clone(), ab_rank: config.g_ab_dim }
        }
        Family::Exchange => {
            if point.fixed_point {
                IsotropyDescriptor { rs: config.g_spec.clone(), ab_rank: 0 }
            } else {
                IsotropyDescriptor { rs: config.g_spec.concat(&config.g_spec), ab_rank: 0 }
            }
        }
        Family::Onsager => {
            if point.fixed_point {
                let pair = config.onsager.as_ref().expect("onsager config carries pair data");
                IsotropyDescriptor { rs: pair.g0_spec.clone(), ab_rank: pair.g0_ab_dim }
            } else {
                IsotropyDescriptor { rs: config.g_spec.clone(), ab_rank: 0 }
            }
        }
    }
}

impl AlgebraConfig {
    pub fn point(&self, id: &str) -> Option<&PointSpec> {
        self.points.iter().find(|p| p.id == id)
    }
}

/// Validate the algebra-level invariants. Returns every violated invariant.
pub fn validate_config(config: &AlgebraConfig) -> Vec<EmalgError> {
    let mut errs = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for pt in &config.points {
        if !seen.insert(pt.id.clone()) {
            errs.push(EmalgError::Duplicate { what: "point".into(), id: pt.id.clone() });
        }
    }
    if let Err(e) = rootsys::build(&config.g_spec) {
        errs.push(e.into());
    }
    match &config.family {
        Family::Untwisted | Family::Multiloop { .. } => {
            for pt in &config.points {
                if pt.fixed_point || pt.stabilizer != Stabilizer::Trivial {
                    errs.push(EmalgError::PointInvalid {
                        point: pt.id.clone(),
                        msg: "free-action families have only free points with trivial stabilizer"
                            .into(),
                    });
                }
                if let Family::Multiloop { n, .. } = &config.family {
                    if pt.tangent_dim != *n {
                        errs.push(EmalgError::TangentMismatch {
                            point: pt.id.clone(),
                            expected: *n,
                            got: pt.tangent_dim,
                        });
                    }
                }
            }
        }
        Family::Exchange => {
            if config.g_spec.components.len() != 1 {
                errs.push(EmalgError::AlgebraInvalid(
                    "exchange family requires a single simple factor s".into(),
                ));
            }
            if config.g_ab_dim != 0 {
                errs.push(EmalgError::AlgebraInvalid(
                    "exchange family has no abelian part".into(),
                ));
            }
            for pt in &config.points {
                check_stabilizer_matches_fixed(pt, &mut errs);
            }
        }
        Family::Onsager => {
            if config.g_spec.components.len() != 1 {
                errs.push(EmalgError::AlgebraInvalid(
                    "onsager family requires a simple g".into(),
                ));
            }
            let Some(pair) = &config.onsager else {
                errs.push(EmalgError::AlgebraInvalid("missing symmetric-pair data".into()));
                return errs;
            };
            if pair.g0_ab_dim > 1 {
                errs.push(EmalgError::AlgebraInvalid("g0_ab_dim must be 0 or 1".into()));
            }
            if pair.nu.coords.len() != pair.g0_spec.rank() {
                errs.push(EmalgError::AlgebraInvalid(format!(
                    "nu has {} coordinates, g0 has rank {}",
                    pair.nu.coords.len(),
                    pair.g0_spec.rank()
                )));
            } else if !pair.nu.is_dominant() {
                errs.push(EmalgError::AlgebraInvalid("nu must be dominant".into()));
            } else if let Err(e) = check_onsager_pair(pair) {
                errs.push(e);
            }
            let mut fixed_count = 0;
            for pt in &config.points {
                check_stabilizer_matches_fixed(pt, &mut errs);
                if pt.fixed_point {
                    fixed_count += 1;
                }
                if pt.tangent_dim != 1 {
                    errs.push(EmalgError::PointInvalid {
                        point: pt.id.clone(),
                        msg: "onsager points lie on a smooth curve; tangent_dim must be 1".into(),
                    });
                }
            }
            if fixed_count > 2 {
                errs.push(EmalgError::AlgebraInvalid(
                    "the involution t -> 1/t fixes only t = 1 and t = -1; at most 2 fixed points"
                        .into(),
                ));
            }
        }
    }
    if config.g_ab_dim > 0
        && !matches!(config.family, Family::Untwisted | Family::Multiloop { .. })
    {
        errs.push(EmalgError::AlgebraInvalid(
            "g_ab_dim applies only to the untwisted and multiloop families".into(),
        ));
    }
    errs
}

fn check_stabilizer_matches_fixed(pt: &PointSpec, errs: &mut Vec<EmalgError>) {
    let expected = if pt.fixed_point { Stabilizer::Full } else { Stabilizer::Trivial };
    if pt.stabilizer != expected {
        errs.push(EmalgError::PointInvalid {
            point: pt.id.clone(),
            msg: "stabilizer must be full at fixed points and trivial elsewhere".into(),
        });
    }
}

/// Faithfulness of the odd part as a g₀-module, checked as a lattice
/// computation: with charges present, Span_Z wt(V(ν) ⊗ V(ν)*) must equal the
/// root lattice Q₀; without charges, ν ≠ 0 and Q₀ ⊆ Span_Z wt(V(ν)).
fn check_onsager_pair(pair: &OnsagerPairData) -> Result<(), EmalgError> {
    let cd0 = rootsys::build(&pair.g0_spec)?;
    if pair.g0_ab_dim == 0 {
        if pair.nu.is_zero() {
            return Err(EmalgError::AlgebraInvalid(
                "with g0_ab_dim = 0 the odd part V(nu) must be nontrivial (nu != 0)".into(),
            ));
        }
        let wt = chars::weight_multiplicities(&cd0, &pair.nu);
        let span =
            cd0.span_of_weights(&wt.mults.keys().cloned().collect::<Vec<_>>()).expect("rank ok");
        for row in 0..cd0.rank() {
            let alpha: Vec<BigInt> =
                (0..cd0.rank()).map(|j| cd0.cartan.get(j, row).clone()).collect();
            if !crate::intlinalg::lattice_contains(&span, &alpha).expect("rank ok") {
                return Err(EmalgError::AlgebraInvalid(
                    "odd part is not faithful: Span_Z wt(V(nu)) does not contain the root lattice"
                        .into(),
                ));
            }
        }
    } else if cd0.rank() > 0 {
        // Span of {ξ − ν : ξ ∈ wt V(ν)} must equal Q₀ in both directions.
        let wt = chars::weight_multiplicities(&cd0, &pair.nu);
        let diffs: Vec<Weight> = wt.mults.keys().map(|xi| xi.sub(&pair.nu)).collect();
        let span = cd0.span_of_weights(&diffs).expect("rank ok");
        let q = cd0.root_lattice();
        let contains = |sub: &crate::intlinalg::LatticeSubgroup,
                        gens: &crate::intlinalg::LatticeSubgroup| {
            (0..gens.generators.rows).all(|r| {
                let v: Vec<BigInt> =
                    (0..gens.generators.cols).map(|c| gens.generators.get(r, c).clone()).collect();
                crate::intlinalg::lattice_contains(sub, &v).expect("rank ok")
            })
        };
        if !contains(&q, &span) || !contains(&span, &q) {
            return Err(EmalgError::AlgebraInvalid(
                "odd part is not faithful: Span_Z wt(V(nu) ⊗ V(nu)*) differs from the root \
                 lattice"
                    .into(),
            ));
        }
    }
    Ok(())
}

/// Validate a representation against a configuration. Returns every violated
/// invariant (empty = ok), per the contract that validation is total.
pub fn validate(config: &AlgebraConfig, rep: &EvalRepSpec) -> Vec<EmalgError> {
    let mut errs = validate_config(config);
    for (point_id, label) in &rep.support {
        let Some(pt) = config.point(point_id) else {
            errs.push(EmalgError::UnknownPoint { rep: "rep".into(), point: point_id.clone() });
            continue;
        };
        let desc = g_fixed_at(config, pt);
        if label.hw.coords.len() != desc.rs.rank() {
            errs.push(EmalgError::LabelInvalid {
                rep: "rep".into(),
                point: point_id.clone(),
                msg: format!(
                    "weight has {} coordinates, g^x = {} has rank {}",
                    label.hw.coords.len(),
                    desc.rs,
                    desc.rs.rank()
                ),
            });
            continue;
        }
        if !label.hw.is_dominant() {
            errs.push(EmalgError::LabelInvalid {
                rep: "rep".into(),
                point: point_id.clone(),
                msg: format!("weight {} is not dominant", label.hw),
            });
        }
        if label.charges.len() != desc.ab_rank {
            errs.push(EmalgError::LabelInvalid {
                rep: "rep".into(),
                point: point_id.clone(),
                msg: format!(
                    "label has {} charges, g^x has abelian rank {}",
                    label.charges.len(),
                    desc.ab_rank
                ),
            });
        }
        if label.is_trivial() {
            errs.push(EmalgError::TrivialLabel { rep: "rep".into(), point: point_id.clone() });
        }
    }
    errs
}

/// Parse and fully validate a document; convenience entry point for the CLI.
pub fn load_config(text: &str) -> Result<ConfigDoc, Vec<EmalgError>> {
    let doc = parse_config(text).map_err(|e| vec![e])?;
    let mut errs = validate_config(&doc.algebra);
    for rep in doc.reps.values() {
        for (point_id, label) in &rep.support {
            // Point-level label checks reuse `validate`; config-level errors
            // are already collected once above.
            let Some(pt) = doc.algebra.point(point_id) else {
                errs.push(EmalgError::UnknownPoint {
                    rep: "rep".into(),
                    point: point_id.clone(),
                });
                continue;
            };
            let single = EvalRepSpec {
                support: BTreeMap::from([(point_id.clone(), label.clone())]),
                noneval_tag: String::new(),
            };
            let mut rep_errs = validate(&doc.algebra, &single);
            rep_errs.retain(|e| {
                matches!(
                    e,
                    EmalgError::LabelInvalid { .. }
                        | EmalgError::TrivialLabel { .. }
                        | EmalgError::UnknownPoint { .. }
                )
            });
            let _ = pt;
            errs.extend(rep_errs);
        }
    }
    if errs.is_empty() {
        Ok(doc)
    } else {
        Err(errs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    const BASIC: &str = r#"
        algebra { family = multiloop; g = "A2"; n = 2 }
        point "p1" { tangent_dim = 2 }
        rep "V" { at "p1" weight = [1,0] }
        rep "W" { at "p1" weight = [0,1]; noneval = "" }
    "#;

    #[test]
    fn parses_the_basic_document() {
        let doc = parse_config(BASIC).unwrap();
        assert_eq!(doc.algebra.family, Family::Multiloop { n: 2, orders: vec![] });
        assert_eq!(doc.algebra.g_spec.to_string(), "A2");
        assert_eq!(doc.algebra.points.len(), 1);
        assert_eq!(doc.algebra.points[0].tangent_dim, 2);
        let v = &doc.reps["V"];
        assert_eq!(v.support["p1"].hw, Weight::new(vec![1, 0]));
        assert!(v.noneval_tag.is_empty());
        assert!(validate(&doc.algebra, v).is_empty());
        assert!(validate(&doc.algebra, &doc.reps["W"]).is_empty());
    }

    #[test]
    fn tangent_dim_must_equal_n_for_multiloop() {
        let text = r#"
            algebra { family = multiloop; g = "A2"; n = 2 }
            point "p1" { tangent_dim = 3 }
        "#;
        let doc = parse_config(text).unwrap();
        let errs = validate_config(&doc.algebra);
        assert!(errs
            .iter()
            .any(|e| matches!(e, EmalgError::TangentMismatch { expected: 2, got: 3, .. })));
    }

    #[test]
    fn duplicate_support_point_is_rejected() {
        let text = r#"
            algebra { family = multiloop; g = "A1"; n = 1 }
            point "p1" { tangent_dim = 1 }
            rep "V" { at "p1" weight = [1]; at "p1" weight = [3] }
        "#;
        let err = parse_config(text).unwrap_err();
        assert!(matches!(err, EmalgError::DuplicateSupport { .. }));
    }

    #[test]
    fn unknown_keys_are_errors() {
        let text = r#"algebra { family = multiloop; g = "A1"; n = 1; frobnicate = 3 }"#;
        let err = parse_config(text).unwrap_err();
        assert!(matches!(err, EmalgError::UnknownKey { .. }), "{err:?}");
        let text = r#"
            algebra { family = untwisted; g = "A1" }
            point "p" { tangent_dim = 1; color = "red" }
        "#;
        assert!(matches!(parse_config(text).unwrap_err(), EmalgError::UnknownKey { .. }));
    }

    #[test]
    fn n_is_rejected_outside_multiloop() {
        let text = r#"algebra { family = untwisted; g = "A1"; n = 2 }"#;
        let err = parse_config(text).unwrap_err();
        assert!(matches!(err, EmalgError::KeyNotForFamily { .. }));
    }

    #[test]
    fn exchange_descriptors_double_at_free_points() {
        let text = r#"
            algebra { family = exchange; s = "A1" }
            point "free" { tangent_dim = 1 }
            point "fix" { tangent_dim = 1; fixed = true }
        "#;
        let doc = parse_config(text).unwrap();
        assert!(validate_config(&doc.algebra).is_empty());
        let free = doc.algebra.point("free").unwrap();
        let fix = doc.algebra.point("fix").unwrap();
        assert_eq!(g_fixed_at(&doc.algebra, free).rs.to_string(), "A1xA1");
        assert_eq!(g_fixed_at(&doc.algebra, fix).rs.to_string(), "A1");
        assert_eq!(fix.stabilizer, Stabilizer::Full);
    }

    #[test]
    fn onsager_builtin_defaults() {
        let text = r#"
            algebra { family = onsager; g = "A1" }
            point "one" { tangent_dim = 1; fixed = true }
            point "x" { tangent_dim = 1 }
            rep "K" { at "one"; charge = [5/2] }
            rep "V" { at "x" weight = [1] }
        "#;
        let doc = parse_config(text).unwrap();
        assert!(validate_config(&doc.algebra).is_empty());
        let pair = doc.algebra.onsager.as_ref().unwrap();
        assert_eq!(pair.g0_ab_dim, 1);
        assert_eq!(pair.g0_spec.rank(), 0);
        let fixed = doc.algebra.point("one").unwrap();
        let desc = g_fixed_at(&doc.algebra, fixed);
        assert_eq!(desc.rs.rank(), 0);
        assert_eq!(desc.ab_rank, 1);
        let k = &doc.reps["K"];
        assert_eq!(
            k.support["one"].charges,
            vec![BigRational::new(BigInt::from(5), BigInt::from(2))]
        );
        assert!(validate(&doc.algebra, k).is_empty());
        assert!(validate(&doc.algebra, &doc.reps["V"]).is_empty());
    }

    #[test]
    fn onsager_constraints() {
        // Wrong tangent dimension.
        let text = r#"
            algebra { family = onsager; g = "A1" }
            point "x" { tangent_dim = 2 }
        "#;
        let doc = parse_config(text).unwrap();
        assert!(validate_config(&doc.algebra)
            .iter()
            .any(|e| matches!(e, EmalgError::PointInvalid { .. })));
        // Three fixed points.
        let text = r#"
            algebra { family = onsager; g = "A1" }
            point "a" { tangent_dim = 1; fixed = true }
            point "b" { tangent_dim = 1; fixed = true }
            point "c" { tangent_dim = 1; fixed = true }
        "#;
        let doc = parse_config(text).unwrap();
        assert!(validate_config(&doc.algebra)
            .iter()
            .any(|e| matches!(e, EmalgError::AlgebraInvalid(_))));
        // g0_ab_dim = 0 requires a nontrivial odd part.
        let text = r#"
            algebra { family = onsager; g = "A2"; g0 = "A1"; g0_ab_dim = 0; nu = [0] }
        "#;
        let doc = parse_config(text).unwrap();
        assert!(!validate_config(&doc.algebra).is_empty());
    }

    #[test]
    fn onsager_faithfulness_is_a_lattice_check() {
        // Adjoint odd part: span of wt V(2) is Q ⊆ P for A1 — faithful.
        let ok = r#"algebra { family = onsager; g = "A2"; g0 = "A1"; g0_ab_dim = 0; nu = [2] }"#;
        assert!(validate_config(&parse_config(ok).unwrap().algebra).is_empty());
        // Charged case with trivial nu: span {ξ − ν} = 0 ≠ Q₀ — not faithful.
        let bad =
            r#"algebra { family = onsager; g = "A2"; g0 = "A1"; g0_ab_dim = 1; nu = [0] }"#;
        let errs = validate_config(&parse_config(bad).unwrap().algebra);
        assert!(errs.iter().any(|e| matches!(e, EmalgError::AlgebraInvalid(msg) if msg.contains("faithful"))));
    }

    #[test]
    fn trivial_labels_must_be_omitted() {
        let text = r#"
            algebra { family = multiloop; g = "A1"; n = 1 }
            point "p1" { tangent_dim = 1 }
            rep "V" { at "p1" weight = [0] }
        "#;
        let doc = parse_config(text).unwrap();
        let errs = validate(&doc.algebra, &doc.reps["V"]);
        assert!(errs.iter().any(|e| matches!(e, EmalgError::TrivialLabel { .. })));
    }

    #[test]
    fn charges_must_match_abelian_rank() {
        let text = r#"
            algebra { family = multiloop; g = "A1"; n = 1; g_ab_dim = 1 }
            point "p1" { tangent_dim = 1 }
            rep "V" { at "p1" weight = [1] }
            rep "W" { at "p1" weight = [1]; charge = [1/2] }
        "#;
        let doc = parse_config(text).unwrap();
        let errs = validate(&doc.algebra, &doc.reps["V"]);
        assert!(errs.iter().any(|e| matches!(e, EmalgError::LabelInvalid { .. })));
        assert!(validate(&doc.algebra, &doc.reps["W"]).is_empty());
    }

    #[test]
    fn negative_and_fractional_charges_parse() {
        let text = r#"
            algebra { family = onsager; g = "A1" }
            point "one" { tangent_dim = 1; fixed = true }
            rep "K" { at "one"; charge = [-1/2] }
        "#;
        let doc = parse_config(text).unwrap();
        let c = &doc.reps["K"].support["one"].charges[0];
        assert_eq!(*c, -BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(!c.is_zero());
        let _ = BigRational::one();
    }

    #[test]
    fn ext_result_invariant_helpers() {
        let mut r = ExtResult::finite(3, "test");
        assert!(r.consistent());
        r.push_summand(SymbolicSummand::DualOfMab { copies: 1 });
        r.push_summand(SymbolicSummand::DualOfMab { copies: 2 });
        assert_eq!(r.infinite_summands, vec![SymbolicSummand::DualOfMab { copies: 3 }]);
        assert_eq!(ExtResult::zero("why").finite_dim, 0);
    }

    #[test]
    fn load_config_collects_rep_errors() {
        let text = r#"
            algebra { family = multiloop; g = "A1"; n = 1 }
            point "p1" { tangent_dim = 1 }
            rep "V" { at "p1" weight = [1,0] }
        "#;
        let errs = load_config(text).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, EmalgError::LabelInvalid { .. })));
        assert!(load_config(BASIC).is_ok());
    }
}
