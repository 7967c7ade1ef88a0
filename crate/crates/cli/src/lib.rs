//! The `galois` command line: argument handling, dispatch into
//! `galois-core` and text or JSON rendering.
//!
//! Exit codes: 0 success, 2 bad input (usage, parse, invalid arguments),
//! 3 a resource cap was hit, 4 an internal invariant failed.

pub mod parse;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use galois_core::apps::{self, ConstructibilityVerdict, Evidence};
use galois_core::correspondence::{self, CorrespondenceReport};
use galois_core::factor::{self, CertificateReport, Verdict, Witness, WitnessValue};
use galois_core::field::{Field, PrimeField, Rationals, Ring};
use galois_core::finitefield;
use galois_core::galois::{self, GaloisReport};
use galois_core::numbers::{is_prime, Rational};
use galois_core::poly::{Poly, PolyRing};
use galois_core::splitting::{self, SplittingField, SplittingReport};
use galois_core::tower::Tower;
use galois_core::{Error, Limits};
use serde::Serialize;

pub use parse::{parse_poly, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    pub fn name(&self) -> String {
        match self {
            FieldSpec::Q => "Q".into(),
            FieldSpec::Fp(p) => format!("F{p}"),
        }
    }
}

fn parse_field_spec(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" {
        return Ok(FieldSpec::Q);
    }
    let digits = s
        .strip_prefix('F')
        .ok_or_else(|| format!("expected Q or F<p>, got {s:?}"))?;
    let p: u64 = digits
        .parse()
        .map_err(|_| format!("expected Q or F<p>, got {s:?}"))?;
    if !is_prime(p) || p >= 1 << 62 {
        return Err(format!("{p} is not a prime below 2^62"));
    }
    Ok(FieldSpec::Fp(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedOrder {
    Canonical,
}

#[derive(Debug, Parser)]
#[command(
    name = "galois",
    version,
    about = "Exact Galois theory over Q and finite prime fields"
)]
pub struct Cli {
    /// Coefficient field: Q or F<p> for a prime p.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field_spec)]
    pub field: FieldSpec,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Raise or lower the degree and group-order caps to N.
    #[arg(long, global = true, value_name = "N")]
    pub max_degree: Option<usize>,
    /// Order of primitive-element and generator searches.
    #[arg(long, global = true, value_enum, default_value = "canonical")]
    pub seed_order: SeedOrder,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor a polynomial into monic irreducibles.
    Factor {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Decide irreducibility, with a checkable witness.
    Irreducible {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Minimal polynomial of ELEMENT, a polynomial in a root t of MODULUS.
    Minpoly {
        #[arg(allow_hyphen_values = true)]
        modulus: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Build the splitting field as a tower of simple extensions.
    SplittingField {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Galois group of the splitting field, acting on the roots.
    Galois {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Subgroup lattice, fixed fields and the correspondence checks.
    Correspondence {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Solvability by radicals (over Q).
    Solvable {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Ruler-and-compass constructibility.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// The finite field with P^N elements.
    Gf {
        p: u64,
        n: usize,
        /// List the orders of all subfields.
        #[arg(long)]
        subfields: bool,
        /// Find a generator of the multiplicative group.
        #[arg(long)]
        generator: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Cube duplication, angle trisection, circle squaring.
    Classic,
    /// The regular N-gon.
    Ngon { n: u64 },
    /// A number of degree M over Q, or a root of the polynomial M.
    Degree {
        #[arg(allow_hyphen_values = true)]
        m: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Parse { arg: &'static str, err: ParseError },
    Input(String),
    Engine(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::Engine(e) if e.is_cap() => 3,
            CliError::Engine(Error::InternalInvariant(_)) => 4,
            CliError::Engine(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Input(_) => "input",
            CliError::Engine(e) if e.is_cap() => "cap",
            CliError::Engine(Error::InternalInvariant(_)) => "internal",
            CliError::Engine(_) => "input",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse { arg, err } => format!("cannot parse {arg} {err}"),
            CliError::Input(m) => m.clone(),
            CliError::Engine(e) => e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let stderr = if cli.json {
                let mut s = serde_json::to_string_pretty(&ErrorReport {
                    error: e.kind(),
                    message: e.message(),
                    exit_code: e.code(),
                })
                .unwrap();
                s.push('\n');
                s
            } else {
                format!("error: {}\n", e.message())
            };
            Outcome {
                code: e.code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

#[derive(Serialize)]
struct ErrorReport {
    error: &'static str,
    message: String,
    exit_code: i32,
}

/// Limits implied by `--max-degree`.
pub fn limits_for(max_degree: Option<usize>) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = max_degree {
        l.max_factor_degree = n;
        l.splitting_cap = n;
        l.max_group_order = n;
        l.max_norm_degree = n.saturating_mul(5);
    }
    l
}

/// Every JSON document: which command ran on what, and its result.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    field: String,
    input: Vec<String>,
    result: T,
}

struct Ctx<'a> {
    cli: &'a Cli,
    limits: Limits,
}

impl Ctx<'_> {
    fn emit<T: Serialize>(&self, command: &str, input: &[&str], result: T, text: String) -> String {
        self.emit_over(self.cli.field.name(), command, input, result, text)
    }

    fn emit_over<T: Serialize>(
        &self,
        field: String,
        command: &str,
        input: &[&str],
        result: T,
        text: String,
    ) -> String {
        if self.cli.json {
            let env = Envelope {
                command,
                field,
                input: input.iter().map(|s| s.to_string()).collect(),
                result,
            };
            let mut s = serde_json::to_string_pretty(&env).unwrap();
            s.push('\n');
            s
        } else {
            text
        }
    }

    fn require_q(&self, command: &str) -> CliResult<()> {
        match self.cli.field {
            FieldSpec::Q => Ok(()),
            FieldSpec::Fp(_) => Err(CliError::Input(format!(
                "{command} is only available over Q"
            ))),
        }
    }
}

fn parse_arg<F: parse::Scalar>(
    arg: &'static str,
    src: &str,
    field: &F,
) -> CliResult<Poly<F::Elem>> {
    parse_poly(src, field).map_err(|err| CliError::Parse { arg, err })
}

fn nonconstant<E: Clone + PartialEq>(f: &Poly<E>) -> CliResult<()> {
    match f.deg() {
        None => Err(Error::ZeroPolynomial.into()),
        Some(0) => Err(Error::ConstantPolynomial.into()),
        Some(_) => Ok(()),
    }
}

fn execute(cli: &Cli) -> CliResult<String> {
    let ctx = Ctx {
        cli,
        limits: limits_for(cli.max_degree),
    };
    match &cli.command {
        Command::Factor { poly } => match cli.field {
            FieldSpec::Q => {
                let f = parse_arg("polynomial", poly, &Rationals)?;
                let fac = factor::factor_q_with(&f, &ctx.limits)?;
                Ok(factor_output(
                    &ctx,
                    poly,
                    &Rationals,
                    &f,
                    &fac.unit,
                    &fac.factors,
                ))
            }
            FieldSpec::Fp(p) => {
                let k = PrimeField::new(p);
                let f = parse_arg("polynomial", poly, &k)?;
                let fac = factor::factor_fp(&k, &f)?;
                Ok(factor_output(&ctx, poly, &k, &f, &fac.unit, &fac.factors))
            }
        },
        Command::Irreducible { poly } => irreducible(&ctx, poly),
        Command::Minpoly { modulus, element } => match cli.field {
            FieldSpec::Q => minpoly(&ctx, &Rationals, modulus, element),
            FieldSpec::Fp(p) => minpoly(&ctx, &PrimeField::new(p), modulus, element),
        },
        Command::SplittingField { poly } => {
            let sf = build_splitting(&ctx, poly)?;
            Ok(match &sf {
                AnySplitting::Q(sf) => splitting_output(&ctx, poly, sf),
                AnySplitting::Fp(sf) => splitting_output(&ctx, poly, sf),
            })
        }
        Command::Galois { poly } => match build_splitting(&ctx, poly)? {
            AnySplitting::Q(sf) => galois_output(&ctx, poly, &sf),
            AnySplitting::Fp(sf) => galois_output(&ctx, poly, &sf),
        },
        Command::Correspondence { poly } => match build_splitting(&ctx, poly)? {
            AnySplitting::Q(sf) => correspondence_output(&ctx, poly, &sf),
            AnySplitting::Fp(sf) => correspondence_output(&ctx, poly, &sf),
        },
        Command::Solvable { poly } => {
            ctx.require_q("solvable")?;
            let f = parse_arg("polynomial", poly, &Rationals)?;
            nonconstant(&f)?;
            let v = apps::solvable_by_radicals_with(&f, &ctx.limits)?;
            let solvable = v.verdict == apps::Solvability::SolvableByRadicals;
            let group = match &v.evidence {
                Evidence::DegreeAtMostFour { degree } => {
                    format!("degree {degree}, Galois group a subgroup of S4")
                }
                _ => format!("Galois group {}", v.group_name()),
            };
            let text = if solvable {
                format!("solvable by radicals ({group})\n")
            } else {
                format!("NOT solvable by radicals ({group})\n")
            };
            Ok(ctx.emit("solvable", &[poly], v.report(), text))
        }
        Command::Construct { what } => {
            ctx.require_q("construct")?;
            construct(&ctx, what)
        }
        Command::Gf {
            p,
            n,
            subfields,
            generator,
        } => {
            if *n == 0 {
                return Err(CliError::Input(
                    "the extension degree must be positive".into(),
                ));
            }
            let g = finitefield::gf_with(*p, *n, &ctx.limits)?;
            let r = g.report(*subfields, *generator)?;
            let mut text = format!("GF({}^{}) = F{}[t]/({})\n", p, n, p, r.modulus);
            let _ = writeln!(text, "a = t mod ({})", r.modulus);
            let _ = writeln!(text, "Frobenius order: {}", r.frobenius_order);
            if let Some(orders) = &r.subfield_orders {
                let list: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
                let _ = writeln!(text, "subfield orders: {}", list.join(", "));
            }
            if let Some(g) = &r.generator {
                let _ = writeln!(text, "multiplicative generator: {g}");
            }
            let (ps, ns) = (p.to_string(), n.to_string());
            Ok(ctx.emit_over(format!("F{p}"), "gf", &[&ps, &ns], r, text))
        }
    }
}

#[derive(Serialize)]
struct FactorEntry {
    factor: String,
    degree: usize,
    multiplicity: usize,
}

#[derive(Serialize)]
struct FactorReport {
    unit: String,
    factors: Vec<FactorEntry>,
}

fn factor_output<F: Field>(
    ctx: &Ctx,
    src: &str,
    k: &F,
    f: &Poly<F::Elem>,
    unit: &F::Elem,
    factors: &[(Poly<F::Elem>, usize)],
) -> String {
    let ring = PolyRing::new(k.clone());
    let report = FactorReport {
        unit: k.render(unit),
        factors: factors
            .iter()
            .map(|(g, m)| FactorEntry {
                factor: ring.render(g, "t"),
                degree: g.deg().unwrap(),
                multiplicity: *m,
            })
            .collect(),
    };
    let mut parts = Vec::new();
    if !k.is_one(unit) || factors.is_empty() {
        parts.push(wrap_unit(&report.unit));
    }
    for e in &report.factors {
        let body = format!("({})", e.factor);
        parts.push(if e.multiplicity > 1 {
            format!("{body}^{}", e.multiplicity)
        } else {
            body
        });
    }
    let text = format!("{} = {}\n", ring.render(f, "t"), parts.join(" * "));
    ctx.emit("factor", &[src], report, text)
}

fn wrap_unit(s: &str) -> String {
    if s.contains('/') || s.starts_with('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn irreducible(ctx: &Ctx, src: &str) -> CliResult<String> {
    match ctx.cli.field {
        FieldSpec::Q => {
            let f = parse_arg("polynomial", src, &Rationals)?;
            let cert = factor::is_irreducible_q_with(&f, &ctx.limits)?;
            let verdict = match cert.verdict {
                Verdict::Irreducible => "irreducible",
                Verdict::Reducible => "reducible",
            };
            let why = match &cert.witness {
                Witness::LowDegreeRule { degree: 1 } => "degree 1".to_string(),
                Witness::LowDegreeRule { degree } => {
                    format!("degree {degree} with no rational root")
                }
                Witness::RationalRoot { root } => format!("rational root {root}"),
                Witness::Eisenstein { prime, shift: 0 } => {
                    format!("Eisenstein criterion at p = {prime}")
                }
                Witness::Eisenstein { prime, shift } => {
                    let sub = if *shift > 0 {
                        format!("t + {shift}")
                    } else {
                        format!("t - {}", -shift)
                    };
                    format!("Eisenstein criterion at p = {prime} after t -> {sub}")
                }
                Witness::ModP { prime } => {
                    format!("reduction mod {prime} is irreducible of the same degree")
                }
                Witness::FullFactorization { factors } => {
                    let r = galois_core::poly::q_ring();
                    let list: Vec<String> = factors
                        .iter()
                        .map(|(g, m)| {
                            if *m > 1 {
                                format!("({})^{m}", r.render(g, "t"))
                            } else {
                                format!("({})", r.render(g, "t"))
                            }
                        })
                        .collect();
                    format!("factorization {}", list.join(" * "))
                }
            };
            let text = format!("{verdict} over Q: {why}\n");
            Ok(ctx.emit("irreducible", &[src], cert.report(), text))
        }
        FieldSpec::Fp(p) => {
            let k = PrimeField::new(p);
            let f = parse_arg("polynomial", src, &k)?;
            nonconstant(&f)?;
            let fac = factor::factor_fp(&k, &f)?;
            let ring = PolyRing::new(k);
            let verdict = if fac.is_irreducible() {
                Verdict::Irreducible
            } else {
                Verdict::Reducible
            };
            let list: Vec<WitnessValue> = fac
                .factors
                .iter()
                .map(|(g, m)| {
                    WitnessValue::List(vec![
                        WitnessValue::Text(ring.render(g, "t")),
                        WitnessValue::Int(*m as i64),
                    ])
                })
                .collect();
            let mut data = std::collections::BTreeMap::new();
            data.insert("factors".to_string(), WitnessValue::List(list));
            let report = CertificateReport {
                verdict,
                witness_kind: "FullFactorization".into(),
                witness_data: data,
            };
            let degrees: Vec<String> = fac.degrees().iter().map(|d| d.to_string()).collect();
            let text = format!(
                "{} over F{p}: factor degrees {}\n",
                if fac.is_irreducible() {
                    "irreducible"
                } else {
                    "reducible"
                },
                degrees.join(", ")
            );
            Ok(ctx.emit("irreducible", &[src], report, text))
        }
    }
}

#[derive(Serialize)]
struct MinpolyReport {
    modulus: String,
    element: String,
    min_poly: String,
    degree: usize,
}

fn minpoly<F>(ctx: &Ctx, k: &F, modulus: &str, element: &str) -> CliResult<String>
where
    F: parse::Scalar + galois_core::factor::TowerBase,
{
    let m = parse_arg("modulus", modulus, k)?;
    nonconstant(&m)?;
    let e = parse_arg("element", element, k)?;
    let (tower, alpha) = Tower::new(k.clone()).adjoin_base_root(&m, "a")?;
    let mut x = tower.zero();
    for c in e.coeffs().iter().rev() {
        x = tower.add(&tower.mul(&x, &alpha), &tower.from_base(c.clone()));
    }
    let mp = tower.min_poly(&x);
    let ring = PolyRing::new(k.clone());
    let report = MinpolyReport {
        modulus: ring.render(&m, "t"),
        element: tower.render(&x),
        min_poly: ring.render(&mp, "t"),
        degree: mp.deg().unwrap(),
    };
    let text = format!(
        "minimal polynomial of {} over {}, where a is a root of {}:\n{}\n",
        report.element,
        ctx.cli.field.name(),
        report.modulus,
        report.min_poly
    );
    Ok(ctx.emit("minpoly", &[modulus, element], report, text))
}

enum AnySplitting {
    Q(SplittingField<Rationals>),
    Fp(SplittingField<PrimeField>),
}

fn build_splitting(ctx: &Ctx, src: &str) -> CliResult<AnySplitting> {
    Ok(match ctx.cli.field {
        FieldSpec::Q => {
            let f = parse_arg("polynomial", src, &Rationals)?;
            nonconstant(&f)?;
            AnySplitting::Q(splitting::splitting_field_q_with(&f, &ctx.limits)?)
        }
        FieldSpec::Fp(p) => {
            let k = PrimeField::new(p);
            let f = parse_arg("polynomial", src, &k)?;
            nonconstant(&f)?;
            AnySplitting::Fp(splitting::splitting_field_fp_with(&k, &f, &ctx.limits)?)
        }
    })
}

fn splitting_text(field: &str, r: &SplittingReport) -> String {
    let mut s = format!("splitting field of degree {} over {field}\n", r.degree);
    for lv in &r.tower {
        let _ = writeln!(s, "  {}: root of {}", lv.label, lv.min_poly);
    }
    let _ = writeln!(s, "roots:");
    for (root, m) in r.roots.iter().zip(&r.multiplicities) {
        if *m > 1 {
            let _ = writeln!(s, "  {root}  (multiplicity {m})");
        } else {
            let _ = writeln!(s, "  {root}");
        }
    }
    s
}

fn splitting_output<F: Field>(ctx: &Ctx, src: &str, sf: &SplittingField<F>) -> String {
    let r = sf.report();
    let text = splitting_text(&ctx.cli.field.name(), &r);
    ctx.emit("splitting-field", &[src], r, text)
}

fn galois_text(r: &GaloisReport) -> String {
    let mut s = format!("order {}, type {}\n", r.order, r.type_name);
    let _ = writeln!(s, "generators: {}", r.generators.join(", "));
    let _ = writeln!(s, "acting on the roots:");
    for (i, root) in r.action.iter().enumerate() {
        let _ = writeln!(s, "  {}: {root}", i + 1);
    }
    s
}

fn galois_output<F: Field>(ctx: &Ctx, src: &str, sf: &SplittingField<F>) -> CliResult<String> {
    let g = galois::automorphisms(sf)?;
    let r = g.report()?;
    let text = galois_text(&r);
    Ok(ctx.emit("galois", &[src], r, text))
}

/// Number of prime factors of `n`, with multiplicity.
fn big_omega(mut n: usize) -> usize {
    let mut count = 0;
    let mut q = 2;
    while q * q <= n {
        while n.is_multiple_of(q) {
            n /= q;
            count += 1;
        }
        q += 1;
    }
    count + usize::from(n > 1)
}

fn correspondence_text(field: &str, r: &CorrespondenceReport) -> String {
    let mut s = format!(
        "Galois correspondence: {} subgroups of a group of order {}\n",
        r.lattice.len(),
        r.degree
    );
    let mut entries: Vec<_> = r.lattice.iter().collect();
    entries.sort_by(|a, b| b.order.cmp(&a.order));
    for e in entries {
        let indent = "  ".repeat(big_omega(r.degree / e.order.max(1)) + 1);
        let members = if e.order <= 12 {
            format!(" {{{}}}", e.subgroup.join(", "))
        } else {
            String::new()
        };
        let _ = writeln!(
            s,
            "{indent}order {}{}{members}",
            e.order,
            if e.normal { " [normal]" } else { "" }
        );
        let _ = writeln!(
            s,
            "{indent}  Fix: degree {} over {field}, generated by {} with minimal polynomial {}",
            e.fixed_field.dim, e.fixed_field.primitive, e.fixed_field.primitive_min_poly
        );
    }
    let flag = |b: bool| if b { "ok" } else { "FAILED" };
    let _ = writeln!(s, "checks:");
    let _ = writeln!(
        s,
        "  Fix and Gal mutually inverse: {}",
        flag(r.mutual_inverse)
    );
    let _ = writeln!(s, "  [M:Fix(H)] = |H|: {}", flag(r.degree_order_duality));
    let _ = writeln!(s, "  inclusion reversing: {}", flag(r.order_reversing));
    let _ = writeln!(s, "  unit laws: {}", flag(r.unit_laws));
    let _ = writeln!(
        s,
        "  conjugation covariance: {}",
        flag(r.conjugation_covariant)
    );
    s
}

fn correspondence_output<F: Field>(
    ctx: &Ctx,
    src: &str,
    sf: &SplittingField<F>,
) -> CliResult<String> {
    let g = galois::automorphisms(sf)?;
    let r = correspondence::verify_correspondence_with(&g, &ctx.limits)?;
    let text = correspondence_text(&ctx.cli.field.name(), &r);
    Ok(ctx.emit("correspondence", &[src], r, text))
}

#[derive(Serialize)]
struct NgonReport {
    n: u64,
    constructible: bool,
}

fn construct(ctx: &Ctx, what: &Construct) -> CliResult<String> {
    match what {
        Construct::Classic => {
            let probs = apps::classic_problems()?;
            let mut text = String::new();
            for p in &probs {
                let _ = writeln!(
                    text,
                    "{}: {} ({})",
                    p.problem,
                    if p.possible { "possible" } else { "impossible" },
                    p.reason
                );
            }
            Ok(ctx.emit("construct classic", &[], probs, text))
        }
        Construct::Ngon { n } => {
            if *n < 3 {
                return Err(CliError::Input("a polygon needs at least 3 sides".into()));
            }
            let ok = apps::ngon_constructible(*n);
            let text = format!(
                "regular {n}-gon: {}\n",
                if ok {
                    "constructible"
                } else {
                    "not constructible"
                }
            );
            let ns = n.to_string();
            Ok(ctx.emit(
                "construct ngon",
                &[&ns],
                NgonReport {
                    n: *n,
                    constructible: ok,
                },
                text,
            ))
        }
        Construct::Degree { m } => {
            let v = match m.trim().parse::<usize>() {
                Ok(0) => {
                    return Err(CliError::Input("a degree must be positive".into()));
                }
                Ok(d) => ConstructibilityVerdict {
                    target: format!("a number of degree {d}"),
                    degree: d,
                    verdict: if d.is_power_of_two() {
                        apps::Constructibility::NecessaryConditionHolds
                    } else {
                        apps::Constructibility::NotConstructible
                    },
                },
                Err(_) => {
                    let f: Poly<Rational> = parse_arg("polynomial", m, &Rationals)?;
                    nonconstant(&f)?;
                    apps::constructible_degree_check(&f)?
                }
            };
            let text = match v.verdict {
                apps::Constructibility::NotConstructible => format!(
                    "{}: not constructible (degree {} is not a power of 2)\n",
                    v.target, v.degree
                ),
                apps::Constructibility::NecessaryConditionHolds => format!(
                    "{}: degree {} is a power of 2; the necessary condition holds\n",
                    v.target, v.degree
                ),
            };
            Ok(ctx.emit("construct degree", &[m], v.report(), text))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("Q"), Ok(FieldSpec::Q));
        assert_eq!(parse_field_spec("F7"), Ok(FieldSpec::Fp(7)));
        assert!(parse_field_spec("F8").is_err());
        assert!(parse_field_spec("F").is_err());
        assert!(parse_field_spec("R").is_err());
    }

    #[test]
    fn max_degree_sets_all_caps() {
        let l = limits_for(Some(30));
        assert_eq!(
            (
                l.max_factor_degree,
                l.splitting_cap,
                l.max_group_order,
                l.max_norm_degree
            ),
            (30, 30, 30, 150)
        );
        assert_eq!(limits_for(None), Limits::default());
    }

    #[test]
    fn every_error_has_one_exit_code() {
        let cases = [
            (CliError::Input("x".into()), 2),
            (CliError::Engine(Error::NotIrreducible), 2),
            (
                CliError::Engine(Error::OrderCap {
                    order: 120,
                    cap: 60,
                }),
                3,
            ),
            (CliError::Engine(Error::SearchExhausted), 3),
            (
                CliError::Engine(Error::Budget {
                    what: "x".into(),
                    needed: 2,
                    budget: 1,
                }),
                3,
            ),
            (CliError::Engine(Error::InternalInvariant("x".into())), 4),
        ];
        for (e, code) in cases {
            assert_eq!(e.code(), code, "{e:?}");
        }
    }

    #[test]
    fn omega() {
        assert_eq!([1, 2, 4, 6, 8, 60].map(big_omega), [0, 1, 2, 2, 3, 4]);
    }
}
