//! The `weitz` command line.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::context::{roman_ordinal_of, Letter, LetterContext};
use crate::error::{Error, Result};
use crate::gordan::{self, SearchBounds};
use crate::poly::{integer, Monomial, Polynomial};
use crate::sl2;
use crate::symbolic::BracketExpr;
use crate::transfer::{self, LetterAssignment};
use crate::transvect;

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser, Debug)]
#[command(name = "weitz", version, about = "Kernels of Weitzenböck derivations by the symbolic method")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search generators of the kernel of D_d.
    Kernel {
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Largest transvection index tried.
        #[arg(long)]
        max_index: Option<u32>,
        /// Worker threads for the candidate sweep.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Apply Lambda to a bracket expression.
    Lambda {
        #[arg(long)]
        d: String,
        #[command(flatten)]
        expr: ExprInput,
        /// e.g. `a:x,b:y,c:y`
        #[arg(long)]
        assign: String,
    },
    /// Apply Lambda~ to a multilinear polynomial.
    LambdaTilde {
        #[arg(long)]
        d: String,
        #[command(flatten)]
        poly: PolyInput,
    },
    /// Semi-invariance and order of a polynomial, or with `--seed` a random
    /// spot check of the sl2 relations.
    Check {
        #[arg(long)]
        d: String,
        #[command(flatten)]
        poly: OptionalPolyInput,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 50)]
        cases: u32,
    },
    /// Order of a polynomial.
    Order {
        #[arg(long)]
        d: String,
        #[command(flatten)]
        poly: PolyInput,
    },
    /// The semi-transvectant [f,g]^r. Without `--d`, f and g are bracket expressions.
    Transvect {
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        r: u32,
    },
    /// The semi-Hessian [f,f]^2.
    Hessian {
        #[arg(long)]
        d: Option<String>,
        #[command(flatten)]
        poly: PolyInput,
    },
    /// Convolution of a bracket expression, or all convolutions of a monomial.
    Convolve {
        #[command(flatten)]
        expr: ExprInput,
        /// e.g. `a,b`
        #[arg(long, required_unless_present = "all")]
        pair: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Polarize in a roman letter, introducing a new letter of the same size.
    Polarize {
        #[arg(long)]
        d: String,
        #[command(flatten)]
        poly: PolyInput,
        #[arg(long, default_value = "x")]
        letter: String,
        /// Name of the new letter (default: the next free roman letter).
        #[arg(long)]
        into: Option<String>,
    },
    /// Substitute y_i := x_i.
    Restitute {
        #[arg(long)]
        d: String,
        #[command(flatten)]
        poly: PolyInput,
        #[arg(long)]
        letter: String,
        #[arg(long)]
        into: String,
    },
    /// A bracket expression whose Lambda image is the given semi-invariant.
    Symbolize {
        #[arg(long)]
        d: String,
        #[command(flatten)]
        poly: PolyInput,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct PolyInput {
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    file: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
pub struct OptionalPolyInput {
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    file: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ExprInput {
    #[arg(long)]
    expr: Option<String>,
    #[arg(long)]
    file: Option<String>,
}

fn read_input(inline: &Option<String>, file: &Option<String>) -> Result<Option<String>> {
    match (inline, file) {
        (Some(t), _) => Ok(Some(t.clone())),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map(|s| Some(s.trim().to_string()))
            .map_err(|e| Error::InvalidContext(format!("cannot read `{path}`: {e}"))),
        (None, None) => Ok(None),
    }
}

impl PolyInput {
    fn text(&self) -> Result<String> {
        Ok(read_input(&self.poly, &self.file)?.expect("clap enforces one input"))
    }
}

impl ExprInput {
    fn text(&self) -> Result<String> {
        Ok(read_input(&self.expr, &self.file)?.expect("clap enforces one input"))
    }
}

/// Parses argv (program name first) and runs; returns the exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    run_with(&argv, &mut std::io::stdout(), &mut std::io::stderr())
}

fn poly_output(p: &Polynomial, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Json => json!({"poly": p.to_string(), "terms": p.to_json().terms}).to_string(),
    }
}

fn roman_letter(ctx: &LetterContext, name: &str) -> Result<Letter> {
    ctx.romans().iter().copied().find(|l| l.name() == name).ok_or_else(|| Error::UnknownLetter(name.into()))
}

fn execute(cli: &Cli) -> Result<String> {
    let format = cli.format;
    match &cli.command {
        Command::Kernel { d, max_degree, max_index, jobs } => {
            let ctx = LetterContext::parse_signature(d)?;
            let bounds = SearchBounds { max_total_degree: (*max_degree).max(1), max_transvection_order: *max_index };
            let search = || gordan::kernel_generators(&ctx, &bounds);
            let set = match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(*n)
                    .build()
                    .map_err(|e| Error::InvalidContext(e.to_string()))?
                    .install(search)?,
                None => search()?,
            };
            Ok(match format {
                Format::Text => set.to_string(),
                Format::Json => set.to_json_string(),
            })
        }
        Command::Lambda { d, expr, assign } => {
            let ctx = LetterContext::parse_signature(d)?;
            let e = BracketExpr::parse(&expr.text()?)?;
            let a = LetterAssignment::parse(assign, &ctx)?;
            Ok(poly_output(&transfer::lambda_map(&e.expand(), &a)?, format))
        }
        Command::LambdaTilde { d, poly } => {
            let ctx = LetterContext::parse_signature(d)?;
            let f = Polynomial::parse(&poly.text()?, &ctx)?;
            let (img, a) = transfer::lambda_tilde(&f)?;
            Ok(match format {
                Format::Text => format!("{img}\nassignment: {a}"),
                Format::Json => json!({"poly": img.to_string(), "terms": img.to_json().terms, "assignment": a.to_string()})
                    .to_string(),
            })
        }
        Command::Check { d, poly, seed, cases } => {
            let ctx = LetterContext::parse_signature(d)?;
            match read_input(&poly.poly, &poly.file)? {
                Some(text) => {
                    let f = Polynomial::parse(&text, &ctx)?;
                    let semi = sl2::is_semi_invariant(&f);
                    let order = if f.is_zero() { None } else { Some(sl2::order_of(&f)?) };
                    Ok(match format {
                        Format::Text => format!(
                            "semi-invariant: {}; order: {}",
                            if semi { "yes" } else { "no" },
                            order.map_or("undefined".into(), |o| o.to_string())
                        ),
                        Format::Json => json!({"semi_invariant": semi, "order": order}).to_string(),
                    })
                }
                None => {
                    let seed = seed.unwrap_or(DEFAULT_SEED);
                    let failures = spot_check(&ctx, seed, *cases);
                    if failures > 0 {
                        return Err(Error::NoSolution(format!("{failures} of {cases} random cases violate the sl2 relations")));
                    }
                    Ok(match format {
                        Format::Text => format!("sl2 relations hold on {cases} random polynomials (seed {seed})"),
                        Format::Json => json!({"cases": cases, "seed": seed, "failures": 0}).to_string(),
                    })
                }
            }
        }
        Command::Order { d, poly } => {
            let ctx = LetterContext::parse_signature(d)?;
            let f = Polynomial::parse(&poly.text()?, &ctx)?;
            let o = sl2::order_of(&f)?;
            Ok(match format {
                Format::Text => o.to_string(),
                Format::Json => json!({"order": o}).to_string(),
            })
        }
        Command::Transvect { d, f, g, r } => {
            let (f, g) = match d {
                Some(d) => {
                    let ctx = LetterContext::parse_signature(d)?;
                    (Polynomial::parse(f, &ctx)?, Polynomial::parse(g, &ctx)?)
                }
                None => (BracketExpr::parse(f)?.expand(), BracketExpr::parse(g)?.expand()),
            };
            Ok(poly_output(&transvect::semi_transvectant(&f, &g, *r)?, format))
        }
        Command::Hessian { d, poly } => {
            let text = poly.text()?;
            let f = match d {
                Some(d) => Polynomial::parse(&text, &LetterContext::parse_signature(d)?)?,
                None => BracketExpr::parse(&text)?.expand(),
            };
            Ok(poly_output(&transvect::semi_hessian(&f)?, format))
        }
        Command::Convolve { expr, pair, all } => {
            let e = BracketExpr::parse(&expr.text()?)?;
            if *all {
                if e.len() != 1 {
                    return Err(Error::InvalidContext("--all needs a single bracket monomial".into()));
                }
                let (m, _) = e.terms().next().unwrap();
                let found = transvect::all_convolutions(m, m.order() as usize);
                let texts: Vec<String> = found.iter().map(ToString::to_string).collect();
                return Ok(match format {
                    Format::Text => texts.join("\n"),
                    Format::Json => json!({"convolutions": texts}).to_string(),
                });
            }
            let pair = pair.as_deref().unwrap_or_default();
            let names: Vec<&str> = pair.split(',').map(str::trim).collect();
            let [a, b] = names[..] else {
                return Err(Error::InvalidContext(format!("--pair expects two letters, got `{pair}`")));
            };
            let letter = |name: &str| {
                BracketExpr::parse(&format!("{name}0"))
                    .map(|x| x.support().into_iter().next().unwrap())
                    .map_err(|_| Error::UnknownLetter(name.into()))
            };
            let c = transvect::convolve(&e, letter(a)?, letter(b)?)?;
            Ok(match format {
                Format::Text => c.to_string(),
                Format::Json => json!({"expr": c.to_string()}).to_string(),
            })
        }
        Command::Polarize { d, poly, letter, into } => {
            let ctx = LetterContext::parse_signature(d)?;
            let f = Polynomial::parse(&poly.text()?, &ctx)?;
            let x = roman_letter(&ctx, letter)?;
            let y = match into {
                None => ctx.with_fresh_roman(x.size()).1,
                Some(name) => match roman_letter(&ctx, name) {
                    Ok(l) => l,
                    Err(_) => {
                        let mut chars = name.chars();
                        let ord = match (chars.next(), chars.next()) {
                            (Some(c), None) => roman_ordinal_of(c),
                            _ => None,
                        }
                        .ok_or_else(|| Error::UnknownLetter(name.clone()))?;
                        Letter::roman(ord, x.size())
                    }
                },
            };
            Ok(poly_output(&transfer::polarize(&f, x, y)?, format))
        }
        Command::Restitute { d, poly, letter, into } => {
            let ctx = LetterContext::parse_signature(d)?;
            let f = Polynomial::parse(&poly.text()?, &ctx)?;
            let y = roman_letter(&ctx, letter)?;
            let x = roman_letter(&ctx, into)?;
            Ok(poly_output(&transfer::restitute(&f, y, x)?, format))
        }
        Command::Symbolize { d, poly } => {
            let ctx = LetterContext::parse_signature(d)?;
            let f = Polynomial::parse(&poly.text()?, &ctx)?;
            let s = transfer::symbolize(&f, &ctx)?;
            Ok(match format {
                Format::Text => format!("{}\nassignment: {}", s.expr, s.assignment),
                Format::Json => json!({"expr": s.expr.to_string(), "assignment": s.assignment.to_string()}).to_string(),
            })
        }
    }
}

/// A random polynomial in the letters of `ctx` with small integer coefficients.
pub fn random_polynomial(ctx: &LetterContext, rng: &mut impl Rng, terms: usize, max_degree: u32) -> Polynomial {
    let vars: Vec<_> = ctx.letters().flat_map(|l| l.vars()).collect();
    Polynomial::from_terms((0..terms).map(|_| {
        let deg = rng.gen_range(0..=max_degree);
        let m = Monomial::from_pairs((0..deg).map(|_| (vars[rng.gen_range(0..vars.len())], 1)));
        (m, integer(rng.gen_range(-5..=5)))
    }))
}

/// Number of random polynomials violating a commutator or Leibniz identity.
pub fn spot_check(ctx: &LetterContext, seed: u64, cases: u32) -> u32 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..cases {
        let p = random_polynomial(ctx, &mut rng, 4, 3);
        let q = random_polynomial(ctx, &mut rng, 4, 3);
        let (d, ds, e) = (sl2::lower, sl2::raise, sl2::weight_op);
        let ok = e(&d(&p)) - d(&e(&p)) == d(&p).scale(&integer(2))
            && e(&ds(&p)) - ds(&e(&p)) == ds(&p).scale(&integer(-2))
            && d(&ds(&p)) - ds(&d(&p)) == e(&p)
            && d(&(&p * &q)) == &d(&p) * &q + &p * &d(&q);
        if !ok {
            failures += 1;
        }
    }
    failures
}
