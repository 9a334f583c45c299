//! Command-line front end. `run` parses arguments, reads input documents
//! and returns the exit code with the JSON document to print, so the binary
//! and the tests share one code path.

use std::io::Read;

use abelpoly::difference::{degree_witness, verify_binomial_identities, DifferenceWitness, ProbeRegion};
use abelpoly::extension::{extend_eval, Decomposition};
use abelpoly::group::{orthant_decompose, GroupDescriptor, SemigroupDescriptor};
use abelpoly::io::{
    matrix_from_doc, matrix_to_doc, ElementDoc, MatrixDoc, PolyInput, PolynomialDoc, SemigroupDoc,
};
use abelpoly::polynomial::{homogeneous_parts, leading_coefficient, MultiIndex};
use abelpoly::riss::{riss_form_of, squares_decomposition, sylvester_diagonalize, SymmetricForm};
use abelpoly::spaces::{dim_pn, infinite_dim_certificate, monomial_basis, tensor_split, torsion_constancy_check};
use abelpoly::{Error, GroupElement};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "abelpoly", version, about = "Exact polynomial calculus on finitely generated abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArg {
    /// Input document path; "-" or omitted reads standard input.
    #[arg(long, short)]
    input: Option<String>,
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Rank k of the free part Z^k.
    #[arg(long, default_value_t = 0)]
    free_rank: usize,
    /// Orders of the cyclic torsion factors, comma separated.
    #[arg(long, value_delimiter = ',')]
    torsion: Vec<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a polynomial (coefficients, or a table interpolated at --degree) at a point.
    Eval {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        degree: Option<usize>,
        /// Element as a JSON array or {"free": [...], "torsion": [...]}.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Evaluate at a point of G the extension of a polynomial known on a semigroup J.
    Extend {
        #[command(flatten)]
        input: InputArg,
        /// "orthant", "full", or a semigroup document {"kind": ..., "generators": [...]}.
        #[arg(long)]
        semigroup: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Optional pair [u, v] of elements of J with point = u - v.
        #[arg(long, allow_hyphen_values = true)]
        decomposition: Option<String>,
    },
    /// Split a point as u - v with u, v in the standard orthant.
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Homogeneous components of a polynomial, optionally with its leading coefficient along a direction.
    Homog {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
    },
    /// Congruence diagonalization and signature of a symmetric rational matrix.
    Inertia {
        #[command(flatten)]
        input: InputArg,
    },
    /// Write a symmetric matrix or a quadratic form as a combination of squares of linear forms.
    Squares {
        #[command(flatten)]
        input: InputArg,
    },
    /// Dimension of the space of polynomials of degree at most n on R^m x Z^k x F.
    Dim {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 0)]
        real_rank: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Monomial basis of the degree-n polynomials on Z^k.
    Basis {
        #[arg(long)]
        free_rank: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Write p(s, t) on Z^k1 x Z^k2 as a sum of products q(s) r(t).
    Split {
        #[command(flatten)]
        input: InputArg,
        /// Number k1 of leading coordinates forming the left factor.
        #[arg(long)]
        left_rank: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Certificate that degree-1 polynomials on finitely supported sequences span at least N dimensions.
    CertifyInfdim {
        #[arg(long)]
        size: usize,
    },
    /// Check the binomial identities underlying the difference calculus up to --max-m.
    VerifyIdentities {
        #[arg(long)]
        max_m: usize,
    },
    /// Search for a nonzero order-(n+1) difference of a polynomial or table.
    DegreeTest {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        degree: usize,
        /// Probe radius for coefficient documents (default n + 2).
        #[arg(long)]
        radius: Option<i64>,
    },
}

/// Failure of a command, already classified for the exit code.
enum Failure {
    Domain(Error),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Malformed(m),
            e => Failure::Domain(e),
        }
    }
}

type CmdResult = std::result::Result<Value, Failure>;

fn error_doc(code: &str, message: &str) -> Value {
    json!({"error": {"code": code, "message": message}})
}

fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json values serialize");
    s.push('\n');
    s
}

/// Runs one command line; returns the exit code and the text for stdout.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, render(&error_doc("usage", e.to_string().trim_end()))),
            };
        }
    };
    match execute(cli.command, stdin) {
        Ok(doc) => (0, render(&doc)),
        Err(Failure::Domain(e)) => (1, render(&error_doc(e.code(), &e.to_string()))),
        Err(Failure::Malformed(m)) => (2, render(&error_doc("malformed_input", &m))),
    }
}

fn read_input(arg: &InputArg, stdin: &mut dyn Read) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    match arg.input.as_deref() {
        None | Some("-") => stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::Malformed(format!("reading standard input: {e}")))?,
        Some(path) => {
            text = std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("reading {path}: {e}")))?;
            0
        }
    };
    Ok(text)
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> std::result::Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Malformed(format!("{what}: {e}")))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn element(text: &str, g: &GroupDescriptor) -> std::result::Result<GroupElement, Failure> {
    Ok(parse::<ElementDoc>(text, "point")?.resolve(g)?)
}

fn element_value(t: &GroupElement) -> Value {
    to_value(&ElementDoc::from(t))
}

fn witness_value(w: &Option<DifferenceWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "point": element_value(&w.point),
            "steps": w.steps.iter().map(|(h, m)| json!({"step": element_value(h), "order": m})).collect::<Vec<_>>(),
            "value": w.value.to_string(),
        }),
    }
}

fn group_of(args: &GroupArgs, real_rank: usize) -> std::result::Result<GroupDescriptor, Failure> {
    Ok(GroupDescriptor::with_real_rank(args.free_rank, args.torsion.clone(), real_rank)?)
}

fn semigroup(text: &str, g: &GroupDescriptor) -> std::result::Result<SemigroupDescriptor, Failure> {
    Ok(match text {
        "orthant" | "standard_orthant" => SemigroupDescriptor::standard_orthant(g.clone())?,
        "full" | "full_group" => SemigroupDescriptor::full_group(g.clone())?,
        doc => parse::<SemigroupDoc>(doc, "semigroup")?.to_descriptor(g)?,
    })
}

fn execute(command: Command, stdin: &mut dyn Read) -> CmdResult {
    match command {
        Command::Eval { input, degree, point } => {
            let poly: PolyInput = parse(&read_input(&input, stdin)?, "polynomial")?;
            let p = poly.to_newton(degree)?;
            let t = element(&point, p.group())?;
            Ok(json!({"value": p.eval(&t)?.to_string()}))
        }
        Command::Extend { input, semigroup: sg, degree, point, decomposition } => {
            let poly: PolyInput = parse(&read_input(&input, stdin)?, "polynomial")?;
            let g = poly.group()?;
            let j = semigroup(&sg, &g)?;
            let q = match &poly {
                PolyInput::Table(table) => {
                    if table.degree_witness(degree)?.is_some() {
                        return Err(Error::NotAPolynomial(degree).into());
                    }
                    table.to_function()?
                }
                PolyInput::Coefficients(doc) => doc.to_newton()?.with_degree_bound(degree)?.to_function(),
            };
            let q = q.restricted_to(&j)?;
            let t = element(&point, &g)?;
            let d: Option<Decomposition> = match decomposition {
                None => None,
                Some(text) => {
                    let [u, v]: [ElementDoc; 2] = parse(&text, "decomposition")?;
                    Some((u.resolve(&g)?, v.resolve(&g)?))
                }
            };
            Ok(json!({"value": extend_eval(&q, &j, degree, &t, d)?.to_string()}))
        }
        Command::Decompose { group, point } => {
            let g = group_of(&group, 0)?;
            let t = element(&point, &g)?;
            let (u, v) = orthant_decompose(&g, &t)?;
            Ok(json!({"u": element_value(&u), "v": element_value(&v)}))
        }
        Command::Homog { input, degree, direction } => {
            let poly: PolyInput = parse(&read_input(&input, stdin)?, "polynomial")?;
            let p = poly.to_newton(degree)?;
            let parts: Vec<Value> = homogeneous_parts(&p)
                .iter()
                .map(|a| to_value(&PolynomialDoc::from_monomial(a)))
                .collect();
            let mut doc = json!({"degree": p.degree(), "parts": parts});
            if let Some(s) = direction {
                let s = element(&s, p.group())?;
                doc["leading_coefficient"] = Value::String(leading_coefficient(&p, &s)?.to_string());
            }
            Ok(doc)
        }
        Command::Inertia { input } => {
            let m: MatrixDoc = parse(&read_input(&input, stdin)?, "matrix")?;
            let form = SymmetricForm::new(matrix_from_doc(&m)?)?;
            let d = sylvester_diagonalize(&form);
            Ok(json!({
                "signature": to_value(&d.signature),
                "diagonal": d.diagonal.iter().map(|x| abelpoly::Scalar::from(x.clone()).to_string()).collect::<Vec<_>>(),
                "transform": to_value(&matrix_to_doc(&d.transform)),
            }))
        }
        Command::Squares { input } => {
            let text = read_input(&input, stdin)?;
            let form = match parse::<MatrixDoc>(&text, "matrix") {
                Ok(m) => SymmetricForm::new(matrix_from_doc(&m)?)?,
                Err(_) => riss_form_of(&parse::<PolynomialDoc>(&text, "matrix or quadratic polynomial")?.to_monomial()?)?,
            };
            let terms = squares_decomposition(&form)?;
            let signature = sylvester_diagonalize(&form).signature;
            Ok(json!({
                "signature": to_value(&signature),
                "terms": terms.iter().map(|t| json!({
                    "coefficient": abelpoly::Scalar::from(t.coefficient.clone()).to_string(),
                    "functional": t.functional.iter().map(|x| abelpoly::Scalar::from(x.clone()).to_string()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }))
        }
        Command::Dim { group, real_rank, degree } => {
            let g = group_of(&group, real_rank)?;
            Ok(json!({"dim": dim_pn(&g, degree)?}))
        }
        Command::Basis { free_rank, degree } => {
            let b = monomial_basis(free_rank, degree)?;
            let monomials: Vec<Value> = MultiIndex::up_to(free_rank, degree).iter().map(to_value).collect();
            Ok(json!({
                "dim": b.forms.len(),
                "evaluation_rank": b.evaluation_rank,
                "monomials": monomials,
            }))
        }
        Command::Split { input, left_rank, degree } => {
            let poly: PolyInput = parse(&read_input(&input, stdin)?, "polynomial")?;
            let p = poly.to_newton(Some(degree))?;
            let terms = tensor_split(&p, left_rank, degree)?;
            Ok(json!({"terms": terms.iter().map(|t| json!({
                "order": t.order,
                "left": to_value(&PolynomialDoc::from_monomial(&t.left.to_monomial())),
                "right": to_value(&PolynomialDoc::from_monomial(&t.right.to_monomial())),
            })).collect::<Vec<_>>()}))
        }
        Command::CertifyInfdim { size } => {
            let c = infinite_dim_certificate(size)?;
            Ok(json!({
                "size": c.size,
                "rank": c.rank,
                "matrix": to_value(&matrix_to_doc(&c.matrix)),
                "witness_points": c.witness_points.iter().map(element_value).collect::<Vec<_>>(),
                "degree_one": c.degree_one,
                "additive": c.additive,
                "holds": c.holds(),
            }))
        }
        Command::VerifyIdentities { max_m } => {
            let report = verify_binomial_identities(max_m)?;
            let status = if report.ok() { "ok" } else { "failed" };
            let mut doc = json!({"status": status, "checked": report.checked});
            if let Some(f) = &report.failure {
                doc["failure"] = to_value(f);
            }
            Ok(doc)
        }
        Command::DegreeTest { input, degree, radius } => {
            let poly: PolyInput = parse(&read_input(&input, stdin)?, "polynomial")?;
            let (g, witness) = match &poly {
                PolyInput::Table(table) => (table.group.clone(), table.degree_witness(degree)?),
                PolyInput::Coefficients(doc) => {
                    let f = doc.to_newton()?.to_function();
                    let r = radius.unwrap_or(degree as i64 + 2);
                    (doc.group()?, degree_witness(&f, degree, ProbeRegion::Symmetric(r))?)
                }
            };
            let mut doc = json!({"passes": witness.is_none(), "witness": witness_value(&witness)});
            if g.is_finite() {
                if let PolyInput::Table(table) = &poly {
                    doc["constant"] = Value::Bool(torsion_constancy_check(&table.to_function()?, degree)?.constant);
                }
            }
            Ok(doc)
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_stdin() -> i32 {
    let (code, out) = run(std::env::args_os(), &mut std::io::stdin().lock());
    print!("{out}");
    code
}
