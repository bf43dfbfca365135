//! `hecke` — batch command-line surface over the algebra library.
//!
//! Every invocation prints exactly one JSON envelope to stdout:
//!
//! ```json
//! {"schema_version":"1","command":"...","status":"pass|fail|error",
//!  "payload":{...},"human_summary":"..."}
//! ```
//!
//! and mirrors the human summary on stderr. Exit codes: `0` when every
//! check in the payload passed, `1` when a mathematical check failed, and
//! `2` for parse or usage errors (including malformed expressions, JSON,
//! and rejected parameter values). Identical invocations produce
//! byte-identical stdout.

use std::env;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hecke_core::bernstein::{
    classify, intertwining_descriptor, morita_decomposition_gl2, InertialClassGL2,
};
use hecke_core::expr::parse_hecke;
use hecke_core::group_algebra::GroupAlgebraElement;
use hecke_core::hecke::{verify_defining_relations, HeckeAlgebra, HeckeElement, RelationStatus};
use hecke_core::iso::{braid_obstruction, IsoContext};
use hecke_core::padic::{
    convolve, iwahori_relation_check, l1_norm, BiInvariantFunction, PadicContext,
};
use hecke_core::scalars::{parse_rational, Parameter, RationalFunction};
use hecke_core::weyl::{self, ExtAffineWeylElement};

#[derive(Parser)]
#[command(
    name = "hecke",
    version,
    about = "Exact computations in affine Hecke algebras, extended affine Weyl \
             groups, and p-adic convolution algebras",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the defining relations of the rank-m algebra, plus a
    /// closed-form-versus-search length cross-check.
    Relations {
        /// Algebra rank (number of strand classes), at least 1.
        #[arg(long)]
        m: usize,
        /// Specialize the parameter to this rational value, e.g. "3" or "-1/2".
        #[arg(
            long,
            value_name = "VALUE",
            conflicts_with = "generic",
            allow_hyphen_values = true
        )]
        r: Option<String>,
        /// Keep the parameter generic (the default).
        #[arg(long)]
        generic: bool,
    },
    /// Multiply two elements given as expressions, e.g. "T[Pi^0; 1] * T[Pi^0; 1]".
    Mult {
        /// Algebra rank.
        #[arg(long)]
        m: usize,
        /// Left factor expression.
        #[arg(value_name = "EXPR")]
        left: String,
        /// Right factor expression.
        #[arg(value_name = "EXPR")]
        right: String,
    },
    /// Emit the full multiplication table of basis elements with word
    /// length at most maxlen and rotation power bounded by 1.
    Table {
        /// Algebra rank.
        #[arg(long)]
        m: usize,
        /// Largest basis word length included in the table.
        #[arg(long)]
        maxlen: u64,
        /// Output layout for the products inside the JSON payload.
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Check that the rank-2 basis change is an algebra isomorphism:
    /// multiplicativity on basis pairs and round trips in both directions.
    IsoCheck {
        /// Specialize the parameter; -1 is rejected (the inverse divides by r + 1).
        #[arg(long, value_name = "VALUE", allow_hyphen_values = true)]
        r: Option<String>,
    },
    /// Apply the rank-2 basis change to a generic-parameter element.
    IsoApply {
        /// Element expression in the T basis, rank 2.
        #[arg(value_name = "EXPR")]
        expr: String,
    },
    /// Compute the rank-3 braid defect of the naive basis change and
    /// compare it with its closed form.
    Braid {
        /// Specialize the parameter to this rational value.
        #[arg(
            long,
            value_name = "VALUE",
            conflicts_with = "generic",
            allow_hyphen_values = true
        )]
        r: Option<String>,
        /// Keep the parameter generic (the default).
        #[arg(long)]
        generic: bool,
    },
    /// Inertial-class classification and decomposition records.
    Bernstein {
        #[command(subcommand)]
        command: BernsteinCommand,
    },
    /// p-adic double-coset convolution at maximal-compact or Iwahori level.
    Padic {
        #[command(subcommand)]
        command: PadicCommand,
    },
}

#[derive(Subcommand)]
enum BernsteinCommand {
    /// Classify an inertial class given as JSON, e.g.
    /// {"class":"torus","chi1":{"label":"a","twist":[0,1]},"chi2":{"label":"b","twist":[1,2]}}.
    Classify {
        /// Inertial-class document.
        #[arg(value_name = "JSON")]
        json: String,
    },
    /// Build the tensor descriptor for a composition with torsion data and
    /// report the parameter-free rank-2 decomposition.
    Decompose {
        /// Composition parts, comma-separated (e.g. "2,1,1"); a bare
        /// integer is the one-part composition.
        #[arg(long, value_name = "COMPOSITION")]
        n: String,
        /// Residue parameter, at least 2.
        #[arg(long)]
        q: u64,
        /// Torsion exponents, comma-separated, one per part, each at least 1.
        #[arg(long, value_name = "K1,K2,..")]
        torsion: String,
    },
}

#[derive(Subcommand)]
enum PadicCommand {
    /// Convolve two bi-invariant functions given as JSON documents.
    Conv {
        /// Prime residue characteristic.
        #[arg(long)]
        p: u64,
        /// First function document.
        #[arg(value_name = "JSON")]
        f: String,
        /// Second function document.
        #[arg(value_name = "JSON")]
        g: String,
    },
    /// Verify the Iwahori-level relations: the quadratic relation for the
    /// reflection indicator, rotation invertibility, and commutation of the
    /// squared rotation.
    IwahoriCheck {
        /// Prime residue characteristic.
        #[arg(long)]
        p: u64,
    },
    /// Compute the L1 norm of a bi-invariant function given as JSON.
    Norm {
        /// Prime residue characteristic.
        #[arg(long)]
        p: u64,
        /// Function document.
        #[arg(value_name = "JSON")]
        f: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

/// The single output document printed to stdout.
#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: &'a str,
    command: &'a str,
    status: &'a str,
    payload: Value,
    human_summary: String,
}

/// A successful run: payload plus whether every check passed.
struct RunOutput {
    payload: Value,
    all_pass: bool,
    human: String,
}

impl RunOutput {
    fn passing(payload: Value, human: impl Into<String>) -> Self {
        RunOutput {
            payload,
            all_pass: true,
            human: human.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match execute(cli.command) {
        Ok(out) => {
            let status = if out.all_pass { "pass" } else { "fail" };
            emit(name, status, out.payload, &out.human);
            if out.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            emit(name, "error", json!({ "error": message }), &message);
            ExitCode::from(2)
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Relations { .. } => "relations",
        Command::Mult { .. } => "mult",
        Command::Table { .. } => "table",
        Command::IsoCheck { .. } => "iso-check",
        Command::IsoApply { .. } => "iso-apply",
        Command::Braid { .. } => "braid",
        Command::Bernstein {
            command: BernsteinCommand::Classify { .. },
        } => "bernstein classify",
        Command::Bernstein {
            command: BernsteinCommand::Decompose { .. },
        } => "bernstein decompose",
        Command::Padic {
            command: PadicCommand::Conv { .. },
        } => "padic conv",
        Command::Padic {
            command: PadicCommand::IwahoriCheck { .. },
        } => "padic iwahori-check",
        Command::Padic {
            command: PadicCommand::Norm { .. },
        } => "padic norm",
    }
}

fn emit(command: &str, status: &str, payload: Value, human: &str) {
    let envelope = Envelope {
        schema_version: "1",
        command,
        status,
        payload,
        human_summary: human.to_owned(),
    };
    println!(
        "{}",
        serde_json::to_string(&envelope).expect("envelope serialization is infallible")
    );
    eprintln!("{human}");
}

fn execute(command: Command) -> Result<RunOutput, String> {
    match command {
        Command::Relations { m, r, generic: _ } => cmd_relations(m, r),
        Command::Mult { m, left, right } => cmd_mult(m, &left, &right),
        Command::Table { m, maxlen, format } => cmd_table(m, maxlen, format),
        Command::IsoCheck { r } => cmd_iso_check(r),
        Command::IsoApply { expr } => cmd_iso_apply(&expr),
        Command::Braid { r, generic: _ } => cmd_braid(r),
        Command::Bernstein {
            command: BernsteinCommand::Classify { json },
        } => cmd_bernstein_classify(&json),
        Command::Bernstein {
            command: BernsteinCommand::Decompose { n, q, torsion },
        } => cmd_bernstein_decompose(&n, q, &torsion),
        Command::Padic {
            command: PadicCommand::Conv { p, f, g },
        } => cmd_padic_conv(p, &f, &g),
        Command::Padic {
            command: PadicCommand::IwahoriCheck { p },
        } => cmd_padic_iwahori_check(p),
        Command::Padic {
            command: PadicCommand::Norm { p, f },
        } => cmd_padic_norm(p, &f),
    }
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn parse_parameter(r: Option<&str>) -> Result<Parameter, String> {
    match r {
        None => Ok(Parameter::Generic),
        Some(text) => parse_rational(text.trim())
            .map(Parameter::Value)
            .map_err(|e| format!("--r must be a rational number like 3 or -1/2: {e}")),
    }
}

fn parameter_label(parameter: &Parameter) -> String {
    match parameter {
        Parameter::Generic => "generic".to_owned(),
        Parameter::Value(v) => v.to_string(),
    }
}

fn basis_name(marker: &str, w: &ExtAffineWeylElement) -> String {
    let (k, word) = weyl::reduced_word(w);
    if word.is_empty() {
        format!("{marker}[Pi^{k}]")
    } else {
        let letters = word
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!("{marker}[Pi^{k}; {letters}]")
    }
}

fn hecke_terms(a: &HeckeElement) -> Value {
    Value::Array(
        a.terms()
            .map(|(w, c)| {
                json!({
                    "basis": basis_name("T", w),
                    "coefficient": c.factor_string(),
                })
            })
            .collect(),
    )
}

fn group_terms(a: &GroupAlgebraElement) -> Value {
    Value::Array(
        a.terms()
            .map(|(w, c)| {
                json!({
                    "basis": basis_name("G", w),
                    "coefficient": c.factor_string(),
                })
            })
            .collect(),
    )
}

fn embed_json(text: &str) -> Value {
    serde_json::from_str(text).expect("library JSON output is well-formed")
}

/// Basis domain used by `table` and the isomorphism suite: all affine words
/// of length at most `max_len`, shifted by rotation powers up to `pi_bound`
/// in absolute value, in a fixed deterministic order.
fn basis_domain(rank: usize, max_len: u64, pi_bound: i64) -> Vec<ExtAffineWeylElement> {
    let ball = weyl::affine_ball(rank, max_len);
    let mut out = Vec::with_capacity(ball.len() * (2 * pi_bound as usize + 1));
    for k in -pi_bound..=pi_bound {
        let shift = weyl::power(&weyl::pi_element(rank), k);
        for w in &ball {
            out.push(weyl::multiply(&shift, w));
        }
    }
    out
}

fn bfs_radius_from_env() -> Result<u64, String> {
    const VAR: &str = "HECKE_BFS_RADIUS";
    const DEFAULT: u64 = 4;
    const MAX: u64 = 8;
    match env::var(VAR) {
        Err(env::VarError::NotPresent) => Ok(DEFAULT),
        Err(e) => Err(format!("{VAR} could not be read: {e}")),
        Ok(text) => {
            let radius: u64 = text
                .trim()
                .parse()
                .map_err(|_| format!("{VAR} must be a nonnegative integer, got {text:?}"))?;
            if radius > MAX {
                return Err(format!(
                    "{VAR} = {radius} is too large; the search cross-check supports radii up to {MAX}"
                ));
            }
            Ok(radius)
        }
    }
}

// ---------------------------------------------------------------------------
// relations
// ---------------------------------------------------------------------------

fn cmd_relations(m: usize, r: Option<String>) -> Result<RunOutput, String> {
    if m == 0 {
        return Err("--m must be at least 1".to_owned());
    }
    if m > 8 {
        return Err("--m larger than 8 is not supported by the command-line suite".to_owned());
    }
    let parameter = parse_parameter(r.as_deref())?;
    let report = verify_defining_relations(m, parameter.clone());
    let relations: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "status": match c.status {
                    RelationStatus::Holds => "holds",
                    RelationStatus::Fails => "fails",
                    RelationStatus::Vacuous => "vacuous",
                },
            })
        })
        .collect();

    let radius = bfs_radius_from_env()?;
    let (oracle, oracle_agrees) = length_oracle_section(m, radius);

    let all_pass = report.all_hold() && oracle_agrees;
    let payload = json!({
        "rank": m,
        "parameter": parameter_label(&parameter),
        "relations": relations,
        "laurent_like": report.laurent_like,
        "length_oracle": oracle,
        "all_hold": all_pass,
    });
    let human = format!(
        "rank {m}, parameter {}: defining relations {}; length cross-check {} (radius {radius})",
        parameter_label(&parameter),
        if report.all_hold() { "hold" } else { "FAILED" },
        if oracle_agrees { "agreed" } else { "DISAGREED" },
    );
    Ok(RunOutput {
        payload,
        all_pass,
        human,
    })
}

/// Compare the closed-form word length against breadth-first search on a
/// deterministic sample of elements within the given radius.
fn length_oracle_section(rank: usize, radius: u64) -> (Value, bool) {
    const SAMPLE_CAP: usize = 100;
    let ball = weyl::affine_ball(rank, radius);
    let mut checked = 0u64;
    let mut all_agree = true;
    for w0 in ball.iter().take(SAMPLE_CAP) {
        for k in -2i64..=2 {
            let w = weyl::multiply(&weyl::power(&weyl::pi_element(rank), k), w0);
            let closed = weyl::length(&w);
            let searched = weyl::length_bfs(&w, radius);
            checked += 1;
            if searched != Ok(closed) {
                all_agree = false;
            }
        }
    }
    (
        json!({
            "radius": radius,
            "elements_checked": checked,
            "all_agree": all_agree,
        }),
        all_agree,
    )
}

// ---------------------------------------------------------------------------
// mult
// ---------------------------------------------------------------------------

fn cmd_mult(m: usize, left: &str, right: &str) -> Result<RunOutput, String> {
    let a = parse_hecke(m, left).map_err(|e| format!("left factor: {e}"))?;
    let b = parse_hecke(m, right).map_err(|e| format!("right factor: {e}"))?;
    let algebra = HeckeAlgebra::generic(m);
    let product = algebra.mul(&a, &b);
    let payload = json!({
        "rank": m,
        "left": a.to_string(),
        "right": b.to_string(),
        "product": product.to_string(),
        "terms": hecke_terms(&product),
    });
    let human = format!("product = {product}");
    Ok(RunOutput::passing(payload, human))
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn cmd_table(m: usize, maxlen: u64, format: TableFormat) -> Result<RunOutput, String> {
    if m == 0 {
        return Err("--m must be at least 1".to_owned());
    }
    const PI_BOUND: i64 = 1;
    const MAX_PRODUCTS: usize = 10_000;
    let domain = basis_domain(m, maxlen, PI_BOUND);
    let count = domain.len();
    if count * count > MAX_PRODUCTS {
        return Err(format!(
            "table would contain {count} x {count} products; at most {MAX_PRODUCTS} are supported \
             — lower --maxlen or --m"
        ));
    }
    let algebra = HeckeAlgebra::generic(m);
    let basis: Vec<HeckeElement> = domain.iter().map(|w| algebra.basis(w)).collect();
    let names: Vec<String> = domain.iter().map(|w| basis_name("T", w)).collect();

    let mut rows: Vec<(usize, usize, String)> = Vec::with_capacity(count * count);
    for i in 0..count {
        for j in 0..count {
            let product = algebra.mul(&basis[i], &basis[j]);
            rows.push((i, j, product.to_string()));
        }
    }

    let products_value = match format {
        TableFormat::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(i, j, product)| {
                    json!({
                        "left": names[*i],
                        "right": names[*j],
                        "product": product,
                    })
                })
                .collect();
            json!({ "format": "json", "products": list })
        }
        TableFormat::Csv => {
            let mut csv = String::from("left,right,product\n");
            for (i, j, product) in &rows {
                csv.push_str(&names[*i]);
                csv.push(',');
                csv.push_str(&names[*j]);
                csv.push(',');
                csv.push_str(product);
                csv.push('\n');
            }
            json!({ "format": "csv", "csv": csv })
        }
    };
    let mut payload = json!({
        "rank": m,
        "max_length": maxlen,
        "pi_power_bound": PI_BOUND,
        "basis_count": count,
        "product_count": count * count,
    });
    payload
        .as_object_mut()
        .expect("payload is an object")
        .extend(
            products_value
                .as_object()
                .expect("products value is an object")
                .clone(),
        );
    let human = format!(
        "{count} basis elements (length <= {maxlen}, |rotation power| <= {PI_BOUND}); \
         {} products",
        count * count
    );
    Ok(RunOutput::passing(payload, human))
}

// ---------------------------------------------------------------------------
// iso-check / iso-apply
// ---------------------------------------------------------------------------

fn cmd_iso_check(r: Option<String>) -> Result<RunOutput, String> {
    let parameter = parse_parameter(r.as_deref())?;
    let context = match &parameter {
        Parameter::Generic => IsoContext::generic(),
        Parameter::Value(v) => IsoContext::at(v.clone()).map_err(|e| e.to_string())?,
    };
    let algebra = context.hecke_algebra().clone();

    let pair_domain = basis_domain(2, 2, 1);
    let mut pairs_checked = 0u64;
    let mut multiplicative = true;
    let pair_elements: Vec<HeckeElement> = pair_domain.iter().map(|w| algebra.basis(w)).collect();
    let pair_images: Vec<GroupAlgebraElement> =
        pair_elements.iter().map(|a| context.phi(a)).collect();
    for (a, fa) in pair_elements.iter().zip(&pair_images) {
        for (b, fb) in pair_elements.iter().zip(&pair_images) {
            let lhs = context.phi(&algebra.mul(a, b));
            let rhs = fa.mul(fb);
            pairs_checked += 1;
            if lhs != rhs {
                multiplicative = false;
            }
        }
    }

    let trip_domain = basis_domain(2, 3, 1);
    let mut round_trips = 0u64;
    let mut hecke_round_trip = true;
    let mut group_round_trip = true;
    for w in &trip_domain {
        let t = algebra.basis(w);
        if context.phi_inverse(&context.phi(&t)) != t {
            hecke_round_trip = false;
        }
        let g = GroupAlgebraElement::basis(w.clone());
        if context.phi(&context.phi_inverse(&g)) != g {
            group_round_trip = false;
        }
        round_trips += 1;
    }

    let unit_image = context.phi(&algebra.unit()) == GroupAlgebraElement::unit(2);
    let pi = weyl::pi_element(2);
    let rotation_image = context.phi(&algebra.basis(&pi)) == GroupAlgebraElement::basis(pi.clone());

    let checks = [
        (
            "multiplicative_on_basis_pairs",
            multiplicative,
            pairs_checked,
        ),
        ("round_trip_from_t_basis", hecke_round_trip, round_trips),
        ("round_trip_from_group_basis", group_round_trip, round_trips),
        ("unit_maps_to_unit", unit_image, 1),
        ("rotation_maps_to_rotation", rotation_image, 1),
    ];
    let all_pass = checks.iter().all(|(_, ok, _)| *ok);
    let payload = json!({
        "parameter": parameter_label(&parameter),
        "checks": checks
            .iter()
            .map(|(name, ok, cases)| json!({"name": name, "pass": ok, "cases": cases}))
            .collect::<Vec<Value>>(),
        "all_hold": all_pass,
    });
    let human = format!(
        "basis change at parameter {}: {}",
        parameter_label(&parameter),
        if all_pass {
            format!(
                "isomorphism checks passed on {pairs_checked} pairs and {round_trips} round trips"
            )
        } else {
            "an isomorphism check FAILED".to_owned()
        }
    );
    Ok(RunOutput {
        payload,
        all_pass,
        human,
    })
}

fn cmd_iso_apply(expr: &str) -> Result<RunOutput, String> {
    let input = parse_hecke(2, expr).map_err(|e| e.to_string())?;
    let context = IsoContext::generic();
    let image = context.phi(&input);
    let payload = json!({
        "input": input.to_string(),
        "image": image.to_string(),
        "terms": group_terms(&image),
    });
    let human = format!("image = {image}");
    Ok(RunOutput::passing(payload, human))
}

// ---------------------------------------------------------------------------
// braid
// ---------------------------------------------------------------------------

fn cmd_braid(r: Option<String>) -> Result<RunOutput, String> {
    let parameter = parse_parameter(r.as_deref())?;
    let obstruction = braid_obstruction(&parameter);

    let s1 = GroupAlgebraElement::basis(weyl::from_word(3, 0, &[1]));
    let s2 = GroupAlgebraElement::basis(weyl::from_word(3, 0, &[2]));
    let coefficient: RationalFunction = "(r + 1)*(r - 1)^2/8"
        .parse()
        .expect("closed-form coefficient parses");
    let generic_expected = s1.sub(&s2).scale(&coefficient);
    let expected = match &parameter {
        Parameter::Generic => generic_expected,
        Parameter::Value(v) => generic_expected
            .specialize(v)
            .expect("polynomial coefficients never have poles"),
    };
    let matches_closed_form = obstruction == expected;

    let payload = json!({
        "parameter": parameter_label(&parameter),
        "obstruction": obstruction.to_string(),
        "is_zero": obstruction.is_zero(),
        "matches_closed_form": matches_closed_form,
        "vanishing_parameter_values": ["1", "-1"],
    });
    let human = format!(
        "braid defect at parameter {} is {}{}",
        parameter_label(&parameter),
        if obstruction.is_zero() {
            "zero"
        } else {
            "nonzero"
        },
        if matches_closed_form {
            ""
        } else {
            " (closed-form comparison FAILED)"
        }
    );
    Ok(RunOutput {
        payload,
        all_pass: matches_closed_form,
        human,
    })
}

// ---------------------------------------------------------------------------
// bernstein
// ---------------------------------------------------------------------------

fn cmd_bernstein_classify(input: &str) -> Result<RunOutput, String> {
    let class = InertialClassGL2::from_json_str(input).map_err(|e| e.to_string())?;
    let descriptor = classify(&class);
    let descriptor_value = embed_json(&descriptor.to_json_string());
    let block = descriptor_value["block"]
        .as_str()
        .expect("descriptor has a block tag")
        .to_owned();
    let payload = json!({
        "input": embed_json(&class.to_json_string().map_err(|e| e.to_string())?),
        "descriptor": descriptor_value,
    });
    let human = format!("inertial class classified as block {block}");
    Ok(RunOutput::passing(payload, human))
}

fn parse_positive_list(text: &str, flag: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|_| {
                format!("{flag} must be a comma-separated list of integers, got {part:?}")
            })
        })
        .collect()
}

fn cmd_bernstein_decompose(n: &str, q: u64, torsion: &str) -> Result<RunOutput, String> {
    let parts = parse_positive_list(n, "--n")?;
    let torsion = parse_positive_list(torsion, "--torsion")?;
    let record = intertwining_descriptor(&parts, &torsion, q).map_err(|e| e.to_string())?;
    let decomposition = morita_decomposition_gl2();
    let factor_count = match &record.descriptor {
        hecke_core::bernstein::BlockDescriptor::Tensor { factors } => factors.len(),
        _ => 0,
    };
    let payload = json!({
        "composition": parts,
        "q": q,
        "torsion": torsion,
        "intertwining": serde_json::to_value(&record).expect("record serializes"),
        "morita": serde_json::to_value(&decomposition).expect("decomposition serializes"),
    });
    let human = format!(
        "tensor descriptor with {factor_count} factors; decomposition lists {} block families",
        decomposition.families.len()
    );
    Ok(RunOutput::passing(payload, human))
}

// ---------------------------------------------------------------------------
// padic
// ---------------------------------------------------------------------------

fn cmd_padic_conv(p: u64, f_text: &str, g_text: &str) -> Result<RunOutput, String> {
    let ctx = PadicContext::new(p).map_err(|e| e.to_string())?;
    let f = BiInvariantFunction::from_json_str(&ctx, f_text)
        .map_err(|e| format!("first function: {e}"))?;
    let g = BiInvariantFunction::from_json_str(&ctx, g_text)
        .map_err(|e| format!("second function: {e}"))?;
    let product = convolve(&ctx, &f, &g).map_err(|e| e.to_string())?;
    let norms = json!({
        "left": l1_norm(&ctx, &f).map_err(|e| e.to_string())?.to_string(),
        "right": l1_norm(&ctx, &g).map_err(|e| e.to_string())?.to_string(),
        "product": l1_norm(&ctx, &product).map_err(|e| e.to_string())?.to_string(),
    });
    let payload = json!({
        "p": p,
        "level": product.level().tag(),
        "f": embed_json(&f.to_json_string()),
        "g": embed_json(&g.to_json_string()),
        "product": embed_json(&product.to_json_string()),
        "l1_norms": norms,
    });
    let human = format!(
        "convolution is supported on {} double coset(s), L1 norm {}",
        product.len(),
        l1_norm(&ctx, &product).map_err(|e| e.to_string())?
    );
    Ok(RunOutput::passing(payload, human))
}

fn cmd_padic_iwahori_check(p: u64) -> Result<RunOutput, String> {
    let ctx = PadicContext::new(p).map_err(|e| e.to_string())?;
    let report = iwahori_relation_check(&ctx).map_err(|e| e.to_string())?;
    let all_pass = report.all_hold();
    let payload = json!({
        "p": p,
        "reflection_coset_count": report.s_coset_count,
        "structure_constants": {
            "reflection_coefficient": report.s_coefficient.to_string(),
            "unit_coefficient": report.unit_coefficient.to_string(),
        },
        "quadratic_holds": report.quadratic_holds,
        "rotation_invertible": report.rotation_invertible,
        "rotation_square_commutes": report.rotation_square_commutes,
        "all_hold": all_pass,
    });
    let human = format!(
        "p = {p}: reflection square = {} * reflection + {} * unit; {}",
        report.s_coefficient,
        report.unit_coefficient,
        if all_pass {
            "all relations hold"
        } else {
            "a relation FAILED"
        }
    );
    Ok(RunOutput {
        payload,
        all_pass,
        human,
    })
}

fn cmd_padic_norm(p: u64, f_text: &str) -> Result<RunOutput, String> {
    let ctx = PadicContext::new(p).map_err(|e| e.to_string())?;
    let f = BiInvariantFunction::from_json_str(&ctx, f_text).map_err(|e| e.to_string())?;
    let norm = l1_norm(&ctx, &f).map_err(|e| e.to_string())?;
    let payload = json!({
        "p": p,
        "function": embed_json(&f.to_json_string()),
        "l1_norm": norm.to_string(),
        "l1_norm_fraction": [*norm.numer(), *norm.denom()],
    });
    let human = format!("L1 norm = {norm}");
    Ok(RunOutput::passing(payload, human))
}
