//! Command-line front end. Each command builds a [`Record`]; `run` maps
//! the outcome to an exit code (0 ok, 2 configuration, 3 identity
//! violation, 4 tolerance failure).

use clap::{Parser, Subcommand, ValueEnum};
use glvol_core::fiber_integration::{contraction_sign, sphere_surface};
use glvol_core::lie_cohomology::top_integrality;
use glvol_core::{
    basis_change_factor, betti, contract_step, derive_alpha, expected_poincare, exterior,
    volume_closed_form, volume_recursive, ExactScalar, GaussianRational,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formats::{betti_to_json, estimate_to_json, form_to_json, scalar_to_json};
use crate::numint::{self, assess};
use crate::report::{OutputFormat, Record, Status};

pub const FACTOR_MAX_N: usize = 8;
pub const BETTI_MAX_N: usize = 3;
pub const VERIFY_MAX_N: usize = 6;
pub const CONTRACTION_MAX_N: usize = 3;
pub const INTEGRALITY_MAX_N: usize = 4;
pub const TRACE_WEDGE_MAX_N: usize = 4;
pub const REPORT_MAX_N: usize = 8;
pub const SEED_ENV: &str = "GLVOL_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "glvol",
    version,
    about = "Exact and numerical checks of the GL_n volume-form comparison"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,

    /// Require signs to match exactly instead of up to ±1.
    #[arg(long, global = true)]
    pub exact_sign: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Quad,
    Mc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Comparison factor α(n) and the exact volume C(n).
    Factor {
        #[arg(long)]
        n: usize,
    },
    /// Betti numbers of the Chevalley–Eilenberg complex of gl_n.
    Betti {
        #[arg(long)]
        n: usize,
    },
    /// Contraction, basis-change and top-degree integrality checks.
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Numerical volume of U(n).
    Integrate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Quad)]
        method: MethodArg,
        /// Nodes per axis (quadrature); default 1024 for n = 1, 24 for n = 2.
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = numint::DEFAULT_FD_STEP)]
        fd_step: f64,
    },
    /// Top coefficient of tr(dZ) ∧ tr(dZ^3) ∧ … ∧ tr(dZ^{2n-1}).
    TraceWedge {
        #[arg(long)]
        n: usize,
    },
    /// Summary table for n = 1..max_n.
    Report {
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub up_to_sign: bool,
}

fn check_range(what: &'static str, n: usize, max: usize, allowed: &'static str) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::range(what, n, allowed));
    }
    Ok(())
}

fn sign_ok(sign: Option<i8>, opts: Options) -> bool {
    match sign {
        Some(1) => true,
        Some(_) => opts.up_to_sign,
        None => false,
    }
}

fn integer_value(s: &ExactScalar) -> Value {
    let int = s.as_gaussian().and_then(|q| {
        q.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    });
    match int {
        Some(i) => match (i.to_u64(), i.to_i64()) {
            (Some(u), _) => Value::from(u),
            (None, Some(v)) => Value::from(v),
            _ => Value::from(i.to_string()),
        },
        None => Value::from(s.to_string()),
    }
}

fn check(status: bool) -> &'static str {
    if status {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_factor(n: usize, opts: Options) -> Result<Record> {
    check_range("n", n, FACTOR_MAX_N, "1 <= n <= 8")?;
    let alpha = derive_alpha(n)?;
    let recursive = volume_recursive(n)?;
    let closed = volume_closed_form(n);
    let sign = recursive.value.sign_relative_to(&closed);

    let k = (n * (n + 1) / 2) as u32;
    let lhs = &alpha * &recursive.value;
    let rhs = ExactScalar::two_pi_i_pow(k);
    let product_sign = lhs.sign_relative_to(&rhs);

    let trace: Vec<Value> = recursive
        .trace
        .iter()
        .map(|t| {
            json!({
                "from_n": t.n,
                "basis_change": scalar_to_json(&t.basis_change),
                "basis_change_sign": t.basis_change_sign,
                "contraction_sign": t.contraction_sign,
                "step_factor": scalar_to_json(&t.step_factor),
                "sphere_factor": scalar_to_json(&t.sphere_factor),
                "c_value": scalar_to_json(&t.c_value),
            })
        })
        .collect();

    let mut r = Record::new("factor");
    r.set("n", n)
        .set("alpha", integer_value(&alpha))
        .set("C_exact", scalar_to_json(&recursive.value))
        .set("C_closed_form", scalar_to_json(&closed))
        .set("sign", sign)
        .set(
            "consistency",
            json!({
                "alpha_times_C": scalar_to_json(&lhs),
                "two_pi_i_power": scalar_to_json(&rhs),
                "sign": product_sign,
            }),
        )
        .set("trace", trace);
    if !sign_ok(sign, opts) || !sign_ok(product_sign, opts) {
        r.fail(Status::IdentityViolation);
    }
    Ok(r)
}

pub fn cmd_betti(n: usize) -> Result<Record> {
    check_range("n", n, BETTI_MAX_N, "1 <= n <= 3")?;
    let table = betti(n)?;
    let expected: Vec<usize> = expected_poincare(n)
        .into_iter()
        .map(|v| v as usize)
        .collect();
    let symmetric = table.is_symmetric();
    let matches = table.betti == expected;
    let mut r = Record::new("betti");
    r.set("n", n)
        .set("betti", betti_to_json(&table)["betti"].clone())
        .set("expected", expected)
        .set("symmetric", symmetric);
    if !(matches && symmetric) {
        r.fail(Status::IdentityViolation);
    }
    Ok(r)
}

/// Runs a check, turning identity violations into a failed entry.
fn guarded<T>(f: impl FnOnce() -> glvol_core::Result<T>) -> Result<std::result::Result<T, String>> {
    match f() {
        Ok(v) => Ok(Ok(v)),
        Err(glvol_core::Error::IdentityViolation { check, detail }) => {
            Ok(Err(format!("{check}: {detail}")))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_verify(n: usize, opts: Options) -> Result<Record> {
    check_range("n", n, VERIFY_MAX_N, "1 <= n <= 6")?;
    let mut r = Record::new("verify");
    let mut checks = serde_json::Map::new();
    let mut status = Status::Pass;

    let contraction = if n <= CONTRACTION_MAX_N {
        match guarded(|| {
            let f = contract_step(n)?;
            let s = contraction_sign(n, &f)?;
            Ok((f, s))
        })? {
            Ok((f, s)) => {
                let ok = sign_ok(Some(s), opts);
                json!({"status": check(ok), "sign": s, "ambient": n + 1, "form": form_to_json(&f)})
            }
            Err(detail) => json!({"status": "FAIL", "detail": detail}),
        }
    } else {
        json!({"status": "SKIPPED", "detail": "ambient size above 4"})
    };
    checks.insert("contraction".into(), contraction);

    let expected = ExactScalar::from(GaussianRational::i_pow((n + 1) as u32).scale(
        &num_rational::BigRational::new(BigInt::from(1), BigInt::from(1u64) << n),
    ));
    let basis = match guarded(|| basis_change_factor(n))? {
        Ok(d) => {
            let s = d.sign_relative_to(&expected);
            json!({
                "status": check(sign_ok(s, opts)),
                "value": scalar_to_json(&d),
                "expected": scalar_to_json(&expected),
                "sign": s,
            })
        }
        Err(detail) => json!({"status": "FAIL", "detail": detail}),
    };
    checks.insert("basis_change".into(), basis);

    let integrality = if n <= INTEGRALITY_MAX_N {
        match guarded(|| top_integrality(n))? {
            Ok(ok) => json!({"status": check(ok)}),
            Err(detail) => json!({"status": "FAIL", "detail": detail}),
        }
    } else {
        json!({"status": "SKIPPED", "detail": "n above 4"})
    };
    checks.insert("top_integrality".into(), integrality);

    for c in checks.values() {
        if c["status"] == "FAIL" {
            status = Status::IdentityViolation;
        }
    }
    r.set("n", n).set("checks", Value::Object(checks));
    r.fail(status);
    Ok(r)
}

pub struct IntegrateArgs {
    pub n: usize,
    pub method: MethodArg,
    pub nodes: Option<usize>,
    pub samples: u64,
    pub seed: u64,
    pub fd_step: f64,
}

pub fn cmd_integrate(args: &IntegrateArgs, opts: Options) -> Result<Record> {
    let est = match args.method {
        MethodArg::Quad => {
            let nodes = args.nodes.unwrap_or(if args.n == 1 { 1024 } else { 24 });
            numint::integrate_quadrature(args.n, nodes, args.fd_step)?
        }
        MethodArg::Mc => {
            if args.nodes.is_some() {
                return Err(Error::range(
                    "nodes",
                    "given",
                    "--nodes applies to quadrature only",
                ));
            }
            numint::integrate_mc(args.n, args.samples, args.seed, args.fd_step)?
        }
    };
    let a = assess(&est, opts.up_to_sign);
    let mut r = Record::new("integrate");
    if let Value::Object(m) = estimate_to_json(&est, &a) {
        for (k, v) in m {
            r.set(&k, v);
        }
    }
    r.set("expected", scalar_to_json(&volume_closed_form(args.n)))
        .set("abs_error", a.abs_error)
        .set("phase_residual", a.phase_residual)
        .set("tolerance", a.tolerance.clone());
    if !a.pass {
        r.fail(Status::ToleranceFailure);
    }
    Ok(r)
}

pub fn cmd_trace_wedge(n: usize) -> Result<Record> {
    check_range("n", n, TRACE_WEDGE_MAX_N, "1 <= n <= 4")?;
    let top = exterior::trace_wedge_top(n)?;
    let mut r = Record::new("trace-wedge");
    r.set("n", n)
        .set("top_coefficient", integer_value(&top))
        .set("exact", scalar_to_json(&top));
    Ok(r)
}

pub fn cmd_report(max_n: usize, opts: Options) -> Result<Record> {
    check_range("max_n", max_n, REPORT_MAX_N, "1 <= max_n <= 8")?;
    let mut r = Record::new("report");
    let mut alphas = Vec::new();
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let factor = cmd_factor(n, opts)?;
        r.fail(factor.status);
        let verify = if n <= VERIFY_MAX_N {
            let v = cmd_verify(n, opts)?;
            r.fail(v.status);
            Some(v)
        } else {
            None
        };
        let betti = if n <= BETTI_MAX_N {
            let b = cmd_betti(n)?;
            r.fail(b.status);
            Value::from(b.status.label())
        } else {
            Value::from("SKIPPED")
        };
        let from_verify = |name: &str| {
            verify
                .as_ref()
                .and_then(|v| v.get("checks"))
                .map_or(Value::from("SKIPPED"), |c| c[name]["status"].clone())
        };
        let alpha = factor.get("alpha").cloned().unwrap_or(Value::Null);
        alphas.push(alpha.clone());
        rows.push(json!({
            "n": n,
            "alpha": alpha,
            "C": factor.get("C_exact").map_or(Value::Null, |c| c["display"].clone()),
            "sign": factor.get("sign").cloned().unwrap_or(Value::Null),
            "recursion": factor.status.label(),
            "contraction": from_verify("contraction"),
            "basis_change": from_verify("basis_change"),
            "top_integrality": from_verify("top_integrality"),
            "betti": betti,
        }));
    }
    r.set("max_n", max_n)
        .set("alpha", alphas)
        .set("sphere_surface", scalar_to_json(&sphere_surface(max_n)))
        .set("rows", rows);
    Ok(r)
}

pub fn execute(cli: &Cli) -> Result<Record> {
    let opts = Options {
        up_to_sign: !cli.exact_sign,
    };
    match &cli.command {
        Command::Factor { n } => cmd_factor(*n, opts),
        Command::Betti { n } => cmd_betti(*n),
        Command::Verify { n } => cmd_verify(*n, opts),
        Command::Integrate {
            n,
            method,
            nodes,
            samples,
            seed,
            fd_step,
        } => cmd_integrate(
            &IntegrateArgs {
                n: *n,
                method: *method,
                nodes: *nodes,
                samples: *samples,
                seed: *seed,
                fd_step: *fd_step,
            },
            opts,
        ),
        Command::TraceWedge { n } => cmd_trace_wedge(*n),
        Command::Report { max_n } => cmd_report(*max_n, opts),
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Core(glvol_core::Error::IdentityViolation { .. }) | Error::NotUnitary { .. } => 3,
        Error::Degenerate { .. } => 4,
        _ => 2,
    }
}

/// Parses `args`, runs the command and writes the rendered record to
/// stdout (errors to stderr). Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(record) => {
            print!("{}", record.render(cli.format));
            record.status.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}
