//! `ortho-bounds`: table reproduction, zero and bound queries, and identity
//! checks on top of [`ortho_bounds_core`].

pub mod precision;
pub mod report;
pub mod tables;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ortho_bounds_core::bounds::{bounds_for, completed_interlacing, verify_bound_report};
use ortho_bounds_core::christoffel::{build_mixed_recurrence, christoffel_eval, degree_law};
use ortho_bounds_core::zeros::family_zeros;
use ortho_bounds_core::{
    BigReal, BoundValue, CSpec, Construction, Error, FamilyId, FamilySpec, Recurrence, ZeroSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use precision::{base_precision, effective_precision};
use report::{num, opt_num, Format, Record, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ortho-bounds", version, about = "Inner bounds for extreme zeros of orthogonal polynomials")]
pub struct Cli {
    /// Working precision in bits (default: $ORTHO_BOUNDS_PRECISION or 256).
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Recompute a published table and compare to the printed digits.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
    },
    /// Zeros of p_n.
    Zeros {
        #[command(flatten)]
        family: FamilyArgs,
        /// Relative tolerance of the zeros.
        #[arg(long, default_value = "1e-30")]
        rtol: String,
    },
    /// Closed-form inner bounds for the extreme zeros.
    Bounds {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also compute the zeros and check every bound and interlacing.
        #[arg(long)]
        verify: bool,
    },
    /// Numerical check of an identity or interlacing property.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[command(flatten)]
        family: FamilyArgs,
        /// Associated-polynomial offset (2 <= m <= n-1).
        #[arg(long)]
        m: Option<usize>,
        /// Degree of the monomial modification x^k.
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Number of random sample points.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Seed of the sample points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// laguerre, little-q-jacobi, little-q-laguerre, alt-q-charlier,
    /// stieltjes-wigert or qhermite2.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    /// Family parameter `name=value` (alpha, beta, q); repeatable. Laguerre
    /// alpha defaults to 0.
    #[arg(long = "param", num_args = 1.., action = clap::ArgAction::Append)]
    pub params: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Beardon,
    Christoffel,
    Interlacing,
    Mixedrec,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PrecisionExhausted { .. } => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

/// A parsed family with the precision it is evaluated at.
struct Resolved {
    fam: FamilySpec,
    n: usize,
    prec: usize,
    inputs: Record,
}

fn resolve(args: &FamilyArgs, base: usize) -> Result<Resolved, Failure> {
    let id = FamilyId::from_slug(&args.family).ok_or_else(|| usage(format!("unknown family {:?}", args.family)))?;
    let prec = effective_precision(base, id, args.n);
    let mut alpha = None;
    let mut beta = None;
    let mut q = None;
    let mut given = Record::new();
    for p in &args.params {
        let (k, v) = p.split_once('=').ok_or_else(|| usage(format!("parameter {p:?} is not name=value")))?;
        let k = k.trim();
        if !id.param_names().contains(&k) {
            return Err(usage(format!("{id} takes parameters {:?}, not {k:?}", id.param_names())));
        }
        let slot = match k {
            "alpha" => &mut alpha,
            "beta" => &mut beta,
            _ => &mut q,
        };
        if slot.is_some() {
            return Err(usage(format!("parameter {k} given twice")));
        }
        let val = BigReal::parse(v.trim(), prec).map_err(|_| usage(format!("{k}={v:?} is not a number")))?;
        given.insert(k.into(), Value::from(v.trim()));
        *slot = Some(val);
    }
    // Laguerre without alpha means the classical polynomials L_n = L_n^(0).
    if id == FamilyId::Laguerre && alpha.is_none() {
        alpha = Some(BigReal::zero(prec));
        given.insert("alpha".into(), Value::from("0"));
    }
    let fam = FamilySpec::new(id, alpha, beta, q)?;
    let mut inputs = Record::new();
    inputs.insert("family".into(), Value::from(id.slug()));
    inputs.insert("n".into(), Value::from(args.n));
    inputs.insert("params".into(), Value::Object(given));
    inputs.insert("precision".into(), Value::from(prec));
    Ok(Resolved { fam, n: args.n, prec, inputs })
}

fn require_n(n: usize, min: usize) -> Result<(), Failure> {
    if n < min {
        return Err(usage(format!("n = {n} must be at least {min}")));
    }
    Ok(())
}

fn cmd_table(id: u8, base: usize) -> Result<Report, Failure> {
    let t = tables::table(id).ok_or_else(|| usage(format!("no table {id}")))?;
    let cells = tables::run_table(t, base)?;
    let mut inputs = Record::new();
    inputs.insert("id".into(), Value::from(id));
    inputs.insert("precision".into(), Value::from(base));
    inputs.insert("family".into(), Value::from(t.family.slug()));
    inputs.insert("caption".into(), Value::from(t.caption));
    let pass = cells.iter().all(|c| c.pass != Some(false));
    let results = cells
        .iter()
        .map(|c| {
            let mut r = Record::new();
            r.insert("table".into(), Value::from(c.table));
            r.insert("row".into(), Value::from(c.row));
            r.insert("n".into(), Value::from(c.n));
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            r.insert("params".into(), Value::from(params.join(" ")));
            r.insert("quantity".into(), Value::from(c.quantity.label()));
            r.insert("printed".into(), Value::from(c.printed));
            r.insert("computed".into(), opt_num(c.computed.as_ref()));
            r.insert(
                "kind".into(),
                Value::from(if c.pass.is_some() { "computed" } else { "external" }),
            );
            r.insert("pass".into(), c.pass.map_or(Value::Null, Value::Bool));
            r.insert("precision".into(), Value::from(c.precision));
            r.insert("note".into(), c.note.map_or(Value::Null, Value::from));
            r
        })
        .collect();
    for c in cells.iter().filter(|c| c.pass == Some(false)) {
        eprintln!(
            "FAIL table {} row {} {}: printed {} computed {}{}",
            c.table,
            c.row,
            c.quantity.label(),
            c.printed,
            c.computed.as_ref().map_or_else(|| "-".into(), |v| v.to_sci(12)),
            c.note.map_or_else(String::new, |n| format!(" ({n})")),
        );
    }
    Ok(Report { command: "table", inputs, results, pass })
}

fn cmd_zeros(args: &FamilyArgs, rtol: &str, base: usize) -> Result<Report, Failure> {
    let mut r = resolve(args, base)?;
    require_n(r.n, 1)?;
    let tol = BigReal::parse(rtol, r.prec).map_err(|_| usage(format!("rtol {rtol:?} is not a number")))?;
    if !tol.is_positive() {
        return Err(usage("rtol must be positive"));
    }
    let zs = family_zeros(&r.fam, r.n, &tol, r.prec)?;
    r.inputs.insert("rtol".into(), Value::from(rtol));
    let results = zs
        .zeros
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let mut rec = Record::new();
            rec.insert("i".into(), Value::from(i + 1));
            rec.insert("zero".into(), num(z));
            rec.insert("achieved_rtol".into(), num(&zs.achieved_rtol));
            rec
        })
        .collect();
    Ok(Report { command: "zeros", inputs: r.inputs, results, pass: true })
}

fn zeros_for_check(r: &Resolved) -> Result<ZeroSet, Failure> {
    let rtol = BigReal::one(r.prec).mul_pow2(-(r.prec as i64) / 2);
    Ok(family_zeros(&r.fam, r.n, &rtol, r.prec)?)
}

fn cmd_bounds(args: &FamilyArgs, verify: bool, base: usize) -> Result<Report, Failure> {
    let mut r = resolve(args, base)?;
    let report = bounds_for(&r.fam, r.n, r.prec)?;
    r.inputs.insert("verify".into(), Value::Bool(verify));
    let check = if verify {
        let zs = zeros_for_check(&r)?;
        let c = verify_bound_report(&report, &zs, r.prec)?;
        Some((zs, c))
    } else {
        None
    };
    let results = report
        .entries
        .iter()
        .map(|e| {
            let mut rec = Record::new();
            rec.insert("name".into(), Value::from(e.name));
            rec.insert("direction".into(), Value::from(e.direction.slug()));
            rec.insert("value".into(), opt_num(e.value.value()));
            rec.insert(
                "inapplicable".into(),
                match e.value {
                    BoundValue::Inapplicable(why) => Value::from(why),
                    BoundValue::Value(_) => Value::Null,
                },
            );
            rec.insert("source".into(), Value::from(e.source));
            rec.insert("m".into(), e.construction.map_or(Value::Null, |c| Value::from(c.m)));
            rec.insert("k".into(), e.construction.map_or(Value::Null, |c| Value::from(c.k)));
            if let Some((zs, c)) = &check {
                let extreme = match e.direction {
                    ortho_bounds_core::Direction::UpperForSmallest => zs.smallest(),
                    ortho_bounds_core::Direction::LowerForLargest => zs.largest(),
                };
                rec.insert("extreme_zero".into(), opt_num(extreme));
                let failed = c.bound_failures.iter().any(|(name, _, _)| name == e.name);
                rec.insert(
                    "holds".into(),
                    if e.value.value().is_some() { Value::Bool(!failed) } else { Value::Null },
                );
            }
            rec
        })
        .collect();
    let pass = match &check {
        Some((_, c)) => {
            for (i, a, b) in &c.violations {
                eprintln!("interlacing violation: factor zero {} not in ({}, {})", i + 1, a.to_sci(12), b.to_sci(12));
            }
            c.holds
        }
        None => true,
    };
    Ok(Report { command: "bounds", inputs: r.inputs, results, pass })
}

/// Deterministic sample points spread over the zero range of `p_n`: a
/// random gap between consecutive zeros (or just outside the extreme ones)
/// and a random position inside it.
fn sample_points(zs: &ZeroSet, count: usize, seed: u64, prec: usize) -> Vec<BigReal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = &zs.zeros;
    let one = BigReal::one(prec);
    (0..count)
        .map(|_| {
            let u = BigReal::from_f64(rng.gen_range(0.01..0.99), prec);
            let j = rng.gen_range(0..=z.len());
            let (a, b) = if z.is_empty() {
                (-&one, one.clone())
            } else if j == 0 {
                let w = z[0].abs().max(one.clone());
                (&z[0] - &w, z[0].clone())
            } else if j == z.len() {
                let w = z[j - 1].abs().max(one.clone());
                (z[j - 1].clone(), &z[j - 1] + &w)
            } else {
                (z[j - 1].clone(), z[j].clone())
            };
            &a + &(&b - &a) * &u
        })
        .collect()
}

fn identity_tol(prec: usize) -> BigReal {
    BigReal::one(prec).mul_pow2(-(prec as i64) + 64)
}

fn max_of(xs: impl IntoIterator<Item = BigReal>, prec: usize) -> BigReal {
    xs.into_iter().fold(BigReal::zero(prec), BigReal::max)
}

fn residual_records(points: &[BigReal], residuals: &[BigReal], tol: &BigReal) -> Vec<Record> {
    points
        .iter()
        .zip(residuals)
        .map(|(x, res)| {
            let mut rec = Record::new();
            rec.insert("x".into(), num(x));
            rec.insert("residual".into(), num(res));
            rec.insert("pass".into(), Value::Bool(res < tol));
            rec
        })
        .collect()
}

fn require_m(m: Option<usize>, n: usize) -> Result<usize, Failure> {
    let m = m.ok_or_else(|| usage("this check needs --m"))?;
    if n < 3 || m < 2 || m > n - 1 {
        return Err(usage(format!("need 2 <= m <= n-1 with n >= 3 (n = {n}, m = {m})")));
    }
    Ok(m)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    check: Check,
    args: &FamilyArgs,
    m: Option<usize>,
    k: usize,
    samples: usize,
    seed: u64,
    base: usize,
) -> Result<Report, Failure> {
    let mut r = resolve(args, base)?;
    require_n(r.n, 1)?;
    if k > ortho_bounds_core::christoffel::MAX_K {
        return Err(usage(format!("k = {k} exceeds {}", ortho_bounds_core::christoffel::MAX_K)));
    }
    r.inputs.insert("check".into(), Value::from(format!("{check:?}").to_lowercase()));
    if let Some(m) = m {
        r.inputs.insert("m".into(), Value::from(m));
    }
    r.inputs.insert("k".into(), Value::from(k));
    r.inputs.insert("samples".into(), Value::from(samples));
    r.inputs.insert("seed".into(), Value::from(seed));
    let prec = r.prec;
    let tol = identity_tol(prec);
    let zs = zeros_for_check(&r)?;
    let points = sample_points(&zs, samples, seed, prec);
    let (results, pass) = match check {
        Check::Beardon => {
            let m = require_m(m, r.n)?;
            let rec = Recurrence::for_family(&r.fam, r.n, prec)?;
            let res: Vec<BigReal> =
                points.iter().map(|x| rec.beardon_residual(r.n, m, x)).collect::<Result<_, _>>()?;
            let pass = res.iter().all(|e| e < &tol);
            (residual_records(&points, &res, &tol), pass)
        }
        Check::Mixedrec => {
            let m = require_m(m, r.n)?;
            let mr = build_mixed_recurrence(&r.fam, r.n, m, &CSpec::monomial(k, prec), prec)?;
            let res: Vec<BigReal> = points.iter().map(|x| mr.residual(x)).collect::<Result<_, _>>()?;
            let pass = res.iter().all(|e| e < &tol);
            let (dg, dr) = degree_law(m, k);
            r.inputs.insert("expected_degree_g".into(), Value::from(dg));
            r.inputs.insert("expected_degree_r".into(), Value::from(dr));
            let mut records = residual_records(&points, &res, &tol);
            let roots = if mr.g.degree().is_some_and(|d| (1..=4).contains(&d)) { mr.g_roots()? } else { Vec::new() };
            for (i, g) in roots.iter().enumerate() {
                let mut rec = Record::new();
                rec.insert("g_root".into(), num(g));
                rec.insert("g_root_index".into(), Value::from(i + 1));
                records.push(rec);
            }
            for rec in &mut records {
                rec.insert("degree_g".into(), mr.g.degree().map_or(Value::Null, Value::from));
                rec.insert("degree_r".into(), mr.r.degree().map_or(Value::Null, Value::from));
            }
            (records, pass && !mr.degree_warning)
        }
        Check::Christoffel => {
            // det / (x^k q_n) must be constant, where q_n is the monic
            // polynomial of the family with weight x^k w(x).
            let shifted = r
                .fam
                .shifted_by_monomial(k, prec)
                .ok_or_else(|| usage(format!("{} is not closed under x^k weight shifts", r.fam.id())))?;
            let srec = Recurrence::for_family(&shifted, r.n, prec)?;
            let c = CSpec::monomial(k, prec);
            let ratios: Vec<BigReal> = points
                .iter()
                .map(|x| {
                    let det = christoffel_eval(&r.fam, r.n, &c, x, prec)?;
                    Ok(det / (c.eval(x) * srec.eval(r.n, x)?))
                })
                .collect::<Result<_, Error>>()?;
            let spread = max_of(ratios.iter().map(|q| BigReal::rel_diff(q, &ratios[0])), prec);
            let ptol = BigReal::one(prec).mul_pow2(-(prec as i64) / 2);
            let records = points
                .iter()
                .zip(&ratios)
                .map(|(x, q)| {
                    let mut rec = Record::new();
                    rec.insert("x".into(), num(x));
                    rec.insert("ratio".into(), num(q));
                    rec.insert("spread".into(), num(&BigReal::rel_diff(q, &ratios[0])));
                    rec
                })
                .collect();
            (records, ratios.is_empty() || spread < ptol)
        }
        Check::Interlacing => {
            let m = require_m(m, r.n)?;
            let (viol, common) = completed_interlacing(&r.fam, r.n, Construction { m, k }, &zs.zeros, prec)?;
            let mut records: Vec<Record> = viol
                .iter()
                .map(|(i, a, b)| {
                    let mut rec = Record::new();
                    rec.insert("kind".into(), Value::from("violation"));
                    rec.insert("index".into(), Value::from(i + 1));
                    rec.insert("left".into(), num(a));
                    rec.insert("right".into(), num(b));
                    rec
                })
                .collect();
            records.extend(common.iter().map(|z| {
                let mut rec = Record::new();
                rec.insert("kind".into(), Value::from("common_zero"));
                rec.insert("index".into(), Value::Null);
                rec.insert("left".into(), num(z));
                rec.insert("right".into(), num(z));
                rec
            }));
            let mut summary = Record::new();
            summary.insert("kind".into(), Value::from("summary"));
            summary.insert("index".into(), Value::from(viol.len()));
            summary.insert("left".into(), Value::Null);
            summary.insert("right".into(), Value::Null);
            records.push(summary);
            (records, viol.is_empty())
        }
    };
    Ok(Report { command: "verify", inputs: r.inputs, results, pass })
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let base = base_precision(cli.precision).map_err(usage)?;
    match &cli.command {
        Command::Table { id } => cmd_table(*id, base),
        Command::Zeros { family, rtol } => cmd_zeros(family, rtol, base),
        Command::Bounds { family, verify } => cmd_bounds(family, *verify, base),
        Command::Verify { check, family, m, k, samples, seed } => {
            cmd_verify(*check, family, *m, *k, *samples, *seed, base)
        }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            if let Err(e) = report.write(cli.format, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if report.pass {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
