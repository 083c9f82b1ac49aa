use muldep::exactnum::{
    enumerate_bounded_height_with_cap, format_rational, height, p_s_q_s, parse_rational, s_norm, FactoredRational,
    HeightBound, PlaceSet, Rational, DEFAULT_ENUMERATION_CAP,
};
use muldep::expsearch::{
    hyperelliptic_search_with_cap, s_f_gamma_eps_with_cap, scan_corollary13, scan_theorem12, scan_theorem15,
    validate_bound, InstanceSpec, ScanOptions, ScanReport,
};
use muldep::mulrel::{
    dependence_absolute, dependence_mod_gamma_div, dependence_mod_gamma_eps, eps_membership_sandwich,
    gamma_div_membership, gamma_membership, lf_generation_check, rf_independence_mod_gamma, verify_rf_witness,
    GroupSpec, RationalFunction,
};
use muldep::polyrat::{bad_reduction_primes, discriminant, poly_heights, squarefree_decompose, Poly};
use muldep::stbound::{compute_constants_with, BoundInputs, DEFAULT_PRECISION};
use muldep::{Error, Result};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, Format, HyperArgs, ScanArgs};

pub const PRECISION_ENV: &str = "MULDEP_PRECISION";

/// What a subcommand produced: a JSON report, or CSV text for scans.
pub enum Output {
    Json(Value),
    Text(String),
}

struct Ctx {
    precision: usize,
    cap: usize,
    notes: Vec<String>,
}

impl Ctx {
    fn height(&mut self, name: &str, text: &str) -> Result<HeightBound> {
        let h = HeightBound::parse(text)?;
        if !h.is_exact() {
            self.notes.push(format!(
                "{name} = {text} is not of the form log(N); comparisons against it use binary64 rounding"
            ));
        }
        Ok(h)
    }
}

fn precision(flag: Option<usize>) -> Result<usize> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("{PRECISION_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

fn items(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn rationals(text: &str) -> Result<Vec<Rational>> {
    items(text).into_iter().map(parse_rational).collect()
}

fn factored(text: &str) -> Result<Vec<FactoredRational>> {
    let xs = rationals(text)?;
    if xs.is_empty() {
        return Err(Error::invalid("expected at least one rational"));
    }
    xs.iter().map(FactoredRational::factor).collect()
}

fn one_factored(text: &str) -> Result<FactoredRational> {
    FactoredRational::factor(&parse_rational(text.trim())?)
}

fn poly(text: &str) -> Result<Poly> {
    let coeffs = items(text);
    if coeffs.is_empty() {
        return Err(Error::invalid("polynomial needs at least one coefficient"));
    }
    Poly::parse_descending(&coeffs)
}

fn polys(text: &str) -> Result<Vec<Poly>> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(poly).collect()
}

fn gamma(text: &str) -> Result<GroupSpec> {
    let gens = items(text);
    if gens.is_empty() {
        Ok(GroupSpec::trivial())
    } else {
        GroupSpec::parse(&gens)
    }
}

fn places(text: &str) -> Result<PlaceSet> {
    let primes = items(text)
        .into_iter()
        .filter(|s| !matches!(*s, "inf" | "∞"))
        .map(|s| s.parse::<BigUint>().map_err(|_| Error::invalid(format!("not a prime: {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    PlaceSet::new(primes)
}

fn rfunctions(text: &str) -> Result<Vec<RationalFunction>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|part| match part.split_once('|') {
            Some((n, d)) => RationalFunction::new(poly(n)?, poly(d)?),
            None => RationalFunction::poly(poly(part)?),
        })
        .collect()
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn scan_options(scan: &ScanArgs, cap: usize) -> ScanOptions {
    ScanOptions {
        workers: scan.workers,
        enumeration_cap: cap,
        override_hypotheses: scan.override_hypotheses,
        ..ScanOptions::default()
    }
}

pub fn run(cli: Cli) -> Result<Output> {
    let mut ctx = Ctx {
        precision: precision(cli.precision)?,
        cap: cli.enumeration_cap.unwrap_or(DEFAULT_ENUMERATION_CAP),
        notes: Vec::new(),
    };
    let name = cli.command.name();
    let is_scan = matches!(cli.command, Command::Scan12 { .. } | Command::Scan13 { .. } | Command::Scan15 { .. });
    if cli.format == Format::Csv && !is_scan {
        return Err(Error::invalid(format!("csv output is only available for scans, not {name}")));
    }
    let body = match &cli.command {
        Command::Height { x } => {
            let x = parse_rational(x.trim())?;
            let h = height(&x)?;
            json!({
                "x": q(&x),
                "height": h.value,
                "log_of": h.log_of.as_ref().map(ToString::to_string),
            })
        }
        Command::Snorm { b, places: p } => {
            let b = one_factored(b)?;
            let s = places(p)?;
            let (ps, qs) = p_s_q_s(&s);
            json!({
                "b": q(&b.to_rational()),
                "places": to_value(&s),
                "s_norm": q(&s_norm(&b, &s)),
                "p_s": ps.to_string(),
                "q_s": qs.to_string(),
                "s_integer": s.is_s_integer(&b),
                "s_unit": s.is_s_unit(&b),
            })
        }
        Command::Enum { height_cap, count_only } => {
            let h = ctx.height("height_cap", height_cap)?;
            let xs = enumerate_bounded_height_with_cap(&h, ctx.cap)?;
            let mut body = json!({ "height_cap": to_value(&h), "count": xs.len() });
            if !count_only {
                body["rationals"] = Value::Array(xs.iter().map(q).collect());
            }
            body
        }
        Command::Polyinfo { f } => {
            let f = poly(f)?;
            let heights = poly_heights(&f)?;
            let sq = squarefree_decompose(&f)?;
            json!({
                "f": to_value(&f),
                "display": f.to_string(),
                "degree": f.degree(),
                "heights": to_value(&heights),
                "squarefree": to_value(&sq),
                "radical": to_value(sq.radical()),
                "distinct_roots": sq.distinct_root_count(),
                "discriminant": discriminant(&f).ok().as_ref().map(q),
                "bad_reduction_primes": bad_reduction_primes(&f)?.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        }
        Command::Deptest { alphas } => {
            let xs = factored(alphas)?;
            let w = dependence_absolute(&xs)?;
            json!({
                "alphas": xs.iter().map(|x| q(&x.to_rational())).collect::<Vec<_>>(),
                "dependent": w.is_some(),
                "k": w.as_ref().map(|w| w.k.clone()),
            })
        }
        Command::Gmember { x, gamma: g } => {
            let x = one_factored(x)?;
            let g = gamma(&g.gamma)?;
            let c = gamma_membership(&x, &g)?;
            json!({ "x": q(&x.to_rational()), "gamma": to_value(&g), "member": c.is_some(), "c": c })
        }
        Command::Gdivmember { x, gamma: g } => {
            let x = one_factored(x)?;
            let g = gamma(&g.gamma)?;
            let v = gamma_div_membership(&x, &g)?;
            json!({ "x": q(&x.to_rational()), "gamma": to_value(&g), "result": to_value(&v) })
        }
        Command::Epsmember { x, gamma: g, epsilon } => {
            let x = one_factored(x)?;
            let g = gamma(&g.gamma)?;
            let eps = ctx.height("epsilon", epsilon)?;
            let v = eps_membership_sandwich(&x, &g, &eps)?;
            json!({ "x": q(&x.to_rational()), "gamma": to_value(&g), "epsilon": to_value(&eps), "result": to_value(&v) })
        }
        Command::Depgamma { alphas, gamma: g, epsilon } => {
            let xs = factored(alphas)?;
            let g = gamma(&g.gamma)?;
            let alphas: Vec<Value> = xs.iter().map(|x| q(&x.to_rational())).collect();
            match epsilon {
                Some(e) => {
                    let eps = ctx.height("epsilon", e)?;
                    let v = dependence_mod_gamma_eps(&xs, &g, &eps)?;
                    json!({ "alphas": alphas, "gamma": to_value(&g), "epsilon": to_value(&eps), "result": to_value(&v) })
                }
                None => {
                    let w = dependence_mod_gamma_div(&xs, &g)?;
                    json!({ "alphas": alphas, "gamma": to_value(&g), "dependent": w.is_some(), "witness": to_value(&w) })
                }
            }
        }
        Command::Rfindep { fs, gamma: g } => {
            let fs = rfunctions(fs)?;
            let g = gamma(&g.gamma)?;
            let w = rf_independence_mod_gamma(&fs, &g)?;
            let verified = w.as_ref().map(|w| verify_rf_witness(&fs, &g, w));
            json!({
                "functions": fs.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "gamma": to_value(&g),
                "independent": w.is_none(),
                "witness": to_value(&w),
                "verified": verified,
            })
        }
        Command::Lfcheck { f1, f2 } => {
            let (f1, f2) = (poly(f1)?, poly(f2)?);
            let r = lf_generation_check(&f1, &f2)?;
            json!({ "f1": f1.to_string(), "f2": f2.to_string(), "generated": r.is_some(), "relation": to_value(&r) })
        }
        Command::Stbound { n, s, d, hf, disc, ps, nsb } => {
            let inputs = BoundInputs {
                n: *n,
                s: *s,
                d: *d,
                h_f: ctx.height("hf", hf)?,
                abs_disc: parse_rational(disc.trim())?,
                p_s: parse_rational(ps.trim())?,
                n_s_b: parse_rational(nsb.trim())?,
            };
            to_value(compute_constants_with(&inputs, ctx.precision)?)
        }
        Command::Hsearch(a) => {
            let (f, b, s, h) = hyper_inputs(&mut ctx, a)?;
            let r = hyperelliptic_search_with_cap(&f, &b, &s, &h, a.m_max, ctx.cap)?;
            json!({
                "f": f.to_string(),
                "b": q(&b),
                "places": to_value(&s),
                "height_cap": to_value(&h),
                "m_max": a.m_max,
                "primitive": r.primitive().iter().map(|(x, y, m)| json!([q(x), q(y), m])).collect::<Vec<_>>(),
                "search": to_value(&r),
            })
        }
        Command::Validate(a) => {
            let (f, b, s, h) = hyper_inputs(&mut ctx, a)?;
            let r = validate_bound(&f, &b, &s, &h, a.m_max)?;
            json!({
                "f": f.to_string(),
                "b": q(&b),
                "places": to_value(&s),
                "height_cap": to_value(&h),
                "m_max": a.m_max,
                "validation": to_value(&r),
            })
        }
        Command::Sets { polys: p, gamma: g, epsilon } => {
            let eps = ctx.height("epsilon", epsilon)?;
            let inst = InstanceSpec::new(polys(p)?, gamma(&g.gamma)?, eps, HeightBound::zero())?;
            let r = s_f_gamma_eps_with_cap(&inst, ctx.cap)?;
            json!({
                "polys": to_value(&inst.polys),
                "gamma": to_value(&inst.gamma),
                "epsilon": to_value(&inst.epsilon),
                "places": to_value(&r),
            })
        }
        Command::Scan12 { polys: p, gamma: g, epsilon, height_cap, scan } => {
            let inst = InstanceSpec::new(
                polys(p)?,
                gamma(&g.gamma)?,
                ctx.height("epsilon", epsilon)?,
                ctx.height("height_cap", height_cap)?,
            )?;
            let r = scan_theorem12(&inst, &scan_options(scan, ctx.cap))?;
            return Ok(scan_output(r, cli.format, name, &ctx, cli.seed));
        }
        Command::Scan13 {
            f,
            gamma: g,
            epsilon,
            window,
            m_max,
            height_cap,
            iterate_height_cap,
            periodicity_steps,
            scan,
        } => {
            let eps = ctx.height("epsilon", epsilon)?;
            let h = ctx.height("height_cap", height_cap)?;
            let opts = ScanOptions {
                iterate_height_cap: *iterate_height_cap,
                periodicity_steps: *periodicity_steps,
                ..scan_options(scan, ctx.cap)
            };
            let r = scan_corollary13(&poly(f)?, &gamma(&g.gamma)?, &eps, *window, *m_max, &h, &opts)?;
            return Ok(scan_output(r, cli.format, name, &ctx, cli.seed));
        }
        Command::Scan15 { f1, f2, gamma: g, epsilon, height_cap, scan } => {
            let eps = ctx.height("epsilon", epsilon)?;
            let h = ctx.height("height_cap", height_cap)?;
            let r = scan_theorem15(&poly(f1)?, &poly(f2)?, &gamma(&g.gamma)?, &eps, &h, &scan_options(scan, ctx.cap))?;
            return Ok(scan_output(r, cli.format, name, &ctx, cli.seed));
        }
    };
    Ok(Output::Json(envelope(name, body, &ctx, cli.seed)))
}

fn hyper_inputs(ctx: &mut Ctx, a: &HyperArgs) -> Result<(Poly, Rational, PlaceSet, HeightBound)> {
    Ok((poly(&a.f)?, parse_rational(a.b.trim())?, places(&a.places)?, ctx.height("height_cap", &a.height_cap)?))
}

fn scan_output(r: ScanReport, format: Format, name: &str, ctx: &Ctx, seed: Option<u64>) -> Output {
    match format {
        Format::Csv => Output::Text(r.to_csv()),
        Format::Json => Output::Json(envelope(name, to_value(&r), ctx, seed)),
    }
}

/// Adds the command name, version stamp, seed and notes to a report.
fn envelope(name: &str, body: Value, ctx: &Ctx, seed: Option<u64>) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(name.into()));
    match body {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("result".into(), other);
        }
    }
    map.insert("version".into(), Value::String(muldep::VERSION.into()));
    if let Some(s) = seed {
        map.insert("seed".into(), Value::from(s));
    }
    if !ctx.notes.is_empty() {
        map.insert("notes".into(), to_value(&ctx.notes));
    }
    Value::Object(map)
}
