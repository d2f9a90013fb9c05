use std::path::Path;
use std::time::Instant;

use arith_torsion::asymptotics::{
    c_pq, c_pq_sign, constant_c_lambda, fit_growth, parse_rational, precision, predict_liminf_bound, predict_theorem1,
    predict_theorem2, so_rank, GeometryInput, GrowthSeries, LiminfKind, PiValue,
};
use arith_torsion::complex::{files, lens_complex, specialize, CochainComplex, SpecializeOptions};
use arith_torsion::linalg::format::{from_text, to_text};
use arith_torsion::linalg::{Rational, SnfOptions};
use arith_torsion::reps::{
    printed_sl3_leading_coefficient, rank_degree, rho_m_rank, rho_m_rank_leading, sl3_leading_coefficient,
    weyl_dim_leading, HighestWeight, RootSystem,
};
use arith_torsion::serde_util;
use arith_torsion::torsion::{random_acyclic_with, reidemeister_torsion_with, verify_cochain, RandomOptions};
use arith_torsion::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, ComplexArgs, ConstantsArgs, DimsArgs, FitArgs, LensArgs, RandomArgs};
use crate::{in_file, read_file, sweep, write_file, CliError, JobSpec, Outcome, Output, ResultRecord, TOOL, VERSION};

/// Executes a job. Deterministic in `(job, inputs)`; timing is attached only
/// when asked for, so that default output is byte-identical across runs.
pub fn run(job: &JobSpec, timing: bool) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let digits = precision::digits_from_env()?;
    let (result, exit_code) = match &job.command {
        Command::Cohomology(a) => (cohomology(a)?, 0),
        Command::Torsion(a) => (torsion(a, digits)?, 0),
        Command::Verify(a) => verify(a, digits)?,
        Command::Dims(a) => (dims(a)?, 0),
        Command::Constants(a) => (constants(a, digits)?, 0),
        Command::Fit(a) => (fit(a)?, 0),
        Command::Lens(a) => (lens(a)?, 0),
        Command::Random(a) => random(a, job.seed, digits)?,
        Command::Sweep(a) => {
            let csv = sweep::run_sweep(a, job.seed, digits)?;
            return Ok(Outcome {
                output: Output::Csv(csv),
                exit_code: 0,
            });
        }
    };
    let record = ResultRecord {
        tool: TOOL.into(),
        version: VERSION.into(),
        job: job.clone(),
        result,
        timing_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    Ok(Outcome {
        output: Output::Record(Box::new(record)),
        exit_code,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

#[derive(Serialize)]
struct Exact(#[serde(with = "serde_util::rational")] Rational);

pub(crate) fn parse_pair(s: &str, what: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Core(Error::parse(1, 1, format!("{what} should be two integers `a,b`, got {s:?}")));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

pub(crate) fn parse_weight(s: &str) -> Result<HighestWeight, CliError> {
    Ok(s.parse::<HighestWeight>()?)
}

fn snf_options(a: &ComplexArgs) -> SnfOptions {
    SnfOptions {
        bit_cap: a.bit_cap,
        strategy: a.snf.into(),
    }
}

fn specialize_options(a: &ComplexArgs) -> SpecializeOptions {
    SpecializeOptions {
        convention: a.convention.into(),
        check_dd: a.check_dd,
    }
}

fn lens_pq(s: &str) -> Result<(usize, i64), CliError> {
    let (p, q) = parse_pair(s, "--lens")?;
    let p = usize::try_from(p).map_err(|_| Error::Invalid(format!("p = {p} is negative")))?;
    Ok((p, q))
}

/// Builds the integral cochain complex selected by the arguments.
pub(crate) fn load_cochain(a: &ComplexArgs) -> Result<CochainComplex, CliError> {
    if let Some(l) = &a.lens {
        let (p, q) = lens_pq(l)?;
        let (cx, m) = lens_complex(p, q)?;
        return Ok(specialize(&cx, &m, specialize_options(a))?);
    }
    if let (Some(cpath), Some(mpath)) = (&a.complex, &a.module) {
        let cx = in_file(cpath, files::complex_from_json(&read_file(cpath)?))?;
        let m = in_file(mpath, files::module_from_json(&read_file(mpath)?))?;
        return Ok(specialize(&cx, &m, specialize_options(a))?);
    }
    if !a.maps.is_empty() {
        let mut maps = Vec::new();
        for p in &a.maps {
            maps.push(in_file(p, from_text(&read_file(p)?))?);
        }
        let mut dims = vec![maps[0].cols()];
        dims.extend(maps.iter().map(|d| d.rows()));
        let cx = CochainComplex::new(dims, maps)?;
        if a.check_dd {
            cx.check_dd()?;
        }
        return Ok(cx);
    }
    Err(Error::Invalid("give --lens p,q, --complex with --module, or --maps".into()).into())
}

fn cohomology(a: &ComplexArgs) -> Result<Value, CliError> {
    let cx = load_cochain(a)?;
    let h = cx.cohomology_with(&snf_options(a))?;
    Ok(json!({
        "dims": cx.dims(),
        "acyclic": h.is_acyclic(),
        "euler_characteristic": h.euler_characteristic(),
        "alternating_torsion": to_value(&Exact(h.alternating_torsion())),
        "degrees": to_value(&h.degrees),
    }))
}

fn torsion(a: &ComplexArgs, digits: usize) -> Result<Value, CliError> {
    let cx = load_cochain(a)?;
    let t = reidemeister_torsion_with(&cx, digits)?;
    Ok(json!({ "dims": cx.dims(), "torsion": to_value(&t) }))
}

fn verify(a: &ComplexArgs, digits: usize) -> Result<(Value, i32), CliError> {
    let cx = load_cochain(a)?;
    let report = verify_cochain(&cx, &snf_options(a), digits)?;
    let code = if report.equal { 0 } else { crate::EXIT_VERIFY_FAILED };
    Ok((json!({ "dims": cx.dims(), "report": to_value(&report) }), code))
}

fn dims(a: &DimsArgs) -> Result<Value, CliError> {
    if let Some(rho) = &a.rho {
        let (n, d) = parse_pair(rho, "--rho")?;
        let (n, d) = (
            usize::try_from(n).map_err(|_| Error::Invalid("n must be positive".into()))?,
            u32::try_from(d).map_err(|_| Error::Invalid("d must be positive".into()))?,
        );
        let rank = rho_m_rank(n, d, a.m)?;
        return Ok(json!({
            "n": n,
            "d": d,
            "m": a.m,
            "rank": rank.to_string(),
            "degree": rank_degree(n, d),
            "leading_coefficient": to_value(&Exact(rho_m_rank_leading(n, d)?)),
        }));
    }
    let w = parse_weight(a.weight.as_deref().expect("clap requires --weight or --rho"))?;
    let scaled = w.scale(a.m)?;
    let (degree, lead) = weyl_dim_leading(&w.root_system().data(), &w.to_ambient())?;
    let mut out = json!({
        "weight": w.to_string(),
        "m": a.m,
        "dim": scaled.dim().to_string(),
        "theta_fixed": w.is_theta_fixed(),
        "theta_twist": w.theta_twist().to_string(),
        "growth_degree": degree,
        "leading_coefficient": to_value(&Exact(lead.clone())),
    });
    if w.root_system() == RootSystem::A2 {
        let (t1, t2) = (w.coefficients()[0], w.coefficients()[1]);
        let printed = printed_sl3_leading_coefficient(t1, t2);
        let weyl = sl3_leading_coefficient(t1, t2);
        out["m3_coefficient_weyl"] = to_value(&Exact(weyl.clone()));
        out["m3_coefficient_alternative"] = to_value(&Exact(printed.clone()));
        out["m3_coefficients_agree"] = json!(printed == weyl);
    }
    Ok(out)
}

fn geometry(vol_x: &str, vol_xd: &str, pq: Option<(u32, u32)>) -> Result<GeometryInput, CliError> {
    let vx = parse_rational(vol_x)?;
    let vd = parse_rational(vol_xd)?;
    Ok(GeometryInput::new(vx, vd, pq.map(|x| x.0), pq.map(|x| x.1))?)
}

fn constants(a: &ConstantsArgs, digits: usize) -> Result<Value, CliError> {
    if a.sl3 {
        let g = geometry(&a.vol_x, &a.vol_xd, None)?;
        let fundamental = HighestWeight::a2(1, 0)?;
        let mut out = json!({
            "branch": "sl3",
            "c_fundamental": to_value(&Exact(constant_c_lambda(&fundamental).expect("fundamental weight"))),
            "liminf_bound": to_value(&predict_liminf_bound(LiminfKind::Sl3, &g, digits)?),
        });
        if let Some(ws) = &a.weight {
            let w = parse_weight(ws)?;
            out["weight"] = json!(w.to_string());
            out["c_lambda"] = constant_c_lambda(&w).map_or(Value::Null, |c| to_value(&Exact(c)));
            if let Some(m) = a.m {
                out["m"] = json!(m);
                out["dim"] = json!(w.scale(m)?.dim().to_string());
                out["theorem2"] = to_value(&predict_theorem2(&g, &w, m, digits)?);
            }
        }
        return Ok(out);
    }
    let (p, q) = parse_pair(a.so.as_deref().expect("clap requires --sl3 or --so"), "--so")?;
    let (p, q) = (
        u32::try_from(p).map_err(|_| Error::Invalid("p must be positive".into()))?,
        u32::try_from(q).map_err(|_| Error::Invalid("q must be positive".into()))?,
    );
    let g = geometry(&a.vol_x, &a.vol_xd, Some((p, q)))?;
    let c = c_pq(p, q, &g.vol_xd)?;
    let mut out = json!({
        "branch": "so",
        "p": p,
        "q": q,
        "n": so_rank(p, q)?,
        "d": a.d,
        "c_pq": to_value(&PiValue::new(c.clone(), digits)),
        "c_pq_sign": c_pq_sign(p, q)?,
        "liminf_bound": to_value(&predict_liminf_bound(LiminfKind::So { d: a.d }, &g, digits)?),
        "liminf_bound_note": "derived: |C_pq| * vol_X * leading coefficient of rk(M_m)",
    });
    if let Some(m) = a.m {
        out["m"] = json!(m);
        out["rank"] = json!(rho_m_rank(so_rank(p, q)?, a.d, m)?.to_string());
        out["theorem1"] = to_value(&predict_theorem1(&g, a.n, a.d, m, digits)?);
    }
    Ok(out)
}

/// Reads `(m, value)` pairs from a CSV with a header; rows with an empty
/// value are skipped.
pub(crate) fn read_series(path: &Path, m_col: &str, v_col: &str) -> Result<GrowthSeries, CliError> {
    let text = read_file(path)?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(1, |p| p.line() as usize);
        CliError::InFile {
            path: path.to_path_buf(),
            source: Error::parse(line, 1, e.to_string()),
        }
    };
    let headers = rdr.headers().map_err(csv_err)?.clone();
    let find = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| CliError::InFile {
            path: path.to_path_buf(),
            source: Error::parse(1, 1, format!("no column named {name:?}")),
        })
    };
    let (mi, vi) = (find(m_col)?, find(v_col)?);
    let mut points = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let v = rec.get(vi).unwrap_or("").trim();
        if v.is_empty() {
            continue;
        }
        let m: i64 = rec.get(mi).unwrap_or("").trim().parse().map_err(|_| CliError::InFile {
            path: path.to_path_buf(),
            source: Error::parse(line, mi + 1, "m is not an integer"),
        })?;
        let value = parse_rational(v).map_err(|_| CliError::InFile {
            path: path.to_path_buf(),
            source: Error::parse(line, vi + 1, format!("{v:?} is not a number")),
        })?;
        points.push((m, value));
    }
    in_file(path, GrowthSeries::new(points))
}

fn fit(a: &FitArgs) -> Result<Value, CliError> {
    let series = read_series(&a.input, &a.m_column, &a.column)?;
    let report = fit_growth(&series, a.degree)?;
    Ok(json!({ "points": series.len(), "fit": to_value(&report) }))
}

fn lens(a: &LensArgs) -> Result<Value, CliError> {
    let (cx, m) = lens_complex(a.p, a.q)?;
    let ctext = files::complex_to_json(&cx);
    let mtext = files::module_to_json(&m);
    if let Some(p) = &a.complex_out {
        write_file(p, &(ctext.clone() + "\n"))?;
    }
    if let Some(p) = &a.module_out {
        write_file(p, &(mtext.clone() + "\n"))?;
    }
    Ok(json!({
        "p": a.p,
        "q": a.q,
        "complex": serde_json::from_str::<Value>(&ctext).expect("valid json"),
        "module": serde_json::from_str::<Value>(&mtext).expect("valid json"),
    }))
}

fn random(a: &RandomArgs, seed: u64, digits: usize) -> Result<(Value, i32), CliError> {
    let shape: Vec<usize> = a
        .shape
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::parse(1, 1, format!("--shape should be comma-separated ranks, got {:?}", a.shape)))?;
    let opts = RandomOptions {
        max_pivot: a.max_pivot,
        ..Default::default()
    };
    let cx = random_acyclic_with(&shape, seed, &opts)?;
    let texts: Vec<String> = cx.maps().iter().map(to_text).collect();
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io {
            path: dir.clone(),
            message: e.to_string(),
        })?;
        for (q, t) in texts.iter().enumerate() {
            write_file(&dir.join(format!("d{q}.txt")), t)?;
        }
    }
    let mut out = json!({ "shape": shape, "seed": seed, "maps": texts });
    let mut code = 0;
    if a.verify {
        let report = verify_cochain(&cx, &SnfOptions::default(), digits)?;
        if !report.equal {
            code = crate::EXIT_VERIFY_FAILED;
        }
        out["report"] = to_value(&report);
    }
    Ok((out, code))
}
