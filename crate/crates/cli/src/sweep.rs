use arith_torsion::asymptotics::{parse_rational, precision, predict_theorem2, GeometryInput, Theorem2Outcome};
use arith_torsion::complex::{files, lens_complex, specialize, CoeffModule, GroupRingComplex, SpecializeOptions};
use arith_torsion::linalg::{IntMatrix, Rational};
use arith_torsion::reps::{dual_sym_power_lattice, sym_power_lattice, HighestWeight, SchurLattice};
use arith_torsion::torsion::reidemeister_torsion_with;
use arith_torsion::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::SweepArgs;
use crate::run::parse_pair;
use crate::{in_file, read_file, CliError};

/// One line of sweep output. Columns that do not apply are left empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub seed: u64,
    pub m: i64,
    pub rank: Option<usize>,
    pub acyclic: Option<bool>,
    pub free_ranks: String,
    pub torsion_orders: String,
    pub log_alternating_product: String,
    pub torsion_log: String,
    pub prediction_pi_coefficient: String,
    pub prediction: String,
    pub error: String,
}

/// Renders rows as CSV, header first. An empty slice yields just the header.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record([
            "seed",
            "m",
            "rank",
            "acyclic",
            "free_ranks",
            "torsion_orders",
            "log_alternating_product",
            "torsion_log",
            "prediction_pi_coefficient",
            "prediction",
            "error",
        ])
        .expect("in-memory write");
    }
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

enum Recipe {
    Sym,
    DualSym,
    SchurA2(i64, i64),
    LensZeta,
}

fn parse_recipe(s: &str) -> Result<Recipe, CliError> {
    match s {
        "sym" => Ok(Recipe::Sym),
        "dual-sym" => Ok(Recipe::DualSym),
        "lens-zeta" => Ok(Recipe::LensZeta),
        _ => match s.strip_prefix("schur-a2:") {
            Some(t) => {
                let (t1, t2) = parse_pair(t, "schur-a2 weight")?;
                if t1 < 0 || t2 < 0 {
                    return Err(Error::NonDominant(format!("A2:{t1},{t2}")).into());
                }
                Ok(Recipe::SchurA2(t1, t2))
            }
            None => Err(Error::Invalid(format!(
                "unknown recipe {s:?}; expected sym, dual-sym, schur-a2:t1,t2 or lens-zeta"
            ))
            .into()),
        },
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Core(Error::parse(1, 1, format!("--m should be `start..end`, got {s:?}")));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

struct Family {
    recipe: Recipe,
    complex: Option<GroupRingComplex>,
    gens: Vec<IntMatrix>,
    q: i64,
    geom: Option<GeometryInput>,
    opts: SpecializeOptions,
    schur_cap: usize,
    digits: usize,
}

impl Family {
    /// The SL_3 weight whose m-th multiple this row realizes, when the
    /// generators act on Z^3.
    fn weight(&self) -> Option<HighestWeight> {
        let three = self.gens.first().is_some_and(|g| g.rows() == 3);
        let (t1, t2) = match self.recipe {
            Recipe::Sym if three => (1, 0),
            Recipe::DualSym if three => (0, 1),
            Recipe::SchurA2(t1, t2) => (t1, t2),
            _ => return None,
        };
        HighestWeight::a2(t1, t2).ok()
    }

    fn row(&self, seed: u64, m: i64) -> SweepRow {
        let mut row = SweepRow {
            seed,
            m,
            ..Default::default()
        };
        if let Err(e) = self.fill(&mut row) {
            row.error = e.to_string();
        }
        row
    }

    fn fill(&self, row: &mut SweepRow) -> arith_torsion::Result<()> {
        let m = row.m;
        let mu = usize::try_from(m).map_err(|_| Error::Invalid(format!("m = {m} is negative")))?;
        let (cx, module): (GroupRingComplex, CoeffModule) = match self.recipe {
            Recipe::LensZeta => lens_complex(mu, self.q)?,
            _ => {
                let module = match self.recipe {
                    Recipe::Sym => sym_power_lattice(&self.gens, mu)?,
                    Recipe::DualSym => dual_sym_power_lattice(&self.gens, mu)?,
                    Recipe::SchurA2(t1, t2) => {
                        let l1 = (m * (t1 + t2)) as usize;
                        let l2 = (m * t2) as usize;
                        SchurLattice::with_cap((l1, l2), self.schur_cap)?.module(&self.gens)?
                    }
                    Recipe::LensZeta => unreachable!(),
                };
                (self.complex.clone().expect("checked in run_sweep"), module)
            }
        };
        row.rank = Some(module.rank());
        let cochain = specialize(&cx, &module, self.opts)?;
        let h = cochain.cohomology()?;
        row.acyclic = Some(h.is_acyclic());
        row.free_ranks = join(h.degrees.iter().map(|d| d.free_rank.to_string()));
        row.torsion_orders = join(h.degrees.iter().map(|d| d.torsion_order.to_string()));
        row.log_alternating_product =
            precision::scaled_ln(&Rational::from_integer(1.into()), &h.alternating_torsion(), self.digits);
        if h.is_acyclic() {
            row.torsion_log = reidemeister_torsion_with(&cochain, self.digits)?.log_t;
        }
        if let (Some(g), Some(w)) = (&self.geom, self.weight()) {
            if !w.is_theta_fixed() {
                if let Theorem2Outcome::Predicted { value, .. } = predict_theorem2(g, &w, m, self.digits)? {
                    row.prediction_pi_coefficient = value.pi_coefficient.to_string();
                    row.prediction = value.decimal;
                }
            }
        }
        Ok(())
    }
}

fn join(it: impl Iterator<Item = String>) -> String {
    it.collect::<Vec<_>>().join(";")
}

fn read_gens(path: &std::path::Path) -> Result<Vec<IntMatrix>, CliError> {
    let text = read_file(path)?;
    let parsed: arith_torsion::Result<Vec<Vec<Vec<i64>>>> =
        serde_json::from_str(&text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()));
    let rows = in_file(path, parsed)?;
    let mut gens = Vec::new();
    for g in rows {
        let m = IntMatrix::try_from_rows(g.into_iter().map(|r| r.into_iter().map(Into::into).collect()).collect());
        gens.push(in_file(path, m)?);
    }
    Ok(gens)
}

/// Builds the family once, then computes each m independently in parallel.
/// Row order follows m regardless of scheduling.
pub(crate) fn run_sweep(a: &SweepArgs, seed: u64, digits: usize) -> Result<String, CliError> {
    let recipe = parse_recipe(&a.recipe)?;
    let (lo, hi) = parse_range(&a.m)?;
    let (complex, gens) = match recipe {
        Recipe::LensZeta => (None, Vec::new()),
        _ => {
            let (Some(cp), Some(gp)) = (&a.complex, &a.gens) else {
                return Err(Error::Invalid(format!("recipe {} needs --complex and --gens", a.recipe)).into());
            };
            let cx = in_file(cp, files::complex_from_json(&read_file(cp)?))?;
            (Some(cx), read_gens(gp)?)
        }
    };
    let geom = match (&a.vol_x, &a.vol_xd) {
        (Some(x), Some(xd)) => Some(GeometryInput::new(parse_rational(x)?, parse_rational(xd)?, None, None)?),
        (None, None) => None,
        _ => return Err(Error::Invalid("give both --volX and --volXd, or neither".into()).into()),
    };
    let family = Family {
        recipe,
        complex,
        gens,
        q: a.q,
        geom,
        opts: SpecializeOptions {
            convention: a.convention.into(),
            check_dd: a.check_dd,
        },
        schur_cap: a.schur_cap,
        digits,
    };
    let compute = || -> Vec<SweepRow> { (lo..=hi).into_par_iter().map(|m| family.row(seed, m)).collect() };
    let rows = match a.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(compute),
        None => compute(),
    };
    Ok(sweep_csv(&rows))
}
