use serde::{Deserialize, Serialize};

use crate::asymptotics::precision;
use crate::complex::{specialize, CoeffModule, CochainComplex, DegreeCohomology, GroupRingComplex, SpecializeOptions};
use crate::error::{Error, Result};
use crate::linalg::{Rational, SnfOptions};
use crate::torsion::laplacian::{reidemeister_torsion_with, TorsionValue};

/// Both sides of `T = Π_q |H^q|^{(-1)^{q+1}}`, computed independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop21Report {
    pub degrees: Vec<DegreeCohomology>,
    /// Alternating product of cohomology orders (Smith normal form side).
    #[serde(with = "crate::serde_util::rational")]
    pub cohomology_product: Rational,
    /// Laplacian-determinant side.
    pub torsion: TorsionValue,
    pub equal: bool,
}

pub fn verify_cochain(cx: &CochainComplex, snf: &SnfOptions, digits: usize) -> Result<Prop21Report> {
    if let Some(&degree) = cx.non_acyclic_degrees().first() {
        return Err(Error::NotAcyclic { degree });
    }
    let (h, torsion) = rayon::join(|| cx.cohomology_with(snf), || reidemeister_torsion_with(cx, digits));
    let (h, torsion) = (h?, torsion?);
    let product = h.alternating_torsion();
    let equal = torsion.t_squared == &product * &product;
    Ok(Prop21Report {
        degrees: h.degrees,
        cohomology_product: product,
        torsion,
        equal,
    })
}

pub fn verify_prop21(cx: &GroupRingComplex, m: &CoeffModule, opts: SpecializeOptions) -> Result<Prop21Report> {
    let co = specialize(cx, m, opts)?;
    verify_cochain(&co, &SnfOptions::default(), precision::digits_from_env()?)
}
