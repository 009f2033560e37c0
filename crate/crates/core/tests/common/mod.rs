#![allow(dead_code)]

use ortho_bounds_core::{BigReal, FamilyId, FamilySpec};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const P: usize = 256;

pub fn v(s: &str) -> BigReal {
    BigReal::parse(s, P).unwrap()
}

pub fn vp(s: &str, p: usize) -> BigReal {
    BigReal::parse(s, p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `2^(-prec + 64)`.
pub fn identity_tol(prec: usize) -> BigReal {
    BigReal::one(prec).mul_pow2(-(prec as i64) + 64)
}

/// One representative parameter point per family.
pub fn one_per_family() -> Vec<FamilySpec> {
    vec![
        FamilySpec::laguerre(v("-0.5")).unwrap(),
        FamilySpec::little_q_jacobi(v("0.5"), v("1"), v("0.6")).unwrap(),
        FamilySpec::little_q_laguerre(v("0.5"), v("0.6")).unwrap(),
        FamilySpec::alt_q_charlier(v("0.5"), v("0.55")).unwrap(),
        FamilySpec::stieltjes_wigert(v("0.5")).unwrap(),
        FamilySpec::discrete_q_hermite_ii(v("0.5")).unwrap(),
    ]
}

/// Three parameter points per family.
pub fn grid() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for a in ["-0.5", "2", "10"] {
        out.push(FamilySpec::laguerre(v(a)).unwrap());
    }
    for (a, b, q) in [("0.5", "1", "0.6"), ("0.5", "-10", "0.6"), ("0.9", "0.5", "0.3")] {
        out.push(FamilySpec::little_q_jacobi(v(a), v(b), v(q)).unwrap());
    }
    for (a, q) in [("0.5", "0.6"), ("1.5", "0.4"), ("0.2", "0.8")] {
        out.push(FamilySpec::little_q_laguerre(v(a), v(q)).unwrap());
    }
    for (a, q) in [("0.5", "0.55"), ("10", "0.9"), ("100", "0.45")] {
        out.push(FamilySpec::alt_q_charlier(v(a), v(q)).unwrap());
    }
    for q in ["0.5", "0.7", "0.9"] {
        out.push(FamilySpec::stieltjes_wigert(v(q)).unwrap());
    }
    for q in ["0.5", "0.8", "0.95"] {
        out.push(FamilySpec::discrete_q_hermite_ii(v(q)).unwrap());
    }
    out
}

/// A random evaluation point spread over the region where `p_n` lives.
pub fn random_point(fam: &FamilySpec, n: usize, r: &mut impl Rng, prec: usize) -> BigReal {
    let u: f64 = r.gen_range(0.0..1.0);
    let x = match fam.id() {
        FamilyId::Laguerre => u * (4.0 * n as f64 + 20.0),
        FamilyId::LittleQJacobi | FamilyId::LittleQLaguerre | FamilyId::AltQCharlier => u,
        FamilyId::StieltjesWigert => {
            let q = fam.q(prec).to_f64();
            let top = q.powi(-2 * n as i32 - 2).ln();
            (u * top).exp() * 0.5
        }
        FamilyId::DiscreteQHermiteII => {
            let q = fam.q(prec).to_f64();
            let top = q.powi(-(n as i32) - 1).ln();
            let s = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
            s * (u * top).exp() * 0.5
        }
    };
    BigReal::from_f64(x, prec)
}
