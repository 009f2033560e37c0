//! Closed-form inner bounds for the extreme zeros, and their verification
//! against computed zeros (direction contracts and completed interlacing).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bigreal::BigReal;
use crate::christoffel::{build_mixed_recurrence, CSpec};
use crate::error::{Error, Result};
use crate::families::{FamilyId, FamilySpec};
use crate::poly::Poly;
use crate::zeros::{self, ZeroSet};

/// Which extreme zero a bound constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `value >= x_{n,1}`.
    UpperForSmallest,
    /// `value <= x_{n,n}`.
    LowerForLargest,
}

impl Direction {
    pub fn slug(self) -> &'static str {
        match self {
            Direction::UpperForSmallest => "upper_for_smallest",
            Direction::LowerForLargest => "lower_for_largest",
        }
    }
}

/// A bound value, or the reason the closed form does not apply.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Value(BigReal),
    Inapplicable(&'static str),
}

impl BoundValue {
    pub fn value(&self) -> Option<&BigReal> {
        match self {
            BoundValue::Value(v) => Some(v),
            BoundValue::Inapplicable(_) => None,
        }
    }
}

/// The mixed recurrence a bound comes from: `m`, and `c = x^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Construction {
    pub m: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub direction: Direction,
    pub value: BoundValue,
    pub source: &'static str,
    pub construction: Option<Construction>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub fam: FamilySpec,
    pub n: usize,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<&BigReal> {
        self.get(name).and_then(|e| e.value.value())
    }
}

/// Result of checking a report against computed zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct InterlacingReport {
    pub holds: bool,
    /// `(i, left, right)`: the `i`-th zero of `G g` is not inside
    /// `(x_{n,i+1}, x_{n,i+2})` (0-based `i`).
    pub violations: Vec<(usize, BigReal, BigReal)>,
    /// Zeros shared by `p_n` and `G g`, where strict interlacing cannot hold.
    pub common_zeros: Vec<BigReal>,
    /// `(entry, bound, extreme zero)` for direction-contract failures.
    pub bound_failures: Vec<(String, BigReal, BigReal)>,
}

fn r(v: i64, prec: usize) -> BigReal {
    BigReal::from_i64(v, prec)
}

/// Rising factorial `(a)_k`.
fn rising(a: &BigReal, k: usize) -> BigReal {
    let prec = a.prec();
    (0..k).fold(BigReal::one(prec), |acc, i| acc * (a + r(i as i64, prec)))
}

fn require_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::OutOfRange { what: "n", value: n as i64, min: min as i64, max: i64::MAX });
    }
    Ok(())
}

fn entry(
    name: &'static str,
    direction: Direction,
    value: BoundValue,
    source: &'static str,
    construction: Option<Construction>,
) -> BoundEntry {
    BoundEntry { name, direction, value, source, construction }
}

fn con(m: usize, k: usize) -> Option<Construction> {
    Some(Construction { m, k })
}

/// Both roots of `a x^2 + b x + c`, ascending, without subtractive
/// cancellation; `None` for complex roots.
pub fn stable_quadratic_roots(a: &BigReal, b: &BigReal, c: &BigReal) -> Option<(BigReal, BigReal)> {
    let prec = a.prec();
    let disc = b * b - r(4, prec) * a * c;
    if disc.is_negative() {
        return None;
    }
    let s = disc.sqrt()?;
    let big = if b.is_negative() { -b + &s } else { -b - &s }.mul_pow2(-1);
    if big.is_zero() {
        let z = BigReal::zero(prec);
        return Some((z.clone(), z));
    }
    let r1 = &big / a;
    let r2 = c / &big;
    Some(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}

fn extreme_root(p: &Poly, largest: bool) -> BoundValue {
    match zeros::low_degree_roots(p) {
        Ok(rs) if !rs.is_empty() => {
            BoundValue::Value(if largest { rs.last() } else { rs.first() }.expect("non-empty").clone())
        }
        _ => BoundValue::Inapplicable("no real zero"),
    }
}

/// `G_3^{(α+8)}` from the `m = 4`, `c = x^8` Laguerre mixed recurrence.
pub fn laguerre_g3_shift8(n: usize, alpha: &BigReal) -> Poly {
    let p = alpha.prec();
    let a = alpha;
    let nn = r(n as i64, p);
    let two_n_a1 = &nn * r(2, p) + a + r(1, p);
    let c3 = -((a + r(4, p))
        * &two_n_a1
        * (a * a + r(2, p) * a * &nn + r(2, p) * &nn * &nn + r(5, p) * a + r(2, p) * &nn + r(6, p)));
    let c2 = rising(&(a + r(3, p)), 3)
        * (r(3, p) * rising(&(a + r(1, p)), 2) + r(10, p) * &nn * (&nn + a + r(1, p)));
    let c1 = -(r(3, p) * rising(&(a + r(2, p)), 5) * &two_n_a1);
    let c0 = rising(&(a + r(1, p)), 7);
    Poly::new(vec![c0, c1, c2, c3])
}

/// `G_3^{(α)}` from the unshifted `m = 4` Laguerre mixed recurrence.
pub fn laguerre_g3_unshifted(n: usize, alpha: &BigReal) -> Poly {
    let p = alpha.prec();
    let a = alpha;
    let nn = r(n as i64, p);
    let c3 = -BigReal::one(p);
    let c2 = r(3, p) * (a + r(2, p) * &nn - r(3, p));
    let c1 = -(r(3, p) * a * a + r(10, p) * a * &nn + r(10, p) * &nn * &nn - r(15, p) * a - r(30, p) * &nn
        + r(18, p));
    let c0 = (a - r(3, p) + r(2, p) * &nn)
        * (a * a + r(2, p) * a * &nn + r(2, p) * &nn * &nn - r(3, p) * a - r(6, p) * &nn + r(2, p));
    Poly::new(vec![c0, c1, c2, c3])
}

/// `G_2^{(α+6)}` from the `m = 3`, `c = x^6` Laguerre mixed recurrence.
pub fn laguerre_g2_shift6(n: usize, alpha: &BigReal) -> Poly {
    let p = alpha.prec();
    let a = alpha;
    let nn = r(n as i64, p);
    let c2 = (a + r(3, p)) * (r(3, p) * &nn * (&nn + a + r(1, p)) + rising(&(a + r(1, p)), 2));
    let c1 = -(r(2, p) * rising(&(a + r(2, p)), 3) * (a + r(2, p) * &nn + r(1, p)));
    let c0 = rising(&(a + r(1, p)), 5);
    Poly::new(vec![c0, c1, c2])
}

/// Laguerre inner bounds: the two zeros of `G_2^{(α+6)}`, the smallest zero
/// of `G_3^{(α+8)}`, the largest zero of `G_3^{(α)}`, and the literature
/// upper bound `B_GM` restated in the paper.
pub fn laguerre_bounds(n: usize, alpha: &BigReal, prec: usize) -> Result<BoundReport> {
    let fam = FamilySpec::laguerre(alpha.with_prec(prec))?;
    require_n(n, 5)?;
    let p = prec;
    let a = &alpha.with_prec(p);
    let nn = r(n as i64, p);
    let den = r(3, p) * &nn * (&nn + a + r(1, p)) + rising(&(a + r(1, p)), 2);
    let ab = (a + r(2, p)) * (a + r(4, p));
    let centre = &ab * (a + r(2, p) * &nn + r(1, p));
    let rad = &ab
        * ((a * a + r(6, p) * a + r(17, p)) * (&nn * &nn + a * &nn + &nn)
            - (a + r(2, p)) * (a + r(1, p)) * (a + r(1, p)));
    let (b3m, b3p) = match rad.sqrt() {
        Some(s) => (
            BoundValue::Value((&centre - &s) / &den),
            BoundValue::Value((&centre + &s) / &den),
        ),
        None => (
            BoundValue::Inapplicable("negative discriminant"),
            BoundValue::Inapplicable("negative discriminant"),
        ),
    };
    let gm = (a + r(1, p)) * (a + r(2, p)) * (a + r(4, p)) * (r(2, p) * &nn + a + r(1, p))
        / ((a + r(1, p)) * (a + r(1, p)) * (a + r(2, p))
            + (r(5, p) * a + r(11, p)) * &nn * (&nn + a + r(1, p)));
    let entries = vec![
        entry("b3_minus", Direction::UpperForSmallest, b3m, "smaller zero of G_2 (m=3, c=x^6, alpha+6)", con(3, 6)),
        entry("b3_plus", Direction::LowerForLargest, b3p, "larger zero of G_2 (m=3, c=x^6, alpha+6)", con(3, 6)),
        entry(
            "b4_upper_x1",
            Direction::UpperForSmallest,
            extreme_root(&laguerre_g3_shift8(n, a), false),
            "smallest zero of G_3 (m=4, c=x^8, alpha+8)",
            con(4, 8),
        ),
        entry("b_gm", Direction::UpperForSmallest, BoundValue::Value(gm), "Gupta-Muldoon upper bound", None),
        entry(
            "b4_lower_xn",
            Direction::LowerForLargest,
            extreme_root(&laguerre_g3_unshifted(n, a), true),
            "largest zero of G_3 (m=4, c=1)",
            con(4, 0),
        ),
    ];
    Ok(BoundReport { fam, n, entries })
}

/// `B_2^{(αq^4, β)}`, the zero of the linear `G` from the `m = 2`, `c = x^4`
/// little q-Jacobi mixed recurrence (little q-Laguerre for `β = 0`).
pub fn little_qjacobi_upper_x1(n: usize, alpha: &BigReal, beta: &BigReal, q: &BigReal, prec: usize) -> Result<BigReal> {
    little_qjacobi_b2(n, alpha, beta, q, prec).map(|(_, v)| v)
}

fn little_qjacobi_b2(
    n: usize,
    alpha: &BigReal,
    beta: &BigReal,
    q: &BigReal,
    prec: usize,
) -> Result<(FamilySpec, BigReal)> {
    let fam = FamilySpec::little_q_jacobi(alpha.with_prec(prec), beta.with_prec(prec), q.with_prec(prec))?;
    require_n(n, 3)?;
    let (a, b, q) = (&alpha.with_prec(prec), &beta.with_prec(prec), &q.with_prec(prec));
    let one = BigReal::one(prec);
    let ni = n as i64;
    let num = (a * q.powi(3) - &one) * (a * q - &one) * q.powi(ni - 1);
    let den = (a * b * q.powi(2 * ni + 1) + &one) * (a * q.powi(2) + &one)
        - a * q.powi(ni + 1) * (b + &one) * (q + &one);
    if den.is_zero() {
        return Err(Error::DegenerateConfiguration);
    }
    Ok((fam, num / den))
}

/// [`little_qjacobi_upper_x1`] as a report.
pub fn little_qjacobi_bounds(n: usize, alpha: &BigReal, beta: &BigReal, q: &BigReal, prec: usize) -> Result<BoundReport> {
    let (fam, v) = little_qjacobi_b2(n, alpha, beta, q, prec)?;
    let entries = vec![entry(
        "b2_upper_x1",
        Direction::UpperForSmallest,
        BoundValue::Value(v),
        "zero of linear G (m=2, c=x^4, alpha q^4)",
        con(2, 4),
    )];
    Ok(BoundReport { fam, n, entries })
}

/// `G_2^{(αq^6)}` from the `m = 3`, `c = x^6` alternative q-Charlier mixed
/// recurrence. The `α²` term carries `q^{2n+1}`; the commonly displayed
/// `q^{2n+2}` disagrees with the Christoffel construction and with the
/// tabulated bound values.
pub fn alt_qcharlier_g2_shift6(n: usize, alpha: &BigReal, q: &BigReal) -> Poly {
    let a = alpha;
    let p = a.prec();
    let one = BigReal::one(p);
    let ni = n as i64;
    let qn = |k: i64| q.powi(k);
    let s3 = &one + q + q * q;
    let c2 = qn(3)
        * (&one
            + (qn(4 * ni) + (qn(2 * ni + 1) - qn(3 * ni)) * &s3) * a * a
            + (qn(ni) + qn(ni + 2) - qn(2 * ni) + qn(ni + 1)) * a);
    let c1 = qn(ni + 1) * (q + &one) * (a * qn(2 * ni) - a * qn(ni + 2) - a * qn(ni) - &one);
    let c0 = qn(2 * ni);
    Poly::new(vec![c0, c1, c2])
}

/// Alternative q-Charlier upper bounds for `x_{n,1}`: `B_3^{(αq^6)}`,
/// `B_2^{(αq^4)}` and the three-term-recurrence bound `B_n`.
pub fn alt_qcharlier_bounds(n: usize, alpha: &BigReal, q: &BigReal, prec: usize) -> Result<BoundReport> {
    let fam = FamilySpec::alt_q_charlier(alpha.with_prec(prec), q.with_prec(prec))?;
    require_n(n, 4)?;
    let (a, q) = (&alpha.with_prec(prec), &q.with_prec(prec));
    let one = BigReal::one(prec);
    let ni = n as i64;
    let qn = |k: i64| q.powi(k);

    let g2 = alt_qcharlier_g2_shift6(n, a, q);
    let c = g2.coeffs();
    let b3 = match stable_quadratic_roots(&c[2], &c[1], &c[0]) {
        Some((lo, _)) => BoundValue::Value(lo),
        None => BoundValue::Inapplicable("complex zeros of G_2"),
    };

    // zero of the linear y_{n-1} coefficient of the m = 2, c = x^4 recurrence,
    // (α q^{2n+1} - α q^{n+2} - α q^{n+1} - q) x + q^n
    let den = &one + a * qn(ni) * (&one + q - qn(ni));
    let b2 = if den.is_positive() {
        BoundValue::Value(qn(ni - 1) / den)
    } else {
        BoundValue::Inapplicable("denominator 1 + alpha q^n (1 + q - q^n) <= 0")
    };

    let bn = -(qn(ni + 1) * (qn(2 * ni) * a - a * qn(ni + 1) - a * qn(ni) - qn(2)))
        / ((qn(2 * ni) * a + q) * (qn(2 * ni) * a + qn(3)));

    let entries = vec![
        entry("b3_upper_x1", Direction::UpperForSmallest, b3, "smaller zero of G_2 (m=3, c=x^6, alpha q^6)", con(3, 6)),
        entry("b2_upper_x1", Direction::UpperForSmallest, b2, "zero of linear G (m=2, c=x^4, alpha q^4)", con(2, 4)),
        entry(
            "bn_upper_x1",
            Direction::UpperForSmallest,
            BoundValue::Value(bn),
            "C_n from the three-term recurrence (m=2, c=1)",
            con(2, 0),
        ),
    ];
    Ok(BoundReport { fam, n, entries })
}

/// The cubic `A_3` from the unshifted `m = 4` Stieltjes-Wigert recurrence,
/// proportional to `S_3^{(n)}`. The linear coefficient includes
/// `q^{2n+7} + q^{3n+6}`, which the commonly displayed form omits.
pub fn stieltjes_wigert_a3(n: usize, q: &BigReal) -> Poly {
    let p = q.prec();
    let one = BigReal::one(p);
    let ni = n as i64;
    let qn = |k: i64| q.powi(k);
    let s3 = &one + q + q * q;
    let s4 = &s3 + qn(3);
    let c3 = qn(6 * ni);
    let c2 = (qn(5 * ni + 1) - qn(4 * ni + 4) - qn(4 * ni + 1)) * &s3;
    let c1 = (qn(2 * ni + 8) + qn(2 * ni + 6) + qn(2 * ni + 4) + qn(4 * ni + 3)
        - qn(3 * ni + 6)
        - qn(3 * ni + 5)
        - qn(3 * ni + 4))
        * &s3
        - qn(3 * ni + 3) * (q + &one)
        + qn(2 * ni + 7)
        + qn(3 * ni + 6);
    let c0 = -(qn(9) * &s4) - qn(2 * ni + 6) * &s4 + qn(3 * ni + 6) + qn(ni + 7) * (qn(2) + &one) * &s3;
    Poly::new(vec![c0, c1, c2, c3])
}

/// The quadratic coefficient of `S_{n-1}` in the unshifted `m = 3`
/// Stieltjes-Wigert recurrence.
pub fn stieltjes_wigert_g2(n: usize, q: &BigReal) -> Poly {
    let p = q.prec();
    let one = BigReal::one(p);
    let ni = n as i64;
    let qn = |k: i64| q.powi(k);
    let c2 = qn(4 * ni);
    let c1 = qn(2 * ni + 1) * (q + &one) * (qn(ni) - qn(2) - &one);
    let c0 = qn(3) * (qn(2 * ni) + (q - qn(ni)) * (qn(2) + q + &one));
    Poly::new(vec![c0, c1, c2])
}

/// Stieltjes-Wigert lower bounds for `x_{n,n}`: the larger closed-form zero
/// `B_3` (m = 3) and the largest zero of `A_3` (m = 4).
pub fn stieltjes_wigert_lower_xn(n: usize, q: &BigReal, prec: usize) -> Result<BoundReport> {
    let fam = FamilySpec::stieltjes_wigert(q.with_prec(prec))?;
    require_n(n, 5)?;
    let q = &q.with_prec(prec);
    let one = BigReal::one(prec);
    let ni = n as i64;
    let qn = |k: i64| q.powi(k);
    let disc = qn(6) - r(2, prec) * qn(ni + 4) + r(2, prec) * qn(5) + qn(2 * ni + 2)
        - qn(4)
        - r(2, prec) * qn(2 * ni + 1)
        + qn(2 * ni)
        - qn(2)
        - r(2, prec) * qn(ni)
        + r(2, prec) * q
        + &one;
    let b3 = match disc.sqrt() {
        Some(s) => BoundValue::Value(
            ((qn(2) - qn(ni) + &one) * (q + &one) + s) / (r(2, prec) * qn(2 * ni - 1)),
        ),
        None => BoundValue::Inapplicable("negative discriminant"),
    };
    let entries = vec![
        entry("b3_lower_xn", Direction::LowerForLargest, b3, "larger closed-form zero of G_2 (m=3, c=1)", con(3, 0)),
        entry(
            "b4_lower_xn",
            Direction::LowerForLargest,
            extreme_root(&stieltjes_wigert_a3(n, q), true),
            "largest zero of A_3 (m=4, c=1)",
            con(4, 0),
        ),
    ];
    Ok(BoundReport { fam, n, entries })
}

/// All real zeros of `A_3`, ascending.
pub fn stieltjes_wigert_a3_roots(n: usize, q: &BigReal, prec: usize) -> Result<Vec<BigReal>> {
    FamilySpec::stieltjes_wigert(q.with_prec(prec))?;
    zeros::low_degree_roots(&stieltjes_wigert_a3(n, &q.with_prec(prec)))
}

/// The quartic `G_4` from the unshifted `m = 5` discrete q-Hermite II
/// recurrence.
pub fn qhermite2_g4(n: usize, q: &BigReal) -> Poly {
    let p = q.prec();
    let one = BigReal::one(p);
    let ni = n as i64;
    let qn = |k: i64| q.powi(k);
    let z = BigReal::zero(p);
    let c4 = qn(4 * ni);
    let c2 = (qn(2) + qn(ni) - q - qn(3)) * (qn(2) + q + &one) * qn(2 * ni + 2);
    let c0 = qn(6) * (qn(ni) - q) * (qn(ni) - qn(3));
    Poly::new(vec![c0, z.clone(), c2, z, c4])
}

/// Discrete q-Hermite II: `B_5`, the largest zero of `G_4`, bounds `x_{n,n}`
/// from below and, by symmetry, `-B_5` bounds `x_{n,1}` from above.
pub fn qhermite2_bounds(n: usize, q: &BigReal, prec: usize) -> Result<BoundReport> {
    let fam = FamilySpec::discrete_q_hermite_ii(q.with_prec(prec))?;
    require_n(n, 6)?;
    let q = &q.with_prec(prec);
    let one = BigReal::one(prec);
    let ni = n as i64;
    let qn = |k: i64| q.powi(k);
    let s3 = qn(2) + q + &one;
    let t = qn(2) + qn(ni) - q - qn(3);
    let disc = &t * &t * &s3 * &s3 - r(4, prec) * (qn(ni) - qn(3)) * (qn(ni) - q) * qn(2);
    let value = disc.sqrt().and_then(|s| {
        let inner = ((q + qn(3) - qn(2) - qn(ni)) * &s3 + s) / (r(2, prec) * qn(2 * ni - 2));
        inner.sqrt()
    });
    let (hi, lo) = match value {
        Some(b5) => (BoundValue::Value(b5.clone()), BoundValue::Value(-b5)),
        None => (
            BoundValue::Inapplicable("negative discriminant"),
            BoundValue::Inapplicable("negative discriminant"),
        ),
    };
    let entries = vec![
        entry("b5_lower_xn", Direction::LowerForLargest, hi, "largest zero of G_4 (m=5, c=1)", con(5, 0)),
        entry("b5_upper_x1", Direction::UpperForSmallest, lo, "negated largest zero of G_4 (symmetry)", con(5, 0)),
    ];
    Ok(BoundReport { fam, n, entries })
}

/// The closed-form bounds available for `fam` at degree `n`.
pub fn bounds_for(fam: &FamilySpec, n: usize, prec: usize) -> Result<BoundReport> {
    let (a, b, q) = (fam.alpha(prec), fam.beta(prec), fam.q(prec));
    let mut report = match fam.id() {
        FamilyId::Laguerre => laguerre_bounds(n, &a, prec)?,
        FamilyId::LittleQJacobi | FamilyId::LittleQLaguerre => little_qjacobi_bounds(n, &a, &b, &q, prec)?,
        FamilyId::AltQCharlier => alt_qcharlier_bounds(n, &a, &q, prec)?,
        FamilyId::StieltjesWigert => stieltjes_wigert_lower_xn(n, &q, prec)?,
        FamilyId::DiscreteQHermiteII => qhermite2_bounds(n, &q, prec)?,
    };
    report.fam = fam.clone();
    Ok(report)
}

/// Checks every entry's direction contract against `zs`, and for each
/// distinct construction the completed interlacing of the `n - 1` zeros of
/// `G g_{n-m,k}` with the zeros of `p_n`.
pub fn verify_bound_report(report: &BoundReport, zs: &ZeroSet, prec: usize) -> Result<InterlacingReport> {
    let mut out = InterlacingReport {
        holds: true,
        violations: Vec::new(),
        common_zeros: Vec::new(),
        bound_failures: Vec::new(),
    };
    let (Some(x1), Some(xn)) = (zs.smallest(), zs.largest()) else {
        return Ok(out);
    };
    for e in &report.entries {
        let Some(v) = e.value.value() else { continue };
        let ok = match e.direction {
            Direction::UpperForSmallest => v >= x1,
            Direction::LowerForLargest => v <= xn,
        };
        if !ok {
            let z = match e.direction {
                Direction::UpperForSmallest => x1,
                Direction::LowerForLargest => xn,
            };
            out.bound_failures.push((String::from(e.name), v.clone(), z.clone()));
        }
    }
    let mut seen: Vec<Construction> = Vec::new();
    for c in report.entries.iter().filter_map(|e| e.construction) {
        if seen.contains(&c) || c.m >= report.n {
            continue;
        }
        seen.push(c);
        let (viol, common) = completed_interlacing(&report.fam, report.n, c, &zs.zeros, prec)?;
        out.violations.extend(viol);
        out.common_zeros.extend(common);
    }
    out.holds = out.violations.is_empty() && out.bound_failures.is_empty();
    Ok(out)
}

/// `(i, left, right)`: the `i`-th factor zero (0-based) is not strictly
/// inside `(left, right)`.
pub type Violation = (usize, BigReal, BigReal);

/// Zeros of `G g_{n-m,k}` checked against the zeros `xs` of `p_n`.
pub fn completed_interlacing(
    fam: &FamilySpec,
    n: usize,
    c: Construction,
    xs: &[BigReal],
    prec: usize,
) -> Result<(Vec<Violation>, Vec<BigReal>)> {
    let mr = build_mixed_recurrence(fam, n, c.m, &CSpec::monomial(c.k, prec), prec)?;
    let rtol = BigReal::one(prec).mul_pow2(-(prec as i64) / 2);
    let mut inner = mr.g_roots()?;
    inner.extend(mr.g_family_zeros(&rtol)?);
    inner.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let tol = BigReal::from_f64(crate::recurrence::COPRIME_TOL, prec);
    let common = zeros::common_zeros(xs, &inner, &tol);
    // A factor zero that coincides with a zero of `p_n` (to the coprimality
    // tolerance) is reported as common; strict interlacing is not decidable
    // there, so it is not counted as a violation.
    let violations = zeros::interlacing_violations(xs, &inner)
        .into_iter()
        .filter(|(i, _, _)| {
            inner.get(*i).is_none_or(|y| !common.iter().any(|c| BigReal::rel_diff(c, y) <= tol))
        })
        .collect();
    Ok((violations, common))
}

/// Report-only observations for the q-families on the unit interval:
/// whether `q >= x_{n,n-1}`, and the largest relative deviation of
/// `x_{n,j+1}/x_{n,j}` from `1/q`.
#[derive(Clone, Debug)]
pub struct QDiagnostics {
    pub q_above_second_largest: bool,
    pub max_ratio_deviation: BigReal,
}

pub fn q_diagnostics(zs: &ZeroSet, q: &BigReal) -> Option<QDiagnostics> {
    let n = zs.zeros.len();
    if n < 2 {
        return None;
    }
    let inv_q = q.recip();
    let dev = zs
        .zeros
        .windows(2)
        .map(|w| BigReal::rel_diff(&(&w[1] / &w[0]), &inv_q))
        .fold(BigReal::zero(q.prec()), BigReal::max);
    Some(QDiagnostics { q_above_second_largest: *q >= zs.zeros[n - 2], max_ratio_deviation: dev })
}
