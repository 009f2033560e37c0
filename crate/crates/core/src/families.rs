//! Supported families, their hypergeometric definitions and monic
//! recurrence coefficients.
//!
//! For the q-families the variable `x` stands for `q^x` on the lattice, so
//! zeros live in the substituted variable.
//!
//! Monic recurrence convention: `p_n = (x - C_n) p_{n-1} - λ_n p_{n-2}` with
//! `p_0 = 1`, `p_{-1} = 0`. Writing `x p_j = p_{j+1} + b_j p_j + u_j p_{j-1}`
//! gives `C_n = b_{n-1}` and `λ_n = u_{n-1}`; the per-family `b_j`, `u_j`
//! follow from the normalized recurrences of the series definitions.

use core::fmt;

use crate::bigreal::BigReal;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Laguerre,
    LittleQJacobi,
    LittleQLaguerre,
    AltQCharlier,
    StieltjesWigert,
    DiscreteQHermiteII,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [
        FamilyId::Laguerre,
        FamilyId::LittleQJacobi,
        FamilyId::LittleQLaguerre,
        FamilyId::AltQCharlier,
        FamilyId::StieltjesWigert,
        FamilyId::DiscreteQHermiteII,
    ];

    /// Command-line slug, e.g. `little-q-jacobi`.
    pub fn slug(self) -> &'static str {
        match self {
            FamilyId::Laguerre => "laguerre",
            FamilyId::LittleQJacobi => "little-q-jacobi",
            FamilyId::LittleQLaguerre => "little-q-laguerre",
            FamilyId::AltQCharlier => "alt-q-charlier",
            FamilyId::StieltjesWigert => "stieltjes-wigert",
            FamilyId::DiscreteQHermiteII => "qhermite2",
        }
    }

    pub fn from_slug(s: &str) -> Option<Self> {
        let s = s.to_ascii_lowercase();
        let hit = match s.as_str() {
            "laguerre" => FamilyId::Laguerre,
            "little-q-jacobi" | "littleqjacobi" => FamilyId::LittleQJacobi,
            "little-q-laguerre" | "littleqlaguerre" | "wall" => FamilyId::LittleQLaguerre,
            "alt-q-charlier" | "altqcharlier" | "q-bessel" => FamilyId::AltQCharlier,
            "stieltjes-wigert" | "stieltjeswigert" => FamilyId::StieltjesWigert,
            "qhermite2" | "discrete-q-hermite-ii" | "discreteqhermiteii" => {
                FamilyId::DiscreteQHermiteII
            }
            _ => return None,
        };
        Some(hit)
    }

    pub fn is_q_family(self) -> bool {
        self != FamilyId::Laguerre
    }

    /// Parameter names the family takes, in canonical order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyId::Laguerre => &["alpha"],
            FamilyId::LittleQJacobi => &["alpha", "beta", "q"],
            FamilyId::LittleQLaguerre => &["alpha", "q"],
            FamilyId::AltQCharlier => &["alpha", "q"],
            FamilyId::StieltjesWigert | FamilyId::DiscreteQHermiteII => &["q"],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// Orthogonality interval; `None` endpoints are infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct Support {
    pub lo: Option<BigReal>,
    pub hi: Option<BigReal>,
}

impl Support {
    /// Open-interval membership.
    pub fn contains(&self, x: &BigReal) -> bool {
        self.lo.as_ref().is_none_or(|lo| x > lo) && self.hi.as_ref().is_none_or(|hi| x < hi)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrencePair {
    pub c: BigReal,
    pub lambda: BigReal,
}

/// A family together with its parameter values.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    id: FamilyId,
    alpha: Option<BigReal>,
    beta: Option<BigReal>,
    q: Option<BigReal>,
}

impl FamilySpec {
    /// Generic constructor; parameters the family does not use are ignored,
    /// missing ones are an error. The result is validated.
    pub fn new(
        id: FamilyId,
        alpha: Option<BigReal>,
        beta: Option<BigReal>,
        q: Option<BigReal>,
    ) -> Result<Self> {
        let names = id.param_names();
        let need = |name: &'static str, v: Option<BigReal>| -> Result<Option<BigReal>> {
            if names.contains(&name) {
                v.map(Some).ok_or(Error::MissingParameter { family: id, name })
            } else {
                Ok(None)
            }
        };
        let spec = FamilySpec {
            id,
            alpha: need("alpha", alpha)?,
            beta: need("beta", beta)?,
            q: need("q", q)?,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn laguerre(alpha: BigReal) -> Result<Self> {
        Self::new(FamilyId::Laguerre, Some(alpha), None, None)
    }

    pub fn little_q_jacobi(alpha: BigReal, beta: BigReal, q: BigReal) -> Result<Self> {
        Self::new(FamilyId::LittleQJacobi, Some(alpha), Some(beta), Some(q))
    }

    pub fn little_q_laguerre(alpha: BigReal, q: BigReal) -> Result<Self> {
        Self::new(FamilyId::LittleQLaguerre, Some(alpha), None, Some(q))
    }

    pub fn alt_q_charlier(alpha: BigReal, q: BigReal) -> Result<Self> {
        Self::new(FamilyId::AltQCharlier, Some(alpha), None, Some(q))
    }

    pub fn stieltjes_wigert(q: BigReal) -> Result<Self> {
        Self::new(FamilyId::StieltjesWigert, None, None, Some(q))
    }

    pub fn discrete_q_hermite_ii(q: BigReal) -> Result<Self> {
        Self::new(FamilyId::DiscreteQHermiteII, None, None, Some(q))
    }

    pub fn id(&self) -> FamilyId {
        self.id
    }

    pub fn param(&self, name: &str) -> Option<&BigReal> {
        match name {
            "alpha" => self.alpha.as_ref(),
            "beta" => self.beta.as_ref(),
            "q" => self.q.as_ref(),
            _ => None,
        }
    }

    /// `(name, value)` for every parameter the family uses.
    pub fn params(&self) -> impl Iterator<Item = (&'static str, &BigReal)> + '_ {
        self.id
            .param_names()
            .iter()
            .filter_map(move |&n| self.param(n).map(|v| (n, v)))
    }

    fn get(&self, name: &'static str, prec: usize) -> BigReal {
        match self.param(name) {
            Some(v) => v.with_prec(prec),
            // little q-Laguerre is little q-Jacobi at beta = 0
            None => BigReal::zero(prec),
        }
    }

    pub fn alpha(&self, prec: usize) -> BigReal {
        self.get("alpha", prec)
    }

    pub fn beta(&self, prec: usize) -> BigReal {
        self.get("beta", prec)
    }

    pub fn q(&self, prec: usize) -> BigReal {
        self.get("q", prec)
    }

    /// Same family with `alpha` replaced; used for parameter shifts.
    pub fn with_alpha(&self, alpha: BigReal) -> Result<Self> {
        let mut s = self.clone();
        if s.alpha.is_none() {
            return Err(Error::MissingParameter { family: self.id, name: "alpha" });
        }
        s.alpha = Some(alpha);
        s.validate()?;
        Ok(s)
    }

    /// Family whose weight is `x^k` times this one's, when that is again a
    /// member of the family (`alpha + k`, or `alpha q^k` on the q-lattice).
    pub fn shifted_by_monomial(&self, k: usize, prec: usize) -> Option<Self> {
        let a = self.alpha(prec);
        let shifted = match self.id {
            FamilyId::Laguerre => a + BigReal::from_i64(k as i64, prec),
            FamilyId::LittleQJacobi | FamilyId::LittleQLaguerre | FamilyId::AltQCharlier => {
                a * self.q(prec).powi(k as i64)
            }
            FamilyId::StieltjesWigert | FamilyId::DiscreteQHermiteII => return None,
        };
        self.with_alpha(shifted).ok()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason| Err(Error::ParameterDomain { family: self.id, reason });
        let p = self
            .params()
            .map(|(_, v)| v.prec())
            .max()
            .unwrap_or(crate::bigreal::MIN_PRECISION);
        let zero = BigReal::zero(p);
        let one = BigReal::one(p);
        for (_, v) in self.params() {
            if !v.is_finite() {
                return bad("parameters must be finite");
            }
        }
        if self.id.is_q_family() {
            let q = self.q(p);
            if !(q > zero && q < one) {
                return bad("requires 0 < q < 1");
            }
        }
        match self.id {
            FamilyId::Laguerre => {
                if self.alpha(p) <= -&one {
                    return bad("requires alpha > -1");
                }
            }
            FamilyId::LittleQJacobi | FamilyId::LittleQLaguerre => {
                let aq = self.alpha(p) * self.q(p);
                if !(aq > zero && aq < one) {
                    return bad("requires 0 < alpha q < 1");
                }
                if self.beta(p) * self.q(p) >= one {
                    return bad("requires beta q < 1");
                }
            }
            FamilyId::AltQCharlier => {
                if !self.alpha(p).is_positive() {
                    return bad("requires alpha > 0");
                }
            }
            FamilyId::StieltjesWigert | FamilyId::DiscreteQHermiteII => {}
        }
        Ok(())
    }

    pub fn support(&self, prec: usize) -> Support {
        match self.id {
            FamilyId::Laguerre | FamilyId::StieltjesWigert => Support {
                lo: Some(BigReal::zero(prec)),
                hi: None,
            },
            FamilyId::LittleQJacobi | FamilyId::LittleQLaguerre | FamilyId::AltQCharlier => {
                Support {
                    lo: Some(BigReal::zero(prec)),
                    hi: Some(BigReal::one(prec)),
                }
            }
            FamilyId::DiscreteQHermiteII => Support { lo: None, hi: None },
        }
    }

    /// Monic recurrence coefficients `(C_n, λ_n)` for `n >= 1`; `λ_1` is 0.
    pub fn monic_coeffs(&self, n: usize, prec: usize) -> Result<RecurrencePair> {
        if n == 0 {
            return Err(Error::OutOfRange { what: "n", value: 0, min: 1, max: i64::MAX });
        }
        let j = (n - 1) as i64;
        let (c, lambda) = match self.id {
            FamilyId::Laguerre => {
                let a = self.alpha(prec);
                let jj = BigReal::from_i64(j, prec);
                let b = BigReal::from_i64(2 * j + 1, prec) + &a;
                let u = &jj * (&jj + &a);
                (b, u)
            }
            FamilyId::LittleQJacobi | FamilyId::LittleQLaguerre => {
                let (a, bb, q) = (self.alpha(prec), self.beta(prec), self.q(prec));
                let up = |i: i64| lqj_up(&a, &bb, &q, i);
                let down = |i: i64| lqj_down(&a, &bb, &q, i);
                let lambda = if j == 0 { BigReal::zero(prec) } else { up(j - 1) * down(j) };
                (up(j) + down(j), lambda)
            }
            FamilyId::AltQCharlier => {
                let (a, q) = (self.alpha(prec), self.q(prec));
                let up = |i: i64| aqc_up(&a, &q, i);
                let down = |i: i64| aqc_down(&a, &q, i);
                let lambda = if j == 0 { BigReal::zero(prec) } else { up(j - 1) * down(j) };
                (up(j) + down(j), lambda)
            }
            FamilyId::StieltjesWigert => {
                let q = self.q(prec);
                let one = BigReal::one(prec);
                let b = q.powi(-2 * j - 1) * (&one + &q - q.powi(j + 1));
                let u = q.powi(-4 * j + 1) * (&one - q.powi(j));
                (b, u)
            }
            FamilyId::DiscreteQHermiteII => {
                let q = self.q(prec);
                let u = q.powi(-2 * j + 1) * (BigReal::one(prec) - q.powi(j));
                (BigReal::zero(prec), u)
            }
        };
        Ok(RecurrencePair { c, lambda })
    }

    /// Leading coefficient `k_n` of the series-normalized `p_n` (so that
    /// series `p_n = k_n * monic p_n`).
    pub fn kls_leading_coeff(&self, n: usize, prec: usize) -> BigReal {
        let one = BigReal::one(prec);
        if n == 0 {
            return one;
        }
        let ni = n as i64;
        match self.id {
            FamilyId::Laguerre => {
                let f = factorial(n, prec);
                let s = if n.is_multiple_of(2) { one } else { -one };
                s / f
            }
            FamilyId::LittleQJacobi | FamilyId::LittleQLaguerre => {
                let (a, b, q) = (self.alpha(prec), self.beta(prec), self.q(prec));
                qpoch(&q.powi(-ni), &q, n)
                    * qpoch(&(&a * &b * q.powi(ni + 1)), &q, n)
                    * q.powi(ni)
                    / (qpoch(&(&a * &q), &q, n) * qpoch(&q, &q, n))
            }
            FamilyId::AltQCharlier => {
                let (a, q) = (self.alpha(prec), self.q(prec));
                qpoch(&q.powi(-ni), &q, n) * qpoch(&-(&a * q.powi(ni)), &q, n) * q.powi(ni)
                    / qpoch(&q, &q, n)
            }
            FamilyId::StieltjesWigert => {
                let q = self.q(prec);
                let qq = qpoch(&q, &q, n);
                qpoch(&q.powi(-ni), &q, n) * q.powi(ni * (ni - 1) / 2 + ni * (ni + 1)) / (&qq * &qq)
            }
            FamilyId::DiscreteQHermiteII => one,
        }
    }

    /// Series-normalized `p_n(x)` summed term by term (the series terminates
    /// after `n + 1` terms). Summation runs at twice `prec` to absorb
    /// cancellation between alternating terms.
    pub fn hyper_eval(&self, n: usize, x: &BigReal, prec: usize) -> BigReal {
        let wp = 2 * prec;
        let x = x.with_prec(wp);
        let one = BigReal::one(wp);
        let ni = n as i64;
        let r = match self.id {
            FamilyId::Laguerre => {
                // (α+1)_n/n! · Σ (-n)_k/((α+1)_k k!) x^k
                let a1 = self.alpha(wp) + &one;
                let mut term = one.clone();
                let mut sum = one.clone();
                for k in 0..ni {
                    let kk = BigReal::from_i64(k, wp);
                    term = term * BigReal::from_i64(k - ni, wp) * &x
                        / ((&a1 + &kk) * BigReal::from_i64(k + 1, wp));
                    sum = sum + &term;
                }
                let mut pre = one.clone();
                for k in 0..ni {
                    pre = pre * (&a1 + BigReal::from_i64(k, wp)) / BigReal::from_i64(k + 1, wp);
                }
                pre * sum
            }
            FamilyId::LittleQJacobi | FamilyId::LittleQLaguerre | FamilyId::AltQCharlier => {
                // 2φ1(q^-n, top2; bottom; q; q x)
                let q = self.q(wp);
                let a = self.alpha(wp);
                let (top2, bottom) = if self.id == FamilyId::AltQCharlier {
                    (-(&a * q.powi(ni)), BigReal::zero(wp))
                } else {
                    (&a * self.beta(wp) * q.powi(ni + 1), &a * &q)
                };
                let qn = q.powi(-ni);
                let z = &q * &x;
                let mut term = one.clone();
                let mut sum = one.clone();
                for k in 0..ni {
                    let qk = q.powi(k);
                    term = term * (&one - &qn * &qk) * (&one - &top2 * &qk) * &z
                        / ((&one - &bottom * &qk) * (&one - &q * &qk));
                    sum = sum + &term;
                }
                sum
            }
            FamilyId::StieltjesWigert => {
                // 1/(q;q)_n · Σ (q^-n;q)_k q^{k(k-1)/2} q^{(n+1)k} x^k / (q;q)_k
                let q = self.q(wp);
                let qn = q.powi(-ni);
                let z = q.powi(ni + 1) * &x;
                let mut term = one.clone();
                let mut sum = one.clone();
                for k in 0..ni {
                    let qk = q.powi(k);
                    term = term * (&one - &qn * &qk) * &qk * &z / (&one - &q * &qk);
                    sum = sum + &term;
                }
                sum / qpoch(&q, &q, n)
            }
            FamilyId::DiscreteQHermiteII => qhermite2_series(&self.q(wp), n, &x),
        };
        r.with_prec(prec)
    }
}

fn factorial(n: usize, prec: usize) -> BigReal {
    (1..=n as i64).fold(BigReal::one(prec), |acc, k| acc * BigReal::from_i64(k, prec))
}

/// `(a; q)_k`.
pub(crate) fn qpoch(a: &BigReal, q: &BigReal, k: usize) -> BigReal {
    let one = BigReal::one(a.prec().max(q.prec()));
    let mut acc = one.clone();
    let mut qj = one.clone();
    for _ in 0..k {
        acc = acc * (&one - a * &qj);
        qj = qj * q;
    }
    acc
}

// Normalized little q-Jacobi recurrence: -x p_j = A_j p_{j+1} - (A_j + C_j) p_j + C_j p_{j-1}.
fn lqj_up(a: &BigReal, b: &BigReal, q: &BigReal, j: i64) -> BigReal {
    let one = BigReal::one(q.prec());
    let ab = a * b;
    q.powi(j) * (&one - a * q.powi(j + 1)) * (&one - &ab * q.powi(j + 1))
        / ((&one - &ab * q.powi(2 * j + 1)) * (&one - &ab * q.powi(2 * j + 2)))
}

fn lqj_down(a: &BigReal, b: &BigReal, q: &BigReal, j: i64) -> BigReal {
    let one = BigReal::one(q.prec());
    if j == 0 {
        return BigReal::zero(q.prec());
    }
    let ab = a * b;
    a * q.powi(j) * (&one - q.powi(j)) * (&one - b * q.powi(j))
        / ((&one - &ab * q.powi(2 * j)) * (&one - &ab * q.powi(2 * j + 1)))
}

// Normalized alternative q-Charlier recurrence, same shape as little q-Jacobi.
fn aqc_up(a: &BigReal, q: &BigReal, j: i64) -> BigReal {
    let one = BigReal::one(q.prec());
    q.powi(j) * (&one + a * q.powi(j))
        / ((&one + a * q.powi(2 * j)) * (&one + a * q.powi(2 * j + 1)))
}

fn aqc_down(a: &BigReal, q: &BigReal, j: i64) -> BigReal {
    let one = BigReal::one(q.prec());
    if j == 0 {
        return BigReal::zero(q.prec());
    }
    a * q.powi(2 * j - 1) * (&one - q.powi(j))
        / ((&one + a * q.powi(2 * j - 1)) * (&one + a * q.powi(2 * j)))
}

/// `i^{-n} q^{-n(n-1)/2} 2φ0(q^-n, i x; -; q; -q^n)` with complex arithmetic
/// carried as (re, im) pairs.
fn qhermite2_series(q: &BigReal, n: usize, x: &BigReal) -> BigReal {
    let p = q.prec();
    let one = BigReal::one(p);
    let zero = BigReal::zero(p);
    let ni = n as i64;
    let qn = q.powi(-ni);
    // term_k = (q^-n;q)_k (ix;q)_k q^{nk - k(k-1)/2} / (q;q)_k
    let (mut tr, mut ti) = (one.clone(), zero.clone());
    let (mut sr, mut si) = (one.clone(), zero.clone());
    for k in 0..ni {
        let qk = q.powi(k);
        let real = (&one - &qn * &qk) * q.powi(ni - k) / (&one - q * &qk);
        // multiply by (1 - i x q^k)
        let c = x * &qk;
        let nr = &tr + &ti * &c;
        let ni_ = &ti - &tr * &c;
        tr = nr * &real;
        ti = ni_ * &real;
        sr = sr + &tr;
        si = si + &ti;
    }
    // i^{-n}: cycles 1, -i, -1, i
    let re = match n % 4 {
        0 => sr,
        1 => si,
        2 => -sr,
        _ => -si,
    };
    re * q.powi(-(ni * (ni - 1) / 2))
}
