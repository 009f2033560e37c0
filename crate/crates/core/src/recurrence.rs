//! Three-term recurrence evaluation, associated polynomials and the
//! identities that tie `p_{n-m}` to the pair `(p_n, p_{n-1})`.

use alloc::vec;
use alloc::vec::Vec;

use crate::bigreal::BigReal;
use crate::error::{check_range, Error, Result};
use crate::families::FamilySpec;
use crate::poly::Poly;
use crate::zeros;

/// Coefficient table of a monic three-term recurrence
/// `p_n = (x - C_n) p_{n-1} - λ_n p_{n-2}`, `n = 1..=max_degree`.
///
/// Index 0 of both tables is unused padding.
#[derive(Clone, Debug)]
pub struct Recurrence {
    c: Vec<BigReal>,
    lambda: Vec<BigReal>,
    prec: usize,
}

impl Recurrence {
    pub fn for_family(fam: &FamilySpec, max_degree: usize, prec: usize) -> Result<Self> {
        fam.validate()?;
        let mut c = vec![BigReal::zero(prec)];
        let mut lambda = vec![BigReal::zero(prec)];
        for n in 1..=max_degree {
            let pair = fam.monic_coeffs(n, prec)?;
            c.push(pair.c);
            lambda.push(pair.lambda);
        }
        Ok(Recurrence { c, lambda, prec })
    }

    /// `c[0]` and `lambda[0]` are ignored; `lambda[1]` is ignored too.
    pub fn from_tables(c: Vec<BigReal>, lambda: Vec<BigReal>, prec: usize) -> Self {
        assert_eq!(c.len(), lambda.len(), "coefficient tables must have equal length");
        Recurrence { c, lambda, prec }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn max_degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn c(&self, n: usize) -> &BigReal {
        &self.c[n]
    }

    pub fn lambda(&self, n: usize) -> &BigReal {
        &self.lambda[n]
    }

    fn need(&self, n: usize) -> Result<()> {
        check_range("degree", n, 0, self.max_degree())
    }

    /// Monic `p_n(x)`.
    pub fn eval(&self, n: usize, x: &BigReal) -> Result<BigReal> {
        self.need(n)?;
        Ok(self.eval_all(n, x).pop().expect("non-empty"))
    }

    /// `[p_0(x), ..., p_n(x)]`.
    pub fn eval_all(&self, n: usize, x: &BigReal) -> Vec<BigReal> {
        let x = x.with_prec(self.prec);
        let mut out = Vec::with_capacity(n + 1);
        out.push(BigReal::one(self.prec));
        if n == 0 {
            return out;
        }
        out.push(&x - &self.c[1]);
        for k in 2..=n {
            let next = (&x - &self.c[k]) * &out[k - 1] - &self.lambda[k] * &out[k - 2];
            out.push(next);
        }
        out
    }

    /// `(p_n(x), p_n'(x))`.
    pub fn eval_with_derivative(&self, n: usize, x: &BigReal) -> (BigReal, BigReal) {
        let x = x.with_prec(self.prec);
        let zero = BigReal::zero(self.prec);
        let (mut p0, mut p1) = (zero.clone(), BigReal::one(self.prec));
        let (mut d0, mut d1) = (zero.clone(), zero);
        for k in 1..=n {
            let t = &x - &self.c[k];
            let p2 = &t * &p1 - &self.lambda[k] * &p0;
            let d2 = &p1 + &t * &d1 - &self.lambda[k] * &d0;
            p0 = core::mem::replace(&mut p1, p2);
            d0 = core::mem::replace(&mut d1, d2);
        }
        (p1, d1)
    }

    /// `table[j][d] = p_j^{(d)}(x)` for `j <= n`, `d <= order`, from the
    /// differentiated recurrence
    /// `p_j^{(d)} = d p_{j-1}^{(d-1)} + (x - C_j) p_{j-1}^{(d)} - λ_j p_{j-2}^{(d)}`.
    pub fn derivative_table(&self, n: usize, x: &BigReal, order: usize) -> Vec<Vec<BigReal>> {
        let x = x.with_prec(self.prec);
        let zero = BigReal::zero(self.prec);
        let mut t: Vec<Vec<BigReal>> = Vec::with_capacity(n + 1);
        let mut row0 = vec![zero.clone(); order + 1];
        row0[0] = BigReal::one(self.prec);
        t.push(row0);
        for j in 1..=n {
            let shift = &x - &self.c[j];
            let mut row = Vec::with_capacity(order + 1);
            for d in 0..=order {
                let mut v = &shift * &t[j - 1][d];
                if d > 0 {
                    v = v + BigReal::from_i64(d as i64, self.prec) * &t[j - 1][d - 1];
                }
                if j >= 2 {
                    v = v - &self.lambda[j] * &t[j - 2][d];
                }
                row.push(v);
            }
            t.push(row);
        }
        t
    }

    /// Number of zeros of `p_n` strictly greater than `x`, read off the signs
    /// of the ratios `p_j / p_{j-1}`.
    pub fn count_zeros_above(&self, n: usize, x: &BigReal) -> usize {
        let x = x.with_prec(self.prec);
        let mut count = 0;
        let mut prev: Option<BigReal> = None;
        for k in 1..=n {
            let mut d = &x - &self.c[k];
            if let Some(p) = &prev {
                d = d - &self.lambda[k] / p;
            }
            if k < n && d.is_zero() {
                // step off an exact intermediate zero; the count is unaffected
                let scale = x.abs() + self.c[k].abs() + self.lambda[k].abs() + BigReal::one(self.prec);
                d = scale.mul_pow2(-2 * self.prec as i64);
            }
            if d.is_negative() {
                count += 1;
            }
            prev = Some(d);
        }
        count
    }

    /// Coefficient form of the associated polynomial `S_m^{(n)}`.
    pub fn associated_poly(&self, n: usize, m: usize) -> Result<Poly> {
        self.need(n)?;
        check_range("m", m, 0, n)?;
        Ok(self.associated_polys(n, m).pop().expect("non-empty"))
    }

    /// `[S_0^{(n)}, ..., S_m^{(n)}]` via
    /// `S_j = (x - C_{n-j+1}) S_{j-1} - λ_{n-j+2} S_{j-2}`.
    pub fn associated_polys(&self, n: usize, m: usize) -> Vec<Poly> {
        let mut out = Vec::with_capacity(m + 1);
        out.push(Poly::constant(BigReal::one(self.prec)));
        if m == 0 {
            return out;
        }
        out.push(Poly::linear_monic(&self.c[n]));
        for j in 2..=m {
            let a = out[j - 1].mul_linear(&self.c[n + 1 - j]);
            let b = out[j - 2].scale(&self.lambda[n + 2 - j]);
            out.push(&a - &b);
        }
        out
    }

    /// The recurrence generating `S_j^{(n)}`, `j = 0..=n`, as a table in its own right.
    pub fn associated_recurrence(&self, n: usize) -> Result<Recurrence> {
        self.need(n)?;
        let mut c = vec![BigReal::zero(self.prec)];
        let mut lambda = vec![BigReal::zero(self.prec), BigReal::zero(self.prec)];
        for j in 1..=n {
            c.push(self.c[n + 1 - j].clone());
            if j >= 2 {
                lambda.push(self.lambda[n + 2 - j].clone());
            }
        }
        lambda.truncate(c.len());
        Ok(Recurrence::from_tables(c, lambda, self.prec))
    }

    /// `λ_n λ_{n-1} ··· λ_{n-m+2}` (empty product for `m < 2`).
    pub fn lambda_product(&self, n: usize, m: usize) -> BigReal {
        let mut acc = BigReal::one(self.prec);
        for i in 0..m.saturating_sub(1) {
            acc = acc * &self.lambda[n - i];
        }
        acc
    }

    /// Relative residual of
    /// `λ_n···λ_{n-m+2} p_{n-m} = S_{m-1}^{(n)} p_{n-1} - S_{m-2}^{(n-1)} p_n`,
    /// scaled by the largest of the three products.
    pub fn beardon_residual(&self, n: usize, m: usize, x: &BigReal) -> Result<BigReal> {
        self.need(n)?;
        if n < 3 {
            return Err(Error::OutOfRange { what: "n", value: n as i64, min: 3, max: self.max_degree() as i64 });
        }
        check_range("m", m, 2, n - 1)?;
        let x = x.with_prec(self.prec);
        let p = self.eval_all(n, &x);
        let s_n = self.associated_poly(n, m - 1)?;
        let s_n1 = self.associated_poly(n - 1, m - 2)?;
        let lhs = self.lambda_product(n, m) * &p[n - m];
        let t1 = s_n.eval(&x) * &p[n - 1];
        let t2 = s_n1.eval(&x) * &p[n];
        let scale = lhs.abs().max(t1.abs()).max(t2.abs());
        let res = lhs - (t1 - t2);
        if scale.is_zero() {
            return Ok(res.abs());
        }
        Ok(res.abs() / scale)
    }
}

/// Smallest and largest zero of `S_{m-1}^{(n)}`, plus whether `p_{n-m}` and
/// `p_n` were found to share zeros.
#[derive(Clone, Debug)]
pub struct InnerBounds {
    pub lo: BigReal,
    pub hi: BigReal,
    pub zeros: Vec<BigReal>,
    pub common_zeros: Vec<BigReal>,
}

/// Relative separation below which two zeros count as common.
pub const COPRIME_TOL: f64 = 1e-20;

/// Inner bounds from the zeros of `S_{m-1}^{(n)}`.
pub fn corollary_inner_bounds(fam: &FamilySpec, n: usize, m: usize, prec: usize) -> Result<InnerBounds> {
    if n < 3 {
        return Err(Error::OutOfRange { what: "n", value: n as i64, min: 3, max: i64::MAX });
    }
    check_range("m", m, 2, n - 1)?;
    let rec = Recurrence::for_family(fam, n, prec)?;
    let rtol = BigReal::one(prec).mul_pow2(-(prec as i64) / 2);
    let assoc = rec.associated_recurrence(n)?;
    let s_zeros = zeros::recurrence_zeros(&assoc, m - 1, &rtol, None)?.zeros;
    let pn = zeros::recurrence_zeros(&rec, n, &rtol, None)?.zeros;
    let pnm = zeros::recurrence_zeros(&rec, n - m, &rtol, None)?.zeros;
    let common_zeros = zeros::common_zeros(&pn, &pnm, &BigReal::from_f64(COPRIME_TOL, prec));
    let lo = s_zeros.first().cloned().ok_or(Error::ZeroPolynomial)?;
    let hi = s_zeros.last().cloned().ok_or(Error::ZeroPolynomial)?;
    Ok(InnerBounds { lo, hi, zeros: s_zeros, common_zeros })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyId;

    const P: usize = 192;

    fn r(s: &str) -> BigReal {
        BigReal::parse(s, P).unwrap()
    }

    fn lag(a: &str) -> FamilySpec {
        FamilySpec::laguerre(r(a)).unwrap()
    }

    #[test]
    fn low_degrees_are_trivial() {
        let f = lag("0.4");
        let rec = Recurrence::for_family(&f, 5, P).unwrap();
        let x = r("2.5");
        assert_eq!(rec.eval(0, &x).unwrap(), BigReal::one(P));
        assert_eq!(rec.eval(1, &x).unwrap(), &x - rec.c(1));
        assert!(rec.eval(6, &x).is_err());
    }

    #[test]
    fn associated_poly_first_members() {
        let rec = Recurrence::for_family(&lag("1.5"), 8, P).unwrap();
        let s0 = rec.associated_poly(8, 0).unwrap();
        assert_eq!(s0, Poly::constant(BigReal::one(P)));
        let s1 = rec.associated_poly(8, 1).unwrap();
        assert_eq!(s1, Poly::linear_monic(rec.c(8)));
        assert!(rec.associated_poly(8, 9).is_err());
    }

    #[test]
    fn beardon_m2_is_the_recurrence_itself() {
        let rec = Recurrence::for_family(&lag("0.5"), 6, P).unwrap();
        let res = rec.beardon_residual(6, 2, &r("1.7")).unwrap();
        assert!(res < BigReal::one(P).mul_pow2(-(P as i64) + 8));
        assert!(rec.beardon_residual(6, 1, &r("1.7")).is_err());
        assert!(rec.beardon_residual(6, 6, &r("1.7")).is_err());
    }

    #[test]
    fn derivative_table_matches_direct_derivative() {
        let rec = Recurrence::for_family(&lag("0.25"), 7, P).unwrap();
        let x = r("1.3");
        let t = rec.derivative_table(7, &x, 2);
        let (p, d) = rec.eval_with_derivative(7, &x);
        assert_eq!(t[7][0], p);
        assert!((&t[7][1] - &d).abs() < r("1e-45"));
    }

    #[test]
    fn zero_count_at_extremes() {
        let f = FamilySpec::new(FamilyId::DiscreteQHermiteII, None, None, Some(r("0.5"))).unwrap();
        let rec = Recurrence::for_family(&f, 9, P).unwrap();
        assert_eq!(rec.count_zeros_above(9, &r("-1e9")), 9);
        assert_eq!(rec.count_zeros_above(9, &r("1e9")), 0);
        // odd degree, symmetric: 4 zeros above a point just right of the origin
        assert_eq!(rec.count_zeros_above(9, &r("1e-30")), 4);
    }
}
