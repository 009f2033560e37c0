//! Christoffel transforms of the weight and the mixed recurrences they give:
//! `A_n c_k(x) g_{n-m,k}(x) = R(x) p_n(x) - G(x) p_{n-1}(x)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::bigreal::BigReal;
use crate::error::{check_range, Error, Result};
use crate::families::FamilySpec;
use crate::poly::Poly;
use crate::recurrence::Recurrence;
use crate::zeros;

/// Largest supported `k = deg c_k`.
pub const MAX_K: usize = 8;

/// Zeros of the weight modifier `c_k` with their multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct CSpec {
    zeros: Vec<(BigReal, usize)>,
}

impl CSpec {
    /// `c_k = Π (x - x_j)^{s_j}`; zero multiplicities are dropped.
    pub fn new(zeros: Vec<(BigReal, usize)>) -> Self {
        CSpec { zeros: zeros.into_iter().filter(|(_, s)| *s > 0).collect() }
    }

    /// `c = 1`.
    pub fn empty() -> Self {
        CSpec { zeros: Vec::new() }
    }

    /// `c = x^k`.
    pub fn monomial(k: usize, prec: usize) -> Self {
        Self::new(vec![(BigReal::zero(prec), k)])
    }

    pub fn zeros(&self) -> &[(BigReal, usize)] {
        &self.zeros
    }

    pub fn k(&self) -> usize {
        self.zeros.iter().map(|(_, s)| s).sum()
    }

    /// `Some(k)` when `c = x^k` (including `k = 0`).
    pub fn as_monomial(&self) -> Option<usize> {
        if self.zeros.iter().all(|(x, _)| x.is_zero()) {
            Some(self.k())
        } else {
            None
        }
    }

    /// Coefficients of `c_k`.
    pub fn poly(&self, prec: usize) -> Poly {
        let mut p = Poly::constant(BigReal::one(prec));
        for (x, s) in &self.zeros {
            for _ in 0..*s {
                p = p.mul_linear(x);
            }
        }
        p
    }

    pub fn eval(&self, x: &BigReal) -> BigReal {
        let mut acc = BigReal::one(x.prec());
        for (z, s) in &self.zeros {
            let f = x - z;
            for _ in 0..*s {
                acc = acc * &f;
            }
        }
        acc
    }
}

/// Determinant of a square matrix by Gaussian elimination with full
/// pivoting, after row and column equilibration. Returns the determinant
/// and whether it is numerically singular at `prec`.
fn determinant(mut a: Vec<Vec<BigReal>>, prec: usize) -> (BigReal, bool) {
    let k = a.len();
    let mut det = BigReal::one(prec);
    if k == 0 {
        return (det, false);
    }
    // equilibrate by powers of two so the singularity test is scale-free
    for row in a.iter_mut() {
        if let Some(e) = row.iter().filter_map(BigReal::exponent).max() {
            for v in row.iter_mut() {
                *v = v.mul_pow2(-e);
            }
            det = det.mul_pow2(e);
        }
    }
    for j in 0..k {
        if let Some(e) = (0..k).filter_map(|i| a[i][j].exponent()).max() {
            for row in a.iter_mut() {
                row[j] = row[j].mul_pow2(-e);
            }
            det = det.mul_pow2(e);
        }
    }
    let tiny = BigReal::one(prec).mul_pow2(-(prec as i64) + 64);
    let mut singular = false;
    let mut cols: Vec<usize> = (0..k).collect();
    for step in 0..k {
        let mut best = (step, step);
        let mut best_abs = BigReal::zero(prec);
        for (i, row) in a.iter().enumerate().skip(step) {
            for (jj, &c) in cols.iter().enumerate().skip(step) {
                let v = row[c].abs();
                if v > best_abs {
                    best_abs = v;
                    best = (i, jj);
                }
            }
        }
        if best_abs.is_zero() {
            return (BigReal::zero(prec), true);
        }
        if best_abs <= tiny {
            singular = true;
        }
        if best.0 != step {
            a.swap(best.0, step);
            det = -det;
        }
        if best.1 != step {
            cols.swap(best.1, step);
            det = -det;
        }
        let pc = cols[step];
        let pivot = a[step][pc].clone();
        det = det * &pivot;
        for i in step + 1..k {
            let f = &a[i][pc] / &pivot;
            if f.is_zero() {
                continue;
            }
            for &c in &cols[step..] {
                let d = &f * &a[step][c];
                a[i][c] = &a[i][c] - d;
            }
        }
    }
    (det, singular)
}

/// First-row cofactors `U_j`, `j = 0..=k`, of the Christoffel determinant for
/// degree `big_n`: row 0 is `p_{N+j}(x)`, the other rows hold
/// `p_{N+j}^{(d)}(x_i)` for each zero `x_i` of `c_k` and `d < s_i`.
fn cofactors(rec: &Recurrence, big_n: usize, c: &CSpec) -> Result<Vec<BigReal>> {
    let k = c.k();
    let prec = rec.prec();
    let mut rows: Vec<Vec<BigReal>> = Vec::with_capacity(k);
    for (z, s) in c.zeros() {
        let t = rec.derivative_table(big_n + k, z, s - 1);
        rows.extend((0..*s).map(|d| (0..=k).map(|j| t[big_n + j][d].clone()).collect::<Vec<_>>()));
    }
    let mut u = Vec::with_capacity(k + 1);
    let mut any_singular = true;
    for j in 0..=k {
        let minor: Vec<Vec<BigReal>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let (det, singular) = determinant(minor, prec);
        if j == k && singular {
            return Err(Error::DegenerateConfiguration);
        }
        any_singular &= singular;
        u.push(if j % 2 == 0 { det } else { -det });
    }
    if any_singular {
        return Err(Error::DegenerateConfiguration);
    }
    Ok(u)
}

fn check_k(c: &CSpec) -> Result<()> {
    check_range("k", c.k(), 0, MAX_K)
}

/// Value at `x` of the Christoffel determinant for degree `n`; equal to
/// `U_k c_k(x) g_{n,k}(x)` with monic `g`.
pub fn christoffel_eval(fam: &FamilySpec, n: usize, c: &CSpec, x: &BigReal, prec: usize) -> Result<BigReal> {
    check_k(c)?;
    let rec = Recurrence::for_family(fam, n + c.k(), prec)?;
    christoffel_eval_rec(&rec, n, c, x)
}

fn christoffel_eval_rec(rec: &Recurrence, n: usize, c: &CSpec, x: &BigReal) -> Result<BigReal> {
    let u = cofactors(rec, n, c)?;
    let p = rec.eval_all(n + c.k(), x);
    Ok(u.iter().enumerate().fold(BigReal::zero(rec.prec()), |acc, (j, uj)| acc + uj * &p[n + j]))
}

/// One step of the polynomial-coefficient propagation. With `magnitude` the
/// same recurrence is run on absolute values, giving a scale against which
/// cancellation in the signed coefficients is judged.
struct PairWalker<'a> {
    rec: &'a Recurrence,
    magnitude: bool,
}

impl PairWalker<'_> {
    fn shift(&self, c: &BigReal) -> BigReal {
        if self.magnitude {
            -c.abs()
        } else {
            c.clone()
        }
    }

    fn lam(&self, l: &BigReal) -> BigReal {
        if self.magnitude {
            l.abs()
        } else {
            l.clone()
        }
    }

    fn combine(&self, a: &Poly, b: &Poly) -> Poly {
        // a - b, or a + b on magnitudes
        if self.magnitude {
            a + b
        } else {
            a - b
        }
    }

    /// `(A, B)` with `p_target = A p_n + B p_{n-1}`.
    fn expand(&self, n: usize, target: usize) -> Result<(Poly, Poly)> {
        let prec = self.rec.prec();
        let one = Poly::constant(BigReal::one(prec));
        if target == n {
            return Ok((one, Poly::zero()));
        }
        if target + 1 == n {
            return Ok((Poly::zero(), one));
        }
        // hi = p_j, lo = p_{j-1}, as (A, B) pairs
        let (mut hi, mut lo) = ((one.clone(), Poly::zero()), (Poly::zero(), one));
        if target > n {
            check_range("target degree", target, 0, self.rec.max_degree())?;
            for j in n..target {
                let s = self.shift(self.rec.c(j + 1));
                let l = self.lam(self.rec.lambda(j + 1));
                let next = (
                    self.combine(&hi.0.mul_linear(&s), &lo.0.scale(&l)),
                    self.combine(&hi.1.mul_linear(&s), &lo.1.scale(&l)),
                );
                lo = core::mem::replace(&mut hi, next);
            }
            Ok(hi)
        } else {
            // p_{j-2} = ((x - C_j) p_{j-1} - p_j) / λ_j, walking j down from n
            for j in (target + 2..=n).rev() {
                let s = self.shift(self.rec.c(j));
                let inv = self.lam(self.rec.lambda(j)).recip();
                let next = (
                    self.combine(&lo.0.mul_linear(&s), &hi.0).scale(&inv),
                    self.combine(&lo.1.mul_linear(&s), &hi.1).scale(&inv),
                );
                hi = core::mem::replace(&mut lo, next);
            }
            Ok(lo)
        }
    }
}

/// `(A, B)` with `p_{n_target} = A p_n + B p_{n-1}` identically in `x`.
pub fn poly_pair_expansion(fam: &FamilySpec, n: usize, n_target: usize, prec: usize) -> Result<(Poly, Poly)> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "n", value: 0, min: 1, max: i64::MAX });
    }
    let rec = Recurrence::for_family(fam, n.max(n_target), prec)?;
    PairWalker { rec: &rec, magnitude: false }.expand(n, n_target)
}

/// A constructed mixed recurrence
/// `A_n c_k(x) g_{n-m,k}(x) = R(x) p_n(x) - G(x) p_{n-1}(x)`.
#[derive(Clone, Debug)]
pub struct MixedRec {
    pub fam: FamilySpec,
    pub c: CSpec,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// `A_n = U_k`, fixed by matching leading coefficients (`c_k`, `g` monic).
    pub a_n: BigReal,
    pub r: Poly,
    pub g: Poly,
    /// First-row cofactors of the determinant for degree `n - m`.
    pub u: Vec<BigReal>,
    /// Set when `k > 2m`, outside the range where `deg G = m - 1`.
    pub degree_warning: bool,
    pub prec: usize,
}

/// Coefficients below this fraction of their magnitude scale are
/// cancellation noise and are treated as exact zeros.
fn noise_floor(prec: usize) -> BigReal {
    BigReal::one(prec).mul_pow2(-(prec as i64) + 64)
}

fn trim(p: &Poly, mag: &Poly, prec: usize) -> Poly {
    let floor = noise_floor(prec);
    let zero = BigReal::zero(prec);
    Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let scale = mag.coeff(i).cloned().unwrap_or_else(|| zero.clone());
                if c.abs() <= &floor * &scale {
                    zero.clone()
                } else {
                    c.clone()
                }
            })
            .collect(),
    )
}

/// Expected `(deg G, deg R)` for given `m`, `k`.
pub fn degree_law(m: usize, k: usize) -> (usize, usize) {
    let dg = (m - 1).max(k.saturating_sub(m + 1));
    let dr = (m - 2).max(k.saturating_sub(m));
    (dg, dr)
}

/// Builds `R` and `G` for `p_{n-m}` of the Christoffel-transformed family by
/// expanding every `p_{n-m+j}` of the determinant in the pair `(p_n, p_{n-1})`.
pub fn build_mixed_recurrence(fam: &FamilySpec, n: usize, m: usize, c: &CSpec, prec: usize) -> Result<MixedRec> {
    check_k(c)?;
    if n < 3 {
        return Err(Error::OutOfRange { what: "n", value: n as i64, min: 3, max: i64::MAX });
    }
    check_range("m", m, 2, n - 1)?;
    let k = c.k();
    let big_n = n - m;
    // guard digits for the cancellation inside R and G
    let work = 2 * prec;
    let rec = Recurrence::for_family(fam, n.max(big_n + k), work)?;
    let u = cofactors(&rec, big_n, c)?;
    let signed = PairWalker { rec: &rec, magnitude: false };
    let magnitude = PairWalker { rec: &rec, magnitude: true };
    let (mut r, mut g) = (Poly::zero(), Poly::zero());
    let (mut r_mag, mut g_mag) = (Poly::zero(), Poly::zero());
    for (j, uj) in u.iter().enumerate() {
        let (a, b) = signed.expand(n, big_n + j)?;
        let (am, bm) = magnitude.expand(n, big_n + j)?;
        let ua = uj.abs();
        r = &r + &a.scale(uj);
        g = &g - &b.scale(uj);
        r_mag = &r_mag + &am.scale(&ua);
        g_mag = &g_mag + &bm.scale(&ua);
    }
    let round = |p: &Poly| Poly::new(p.coeffs().iter().map(|v| v.with_prec(prec)).collect());
    let r = round(&trim(&r, &r_mag, work));
    let g = round(&trim(&g, &g_mag, work));
    Ok(MixedRec {
        fam: fam.clone(),
        c: c.clone(),
        n,
        m,
        k,
        a_n: u[k].with_prec(prec),
        r,
        g,
        u: u.iter().map(|v| v.with_prec(prec)).collect(),
        degree_warning: k > 2 * m,
        prec,
    })
}

impl MixedRec {
    /// Relative residual of the identity at `x`, with the left side taken
    /// from the Christoffel determinant for degree `n - m`.
    pub fn residual(&self, x: &BigReal) -> Result<BigReal> {
        let rec = Recurrence::for_family(&self.fam, self.n.max(self.n - self.m + self.k), self.prec)?;
        let lhs = christoffel_eval_rec(&rec, self.n - self.m, &self.c, x)?;
        let p = rec.eval_all(self.n, x);
        let t1 = self.r.eval(x) * &p[self.n];
        let t2 = self.g.eval(x) * &p[self.n - 1];
        let scale = lhs.abs().max(t1.abs()).max(t2.abs());
        let res = (lhs - (t1 - t2)).abs();
        Ok(if scale.is_zero() { res } else { res / scale })
    }

    /// Sorted real zeros of `G`.
    pub fn g_roots(&self) -> Result<Vec<BigReal>> {
        match self.g.degree() {
            Some(d) if d <= 4 => zeros::low_degree_roots(&self.g),
            _ => zeros::real_roots(&self.g),
        }
    }

    /// Zeros of `g_{n-m,k}`, available when `c_k = x^k` maps the family to a
    /// parameter-shifted member of itself.
    pub fn g_family_zeros(&self, rtol: &BigReal) -> Result<Vec<BigReal>> {
        let k = self.c.as_monomial().ok_or(Error::DegenerateConfiguration)?;
        let shifted = if k == 0 {
            self.fam.clone()
        } else {
            self.fam.shifted_by_monomial(k, self.prec).ok_or(Error::DegenerateConfiguration)?
        };
        Ok(zeros::family_zeros(&shifted, self.n - self.m, rtol, self.prec)?.zeros)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 192;

    fn r(s: &str) -> BigReal {
        BigReal::parse(s, P).unwrap()
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![r("2"), r("1")], vec![r("1"), r("3")]];
        let (d, s) = determinant(m, P);
        assert!(!s);
        assert_eq!(d, r("5"));
        let m = vec![vec![r("1"), r("2")], vec![r("2"), r("4")]];
        assert!(determinant(m, P).1);
    }

    #[test]
    fn k0_is_monic_p() {
        let f = FamilySpec::laguerre(r("0.5")).unwrap();
        let rec = Recurrence::for_family(&f, 6, P).unwrap();
        let x = r("1.25");
        let v = christoffel_eval(&f, 6, &CSpec::empty(), &x, P).unwrap();
        assert_eq!(v, rec.eval(6, &x).unwrap());
    }

    #[test]
    fn pair_expansion_trivial_cases() {
        let f = FamilySpec::laguerre(r("0.5")).unwrap();
        let rec = Recurrence::for_family(&f, 8, P).unwrap();
        let (a, b) = poly_pair_expansion(&f, 8, 8, P).unwrap();
        assert_eq!((a, b), (Poly::constant(BigReal::one(P)), Poly::zero()));
        let (a, b) = poly_pair_expansion(&f, 8, 6, P).unwrap();
        let l = rec.lambda(8).clone();
        assert_eq!(a, Poly::constant(-l.recip()));
        assert_eq!(b, Poly::linear_monic(rec.c(8)).scale(&l.recip()));
    }

    #[test]
    fn m2_k0_is_the_recurrence() {
        let f = FamilySpec::laguerre(r("0.5")).unwrap();
        let mr = build_mixed_recurrence(&f, 8, 2, &CSpec::empty(), P).unwrap();
        let rec = Recurrence::for_family(&f, 8, P).unwrap();
        assert_eq!(mr.g.degree(), Some(1));
        let root = &mr.g_roots().unwrap()[0];
        assert!(BigReal::rel_diff(root, rec.c(8)) < r("1e-50"));
        assert!(!mr.degree_warning);
    }

    #[test]
    fn degree_law_values() {
        assert_eq!(degree_law(3, 6), (2, 3));
        assert_eq!(degree_law(4, 8), (3, 4));
        assert_eq!(degree_law(4, 0), (3, 2));
        assert_eq!(degree_law(2, 6), (3, 4));
    }
}
