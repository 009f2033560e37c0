//! Real zeros: certified bisection on recurrence sign counts for family
//! polynomials, and seeded Newton polish for small coefficient polynomials.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::poly::Poly;
use crate::recurrence::Recurrence;

/// Largest precision the doubling loop will try before giving up.
pub const MAX_PRECISION: usize = 8192;

const MAX_REFINE_STEPS: usize = 400;

/// Sorted real zeros of a degree-`n` polynomial.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub zeros: Vec<BigReal>,
    pub n: usize,
    pub achieved_rtol: BigReal,
}

impl ZeroSet {
    pub fn smallest(&self) -> Option<&BigReal> {
        self.zeros.first()
    }

    pub fn largest(&self) -> Option<&BigReal> {
        self.zeros.last()
    }

    /// `x_{n,i}` with 1-based `i`.
    pub fn get(&self, i: usize) -> Option<&BigReal> {
        i.checked_sub(1).and_then(|i| self.zeros.get(i))
    }
}

/// Split point of `[a, b]`: the origin when it straddles zero, the geometric
/// mean when both ends share a sign and span more than six decades, the
/// midpoint otherwise.
fn split_point(a: &BigReal, b: &BigReal) -> BigReal {
    if a.is_negative() && b.is_positive() {
        return BigReal::zero(a.prec().max(b.prec()));
    }
    let neg = b.signum() <= 0 && a.is_negative();
    let (lo, hi) = if neg { (-b, -a) } else { (a.clone(), b.clone()) };
    let mid = if lo.is_zero() {
        // (0, hi]: walk down geometrically
        hi.mul_pow2(-32)
    } else if hi.exponent().unwrap_or(0) - lo.exponent().unwrap_or(0) > 20 {
        (&lo * &hi).sqrt().expect("positive product")
    } else {
        (&lo + &hi).mul_pow2(-1)
    };
    if neg {
        -mid
    } else {
        mid
    }
}

/// Newton iteration safeguarded by the bracket `(a, b]`; `f` returns the
/// value and derivative. The sign of `f(a)` must differ from that of `f(b)`.
fn refine_bracketed(
    f: impl Fn(&BigReal) -> (BigReal, BigReal),
    mut a: BigReal,
    mut b: BigReal,
    rtol: &BigReal,
    abs_floor: &BigReal,
) -> BigReal {
    let fb = f(&b).0;
    if fb.is_zero() {
        return b;
    }
    // The bracket is half-open: a zero exactly at `a` belongs to the
    // neighbouring bracket, so take the sign just above `a` from `f'(a)`.
    let (fa, dfa) = f(&a);
    let sa = if fa.is_zero() { dfa.signum() } else { fa.signum() };
    let tol = |x: &BigReal| rtol * x.abs() + abs_floor;
    let mut x = split_point(&a, &b);
    for _ in 0..MAX_REFINE_STEPS {
        let (fx, dfx) = f(&x);
        if fx.is_zero() {
            return x;
        }
        if fx.signum() == sa {
            a = x.clone();
        } else {
            b = x.clone();
        }
        let width = &b - &a;
        if width <= tol(&a).min(tol(&b)) {
            return split_point(&a, &b);
        }
        let mut next = None;
        if !dfx.is_zero() {
            let cand = &x - &fx / &dfx;
            if cand > a && cand < b && (&cand - &x).abs() <= width.mul_pow2(-1) {
                next = Some(cand);
            }
        }
        let next = next.unwrap_or_else(|| split_point(&a, &b));
        let step = (&next - &x).abs();
        x = next;
        if step <= tol(&x).mul_pow2(-4) {
            return x;
        }
    }
    x
}

/// Gershgorin interval of the Jacobi matrix of `p_n`.
fn gershgorin(rec: &Recurrence, n: usize) -> (BigReal, BigReal) {
    let prec = rec.prec();
    let zero = BigReal::zero(prec);
    let off = |k: usize| -> BigReal {
        if k >= 2 && k <= n {
            rec.lambda(k).abs().sqrt().unwrap_or_else(|| zero.clone())
        } else {
            zero.clone()
        }
    };
    let mut lo: Option<BigReal> = None;
    let mut hi: Option<BigReal> = None;
    for k in 1..=n {
        let r = off(k) + off(k + 1);
        let l = rec.c(k) - &r;
        let h = rec.c(k) + &r;
        lo = Some(match lo {
            Some(v) => v.min(l),
            None => l,
        });
        hi = Some(match hi {
            Some(v) => v.max(h),
            None => h,
        });
    }
    let lo = lo.expect("n >= 1");
    let hi = hi.expect("n >= 1");
    let pad = (&hi - &lo).abs().mul_pow2(-16) + BigReal::one(prec).mul_pow2(-(prec as i64));
    (lo - &pad, hi + pad)
}

/// All zeros of `p_n` from the recurrence table, refined until consecutive
/// Newton steps fall below `rtol` (relative) plus a tiny absolute floor.
///
/// Zeros are isolated by bisecting on [`Recurrence::count_zeros_above`].
pub fn recurrence_zeros(
    rec: &Recurrence,
    n: usize,
    rtol: &BigReal,
    positive_hint: Option<bool>,
) -> Result<ZeroSet> {
    if n == 0 {
        return Ok(ZeroSet { zeros: Vec::new(), n, achieved_rtol: BigReal::zero(rec.prec()) });
    }
    if n > rec.max_degree() {
        return Err(Error::OutOfRange {
            what: "degree",
            value: n as i64,
            min: 0,
            max: rec.max_degree() as i64,
        });
    }
    let prec = rec.prec();
    let (mut lo, mut hi) = gershgorin(rec, n);
    if positive_hint == Some(true) && !lo.is_positive() {
        lo = BigReal::zero(prec);
    }
    let mut c_lo = rec.count_zeros_above(n, &lo);
    let mut guard = 0;
    while c_lo < n || rec.count_zeros_above(n, &hi) > 0 {
        // the table does not match the Gershgorin estimate; widen
        lo = &lo - (&hi - &lo).abs() - BigReal::one(prec);
        hi = &hi + (&hi - &lo).abs() + BigReal::one(prec);
        c_lo = rec.count_zeros_above(n, &lo);
        guard += 1;
        if guard > 64 {
            return Err(Error::PrecisionExhausted { bits: prec });
        }
    }
    let scale = lo.abs().max(hi.abs());
    let abs_floor = scale.mul_pow2(-(prec as i64));

    let mut isolated: Vec<(BigReal, BigReal)> = Vec::with_capacity(n);
    let mut stack = vec![(lo, hi, c_lo, 0usize, 0usize)];
    let depth_cap = 8 * prec;
    while let Some((a, b, ca, cb, depth)) = stack.pop() {
        match ca - cb {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                if depth > depth_cap {
                    return Err(Error::PrecisionExhausted { bits: prec });
                }
                let t = split_point(&a, &b);
                if t <= a || t >= b {
                    return Err(Error::PrecisionExhausted { bits: prec });
                }
                let ct = rec.count_zeros_above(n, &t);
                stack.push((t.clone(), b, ct, cb, depth + 1));
                stack.push((a, t, ca, ct, depth + 1));
            }
        }
    }
    isolated.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite"));

    let f = |x: &BigReal| rec.eval_with_derivative(n, x);
    let zeros: Vec<BigReal> = isolated
        .into_iter()
        .map(|(a, b)| refine_bracketed(f, a, b, rtol, &abs_floor))
        .collect();
    Ok(ZeroSet { zeros, n, achieved_rtol: rtol.clone() })
}

/// Zeros of the family polynomial `p_n`, accepted once two runs with doubled
/// evaluation precision agree to `rtol`.
///
/// Sign evaluations run at twice the working precision `prec`; if the runs
/// disagree the working precision is doubled, up to [`MAX_PRECISION`].
pub fn family_zeros(fam: &FamilySpec, n: usize, rtol: &BigReal, prec: usize) -> Result<ZeroSet> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "n", value: 0, min: 1, max: i64::MAX });
    }
    fam.validate()?;
    let positive = fam.support(prec).lo.is_some_and(|lo| lo.is_zero());
    let mut p = prec.max(crate::bigreal::MIN_PRECISION);
    loop {
        let run = |bits: usize| -> Result<ZeroSet> {
            let rec = Recurrence::for_family(fam, n, bits)?;
            let tight = rtol.with_prec(bits).mul_pow2(-8);
            recurrence_zeros(&rec, n, &tight, Some(positive))
        };
        let first = run(2 * p)?;
        let second = run(4 * p)?;
        let scale = first
            .zeros
            .iter()
            .map(BigReal::abs)
            .fold(BigReal::zero(p), BigReal::max);
        let floor = scale.mul_pow2(-(p as i64) / 2);
        let mut worst = BigReal::zero(p);
        for (x, y) in first.zeros.iter().zip(&second.zeros) {
            let d = (x - y).abs();
            if d <= floor {
                continue;
            }
            worst = worst.max(BigReal::rel_diff(x, y));
        }
        if first.zeros.len() == second.zeros.len() && worst <= *rtol {
            let zeros = second.zeros.iter().map(|z| z.with_prec(p)).collect();
            let achieved = worst.max(rtol.mul_pow2(-8)).with_prec(p);
            return Ok(ZeroSet { zeros, n, achieved_rtol: achieved });
        }
        if 2 * p > MAX_PRECISION {
            return Err(Error::PrecisionExhausted { bits: 4 * p });
        }
        p *= 2;
    }
}

/// Values of `a` that coincide with a value of `b` to relative `tol`.
pub fn common_zeros(a: &[BigReal], b: &[BigReal], tol: &BigReal) -> Vec<BigReal> {
    a.iter()
        .filter(|x| {
            b.iter().any(|y| {
                let d = (*x - y).abs();
                let s = x.abs().max(y.abs());
                d <= tol * &s || (s.is_zero() && d.is_zero())
            })
        })
        .cloned()
        .collect()
}

/// Interlacing violations of `inner` (length `outer.len() - 1`) against
/// `outer`: entry `(i, left, right)` means `inner[i]` is not strictly inside
/// `(outer[i], outer[i+1])`.
pub fn interlacing_violations(outer: &[BigReal], inner: &[BigReal]) -> Vec<(usize, BigReal, BigReal)> {
    let mut out = Vec::new();
    if outer.len() != inner.len() + 1 {
        // count mismatch: report every slot that cannot be matched
        for i in 0..outer.len().saturating_sub(1) {
            if i >= inner.len() {
                out.push((i, outer[i].clone(), outer[i + 1].clone()));
            }
        }
        return out;
    }
    for (i, y) in inner.iter().enumerate() {
        if !(y > &outer[i] && y < &outer[i + 1]) {
            out.push((i, outer[i].clone(), outer[i + 1].clone()));
        }
    }
    out
}

/// Exact power-of-two scale `s` such that the roots of `p(s y)` are O(1).
fn root_scale_exponent(p: &Poly) -> i64 {
    let d = p.degree().unwrap_or(0);
    let lead = p.leading().and_then(BigReal::exponent).unwrap_or(0);
    let mut best: Option<i64> = None;
    for (i, c) in p.coeffs().iter().enumerate().take(d) {
        if let Some(e) = c.exponent() {
            let k = (e - lead).div_euclid((d - i) as i64);
            best = Some(best.map_or(k, |b: i64| b.max(k)));
        }
    }
    best.unwrap_or(0)
}

/// Double-precision seeds for the real roots of `p`: eigenvalues of the
/// companion matrix of `p(2^e y)`, scaled back by `2^e`.
fn companion_seeds(p: &Poly) -> Vec<BigReal> {
    let Some(d) = p.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let prec = p.coeffs()[0].prec();
    let e = root_scale_exponent(p);
    let lead = p.leading().expect("nonzero").clone();
    let scaled: Vec<f64> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (c / &lead).mul_pow2(e * (i as i64 - d as i64)).to_f64())
        .collect();
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -scaled[i];
    }
    m.complex_eigenvalues()
        .iter()
        .filter(|z| z.re.is_finite() && z.im.abs() <= 1e-4 * z.re.abs().max(1e-300))
        .map(|z| BigReal::from_f64(z.re, prec).mul_pow2(e))
        .collect()
}

/// Plain Newton from `x`; `None` when it does not settle.
fn newton_polish(p: &Poly, dp: &Poly, mut x: BigReal) -> Option<BigReal> {
    let prec = x.prec();
    for _ in 0..200 {
        let fx = p.eval(&x);
        if fx.is_zero() {
            return Some(x);
        }
        let dfx = dp.eval(&x);
        if dfx.is_zero() {
            return None;
        }
        let step = &fx / &dfx;
        x = &x - &step;
        if step.abs() <= x.abs().mul_pow2(-(prec as i64) + 4) {
            return Some(x);
        }
    }
    None
}

/// Quotient of `p` by `x - r` (synthetic division, remainder dropped).
fn deflate(p: &Poly, r: &BigReal) -> Poly {
    let c = p.coeffs();
    let d = c.len() - 1;
    let mut out = alloc::vec![BigReal::zero(r.prec()); d];
    let mut acc = c[d].clone();
    for i in (0..d).rev() {
        out[i] = acc.clone();
        acc = &c[i] + &acc * r;
    }
    Poly::new(out)
}

/// Real roots (sorted) of a polynomial of degree at most 4: double-precision
/// companion-matrix eigenvalues as seeds, Newton polish in full precision.
/// Roots found are deflated out and the remainder re-seeded at its own
/// scale, so roots many decades apart are all recovered.
pub fn low_degree_roots(p: &Poly) -> Result<Vec<BigReal>> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d > 4 {
        return Err(Error::DegreeTooHigh { degree: d, max: 4 });
    }
    let prec = p.coeffs()[0].prec();
    let dp = p.derivative();
    let same = |a: &BigReal, b: &BigReal| {
        BigReal::rel_diff(a, b) < BigReal::one(prec).mul_pow2(-(prec as i64) / 2)
    };
    let mut roots: Vec<BigReal> = Vec::new();
    let mut rest = p.clone();
    while rest.degree().is_some_and(|d| d > 0) {
        let mut found = Vec::new();
        let rest_dp = rest.derivative();
        for seed in companion_seeds(&rest) {
            // polish on the deflated factor, then on the original polynomial
            let Some(x) = newton_polish(&rest, &rest_dp, seed) else { continue };
            let Some(x) = newton_polish(p, &dp, x) else { continue };
            if !found.iter().any(|r| same(r, &x)) {
                found.push(x);
            }
        }
        if found.is_empty() {
            break;
        }
        for x in &found {
            rest = deflate(&rest, x);
        }
        for x in found {
            if !roots.iter().any(|r| same(r, &x)) {
                roots.push(x);
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Ok(roots)
}

/// Real roots of a polynomial of any degree, isolated between consecutive
/// critical points (found recursively) and refined by bracketed Newton.
/// Multiple roots are reported once.
pub fn real_roots(p: &Poly) -> Result<Vec<BigReal>> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let c = p.coeffs();
    let prec = c[0].prec();
    if d == 1 {
        return Ok(vec![-(&c[0] / &c[1])]);
    }
    let dp = p.derivative();
    let crit = real_roots(&dp)?;
    let lead = c[d].abs();
    let bound = c[..d]
        .iter()
        .map(|ci| ci.abs() / &lead)
        .fold(BigReal::zero(prec), BigReal::max)
        + BigReal::one(prec);
    let mut points = Vec::with_capacity(crit.len() + 2);
    points.push(-&bound);
    points.extend(crit.into_iter().filter(|x| x.abs() < bound));
    points.push(bound);
    let rtol = BigReal::one(prec).mul_pow2(-(prec as i64) + 8);
    let zero = BigReal::zero(prec);
    let f = |x: &BigReal| (p.eval(x), dp.eval(x));
    let mut roots: Vec<BigReal> = Vec::new();
    for w in points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let fa = p.eval(a);
        let fb = p.eval(b);
        if fa.is_zero() {
            if roots.last().is_none_or(|r| r != a) {
                roots.push(a.clone());
            }
            continue;
        }
        if fb.is_zero() || fa.signum() != fb.signum() {
            let r = refine_bracketed(f, a.clone(), b.clone(), &rtol, &zero);
            if roots.last().is_none_or(|x| *x != r) {
                roots.push(r);
            }
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_at_split_point_is_not_reused() {
        // p_3 = x^3 - 7x: bisection splits at the zero x = 0
        let p = 128;
        let c = vec![BigReal::zero(p); 4];
        let l = vec![BigReal::zero(p), BigReal::zero(p), BigReal::from_i64(3, p), BigReal::from_i64(4, p)];
        let rec = Recurrence::from_tables(c, l, p);
        let zs = recurrence_zeros(&rec, 3, &BigReal::ratio(1, 1 << 40, p), None).unwrap();
        let s7 = BigReal::from_i64(7, p).sqrt().unwrap();
        assert!(BigReal::rel_diff(&zs.zeros[2], &s7) < BigReal::ratio(1, 1 << 30, p));
        assert!(zs.zeros[1].abs() < BigReal::ratio(1, 1 << 30, p));
    }

    const P: usize = 192;

    fn r(s: &str) -> BigReal {
        BigReal::parse(s, P).unwrap()
    }

    fn poly(cs: &[&str]) -> Poly {
        Poly::new(cs.iter().map(|c| r(c)).collect())
    }

    #[test]
    fn quadratic_roots() {
        let p = poly(&["-1", "0", "1"]);
        let want = [r("-1"), r("1")];
        assert_eq!(low_degree_roots(&p).unwrap(), want);
        assert_eq!(real_roots(&p).unwrap(), want);
    }

    #[test]
    fn quartic_with_wide_scale() {
        // (x - 1e-20)(x - 3e-7)(x - 5)(x - 2e30)
        let roots = [r("1e-20"), r("3e-7"), r("5"), r("2e30")];
        let p = roots
            .iter()
            .fold(Poly::constant(BigReal::one(P)), |acc, z| acc.mul_linear(z));
        for got in [low_degree_roots(&p).unwrap(), real_roots(&p).unwrap()] {
            assert_eq!(got.len(), 4);
            for (g, w) in got.iter().zip(&roots) {
                assert!(BigReal::rel_diff(g, w) < r("1e-40"), "{g:?} vs {w:?}");
            }
        }
    }

    #[test]
    fn complex_pairs_are_dropped() {
        // (x^2 + 1)(x - 2)
        let p = poly(&["-2", "1", "-2", "1"]);
        assert_eq!(low_degree_roots(&p).unwrap(), [r("2")]);
        assert_eq!(real_roots(&p).unwrap(), [r("2")]);
    }

    #[test]
    fn tiny_coefficients() {
        let p = poly(&["-2.0032003351102592e-31", "6.753148523001083e-29", "-5.206857626591652e-27"]);
        assert_eq!(low_degree_roots(&p).unwrap().len(), 2);
    }

    #[test]
    fn degree_limit() {
        let p = poly(&["1", "0", "0", "0", "0", "1"]);
        assert!(matches!(low_degree_roots(&p), Err(Error::DegreeTooHigh { degree: 5, .. })));
        assert!(low_degree_roots(&Poly::zero()).is_err());
    }

    #[test]
    fn interlacing_check() {
        let outer = [r("1"), r("2"), r("3")];
        assert!(interlacing_violations(&outer, &[r("1.5"), r("2.5")]).is_empty());
        let bad = interlacing_violations(&outer, &[r("0.5"), r("2.5")]);
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].0, 0);
    }

    #[test]
    fn laguerre_degree_one() {
        let f = FamilySpec::laguerre(r("0")).unwrap();
        let zs = family_zeros(&f, 1, &r("1e-30"), P).unwrap();
        assert_eq!(zs.zeros.len(), 1);
        assert!(BigReal::rel_diff(&zs.zeros[0], &r("1")) < r("1e-40"));
    }
}
