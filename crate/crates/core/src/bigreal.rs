//! Arbitrary-precision real scalar.
//!
//! [`BigReal`] is a thin wrapper over a binary multiple-precision float that
//! remembers the precision it was produced at. Binary operations round to the
//! larger of the operand precisions; comparisons round both sides to the
//! smaller one first.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

use crate::error::Error;

const RM: RoundingMode = RoundingMode::ToEven;

/// Smallest supported working precision, in bits.
pub const MIN_PRECISION: usize = 64;

/// Default working precision, in bits.
pub const DEFAULT_PRECISION: usize = 256;

#[derive(Clone)]
pub struct BigReal {
    v: BigFloat,
    prec: usize,
}

fn clamp_prec(prec: usize) -> usize {
    prec.max(MIN_PRECISION)
}

fn consts() -> Consts {
    Consts::new().expect("constant cache allocation")
}

impl BigReal {
    fn wrap(v: BigFloat, prec: usize) -> Self {
        BigReal { v, prec }
    }

    pub fn zero(prec: usize) -> Self {
        let prec = clamp_prec(prec);
        Self::wrap(BigFloat::from_i64(0, prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(i: i64, prec: usize) -> Self {
        let prec = clamp_prec(prec);
        Self::wrap(BigFloat::from_i64(i, prec), prec)
    }

    /// Exact conversion of a double (every finite double is representable).
    pub fn from_f64(f: f64, prec: usize) -> Self {
        let prec = clamp_prec(prec);
        Self::wrap(BigFloat::from_f64(f, prec), prec)
    }

    /// `num / den` rounded to `prec` bits.
    pub fn ratio(num: i64, den: i64, prec: usize) -> Self {
        Self::from_i64(num, prec) / Self::from_i64(den, prec)
    }

    /// Parses a decimal literal such as `-0.55`, `1e-7` or `8.3925988e5`.
    pub fn parse(s: &str, prec: usize) -> Result<Self, Error> {
        let prec = clamp_prec(prec);
        let t = s.trim();
        let valid = !t.is_empty()
            && t.chars()
                .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
            && t.chars().any(|c| c.is_ascii_digit());
        if !valid {
            return Err(Error::InvalidNumber);
        }
        let v = BigFloat::parse(t, Radix::Dec, prec, RM, &mut consts());
        if v.is_nan() || v.is_inf() {
            return Err(Error::InvalidNumber);
        }
        Ok(Self::wrap(v, prec))
    }

    #[inline]
    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Rounds (or widens) to `prec` bits.
    pub fn with_prec(&self, prec: usize) -> Self {
        let prec = clamp_prec(prec);
        let mut v = self.v.clone();
        if v.set_precision(prec, RM).is_err() {
            return Self::wrap(BigFloat::nan(None), prec);
        }
        Self::wrap(v, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.v.is_zero() {
            0
        } else if self.v.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.prec)
    }

    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        Some(Self::wrap(self.v.sqrt(self.prec, RM), self.prec))
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.v.reciprocal(self.prec, RM), self.prec)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let r = self.v.powi(n.unsigned_abs() as usize, self.prec, RM);
        let r = Self::wrap(r, self.prec);
        if n < 0 {
            r.recip()
        } else {
            r
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() || !self.is_finite() {
            return self.clone();
        }
        let mut v = self.v.clone();
        let e = v.exponent().unwrap_or(0) as i64 + k;
        v.set_exponent(e.clamp(astro_float::EXPONENT_MIN as i64, astro_float::EXPONENT_MAX as i64) as i32);
        Self::wrap(v, self.prec)
    }

    /// Binary exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() || !self.is_finite() {
            return None;
        }
        self.v.exponent().map(i64::from)
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Nearest double; saturates to ±inf / flushes to zero outside the double range.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf() {
            return if self.v.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        let Some((words, _, sign, e, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        let mant = top as f64;
        let r = libm::ldexp(mant, e - 64);
        if sign == Sign::Neg {
            -r
        } else {
            r
        }
    }

    /// Relative distance `|a - b| / max(|a|, |b|)`, zero when both vanish.
    pub fn rel_diff(a: &Self, b: &Self) -> Self {
        let scale = a.abs().max(b.abs());
        if scale.is_zero() {
            return Self::zero(a.prec.max(b.prec));
        }
        (a - b).abs() / scale
    }

    /// Scientific notation with `digits` significant digits, e.g. `4.0638110000000000e2`.
    pub fn to_sci(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.v.is_nan() {
            return String::from("NaN");
        }
        if self.v.is_inf() {
            return String::from(if self.v.is_negative() { "-inf" } else { "inf" });
        }
        if self.is_zero() {
            let mut s = String::from("0.");
            s.extend(core::iter::repeat_n('0', digits - 1));
            if digits == 1 {
                s.pop();
            }
            s.push_str("e0");
            return s;
        }
        let raw = self
            .v
            .format(Radix::Dec, RM, &mut consts())
            .unwrap_or_else(|_| String::from("NaN"));
        let (neg, mut ds, mut exp10) = decompose_decimal(&raw);
        // round half up on the decimal expansion
        if ds.len() > digits {
            let round_up = ds.as_bytes()[digits] >= b'5';
            ds.truncate(digits);
            if round_up {
                let mut bytes = ds.into_bytes();
                let mut i = bytes.len();
                loop {
                    if i == 0 {
                        bytes.insert(0, b'1');
                        bytes.pop();
                        exp10 += 1;
                        break;
                    }
                    i -= 1;
                    if bytes[i] == b'9' {
                        bytes[i] = b'0';
                    } else {
                        bytes[i] += 1;
                        break;
                    }
                }
                ds = String::from_utf8(bytes).expect("ascii digits");
            }
        }
        while ds.len() < digits {
            ds.push('0');
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&ds[..1]);
        if digits > 1 {
            out.push('.');
            out.push_str(&ds[1..]);
        }
        out.push('e');
        out.push_str(&alloc::format!("{exp10}"));
        out
    }
}

/// Splits a decimal rendering into (negative, significant digits, exponent of first digit).
fn decompose_decimal(raw: &str) -> (bool, String, i64) {
    let (neg, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw.strip_prefix('+').unwrap_or(raw)),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let mut all = String::from(int_part);
    all.push_str(frac_part);
    let lead = all.bytes().take_while(|&b| b == b'0').count();
    let ds: String = all[lead..].trim_end_matches('0').into();
    let ds = if ds.is_empty() { String::from("0") } else { ds };
    let exp10 = exp + int_part.len() as i64 - 1 - lead as i64;
    (neg, ds, exp10)
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(17);
        f.write_str(&self.to_sci(digits))
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let c = if self.prec == other.prec {
            self.v.cmp(&other.v)
        } else if self.prec < other.prec {
            self.v.cmp(&other.with_prec(self.prec).v)
        } else {
            self.with_prec(other.prec).v.cmp(&other.v)
        }?;
        Some(c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            #[inline]
            fn $method(self, rhs: &BigReal) -> BigReal {
                let p = self.prec.max(rhs.prec);
                BigReal::wrap(self.v.$op(&rhs.v, p, RM), p)
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            #[inline]
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            #[inline]
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            #[inline]
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(self.v.neg(), self.prec)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(self.v.clone().neg(), self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let x = BigReal::parse("8.3925988e5", 128).unwrap();
        assert_eq!(x.to_sci(8), "8.3925988e5");
        let y = BigReal::parse("-0.0000073", 128).unwrap();
        assert_eq!(y.to_sci(2), "-7.3e-6");
        assert_eq!(BigReal::from_i64(406, 128).to_sci(5), "4.0600e2");
        assert_eq!(BigReal::zero(64).to_sci(3), "0.00e0");
        assert!(BigReal::parse("abc", 64).is_err());
        assert!(BigReal::parse("", 64).is_err());
    }

    #[test]
    fn rounding_carries_into_exponent() {
        let x = BigReal::parse("9.9996", 128).unwrap();
        assert_eq!(x.to_sci(4), "1.000e1");
    }

    #[test]
    fn one_third_is_correctly_rounded() {
        let third = BigReal::ratio(1, 3, 256);
        let back = &third * &BigReal::from_i64(3, 256);
        let err = (back - BigReal::one(256)).abs();
        assert!(err <= BigReal::one(256).mul_pow2(-255));
    }

    #[test]
    fn to_f64_matches_and_saturates() {
        for v in [1.0, -2.5, 0.1, 1e-300, 6.02e23, -3.3e-12] {
            assert_eq!(BigReal::from_f64(v, 128).to_f64(), v);
        }
        let huge = BigReal::from_i64(2, 128).powi(5000);
        assert_eq!(huge.to_f64(), f64::INFINITY);
        assert_eq!(huge.recip().to_f64(), 0.0);
    }

    #[test]
    fn comparisons_use_lower_precision() {
        let a = BigReal::ratio(1, 3, 512);
        let b = a.with_prec(64);
        assert_eq!(a, b);
        assert!(BigReal::from_i64(-1, 64) < BigReal::zero(256));
    }

    #[test]
    fn powi_and_sqrt() {
        let q = BigReal::parse("0.5", 128).unwrap();
        assert_eq!(q.powi(-3), BigReal::from_i64(8, 128));
        assert_eq!(BigReal::from_i64(49, 128).sqrt().unwrap(), BigReal::from_i64(7, 128));
        assert!(BigReal::from_i64(-1, 128).sqrt().is_none());
        assert_eq!(BigReal::from_i64(3, 128).mul_pow2(4), BigReal::from_i64(48, 128));
    }
}
