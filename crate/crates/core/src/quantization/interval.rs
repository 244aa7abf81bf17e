//! Outward-rounded dyadic interval arithmetic, enough for certified
//! evaluation of trigonometric sums.

use num::{BigInt, BigRational, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    BigRational::new(
        (x * BigRational::from_integer(s.clone()))
            .floor()
            .to_integer(),
        s,
    )
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    BigRational::new(
        (x * BigRational::from_integer(s.clone()))
            .ceil()
            .to_integer(),
        s,
    )
}

impl Interval {
    pub fn exact(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::exact(BigRational::from_integer(n.into()))
    }

    fn rounded(lo: BigRational, hi: BigRational, bits: u32) -> Self {
        Self {
            lo: round_down(&lo, bits),
            hi: round_up(&hi, bits),
        }
    }

    #[cfg(test)]
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn add(&self, o: &Self, bits: u32) -> Self {
        Self::rounded(&self.lo + &o.lo, &self.hi + &o.hi, bits)
    }

    pub fn sub(&self, o: &Self, bits: u32) -> Self {
        Self::rounded(&self.lo - &o.hi, &self.hi - &o.lo, bits)
    }

    pub fn mul(&self, o: &Self, bits: u32) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::rounded(lo, hi, bits)
    }

    pub fn scale(&self, k: &BigRational, bits: u32) -> Self {
        self.mul(&Self::exact(k.clone()), bits)
    }

    /// Reciprocal of a strictly positive interval.
    pub fn recip(&self, bits: u32) -> Option<Self> {
        if !self.lo.is_positive() {
            return None;
        }
        Some(Self::rounded(self.hi.recip(), self.lo.recip(), bits))
    }

    pub fn powi(&self, n: u32, bits: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..n {
            acc = acc.mul(self, bits);
        }
        acc
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }
}

/// Enclosure of atan(1/m) for integer m >= 2 from the alternating series.
fn atan_inv(m: i64, bits: u32) -> Interval {
    let guard = bits + 16;
    let inv_m2 = BigRational::new(BigInt::one(), BigInt::from(m * m));
    let eps = BigRational::new(BigInt::one(), pow2(bits + 8));
    let mut sum = Interval::from_int(0);
    // power encloses 1 / m^(2i+1)
    let mut power = Interval::rounded(
        BigRational::new(BigInt::one(), BigInt::from(m)),
        BigRational::new(BigInt::one(), BigInt::from(m)),
        guard,
    );
    let mut i: i64 = 0;
    loop {
        let term = power.scale(
            &BigRational::new(BigInt::one(), BigInt::from(2 * i + 1)),
            guard,
        );
        if term.hi < eps {
            // Alternating decreasing series: the remainder is bounded by the next term.
            let tail = if i % 2 == 0 {
                Interval {
                    lo: BigRational::zero(),
                    hi: term.hi,
                }
            } else {
                Interval {
                    lo: -term.hi,
                    hi: BigRational::zero(),
                }
            };
            return sum.add(&tail, guard);
        }
        sum = if i % 2 == 0 {
            sum.add(&term, guard)
        } else {
            sum.sub(&term, guard)
        };
        power = power.scale(&inv_m2, guard);
        i += 1;
    }
}

/// Enclosure of π by Machin's formula.
pub(crate) fn pi(bits: u32) -> Interval {
    let a = atan_inv(5, bits + 8).scale(&BigRational::from_integer(16.into()), bits + 8);
    let b = atan_inv(239, bits + 8).scale(&BigRational::from_integer(4.into()), bits + 8);
    let p = a.sub(&b, bits + 8);
    Interval::rounded(p.lo, p.hi, bits)
}

/// Lower and upper bounds of sin(x) at an exact point `0 <= x < 2`.
fn sin_point(x: &BigRational, bits: u32) -> Interval {
    let guard = bits + 16;
    let x2 = x * x;
    let eps = BigRational::new(BigInt::one(), pow2(bits + 8));
    let mut sum = Interval::from_int(0);
    let mut term = Interval::exact(x.clone());
    let mut i: u32 = 0;
    loop {
        if term.hi < eps {
            let tail = if i % 2 == 0 {
                Interval {
                    lo: BigRational::zero(),
                    hi: term.hi.clone(),
                }
            } else {
                Interval {
                    lo: -term.hi.clone(),
                    hi: BigRational::zero(),
                }
            };
            return sum.add(&tail, guard);
        }
        sum = if i % 2 == 0 {
            sum.add(&term, guard)
        } else {
            sum.sub(&term, guard)
        };
        let div = BigRational::from_integer(BigInt::from((2 * i + 2) * (2 * i + 3)));
        term = term.scale(&(&x2 / div), guard);
        i += 1;
    }
}

/// Enclosure of sin(r·π/n) for `0 < r/n < 1/2`. `None` when the precision is
/// too low to certify monotonicity.
pub(crate) fn sin_pi_fraction(r: u64, n: u64, bits: u32) -> Option<Interval> {
    let p = pi(bits + 8);
    let frac = BigRational::new(BigInt::from(r), BigInt::from(n));
    let angle = p.scale(&frac, bits + 8);
    let half_pi_lo = &p.lo / BigRational::from_integer(2.into());
    if angle.hi >= half_pi_lo || angle.lo.is_negative() {
        return None;
    }
    let lo = sin_point(&angle.lo, bits).lo;
    let hi = sin_point(&angle.hi, bits).hi;
    Some(Interval::rounded(lo, hi, bits))
}

/// Decimal string of `x` with `digits` significant digits (round half up).
pub(crate) fn format_significant(x: &BigRational, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let ten = BigRational::from_integer(10.into());
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten;
        e -= 1;
    }
    let shift = digits as i64 - 1 - e;
    let factor =
        BigRational::from_integer(num::pow(BigInt::from(10), shift.unsigned_abs() as usize));
    let v = if shift >= 0 {
        &a * &factor
    } else {
        &a / &factor
    };
    let half = BigRational::new(1.into(), 2.into());
    let mut int = (v + half).floor().to_integer().to_string();
    let mut e = e;
    if int.len() > digits as usize {
        // Rounding carried into a new digit.
        int.pop();
        e += 1;
    }
    let body = if e >= digits as i64 - 1 {
        let zeros = (e - (digits as i64 - 1)) as usize;
        format!("{int}{}", "0".repeat(zeros))
    } else if e >= 0 {
        let split = (e + 1) as usize;
        format!("{}.{}", &int[..split], &int[split..])
    } else {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), int)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi(128);
        assert!(p.width() < BigRational::new(1.into(), BigInt::one() << 120));
        assert_eq!(
            format_significant(&p.midpoint(), 30),
            "3.14159265358979323846264338328"
        );
        assert!(p.lo < p.hi);
    }

    #[test]
    fn sin_of_sixth() {
        // sin(pi/6) = 1/2
        let s = sin_pi_fraction(1, 6, 96).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert!(s.lo <= half && half <= s.hi);
        assert!(s.width() < BigRational::new(1.into(), BigInt::one() << 90));
    }

    #[test]
    fn sin_of_third_squared() {
        let s = sin_pi_fraction(1, 3, 96).unwrap();
        let sq = s.mul(&s, 96);
        let three_quarters = BigRational::new(3.into(), 4.into());
        assert!(sq.lo <= three_quarters && three_quarters <= sq.hi);
    }

    #[test]
    fn near_half_pi_needs_precision() {
        // angle 100000π/200001 is just below π/2; low precision cannot separate it.
        assert!(sin_pi_fraction(100000, 200001, 4).is_none());
        assert!(sin_pi_fraction(100000, 200001, 64).is_some());
    }

    #[test]
    fn significant_digits() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(format_significant(&q(1, 3), 5), "0.33333");
        assert_eq!(format_significant(&q(2, 3), 3), "0.667");
        assert_eq!(format_significant(&q(1234567, 1), 3), "1230000");
        assert_eq!(format_significant(&q(-1, 400), 2), "-0.0025");
        assert_eq!(format_significant(&q(9999, 1000), 2), "10");
        assert_eq!(format_significant(&q(1, 1), 3), "1.00");
    }
}
