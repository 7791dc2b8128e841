//! Directed-rounding interval arithmetic over dyadic fixed-point numbers.
//!
//! An [`Interval`] stores two `BigInt` numerators `lo`, `hi` at a shared
//! scale `2^precision_bits`, representing the closed enclosure
//! `[lo/2^p, hi/2^p]`. Every operation rounds outward, so the containment
//! contract holds by construction: if the inputs enclose the true real
//! values, the output encloses the true result. Precision is always a
//! per-call parameter; enclosures never depend on ambient state.
//!
//! Enclosures of pi and e are produced by convergent series with explicit
//! tail bounds and are checked on every construction against embedded
//! 64-digit reference constants; a failed check is an implementation bug,
//! not an input error.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::rat;
use crate::{Error, Result};

/// First 64 decimal digits of pi; the truncation error is below 1e-63.
const PI_REFERENCE: &str =
    "3.141592653589793238462643383279502884197169399375105820974944592";
/// First 64 decimal digits of e.
const E_REFERENCE: &str =
    "2.718281828459045235360287471352662497757247093699959574966967627";

/// Closed dyadic enclosure `[lo/2^p, hi/2^p]` with outward-rounded arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    precision_bits: u32,
}

fn pow2(p: u32) -> BigInt {
    BigInt::one() << p as usize
}

fn floor_at(r: &BigRational, p: u32) -> BigInt {
    (r.numer() << p as usize).div_floor(r.denom())
}

fn ceil_at(r: &BigRational, p: u32) -> BigInt {
    (r.numer() << p as usize).div_ceil(r.denom())
}

impl Interval {
    fn new(lo: BigInt, hi: BigInt, precision_bits: u32) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo,
            hi,
            precision_bits,
        }
    }

    /// Tightest enclosure of an exact rational at the given scale; a point
    /// interval whenever the rational is representable.
    pub fn from_rational(r: &BigRational, precision_bits: u32) -> Self {
        Interval::new(floor_at(r, precision_bits), ceil_at(r, precision_bits), precision_bits)
    }

    /// Outward-rounded enclosure of an exact rational pair `[lo, hi]`.
    pub fn from_rational_bounds(lo: &BigRational, hi: &BigRational, precision_bits: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval::new(floor_at(lo, precision_bits), ceil_at(hi, precision_bits), precision_bits)
    }

    /// Point interval of a machine integer (always exact).
    pub fn from_int(value: i64, precision_bits: u32) -> Self {
        let numer = BigInt::from(value) << precision_bits as usize;
        Interval::new(numer.clone(), numer, precision_bits)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Exact rational value of the lower endpoint.
    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow2(self.precision_bits))
    }

    /// Exact rational value of the upper endpoint.
    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow2(self.precision_bits))
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, pow2(self.precision_bits))
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        &self.lo_rational() <= r && r <= &self.hi_rational()
    }

    /// The whole interval is strictly above zero.
    pub fn proves_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// The whole interval is at or below zero.
    pub fn proves_nonpositive(&self) -> bool {
        !self.hi.is_positive()
    }

    /// Re-scale; rounds outward when the target scale is coarser.
    pub fn to_precision(&self, precision_bits: u32) -> Self {
        if precision_bits >= self.precision_bits {
            let shift = (precision_bits - self.precision_bits) as usize;
            Interval::new(&self.lo << shift, &self.hi << shift, precision_bits)
        } else {
            let shift = (self.precision_bits - precision_bits) as usize;
            let divisor = BigInt::one() << shift;
            Interval::new(
                self.lo.div_floor(&divisor),
                self.hi.div_ceil(&divisor),
                precision_bits,
            )
        }
    }

    fn aligned(&self, other: &Interval) -> (Interval, Interval, u32) {
        let p = self.precision_bits.max(other.precision_bits);
        (self.to_precision(p), other.to_precision(p), p)
    }

    /// Sum; exact at the common scale.
    pub fn add(&self, other: &Interval) -> Interval {
        let (a, b, p) = self.aligned(other);
        Interval::new(a.lo + b.lo, a.hi + b.hi, p)
    }

    /// Difference; exact at the common scale.
    pub fn sub(&self, other: &Interval) -> Interval {
        let (a, b, p) = self.aligned(other);
        Interval::new(a.lo - b.hi, a.hi - b.lo, p)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo, self.precision_bits)
    }

    /// Product, rounded outward at the common scale.
    pub fn mul(&self, other: &Interval) -> Interval {
        let (a, b, p) = self.aligned(other);
        let candidates = [
            &a.lo * &b.lo,
            &a.lo * &b.hi,
            &a.hi * &b.lo,
            &a.hi * &b.hi,
        ];
        let lo = candidates.iter().min().unwrap();
        let hi = candidates.iter().max().unwrap();
        let divisor = pow2(p);
        Interval::new(lo.div_floor(&divisor), hi.div_ceil(&divisor), p)
    }

    /// Quotient. The divisor must not contain zero.
    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if !other.proves_positive() && !other.hi.is_negative() {
            return Err(Error::Domain(
                "interval division by an interval containing zero".into(),
            ));
        }
        let (a, b, p) = self.aligned(other);
        let quotients = [
            BigRational::new(a.lo.clone(), b.lo.clone()),
            BigRational::new(a.lo.clone(), b.hi.clone()),
            BigRational::new(a.hi.clone(), b.lo.clone()),
            BigRational::new(a.hi.clone(), b.hi.clone()),
        ];
        let lo = quotients.iter().min().unwrap();
        let hi = quotients.iter().max().unwrap();
        Ok(Interval::from_rational_bounds(lo, hi, p))
    }

    /// Scale by an exact rational, rounded outward.
    pub fn mul_rational(&self, r: &BigRational) -> Interval {
        let (a, b) = if r.is_negative() {
            (self.hi_rational() * r, self.lo_rational() * r)
        } else {
            (self.lo_rational() * r, self.hi_rational() * r)
        };
        Interval::from_rational_bounds(&a, &b, self.precision_bits)
    }

    /// Translate by an exact rational, rounded outward.
    pub fn add_rational(&self, r: &BigRational) -> Interval {
        Interval::new(
            &self.lo + floor_at(r, self.precision_bits),
            &self.hi + ceil_at(r, self.precision_bits),
            self.precision_bits,
        )
    }

    /// Enclosure of the pointwise minimum of two quantities.
    pub fn min_with(&self, other: &Interval) -> Interval {
        let (a, b, p) = self.aligned(other);
        Interval::new(a.lo.min(b.lo), a.hi.min(b.hi), p)
    }
}

/// Directed square root of an interval with nonnegative lower endpoint.
pub fn sqrt_interval(x: &Interval, precision_bits: u32) -> Result<Interval> {
    if x.lo.is_negative() {
        return Err(Error::Domain(
            "sqrt_interval: enclosure extends below zero".into(),
        ));
    }
    let p = precision_bits;
    // sqrt(v) at scale 2^p equals isqrt(v * 2^(2p)) at integer level.
    let scale = |numer: &BigInt, round_up: bool| -> BigInt {
        let shift = 2 * p as i64 - x.precision_bits as i64;
        if shift >= 0 {
            numer << shift as usize
        } else {
            let divisor = BigInt::one() << (-shift) as usize;
            if round_up {
                numer.div_ceil(&divisor)
            } else {
                numer.div_floor(&divisor)
            }
        }
    };
    let lo_scaled = scale(&x.lo, false);
    let hi_scaled = scale(&x.hi, true);
    let lo_root = lo_scaled.sqrt();
    let hi_floor = hi_scaled.sqrt();
    let hi_root = if &hi_floor * &hi_floor == hi_scaled {
        hi_floor
    } else {
        hi_floor + 1
    };
    Ok(Interval::new(lo_root, hi_root, p))
}

#[derive(Hash, PartialEq, Eq, Clone, Copy)]
enum ConstantKind {
    Pi,
    E,
    Ln2,
}

fn constant_cache() -> &'static Mutex<HashMap<(ConstantKind, u32), Interval>> {
    static CACHE: OnceLock<Mutex<HashMap<(ConstantKind, u32), Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_constant(kind: ConstantKind, p: u32, compute: impl FnOnce() -> Interval) -> Interval {
    if let Some(hit) = constant_cache().lock().unwrap().get(&(kind, p)) {
        return hit.clone();
    }
    let value = compute();
    constant_cache()
        .lock()
        .unwrap()
        .insert((kind, p), value.clone());
    value
}

/// Exact rational bracket `[lo, hi]` of `atan(1/m)` from the alternating
/// series: consecutive partial sums straddle the limit.
fn atan_inv_bracket(m: i64, tail_bound: &BigRational) -> (BigRational, BigRational) {
    let m2 = rat(m, 1) * rat(m, 1);
    let mut term = rat(1, m);
    let mut partial = BigRational::zero();
    let mut k = 0u32;
    loop {
        // term = 1 / ((2k+1) m^(2k+1)) with alternating signs
        let signed = &term / rat(2 * i64::from(k) + 1, 1);
        if k % 2 == 0 {
            partial += &signed;
            if &signed <= tail_bound {
                // last added term positive: partial is an upper bound
                return (&partial - signed, partial);
            }
        } else {
            partial -= &signed;
            if &signed <= tail_bound {
                return (partial.clone(), partial + signed);
            }
        }
        term /= &m2;
        k += 1;
    }
}

fn reference_bracket(digits: &str) -> (BigRational, BigRational) {
    let no_point: String = digits.chars().filter(|c| *c != '.').collect();
    let scale = BigInt::from(10u8).pow(no_point.len() as u32 - 1);
    let lo = BigRational::new(no_point.parse().unwrap(), scale.clone());
    let hi = &lo + BigRational::new(BigInt::one(), scale);
    (lo, hi)
}

fn assert_reference(value: &Interval, digits: &str, name: &str) {
    let (ref_lo, ref_hi) = reference_bracket(digits);
    // Both enclosures contain the true constant, so they must intersect.
    assert!(
        value.lo_rational() <= ref_hi && ref_lo <= value.hi_rational(),
        "{name} enclosure disagrees with embedded reference digits"
    );
}

/// Rigorous enclosure of pi via Machin's formula
/// `pi = 16 atan(1/5) - 4 atan(1/239)`, validated against embedded
/// reference digits. Width is at most `2^(8-precision_bits)`.
pub fn pi_interval(precision_bits: u32) -> Interval {
    cached_constant(ConstantKind::Pi, precision_bits, || {
        let tail = BigRational::new(BigInt::one(), pow2(precision_bits + 8));
        let (a5_lo, a5_hi) = atan_inv_bracket(5, &tail);
        let (a239_lo, a239_hi) = atan_inv_bracket(239, &tail);
        let lo = rat(16, 1) * a5_lo - rat(4, 1) * a239_hi;
        let hi = rat(16, 1) * a5_hi - rat(4, 1) * a239_lo;
        let value = Interval::from_rational_bounds(&lo, &hi, precision_bits);
        assert_reference(&value, PI_REFERENCE, "pi");
        value
    })
}

/// Rigorous enclosure of e from the factorial series with tail bound
/// `2/(N+1)!`, validated against embedded reference digits.
pub fn e_interval(precision_bits: u32) -> Interval {
    cached_constant(ConstantKind::E, precision_bits, || {
        let tail_target = BigRational::new(BigInt::one(), pow2(precision_bits + 8));
        let mut partial = rat(1, 1);
        let mut term = rat(1, 1);
        let mut k = 1i64;
        loop {
            term /= rat(k, 1);
            partial += &term;
            let tail = &term * rat(2, k + 1);
            if tail <= tail_target {
                let value = Interval::from_rational_bounds(
                    &partial,
                    &(partial.clone() + tail),
                    precision_bits,
                );
                assert_reference(&value, E_REFERENCE, "e");
                return value;
            }
            k += 1;
        }
    })
}

/// Enclosure of ln 2 from `2 atanh(1/3)` with a geometric tail bound.
fn ln2_interval(precision_bits: u32) -> Interval {
    cached_constant(ConstantKind::Ln2, precision_bits, || {
        let tail_target = BigRational::new(BigInt::one(), pow2(precision_bits + 8));
        let ninth = rat(1, 9);
        let mut power = rat(1, 3);
        let mut partial = BigRational::zero();
        let mut k = 0i64;
        loop {
            partial += &power / rat(2 * k + 1, 1);
            power *= &ninth;
            // remaining tail <= power/(2k+3) * 1/(1 - 1/9)
            let tail = &power * rat(9, 8) / rat(2 * k + 3, 1);
            if tail <= tail_target {
                let lo = rat(2, 1) * &partial;
                let hi = rat(2, 1) * (partial + tail);
                return Interval::from_rational_bounds(&lo, &hi, precision_bits);
            }
            k += 1;
        }
    })
}

/// Split `x > 0` as `2^s * m` with `m` in `[1, 2)`.
fn split_binary(x: &BigRational) -> (i64, BigRational) {
    let mut s = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = rat(2, 1);
    let mut m = if s >= 0 {
        x / BigRational::from_integer(BigInt::one() << s as usize)
    } else {
        x * BigRational::from_integer(BigInt::one() << (-s) as usize)
    };
    while m < BigRational::one() {
        m *= &two;
        s -= 1;
    }
    while m >= two {
        m /= &two;
        s += 1;
    }
    (s, m)
}

/// Rigorous enclosure of `ln x` for exact rational `x > 0`.
///
/// Reduces to `m` in `[1, 2)` by powers of two, then sums the
/// `atanh((m-1)/(m+1))` series in interval arithmetic with a geometric
/// remainder bound. Width is at most a few ulps at `precision_bits`.
pub fn ln_interval(x: &BigRational, precision_bits: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("ln_interval: x={x} must be > 0")));
    }
    let q = precision_bits + 32;
    let (s, m) = split_binary(x);
    let series = if m.is_one() {
        Interval::from_int(0, q)
    } else {
        let t = (&m - BigRational::one()) / (&m + BigRational::one());
        let t_int = Interval::from_rational(&t, q);
        let t_squared = t_int.mul(&t_int);
        let mut power = t_int.clone();
        let mut sum = t_int;
        let mut k = 1i64;
        let cutoff = BigRational::new(BigInt::one(), pow2(q + 6));
        loop {
            power = power.mul(&t_squared);
            sum = sum.add(&power.mul_rational(&rat(1, 2 * k + 1)));
            // t < 1/3 so the remaining tail is below power * t^2 * 9/8
            let tail = power.hi_rational() * t_squared.hi_rational() * rat(9, 8);
            if tail <= cutoff {
                sum = Interval::from_rational_bounds(
                    &sum.lo_rational(),
                    &(sum.hi_rational() + tail),
                    q,
                );
                break;
            }
            k += 1;
        }
        sum.mul_rational(&rat(2, 1))
    };
    let with_exponent = if s == 0 {
        series
    } else {
        series.add(&ln2_interval(q).mul_rational(&rat(s, 1)))
    };
    Ok(with_exponent.to_precision(precision_bits))
}

/// Enclosure of `ln` over a positive interval (monotone, endpoint-wise).
pub fn ln_of_interval(x: &Interval, precision_bits: u32) -> Result<Interval> {
    if !x.proves_positive() {
        return Err(Error::Domain(
            "ln_of_interval: enclosure must be strictly positive".into(),
        ));
    }
    let lo = ln_interval(&x.lo_rational(), precision_bits)?;
    let hi = ln_interval(&x.hi_rational(), precision_bits)?;
    Ok(Interval::new(lo.lo, hi.hi, precision_bits))
}

/// Enclosure of `exp(r)` for an exact rational `r`.
fn exp_rational_enclosure(r: &BigRational, q: u32) -> Interval {
    // Reduce r = k ln2 + rem with rem in [0, ~0.7), then exp(rem) by Taylor.
    let ln2 = ln2_interval(q);
    let mut k = (r / ln2.hi_rational()).floor().to_integer();
    let mut rem = Interval::from_rational(r, q).sub(&ln2.mul_rational(&BigRational::from_integer(k.clone())));
    while rem.hi_rational() >= BigRational::one() {
        k += 1;
        rem = rem.sub(&ln2);
    }
    let mut sum = Interval::from_int(1, q);
    let mut term = Interval::from_int(1, q);
    let mut j = 1i64;
    let cutoff = BigRational::new(BigInt::one(), pow2(q + 6));
    loop {
        term = term.mul(&rem).mul_rational(&rat(1, j));
        sum = sum.add(&term);
        let magnitude = term
            .lo_rational()
            .abs()
            .max(term.hi_rational().abs());
        if magnitude <= cutoff && j as u64 > 1 {
            // |rem| < 1 and terms shrink by at least 1/2 from here on,
            // so the remaining tail is below 2 * magnitude.
            let tail = magnitude * rat(2, 1);
            sum = Interval::from_rational_bounds(
                &(sum.lo_rational() - &tail),
                &(sum.hi_rational() + tail),
                q,
            );
            break;
        }
        j += 1;
    }
    // scale by 2^k, exactly
    let shifted = |numer: &BigInt, round_up: bool| -> BigInt {
        if k >= BigInt::zero() {
            let shift: u64 = (&k).try_into().expect("exp exponent fits");
            numer << shift as usize
        } else {
            let shift: u64 = (-&k).try_into().expect("exp exponent fits");
            let divisor = BigInt::one() << shift as usize;
            if round_up {
                numer.div_ceil(&divisor)
            } else {
                numer.div_floor(&divisor)
            }
        }
    };
    Interval::new(shifted(&sum.lo, false), shifted(&sum.hi, true), q)
}

/// Containment-preserving enclosure of `exp` over an interval
/// (monotone, endpoint-wise).
pub fn exp_interval(x: &Interval, precision_bits: u32) -> Interval {
    let q = precision_bits + 32;
    let lo = exp_rational_enclosure(&x.lo_rational(), q);
    let hi = exp_rational_enclosure(&x.hi_rational(), q);
    Interval::new(lo.lo, hi.hi, q).to_precision(precision_bits)
}

/// Render `numer/2^p` as a decimal string with `sig_digits` significant
/// digits, rounded toward minus infinity (`round_up = false`) or plus
/// infinity (`round_up = true`). Used for margin reporting: rendering the
/// two endpoints with opposite directions preserves the enclosure.
pub fn dyadic_to_decimal(numer: &BigInt, p: u32, sig_digits: u32, round_up: bool) -> String {
    if numer.is_zero() {
        return "0".to_string();
    }
    let negative = numer.is_negative();
    let magnitude = numer.abs();
    // magnitude rounds toward zero when the value rounds toward -inf for
    // negatives, and vice versa
    let mag_round_up = round_up != negative;
    // find e with 10^e <= magnitude/2^p < 10^(e+1)
    let mut exponent = (((magnitude.bits() as i64 - 1) - p as i64) as f64 * 0.301) as i64;
    let cmp_pow10 = |e: i64| -> std::cmp::Ordering {
        // compare magnitude/2^p with 10^e
        if e >= 0 {
            magnitude.cmp(&(BigInt::from(10u8).pow(e as u32) << p as usize))
        } else {
            (&magnitude * BigInt::from(10u8).pow((-e) as u32)).cmp(&pow2(p))
        }
    };
    while cmp_pow10(exponent) == std::cmp::Ordering::Less {
        exponent -= 1;
    }
    while cmp_pow10(exponent + 1) != std::cmp::Ordering::Less {
        exponent += 1;
    }
    // scaled = magnitude/2^p * 10^(sig-1-e), an integer in [10^(sig-1), 10^sig)
    let shift = sig_digits as i64 - 1 - exponent;
    let (scaled_numer, scaled_denom) = if shift >= 0 {
        (&magnitude * BigInt::from(10u8).pow(shift as u32), pow2(p))
    } else {
        (
            magnitude.clone(),
            pow2(p) * BigInt::from(10u8).pow((-shift) as u32),
        )
    };
    let mut scaled = if mag_round_up {
        scaled_numer.div_ceil(&scaled_denom)
    } else {
        scaled_numer.div_floor(&scaled_denom)
    };
    let mut digits = scaled.to_string();
    if digits.len() as u32 > sig_digits {
        // ceiling pushed us to the next power of ten
        exponent += 1;
        scaled = scaled / BigInt::from(10u8);
        digits = scaled.to_string();
    }
    debug_assert_eq!(digits.len() as u32, sig_digits);
    let sign = if negative { "-" } else { "" };
    format!("{sign}{}.{}e{exponent}", &digits[..1], &digits[1..])
}
