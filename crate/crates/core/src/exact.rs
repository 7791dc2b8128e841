//! Exact rational substrate: binomial coefficients, weighted binomial tail
//! sums, integer powers and canonical text/decimal rendering.
//!
//! Every quantity in the model is a ratio of integers, so everything here
//! is computed without any floating point. Rationals are `Ratio<BigInt>`,
//! which normalizes to lowest terms with a positive denominator on
//! construction; equality is therefore structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Convenience constructor for a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an unsigned integer.
pub fn rat_int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Binomial coefficient `C(n, k)`, exact.
///
/// Computed by the multiplicative formula with intermediate exact division
/// rather than via factorials, so intermediates stay close to the size of
/// the result. `k > n` is a domain error: callers must never rely on
/// out-of-range indices silently evaluating to zero.
pub fn binomial(n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::Domain(format!("binomial: k={k} exceeds n={n}")));
    }
    Ok(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// Exact integer power of a rational, with signed exponent.
///
/// `0` to a negative power is a domain error.
pub fn rational_pow(base: &BigRational, exponent: i32) -> Result<BigRational> {
    if exponent < 0 && base.is_zero() {
        return Err(Error::Domain("rational_pow: 0 to a negative power".into()));
    }
    Ok(num_traits::Pow::pow(base, exponent))
}

/// Weighted binomial tail `sum_{k=j0}^{m} C(m,k) sigma^k (1-sigma)^(m-k)`,
/// exact.
///
/// `j0 = m+1` denotes the empty tail and yields 0; `j0 = 0` yields 1.
/// The sum is evaluated in a single pass with an incrementally updated
/// weight, so it costs O(m) rational multiplications instead of O(m)
/// independent binomial evaluations.
pub fn tail_binomial_sum(m: u64, j0: u64, sigma: &BigRational) -> Result<BigRational> {
    if sigma.is_negative() || sigma > &BigRational::one() {
        return Err(Error::Domain(format!(
            "tail_binomial_sum: sigma={sigma} outside [0,1]"
        )));
    }
    if j0 > m + 1 {
        return Err(Error::Domain(format!(
            "tail_binomial_sum: threshold j0={j0} exceeds m+1={}",
            m + 1
        )));
    }
    if j0 == m + 1 {
        return Ok(BigRational::zero());
    }
    if sigma.is_zero() {
        // Only the k=0 term survives.
        return Ok(if j0 == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        });
    }
    if sigma.is_one() {
        // Only the k=m term survives, and j0 <= m here.
        return Ok(BigRational::one());
    }
    let complement = BigRational::one() - sigma;
    // weight = C(m, j0) sigma^j0 (1-sigma)^(m-j0)
    let mut weight = BigRational::from_integer(binomial(m, j0)?)
        * rational_pow(sigma, j0 as i32)?
        * rational_pow(&complement, (m - j0) as i32)?;
    let mut acc = weight.clone();
    let step = sigma / &complement;
    for k in j0..m {
        // C(m,k+1)/C(m,k) = (m-k)/(k+1)
        weight = weight * rat((m - k) as i64, (k + 1) as i64) * &step;
        acc += &weight;
    }
    Ok(acc)
}

/// Parse an exact rational from its canonical text form `p/q` or `p`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Domain(format!("not a rational: {text:?}"));
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::Domain(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Render a rational as a decimal string with exactly `digits` places after
/// the point, rounding half to even.
///
/// Rounding happens on the exact value, so this is the only lossy step in
/// any decimal output path.
pub fn to_decimal_string(value: &BigRational, digits: usize) -> String {
    let negative = value.is_negative();
    let magnitude = value.abs();
    let scaled = magnitude * BigRational::from_integer(BigInt::from(10u8).pow(digits as u32));
    let (mut q, r) = scaled.numer().div_rem(scaled.denom());
    // round half to even on the remainder
    let twice = &r * 2;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => q += 1,
        std::cmp::Ordering::Equal => {
            if q.is_odd() {
                q += 1;
            }
        }
        std::cmp::Ordering::Less => {}
    }
    let digits_str = q.to_string();
    let (int_part, frac_part) = if digits == 0 {
        (digits_str.clone(), String::new())
    } else if digits_str.len() <= digits {
        (
            "0".to_string(),
            format!("{digits_str:0>width$}", width = digits),
        )
    } else {
        let split = digits_str.len() - digits;
        (digits_str[..split].to_string(), digits_str[split..].to_string())
    };
    let sign = if negative && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: Pascal-triangle accumulation.
    fn binomial_pascal(n: u64, k: u64) -> BigInt {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one()];
            for i in 1..row.len() {
                next.push(&row[i - 1] + &row[i]);
            }
            next.push(BigInt::one());
            row = next;
        }
        row[k as usize].clone()
    }

    /// Independent oracle: bare-sum tail using Pascal binomials.
    fn tail_direct(m: u64, j0: u64, sigma: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for k in j0..=m {
            acc += BigRational::from_integer(binomial_pascal(m, k))
                * rational_pow(sigma, k as i32).unwrap()
                * rational_pow(&(BigRational::one() - sigma), (m - k) as i32).unwrap();
        }
        acc
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(0, 0).unwrap(), BigInt::one());
        assert_eq!(binomial(4, 2).unwrap(), BigInt::from(6));
        // multiplicative formula cross-checked by Pascal accumulation
        assert_eq!(binomial(40, 20).unwrap(), BigInt::from(137_846_528_820u64));
        assert_eq!(binomial(40, 20).unwrap(), binomial_pascal(40, 20));
    }

    #[test]
    fn binomial_rejects_k_above_n() {
        assert!(matches!(binomial(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_binomial_sum(2, 2, &rat(2, 3)).unwrap(), rat(4, 9));
        assert_eq!(tail_binomial_sum(4, 0, &rat(3, 5)).unwrap(), rat(1, 1));
        assert_eq!(tail_binomial_sum(4, 3, &rat(3, 5)).unwrap(), rat(297, 625));
        assert_eq!(tail_binomial_sum(4, 5, &rat(3, 5)).unwrap(), rat(0, 1));
    }

    #[test]
    fn tail_rejects_bad_sigma_and_threshold() {
        assert!(tail_binomial_sum(4, 0, &rat(6, 5)).is_err());
        assert!(tail_binomial_sum(4, 0, &rat(-1, 5)).is_err());
        assert!(tail_binomial_sum(4, 6, &rat(1, 5)).is_err());
    }

    #[test]
    fn tail_boundary_sigma() {
        assert_eq!(tail_binomial_sum(5, 0, &rat(0, 1)).unwrap(), rat(1, 1));
        assert_eq!(tail_binomial_sum(5, 1, &rat(0, 1)).unwrap(), rat(0, 1));
        assert_eq!(tail_binomial_sum(5, 5, &rat(1, 1)).unwrap(), rat(1, 1));
        assert_eq!(tail_binomial_sum(5, 6, &rat(1, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(rational_pow(&rat(2, 3), 2).unwrap(), rat(4, 9));
        assert_eq!(rational_pow(&rat(5, 1), 0).unwrap(), rat(1, 1));
        assert_eq!(rational_pow(&rat(1, 2), -3).unwrap(), rat(8, 1));
        assert!(rational_pow(&rat(0, 1), -1).is_err());
    }

    #[test]
    fn decimal_rendering_half_even() {
        assert_eq!(to_decimal_string(&rat(1, 8), 2), "0.12");
        assert_eq!(to_decimal_string(&rat(3, 8), 2), "0.38");
        assert_eq!(to_decimal_string(&rat(-3, 8), 2), "-0.38");
        assert_eq!(to_decimal_string(&rat(8, 9), 6), "0.888889");
        assert_eq!(to_decimal_string(&rat(5, 1), 3), "5.000");
        assert_eq!(to_decimal_string(&rat(0, 1), 4), "0.0000");
        assert_eq!(to_decimal_string(&rat(-1, 100000), 4), "-0.0000");
        assert_eq!(to_decimal_string(&rat(25, 10), 0), "2");
        assert_eq!(to_decimal_string(&rat(35, 10), 0), "4");
    }

    #[test]
    fn canonical_text_form() {
        assert_eq!(rat(2, 3).to_string(), "2/3");
        assert_eq!(rat(-4, 6).to_string(), "-2/3");
        assert_eq!(rat(8, 4).to_string(), "2");
        assert_eq!(parse_rational("20/27").unwrap(), rat(20, 27));
        assert_eq!(parse_rational("-5").unwrap(), rat(-5, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    fn arb_sigma() -> impl Strategy<Value = BigRational> {
        (0i64..=40, 1i64..=40).prop_map(|(p, q)| {
            let (p, q) = if p > q { (q, p) } else { (p, q) };
            rat(p, q)
        })
    }

    proptest! {
        #[test]
        fn tail_matches_direct_sum(m in 0u64..18, j0 in 0u64..20, sigma in arb_sigma()) {
            prop_assume!(j0 <= m + 1);
            let fast = tail_binomial_sum(m, j0, &sigma).unwrap();
            prop_assert_eq!(fast, tail_direct(m, j0, &sigma));
        }

        #[test]
        fn tail_normalizes(m in 0u64..25, sigma in arb_sigma()) {
            prop_assert_eq!(tail_binomial_sum(m, 0, &sigma).unwrap(), rat(1, 1));
        }

        #[test]
        fn head_plus_tail_is_one(m in 0u64..20, j0 in 0u64..21, sigma in arb_sigma()) {
            prop_assume!(j0 <= m + 1);
            let tail = tail_binomial_sum(m, j0, &sigma).unwrap();
            let head: BigRational = (0..j0.min(m + 1))
                .map(|k| {
                    BigRational::from_integer(binomial(m, k).unwrap())
                        * rational_pow(&sigma, k as i32).unwrap()
                        * rational_pow(&(BigRational::one() - &sigma), (m - k) as i32).unwrap()
                })
                .sum();
            prop_assert_eq!(tail + head, rat(1, 1));
        }

        #[test]
        fn tail_complement_symmetry(m in 0u64..18, j0 in 0u64..19, sigma in arb_sigma()) {
            prop_assume!(j0 <= m + 1);
            // tail with sigma and 1-sigma swapped equals the head sum up to m-j0
            let swapped = tail_binomial_sum(m, j0, &(BigRational::one() - &sigma)).unwrap();
            let head: BigRational = (0..=m.saturating_sub(j0))
                .filter(|_| j0 <= m)
                .map(|k| {
                    BigRational::from_integer(binomial(m, k).unwrap())
                        * rational_pow(&sigma, k as i32).unwrap()
                        * rational_pow(&(BigRational::one() - &sigma), (m - k) as i32).unwrap()
                })
                .sum();
            prop_assert_eq!(swapped, head);
        }

        #[test]
        fn binomial_symmetry_and_pascal(n in 1u64..40, k in 0u64..40) {
            prop_assume!(k <= n);
            prop_assert_eq!(binomial(n, k).unwrap(), binomial(n, n - k).unwrap());
            if k >= 1 && k <= n - 1 {
                prop_assert_eq!(
                    binomial(n, k).unwrap(),
                    binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap()
                );
            }
        }

        #[test]
        fn canonical_round_trip(p in -1000i64..1000, q in 1i64..1000) {
            let r = rat(p, q);
            prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
        }
    }
}
