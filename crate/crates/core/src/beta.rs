//! Exact incomplete beta functions, the tail/beta identity, and the five
//! analytic reformulations of the model parameters.
//!
//! Every integrand here is a polynomial with rational endpoints, so all
//! integrals are evaluated by exact term-by-term integration of the
//! expanded polynomial, never by numeric quadrature. Expansion sums run in
//! ascending term order for determinism; exact rationals make the
//! alternating signs harmless.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{binomial, rat, rat_int, rational_pow, tail_binomial_sum};
use crate::{Error, Result};

fn require_unit_interval(x: &BigRational, what: &str) -> Result<()> {
    if x.is_negative() || x > &BigRational::one() {
        return Err(Error::Domain(format!("{what}: x={x} outside [0,1]")));
    }
    Ok(())
}

fn require_positive(v: u64, name: &str, what: &str) -> Result<()> {
    if v < 1 {
        return Err(Error::Domain(format!("{what}: {name} must be >= 1")));
    }
    Ok(())
}

/// Incomplete beta function `B_x(a,b) = integral_0^x t^(a-1) (1-t)^(b-1) dt`
/// for positive integer `a`, `b`, evaluated exactly as
/// `sum_{j=0}^{b-1} C(b-1,j) (-1)^j x^(a+j) / (a+j)`.
pub fn incomplete_beta_exact(a: u64, b: u64, x: &BigRational) -> Result<BigRational> {
    require_positive(a, "a", "incomplete_beta_exact")?;
    require_positive(b, "b", "incomplete_beta_exact")?;
    require_unit_interval(x, "incomplete_beta_exact")?;
    let mut acc = BigRational::zero();
    let mut power = rational_pow(x, a as i32)?;
    for j in 0..b {
        let coefficient = BigRational::new(
            binomial(b - 1, j)? * if j % 2 == 0 { BigInt::one() } else { -BigInt::one() },
            BigInt::from(a + j),
        );
        acc += coefficient * &power;
        power *= x;
    }
    Ok(acc)
}

/// Left-hand side minus right-hand side of the beta equality
/// `sum_{k=a}^{a+b-1} C(a+b-1,k) x^k (1-x)^(a+b-1-k) = a C(a+b-1,a) B_x(a,b)`,
/// computed exactly. Zero certifies the identity at `(a, b, x)`.
pub fn beta_tail_identity_gap(a: u64, b: u64, x: &BigRational) -> Result<BigRational> {
    require_positive(a, "a", "beta_tail_identity_gap")?;
    require_positive(b, "b", "beta_tail_identity_gap")?;
    require_unit_interval(x, "beta_tail_identity_gap")?;
    let lhs = tail_binomial_sum(a + b - 1, a, x)?;
    let rhs = rat_int(a)
        * BigRational::from_integer(binomial(a + b - 1, a)?)
        * incomplete_beta_exact(a, b, x)?;
    Ok(lhs - rhs)
}

/// `integral_0^x (1-t^2)^m dt`, exact:
/// `sum_{j=0}^{m} C(m,j) (-1)^j x^(2j+1) / (2j+1)`.
pub fn symmetric_integral_exact(m: u64, x: &BigRational) -> Result<BigRational> {
    require_unit_interval(x, "symmetric_integral_exact")?;
    let mut acc = BigRational::zero();
    let square = x * x;
    let mut power = x.clone();
    for j in 0..=m {
        let coefficient = BigRational::new(
            binomial(m, j)? * if j % 2 == 0 { BigInt::one() } else { -BigInt::one() },
            BigInt::from(2 * j + 1),
        );
        acc += coefficient * &power;
        power *= &square;
    }
    Ok(acc)
}

/// Shared closed pieces of the analytic formulas: the scaled central
/// binomial `C(2n,n)/2^(2n)`, the power `(1 - 1/(2n+1)^2)^n`, and the
/// integral `integral_0^(1/(2n+1)) (1-t^2)^(n-1) dt`.
fn analytic_parts(n: u64) -> Result<(BigRational, BigRational, BigRational)> {
    let central = BigRational::new(binomial(2 * n, n)?, BigInt::one() << (2 * n as usize));
    let inner = BigRational::one() - rat(1, 1) / rat_int((2 * n + 1) * (2 * n + 1));
    let power = rational_pow(&inner, n as i32)?;
    let integral = symmetric_integral_exact(n - 1, &(rat(1, 1) / rat_int(2 * n + 1)))?;
    Ok((central, power, integral))
}

/// Analytic route for the no-toehold price:
/// `X0 = 1/2 - C(2n,n)/2^(2n+1) (1-1/(2n+1)^2)^n + n C(2n,n)/2^(2n) * integral_0^(1/(2n+1)) (1-t^2)^(n-1) dt`.
pub fn analytic_price_no_toehold(n: u64) -> Result<BigRational> {
    require_positive(n, "n", "analytic_price_no_toehold")?;
    let (central, power, integral) = analytic_parts(n)?;
    Ok(rat(1, 2) - rat(1, 2) * &central * power + rat_int(n) * central * integral)
}

/// Analytic route for the no-toehold takeover probability:
/// `P0 = 1/2 + (2n+1) C(2n,n)/2^(2n+1) * integral_0^(1/(2n+1)) (1-t^2)^n dt`.
pub fn analytic_takeover_prob_no_toehold(n: u64) -> Result<BigRational> {
    require_positive(n, "n", "analytic_takeover_prob_no_toehold")?;
    let central = BigRational::new(binomial(2 * n, n)?, BigInt::one() << (2 * n as usize));
    let integral = symmetric_integral_exact(n, &(rat(1, 1) / rat_int(2 * n + 1)))?;
    Ok(rat(1, 2) + rat_int(2 * n + 1) * rat(1, 2) * central * integral)
}

/// Analytic route for the common expected profit:
/// `Pi = (n+1) C(2n,n)/2^(2n) (1-1/(2n+1)^2)^n`.
pub fn analytic_profit(n: u64) -> Result<BigRational> {
    require_positive(n, "n", "analytic_profit")?;
    let (central, power, _) = analytic_parts(n)?;
    Ok(rat_int(n + 1) * central * power)
}

/// Analytic route for the toehold takeover probability:
/// `P1 = 1/2 + C(2n,n)/2^(2n+1) (1-1/(2n+1)^2)^n + n C(2n,n)/2^(2n) * integral_0^(1/(2n+1)) (1-t^2)^(n-1) dt`.
pub fn analytic_takeover_prob_toehold(n: u64) -> Result<BigRational> {
    require_positive(n, "n", "analytic_takeover_prob_toehold")?;
    let (central, power, integral) = analytic_parts(n)?;
    Ok(rat(1, 2) + rat(1, 2) * &central * power + rat_int(n) * central * integral)
}

/// Analytic route for the post-toehold price:
/// `X1 = 1/2 + n C(2n,n)/2^(2n) * integral_0^(1/(2n+1)) (1-t^2)^(n-1) dt`.
pub fn analytic_price_toehold(n: u64) -> Result<BigRational> {
    require_positive(n, "n", "analytic_price_toehold")?;
    let (central, _, integral) = analytic_parts(n)?;
    Ok(rat(1, 2) + rat_int(n) * central * integral)
}
