//! Equilibrium parameters of the no-toehold and toehold strategies, the
//! profit curves in the tender probability, and the indifference condition.
//!
//! With `2n+1` shareholders, a tender price `X` and a common tender
//! probability `sigma` form an equilibrium pair exactly when `X` equals the
//! probability that enough *other* shareholders tender for the takeover to
//! succeed: threshold `n+1` of the other `2n` without a toehold, `n` of the
//! other `2n-1` with one. Both strategies share the maximizing probability
//! `sigma* = (n+1)/(2n+1)` and the same expected profit; the toehold raises
//! both the offered price and the takeover probability.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{binomial, rat, rat_int, rational_pow, tail_binomial_sum};
use crate::{Error, Result};

/// The two strategies available to the investor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Bid for all `2n+1` shares directly.
    NoToehold,
    /// Buy one share first, then bid for the remaining `2n`.
    Toehold,
}

impl Strategy {
    /// Stable lowercase name used in JSON output.
    pub fn name(self) -> &'static str {
        match self {
            Strategy::NoToehold => "no_toehold",
            Strategy::Toehold => "toehold",
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// All equilibrium parameters for a given `n`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelPoint {
    /// Half-count of the `2n+1` shareholders.
    pub n: u64,
    /// Equilibrium tender probability, identical for both strategies.
    pub sigma: BigRational,
    /// No-toehold offer price `X0`.
    pub x0: BigRational,
    /// No-toehold takeover probability `P0`.
    pub p0: BigRational,
    /// Post-toehold offer price `X1`.
    pub x1: BigRational,
    /// Toehold takeover probability `P1`.
    pub p1: BigRational,
    /// Expected profit, identical for both strategies.
    pub profit: BigRational,
}

#[derive(Serialize)]
struct ModelPointJson {
    n: u64,
    sigma: String,
    x0: String,
    p0: String,
    x1: String,
    p1: String,
    profit: String,
}

impl ModelPoint {
    /// Canonical JSON rendering with rationals as `p/q` strings.
    pub fn to_json_line(&self) -> String {
        let line = ModelPointJson {
            n: self.n,
            sigma: self.sigma.to_string(),
            x0: self.x0.to_string(),
            p0: self.p0.to_string(),
            x1: self.x1.to_string(),
            p1: self.p1.to_string(),
            profit: self.profit.to_string(),
        };
        serde_json::to_string(&line).expect("model point serializes")
    }
}

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain(format!("{what}: n must be >= 1, got {n}")));
    }
    Ok(())
}

fn require_interior(sigma: &BigRational, what: &str) -> Result<()> {
    if !sigma.is_positive() || sigma >= &BigRational::one() {
        return Err(Error::Domain(format!(
            "{what}: sigma={sigma} must lie strictly inside (0,1)"
        )));
    }
    Ok(())
}

/// Equilibrium tender probability `sigma* = (n+1)/(2n+1)`.
///
/// Already in lowest terms for every `n` since `gcd(n+1, 2n+1) = 1`.
pub fn equilibrium_sigma(n: u64) -> Result<BigRational> {
    require_positive(n, "equilibrium_sigma")?;
    Ok(rat_int(n + 1) / rat_int(2 * n + 1))
}

/// No-toehold offer price `X0`, the tail `sum_{k=n+1}^{2n}` at `sigma*`.
pub fn price_no_toehold(n: u64) -> Result<BigRational> {
    require_positive(n, "price_no_toehold")?;
    tail_binomial_sum(2 * n, n + 1, &equilibrium_sigma(n)?)
}

/// No-toehold takeover probability `P0`, the tail `sum_{k=n+1}^{2n+1}`.
pub fn takeover_prob_no_toehold(n: u64) -> Result<BigRational> {
    require_positive(n, "takeover_prob_no_toehold")?;
    tail_binomial_sum(2 * n + 1, n + 1, &equilibrium_sigma(n)?)
}

/// Post-toehold offer price `X1`, the tail `sum_{k=n}^{2n-1}`.
pub fn price_toehold(n: u64) -> Result<BigRational> {
    require_positive(n, "price_toehold")?;
    tail_binomial_sum(2 * n - 1, n, &equilibrium_sigma(n)?)
}

/// Toehold takeover probability `P1`, the tail `sum_{k=n}^{2n}`.
pub fn takeover_prob_toehold(n: u64) -> Result<BigRational> {
    require_positive(n, "takeover_prob_toehold")?;
    tail_binomial_sum(2 * n, n, &equilibrium_sigma(n)?)
}

/// Expected profit `C(2n,n) (n+1)^(n+1) n^n / (2n+1)^(2n)`, the common
/// maximal profit of both strategies. Exceeds 1 for `n >= 2`.
pub fn expected_profit(n: u64) -> Result<BigRational> {
    require_positive(n, "expected_profit")?;
    let numer = binomial(2 * n, n)?
        * BigInt::from(n + 1).pow(n as u32 + 1)
        * BigInt::from(n).pow(n as u32);
    let denom = BigInt::from(2 * n + 1).pow(2 * n as u32);
    Ok(BigRational::new(numer, denom))
}

/// Central binomial weight `C(2n,n) sigma^n (1-sigma)^n`.
fn central_weight(n: u64, sigma: &BigRational) -> Result<BigRational> {
    Ok(BigRational::from_integer(binomial(2 * n, n)?)
        * rational_pow(sigma, n as i32)?
        * rational_pow(&(BigRational::one() - sigma), n as i32)?)
}

/// Assemble all parameters for `n` and verify the cross-identities that tie
/// them together before returning.
pub fn model_point(n: u64) -> Result<ModelPoint> {
    require_positive(n, "model_point")?;
    let sigma = equilibrium_sigma(n)?;
    let point = ModelPoint {
        n,
        sigma: sigma.clone(),
        x0: price_no_toehold(n)?,
        p0: takeover_prob_no_toehold(n)?,
        x1: price_toehold(n)?,
        p1: takeover_prob_toehold(n)?,
        profit: expected_profit(n)?,
    };
    let half = rat(1, 2);
    let one = BigRational::one();
    let ordered = point.x0.is_positive()
        && point.x0 < point.x1
        && point.x1 < one
        && point.p0 > half
        && point.p0 < point.p1
        && point.p1 < one;
    if !ordered {
        return Err(Error::Inconsistency(format!(
            "model_point({n}): ordering 0 < X0 < X1 < 1, 1/2 < P0 < P1 < 1 violated"
        )));
    }
    // P1 = X0 + C(2n,n) sigma^n (1-sigma)^n catches tail-index bugs cheaply.
    if point.p1 != &point.x0 + central_weight(n, &sigma)? {
        return Err(Error::Inconsistency(format!(
            "model_point({n}): P1 != X0 + C(2n,n) sigma^n (1-sigma)^n"
        )));
    }
    Ok(point)
}

/// Investor's exact expected profit at tender probability `sigma`.
///
/// For the no-toehold strategy the offer price adjusts to the indifference
/// price at `sigma`, collapsing the profit to
/// `(2n+1) C(2n,n) sigma^(n+1) (1-sigma)^n`. For the toehold strategy the
/// toehold itself is always bought at the fixed no-toehold equilibrium
/// price `X0 = price_no_toehold(n)`, while the post-toehold offer price
/// adjusts; the profit is
/// `-X0 + sum_{k=n}^{2n} C(2n,k) sigma^k (1-sigma)^(2n-k) + n C(2n,n) sigma^n (1-sigma)^n`.
///
/// Boundary `sigma` in `{0, 1}` is rejected: the mixing equilibrium is
/// meaningless at pure strategies.
pub fn profit_curve(n: u64, sigma: &BigRational, strategy: Strategy) -> Result<BigRational> {
    require_positive(n, "profit_curve")?;
    require_interior(sigma, "profit_curve")?;
    match strategy {
        Strategy::NoToehold => Ok(rat_int(2 * n + 1)
            * BigRational::from_integer(binomial(2 * n, n)?)
            * rational_pow(sigma, n as i32 + 1)?
            * rational_pow(&(BigRational::one() - sigma), n as i32)?),
        Strategy::Toehold => {
            let x0 = price_no_toehold(n)?;
            let tail = tail_binomial_sum(2 * n, n, sigma)?;
            Ok(tail + rat_int(n) * central_weight(n, sigma)? - x0)
        }
    }
}

/// Exact derivative of the toehold profit in `sigma`:
/// `n C(2n,n) sigma^(n-1) (1-sigma)^(n-1) (1 - sigma + n(1 - 2 sigma))`.
///
/// Zero exactly at `sigma = (n+1)/(2n+1)`.
pub fn profit_derivative_toehold(n: u64, sigma: &BigRational) -> Result<BigRational> {
    require_positive(n, "profit_derivative_toehold")?;
    require_interior(sigma, "profit_derivative_toehold")?;
    let one = BigRational::one();
    let linear = (&one - sigma) + rat_int(n) * (&one - sigma - sigma);
    Ok(rat_int(n)
        * BigRational::from_integer(binomial(2 * n, n)?)
        * rational_pow(sigma, n as i32 - 1)?
        * rational_pow(&(one - sigma), n as i32 - 1)?
        * linear)
}

/// Shareholder indifference gap `price - Pr(enough others tender)`.
///
/// The threshold among the *other* shareholders is `n+1` of `2n` for the
/// no-toehold offer and `n` of `2n-1` for the post-toehold offer. The gap
/// is exactly zero iff `(price, sigma)` is an equilibrium pair.
pub fn indifference_gap(
    n: u64,
    strategy: Strategy,
    price: &BigRational,
    sigma: &BigRational,
) -> Result<BigRational> {
    require_positive(n, "indifference_gap")?;
    require_interior(sigma, "indifference_gap")?;
    let others = match strategy {
        Strategy::NoToehold => tail_binomial_sum(2 * n, n + 1, sigma)?,
        Strategy::Toehold => tail_binomial_sum(2 * n - 1, n, sigma)?,
    };
    Ok(price - others)
}
