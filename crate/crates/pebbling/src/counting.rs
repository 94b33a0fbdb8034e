//! Exact counting machinery: lattice points of rational simplices, pebble
//! distributions of bounded weight, distance products and tail sums over
//! distance neighborhoods, and partitions into powers of q.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grid::{lambda_set, pebbling_distance, GridSpec, Vertex};
use crate::numeric::{biguint_gt_f64, rational_to_f64};

/// Exact volume-based bracket on a simplex lattice count, from the split
/// parameter `s`: the first `s` coordinates are dropped from the lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexBounds {
    pub lower: BigRational,
    pub upper: BigRational,
    pub s: usize,
}

impl SimplexBounds {
    pub fn lower_f64(&self) -> f64 {
        rational_to_f64(&self.lower)
    }

    pub fn upper_f64(&self) -> f64 {
        rational_to_f64(&self.upper)
    }

    pub fn contains(&self, count: &BigUint) -> bool {
        let c = BigRational::from_integer(BigInt::from(count.clone()));
        self.lower <= c && c <= self.upper
    }
}

fn check_positive(a: &[BigRational]) -> Result<()> {
    if a.iter().any(|ai| !ai.is_positive()) {
        return Err(Error::domain("all simplex denominators must be positive"));
    }
    Ok(())
}

/// Count nonnegative integer vectors x with `sum_i x_i / a_i < 1` (strict),
/// by exact rational recursion over the coordinates. Errors out once the
/// count passes `budget`.
pub fn simplex_lattice_count(a: &[BigRational], budget: u64) -> Result<BigUint> {
    check_positive(a)?;
    let mut total = BigUint::zero();
    let budget_big = BigUint::from(budget);
    count_rec(a, &BigRational::one(), &mut total, &budget_big, budget)?;
    Ok(total)
}

fn count_rec(
    a: &[BigRational],
    remaining: &BigRational,
    total: &mut BigUint,
    budget_big: &BigUint,
    budget: u64,
) -> Result<()> {
    match a {
        [] => {
            *total += 1u32;
        }
        [last] => {
            // closed form for the innermost coordinate:
            // #{x >= 0 : x < a * rem} = ceil(a * rem), with exact ties down
            let limit = last * remaining;
            if limit.is_positive() {
                let whole = limit.to_integer().to_biguint().expect("positive");
                *total += if limit.is_integer() { whole } else { whole + 1u32 };
            }
        }
        [first, rest @ ..] => {
            let mut x = BigUint::zero();
            loop {
                let used = BigRational::new(BigInt::from(x.clone()), BigInt::one()) / first;
                if used >= *remaining {
                    break;
                }
                count_rec(rest, &(remaining - used), total, budget_big, budget)?;
                x += 1u32;
                if *total > *budget_big {
                    return Err(Error::BudgetExceeded { limit: budget });
                }
            }
        }
    }
    if *total > *budget_big {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    Ok(())
}

/// Volume bracket for [`simplex_lattice_count`]: for any `s < r`,
///
/// ```text
/// (1 - sum_{i>s} 1/a_i)_+^(r-s) prod_{i>s} a_i / (r-s)!
///     <= count <=
/// (1 + sum_i 1/a_i)^r prod_i a_i / r!
/// ```
pub fn simplex_bounds(a: &[BigRational], s: usize) -> Result<SimplexBounds> {
    check_positive(a)?;
    let r = a.len();
    if r == 0 || s >= r {
        return Err(Error::domain(format!(
            "split parameter {s} must be below the coordinate count {r}"
        )));
    }
    let recip_all: BigRational = a.iter().map(|ai| ai.recip()).sum();
    let recip_tail: BigRational = a[s..].iter().map(|ai| ai.recip()).sum();

    let lower_base = BigRational::one() - recip_tail;
    let lower = if lower_base.is_positive() {
        let prod_tail: BigRational = a[s..].iter().product();
        lower_base.pow((r - s) as i32) * prod_tail
            / BigRational::from_integer(factorial(r - s).into())
    } else {
        BigRational::zero()
    };

    let prod_all: BigRational = a.iter().product();
    let upper = (BigRational::one() + recip_all).pow(r as i32) * prod_all
        / BigRational::from_integer(factorial(r).into());

    Ok(SimplexBounds { lower, upper, s })
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// Count pebble distributions on the distance-`c` neighborhood of `v` whose
/// weight toward `v` stays strictly below `ell`. Reduces to a simplex count
/// with `a_i = ell * qd(v, w_i)`.
pub fn count_low_weight_distributions(
    g: &GridSpec,
    v: &Vertex,
    c: f64,
    ell: &BigRational,
    budget: u64,
) -> Result<BigUint> {
    if !ell.is_positive() {
        return Err(Error::domain("weight bound must be positive"));
    }
    let neighborhood = lambda_set(g, v, c)?;
    let a: Vec<BigRational> = neighborhood
        .iter()
        .map(|w| {
            let qd = pebbling_distance(g, v, w).expect("neighborhood vertices are in bounds");
            ell * BigRational::from_integer(BigInt::from(qd))
        })
        .collect();
    simplex_lattice_count(&a, budget)
}

/// Product of pebbling distances over the distance-`c` neighborhood of `v`.
pub fn weight_product(g: &GridSpec, v: &Vertex, c: f64) -> Result<BigUint> {
    let neighborhood = lambda_set(g, v, c)?;
    let mut product = BigUint::one();
    for w in &neighborhood {
        product *= pebbling_distance(g, v, w).expect("neighborhood vertices are in bounds");
    }
    Ok(product)
}

/// Leading term of `ln weight_product` for a vertex with `t` interior
/// coordinates: `d 2^t (ln C)^(d+1) / ((d+1)! prod_i ln q_i)`.
pub fn weight_product_log_estimate(g: &GridSpec, t: usize, c: f64) -> Result<f64> {
    if !c.is_finite() || c <= 1.0 {
        return Err(Error::domain(format!("estimate requires a radius above 1, got {c}")));
    }
    let d = g.dim();
    if t > d {
        return Err(Error::domain(format!(
            "interior coordinate count {t} exceeds dimension {d}"
        )));
    }
    let mut factorial = 1.0f64;
    for i in 2..=(d + 1) {
        factorial *= i as f64;
    }
    let log_costs: f64 = g.costs().iter().map(|&q| (q as f64).ln()).product();
    Ok(d as f64 * 2f64.powi(t as i32) * c.ln().powi(d as i32 + 1) / (factorial * log_costs))
}

/// Exact sum of `1 / qd(w, v)` over all grid vertices with pebbling distance
/// strictly above `c`.
pub fn tail_weight_sum(g: &GridSpec, v: &Vertex, c: f64) -> Result<BigRational> {
    g.check_vertex(v)?;
    if !c.is_finite() {
        return Err(Error::domain(format!("distance cutoff must be finite, got {c}")));
    }
    let tables = g.cost_power_tables();
    let mut sum = BigRational::zero();
    for w in g.vertices() {
        let qd: BigUint = w
            .coords()
            .iter()
            .zip(v.coords())
            .enumerate()
            .map(|(axis, (&wi, &vi))| tables[axis][wi.abs_diff(vi)].clone())
            .product();
        if biguint_gt_f64(&qd, c) {
            sum += BigRational::new(BigInt::one(), qd.into());
        }
    }
    Ok(sum)
}

/// Number of partitions of `q^t` into powers of `q` (1 included), by dynamic
/// programming over the allowed parts.
pub fn mahler_h(t: u32, q: u64, budget: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::domain(format!("partition base must be at least 2, got {q}")));
    }
    let mut target: u64 = 1;
    for _ in 0..t {
        target = target
            .checked_mul(q)
            .filter(|&v| v <= budget)
            .ok_or(Error::BudgetExceeded { limit: budget })?;
    }
    let mut parts = Vec::new();
    let mut p = 1u64;
    loop {
        parts.push(p as usize);
        match p.checked_mul(q) {
            Some(next) if next <= target => p = next,
            _ => break,
        }
    }
    let mut ways = vec![BigUint::zero(); target as usize + 1];
    ways[0] = BigUint::one();
    for part in parts {
        for j in part..ways.len() {
            let add = ways[j - part].clone();
            ways[j] += add;
        }
    }
    Ok(ways[target as usize].clone())
}

/// A published asymptotic exponent for `ln h(t, q)`, evaluated exactly as
/// printed:
///
/// ```text
/// (t-1) ln q / 2  -  (t-1) ln(t-1) lnln q  +  (ln q / 2 + 1 + lnln q)(t-1)
/// ```
///
/// Returned as the exponent (not exponentiated). Comparison against the
/// exact [`mahler_h`] shows a widening gap; see `mahler` in the CLI for the
/// side-by-side report.
pub fn mahler_asymptotic(t: u32, q: u64) -> Result<f64> {
    if t < 2 {
        return Err(Error::domain(format!("asymptotic form needs t >= 2, got {t}")));
    }
    if q < 2 {
        return Err(Error::domain(format!("partition base must be at least 2, got {q}")));
    }
    let tm1 = (t - 1) as f64;
    let lq = (q as f64).ln();
    let llq = lq.ln();
    Ok(tm1 * lq / 2.0 - tm1 * tm1.ln() * llq + (lq / 2.0 + 1.0 + llq) * tm1)
}
